"""Полиномиальные векторные поля, трубки над конусами и точечные проверки.

Коэффициенты полей – многочлены `Poly` над ℚ(i) на основе sympy, скобки
считаются дифференцированием sympy, ряды Тейлора в точке живут в
разреженном кольце `sympy.polys.rings`. Тождества «по модулю 𝒟₀₁» на
трубке проверяются подстановкой параметризации и точной линейной
алгеброй в детерминированных рациональных точках выборки.
"""
import logging
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Dict, List, Mapping, Optional, Sequence, Tuple, Union

import sympy as sp
from sympy.polys.domains import QQ_I
from sympy.polys.matrices import DomainMatrix
from sympy.polys.rings import PolyElement, PolyRing, ring as poly_ring

from scripts.data_structures import Report, SampleReport
from scripts.errors import InputError
from scripts.field import (I, ONE, ZERO, Frame, Matrix, Scalar, Subspace, Vector, kernel_vectors, rank,
                           rref, to_scalar)
from scripts.liealg import LieAlgebra, derived_series, validate
from scripts.polysolve import Poly, from_qqi, symbol, to_sympy

# Настройка логирования
logger = logging.getLogger(__name__)

DEFAULT_SAMPLES = 10
DEFAULT_SEED = 7
DEFAULT_MAX_DEPTH = 6

# Диапазон рациональных координат точек выборки
SAMPLE_NUMERATOR_BOUND = 9
SAMPLE_DENOMINATOR_BOUND = 4
MAX_DRAW_ATTEMPTS = 1000

PolyLike = Union[Poly, Scalar, int, Fraction, str]
Point = Mapping[str, Scalar]

HALF = Scalar(Fraction(1, 2))


def _as_poly(value: PolyLike) -> Poly:
    if isinstance(value, Poly):
        return value
    if isinstance(value, str):
        return Poly.const(Scalar.parse(value))
    return Poly.const(to_scalar(value))


class PolyVectorField:
    """Векторное поле Σ aᵏ ∂_k с многочленными коэффициентами."""

    __slots__ = ("coords", "coeffs")

    def __init__(self, coords: Sequence[str], coeffs: Union[Mapping[str, PolyLike], Sequence[PolyLike]]):
        coords = tuple(coords)
        if len(set(coords)) != len(coords):
            raise InputError(f"Повторяющиеся координаты: {coords}")
        if isinstance(coeffs, Mapping):
            unknown = set(coeffs) - set(coords)
            if unknown:
                raise InputError(f"Коэффициенты при неизвестных координатах {sorted(unknown)}")
            values = tuple(_as_poly(coeffs.get(c, Poly())) for c in coords)
        else:
            if len(coeffs) != len(coords):
                raise InputError(f"{len(coeffs)} коэффициентов для {len(coords)} координат")
            values = tuple(_as_poly(c) for c in coeffs)
        object.__setattr__(self, "coords", coords)
        object.__setattr__(self, "coeffs", values)

    def __setattr__(self, name, value):
        raise AttributeError("PolyVectorField неизменяем")

    @classmethod
    def zero(cls, coords: Sequence[str]) -> "PolyVectorField":
        return cls(coords, {})

    @classmethod
    def coordinate(cls, coords: Sequence[str], name: str) -> "PolyVectorField":
        """Координатное поле ∂_name."""
        return cls(coords, {name: 1})

    def __getitem__(self, name: str) -> Poly:
        try:
            return self.coeffs[self.coords.index(name)]
        except ValueError:
            raise InputError(f"Нет координаты {name}") from None

    def _check(self, other: "PolyVectorField"):
        if not isinstance(other, PolyVectorField):
            raise InputError(f"Ожидалось векторное поле, получено {type(other).__name__}")
        if other.coords != self.coords:
            raise InputError(f"Разные системы координат: {self.coords} и {other.coords}")

    def __add__(self, other: "PolyVectorField") -> "PolyVectorField":
        self._check(other)
        return PolyVectorField(self.coords, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other: "PolyVectorField") -> "PolyVectorField":
        self._check(other)
        return PolyVectorField(self.coords, [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self) -> "PolyVectorField":
        return PolyVectorField(self.coords, [-a for a in self.coeffs])

    def scale(self, c: PolyLike) -> "PolyVectorField":
        """Умножение на функцию (многочлен) или число."""
        c = _as_poly(c)
        return PolyVectorField(self.coords, [c * a for a in self.coeffs])

    def __mul__(self, c):
        if isinstance(c, (Poly, Scalar, int, Fraction)) and not isinstance(c, bool):
            return self.scale(c)
        return NotImplemented

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, PolyVectorField):
            return NotImplemented
        return self.coords == other.coords and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.coords, self.coeffs))

    def is_zero(self) -> bool:
        return all(a.is_zero() for a in self.coeffs)

    def conj(self) -> "PolyVectorField":
        return PolyVectorField(self.coords, [a.conj() for a in self.coeffs])

    def apply(self, f: PolyLike) -> Poly:
        """Производная функции вдоль поля."""
        f = _as_poly(f)
        out = Poly()
        for name, a in zip(self.coords, self.coeffs):
            if not a.is_zero():
                out = out + a * f.diff(name)
        return out

    def at(self, point: Point) -> Vector:
        """Значение поля в точке (все переменные коэффициентов заданы)."""
        return tuple(a.evaluate(point) for a in self.coeffs)

    def subs(self, values: Mapping[str, PolyLike]) -> "PolyVectorField":
        """Подстановка в коэффициенты (координаты поля не меняются)."""
        images = {k: _as_poly(v) for k, v in values.items()}
        return PolyVectorField(self.coords, [a.subs(images) for a in self.coeffs])

    def variables(self) -> List[str]:
        return sorted({v for a in self.coeffs for v in a.variables()})

    def __str__(self) -> str:
        parts = [f"({a})∂{name}" for name, a in zip(self.coords, self.coeffs) if not a.is_zero()]
        return " + ".join(parts) if parts else "0"

    def __repr__(self) -> str:
        return f"PolyVectorField('{self}')"


def vf_bracket(v: PolyVectorField, w: PolyVectorField) -> PolyVectorField:
    """Скобка Ли [v, w]ⁱ = v(wⁱ) − w(vⁱ).

    Raises:
        InputError: Поля заданы в разных координатах.
    """
    v._check(w)
    return PolyVectorField(v.coords, [v.apply(b) - w.apply(a) for a, b in zip(v.coeffs, w.coeffs)])


def assert_tube_invariant(fields: Sequence[PolyVectorField], y_coords: Sequence[str]):
    """Коэффициенты трубочных полей не зависят от y.

    Raises:
        InputError: Коэффициент содержит одну из координат `y_coords`.
    """
    ys = set(y_coords)
    for f in fields:
        bad = ys.intersection(f.variables())
        if bad:
            raise InputError(f"Поле {f} зависит от {sorted(bad)}")


def tube_coords(n: int) -> Tuple[str, ...]:
    """Координаты (x₀…x_{n−1}, y₀…y_{n−1}) трубки в ℂⁿ."""
    return tuple(f"x{k}" for k in range(n)) + tuple(f"y{k}" for k in range(n))


def holomorphic_field(a: Sequence[PolyLike]) -> PolyVectorField:
    """Поле Σ aᵏ ∂_{z_k} = ½ Σ aᵏ(∂_{x_k} − i∂_{y_k}) с вещественными aᵏ(x)."""
    n = len(a)
    coords = tube_coords(n)
    a = [_as_poly(c) for c in a]
    return PolyVectorField(coords, [c * HALF for c in a] + [c * (-HALF * I) for c in a])


def real_pair(a: Sequence[PolyLike]) -> Tuple[PolyVectorField, PolyVectorField]:
    """Пара (X, JX) = (Σ aᵏ∂_{x_k}, Σ aᵏ∂_{y_k})."""
    n = len(a)
    coords = tube_coords(n)
    a = [_as_poly(c) for c in a]
    zeros = [Poly()] * n
    return PolyVectorField(coords, a + zeros), PolyVectorField(coords, zeros + a)


def antiholomorphic_frame(n: int) -> List[PolyVectorField]:
    """Постоянные поля ∂_{z̄_k}: по модулю их сравниваются (1,0)-части."""
    return [holomorphic_field([1 if j == k else 0 for j in range(n)]).conj() for k in range(n)]


def vf_structure(fields: Sequence[PolyVectorField], labels: Sequence[str], name: str = "") -> LieAlgebra:
    """Структурные константы линейной оболочки полей над константами.

    Raises:
        InputError: Поля зависимы или оболочка не замкнута относительно скобки.
    """
    if len(fields) != len(labels):
        raise InputError(f"{len(labels)} меток для {len(fields)} полей")
    brackets = {(i, j): vf_bracket(fields[i], fields[j])
                for i in range(len(fields)) for j in range(i + 1, len(fields))}
    keys = sorted({(c, mono) for f in list(fields) + list(brackets.values())
                   for c, a in zip(f.coords, f.coeffs) for mono in a.terms})
    index = {k: pos for pos, k in enumerate(keys)}

    def flat(f: PolyVectorField) -> Vector:
        out = [ZERO] * len(keys)
        for c, a in zip(f.coords, f.coeffs):
            for mono, value in a.terms.items():
                out[index[(c, mono)]] = value
        return tuple(out)

    frame = Frame([flat(f) for f in fields], len(keys))
    n = len(fields)
    table = [[tuple(ZERO for _ in range(n)) for _ in range(n)] for _ in range(n)]
    for (i, j), b in brackets.items():
        coords = frame.try_coordinates(flat(b))
        if coords is None:
            raise InputError(f"[{labels[i]}, {labels[j]}] не лежит в оболочке полей")
        table[i][j] = coords
        table[j][i] = tuple(-x for x in coords)
    return LieAlgebra(labels, table, name=name)


# --- выборка точек ---

@dataclass
class SamplePlan:
    """Детерминированная выборка рациональных точек карты.

    Attributes:
        params: Имена параметров карты, значения которых разыгрываются.
        parametrization: Координаты как многочлены от параметров (ψ).
        count: Число точек.
        seed: Зерно генератора.
        excluded: Многочлены (от параметров или координат), не обращающиеся
            в нуль в точках выборки.
    """
    params: List[str]
    parametrization: Dict[str, Poly] = field(default_factory=dict)
    count: int = DEFAULT_SAMPLES
    seed: int = DEFAULT_SEED
    excluded: List[Poly] = field(default_factory=list)

    def point(self, sample: Mapping[str, Any]) -> Dict[str, Scalar]:
        """Параметры и вычисленные по ψ координаты точки."""
        values = {k: to_scalar(v) for k, v in sample.items()}
        for coord, p in self.parametrization.items():
            values[coord] = p.evaluate(values)
        return values

    def check(self, sample: Mapping[str, Any]) -> Dict[str, Scalar]:
        """Точка выборки вне исключенных множеств.

        Raises:
            InputError: Параметр не задан или исключенный многочлен обращается в нуль.
        """
        missing = [p for p in self.params if p not in sample]
        if missing:
            raise InputError(f"Не заданы параметры {missing}")
        point = self.point(sample)
        for p in self.excluded:
            if p.evaluate(point).is_zero():
                raise InputError(f"Точка {format_point(sample)} лежит на исключенном множестве {p} = 0")
        return point

    def draw(self) -> List[Dict[str, Scalar]]:
        rng = random.Random(self.seed)
        samples: List[Dict[str, Scalar]] = []
        attempts = 0
        while len(samples) < self.count:
            attempts += 1
            if attempts > MAX_DRAW_ATTEMPTS:
                raise InputError(f"Не удалось выбрать {self.count} точек вне исключенных множеств")
            sample = {p: Scalar(Fraction(rng.randint(-SAMPLE_NUMERATOR_BOUND, SAMPLE_NUMERATOR_BOUND),
                                         rng.randint(1, SAMPLE_DENOMINATOR_BOUND)))
                      for p in self.params}
            try:
                self.check(sample)
            except InputError:
                continue
            samples.append(sample)
        logger.debug(f"Выборка: {len(samples)} точек за {attempts} попыток (seed={self.seed})")
        return samples


def format_point(sample: Mapping[str, Any]) -> Dict[str, str]:
    return {k: str(to_scalar(v)) for k, v in sample.items()}


def verify_identity(lhs: PolyVectorField, rhs: PolyVectorField, modulo: Sequence[PolyVectorField],
                    plan: SamplePlan, title: str = "identity") -> SampleReport:
    """Проверяет lhs − rhs ∈ span(modulo) во всех точках выборки.

    Знаменатели должны быть уже умножены: тождество проверяется для
    многочленных полей. Первая точка, где включение нарушено, делает
    вердикт окончательным.
    """
    diff = lhs - rhs
    report = SampleReport(title=title)
    for sample in plan.draw():
        point = plan.point(sample)
        report.samples.append(format_point(sample))
        span = Subspace.span([m.at(point) for m in modulo], len(diff.coords))
        if not span.contains(diff.at(point)):
            report.witness = format_point(sample)
            report.add("identity", False, witness=report.witness)
            logger.warning(f"{title}: тождество нарушено в точке {report.witness}")
            return report
    report.add("identity", True, samples=len(report.samples))
    return report


def verify_outside(v: PolyVectorField, span_fields: Sequence[PolyVectorField], plan: SamplePlan,
                   title: str = "outside") -> SampleReport:
    """Проверяет v(p) ∉ span(span_fields(p)) во всех точках выборки."""
    report = SampleReport(title=title)
    for sample in plan.draw():
        point = plan.point(sample)
        report.samples.append(format_point(sample))
        span = Subspace.span([f.at(point) for f in span_fields], len(v.coords))
        if span.contains(v.at(point)):
            report.witness = format_point(sample)
            report.add("outside", False, witness=report.witness)
            return report
    report.add("outside", True, samples=len(report.samples))
    return report


def identity_on_chart(lhs: PolyVectorField, rhs: PolyVectorField, parametrization: Mapping[str, Poly]) -> bool:
    """Точное полиномиальное тождество lhs∘ψ = rhs∘ψ (без выборки)."""
    return (lhs - rhs).subs(parametrization).is_zero()


# --- трубки ---

def cone_polys() -> Tuple[Poly, Poly, Poly]:
    """d₁ = x₀x₂ − x₁², d₂ = x₀x₃ − x₁x₂, d₃ = x₁x₃ − x₂² (скрученная кубика)."""
    x0, x1, x2, x3 = (Poly.var(f"x{k}") for k in range(4))
    return x0 * x2 - x1 ** 2, x0 * x3 - x1 * x2, x1 * x3 - x2 ** 2


def cone_syzygies() -> List[Poly]:
    x0, x1, x2, x3 = (Poly.var(f"x{k}") for k in range(4))
    d1, d2, d3 = cone_polys()
    return [x3 * d1 - x2 * d2 + x1 * d3, x2 * d1 - x1 * d2 + x0 * d3]


def tangent_quartic() -> Poly:
    """Уравнение касательной развертывающейся поверхности кубики."""
    x0, x1, x2, x3 = (Poly.var(f"x{k}") for k in range(4))
    return (x0 ** 2 * x3 ** 2 - 6 * x0 * x1 * x2 * x3 + 4 * x0 * x2 ** 3
            + 4 * x1 ** 3 * x3 - 3 * x1 ** 2 * x2 ** 2)


def tangent_chart() -> Dict[str, Poly]:
    """ψ(r, s, t) = (r³, r²(s+t), rs(s+2t), s²(s+3t))."""
    r, s, t = Poly.var("r"), Poly.var("s"), Poly.var("t")
    return {"x0": r ** 3, "x1": r ** 2 * (s + t), "x2": r * s * (s + 2 * t), "x3": s ** 2 * (s + 3 * t)}


def cone_chart() -> Dict[str, Poly]:
    """(r, s) ↦ (r³, r²s, rs², s³)."""
    r, s = Poly.var("r"), Poly.var("s")
    return {"x0": r ** 3, "x1": r ** 2 * s, "x2": r * s ** 2, "x3": s ** 3}


def seven_dim_vectors() -> Dict[str, Tuple[Poly, ...]]:
    """Векторы X₁, X₂, X₃ и Z (в ℝ⁴), порождающие 𝒟₁₀ трубки над касательной поверхностью."""
    x = tuple(Poly.var(f"x{k}") for k in range(4))
    x0, x1, x2, x3 = x
    d1, d2, d3 = cone_polys()
    lead = x0 * d3 - x2 * d1
    tail = x1 * d3 - x3 * d1
    zero = Poly()
    return {
        "X1": x,
        "X2": (zero, 4 * d1 ** 2, 4 * d1 * d2, 3 * d2 ** 2),
        "X3": (zero, 2 * d1, d2, zero),
        "Z": (d1 * lead, d1 * tail, d3 * lead, d3 * tail),
    }


def seven_dim_fields() -> Dict[str, PolyVectorField]:
    """Z₁, Z₂, Z₃, Z и сопряженные (суффикс "b") в координатах ℂ⁴."""
    fields: Dict[str, PolyVectorField] = {}
    for name, a in seven_dim_vectors().items():
        zname = "Z" if name == "Z" else "Z" + name[1:]
        fields[zname] = holomorphic_field(a)
        fields[zname + "b"] = fields[zname].conj()
    assert_tube_invariant(list(fields.values()), tube_coords(4)[4:])
    return fields


def seven_dim_commutation_table() -> List[Tuple[str, PolyVectorField, PolyVectorField]]:
    """Таблица [Z̄_a, Z_b] с умноженными на d₂ знаменателями: (имя, левая часть, правая часть)."""
    f = seven_dim_fields()
    x0, x1, x2 = (Poly.var(f"x{k}") for k in range(3))
    d1, d2, d3 = cone_polys()
    lead = x0 * d3 - x2 * d1
    shear = 2 * x2 * d1 + x1 * d2
    dz1 = holomorphic_field([0, 1, 0, 0])
    b = vf_bracket
    return [
        ("[Z1b,Z1] = 1/2 Z1", b(f["Z1b"], f["Z1"]), f["Z1"].scale(HALF)),
        ("[Z1b,Z2] = 2 Z2", b(f["Z1b"], f["Z2"]), f["Z2"].scale(2)),
        ("[Z1b,Z3] = Z3", b(f["Z1b"], f["Z3"]), f["Z3"]),
        ("[Z2b,Z1] = 1/2 Z2", b(f["Z2b"], f["Z1"]), f["Z2"].scale(HALF)),
        ("d2[Z2b,Z2] = 8 d1(x0d3 - x2d1) Z2", b(f["Z2b"], f["Z2"]).scale(d2), f["Z2"].scale(8 * d1 * lead)),
        ("[Z2b,Z3] = 2(x0d2 - 2x1d1) Z3", b(f["Z2b"], f["Z3"]), f["Z3"].scale(2 * (x0 * d2 - 2 * x1 * d1))),
        ("[Z3b,Z1] = 1/2 Z3", b(f["Z3b"], f["Z1"]), f["Z3"].scale(HALF)),
        ("d2[Z3b,Z2] = -(2x2d1 + x1d2) Z2 + 2 d1(x0d3 - x2d1) Z3",
         b(f["Z3b"], f["Z2"]).scale(d2), f["Z2"].scale(-shear) + f["Z3"].scale(2 * d1 * lead)),
        ("2d2[Z3b,Z3] = -(2x2d1 + x1d2) Z3 + 2 d1(x0d3 - x2d1) dz1",
         b(f["Z3b"], f["Z3"]).scale(2 * d2), f["Z3"].scale(-shear) + dz1.scale(2 * d1 * lead)),
    ]


def seven_dim_plan(count: int = DEFAULT_SAMPLES, seed: int = DEFAULT_SEED) -> SamplePlan:
    r, s, t = Poly.var("r"), Poly.var("s"), Poly.var("t")
    _, d2, _ = cone_polys()
    return SamplePlan(params=["r", "s", "t"], parametrization=tangent_chart(), count=count, seed=seed,
                      excluded=[r, s, t, d2])


@dataclass
class TubeFrame:
    """Карта базы Σ трубки и репер TΣ в параметрах карты.

    Attributes:
        name: Название.
        params: Параметры карты.
        parametrization: ψ, координаты xₖ как многочлены от параметров.
        frame: Векторы репера TΣ (координаты в ℝⁿ, многочлены от параметров).
        excluded: Многочлены, не обращающиеся в нуль в допустимых точках.
    """
    name: str
    params: List[str]
    parametrization: Dict[str, Poly]
    frame: List[Tuple[Poly, ...]]
    excluded: List[Poly] = field(default_factory=list)

    @property
    def n(self) -> int:
        return len(self.parametrization)

    @property
    def coords(self) -> List[str]:
        return [f"x{k}" for k in range(self.n)]

    def fields(self) -> List[PolyVectorField]:
        """Порождающие 𝒟₁₀: Z_s = ½(v_s∂_x − i v_s∂_y), коэффициенты в параметрах."""
        out = [holomorphic_field(v) for v in self.frame]
        assert_tube_invariant(out, tube_coords(self.n)[self.n:])
        return out

    def plan(self, count: int = DEFAULT_SAMPLES, seed: int = DEFAULT_SEED) -> SamplePlan:
        return SamplePlan(params=list(self.params), parametrization=dict(self.parametrization),
                          count=count, seed=seed, excluded=list(self.excluded))

    def jacobian_span(self, sample: Mapping[str, Any]) -> Subspace:
        point = {k: to_scalar(v) for k, v in sample.items()}
        cols = [tuple(self.parametrization[c].diff(a).evaluate(point) for c in self.coords) for a in self.params]
        return Subspace.span(cols, self.n)

    def frame_span(self, sample: Mapping[str, Any], vectors: Optional[Sequence[Tuple[Poly, ...]]] = None) -> Subspace:
        point = {k: to_scalar(v) for k, v in sample.items()}
        vectors = self.frame if vectors is None else vectors
        return Subspace.span([tuple(c.evaluate(point) for c in v) for v in vectors], self.n)


def _curve_derivative(k: int, order: int) -> Tuple[Poly, ...]:
    """γ^{(order)}(λ) для γ(λ) = (1, λ, …, λᵏ)."""
    lam = Poly.var("lam")
    out = []
    for i in range(k + 1):
        if i < order:
            out.append(Poly())
        else:
            out.append(math.perm(i, order) * lam ** (i - order))
    return tuple(out)


def tube_generators(k: int) -> TubeFrame:
    """Трубка над конусом над касательной (k−2)-развертывающейся поверхности кривой γ.

    ψ(λ, t₀, …, t_{k−2}) = Σ t_j γ^{(j)}(λ); TΣ порождено γ, γ′, …, γ^{(k−1)}.
    Для k = 3 в координатах ℂ⁴ порождающие Z₁, Z₂, Z₃ дает `seven_dim_fields`.

    Raises:
        InputError: k < 2.
    """
    if k < 2:
        raise InputError(f"Трубка определена для k ≥ 2, получено k = {k}")
    ts = [f"t{j}" for j in range(k - 1)]
    derivs = [_curve_derivative(k, j) for j in range(k)]
    psi: Dict[str, Poly] = {}
    for i in range(k + 1):
        psi[f"x{i}"] = sum((Poly.var(t) * derivs[j][i] for j, t in enumerate(ts)), Poly())
    return TubeFrame(name=f"tube_k{k}", params=["lam"] + ts, parametrization=psi, frame=derivs,
                     excluded=[Poly.var(ts[-1])])


def seven_dim_frame() -> TubeFrame:
    """Репер X₁, X₂, X₃ на карте (r, s, t) трубки над касательной поверхностью кубики."""
    psi = tangent_chart()
    vectors = seven_dim_vectors()
    frame = [tuple(c.subs(psi) for c in vectors[name]) for name in ("X1", "X2", "X3")]
    plan = seven_dim_plan()
    return TubeFrame(name="tube_k3_ambient", params=["r", "s", "t"], parametrization=psi, frame=frame,
                     excluded=[p.subs(psi) for p in plan.excluded])


def cone_frame() -> TubeFrame:
    """База 𝒩⁶: конус над кубикой с репером ∂_rψ, ∂_sψ."""
    psi = cone_chart()
    frame = [tuple(psi[f"x{k}"].diff(a) for k in range(4)) for a in ("r", "s")]
    return TubeFrame(name="cone_k3", params=["r", "s"], parametrization=psi, frame=frame,
                     excluded=[Poly.var("r"), Poly.var("s")])


# --- ряды Тейлора в точке ---

def _shift_name(param: str) -> str:
    return f"δ{param}"


def _jet_ring(params: Sequence[str]) -> PolyRing:
    """Разреженное кольцо sympy от сдвигов δa = a − a₀ параметров карты."""
    return poly_ring([symbol(_shift_name(a)) for a in params], QQ_I)[0]


def _truncate(p: PolyElement, order: int) -> PolyElement:
    return p.ring.from_dict({m: c for m, c in p.items() if sum(m) <= order})


def _jet_value(p: PolyElement) -> Scalar:
    return from_qqi(p.coeff(1))


def _taylor(p: Poly, center: Point, ring: PolyRing, order: int) -> PolyElement:
    """Разложение p по сдвигам δa, усеченное по степени `order`.

    Raises:
        InputError: Не задано значение параметра.
    """
    names = p.variables()
    missing = [a for a in names if a not in center]
    if missing:
        raise InputError(f"Не заданы значения параметров {missing}")
    shifted = p.as_expr().xreplace({symbol(a): to_sympy(center[a]) + symbol(_shift_name(a)) for a in names})
    return _truncate(ring.from_expr(shifted), order)


def _matmul(a: Sequence[Sequence[PolyElement]], b: Sequence[Sequence[PolyElement]],
            order: int) -> List[List[PolyElement]]:
    ring = a[0][0].ring
    return [[_truncate(sum((x * b[k][j] for k, x in enumerate(row)), ring.zero), order) for j in range(len(b[0]))]
            for row in a]


def _series_inverse(m: Sequence[Sequence[PolyElement]], order: int) -> List[List[PolyElement]]:
    """Обратная матрица рядов: M⁻¹ = Σ (−M₀⁻¹N)ʲ M₀⁻¹, N = M − M₀.

    Raises:
        InputError: M₀ вырождена.
    """
    ring = m[0][0].ring
    size = len(m)
    m0 = DomainMatrix([[e.coeff(1) for e in row] for row in m], (size, size), QQ_I)
    if m0.det() == QQ_I.zero:
        raise InputError("Вырожденный минор в точке выборки")
    inv = m0.inv().to_Matrix()
    inv0 = [[ring.ground_new(QQ_I.from_sympy(inv[i, j])) for j in range(size)] for i in range(size)]
    nil = [[e - ring.ground_new(e.coeff(1)) for e in row] for row in m]
    step = [[-x for x in row] for row in _matmul(inv0, nil, order)]
    acc = inv0
    term = inv0
    for _ in range(order):
        term = _matmul(step, term, order)
        acc = [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(acc, term)]
    return acc


@dataclass
class PointwiseFreeman:
    """Слои F^p₁₀ в точке: dims[0] = dim F^{−1}, fibers – векторы в ℂⁿ."""
    dims: List[int]
    fibers: List[Subspace]
    stabilized: bool = False
    sample: Dict[str, str] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, Any]:
        return {"dims": list(self.dims), "stabilized": self.stabilized, "sample": dict(self.sample)}


def pointwise_freeman(frame: TubeFrame, sample: Mapping[str, Any]) -> PointwiseFreeman:
    """Фильтрация Фримана трубки в точке карты.

    Для трубочных полей [V, W̄] ≡ ½ D_w̄ v по модулю 𝒟₀₁, поэтому
    F^{−1} = TΣ и F^p = {v ∈ F^{p−1} : ∂_u v ∈ F^{p−1} для всех направлений
    карты u}. Репер каждого слоя строится как ряд Тейлора в точке:
    каждый шаг теряет один порядок, поэтому начальный порядок равен
    размерности репера плюс один.

    Args:
        frame: Карта и репер TΣ.
        sample: Значения параметров карты.

    Returns:
        Размерности слоев до нуля или стабилизации.

    Raises:
        InputError: Точка на исключенном множестве, или репер вырожден в точке,
            или ψ не является погружением в точке.
    """
    frame.plan().check(sample)
    center = {k: to_scalar(v) for k, v in sample.items()}
    m = len(frame.frame)
    n = frame.n
    if frame.jacobian_span(center).dim != m:
        raise InputError(f"ψ не является погружением в точке {format_point(sample)}")
    order = m + 1
    ring = _jet_ring(frame.params)
    current = [[_taylor(c, center, ring, order) for c in v] for v in frame.frame]
    result = PointwiseFreeman(dims=[], fibers=[], sample=format_point(sample))

    def fiber(vectors) -> Subspace:
        return Subspace.span([tuple(_jet_value(c) for c in v) for v in vectors], n)

    start = fiber(current)
    if start.dim != m:
        raise InputError(f"Репер {frame.name} вырожден в точке {format_point(sample)}")
    result.dims.append(m)
    result.fibers.append(start)
    shifts = ring.gens
    while current:
        size = len(current)
        # строки репера, на которых он невырожден в точке
        _, _, pivots = rref(Matrix([[_jet_value(c) for c in v] for v in current], n))
        rest = [c for c in range(n) if c not in pivots]
        minor = [[current[i][p] for i in range(size)] for p in pivots]
        minor_inv = _series_inverse(minor, order)
        rows: List[List[PolyElement]] = []
        for h in shifts:
            derivs = [[c.diff(h) for c in v] for v in current]
            for c in rest:
                row = []
                for i in range(size):
                    u = derivs[i]
                    coef = [_truncate(sum((minor_inv[a][b] * u[pivots[b]] for b in range(size)), ring.zero), order - 1)
                            for a in range(size)]
                    proj = sum((coef[j] * current[j][c] for j in range(size)), ring.zero)
                    row.append(_truncate(u[c] - proj, order - 1))
                rows.append(row)
        b0 = [[_jet_value(e) for e in row] for row in rows]
        if not rows:
            r, piv_cols = 0, []
        else:
            _, r, piv_cols = rref(Matrix(b0, size))
        if r == 0:
            result.stabilized = True
            logger.debug(f"{frame.name}: фильтрация стабилизировалась на размерности {size}")
            break
        chosen: List[int] = []
        for idx in range(len(rows)):
            trial = chosen + [idx]
            if rank(Matrix([[b0[t][p] for p in piv_cols] for t in trial], r)) == len(trial):
                chosen = trial
            if len(chosen) == r:
                break
        free = [f for f in range(size) if f not in piv_cols]
        block_inv = _series_inverse([[rows[t][p] for p in piv_cols] for t in chosen], order - 1)
        new_frame = []
        for f in free:
            rhs = [rows[t][f] for t in chosen]
            lifted = [_truncate(-sum((block_inv[a][b] * rhs[b] for b in range(r)), ring.zero), order - 1)
                      for a in range(r)]
            coeffs = {f: ring.one}
            coeffs.update(zip(piv_cols, lifted))
            new_frame.append([_truncate(sum((coeffs[i] * current[i][c] for i in coeffs), ring.zero), order - 1)
                              for c in range(n)])
        order -= 1
        current = new_frame
        result.dims.append(len(current))
        result.fibers.append(fiber(current) if current else Subspace.zero(n))
        logger.debug(f"{frame.name}: слой размерности {len(current)}")
    return result


def tube_fiber_expectation(k: int, sample: Mapping[str, Any], p: int) -> Subspace:
    """⟨γ(λ), …, γ^{(k−p−2)}(λ)⟩ в точке: ожидаемый слой F^p."""
    frame = tube_generators(k)
    return frame.frame_span(sample, frame.frame[:max(k - p - 1, 0)])


# --- точечные инварианты распределений ---

def _values(fields: Sequence[PolyVectorField], point: Point) -> List[Vector]:
    return [f.at(point) for f in fields]


def levi_kernel_at(fields: Sequence[PolyVectorField], point: Point) -> Subspace:
    """Ядро формы Леви в точке: {Σ c_a Z_a : Σ c_a[Z_a, Z̄_b] ∈ 𝒟₁₀ + 𝒟₀₁ для всех b}.

    Raises:
        InputError: Значения полей в точке зависимы.
    """
    n = len(fields[0].coords)
    values = _values(fields, point)
    span_z = Subspace.span(values, n)
    if span_z.dim != len(fields):
        raise InputError("Порождающие 𝒟₁₀ зависимы в точке")
    total = span_z + Subspace.span(_values([f.conj() for f in fields], point), n)
    rows = []
    for zb in (f.conj() for f in fields):
        cols = [total.reduce(vf_bracket(z, zb).at(point)) for z in fields]
        rows.extend([[col[k] for col in cols] for k in range(n)])
    kernel = kernel_vectors(rows, len(fields))
    return Subspace.span([tuple(sum((c[a] * values[a][k] for a in range(len(fields))), ZERO)
                                for k in range(n)) for c in kernel], n)


@dataclass
class HormanderResult:
    depth: int
    dims: List[int]
    bracket_generating: bool

    def to_dict(self) -> Dict[str, Any]:
        return {"depth": self.depth, "dims": list(self.dims), "bracket_generating": self.bracket_generating}


def hormander_check(gens: Sequence[PolyVectorField], point: Point,
                    max_depth: int = DEFAULT_MAX_DEPTH) -> HormanderResult:
    """Флаг D₁ ⊆ D₂ ⊆ …, D_{j+1} = D_j + [gens, поля уровня j], в точке.

    Итерация останавливается, когда размерность перестает расти.
    """
    n = len(gens[0].coords)
    span = Subspace.span(_values(gens, point), n)
    dims = [span.dim]
    seen = {f for f in gens}
    level = list(gens)
    while span.dim < n and len(dims) < max_depth:
        new_level = []
        for g in gens:
            for f in level:
                b = vf_bracket(g, f)
                if b.is_zero() or b in seen or -b in seen:
                    continue
                seen.add(b)
                new_level.append(b)
        grown = span + Subspace.span(_values(new_level, point), n)
        if grown.dim == span.dim:
            break
        span = grown
        dims.append(span.dim)
        level = new_level
    depth = dims.index(dims[-1]) + 1
    logger.debug(f"Флаг Хёрмандера: {dims}")
    return HormanderResult(depth=depth, dims=dims, bracket_generating=dims[-1] == n)


def cauchy_characteristic(gens: Sequence[PolyVectorField], point: Point) -> Subspace:
    """Характеристика Коши {v ∈ 𝒟_p : [v, 𝒟] ⊆ 𝒟 в точке p}.

    Raises:
        InputError: Значения порождающих в точке зависимы.
    """
    n = len(gens[0].coords)
    values = _values(gens, point)
    span = Subspace.span(values, n)
    if span.dim != len(gens):
        raise InputError("Порождающие распределения зависимы в точке")
    rows = []
    for gj in gens:
        cols = [span.reduce(vf_bracket(gi, gj).at(point)) for gi in gens]
        rows.extend([[col[k] for col in cols] for k in range(n)])
    kernel = kernel_vectors(rows, len(gens))
    return Subspace.span([tuple(sum((c[i] * values[i][k] for i in range(len(gens))), ZERO)
                                for k in range(n)) for c in kernel], n)


# --- 𝒩⁶ ---

N6_COORDS = ("r", "s", "y0", "y1", "y2", "y3")


def n6_fields() -> Dict[str, PolyVectorField]:
    """X₁ = ∂_r, X₂ = ∂_s, Y₁, Y₂ = их J-образы и производные поля на карте (r, s, y) трубки 𝒩⁶."""
    psi = cone_chart()
    r, s = Poly.var("r"), Poly.var("s")
    third = Scalar(Fraction(1, 3))

    def y_field(vector):
        return PolyVectorField(N6_COORDS, {f"y{k}": c for k, c in enumerate(vector)})

    fields = {
        "X1": PolyVectorField.coordinate(N6_COORDS, "r"),
        "X2": PolyVectorField.coordinate(N6_COORDS, "s"),
        "Y1": y_field([psi[f"x{k}"].diff("r") for k in range(4)]),
        "Y2": y_field([psi[f"x{k}"].diff("s") for k in range(4)]),
        "Y3": y_field([0, r, s, 0]),
    }
    fields["X0"] = (fields["X1"].scale(r) + fields["X2"].scale(s)).scale(third)
    fields["Y0"] = (fields["Y1"].scale(r) + fields["Y2"].scale(s)).scale(third)
    return fields


# --- параллелизм прямых для y⁗ = 0 ---

L6_COORDS = ("t", "x", "y0", "y1", "y2", "y3")
E5_COORDS = ("x", "y0", "y1", "y2", "y3")

# Десять интегрируемых распределений: имя -> поля
INTEGRABLE_DISTRIBUTIONS = {
    "XI": ("Dx", "I"),
    "XY0": ("Dx", "dy0"),
    "XY0Y1": ("Dx", "dy0", "dy1"),
    "XY0Y1Y2": ("Dx", "dy0", "dy1", "dy2"),
    "XY0Y1Y2Y3": ("Dx", "dy0", "dy1", "dy2", "dy3"),
    "Y0Y1Y2Y3": ("dy0", "dy1", "dy2", "dy3"),
    "IY3": ("I", "dy3"),
    "IY3Y2": ("I", "dy3", "dy2"),
    "IY3Y2Y1": ("I", "dy3", "dy2", "dy1"),
    "IY3Y2Y1Y0": ("I", "dy3", "dy2", "dy1", "dy0"),
}

SYMMETRY_LABELS = ["P", "D", "K", "S", "Q0", "Q1", "Q2", "Q3"]


def line_fields() -> Dict[str, PolyVectorField]:
    """Репер D_x, ∫_x, ∂_{y₀..y₃} на ℒ⁶ с координатами (t, x, y₀, …, y₃)."""
    x = Poly.var("x")
    y = [Poly.var(f"y{k}") for k in range(4)]
    fields = {
        "Dx": PolyVectorField(L6_COORDS, {"x": 1, "y0": y[1], "y1": y[2], "y2": y[3]}),
        "I": PolyVectorField(L6_COORDS, {"t": 1, "x": x ** 2, "y0": 3 * x * y[0], "y1": 3 * y[0] + x * y[1],
                                         "y2": 4 * y[1] - x * y[2], "y3": 3 * (y[2] - x * y[3])}),
    }
    for k in range(4):
        fields[f"dy{k}"] = PolyVectorField.coordinate(L6_COORDS, f"y{k}")
    return fields


def point_symmetries() -> Dict[str, PolyVectorField]:
    """Продолженные на ℰ⁵ точечные симметрии уравнения y⁗ = 0."""
    x = Poly.var("x")
    y = [Poly.var(f"y{k}") for k in range(4)]
    f = lambda coeffs: PolyVectorField(E5_COORDS, coeffs)  # noqa: E731
    return {
        "P": f({"x": 1}),
        "D": f({"x": x, "y1": -y[1], "y2": -2 * y[2], "y3": -3 * y[3]}),
        "K": f({"x": x ** 2, "y0": 3 * x * y[0], "y1": 3 * y[0] + x * y[1], "y2": 4 * y[1] - x * y[2],
                "y3": 3 * y[2] - 3 * x * y[3]}),
        "S": f({f"y{k}": y[k] for k in range(4)}),
        "Q0": f({"y0": 1}),
        "Q1": f({"y0": x, "y1": 1}),
        "Q2": f({"y0": x ** 2, "y1": 2 * x, "y2": 2}),
        "Q3": f({"y0": x ** 3, "y1": 3 * x ** 2, "y2": 6 * x, "y3": 6}),
    }


def _poly_det(rows: Sequence[Sequence[Poly]]) -> Poly:
    """Определитель матрицы многочленов (без делений, методом Берковица)."""
    if not rows:
        return Poly.const(ONE)
    return Poly.from_expr(sp.Matrix([[c.as_expr() for c in row] for row in rows]).det(method="berkowitz"))


def _involutive_at_samples(fields: Sequence[PolyVectorField], plan: SamplePlan) -> Optional[Dict[str, str]]:
    brackets = [vf_bracket(a, b) for i, a in enumerate(fields) for b in fields[i + 1:]]
    n = len(fields[0].coords)
    for sample in plan.draw():
        point = plan.point(sample)
        span = Subspace.span(_values(fields, point), n)
        if not all(span.contains(b.at(point)) for b in brackets):
            return format_point(sample)
    return None


def parallelism_check(samples: int = DEFAULT_SAMPLES, seed: int = DEFAULT_SEED,
                      reference: Optional[Callable[[], LieAlgebra]] = None) -> Report:
    """Параллелизм прямых на ℒ⁶ и алгебра симметрий уравнения y⁗ = 0.

    Args:
        samples: Число точек выборки.
        seed: Зерно выборки.
        reference: Построитель алгебры для сравнения рядов коммутантов
            (по умолчанию gl₂⋉S³ℝ² из каталога).
    """
    if reference is None:
        from scripts.models import gl2_sk_algebra
        reference = lambda: gl2_sk_algebra(3)  # noqa: E731
    report = Report(title="line_parallelism")
    f = line_fields()
    plan = SamplePlan(params=list(L6_COORDS), count=samples, seed=seed)

    det = _poly_det([list(f[name].coeffs) for name in ("Dx", "I", "dy0", "dy1", "dy2", "dy3")])
    report.add("unimodular_frame", det.is_constant() and not det.is_zero(), det=str(det))

    for k in range(1, 4):
        lhs = -vf_bracket(f["Dx"], f[f"dy{k}"])
        rep = verify_identity(lhs, f[f"dy{k - 1}"], [f["Dx"], f[f"dy{k}"]], plan, title=f"lowering_y{k}")
        report.add(f"lowering_y{k}", rep.ok, verdict=rep.verdict, witness=rep.witness)
    for k in range(3):
        raised = vf_bracket(f["I"], f[f"dy{k}"])
        inside = verify_identity(raised, PolyVectorField.zero(L6_COORDS), [f["I"], f[f"dy{k}"], f[f"dy{k + 1}"]],
                                 plan, title=f"raising_y{k}")
        proper = verify_outside(raised, [f["I"], f[f"dy{k}"]], plan, title=f"raising_y{k}_nonzero")
        report.add(f"raising_y{k}", inside.ok and proper.ok, verdict=inside.verdict,
                   witness=inside.witness or proper.witness)

    for name, members in INTEGRABLE_DISTRIBUTIONS.items():
        witness = _involutive_at_samples([f[m] for m in members], plan)
        report.add(f"integrable_{name}", witness is None, witness=witness)

    sym = point_symmetries()
    try:
        algebra = vf_structure([sym[label] for label in SYMMETRY_LABELS], SYMMETRY_LABELS, name="sym_y4")
    except InputError as e:
        report.add("symmetries_closed", False, error=str(e))
        return report
    report.add("symmetries_closed", algebra.dim == 8, dim=algebra.dim)
    report.add("symmetries_jacobi", validate(algebra).ok)
    dims = [s.dim for s in derived_series(algebra)]
    expected = [s.dim for s in derived_series(reference())]
    report.add("derived_series", dims == expected, dims=dims, expected=expected)

    restricted = f["I"]
    matches = restricted["t"] == Poly.const(ONE) and all(restricted[c] == sym["K"][c] for c in E5_COORDS)
    report.add("projective_symmetry", matches)

    cartan = [PolyVectorField(E5_COORDS, {c: f["Dx"][c] for c in E5_COORDS}),
              PolyVectorField.coordinate(E5_COORDS, "y3")]
    e5_plan = SamplePlan(params=list(E5_COORDS), count=samples, seed=seed)
    preserved = True
    for label in SYMMETRY_LABELS:
        for c in cartan:
            rep = verify_identity(vf_bracket(sym[label], c), PolyVectorField.zero(E5_COORDS), cartan, e5_plan)
            preserved = preserved and rep.ok
    report.add("cartan_preserved", preserved)
    report.data["structure"] = {f"[{a},{b}]": v for (a, b), v in algebra.structure_constants().items()}
    return report
