"""Многочлены от именованных переменных над ℚ(i) и исключение переменных.

`Poly` – неизменяемая обертка над `sympy.Poly` с областью коэффициентов
`QQ_I`: генераторы – символы, упорядоченные по имени, и только те, что
реально входят в многочлен. Обертка смешивается со скалярами `Scalar` в
арифметике, поэтому векторы с многочленными координатами проходят через
те же скобки алгебр Ли. Исключение переменных опирается на
`sympy.linsolve` и `sympy.solve`.
"""
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

import sympy as sp
from sympy.polys.domains import QQ, QQ_I
from sympy.polys.polyerrors import BasePolynomialError, CoercionFailed

from scripts.errors import InputError
from scripts.field import ONE, ZERO, Scalar, to_scalar

# Настройка логирования
logger = logging.getLogger(__name__)

Monomial = Tuple[Tuple[str, int], ...]

# Предел числа ветвей при расщеплении по множителям
DEFAULT_MAX_BRANCHES = 64

# Генератор констант: sympy.Poly требует хотя бы один генератор
_UNIT = sp.Dummy("one")


@lru_cache(maxsize=None)
def symbol(name: str) -> sp.Symbol:
    return sp.Symbol(name)


def to_qqi(value) -> "QQ_I.dtype":
    """Scalar (или то, что к нему приводится) как элемент QQ_I."""
    c = to_scalar(value)
    return QQ_I(QQ(c.re.numerator, c.re.denominator), QQ(c.im.numerator, c.im.denominator))


def from_qqi(c) -> Scalar:
    return Scalar(Fraction(int(c.x.numerator), int(c.x.denominator)),
                  Fraction(int(c.y.numerator), int(c.y.denominator)))


def to_sympy(value) -> sp.Expr:
    return QQ_I.to_sympy(to_qqi(value))


def scalar_from_sympy(value) -> Scalar:
    """Рациональное гауссово число sympy как `Scalar`.

    Raises:
        InputError: Значение не лежит в ℚ(i).
    """
    try:
        return from_qqi(QQ_I.from_sympy(sp.expand(value)))
    except CoercionFailed:
        raise InputError(f"{value} не является элементом ℚ(i)") from None


def _normalize(p: sp.Poly) -> sp.Poly:
    """Оставляет генераторы, входящие в многочлен, в порядке имен."""
    if p.get_domain() != QQ_I:
        p = p.set_domain(QQ_I)
    rep = p.as_dict(native=True)
    used = sorted({i for exps in rep for i, e in enumerate(exps) if e}, key=lambda i: p.gens[i].name)
    if not used:
        if p.gens == (_UNIT,):
            return p
        return sp.Poly.from_dict({(0,): rep.get((0,) * len(p.gens), QQ_I.zero)}, _UNIT, domain=QQ_I)
    gens = tuple(p.gens[i] for i in used)
    if gens == p.gens:
        return p
    return sp.Poly.from_dict({tuple(exps[i] for i in used): c for exps, c in rep.items()}, *gens, domain=QQ_I)


def _mono_degree(m: Monomial, names: Optional[Iterable[str]] = None) -> int:
    if names is None:
        return sum(e for _, e in m)
    names = set(names)
    return sum(e for v, e in m if v in names)


class Poly:
    """Многочлен с коэффициентами в ℚ(i)."""

    __slots__ = ("_p", "_terms")

    def __init__(self, terms: Optional[Mapping[Monomial, object]] = None):
        terms = terms or {}
        names = sorted({name for mono in terms for name, _ in mono})
        rep: Dict[Tuple[int, ...], object] = {}
        for mono, c in terms.items():
            powers = dict(mono)
            key = tuple(powers.get(name, 0) for name in names) if names else (0,)
            rep[key] = rep.get(key, QQ_I.zero) + to_qqi(c)
        gens = [symbol(name) for name in names] or [_UNIT]
        object.__setattr__(self, "_p", _normalize(sp.Poly.from_dict(rep, *gens, domain=QQ_I)))
        object.__setattr__(self, "_terms", None)

    def __setattr__(self, name, value):
        raise AttributeError("Poly неизменяем")

    @classmethod
    def _wrap(cls, p: sp.Poly) -> "Poly":
        obj = object.__new__(cls)
        object.__setattr__(obj, "_p", _normalize(p))
        object.__setattr__(obj, "_terms", None)
        return obj

    @classmethod
    def var(cls, name: str) -> "Poly":
        s = symbol(name)
        return cls._wrap(sp.Poly(s, s, domain=QQ_I))

    @classmethod
    def const(cls, c) -> "Poly":
        return cls._wrap(sp.Poly.from_dict({(0,): to_qqi(c)}, _UNIT, domain=QQ_I))

    @classmethod
    def from_expr(cls, expr) -> "Poly":
        """Многочлен из выражения sympy (произведения раскрываются).

        Raises:
            InputError: Выражение не является многочленом над ℚ(i).
        """
        expr = sp.sympify(expr)
        gens = sorted(expr.free_symbols, key=lambda s: s.name) or [_UNIT]
        try:
            return cls._wrap(sp.Poly(expr, *gens, domain=QQ_I))
        except BasePolynomialError as e:
            raise InputError(f"{expr} не является многочленом над ℚ(i): {e}") from None

    @staticmethod
    def _coerce(other) -> Optional["Poly"]:
        if isinstance(other, Poly):
            return other
        if isinstance(other, (Scalar, int, Fraction)) and not isinstance(other, bool):
            return Poly.const(other)
        return None

    @staticmethod
    def _ground(other):
        if isinstance(other, (Scalar, int, Fraction)) and not isinstance(other, bool):
            return to_qqi(other)
        return None

    def as_expr(self) -> sp.Expr:
        return self._p.as_expr()

    @property
    def terms(self) -> Dict[Monomial, Scalar]:
        """Словарь {моном: коэффициент}; моном – пары (имя, степень) по порядку имен."""
        if self._terms is None:
            names = [g.name for g in self._p.gens]
            out = {}
            for exps, c in self._p.as_dict(native=True).items():
                out[tuple((names[i], e) for i, e in enumerate(exps) if e)] = from_qqi(c)
            object.__setattr__(self, "_terms", out)
        return self._terms

    # --- предикаты ---

    def is_zero(self) -> bool:
        return self._p.is_zero

    def __bool__(self) -> bool:
        return not self._p.is_zero

    def is_constant(self) -> bool:
        return self._p.is_ground

    def constant(self) -> Scalar:
        return self.terms.get((), ZERO)

    def variables(self) -> List[str]:
        return [g.name for g in self._p.gens if g != _UNIT]

    def degree(self, names: Optional[Iterable[str]] = None) -> int:
        """Полная степень (по переменным `names`, если они заданы); у нуля −1."""
        if self.is_zero():
            return -1
        names = list(names) if names is not None else None
        return max(_mono_degree(m, names) for m in self.terms)

    def degree_in(self, name: str) -> int:
        if self.is_zero():
            return -1
        s = symbol(name)
        return self._p.degree(s) if s in self._p.gens else 0

    # --- арифметика ---

    def __add__(self, other):
        c = self._ground(other)
        if c is not None:
            return Poly._wrap(self._p.add_ground(c))
        if not isinstance(other, Poly):
            return NotImplemented
        return Poly._wrap(self._p + other._p)

    __radd__ = __add__

    def __neg__(self):
        return Poly._wrap(-self._p)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Poly._wrap(self._p - o._p)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Poly._wrap(o._p - self._p)

    def __mul__(self, other):
        c = self._ground(other)
        if c is not None:
            return Poly._wrap(self._p.mul_ground(c))
        if not isinstance(other, Poly):
            return NotImplemented
        return Poly._wrap(self._p * other._p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Poly):
            if not other.is_constant() or other.is_zero():
                raise InputError("Деление многочлена допускается только на ненулевую константу")
            other = other.constant()
        inv = to_scalar(other).inverse()
        return Poly._wrap(self._p.mul_ground(to_qqi(inv)))

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int) or exponent < 0:
            return NotImplemented
        return Poly._wrap(self._p ** exponent)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return (self._p - o._p).is_zero

    def __hash__(self):
        if self.is_constant():
            return hash(self.constant())
        return hash(frozenset(self.terms.items()))

    # --- преобразования ---

    def _map_coeffs(self, fn) -> "Poly":
        rep = {exps: fn(c) for exps, c in self._p.as_dict(native=True).items()}
        return Poly._wrap(sp.Poly.from_dict(rep, *self._p.gens, domain=QQ_I))

    def conj(self) -> "Poly":
        """Сопряжение коэффициентов (переменные считаются вещественными)."""
        return self._map_coeffs(lambda c: QQ_I(c.x, -c.y))

    def real_part(self) -> "Poly":
        return self._map_coeffs(lambda c: QQ_I(c.x, QQ.zero))

    def imag_part(self) -> "Poly":
        return self._map_coeffs(lambda c: QQ_I(c.y, QQ.zero))

    def diff(self, name: str) -> "Poly":
        s = symbol(name)
        if s not in self._p.gens:
            return Poly()
        return Poly._wrap(self._p.diff(s))

    def subs(self, values: Mapping[str, Union["Poly", Scalar, int, Fraction, str]]) -> "Poly":
        """Одновременная подстановка многочленов вместо переменных."""
        present = set(self.variables())
        images = {}
        for name, value in values.items():
            if name not in present:
                continue
            image = Poly.const(value) if isinstance(value, str) else self._coerce(value)
            if image is None:
                raise InputError(f"Не удается подставить {value!r} вместо {name}")
            images[symbol(name)] = image.as_expr()
        if not images:
            return self
        return Poly.from_expr(self.as_expr().xreplace(images))

    def truncated(self, order: int) -> "Poly":
        """Отбрасывает мономы полной степени больше `order`."""
        rep = {exps: c for exps, c in self._p.as_dict(native=True).items() if sum(exps) <= order}
        return Poly._wrap(sp.Poly.from_dict(rep, *self._p.gens, domain=QQ_I))

    def evaluate(self, values: Mapping[str, object]) -> Scalar:
        """Значение в точке; все переменные должны быть заданы.

        Raises:
            InputError: Значение переменной не задано.
        """
        names = self.variables()
        missing = [v for v in names if v not in values]
        if missing:
            raise InputError(f"Не заданы значения переменных {missing}")
        if not names:
            return self.constant()
        value = self._p.eval({symbol(v): to_qqi(values[v]) for v in names})
        return scalar_from_sympy(value)

    def linear_coefficient(self, name: str) -> Optional[Tuple[Scalar, "Poly"]]:
        """(a, r), если многочлен равен a·name + r с константой a ≠ 0 и r без name."""
        a = None
        rest = {}
        for mono, c in self.terms.items():
            powers = dict(mono)
            if name not in powers:
                rest[mono] = c
                continue
            if mono != ((name, 1),):
                return None
            a = c
        if a is None:
            return None
        return a, Poly(rest)

    def divisible_by(self, name: str) -> bool:
        s = symbol(name)
        if self.is_zero() or s not in self._p.gens:
            return False
        common, _ = self._p.terms_gcd()
        return common[self._p.gens.index(s)] > 0

    def divide_by_var(self, name: str) -> "Poly":
        """Точное частное от деления на переменную.

        Raises:
            InputError: Многочлен не делится на `name`.
        """
        if not self.divisible_by(name):
            raise InputError(f"Многочлен не делится на {name}")
        q, _ = self._p.div(Poly.var(name)._p)
        return Poly._wrap(q)

    # --- печать ---

    def sorted_terms(self) -> List[Tuple[Monomial, Scalar]]:
        return sorted(self.terms.items(), key=lambda item: (-_mono_degree(item[0]), item[0]))

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        parts = []
        for mono, c in self.sorted_terms():
            body = "*".join(name if e == 1 else f"{name}^{e}" for name, e in mono)
            if not body:
                text = str(c) if c.is_real() or c.re == 0 else f"({c})"
            elif c == ONE:
                text = body
            elif c == -ONE:
                text = f"-{body}"
            elif c.is_real() or c.re == 0:
                text = f"{c}*{body}"
            else:
                text = f"({c})*{body}"
            parts.append(text)
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        return f"Poly('{self}')"


def poly_scale(c, v: Sequence) -> Tuple:
    """c·v для вектора с координатами-многочленами или скалярами."""
    return tuple(c * x for x in v)


def poly_vector(coeffs: Mapping[int, object], n: int) -> Tuple:
    """Вектор длины n с координатами-многочленами из словаря {индекс: значение}."""
    out = [Poly() for _ in range(n)]
    for k, value in coeffs.items():
        out[k] = out[k] + value
    return tuple(out)


def as_poly(value) -> Poly:
    p = Poly._coerce(value)
    if p is None:
        raise InputError(f"Не удается привести {value!r} к многочлену")
    return p


# --- исключение переменных ---

@dataclass
class Branch:
    """Ветвь решения: исключенные переменные и оставшиеся уравнения."""
    assignments: Dict[str, Poly] = field(default_factory=dict)
    residue: List[Poly] = field(default_factory=list)

    def free(self, unknowns: Sequence[str]) -> List[str]:
        return [x for x in unknowns if x not in self.assignments]

    def solution(self, unknowns: Sequence[str]) -> Dict[str, Poly]:
        """Значения всех неизвестных; свободные переходят в себя."""
        return {x: self.assignments.get(x, Poly.var(x)) for x in unknowns}

    def to_dict(self) -> Dict[str, object]:
        return {
            "assignments": {k: str(v) for k, v in self.assignments.items()},
            "residue": [str(r) for r in self.residue],
        }


def _is_affine(eq: Poly, unknowns: Sequence[str]) -> bool:
    """Уравнение степени 1 по неизвестным, все коэффициенты при них постоянны."""
    if eq.degree(unknowns) != 1:
        return False
    return all(eq.linear_coefficient(x) is not None for x in unknowns if eq.degree_in(x) > 0)


def _solve_affine(equations: Sequence[Poly], unknowns: Sequence[str]) -> Optional[Dict[str, Poly]]:
    """Решение аффинного блока через linsolve; None, если блок несовместен.

    Свободными остаются последние по порядку неизвестные.
    """
    symbols = [symbol(x) for x in unknowns]
    solutions = sp.linsolve([e.as_expr() for e in equations], symbols)
    if solutions is sp.S.EmptySet:
        return None
    values = next(iter(solutions))
    return {x: Poly.from_expr(v) for x, s, v in zip(unknowns, symbols, values) if v != s}


def _pick_pivot(equations: Sequence[Poly], unknowns: Sequence[str]) -> Optional[Tuple[int, str]]:
    """Уравнение, линейное по какой-либо неизвестной с постоянным коэффициентом."""
    for idx, eq in enumerate(equations):
        for x in unknowns:
            if eq.linear_coefficient(x) is not None:
                return idx, x
    return None


def _is_inconsistent(eq: Poly) -> bool:
    return eq.is_constant() and not eq.is_zero()


def solve_system(equations: Sequence[Poly], unknowns: Sequence[str], split: bool = False,
                 max_branches: int = DEFAULT_MAX_BRANCHES) -> List[Branch]:
    """Последовательное исключение переменных из полиномиальной системы.

    Сначала блок уравнений, аффинных по неизвестным, решается целиком
    (`sympy.linsolve`); затем уравнение, линейное по одной неизвестной,
    разрешается относительно нее (`sympy.solve`); шаги повторяются до
    неподвижной точки.

    Args:
        equations: Многочлены, приравниваемые к нулю.
        unknowns: Неизвестные в порядке предпочтения; прочие переменные –
            параметры.
        split: Расщеплять уравнения вида x·f = 0 на ветви x = 0 и f = 0, когда
            линейного исключения нет.
        max_branches: Предел числа ветвей.

    Returns:
        Совместные ветви; у каждой – исключенные переменные, выраженные через
        свободные, и нелинейный остаток.
    """
    unknowns = list(unknowns)
    branches: List[Branch] = []

    def eliminate(eqs: List[Poly], assignments: Dict[str, Poly], solved: Dict[str, Poly], skip: Iterable[int]):
        skip = set(skip)
        new_assign = {k: v.subs(solved) for k, v in assignments.items()}
        new_assign.update(solved)
        run([e.subs(solved) for i, e in enumerate(eqs) if i not in skip], new_assign)

    def run(eqs: List[Poly], assignments: Dict[str, Poly]):
        if len(branches) >= max_branches:
            logger.warning(f"Достигнут предел числа ветвей {max_branches}")
            return
        eqs = [e for e in eqs if not e.is_zero()]
        if any(_is_inconsistent(e) for e in eqs):
            return
        free = [x for x in unknowns if x not in assignments]
        block = [i for i, e in enumerate(eqs) if _is_affine(e, free)]
        if block:
            solved = _solve_affine([eqs[i] for i in block], free)
            if solved is None:
                return
            if solved:
                logger.debug(f"Аффинный блок из {len(block)} уравнений: {sorted(solved)}")
                eliminate(eqs, assignments, solved, block)
                return
        pivot = _pick_pivot(eqs, free)
        if pivot is not None:
            idx, x = pivot
            expr = Poly.from_expr(sp.solve(eqs[idx].as_expr(), symbol(x))[0])
            logger.debug(f"Исключение {x} = {expr}")
            eliminate(eqs, assignments, {x: expr}, [idx])
            return
        if split:
            for idx, eq in enumerate(eqs):
                for x in free:
                    if not eq.divisible_by(x):
                        continue
                    others = [e for i, e in enumerate(eqs) if i != idx]
                    run([Poly.var(x)] + others, dict(assignments))
                    run([eq.divide_by_var(x)] + others, dict(assignments))
                    return
        branches.append(Branch(assignments, eqs))

    run([as_poly(e) for e in equations], {})
    unique: List[Branch] = []
    seen = set()
    for b in branches:
        key = (tuple(sorted((k, str(v)) for k, v in b.assignments.items())), tuple(sorted(str(r) for r in b.residue)))
        if key not in seen:
            seen.add(key)
            unique.append(b)
    return unique


def satisfies(equations: Sequence[Poly], solution: Mapping[str, Poly]) -> bool:
    """Обращает ли подстановка все уравнения в нуль тождественно."""
    return all(as_poly(e).subs(solution).is_zero() for e in equations)
