"""Каталог конкретных алгебр Ли и CR-алгебр, их семейств, морфизмов и систем замыкания.

Каждая запись строится по явной таблице скобок и проверяется при создании:
тождество Якоби, аксиомы сопряжения и, если задана, градуировка и CR-структура.
Нарушения попадают в отчеты записи, а не в исключения.
"""
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Any, Callable, Dict, List, Mapping, Optional, Sequence, Tuple, Union

from scripts.errors import DegenerateBasePoint, InputError
from scripts.data_structures import ClosureReport, MorphismReport, Report
from scripts.field import (
    I, ZERO, Frame, Matrix, Scalar, ScalarLike, Subspace, Vector,
    is_zero_vector, rank, to_scalar, unit_vector, vadd, vscale, vsub,
)
from scripts.liealg import (
    Grading, LieAlgebra, complexify, derived_series, is_ideal, is_subalgebra, restrict, validate,
)
from scripts.cralg import CRAlgebra, contact_filtration, freeman_sequence, structure_oracle, validate_cr
from scripts.polysolve import Poly, as_poly, poly_vector, satisfies, solve_system

# Настройка логирования
logger = logging.getLogger(__name__)

DEFAULT_TUBE_K = 3
DEFAULT_FAMILY_T = "1"

# Сопряжение меток комплексного базиса
CONJ8 = {"z": "zb", "zb": "z", "M": "Mb", "Mb": "M", "N": "Nb", "Nb": "N"}
CONJ_SL2 = {"z": "zb", "zb": "z", "L": "Lb", "Lb": "L", "N": "Nb", "Nb": "N"}
CONJ_C0 = {"z": "zb", "zb": "z", "z2": "zb2", "zb2": "z2"}

GL2_LABELS = ["E11", "E12", "E21", "E22"]

BracketTable = Dict[Tuple[str, str], Dict[str, ScalarLike]]


# --- сборка таблиц ---

def _normalized(value: Mapping[str, ScalarLike]) -> Dict[str, Scalar]:
    out = {}
    for label, c in value.items():
        c = to_scalar(c)
        if not c.is_zero():
            out[label] = out.get(label, ZERO) + c
    return {k: v for k, v in out.items() if not v.is_zero()}


def _with_conjugates(brackets: BracketTable, swap: Mapping[str, str]) -> BracketTable:
    """Дополняет таблицу сопряженными скобками [σa, σb] = σ[a, b].

    Raises:
        InputError: Сопряженная скобка уже задана и не совпадает.
    """
    result: Dict[Tuple[str, str], Dict[str, Scalar]] = {k: _normalized(v) for k, v in brackets.items()}
    for (a, b), value in list(result.items()):
        key = (swap.get(a, a), swap.get(b, b))
        image = {swap.get(c, c): x.conj() for c, x in value.items()}
        if key in result:
            if result[key] != image:
                raise InputError(f"Скобка [{key[0]}, {key[1]}] не согласована с сопряжением")
            continue
        if key[::-1] in result:
            if result[key[::-1]] != {c: -x for c, x in image.items()}:
                raise InputError(f"Скобка [{key[1]}, {key[0]}] не согласована с сопряжением")
            continue
        result[key] = image
    return result


def _grading_element(degrees: Mapping[str, int], element: str = "E") -> BracketTable:
    """[E, x] = deg(x)·x для элемента градуировки."""
    return {(element, label): {label: d} for label, d in degrees.items() if d != 0 and label != element}


def _conjugation(labels: Sequence[str], swap: Mapping[str, str]) -> Dict[str, Dict[str, int]]:
    return {a: {swap.get(a, a): 1} for a in labels}


# --- алгебры каталога ---

MODEL8_LABELS = ["e-2", "z", "zb", "E", "M", "Mb", "N", "Nb"]
MODEL8_DEGREES = {"e-2": -2, "z": -1, "zb": -1, "E": 0, "M": 0, "Mb": 0, "N": 1, "Nb": 1}
MODEL8_BRACKETS: BracketTable = {
    ("z", "zb"): {"e-2": "-1/2*i"},
    ("M", "z"): {"z": "1/2*i"},
    ("M", "zb"): {"z": "-i", "zb": "-1/2*i"},
    ("M", "Mb"): {"M": "-i", "Mb": "-i"},
    ("N", "e-2"): {"z": "-3*i", "zb": "-3*i"},
    ("N", "z"): {"M": "-1/2*i", "E": "-3/4"},
    ("N", "zb"): {"M": "-3/2*i", "Mb": "-2*i", "E": "3/4"},
    ("M", "N"): {"N": "-1/2*i"},
    ("Mb", "N"): {"N": "3/2*i", "Nb": "i"},
}

SL2_S3_LABELS = ["e-2", "z", "zb", "L", "Lb", "N", "Nb"]
SL2_S3_DEGREES = {"e-2": -2, "z": -1, "zb": -1, "L": 0, "Lb": 0, "N": 1, "Nb": 1}
SL2_S3_BRACKETS: BracketTable = {
    ("z", "zb"): {"e-2": "-1/2*i"},
    ("L", "z"): {"z": -4},
    ("L", "zb"): {"z": 2, "zb": -2},
    ("L", "e-2"): {"e-2": -6},
    ("L", "Lb"): {"L": -2, "Lb": 2},
    ("N", "e-2"): {"z": "-3*i", "zb": "-3*i"},
    ("N", "z"): {"L": "-1/4"},
    ("N", "zb"): {"L": "-3/4", "Lb": 1},
    ("L", "N"): {"N": 4},
    ("Lb", "N"): {"N": 6, "Nb": 2},
}

C0_LABELS = ["e-2", "z", "zb", "z2", "zzb", "zb2", "E"]
C0_DEGREES = {"e-2": -2, "z": -1, "zb": -1, "z2": 0, "zzb": 0, "zb2": 0, "E": 0}
C0_BRACKETS: BracketTable = {
    ("z", "zb"): {"e-2": "-1/2*i"},
    ("z2", "zb"): {"z": "-i"},
    ("zzb", "z"): {"z": "1/2*i"},
    ("zb2", "z2"): {"zzb": "2*i"},
    ("zzb", "z2"): {"z2": "i"},
}

RIGID_LABELS = ["X", "Et", "Y", "v0", "v1", "v2", "v3"]
RIGID_DEGREES = {"X": -1, "Et": 0, "Y": 1, "v0": -2, "v1": -1, "v2": 0, "v3": 1}
RIGID_BRACKETS: BracketTable = {
    ("Et", "X"): {"X": 2},
    ("Et", "Y"): {"Y": -2},
    ("X", "Y"): {"Et": 1},
    ("Et", "v0"): {"v0": 3},
    ("Et", "v1"): {"v1": 1},
    ("Et", "v2"): {"v2": -1},
    ("Et", "v3"): {"v3": -3},
    ("X", "v1"): {"v0": 1},
    ("X", "v2"): {"v1": 2},
    ("X", "v3"): {"v2": 3},
    ("Y", "v0"): {"v1": 3},
    ("Y", "v1"): {"v2": 2},
    ("Y", "v2"): {"v3": 1},
}

S7_LABELS = ["e-2", "z", "zb", "E", "M", "Mb", "Xi"]
S7_DEGREES = {"e-2": -2, "z": -1, "zb": -1, "E": 0, "M": 0, "Mb": 0, "Xi": 1}


@lru_cache(maxsize=None)
def model8_algebra() -> LieAlgebra:
    brackets = _with_conjugates(MODEL8_BRACKETS, CONJ8)
    brackets.update(_grading_element(MODEL8_DEGREES))
    return LieAlgebra.from_brackets(MODEL8_LABELS, brackets, conjugation=_conjugation(MODEL8_LABELS, CONJ8),
                                    name="model8")


@lru_cache(maxsize=None)
def sl2_s3_algebra() -> LieAlgebra:
    brackets = _with_conjugates(SL2_S3_BRACKETS, CONJ_SL2)
    return LieAlgebra.from_brackets(SL2_S3_LABELS, brackets, conjugation=_conjugation(SL2_S3_LABELS, CONJ_SL2),
                                    name="sl2_s3")


@lru_cache(maxsize=None)
def cminus_c0_algebra() -> LieAlgebra:
    brackets = _with_conjugates(C0_BRACKETS, CONJ_C0)
    brackets.update(_grading_element(C0_DEGREES))
    return LieAlgebra.from_brackets(C0_LABELS, brackets, conjugation=_conjugation(C0_LABELS, CONJ_C0),
                                    name="cminus_c0")


@lru_cache(maxsize=None)
def rigid_algebra() -> LieAlgebra:
    return LieAlgebra.from_brackets(RIGID_LABELS, RIGID_BRACKETS, field="Q", name="rigid_sl2_s3")


@lru_cache(maxsize=None)
def s7_algebra() -> LieAlgebra:
    """ŝ = ⟨e₋₂, z, z̄, E, M, M̄, Ξ = N + N̄⟩ внутри model8."""
    g = model8_algebra()
    vectors = [g.e(label) for label in S7_LABELS[:-1]] + [g.vec({"N": 1, "Nb": 1})]
    return restrict(g, vectors, S7_LABELS, name="model8_s7")


def heis3_algebra() -> LieAlgebra:
    return LieAlgebra.from_brackets(["e-2", "e1", "e2"], {("e1", "e2"): {"e-2": 1}}, field="Q", name="heis3")


def heis3_complex() -> LieAlgebra:
    """heis(3) в базисе e₋₂, z = ½(e₁ + ie₂), z̄."""
    labels = ["e-2", "z", "zb"]
    return LieAlgebra.from_brackets(labels, {("z", "zb"): {"e-2": "-1/2*i"}},
                                    conjugation=_conjugation(labels, {"z": "zb", "zb": "z"}), name="heis3_cr")


def monomial_label(k: int, j: int) -> str:
    """Метка монома u₁^{k−j}u₂^{j}, например "u1^3u2"."""
    parts = []
    for var, e in (("u1", k - j), ("u2", j)):
        if e == 1:
            parts.append(var)
        elif e > 1:
            parts.append(f"{var}^{e}")
    return "".join(parts)


@lru_cache(maxsize=None)
def gl2_sk_algebra(k: int) -> LieAlgebra:
    """gl₂ ⋉ S^k с действием дифференцированиями E_ij = u_i ∂/∂u_j.

    Базис S^k – мономы u₁^{k−j}u₂^{j}, j = 0..k, без биномиальной нормировки.
    """
    if k < 1:
        raise InputError(f"Степень k = {k} < 1")
    monos = [monomial_label(k, j) for j in range(k + 1)]
    brackets: BracketTable = {
        ("E11", "E12"): {"E12": 1},
        ("E11", "E21"): {"E21": -1},
        ("E12", "E21"): {"E11": 1, "E22": -1},
        ("E12", "E22"): {"E12": 1},
        ("E21", "E22"): {"E21": -1},
    }
    for j in range(k + 1):
        a, b = k - j, j
        if a:
            brackets[("E11", monos[j])] = {monos[j]: a}
            brackets[("E21", monos[j])] = {monos[j + 1]: a}
        if b:
            brackets[("E22", monos[j])] = {monos[j]: b}
            brackets[("E12", monos[j])] = {monos[j - 1]: b}
    return LieAlgebra.from_brackets(GL2_LABELS + monos, brackets, field="Q", name=f"gl2_s{k}")


# --- записи каталога ---

@dataclass
class CatalogEntry:
    """Построенный объект каталога с результатами проверок."""
    name: str
    algebra: LieAlgebra
    anchor: str # место в тексте, откуда взята таблица
    params: Dict[str, Any] = field(default_factory=dict)
    grading: Optional[Grading] = None
    cr: Optional[CRAlgebra] = None
    elements: Dict[str, Vector] = field(default_factory=dict) # именованные элементы (Ẽ, образующие q, ...)
    validation: Optional[Report] = None
    cr_validation: Optional[Report] = None

    @property
    def ok(self) -> bool:
        checks = [self.validation, self.cr_validation]
        return all(r.ok for r in checks if r is not None) and (self.grading is None or self.grading.is_valid())

    def to_json_dict(self) -> Dict[str, Any]:
        data = {
            "name": self.name,
            "anchor": self.anchor,
            "params": {k: str(v) for k, v in self.params.items()},
            "algebra": self.algebra.to_json_dict(),
        }
        if self.grading is not None:
            data["degrees"] = dict(zip(self.algebra.labels, self.grading.degrees))
        if self.cr is not None:
            data["q"] = [self.algebra.format(v) for v in self.cr.q.basis]
            data["stab"] = [self.algebra.format(v) for v in self.cr.stab.basis]
        if self.elements:
            data["elements"] = {k: self.algebra.format(v) for k, v in self.elements.items()}
        return data


def _entry(name: str, algebra: LieAlgebra, anchor: str, degrees: Optional[Mapping[str, int]] = None,
           q: Optional[Sequence[Vector]] = None, **kwargs) -> CatalogEntry:
    grading = Grading.from_labels(algebra, degrees) if degrees is not None else None
    cr = CRAlgebra(algebra, algebra.span(q), name=name) if q is not None else None
    entry = CatalogEntry(name, algebra, anchor, grading=grading, cr=cr, **kwargs)
    return _validated(entry)


def _validated(entry: CatalogEntry) -> CatalogEntry:
    entry.validation = validate(entry.algebra)
    if entry.cr is not None:
        entry.cr_validation = validate_cr(entry.cr)
    if not entry.ok:
        logger.warning(f"Запись каталога {entry.name} не прошла проверку")
    else:
        logger.debug(f"Запись каталога {entry.name}: dim = {entry.algebra.dim}, проверки пройдены")
    return entry


def _build_model8() -> CatalogEntry:
    g = model8_algebra()
    elements = {
        "Et": g.vec({"M": "-1/2*i", "Mb": "1/2*i", "E": "-3/2"}),
        "X": g.vec({"z": "-i", "zb": "i"}),
        "Y": g.vec({"N": "-i", "Nb": "i"}),
    }
    q = [g.e(label) for label in ("z", "E", "M", "N")]
    return _entry("model8", g, "[z, z̄] = −(i/2)e₋₂, [N, z̄] = −(3/2)iM − 2iM̄ + (3/4)E", MODEL8_DEGREES, q, elements=elements)


def _build_sl2_s3() -> CatalogEntry:
    s = sl2_s3_algebra()
    q = [s.e(label) for label in ("z", "L", "N")]
    elements = {"Et": s.vec({"L": "-1/4", "Lb": "-1/4"})}
    return _entry("sl2_s3", s, "[L, z] = −4z, L = 2iM + 3E", SL2_S3_DEGREES, q, elements=elements)


def _build_gl2_sk(k: int = 3) -> CatalogEntry:
    g = gl2_sk_algebra(int(k))
    return _entry(f"gl2_s{k}", g, "E_ij = u_i ∂/∂u_j на S^k", params={"k": k})


def _build_ex26() -> CatalogEntry:
    k, a = EX26_K, EX26_POINT
    cr = tube_cr_algebra(k, a)
    gens = tube_q_generators(k, a)
    entry = CatalogEntry("ex26", cr.ghat, "a = u₂⁴ + u₁u₂³ + u₁²u₂², [B, C] = A − D", params={"k": k}, cr=cr,
                         elements=gens)
    return _validated(entry)


def _build_tube3_p2() -> CatalogEntry:
    cr = tube_cr_algebra(3, TUBE3_POINT)
    entry = CatalogEntry("tube3_p2", cr.ghat, "a = u₁²u₂, ŝtab = ⟨E₁₁ − 2E₂₂⟩", params={"k": 3}, cr=cr,
                         elements=tube_q_generators(3, TUBE3_POINT))
    return _validated(entry)


def _build_heis3() -> CatalogEntry:
    return _entry("heis3", heis3_algebra(), "[e₁, e₂] = e₋₂")


def _build_heis3_cr() -> CatalogEntry:
    h = heis3_complex()
    return _entry("heis3_cr", h, "гиперквадрика в ℂ², [z, z̄] = −(i/2)e₋₂", {"e-2": -2, "z": -1, "zb": -1}, [h.e("z")])


def _build_heis3_neg() -> CatalogEntry:
    return _entry("heis3_neg", heis3_algebra(), "heis(3) = g₋₂ ⊕ g₋₁", {"e-2": -2, "e1": -1, "e2": -1})


def _build_heis3_pos() -> CatalogEntry:
    return _entry("heis3_pos", heis3_algebra(), "heis(3) = g₁ ⊕ g₂", {"e-2": 2, "e1": 1, "e2": 1})


def _build_cminus_c0() -> CatalogEntry:
    return _entry("cminus_c0", cminus_c0_algebra(), "[z̄², z²] = 2izz̄", C0_DEGREES)


def _build_model8_s7() -> CatalogEntry:
    s = s7_algebra()
    return _entry("model8_s7", s, "Ξ = N + N̄", S7_DEGREES)


def _build_rigid() -> CatalogEntry:
    r = rigid_algebra()
    return _entry("rigid_sl2_s3", r, "[X, v₃] = 3v₂, [Y, v₀] = 3v₁", RIGID_DEGREES, elements={"Et": r.e("Et")})


CATALOG: Dict[str, Callable[..., CatalogEntry]] = {
    "model8": _build_model8,
    "sl2_s3": _build_sl2_s3,
    "gl2_sk": _build_gl2_sk,
    "gl2_s3": lambda: _build_gl2_sk(3),
    "gl2_s4": lambda: _build_gl2_sk(4),
    "ex26": _build_ex26,
    "tube3_p2": _build_tube3_p2,
    "heis3": _build_heis3,
    "heis3_cr": _build_heis3_cr,
    "heis3_neg": _build_heis3_neg,
    "heis3_pos": _build_heis3_pos,
    "cminus_c0": _build_cminus_c0,
    "model8_s7": _build_model8_s7,
    "rigid_sl2_s3": _build_rigid,
}


def catalog_names() -> List[str]:
    return sorted(CATALOG)


def build(name: str, **params) -> CatalogEntry:
    """Строит и проверяет запись каталога.

    Args:
        name: Имя записи (см. `catalog_names`).
        **params: Параметры построителя, например k для gl2_sk.

    Raises:
        InputError: Неизвестное имя или параметры.
    """
    builder = CATALOG.get(name)
    if builder is None:
        raise InputError(f"Неизвестная запись каталога: {name}")
    try:
        return builder(**params)
    except TypeError as exc:
        raise InputError(f"Неверные параметры для {name}: {params}") from exc


# --- проверки model8 и sl2_s3 ---

def model8_basis_change(entry: Optional[CatalogEntry] = None) -> Report:
    """Замена базиса, показывающая model8 ≅ gl₂(ℝ) ⋉ S³ℝ².

    Тройка Ẽ, X, Y порождает sl₂, радикал ⟨e₋₂, z+z̄, M+M̄, E − i(M−M̄), N+N̄⟩
    – разрешимый идеал, дополнительный к sl₂.
    """
    entry = entry or build("model8")
    g = entry.algebra
    Et, X, Y = entry.elements["Et"], entry.elements["X"], entry.elements["Y"]
    report = Report(title="model8 as gl2 ⋉ S3")
    report.add("sl2_triple",
               g.bracket(Et, X) == vscale(2, X) and g.bracket(Et, Y) == vscale(-2, Y)
               and g.bracket(X, Y) == vscale(2, Et))
    report.add("triple_real", all(g.conj(v) == v for v in (Et, X, Y)))
    radical = [
        g.e("e-2"),
        g.vec({"z": 1, "zb": 1}),
        g.vec({"M": 1, "Mb": 1}),
        g.vec({"E": 1, "M": "-i", "Mb": "i"}),
        g.vec({"N": 1, "Nb": 1}),
    ]
    rad = g.span(radical)
    report.add("radical_ideal", is_ideal(g, rad), dim=rad.dim)
    rad_algebra = restrict(g, radical, ["r0", "r1", "r2", "r3", "r4"], name="rad")
    series = derived_series(rad_algebra)
    report.add("radical_solvable", series[-1].dim == 0, derived_dims=[s.dim for s in series])
    report.add("levi_complement", rad.sum(g.span([Et, X, Y])).dim == g.dim)
    return report


def sl2_s3_embedding() -> Report:
    """sl2_s3 совпадает с подалгеброй ⟨e₋₂, z, z̄, L, L̄, N, N̄⟩ ⊂ model8, L = 2iM + 3E."""
    g = model8_algebra()
    vectors = [g.e("e-2"), g.e("z"), g.e("zb"), g.vec({"M": "2*i", "E": 3}), g.vec({"Mb": "-2*i", "E": 3}),
               g.e("N"), g.e("Nb")]
    report = Report(title="sl2_s3 in model8")
    try:
        sub = restrict(g, vectors, SL2_S3_LABELS, name="sl2_s3")
    except InputError as exc:
        report.add("closed", False, error=str(exc))
        return report
    report.add("closed", True)
    report.add("same_structure", sub.same_structure(sl2_s3_algebra()))
    return report


def model8_structure(entry: Optional[CatalogEntry] = None) -> Report:
    """Фримен (4,3,2,1) с q² = ⟨E⟩ и совпадение контактной фильтрации с градуировочной."""
    entry = entry or build("model8")
    g, cr = entry.algebra, entry.cr
    report = Report(title="model8 structure")
    freeman = freeman_sequence(cr)
    report.add("freeman_dims", freeman.dims == [4, 3, 2, 1], dims=freeman.dims)
    expected = [("E", "M", "N"), ("E", "N"), ("E",)]
    report.add("freeman_terms", all(freeman.term(p) == g.span(g.e(x) for x in labels)
                                    for p, labels in enumerate(expected)))
    report.add("order", freeman.order_k == 3, k=freeman.order_k)
    contact = contact_filtration(cr)
    graded = entry.grading.filtration()
    same = all(contact.term(p) == graded.term(p) for p in range(-3, 3))
    report.add("contact_is_grading", same, contact_dims={str(p): d for p, d in contact.dims().items()})
    report.data["freeman_dims"] = freeman.dims
    return report


# --- трубчатые CR-алгебры ---

EX26_K = 4
EX26_POINT = {"u2^4": 1, "u1u2^3": 1, "u1^2u2^2": 1}
TUBE3_POINT = {"u1^2u2": 1}


def _tube_point(g: LieAlgebra, k: int, a: Union[Mapping[str, ScalarLike], Sequence[ScalarLike]]) -> Vector:
    monos = {monomial_label(k, j) for j in range(k + 1)}
    if isinstance(a, Mapping):
        unknown = [label for label in a if label not in monos]
        if unknown:
            raise InputError(f"Точка a содержит не мономы S^{k}: {unknown}")
        v = g.vec(a)
    else:
        if len(a) != k + 1:
            raise InputError(f"Точка S^{k} задается {k + 1} координатами, получено {len(a)}")
        v = g.vec({monomial_label(k, j): c for j, c in enumerate(a)})
    if is_zero_vector(v):
        raise InputError("Базовая точка a = 0")
    return v


def tube_q_generators(k: int, a) -> Dict[str, Vector]:
    """Образующие A, B, C, D = ξ − i(ξ·a) для ξ = E₁₁, E₁₂, E₂₁, E₂₂."""
    ghat = complexify(gl2_sk_algebra(k))
    point = _tube_point(ghat, k, a)
    gens = {}
    for name, label in zip("ABCD", GL2_LABELS):
        xi = ghat.e(label)
        gens[name] = vsub(xi, vscale(I, ghat.bracket(xi, point)))
    return gens


def tube_cr_algebra(k: int, a) -> CRAlgebra:
    """CR-алгебра трубки над орбитой GL₂ в S^kℝ² в базовой точке (a, 0).

    Args:
        k: Степень, k ≥ 1.
        a: Точка S^kℝ²: словарь {моном: коэффициент} или k + 1 координат
            в базисе u₁^{k−j}u₂^{j}.

    Raises:
        InputError: a = 0 или неверный формат.
        DegenerateBasePoint: q + σq имеет коразмерность ≠ 1.
    """
    g = gl2_sk_algebra(k)
    ghat = complexify(g)
    gens = tube_q_generators(k, a)
    cr = CRAlgebra(ghat, ghat.span(gens.values()), g=g, name=f"tube(k={k})")
    codim = cr.codimension()
    if codim != 1:
        raise DegenerateBasePoint(f"Для k = {k} в точке {a} коразмерность q + σq равна {codim}")
    logger.debug(f"Трубка k = {k}: dim q = {cr.q.dim}, dim ŝtab = {cr.stab.dim}")
    return cr


# Таблица [X, Ȳ] для k = 4 в базисе A, B, C, D, Ā, B̄, C̄, D̄
EX26_CONJ_TABLE: Dict[Tuple[str, str], Dict[str, str]] = {
    ("A", "A"): {"Db": "1/6", "Cb": "-2/3", "Ab": "11/6", "D": "-1/6", "A": "-11/6", "C": "2/3"},
    ("A", "B"): {"Db": "13/12", "Cb": "-13/3", "Bb": "3", "Ab": "-31/12", "D": "-13/12", "C": "13/3",
                 "A": "31/12", "B": "-2"},
    ("A", "C"): {"Db": "-1/3", "Cb": "4/3", "Ab": "1/3", "D": "1/3", "A": "-1/3", "C": "-7/3"},
    ("A", "D"): {"Db": "-1/6", "Cb": "2/3", "Ab": "13/6", "D": "1/6", "A": "-13/6", "C": "-2/3"},
    ("B", "C"): {"Db": "-1/6", "Cb": "2/3", "Ab": "19/6", "D": "-5/6", "A": "-13/6", "C": "-2/3"},
    ("B", "D"): {"Db": "-13/12", "Cb": "13/3", "Bb": "2", "Ab": "31/12", "D": "13/12", "C": "-13/3",
                 "A": "-31/12", "B": "-1"},
    ("C", "C"): {"Db": "2/3", "Cb": "-2/3", "Ab": "-2/3", "D": "-2/3", "A": "2/3", "C": "2/3"},
    ("C", "D"): {"Db": "1/3", "Cb": "5/3", "Ab": "-1/3", "D": "-1/3", "A": "1/3", "C": "-8/3"},
    ("D", "D"): {"Db": "25/6", "Cb": "-2/3", "Ab": "-13/6", "D": "-25/6", "A": "13/6", "C": "2/3"},
}

EX26_Q_TABLE: Dict[Tuple[str, str], Dict[str, int]] = {
    ("A", "B"): {"B": 1},
    ("A", "C"): {"C": -1},
    ("A", "D"): {},
    ("B", "C"): {"A": 1, "D": -1},
    ("B", "D"): {"B": 1},
    ("C", "D"): {"C": -1},
}


def ex26_table_check(entry: Optional[CatalogEntry] = None) -> Report:
    """Сверка трубки k = 4 с таблицами скобок, Фрименом и контактной фильтрацией."""
    entry = entry or build("ex26")
    cr, g = entry.cr, entry.algebra
    gens = entry.elements
    names = list("ABCD")
    frame_vectors = [gens[x] for x in names] + [g.conj(gens[x]) for x in names]
    frame = Frame(frame_vectors, g.dim)
    frame_labels = names + [x + "b" for x in names]
    report = Report(title="ex26")

    def combo(coeffs: Mapping[str, ScalarLike]) -> Vector:
        v = g.zero()
        for label, c in coeffs.items():
            v = vadd(v, vscale(c, frame_vectors[frame_labels.index(label)]))
        return v

    q_ok = all(g.bracket(gens[a], gens[b]) == combo(value) for (a, b), value in EX26_Q_TABLE.items())
    report.add("q_table", q_ok)
    bad = None
    for (a, b), value in EX26_CONJ_TABLE.items():
        if g.bracket(gens[a], g.conj(gens[b])) != combo(value):
            bad = f"[{a}, {b}b]"
            break
    report.add("conjugate_table", bad is None, first_mismatch=bad)
    bb = g.bracket(gens["B"], g.conj(gens["B"]))
    report.add("BBb_outside", frame.try_coordinates(bb) is None)
    report.add("stab_zero", cr.stab.dim == 0)
    report.add("quotient_u1^4", not cr.q_plus_sigma_q.contains(g.e("u1^4")) and cr.codimension() == 1)

    freeman = freeman_sequence(cr)
    report.add("freeman_dims", freeman.dims == [4, 3, 2, 1, 0], dims=freeman.dims)
    A, C, D = gens["A"], gens["C"], gens["D"]
    expected_terms = [[A, C, D], [vsub(A, D), C], [vadd(vsub(A, D), C)]]
    report.add("freeman_terms", all(freeman.term(p) == g.span(vs) for p, vs in enumerate(expected_terms)))
    m = g.vec({"E11": 1, "E21": 1, "E22": -1})
    sums = {
        1: g.span([m, g.e("E21"), g.e("u2^4"), g.e("u1u2^3")]),
        2: g.span([m, g.e("u2^4")]),
    }
    report.add("q_sum_spans", all(freeman.term(p).sum(g.conj_subspace(freeman.term(p))) == s
                                  for p, s in sums.items()))
    contact = contact_filtration(cr)
    expected_contact = {
        0: g.span([g.e(x) for x in ("E11", "E21", "E22", "u2^4", "u1u2^3", "u1^2u2^2")]),
        1: g.span([g.e(x) for x in ("E21", "u2^4", "u1u2^3")]),
        2: g.span([g.e("u2^4")]),
        3: Subspace.zero(g.dim),
    }
    report.add("contact_terms", all(contact.term(p) == s for p, s in expected_contact.items()),
               dims={str(p): d for p, d in contact.dims().items()})
    oracle = structure_oracle(cr, contact, freeman)
    strict = oracle.data.get("strict_at", [])
    report.add("proper_inclusion_p1_p2", 1 in strict and 2 in strict, strict_at=strict)
    report.data["freeman_dims"] = freeman.dims
    return report


# --- экспонента присоединенного действия ---

def exp_ad_matrix(L: LieAlgebra, X: Sequence[Scalar]) -> Matrix:
    """Точная матрица e^{ad X} = Σ ad(X)^k / k!.

    Raises:
        InputError: ad(X) не нильпотентен.
    """
    A = L.ad(X)
    n = L.dim
    total = Matrix.identity(n, A.field)
    term = total
    k = 0
    while True:
        k += 1
        term = (A @ term).scale(Fraction(1, k))
        if term.is_zero():
            break
        if k >= n:
            raise InputError("ad(X) не нильпотентен")
        total = total + term
    return total


def exp_ad(ambient: LieAlgebra, X: Sequence[Scalar], target: Subspace) -> Subspace:
    """e^{ad X}·target для нильпотентного ad(X)."""
    m = exp_ad_matrix(ambient, X)
    return ambient.span(m.apply(v) for v in target.basis)


def is_automorphism(L: LieAlgebra, m: Matrix) -> bool:
    """m[a, b] = [ma, mb] на всех парах базисных векторов."""
    n = L.dim
    cols = [m.column(j) for j in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            if m.apply(L.table[i][j]) != L.bracket(cols[i], cols[j]):
                return False
    return True


# --- семейства ---

FAMILIES = ("ex4.2", "ex4.3", "ex4.4")


@dataclass
class FamilyResult:
    name: str
    t: Scalar
    cr: CRAlgebra
    generators: Dict[str, Vector]
    witness: Optional[Vector] # X с e^{ad X}·p = p_t
    report: Report


def _family_data(name: str, t: Scalar):
    """(объемлющая алгебра, образующие p_t, X, база p, члены Фримена, ожидаемые размерности)."""
    c = Scalar(0, Fraction(2, 3))
    if name == "ex4.2":
        g = model8_algebra()
        tb = t.conj()
        gens = {
            "η": g.vec({"z": 1, "Mb": t, "Nb": -(t * t)}),
            "ε": g.vec({"M": 1, "Nb": t}),
            "ξ": g.e("N"),
            "E_o": g.vec({"E": 1, "N": -(c * tb), "Nb": c * t}),
        }
        X = g.vec({"N": c * tb, "Nb": -(c * t)})
        base = [g.e(x) for x in ("z", "E", "M", "N")]
        terms = [("ε", "ξ", "E_o"), ("ξ", "E_o"), ("E_o",)]
        return g, gens, X, base, terms, [4, 3, 2, 1]
    if name == "ex4.3":
        s = sl2_s3_algebra()
        tb = t.conj()
        gens = {
            "η": s.vec({"z": 1, "Lb": t, "Nb": 8 * t * t}),
            "ε": s.vec({"L": 1, "Nb": 8 * t}),
            "ξ": s.e("N"),
        }
        X = s.vec({"N": Fraction(-4, 3) * tb, "Nb": Fraction(-4, 3) * t})
        base = [s.e(x) for x in ("z", "L", "N")]
        return s, gens, X, base, [("ε", "ξ"), ("ξ",), ()], [3, 2, 1, 0]
    if name == "ex4.4":
        s = s7_algebra()
        gens = {
            "η": s.vec({"z": 1, "Mb": t, "Xi": -(t * t)}),
            "ε": s.vec({"M": 1, "Xi": t}),
            "ξ": s.vec({"E": 1, "Xi": c * t}),
        }
        X = s.vec({"Xi": -(c * t)})
        base = [s.e(x) for x in ("z", "M", "E")]
        return s, gens, X, base, [("ε", "ξ"), ("ξ",), ()], [3, 2, 1, 0]
    raise InputError(f"Неизвестное семейство: {name}")


def family(name: str, t: ScalarLike) -> FamilyResult:
    """Строит (s_t, p_t) и проверяет замкнутость, Фримена и сопряженность e^{ad X}.

    Для семейства ex4.4 при Re t = 0 пара не гиперповерхностного типа:
    ŝtab = ⟨ξ⟩ и коразмерность 2; это фиксируется пунктом degenerate_regime.
    """
    t = to_scalar(t)
    g, gens, X, base, terms, dims = _family_data(name, t)
    p = g.span(gens.values())
    cr = CRAlgebra(g, p, name=f"{name}(t={t})")
    report = Report(title=f"family {name} t={t}")
    report.add("closed", is_subalgebra(g, p), dim=p.dim)
    conjugated = exp_ad(g, X, g.span(base))
    report.add("conjugacy", conjugated == p)
    report.add("exp_ad_automorphism", is_automorphism(g, exp_ad_matrix(g, X)))
    if name == "ex4.4" and t.re == 0:
        report.add("degenerate_regime", cr.stab == g.span([gens["ξ"]]) and cr.codimension() == 2,
                   dim_stab=cr.stab.dim, codimension=cr.codimension())
    else:
        freeman = freeman_sequence(cr)
        report.add("freeman_dims", freeman.dims == dims, dims=freeman.dims)
        report.add("freeman_terms", all(freeman.term(k) == g.span([gens[x] for x in labels])
                                        for k, labels in enumerate(terms)))
        report.add("hypersurface_type", cr.codimension() == 1, codimension=cr.codimension())
        report.data["freeman_dims"] = freeman.dims
    if not report.ok:
        logger.warning(f"Семейство {name} при t = {t}: провалены {[it.name for it in report.failures()]}")
    return FamilyResult(name, t, cr, gens, X, report)


# --- морфизмы CR-алгебр ---

def immersion_map(t: ScalarLike, negate_e_minus_two: bool = False) -> Matrix:
    """Комплексное продолжение вложения φ: ŝ_t → g, матрица 8 × 7.

    Образы заданы на вещественном базисе e₋₂, z ± z̄, E, M ± M̄, Ξ и
    пересчитываются в базис e₋₂, z, z̄, E, M, M̄, Ξ.

    Args:
        t: Параметр семейства.
        negate_e_minus_two: Сменить знак коэффициента при t в образе e₋₂
            (заведомо неверный вариант для отрицательной проверки).
    """
    t = to_scalar(t)
    g = model8_algebra()
    f = Fraction
    it = I * t
    s = 4 if negate_e_minus_two else -4
    e2 = g.vec({"e-2": 1, "z": s * t, "zb": s * t, "M": f(16, 3) * t ** 2, "Mb": f(16, 3) * t ** 2,
                "N": f(-64, 27) * t ** 3, "Nb": f(-64, 27) * t ** 3})
    zp = g.vec({"z": 1, "zb": 1, "M": f(-8, 3) * t, "Mb": f(-8, 3) * t,
                "N": f(16, 9) * t ** 2, "Nb": f(16, 9) * t ** 2})
    zm = g.vec({"z": 1, "zb": -1, "E": 2 * it, "M": f(-2, 3) * t, "Mb": f(2, 3) * t,
                "N": f(-8, 9) * t ** 2, "Nb": f(8, 9) * t ** 2})
    E = g.vec({"E": 1, "N": f(2, 3) * it, "Nb": f(-2, 3) * it})
    mp = g.vec({"M": 1, "Mb": 1, "N": f(-4, 3) * t, "Nb": f(-4, 3) * t})
    mm = g.vec({"M": 1, "Mb": -1, "N": f(2, 3) * t, "Nb": f(-2, 3) * t})
    xi = g.vec({"N": 1, "Nb": 1})
    half = f(1, 2)
    columns = [
        e2,
        vscale(half, vadd(zp, zm)),
        vscale(half, vsub(zp, zm)),
        E,
        vscale(half, vadd(mp, mm)),
        vscale(half, vsub(mp, mm)),
        xi,
    ]
    return Matrix.from_columns(columns, g.dim, "QI")


def check_cr_morphism(phi: Matrix, source: CRAlgebra, target: CRAlgebra) -> MorphismReport:
    """Проверяет, что φ – инъективный морфизм CR-алгебр.

    Пункты: сохранение скобки на базисных парах, перестановочность с σ,
    инъективность и φ(p) ⊆ q; в image_cap_q_dim – dim(φ(ŝ) ∩ q).
    """
    S, T = source.ghat, target.ghat
    if phi.shape != (T.dim, S.dim):
        raise InputError(f"Матрица {phi.shape} не отображает ĝ размерности {S.dim} в {T.dim}")
    report = MorphismReport(title=f"morphism {source.name} -> {target.name}")
    cols = [phi.column(j) for j in range(S.dim)]
    for i in range(S.dim):
        for j in range(i + 1, S.dim):
            if phi.apply(S.table[i][j]) != T.bracket(cols[i], cols[j]):
                report.failing_pair = [S.labels[i], S.labels[j]]
                break
        if report.failing_pair:
            break
    report.add("morphism", report.failing_pair is None, pair=report.failing_pair)
    report.add("real", all(phi.apply(S.conj(unit_vector(S.dim, j))) == T.conj(cols[j]) for j in range(S.dim)))
    r = rank(phi)
    report.add("injective", r == S.dim, rank=r)
    image_p = T.span(phi.apply(v) for v in source.q.basis)
    report.add("maps_q_into_q", target.q.contains_subspace(image_p), dim_image_p=image_p.dim)
    report.image_cap_q_dim = T.span(cols).intersection(target.q).dim
    report.data["image_cap_q_dim"] = report.image_cap_q_dim
    return report


# --- системы замыкания ---

@dataclass
class ClosureSystem:
    """Анзац для образующих q и уравнения его замкнутости относительно скобки.

    Каждый вектор анзаца имеет коэффициент 1 при своем ведущем базисном
    векторе и 0 при ведущих векторах остальных; уравнения – координаты
    [x, y] − Σ [x, y]_{lead(v)}·v вне оболочки анзаца.
    """
    name: str
    ambient: LieAlgebra
    unknowns: List[str]
    ansatz: Dict[str, Tuple]
    leads: Dict[str, str]
    stated: List[Dict[str, Poly]] # параметризации заявленного семейства решений
    conditions: List[Poly] # определяющие уравнения заявленного семейства
    required: List[Poly] = field(default_factory=list) # уравнения, которые обязаны появиться в системе
    split: bool = False
    anchor: str = ""

    def equations(self) -> List[Poly]:
        L = self.ambient
        names = list(self.ansatz)
        lead_idx = {x: L.index(self.leads[x]) for x in names}
        result: List[Poly] = []
        seen = set()
        for a_pos, a in enumerate(names):
            for b in names[a_pos + 1:]:
                w = L.bracket(self.ansatz[a], self.ansatz[b])
                residual = [as_poly(x) for x in w]
                for x in names:
                    coeff = as_poly(w[lead_idx[x]])
                    if coeff.is_zero():
                        continue
                    residual = [r - coeff * as_poly(v) for r, v in zip(residual, self.ansatz[x])]
                for r in residual:
                    if not r.is_zero() and str(r) not in seen:
                        seen.add(str(r))
                        result.append(r)
        return result

    def describe_ansatz(self) -> Dict[str, Dict[str, str]]:
        return {x: {self.ambient.labels[k]: str(c) for k, c in enumerate(v) if not as_poly(c).is_zero()}
                for x, v in self.ansatz.items()}


def _ansatz(L: LieAlgebra, coeffs: Mapping[str, Union[Poly, ScalarLike]]) -> Tuple:
    values = {}
    for label, c in coeffs.items():
        values[L.index(label)] = c if isinstance(c, Poly) else to_scalar(c)
    return poly_vector(values, L.dim)


def _proportional(p: Poly, q: Poly) -> bool:
    if p.is_zero() or q.is_zero():
        return p.is_zero() and q.is_zero()
    mono, c = p.sorted_terms()[0]
    d = q.terms.get(mono)
    if d is None:
        return False
    return (p * d - q * c).is_zero()


def _closure_rank0() -> ClosureSystem:
    L = cminus_c0_algebra()
    al, be, de, ta = (Poly.var(x) for x in ("α", "β", "δ", "τ"))
    half_i = Scalar(0, Fraction(1, 2))
    return ClosureSystem(
        name="rank0",
        ambient=L,
        unknowns=["δ", "α", "β", "τ"],
        ansatz={
            "η": _ansatz(L, {"z": 1, "zb2": al, "E": be}),
            "ε": _ansatz(L, {"z2": 1, "E": de}),
            "ξ": _ansatz(L, {"zzb": 1, "E": ta}),
        },
        leads={"η": "z", "ε": "z2", "ξ": "zzb"},
        stated=[{"δ": Poly(), "α": Poly(), "β": Poly()}, {"δ": Poly(), "α": Poly(), "τ": Poly.const(half_i)}],
        conditions=[de, al, (ta - half_i) * be],
        required=[al * de, de],
        split=True,
        anchor="δ = α = (τ − i/2)β = 0",
    )


def _closure_rank1() -> ClosureSystem:
    L = s7_algebra()
    mu, nu, ta, rho = (Poly.var(x) for x in ("μ", "ν", "τ", "ρ"))
    c = Scalar(0, Fraction(2, 3))
    return ClosureSystem(
        name="rank1",
        ambient=L,
        unknowns=["μ", "ν", "τ", "ρ"],
        ansatz={
            "η": _ansatz(L, {"z": 1, "Mb": mu, "Xi": nu}),
            "ε": _ansatz(L, {"M": 1, "Xi": ta}),
            "ξ": _ansatz(L, {"E": 1, "Xi": rho}),
        },
        leads={"η": "z", "ε": "M", "ξ": "E"},
        stated=[{"τ": mu, "ν": -(mu * mu), "ρ": mu * c}],
        conditions=[ta - mu, nu + mu * mu, rho - mu * c],
        anchor="τ = μ, ν = −μ², ρ = (2/3)iμ",
    )


def _closure_rank2() -> ClosureSystem:
    L = model8_algebra()
    # κ обозначает λ̄₂
    mu, nu, ta, ka = (Poly.var(x) for x in ("μ", "ν", "τ", "κ"))
    c = Scalar(0, Fraction(-3, 2))
    value = ka * c
    return ClosureSystem(
        name="rank2",
        ambient=L,
        unknowns=["μ", "ν", "τ", "κ"],
        ansatz={
            "η": _ansatz(L, {"z": 1, "Mb": mu, "Nb": nu}),
            "ε": _ansatz(L, {"M": 1, "Nb": ta}),
            "ξ": _ansatz(L, {"N": 1}),
            "E_o": _ansatz(L, {"E": 1, "Nb": ka}),
        },
        leads={"η": "z", "ε": "M", "ξ": "N", "E_o": "E"},
        stated=[{"μ": value, "τ": value, "ν": -(value * value)}],
        conditions=[mu - value, ta - value, nu + ta * ta],
        anchor="μ = τ = −(3/2)iκ, ν = −τ²",
    )


def _closure_ex43() -> ClosureSystem:
    L = sl2_s3_algebra()
    mu, nu, ta = (Poly.var(x) for x in ("μ", "ν", "τ"))
    return ClosureSystem(
        name="ex4.3-closure",
        ambient=L,
        unknowns=["μ", "ν", "τ"],
        ansatz={
            "η": _ansatz(L, {"z": 1, "Lb": mu, "Nb": nu}),
            "ε": _ansatz(L, {"L": 1, "Nb": ta}),
            "ξ": _ansatz(L, {"N": 1}),
        },
        leads={"η": "z", "ε": "L", "ξ": "N"},
        stated=[{"τ": mu * 8, "ν": mu * mu * 8}],
        conditions=[ta - mu * 8, nu - mu * mu * 8],
        required=[ta - mu * 8, mu * ta * 2 - nu * 10 + ta * ta],
        anchor="τ = 8μ, 2μτ − 10ν + τ² = 0",
    )


CLOSURE_SYSTEMS: Dict[str, Callable[[], ClosureSystem]] = {
    "rank0": _closure_rank0,
    "rank1": _closure_rank1,
    "rank2-family": _closure_rank1,
    "rank2": _closure_rank2,
    "ex4.3-closure": _closure_ex43,
}


def _format_solution(sol: Mapping[str, Poly]) -> Dict[str, str]:
    return {k: str(v) for k, v in sol.items()}


def closure_system(name: str) -> Tuple[ClosureSystem, ClosureReport]:
    """Восстанавливает систему уравнений замыкания и сверяет ее решения с заявленными.

    Пункты отчета: required_equations (заданные уравнения входят в систему с
    точностью до множителя), stated_satisfies (каждая заявленная параметризация
    обращает систему в нуль), branches_in_stated (каждая ветвь исключения лежит
    в заявленном семействе и не имеет нелинейного остатка).

    Raises:
        InputError: Неизвестное имя системы.
    """
    builder = CLOSURE_SYSTEMS.get(name)
    if builder is None:
        raise InputError(f"Неизвестная система замыкания: {name}")
    system = builder()
    equations = system.equations()
    report = ClosureReport(title=f"closure {name}", unknowns=list(system.unknowns),
                           equations=[str(e) for e in equations],
                           stated_solutions=[_format_solution(s) for s in system.stated])
    if system.required:
        missing = [str(r) for r in system.required if not any(_proportional(e, r) for e in equations)]
        report.add("required_equations", not missing, missing=missing)
    report.add("stated_satisfies", all(satisfies(equations, s) for s in system.stated))
    branches = solve_system(equations, system.unknowns, split=system.split)
    report.branches = [b.to_dict() for b in branches]
    outside = []
    for b in branches:
        sol = b.solution(system.unknowns)
        if b.residue or not all(c.subs(sol).is_zero() for c in system.conditions):
            outside.append(b.to_dict())
    report.add("branches_in_stated", bool(branches) and not outside, outside=outside)
    report.data["ansatz"] = system.describe_ansatz()
    report.data["anchor"] = system.anchor
    logger.debug(f"Система {name}: {len(equations)} уравнений, {len(branches)} ветвей")
    return system, report
