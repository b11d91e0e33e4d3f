"""Продолжение по Танаке символа Гейзенберга и универсальная CR-алгебра.

Компонента c_p (p ≥ 0) строится как пространство отображений u: g₋ → g,
повышающих степень на p и удовлетворяющих правилу Лейбница
u([a, b]) = [u(a), b] + [a, u(b)]. Скобка неотрицательных элементов
вычисляется рекурсивно: [u, v](a) = [u, v(a)] − [v, u(a)].
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from scripts.errors import CalibrationError, CrlabError, InputError
from scripts.data_structures import ModelReport, Report
from scripts.field import (
    I, TAG_Q, TAG_QI, ZERO, Frame, Matrix, Scalar, Subspace, Vector,
    is_zero_vector, kernel_vectors, lin_comb, nullspace, solve, to_scalar, unit_vector,
    vadd, vscale, vsub, zero_vector,
)
from scripts.liealg import (
    Grading, LieAlgebra, bracket_kernel, change_basis, restrict, subalgebra_closure, validate,
)

# Настройка логирования
logger = logging.getLogger(__name__)

# Глубина усечения по умолчанию
DEFAULT_DEPTH = 2

# Выделенные элементы и их сопряжения
CONJUGATE_NAMES = {
    "e-2": "e-2", "z": "zb", "zb": "z", "E": "E", "J": "J",
    "M": "Mb", "Mb": "M", "N": "Nb", "Nb": "N", "V": "V", "W": "W",
}

HALF = Fraction(1, 2)


def heisenberg_symbol() -> Grading:
    """heis(3) в вещественном базисе e-2, e1, e2 с [e1, e2] = e-2."""
    L = LieAlgebra.from_brackets(["e-2", "e1", "e2"], {("e1", "e2"): {"e-2": 1}}, field=TAG_Q, name="heis3")
    return Grading(L, [-2, -1, -1])


class ProlongedAlgebra:
    """Усеченное до степени `depth` продолжение по Танаке.

    Глобальный базис: базис символа по возрастанию степени, затем базисы
    c_0, …, c_depth. Скобки степени больше `depth` считаются нулевыми.
    """

    def __init__(self, symbol: Grading, depth: int):
        self.symbol = symbol
        self.depth = depth
        sym = symbol.algebra
        self._deg = list(symbol.degrees)
        self._neg = sorted(range(sym.dim), key=lambda k: (self._deg[k], k))
        # степень -> список элементов блока; для отрицательных степеней это индексы символа,
        # для p >= 0 – словари {индекс символа: координаты образа в блоке}
        self._blocks: Dict[int, List] = {}
        for k in self._neg:
            self._blocks.setdefault(self._deg[k], []).append(k)
        self._kernels: Dict[int, List[Vector]] = {}
        self._offsets: Dict[int, Dict[int, int]] = {}
        self.transitive: Dict[int, bool] = {}
        for p in range(0, depth + 1):
            self._prolong_step(p)
        self._assemble()

    # --- блоки ---

    def block_dim(self, degree: int) -> int:
        return len(self._blocks.get(degree, []))

    def _act(self, degree: int, i: int, b: int) -> Vector:
        """Координаты [f_i, e_b] в блоке degree + deg(b), f_i – i-й элемент блока."""
        target = degree + self._deg[b]
        if target not in self._blocks:
            return ()
        if degree < 0:
            k = self._blocks[degree][i]
            value = self.symbol.algebra.table[k][b]
            return tuple(value[idx] for idx in self._blocks[target])
        return self._blocks[degree][i][b]

    def _prolong_step(self, p: int):
        deg = self._deg
        neg = self._neg
        offsets: Dict[int, int] = {}
        total = 0
        for a in neg:
            offsets[a] = total
            total += self.block_dim(deg[a] + p)
        rows: List[List[Scalar]] = []
        sym = self.symbol.algebra
        for ai, a in enumerate(neg):
            for b in neg[ai + 1:]:
                t = deg[a] + deg[b] + p
                dt = self.block_dim(t)
                if dt == 0:
                    continue
                eq = [[ZERO] * total for _ in range(dt)]
                for k, c in enumerate(sym.table[a][b]):
                    if c.is_zero():
                        continue
                    for r in range(dt):
                        eq[r][offsets[k] + r] = eq[r][offsets[k] + r] + c
                for i in range(self.block_dim(deg[a] + p)):
                    w = self._act(deg[a] + p, i, b)
                    for r in range(dt):
                        if not w[r].is_zero():
                            eq[r][offsets[a] + i] = eq[r][offsets[a] + i] - w[r]
                for i in range(self.block_dim(deg[b] + p)):
                    w = self._act(deg[b] + p, i, a)
                    for r in range(dt):
                        if not w[r].is_zero():
                            eq[r][offsets[b] + i] = eq[r][offsets[b] + i] + w[r]
                rows.extend(eq)
        kernel = kernel_vectors(rows, total)
        elements = []
        for v in kernel:
            images = {}
            for a in neg:
                start = offsets[a]
                images[a] = tuple(v[start:start + self.block_dim(deg[a] + p)])
            elements.append(images)
        # транзитивность: элемент, зануляющий g₋₁, равен нулю
        first = [a for a in neg if deg[a] == -1]
        restricted = [[x for a in first for x in images[a]] for images in elements]
        width = len(first) * self.block_dim(p - 1)
        self.transitive[p] = Subspace.span(restricted, width).dim == len(elements)
        if not self.transitive[p]:
            logger.warning(f"Продолжение в степени {p} не транзитивно")
        self._blocks[p] = elements
        self._kernels[p] = kernel
        self._offsets[p] = offsets
        logger.debug(f"Продолжение: dim c_{p} = {len(elements)}")

    # --- глобальная алгебра ---

    def _assemble(self):
        degrees_sorted = sorted(self._blocks)
        self._start: Dict[int, int] = {}
        labels: List[str] = []
        degrees: List[int] = []
        pos = 0
        sym = self.symbol.algebra
        for d in degrees_sorted:
            self._start[d] = pos
            for i, item in enumerate(self._blocks[d]):
                labels.append(sym.labels[item] if d < 0 else f"c{d}_{i}")
                degrees.append(d)
            pos += len(self._blocks[d])
        n = pos
        self._n = n
        self._sym_global = {}
        for d in degrees_sorted:
            if d < 0:
                for i, k in enumerate(self._blocks[d]):
                    self._sym_global[k] = self._start[d] + i
        table = [[zero_vector(n) for _ in range(n)] for _ in range(n)]
        self._table = table
        # символ
        for a in self._neg:
            for b in self._neg:
                if a < b:
                    v = self._to_global_symbol(sym.table[a][b])
                    table[self._sym_global[a]][self._sym_global[b]] = v
                    table[self._sym_global[b]][self._sym_global[a]] = vscale(-1, v)
        # неотрицательные с отрицательными
        for p in range(0, self.depth + 1):
            for i, images in enumerate(self._blocks[p]):
                gi = self._start[p] + i
                for b in self._neg:
                    v = self.to_global(p + self._deg[b], images[b])
                    gb = self._sym_global[b]
                    table[gi][gb] = v
                    table[gb][gi] = vscale(-1, v)
        # неотрицательные между собой, по возрастанию суммарной степени
        for s in range(0, self.depth + 1):
            frame = Frame(self._kernels[s], len(self._kernels[s][0])) if self._kernels[s] else None
            for p in range(0, s + 1):
                q = s - p
                if p > q:
                    continue
                for i in range(self.block_dim(p)):
                    start_j = i + 1 if p == q else 0
                    for j in range(start_j, self.block_dim(q)):
                        gi = self._start[p] + i
                        gj = self._start[q] + j
                        v = self._bracket_nonneg(gi, gj, p, q, s, frame)
                        table[gi][gj] = v
                        table[gj][gi] = vscale(-1, v)
        # базис вещественный, поэтому σ – покоординатное сопряжение
        sigma = Matrix.identity(n, TAG_QI)
        self.algebra = LieAlgebra(labels, table, TAG_QI, sigma, f"c(depth={self.depth})")
        self.grading = Grading(self.algebra, degrees)

    def _to_global_symbol(self, v: Sequence[Scalar]) -> Vector:
        out = [ZERO] * self._n
        for k, c in enumerate(v):
            if not c.is_zero():
                out[self._sym_global[k]] = c
        return tuple(out)

    def to_global(self, degree: int, coords: Sequence[Scalar]) -> Vector:
        out = [ZERO] * self._n
        if degree in self._start:
            start = self._start[degree]
            for i, c in enumerate(coords):
                out[start + i] = c
        return tuple(out)

    def _global_row_bracket(self, gi: int, x: Sequence[Scalar]) -> Vector:
        acc = [ZERO] * self._n
        row = self._table[gi]
        for k, c in enumerate(x):
            if c.is_zero():
                continue
            for m, t in enumerate(row[k]):
                if not t.is_zero():
                    acc[m] = acc[m] + c * t
        return tuple(acc)

    def _bracket_nonneg(self, gi: int, gj: int, p: int, q: int, s: int, frame: Optional[Frame]) -> Vector:
        if frame is None:
            return zero_vector(self._n)
        flat: List[Scalar] = []
        for a in self._neg:
            target = s + self._deg[a]
            va = self._table[gj][self._sym_global[a]]
            ua = self._table[gi][self._sym_global[a]]
            w = vsub(self._global_row_bracket(gi, va), self._global_row_bracket(gj, ua))
            flat.extend(self.block_coords(target, w))
        coords = frame.try_coordinates(tuple(flat))
        if coords is None:
            raise CrlabError(f"Скобка элементов степеней {p} и {q} не лежит в c_{s}")
        return self.to_global(s, coords)

    def block_coords(self, degree: int, v: Sequence[Scalar]) -> Vector:
        if degree not in self._start:
            return ()
        start = self._start[degree]
        return tuple(v[start:start + self.block_dim(degree)])

    # --- интерфейс ---

    @property
    def dims(self) -> Dict[int, int]:
        return {d: self.block_dim(d) for d in sorted(self._blocks)}

    def block(self, degree: int) -> Subspace:
        n = self._n
        if degree not in self._start:
            return Subspace.zero(n)
        start = self._start[degree]
        return Subspace.span([unit_vector(n, start + i) for i in range(self.block_dim(degree))], n)

    def block_basis(self, degree: int) -> List[Vector]:
        return self.block(degree).vectors()

    def symbol_vector(self, label: str) -> Vector:
        k = self.symbol.algebra.index(label)
        return unit_vector(self._n, self._sym_global[k])

    def negative_part(self) -> Subspace:
        return Subspace.span([unit_vector(self._n, g) for g in self._sym_global.values()], self._n)

    def degree_of(self, v: Sequence[Scalar]) -> Optional[int]:
        """Степень однородного вектора или None."""
        found = None
        for k, c in enumerate(v):
            if not c.is_zero():
                d = self.grading.degrees[k]
                if found is not None and found != d:
                    return None
                found = d
        return found

    def solve_element(self, p: int, constraints: Sequence[Tuple[Sequence[Scalar], Sequence[Scalar]]]) -> Vector:
        """Единственный элемент x ∈ ĉ_p с [x, w] = target для всех пар (w, target).

        Raises:
            CalibrationError: Решений нет или их больше одного.
        """
        basis = self.block_basis(p)
        if not basis:
            raise CalibrationError(f"Компонента c_{p} пуста")
        L = self.algebra
        columns = []
        for f in basis:
            col = []
            for w, _ in constraints:
                col.extend(L.bracket(f, w))
            columns.append(col)
        rhs = []
        for _, target in constraints:
            rhs.extend(target)
        m = Matrix.from_columns(columns, len(rhs), TAG_QI)
        x = solve(m, rhs)
        if x is None:
            raise CalibrationError(f"Система привязки в степени {p} несовместна")
        if nullspace(m).dim:
            raise CalibrationError(f"Система привязки в степени {p} имеет неединственное решение")
        return lin_comb(x, basis, self._n)

    def validate(self) -> Report:
        return validate(self.algebra, self.grading.degrees, self.depth)


def tanaka_prolong(symbol: Grading, d: int = DEFAULT_DEPTH) -> ProlongedAlgebra:
    """Продолжение по Танаке до степени d.

    Args:
        symbol: Отрицательно градуированная алгебра, порожденная степенью −1.
        d: Максимальная вычисляемая степень.

    Raises:
        InputError: Символ не фундаментален или содержит неотрицательные степени.
    """
    if d < 0:
        raise InputError(f"Глубина продолжения {d} < 0")
    if symbol.algebra.field != TAG_Q:
        raise InputError("Символ задается вещественными структурными константами")
    if any(deg >= 0 for deg in symbol.degrees):
        raise InputError("Символ должен быть отрицательно градуирован")
    if not symbol.is_valid():
        raise InputError("Градуировка символа не согласована со скобкой")
    L = symbol.algebra
    generators = [unit_vector(L.dim, k) for k in symbol.component_indices(-1)]
    closure, _ = subalgebra_closure(L, generators)
    if closure.dim != L.dim:
        raise InputError("Символ не порождается компонентой степени −1")
    logger.info(f"Продолжение символа {L.name} до глубины {d}")
    return ProlongedAlgebra(symbol, d)


# --- калибровка ---

@dataclass
class Calibration:
    elements: Dict[str, Vector]
    report: Report
    gt1: Subspace # первое продолжение борелевской подалгебры

    def __getitem__(self, name: str) -> Vector:
        return self.elements[name]

    def expr(self, coeffs: Mapping[str, object]) -> Vector:
        """Линейная комбинация выделенных элементов."""
        n = len(next(iter(self.elements.values())))
        acc = zero_vector(n)
        for name, c in coeffs.items():
            acc = vadd(acc, vscale(to_scalar(c), self.elements[name]))
        return acc


def _model_relations() -> List[Tuple[str, str, Dict[str, object]]]:
    h = Fraction(1, 2)
    i = I
    return [
        ("z", "zb", {"e-2": -i * h}),
        ("M", "z", {"z": i * h}),
        ("M", "zb", {"z": -i, "zb": -i * h}),
        ("M", "Mb", {"M": -i, "Mb": -i}),
        ("N", "e-2", {"z": -3 * i, "zb": -3 * i}),
        ("N", "z", {"M": -i * h, "E": Fraction(-3, 4)}),
        ("N", "zb", {"M": Fraction(-3, 2) * i, "Mb": -2 * i, "E": Fraction(3, 4)}),
        ("M", "N", {"N": -i * h}),
        ("Mb", "N", {"N": Fraction(3, 2) * i, "Nb": i}),
        ("M", "V", {"N": -i, "V": i * h, "W": Fraction(5, 2)}),
        ("M", "W", {"W": -i * h}),
    ]


def _conjugate_relation(rel):
    a, b, rhs = rel
    return (CONJUGATE_NAMES[a], CONJUGATE_NAMES[b],
            {CONJUGATE_NAMES[k]: to_scalar(v).conj() for k, v in rhs.items()})


def model_relations() -> List[Tuple[str, str, Dict[str, object]]]:
    """Соотношения таблиц скобок модели вместе с сопряженными."""
    base = _model_relations()
    result = list(base)
    for rel in base:
        conj = _conjugate_relation(rel)
        if conj[:2] != rel[:2]:
            result.append(conj)
    return result


def calibrate_cr_basis(P: ProlongedAlgebra) -> Calibration:
    """Выделенные элементы e₋₂, z, z̄, E, J, M, M̄, N, N̄, V, W.

    z берется в собственном подпространстве ad(J) с собственным значением i
    на ĉ₋₁ с коэффициентом ½ при e1; M и N определяются своим действием на
    ĉ₋₁; вещественные V, W – из соотношений [M, V] = −iN + (i/2)V + (5/2)W,
    [M, W] = −(i/2)W в первом продолжении борелевской подалгебры.

    Raises:
        InputError: Глубина меньше 1 или символ не heis(3).
        CalibrationError: Система привязки не имеет единственного решения.
    """
    if P.depth < 1:
        raise InputError("Калибровка требует глубины продолжения не меньше 1")
    if P.block_dim(-2) != 1 or P.block_dim(-1) != 2:
        raise InputError("Калибровка определена для символа heis(3)")
    L = P.algebra
    n = L.dim
    e_minus_two = P.block_basis(-2)[0]
    e1, e2 = P.block_basis(-1)
    h = Scalar(HALF)
    report = Report(title="calibrate_cr_basis")

    E = P.solve_element(0, [(v, vscale(P.degree_of(v), v)) for v in P.block_basis(-2) + P.block_basis(-1)])
    J = P.solve_element(0, [(e1, vscale(-1, e2)), (e2, e1)])
    adj = L.ad(J)
    shifted = adj - Matrix.identity(n, TAG_QI).scale(I)
    eigen = nullspace(shifted).intersection(P.block(-1))
    if eigen.dim != 1:
        raise CalibrationError(f"Собственное подпространство ad(J) для i на ĉ₋₁ имеет размерность {eigen.dim}")
    z = eigen.basis[0]
    c1 = z[next(k for k, x in enumerate(e1) if not x.is_zero())]
    if c1.is_zero():
        raise CalibrationError("Коэффициент z при e1 равен нулю")
    z = vscale(h / c1, z)
    zb = L.conj(z)
    if L.bracket(z, zb) != vscale(-I * h, e_minus_two):
        raise CalibrationError("[z, z̄] ≠ −(i/2)e₋₂ при выбранной нормировке")

    M = P.solve_element(0, [(z, vscale(I * h, z)), (zb, vadd(vscale(-I, z), vscale(-I * h, zb)))])
    Mb = L.conj(M)
    N = P.solve_element(1, [
        (z, vadd(vscale(-I * h, M), vscale(Fraction(-3, 4), E))),
        (zb, vadd(vadd(vscale(Fraction(-3, 2) * I, M), vscale(-2 * I, Mb)), vscale(Fraction(3, 4), E))),
    ])
    Nb = L.conj(N)

    borel = L.span([E, M, Mb])
    gt1 = subalgebra_prolongation(P, borel)
    V, W = _solve_v_w(P, gt1, M, N)
    elements = {"e-2": e_minus_two, "z": z, "zb": zb, "E": E, "J": J, "M": M, "Mb": Mb,
                "N": N, "Nb": Nb, "V": V, "W": W}
    cal = Calibration(elements, report, gt1)

    for a, b, rhs in model_relations():
        lhs = L.bracket(elements[a], elements[b])
        ok = lhs == cal.expr(rhs)
        report.add(f"[{a},{b}]", ok, value=L.format(lhs))
    report.add("[E,z]", L.bracket(E, z) == vscale(-1, z))
    report.add("[E,N]", L.bracket(E, N) == N)
    report.add("[N,Nb]", is_zero_vector(L.bracket(N, Nb)), depth=P.depth)
    report.add("gt1_dim_4", gt1.dim == 4, dim=gt1.dim)
    report.add("gt1_span_NNbVW", gt1 == L.span([N, Nb, V, W]))
    report.add("V_W_real", L.conj(V) == V and L.conj(W) == W)
    report.data["W"] = L.format(W)
    report.data["V"] = L.format(V)
    if not report.ok:
        logger.warning(f"Калибровка: нарушены соотношения {[it.name for it in report.failures()]}")
    return cal


def _solve_v_w(P: ProlongedAlgebra, gt1: Subspace, M: Vector, N: Vector) -> Tuple[Vector, Vector]:
    """Вещественные V, W ∈ g̃₁ из соотношений с M; система расщепляется на Re и Im."""
    L = P.algebra
    n = L.dim
    basis = gt1.real_basis()
    m = len(basis)
    h = Scalar(HALF)
    cols_eq1: List[Vector] = []
    cols_eq2: List[Vector] = []
    for b in basis:
        cols_eq1.append(vsub(L.bracket(M, b), vscale(I * h, b)))
        cols_eq2.append(zero_vector(n))
    for b in basis:
        cols_eq1.append(vscale(Fraction(-5, 2), b))
        cols_eq2.append(vadd(L.bracket(M, b), vscale(I * h, b)))
    rhs_complex = list(vscale(-I, N)) + list(zero_vector(n))
    columns = [list(c1) + list(c2) for c1, c2 in zip(cols_eq1, cols_eq2)]
    rows = []
    rhs = []
    for k in range(2 * n):
        rows.append([Scalar(col[k].re) for col in columns])
        rhs.append(Scalar(rhs_complex[k].re))
        rows.append([Scalar(col[k].im) for col in columns])
        rhs.append(Scalar(rhs_complex[k].im))
    system = Matrix(rows, 2 * m, TAG_Q)
    x = solve(system, rhs)
    if x is None:
        raise CalibrationError("Система для V, W несовместна")
    if nullspace(system).dim:
        raise CalibrationError("V, W определяются соотношениями неоднозначно")
    V = lin_comb(x[:m], basis, n)
    W = lin_comb(x[m:], basis, n)
    return V, W


# --- биградуировка и универсальная CR-алгебра ---

@dataclass
class Bigrading:
    components: Dict[Tuple[int, int, int], Subspace] # (p, ℓ, k) -> c^k_{(p,ℓ)}
    J: Vector

    def component(self, p: int, l: int, k: int) -> Subspace:
        return self.components[(p, l, k)]

    def keys_for(self, p: int) -> List[Tuple[int, int, int]]:
        return sorted(key for key in self.components if key[0] == p)

    def dims(self) -> Dict[str, int]:
        return {f"({p},{l},{k})": s.dim for (p, l, k), s in sorted(self.components.items())}


def bigrading(P: ProlongedAlgebra, cal: Calibration) -> Bigrading:
    """Разложение ĉ_p на c^k_{(p,ℓ)}: ad J = iℓ, оператор Казимира sl₂ = k(k+2).

    Тройка sl₂: H = −i·J, X: z̄ ↦ z, Y: z ↦ z̄ (обе зануляют ĉ₋₂).
    """
    L = P.algebra
    n = L.dim
    z, zb = cal["z"], cal["zb"]
    X = P.solve_element(0, [(z, zero_vector(n)), (zb, z)])
    Y = P.solve_element(0, [(z, zb), (zb, zero_vector(n))])
    adj = L.ad(cal["J"])
    H = adj.scale(-I)
    adx, ady = L.ad(X), L.ad(Y)
    omega = (H @ H) + ((adx @ ady) + (ady @ adx)).scale(2)
    identity = Matrix.identity(n, TAG_QI)
    components = {}
    for p in sorted(P.dims):
        block = P.block(p)
        if block.dim == 0:
            continue
        for l in range(-(p + 2), p + 3):
            eig_j = nullspace(adj - identity.scale(I * l)).intersection(block)
            if eig_j.dim == 0:
                continue
            for k in range(0, p + 3):
                space = nullspace(omega - identity.scale(k * (k + 2))).intersection(eig_j)
                if space.dim:
                    components[(p, l, k)] = space
    return Bigrading(components, cal["J"])


def check_bigrading(P: ProlongedAlgebra, bg: Bigrading) -> Report:
    """Сумма компонент равна ĉ_p и квазиградуировка скобок."""
    L = P.algebra
    report = Report(title="bigrading")
    sum_ok = True
    parity_ok = True
    for p in sorted(P.dims):
        keys = bg.keys_for(p)
        total = Subspace.zero(L.dim)
        count = 0
        for key in keys:
            total = total.sum(bg.components[key])
            count += bg.components[key].dim
            _, l, _ = key
            if (l - p) % 2 or abs(l) > p + 2:
                parity_ok = False
        if total != P.block(p) or count != P.block_dim(p):
            sum_ok = False
    report.add("direct_sum", sum_ok)
    report.add("parity_and_bounds", parity_ok)
    violation = None
    keys = sorted(bg.components)
    for key1 in keys:
        for key2 in keys:
            p1, l1, k1 = key1
            p2, l2, k2 = key2
            if p1 + p2 > P.depth:
                continue
            allowed = Subspace.zero(L.dim)
            for kk in (k1 + k2, k1 + k2 - 2):
                comp = bg.components.get((p1 + p2, l1 + l2, kk))
                if comp is not None:
                    allowed = allowed.sum(comp)
            for x in bg.components[key1].basis:
                for y in bg.components[key2].basis:
                    if not allowed.contains(L.bracket(x, y)):
                        violation = [list(key1), list(key2)]
                        break
                if violation:
                    break
            if violation:
                break
        if violation:
            break
    report.add("quasi_grading", violation is None, pair=violation)
    report.data["dims"] = bg.dims()
    return report


@dataclass
class UniversalCRSubspace:
    terms: Dict[int, Subspace] # u_p

    def term(self, p: int) -> Subspace:
        return self.terms[p]

    def total(self) -> Subspace:
        result = None
        for s in self.terms.values():
            result = s if result is None else result.sum(s)
        return result


def universal_subspaces(P: ProlongedAlgebra, cal: Calibration) -> UniversalCRSubspace:
    """u_p: все собственные подпространства ad(J) на ĉ_p, кроме −i(p+2)."""
    L = P.algebra
    n = L.dim
    adj = L.ad(cal["J"])
    identity = Matrix.identity(n, TAG_QI)
    terms = {}
    for p in sorted(P.dims):
        block = P.block(p)
        u = Subspace.zero(n)
        for l in range(-(p + 1), p + 3):
            u = u.sum(nullspace(adj - identity.scale(I * l)).intersection(block))
        terms[p] = u
    return UniversalCRSubspace(terms)


def check_universal(P: ProlongedAlgebra, U: UniversalCRSubspace) -> Report:
    L = P.algebra
    report = Report(title="universal_subspaces")
    closed = True
    for p, up in U.terms.items():
        for q, uq in U.terms.items():
            if p + q > P.depth or p + q < min(U.terms):
                continue
            target = U.terms.get(p + q)
            for x in up.basis:
                for y in uq.basis:
                    if not target.contains(L.bracket(x, y)):
                        closed = False
    report.add("bracket_closed", closed)
    u1 = U.term(-1)
    report.add("u_minus_one_transversal", u1.intersection(L.conj_subspace(u1)).dim == 0)
    report.data["dims"] = {str(p): s.dim for p, s in U.terms.items()}
    return report


def subalgebra_prolongation(P: ProlongedAlgebra, g0: Subspace) -> Subspace:
    """g̃₁ = {X ∈ ĉ₁ : [X, ĉ₋₁] ⊆ g0}."""
    if P.depth < 1:
        return Subspace.zero(P.algebra.dim)
    if not P.block(0).contains_subspace(g0):
        raise InputError("g0 не лежит в ĉ₀")
    return bracket_kernel(P.algebra, P.block_basis(1), P.block_basis(-1), g0)


def is_model(components: Mapping[int, Subspace], P: ProlongedAlgebra, cal: Calibration,
             bg: Optional[Bigrading] = None, U: Optional[UniversalCRSubspace] = None) -> ModelReport:
    """Условия (i)–(iv) градуированной модели и порядок невырожденности k.

    Args:
        components: ĝ_p как подпространства ĉ_p (отсутствующие степени – нули).
        P: Продолжение.
        cal: Калибровка (для J и E).
        bg, U: Готовые биградуировка и универсальная CR-алгебра.

    Raises:
        InputError: Компонента не лежит в ĉ_p или степень больше глубины.
    """
    L = P.algebra
    n = L.dim
    bg = bg or bigrading(P, cal)
    U = U or universal_subspaces(P, cal)
    for p, s in components.items():
        if p > P.depth:
            raise InputError(f"Компонента степени {p} выше глубины продолжения {P.depth}")
        if not P.block(p).contains_subspace(s):
            raise InputError(f"ĝ_{p} не лежит в ĉ_{p}")
    comp = {p: components.get(p, Subspace.zero(n)) for p in sorted(P.dims)}
    report = ModelReport(title="is_model")
    report.add("i_negative_part", comp[-2] == P.block(-2) and comp[-1] == P.block(-1))
    report.add("ii_grading_element", comp[0].contains(cal["E"]))
    split_ok = True
    for p in range(0, P.depth + 1):
        gp = comp[p]
        up = U.term(p)
        parts = gp.intersection(up).sum(gp.intersection(L.conj_subspace(up)))
        if parts != gp:
            split_ok = False
    report.add("iii_split", split_ok)
    nontrivial = []
    for p in range(0, P.depth + 1):
        keys = bg.keys_for(p)
        vectors = [v for key in keys for v in bg.components[key].basis]
        frame = Frame(vectors, n)
        target = (p, p + 2, p + 2)
        positions = []
        idx = 0
        for key in keys:
            size = bg.components[key].dim
            if key == target:
                positions = list(range(idx, idx + size))
            idx += size
        hit = False
        for v in comp[p].basis:
            coords = frame.coordinates(v)
            if any(not coords[t].is_zero() for t in positions):
                hit = True
                break
        if hit:
            nontrivial.append(p)
    report.data["nontrivial_projection"] = nontrivial
    contiguous = bool(nontrivial) and nontrivial == list(range(0, len(nontrivial)))
    if contiguous and nontrivial[-1] == P.depth:
        logger.warning("Проекции ненулевые до глубины усечения: порядок может быть занижен")
    report.add("iv_projection", contiguous)
    if report.ok:
        report.k = len(nontrivial) + 1
    return report


# --- экспорт и модель ---

MODEL_LABELS = ["e-2", "z", "zb", "E", "M", "Mb", "N", "Nb"]


def extract_model(P: ProlongedAlgebra, cal: Calibration) -> LieAlgebra:
    """8-мерная градуированная модель в калиброванном базисе."""
    vectors = [cal[name] for name in MODEL_LABELS]
    return restrict(P.algebra, vectors, MODEL_LABELS, name="model8")


def export_prolongation(P: ProlongedAlgebra, bg: Bigrading, cal: Calibration) -> Dict:
    """JSON усечения в базисе "c(p,l,k,idx)" и координаты выделенных элементов."""
    vectors = []
    labels = []
    for key in sorted(bg.components, key=lambda t: (t[0], -t[1], -t[2])):
        p, l, k = key
        for idx, v in enumerate(bg.components[key].basis):
            vectors.append(v)
            labels.append(f"c({p},{l},{k},{idx})")
    rebased = change_basis(P.algebra, vectors, labels, name=f"c(depth={P.depth})")
    frame = Frame(vectors, P.algebra.dim)
    data = rebased.to_json_dict()
    data["degrees"] = {label: int(label[2:].split(",")[0]) for label in labels}
    data["distinguished"] = {
        name: {labels[i]: str(c) for i, c in enumerate(frame.coordinates(v)) if not c.is_zero()}
        for name, v in cal.elements.items()
    }
    return data
