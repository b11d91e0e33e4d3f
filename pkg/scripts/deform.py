"""Когомологии Шевалле–Эйленберга (Спенсера) g₋ и фильтрованные деформации.

Коцепь степени k и однородности d – кососимметричное k-линейное
отображение φ: Λᵏg₋ → M с deg φ(x₁, …, x_k) = Σ deg xᵢ + d. Координаты
коцепи – значения на возрастающих наборах базисных векторов g₋.
"""
import logging
import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from scripts.errors import InputError
from scripts.data_structures import (
    VERDICT_FLEXIBLE, VERDICT_INCONCLUSIVE, VERDICT_RIGID,
    JacobiEquation, Report, RigidityCertificate,
)
from scripts.field import (
    TAG_QI, ZERO, Frame, Matrix, Scalar, ScalarLike, Subspace, Vector,
    is_zero_vector, matrix_spectrum, nullspace, to_scalar, unit_vector, vadd, vscale, vsub, zero_vector,
)
from scripts.liealg import Grading, LieAlgebra, jacobiator
from scripts.polysolve import Poly, satisfies, solve_system

# Настройка логирования
logger = logging.getLogger(__name__)

# Поддерживаемые степени коцепей
SUPPORTED_K = (1, 2)

# Число случайных проверок жесткости
DEFAULT_SANITY_COUNT = 20


# --- градуированный модуль ---

class GradedModule:
    """Градуированный g₋-модуль M.

    Args:
        minus: Отрицательно градуированная алгебра g₋.
        labels: Метки базиса M.
        degrees: Степени базисных векторов M.
        action: action[a][m] – вектор e_a·m_m в базисе M.
        name: Имя для отчетов.
    """

    def __init__(self, minus: Grading, labels: Sequence[str], degrees: Sequence[int],
                 action: Sequence[Sequence[Vector]], name: str = ""):
        self.minus = minus
        self.labels = list(labels)
        self.degrees = list(degrees)
        self.action = [[tuple(v) for v in row] for row in action]
        self.name = name
        # для присоединенного модуля: сама алгебра и индексы g₋ в ее базисе
        self.algebra: Optional[LieAlgebra] = None
        self.minus_indices: Optional[List[int]] = None
        if len(self.action) != minus.algebra.dim:
            raise InputError(f"Действие задано для {len(self.action)} из {minus.algebra.dim} векторов g₋")

    @classmethod
    def adjoint(cls, grading: Grading) -> "GradedModule":
        """Присоединенный модуль: M = g, g₋ – отрицательная часть градуировки."""
        L = grading.algebra
        neg = grading.negative_part()
        if not neg:
            raise InputError("У градуировки нет отрицательной части")
        m = len(neg)
        table = [[zero_vector(m) for _ in range(m)] for _ in range(m)]
        for a, i in enumerate(neg):
            for b, j in enumerate(neg):
                v = L.table[i][j]
                table[a][b] = tuple(v[k] for k in neg)
                rest = [k for k, x in enumerate(v) if not x.is_zero() and k not in neg]
                if rest:
                    raise InputError("Отрицательная часть не замкнута относительно скобки")
        minus_alg = LieAlgebra([L.labels[i] for i in neg], table, L.field, None, f"{L.name}_-")
        minus = Grading(minus_alg, [grading.degrees[i] for i in neg])
        action = [[L.table[i][k] for k in range(L.dim)] for i in neg]
        module = cls(minus, L.labels, grading.degrees, action, name=L.name)
        module.algebra = L
        module.minus_indices = neg
        return module

    @classmethod
    def trivial(cls, minus: Grading, degree: int = 0, label: str = "m") -> "GradedModule":
        """Одномерный тривиальный модуль в степени `degree`."""
        action = [[zero_vector(1)] for _ in range(minus.algebra.dim)]
        return cls(minus, [label], [degree], action, name=f"trivial({degree})")

    @property
    def dim(self) -> int:
        return len(self.labels)

    @property
    def minus_dim(self) -> int:
        return self.minus.algebra.dim

    def act(self, x: Sequence[Scalar], m: Sequence[Scalar]) -> Vector:
        """x·m для x ∈ g₋, m ∈ M."""
        acc = zero_vector(self.dim)
        for a, ca in enumerate(x):
            if ca.is_zero():
                continue
            for k, cm in enumerate(m):
                if cm.is_zero():
                    continue
                acc = vadd(acc, vscale(ca * cm, self.action[a][k]))
        return acc

    def format(self, v: Sequence[Scalar]) -> Dict[str, str]:
        return {self.labels[k]: str(x) for k, x in enumerate(v) if not x.is_zero()}

    def max_degree(self) -> int:
        return max(self.degrees)


# --- коцепи ---

@dataclass
class CochainSpace:
    module: GradedModule
    d: int
    k: int
    basis: List[Tuple[Tuple[int, ...], int]] # (возрастающий набор индексов g₋, индекс базиса M)
    index: Dict[Tuple[Tuple[int, ...], int], int] = field(default_factory=dict)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def values(self, v: Sequence[Scalar]) -> Dict[Tuple[int, ...], Vector]:
        """Значения коцепи на базисных наборах."""
        result: Dict[Tuple[int, ...], List[Scalar]] = {}
        for c, (subset, m) in zip(v, self.basis):
            if c.is_zero():
                continue
            row = result.setdefault(subset, [ZERO] * self.module.dim)
            row[m] = c
        return {s: tuple(row) for s, row in result.items()}

    def flatten(self, values: Mapping[Tuple[int, ...], Sequence[Scalar]]) -> Vector:
        """Координаты коцепи по значениям на возрастающих наборах.

        Raises:
            InputError: Значение имеет неверную степень однородности.
        """
        out = [ZERO] * self.dim
        for subset, mv in values.items():
            for m, c in enumerate(mv):
                if c.is_zero():
                    continue
                key = (tuple(subset), m)
                if key not in self.index:
                    raise InputError(f"Значение на {subset} в {self.module.labels[m]} не однородно степени {self.d}")
                out[self.index[key]] = out[self.index[key]] + c
        return tuple(out)

    def format(self, v: Sequence[Scalar]) -> Dict[str, Dict[str, str]]:
        labels = self.module.minus.algebra.labels
        return {",".join(labels[i] for i in s): self.module.format(mv) for s, mv in sorted(self.values(v).items())}


def cochain_space(module: GradedModule, d: int, k: int) -> CochainSpace:
    minus_deg = module.minus.degrees
    basis = []
    for subset in combinations(range(module.minus_dim), k):
        target = sum(minus_deg[i] for i in subset) + d
        for m, deg in enumerate(module.degrees):
            if deg == target:
                basis.append((subset, m))
    space = CochainSpace(module, d, k, basis)
    space.index = {key: n for n, key in enumerate(basis)}
    return space


def _sorted_sign(indices: Sequence[int]) -> Tuple[int, Tuple[int, ...]]:
    """Знак перестановки, упорядочивающей набор, и сам набор; 0 при повторе."""
    idx = list(indices)
    if len(set(idx)) != len(idx):
        return 0, ()
    sign = 1
    for i in range(len(idx)):
        for j in range(len(idx) - 1 - i):
            if idx[j] > idx[j + 1]:
                idx[j], idx[j + 1] = idx[j + 1], idx[j]
                sign = -sign
    return sign, tuple(idx)


def cochain_from_labels(space: CochainSpace, values: Mapping[str, Mapping[str, ScalarLike]]) -> Vector:
    """Координаты коцепи по значениям вида {"e-2,z": {"L": 1}}.

    Ключ – метки аргументов из g₋ через запятую в любом порядке (знак
    перестановки учитывается), значение – вектор M по меткам.

    Raises:
        InputError: Неизвестная метка, повтор аргумента или неоднородное значение.
    """
    module = space.module
    minus_labels = module.minus.algebra.labels
    out: Dict[Tuple[int, ...], Vector] = {}
    for key, value in values.items():
        names = [s.strip() for s in key.split(",")]
        unknown = [n for n in names if n not in minus_labels]
        if unknown or len(names) != space.k:
            raise InputError(f"Аргументы коцепи {key!r} не являются {space.k} векторами g₋")
        sign, subset = _sorted_sign([minus_labels.index(n) for n in names])
        if sign == 0:
            raise InputError(f"Повторяющиеся аргументы коцепи: {key!r}")
        vector = [ZERO] * module.dim
        for label, c in value.items():
            if label not in module.labels:
                raise InputError(f"Неизвестная метка модуля: {label}")
            vector[module.labels.index(label)] = to_scalar(c) * sign
        out[subset] = vadd(out.get(subset, zero_vector(module.dim)), vector)
    return space.flatten(out)


def evaluate_cochain(module: GradedModule, values: Mapping[Tuple[int, ...], Vector],
                     args: Sequence[Sequence[Scalar]]) -> Vector:
    """φ(x₁, …, x_k) для произвольных векторов xᵢ ∈ g₋."""
    acc = zero_vector(module.dim)
    supports = [[(i, c) for i, c in enumerate(x) if not c.is_zero()] for x in args]

    def expand(pos: int, chosen: List[int], coeff: Scalar):
        nonlocal acc
        if pos == len(args):
            sign, key = _sorted_sign(chosen)
            if sign and key in values:
                acc = vadd(acc, vscale(coeff * sign, values[key]))
            return
        for i, c in supports[pos]:
            expand(pos + 1, chosen + [i], coeff * c)

    expand(0, [], Scalar(1))
    return acc


def _apply_differential(module: GradedModule, values: Mapping[Tuple[int, ...], Vector], k: int,
                        args: Sequence[int]) -> Vector:
    """(∂φ)(x₀, …, x_k) на базисных векторах g₋."""
    n = module.minus_dim
    minus = module.minus.algebra
    basis = [unit_vector(n, a) for a in args]
    acc = zero_vector(module.dim)
    for i in range(k + 1):
        rest = basis[:i] + basis[i + 1:]
        term = module.act(basis[i], evaluate_cochain(module, values, rest))
        acc = vadd(acc, term) if i % 2 == 0 else vsub(acc, term)
    for i in range(k + 1):
        for j in range(i + 1, k + 1):
            br = minus.bracket(basis[i], basis[j])
            if is_zero_vector(br):
                continue
            rest = [b for t, b in enumerate(basis) if t not in (i, j)]
            term = evaluate_cochain(module, values, [br] + rest)
            acc = vadd(acc, term) if (i + j) % 2 == 0 else vsub(acc, term)
    return acc


def differential(module: GradedModule, d: int, k: int) -> Tuple[Matrix, CochainSpace, CochainSpace]:
    """Матрица ∂: C^{d,k} → C^{d,k+1} и обе пространства коцепей."""
    source = cochain_space(module, d, k)
    target = cochain_space(module, d, k + 1)
    columns = []
    for n in range(source.dim):
        values = source.values(unit_vector(source.dim, n))
        images = {}
        for subset in combinations(range(module.minus_dim), k + 1):
            v = _apply_differential(module, values, k, subset)
            if not is_zero_vector(v):
                images[subset] = v
        columns.append(target.flatten(images))
    return Matrix.from_columns(columns, target.dim, TAG_QI), source, target


def cohomology_bound(module: GradedModule, k: int) -> int:
    """Наибольшая однородность с ненулевыми коцепями: max deg M − min Σ deg по k-наборам."""
    minus_deg = sorted(module.minus.degrees)
    return module.max_degree() - sum(minus_deg[:k])


@dataclass
class CohomologyResult:
    space: CochainSpace
    kernel: Subspace
    image: Subspace
    representatives: List[Vector]
    squares_zero: bool
    bound: int
    # ∂: C^{d,k} → C^{d,k+1} и пространство-образ
    boundary: Optional[Matrix] = None
    target: Optional[CochainSpace] = None

    @property
    def d(self) -> int:
        return self.space.d

    @property
    def k(self) -> int:
        return self.space.k

    @property
    def dim(self) -> int:
        return len(self.representatives)

    def is_cocycle(self, v: Sequence[Scalar]) -> bool:
        return self.kernel.contains(v)

    def is_coboundary(self, v: Sequence[Scalar]) -> bool:
        return self.image.contains(v)

    def reduce(self, v: Sequence[Scalar]) -> Vector:
        return self.image.reduce(v)

    def to_dict(self) -> Dict:
        return {
            "d": self.d,
            "k": self.k,
            "dim": self.dim,
            "bound": self.bound,
            "representatives": [self.space.format(r) for r in self.representatives],
        }


def spencer_cohomology(module: GradedModule, d: int, k: int = 2) -> CohomologyResult:
    """H^{d,k}(g₋, M) с представителями в каноническом виде по модулю образа.

    Raises:
        InputError: k не поддерживается.
    """
    if k not in SUPPORTED_K:
        raise InputError(f"Когомологии степени k = {k} не поддерживаются")
    dk, space, target = differential(module, d, k)
    dprev, _, _ = differential(module, d, k - 1)
    kernel = nullspace(dk) if space.dim else Subspace.zero(0)
    image = Subspace.span([dprev.column(c) for c in range(dprev.ncols)], space.dim)
    squares = (dk @ dprev).is_zero() if space.dim and dprev.ncols else True
    representatives = []
    current = image
    for v in kernel.basis:
        if current.contains(v):
            continue
        representatives.append(image.reduce(v))
        current = current.sum(Subspace.span([v], space.dim))
    bound = cohomology_bound(module, k)
    logger.debug(f"H^{{{d},{k}}}({module.name}): dim ker = {kernel.dim}, dim im = {image.dim}, dim H = {len(representatives)}")
    return CohomologyResult(space, kernel, image, representatives, squares, bound, boundary=dk, target=target)


def cohomology_table(module: GradedModule, k: int = 2, d_min: int = 1) -> Dict[int, CohomologyResult]:
    """H^{d,k} для d от d_min до границы cohomology_bound включительно."""
    return {d: spencer_cohomology(module, d, k) for d in range(d_min, cohomology_bound(module, k) + 1)}


# --- действие веса на коцепях ---

@dataclass
class WeightAction:
    minus: Matrix # действие на g₋
    module: Matrix # действие на M


def adjoint_weight(module: GradedModule, w: Sequence[Scalar]) -> WeightAction:
    """Присоединенное действие элемента w присоединенного модуля.

    Raises:
        InputError: Модуль не присоединенный или ad(w) не сохраняет g₋.
    """
    L = getattr(module, "algebra", None)
    if L is None:
        raise InputError("Вес задается элементом только для присоединенного модуля")
    ad = L.ad(w)
    neg = module.minus_indices
    columns = []
    for i in neg:
        col = ad.column(i)
        if any(not col[k].is_zero() for k in range(L.dim) if k not in neg):
            raise InputError("ad(w) не сохраняет g₋")
        columns.append(tuple(col[k] for k in neg))
    return WeightAction(Matrix.from_columns(columns, len(neg), TAG_QI), ad)


def act_on_cochain(space: CochainSpace, weight: WeightAction, v: Sequence[Scalar]) -> Vector:
    """(w·φ)(x₁, …) = w·φ(x₁, …) − Σ φ(…, w·xᵢ, …)."""
    module = space.module
    values = space.values(v)
    n = module.minus_dim
    images = {}
    for subset in combinations(range(n), space.k):
        args = [unit_vector(n, a) for a in subset]
        acc = weight.module.apply(evaluate_cochain(module, values, args))
        for i in range(space.k):
            moved = list(args)
            moved[i] = weight.minus.apply(args[i])
            acc = vsub(acc, evaluate_cochain(module, values, moved))
        if not is_zero_vector(acc):
            images[subset] = acc
    return space.flatten(images)


def weight_on_cocycles(result: CohomologyResult, weight: WeightAction,
                       cocycles: Sequence[Sequence[Scalar]], names: Optional[Sequence[str]] = None) -> Report:
    """Собственные значения веса на классах коцепей-кандидатов.

    Пункт отчета на каждую коцепь проходит, если она коцикл, не кограница и
    ее класс – собственный вектор веса. В деталях пункта: cocycle,
    coboundary, eigenvalue и, для не-коциклов, значения ∂ψ.

    Returns:
        Отчет с data["eigenvalues"] (строки скаляров или None) и пунктом на
        каждую коцепь.
    """
    names = list(names) if names else [f"class{i}" for i in range(len(cocycles))]
    report = Report(title=f"weight_on_cocycles d={result.d}")
    eigenvalues = []
    for name, psi in zip(names, cocycles):
        cocycle = result.is_cocycle(psi)
        details: Dict[str, object] = {"cocycle": cocycle, "coboundary": cocycle and result.is_coboundary(psi)}
        if not cocycle and result.boundary is not None:
            details["boundary"] = result.target.format(result.boundary.apply(psi))
        value = None
        r = result.reduce(psi)
        if cocycle and not is_zero_vector(r):
            wr = result.reduce(act_on_cochain(result.space, weight, psi))
            pivot = next(i for i, x in enumerate(r) if not x.is_zero())
            lam = wr[pivot] / r[pivot]
            if wr == vscale(lam, r):
                value = lam
        details["eigenvalue"] = str(value) if value is not None else None
        eigenvalues.append(details["eigenvalue"])
        report.add(name, value is not None, **details)
    report.data["eigenvalues"] = eigenvalues
    return report


def induced_action(result: CohomologyResult, weight: WeightAction) -> Matrix:
    """Матрица действия веса на H^{d,k} в базисе представителей."""
    h = result.dim
    if h == 0:
        return Matrix([], 0, TAG_QI)
    frame = Frame(result.representatives, result.space.dim)
    columns = [frame.coordinates(result.reduce(act_on_cochain(result.space, weight, r)))
               for r in result.representatives]
    return Matrix.from_columns(columns, h, TAG_QI)


def almost_full_check(module: GradedModule, weight: WeightAction, target_degree: int = 1) -> Report:
    """Hom_t(H^{d,1}(g₋, M), M_{target_degree}) = 0 для всех d ≥ 1.

    Веса на H^{d,1} и на компоненте M_{target_degree} сравниваются как
    множества собственных значений; эквивариантные отображения существуют
    только между совпадающими весами.
    """
    report = Report(title="almost_full_check")
    idx = [m for m, deg in enumerate(module.degrees) if deg == target_degree]
    block = Matrix([[weight.module[i, j] for j in idx] for i in idx], len(idx), TAG_QI)
    target_weights = {str(lam) for lam, _ in matrix_spectrum(block)} if idx else set()
    report.data["target_weights"] = sorted(target_weights)
    weights = {}
    ok = True
    for d in range(1, cohomology_bound(module, 1) + 1):
        result = spencer_cohomology(module, d, 1)
        if result.dim == 0:
            weights[str(d)] = []
            continue
        spectrum = {str(lam) for lam, _ in matrix_spectrum(induced_action(result, weight))}
        weights[str(d)] = sorted(spectrum)
        if spectrum & target_weights:
            ok = False
    report.data["h1_weights"] = weights
    report.add("hom_t_vanishes", ok)
    return report


# --- деформации ---

@dataclass
class DeformationTerm:
    i: int
    j: int
    k: int
    parameter: str

    def to_dict(self, labels: Sequence[str]) -> Dict[str, str]:
        return {"pair": [labels[self.i], labels[self.j]], "target": labels[self.k], "parameter": self.parameter}


@dataclass
class DeformationProblem:
    base: Grading
    terms: List[DeformationTerm]
    weights: Optional[List[Scalar]] = None

    @property
    def parameters(self) -> List[str]:
        return [t.parameter for t in self.terms]

    @property
    def labels(self) -> List[str]:
        return self.base.algebra.labels

    def deformed_algebra(self, values: Optional[Mapping[str, object]] = None) -> LieAlgebra:
        """Алгебра со скобками-многочленами от параметров (или с подставленными значениями)."""
        L = self.base.algebra
        n = L.dim
        table = [[tuple(Poly.const(x) for x in L.table[i][j]) for j in range(n)] for i in range(n)]
        for t in self.terms:
            p = Poly.var(t.parameter)
            if values is not None:
                p = p.subs(values)
            row = list(table[t.i][t.j])
            row[t.k] = row[t.k] + p
            table[t.i][t.j] = tuple(row)
            table[t.j][t.i] = tuple(-x for x in row)
        return LieAlgebra(L.labels, table, TAG_QI, None, f"{L.name}_λ")

    def jacobiators(self) -> List[JacobiEquation]:
        """Ненулевые якобиаторы базисных троек как многочлены от параметров."""
        D = self.deformed_algebra()
        n = D.dim
        basis = [tuple(Poly.const(1) if a == b else Poly() for b in range(n)) for a in range(n)]
        result = []
        for i, j, k in combinations(range(n), 3):
            jac = jacobiator(D, basis[i], basis[j], basis[k])
            value = {D.labels[m]: p for m, p in enumerate(jac) if not p.is_zero()}
            if value:
                result.append(JacobiEquation([D.labels[i], D.labels[j], D.labels[k]], value))
        return result

    def to_dict(self) -> Dict:
        return {"parameters": self.parameters, "terms": [t.to_dict(self.labels) for t in self.terms]}


def _weights_of(L: LieAlgebra, w: Sequence[Scalar]) -> List[Scalar]:
    weights = []
    for k in range(L.dim):
        e = unit_vector(L.dim, k)
        image = L.bracket(w, e)
        lam = image[k]
        if image != vscale(lam, e):
            raise InputError(f"Базисный вектор {L.labels[k]} не является собственным для ad(w)")
        weights.append(lam)
    return weights


def build_deformation_problem(base: Grading, weight: Optional[Sequence[Scalar]] = None,
                              prefix: str = "λ") -> DeformationProblem:
    """Все допустимые деформационные слагаемые [e_i, e_j] += λ·e_k.

    Слагаемое допустимо, если deg e_k > deg e_i + deg e_j, а при заданном весе
    еще и wt(e_k) = wt(e_i) + wt(e_j).

    Raises:
        InputError: Базисные векторы не собственные для ad(weight).
    """
    L = base.algebra
    deg = base.degrees
    weights = _weights_of(L, weight) if weight is not None else None
    terms = []
    for i, j in combinations(range(L.dim), 2):
        for k in range(L.dim):
            if deg[k] <= deg[i] + deg[j]:
                continue
            if weights is not None and weights[k] != weights[i] + weights[j]:
                continue
            terms.append(DeformationTerm(i, j, k, f"{prefix}{len(terms)}"))
    logger.debug(f"Деформации {L.name}: {len(terms)} допустимых слагаемых")
    return DeformationProblem(base, terms, weights)


def _witness_candidates(assignments: Mapping[str, Poly], free: Sequence[str]) -> List[str]:
    linear = []
    for expr in assignments.values():
        for v in free:
            if v not in linear and expr.linear_coefficient(v) is not None:
                linear.append(v)
    return linear + [v for v in free if v not in linear]


def rigidity_solve(problem: DeformationProblem) -> RigidityCertificate:
    """Вердикт жесткости по системе якобиаторов.

    Линейные по какому-либо параметру уравнения исключаются по очереди.
    rigid – все параметры обращены в нуль без остатка; flexible – найдено
    однопараметрическое семейство, обнуляющее все якобиаторы; иначе
    inconclusive с нелинейным остатком.
    """
    params = problem.parameters
    equations = problem.jacobiators()
    cert = RigidityCertificate(parameters=params)
    cert.equations = [JacobiEquation(eq.triple, {k: str(v) for k, v in eq.value.items()}) for eq in equations]
    if not params:
        cert.verdict = VERDICT_RIGID
        return cert
    polys = [p for eq in equations for p in eq.value.values()]
    branches = solve_system(polys, params)
    if not branches:
        logger.warning("Система якобиаторов несовместна")
        cert.verdict = VERDICT_INCONCLUSIVE
        return cert
    branch = branches[0]
    cert.eliminations = [{x: str(expr)} for x, expr in branch.assignments.items()]
    free = branch.free(params)
    if not branch.residue and not free and all(e.is_zero() for e in branch.assignments.values()):
        cert.verdict = VERDICT_RIGID
        return cert
    solution = branch.solution(params)
    t = Poly.var("t")
    for v in _witness_candidates(branch.assignments, free):
        point = {f: (t if f == v else Poly()) for f in free}
        values = {x: solution[x].subs(point) for x in params}
        if satisfies(polys, values):
            cert.verdict = VERDICT_FLEXIBLE
            cert.witness = {x: str(p) for x, p in values.items() if not p.is_zero()}
            return cert
    cert.verdict = VERDICT_INCONCLUSIVE
    cert.residue = [str(r) for r in branch.residue]
    logger.warning(f"Исключение остановилось на нелинейном остатке из {len(branch.residue)} уравнений")
    return cert


def random_sanity(problem: DeformationProblem, seed: int, count: int = DEFAULT_SANITY_COUNT) -> Report:
    """Случайные ненулевые значения параметров дают ненулевой якобиатор."""
    rng = random.Random(seed)
    polys = [p for eq in problem.jacobiators() for p in eq.value.values()]
    report = Report(title="random_sanity")
    hits = 0
    samples = []
    for _ in range(count):
        values = {}
        for x in problem.parameters:
            num = rng.choice([n for n in range(-9, 10) if n])
            values[x] = Scalar(Fraction(num, rng.randint(1, 5)))
        nonzero = any(not p.evaluate(values).is_zero() for p in polys)
        hits += nonzero
        samples.append({k: str(v) for k, v in values.items()})
    report.add("nonzero_jacobiator", hits == count, hits=hits, count=count)
    report.data["samples"] = samples
    return report


def deformation_from_cocycle(module: GradedModule, result: CohomologyResult, cocycle: Sequence[Scalar],
                             scale: str = "s") -> Report:
    """Якобиаторы алгебры со скобкой [x, y] + s·ψ(x, y) на g₋.

    Для коцикла линейная по s часть якобиаторов троек из g₋ равна нулю.
    """
    L = getattr(module, "algebra", None)
    if L is None:
        raise InputError("Возмущение коциклом определено для присоединенного модуля")
    if result.k != 2:
        raise InputError("Возмущать скобку можно только 2-коциклом")
    n = L.dim
    neg = module.minus_indices
    values = result.space.values(cocycle)
    s = Poly.var(scale)
    table = [[tuple(Poly.const(x) for x in L.table[i][j]) for j in range(n)] for i in range(n)]
    for (a, b), mv in values.items():
        i, j = neg[a], neg[b]
        row = tuple(table[i][j][m] + s * mv[m] for m in range(n))
        table[i][j] = row
        table[j][i] = tuple(-x for x in row)
    D = LieAlgebra(L.labels, table, TAG_QI, None, f"{L.name}+{scale}ψ")
    basis = [tuple(Poly.const(1) if a == b else Poly() for b in range(n)) for a in range(n)]
    report = Report(title="deformation_from_cocycle")
    jacobiators = {}
    first_order_ok = True
    for i, j, k in combinations(range(n), 3):
        jac = jacobiator(D, basis[i], basis[j], basis[k])
        value = {L.labels[m]: p for m, p in enumerate(jac) if not p.is_zero()}
        if not value:
            continue
        jacobiators[",".join(L.labels[x] for x in (i, j, k))] = {m: str(p) for m, p in value.items()}
        if all(x in neg for x in (i, j, k)):
            if any(not p.diff(scale).subs({scale: 0}).is_zero() for p in value.values()):
                first_order_ok = False
    report.add("first_order_vanishes_on_g_minus", first_order_ok)
    report.data["jacobiators"] = jacobiators
    return report
