"""Конечномерные алгебры Ли через структурные константы.

Градуировки, фильтрации, вещественные формы и сопряжение, спектр
присоединенного действия и построение gr(·) по фильтрации.
"""
import logging
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from scripts.errors import FiltrationError, InputError
from scripts.data_structures import ValidationReport
from scripts.field import (
    ONE, TAG_Q, TAG_QI, ZERO, Frame, Matrix, Scalar, ScalarLike, Subspace, Vector,
    field_of, format_vector, is_zero_vector, kernel_vectors, lin_comb, matrix_spectrum,
    to_scalar, unit_vector, vadd, vconj, vscale, vsub, zero_vector,
)

# Настройка логирования
logger = logging.getLogger(__name__)

# Обозначения поля в JSON-формате алгебры
JSON_FIELDS = {"Q": TAG_Q, "Qi": TAG_QI}


class LieAlgebra:
    """Алгебра Ли с базисом `labels` и таблицей скобок базисных векторов.

    Сопряжение σ (если задано) хранится матрицей S, столбец j которой равен
    σ(e_j); для произвольного вектора σ(v) = S·v̄.
    """

    def __init__(self, labels: Sequence[str], table: Sequence[Sequence[Sequence[Scalar]]],
                 field: Optional[str] = None, conjugation: Optional[Matrix] = None, name: str = ""):
        self.labels = list(labels)
        if len(set(self.labels)) != len(self.labels):
            raise InputError(f"Повторяющиеся метки базиса: {self.labels}")
        n = len(self.labels)
        self.table = [[tuple(table[i][j]) for j in range(n)] for i in range(n)]
        if field is None:
            field = field_of(x for row in self.table for v in row for x in v)
        self.field = field
        if conjugation is not None and conjugation.shape != (n, n):
            raise InputError(f"Матрица сопряжения {conjugation.shape} для алгебры размерности {n}")
        self.conjugation = conjugation
        self.name = name
        self._index = {label: k for k, label in enumerate(self.labels)}

    # --- конструкторы ---

    @classmethod
    def from_brackets(cls, labels: Sequence[str], brackets: Mapping[Tuple[str, str], Mapping[str, ScalarLike]],
                      field: Optional[str] = None,
                      conjugation: Optional[Mapping[str, Mapping[str, ScalarLike]]] = None,
                      name: str = "") -> "LieAlgebra":
        """Строит алгебру по ненулевым скобкам; (j, i) достраивается антисимметрией.

        Args:
            labels: Метки базиса.
            brackets: {(a, b): {c: коэффициент}}, коэффициенты скаляры или строки.
            field: "Q" или "QI"; по умолчанию выводится из коэффициентов.
            conjugation: {a: {b: коэффициент}} – образ σ(e_a); отсутствующие метки
                переходят в себя.
            name: Имя для отчетов.

        Raises:
            InputError: Неизвестная метка или противоречивые скобки (a, b) и (b, a).
        """
        n = len(labels)
        index = {label: k for k, label in enumerate(labels)}
        table = [[zero_vector(n) for _ in range(n)] for _ in range(n)]
        given = set()
        for (a, b), value in brackets.items():
            if a not in index or b not in index:
                raise InputError(f"Неизвестная метка в скобке [{a}, {b}]")
            i, j = index[a], index[b]
            v = [ZERO] * n
            for c, coeff in value.items():
                if c not in index:
                    raise InputError(f"Неизвестная метка {c} в значении [{a}, {b}]")
                v[index[c]] = v[index[c]] + to_scalar(coeff)
            v = tuple(v)
            if (j, i) in given:
                if table[i][j] != v:
                    raise InputError(f"Скобки [{a}, {b}] и [{b}, {a}] не антисимметричны")
                continue
            if i == j:
                if not is_zero_vector(v):
                    raise InputError(f"Ненулевая скобка [{a}, {a}]")
                continue
            table[i][j] = v
            table[j][i] = vscale(-1, v)
            given.add((i, j))
        sigma = None
        if conjugation is not None:
            columns = []
            for a in labels:
                image = conjugation.get(a, {a: 1})
                col = [ZERO] * n
                for c, coeff in image.items():
                    if c not in index:
                        raise InputError(f"Неизвестная метка {c} в сопряжении {a}")
                    col[index[c]] = to_scalar(coeff)
                columns.append(col)
            sigma = Matrix.from_columns(columns, n, TAG_QI)
        if field is None:
            field = field_of(x for row in table for v in row for x in v)
            if sigma is not None:
                field = TAG_QI
        return cls(labels, table, field, sigma, name)

    # --- базовые операции ---

    @property
    def dim(self) -> int:
        return len(self.labels)

    def index(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise InputError(f"Неизвестная метка базиса: {label}") from None

    def e(self, label: str) -> Vector:
        return unit_vector(self.dim, self.index(label))

    def vec(self, coeffs: Mapping[str, ScalarLike]) -> Vector:
        """Вектор по словарю {метка: коэффициент}."""
        v = [ZERO] * self.dim
        for label, c in coeffs.items():
            k = self.index(label)
            v[k] = v[k] + to_scalar(c)
        return tuple(v)

    def zero(self) -> Vector:
        return zero_vector(self.dim)

    def format(self, v: Sequence[Scalar]) -> Dict[str, str]:
        return format_vector(v, self.labels)

    def bracket(self, x: Sequence[Scalar], y: Sequence[Scalar]) -> Vector:
        n = self.dim
        acc = [ZERO] * n
        xs = [(i, c) for i, c in enumerate(x) if not c.is_zero()]
        ys = [(j, c) for j, c in enumerate(y) if not c.is_zero()]
        for i, a in xs:
            row = self.table[i]
            for j, b in ys:
                v = row[j]
                ab = None
                for k, t in enumerate(v):
                    if t.is_zero():
                        continue
                    if ab is None:
                        ab = a * b
                    acc[k] = acc[k] + ab * t
        return tuple(acc)

    def ad(self, x: Sequence[Scalar]) -> Matrix:
        """Матрица ad(x) в базисе алгебры (столбец j равен [x, e_j])."""
        n = self.dim
        columns = [self.bracket(x, unit_vector(n, j)) for j in range(n)]
        field = TAG_QI if self.field == TAG_QI else field_of(c for col in columns for c in col)
        return Matrix.from_columns(columns, n, field)

    def conj(self, v: Sequence[Scalar]) -> Vector:
        """σ(v); для алгебры без сопряжения – покоординатное сопряжение."""
        if self.conjugation is None:
            return vconj(v)
        return self.conjugation.apply(vconj(v))

    def conj_subspace(self, s: Subspace) -> Subspace:
        return Subspace.span([self.conj(v) for v in s.basis], self.dim)

    def span(self, vectors: Iterable[Sequence[Scalar]]) -> Subspace:
        return Subspace.span(list(vectors), self.dim)

    def bracket_space(self, a: Subspace, b: Subspace) -> Subspace:
        """Линейная оболочка [a, b]."""
        return self.span(self.bracket(x, y) for x in a.basis for y in b.basis)

    def structure_constants(self) -> Dict[Tuple[str, str], Dict[str, str]]:
        """Ненулевые скобки (i < j) в формате меток и строк-скаляров."""
        result = {}
        for i in range(self.dim):
            for j in range(i + 1, self.dim):
                v = self.table[i][j]
                if not is_zero_vector(v):
                    result[(self.labels[i], self.labels[j])] = self.format(v)
        return result

    def same_structure(self, other: "LieAlgebra") -> bool:
        """Совпадение меток и таблиц скобок коэффициент в коэффициент."""
        return self.labels == other.labels and self.table == other.table

    def __repr__(self):
        return f"LieAlgebra({self.name or 'anonymous'}, dim={self.dim}, field={self.field})"

    # --- JSON ---

    def to_json_dict(self) -> Dict:
        brackets = [
            {"i": a, "j": b, "value": value}
            for (a, b), value in self.structure_constants().items()
        ]
        d = {"field": "Qi" if self.field == TAG_QI else "Q", "basis": list(self.labels), "brackets": brackets}
        if self.conjugation is not None:
            d["conjugation"] = {
                self.labels[j]: self.format(self.conjugation.column(j)) for j in range(self.dim)
            }
        if self.name:
            d["name"] = self.name
        return d

    @classmethod
    def from_json_dict(cls, data: Mapping) -> "LieAlgebra":
        """Разбирает JSON-описание {"field", "basis", "brackets", "conjugation"}.

        Raises:
            InputError: Отсутствуют обязательные поля или неизвестно поле скаляров.
        """
        try:
            field = JSON_FIELDS[data.get("field", "Q")]
            labels = list(data["basis"])
            brackets = {(b["i"], b["j"]): b["value"] for b in data.get("brackets", [])}
        except KeyError as exc:
            raise InputError(f"Некорректное описание алгебры Ли: нет поля {exc}") from exc
        algebra = cls.from_brackets(labels, brackets, field=field, conjugation=data.get("conjugation"),
                                    name=data.get("name", ""))
        return algebra


# --- проверка аксиом ---

def jacobiator(L: LieAlgebra, a: Sequence[Scalar], b: Sequence[Scalar], c: Sequence[Scalar]) -> Vector:
    """[a,[b,c]] + [b,[c,a]] + [c,[a,b]]."""
    s = L.bracket(a, L.bracket(b, c))
    s = vadd(s, L.bracket(b, L.bracket(c, a)))
    return vadd(s, L.bracket(c, L.bracket(a, b)))


def validate(L: LieAlgebra, degrees: Optional[Sequence[int]] = None,
             degree_bound: Optional[int] = None) -> ValidationReport:
    """Проверяет антисимметрию, тождество Якоби и аксиомы сопряжения.

    Args:
        L: Алгебра Ли.
        degrees: Степени базисных векторов (для усеченных алгебр).
        degree_bound: Тройки, у которых сумма степеней или степень одной из
            попарных скобок больше границы, пропускаются.

    Returns:
        Отчет; при провале содержит первую нарушенную тройку и якобиатор.
    """
    report = ValidationReport(title=f"validate {L.name}".strip())
    n = L.dim
    bad_antisym = None
    for i in range(n):
        if not is_zero_vector(L.table[i][i]):
            bad_antisym = (L.labels[i], L.labels[i])
            break
        for j in range(i + 1, n):
            if not is_zero_vector(vadd(L.table[i][j], L.table[j][i])):
                bad_antisym = (L.labels[i], L.labels[j])
                break
        if bad_antisym:
            break
    report.add("antisymmetry", bad_antisym is None, pair=list(bad_antisym) if bad_antisym else None)

    skipped = 0
    violation = None
    basis = [unit_vector(n, k) for k in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                if degrees is not None and degree_bound is not None and max(
                        degrees[i] + degrees[j] + degrees[k], degrees[i] + degrees[j],
                        degrees[i] + degrees[k], degrees[j] + degrees[k]) > degree_bound:
                    skipped += 1
                    continue
                jac = jacobiator(L, basis[i], basis[j], basis[k])
                if not is_zero_vector(jac):
                    violation = ([L.labels[i], L.labels[j], L.labels[k]], L.format(jac))
                    break
            if violation:
                break
        if violation:
            break
    if violation:
        report.violating_triple, report.jacobiator = violation
        logger.debug(f"Нарушение тождества Якоби в {L.name}: {violation}")
    report.add("jacobi", violation is None, skipped_triples=skipped,
               triple=violation[0] if violation else None)

    if L.conjugation is not None:
        S = L.conjugation
        involution = all(L.conj(L.conj(v)) == v for v in basis)
        report.add("conjugation_involution", involution)
        bad_pair = None
        for i in range(n):
            for j in range(i + 1, n):
                lhs = L.conj(L.table[i][j])
                rhs = L.bracket(S.column(i), S.column(j))
                if lhs != rhs:
                    bad_pair = [L.labels[i], L.labels[j]]
                    break
            if bad_pair:
                break
        report.add("conjugation_homomorphism", bad_pair is None, pair=bad_pair)
    return report


def complexify(L: LieAlgebra) -> LieAlgebra:
    """Комплексификация вещественной алгебры с покоординатным сопряжением.

    Raises:
        InputError: Алгебра уже задана над ℚ(i).
    """
    if L.field != TAG_Q:
        raise InputError(f"Алгебра {L.name} уже комплексная")
    table = [[tuple(x.promote(TAG_QI) for x in v) for v in row] for row in L.table]
    sigma = Matrix.identity(L.dim, TAG_QI)
    return LieAlgebra(L.labels, table, TAG_QI, sigma, f"{L.name}^C" if L.name else "")


# --- подалгебры ---

def subalgebra_closure(L: LieAlgebra, gens: Iterable[Sequence[Scalar]]) -> Tuple[Subspace, bool]:
    """Наименьшая замкнутая относительно скобки оболочка образующих.

    Returns:
        Пара (подпространство, замкнута ли уже оболочка образующих).
    """
    start = L.span(gens)
    current = start
    while True:
        new = [L.bracket(x, y) for idx, x in enumerate(current.basis) for y in current.basis[idx + 1:]]
        extended = current.sum(L.span(new)) if new else current
        if extended == current:
            break
        current = extended
    return current, current == start


def is_subalgebra(L: LieAlgebra, s: Subspace) -> bool:
    return all(s.contains(L.bracket(x, y)) for idx, x in enumerate(s.basis) for y in s.basis[idx + 1:])


def is_ideal(L: LieAlgebra, s: Subspace) -> bool:
    return all(s.contains(L.bracket(unit_vector(L.dim, k), v)) for k in range(L.dim) for v in s.basis)


def derived_series(L: LieAlgebra) -> List[Subspace]:
    """g ⊇ [g,g] ⊇ … до стабилизации."""
    current = Subspace.full(L.dim)
    series = [current]
    while True:
        nxt = L.bracket_space(current, current)
        if nxt == current:
            return series
        series.append(nxt)
        current = nxt


def lower_central_series(L: LieAlgebra) -> List[Subspace]:
    full = Subspace.full(L.dim)
    current = full
    series = [current]
    while True:
        nxt = L.bracket_space(full, current)
        if nxt == current:
            return series
        series.append(nxt)
        current = nxt


def bracket_kernel(L: LieAlgebra, basis: Sequence[Sequence[Scalar]], others: Sequence[Sequence[Scalar]],
                   target: Subspace) -> Subspace:
    """{ξ ∈ span(basis) : [ξ, o] ∈ target для всех o ∈ others}."""
    basis = [tuple(b) for b in basis]
    if not basis:
        return Subspace.zero(L.dim)
    rows: List[List[Scalar]] = []
    for o in others:
        images = [target.reduce(L.bracket(b, o)) for b in basis]
        for k in range(L.dim):
            row = [img[k] for img in images]
            if not all(x.is_zero() for x in row):
                rows.append(row)
    kernel = kernel_vectors(rows, len(basis))
    return L.span(lin_comb(c, basis, L.dim) for c in kernel)


def restrict(L: LieAlgebra, vectors: Sequence[Sequence[Scalar]], labels: Sequence[str],
             name: str = "") -> LieAlgebra:
    """Структурные константы подалгебры в выбранном базисе.

    Сопряжение переносится, если оболочка σ-устойчива.

    Raises:
        InputError: Векторы зависимы или их оболочка не замкнута.
    """
    frame = Frame(vectors, L.dim)
    m = len(frame)
    if len(labels) != m:
        raise InputError(f"{len(labels)} меток для {m} векторов")
    table = [[zero_vector(m) for _ in range(m)] for _ in range(m)]
    for i in range(m):
        for j in range(i + 1, m):
            w = L.bracket(frame.vectors[i], frame.vectors[j])
            coords = frame.try_coordinates(w)
            if coords is None:
                raise InputError(f"Оболочка не замкнута: [{labels[i]}, {labels[j]}] вне нее")
            table[i][j] = coords
            table[j][i] = vscale(-1, coords)
    sigma = None
    if L.conjugation is not None:
        columns = [frame.try_coordinates(L.conj(v)) for v in frame.vectors]
        if all(c is not None for c in columns):
            sigma = Matrix.from_columns(columns, m, TAG_QI)
    field = TAG_QI if L.field == TAG_QI else field_of(x for row in table for v in row for x in v)
    return LieAlgebra(labels, table, field, sigma, name)


# --- спектр ---

def ad_spectrum(L: LieAlgebra, x: Sequence[Scalar]) -> List[Tuple[Scalar, Subspace]]:
    """Собственные значения и подпространства ad(x).

    Raises:
        NotSplitError: Характеристический многочлен ad(x) не раскладывается над
            полем скаляров или ad(x) не диагонализуем.
    """
    return matrix_spectrum(L.ad(x))


# --- градуировки и фильтрации ---

class Grading:
    """ℤ-градуировка базисных векторов алгебры."""

    def __init__(self, algebra: LieAlgebra, degrees: Sequence[int]):
        if len(degrees) != algebra.dim:
            raise InputError(f"{len(degrees)} степеней для алгебры размерности {algebra.dim}")
        self.algebra = algebra
        self.degrees = [int(d) for d in degrees]

    @classmethod
    def from_labels(cls, algebra: LieAlgebra, degrees: Mapping[str, int]) -> "Grading":
        return cls(algebra, [degrees[label] for label in algebra.labels])

    def degree_set(self) -> List[int]:
        return sorted(set(self.degrees))

    def component(self, p: int) -> Subspace:
        n = self.algebra.dim
        return Subspace.span([unit_vector(n, k) for k, d in enumerate(self.degrees) if d == p], n)

    def component_indices(self, p: int) -> List[int]:
        return [k for k, d in enumerate(self.degrees) if d == p]

    def check(self) -> Optional[Tuple[str, str]]:
        """Первая пара базисных векторов, нарушающая [g_p, g_q] ⊆ g_{p+q}, или None."""
        L = self.algebra
        for i in range(L.dim):
            for j in range(i + 1, L.dim):
                target = self.degrees[i] + self.degrees[j]
                for k, t in enumerate(L.table[i][j]):
                    if not t.is_zero() and self.degrees[k] != target:
                        return (L.labels[i], L.labels[j])
        return None

    def is_valid(self) -> bool:
        return self.check() is None

    def grading_element_action(self) -> Matrix:
        """Диагональная матрица действия элемента градуировки."""
        n = self.algebra.dim
        return Matrix([[Scalar(self.degrees[i]) if i == j else ZERO for j in range(n)] for i in range(n)], n,
                      self.algebra.field)

    def filtration(self) -> "Filtration":
        """Естественная фильтрация g^p = ⊕_{j ≥ p} g_j."""
        n = self.algebra.dim
        lo, hi = min(self.degrees), max(self.degrees)
        terms = {}
        for p in range(lo, hi + 1):
            terms[p] = Subspace.span([unit_vector(n, k) for k, d in enumerate(self.degrees) if d >= p], n)
        return Filtration(self.algebra, terms)

    def negative_part(self) -> List[int]:
        return [k for k, d in enumerate(self.degrees) if d < 0]


class Filtration:
    """Убывающая фильтрация g^p с явными границами p_min и p_max.

    terms(p) = g при p < p_min и terms(p) = 0 при p > p_max. Если рекурсия
    остановилась раньше (stable_bottom или stable_top), за границей
    повторяется крайний член.
    """

    def __init__(self, algebra: LieAlgebra, terms: Mapping[int, Subspace], stable_top: bool = False,
                 stable_bottom: bool = False):
        if not terms:
            raise InputError("Пустая фильтрация")
        self.algebra = algebra
        self.terms = dict(terms)
        self.p_min = min(self.terms)
        self.p_max = max(self.terms)
        reached_zero = self.terms[self.p_max].dim == 0
        # обрезаем нулевые члены сверху
        while self.p_max > self.p_min and self.terms[self.p_max].dim == 0:
            del self.terms[self.p_max]
            self.p_max -= 1
        self.stable_top = stable_top and not reached_zero
        self.stable_bottom = stable_bottom and self.terms[self.p_min].dim < algebra.dim

    def term(self, p: int) -> Subspace:
        if p < self.p_min:
            return self.terms[self.p_min] if self.stable_bottom else Subspace.full(self.algebra.dim)
        if p > self.p_max:
            return self.terms[self.p_max] if self.stable_top else Subspace.zero(self.algebra.dim)
        return self.terms[p]

    def dims(self) -> Dict[int, int]:
        return {p: self.terms[p].dim for p in sorted(self.terms)}

    def is_decreasing(self) -> bool:
        return all(self.term(p).contains_subspace(self.term(p + 1)) for p in range(self.p_min - 1, self.p_max + 1))

    def compatibility_violation(self) -> Optional[Tuple[int, int]]:
        """Первая пара (p, q), для которой [g^p, g^q] ⊄ g^{p+q}, или None."""
        L = self.algebra
        for p in range(self.p_min, self.p_max + 1):
            for q in range(p, self.p_max + 1):
                target = self.term(p + q)
                for x in self.term(p).basis:
                    for y in self.term(q).basis:
                        if not target.contains(L.bracket(x, y)):
                            return (p, q)
        return None

    def is_compatible(self) -> bool:
        return self.compatibility_violation() is None


def graded_from_filtration(F: Filtration) -> Grading:
    """gr(g) = ⊕ g^p/g^{p+1} на детерминированно выбранных дополнениях.

    Дополнения выбираются из ступенчатого базиса g^p в порядке возрастания p.
    Метка подъема совпадает с исходной, если подъем – базисный вектор, иначе
    имеет вид "g{p}[{a}]".

    Returns:
        Градуировка новой алгебры gr(g).

    Raises:
        FiltrationError: Фильтрация не согласована со скобкой или не убывает.
    """
    if not F.is_decreasing():
        raise FiltrationError("Члены фильтрации не убывают")
    violation = F.compatibility_violation()
    if violation is not None:
        raise FiltrationError(f"[g^{violation[0]}, g^{violation[1]}] не лежит в g^{violation[0] + violation[1]}")
    L = F.algebra
    n = L.dim
    lifts: List[Vector] = []
    degrees: List[int] = []
    labels: List[str] = []
    for p in range(F.p_min, F.p_max + 1):
        upper = F.term(p + 1)
        chosen = upper
        count = 0
        for v in F.term(p).basis:
            if chosen.contains(v):
                continue
            chosen = chosen.sum(Subspace.span([v], n))
            lifts.append(v)
            degrees.append(p)
            nonzero = [k for k, x in enumerate(v) if not x.is_zero()]
            if len(nonzero) == 1 and v[nonzero[0]] == ONE:
                labels.append(L.labels[nonzero[0]])
            else:
                labels.append(f"g{p}[{count}]")
            count += 1
    if len(lifts) != n:
        raise FiltrationError(f"Фильтрация не исчерпывает алгебру: {len(lifts)} из {n}")
    frame = Frame(lifts, n)
    table = [[zero_vector(n) for _ in range(n)] for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            target = degrees[i] + degrees[j]
            coords = frame.coordinates(L.bracket(lifts[i], lifts[j]))
            v = tuple(c if degrees[k] == target else ZERO for k, c in enumerate(coords))
            table[i][j] = v
            table[j][i] = vscale(-1, v)
    gr = LieAlgebra(labels, table, L.field, None, f"gr({L.name})" if L.name else "gr")
    logger.debug(f"gr: размерности компонент {[(p, degrees.count(p)) for p in sorted(set(degrees))]}")
    return Grading(gr, degrees)


def change_basis(L: LieAlgebra, vectors: Sequence[Sequence[Scalar]], labels: Sequence[str], name: str = "") -> LieAlgebra:
    """Та же алгебра в новом базисе (векторы должны образовывать базис)."""
    if len(vectors) != L.dim:
        raise InputError(f"Для замены базиса нужно {L.dim} векторов, получено {len(vectors)}")
    return restrict(L, vectors, labels, name)
