"""Точная арифметика над ℚ и ℚ(i) и точная линейная алгебра.

Модуль содержит скаляр `Scalar` (гауссово рациональное число как пара
несократимых дробей), плотные матрицы, приведение к ступенчатому виду,
ядра, канонические подпространства и спектры матриц с целыми гауссовыми
собственными значениями. Все значения неизменяемы.
"""
import logging
from fractions import Fraction
from math import lcm
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

from scripts.errors import InputError, NotSplitError

# Настройка логирования
logger = logging.getLogger(__name__)

# Теги полей
TAG_Q = "Q"
TAG_QI = "QI"
FIELD_TAGS = (TAG_Q, TAG_QI)


def _frac(value) -> Fraction:
    return value if type(value) is Fraction else Fraction(value)


class Scalar:
    """Число a + b·i с рациональными a, b.

    Тег поля `Q` допускается только при нулевой мнимой части. Результат
    операции имеет тег `QI`, если он есть хотя бы у одного операнда.
    """

    __slots__ = ("re", "im", "tag")

    def __init__(self, re=0, im=0, tag: Optional[str] = None):
        re = _frac(re)
        im = _frac(im)
        if tag is None:
            tag = TAG_Q if im == 0 else TAG_QI
        elif tag not in FIELD_TAGS:
            raise InputError(f"Неизвестный тег поля: {tag!r}")
        elif tag == TAG_Q and im != 0:
            raise InputError(f"Мнимая часть {im} у скаляра над ℚ")
        object.__setattr__(self, "re", re)
        object.__setattr__(self, "im", im)
        object.__setattr__(self, "tag", tag)

    def __setattr__(self, name, value):
        raise AttributeError("Scalar неизменяем")

    # --- разбор и печать ---

    @classmethod
    def parse(cls, text: str) -> "Scalar":
        """Разбирает строку формата "a/b" или "a/b+c/d*i".

        Args:
            text: Строка, например "-1/2*i", "3", "1/2-1/3*i", "i".

        Returns:
            Соответствующий скаляр.

        Raises:
            InputError: Строка не соответствует формату.
        """
        if not isinstance(text, str):
            raise InputError(f"Ожидалась строка, получено {type(text).__name__}")
        s = text.strip().replace(" ", "")
        if not s:
            raise InputError("Пустая строка вместо скаляра")
        try:
            if not s.endswith("i"):
                return cls(Fraction(s))
            body = s[:-1]
            if body.endswith("*"):
                body = body[:-1]
            split = max(body.rfind("+"), body.rfind("-"))
            if split > 0:
                re_part, im_part = body[:split], body[split:]
            else:
                re_part, im_part = "", body
            if im_part in ("", "+"):
                im = Fraction(1)
            elif im_part == "-":
                im = Fraction(-1)
            else:
                im = Fraction(im_part)
            re = Fraction(re_part) if re_part else Fraction(0)
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"Некорректный скаляр {text!r}: {exc}") from exc
        return cls(re, im, TAG_QI)

    def __str__(self) -> str:
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return f"{self.im}*i"
        sign = "+" if self.im > 0 else "-"
        return f"{self.re}{sign}{abs(self.im)}*i"

    def __repr__(self) -> str:
        return f"Scalar('{self}')"

    # --- предикаты ---

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def is_real(self) -> bool:
        return self.im == 0

    def __bool__(self) -> bool:
        return not self.is_zero()

    def conj(self) -> "Scalar":
        if self.im == 0:
            return self
        return Scalar(self.re, -self.im, self.tag)

    def promote(self, tag: str) -> "Scalar":
        """Тот же скаляр с тегом `tag` (только расширение ℚ → ℚ(i))."""
        if tag == self.tag:
            return self
        return Scalar(self.re, self.im, tag)

    def norm(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    # --- арифметика ---

    @staticmethod
    def _coerce(other) -> Optional["Scalar"]:
        if isinstance(other, Scalar):
            return other
        if isinstance(other, (int, Fraction)):
            return Scalar(other)
        return None

    def _tag_with(self, other: "Scalar") -> str:
        return TAG_QI if TAG_QI in (self.tag, other.tag) else TAG_Q

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Scalar(self.re + o.re, self.im + o.im, self._tag_with(o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Scalar(self.re - o.re, self.im - o.im, self._tag_with(o))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __neg__(self):
        return Scalar(-self.re, -self.im, self.tag)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        tag = self._tag_with(o)
        if self.im == 0 and o.im == 0:
            return Scalar(self.re * o.re, 0, tag)
        return Scalar(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re, tag)

    __rmul__ = __mul__

    def inverse(self) -> "Scalar":
        if self.is_zero():
            raise ZeroDivisionError("Деление на нулевой скаляр")
        if self.im == 0:
            return Scalar(1 / self.re, 0, self.tag)
        n = self.norm()
        return Scalar(self.re / n, -self.im / n, self.tag)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int):
            return NotImplemented
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = Scalar(1, 0, self.tag)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))


ScalarLike = Union[Scalar, int, Fraction, str]

ZERO = Scalar(0)
ONE = Scalar(1)
I = Scalar(0, 1)
HALF = Scalar(Fraction(1, 2))


def to_scalar(value: ScalarLike) -> Scalar:
    """Приводит int, Fraction или строку формата скаляра к `Scalar`."""
    if isinstance(value, Scalar):
        return value
    if isinstance(value, str):
        return Scalar.parse(value)
    if isinstance(value, bool):
        raise InputError("bool не является скаляром")
    if isinstance(value, (int, Fraction)):
        return Scalar(value)
    raise InputError(f"Не удается привести {value!r} к скаляру")


def field_of(values: Iterable[Scalar]) -> str:
    """Наименьшее поле, содержащее все значения."""
    for v in values:
        if v.tag == TAG_QI:
            return TAG_QI
    return TAG_Q


# --- векторы ---

Vector = Tuple[Scalar, ...]


def zero_vector(n: int) -> Vector:
    return (ZERO,) * n


def unit_vector(n: int, index: int) -> Vector:
    return tuple(ONE if k == index else ZERO for k in range(n))


def vec(values: Iterable[ScalarLike]) -> Vector:
    return tuple(to_scalar(v) for v in values)


def vadd(a: Sequence[Scalar], b: Sequence[Scalar]) -> Vector:
    return tuple(x + y for x, y in zip(a, b))


def vsub(a: Sequence[Scalar], b: Sequence[Scalar]) -> Vector:
    return tuple(x - y for x, y in zip(a, b))


def vscale(c: ScalarLike, a: Sequence[Scalar]) -> Vector:
    c = to_scalar(c)
    if c.is_zero():
        return zero_vector(len(a))
    return tuple(c * x for x in a)


def vconj(a: Sequence[Scalar]) -> Vector:
    return tuple(x.conj() for x in a)


def is_zero_vector(a: Sequence[Scalar]) -> bool:
    return all(x.is_zero() for x in a)


def lin_comb(coeffs: Sequence[ScalarLike], vectors: Sequence[Sequence[Scalar]], n: Optional[int] = None) -> Vector:
    """Линейная комбинация Σ cᵢ·vᵢ."""
    if n is None:
        if not vectors:
            raise InputError("Пустая линейная комбинация без размерности")
        n = len(vectors[0])
    acc = [ZERO] * n
    for c, v in zip(coeffs, vectors):
        c = to_scalar(c)
        if c.is_zero():
            continue
        for k, x in enumerate(v):
            if not x.is_zero():
                acc[k] = acc[k] + c * x
    return tuple(acc)


def dot(a: Sequence[Scalar], b: Sequence[Scalar]) -> Scalar:
    acc = ZERO
    for x, y in zip(a, b):
        if not x.is_zero() and not y.is_zero():
            acc = acc + x * y
    return acc


def format_vector(v: Sequence[Scalar], labels: Sequence[str]) -> Dict[str, str]:
    """Ненулевые координаты вектора в формате {метка: "скаляр"}."""
    return {labels[k]: str(x) for k, x in enumerate(v) if not x.is_zero()}


# --- матрицы ---

class Matrix:
    """Плотная матрица над одним полем.

    Все элементы имеют общий тег поля. Без явного `field` тег выводится из
    элементов, и смешение тегов считается ошибкой.
    """

    __slots__ = ("rows", "ncols", "field")

    def __init__(self, rows: Sequence[Sequence[ScalarLike]], ncols: Optional[int] = None,
                 field: Optional[str] = None):
        converted = tuple(tuple(to_scalar(x) for x in row) for row in rows)
        if ncols is None:
            ncols = len(converted[0]) if converted else 0
        for row in converted:
            if len(row) != ncols:
                raise InputError(f"Строка длины {len(row)} в матрице с {ncols} столбцами")
        tags = {x.tag for row in converted for x in row}
        if field is None:
            if len(tags) > 1:
                raise InputError("Элементы матрицы из разных полей (Q и QI)")
            field = tags.pop() if tags else TAG_Q
        elif field not in FIELD_TAGS:
            raise InputError(f"Неизвестный тег поля: {field!r}")
        elif field == TAG_Q and any(not x.is_real() for row in converted for x in row):
            raise InputError("Комплексный элемент в матрице над ℚ")
        converted = tuple(tuple(x.promote(field) for x in row) for row in converted)
        object.__setattr__(self, "rows", converted)
        object.__setattr__(self, "ncols", ncols)
        object.__setattr__(self, "field", field)

    def __setattr__(self, name, value):
        raise AttributeError("Matrix неизменяема")

    @classmethod
    def identity(cls, n: int, field: str = TAG_Q) -> "Matrix":
        return cls([unit_vector(n, k) for k in range(n)], n, field)

    @classmethod
    def zeros(cls, nrows: int, ncols: int, field: str = TAG_Q) -> "Matrix":
        return cls([zero_vector(ncols) for _ in range(nrows)], ncols, field)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[Scalar]], nrows: int, field: Optional[str] = None) -> "Matrix":
        return cls([[col[r] for col in columns] for r in range(nrows)], len(columns), field)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def shape(self) -> Tuple[int, int]:
        return (len(self.rows), self.ncols)

    def __getitem__(self, pos: Tuple[int, int]) -> Scalar:
        r, c = pos
        return self.rows[r][c]

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.ncols == other.ncols and self.rows == other.rows

    def __hash__(self):
        return hash((self.ncols, self.rows))

    def __repr__(self):
        body = "; ".join(", ".join(str(x) for x in row) for row in self.rows)
        return f"Matrix([{body}])"

    def column(self, c: int) -> Vector:
        return tuple(row[c] for row in self.rows)

    def transpose(self) -> "Matrix":
        return Matrix([self.column(c) for c in range(self.ncols)], self.nrows, self.field)

    def apply(self, v: Sequence[Scalar]) -> Vector:
        if len(v) != self.ncols:
            raise InputError(f"Вектор длины {len(v)} для матрицы с {self.ncols} столбцами")
        return tuple(dot(row, v) for row in self.rows)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.ncols != other.nrows:
            raise InputError(f"Несогласованные размеры {self.shape} и {other.shape}")
        cols = [other.column(c) for c in range(other.ncols)]
        field = TAG_QI if TAG_QI in (self.field, other.field) else TAG_Q
        return Matrix([[dot(row, col) for col in cols] for row in self.rows], other.ncols, field)

    def __add__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise InputError(f"Несогласованные размеры {self.shape} и {other.shape}")
        field = TAG_QI if TAG_QI in (self.field, other.field) else TAG_Q
        return Matrix([vadd(a, b) for a, b in zip(self.rows, other.rows)], self.ncols, field)

    def __sub__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise InputError(f"Несогласованные размеры {self.shape} и {other.shape}")
        field = TAG_QI if TAG_QI in (self.field, other.field) else TAG_Q
        return Matrix([vsub(a, b) for a, b in zip(self.rows, other.rows)], self.ncols, field)

    def scale(self, c: ScalarLike) -> "Matrix":
        c = to_scalar(c)
        field = TAG_QI if TAG_QI in (self.field, c.tag) else TAG_Q
        return Matrix([vscale(c, row) for row in self.rows], self.ncols, field)

    def trace(self) -> Scalar:
        acc = ZERO
        for k in range(min(self.nrows, self.ncols)):
            acc = acc + self.rows[k][k]
        return acc

    def is_zero(self) -> bool:
        return all(is_zero_vector(row) for row in self.rows)


def matrix_of(rows: Sequence[Sequence[Scalar]], ncols: int) -> Matrix:
    """Матрица из строк произвольных тегов с продвижением к общему полю."""
    field = field_of(x for row in rows for x in row)
    return Matrix(rows, ncols, field)


# --- приведение к ступенчатому виду ---

def _rref_rows(rows: Sequence[Sequence[Scalar]], ncols: int) -> Tuple[List[List[Scalar]], int, List[int]]:
    m = [list(r) for r in rows]
    pivots: List[int] = []
    r = 0
    nrows = len(m)
    for c in range(ncols):
        if r == nrows:
            break
        piv = None
        for i in range(r, nrows):
            if not m[i][c].is_zero():
                piv = i
                break
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        lead = m[r][c]
        if lead != ONE:
            inv = lead.inverse()
            m[r] = [x if x.is_zero() else x * inv for x in m[r]]
        pivot_row = m[r]
        for i in range(nrows):
            if i == r:
                continue
            f = m[i][c]
            if f.is_zero():
                continue
            m[i] = [a if b.is_zero() else a - f * b for a, b in zip(m[i], pivot_row)]
        pivots.append(c)
        r += 1
    return m[:r], r, pivots


def rref(m: Matrix) -> Tuple[Matrix, int, List[int]]:
    """Приведенный ступенчатый вид матрицы.

    Args:
        m: Матрица над ℚ или ℚ(i).

    Returns:
        Кортеж (матрица в приведенном ступенчатом виде того же размера, ранг,
        список столбцов с ведущими элементами).
    """
    if not isinstance(m, Matrix):
        m = Matrix(m)
    rows, rank, pivots = _rref_rows(m.rows, m.ncols)
    padded = rows + [list(zero_vector(m.ncols)) for _ in range(m.nrows - rank)]
    return Matrix(padded, m.ncols, m.field), rank, pivots


def rank(m: Matrix) -> int:
    return rref(m)[1]


def _kernel_vectors(rows: Sequence[Sequence[Scalar]], ncols: int) -> List[Vector]:
    reduced, r, pivots = _rref_rows(rows, ncols)
    pivot_set = set(pivots)
    basis = []
    for f in range(ncols):
        if f in pivot_set:
            continue
        v = [ZERO] * ncols
        v[f] = ONE
        for i, p in enumerate(pivots):
            v[p] = -reduced[i][f]
        basis.append(tuple(v))
    return basis


def kernel_vectors(rows: Sequence[Sequence[Scalar]], ncols: int) -> List[Vector]:
    """Базис ядра системы строк (без канонизации)."""
    return _kernel_vectors(rows, ncols)


def nullspace(m: Matrix) -> "Subspace":
    """Ядро {v : m·v = 0} как каноническое подпространство."""
    if not isinstance(m, Matrix):
        m = Matrix(m)
    return Subspace.span(_kernel_vectors(m.rows, m.ncols), m.ncols)


def solve(m: Matrix, b: Sequence[ScalarLike]) -> Optional[Vector]:
    """Одно решение системы m·x = b или None, если система несовместна."""
    if not isinstance(m, Matrix):
        m = Matrix(m)
    b = vec(b)
    if len(b) != m.nrows:
        raise InputError(f"Правая часть длины {len(b)} для {m.nrows} уравнений")
    n = m.ncols
    augmented = [list(row) + [rhs] for row, rhs in zip(m.rows, b)]
    reduced, r, pivots = _rref_rows(augmented, n + 1)
    if pivots and pivots[-1] == n:
        return None
    x = [ZERO] * n
    for i, p in enumerate(pivots):
        x[p] = reduced[i][n]
    return tuple(x)


# --- подпространства ---

class Subspace:
    """Подпространство, заданное приведенным ступенчатым базисом.

    Два равных подпространства имеют побитово одинаковые базисы, поэтому
    подпространства можно сравнивать и использовать как ключи словарей.
    """

    __slots__ = ("ambient_dim", "basis", "pivots")

    def __init__(self, ambient_dim: int, basis: Sequence[Sequence[Scalar]], pivots: Sequence[int]):
        object.__setattr__(self, "ambient_dim", ambient_dim)
        object.__setattr__(self, "basis", tuple(tuple(row) for row in basis))
        object.__setattr__(self, "pivots", tuple(pivots))

    def __setattr__(self, name, value):
        raise AttributeError("Subspace неизменяемо")

    @classmethod
    def span(cls, vectors: Iterable[Sequence[Scalar]], ambient_dim: int) -> "Subspace":
        rows = []
        for v in vectors:
            if len(v) != ambient_dim:
                raise InputError(f"Вектор длины {len(v)} в пространстве размерности {ambient_dim}")
            rows.append(v)
        reduced, _, pivots = _rref_rows(rows, ambient_dim)
        return cls(ambient_dim, reduced, pivots)

    @classmethod
    def zero(cls, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, (), ())

    @classmethod
    def full(cls, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, [unit_vector(ambient_dim, k) for k in range(ambient_dim)], range(ambient_dim))

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __len__(self) -> int:
        return len(self.basis)

    def vectors(self) -> List[Vector]:
        return list(self.basis)

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ambient_dim == other.ambient_dim and self.basis == other.basis

    def __hash__(self):
        return hash((self.ambient_dim, self.basis))

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim})"

    def _check(self, other: "Subspace"):
        if self.ambient_dim != other.ambient_dim:
            raise InputError(f"Подпространства в разных пространствах: {self.ambient_dim} и {other.ambient_dim}")

    def reduce(self, v: Sequence[Scalar]) -> Vector:
        """Канонический представитель класса v по модулю подпространства."""
        if len(v) != self.ambient_dim:
            raise InputError(f"Вектор длины {len(v)} в пространстве размерности {self.ambient_dim}")
        w = list(v)
        for row, p in zip(self.basis, self.pivots):
            c = w[p]
            if c.is_zero():
                continue
            w = [a if b.is_zero() else a - c * b for a, b in zip(w, row)]
        return tuple(w)

    def contains(self, v: Sequence[Scalar]) -> bool:
        return is_zero_vector(self.reduce(v))

    def contains_subspace(self, other: "Subspace") -> bool:
        self._check(other)
        return all(self.contains(v) for v in other.basis)

    def coordinates(self, v: Sequence[Scalar]) -> Vector:
        """Координаты v в ступенчатом базисе."""
        if not self.contains(v):
            raise InputError("Вектор не лежит в подпространстве")
        return tuple(v[p] for p in self.pivots)

    def sum(self, other: "Subspace") -> "Subspace":
        self._check(other)
        return Subspace.span(list(self.basis) + list(other.basis), self.ambient_dim)

    def __add__(self, other: "Subspace") -> "Subspace":
        return self.sum(other)

    def intersection(self, other: "Subspace") -> "Subspace":
        self._check(other)
        if self.dim == 0 or other.dim == 0:
            return Subspace.zero(self.ambient_dim)
        n, a, b = self.ambient_dim, self.dim, other.dim
        rows = [[self.basis[i][k] for i in range(a)] + [-other.basis[j][k] for j in range(b)] for k in range(n)]
        kernel = _kernel_vectors(rows, a + b)
        vectors = [lin_comb(coeffs[:a], self.basis, n) for coeffs in kernel]
        return Subspace.span(vectors, n)

    def __and__(self, other: "Subspace") -> "Subspace":
        return self.intersection(other)

    def conjugate(self) -> "Subspace":
        """Покоординатное сопряжение."""
        return Subspace.span([vconj(v) for v in self.basis], self.ambient_dim)

    def is_conjugation_stable(self) -> bool:
        return self.conjugate() == self

    def real_basis(self) -> List[Vector]:
        """Рациональный базис вещественных точек σ-устойчивого подпространства.

        Сопряжение покоординатное. Для подпространства, не устойчивого
        относительно сопряжения, возвращается базис пересечения с
        сопряженным.
        """
        stable = self if self.is_conjugation_stable() else self.intersection(self.conjugate())
        candidates = []
        for v in stable.basis:
            candidates.append(tuple(Scalar(x.re, 0, TAG_QI) for x in v))
            candidates.append(tuple(Scalar(x.im, 0, TAG_QI) for x in v))
        reduced, _, _ = _rref_rows(candidates, self.ambient_dim)
        return [tuple(row) for row in reduced]

    def complement_basis(self) -> List[Vector]:
        """Координатное дополнение: единичные векторы непивотных столбцов."""
        pivot_set = set(self.pivots)
        return [unit_vector(self.ambient_dim, k) for k in range(self.ambient_dim) if k not in pivot_set]


def subspace_ops(a: Subspace, b: Subspace) -> Dict[str, object]:
    """Сумма, пересечение, вложение b ⊆ a и коразмерность суммы.

    Raises:
        InputError: Подпространства лежат в пространствах разной размерности.
    """
    a._check(b)
    total = a.sum(b)
    return {
        "sum": total,
        "intersection": a.intersection(b),
        "contains": a.contains_subspace(b),
        "quotient_dim": a.ambient_dim - total.dim,
    }


class Frame:
    """Координаты относительно фиксированного набора линейно независимых векторов."""

    def __init__(self, vectors: Sequence[Sequence[Scalar]], ambient_dim: Optional[int] = None):
        vectors = [tuple(v) for v in vectors]
        if ambient_dim is None:
            if not vectors:
                raise InputError("Пустой репер без размерности")
            ambient_dim = len(vectors[0])
        m = len(vectors)
        self.ambient_dim = ambient_dim
        self.vectors = vectors
        augmented = [list(v) + list(unit_vector(m, i)) for i, v in enumerate(vectors)]
        reduced, r, pivots = _rref_rows(augmented, ambient_dim + m)
        if r != m or (pivots and pivots[-1] >= ambient_dim):
            raise InputError("Векторы репера линейно зависимы")
        self._pivots = pivots
        self._transforms = [row[ambient_dim:] for row in reduced]
        self._space = Subspace(ambient_dim, [row[:ambient_dim] for row in reduced], pivots)

    @property
    def span(self) -> Subspace:
        return self._space

    def __len__(self) -> int:
        return len(self.vectors)

    def coordinates(self, v: Sequence[Scalar]) -> Vector:
        """Коэффициенты cᵢ разложения v = Σ cᵢ·vᵢ.

        Raises:
            InputError: v не лежит в линейной оболочке репера.
        """
        if not self._space.contains(v):
            raise InputError("Вектор не лежит в линейной оболочке репера")
        m = len(self.vectors)
        acc = [ZERO] * m
        for p, t in zip(self._pivots, self._transforms):
            c = v[p]
            if c.is_zero():
                continue
            for i in range(m):
                if not t[i].is_zero():
                    acc[i] = acc[i] + c * t[i]
        return tuple(acc)

    def try_coordinates(self, v: Sequence[Scalar]) -> Optional[Vector]:
        if not self._space.contains(v):
            return None
        return self.coordinates(v)


# --- характеристический многочлен и спектр ---

def char_poly(m: Matrix) -> List[Scalar]:
    """Коэффициенты c₀..cₙ многочлена det(λI − m) по Фаддееву–Леверье."""
    n = m.nrows
    if n != m.ncols:
        raise InputError(f"Характеристический многочлен неквадратной матрицы {m.shape}")
    coeffs = [ZERO] * (n + 1)
    coeffs[n] = ONE
    identity = Matrix.identity(n, m.field)
    current = Matrix.zeros(n, n, m.field)
    for k in range(1, n + 1):
        current = (m @ current) + identity.scale(coeffs[n - k + 1])
        coeffs[n - k] = -((m @ current).trace()) / k
    return coeffs


def _horner(coeffs: Sequence[Scalar], x: Scalar) -> Scalar:
    acc = ZERO
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def _deflate(coeffs: Sequence[Scalar], root: Scalar) -> List[Scalar]:
    """Деление многочлена на (λ − root) по схеме Горнера."""
    n = len(coeffs) - 1
    quotient = [ZERO] * n
    carry = ZERO
    for k in range(n, 0, -1):
        carry = carry * root + coeffs[k]
        quotient[k - 1] = carry
    return quotient


def _gaussian_integer_roots(coeffs: List[Scalar], bound: int) -> List[Tuple[Scalar, int]]:
    roots: List[Tuple[Scalar, int]] = []
    coeffs = list(coeffs)
    zero_mult = 0
    while len(coeffs) > 1 and coeffs[0].is_zero():
        coeffs = coeffs[1:]
        zero_mult += 1
    if zero_mult:
        roots.append((ZERO, zero_mult))
    constant_norm = coeffs[0].norm() if len(coeffs) > 1 else Fraction(0)
    for a in range(-bound, bound + 1):
        for b in range(-bound, bound + 1):
            if len(coeffs) == 1:
                return roots
            if a == 0 and b == 0:
                continue
            if a * a + b * b > bound * bound:
                continue
            if constant_norm and constant_norm.denominator == 1 and constant_norm.numerator % (a * a + b * b):
                continue
            x = Scalar(a, b)
            mult = 0
            while len(coeffs) > 1 and _horner(coeffs, x).is_zero():
                coeffs = _deflate(coeffs, x)
                mult += 1
            if mult:
                roots.append((x, mult))
    if len(coeffs) > 1:
        raise NotSplitError(f"Характеристический многочлен не раскладывается: остался множитель степени {len(coeffs) - 1}")
    return roots


def split_eigenvalues(m: Matrix) -> List[Tuple[Scalar, int]]:
    """Собственные значения с кратностями, если многочлен раскладывается над ℚ(i).

    Матрица домножается на общий знаменатель D; корни многочлена целой
    гауссовой матрицы, лежащие в ℚ(i), являются целыми гауссовыми числами
    и ищутся в круге Гершгорина.

    Raises:
        NotSplitError: Многочлен не раскладывается на линейные множители над ℚ(i).
    """
    denominators = [x.re.denominator for row in m.rows for x in row] + [x.im.denominator for row in m.rows for x in row]
    d = lcm(*denominators) if denominators else 1
    scaled = m.scale(d)
    coeffs = char_poly(scaled)
    bound = 0
    for row in scaled.rows:
        radius = sum(abs(x.re) + abs(x.im) for x in row)
        bound = max(bound, int(radius))
    roots = _gaussian_integer_roots(coeffs, bound)
    result = [(root / d, mult) for root, mult in roots]
    logger.debug(f"Спектр матрицы {m.shape}: {[(str(r), k) for r, k in result]}")
    return result


def matrix_spectrum(m: Matrix) -> List[Tuple[Scalar, Subspace]]:
    """Собственные значения и собственные подпространства диагонализуемой матрицы.

    Returns:
        Список пар (λ, собственное подпространство), упорядоченный по убыванию
        вещественной, затем мнимой части.

    Raises:
        NotSplitError: Многочлен не раскладывается или матрица не диагонализуема.
    """
    n = m.nrows
    eigen = split_eigenvalues(m)
    result = []
    total = 0
    for value, mult in eigen:
        shifted = m - Matrix.identity(n, m.field).scale(value)
        space = nullspace(shifted)
        if space.dim != mult:
            raise NotSplitError(f"Оператор не диагонализуем: λ = {value}, кратность {mult}, собственное подпространство размерности {space.dim}")
        total += space.dim
        result.append((value, space))
    if total != n:
        raise NotSplitError(f"Собственные подпространства дают {total} из {n}")
    result.sort(key=lambda pair: (-pair[0].re, -pair[0].im))
    return result
