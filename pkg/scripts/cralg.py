"""CR-алгебры (g, q): последовательность Фримена, формы Леви высших порядков,
контактная фильтрация и исполняемые проверки структурных утверждений.
"""
import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence

from scripts.errors import InputError
from scripts.data_structures import Report
from scripts.field import Scalar, Subspace, Vector, is_zero_vector, kernel_vectors, lin_comb, vscale
from scripts.liealg import Filtration, LieAlgebra, bracket_kernel, is_subalgebra, validate

# Настройка логирования
logger = logging.getLogger(__name__)


class CRAlgebra:
    """Пара (ĝ, q): комплексификация с сопряжением и комплексная подалгебра q.

    Args:
        ghat: Комплексная алгебра Ли; σ берется из ее матрицы сопряжения
            (или покоординатное сопряжение, если матрица не задана).
        q: Подпространство ĝ.
        g: Вещественная форма, если она задана отдельно.
        name: Имя для отчетов.
    """

    def __init__(self, ghat: LieAlgebra, q: Subspace, g: Optional[LieAlgebra] = None, name: str = ""):
        if q.ambient_dim != ghat.dim:
            raise InputError(f"q лежит в пространстве размерности {q.ambient_dim}, а dim ĝ = {ghat.dim}")
        self.ghat = ghat
        self.g = g
        self.q = q
        self.name = name or ghat.name
        self.sigma_q = ghat.conj_subspace(q)
        self.stab = q.intersection(self.sigma_q)

    @classmethod
    def from_generators(cls, ghat: LieAlgebra, generators: Sequence[Sequence[Scalar]], **kwargs) -> "CRAlgebra":
        return cls(ghat, ghat.span(generators), **kwargs)

    @property
    def q_plus_sigma_q(self) -> Subspace:
        return self.q.sum(self.sigma_q)

    def codimension(self) -> int:
        return self.ghat.dim - self.q_plus_sigma_q.dim

    def __repr__(self):
        return f"CRAlgebra({self.name}, dim ĝ={self.ghat.dim}, dim q={self.q.dim})"


def validate_cr(c: CRAlgebra) -> Report:
    """Проверяет замкнутость q, аксиомы σ и тип гиперповерхности.

    Returns:
        Отчет с пунктами и размерностями q, ŝtab, q + σq.
    """
    report = Report(title=f"validate_cr {c.name}".strip())
    report.add("q_subalgebra", is_subalgebra(c.ghat, c.q), dim_q=c.q.dim)
    base = validate(c.ghat)
    for name in ("conjugation_involution", "conjugation_homomorphism"):
        item = base.item(name)
        if item is not None:
            report.add(name, item.ok, **item.details)
    report.add("hypersurface_type", c.codimension() == 1, codimension=c.codimension())
    report.add("stab_sigma_stable", c.ghat.conj_subspace(c.stab) == c.stab)
    report.data.update({
        "dim_q": c.q.dim,
        "dim_stab": c.stab.dim,
        "dim_q_plus_sigma_q": c.q_plus_sigma_q.dim,
        "dim_ghat": c.ghat.dim,
    })
    return report


# --- последовательность Фримена ---

@dataclass
class FreemanSequence:
    terms: List[Subspace] # terms[0] = q^{-1} = q, terms[p + 1] = q^p
    stab: Subspace
    order_k: Optional[int] = None # наименьшее k с q^{k-1} = ŝtab

    @property
    def dims(self) -> List[int]:
        return [t.dim for t in self.terms]

    def term(self, p: int) -> Subspace:
        """q^p для p ≥ −1; за концом последовательности – последний член."""
        if p < -1:
            raise InputError(f"q^{p} не определено")
        idx = p + 1
        if idx < len(self.terms):
            return self.terms[idx]
        return self.terms[-1]

    @property
    def reaches_stab(self) -> bool:
        return self.order_k is not None


def freeman_sequence(c: CRAlgebra) -> FreemanSequence:
    """q^p = {ξ ∈ q^{p−1} : [ξ, σq] ⊆ q^{p−1} + σq} до стабилизации на ŝtab."""
    terms = [c.q]
    sigma_basis = c.sigma_q.basis
    while terms[-1] != c.stab:
        prev = terms[-1]
        nxt = bracket_kernel(c.ghat, prev.basis, sigma_basis, prev.sum(c.sigma_q))
        if nxt == prev:
            logger.warning(f"Последовательность Фримена {c.name} стабилизировалась вне ŝtab на размерности {prev.dim}")
            break
        terms.append(nxt)
    order = None
    for idx, t in enumerate(terms):
        if t == c.stab:
            order = idx
            break
    logger.debug(f"Фримен {c.name}: размерности {[t.dim for t in terms]}, k = {order}")
    return FreemanSequence(terms, c.stab, order)


def higher_levi(c: CRAlgebra, p: int, xi: Sequence[Scalar], eta: Sequence[Scalar],
                freeman: Optional[FreemanSequence] = None) -> Vector:
    """Класс −[ξ, η] по модулю q^{p−1} + σq.

    Args:
        c: CR-алгебра.
        p: Порядок, p ≥ 0.
        xi: Вектор из q^{p−1} + σq.
        eta: Вектор из σq.
        freeman: Готовая последовательность Фримена.

    Returns:
        Канонический представитель класса.

    Raises:
        InputError: Нарушены условия принадлежности.
    """
    if p < 0:
        raise InputError(f"Порядок формы Леви p = {p} < 0")
    freeman = freeman or freeman_sequence(c)
    modulus = freeman.term(p - 1).sum(c.sigma_q)
    if not modulus.contains(xi):
        raise InputError(f"ξ не лежит в q^{p - 1} + σq")
    if not c.sigma_q.contains(eta):
        raise InputError("η не лежит в σq")
    return modulus.reduce(vscale(-1, c.ghat.bracket(xi, eta)))


def levi_kernel_order(c: CRAlgebra) -> Optional[int]:
    """Порядок невырожденности через ядра форм Леви высших порядков.

    Член q^p находится как левое ядро higher_levi(p, ·, η) на q^{p−1} по всем
    η из базиса σq; порядок равен 1 + max{p : q^p ≠ ŝtab}.
    """
    current = c.q
    freeman_terms = [current]
    p = 0
    while current != c.stab:
        partial = FreemanSequence(list(freeman_terms), c.stab)
        rows = []
        basis = current.basis
        for eta in c.sigma_q.basis:
            images = [higher_levi(c, p, xi, eta, partial) for xi in basis]
            for k in range(c.ghat.dim):
                row = [img[k] for img in images]
                if not all(x.is_zero() for x in row):
                    rows.append(row)
        kernel = kernel_vectors(rows, len(basis))
        nxt = c.ghat.span(lin_comb(coeffs, basis, c.ghat.dim) for coeffs in kernel)
        if nxt == current:
            return None
        freeman_terms.append(nxt)
        current = nxt
        p += 1
    # p – первый индекс с q^{p−1} = ŝtab
    return p


# --- контактная фильтрация ---

@dataclass
class ContactFiltration:
    filtration: Filtration # члены ĝ^p
    bottom_is_full: bool # рекурсия вниз дала ĝ
    sigma_stable: Dict[int, bool] = field(default_factory=dict)

    def term(self, p: int) -> Subspace:
        return self.filtration.term(p)

    def dims(self) -> Dict[int, int]:
        return self.filtration.dims()

    @property
    def p_max(self) -> int:
        return self.filtration.p_max


def contact_filtration(c: CRAlgebra) -> ContactFiltration:
    """Контактная фильтрация на ĝ.

    ĝ^{−1} = q + σq; вниз ĝ^q = ĝ^{q+1} + [ĝ^{−1}, ĝ^{q+1}] до стабилизации;
    вверх ĝ^p = {ξ ∈ ĝ^{p−1} : [ξ, ĝ^{−1}] ⊆ ĝ^{p−1}} до нуля или стабилизации.
    """
    L = c.ghat
    g_minus_one = c.q_plus_sigma_q
    terms: Dict[int, Subspace] = {-1: g_minus_one}
    p = -1
    while True:
        nxt = terms[p].sum(L.bracket_space(g_minus_one, terms[p]))
        if nxt == terms[p]:
            break
        p -= 1
        terms[p] = nxt
    bottom = terms[min(terms)]
    bottom_is_full = bottom.dim == L.dim
    p = -1
    stable_top = False
    while terms[p].dim > 0:
        prev = terms[p]
        nxt = bracket_kernel(L, prev.basis, g_minus_one.basis, prev)
        if nxt == prev:
            logger.warning(f"Контактная фильтрация {c.name} стабилизировалась на размерности {prev.dim}")
            stable_top = True
            break
        p += 1
        terms[p] = nxt
    if not bottom_is_full:
        logger.warning(f"Контактная фильтрация {c.name}: рекурсия вниз не дала всю алгебру ({bottom.dim} из {L.dim})")
    sigma_stable = {k: L.conj_subspace(t) == t for k, t in terms.items()}
    return ContactFiltration(Filtration(L, terms, stable_top=stable_top, stable_bottom=not bottom_is_full),
                             bottom_is_full, sigma_stable)


def structure_oracle(c: CRAlgebra, contact: Optional[ContactFiltration] = None,
                     freeman: Optional[FreemanSequence] = None) -> Report:
    """Проверки базовых свойств контактной фильтрации на конкретном примере.

    Пункты отчета: (i) согласованность со скобкой, (ii) альтернативное
    описание g^p, (iii) ĝ^{−2} = ĝ, (iv) ŝtab ⊆ ĝ⁰, (v) ĝ^p = q^p + σq^p при
    p = −1, 0, (vi) ĝ^p ⊆ q^p + σq^p при p ≥ 1, замкнутость q^p + σq^p и
    независимый пересчет порядка. В data["equality"] записано, выполняется
    ли ĝ^p + ŝtab = q^p + σq^p для каждого p.
    """
    contact = contact or contact_filtration(c)
    freeman = freeman or freeman_sequence(c)
    L = c.ghat
    report = Report(title=f"structure_oracle {c.name}".strip())

    violation = contact.filtration.compatibility_violation()
    report.add("bracket_compatible", violation is None, pair=list(violation) if violation else None)

    g_minus_one = contact.term(-1)
    g0 = contact.term(0)
    alt_ok = True
    for p in range(0, contact.p_max + 2):
        alt = bracket_kernel(L, g0.basis, g_minus_one.basis, contact.term(p - 1)) if p > 0 else g0
        if alt != contact.term(p):
            alt_ok = False
            break
    report.add("alternative_description", alt_ok)
    report.add("g_minus_two_is_g", contact.term(-2).dim == L.dim, dim=contact.term(-2).dim)
    report.add("stab_in_g0", g0.contains_subspace(c.stab))

    def q_sum(p: int) -> Subspace:
        t = freeman.term(p) if p + 1 < len(freeman.terms) else c.stab
        return t.sum(L.conj_subspace(t))

    for p in (-1, 0):
        report.add(f"equal_p{p}", contact.term(p) == q_sum(p), dim_g=contact.term(p).dim, dim_q=q_sum(p).dim)
    top = max(contact.p_max, len(freeman.terms) - 1)
    inclusion_ok = True
    equality = {}
    for p in range(-1, top + 2):
        qs = q_sum(p)
        if p >= 1 and not qs.contains_subspace(contact.term(p)):
            inclusion_ok = False
        equality[str(p)] = contact.term(p).sum(c.stab) == qs
    report.add("inclusion_p_ge_1", inclusion_ok)
    report.data["equality"] = equality
    report.data["strict_at"] = [int(p) for p, eq in equality.items() if not eq]

    closed = all(is_subalgebra(L, q_sum(p)) for p in range(0, len(freeman.terms)))
    report.add("q_sum_subalgebras", closed)
    report.add("sigma_stable_terms", all(contact.sigma_stable.values()))
    recomputed = levi_kernel_order(c)
    report.add("order_recomputed", recomputed == freeman.order_k, freeman=freeman.order_k, levi=recomputed)
    report.data["contact_dims"] = {str(p): d for p, d in contact.dims().items()}
    report.data["freeman_dims"] = freeman.dims
    return report
