"""Наборы проверок, которые запускает CLI.

Каждый набор собирает отчеты модулей в список `Check`; нарушение
свойства записывается статусом fail, а исключение вычисления (например,
нерасщепимый спектр) – статусом inconclusive.
"""
import logging
import time
from dataclasses import dataclass
from typing import Any, Callable, Dict, List, Optional

from scripts.data_structures import (
    STATUS_FAIL, STATUS_INCONCLUSIVE, STATUS_PASS, Check, Report, SuiteReport,
)
from scripts.deform import (
    CohomologyResult, GradedModule, WeightAction, adjoint_weight, almost_full_check, build_deformation_problem, cochain_from_labels,
    cohomology_table, induced_action, random_sanity, rigidity_solve, weight_on_cocycles,
)
from scripts.errors import CrlabError, InputError
from scripts.field import Scalar, Subspace, matrix_spectrum, unit_vector
from scripts.liealg import Grading, LieAlgebra, ad_spectrum
from scripts.models import (
    CLOSURE_SYSTEMS, DEFAULT_FAMILY_T, DEFAULT_TUBE_K, FAMILIES, build, check_cr_morphism, closure_system,
    ex26_table_check, family, immersion_map, model8_algebra, model8_basis_change, model8_structure,
    sl2_s3_embedding,
)
from scripts.polysolve import Poly
from scripts.prolong import (
    DEFAULT_DEPTH, MODEL_LABELS, bigrading, calibrate_cr_basis, check_bigrading, check_universal,
    extract_model, heisenberg_symbol, is_model, tanaka_prolong, universal_subspaces,
)
from scripts.cralg import structure_oracle
from scripts.vfgeom import (
    DEFAULT_SAMPLES, DEFAULT_SEED, PolyVectorField, antiholomorphic_frame, cauchy_characteristic, cone_frame,
    cone_polys, cone_syzygies, hormander_check, holomorphic_field, identity_on_chart, levi_kernel_at,
    n6_fields, parallelism_check, pointwise_freeman, seven_dim_commutation_table, seven_dim_fields,
    seven_dim_frame, seven_dim_plan, seven_dim_vectors, tangent_chart, tangent_quartic, tube_fiber_expectation,
    tube_generators, verify_identity, verify_outside, vf_bracket,
)

# Настройка логирования
logger = logging.getLogger(__name__)

SUITE_NAMES = ("model", "examples", "prolongation", "cohomology", "rigidity", "tube", "ode", "structure")
ALL_SUITE = "all"

# Значения параметра семейств, на которых проверяются таблицы
FAMILY_T_GRID = ("0", "1", "-1", "2", "-2")

# Размерности ĉ_p продолжения heis(3)
PROLONGATION_DIMS = {-2: 1, -1: 2, 0: 4, 1: 6, 2: 9}

# H^{d,2} для sl₂⋉S³ℝ² и собственные значения Ẽ на классах
COHOMOLOGY_DIMS = {1: 0, 2: 1, 3: 2, 4: 2}
COHOMOLOGY_WEIGHTS = {2: [-2], 3: [-5, -6], 4: [-7, -8]}

# Кандидаты в образующие H^{d,2}: значения на (e-2, z) и (e-2, zb) и ожидаемые
# (коцикл, собственное значение Ẽ); вторая кандидатка при d = 3 не замкнута
COHOMOLOGY_CANDIDATES = {
    2: {"psi2": ({"e-2,z": {"z": "i", "zb": "-i"}, "e-2,zb": {"z": "i", "zb": "-i"}}, True, "-2")},
    3: {"psi3_1": ({"e-2,z": {"L": 1}, "e-2,zb": {"Lb": -1}}, True, "-5"),
        "psi3_2": ({"e-2,z": {"L": 1, "Lb": 1}, "e-2,zb": {"L": 1, "Lb": 1}}, False, None)},
    4: {"psi4_1": ({"e-2,z": {"N": 1, "Nb": 7}, "e-2,zb": {"N": 7, "Nb": 1}}, True, "-7"),
        "psi4_2": ({"e-2,z": {"N": 1, "Nb": 1}, "e-2,zb": {"N": -1, "Nb": -1}}, True, "-8")},
}
REPRESENTATIVES_ANCHOR = "ψ², ψ³₁, ψ⁴ᵢ are non-trivial Ẽ-eigenclasses; ψ³₂ is not closed"

# Спектр ad(Ẽ) на базисе X, Ẽ, Y, v₀, …, v₃
RIGID_SPECTRUM = {"X": 2, "Et": 0, "Y": -2, "v0": 3, "v1": 1, "v2": -1, "v3": -3}


@dataclass
class SuiteOptions:
    seed: int = DEFAULT_SEED
    samples: int = DEFAULT_SAMPLES
    k: int = DEFAULT_TUBE_K
    t: str = DEFAULT_FAMILY_T
    depth: int = DEFAULT_DEPTH

    def validate(self) -> Scalar:
        """Проверяет параметры и возвращает разобранное t.

        Raises:
            InputError: Недопустимое значение параметра.
        """
        if self.k < 2:
            raise InputError(f"--k должно быть не меньше 2, получено {self.k}")
        if self.samples < 1:
            raise InputError(f"--samples должно быть положительным, получено {self.samples}")
        if self.depth < 1:
            raise InputError(f"Глубина продолжения должна быть не меньше 1, получено {self.depth}")
        return Scalar.parse(self.t)


def _jsonable(value: Any) -> Any:
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if value is None or isinstance(value, (bool, int, str)):
        return value
    return str(value)


def check_from_report(check_id: str, anchor: str, report: Report, **details) -> Check:
    """Один пункт набора по целому отчету."""
    status = STATUS_PASS if report.ok else STATUS_FAIL
    payload = {"failures": [it.to_dict() for it in report.failures()], "data": report.data}
    payload.update(details)
    return Check(check_id, anchor, status, _jsonable(payload))


def checks_from_items(prefix: str, anchor: str, report: Report) -> List[Check]:
    """По пункту набора на каждый пункт отчета."""
    return [Check(f"{prefix}.{it.name}", anchor, STATUS_PASS if it.ok else STATUS_FAIL, _jsonable(it.details))
            for it in report.items]


def simple_check(check_id: str, anchor: str, ok: bool, **details) -> Check:
    return Check(check_id, anchor, STATUS_PASS if ok else STATUS_FAIL, _jsonable(details))


def _guarded(check_id: str, anchor: str, fn: Callable[[], List[Check]]) -> List[Check]:
    """Ошибка вычисления превращается в пункт inconclusive, а не в аварийный выход."""
    try:
        return fn()
    except CrlabError as e:
        logger.warning(f"{check_id}: {type(e).__name__}: {e}")
        return [Check(check_id, anchor, STATUS_INCONCLUSIVE, {"error": f"{type(e).__name__}: {e}"})]


# --- model ---

def suite_model(options: SuiteOptions) -> List[Check]:
    checks: List[Check] = []
    entry = build("model8")
    checks.append(check_from_report("model.jacobi", "[z, z̄] = −(i/2)e₋₂", entry.validation))
    checks.append(check_from_report("model.cr_algebra", "q = ⟨z, E, M, N⟩", entry.cr_validation))
    g = entry.algebra
    checks.append(simple_check("model.stab", "q² = ⟨E⟩", entry.cr.stab == g.span([g.e("E")]),
                               dim=entry.cr.stab.dim))
    checks.extend(checks_from_items("model.structure", "q⁰ = ⟨E, M, N⟩", model8_structure(entry)))
    checks.extend(checks_from_items("model.basis_change", "Ẽ = −(i/2)(M − M̄) − (3/2)E", model8_basis_change(entry)))
    checks.extend(checks_from_items("model.sl2_s3", "Ẽ = −¼(L + L̄)", sl2_s3_embedding()))
    for name in ("sl2_s3", "model8_s7", "cminus_c0"):
        other = build(name)
        checks.append(check_from_report(f"model.{name}.jacobi", other.anchor, other.validation))
    return checks


# --- examples ---

def _family_checks(name: str, t: str) -> List[Check]:
    result = family(name, t)
    return [check_from_report(f"examples.family.{name}.t={t}", f"{name}: e^{{ad X}}·p = p_t", result.report)]


def suite_examples(options: SuiteOptions) -> List[Check]:
    checks: List[Check] = []
    anchor26 = "a = u₂⁴ + u₁u₂³ + u₁²u₂²"
    checks.extend(_guarded("examples.ex26", anchor26,
                           lambda: checks_from_items("examples.ex26", anchor26, ex26_table_check())))
    tube3 = build("tube3_p2")
    checks.append(check_from_report("examples.tube3_p2", tube3.anchor, tube3.cr_validation))

    grid = list(FAMILY_T_GRID)
    if options.t not in grid:
        grid.append(options.t)
    for name in FAMILIES:
        for t in grid:
            checks.extend(_guarded(f"examples.family.{name}.t={t}", name, lambda n=name, v=t: _family_checks(n, v)))

    target = build("model8").cr
    source = family("ex4.4", options.t).cr
    anchor_phi = "φ(p_t) ⊆ q, dim φ(ŝ_t) ∩ q = 3"
    morphism = check_cr_morphism(immersion_map(options.t), source, target)
    checks.append(check_from_report("examples.immersion", anchor_phi, morphism,
                                    image_cap_q_dim=morphism.image_cap_q_dim))
    checks.append(simple_check("examples.immersion.cap_dim", anchor_phi, morphism.image_cap_q_dim == 3,
                               dim=morphism.image_cap_q_dim))
    # заведомо неверный знак при t должен ломать морфизм
    wrong = check_cr_morphism(immersion_map(1, negate_e_minus_two=True), family("ex4.4", 1).cr, target)
    checks.append(simple_check("examples.immersion.negative", anchor_phi, not wrong.ok,
                               failing_pair=wrong.failing_pair))

    for name in sorted(CLOSURE_SYSTEMS):
        _, report = closure_system(name)
        checks.append(check_from_report(f"examples.closure.{name}", report.data.get("anchor", name), report))
    return checks


# --- prolongation ---

def suite_prolongation(options: SuiteOptions) -> List[Check]:
    checks: List[Check] = []
    P = tanaka_prolong(heisenberg_symbol(), options.depth)
    expected = {p: d for p, d in PROLONGATION_DIMS.items() if p <= options.depth}
    actual = {p: P.block_dim(p) for p in sorted(P.dims)}
    checks.append(simple_check("prolongation.dims", "dim ĉ = 1, 2, 4, 6, 9",
                               all(actual.get(p) == d for p, d in expected.items()),
                               dims={str(p): d for p, d in actual.items()}))
    checks.append(check_from_report("prolongation.jacobi", "u([a, b]) = [u(a), b] + [a, u(b)]", P.validate()))

    anchor = "[M, V] = −iN + (i/2)V + (5/2)W"
    cal = calibrate_cr_basis(P)
    checks.extend(checks_from_items("prolongation.calibration", anchor, cal.report))
    bg = bigrading(P, cal)
    checks.extend(checks_from_items("prolongation.bigrading", "c^k_{(p,ℓ)}", check_bigrading(P, bg)))
    U = universal_subspaces(P, cal)
    checks.extend(checks_from_items("prolongation.universal", "u = Σ u_p", check_universal(P, U)))

    model = extract_model(P, cal)
    checks.append(simple_check("prolongation.model8", "[N, z̄] = −(3/2)iM − 2iM̄ + (3/4)E",
                               model.same_structure(model8_algebra()), labels=MODEL_LABELS))
    L = P.algebra
    components = {
        -2: L.span([cal["e-2"]]),
        -1: L.span([cal["z"], cal["zb"]]),
        0: L.span([cal["E"], cal["M"], cal["Mb"]]),
        1: L.span([cal["N"], cal["Nb"]]),
    }
    report = is_model(components, P, cal, bg, U)
    checks.append(check_from_report("prolongation.is_model", "k = 3", report, k=report.k))
    checks.append(simple_check("prolongation.is_model.k", "k = 3", report.k == 3, k=report.k))
    return checks


# --- cohomology ---

def _spectrum_values(matrix) -> List[str]:
    values = []
    for lam, space in matrix_spectrum(matrix):
        values.extend([str(lam)] * space.dim)
    return sorted(values)


def representatives_check(result: CohomologyResult, weight: WeightAction) -> Check:
    """Кандидаты в образующие H^{d,2} сверяются с ожидаемыми статусом и весом.

    Коцикл должен быть некограничным и собственным для Ẽ; для не-коцикла
    в деталях сохраняется ненулевое ∂ψ.
    """
    check_id = f"cohomology.representatives.d{result.d}"
    candidates = COHOMOLOGY_CANDIDATES[result.d]
    cochains = [cochain_from_labels(result.space, values) for values, _, _ in candidates.values()]
    report = weight_on_cocycles(result, weight, cochains, names=list(candidates))
    ok = True
    for name, (_, cocycle, eigenvalue) in candidates.items():
        details = report.item(name).details
        ok = ok and details["cocycle"] == cocycle and details["eigenvalue"] == eigenvalue
        ok = ok and not details["coboundary"] and (cocycle or bool(details.get("boundary")))
    return simple_check(check_id, REPRESENTATIVES_ANCHOR, ok, classes={it.name: it.details for it in report.items})


def suite_cohomology(options: SuiteOptions) -> List[Check]:
    checks: List[Check] = []
    entry = build("sl2_s3")
    module = GradedModule.adjoint(entry.grading)
    table = cohomology_table(module, 2)
    dims = {d: r.dim for d, r in table.items()}
    expected_ok = all(dims.get(d, 0) == v for d, v in COHOMOLOGY_DIMS.items())
    vanishing = all(v == 0 for d, v in dims.items() if d > 4)
    checks.append(simple_check("cohomology.dims", "H^{1,2} = 0, vanishes for d > 4", expected_ok and vanishing,
                               dims={str(d): v for d, v in dims.items()}))
    checks.append(simple_check("cohomology.d_squared", "∂ ∘ ∂ = 0", all(r.squares_zero for r in table.values())))

    weight = adjoint_weight(module, entry.elements["Et"])
    anchor = "eigenvalues −2, −5, −6, −7, −8"
    for d, expected in COHOMOLOGY_WEIGHTS.items():
        def weights(d=d, expected=expected):
            values = _spectrum_values(induced_action(table[d], weight))
            return [simple_check(f"cohomology.weights.d{d}", anchor,
                                 values == sorted(str(Scalar(v)) for v in expected), values=values)]
        checks.extend(_guarded(f"cohomology.weights.d{d}", anchor, weights))
    for d in sorted(COHOMOLOGY_CANDIDATES):
        checks.extend(_guarded(f"cohomology.representatives.d{d}", REPRESENTATIVES_ANCHOR,
                               lambda d=d: [representatives_check(table[d], weight)]))
    checks.extend(_guarded("cohomology.almost_full", "Hom_t(H^{d,1}, g₁) = 0",
                           lambda: [check_from_report("cohomology.almost_full", "Hom_t(H^{d,1}, g₁) = 0",
                                                      almost_full_check(module, weight))]))

    plane = LieAlgebra.from_brackets(["a", "b"], {}, field="Q", name="R2")
    trivial = GradedModule.trivial(Grading(plane, [-1, -1]), degree=0)
    h2 = cohomology_table(trivial, 2)
    checks.append(simple_check("cohomology.abelian_plane", "dim Λ²(ℝ²)* = 1", h2.get(2) is not None and h2[2].dim == 1,
                               dims={str(d): r.dim for d, r in h2.items()}))
    return checks


# --- rigidity ---

def _single_parameter_term(value: Dict[str, Poly], label: str, factor: int) -> Optional[str]:
    """Имя параметра λ, если якобиатор равен factor·λ·label."""
    if set(value) != {label}:
        return None
    p = value[label]
    variables = p.variables()
    if len(variables) == 1 and p == Poly.var(variables[0]) * factor:
        return variables[0]
    return None


def suite_rigidity(options: SuiteOptions) -> List[Check]:
    checks: List[Check] = []
    entry = build("rigid_sl2_s3")
    L = entry.algebra
    et = entry.elements["Et"]

    def spectrum():
        spaces = ad_spectrum(L, et)
        lines = {}
        for lam, space in spaces:
            for label, w in RIGID_SPECTRUM.items():
                if space.contains(unit_vector(L.dim, L.index(label))):
                    lines[label] = str(lam)
        ok = all(lines.get(label) == str(Scalar(w)) for label, w in RIGID_SPECTRUM.items())
        return [simple_check("rigidity.spectrum", "spectrum {3, 1, 2, 0, −1, −3, −2}", ok, eigenvalues=lines)]

    checks.extend(_guarded("rigidity.spectrum", "spectrum of ad Ẽ", spectrum))

    problem = build_deformation_problem(entry.grading, et)
    checks.append(simple_check("rigidity.parameters", "λ₀, …, λ₃", len(problem.parameters) == 4,
                               parameters=problem.parameters))
    cert = rigidity_solve(problem)
    checks.append(simple_check("rigidity.verdict", "Jac(Y, v₀, v₁) = −2λ₀X", cert.rigid, certificate=cert.to_dict()))
    equations = {tuple(eq.triple): eq.value for eq in problem.jacobiators()}
    first = _single_parameter_term(equations.get(("Y", "v0", "v1"), {}), "X", -2)
    last = _single_parameter_term(equations.get(("X", "v2", "v3"), {}), "Y", -2)
    checks.append(simple_check("rigidity.jac_Y_v0_v1", "Jac(Y, v₀, v₁) = −2λ₀X", first is not None, parameter=first))
    checks.append(simple_check("rigidity.jac_X_v2_v3", "Jac(X, v₂, v₃) = −2λ₃Y", last is not None and last != first,
                               parameter=last))
    checks.append(check_from_report("rigidity.random_sanity", "nonzero Jacobiator",
                                    random_sanity(problem, options.seed)))

    neg = build("heis3_neg")
    flexible = rigidity_solve(build_deformation_problem(neg.grading))
    checks.append(simple_check("rigidity.heis3_negative", "for any fixed t ≠ 0", flexible.verdict == "flexible",
                               verdict=flexible.verdict, witness=flexible.witness))
    pos = build("heis3_pos")
    pos_problem = build_deformation_problem(pos.grading)
    vacuous = rigidity_solve(pos_problem)
    checks.append(simple_check("rigidity.heis3_positive", "there is simply no place",
                               not pos_problem.parameters and vacuous.rigid, parameters=pos_problem.parameters))
    return checks


# --- tube ---

def _freeman_over_samples(check_id: str, anchor: str, frame, samples: int, seed: int, expected: List[int],
                          fiber_check: Optional[Callable] = None) -> Check:
    plan = frame.plan(samples, seed)
    results = []
    ok = True
    for sample in plan.draw():
        result = pointwise_freeman(frame, sample)
        good = result.dims == expected and (fiber_check is None or fiber_check(sample, result))
        results.append({"sample": result.sample, "dims": result.dims, "ok": good})
        ok = ok and good
    verdict = f"verified at {len(results)} samples" if ok else "fail"
    return simple_check(check_id, anchor, ok, expected=expected, samples=results, verdict=verdict)


def _tube_k_checks(k: int, options: SuiteOptions) -> List[Check]:
    frame = tube_generators(k)

    def fibers_match(sample, result):
        return all(result.fibers[p + 1] == tube_fiber_expectation(k, sample, p) for p in range(len(result.fibers) - 1))

    return [_freeman_over_samples(f"tube.k{k}.freeman", "decreases by one dimension at each step", frame,
                                  options.samples, options.seed, list(range(k, -1, -1)), fibers_match)]


def _seven_dim_checks(options: SuiteOptions) -> List[Check]:
    checks: List[Check] = []
    psi = tangent_chart()
    r, s, t = Poly.var("r"), Poly.var("s"), Poly.var("t")
    checks.append(simple_check("tube.k3.syzygies", "x₃d₁ − x₂d₂ + x₁d₃ = 0",
                               all(p.is_zero() for p in cone_syzygies())))
    checks.append(simple_check("tube.k3.tangent_quartic", "x₀²x₃² − 6x₀x₁x₂x₃ + 4x₀x₂³ + 4x₁³x₃ − 3x₁²x₂²",
                               tangent_quartic().subs(psi).is_zero()))
    vectors = seven_dim_vectors()
    x3 = [c.subs(psi) for c in vectors["X3"]]
    x3_expected = [Poly(), -2 * r ** 4 * t ** 2, -2 * r ** 3 * s * t ** 2, Poly()]
    checks.append(simple_check("tube.k3.x3_chart", "−(1/(2r³t²))X₃ = r∂x₁ + s∂x₂", x3 == x3_expected))

    fields = seven_dim_fields()
    plan = seven_dim_plan(options.samples, options.seed)
    modulo = antiholomorphic_frame(4)
    for name, lhs, rhs in seven_dim_commutation_table():
        report = verify_identity(lhs, rhs, modulo, plan, title=name)
        checks.append(check_from_report(f"tube.k3.table.{name}", name, report, verdict=report.verdict,
                                        witness=report.witness))
    d_fields = [fields[n] for n in ("Z1", "Z2", "Z3", "Z1b", "Z2b", "Z3b")]
    outside = verify_outside(vf_bracket(fields["Z3b"], fields["Z3"]), d_fields, plan, title="[Z3b,Z3] ∉ D")
    checks.append(check_from_report("tube.k3.obstruction", "[Z̄₃, Z₃] ∉ D", outside, verdict=outside.verdict))

    x0 = Poly.var("x0")
    d1, d2, d3 = cone_polys()
    lead = x0 * d3 - Poly.var("x2") * d1
    lhs = fields["Z"].scale(4 * x0)
    rhs = fields["Z1"].scale(4 * d1 * lead) - fields["Z2"].scale(d2)
    checks.append(simple_check("tube.k3.z_identity", "4x₀Z = 4d₁(x₀d₃ − x₂d₁)Z₁ − d₂Z₂",
                               identity_on_chart(lhs, rhs, psi)))
    radial = [-2 * r ** 6 * t ** 5 * s * c for c in (r ** 3, r ** 2 * s, r * s ** 2, s ** 3)]
    checks.append(simple_check("tube.k3.z_chart", "Z∘ψ = −2r⁶t⁵s(r³, r²s, rs², s³)",
                               identity_on_chart(fields["Z"], holomorphic_field(radial), psi)))

    z_frame = seven_dim_frame()
    z_vector = tuple(c.subs(psi) for c in vectors["Z"])

    def ambient_fibers(sample, result):
        return (result.fibers[1] == z_frame.frame_span(sample, z_frame.frame[:2])
                and result.fibers[2] == z_frame.frame_span(sample, [z_vector]))

    checks.append(_freeman_over_samples("tube.k3.ambient_freeman", "F⁰₁₀ = ⟨Z₁, Z₂⟩, F¹₁₀ = ⟨Z⟩", z_frame,
                                        options.samples, options.seed, [3, 2, 1, 0], ambient_fibers))

    levi_ok = True
    gens = [fields["Z1"], fields["Z2"], fields["Z3"]]
    for sample in plan.draw():
        point = plan.point(sample)
        kernel = levi_kernel_at(gens, point)
        levi_ok = levi_ok and kernel == Subspace.span([fields["Z1"].at(point), fields["Z2"].at(point)], 8)
    checks.append(simple_check("tube.k3.levi_kernel", "F⁰₁₀ = ⟨Z₁, Z₂⟩", levi_ok))
    return checks


def _n6_checks(options: SuiteOptions) -> List[Check]:
    checks: List[Check] = []
    f = n6_fields()
    coords = f["X1"].coords
    anchor = "[X₁, Y₂] = [X₂, Y₁] = 2Y₃"
    checks.append(simple_check("tube.n6.y3", anchor,
                               vf_bracket(f["X1"], f["Y2"]) == f["Y3"].scale(2) == vf_bracket(f["X2"], f["Y1"])))
    checks.append(simple_check("tube.n6.x1_y3", "[X₁, Y₃] = ∂y₁",
                               vf_bracket(f["X1"], f["Y3"]) == PolyVectorField.coordinate(coords, "y1")))
    checks.append(simple_check("tube.n6.x2_y3", "[X₂, Y₃] = ∂y₂",
                               vf_bracket(f["X2"], f["Y3"]) == PolyVectorField.coordinate(coords, "y2")))
    gens = [f["X1"], f["X2"], f["Y1"], f["Y2"]]
    frame = cone_frame()
    plan = frame.plan(options.samples, options.seed)
    hormander_ok = True
    cauchy_ok = True
    dims_seen = []
    for sample in plan.draw():
        h = hormander_check(gens, sample)
        dims_seen.append(h.dims)
        hormander_ok = hormander_ok and h.bracket_generating and h.dims == [4, 5, 6] and h.depth == 3
        cauchy = cauchy_characteristic(gens, sample)
        cauchy_ok = cauchy_ok and cauchy == Subspace.span([f["X0"].at(sample), f["Y0"].at(sample)], 6)
    checks.append(simple_check("tube.n6.hormander", "The Hörmander condition then follows", hormander_ok,
                               dims=dims_seen[:1]))
    checks.append(simple_check("tube.n6.cauchy", "X₀ = (1/3)(rX₁ + sX₂)", cauchy_ok))

    radial = tuple(frame.parametrization[c] for c in frame.coords)

    def radial_fiber(sample, result):
        return result.fibers[1] == frame.frame_span(sample, [radial])

    checks.append(_freeman_over_samples("tube.n6.freeman", "2-nondegenerate", frame, options.samples, options.seed,
                                        [2, 1, 0], radial_fiber))
    return checks


def suite_tube(options: SuiteOptions) -> List[Check]:
    checks = _guarded(f"tube.k{options.k}", "tube", lambda: _tube_k_checks(options.k, options))
    if options.k == 3:
        checks.extend(_guarded("tube.k3.ambient", "Z = (d₁, d₃) ⊗ (x₀d₃ − x₂d₁, x₁d₃ − x₃d₁)",
                               lambda: _seven_dim_checks(options)))
        checks.extend(_guarded("tube.n6", "N⁶", lambda: _n6_checks(options)))
    return checks


# --- ode ---

def suite_ode(options: SuiteOptions) -> List[Check]:
    report = parallelism_check(options.samples, options.seed)
    return checks_from_items("ode", "pair of raising and lowering operators", report)


# --- structure ---

STRUCTURE_ENTRIES = ("model8", "sl2_s3", "ex26", "tube3_p2", "heis3_cr")


def suite_structure(options: SuiteOptions) -> List[Check]:
    checks: List[Check] = []
    anchor = "ĝ^p + ŝtab ⊆ q^p + q̄^p"
    for name in STRUCTURE_ENTRIES:
        checks.extend(_guarded(f"structure.{name}", anchor, lambda n=name: [
            check_from_report(f"structure.{n}", anchor, structure_oracle(build(n).cr))]))
    t = Scalar.parse(options.t)
    for name in FAMILIES:
        if name == "ex4.4" and t.re == 0:
            continue
        checks.extend(_guarded(f"structure.family.{name}", anchor, lambda n=name: [
            check_from_report(f"structure.family.{n}", anchor, structure_oracle(family(n, options.t).cr))]))
    return checks


SUITES: Dict[str, Callable[[SuiteOptions], List[Check]]] = {
    "model": suite_model,
    "examples": suite_examples,
    "prolongation": suite_prolongation,
    "cohomology": suite_cohomology,
    "rigidity": suite_rigidity,
    "tube": suite_tube,
    "ode": suite_ode,
    "structure": suite_structure,
}


def run_suite(name: str, options: Optional[SuiteOptions] = None) -> SuiteReport:
    """Запускает набор (или все наборы для имени "all").

    Raises:
        InputError: Неизвестное имя набора или недопустимые параметры.
    """
    options = options or SuiteOptions()
    options.validate()
    if name == ALL_SUITE:
        names = list(SUITE_NAMES)
    elif name in SUITES:
        names = [name]
    else:
        raise InputError(f"Неизвестный набор: {name}")
    report = SuiteReport(suite=name, seed=options.seed)
    start = time.perf_counter()
    for suite in names:
        logger.info(f"Набор {suite}")
        for check in _guarded(f"{suite}.error", suite, lambda s=suite: SUITES[s](options)):
            report.add(check)
    report.elapsed = time.perf_counter() - start
    counts = report.counts()
    logger.info(f"Набор {name}: {counts[STATUS_PASS]} пройдено, {counts[STATUS_FAIL]} провалено")
    return report
