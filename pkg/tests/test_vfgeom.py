import unittest
import math
import random
from itertools import combinations_with_replacement

# Добавляем путь к родительской директории, чтобы можно было импортировать scripts
import sys
import os
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from scripts.errors import InputError
from scripts.field import Scalar, Subspace
from scripts.polysolve import Poly
from scripts.vfgeom import (
    PolyVectorField, SamplePlan, antiholomorphic_frame, assert_tube_invariant, cauchy_characteristic,
    cone_frame, cone_syzygies, hormander_check, holomorphic_field, n6_fields, parallelism_check,
    pointwise_freeman, seven_dim_commutation_table, seven_dim_plan, tangent_chart, tangent_quartic,
    tube_fiber_expectation, tube_generators, verify_identity, vf_bracket,
)

COORDS = ("a", "b", "c", "d")

# все мономы степени не выше 3 от четырех координат
MONOMIALS = [math.prod((Poly.var(name) for name in names), start=Poly.const(1))
             for degree in range(4) for names in combinations_with_replacement(COORDS, degree)]


def random_field(rng: random.Random, terms: int = 5) -> PolyVectorField:
    coeffs = []
    for _ in COORDS:
        p = Poly()
        for m in rng.sample(MONOMIALS, terms):
            p = p + m * Scalar(rng.randint(-3, 3), rng.randint(-1, 1))
        coeffs.append(p)
    return PolyVectorField(COORDS, coeffs)


class TestPolyVectorField(unittest.TestCase):

    def test_bracket_identities(self):
        rng = random.Random(11)
        for _ in range(5):
            u, v, w = random_field(rng), random_field(rng), random_field(rng)
            self.assertEqual(vf_bracket(u, v), -vf_bracket(v, u))
            jac = vf_bracket(u, vf_bracket(v, w)) + vf_bracket(v, vf_bracket(w, u)) + vf_bracket(w, vf_bracket(u, v))
            self.assertTrue(jac.is_zero())

    def test_simple_bracket(self):
        da = PolyVectorField.coordinate(COORDS, "a")
        a_db = PolyVectorField(COORDS, {"b": Poly.var("a")})
        self.assertEqual(vf_bracket(da, a_db), PolyVectorField.coordinate(COORDS, "b"))

    def test_errors(self):
        with self.assertRaises(InputError):
            PolyVectorField(("a", "a"), {})
        with self.assertRaises(InputError):
            PolyVectorField(COORDS, {"e": 1})
        with self.assertRaises(InputError):
            vf_bracket(PolyVectorField.zero(COORDS), PolyVectorField.zero(("a",)))

    def test_holomorphic_field(self):
        z = holomorphic_field([1])
        self.assertEqual(z.coords, ("x0", "y0"))
        self.assertEqual(z.at({}), (Scalar.parse("1/2"), Scalar.parse("-1/2*i")))
        self.assertEqual(antiholomorphic_frame(1), [z.conj()])

    def test_tube_invariance(self):
        field = PolyVectorField(("x0", "y0"), {"x0": Poly.var("y0")})
        with self.assertRaises(InputError):
            assert_tube_invariant([field], ["y0"])


class TestSamplePlan(unittest.TestCase):

    def test_deterministic_and_excluded(self):
        plan = SamplePlan(params=["r"], count=5, seed=3, excluded=[Poly.var("r")])
        first = plan.draw()
        self.assertEqual(first, plan.draw())
        self.assertEqual(len(first), 5)
        self.assertTrue(all(not s["r"].is_zero() for s in first))
        with self.assertRaises(InputError):
            plan.check({"r": 0})
        with self.assertRaises(InputError):
            plan.check({})


class TestTangentSurface(unittest.TestCase):

    def test_cone_and_quartic(self):
        self.assertTrue(all(p.is_zero() for p in cone_syzygies()))
        self.assertTrue(tangent_quartic().subs(tangent_chart()).is_zero())

    def test_commutation_table(self):
        plan = seven_dim_plan(count=2, seed=5)
        modulo = antiholomorphic_frame(4)
        for name, lhs, rhs in seven_dim_commutation_table():
            with self.subTest(name=name):
                self.assertTrue(verify_identity(lhs, rhs, modulo, plan, title=name).ok)


class TestTubeFreeman(unittest.TestCase):

    def test_dims_and_fibers(self):
        for k in (2, 3):
            frame = tube_generators(k)
            for sample in frame.plan(2, seed=7).draw():
                with self.subTest(k=k, sample=sample):
                    result = pointwise_freeman(frame, sample)
                    self.assertEqual(result.dims, list(range(k, -1, -1)))
                    for p in range(len(result.fibers) - 1):
                        self.assertEqual(result.fibers[p + 1], tube_fiber_expectation(k, sample, p))

    def test_higher_order_tubes(self):
        for k in (4, 5):
            frame = tube_generators(k)
            sample = frame.plan(1, seed=7).draw()[0]
            with self.subTest(k=k):
                result = pointwise_freeman(frame, sample)
                self.assertEqual(result.dims, list(range(k, -1, -1)))
                self.assertEqual(result.fibers[1], tube_fiber_expectation(k, sample, 0))

    def test_excluded_point(self):
        with self.assertRaises(InputError):
            pointwise_freeman(tube_generators(3), {"lam": 1, "t0": 1, "t1": 0})

    def test_small_k(self):
        with self.assertRaises(InputError):
            tube_generators(1)


class TestN6(unittest.TestCase):

    def setUp(self):
        self.f = n6_fields()
        self.point = {"r": Scalar(1), "s": Scalar(2)}

    def test_brackets(self):
        f = self.f
        self.assertEqual(vf_bracket(f["X1"], f["Y2"]), f["Y3"].scale(2))
        self.assertEqual(vf_bracket(f["X2"], f["Y1"]), f["Y3"].scale(2))
        self.assertEqual(vf_bracket(f["X1"], f["Y3"]), PolyVectorField.coordinate(f["X1"].coords, "y1"))

    def test_hormander_and_cauchy(self):
        f = self.f
        gens = [f["X1"], f["X2"], f["Y1"], f["Y2"]]
        result = hormander_check(gens, self.point)
        self.assertEqual(result.dims, [4, 5, 6])
        self.assertTrue(result.bracket_generating)
        expected = Subspace.span([f["X0"].at(self.point), f["Y0"].at(self.point)], 6)
        self.assertEqual(cauchy_characteristic(gens, self.point), expected)

    def test_freeman(self):
        frame = cone_frame()
        self.assertEqual(pointwise_freeman(frame, {"r": 1, "s": 2}).dims, [2, 1, 0])


class TestLineParallelism(unittest.TestCase):

    def test_operators_and_symmetries(self):
        report = parallelism_check(samples=2, seed=7)
        for name in ("unimodular_frame", "lowering_y1", "lowering_y2", "lowering_y3",
                     "raising_y0", "raising_y1", "raising_y2", "symmetries_closed"):
            with self.subTest(name=name):
                self.assertTrue(report.item(name).ok)


if __name__ == '__main__':
    unittest.main()
