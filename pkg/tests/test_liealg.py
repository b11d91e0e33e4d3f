import unittest
import random
from fractions import Fraction

# Добавляем путь к родительской директории, чтобы можно было импортировать scripts
import sys
import os
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from scripts.errors import FiltrationError, InputError
from scripts.field import Scalar, Subspace
from scripts.liealg import (
    Filtration, Grading, LieAlgebra, ad_spectrum, derived_series, graded_from_filtration, is_ideal,
    jacobiator, restrict, subalgebra_closure, validate,
)
from scripts.cralg import contact_filtration
from scripts.models import build


def sl2() -> LieAlgebra:
    return LieAlgebra.from_brackets(["H", "E", "F"], {
        ("H", "E"): {"E": 2},
        ("H", "F"): {"F": -2},
        ("E", "F"): {"H": 1},
    }, name="sl2")


def heis3() -> LieAlgebra:
    return LieAlgebra.from_brackets(["c", "e1", "e2"], {("e1", "e2"): {"c": 1}}, name="heis3")


class TestLieAlgebra(unittest.TestCase):

    def setUp(self):
        self.g = sl2()

    def test_bracket_and_format(self):
        g = self.g
        self.assertEqual(g.bracket(g.e("E"), g.e("F")), g.e("H"))
        self.assertEqual(g.format(g.bracket(g.e("F"), g.e("H"))), {"F": "-2"})
        self.assertEqual(g.vec({"H": 1, "E": "1/2"}), (Scalar(1), Scalar(Fraction(1, 2)), Scalar(0)))

    def test_jacobi_on_random_elements(self):
        g = self.g
        rng = random.Random(7)
        for _ in range(20):
            a, b, c = (g.vec({label: rng.randint(-5, 5) for label in g.labels}) for _ in range(3))
            self.assertTrue(all(x.is_zero() for x in jacobiator(g, a, b, c)))
            self.assertEqual(g.bracket(a, b), tuple(-x for x in g.bracket(b, a)))

    def test_validate_ok(self):
        report = validate(self.g)
        self.assertTrue(report.ok)
        self.assertIsNone(report.violating_triple)

    def test_validate_reports_violating_triple(self):
        broken = LieAlgebra.from_brackets(["a", "b", "c"], {("a", "b"): {"a": 1}, ("a", "c"): {"b": 1}})
        report = validate(broken)
        self.assertFalse(report.ok)
        self.assertEqual(report.violating_triple, ["a", "b", "c"])
        self.assertEqual(report.jacobiator, {"b": "-1"})

    def test_from_brackets_errors(self):
        with self.assertRaises(InputError):
            LieAlgebra.from_brackets(["H", "E"], {("H", "X"): {"E": 1}})
        with self.assertRaises(InputError):
            LieAlgebra.from_brackets(["H", "E"], {("H", "E"): {"E": 2}, ("E", "H"): {"E": 2}})

    def test_conjugation_axioms(self):
        swap = {"z": {"zb": 1}, "zb": {"z": 1}}
        good = LieAlgebra.from_brackets(["e", "z", "zb"], {("z", "zb"): {"e": "-1/2*i"}}, conjugation=swap)
        report = validate(good)
        self.assertTrue(report.ok)
        self.assertTrue(report.item("conjugation_homomorphism").ok)
        bad = LieAlgebra.from_brackets(["e", "z", "zb"], {("z", "zb"): {"e": 1}}, conjugation=swap)
        self.assertFalse(validate(bad).item("conjugation_homomorphism").ok)

    def test_json_roundtrip(self):
        data = self.g.to_json_dict()
        self.assertEqual(data["basis"], ["H", "E", "F"])
        self.assertTrue(LieAlgebra.from_json_dict(data).same_structure(self.g))
        with self.assertRaises(InputError):
            LieAlgebra.from_json_dict({"brackets": []})


class TestSubalgebrasAndSeries(unittest.TestCase):

    def test_ad_spectrum(self):
        g = sl2()
        spectrum = ad_spectrum(g, g.e("H"))
        self.assertEqual([str(lam) for lam, _ in spectrum], ["2", "0", "-2"])
        self.assertEqual(spectrum[0][1], g.span([g.e("E")]))

    def test_derived_series(self):
        self.assertEqual([s.dim for s in derived_series(sl2())], [3])
        self.assertEqual([s.dim for s in derived_series(heis3())], [3, 1, 0])

    def test_center_is_ideal(self):
        h = heis3()
        self.assertTrue(is_ideal(h, h.span([h.e("c")])))
        self.assertFalse(is_ideal(sl2(), sl2().span([sl2().e("H")])))

    def test_restrict(self):
        g = sl2()
        borel = restrict(g, [g.e("H"), g.e("E")], ["h", "e"])
        self.assertEqual(borel.format(borel.bracket(borel.e("h"), borel.e("e"))), {"e": "2"})
        with self.assertRaises(InputError):
            restrict(g, [g.e("E"), g.e("F")], ["e", "f"])

    def test_closure_is_idempotent(self):
        g = sl2()
        closure, closed = subalgebra_closure(g, [g.e("E"), g.e("F")])
        self.assertFalse(closed)
        self.assertEqual(closure.dim, 3)
        again, closed_again = subalgebra_closure(g, closure.basis)
        self.assertEqual(again, closure)
        self.assertTrue(closed_again)

    def test_closure_commutes_with_conjugation(self):
        g = build("sl2_s3").algebra
        for gens in (["z"], ["z", "L"], ["e-2", "N"], ["zb", "N"]):
            with self.subTest(gens=gens):
                vectors = [g.e(x) for x in gens]
                closure, _ = subalgebra_closure(g, vectors)
                conj_closure, _ = subalgebra_closure(g, [g.conj(v) for v in vectors])
                self.assertEqual(conj_closure, g.conj_subspace(closure))
                self.assertEqual(subalgebra_closure(g, closure.basis)[0], closure)


class TestGradingAndFiltration(unittest.TestCase):

    def test_grading_check(self):
        g = sl2()
        self.assertTrue(Grading.from_labels(g, {"H": 0, "E": 1, "F": -1}).is_valid())
        self.assertEqual(Grading.from_labels(g, {"H": 0, "E": 1, "F": 1}).check(), ("E", "F"))
        self.assertEqual(Grading(heis3(), [-2, -1, -1]).negative_part(), [0, 1, 2])
        with self.assertRaises(InputError):
            Grading(g, [0, 1])

    def test_graded_from_grading_filtration(self):
        grading = Grading.from_labels(sl2(), {"H": 0, "E": 1, "F": -1})
        F = grading.filtration()
        self.assertEqual(F.dims(), {-1: 3, 0: 2, 1: 1})
        gr = graded_from_filtration(F)
        a = gr.algebra
        self.assertEqual(a.labels, ["F", "H", "E"])
        self.assertEqual(gr.degrees, [-1, 0, 1])
        self.assertEqual(a.bracket(a.e("E"), a.e("F")), a.e("H"))

    def test_incompatible_filtration(self):
        g = sl2()
        F = Filtration(g, {0: Subspace.full(3), 1: g.span([g.e("H")])})
        self.assertEqual(F.compatibility_violation(), (0, 1))
        with self.assertRaises(FiltrationError):
            graded_from_filtration(F)

    def test_stable_top_repeats_last_term(self):
        h = heis3()
        top = h.span([h.e("c")])
        F = Filtration(h, {-1: Subspace.full(3), 0: top}, stable_top=True)
        self.assertTrue(F.stable_top)
        self.assertEqual(F.term(3), top)
        self.assertEqual(Filtration(h, {-1: Subspace.full(3), 0: top}).term(3).dim, 0)
        # нулевой верхний член не считается стабилизацией
        self.assertFalse(Filtration(h, {0: top, 1: Subspace.zero(3)}, stable_top=True).stable_top)

    def test_stable_bottom_repeats_first_term(self):
        h = heis3()
        bottom = h.span([h.e("c"), h.e("e1")])
        F = Filtration(h, {0: bottom, 1: h.span([h.e("c")])}, stable_bottom=True)
        self.assertEqual(F.term(-4), bottom)
        self.assertEqual(Filtration(h, {0: bottom}).term(-4).dim, 3)

    def test_contact_graded_of_ex26(self):
        F = contact_filtration(build("ex26").cr).filtration
        gr = graded_from_filtration(F)
        counts = {p: gr.degrees.count(p) for p in gr.degree_set()}
        self.assertEqual(counts, {-2: 1, -1: 2, 0: 3, 1: 2, 2: 1})
        self.assertTrue(gr.is_valid())
        self.assertTrue(validate(gr.algebra, gr.degrees).ok)


if __name__ == '__main__':
    unittest.main()
