import unittest

# Добавляем путь к родительской директории, чтобы можно было импортировать scripts
import sys
import os
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from scripts.errors import DegenerateBasePoint, InputError
from scripts.field import Matrix
from scripts.models import (
    CLOSURE_SYSTEMS, FAMILIES, build, catalog_names, check_cr_morphism, closure_system, ex26_table_check,
    exp_ad_matrix, family, immersion_map, is_automorphism, model8_algebra, model8_basis_change, model8_structure,
    sl2_s3_embedding, tube_cr_algebra,
)


class TestCatalog(unittest.TestCase):

    def test_all_entries_valid(self):
        for name in catalog_names():
            with self.subTest(name=name):
                self.assertTrue(build(name).ok)

    def test_unknown_entry_and_params(self):
        with self.assertRaises(InputError):
            build("nope")
        with self.assertRaises(InputError):
            build("model8", k=1)

    def test_gl2_sk_params(self):
        entry = build("gl2_sk", k=5)
        self.assertEqual(entry.name, "gl2_s5")
        self.assertEqual(entry.algebra.dim, 10)
        self.assertEqual(entry.to_json_dict()["params"], {"k": "5"})

    def test_model8_json(self):
        data = build("model8").to_json_dict()
        self.assertEqual(len(data["algebra"]["basis"]), 8)
        self.assertEqual(len(data["q"]), 4)
        self.assertEqual(data["stab"], [{"E": "1"}])
        self.assertEqual(data["degrees"]["e-2"], -2)

    def test_sl2_s3(self):
        entry = build("sl2_s3")
        g = entry.algebra
        self.assertEqual(g.dim, 7)
        self.assertEqual(g.format(g.bracket(g.e("L"), g.e("z"))), {"z": "-4"})


class TestModelReports(unittest.TestCase):

    def test_model8_reports(self):
        entry = build("model8")
        self.assertTrue(model8_structure(entry).ok)
        self.assertTrue(model8_basis_change(entry).ok)
        self.assertTrue(sl2_s3_embedding().ok)

    def test_exp_ad(self):
        g = model8_algebra()
        with self.assertRaises(InputError):
            exp_ad_matrix(g, g.e("E"))
        self.assertTrue(is_automorphism(g, exp_ad_matrix(g, g.e("N"))))

    def test_ex26_tables(self):
        report = ex26_table_check()
        self.assertEqual(report.failures(), [])
        self.assertEqual(report.data["freeman_dims"], [4, 3, 2, 1, 0])
        self.assertEqual(report.item("contact_terms").details["dims"], {"-2": 9, "-1": 8, "0": 6, "1": 3, "2": 1})


class TestFamilies(unittest.TestCase):

    def test_real_parameters(self):
        for name in FAMILIES:
            for t in ("1", "-2"):
                with self.subTest(name=name, t=t):
                    self.assertTrue(family(name, t).report.ok)

    def test_degenerate_regime(self):
        report = family("ex4.4", "0").report
        self.assertTrue(report.item("degenerate_regime").ok)
        self.assertIsNone(report.item("freeman_dims"))

    def test_unknown_family(self):
        with self.assertRaises(InputError):
            family("ex9.9", 1)

    def test_immersion(self):
        target = build("model8").cr
        report = check_cr_morphism(immersion_map(1), family("ex4.4", 1).cr, target)
        self.assertTrue(report.ok)
        self.assertEqual(report.image_cap_q_dim, 3)
        wrong = check_cr_morphism(immersion_map(1, negate_e_minus_two=True), family("ex4.4", 1).cr, target)
        self.assertFalse(wrong.item("morphism").ok)
        self.assertIsNotNone(wrong.failing_pair)

    def test_morphism_shape(self):
        target = build("model8").cr
        with self.assertRaises(InputError):
            check_cr_morphism(Matrix.identity(8), family("ex4.4", 1).cr, target)


class TestClosureSystems(unittest.TestCase):

    def test_all_systems(self):
        for name in sorted(CLOSURE_SYSTEMS):
            with self.subTest(name=name):
                system, report = closure_system(name)
                self.assertTrue(report.ok, report.to_dict())
                self.assertTrue(report.branches)
                self.assertEqual(report.unknowns, system.unknowns)

    def test_unknown_system(self):
        with self.assertRaises(InputError):
            closure_system("rank7")


class TestTubes(unittest.TestCase):

    def test_hypersurface_point(self):
        cr = tube_cr_algebra(3, {"u1^2u2": 1})
        self.assertEqual(cr.codimension(), 1)
        self.assertEqual(cr.ghat.dim, 8)

    def test_bad_points(self):
        with self.assertRaises(InputError):
            tube_cr_algebra(3, [0, 0, 0, 0])
        with self.assertRaises(InputError):
            tube_cr_algebra(3, [1, 2])
        with self.assertRaises(InputError):
            tube_cr_algebra(3, {"u1^5": 1})

    def test_degenerate_point(self):
        with self.assertRaises(DegenerateBasePoint):
            tube_cr_algebra(3, {"u1^3": 1})


if __name__ == '__main__':
    unittest.main()
