import unittest

# Добавляем путь к родительской директории, чтобы можно было импортировать scripts
import sys
import os
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from scripts.errors import InputError
from scripts.field import vscale
from scripts.liealg import Grading
from scripts.models import model8_algebra
from scripts.prolong import (
    bigrading, calibrate_cr_basis, check_bigrading, check_universal, export_prolongation, extract_model,
    heisenberg_symbol, is_model, tanaka_prolong, universal_subspaces,
)


class TestTanakaProlongation(unittest.TestCase):
    """Продолжение heis(3) до глубины 2 считается один раз на класс."""

    @classmethod
    def setUpClass(cls):
        cls.P = tanaka_prolong(heisenberg_symbol(), 2)
        cls.cal = calibrate_cr_basis(cls.P)
        cls.bg = bigrading(cls.P, cls.cal)
        cls.U = universal_subspaces(cls.P, cls.cal)

    def test_dims(self):
        self.assertEqual(self.P.dims, {-2: 1, -1: 2, 0: 4, 1: 6, 2: 9})

    def test_leibniz_and_jacobi(self):
        self.assertTrue(self.P.validate().ok)

    def test_calibration(self):
        cal, L = self.cal, self.P.algebra
        self.assertTrue(cal.report.ok, [it.name for it in cal.report.failures()])
        self.assertEqual(cal.gt1.dim, 4)
        self.assertEqual(L.bracket(cal["E"], cal["e-2"]), vscale(-2, cal["e-2"]))
        self.assertEqual(L.conj(cal["z"]), cal["zb"])

    def test_bigrading_and_universal(self):
        self.assertTrue(check_bigrading(self.P, self.bg).ok)
        self.assertTrue(check_universal(self.P, self.U).ok)

    def test_model8_recovered(self):
        self.assertTrue(extract_model(self.P, self.cal).same_structure(model8_algebra()))

    def test_is_model(self):
        L, cal = self.P.algebra, self.cal
        components = {
            -2: L.span([cal["e-2"]]),
            -1: L.span([cal["z"], cal["zb"]]),
            0: L.span([cal["E"], cal["M"], cal["Mb"]]),
            1: L.span([cal["N"], cal["Nb"]]),
        }
        report = is_model(components, self.P, cal, self.bg, self.U)
        self.assertTrue(report.ok)
        self.assertEqual(report.k, 3)
        self.assertEqual(report.data["nontrivial_projection"], [0, 1])

    def test_is_model_without_grading_element(self):
        L, cal = self.P.algebra, self.cal
        components = {-2: L.span([cal["e-2"]]), -1: L.span([cal["z"], cal["zb"]]), 0: L.span([cal["M"], cal["Mb"]])}
        report = is_model(components, self.P, cal, self.bg, self.U)
        self.assertFalse(report.item("ii_grading_element").ok)
        self.assertIsNone(report.k)

    def test_is_model_rejects_components_above_depth(self):
        L = self.P.algebra
        with self.assertRaises(InputError):
            is_model({3: L.span([])}, self.P, self.cal, self.bg, self.U)

    def test_export(self):
        data = export_prolongation(self.P, self.bg, self.cal)
        self.assertEqual(len(data["basis"]), 22)
        self.assertEqual(sorted(set(data["degrees"].values())), [-2, -1, 0, 1, 2])
        self.assertIn("N", data["distinguished"])


class TestProlongationErrors(unittest.TestCase):

    def test_bad_depth(self):
        with self.assertRaises(InputError):
            tanaka_prolong(heisenberg_symbol(), -1)

    def test_positive_symbol(self):
        symbol = heisenberg_symbol()
        with self.assertRaises(InputError):
            tanaka_prolong(Grading(symbol.algebra, [2, 1, 1]))

    def test_calibration_needs_depth_one(self):
        with self.assertRaises(InputError):
            calibrate_cr_basis(tanaka_prolong(heisenberg_symbol(), 0))


if __name__ == '__main__':
    unittest.main()
