import unittest
from unittest.mock import patch

# Добавляем путь к родительской директории, чтобы можно было импортировать scripts
import sys
import os
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from scripts.cralg import (
    CRAlgebra, contact_filtration, freeman_sequence, higher_levi, levi_kernel_order, structure_oracle, validate_cr,
)
from scripts.errors import InputError
from scripts.field import Subspace
from scripts.liealg import LieAlgebra
from scripts.models import build


def hyperquadric() -> CRAlgebra:
    """Гиперквадрика в ℂ²: [z, z̄] = i·c, q = ⟨z⟩."""
    h = LieAlgebra.from_brackets(
        ["c", "z", "zb"], {("z", "zb"): {"c": "i"}},
        conjugation={"c": {"c": 1}, "z": {"zb": 1}, "zb": {"z": 1}}, name="hq")
    return CRAlgebra(h, h.span([h.e("z")]))


class TestCRAlgebra(unittest.TestCase):

    def setUp(self):
        self.cr = hyperquadric()

    def test_basic_spaces(self):
        cr = self.cr
        self.assertEqual(cr.sigma_q, cr.ghat.span([cr.ghat.e("zb")]))
        self.assertEqual(cr.stab.dim, 0)
        self.assertEqual(cr.codimension(), 1)

    def test_validate_cr(self):
        report = validate_cr(self.cr)
        self.assertTrue(report.ok)
        self.assertEqual(report.data["dim_q_plus_sigma_q"], 2)

    def test_q_of_wrong_dimension(self):
        with self.assertRaises(InputError):
            CRAlgebra(self.cr.ghat, Subspace.full(2))

    def test_not_hypersurface_type(self):
        h = self.cr.ghat
        report = validate_cr(CRAlgebra(h, h.span([h.e("z"), h.e("c")])))
        self.assertFalse(report.item("hypersurface_type").ok)


class TestFreeman(unittest.TestCase):

    def test_levi_nondegenerate(self):
        cr = hyperquadric()
        freeman = freeman_sequence(cr)
        self.assertEqual(freeman.dims, [1, 0])
        self.assertEqual(freeman.order_k, 1)
        self.assertTrue(freeman.reaches_stab)
        self.assertEqual(levi_kernel_order(cr), 1)

    def test_higher_levi_form(self):
        cr = hyperquadric()
        h = cr.ghat
        form = higher_levi(cr, 0, h.e("z"), h.e("zb"))
        self.assertEqual(h.format(form), {"c": "-1*i"})
        with self.assertRaises(InputError):
            higher_levi(cr, 0, h.e("c"), h.e("zb"))
        with self.assertRaises(InputError):
            higher_levi(cr, 0, h.e("z"), h.e("z"))
        with self.assertRaises(InputError):
            higher_levi(cr, -1, h.e("z"), h.e("zb"))

    def test_model8_is_three_nondegenerate(self):
        cr = build("model8").cr
        freeman = freeman_sequence(cr)
        self.assertEqual(freeman.dims, [4, 3, 2, 1])
        self.assertEqual(freeman.order_k, 3)
        self.assertEqual(freeman.term(5), freeman.stab)
        self.assertEqual(levi_kernel_order(cr), 3)
        with self.assertRaises(InputError):
            freeman.term(-2)


class TestContactFiltration(unittest.TestCase):

    def test_hyperquadric_filtration(self):
        contact = contact_filtration(hyperquadric())
        self.assertTrue(contact.bottom_is_full)
        self.assertEqual(contact.dims(), {-2: 3, -1: 2})
        self.assertEqual(contact.term(0).dim, 0)

    def test_structure_oracle(self):
        report = structure_oracle(hyperquadric())
        self.assertTrue(report.ok)
        self.assertEqual(report.data["strict_at"], [])
        self.assertTrue(report.item("order_recomputed").ok)

    def test_stabilized_recursion_keeps_top_term(self):
        cr = hyperquadric()
        with patch("scripts.cralg.bracket_kernel", side_effect=lambda L, xs, ys, inside: inside):
            with self.assertLogs("scripts.cralg", level="WARNING"):
                contact = contact_filtration(cr)
        self.assertTrue(contact.filtration.stable_top)
        self.assertEqual(contact.p_max, -1)
        self.assertEqual(contact.term(3), cr.q_plus_sigma_q)
        self.assertFalse(contact_filtration(cr).filtration.stable_top)


if __name__ == '__main__':
    unittest.main()
