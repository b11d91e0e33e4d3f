import unittest

# Добавляем путь к родительской директории, чтобы можно было импортировать scripts
import sys
import os
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from scripts.data_structures import VERDICT_FLEXIBLE
from scripts.deform import (
    GradedModule, adjoint_weight, build_deformation_problem, cochain_from_labels, cohomology_table,
    deformation_from_cocycle, induced_action, random_sanity, rigidity_solve, spencer_cohomology,
    weight_on_cocycles,
)
from scripts.errors import InputError
from scripts.field import matrix_spectrum, vscale
from scripts.liealg import Grading, LieAlgebra
from scripts.models import build
from scripts.polysolve import Poly


class TestSpencerCohomology(unittest.TestCase):

    @classmethod
    def setUpClass(cls):
        cls.entry = build("sl2_s3")
        cls.module = GradedModule.adjoint(cls.entry.grading)
        cls.table = cohomology_table(cls.module, 2)

    def test_dims(self):
        dims = {d: r.dim for d, r in self.table.items()}
        self.assertEqual(dims.get(1, 0), 0)
        self.assertEqual(dims[2], 1)
        self.assertEqual(dims[3], 2)
        self.assertEqual(dims[4], 2)
        self.assertTrue(all(v == 0 for d, v in dims.items() if d > 4))

    def test_differential_squares_to_zero(self):
        self.assertTrue(all(r.squares_zero for r in self.table.values()))

    def test_weight_on_h22(self):
        weight = adjoint_weight(self.module, self.entry.elements["Et"])
        action = induced_action(self.table[2], weight)
        self.assertEqual(str(action[0, 0]), "-2")

    def weight_spectrum(self, d):
        weight = adjoint_weight(self.module, self.entry.elements["Et"])
        values = []
        for lam, space in matrix_spectrum(induced_action(self.table[d], weight)):
            values.extend([str(lam)] * space.dim)
        return sorted(values)

    def test_weights_on_h32_and_h42(self):
        self.assertEqual(self.weight_spectrum(3), ["-5", "-6"])
        self.assertEqual(self.weight_spectrum(4), ["-7", "-8"])

    def test_degree_three_cochains(self):
        h32 = self.table[3]
        weight = adjoint_weight(self.module, self.entry.elements["Et"])
        first = cochain_from_labels(h32.space, {"e-2,z": {"L": 1}, "e-2,zb": {"Lb": -1}})
        second = cochain_from_labels(h32.space, {"e-2,z": {"L": 1, "Lb": 1}, "e-2,zb": {"L": 1, "Lb": 1}})
        self.assertTrue(h32.is_cocycle(first))
        self.assertFalse(h32.is_coboundary(first))
        self.assertFalse(h32.is_cocycle(second))
        report = weight_on_cocycles(h32, weight, [first, second], names=["first", "second"])
        self.assertEqual(report.data["eigenvalues"], ["-5", None])
        self.assertTrue(report.item("first").ok)
        self.assertFalse(report.item("second").ok)
        self.assertEqual(report.item("second").details["boundary"], {"e-2,z,zb": {"z": "-8", "zb": "8"}})

    def test_degree_four_cochains_are_weight_classes(self):
        h42 = self.table[4]
        weight = adjoint_weight(self.module, self.entry.elements["Et"])
        cochains = [
            cochain_from_labels(h42.space, {"e-2,z": {"N": 1, "Nb": 7}, "e-2,zb": {"N": 7, "Nb": 1}}),
            cochain_from_labels(h42.space, {"e-2,z": {"N": 1, "Nb": 1}, "e-2,zb": {"N": -1, "Nb": -1}}),
        ]
        report = weight_on_cocycles(h42, weight, cochains)
        self.assertTrue(report.ok)
        self.assertEqual(report.data["eigenvalues"], ["-7", "-8"])

    def test_cochain_from_labels_orders_arguments(self):
        space = self.table[3].space
        forward = cochain_from_labels(space, {"e-2,z": {"L": 1}})
        backward = cochain_from_labels(space, {"z,e-2": {"L": 1}})
        self.assertEqual(backward, vscale(-1, forward))
        for bad in ({"e-2,e-2": {"L": 1}}, {"e-2,w": {"L": 1}}, {"e-2,z": {"Q": 1}}, {"e-2,z": {"N": 1}}):
            with self.subTest(values=bad):
                with self.assertRaises(InputError):
                    cochain_from_labels(space, bad)

    def test_cocycle_deformation_first_order(self):
        h22 = self.table[2]
        report = deformation_from_cocycle(self.module, h22, h22.representatives[0])
        self.assertTrue(report.ok)

    def test_unsupported_k(self):
        with self.assertRaises(InputError):
            spencer_cohomology(self.module, 1, 3)

    def test_trivial_module_on_plane(self):
        plane = LieAlgebra.from_brackets(["a", "b"], {}, field="Q", name="R2")
        table = cohomology_table(GradedModule.trivial(Grading(plane, [-1, -1]), degree=0), 2)
        self.assertEqual(sorted(table), [1, 2])
        self.assertEqual(table[1].dim, 0)
        self.assertEqual(table[2].dim, 1)

    def test_adjoint_needs_negative_part(self):
        with self.assertRaises(InputError):
            GradedModule.adjoint(build("heis3_pos").grading)


class TestRigidity(unittest.TestCase):

    def setUp(self):
        entry = build("rigid_sl2_s3")
        self.problem = build_deformation_problem(entry.grading, entry.elements["Et"])

    def single_parameter(self, triple, label):
        """Имя λ, если якобиатор тройки равен −2λ·label."""
        equations = {tuple(eq.triple): eq.value for eq in self.problem.jacobiators()}
        value = equations[triple]
        self.assertEqual(set(value), {label})
        variables = value[label].variables()
        self.assertEqual(len(variables), 1)
        self.assertEqual(value[label], Poly.var(variables[0]) * -2)
        return variables[0]

    def test_parameters(self):
        self.assertEqual(self.problem.parameters, ["λ0", "λ1", "λ2", "λ3"])

    def test_rigid(self):
        cert = rigidity_solve(self.problem)
        self.assertTrue(cert.rigid)

    def test_extreme_jacobiators(self):
        first = self.single_parameter(("Y", "v0", "v1"), "X")
        last = self.single_parameter(("X", "v2", "v3"), "Y")
        self.assertNotEqual(first, last)

    def test_random_sanity(self):
        self.assertTrue(random_sanity(self.problem, seed=3, count=10).ok)

    def test_heisenberg_negative_is_flexible(self):
        cert = rigidity_solve(build_deformation_problem(build("heis3_neg").grading))
        self.assertEqual(cert.verdict, VERDICT_FLEXIBLE)
        self.assertTrue(cert.witness)

    def test_heisenberg_positive_has_no_parameters(self):
        problem = build_deformation_problem(build("heis3_pos").grading)
        self.assertEqual(problem.parameters, [])
        self.assertTrue(rigidity_solve(problem).rigid)

    def test_weight_must_be_diagonal(self):
        entry = build("sl2_s3")
        with self.assertRaises(InputError):
            build_deformation_problem(entry.grading, entry.algebra.e("z"))


if __name__ == '__main__':
    unittest.main()
