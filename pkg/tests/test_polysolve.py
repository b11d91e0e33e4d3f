import unittest

# Добавляем путь к родительской директории, чтобы можно было импортировать scripts
import sys
import os
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

import sympy as sp

from scripts.errors import InputError
from scripts.field import Scalar
from scripts.polysolve import Poly, satisfies, solve_system, symbol

x = Poly.var("x")
y = Poly.var("y")
t = Poly.var("t")


class TestPoly(unittest.TestCase):

    def test_arithmetic(self):
        self.assertEqual((x + y) ** 2, x * x + 2 * x * y + y * y)
        self.assertEqual(x - x, Poly())
        self.assertTrue((x - x).is_zero())
        self.assertEqual((2 * x) / 2, x)

    def test_str(self):
        self.assertEqual(str(x * x - 2 * y + 1), "x^2 - 2*y + 1")
        self.assertEqual(str(Poly()), "0")

    def test_diff_and_subs(self):
        self.assertEqual((x ** 3).diff("x"), 3 * x * x)
        self.assertEqual((x * x).subs({"x": y + 1}), y * y + 2 * y + 1)
        self.assertEqual((x * y).variables(), ["x", "y"])

    def test_evaluate(self):
        self.assertEqual((x * y).evaluate({"x": 2, "y": "1/2"}), Scalar(1))
        with self.assertRaises(InputError):
            (x * y).evaluate({"x": 1})

    def test_real_and_imag_parts(self):
        p = Scalar(1, 2) * x
        self.assertEqual(p.real_part(), x)
        self.assertEqual(p.imag_part(), 2 * x)

    def test_division_only_by_constants(self):
        with self.assertRaises(InputError):
            x / y
        with self.assertRaises(ZeroDivisionError):
            x / 0

    def test_sympy_expressions(self):
        p = Poly.from_expr(sp.I * symbol("x") ** 2 + sp.Rational(1, 2) * symbol("y"))
        self.assertEqual(p, Scalar(0, 1) * x * x + Scalar.parse("1/2") * y)
        self.assertEqual(sp.expand(p.as_expr() - (sp.I * symbol("x") ** 2 + symbol("y") / 2)), 0)
        self.assertEqual(p.conj(), Scalar(0, -1) * x * x + Scalar.parse("1/2") * y)
        self.assertEqual(Poly.from_expr(sp.Integer(3)), Poly.const(3))
        with self.assertRaises(InputError):
            Poly.from_expr(1 / symbol("x"))
        with self.assertRaises(InputError):
            Poly.from_expr(sp.sqrt(2) * symbol("x"))

    def test_unused_variables_are_dropped(self):
        self.assertEqual((x + y - y).variables(), ["x"])
        self.assertTrue((x * y - y * x).is_constant())
        self.assertEqual(hash(Poly.const(2)), hash(Scalar(2)))


class TestSolveSystem(unittest.TestCase):

    def test_linear_system(self):
        equations = [x + y - 3, x - y - 1]
        branches = solve_system(equations, ["x", "y"])
        self.assertEqual(len(branches), 1)
        branch = branches[0]
        self.assertEqual(branch.assignments["x"], 2)
        self.assertEqual(branch.assignments["y"], 1)
        self.assertEqual(branch.residue, [])
        self.assertEqual(branch.to_dict(), {"assignments": {"x": "2", "y": "1"}, "residue": []})
        self.assertTrue(satisfies(equations, branch.solution(["x", "y"])))

    def test_gaussian_linear_system(self):
        i = Scalar(0, 1)
        equations = [x + i * y - 1, x - i * y - 1]
        branch = solve_system(equations, ["x", "y"])[0]
        self.assertEqual(branch.assignments["x"], 1)
        self.assertTrue(branch.assignments["y"].is_zero())
        self.assertTrue(satisfies(equations, branch.solution(["x", "y"])))

    def test_inconsistent_system(self):
        self.assertEqual(solve_system([x - 1, x - 2], ["x"]), [])

    def test_parameters_stay_free(self):
        branch = solve_system([x - t * y], ["x", "y"])[0]
        self.assertEqual(branch.free(["x", "y"]), ["y"])
        self.assertEqual(branch.solution(["x", "y"])["x"], t * y)

    def test_split_on_products(self):
        unsplit = solve_system([x * y], ["x", "y"])
        self.assertEqual(len(unsplit), 1)
        self.assertEqual(unsplit[0].residue, [x * y])
        branches = solve_system([x * y], ["x", "y"], split=True)
        self.assertEqual(sorted(tuple(b.assignments) for b in branches), [("x",), ("y",)])
        for b in branches:
            self.assertTrue(satisfies([x * y], b.solution(["x", "y"])))


if __name__ == '__main__':
    unittest.main()
