import unittest
import random
from fractions import Fraction

# Добавляем путь к родительской директории, чтобы можно было импортировать scripts
import sys
import os
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from scripts.errors import InputError, NotSplitError
from scripts.field import (
    I, ONE, ZERO, TAG_Q, TAG_QI, Frame, Matrix, Scalar, Subspace, matrix_spectrum, nullspace, rank, rref,
    solve, split_eigenvalues, to_scalar, unit_vector, vec,
)


class TestScalar(unittest.TestCase):

    def test_parse_formats(self):
        self.assertEqual(Scalar.parse("3"), Scalar(3))
        self.assertEqual(Scalar.parse("-1/2*i"), Scalar(0, Fraction(-1, 2)))
        self.assertEqual(Scalar.parse("1/2-1/3*i"), Scalar(Fraction(1, 2), Fraction(-1, 3)))
        self.assertEqual(Scalar.parse("i"), I)
        self.assertEqual(Scalar.parse("1+2*i"), Scalar(1, 2))

    def test_parse_rejects_garbage(self):
        for text in ("abc", "", "2/0", "1/2*j"):
            with self.assertRaises(InputError):
                Scalar.parse(text)

    def test_str_roundtrip_examples(self):
        for text in ("0", "-7/3", "1/2*i", "3-1/4*i"):
            self.assertEqual(str(Scalar.parse(text)), text)

    def test_tags(self):
        self.assertEqual(Scalar(2).tag, TAG_Q)
        self.assertEqual(Scalar.parse("i").tag, TAG_QI)
        # результат несет тег QI, если он был у операнда
        self.assertEqual((Scalar(1) + Scalar(1, 0, TAG_QI)).tag, TAG_QI)
        with self.assertRaises(InputError):
            Scalar(0, 1, TAG_Q)

    def test_field_axioms_on_random_elements(self):
        rng = random.Random(7)

        def draw():
            return Scalar(Fraction(rng.randint(-9, 9), rng.randint(1, 5)), Fraction(rng.randint(-9, 9), rng.randint(1, 5)))

        for _ in range(50):
            a, b, c = draw(), draw(), draw()
            self.assertEqual(a * (b + c), a * b + a * c)
            self.assertEqual((a * b).conj(), a.conj() * b.conj())
            if not a.is_zero():
                self.assertEqual(a * a.inverse(), ONE)

    def test_i_squared(self):
        self.assertEqual(I * I, Scalar(-1))
        self.assertEqual(I ** 4, ONE)
        self.assertEqual(2 - I, Scalar(2, -1))

    def test_to_scalar(self):
        self.assertEqual(to_scalar("1/3"), Scalar(Fraction(1, 3)))
        self.assertEqual(to_scalar(Fraction(2, 5)), Scalar(Fraction(2, 5)))
        with self.assertRaises(InputError):
            to_scalar(True)
        with self.assertRaises(InputError):
            to_scalar(0.5)

    def test_zero_division(self):
        with self.assertRaises(ZeroDivisionError):
            ZERO.inverse()


class TestMatrixAndRref(unittest.TestCase):

    def test_rref_rank_pivots(self):
        m = Matrix([[1, 2, 3], [2, 4, 6], [1, 0, 1]])
        reduced, r, pivots = rref(m)
        self.assertEqual(r, 2)
        self.assertEqual(pivots, [0, 1])
        self.assertEqual(reduced.rows[0], vec([1, 0, 1]))
        self.assertEqual(reduced.rows[1], vec([0, 1, 1]))
        self.assertTrue(all(x.is_zero() for x in reduced.rows[2]))

    def test_nullspace_and_solve(self):
        m = Matrix([[1, 1, 0], [0, 1, 1]])
        kernel = nullspace(m)
        self.assertEqual(kernel.dim, 1)
        self.assertTrue(all(x.is_zero() for x in m.apply(kernel.basis[0])))
        x = solve(m, [1, 2])
        self.assertEqual(m.apply(x), vec([1, 2]))
        self.assertIsNone(solve(Matrix([[1, 1], [1, 1]]), [1, 2]))

    def test_complex_rank(self):
        m = Matrix([[ONE, I], [I, Scalar(-1)]], 2, TAG_QI)
        self.assertEqual(m.field, TAG_QI)
        self.assertEqual(rank(m), 1)

    def test_matmul_identity(self):
        m = Matrix([[1, 2], [3, 4]])
        self.assertEqual(Matrix.identity(2) @ m, m)
        self.assertTrue((m - m).is_zero())

    def test_mixed_fields_rejected(self):
        with self.assertRaises(InputError):
            Matrix([[ONE, Scalar(0, 1)]], 2, TAG_Q)
        with self.assertRaises(InputError):
            Matrix([[1, 2], [3]])


class TestRandomGaussianMatrices(unittest.TestCase):

    def setUp(self):
        self.rng = random.Random(11)

    def draw(self):
        if self.rng.random() < 0.3:
            return ZERO
        return Scalar(Fraction(self.rng.randint(-5, 5), self.rng.randint(1, 3)), self.rng.randint(-3, 3))

    def random_matrix(self, nrows, ncols, rank_at_most=None):
        if rank_at_most is None:
            return Matrix([[self.draw() for _ in range(ncols)] for _ in range(nrows)], ncols, TAG_QI)
        left = self.random_matrix(nrows, rank_at_most)
        right = self.random_matrix(rank_at_most, ncols)
        return left @ right

    def random_subspace(self, count, n=5):
        return Subspace.span([self.random_matrix(1, n).rows[0] for _ in range(count)], n)

    def test_rref_is_idempotent(self):
        for shape in ((3, 4), (4, 4), (5, 3)):
            for r in (None, 2):
                with self.subTest(shape=shape, rank=r):
                    reduced, k, pivots = rref(self.random_matrix(*shape, rank_at_most=r))
                    again, k2, pivots2 = rref(reduced)
                    self.assertEqual(again, reduced)
                    self.assertEqual((k2, pivots2), (k, pivots))

    def test_nullspace_is_annihilated(self):
        for shape in ((2, 5), (4, 4), (3, 6)):
            m = self.random_matrix(*shape, rank_at_most=2)
            kernel = nullspace(m)
            self.assertEqual(kernel.dim + rank(m), m.ncols)
            for v in kernel.basis:
                self.assertTrue(all(x.is_zero() for x in m.apply(v)))

    def test_grassmann_identity(self):
        for a, b in ((1, 1), (2, 3), (3, 3), (4, 2), (0, 2)):
            with self.subTest(a=a, b=b):
                u, w = self.random_subspace(a), self.random_subspace(b)
                # общее направление, чтобы пересечение было нетривиальным
                if a and b:
                    shared = self.random_matrix(1, 5).rows[0]
                    u = u + Subspace.span([shared], 5)
                    w = w + Subspace.span([shared], 5)
                self.assertEqual((u + w).dim + (u & w).dim, u.dim + w.dim)
                self.assertTrue((u + w).contains_subspace(u))
                self.assertTrue(u.contains_subspace(u & w))


class TestSubspace(unittest.TestCase):

    def test_canonical_basis(self):
        a = Subspace.span([vec([1, 1, 0]), vec([0, 1, 1])], 3)
        b = Subspace.span([vec([1, 2, 1]), vec([1, 0, -1])], 3)
        self.assertEqual(a, b)
        self.assertEqual(hash(a), hash(b))

    def test_sum_and_intersection(self):
        xy = Subspace.span([unit_vector(3, 0), unit_vector(3, 1)], 3)
        yz = Subspace.span([unit_vector(3, 1), unit_vector(3, 2)], 3)
        self.assertEqual((xy + yz).dim, 3)
        self.assertEqual(xy.intersection(yz), Subspace.span([unit_vector(3, 1)], 3))
        self.assertEqual(xy.intersection(Subspace.zero(3)).dim, 0)

    def test_dimension_mismatch(self):
        with self.assertRaises(InputError):
            Subspace.full(2).sum(Subspace.full(3))
        with self.assertRaises(InputError):
            Subspace.span([vec([1, 2])], 3)

    def test_reduce_is_canonical(self):
        s = Subspace.span([vec([1, 1, 0])], 3)
        self.assertEqual(s.reduce(vec([2, 3, 5])), s.reduce(vec([0, 1, 5])))
        self.assertTrue(s.contains(vec([-3, -3, 0])))

    def test_conjugate_and_real_basis(self):
        v = (ONE, I)
        s = Subspace.span([v, (ONE, -I)], 2)
        self.assertTrue(s.is_conjugation_stable())
        self.assertEqual(len(s.real_basis()), 2)
        line = Subspace.span([v], 2)
        self.assertFalse(line.is_conjugation_stable())
        self.assertEqual(line.conjugate(), Subspace.span([(ONE, -I)], 2))


class TestFrame(unittest.TestCase):

    def test_coordinates(self):
        frame = Frame([vec([1, 1, 0]), vec([0, 1, 1])])
        v = vec([2, 5, 3])
        self.assertEqual(frame.coordinates(v), vec([2, 3]))
        self.assertIsNone(frame.try_coordinates(vec([1, 0, 0])))
        with self.assertRaises(InputError):
            frame.coordinates(vec([1, 0, 0]))

    def test_dependent_vectors(self):
        with self.assertRaises(InputError):
            Frame([vec([1, 2]), vec([2, 4])])


class TestSpectrum(unittest.TestCase):

    def test_rational_spectrum(self):
        m = Matrix([[2, 0, 0], [0, -1, 0], [0, 0, 2]])
        spectrum = matrix_spectrum(m)
        self.assertEqual([(str(lam), s.dim) for lam, s in spectrum], [("2", 2), ("-1", 1)])

    def test_gaussian_spectrum(self):
        m = Matrix([[Scalar(0, 0, TAG_QI), Scalar(-1, 0, TAG_QI)], [Scalar(1, 0, TAG_QI), Scalar(0, 0, TAG_QI)]])
        values = sorted(str(lam) for lam, _ in split_eigenvalues(m))
        self.assertEqual(values, ["-1*i", "1*i"])

    def test_fractional_eigenvalues(self):
        m = Matrix([[Fraction(1, 2), 0], [0, Fraction(-3, 4)]])
        self.assertEqual(sorted(str(lam) for lam, _ in split_eigenvalues(m)), ["-3/4", "1/2"])

    def test_not_split(self):
        with self.assertRaises(NotSplitError):
            matrix_spectrum(Matrix([[0, 1], [2, 0]]))
        with self.assertRaises(NotSplitError):
            matrix_spectrum(Matrix([[1, 1], [0, 1]]))


if __name__ == '__main__':
    unittest.main()
