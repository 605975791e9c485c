#!/usr/bin/python

"""
This script contains unittests for spectrum.py

Execute either as:
    python test_spectrum.py
or:
    python -m unittest test_spectrum
"""

import unittest
import numpy as np
import borglev.spectrum as spectrum
from borglev.mesh import (build_grid, sample_potential, assemble_hamiltonian,
                          PotentialField)
from borglev.exceptions import KTooLarge, RangeTooSmall, GridMismatch, BadMode


def cube_values(n, N, K):
    """ lowest K eigenvalues of -Delta_h on the unit box """
    M = N - 1
    mu = 4. * N * N * np.sin(0.5 * np.pi * np.arange(1, M + 1) / N) ** 2
    total = mu
    for _ in range(n - 1):
        total = np.add.outer(total, mu).ravel()
    return np.sort(total)[:K]


def operator(grid, descriptor):
    return assemble_hamiltonian(grid, sample_potential(descriptor, grid))


class TestComputeSpectrum(unittest.TestCase):
    """ Tests compute_spectrum on the free box against closed forms
    """

    @classmethod
    def setUpClass(cls):
        """ once before all tests """
        cls.grid = build_grid(3, 16)
        cls.op = operator(cls.grid, {"kind": "zero"})
        cls.sd = spectrum.compute_spectrum(cls.op, 10)

    @classmethod
    def tearDownClass(cls):
        """ once after all tests """
        pass

    def setUp(self):
        "before each test"
        pass

    def tearDown(self):
        "after each test"
        pass

    ### tests start here ###

    def test_first_value(self):
        expected = 3. * 1024. * np.sin(np.pi / 32.) ** 2
        self.assertAlmostEqual(self.sd.values[0] / expected, 1., places=9)
        continuum = 3. * np.pi ** 2
        self.assertLess(abs(self.sd.values[0] / continuum - 1.), 5e-3)

    def test_closed_form(self):
        np.testing.assert_allclose(self.sd.values, cube_values(3, 16, 10),
                                   rtol=1e-9)

    def test_multiplicity(self):
        second = self.sd.values[1:4]
        self.assertLess(np.ptp(second) / second[0], 1e-9)

    def test_orthonormal(self):
        np.testing.assert_allclose(self.sd.gram(), np.eye(10), atol=1e-8)

    def test_residuals(self):
        self.assertTrue(np.all(self.sd.residuals <= 1e-8 * self.sd.values +
                               1e-8))

    def test_sign_convention(self):
        for vector in self.sd.vectors:
            self.assertGreater(vector[np.argmax(np.abs(vector))], 0.)

    def test_first_vector_is_sine(self):
        x = self.grid.interior_coords
        sine = 2. ** 1.5 * np.prod(np.sin(np.pi * x), axis=1)
        np.testing.assert_allclose(self.sd.vectors[0], sine, atol=1e-7)

    def test_read_only(self):
        with self.assertRaises(ValueError):
            self.sd.values[0] = 0.

    def test_k_too_large(self):
        small = operator(build_grid(2, 4), {"kind": "zero"})
        with self.assertRaises(KTooLarge):
            spectrum.compute_spectrum(small, 10)
        with self.assertRaises(KTooLarge):
            spectrum.compute_spectrum(small, 0)
        with self.assertRaises(KTooLarge):
            self.sd.truncated(11)

    def test_full_basis(self):
        small = operator(build_grid(2, 4), {"kind": "bump", "amplitude": 2.})
        sd = spectrum.compute_spectrum(small, 9)
        np.testing.assert_allclose(
            sd.values, np.linalg.eigvalsh(small.matrix.toarray()),
            rtol=1e-12)

    def test_dense_matches_sparse(self):
        op = operator(build_grid(3, 10), {"kind": "bump", "amplitude": 5.})
        dense = spectrum.compute_spectrum(op, 7)
        sparse = spectrum.compute_spectrum(op, 7, dense_limit=0)
        np.testing.assert_allclose(dense.values, sparse.values, rtol=1e-10)
        # the ground state is simple, so the vectors agree up to roundoff
        np.testing.assert_allclose(dense.vectors[0], sparse.vectors[0],
                                   atol=1e-8)


class TestShiftAndTraces(unittest.TestCase):
    """ Tests shift_to_positive and neumann_traces
    """

    @classmethod
    def setUpClass(cls):
        """ once before all tests """
        cls.grid = build_grid(3, 16)
        cls.sd = spectrum.compute_spectrum(
            operator(cls.grid, {"kind": "zero"}), 4)

    @classmethod
    def tearDownClass(cls):
        """ once after all tests """
        pass

    def setUp(self):
        "before each test"
        pass

    def tearDown(self):
        "after each test"
        pass

    ### tests start here ###

    def test_positive_shift(self):
        shifted = spectrum.shift_to_positive(self.sd)
        self.assertEqual(shifted.shift, 1.)
        np.testing.assert_array_equal(shifted.values, self.sd.values + 1.)
        np.testing.assert_allclose(shifted.unshifted_values(),
                                   self.sd.values, rtol=1e-15)

    def test_negative_shift(self):
        negative = self.sd._replace(values=self.sd.values -
                                    self.sd.values[0] - 4.2)
        shifted = spectrum.shift_to_positive(negative)
        self.assertAlmostEqual(shifted.shift, 5.2, places=12)
        self.assertAlmostEqual(shifted.values[0], 1., places=12)

    def test_shift_accumulates(self):
        once = spectrum.shift_to_positive(self.sd)
        twice = spectrum.shift_to_positive(once)
        np.testing.assert_array_equal(twice.values, once.values + 1.)
        self.assertEqual(twice.shift, 2.)

    def test_onesided_face_center(self):
        sd = spectrum.neumann_traces(self.sd, "onesided2")
        grid = self.grid
        face = np.flatnonzero((grid.boundary_axis == 0) &
                              (grid.boundary_side == -1) &
                              (grid.boundary_coords[:, 1] == 0.5) &
                              (grid.boundary_coords[:, 2] == 0.5))
        self.assertEqual(len(face), 1)
        continuum = -np.pi * 2. ** 1.5
        self.assertLess(abs(sd.traces[0, face[0]] / continuum - 1.), 0.02)
        self.assertEqual(sd.trace_mode, "onesided2")
        self.assertEqual(sd.pairs[0].neumann_trace.shape, (grid.n_boundary,))

    def test_variational_traces(self):
        sd = spectrum.neumann_traces(self.sd, "variational")
        expected = -self.sd.vectors[:, self.grid.inner1] / self.grid.h
        np.testing.assert_allclose(sd.traces, expected, rtol=1e-14)

    def test_traces_ignore_shift(self):
        shifted = spectrum.shift_to_positive(self.sd)
        np.testing.assert_array_equal(
            spectrum.neumann_traces(shifted, "onesided2").traces,
            spectrum.neumann_traces(self.sd, "onesided2").traces)

    def test_bad_mode(self):
        with self.assertRaises(BadMode):
            spectrum.neumann_traces(self.sd, "Test")


class TestWeyl(unittest.TestCase):
    """ Tests Weyl constants and fits
    """

    @classmethod
    def setUpClass(cls):
        """ once before all tests """
        cls.grid = build_grid(2, 8)
        cls.sd = spectrum.compute_spectrum(
            operator(cls.grid, {"kind": "zero"}), cls.grid.dimension)

    @classmethod
    def tearDownClass(cls):
        """ once after all tests """
        pass

    def setUp(self):
        "before each test"
        pass

    def tearDown(self):
        "after each test"
        pass

    ### tests start here ###

    def test_constants(self):
        self.assertAlmostEqual(spectrum.weyl_constant(3), 15.19, places=2)
        self.assertAlmostEqual(spectrum.weyl_constant(2), 4. * np.pi,
                               places=12)
        self.assertAlmostEqual(spectrum.unit_ball_volume(1), 2., places=14)
        self.assertAlmostEqual(spectrum.boundary_weyl_coefficient(2),
                               1. / np.pi, places=14)

    def test_power_law(self):
        k = np.arange(1, self.sd.count + 1, dtype=float)
        synthetic = self.sd._replace(values=5. * k ** 0.5)
        fit = spectrum.weyl_fit(synthetic, (5, 45))
        self.assertAlmostEqual(fit["exponent"], 0.5, places=10)
        self.assertAlmostEqual(fit["constant"], 5., places=8)
        self.assertEqual(fit["predicted_exponent"], 1.)

    def test_two_term_correction(self):
        # values whose two-term counting function is exact
        k = np.arange(1, self.sd.count + 1, dtype=float)
        root = 2. + 2. * np.sqrt(1. + np.pi * k)
        synthetic = self.sd._replace(values=root ** 2)
        fit = spectrum.weyl_fit(synthetic, (5, 45), boundary_correction=True)
        self.assertAlmostEqual(fit["corrected_exponent"], 1., places=10)
        self.assertAlmostEqual(fit["corrected_constant"] / (4. * np.pi), 1.,
                               places=8)

    def test_range_too_small(self):
        with self.assertRaises(RangeTooSmall):
            spectrum.weyl_fit(self.sd, (10, 20))
        with self.assertRaises(RangeTooSmall):
            spectrum.weyl_fit(self.sd, (10, 60))

    def test_loglog_fit(self):
        x = np.array([1., 10., 100.])
        slope, constant = spectrum.loglog_fit(x, 3. / x)
        self.assertAlmostEqual(slope, -1., places=12)
        self.assertAlmostEqual(constant, 3., places=10)


class TestComparisons(unittest.TestCase):
    """ Tests min-max monotonicity, shift equivariance, ratio tails and
    eigenfunction norm growth
    """

    @classmethod
    def setUpClass(cls):
        """ once before all tests """
        cls.grid = build_grid(2, 16)
        cls.zero = spectrum.compute_spectrum(
            operator(cls.grid, {"kind": "zero"}), 30)
        cls.bump = spectrum.compute_spectrum(
            operator(cls.grid, {"kind": "bump", "amplitude": 5.}), 30)

    @classmethod
    def tearDownClass(cls):
        """ once after all tests """
        pass

    def setUp(self):
        "before each test"
        pass

    def tearDown(self):
        "after each test"
        pass

    ### tests start here ###

    def test_min_max(self):
        self.assertTrue(np.all(self.bump.values >= self.zero.values - 1e-9))

    def test_constant_shift(self):
        constant = PotentialField(np.full(self.grid.dimension, 3.),
                                  {"kind": "constant"}, self.grid)
        sd = spectrum.compute_spectrum(
            assemble_hamiltonian(self.grid, constant), 30)
        np.testing.assert_allclose(sd.values, self.zero.values + 3.,
                                   rtol=1e-10)

    def test_ratio_tail(self):
        self.assertEqual(spectrum.eigen_ratio_tail(self.zero, self.zero, 1),
                         0.)
        tail = spectrum.eigen_ratio_tail(self.bump, self.zero, 10)
        self.assertGreater(tail, 0.)
        # |lambda_k(q) - lambda_k(0)| <= max q
        self.assertLessEqual(tail, 5. / self.zero.values[9])

    def test_ratio_tail_errors(self):
        other = spectrum.compute_spectrum(
            operator(build_grid(2, 8), {"kind": "zero"}), 30)
        with self.assertRaises(GridMismatch):
            spectrum.eigen_ratio_tail(self.bump, other, 1)
        with self.assertRaises(RangeTooSmall):
            spectrum.eigen_ratio_tail(self.bump, self.zero, 31)

    def test_norm_growth(self):
        growth = spectrum.eig_norm_growth(self.zero)
        lam = self.zero.values
        np.testing.assert_allclose(growth["spectral"], lam / (lam + 1.),
                                   rtol=1e-8)
        np.testing.assert_allclose(growth["difference"],
                                   np.sqrt(1. + lam + lam ** 2) / (lam + 1.),
                                   rtol=1e-8)


if __name__ == "__main__":
    unittest.main()
