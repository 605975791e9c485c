#!/usr/bin/python

"""
This script contains unittests for resolvent.py

Execute either as:
    python test_resolvent.py
or:
    python -m unittest test_resolvent
"""

import unittest
import numpy as np
import borglev.resolvent as resolvent
from borglev import norms
from borglev.mesh import build_grid, sample_potential, assemble_hamiltonian
from borglev.spectrum import compute_spectrum
from borglev.exceptions import (NearSingular, SpectrumHit, BadQuery,
                                NonPositiveSpectrum, ShapeMismatch)


class TestResolvent(unittest.TestCase):
    """ Tests direct and series application of the resolvent
    """

    @classmethod
    def setUpClass(cls):
        """ once before all tests """
        cls.grid = build_grid(2, 8)
        cls.op = assemble_hamiltonian(
            cls.grid, sample_potential({"kind": "bump", "amplitude": 5.},
                                       cls.grid))
        cls.sd = compute_spectrum(cls.op, cls.grid.dimension)
        cls.dense = cls.op.matrix.toarray()

    @classmethod
    def tearDownClass(cls):
        """ once after all tests """
        resolvent.clear_factor_cache()

    def setUp(self):
        "before each test"
        self.rng = np.random.RandomState(17)

    def tearDown(self):
        "after each test"
        pass

    ### tests start here ###

    def test_eigenvector(self):
        phi = self.sd.vectors[0]
        u = resolvent.apply_resolvent_direct(self.op, -1., phi)
        np.testing.assert_allclose(u, phi / (self.sd.values[0] + 1.),
                                   atol=1e-8)

    def test_dense_oracle(self):
        f = self.rng.normal(size=self.grid.dimension)
        for lam in (-3., 2. + 5j, 40. - 0.5j):
            u = resolvent.apply_resolvent_direct(self.op, lam, f)
            exact = np.linalg.solve(self.dense - lam * np.eye(len(f)), f)
            self.assertLess(np.linalg.norm(u - exact) /
                            np.linalg.norm(exact), 1e-8)

    def test_near_singular(self):
        # 64 is an exact eigenvalue of -Delta_h for N = 4, modes (2, 2)
        grid = build_grid(2, 4)
        free = assemble_hamiltonian(grid, sample_potential({"kind": "zero"},
                                                           grid))
        with self.assertRaises(NearSingular):
            resolvent.factorize(free, 64.)
        with self.assertRaises(NearSingular):
            resolvent.apply_resolvent_direct(free, 64., np.ones(9))

    def test_factor_shared(self):
        first = resolvent.factorize(self.op, 3. + 0j)
        again = resolvent.factorize(self.op, 3.)
        self.assertIs(first, again)
        self.assertIsInstance(first.lam, float)

    def test_series_matches_direct(self):
        for lam in (-3., 2. + 5j, 40. - 0.5j):
            f = self.rng.normal(size=self.grid.dimension)
            series = resolvent.apply_resolvent_series(self.sd, lam, f)
            direct = resolvent.apply_resolvent_direct(self.op, lam, f)
            self.assertLess(np.linalg.norm(series - direct) /
                            np.linalg.norm(direct), 1e-8)

    def test_series_columns(self):
        f = self.rng.normal(size=(self.grid.dimension, 3))
        block = resolvent.apply_resolvent_series(self.sd, 1j, f)
        np.testing.assert_allclose(
            block[:, 2], resolvent.apply_resolvent_series(self.sd, 1j,
                                                          f[:, 2]))

    def test_series_modes(self):
        phi = self.sd.vectors[1]
        u = resolvent.apply_resolvent_series(self.sd, 4j, phi)
        np.testing.assert_allclose(u, phi / (self.sd.values[1] - 4j),
                                   atol=1e-12)
        orthogonal = resolvent.apply_resolvent_series(
            self.sd, 4j, self.sd.vectors[4], K=3)
        self.assertLess(np.max(np.abs(orthogonal)), 1e-12)

    def test_spectrum_hit(self):
        with self.assertRaises(SpectrumHit):
            resolvent.apply_resolvent_series(self.sd, self.sd.values[1],
                                             self.sd.vectors[0])

    def test_shape_mismatch(self):
        with self.assertRaises(ShapeMismatch):
            resolvent.apply_resolvent_direct(self.op, 1j, np.ones(10))

    def test_resolvent_identity(self):
        f = self.rng.normal(size=self.grid.dimension)
        a, b = 3. + 2j, -5. + 1j
        left = (resolvent.apply_resolvent_direct(self.op, a, f) -
                resolvent.apply_resolvent_direct(self.op, b, f))
        right = (a - b) * resolvent.apply_resolvent_direct(
            self.op, a, resolvent.apply_resolvent_direct(self.op, b, f))
        self.assertLess(np.linalg.norm(left - right) / np.linalg.norm(left),
                        1e-10)

    def test_conjugate_symmetry(self):
        f = self.rng.normal(size=self.grid.dimension)
        lam = 12. + 3j
        np.testing.assert_allclose(
            resolvent.apply_resolvent_direct(self.op, np.conj(lam), f),
            np.conj(resolvent.apply_resolvent_direct(self.op, lam, f)),
            atol=1e-12)


class TestBounds(unittest.TestCase):
    """ Tests the resolvent bound checks
    """

    @classmethod
    def setUpClass(cls):
        """ once before all tests """
        cls.grid = build_grid(2, 8)
        cls.op = assemble_hamiltonian(
            cls.grid, sample_potential({"kind": "bump", "amplitude": 5.},
                                       cls.grid))
        cls.sd = compute_spectrum(cls.op, cls.grid.dimension)
        cls.free = assemble_hamiltonian(
            cls.grid, sample_potential({"kind": "zero"}, cls.grid))
        cls.free_sd = compute_spectrum(cls.free, 1)

    @classmethod
    def tearDownClass(cls):
        """ once after all tests """
        resolvent.clear_factor_cache()

    def setUp(self):
        "before each test"
        pass

    def tearDown(self):
        "after each test"
        pass

    ### tests start here ###

    def test_random_fields(self):
        fields = resolvent.random_fields(self.grid, 4, 1234)
        self.assertEqual(fields.shape, (self.grid.dimension, 4))
        np.testing.assert_array_equal(
            fields, resolvent.random_fields(self.grid, 4, 1234))

    def test_im_bound(self):
        for lam in (10. + 3j, -50. + 0.1j, 200. - 20j):
            value = resolvent.check_im_bound(self.op, lam, 20, 1234)
            self.assertLessEqual(value, 1. + 1e-10)

    def test_im_bound_attained(self):
        lam = self.sd.values[0] + 1e-3j
        value = resolvent.check_im_bound(self.op, lam, 1, 0,
                                         fields=self.sd.vectors[0][:, None])
        self.assertAlmostEqual(value, 1., places=6)

    def test_im_bound_real(self):
        with self.assertRaises(BadQuery):
            resolvent.check_im_bound(self.op, -4., 5, 0)

    def test_lp_bound_single_mode(self):
        phi = self.sd.vectors[0]
        m = 5
        tau = (m + 1j) ** 2
        value = resolvent.check_lp_bound(self.sd, m, 1, 0,
                                         fields=phi[:, None])
        expected = (norms.lp_norm(phi, np.inf, self.grid) /
                    (abs(self.sd.values[0] - tau) * 2. * m *
                     norms.lp_norm(phi, 1., self.grid)))
        self.assertAlmostEqual(value / expected, 1., places=8)

    def test_lp_bound_deterministic(self):
        first = resolvent.check_lp_bound(self.sd, 10, 20, 1234)
        second = resolvent.check_lp_bound(self.sd, 10, 20, 1234)
        self.assertEqual(first, second)
        self.assertTrue(np.isfinite(first))

    def test_lp_bound_needs_positive(self):
        negative = self.sd._replace(values=self.sd.values - 100.)
        with self.assertRaises(NonPositiveSpectrum):
            resolvent.check_lp_bound(negative, 10, 5, 0)

    def test_sup_ratio(self):
        single = self.sd._replace(values=np.array([99.]))
        self.assertAlmostEqual(resolvent.sup_ratio(single, 10), 4.95,
                               places=12)
        for m in (2, 5, 10):
            self.assertLessEqual(resolvent.sup_ratio(self.sd, m), m)

    def test_real_decay_mode(self):
        phi = self.sd.vectors[0]
        lams = [-1e2, -1e3, -1e4]
        values = resolvent.check_real_decay(self.op, lams, 1, 0,
                                            fields=phi[:, None])
        for lam, value in zip(lams, values):
            expected = abs(lam) / (self.sd.values[0] - lam)
            self.assertAlmostEqual(value / expected, 1., places=8)

    def test_real_decay_increasing(self):
        values = resolvent.check_real_decay(self.op, [-1e2, -1e3, -1e4],
                                            20, 1234)
        self.assertTrue(values[0] < values[1] < values[2] <= 1.)
        self.assertEqual(resolvent.check_real_decay(self.op, [0.], 3, 1)[0],
                         0.)

    def test_real_decay_above_spectrum(self):
        with self.assertRaises(BadQuery):
            resolvent.check_real_decay(self.op, [self.sd.values[0] + 1.],
                                       3, 1)

    def test_agmon_mode(self):
        phi = self.free_sd.vectors[0]
        lam1 = self.free_sd.values[0]
        for lam in (-1e2, -1e4):
            value = resolvent.agmon_ratio(self.free, [lam], 1, 0,
                                          fields=phi[:, None])[0]
            expected = ((abs(lam) + abs(lam) ** 0.5 * lam1 ** 0.5 + lam1) /
                        (lam1 - lam))
            self.assertAlmostEqual(value / expected, 1., places=8)

    def test_agmon_bounded(self):
        values = resolvent.agmon_ratio(self.op, [-1e2, -1e3, -1e4], 10, 1234)
        self.assertEqual(len(values), 3)
        self.assertTrue(all(0. < v < 10. for v in values))


if __name__ == "__main__":
    unittest.main()
