#!/usr/bin/python

"""
This script contains unittests for mesh.py

Execute either as:
    python test_mesh.py
or:
    python -m unittest test_mesh
"""

import unittest
import numpy as np
import borglev.mesh as mesh
from borglev.exceptions import (GridTooSmall, UnsupportedDim, BadDescriptor,
                                GridMismatch, ShapeMismatch, BadMode)


class TestGrid(unittest.TestCase):
    """ Tests build_grid, the Grid index maps and its sparse blocks
    """

    @classmethod
    def setUpClass(cls):
        """ once before all tests """
        cls.grid3 = mesh.build_grid(3, 16)
        cls.grid2 = mesh.build_grid(2, 4)

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

    def test_counts(self):
        self.assertEqual(self.grid3.dimension, 3375)
        self.assertEqual(self.grid3.n_boundary, 1350)
        self.assertEqual(self.grid3.h, 0.0625)
        self.assertEqual(self.grid2.dimension, 9)
        self.assertEqual(self.grid2.n_boundary, 12)
        self.assertEqual(self.grid2.h, 0.25)

    def test_bad_grids(self):
        with self.assertRaises(GridTooSmall):
            mesh.build_grid(3, 2)
        with self.assertRaises(UnsupportedDim):
            mesh.build_grid(4, 8)

    def test_interior_bijection(self):
        index = self.grid3.interior_index(self.grid3.interior_nodes)
        np.testing.assert_array_equal(index, np.arange(3375))

    def test_boundary_layout(self):
        grid = self.grid2
        # first DOF: low face of axis 0, tangential index 1
        np.testing.assert_array_equal(grid.boundary_nodes[0], [0, 1])
        np.testing.assert_array_equal(grid.normals[0], [-1., 0.])
        self.assertEqual(grid.inner1[0], grid.interior_index([[1, 1]])[0])
        self.assertEqual(grid.inner2[0], grid.interior_index([[2, 1]])[0])
        # no edge or corner point is a DOF
        on_boundary = (grid.boundary_nodes == 0) | (grid.boundary_nodes == 4)
        np.testing.assert_array_equal(on_boundary.sum(axis=1), 1)

    def test_inward_lines(self):
        grid = self.grid3
        steps = (grid.interior_nodes[grid.inner1] - grid.boundary_nodes)
        np.testing.assert_array_equal(steps, -grid.normals.astype(int))
        steps = (grid.interior_nodes[grid.inner2] - grid.boundary_nodes)
        np.testing.assert_array_equal(steps, -2 * grid.normals.astype(int))

    def test_frozen(self):
        with self.assertRaises(ValueError):
            self.grid2.interior_coords[0, 0] = 1.

    def test_equality(self):
        self.assertEqual(self.grid2, mesh.build_grid(2, 4))
        self.assertNotEqual(self.grid2, mesh.build_grid(2, 5))
        self.assertEqual(hash(self.grid2), hash(mesh.build_grid(2, 4)))

    def test_lattice_field(self):
        grid = mesh.build_grid(3, 5)
        full = grid.lattice_field(np.zeros(grid.dimension),
                                  np.ones(grid.n_boundary))
        self.assertEqual(full.shape, (6, 6, 6))
        self.assertEqual(full[0, 0, 0], 1.)
        self.assertEqual(full[0, 0, 3], 1.)
        self.assertEqual(full[2, 2, 2], 0.)
        f = np.arange(grid.n_boundary, dtype=float)
        full = grid.lattice_field(np.zeros(grid.dimension), f)
        np.testing.assert_array_equal(full[tuple(grid.boundary_nodes.T)], f)

    def test_check_shapes(self):
        with self.assertRaises(ShapeMismatch):
            self.grid2.check_boundary(np.zeros(11))
        with self.assertRaises(ShapeMismatch):
            self.grid2.check_interior(np.zeros(10))


class TestPotentials(unittest.TestCase):
    """ Tests get_potential, the profiles and sample_potential
    """

    @classmethod
    def setUpClass(cls):
        """ once before all tests """
        cls.grid = mesh.build_grid(3, 16)
        cls.center = cls.grid.interior_index([[8, 8, 8]])[0]

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

    def test_get_potential(self):
        with self.assertRaises(BadDescriptor):
            mesh.get_potential("Test")
        self.assertIs(mesh.get_potential("bump"), mesh.SineBump)

    def test_PotentialBaseClass(self):
        potential = mesh.Potential()
        with self.assertRaises(NotImplementedError):
            potential(self.grid)

    def test_zero(self):
        q = mesh.sample_potential({"kind": "zero"}, self.grid)
        self.assertFalse(np.any(q.values))
        self.assertEqual(q.norm, 0.)

    def test_bump_center(self):
        q = mesh.sample_potential({"kind": "bump", "amplitude": 5.},
                                  self.grid)
        self.assertEqual(q.values[self.center], 5.)
        self.assertEqual(np.argmax(q.values), self.center)

    def test_gaussian(self):
        q = mesh.sample_potential({"kind": "gaussian", "amplitude": 2.,
                                   "width": 0.2}, self.grid)
        self.assertEqual(q.values[self.center], 2.)
        with self.assertRaises(BadDescriptor):
            mesh.sample_potential({"kind": "gaussian", "width": -1.},
                                  self.grid)

    def test_singular_cap(self):
        q = mesh.sample_potential({"kind": "singular", "alpha": 1.},
                                  self.grid)
        self.assertEqual(q.values[self.center], 32.)
        self.assertTrue(np.all(np.isfinite(q.values)))
        self.assertTrue(np.all(q.values <= 32.))

    def test_singular_errors(self):
        with self.assertRaises(BadDescriptor):
            mesh.sample_potential({"kind": "singular", "alpha": 2.5},
                                  self.grid)
        with self.assertRaises(BadDescriptor):
            mesh.sample_potential({"kind": "singular", "alpha": 1.,
                                   "center": [0.5, 0.5, 1.2]}, self.grid)
        with self.assertRaises(BadDescriptor):
            mesh.sample_potential({"amplitude": 1.}, self.grid)
        with self.assertRaises(BadDescriptor):
            mesh.sample_potential({"kind": "bump", "radius": 1.}, self.grid)

    def test_norm(self):
        grid = mesh.build_grid(2, 8)
        q = mesh.sample_potential({"kind": "bump", "amplitude": 3.}, grid)
        expected = grid.h ** 2 * np.sum(np.abs(q.values))
        self.assertAlmostEqual(q.norm, expected, places=12)

    def test_singular_norm_converges(self):
        norms = []
        for N in (8, 16, 32):
            grid = mesh.build_grid(3, N)
            norms.append(mesh.sample_potential(
                {"kind": "singular", "alpha": 1.}, grid).norm)
        self.assertLess(abs(norms[2] - norms[1]), abs(norms[1] - norms[0]))


class TestOperator(unittest.TestCase):
    """ Tests assemble_hamiltonian, lift_boundary and normal_derivative
    """

    @classmethod
    def setUpClass(cls):
        """ once before all tests """
        cls.grid = mesh.build_grid(3, 16)
        cls.zero = mesh.assemble_hamiltonian(
            cls.grid, mesh.sample_potential({"kind": "zero"}, cls.grid))
        cls.bump = mesh.assemble_hamiltonian(
            cls.grid, mesh.sample_potential({"kind": "bump",
                                             "amplitude": 5.}, cls.grid))
        cls.small = mesh.build_grid(2, 6)
        cls.small_op = mesh.assemble_hamiltonian(
            cls.small, mesh.sample_potential({"kind": "bump",
                                              "amplitude": 5.}, cls.small))

    @classmethod
    def tearDownClass(cls):
        """ once after all tests """
        pass

    def setUp(self):
        "before each test"
        self.rng = np.random.RandomState(7)

    def tearDown(self):
        "after each test"
        pass

    ### tests start here ###

    def test_stencil(self):
        A = self.zero.matrix
        np.testing.assert_array_equal(A.diagonal(), 1536.)
        off = A.copy()
        off.setdiag(0.)
        off.eliminate_zeros()
        np.testing.assert_array_equal(off.data, -256.)
        # nearest neighbour graph: at most 6 off-diagonal entries per row
        self.assertEqual(np.max(np.diff(off.indptr)), 6)

    def test_symmetry(self):
        A = self.bump.matrix
        self.assertEqual(abs(A - A.T).max(), 0.)

    def test_bump_diagonal(self):
        center = self.grid.interior_index([[8, 8, 8]])[0]
        self.assertEqual(self.bump.matrix.diagonal()[center], 1541.)

    def test_green_compatibility(self):
        A = self.bump.matrix
        u = self.rng.uniform(-1., 1., self.grid.dimension)
        v = self.rng.uniform(-1., 1., self.grid.dimension)
        lhs = np.sum(v * A.dot(u))
        rhs = np.sum(A.dot(v) * u)
        self.assertAlmostEqual(lhs / rhs, 1., places=12)

    def test_grid_mismatch(self):
        other = mesh.build_grid(3, 8)
        q = mesh.sample_potential({"kind": "zero"}, other)
        with self.assertRaises(GridMismatch):
            mesh.assemble_hamiltonian(self.grid, q)

    def test_operator_key(self):
        again = mesh.assemble_hamiltonian(
            self.grid, mesh.sample_potential({"kind": "bump",
                                              "amplitude": 5.}, self.grid))
        self.assertEqual(again, self.bump)
        self.assertNotEqual(self.zero, self.bump)
        self.assertEqual(len(self.bump.key), 64)

    def test_lift_zero(self):
        lifted = mesh.lift_boundary(self.grid, self.zero,
                                    np.zeros(self.grid.n_boundary))
        self.assertFalse(np.any(lifted))

    def test_lift_maximum_principle(self):
        lifted = mesh.lift_boundary(self.grid, self.zero,
                                    np.ones(self.grid.n_boundary))
        self.assertLessEqual(lifted.max(), 1.)
        self.assertGreater(lifted.min(), 0.)

    def test_lift_solves_system(self):
        grid = self.small
        f = self.rng.uniform(-1., 1., grid.n_boundary)
        lifted = mesh.lift_boundary(grid, self.small_op, f)
        defect = grid.laplacian.dot(lifted) + lifted - grid.coupling.dot(f)
        self.assertLess(np.max(np.abs(defect)), 1e-10)

    def test_lift_linear(self):
        grid = self.grid
        f = self.rng.uniform(-1., 1., grid.n_boundary)
        g = self.rng.uniform(-1., 1., grid.n_boundary)
        combined = mesh.lift_boundary(grid, None, 2.5 * f + g)
        separate = 2.5 * mesh.lift_boundary(grid, None, f) + \
            mesh.lift_boundary(grid, None, g)
        np.testing.assert_allclose(combined, separate, rtol=0, atol=1e-10)

    def test_lift_complex(self):
        grid = self.small
        f = self.rng.uniform(-1., 1., grid.n_boundary)
        g = self.rng.uniform(-1., 1., grid.n_boundary)
        lifted = mesh.lift_boundary(grid, None, f + 1j * g)
        np.testing.assert_allclose(lifted.imag,
                                   mesh.lift_boundary(grid, None, g),
                                   rtol=0, atol=1e-12)

    def test_lift_errors(self):
        with self.assertRaises(GridMismatch):
            mesh.lift_boundary(self.small, self.zero,
                               np.zeros(self.small.n_boundary))
        with self.assertRaises(ShapeMismatch):
            mesh.lift_boundary(self.small, None, np.zeros(3))

    def test_onesided_exact_for_quadratics(self):
        grid = self.small
        u = grid.interior_coords[:, 0] ** 2
        f = grid.boundary_coords[:, 0] ** 2
        trace = mesh.normal_derivative(grid, u, f, mode="onesided2")
        expected = np.zeros(grid.n_boundary)
        high = (grid.boundary_axis == 0) & (grid.boundary_side == 1)
        expected[high] = 2.
        np.testing.assert_allclose(trace, expected, rtol=0, atol=1e-12)

    def test_variational_eigen_form(self):
        grid = self.small
        u = self.rng.uniform(-1., 1., grid.dimension)
        trace = mesh.normal_derivative(grid, u, np.zeros(grid.n_boundary),
                                       7., "variational")
        np.testing.assert_allclose(trace, -u[grid.inner1] / grid.h)

    def test_bad_mode(self):
        with self.assertRaises(BadMode):
            mesh.normal_derivative(self.small, np.zeros(self.small.dimension),
                                   np.zeros(self.small.n_boundary),
                                   mode="centered")


if __name__ == "__main__":
    unittest.main()
