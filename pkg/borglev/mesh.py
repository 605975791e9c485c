#!/usr/bin/python

"""
Uniform-grid discretization of the unit box.

Holds the lattice bookkeeping (interior nodes, face degrees of freedom and
their inward neighbours), the potential profiles, the discrete Schroedinger
operator A = -Delta_h + diag(q) and the boundary lifting used to turn
Dirichlet data into interior fields.

Edge and corner lattice points carry Dirichlet data but are not boundary
degrees of freedom. In the 2n+1 point stencil they never touch an interior
node, so they only matter when a full lattice array is assembled.
"""

import functools
import hashlib
import logging

import numpy as np
import scipy.sparse as sp
from scipy.sparse.linalg import splu

from borglev.exceptions import (GridTooSmall, UnsupportedDim, BadDescriptor,
                                GridMismatch, ShapeMismatch, BadMode,
                                SolveFailure)

logger = logging.getLogger(__name__)

TRACE_MODES = ("onesided2", "variational")


def _frozen(array):
    array = np.ascontiguousarray(array)
    array.flags.writeable = False
    return array


def _path_laplacian(M):
    # graph Laplacian of a path with M vertices
    diag = np.full(M, 2.)
    diag[0] = diag[-1] = 1.
    return sp.diags([-np.ones(M - 1), diag, -np.ones(M - 1)], [-1, 0, 1],
                    format="csr")


def _kron_sum(blocks):
    """ Kronecker sum of square sparse blocks, first block slowest """
    sizes = [b.shape[0] for b in blocks]
    total = None
    for j, block in enumerate(blocks):
        left = sp.identity(int(np.prod(sizes[:j])), format="csr")
        right = sp.identity(int(np.prod(sizes[j + 1:])), format="csr")
        term = sp.kron(sp.kron(left, block, format="csr"), right,
                       format="csr")
        total = term if total is None else total + term
    return total.tocsr()


class Grid(object):
    """
    Uniform lattice on the unit box [0,1]^n with mesh width h = 1/N

    Interior nodes are ordered row-major over their lattice multi-index
    (axis 0 slowest). Boundary degrees of freedom are the face-interior
    lattice points, ordered face by face (axis 0 low side, axis 0 high side,
    axis 1 low side, ...) and row-major within a face.

    Args:
        n_dims (int): dimension, 2 or 3
        N (int): points per axis, at least 4

    Attributes:
        h (float): mesh width
        inv_h2 (float): 1/h^2, stored as the exact integer N^2
        dimension (int): number of interior nodes (N-1)^n
        n_boundary (int): number of boundary DOFs 2n(N-1)^(n-1)
        interior_nodes (array): lattice multi-indices of interior nodes
        interior_coords (array): coordinates of interior nodes
        boundary_nodes (array): lattice multi-indices of boundary DOFs
        boundary_coords (array): coordinates of boundary DOFs
        boundary_axis (array): axis normal to the face of each DOF
        boundary_side (array): -1 on the low face, +1 on the high face
        normals (array): outward unit normals
        inner1, inner2 (array): interior indices of the first and second
            node on the inward normal lattice line
    """
    def __init__(self, n_dims, N):
        self.n_dims = int(n_dims)
        self.N = int(N)
        self.h = 1. / self.N
        self.inv_h2 = float(self.N * self.N)
        M = self.N - 1
        self.shape = (M,) * self.n_dims
        self.dimension = M ** self.n_dims
        self.n_boundary = 2 * self.n_dims * M ** (self.n_dims - 1)

        nodes = np.indices(self.shape).reshape(self.n_dims, -1).T + 1
        self.interior_nodes = _frozen(nodes)
        self.interior_coords = _frozen(nodes * self.h)
        self._build_boundary()

        self._laplacian = None
        self._coupling = None
        self._boundary_laplacian = None

    def _build_boundary(self):
        n, N, M = self.n_dims, self.N, self.N - 1
        tangential = np.indices((M,) * (n - 1)).reshape(n - 1, -1).T + 1
        nodes, axes, sides = [], [], []
        for axis in range(n):
            others = [j for j in range(n) if j != axis]
            for side, value in ((-1, 0), (1, N)):
                block = np.empty((len(tangential), n), dtype=int)
                block[:, axis] = value
                block[:, others] = tangential
                nodes.append(block)
                axes.append(np.full(len(tangential), axis))
                sides.append(np.full(len(tangential), side))
        nodes = np.concatenate(nodes)
        axes = np.concatenate(axes)
        sides = np.concatenate(sides)

        rows = np.arange(len(nodes))
        first, second = nodes.copy(), nodes.copy()
        first[rows, axes] -= sides
        second[rows, axes] -= 2 * sides
        normals = np.zeros(nodes.shape)
        normals[rows, axes] = sides

        self.boundary_nodes = _frozen(nodes)
        self.boundary_coords = _frozen(nodes * self.h)
        self.boundary_axis = _frozen(axes)
        self.boundary_side = _frozen(sides)
        self.normals = _frozen(normals)
        self.inner1 = _frozen(self.interior_index(first))
        self.inner2 = _frozen(self.interior_index(second))

    def interior_index(self, nodes):
        """
        Map lattice multi-indices of interior nodes to interior indices

        Args:
            nodes (array): integer array of shape (k, n) with entries in 1..N-1

        Returns:
            array: interior indices in row-major order
        """
        nodes = np.atleast_2d(nodes)
        return np.ravel_multi_index(tuple((nodes - 1).T), self.shape)

    @property
    def laplacian(self):
        """ -Delta_h on interior nodes with Dirichlet elimination (csr) """
        if self._laplacian is None:
            M = self.N - 1
            T = sp.diags([-np.ones(M - 1), np.full(M, 2.), -np.ones(M - 1)],
                         [-1, 0, 1], format="csr") * self.inv_h2
            self._laplacian = _kron_sum([T] * self.n_dims)
        return self._laplacian

    @property
    def coupling(self):
        """ Interior x boundary matrix B with B[inner1(b), b] = 1/h^2 """
        if self._coupling is None:
            self._coupling = sp.csr_matrix(
                (np.full(self.n_boundary, self.inv_h2),
                 (self.inner1, np.arange(self.n_boundary))),
                shape=(self.dimension, self.n_boundary))
        return self._coupling

    @property
    def boundary_laplacian(self):
        """ Graph Laplacian of the face lattices (unscaled, block diagonal) """
        if self._boundary_laplacian is None:
            M = self.N - 1
            if self.n_dims == 2:
                face = _path_laplacian(M)
            else:
                face = _kron_sum([_path_laplacian(M)] * (self.n_dims - 1))
            self._boundary_laplacian = sp.block_diag(
                [face] * (2 * self.n_dims), format="csr")
        return self._boundary_laplacian

    def lattice_field(self, u, f):
        """
        Assemble the full (N+1)^n lattice array from interior values u and
        boundary DOF values f. Edge points get the mean of their adjacent
        face DOFs, 3-d corners the mean of their adjacent edge points.
        """
        u = np.asarray(u)
        f = np.asarray(f)
        n, N = self.n_dims, self.N
        full = np.zeros((N + 1,) * n, dtype=np.result_type(u, f))
        full[tuple(self.interior_nodes.T)] = u
        full[tuple(self.boundary_nodes.T)] = f
        index = np.indices(full.shape)
        codim = ((index == 0) | (index == N)).sum(axis=0)
        for c in range(2, n + 1):
            for node in np.argwhere(codim == c):
                values = []
                for axis in range(n):
                    for step in (-1, 1):
                        neighbour = node.copy()
                        neighbour[axis] += step
                        if not 0 <= neighbour[axis] <= N:
                            continue
                        if codim[tuple(neighbour)] == c - 1:
                            values.append(full[tuple(neighbour)])
                full[tuple(node)] = np.mean(values)
        return full

    def check_interior(self, u):
        if np.shape(u)[0] != self.dimension:
            raise ShapeMismatch("interior field has {} rows, grid has {} "
                                "interior nodes".format(np.shape(u)[0],
                                                        self.dimension))

    def check_boundary(self, f):
        if np.shape(f)[0] != self.n_boundary:
            raise ShapeMismatch("boundary function has {} rows, grid has {} "
                                "boundary DOFs".format(np.shape(f)[0],
                                                       self.n_boundary))

    def __eq__(self, other):
        return (isinstance(other, Grid) and
                (self.n_dims, self.N) == (other.n_dims, other.N))

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash((self.n_dims, self.N))

    def __str__(self):
        return "{}-d grid, N = {}".format(self.n_dims, self.N)


def build_grid(n_dims, N):
    """
    Build the uniform lattice on the unit box

    Args:
        n_dims (int): dimension, 2 or 3
        N (int): points per axis

    Returns:
        Grid: the lattice
    """
    if n_dims not in (2, 3):
        raise UnsupportedDim("dimension {} not supported, use 2 or 3"
                             .format(n_dims))
    if N < 4:
        raise GridTooSmall("N = {} too small, need N >= 4".format(N))
    return Grid(n_dims, N)


#################################################
#  Potentials
#################################################

def get_potential(kind):
    """
    Get a potential profile class

    Args:
        kind (str): Name of the profile, options are "zero", "bump",
            "gaussian" and "singular". See specific classes for details

    Returns:
        class: relevant Potential subclass
    """
    potentials = {"zero": ZeroPotential,
                  "bump": SineBump,
                  "gaussian": GaussianBump,
                  "singular": SingularPotential
                  }
    if kind not in potentials:
        raise BadDescriptor("Potential " + str(kind) + " not implemented.")
    return potentials[kind]


class Potential(object):
    """
    Abstract class for potential profiles, evaluated at interior nodes
    """
    def __init__(self, amplitude=1.):
        self.amplitude = float(amplitude)

    def profile(self, x, grid):
        raise NotImplementedError("Abstract")

    def _check_center(self, grid):
        center = np.asarray(self.center, dtype=float)
        if center.shape != (grid.n_dims,):
            raise BadDescriptor("center must have {} coordinates"
                                .format(grid.n_dims))
        if np.any(center <= 0.) or np.any(center >= 1.):
            raise BadDescriptor("center {} outside the open unit box"
                                .format(list(center)))
        return center

    def __call__(self, grid):
        return self.amplitude * self.profile(grid.interior_coords, grid)


class ZeroPotential(Potential):
    """
    q = 0
    """
    def profile(self, x, grid):
        return np.zeros(len(x))

    def __str__(self):
        return "zero potential"


class SineBump(Potential):
    r"""
    Product-sine bump \(q(x) = c \prod_i \sin(\pi x_i)\), vanishing on the
    boundary
    """
    def profile(self, x, grid):
        return np.prod(np.sin(np.pi * x), axis=1)

    def __str__(self):
        return "sine bump, c = {}".format(self.amplitude)


class GaussianBump(Potential):
    r"""
    Gaussian bump \(q(x) = c\, e^{-|x-x_0|^2 / 2w^2}\)

    Args:
        amplitude (float): c
        center (list or None): x_0, box center if None
        width (float): w > 0
    """
    def __init__(self, amplitude=1., center=None, width=0.1):
        super(GaussianBump, self).__init__(amplitude)
        self.center = center
        self.width = float(width)
        if self.width <= 0.:
            raise BadDescriptor("gaussian width must be positive")

    def profile(self, x, grid):
        if self.center is None:
            self.center = [0.5] * grid.n_dims
        center = self._check_center(grid)
        r2 = np.sum((x - center) ** 2, axis=1)
        return np.exp(-r2 / (2. * self.width ** 2))

    def __str__(self):
        return "gaussian bump, c = {}, center = {}, width = {}".format(
            self.amplitude, self.center, self.width)


class SingularPotential(Potential):
    r"""
    Singular profile \(q(x) = c|x-x_0|^{-\alpha}\), \(0 < \alpha < 2\),
    capped at \((h/2)^{-\alpha}\) so it stays finite on the lattice. The cap
    grows under refinement, which keeps the discrete \(L^{n/2}\) norm
    convergent for \(\alpha < 2\).

    Args:
        amplitude (float): c
        alpha (float): exponent in (0, 2)
        center (list or None): x_0 inside the open box, box center if None
    """
    def __init__(self, amplitude=1., alpha=1., center=None):
        super(SingularPotential, self).__init__(amplitude)
        self.alpha = float(alpha)
        self.center = center
        if not 0. < self.alpha < 2.:
            raise BadDescriptor("alpha = {} outside (0, 2)".format(alpha))

    def cap(self, grid):
        return (0.5 * grid.h) ** (-self.alpha)

    def profile(self, x, grid):
        if self.center is None:
            self.center = [0.5] * grid.n_dims
        center = self._check_center(grid)
        r = np.sqrt(np.sum((x - center) ** 2, axis=1))
        with np.errstate(divide="ignore"):
            values = r ** (-self.alpha)
        return np.minimum(values, self.cap(grid))

    def __str__(self):
        return "singular potential |x-x0|^-{}, c = {}, center = {}".format(
            self.alpha, self.amplitude, self.center)


class PotentialField(object):
    """
    Real potential sampled on the interior nodes of a grid

    Attributes:
        values (array): q at interior nodes, read-only
        descriptor (dict): the descriptor it was sampled from
        grid (Grid): the lattice
        norm (float): discrete L^{n/2} norm (sum h^n |q|^{n/2})^{2/n}
    """
    def __init__(self, values, descriptor, grid):
        values = np.asarray(values, dtype=float)
        grid.check_interior(values)
        if not np.all(np.isfinite(values)):
            raise BadDescriptor("potential has non-finite samples")
        self.values = _frozen(values)
        self.descriptor = dict(descriptor)
        self.grid = grid
        p = 0.5 * grid.n_dims
        self.norm = (grid.h ** grid.n_dims *
                     np.sum(np.abs(values) ** p)) ** (1. / p)


def sample_potential(descriptor, grid):
    """
    Sample a potential descriptor at the interior nodes

    Args:
        descriptor (dict): {"kind": ..., plus keyword arguments of the
            profile class}
        grid (Grid): the lattice

    Returns:
        PotentialField: sampled potential with its discrete L^{n/2} norm
    """
    if not isinstance(descriptor, dict) or "kind" not in descriptor:
        raise BadDescriptor("potential descriptor needs a 'kind' key")
    kwargs = dict((k, v) for k, v in descriptor.items() if k != "kind")
    try:
        profile = get_potential(descriptor["kind"])(**kwargs)
    except TypeError as err:
        raise BadDescriptor("bad arguments for {} potential: {}".format(
            descriptor["kind"], err))
    return PotentialField(profile(grid), descriptor, grid)


#################################################
#  Operator
#################################################

class DiscreteOperator(object):
    """
    The discrete Schroedinger operator A = -Delta_h + diag(q)

    Attributes:
        grid (Grid): lattice
        potential (PotentialField): q
        matrix (csr_matrix): A, symmetric, off-diagonals exactly -1/h^2
        dimension (int): number of interior nodes
        key (str): SHA-256 of (n, N, q), names factorizations and caches
    """
    def __init__(self, grid, potential, matrix):
        self.grid = grid
        self.potential = potential
        self.matrix = matrix
        self.dimension = grid.dimension
        digest = hashlib.sha256()
        digest.update(np.array([grid.n_dims, grid.N], dtype="<i8").tobytes())
        digest.update(np.asarray(potential.values, dtype="<f8").tobytes())
        self.key = digest.hexdigest()

    def __eq__(self, other):
        return isinstance(other, DiscreteOperator) and self.key == other.key

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash(self.key)


def assemble_hamiltonian(grid, q):
    """
    Assemble A = -Delta_h + diag(q) with the 2n+1 point stencil

    Args:
        grid (Grid): lattice
        q (PotentialField): potential sampled on the same lattice

    Returns:
        DiscreteOperator: the operator
    """
    if q.grid != grid:
        raise GridMismatch("potential sampled on {}, operator on {}"
                           .format(q.grid, grid))
    matrix = (grid.laplacian + sp.diags(q.values, format="csr")).tocsr()
    matrix.sort_indices()
    return DiscreteOperator(grid, q, matrix)


def solve_factored(lu, b):
    """ Solve with a SuperLU factor, splitting complex data for real factors """
    if np.iscomplexobj(b) and not np.iscomplexobj(lu.U.data):
        return lu.solve(np.ascontiguousarray(b.real)) + \
            1j * lu.solve(np.ascontiguousarray(b.imag))
    return lu.solve(np.ascontiguousarray(b))


@functools.lru_cache(maxsize=16)
def _lifting_factor(grid, lam_tilde):
    shifted = (grid.laplacian -
               lam_tilde * sp.identity(grid.dimension, format="csr")).tocsc()
    logger.debug("factorizing lifting system on %s, lambda~ = %g",
                 grid, lam_tilde)
    try:
        return splu(shifted)
    except RuntimeError as err:
        raise SolveFailure("lifting system singular: {}".format(err))


def lift_boundary(grid, op, f, lam_tilde=-1.):
    """
    Extend boundary data into the interior

    Solves (-Delta_h - lam_tilde) Ef = 0 on interior nodes with lattice
    boundary values f. The default lam_tilde = -1 is the fixed extension
    parameter; any lam_tilde below the bottom of -Delta_h works.

    Args:
        grid (Grid): lattice
        op (DiscreteOperator or None): operator the lifting is used with,
            checked against grid
        f (array): boundary DOF values, shape (nb,) or (nb, k)
        lam_tilde (float): extension parameter

    Returns:
        array: interior values of Ef
    """
    if op is not None and op.grid != grid:
        raise GridMismatch("operator lives on {}, lifting on {}"
                           .format(op.grid, grid))
    grid.check_boundary(f)
    bottom = grid.n_dims * 4. * grid.inv_h2 * np.sin(0.5 * np.pi * grid.h) ** 2
    if lam_tilde >= bottom:
        raise SolveFailure("lambda~ = {} is not below the spectrum of "
                           "-Delta_h ({})".format(lam_tilde, bottom))
    f = np.asarray(f)
    rhs = grid.coupling.dot(f)
    return solve_factored(_lifting_factor(grid, float(lam_tilde)), rhs)


def normal_derivative(grid, u, f, lam=0., mode="variational"):
    """
    Discrete outward normal derivative at the boundary DOFs

    Args:
        grid (Grid): lattice
        u (array): interior values, shape (dim,) or (dim, k)
        f (array): boundary values, shape (nb,) or (nb, k)
        lam (complex): spectral parameter of the equation u solves, only
            used by the variational mode
        mode (str): "onesided2" for the second order one-sided difference
            (3f - 4u(p1) + u(p2))/(2h); "variational" for the flux
            (f - u(p1))/h + (h/2)(-lam f + L_b f/h^2), with L_b the face
            graph Laplacian. The variational trace makes the discrete Green
            identity of dnmap.green_form exact.

    Returns:
        array: normal derivative per boundary DOF
    """
    if mode not in TRACE_MODES:
        raise BadMode("trace mode " + str(mode) + " not implemented.")
    u = np.asarray(u)
    f = np.asarray(f)
    h = grid.h
    if mode == "onesided2":
        return (3. * f - 4. * u[grid.inner1] + u[grid.inner2]) / (2. * h)
    half_cell = -lam * f + grid.inv_h2 * grid.boundary_laplacian.dot(f)
    return (f - u[grid.inner1]) / h + 0.5 * h * half_cell
