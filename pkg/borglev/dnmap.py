#!/usr/bin/python

"""
Dirichlet-to-Neumann map of the discrete operator, built by direct solves
and by the eigenfunction series, with its lambda-derivatives, the low-mode
part that incomplete spectral data leaves out, and the decay diagnostics.
"""

import logging
from math import factorial

import numpy as np
import scipy.linalg

from borglev import norms
from borglev.mesh import lift_boundary, normal_derivative, TRACE_MODES
from borglev.resolvent import factorize
from borglev.spectrum import loglog_fit
from borglev.exceptions import (ShapeMismatch, BadMode, RangeError,
                                SpectrumHit, BadQuery)

logger = logging.getLogger(__name__)


class DtNMatrix(object):
    """
    Dense DN matrix on the boundary DOFs; column j is the DN map applied to
    the j-th boundary indicator

    Attributes:
        lam (complex): spectral parameter
        key (str): operator key
        grid (Grid): lattice
        trace_mode (str): trace mode
        matrix (array): nb x nb matrix
    """
    def __init__(self, lam, key, grid, trace_mode, matrix):
        self.lam = lam
        self.key = key
        self.grid = grid
        self.trace_mode = trace_mode
        self.matrix = matrix
        self.matrix.flags.writeable = False

    def symmetry_defect(self):
        """ |D - D^T| / |D| in the Frobenius norm """
        scale = np.linalg.norm(self.matrix)
        if scale == 0.:
            return 0.
        return np.linalg.norm(self.matrix - self.matrix.T) / scale


class ParabolicRegion(object):
    """
    Spectral parameters with Re lambda < s (Im lambda)^2 / 2 - 1, off the
    spectrum. Supports `lam in region`.
    """
    def __init__(self, s, sd=None):
        if not s > 0.:
            raise BadQuery("region parameter s must be positive, got {}"
                           .format(s))
        self.s = float(s)
        self.sd = sd

    def __contains__(self, lam):
        lam = complex(lam)
        if not lam.real < 0.5 * self.s * lam.imag ** 2 - 1.:
            return False
        if self.sd is not None:
            values = self.sd.unshifted_values()
            if np.any(np.abs(values - lam) <
                      1e-8 * np.maximum(1., np.abs(values))):
                return False
        return True


def in_parabolic_region(lam, s, sd=None):
    """
    Membership in the parabolic region used for complex spectral parameters

    Args:
        lam (complex): spectral parameter
        s (float): region parameter, positive
        sd (SpectralData or None): computed spectrum to exclude

    Returns:
        bool: True iff Re lam < s (Im lam)^2 / 2 - 1 and lam is off the
        computed spectrum
    """
    return lam in ParabolicRegion(s, sd)


def solve_dirichlet(op, lam, f):
    """
    Solve (A - lambda) u = 0 in the interior with lattice boundary values f

    u = F + w with F the lifting of f (extension parameter -1) and
    (A - lambda) w = (lambda + 1 - q) F.

    Args:
        op (DiscreteOperator): the operator
        lam (complex): spectral parameter off the spectrum
        f (array): boundary values, shape (nb,) or (nb, k)

    Returns:
        array: interior values of u
    """
    grid = op.grid
    f = np.asarray(f)
    lifted = lift_boundary(grid, op, f)
    q = op.potential.values
    if lifted.ndim == 2:
        q = q[:, None]
    w = factorize(op, lam).solve((lam + 1. - q) * lifted)
    return lifted + w


def dn_apply(op, lam, f, mode="variational"):
    """
    Apply the DN map: normal derivative of the Dirichlet solution

    Args:
        op (DiscreteOperator): the operator
        lam (complex): spectral parameter off the spectrum
        f (array): boundary values, shape (nb,) or (nb, k)
        mode (str): "onesided2" or "variational"

    Returns:
        array: boundary values of the normal derivative
    """
    if mode not in TRACE_MODES:
        raise BadMode("trace mode " + str(mode) + " not implemented.")
    op.grid.check_boundary(f)
    u = solve_dirichlet(op, lam, f)
    return normal_derivative(op.grid, u, np.asarray(f), lam, mode)


def dn_matrix(op, lam, mode="variational"):
    """
    DN matrix from one factorization and nb solves on indicator columns
    """
    identity = np.eye(op.grid.n_boundary)
    logger.debug("DN matrix, lambda = %s, %d columns", lam,
                 op.grid.n_boundary)
    return DtNMatrix(lam, op.key, op.grid, mode,
                     np.asarray(dn_apply(op, lam, identity, mode)))


def _traces(sd, mode):
    if sd.traces is not None and sd.trace_mode == mode:
        return sd.traces
    grid = sd.grid
    zeros = np.zeros((grid.n_boundary, sd.count))
    return normal_derivative(grid, sd.vectors.T, zeros, 0., mode).T


def _check_off_spectrum(values, lam):
    hit = np.abs(values - lam) < 1e-8 * np.maximum(1., np.abs(values))
    if np.any(hit):
        k = np.argmax(hit)
        raise SpectrumHit("lambda = {} hits eigenvalue {} (k = {})".format(
            lam, values[k], k + 1))


def _half_cell(grid, lam, f):
    return 0.5 * grid.h * (-lam * f +
                           grid.inv_h2 * grid.boundary_laplacian.dot(f))


def spectral_coefficients(sd, f, mode="variational"):
    """ A_k weights h^(n-1) sum_b trace_k(b) f(b), one row per eigenpair """
    traces = _traces(sd, mode)
    return norms.boundary_inner(traces.T, np.asarray(f)[:, None], sd.grid)


def dn_apply_series(sd, lam, f):
    """
    Variational DN map from the spectral data alone,
    f/h + (h/2)(-lam f + L_b f / h^2) - sum_k A_k / (lambda_k - lam);
    exact when every eigenpair is present

    Args:
        sd (SpectralData): eigenpairs, unshifted values are used
        lam (complex): spectral parameter
        f (array): boundary values, shape (nb,)

    Returns:
        array: DN map applied to f
    """
    grid = sd.grid
    grid.check_boundary(f)
    f = np.asarray(f)
    values = sd.unshifted_values()
    _check_off_spectrum(values, lam)
    traces = _traces(sd, "variational")
    weights = spectral_coefficients(sd, f) / (values - lam)
    series = np.sum(weights[:, None] * traces, axis=0)
    return f / grid.h + _half_cell(grid, lam, f) - series


def dn_diff_opnorm(D1, D2, weight_eps=0.):
    """
    Operator norm of the difference of two DN matrices

    Args:
        D1, D2 (DtNMatrix): matrices on the same grid, lambda and mode
        weight_eps (float): smoothing exponent; eps > 0 applies
            (I + L_b/h^2)^(-eps/2) on the output side

    Returns:
        float: largest singular value of the weighted difference
    """
    if (D1.matrix.shape != D2.matrix.shape or D1.grid != D2.grid or
            D1.lam != D2.lam or D1.trace_mode != D2.trace_mode):
        raise ShapeMismatch("DN matrices differ in grid, lambda or mode")
    if weight_eps < 0.:
        raise ShapeMismatch("weight_eps must be >= 0, got {}"
                            .format(weight_eps))
    difference = D1.matrix - D2.matrix
    if weight_eps > 0.:
        grid = D1.grid
        mu, basis = scipy.linalg.eigh(grid.inv_h2 *
                                      grid.boundary_laplacian.toarray())
        weight = (basis * (1. + mu) ** (-0.5 * weight_eps)).dot(basis.T)
        difference = weight.dot(difference)
    return np.max(scipy.linalg.svdvals(difference))


def dn_derivative_series(sd, lam, f, m, lam_tilde=None, mode=None,
                         tail=False):
    r"""
    m-th lambda-derivative of the DN map from the spectral series,
    \(-m! \sum_k (\lambda_k-\lambda)^{-(m+1)}
    \langle (q + \tilde\lambda - \lambda_k) F, \phi_k \rangle \tilde\gamma\phi_k\)

    F is the lifting of f with extension parameter lam_tilde, which
    defaults to -1 when Re lam > -1 and to Re lam - 1 otherwise. In
    variational mode the half-cell term adds -(h/2) f at m = 1.

    Args:
        sd (SpectralData): eigenpairs, unshifted values are used
        lam (complex): spectral parameter
        f (array): boundary values, shape (nb,)
        m (int): derivative order, m >= 1
        lam_tilde (float or None): extension parameter
        mode (str or None): trace mode, sd.trace_mode or variational if None
        tail (bool): add the part carried by the eigenpairs beyond
            sd.count, see dn_derivative_tail

    Returns:
        array: derivative applied to f
    """
    if m < 1:
        raise RangeError("derivative order m = {} must be >= 1".format(m))
    grid = sd.grid
    grid.check_boundary(f)
    f = np.asarray(f)
    mode = mode or sd.trace_mode or "variational"
    if lam_tilde is None:
        lam_tilde = -1. if complex(lam).real > -1. else complex(lam).real - 1.
    values = sd.unshifted_values()
    _check_off_spectrum(values, lam)
    lifted = lift_boundary(grid, sd.operator, f, lam_tilde)
    q = sd.operator.potential.values
    weighted = (q[:, None] + lam_tilde - values[None, :]) * lifted[:, None]
    coefficients = norms.inner(weighted, sd.vectors.T, grid)
    traces = _traces(sd, mode)
    weights = coefficients / (values - lam) ** (m + 1)
    result = -factorial(m) * np.sum(weights[:, None] * traces, axis=0)
    if mode == "variational" and m == 1:
        result = result - 0.5 * grid.h * f
    if tail:
        result = result + dn_derivative_tail(sd, lam, f, m, mode)
    return result


def dn_derivative_tail(sd, lam, f, m, mode=None):
    """
    Part of the m-th lambda-derivative that the truncated series misses:
    the trace of m! R(lambda)^m applied to the Dirichlet solution with its
    projection on the known eigenvectors removed. One factorization and
    m + 1 solves; the truncated series plus this term is exact.

    Args:
        sd (SpectralData): eigenpairs of sd.operator
        lam (complex): spectral parameter off the spectrum
        f (array): boundary values, shape (nb,)
        m (int): derivative order, m >= 1
        mode (str or None): trace mode

    Returns:
        array: boundary function
    """
    if m < 1:
        raise RangeError("derivative order m = {} must be >= 1".format(m))
    grid = sd.grid
    grid.check_boundary(f)
    mode = mode or sd.trace_mode or "variational"
    op = sd.operator
    u = solve_dirichlet(op, lam, np.asarray(f))
    coefficients = norms.inner(sd.vectors.T, u[:, None], grid)
    v = u - sd.vectors.T.dot(coefficients)
    factor = factorize(op, lam)
    for _ in range(m):
        v = factor.solve(v)
    zeros = np.zeros(grid.n_boundary)
    return factorial(m) * normal_derivative(grid, v, zeros, 0., mode)


def low_mode_contribution(sd, lam, f, k0):
    """
    sum over k < k0 of A_k / (lambda_k - lam): the DN-map part carried by
    the eigenpairs that incomplete data leaves out

    Args:
        sd (SpectralData): eigenpairs with traces
        lam (complex): spectral parameter
        f (array): boundary values
        k0 (int): first index of the known data, 1 <= k0 <= K

    Returns:
        array: boundary function
    """
    if not 1 <= k0 <= sd.count:
        raise RangeError("k0 = {} outside [1, {}]".format(k0, sd.count))
    sd.grid.check_boundary(f)
    f = np.asarray(f)
    if k0 == 1:
        return np.zeros(sd.grid.n_boundary, dtype=np.result_type(f, lam))
    low = sd.truncated(k0 - 1)
    values = low.unshifted_values()
    _check_off_spectrum(values, lam)
    traces = _traces(low, low.trace_mode or "variational")
    weights = spectral_coefficients(low, f, low.trace_mode or "variational")
    weights = weights / (values - lam)
    return np.sum(weights[:, None] * traces, axis=0)


def green_form(op, lam, u, f, v, g):
    """
    Trapezoidal discrete Dirichlet form G_lam(u, v) for interior values u, v
    with boundary values f, g. For u solving the equation,
    boundary_inner(g, dn_apply(f)) = G_lam(u, v) in variational mode.
    """
    grid = op.grid
    h, n = grid.h, grid.n_dims
    u, f, v, g = (np.asarray(x) for x in (u, f, v, g))
    p1 = grid.inner1
    edges = h ** n * np.sum(v * grid.laplacian.dot(u)) + h ** (n - 2) * \
        np.sum(f * g - u[p1] * g - f * v[p1])
    mass = h ** n * np.sum((op.potential.values - lam) * u * v)
    face_mass = -0.5 * lam * h ** n * np.sum(f * g)
    face_edges = 0.5 * h ** (n - 2) * np.sum(g * grid.boundary_laplacian.dot(f))
    return edges + mass + face_mass + face_edges


def solution_bound(op, lams, f):
    """
    Per lambda, |u|_{2n/(n-2)} / |f|_{L2(boundary)} for the Dirichlet
    solution with data f
    """
    exponents = norms.ExponentSet(op.grid.n_dims)
    scale = norms.boundary_norm(f, 2, op.grid)
    return [float(norms.lp_norm(solve_dirichlet(op, lam, f),
                                exponents.p_high, op.grid) / scale)
            for lam in lams]


def decay_slope(lams, values):
    """ log-log slope of values against |lambda| """
    slope, _ = loglog_fit(np.abs(lams), np.asarray(values))
    return slope
