#!/usr/bin/python

"""
Low Dirichlet eigenpairs of the discrete operator, their Neumann traces,
the positivity shift and Weyl-law diagnostics.
"""

import logging

import numpy as np
import scipy.linalg
import scipy.sparse as sp
from scipy.sparse.linalg import splu, eigsh, LinearOperator, \
    ArpackNoConvergence
from scipy.special import gamma

from borglev import norms
from borglev.mesh import normal_derivative, TRACE_MODES
from borglev.exceptions import (ConvergenceFailure, KTooLarge, RangeTooSmall,
                                GridMismatch, BadMode)

logger = logging.getLogger(__name__)

DENSE_LIMIT = 2000


class EigenPair(object):
    """
    One Dirichlet eigenpair

    Attributes:
        value (float): eigenvalue, shifted if the owning SpectralData is
        vector (array): eigenvector normalised in the h^n inner product
        neumann_trace (array or None): discrete normal derivative
        residual (float): L2 norm of A phi - lambda phi
    """
    def __init__(self, value, vector, neumann_trace, residual):
        self.value = value
        self.vector = vector
        self.neumann_trace = neumann_trace
        self.residual = residual


class SpectralData(object):
    """
    Ascending Dirichlet eigenpairs of a DiscreteOperator

    Args:
        values (array): eigenvalues, K entries, shift included
        vectors (array): eigenvectors as rows, shape (K, dim)
        residuals (array): per-pair residuals
        operator (DiscreteOperator): the operator
        shift (float): cumulative positivity shift lambda_0
        traces (array or None): Neumann traces as rows, shape (K, nb)
        trace_mode (str or None): trace mode of traces
    """
    def __init__(self, values, vectors, residuals, operator, shift=0.,
                 traces=None, trace_mode=None):
        self.values = np.asarray(values, dtype=float)
        self.vectors = np.asarray(vectors, dtype=float)
        self.residuals = np.asarray(residuals, dtype=float)
        self.operator = operator
        self.grid = operator.grid
        self.shift = float(shift)
        self.traces = None if traces is None else np.asarray(traces,
                                                             dtype=float)
        self.trace_mode = trace_mode
        for array in (self.values, self.vectors, self.residuals,
                      self.traces):
            if array is not None:
                array.flags.writeable = False

    @property
    def count(self):
        return len(self.values)

    @property
    def pairs(self):
        traces = self.traces
        return [EigenPair(self.values[k], self.vectors[k],
                          None if traces is None else traces[k],
                          self.residuals[k])
                for k in range(self.count)]

    def unshifted_values(self):
        """ eigenvalues of the operator itself, lambda_0 removed """
        return self.values - self.shift

    def gram(self):
        """ h^n weighted Gram matrix of the eigenvectors """
        return self.grid.h ** self.grid.n_dims * \
            self.vectors.dot(self.vectors.T)

    def truncated(self, K):
        """ the first K pairs """
        if not 1 <= K <= self.count:
            raise KTooLarge("K = {} outside [1, {}]".format(K, self.count))
        return self._replace(values=self.values[:K],
                             vectors=self.vectors[:K],
                             residuals=self.residuals[:K],
                             traces=None if self.traces is None
                             else self.traces[:K])

    def _replace(self, **changes):
        fields = dict(values=self.values, vectors=self.vectors,
                      residuals=self.residuals, operator=self.operator,
                      shift=self.shift, traces=self.traces,
                      trace_mode=self.trace_mode)
        fields.update(changes)
        return SpectralData(**fields)


def _fix_signs(vectors):
    # largest magnitude entry positive, first index on ties
    rows = np.arange(vectors.shape[0])
    lead = np.argmax(np.abs(vectors), axis=1)
    signs = np.where(vectors[rows, lead] < 0., -1., 1.)
    return vectors * signs[:, None]


def _dense_pairs(op, K):
    logger.debug("dense eigensolve, dim = %d, K = %d", op.dimension, K)
    values, vectors = scipy.linalg.eigh(op.matrix.toarray(),
                                        subset_by_index=[0, K - 1])
    return values, vectors


def _sparse_pairs(op, K, tol):
    grid = op.grid
    bottom = grid.n_dims * 4. * grid.inv_h2 * np.sin(0.5 * np.pi * grid.h) ** 2
    sigma = bottom + np.min(op.potential.values) - 1.
    logger.debug("shift-invert eigsh, dim = %d, K = %d, sigma = %g",
                 op.dimension, K, sigma)
    shifted = (op.matrix -
               sigma * sp.identity(op.dimension, format="csr")).tocsc()
    lu = splu(shifted)
    inverse = LinearOperator(shifted.shape, matvec=lu.solve, dtype=float)
    v0 = np.random.RandomState(0).uniform(-1., 1., op.dimension)
    try:
        _, vectors = eigsh(op.matrix, k=K, sigma=sigma, which="LM",
                           OPinv=inverse, v0=v0, tol=tol)
    except ArpackNoConvergence as err:
        raise ConvergenceFailure("eigsh did not converge: {}".format(err))
    # Rayleigh-Ritz on the returned subspace restores orthogonality
    basis, _ = np.linalg.qr(vectors)
    projected = basis.T.dot(op.matrix.dot(basis))
    values, rotation = scipy.linalg.eigh(0.5 * (projected + projected.T))
    return values, basis.dot(rotation)


def compute_spectrum(op, K, tol=1e-12, dense_limit=DENSE_LIMIT):
    """
    Compute the K lowest eigenpairs of a DiscreteOperator

    Uses a dense symmetric eigendecomposition up to dense_limit interior
    nodes, shift-invert Lanczos below the spectrum otherwise.

    Args:
        op (DiscreteOperator): the operator
        K (int): number of pairs
        tol (float): eigsh tolerance
        dense_limit (int): largest dimension solved densely

    Returns:
        SpectralData: unshifted pairs without traces
    """
    if not 1 <= K <= op.dimension:
        raise KTooLarge("K = {} outside [1, {}]".format(K, op.dimension))
    if op.dimension <= dense_limit or K >= op.dimension - 1:
        values, vectors = _dense_pairs(op, K)
    else:
        values, vectors = _sparse_pairs(op, K, tol)
    order = np.argsort(values, kind="stable")
    values = values[order]
    vectors = vectors[:, order].T
    vectors /= np.linalg.norm(vectors, axis=1)[:, None]
    vectors /= op.grid.h ** (0.5 * op.grid.n_dims)
    vectors = _fix_signs(vectors)

    defect = op.matrix.dot(vectors.T) - vectors.T * values[None, :]
    residuals = norms.lp_norm(defect, 2, op.grid)
    bound = 1e-8 * np.abs(values) + 1e-8
    if np.any(residuals > bound):
        worst = np.argmax(residuals - bound)
        raise ConvergenceFailure(
            "pair {} has residual {:.3e}, tolerance {:.3e}".format(
                worst + 1, residuals[worst], bound[worst]))
    return SpectralData(values, vectors, residuals, op)


def shift_to_positive(sd):
    """
    Add lambda_0 = max(0, -lambda_1) + 1 to every eigenvalue

    Args:
        sd (SpectralData): spectral data

    Returns:
        SpectralData: shifted copy; shift accumulates over repeated calls
    """
    lam0 = max(0., -sd.values[0]) + 1.
    return sd._replace(values=sd.values + lam0, shift=sd.shift + lam0)


def neumann_traces(sd, mode="variational"):
    """
    Attach discrete normal derivatives of the eigenvectors

    Args:
        sd (SpectralData): spectral data
        mode (str): "onesided2" or "variational", see
            mesh.normal_derivative

    Returns:
        SpectralData: copy with traces filled in
    """
    if mode not in TRACE_MODES:
        raise BadMode("trace mode " + str(mode) + " not implemented.")
    grid = sd.grid
    zeros = np.zeros((grid.n_boundary, sd.count))
    traces = normal_derivative(grid, sd.vectors.T, zeros,
                               sd.unshifted_values(), mode).T
    return sd._replace(traces=traces, trace_mode=mode)


def unit_ball_volume(n):
    return np.pi ** (0.5 * n) / gamma(0.5 * n + 1.)


def weyl_constant(n, volume=1.):
    r""" Leading Weyl constant \(4\pi^2/(V_B V_\Omega)^{2/n}\) """
    return 4. * np.pi ** 2 / (unit_ball_volume(n) * volume) ** (2. / n)


def boundary_weyl_coefficient(n):
    r"""
    Coefficient of \(\lambda^{(n-1)/2}\) in the two-term Dirichlet counting
    function of the unit box, \(\omega_{n-1} |\partial\Omega| / 4(2\pi)^{n-1}\)
    """
    return unit_ball_volume(n - 1) * 2. * n / (4. * (2. * np.pi) ** (n - 1))


def loglog_fit(x, y):
    """
    Least squares fit of log y = slope log x + log constant

    Returns:
        tuple: (slope, constant)
    """
    slope, intercept = np.polyfit(np.log(x), np.log(y), 1)
    return slope, np.exp(intercept)


def weyl_fit(sd, k_range, boundary_correction=False):
    """
    Fit lambda_k ~ constant * k^exponent over an index range

    Args:
        sd (SpectralData): spectral data, unshifted values are used
        k_range (tuple): (k_lo, k_hi), 1-based and inclusive
        boundary_correction (bool): also fit against the corrected index
            k + c lambda_k^((n-1)/2) of the two-term Weyl law

    Returns:
        dict: exponent, constant, predicted_exponent, predicted_constant and,
        with the correction, corrected_exponent and corrected_constant
    """
    k_lo, k_hi = int(k_range[0]), int(k_range[1])
    if k_hi - k_lo < 20 or k_lo < 1 or k_hi > sd.count:
        raise RangeTooSmall("Weyl range [{}, {}] needs k_hi - k_lo >= 20 "
                            "within 1..{}".format(k_lo, k_hi, sd.count))
    n = sd.grid.n_dims
    k = np.arange(k_lo, k_hi + 1, dtype=float)
    lam = sd.unshifted_values()[k_lo - 1:k_hi]
    exponent, constant = loglog_fit(k, lam)
    fit = {"exponent": exponent,
           "constant": constant,
           "predicted_exponent": 2. / n,
           "predicted_constant": weyl_constant(n)}
    if boundary_correction:
        corrected = k + boundary_weyl_coefficient(n) * lam ** (0.5 * (n - 1))
        exponent, constant = loglog_fit(corrected, lam)
        fit["corrected_exponent"] = exponent
        fit["corrected_constant"] = constant
    return fit


def eigen_ratio_tail(sd_q, sd_0, k_lo):
    """
    max over k >= k_lo of |lambda_k(q) / lambda_k(0) - 1|, unshifted
    """
    if sd_q.grid != sd_0.grid:
        raise GridMismatch("spectra on {} and {}".format(sd_q.grid,
                                                         sd_0.grid))
    K = min(sd_q.count, sd_0.count)
    if not 1 <= k_lo <= K:
        raise RangeTooSmall("k_lo = {} outside [1, {}]".format(k_lo, K))
    ratio = (sd_q.unshifted_values()[k_lo - 1:K] /
             sd_0.unshifted_values()[k_lo - 1:K])
    return np.max(np.abs(ratio - 1.))


def eig_norm_growth(sd):
    """
    Eigenfunction W^{2,2} growth against lambda_k + 1

    Args:
        sd (SpectralData): spectral data, shifted internally when the
            spectrum is not positive

    Returns:
        dict: "spectral" ratios |phi_k|_2,spectral / (lambda_k + 1) and
        "difference" ratios w2p_norm(phi_k, 2) / (lambda_k + 1)
    """
    positive = sd if sd.values[0] > 0. else shift_to_positive(sd)
    spectral = np.empty(sd.count)
    difference = np.empty(sd.count)
    for k, pair in enumerate(positive.pairs):
        scale = pair.value + 1.
        spectral[k] = norms.spectral_sobolev_norm(pair.vector, 2.,
                                                  positive) / scale
        difference[k] = norms.w2p_norm(pair.vector, 2, sd.grid) / scale
    return {"spectral": spectral, "difference": difference}
