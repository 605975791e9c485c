#!/usr/bin/python

"""
Resolvent R(lambda) = (A - lambda)^-1 of the discrete operator, applied by
sparse factorization or by the eigenfunction series, and the quantitative
bounds it satisfies.
"""

import functools
import logging

import numpy as np
import scipy.sparse as sp
from scipy.sparse.linalg import splu, onenormest, LinearOperator

from borglev import norms
from borglev.mesh import solve_factored
from borglev.spectrum import compute_spectrum
from borglev.exceptions import (NearSingular, SpectrumHit, BadQuery,
                                NonPositiveSpectrum)

logger = logging.getLogger(__name__)

CONDITION_LIMIT = 1e14


def _canonical(lam):
    lam = complex(lam)
    return lam.real if lam.imag == 0. else lam


class Factor(object):
    """
    Sparse LU factor of A - lambda I

    Attributes:
        lam (float or complex): spectral parameter
        key (str): key of the factored operator
        condition (float): 1-norm condition estimate
    """
    def __init__(self, lu, lam, key, condition):
        self.lu = lu
        self.lam = lam
        self.key = key
        self.condition = condition

    def solve(self, b):
        return solve_factored(self.lu, np.asarray(b))


@functools.lru_cache(maxsize=16)
def _factorize(op, lam):
    dtype = complex if isinstance(lam, complex) else float
    shifted = (op.matrix.astype(dtype) -
               lam * sp.identity(op.dimension, dtype=dtype, format="csr"))
    shifted = shifted.tocsc()
    logger.debug("factorizing A - lambda, lambda = %s, operator %s",
                 lam, op.key[:12])
    try:
        lu = splu(shifted)
    except RuntimeError as err:
        raise NearSingular("A - ({}) is singular: {}".format(lam, err))
    norm = abs(shifted).sum(axis=0).max()
    if isinstance(lam, complex):
        condition = norm / abs(lam.imag)
    else:
        inverse = LinearOperator(shifted.shape, matvec=lu.solve,
                                 rmatvec=lu.solve, dtype=float)
        condition = norm * onenormest(inverse)
    if not np.isfinite(condition) or condition > CONDITION_LIMIT:
        raise NearSingular("lambda = {} too close to the spectrum, "
                           "condition estimate {:.3e}".format(lam, condition))
    return Factor(lu, lam, op.key, condition)


def factorize(op, lam):
    """
    Cached LU factor of A - lambda I; real arithmetic for real lambda

    Args:
        op (DiscreteOperator): the operator
        lam (complex): spectral parameter

    Returns:
        Factor: the factor, shared between callers with equal (op, lam)
    """
    return _factorize(op, _canonical(lam))


def clear_factor_cache():
    _factorize.cache_clear()


def apply_resolvent_direct(op, lam, f):
    """
    Solve (A - lambda) u = f with a sparse factorization

    Args:
        op (DiscreteOperator): the operator
        lam (complex): spectral parameter off the spectrum
        f (array): interior field, shape (dim,) or (dim, k)

    Returns:
        array: u
    """
    op.grid.check_interior(f)
    f = np.asarray(f)
    u = factorize(op, lam).solve(f)
    scale = np.linalg.norm(f)
    if scale > 0.:
        defect = np.linalg.norm(op.matrix.dot(u) - lam * u - f) / scale
        if defect > 1e-10:
            logger.warning("resolvent solve at lambda = %s has relative "
                           "residual %.3e", lam, defect)
    return u


def apply_resolvent_series(sd, lam, f, K=None):
    """
    Partial eigenfunction series sum_k <phi_k, f> phi_k / (lambda_k - lambda)

    The series represents the operator whose eigenvalues are sd.values, so
    a shifted SpectralData gives the resolvent of A + lambda_0.

    Args:
        sd (SpectralData): eigenpairs
        lam (complex): spectral parameter
        f (array): interior field, shape (dim,) or (dim, k)
        K (int or None): truncation, all pairs if None

    Returns:
        array: partial sum, accumulated in ascending k
    """
    K = sd.count if K is None else int(K)
    values = sd.values[:K]
    vectors = sd.vectors[:K]
    sd.grid.check_interior(f)
    gap = np.abs(values - lam)
    hit = gap < 1e-8 * np.maximum(1., np.abs(values))
    if np.any(hit):
        k = np.argmax(hit)
        raise SpectrumHit("lambda = {} hits eigenvalue {} (k = {})".format(
            lam, values[k], k + 1))
    f = np.asarray(f)
    columns = f[:, None] if f.ndim == 1 else f
    weights = sd.grid.h ** sd.grid.n_dims * vectors.dot(columns)
    weights = weights / (values - lam)[:, None]
    out = np.empty((sd.grid.dimension, columns.shape[1]),
                   dtype=np.result_type(weights, vectors))
    for j in range(columns.shape[1]):
        out[:, j] = np.sum(weights[:, j, None] * vectors, axis=0)
    return out[:, 0] if f.ndim == 1 else out


def random_fields(grid, trials, seed):
    """ Seeded interior test fields, uniform in [-1, 1], shape (dim, trials) """
    rng = np.random.RandomState(seed)
    return rng.uniform(-1., 1., (grid.dimension, trials))


def check_im_bound(op, lam, trials, seed, fields=None):
    """
    max |R(lambda) f|_2 |Im lambda| over unit random f, at most 1 for a
    self-adjoint operator
    """
    lam = complex(lam)
    if lam.imag == 0.:
        raise BadQuery("Im lambda must be nonzero, got {}".format(lam))
    if fields is None:
        fields = random_fields(op.grid, trials, seed)
    fields = fields / norms.lp_norm(fields, 2, op.grid)[None, :]
    u = apply_resolvent_direct(op, lam, fields)
    return np.max(norms.lp_norm(u, 2, op.grid)) * abs(lam.imag)


def check_lp_bound(sd, m, trials, seed, fields=None):
    """
    Series L^{2n/(n+2)} -> L^{2n/(n-2)} resolvent ratio at tau(m) = (m+i)^2

    Args:
        sd (SpectralData): eigenpairs with a positive spectrum
        m (int): Isozaki parameter
        trials (int): number of random fields
        seed (int): random seed
        fields (array or None): test fields, shape (dim, k), overrides the
            random ones

    Returns:
        float: max over f of |R(tau) f|_{p_high} / (|Im tau| |f|_{p_low})
    """
    if sd.values[0] <= 0.:
        raise NonPositiveSpectrum("shift the spectrum first, lambda_1 = {}"
                                  .format(sd.values[0]))
    grid = sd.grid
    exponents = norms.ExponentSet(grid.n_dims)
    tau = (m + 1j) ** 2
    if fields is None:
        fields = random_fields(grid, trials, seed)
    u = apply_resolvent_series(sd, tau, fields)
    ratios = (norms.lp_norm(u, exponents.p_high, grid) /
              (abs(tau.imag) * norms.lp_norm(fields, exponents.p_low, grid)))
    return np.max(ratios)


def sup_ratio(sd, m):
    """ max over computed k of |lambda_k / (lambda_k - (m+i)^2)| """
    tau = (m + 1j) ** 2
    return np.max(np.abs(sd.values / (sd.values - tau)))


def check_real_decay(op, lams, trials, seed, fields=None):
    """
    |lambda| |R(lambda)| along negative real lambda below the spectrum

    Args:
        op (DiscreteOperator): the operator
        lams (list): real spectral parameters below lambda_1
        trials (int): number of random fields
        seed (int): random seed
        fields (array or None): explicit test fields

    Returns:
        list: per lambda, max over f of |R f|_2 |lambda| / |f|_2
    """
    lam1 = compute_spectrum(op, 1).values[0]
    if any(lam >= lam1 for lam in lams):
        raise BadQuery("every lambda must lie below lambda_1 = {}"
                       .format(lam1))
    if fields is None:
        fields = random_fields(op.grid, trials, seed)
    f_norm = norms.lp_norm(fields, 2, op.grid)
    values = []
    for lam in lams:
        u = apply_resolvent_direct(op, float(lam), fields)
        ratio = norms.lp_norm(u, 2, op.grid) * abs(lam) / f_norm
        values.append(float(np.max(ratio)))
    return values


def agmon_ratio(op, lams, trials, seed, p=2, fields=None):
    """
    Agmon-type ratio
    (|lambda| |u|_p + |lambda|^(1/2) |grad u|_p + |D^2 u|_p) / |(A - lambda)u|_p
    with difference-based norms, maximised over test fields u

    Returns:
        list: one ratio per lambda
    """
    if fields is None:
        fields = random_fields(op.grid, trials, seed)
    parts = [norms.difference_norms(fields[:, j], p, op.grid)
             for j in range(fields.shape[1])]
    applied = op.matrix.dot(fields)
    values = []
    for lam in lams:
        image = norms.lp_norm(applied - lam * fields, p, op.grid)
        best = 0.
        for j, (u_p, grad_p, d2_p) in enumerate(parts):
            top = abs(lam) * u_p + abs(lam) ** 0.5 * grad_p + d2_p
            best = max(best, top / image[j])
        values.append(best)
    return values
