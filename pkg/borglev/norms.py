#!/usr/bin/python

"""
Discrete volume, difference, Sobolev and boundary norms on a Grid.

Interior fields are arrays over the interior nodes; they are extended by
zero to the lattice boundary whenever differences are taken.
"""

import numpy as np

from borglev.exceptions import BadExponent, NonPositiveSpectrum


class ExponentSet(object):
    """
    Lebesgue exponents attached to the dimension

    Attributes:
        n (int): dimension
        p_low (float): 2n/(n+2)
        p_high (float): 2n/(n-2), infinite for n = 2
        p_half (float): n/2
    """
    def __init__(self, n):
        self.n = int(n)
        self.p_low = 2. * n / (n + 2.)
        self.p_high = 2. * n / (n - 2.) if n > 2 else np.inf
        self.p_half = 0.5 * n

    def __repr__(self):
        return "ExponentSet(n={n}, p_low={p_low}, p_high={p_high})".format(
            **self.__dict__)


def _check_exponent(p):
    if not (p == np.inf or p >= 1.):
        raise BadExponent("exponent p = {} outside [1, inf]".format(p))


def _weighted_lp(values, p, weight, axis=None):
    values = np.abs(values)
    if p == np.inf:
        return np.max(values, axis=axis)
    return (weight * np.sum(values ** p, axis=axis)) ** (1. / p)


def lp_norm(u, p, grid):
    r"""
    Discrete \(L^p(\Omega)\) norm \((\sum h^n |u|^p)^{1/p}\)

    Args:
        u (array): interior field, shape (dim,) or (dim, k); a 2-d array
            gives one norm per column
        p (float): exponent in [1, inf]
        grid (Grid): lattice

    Returns:
        float or array: the norm
    """
    _check_exponent(p)
    return _weighted_lp(u, p, grid.h ** grid.n_dims, axis=0)


def boundary_norm(f, p, grid):
    r"""
    Discrete \(L^p(\partial\Omega)\) norm with the flat face weight h^(n-1)
    """
    _check_exponent(p)
    return _weighted_lp(f, p, grid.h ** (grid.n_dims - 1), axis=0)


def inner(u, v, grid):
    """ h^n weighted bilinear sum over interior nodes, no conjugation """
    return grid.h ** grid.n_dims * np.sum(np.asarray(u) * np.asarray(v),
                                          axis=0)


def boundary_inner(f, g, grid):
    """ h^(n-1) weighted bilinear sum over boundary DOFs """
    return grid.h ** (grid.n_dims - 1) * np.sum(np.asarray(f) *
                                                np.asarray(g), axis=0)


def _zero_extended(u, grid):
    lattice = np.asarray(u).reshape(grid.shape)
    return np.pad(lattice, 1, mode="constant")


def forward_differences(u, grid):
    """
    First forward differences of the zero-extended field

    Args:
        u (array): interior field, shape (dim,)
        grid (Grid): lattice

    Returns:
        list: one array per axis, N entries along that axis and N-1 along
        the others
    """
    padded = _zero_extended(u, grid)
    inner_slice = [slice(1, -1)] * grid.n_dims
    diffs = []
    for axis in range(grid.n_dims):
        window = list(inner_slice)
        window[axis] = slice(None)
        diffs.append(np.diff(padded[tuple(window)], axis=axis) / grid.h)
    return diffs


def second_differences(u, grid):
    """
    Pure central and mixed forward-forward second differences of the
    zero-extended field

    Returns:
        tuple: (pure, mixed) where pure is a list of n arrays on the
        interior lattice and mixed a list of arrays, one per axis pair
        a < b
    """
    padded = _zero_extended(u, grid)
    n, h2 = grid.n_dims, grid.h ** 2
    pure = []
    for axis in range(n):
        window = [slice(1, -1)] * n
        window[axis] = slice(None)
        pure.append(np.diff(padded[tuple(window)], n=2, axis=axis) / h2)
    mixed = []
    for a in range(n):
        for b in range(a + 1, n):
            window = [slice(1, -1)] * n
            window[a] = slice(None)
            window[b] = slice(None)
            block = np.diff(np.diff(padded[tuple(window)], axis=a), axis=b)
            mixed.append(block / h2)
    return pure, mixed


def grad_norm(u, grid):
    r"""
    Discrete \(H^1_0\) seminorm; grad_norm(u)^2 equals the h^n-weighted sum
    of conj(u) times -Delta_h u exactly
    """
    weight = grid.h ** grid.n_dims
    total = sum(np.sum(np.abs(d) ** 2) for d in forward_differences(u, grid))
    return np.sqrt(weight * total)


def difference_norms(u, p, grid):
    """
    The three pieces of the difference-based W^{2,p} surrogate

    Args:
        u (array): interior field, shape (dim,)
        p (float): exponent in [1, inf]
        grid (Grid): lattice

    Returns:
        tuple: (|u|_p, |grad u|_p, |D^2 u|_p), the last two taken over all
        first and second difference entries, mixed second differences
        counted for both orderings
    """
    _check_exponent(p)
    weight = grid.h ** grid.n_dims
    first = np.concatenate([d.ravel() for d in forward_differences(u, grid)])
    pure, mixed = second_differences(u, grid)
    pure = np.concatenate([d.ravel() for d in pure])
    if mixed:
        mixed = np.concatenate([d.ravel() for d in mixed])
    else:
        mixed = np.zeros(0)
    if p == np.inf:
        second = max(np.max(np.abs(pure)),
                     np.max(np.abs(mixed)) if len(mixed) else 0.)
    else:
        second = (weight * (np.sum(np.abs(pure) ** p) +
                            2. * np.sum(np.abs(mixed) ** p))) ** (1. / p)
    return (_weighted_lp(u, p, weight), _weighted_lp(first, p, weight),
            second)


def w2p_norm(u, p, grid):
    """ Difference-based W^{2,p} norm (|u|_p^p + |grad u|_p^p + |D^2u|_p^p)^(1/p) """
    parts = difference_norms(u, p, grid)
    if p == np.inf:
        return max(parts)
    return sum(x ** p for x in parts) ** (1. / p)


def spectral_sobolev_norm(u, s, sd):
    r"""
    Spectral Sobolev norm \((\sum_k \lambda_k^s |\langle\phi_k,u\rangle|^2)^{1/2}\)
    over the computed eigenpairs. On this scale the interpolation inequality
    |u|_s <= |u|_0^(1-s/2) |u|_2^(s/2) holds with constant 1.

    Args:
        u (array): interior field
        s (float): smoothness in [0, 2]
        sd (SpectralData): eigenpairs with positive values, see
            spectrum.shift_to_positive

    Returns:
        float: the norm
    """
    if not 0. <= s <= 2.:
        raise BadExponent("smoothness s = {} outside [0, 2]".format(s))
    values = np.asarray(sd.values)
    if np.any(values <= 0.):
        raise NonPositiveSpectrum(
            "smallest eigenvalue {} is not positive, shift the spectrum "
            "first".format(values.min()))
    coefficients = inner(sd.vectors.T, np.asarray(u)[:, None], sd.grid)
    return np.sqrt(np.sum(values ** s * np.abs(coefficients) ** 2))


def holder_gap(q, u, grid):
    """
    Slack in sum h^n |q u^2| <= |q|_{n/2} |u|_{2n/(n-2)}^2

    Returns:
        tuple: (left side, right side)
    """
    exponents = ExponentSet(grid.n_dims)
    lhs = grid.h ** grid.n_dims * np.sum(np.abs(q * u * u))
    rhs = (lp_norm(q, exponents.p_half, grid) *
           lp_norm(u, exponents.p_high, grid) ** 2)
    return lhs, rhs
