#!/usr/bin/python

"""
Complex-parameter boundary functional for Fourier recovery of a potential
difference.

For a frequency xi, a unit direction eta orthogonal to it and m >= 2 the
parameters theta(m), omega(m) and tau(m) = (m+i)^2 make
sqrt(tau)(theta - omega) = xi (1 + i/m), so the boundary functional
S(tau, theta, omega; q), built from exponential Dirichlet data and the DN
map, isolates the Fourier coefficient of q as m grows. The data are lattice
waves on the discrete dispersion surface, which solve the free difference
equation exactly, or sampled continuum exponentials.
"""

import itertools
import logging

import numpy as np
from joblib import Parallel, delayed

from borglev import norms
from borglev.mesh import sample_potential, assemble_hamiltonian, \
    lift_boundary
from borglev.dnmap import dn_apply, solve_dirichlet
from borglev.resolvent import apply_resolvent_direct, \
    apply_resolvent_series, factorize
from borglev.exceptions import (NotOrthogonal, XiTooLarge, BranchAmbiguous,
                                GridMismatch, RangeError, BadMode,
                                ConvergenceFailure)

logger = logging.getLogger(__name__)

ZERO_PROBE = 1e-6
CGO_DATA = ("lattice", "sampled")


class IsozakiParams(object):
    """
    Attributes:
        xi (array): frequency, nonzero
        eta (array): unit vector orthogonal to xi
        m (int): parameter, |xi| < 2m
        C (float): (1 - |xi|^2 / 4m^2)^(1/2)
        theta (array): C eta + xi / 2m
        omega (array): C eta - xi / 2m
        sqrt_tau (complex): m + i
        tau (complex): (m + i)^2, Im tau = 2m
    """
    def __init__(self, xi, eta, m):
        self.xi = xi
        self.eta = eta
        self.m = m
        self.C = np.sqrt(1. - np.dot(xi, xi) / (4. * m * m))
        self.theta = self.C * eta + xi / (2. * m)
        self.omega = self.C * eta - xi / (2. * m)
        self.sqrt_tau = m + 1j
        self.tau = self.sqrt_tau ** 2

    def __repr__(self):
        return "IsozakiParams(xi={}, eta={}, m={})".format(
            list(self.xi), list(self.eta), self.m)


def make_params(xi, eta, m):
    """
    Build the parameters for frequency xi

    Args:
        xi (array): nonzero frequency
        eta (array): unit vector with xi . eta = 0
        m (int): m >= 2 with |xi| < 2m

    Returns:
        IsozakiParams: the parameters
    """
    xi = np.asarray(xi, dtype=float)
    eta = np.asarray(eta, dtype=float)
    if xi.shape != eta.shape:
        raise NotOrthogonal("xi and eta have different lengths")
    if abs(np.linalg.norm(eta) - 1.) > 1e-12:
        raise NotOrthogonal("eta is not a unit vector, |eta| = {}"
                            .format(np.linalg.norm(eta)))
    if abs(np.dot(xi, eta)) > 1e-12:
        raise NotOrthogonal("xi . eta = {}".format(np.dot(xi, eta)))
    if m < 2:
        raise XiTooLarge("m = {} must be at least 2".format(m))
    size = np.linalg.norm(xi)
    if size == 0. or size >= 2. * m:
        raise XiTooLarge("|xi| = {} outside (0, 2m) for m = {}"
                         .format(size, m))
    return IsozakiParams(xi, eta, m)


def principal_sqrt(lam):
    """
    Square root with its cut on the positive real axis and Im >= 0;
    gives m + i at tau(m)
    """
    lam = complex(lam)
    if lam.imag == 0. and lam.real > 0.:
        raise BranchAmbiguous("lambda = {} lies on the branch cut (0, inf)"
                              .format(lam.real))
    return 1j * np.sqrt(-lam)


def cgo_samples(lam, d, coords):
    r""" \(e^{i\sqrt\lambda\, d\cdot x}\) at the given coordinates """
    return np.exp(1j * principal_sqrt(lam) * coords.dot(np.asarray(d)))


def cgo_boundary(lam, d, grid):
    """ exponential Dirichlet data at the boundary DOFs """
    return cgo_samples(lam, d, grid.boundary_coords)


def lattice_wave_vectors(P, grid, tol=1e-12, max_iter=50):
    """
    Complex wave vectors kappa_omega, kappa_{-theta} on the discrete
    dispersion surface sum_j (4/h^2) sin^2(kappa_j h/2) = tau with
    kappa_omega + kappa_{-theta} = -sqrt(tau)(theta - omega)

    exp(i kappa.x) then solves the free lattice equation exactly, so the
    product of the two free Dirichlet solutions is the Fourier phase
    exp(-i sqrt(tau)(theta - omega).x) at every node. Newton iteration on
    kappa = -zeta/2 +- (z eta + w xi/|xi|), started from the continuum
    vectors sqrt(tau) omega and -sqrt(tau) theta.

    Args:
        P (IsozakiParams): parameters
        grid (Grid): lattice
        tol (float): relative step size at which the iteration stops
        max_iter (int): iteration limit

    Returns:
        tuple: (kappa_omega, kappa_theta) complex arrays
    """
    h = grid.h
    zeta = P.sqrt_tau * (P.theta - P.omega)
    unit = P.xi / np.linalg.norm(P.xi)
    target = 0.25 * P.tau * h * h
    z, w = P.sqrt_tau * P.C, 0j
    for _ in range(max_iter):
        p = z * P.eta + w * unit
        a = (p - 0.5 * zeta) * h
        b = (p + 0.5 * zeta) * h
        e1 = np.sum(np.sin(0.5 * a) ** 2) - target
        e2 = np.sum(np.sin(0.5 * b) ** 2) - target
        da = 0.5 * h * np.sin(a)
        db = 0.5 * h * np.sin(b)
        j11, j12 = np.dot(da, P.eta), np.dot(da, unit)
        j21, j22 = np.dot(db, P.eta), np.dot(db, unit)
        det = j11 * j22 - j12 * j21
        dz = (e2 * j12 - e1 * j22) / det
        dw = (e1 * j21 - e2 * j11) / det
        z, w = z + dz, w + dw
        if abs(dz) + abs(dw) <= tol * (abs(z) + abs(w) + 1.):
            break
    else:
        raise ConvergenceFailure("no lattice wave vectors for {} on {}"
                                 .format(P, grid))
    p = z * P.eta + w * unit
    kappa_omega, kappa_theta = p - 0.5 * zeta, -p - 0.5 * zeta
    growth = max(np.max(np.abs(kappa_omega.imag)),
                 np.max(np.abs(kappa_theta.imag)))
    if growth > 3.:
        logger.warning("lattice waves for m = %d grow like exp(%.1f |x|) "
                       "on %s, near the band edge", P.m, growth, grid)
    return kappa_omega, kappa_theta


def wave_vectors(P, grid, data="lattice"):
    """
    Wave vectors of the exponential data: "lattice" for the exact discrete
    free solutions, "sampled" for sqrt(tau) omega and -sqrt(tau) theta
    """
    if data not in CGO_DATA:
        raise BadMode("exponential data " + str(data) + " not implemented.")
    if data == "lattice":
        return lattice_wave_vectors(P, grid)
    return P.sqrt_tau * P.omega, -P.sqrt_tau * P.theta


def exponential_data(P, grid, data="lattice"):
    """ boundary values (f_omega, f_{-theta}) of the exponential data """
    kappa_omega, kappa_theta = wave_vectors(P, grid, data)
    coords = grid.boundary_coords
    return (np.exp(1j * coords.dot(kappa_omega)),
            np.exp(1j * coords.dot(kappa_theta)))


def s_functional(op, P, mode="variational", data="lattice"):
    """
    Boundary functional sum_b h^(n-1) (DN(tau) f_omega) f_{-theta} with
    exponential data f_d = exp(i kappa_d.x)

    Args:
        op (DiscreteOperator): the operator
        P (IsozakiParams): parameters
        mode (str): trace mode
        data (str): "lattice" or "sampled" wave vectors

    Returns:
        complex: S
    """
    grid = op.grid
    f, g = exponential_data(P, grid, data)
    return complex(norms.boundary_inner(dn_apply(op, P.tau, f, mode), g,
                                        grid))


def box_integral(zeta):
    """ integral of exp(-i zeta.x) over the unit box """
    value = 1. + 0j
    for z in np.asarray(zeta):
        if z != 0.:
            value *= (1. - np.exp(-1j * z)) / (1j * z)
    return value


def continuum_free_term(P):
    """ S(q = 0) of the continuous problem, -(zeta.zeta/2) box_integral """
    zeta = P.sqrt_tau * (P.theta - P.omega)
    return -0.5 * np.dot(zeta, zeta) * box_integral(zeta)


def _free_operator(grid):
    return assemble_hamiltonian(grid, sample_potential({"kind": "zero"},
                                                       grid))


def born_decomposition(op, P, mode="variational", sd=None, data="lattice"):
    """
    Split S(tau, theta, omega; q) into a Fourier term, a potential-free
    term and a resolvent remainder

    With phi_d = exp(i kappa_d.x) on the interior nodes:
      fourier_term = sum h^n exp(-i sqrt(tau)(theta-omega).x) q
      free_term = S(q = 0) on the same lattice with the same data
      remainder = -sum h^n R(tau)(q phi_omega) (q phi_{-theta})
    The pairing is bilinear, i.e. <R(q phi_omega), conj(q phi_{-theta})>
    in sesquilinear notation, and the remainder vanishes for q = 0.

    With lattice data phi_d are the discrete free Dirichlet solutions and
    the split is exact up to roundoff in variational mode. Sampled data
    leave a defect that grows with sqrt(tau) h. continuum_free_term is the
    free term of the continuous problem; free_term_defect measures the
    distance to it relative to |lhs|. discrete_residual repeats the split
    with u0, v0 solved on the free operator.

    Args:
        op (DiscreteOperator): the operator
        P (IsozakiParams): parameters
        mode (str): trace mode
        sd (SpectralData or None): if given the remainder uses the series
            resolvent over the computed eigenpairs
        data (str): "lattice" or "sampled" wave vectors

    Returns:
        dict: lhs, fourier_term, free_term, continuum_free_term,
        free_term_defect, remainder, residual (relative to |lhs|),
        absolute_residual, discrete_residual (relative)
    """
    grid = op.grid
    q = op.potential.values
    coords = grid.interior_coords
    exponent = P.sqrt_tau * (P.theta - P.omega)
    h_n = grid.h ** grid.n_dims
    kappa_omega, kappa_theta = wave_vectors(P, grid, data)
    f, g = exponential_data(P, grid, data)

    lhs = s_functional(op, P, mode, data)
    fourier_term = h_n * np.sum(np.exp(-1j * coords.dot(exponent)) * q)
    free = _free_operator(grid)
    free_term = complex(norms.boundary_inner(dn_apply(free, P.tau, f, mode),
                                             g, grid))
    continuum = continuum_free_term(P)

    phi_omega = np.exp(1j * coords.dot(kappa_omega))
    phi_theta = np.exp(1j * coords.dot(kappa_theta))
    remainder = -_resolvent_pairing(op, P.tau, q * phi_omega,
                                    q * phi_theta, sd)

    total = fourier_term + free_term + remainder
    absolute = abs(lhs - total)
    scale = abs(lhs) if abs(lhs) > 0. else 1.

    u0 = solve_dirichlet(free, P.tau, f)
    v0 = solve_dirichlet(free, P.tau, g)
    exact = free_term + h_n * np.sum(q * u0 * v0) - \
        _resolvent_pairing(op, P.tau, q * u0, q * v0, None)
    discrete = abs(lhs - exact) / scale if mode == "variational" else np.nan

    return {"lhs": lhs,
            "fourier_term": fourier_term,
            "free_term": free_term,
            "continuum_free_term": continuum,
            "free_term_defect": abs(free_term - continuum) / scale,
            "remainder": remainder,
            "residual": absolute / scale,
            "absolute_residual": absolute,
            "discrete_residual": discrete}


def _resolvent_pairing(op, tau, left, right, sd):
    if not np.any(left) or not np.any(right):
        return 0j
    if sd is None:
        solved = apply_resolvent_direct(op, tau, left)
    else:
        unshifted = sd._replace(values=sd.unshifted_values(), shift=0.)
        solved = apply_resolvent_series(unshifted, tau, left)
    return complex(norms.inner(solved, right, op.grid))


def recover_fourier_diff(op1, op2, xi, eta, m, mode="variational",
                         data="lattice"):
    """
    S(q1) - S(q2) at the parameters of (xi, eta, m); tends to the Fourier
    coefficient of q1 - q2 at xi as m grows since the free term cancels
    """
    if op1.grid != op2.grid:
        raise GridMismatch("operators on {} and {}".format(op1.grid,
                                                           op2.grid))
    P = make_params(xi, eta, m)
    if op1 == op2:
        return 0j
    return s_functional(op1, P, mode, data) - s_functional(op2, P, mode, data)


def richardson_fourier_diff(op1, op2, xi, eta, m, mode="variational",
                            data="lattice"):
    """ 2 S_diff(2m) - S_diff(m), removing the first order 1/m bias """
    return 2. * recover_fourier_diff(op1, op2, xi, eta, 2 * m, mode, data) - \
        recover_fourier_diff(op1, op2, xi, eta, m, mode, data)


def orthogonal_direction(xi):
    """
    Deterministic unit vector orthogonal to xi: the coordinate axis where
    |xi_j| is smallest, with its xi component removed
    """
    xi = np.asarray(xi, dtype=float)
    axis = np.zeros(len(xi))
    axis[np.argmin(np.abs(xi))] = 1.
    size = np.linalg.norm(xi)
    if size > 0.:
        unit = xi / size
        axis = axis - np.dot(axis, unit) * unit
    return axis / np.linalg.norm(axis)


def frequency_lattice(n, k_max):
    """
    Frequencies 2 pi k with |k|_inf <= k_max

    The zero frequency is probed at ZERO_PROBE along the first axis.

    Returns:
        list: (k, xi) tuples in lexicographic order of k
    """
    if k_max < 1:
        raise RangeError("k_max = {} must be >= 1".format(k_max))
    lattice = []
    for k in itertools.product(range(-k_max, k_max + 1), repeat=n):
        xi = 2. * np.pi * np.array(k, dtype=float)
        if not any(k):
            xi[0] = ZERO_PROBE
        lattice.append((k, xi))
    return lattice


def fourier_coefficient(values, xi, grid):
    """ quadrature sum h^n exp(-i xi.x) values over the interior nodes """
    phase = np.exp(-1j * grid.interior_coords.dot(np.asarray(xi)))
    return grid.h ** grid.n_dims * np.sum(phase * values)


class RecoveryReport(object):
    """
    Fourier recovery of q1 - q2 over a frequency lattice

    Attributes:
        modes (list): integer frequency vectors k
        xis (array): probed frequencies
        estimates (array): recovered coefficients, 0 where flagged
        truths (array): quadrature coefficients of q1 - q2
        flagged (array): True where |xi| >= 2m and nothing could be probed
        error (float): |estimates - truths|_2 / |truths|_2, absolute if the
            truths vanish
        field (array): real Fourier synthesis on the interior nodes
        field_error (float): relative l2 error of field against q1 - q2
        m (int): parameter used
        mode (str): trace mode
    """
    def __init__(self, modes, xis, estimates, truths, flagged, field,
                 difference, m, mode):
        self.modes = modes
        self.xis = xis
        self.estimates = estimates
        self.truths = truths
        self.flagged = flagged
        self.field = field
        self.m = m
        self.mode = mode
        self.error = _relative(estimates - truths, truths)
        self.field_error = _relative(field - difference, difference)

    def rows(self):
        """ k_1..k_n, re_est, im_est, re_true, im_true, abs_err """
        for k, est, true in zip(self.modes, self.estimates, self.truths):
            yield list(k) + [est.real, est.imag, true.real, true.imag,
                             abs(est - true)]


def _relative(defect, reference):
    size = np.linalg.norm(reference)
    if size == 0.:
        return np.linalg.norm(defect)
    return np.linalg.norm(defect) / size


def recover_field_diff(op1, op2, k_max, m, mode="variational", threads=1,
                       data="lattice", richardson=False):
    """
    Recover the Fourier coefficients of q1 - q2 on the lattice
    |k|_inf <= k_max and synthesise the field

    Args:
        op1, op2 (DiscreteOperator): operators on one grid
        k_max (int): lattice radius
        m (int): parameter
        mode (str): trace mode
        threads (int): joblib threads for the per-frequency solves
        data (str): "lattice" or "sampled" wave vectors
        richardson (bool): combine m and 2m to remove the 1/m bias

    Returns:
        RecoveryReport: the report
    """
    if op1.grid != op2.grid:
        raise GridMismatch("operators on {} and {}".format(op1.grid,
                                                           op2.grid))
    grid = op1.grid
    lattice = frequency_lattice(grid.n_dims, k_max)
    flagged = np.array([np.linalg.norm(xi) >= 2. * m for _, xi in lattice])
    probes = [(k, xi) for (k, xi), skip in zip(lattice, flagged) if not skip]
    logger.info("recovering %d frequencies at m = %d (%d out of reach)",
                len(probes), m, int(flagged.sum()))

    for scale in ((1, 2) if richardson else (1,)):
        tau = (scale * m + 1j) ** 2
        factorize(op1, tau)
        factorize(op2, tau)
    estimate = richardson_fourier_diff if richardson else recover_fourier_diff
    lift_boundary(grid, op1, np.zeros(grid.n_boundary))
    found = Parallel(n_jobs=threads, prefer="threads")(
        delayed(estimate)(op1, op2, xi, orthogonal_direction(xi), m, mode,
                          data)
        for _, xi in probes)

    estimates = np.zeros(len(lattice), dtype=complex)
    estimates[~flagged] = found
    difference = op1.potential.values - op2.potential.values
    truths = np.array([fourier_coefficient(difference, xi, grid)
                       for _, xi in lattice])
    modes = [k for k, _ in lattice]
    waves = np.exp(2j * np.pi * grid.interior_coords.dot(
        np.array(modes, dtype=float).T))
    field = np.real(waves.dot(estimates))
    return RecoveryReport(modes, np.array([xi for _, xi in lattice]),
                          estimates, truths, flagged, field, difference, m,
                          mode)


def remainder_decay(op, xi, eta, m_list, mode="variational", threads=1,
                    sd=None, data="sampled"):
    """
    |remainder| of the Born split for each m

    Args:
        op (DiscreteOperator): the operator
        xi, eta (array): frequency and direction
        m_list (list): strictly increasing parameters
        mode (str): trace mode
        threads (int): joblib threads, one m per task
        sd (SpectralData or None): series resolvent for the remainder
        data (str): wave vectors; lattice waves blow up once m^2 h^2
            reaches the band edge, so long sweeps use "sampled"

    Returns:
        list: |remainder| per m
    """
    if any(b <= a for a, b in zip(m_list, m_list[1:])):
        raise RangeError("m_list must be strictly increasing, got {}"
                         .format(list(m_list)))
    params = [make_params(xi, eta, m) for m in m_list]
    lift_boundary(op.grid, op, np.zeros(op.grid.n_boundary))
    splits = Parallel(n_jobs=threads, prefer="threads")(
        delayed(born_decomposition)(op, P, mode, sd, data) for P in params)
    return [abs(split["remainder"]) for split in splits]
