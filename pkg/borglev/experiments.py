#!/usr/bin/python

"""
One function per experiment id. Each takes an ExperimentConfig and a
Workspace and returns an Outcome: the tables to write, the pass/fail
checks and any extra reported numbers.
"""

import collections
import logging
import os

import numpy as np

from borglev import norms
from borglev.mesh import (build_grid, sample_potential, assemble_hamiltonian,
                          lift_boundary, normal_derivative, PotentialField)
from borglev.spectrum import (compute_spectrum, shift_to_positive,
                              neumann_traces, weyl_fit, eigen_ratio_tail,
                              eig_norm_growth, loglog_fit)
from borglev import resolvent
from borglev import dnmap
from borglev import isozaki
from borglev import input_output
from borglev.exceptions import CacheError

logger = logging.getLogger(__name__)

Table = collections.namedtuple("Table", ["title", "columns", "rows", "notes"])
Check = collections.namedtuple("Check", ["name", "value", "bound", "passed"])
Outcome = collections.namedtuple("Outcome", ["tables", "checks", "values"])

ALIGNED_OFFSETS = (1., 0.1)


def check_at_most(name, value, bound):
    return Check(name, float(value), float(bound), bool(value <= bound))


def check_at_least(name, value, bound):
    return Check(name, float(value), float(bound), bool(value >= bound))


def strictly_decreasing(values):
    return all(b < a for a, b in zip(values, values[1:]))


def non_increasing_after_max(values):
    tail = list(values[int(np.argmax(values)):])
    return all(b <= a for a, b in zip(tail, tail[1:]))


class Workspace(object):
    """
    Grid, operators and cached spectra shared by the experiments of a run

    Args:
        cfg (ExperimentConfig): configuration
        cachedir (str or None): spectral cache directory, no caching if None
    """
    def __init__(self, cfg, cachedir=None):
        self.cfg = cfg
        self.cachedir = cachedir
        self.grid = build_grid(cfg.n, cfg.N)
        self.op1 = self.operator(cfg.q1)
        self.op2 = self.operator(cfg.q2)
        self._spectra = {}

    def operator(self, descriptor, grid=None):
        grid = self.grid if grid is None else grid
        return assemble_hamiltonian(grid, sample_potential(descriptor, grid))

    def spectrum(self, op, K, mode=None):
        """ unshifted spectral data, traces attached when mode is given """
        key = (op.key, K, mode)
        if key in self._spectra:
            return self._spectra[key]
        path = None
        if self.cachedir is not None:
            path = input_output.cache_path(self.cachedir, op, K, mode)
            if os.path.exists(path):
                try:
                    sd = input_output.load_cache(path, op)
                    logger.debug("spectral cache hit %s", path)
                    self._spectra[key] = sd
                    return sd
                except CacheError as err:
                    logger.warning("ignoring spectral cache: %s", err)
        sd = compute_spectrum(op, K, self.cfg.tol, self.cfg.dense_limit)
        if mode is not None:
            sd = neumann_traces(sd, mode)
        if path is not None:
            if not os.path.isdir(self.cachedir):
                os.makedirs(self.cachedir)
            input_output.save_cache(path, sd)
        self._spectra[key] = sd
        return sd

    def boundary_field(self, offset=0):
        rng = np.random.RandomState(self.cfg.seed + offset)
        return rng.uniform(-1., 1., self.grid.n_boundary)

    def frequency(self):
        n = self.cfg.n
        if self.cfg.xi is None:
            xi = np.zeros(n)
            xi[0] = 2. * np.pi
        else:
            xi = np.asarray(self.cfg.xi, dtype=float)
        if self.cfg.eta is None:
            eta = isozaki.orthogonal_direction(xi)
        else:
            eta = np.asarray(self.cfg.eta, dtype=float)
        return xi, eta


def closed_form_spectrum(n, N, K):
    """ K lowest eigenvalues of -Delta_h on the unit box """
    k = np.arange(1, N)
    mu = 4. * N * N * np.sin(0.5 * np.pi * k / N) ** 2
    total = mu
    for _ in range(n - 1):
        total = np.add.outer(total, mu)
    return np.sort(total.ravel())[:K]


#################################################
#  Experiments
#################################################

def run_spectrum(cfg, ws):
    op = ws.op1
    sd = ws.spectrum(op, cfg.K, cfg.trace_mode)
    grid = ws.grid
    checks = []
    bound = 1e-8 * np.abs(sd.values) + 1e-8
    checks.append(check_at_most("residuals", np.max(sd.residuals / bound),
                                1.))
    gram = sd.gram()
    checks.append(check_at_most("orthonormality",
                                np.max(np.abs(gram - np.eye(sd.count))),
                                1e-8))
    closed = np.full(sd.count, np.nan)
    if cfg.q1["kind"] == "zero":
        closed = closed_form_spectrum(cfg.n, cfg.N, sd.count)
        checks.append(check_at_most(
            "closed_form", np.max(np.abs(sd.values / closed - 1.)), 1e-8))
        continuum = cfg.n * np.pi ** 2
        checks.append(check_at_most(
            "continuum_lambda1", abs(sd.values[0] / continuum - 1.), 0.005))

    positive = shift_to_positive(sd)
    rng = np.random.RandomState(cfg.seed)
    fields = sd.vectors.T.dot(rng.standard_normal((sd.count, 100)))
    interpolation = []
    for s in (0.5, 1., 1.5):
        worst = -np.inf
        for j in range(fields.shape[1]):
            u = fields[:, j]
            low = norms.spectral_sobolev_norm(u, 0., positive)
            high = norms.spectral_sobolev_norm(u, 2., positive)
            mid = norms.spectral_sobolev_norm(u, s, positive)
            rhs = low ** (1. - 0.5 * s) * high ** (0.5 * s)
            worst = max(worst, (mid - rhs) / rhs)
        interpolation.append((s, worst))
        checks.append(check_at_most("interpolation_s{}".format(s), worst,
                                    1e-12))

    growth = eig_norm_growth(sd)
    spread = np.max(growth["difference"]) / np.min(growth["difference"])
    checks.append(check_at_most("w22_growth_spread", spread, 10.))

    rows = [(k + 1, sd.values[k], closed[k], sd.residuals[k],
             growth["spectral"][k], growth["difference"][k])
            for k in range(sd.count)]
    tables = {
        "eigenvalues": Table("lowest Dirichlet eigenvalues",
                             ["k", "lambda", "closed_form", "residual",
                              "spectral_ratio", "difference_ratio"],
                             rows, ["grid: {}".format(grid)]),
        "interpolation": Table("spectral interpolation slack",
                               ["s", "max_relative_violation"],
                               interpolation, []),
    }
    return Outcome(tables, checks, {"lambda_1": sd.values[0],
                                    "shift": positive.shift})


def run_weyl(cfg, ws):
    k_lo, k_hi = cfg.weyl_range
    K = max(cfg.K, k_hi)
    sd0 = ws.spectrum(ws.operator({"kind": "zero"}), K)
    sdq = ws.spectrum(ws.op1, K)
    checks = []
    values = {}
    for label, sd in (("zero", sd0), ("q1", sdq)):
        fit = weyl_fit(sd, (k_lo, k_hi), cfg.weyl_boundary_correction)
        values[label] = fit
        prefix = "corrected_" if cfg.weyl_boundary_correction else ""
        exponent = fit[prefix + "exponent"]
        constant = fit[prefix + "constant"]
        checks.append(check_at_most(
            "{}_exponent".format(label),
            abs(exponent - fit["predicted_exponent"]), 0.05))
        checks.append(check_at_most(
            "{}_constant".format(label),
            abs(constant / fit["predicted_constant"] - 1.), 0.15))
    tail = eigen_ratio_tail(sdq, sd0, k_lo)
    checks.append(check_at_most("eigen_ratio_tail", tail, 0.05))
    values["eigen_ratio_tail"] = tail
    rows = [(k + 1, sd0.values[k], sdq.values[k]) for k in range(K)]
    tables = {"weyl": Table("eigenvalues for the Weyl fit",
                            ["k", "lambda_zero", "lambda_q1"], rows,
                            ["fit range: [{}, {}]".format(k_lo, k_hi)])}
    return Outcome(tables, checks, values)


def run_dn_decay(cfg, ws):
    grid = ws.grid
    mode = cfg.trace_mode
    lams = [float(lam) for lam in cfg.lambdas]
    opnorms = []
    symmetry = []
    for lam in lams:
        D1 = dnmap.dn_matrix(ws.op1, lam, mode)
        D2 = dnmap.dn_matrix(ws.op2, lam, mode)
        opnorms.append(dnmap.dn_diff_opnorm(D1, D2, cfg.weight_eps))
        symmetry.append(D1.symmetry_defect())
    checks = []
    if max(opnorms) == 0.:
        checks.append(Check("identical_potentials", 0., 0., True))
        slope = np.nan
    else:
        checks.append(Check("strictly_decreasing", opnorms[-1], opnorms[0],
                            strictly_decreasing(opnorms)))
        checks.append(check_at_most("final_over_initial",
                                    opnorms[-1] / opnorms[0], 0.15))
        slope = dnmap.decay_slope(lams, opnorms)
        if slope > -0.4:
            logger.warning("DN difference decays with slope %.3f", slope)
    if mode == "variational":
        checks.append(check_at_most("dn_symmetry", max(symmetry), 1e-8))

    # Green identity on random pairs at the first lambda
    lam0 = lams[0]
    rng = np.random.RandomState(cfg.seed)
    F = rng.uniform(-1., 1., (grid.n_boundary, 50))
    G = rng.uniform(-1., 1., (grid.n_boundary, 50))
    U = dnmap.solve_dirichlet(ws.op1, lam0, F)
    V = lift_boundary(grid, ws.op1, G)
    LF = normal_derivative(grid, U, F, lam0, "variational")
    green = []
    for j in range(F.shape[1]):
        lhs = norms.boundary_inner(G[:, j], LF[:, j], grid)
        rhs = dnmap.green_form(ws.op1, lam0, U[:, j], F[:, j], V[:, j],
                               G[:, j])
        green.append(abs(lhs - rhs) / max(abs(lhs), 1.))
    checks.append(check_at_most("green_identity", max(green), 1e-10))

    # differentiation identity between two lambdas
    mu = lams[1] if len(lams) > 1 else lam0 - 1.
    f = F[:, 0]
    direct = dnmap.dn_apply(ws.op1, lam0, f) - dnmap.dn_apply(ws.op1, mu, f)
    w = (lam0 - mu) * resolvent.apply_resolvent_direct(
        ws.op1, lam0, dnmap.solve_dirichlet(ws.op1, mu, f))
    through = normal_derivative(grid, w, np.zeros_like(f), 0.,
                                "variational") - 0.5 * grid.h * (lam0 - mu) * f
    consistency = np.linalg.norm(direct - through) / np.linalg.norm(direct)
    checks.append(check_at_most("resolvent_consistency", consistency, 1e-8))

    bounds = dnmap.solution_bound(ws.op1, lams, f)
    checks.append(check_at_most("uniform_solution_bound",
                                max(bounds) / bounds[0], 2.))
    checks.append(Check("solution_bound_settles", bounds[-1], max(bounds),
                        non_increasing_after_max(bounds)))

    rows = [(lam, opnorm, sym, bound)
            for lam, opnorm, sym, bound in zip(lams, opnorms, symmetry,
                                               bounds)]
    tables = {"dn_decay": Table("DN difference operator norms",
                                ["lambda", "opnorm", "symmetry_defect",
                                 "solution_bound"], rows,
                                ["q1: {}".format(cfg.q1),
                                 "q2: {}".format(cfg.q2),
                                 "weight_eps: {}".format(cfg.weight_eps)])}
    return Outcome(tables, checks, {"slope": slope})


def _finite_difference(op, lam, f, m, mode):
    delta = 1e-3 * abs(lam)
    plus = dnmap.dn_apply(op, lam + delta, f, mode)
    minus = dnmap.dn_apply(op, lam - delta, f, mode)
    if m == 1:
        return (plus - minus) / (2. * delta)
    centre = dnmap.dn_apply(op, lam, f, mode)
    return (plus - 2. * centre + minus) / delta ** 2


def run_dn_derivative(cfg, ws):
    grid = ws.grid
    mode = cfg.trace_mode
    m = cfg.derivative_order
    lam = cfg.lam
    f = ws.boundary_field()
    sd1 = ws.spectrum(ws.op1, cfg.K, mode)
    sd2 = ws.spectrum(ws.op2, cfg.K, mode)
    series = dnmap.dn_derivative_series(sd1, lam, f, m)
    exact = dnmap.dn_derivative_series(sd1, lam, f, m, tail=True)
    checks = []
    values = {}
    if m <= 2:
        reference = _finite_difference(ws.op1, lam, f, m, mode)
        scale = norms.boundary_norm(reference, 2, grid)
        error = norms.boundary_norm(exact - reference, 2, grid) / scale
        checks.append(check_at_most("finite_difference", error, 1e-3))
        values["finite_difference_error"] = error
        values["truncated_series_error"] = norms.boundary_norm(
            series - reference, 2, grid) / scale
    difference = exact - dnmap.dn_derivative_series(sd2, lam, f, m,
                                                    tail=True)
    if cfg.q1 == cfg.q2:
        checks.append(Check("identical_potentials",
                            float(np.max(np.abs(difference))), 0.,
                            bool(np.all(difference == 0.))))
    values["series_difference"] = norms.boundary_norm(difference, 2, grid)

    rows = []
    for K in sorted(set([max(1, sd1.count // 4), sd1.count // 2,
                         (3 * sd1.count) // 4, sd1.count])):
        partial = dnmap.dn_derivative_series(sd1.truncated(K), lam, f, m)
        rows.append((K, norms.boundary_norm(partial, 2, grid),
                     norms.boundary_norm(partial - series, 2, grid),
                     norms.boundary_norm(partial - exact, 2, grid)))
    if m >= 4:
        cauchy = rows[-2][2] / rows[-1][1]
        checks.append(check_at_most("partial_sums_cauchy", cauchy, 1e-6))
    tables = {"dn_derivative": Table(
        "truncated derivative series",
        ["K", "norm", "distance_to_series", "distance_to_exact"], rows,
        ["lambda: {}, m: {}".format(lam, m),
         "exact adds the eigenpairs beyond K = {} through one "
         "factorization".format(sd1.count)])}
    return Outcome(tables, checks, values)


def run_low_mode(cfg, ws):
    grid = ws.grid
    sd = ws.spectrum(ws.op1, max(cfg.K, cfg.k0), cfg.trace_mode)
    f = ws.boundary_field()
    lams = [float(lam) for lam in cfg.lambdas]
    sizes = [norms.boundary_norm(
        dnmap.low_mode_contribution(sd, lam, f, cfg.k0), 2, grid)
        for lam in lams]
    slope = dnmap.decay_slope(lams, sizes)
    checks = [check_at_most("slope_minus_one", abs(slope + 1.), 0.1)]
    rows = [(lam, size, abs(lam) * size) for lam, size in zip(lams, sizes)]
    tables = {"low_mode": Table("low-mode DN contribution",
                                ["lambda", "norm", "abs_lambda_times_norm"],
                                rows, ["k0: {}".format(cfg.k0)])}
    return Outcome(tables, checks, {"slope": slope})


def _doubled(op):
    field = op.potential
    doubled = PotentialField(2. * field.values, field.descriptor, field.grid)
    return assemble_hamiltonian(op.grid, doubled)


def run_born(cfg, ws):
    mode = cfg.trace_mode
    xi, eta = ws.frequency()
    data = cfg.cgo_data
    P = isozaki.make_params(xi, eta, cfg.m)
    split = isozaki.born_decomposition(ws.op1, P, mode, data=data)
    sampled = isozaki.born_decomposition(ws.op1, P, mode, data="sampled")
    checks = [check_at_most("born_residual", split["residual"], 0.01)]
    if mode == "variational":
        checks.append(check_at_most("discrete_born_identity",
                                    split["discrete_residual"], 1e-10))
    free = isozaki.born_decomposition(ws.operator({"kind": "zero"}), P, mode,
                                      data=data)
    checks.append(Check("zero_potential_terms",
                        abs(free["fourier_term"]) + abs(free["remainder"]),
                        0., free["fourier_term"] == 0. and
                        free["remainder"] == 0.))

    # the lattice free term approaches the continuum one at O(h^2)
    refinement = []
    for N in cfg.refine_N:
        grid = build_grid(cfg.n, N)
        op = ws.operator(cfg.q1, grid)
        refined = isozaki.born_decomposition(op, P, mode, data=data)
        refinement.append((N, refined["free_term_defect"],
                           refined["residual"]))
    if len(refinement) > 1:
        slope, _ = loglog_fit([r[0] for r in refinement],
                              [r[1] for r in refinement])
        checks.append(check_at_least("refinement_order", -slope, 1.5))

    remainders = isozaki.remainder_decay(ws.op1, xi, eta, cfg.m_list, mode,
                                         cfg.threads)
    if max(remainders) > 0.:
        checks.append(Check("remainder_decreasing", remainders[-1],
                            remainders[0], strictly_decreasing(remainders)))
        doubled = isozaki.born_decomposition(_doubled(ws.op1), P, mode,
                                             data=data)
        ratio = abs(doubled["remainder"]) / abs(split["remainder"])
        checks.append(check_at_most("quadratic_scaling",
                                    abs(ratio / 4. - 1.), 0.25))

    split_rows = [(name, complex(split[name]).real, complex(split[name]).imag)
                  for name in ("lhs", "fourier_term", "free_term",
                               "continuum_free_term", "remainder")]
    tables = {
        "born_split": Table("Born split of the boundary functional",
                            ["term", "real", "imag"], split_rows,
                            ["xi: {}, m: {}".format(list(xi), cfg.m),
                             "exponential data: {}".format(data),
                             "residual with sampled exponentials: {:.3e}"
                             .format(sampled["residual"])]),
        "born_refinement": Table("free term against the continuum under "
                                 "refinement",
                                 ["N", "free_term_defect", "residual"],
                                 refinement, []),
        "remainder_decay": Table("remainder magnitude", ["m", "remainder"],
                                 list(zip(cfg.m_list, remainders)),
                                 ["sampled exponentials"]),
    }
    return Outcome(tables, checks, {"residual": split["residual"],
                                    "absolute_residual":
                                        split["absolute_residual"],
                                    "free_term_defect":
                                        split["free_term_defect"],
                                    "sampled_residual": sampled["residual"]})


def run_recover(cfg, ws):
    mode = cfg.trace_mode
    m_values = sorted(set(list(cfg.m_list) + [cfg.m]))
    reports = {}
    for m in m_values:
        reports[m] = isozaki.recover_field_diff(ws.op1, ws.op2, cfg.k_max, m,
                                                mode, cfg.threads,
                                                cfg.cgo_data)
    target = reports[cfg.m]
    values = {"error": target.error, "field_error": target.field_error}
    notes = ["m: {}".format(cfg.m),
             "exponential data: {}".format(cfg.cgo_data)]
    if cfg.m // 2 >= 2:
        extrapolated = isozaki.recover_field_diff(
            ws.op1, ws.op2, cfg.k_max, cfg.m // 2, mode, cfg.threads,
            cfg.cgo_data, richardson=True)
        values["richardson_error"] = extrapolated.error
        notes.append("Richardson from m = {} and {}: error {:.3e}".format(
            cfg.m // 2, 2 * (cfg.m // 2), extrapolated.error))
    checks = [check_at_most("coefficient_error", target.error, 0.25)]
    if len(m_values) > 1:
        checks.append(Check("error_improves_with_m",
                            reports[m_values[-1]].error,
                            reports[m_values[0]].error,
                            reports[m_values[-1]].error <
                            reports[m_values[0]].error))
    same = isozaki.recover_field_diff(ws.op1, ws.op1, cfg.k_max, cfg.m, mode,
                                      cfg.threads, cfg.cgo_data)
    checks.append(check_at_most("identical_potentials",
                                np.linalg.norm(same.field), 1e-6))
    columns = ["k{}".format(j + 1) for j in range(cfg.n)] + \
        ["re_est", "im_est", "re_true", "im_true", "abs_err"]
    tables = {"recover": Table("recovered Fourier coefficients", columns,
                               list(target.rows()), notes)}
    tables["recover_errors"] = Table(
        "recovery error per m", ["m", "coefficient_error", "field_error",
                                 "unreachable"],
        [(m, reports[m].error, reports[m].field_error,
          int(reports[m].flagged.sum())) for m in m_values], [])
    return Outcome(tables, checks, values)


def run_resolvent_bounds(cfg, ws):
    op = ws.op1
    rng = np.random.RandomState(cfg.seed)
    im_values = []
    for trial in range(cfg.trials):
        lam = rng.uniform(-50., 50.) + \
            1j * rng.choice([-1., 1.]) * rng.uniform(0.5, 20.)
        im_values.append(resolvent.check_im_bound(op, lam, 1,
                                                  cfg.seed + trial))
    # the ground state at lambda_1 + i t reaches the bound
    unshifted = ws.spectrum(op, cfg.K)
    ground = unshifted.vectors[0][:, None]
    aligned = [(t, resolvent.check_im_bound(
        op, unshifted.values[0] + 1j * t, 1, cfg.seed, fields=ground))
        for t in ALIGNED_OFFSETS]
    checks = [check_at_most("im_bound",
                            max(im_values + [v for _, v in aligned]),
                            1. + 1e-10),
              check_at_least("im_bound_attained",
                             min(v for _, v in aligned), 1. - 1e-6)]

    sd = shift_to_positive(unshifted)
    sups = [resolvent.sup_ratio(sd, m) for m in cfg.m_list]
    checks.append(Check("sup_ratio", max(s / m for s, m in
                                         zip(sups, cfg.m_list)), 1.,
                        all(s <= m for s, m in zip(sups, cfg.m_list))))
    lp = [resolvent.check_lp_bound(sd, m, cfg.trials, cfg.seed)
          for m in cfg.m_list]
    checks.append(Check("lp_bound_non_increasing", lp[-1], lp[0],
                        all(b <= a for a, b in zip(lp, lp[1:]))))
    below = [lam for lam in cfg.lambdas if lam < sd.unshifted_values()[0]]
    decay = resolvent.check_real_decay(op, below, cfg.trials, cfg.seed)

    small = ws.operator(cfg.q1, build_grid(cfg.n, 8))
    full = compute_spectrum(small, small.dimension)
    agreement = 0.
    for trial in range(cfg.trials):
        lam = rng.uniform(-50., 50.) + 1j * rng.uniform(0.5, 20.)
        f = resolvent.random_fields(small.grid, 1, cfg.seed + trial)[:, 0]
        direct = resolvent.apply_resolvent_direct(small, lam, f)
        series = resolvent.apply_resolvent_series(full, lam, f)
        agreement = max(agreement, np.linalg.norm(series - direct) /
                        np.linalg.norm(direct))
    checks.append(check_at_most("series_direct", agreement, 1e-8))

    tables = {
        "im_bound": Table("|R(lambda)| |Im lambda| over random draws",
                          ["trial", "value"],
                          list(enumerate(im_values)), []),
        "im_bound_aligned": Table("|R(lambda)| |Im lambda| with the ground "
                                  "state at lambda_1 + i t", ["t", "value"],
                                  aligned, []),
        "lp_bound": Table("resolvent ratios at tau(m)",
                          ["m", "sup_ratio", "lp_ratio"],
                          list(zip(cfg.m_list, sups, lp)), []),
        "real_decay": Table("|lambda| |R(lambda)| below the spectrum",
                            ["lambda", "value"], list(zip(below, decay)),
                            []),
    }
    return Outcome(tables, checks, {"series_direct": agreement,
                                    "lp_bound_spread": max(lp) / min(lp)})


def run_agmon(cfg, ws):
    lams = [float(lam) for lam in cfg.lambdas]
    exponents = norms.ExponentSet(cfg.n)
    checks = []
    rows = []
    for label, op in (("q1", ws.op1), ("q2", ws.op2)):
        ratios = resolvent.agmon_ratio(op, lams, cfg.trials, cfg.seed, 2)
        low = resolvent.agmon_ratio(op, lams, cfg.trials, cfg.seed,
                                    exponents.p_low)
        checks.append(check_at_most("{}_bounded".format(label), max(ratios),
                                    3.))
        checks.append(Check("{}_settles".format(label), ratios[-1],
                            max(ratios), non_increasing_after_max(ratios)))
        rows.extend((label, lam, r, s) for lam, r, s in zip(lams, ratios,
                                                            low))
    tables = {"agmon": Table("Agmon ratios", ["potential", "lambda",
                                              "ratio_p2", "ratio_p_low"],
                             rows, ["p_low: {}".format(exponents.p_low)])}
    return Outcome(tables, checks, {})


EXPERIMENTS = collections.OrderedDict([
    ("spectrum", run_spectrum),
    ("weyl", run_weyl),
    ("dn-decay", run_dn_decay),
    ("dn-derivative", run_dn_derivative),
    ("low-mode", run_low_mode),
    ("born", run_born),
    ("recover", run_recover),
    ("resolvent-bounds", run_resolvent_bounds),
    ("agmon", run_agmon),
])


def get_experiment(name):
    """
    Get an experiment function

    Args:
        name (str): experiment id, see EXPERIMENTS

    Returns:
        function: (cfg, ws) -> Outcome
    """
    if name not in EXPERIMENTS:
        raise NotImplementedError("Experiment " + name + " not implemented.")
    return EXPERIMENTS[name]
