"""Errors raised by borglev"""


class BorglevError(Exception):
    """
    Base class of every borglev error, so callers can separate them from
    numpy/scipy failures.
    """


# mesh

class GridTooSmall(BorglevError, ValueError):
    """Raised when a grid has fewer than 4 points per axis."""


class UnsupportedDim(BorglevError, ValueError):
    """Raised for dimensions other than 2 or 3."""


class BadDescriptor(BorglevError, ValueError):
    """Raised for malformed potential descriptors."""


class GridMismatch(BorglevError, ValueError):
    """Raised when two objects live on different grids."""


class ShapeMismatch(BorglevError, ValueError):
    """Raised when an array does not match the grid it is used with."""


class BadMode(BorglevError, ValueError):
    """Raised for an unknown Neumann trace mode."""


class SolveFailure(BorglevError, ArithmeticError):
    """Raised when the boundary lifting system cannot be factorized."""


# norms

class BadExponent(BorglevError, ValueError):
    """Raised for Lebesgue exponents outside [1, inf] or smoothness outside [0, 2]."""


class NonPositiveSpectrum(BorglevError, ValueError):
    """Raised when an operation needs a positive spectrum and does not get one."""


# spectrum

class ConvergenceFailure(BorglevError, ArithmeticError):
    """
    Raised when the eigensolver runs out of iterations or the returned
    pairs miss the residual tolerance.
    """


class KTooLarge(BorglevError, ValueError):
    """Raised when more eigenpairs are requested than the operator has."""


class RangeTooSmall(BorglevError, ValueError):
    """Raised when an index range is too short or exceeds the computed pairs."""


# resolvent

class NearSingular(BorglevError, ArithmeticError):
    """Raised when A - lambda I is numerically singular."""


class SpectrumHit(BorglevError, ArithmeticError):
    """Raised when a series evaluation point sits on a computed eigenvalue."""


class BadQuery(BorglevError, ValueError):
    """Raised for spectral parameters outside an operation's domain."""


# dnmap

class RangeError(BorglevError, ValueError):
    """Raised when a mode cut-off, derivative order or sweep list is out of range."""


# isozaki

class NotOrthogonal(BorglevError, ValueError):
    """Raised when eta is not a unit vector orthogonal to xi."""


class XiTooLarge(BorglevError, ValueError):
    """Raised when |xi| is zero or at least 2m, or when m < 2."""


class BranchAmbiguous(BorglevError, ValueError):
    """Raised for square roots of positive reals, which lie on the branch cut."""


# experiments and caches

class ConfigError(BorglevError, ValueError):
    """Raised for invalid experiment configurations."""


class ExperimentError(BorglevError):
    """
    Wraps a computational error with the experiment it happened in.

    Args:
        experiment (str): experiment id
        error (Exception): the original error
    """
    def __init__(self, experiment, error):
        super(ExperimentError, self).__init__(
            "experiment {}: {}: {}".format(experiment,
                                           type(error).__name__, error))
        self.experiment = experiment
        self.error = error


class CacheError(BorglevError, IOError):
    """Base class of spectral cache errors."""


class BadMagic(CacheError):
    """Raised when a file does not start with the cache magic."""


class VersionMismatch(CacheError):
    """Raised for cache files written by another format version."""


class HashMismatch(CacheError):
    """Raised when a cache was computed for a different potential or grid."""


class TruncatedCache(BadMagic):
    """Raised when a cache payload is shorter or longer than its header says."""


class BadTraceMode(CacheError):
    """Raised when a cache header names an unknown trace mode."""
