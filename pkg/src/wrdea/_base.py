"""Shared tolerances and exception types."""
from dataclasses import dataclass


@dataclass(frozen=True)
class Tolerances:
    """Numerical tolerances used across the package.

    Parameters
    ----------
    feas : float
        Primal feasibility tolerance of the LP engine, scaled by ``1 + |rhs|_inf``.
    opt : float
        Reduced-cost optimality tolerance of the LP engine.
    classification : float
        Tolerance for ``theta* == 1`` and ``slack_sum == 0`` tests.
    support : float
        An intensity ``lambda_j`` counts as positive when it exceeds this.
    sign : float
        Tolerance for the strict sign tests on the ``u_o`` bounds.
    """

    feas: float = 1e-8
    opt: float = 1e-9
    classification: float = 1e-6
    support: float = 1e-7
    sign: float = 1e-6

    def __post_init__(self):
        for name in ("feas", "opt", "classification", "support", "sign"):
            value = getattr(self, name)
            if not value > 0:
                raise ValueError(f"tolerance {name!r} must be positive, got {value!r}")


DEFAULT_TOL = Tolerances()


class WrdeaError(Exception):
    """Base class for errors raised by this package."""


class StructuralError(WrdeaError, ValueError):
    """Inconsistent dimensions, NaN data or otherwise malformed input."""


class ParseError(StructuralError):
    """A data or restriction file could not be parsed.

    ``row`` and ``column`` are 1-based file coordinates when known.
    """

    def __init__(self, message, row=None, column=None, path=None):
        self.row = row
        self.column = column
        self.path = path
        where = []
        if path is not None:
            where.append(str(path))
        if row is not None:
            where.append(f"row {row}")
        if column is not None:
            where.append(f"column {column}")
        prefix = f"{', '.join(where)}: " if where else ""
        super().__init__(prefix + message)


class ModelError(WrdeaError, RuntimeError):
    """An LP that should be solvable was not (internal consistency failure)."""


class NotWrEfficientError(WrdeaError, ValueError):
    """The multiplier model was infeasible because the point is not WR-efficient."""
