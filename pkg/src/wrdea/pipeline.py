"""Three-step RTS procedure over a whole sample.

1. Evaluate every DMU and split the sample: WR-efficient units and
   inefficient units with zero optimal slacks form the first group, the rest
   the second group.
2. First group: measure RTS at the unit itself or at its WR-projection.
3. Second group: find the maximal projection ``P_max`` and measure RTS there.
"""
from dataclasses import dataclass
from enum import Enum
import logging

import numpy as np

from ._base import DEFAULT_TOL, WrdeaError
from .envelopment import EfficiencyStatus, evaluate, radial_projection, status_of
from .reference import global_reference_set
from .rts import classify, u_bounds

logger = logging.getLogger(__name__)


class Group(str, Enum):
    GROUP1_EFFICIENT = "Group1Efficient"
    GROUP1_ZERO_SLACK = "Group1ZeroSlack"
    GROUP2 = "Group2"


@dataclass(frozen=True)
class RunOptions:
    force_grs: bool = False


@dataclass(frozen=True, eq=False)
class DmuReport:
    dmu_index: int
    label: str
    status: EfficiencyStatus = None
    group: Group = None
    theta_star: float = None
    slack_sum: float = None
    rts_point: tuple = None
    grs: object = None
    bounds: object = None
    rts: object = None
    evaluation: object = None
    error: str = None

    @property
    def ok(self):
        return self.error is None


def group_of(evaluation, tol=DEFAULT_TOL):
    if status_of(evaluation, tol) is EfficiencyStatus.WR_EFFICIENT:
        return Group.GROUP1_EFFICIENT
    if evaluation.slack_sum <= tol.classification:
        return Group.GROUP1_ZERO_SLACK
    return Group.GROUP2


def analyze_dmu(instance, wr, o, tol=DEFAULT_TOL, options=RunOptions()):
    """Full per-DMU procedure; errors propagate to the caller."""
    ev = evaluate(instance, wr, o, tol)
    status = status_of(ev, tol)
    group = group_of(ev, tol)
    grs = None
    if group is Group.GROUP2 or options.force_grs:
        grs = global_reference_set(instance, wr, ev, tol)
    if group is Group.GROUP1_EFFICIENT:
        point = (instance.x(o).copy(), instance.y(o).copy())
    elif group is Group.GROUP1_ZERO_SLACK:
        point = radial_projection(ev)
    else:
        point = (grs.p_max[0].copy(), grs.p_max[1].copy())
    bounds = u_bounds(instance, wr, point, tol)
    return DmuReport(
        dmu_index=o, label=instance.labels[o], status=status, group=group,
        theta_star=ev.theta_star, slack_sum=ev.slack_sum, rts_point=point,
        grs=grs, bounds=bounds, rts=classify(bounds, tol), evaluation=ev,
    )


def run_all(instance, wr, tol=DEFAULT_TOL, options=RunOptions()):
    """One :class:`DmuReport` per DMU in label order.

    A failure on one DMU is recorded in that report's ``error`` field and
    does not stop the others.
    """
    wr.check_pairing(instance)
    reports = []
    for o in range(instance.n):
        try:
            reports.append(analyze_dmu(instance, wr, o, tol, options))
        except (WrdeaError, np.linalg.LinAlgError) as exc:
            logger.warning("DMU %s failed: %s", instance.labels[o], exc)
            reports.append(DmuReport(dmu_index=o, label=instance.labels[o],
                                     error=f"{type(exc).__name__}: {exc}"))
    return reports
