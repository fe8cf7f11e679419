"""Returns-to-scale measurement in DEA under homogeneous weight restrictions."""
from ._base import (
    DEFAULT_TOL, ModelError, NotWrEfficientError, ParseError, StructuralError, Tolerances,
    WrdeaError)
from .data import (
    DeaInstance, RestrictionSpec, Side, WeightRestrictions, compile_restrictions,
    decompile_restrictions)
from .envelopment import EfficiencyStatus, WrEvaluation, evaluate, evaluate_point, status_of
from .estimator import WRReturnsToScale
from .io import parse_dataset, parse_restrictions, read_report, write_report
from .lp import LpProblem, LpSolution, LpStatus, Sense, solve_lp
from .pipeline import DmuReport, Group, RunOptions, analyze_dmu, run_all
from .reference import GlobalReferenceSet, global_reference_set
from .rts import RtsBounds, RtsClass, classify, u_bounds

__version__ = "0.1.0"

__all__ = [
    "DEFAULT_TOL", "ModelError", "NotWrEfficientError", "ParseError", "StructuralError",
    "Tolerances", "WrdeaError", "DeaInstance", "RestrictionSpec", "Side", "WeightRestrictions",
    "compile_restrictions", "decompile_restrictions", "EfficiencyStatus", "WrEvaluation",
    "evaluate", "evaluate_point", "status_of", "WRReturnsToScale", "parse_dataset",
    "parse_restrictions", "read_report", "write_report", "LpProblem", "LpSolution", "LpStatus",
    "Sense", "solve_lp", "DmuReport", "Group", "RunOptions", "analyze_dmu", "run_all",
    "GlobalReferenceSet", "global_reference_set", "RtsBounds", "RtsClass", "classify",
    "u_bounds",
]
