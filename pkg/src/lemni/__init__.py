"""Toolkit for lemniscate-starlike functions.

Modules:

- :mod:`lemni.analytic`: expression trees for analytic maps, Schwarz maps
- :mod:`lemni.regions`: lemniscate, Janowski, half-plane and polygon regions
- :mod:`lemni.subordination`: grid-based containment and class verdicts
- :mod:`lemni.criteria`: criterion operators, thresholds, target regions
- :mod:`lemni.harness`: seeded forward and conditional trial runners
"""

from .analytic import SchwarzMap, eval_deriv, evaluate, make_named, make_schwarz
from .criteria import (
    CriterionKind,
    CriterionParams,
    H_func,
    L_func,
    check_implication,
    criterion_lhs,
    gamma_threshold,
    t22_target,
)
from .harness import margin_sweep, run_conditional, run_forward_t21, solve_p_from_F
from .regions import (
    HalfPlaneShifted,
    JanowskiDisk,
    Lemniscate,
    boundary_samples,
    is_convex_boundary,
    q_eval,
)
from .subordination import DiskGrid, Verdict, check_containment, check_subordination, class_membership

__version__ = "0.1.0"
