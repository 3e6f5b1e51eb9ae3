"""Conditional trials for the criteria stated as implications.

Random subjects are drawn, the hypothesis is checked on the disk grid, and
the conclusion is checked only where the hypothesis held. The count of
hypothesis-true trials shows whether a run says anything at all: the
half-plane criteria t23 and c29 need Re(lhs) > 1 + c(1 + k/2) > 1, but their
left-hand sides equal 1 at z = 0, so no subject can ever satisfy them.
"""

from lemni.criteria import CriterionParams
from lemni.harness import run_conditional

cases = [
    ("c21", CriterionParams(gamma=4.0)),
    ("c24", CriterionParams(gamma=4.0)),
    ("c27", CriterionParams(gamma=4.0)),
    ("t22", CriterionParams(c=0.5)),
    ("t23", CriterionParams(c=1.0, k=1.0)),
    ("c29", CriterionParams(c=1.0, k=1.0)),
]
for kind, params in cases:
    rep = run_conditional(kind, params, 100, seed=7)
    margin = "n/a" if rep.min_conclusion_margin is None else f"{rep.min_conclusion_margin:.4f}"
    print(f"{kind}: hypothesis held in {rep.hypothesis_true_count:3d}/100, "
          f"violations {len(rep.conclusion_violations)}, min conclusion margin {margin}")
