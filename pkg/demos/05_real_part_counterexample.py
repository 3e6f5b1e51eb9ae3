"""A counterexample to the real-part reading with A=1, B=0.

Take f(z) = z/(1 - 0.3 z). Then z f'/f = 1/(1 - 0.3 z), and both
1 + 4(1 + z f''/f' - z f'/f) and 1 + 4(z f'/f - 1) reduce to
1 + 1.2 z/(1 - 0.3 z), whose real part is at least 1 - 1.2/1.3 > 0 on the
closed disk. So the hypothesis Re > 0 holds. Yet (z f'/f)^2 at z = 0.99 is
about 2.02, outside |w^2 - 1| < 1, and (f/z)^2 leaves |w - 1| < 1 too.

The half-plane Re w > 0 is the Janowski image for A=1, B=-1, not for
A=1, B=0, where the image is the smaller disk |w - 1| < 1. With the disk
hypothesis the same f is rejected and no counterexample arises.
"""

from lemni import analytic as an
from lemni.criteria import CriterionParams, check_implication
from lemni.harness import make_certificate, reverify_certificate

f = an.moebius(0.3)
params = CriterionParams(gamma=4.0)
for kind in ("c23", "c28", "c21", "c27"):
    hyp, concl = check_implication(kind, f, params)
    line = f"{kind}: hypothesis {hyp.status} (margin {hyp.min_margin:+.4f}), "
    line += f"conclusion {concl.status} (margin {concl.min_margin:+.4f} at {concl.witness:.3g})"
    if hyp.holds_at_resolution and not concl.holds_at_resolution:
        ok, _ = reverify_certificate(make_certificate(0, f, "moebius a=0.3", concl, hyp.min_margin), kind, params)
        line += f"; certificate re-verified: {ok}"
    print(line)
