"""Forward trials of the log-derivative criterion 1 + gamma z p'/p.

Each trial draws a random Schwarz map w (a scaled Blaschke product), sets
F = (1 + A w)/(1 + B w), solves 1 + gamma z p'/p = F for p by quadrature and
checks that p stays inside the lemniscate region. At the threshold gamma no
trial fails; far below it, failures appear and come with certificates.
"""

from lemni.criteria import CriterionKind, CriterionParams, gamma_threshold
from lemni.harness import reverify_certificate, run_forward_t21

for A, B, c in [(1.0, 0.0, 1.0), (1.0, 0.5, 0.5)]:
    g = gamma_threshold(A, B, c)
    rep = run_forward_t21(A, B, c, g, 50, seed=7)
    print(f"A={A} B={B} c={c} gamma={g:g}: {len(rep.conclusion_violations)} violations, "
          f"min margin {rep.min_conclusion_margin:.4f} ({rep.wall_clock_seconds:.1f}s)")

rep = run_forward_t21(1.0, 0.0, 1.0, 0.25, 50, seed=7, explore=True)
print(f"\ngamma=0.25 (exploration): {len(rep.conclusion_violations)} of 50 trials leave the region")
if rep.conclusion_violations:
    cert = rep.conclusion_violations[0]
    ok, margin = reverify_certificate(cert, CriterionKind.T21, CriterionParams(gamma=0.25))
    print(f"first certificate: trial {cert['trial']}, witness {cert['witness']}, "
          f"margin {margin:.4f}, re-verified: {ok}")
