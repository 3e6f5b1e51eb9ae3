"""Seeded randomized verification of the criteria.

Log-derivative criteria (kind t21) are tested forward: the hypothesis is made true
by construction (``F`` is the Janowski map composed with a random Schwarz
map, and ``p`` is recovered from ``F`` by quadrature), then the conclusion
is checked. The remaining statements are tested conditionally on random
subjects; trials whose hypothesis fails at resolution are vacuous and only
counted.

Every trial draws from its own stream ``default_rng([seed, trial])`` and
results are reduced in trial order, so reports do not depend on scheduling.
"""

from __future__ import annotations

import csv
import io
import json
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import analytic as an
from .analytic import AnalyticMap, SchwarzMap, make_schwarz
from .criteria import (
    CriterionKind,
    CriterionParams,
    check_implication,
    conclusion_class,
    gamma_threshold,
    hypothesis_margin_at,
)
from .errors import EvaluationError, InvalidParams, LemniError
from .regions import JanowskiDisk, Lemniscate
from .subordination import DEFAULT_GRID, DiskGrid, check_subordination, class_margin_at

REVERIFY_TOL = 1e-10
CONDITIONAL_KINDS = (
    CriterionKind.T22,
    CriterionKind.T23,
    CriterionKind.C21,
    CriterionKind.C22,
    CriterionKind.C23,
    CriterionKind.C24,
    CriterionKind.C25,
    CriterionKind.C26,
    CriterionKind.C27,
    CriterionKind.C28,
    CriterionKind.C29,
)


def default_workers():
    env = os.environ.get("LEMNI_THREADS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def _map_trials(fn, n, workers):
    if workers is None:
        workers = default_workers()
    if workers <= 1 or n <= 1:
        return [fn(i) for i in range(n)]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, range(n)))


def trial_rng(seed, trial):
    return np.random.default_rng([int(seed), int(trial)])


def _uniform_disk(rng, radius, size=None):
    r = radius * np.sqrt(rng.random(size))
    phi = 2 * np.pi * rng.random(size)
    return r * np.exp(1j * phi)


# ------------------------------------------------------------ p from F


def solve_p_map(omega: SchwarzMap, A, B, gamma) -> AnalyticMap:
    """``p = exp((1/gamma) * integral_0^z (F(t) - 1) / t dt)`` with ``F = (1 + A w)/(1 + B w)``.

    ``(F - 1)/t = (A - B) (w/t) / (1 + B w)`` is built from ``w/t`` directly,
    so the integrand has no removable singularity.
    """
    if not gamma > 0:
        raise InvalidParams(f"need gamma > 0, got {gamma}")
    integrand = an.mul(an.const(A - B), omega.over_z())
    if B != 0:
        integrand = an.div(integrand, an.add(1, an.mul(an.const(B), omega.as_map())))
    return an.exp(an.mul(an.const(1 / gamma), an.integral(integrand)))


def solve_p_from_F(omega: SchwarzMap, A, B, gamma, z):
    """Value at ``z`` of the ``p`` solving ``1 + gamma z p'/p = F``; ``p(0) = 1``."""
    return an.evaluate(solve_p_map(omega, A, B, gamma), z)


def random_schwarz(rng) -> SchwarzMap:
    rho = rng.uniform(0.3, 1.0)
    phase = np.exp(2j * np.pi * rng.random())
    n_zeros = int(rng.integers(0, 4))
    zeros = _uniform_disk(rng, 0.9, n_zeros)
    return make_schwarz(rho, phase, zeros)


# ------------------------------------------------------------------ reports


@dataclass
class TrialReport:
    kind: str
    mode: str
    params: dict
    seed: int
    trials: int
    hypothesis_true_count: int = 0
    conclusion_violations: list = field(default_factory=list)
    min_conclusion_margin: float | None = None
    argmin_trial: int | None = None
    min_hypothesis_margin: float | None = None
    aborted: list = field(default_factory=list)
    violations_are_findings: bool = False
    wall_clock_seconds: float = 0.0

    @property
    def passed(self):
        """No violations, or the run is exploratory, or violations are recorded findings."""
        return self.mode == "explore" or self.violations_are_findings or not self.conclusion_violations

    def to_dict(self, timing=True):
        d = {
            "kind": self.kind,
            "mode": self.mode,
            "params": self.params,
            "seed": self.seed,
            "trials": self.trials,
            "hypothesis_true_count": self.hypothesis_true_count,
            "conclusion_violations": self.conclusion_violations,
            "min_conclusion_margin": self.min_conclusion_margin,
            "argmin_trial": self.argmin_trial,
            "min_hypothesis_margin": self.min_hypothesis_margin,
            "aborted": self.aborted,
            "violations_are_findings": self.violations_are_findings,
            "passed": self.passed,
        }
        if timing:
            d["wall_clock_seconds"] = self.wall_clock_seconds
        return d

    def to_json(self, timing=True, indent=None):
        return json.dumps(self.to_dict(timing), sort_keys=True, indent=indent)


def _finite(x):
    return float(x) if x is not None and np.isfinite(x) else None


def make_certificate(trial, subject, description, concl, hyp_margin):
    return {
        "trial": trial,
        "subject": subject.to_json(),
        "subject_description": description,
        "witness": {"re": concl.witness.real, "im": concl.witness.imag},
        "margin": _finite(concl.min_margin),
        "hypothesis_min_margin": _finite(hyp_margin),
    }


def _collect(report, outcomes):
    best = None
    hyp_min = None
    for i, out in enumerate(outcomes):
        if "error" in out:
            report.aborted.append({"trial": i, "error": out["error"]})
            continue
        hm = out["hyp_margin"]
        hyp_min = hm if hyp_min is None else min(hyp_min, hm)
        if not out["hyp_true"]:
            continue
        report.hypothesis_true_count += 1
        if out.get("certificate"):
            report.conclusion_violations.append(out["certificate"])
        cm = out.get("concl_margin")
        if cm is not None and (best is None or cm < best):
            best, report.argmin_trial = cm, i
    report.min_conclusion_margin = _finite(best) if best is not None else None
    if best is not None and not np.isfinite(best):
        report.min_conclusion_margin = None
    report.min_hypothesis_margin = _finite(hyp_min)


# --------------------------------------------------------- forward T21


def run_forward_t21(
    A,
    B,
    c,
    gamma,
    n_trials,
    seed,
    grid: DiskGrid = DEFAULT_GRID,
    explore=False,
    check_points=1000,
    workers=None,
) -> TrialReport:
    """Forward trials: random Schwarz ``w``, ``p`` solved from ``F``, check ``p < q_c``."""
    params = CriterionParams(gamma=gamma, A=A, B=B, c=c).for_kind(CriterionKind.T21)
    if not explore and gamma < gamma_threshold(A, B, c):
        raise InvalidParams(
            f"gamma={gamma} is below the threshold {gamma_threshold(A, B, c)}; use explore mode"
        )
    janowski = JanowskiDisk(A, B) if A != B else None
    target = Lemniscate(c)
    start = time.perf_counter()

    def trial(i):
        rng = trial_rng(seed, i)
        omega = random_schwarz(rng)
        zs = _uniform_disk(rng, grid.r_max, check_points)
        w = omega(zs)
        if janowski is None:
            hyp_margin = np.inf
        else:
            hyp_margin = float(np.min(janowski.contains_with_margin((1 + A * w) / (1 + B * w))[1]))
        p = solve_p_map(omega, A, B, gamma)
        try:
            concl = check_subordination(p, target, grid)
        except EvaluationError as exc:
            return {"error": f"{type(exc).__name__}: {exc}"}
        out = {"hyp_true": hyp_margin > 0, "hyp_margin": hyp_margin, "concl_margin": concl.min_margin}
        if hyp_margin > 0 and not concl.holds_at_resolution:
            desc = f"p from F = Janowski(w), w = {omega.to_json()}"
            out["certificate"] = make_certificate(i, p, desc, concl, hyp_margin)
        return out

    outcomes = _map_trials(trial, n_trials, workers)
    report = TrialReport(
        kind="t21",
        mode="explore" if explore else "assert",
        params=params.to_dict() | {"threshold": gamma_threshold(A, B, c), "meets_threshold": params.meets_threshold},
        seed=int(seed),
        trials=int(n_trials),
    )
    _collect(report, outcomes)
    report.wall_clock_seconds = time.perf_counter() - start
    return report


# ----------------------------------------------------- conditional kinds

P_PERTURBATION = 0.2
F_PERTURBATION = 0.1


def random_p(rng):
    """``1 + sum_{j=1..4} e_j z^j`` with ``|e_j| <= 0.2``.

    An overall size factor drawn per trial spreads subjects from tiny to
    maximal perturbations, so small-image subjects are not exponentially rare.
    """
    size = rng.random()
    eps = _uniform_disk(rng, P_PERTURBATION * size, 4)
    desc = "p = 1 + " + " + ".join(f"({e:.6g}) z^{j}" for j, e in enumerate(eps, 1))
    return an.poly(np.concatenate([[1.0], eps])), desc


def random_f(rng):
    """A polynomial ``z + sum_{j=2..5} a_j z^j`` (``|a_j| <= 0.1``) or a small named family."""
    pick = rng.random()
    if pick < 0.15:
        a = complex(_uniform_disk(rng, 0.3))
        return an.moebius(a), f"moebius a={a:.6g}"
    if pick < 0.3:
        alpha = complex(_uniform_disk(rng, 0.3))
        return an.exp_scaled(alpha), f"exp_scaled alpha={alpha:.6g}"
    size = rng.random()
    a = _uniform_disk(rng, F_PERTURBATION * size, 4)
    desc = "f = z + " + " + ".join(f"({x:.6g}) z^{j}" for j, x in enumerate(a, 2))
    return an.poly(np.concatenate([[0.0, 1.0], a])), desc


def _fixed_subjects(kind, params):
    if kind.subject == "p":
        fixed = [(an.const(1.0), "p = 1")]
        if kind is CriterionKind.T22:
            fixed.append((an.q_c_composed(params.c), f"p = sqrt(1 + {params.c} z)"))
        return fixed
    return [(an.identity(), "f = z")]


def run_conditional(
    kind,
    params: CriterionParams,
    n_trials,
    seed,
    grid: DiskGrid = DEFAULT_GRID,
    explore=False,
    workers=None,
) -> TrialReport:
    """Conditional trials: a violation is a trial whose hypothesis holds at
    resolution while its conclusion fails, each carrying a certificate."""
    kind = CriterionKind.parse(kind)
    if kind not in CONDITIONAL_KINDS:
        raise InvalidParams(f"{kind.value} has no conditional harness; use the forward run")
    params = params.for_kind(kind)
    if kind.has_gamma and not explore and not params.meets_threshold:
        raise InvalidParams(
            f"gamma={params.gamma} is below the threshold {params.threshold}; use explore mode"
        )
    fixed = _fixed_subjects(kind, params)
    draw = random_p if kind.subject == "p" else random_f
    start = time.perf_counter()

    def trial(i):
        rng = trial_rng(seed, i)
        subject, desc = fixed[i] if i < len(fixed) else draw(rng)
        try:
            hyp, concl = check_implication(kind, subject, params, grid)
        except LemniError as exc:
            return {"error": f"{type(exc).__name__}: {exc}"}
        out = {"hyp_true": hyp.holds_at_resolution, "hyp_margin": hyp.min_margin}
        if concl is not None:
            out["concl_margin"] = concl.min_margin
            if hyp.holds_at_resolution and not concl.holds_at_resolution:
                out["certificate"] = make_certificate(i, subject, desc, concl, hyp.min_margin)
        return out

    outcomes = _map_trials(trial, n_trials, workers)
    pdict = params.to_dict()
    if kind.has_gamma:
        pdict |= {"threshold": params.threshold, "meets_threshold": params.meets_threshold}
    if kind in (CriterionKind.T23, CriterionKind.C29):
        pdict["half_plane_threshold"] = params.half_plane_threshold
    report = TrialReport(
        kind=kind.value,
        mode="explore" if explore else "assert",
        params=pdict,
        seed=int(seed),
        trials=int(n_trials),
        violations_are_findings=kind is CriterionKind.T23,
    )
    _collect(report, outcomes)
    report.wall_clock_seconds = time.perf_counter() - start
    return report


def run_verification(kind, params: CriterionParams, n_trials, seed, grid=DEFAULT_GRID, explore=False, workers=None):
    kind = CriterionKind.parse(kind)
    if kind is CriterionKind.T21:
        return run_forward_t21(
            params.A, params.B, params.c, params.gamma, n_trials, seed, grid, explore, workers=workers
        )
    return run_conditional(kind, params, n_trials, seed, grid, explore, workers=workers)


def reverify_certificate(cert, kind, params: CriterionParams, tol=REVERIFY_TOL):
    """Re-evaluate a violation standalone at its witness.

    Returns ``(ok, margin)``: ``ok`` when the recomputed conclusion margin has
    the recorded sign and agrees with it to ``tol``.
    """
    kind = CriterionKind.parse(kind)
    params = params.for_kind(kind)
    subject = an.from_json(cert["subject"])
    w0 = complex(cert["witness"]["re"], cert["witness"]["im"])
    spec = conclusion_class(kind, params)
    margin = class_margin_at(subject, spec, w0)
    recorded = cert["margin"]
    if recorded is None:
        return (not np.isfinite(margin) or margin <= 0), margin
    ok = (margin <= 0) == (recorded <= 0) and abs(margin - recorded) <= tol * max(1.0, abs(recorded))
    return ok, margin


def reverify_hypothesis(cert, kind, params: CriterionParams):
    """Standalone hypothesis margin of a certificate's subject at its conclusion witness."""
    subject = an.from_json(cert["subject"])
    w0 = complex(cert["witness"]["re"], cert["witness"]["im"])
    return hypothesis_margin_at(kind, subject, params, w0)


# --------------------------------------------------------------- sweeps


@dataclass
class MarginTable:
    kind: str
    params: dict
    seed: int
    trials: int
    rows: list = field(default_factory=list)

    def to_csv(self):
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["multiplier", "gamma", "min_margin", "argmin_id"])
        for r in self.rows:
            w.writerow([
                repr(r["multiplier"]),
                repr(r["gamma"]),
                "" if r["min_margin"] is None else repr(r["min_margin"]),
                "" if r["argmin_id"] is None else r["argmin_id"],
            ])
        return buf.getvalue()

    def to_dict(self):
        return {"kind": self.kind, "params": self.params, "seed": self.seed,
                "trials": self.trials, "rows": self.rows}

    def to_json(self, indent=None):
        return json.dumps(self.to_dict(), sort_keys=True, indent=indent)


def margin_sweep(
    kind,
    params: CriterionParams,
    multipliers,
    n_trials,
    seed,
    grid: DiskGrid = DEFAULT_GRID,
    workers=None,
) -> MarginTable:
    """Minimum conclusion margin over hypothesis-true trials at ``gamma = m * threshold``."""
    kind = CriterionKind.parse(kind)
    if not kind.has_gamma:
        raise InvalidParams(f"{kind.value} has no gamma parameter to sweep")
    ms = [float(m) for m in multipliers]
    if any(not (0 < m <= 4) for m in ms):
        raise InvalidParams("multipliers must lie in (0, 4]")
    params = params.for_kind(kind)
    base = params.threshold
    table = MarginTable(kind.value, params.to_dict() | {"threshold": base}, int(seed), int(n_trials))
    for m in sorted(ms):
        p = CriterionParams(gamma=m * base, A=params.A, B=params.B, c=params.c, k=params.k)
        rep = run_verification(kind, p, n_trials, seed, grid, explore=True, workers=workers)
        table.rows.append({
            "multiplier": m,
            "gamma": m * base,
            "min_margin": rep.min_conclusion_margin,
            "argmin_id": rep.argmin_trial,
            "hypothesis_true_count": rep.hypothesis_true_count,
            "violations": len(rep.conclusion_violations),
        })
    return table


__all__ = [
    "TrialReport",
    "make_certificate",
    "MarginTable",
    "solve_p_map",
    "solve_p_from_F",
    "random_schwarz",
    "random_p",
    "random_f",
    "run_forward_t21",
    "run_conditional",
    "run_verification",
    "reverify_certificate",
    "reverify_hypothesis",
    "margin_sweep",
    "trial_rng",
]
