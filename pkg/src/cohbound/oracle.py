"""Brute-force references used only by tests and the verify command.

Everything here recomputes results along a deliberately naive route:
definitional double loops for coherence, straight-line transcriptions
of each bound's closed form with ** arithmetic, dense grid sweeps for
the scalar inequalities, and seeded fuzz drivers. None of it shares
arithmetic with the production evaluators, so agreement is evidence.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import permutations

import numpy as np

from . import bounds as _bounds
from .coherence import CoherenceProfile, profile as state_profile, synthetic_profile
from .config import config
from .errors import CohboundError, DomainError, NoValidParams
from .ineq import (
    dominance_check,
    lemma1_holds,
    lemma2_holds,
    ref31_ineq_holds,
    ScalarParams,
)
from .qstate import DensityMatrix, density_of, partial_trace, random_pure


@dataclass(frozen=True)
class FuzzConfig:
    """Knobs for the random-state drivers."""

    n_states: int
    n_qubits: int
    seed: int
    tolerance: float = 1e-9

    def __post_init__(self):
        if self.n_states < 1:
            raise DomainError(f"n_states must be positive, got {self.n_states!r}")
        if not 2 <= self.n_qubits <= 6:
            raise DomainError(f"n_qubits must lie in [2, 6], got {self.n_qubits!r}")
        if not self.tolerance > 0.0:
            raise DomainError(f"tolerance must be positive, got {self.tolerance!r}")


@dataclass
class VerifySummary:
    """Outcome of a verification sweep; merges associatively."""

    checks_run: int = 0
    violations: list = field(default_factory=list)
    worst_slack: float = math.inf
    rates: dict = field(default_factory=dict)

    def record(self, check_id, inputs, slack, tolerance):
        self.checks_run += 1
        if slack < self.worst_slack:
            self.worst_slack = slack
        if slack < -tolerance:
            self.violations.append((check_id, inputs, slack))

    def tally(self, bound_id, applicable):
        entry = self.rates.setdefault(bound_id, {"evaluated": 0, "applicable": 0})
        entry["evaluated"] += 1
        if applicable:
            entry["applicable"] += 1

    def merge(self, other: "VerifySummary") -> "VerifySummary":
        out = VerifySummary(
            checks_run=self.checks_run + other.checks_run,
            violations=list(self.violations) + list(other.violations),
            worst_slack=min(self.worst_slack, other.worst_slack),
        )
        for src in (self.rates, other.rates):
            for bid, entry in src.items():
                tgt = out.rates.setdefault(bid, {"evaluated": 0, "applicable": 0})
                tgt["evaluated"] += entry["evaluated"]
                tgt["applicable"] += entry["applicable"]
        return out

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_dict(self) -> dict:
        worst = self.worst_slack if self.checks_run else 0.0
        return {
            "checks_run": self.checks_run,
            "violations": [
                {"check": c, "inputs": list(i), "slack": s}
                for c, i, s in self.violations
            ],
            "worst_slack": worst,
            "rates": self.rates,
        }


def coherence_oracle(rho: DensityMatrix) -> float:
    """Definitional off-diagonal magnitude sum, plain double loop."""
    mat = rho.mat
    dim = mat.shape[0]
    total = 0.0
    for i in range(dim):
        for j in range(dim):
            if i == j:
                continue
            z = complex(mat[i, j])
            total += math.sqrt(z.real * z.real + z.imag * z.imag)
    return total


def pure_coherence_formula(amps) -> float:
    """Pair-count shortcut for pure states: (sum |a|)^2 - sum |a|^2."""
    mags = [abs(complex(a)) for a in np.asarray(amps).ravel()]
    return sum(mags) ** 2 - sum(m * m for m in mags)


def _gam(kd: float, alpha: float) -> float:
    return ((1.0 + kd) ** alpha - kd - 1.0) / kd ** alpha

def _lam(kd: float, alpha: float) -> float:
    return ((1.0 + kd) ** alpha - 1.0) / kd ** alpha


def baseline_rhs(singles, alpha) -> float:
    return sum(c ** alpha for c in singles)


def thm1_rhs(singles, tails, alpha, kd) -> float:
    """All-descending closed form with a global coefficient."""
    n = len(singles)
    g = _gam(kd, alpha)
    total = 0.0
    for i in range(n - 1):
        omega = 1.0 + tails[i] / singles[i]
        total += omega * g ** i * singles[i] ** alpha
    total += g ** (n - 1) * singles[n - 1] ** alpha
    return total


def thm2_rhs(singles, tails, alpha, kd, m) -> float:
    """Split closed form: descending prefix of length m, global coefficient."""
    n = len(singles)
    g = _gam(kd, alpha)
    total = 0.0
    for i in range(m):
        omega = 1.0 + tails[i] / singles[i]
        total += g ** i * omega * singles[i] ** alpha
    total += g ** (m + 1) * singles[m] ** alpha
    for i in range(m + 1, n - 1):
        ups = 1.0
        for j in range(m, i):
            ups *= 1.0 + singles[j] / tails[j]
        total += g ** (m + 1) * ups * singles[i] ** alpha
    ups = 1.0
    for j in range(m, n - 1):
        ups *= 1.0 + singles[j] / tails[j]
    total += g ** m * ups * singles[n - 1] ** alpha
    return total


def cor1_rhs(c1, c2, c3, c23, alpha, kd) -> float:
    """Three-qubit hybrid closed form with a global coefficient."""
    g = _gam(kd, alpha)
    return (
        (1.0 + c1 / c23) * (1.0 + c3 / c2) * c2 ** alpha
        + (1.0 + c1 / c23) * g * c3 ** alpha
        + g * c1 ** alpha
    )


def thm3_rhs(singles, tails, alpha, kds) -> float:
    """All-descending closed form with per-position coefficients."""
    n = len(singles)
    total = 0.0
    prod = 1.0
    for i in range(n - 1):
        omega = 1.0 + tails[i] / singles[i]
        total += omega * prod * singles[i] ** alpha
        prod *= _gam(kds[i], alpha)
    total += prod * singles[n - 1] ** alpha
    return total


def thm4_rhs(singles, tails, alpha, kds, m) -> float:
    """Split closed form with per-position coefficients.

    The ascending-region terms carry the descending-prefix product of
    gamma factors times the position's own gamma; the last term carries
    the prefix product times the cross factors, so that uniform
    coefficients reduce the expression to the global split form.
    """
    n = len(singles)
    gs = [_gam(kd, alpha) for kd in kds]
    prefix = 1.0
    total = 0.0
    for i in range(m):
        omega = 1.0 + tails[i] / singles[i]
        total += prefix * omega * singles[i] ** alpha
        prefix *= gs[i]
    total += prefix * gs[m] * singles[m] ** alpha
    for i in range(m + 1, n - 1):
        ups = 1.0
        for j in range(m, i):
            ups *= 1.0 + singles[j] / tails[j]
        total += prefix * gs[i] * ups * singles[i] ** alpha
    ups = 1.0
    for j in range(m, n - 1):
        ups *= 1.0 + singles[j] / tails[j]
    total += prefix * ups * singles[n - 1] ** alpha
    return total


def hybrid3_rhs(c1, c2, c3, c23, alpha, kd1, kd2) -> float:
    """Three-qubit hybrid with independent coefficients per split."""
    g1 = _gam(kd1, alpha)
    g2 = _gam(kd2, alpha)
    ups = 1.0 + c1 / c23
    return g1 * c1 ** alpha + ups * (1.0 + c3 / c2) * c2 ** alpha + ups * g2 * c3 ** alpha


def ref_rhs(singles, alpha, base, m) -> float:
    """Comparator coefficient pattern: base^(n-1), base^(m+1), base^m."""
    n = len(singles)
    total = 0.0
    for i in range(m):
        total += base ** i * singles[i] ** alpha
    for i in range(m, n - 1):
        total += base ** (m + 1) * singles[i] ** alpha
    total += base ** m * singles[n - 1] ** alpha
    return total


def ref_hybrid3_rhs(c1, c2, c3, alpha, base1, base2) -> float:
    """Comparator pattern for the three-qubit hybrid expansion."""
    return base1 * c1 ** alpha + c2 ** alpha + base2 * c3 ** alpha


def random_applicable_profile(rng, n, pattern, kds) -> CoherenceProfile:
    """Synthesize a positive profile satisfying the given regime pattern.

    Singles are drawn first; the last single and the tails are then
    placed strictly inside the regime each position demands, so the
    resulting profile is applicable by construction. The total is padded
    above the singles sum. Raw numbers only; no physical state backs it.
    """
    if len(pattern) != n - 1:
        raise DomainError(f"pattern length {len(pattern)} needs {n - 1} positions")
    singles = [rng.uniform(0.2, 1.0) for _ in range(n - 1)]
    last = pattern[n - 2]
    if last == "d":
        singles.append(rng.uniform(0.2, 1.0) * kds[n - 2] * singles[n - 2])
    else:
        singles.append(singles[n - 2] / (kds[n - 2] * rng.uniform(0.5, 1.0)))
    tails = [0.0] * (n - 1)
    tails[n - 2] = singles[n - 1]
    for p in range(n - 3, -1, -1):
        if pattern[p] == "d":
            tails[p] = rng.uniform(0.2, 1.0) * kds[p] * singles[p]
        else:
            tails[p] = singles[p] / (kds[p] * rng.uniform(0.5, 1.0))
    total = sum(singles) + rng.uniform(0.5, 2.0)
    return synthetic_profile(tuple(singles), tuple(tails), total)


def superadditivity_fuzz(cfg: FuzzConfig) -> VerifySummary:
    """Random pure states vs the unweighted coherence sum inequalities.

    Checks the singles sum against the total and, for every contiguous
    bipartition, the two block coherences against the total. All
    coherences come from the definitional double loop.
    """
    summary = VerifySummary()
    n = cfg.n_qubits
    for i in range(cfg.n_states):
        state = random_pure(n, cfg.seed + i)
        rho = density_of(state)
        total = coherence_oracle(rho)
        singles_sum = 0.0
        for q in range(n):
            singles_sum += coherence_oracle(partial_trace(rho, (q,)))
        summary.record("superadd-singles", (n, cfg.seed + i), total - singles_sum, cfg.tolerance)
        for cut in range(1, n):
            left = coherence_oracle(partial_trace(rho, tuple(range(cut))))
            right = coherence_oracle(partial_trace(rho, tuple(range(cut, n))))
            summary.record(
                f"superadd-split-{cut}", (n, cfg.seed + i), total - left - right, cfg.tolerance
            )
    return summary


_MODE_OF = {"Thm1": "Thm1", "Thm2": "Thm2", "Thm3": "Thm3", "Thm4": "Thm4", "Cor1": "Cor1"}


def _fuzz_params(prof, bound_id, alpha):
    """Parameter points to probe for one bound on one profile."""
    out = [_bounds.BoundParams(alpha=alpha)]
    mode = _MODE_OF.get(bound_id, "Thm1")
    try:
        out.append(_bounds.best_params(prof, mode, alpha=alpha))
    except (NoValidParams, CohboundError):
        pass
    return out


def bound_validity_fuzz(cfg: FuzzConfig, bound_ids=_bounds.BOUND_IDS, alphas=(2.0, 3.7)) -> VerifySummary:
    """Random states, all qubit orderings, every requested bound.

    Each bound is probed at the default parameters (k = 1) and at the
    condition-boundary parameters when they exist. Applicable reports
    must satisfy lhs >= rhs within tolerance; applicability is tallied
    per bound id.
    """
    summary = VerifySummary()
    n = cfg.n_qubits
    for i in range(cfg.n_states):
        rho = density_of(random_pure(n, cfg.seed + i))
        for perm in permutations(range(n)):
            prof = state_profile(rho, perm)
            for alpha in alphas:
                for bound_id in bound_ids:
                    for params in _fuzz_params(prof, bound_id, alpha):
                        try:
                            report = _bounds.evaluate_bound(bound_id, prof, params)
                        except CohboundError:
                            continue
                        summary.tally(bound_id, report.applicable)
                        if report.applicable:
                            summary.record(
                                f"bound-{bound_id}",
                                (n, cfg.seed + i, perm, alpha),
                                report.gap,
                                cfg.tolerance,
                            )
    return summary


def lemma_grid_verify(
    tolerance: float = 1e-12,
    self_test: bool = False,
    n_unit: int = 200,
    n_x: int = 50,
    n_k: int = 50,
    n_alpha: int = 20,
) -> VerifySummary:
    """Dense grids over the scalar inequalities behind the bounds.

    Sweeps the convexity inequality (n_unit x n_unit points), then the
    split inequality, the comparator inequality, and the coefficient
    dominance margin on n_x * n_k * n_alpha points per delta in
    {1, 2, 3}, plus the saturation endpoints where the slack must
    vanish. self_test negates the convexity slack to prove violations
    are detected.
    """
    summary = VerifySummary()
    sign = -1.0 if self_test else 1.0
    for x in np.linspace(0.0, 1.0, n_unit):
        for alpha in np.linspace(2.0, 6.0, n_unit):
            res = lemma1_holds(float(x), float(alpha))
            summary.record("lemma1", (float(x), float(alpha)), sign * res.slack, tolerance)
    deltas = (1.0, 2.0, 3.0)
    ks = np.linspace(0.02, 1.0, n_k)
    alphas = np.linspace(2.0, 6.0, n_alpha)
    for delta in deltas:
        for k in ks:
            for alpha in alphas:
                p = ScalarParams(alpha=float(alpha), k=float(k), delta=float(delta))
                kd = p.k_delta
                for x in np.linspace(0.0, kd, n_x):
                    res = lemma2_holds(float(x), p)
                    summary.record("lemma2", (float(x), float(k), float(delta), float(alpha)), res.slack, tolerance)
                    if x > 0.0:
                        res = dominance_check(float(x), p)
                        summary.record("dominance", (float(x), float(k), float(delta), float(alpha)), res.slack, tolerance)
                for sat in (0.0, kd):
                    res = lemma2_holds(float(sat), p)
                    summary.record("lemma2-saturation", (float(sat), float(k), float(delta), float(alpha)), -abs(res.slack), tolerance)
                dom = dominance_check(float(kd), p)
                summary.record("dominance-saturation", (float(kd), float(k), float(delta), float(alpha)), -abs(dom.slack), tolerance)
    alphas1 = np.linspace(1.0, 6.0, n_alpha)
    for delta in deltas:
        for k in ks:
            for alpha in alphas1:
                p = ScalarParams(alpha=float(alpha), k=float(k), delta=float(delta))
                kd = p.k_delta
                for t in np.linspace(0.0, kd, n_x):
                    res = ref31_ineq_holds(float(t), p)
                    summary.record("ineq6", (float(t), float(k), float(delta), float(alpha)), res.slack, tolerance)
                summary.record(
                    "ineq6-saturation", (float(kd), float(k), float(delta), float(alpha)),
                    -abs(ref31_ineq_holds(float(kd), p).slack), tolerance,
                )
    return summary
