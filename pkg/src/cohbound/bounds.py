"""Superadditivity lower bounds on powers of the total l1 coherence.

Every bound here is one instance of a single chain expansion over the
qubit ordering. At position p the block coherence of qubits p..N splits
into the single C_p and the tail T_p = C_{p+1..N}, under one of two
regimes:

  descending   k_p^d * C_p >= T_p
  ascending    C_p <= k_p^d * T_p

The amplified family keeps the cross term of the split as a
multiplicative factor, Omega_p = 1 + T_p/C_p (descending) or
Ups_p = 1 + C_p/T_p (ascending), and advances a running accumulator by
the gamma coefficient; the comparator family discards the cross terms
and uses the lambda coefficient instead. Supported regime patterns are
a descending prefix followed by ascending positions ("d"*m + "a"*rest,
with m = N-1 meaning all descending) plus the three-qubit hybrid "ad".
Other pattern strings raise UnsupportedPattern; the pattern descriptor
is the extension point for further condition families.

Singles below the zero tolerance contribute no term and no accumulator
update, and their regime condition is waived; the report lists them as
dropped positions.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field

from .coherence import CoherenceProfile, profile as state_profile
from .config import config
from .errors import (
    ArityMismatch,
    CohboundError,
    DomainError,
    InvalidM,
    NoValidParams,
    TooManyQubits,
    UnsupportedPattern,
    WrongArity,
)
from .ineq import gamma_from_kd, lambda_from_kd, powf

BOUND_IDS = (
    "Baseline4",
    "Ref29",
    "Ref30",
    "Ref31",
    "Thm1",
    "Thm2",
    "Cor1",
    "Thm3",
    "Thm4",
)
REF_IDS = ("Ref29", "Ref30", "Ref31")
AMPLIFIED_IDS = ("Thm1", "Thm2", "Cor1", "Thm3", "Thm4")


@dataclass(frozen=True)
class BoundParams:
    """Free parameters of the bound family.

    Exactly one of k (global) and kn (one value per split position) may
    be given; with neither, every k is 1. m fixes the length of the
    descending prefix; pattern spells the regimes out explicitly, one
    character ('d' or 'a') per split position. Give m or pattern, not
    both.
    """

    alpha: float
    delta: float = 1.0
    k: float | None = None
    kn: tuple | None = None
    m: int | None = None
    pattern: str | None = None

    def __post_init__(self):
        if not self.alpha >= 1.0:
            raise DomainError(f"alpha must be >= 1, got {self.alpha!r}")
        if not self.delta >= 1.0:
            raise DomainError(f"delta must be >= 1, got {self.delta!r}")
        if self.k is not None and self.kn is not None:
            raise DomainError("give either k or kn, not both")
        if self.k is not None and not 0.0 < self.k <= 1.0:
            raise DomainError(f"k must lie in (0, 1], got {self.k!r}")
        if self.kn is not None:
            kn = tuple(float(x) for x in self.kn)
            for x in kn:
                if not 0.0 < x <= 1.0:
                    raise DomainError(f"every kn entry must lie in (0, 1], got {x!r}")
            object.__setattr__(self, "kn", kn)
        if self.m is not None and self.m < 1:
            raise InvalidM(f"m must be >= 1, got {self.m!r}")
        if self.pattern is not None:
            if self.m is not None:
                raise DomainError("give either m or pattern, not both")
            if not re.fullmatch(r"[da]+", self.pattern):
                raise UnsupportedPattern(
                    f"pattern must be characters 'd'/'a', got {self.pattern!r}"
                )


@dataclass(frozen=True)
class Condition:
    """One applicability comparison with its raw operands."""

    description: str
    lhs: float
    rhs: float
    satisfied: bool


@dataclass(frozen=True)
class ConditionVerdict:
    """Aggregate applicability: the AND of all per-condition flags."""

    applicable: bool
    per_condition: tuple


@dataclass(frozen=True)
class BoundReport:
    """Evaluation record for one bound on one coherence profile."""

    bound_id: str
    params: BoundParams
    verdict: ConditionVerdict
    rhs: float
    lhs: float
    gap: float
    coefficients: dict = field(compare=False)
    dropped: tuple = ()

    @property
    def applicable(self) -> bool:
        return self.verdict.applicable

    def to_dict(self) -> dict:
        """Serializable form; field names are part of the CLI contract."""
        return {
            "bound": self.bound_id,
            "applicable": self.verdict.applicable,
            "conditions": [
                {
                    "description": c.description,
                    "lhs": c.lhs,
                    "rhs": c.rhs,
                    "satisfied": c.satisfied,
                }
                for c in self.verdict.per_condition
            ],
            "rhs": self.rhs,
            "lhs": self.lhs,
            "gap": self.gap,
            "coefficients": self.coefficients,
            "dropped": list(self.dropped),
        }


def _tail_label(p: int, n: int) -> str:
    return f"C_{p + 2}..{n}" if p + 2 < n else f"C_{n}"


def _chain(singles, tails, alpha, kds, pattern, tight, per_index):
    """Run the chain expansion; returns rhs and its audit trail.

    A zero tail at a tight ascending position has no finite cross
    factor; the accumulator becomes NaN there. Profiles of physical
    states never reach that branch because the failing condition is
    recorded first and every later single is itself zero.
    """
    n = len(singles)
    zt = config.zero_tol
    ct = config.condition_tol
    conditions = []
    dropped = []
    per_term = [0.0] * n
    omega = {}
    upsilon = {}
    factors = []
    acc = 1.0
    for p in range(n - 1):
        kd = kds[p]
        s = singles[p]
        t = tails[p]
        factor = gamma_from_kd(kd, alpha) if tight else lambda_from_kd(kd, alpha)
        factors.append(factor)
        if s < zt:
            dropped.append(p)
            conditions.append(Condition(f"C_{p + 1} ~ 0: term dropped", s, 0.0, True))
            continue
        klabel = f"k_{p + 1}^d" if per_index else "k^d"
        tlabel = _tail_label(p, n)
        if pattern[p] == "d":
            conditions.append(
                Condition(
                    f"{klabel} C_{p + 1} >= {tlabel}", kd * s, t, kd * s >= t - ct
                )
            )
            if tight:
                om = 1.0 + t / s if t >= zt else 1.0
                omega[str(p + 1)] = om
                per_term[p] = acc * om
            else:
                per_term[p] = acc
            acc *= factor
        else:
            conditions.append(
                Condition(
                    f"C_{p + 1} <= {klabel} {tlabel}", s, kd * t, s <= kd * t + ct
                )
            )
            per_term[p] = acc * factor
            if tight:
                if t >= zt:
                    up = 1.0 + s / t
                    upsilon[str(p + 1)] = up
                    acc *= up
                else:
                    acc = float("nan")
    if singles[n - 1] < zt:
        dropped.append(n - 1)
        conditions.append(Condition(f"C_{n} ~ 0: term dropped", singles[n - 1], 0.0, True))
    else:
        per_term[n - 1] = acc
    rhs = 0.0
    for p in range(n):
        c = per_term[p]
        if c == 0.0:
            continue
        sp = powf(singles[p], alpha)
        if sp != 0.0:
            rhs += c * sp
    return rhs, conditions, dropped, per_term, omega, upsilon, factors


def _need_min_qubits(profile: CoherenceProfile, bound_id: str) -> int:
    n = len(profile.singles)
    if n < 3:
        raise WrongArity(f"{bound_id} needs at least 3 qubits, got {n}")
    return n


def _need_alpha(alpha: float, floor: float, bound_id: str):
    if alpha < floor:
        raise DomainError(f"{bound_id} needs alpha >= {floor:g}, got {alpha!r}")


def _k_values(params: BoundParams, n_pos: int, bound_id: str) -> list:
    """Per-position k values before the delta exponent."""
    if params.kn is not None:
        if len(params.kn) != n_pos:
            raise ArityMismatch(
                f"{bound_id} needs {n_pos} per-position k values, got {len(params.kn)}"
            )
        return list(params.kn)
    k = params.k if params.k is not None else 1.0
    return [k] * n_pos

def _global_k(params: BoundParams, bound_id: str) -> float:
    if params.kn is not None:
        raise DomainError(f"{bound_id} takes a single global k, not kn")
    return params.k if params.k is not None else 1.0


def _auto_m(singles, tails, kds) -> int:
    """Length of the longest descending prefix under the given k values."""
    m = 0
    for p in range(len(singles) - 1):
        s = singles[p]
        if s < config.zero_tol or kds[p] * s >= tails[p] - config.condition_tol:
            m += 1
        else:
            break
    return m


def _resolve_pattern(params, n, kds, singles, tails, m_max, bound_id):
    """Turn explicit pattern, explicit m, or auto-detection into a pattern.

    m_max is N-2 for split bounds that need an ascending suffix and N-1
    for the comparator schemes, where an all-descending pattern is also
    accepted. Auto-detection takes the longest descending prefix,
    clamped to [1, m_max]; when no descending prefix exists at all and
    N = 3 the hybrid pattern "ad" is tried instead.
    """
    if params.pattern is not None:
        pat = params.pattern
        if len(pat) != n - 1:
            raise UnsupportedPattern(
                f"pattern length {len(pat)} does not match {n - 1} split positions"
            )
        if pat == "ad":
            if n != 3:
                raise UnsupportedPattern("pattern 'ad' is only defined for 3 qubits")
            return pat
        if not re.fullmatch(r"d+a*", pat):
            raise UnsupportedPattern(
                f"unsupported pattern {pat!r}: need a descending prefix "
                "('d'*m + 'a'*rest) or the 3-qubit hybrid 'ad'"
            )
        m = pat.index("a") if "a" in pat else n - 1
        if m > m_max:
            raise InvalidM(f"{bound_id} needs m in [1, {m_max}], got {m}")
        return pat
    if params.m is not None:
        if not 1 <= params.m <= m_max:
            raise InvalidM(f"{bound_id} needs m in [1, {m_max}], got {params.m}")
        return "d" * params.m + "a" * (n - 1 - params.m)
    m = _auto_m(singles, tails, kds)
    if m == 0 and n == 3:
        return "ad"
    m = min(max(m, 1), m_max)
    return "d" * m + "a" * (n - 1 - m)


def _finish(bound_id, profile, params, chain_out, coeff_names) -> BoundReport:
    rhs, conditions, dropped, per_term, omega, upsilon, factors = chain_out
    applicable = all(c.satisfied for c in conditions)
    coefficients = {}
    if coeff_names["per_index"]:
        coefficients[coeff_names["factor"] + "_n"] = list(factors)
    else:
        coefficients[coeff_names["factor"]] = factors[0] if factors else 1.0
    if coeff_names["tight"]:
        coefficients["omega"] = omega
        coefficients["upsilon"] = upsilon
    coefficients["per_term"] = list(per_term)
    lhs = powf(profile.total, params.alpha)
    return BoundReport(
        bound_id=bound_id,
        params=params,
        verdict=ConditionVerdict(applicable=applicable, per_condition=tuple(conditions)),
        rhs=rhs,
        lhs=lhs,
        gap=lhs - rhs,
        coefficients=coefficients,
        dropped=tuple(dropped),
    )


def baseline_bound(profile: CoherenceProfile, alpha: float) -> BoundReport:
    """Plain power-sum comparator: rhs = sum of C_n^alpha, no conditions."""
    _need_alpha(alpha, 1.0, "Baseline4")
    params = BoundParams(alpha=alpha)
    n = len(profile.singles)
    rhs = 0.0
    for s in profile.singles:
        sp = powf(s, alpha)
        rhs += sp
    lhs = powf(profile.total, alpha)
    return BoundReport(
        bound_id="Baseline4",
        params=params,
        verdict=ConditionVerdict(applicable=True, per_condition=()),
        rhs=rhs,
        lhs=lhs,
        gap=lhs - rhs,
        coefficients={"per_term": [1.0] * n},
        dropped=(),
    )


def ref_scheme_bound(profile: CoherenceProfile, params: BoundParams, scheme: str) -> BoundReport:
    """Comparator schemes built from the lambda coefficient.

    Ref29 fixes every k at 1 (and ignores k, kn, delta); Ref30 uses the
    raw k values (delta ignored); Ref31 uses k^delta. The pattern may
    end all-descending (m = N-1).
    """
    if scheme not in REF_IDS:
        raise DomainError(f"unknown comparator scheme {scheme!r}")
    n = _need_min_qubits(profile, scheme)
    _need_alpha(params.alpha, 1.0, scheme)
    if scheme == "Ref29":
        kds = [1.0] * (n - 1)
        per_index = False
    else:
        ks = _k_values(params, n - 1, scheme)
        if scheme == "Ref30":
            kds = ks
        else:
            kds = [powf(k, params.delta) for k in ks]
        per_index = params.kn is not None
    pattern = _resolve_pattern(params, n, kds, profile.singles, profile.tails, n - 1, scheme)
    out = _chain(profile.singles, profile.tails, params.alpha, kds, pattern, False, per_index)
    names = {"factor": "lambda", "per_index": per_index, "tight": False}
    return _finish(scheme, profile, params, out, names)


def thm1_bound(profile: CoherenceProfile, params: BoundParams) -> BoundReport:
    """All-descending chain with a global k; m and pattern are ignored."""
    n = _need_min_qubits(profile, "Thm1")
    _need_alpha(params.alpha, 2.0, "Thm1")
    k = _global_k(params, "Thm1")
    kds = [powf(k, params.delta)] * (n - 1)
    pattern = "d" * (n - 1)
    out = _chain(profile.singles, profile.tails, params.alpha, kds, pattern, True, False)
    names = {"factor": "gamma", "per_index": False, "tight": True}
    return _finish("Thm1", profile, params, out, names)


def thm2_bound(profile: CoherenceProfile, params: BoundParams) -> BoundReport:
    """Global-k chain with a descending prefix of length m in [1, N-2]."""
    n = _need_min_qubits(profile, "Thm2")
    _need_alpha(params.alpha, 2.0, "Thm2")
    k = _global_k(params, "Thm2")
    kds = [powf(k, params.delta)] * (n - 1)
    pattern = _resolve_pattern(params, n, kds, profile.singles, profile.tails, n - 2, "Thm2")
    if pattern == "ad":
        raise UnsupportedPattern("Thm2 needs a descending prefix; use Cor1 for 'ad'")
    out = _chain(profile.singles, profile.tails, params.alpha, kds, pattern, True, False)
    names = {"factor": "gamma", "per_index": False, "tight": True}
    return _finish("Thm2", profile, params, out, names)


def cor1_bound(profile: CoherenceProfile, params: BoundParams) -> BoundReport:
    """Three-qubit hybrid: ascending first split, descending second."""
    n = len(profile.singles)
    if n != 3:
        raise WrongArity(f"Cor1 is defined for exactly 3 qubits, got {n}")
    _need_alpha(params.alpha, 2.0, "Cor1")
    per_index = params.kn is not None
    ks = _k_values(params, 2, "Cor1")
    kds = [powf(k, params.delta) for k in ks]
    out = _chain(profile.singles, profile.tails, params.alpha, kds, "ad", True, per_index)
    names = {"factor": "gamma", "per_index": per_index, "tight": True}
    return _finish("Cor1", profile, params, out, names)


def thm3_bound(profile: CoherenceProfile, params: BoundParams) -> BoundReport:
    """All-descending chain with per-position k values."""
    n = _need_min_qubits(profile, "Thm3")
    _need_alpha(params.alpha, 2.0, "Thm3")
    ks = _k_values(params, n - 1, "Thm3")
    kds = [powf(k, params.delta) for k in ks]
    pattern = "d" * (n - 1)
    out = _chain(profile.singles, profile.tails, params.alpha, kds, pattern, True, True)
    names = {"factor": "gamma", "per_index": True, "tight": True}
    return _finish("Thm3", profile, params, out, names)


def thm4_bound(profile: CoherenceProfile, params: BoundParams) -> BoundReport:
    """Per-position-k chain with a descending prefix, or the 3-qubit hybrid."""
    n = _need_min_qubits(profile, "Thm4")
    _need_alpha(params.alpha, 2.0, "Thm4")
    ks = _k_values(params, n - 1, "Thm4")
    kds = [powf(k, params.delta) for k in ks]
    pattern = _resolve_pattern(params, n, kds, profile.singles, profile.tails, n - 2, "Thm4")
    out = _chain(profile.singles, profile.tails, params.alpha, kds, pattern, True, True)
    names = {"factor": "gamma", "per_index": True, "tight": True}
    return _finish("Thm4", profile, params, out, names)


def evaluate_bound(bound_id: str, profile: CoherenceProfile, params: BoundParams) -> BoundReport:
    """Dispatch a bound id to its evaluator."""
    if bound_id == "Baseline4":
        return baseline_bound(profile, params.alpha)
    if bound_id in REF_IDS:
        return ref_scheme_bound(profile, params, bound_id)
    if bound_id == "Thm1":
        return thm1_bound(profile, params)
    if bound_id == "Thm2":
        return thm2_bound(profile, params)
    if bound_id == "Cor1":
        return cor1_bound(profile, params)
    if bound_id == "Thm3":
        return thm3_bound(profile, params)
    if bound_id == "Thm4":
        return thm4_bound(profile, params)
    raise DomainError(f"unknown bound id {bound_id!r}")


def _undefined_report(bound_id, profile, params, reason) -> BoundReport:
    cond = Condition(f"not evaluated: {reason}", 0.0, 0.0, False)
    lhs = powf(profile.total, params.alpha)
    return BoundReport(
        bound_id=bound_id,
        params=params,
        verdict=ConditionVerdict(applicable=False, per_condition=(cond,)),
        rhs=0.0,
        lhs=lhs,
        gap=lhs,
        coefficients={},
        dropped=(),
    )


def safe_evaluate(bound_id: str, profile: CoherenceProfile, params: BoundParams) -> BoundReport:
    """evaluate_bound, with prerequisite failures as inapplicable reports."""
    try:
        return evaluate_bound(bound_id, profile, params)
    except CohboundError as exc:
        return _undefined_report(bound_id, profile, params, exc)


def evaluate_all(rho, ordering=None, params=None, bound_ids=BOUND_IDS) -> list:
    """Evaluate every requested bound on one state.

    Bounds whose prerequisites fail outright (wrong qubit count, alpha
    below the family floor, mismatched kn length) are reported as not
    applicable rather than raised, so the result always carries one
    report per id. Applicable reports come first, by descending rhs.
    """
    prof = state_profile(rho, ordering)
    if params is None:
        params = BoundParams(alpha=2.0)
    reports = [safe_evaluate(bound_id, prof, params) for bound_id in bound_ids]
    reports.sort(
        key=lambda r: (0, -r.rhs, r.bound_id) if r.applicable else (1, 0.0, r.bound_id)
    )
    return reports


def _boundary_ratios(profile, pattern):
    """Smallest valid k^d per split position for the given regimes.

    Returns None entries for unconstrained positions (dropped single or
    zero tail in the descending regime). Raises NoValidParams when some
    position cannot satisfy its regime for any k^d in (0, 1].
    """
    singles, tails = profile.singles, profile.tails
    zt = config.zero_tol
    ct = config.condition_tol
    out = []
    for p, regime in enumerate(pattern):
        s, t = singles[p], tails[p]
        if s < zt:
            out.append(None)
            continue
        if regime == "d":
            if t < zt:
                out.append(None)
                continue
            r = t / s
        else:
            if t < zt:
                raise NoValidParams(
                    f"position {p + 1}: ascending regime needs a nonzero tail"
                )
            r = s / t
        if r > 1.0 + ct:
            raise NoValidParams(
                f"position {p + 1}: needs k^d >= {r:.6g}, above 1"
            )
        out.append(min(r, 1.0))
    return out


def _fill(ratios):
    return [1.0 if r is None or r <= 0.0 else r for r in ratios]


def best_params(profile: CoherenceProfile, mode: str, alpha: float = 2.0, m=None) -> BoundParams:
    """Tightest valid parameters on the condition boundary, with delta = 1.

    The gamma and lambda coefficients are non-increasing in k^d, so for
    each split position the best k^d is the smallest value its regime
    condition allows; a global k takes the largest of those. Modes Thm2
    and Thm4 scan the admissible prefix lengths (and the 3-qubit hybrid
    for Thm4) and keep the parameters with the largest rhs.
    """
    n = len(profile.singles)
    if mode in ("Thm1", "Thm3", "Cor1") and n < 3:
        raise WrongArity(f"{mode} needs at least 3 qubits, got {n}")
    if mode == "Thm1":
        ratios = _boundary_ratios(profile, "d" * (n - 1))
        vals = [r for r in ratios if r is not None and r > 0.0]
        return BoundParams(alpha=alpha, k=max(vals) if vals else 1.0)
    if mode == "Thm3":
        ratios = _boundary_ratios(profile, "d" * (n - 1))
        return BoundParams(alpha=alpha, kn=tuple(_fill(ratios)))
    if mode == "Cor1":
        if n != 3:
            raise WrongArity(f"Cor1 is defined for exactly 3 qubits, got {n}")
        ratios = _boundary_ratios(profile, "ad")
        vals = [r for r in ratios if r is not None and r > 0.0]
        return BoundParams(alpha=alpha, k=max(vals) if vals else 1.0)
    if mode not in ("Thm2", "Thm4"):
        raise DomainError(f"unknown best_params mode {mode!r}")
    if n < 3:
        raise WrongArity(f"{mode} needs at least 3 qubits, got {n}")
    patterns = []
    if m is not None:
        if not 1 <= m <= n - 2:
            raise InvalidM(f"{mode} needs m in [1, {n - 2}], got {m}")
        patterns.append("d" * m + "a" * (n - 1 - m))
    else:
        patterns.extend("d" * mm + "a" * (n - 1 - mm) for mm in range(1, n - 1))
    if mode == "Thm4" and n == 3 and m is None:
        patterns.append("ad")
    best = None
    for pat in patterns:
        try:
            ratios = _boundary_ratios(profile, pat)
        except NoValidParams:
            continue
        if mode == "Thm2":
            vals = [r for r in ratios if r is not None and r > 0.0]
            cand = BoundParams(alpha=alpha, k=max(vals) if vals else 1.0, pattern=pat)
            report = thm2_bound(profile, cand)
        else:
            cand = BoundParams(alpha=alpha, kn=tuple(_fill(ratios)), pattern=pat)
            report = thm4_bound(profile, cand)
        if not report.applicable:
            continue
        if best is None or report.rhs > best[0]:
            best = (report.rhs, cand)
    if best is None:
        raise NoValidParams(f"no admissible prefix for {mode} on this profile")
    return best[1]


def best_ordering(rho, params: BoundParams, bound_id: str):
    """Exhaustive permutation search for the largest applicable rhs.

    Ties keep the lexicographically first ordering. When no ordering is
    applicable, the identity ordering's report is returned so the
    failing conditions stay visible.
    """
    prof0 = state_profile(rho)
    n = len(prof0.singles)
    if n > config.ordering_search_cap:
        raise TooManyQubits(
            f"permutation search capped at {config.ordering_search_cap} qubits, got {n}"
        )
    identity = tuple(range(n))
    best = None
    for perm in itertools.permutations(range(n)):
        prof = prof0 if perm == identity else state_profile(rho, perm)
        report = evaluate_bound(bound_id, prof, params)
        if not report.applicable:
            continue
        if best is None or report.rhs > best[1].rhs:
            best = (perm, report)
    if best is None:
        return identity, evaluate_bound(bound_id, prof0, params)
    return best
