"""Scalar inequality kernels behind the bound coefficients.

Every check returns a signed slack (lhs - rhs of the inequality) so
callers can assert quantitative margins; ``holds`` is just
slack >= -config.slack_tol.

Powers use binary exponentiation for integer exponents and exp/log
otherwise. The discipline is fixed so that independent ports agree to
1e-12 on the verification grids.
"""

import math
import warnings
from dataclasses import dataclass

from .config import config
from .errors import DomainError


def powf(base: float, exponent: float) -> float:
    """base**exponent for base >= 0 with a deterministic integer fast path."""
    if base < 0.0:
        raise DomainError(f"negative base {base!r}")
    if base == 0.0:
        if exponent > 0:
            return 0.0
        raise DomainError("0 raised to a non-positive power")
    r = round(exponent)
    if exponent == r and 0 <= r <= 512:
        out = 1.0
        b = base
        e = int(r)
        while e:
            if e & 1:
                out *= b
            b *= b
            e >>= 1
        return out
    return math.exp(exponent * math.log(base))


@dataclass(frozen=True)
class ScalarParams:
    """Exponent alpha, deformation k in (0, 1], and power delta >= 1."""

    alpha: float
    k: float = 1.0
    delta: float = 1.0

    def __post_init__(self):
        if not (math.isfinite(self.alpha) and self.alpha >= 1.0):
            raise DomainError(f"alpha must be >= 1, got {self.alpha!r}")
        if not (math.isfinite(self.k) and 0.0 < self.k <= 1.0):
            raise DomainError(f"k must lie in (0, 1], got {self.k!r}")
        if not (math.isfinite(self.delta) and self.delta >= 1.0):
            raise DomainError(f"delta must be >= 1, got {self.delta!r}")

    @property
    def k_delta(self) -> float:
        return powf(self.k, self.delta)


@dataclass(frozen=True)
class SlackResult:
    slack: float
    holds: bool


def _result(slack: float) -> SlackResult:
    return SlackResult(slack, slack >= -config.slack_tol)


def _need_alpha2(alpha: float):
    if alpha < 2.0:
        raise DomainError(f"alpha must be >= 2 here, got {alpha!r}")


def gamma_from_kd(kd: float, alpha: float) -> float:
    """gamma coefficient as a function of k^delta directly."""
    _need_alpha2(alpha)
    if not 0.0 < kd <= 1.0:
        raise DomainError(f"k^delta must lie in (0, 1], got {kd!r}")
    return (powf(1.0 + kd, alpha) - kd - 1.0) / powf(kd, alpha)


def lambda_from_kd(kd: float, alpha: float) -> float:
    """comparator coefficient as a function of k^delta directly."""
    if alpha < 1.0:
        raise DomainError(f"alpha must be >= 1, got {alpha!r}")
    if not 0.0 < kd <= 1.0:
        raise DomainError(f"k^delta must lie in (0, 1], got {kd!r}")
    return (powf(1.0 + kd, alpha) - 1.0) / powf(kd, alpha)


def gamma_coeff(p: ScalarParams) -> float:
    """((1+k^d)^a - k^d - 1) / k^(d a): the amplified coefficient.

    Monotone non-increasing in k^delta for fixed alpha >= 2.
    """
    return gamma_from_kd(p.k_delta, p.alpha)


def lambda_coeff(p: ScalarParams) -> float:
    """((1+k^d)^a - 1) / k^(d a): the comparator coefficient (alpha >= 1)."""
    return lambda_from_kd(p.k_delta, p.alpha)


def lemma1_holds(x: float, alpha: float) -> SlackResult:
    """(1+x)^(a-1) >= 1 + (a-1)x on x in [0, 1], alpha >= 2."""
    _need_alpha2(alpha)
    if not 0.0 <= x <= 1.0:
        raise DomainError(f"x must lie in [0, 1], got {x!r}")
    return _result(powf(1.0 + x, alpha - 1.0) - 1.0 - (alpha - 1.0) * x)


def lemma2_holds(x: float, p: ScalarParams) -> SlackResult:
    """(1+x)^a >= 1 + x + Gamma x^a on 0 <= x <= k^delta."""
    _need_alpha2(p.alpha)
    kd = p.k_delta
    if x < 0.0 or x > kd + config.slack_tol:
        raise DomainError(f"x={x!r} outside [0, k^delta={kd!r}]")
    g = gamma_coeff(p)
    return _result(powf(1.0 + x, p.alpha) - 1.0 - x - g * powf(x, p.alpha))


def ref31_ineq_holds(t: float, p: ScalarParams) -> SlackResult:
    """(1+t)^a >= 1 + Lambda t^a, checked on t in [0, k^delta].

    The inequality fails for t above k^delta, so a RuntimeWarning is
    emitted there and the slack is still reported.
    """
    if not 0.0 <= t <= 1.0:
        raise DomainError(f"t must lie in [0, 1], got {t!r}")
    kd = p.k_delta
    if t > kd + config.slack_tol:
        warnings.warn(
            f"t={t!r} exceeds k^delta={kd!r}; the comparator inequality is "
            "only guaranteed up to k^delta",
            RuntimeWarning,
            stacklevel=2,
        )
    lam = lambda_coeff(p)
    return _result(powf(1.0 + t, p.alpha) - 1.0 - lam * powf(t, p.alpha))


def dominance_check(x: float, p: ScalarParams) -> SlackResult:
    """Margin x + Gamma x^a - Lambda x^a, non-negative on 0 < x <= k^delta.

    Positive margin means the amplified coefficient beats the comparator
    at that expansion ratio. Reported, never asserted against states.
    """
    _need_alpha2(p.alpha)
    kd = p.k_delta
    if not 0.0 < x <= kd + config.slack_tol:
        raise DomainError(f"x={x!r} outside (0, k^delta={kd!r}]")
    xa = powf(x, p.alpha)
    return _result(x + gamma_coeff(p) * xa - lambda_coeff(p) * xa)


def coeff_gap_identity(p: ScalarParams) -> float:
    """lambda_coeff - gamma_coeff, analytically k^(delta (1-alpha))."""
    return lambda_coeff(p) - gamma_coeff(p)
