"""l1-norm coherence and ordered coherence profiles.

The l1 coherence of a density matrix is the sum of the absolute values
of its off-diagonal entries in the computational product basis. A
profile fixes an ordering of the qubits and collects, for each position,
the coherence of that qubit's reduced state (the "singles") and the
coherence of the reduced state over all later positions (the "tails").
"""

import math
from dataclasses import dataclass

import numpy as np

from .config import config
from .errors import InvalidPermutation
from .kernels import abs_offdiag_sum
from .qstate import DensityMatrix, PureState, density_of, partial_trace


def _as_density(rho) -> DensityMatrix:
    if isinstance(rho, PureState):
        return density_of(rho)
    if isinstance(rho, DensityMatrix):
        return rho
    raise TypeError(f"expected a state object, got {type(rho)!r}")


def l1_coherence(rho) -> float:
    """Sum of |rho_ij| over i != j. Accepts DensityMatrix or PureState."""
    return float(abs_offdiag_sum(_as_density(rho).mat))


@dataclass(frozen=True)
class CoherenceProfile:
    """Singles, tails, and total coherence for one qubit ordering.

    ordering[p] is the original index of the qubit at position p.
    singles has one entry per position; tails[p] covers positions
    p+1 .. N-1, so tails is one shorter and its last entry equals the
    last single.
    """

    ordering: tuple
    singles: tuple
    tails: tuple
    total: float

    def __post_init__(self):
        n = len(self.ordering)
        if len(self.singles) != n or len(self.tails) != max(n - 1, 0):
            raise InvalidPermutation("profile field lengths are inconsistent")
        if any(v < -config.condition_tol for v in (*self.singles, *self.tails, self.total)):
            raise ValueError("coherences must be non-negative")
        if n >= 2 and not math.isclose(
            self.singles[-1], self.tails[-1], rel_tol=0.0, abs_tol=config.condition_tol
        ):
            raise ValueError("last tail must equal the last single")
        if self.total < sum(self.singles) - config.condition_tol:
            raise ValueError(
                "total coherence below the sum of singles; profile is not "
                "consistent with superadditivity"
            )

    @property
    def n(self) -> int:
        return len(self.ordering)


def check_ordering(ordering, n_qubits: int) -> tuple:
    ordering = tuple(int(q) for q in ordering)
    if sorted(ordering) != list(range(n_qubits)):
        raise InvalidPermutation(
            f"{ordering} is not a permutation of range({n_qubits})"
        )
    return ordering


def profile(rho, ordering=None) -> CoherenceProfile:
    """Compute the coherence profile of a state under a qubit ordering.

    Reduced states are taken with their qubits in ascending original
    index order; the l1 sum does not depend on factor order, so tails
    are well defined for any permutation.
    """
    dm = _as_density(rho)
    n = dm.n_qubits
    if ordering is None:
        ordering = tuple(range(n))
    ordering = check_ordering(ordering, n)
    singles = [l1_coherence(partial_trace(dm, (q,))) for q in ordering]
    tails = []
    for p in range(n - 1):
        rest = tuple(sorted(ordering[p + 1:]))
        if len(rest) == 1:
            tails.append(singles[p + 1])
        else:
            tails.append(l1_coherence(partial_trace(dm, rest)))
    return CoherenceProfile(ordering, tuple(singles), tuple(tails), l1_coherence(dm))


def product_coherence_check(factors) -> float:
    """Coherence a product state would have: prod(1 + C_i) - 1."""
    out = 1.0
    for f in factors:
        out *= 1.0 + l1_coherence(f)
    return out - 1.0


def synthetic_profile(singles, tails, total, ordering=None) -> CoherenceProfile:
    """Build a profile from raw numbers (no state), validated as usual."""
    singles = tuple(float(x) for x in singles)
    tails = tuple(float(x) for x in tails)
    if ordering is None:
        ordering = tuple(range(len(singles)))
    return CoherenceProfile(tuple(ordering), singles, tails, float(total))


def dephase_covariant(rho, phases) -> DensityMatrix:
    """Conjugate by diag(e^{i phase_j}); moduli of entries are unchanged."""
    dm = _as_density(rho)
    d = np.exp(1j * np.asarray(phases, dtype=np.float64))
    if d.size != dm.dim:
        raise InvalidPermutation(f"need {dm.dim} phases, got {d.size}")
    mat = (d[:, None] * dm.mat) * d.conj()[None, :]
    out = DensityMatrix(dm.n_qubits, mat)
    mat.setflags(write=False)
    return out
