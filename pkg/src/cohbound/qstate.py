"""Multiqubit pure states and density matrices.

Index convention used everywhere: basis index i stores the value of
qubit q in bit (n_qubits - 1 - q). Qubit 0 is therefore the leftmost
tensor factor and the most significant bit, so |q0 q1 q2> maps to index
4*q0 + 2*q1 + q2.
"""

from dataclasses import dataclass

import numpy as np

from .config import config
from .errors import (
    ArityMismatch,
    DimensionOverflow,
    DomainError,
    EmptyKeepSet,
    IndexOutOfRange,
    NonFiniteEntry,
    NonPowerOfTwoLength,
    NormalizationViolation,
    NormTooFarFromOne,
    ZeroNorm,
)
from .kernels import ptrace_kernel, spread_indices


@dataclass(frozen=True)
class PureState:
    """Normalized dense state vector. ``amps`` is read-only complex128."""

    n_qubits: int
    amps: np.ndarray

    @property
    def dim(self) -> int:
        return 1 << self.n_qubits


@dataclass(frozen=True)
class DensityMatrix:
    """Validated dense density matrix. ``mat`` is read-only complex128."""

    n_qubits: int
    mat: np.ndarray

    @property
    def dim(self) -> int:
        return 1 << self.n_qubits


@dataclass(frozen=True)
class SchmidtSpec:
    """Three-qubit family l0|000> + l1 e^{i phi}|100> + l2|101> + l3|110> + l4|111>."""

    lambdas: tuple
    phi: float = 0.0

    def __post_init__(self):
        if len(self.lambdas) != 5:
            raise ArityMismatch("schmidt spec needs exactly 5 coefficients")
        if any(l < 0 for l in self.lambdas):
            raise DomainError("schmidt coefficients must be non-negative")
        if not 0.0 <= self.phi < 2.0 * np.pi:
            raise DomainError("phi must lie in [0, 2*pi)")
        sq = sum(l * l for l in self.lambdas)
        if abs(sq - 1.0) > config.structural_tol:
            raise NormalizationViolation(
                f"sum of squared schmidt coefficients is {sq!r}, expected 1"
            )


def _freeze(arr: np.ndarray) -> np.ndarray:
    arr.setflags(write=False)
    return arr


def _qubit_count(dim: int) -> int:
    if dim < 2 or dim & (dim - 1):
        raise NonPowerOfTwoLength(f"length {dim} is not a power of two >= 2")
    return dim.bit_length() - 1


def make_pure(amplitudes) -> PureState:
    """Validate an amplitude vector and return a normalized PureState.

    The vector must already be within ``config.norm_input_tol`` of unit
    norm; it is then renormalized exactly. This keeps text round-trips
    of irrational amplitudes lossless while rejecting genuinely
    unnormalized input.
    """
    amps = np.asarray(amplitudes, dtype=np.complex128).reshape(-1).copy()
    n = _qubit_count(amps.size)
    if n > config.pure_qubit_cap:
        raise DimensionOverflow(
            f"{n} qubits exceeds the pure-state cap {config.pure_qubit_cap}"
        )
    if not (np.all(np.isfinite(amps.real)) and np.all(np.isfinite(amps.imag))):
        raise NonFiniteEntry("amplitudes contain NaN or Inf")
    norm = float(np.linalg.norm(amps))
    if norm == 0.0:
        raise ZeroNorm("amplitude vector has zero norm")
    if abs(norm - 1.0) > config.norm_input_tol:
        raise NormTooFarFromOne(
            f"norm {norm!r} deviates from 1 by more than {config.norm_input_tol}"
        )
    amps /= norm
    return PureState(n, _freeze(amps))


def make_density(entries, expect_qubits: int | None = None) -> DensityMatrix:
    """Validate a matrix as a density matrix (hermitian, unit trace)."""
    mat = np.asarray(entries, dtype=np.complex128)
    if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
        raise NonPowerOfTwoLength(f"density matrix must be square, got {mat.shape}")
    n = _qubit_count(mat.shape[0])
    if expect_qubits is not None and n != expect_qubits:
        raise ArityMismatch(f"matrix is {n} qubits, file says {expect_qubits}")
    if n > config.density_qubit_cap:
        raise DimensionOverflow(
            f"{n} qubits exceeds the density cap {config.density_qubit_cap}"
        )
    if not (np.all(np.isfinite(mat.real)) and np.all(np.isfinite(mat.imag))):
        raise NonFiniteEntry("density matrix contains NaN or Inf")
    tol = config.structural_tol
    if np.max(np.abs(mat - mat.conj().T)) > tol:
        raise DomainError("matrix is not hermitian within tolerance")
    diag = np.diagonal(mat)
    if np.min(diag.real) < -tol:
        raise DomainError("diagonal entries must be non-negative")
    tr = float(np.sum(diag.real))
    if abs(tr - 1.0) > tol:
        raise DomainError(f"trace is {tr!r}, expected 1")
    return DensityMatrix(n, _freeze(mat.copy()))


def density_of(state: PureState) -> DensityMatrix:
    """Rank-one projector |psi><psi| of a pure state."""
    mat = np.outer(state.amps, state.amps.conj())
    if state.n_qubits > config.density_qubit_cap:
        raise DimensionOverflow(
            f"{state.n_qubits} qubits exceeds the density cap "
            f"{config.density_qubit_cap}"
        )
    return DensityMatrix(state.n_qubits, _freeze(mat))


def tensor(a: DensityMatrix, b: DensityMatrix) -> DensityMatrix:
    """Tensor product; a's qubits precede (are more significant than) b's."""
    n = a.n_qubits + b.n_qubits
    if n > config.density_qubit_cap:
        raise DimensionOverflow(
            f"combined {n} qubits exceeds the density cap {config.density_qubit_cap}"
        )
    return DensityMatrix(n, _freeze(np.kron(a.mat, b.mat)))


def tensor_pure(a: PureState, b: PureState) -> PureState:
    n = a.n_qubits + b.n_qubits
    if n > config.pure_qubit_cap:
        raise DimensionOverflow(
            f"combined {n} qubits exceeds the pure-state cap {config.pure_qubit_cap}"
        )
    return PureState(n, _freeze(np.kron(a.amps, b.amps)))


def check_subset(keep, n_qubits: int) -> tuple:
    """Validate a kept-qubit subset: non-empty, in range, strictly increasing."""
    keep = tuple(int(q) for q in keep)
    if not keep:
        raise EmptyKeepSet("must keep at least one qubit")
    for q in keep:
        if not 0 <= q < n_qubits:
            raise IndexOutOfRange(f"qubit {q} outside [0, {n_qubits})")
    if any(b <= a for a, b in zip(keep, keep[1:])):
        raise DomainError(f"keep set {keep} must be strictly increasing")
    return keep


def partial_trace(rho: DensityMatrix, keep) -> DensityMatrix:
    """Reduced state over ``keep`` (strictly increasing qubit indices).

    Kept qubits retain their relative order. Keeping every qubit returns
    the input matrix unchanged.
    """
    keep = check_subset(keep, rho.n_qubits)
    if len(keep) == rho.n_qubits:
        return rho
    keep_spread, traced_spread = spread_indices(rho.n_qubits, keep)
    out = np.ascontiguousarray(ptrace_kernel(np.ascontiguousarray(rho.mat),
                                             keep_spread, traced_spread))
    return DensityMatrix(len(keep), _freeze(out))


def schmidt_state(spec: SchmidtSpec) -> PureState:
    """Build the three-qubit state from its five coefficients and phase."""
    l0, l1, l2, l3, l4 = (float(x) for x in spec.lambdas)
    amps = np.zeros(8, dtype=np.complex128)
    amps[0] = l0
    amps[4] = l1 * np.exp(1j * spec.phi)  # |100>
    amps[5] = l2                          # |101>
    amps[6] = l3                          # |110>
    amps[7] = l4                          # |111>
    return make_pure(amps)


def random_pure(n_qubits: int, seed: int) -> PureState:
    """Haar-distributed pure state: normalized iid complex Gaussians.

    Deterministic for a fixed (n_qubits, seed).
    """
    if n_qubits < 1:
        raise DomainError("need at least one qubit")
    if n_qubits > config.pure_qubit_cap:
        raise DimensionOverflow(
            f"{n_qubits} qubits exceeds the pure-state cap {config.pure_qubit_cap}"
        )
    rng = np.random.default_rng(seed)
    d = 1 << n_qubits
    re = rng.standard_normal(d)
    im = rng.standard_normal(d)
    amps = re + 1j * im
    norm = float(np.linalg.norm(amps))
    if norm == 0.0:
        raise ZeroNorm("degenerate draw")  # pragma: no cover
    return PureState(n_qubits, _freeze(amps / norm))


def purity(rho: DensityMatrix) -> float:
    return float(np.trace(rho.mat @ rho.mat).real)
