"""Brute-force references, fuzz drivers, and the verification grids."""

import random

import pytest

from cohbound import (
    FuzzConfig,
    VerifySummary,
    bound_validity_fuzz,
    coherence_oracle,
    density_of,
    l1_coherence,
    lemma_grid_verify,
    make_pure,
    random_pure,
    superadditivity_fuzz,
)
from cohbound.errors import DomainError
from cohbound.oracle import pure_coherence_formula, random_applicable_profile
from cohbound.stateio import as_density

INV2 = 2.0 ** -0.5


def test_oracle_matches_production_coherence(ex1_state, ex2_state):
    assert coherence_oracle(as_density(ex1_state)) == pytest.approx(
        119.0 / 25.0, abs=1e-10
    )
    assert coherence_oracle(as_density(ex2_state)) == pytest.approx(4.0, abs=1e-10)
    for seed in range(5):
        rho = density_of(random_pure(3, seed))
        assert coherence_oracle(rho) == pytest.approx(l1_coherence(rho), abs=1e-10)


def test_pure_coherence_formula_agrees_with_oracle():
    for seed in range(5):
        state = random_pure(3, 40 + seed)
        assert pure_coherence_formula(state.amps) == pytest.approx(
            coherence_oracle(density_of(state)), abs=1e-10
        )


def test_bell_state_superadditivity_directly():
    rho = density_of(make_pure([INV2, 0.0, 0.0, INV2]))
    total = coherence_oracle(rho)
    assert total == pytest.approx(1.0, abs=1e-12)
    from cohbound import partial_trace

    singles = sum(coherence_oracle(partial_trace(rho, (q,))) for q in (0, 1))
    assert total >= singles - 1e-12


def test_superadditivity_fuzz_counts_and_margins():
    summary = superadditivity_fuzz(FuzzConfig(n_states=50, n_qubits=3, seed=7))
    assert summary.ok
    assert summary.checks_run == 50 * 3  # singles check plus two splits
    assert summary.worst_slack >= 0.0
    two = superadditivity_fuzz(FuzzConfig(n_states=30, n_qubits=2, seed=3))
    assert two.ok and two.checks_run == 30 * 2


def test_superadditivity_fuzz_is_deterministic():
    a = superadditivity_fuzz(FuzzConfig(n_states=20, n_qubits=3, seed=11))
    b = superadditivity_fuzz(FuzzConfig(n_states=20, n_qubits=3, seed=11))
    assert a.to_dict() == b.to_dict()


def test_merge_equals_single_longer_run():
    # Drivers index states by seed + i, so two half runs with adjacent
    # seed windows must merge into exactly the one-shot result.
    first = superadditivity_fuzz(FuzzConfig(n_states=10, n_qubits=3, seed=7))
    second = superadditivity_fuzz(FuzzConfig(n_states=10, n_qubits=3, seed=17))
    merged = first.merge(second)
    single = superadditivity_fuzz(FuzzConfig(n_states=20, n_qubits=3, seed=7))
    assert merged.to_dict() == single.to_dict()


def test_merge_accumulates_rates():
    a = bound_validity_fuzz(FuzzConfig(n_states=2, n_qubits=3, seed=1), alphas=(2.0,))
    b = bound_validity_fuzz(FuzzConfig(n_states=2, n_qubits=3, seed=3), alphas=(2.0,))
    merged = a.merge(b)
    assert merged.checks_run == a.checks_run + b.checks_run
    assert merged.worst_slack == min(a.worst_slack, b.worst_slack)
    for bid in merged.rates:
        total = a.rates.get(bid, {}).get("evaluated", 0) + b.rates.get(bid, {}).get(
            "evaluated", 0
        )
        assert merged.rates[bid]["evaluated"] == total


def test_bound_validity_fuzz_no_violations():
    summary = bound_validity_fuzz(FuzzConfig(n_states=30, n_qubits=3, seed=5))
    assert summary.ok
    assert summary.worst_slack >= 0.0
    baseline = summary.rates["Baseline4"]
    assert baseline["applicable"] == baseline["evaluated"] > 0
    assert summary.rates["Cor1"]["evaluated"] > 0


def test_bound_validity_fuzz_is_deterministic():
    a = bound_validity_fuzz(FuzzConfig(n_states=12, n_qubits=3, seed=9), alphas=(2.0,))
    b = bound_validity_fuzz(FuzzConfig(n_states=12, n_qubits=3, seed=9), alphas=(2.0,))
    assert a.to_dict() == b.to_dict()


def test_verify_summary_bookkeeping():
    s = VerifySummary()
    assert s.ok
    assert s.to_dict()["worst_slack"] == 0.0
    s.record("a", (1.0,), 0.5, 1e-9)
    s.record("b", (2.0,), -1.0, 1e-9)
    assert not s.ok
    assert s.checks_run == 2
    assert s.worst_slack == -1.0
    assert s.violations[0][0] == "b"


def test_lemma_grids_pass_small():
    summary = lemma_grid_verify(n_unit=40, n_x=6, n_k=6, n_alpha=4)
    assert summary.ok
    assert summary.worst_slack >= -1e-12


def test_lemma_grids_self_test_detects_violations():
    summary = lemma_grid_verify(self_test=True, n_unit=30, n_x=4, n_k=4, n_alpha=3)
    assert not summary.ok
    assert all(v[0] == "lemma1" for v in summary.violations)


def test_random_applicable_profile_satisfies_regimes():
    rng = random.Random(77)
    for pattern in ("dd", "da", "ad", "ddd", "dda"):
        n = len(pattern) + 1
        kds = [rng.uniform(0.4, 1.0) for _ in range(n - 1)]
        prof = random_applicable_profile(rng, n, pattern, kds)
        for p, regime in enumerate(pattern):
            s, t = prof.singles[p], prof.tails[p]
            if regime == "d":
                assert kds[p] * s >= t - 1e-9
            else:
                assert s <= kds[p] * t + 1e-9


def test_fuzz_config_validation():
    with pytest.raises(DomainError):
        FuzzConfig(n_states=0, n_qubits=3, seed=1)
    with pytest.raises(DomainError):
        FuzzConfig(n_states=5, n_qubits=1, seed=1)
    with pytest.raises(DomainError):
        FuzzConfig(n_states=5, n_qubits=7, seed=1)
    with pytest.raises(DomainError):
        FuzzConfig(n_states=5, n_qubits=3, seed=1, tolerance=0.0)
