"""Coherence values and ordered profiles on known states."""

import numpy as np
import pytest

from cohbound import (
    density_of,
    l1_coherence,
    load_state,
    make_density,
    make_pure,
    product_coherence_check,
    profile,
    random_pure,
    synthetic_profile,
    tensor_pure,
)
from cohbound.coherence import check_ordering, dephase_covariant
from cohbound.errors import InvalidPermutation

INV2 = 2.0 ** -0.5


def test_example1_profile_values(ex1_profile):
    assert ex1_profile.singles == pytest.approx((1.0, 0.8, 0.6), abs=1e-12)
    assert ex1_profile.tails == pytest.approx((1.88, 0.6), abs=1e-12)
    assert ex1_profile.total == pytest.approx(4.76, abs=1e-12)
    assert ex1_profile.ordering == (0, 1, 2)
    assert ex1_profile.n == 3


def test_example2_profile_values(ex2_profile):
    assert ex2_profile.singles == pytest.approx((0.4, 0.8, 0.8), abs=1e-12)
    assert ex2_profile.tails == pytest.approx((2.4, 0.8), abs=1e-12)
    assert ex2_profile.total == pytest.approx(4.0, abs=1e-12)


def test_ghz_and_w_profiles(data_file):
    ghz = load_state(data_file("ghz3.json"))[0]
    pg = profile(ghz)
    assert pg.singles == pytest.approx((0.0, 0.0, 0.0), abs=1e-12)
    assert pg.tails == pytest.approx((0.0, 0.0), abs=1e-12)
    assert pg.total == pytest.approx(1.0, abs=1e-12)
    w = load_state(data_file("w3.json"))[0]
    pw = profile(w)
    assert pw.singles == pytest.approx((0.0, 0.0, 0.0), abs=1e-12)
    assert pw.tails == pytest.approx((2.0 / 3.0, 0.0), abs=1e-12)
    assert pw.total == pytest.approx(2.0, abs=1e-12)


def test_diagonal_state_has_zero_coherence():
    rho = make_density(np.diag([0.7, 0.1, 0.1, 0.1]))
    assert l1_coherence(rho) == 0.0


def test_plus_state_has_unit_coherence():
    assert l1_coherence(make_pure([INV2, INV2])) == pytest.approx(1.0, abs=1e-12)


def test_pure_and_density_inputs_agree():
    state = random_pure(3, 9)
    assert l1_coherence(state) == pytest.approx(
        l1_coherence(density_of(state)), abs=1e-12
    )


def test_product_state_coherence_identity():
    rng = np.random.default_rng(17)
    for _ in range(10):
        factors = []
        state = None
        for _ in range(3):
            v = rng.standard_normal(2) + 1j * rng.standard_normal(2)
            f = make_pure(v / np.linalg.norm(v))
            factors.append(f)
            state = f if state is None else tensor_pure(state, f)
        assert profile(state).total == pytest.approx(
            product_coherence_check(factors), abs=1e-10
        )


def test_total_coherence_is_invariant_under_diagonal_phases():
    state = random_pure(3, 21)
    rng = np.random.default_rng(22)
    rotated = dephase_covariant(state, rng.uniform(0.0, 2.0 * np.pi, 8))
    assert l1_coherence(rotated) == pytest.approx(l1_coherence(state), abs=1e-12)


def test_profile_is_invariant_under_local_phases():
    # Per-qubit phases factor out of every reduced state, so the whole
    # profile is unchanged; arbitrary diagonal phases only preserve the
    # total.
    state = random_pure(3, 23)
    rng = np.random.default_rng(24)
    per_qubit = rng.uniform(0.0, 2.0 * np.pi, (3, 2))
    phases = [
        sum(per_qubit[q, (i >> (2 - q)) & 1] for q in range(3)) for i in range(8)
    ]
    rotated = dephase_covariant(state, phases)
    base, rot = profile(state), profile(rotated)
    assert rot.total == pytest.approx(base.total, abs=1e-12)
    assert rot.singles == pytest.approx(base.singles, abs=1e-12)
    assert rot.tails == pytest.approx(base.tails, abs=1e-12)


def test_dephase_covariant_phase_count():
    with pytest.raises(InvalidPermutation):
        dephase_covariant(random_pure(2, 1), [0.1, 0.2, 0.3])


def test_profile_respects_ordering(ex1_state, ex1_profile):
    prof = profile(ex1_state, (2, 0, 1))
    assert prof.ordering == (2, 0, 1)
    assert prof.singles == pytest.approx((0.6, 1.0, 0.8), abs=1e-12)
    # The first tail covers qubits {0, 1}; factor coherences 1 and 0.8.
    assert prof.tails[0] == pytest.approx(2.0 * 1.8 - 1.0, abs=1e-12)
    assert prof.tails[-1] == pytest.approx(prof.singles[-1], abs=1e-12)
    assert prof.total == pytest.approx(ex1_profile.total, abs=1e-12)


def test_check_ordering_rejects_non_permutations():
    for bad in ((0, 0, 1), (0, 1), (0, 1, 3)):
        with pytest.raises(InvalidPermutation):
            check_ordering(bad, 3)


def test_synthetic_profile_validation():
    with pytest.raises(ValueError):
        synthetic_profile((-0.1, 0.2, 0.1), (0.3, 0.1), 1.0)
    with pytest.raises(ValueError):
        synthetic_profile((0.5, 0.4, 0.3), (0.6, 0.3), 0.5)
    with pytest.raises(ValueError):
        synthetic_profile((0.5, 0.4, 0.3), (0.6, 0.2), 2.0)
    with pytest.raises(InvalidPermutation):
        synthetic_profile((0.5, 0.4, 0.3), (0.6,), 2.0)


def test_profile_is_frozen(pinned_profile):
    with pytest.raises(AttributeError):
        pinned_profile.total = 2.0
