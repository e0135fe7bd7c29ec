import numpy as np
import pytest

from bzinfo import DomainError, maximally_mixed, purity, random_density, validate_state


def test_maximally_mixed_values():
    np.testing.assert_allclose(maximally_mixed(2).matrix, np.diag([0.5, 0.5]))
    rho3 = maximally_mixed(3)
    np.testing.assert_allclose(rho3.matrix, np.eye(3) / 3)
    assert purity(rho3) == pytest.approx(1 / 3, abs=1e-15)
    assert purity(maximally_mixed(4)) == pytest.approx(0.25, abs=1e-15)


def test_rank_one_is_pure():
    assert purity(random_density(3, 1, 123)) == pytest.approx(1.0, abs=1e-12)


def test_determinism():
    a = random_density(4, 4, 42)
    b = random_density(4, 4, 42)
    np.testing.assert_array_equal(a.matrix, b.matrix)


def test_seed_sweep_purity_band():
    for seed in range(50):
        p = purity(random_density(2, 2, seed))
        assert 0.5 - 1e-12 <= p <= 1 + 1e-12


def test_rank_out_of_range():
    with pytest.raises(DomainError):
        random_density(3, 0, 1)
    with pytest.raises(DomainError):
        random_density(3, 4, 1)


def test_bad_seed():
    with pytest.raises(DomainError):
        random_density(2, 1, -1)
    with pytest.raises(DomainError):
        random_density(2, 1, 2**64)


def test_validate_accepts_mixed_diagonal():
    state = validate_state(np.diag([0.5, 0.5]).astype(complex))
    assert state.dim == 2


def test_validate_rejects_negativity():
    with pytest.raises(DomainError, match="negative eigenvalue"):
        validate_state(np.diag([1.1, -0.1]).astype(complex))


def test_validate_rejects_non_hermitian():
    with pytest.raises(DomainError, match="Hermitian"):
        validate_state(np.array([[0.5, 1.0], [0.0, 0.5]], dtype=complex))


def test_validate_rejects_bad_trace():
    with pytest.raises(DomainError, match="trace"):
        validate_state(np.diag([0.6, 0.6]).astype(complex))


def test_generated_states_validate():
    for seed in range(10):
        d = 2 + seed % 5
        rank = 1 + seed % d
        state = random_density(d, rank, seed)
        validated = validate_state(state.matrix)
        np.testing.assert_array_equal(validated.matrix, state.matrix)


def test_mean_purity_band():
    # sanity band only: full-rank Ginibre states are neither pure nor maximally mixed on average
    for d in (2, 3, 4):
        mean = np.mean([purity(random_density(d, d, seed)) for seed in range(200)])
        assert 1 / d + 0.05 < mean < 1 - 0.05
