"""Oracle behavior, query accounting, and the Grover iteration law."""
import numpy as np
import pytest

from oraclesearch import oracle
from oraclesearch import statevector as sv

SEED = 20260814


def uniform_ket(N):
    return sv.Ket(np.full(N, 1.0 / np.sqrt(N), dtype=np.complex128))


def test_oracle_flips_exactly_one_sign():
    got = oracle.apply_oracle(2, uniform_ket(4))
    assert np.allclose(got.amps, [0.5, 0.5, -0.5, 0.5])


def test_oracle_is_an_involution():
    rng = np.random.default_rng(SEED)
    raw = rng.normal(size=8) + 1j * rng.normal(size=8)
    state = sv.Ket(raw / np.linalg.norm(raw))
    assert np.array_equal(oracle.apply_oracle(5, oracle.apply_oracle(5, state)).amps, state.amps)


def test_oracle_index_bounds():
    with pytest.raises(ValueError, match="outside"):
        oracle.apply_oracle(4, uniform_ket(4))


class TestBlackBox:
    def test_counts_queries(self):
        box = oracle.BlackBox(1, 4)
        assert box.queries == 0
        box.query(uniform_ket(4))
        box.query(uniform_ket(4))
        assert box.queries == 2

    def test_query_applies_hidden_oracle(self):
        box = oracle.BlackBox(3, 4)
        got = box.query(uniform_ket(4))
        assert got.amps[3].real < 0.0
        assert box.reveal() == 3

    def test_repr_hides_the_index(self):
        assert repr(oracle.BlackBox(3, 16)) == "BlackBox(dim=16, queries=0)"

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError, match="does not match"):
            oracle.BlackBox(0, 8).query(uniform_ket(4))

    def test_validation(self):
        with pytest.raises(ValueError):
            oracle.BlackBox(4, 4)
        with pytest.raises(ValueError):
            oracle.BlackBox(0, 0)


def test_diffusion_inverts_about_the_average():
    got = oracle.diffusion(sv.basis_ket(4, 0))
    assert np.allclose(got.amps, [-0.5, 0.5, 0.5, 0.5])


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_diffusion_equals_conjugated_zero_reflection(n):
    # independent matrix: -H^n (I - 2|0><0|) H^n
    N = 1 << n
    h = np.array([[1.0, 1.0], [1.0, -1.0]]) / np.sqrt(2.0)
    hn = np.array([[1.0]])
    for _ in range(n):
        hn = np.kron(hn, h)
    reflect = np.eye(N)
    reflect[0, 0] = -1.0
    matrix = -hn @ reflect @ hn
    rng = np.random.default_rng(SEED + n)
    raw = rng.normal(size=N) + 1j * rng.normal(size=N)
    state = sv.Ket(raw / np.linalg.norm(raw))
    assert np.allclose(oracle.diffusion(state).amps, matrix @ state.amps, atol=1e-12)


def test_diffusion_needs_a_power_of_two():
    with pytest.raises(ValueError, match="power of two"):
        oracle.diffusion(sv.Ket(np.full(6, 1.0 / np.sqrt(6.0))))


class TestSuccessProbability:
    def test_perfect_at_four(self):
        assert oracle.success_probability(4, 1) == 1.0

    def test_zero_steps_is_a_uniform_guess(self):
        assert oracle.success_probability(16, 0) == pytest.approx(1.0 / 16.0, abs=1e-15)

    @pytest.mark.parametrize("N", [4, 8, 32])
    def test_matches_brute_force_matrix_powers(self, N):
        # the whole iteration rebuilt from plain matrices, no library calls
        target = N // 2
        flip = np.eye(N)
        flip[target, target] = -1.0
        diffuse = 2.0 * np.full((N, N), 1.0 / N) - np.eye(N)
        state = np.full(N, 1.0 / np.sqrt(N))
        for k in range(1, int(2 * np.sqrt(N)) + 1):
            state = diffuse @ (flip @ state)
            assert abs(state[target]) ** 2 == pytest.approx(
                oracle.success_probability(N, k), abs=1e-12
            )

    def test_validation(self):
        with pytest.raises(ValueError):
            oracle.success_probability(1, 1)
        with pytest.raises(ValueError):
            oracle.success_probability(8, -1)


class TestGroverCycle:
    def test_always_finds_the_index_at_four(self):
        rng = np.random.default_rng(SEED)
        for hidden in range(4):
            box = oracle.BlackBox(hidden, 4)
            assert oracle.grover_cycle(box, 1, rng) == hidden
            assert box.queries == 1

    def test_spends_k_queries(self):
        box = oracle.BlackBox(9, 16)
        oracle.grover_cycle(box, 3, np.random.default_rng(SEED))
        assert box.queries == 3

    def test_success_frequency(self):
        rng = np.random.default_rng(SEED)
        p = oracle.success_probability(8, 2)
        trials = 3000
        hits = sum(
            oracle.grover_cycle(oracle.BlackBox(5, 8), 2, rng) == 5 for _ in range(trials)
        )
        sigma = np.sqrt(p * (1.0 - p) / trials)
        assert abs(hits / trials - p) <= 4.0 * sigma

    def test_validation(self):
        rng = np.random.default_rng(SEED)
        with pytest.raises(ValueError, match="at least one query"):
            oracle.grover_cycle(oracle.BlackBox(0, 8), 0, rng)
        with pytest.raises(ValueError, match="power-of-two"):
            oracle.grover_cycle(oracle.BlackBox(0, 6), 1, rng)
        with pytest.raises(ValueError, match="power-of-two"):
            oracle.grover_cycle(oracle.BlackBox(0, 2), 1, rng)
