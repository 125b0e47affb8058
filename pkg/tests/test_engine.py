import numpy as np
import pytest

from combwalk.circulant import circulant_graph, complete_graph, cycle_graph, mobius_ladder
from combwalk.combinadics import CombinationCodec, PermutationCodec, SubsetCodec, WordCodec
from combwalk.engine import (
    apply_phase,
    basis_state,
    ctqw,
    dft,
    embed_object_space,
    expectation,
    idft,
    probabilities,
    uniform_state,
)
from combwalk.errors import CapacityError, DimensionError, ParameterError
from combwalk.fourier import dft_matrix

from oracles import dense_adjacency, dense_walk, dense_walk_eigh, naive_dft, random_state


def test_uniform_state():
    assert uniform_state(1).tolist() == [1]
    np.testing.assert_array_equal(uniform_state(4), [0.5] * 4)
    np.testing.assert_allclose(uniform_state(6), dft(basis_state(6, 0)), atol=1e-15)
    with pytest.raises(ParameterError):
        uniform_state(0)


def test_dft_first_column_is_uniform():
    np.testing.assert_allclose(dft(basis_state(5, 0)), np.full(5, 1 / np.sqrt(5)), atol=1e-15)


@pytest.mark.parametrize("M", list(range(1, 65)) + [97, 360])
def test_dft_matches_naive_kernel(M):
    rng = np.random.default_rng(M)
    x = random_state(M, rng)
    assert np.max(np.abs(dft(x) - naive_dft(x))) <= 1e-10
    assert np.max(np.abs(idft(x) - naive_dft(x, inverse=True))) <= 1e-10


def test_dft_round_trip_97():
    x = random_state(97, np.random.default_rng(0))
    assert np.max(np.abs(idft(dft(x)) - x)) <= 1e-12


def test_dft_matrix_is_unitary():
    F = dft_matrix(12)
    np.testing.assert_allclose(F @ F.conj().T, np.eye(12), atol=1e-13)
    x = random_state(12, np.random.default_rng(1))
    np.testing.assert_allclose(F @ x, dft(x), atol=1e-13)


def test_apply_phase():
    rng = np.random.default_rng(2)
    psi = random_state(10, rng)
    vals = rng.normal(size=10)
    np.testing.assert_array_equal(apply_phase(psi, vals, 0.0), psi)
    out = apply_phase(psi, np.full(10, 2.5), 0.3)
    np.testing.assert_allclose(out, np.exp(1j * 0.75) * psi, atol=1e-15)
    out = apply_phase(psi, vals, 1.7)
    np.testing.assert_allclose(probabilities(out), probabilities(psi), atol=1e-15)
    np.testing.assert_allclose(apply_phase(psi, vals, 1.7, sign=-1), np.exp(-1.7j * vals) * psi)
    with pytest.raises(DimensionError):
        apply_phase(psi, vals[:5], 1.0)


def test_ctqw_zero_time_is_identity():
    psi = random_state(9, np.random.default_rng(3))
    np.testing.assert_array_equal(ctqw(psi, cycle_graph(9), 0.0), psi)


def test_ctqw_single_edge():
    t = 0.83
    out = ctqw(basis_state(2, 0), complete_graph(2), t)
    np.testing.assert_allclose(out, [np.cos(t), -1j * np.sin(t)], atol=1e-15)
    # the opposite sign convention conjugates the evolution
    out = ctqw(basis_state(2, 0), complete_graph(2), t, sign=+1)
    np.testing.assert_allclose(out, [np.cos(t), 1j * np.sin(t)], atol=1e-15)


def test_ctqw_cycle_37_matches_dense_oracle():
    psi = random_state(37, np.random.default_rng(4))
    A = dense_adjacency(37, [1])
    expected = dense_walk_eigh(A, psi, 1.7)
    assert np.max(np.abs(ctqw(psi, cycle_graph(37), 1.7) - expected)) <= 1e-10


@pytest.mark.parametrize("M", [3, 8, 50, 128])
def test_ctqw_matches_expm(M):
    rng = np.random.default_rng(M)
    for g in (complete_graph(M), cycle_graph(M)):
        psi = random_state(M, rng)
        t = rng.uniform(0, 10)
        A = dense_adjacency(M, g.generators)
        assert np.max(np.abs(ctqw(psi, g, t) - dense_walk(A, psi, t))) <= 1e-10


def test_ctqw_composition_and_norm():
    g = circulant_graph(60, [1, 7, 30])
    psi = random_state(60, np.random.default_rng(5))
    a = ctqw(ctqw(psi, g, 1.1), g, 2.3)
    b = ctqw(psi, g, 3.4)
    assert np.max(np.abs(a - b)) <= 1e-10
    assert abs(np.linalg.norm(b) - 1) <= 1e-12


def test_chained_operations_drift():
    rng = np.random.default_rng(6)
    g = mobius_ladder(120)
    vals = rng.normal(size=120)
    psi = uniform_state(120)
    for i in range(100):
        psi = ctqw(psi, g, rng.uniform(0, 5)) if i % 2 else apply_phase(psi, vals, rng.uniform(0, 6))
    assert abs(np.linalg.norm(psi) - 1) < 1e-10


def test_ctqw_dimension_mismatch():
    with pytest.raises(DimensionError):
        ctqw(uniform_state(5), cycle_graph(6), 1.0)


def test_probabilities_and_expectation():
    q = np.array([1.0, 4.0, -2.0, 7.0])
    assert expectation(uniform_state(4), q) == pytest.approx(q.mean())
    assert expectation(basis_state(4, 3), q) == 7.0
    psi = random_state(33, np.random.default_rng(7))
    assert probabilities(psi).sum() == pytest.approx(1, abs=1e-12)
    with pytest.raises(DimensionError):
        expectation(psi, q)


def test_embedding_figure_domain():
    codec = SubsetCodec(4, [0, 1, 3, 4])
    g = mobius_ladder(10)
    rep = embed_object_space(codec, g, 4, t=0.9)
    assert rep.M == 10
    assert rep.block_error == 0 and rep.coupling_error == 0
    assert rep.walk_error <= 1e-10 and rep.invalid_drift <= 1e-10
    assert rep.ok
    # rows of strings with exactly two bits set carry no edges before indexing
    for x in range(16):
        if bin(x).count("1") == 2:
            assert not rep.object_adjacency[x].any()
    P = rep.permutation_matrix
    np.testing.assert_array_equal(P @ rep.object_adjacency @ P.T, rep.indexed_adjacency)


def test_embedding_identity_codec():
    rep = embed_object_space(WordCodec(2, 4), cycle_graph(16), 4)
    assert np.array_equal(rep.slots, np.arange(16))
    assert np.array_equal(rep.object_adjacency, rep.indexed_adjacency)
    assert rep.ok


def test_embedding_three_combinations_of_six():
    codec = CombinationCodec(6, 3)
    rep = embed_object_space(codec, cycle_graph(20), 6, t=2.2, seed=9)
    assert rep.walk_error <= 1e-10
    assert rep.ok


def test_embedding_capacity_errors():
    with pytest.raises(CapacityError):
        embed_object_space(CombinationCodec(6, 3), cycle_graph(20), 4, encode=lambda c: 0)
    with pytest.raises(CapacityError):
        embed_object_space(CombinationCodec(6, 3), cycle_graph(20), 13)


def test_embedding_needs_encoding_for_permutations():
    codec = PermutationCodec(3)
    with pytest.raises(NotImplementedError):
        embed_object_space(codec, cycle_graph(6), 6)
    # 3 cities x 2 bits each
    enc = lambda p: p[0] << 4 | p[1] << 2 | p[2]
    assert embed_object_space(codec, cycle_graph(6), 6, encode=enc).ok
