import itertools

import numpy as np
import pytest

from combwalk.combinadics import CombinationCodec, make_codec
from combwalk.errors import CapacityError, ParameterError, ValidationError
from combwalk.problems import (
    LatticeCostInstance,
    PartitionInstance,
    PortfolioInstance,
    TspInstance,
    cells_under,
    dyck_quality,
    partition_quality,
    portfolio_quality,
    quality_vector,
    random_lattice,
    random_partition,
    random_portfolio,
    random_tsp,
    tsp_quality,
)

from oracles import dyck_paths

SQUARE = np.array([[0, 0], [1, 0], [1, 1], [0, 1]], dtype=float)


def unit_square():
    d = np.linalg.norm(SQUARE[:, None] - SQUARE[None], axis=-1)
    return TspInstance(d)


def test_tsp_square_tour():
    assert tsp_quality(unit_square(), (0, 1, 2, 3)) == pytest.approx(-4)
    assert tsp_quality(unit_square(), (0, 2, 1, 3)) == pytest.approx(-2 - 2 * np.sqrt(2))


def test_three_city_tours_are_congruent():
    inst = random_tsp(3, seed=5)
    vals = {round(tsp_quality(inst, p), 12) for p in itertools.permutations(range(3))}
    assert len(vals) == 1


def test_tsp_argmax_is_shortest_tour():
    inst = unit_square()
    codec = inst.codec()
    q = quality_vector(codec, inst.quality)
    best = codec.unrank(int(np.argmax(q)))
    brute = min(
        itertools.permutations(range(4)),
        key=lambda p: sum(inst.dist[p[i], p[(i + 1) % 4]] for i in range(4)),
    )
    assert tsp_quality(inst, best) == pytest.approx(tsp_quality(inst, brute))


def test_tsp_validation():
    with pytest.raises(ParameterError):
        TspInstance(np.array([[0, 1], [2, 0]]))
    with pytest.raises(ValidationError):
        tsp_quality(unit_square(), (0, 1, 2))


def test_partition_examples():
    zero = PartitionInstance(np.zeros((6, 6)))
    assert all(partition_quality(zero, c) == 0 for c in itertools.combinations(range(6), 3))
    inst = random_partition(6, seed=2)
    for c in itertools.combinations(range(6), 3):
        comp = tuple(sorted(set(range(6)) - set(c)))
        assert partition_quality(inst, c) == pytest.approx(partition_quality(inst, comp))


def test_partition_argmax_is_min_cut():
    inst = random_partition(6, seed=11)
    q = quality_vector(inst.codec(), inst.quality)
    cuts = [
        sum(inst.weights[i, j] for i in c for j in range(6) if j not in c)
        for c in itertools.combinations(range(6), 3)
    ]
    assert q.max() == pytest.approx(-min(cuts))
    with pytest.raises(ValidationError):
        partition_quality(inst, (0, 1))
    with pytest.raises(ParameterError):
        PartitionInstance(np.zeros((5, 5)))


def test_portfolio_examples():
    inst = random_portfolio(6, 3, seed=4)
    assert portfolio_quality(inst, ()) == 0
    linear = PortfolioInstance(np.array([0.1, 0.5, 0.2]), np.eye(3), 0.0, 1)
    q = quality_vector(linear.codec(), linear.quality)
    assert linear.codec().unrank(int(np.argmax(q))) == (1,)
    with pytest.raises(ValidationError):
        portfolio_quality(inst, (0, 1, 2, 3))


def test_portfolio_argmax_matches_exhaustive():
    inst = random_portfolio(6, 3, seed=8, theta=2.0)
    codec = inst.codec()
    assert codec.size == 42
    q = quality_vector(codec, inst.quality)
    brute = max(
        (c for k in range(4) for c in itertools.combinations(range(6), k)),
        key=lambda c: sum(inst.mu[i] for i in c) - 2.0 * sum(inst.sigma[i, j] for i in c for j in c),
    )
    assert codec.unrank(int(np.argmax(q))) == brute


def test_portfolio_rejects_indefinite_covariance():
    with pytest.raises(ParameterError):
        PortfolioInstance(np.zeros(2), np.array([[1.0, 2.0], [2.0, 1.0]]), 1.0, 1)


def test_dyck_quality_examples():
    zero = LatticeCostInstance(np.zeros((3, 3)))
    assert all(dyck_quality(zero, p) == 0 for p in dyck_paths(3))
    w = np.arange(4.0).reshape(2, 2)
    inst = LatticeCostInstance(w)
    assert dyck_quality(inst, "EENN") - dyck_quality(inst, "ENEN") == pytest.approx(w[1, 0])
    assert cells_under("ENEN") == [(1, 0)]
    assert cells_under("ENENEN") == [(1, 0), (2, 0), (2, 1)]


def test_dyck_argmax_matches_exhaustive():
    inst = random_lattice(4, seed=3)
    codec = inst.codec()
    q = quality_vector(codec, inst.quality)
    paths = dyck_paths(4)
    assert len(paths) == 14
    brute = max(paths, key=lambda p: -sum(inst.weights[c] for c in cells_under(p)))
    assert codec.unrank(int(np.argmax(q))) == brute


def test_quality_vector():
    codec = make_codec("words", A=1, L=3)
    assert quality_vector(codec, lambda w: 2.5).tolist() == [2.5]
    assert np.all(quality_vector(CombinationCodec(5, 2), lambda c: 7.0) == 7.0)
    inst = random_tsp(5, seed=0)
    codec = inst.codec()
    q = quality_vector(codec, inst.quality)
    for r, tour in enumerate(itertools.permutations(range(5))):
        assert q[codec.rank(tour)] == tsp_quality(inst, tour)
    with pytest.raises(CapacityError):
        quality_vector(codec, inst.quality, max_dimension=100)
