"""Solution-quality functions for the supported application domains.

Every quality is to be *maximised*; cost-type problems return the negated
cost so that the optimum is always the argmax.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .combinadics import (
    BoundedCombinationCodec,
    CombinationCodec,
    DomainCodec,
    DyckCodec,
    PermutationCodec,
    validate_combination,
    validate_dyck,
    validate_permutation,
)
from .errors import CapacityError, ParameterError, ValidationError

DEFAULT_MAX_DIMENSION = 1 << 24


def _square(a, name):
    a = np.asarray(a, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ParameterError(f"{name} must be a square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ParameterError(f"{name} has non-finite entries")
    return a


def _symmetric(a, name):
    a = _square(a, name)
    if not np.allclose(a, a.T, rtol=0, atol=1e-12):
        raise ParameterError(f"{name} must be symmetric")
    return a


@dataclass(frozen=True)
class TspInstance:
    dist: np.ndarray

    def __post_init__(self):
        d = _symmetric(self.dist, "distance matrix")
        if np.any(d < 0) or np.any(np.diag(d) != 0):
            raise ParameterError("distances must be nonnegative with a zero diagonal")
        object.__setattr__(self, "dist", d)

    @property
    def k(self) -> int:
        return self.dist.shape[0]

    def codec(self, method: str = "lehmer") -> PermutationCodec:
        return PermutationCodec(self.k, method)

    def quality(self, tour) -> float:
        return tsp_quality(self, tour)


def tsp_quality(inst: TspInstance, tour) -> float:
    """Negated length of the closed tour visiting ``tour`` in order."""
    tour = validate_permutation(tour, inst.k)
    nxt = tour[1:] + tour[:1]
    return -float(inst.dist[list(tour), list(nxt)].sum())


def random_tsp(k: int, seed=None, integer: bool = False, max_distance: int = 10) -> TspInstance:
    """Cities uniform in the unit square, or integer distances in ``[1, max_distance]``."""
    rng = np.random.default_rng(seed)
    if integer:
        d = rng.integers(1, max_distance + 1, size=(k, k)).astype(float)
        d = np.triu(d, 1)
        return TspInstance(d + d.T)
    pts = rng.random((k, 2))
    d = np.linalg.norm(pts[:, None, :] - pts[None, :, :], axis=-1)
    return TspInstance(d)


@dataclass(frozen=True)
class PartitionInstance:
    weights: np.ndarray

    def __post_init__(self):
        w = _symmetric(self.weights, "weight matrix")
        if np.any(np.diag(w) != 0):
            raise ParameterError("weight matrix must have a zero diagonal")
        if w.shape[0] % 2:
            raise ParameterError("graph partitioning needs an even vertex count")
        object.__setattr__(self, "weights", w)

    @property
    def n(self) -> int:
        return self.weights.shape[0]

    def codec(self) -> CombinationCodec:
        return CombinationCodec(self.n, self.n // 2)

    def quality(self, c) -> float:
        return partition_quality(self, c)


def partition_quality(inst: PartitionInstance, c) -> float:
    """Negated weight of edges crossing the bisection ``c | complement``."""
    c = validate_combination(c, inst.n, inst.n // 2)
    inside = np.zeros(inst.n, dtype=bool)
    inside[list(c)] = True
    return -float(inst.weights[np.ix_(inside, ~inside)].sum())


def random_partition(n: int, seed=None, density: float = 0.5) -> PartitionInstance:
    rng = np.random.default_rng(seed)
    w = rng.random((n, n)) * (rng.random((n, n)) < density)
    w = np.triu(w, 1)
    return PartitionInstance(w + w.T)


@dataclass(frozen=True)
class PortfolioInstance:
    mu: np.ndarray
    sigma: np.ndarray
    theta: float
    K: int

    def __post_init__(self):
        mu = np.asarray(self.mu, dtype=float)
        sigma = _symmetric(self.sigma, "covariance")
        if mu.ndim != 1 or sigma.shape[0] != mu.shape[0]:
            raise ParameterError("mu and sigma sizes disagree")
        try:
            np.linalg.cholesky(sigma + 1e-9 * np.eye(len(mu)))
        except np.linalg.LinAlgError:
            raise ParameterError("covariance is not positive semidefinite") from None
        if self.theta < 0:
            raise ParameterError("risk aversion must be nonnegative")
        if not 0 <= self.K <= len(mu):
            raise ParameterError(f"need 0 <= K <= n, got K={self.K}")
        object.__setattr__(self, "mu", mu)
        object.__setattr__(self, "sigma", sigma)

    @property
    def n(self) -> int:
        return len(self.mu)

    def codec(self) -> BoundedCombinationCodec:
        return BoundedCombinationCodec(self.n, self.K)

    def quality(self, c) -> float:
        return portfolio_quality(self, c)


def portfolio_quality(inst: PortfolioInstance, c) -> float:
    """Mean-variance utility ``mu.x - theta * x' Sigma x`` of the 0/1 selection."""
    c = validate_combination(c, inst.n)
    if len(c) > inst.K:
        raise ValidationError(f"portfolio holds {len(c)} > K={inst.K} assets")
    idx = np.asarray(c, dtype=np.intp)
    return float(inst.mu[idx].sum() - inst.theta * inst.sigma[np.ix_(idx, idx)].sum())


def random_portfolio(n: int, K: int, seed=None, theta: float = 1.0) -> PortfolioInstance:
    rng = np.random.default_rng(seed)
    mu = rng.normal(0.1, 0.05, size=n)
    f = rng.normal(size=(n, n)) * 0.1
    return PortfolioInstance(mu, f @ f.T, theta, K)


@dataclass(frozen=True)
class LatticeCostInstance:
    """Cell weights on an ``n x n`` grid; ``weights[i][j]`` is the unit cell
    with lower-left corner ``(i, j)``."""

    weights: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "weights", _square(self.weights, "cell weights"))

    @property
    def n(self) -> int:
        return self.weights.shape[0]

    def codec(self) -> DyckCodec:
        return DyckCodec(self.n)

    def quality(self, path) -> float:
        return dyck_quality(self, path)


def cells_under(path: str) -> list[tuple[int, int]]:
    """Unit cells between the x-axis and the path, as ``(column, row)``."""
    cells = []
    height = column = 0
    for step in path:
        if step == "E":
            cells.extend((column, j) for j in range(height))
            column += 1
        else:
            height += 1
    return cells


def dyck_quality(inst: LatticeCostInstance, path: str) -> float:
    """Negated total weight of the cells enclosed below the path."""
    path = validate_dyck(path, inst.n)
    cells = cells_under(path)
    if not cells:
        return 0.0
    cols, rows = zip(*cells)
    return -float(inst.weights[list(cols), list(rows)].sum())


def random_lattice(n: int, seed=None) -> LatticeCostInstance:
    return LatticeCostInstance(np.random.default_rng(seed).random((n, n)))


def quality_vector(
    codec: DomainCodec,
    oracle: Callable,
    max_dimension: int = DEFAULT_MAX_DIMENSION,
) -> np.ndarray:
    """``q[r] = oracle(codec.unrank(r))`` for every rank."""
    if codec.size > max_dimension:
        raise CapacityError(f"domain size {codec.size} exceeds cap {max_dimension}")
    return np.fromiter((oracle(obj) for obj in codec), dtype=float, count=codec.size)
