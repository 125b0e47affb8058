"""Amplitude amplification over an indexed domain of arbitrary size ``M``.

The diffusion step is built from the size-``M`` Fourier transform rather
than Hadamards, and the oracle marks indices by un-ranking them and testing
the object, so only ``M`` amplitudes are ever stored.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .engine import dft, idft, probabilities, uniform_state
from .errors import DimensionError, NoSolutionError, ParameterError


@dataclass
class SearchSpec:
    codec: object
    predicate: Callable
    k: int | None = None

    def __post_init__(self):
        self.marked = np.fromiter(
            (bool(self.predicate(obj)) for obj in self.codec), dtype=bool, count=self.codec.size
        )
        counted = int(self.marked.sum())
        if self.k is not None and self.k != counted:
            raise ParameterError(f"predicate marks {counted} objects, spec says k={self.k}")
        self.k = counted

    @property
    def M(self) -> int:
        return self.codec.size


def grover_iteration(state, marked) -> np.ndarray:
    """One step of ``-F S_0 F^-1 S_f`` with ``S_f`` negating ``marked`` indices."""
    state = np.asarray(state, dtype=complex)
    marked = np.asarray(marked, dtype=bool)
    if marked.shape != state.shape:
        raise DimensionError(f"marked mask has shape {marked.shape}, state {state.shape}")
    psi = np.where(marked, -state, state)
    psi = idft(psi)
    psi[0] = -psi[0]
    psi = dft(psi)
    return -psi


def rotation_angle(M: int, k: int) -> float:
    return math.asin(math.sqrt(k / M))


def success_probability(M: int, k: int, iterations: int) -> float:
    """``sin^2((2j+1) theta)`` with ``sin(theta) = sqrt(k/M)``."""
    return math.sin((2 * iterations + 1) * rotation_angle(M, k)) ** 2


def optimal_iterations(M: int, k: int) -> int:
    if k == 0:
        raise NoSolutionError("nothing is marked")
    if not 1 <= k <= M:
        raise ParameterError(f"need 1 <= k <= M, got k={k}, M={M}")
    theta = rotation_angle(M, k)
    return max(0, round(math.pi / (4 * theta) - 0.5))


@dataclass
class GroverResult:
    M: int
    k: int
    iterations: int
    predicted_success: float
    trajectory: list[float]
    sample_index: int
    sample: object
    sample_marked: bool

    def to_dict(self, codec=None) -> dict:
        obj = codec.format(self.sample) if codec is not None else str(self.sample)
        return {
            "M": self.M,
            "k": self.k,
            "iterations": self.iterations,
            "predicted_success": self.predicted_success,
            "measured_index": self.sample_index,
            "measured_object": obj,
            "measured_marked": self.sample_marked,
            "marked_probability": self.trajectory,
        }


def sample_index(dist, rng) -> int:
    """Inverse-CDF draw from a probability vector."""
    cdf = np.cumsum(dist)
    return int(min(np.searchsorted(cdf, rng.random() * cdf[-1], side="right"), len(cdf) - 1))


def grover_search(spec: SearchSpec, seed=None, iterations: int | None = None) -> GroverResult:
    """Run ``optimal_iterations`` rounds from the uniform state and measure once.

    ``trajectory[j]`` is the marked-subspace probability after ``j`` rounds.
    """
    M, k = spec.M, spec.k
    r = optimal_iterations(M, k) if iterations is None else iterations
    psi = uniform_state(M)
    trajectory = [float(probabilities(psi)[spec.marked].sum())]
    for _ in range(r):
        psi = grover_iteration(psi, spec.marked)
        trajectory.append(float(probabilities(psi)[spec.marked].sum()))
    idx = sample_index(probabilities(psi), np.random.default_rng(seed))
    return GroverResult(
        M=M,
        k=k,
        iterations=r,
        predicted_success=success_probability(M, k, r),
        trajectory=trajectory,
        sample_index=idx,
        sample=spec.codec.unrank(idx),
        sample_marked=bool(spec.marked[idx]),
    )
