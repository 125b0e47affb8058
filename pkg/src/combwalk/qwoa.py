"""Variational quantum-walk optimisation over an indexed domain.

One layer applies the quality phase ``exp(i*gamma*Q)`` followed by a walk
``exp(-i*t*C)`` on a circulant graph; ``p`` layers act on the uniform
superposition and the parameters are tuned to maximise ``<Q>``.
"""

from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
from scipy.optimize import minimize

from .circulant import CirculantGraph
from .engine import apply_phase, ctqw, expectation, probabilities, uniform_state
from .errors import DimensionError, ParameterError

METHODS = ("nelder-mead", "powell", "random")
GAMMA_RANGE = (0.0, 2 * np.pi)
TIME_RANGE = (0.0, np.pi)


@dataclass
class QwoaParams:
    gammas: np.ndarray
    times: np.ndarray

    def __post_init__(self):
        self.gammas = np.atleast_1d(np.asarray(self.gammas, dtype=float))
        self.times = np.atleast_1d(np.asarray(self.times, dtype=float))
        if self.gammas.shape != self.times.shape or self.gammas.ndim != 1:
            raise ParameterError("gammas and times must be vectors of equal length")
        if not (np.all(np.isfinite(self.gammas)) and np.all(np.isfinite(self.times))):
            raise ParameterError("parameters must be finite")

    @property
    def p(self) -> int:
        return len(self.gammas)

    def to_vector(self) -> np.ndarray:
        return np.concatenate([self.gammas, self.times])

    @classmethod
    def from_vector(cls, x) -> QwoaParams:
        x = np.asarray(x, dtype=float)
        p = len(x) // 2
        return cls(x[:p], x[p:])

    @classmethod
    def zeros(cls, p: int) -> QwoaParams:
        return cls(np.zeros(p), np.zeros(p))

    def extended(self, gamma: float = 0.0, t: float = 0.0) -> QwoaParams:
        """A copy with one more layer appended."""
        return QwoaParams(np.append(self.gammas, gamma), np.append(self.times, t))


def _schedule(graphs, p: int) -> list[CirculantGraph]:
    if isinstance(graphs, CirculantGraph):
        return [graphs] * p
    graphs = list(graphs)
    if len(graphs) != p:
        raise ParameterError(f"graph schedule has {len(graphs)} entries for p={p} layers")
    return graphs


def evolve(params: QwoaParams, qualities, graphs, phase_sign: int = 1, walk_sign: int = -1):
    """Final state ``U_W(t_p) U_Q(gamma_p) ... U_W(t_1) U_Q(gamma_1) |s>``.

    ``graphs`` is one graph for every layer or a per-layer schedule.
    """
    qualities = np.asarray(qualities, dtype=float)
    M = len(qualities)
    schedule = _schedule(graphs, params.p)
    for g in schedule:
        if g.M != M:
            raise DimensionError(f"graph has {g.M} vertices, quality vector has {M}")
    psi = uniform_state(M)
    for gamma, t, g in zip(params.gammas, params.times, schedule):
        psi = apply_phase(psi, qualities, gamma, sign=phase_sign)
        psi = ctqw(psi, g, t, sign=walk_sign)
    return psi


def objective(params: QwoaParams, qualities, graphs, **signs) -> float:
    """Expected quality of a measurement of the evolved state."""
    return expectation(evolve(params, qualities, graphs, **signs), qualities)


@dataclass
class TraceEntry:
    eval_id: int
    start_id: int
    gammas: np.ndarray
    times: np.ndarray
    expectation: float


@dataclass
class QwoaRun:
    p: int
    best: QwoaParams
    best_expectation: float
    trace: list[TraceEntry]
    distribution: np.ndarray
    seed: int | None
    method: str
    budget: int
    wall_time: float = 0.0
    extra: dict = field(default_factory=dict)

    @property
    def evaluations(self) -> int:
        return len(self.trace)


class _BudgetExhausted(Exception):
    pass


def _run_start(start_id, x0, fun, maxfev, method, rng, bounds):
    log = []

    def f(x):
        if len(log) >= maxfev:
            raise _BudgetExhausted
        val = fun(x)
        log.append((np.array(x, dtype=float), val))
        return -val

    if len(x0) == 0:
        f(x0)
        return start_id, log
    try:
        if method == "nelder-mead":
            steps = np.array([0.25 * (hi - lo) for lo, hi in bounds])
            simplex = np.vstack([x0, x0 + np.diag(steps)])
            minimize(
                f,
                x0,
                method="Nelder-Mead",
                options={"initial_simplex": simplex, "maxfev": maxfev, "xatol": 1e-8, "fatol": 1e-12},
            )
        elif method == "powell":
            minimize(f, x0, method="Powell", options={"maxfev": maxfev, "xtol": 1e-8, "ftol": 1e-12})
        else:
            f(x0)
            lo, hi = np.array(bounds).T
            while True:
                f(rng.uniform(lo, hi))
    except _BudgetExhausted:
        pass
    return start_id, log


def optimize(
    p: int,
    qualities,
    graphs,
    budget: int = 500,
    seed: int | None = 0,
    method: str = "nelder-mead",
    starts: int = 4,
    init: QwoaParams | None = None,
    workers: int = 1,
    gamma_range=GAMMA_RANGE,
    time_range=TIME_RANGE,
) -> QwoaRun:
    """Multi-start maximisation of ``<Q>`` over the ``2p`` layer parameters.

    ``budget`` counts objective evaluations (full state evolutions) over all
    starts.  Start 0 begins at ``init`` padded with zero layers when given;
    the rest begin uniformly at random in ``gamma_range x time_range``.
    Results are identical for equal ``(seed, budget, method, starts)``
    regardless of ``workers``.
    """
    if budget < 1:
        raise ParameterError("budget must be a positive number of evaluations")
    if p < 0:
        raise ParameterError("p must be nonnegative")
    if method not in METHODS:
        raise ParameterError(f"unknown optimiser {method!r}; choose from {METHODS}")
    qualities = np.asarray(qualities, dtype=float)
    schedule = _schedule(graphs, p)
    tic = time.perf_counter()

    starts = max(1, min(starts, budget)) if p > 0 else 1
    share = [budget // starts + (1 if i < budget % starts else 0) for i in range(starts)]
    bounds = [tuple(gamma_range)] * p + [tuple(time_range)] * p

    rngs = [np.random.default_rng(s) for s in np.random.SeedSequence(seed).spawn(starts)]
    x0s = []
    for i, rng in enumerate(rngs):
        if i == 0 and init is not None:
            if init.p > p:
                raise ParameterError(f"initial parameters have {init.p} > p={p} layers")
            pad = p - init.p
            x0 = np.concatenate([init.gammas, np.zeros(pad), init.times, np.zeros(pad)])
        else:
            lo, hi = np.array(bounds).T if p else (np.zeros(0), np.zeros(0))
            x0 = rng.uniform(lo, hi)
        x0s.append(x0)

    def fun(x):
        return objective(QwoaParams.from_vector(x), qualities, schedule)

    jobs = [(i, x0s[i], fun, share[i], method, rngs[i], bounds) for i in range(starts)]
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(lambda a: _run_start(*a), jobs))
    else:
        results = [_run_start(*a) for a in jobs]
    results.sort(key=lambda r: r[0])

    trace = []
    for start_id, log in results:
        for x, val in log:
            params = QwoaParams.from_vector(x) if p else QwoaParams.zeros(0)
            trace.append(TraceEntry(len(trace), start_id, params.gammas, params.times, val))

    best_entry = max(trace, key=lambda e: e.expectation)
    best = QwoaParams(best_entry.gammas, best_entry.times) if p else QwoaParams.zeros(0)
    dist = probabilities(evolve(best, qualities, schedule))
    return QwoaRun(
        p=p,
        best=best,
        best_expectation=best_entry.expectation,
        trace=trace,
        distribution=dist,
        seed=seed,
        method=method,
        budget=budget,
        wall_time=time.perf_counter() - tic,
    )


def optimize_nested(
    p_max: int, qualities, graphs, budget: int = 500, seed: int | None = 0, **kwargs
) -> list[QwoaRun]:
    """Optimise ``p = 1..p_max`` in turn, seeding each from the previous optimum.

    The seeded start reproduces the previous state exactly, so the best
    expectation cannot decrease with ``p``.  ``graphs`` may be one graph or a
    schedule of length ``p_max`` (prefixes are used for smaller ``p``).
    """
    runs = []
    init = None
    for p in range(1, p_max + 1):
        g = graphs if isinstance(graphs, CirculantGraph) else list(graphs)[:p]
        run = optimize(p, qualities, g, budget=budget, seed=seed, init=init, **kwargs)
        runs.append(run)
        init = run.best
    return runs


def optimal_mask(qualities, atol: float = 1e-9) -> np.ndarray:
    """Indices whose quality ties the maximum (within ``atol`` relative to scale)."""
    q = np.asarray(qualities, dtype=float)
    qmax = q.max()
    return np.abs(q - qmax) <= atol * max(1.0, abs(qmax))


@dataclass
class ReportRow:
    index: int
    object: str
    probability: float
    quality: float
    cumulative: float


def report(run: QwoaRun, codec, qualities, top: int = 10, exhaustive_limit: int = 1 << 22) -> dict:
    """Most probable solutions of the optimised state, un-ranked through ``codec``."""
    dist = np.asarray(run.distribution)
    q = np.asarray(qualities, dtype=float)
    order = np.argsort(-dist, kind="stable")[: max(0, top)]
    rows = []
    cum = 0.0
    for r in order:
        cum += float(dist[r])
        rows.append(ReportRow(int(r), codec.format(codec.unrank(int(r))), float(dist[r]), float(q[r]), cum))
    out = {
        "p": run.p,
        "best_expectation": run.best_expectation,
        "mean_quality": float(q.mean()),
        "rows": rows,
    }
    if len(q) <= exhaustive_limit:
        mask = optimal_mask(q)
        out["optimal_quality"] = float(q.max())
        out["optimal_count"] = int(mask.sum())
        out["optimal_probability"] = float(dist[mask].sum())
        out["uniform_optimal_probability"] = float(mask.sum() / len(q))
    return out
