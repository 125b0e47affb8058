"""Experiment configuration: JSON parsing, schema validation, object assembly."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

import jsonschema
import numpy as np

from . import problems
from .circulant import CirculantGraph, make_graph
from .combinadics import DomainCodec, make_codec
from .errors import CapacityError, ParameterError, ValidationError
from .io import default_output_dir

DEFAULT_MAX_DIMENSION = 1 << 24
_SEED_STREAMS = ("problem", "optimizer", "sampling")


class ConfigError(ParameterError):
    """Malformed or inconsistent configuration; ``where`` locates the fault."""

    def __init__(self, message: str, where: str = ""):
        self.where = where
        super().__init__(f"{where}: {message}" if where else message)


def schema() -> dict:
    text = resources.files("combwalk").joinpath("config_schema.json").read_text()
    return json.loads(text)


def parse_config(text: str, source: str = "<config>") -> dict:
    try:
        cfg = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(exc.msg, f"{source}:{exc.lineno}:{exc.colno}") from None
    validator = jsonschema.Draft202012Validator(schema())
    errors = sorted(validator.iter_errors(cfg), key=lambda e: list(e.absolute_path))
    if errors:
        err = errors[0]
        path = ".".join(str(p) for p in err.absolute_path) or "<root>"
        raise ConfigError(err.message, f"{source}: field {path}")
    return cfg


def load_config(path) -> dict:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ConfigError(str(exc), str(path)) from None
    return parse_config(text, str(path))


def split_seed(seed: int) -> dict[str, int]:
    """Independent per-component seeds derived from the master seed."""
    children = np.random.SeedSequence(seed).spawn(len(_SEED_STREAMS))
    return {name: int(c.generate_state(1)[0]) for name, c in zip(_SEED_STREAMS, children)}


@dataclass
class Experiment:
    config: dict
    seeds: dict[str, int]
    codec: DomainCodec
    problem: object = None
    qualities: np.ndarray | None = None
    graph_specs: list[dict] = field(default_factory=list)
    max_dimension: int = DEFAULT_MAX_DIMENSION

    @property
    def M(self) -> int:
        return self.codec.size

    def graphs(self) -> list[CirculantGraph]:
        out = []
        for i, spec in enumerate(self.graph_specs):
            try:
                out.append(make_graph(spec["family"], self.M, spec.get("generators")))
            except ParameterError as exc:
                raise ConfigError(str(exc), f"graph[{i}]") from None
        return out

    def graph_for(self, p: int):
        """One graph reused for every layer, or the first ``p`` schedule entries."""
        graphs = self.graphs()
        if "schedule" not in self.config.get("graph", {}):
            return graphs[0]
        if len(graphs) < p:
            raise ConfigError(f"schedule has {len(graphs)} entries, need {p}", "graph.schedule")
        return graphs[:p]

    def output_path(self, key: str, default: str, out_dir=None) -> Path:
        out = self.config.get("output", {})
        base = Path(out_dir) if out_dir is not None else Path(out.get("dir", default_output_dir()))
        return base / out.get(key, default)


def _problem_instance(spec: dict, seed: int):
    kind = spec["type"]
    if kind == "tsp":
        if "dist" in spec:
            return problems.TspInstance(np.array(spec["dist"], dtype=float))
        if "cities" not in spec:
            raise ConfigError("tsp needs 'dist' or 'cities'", "problem")
        return problems.random_tsp(spec["cities"], seed=seed, integer=spec.get("integer", False))
    if kind == "partition":
        if "weights" in spec:
            return problems.PartitionInstance(np.array(spec["weights"], dtype=float))
        if "n" not in spec:
            raise ConfigError("partition needs 'weights' or 'n'", "problem")
        return problems.random_partition(spec["n"], seed=seed)
    if kind == "portfolio":
        if "K" not in spec:
            raise ConfigError("portfolio needs 'K'", "problem")
        theta = spec.get("theta", 1.0)
        if "mu" in spec:
            return problems.PortfolioInstance(
                np.array(spec["mu"], dtype=float), np.array(spec["sigma"], dtype=float), theta, spec["K"]
            )
        if "n" not in spec:
            raise ConfigError("portfolio needs 'mu'/'sigma' or 'n'", "problem")
        return problems.random_portfolio(spec["n"], spec["K"], seed=seed, theta=theta)
    if kind == "lattice":
        if "weights" in spec:
            return problems.LatticeCostInstance(np.array(spec["weights"], dtype=float))
        if "n" not in spec:
            raise ConfigError("lattice needs 'weights' or 'n'", "problem")
        return problems.random_lattice(spec["n"], seed=seed)
    return None


_COMPATIBLE = {
    "tsp": ("permutations", "permutations-lehmer", "permutations-mr"),
    "partition": ("combinations",),
    "portfolio": ("bounded-combinations",),
    "lattice": ("dyck",),
}


def build_experiment(cfg: dict) -> Experiment:
    """Assemble codec, problem, qualities and graphs, checking consistency."""
    seeds = split_seed(cfg["seed"])
    cap = cfg.get("max_dimension", DEFAULT_MAX_DIMENSION)
    pspec = cfg.get("problem")
    dspec = cfg.get("domain")

    try:
        problem = _problem_instance(pspec, seeds["problem"]) if pspec else None
    except ParameterError as exc:
        raise ConfigError(str(exc), "problem") from None

    if dspec is None:
        if problem is None:
            raise ConfigError("a 'domain' block is required without a structured problem", "domain")
        codec = problem.codec()
    else:
        params = {k: v for k, v in dspec.items() if k != "family"}
        try:
            codec = make_codec(dspec["family"], **params)
        except ParameterError as exc:
            raise ConfigError(str(exc), "domain") from None
        if problem is not None:
            default = problem.codec()
            if dspec["family"] not in _COMPATIBLE[pspec["type"]] or codec.size != default.size:
                raise ConfigError(
                    f"domain {codec!r} does not match problem {pspec['type']!r} "
                    f"(expected {default!r})",
                    "domain",
                )

    if codec.size > cap:
        raise CapacityError(f"domain size {codec.size} exceeds max_dimension {cap}")

    qualities = None
    if problem is not None:
        qualities = problems.quality_vector(codec, problem.quality, max_dimension=cap)
    elif pspec is not None and pspec["type"] == "table":
        if "qualities" not in pspec:
            raise ConfigError("table problem needs 'qualities'", "problem")
        qualities = np.array(pspec["qualities"], dtype=float)
        if len(qualities) != codec.size:
            raise ConfigError(
                f"{len(qualities)} qualities for a domain of size {codec.size}", "problem.qualities"
            )

    gspec = cfg.get("graph", {"family": "complete"})
    if "schedule" in gspec:
        graph_specs = gspec["schedule"]
    else:
        graph_specs = [{"family": gspec.get("family", "complete"), **({"generators": gspec["generators"]} if "generators" in gspec else {})}]

    exp = Experiment(cfg, seeds, codec, problem, qualities, graph_specs, cap)
    exp.graphs()  # surface graph errors before any work
    return exp


def make_predicate(spec: dict, exp: Experiment):
    kind = spec["type"]
    codec = exp.codec
    if kind == "contains":
        wanted = set(spec.get("elements", []))
        return lambda obj: wanted.issubset(obj)
    if kind == "equals":
        try:
            target = codec.parse(spec["object"])
        except (KeyError, ValidationError) as exc:
            raise ConfigError(str(exc), "search.predicate.object") from None
        return lambda obj: obj == target
    if kind == "ranks":
        ranks = set(spec.get("ranks", []))
        if any(r >= codec.size for r in ranks):
            raise ConfigError("rank outside the domain", "search.predicate.ranks")
        return lambda obj: codec.rank(obj) in ranks
    if kind == "quality_at_least":
        if exp.problem is None or "threshold" not in spec:
            raise ConfigError("quality_at_least needs a structured problem and a threshold", "search.predicate")
        threshold = spec["threshold"]
        return lambda obj: exp.problem.quality(obj) >= threshold
    raise ConfigError(f"unknown predicate {kind!r}", "search.predicate.type")
