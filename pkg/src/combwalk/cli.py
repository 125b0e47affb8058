"""Command-line entry point.

Exit status: 0 success, 2 bad arguments or configuration, 3 capacity
exceeded, 4 numerical self-check failure.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from . import circulant, engine, grover, qwoa, resources
from .combinadics import domain_size, make_codec
from .config import (
    ConfigError,
    build_experiment,
    load_config,
    make_predicate,
)
from .errors import (
    CapacityError,
    CombwalkError,
    NumericalValidationError,
    ParameterError,
    RangeError,
    ValidationError,
)
from .io import atomic_write_text, dumps_json, fmt, table_csv, write_distribution_csv, write_json, write_trace_csv

EXIT_OK, EXIT_USAGE, EXIT_CAPACITY, EXIT_NUMERIC = 0, 2, 3, 4

FAMILY_ALIASES = {
    "comb": "combinations",
    "bounded": "bounded-combinations",
    "perm": "permutations-lehmer",
    "lehmer": "permutations-lehmer",
    "perm-lehmer": "permutations-lehmer",
    "mr": "permutations-mr",
    "perm-mr": "permutations-mr",
    "permutations": "permutations-lehmer",
    "word": "words",
}


def _family_params(args) -> tuple[str, dict]:
    family = FAMILY_ALIASES.get(args.family, args.family)
    params = {}
    for name in ("n", "k", "K", "Kmin", "A", "L"):
        val = getattr(args, name, None)
        if val is not None:
            params[name] = val
    if args.orders is not None:
        params["orders"] = [int(x) for x in args.orders.split(",") if x.strip()]
    return family, params


def _add_family_args(p):
    p.add_argument("--family", required=True, help="comb, bounded, subsets, perm, perm-mr, dyck, words")
    p.add_argument("--n", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--K", type=int)
    p.add_argument("--Kmin", type=int)
    p.add_argument("--orders", help="comma-separated subset sizes")
    p.add_argument("--A", type=int, help="alphabet size")
    p.add_argument("--L", type=int, help="word length")


def cmd_size(args):
    family, params = _family_params(args)
    try:
        print(domain_size(family, **params))
    except KeyError as exc:
        raise ParameterError(f"missing parameter --{exc.args[0]}") from None


def cmd_rank(args):
    family, params = _family_params(args)
    codec = make_codec(family, **params)
    print(codec.rank(codec.parse(args.object)))


def cmd_unrank(args):
    family, params = _family_params(args)
    codec = make_codec(family, **params)
    print(codec.format(codec.unrank(args.index)))


def cmd_spectrum(args):
    gens = [int(x) for x in args.generators.split(",")] if args.generators else None
    g = circulant.make_graph(args.graph, args.M, gens)
    lam = circulant.eigenvalues_dft(g) if args.method == "dft" else circulant.eigenvalues(g)
    print("j,eigenvalue")
    for j, x in enumerate(lam):
        print(f"{j},{fmt(x)}")


def _experiment(args):
    return build_experiment(load_config(args.config))


def cmd_walk(args):
    exp = _experiment(args)
    wspec = exp.config.get("walk")
    if wspec is None:
        raise ConfigError("walk needs a 'walk' block", "walk")
    graph = exp.graph_for(1)
    if isinstance(graph, list):
        graph = graph[0]
    initial = wspec.get("initial", "uniform")
    if initial == "uniform":
        psi = engine.uniform_state(exp.M)
    else:
        if initial >= exp.M:
            raise ConfigError(f"initial index {initial} outside [0, {exp.M})", "walk.initial")
        psi = engine.basis_state(exp.M, initial)
    psi = engine.ctqw(psi, graph, wspec["time"], sign=wspec.get("sign", -1))
    _check_norm(psi)
    path = exp.output_path("distribution", "distribution.csv", args.out_dir)
    write_distribution_csv(path, exp.codec, engine.probabilities(psi), exp.qualities)
    print(path)


def _check_norm(psi, tol=1e-10):
    drift = abs(np.linalg.norm(psi) - 1)
    if drift > tol:
        raise NumericalValidationError(f"state norm drifted by {drift:.3g}")


def _run_summary(exp, runs, rep) -> dict:
    final = runs[-1]
    out = {
        "M": exp.M,
        "domain": {"family": exp.codec.family, **exp.codec.params()},
        "graph": exp.graph_specs,
        "seed": exp.config["seed"],
        "optimizer_seed": exp.seeds["optimizer"],
        "method": final.method,
        "p": final.p,
        "best_gammas": [float(x) for x in final.best.gammas],
        "best_times": [float(x) for x in final.best.times],
        "best_expectation": final.best_expectation,
        "mean_quality": rep["mean_quality"],
        "evaluations": sum(r.evaluations for r in runs),
        "history": [{"p": r.p, "best_expectation": r.best_expectation} for r in runs],
        "top": [vars(row) for row in rep["rows"]],
        "wall_time": sum(r.wall_time for r in runs),
    }
    for key in ("optimal_quality", "optimal_count", "optimal_probability", "uniform_optimal_probability"):
        if key in rep:
            out[key] = rep[key]
    return out


def cmd_qwoa(args):
    exp = _experiment(args)
    if exp.qualities is None:
        raise ConfigError("qwoa needs a 'problem' block", "problem")
    qspec = exp.config.get("qwoa")
    if qspec is None:
        raise ConfigError("qwoa needs a 'qwoa' block", "qwoa")
    p = qspec["p"]
    kwargs = dict(
        budget=qspec.get("budget", 500),
        seed=exp.seeds["optimizer"],
        method=qspec.get("optimizer", "nelder-mead"),
        starts=qspec.get("starts", 4),
        workers=qspec.get("workers", 1),
    )
    if qspec.get("nested", False) and p > 0:
        runs = qwoa.optimize_nested(p, exp.qualities, exp.graph_for(p), **kwargs)
    else:
        runs = [qwoa.optimize(p, exp.qualities, exp.graph_for(p), **kwargs)]
    final = runs[-1]
    if abs(final.distribution.sum() - 1) > 1e-10:
        raise NumericalValidationError("final distribution does not sum to one")
    rep = qwoa.report(final, exp.codec, exp.qualities, top=qspec.get("top", 10))
    summary = _run_summary(exp, runs, rep)

    write_trace_csv(exp.output_path("trace", "trace.csv", args.out_dir), runs)
    write_distribution_csv(
        exp.output_path("distribution", "distribution.csv", args.out_dir),
        exp.codec,
        final.distribution,
        exp.qualities,
    )
    write_json(exp.output_path("summary", "summary.json", args.out_dir), summary)
    sys.stdout.write(dumps_json(summary))


def cmd_grover(args):
    exp = _experiment(args)
    sspec = exp.config.get("search")
    if sspec is None:
        raise ConfigError("grover needs a 'search' block", "search")
    spec = grover.SearchSpec(exp.codec, make_predicate(sspec["predicate"], exp))
    result = grover.grover_search(spec, seed=exp.seeds["sampling"], iterations=sspec.get("iterations"))
    analytic = grover.success_probability(spec.M, spec.k, result.iterations)
    if abs(result.trajectory[-1] - analytic) > 1e-9:
        raise NumericalValidationError("simulated success deviates from the analytic rotation")
    stats = result.to_dict(exp.codec)
    stats["seed"] = exp.config["seed"]
    write_json(exp.output_path("statistics", "statistics.json", args.out_dir), stats)
    sys.stdout.write(dumps_json(stats))


def cmd_resources(args):
    circuits = args.circuit or resources.CIRCUITS
    rows = resources.resource_table(args.n, args.k, circuits)
    text = table_csv(rows, ("circuit", "n", "k", "gates", "qubits"))
    if args.out:
        atomic_write_text(args.out, text)
    sys.stdout.write(text)


def cmd_validate(args):
    exp = _experiment(args)
    rng = np.random.default_rng(exp.seeds["sampling"])
    codec = exp.codec
    ranks = rng.choice(codec.size, size=min(codec.size, 1000), replace=False)
    for r in ranks:
        r = int(r)
        if codec.rank(codec.unrank(r)) != r:
            raise NumericalValidationError(f"rank/unrank round trip failed at {r}")
    print(f"codec {codec!r}: M={codec.size}, {len(ranks)} round trips ok")
    for g in exp.graphs():
        err = float(np.max(np.abs(circulant.eigenvalues(g) - circulant.eigenvalues_dft(g))))
        if err > 1e-12:
            raise NumericalValidationError(f"{g.family} spectrum closed form vs DFT differs by {err:.3g}")
        psi = rng.normal(size=g.M) + 1j * rng.normal(size=g.M)
        psi /= np.linalg.norm(psi)
        _check_norm(engine.ctqw(psi, g, 1.0), tol=1e-12)
        print(f"graph {g.family} M={g.M} degree={g.degree}: spectrum and unitarity ok")
    if exp.qualities is not None:
        if not np.all(np.isfinite(exp.qualities)):
            raise NumericalValidationError("quality vector has non-finite entries")
        print(f"qualities: min={fmt(exp.qualities.min())} max={fmt(exp.qualities.max())}")
    print("ok")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="combwalk", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("size", help="number of objects in a family")
    _add_family_args(p)
    p.set_defaults(func=cmd_size)

    p = sub.add_parser("rank", help="index of an object")
    _add_family_args(p)
    p.add_argument("--object", required=True, help="e.g. 2,3 or ENEN")
    p.set_defaults(func=cmd_rank)

    p = sub.add_parser("unrank", help="object at an index")
    _add_family_args(p)
    p.add_argument("--index", type=int, required=True)
    p.set_defaults(func=cmd_unrank)

    p = sub.add_parser("spectrum", help="eigenvalues of a circulant graph in Fourier order")
    p.add_argument("--graph", required=True, choices=circulant.GRAPH_FAMILIES)
    p.add_argument("--M", type=int, required=True)
    p.add_argument("--generators", help="comma-separated offsets for --graph circulant")
    p.add_argument("--method", choices=("closed", "dft"), default="closed")
    p.set_defaults(func=cmd_spectrum)

    for name, func, helptext in (
        ("walk", cmd_walk, "single quantum walk, writes the distribution CSV"),
        ("qwoa", cmd_qwoa, "optimise QWOA parameters, writes trace/summary/distribution"),
        ("grover", cmd_grover, "amplitude amplification search, writes statistics JSON"),
        ("validate", cmd_validate, "check a config and run numerical self-checks"),
    ):
        p = sub.add_parser(name, help=helptext)
        p.add_argument("--config", required=True)
        p.add_argument("--out-dir", help="override output.dir (default $COMBWALK_OUTPUT_DIR or .)")
        p.set_defaults(func=func)

    p = sub.add_parser("resources", help="gate/qubit estimates as CSV")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, default=0)
    p.add_argument("--circuit", action="append", choices=resources.CIRCUITS)
    p.add_argument("--out")
    p.set_defaults(func=cmd_resources)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        args.func(args)
    except CapacityError as exc:
        print(f"capacity error: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except NumericalValidationError as exc:
        print(f"numerical validation failed: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ParameterError, ValidationError, RangeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CombwalkError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
