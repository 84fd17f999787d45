"""Command-line front end.

Subcommands mirror the library surface: ``analyze``, ``lazy`` / ``unlazy`` /
``project``, ``simulate`` / ``simulate-lazy``, ``learn`` /
``estimate-pistar`` / ``test-identity``, and the harness entry points
``risk`` / ``complexity`` / ``scan-conjecture`` / ``verify-paper``.

Exit codes: 0 success, 1 domain error (a structured JSON error document is
written to stderr), 2 usage error, 3 when ``verify-paper`` finds a claim
violation.  Output documents are byte-deterministic for a given argv and
seed.  Thread count comes from ``--threads`` or the ``LAZYMC_THREADS``
environment variable; parallelism only ever lives inside harness trial
loops, whose reductions are order-independent.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

import numpy as np

from . import harness, matio
from .chain import (
    profile,
    uniform_distribution,
    validate_distribution,
    validate_stochastic,
)
from .errors import BadSpec, LazymcError
from .estimators import (
    estimate_pi_star,
    identity_test,
    identity_test_extended,
    learn_matrix,
)
from .lazy import in_lazy_range, lazy, simulate, simulate_lazy, unlazy
from .projection import (
    project_matrix,
    project_simplex_general,
    project_simplex_rowsum1,
)
from .spectral import build_spectral_report

MAX_SEED = 2**64 - 1


def _positive_seed(value: str) -> int:
    seed = int(value)
    if not (0 <= seed <= MAX_SEED):
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return seed


def _unit_interval(name: str):
    def parse(value: str) -> float:
        x = float(value)
        if not (0.0 < x < 1.0):
            raise argparse.ArgumentTypeError(f"{name} must lie strictly in (0, 1)")
        return x

    return parse


def _emit(document, out: str | None) -> None:
    text = matio.dumps(document) + "\n"
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _initial_law(args, d: int):
    if getattr(args, "initial", None):
        return validate_distribution(matio.load_vector(args.initial))
    return uniform_distribution(d)


def _profile_dict(M) -> dict:
    prof = profile(M)
    return {
        "irreducible": prof.irreducible,
        "period": prof.period,
        "aperiodic": prof.aperiodic,
        "reversible": prof.reversible,
        "pi": None if prof.pi is None else [float(v) for v in prof.pi.probs],
        "pi_star": prof.pi_star,
    }


def _cmd_analyze(args) -> int:
    M = matio.load_matrix(args.matrix)
    document = {"profile": _profile_dict(M)}
    if document["profile"]["irreducible"]:
        document["spectral"] = matio.jsonable(build_spectral_report(M, k_cap=args.k_cap))
    _emit(document, args.out)
    return 0


def _cmd_lazy(args) -> int:
    M = matio.load_matrix(args.matrix)
    _emit(matio.matrix_to_json_dict(lazy(M, args.alpha)), args.out)
    return 0


def _cmd_unlazy(args) -> int:
    N = matio.load_matrix(args.matrix)
    raw = unlazy(N, args.alpha)
    document = matio.matrix_to_json_dict(raw)
    document["in_lazy_range"] = in_lazy_range(N, args.alpha)
    _emit(document, args.out)
    return 0


def _cmd_project(args) -> int:
    if (args.matrix is None) == (args.vector is None):
        raise BadSpec("pass exactly one of --matrix or --vector")
    if args.matrix:
        A = matio.load_array(args.matrix)
        projected = project_matrix(A)
        _emit(matio.matrix_to_json_dict(projected), args.out)
        return 0
    x = matio.load_vector(args.vector)
    result = (
        project_simplex_rowsum1(x) if args.mode == "rowsum1" else project_simplex_general(x)
    )
    _emit(
        {
            "point": [float(v) for v in result.point.probs],
            "distance": result.distance,
            "touched": list(result.touched),
        },
        args.out,
    )
    return 0


def _emit_path(states, args, metadata: dict) -> int:
    if args.format == "ndjson":
        text = "\n".join(str(int(s)) for s in states) + "\n"
        if args.out:
            Path(args.out).write_text(text)
        else:
            sys.stdout.write(text)
    else:
        metadata["states"] = [int(s) for s in states]
        _emit(metadata, args.out)
    return 0


def _cmd_simulate(args) -> int:
    M = matio.load_matrix(args.matrix)
    mu = _initial_law(args, M.d)
    states = simulate(M, mu, args.m, args.seed)
    return _emit_path(states, args, {"m": args.m, "seed": args.seed})


def _cmd_simulate_lazy(args) -> int:
    M = matio.load_matrix(args.matrix)
    mu = _initial_law(args, M.d)
    traj = simulate_lazy(M, mu, args.alpha, args.m, args.seed)
    return _emit_path(
        traj.states,
        args,
        {
            "m": traj.m,
            "m_act": traj.m_act,
            "alpha": traj.alpha,
            "seed": traj.seed,
            "rng_algorithm": traj.rng_algorithm,
        },
    )


def _cmd_learn(args) -> int:
    M = matio.load_matrix(args.matrix)
    mu = _initial_law(args, M.d)
    report = learn_matrix(M, mu, args.m, args.seed, alpha=args.alpha or 0.0)
    _emit(matio.jsonable(report), args.out)
    return 0


def _cmd_estimate_pistar(args) -> int:
    M = matio.load_matrix(args.matrix)
    mu = _initial_law(args, M.d)
    if args.alpha:
        path = simulate_lazy(M, mu, args.alpha, args.m, args.seed).states
    else:
        path = simulate(M, mu, args.m, args.seed)
    _emit(
        {"pi_star_hat": estimate_pi_star(path, M.d), "m": args.m,
         "alpha": args.alpha or 0.0, "seed": args.seed},
        args.out,
    )
    return 0


def _cmd_test_identity(args) -> int:
    M = matio.load_matrix(args.matrix)
    M_bar = matio.load_matrix(args.reference)
    mu = _initial_law(args, M.d)
    if args.alpha:
        decision = identity_test_extended(M, mu, M_bar, args.alpha, args.eps, args.m, args.seed)
    else:
        decision = identity_test(simulate(M, mu, args.m, args.seed), M_bar, args.eps)
    _emit(
        {"decision": decision, "eps": args.eps, "m": args.m,
         "alpha": args.alpha or 0.0, "seed": args.seed},
        args.out,
    )
    return 0


def _family_from_config(config: dict) -> list:
    groups = config["family"]
    if isinstance(groups, dict):
        groups = [groups]
    family = []
    for gi, group in enumerate(groups):
        kind = group["kind"]
        if kind == "user-file":
            for path in group["paths"]:
                family.append((f"user-{Path(path).stem}", matio.load_matrix(path)))
            continue
        family.extend(
            harness.generate_family(
                kind,
                int(group.get("count", 1)),
                int(group.get("seed", 1000 + gi)),
                dims=tuple(group.get("dims", [int(group["d"])] if "d" in group else [3, 4, 5, 6])),
                params=group.get("params"),
            )
        )
    if not family:
        raise BadSpec("config produced an empty family")
    return family


def _estimator_from_config(config: dict) -> harness.EstimatorConfig:
    spec = config.get("estimator", {"name": "matrix-learner"})
    name = spec.get("name", "matrix-learner")
    alpha = float(spec.get("alpha", 0.0))
    if name == "oracle":
        return harness.oracle_estimator()
    if name in ("matrix-learner", "matrix"):
        return harness.matrix_learner(alpha)
    if name in ("pi-star", "pistar"):
        return harness.pi_star_estimator(alpha)
    raise BadSpec(f"unknown estimator {name!r}", name=name)


def _load_config(args) -> dict:
    return json.loads(Path(args.config).read_text())


def _cmd_risk(args) -> int:
    config = _load_config(args)
    report = harness.empirical_risk(
        _estimator_from_config(config),
        _family_from_config(config),
        m=int(config["m"]),
        eps=float(config["eps"]),
        trials=int(config.get("trials", 100)),
        seed=int(config.get("seed", args.seed)),
        threads=args.threads,
    )
    if args.format == "csv":
        rows = [[tag, risk] for tag, risk in sorted(report.per_chain.items())]
        text = matio.curve_to_csv(["chain", "risk"], rows)
        Path(args.out).write_text(text) if args.out else sys.stdout.write(text)
        return 0
    _emit(matio.jsonable(report), args.out)
    return 0


def _cmd_complexity(args) -> int:
    config = _load_config(args)
    curve = harness.empirical_sample_complexity(
        _estimator_from_config(config),
        _family_from_config(config),
        eps=float(config["eps"]),
        delta=float(config["delta"]),
        m_grid=[int(m) for m in config["m_grid"]],
        trials=int(config.get("trials", 100)),
        seed=int(config.get("seed", args.seed)),
        threads=args.threads,
    )
    if args.format == "csv":
        rows = [[m, r] for m, r in zip(curve.grid, curve.risks)]
        text = matio.curve_to_csv(["m", "risk"], rows)
        Path(args.out).write_text(text) if args.out else sys.stdout.write(text)
        return 0
    _emit(matio.jsonable(curve), args.out)
    return 0


def _cmd_scan_conjecture(args) -> int:
    config = _load_config(args)
    scan = harness.scan_lazy_gap_ratio(
        _family_from_config(config),
        alpha_grid=tuple(config.get("alpha_grid", [0.1, 0.5, 0.9])),
    )
    if args.format == "csv":
        rows = [
            [r["tag"], r["d"], r["alpha"], r["ratio"], r["asserted"]] for r in scan.rows
        ]
        text = matio.curve_to_csv(["chain", "d", "alpha", "ratio", "asserted"], rows)
        Path(args.out).write_text(text) if args.out else sys.stdout.write(text)
        return 0
    _emit(matio.jsonable(scan), args.out)
    return 0


def _cmd_verify_paper(args) -> int:
    result = harness.run_claim_suite(seed=args.seed, threads=args.threads)
    for claim in result.claims:
        status = "PASS" if claim.passed else "FAIL"
        sys.stdout.write(f"{status}  {claim.name}  ({claim.seconds:.1f}s)  {claim.detail}\n")
    summary = "all claims hold" if result.passed else "claim violations found"
    sys.stdout.write(f"{'PASS' if result.passed else 'FAIL'}  summary: {summary}\n")
    return 0 if result.passed else 3


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lazymc",
        description="Lazy-smoothing toolkit for finite Markov chains.",
    )
    default_threads = int(os.environ.get("LAZYMC_THREADS", "1"))
    parser.add_argument(
        "--threads",
        type=int,
        default=default_threads,
        help="worker threads for harness trial loops (env LAZYMC_THREADS)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, **kwargs):
        p = sub.add_parser(name, **kwargs)
        p.set_defaults(fn=fn)
        p.add_argument("--out", help="write the output document here instead of stdout")
        p.add_argument("--seed", type=_positive_seed, default=0)
        return p

    p = add("analyze", _cmd_analyze, help="structural profile plus spectral report")
    p.add_argument("--matrix", required=True)
    p.add_argument("--k-cap", type=int, default=1000)

    p = add("lazy", _cmd_lazy, help="alpha-lazy version of a chain")
    p.add_argument("--matrix", required=True)
    p.add_argument("--alpha", type=_unit_interval("alpha"), required=True)

    p = add("unlazy", _cmd_unlazy, help="affine inverse of the lazy transform")
    p.add_argument("--matrix", required=True)
    p.add_argument("--alpha", type=_unit_interval("alpha"), required=True)

    p = add("project", _cmd_project, help="l1-project a vector or matrix rows onto the simplex")
    p.add_argument("--matrix")
    p.add_argument("--vector")
    p.add_argument("--mode", choices=["general", "rowsum1"], default="general")

    p = add("simulate", _cmd_simulate, help="sample a trajectory of a chain")
    p.add_argument("--matrix", required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--initial", help="initial law file (default uniform)")
    p.add_argument("--format", choices=["ndjson", "json"], default="ndjson")

    p = add("simulate-lazy", _cmd_simulate_lazy, help="sample the lazy chain by coin tosses")
    p.add_argument("--matrix", required=True)
    p.add_argument("--alpha", type=_unit_interval("alpha"), required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--initial")
    p.add_argument("--format", choices=["ndjson", "json"], default="ndjson")

    p = add("learn", _cmd_learn, help="learn the transition matrix from one trajectory")
    p.add_argument("--matrix", required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--alpha", type=_unit_interval("alpha"), default=None)
    p.add_argument("--initial")

    p = add("estimate-pistar", _cmd_estimate_pistar, help="estimate the minimum stationary probability")
    p.add_argument("--matrix", required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--alpha", type=_unit_interval("alpha"), default=None)
    p.add_argument("--initial")

    p = add("test-identity", _cmd_test_identity, help="plug-in identity test against a reference chain")
    p.add_argument("--matrix", required=True)
    p.add_argument("--reference", required=True)
    p.add_argument("--eps", type=_unit_interval("eps"), required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--alpha", type=_unit_interval("alpha"), default=None)
    p.add_argument("--initial")

    for name, fn, blurb in (
        ("risk", _cmd_risk, "empirical worst-case risk over a chain family"),
        ("complexity", _cmd_complexity, "empirical sample-complexity curve"),
        ("scan-conjecture", _cmd_scan_conjecture, "scan the lazy pseudo-gap ratio"),
    ):
        p = add(name, fn, help=blurb)
        p.add_argument("--config", required=True, help="experiment config JSON")
        p.add_argument("--format", choices=["json", "csv"], default="json")

    add("verify-paper", _cmd_verify_paper, help="run the built-in claim verification suite")

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.threads < 1:
        parser.error("--threads must be >= 1")
    try:
        return args.fn(args)
    except LazymcError as exc:
        sys.stderr.write(json.dumps(exc.to_json_dict(), sort_keys=True, default=str) + "\n")
        return 1
    except FileNotFoundError as exc:
        sys.stderr.write(
            json.dumps(
                {"code": "file-not-found", "message": str(exc), "context": {}}, sort_keys=True
            )
            + "\n"
        )
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
