"""Command-line interface.

Subcommands: ``generate`` (model files), ``layout`` (recover an order from an
edge list), ``experiment`` (seeded Monte-Carlo sweep to CSV), ``verify``
(deterministic inequality suite) and ``spectrum`` (closed-form vs numeric
eigenvalues). Exit codes: 0 success, 1 validation error, 2 assertion
failure, 3 numerical failure.
"""

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .edgelist import read_edge_list, write_edge_list
from .experiment import (
    DEFAULT_VERIFY_CONFIG,
    ExperimentConfig,
    records_to_csv,
    run_experiment,
    run_verify,
)
from .layout import align_to_truth, recover_layout, write_point_cloud
from .metrics import rank_metrics
from .model import CirculantModel, adjacency, closed_form_spectrum
from .sampling import rng_from
from .spectral import NumericalError, top_eigenpairs
from .validation import check_seed

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_ASSERTION = 2
EXIT_NUMERICAL = 3


class CliError(Exception):
    """Validation failure surfaced to the user with exit code 1."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise CliError(message)


def _parse_offsets(text: str):
    try:
        return tuple(int(part) for part in text.split(",") if part.strip() != "")
    except ValueError as exc:
        raise CliError(f"bad offsets {text!r}: expected comma-separated integers") from exc


def _model_from_args(args) -> CirculantModel:
    if args.offsets is not None and args.gamma is not None:
        raise CliError("give either --offsets or --gamma/--c, not both")
    try:
        if args.offsets is not None:
            return CirculantModel(n=args.n, offsets=_parse_offsets(args.offsets), p=args.p)
        if args.gamma is not None:
            if args.c is None:
                raise CliError("--gamma requires --c")
            return CirculantModel.from_density(args.n, args.gamma, args.c, p=args.p)
    except ValueError as exc:
        raise CliError(str(exc)) from exc
    raise CliError("one of --offsets or --gamma/--c is required")


def _write_json(path, payload):
    payload = {"tool": "circlayout", "version": __version__, **payload}
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")


def cmd_generate(args) -> int:
    model = _model_from_args(args)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    description = {
        "n": model.n,
        "offsets": list(model.offsets),
        "p": model.p,
        "gamma": model.gamma,
        "c": model.c,
        "degree": model.degree,
        "edge_count": model.edge_count,
    }
    _write_json(out / "model.json", {"model": description})
    write_edge_list(
        adjacency(model),
        out / "edges.txt",
        comments=[f"circlayout {__version__} model n={model.n} offsets={list(model.offsets)}"],
    )
    print(f"wrote {out / 'model.json'} and {out / 'edges.txt'}")
    return EXIT_OK


def cmd_layout(args) -> int:
    try:
        adj, n = read_edge_list(args.edges)
    except (OSError, ValueError) as exc:
        raise CliError(str(exc)) from exc

    truth = np.arange(1, n + 1, dtype=np.int64)
    shuffle_permutation = None
    if args.shuffle:
        if args.seed is None:
            raise CliError("--shuffle requires --seed")
        seed = check_seed(args.seed)
        pi0 = rng_from(seed).permutation(n)
        inv = np.argsort(pi0)
        adj = adj[np.ix_(inv, inv)]
        truth = truth[inv]
        shuffle_permutation = (pi0 + 1).tolist()

    order, embedding, decomposition = recover_layout(adj)
    aligned = align_to_truth(order, truth)
    k_list = [int(k) for k in (args.k or [1])]

    def model_frame_metrics(sigma, aligned_flag):
        # rank metrics live in model-position order; with shuffled labels the
        # presented index order is meaningless
        frame = np.empty(n, dtype=np.int64)
        frame[truth - 1] = sigma
        return rank_metrics(frame, k_list=k_list, aligned=aligned_flag)

    raw_metrics = model_frame_metrics(order.sigma, aligned_flag=False)
    aligned_metrics = model_frame_metrics(aligned.sigma, aligned_flag=True)
    payload = {
        "n": n,
        "seed": args.seed,
        "shuffled": bool(args.shuffle),
        "shuffle_permutation": shuffle_permutation,
        "permutation": order.sigma.tolist(),
        "aligned_permutation": aligned.sigma.tolist(),
        "orientation": aligned.orientation,
        "rotation_offset": aligned.rotation_offset,
        "angles": embedding.angles.tolist(),
        "eigenvalues": decomposition.eigenvalues.tolist(),
        "metrics": {
            "D_raw": raw_metrics.D,
            "D_aligned": aligned_metrics.D,
            "d_k_raw": {str(k): v for k, v in sorted(raw_metrics.d_k_values.items())},
            "d_k_aligned": {str(k): v for k, v in sorted(aligned_metrics.d_k_values.items())},
        },
    }
    out = Path(args.out)
    _write_json(out, payload)

    points_path = out.with_suffix(".points.csv")
    write_point_cloud(points_path, embedding, order)
    print(f"wrote {out} and {points_path} (aligned D = {aligned_metrics.D})")
    return EXIT_OK


def cmd_experiment(args) -> int:
    try:
        with open(args.config, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
        if args.seed is not None:
            doc["master_seed"] = args.seed
        if args.trials is not None:
            doc["trials"] = args.trials
        if args.k:
            doc.pop("beta", None)
            doc["k"] = [int(k) for k in args.k]
        if args.beta:
            doc.pop("k", None)
            doc["beta"] = [float(b) for b in args.beta]
        config = ExperimentConfig.from_dict(doc)
    except (OSError, ValueError, KeyError, json.JSONDecodeError) as exc:
        raise CliError(f"bad config: {exc}") from exc
    records = run_experiment(config)
    text = records_to_csv(records, config, __version__)
    with open(args.out, "w", encoding="utf-8") as fh:
        fh.write(text)
    bad = sum(1 for record in records if record.status != "ok")
    print(f"wrote {len(records)} rows to {args.out} ({bad} with failure status)")
    return EXIT_OK


def cmd_verify(args) -> int:
    try:
        if args.config is None:
            config = ExperimentConfig.from_dict(DEFAULT_VERIFY_CONFIG)
        else:
            config = ExperimentConfig.from_json(args.config)
    except (OSError, ValueError, KeyError, json.JSONDecodeError) as exc:
        raise CliError(f"bad config: {exc}") from exc
    report = run_verify(config)
    print(report.summary())
    return EXIT_OK if report.ok else EXIT_ASSERTION


def cmd_spectrum(args) -> int:
    model = _model_from_args(args)
    reference = closed_form_spectrum(model)
    decomposition = top_eigenpairs(adjacency(model), 4)
    closed = [reference.lambda1, reference.lambda2, reference.lambda3, reference.lambda4]
    numeric = decomposition.eigenvalues.tolist()
    # each closed-form value must appear somewhere in the full spectrum; the
    # frequency-two value need not be the numerically 4th largest
    full = np.linalg.eigvalsh(adjacency(model))
    nearest = [float(np.min(np.abs(full - lam))) for lam in closed]
    rows = [
        ("closed-form", closed),
        ("numeric top-4", numeric),
        ("nearest numeric", nearest),
    ]
    print(f"n={model.n} offsets={list(model.offsets)}")
    for name, values in rows:
        print(f"{name:>16}: " + "  ".join(f"{v: .10f}" for v in values))
    print(f"{'degeneracy':>16}: |lambda2 - lambda3| = {abs(numeric[1] - numeric[2]):.3e}")
    if args.out:
        _write_json(
            args.out,
            {
                "n": model.n,
                "offsets": list(model.offsets),
                "closed_form": closed,
                "numeric": numeric,
                "nearest_numeric_distance": nearest,
                "gap12": reference.gap12,
                "gap34": reference.gap34,
                "residuals": decomposition.residuals.tolist(),
            },
        )
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="circlayout", description=__doc__)
    parser.add_argument("--version", action="version", version=f"circlayout {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_model_args(p):
        p.add_argument("--n", type=int, required=True, help="vertex count")
        p.add_argument("--offsets", type=str, help="comma-separated offsets, e.g. 1,2,3")
        p.add_argument("--gamma", type=float, help="density exponent for offsets 1..ceil(c*n**gamma)")
        p.add_argument("--c", type=float, help="density constant")
        p.add_argument("--p", type=float, default=1.0, help="edge retention probability")

    p_gen = sub.add_parser("generate", help="write model JSON and edge list")
    add_model_args(p_gen)
    p_gen.add_argument("--out", required=True, help="output directory")
    p_gen.set_defaults(func=cmd_generate)

    p_lay = sub.add_parser("layout", help="recover a circular order from an edge list")
    p_lay.add_argument("edges", help="edge list path")
    p_lay.add_argument("--seed", type=int, help="seed for --shuffle")
    p_lay.add_argument("--shuffle", action="store_true", help="relabel vertices before recovery")
    p_lay.add_argument("--k", type=int, action="append", help="separation k for D_k (repeatable)")
    p_lay.add_argument("--out", required=True, help="output JSON path")
    p_lay.set_defaults(func=cmd_layout)

    p_exp = sub.add_parser("experiment", help="run a seeded sweep and write CSV records")
    p_exp.add_argument("--config", required=True, help="JSON config path")
    p_exp.add_argument("--out", required=True, help="output CSV path")
    p_exp.add_argument("--seed", type=int, help="override the config master seed")
    p_exp.add_argument("--trials", type=int, help="override trials per sweep point")
    p_exp.add_argument("--k", type=int, action="append", help="override separation list (repeatable)")
    p_exp.add_argument("--beta", type=float, action="append",
                       help="override separation exponents, k = ceil(n**beta) (repeatable)")
    p_exp.set_defaults(func=cmd_experiment)

    p_ver = sub.add_parser("verify", help="run the deterministic inequality suite")
    p_ver.add_argument("--config", help="JSON config path (default: built-in sweep)")
    p_ver.set_defaults(func=cmd_verify)

    p_spec = sub.add_parser("spectrum", help="closed-form vs numeric top eigenvalues")
    add_model_args(p_spec)
    p_spec.add_argument("--out", help="optional JSON output path")
    p_spec.set_defaults(func=cmd_spectrum)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except NumericalError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
