"""Command-line surface: distance queries, farthest queries, label fields,
tie search, and the verification suites.

Configuration comes from a JSON file (path via --config or the
BREGFAR_CONFIG environment variable) holding a function spec and tolerance
overrides; individual flags always win over the file.  All records printed
to stdout are JSON with sorted keys and no timestamps, so identical inputs
give identical bytes.

Exit codes: 0 success; 1 verification failure; 2 invalid input (domain
violations, malformed configs or point sets, grid conflicts); 3 unwritable
output; 4 tie search precondition failure (equal witnesses).
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from .errors import BregfarError, DomainViolation, PointSetError, SameWitness
from .farthest import (DEFAULT_TIE_TOL, bregman_distance, find_tie,
                       left_farthest, right_farthest_direct)
from .grid import GridSpec, rasterize_field, write_field_csv, write_label_pgm
from .legendre import from_config
from .pointset import PointSet, load_point_array
from .verify import SuiteSizes, Tolerances, report_to_json, run_verification

__all__ = ["main"]

_ENV_CONFIG = "BREGFAR_CONFIG"

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_BAD_INPUT = 2
EXIT_UNWRITABLE = 3
EXIT_SAME_WITNESS = 4


def _parse_vector(text):
    try:
        return np.array([float(tok) for tok in text.split(",")], dtype=float)
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"expected comma-separated numbers, got {text!r}")


def _parse_resolution(text):
    try:
        return tuple(int(tok) for tok in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"expected comma-separated integers, got {text!r}")


def _load_config(path):
    if path is None:
        path = os.environ.get(_ENV_CONFIG)
    if path is None:
        return {}
    try:
        with open(path, "r", encoding="utf-8") as handle:
            config = json.load(handle)
    except (OSError, json.JSONDecodeError) as exc:
        raise PointSetError(f"cannot read config {path!r}: {exc}") from exc
    if not isinstance(config, dict):
        raise PointSetError(f"config {path!r} must hold a JSON object")
    return config


def _resolve_function(config, args, fallback_dimension=None):
    spec = dict(config.get("function", {}))
    if getattr(args, "kind", None):
        spec["kind"] = args.kind
    if getattr(args, "p", None) is not None:
        spec["p"] = args.p
    if getattr(args, "dimension", None) is not None:
        spec["dimension"] = args.dimension
    spec.setdefault("kind", "energy")
    if "dimension" not in spec:
        if fallback_dimension is None:
            raise ValueError("function dimension is not set; pass --dimension "
                             "or put it in the config")
        spec["dimension"] = fallback_dimension
    return from_config(spec)


def _resolve_tolerances(config, args):
    kwargs = {}
    for name in ("eps_tie", "identity_rtol", "fd_gradient_rtol",
                 "fd_hessian_rtol", "dini_band", "convexity_slack",
                 "tie_gap_rtol"):
        if name in config:
            kwargs[name] = float(config[name])
    if getattr(args, "eps_tie", None) is not None:
        kwargs["eps_tie"] = args.eps_tie
    return Tolerances(**kwargs)


def _emit(record):
    sys.stdout.write(json.dumps(record, sort_keys=True) + "\n")


def _cmd_eval(args):
    config = _load_config(args.config)
    f = _resolve_function(config, args, fallback_dimension=args.x.shape[0])
    f.domain.check(args.x, label="x")
    f.domain.check(args.y, label="y")
    d_xy = bregman_distance(f, args.x, args.y)
    d_yx = bregman_distance(f, args.y, args.x)
    _emit({
        "function": f.describe(),
        "x": args.x.tolist(),
        "y": args.y.tolist(),
        "distance_xy": d_xy,
        "distance_yx": d_yx,
        "asymmetry_gap": abs(d_xy - d_yx),
    })
    return EXIT_OK


def _cmd_farthest(args):
    config = _load_config(args.config)
    raw = load_point_array(args.points)
    f = _resolve_function(config, args, fallback_dimension=raw.shape[1])
    C = PointSet(raw, f)
    tol = _resolve_tolerances(config, args)
    if args.side == "left":
        result = left_farthest(f, C, args.y, tol.eps_tie)
    else:
        result = right_farthest_direct(f, C, args.y, tol.eps_tie)
    _emit({
        "function": f.describe(),
        "side": args.side,
        "y": args.y.tolist(),
        "value": result.value,
        "argmax_indices": list(result.argmax_indices),
        "witness": result.witness,
        "is_singleton": result.is_singleton,
    })
    return EXIT_OK


def _cmd_field(args):
    config = _load_config(args.config)
    raw = load_point_array(args.points)
    f = _resolve_function(config, args, fallback_dimension=raw.shape[1])
    C = PointSet(raw, f)
    tol = _resolve_tolerances(config, args)
    grid = GridSpec(args.lower, args.upper, args.resolution,
                    args.margin if args.margin is not None
                    else config.get("grid_margin", 1e-3))
    raster = rasterize_field(f, C, grid, tol.eps_tie)
    csv_path = args.out_prefix + ".csv"
    written = [csv_path]
    try:
        write_field_csv(csv_path, raster)
        if grid.dimension == 2:
            pgm_path = args.out_prefix + ".pgm"
            write_label_pgm(pgm_path, grid, raster, C.size)
            written.append(pgm_path)
    except OSError as exc:
        sys.stderr.write(f"cannot write output: {exc}\n")
        return EXIT_UNWRITABLE
    _emit({
        "function": f.describe(),
        "nodes": int(raster.nodes.shape[0]),
        "tie_nodes": int(np.count_nonzero(raster.tie_flags)),
        "files": written,
    })
    return EXIT_OK


def _cmd_tiefind(args):
    config = _load_config(args.config)
    raw = load_point_array(args.points)
    f = _resolve_function(config, args, fallback_dimension=raw.shape[1])
    C = PointSet(raw, f)
    tol = _resolve_tolerances(config, args)
    witness = find_tie(f, C, args.a, args.b, tol.eps_tie)
    value = left_farthest(f, C, witness.location, tol.eps_tie).value
    _emit({
        "function": f.describe(),
        "location": witness.location.tolist(),
        "top_gap": witness.top_gap,
        "pair": list(witness.pair),
        "farthest_value": value,
    })
    return EXIT_OK


def _cmd_verify(args):
    config = _load_config(args.config)
    tol = _resolve_tolerances(config, args)
    seed = args.seed if args.seed is not None else int(config.get("seed", 2024))
    sizes = SuiteSizes.quick() if args.sizes == "quick" else SuiteSizes()
    report, all_passed = run_verification(seed=seed, sizes=sizes, tol=tol)
    text = report_to_json(report)
    if args.out is not None:
        try:
            with open(args.out, "w", encoding="utf-8") as handle:
                handle.write(text)
        except OSError as exc:
            sys.stderr.write(f"cannot write report: {exc}\n")
            return EXIT_UNWRITABLE
    sys.stdout.write(text)
    return EXIT_OK if all_passed else EXIT_VERIFY_FAILED


def _build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", default=None,
                        help=f"JSON config path (default: ${_ENV_CONFIG})")
    common.add_argument("--kind", choices=("energy", "shannon", "ppower"),
                        default=None, help="catalog member")
    common.add_argument("--p", type=float, default=None,
                        help="exponent for the ppower member")
    common.add_argument("--dimension", type=int, default=None)
    common.add_argument("--eps-tie", dest="eps_tie", type=float, default=None,
                        help="relative tie tolerance for argmax sets")
    common.add_argument("--seed", type=int, default=None,
                        help="seed for randomized suites")

    parser = argparse.ArgumentParser(
        prog="bregfar",
        description="Distance, farthest-point, and tie-geometry queries "
                    "over finite point sets")
    sub = parser.add_subparsers(dest="command", required=True)

    p_eval = sub.add_parser("eval", parents=[common],
                            help="evaluate the distance both ways")
    p_eval.add_argument("-x", type=_parse_vector, required=True)
    p_eval.add_argument("-y", type=_parse_vector, required=True)
    p_eval.set_defaults(func=_cmd_eval)

    p_far = sub.add_parser("farthest", parents=[common],
                           help="farthest point of a query over a set")
    p_far.add_argument("--points", required=True, help="JSON or CSV point set")
    p_far.add_argument("-y", type=_parse_vector, required=True)
    p_far.add_argument("--side", choices=("left", "right"), default="left")
    p_far.set_defaults(func=_cmd_farthest)

    p_field = sub.add_parser("field", parents=[common],
                             help="rasterize the farthest-label field")
    p_field.add_argument("--points", required=True)
    p_field.add_argument("--lower", type=_parse_vector, required=True)
    p_field.add_argument("--upper", type=_parse_vector, required=True)
    p_field.add_argument("--resolution", type=_parse_resolution, required=True)
    p_field.add_argument("--margin", type=float, default=None)
    p_field.add_argument("--out-prefix", required=True)
    p_field.set_defaults(func=_cmd_field)

    p_tie = sub.add_parser("tiefind", parents=[common],
                           help="find a farthest-point tie on a segment")
    p_tie.add_argument("--points", required=True)
    p_tie.add_argument("--a", type=_parse_vector, required=True)
    p_tie.add_argument("--b", type=_parse_vector, required=True)
    p_tie.set_defaults(func=_cmd_tiefind)

    p_verify = sub.add_parser("verify", parents=[common],
                              help="run the verification suites")
    p_verify.add_argument("--sizes", choices=("default", "quick"),
                          default="default")
    p_verify.add_argument("--out", default=None, help="report file path")
    p_verify.set_defaults(func=_cmd_verify)
    return parser


# flags whose values may open with a minus sign; argparse would otherwise
# read "-1,-1" as an unknown option
_VECTOR_FLAGS = ("-x", "-y", "--a", "--b", "--lower", "--upper")


def _merge_negative_values(argv):
    out = []
    i = 0
    while i < len(argv):
        tok = argv[i]
        if tok in _VECTOR_FLAGS and i + 1 < len(argv):
            nxt = argv[i + 1]
            if len(nxt) > 1 and nxt[0] == "-" and (nxt[1].isdigit()
                                                   or nxt[1] == "."):
                joiner = "=" if tok.startswith("--") else ""
                out.append(tok + joiner + nxt)
                i += 2
                continue
        out.append(tok)
        i += 1
    return out


def main(argv=None):
    parser = _build_parser()
    if argv is None:
        argv = sys.argv[1:]
    args = parser.parse_args(_merge_negative_values(list(argv)))
    try:
        return args.func(args)
    except SameWitness as exc:
        sys.stderr.write(f"tie search failed: {exc}\n")
        return EXIT_SAME_WITNESS
    except DomainViolation as exc:
        sys.stderr.write(f"domain violation: {exc}\n")
        return EXIT_BAD_INPUT
    except (PointSetError, ValueError) as exc:
        sys.stderr.write(f"invalid input: {exc}\n")
        return EXIT_BAD_INPUT
    except BregfarError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_BAD_INPUT
    except OSError as exc:
        sys.stderr.write(f"cannot write output: {exc}\n")
        return EXIT_UNWRITABLE


if __name__ == "__main__":
    sys.exit(main())
