"""Command line front end: ``llip <subcommand> ...``.

Results go to stdout as JSON, diagnostics to stderr. Exit status is 0 on
success, 1 when a verification fails, and 2 on malformed input.
"""
from __future__ import annotations

import argparse
import sys

import numpy as np

from . import algebra, bounds, extension, io, operators
from .config import Config, load_config
from .errors import LLipError, SchemaError
from .grid import CompactGrid, make_interval_grid
from .selftest import run_selftest

EXIT_OK, EXIT_FAILED, EXIT_INPUT = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"error[usage]: {message}", file=sys.stderr)
        sys.exit(EXIT_INPUT)


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    g = p.add_argument_group("configuration")
    g.add_argument("--config", help="JSON config file (overrides $LLIP_CONFIG)")
    g.add_argument("--zero-tol", type=float)
    g.add_argument("--consistency-tol", type=float)
    g.add_argument("--threshold-factor", type=float, dest="continuity_threshold_factor")
    g.add_argument("--radius-factor", type=float, dest="adjacency_radius_factor")
    g.add_argument("--max-breakpoints", type=int)
    g.add_argument("--seed", type=int)
    g.add_argument("--verify-tol", type=float)
    p.add_argument("--grid", help="grid JSON/CSV for inputs that do not embed one")
    p.add_argument("--out", help="write the main result here instead of stdout")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = _Parser(prog="llip", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("grid", parents=[common], help="build or validate a grid")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--interval", nargs=3, metavar=("A", "B", "N"))
    src.add_argument("--points", help="grid JSON or CSV to validate")
    p.add_argument("--metric", default="euclidean", choices=["euclidean", "chebyshev"])

    p = sub.add_parser("eval", parents=[common], help="apply an operator to a function")
    p.add_argument("--op", required=True)
    p.add_argument("--input", required=True)

    p = sub.add_parser("bound", parents=[common], help="bound functions of a sampled operator")
    p.add_argument("--source", required=True, help="operator JSON (sample kind except for --mode ratio)")
    p.add_argument("--mode", required=True, choices=["ratio", "minimal", "constant", "majorant", "verify"])
    p.add_argument("--phi", help="bound function JSON (verify)")
    p.add_argument("--L", type=float, dest="lip", help="Lipschitz constant of the majorant")
    p.add_argument("--f", help="first function (ratio)")
    p.add_argument("--g", help="second function (ratio)")

    p = sub.add_parser("norms", parents=[common], help="LLip norm and sup-norm Lipschitz estimate")
    p.add_argument("--op", required=True)
    p.add_argument("--probes", type=int, default=32, help="number of random constant probe pairs")

    p = sub.add_parser("extend", parents=[common], help="pointwise McShane/Whitney extension")
    p.add_argument("--source", required=True)
    p.add_argument("--phi", required=True)
    p.add_argument("--input", required=True)
    p.add_argument("--method", default="mcshane", choices=list(extension.METHODS))
    p.add_argument("--diagnose", action="store_true")

    p = sub.add_parser("compose", parents=[common], help="compose two operators as fields")
    p.add_argument("--left", required=True, help="outer operator T2")
    p.add_argument("--right", required=True, help="inner operator T1")
    p.add_argument("--check-submult", action="store_true")

    p = sub.add_parser("tensor", parents=[common], help="convert between tensor and superposition forms")
    p.add_argument("--op", required=True)

    sub.add_parser("selftest", parents=[common], help="run the built-in regression cases")
    return parser


def _config(args) -> Config:
    keys = (
        "zero_tol",
        "consistency_tol",
        "continuity_threshold_factor",
        "adjacency_radius_factor",
        "max_breakpoints",
        "seed",
        "verify_tol",
    )
    return load_config(args.config, **{k: getattr(args, k) for k in keys})


def _grid(args) -> CompactGrid | None:
    return io.load_grid(args.grid) if args.grid else None


def _sample(op, what: str) -> operators.SampleOperator:
    if not isinstance(op, operators.SampleOperator):
        raise SchemaError(f"{what} must be an operator of kind 'sample', got {op.kind!r}")
    return op


def cmd_grid(args, cfg):
    if args.interval:
        try:
            a, b, n = float(args.interval[0]), float(args.interval[1]), int(args.interval[2])
        except ValueError:
            raise SchemaError("--interval expects two numbers and an integer") from None
        grid = make_interval_grid(a, b, n)
        if args.metric != "euclidean":
            grid = CompactGrid(grid.points, args.metric)
    else:
        grid = io.load_grid(args.points)
    out = io.grid_to_dict(grid)
    out["n"] = len(grid)
    out["median_spacing"] = grid.median_spacing()
    return out, EXIT_OK


def cmd_eval(args, cfg):
    op = io.load_operator(args.op, _grid(args))
    f = io.load_function(args.input, op.grid)
    return io.function_to_dict(operators.evaluate(op, f)), EXIT_OK


def cmd_bound(args, cfg):
    op = io.load_operator(args.source, _grid(args))
    ckw = cfg.continuity_kw()
    if args.mode == "ratio":
        if not (args.f and args.g):
            raise SchemaError("--mode ratio needs --f and --g")
        f = io.load_function(args.f, op.grid)
        g = io.load_function(args.g, op.grid)
        return {"ratio": io.function_to_dict(bounds.ratio_function(op, f, g, cfg.zero_tol))}, EXIT_OK
    T = _sample(op, "--source")
    if args.mode == "minimal":
        rep = bounds.minimal_envelope(T, cfg.zero_tol, **ckw)
    elif args.mode == "constant":
        rep = bounds.constant_bound(T, cfg.zero_tol, **ckw)
    elif args.mode == "majorant":
        if args.lip is None:
            raise SchemaError("--mode majorant needs --L")
        rep = bounds.majorant_bound(T, args.lip, cfg.zero_tol, **ckw)
    else:
        if not args.phi:
            raise SchemaError("--mode verify needs --phi")
        rep = bounds.verify_bound(T, io.load_function(args.phi, T.grid), cfg.zero_tol, **ckw)
    out = rep.to_dict()
    out["accepted"] = rep.max_violation <= cfg.verify_tol
    return out, EXIT_OK if out["accepted"] else EXIT_FAILED


def cmd_norms(args, cfg):
    op = io.load_operator(args.op, _grid(args))
    norm = bounds.llip_norm(op, cfg.zero_tol)
    witness = bounds.witness_probes(op)
    if isinstance(op, operators.SampleOperator):
        s = op.samples()
        probes = [(s[j][0], s[l][0]) for j in range(len(s)) for l in range(j + 1, len(s))]
    else:
        rng = np.random.default_rng(cfg.seed)
        probes = bounds.random_constant_probes(op.grid, rng, args.probes) + witness
    estimate = bounds.lip_norm_estimate(op, probes)
    f, g = witness[0]
    out = {
        "llip_norm": norm,
        "norm_kind": bounds.norm_kind(op),
        "lip_norm_estimate": estimate,
        "n_probes": len(probes),
        "witness": {
            "f": io.function_to_dict(f),
            "g": io.function_to_dict(g),
            "estimate": bounds.lip_norm_estimate(op, witness),
        },
    }
    status = EXIT_OK
    if out["norm_kind"] == "exact" and estimate > norm * (1 + 1e-9):
        print("error[verification]: sup-norm estimate exceeds the LLip norm", file=sys.stderr)
        status = EXIT_FAILED
    return out, status


def cmd_extend(args, cfg):
    T = _sample(io.load_operator(args.source, _grid(args)), "--source")
    phi = io.load_function(args.phi, T.grid)
    f = io.load_function(args.input, T.grid)
    spec = extension.ExtensionSpec(args.method, phi, T)
    status = EXIT_OK
    if args.diagnose:
        ext, cont, rep = extension.extend_and_diagnose(spec, f, zero_tol=cfg.zero_tol, **cfg.continuity_kw())
        gap = extension.extension_gap(spec, f)
        out = {
            "extension": io.function_to_dict(ext),
            "continuity": cont.to_dict(),
            "bound_report": rep.to_dict(),
            "gap": io.function_to_dict(gap),
        }
        if rep.max_violation > cfg.verify_tol or gap.values.min() < -cfg.verify_tol:
            print("error[verification]: bound function is violated by the samples", file=sys.stderr)
            status = EXIT_FAILED
    else:
        out = {"extension": io.function_to_dict(extension.extend(spec, f))}
    return out, status


def cmd_compose(args, cfg):
    grid = _grid(args)
    T2 = operators.as_field(io.load_operator(args.left, grid))
    T1 = operators.as_field(io.load_operator(args.right, grid))
    composed = algebra.compose(T2, T1, int(cfg.max_breakpoints))
    out = io.operator_to_dict(composed)
    status = EXIT_OK
    if args.check_submult:
        rep = algebra.submultiplicativity_check(T2, T1, composed)
        if not (rep.pointwise_ok and rep.global_ok):
            print("error[verification]: submultiplicativity fails", file=sys.stderr)
            status = EXIT_FAILED
        if args.out:
            io.write_text(args.out, io.dumps(out))
            return {"submultiplicativity": rep.to_dict()}, status
        out = {"operator": out, "submultiplicativity": rep.to_dict()}
    return out, status


def cmd_tensor(args, cfg):
    op = io.load_operator(args.op, _grid(args))
    if isinstance(op, operators.TensorOperator):
        field = operators.tensor_to_superposition(op)
        out = {"superposition": io.operator_to_dict(field)}
    elif isinstance(op, operators.SuperpositionField):
        field = op
        out = {"tensor": io.operator_to_dict(operators.superposition_to_tensor(op))}
    else:
        raise SchemaError("--op must be of kind 'tensor' or 'superposition'")
    out["epsilon_norm"] = float(field.lip_constants().max())
    return out, EXIT_OK


def cmd_selftest(args, cfg):
    results = run_selftest()
    failed = [r["name"] for r in results if not r["passed"]]
    for r in results:
        print(f"{'PASS' if r['passed'] else 'FAIL'} {r['name']}", file=sys.stderr)
    out = {"cases": results, "passed": len(results) - len(failed), "failed": len(failed)}
    return out, EXIT_FAILED if failed else EXIT_OK


COMMANDS = {
    "grid": cmd_grid,
    "eval": cmd_eval,
    "bound": cmd_bound,
    "norms": cmd_norms,
    "extend": cmd_extend,
    "compose": cmd_compose,
    "tensor": cmd_tensor,
    "selftest": cmd_selftest,
}


def run(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = _config(args)
        out, status = COMMANDS[args.command](args, cfg)
        text = io.dumps(out)
    except LLipError as exc:
        print(f"error[{exc.code}]: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if args.out and not (args.command == "compose" and args.check_submult):
        io.write_text(args.out, text)
    else:
        sys.stdout.write(text + "\n")
    return status


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
