"""Command-line front end.

Commands:
    classify  <file> [--k K ...] [--p P ...] [--tol T] [--format F]
    decompose <mode> <file> [--n N] [--k K] [--format F]
    generate  <kind> [kind flags] --seed S -o <file> [--format F]
    verify    <theorem_id|all> [--trials N] [--max-dim D] [--seed S] -o <file>

Exit codes: 0 success, 1 error, 2 inconclusive verdicts only. The
environment variable OPCLASS_SEED supplies the default seed. Output files
are written atomically (temporary file plus rename).
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import os
import sys

from . import generators as gen
from . import harness as hs
from .decomposition import nilpotent2_canonical, normal_pure_split, root_decompose
from .errors import OpclassError, UnknownTheorem
from .linalg import DEFAULT_TOLERANCES, TolerancePolicy
from .matio import atomic_write_text, detect_format, load_matrix, save_matrix
from .membership import (
    Status,
    chain_violations,
    classify_all,
    is_k_quasi_paranormal,
    is_normal,
    is_normaloid,
)

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_INCONCLUSIVE = 2


def _default_seed() -> int:
    raw = os.environ.get("OPCLASS_SEED", "0")
    try:
        return int(raw)
    except ValueError:
        return 0


def _tolerances(args) -> TolerancePolicy:
    tol = getattr(args, "tol", None)
    if tol is None:
        return DEFAULT_TOLERANCES
    return dataclasses.replace(DEFAULT_TOLERANCES, tol_decision=float(tol))


def _emit(doc: dict, out: str | None) -> None:
    text = json.dumps(doc, indent=2) + "\n"
    if out:
        atomic_write_text(out, text)
    else:
        sys.stdout.write(text)


def _error_doc(exc: Exception) -> dict:
    return {"error": {"type": type(exc).__name__, "message": str(exc)}}


def cmd_classify(args) -> int:
    tol = _tolerances(args)
    seed = args.seed if args.seed is not None else _default_seed()
    try:
        matrix = load_matrix(args.file, args.format)
        verdicts = classify_all(
            matrix, k_list=tuple(args.k), p_list=tuple(args.p), tol=tol, seed=seed
        )
    except OpclassError as exc:
        _emit(_error_doc(exc), None)
        return EXIT_ERROR
    rows = []
    for cls, verdict in verdicts.items():
        row = {"class": cls.name, "params": cls.params}
        row.update(verdict.to_json_dict())
        rows.append(row)
    doc = {
        "command": "classify",
        "input": str(args.file),
        "seed": seed,
        "tolerances": tol.to_json_dict(),
        "verdicts": rows,
        "chain_violations": chain_violations(verdicts),
    }
    _emit(doc, None)
    if any(v.status is Status.INCONCLUSIVE for v in verdicts.values()):
        return EXIT_INCONCLUSIVE
    return EXIT_OK


def cmd_decompose(args) -> int:
    tol = _tolerances(args)
    seed = args.seed if args.seed is not None else _default_seed()
    try:
        matrix = load_matrix(args.file, args.format)
        if args.mode == "normal-pure":
            decomp = normal_pure_split(matrix, tol)
        elif args.mode == "root":
            if args.n is None or args.k is None:
                raise OpclassError("root mode requires --n and --k")
            decomp = root_decompose(matrix, args.n, args.k, tol, seed=seed)
        else:
            decomp = nilpotent2_canonical(matrix, tol)
    except OpclassError as exc:
        _emit(_error_doc(exc), None)
        return EXIT_ERROR
    doc = {
        "command": "decompose",
        "mode": args.mode,
        "input": str(args.file),
        "n": args.n,
        "k": args.k,
        "tolerances": tol.to_json_dict(),
        "decomposition": decomp.to_json_dict(),
    }
    _emit(doc, None)
    return EXIT_OK


def _build_spec(args) -> gen.GenSpec:
    kind = args.kind
    params: dict = {}
    if kind in ("unitary", "normal", "ginibre"):
        params["dim"] = args.dim
    elif kind == "jordan":
        params["dim"] = args.dim
        params["index"] = args.index
    elif kind == "counterexample":
        params["dim_m"] = args.dim_m
        params["dim_n"] = args.dim_n
    elif kind == "scalar-root":
        lam = complex(args.lam)
        params["dim"] = args.dim
        params["n"] = args.n
        params["lambda"] = [lam.real, lam.imag]
    elif kind == "k-quasi":
        params["dim_normal"] = args.dim_normal
        params["dim_nil"] = args.dim_nil
        params["k"] = args.k
    elif kind == "rr":
        params["dim_a"] = args.dim_a
        params["dim_bc"] = args.dim_bc
        params["b_zero"] = bool(args.b_zero)
    return gen.GenSpec(kind=kind, seed=args.seed, params=params)


def _certify(kind: str, matrix, params: dict, seed: int, tol: TolerancePolicy) -> dict:
    """Self-certification verdicts recorded in the generator sidecar."""
    from .decomposition import rr_check
    from .linalg import matrix_power
    from .membership import is_quasinormal

    cert: dict = {}
    if kind in ("unitary", "normal"):
        cert["normal"] = is_normal(matrix, tol)
    if kind == "unitary":
        cert["normaloid"] = is_normaloid(matrix, tol)
    if kind == "jordan":
        k = max(1, int(params["index"]) - 1)
        cert[f"k_quasi_paranormal[k={k}]"] = is_k_quasi_paranormal(
            matrix, k, tol, seed=seed
        )
        cert["normaloid"] = is_normaloid(matrix, tol)
    if kind == "counterexample":
        cert["normaloid"] = is_normaloid(matrix, tol)
        cert["normal"] = is_normal(matrix, tol)
        cert["normal_square"] = is_normal(matrix @ matrix, tol)
        cert["paranormal"] = is_k_quasi_paranormal(matrix, 0, tol, seed=seed)
        cert["k_quasi_paranormal[k=1]"] = is_k_quasi_paranormal(matrix, 1, tol, seed=seed)
    if kind == "scalar-root":
        cert["normal"] = is_normal(matrix, tol)
        cert["quasinormal"] = is_quasinormal(matrix, tol)
    if kind == "k-quasi":
        k = int(params["k"])
        cert[f"k_quasi_paranormal[k={k}]"] = is_k_quasi_paranormal(
            matrix, max(1, k), tol, seed=seed
        )
    if kind == "rr":
        cert["square_of_normal"] = rr_check(matrix, tol)
    if kind == "ginibre":
        cert["normal"] = is_normal(matrix, tol)
    return {name: verdict.to_json_dict() for name, verdict in cert.items()}


def cmd_generate(args) -> int:
    tol = _tolerances(args)
    try:
        spec = _build_spec(args)
        matrix = gen.build(spec)
        fmt = detect_format(args.output, args.format)
        save_matrix(args.output, matrix, fmt)
        sidecar = {
            "spec": spec.to_json_dict(),
            "format": fmt,
            "tolerances": tol.to_json_dict(),
            "certification": _certify(spec.kind, matrix, spec.params, spec.seed, tol),
        }
        atomic_write_text(f"{args.output}.sidecar.json", json.dumps(sidecar, indent=2) + "\n")
    except (OpclassError, ValueError) as exc:
        _emit(_error_doc(exc), None)
        return EXIT_ERROR
    _emit({"command": "generate", "output": str(args.output),
           "sidecar": f"{args.output}.sidecar.json"}, None)
    return EXIT_OK


def cmd_verify(args) -> int:
    tol = _tolerances(args)
    seed = args.seed if args.seed is not None else _default_seed()
    suites = hs.THEOREM_IDS if args.theorem_id == "all" else (args.theorem_id,)
    cfg = hs.SuiteConfig(
        suites=tuple(suites),
        trials=args.trials,
        max_dim=args.max_dim,
        seed=seed,
        tolerances=tol,
    )
    try:
        reports = hs.run_suite(cfg)
    except UnknownTheorem as exc:
        _emit(_error_doc(exc), None)
        return EXIT_ERROR
    doc = hs.suite_report_json_dict(cfg, reports)
    if args.output:
        atomic_write_text(args.output, json.dumps(doc, indent=2) + "\n")
    summary = {
        "command": "verify",
        "output": str(args.output) if args.output else None,
        "failures_total": doc["failures_total"],
        "suites": {r.theorem_id: {"trials": r.trials, "passes": r.passes,
                                  "skips": r.skips, "failures": len(r.failures)}
                   for r in reports},
    }
    _emit(summary, None)
    return EXIT_OK if doc["failures_total"] == 0 else EXIT_ERROR


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--tol", type=float, default=None,
                   help="override the decision tolerance")
    p.add_argument("--format", choices=["json", "matrix-market"], default=None,
                   help="matrix file format (default: by extension)")
    p.add_argument("--seed", type=int, default=None,
                   help="seed (default: OPCLASS_SEED or 0)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="opclass",
        description="Operator-class membership, decompositions, generators, "
                    "and theorem property suites for complex matrices.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="decide class memberships of a matrix file")
    p.add_argument("file")
    p.add_argument("--k", type=int, nargs="+", default=[1, 2, 3])
    p.add_argument("--p", type=float, nargs="+", default=[0.5])
    _add_common(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("decompose", help="run a structural decomposition")
    p.add_argument("mode", choices=["normal-pure", "root", "nilpotent2"])
    p.add_argument("file")
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--k", type=int, default=None)
    _add_common(p)
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("generate", help="generate a structured matrix plus sidecar")
    kinds = sub_gen = p.add_subparsers(dest="kind", required=True)
    for kind in gen.GENERATOR_KINDS:
        sp = sub_gen.add_parser(kind)
        if kind in ("unitary", "normal", "ginibre", "jordan", "scalar-root"):
            sp.add_argument("--dim", type=int, required=True)
        if kind == "jordan":
            sp.add_argument("--index", type=int, required=True)
        if kind == "counterexample":
            sp.add_argument("--dim-m", dest="dim_m", type=int, required=True)
            sp.add_argument("--dim-n", dest="dim_n", type=int, required=True)
        if kind == "scalar-root":
            sp.add_argument("--n", type=int, required=True)
            sp.add_argument("--lam", type=str, default="1",
                            help="complex scalar, e.g. '8' or '1+2j'")
        if kind == "k-quasi":
            sp.add_argument("--dim-normal", dest="dim_normal", type=int, required=True)
            sp.add_argument("--dim-nil", dest="dim_nil", type=int, required=True)
            sp.add_argument("--k", type=int, required=True)
        if kind == "rr":
            sp.add_argument("--dim-a", dest="dim_a", type=int, required=True)
            sp.add_argument("--dim-bc", dest="dim_bc", type=int, required=True)
            sp.add_argument("--b-zero", dest="b_zero", action="store_true")
        sp.add_argument("-o", "--output", required=True)
        sp.add_argument("--seed", type=int, default=_default_seed())
        sp.add_argument("--tol", type=float, default=None)
        sp.add_argument("--format", choices=["json", "matrix-market"], default=None)
        sp.set_defaults(func=cmd_generate, kind=kind)

    p = sub.add_parser("verify", help="run theorem property suites")
    p.add_argument("theorem_id",
                   help="one of %s, search-q2, or 'all'" % ", ".join(hs.THEOREM_IDS))
    p.add_argument("--trials", type=int, default=50)
    p.add_argument("--max-dim", dest="max_dim", type=int, default=8)
    p.add_argument("-o", "--output", default=None)
    p.add_argument("--tol", type=float, default=None)
    p.add_argument("--seed", type=int, default=None)
    p.set_defaults(func=cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except OpclassError as exc:
        _emit(_error_doc(exc), None)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
