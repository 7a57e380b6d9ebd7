"""Command line surface: generate / verify / classify / decompose / reduce / audit.

Exit codes: 0 all checks pass, 1 a checked property fails (not H-normal,
bound violated, failed reduction hypothesis, failed audit case), 2 input or
usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction
from pathlib import Path

from . import __version__
from .classify import classify, reduce_conjugate_pair, reduce_single_eigenvalue
from .decompose import (
    DEFAULT_BUDGET,
    STATUS_DECOMPOSABLE,
    certify_family,
    default_seed,
    search_decomposition,
    verify_certificate,
)
from .exceptions import (
    KreinError,
    NotHermitian,
    NotHNormal,
    NotSingleEigenvalue,
    ParameterError,
    S0NotNeutral,
    SchemaError,
    SingularH,
    WrongSpectrum,
)
from .pairdoc import (
    matrix_to_rows,
    pair_to_doc,
    parse_document,
    pretty_format,
    serialize_pair,
)
from .scalars import format_scalar, parse_scalar
from .spaces import is_h_normal
from .witnesses import (
    WitnessPair,
    admissible_ks,
    build_witness,
)

_CLI_FAMILIES = {
    "a-lower": "complex-a-lower",
    "a-upper": "complex-a-upper",
    "b": "complex-b",
    "c-even": "real-c-even",
    "c-odd": "real-c-odd",
    "d": "real-d",
    "e": "real-e",
}
_FAMILY_TO_CLI = {v: k for k, v in _CLI_FAMILIES.items()}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="krein",
        description="Construct, classify and verify normal matrices in indefinite scalar product spaces.",
    )
    p.add_argument("--version", action="version", version=f"krein {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", help="emit a witness pair document")
    g.add_argument("--family", required=True, choices=sorted(_CLI_FAMILIES))
    g.add_argument("--k", type=int, required=True)
    g.add_argument("--lambda", dest="lam", help="eigenvalue (families a-lower, a-upper, d)")
    g.add_argument("--l1", help="first eigenvalue (family b)")
    g.add_argument("--l2", help="second eigenvalue (family b)")
    g.add_argument("--alpha", help="real part (families c-even, c-odd, d)")
    g.add_argument("--beta", help="imaginary part, positive (families c-even, c-odd, d)")
    g.add_argument("--alpha1", help="first real part (family e)")
    g.add_argument("--beta1", help="first imaginary part (family e)")
    g.add_argument("--alpha2", help="second real part (family e)")
    g.add_argument("--beta2", help="second imaginary part (family e)")
    g.add_argument("--r", help="comma separated r parameters (family a-upper)")
    g.add_argument("--out", help="output path (default stdout)")
    g.add_argument("--format", choices=("json", "pretty"), default="json")

    for name, help_text in (
        ("verify", "check H-normality and print signature/rank"),
        ("classify", "print the classification report"),
    ):
        s = sub.add_parser(name, help=help_text)
        s.add_argument("paths", nargs="+")

    d = sub.add_parser("decompose", help="search for a decomposition witness")
    d.add_argument("paths", nargs="+")
    d.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    d.add_argument("--seed", type=int, default=None)

    r = sub.add_parser("reduce", help="canonical corner reduction")
    r.add_argument("path")
    r.add_argument("--lambda", dest="lam", help="single eigenvalue (complex reduction)")
    r.add_argument("--alpha", help="real part (real conjugate-pair reduction)")
    r.add_argument("--beta", help="imaginary part (real conjugate-pair reduction)")

    a = sub.add_parser("audit", help="run the whole witness verification pipeline")
    a.add_argument("--kmax", type=int, default=4)
    a.add_argument(
        "--families",
        help="comma separated family list (default: all)",
        default=",".join(sorted(_CLI_FAMILIES)),
    )
    a.add_argument("--log", default="krein-audit.jsonl")
    a.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    a.add_argument("--seed", type=int, default=None)
    a.add_argument("--extra", action="append", default=[], help="extra pair document to audit")
    return p


def _collect_params(args) -> dict:
    params = {}
    for flag, key in (
        ("lam", "lambda"),
        ("l1", "l1"),
        ("l2", "l2"),
    ):
        val = getattr(args, flag, None)
        if val is not None:
            params[key] = parse_scalar(val)
    for flag in ("alpha", "beta", "alpha1", "beta1", "alpha2", "beta2"):
        val = getattr(args, flag, None)
        if val is not None:
            params[flag] = Fraction(val)
    if getattr(args, "r", None):
        params["r"] = [Fraction(tok) for tok in args.r.split(",") if tok]
    return params


def _witness_metadata(w: WitnessPair) -> dict:
    meta = {
        "family": _FAMILY_TO_CLI[w.spec.family],
        "k": w.spec.k,
        "eigen_params": [format_scalar(p) for p in w.spec.eigen_params],
        "expected_case": w.expected_case,
        "expected_n": w.expected_n,
        "expected_signature": list(w.expected_signature),
        "certificate_recipe": w.certificate_recipe,
        "tool_version": __version__,
    }
    if w.spec.r_params is not None:
        meta["r"] = [str(x) for x in w.spec.r_params]
    return meta


def _cmd_generate(args) -> int:
    w = build_witness(_CLI_FAMILIES[args.family], args.k, _collect_params(args))
    meta = _witness_metadata(w)
    text = (
        serialize_pair(w.pair, meta)
        if args.format == "json"
        else pretty_format(w.pair, meta)
    )
    if args.out:
        Path(args.out).write_text(text + "\n", encoding="utf-8")
    else:
        print(text)
    return 0


def _load(path: str):
    try:
        data = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise SchemaError(f"cannot read {path}: {exc}") from None
    return parse_document(data)


def _cmd_verify(args) -> int:
    rc = 0
    for path in args.paths:
        pair, _ = _load(path)
        normal = is_h_normal(pair)
        sig = pair.space.signature
        report = {
            "path": path,
            "h_normal": normal,
            "signature": list(sig),
            "rank": min(sig),
            "n": pair.n,
            "field": pair.field,
        }
        print(json.dumps(report, sort_keys=True))
        if not normal:
            rc = 1
    return rc


def _cmd_classify(args) -> int:
    rc = 0
    for path in args.paths:
        pair, _ = _load(path)
        try:
            report = classify(pair)
        except NotHNormal as exc:
            print(json.dumps({"path": path, "error": str(exc)}))
            rc = 1
            continue
        doc = report.to_json_dict()
        doc["path"] = path
        print(json.dumps(doc, sort_keys=True))
        if report.bound_ok is False:
            rc = 1
    return rc


def _cmd_decompose(args) -> int:
    rc = 0
    for path in args.paths:
        pair, _ = _load(path)
        if not is_h_normal(pair):
            print(json.dumps({"path": path, "error": "pair is not H-normal"}))
            rc = 1
            continue
        verdict = search_decomposition(pair, budget=args.budget, seed=args.seed)
        doc = verdict.to_json_dict()
        doc["path"] = path
        print(json.dumps(doc, sort_keys=True))
    return rc


def _cmd_reduce(args) -> int:
    pair, _ = _load(args.path)
    has_lam = args.lam is not None
    has_pair = args.alpha is not None and args.beta is not None
    if has_lam == has_pair:
        raise ParameterError("pass either --lambda or both --alpha and --beta")
    try:
        if has_lam:
            red = reduce_single_eigenvalue(pair, parse_scalar(args.lam))
        else:
            red = reduce_conjugate_pair(pair, Fraction(args.alpha), Fraction(args.beta))
    except (NotSingleEigenvalue, WrongSpectrum, S0NotNeutral) as exc:
        print(json.dumps({"path": args.path, "error": str(exc)}))
        return 1
    doc = {
        "path": args.path,
        "block_dims": list(red.block_dims),
        "transform": matrix_to_rows(red.transform),
        "reduced_N": matrix_to_rows(red.reduced_n),
        "reduced_H": matrix_to_rows(red.reduced_h),
    }
    print(json.dumps(doc, sort_keys=True))
    return 0


def _audit_witness_case(family: str, k: int, budget: int, seed: int) -> dict:
    t0 = time.perf_counter()
    w = build_witness(family, k, {})
    pair = w.pair
    checks = {}
    checks["h_normal"] = is_h_normal(pair)
    checks["signature_ok"] = pair.space.signature == w.expected_signature
    report = classify(pair)
    checks["case_ok"] = report.case_label == w.expected_case
    checks["bound_ok"] = bool(report.bound_ok)
    checks["n_ok"] = report.n == w.expected_n
    cert = certify_family(w)
    checks["certificate_verified"] = verify_certificate(pair, cert)
    verdict = search_decomposition(pair, budget=budget, seed=seed)
    checks["never_decomposable"] = verdict.status != STATUS_DECOMPOSABLE
    passed = all(checks.values())
    return {
        "input": {"family": _FAMILY_TO_CLI[family], "k": k},
        "pair": pair_to_doc(pair, _witness_metadata(w)),
        "classification": report.to_json_dict(),
        "certificate": cert.to_json_dict(),
        "search": verdict.to_json_dict(),
        "checks": checks,
        "passed": passed,
        "elapsed_ms": round(1000 * (time.perf_counter() - t0), 3),
        "tool_version": __version__,
        "schema_version": "1",
    }


def _audit_extra_case(path: str, budget: int, seed: int) -> dict:
    t0 = time.perf_counter()
    pair, meta = _load(path)
    checks = {"h_normal": is_h_normal(pair)}
    record = {
        "input": {"path": path},
        "pair": pair_to_doc(pair, meta or None),
        "tool_version": __version__,
        "schema_version": "1",
    }
    if checks["h_normal"]:
        report = classify(pair)
        record["classification"] = report.to_json_dict()
        if "expected_case" in meta:
            checks["case_ok"] = report.case_label == meta["expected_case"]
        verdict = search_decomposition(pair, budget=budget, seed=seed)
        record["search"] = verdict.to_json_dict()
    record["checks"] = checks
    record["passed"] = all(checks.values())
    record["elapsed_ms"] = round(1000 * (time.perf_counter() - t0), 3)
    return record


def _cmd_audit(args) -> int:
    seed = args.seed if args.seed is not None else default_seed()
    families = []
    for tok in args.families.split(","):
        tok = tok.strip()
        if not tok:
            continue
        if tok not in _CLI_FAMILIES:
            raise ParameterError(f"unknown family {tok!r}")
        families.append(_CLI_FAMILIES[tok])
    records = []
    failed = None
    for family in families:
        ks = admissible_ks(family, args.kmax)
        if not ks:
            print(
                f"warning: family {_FAMILY_TO_CLI[family]} has no admissible k <= {args.kmax}",
                file=sys.stderr,
            )
        for k in ks:
            rec = _audit_witness_case(family, k, args.budget, seed)
            records.append(rec)
            status = "ok" if rec["passed"] else "FAIL"
            print(
                f"{status} family={rec['input']['family']} k={k} "
                f"n={rec['classification']['n']} case={rec['classification']['case']} "
                f"({rec['elapsed_ms']} ms)"
            )
            if not rec["passed"] and failed is None:
                failed = rec["input"]
    for path in args.extra:
        rec = _audit_extra_case(path, args.budget, seed)
        records.append(rec)
        status = "ok" if rec["passed"] else "FAIL"
        print(f"{status} extra={path} ({rec['elapsed_ms']} ms)")
        if not rec["passed"] and failed is None:
            failed = rec["input"]
    log_path = Path(args.log)
    with log_path.open("w", encoding="utf-8") as fh:
        for rec in records:
            fh.write(json.dumps(rec, sort_keys=True) + "\n")
    total = len(records)
    ok = sum(1 for r in records if r["passed"])
    print(f"audit: {ok}/{total} cases passed; log written to {log_path}")
    if failed is not None:
        print(f"audit: first failing case: {failed}", file=sys.stderr)
        return 1
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if args.command == "generate":
            return _cmd_generate(args)
        if args.command == "verify":
            return _cmd_verify(args)
        if args.command == "classify":
            return _cmd_classify(args)
        if args.command == "decompose":
            return _cmd_decompose(args)
        if args.command == "reduce":
            return _cmd_reduce(args)
        if args.command == "audit":
            return _cmd_audit(args)
        parser.error(f"unknown command {args.command!r}")
    except (SchemaError, NotHermitian, SingularH, ParameterError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except KreinError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
