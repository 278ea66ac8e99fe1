"""Command-line front end.

Verbs: sl2 simple / sl2 weyl / sl2 scan, verify-identities, sl3 analyze /
sl3 example-machine, selftest.  Single queries print compact JSON with a
schema tag; scans print TSV (default) or JSON.  Output is deterministic:
identical invocations produce byte-identical output, also under --jobs.

Exit codes: 0 affirmative (Yes / ProvenYes), 1 structured error, 2 missing
character data (supply a table entry for the named weight), 3 No,
4 Inconclusive, 5 verification failure (oracle disagreement, identity
failure, selftest failure).
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from concurrent.futures import ThreadPoolExecutor

from . import selftest as selftest_mod
from .cache import CharacterStore
from .charlat import digits, require_prime
from .sl2chars import y_identity_check, y_identity_form
from .sl2verdict import (
    Verdict,
    VerdictKind,
    normalize_frobenius,
    simple_verdict,
    sufficiency_oracle_simple,
    weyl_oracle,
    weyl_verdict,
)
from .sl3verdict import (
    AdaptationFailureError,
    example_machine,
    load_character_table,
    sl3_verdict,
    steinberg_digits_a2,
)

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_MISSING_DATA = 2
EXIT_NO = 3
EXIT_INCONCLUSIVE = 4
EXIT_VERIFY_FAILED = 5

_JSON_KW = {"sort_keys": True, "separators": (",", ":")}


def _emit(obj) -> None:
    print(json.dumps(obj, **_JSON_KW))


def _error(message: str, *, error_type: str = "value-error", **extra) -> int:
    payload = {"schema": "redpairs/error/1", "error": message, "error_type": error_type}
    payload.update(extra)
    _emit(payload)
    return EXIT_ERROR


def _adaptation_error(exc: AdaptationFailureError) -> int:
    _emit(
        {
            "schema": "redpairs/error/1",
            "error": str(exc),
            "error_type": "adaptation-failure",
            "p": exc.p,
            "missing_weight": list(exc.weight),
        }
    )
    return EXIT_MISSING_DATA


def _verdict_exit(kind: VerdictKind) -> int:
    if kind in (VerdictKind.Yes, VerdictKind.ProvenYes):
        return EXIT_OK
    if kind is VerdictKind.No:
        return EXIT_NO
    return EXIT_INCONCLUSIVE


class _Parser(argparse.ArgumentParser):
    """Usage errors exit 1 with a structured payload (2 is reserved)."""

    def error(self, message):
        _error(message, error_type="usage")
        raise SystemExit(EXIT_ERROR)


def _pair(text: str) -> tuple:
    parts = text.split(",")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"expected 'a,b', got {text!r}")
    try:
        return (int(parts[0]), int(parts[1]))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected integers 'a,b', got {text!r}")


def _add_cache_flags(sub) -> None:
    sub.add_argument("--no-cache", action="store_true", help="skip the persistent character cache")
    sub.add_argument("--cache-dir", default=None, help="cache directory override")


class _CacheSession:
    """Loads the persistent store on entry, appends new characters on exit."""

    def __init__(self, args):
        self.enabled = not getattr(args, "no_cache", True)
        self.store = CharacterStore(getattr(args, "cache_dir", None)) if self.enabled else None

    def __enter__(self):
        if self.store is not None:
            try:
                self.store.load()
            except OSError:
                self.store = None
        return self

    def __exit__(self, exc_type, exc, tb):
        if self.store is not None and exc_type is None:
            try:
                self.store.flush()
            except OSError:
                pass
        return False


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="redpairs",
        description="Exact character arithmetic deciding which SL2 and SL3 "
        "modules give reductive pairs.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sl2 = sub.add_parser("sl2", help="rank-1 classifiers and scans")
    sl2sub = sl2.add_subparsers(dest="sl2_command", required=True)

    s = sl2sub.add_parser("simple", help="digit-rule verdict for a simple module")
    s.add_argument("-p", type=int, required=True)
    s.add_argument("-l", "--weight", type=int, required=True)
    s.add_argument("--explain", action="store_true", help="include digits and normalization")
    s.add_argument("--oracle", action="store_true", help="also run the sufficiency oracle")
    _add_cache_flags(s)

    w = sl2sub.add_parser("weyl", help="congruence-rule verdict for a symmetric power")
    w.add_argument("-p", type=int, required=True)
    w.add_argument("-n", type=int, required=True)
    w.add_argument("--oracle", action="store_true", help="also run the tilting-peel oracle")
    _add_cache_flags(w)

    sc = sl2sub.add_parser("scan", help="verdicts for every weight up to a bound")
    sc.add_argument("--kind", choices=("simple", "weyl"), required=True)
    sc.add_argument("-p", type=int, required=True)
    sc.add_argument("--max", type=int, required=True, dest="max_weight")
    sc.add_argument("--format", choices=("tsv", "json"), default="tsv")
    sc.add_argument("--oracle", action="store_true")
    sc.add_argument("--jobs", type=int, default=1)
    sc.add_argument("--timing", action="store_true", help="include a per-row microseconds column")
    _add_cache_flags(sc)

    v = sub.add_parser("verify-identities", help="check the y-family recursions exactly")
    v.add_argument("-p", type=int, required=True)
    v.add_argument("--max-m", type=int, default=40, dest="max_m")

    sl3 = sub.add_parser("sl3", help="rank-2 analysis")
    sl3sub = sl3.add_subparsers(dest="sl3_command", required=True)

    a = sl3sub.add_parser("analyze", help="mask analysis of one simple module")
    a.add_argument("-p", type=int, required=True)
    a.add_argument("-w", "--weight", type=_pair, required=True)
    a.add_argument("--table", default=None, help="JSON-lines character table file")
    a.add_argument("--strict", action="store_true")
    a.add_argument("--explain", action="store_true")
    _add_cache_flags(a)

    e = sl3sub.add_parser("example-machine", help="certify base + p^n * bump")
    e.add_argument("-p", type=int, required=True)
    e.add_argument("--base", type=_pair, required=True)
    e.add_argument("--bump", type=_pair, required=True)
    e.add_argument("-n", type=int, required=True)
    e.add_argument("--table", default=None)
    e.add_argument("--strict", action="store_true")
    _add_cache_flags(e)

    sub.add_parser("selftest", help="run golden fixtures and invariant sweeps")
    return parser


def _oracle_block_simple(p: int, weight: int, verdict: Verdict) -> "tuple[dict, int]":
    if p == 2:
        return {"oracle": None, "oracle_note": "oracle-unavailable:p=2", "oracle_agrees": None}, EXIT_OK
    oracle = sufficiency_oracle_simple(p, weight)
    disagree = (
        oracle.kind is VerdictKind.ProvenYes and verdict.kind is not VerdictKind.Yes
    )
    block = {
        "oracle": {"kind": oracle.kind.value, "reasons": list(oracle.reasons)},
        "oracle_agrees": not disagree,
    }
    return block, (EXIT_VERIFY_FAILED if disagree else EXIT_OK)


def cmd_sl2_simple(args) -> int:
    try:
        require_prime(args.p)
        verdict = simple_verdict(args.p, args.weight)
    except ValueError as exc:
        return _error(str(exc))
    payload = {
        "schema": "redpairs/verdict/1",
        "p": args.p,
        "weight": args.weight,
        "kind": verdict.kind.value,
        "reasons": list(verdict.reasons),
    }
    rc = _verdict_exit(verdict.kind)
    if args.explain:
        payload["digits"] = list(digits(args.p, args.weight).digits)
        payload["normalized_weight"] = normalize_frobenius(args.p, args.weight)
    if args.oracle:
        with _CacheSession(args):
            block, orc = _oracle_block_simple(args.p, args.weight, verdict)
        payload.update(block)
        rc = orc if orc != EXIT_OK else rc
    _emit(payload)
    return rc


def cmd_sl2_weyl(args) -> int:
    try:
        require_prime(args.p)
        verdict = weyl_verdict(args.p, args.n)
    except ValueError as exc:
        return _error(str(exc))
    payload = {
        "schema": "redpairs/verdict/1",
        "p": args.p,
        "weight": args.n,
        "kind": verdict.kind.value,
        "reasons": list(verdict.reasons),
    }
    rc = _verdict_exit(verdict.kind)
    if args.oracle:
        with _CacheSession(args):
            oracle = weyl_oracle(args.p, args.n)
        agree = oracle.kind is verdict.kind
        payload["oracle"] = {"kind": oracle.kind.value, "reasons": list(oracle.reasons)}
        payload["oracle_agrees"] = agree
        if not agree:
            rc = EXIT_VERIFY_FAILED
    _emit(payload)
    return rc


def _scan_row(kind: str, p: int, weight: int, with_oracle: bool, with_timing: bool) -> dict:
    start = time.perf_counter_ns() if with_timing else 0
    if kind == "simple":
        verdict = simple_verdict(p, weight)
        oracle = None
        if with_oracle and p != 2:
            oracle = sufficiency_oracle_simple(p, weight)
        agrees = None
        if oracle is not None:
            agrees = not (
                oracle.kind is VerdictKind.ProvenYes
                and verdict.kind is not VerdictKind.Yes
            )
    else:
        verdict = weyl_verdict(p, weight)
        oracle = weyl_oracle(p, weight) if with_oracle else None
        agrees = (oracle.kind is verdict.kind) if oracle is not None else None
    row = {
        "p": p,
        "weight": weight,
        "kind": verdict.kind.value,
        "reasons": list(verdict.reasons),
    }
    if with_oracle:
        row["oracle_kind"] = oracle.kind.value if oracle is not None else None
        row["agrees"] = agrees
    if with_timing:
        row["micros"] = (time.perf_counter_ns() - start) // 1000
    return row


def cmd_sl2_scan(args) -> int:
    try:
        require_prime(args.p)
        if args.max_weight < 0:
            raise ValueError(f"--max must be nonnegative, got {args.max_weight}")
        if args.jobs < 1:
            raise ValueError(f"--jobs must be at least 1, got {args.jobs}")
    except ValueError as exc:
        return _error(str(exc))
    start = 1 if args.kind == "simple" else 0
    weights = range(start, args.max_weight + 1)
    with _CacheSession(args):
        if args.jobs > 1:
            with ThreadPoolExecutor(max_workers=args.jobs) as pool:
                rows = list(
                    pool.map(
                        lambda lam: _scan_row(args.kind, args.p, lam, args.oracle, args.timing),
                        weights,
                    )
                )
        else:
            rows = [
                _scan_row(args.kind, args.p, lam, args.oracle, args.timing)
                for lam in weights
            ]
    disagreements = [r for r in rows if args.oracle and r["agrees"] is False]
    ordered = disagreements + [r for r in rows if r not in disagreements]
    if args.format == "json":
        _emit({"schema": "redpairs/scan/1", "rows": ordered})
    else:
        print("# schema: redpairs/scan/1")
        cols = ["p", "weight", "kind", "reasons"]
        if args.oracle:
            cols += ["oracle_kind", "agrees"]
        if args.timing:
            cols += ["micros"]
        print("\t".join(cols))
        for r in ordered:
            cells = [str(r["p"]), str(r["weight"]), r["kind"], ";".join(r["reasons"])]
            if args.oracle:
                cells.append(str(r["oracle_kind"]))
                cells.append(str(r["agrees"]))
            if args.timing:
                cells.append(str(r["micros"]))
            print("\t".join(cells))
    return EXIT_VERIFY_FAILED if disagreements else EXIT_OK


def cmd_verify_identities(args) -> int:
    try:
        require_prime(args.p)
        if args.p == 2:
            raise ValueError("the y-family recursions need an odd prime")
        if args.max_m < 0:
            raise ValueError(f"--max-m must be nonnegative, got {args.max_m}")
    except ValueError as exc:
        return _error(str(exc))
    counts = {"low": [0, 0], "mid": [0, 0], "top": [0, 0]}
    for m in range(0, args.max_m + 1):
        for a in range(0, 2 * args.p - 1, 2):
            form = y_identity_form(args.p, a)
            ok = y_identity_check(args.p, m, a)
            counts[form][0] += 1
            if not ok:
                counts[form][1] += 1
    print("# schema: redpairs/identities/1")
    print("form\tchecked\tfailed")
    failed = 0
    for form in ("low", "mid", "top"):
        checked, bad = counts[form]
        failed += bad
        print(f"{form}\t{checked}\t{bad}")
    return EXIT_VERIFY_FAILED if failed else EXIT_OK


def _load_table_arg(path):
    if path is None:
        return None
    return load_character_table(path)


def cmd_sl3_analyze(args) -> int:
    try:
        require_prime(args.p)
        table = _load_table_arg(args.table)
    except OSError as exc:
        return _error(f"cannot read table file: {exc}", error_type="io-error")
    except ValueError as exc:
        return _error(str(exc))
    try:
        report = sl3_verdict(args.p, args.weight, table=table, strict=args.strict)
    except AdaptationFailureError as exc:
        return _adaptation_error(exc)
    except ValueError as exc:
        return _error(str(exc))
    payload = {"schema": "redpairs/mask/1"}
    payload.update(report.to_json_dict())
    if args.explain:
        fact = steinberg_digits_a2(args.p, args.weight)
        payload["digits"] = [list(d) for d in fact.digit_weights]
    _emit(payload)
    return _verdict_exit(report.verdict.kind)


def cmd_sl3_example_machine(args) -> int:
    try:
        require_prime(args.p)
        table = _load_table_arg(args.table)
    except OSError as exc:
        return _error(f"cannot read table file: {exc}", error_type="io-error")
    except ValueError as exc:
        return _error(str(exc))
    try:
        cert = example_machine(
            args.p, args.base, args.bump, args.n, table=table, strict=args.strict
        )
    except AdaptationFailureError as exc:
        return _adaptation_error(exc)
    except ValueError as exc:
        return _error(str(exc))
    payload = {"schema": "redpairs/certificate/1"}
    payload.update(cert.to_json_dict())
    _emit(payload)
    return EXIT_OK


def cmd_selftest(_args) -> int:
    ok, lines = selftest_mod.run()
    for line in lines:
        print(line)
    return EXIT_OK if ok else EXIT_VERIFY_FAILED


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.command == "sl2":
        handler = {
            "simple": cmd_sl2_simple,
            "weyl": cmd_sl2_weyl,
            "scan": cmd_sl2_scan,
        }[args.sl2_command]
        return handler(args)
    if args.command == "verify-identities":
        return cmd_verify_identities(args)
    if args.command == "sl3":
        handler = {
            "analyze": cmd_sl3_analyze,
            "example-machine": cmd_sl3_example_machine,
        }[args.sl3_command]
        return handler(args)
    if args.command == "selftest":
        return cmd_selftest(args)
    return _error(f"unknown command {args.command!r}", error_type="usage")


if __name__ == "__main__":
    sys.exit(main())
