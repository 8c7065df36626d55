"""Command line entry point: ``prufer-amalgam classify|check|verify|corpus``.

Exit status: 0 when every check passes (or is informational), 1 when some
check fails, 2 for unreadable input or bad options, 3 when a ring exceeds
the size cap.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path
from typing import Any

from . import __version__
from .amalgam import check_lemma23, check_prop21, max_spectrum_pattern, quotient_iso_check
from .cache import LatticeCache
from .classify import classify
from .corpus import lemma24_coefficients, run_corpus, run_example29, SUITE
from .gaussian import HierarchyViolation, check_hierarchy, check_lemma24
from .ideals import DEFAULT_IDEAL_CAP
from .plocal import INFINITE, check_cor27_instance, check_thm22_instance, example28_structural
from .rings import FiniteRing, SizeCapError
from .specfile import BuiltRing, SpecError, build, parse_spec, spec_to_data
from .verdict import FAIL, Verdict

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_CAP = 0, 1, 2, 3

AMALGAM_TARGETS = ("prop21", "lemma23", "lemma24", "maxspec", "quotient-iso")
LOCAL_TARGETS = ("thm22", "cor27", "example28")
VERIFY_TARGETS = AMALGAM_TARGETS + LOCAL_TARGETS + ("example29",)


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# report assembly


def _ideal_str(R: FiniteRing, elems) -> str:
    return "{" + ",".join(R.fmt(x) for x in sorted(elems)) + "}"


def classification_summary(R: FiniteRing, cap: int, cache) -> dict[str, Any]:
    c = classify(R, cap, cache)
    return {
        "ring": R.label,
        "order": R.order,
        "characteristic": R.characteristic,
        "is_local": c.is_local,
        "units": len(c.units),
        "zero_divisors": _ideal_str(R, c.zero_divisors),
        "nilpotents": _ideal_str(R, c.nilpotents),
        "maximal_ideals": [M.describe() for M in c.maximal_ideals],
        "radical": c.radical.describe(),
    }


def make_report(spec, properties, checks: list[Verdict], elapsed: float) -> dict[str, Any]:
    return {
        "spec": spec,
        "properties": properties,
        "paper_checks": [v.to_json() for v in checks],
        "timing": {"seconds": round(elapsed, 3)},
        "version": __version__,
    }


def _load(path: str) -> tuple[Any, BuiltRing]:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    try:
        spec = parse_spec(text)
    except SpecError as exc:
        if isinstance(exc.__cause__, SizeCapError):
            raise exc.__cause__ from None
        raise UsageError(f"{path}: {exc}") from None
    return spec, build(spec)


def _parse_k(raw: str | None) -> int | None:
    if raw is None:
        return 1
    if raw.lower() in ("inf", "infinity", "oo"):
        return INFINITE
    try:
        k = int(raw)
    except ValueError:
        raise UsageError(f"--k must be a positive integer or 'inf', got {raw!r}") from None
    if k < 1:
        raise UsageError("--k must be at least 1")
    return k


def _verify(args, cache) -> tuple[Any, list[Verdict]]:
    target = args.target
    if target == "example29":
        return None, [run_example29(seed=args.seed, cache=cache)]
    if target in LOCAL_TARGETS:
        p = args.p if args.p is not None else 2
        if p < 2 or any(p % q == 0 for q in range(2, int(p**0.5) + 1)):
            raise UsageError(f"--p must be a prime, got {p}")
        k = _parse_k(args.k)
        bound = args.bound if args.bound is not None else (10 if target == "example28" else 20)
        echo = {"p": p, "k": "inf" if k is INFINITE else k, "bound": bound}
        if target == "thm22":
            return echo, [check_thm22_instance(p, k, bound)]
        if target == "cor27":
            return echo, [check_cor27_instance(p, k, bound)]
        return {"p": p, "bound": bound}, [example28_structural(p, bound)]
    if args.file is None:
        raise UsageError(f"verify {target} needs --file with an amalgamation or duplication")
    spec, built = _load(args.file)
    am = built.amalgam
    if am is None:
        raise UsageError(f"verify {target} needs an amalgamation or duplication, got kind {spec.kind!r}")
    if am.ring.order > args.cap:
        raise SizeCapError(f"{am.ring.label} has order {am.ring.order} > cap {args.cap}")
    if target == "prop21":
        checks = [check_prop21(am)]
    elif target == "lemma23":
        checks = [check_lemma23(am, args.cap, cache)]
    elif target == "maxspec":
        checks = [max_spectrum_pattern(am, args.cap, cache)]
    elif target == "quotient-iso":
        checks = [quotient_iso_check(am, args.cap)]
    else:
        degree = args.degree if args.degree is not None else 2
        checks = [
            check_lemma24(am, coeffs, degree_bound=degree, seed=args.seed, cache=cache)
            for coeffs in lemma24_coefficients(am, seed=args.seed)
        ]
    return spec_to_data(spec), checks


def run_command(args) -> tuple[dict[str, Any], int]:
    cache = None if args.no_cache else LatticeCache(seed=args.seed)
    start = time.perf_counter()
    spec_echo, properties, checks = None, None, []
    if args.command == "classify":
        spec, built = _load(args.file)
        spec_echo = spec_to_data(spec)
        properties = classification_summary(built.ring, args.cap, cache)
    elif args.command == "check":
        spec, built = _load(args.file)
        spec_echo = spec_to_data(spec)
        try:
            rep = check_hierarchy(built.ring, args.cap, cache)
        except HierarchyViolation as exc:
            checks = [Verdict("hierarchy", FAIL, {}, [str(exc)])]
        else:
            properties = rep.to_json()
            checks = [Verdict("hierarchy", "pass", {"triple": list(rep.triple())})]
    elif args.command == "verify":
        spec_echo, checks = _verify(args, cache)
    else:
        checks = run_corpus(seed=args.seed, cache=cache, only=args.only)
    report = make_report(spec_echo, properties, checks, time.perf_counter() - start)
    status = EXIT_FAIL if any(v.verdict == FAIL for v in checks) else EXIT_OK
    return report, status


# ---------------------------------------------------------------------------
# rendering


def render_text(report: dict[str, Any]) -> str:
    lines = []
    props = report["properties"]
    if props:
        for key, value in props.items():
            if isinstance(value, dict):
                for sub, v in value.items():
                    lines.append(f"{key}.{sub}: {json.dumps(v, ensure_ascii=False)}")
            else:
                lines.append(f"{key}: {value}")
    for chk in report["paper_checks"]:
        lines.append(f"[{chk['verdict'].upper()}] {chk['id']}")
        for k, v in chk["details"].items():
            lines.append(f"    {k}: {json.dumps(v, ensure_ascii=False)}")
        for w in chk["witnesses"]:
            lines.append(f"    witness: {w}")
    if report["paper_checks"]:
        failed = sum(c["verdict"] == FAIL for c in report["paper_checks"])
        lines.append(f"{len(report['paper_checks'])} checks, {failed} failed")
    lines.append(f"time: {report['timing']['seconds']}s")
    return "\n".join(lines)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit the JSON report")
    common.add_argument("--seed", type=int, default=0, help="seed for every sampled step (default 0)")
    common.add_argument("--cap", type=int, default=DEFAULT_IDEAL_CAP, help="largest ring order to enumerate")
    common.add_argument("--no-cache", action="store_true", help="do not read or write the lattice cache")

    parser = argparse.ArgumentParser(prog="prufer-amalgam", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)
    for name, text in (("classify", "units, zero divisors, maximal ideals"), ("check", "arithmetical/Gaussian/Prüfer")):
        p = sub.add_parser(name, parents=[common], help=text)
        p.add_argument("file", help="ring-definition file")
    v = sub.add_parser("verify", parents=[common], help="run one named check")
    v.add_argument("target", choices=VERIFY_TARGETS)
    v.add_argument("--file", help="ring-definition file (amalgamation targets)")
    v.add_argument("--p", type=int, help="prime for thm22, cor27, example28 (default 2)")
    v.add_argument("--k", help="exponent k >= 1 or 'inf' for the zero ideal (default 1)")
    v.add_argument("--bound", type=int, help="search or sample bound")
    v.add_argument("--degree", type=int, help="degree bound for lemma24 (default 2)")
    c = sub.add_parser("corpus", parents=[common], help="run the built-in instance suite")
    c.add_argument("--only", nargs="+", choices=list(SUITE), help="restrict to these checks")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        report, status = run_command(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except SizeCapError as exc:
        print(f"error: cap exceeded: {exc}", file=sys.stderr)
        return EXIT_CAP
    if args.json:
        print(json.dumps(report, indent=2, ensure_ascii=False))
    else:
        print(render_text(report))
    return status


if __name__ == "__main__":
    sys.exit(main())
