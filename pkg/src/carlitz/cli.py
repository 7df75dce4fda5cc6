"""Command line: ``carlitz enumerate | series | check | asympt``."""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from pathlib import Path

from . import __version__
from . import closed_form as cf
from .asymptotics import TARGETS as ASYMPT_TARGETS
from .asymptotics import convergence_report, normalize_target, predict
from .checks import run_checks
from .oracle import MUTATIONS
from .polyomino import BoundError, count_by_stats, normalize_class
from .series import MultiSeries

FORMATS = ("text", "json", "csv", "bfile")

# cli name -> evaluator taking the order
_SERIES = {
    "f1-qq": lambda n: cf.F1_qq(n),
    "f1-00": lambda n: cf.F1_00(n),
    "cc-carlitz-perim": cf.cc_carlitz_perimeter_gf,
    "gbt-u": lambda n: cf.gbt_u(n),
    "gt-u": lambda n: cf.gt_u(n),
    "gt-1": lambda n: cf.gt_1(n),
    "g1-full": lambda n: cf.g1_full(n),
    "g1-xx-qq": lambda n: cf.g1_xx_qq(n),
    "convex-carlitz-perim": cf.convex_carlitz_perimeter_gf,
    "dq-g1": cf.dq_g1_at_1,
    "dq-f1": lambda n: cf.dq_f1_at_1(n),
    "u-pm-column-convex": lambda n: cf.roots_column_convex(n),
    "u-prime-top": lambda n: cf.u_prime(n),
    "u-pm-convex": lambda n: cf.u_pm_kernel(n),
}
_ALIASES = {
    "cc-carlitz-perimeter": "cc-carlitz-perim",
    "convex-carlitz-perimeter": "convex-carlitz-perim",
    "dq-g1-at-1": "dq-g1",
    "dq-f1-at-1": "dq-f1",
    "u-pm-kernel": "u-pm-convex",
}


def series_target(name: str) -> str:
    key = name.lower().replace("_", "-")
    key = _ALIASES.get(key, key)
    if key not in _SERIES:
        raise ValueError(f"unknown series target {name!r}; choose from {sorted(_SERIES)}")
    return key


# -- cache -------------------------------------------------------------------


def cache_dir(override: str | None = None) -> Path:
    if override:
        return Path(override)
    env = os.environ.get("CARLITZ_CACHE_DIR")
    if env:
        return Path(env)
    return Path.home() / ".cache" / "carlitz"


def _cache_path(root: Path, target: str, order: int) -> Path:
    return root / f"{target}-{order}-v{__version__}.json"


def compute_series_payload(target: str, order: int, *, root: Path | None = None) -> dict:
    """Serialized series for a target, through the on-disk cache when ``root`` is given."""
    target = series_target(target)
    if root is not None:
        path = _cache_path(root, target, order)
        if path.exists():
            try:
                payload = json.loads(path.read_text())
            except (OSError, ValueError):
                payload = None
            if payload and payload.get("version") == __version__ and payload.get("target") == target \
                    and payload.get("order") == order:
                return payload
    result = _SERIES[target](order)
    if isinstance(result, tuple):
        body = {"series": [s.to_json() for s in result]}
    else:
        body = {"series": result.to_json()}
    payload = {"target": target, "order": order, "version": __version__, **body}
    if root is not None:
        root.mkdir(parents=True, exist_ok=True)
        tmp = path.with_suffix(".tmp")
        tmp.write_text(json.dumps(payload, sort_keys=True))
        tmp.replace(path)
    return payload


def _univariate(payload: dict) -> list[int | str] | None:
    data = payload["series"]
    if isinstance(data, list) or len(data["variables"]) != 1:
        return None
    coeffs = MultiSeries.from_json(data).univariate()[: payload["order"] + 1]
    return [int(c) if c.denominator == 1 else str(c) for c in coeffs]


# -- output ------------------------------------------------------------------


def _emit_pairs(pairs, fmt: str, out) -> None:
    if fmt == "json":
        out.write(json.dumps([{"n": n, "count": str(c)} for n, c in pairs]) + "\n")
    elif fmt == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["n", "count"])
        w.writerows(pairs)
    elif fmt == "bfile":
        for n, c in pairs:
            out.write(f"{n} {c}\n")
    else:
        out.write(",".join(str(c) for _, c in pairs) + "\n")


def _poly_str(poly: dict) -> str:
    parts = []
    for (b, u), c in sorted(poly.items()):
        mono = "*".join(m for m in (f"p^{b}" if b > 1 else "p" if b else "",
                                    f"q^{u}" if u > 1 else "q" if u else "") if m)
        parts.append(str(c) if not mono else mono if c == 1 else f"{c}*{mono}")
    return " + ".join(parts) or "0"


def cmd_enumerate(args, out) -> int:
    cls = normalize_class(args.cls)
    table = count_by_stats(args.n, cls, args.carlitz, full=args.full, safety_bound=args.bound,
                           workers=args.workers)
    pairs = [(n, table.counts.get(n, 0)) for n in range(2, args.n + 1)]
    if args.full and args.format in ("text", "json"):
        rows = [{"n": n, "count": str(c), "polynomial": _poly_str(table.polynomials.get(n, {})),
                 "terms": [{"B": b, "U": u, "count": str(k)}
                           for (b, u), k in sorted(table.polynomials.get(n, {}).items())]}
                for n, c in pairs]
        if args.format == "json":
            out.write(json.dumps(rows) + "\n")
        else:
            for r in rows:
                out.write(f"{r['n']} {r['count']} {r['polynomial']}\n")
        return 0
    _emit_pairs(pairs, args.format, out)
    return 0


def cmd_series(args, out) -> int:
    target = series_target(args.target)
    root = None if args.no_cache else cache_dir(args.cache_dir)
    payload = compute_series_payload(target, args.order, root=root)
    if args.format == "json":
        out.write(json.dumps(payload, sort_keys=True) + "\n")
        return 0
    coeffs = _univariate(payload)
    if coeffs is None:
        if args.format in ("csv", "bfile"):
            raise ValueError(f"target {target} is multivariate; use --format text or json")
        data = payload["series"]
        for s in data if isinstance(data, list) else [data]:
            out.write(MultiSeries.from_json(s).to_str(limit=None) + "\n")
        return 0
    _emit_pairs(list(enumerate(coeffs)), args.format, out)
    return 0


def cmd_check(args, out) -> int:
    results = run_checks(args.n, mutation=args.mutate, safety_bound=args.bound, workers=args.workers)
    if args.format == "json":
        out.write(json.dumps([{"name": r.name, "passed": r.passed, "detail": r.detail}
                              for r in results]) + "\n")
    else:
        for r in results:
            out.write(r.line() + "\n")
    ok = all(r.passed for r in results)
    if args.format != "json":
        out.write(("all checks passed" if ok else "some checks FAILED") + "\n")
    return 0 if ok else 1


def cmd_asympt(args, out) -> int:
    target = normalize_target(args.target)
    if args.checkpoints:
        points = [int(v) for v in args.checkpoints.split(",") if v.strip()]
        report = convergence_report(target, points, corrected=args.corrected)
        if args.format == "json":
            out.write(json.dumps(report.to_dict()) + "\n")
        elif args.format == "csv":
            w = csv.writer(out, lineterminator="\n")
            w.writerow(["n", "exact", "predicted", "ratio"])
            for row in report.to_dict()["rows"]:
                w.writerow([row["n"], row["exact"], row["predicted"], row["ratio"]])
        else:
            for row in report.to_dict(digits=15)["rows"]:
                out.write(f"{row['n']} exact={row['exact']} predicted={row['predicted']} "
                          f"ratio={row['ratio']}\n")
            out.write(f"|ratio - 1| {'strictly decreasing' if report.monotone else 'NOT monotone'}\n")
        return 0
    if args.n is None:
        raise ValueError("give -n or --checkpoints")
    import mpmath

    value = predict(target, args.n, corrected=args.corrected)
    text = str(int(value)) if value == mpmath.floor(value) else mpmath.nstr(value, 30)
    if args.format == "json":
        out.write(json.dumps({"target": target, "n": args.n, "predicted": text}) + "\n")
    else:
        out.write(text + "\n")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="carlitz", description="Exact enumeration of Carlitz polyominoes.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, formats=FORMATS):
        p.add_argument("--format", choices=formats, default="text")

    p = sub.add_parser("enumerate", help="brute-force counts by half-perimeter")
    p.add_argument("--class", dest="cls", default="cc",
                   help="cc, convex, convex-t, convex-b or convex-bt")
    p.add_argument("--carlitz", action="store_true", help="only Carlitz polyominoes")
    p.add_argument("-n", type=int, required=True, help="largest half-perimeter")
    p.add_argument("--full", action="store_true", help="also give the polynomial in p, q")
    p.add_argument("--bound", type=int, default=None, help="override the safety bound")
    p.add_argument("--workers", type=int, default=1)
    common(p)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("series", help="expand a closed-form generating function")
    p.add_argument("--target", required=True, help=", ".join(sorted(_SERIES)))
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--cache-dir", default=None)
    p.add_argument("--no-cache", action="store_true")
    common(p)
    p.set_defaults(func=cmd_series)

    p = sub.add_parser("check", help="brute force = recurrences = closed forms")
    p.add_argument("-n", type=int, required=True)
    p.add_argument("--bound", type=int, default=None)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--mutate", choices=MUTATIONS, default=None, help=argparse.SUPPRESS)
    common(p, ("text", "json"))
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("asympt", help="compare exact counts with asymptotic formulas")
    p.add_argument("--target", required=True, help=", ".join(t.lower().replace("_", "-") for t in ASYMPT_TARGETS))
    p.add_argument("-n", type=int, default=None)
    p.add_argument("--checkpoints", default=None, help="comma separated n values")
    p.add_argument("--corrected", action="store_true",
                   help="cc-levels only: use growth base 3+2*sqrt(2) instead of (3+2*sqrt(2))/2")
    common(p, ("text", "json", "csv"))
    p.set_defaults(func=cmd_asympt)
    return parser


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except (BoundError, ValueError) as exc:
        print(f"carlitz: error: {exc}", file=sys.stderr)
        return 2


def run(argv) -> tuple[int, str]:
    """Run the CLI in-process and capture its output."""
    buf = io.StringIO()
    code = main(argv, buf)
    return code, buf.getvalue()


if __name__ == "__main__":
    sys.exit(main())
