"""Command-line front end.

Each subcommand runs one family of checks over a list of primes and emits a
JSON, CSV or plain-text report.  Exit status: 0 when every check passes,
1 on a verification failure, 2 on invalid configuration, 3 when the locus
enumeration never reached the quotient dimension.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Callable, Sequence

from .cartier import cm_entries, hasse_polynomial, igusa_separability_scan
from .field import is_prime
from .lauricella import cm_via_hypergeometric, normalization_constant, support, truncated_series
from .locus import DEFAULT_SCHEDULE, check_expectation, jacobian_at, locus_points, verify_multiplicity_one
from .pde import GaussParams, apply_gauss_operator, verify_annihilation, verify_contiguity

SCHEMA_VERSION = 1

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_CONFIG = 2
EXIT_INCOMPLETE = 3


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class RunConfig:
    primes: tuple[int, ...]
    schedule: tuple[int, ...] = DEFAULT_SCHEDULE
    fmt: str = "json"
    out: str | None = None
    threads: int = 1


def parse_primes(text: str) -> tuple[int, ...]:
    """'3,5,7' or a range '3-13' (odd primes inside the range)."""
    text = text.strip()
    if not text:
        raise ConfigError("empty prime list")
    if "-" in text and "," not in text:
        lo_s, hi_s = text.split("-", 1)
        try:
            lo, hi = int(lo_s), int(hi_s)
        except ValueError:
            raise ConfigError(f"bad prime range {text!r}") from None
        primes = tuple(n for n in range(max(lo, 3), hi + 1) if is_prime(n))
        if not primes:
            raise ConfigError(f"no odd primes in {text}")
        return primes
    try:
        primes = tuple(int(s) for s in text.split(","))
    except ValueError:
        raise ConfigError(f"bad prime list {text!r}") from None
    bad = [n for n in primes if n < 3 or not is_prime(n)]
    if bad:
        raise ConfigError(f"not odd primes: {bad}")
    if len(set(primes)) != len(primes):
        raise ConfigError("repeated prime in list")
    return tuple(sorted(primes))


def parse_schedule(text: str) -> tuple[int, ...]:
    try:
        ks = tuple(int(s) for s in text.split(","))
    except ValueError:
        raise ConfigError(f"bad extension schedule {text!r}") from None
    if not ks or ks[0] < 1 or any(b <= a for a, b in zip(ks, ks[1:])):
        raise ConfigError("extension schedule must be strictly increasing degrees >= 1")
    return ks


def resolve_threads(flag: int | None) -> int:
    env = os.environ.get("SSPLAB_THREADS")
    if env:
        try:
            n = int(env)
        except ValueError:
            raise ConfigError(f"SSPLAB_THREADS must be an integer, got {env!r}") from None
    else:
        n = 1 if flag is None else flag
    if n < 1:
        raise ConfigError("thread count must be >= 1")
    return n


# -- per-prime jobs ------------------------------------------------------------
# Each returns (payload, status, csv rows).  They are module-level so that a
# process pool can pickle them.


def _job_cm(p: int, _cfg: RunConfig):
    data = cm_entries(p, 2).to_json()
    rows = [[p, name, text] for name, text in sorted(data["entries"].items())]
    return data, EXIT_OK, rows


def _job_lauricella(p: int, cfg: RunConfig, pairs: Sequence[tuple[int, int]]):
    cm = cm_entries(p, 2)
    items = []
    ok = True
    rows = []
    for i, j in pairs:
        series = truncated_series(p, i, j).poly
        match = cm_via_hypergeometric(p, i, j) == cm.entry(i, j)
        ok &= match
        item = support(p, i, j).to_json()
        item.update(
            {
                "normalization": str(normalization_constant(p, i, j)),
                "series": series.to_text(),
                "matches_cm": match,
            }
        )
        items.append(item)
        rows.append([p, i, j, item["d_prime"], item["size"], item["normalization"], match])
    return {"p": p, "entries": items, "pass": ok}, EXIT_OK if ok else EXIT_FAIL, rows


def _job_verify_pde(p: int, _cfg: RunConfig):
    ann = verify_annihilation(p)
    h = hasse_polynomial(p)
    gauss_ok = apply_gauss_operator(GaussParams.legendre(p), h).is_zero()
    ok = ann["pass"] and gauss_ok
    payload = {
        "p": p,
        "theorem_A": {"pass": ann["pass"], "checked": ann["checked"], "residuals": ann["residuals"]},
        "gauss_hasse": {"pass": gauss_ok},
        "pass": ok,
    }
    return payload, EXIT_OK if ok else EXIT_FAIL, [[p, ann["checked"], len(ann["residuals"]), gauss_ok, ok]]


def _job_verify_contiguity(p: int, _cfg: RunConfig):
    rep = verify_contiguity(p)
    ok = rep["contiguity"]["pass"] and rep["remark"]["pass"]
    rep["pass"] = ok
    rows = [[p, r["relation"], r["i"], r["pass"]] for r in rep["relations"]]
    return rep, EXIT_OK if ok else EXIT_FAIL, rows


def _job_locus(p: int, cfg: RunConfig):
    points, searched, complete, notes = locus_points(p, cfg.schedule)
    rows = []
    table = []
    for pt in points:
        rank = jacobian_at(p, pt).rank
        rows.append([p, pt.field_degree, *pt.text(), rank])
        table.append({"k": pt.field_degree, "point": list(pt.text()), "rank": rank})
    payload = {
        "p": p,
        "extension_degrees": searched,
        "point_count": len(points),
        "counts_match": complete,
        "points": table,
        "notes": notes,
    }
    return payload, EXIT_OK, rows


def _job_verify_mult_one(p: int, cfg: RunConfig):
    rep = verify_multiplicity_one(p, cfg.schedule)
    if rep.incomplete_enumeration:
        status = EXIT_INCOMPLETE
    else:
        status = EXIT_OK if rep.passed else EXIT_FAIL
    return rep.to_json(), status, rep.csv_rows()


def _job_check_expectation(p: int, cfg: RunConfig):
    rep = check_expectation(p, k_schedule=cfg.schedule)
    rows = [[p, *r["point"], *r["values"], r["status"]] for r in rep["points"]]
    return rep, EXIT_OK, rows


CSV_HEADERS = {
    "cm": ["p", "entry", "poly"],
    "lauricella": ["p", "i", "j", "d_prime", "size", "normalization", "matches_cm"],
    "verify-pde": ["p", "checked", "nonzero_residuals", "gauss_hasse", "pass"],
    "verify-contiguity": ["p", "relation", "i", "pass"],
    "locus": ["p", "k", "lambda1", "lambda2", "lambda3", "rank"],
    "verify-mult-one": ["p", "k", "lambda1", "lambda2", "lambda3", "rank"],
    "check-expectation": ["p", "lambda1", "lambda2", "lambda3", "e1", "e2", "e3", "status"],
}


def _run_job(args):
    fn, p, cfg, extra = args
    return fn(p, cfg, *extra)


def run_per_prime(fn: Callable, cfg: RunConfig, extra: tuple = ()) -> list:
    work = [(fn, p, cfg, extra) for p in cfg.primes]
    if cfg.threads > 1 and len(work) > 1:
        with ProcessPoolExecutor(max_workers=min(cfg.threads, len(work))) as pool:
            return list(pool.map(_run_job, work))
    return [_run_job(w) for w in work]


def worst_status(statuses: Sequence[int]) -> int:
    """Incomplete enumeration outranks failure, which outranks success."""
    if EXIT_INCOMPLETE in statuses:
        return EXIT_INCOMPLETE
    if EXIT_FAIL in statuses:
        return EXIT_FAIL
    return EXIT_OK


# -- rendering -----------------------------------------------------------------


def render_json(command: str, body: dict) -> str:
    doc = {"schema": SCHEMA_VERSION, "command": command, **body}
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def render_csv(header: list[str], rows: list[list]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def render_text(command: str, reports: list[dict]) -> str:
    lines = []
    for rep in reports:
        verdict = rep.get("pass", rep.get("status"))
        if isinstance(verdict, bool):
            verdict = "PASS" if verdict else "FAIL"
        extra = ""
        if "point_count" in rep:
            extra = f" points={rep['point_count']}"
        if "quotient_dim" in rep:
            extra += f" D={rep['quotient_dim']}"
        lines.append(f"{command} p={rep['p']}{extra} {verdict if verdict is not None else 'done'}")
    return "\n".join(lines) + "\n"


def emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# -- commands ------------------------------------------------------------------


def cmd_hasse(args) -> int:
    if args.max_p < 3:
        raise ConfigError("no odd primes up to --max-p")
    scan = igusa_separability_scan(args.max_p)
    fmt = args.format
    if fmt == "json":
        text = render_json(
            "hasse",
            {
                "max_p": args.max_p,
                "results": {str(p): ok for p, ok in scan["results"].items()},
                "witnesses": {str(p): w for p, w in scan["witnesses"].items()},
                "pass": scan["pass"],
            },
        )
    elif fmt == "csv":
        text = render_csv(["p", "separable"], [[p, ok] for p, ok in sorted(scan["results"].items())])
    else:
        bad = [p for p, ok in scan["results"].items() if not ok]
        text = f"hasse max_p={args.max_p} primes={len(scan['results'])} {'PASS' if scan['pass'] else 'FAIL'}\n"
        if bad:
            text += f"inseparable: {bad}\n"
    emit(text, args.out)
    return EXIT_OK if scan["pass"] else EXIT_FAIL


JOBS = {
    "cm": _job_cm,
    "lauricella": _job_lauricella,
    "verify-pde": _job_verify_pde,
    "verify-contiguity": _job_verify_contiguity,
    "locus": _job_locus,
    "verify-mult-one": _job_verify_mult_one,
    "check-expectation": _job_check_expectation,
}


def cmd_per_prime(args) -> int:
    cfg = RunConfig(
        primes=parse_primes(args.primes),
        schedule=parse_schedule(args.ext) if getattr(args, "ext", None) else DEFAULT_SCHEDULE,
        fmt=args.format,
        out=args.out,
        threads=resolve_threads(args.threads),
    )
    extra: tuple = ()
    if args.command == "lauricella":
        pairs = [(i, j) for i in (args.i or (1, 2)) for j in (args.j or (1, 2))]
        extra = (tuple(pairs),)
    results = run_per_prime(JOBS[args.command], cfg, extra)
    reports = [r[0] for r in results]
    status = worst_status([r[1] for r in results])
    if cfg.fmt == "json":
        text = render_json(args.command, {"primes": list(cfg.primes), "reports": reports})
    elif cfg.fmt == "csv":
        text = render_csv(CSV_HEADERS[args.command], [row for r in results for row in r[2]])
    else:
        text = render_text(args.command, reports)
    emit(text, cfg.out)
    return status


def _add_common(sp: argparse.ArgumentParser, default_primes: str | None = None) -> None:
    sp.add_argument(
        "--primes",
        default=default_primes,
        required=default_primes is None,
        help="comma list (3,5,7) or range (3-13) of odd primes",
    )
    sp.add_argument("--format", choices=("json", "csv", "text"), default="json")
    sp.add_argument("--out", help="write the report here instead of stdout")
    sp.add_argument("--threads", type=int, default=None, help="worker processes (SSPLAB_THREADS overrides)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ssplab",
        description="Exact checks for the superspecial locus of genus-2 Rosenhain curves.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("hasse", help="separability of H_p for all odd p <= max-p")
    sp.add_argument("--max-p", type=int, required=True)
    sp.add_argument("--format", choices=("json", "csv", "text"), default="json")
    sp.add_argument("--out")

    sp = sub.add_parser("cm", help="Cartier-Manin entries as polynomials in z1, z2, z3")
    _add_common(sp)

    sp = sub.add_parser("lauricella", help="truncated Lauricella series and the two-path identity")
    _add_common(sp)
    sp.add_argument("-i", type=int, choices=(1, 2), action="append")
    sp.add_argument("-j", type=int, choices=(1, 2), action="append")

    sp = sub.add_parser("verify-pde", help="annihilation by the D and E operators")
    _add_common(sp, "3,5,7,11,13")

    sp = sub.add_parser("verify-contiguity", help="contiguity relations between c_{ip-1} and c_{ip-2}")
    _add_common(sp, "3,5,7,11,13")

    for name, help_text in (
        ("locus", "enumerate the superspecial locus"),
        ("verify-mult-one", "radical test, point count and Jacobian ranks"),
        ("check-expectation", "evaluate the determinant-like expressions on the locus"),
    ):
        sp = sub.add_parser(name, help=help_text)
        _add_common(sp)
        sp.add_argument("--ext", default=None, help="extension degrees to search, e.g. 2,4")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "hasse":
            return cmd_hasse(args)
        return cmd_per_prime(args)
    except ConfigError as exc:
        print(f"ssplab: error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
