"""Command-line front end.

Every subcommand writes JSONL or CSV to --out (standard output by default).
Exit status is 0 on success, 1 on usage errors and 2 when a factoring
budget or the magnitude cap aborts a run.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import re
import signal
import sys
import tempfile
from collections import Counter
from math import pi

from . import kernels
from .abc_core import make_triple, quality
from .arith import DEFAULT_BUDGET
from .audit import audit_coefficients, audit_table
from .curve_orders import cover_check, enumerate_triples, scan_hasse_smooth, supersingular_scan
from .equidist import DEFAULT_BINS, MODES, stratified_histograms, uniformity_report
from .errors import AbcError, BudgetExceeded, MagnitudeOverflow
from .krep import hall_scan, parse_delta, small_remainder_scan

log = logging.getLogger("abcscan")

EXIT_OK, EXIT_USAGE, EXIT_ABORT, EXIT_INTERRUPTED = 0, 1, 2, 130

_BN_CHUNK = 1 << 16


class UsageError(Exception):
    pass


class Interrupted(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def parse_int(text):
    """Integer from '12', '1_000', '10^7', '1e6' or '2**20'."""
    s = text.strip().replace("_", "")
    m = re.fullmatch(r"(-?\d+)(?:\^|\*\*)(\d+)", s)
    if m:
        return int(m.group(1)) ** int(m.group(2))
    m = re.fullmatch(r"(\d+)[eE](\d+)", s)
    if m:
        return int(m.group(1)) * 10 ** int(m.group(2))
    try:
        return int(s)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None


def _positive(text):
    v = parse_int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1: {text!r}")
    return v


def _delta(text):
    try:
        return parse_delta(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


class Output:
    """Line sink for --out; writes to a temp file and renames on close."""

    def __init__(self, path):
        self.path = path
        self._tmp = None
        if path and path != "-":
            d = os.path.dirname(os.path.abspath(path))
            fd, self._tmp = tempfile.mkstemp(dir=d, prefix=".abcscan-", suffix=".part")
            self.fh = os.fdopen(fd, "w", newline="\n")
        else:
            self.fh = sys.stdout

    def write(self, line):
        self.fh.write(line if line.endswith("\n") else line + "\n")

    def json(self, record):
        self.write(json.dumps(record))

    def commit(self):
        if self._tmp:
            self.fh.close()
            os.replace(self._tmp, self.path)
            self._tmp = None
        else:
            self.fh.flush()

    def discard(self):
        if self._tmp:
            self.fh.close()
            os.unlink(self._tmp)
            self._tmp = None


def _log_skips(stats):
    if stats:
        log.info("skipped candidates: %s", ", ".join(f"{k}={v}" for k, v in sorted(stats.items())))


# --------------------------------------------------------------------------
# subcommands


def cmd_quality(args, out):
    try:
        triple = make_triple(args.a, args.b, "cli")
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    out.json(quality(triple, args.factor_budget).to_record())


def cmd_audit_table(args, out):
    for r in audit_table():
        out.json(r.to_record())
    for c in audit_coefficients():
        out.json(c.to_record())


def cmd_search_frobenius(args, out):
    stats = Counter()
    if args.supersingular:
        stream = supersingular_scan(args.q_max, args.n_max, args.factor_budget, args.threads, stats)
    else:
        stream = enumerate_triples(args.q_max, args.n_max, args.gamma_min, args.factor_budget, args.threads, stats)
    count, total = 0, 0.0
    for report in stream:
        if args.supersingular and report.gamma < args.gamma_min:
            continue
        out.json(report.to_record())
        count += 1
        total += report.gamma
    if count:
        # descriptive only; no claim about the mean is checked
        log.info("emitted %d triples, mean gamma %.6f", count, total / count)
    _log_skips(stats)


def cmd_scan_hasse(args, out):
    stats = Counter()
    try:
        rows = scan_hasse_smooth(args.q, args.genus, args.smooth_bound, args.rad_cap, args.factor_budget, args.threads, stats)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    for order, _, _, report in rows:
        rec = report.to_record()
        rec["N"] = str(order)
        out.json(rec)
    _log_skips(stats)


def cmd_angles(args, out):
    if args.x < 8:
        raise UsageError("--x must be >= 8")
    report = uniformity_report(args.x, args.mode, args.bins)
    out.write(report.to_csv())
    if args.per_prime and args.mode == "prime-powers":
        for p, hist in stratified_histograms(args.x, args.bins).items():
            out.write(f"# p={p}")
            out.write(hist.to_csv(f"total={hist.total} p={p}"))


def cmd_krep_hunt(args, out):
    if args.x < 8:
        raise UsageError("--x must be >= 8")
    mode = "positive-only" if args.positive_only else "both"
    for hit in small_remainder_scan(args.x, args.delta, mode):
        out.json(hit.to_record(args.factor_budget))


def cmd_bn(args, out):
    if args.x >= 1 << 52:
        raise UsageError("--x must be below 2**52")
    out.write("n,b_n")
    for lo in range(1, args.x + 1, _BN_CHUNK):
        hi = min(args.x, lo + _BN_CHUNK - 1)
        b = kernels.active.nearest_square_remainders(lo, hi)
        out.write("\n".join(f"{n},{v}" for n, v in enumerate(b.tolist(), start=lo)))


def cmd_cover_check(args, out):
    if args.x < 3:
        raise UsageError("--x must be >= 3")
    rep = cover_check(args.x, args.genus)
    out.write("p,next_p,gap")
    for p, nxt, gap in rep.failures:
        out.write(f"{p},{nxt},{gap}")
    worst = "none" if rep.worst_gap is None else "{}:{}:{}".format(*rep.worst_gap)
    out.write(
        f"# covered={str(rep.covered).lower()} x={rep.x} genus={rep.genus} "
        f"worst_gap={worst} max_ratio={rep.max_ratio:.6g} violations={len(rep.failures)}"
    )


def cmd_hall_scan(args, out):
    if args.x_max < 2:
        raise UsageError("--x-max must be >= 2")
    for rec in hall_scan(args.x_max):
        out.json(rec.to_record())


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", default="-", help="output file (default: standard output)")
    common.add_argument("--threads", type=_positive, default=1, help="worker processes for long scans")
    common.add_argument("--factor-budget", type=_positive, default=DEFAULT_BUDGET, help="rho iterations per factorization")
    common.add_argument("-v", "--verbose", action="count", default=0)

    parser = _Parser(prog="abcscan", description="abc-triple quality and curve-order search toolkit")
    parser.add_argument("--version", action="version", version=f"%(prog)s 0.1.0 ({kernels.BACKEND} kernels)")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("quality", parents=[common], help="quality index of a + b = c")
    p.add_argument("a", type=_positive)
    p.add_argument("b", type=_positive)
    p.set_defaults(func=cmd_quality)

    p = sub.add_parser("audit-table", parents=[common], help="re-evaluate the published triple table")
    p.set_defaults(func=cmd_audit_table)

    p = sub.add_parser("search-frobenius", parents=[common], help="triples from trace recursions")
    p.add_argument("--q-max", type=_positive, required=True)
    p.add_argument("--n-max", type=_positive, required=True)
    p.add_argument("--gamma-min", type=float, default=1.0)
    p.add_argument("--supersingular", action="store_true", help="only trace a1 = 0")
    p.set_defaults(func=cmd_search_frobenius)

    p = sub.add_parser("scan-hasse", parents=[common], help="smooth orders in a Hasse interval")
    p.add_argument("--q", type=_positive, required=True)
    p.add_argument("--genus", type=_positive, default=1)
    p.add_argument("--smooth-bound", type=_positive, required=True)
    p.add_argument("--rad-cap", type=_positive, required=True)
    p.set_defaults(func=cmd_scan_hasse)

    p = sub.add_parser("angles", parents=[common], help="angle / remainder histogram with KS distance")
    p.add_argument("--x", type=_positive, required=True)
    p.add_argument("--bins", type=_positive, default=DEFAULT_BINS)
    p.add_argument("--mode", choices=MODES, default="prime-powers")
    p.add_argument("--per-prime", action="store_true", help="append per-prime histograms")
    p.set_defaults(func=cmd_angles)

    p = sub.add_parser("krep-hunt", parents=[common], help="prime powers with small square remainders")
    p.add_argument("--x", type=_positive, required=True)
    p.add_argument("--delta", type=_delta, required=True, help="exact rational N/D in (0, 1/2)")
    p.add_argument("--positive-only", action="store_true")
    p.set_defaults(func=cmd_krep_hunt)

    p = sub.add_parser("bn", parents=[common], help="nearest-square remainders b_1..b_x as CSV")
    p.add_argument("--x", type=_positive, required=True)
    p.set_defaults(func=cmd_bn)

    p = sub.add_parser("cover-check", parents=[common], help="prime gaps versus Hasse interval width")
    p.add_argument("--x", type=_positive, required=True)
    p.add_argument("--genus", type=_positive, default=1)
    p.set_defaults(func=cmd_cover_check)

    p = sub.add_parser("hall-scan", parents=[common], help="cube-minus-square differences")
    p.add_argument("--x-max", type=_positive, required=True)
    p.set_defaults(func=cmd_hall_scan)
    return parser


def _on_term(signum, frame):
    raise Interrupted()


def main(argv=None):
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.WARNING - 10 * min(args.verbose, 2),
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    out = Output(args.out)
    previous = signal.signal(signal.SIGTERM, _on_term)
    try:
        args.func(args, out)
    except UsageError as exc:
        out.discard()
        print(f"abcscan {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (BudgetExceeded, MagnitudeOverflow) as exc:
        out.discard()
        print(f"abcscan {args.command}: aborted: {exc}", file=sys.stderr)
        return EXIT_ABORT
    except AbcError as exc:
        out.discard()
        print(f"abcscan {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BrokenPipeError:
        # reader went away (e.g. piped into head); not an error
        out.discard()
        devnull = os.open(os.devnull, os.O_WRONLY)
        os.dup2(devnull, sys.stdout.fileno())
        return EXIT_OK
    except (KeyboardInterrupt, Interrupted):
        out.write("# truncated")
        out.commit()
        return EXIT_INTERRUPTED
    except BaseException:
        out.discard()
        raise
    finally:
        signal.signal(signal.SIGTERM, previous)
    out.commit()
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
