"""Command-line front end.

Commands map one-to-one onto the engine: order arithmetic, map evaluation
and iteration, period reports, Sharkovsky verification, covering digraphs
and Štefan detection for patterns, loop realization with certificates,
witness synthesis, doubling, truncations of the infinite composition, and
CSV/SVG plot emission.

Exit codes: 0 success (including a verified report), 1 verification
failed, 2 input or parameter error, 3 resource budget exceeded.  All
rationals cross this boundary as "p/q" strings; identical inputs produce
byte-identical output.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Optional

from .constructions import PhiSpec, double, phi_truncation, witness
from .errors import DomainError, PreconditionError, ResourceError, SharklabError, VerificationError
from .order import SharkClass, shark_cmp, shark_tail
from .patterns import OrbitPattern, connect_the_dots, cover_digraph, digraph_to_dot, gap_intervals, is_stefan
from .periodic import IntervalCycle, PeriodReport, least_period, realize_loop, verify_sharkovsky, period_set
from .plmap import PLMap, dump_map, iterate, load_map
from .rational import decimal12, format_rational, parse_rational

__all__ = ["main", "run"]


def _read_map(path: str) -> PLMap:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise DomainError(f"map file: cannot read {path}: {exc.strerror}") from None
    return load_map(text)


def _emit(text: str, out: Optional[str]) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)


def _report_lines(report: PeriodReport, verified: bool) -> str:
    width = max([len("period")] + [len(str(n)) for n in report.periods])
    lines = [f"{'period'.ljust(width)}  witness"]
    for n, w in report.entries:
        lines.append(f"{str(n).ljust(width)}  {format_rational(w)}")
    lines.append(f"tail-class: {report.tail_class if report.tail_class is not None else 'none'}")
    if report.ambiguous_at_bound:
        lines.append("ambiguous-at-bound: yes")
    if verified:
        lines.append(f"sharkovsky: {'pass' if report.sharkovsky_ok else 'fail'}")
    return "\n".join(lines) + "\n"


def _parse_cycle_json(text: str) -> IntervalCycle:
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DomainError(f"cycle: invalid JSON: {exc}") from None
    if not isinstance(raw, list) or not raw:
        raise DomainError("cycle: expected a nonempty JSON list of [lo, hi] pairs")
    ivs = []
    for k, entry in enumerate(raw):
        if not (isinstance(entry, list) and len(entry) == 2 and all(isinstance(v, str) for v in entry)):
            raise DomainError(f"cycle[{k}]: expected a pair of rational strings")
        ivs.append((parse_rational(entry[0], f"cycle[{k}].lo"),
                    parse_rational(entry[1], f"cycle[{k}].hi")))
    return IntervalCycle(tuple(ivs))


def plot_csv(f: PLMap, samples: int) -> str:
    """Rows "x,y" at all breakpoints plus a uniform grid, 12 significant digits."""
    if samples < 1:
        raise DomainError(f"plot: need samples >= 1, got {samples}")
    lo, hi = f.domain_lo, f.domain_hi
    xs = set(f.xs)
    if samples == 1:
        xs.add(lo)
    else:
        step = (hi - lo) / (samples - 1)
        for k in range(samples):
            xs.add(lo + k * step)
    lines = ["x,y"]
    for x in sorted(xs):
        lines.append(f"{decimal12(x)},{decimal12(f.eval(x))}")
    return "\n".join(lines) + "\n"


def plot_svg(f: PLMap) -> str:
    """Exact polyline through the breakpoints with axes; PL maps are their own plots."""
    size, margin = 640, 48
    lo, hi = f.domain_lo, f.domain_hi
    span = hi - lo

    def sx(x: Fraction) -> str:
        return decimal12(margin + (x - lo) / span * (size - 2 * margin))

    def sy(y: Fraction) -> str:
        return decimal12(size - margin - (y - lo) / span * (size - 2 * margin))

    pts = " ".join(f"{sx(x)},{sy(y)}" for x, y in f.points)
    lo_s, hi_s = format_rational(lo), format_rational(hi)
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
        f'viewBox="0 0 {size} {size}">',
        f'  <line x1="{margin}" y1="{size - margin}" x2="{size - margin}" '
        f'y2="{size - margin}" stroke="black"/>',
        f'  <line x1="{margin}" y1="{margin}" x2="{margin}" y2="{size - margin}" '
        f'stroke="black"/>',
        f'  <text x="{margin}" y="{size - margin + 20}" font-size="12">{lo_s}</text>',
        f'  <text x="{size - margin}" y="{size - margin + 20}" font-size="12" '
        f'text-anchor="end">{hi_s}</text>',
        f'  <text x="{margin - 6}" y="{size - margin}" font-size="12" '
        f'text-anchor="end">{lo_s}</text>',
        f'  <text x="{margin - 6}" y="{margin + 6}" font-size="12" '
        f'text-anchor="end">{hi_s}</text>',
        f'  <polyline fill="none" stroke="crimson" stroke-width="1.5" points="{pts}"/>',
        "</svg>",
    ]
    return "\n".join(parts) + "\n"


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="sharklab", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("order-cmp", help="compare two classes in the Sharkovsky order")
    p.add_argument("a")
    p.add_argument("b")

    p = sub.add_parser("order-tail", help="list the tail of a class up to a bound")
    p.add_argument("cls")
    p.add_argument("--bound", type=int, default=12)

    p = sub.add_parser("map-eval", help="evaluate a map at an exact rational point")
    p.add_argument("--map", required=True)
    p.add_argument("--x", required=True)

    p = sub.add_parser("map-iterate", help="emit the exact n-th iterate of a map")
    p.add_argument("--map", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--out")

    p = sub.add_parser("periods", help="least periods up to a bound with witnesses")
    p.add_argument("--map", required=True)
    p.add_argument("--bound", type=int, default=12)
    p.add_argument("--format", choices=("table", "json"), default="table")
    p.add_argument("--out")

    p = sub.add_parser("verify", help="check that the period set is a Sharkovsky tail")
    p.add_argument("--map", required=True)
    p.add_argument("--bound", type=int, default=12)
    p.add_argument("--format", choices=("table", "json"), default="table")
    p.add_argument("--out")

    p = sub.add_parser("digraph", help="covering digraph of a pattern")
    p.add_argument("pattern")
    p.add_argument("--format", choices=("dot", "json"), default="dot")
    p.add_argument("--out")

    p = sub.add_parser("stefan", help="decide whether a pattern is a Štefan cycle")
    p.add_argument("pattern")

    p = sub.add_parser("realize", help="realize a covering loop as a certified periodic point")
    p.add_argument("--map")
    p.add_argument("--cycle", help='JSON list of ["lo","hi"] interval pairs')
    p.add_argument("--pattern", help="use the connect-the-dots map of this pattern")
    p.add_argument("--loop", help="space-separated gap indices, e.g. '1 3 2 4'")
    p.add_argument("--out")

    p = sub.add_parser("witness", help="construct a map realizing a Sharkovsky class")
    p.add_argument("cls")
    p.add_argument("--strategy", choices=("stefan-doubling", "truncated-tent"),
                   default="stefan-doubling")
    p.add_argument("--depth", type=int)
    p.add_argument("--out")

    p = sub.add_parser("double", help="apply a period-doubling operator to a map")
    p.add_argument("--map", required=True)
    p.add_argument("--op", choices=("G", "H", "D", "E"), required=True)
    p.add_argument("--a", default="1/3")
    p.add_argument("--out")

    p = sub.add_parser("phi", help="truncate the infinite doubling composition")
    p.add_argument("--alpha", default="01")
    p.add_argument("--depth", type=int, default=6)
    p.add_argument("--a", default="1/3")
    p.add_argument("--b", default="1/3")
    p.add_argument("--out")

    p = sub.add_parser("plot", help="emit a CSV table or SVG plot of a map")
    p.add_argument("--map", required=True)
    p.add_argument("--format", choices=("csv", "svg"), default="csv")
    p.add_argument("--samples", type=int, default=256)
    p.add_argument("--out")

    return parser


def _dispatch(args: argparse.Namespace) -> int:
    cmd = args.command

    if cmd == "order-cmp":
        a, b = SharkClass.parse(args.a), SharkClass.parse(args.b)
        r = shark_cmp(a, b)
        symbol = "≺" if r < 0 else ("≻" if r > 0 else "=")
        print(f"{a} {symbol} {b}")
        return 0

    if cmd == "order-tail":
        tail = shark_tail(SharkClass.parse(args.cls), args.bound)
        print(" ".join(str(m) for m in tail))
        return 0

    if cmd == "map-eval":
        f = _read_map(args.map)
        x = parse_rational(args.x, "--x")
        print(format_rational(f.eval(x)))
        return 0

    if cmd == "map-iterate":
        f = _read_map(args.map)
        _emit(dump_map(iterate(f, args.n)), args.out)
        return 0

    if cmd in ("periods", "verify"):
        f = _read_map(args.map)
        if cmd == "verify":
            report = verify_sharkovsky(f, args.bound)
        else:
            report = period_set(f, args.bound)
        if args.format == "json":
            _emit(json.dumps(report.to_json_dict(), indent=2) + "\n", args.out)
        else:
            _emit(_report_lines(report, verified=cmd == "verify"), args.out)
        if cmd == "verify" and not report.sharkovsky_ok:
            return 1
        return 0

    if cmd == "digraph":
        g = cover_digraph(OrbitPattern.parse(args.pattern))
        if args.format == "json":
            doc = {"nodes": [f"J{i}" for i in range(1, g.node_count + 1)],
                   "edges": [[a, b] for a, b in g.edges]}
            _emit(json.dumps(doc, indent=2) + "\n", args.out)
        else:
            _emit(digraph_to_dot(g), args.out)
        return 0

    if cmd == "stefan":
        p = OrbitPattern.parse(args.pattern)
        print(f"stefan: {'yes' if is_stefan(p) else 'no'}")
        return 0

    if cmd == "realize":
        if args.pattern is not None:
            if args.loop is None:
                raise DomainError("realize: --pattern needs --loop with gap indices")
            p = OrbitPattern.parse(args.pattern)
            f = connect_the_dots(p)
            gaps = gap_intervals(p)
            try:
                idxs = [int(t) for t in args.loop.split()]
            except ValueError:
                raise DomainError(f"--loop: not an integer list: {args.loop!r}") from None
            if not idxs or not all(1 <= i <= len(gaps) for i in idxs):
                raise DomainError(f"--loop: gap indices must lie in 1..{len(gaps)}")
            cycle = IntervalCycle(tuple(gaps[i - 1] for i in idxs))
        elif args.map is not None:
            if args.cycle is None:
                raise DomainError("realize: --map needs --cycle with interval pairs")
            f = _read_map(args.map)
            cycle = _parse_cycle_json(args.cycle)
        else:
            raise DomainError("realize: need --map/--cycle or --pattern/--loop")
        cert = realize_loop(f, cycle)
        doc = cert.to_json_dict()
        doc["least_period"] = least_period(f, cert.witness, len(cycle))
        _emit(json.dumps(doc, indent=2) + "\n", args.out)
        return 0

    if cmd == "witness":
        result = witness(SharkClass.parse(args.cls), strategy=args.strategy, depth=args.depth)
        _emit(dump_map(result.plmap, comment=result.recipe), args.out)
        if args.out is not None:
            print(f"wrote witness for class {result.recipe['class']} "
                  f"(verify bound {result.recipe['verify_bound']}) to {args.out}")
        return 0

    if cmd == "double":
        f = _read_map(args.map)
        a = parse_rational(args.a, "--a")
        _emit(dump_map(double(f, args.op, a)), args.out)
        return 0

    if cmd == "phi":
        spec = PhiSpec(
            alpha=args.alpha,
            depth=args.depth,
            a_values=(parse_rational(args.a, "--a"),),
            b_values=(parse_rational(args.b, "--b"),),
        )
        res = phi_truncation(spec)
        comment = {
            "alpha": spec.alpha,
            "depth": spec.depth,
            "a": args.a,
            "b": args.b,
            "stabilization_threshold": format_rational(res.threshold),
            "sup_tail_bound": format_rational(res.tail_bound),
        }
        _emit(dump_map(res.plmap, comment=comment), args.out)
        return 0

    if cmd == "plot":
        f = _read_map(args.map)
        text = plot_csv(f, args.samples) if args.format == "csv" else plot_svg(f)
        _emit(text, args.out)
        return 0

    raise DomainError(f"unknown command {cmd!r}")  # pragma: no cover


def run(argv: Optional[list[str]] = None) -> int:
    """Parse arguments and execute; returns the process exit code."""
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return _dispatch(args)
    except ResourceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (DomainError, PreconditionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except VerificationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except SharklabError as exc:  # pragma: no cover - catch-all for subclasses
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
