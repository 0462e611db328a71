"""Command line front end.

Subcommands::

    opertorsor aut mul|inv|project|decompose|kernel SERIES... [--order M] [--chart C]
    opertorsor cocycle --chart C S T --order N [--at X]
    opertorsor oper canonicalize|is-oper CONNECTION [--allow-quadratic-extension]
    opertorsor oper change-coords CANONICAL S [--oracle]
    opertorsor oper schwarzian --chart C T S
    opertorsor oper cocycle-check --chart C --lie L TI TJ [TK]

Series, rationals and rational functions may be given inline (JSON or an
expression) or as file paths.  Exit status: 0 success, 2 parse error,
3 domain error; errors are one line on stderr, ``error[<code>]: message``.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import formats
from .curve import taylor_cocycle_at_point, taylor_cocycle_universal
from .errors import DomainError, OperTorsorError, ParseError
from .jetgroup import aut_inverse, aut_mul, decompose, kernel_witness, project
from .oper import (
    canonicalize,
    change_coords,
    change_coords_oracle,
    is_oper,
    schwarzian,
    torsor_cocycle_check,
    triple_cocycle_check,
)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"error[usage]: {message}\n")
        raise SystemExit(2)


def _document(arg: str):
    """Inline JSON if it looks like JSON, otherwise a file path."""
    text = arg.strip()
    if text[:1] in "[{":
        return formats.loads(text, "<inline>"), None
    path = Path(arg)
    return formats.load_json(path), path.parent


def _series(arg: str, chart=None, aut=True):
    data, _ = _document(arg)
    return formats.parse_series(data, chart, aut)


def _chart(arg):
    if arg is None:
        return None
    data, base = _document(arg)
    return formats.parse_chart(data, base)


def _coord(arg: str, chart):
    if arg in chart.coordinates:
        return arg
    return formats.parse_rf(arg, chart)


def _emit_series(s, args):
    if args.json:
        return formats.dumps(formats.series_record(s))
    return formats.pretty_series(s)


def cmd_aut(args) -> str:
    chart = _chart(args.chart)
    jets = [_series(x, chart) for x in args.series]
    op = args.op
    need = {"mul": 2, "inv": 1, "project": 1, "decompose": 1, "kernel": 1}[op]
    if len(jets) != need:
        raise ParseError(f"'aut {op}' takes {need} series argument(s), got {len(jets)}")
    if op == "mul":
        return _emit_series(aut_mul(*jets), args)
    if op == "inv":
        return _emit_series(aut_inverse(jets[0]), args)
    if op == "project":
        if args.order is None:
            raise ParseError("'aut project' needs --order")
        return _emit_series(project(jets[0], args.order), args)
    if op == "decompose":
        lam, u = decompose(jets[0])
        if args.json:
            scale = formats.rf_str(lam.lam) if chart else formats.rational_str(lam.lam)
            return formats.dumps({"scale": scale, "unipotent": formats.series_record(u.jet)})
        return f"scale: {formats.pretty_rf(lam.lam)}\nunipotent: {formats.pretty_series(u.jet)}"
    witness = kernel_witness(jets[0])
    return "absent" if witness is None else formats.pretty_rf(witness)


def cmd_cocycle(args) -> str:
    chart = _chart(args.chart)
    s, t = _coord(args.s, chart), _coord(args.t, chart)
    if args.at is not None:
        jet = taylor_cocycle_at_point(chart, s, t, formats.parse_rational(args.at), args.order)
    else:
        jet = taylor_cocycle_universal(chart, s, t, args.order)
    return _emit_series(jet, args)


def _load_connection(arg):
    data, base = _document(arg)
    return formats.parse_connection(data, base), data


def _pretty_canonical(omega, gauge=None) -> str:
    from .formats import coordinate_name

    lines = [f"coordinate: {coordinate_name(omega.coordinate, omega.chart)}"]
    ext = getattr(omega.ring, "u", None)
    if ext is not None:
        lines.append(f"{omega.ring.name}² = {formats.pretty_rf(ext)}")
    for j, (d, c) in enumerate(zip(omega.lie.exponents, omega.coeffs), start=1):
        lines.append(f"ω{j} [degree {d}] = {formats.pretty_rf(c)}")
    if gauge is not None:
        lines.append("gauge:")
        for row in gauge.matrix:
            lines.append("  [" + ", ".join(formats.pretty_rf(x) for x in row) + "]")
    return "\n".join(lines)


def _canonical_json(omega, gauge, data) -> str:
    rec = formats.canonical_record(omega, data["lie"], omega.chart)
    if gauge is not None:
        rec["gauge"] = formats.matrix_record(gauge.matrix)
    return formats.dumps(rec)


def cmd_oper(args) -> str:
    op = args.op
    if op in ("canonicalize", "is-oper"):
        if len(args.inputs) != 1:
            raise ParseError(f"'oper {op}' takes one connection file")
        conn, data = _load_connection(args.inputs[0])
        if op == "is-oper":
            check = is_oper(conn)
            lines = [f"is-oper: {'true' if check.ok else 'false'}"]
            lines += [f"  - {d}" for d in check.diagnostics]
            return "\n".join(lines)
        omega, gauge = canonicalize(conn, args.allow_quadratic_extension)
        if args.json:
            return _canonical_json(omega, gauge, data)
        return _pretty_canonical(omega, gauge)
    if op == "change-coords":
        if len(args.inputs) != 2:
            raise ParseError("'oper change-coords' takes a canonical oper file and a coordinate")
        doc, base = _document(args.inputs[0])
        omega = formats.parse_canonical(doc, base)
        s = _coord(args.inputs[1], omega.chart)
        if args.oracle:
            new, gauge = change_coords_oracle(omega, s, args.allow_quadratic_extension)
        else:
            new, gauge = change_coords(omega, s)
        if args.json:
            return _canonical_json(new, gauge, doc)
        return _pretty_canonical(new, gauge)
    chart = _chart(args.chart)
    if chart is None:
        raise ParseError(f"'oper {op}' needs --chart")
    if op == "schwarzian":
        if len(args.inputs) != 2:
            raise ParseError("'oper schwarzian' takes two coordinates T S")
        t, s = (_coord(x, chart) for x in args.inputs)
        return formats.pretty_rf(schwarzian(chart, t, s))
    # cocycle-check
    if args.lie is None:
        raise ParseError("'oper cocycle-check' needs --lie")
    lie = formats.parse_lie(args.lie)
    coords = [_coord(x, chart) for x in args.inputs]
    if len(coords) not in (2, 3):
        raise ParseError("'oper cocycle-check' takes two or three coordinates")
    report = torsor_cocycle_check(chart, coords[0], coords[1], lie)
    b2 = report.b2ad
    lines = [
        f"cocycle-check: {'PASS' if report.passed else 'FAIL'}",
        f"orientation: {report.orientation}",
        f"jet cocycle: {formats.pretty_series(report.jet_cocycle)}",
        f"(B2)_ad: a = {formats.pretty_rf(b2.a)}, b = {formats.pretty_rf(b2.b)}",
        f"closed form matches r-image: {'yes' if report.formula_matches else 'no'}",
    ]
    lines += [f"note: {n}" for n in report.notes]
    if len(coords) == 3:
        tri = triple_cocycle_check(chart, *coords, lie)
        lines.append(f"triple overlap: {'PASS' if tri.passed else 'FAIL'}")
        lines.append(f"gauge law: {', '.join(tri.gauge_law) or 'none'}")
        lines.append(f"jet law: {', '.join(tri.jet_law) or 'none'}")
        lines.append(f"left-torsor law d_ki = d_kj d_ji: {'yes' if tri.left_torsor_law else 'no'}")
    return "\n".join(lines)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="opertorsor", description=__doc__.split("\n\n")[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    a = sub.add_parser("aut", help="operations in the truncated coordinate-change group")
    a.add_argument("op", choices=["mul", "inv", "project", "decompose", "kernel"])
    a.add_argument("series", nargs="+")
    a.add_argument("--order", type=int)
    a.add_argument("--chart")
    a.add_argument("--json", action="store_true")
    a.set_defaults(func=cmd_aut)

    c = sub.add_parser("cocycle", help="Taylor coordinate-change cocycle")
    c.add_argument("s")
    c.add_argument("t")
    c.add_argument("--chart", required=True)
    c.add_argument("--order", type=int, required=True)
    c.add_argument("--at")
    c.add_argument("--json", action="store_true")
    c.set_defaults(func=cmd_cocycle)

    o = sub.add_parser("oper", help="canonical forms and coordinate changes of opers")
    o.add_argument("op", choices=["canonicalize", "is-oper", "change-coords", "schwarzian", "cocycle-check"])
    o.add_argument("inputs", nargs="*")
    o.add_argument("--chart")
    o.add_argument("--lie")
    o.add_argument("--oracle", action="store_true")
    o.add_argument("--allow-quadratic-extension", action="store_true")
    o.add_argument("--json", action="store_true")
    o.set_defaults(func=cmd_oper)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    # options may precede trailing positionals (``oper schwarzian --chart C T S``)
    args, extra = parser.parse_known_args(argv)
    target = "inputs" if hasattr(args, "inputs") else "series" if hasattr(args, "series") else None
    if extra and (target is None or any(x.startswith("--") for x in extra)):
        parser.error(f"unrecognized arguments: {' '.join(extra)}")
    if extra:
        getattr(args, target).extend(extra)
    try:
        out = args.func(args)
    except ParseError as exc:
        sys.stderr.write(f"error[{exc.code}]: {exc}\n")
        return 2
    except DomainError as exc:
        sys.stderr.write(f"error[{exc.code}]: {exc}\n")
        return 3
    except OperTorsorError as exc:  # pragma: no cover - every error is one of the above
        sys.stderr.write(f"error[{exc.code}]: {exc}\n")
        return 3
    sys.stdout.write(out + "\n")
    return 0


if __name__ == "__main__":
    sys.exit(main())
