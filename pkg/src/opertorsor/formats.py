"""File formats and canonical text forms.

All documents are JSON.  Exact rationals are strings ``"p/q"`` (or ``"p"``).
Rational functions are either expression strings in the chart variable
(``"t^2 - 1/t"``, ``^`` and ``**`` both mean power) or records
``{"num": [...], "den": [...]}`` of coefficient lists, lowest degree first.

Chart::

    {"variable": "t", "localization": ["0", "1"],
     "coordinates": {"s": "1/t", "u": {"num": ["0", "2"], "den": ["1"]}}}

Series (over QQ, or over the chart ring when ``chart`` is given)::

    {"order": 3, "coeffs": ["0", "2", "4"]}

Lie algebra: ``["sl", n]``, ``"sl3"``, or a realization document
``{"size": m, "basis": [...], "e": [...], "f": [...], "h": [...]}``
(``e``/``f``/``h`` are indices into ``basis``), or ``{"realization": path}``.

Connection::

    {"lie": ["sl", 2], "chart": <chart or path>, "coordinate": "t",
     "matrix": [["a", "b"], ["1", "-a"]]}

Canonical oper::

    {"lie": ..., "chart": ..., "coordinate": "t",
     "coefficients": [{"degree": 1, "value": "..."}, ...]}
"""

from __future__ import annotations

import json
import re
from fractions import Fraction
from pathlib import Path

from .curve import Chart, RationalFunction, poly_str, rf_str
from .errors import OperTorsorError, ParseError
from .jetgroup import AutJet, TruncSeries
from .liealg import LieRealization, build_sl
from .poly import Poly
from .quadratic import QuadraticElement
from .rings import QQ

_SUPERSCRIPT = str.maketrans("0123456789-", "⁰¹²³⁴⁵⁶⁷⁸⁹⁻")


# rationals


def rational_str(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def parse_rational(text) -> Fraction:
    if isinstance(text, int) and not isinstance(text, bool):
        return Fraction(text)
    if not isinstance(text, str):
        raise ParseError(f"expected a rational string, got {text!r}")
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"invalid rational {text!r}") from exc


# rational functions

_ALLOWED = re.compile(r"^[\w\s+\-*/^().]*$")


def parse_poly(coeffs) -> Poly:
    if not isinstance(coeffs, list):
        raise ParseError(f"expected a coefficient list, got {coeffs!r}")
    return Poly([parse_rational(c) for c in coeffs])


def _expr_to_fraction(text: str, var: str):
    import sympy
    from sympy.parsing.sympy_parser import (
        convert_xor,
        implicit_multiplication,
        parse_expr,
        standard_transformations,
    )

    if not _ALLOWED.match(text):
        raise ParseError(f"unexpected characters in expression {text!r}")
    names = set(re.findall(r"[A-Za-z_]\w*", text)) - {var}
    if names:
        raise ParseError(f"expression {text!r} uses unknown symbols {sorted(names)}")
    sym = sympy.Symbol(var)
    transformations = standard_transformations + (implicit_multiplication, convert_xor)
    try:
        expr = parse_expr(text, local_dict={var: sym}, transformations=transformations, evaluate=True)
    except Exception as exc:  # sympy raises a zoo of exception types
        raise ParseError(f"cannot parse expression {text!r}: {exc}") from exc
    extra = expr.free_symbols - {sym}
    if extra:
        raise ParseError(f"expression {text!r} uses unknown symbols {sorted(map(str, extra))}")
    num, den = sympy.fraction(sympy.together(expr))
    try:
        pn = sympy.Poly(num, sym, domain="QQ")
        pd = sympy.Poly(den, sym, domain="QQ")
    except Exception as exc:
        raise ParseError(f"{text!r} is not a rational function of {var}") from exc

    def conv(p):
        out = [Fraction(0)] * (p.degree() + 1 if not p.is_zero else 1)
        for (k,), c in p.terms():
            out[k] = Fraction(int(c.numerator), int(c.denominator))
        return Poly(out)

    return conv(pn), conv(pd)


def parse_rf(value, chart: Chart) -> RationalFunction:
    if isinstance(value, RationalFunction):
        return chart.coerce(value)
    if isinstance(value, int) and not isinstance(value, bool):
        return chart.coerce(value)
    if isinstance(value, dict):
        try:
            num, den = parse_poly(value["num"]), parse_poly(value.get("den", ["1"]))
        except KeyError as exc:
            raise ParseError(f"rational function record needs 'num': {value!r}") from exc
    elif isinstance(value, str):
        num, den = _expr_to_fraction(value, chart.var)
    else:
        raise ParseError(f"cannot read a rational function from {value!r}")
    if den.is_zero():
        raise ParseError(f"zero denominator in {value!r}")
    return RationalFunction(num, den, chart)


def rf_record(f: RationalFunction) -> dict:
    return {"num": [rational_str(c) for c in f.num.coeffs] or ["0"],
            "den": [rational_str(c) for c in f.den.coeffs]}


def pretty_rf(f) -> str:
    """Unicode form used in human-readable output: ``2t``, ``-t⁻²``, ``1/2·t³``."""
    if isinstance(f, (int, Fraction)):
        return rational_str(f)
    if isinstance(f, QuadraticElement):
        return _pretty_quadratic(f)
    if not isinstance(f, RationalFunction):
        return str(f)
    var = f.chart.var
    if f.den.is_constant() or f.den.is_monomial():
        return _pretty_laurent(f.num, var, f.den.degree if f.den.degree > 0 else 0)
    num = _pretty_laurent(f.num, var, 0)
    if _term_count(f.num) > 1:
        num = f"({num})"
    return f"{num}/({_pretty_laurent(f.den, var, 0)})"


def _pretty_quadratic(x) -> str:
    a = pretty_rf(x.a)
    if x.b.is_zero():
        return a
    b, w = pretty_rf(x.b), x.ring.name
    if b in ("1", "-1"):
        root = w if b == "1" else "-" + w
    else:
        root = f"{b}·{w}" if _single(b) else f"({b})·{w}"
    if x.a.is_zero():
        return root
    return _join_terms([a if _single(a) else f"({a})", root])


def _term_count(p: Poly) -> int:
    return sum(1 for c in p.coeffs if c != 0)


def _pretty_laurent(p: Poly, var: str, shift: int) -> str:
    if p.is_zero():
        return "0"
    terms = []
    for k, c in enumerate(p.coeffs):
        if c == 0:
            continue
        e = k - shift
        terms.append(_pretty_term(c, var, e))
    return _join_terms(terms)


def _pretty_term(c: Fraction, mono_var: str, e: int) -> str:
    if e == 0:
        return rational_str(c)
    mono = mono_var + ("" if e == 1 else str(e).translate(_SUPERSCRIPT))
    if c == 1:
        return mono
    if c == -1:
        return "-" + mono
    cs = rational_str(c)
    return cs + mono if c.denominator == 1 else f"{cs}·{mono}"


def _join_terms(terms) -> str:
    out = terms[0]
    for t in terms[1:]:
        out += f" - {t[1:]}" if t.startswith("-") else f" + {t}"
    return out


def pretty_series(s: TruncSeries, var: str = "z") -> str:
    terms = []
    for k, c in enumerate(s.coeffs):
        if c == 0:
            continue
        cs = pretty_rf(c)
        if k == 0:
            terms.append(cs if _single(cs) else f"({cs})")
            continue
        mono = var + ("" if k == 1 else str(k).translate(_SUPERSCRIPT))
        if cs == "1":
            terms.append(mono)
        elif cs == "-1":
            terms.append("-" + mono)
        elif not _single(cs):
            terms.append(f"({cs})·{mono}")
        elif re.fullmatch(r"-?\d+", cs):
            terms.append(cs + mono)
        else:
            terms.append(f"{cs}·{mono}")
    return _join_terms(terms) if terms else "0"


def _single(cs: str) -> bool:
    return " + " not in cs and " - " not in cs and "/(" not in cs


# series


def series_record(s: TruncSeries) -> dict:
    if s.ring == QQ:
        coeffs = [rational_str(c) for c in s.coeffs]
    else:
        coeffs = [rf_str(c) for c in s.coeffs]
    return {"order": s.order, "coeffs": coeffs}


def parse_series(data, chart: Chart | None = None, aut: bool = True) -> TruncSeries:
    if isinstance(data, list):
        data = {"order": len(data), "coeffs": data}
    if not isinstance(data, dict) or "coeffs" not in data:
        raise ParseError("series needs a 'coeffs' list")
    raw = data["coeffs"]
    if not isinstance(raw, list) or not raw:
        raise ParseError("series 'coeffs' must be a nonempty list")
    order = data.get("order", len(raw))
    if not isinstance(order, int) or order < 1:
        raise ParseError(f"invalid order {order!r}")
    if len(raw) > order:
        raise ParseError(f"{len(raw)} coefficients given for order {order}")
    if chart is None:
        coeffs = [parse_rational(c) for c in raw] + [Fraction(0)] * (order - len(raw))
        ring = QQ
    else:
        coeffs = [parse_rf(c, chart) for c in raw] + [chart.zero] * (order - len(raw))
        ring = chart
    cls = AutJet if aut else TruncSeries
    return cls(coeffs, ring)


# charts


def parse_chart(data, base: Path | None = None) -> Chart:
    if isinstance(data, str):
        return parse_chart(load_json(_resolve(data, base)))
    if not isinstance(data, dict):
        raise ParseError("chart must be an object")
    var = data.get("variable", "t")
    if not isinstance(var, str) or not re.fullmatch(r"[A-Za-z]\w*", var):
        raise ParseError(f"invalid chart variable {var!r}")
    loc = data.get("localization", ["1"])
    if isinstance(loc, str):
        num, den = _expr_to_fraction(loc, var)
        if not den.is_constant():
            raise ParseError("localization must be a polynomial")
        q = num
    else:
        q = parse_poly(loc)
    if q.is_zero():
        raise ParseError("localization polynomial must be nonzero")
    chart = Chart(var, q)
    coords = data.get("coordinates", {})
    if not isinstance(coords, dict):
        raise ParseError("'coordinates' must be an object")
    for name, value in coords.items():
        chart.add_coordinate(name, parse_rf(value, chart))
    return chart


def chart_record(chart: Chart) -> dict:
    return {
        "variable": chart.var,
        "localization": [rational_str(c) for c in chart.q.coeffs],
        "coordinates": {k: rf_str(v) for k, v in chart.coordinates.items() if k != chart.var},
    }


# Lie algebras


def parse_lie(data, base: Path | None = None) -> LieRealization:
    if isinstance(data, str):
        m = re.fullmatch(r"sl:?(\d+)", data.strip())
        if m:
            return build_sl(int(m.group(1)))
        return parse_lie(load_json(_resolve(data, base)))
    if isinstance(data, list) and len(data) == 2 and data[0] == "sl" and isinstance(data[1], int):
        return build_sl(data[1])
    if isinstance(data, dict):
        if "realization" in data:
            return parse_lie(load_json(_resolve(data["realization"], base)))
        if data.get("type") == "sl" and isinstance(data.get("n"), int):
            return build_sl(data["n"])
        return LieRealization.from_dict(data)
    raise ParseError(f"cannot read a Lie algebra from {data!r}")


# connections and canonical opers


def parse_connection(data, base: Path | None = None):
    from .oper import OperConnection

    lie, chart = _lie_and_chart(data, base)
    coord = data.get("coordinate", chart.var)
    matrix = data.get("matrix")
    if not isinstance(matrix, list) or len(matrix) != lie.size:
        raise ParseError(f"'matrix' must be a {lie.size}x{lie.size} list")
    rows = []
    for row in matrix:
        if not isinstance(row, list) or len(row) != lie.size:
            raise ParseError(f"'matrix' must be a {lie.size}x{lie.size} list")
        rows.append(tuple(parse_rf(x, chart) for x in row))
    return OperConnection(lie, chart, _coord_value(coord, chart), tuple(rows))


def parse_canonical(data, base: Path | None = None):
    from .oper import CanonicalOper

    lie, chart = _lie_and_chart(data, base)
    coord = data.get("coordinate", chart.var)
    raw = data.get("coefficients")
    if not isinstance(raw, list) or len(raw) != lie.rank:
        raise ParseError(f"'coefficients' must list {lie.rank} entries")
    coeffs = []
    for j, item in enumerate(raw):
        if isinstance(item, dict):
            if "degree" in item and item["degree"] != lie.exponents[j]:
                raise ParseError(
                    f"coefficient {j + 1} has degree {item['degree']}, expected {lie.exponents[j]}"
                )
            item = item.get("value")
        coeffs.append(parse_rf(item, chart))
    return CanonicalOper(lie, chart, _coord_value(coord, chart), coeffs)


def _coord_value(coord, chart):
    if isinstance(coord, str) and coord in chart.coordinates:
        return coord
    return parse_rf(coord, chart)


def _lie_and_chart(data, base):
    if not isinstance(data, dict):
        raise ParseError("document must be an object")
    for key in ("lie", "chart"):
        if key not in data:
            raise ParseError(f"missing field {key!r}")
    return parse_lie(data["lie"], base), parse_chart(data["chart"], base)


def canonical_record(omega, lie_spec, chart) -> dict:
    return {
        "lie": lie_spec,
        "chart": chart_record(chart),
        "coordinate": coordinate_name(omega.coordinate, chart),
        "coefficients": [
            {"degree": d, "value": rf_str(c) if isinstance(c, RationalFunction) else str(c)}
            for d, c in zip(omega.lie.exponents, omega.coeffs)
        ],
    }


def coordinate_name(value, chart: Chart) -> str:
    for name, f in chart.coordinates.items():
        if f == value:
            return name
    return rf_str(value)


def matrix_record(mat) -> list:
    return [[rf_str(x) if isinstance(x, RationalFunction) else str(x) for x in row] for row in mat]


# files


def load_json(path):
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from exc
    return loads(text, str(path))


def loads(text: str, source: str = "<input>"):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{source}: {exc.msg}", exc.lineno, exc.colno) from exc


def _resolve(ref: str, base: Path | None) -> Path:
    p = Path(ref)
    if not p.is_absolute() and base is not None and not p.exists():
        p = base / p
    return p


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False)


__all__ = [
    "OperTorsorError",
    "parse_rational",
    "rational_str",
    "parse_rf",
    "rf_record",
    "pretty_rf",
    "pretty_series",
    "parse_series",
    "series_record",
    "parse_chart",
    "chart_record",
    "parse_lie",
    "parse_connection",
    "parse_canonical",
    "canonical_record",
    "matrix_record",
    "load_json",
    "loads",
    "dumps",
    "poly_str",
]
