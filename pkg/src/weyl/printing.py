"""Table and symbolic renderings of Weyl elements, plus the JSON document format."""

from __future__ import annotations

import json
import re
from fractions import Fraction

from .algebra import WeylElement, default_var_names
from .kernels import RULES
from .session import SessionConfig

__all__ = [
    "SerializationError",
    "deserialize",
    "format_coefficient",
    "format_element",
    "format_symbolic",
    "format_table",
    "serialize",
]


class SerializationError(ValueError):
    pass


def format_coefficient(c) -> str:
    c = Fraction(c)
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


def _cfg(w: WeylElement, cfg: SessionConfig | None) -> SessionConfig:
    if cfg is None:
        return SessionConfig.for_element(w)
    if cfg.arity != w.arity:
        # a scalar built elsewhere may be printed under any session
        if w.is_scalar:
            return cfg
        raise ValueError(f"session has arity {cfg.arity} but element has arity {w.arity}")
    return cfg


def format_table(w: WeylElement, cfg: SessionConfig | None = None) -> str:
    """One row per term: generator exponents, derivative exponents, value.

    Sessions using the default ``x1..xn`` names (arity above 3) are headed
    by bare indices ``1..n``.
    """
    if w.is_zero:
        return "0"
    cfg = _cfg(w, cfg)
    n = cfg.arity
    if n > 3 and cfg.var_names == default_var_names(n):
        var_labels = tuple(str(i) for i in range(1, n + 1))
    else:
        var_labels = cfg.var_names
    labels = var_labels + cfg.der_names
    rows = []
    for mono, c in w.items():
        if len(mono) != 2 * n:
            mono = (0,) * (2 * n)
        rows.append(([str(e) for e in mono], format_coefficient(c)))
    width = max(len(s) for s in labels + tuple(e for r, _ in rows for e in r)) + 1
    vwidth = max(4, max(len(v) for _, v in rows) + 1)
    lines = ["".join(s.rjust(width) for s in labels) + "    " + "val".rjust(vwidth)]
    for exps, v in rows:
        lines.append("".join(s.rjust(width) for s in exps) + "  = " + v.rjust(vwidth))
    return "\n".join(lines)


def _factor(name: str, e: int) -> str:
    return name if e == 1 else f"{name}^{e}"


def format_symbolic(w: WeylElement, cfg: SessionConfig | None = None) -> str:
    """Sign-prefixed terms in canonical order, e.g. ``1 +x*d +2*d^3``.

    The output is valid input to :func:`weyl.parser.evaluate`.
    """
    if w.is_zero:
        return "0"
    cfg = _cfg(w, cfg)
    n = cfg.arity
    names = cfg.var_names + cfg.der_names
    parts = []
    for mono, c in w.items():
        if len(mono) != 2 * n:
            mono = (0,) * (2 * n)
        factors = [_factor(names[i], e) for i, e in enumerate(mono) if e]
        sign = "-" if c < 0 else "+"
        mag = format_coefficient(abs(c))
        if not factors:
            parts.append(mag if sign == "+" else f"-{mag}")
            continue
        body = "*".join(factors)
        parts.append(f"{sign}{body}" if mag == "1" else f"{sign}{mag}*{body}")
    return " ".join(parts)


def format_element(w: WeylElement, cfg: SessionConfig | None = None, form: str | None = None) -> str:
    form = form or (cfg.print_form if cfg else "table")
    if form == "table":
        return format_table(w, cfg)
    if form == "symbolic":
        return format_symbolic(w, cfg)
    if form == "json":
        return serialize(w)
    raise ValueError(f"unknown print form {form!r}")


# -- JSON documents -------------------------------------------------------
#
# {"arity": n, "var_names": [...n names], "rule": "weyl",
#  "terms": [{"exps": [...2n ints], "coeff": "p/q"}, ...]}
#
# Terms are written in canonical order.

_COEFF = re.compile(r"-?\d+/\d+\Z")


def serialize(w: WeylElement, indent: int | None = None) -> str:
    doc = {
        "arity": w.arity,
        "var_names": list(w.var_names),
        "rule": w.rule.name,
        "terms": [
            {"exps": list(mono), "coeff": f"{Fraction(c).numerator}/{Fraction(c).denominator}"}
            for mono, c in w.items()
        ],
    }
    return json.dumps(doc, indent=indent)


def _fail(msg: str):
    raise SerializationError(msg)


def deserialize(text: str) -> WeylElement:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SerializationError(f"malformed JSON: {exc}") from None
    if not isinstance(doc, dict):
        _fail("document must be a JSON object")
    missing = {"arity", "var_names", "rule", "terms"} - doc.keys()
    if missing:
        _fail(f"missing fields: {', '.join(sorted(missing))}")
    extra = doc.keys() - {"arity", "var_names", "rule", "terms"}
    if extra:
        _fail(f"unexpected fields: {', '.join(sorted(extra))}")

    arity = doc["arity"]
    if not isinstance(arity, int) or isinstance(arity, bool) or arity < 1:
        _fail("arity must be a positive integer")
    names = doc["var_names"]
    if not isinstance(names, list) or len(names) != arity or not all(isinstance(s, str) for s in names):
        _fail(f"var_names must be a list of {arity} strings")
    if doc["rule"] not in RULES:
        _fail(f"unknown rule {doc['rule']!r}")
    if not isinstance(doc["terms"], list):
        _fail("terms must be a list")

    terms = {}
    for i, term in enumerate(doc["terms"]):
        if not isinstance(term, dict) or set(term) != {"exps", "coeff"}:
            _fail(f"term {i}: expected an object with 'exps' and 'coeff'")
        exps = term["exps"]
        if not isinstance(exps, list) or len(exps) != 2 * arity:
            _fail(f"term {i}: exps must list {2 * arity} integers")
        if not all(isinstance(e, int) and not isinstance(e, bool) and e >= 0 for e in exps):
            _fail(f"term {i}: exponents must be nonnegative integers")
        coeff = term["coeff"]
        if not isinstance(coeff, str) or not _COEFF.match(coeff):
            _fail(f"term {i}: coeff must be a 'p/q' string")
        num, den = (int(s) for s in coeff.split("/"))
        if den == 0:
            _fail(f"term {i}: zero denominator")
        value = Fraction(num, den)
        if value == 0:
            _fail(f"term {i}: zero coefficient")
        key = tuple(exps)
        if key in terms:
            _fail(f"term {i}: repeated monomial {key}")
        terms[key] = value
    try:
        return WeylElement(arity, terms, doc["rule"], tuple(names))
    except ValueError as exc:
        raise SerializationError(str(exc)) from None
