"""TOML file formats for metric groups and premodular categories.

Metric group::

    orders = [2, 4]
    [q]
    "0,0" = "0"
    "0,1" = "1/8"
    ...

or, instead of the full ``q`` table, values on generators::

    [generators]
    q = ["1/4", "1/8"]        # q(e_i)
    b = { "0,1" = "1/2" }     # b(e_i, e_j), i < j

Category::

    simples = ["1", "sgn", "V"]
    unit = "1"
    [dual]
    sgn = "sgn"
    [[fusion]]
    x = "V"
    y = "V"
    z = "1"
    n = 1
    [twists]
    V = "0"
    [dims]         # optional
    V = 2

Omitted fusion triples are zero; labels missing from ``dual`` are self-dual.
"""

from __future__ import annotations

import re
import sys
from fractions import Fraction
from typing import Any

import tomli
import tomli_w

from .abelian import AbelianGroup, format_element, parse_element
from .cyclotomic import RootOfUnity
from .errors import ModcatError, ParseError, ValidationError
from .fusion import FusionRing
from .metric import MetricGroup, from_gram
from .premodular import PremodularData


def _line_of(text: str, needle: str) -> int | None:
    for i, line in enumerate(text.splitlines(), 1):
        if needle in line:
            return i
    return None


def _exponent(value: Any, where: str, path: str | None, text: str) -> Fraction:
    try:
        if isinstance(value, bool) or not isinstance(value, (str, int)):
            raise ValueError
        return Fraction(value)
    except (ValueError, ZeroDivisionError):
        raise ParseError(
            f"{where}: expected an exponent like \"1/8\", got {value!r}", path, _line_of(text, where.split(".")[-1])
        ) from None


def loads(text: str, path: str | None = None) -> MetricGroup | PremodularData:
    """Parse either file kind; the presence of ``orders`` or ``simples`` decides."""
    try:
        data = tomli.loads(text)
    except tomli.TOMLDecodeError as exc:
        line = getattr(exc, "lineno", None)
        if line is None:
            m = re.search(r"line (\d+)", str(exc))
            line = int(m.group(1)) if m else None
        if line is not None:
            # errors at end of input point past the last line
            line = max(1, min(line, len(text.splitlines())))
        raise ParseError(str(exc), path, line) from None
    if "orders" in data:
        return _metric_from(data, path, text)
    if "simples" in data:
        return _category_from(data, path, text)
    raise ParseError("expected `orders` (metric group) or `simples` (category)", path, None)


def load(path: str) -> MetricGroup | PremodularData:
    if path == "-":
        return loads(sys.stdin.read(), "<stdin>")
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read(), path)


def _metric_from(data: dict, path: str | None, text: str) -> MetricGroup:
    orders = data["orders"]
    if not isinstance(orders, list) or not all(isinstance(n, int) and n >= 1 for n in orders):
        raise ParseError("`orders` must be a list of positive integers", path, _line_of(text, "orders"))
    try:
        G = AbelianGroup(tuple(orders))
    except ModcatError as exc:
        raise ParseError(str(exc), path, _line_of(text, "orders")) from None
    if "q" in data and "generators" in data:
        raise ParseError("give either a `q` table or a `generators` block, not both", path, _line_of(text, "generators"))
    if "generators" in data:
        gen = data["generators"]
        diag = [_exponent(v, "generators.q", path, text) for v in gen.get("q", [])]
        off = {}
        for key, v in gen.get("b", {}).items():
            try:
                i, j = parse_element(key)
            except ValueError:
                raise ParseError(f"bad generator pair {key!r}", path, _line_of(text, key)) from None
            off[(i, j)] = _exponent(v, f"generators.b.{key}", path, text)
        try:
            return from_gram(G, diag, off)
        except ValidationError as exc:
            raise ParseError(str(exc), path, _line_of(text, "generators")) from None
    if "q" not in data:
        raise ParseError("missing `q` table", path, None)
    table = {}
    for key, v in data["q"].items():
        try:
            g = parse_element(key)
        except ValueError:
            raise ParseError(f"bad element {key!r}", path, _line_of(text, f'"{key}"')) from None
        if g not in G:
            raise ParseError(f"element {key!r} is not in the group {G}", path, _line_of(text, f'"{key}"'))
        table[g] = _exponent(v, f"q.{key}", path, text)
    missing = [g for g in G.elements() if g not in table]
    if missing:
        raise ParseError(f"q is missing the element {format_element(missing[0])!r}", path, _line_of(text, "[q]"))
    return MetricGroup(G, table, check=False)


def _category_from(data: dict, path: str | None, text: str) -> PremodularData:
    simples = data["simples"]
    if not isinstance(simples, list) or not all(isinstance(s, str) for s in simples):
        raise ParseError("`simples` must be a list of strings", path, _line_of(text, "simples"))
    unit = data.get("unit", simples[0] if simples else None)
    dual = {x: x for x in simples}
    for x, y in data.get("dual", {}).items():
        dual[x] = y
    mult: dict[tuple[str, str], dict[str, int]] = {}
    for i, rec in enumerate(data.get("fusion", [])):
        try:
            x, y, z, n = rec["x"], rec["y"], rec["z"], rec.get("n", 1)
        except (KeyError, TypeError):
            raise ParseError(f"fusion record #{i + 1} needs x, y, z (and optionally n)", path, _nth_line(text, "[[fusion]]", i)) from None
        if not isinstance(n, int):
            raise ParseError(f"fusion record #{i + 1}: n must be an integer", path, _nth_line(text, "[[fusion]]", i))
        slot = mult.setdefault((x, y), {})
        if z in slot:
            raise ParseError(f"duplicate fusion record for ({x}, {y}, {z})", path, _nth_line(text, "[[fusion]]", i))
        slot[z] = n
    try:
        R = FusionRing(simples, unit, dual, mult)
    except ValidationError as exc:
        raise ParseError(str(exc), path, None) from None
    twists_raw = data.get("twists", {})
    twists = {}
    for x in simples:
        if x not in twists_raw:
            raise ParseError(f"twist of {x!r} is missing", path, _line_of(text, "[twists]"))
        twists[x] = RootOfUnity(_exponent(twists_raw[x], f"twists.{x}", path, text))
    for x in twists_raw:
        if x not in dual:
            raise ParseError(f"twist given for unknown simple {x!r}", path, _line_of(text, x))
    dims = None
    if "dims" in data:
        dims = {}
        for x in simples:
            d = data["dims"].get(x)
            if not isinstance(d, int) or d < 1:
                raise ParseError(f"dim of {x!r} must be a positive integer", path, _line_of(text, "[dims]"))
            dims[x] = d
    return PremodularData(R, twists, dims)


def _nth_line(text: str, needle: str, n: int) -> int | None:
    seen = -1
    for i, line in enumerate(text.splitlines(), 1):
        if line.strip().startswith(needle):
            seen += 1
            if seen == n:
                return i
    return None


def dumps_metric(M: MetricGroup) -> str:
    q = {format_element(g): str(M.q(g)) for g in M.group.elements()}
    return tomli_w.dumps({"orders": list(M.group.orders), "q": q})


def dumps_category(C: PremodularData) -> str:
    R = C.ring
    fusion = [
        {"x": x, "y": y, "z": z, "n": n}
        for x in R.labels
        for y in R.labels
        for z, n in sorted(R.fuse(x, y).items(), key=lambda kv: R.position[kv[0]])
    ]
    doc = {
        "simples": list(R.labels),
        "unit": R.unit,
        "dual": {x: R.dual[x] for x in R.labels},
        "twists": {x: str(C.twist[x]) for x in R.labels},
        "dims": {x: C.dim[x] for x in R.labels},
        "fusion": fusion,
    }
    return tomli_w.dumps(doc)


def dumps(obj: MetricGroup | PremodularData) -> str:
    if isinstance(obj, MetricGroup):
        return dumps_metric(obj)
    return dumps_category(obj)
