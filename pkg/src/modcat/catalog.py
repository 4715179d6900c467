"""Named fixtures and the classification sweep for nondegenerate metric groups.

Every fixture is built from the constructors in :mod:`modcat.metric` and
:mod:`modcat.premodular`; only the expected values are typed by hand.
"""

from __future__ import annotations

import copy
import itertools
import math
from dataclasses import dataclass, field, replace
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterator, Union

from . import caps, metric
from .abelian import AbelianGroup
from .cyclotomic import RootOfUnity, factorize
from .errors import BadTag, ValidationError
from .fusion import FusionRing
from .metric import MetricGroup
from .premodular import PremodularData, from_metric_group

Payload = Union[MetricGroup, PremodularData]


@dataclass
class Fixture:
    name: str
    payload: Payload
    expected: dict = field(default_factory=dict)
    description: str = ""

    def category(self) -> PremodularData:
        if isinstance(self.payload, PremodularData):
            return self.payload
        return from_metric_group(self.payload)


def _pretty(x: Fraction) -> str:
    return f"{x.numerator}_{x.denominator}" if x.denominator != 1 else str(x.numerator)


def _frac_list(xs) -> list[str]:
    return [str(Fraction(x)) for x in xs]


# -----------------------------------------------------------------------------
# doubles and small named categories


def double_of_abelian(G: AbelianGroup) -> PremodularData:
    """Pointed double of ``G``: the hyperbolic form on ``G x G^``."""
    caps.check("MODCAT_MAX_ORDER", G.order**2)
    return from_metric_group(metric.hyperbolic(G))


def _table_ring(labels, dual, table) -> FusionRing:
    mult = {}
    for x in labels:
        for y in labels:
            if x == labels[0]:
                mult[(x, y)] = {y: 1}
            elif y == labels[0]:
                mult[(x, y)] = {x: 1}
            else:
                key = (x, y) if (x, y) in table else (y, x)
                mult[(x, y)] = table[key]
    return FusionRing(labels, labels[0], dual, mult)


def rep_s3_ring() -> FusionRing:
    return _table_ring(
        ["1", "sgn", "V"],
        {"1": "1", "sgn": "sgn", "V": "V"},
        {("sgn", "sgn"): {"1": 1}, ("sgn", "V"): {"V": 1}, ("V", "V"): {"1": 1, "sgn": 1, "V": 1}},
    )


def rep_s3() -> PremodularData:
    """Representations of the symmetric group on three letters, all twists trivial."""
    R = rep_s3_ring()
    return PremodularData(R, {x: RootOfUnity(0) for x in R.labels})


def ising_ring() -> FusionRing:
    """Rank-3 ring with ``s (x) s = 1 + e``; its dimensions are not integral."""
    return _table_ring(
        ["1", "e", "s"],
        {"1": "1", "e": "e", "s": "s"},
        {("e", "e"): {"1": 1}, ("e", "s"): {"s": 1}, ("s", "s"): {"1": 1, "e": 1}},
    )


# -----------------------------------------------------------------------------
# two-group families (tags a-f)


def _z2z2(diag: tuple[str, str], off: str = "0") -> MetricGroup:
    return metric.from_gram(AbelianGroup.of(2, 2), list(diag), {(0, 1): off})


_Z2_CHARGE = {"1/4": Fraction(1, 8), "3/4": Fraction(7, 8)}


def _anisotropic_z2_z4() -> list[tuple[str, MetricGroup, Fraction]]:
    out = []
    for s in ("1/8", "3/8", "5/8", "7/8"):
        for t in ("1/4", "3/4"):
            M = metric.direct_sum(metric.cyclic(4, s), metric.cyclic(2, t))
            out.append((f"z4_s{_pretty(Fraction(s))}+z2_s{_pretty(Fraction(t))}", M, Fraction(s) + _Z2_CHARGE[t]))
    return out


_Z2Z2_NAMED = {
    # name: (builder, charge exponent, nontrivial q-values in element order (0,1), (1,0), (1,1))
    "i": (lambda: metric.direct_sum(metric.cyclic(2, "1/4"), metric.cyclic(2, "1/4")), "1/4"),
    "-i": (lambda: metric.direct_sum(metric.cyclic(2, "3/4"), metric.cyclic(2, "3/4")), "3/4"),
    "-1": (lambda: _z2z2(("1/2", "1/2"), "1/2"), "1/2"),
    "1": (lambda: metric.direct_sum(metric.cyclic(2, "1/4"), metric.cyclic(2, "3/4")), "0"),
    "double": (lambda: metric.hyperbolic(AbelianGroup.of(2)), "0"),
}

_Z2Z2_VALUES = {
    "i": ["1/4", "1/4", "1/2"],
    "-i": ["3/4", "3/4", "1/2"],
    "-1": ["1/2", "1/2", "1/2"],
    "1": ["3/4", "1/4", "0"],
    "double": ["0", "0", "1/2"],
}


def two_group_family(tag: str) -> list[Fixture]:
    """Small metric 2-groups grouped by family tag ``a`` to ``f``."""
    if tag == "a":
        out = []
        for s, modular, charge, iso in (("0", False, None, True), ("1/2", False, None, False), ("1/4", True, "1/8", None), ("3/4", True, "7/8", None)):
            exp = {"modular": modular}
            if charge is not None:
                exp["charge"] = charge
            else:
                exp["symmetric_whole"] = True
                exp["isotropic_whole"] = iso
            out.append(Fixture(f"z2_s{_pretty(Fraction(s))}", metric.cyclic(2, s), exp, f"Z/2 with q(1) = exp(2πi·{s})"))
        return out
    if tag == "b":
        out = []
        for s in ("1/8", "3/8", "5/8", "7/8"):
            exp = {"modular": True, "charge": s, "gauss_plus": f"2*{s}", "anisotropic": True}
            out.append(Fixture(f"z4_s{_pretty(Fraction(s))}", metric.cyclic(4, s), exp, f"Z/4 with q(1) = exp(2πi·{s})"))
        return out
    if tag == "c":
        out = []
        for k in (3, 4):
            n = 2**k
            for u in range(1, 2 * n, 2):
                s = Fraction(u, 2 * n)
                exp = {"modular": True, "anisotropic": False}
                out.append(Fixture(f"z{n}_s{_pretty(s)}", metric.cyclic(n, s), exp, f"Z/{n} with q(1) = exp(2πi·{s})"))
        return out
    if tag == "d":
        out = []
        for key, (build, charge) in _Z2Z2_NAMED.items():
            name = "double_z2" if key == "double" else f"z2xz2_{key}"
            exp = {
                "modular": True,
                "charge": charge,
                "q_values": _Z2Z2_VALUES[key],
                "anisotropic": charge != "0",
            }
            out.append(Fixture(name, build(), exp, f"Z/2 x Z/2, nontrivial q-values {_Z2Z2_VALUES[key]}"))
        return out
    if tag == "e":
        return [
            Fixture(name, M, {"modular": True, "anisotropic": True, "charge": str(c % 1)}, "anisotropic form on Z/4 x Z/2")
            for name, M, c in _anisotropic_z2_z4()
        ]
    if tag == "f":
        out = []
        for sp, sp_charge in _Z2_CHARGE.items():
            for key in ("i", "-i", "-1"):
                build, charge = _Z2Z2_NAMED[key]
                # excluded: sigma = 1 and sigma = -sigma'
                if (key == "-i" and sp == "1/4") or (key == "i" and sp == "3/4"):
                    continue
                M = metric.direct_sum(build(), metric.cyclic(2, sp))
                c = (Fraction(charge) + sp_charge) % 1
                name = f"z2xz2_{key}+z2_s{_pretty(Fraction(sp))}"
                out.append(Fixture(name, M, {"modular": True, "anisotropic": True, "charge": str(c)}, "anisotropic form on (Z/2)^3"))
        return out
    raise BadTag(f"unknown two-group family tag {tag!r} (expected a-f)")


# -----------------------------------------------------------------------------
# odd primes (tags a, b)


def _is_prime(n: int) -> bool:
    return n > 1 and all(n % d for d in range(2, math.isqrt(n) + 1))


def _non_residue(p: int) -> int:
    return next(a for a in range(2, p) if pow(a, (p - 1) // 2, p) == p - 1)


def odd_prime_family(p: int, tag: str) -> list[Fixture]:
    """``Z/p`` forms (tag ``a``) and the two nondegenerate forms on ``Z/p x Z/p`` (tag ``b``)."""
    if not (_is_prime(p) and p % 2 == 1 and p <= 13):
        raise BadTag(f"p must be an odd prime <= 13, got {p}")
    if tag == "a":
        charges = ["0", "1/2"] if p % 4 == 1 else ["1/4", "3/4"]
        out = []
        for k in range(p):
            s = Fraction(k, p)
            exp = {"modular": k != 0}
            if k == 0:
                exp["isotropic_whole"] = True
            else:
                exp["charge_in"] = charges
            out.append(Fixture(f"z{p}_s{_pretty(s)}", metric.cyclic(p, s), exp, f"Z/{p} with q(1) = exp(2πi·{s})"))
        return out
    if tag == "b":
        hyp = metric.hyperbolic(AbelianGroup.of(p))
        n = _non_residue(p)
        G = AbelianGroup.of(p, p)
        candidates = [metric.from_gram(G, [Fraction(1, p), Fraction(d, p)]) for d in (1, n)]
        other = next(M for M in candidates if not metric.isomorphic(M, hyp))
        return [
            Fixture(f"double_z{p}", hyp, {"modular": True, "charge": "0", "anisotropic": False}, f"hyperbolic form on Z/{p} x Z/{p}"),
            Fixture(f"z{p}xz{p}_nonsplit", other, {"modular": True, "charge": "1/2"}, f"non-hyperbolic form on Z/{p} x Z/{p}"),
        ]
    raise BadTag(f"unknown odd-prime family tag {tag!r} (expected a or b)")


# -----------------------------------------------------------------------------
# registry


def _doubles() -> list[Fixture]:
    out = []
    for orders in ((2,), (3,), (2, 2), (4,)):
        G = AbelianGroup(orders)
        name = "double_" + "x".join(f"z{n}" for n in orders)
        out.append(Fixture(name, double_of_abelian(G), {"modular": True, "charge": "0", "has_lagrangian": True}, f"double of {G}"))
    return out


@lru_cache(maxsize=None)
def _registry() -> dict[str, Callable[[], Fixture]]:
    reg: dict[str, Callable[[], Fixture]] = {}

    def add_all(builder):
        for fx in builder():
            reg.setdefault(fx.name, lambda fx=fx: fx)

    for tag in "abcdef":
        add_all(lambda tag=tag: two_group_family(tag))
    for p in (3, 5, 7, 11, 13):
        for tag in "ab":
            add_all(lambda p=p, tag=tag: odd_prime_family(p, tag))
    add_all(_doubles)
    reg["rep_s3"] = lambda: Fixture(
        "rep_s3",
        rep_s3(),
        {"modular": False, "nilpotency_class": None, "dims": {"1": 1, "sgn": 1, "V": 2}},
        "representations of S3 with trivial twists",
    )
    return reg


def fixture_names() -> list[str]:
    return sorted(_registry())


def fixture(name: str) -> Fixture:
    try:
        fx = _registry()[name]()
    except KeyError:
        raise BadTag(f"unknown fixture {name!r}") from None
    # payloads are immutable; the expected map is copied so callers may edit it
    return replace(fx, expected=copy.deepcopy(fx.expected))


def all_fixtures() -> list[Fixture]:
    return [fixture(n) for n in fixture_names()]


def observe(fx: Fixture) -> dict:
    """Recompute every key of ``fx.expected`` from the analysis code."""
    C = fx.category()
    out: dict = {}
    for key in fx.expected:
        if key == "modular":
            out[key] = C.is_modular()
        elif key in ("charge", "charge_in"):
            out[key] = str(C.central_charge())
        elif key == "gauss_plus":
            out[key] = _gauss_as_multiple(C)
        elif key == "anisotropic":
            out[key] = len(C.isotropic_subcategories()) == 1
        elif key == "q_values":
            M = fx.payload
            out[key] = [str(M.q(g)) for g in M.group.elements()[1:]]
        elif key == "symmetric_whole":
            out[key] = C.mueger_center().is_whole()
        elif key == "isotropic_whole":
            out[key] = C.is_isotropic(C.whole())
        elif key == "has_lagrangian":
            out[key] = C.find_lagrangian() is not None
        elif key == "nilpotency_class":
            out[key] = C.nilpotency_class()
        elif key == "dims":
            out[key] = dict(C.dim)
        else:
            raise KeyError(f"no observer for expected key {key!r}")
    return out


def _gauss_as_multiple(C: PremodularData) -> str | None:
    """``tau+`` written as ``k*r`` (an integer times a root of unity), if possible."""
    from .cyclotomic import is_root_of_unity

    tp = C.gauss_sums()[0]
    D = C.total_dim()
    k = math.isqrt(D)
    if k * k != D or tp.is_zero():
        return None
    r = is_root_of_unity(tp * Fraction(1, k))
    return None if r is None else f"{k}*{r}"


def check(fx: Fixture) -> list[str]:
    """Mismatches between the expected and the observed values of a fixture."""
    seen = observe(fx)
    bad = []
    for key, want in fx.expected.items():
        got = seen[key]
        ok = got in want if key.endswith("_in") else got == want
        if not ok:
            bad.append(f"{fx.name}: {key} expected {want!r}, got {got!r}")
    return bad


# -----------------------------------------------------------------------------
# classification sweep


def _cyclic_block(p: int, k: int, u: int) -> MetricGroup:
    n = p**k
    return metric.cyclic(n, Fraction(u, n if p % 2 else 2 * n))


def _plane_block(k: int, kind: str) -> MetricGroup:
    n = 2**k
    G = AbelianGroup.of(n, n)
    if kind == "U":
        return metric.from_gram(G, ["0", "0"], {(0, 1): Fraction(1, n)})
    return metric.from_gram(G, [Fraction(1, n), Fraction(1, n)], {(0, 1): Fraction(1, n)})


def _blocks(p: int, k: int) -> list[tuple[int, MetricGroup]]:
    """Indecomposable nondegenerate forms on groups of exponent ``p^k``, with their rank."""
    if p % 2:
        return [(1, _cyclic_block(p, k, u)) for u in (1, _non_residue(p))]
    units = (1, 3) if k == 1 else (1, 3, 5, 7)
    out = [(1, _cyclic_block(2, k, u)) for u in units]
    out += [(2, _plane_block(k, kind)) for kind in ("U", "V")]
    return out


def _sum_all(parts: list[MetricGroup]) -> MetricGroup:
    M = metric.trivial()
    for P in parts:
        M = metric.direct_sum(M, P) if M.order > 1 else P
    return M


def _homogeneous(p: int, k: int, m: int) -> list[list[MetricGroup]]:
    """Multisets of blocks of exponent ``p^k`` with total rank ``m``."""
    blocks = _blocks(p, k)
    out = []

    def rec(start: int, left: int, acc: list[MetricGroup]):
        if left == 0:
            out.append(list(acc))
            return
        for i in range(start, len(blocks)):
            r, B = blocks[i]
            if r <= left:
                rec(i, left - r, acc + [B])

    rec(0, m, [])
    return out


@lru_cache(maxsize=None)
def prime_power_classes(p: int, e: int) -> tuple[MetricGroup, ...]:
    """Nondegenerate metric groups of order ``p^e`` up to isometry."""
    if e == 0:
        return (metric.trivial(),)
    reps: list[MetricGroup] = []
    for part in metric._partitions(e):
        counts: dict[int, int] = {}
        for k in part:
            counts[k] = counts.get(k, 0) + 1
        choices = [_homogeneous(p, k, m) for k, m in sorted(counts.items(), reverse=True)]
        group_forms = [_sum_all([B for chunk in combo for B in chunk]) for combo in itertools.product(*choices)]
        reps.extend(metric.isomorphism_classes(group_forms))
    return tuple(reps)


def nondegenerate_classes(order: int) -> list[MetricGroup]:
    """Nondegenerate metric groups of the given order up to isometry.

    Built as orthogonal sums of the standard indecomposable blocks: cyclic
    ``Z/p^k`` forms for every prime, and the two rank-2 planes on
    ``Z/2^k x Z/2^k``.  Mixed orders are sums of their primary parts.
    """
    if order < 1:
        raise ValidationError("order must be positive")
    caps.check("MODCAT_MAX_ORDER", order)
    if order == 1:
        return [metric.trivial()]
    parts = [prime_power_classes(p, e) for p, e in factorize(order)]
    return [_sum_all(list(combo)) for combo in itertools.product(*parts)]


def brute_force_classes(order: int) -> list[MetricGroup]:
    """Same classification by exhaustive enumeration of forms (small orders only)."""
    out: list[MetricGroup] = []
    for G in groups_of_order(order):
        out.extend(metric.isomorphism_classes(metric.nondegenerate_forms(G)))
    return out


def groups_of_order(order: int) -> list[AbelianGroup]:
    """Abelian groups of the given order, one per isomorphism type, primary form."""
    if order == 1:
        return [AbelianGroup(())]
    per_prime = [[tuple(p**x for x in part) for part in metric._partitions(e)] for p, e in factorize(order)]
    return [AbelianGroup(tuple(o for block in combo for o in block)) for combo in itertools.product(*per_prime)]


def sweep(order_max: int, primes: tuple[int, ...] | None = None) -> Iterator[MetricGroup]:
    """All nondegenerate classes of order ``<= order_max``, optionally restricted to p-groups."""
    for n in range(1, order_max + 1):
        if primes is not None:
            fac = factorize(n) if n > 1 else ()
            if len(fac) > 1 or (fac and fac[0][0] not in primes):
                continue
        yield from nondegenerate_classes(n)
