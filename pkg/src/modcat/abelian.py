"""Finite abelian groups ``Z/n1 x ... x Z/nk`` with explicit element enumeration.

Groups are kept in the coordinates they were given in (no normalization to
invariant factors), elements are tuples of residues, and subgroups are
explicit sorted element sets.  Everything here is meant for desk-scale
groups; enumeration sizes are bounded by the caps in :mod:`modcat.caps`.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Hashable, Iterable, Sequence

from . import caps
from .cyclotomic import factorize
from .errors import NotASubgroup

Element = tuple[int, ...]


@dataclass(frozen=True)
class AbelianGroup:
    orders: tuple[int, ...]

    def __post_init__(self) -> None:
        orders = tuple(int(n) for n in self.orders)
        if any(n < 1 for n in orders):
            raise ValueError(f"cyclic factor orders must be positive: {orders}")
        object.__setattr__(self, "orders", orders)

    @classmethod
    def of(cls, *orders: int) -> AbelianGroup:
        return cls(tuple(orders))

    @property
    def order(self) -> int:
        return math.prod(self.orders)

    @property
    def rank(self) -> int:
        return len(self.orders)

    @property
    def identity(self) -> Element:
        return (0,) * len(self.orders)

    def __len__(self) -> int:
        return self.order

    def __str__(self) -> str:
        if not self.orders:
            return "1"
        return " x ".join(f"Z/{n}" for n in self.orders)

    # elements ---------------------------------------------------------------

    @cached_property
    def _elements(self) -> tuple[Element, ...]:
        caps.check("MODCAT_MAX_ORDER", self.order)
        return tuple(itertools.product(*(range(n) for n in self.orders)))

    def elements(self) -> list[Element]:
        """All elements in lexicographic order."""
        return list(self._elements)

    @cached_property
    def index(self) -> dict[Element, int]:
        return {g: i for i, g in enumerate(self._elements)}

    def __contains__(self, g: object) -> bool:
        return (
            isinstance(g, tuple)
            and len(g) == len(self.orders)
            and all(isinstance(a, int) and 0 <= a < n for a, n in zip(g, self.orders))
        )

    def add(self, g: Element, h: Element) -> Element:
        return tuple((a + b) % n for a, b, n in zip(g, h, self.orders))

    def sub(self, g: Element, h: Element) -> Element:
        return tuple((a - b) % n for a, b, n in zip(g, h, self.orders))

    def neg(self, g: Element) -> Element:
        return tuple(-a % n for a, n in zip(g, self.orders))

    def mul(self, k: int, g: Element) -> Element:
        return tuple((k * a) % n for a, n in zip(g, self.orders))

    def element_order(self, g: Element) -> int:
        return math.lcm(1, *(n // math.gcd(a, n) for a, n in zip(g, self.orders)))

    @cached_property
    def element_orders(self) -> dict[Element, int]:
        return {g: self.element_order(g) for g in self._elements}

    @property
    def exponent(self) -> int:
        return math.lcm(1, *self.orders)

    def invariant_factors(self) -> tuple[int, ...]:
        """Invariant factors ``d1 | d2 | ...`` (all > 1) of the group."""
        return invariant_factors(self.orders)

    def normalize(self) -> AbelianGroup:
        return AbelianGroup(self.invariant_factors())

    def is_p_group(self) -> bool:
        return len(factorize(self.order)) <= 1

    # subgroups --------------------------------------------------------------

    def generated(self, gens: Iterable[Element]) -> Subgroup:
        return Subgroup(self, frozenset(closure(self, gens)))

    def trivial_subgroup(self) -> Subgroup:
        return Subgroup(self, frozenset([self.identity]))

    def whole(self) -> Subgroup:
        return Subgroup(self, frozenset(self._elements))

    def subgroups(self) -> list[Subgroup]:
        """Every subgroup exactly once, sorted by (order, elements)."""
        caps.check("MODCAT_MAX_SUBGROUP_ORDER", self.order)
        elems = self._elements
        seen: set[frozenset] = set()
        start = frozenset([self.identity])
        frontier = [start]
        seen.add(start)
        while frontier:
            nxt = []
            for s in frontier:
                for g in elems:
                    if g in s:
                        continue
                    t = frozenset(_extend(self, s, g))
                    if t not in seen:
                        seen.add(t)
                        nxt.append(t)
            frontier = nxt
        subs = [Subgroup(self, s) for s in seen]
        subs.sort(key=lambda h: (h.order, h.sorted_elements))
        return subs

    def cyclic_subgroups(self) -> list[Subgroup]:
        seen = {}
        for g in self._elements:
            s = frozenset(closure(self, [g]))
            seen.setdefault(s, None)
        return sorted((Subgroup(self, s) for s in seen), key=lambda h: (h.order, h.sorted_elements))


def closure(G: AbelianGroup, gens: Iterable[Element]) -> set[Element]:
    """Subgroup generated by ``gens`` as an element set."""
    span = {G.identity}
    for g in gens:
        if g not in G:
            raise NotASubgroup(f"{g} is not an element of {G}")
        span = _extend(G, span, g)
    return span


def _extend(G: AbelianGroup, span: Iterable[Element], g: Element) -> set[Element]:
    # <span, g> = union of span + k*g; stop at the first multiple already in span
    base = set(span)
    if g in base:
        return base
    out = set(base)
    mult = g
    while mult not in base:
        out.update(G.add(s, mult) for s in base)
        mult = G.add(mult, g)
    return out


def invariant_factors(orders: Sequence[int]) -> tuple[int, ...]:
    by_prime: dict[int, list[int]] = {}
    for n in orders:
        for p, e in factorize(n):
            by_prime.setdefault(p, []).append(p**e)
    width = max((len(v) for v in by_prime.values()), default=0)
    factors = [1] * width
    for p, powers in by_prime.items():
        powers.sort(reverse=True)
        for i, q in enumerate(powers):
            factors[width - 1 - i] *= q
    return tuple(f for f in factors if f > 1)


@dataclass(frozen=True)
class Subgroup:
    parent: AbelianGroup
    elements: frozenset = field(compare=True)

    def __post_init__(self) -> None:
        G = self.parent
        els = frozenset(self.elements)
        object.__setattr__(self, "elements", els)
        if G.identity not in els:
            raise NotASubgroup("subgroup must contain the identity")

    @classmethod
    def checked(cls, parent: AbelianGroup, elements: Iterable[Element]) -> Subgroup:
        els = frozenset(tuple(e) for e in elements)
        for g in els:
            if g not in parent:
                raise NotASubgroup(f"{g} is not an element of {parent}")
        for g in els:
            if parent.neg(g) not in els:
                raise NotASubgroup(f"not closed under negation at {g}")
            for h in els:
                if parent.add(g, h) not in els:
                    raise NotASubgroup(f"not closed under addition at {g} + {h}")
        return cls(parent, els)

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, g: object) -> bool:
        return g in self.elements

    def __iter__(self):
        return iter(self.sorted_elements)

    def __le__(self, other: Subgroup) -> bool:
        return self.elements <= other.elements

    def __lt__(self, other: Subgroup) -> bool:
        return self.elements < other.elements

    @cached_property
    def sorted_elements(self) -> tuple[Element, ...]:
        return tuple(sorted(self.elements))

    def is_trivial(self) -> bool:
        return len(self.elements) == 1

    def generators(self) -> list[Element]:
        """A small generating set, chosen greedily in lexicographic order."""
        gens: list[Element] = []
        span = {self.parent.identity}
        # largest element orders first keeps the set short
        order = sorted(self.sorted_elements, key=lambda g: (-self.parent.element_order(g), g))
        for g in order:
            if g not in span:
                gens.append(g)
                span = _extend(self.parent, span, g)
                if len(span) == len(self.elements):
                    break
        return gens

    def meet(self, other: Subgroup) -> Subgroup:
        return Subgroup(self.parent, self.elements & other.elements)

    def join(self, other: Subgroup) -> Subgroup:
        span = set(self.elements)
        for g in other.generators():
            span = _extend(self.parent, span, g)
        return Subgroup(self.parent, frozenset(span))

    def __str__(self) -> str:
        gens = self.generators()
        if not gens:
            return "{0}"
        return "<" + ", ".join(format_element(g) for g in gens) + ">"


def format_element(g: Element) -> str:
    return ",".join(str(a) for a in g)


def parse_element(text: str) -> Element:
    text = text.strip()
    if not text:
        return ()
    return tuple(int(a) for a in text.split(","))


def direct_sum(G1: AbelianGroup, G2: AbelianGroup) -> AbelianGroup:
    return AbelianGroup(G1.orders + G2.orders)


def order(G: AbelianGroup, g: Element) -> int:
    return G.element_order(g)


def generated(G: AbelianGroup, gens: Iterable[Element]) -> Subgroup:
    return G.generated(gens)


def elements(G: AbelianGroup) -> list[Element]:
    return G.elements()


def subgroups(G: AbelianGroup) -> list[Subgroup]:
    return G.subgroups()


# --------------------------------------------------------------------------
# structure of abstractly given groups and quotients


@dataclass(frozen=True)
class Presentation:
    """An isomorphism between an abstract finite abelian group and ``group``.

    ``to_tuple`` maps abstract elements to tuples of ``group``;
    ``from_tuple`` is its inverse.
    """

    group: AbelianGroup
    to_tuple: dict
    from_tuple: dict


def present(
    elements: Sequence[Hashable],
    op: Callable[[Hashable, Hashable], Hashable],
    identity: Hashable,
) -> Presentation:
    """Decompose an abstract finite abelian group into cyclic factors.

    The factors are the invariant factors (largest first), found by
    backtracking over generator choices of the required orders.
    """
    elems = list(elements)
    n = len(elems)

    def elem_order(x) -> int:
        k, acc = 1, x
        while acc != identity:
            acc = op(acc, x)
            k += 1
        return k

    orders = {x: elem_order(x) for x in elems}
    target = _invariant_factors_from_orders(list(orders.values()), n)

    def span_of(gens):
        span = {identity: ()}
        for g, m in gens:
            new = {}
            for s, coords in span.items():
                acc = s
                for k in range(m):
                    new[acc] = coords + (k,)
                    acc = op(acc, g)
            span = new
        return span

    def search(gens, span):
        i = len(gens)
        if i == len(target):
            return gens if len(span) == n else None
        want = target[i]
        for x in elems:
            if orders[x] != want:
                continue
            # <x> must meet the current span trivially
            acc, ok = x, True
            for _ in range(want - 1):
                if acc in span:
                    ok = False
                    break
                acc = op(acc, x)
            if not ok:
                continue
            new_gens = gens + [(x, want)]
            found = search(new_gens, span_of(new_gens))
            if found is not None:
                return found
        return None

    gens = search([], {identity: ()})
    if gens is None:  # pragma: no cover - impossible for an abelian group
        raise ValueError("could not decompose the group")
    group = AbelianGroup(tuple(target))
    span = span_of(gens)
    to_tuple = dict(span)
    from_tuple = {v: k for k, v in span.items()}
    return Presentation(group, to_tuple, from_tuple)


def _invariant_factors_from_orders(orders: list[int], n: int) -> list[int]:
    # For each prime p, the number of elements of order dividing p^k determines
    # the p-primary partition.
    per_prime = []
    for p, e in factorize(n) if n > 1 else ():
        counts = [sum(1 for o in orders if (p**k) % o == 0) for k in range(e + 1)]
        # counts[k] = |G[p^k]| = p^(sum_i min(k, e_i))
        logs = [round(math.log(c, p)) for c in counts]
        # number of cyclic factors of exponent >= k is logs[k] - logs[k-1]
        ge = [logs[k] - logs[k - 1] for k in range(1, e + 1)]
        exps = []
        for k in range(len(ge)):
            exact = ge[k] - (ge[k + 1] if k + 1 < len(ge) else 0)
            exps += [k + 1] * exact
        per_prime.append((p, sorted(exps, reverse=True)))
    width = max((len(ex) for _, ex in per_prime), default=0)
    factors = [1] * width
    for p, exps in per_prime:
        for i, x in enumerate(exps):
            factors[i] *= p**x
    return [f for f in factors if f > 1]


@dataclass(frozen=True)
class Quotient:
    """``K/H`` presented as a concrete :class:`AbelianGroup` with its projection."""

    group: AbelianGroup
    representative: dict  # quotient element -> chosen coset representative in K
    projection: dict  # element of K -> quotient element

    def project(self, g: Element) -> Element:
        return self.projection[g]

    def lift(self, x: Element) -> Element:
        return self.representative[x]


def quotient(G: AbelianGroup, H: Subgroup, K: Subgroup | None = None) -> Quotient:
    """Present ``K/H`` (``K`` defaults to ``G``) as a product of cyclic groups."""
    if H.parent != G:
        raise NotASubgroup("H does not belong to G")
    Kset = G.whole().elements if K is None else K.elements
    if not H.elements <= Kset:
        raise NotASubgroup("H is not contained in K")
    Hsorted = H.sorted_elements
    rep_of: dict[Element, Element] = {}
    cosets: list[Element] = []
    for g in sorted(Kset):
        if g in rep_of:
            continue
        cosets.append(g)
        for h in Hsorted:
            rep_of[G.add(g, h)] = g

    def op(a: Element, b: Element) -> Element:
        return rep_of[G.add(a, b)]

    pres = present(cosets, op, G.identity)
    representative = {t: rep for rep, t in pres.to_tuple.items()}
    projection = {g: pres.to_tuple[rep_of[g]] for g in Kset}
    return Quotient(pres.group, representative, projection)
