"""Metric groups: finite abelian groups carrying a quadratic form.

A quadratic form ``q`` takes values in the roots of unity, satisfies
``q(-g) = q(g)``, and has a bilinear associated form
``b(g, h) = q(g + h) / (q(g) q(h))``.  Values are stored internally as integer
numerators over a common denominator ``level`` so the enumeration-heavy
operations (complements, isotropic searches, reductions) run on plain ints.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Iterator, Mapping

from . import caps
from .abelian import (
    AbelianGroup,
    Element,
    Quotient,
    Subgroup,
    _extend,
    closure,
    format_element,
    quotient,
)
from .cyclotomic import CycNumber, RootOfUnity, factorize, is_root_of_unity, sqrt_int
from .errors import BadSigma, Degenerate, NotARootOfUnity, NotIsotropic, ValidationError


@dataclass(frozen=True)
class Violation:
    """First failure found by :meth:`MetricGroup.validate`."""

    kind: str
    elements: tuple[Element, ...]

    def __str__(self) -> str:
        els = ", ".join(format_element(g) for g in self.elements)
        return f"{self.kind} at ({els})"


class MetricGroup:
    """A finite abelian group with a quadratic form ``q``.

    Build instances with :func:`cyclic`, :func:`hyperbolic`, :func:`from_gram`,
    :func:`direct_sum`, or directly from a full table of values.
    """

    __slots__ = ("group", "level", "_q", "__dict__")

    def __init__(
        self,
        group: AbelianGroup,
        q: Mapping[Element, RootOfUnity | Fraction | str],
        *,
        check: bool = True,
    ) -> None:
        exps = {}
        for g in group.elements():
            if g not in q:
                raise ValidationError(f"q is missing a value at {format_element(g)}")
            v = q[g]
            if not isinstance(v, RootOfUnity):
                v = RootOfUnity(v)
            exps[g] = v.exponent
        level = math.lcm(1, *(r.denominator for r in exps.values()))
        table = {g: r.numerator * (level // r.denominator) for g, r in exps.items()}
        self._setup(group, level, table)
        if check:
            bad = self.validate()
            if bad is not None:
                raise ValidationError(f"not a quadratic form: {bad}")

    @classmethod
    def _from_ints(cls, group: AbelianGroup, level: int, table: dict[Element, int]) -> MetricGroup:
        self = object.__new__(cls)
        self._setup(group, level, table)
        return self

    def _setup(self, group: AbelianGroup, level: int, table: dict[Element, int]) -> None:
        g = math.gcd(level, *table.values())
        if g > 1:
            level //= g
            table = {k: v // g for k, v in table.items()}
        table = {k: v % level for k, v in table.items()}
        object.__setattr__(self, "group", group)
        object.__setattr__(self, "level", level)
        object.__setattr__(self, "_q", table)

    # basic data -------------------------------------------------------------

    @property
    def order(self) -> int:
        return self.group.order

    def q(self, g: Element) -> RootOfUnity:
        return RootOfUnity(Fraction(self._q[g], self.level))

    def q_exponent(self, g: Element) -> Fraction:
        return Fraction(self._q[g], self.level)

    def values(self) -> dict[Element, RootOfUnity]:
        return {g: self.q(g) for g in self.group.elements()}

    def _b(self, g: Element, h: Element) -> int:
        return (self._q[self.group.add(g, h)] - self._q[g] - self._q[h]) % self.level

    def bilinear(self, g: Element, h: Element) -> RootOfUnity:
        return RootOfUnity(Fraction(self._b(g, h), self.level))

    @cached_property
    def _basis(self) -> list[Element]:
        k = self.group.rank
        return [tuple(1 if j == i else 0 for j in range(k)) for i in range(k) if self.group.orders[i] > 1]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MetricGroup):
            return NotImplemented
        return self.group == other.group and self.level == other.level and self._q == other._q

    def __hash__(self) -> int:
        return hash((self.group, self.level, tuple(sorted(self._q.items()))))

    def __repr__(self) -> str:
        return f"MetricGroup({self.group}, level={self.level})"

    def describe(self) -> str:
        vals = ", ".join(str(self.q(g)) for g in self.group.elements()[1:])
        return f"{self.group} with q = [{vals}]"

    # validation -------------------------------------------------------------

    def validate(self) -> Violation | None:
        """Check ``q(0) = 1``, ``q(-g) = q(g)`` and bilinearity of ``b``."""
        G = self.group
        if self._q[G.identity] != 0:
            return Violation("q(identity) != 1", (G.identity,))
        for g in G.elements():
            if self._q[G.neg(g)] != self._q[g]:
                return Violation("q(-g) != q(g)", (g,))
        # additivity in the first slot against each basis vector suffices
        for e in self._basis:
            for g in G.elements():
                ge = G.add(g, e)
                for h in G.elements():
                    if self._b(ge, h) != (self._b(g, h) + self._b(e, h)) % self.level:
                        return Violation("b not bilinear", (g, e, h))
        return None

    def radical(self) -> Subgroup:
        G = self.group
        rad = [g for g in G.elements() if all(self._b(g, e) == 0 for e in self._basis)]
        return Subgroup(G, frozenset(rad))

    def is_nondegenerate(self) -> bool:
        G = self.group
        ident = G.identity
        for g in G.elements():
            if g != ident and all(self._b(g, e) == 0 for e in self._basis):
                return False
        return True

    # Gauss sums and charge --------------------------------------------------

    def gauss_sum(self, sign: int = 1) -> CycNumber:
        """``sum(q(a) ** sign for a in G)`` for ``sign`` in ``{+1, -1}``."""
        if sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")
        counts = Counter((sign * v) % self.level for v in self._q.values())
        return CycNumber.from_powers(self.level, counts)

    @cached_property
    def _charge(self) -> RootOfUnity:
        if not self.is_nondegenerate():
            raise Degenerate("central charge needs a nondegenerate form")
        tau = self.gauss_sum(1)
        if tau.is_zero():
            raise Degenerate("Gauss sum vanishes")
        n = self.order
        xi = tau * sqrt_int(n) * Fraction(1, n)
        r = is_root_of_unity(xi)
        if r is None:
            raise NotARootOfUnity(f"tau/sqrt(|G|) = {xi} is not a root of unity")
        return r

    def central_charge(self) -> RootOfUnity:
        return self._charge

    # subgroups --------------------------------------------------------------

    def orthogonal_complement(self, H: Subgroup) -> Subgroup:
        gens = H.generators()
        G = self.group
        return Subgroup(G, frozenset(g for g in G.elements() if all(self._b(g, h) == 0 for h in gens)))

    def is_isotropic(self, H: Subgroup) -> bool:
        return all(self._q[h] == 0 for h in H.elements)

    def is_lagrangian(self, H: Subgroup) -> bool:
        return self.is_isotropic(H) and self.orthogonal_complement(H) == H

    def isotropic_elements(self) -> list[Element]:
        ident = self.group.identity
        return [g for g in self.group.elements() if self._q[g] == 0 and g != ident]

    def isotropic_subgroups(self) -> list[Subgroup]:
        """All subgroups on which ``q`` is identically 1, sorted by (order, elements)."""
        caps.check("MODCAT_MAX_SUBGROUP_ORDER", self.order)
        found = {frozenset([self.group.identity])}
        for s in self._walk_isotropic():
            found.add(s)
        subs = [Subgroup(self.group, s) for s in found]
        subs.sort(key=lambda h: (h.order, h.sorted_elements))
        return subs

    def _walk_isotropic(self, stop_at: int | None = None) -> Iterator[frozenset]:
        # Breadth-first growth: <S, g> is isotropic whenever S is, q(g) = 1
        # and g is orthogonal to S.
        G = self.group
        iso = self.isotropic_elements()
        start = frozenset([G.identity])
        seen = {start}
        frontier = [(start, [])]
        while frontier:
            nxt = []
            for s, gens in frontier:
                for g in iso:
                    if g in s or any(self._b(g, h) for h in gens):
                        continue
                    t = frozenset(_extend(G, s, g))
                    if t in seen:
                        continue
                    seen.add(t)
                    yield t
                    if stop_at is not None and len(t) >= stop_at:
                        return
                    nxt.append((t, gens + [g]))
            frontier = nxt

    def maximal_isotropic_subgroup(self) -> Subgroup:
        """Greedy growth by the lexicographically smallest admissible isotropic element."""
        G = self.group
        span = {G.identity}
        gens: list[Element] = []
        for g in self.isotropic_elements():
            if g in span or any(self._b(g, h) for h in gens):
                continue
            span = _extend(G, span, g)
            gens.append(g)
        return Subgroup(G, frozenset(span))

    def is_anisotropic(self) -> bool:
        return not self.isotropic_elements()

    # reduction --------------------------------------------------------------

    def reduce_with_map(self, H: Subgroup) -> tuple[MetricGroup, Quotient, Subgroup]:
        """``H^perp / H`` with its induced form, the quotient data and ``H^perp``."""
        if not self.is_isotropic(H):
            raise NotIsotropic(f"{H} is not isotropic")
        perp = self.orthogonal_complement(H)
        Q = quotient(self.group, H, perp)
        table = {x: self._q[Q.lift(x)] for x in Q.group.elements()}
        return MetricGroup._from_ints(Q.group, self.level, table), Q, perp

    def reduce(self, H: Subgroup) -> MetricGroup:
        return self.reduce_with_map(H)[0]

    def anisotropic_kernel(self) -> MetricGroup:
        if not self.is_nondegenerate():
            raise Degenerate("anisotropic kernel needs a nondegenerate form")
        return self.reduce(self.maximal_isotropic_subgroup())

    # Lagrangians ------------------------------------------------------------

    def find_lagrangian(self) -> Subgroup | None:
        """A Lagrangian subgroup via a tower of reductions, or ``None``.

        At each step the lexicographically smallest nontrivial isotropic element
        ``a`` is taken, the form is reduced to ``<a>^perp / <a>`` and the
        Lagrangian found there is pulled back.  If the tower gets stuck the
        exhaustive search decides.
        """
        if not self.is_nondegenerate():
            raise Degenerate("Lagrangian subgroups are defined for nondegenerate forms")
        if math.isqrt(self.order) ** 2 != self.order:
            return None
        L = _lagrangian_tower(self)
        if L is None:
            L = self.brute_force_lagrangian()
        return L

    def brute_force_lagrangian(self) -> Subgroup | None:
        """First Lagrangian met by exhaustive isotropic growth, or ``None``."""
        root = math.isqrt(self.order)
        if root * root != self.order:
            return None
        if root == 1:
            return self.group.trivial_subgroup()
        for s in self._walk_isotropic(stop_at=root):
            if len(s) == root:
                H = Subgroup(self.group, s)
                if self.is_lagrangian(H):
                    return H
        return None

    def lagrangian_subgroups(self) -> list[Subgroup]:
        return [H for H in self.isotropic_subgroups() if self.is_lagrangian(H)]

    # derived forms ----------------------------------------------------------

    def inverse(self) -> MetricGroup:
        """The form ``q^-1`` on the same group."""
        return MetricGroup._from_ints(self.group, self.level, {g: -v for g, v in self._q.items()})

    def restrict(self, H: Subgroup) -> MetricGroup:
        """``q`` restricted to ``H``, presented on a cyclic decomposition of ``H``."""
        Q = quotient(self.group, self.group.trivial_subgroup(), H)
        table = {x: self._q[Q.lift(x)] for x in Q.group.elements()}
        return MetricGroup._from_ints(Q.group, self.level, table)

    def value_histogram(self) -> tuple[tuple[Fraction, int], ...]:
        c = Counter(Fraction(v, self.level) for v in self._q.values())
        return tuple(sorted(c.items()))

    @cached_property
    def _invariant_key(self) -> tuple:
        orders = self.group.element_orders
        per_order = Counter((orders[g], v) for g, v in self._q.items())
        hist = sorted(((o, Fraction(v, self.level)), c) for (o, v), c in per_order.items())
        return (self.group.invariant_factors(), tuple(hist))

    def invariant_key(self) -> tuple:
        """Cheap isomorphism invariant used to bucket forms before exact tests."""
        return self._invariant_key


def _lagrangian_tower(M: MetricGroup) -> Subgroup | None:
    if M.order == 1:
        return M.group.trivial_subgroup()
    iso = M.isotropic_elements()
    if not iso:
        return None
    a = iso[0]
    H = M.group.generated([a])
    R, Q, perp = M.reduce_with_map(H)
    Lbar = _lagrangian_tower(R)
    if Lbar is None:
        return None
    pulled = frozenset(g for g in perp.elements if Q.project(g) in Lbar.elements)
    return Subgroup(M.group, pulled)


# --------------------------------------------------------------------------
# constructors


def trivial() -> MetricGroup:
    return MetricGroup._from_ints(AbelianGroup(()), 1, {(): 0})


def cyclic(n: int, sigma: RootOfUnity | Fraction | str) -> MetricGroup:
    """``Z/n`` with ``q(a) = sigma ** (a*a)``."""
    if not isinstance(sigma, RootOfUnity):
        sigma = RootOfUnity(sigma)
    need = n if n % 2 else 2 * n
    if (sigma.exponent * need).denominator != 1:
        raise BadSigma(f"sigma = exp(2πi·{sigma}) does not satisfy sigma^{need} = 1 on Z/{n}")
    G = AbelianGroup((n,))
    r = sigma.exponent
    level = r.denominator
    table = {(a,): r.numerator * a * a for a in range(n)}
    return MetricGroup._from_ints(G, level, table)


def hyperbolic(G: AbelianGroup) -> MetricGroup:
    """``G x Hom(G, C*)`` with ``q(g, chi) = chi(g)``; characters in dual coordinates."""
    k = G.rank
    H = AbelianGroup(G.orders + G.orders)
    level = max(1, G.exponent)
    table = {}
    for x in H.elements():
        g, chi = x[:k], x[k:]
        table[x] = sum(c * a * (level // n) for a, c, n in zip(g, chi, G.orders))
    return MetricGroup._from_ints(H, level, table)


def direct_sum(M1: MetricGroup, M2: MetricGroup) -> MetricGroup:
    G = AbelianGroup(M1.group.orders + M2.group.orders)
    level = math.lcm(M1.level, M2.level)
    s1, s2 = level // M1.level, level // M2.level
    k = M1.group.rank
    table = {x: M1._q[x[:k]] * s1 + M2._q[x[k:]] * s2 for x in G.elements()}
    return MetricGroup._from_ints(G, level, table)


def _diag_denominator(n: int) -> int:
    return n if n % 2 else 2 * n


def from_gram(
    G: AbelianGroup,
    diagonal: list[Fraction | str],
    off_diagonal: Mapping[tuple[int, int], Fraction | str] | None = None,
) -> MetricGroup:
    """Expand generator data into a full table.

    ``diagonal[i]`` is the exponent of ``q(e_i)``; ``off_diagonal[(i, j)]`` with
    ``i < j`` is the exponent of ``b(e_i, e_j)``.
    """
    k = G.rank
    diag = [Fraction(x) for x in diagonal]
    if len(diag) != k:
        raise ValidationError(f"need {k} diagonal entries, got {len(diag)}")
    off = {tuple(sorted(key)): Fraction(v) for key, v in (off_diagonal or {}).items()}
    for i, (a, n) in enumerate(zip(diag, G.orders)):
        if (a * _diag_denominator(n)).denominator != 1:
            raise ValidationError(f"q(e_{i}) = exp(2πi·{a}) is incompatible with Z/{n}")
    for (i, j), c in off.items():
        if i == j or not (0 <= i < k and 0 <= j < k):
            raise ValidationError(f"bad off-diagonal index {(i, j)}")
        if (c * math.gcd(G.orders[i], G.orders[j])).denominator != 1:
            raise ValidationError(f"b(e_{i}, e_{j}) = exp(2πi·{c}) is incompatible with the orders")
    level = math.lcm(1, *(x.denominator for x in diag), *(x.denominator for x in off.values()))
    dn = [int(a * level) for a in diag]
    on = {key: int(c * level) for key, c in off.items()}
    table = {}
    for x in G.elements():
        v = sum(d * a * a for d, a in zip(dn, x))
        for (i, j), c in on.items():
            v += c * x[i] * x[j]
        table[x] = v
    return MetricGroup._from_ints(G, level, table)


def all_quadratic_forms(G: AbelianGroup) -> Iterator[MetricGroup]:
    """Every quadratic form on ``G`` (each exactly once), in a fixed order."""
    k = G.rank
    orders = G.orders
    diag_ranges = [range(_diag_denominator(n)) for n in orders]
    pairs = [(i, j) for i in range(k) for j in range(i + 1, k)]
    off_ranges = [range(math.gcd(orders[i], orders[j])) for i, j in pairs]
    level = math.lcm(1, *(_diag_denominator(n) for n in orders))
    elems = G.elements()
    sq = [[a * a for a in x] for x in elems]
    cross = [[x[i] * x[j] for i, j in pairs] for x in elems]
    dscale = [level // _diag_denominator(n) for n in orders]
    oscale = [level // math.gcd(orders[i], orders[j]) for i, j in pairs]
    for dv in itertools.product(*diag_ranges):
        dn = [d * s for d, s in zip(dv, dscale)]
        for ov in itertools.product(*off_ranges):
            on = [o * s for o, s in zip(ov, oscale)]
            table = {}
            for x, sx, cx in zip(elems, sq, cross):
                v = 0
                for d, s in zip(dn, sx):
                    v += d * s
                for o, c in zip(on, cx):
                    v += o * c
                table[x] = v
            yield MetricGroup._from_ints(G, level, table)


def nondegenerate_forms(G: AbelianGroup) -> Iterator[MetricGroup]:
    return (M for M in all_quadratic_forms(G) if M.is_nondegenerate())


# --------------------------------------------------------------------------
# isomorphism


def find_isomorphism(M1: MetricGroup, M2: MetricGroup) -> dict[Element, Element] | None:
    """An isometry ``M1 -> M2`` as an element map, or ``None``.

    Images of the coordinate generators are chosen by backtracking so that
    ``q`` and ``b`` agree on generators and the partial images stay
    independent; ``q`` then agrees everywhere.
    """
    if M1.order != M2.order or M1.invariant_key() != M2.invariant_key():
        return None
    G1, G2 = M1.group, M2.group
    caps.check("MODCAT_MAX_SUBGROUP_ORDER", M1.order)
    gens = [(i, n) for i, n in enumerate(G1.orders) if n > 1]
    basis = [tuple(1 if j == i else 0 for j in range(G1.rank)) for i, _ in gens]
    # equal value histograms force equal levels, so integer numerators compare directly
    assert M1.level == M2.level
    q2, b2 = M2._q, M2._b
    orders2 = G2.element_orders
    b1 = [[M1._b(e, f) for f in basis] for e in basis]
    cands = []
    for (i, n), e in zip(gens, basis):
        qe = M1._q[e]
        cands.append([y for y in G2.elements() if q2[y] == qe and n % orders2[y] == 0])

    def search(chosen: list[Element], span: set[Element], size: int):
        t = len(chosen)
        if t == len(gens):
            return chosen if len(span) == M2.order else None
        n = gens[t][1]
        row = b1[t]
        for y in cands[t]:
            if any(b2(y, chosen[s]) != row[s] for s in range(t)):
                continue
            new_span = _extend(G2, span, y)
            if len(new_span) != size * n:
                continue
            out = search(chosen + [y], new_span, size * n)
            if out is not None:
                return out
        return None

    images = search([], {G2.identity}, 1)
    if images is None:
        return None
    mapping = {}
    for x in G1.elements():
        y = G2.identity
        for (i, _), img in zip(gens, images):
            y = G2.add(y, G2.mul(x[i], img))
        mapping[x] = y
    return mapping


def isomorphic(M1: MetricGroup, M2: MetricGroup) -> bool:
    return find_isomorphism(M1, M2) is not None


def isomorphism_classes(forms) -> list[MetricGroup]:
    """One representative per isometry class, in order of first appearance."""
    buckets: dict[tuple, list[MetricGroup]] = {}
    reps: list[MetricGroup] = []
    for M in forms:
        key = M.invariant_key()
        bucket = buckets.setdefault(key, [])
        if any(isomorphic(M, R) for R in bucket):
            continue
        bucket.append(M)
        reps.append(M)
    return reps


# --------------------------------------------------------------------------
# minimal complements


def _p_groups(p: int, e: int) -> list[AbelianGroup]:
    return [AbelianGroup(tuple(p**x for x in part)) for part in _partitions(e)]


def _partitions(n: int, largest: int | None = None) -> list[tuple[int, ...]]:
    if n == 0:
        return [()]
    largest = n if largest is None else largest
    out = []
    for first in range(min(n, largest), 0, -1):
        for rest in _partitions(n - first, first):
            out.append((first,) + rest)
    return out


@lru_cache(maxsize=None)
def _complement_for(p: int, parity: int, charge: Fraction) -> MetricGroup:
    max_e = 3 if p == 2 else 2
    for e in range(parity, max_e + 1, 2):
        for G in _p_groups(p, e):
            for M in nondegenerate_forms(G):
                if M.central_charge().exponent == charge:
                    return M
    raise ValueError(f"no complement of order <= {p}^{max_e} for charge {charge}")  # pragma: no cover


def minimal_complement(M: MetricGroup) -> MetricGroup:
    """Smallest nondegenerate metric p-group ``M'`` with ``xi(M') = xi(M)^-1`` and ``|M||M'|`` square."""
    if not M.is_nondegenerate():
        raise Degenerate("minimal complement needs a nondegenerate form")
    fac = factorize(M.order) if M.order > 1 else ()
    if len(fac) > 1:
        raise ValueError("minimal complement is defined for metric p-groups")
    if not fac:
        return trivial()
    p, e = fac[0]
    return _complement_for(p, e % 2, M.central_charge().inverse().exponent)
