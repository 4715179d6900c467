"""Premodular data: a fusion ring together with twists and integral dimensions.

The S-matrix is the unnormalized one,

    s_XY = theta_X^-1 theta_Y^-1 sum_Z N^Z_XY theta_Z d_Z,

so that ``s_1X = d_X``.  Whether two simples centralize each other is decided
by the twist criterion: ``s_XY = d_X d_Y`` holds exactly when every constituent
``Z`` of ``X (x) Y`` has ``theta_Z = theta_X theta_Y`` (equality in the
triangle inequality).  The S-matrix route is kept for cross-checks.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Iterable, Mapping

import numpy as np

from . import caps
from .abelian import AbelianGroup, format_element, present
from .cyclotomic import CycNumber, RootOfUnity, factorize, is_root_of_unity, sqrt_int
from .errors import (
    DecompositionFailed,
    GradingInconsistent,
    NotARootOfUnity,
    NotModular,
    NotNilpotent,
    PreconditionFailed,
    TwistNotConstantOnComponent,
    ValidationError,
)
from .fusion import FusionRing, Subring, group_ring, pair_label, product
from .metric import MetricGroup

__all__ = [
    "PremodularData",
    "Grading",
    "SubcategoryInfo",
    "MuegerReport",
    "from_metric_group",
    "reverse",
    "deligne_product",
    "element_label",
]

Subcategory = Subring


def element_label(g: tuple[int, ...]) -> str:
    """Label of a group element as a simple object; the identity of the trivial group is ``0``."""
    return format_element(g) or "0"


class PremodularData:
    """Fusion ring, twists and dimensions.  Immutable by convention."""

    def __init__(
        self,
        ring: FusionRing,
        twist: Mapping[str, RootOfUnity | Fraction | str],
        dim: Mapping[str, int] | None = None,
    ) -> None:
        self.ring = ring
        missing = [x for x in ring.labels if x not in twist]
        if missing:
            raise ValidationError(f"twist of {missing[0]!r} is missing")
        extra = [x for x in twist if x not in ring.position]
        if extra:
            raise ValidationError(f"twist given for unknown label {extra[0]!r}")
        self.twist: dict[str, RootOfUnity] = {
            x: t if isinstance(t, RootOfUnity) else RootOfUnity(t) for x, t in twist.items()
        }
        self.dim: dict[str, int] = dict(ring.fp_dims() if dim is None else dim)
        # set by from_metric_group so pointed results can be compared with `metric`
        self.metric: MetricGroup | None = None
        self.element_of: dict[str, tuple[int, ...]] | None = None

    # basic data -------------------------------------------------------------

    @property
    def labels(self) -> tuple[str, ...]:
        return self.ring.labels

    @property
    def rank(self) -> int:
        return self.ring.rank

    @property
    def unit(self) -> str:
        return self.ring.unit

    def __repr__(self) -> str:
        return f"PremodularData(rank={self.rank}, dim={self.total_dim()})"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PremodularData):
            return NotImplemented
        a, b = self.ring, other.ring
        return (
            a.labels == b.labels
            and a.unit == b.unit
            and a.dual == b.dual
            and a.mult == b.mult
            and self.twist == other.twist
            and self.dim == other.dim
        )

    __hash__ = None  # type: ignore[assignment]

    def total_dim(self) -> int:
        return sum(d * d for d in self.dim.values())

    def sub_dim(self, K: Subring) -> int:
        return sum(self.dim[x] ** 2 for x in K.labels)

    def whole(self) -> Subring:
        return self.ring.whole()

    def unit_sub(self) -> Subring:
        return self.ring.unit_subring()

    @cached_property
    def _level(self) -> int:
        return math.lcm(1, *(t.order for t in self.twist.values()))

    @cached_property
    def _t(self) -> dict[str, int]:
        # twist exponents as integers over the common level
        L = self._level
        return {x: int(t.exponent * L) for x, t in self.twist.items()}

    # validation -------------------------------------------------------------

    def validate(self, deep: bool | None = None) -> None:
        """Check the necessary conditions that can be tested on this data.

        Raises :class:`ValidationError`; a non-integral ring raises
        :class:`NonIntegralDims`.
        """
        self.ring.validate(deep)
        fp = self.ring.fp_dims()
        if self.dim != fp:
            bad = next(x for x in self.labels if self.dim.get(x) != fp[x])
            raise ValidationError(
                f"dim of {bad!r} is {self.dim.get(bad)}, Frobenius-Perron dimension is {fp[bad]}"
            )
        if not self.twist[self.unit].is_one():
            raise ValidationError("the twist of the unit must be 1")
        for x in self.labels:
            if self.twist[self.ring.dual[x]] != self.twist[x]:
                raise ValidationError(f"twist of {x!r} differs from the twist of its dual")
        S = self.s_matrix()
        n = self.rank
        for i in range(n):
            for j in range(i + 1, n):
                if S[i][j] != S[j][i]:
                    raise ValidationError(
                        f"S-matrix is not symmetric at ({self.labels[i]}, {self.labels[j]})"
                    )
        if self.is_modular():
            tp, tm = self.gauss_sums()
            if tp * tm != CycNumber.rational(self.total_dim()):
                raise ValidationError("tau+ tau- differs from dim(C) although S is invertible")

    # S-matrix ---------------------------------------------------------------

    def s_entry(self, x: str, y: str) -> CycNumber:
        L, t, d = self._level, self._t, self.dim
        shift = t[x] + t[y]
        counts: Counter = Counter()
        for z, n in self.ring.fuse(x, y).items():
            counts[(t[z] - shift) % L] += n * d[z]
        return CycNumber.from_powers(L, counts)

    @cached_property
    def _s(self) -> tuple[tuple[CycNumber, ...], ...]:
        caps.check("MODCAT_MAX_RANK", self.rank)
        labels = self.labels
        rows = [[None] * len(labels) for _ in labels]
        for i, x in enumerate(labels):
            for j in range(i, len(labels)):
                v = self.s_entry(x, labels[j])
                rows[i][j] = v
                if j != i:
                    rows[j][i] = self.s_entry(labels[j], x)
        return tuple(tuple(r) for r in rows)

    def s_matrix(self) -> tuple[tuple[CycNumber, ...], ...]:
        """Exact S-matrix, rows and columns in label order."""
        return self._s

    @cached_property
    def _modular(self) -> bool:
        # Full rank modulo a prime above L certifies det S != 0.  A transparent
        # simple X makes row X equal d_X times row 1, which certifies det S = 0.
        # Only when neither applies is the cyclotomic elimination needed.
        if _full_rank_mod_p(self):
            return True
        one = self.unit
        for x in self.labels:
            if x != one and all(self.centralizes(x, y) for y in self.labels):
                if all(self.centralizes_via_s(x, y) for y in self.labels):
                    return False
        return exact_rank(self.s_matrix()) == self.rank

    def is_modular(self) -> bool:
        return self._modular

    # centralizers -----------------------------------------------------------

    def centralizes(self, x: str, y: str) -> bool:
        t = self._t
        L = self._level
        want = (t[x] + t[y]) % L
        return all(t[z] % L == want for z in self.ring.fuse(x, y))

    def centralizes_via_s(self, x: str, y: str) -> bool:
        return self.s_entry(x, y) == CycNumber.rational(self.dim[x] * self.dim[y])

    def centralizer(self, K: Subring) -> Subring:
        """Simples that centralize every simple of ``K``."""
        members = [x for x in K.sorted_labels if x != self.unit]
        return Subring(
            self.ring,
            frozenset(y for y in self.labels if all(self.centralizes(x, y) for x in members)),
        )

    def mueger_center(self) -> Subring:
        return self.centralizer(self.whole())

    def is_isotropic(self, K: Subring) -> bool:
        return all(self.twist[x].is_one() for x in K.labels)

    def is_symmetric(self, K: Subring) -> bool:
        return K.labels <= self.centralizer(K).labels

    def is_lagrangian(self, K: Subring) -> bool:
        return self.is_isotropic(K) and self.centralizer(K) == K

    # adjoint, nilpotency ----------------------------------------------------

    def adjoint(self, K: Subring | None = None) -> Subring:
        return self.ring.adjoint_subring(K)

    def commutator(self, K: Subring) -> Subring:
        return self.ring.commutator(K)

    def pointed_part(self) -> Subring:
        return Subring(self.ring, frozenset(x for x in self.labels if self.dim[x] == 1))

    def upper_central_series(self) -> list[Subring]:
        """``C, C_ad, (C_ad)_ad, ...`` up to the first repetition."""
        series = [self.whole()]
        while True:
            nxt = self.adjoint(series[-1])
            if nxt == series[-1]:
                return series
            series.append(nxt)

    def nilpotency_class(self) -> int | None:
        series = self.upper_central_series()
        if not series[-1].is_unit():
            return None
        return len(series) - 1

    def is_nilpotent(self) -> bool:
        return self.nilpotency_class() is not None

    # gradings ---------------------------------------------------------------

    def grading_by(self, within: Subring, trivial: Subring) -> Grading:
        """Grading of ``within`` whose trivial component is ``trivial``.

        ``x ~ y`` when some simple of ``trivial`` occurs in ``x (x) y*``.
        """
        R = self.ring
        members = list(within.sorted_labels)
        parent = {x: x for x in members}

        def find(x: str) -> str:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for x, y in itertools.combinations(members, 2):
            if any(z in trivial.labels for z in R.fuse(x, R.dual[y])):
                rx, ry = find(x), find(y)
                if rx != ry:
                    if R.position[rx] < R.position[ry]:
                        parent[ry] = rx
                    else:
                        parent[rx] = ry
        roots: dict[str, int] = {}
        comp: dict[str, int] = {}
        # the component of the unit comes first
        ordered = sorted(members, key=lambda x: (find(x) != find(R.unit), R.position[x]))
        for x in ordered:
            r = find(x)
            if r not in roots:
                roots[r] = len(roots)
            comp[x] = roots[r]
        components = [[] for _ in roots]
        for x in members:
            components[comp[x]].append(x)
        if frozenset(components[0]) != trivial.labels:
            raise GradingInconsistent("the trivial component differs from the given subcategory")
        table: dict[tuple[int, int], int] = {}
        for x, y in itertools.product(members, repeat=2):
            for z in R.fuse(x, y):
                if z not in comp:
                    raise GradingInconsistent(f"{x} (x) {y} leaves the graded subcategory")
                key = (comp[x], comp[y])
                if table.setdefault(key, comp[z]) != comp[z]:
                    raise GradingInconsistent(
                        f"components of {x} and {y} do not multiply to a single component"
                    )
        n = len(components)
        for a, b, c in itertools.product(range(n), repeat=3):
            if table[(table[(a, b)], c)] != table[(a, table[(b, c)])]:
                raise GradingInconsistent("component multiplication is not associative")
        return Grading(tuple(tuple(c) for c in components), comp, table)

    def universal_grading(self) -> Grading:
        return self.grading_by(self.whole(), self.adjoint())

    def grading_metric_with_map(self, E: Subring) -> tuple[MetricGroup, dict[str, tuple[int, ...]]]:
        """The metric group on the grading group of ``E'`` and the component of each simple."""
        if not self.is_isotropic(E):
            raise PreconditionFailed(f"{E} is not isotropic")
        Ep = self.centralizer(E)
        if not self.adjoint(Ep).labels <= E.labels:
            raise PreconditionFailed("the adjoint of the centralizer is not contained in E")
        gr = self.grading_by(Ep, E)
        if not gr.is_commutative():
            raise PreconditionFailed("grading group is not abelian")
        pres = present(range(len(gr.components)), gr.multiply, 0)
        q: dict[tuple[int, ...], RootOfUnity] = {}
        for i, members in enumerate(gr.components):
            values = {self.twist[x] for x in members}
            if len(values) != 1:
                raise TwistNotConstantOnComponent(
                    f"twists on the component of {members[0]!r} are not all equal"
                )
            q[pres.to_tuple[i]] = values.pop()
        M = MetricGroup(pres.group, q)
        if M.validate() is not None or not M.is_nondegenerate():
            raise PreconditionFailed("the induced form on the grading group is not nondegenerate")
        where = {x: pres.to_tuple[gr.component[x]] for x in Ep.labels}
        return M, where

    def grading_metric(self, E: Subring) -> MetricGroup:
        return self.grading_metric_with_map(E)[0]

    # Gauss sums and charge --------------------------------------------------

    def gauss_sums(self) -> tuple[CycNumber, CycNumber]:
        L, t, d = self._level, self._t, self.dim
        plus: Counter = Counter()
        minus: Counter = Counter()
        for x in self.labels:
            plus[t[x] % L] += d[x] ** 2
            minus[-t[x] % L] += d[x] ** 2
        return CycNumber.from_powers(L, plus), CycNumber.from_powers(L, minus)

    @cached_property
    def _charge(self) -> RootOfUnity:
        if not self.is_modular():
            raise NotModular("central charge needs an invertible S-matrix")
        D = self.total_dim()
        xi = self.gauss_sums()[0] * sqrt_int(D) * Fraction(1, D)
        r = is_root_of_unity(xi)
        if r is None:
            raise NotARootOfUnity(f"tau+/sqrt(dim) = {xi} is not a root of unity")
        return r

    def central_charge(self) -> RootOfUnity:
        return self._charge

    # subcategories ----------------------------------------------------------

    def subcategories(self) -> list[Subring]:
        return self.ring.all_subrings()

    def classify_subcategories(self) -> list[SubcategoryInfo]:
        out = []
        for K in self.subcategories():
            Kp = self.centralizer(K)
            iso = self.is_isotropic(K)
            out.append(
                SubcategoryInfo(
                    sub=K,
                    dim=self.sub_dim(K),
                    centralizer=Kp,
                    symmetric=K.labels <= Kp.labels,
                    isotropic=iso,
                    lagrangian=iso and Kp == K,
                )
            )
        return out

    def isotropic_subcategories(self) -> list[Subring]:
        """Every isotropic subcategory, sorted by (size, label positions)."""
        found = {frozenset([self.unit])}
        for s in self._walk_isotropic():
            found.add(s)
        subs = [Subring(self.ring, s) for s in found]
        subs.sort(key=lambda k: k.sort_key)
        return subs

    def _walk_isotropic(self, target_dim: int | None = None):
        # Depth-first growth by one isotropic simple at a time; every isotropic
        # subcategory is reached through a chain of isotropic subcategories.
        R = self.ring
        cand = [x for x in self.labels if self.twist[x].is_one() and x != self.unit]
        seen: set[frozenset] = set()

        def grow(span: frozenset):
            for x in cand:
                if x in span:
                    continue
                t = R.closure(span | {x})
                if t in seen:
                    continue
                seen.add(t)
                if not all(self.twist[z].is_one() for z in t):
                    continue
                yield t
                if target_dim is not None and sum(self.dim[z] ** 2 for z in t) >= target_dim:
                    continue
                yield from grow(t)

        yield from grow(frozenset([self.unit]))

    def find_lagrangian(self) -> Subring | None:
        """First Lagrangian subcategory of dimension ``sqrt(dim C)`` met by the isotropic walk."""
        D = self.total_dim()
        root = math.isqrt(D)
        if root * root != D:
            return None
        if root == 1:
            return self.unit_sub()
        for s in self._walk_isotropic(target_dim=root):
            K = Subring(self.ring, s)
            if self.sub_dim(K) == root and self.centralizer(K) == K:
                return K
        return None

    def lagrangian_subcategories(self) -> list[Subring]:
        """Isotropic subcategories equal to their centralizer."""
        return [K for K in self.isotropic_subcategories() if self.centralizer(K) == K]

    def is_group_theoretical(self) -> Subring | None:
        """An isotropic ``E`` with ``(E')_ad`` inside ``E``, largest first, or ``None``."""
        if not self.is_modular():
            raise NotModular("group-theoreticality test needs a modular category")
        L = self.find_lagrangian()
        if L is not None:
            return L
        isos = self.isotropic_subcategories()
        isos.sort(key=lambda k: (-self.sub_dim(k), k.sort_key))
        for E in isos:
            if self.adjoint(self.centralizer(E)).labels <= E.labels:
                return E
        return None

    # Sylow decomposition ----------------------------------------------------

    def sylow_parts(self) -> dict[int, frozenset[str]]:
        """For each prime ``p | dim``, the simples with the unit in some ``X^(p^k)``, ``p^k <= dim``."""
        D = self.total_dim()
        caps.check("MODCAT_MAX_POWER", D)
        R = self.ring
        primes = [p for p, _ in factorize(D)] if D > 1 else []
        parts: dict[int, set[str]] = {p: set() for p in primes}
        for x in self.labels:
            v = {x: 1}
            m = 1
            powers = {p: p for p in primes}
            while m < D and powers:
                v = R.multiply(v, x)
                m += 1
                for p in list(powers):
                    if powers[p] == m:
                        if v.get(self.unit, 0) > 0:
                            parts[p].add(x)
                            del powers[p]
                        elif powers[p] * p <= D:
                            powers[p] *= p
                        else:
                            del powers[p]
        return {p: frozenset(s) for p, s in parts.items()}

    def sylow_decompose(self) -> list[tuple[int, Subring]]:
        if self.nilpotency_class() is None:
            raise NotNilpotent("Sylow decomposition needs a nilpotent category")
        D = self.total_dim()
        R = self.ring
        factors = []
        for p, members in sorted(self.sylow_parts().items()):
            if R.closure(members) != members:
                raise DecompositionFailed(f"the {p}-part is not a subcategory")
            K = Subring(R, members)
            d = self.sub_dim(K)
            pe = p ** dict(factorize(D))[p]
            if d != pe:
                raise DecompositionFailed(f"the {p}-part has dimension {d}, expected {pe}")
            factors.append((p, K))
        for (p1, K1), (p2, K2) in itertools.combinations(factors, 2):
            for x in K1.labels:
                for y in K2.labels:
                    if not self.centralizes(x, y):
                        raise DecompositionFailed(f"{x} and {y} from the {p1}- and {p2}-parts do not centralize")
        images = set()
        for combo in itertools.product(*(K.sorted_labels for _, K in factors)):
            v = {self.unit: 1}
            for x in combo:
                v = R.multiply(v, x)
            if len(v) != 1 or next(iter(v.values())) != 1:
                raise DecompositionFailed(f"product of {combo} is not simple")
            images.add(next(iter(v)))
        if len(images) != self.rank or math.prod(len(K) for _, K in factors) != self.rank:
            raise DecompositionFailed("products of factor simples do not biject onto the simples")
        return factors

    # complement -------------------------------------------------------------

    def adjoin_pointed_complement(self) -> tuple[PremodularData, Subring]:
        """``C (x) C(H, q^-1)`` and its Lagrangian ``sum_h E'_h (x) h``."""
        if not self.is_modular():
            raise PreconditionFailed("the category is not modular")
        if not self.is_nilpotent():
            raise PreconditionFailed("the category is not nilpotent")
        E = self.is_group_theoretical()
        if E is None:
            raise PreconditionFailed("no isotropic E with (E')_ad inside E")
        M, where = self.grading_metric_with_map(E)
        comp = from_metric_group(M.inverse())
        P, pairs = deligne_product_with_map(self, comp)
        E_new = frozenset(pairs[(x, element_label(h))] for x, h in where.items())
        K = Subring(P.ring, E_new)
        if P.ring.closure(E_new) != E_new:
            raise PreconditionFailed("the graph subcategory is not closed")
        if not P.is_lagrangian(K) or P.sub_dim(K) ** 2 != P.total_dim():
            raise PreconditionFailed("the graph subcategory is not Lagrangian")
        if not P.central_charge().is_one():
            raise PreconditionFailed("the enlarged category does not have central charge 1")
        return P, K

    # Mueger identities ------------------------------------------------------

    def verify_mueger_identities(self) -> MuegerReport:
        if not self.is_modular():
            raise NotModular("Mueger identities are checked on modular categories")
        report = MuegerReport()
        subs = self.subcategories()
        D = self.total_dim()
        report.subcategories = len(subs)
        for K in subs:
            Kp = self.centralizer(K)
            name = str(K)
            report.check(self.centralizer(Kp) == K, f"K'' != K for K = {name}")
            report.check(self.sub_dim(K) * self.sub_dim(Kp) == D, f"dim K dim K' != dim C for K = {name}")
            Kad = self.adjoint(K)
            report.check(
                self.centralizer(Kad) == self.commutator(Kp), f"(K_ad)' != (K')^co for K = {name}"
            )
            Kco = self.commutator(K)
            report.check(
                self.adjoint(Kco) <= K and K <= self.commutator(Kad),
                f"(K^co)_ad <= K <= (K_ad)^co fails for K = {name}",
            )
        report.check(
            self.pointed_part() == self.centralizer(self.adjoint()), "C_pt != (C_ad)'"
        )
        ok, msg = lattice_identities(self.ring, subs, self.sub_dim)
        report.check(ok, msg)
        return report


def exact_rank(rows: Iterable[Iterable[CycNumber]]) -> int:
    """Rank by Gaussian elimination over the cyclotomics."""
    m = [list(r) for r in rows]
    rank = 0
    ncols = len(m[0]) if m else 0
    for c in range(ncols):
        pivot = next((i for i in range(rank, len(m)) if not m[i][c].is_zero()), None)
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        inv = m[rank][c].inverse()
        for i in range(rank + 1, len(m)):
            if m[i][c].is_zero():
                continue
            f = m[i][c] * inv
            m[i] = [a - f * b for a, b in zip(m[i], m[rank])]
        rank += 1
    return rank


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13):
        if n % p == 0:
            return n == p
    d, r = n - 1, 0
    while d % 2 == 0:
        d //= 2
        r += 1
    # deterministic for n < 3.4e14
    for a in (2, 3, 5, 7, 11, 13, 17):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@lru_cache(maxsize=None)
def _prime_and_root(L: int) -> tuple[int, int]:
    """A prime ``P = 1 mod L`` below 2**31 and an element of order exactly ``L`` mod ``P``."""
    k = (1 << 30) // L + 1
    while not _is_prime(k * L + 1):
        k += 1
    P = k * L + 1
    primes = [q for q, _ in factorize(L)] if L > 1 else []
    for g in itertools.count(2):
        w = pow(g, (P - 1) // L, P)
        if all(pow(w, L // q, P) != 1 for q in primes):
            return P, w


def _full_rank_mod_p(C: PremodularData) -> bool:
    L, t, d = C._level, C._t, C.dim
    P, w = _prime_and_root(L)
    powers = [pow(w, k, P) for k in range(L)]
    labels = C.labels
    n = len(labels)
    S = np.zeros((n, n), dtype=np.int64)
    for i, x in enumerate(labels):
        for j, y in enumerate(labels):
            shift = t[x] + t[y]
            S[i, j] = sum(m * d[z] * powers[(t[z] - shift) % L] for z, m in C.ring.fuse(x, y).items()) % P
    for c in range(n):
        rows = np.nonzero(S[c:, c])[0]
        if rows.size == 0:
            return False
        r = c + rows[0]
        if r != c:
            S[[c, r]] = S[[r, c]]
        inv = pow(int(S[c, c]), P - 2, P)
        S[c] = S[c] * inv % P
        below = S[c + 1 :, c].copy()
        if below.any():
            S[c + 1 :] = (S[c + 1 :] - np.outer(below, S[c]) % P) % P
    return True


_lattice_cache: dict[tuple, tuple[bool, str]] = {}


def _ring_key(R: FusionRing) -> tuple:
    return (R.labels, R.unit, tuple(sorted(R.dual.items())), tuple(sorted((k, tuple(sorted(v.items()))) for k, v in R.mult.items())))


def lattice_identities(R: FusionRing, subs: list[Subring], dim) -> tuple[bool, str]:
    """Modular law and diamond dimensions over all subrings (commutative rings only).

    The result depends only on the ring, so it is cached.
    """
    key = _ring_key(R)
    if key in _lattice_cache:
        return _lattice_cache[key]
    by_size = sorted(subs, key=lambda k: k.sort_key)

    def join(a: Subring, b: Subring) -> Subring:
        u = a.labels | b.labels
        for k in by_size:
            if u <= k.labels:
                return k
        raise AssertionError("lattice has no top")

    def meet(a: Subring, b: Subring) -> Subring:
        return Subring(R, a.labels & b.labels)

    result = (True, "")
    if R.is_commutative():
        for a, b in itertools.combinations_with_replacement(subs, 2):
            if dim(join(a, b)) * dim(meet(a, b)) != dim(a) * dim(b):
                result = (False, f"diamond dimensions fail for {a}, {b}")
                break
    if result[0]:
        for a in subs:
            below = [d for d in subs if d <= a]
            for b in subs:
                ab = meet(a, b)
                for d in below:
                    if meet(a, join(b, d)) != join(ab, d):
                        result = (False, f"modular law fails for {a}, {b}, {d}")
                        break
                if not result[0]:
                    break
            if not result[0]:
                break
    _lattice_cache[key] = result
    return result


@dataclass(frozen=True)
class Grading:
    components: tuple[tuple[str, ...], ...]
    component: dict[str, int]
    table: dict[tuple[int, int], int]

    def multiply(self, a: int, b: int) -> int:
        return self.table[(a, b)]

    def is_commutative(self) -> bool:
        return all(self.table[(a, b)] == self.table[(b, a)] for a, b in self.table)

    def group(self) -> AbelianGroup | None:
        """The grading group as a product of cyclic groups, when abelian."""
        if not self.is_commutative():
            return None
        return present(range(len(self.components)), self.multiply, 0).group


@dataclass(frozen=True)
class SubcategoryInfo:
    sub: Subring
    dim: int
    centralizer: Subring
    symmetric: bool
    isotropic: bool
    lagrangian: bool


@dataclass
class MuegerReport:
    subcategories: int = 0
    checks: int = 0
    failures: list[str] = field(default_factory=list)

    def check(self, ok: bool, message: str) -> None:
        self.checks += 1
        if not ok:
            self.failures.append(message)

    @property
    def ok(self) -> bool:
        return not self.failures

    @property
    def first_failure(self) -> str | None:
        return self.failures[0] if self.failures else None


# constructors -----------------------------------------------------------------


def from_metric_group(M: MetricGroup) -> PremodularData:
    """Pointed data on ``M.group`` with ``theta_g = q(g)``."""
    G = M.group
    R = group_ring(G.elements(), G.add, G.neg, G.identity, label=element_label)
    C = PremodularData(R, {element_label(g): M.q(g) for g in G.elements()}, {element_label(g): 1 for g in G.elements()})
    C.metric = M
    C.element_of = {element_label(g): g for g in G.elements()}
    return C


def reverse(C: PremodularData) -> PremodularData:
    return PremodularData(C.ring, {x: t.inverse() for x, t in C.twist.items()}, C.dim)


def deligne_product_with_map(
    C1: PremodularData, C2: PremodularData
) -> tuple[PremodularData, dict[tuple[str, str], str]]:
    caps.check("MODCAT_MAX_ORDER", C1.rank * C2.rank)
    R, pairs = product(C1.ring, C2.ring)
    twist = {pairs[(a, b)]: C1.twist[a] * C2.twist[b] for a, b in pairs}
    dim = {pairs[(a, b)]: C1.dim[a] * C2.dim[b] for a, b in pairs}
    return PremodularData(R, twist, dim), pairs


def deligne_product(C1: PremodularData, C2: PremodularData) -> PremodularData:
    return deligne_product_with_map(C1, C2)[0]
