"""Fusion rings: based rings with a unit, a duality and nonnegative structure constants.

``N[x, y][z]`` is the multiplicity of the simple ``z`` in ``x (x) y``.  The
ring is the twist-free skeleton of a premodular category; subrings play the
role of fusion subcategories.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping

import numpy as np

from . import caps
from .errors import NonIntegralDims, ValidationError

__all__ = ["FusionRing", "Subring", "product", "group_ring"]


class FusionRing:
    """A fusion ring on string labels.

    ``mult`` maps ``(x, y)`` to a mapping ``{z: N^z_{xy}}``; missing entries are
    zero.  Construction normalizes the data but does not validate it; call
    :meth:`validate`.
    """

    def __init__(
        self,
        labels: Iterable[str],
        unit: str,
        dual: Mapping[str, str],
        mult: Mapping[tuple[str, str], Mapping[str, int]],
    ) -> None:
        self.labels: tuple[str, ...] = tuple(labels)
        if len(set(self.labels)) != len(self.labels):
            raise ValidationError("duplicate simple labels")
        self.unit = unit
        if unit not in self.labels:
            raise ValidationError(f"unit {unit!r} is not a simple label")
        self.dual = dict(dual)
        known = set(self.labels)
        for x in self.labels:
            if x not in self.dual:
                raise ValidationError(f"dual of {x!r} is missing")
            if self.dual[x] not in known:
                raise ValidationError(f"dual of {x!r} is unknown label {self.dual[x]!r}")
        self.mult: dict[tuple[str, str], dict[str, int]] = {}
        for (x, y), out in mult.items():
            if x not in known or y not in known:
                raise ValidationError(f"fusion entry uses unknown label in {(x, y)}")
            clean = {}
            for z, n in out.items():
                if z not in known:
                    raise ValidationError(f"fusion entry {x} x {y} uses unknown label {z!r}")
                n = int(n)
                if n < 0:
                    raise ValidationError(f"negative multiplicity N^{z}_{{{x},{y}}}")
                if n:
                    clean[z] = n
            if clean:
                self.mult[(x, y)] = clean

    @property
    def rank(self) -> int:
        return len(self.labels)

    def __repr__(self) -> str:
        return f"FusionRing(rank={self.rank}, unit={self.unit!r})"

    def N(self, x: str, y: str, z: str) -> int:
        return self.mult.get((x, y), {}).get(z, 0)

    def fuse(self, x: str, y: str) -> dict[str, int]:
        return self.mult.get((x, y), {})

    @cached_property
    def position(self) -> dict[str, int]:
        return {x: i for i, x in enumerate(self.labels)}

    # validation -------------------------------------------------------------

    def validate(self, deep: bool | None = None) -> None:
        """Raise :class:`ValidationError` on the first violated fusion-ring axiom.

        Associativity costs ``O(rank^4)`` and is skipped above rank 12 unless
        ``deep`` is true.
        """
        u = self.unit
        for x in self.labels:
            if self.dual[self.dual[x]] != x:
                raise ValidationError(f"duality is not an involution at {x!r}")
            if self.fuse(u, x) != {x: 1} or self.fuse(x, u) != {x: 1}:
                raise ValidationError(f"unit axiom fails at {x!r}")
        if self.dual[u] != u:
            raise ValidationError("the unit must be self-dual")
        for x, y in itertools.product(self.labels, repeat=2):
            want = 1 if y == self.dual[x] else 0
            if self.N(x, y, u) != want:
                raise ValidationError(f"N^1_{{{x},{y}}} should be {want}")
            for z, n in self.fuse(x, y).items():
                if self.N(self.dual[y], self.dual[x], self.dual[z]) != n:
                    raise ValidationError(f"duality symmetry fails at ({x}, {y}, {z})")
        if deep is None:
            deep = self.rank <= 12
        if deep:
            self._check_associativity()

    def _check_associativity(self) -> None:
        for x, y, z in itertools.product(self.labels, repeat=3):
            left: dict[str, int] = {}
            for w, a in self.fuse(x, y).items():
                for v, b in self.fuse(w, z).items():
                    left[v] = left.get(v, 0) + a * b
            right: dict[str, int] = {}
            for w, a in self.fuse(y, z).items():
                for v, b in self.fuse(x, w).items():
                    right[v] = right.get(v, 0) + a * b
            if left != right:
                raise ValidationError(f"associativity fails at ({x}, {y}, {z})")

    def is_commutative(self) -> bool:
        return all(self.fuse(x, y) == self.fuse(y, x) for x, y in itertools.combinations(self.labels, 2))

    def is_pointed(self) -> bool:
        return all(d == 1 for d in self.fp_dims().values())

    # Frobenius-Perron dimensions --------------------------------------------

    @cached_property
    def _fp(self) -> dict[str, int]:
        n = self.rank
        pos = self.position
        # total[z, y] = sum_x N^z_{xy}: strictly positive, so power iteration converges
        total = np.zeros((n, n))
        for (x, y), out in self.mult.items():
            for z, m in out.items():
                total[pos[z], pos[y]] += m
        v = np.ones(n)
        for _ in range(10_000):
            w = total @ v
            w /= w[pos[self.unit]]
            if np.max(np.abs(w - v)) < 1e-9:
                v = w
                break
            v = w
        dims = {x: int(round(v[pos[x]])) for x in self.labels}
        if any(d < 1 for d in dims.values()):
            raise NonIntegralDims("Frobenius-Perron dimensions are not positive integers")
        for x, y in itertools.product(self.labels, repeat=2):
            s = sum(m * dims[z] for z, m in self.fuse(x, y).items())
            if s != dims[x] * dims[y]:
                raise NonIntegralDims(
                    f"no integral solution of d_x d_y = sum N d_z (fails at {x} x {y}; "
                    "non-integral categories are unsupported)"
                )
        return dims

    def fp_dims(self) -> dict[str, int]:
        return dict(self._fp)

    def fp_dim(self) -> int:
        return sum(d * d for d in self._fp.values())

    # subrings ---------------------------------------------------------------

    def closure(self, labels: Iterable[str]) -> frozenset[str]:
        span = {self.unit}
        todo = []
        for x in labels:
            if x not in self.position:
                raise ValidationError(f"unknown label {x!r}")
            for y in (x, self.dual[x]):
                if y not in span:
                    span.add(y)
                    todo.append(y)
        while todo:
            x = todo.pop()
            for y in list(span):
                for a, b in ((x, y), (y, x)):
                    for z in self.fuse(a, b):
                        if z not in span:
                            span.add(z)
                            todo.append(z)
        return frozenset(span)

    def subring_generated(self, labels: Iterable[str]) -> Subring:
        return Subring(self, self.closure(labels))

    def whole(self) -> Subring:
        return Subring(self, frozenset(self.labels))

    def unit_subring(self) -> Subring:
        return Subring(self, frozenset([self.unit]))

    def all_subrings(self) -> list[Subring]:
        """Every subring once, sorted by (size, label positions)."""
        caps.check("MODCAT_MAX_RANK", self.rank)
        start = frozenset([self.unit])
        seen = {start}
        frontier = [start]
        while frontier:
            nxt = []
            for s in frontier:
                for x in self.labels:
                    if x in s:
                        continue
                    t = self.closure(s | {x})
                    if t not in seen:
                        seen.add(t)
                        nxt.append(t)
            frontier = nxt
        subs = [Subring(self, s) for s in seen]
        subs.sort(key=lambda k: k.sort_key)
        return subs

    def adjoint_subring(self, within: Subring | None = None) -> Subring:
        """Subring generated by all ``x (x) x*`` for ``x`` in ``within`` (default: everything)."""
        labels = self.labels if within is None else within.sorted_labels
        gens = set()
        for x in labels:
            gens.update(self.fuse(x, self.dual[x]))
        return self.subring_generated(gens)

    def commutator(self, K: Subring) -> Subring:
        """Simples ``x`` with every constituent of ``x (x) x*`` inside ``K``."""
        members = frozenset(
            x for x in self.labels if all(z in K.labels for z in self.fuse(x, self.dual[x]))
        )
        return Subring(self, members)

    def meet(self, A: Subring, B: Subring) -> Subring:
        return Subring(self, A.labels & B.labels)

    def join(self, A: Subring, B: Subring) -> Subring:
        return Subring(self, self.closure(A.labels | B.labels))

    def multiply(self, v: Mapping[str, int], x: str) -> dict[str, int]:
        """Right-multiply the Grothendieck-ring element ``v`` by the simple ``x``."""
        out: dict[str, int] = {}
        for y, a in v.items():
            for z, b in self.fuse(y, x).items():
                out[z] = out.get(z, 0) + a * b
        return out

    def power_contains_unit(self, x: str, m: int) -> bool:
        """Whether the unit occurs in ``x`` tensored with itself ``m`` times."""
        if m < 1:
            raise ValueError("m must be positive")
        caps.check("MODCAT_MAX_POWER", m)
        v = {x: 1}
        for _ in range(m - 1):
            v = self.multiply(v, x)
        return v.get(self.unit, 0) > 0


@dataclass(frozen=True, eq=True)
class Subring:
    ring: FusionRing
    labels: frozenset

    @cached_property
    def sorted_labels(self) -> tuple[str, ...]:
        pos = self.ring.position
        return tuple(sorted(self.labels, key=pos.__getitem__))

    @cached_property
    def sort_key(self) -> tuple:
        pos = self.ring.position
        return (len(self.labels), tuple(pos[x] for x in self.sorted_labels))

    def __contains__(self, x: object) -> bool:
        return x in self.labels

    def __len__(self) -> int:
        return len(self.labels)

    def __le__(self, other: Subring) -> bool:
        return self.labels <= other.labels

    def __lt__(self, other: Subring) -> bool:
        return self.labels < other.labels

    def dim(self) -> int:
        d = self.ring._fp
        return sum(d[x] ** 2 for x in self.labels)

    def is_unit(self) -> bool:
        return self.labels == frozenset([self.ring.unit])

    def is_whole(self) -> bool:
        return len(self.labels) == self.ring.rank

    def __str__(self) -> str:
        sep = "; " if any("," in x for x in self.labels) else ", "
        return "{" + sep.join(self.sorted_labels) + "}"


def pair_label(a: str, b: str) -> str:
    wrap = lambda s: f"({s})" if "|" in s else s  # noqa: E731
    return f"{wrap(a)}|{wrap(b)}"


def product(R1: FusionRing, R2: FusionRing) -> tuple[FusionRing, dict[tuple[str, str], str]]:
    """Tensor product ring; returns the ring and the map from label pairs to new labels."""
    pairs = {(a, b): pair_label(a, b) for a in R1.labels for b in R2.labels}
    labels = [pairs[(a, b)] for a in R1.labels for b in R2.labels]
    dual = {pairs[(a, b)]: pairs[(R1.dual[a], R2.dual[b])] for a, b in pairs}
    mult: dict[tuple[str, str], dict[str, int]] = {}
    for (a1, b1), (a2, b2) in itertools.product(pairs, repeat=2):
        out = {}
        for z1, n1 in R1.fuse(a1, a2).items():
            for z2, n2 in R2.fuse(b1, b2).items():
                out[pairs[(z1, z2)]] = n1 * n2
        if out:
            mult[(pairs[(a1, b1)], pairs[(a2, b2)])] = out
    return FusionRing(labels, pairs[(R1.unit, R2.unit)], dual, mult), pairs


def group_ring(elements: list, add, neg, identity, label=str) -> FusionRing:
    """Fusion ring of a finite group given by its element list and operations."""
    names = {g: label(g) for g in elements}
    mult = {(names[g], names[h]): {names[add(g, h)]: 1} for g in elements for h in elements}
    dual = {names[g]: names[neg(g)] for g in elements}
    return FusionRing([names[g] for g in elements], names[identity], dual, mult)


def lcm_dims(R: FusionRing) -> int:
    return math.lcm(*R.fp_dims().values())
