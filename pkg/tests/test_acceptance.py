"""Acceptance suite: one check per criterion, each printing a single PASS/FAIL line.

Run alone with ``pytest tests/test_acceptance.py -s`` or ``python tests/test_acceptance.py``.
Sweeps over metric groups run over isometry classes; every property checked is
invariant under isometry.
"""

from __future__ import annotations

import cmath
import itertools
import math
import random
import time
from fractions import Fraction
from typing import Callable

import pytest

from modcat import catalog, metric
from modcat.abelian import AbelianGroup
from modcat.cyclotomic import CycNumber, RootOfUnity, embed, is_root_of_unity, sqrt_int
from modcat.premodular import (
    PremodularData,
    deligne_product,
    deligne_product_with_map,
    element_label,
    from_metric_group,
    reverse,
)

Result = tuple[bool, str]


def _fail(msgs: list[str], checked: int, what: str) -> Result:
    if msgs:
        return False, f"{len(msgs)} failures, first: {msgs[0]}"
    return True, f"{checked} {what}"


def _square(n: int) -> bool:
    return math.isqrt(n) ** 2 == n


def _p_sweep() -> list:
    """Classes of metric p-groups: p = 2 up to 64, p = 3 up to 81."""
    return list(catalog.sweep(64, (2,))) + [M for M in catalog.sweep(81, (3,)) if M.order > 1]


# 1 ------------------------------------------------------------------------------------------


def criterion_1() -> Result:
    bad = []
    half_sqrt2 = sqrt_int(2) * Fraction(1, 2)
    i = embed(RootOfUnity("1/4"))
    for s, sign in (("1/4", 1), ("3/4", -1)):
        xi = embed(metric.cyclic(2, s).central_charge())
        if xi != half_sqrt2 * (CycNumber.one() + i * sign):
            bad.append(f"C(Z/2, q={s}) has charge {xi}")
    for u in (1, 3, 5, 7):
        sigma = RootOfUnity(Fraction(u, 8))
        M = metric.cyclic(4, sigma.exponent)
        if M.gauss_sum(1) != embed(sigma) * 2:
            bad.append(f"tau+ of C(Z/4, {sigma}) is {M.gauss_sum(1)}")
        if M.central_charge() != sigma:
            bad.append(f"charge of C(Z/4, {sigma}) is {M.central_charge()}")
    fxs = catalog.two_group_family("d")
    got = sorted((str(fx.payload.central_charge()), sorted(str(fx.payload.q(g)) for g in fx.payload.group.elements()[1:])) for fx in fxs)
    want = sorted(
        [
            ("1/4", ["1/2", "1/4", "1/4"]),  # charge i
            ("3/4", ["1/2", "3/4", "3/4"]),  # charge -i
            ("1/2", ["1/2", "1/2", "1/2"]),  # charge -1
            ("0", ["0", "1/4", "3/4"]),  # charge 1, values i, -i, 1
            ("0", ["0", "0", "1/2"]),  # charge 1, values 1, 1, -1
        ]
    )
    if got != want:
        bad.append(f"Z/2 x Z/2 table {got}")
    classes = metric.isomorphism_classes(metric.nondegenerate_forms(AbelianGroup.of(2, 2)))
    if len(classes) != 5:
        bad.append(f"{len(classes)} classes on Z/2 x Z/2")
    return _fail(bad, 2 + 4 + 5, "exact values checked")


# 2 ------------------------------------------------------------------------------------------


def criterion_2() -> Result:
    bad = []
    count = 0
    for p in (3, 5, 7, 11, 13):
        allowed = {Fraction(0), Fraction(1, 2)} if p % 4 == 1 else {Fraction(1, 4), Fraction(3, 4)}
        for k in range(1, p):
            xi = metric.cyclic(p, Fraction(k, p)).central_charge().exponent
            count += 1
            if xi not in allowed:
                bad.append(f"C(Z/{p}, {k}/{p}) has charge {xi}")
    for p in (3, 5):
        classes = metric.isomorphism_classes(metric.nondegenerate_forms(AbelianGroup.of(p, p)))
        charges = sorted(M.central_charge().exponent for M in classes)
        count += 1
        if charges != [0, Fraction(1, 2)]:
            bad.append(f"Z/{p} x Z/{p}: charges {charges}")
    return _fail(bad, count, "charges checked")


# 3 ------------------------------------------------------------------------------------------


def criterion_3() -> Result:
    bad = []
    checked = 0
    for M in _p_sweep():
        if not (_square(M.order) and M.central_charge().is_one()):
            continue
        checked += 1
        L = M.find_lagrangian()
        if L is None or not M.is_lagrangian(L) or L.order**2 != M.order:
            bad.append(M.describe())
            continue
        # independent confirmation: the subgroup is isotropic element by element
        # and equals its orthogonal complement computed by brute force
        elems = set(L.elements)
        perp = {g for g in M.group.elements() if all(M.bilinear(g, h).is_one() for h in elems)}
        if perp != elems or not all(M.q(h).is_one() for h in elems):
            bad.append(f"brute force rejects {L} in {M.describe()}")
        if M.brute_force_lagrangian() is None:
            bad.append(f"brute force finds none in {M.describe()}")
    return _fail(bad, checked, "square-order charge-1 classes with verified Lagrangian")


# 4 ------------------------------------------------------------------------------------------


def criterion_4() -> Result:
    bad = []
    pairs = 0
    for M in catalog.sweep(32):
        xi = M.central_charge()
        for H in M.isotropic_subgroups():
            pairs += 1
            if M.reduce(H).central_charge() != xi:
                bad.append(f"{M.describe()} by {H}")
    return _fail(bad, pairs, "(M, H) pairs")


# 5 ------------------------------------------------------------------------------------------


def criterion_5() -> Result:
    bad = []
    forms = list(catalog.sweep(32))
    for M in forms:
        if M.gauss_sum(1) * M.gauss_sum(-1) != CycNumber.rational(M.order):
            bad.append(f"tau+ tau- != |G| for {M.describe()}")
    rng = random.Random(20240611)
    for _ in range(100):
        A, B = rng.choice(forms), rng.choice(forms)
        S = metric.direct_sum(A, B)
        for sign in (1, -1):
            if S.gauss_sum(sign) != A.gauss_sum(sign) * B.gauss_sum(sign):
                bad.append(f"tau{sign:+d} not multiplicative on {A.describe()} + {B.describe()}")
    return _fail(bad, len(forms) + 100, "forms and random pairs")


# 6 ------------------------------------------------------------------------------------------


def _modular_fixtures() -> list[PremodularData]:
    cats = [from_metric_group(M) for M in catalog.sweep(16)]
    cats += [catalog.double_of_abelian(G) for n in range(1, 5) for G in catalog.groups_of_order(n)]
    return cats


def criterion_6() -> Result:
    bad = []
    subs = 0
    cats = _modular_fixtures()
    for C in cats:
        report = C.verify_mueger_identities()
        subs += report.subcategories
        if not report.ok:
            bad.append(report.first_failure)
    return _fail(bad, subs, f"subcategories over {len(cats)} categories")


# 7 ------------------------------------------------------------------------------------------


def criterion_7() -> Result:
    bad = []
    cats = _modular_fixtures()
    for C in cats:
        E = C.is_group_theoretical()
        if E is None or not C.is_isotropic(E) or not C.adjoint(C.centralizer(E)) <= E:
            bad.append(f"no witness for {C!r}")
        if C.total_dim() <= 16:
            P = deligne_product(C, reverse(C))
            L = P.find_lagrangian()
            if L is None or not P.is_lagrangian(L) or P.sub_dim(L) ** 2 != P.total_dim():
                bad.append(f"C x C^rev has no Lagrangian for {C!r}")
    return _fail(bad, len(cats), "modular categories")


# 8 ------------------------------------------------------------------------------------------


def criterion_8() -> Result:
    bad = []
    cats = [from_metric_group(M) for M in catalog.sweep(16)]
    for C in cats:
        P, K = C.adjoin_pointed_complement()
        closed = P.ring.closure(K.labels) == K.labels
        if not (closed and P.central_charge().is_one() and P.is_isotropic(K) and P.centralizer(K) == K):
            bad.append(f"complement fails for {C.metric.describe()}")
    odd = [M for p, top in ((3, 81), (5, 25), (7, 49)) for M in catalog.sweep(top, (p,))]
    lag = 0
    for M in _p_sweep() + odd:
        if _square(M.order) and M.central_charge().is_one():
            lag += 1
            if M.find_lagrangian() is None:
                bad.append(f"no Lagrangian in {M.describe()}")
    return _fail(bad, len(cats) + lag, "complements and Lagrangian checks")


# 9 ------------------------------------------------------------------------------------------


def _p_part(n: int, p: int) -> int:
    q = 1
    while n % p == 0:
        n, q = n // p, q * p
    return q


def _check_sylow(C: PremodularData, expect: dict[int, frozenset[str]]) -> list[str]:
    bad = []
    factors = C.sylow_decompose()
    got = {p: K.labels for p, K in factors}
    if got != expect:
        bad.append(f"factors {got} != {expect}")
    if got != C.sylow_parts():
        bad.append("factors differ from the condition (*) partition")
    D = C.total_dim()
    for p, K in factors:
        if C.sub_dim(K) != _p_part(D, p):
            bad.append(f"{p}-part has dim {C.sub_dim(K)}")
    for (_, A), (_, B) in itertools.combinations(factors, 2):
        if not all(C.centralizes_via_s(x, y) for x in A.labels for y in B.labels):
            bad.append("factors do not centralize")
    images = set()
    for combo in itertools.product(*(K.sorted_labels for _, K in factors)):
        v = {C.unit: 1}
        for x in combo:
            v = C.ring.multiply(v, x)
        images.update(v)
    if len(images) != C.rank:
        bad.append("product map is not onto")
    return bad


def criterion_9() -> Result:
    bad = []
    checked = 0
    for n in (6, 12, 15):
        G = AbelianGroup.of(n)
        units = [u for u in range(2 * n) if math.gcd(u, 2 * n) == 1] if n % 2 == 0 else [u for u in range(n) if math.gcd(u, n) == 1]
        for u in units:
            sigma = Fraction(u, 2 * n) if n % 2 == 0 else Fraction(u, n)
            C = from_metric_group(metric.cyclic(n, sigma))
            expect = {
                p: frozenset(element_label(g) for g in G.elements() if _p_part(G.element_order(g), p) == G.element_order(g))
                for p in (2, 3, 5)
                if n % p == 0
            }
            bad += _check_sylow(C, expect)
            checked += 1
    parts = {
        2: [metric.cyclic(4, "1/8"), metric.hyperbolic(AbelianGroup.of(2))],
        3: [metric.cyclic(3, "1/3"), metric.cyclic(9, "2/9")],
        5: [metric.cyclic(5, "2/5")],
    }
    for combo in itertools.product(*parts.values()):
        for r in (2, 3):
            for chosen in itertools.combinations(zip(parts, combo), r):
                C = from_metric_group(chosen[0][1])
                names = {chosen[0][0]: {x: x for x in C.labels}}
                for p, M in chosen[1:]:
                    D = from_metric_group(M)
                    C, pairs = deligne_product_with_map(C, D)
                    names = {q: {x: pairs[(y, D.unit)] for x, y in m.items()} for q, m in names.items()}
                    unit_left = next(a for (a, b), lab in pairs.items() if lab == C.unit)
                    names[p] = {x: pairs[(unit_left, x)] for x in D.labels}
                expect = {p: frozenset(m.values()) for p, m in names.items()}
                bad += _check_sylow(C, expect)
                checked += 1
    return _fail(bad, checked, "decompositions")


# 10 ------------------------------------------------------------------------------------------


def criterion_10() -> Result:
    bad = []
    forms = _p_sweep() + list(catalog.sweep(25, (5,))) + list(catalog.sweep(49, (7,)))
    for M in forms:
        xi = M.central_charge().exponent
        if (xi * 8).denominator != 1:
            bad.append(f"charge {xi} for {M.describe()}")
        if M.order % 2 == 1 and _square(M.order) and xi not in (0, Fraction(1, 2)):
            bad.append(f"odd square order with charge {xi}: {M.describe()}")
    return _fail(bad, len(forms), "charges checked")


# 11 ------------------------------------------------------------------------------------------


def _brute_root(a: CycNumber) -> Fraction | None:
    if a.is_zero():
        return None
    n = a.conductor
    p = CycNumber.one()
    for k in range(1, 2 * n + 1):
        p = p * a
        if p == CycNumber.one():
            return Fraction(round(cmath.phase(complex(a)) / (2 * math.pi) * k), k) % 1
    return None


def criterion_11() -> Result:
    bad = []
    for n in range(1, 101):
        r = sqrt_int(n)
        if r * r != CycNumber.rational(n):
            bad.append(f"sqrt_int({n})^2 != {n}")
        if abs(complex(r) - math.sqrt(n)) > 1e-9:
            bad.append(f"sqrt_int({n}) embeds to {complex(r)}")
    rng = random.Random(7)
    samples = []
    for n in (1, 3, 4, 5, 8, 9, 12, 15, 16, 24):
        for k in range(n):
            z = embed(RootOfUnity(Fraction(k, n)))
            samples += [z, -z, z * 2, z + CycNumber.one()]
        for _ in range(5):
            samples.append(sum((embed(RootOfUnity(Fraction(rng.randrange(n), n))) for _ in range(rng.randint(1, 3))), CycNumber.zero()))
    for a in samples:
        r = is_root_of_unity(a)
        want = _brute_root(a)
        if (r is None) != (want is None) or (r is not None and r.exponent != want):
            bad.append(f"is_root_of_unity({a}) = {r}, power test {want}")
    for n in (5, 7, 12, 16, 60):
        for k in range(n):
            ref = cmath.exp(2j * math.pi * k / n)
            if abs(complex(embed(RootOfUnity(Fraction(k, n)))) - ref) > 1e-9:
                bad.append(f"embedding of zeta_{n}^{k}")
    return _fail(bad, 100 + len(samples), "values checked")


CRITERIA: dict[int, Callable[[], Result]] = {
    1: criterion_1,
    2: criterion_2,
    3: criterion_3,
    4: criterion_4,
    5: criterion_5,
    6: criterion_6,
    7: criterion_7,
    8: criterion_8,
    9: criterion_9,
    10: criterion_10,
    11: criterion_11,
}


def _line(n: int) -> tuple[bool, str]:
    t = time.perf_counter()
    ok, detail = CRITERIA[n]()
    return ok, f"criterion {n:>2}: {'PASS' if ok else 'FAIL'}  ({detail}; {time.perf_counter() - t:.1f}s)"


@pytest.mark.parametrize("n", sorted(CRITERIA))
def test_criterion(n, capsys):
    ok, line = _line(n)
    with capsys.disabled():
        print("\n" + line, end="")
    assert ok, line


if __name__ == "__main__":
    for n in sorted(CRITERIA):
        print(_line(n)[1])
