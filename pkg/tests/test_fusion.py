from __future__ import annotations

import itertools
import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from modcat import caps, catalog
from modcat.abelian import AbelianGroup, format_element
from modcat.errors import NonIntegralDims, TooLarge, ValidationError
from modcat.fusion import FusionRing, Subring, group_ring, product


def abelian_ring(*orders: int) -> FusionRing:
    G = AbelianGroup.of(*orders)
    return group_ring(G.elements(), G.add, G.neg, G.identity, lambda g: format_element(g) or "0")


def s3_ring() -> FusionRing:
    """Group ring of the symmetric group on three letters (not commutative)."""
    perms = list(itertools.permutations(range(3)))
    compose = lambda a, b: tuple(a[b[i]] for i in range(3))  # noqa: E731
    inv = lambda a: tuple(sorted(range(3), key=a.__getitem__))  # noqa: E731
    return group_ring(perms, compose, inv, (0, 1, 2), lambda p: "".join(map(str, p)))


def unit_ring() -> FusionRing:
    return FusionRing(["1"], "1", {"1": "1"}, {("1", "1"): {"1": 1}})


def groups_up_to(n: int):
    for order in range(1, n + 1):
        yield from catalog.groups_of_order(order)


# validation ---------------------------------------------------------------------------


def test_validator_accepts_group_rings_up_to_16():
    for G in groups_up_to(16):
        R = group_ring(G.elements(), G.add, G.neg, G.identity, lambda g: format_element(g) or "0")
        R.validate(deep=True)
    s3_ring().validate()
    catalog.rep_s3_ring().validate()


def test_validator_rejects_corrupted_associativity():
    R = abelian_ring(2, 2)
    mult = {k: dict(v) for k, v in R.mult.items()}
    # a x b = a (both orders) keeps unit, rigidity and duality, breaks associativity
    a, b = "0,1", "1,0"
    mult[(a, b)] = mult[(b, a)] = {a: 1}
    bad = FusionRing(R.labels, R.unit, R.dual, mult)
    with pytest.raises(ValidationError, match="associativity"):
        bad.validate()


def test_validator_rejects_other_axioms():
    R = catalog.rep_s3_ring()
    mult = {k: dict(v) for k, v in R.mult.items()}
    mult[("1", "V")] = {"V": 1, "sgn": 1}
    with pytest.raises(ValidationError, match="unit"):
        FusionRing(R.labels, R.unit, R.dual, mult).validate()
    mult = {k: dict(v) for k, v in R.mult.items()}
    mult[("V", "V")] = {"sgn": 1, "V": 1}
    with pytest.raises(ValidationError):
        FusionRing(R.labels, R.unit, R.dual, mult).validate()
    with pytest.raises(ValidationError, match="involution"):
        FusionRing(R.labels, R.unit, {"1": "1", "sgn": "V", "V": "V"}, R.mult).validate()


def test_constructor_rejects_bad_input():
    with pytest.raises(ValidationError):
        FusionRing(["1", "1"], "1", {"1": "1"}, {})
    with pytest.raises(ValidationError):
        FusionRing(["1"], "x", {"1": "1"}, {})
    with pytest.raises(ValidationError):
        FusionRing(["1"], "1", {"1": "1"}, {("1", "1"): {"1": -1}})
    with pytest.raises(ValidationError):
        FusionRing(["1"], "1", {"1": "1"}, {("1", "y"): {"1": 1}})


def test_deep_validation_gate():
    R = abelian_ring(2, 2, 2, 2)  # rank 16
    mult = {k: dict(v) for k, v in R.mult.items()}
    a, b = "0,0,0,1", "0,0,1,0"
    mult[(a, b)] = mult[(b, a)] = {a: 1}
    bad = FusionRing(R.labels, R.unit, R.dual, mult)
    bad.validate()  # rank 16: associativity skipped
    with pytest.raises(ValidationError, match="associativity"):
        bad.validate(deep=True)


# FP dimensions ---------------------------------------------------------------------------


def test_fp_dims_examples():
    assert set(abelian_ring(2, 3).fp_dims().values()) == {1}
    assert catalog.rep_s3_ring().fp_dims() == {"1": 1, "sgn": 1, "V": 2}
    assert catalog.rep_s3_ring().fp_dim() == 6
    with pytest.raises(NonIntegralDims):
        catalog.ising_ring().fp_dims()


def test_fp_dims_of_noncommutative_group_ring():
    R = s3_ring()
    assert not R.is_commutative()
    assert R.fp_dim() == 6 and R.is_pointed()


@pytest.mark.parametrize("R", [catalog.rep_s3_ring(), s3_ring(), abelian_ring(4, 2)])
def test_fp_dims_invariants(R):
    d = R.fp_dims()
    assert all(d[R.dual[x]] == d[x] for x in R.labels)
    assert sum(v * v for v in d.values()) == R.fp_dim()
    for x, y in itertools.product(R.labels, repeat=2):
        assert d[x] * d[y] == sum(n * d[z] for z, n in R.fuse(x, y).items())


def test_fp_dim_is_multiplicative_under_product():
    rings = [catalog.rep_s3_ring(), abelian_ring(3), s3_ring()]
    for A, B in itertools.product(rings, repeat=2):
        P, pairs = product(A, B)
        P.validate()
        assert P.fp_dim() == A.fp_dim() * B.fp_dim()
        dA, dB, dP = A.fp_dims(), B.fp_dims(), P.fp_dims()
        for (a, b), label in pairs.items():
            assert dP[label] == dA[a] * dB[b]


# subrings --------------------------------------------------------------------------------


def test_subring_examples():
    R = catalog.rep_s3_ring()
    assert R.subring_generated([]).is_unit()
    assert [s.sorted_labels for s in R.all_subrings()] == [("1",), ("1", "sgn"), ("1", "sgn", "V")]
    assert len(abelian_ring(4).all_subrings()) == 3


def test_subring_lattice_matches_subgroup_lattice():
    for G in groups_up_to(16):
        R = group_ring(G.elements(), G.add, G.neg, G.identity, lambda g: format_element(g) or "0")
        subs = {s.labels for s in R.all_subrings()}
        groups = {frozenset(format_element(g) or "0" for g in H.elements) for H in G.subgroups()}
        assert subs == groups


def test_s3_group_ring_has_six_subrings():
    R = s3_ring()
    assert sorted(len(s) for s in R.all_subrings()) == [1, 2, 2, 2, 3, 6]


def test_all_subrings_are_closed_and_distinct():
    for R in [catalog.rep_s3_ring(), s3_ring(), abelian_ring(2, 4)]:
        subs = R.all_subrings()
        assert len({s.labels for s in subs}) == len(subs)
        for s in subs:
            assert R.closure(s.labels) == s.labels


def test_all_subrings_respects_rank_cap(monkeypatch):
    monkeypatch.setenv("MODCAT_MAX_RANK", "4")
    with pytest.raises(TooLarge):
        abelian_ring(2, 4).all_subrings()


def test_closure_rejects_unknown_label():
    with pytest.raises(ValidationError):
        catalog.rep_s3_ring().closure(["W"])


def test_subring_str():
    R = catalog.rep_s3_ring()
    assert str(R.whole()) == "{1, sgn, V}"
    assert str(abelian_ring(2, 2).whole()) == "{0,0; 0,1; 1,0; 1,1}"


# adjoint and commutator -------------------------------------------------------------------


def test_adjoint_examples():
    assert abelian_ring(6).adjoint_subring().is_unit()
    assert s3_ring().adjoint_subring().is_unit()
    assert catalog.rep_s3_ring().adjoint_subring().is_whole()


def test_adjoint_of_product_is_componentwise():
    A, B = catalog.rep_s3_ring(), abelian_ring(3)
    P, pairs = product(A, B)
    adj = P.adjoint_subring()
    want = {pairs[(a, b)] for a in A.adjoint_subring().labels for b in B.adjoint_subring().labels}
    assert adj.labels == want


def test_commutator_examples():
    R = catalog.rep_s3_ring()
    assert R.commutator(R.whole()).is_whole()
    assert abelian_ring(6).commutator(abelian_ring(6).unit_subring()).is_whole()
    K = R.subring_generated(["sgn"])
    assert R.commutator(K).labels == {"1", "sgn"}


def test_commutator_sandwich():
    for R in [catalog.rep_s3_ring(), s3_ring(), abelian_ring(2, 2)]:
        for K in R.all_subrings():
            co = R.commutator(K)
            assert R.adjoint_subring(co) <= K
            assert K <= R.commutator(R.adjoint_subring(K))


# lattice identities ------------------------------------------------------------------------


def commutative_rings():
    out = [catalog.rep_s3_ring(), abelian_ring(2, 4), abelian_ring(9)]
    out += [product(catalog.rep_s3_ring(), abelian_ring(3))[0]]
    return out


def test_meet_join_dimension_identity():
    for R in commutative_rings():
        assert R.is_commutative() and R.rank <= 18
        subs = R.all_subrings()
        for A, B in itertools.combinations_with_replacement(subs, 2):
            J, M = R.join(A, B), R.meet(A, B)
            assert J.dim() * M.dim() == A.dim() * B.dim()


def test_modular_law():
    for R in commutative_rings() + [s3_ring()]:
        subs = R.all_subrings()
        for A, B, D in itertools.product(subs, repeat=3):
            if D <= A:
                assert R.meet(A, R.join(B, D)) == R.join(R.meet(A, B), D)


# powers ----------------------------------------------------------------------------------------


def test_power_contains_unit_examples():
    R = abelian_ring(6)
    assert R.power_contains_unit("0", 5)
    assert not R.power_contains_unit("1", 4)
    assert R.power_contains_unit("1", 6)
    assert catalog.rep_s3_ring().power_contains_unit("V", 2)
    assert not catalog.rep_s3_ring().power_contains_unit("sgn", 3)


def test_power_contains_unit_cap(monkeypatch):
    monkeypatch.setenv("MODCAT_MAX_POWER", "10")
    with pytest.raises(TooLarge):
        abelian_ring(6).power_contains_unit("1", 11)
    with pytest.raises(ValueError):
        abelian_ring(6).power_contains_unit("1", 0)


@given(st.integers(1, 12), st.integers(0, 11), st.integers(1, 30))
def test_power_contains_unit_matches_element_order(n, a, m):
    a %= n
    R = abelian_ring(n)
    order = n // math.gcd(n, a)
    assert R.power_contains_unit(str(a), m) == (m % order == 0)


def test_product_with_unit_ring():
    R = catalog.rep_s3_ring()
    P, pairs = product(R, unit_ring())
    assert P.rank == R.rank and P.fp_dim() == R.fp_dim()
    for x, y in itertools.product(R.labels, repeat=2):
        assert P.fuse(pairs[(x, "1")], pairs[(y, "1")]) == {pairs[(z, "1")]: n for z, n in R.fuse(x, y).items()}


def test_subring_is_hashable_value():
    R = catalog.rep_s3_ring()
    assert Subring(R, frozenset({"1"})) == R.unit_subring()
    assert len({R.unit_subring(), Subring(R, frozenset({"1"}))}) == 1
