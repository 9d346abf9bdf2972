from itertools import combinations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from wildmatroid.core import FiniteMatroid, GroundTooLarge
from wildmatroid.graphs import FiniteGraph, finite_cycle_matroid
from wildmatroid.ops import (
    EmptyBaseViolation,
    GroundIsBaseViolation,
    NotACircuit,
    union_of_circuits_is_plus_dependent,
    circuits_of_minus,
    circuits_of_plus_by_definition,
    circuits_of_plus_via_lemma33,
    finitarization,
    circuit_extension_matches_contraction,
    minus,
    plus,
    wildness_criterion,
    uniform_rank_one,
    union,
    wild_scan,
)

from conftest import CORPUS, SMALL

U = FiniteMatroid.uniform
FREE = FiniteMatroid.free("ab")


def plus_defined(m):
    return m.full_mask not in m.base_masks


def minus_defined(m):
    return 0 not in m.base_masks


def sets(*xs):
    return {frozenset(x) for x in xs}


# -- M+ and M- ------------------------------------------------------------------


def test_minus_examples():
    assert minus(U(2, 4)) == U(1, 4)
    assert minus(U(1, 2)).bases.as_sets() == {frozenset()}
    with pytest.raises(EmptyBaseViolation):
        minus(minus(U(1, 2)))


def test_plus_examples():
    assert plus(U(2, 4)) == U(3, 4)
    assert plus(U(1, 2)) == FREE
    with pytest.raises(GroundIsBaseViolation, match="E is a base"):
        plus(FREE)


def test_circuits_of_minus_examples():
    assert circuits_of_minus(U(2, 4)).as_sets() == {frozenset(c) for c in combinations("abcd", 2)}
    assert circuits_of_minus(U(1, 3)).as_sets() == sets("a", "b", "c")
    coloop_and_loop = FiniteMatroid.from_bases("ac", [{"a"}])
    assert circuits_of_minus(coloop_and_loop).as_sets() == sets("a", "c")


def test_circuits_of_plus_examples():
    assert circuits_of_plus_via_lemma33(U(1, 3)).as_sets() == sets("abc")
    assert circuits_of_plus_via_lemma33(U(2, 4)).as_sets() == sets("abcd")
    square = finite_cycle_matroid(FiniteGraph.from_pairs([(0, 1), (1, 2), (2, 3), (3, 0)]))
    assert circuits_of_plus_via_lemma33(square).as_sets() == plus(square).circuits().as_sets()


def test_union_of_two_circuits_is_dependent_in_plus():
    assert union_of_circuits_is_plus_dependent(U(1, 3), "ab", "bc")
    assert union_of_circuits_is_plus_dependent(U(1, 4), "ab", "cd")
    assert union_of_circuits_is_plus_dependent(U(2, 4), "abc", "abd")
    with pytest.raises(NotACircuit):
        union_of_circuits_is_plus_dependent(U(1, 3), "a", "bc")
    with pytest.raises(NotACircuit):
        union_of_circuits_is_plus_dependent(U(1, 3), "ab", "ab")


def test_union_examples():
    assert union(U(1, 3), U(1, 3)) == U(2, 3)
    assert union(U(2, 4), uniform_rank_one(U(2, 4))) == plus(U(2, 4))
    assert union(FREE, U(1, 2)) == FREE


def test_union_of_different_grounds_is_taken_by_label():
    a = FiniteMatroid.uniform(1, 2, labels="ab")
    b = FiniteMatroid.uniform(1, 2, labels="bc")
    assert union(a, b).same_matroid(FiniteMatroid.from_bases("abc", [{"a", "b"}, {"a", "c"}, {"b", "c"}]))


def test_union_respects_the_size_bound(monkeypatch):
    monkeypatch.setenv("MATROID_MAX_GROUND", "3")
    with pytest.raises(GroundTooLarge):
        union(U(1, 2), U(1, 2, labels="cd"))


def test_finitarization_is_identity():
    for m in (U(2, 4), U(1, 2), FREE):
        assert finitarization(m) == m


def test_wildness_criterion_never_fires_on_finite_matroids():
    v = wildness_criterion(U(2, 4))
    assert v.at_least_two_circuits and not v.infinite_circuit_minus_base
    assert not wildness_criterion(U(1, 2)).at_least_two_circuits
    assert not wildness_criterion(FREE).at_least_two_circuits
    assert not any(wildness_criterion(m).wild_by_criterion for _, m in CORPUS)


# -- corpus-wide identities -------------------------------------------------------


def test_circuits_of_plus_from_contractions_match_brute_force():
    for name, m in CORPUS:
        if plus_defined(m):
            assert circuits_of_plus_via_lemma33(m).as_sets() == plus(m).circuits().as_sets(), name


def test_circuits_of_plus_need_two_removals():
    for name, m in SMALL:
        if plus_defined(m):
            assert circuits_of_plus_by_definition(m).as_sets() == plus(m).circuits().as_sets(), name


def test_circuits_of_minus_match_brute_force():
    for name, m in CORPUS:
        if minus_defined(m):
            assert circuits_of_minus(m).as_sets() == minus(m).circuits().as_sets(), name


def test_no_circuit_of_m_is_a_circuit_of_plus():
    for name, m in SMALL:
        if plus_defined(m):
            assert not m.circuits().as_sets() & plus(m).circuits().as_sets(), name


def test_plus_and_minus_are_swapped_by_duality():
    for name, m in CORPUS:
        if plus_defined(m):
            assert plus(m).dual() == minus(m.dual()), name


def test_plus_is_union_with_rank_one_uniform():
    for name, m in CORPUS:
        if plus_defined(m):
            assert union(m, uniform_rank_one(m)) == plus(m), name


def test_wild_scan_is_finite_and_orthogonal():
    for name, m in CORPUS:
        scan = wild_scan(m)
        assert not scan.infinite and scan.tame
        assert scan.max_intersection != 1, name


# -- property tests -------------------------------------------------------------

with_circuits = [m for _, m in SMALL if m.circuit_masks and plus_defined(m)]


@given(st.sampled_from(with_circuits), st.data())
def test_extending_a_circuit_matches_independence_in_the_contraction(m, data):
    o = data.draw(st.sampled_from(m.circuits().as_lists()))
    rest = [e for e in m.ground if e not in o]
    extra = data.draw(st.sets(st.sampled_from(rest))) if rest else set()
    assert circuit_extension_matches_contraction(m, o, extra)


@given(st.sampled_from(with_circuits), st.data())
def test_two_distinct_circuits_are_dependent_in_plus(m, data):
    cs = m.circuits().as_lists()
    if len(cs) < 2:
        return
    a, b = data.draw(st.lists(st.sampled_from(cs), min_size=2, max_size=2, unique_by=tuple))
    assert union_of_circuits_is_plus_dependent(m, a, b)


@given(st.sampled_from([m for _, m in SMALL]), st.sampled_from([m for _, m in SMALL if m.size <= 4]))
def test_union_is_independence_of_unions(m1, m2):
    m2 = m2.relabel_order(m2.ground)
    u = union(m1, m2)
    pairs = {frozenset(m1.labels(a)) | frozenset(m2.labels(b))
             for a in m1.independent_masks() for b in m2.independent_masks()}
    assert {u.labels(x) for x in u.independent_masks()} == pairs
