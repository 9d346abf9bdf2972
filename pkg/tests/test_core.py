from itertools import combinations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from wildmatroid.core import (
    EmptyBaseFamily,
    ExchangeFailure,
    FiniteMatroid,
    GroundTooLarge,
    MatroidError,
    NotInGround,
    UnequalBaseSizes,
    max_circuit_cocircuit_intersection,
    verify_axioms,
)

from conftest import CORPUS, SMALL

U = FiniteMatroid.uniform


def subsets(ground, r):
    return {frozenset(c) for c in combinations(ground, r)}


def down_closure(ground, sets):
    return [set(s) for b in sets for r in range(len(b) + 1) for s in combinations(b, r)]


def brute_circuits(m):
    """Minimal dependent sets straight from the definition."""
    dep = [frozenset(s) for r in range(m.size + 1) for s in combinations(m.ground, r) if not m.is_independent(s)]
    return {d for d in dep if not any(o < d for o in dep)}


# -- axiom verification -------------------------------------------------------


def test_rank_one_axioms_hold():
    v = verify_axioms("ab", [set(), {"a"}, {"b"}])
    assert v.ok and "vacuous" in v.note


def test_missing_empty_set_violates_I1():
    v = verify_axioms("a", [{"a"}])
    assert not v.ok and v.axiom == "I1"


def test_not_subset_closed_violates_I2():
    v = verify_axioms("ab", [set(), {"a", "b"}])
    assert not v.ok and v.axiom == "I2"
    big, small = v.witness
    assert small < big


def test_unequal_maximal_sets_violate_I3_with_a_real_witness():
    fam = down_closure("abc", [{"a"}, {"b", "c"}])
    v = verify_axioms("abc", fam)
    assert not v.ok and v.axiom == "I3"
    i, j = v.witness
    famset = {frozenset(s) for s in fam}
    maximal = {s for s in famset if not any(s < t for t in famset)}
    assert i in famset and j in maximal and i not in maximal
    assert not any(i | {x} in famset for x in j - i)


def test_verify_axioms_rejects_unknown_elements_and_oversized_grounds(monkeypatch):
    with pytest.raises(NotInGround):
        verify_axioms("ab", [set(), {"z"}])
    monkeypatch.setenv("MATROID_MAX_GROUND", "3")
    with pytest.raises(GroundTooLarge):
        verify_axioms("abcd", [set()])


def test_every_corpus_matroid_satisfies_the_axioms():
    for name, m in CORPUS:
        v = verify_axioms(m.ground, [m.labels(x) for x in m.independent_masks()])
        assert v.ok, name


# -- construction ---------------------------------------------------------------


def test_from_bases_builds_uniform_matroids():
    assert FiniteMatroid.from_bases("abcd", subsets("abcd", 2)) == U(2, 4)
    assert FiniteMatroid.from_bases("ab", [{"a"}, {"b"}]) == U(1, 2)


@pytest.mark.parametrize(
    "bases, error",
    [
        ([{"a"}, {"b", "c"}], UnequalBaseSizes),
        ([], EmptyBaseFamily),
        ([{"a", "b"}, {"c", "d"}], ExchangeFailure),
        ([{"x"}], NotInGround),
    ],
)
def test_from_bases_rejects_bad_families(bases, error):
    ground = "abcd" if error is ExchangeFailure else "abc"
    with pytest.raises(error):
        FiniteMatroid.from_bases(ground, bases)


def test_rejected_families_carry_witnesses():
    with pytest.raises(MatroidError) as info:
        FiniteMatroid.from_bases("abc", [{"a"}, {"b", "c"}])
    assert info.value.witness is not None


def test_independence():
    m = U(2, 4)
    assert m.is_independent({"a"})
    assert not m.is_independent({"a", "b", "c"})
    assert U(1, 2).is_independent(set())


# -- circuits, duality, minors ------------------------------------------------


def test_circuits_of_small_uniform_and_free_matroids():
    assert U(2, 4).circuits().as_sets() == subsets("abcd", 3)
    assert U(1, 3).circuits().as_sets() == subsets("abc", 2)
    assert FiniteMatroid.free("abc").circuits().as_sets() == set()


def test_cocircuits():
    assert U(2, 4).cocircuits().as_sets() == subsets("abcd", 3)
    assert U(1, 3).cocircuits().as_sets() == {frozenset("abc")}
    assert FiniteMatroid.free("abc").cocircuits().as_sets() == subsets("abc", 1)


def test_duals():
    assert U(1, 3).dual() == U(2, 3)
    assert FiniteMatroid.free("ab").dual().bases.as_sets() == {frozenset()}
    assert U(2, 4).dual() == U(2, 4)


def test_minors_of_U24():
    assert U(2, 4).contract({"a"}).same_matroid(U(1, 3, labels="bcd"))
    assert U(2, 4).delete({"a"}).same_matroid(U(2, 3, labels="bcd"))
    assert U(2, 4).contract(set()) == U(2, 4)


def test_contraction_is_dual_of_deletion_in_dual():
    for name, m in SMALL:
        for x in m.ground:
            assert m.contract([x]) == m.dual().delete([x]).dual(), name


def test_circuits_match_definition_on_corpus():
    for name, m in SMALL:
        assert m.circuits().as_sets() == brute_circuits(m), name


def test_circuits_are_an_antichain():
    for name, m in SMALL:
        cs = m.circuits().as_sets()
        assert not any(a < b for a in cs for b in cs), name


def test_max_intersection_examples():
    assert max_circuit_cocircuit_intersection(U(2, 4)).size == 3
    w = max_circuit_cocircuit_intersection(U(1, 2))
    assert w.size == 2 and w.circuit == w.cocircuit == frozenset("ab")
    w = max_circuit_cocircuit_intersection(FiniteMatroid.free("abc"))
    assert w.size == 0 and w.circuit is None


def test_orthogonality_on_corpus():
    for name, m in CORPUS:
        if m.size > 8:
            continue
        for c in m.circuits().as_sets():
            for d in m.cocircuits().as_sets():
                assert len(c & d) != 1, name


def test_ground_bound_is_enforced(monkeypatch):
    monkeypatch.setenv("MATROID_MAX_GROUND", "4")
    with pytest.raises(GroundTooLarge):
        U(2, 5).circuits()


corpus_matroids = st.sampled_from([m for _, m in SMALL])


@given(corpus_matroids)
def test_dual_is_an_involution(m):
    assert m.dual().dual() == m


@given(corpus_matroids, st.data())
def test_deletion_and_contraction_commute(m, data):
    x = data.draw(st.sets(st.sampled_from(m.ground), max_size=2)) if m.size else set()
    rest = [e for e in m.ground if e not in x]
    y = data.draw(st.sets(st.sampled_from(rest), max_size=2)) if rest else set()
    assert m.contract(x).delete(y).same_matroid(m.delete(y).contract(x))


@given(corpus_matroids, st.data())
def test_base_exchange(m, data):
    bases = m.bases.as_sets()
    b1 = data.draw(st.sampled_from(sorted(bases, key=sorted)))
    b2 = data.draw(st.sampled_from(sorted(bases, key=sorted)))
    for x in b1 - b2:
        assert any((b1 - {x}) | {y} in bases for y in b2 - b1)
