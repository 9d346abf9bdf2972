from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from wildmatroid.core import FiniteMatroid, verify_axioms
from wildmatroid.fields import GF, QQ
from wildmatroid.graphs import FiniteGraph, connected_multigraphs, finite_cycle_matroid
from wildmatroid.periodic import RAYED_G, EdgeSet
from wildmatroid.thinsums import (
    STAR,
    FiniteThinFamily,
    IndexMismatch,
    NotADependence,
    PeriodicValue,
    RayedThinFamily,
    SupportShapeError,
    ThinCoefficients,
    ZeroCoefficient,
    build_lambda_f_oneray,
    build_lambda_f_threerung,
    canonical_chain_family,
    check_thm53_finite,
    graph_family,
    is_thin_dependence,
    lambda_prime_zero_sum,
    mu_nu_recurrence,
    oneray_circuit,
    random_chain_family,
    run_chain,
    solve_thin_dependence,
    support_degree_check,
    thin_sums_matroid_finite,
    thinly_independent,
    threerung_circuit,
    verify_telescoping,
)

F = RayedThinFamily()
TRIANGLE = FiniteGraph.from_pairs([(0, 1), (1, 2), (2, 0)])
PARALLEL = FiniteGraph.from_pairs([(0, 1), (0, 1)])


# -- checker ----------------------------------------------------------------------


def test_zero_family_is_a_dependence():
    assert is_thin_dependence(ThinCoefficients(), F).ok


def test_all_rungs_is_ill_defined_at_star():
    lam = ThinCoefficients({}, (PeriodicValue("r", 0, 0, QQ(1)),))
    v = is_thin_dependence(lam, F)
    assert v.status == "ill-defined-at" and v.at == STAR


def test_a_lone_edge_is_nonzero_somewhere():
    v = is_thin_dependence(ThinCoefficients.finite({("p", 0): 1}), F)
    assert v.status == "nonzero-at"
    with pytest.raises(NotADependence):
        support_degree_check(ThinCoefficients.finite({("p", 0): 1}), F)


def test_unknown_edges_are_rejected():
    with pytest.raises(IndexMismatch):
        is_thin_dependence(ThinCoefficients.finite({("z", 0): 1}), F)


# -- finite families ------------------------------------------------------------


def test_thin_independence_on_a_triangle():
    f = graph_family(TRIANGLE)
    assert thinly_independent([], f)
    assert not thinly_independent(["e0", "e1", "e2"], f)
    assert thinly_independent(["e0", "e1"], f)


def test_thin_sums_matroids_of_small_graphs():
    assert thin_sums_matroid_finite(graph_family(TRIANGLE)).same_matroid(FiniteMatroid.uniform(2, 3, labels=["e0", "e1", "e2"]))
    assert thin_sums_matroid_finite(graph_family(PARALLEL)).same_matroid(FiniteMatroid.uniform(1, 2, labels=["e0", "e1"]))
    zero = FiniteThinFamily(["x"], {"a": {}, "b": {}})
    assert thin_sums_matroid_finite(zero).bases.as_sets() == {frozenset()}


def test_graph_family_matches_cycle_matroid_on_small_graphs():
    assert check_thm53_finite(TRIANGLE)
    assert check_thm53_finite(FiniteGraph(("v",), (("e0", "v", "v"),)))
    for g in connected_multigraphs(5):
        m = thin_sums_matroid_finite(graph_family(g))
        assert verify_axioms(m.ground, [m.labels(x) for x in m.independent_masks()]).ok
        assert m.same_matroid(finite_cycle_matroid(g))
        assert check_thm53_finite(g, GF(2))


# -- dependences for circuits of M+ ---------------------------------------------


def test_one_ray_dependence_values():
    lam = build_lambda_f_oneray(3)
    assert lam["l"] == -3 and lam[("r", 3)] == 1
    assert lam[("q", 7)] == 1 and lam[("p", 7)] == -1
    assert lam[("p", 2)] == 0
    assert is_thin_dependence(lam, F) and support_degree_check(lam, F)


def test_one_ray_dependence_at_the_first_rung_keeps_the_loop():
    lam = build_lambda_f_oneray(0)
    assert lam[("r", 0)] == 1 and lam["l"] == 1
    assert lam.support(RAYED_G).same_as(oneray_circuit(0))


def test_unshifted_first_rung_weight_makes_a_double_ray_dependent():
    f = RayedThinFamily(unshifted_r0=True)
    lam = build_lambda_f_oneray(0, f)
    assert is_thin_dependence(lam, f)
    assert lam["l"] == 0
    double_ray = EdgeSet.tail(RAYED_G, ["p", "q"]).add(("r", 0))
    assert lam.support(RAYED_G).same_as(double_ray)


def test_three_rung_dependence_values():
    lam = build_lambda_f_threerung(1, 2, 4)
    assert abs(lam[("r", 2)]) == 4 and abs(lam[("r", 4)]) == 1
    assert is_thin_dependence(lam, F) and support_degree_check(lam, F)
    lam = build_lambda_f_threerung(0, 1, 2)
    assert is_thin_dependence(lam, F) and not lam.is_zero()
    with pytest.raises(Exception):
        build_lambda_f_threerung(1, 1, 3)


@pytest.mark.parametrize("n", range(0, 12))
def test_dependences_have_exactly_the_circuit_as_support(n):
    lam = build_lambda_f_oneray(n)
    assert lam.support(RAYED_G).same_as(oneray_circuit(n))
    for l in range(n):
        for m in range(l + 1, n):
            lam = build_lambda_f_threerung(l, m, n)
            assert is_thin_dependence(lam, F)
            assert lam.support(RAYED_G).same_as(threerung_circuit(l, m, n))


def test_dependences_over_a_prime_field():
    f = RayedThinFamily(field=GF(5))
    assert is_thin_dependence(build_lambda_f_oneray(4, f), f)
    assert is_thin_dependence(build_lambda_f_threerung(1, 3, 6, f), f)


def test_solver_finds_dependences_for_other_circuit_shapes():
    square = EdgeSet.finite(RAYED_G, [("r", 0), ("q", 0), ("r", 1), ("p", 0)])
    assert solve_thin_dependence(square, F) is None
    lam = solve_thin_dependence(square.add("l"), F)
    assert lam is not None and is_thin_dependence(lam, F)
    two_squares = square | EdgeSet.finite(RAYED_G, [("r", 3), ("q", 3), ("r", 4), ("p", 3)])
    lam = solve_thin_dependence(two_squares, F)
    assert lam is not None and lam.support(RAYED_G).same_as(two_squares)
    theta = EdgeSet.finite(RAYED_G, [("r", 0), ("r", 1), ("r", 2), ("p", 0), ("p", 1), ("q", 0), ("q", 1)])
    assert solve_thin_dependence(theta, F) is not None
    cycle_and_ray = square | oneray_circuit(3).remove("l")
    assert solve_thin_dependence(cycle_and_ray, F) is not None


# -- the recurrence ---------------------------------------------------------------


def test_recurrence_on_the_canonical_p_chain():
    fam = canonical_chain_family(100, chain="p")
    nu, mu, lam_prime = mu_nu_recurrence(fam.lam0, fam.lams, fam.f, "p")
    assert all(x == 1 for x in nu) and all(x == 1 for x in mu)
    assert verify_telescoping(nu, mu, fam.f, 100, fam.sample, "p")
    assert lam_prime[("r", 0)] != 0


def test_recurrence_uses_ratios_only():
    fam = canonical_chain_family(10)
    lams = list(fam.lams)
    lams[1] = lams[1].scaled(7)
    assert mu_nu_recurrence(fam.lam0, lams, fam.f)[:2] == mu_nu_recurrence(fam.lam0, fam.lams, fam.f)[:2]


def test_recurrence_rejects_a_zero_chain_coefficient():
    fam = canonical_chain_family(3, chain="p")
    lams = list(fam.lams)
    lams[0] = ThinCoefficients.finite({("p", 0): 1, ("r", 1): 1, ("p", 1): 0})
    with pytest.raises(ZeroDivisionError):
        mu_nu_recurrence(fam.lam0, lams, chain="p")
    with pytest.raises(ZeroCoefficient):
        mu_nu_recurrence(fam.lam0, lams, chain="p")


def test_recurrence_rejects_bad_supports():
    fam = canonical_chain_family(3)
    lams = list(fam.lams)
    lams[2] = ThinCoefficients.finite({("q", 0): 1, ("r", 3): 1, ("q", 3): -1})
    with pytest.raises(SupportShapeError):
        mu_nu_recurrence(fam.lam0, lams)


def test_perturbed_mu_breaks_telescoping():
    fam = canonical_chain_family(100)
    nu, mu, _ = mu_nu_recurrence(fam.lam0, fam.lams, fam.f)
    mu = list(mu)
    mu[5] += 1
    assert not verify_telescoping(nu, mu, fam.f, 100, fam.sample)


def test_telescoping_at_k_zero_is_the_first_rearrangement():
    fam = canonical_chain_family(0, chain="p")
    nu, mu, _ = mu_nu_recurrence(fam.lam0, [], fam.f, "p")
    assert verify_telescoping(nu, mu, fam.f, 0, fam.sample, "p")
    for a in fam.sample:
        assert nu[0] * fam.f.value(("p", 0), a) == mu[0] * fam.f.value(("r", 0), a)


@given(st.integers(0, 10_000), st.sampled_from(["p", "q"]), st.sampled_from([QQ, GF(3), GF(2)]))
def test_random_chains_telescope(seed, chain, field):
    res = run_chain(random_chain_family(30, seed, chain, field))
    assert res["telescoping"] and not res["zero_sum_failures"] and res["r0_nonzero"]


def test_zero_sum_flags_vertices_with_a_nonzero_total():
    fam = canonical_chain_family(5)
    _, mu, _ = mu_nu_recurrence(fam.lam0, fam.lams, fam.f)
    assert lambda_prime_zero_sum(mu, fam.f, fam.sample) == []
    assert lambda_prime_zero_sum([Fraction(1), Fraction(2)] + [Fraction(1)] * 4, fam.f, fam.sample) == [("b", 0), ("b", 1)]
