"""The M+ / M- operators, matroid union and the circuit descriptions around them."""

from __future__ import annotations

from dataclasses import dataclass

from . import kernels
from .core import (
    FiniteMatroid,
    IntersectionWitness,
    MatroidError,
    SetFamily,
    _check_size,
    bits,
    max_circuit_cocircuit_intersection,
    popcount,
)


class EmptyBaseViolation(MatroidError):
    """M- is undefined: the empty set is a base."""


class GroundIsBaseViolation(MatroidError):
    """M+ is undefined: the whole ground set is a base."""


class NotACircuit(MatroidError):
    pass


def minus(m: FiniteMatroid) -> FiniteMatroid:
    if 0 in m.base_masks:
        raise EmptyBaseViolation("M- needs a matroid in which the empty set is not a base")
    masks = {b ^ (1 << i) for b in m.base_masks for i in bits(b)}
    return FiniteMatroid(m.ground, frozenset(masks))


def plus(m: FiniteMatroid) -> FiniteMatroid:
    full = m.full_mask
    if full in m.base_masks:
        raise GroundIsBaseViolation("M+ needs a matroid whose ground set E is not a base; E is a base")
    masks = {b | (1 << i) for b in m.base_masks for i in bits(full & ~b)}
    return FiniteMatroid(m.ground, frozenset(masks))


def circuits_of_minus(m: FiniteMatroid) -> SetFamily:
    """Bases of M together with the M-circuits that include no M-base."""
    if 0 in m.base_masks:
        raise EmptyBaseViolation("M- needs a matroid in which the empty set is not a base")
    bases = m.base_masks
    keep = [c for c in m.circuit_masks if not any(b & c == b for b in bases)]
    return SetFamily.from_masks(m.ground, list(bases) + keep)


def circuits_of_plus_via_lemma33(m: FiniteMatroid) -> SetFamily:
    """All O1 | O2 with O1 a circuit of M and O2 a circuit of M/O1."""
    if m.full_mask in m.base_masks:
        raise GroundIsBaseViolation("M+ needs a matroid whose ground set E is not a base; E is a base")
    out = set()
    for o1 in m.circuit_masks:
        minor = m.contract(m.labels(o1))
        for o2 in minor.circuit_masks:
            out.add(o1 | m.mask(minor.labels(o2)))
    return SetFamily.from_masks(m.ground, out)


def union_of_circuits_is_plus_dependent(m: FiniteMatroid, o1, o2) -> bool:
    """Whether the union of two distinct circuits is dependent in M+."""
    a, b = m.mask(o1), m.mask(o2)
    cs = set(m.circuit_masks)
    if a not in cs or b not in cs:
        raise NotACircuit("both sets must be circuits of M", witness=(o1, o2))
    if a == b:
        raise NotACircuit("the two circuits must be distinct", witness=(o1, o2))
    return not plus(m).is_independent_mask(a | b)


def union(m1: FiniteMatroid, m2: FiniteMatroid) -> FiniteMatroid:
    """Matroid on E1 | E2 whose independent sets are the unions I1 | I2.

    Every such union lies inside some B1 | B2, so the independent sets are the
    down-closure of the pairwise base unions.
    """
    ground = list(m1.ground) + [e for e in m2.ground if e not in set(m1.ground)]
    _check_size(len(ground))
    index = {e: i for i, e in enumerate(ground)}

    def lift(m: FiniteMatroid) -> list[int]:
        pos = [index[e] for e in m.ground]
        out = []
        for b in m.base_masks:
            c = 0
            for j in bits(b):
                c |= 1 << pos[j]
            out.append(c)
        return out

    n = len(ground)
    table = kernels.down_closure(n, kernels.pairwise_or(lift(m1), lift(m2)))
    return FiniteMatroid(tuple(ground), frozenset(kernels.maximal_present(n, table)))


def uniform_rank_one(m: FiniteMatroid) -> FiniteMatroid:
    """U_{1,E(M)}: bases are the singletons of E(M)."""
    return FiniteMatroid(m.ground, frozenset(1 << i for i in range(m.size)))


def finitarization(m: FiniteMatroid) -> FiniteMatroid:
    """Every circuit of a finite matroid is finite, so this is the identity."""
    return m


@dataclass(frozen=True)
class WildnessCriterion:
    at_least_two_circuits: bool
    infinite_circuit_minus_base: bool
    note: str

    @property
    def wild_by_criterion(self) -> bool:
        return self.at_least_two_circuits and self.infinite_circuit_minus_base


def wildness_criterion(m: FiniteMatroid) -> WildnessCriterion:
    """M+ is wild when M has two circuits and some circuit O and base B with O - B infinite.

    The second condition can never hold on a finite ground set.
    """
    return WildnessCriterion(
        at_least_two_circuits=len(m.circuit_masks) >= 2,
        infinite_circuit_minus_base=False,
        note="O - B is finite for every circuit O and base B of a finite matroid",
    )


def circuit_extension_matches_contraction(m: FiniteMatroid, circuit, extra) -> bool:
    """O | I is M+-independent exactly when I is M/O-independent."""
    o = m.mask(circuit)
    i = m.mask(extra)
    lhs = plus(m).is_independent_mask(o | i)
    minor = m.contract(m.labels(o))
    rhs = minor.is_independent(m.labels(i))
    return lhs == rhs


def needs_two_removals(m: FiniteMatroid, s: int) -> bool:
    """At least two elements must be removed from ``s`` before it is M-independent."""
    return m.rank_of_mask(s) <= popcount(s) - 2


def circuits_of_plus_by_definition(m: FiniteMatroid) -> SetFamily:
    """Minimal sets that need two removals to become M-independent."""
    _check_size(m.size)
    hits = [s for s in range(1 << m.size) if needs_two_removals(m, s)]
    hitset = set(hits)
    minimal = [s for s in hits if not any((s ^ (1 << i)) in hitset for i in bits(s))]
    return SetFamily.from_masks(m.ground, minimal)


@dataclass(frozen=True)
class WildScan:
    max_intersection: int
    witness: IntersectionWitness
    infinite: bool = False

    @property
    def tame(self) -> bool:
        return not self.infinite


def wild_scan(m: FiniteMatroid) -> WildScan:
    w = max_circuit_cocircuit_intersection(m)
    return WildScan(w.size, w)
