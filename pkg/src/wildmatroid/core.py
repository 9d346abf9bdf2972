"""Finite matroids stored as explicit base families.

Subsets of the ground set are represented internally as bitmasks over the
ground order; every family that leaves this module is sorted, so outputs are
deterministic.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Hashable, Iterable, Sequence

from . import kernels

DEFAULT_MAX_GROUND = 20


class MatroidError(ValueError):
    """Base class for precondition failures; ``witness`` carries the evidence."""

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


class GroundTooLarge(MatroidError):
    pass


class NotInGround(MatroidError):
    pass


class EmptyBaseFamily(MatroidError):
    pass


class UnequalBaseSizes(MatroidError):
    pass


class ExchangeFailure(MatroidError):
    pass


def max_ground() -> int:
    raw = os.environ.get("MATROID_MAX_GROUND")
    return int(raw) if raw else DEFAULT_MAX_GROUND


def _check_size(n: int, bound: int | None = None) -> None:
    bound = max_ground() if bound is None else bound
    if n > bound:
        raise GroundTooLarge(f"ground set has {n} elements, bound is {bound}", witness=n)


def popcount(m: int) -> int:
    return m.bit_count()


def bits(m: int) -> list[int]:
    out = []
    i = 0
    while m:
        if m & 1:
            out.append(i)
        m >>= 1
        i += 1
    return out


@dataclass(frozen=True)
class SetFamily:
    """A canonically sorted family of subsets of an ordered ground set."""

    ground: tuple
    members: tuple[frozenset, ...]

    @classmethod
    def from_masks(cls, ground: Sequence, masks: Iterable[int]) -> "SetFamily":
        ground = tuple(ground)
        ordered = sorted(set(masks), key=lambda m: bits(m))
        return cls(ground, tuple(frozenset(ground[i] for i in bits(m)) for m in ordered))

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __contains__(self, item) -> bool:
        return frozenset(item) in set(self.members)

    def as_sets(self) -> set[frozenset]:
        return set(self.members)

    def as_lists(self) -> list[list]:
        index = {e: i for i, e in enumerate(self.ground)}
        return [sorted(m, key=index.__getitem__) for m in self.members]


@dataclass(frozen=True)
class AxiomVerdict:
    ok: bool
    axiom: str | None = None
    witness: tuple = ()
    note: str = "(IM) holds vacuously on a finite ground set"

    def __bool__(self) -> bool:
        return self.ok


@dataclass(frozen=True, eq=False)
class FiniteMatroid:
    ground: tuple
    base_masks: frozenset = field(repr=False)

    def __post_init__(self):
        if len(set(self.ground)) != len(self.ground):
            raise MatroidError("ground labels must be pairwise distinct")

    # -- construction -----------------------------------------------------
    @classmethod
    def from_bases(cls, ground: Iterable[Hashable], bases: Iterable[Iterable[Hashable]],
                   check: bool = True) -> "FiniteMatroid":
        ground = tuple(ground)
        index = {e: i for i, e in enumerate(ground)}
        masks = set()
        for b in bases:
            m = 0
            for e in b:
                if e not in index:
                    raise NotInGround(f"base element {e!r} not in ground set", witness=e)
                m |= 1 << index[e]
            masks.add(m)
        if check:
            _validate_bases(ground, masks)
        return cls(ground, frozenset(masks))

    @classmethod
    def uniform(cls, r: int, n: int, labels: Sequence | None = None) -> "FiniteMatroid":
        ground = tuple(labels) if labels is not None else tuple("abcdefghijklmnopqrst"[:n])
        if len(ground) != n:
            raise ValueError("need exactly n labels")
        masks = frozenset(sum(1 << i for i in c) for c in combinations(range(n), r))
        return cls(ground, masks)

    @classmethod
    def free(cls, labels: Sequence) -> "FiniteMatroid":
        ground = tuple(labels)
        return cls(ground, frozenset({(1 << len(ground)) - 1}))

    # -- basic accessors --------------------------------------------------
    @property
    def size(self) -> int:
        return len(self.ground)

    @cached_property
    def _index(self) -> dict:
        return {e: i for i, e in enumerate(self.ground)}

    @property
    def full_mask(self) -> int:
        return (1 << len(self.ground)) - 1

    @cached_property
    def rank(self) -> int:
        return popcount(next(iter(self.base_masks)))

    def mask(self, subset: Iterable[Hashable]) -> int:
        m = 0
        for e in subset:
            try:
                m |= 1 << self._index[e]
            except KeyError:
                raise NotInGround(f"{e!r} is not in the ground set", witness=e) from None
        return m

    def labels(self, m: int) -> frozenset:
        return frozenset(self.ground[i] for i in bits(m))

    @property
    def bases(self) -> SetFamily:
        return SetFamily.from_masks(self.ground, self.base_masks)

    @cached_property
    def table(self) -> bytearray:
        _check_size(self.size)
        return kernels.down_closure(self.size, self.base_masks)

    def is_independent(self, subset: Iterable[Hashable]) -> bool:
        return self.is_independent_mask(self.mask(subset))

    def is_independent_mask(self, m: int) -> bool:
        if self.size <= max_ground():
            return bool(self.table[m])
        return any(m & b == m for b in self.base_masks)

    def rank_of_mask(self, m: int) -> int:
        return max(popcount(m & b) for b in self.base_masks)

    def independent_masks(self) -> list[int]:
        t = self.table
        return [m for m in range(len(t)) if t[m]]

    # -- derived families -------------------------------------------------
    @cached_property
    def circuit_masks(self) -> tuple[int, ...]:
        return tuple(kernels.minimal_absent(self.size, self.table))

    def circuits(self) -> SetFamily:
        return SetFamily.from_masks(self.ground, self.circuit_masks)

    def cocircuits(self) -> SetFamily:
        return self.dual().circuits()

    def dual(self) -> "FiniteMatroid":
        full = self.full_mask
        return FiniteMatroid(self.ground, frozenset(full ^ b for b in self.base_masks))

    def delete(self, x: Iterable[Hashable]) -> "FiniteMatroid":
        xm = self.mask(x)
        keep = [i for i in range(self.size) if not xm >> i & 1]
        r = max(popcount(b & ~xm) for b in self.base_masks)
        masks = {b & ~xm for b in self.base_masks if popcount(b & ~xm) == r}
        return FiniteMatroid(tuple(self.ground[i] for i in keep), frozenset(_compress(masks, keep)))

    def contract(self, x: Iterable[Hashable]) -> "FiniteMatroid":
        xm = self.mask(x)
        keep = [i for i in range(self.size) if not xm >> i & 1]
        r = self.rank_of_mask(xm)
        masks = {b & ~xm for b in self.base_masks if popcount(b & xm) == r}
        return FiniteMatroid(tuple(self.ground[i] for i in keep), frozenset(_compress(masks, keep)))

    def restrict_to(self, x: Iterable[Hashable]) -> "FiniteMatroid":
        xs = set(x)
        return self.delete([e for e in self.ground if e not in xs])

    def relabel_order(self, ground: Sequence) -> "FiniteMatroid":
        """Same matroid with the ground set listed in ``ground`` order."""
        if set(ground) != set(self.ground) or len(ground) != self.size:
            raise MatroidError("relabel_order needs a permutation of the ground set")
        return FiniteMatroid.from_bases(ground, self.bases, check=False)

    # -- equality ---------------------------------------------------------
    def __eq__(self, other) -> bool:
        if not isinstance(other, FiniteMatroid):
            return NotImplemented
        return self.ground == other.ground and self.base_masks == other.base_masks

    def __hash__(self) -> int:
        return hash((self.ground, self.base_masks))

    def same_matroid(self, other: "FiniteMatroid") -> bool:
        """Equality up to the listing order of the ground set."""
        if set(self.ground) != set(other.ground):
            return False
        return self.bases.as_sets() == other.bases.as_sets()

    def __repr__(self) -> str:
        return f"FiniteMatroid(ground={list(self.ground)!r}, rank={self.rank}, bases={len(self.base_masks)})"


def _compress(masks: Iterable[int], keep: list[int]) -> list[int]:
    out = []
    for m in masks:
        c = 0
        for j, i in enumerate(keep):
            if m >> i & 1:
                c |= 1 << j
        out.append(c)
    return out


def _validate_bases(ground: tuple, masks: set[int]) -> None:
    if not masks:
        raise EmptyBaseFamily("the base family is empty")
    sizes = {popcount(m) for m in masks}
    if len(sizes) > 1:
        ordered = sorted(masks, key=lambda m: (popcount(m), bits(m)))
        small, big = ordered[0], ordered[-1]
        raise UnequalBaseSizes(
            "bases have unequal cardinalities",
            witness=(_labels(ground, small), _labels(ground, big)),
        )
    for b1 in masks:
        for b2 in masks:
            diff = b1 & ~b2
            for i in bits(diff):
                x = 1 << i
                if not any(((b1 ^ x) | (1 << j)) in masks for j in bits(b2 & ~b1)):
                    raise ExchangeFailure(
                        "base exchange fails",
                        witness=(_labels(ground, b1), _labels(ground, b2), ground[i]),
                    )


def _labels(ground: tuple, m: int) -> frozenset:
    return frozenset(ground[i] for i in bits(m))


def from_bases(ground, bases) -> FiniteMatroid:
    return FiniteMatroid.from_bases(ground, bases)


def verify_axioms(ground: Iterable[Hashable], indep: Iterable[Iterable[Hashable]],
                  bound: int | None = None) -> AxiomVerdict:
    """Check (I1)-(I3) for an explicit family of independent sets.

    (I3) is the maximal-set form: whenever I is not maximal and I' is maximal,
    some x in I' - I has I + x independent.
    """
    ground = tuple(ground)
    _check_size(len(ground), bound)
    index = {e: i for i, e in enumerate(ground)}
    fam = set()
    for s in indep:
        m = 0
        for e in s:
            if e not in index:
                raise NotInGround(f"{e!r} is not in the ground set", witness=e)
            m |= 1 << index[e]
        fam.add(m)

    def lab(m):
        return _labels(ground, m)

    if 0 not in fam:
        return AxiomVerdict(False, "I1", ())
    for m in sorted(fam, key=bits):
        for i in bits(m):
            if m ^ (1 << i) not in fam:
                return AxiomVerdict(False, "I2", (lab(m), lab(m ^ (1 << i))))
    n = len(ground)
    maximal = [m for m in fam if not any(m | (1 << i) in fam for i in range(n) if not m >> i & 1)]
    maxset = set(maximal)
    for i_m in sorted(fam, key=lambda m: (popcount(m), bits(m))):
        if i_m in maxset:
            continue
        for j_m in sorted(maximal, key=lambda m: (popcount(m), bits(m))):
            if not any((i_m | (1 << x)) in fam for x in bits(j_m & ~i_m)):
                return AxiomVerdict(False, "I3", (lab(i_m), lab(j_m)))
    return AxiomVerdict(True)


def is_independent(m: FiniteMatroid, subset) -> bool:
    return m.is_independent(subset)


def circuits(m: FiniteMatroid) -> SetFamily:
    return m.circuits()


def cocircuits(m: FiniteMatroid) -> SetFamily:
    return m.cocircuits()


def dual(m: FiniteMatroid) -> FiniteMatroid:
    return m.dual()


def delete(m: FiniteMatroid, x) -> FiniteMatroid:
    return m.delete(x)


def contract(m: FiniteMatroid, x) -> FiniteMatroid:
    return m.contract(x)


@dataclass(frozen=True)
class IntersectionWitness:
    size: int
    circuit: frozenset | None
    cocircuit: frozenset | None


def max_circuit_cocircuit_intersection(m: FiniteMatroid) -> IntersectionWitness:
    _check_size(m.size)
    cs = list(m.circuit_masks)
    ds = list(m.dual().circuit_masks)
    if not cs or not ds:
        return IntersectionWitness(0, None, None)
    cs.sort(key=bits)
    ds.sort(key=bits)
    k, i, j = kernels.max_common(cs, ds)
    return IntersectionWitness(k, m.labels(cs[i]), m.labels(ds[j]))
