"""Thin sums: dependences with infinitely many nonzero coefficients.

A family lambda is a thin dependence of (f_e) when at every point a only
finitely many products lambda_e f_e(a) are nonzero and they sum to zero.

Orientation conventions for the incidence functions f_e = chi_t - chi_s: on
RAYED_G, p_i and q_i point from cell i to cell i + 1 and r_i points from a_i
to b_i.  Vertices are ``(label, cell)`` and the extra vertex is ``("*", None)``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations

from .core import FiniteMatroid, _check_size
from .fields import QQ, Field, nullspace, rank
from .graphs import FiniteGraph, finite_cycle_matroid
from .periodic import RAYED_G, EdgeSet, RayedGraphFamily, edge_sort_key, format_edge

STAR = ("*", None)


class ThinSumsError(ValueError):
    pass


class IndexMismatch(ThinSumsError):
    pass


class NotADependence(ThinSumsError):
    pass


class SupportShapeError(ThinSumsError):
    pass


class ZeroCoefficient(ThinSumsError, ZeroDivisionError):
    pass


# ---------------------------------------------------------------------------
# coefficients


@dataclass(frozen=True)
class PeriodicValue:
    """Value of lambda on (slot, i) for i >= onset and i = residue mod period."""

    slot: str
    residue: int
    onset: int
    value: object


@dataclass(frozen=True)
class ThinCoefficients:
    explicit: dict = field(default_factory=dict)
    periodic: tuple = ()
    period: int = 1
    field: Field = QQ

    def __post_init__(self):
        for pv in self.periodic:
            if not 0 <= pv.residue < self.period:
                raise ThinSumsError(f"residue {pv.residue} out of range for period {self.period}")
        keys = [(pv.slot, pv.residue) for pv in self.periodic]
        if len(set(keys)) != len(keys):
            raise ThinSumsError("two periodic entries share a slot and residue")

    @classmethod
    def finite(cls, values: dict, field: Field = QQ) -> "ThinCoefficients":
        return cls({e: field(v) for e, v in values.items()}, (), 1, field)

    def __getitem__(self, e):
        if e in self.explicit:
            return self.explicit[e]
        if not isinstance(e, str):
            slot, i = e
            for pv in self.periodic:
                if pv.slot == slot and i >= pv.onset and i % self.period == pv.residue:
                    return pv.value
        return self.field.zero

    @property
    def is_finite(self) -> bool:
        return not any(pv.value for pv in self.periodic)

    @property
    def horizon(self) -> int:
        """First cell past every explicit entry and every periodic onset."""
        cells = [e[1] + 1 for e in self.explicit if not isinstance(e, str)]
        cells += [pv.onset for pv in self.periodic]
        return max(cells, default=0)

    def finite_support(self) -> list:
        if not self.is_finite:
            raise ThinSumsError("support is infinite")
        return sorted((e for e, v in self.explicit.items() if v), key=edge_sort_key)

    def support(self, family: RayedGraphFamily) -> EdgeSet:
        """The set of edges with nonzero coefficient, as an eventually periodic set."""
        onset = max(self.horizon, family.start)
        exc = [e for e in family.prefix_edge_names if self[e]]
        exc += [(s, i) for i in range(family.start, onset) for s in family.slot_names if self[(s, i)]]
        pat = frozenset((s, r) for s in family.slot_names for r in range(self.period)
                        if self[(s, onset + (r - onset) % self.period)])
        return EdgeSet(family, frozenset(exc), onset, self.period, pat).canonical()

    def is_zero(self) -> bool:
        return not any(self.explicit.values()) and self.is_finite

    def scaled(self, c) -> "ThinCoefficients":
        c = self.field(c)
        return ThinCoefficients(
            {e: v * c for e, v in self.explicit.items()},
            tuple(PeriodicValue(pv.slot, pv.residue, pv.onset, pv.value * c) for pv in self.periodic),
            self.period,
            self.field,
        )


# ---------------------------------------------------------------------------
# function families


@dataclass(frozen=True)
class ThinVerdict:
    status: str  # "ok" | "ill-defined-at" | "nonzero-at"
    at: object = None
    value: object = None

    @property
    def ok(self) -> bool:
        return self.status == "ok"

    def __bool__(self) -> bool:
        return self.ok


class FiniteThinFamily:
    """Finitely many functions on a finite domain, stored sparsely."""

    def __init__(self, domain, values: dict, field: Field = QQ):
        self.domain = tuple(domain)
        self.field = field
        self.index = tuple(values)
        dom = set(self.domain)
        self.values = {}
        for e, col in values.items():
            for a in col:
                if a not in dom:
                    raise ThinSumsError(f"f_{e} is defined at {a!r}, outside the domain")
            self.values[e] = {a: field(v) for a, v in col.items() if field(v)}

    def value(self, e, a):
        return self.values[e].get(a, self.field.zero)

    def column(self, e) -> list:
        return [self.value(e, a) for a in self.domain]

    def check(self, lam: ThinCoefficients) -> ThinVerdict:
        index = set(self.index)
        stray = [e for e in lam.explicit if e not in index and lam.explicit[e]]
        if stray or not lam.is_finite:
            raise IndexMismatch("coefficients name edges outside the family")
        acc: dict = {}
        for e, c in lam.explicit.items():
            if not c:
                continue
            for a, v in self.values[e].items():
                acc[a] = acc.get(a, self.field.zero) + c * v
        bad = [a for a, v in acc.items() if v]
        if bad:
            order = {a: j for j, a in enumerate(self.domain)}
            a = min(bad, key=order.__getitem__)
            return ThinVerdict("nonzero-at", a, acc[a])
        return ThinVerdict("ok")


def graph_family(graph: FiniteGraph, field: Field = QQ) -> FiniteThinFamily:
    """f^G: each edge maps to chi_target - chi_source (so a loop gives 0)."""
    values = {}
    for eid, s, t in graph.edges:
        col: dict = {}
        if s != t:
            col[t] = field.one
            col[s] = -field.one
        values[eid] = col
    return FiniteThinFamily(graph.vertices, values, field)


class RayedThinFamily:
    """Incidence functions on RAYED_G, optionally with r_i shifted by w_i * chi_*.

    With ``rung_weights`` this is the family whose thin sums matroid is M+ for
    M the algebraic cycle matroid; then f_l = chi_* as well.  The weights must
    be nonzero and pairwise distinct: a zero weight would make the double ray
    through that rung a thin dependence on its own.  The default is w_i = i
    for i >= 1 and w_0 = -1; ``unshifted_r0`` sets w_0 = 0 instead.  Without
    ``rung_weights``, f is plain f^G and the loop l has the zero function.
    """

    def __init__(self, rung_weights: bool = True, field: Field = QQ, family: RayedGraphFamily = RAYED_G,
                 unshifted_r0: bool = False):
        if family is not RAYED_G:
            raise ThinSumsError("only RAYED_G is supported")
        self.family = family
        self.rung_weights = rung_weights
        self.field = field
        self.unshifted_r0 = unshifted_r0

    def weight(self, i: int):
        if not self.rung_weights:
            return self.field.zero
        if i == 0 and not self.unshifted_r0:
            return -self.field.one
        return self.field(i)

    def function(self, e) -> dict:
        one = self.field.one
        if e == "l":
            return {STAR: one} if self.rung_weights else {}
        if not self.family.is_edge(e):
            raise IndexMismatch(f"{e!r} is not an edge of {self.family.name}")
        s, t = self.family.ends(e)
        out = {t: one, s: -one}
        if e[0] == "r" and self.weight(e[1]):
            out[STAR] = self.weight(e[1])
        return out

    def value(self, e, a):
        return self.function(e).get(a, self.field.zero)

    def incident(self, v) -> list:
        """Edges whose function is nonzero at a cell vertex."""
        label, c = v
        out = []
        for i in (c - 1, c):
            if i < self.family.start:
                continue
            for s in self.family.slot_names:
                if v in self.family.ends((s, i)):
                    out.append((s, i))
        return out

    def _validate(self, lam: ThinCoefficients) -> None:
        fam = self.family
        for e in lam.explicit:
            if not fam.is_edge(e):
                raise IndexMismatch(f"{e!r} is not an edge of {fam.name}")
        for pv in lam.periodic:
            if pv.slot not in fam.slot_names:
                raise IndexMismatch(f"{pv.slot!r} is not a slot of {fam.name}")

    def vertex_table(self, lam: ThinCoefficients) -> tuple[dict, dict, int]:
        """Sums and support degrees at the cell vertices up to the last decisive cell.

        Past the horizon every cell vertex sees the same coefficients one
        period apart, so cells up to horizon + period + 1 decide all of them.
        """
        self._validate(lam)
        fam = self.family
        zero = self.field.zero
        last = lam.horizon + lam.period + 1
        sums: dict = {}
        degree: dict = {}
        entries = {e: x for e, x in lam.explicit.items() if not isinstance(e, str)}
        for pv in lam.periodic:
            first = max(pv.onset, fam.start)
            first += (pv.residue - first) % lam.period
            for i in range(first, last + 1, lam.period):
                entries.setdefault((pv.slot, i), pv.value)
        for e, x in entries.items():
            if x and e[1] <= last:
                src, dst = fam.ends(e)
                if src == dst:
                    continue
                if src[1] <= last:
                    sums[src] = sums.get(src, zero) - x
                    degree[src] = degree.get(src, 0) + 1
                if dst[1] <= last:
                    sums[dst] = sums.get(dst, zero) + x
                    degree[dst] = degree.get(dst, 0) + 1
        order = {lab: j for j, lab in enumerate(fam.cell_labels)}
        key = lambda v: (v[1], order[v[0]])  # noqa: E731
        sums = {v: sums[v] for v in sorted(sums, key=key)}
        return sums, degree, last

    def check(self, lam: ThinCoefficients) -> ThinVerdict:
        return self._verdict(lam, self.vertex_table(lam)[0])

    def _verdict(self, lam: ThinCoefficients, sums: dict) -> ThinVerdict:
        # the sum at * must exist before any value can be compared with zero
        if self.rung_weights and any(pv.slot == "r" and pv.value for pv in lam.periodic):
            return ThinVerdict("ill-defined-at", STAR)
        for v, total in sums.items():
            if total:
                return ThinVerdict("nonzero-at", v, total)
        if self.rung_weights:
            total = lam["l"]
            for e, c in lam.explicit.items():
                if not isinstance(e, str) and e[0] == "r":
                    total = total + c * self.weight(e[1])
            if total:
                return ThinVerdict("nonzero-at", STAR, total)
        return ThinVerdict("ok")


def is_thin_dependence(lam: ThinCoefficients, f) -> ThinVerdict:
    return f.check(lam)


# ---------------------------------------------------------------------------
# finite thin sums matroids


def thinly_independent(subset, f: FiniteThinFamily, bound: int | None = None) -> bool:
    subset = list(subset)
    _check_size(len(f.index), bound)
    if not subset:
        return True
    cols = [f.column(e) for e in subset]
    return rank(cols, f.field) == len(subset)


def thin_sums_matroid_finite(f: FiniteThinFamily, bound: int | None = None) -> FiniteMatroid:
    _check_size(len(f.index), bound)
    cols = {e: f.column(e) for e in f.index}
    r = rank(list(cols.values()), f.field) if cols else 0
    bases = [list(c) for c in combinations(f.index, r)
             if rank([cols[e] for e in c], f.field) == r] if r else [[]]
    return FiniteMatroid.from_bases(f.index, bases, check=False)


def check_thm53_finite(graph: FiniteGraph, field: Field = QQ) -> bool:
    """The thin sums matroid of f^G equals the cycle matroid of a finite graph."""
    return thin_sums_matroid_finite(graph_family(graph, field)).same_matroid(finite_cycle_matroid(graph))


# ---------------------------------------------------------------------------
# dependences for circuits of M+ over RAYED_G


def build_lambda_f_oneray(n: int, f: RayedThinFamily | None = None) -> ThinCoefficients:
    """Support: l, r_n and all p_i, q_i with i >= n.

    lambda_{r_n} = 1 and lambda_l = -w_n.  Under the fixed orientations the
    p-chain carries -1 and the q-chain +1.
    """
    f = f or RayedThinFamily()
    if n < 0:
        raise ThinSumsError("n must be nonnegative")
    fld = f.field
    one = fld.one
    explicit = {("r", n): one}
    if f.weight(n):
        explicit["l"] = -f.weight(n)
    periodic = (PeriodicValue("p", 0, n, -one), PeriodicValue("q", 0, n, one))
    return ThinCoefficients(explicit, periodic, 1, fld)


def build_lambda_f_threerung(l: int, m: int, n: int, f: RayedThinFamily | None = None) -> ThinCoefficients:
    """Support: r_l, r_m, r_n and p_i, q_i for l <= i < m or i >= n.

    The vertex equations force lambda_{r_l} = -lambda_{r_m}, the block
    between them to carry -+lambda_{r_l}, and the tail to carry
    -+lambda_{r_n}.  The equation at * is then
    (w_m - w_l) lambda_{r_m} + w_n lambda_{r_n} = 0, solved with
    lambda_{r_m} = w_n and lambda_{r_n} = w_l - w_m.
    """
    f = f or RayedThinFamily()
    if not 0 <= l < m < n:
        raise ThinSumsError("need 0 <= l < m < n")
    fld = f.field
    rm, rn = f.weight(n), f.weight(l) - f.weight(m)
    rl = -rm
    explicit = {("r", l): rl, ("r", m): rm, ("r", n): rn}
    for i in range(l, m):
        explicit[("p", i)] = -rl
        explicit[("q", i)] = rl
    periodic = (PeriodicValue("p", 0, n, -rn), PeriodicValue("q", 0, n, rn))
    return ThinCoefficients(explicit, periodic, 1, fld)


def oneray_circuit(n: int) -> EdgeSet:
    return EdgeSet.tail(RAYED_G, ["p", "q"], start=n).add("l", ("r", n))


def threerung_circuit(l: int, m: int, n: int) -> EdgeSet:
    block = [(s, i) for i in range(l, m) for s in ("p", "q")]
    return EdgeSet.tail(RAYED_G, ["p", "q"], start=n).add(("r", l), ("r", m), ("r", n), *block)


def support_degree_check(lam: ThinCoefficients, f: RayedThinFamily) -> bool:
    """Every vertex other than * meets the support in 0 or at least 2 edges."""
    sums, degree, _ = f.vertex_table(lam)
    if not f._verdict(lam, sums):
        raise NotADependence("coefficients are not a thin dependence")
    return all(d != 1 for d in degree.values())


def solve_thin_dependence(support: EdgeSet, f: RayedThinFamily, seed: int = 0) -> ThinCoefficients | None:
    """A thin dependence of ``f`` nonzero exactly on ``support``, or None.

    The support's tail must be a union of whole slot classes (period 1).  Along
    a tail class the vertex equations force a constant value, so the unknowns
    are the coefficients below the onset plus one value per tail slot; the
    equations are those at the cell vertices up to the onset and at *.
    """
    s = support.canonical()
    if s.period != 1:
        raise ThinSumsError("only period-1 tails are supported")
    fam = f.family
    fld = f.field
    tail = sorted(sl for sl, _ in s.pattern)
    if "r" in tail and f.rung_weights:
        return None
    finite = s.members_in_cells(fam.start, s.onset)
    unknowns = finite + [("tail", sl) for sl in tail]
    pos = {u: j for j, u in enumerate(unknowns)}

    def var(e):
        if e in pos:
            return pos[e]
        if not isinstance(e, str) and e[1] >= s.onset and e[0] in tail:
            return pos[("tail", e[0])]
        return None

    rows = []
    for c in range(fam.start, s.onset + 2):
        for v in fam.cell_vertices(c):
            row = [fld.zero] * len(unknowns)
            for e in f.incident(v):
                j = var(e)
                if j is not None:
                    row[j] = row[j] + f.value(e, v)
            rows.append(row)
    if f.rung_weights:
        row = [fld.zero] * len(unknowns)
        for e in finite:
            row[pos[e]] = row[pos[e]] + f.value(e, STAR)
        rows.append(row)
    basis = nullspace(rows, len(unknowns), fld)
    if not basis:
        return None
    rng = random.Random(seed)
    for _ in range(64):
        coeffs = [fld(rng.randint(1, 97)) for _ in basis]
        vec = [sum((c * b[j] for c, b in zip(coeffs, basis)), fld.zero) for j in range(len(unknowns))]
        if all(vec):
            explicit = {e: vec[pos[e]] for e in finite}
            periodic = tuple(PeriodicValue(sl, 0, s.onset, vec[pos[("tail", sl)]]) for sl in tail)
            lam = ThinCoefficients(explicit, periodic, 1, fld)
            if f.check(lam) and lam.support(fam).same_as(s):
                return lam
    return None


# ---------------------------------------------------------------------------
# the mu/nu recurrence along a chain of skew cuts


def _chain(chain: str) -> str:
    if chain not in ("p", "q"):
        raise ThinSumsError("chain must be 'p' or 'q'")
    return chain


def _coeff(lam: ThinCoefficients, e, what: str):
    v = lam[e]
    if not v:
        raise ZeroCoefficient(f"{what}: coefficient of {format_edge(e)} is zero")
    return v


def mu_nu_recurrence(lam0: ThinCoefficients, lams: list, f=None, chain: str = "q"):
    """(nu, mu, lambda') from dependences along the chain of skew cuts.

    ``lam0`` is supported on r_0 and c_0, and ``lams[i-1]`` on c_{i-1}, r_i
    and c_i, where c is the chosen chain.  nu_0 = 1,
    nu_i = -(lam^i_{c_i} / lam^i_{c_{i-1}}) nu_{i-1}, and
    mu_i = -(lam^i_{r_i} / lam^i_{c_i}) nu_i.  lambda' is mu_i on r_i (i <= k).
    """
    c = _chain(chain)
    fams = [lam0] + list(lams)
    for i, lam in enumerate(fams):
        allowed = {("r", i), (c, i)} | ({(c, i - 1)} if i else set())
        if not lam.is_finite or any(e not in allowed for e in lam.finite_support()):
            raise SupportShapeError(f"dependence {i} is not supported on {sorted(allowed)}")
        if f is not None and not f.check(lam):
            raise NotADependence(f"dependence {i} is not a thin dependence of f")
    fld = lam0.field
    nu = [fld.one]
    mu = [-_coeff(lam0, ("r", 0), "lambda^0") / _coeff(lam0, (c, 0), "lambda^0") * nu[0]]
    for i, lam in enumerate(lams, start=1):
        ratio = _coeff(lam, (c, i), f"lambda^{i}") / _coeff(lam, (c, i - 1), f"lambda^{i}")
        nu.append(-ratio * nu[i - 1])
        if not lam[("r", i)]:
            raise SupportShapeError(f"dependence {i} vanishes at r_{i}")
        mu.append(-(lam[("r", i)] / lam[(c, i)]) * nu[i])
    lam_prime = ThinCoefficients({("r", i): m for i, m in enumerate(mu)}, (), 1, fld)
    return nu, mu, lam_prime


def verify_telescoping(nu, mu, f, k: int, sample, chain: str = "q") -> bool:
    """nu_i f_{c_i}(a) = sum_{j <= i} mu_j f_{r_j}(a) for i <= k and a in sample."""
    c = _chain(chain)
    fld = f.field
    sample = set(sample)
    running: dict = {}
    for i in range(k + 1):
        for a, v in _function(f, ("r", i)).items():
            x = running.get(a, fld.zero) + mu[i] * v
            if x:
                running[a] = x
            else:
                running.pop(a, None)
        lhs = {a: nu[i] * v for a, v in _function(f, (c, i)).items()}
        for a in (set(running) | set(lhs)) & sample:
            if lhs.get(a, fld.zero) != running.get(a, fld.zero):
                return False
    return True


def _function(f, e) -> dict:
    if isinstance(f, FiniteThinFamily):
        return f.values.get(e, {})
    return f.function(e)


def lambda_prime_zero_sum(mu, f, sample) -> list:
    """Vertices of ``sample`` where sum_i mu_i f_{r_i}(a) is fully determined and nonzero.

    A vertex counts as determined when no r-edge beyond the computed range
    has a nonzero value there (for a finite family: no such edge in its index).
    """
    fld = f.field
    k = len(mu) - 1
    index = f.index if isinstance(f, FiniteThinFamily) else ()
    beyond = {a for e in index if not isinstance(e, str) and e[0] == "r" and e[1] > k
              for a in _function(f, e)}
    totals: dict = {}
    for i in range(k + 1):
        for a, v in _function(f, ("r", i)).items():
            totals[a] = totals.get(a, fld.zero) + mu[i] * v
    return [a for a in sample if a not in beyond and totals.get(a, fld.zero)]


# ---------------------------------------------------------------------------
# chain families for exercising the recurrence


@dataclass(frozen=True)
class ChainFamily:
    lam0: ThinCoefficients
    lams: tuple
    f: FiniteThinFamily
    chain: str
    sample: tuple


def _chain_domain(k: int) -> tuple:
    return tuple((lab, i) for i in range(k + 2) for lab in ("a", "b")) + (STAR,)


def canonical_chain_family(k: int, chain: str = "q", field: Field = QQ) -> ChainFamily:
    """lambda^0 = r_0 - c_0, lambda^i = c_{i-1} + r_i - c_i.

    A matching family: f_{c_i} = chi_{x_i} and f_{r_i} = chi_{x_i} - chi_{x_{i-1}},
    where x runs along the chain's side (a for p, b for q).
    """
    c = _chain(chain)
    side = "a" if c == "p" else "b"
    one = field.one
    values = {}
    for i in range(k + 2):
        values[(c, i)] = {(side, i): one}
        col = {(side, i): one}
        if i:
            col[(side, i - 1)] = -one
        values[("r", i)] = col
    f = FiniteThinFamily(_chain_domain(k), values, field)
    lam0 = ThinCoefficients.finite({("r", 0): 1, (c, 0): -1}, field)
    lams = tuple(ThinCoefficients.finite({(c, i - 1): 1, ("r", i): 1, (c, i): -1}, field)
                 for i in range(1, k + 1))
    return ChainFamily(lam0, lams, f, c, f.domain)


@lru_cache(maxsize=None)
def _nonzero_pool(field: Field) -> tuple:
    """Distinct nonzero values num/den with |num|, den <= 9."""
    out = []
    for num in range(-9, 10):
        for den in range(1, 10):
            n, d = field(num), field(den)
            if n and d and (v := n / d) not in out:
                out.append(v)
    return tuple(out)


def random_chain_family(k: int, seed: int, chain: str = "q", field: Field = QQ) -> ChainFamily:
    """Random f_{c_i} = s_i chi_{x_i}, f_{r_i} = t_i chi_{x_i} + w_i chi_{x_{i-1}},
    with random nonzero scalings of the unique dependences among them."""
    c = _chain(chain)
    side = "a" if c == "p" else "b"
    rng = random.Random(seed)

    pool = _nonzero_pool(field)

    def nonzero():
        return rng.choice(pool)

    s = [nonzero() for _ in range(k + 2)]
    t = [nonzero() for _ in range(k + 2)]
    w = [nonzero() for _ in range(k + 2)]
    values = {}
    for i in range(k + 2):
        values[(c, i)] = {(side, i): s[i]}
        col = {(side, i): t[i]}
        if i:
            col[(side, i - 1)] = w[i]
        values[("r", i)] = col
    f = FiniteThinFamily(_chain_domain(k), values, field)
    rho = nonzero()
    lam0 = ThinCoefficients({("r", 0): rho, (c, 0): -rho * t[0] / s[0]}, (), 1, field)
    lams = []
    for i in range(1, k + 1):
        rho = nonzero()
        lams.append(ThinCoefficients({(c, i - 1): -rho * w[i] / s[i - 1], ("r", i): rho,
                                      (c, i): -rho * t[i] / s[i]}, (), 1, field))
    return ChainFamily(lam0, tuple(lams), f, c, f.domain)


def run_chain(fam: ChainFamily, k: int | None = None) -> dict:
    """Recurrence, telescoping and the zero sum of lambda' on a chain family."""
    k = len(fam.lams) if k is None else k
    nu, mu, lam_prime = mu_nu_recurrence(fam.lam0, fam.lams[:k], fam.f, fam.chain)
    return {
        "nu": nu,
        "mu": mu,
        "lambda_prime": lam_prime,
        "telescoping": verify_telescoping(nu, mu, fam.f, k, fam.sample, fam.chain),
        "zero_sum_failures": lambda_prime_zero_sum(mu, fam.f, fam.sample),
        "r0_nonzero": bool(lam_prime[("r", 0)]),
    }
