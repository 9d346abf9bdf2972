"""A small, reproducible collection of finite matroids for exhaustive checks.

Uniform matroids U_{r,n} with n <= 6, cycle matroids of connected
multigraphs with at most 5 edges, their duals, and every single-element
deletion and contraction of those.  Duplicates (same ground, same bases) are
dropped; the order is deterministic.
"""

from __future__ import annotations

from .core import FiniteMatroid
from .graphs import connected_multigraphs, finite_cycle_matroid


def base_matroids(max_uniform: int = 6, max_edges: int = 5) -> list[tuple[str, FiniteMatroid]]:
    out = []
    for n in range(max_uniform + 1):
        for r in range(n + 1):
            out.append((f"U{r},{n}", FiniteMatroid.uniform(r, n)))
    for k, g in enumerate(connected_multigraphs(max_edges)):
        out.append((f"graph{k}", finite_cycle_matroid(g)))
    return out


def corpus(max_uniform: int = 6, max_edges: int = 5) -> list[tuple[str, FiniteMatroid]]:
    seen = set()
    out = []

    def keep(name: str, m: FiniteMatroid) -> None:
        if m not in seen:
            seen.add(m)
            out.append((name, m))

    for name, m in base_matroids(max_uniform, max_edges):
        keep(name, m)
        keep(f"{name}*", m.dual())
        for x in m.ground:
            keep(f"{name}\\{x}", m.delete([x]))
            keep(f"{name}/{x}", m.contract([x]))
    return out
