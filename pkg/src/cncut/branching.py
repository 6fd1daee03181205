"""Bounded search tree solver for the k + x parameterization.

Works through an auxiliary target first: delete at most k vertices so that at
most x *edges* remain. Every solution of the pair problem is such an edge
cover (a surviving component of size s has at most s*(s-1)/2 edges and exactly
s*(s-1) pairs), so the minimal edge covers are a complete set of starting
points; each is then extended over the small residual by brute force.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .graph import Cut, Graph, InputError, remove_vertices, verify_solution


@dataclass
class BranchStats:
    nodes_visited: int = 0
    minimal_solutions_found: int = 0
    extensions_tested: int = 0


@dataclass(frozen=True)
class BranchDecision:
    answer: bool
    cut: Cut | None
    stats: BranchStats


def _smallest_edge(adj: dict[int, set[int]]) -> tuple[int, int] | None:
    # First vertex (ascending) with a neighbor; every neighbor is larger, since
    # smaller vertices were scanned first and found edgeless.
    for u in sorted(adj):
        if adj[u]:
            return (u, min(adj[u]))
    return None


def enumerate_minimal_covers(
    g: Graph, k: int, x: int
) -> tuple[list[frozenset[int]], BranchStats]:
    """All inclusion-minimal sets of <= k vertices whose removal leaves <= x edges.

    Branches on the lexicographically smallest remaining edge {u, v}: delete u,
    delete v, or let the edge survive and charge it to x. The search tree has at
    most 3^(x+k) nodes, counted in stats.nodes_visited.
    """
    if k < 0 or x < 0:
        raise InputError(f"parameters must be nonnegative, got k={k}, x={x}")
    stats = BranchStats()
    found: set[frozenset[int]] = set()

    def recurse(adj: dict[int, set[int]], chosen: frozenset[int], k_rem: int, x_rem: int) -> None:
        stats.nodes_visited += 1
        edge = _smallest_edge(adj)
        if edge is None:
            found.add(chosen)
            return
        if k_rem == 0 and x_rem == 0:
            return
        u, v = edge
        if k_rem > 0:
            for pick in (u, v):
                sub = {w: s - {pick} for w, s in adj.items() if w != pick}
                recurse(sub, chosen | {pick}, k_rem - 1, x_rem)
        if x_rem > 0:
            sub = {w: set(s) for w, s in adj.items()}
            sub[u].discard(v)
            sub[v].discard(u)
            recurse(sub, chosen, k_rem, x_rem - 1)

    adj0 = {v: set(g.adjacency[v]) for v in range(g.n)}
    recurse(adj0, frozenset(), k, x)

    minimal = _inclusion_minimal(found)
    stats.minimal_solutions_found = len(minimal)
    return minimal, stats


def _inclusion_minimal(sets: set[frozenset[int]]) -> list[frozenset[int]]:
    ordered = sorted(sets, key=lambda s: (len(s), sorted(s)))
    kept: list[frozenset[int]] = []
    for cand in ordered:
        if not any(prev <= cand for prev in kept):
            kept.append(cand)
    return kept


def extend_minimal_cover(
    g: Graph,
    c_prime: frozenset[int],
    k: int,
    x: int,
    stats: BranchStats | None = None,
) -> Cut | None:
    """Grow an edge cover into a full solution, or report that it cannot be.

    The graph left by c_prime has at most x edges; dropping its isolated
    vertices leaves at most 2x candidates. Those are searched by increasing
    subset size, lexicographically within a size, so the first hit is the
    smallest extension.
    """
    if len(c_prime) > k:
        raise InputError(f"cover of size {len(c_prime)} exceeds budget {k}")
    k2 = k - len(c_prime)
    residual, remap = remove_vertices(g, c_prime)
    live = sorted(remap[v] for v in range(residual.n) if residual.adjacency[v])

    if k2 > len(live):
        cut_set = frozenset(c_prime | set(live))
        report = verify_solution(g, cut_set, k, x)
        if stats is not None:
            stats.extensions_tested += 1
        return Cut(cut_set, report.residual_pairs) if report.ok else None

    for size in range(k2 + 1):
        for extra in combinations(live, size):
            cut_set = frozenset(c_prime | set(extra))
            report = verify_solution(g, cut_set, k, x)
            if stats is not None:
                stats.extensions_tested += 1
            if report.ok:
                return Cut(cut_set, report.residual_pairs)
    return None


def solve_branch_kx(g: Graph, k: int, x: int) -> BranchDecision:
    """YES/NO plus a certificate cut for: delete <= k vertices, <= x pairs remain."""
    covers, stats = enumerate_minimal_covers(g, k, x)
    for cover in covers:
        cut = extend_minimal_cover(g, cover, k, x, stats)
        if cut is not None:
            return BranchDecision(True, cut, stats)
    return BranchDecision(False, None, stats)
