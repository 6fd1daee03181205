"""Brute-force subset enumeration, the ground truth every solver is checked against.

Subsets are visited by increasing cardinality, lexicographically within a
cardinality, so the first optimum found is the canonical witness.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb

from .graph import Cut, Graph, InputError, Refusal

DEFAULT_CAP = 20_000_000


class CapExceeded(Refusal):
    """The enumeration would visit more candidate sets than the configured cap."""

    def __init__(self, candidates: int, cap: int, n: int, k: int):
        self.candidates = candidates
        self.cap = cap
        self.n = n
        self.k = k
        super().__init__(
            f"refusing brute force: {candidates} candidate sets for n={n}, k={k} "
            f"exceeds cap {cap}"
        )


@dataclass(frozen=True)
class OracleResult:
    min_residual_pairs: int
    best_cut: Cut
    explored: int


@dataclass(frozen=True)
class MaxRemovedResult:
    max_removed: int
    best_cut: Cut
    explored: int


def _pairs_of_alive(masks: tuple[int, ...], alive: int, bound: int | None = None) -> int:
    # Component sweep over a vertex bitmask; each component of size s adds s*(s-1).
    # With a bound, gives up once the running total provably exceeds it and
    # returns some value > bound; the result is exact whenever it is <= bound.
    total = 0
    remaining = alive
    while remaining:
        comp = remaining & -remaining
        frontier = comp
        while frontier:
            nxt = 0
            f = frontier
            while f:
                low = f & -f
                f ^= low
                nxt |= masks[low.bit_length() - 1]
            nxt &= alive & ~comp
            comp |= nxt
            frontier = nxt
            if bound is not None:
                s = comp.bit_count()
                partial = total + s * (s - 1)
                if partial > bound:
                    return partial
        s = comp.bit_count()
        total += s * (s - 1)
        remaining &= ~comp
    return total


def _candidate_count(n: int, k_max: int) -> int:
    return sum(comb(n, i) for i in range(k_max + 1))


def oracle_min_pairs(g: Graph, k: int, cap: int = DEFAULT_CAP) -> OracleResult:
    """Minimum connected pairs left after deleting at most k vertices."""
    if k < 0:
        raise InputError(f"budget must be nonnegative, got {k}")
    kk = min(k, g.n)
    candidates = _candidate_count(g.n, kk)
    if candidates > cap:
        raise CapExceeded(candidates, cap, g.n, k)

    masks = g.adjacency_masks
    full = (1 << g.n) - 1
    best = _pairs_of_alive(masks, full)
    best_set: tuple[int, ...] = ()
    explored = 1
    for size in range(1, kk + 1):
        if best == 0:
            break
        for subset in combinations(range(g.n), size):
            explored += 1
            removed = 0
            for v in subset:
                removed |= 1 << v
            # Only strict improvements matter, so anything >= best may be cut short.
            pairs = _pairs_of_alive(masks, full & ~removed, best - 1)
            if pairs < best:
                best = pairs
                best_set = subset
                if best == 0:
                    break
    return OracleResult(best, Cut(frozenset(best_set), best), explored)


def oracle_decides(g: Graph, k: int, x: int, cap: int = DEFAULT_CAP) -> bool:
    """Decision form: can deleting at most k vertices leave at most x pairs?

    Same enumeration order as oracle_min_pairs but stops at the first witness.
    """
    if k < 0:
        raise InputError(f"budget must be nonnegative, got {k}")
    if x < 0:
        return False
    kk = min(k, g.n)
    candidates = _candidate_count(g.n, kk)
    if candidates > cap:
        raise CapExceeded(candidates, cap, g.n, k)

    masks = g.adjacency_masks
    full = (1 << g.n) - 1
    if _pairs_of_alive(masks, full, x) <= x:
        return True
    for size in range(1, kk + 1):
        for subset in combinations(range(g.n), size):
            removed = 0
            for v in subset:
                removed |= 1 << v
            if _pairs_of_alive(masks, full & ~removed, x) <= x:
                return True
    return False


def oracle_max_removed_exact(g: Graph, k: int, cap: int = DEFAULT_CAP) -> MaxRemovedResult:
    """Maximum pairs removable by deleting exactly k vertices."""
    if not (0 <= k <= g.n):
        raise InputError(f"exact budget {k} out of range for n={g.n}")
    candidates = comb(g.n, k)
    if candidates > cap:
        raise CapExceeded(candidates, cap, g.n, k)

    masks = g.adjacency_masks
    full = (1 << g.n) - 1
    base = _pairs_of_alive(masks, full)
    best_set: tuple[int, ...] = ()
    best_residual: int | None = None
    explored = 0
    for subset in combinations(range(g.n), k):
        explored += 1
        removed = 0
        for v in subset:
            removed |= 1 << v
        if best_residual is None:
            best_residual = _pairs_of_alive(masks, full & ~removed)
            best_set = subset
            continue
        # Maximizing the gain is minimizing the residual; ties keep the first witness.
        residual = _pairs_of_alive(masks, full & ~removed, best_residual - 1)
        if residual < best_residual:
            best_residual = residual
            best_set = subset
    if best_residual is None:
        best_residual = base
    return MaxRemovedResult(base - best_residual, Cut(frozenset(best_set), best_residual), explored)
