"""Minimum set cover over bitset-encoded candidate sets."""

from __future__ import annotations

import math
from dataclasses import dataclass

NODE_CAP = 200_000


@dataclass(frozen=True)
class CoverResult:
    lo: int
    hi: int
    exact: bool

    @property
    def mode(self) -> str:
        return "exact" if self.exact else "greedy"


def _popcount(x: int) -> int:
    return x.bit_count()


def _bits(x: int):
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


def reduce_sets(sets, universe: int) -> list[int]:
    """Drop duplicates, empty sets and sets contained in another one."""
    uniq = sorted({s & universe for s in sets if s & universe}, key=_popcount, reverse=True)
    kept: list[int] = []
    for s in uniq:
        if not any(s & t == s for t in kept):
            kept.append(s)
    return kept


def greedy_set_cover(sets, universe: int) -> list[int]:
    """Chvatal's greedy rule; returns the chosen sets."""
    uncovered = universe
    chosen = []
    pool = [s for s in sets if s & universe]
    while uncovered:
        best = max(pool, key=lambda s: _popcount(s & uncovered), default=0)
        if not best & uncovered:
            raise ValueError("candidate sets do not cover the universe")
        chosen.append(best)
        uncovered &= ~best
    return chosen


def lower_bound(sets, universe: int, greedy_size: int) -> int:
    n = _popcount(universe)
    if n == 0:
        return 0
    biggest = max(_popcount(s & universe) for s in sets)
    return max(1, math.ceil(n / biggest), math.ceil(greedy_size / (1 + math.log(n))))


def exact_set_cover(sets, universe: int, node_cap: int = NODE_CAP) -> CoverResult:
    """Branch and bound on the uncovered element with the fewest candidates."""
    if universe == 0:
        return CoverResult(0, 0, True)
    sets = reduce_sets(sets, universe)
    greedy = len(greedy_set_cover(sets, universe))
    lb_root = lower_bound(sets, universe, greedy)
    if lb_root == greedy:
        return CoverResult(greedy, greedy, True)
    containing: dict[int, list[int]] = {}
    for s in sets:
        for e in _bits(s):
            containing.setdefault(e, []).append(s)
    biggest = max(_popcount(s) for s in sets)
    best = [greedy]
    nodes = [0]

    def search(uncovered: int, used: int) -> bool:
        nodes[0] += 1
        if nodes[0] > node_cap:
            return False
        if not uncovered:
            best[0] = min(best[0], used)
            return True
        if used + math.ceil(_popcount(uncovered) / biggest) >= best[0]:
            return True
        pivot = min(_bits(uncovered), key=lambda e: len(containing[e]))
        options = sorted(containing[pivot], key=lambda s: -_popcount(s & uncovered))
        for s in options:
            if not search(uncovered & ~s, used + 1):
                return False
        return True

    finished = search(universe, 0)
    if finished:
        return CoverResult(best[0], best[0], True)
    return CoverResult(lb_root, best[0], False)


def greedy_bracket(sets, universe: int) -> CoverResult:
    if universe == 0:
        return CoverResult(0, 0, True)
    g = len(greedy_set_cover(sets, universe))
    return CoverResult(lower_bound(sets, universe, g), g, False)
