"""Maximum independent sets of small graphs given as boolean adjacency matrices."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

NODE_CAP = 200_000


@dataclass(frozen=True)
class MISResult:
    lo: int
    hi: int
    exact: bool


def _masks(adj: np.ndarray) -> list[int]:
    out = []
    for row in adj:
        m = 0
        for j in np.flatnonzero(row):
            m |= 1 << int(j)
        out.append(m)
    return out


def _bits(x: int):
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


def greedy_independent(nbr: list[int], vertices: int) -> int:
    """Min-degree greedy; returns the size of a maximal independent set."""
    size = 0
    rest = vertices
    while rest:
        v = min(_bits(rest), key=lambda u: (nbr[u] & rest).bit_count())
        size += 1
        rest &= ~(nbr[v] | (1 << v))
    return size


def clique_cover_bound(nbr: list[int], vertices: int) -> int:
    """Number of cliques in a greedy clique partition: an upper bound on alpha."""
    count = 0
    rest = vertices
    while rest:
        v = (rest & -rest).bit_length() - 1
        clique = 1 << v
        cand = rest & nbr[v]
        while cand:
            u = (cand & -cand).bit_length() - 1
            clique |= 1 << u
            cand &= nbr[u]
        rest &= ~clique
        count += 1
    return count


def _exact(nbr: list[int], vertices: int, node_cap: int) -> tuple[int, bool]:
    best = [greedy_independent(nbr, vertices)]
    nodes = [0]

    def search(rest: int, size: int) -> bool:
        nodes[0] += 1
        if nodes[0] > node_cap:
            return False
        if not rest:
            best[0] = max(best[0], size)
            return True
        if size + clique_cover_bound(nbr, rest) <= best[0]:
            return True
        v = max(_bits(rest), key=lambda u: (nbr[u] & rest).bit_count())
        if not nbr[v] & rest:
            # isolated in what remains: always take it
            return search(rest & ~(1 << v), size + 1)
        if not search(rest & ~(nbr[v] | (1 << v)), size + 1):
            return False
        return search(rest & ~(1 << v), size)

    done = search(vertices, 0)
    return best[0], done


def max_independent_set(adj: np.ndarray, node_cap: int = NODE_CAP) -> MISResult:
    """Bracket on the independence number, exact per component when the search finishes."""
    adj = np.asarray(adj, dtype=bool)
    n = adj.shape[0]
    if n == 0:
        return MISResult(0, 0, True)
    adj = adj | adj.T
    np.fill_diagonal(adj, False)
    ncomp, labels = connected_components(csr_matrix(adj), directed=False)
    isolated = np.bincount(labels, minlength=ncomp) == 1
    lo = hi = int(isolated.sum())
    exact = True
    for c in np.flatnonzero(~isolated):
        idx = np.flatnonzero(labels == c)
        nbr = _masks(adj[np.ix_(idx, idx)])
        verts = (1 << len(idx)) - 1
        size, done = _exact(nbr, verts, node_cap)
        if done:
            lo += size
            hi += size
        else:
            exact = False
            lo += size
            hi += clique_cover_bound(nbr, verts)
    return MISResult(lo, hi, exact)
