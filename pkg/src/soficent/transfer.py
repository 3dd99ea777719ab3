"""Transfer graphs of one-dimensional shifts of finite type.

A subshift of Z whose forbidden shapes span at most ``s`` consecutive sites
is recoded as a vertex shift on the locally allowed words of length
``L = max(s - 1, 1)``; two words are joined when they overlap in ``L - 1``
symbols and the glued word of length ``L + 1`` is locally allowed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

from .brackets import NEG_INF, Bracket, down, up

RECODE_CAP = 4096


class NotRecodable(ValueError):
    pass


@dataclass(frozen=True)
class TransferGraph:
    words: np.ndarray  # (n_states, L)
    adjacency: np.ndarray  # (n_states, n_states) 0/1
    word_length: int

    @property
    def n_states(self) -> int:
        return self.words.shape[0]

    def state_index(self) -> dict:
        return {tuple(int(v) for v in w): i for i, w in enumerate(self.words)}


def _check_rank1(sys):
    g = sys.group
    if g.kind != "lattice" or g.rank != 1:
        raise NotRecodable(f"transfer graphs need a subshift of Z, got {g.name}")


def transfer_graph(sys, cap: int = RECODE_CAP) -> TransferGraph:
    _check_rank1(sys)
    key = ("transfer", cap)
    if key in sys._cache:
        return sys._cache[key]
    span = 1
    for fb in sys.forbidden:
        coords = [s[0] for s in fb.shape]
        span = max(span, max(coords) - min(coords) + 1)
    L = max(span - 1, 1)
    if sys.k ** L > cap * sys.k and len(sys.pattern_array(sys.group.box(L))) > cap:
        raise NotRecodable(f"recoding window of length {L} exceeds the state cap {cap}")
    words = np.asarray(sys.pattern_array(sys.group.box(L)), dtype=np.int64)
    if len(words) > cap:
        raise NotRecodable(f"{len(words)} recoded states exceed the cap {cap}")
    glued = np.asarray(sys.pattern_array(sys.group.box(L + 1)), dtype=np.int64)
    index = {tuple(w): i for i, w in enumerate(words.tolist())}
    A = np.zeros((len(words), len(words)), dtype=np.int64)
    for row in glued.tolist():
        A[index[tuple(row[:L])], index[tuple(row[1:])]] = 1
    graph = TransferGraph(words, A, L)
    sys._cache[key] = graph
    return graph


def _nontrivial_components(A: np.ndarray) -> list[np.ndarray]:
    n = A.shape[0]
    if n == 0:
        return []
    ncomp, labels = connected_components(csr_matrix(A), directed=True, connection="strong")
    comps = []
    for c in range(ncomp):
        idx = np.flatnonzero(labels == c)
        if A[np.ix_(idx, idx)].any():
            comps.append(idx)
    return comps


def _reach(A: np.ndarray, start: np.ndarray) -> np.ndarray:
    """Vertices reachable from ``start`` (inclusive) along edges of A."""
    seen = start.copy()
    frontier = start.copy()
    while frontier.any():
        nxt = (A[frontier].sum(axis=0) > 0) & ~seen
        seen |= nxt
        frontier = nxt
    return seen


def bi_infinite_states(graph: TransferGraph) -> tuple[np.ndarray, np.ndarray]:
    """(has infinite past, has infinite future) masks over states."""
    A = graph.adjacency
    core = np.zeros(graph.n_states, dtype=bool)
    for comp in _nontrivial_components(A):
        core[comp] = True
    past = _reach(A, core)
    future = _reach(A.T, core)
    return past, future


def _word_codes(rows: np.ndarray, k: int) -> np.ndarray:
    return rows.astype(np.int64) @ (k ** np.arange(rows.shape[1], dtype=np.int64))


def extendable_rows(sys, arr: np.ndarray) -> np.ndarray:
    """Which locally allowed interval patterns extend to a bi-infinite point."""
    graph = transfer_graph(sys)
    L = graph.word_length
    past, future = bi_infinite_states(graph)
    n = arr.shape[1]
    if arr.shape[0] == 0:
        return np.zeros(0, dtype=bool)
    if n >= L:
        state_codes = _word_codes(graph.words, sys.k)
        order = np.argsort(state_codes)
        sorted_codes = state_codes[order]

        def lookup(cols):
            c = _word_codes(cols, sys.k)
            pos = np.clip(np.searchsorted(sorted_codes, c), 0, len(sorted_codes) - 1)
            found = sorted_codes[pos] == c if len(sorted_codes) else np.zeros(len(c), bool)
            return found, order[pos] if len(order) else pos

        f_ok, first = lookup(arr[:, :L])
        l_ok, last = lookup(arr[:, n - L:])
        out = f_ok & l_ok
        out[out] &= past[first[out]] & future[last[out]]
        return out
    good = past & future
    prefixes = np.unique(_word_codes(graph.words[good][:, :n], sys.k)) if good.any() else np.zeros(0, np.int64)
    return np.isin(_word_codes(arr, sys.k), prefixes)


def spectral_radius_bracket(A: np.ndarray, rtol: float = 1e-10, max_iter: int = 2_000_000) -> Bracket:
    """Certified bracket on the spectral radius of a non-negative matrix.

    Power iteration on ``A + I`` inside every non-trivial strongly connected
    component, stopped by the Collatz-Wielandt bounds
    ``min (Bv)_i / v_i <= rho(B) <= max (Bv)_i / v_i`` for positive ``v``.
    """
    A = np.asarray(A, dtype=float)
    comps = _nontrivial_components(A)
    if not comps:
        return Bracket(0.0, 0.0)
    lo_best, hi_best = 0.0, 0.0
    for idx in comps:
        B = A[np.ix_(idx, idx)] + np.eye(len(idx))
        v = np.ones(len(idx))
        lo, hi = 0.0, math.inf
        for _ in range(max_iter):
            w = B @ v
            ratios = w / v
            lo, hi = ratios.min(), ratios.max()
            if hi - lo <= rtol * hi:
                break
            v = w / w.max()
        lo_best = max(lo_best, lo - 1.0)
        hi_best = max(hi_best, hi - 1.0)
    return Bracket(max(0.0, down(lo_best)), up(hi_best))


def transfer_matrix_entropy(sys, rtol: float = 1e-10) -> float:
    """log of the spectral radius of the transfer graph (``-inf`` if X is empty)."""
    graph = transfer_graph(sys)
    if graph.n_states == 0:
        return NEG_INF
    b = spectral_radius_bracket(graph.adjacency, rtol=rtol)
    if b.hi == 0.0:
        return NEG_INF
    return math.log(b.mid)


def transfer_entropy_bracket(sys, rtol: float = 1e-10) -> Bracket:
    graph = transfer_graph(sys)
    b = spectral_radius_bracket(graph.adjacency, rtol=rtol)
    lo = math.log(b.lo) if b.lo > 0 else NEG_INF
    hi = math.log(b.hi) if b.hi > 0 else NEG_INF
    return Bracket(down(lo), up(hi))


def loop_count_lower_bound(sys, n: int) -> float:
    """``max_v (1/n) log (A^n)_{vv}``, a certified lower bound on the entropy.

    Closed walks through a fixed state are supermultiplicative in their
    length, so this never exceeds the limit ``log rho(A)``.
    """
    graph = transfer_graph(sys)
    if graph.n_states == 0:
        return NEG_INF
    A = graph.adjacency.astype(object)
    P = np.identity(graph.n_states, dtype=object)
    for _ in range(n):
        P = P.dot(A)
    best = max(int(P[i, i]) for i in range(graph.n_states))
    if best == 0:
        return NEG_INF
    return down(math.log(best) / n)
