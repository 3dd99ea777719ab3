"""Invariant measures given by Bernoulli and Markov chains."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .groups import FiniteSubset


class UnsupportedWindow(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class Bernoulli:
    p: tuple

    def __post_init__(self):
        p = tuple(float(v) for v in self.p)
        if any(v < 0 for v in p) or abs(math.fsum(p) - 1.0) > 1e-12:
            raise ValueError(f"Bernoulli weights must be a probability vector, got {p}")
        object.__setattr__(self, "p", p)

    @property
    def k(self) -> int:
        return len(self.p)

    def cylinder(self, window: FiniteSubset, symbols) -> float:
        return math.prod(self.p[int(a)] for a in symbols)

    def cylinder_array(self, window: FiniteSubset, rows: np.ndarray) -> np.ndarray:
        probs = np.asarray(self.p)[rows.astype(np.int64)]
        return np.prod(probs, axis=-1)

    def __repr__(self):
        return f"Bernoulli({', '.join(f'{v:g}' for v in self.p)})"


@dataclass(frozen=True, eq=False)
class Markov:
    """Stationary Markov chain on Z with transition matrix ``P`` and law ``pi``."""

    P: np.ndarray
    pi: np.ndarray

    def __post_init__(self):
        P = np.asarray(self.P, dtype=float)
        pi = np.asarray(self.pi, dtype=float)
        if P.ndim != 2 or P.shape[0] != P.shape[1] or pi.shape != (P.shape[0],):
            raise ValueError("P must be square and pi must match it")
        if (P < 0).any() or np.abs(P.sum(axis=1) - 1).max() > 1e-9:
            raise ValueError("P must be row-stochastic")
        if abs(pi.sum() - 1) > 1e-9 or np.abs(pi @ P - pi).max() > 1e-9:
            raise ValueError("pi must be a stationary probability vector")
        P.setflags(write=False)
        pi.setflags(write=False)
        object.__setattr__(self, "P", P)
        object.__setattr__(self, "pi", pi)

    @property
    def k(self) -> int:
        return len(self.pi)

    def _steps(self, window: FiniteSubset) -> list[int]:
        g = window.group
        if g.kind != "lattice" or g.rank != 1:
            raise UnsupportedWindow("Markov measures are only defined on subshifts of Z")
        coords = [e[0] for e in window.elements]
        return [b - a for a, b in zip(coords, coords[1:])]

    def cylinder(self, window: FiniteSubset, symbols) -> float:
        steps = self._steps(window)
        syms = [int(a) for a in symbols]
        prob = float(self.pi[syms[0]])
        for gap, a, b in zip(steps, syms, syms[1:]):
            prob *= float(np.linalg.matrix_power(self.P, gap)[a, b])
        return prob

    def cylinder_array(self, window: FiniteSubset, rows: np.ndarray) -> np.ndarray:
        steps = self._steps(window)
        rows = rows.astype(np.int64)
        prob = self.pi[rows[..., 0]]
        for j, gap in enumerate(steps):
            Pg = np.linalg.matrix_power(self.P, gap)
            prob = prob * Pg[rows[..., j], rows[..., j + 1]]
        return prob


def mu_cylinder(mu, window: FiniteSubset, symbols) -> float:
    """Measure of the cylinder ``{x : x|window = symbols}``."""
    if isinstance(symbols, dict):
        symbols = [symbols[e] for e in window.elements]
    if len(symbols) != len(window):
        raise ValueError("pattern length does not match the window")
    return mu.cylinder(window, symbols)


def parry_measure(sys) -> Markov:
    """Measure of maximal entropy of a nearest-neighbour subshift of Z."""
    from .transfer import transfer_graph

    graph = transfer_graph(sys)
    if graph.word_length != 1 or graph.n_states != sys.k:
        raise UnsupportedWindow("Parry measure needs a nearest-neighbour shift on the full alphabet")
    A = graph.adjacency.astype(float)
    vals, right = np.linalg.eig(A)
    i = int(np.argmax(vals.real))
    lam = vals[i].real
    v = np.abs(right[:, i].real)
    vals_l, left = np.linalg.eig(A.T)
    u = np.abs(left[:, int(np.argmax(vals_l.real))].real)
    with np.errstate(divide="ignore", invalid="ignore"):
        P = np.where(A > 0, A * v[None, :] / (lam * v[:, None]), 0.0)
    P = P / P.sum(axis=1, keepdims=True)
    pi = u * v / (u @ v)
    return Markov(P, pi)


@dataclass(frozen=True)
class CylinderIndicator:
    """The test function ``1_{[symbols]_window}``."""

    window: FiniteSubset
    symbols: tuple

    def __call__(self, rows: np.ndarray) -> np.ndarray:
        return np.all(rows == np.asarray(self.symbols), axis=-1)

    def mean(self, mu) -> float:
        return mu_cylinder(mu, self.window, self.symbols)


def single_site_indicators(sys) -> list[CylinderIndicator]:
    w = sys.group.ball(0)
    return [CylinderIndicator(w, (a,)) for a in range(sys.k)]


def indicator_family(sys, radius: int) -> list[CylinderIndicator]:
    """Indicators of every locally allowed pattern on ``ball(radius)``."""
    w = sys.group.ball(radius)
    return [CylinderIndicator(w, tuple(int(v) for v in row)) for row in sys.pattern_array(w)]
