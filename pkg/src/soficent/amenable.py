"""Følner-set entropy for the amenable groups Z, Z^2 and Z/m.

For covers ``W1, W2`` with windows ``A1, A2`` and a finite ``F``, the join
``(W)_F`` consists of the cylinder unions ``bigcap_f f^{-1} W_{j_f}`` on the
window ``F + A``; a point's membership profile is read off its pattern
there.  ``m(F) = max_{K in (W2)_F} log N((W1)_F, K)`` is computed by grouping
the patterns of points of X on ``F + (A1 cup A2)`` by their W2-profile.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import product

import numpy as np

from .brackets import NEG_INF, Bracket, bmax, bmin, down, fmt, up
from .covers import CoverSpec, standard_partition, trivial_cover
from .groups import FiniteSubset
from .microstates import PRODUCT_CAP, CapExceeded, cover_number
from .odometer import OdometerSystem

PATTERN_CAP = 2 ** 22


def _sym(sys):
    return sys.as_shift() if isinstance(sys, OdometerSystem) else sys


@dataclass(frozen=True)
class JoinCover:
    """``(W)_F`` realized on the window ``F + W0``."""

    base: CoverSpec
    F: FiniteSubset

    @property
    def window(self) -> FiniteSubset:
        return self.F.sumset(self.base.window)

    def max_members(self) -> int:
        return len(self.base) ** len(self.F)

    def membership(self, rows: np.ndarray, window: FiniteSubset) -> np.ndarray:
        """``M[n, j, c]``: pattern ``n`` (on ``window``) lies in ``f_j^{-1} W_c``."""
        g = window.group
        pos = {e: i for i, e in enumerate(window.elements)}
        blocks = []
        for f in self.F.elements:
            cols = [pos[g.add(f, w)] for w in self.base.window.elements]
            blocks.append(self.base.membership(rows[:, cols]))
        return np.stack(blocks, axis=1)

    def profiles(self, rows: np.ndarray, window: FiniteSubset) -> np.ndarray:
        """Integer code of each pattern's cell profile (partitions only)."""
        g = window.group
        pos = {e: i for i, e in enumerate(window.elements)}
        m = len(self.base)
        idx = np.array([[pos[g.add(f, w)] for w in self.base.window.elements] for f in self.F.elements])
        cells = np.ascontiguousarray(self.base.cell_index(rows[:, idx]).T)  # (|F|, n)
        if m ** len(self.F) < 2 ** 62:
            code = np.zeros(rows.shape[0], dtype=np.int64)
            for c in cells[::-1]:
                code *= m
                code += c
            return code
        _, inv = np.unique(cells.T, axis=0, return_inverse=True)
        return inv.ravel().astype(np.int64)


@dataclass(frozen=True)
class MValue:
    count: int | None  # exact N when known
    value: Bracket  # log N
    mode: str
    certified_patterns: bool


def m_detail(sys, W1: CoverSpec, W2: CoverSpec, F: FiniteSubset, cap: int = PATTERN_CAP) -> MValue:
    sym = _sym(sys)
    window = F.sumset(W1.window.union(W2.window))
    est = sym.k ** len(window)
    if est > cap and len(sym.forbidden) == 0:
        raise CapExceeded(f"{est} patterns on a window of size {len(window)} exceed the cap {cap}")
    rows, certified = sym.point_patterns(window)
    if rows.shape[0] > cap:
        raise CapExceeded(f"{rows.shape[0]} patterns exceed the cap {cap}")
    if rows.shape[0] == 0:
        return MValue(0, Bracket(NEG_INF, NEG_INF), "exact", certified)
    J1, J2 = JoinCover(W1, F), JoinCover(W2, F)
    if W1.is_partition and W2.is_partition:
        p1 = J1.profiles(rows, window)
        p2 = np.zeros_like(p1) if W2.is_trivial else J2.profiles(rows, window)
        if W2.is_trivial:
            count = int(np.unique(p1).size)
        else:
            pairs = np.unique(np.stack([p2, p1], axis=1), axis=0)
            count = int(np.unique(pairs[:, 0], return_counts=True)[1].max())
        return MValue(count, Bracket.point(math.log(count)), "exact", certified)
    M1 = J1.membership(rows, window)
    if W2.is_trivial:
        groups = [np.arange(rows.shape[0])]
    elif W2.is_partition:
        p2 = J2.profiles(rows, window)
        groups = [np.flatnonzero(p2 == v) for v in np.unique(p2)]
    else:
        M2 = J2.membership(rows, window)
        m2 = len(W2)
        if m2 ** len(F) > PRODUCT_CAP:
            raise CapExceeded(f"{m2}^{len(F)} members of the W2 join exceed the cap")
        groups = []
        for Jc in product(range(m2), repeat=len(F)):
            sel = np.flatnonzero(M2[:, np.arange(len(F)), list(Jc)].all(axis=1))
            if len(sel):
                groups.append(sel)
    lo = hi = 0.0
    modes = []
    for sel in groups:
        r = cover_number(M1[sel])
        lo, hi = max(lo, r.count.lo), max(hi, r.count.hi)
        modes.append(r.mode)
    mode = "exact" if all(m == "exact" for m in modes) else "greedy"
    exact = int(lo) if lo == hi else None
    val = Bracket(down(math.log(lo)) if lo > 1 else math.log(lo), up(math.log(hi)) if hi > 1 else math.log(hi))
    if exact is not None:
        val = Bracket.point(math.log(exact))
    return MValue(exact, val, mode, certified)


def m_value(sys, W1: CoverSpec, W2: CoverSpec, F: FiniteSubset) -> float:
    """``m_{W1,W2}(F)``; the natural log of an exact integer count."""
    r = m_detail(sys, W1, W2, F)
    if r.count is None:
        raise ValueError("cover number not decided exactly; use m_detail for the bracket")
    return NEG_INF if r.count == 0 else math.log(r.count)


@dataclass
class SubadditiveTrace:
    values: dict  # index n -> m(F_n)
    sizes: dict  # index n -> |F_n|

    @property
    def normalized(self) -> dict:
        return {n: (v / self.sizes[n] if v != NEG_INF else NEG_INF) for n, v in self.values.items()}

    def non_increasing(self, tol: float = 1e-12) -> bool:
        seq = [self.normalized[n] for n in sorted(self.values)]
        return all(b <= a + tol for a, b in zip(seq, seq[1:]))

    def to_json(self) -> list:
        return [{"n": n, "size": self.sizes[n], "m": fmt(self.values[n]),
                 "normalized": fmt(self.normalized[n])} for n in sorted(self.values)]


@dataclass
class AmenableEstimate:
    quantity: str
    value: float  # m(F_n)/|F_n| at the largest n
    bracket: Bracket
    trace: SubadditiveTrace | None
    label: str = ""
    notes: list = field(default_factory=list)
    certified_patterns: bool = True
    system: str = ""

    def to_json(self) -> dict:
        cells = [] if self.trace is None else [
            {"n": c["n"], "F_size": c["size"], "lo": c["normalized"], "hi": c["normalized"],
             "mode": "exact"} for c in self.trace.to_json()]
        return {"quantity": self.quantity, "pipeline": "amenable", "system": self.system,
                "headline": {**self.bracket.to_json(), "mode": "exact",
                             "directionality": "bracket"},
                "value": fmt(self.value), "label": self.label,
                "neg_inf": self.bracket.hi == NEG_INF,
                "trend_non_increasing": None if self.trace is None else self.trace.non_increasing(),
                "cells": cells, "certified_patterns": self.certified_patterns,
                "notes": list(self.notes)}


def _is_generating(sys, W1: CoverSpec) -> bool:
    return W1.is_partition and W1.name in ("standard",) or (W1.radius is not None and W1.is_partition
                                                            and len(W1) == len(sys.pattern_array(W1.window)))


def h_a_conditional(sys, W1: CoverSpec, W2: CoverSpec, folner_indices, anchor=None) -> AmenableEstimate:
    """``lim m(F_n)/|F_n|`` along Følner boxes.

    Subadditivity and translation invariance make every term an upper bound
    on the limit.  The lower end is 0 in general; for a generating partition
    of a one-dimensional SFT with ``W2 = {X}`` it is the closed-walk bound.
    """
    sym = _sym(sys)
    idx = sorted(set(int(n) for n in folner_indices))
    if not idx:
        raise ValueError("need at least one Følner index")
    values, sizes, certified = {}, {}, True
    for n in idx:
        F = sym.group.folner(n, anchor).base
        r = m_detail(sym, W1, W2, F)
        certified &= r.certified_patterns
        values[n] = r.value.hi
        sizes[n] = len(F)
    trace = SubadditiveTrace(values, sizes)
    norm = trace.normalized
    last = norm[idx[-1]]
    hi = min(norm.values())
    if hi == NEG_INF:
        return AmenableEstimate("h_a_conditional", NEG_INF, Bracket(NEG_INF, NEG_INF), trace,
                                certified_patterns=certified)
    lo = 0.0
    notes = []
    g = sym.group
    if (W2.is_trivial and g.kind == "lattice" and g.rank == 1 and _is_generating(sym, W1)):
        from .transfer import NotRecodable, loop_count_lower_bound
        try:
            lo = max(lo, loop_count_lower_bound(sym, idx[-1]))
            notes.append("lower end from closed walks of the transfer graph")
        except NotRecodable:
            pass
    hi = up(hi)
    return AmenableEstimate("h_a_conditional", last, Bracket(min(lo, hi), hi), trace,
                            notes=notes, certified_patterns=certified)


def h_a_topological(sys, cover_family, folner_indices) -> AmenableEstimate:
    sym = _sym(sys)
    family = cover_family or [standard_partition(sym)]
    X = trivial_cover(sym)
    ests = [h_a_conditional(sym, W, X, folner_indices) for W in family]
    best = max(range(len(ests)), key=lambda i: ests[i].value)
    return AmenableEstimate("h_a_topological", ests[best].value, bmax(e.bracket for e in ests),
                            ests[best].trace, "cylinder-cover restricted",
                            [n for e in ests for n in e.notes][:1],
                            all(e.certified_patterns for e in ests), sys.name)


def h_a_tail(sys, v_family, cover_family, folner_indices) -> AmenableEstimate:
    """``inf_V sup_U h^a(U | V)`` over the listed cylinder covers."""
    sym = _sym(sys)
    family = cover_family or [standard_partition(sym)]
    v_family = v_family or family
    per_v = []
    for V in v_family:
        ests = [h_a_conditional(sym, U, V, folner_indices) for U in family]
        per_v.append((max(e.value for e in ests), bmax(e.bracket for e in ests)))
    value = min(v for v, _ in per_v)
    return AmenableEstimate("h_a_tail", value, bmin(b for _, b in per_v), None,
                            "cylinder-cover restricted", system=sys.name)


def cross_check_sofic_amenable(sys, sched, folner_indices, cover_family=None,
                               amenable_family=None, tail: bool = True) -> dict:
    """Sofic and amenable pipelines side by side for ``h`` and, optionally, the tail entropy."""
    from .estimators import MicrostateTable, h_star, h_topological, symbolic

    sym = symbolic(sys)
    table = MicrostateTable(sym, sched)
    sofic = h_topological(sys, sched, table).headline
    amen = h_a_topological(sys, amenable_family, folner_indices)

    def compare(a: Bracket, b: Bracket) -> dict:
        finite = not any(math.isinf(v) for v in (a.lo, a.hi, b.lo, b.hi))
        return {"sofic": a.to_json(), "amenable": b.to_json(), "overlap": a.overlaps(b),
                "midpoint_difference": fmt(abs(a.mid - b.mid)) if finite else None}

    out = {"system": getattr(sys, "name", ""), "entropy": compare(sofic, amen.bracket),
           "amenable_value": fmt(amen.value), "label": "cylinder-cover restricted"}
    if tail:
        fam = cover_family
        out["tail"] = compare(h_star(sys, fam, fam, sched, table).headline,
                              h_a_tail(sys, fam, fam, folner_indices).bracket)
    return out
