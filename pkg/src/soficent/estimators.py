"""Sofic entropy quantities assembled from microstate counts along a schedule.

Every quantity is a nested extremum over a finite schedule: the limsup over
the sofic sequence becomes a max over the listed maps, infima over ``F`` and
``delta`` become minima over the listed values, and suprema over ``eps`` or
over covers become maxima.  These are applied endpoint-wise to brackets of
``(1/d) log count``, where the lower count uses certified microstates only and
the upper count also admits the undecided ones.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from itertools import product

import numpy as np

from .brackets import NEG_INF, Bracket, bmax, bmin, ext_add, fmt
from .covers import CoverSpec, standard_partition, window_partition
from .microstates import (DFS_NODE_CAP, ENUM_CAP, EXACT_VERTEX_CAP, CountResult, MicrostateSet,
                          bowen_ap_count, cover_membership, cover_number, empirical_mask,
                          enumerate_microstates, group_by_cover, n_separated_sets)
from .odometer import OdometerSystem
from .shifts import ShiftSystem

MODE_RANK = {"exact": 0, "greedy": 1, "sampled": 2}
LABEL = "cylinder-cover restricted"


@dataclass(frozen=True)
class Schedule:
    sigmas: tuple
    F_list: tuple
    delta_list: tuple
    eps_list: tuple
    R: int
    enum_cap: int = ENUM_CAP
    vertex_cap: int = EXACT_VERTEX_CAP
    node_cap: int = DFS_NODE_CAP
    tolerance: float = 0.05
    samples: int = 10_000
    seed: int = 0

    def __post_init__(self):
        for name in ("sigmas", "F_list", "delta_list", "eps_list"):
            object.__setattr__(self, name, tuple(getattr(self, name)))
        if not self.sigmas or not self.F_list or not self.delta_list or not self.eps_list:
            raise ValueError("schedule lists must be non-empty")
        for a, b in zip(self.F_list, self.F_list[1:]):
            if not a.issubset(b):
                raise ValueError("F_list must increase under inclusion")
        for name in ("delta_list", "eps_list"):
            vals = getattr(self, name)
            if any(v <= 0 for v in vals) or any(b >= a for a, b in zip(vals, vals[1:])):
                raise ValueError(f"{name} must be positive and strictly decreasing")

    def validate(self, sys: ShiftSystem) -> None:
        margin = 2 * sys.tail(self.R)
        bad = [e for e in self.eps_list if e <= margin]
        if bad:
            raise ValueError(f"eps values {bad} do not exceed 2 t(R) = {margin:.6g}")
        for s in self.sigmas:
            if s.group != sys.group:
                raise ValueError(f"{s} does not act on {sys.group.name}")

    def with_(self, **changes) -> "Schedule":
        data = {f: getattr(self, f) for f in self.__dataclass_fields__}
        data.update(changes)
        return Schedule(**data)


@dataclass(frozen=True)
class Cell:
    d: int
    sigma: str
    F_radius: int
    delta: float | None
    eps: float | None
    value: Bracket
    mode: str
    tag: str = ""
    F_index: int = 0

    def to_json(self) -> dict:
        out = {"d": self.d, "sigma": self.sigma, "F_radius": self.F_radius, "F_index": self.F_index,
               "delta": None if self.delta is None else fmt(self.delta),
               "eps": None if self.eps is None else fmt(self.eps),
               "lo": fmt(self.value.lo), "hi": fmt(self.value.hi), "mode": self.mode}
        if self.tag:
            out["tag"] = self.tag
        return out


@dataclass
class EntropyReport:
    quantity: str
    headline: Bracket
    cells: list
    mode: str
    directionality: str
    system: str = ""
    label: str = ""
    series: dict = field(default_factory=dict)
    notes: list = field(default_factory=list)
    pipeline: str = "sofic"

    @property
    def neg_inf(self) -> bool:
        return self.headline.hi == NEG_INF

    def to_json(self) -> dict:
        return {
            "quantity": self.quantity,
            "pipeline": self.pipeline,
            "system": self.system,
            "headline": {**self.headline.to_json(), "mode": self.mode,
                         "directionality": self.directionality},
            "label": self.label,
            "neg_inf": self.neg_inf,
            "series": [{"d": d, **b.to_json()} for d, b in sorted(self.series.items())],
            "cells": [c.to_json() for c in self.cells],
            "notes": list(self.notes),
        }


def worst_mode(modes) -> str:
    modes = list(modes)
    return max(modes, key=MODE_RANK.__getitem__) if modes else "exact"


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("SEL_THREADS", "1")))
    except ValueError:
        return 1


def parallel_map(fn, items) -> list:
    """Order-preserving map, concurrent up to ``SEL_THREADS`` workers."""
    items = list(items)
    n = _threads()
    if n == 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=n) as pool:
        return list(pool.map(fn, items))


def symbolic(sys) -> ShiftSystem:
    """The subshift on which microstates are counted (odometers use their orbit shift)."""
    return sys.as_shift() if isinstance(sys, OdometerSystem) else sys


class MicrostateTable:
    """Microstate sets per ``(sigma, F, delta)``, computed once per estimator call."""

    def __init__(self, sys: ShiftSystem, sched: Schedule):
        sched.validate(sys)
        self.sys, self.sched = sys, sched
        keys = list(product(range(len(sched.sigmas)), range(len(sched.F_list)), range(len(sched.delta_list))))
        sets = parallel_map(self._compute, keys)
        self.sets = dict(zip(keys, sets))

    def _compute(self, key) -> MicrostateSet:
        si, fi, di = key
        s = self.sched
        return enumerate_microstates(self.sys, s.sigmas[si], s.F_list[fi], s.delta_list[di], s.R,
                                     cap=s.enum_cap, node_cap=s.node_cap)

    def keys(self):
        return sorted(self.sets)


def log_bracket(count: Bracket, d: int) -> Bracket:
    return count.log_per(d)


def _cell(sched: Schedule, key, eps, count: CountResult, tag: str = "") -> Cell:
    si, fi, di = key
    sigma = sched.sigmas[si]
    return Cell(sigma.d, sigma.label, sched.F_list[fi].radius,
                None if di is None else sched.delta_list[di], eps,
                log_bracket(count.count, sigma.d), count.mode, tag, fi)


def reduce_cells(cells: list, group_key, inner=bmax, middle=bmin, outer=bmax) -> Bracket:
    """max over sigma inside, then ``middle`` over the (F, delta) grid, then ``outer``.

    ``group_key(cell)`` returns ``(outer_key, middle_key)``.
    """
    grid: dict = {}
    for c in cells:
        ok, mk = group_key(c)
        grid.setdefault(ok, {}).setdefault(mk, []).append(c.value)
    return outer([middle([inner(v) for v in mids.values()]) for mids in grid.values()])


def _by_eps(c: Cell):
    return c.eps, (c.F_index, c.delta, c.tag)


def _series(cells: list, reducer) -> dict:
    out = {}
    for d in sorted({c.d for c in cells}):
        out[d] = reducer([c for c in cells if c.d == d])
    return out


def _finish(quantity, sys, cells, reducer, directionality, notes=(), label="") -> EntropyReport:
    return EntropyReport(quantity=quantity, headline=reducer(cells), cells=cells,
                         mode=worst_mode(c.mode for c in cells), directionality=directionality,
                         system=getattr(sys, "name", ""), label=label,
                         series=_series(cells, reducer), notes=list(notes))


def _table(sys, sched, table):
    sym = symbolic(sys)
    return sym, table if table is not None else MicrostateTable(sym, sched)


# -- topological quantities --------------------------------------------------------


def h_topological(sys, sched: Schedule, table: MicrostateTable | None = None) -> EntropyReport:
    sym, table = _table(sys, sched, table)

    def work(item):
        key, eps = item
        ms = table.sets[key]
        return _cell(sched, key, eps, n_separated_sets(sym, sched.sigmas[key[0]], ms.certified_in,
                                                       ms.unknown, eps, sched.R, sched.vertex_cap))

    cells = parallel_map(work, [(k, e) for k in table.keys() for e in sched.eps_list])
    return _finish("h_topological", sys, cells, lambda cs: reduce_cells(cs, _by_eps), "bracket",
                   ["max over the listed sofic maps stands in for the limsup"])


def _cover_count(sym, sigma, cover: CoverSpec, ms: MicrostateSet, pessimistic: bool) -> CountResult:
    arr = ms.certified_in if pessimistic else ms.optimistic
    return cover_number(cover_membership(cover, sigma, arr))


def _two_sided(lo: CountResult, hi: CountResult) -> CountResult:
    return CountResult(Bracket(lo.count.lo, max(hi.count.hi, lo.count.lo)), worst_mode([lo.mode, hi.mode]))


def h_cover(sys, cover: CoverSpec, sched: Schedule, table: MicrostateTable | None = None) -> EntropyReport:
    sym, table = _table(sys, sched, table)

    def work(key):
        sigma, ms = sched.sigmas[key[0]], table.sets[key]
        res = _two_sided(_cover_count(sym, sigma, cover, ms, True), _cover_count(sym, sigma, cover, ms, False))
        return _cell(sched, key, None, res, cover.name)

    cells = parallel_map(work, table.keys())
    return _finish("h_cover", sys, cells, lambda cs: reduce_cells(cs, _by_eps), "bracket",
                   label=LABEL)


def conditional_count(sigma, cover1: CoverSpec, cover2: CoverSpec, ms: MicrostateSet,
                      counter=None) -> CountResult:
    """``max_{V in U2^d} count(S cap V)`` for the pessimistic and optimistic sets."""
    counter = counter or (lambda arr: cover_number(cover_membership(cover1, sigma, arr)))
    groups = group_by_cover(cover2, sigma, [ms.certified_in, ms.optimistic])
    lo, hi, modes = 0.0, 0.0, []
    for g_in, g_all in groups:
        a, b = counter(g_in), counter(g_all)
        lo, hi = max(lo, a.count.lo), max(hi, b.count.hi)
        modes += [a.mode, b.mode]
    return CountResult(Bracket(lo, max(lo, hi)), worst_mode(modes))


def h_cover_conditional(sys, cover1: CoverSpec, cover2: CoverSpec, sched: Schedule,
                        table: MicrostateTable | None = None) -> EntropyReport:
    sym, table = _table(sys, sched, table)

    def work(key):
        sigma = sched.sigmas[key[0]]
        return _cell(sched, key, None, conditional_count(sigma, cover1, cover2, table.sets[key]),
                     f"{cover1.name}|{cover2.name}")

    cells = parallel_map(work, table.keys())
    return _finish("h_cover_conditional", sys, cells, lambda cs: reduce_cells(cs, _by_eps),
                   "bracket", label=LABEL)


def default_cover_family(sys, max_radius: int = 2) -> list[CoverSpec]:
    sym = symbolic(sys)
    return [standard_partition(sym)] + [window_partition(sym, r) for r in range(1, max_radius + 1)]


def h_space_conditional(sys, cover2: CoverSpec, cover_family: list | None, sched: Schedule,
                        table: MicrostateTable | None = None) -> EntropyReport:
    sym, table = _table(sys, sched, table)
    family = cover_family or default_cover_family(sys)
    reports = [h_cover_conditional(sys, c1, cover2, sched, table) for c1 in family]
    cells = [c for r in reports for c in r.cells]
    headline = bmax(r.headline for r in reports)
    rep = EntropyReport("h_space_conditional", headline, cells, worst_mode(r.mode for r in reports),
                        "bracket", getattr(sys, "name", ""), LABEL,
                        {d: bmax(r.series[d] for r in reports) for d in reports[0].series},
                        ["supremum over the listed cylinder covers only"])
    return rep


def h_star(sys, v_family: list | None, cover_family: list | None, sched: Schedule,
           table: MicrostateTable | None = None) -> EntropyReport:
    sym, table = _table(sys, sched, table)
    family = cover_family or default_cover_family(sys)
    v_family = v_family or family
    reports = [h_space_conditional(sys, v, family, sched, table) for v in v_family]
    headline = bmin(r.headline for r in reports)
    return EntropyReport("h_star", headline, [c for r in reports for c in r.cells],
                         worst_mode(r.mode for r in reports), "bracket", getattr(sys, "name", ""), LABEL,
                         {d: bmin(r.series[d] for r in reports) for d in reports[0].series},
                         ["infimum over the listed cylinder covers only"])


# -- measure-theoretic quantities ----------------------------------------------------


def _filter(ms: MicrostateSet, sigma, mu, L, delta) -> MicrostateSet:
    def keep(arr):
        return arr[empirical_mask(arr, sigma, mu, L, delta)] if arr.shape[0] else arr
    return MicrostateSet(sigma, keep(ms.certified_in), keep(ms.unknown), ms.n_out, ms.method)


def h_measure_cover(sys, mu, cover: CoverSpec, L_family: list, sched: Schedule,
                    table: MicrostateTable | None = None) -> EntropyReport:
    """Cover entropy of ``mu``: microstates are further filtered by empirical frequencies."""
    sym, table = _table(sys, sched, table)
    if not L_family:
        raise ValueError("L_family must be non-empty")

    def work(item):
        li, key = item
        sigma = sched.sigmas[key[0]]
        ms = _filter(table.sets[key], sigma, mu, L_family[li], sched.delta_list[key[2]])
        res = _two_sided(_cover_count(sym, sigma, cover, ms, True), _cover_count(sym, sigma, cover, ms, False))
        return _cell(sched, key, None, res, f"L{li}")

    cells = parallel_map(work, [(li, k) for li in range(len(L_family)) for k in table.keys()])
    return _finish("h_measure_cover", sys, cells, lambda cs: reduce_cells(cs, _by_eps), "bracket",
                   label=LABEL)


def bowen_measure_entropy(sys, mu, alpha: CoverSpec, sched: Schedule) -> EntropyReport:
    """Bowen's entropy ``inf_F inf_eps max_sigma (1/d) log |AP|``.

    The computed values are finite-``d`` evaluations; the only certified upper
    bound on the limit is ``log |alpha|``, which becomes the headline's upper end.
    """
    sym = symbolic(sys)
    keys = list(product(range(len(sched.sigmas)), range(len(sched.F_list)), sched.eps_list))

    def work(item):
        si, fi, eps = item
        sigma = sched.sigmas[si]
        res = bowen_ap_count(sym, sigma, alpha, sched.F_list[fi], eps, mu, cap=sched.enum_cap,
                             samples=sched.samples, seed=sched.seed)
        return _cell(sched, (si, fi, None), eps, CountResult(res.count, res.mode))

    cells = parallel_map(work, keys)

    def reducer(cs):
        raw = reduce_cells(cs, lambda c: (c.F_index, c.eps), inner=bmax, middle=bmin, outer=bmin)
        ceiling = math.log(len(alpha))
        if raw.hi == NEG_INF:
            return raw
        return Bracket(raw.lo, max(raw.hi, ceiling))

    rep = _finish("bowen_measure_entropy", sys, cells, reducer, "certified-upper",
                  ["upper end is the certified ceiling log|alpha|; lower end is the finite-d value"])
    rep.series = _series(cells, lambda cs: reduce_cells(cs, lambda c: (c.F_index, c.eps),
                                                        middle=bmin, outer=bmin))
    return rep


# -- separated sets inside cover cells ---------------------------------------------------


def h_eps_conditional(sys, eps: float, cover: CoverSpec, sched: Schedule,
                      table: MicrostateTable | None = None) -> EntropyReport:
    sym, table = _table(sys, sched, table)

    def work(key):
        sigma = sched.sigmas[key[0]]
        groups = group_by_cover(cover, sigma, [table.sets[key].certified_in, table.sets[key].optimistic])
        lo, hi, modes = 0.0, 0.0, []
        for g_in, g_all in groups:
            n_in = g_in.shape[0]
            # g_in is a prefix-free subset of g_all: split g_all into certain and undecided
            cert = g_in
            rest = _difference(g_all, g_in)
            r = n_separated_sets(sym, sigma, cert, rest, eps, sched.R, sched.vertex_cap)
            lo = max(lo, r.count.lo) if n_in else lo
            hi = max(hi, r.count.hi)
            modes.append(r.mode)
        return _cell(sched, key, eps, CountResult(Bracket(lo, max(lo, hi)), worst_mode(modes)),
                     f"eps|{cover.name}")

    cells = parallel_map(work, table.keys())
    return _finish("h_eps_conditional", sys, cells, lambda cs: reduce_cells(cs, _by_eps), "bracket",
                   label=LABEL)


def _difference(big: np.ndarray, small: np.ndarray) -> np.ndarray:
    if small.shape[0] == 0:
        return big
    s = {row.tobytes() for row in small}
    keep = np.array([row.tobytes() not in s for row in big], dtype=bool)
    return big[keep]


def sandwich_holds(sys, cover: CoverSpec, V: CoverSpec, eps1: float, eps2: float, sched: Schedule,
                   table: MicrostateTable | None = None) -> dict:
    """``h(eps1|U) <= h(V|U) <= h(eps2|U)`` on brackets, for diam V < eps1 and Lebesgue V > eps2."""
    sym, table = _table(sys, sched, table)
    if not V.diam_upper(sym) < eps1:
        raise ValueError("need diam(V) < eps1")
    if not V.lebesgue_lower(sym) > eps2:
        raise ValueError("need Lebesgue(V) > eps2")
    a = h_eps_conditional(sys, eps1, cover, sched, table).headline
    b = h_cover_conditional(sys, V, cover, sched, table).headline
    c = h_eps_conditional(sys, eps2, cover, sched, table).headline
    return {"left": a, "middle": b, "right": c, "holds": a.lo <= b.hi and b.lo <= c.hi}


# -- classification ------------------------------------------------------------------


@dataclass
class Classification:
    expansive: bool
    constant: Bracket
    h_expansive_evidence: bool
    asympt_h_expansive_evidence: bool
    witness_cover: str
    h_conditional: Bracket
    h_star: Bracket
    notes: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {"expansive": {"verdict": self.expansive, "constant": self.constant.to_json()},
                "h_expansive_evidence": self.h_expansive_evidence,
                "asympt_h_expansive_evidence": self.asympt_h_expansive_evidence,
                "witness_cover": self.witness_cover,
                "h_space_conditional": self.h_conditional.to_json(),
                "h_star": self.h_star.to_json(),
                "notes": list(self.notes)}


def expansive_constant(sys) -> tuple[bool, Bracket]:
    """Expansiveness verdict and a bracket on the best expansive constant.

    For a subshift two distinct points differ at some ``g``, and shifting by
    ``g`` moves that difference to the identity, so ``w_e`` is always a valid
    constant.  If some point admits a one-site change that stays in X, that
    pair is never more than ``w_e`` apart, which pins the constant.
    """
    if isinstance(sys, OdometerSystem):
        return False, sys.expansive_search()
    w0 = sys.w0
    g = sys.group
    span = max(sys.forbidden_span, 1)
    window = g.ball(span)
    arr, certified = sys.point_patterns(window)
    centre = window.elements.index(g.identity)
    hi = 1.0
    if certified and arr.shape[0]:
        rows = {tuple(r) for r in arr.tolist()}
        for row in arr.tolist():
            flips = (tuple(row[:centre]) + (a,) + tuple(row[centre + 1:])
                     for a in range(sys.k) if a != row[centre])
            if any(f in rows for f in flips):
                hi = w0
                break
    return True, Bracket(w0, max(hi, w0))


def classify(sys, sched: Schedule, cover_family: list | None = None,
             table: MicrostateTable | None = None) -> Classification:
    expansive, constant = expansive_constant(sys)
    sym, table = _table(sys, sched, table)
    family = cover_family or default_cover_family(sys)
    U = standard_partition(sym)
    cond = h_space_conditional(sys, U, family, sched, table)
    star = h_star(sys, family, family, sched, table)
    tol = sched.tolerance
    notes = []
    if isinstance(sys, OdometerSystem):
        notes.append(f"truncation depth {sys.depth}: pairs sharing a depth-{sys.depth} cylinder stay "
                     f"within {sys.tail:g} under every group element")
    return Classification(expansive, constant, cond.headline.hi <= tol, star.headline.hi <= tol,
                          U.name, cond.headline, star.headline, notes)


def chain_inequality(h1: Bracket, h2: Bracket, h12: Bracket) -> bool:
    """``h(U1).lo <= h(U2).hi + h(U1|U2).hi`` under the extended-real sum."""
    return h1.lo <= ext_add(h2.hi, h12.hi)
