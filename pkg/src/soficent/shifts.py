"""Subshifts over a finite alphabet with a truncated word-length metric.

The metric is ``rho(x, y) = sum_g w_g [x_g != y_g]`` with
``w_g = 2^{-|g|} / Z`` and ``Z = sum_{g in G} 2^{-|g|}`` (3 on Z, 9 on Z^2,
a finite sum on Z/m), so ``sum_g w_g = 1`` and ``diam X <= 1``.  Points are
only ever seen through finite windows; the unseen tail contributes at most
``t(R) = sum_{|g| > R} w_g`` to any distance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .brackets import Bracket, down, up
from .groups import Element, FiniteSubset, GroupModel


class EmptySystem(ValueError):
    """No allowed pattern exists on the requested window."""


class WindowTooSmall(ValueError):
    pass


@dataclass(frozen=True)
class Forbidden:
    shape: tuple  # group elements
    pattern: tuple  # symbol indices aligned with shape


@dataclass(frozen=True)
class WindowPattern:
    window: FiniteSubset
    symbols: tuple  # symbol indices aligned with window.elements
    certified_extendable: bool | None = None

    def as_dict(self) -> dict:
        return dict(zip(self.window.elements, self.symbols))


@dataclass(frozen=True, eq=False)
class ShiftSystem:
    group: GroupModel
    alphabet: tuple
    forbidden: tuple = ()
    R_max: int = 8
    name: str = ""
    _cache: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "alphabet", tuple(str(a) for a in self.alphabet))
        if len(set(self.alphabet)) != len(self.alphabet) or not self.alphabet:
            raise ValueError("alphabet must be non-empty with distinct symbols")
        normed = []
        for fb in self.forbidden:
            shape = tuple(self.group.element(s) for s in fb.shape)
            pattern = tuple(int(p) for p in fb.pattern)
            if len(shape) != len(pattern) or len(set(shape)) != len(shape):
                raise ValueError(f"bad forbidden pattern {fb}")
            if any(not 0 <= p < self.k for p in pattern):
                raise ValueError(f"forbidden pattern {fb} uses symbols outside the alphabet")
            normed.append(Forbidden(shape, pattern))
        object.__setattr__(self, "forbidden", tuple(normed))
        ball = self.group.ball(self.R_max).as_set
        for fb in self.forbidden:
            # translate so the shape sits at its lexicographically smallest element
            base = min(fb.shape)
            rel = [self.group.add(s, self.group.neg(base)) for s in fb.shape]
            if not set(rel) <= ball:
                raise ValueError(f"forbidden shape {fb.shape} does not fit in ball({self.R_max})")
        if not self.pattern_array(self.group.ball(0)).shape[0]:
            raise EmptySystem(f"system {self.name!r} has no allowed symbol")

    # -- alphabet and metric ------------------------------------------------

    @property
    def k(self) -> int:
        return len(self.alphabet)

    def symbol_index(self, s) -> int:
        return self.alphabet.index(str(s))

    @property
    def normalizer(self) -> Fraction:
        g = self.group
        if g.kind == "cyclic":
            return sum((Fraction(1, 2 ** g.norm((r,))) for r in range(g.modulus)), Fraction(0))
        return Fraction(3) if g.rank == 1 else Fraction(9)

    def weight(self, g) -> Fraction:
        return Fraction(1, 2 ** self.group.norm(self.group.element(g))) / self.normalizer

    def tail(self, R: int) -> float:
        """Certified upper bound on ``sum_{|g| > R} w_g``."""
        return up(float(self.tail_exact(R)))

    def tail_exact(self, R: int) -> Fraction:
        g = self.group
        if g.kind == "cyclic":
            return sum((self.weight((r,)) for r in range(g.modulus) if g.norm((r,)) > R), Fraction(0))
        if g.rank == 1:
            return Fraction(2, 2 ** R) / self.normalizer
        return Fraction(4 * (R + 2), 2 ** R) / self.normalizer

    def weights(self, window: FiniteSubset) -> np.ndarray:
        return np.array([float(self.weight(e)) for e in window.elements])

    @property
    def w0(self) -> float:
        return float(self.weight(self.group.identity))

    @property
    def forbidden_span(self) -> int:
        """Radius of the smallest identity-centred ball holding every forbidden shape."""
        best = 0
        for fb in self.forbidden:
            base = min(fb.shape)
            best = max(best, max(self.group.norm(self.group.add(s, self.group.neg(base)))
                                 for s in fb.shape))
        return best

    # -- patterns -----------------------------------------------------------

    def code_powers(self, n: int) -> np.ndarray:
        if self.k ** n >= 2 ** 62:
            raise ValueError(f"patterns of length {n} over {self.k} symbols do not fit in int64 codes")
        return self.k ** np.arange(n, dtype=np.int64)

    @property
    def shape_table(self) -> list[tuple[tuple, np.ndarray]]:
        """Forbidden patterns grouped by shape: (relative shape, sorted codes)."""
        if "shapes" not in self._cache:
            groups: dict = {}
            for fb in self.forbidden:
                base = min(fb.shape)
                order = sorted(range(len(fb.shape)), key=lambda j: fb.shape[j])
                rel = tuple(self.group.add(fb.shape[j], self.group.neg(base)) for j in order)
                pat = [fb.pattern[j] for j in order]
                code = int(np.dot(pat, self.code_powers(len(pat))))
                groups.setdefault(rel, set()).add(code)
            self._cache["shapes"] = [(rel, np.array(sorted(c), dtype=np.int64))
                                     for rel, c in sorted(groups.items())]
        return self._cache["shapes"]

    def placements(self, window: FiniteSubset) -> list[tuple[np.ndarray, np.ndarray]]:
        """(positions, forbidden codes) for every forbidden shape lying fully inside ``window``."""
        pos = {e: i for i, e in enumerate(window.elements)}
        out = []
        for rel, codes in self.shape_table:
            seen = set()
            for w in window.elements:
                cells = [self.group.add(w, h) for h in rel]
                if all(c in pos for c in cells):
                    key = tuple(pos[c] for c in cells)
                    if key not in seen:
                        seen.add(key)
                        out.append((np.array(key), codes))
        return out

    def violates(self, rows: np.ndarray, positions: np.ndarray, codes: np.ndarray) -> np.ndarray:
        """Row mask: the pattern at ``positions`` is one of the forbidden ``codes``."""
        c = rows[..., positions].astype(np.int64) @ self.code_powers(len(positions))
        return np.isin(c, codes)

    def pattern_array(self, window: FiniteSubset) -> np.ndarray:
        """Locally allowed patterns on ``window`` as rows (columns follow window.elements)."""
        key = ("patterns", window.elements)
        if key in self._cache:
            return self._cache[key]
        n = len(window)
        dtype = np.int8 if self.k < 128 else np.int16
        buckets: list[list] = [[] for _ in range(n)]
        for positions, codes in self.placements(window):
            buckets[int(positions.max())].append((positions, codes))
        arr = np.zeros((1, 0), dtype=dtype)
        symbols = np.arange(self.k, dtype=dtype)
        for j in range(n):
            rows = arr.shape[0]
            arr = np.concatenate([np.repeat(arr, self.k, axis=0),
                                  np.tile(symbols, rows)[:, None]], axis=1)
            if buckets[j]:
                keep = np.ones(arr.shape[0], dtype=bool)
                for positions, codes in buckets[j]:
                    keep &= ~self.violates(arr, positions, codes)
                arr = arr[keep]
        arr.setflags(write=False)
        self._cache[key] = arr
        return arr

    def locally_allowed(self, window: FiniteSubset, symbols: Sequence[int]) -> bool:
        row = np.asarray(symbols)[None, :]
        return not any(self.violates(row, positions, codes)[0]
                       for positions, codes in self.placements(window))

    def allowed_patterns(self, window: FiniteSubset) -> list[WindowPattern]:
        """Every locally allowed pattern on ``window``.

        On Z, interval windows are certified extendable (or not) through the
        transfer graph; elsewhere ``certified_extendable`` is ``None``.
        """
        arr = self.pattern_array(window)
        if arr.shape[0] == 0:
            raise EmptySystem(f"no allowed pattern on window {window.elements}")
        ext = self.extendable_mask(window, arr)
        return [WindowPattern(window, tuple(int(v) for v in row),
                              None if ext is None else bool(e))
                for row, e in zip(arr, ext if ext is not None else [None] * len(arr))]

    def extendable_mask(self, window: FiniteSubset, arr: np.ndarray) -> np.ndarray | None:
        from .transfer import NotRecodable, extendable_rows
        g = self.group
        if g.kind != "lattice" or g.rank != 1:
            return None
        coords = [e[0] for e in window.elements]
        if coords != list(range(coords[0], coords[0] + len(coords))):
            return None
        try:
            return extendable_rows(self, arr)
        except NotRecodable:
            return None

    def extendable_array(self, window: FiniteSubset) -> np.ndarray:
        """Allowed patterns that extend to points of X (certified on Z intervals)."""
        key = ("extendable", window.elements)
        if key in self._cache:
            return self._cache[key]
        arr = self.pattern_array(window)
        mask = self.extendable_mask(window, arr)
        if mask is not None:
            arr = arr[mask]
        arr.setflags(write=False)
        self._cache[key] = arr
        return arr

    def point_patterns(self, window: FiniteSubset) -> tuple[np.ndarray, bool]:
        """Restrictions of points of X to ``window`` and whether the list is certified.

        On Z the convex hull is enumerated, filtered by extendability and
        projected; on a finite group X itself is enumerated; on Z^2 locally
        allowed patterns stand in for X (not certified).
        """
        key = ("points", window.elements)
        if key in self._cache:
            return self._cache[key]
        g = self.group
        if not self.forbidden:
            out = (self.pattern_array(window), True)
        elif g.kind == "cyclic":
            whole = FiniteSubset.of(g, [(r,) for r in range(g.modulus)])
            full = self.pattern_array(whole)
            cols = [whole.elements.index(e) for e in window.elements]
            out = (_unique_rows(full[:, cols]), True)
        elif g.rank == 1:
            lo, hi = window.elements[0][0], window.elements[-1][0]
            hull = FiniteSubset.of(g, [(n,) for n in range(lo, hi + 1)])
            arr = self.extendable_array(hull)
            certified = self.extendable_mask(hull, arr[:0]) is not None
            cols = [e[0] - lo for e in window.elements]
            out = (arr if len(cols) == len(hull) else _unique_rows(arr[:, cols]), certified)
        else:
            out = (self.pattern_array(window), False)
        out[0].setflags(write=False)
        self._cache[key] = out
        return out

    # -- metric on patterns --------------------------------------------------

    def rho_interval(self, x: WindowPattern, y: WindowPattern, R: int) -> Bracket:
        ball = self.group.ball(R)
        if not (ball.issubset(x.window) and ball.issubset(y.window)):
            raise WindowTooSmall(f"ball({R}) is not inside both windows")
        xd, yd = x.as_dict(), y.as_dict()
        lo = math.fsum(float(self.weight(g)) for g in ball if xd[g] != yd[g])
        hi = lo + self.tail(R)
        return Bracket(max(0.0, down(lo)) if lo else 0.0, min(1.0, up(hi)))

    def pattern(self, window: FiniteSubset, symbols) -> WindowPattern:
        syms = tuple(s if isinstance(s, int) else self.symbol_index(s) for s in symbols)
        if len(syms) != len(window):
            raise ValueError("pattern length does not match the window")
        return WindowPattern(window, syms)

    def __repr__(self) -> str:
        return f"ShiftSystem({self.name or '?'}, group={self.group.name}, k={self.k})"


def _unique_rows(arr: np.ndarray) -> np.ndarray:
    if arr.shape[0] == 0:
        return arr
    return np.unique(arr, axis=0)


def forbid(group: GroupModel, shape, pattern) -> Forbidden:
    return Forbidden(tuple(group.element(s) for s in shape), tuple(pattern))


def full_shift(group: GroupModel, k: int, R_max: int = 8) -> ShiftSystem:
    return ShiftSystem(group, tuple(str(i) for i in range(k)), (), R_max, name=f"full-shift-{k}")


def golden_mean(group: GroupModel, R_max: int = 8) -> ShiftSystem:
    fbs = [forbid(group, [g0, gen], [1, 1])
           for g0 in [group.identity] for gen in group.generators]
    return ShiftSystem(group, ("0", "1"), tuple(fbs), R_max, name="golden-mean")


def fixed_point(group: GroupModel, R_max: int = 8) -> ShiftSystem:
    """Two symbols with '1' forbidden outright: a single fixed point."""
    return ShiftSystem(group, ("0", "1"), (forbid(group, [group.identity], [1]),), R_max,
                       name="fixed-point")


def periodic_orbit(m: int, R_max: int = 8) -> ShiftSystem:
    """The orbit of the sequence n -> n mod m: symbol b may follow a only if b = a + 1 mod m."""
    from .groups import integers
    Z = integers()
    fbs = tuple(forbid(Z, [0, 1], [a, b]) for a in range(m) for b in range(m) if b != (a + 1) % m)
    return ShiftSystem(Z, tuple(str(i) for i in range(m)), fbs, R_max, name=f"periodic-{m}")


def element_key(g: Element) -> str:
    return ",".join(str(v) for v in g)
