"""Cylinder covers and partitions of a subshift.

Every member of a :class:`CoverSpec` is a union of cylinders over one common
window ``W0``.  Members are stored as sets of pattern codes (base-k integers of
the window symbols), so deciding which members contain a point only needs the
point's ``W0``-pattern.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import product

import numpy as np

from .groups import FiniteSubset


class NotCovered(ValueError):
    """Some point lies in no member of the cover."""


@dataclass(frozen=True, eq=False)
class CoverSpec:
    window: FiniteSubset
    members: tuple  # tuple of frozensets of pattern codes
    kind: str  # "partition", "open" or "closed"
    k: int
    name: str = ""
    radius: int | None = None  # set for window partitions over ball(radius)
    _lookup: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        if self.kind not in ("partition", "open", "closed"):
            raise ValueError(f"unknown cover kind {self.kind!r}")
        if not self.members:
            raise ValueError("a cover needs at least one member")
        if self.kind == "partition":
            seen: set = set()
            for m in self.members:
                if seen & m:
                    raise ValueError("partition members overlap")
                seen |= m

    def __len__(self):
        return len(self.members)

    @property
    def is_partition(self) -> bool:
        return self.kind == "partition"

    @property
    def is_trivial(self) -> bool:
        return len(self.members) == 1

    def _table(self):
        if "table" not in self._lookup:
            codes = sorted(set().union(*self.members))
            codes_arr = np.array(codes, dtype=np.int64)
            mask = np.zeros((len(codes), len(self.members)), dtype=bool)
            where = {c: i for i, c in enumerate(codes)}
            for j, m in enumerate(self.members):
                for c in m:
                    mask[where[c], j] = True
            self._lookup["table"] = (codes_arr, mask)
        return self._lookup["table"]

    def codes(self, rows: np.ndarray) -> np.ndarray:
        # integer matmul has no BLAS path; Horner over columns is much faster
        out = np.zeros(rows.shape[:-1], dtype=np.int64)
        for j in range(rows.shape[-1] - 1, -1, -1):
            out *= self.k
            out += rows[..., j]
        return out

    def membership(self, rows: np.ndarray) -> np.ndarray:
        """Boolean array ``rows.shape[:-1] + (len(members),)``; raises if uncovered."""
        codes_arr, mask = self._table()
        c = self.codes(rows)
        pos = np.clip(np.searchsorted(codes_arr, c), 0, len(codes_arr) - 1)
        found = codes_arr[pos] == c
        if not found.all():
            raise NotCovered(f"{int((~found).sum())} window patterns lie in no member of {self.name}")
        return mask[pos]

    def cell_index(self, rows: np.ndarray) -> np.ndarray:
        """Partition cell of each pattern (partitions only)."""
        if not self.is_partition:
            raise ValueError("cell_index needs a partition")
        size = self.k ** len(self.window)
        if size > 2 ** 20:
            return np.argmax(self.membership(rows), axis=-1)
        if "dense" not in self._lookup:
            codes_arr, mask = self._table()
            dense = np.full(size, -1, dtype=np.int64)
            dense[codes_arr] = np.argmax(mask, axis=1)
            self._lookup["dense"] = dense
        codes = rows[..., 0] if rows.shape[-1] == 1 else self.codes(rows)
        out = self._lookup["dense"][codes]
        if (out < 0).any():
            raise NotCovered(f"{int((out < 0).sum())} window patterns lie in no member of {self.name}")
        return out

    def validate(self, sys) -> None:
        """Check that the members cover every allowed window pattern."""
        self.membership(sys.pattern_array(self.window))

    def diam_upper(self, sys) -> float:
        """Upper bound on the largest member diameter."""
        if self.radius is not None and self.is_partition:
            return sys.tail(self.radius)
        return 1.0

    def lebesgue_lower(self, sys) -> float:
        """Lower bound on a Lebesgue number (0 when nothing better is known).

        Points closer than the smallest weight of ``ball(r)`` agree on it, so
        a window partition over ``ball(r)`` has Lebesgue number at least that.
        """
        if self.radius is not None and self.is_partition:
            return float(sys.weight((self.radius,) + (0,) * (sys.group.dim - 1)))
        if self.is_trivial:
            return 1.0
        return 0.0

    def to_json(self) -> dict:
        return {"name": self.name, "kind": self.kind, "members": len(self.members),
                "window": [list(e) for e in self.window.elements]}


def _all_codes(sys, window: FiniteSubset) -> set:
    codes = sys.pattern_array(window).astype(np.int64) @ sys.code_powers(len(window))
    return set(int(c) for c in codes)


def standard_partition(sys) -> CoverSpec:
    """One cell per symbol at the identity."""
    window = sys.group.ball(0)
    members = tuple(frozenset([a]) for a in range(sys.k))
    return CoverSpec(window, members, "partition", sys.k, name="standard", radius=0)


def window_partition(sys, radius: int) -> CoverSpec:
    """One cell per locally allowed pattern on ``ball(radius)``."""
    window = sys.group.ball(radius)
    members = tuple(frozenset([c]) for c in sorted(_all_codes(sys, window)))
    return CoverSpec(window, members, "partition", sys.k, name=f"window-r{radius}", radius=radius)


def trivial_cover(sys) -> CoverSpec:
    """The one-member cover {X}."""
    window = sys.group.ball(0)
    return CoverSpec(window, (frozenset(range(sys.k)),), "partition", sys.k, name="trivial")


def symbol_cover(sys, groups, kind: str | None = None) -> CoverSpec:
    """Cover by sets of symbols at the identity; overlapping sets give an open cover."""
    window = sys.group.ball(0)
    members = tuple(frozenset(sys.symbol_index(s) if isinstance(s, str) else int(s) for s in g)
                    for g in groups)
    if kind is None:
        total = sum(len(m) for m in members)
        kind = "partition" if total == len(frozenset().union(*members)) else "open"
    cover = CoverSpec(window, members, kind, sys.k, name="symbols")
    cover.validate(sys)
    return cover


def partition_from_codes(sys, window: FiniteSubset, labels: dict, name: str = "") -> CoverSpec:
    """Partition whose cell of pattern code ``c`` is ``labels[c]``."""
    cells: dict = {}
    for c, lab in labels.items():
        cells.setdefault(lab, set()).add(int(c))
    members = tuple(frozenset(v) for _, v in sorted(cells.items()))
    return CoverSpec(window, members, "partition", sys.k, name=name)


def coarse_partitions(sys, max_cells: int | None = None) -> list[CoverSpec]:
    """All partitions of the alphabet into symbol blocks (tiny alphabets only)."""
    k = sys.k
    if k > 6:
        raise ValueError("alphabet too large to list its partitions")
    out = []
    for labels in product(range(k), repeat=k):
        # canonical: first appearance order
        canon, seen = [], {}
        for v in labels:
            canon.append(seen.setdefault(v, len(seen)))
        if tuple(canon) != labels:
            continue
        if max_cells is not None and len(seen) > max_cells:
            continue
        out.append(symbol_cover(sys, [[a for a in range(k) if labels[a] == b]
                                      for b in range(len(seen))], kind="partition"))
    return out


def log_size(cover: CoverSpec) -> float:
    return math.log(len(cover))
