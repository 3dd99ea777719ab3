"""Extended reals and certified brackets.

Entropy quantities live in ``[-inf, inf]`` with two conventions:

* ``log 0 = -inf``;
* ``r1 + r2 = -inf`` as soon as either summand is ``-inf`` (even against
  ``+inf``), and ``+inf`` if either is ``+inf`` and neither is ``-inf``.

Plain Python floats carry the values; the helpers below make the
conventions explicit where IEEE arithmetic disagrees (``-inf + inf`` is
``nan`` in IEEE).  A :class:`Bracket` is a closed interval ``[lo, hi]`` whose
endpoints are rounded outward after every inexact operation, so a bracket
computed from exact counts always contains the exact real value.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

NEG_INF = float("-inf")
POS_INF = float("inf")


def ext_add(a: float, b: float) -> float:
    if a == NEG_INF or b == NEG_INF:
        return NEG_INF
    if a == POS_INF or b == POS_INF:
        return POS_INF
    return a + b


def ext_sum(values: Iterable[float]) -> float:
    total = 0.0
    for v in values:
        total = ext_add(total, v)
    return total


def ext_log(x: float) -> float:
    if x < 0:
        raise ValueError(f"log of negative number {x}")
    if x == 0:
        return NEG_INF
    return math.log(x)


def down(x: float) -> float:
    # zero only arises as log 1, which is exact
    if math.isinf(x) or x == 0:
        return x
    return math.nextafter(x, NEG_INF)


def up(x: float) -> float:
    if math.isinf(x) or x == 0:
        return x
    return math.nextafter(x, POS_INF)


def fmt(x: float) -> float | str:
    """JSON-friendly value: infinities become strings, floats keep 12 digits."""
    if x == NEG_INF:
        return "-inf"
    if x == POS_INF:
        return "inf"
    return float(f"{x:.12g}")


@dataclass(frozen=True)
class Bracket:
    lo: float
    hi: float

    def __post_init__(self):
        if math.isnan(self.lo) or math.isnan(self.hi):
            raise ValueError("bracket endpoints must not be nan")
        if self.lo > self.hi:
            raise ValueError(f"empty bracket [{self.lo}, {self.hi}]")

    @classmethod
    def point(cls, x: float) -> "Bracket":
        return cls(x, x)

    @classmethod
    def from_counts(cls, lo: int, hi: int) -> "Bracket":
        return cls(float(lo), float(hi))

    @property
    def width(self) -> float:
        if self.hi == self.lo:
            return 0.0
        return self.hi - self.lo

    @property
    def mid(self) -> float:
        if math.isinf(self.lo) or math.isinf(self.hi):
            return self.lo if self.lo == self.hi else (NEG_INF if self.lo == NEG_INF else POS_INF)
        return 0.5 * (self.lo + self.hi)

    def contains(self, x: float) -> bool:
        return self.lo <= x <= self.hi

    def overlaps(self, other: "Bracket") -> bool:
        return self.lo <= other.hi and other.lo <= self.hi

    def __add__(self, other: "Bracket") -> "Bracket":
        return Bracket(down(ext_add(self.lo, other.lo)), up(ext_add(self.hi, other.hi)))

    def log_per(self, d: int) -> "Bracket":
        """``(1/d) log`` of a bracket on a non-negative count."""
        lo = ext_log(self.lo)
        hi = ext_log(self.hi)
        return Bracket(down(lo / d) if not math.isinf(lo) else lo,
                       up(hi / d) if not math.isinf(hi) else hi)

    def clamp_hi(self, ceiling: float) -> "Bracket":
        return Bracket(min(self.lo, ceiling), min(self.hi, ceiling))

    def to_json(self) -> dict:
        return {"lo": fmt(self.lo), "hi": fmt(self.hi)}

    def __repr__(self) -> str:
        return f"[{self.lo:.6g}, {self.hi:.6g}]"


def bmax(brackets: Iterable[Bracket]) -> Bracket:
    bs = list(brackets)
    if not bs:
        return Bracket(NEG_INF, NEG_INF)
    return Bracket(max(b.lo for b in bs), max(b.hi for b in bs))


def bmin(brackets: Iterable[Bracket]) -> Bracket:
    bs = list(brackets)
    if not bs:
        return Bracket(POS_INF, POS_INF)
    return Bracket(min(b.lo for b in bs), min(b.hi for b in bs))
