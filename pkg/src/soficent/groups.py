"""Supported groups: Z, Z^2 and Z/mZ.

Elements are always tuples of ints in normal form: ``(n,)`` for Z,
``(a, b)`` for Z^2 and ``(r,)`` with ``0 <= r < m`` for Z/mZ.  Helpers accept
bare ints for the rank-one groups.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

Element = tuple


@dataclass(frozen=True)
class GroupModel:
    kind: str  # "lattice" or "cyclic"
    rank: int = 1
    modulus: int = 0

    def __post_init__(self):
        if self.kind == "lattice" and self.rank not in (1, 2):
            raise ValueError("only Z and Z^2 are supported")
        if self.kind == "cyclic" and self.modulus < 1:
            raise ValueError("cyclic group needs modulus >= 1")
        if self.kind not in ("lattice", "cyclic"):
            raise ValueError(f"unknown group kind {self.kind!r}")

    @classmethod
    def parse(cls, text: str) -> "GroupModel":
        text = text.strip()
        if text == "Z":
            return integers()
        if text == "Z2":
            return lattice2()
        m = re.fullmatch(r"Z/(\d+)", text)
        if m:
            return cyclic(int(m.group(1)))
        raise ValueError(f"unknown group specification {text!r}")

    @property
    def name(self) -> str:
        if self.kind == "cyclic":
            return f"Z/{self.modulus}"
        return "Z" if self.rank == 1 else "Z2"

    @property
    def is_finite(self) -> bool:
        return self.kind == "cyclic"

    @property
    def dim(self) -> int:
        return 1 if self.kind == "cyclic" else self.rank

    @property
    def identity(self) -> Element:
        return (0,) * self.dim

    @property
    def generators(self) -> list[Element]:
        if self.kind == "cyclic":
            return [self.element(1)]
        return [tuple(int(i == j) for i in range(self.rank)) for j in range(self.rank)]

    @property
    def generator_names(self) -> list[str]:
        if self.dim == 1:
            return ["1"]
        return ["e1", "e2"]

    def element(self, x) -> Element:
        if isinstance(x, (tuple, list)):
            x = tuple(int(v) for v in x)
        else:
            x = (int(x),)
        if len(x) != self.dim:
            raise ValueError(f"{x} is not an element of {self.name}")
        if self.kind == "cyclic":
            return (x[0] % self.modulus,)
        return x

    def add(self, g: Element, h: Element) -> Element:
        return self.element(tuple(a + b for a, b in zip(g, h)))

    def neg(self, g: Element) -> Element:
        return self.element(tuple(-a for a in g))

    def norm(self, g: Element) -> int:
        """Word length in the standard generators (l1 length on lattices)."""
        if self.kind == "cyclic":
            r = g[0] % self.modulus
            return min(r, self.modulus - r)
        return sum(abs(a) for a in g)

    def ball(self, radius: int) -> "FiniteSubset":
        if radius < 0:
            raise ValueError("radius must be >= 0")
        if self.kind == "cyclic":
            elems = [(r,) for r in range(self.modulus) if self.norm((r,)) <= radius]
        elif self.rank == 1:
            elems = [(n,) for n in range(-radius, radius + 1)]
        else:
            elems = [(a, b) for a in range(-radius, radius + 1)
                     for b in range(-radius, radius + 1) if abs(a) + abs(b) <= radius]
        return FiniteSubset.of(self, elems)

    def subset(self, elems: Iterable) -> "FiniteSubset":
        return FiniteSubset.of(self, elems)

    def box(self, n: int, anchor=None) -> "FiniteSubset":
        """[0, n) or [0, n)^2, translated by ``anchor``."""
        anchor = self.identity if anchor is None else self.element(anchor)
        if self.kind == "cyclic":
            elems = [(a,) for a in range(min(n, self.modulus))]
        elif self.rank == 1:
            elems = [(a,) for a in range(n)]
        else:
            elems = [(a, b) for a in range(n) for b in range(n)]
        return FiniteSubset.of(self, [self.add(e, anchor) for e in elems])

    def folner(self, n: int, anchor=None) -> "FolnerSet":
        if n < 1:
            raise ValueError("Folner index must be >= 1")
        base = self.box(n, anchor)
        defect = {}
        for name, g in zip(self.generator_names, self.generators):
            shifted = {self.add(g, f) for f in base.elements}
            sym = shifted.symmetric_difference(base.elements)
            defect[name] = Fraction(len(sym), len(base))
        return FolnerSet(base=base, index=n, defect=defect)


@dataclass(frozen=True)
class FiniteSubset:
    group: GroupModel
    elements: tuple

    @classmethod
    def of(cls, group: GroupModel, elems: Iterable) -> "FiniteSubset":
        normed = sorted({group.element(e) for e in elems})
        if not normed:
            raise ValueError("finite subsets must be non-empty")
        return cls(group, tuple(normed))

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, g) -> bool:
        return self.group.element(g) in self.as_set

    @property
    def as_set(self) -> frozenset:
        return frozenset(self.elements)

    def issubset(self, other: "FiniteSubset") -> bool:
        return self.as_set <= other.as_set

    def union(self, other: "FiniteSubset") -> "FiniteSubset":
        return FiniteSubset.of(self.group, self.elements + other.elements)

    def translate(self, g) -> "FiniteSubset":
        g = self.group.element(g)
        return FiniteSubset.of(self.group, [self.group.add(e, g) for e in self.elements])

    def sumset(self, other: "FiniteSubset") -> "FiniteSubset":
        return FiniteSubset.of(self.group, [self.group.add(a, b)
                                            for a in self.elements for b in other.elements])

    @property
    def radius(self) -> int:
        return max(self.group.norm(g) for g in self.elements)


@dataclass(frozen=True)
class FolnerSet:
    base: FiniteSubset
    index: int
    defect: dict = field(hash=False, compare=False)


@dataclass(frozen=True)
class SubgroupChain:
    """Chain Z = G_0 >= G_1 >= ... with G_k = m_k Z."""

    indices: tuple

    def __post_init__(self):
        idx = tuple(int(m) for m in self.indices)
        object.__setattr__(self, "indices", idx)
        if not idx or idx[0] != 1:
            raise ValueError("chain must start with index 1")
        for a, b in zip(idx, idx[1:]):
            if b <= a or b % a:
                raise ValueError(f"chain indices must strictly increase by divisibility: {idx}")

    @classmethod
    def parse(cls, text: str) -> "SubgroupChain":
        return cls(tuple(int(t) for t in text.split(",")))

    @classmethod
    def dyadic(cls, depth: int) -> "SubgroupChain":
        return cls(tuple(2 ** k for k in range(depth + 1)))

    @property
    def group(self) -> GroupModel:
        return integers()

    def __len__(self):
        return len(self.indices)

    def coset_space(self, level: int) -> "CosetSpace":
        if not 0 <= level < len(self.indices):
            raise ValueError(f"level {level} outside chain of length {len(self.indices)}")
        return CosetSpace(self.indices[level])


@dataclass(frozen=True)
class CosetSpace:
    """Z / mZ with the left action g.(a mod m) = (g + a) mod m."""

    size: int

    @property
    def cosets(self) -> list[int]:
        return list(range(self.size))

    def act(self, g: int, a: int) -> int:
        return (g + a) % self.size

    def permutation(self, g: int) -> list[int]:
        return [self.act(g, a) for a in range(self.size)]


def integers() -> GroupModel:
    return GroupModel("lattice", 1)


def lattice2() -> GroupModel:
    return GroupModel("lattice", 2)


def cyclic(m: int) -> GroupModel:
    return GroupModel("cyclic", 1, m)


def as_elements(group: GroupModel, elems: Sequence) -> list[Element]:
    return [group.element(e) for e in elems]
