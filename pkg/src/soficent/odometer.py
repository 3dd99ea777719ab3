"""The profinite (odometer) action of Z on the boundary of a coset tree.

A point is a compatible sequence of cosets ``(x_0, ..., x_D)`` with
``x_k in Z / m_k Z``; at truncation depth ``D`` it is determined by the
residue ``a = x_D mod m_D``.  The metric is ``rho(x, y) = 2^{-min{k : x_k != y_k}}``.
Two infinite points whose truncations agree are within ``2^{-(D+1)}``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .brackets import Bracket
from .groups import SubgroupChain


@dataclass(frozen=True)
class OdometerSystem:
    chain: SubgroupChain
    depth: int

    def __post_init__(self):
        if self.depth < 1:
            raise ValueError("depth must be >= 1")
        if self.depth >= len(self.chain):
            raise ValueError(f"chain {self.chain.indices} is shorter than depth {self.depth}")

    @property
    def size(self) -> int:
        return self.chain.indices[self.depth]

    @property
    def name(self) -> str:
        return f"odometer(depth={self.depth})"

    def points(self) -> list[tuple]:
        return [self.coset_sequence(a) for a in range(self.size)]

    def coset_sequence(self, a: int) -> tuple:
        return tuple(a % m for m in self.chain.indices[: self.depth + 1])

    def residue(self, x: tuple) -> int:
        return x[-1]

    def act(self, g: int, x: tuple) -> tuple:
        """Adding ``g`` with carries."""
        return self.coset_sequence((self.residue(x) + g) % self.size)

    def first_difference(self, x: tuple, y: tuple) -> int | None:
        for k, (a, b) in enumerate(zip(x, y)):
            if a != b:
                return k
        return None

    def rho(self, x: tuple, y: tuple) -> float:
        """Distance between the truncations (0 when they agree)."""
        k = self.first_difference(x, y)
        return 0.0 if k is None else 2.0 ** -k

    @property
    def tail(self) -> float:
        return 2.0 ** -(self.depth + 1)

    def rho_interval(self, x: tuple, y: tuple) -> Bracket:
        """Distance bracket between any infinite points with these truncations."""
        k = self.first_difference(x, y)
        if k is None:
            return Bracket(0.0, self.tail)
        return Bracket.point(2.0 ** -k)

    def is_equicontinuous(self) -> bool:
        """Exhaustive check that ``delta = eps = 2^{-j}`` works for every level ``j``."""
        pts = self.points()
        for j in range(1, self.depth + 1):
            eps = 2.0 ** -j
            for x in pts:
                for y in pts:
                    if self.rho(x, y) < eps:
                        for g in range(self.size):
                            if self.rho(self.act(g, x), self.act(g, y)) >= eps:
                                return False
        return True

    def is_isometric(self) -> bool:
        pts = self.points()
        return all(self.rho(self.act(1, x), self.act(1, y)) == self.rho(x, y)
                   for x in pts for y in pts)

    def expansive_search(self) -> Bracket:
        """Bracket on ``inf_{x != y} sup_g rho(gx, gy)`` over the untruncated system.

        Pairs sharing their depth-``D`` truncation stay within ``2^{-(D+1)}``
        forever, so no positive constant is certified.
        """
        return Bracket(0.0, self.tail)

    def as_shift(self, R_max: int = 8):
        """The finite-depth orbit as a subshift of Z: symbol ``a`` is followed by ``a + 1``.

        Conjugate to the rotation of ``Z / m_D`` and used by the microstate
        pipelines.
        """
        from .shifts import periodic_orbit

        sys = periodic_orbit(self.size, R_max)
        object.__setattr__(sys, "name", f"odometer-shift(depth={self.depth})")
        return sys


def dyadic_odometer(depth: int) -> OdometerSystem:
    return OdometerSystem(SubgroupChain.dyadic(depth), depth)
