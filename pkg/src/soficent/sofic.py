"""Sofic approximations sigma: G -> Sym(d) and their goodness defects.

Permutations are numpy integer arrays on ``{0, ..., d-1}`` with
``perm[a]`` the image of ``a``; the JSON form uses 1-based images.
The map is extended from generators to arbitrary elements along the additive
normal form ``g = n_1 e_1 + n_2 e_2``: ``sigma_g = sigma_{e1}^{n_1} sigma_{e2}^{n_2}``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .groups import FiniteSubset, GroupModel, SubgroupChain, cyclic, integers, lattice2


def compose(p: np.ndarray, q: np.ndarray) -> np.ndarray:
    """(p o q)[a] = p[q[a]]."""
    return p[q]


def perm_power(p: np.ndarray, n: int) -> np.ndarray:
    d = len(p)
    if n < 0:
        inv = np.empty_like(p)
        inv[p] = np.arange(d)
        p, n = inv, -n
    result = np.arange(d)
    base = p
    while n:
        if n & 1:
            result = base[result]
        base = base[base]
        n >>= 1
    return result


def is_permutation(p: np.ndarray) -> bool:
    return np.array_equal(np.sort(p), np.arange(len(p)))


@dataclass(frozen=True, eq=False)
class SoficMap:
    group: GroupModel
    d: int
    generator_perms: dict
    label: str = ""
    _cache: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        if self.d < 1:
            raise ValueError("d must be >= 1")
        names = self.group.generator_names
        if sorted(self.generator_perms) != sorted(names):
            raise ValueError(f"need permutations for generators {names}")
        perms = {}
        for name, p in self.generator_perms.items():
            arr = np.asarray(p, dtype=np.int64)
            if arr.shape != (self.d,) or not is_permutation(arr):
                raise ValueError(f"generator {name!r} is not a permutation of {self.d} points")
            arr.setflags(write=False)
            perms[name] = arr
        object.__setattr__(self, "generator_perms", perms)

    def sigma(self, g) -> np.ndarray:
        g = self.group.element(g)
        if g in self._cache:
            return self._cache[g]
        names = self.group.generator_names
        if self.group.kind == "cyclic":
            n = g[0]
            result = perm_power(self.generator_perms[names[0]], n)
        else:
            result = np.arange(self.d)
            # sigma_{e1}^{n1} o sigma_{e2}^{n2}
            for name, n in reversed(list(zip(names, g))):
                result = compose(perm_power(self.generator_perms[name], n), result)
        result.setflags(write=False)
        self._cache[g] = result
        return result

    def to_json(self) -> str:
        gens = {name: [int(v) + 1 for v in p] for name, p in self.generator_perms.items()}
        return json.dumps({"d": self.d, "gens": gens}, sort_keys=True)

    @classmethod
    def from_json(cls, group: GroupModel, text: str | dict) -> "SoficMap":
        data = json.loads(text) if isinstance(text, str) else text
        d = int(data["d"])
        gens = {}
        for name, images in data["gens"].items():
            arr = np.asarray(images, dtype=np.int64) - 1
            gens[name] = arr
        return cls(group, d, gens, label=f"table(d={d})")

    @classmethod
    def from_tables(cls, group: GroupModel, gens: dict) -> "SoficMap":
        """User-supplied (possibly non-homomorphic) permutation tables, 0-based."""
        d = len(next(iter(gens.values())))
        return cls(group, d, {k: np.asarray(v) for k, v in gens.items()}, label=f"table(d={d})")

    def __repr__(self) -> str:
        return f"SoficMap({self.label or self.group.name}, d={self.d})"


def cyclic_map(d: int) -> SoficMap:
    """Z -> Sym(d), 1 acting as the d-cycle a -> a + 1 mod d."""
    if d < 1:
        raise ValueError("d must be >= 1")
    return SoficMap(integers(), d, {"1": (np.arange(d) + 1) % d}, label=f"cyclic(d={d})")


def torus_map(d1: int, d2: int) -> SoficMap:
    """Z^2 -> Sym(d1*d2) through the quotient Z/d1 x Z/d2; point (a, b) is a*d2 + b."""
    if d1 < 1 or d2 < 1:
        raise ValueError("d1, d2 must be >= 1")
    a, b = np.divmod(np.arange(d1 * d2), d2)
    e1 = ((a + 1) % d1) * d2 + b
    e2 = a * d2 + (b + 1) % d2
    return SoficMap(lattice2(), d1 * d2, {"e1": e1, "e2": e2}, label=f"torus({d1}x{d2})")


def chain_map(chain: SubgroupChain, level: int) -> SoficMap:
    space = chain.coset_space(level)
    perm = np.asarray(space.permutation(1))
    return SoficMap(integers(), space.size, {"1": perm}, label=f"chain(level={level}, d={space.size})")


def finite_group_map(m: int, copies: int) -> SoficMap:
    """Z/m -> Sym(m*copies): disjoint copies of the regular action."""
    d = m * copies
    a = np.arange(d)
    block, r = np.divmod(a, m)
    perm = block * m + (r + 1) % m
    return SoficMap(cyclic(m), d, {"1": perm}, label=f"regular(Z/{m}, copies={copies})")


@dataclass(frozen=True)
class GoodnessReport:
    mult_fraction: dict
    free_fraction: dict

    @property
    def min_mult(self) -> float:
        return min(self.mult_fraction.values(), default=1.0)

    @property
    def min_free(self) -> float:
        return min(self.free_fraction.values(), default=1.0)


def goodness(sigma: SoficMap, F: FiniteSubset) -> GoodnessReport:
    g = sigma.group
    mult, free = {}, {}
    for s in F:
        for t in F:
            st = g.add(s, t)
            mult[(s, t)] = float(np.mean(sigma.sigma(s)[sigma.sigma(t)] == sigma.sigma(st)))
            if s != t:
                free[(s, t)] = float(np.mean(sigma.sigma(s) != sigma.sigma(t)))
    return GoodnessReport(mult, free)
