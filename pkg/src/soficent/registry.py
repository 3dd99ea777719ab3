"""Built-in systems, system-definition files and default schedules."""

from __future__ import annotations

import json
import math
import re
from pathlib import Path

from .groups import GroupModel, SubgroupChain, integers
from .odometer import OdometerSystem, dyadic_odometer
from .shifts import ShiftSystem, forbid, full_shift, golden_mean, fixed_point
from .sofic import chain_map, cyclic_map, finite_group_map, torus_map

BUILTINS = ("full-shift-k", "golden-mean", "fixed-point", "odometer-2adic")
ODOMETER_DEPTH = 6


class ConfigError(ValueError):
    """Bad system reference, schedule or config file."""


def _split_group(name: str) -> tuple[str, GroupModel]:
    if "@" in name:
        base, _, gtext = name.partition("@")
        try:
            return base, GroupModel.parse(gtext)
        except ValueError as exc:
            raise ConfigError(str(exc)) from None
    return name, integers()


def builtin(name: str, depth: int = ODOMETER_DEPTH):
    """``full-shift-k``, ``golden-mean``, ``fixed-point`` (optionally ``@Z2`` or ``@Z/m``)
    or ``odometer-2adic``."""
    base, group = _split_group(name.strip())
    if base == "odometer-2adic":
        if group != integers():
            raise ConfigError("the odometer acts on Z only")
        if not 1 <= depth <= 12:
            raise ConfigError("odometer depth must lie in 1..12")
        return dyadic_odometer(depth)
    m = re.fullmatch(r"full-shift-(\d+)", base)
    if m:
        k = int(m.group(1))
        if k < 1:
            raise ConfigError("full shift needs k >= 1")
        return full_shift(group, k)
    if base == "golden-mean":
        return golden_mean(group)
    if base == "fixed-point":
        return fixed_point(group)
    raise ConfigError(f"unknown system {name!r}; built-ins: {', '.join(BUILTINS)}")


def system_from_dict(data: dict) -> ShiftSystem:
    try:
        group = GroupModel.parse(data["group"])
        alphabet = [str(a) for a in data["alphabet"]]
        index = {a: i for i, a in enumerate(alphabet)}
        fbs = []
        for fb in data.get("forbidden", []):
            shape = fb["shape"]
            if group.dim == 1:
                shape = [s if isinstance(s, list) else [s] for s in shape]
            fbs.append(forbid(group, shape, [index[str(p)] for p in fb["pattern"]]))
        return ShiftSystem(group, tuple(alphabet), tuple(fbs), int(data.get("R_max", 8)),
                           name=str(data.get("name", "custom")))
    except (KeyError, TypeError) as exc:
        raise ConfigError(f"malformed system definition: {exc!r}") from None
    except ValueError as exc:
        raise ConfigError(str(exc)) from None


def load_system(ref: str, depth: int = ODOMETER_DEPTH):
    """A built-in name or a path to a JSON system definition."""
    path = Path(ref)
    if ref.endswith(".json") or path.is_file():
        try:
            data = json.loads(path.read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read system file {ref}: {exc}") from None
        return system_from_dict(data)
    return builtin(ref, depth)


def default_R(sys) -> int:
    if isinstance(sys, OdometerSystem):
        return 6
    g = sys.group
    if g.kind == "cyclic":
        return min(sys.R_max, g.modulus // 2)
    return 6 if g.rank == 1 else 8


def odometer_levels(depth: int, target: float = 0.05) -> tuple[int, int]:
    """Two dyadic levels whose coset spaces hold the depth-``depth`` orbit and
    make ``log(2^depth) / d`` at most ``target``."""
    level = depth + 1
    while depth * math.log(2) / 2 ** level > target:
        level += 1
    return level, level + 1


def _torus_shape(d: int) -> tuple[int, int]:
    a = max(x for x in range(1, math.isqrt(d) + 1) if d % x == 0)
    return a, d // a


def default_d(sys) -> tuple:
    if isinstance(sys, OdometerSystem):
        return tuple(2 ** level for level in odometer_levels(sys.depth))
    g = sys.group
    if g.kind == "cyclic":
        return tuple(g.modulus * c for c in (1, 2, 3))
    if g.rank == 2:
        return (4, 6, 9)
    return (4, 8, 12) if sys.k <= 2 else (4, 6, 8)


def sofic_maps(sys, d_list) -> list:
    out = []
    if isinstance(sys, OdometerSystem):
        for d in d_list:
            level = int(d).bit_length() - 1
            if d != 2 ** level or level <= sys.depth:
                raise ConfigError(f"odometer maps need d a power of two above {2 ** sys.depth}, got {d}")
            out.append(chain_map(SubgroupChain.dyadic(level), level))
        return out
    g = sys.group
    for d in d_list:
        d = int(d)
        if d < 1:
            raise ConfigError("d must be positive")
        if g.kind == "cyclic":
            if d % g.modulus:
                raise ConfigError(f"d={d} is not a multiple of {g.modulus}")
            out.append(finite_group_map(g.modulus, d // g.modulus))
        elif g.rank == 2:
            out.append(torus_map(*_torus_shape(d)))
        else:
            out.append(cyclic_map(d))
    return out


def default_schedule(sys, d_list=None, F_radii=(1,), delta_list=(0.5, 0.25), eps_list=None,
                     R=None, **extra):
    from .estimators import Schedule, symbolic

    sym = symbolic(sys)
    d_list = tuple(d_list) if d_list else default_d(sys)
    R = default_R(sys) if R is None else int(R)
    eps_list = tuple(eps_list) if eps_list else (0.99 * sym.w0,)
    try:
        sched = Schedule(sigmas=sofic_maps(sys, d_list),
                         F_list=[sym.group.ball(int(r)) for r in sorted(F_radii)],
                         delta_list=tuple(delta_list), eps_list=eps_list, R=R, **extra)
        sched.validate(sym)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    return sched
