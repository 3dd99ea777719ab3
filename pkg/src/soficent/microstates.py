"""Microstates: labelings of {0, ..., d-1} and the counting kernels built on them.

A labeling ``omega`` together with a sofic map ``sigma`` yields ``d`` candidate
points ``x_i(g) = omega(sigma_g(i))``.  All kernels work on whole batches of
labelings at once, stored as integer arrays of shape ``(n, d)``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.stats import beta as beta_dist

from .brackets import Bracket
from .covers import CoverSpec
from .groups import FiniteSubset
from .independent import max_independent_set
from .setcover import exact_set_cover, greedy_bracket
from .shifts import ShiftSystem, WindowTooSmall
from .sofic import SoficMap

ENUM_CAP = 2 ** 24
DFS_NODE_CAP = 2 ** 22
EXACT_VERTEX_CAP = 2 ** 13
PRODUCT_CAP = 2 ** 13
REL = 1e-12  # relative widening of float sums before comparing with thresholds
TIE = 1e-9

OUT, UNKNOWN, IN = 0, 1, 2
STATUS_NAMES = {OUT: "OUT", UNKNOWN: "UNKNOWN", IN: "IN"}


class CapExceeded(RuntimeError):
    pass


class MarginViolation(ValueError):
    pass


@dataclass(frozen=True)
class Microstate:
    omega: tuple
    sigma: SoficMap

    def __post_init__(self):
        if len(self.omega) != self.sigma.d:
            raise ValueError(f"labeling has length {len(self.omega)}, sofic map has d={self.sigma.d}")

    @property
    def d(self) -> int:
        return self.sigma.d

    def array(self) -> np.ndarray:
        return np.asarray(self.omega, dtype=np.int64)

    def pullback(self, window: FiniteSubset) -> np.ndarray:
        """``(d, |window|)`` array whose row ``i`` is ``x_i`` restricted to the window."""
        return self.array()[pullback_index(self.sigma, window)]


@dataclass(frozen=True)
class MembershipVerdict:
    status: str
    witness: tuple | None  # the element s of F realizing the largest upper value
    interval: Bracket  # bracket on max_s sqrt(mean_i rho^2(s x_i, x_{sigma_s i}))
    forbidden: bool = False


def pullback_index(sigma: SoficMap, window: FiniteSubset) -> np.ndarray:
    """``idx[i, j] = sigma_{w_j}(i)`` for the window elements ``w_j``."""
    return np.stack([sigma.sigma(g) for g in window.elements], axis=1)


def as_array(points, sigma: SoficMap | None = None) -> np.ndarray:
    if isinstance(points, np.ndarray):
        return points
    rows = [p.omega if isinstance(p, Microstate) else p for p in points]
    d = sigma.d if sigma is not None else (len(rows[0]) if rows else 0)
    return np.asarray(rows, dtype=np.int64).reshape(len(rows), d)


class MicrostateKernel:
    """Precomputed index tables for membership tests of one ``(sys, sigma, F, R)``."""

    def __init__(self, sys: ShiftSystem, sigma: SoficMap, F: FiniteSubset, R: int):
        if R < 0 or R > sys.R_max:
            raise WindowTooSmall(f"R={R} outside the certified range 0..{sys.R_max}")
        if sigma.group != sys.group:
            raise ValueError("sofic map and system live on different groups")
        self.sys, self.sigma, self.F, self.R = sys, sigma, F, R
        g = sys.group
        ball = g.ball(R)
        self.weights = sys.weights(ball)
        self.tail = sys.tail(R)
        self.pairs = []
        for s in F.elements:
            P = np.stack([sigma.sigma(g.add(h, s)) for h in ball.elements], axis=1)
            Q = np.stack([sigma.sigma(h)[sigma.sigma(s)] for h in ball.elements], axis=1)
            self.pairs.append((s, P, Q))
        Rc = R + F.radius
        window = g.ball(Rc)
        idx = pullback_index(sigma, window)
        self.constraints = []
        for positions, codes in sys.placements(window):
            self.constraints.append((idx[:, positions], codes, positions))
        grouped: dict = {}
        for cidx, codes, positions in self.constraints:
            grouped.setdefault((len(positions), codes.tobytes()), [codes, []])[1].append(cidx)
        self.constraint_groups = [(codes, np.unique(np.concatenate(lst), axis=0))
                                  for codes, lst in grouped.values()]

    def forbidden_mask(self, omegas: np.ndarray) -> np.ndarray:
        bad = np.zeros(omegas.shape[0], dtype=bool)
        for codes, cidx in self.constraint_groups:
            powers = self.sys.code_powers(cidx.shape[1])
            c = omegas[:, cidx].astype(np.int64) @ powers
            bad |= np.isin(c, codes).any(axis=1)
        return bad

    def metric_values(self, omegas: np.ndarray):
        """Brackets ``(lo, hi, witness)`` on the max-over-F root-mean-square defect."""
        n, d = omegas.shape
        lo_best = np.zeros(n)
        hi_best = np.zeros(n)
        witness = np.zeros(n, dtype=np.int64)
        for j, (s, P, Q) in enumerate(self.pairs):
            diff = omegas[:, P] != omegas[:, Q]
            lo_i = diff @ self.weights
            hi_i = np.minimum(lo_i + self.tail, 1.0)
            lo_s = np.sqrt(np.mean(lo_i ** 2, axis=1)) * (1 - REL)
            hi_s = np.sqrt(np.mean(hi_i ** 2, axis=1)) * (1 + REL)
            witness = np.where(hi_s > hi_best, j, witness)
            lo_best = np.maximum(lo_best, lo_s)
            hi_best = np.maximum(hi_best, hi_s)
        return lo_best, np.minimum(hi_best, 1.0), witness

    def evaluate(self, omegas: np.ndarray, delta: float):
        """Status codes (OUT/UNKNOWN/IN) for a batch against threshold ``delta``."""
        if not 0 < delta:
            raise ValueError("delta must be positive")
        lo, hi, witness = self.metric_values(omegas)
        status = np.full(omegas.shape[0], UNKNOWN, dtype=np.int8)
        status[hi < delta] = IN
        status[lo >= delta] = OUT
        status[self.forbidden_mask(omegas)] = OUT
        return status, lo, hi, witness


def membership(omega: Microstate, sys: ShiftSystem, F: FiniteSubset, delta: float, R: int) -> MembershipVerdict:
    kernel = MicrostateKernel(sys, omega.sigma, F, R)
    arr = omega.array()[None, :]
    status, lo, hi, witness = kernel.evaluate(arr, delta)
    return MembershipVerdict(STATUS_NAMES[int(status[0])], F.elements[int(witness[0])],
                             Bracket(float(lo[0]), float(hi[0])), bool(kernel.forbidden_mask(arr)[0]))


@dataclass(frozen=True)
class MicrostateSet:
    sigma: SoficMap
    certified_in: np.ndarray
    unknown: np.ndarray
    n_out: int
    method: str  # "brute" or "dfs"

    @property
    def optimistic(self) -> np.ndarray:
        return np.concatenate([self.certified_in, self.unknown], axis=0)

    def microstates(self, which: str = "in") -> list[Microstate]:
        arr = self.certified_in if which == "in" else self.optimistic
        return [Microstate(tuple(int(v) for v in row), self.sigma) for row in arr]


def _labelings(k: int, d: int, start: int, stop: int, dtype) -> np.ndarray:
    """Labelings number ``start..stop-1`` in lexicographic order (omega[0] most significant)."""
    idx = np.arange(start, stop, dtype=np.int64)
    out = np.empty((len(idx), d), dtype=dtype)
    for j in range(d - 1, -1, -1):
        idx, out[:, j] = np.divmod(idx, k)
    return out


def _dtype(k: int):
    return np.int8 if k < 128 else np.int16


def enumerate_microstates(sys: ShiftSystem, sigma: SoficMap, F: FiniteSubset, delta: float, R: int,
                          cap: int = ENUM_CAP, node_cap: int = DFS_NODE_CAP,
                          chunk: int = 2 ** 16) -> MicrostateSet:
    """Every labeling, split into certified-IN, UNKNOWN and (counted) OUT.

    Small spaces are scanned exhaustively; larger ones by depth-first search
    that prunes forbidden pullback patterns, with at most ``node_cap`` nodes.
    """
    kernel = MicrostateKernel(sys, sigma, F, R)
    k, d = sys.k, sigma.d
    total = k ** d
    if total <= cap:
        parts_in, parts_unk, n_out = [], [], 0
        for start in range(0, total, chunk):
            omegas = _labelings(k, d, start, min(total, start + chunk), _dtype(k))
            status = kernel.evaluate(omegas, delta)[0]
            parts_in.append(omegas[status == IN])
            parts_unk.append(omegas[status == UNKNOWN])
            n_out += int((status == OUT).sum())
        return MicrostateSet(sigma, np.concatenate(parts_in), np.concatenate(parts_unk), n_out, "brute")
    leaves = _dfs_labelings(kernel, node_cap)
    if leaves.shape[0] == 0:
        return MicrostateSet(sigma, leaves, leaves, 0, "dfs")
    status = kernel.evaluate(leaves, delta)[0]
    return MicrostateSet(sigma, leaves[status == IN], leaves[status == UNKNOWN],
                         int((status == OUT).sum()), "dfs")


def _dfs_labelings(kernel: MicrostateKernel, node_cap: int) -> np.ndarray:
    sys, sigma = kernel.sys, kernel.sigma
    k, d = sys.k, sigma.d
    # visit points in breadth-first order along the generators so constraints close early
    gens = [sigma.generator_perms[name] for name in sigma.group.generator_names]
    order, seen = [], np.zeros(d, dtype=bool)
    for root in range(d):
        if seen[root]:
            continue
        queue = [root]
        seen[root] = True
        while queue:
            v = queue.pop(0)
            order.append(v)
            for p in gens:
                for u in (int(p[v]), int(np.flatnonzero(p == v)[0])):
                    if not seen[u]:
                        seen[u] = True
                        queue.append(u)
    rank = np.empty(d, dtype=np.int64)
    rank[order] = np.arange(d)
    attached: list[list] = [[] for _ in range(d)]
    for codes, cidx in kernel.constraint_groups:
        powers = k ** np.arange(cidx.shape[1], dtype=np.int64)
        code_set = set(int(c) for c in codes)
        for row in cidx:
            last = int(row[np.argmax(rank[row])])
            attached[last].append((row, powers, codes, code_set))
    omega = np.zeros(d, dtype=np.int64)
    leaves: list[np.ndarray] = []
    nodes = 0
    candidates = np.arange(k, dtype=np.int64)

    def extend(pos: int):
        nonlocal nodes
        nodes += 1
        if nodes > node_cap:
            raise CapExceeded(f"depth-first enumeration exceeded {node_cap} nodes; "
                              "use a smaller d or the sampling estimators")
        if pos == d:
            leaves.append(omega.copy())
            return
        v = order[pos]
        ok = np.ones(k, dtype=bool)
        for row, powers, codes, _ in attached[v]:
            at_v = row == v
            fixed = int(omega[row[~at_v]] @ powers[~at_v])
            c = fixed + candidates * int(powers[at_v].sum())
            ok &= ~np.isin(c, codes)
        for a in np.flatnonzero(ok):
            omega[v] = a
            extend(pos + 1)
        omega[v] = 0

    extend(0)
    if not leaves:
        return np.zeros((0, d), dtype=_dtype(k))
    out = np.array(leaves, dtype=_dtype(k))
    # lexicographic order, matching the exhaustive scan
    return out[np.lexsort(out.T[::-1])]


def empirical_mask(omegas: np.ndarray, sigma: SoficMap, mu, L, delta: float) -> np.ndarray:
    """``max_f |(1/d) sum_i f(x_i) - mu(f)| < delta`` for each labeling in the batch."""
    ok = np.ones(omegas.shape[0], dtype=bool)
    for f in L:
        idx = pullback_index(sigma, f.window)
        freq = f(omegas[:, idx]).mean(axis=1)
        ok &= np.abs(freq - f.mean(mu)) < delta
    return ok


def empirical_check(omega: Microstate, mu, L, delta: float) -> bool:
    return bool(empirical_mask(omega.array()[None, :], omega.sigma, mu, L, delta)[0])


# -- the metric rho_d ------------------------------------------------------------


def coupling_matrix(sys: ShiftSystem, sigma: SoficMap, R: int) -> np.ndarray:
    """``C[i, j] = sum of w_g over g in ball(R) with sigma_g(i) = j``."""
    ball = sys.group.ball(R)
    C = np.zeros((sigma.d, sigma.d))
    rows = np.arange(sigma.d)
    for g, w in zip(ball.elements, sys.weights(ball)):
        np.add.at(C, (rows, sigma.sigma(g)), w)
    return C


def rho_d_interval(a: Microstate, b: Microstate, sys: ShiftSystem, R: int) -> Bracket:
    if a.sigma is not b.sigma and a.sigma.to_json() != b.sigma.to_json():
        raise ValueError("microstates must share the sofic map")
    C = coupling_matrix(sys, a.sigma, R)
    diff = (a.array() != b.array()).astype(float)
    lo_i = C @ diff
    lo = float(lo_i.max())
    return Bracket(lo * (1 - REL) if lo else 0.0, min(1.0, (lo + sys.tail(R)) * (1 + REL)))


def pairwise_lo(omegas: np.ndarray, C: np.ndarray, block: int = 64) -> np.ndarray:
    """Matrix of certified lower distances ``max_i (C @ [omega_a != omega_b])_i``."""
    n = omegas.shape[0]
    out = np.zeros((n, n))
    Ct = C.T
    for start in range(0, n, block):
        a = omegas[start:start + block]
        diff = (a[:, None, :] != omegas[None, :, :]).astype(float)
        out[start:start + block] = (diff @ Ct).max(axis=2)
    return out


@dataclass(frozen=True)
class CountResult:
    count: Bracket
    mode: str


def _check_margin(sys: ShiftSystem, eps: float, R: int):
    if eps <= 2 * sys.tail(R):
        raise MarginViolation(f"eps={eps} must exceed 2 t(R) = {2 * sys.tail(R):.6g}")


def n_separated_sets(sys: ShiftSystem, sigma: SoficMap, certain: np.ndarray, possible: np.ndarray,
                     eps: float, R: int, vertex_cap: int = EXACT_VERTEX_CAP) -> CountResult:
    """Bracket on ``N_eps`` of a microstate family known to lie between two finite sets.

    ``certain`` are labelings surely in the set, ``possible`` the remaining
    undecided ones.  The lower end is a separated subset of ``certain`` whose
    pairs are certified ``>= eps`` apart; the upper end is the independence
    number of the graph of pairs certainly closer than ``eps`` over all of them.
    """
    _check_margin(sys, eps, R)
    allpts = np.concatenate([certain, possible], axis=0)
    n_all, n_cert = allpts.shape[0], certain.shape[0]
    if n_all == 0:
        return CountResult(Bracket(0.0, 0.0), "exact")
    C = coupling_matrix(sys, sigma, R)
    t = sys.tail(R)
    if n_all > vertex_cap:
        lo = _greedy_separated_stream(certain, C, eps)
        return CountResult(Bracket(float(lo), float(n_all)), "greedy")
    lo_mat = pairwise_lo(allpts, C)
    separated = lo_mat * (1 - REL) >= eps
    conflict = (lo_mat + t) * (1 + REL) < eps
    np.fill_diagonal(conflict, False)
    np.fill_diagonal(separated, True)
    hi_res = max_independent_set(conflict)
    if n_cert:
        lo_res = max_independent_set(~separated[:n_cert, :n_cert])
        lo = lo_res.lo
        exact = lo_res.exact and hi_res.exact
    else:
        lo, exact = 0, hi_res.exact
    return CountResult(Bracket(float(lo), float(hi_res.hi)), "exact" if exact else "greedy")


def _greedy_separated_stream(points: np.ndarray, C: np.ndarray, eps: float) -> int:
    chosen: list[np.ndarray] = []
    for row in points:
        if chosen:
            sel = np.array(chosen)
            lo = ((sel != row).astype(float) @ C.T).max(axis=1)
            if not (lo * (1 - REL) >= eps).all():
                continue
        chosen.append(row)
    return len(chosen)


def n_separated(points, sys: ShiftSystem, eps: float, R: int, sigma: SoficMap | None = None) -> CountResult:
    """``N_eps`` bracket for a list of microstates all known to be in the set."""
    pts = list(points) if not isinstance(points, np.ndarray) else points
    if len(pts) == 0:
        _check_margin(sys, eps, R)
        return CountResult(Bracket(0.0, 0.0), "exact")
    sigma = sigma or pts[0].sigma
    arr = as_array(pts, sigma)
    return n_separated_sets(sys, sigma, arr, arr[:0], eps, R)


# -- cover numbers ---------------------------------------------------------------


def cover_membership(cover: CoverSpec, sigma: SoficMap, omegas: np.ndarray) -> np.ndarray:
    """``M[n, i, j]``: point ``x_i`` of labeling ``n`` lies in member ``j``."""
    idx = pullback_index(sigma, cover.window)
    return cover.membership(omegas[:, idx])


def _bitmask(col: np.ndarray) -> int:
    return int.from_bytes(np.packbits(col, bitorder="little").tobytes(), "little")


def product_traces(M: np.ndarray) -> list[int]:
    """Distinct non-empty row sets ``{n : M[n, p, J_p] for all p}`` over all products ``J``.

    Rows are bits of Python ints; products whose partial trace is already
    empty are pruned.
    """
    n, P, m = M.shape
    B = [[_bitmask(M[:, p, j]) for j in range(m)] for p in range(P)]
    out: set = set()

    def walk(p: int, acc: int):
        if not acc:
            return
        if p == P:
            out.add(acc)
            return
        for mask in B[p]:
            walk(p + 1, acc & mask)

    walk(0, (1 << n) - 1)
    return sorted(out)


def cover_number(M: np.ndarray, product_cap: int = PRODUCT_CAP) -> CountResult:
    """Minimal number of product members ``U_{j_1} x ... x U_{j_P}`` covering all rows.

    ``M`` has shape ``(n, P, m)``.  Rows that pick exactly one member per
    position (partitions) are counted by distinct profiles; otherwise the
    products are enumerated and fed to an exact set cover when few enough.
    """
    n, P, m = M.shape
    if n == 0:
        return CountResult(Bracket(0.0, 0.0), "exact")
    if (M.sum(axis=2) == 1).all():
        profiles = np.argmax(M, axis=2)
        return CountResult(Bracket.point(float(len(np.unique(profiles, axis=0)))), "exact")
    if m ** P <= product_cap:
        res = exact_set_cover(product_traces(M), (1 << n) - 1)
        return CountResult(Bracket(float(res.lo), float(res.hi)), res.mode)
    # too many products: cover by each row's first admissible member, a valid cover
    canonical = np.argmax(M, axis=2)
    uniq = np.unique(canonical, axis=0)
    sets = []
    for J in uniq:
        hit = M[:, np.arange(P), J].all(axis=1)
        sets.append(int(sum(1 << int(i) for i in np.flatnonzero(hit))))
    res = greedy_bracket(sets, (1 << n) - 1)
    return CountResult(Bracket(1.0, float(res.hi)), "greedy")


def n_cover(cover: CoverSpec, points, sigma: SoficMap | None = None, within: tuple | None = None) -> CountResult:
    """``N(U^d, S)`` for a finite microstate set ``S``, optionally intersected with one
    product member ``V`` of a second cover, given as ``within = (cover2, J)``."""
    pts = list(points) if not isinstance(points, np.ndarray) else points
    if len(pts) == 0:
        return CountResult(Bracket(0.0, 0.0), "exact")
    sigma = sigma or pts[0].sigma
    arr = as_array(pts, sigma)
    if within is not None:
        cover2, J = within
        M2 = cover_membership(cover2, sigma, arr)
        arr = arr[M2[:, np.arange(sigma.d), list(J)].all(axis=1)]
        if arr.shape[0] == 0:
            return CountResult(Bracket(0.0, 0.0), "exact")
    return cover_number(cover_membership(cover, sigma, arr))


def group_by_cover(cover2: CoverSpec, sigma: SoficMap, arrays: list[np.ndarray],
                   product_cap: int = PRODUCT_CAP) -> list[list[np.ndarray]]:
    """Split each array of labelings into the traces ``S cap V`` over products ``V``.

    For partitions the non-empty traces are the profile classes; for other
    covers every product is listed (up to ``product_cap``).
    """
    if cover2.is_trivial:
        return [arrays]
    Ms = [cover_membership(cover2, sigma, a) for a in arrays]
    d = sigma.d
    if cover2.is_partition:
        profiles = [np.argmax(M, axis=2) for M in Ms]
        keys = np.unique(np.concatenate(profiles, axis=0), axis=0)
        groups = []
        for key in keys:
            groups.append([a[(p == key).all(axis=1)] for a, p in zip(arrays, profiles)])
        return groups
    m = len(cover2)
    if m ** d > product_cap:
        raise CapExceeded(f"{m}^{d} product members exceed the cap {product_cap}")
    sizes = [a.shape[0] for a in arrays]
    offsets = np.cumsum([0] + sizes)
    traces = product_traces(np.concatenate(Ms, axis=0))
    groups = []
    for t in traces:
        bits = np.unpackbits(np.frombuffer(t.to_bytes((offsets[-1] + 7) // 8, "little"), dtype=np.uint8),
                             bitorder="little")[:offsets[-1]].astype(bool)
        groups.append([a[bits[offsets[i]:offsets[i + 1]]] for i, a in enumerate(arrays)])
    return groups or [[a[:0] for a in arrays]]


# -- Bowen's AP counts -----------------------------------------------------------


def cell_measures(sys: ShiftSystem, alpha: CoverSpec, F: FiniteSubset, mu) -> np.ndarray:
    """``mu(A_phi)`` for every ``phi in map(F, |alpha|)``, indexed by base-|alpha| code."""
    g = sys.group
    k = len(alpha)
    W0 = alpha.window
    J = F.sumset(W0)
    rows = sys.pattern_array(J)
    pos = {e: i for i, e in enumerate(J.elements)}
    code = np.zeros(rows.shape[0], dtype=np.int64)
    for j, f in enumerate(F.elements):
        cols = [pos[g.add(f, w)] for w in W0.elements]
        code += alpha.cell_index(rows[:, cols]) * k ** j
    probs = mu.cylinder_array(J, rows)
    return np.bincount(code, weights=probs, minlength=k ** len(F))


def bowen_distances(betas: np.ndarray, sigma: SoficMap, F: FiniteSubset, k: int, mu_cells: np.ndarray) -> np.ndarray:
    """``d_F(alpha, beta) = sum_phi |mu(A_phi) - |B_phi| / d|`` for a batch of labeled partitions."""
    n, d = betas.shape
    idx = pullback_index(sigma, F)
    codes = betas[:, idx].astype(np.int64) @ (k ** np.arange(len(F), dtype=np.int64))
    K = k ** len(F)
    flat = codes + (np.arange(n, dtype=np.int64) * K)[:, None]
    counts = np.bincount(flat.ravel(), minlength=n * K).reshape(n, K)
    return np.abs(mu_cells[None, :] - counts / d).sum(axis=1)


@dataclass(frozen=True)
class APResult:
    count: Bracket
    mode: str
    estimate: float | None = None


def clopper_pearson(successes: int, trials: int, level: float = 0.95) -> tuple[float, float]:
    a = (1 - level) / 2
    lo = 0.0 if successes == 0 else float(beta_dist.ppf(a, successes, trials - successes + 1))
    hi = 1.0 if successes == trials else float(beta_dist.ppf(1 - a, successes + 1, trials - successes))
    return lo, hi


def bowen_ap_count(sys: ShiftSystem, sigma: SoficMap, alpha: CoverSpec, F: FiniteSubset, eps: float, mu,
                   cap: int = ENUM_CAP, samples: int = 10_000, seed: int = 0,
                   chunk: int = 2 ** 16, force_sampling: bool = False) -> APResult:
    """Bracket on ``|AP(sigma, alpha : F, eps)|``, the labeled partitions with ``d_F <= eps``."""
    if not alpha.is_partition:
        raise ValueError("Bowen's counts need a partition")
    k, d = len(alpha), sigma.d
    mu_cells = cell_measures(sys, alpha, F, mu)
    total = k ** d
    if total <= cap and not force_sampling:
        sure = maybe = 0
        for start in range(0, total, chunk):
            betas = _labelings(k, d, start, min(total, start + chunk), _dtype(k))
            dist = bowen_distances(betas, sigma, F, k, mu_cells)
            sure += int((dist <= eps - TIE).sum())
            maybe += int((dist <= eps + TIE).sum())
        return APResult(Bracket(float(sure), float(maybe)), "exact", float(sure))
    rng = np.random.default_rng(np.random.SeedSequence(seed))
    sure = maybe = 0
    for start in range(0, samples, chunk):
        m = min(chunk, samples - start)
        betas = rng.integers(0, k, size=(m, d), dtype=np.int64)
        dist = bowen_distances(betas, sigma, F, k, mu_cells)
        sure += int((dist <= eps - TIE).sum())
        maybe += int((dist <= eps + TIE).sum())
    q_lo = clopper_pearson(sure, samples)[0]
    q_hi = clopper_pearson(maybe, samples)[1]
    scale = float(total)
    return APResult(Bracket(q_lo * scale, q_hi * scale), "sampled", scale * sure / samples)


def dump_lines(sys: ShiftSystem, omegas: np.ndarray) -> list[str]:
    """Line format: ``d`` then the labeling as a symbol string."""
    sep = "" if all(len(a) == 1 for a in sys.alphabet) else ","
    d = omegas.shape[1]
    return [f"{d} {sep.join(sys.alphabet[int(v)] for v in row)}" for row in omegas]
