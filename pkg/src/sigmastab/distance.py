"""Distance analysis: BCH runs, the designed-distance bounds and exact
minimum joint weights of C(S) \\ S.

Exact search enumerates the p^(n + deg g) elements of the centralizer.  The
centralizer basis is split into a complement of S (2 deg g rows) and a basis
of S (n - deg g rows); a combination lies in S exactly when its complement
coefficients vanish, so those combinations are skipped.  Two lower bounds
allow an exact early exit: every nonzero centralizer element maps
support-preservingly into the cyclic F_{p^2} code generated by h, so it has
joint weight at least the BCH distance d, and applying sigma to the second
half can at most halve the joint weight.
"""

from __future__ import annotations

import itertools
import math
import os
from dataclasses import asdict, dataclass

import numpy as np

from .errors import BudgetExceeded, PreconditionError
from .symplectic import SubspaceBasis, apply_sigma, joint_weights, nullspace, rank

DEFAULT_BUDGET = 2**26
INF = math.inf
SKIPPED = "skipped"
WORKERS_ENV = "SIGMASTAB_WORKERS"


# ----------------------------------------------------------------------------
# BCH distance


@dataclass(frozen=True)
class BchRun:
    """Longest cyclic run of roots.  ``start``/``length`` are in the exponent
    scale of alpha = beta^multiplier; ``exponents`` lists the run as powers of
    the fixed beta."""

    d: int
    start: int
    length: int
    multiplier: int
    exponents: tuple[int, ...]


def _longest_cyclic_run(mask: list[bool]) -> tuple[int, int]:
    n = len(mask)
    if all(mask):
        return 0, n
    best_len, best_start = 0, 0
    # start scanning right after a gap so every run is seen contiguously
    gap = mask.index(False)
    run, run_start = 0, None
    for step in range(1, n + 1):
        j = (gap + step) % n
        if mask[j]:
            if run == 0:
                run_start = j
            run += 1
            if run > best_len or (run == best_len and run_start < best_start):
                best_len, best_start = run, run_start
        else:
            run = 0
    return best_start, best_len


def bch_distance_of_roots(roots, n: int, multipliers=None) -> tuple[int, BchRun]:
    """1 + the longest run of consecutive powers of a primitive n-th root
    alpha = beta^u lying in ``roots`` (exponents of beta), maximized over u.

    Ties prefer u = 1, then the smallest u, then the smallest start.
    """
    roots = {r % n for r in roots}
    units = [u for u in range(1, n) if math.gcd(u, n) == 1] if multipliers is None else list(multipliers)
    units.sort(key=lambda u: (u != 1, u))
    best = None
    for u in units:
        start, length = _longest_cyclic_run([(u * j) % n in roots for j in range(n)])
        if best is None or length > best.length:
            exps = tuple((u * (start + i)) % n for i in range(length))
            best = BchRun(length + 1, start, length, u, exps)
    if best is None:
        best = BchRun(1, 0, 0, 1, ())
    return best.d, best


def bch_distance(bp, all_roots: bool = True) -> BchRun:
    """BCH run of h for a blueprint; ``all_roots=False`` fixes alpha = beta."""
    return bch_distance_of_roots(bp.h_roots, bp.n, None if all_roots else [1])[1]


def thm8_bounds(d: int) -> tuple[int, int]:
    """(detect, correct) guaranteed by a BCH distance d."""
    if d < 1:
        raise PreconditionError("BCH distance must be at least 1")
    return (d + 1) // 2 - 1, (d - 1) // 4


def detect_correct_from_distance(dist) -> tuple[int, int] | tuple[str, str]:
    if dist == SKIPPED:
        return SKIPPED, SKIPPED
    if dist == INF:
        return INF, INF
    if dist < 1:
        raise PreconditionError("distance must be at least 1")
    return dist - 1, (dist - 1) // 2


# ----------------------------------------------------------------------------
# exact search


def _workers() -> int | None:
    v = os.environ.get(WORKERS_ENV)
    return int(v) if v else None


def split_basis(C: SubspaceBasis, S: SubspaceBasis) -> tuple[np.ndarray, np.ndarray]:
    """Rows completing a basis of S to one of C, and the rows of S."""
    p = C.p
    comp = []
    current = S.rows
    r = S.dim
    for row in C.rows:
        trial = np.vstack([current, row]) if current.size else row[None, :]
        if rank(trial, p) > r:
            comp.append(row)
            current = trial
            r += 1
    if r != C.dim:
        raise PreconditionError("S is not contained in C")
    comp_rows = np.array(comp, dtype=np.int64).reshape(-1, 2 * C.n)
    return comp_rows, S.rows


def _pack_gf2(rows: np.ndarray, n: int) -> np.ndarray:
    weights = np.left_shift(np.uint64(1), np.arange(2 * n, dtype=np.uint64))
    return (rows.astype(np.uint64) * weights).sum(axis=1, dtype=np.uint64)


_KERNEL = None


def _gf2_kernel():
    global _KERNEL
    if _KERNEL is not None:
        return _KERNEL
    import numba
    from numba import njit, prange

    M1 = np.uint64(0x5555555555555555)
    M2 = np.uint64(0x3333333333333333)
    M4 = np.uint64(0x0F0F0F0F0F0F0F0F)
    H01 = np.uint64(0x0101010101010101)
    S1, S2, S4, S56 = np.uint64(1), np.uint64(2), np.uint64(4), np.uint64(56)

    @njit(inline="always")
    def popcount(x):
        x = x - ((x >> S1) & M1)
        x = (x & M2) + ((x >> S2) & M2)
        x = (x + (x >> S4)) & M4
        return np.int64((x * H01) >> S56)

    @njit(parallel=True, cache=True)
    def scan(lo_table, lo_cmask, hi_rows, hi_cmask, n, lower_bound, shard_bits):
        nhi = hi_rows.shape[0]
        inner_bits = nhi - shard_bits
        n_shards = 1 << shard_bits
        nlo = lo_table.shape[0]
        nmask = (np.uint64(1) << np.uint64(n)) - np.uint64(1)
        sh = np.uint64(n)
        best = np.full(n_shards, 1 << 30, dtype=np.int64)
        stop = np.zeros(1, dtype=np.int64)
        for s in prange(n_shards):
            cur = np.uint64(0)
            for j in range(shard_bits):
                if (s >> j) & 1:
                    cur ^= hi_rows[inner_bits + j]
            high = np.int64(s) << inner_bits
            b = np.int64(1 << 30)
            for i in range(np.int64(1) << inner_bits):
                if i > 0:
                    t, bit = i, 0
                    while (t & 1) == 0:
                        t >>= 1
                        bit += 1
                    cur ^= hi_rows[bit]
                    high ^= np.int64(1) << bit
                hi_zero = (high & hi_cmask) == 0
                for x in range(nlo):
                    if hi_zero and (x & lo_cmask) == 0:
                        continue
                    v = lo_table[x] ^ cur
                    w = popcount((v | (v >> sh)) & nmask)
                    if w < b:
                        b = w
                if b <= lower_bound:
                    stop[0] = 1
                if stop[0]:
                    break
            best[s] = b
        return best.min()

    _KERNEL = (scan, numba)
    return _KERNEL


def _scan_gf2(comp: np.ndarray, srows: np.ndarray, n: int, lower_bound: int) -> int:
    rows = np.vstack([comp, srows]) if srows.size else comp
    D = rows.shape[0]
    ncomp = comp.shape[0]
    packed = _pack_gf2(rows, n)
    L = min(D, 16)
    lo = packed[:L]
    table = np.zeros(1 << L, dtype=np.uint64)
    for j in range(L):
        table[1 << j : 1 << (j + 1)] = table[: 1 << j] ^ lo[j]
    lo_cmask = (1 << min(ncomp, L)) - 1
    hi_rows = packed[L:].copy()
    hi_cmask = ((1 << (ncomp - L)) - 1) if ncomp > L else 0
    shard_bits = min(hi_rows.shape[0], 6)
    if hi_rows.shape[0] == 0:
        hi_rows = np.zeros(0, dtype=np.uint64)
    scan, numba = _gf2_kernel()
    workers = _workers()
    if workers:
        numba.set_num_threads(min(workers, numba.config.NUMBA_NUM_THREADS))
    return int(scan(table, np.int64(lo_cmask), hi_rows, np.int64(hi_cmask), n, np.int64(lower_bound), shard_bits))


def _scan_numpy(comp: np.ndarray, srows: np.ndarray, n: int, p: int, lower_bound: int, chunk: int = 1 << 16) -> int:
    rows = np.vstack([comp, srows]) if srows.size else comp
    D, ncomp = rows.shape[0], comp.shape[0]
    total = p**D
    radix = p ** np.arange(D, dtype=np.int64)
    best = 1 << 30
    for start in range(0, total, chunk):
        idx = np.arange(start, min(total, start + chunk), dtype=np.int64)
        digits = (idx[:, None] // radix) % p
        keep = np.any(digits[:, :ncomp] != 0, axis=1)
        if not keep.any():
            continue
        vecs = digits[keep] @ rows % p
        best = min(best, int(joint_weights(vecs).min()))
        if best <= lower_bound:
            break
    return best


def min_weight_outside(
    C: SubspaceBasis,
    S: SubspaceBasis,
    *,
    lower_bound: int = 0,
    budget: int | None = DEFAULT_BUDGET,
    backend: str = "auto",
) -> float | int:
    """Minimum joint weight over C \\ S (``INF`` when C = S).

    ``lower_bound`` is a proven bound; the search stops as soon as it is met.
    """
    if C.n != S.n or C.p != S.p:
        raise PreconditionError("subspaces live in different spaces")
    n, p = C.n, C.p
    required = p**C.dim
    if budget is not None and required > budget:
        raise BudgetExceeded(required, budget, f"enumeration of {p}^{C.dim} centralizer elements")
    comp, srows = split_basis(C, S)
    if comp.shape[0] == 0:
        return INF
    if backend == "auto":
        backend = "numba" if p == 2 and 2 * n <= 64 else "numpy"
    if backend == "numba":
        if p != 2:
            raise PreconditionError("the bitmask kernel needs p = 2")
        return _scan_gf2(comp, srows, n, lower_bound)
    return _scan_numpy(comp, srows, n, p, lower_bound)


MODES = ("sigma", "raw", "sigma-nonzero", "raw-nonzero")


def _parse_mode(mode: str) -> tuple[str, bool]:
    if mode not in MODES:
        raise PreconditionError(f"unknown mode {mode!r}; expected one of {MODES}")
    picture, _, rest = mode.partition("-")
    return picture, rest != "nonzero"


def sigma_pair(bp, mode: str) -> tuple[SubspaceBasis, SubspaceBasis]:
    """(C, S) in the picture that ``mode`` weighs: raw, or with sigma applied
    to every second half.  ``*-nonzero`` modes return the zero space for S."""
    picture, exclude = _parse_mode(mode)
    C, S = bp.centralizer, bp.stabilizer
    if picture == "sigma":
        sig = bp.sigma
        C = SubspaceBasis.span(apply_sigma(C.rows, sig), bp.n, bp.p)
        S = SubspaceBasis.span(apply_sigma(S.rows, sig), bp.n, bp.p) if S.dim else S
    if not exclude:
        S = SubspaceBasis.span(np.zeros((0, 2 * bp.n), dtype=np.int64), bp.n, bp.p)
    return C, S


def proven_lower_bound(bp, mode: str) -> int:
    """Holds for every nonzero centralizer element, so for all modes."""
    d = bch_distance(bp).d
    return d if _parse_mode(mode)[0] == "raw" else (d + 1) // 2


def brute_force_distance(
    bp, mode: str = "sigma", *, budget: int | None = DEFAULT_BUDGET, early_exit: bool = True, backend: str = "auto"
):
    """Exact minimum joint weight.

    ``sigma``: over C(S)^sigma \\ S^sigma.  ``raw``: over C(S) \\ S.  The
    ``-nonzero`` variants minimize over every nonzero centralizer element,
    stabilizer elements included.  Raises :class:`BudgetExceeded` when
    p^(n + deg g) exceeds ``budget``.
    """
    C, S = sigma_pair(bp, mode)
    lb = proven_lower_bound(bp, mode) if early_exit else 0
    return min_weight_outside(C, S, lower_bound=lb, budget=budget, backend=backend)


def support_search_distance(C: SubspaceBasis, S: SubspaceBasis, max_weight: int | None = None) -> float | int:
    """Independent exact oracle: the least w such that some support T of size w
    carries an element of C \\ S.

    For each T the elements of C vanishing off T form a subspace found by a
    kernel computation; it escapes S iff stacking it onto S raises the rank.
    """
    n, p = C.n, C.p
    if C.dim == S.dim:
        return INF
    rS = S.dim
    max_weight = n if max_weight is None else max_weight
    for w in range(1, max_weight + 1):
        for T in itertools.combinations(range(n), w):
            off = np.ones(n, dtype=bool)
            off[list(T)] = False
            cols = np.concatenate([off, off])
            coeffs = nullspace(C.rows[:, cols].T, p, C.dim)
            if coeffs.shape[0] == 0:
                continue
            V = coeffs @ C.rows % p
            if rank(np.vstack([S.rows, V]) if rS else V, p) > rS:
                return w
    return INF


# ----------------------------------------------------------------------------
# reports


@dataclass(frozen=True)
class DistanceReport:
    n: int
    k: int
    bch_d: int
    run_start: int
    run_length: int
    run_multiplier: int
    run_exponents: tuple[int, ...]
    thm8_detect: int
    thm8_correct: int
    brute_distance_nonzero: int | str
    brute_distance_sigma: int | str
    brute_distance_raw: int | str
    brute_detect: int | str
    brute_correct: int | str
    required_enumeration: int

    def to_dict(self) -> dict:
        d = asdict(self)
        d["run_exponents"] = list(self.run_exponents)
        return d

    CSV_COLUMNS = (
        "n",
        "k",
        "consecutive_roots",
        "bch_d",
        "thm8_detect",
        "thm8_correct",
        "brute_detect",
        "brute_correct",
        "brute_distance_nonzero",
        "brute_distance_sigma",
        "brute_distance_raw",
    )

    def csv_row(self) -> list:
        return [
            self.n,
            self.k,
            format_run(self.run_exponents),
            self.bch_d,
            self.thm8_detect,
            self.thm8_correct,
            self.brute_detect,
            self.brute_correct,
            self.brute_distance_nonzero,
            self.brute_distance_sigma,
            self.brute_distance_raw,
        ]


def format_run(exponents) -> str:
    return ",".join(f"beta^{e}" for e in exponents)


def analyze(
    bp, modes=("sigma-nonzero",), budget: int | None = DEFAULT_BUDGET, all_roots: bool = True
) -> DistanceReport:
    """Full report; brute modes not in ``modes`` or over budget are ``"skipped"``.

    The detect/correct pair comes from the sigma-weighted minimum over all
    nonzero centralizer elements (``sigma-nonzero``).
    """
    run = bch_distance(bp, all_roots=all_roots)
    detect8, correct8 = thm8_bounds(run.d)
    out = {}
    for mode in ("sigma-nonzero", "sigma", "raw"):
        if mode not in modes:
            out[mode] = SKIPPED
            continue
        try:
            out[mode] = brute_force_distance(bp, mode, budget=budget)
        except BudgetExceeded:
            out[mode] = SKIPPED
    detect, correct = detect_correct_from_distance(out["sigma-nonzero"])
    return DistanceReport(
        n=bp.n,
        k=bp.k,
        bch_d=run.d,
        run_start=run.start,
        run_length=run.length,
        run_multiplier=run.multiplier,
        run_exponents=run.exponents,
        thm8_detect=detect8,
        thm8_correct=correct8,
        brute_distance_nonzero=out["sigma-nonzero"],
        brute_distance_sigma=out["sigma"],
        brute_distance_raw=out["raw"],
        brute_detect=detect,
        brute_correct=correct,
        required_enumeration=bp.p ** (bp.n + bp.k),
    )
