"""Algebraic syndrome decoding and lookup-table decoding.

Algebraic pipeline for a code with generator (g, f), f = c0^{-1} a g:

1. ``simulate_syndrome``: the n sigma-form values of the shifts of (g, f)
   against the error, assembled into

       r'(X) = sum_i <(N^i g, N^i f), (e1, e2)>_sigma X^{-i}
             = g(X) e2(X^{-m}) - f(X) e1(X^{-m})   mod X^n - 1,

   computed both ways and compared.
2. ``reduce_syndrome``: r = (r' / g) mod h = e2(X^{-m}) - c0^{-1} eta^p e1(X^{-m}) mod h.
3. ``bmw_decode``: the sparse E with E = r mod h, from syndromes at 4*tau
   consecutive roots of h (Berlekamp-Massey, root search, Vandermonde solve).
4. ``split_error``: read (e1, e2) back off the coefficients of E.

The lookup-table decoder works in the physical picture: S^sigma with the
standard symplectic form.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from . import poly, ring
from .distance import bch_distance
from .errors import AlgebraError, BudgetExceeded, PreconditionError
from .symplectic import apply_sigma, form_matrix, shift


@dataclass(frozen=True)
class SyndromePoly:
    rprime: tuple[int, ...]  # F_p coefficients, residue mod X^n - 1
    r: tuple[int, ...] | None = None  # F_{p^2} coefficients, residue mod h


@dataclass(frozen=True)
class DecodedError:
    e1: tuple[int, ...]
    e2: tuple[int, ...]
    success: bool
    reason: str = ""


def _vec(e, n: int) -> list[int]:
    e = [int(x) for x in e]
    if len(e) != n:
        raise PreconditionError(f"error vector has length {len(e)}, expected {n}")
    return e


def correction_radius(bp) -> int:
    """tau = floor((d - 1) / 4) for the BCH distance d of h."""
    return (bch_distance(bp).d - 1) // 4


# ----------------------------------------------------------------------------
# syndrome


def syndrome_by_form(bp, e1, e2) -> list[int]:
    """Coefficients of r' from the shifted sigma-form values (the quantity a
    phase-estimation round would report)."""
    n, p = bp.n, bp.p
    gen = bp.generator.row()
    shifts = np.vstack([shift(gen, i) for i in range(n)])
    err = np.array(_vec(e1, n) + _vec(e2, n), dtype=np.int64)
    values = shifts @ form_matrix(n, p, bp.sigma) @ err % p
    out = [0] * n
    for i, v in enumerate(values):
        out[(-i) % n] = int(v)
    return poly.trim(out)


def syndrome_closed_form(bp, e1, e2) -> list[int]:
    """g(X) e2(X^{-m}) - f(X) e1(X^{-m}) mod X^n - 1."""
    F, n, m = bp.Fp, bp.n, bp.m
    e1s = ring.frobenius_substitute(F, poly.trim(_vec(e1, n)), n, m)
    e2s = ring.frobenius_substitute(F, poly.trim(_vec(e2, n)), n, m)
    return poly.sub(F, ring.ring_mul(F, list(bp.g), e2s, n), ring.ring_mul(F, list(bp.f), e1s, n))


def simulate_syndrome(bp, e1, e2) -> SyndromePoly:
    a = syndrome_by_form(bp, e1, e2)
    b = syndrome_closed_form(bp, e1, e2)
    if a != b:
        raise AlgebraError("shifted-form syndrome disagrees with the closed form")
    return SyndromePoly(tuple(a))


def reduce_syndrome(s: SyndromePoly | list[int], bp) -> list[int]:
    """(r' / g) mod h over F_{p^2}."""
    rprime = list(s.rprime if isinstance(s, SyndromePoly) else s)
    F, quad = bp.Fp, bp.quad
    q = poly.exact_div(F, rprime, list(bp.g))
    # F_p elements are F_{p^2} elements with zero eta-component
    return poly.mod(quad, [quad.element(c) for c in q], list(bp.h)) if bp.h else []


# ----------------------------------------------------------------------------
# Berlekamp-Massey over the split field


def berlekamp_massey(F, s: list[int]) -> list[int]:
    """Shortest connection polynomial C (C[0] = 1) generating the sequence s."""
    C, B = [F.one], [F.one]
    L, shift_by, b = 0, 1, F.one
    for i in range(len(s)):
        d = s[i]
        for j in range(1, L + 1):
            if j < len(C):
                d = F.add(d, F.mul(C[j], s[i - j]))
        if d == 0:
            shift_by += 1
            continue
        coef = F.div(d, b)
        T = list(C)
        upd = [0] * shift_by + [F.mul(coef, x) for x in B]
        C = poly.sub(F, C, upd) if len(upd) else C
        if 2 * L <= i:
            L = i + 1 - L
            B, b, shift_by = T, d, 1
        else:
            shift_by += 1
    C = C + [0] * (L + 1 - len(C))
    return C[: L + 1]


def _solve(F, A: list[list[int]], y: list[int]) -> list[int] | None:
    """Gaussian elimination for a square system; None when singular."""
    k = len(y)
    M = [list(row) + [y[i]] for i, row in enumerate(A)]
    for c in range(k):
        piv = next((r for r in range(c, k) if M[r][c]), None)
        if piv is None:
            return None
        M[c], M[piv] = M[piv], M[c]
        inv = F.inv(M[c][c])
        M[c] = [F.mul(inv, x) for x in M[c]]
        for r in range(k):
            if r != c and M[r][c]:
                fct = M[r][c]
                M[r] = [F.sub(x, F.mul(fct, z)) for x, z in zip(M[r], M[c])]
    return [M[r][k] for r in range(k)]


def bmw_decode(bp, r: list[int], tau: int | None = None) -> tuple[list[int] | None, str]:
    """Sparse E (length n, F_{p^2} entries) with at most 2*tau nonzeros and
    E = r mod h; (None, reason) on failure."""
    n, split, quad = bp.n, bp.split, bp.quad
    ext = split.ext
    tau = correction_radius(bp) if tau is None else tau
    if tau == 0:
        return ([0] * n, "") if not r else (None, "nothing is correctable (tau = 0)")
    run = bch_distance(bp)
    if run.length < 4 * tau:
        raise PreconditionError(f"h has {run.length} consecutive roots, decoding radius {tau} needs {4 * tau}")
    if not r:
        return [0] * n, ""
    u, c = run.multiplier, run.start
    alpha = split.beta_pow(u)
    r_ext = split.embed_poly(list(r))
    syn = [poly.evaluate(ext, r_ext, split.beta_pow(u * (c + j))) for j in range(4 * tau)]
    locator = berlekamp_massey(ext, syn)
    nu = len(locator) - 1
    if nu == 0 or nu > 2 * tau:
        return None, f"error locator has degree {nu}"
    positions = [pos for pos in range(n) if poly.evaluate(ext, locator, split.beta_pow(-u * pos)) == 0]
    if len(positions) != nu:
        return None, f"locator of degree {nu} has {len(positions)} roots"
    X = [ext.pow(alpha, pos) for pos in positions]
    A = [[ext.pow(x, j) for x in X] for j in range(nu)]
    Y = _solve(ext, A, syn[:nu])
    if Y is None:  # pragma: no cover - distinct locators make this nonsingular
        return None, "singular magnitude system"
    E = [0] * n
    for pos, y in zip(positions, Y):
        val = split.lift(ext.mul(y, ext.pow(alpha, (-c * pos) % n)))
        if val is None:
            return None, "error magnitude outside F_{p^2}"
        E[pos] = val
    if poly.mod(quad, poly.sub(quad, poly.trim(E), list(r)), list(bp.h)):
        return None, "candidate does not reproduce the syndrome"
    return E, ""


def split_error(E: list[int], bp) -> tuple[list[int], list[int]]:
    """Invert E_j = e2s_j - c0^{-1} eta^p e1s_j, then undo X -> X^{-m}.

    With E_j = x + eta y: e1s_j = c0 y and e2s_j = x + c1 y.
    """
    n, m, quad = bp.n, bp.m, bp.quad
    F = quad.base
    e1s, e2s = [0] * n, [0] * n
    for j, c in enumerate(E):
        x, y = quad.components(c)
        e1s[j] = F.mul(quad.c0, y)
        e2s[j] = F.add(x, F.mul(quad.c1, y))
    # e^s has the coefficient of X^i at index -m*i
    e1 = [e1s[(-m * i) % n] for i in range(n)]
    e2 = [e2s[(-m * i) % n] for i in range(n)]
    return e1, e2


def decode_syndrome(bp, rprime, tau: int | None = None) -> DecodedError:
    r = reduce_syndrome(rprime, bp)
    E, reason = bmw_decode(bp, r, tau)
    n = bp.n
    if E is None:
        return DecodedError((0,) * n, (0,) * n, False, reason)
    e1, e2 = split_error(E, bp)
    return DecodedError(tuple(e1), tuple(e2), True)


def decode(bp, e1, e2, tau: int | None = None) -> DecodedError:
    """Full pipeline from a known error: syndrome, reduce, BMW, split."""
    return decode_syndrome(bp, simulate_syndrome(bp, e1, e2), tau)


# ----------------------------------------------------------------------------
# lookup table


@dataclass(frozen=True, eq=False)
class SyndromeTable:
    """Coset leaders indexed by the base-p syndrome against the rows of S^sigma.

    ``leaders[s]`` is a physical error row (a | b); ``filled[s]`` is False for
    syndromes left uncorrectable.
    """

    n: int
    p: int
    check: np.ndarray  # (dim S, 2n): syndrome = check @ x mod p
    leaders: np.ndarray
    filled: np.ndarray
    leader_weight: np.ndarray
    max_weight: int
    radix: np.ndarray = field(repr=False)

    @property
    def size(self) -> int:
        return int(self.leaders.shape[0])

    def syndrome_index(self, errors: np.ndarray) -> np.ndarray:
        errors = np.atleast_2d(errors)
        return (errors @ self.check.T % self.p) @ self.radix

    def lookup(self, errors: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        idx = self.syndrome_index(errors)
        return self.leaders[idx], self.filled[idx]


def errors_of_weight(n: int, p: int, w: int) -> np.ndarray:
    """All physical errors (a | b) of joint weight exactly w."""
    if w == 0:
        return np.zeros((1, 2 * n), dtype=np.int64)
    pairs = np.array([(x, y) for x in range(p) for y in range(p) if (x, y) != (0, 0)], dtype=np.int64)
    supports = np.array(list(itertools.combinations(range(n), w)), dtype=np.int64).reshape(-1, w)
    choices = np.array(list(itertools.product(range(len(pairs)), repeat=w)), dtype=np.int64).reshape(-1, w)
    ns, nc = supports.shape[0], choices.shape[0]
    out = np.zeros((ns * nc, 2 * n), dtype=np.int64)
    rows = np.repeat(np.arange(ns * nc), w)
    pos = np.repeat(supports, nc, axis=0).ravel()
    vals = pairs[np.tile(choices, (ns, 1)).ravel()]
    out[rows, pos] = vals[:, 0]
    out[rows, n + pos] = vals[:, 1]
    return out


def _count_of_weight(n: int, p: int, w: int) -> int:
    return math.comb(n, w) * (p * p - 1) ** w


def build_syndrome_table(
    bp, max_weight: int | None = None, *, budget: int = 2**22, enumeration_budget: int = 2**23
) -> SyndromeTable:
    """Minimum-weight leaders, filled by ascending joint weight.

    Within a weight class the lexicographically smallest (a | b) wins.  The
    fill continues to higher weights (best effort) until every syndrome is
    covered, ``max_weight`` is reached, or the next class would push the
    enumeration past ``enumeration_budget``; the rest stay unfilled.
    """
    n, p = bp.n, bp.p
    S_sigma = apply_sigma(bp.stabilizer.rows, bp.sigma)
    r = S_sigma.shape[0]
    size = p**r
    if size > budget:
        raise BudgetExceeded(size, budget, "syndrome table")
    check = S_sigma @ form_matrix(n, p) % p
    radix = p ** np.arange(r, dtype=np.int64)
    leaders = np.zeros((size, 2 * n), dtype=np.int8)
    filled = np.zeros(size, dtype=bool)
    weight = np.full(size, -1, dtype=np.int64)
    limit = n if max_weight is None else max_weight
    enumerated = 0
    reached = -1
    for w in range(limit + 1):
        if filled.all():
            break
        count = _count_of_weight(n, p, w)
        if enumerated + count > enumeration_budget and w > 0:
            break
        enumerated += count
        E = errors_of_weight(n, p, w)
        order = np.lexsort(E.T[::-1])
        E = E[order]
        idx = (E @ check.T % p) @ radix
        uniq, first = np.unique(idx, return_index=True)
        new = ~filled[uniq]
        slots, rows = uniq[new], first[new]
        leaders[slots] = E[rows]
        filled[slots] = True
        weight[slots] = w
        reached = w
    return SyndromeTable(n, p, check, leaders, filled, weight, reached, radix)


def table_decode(table: SyndromeTable, errors: np.ndarray) -> np.ndarray:
    """Boolean per error: True when decoding leaves a nonzero residual or
    meets an uncorrectable syndrome (a block error)."""
    errors = np.atleast_2d(errors)
    leaders, ok = table.lookup(errors)
    residual_nonzero = np.any((errors - leaders) % table.p != 0, axis=1)
    return residual_nonzero | ~ok
