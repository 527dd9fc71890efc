"""Dense univariate polynomials over a finite field.

A polynomial is a plain list of field elements (ints, as produced by the
field objects in :mod:`sigmastab.fields`), lowest degree first.  The zero
polynomial is ``[]`` and every function returns trimmed lists, so the last
entry of a non-zero result is always non-zero.

Every function takes the coefficient field ``F`` as its first argument.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence

from .errors import AlgebraError

Poly = list  # list[int], low degree first


def trim(f: Sequence[int]) -> Poly:
    f = list(f)
    while f and f[-1] == 0:
        f.pop()
    return f


def deg(f: Sequence[int]) -> int:
    """Degree of a trimmed polynomial; -1 for zero."""
    return len(f) - 1


def monomial(F, k: int, c: int | None = None) -> Poly:
    c = F.one if c is None else c
    return trim([0] * k + [c])


def add(F, f: Sequence[int], g: Sequence[int]) -> Poly:
    if len(f) < len(g):
        f, g = g, f
    out = list(f)
    for i, c in enumerate(g):
        out[i] = F.add(out[i], c)
    return trim(out)


def neg(F, f: Sequence[int]) -> Poly:
    return [F.neg(c) for c in f]


def sub(F, f: Sequence[int], g: Sequence[int]) -> Poly:
    return add(F, f, neg(F, g))


def scale(F, c: int, f: Sequence[int]) -> Poly:
    if c == 0:
        return []
    return trim([F.mul(c, x) for x in f])


def mul(F, f: Sequence[int], g: Sequence[int]) -> Poly:
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a == 0:
            continue
        for j, b in enumerate(g):
            if b:
                out[i + j] = F.add(out[i + j], F.mul(a, b))
    return trim(out)


def div_mod(F, f: Sequence[int], g: Sequence[int]) -> tuple[Poly, Poly]:
    g = trim(g)
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    r = trim(f)
    dg = len(g) - 1
    if len(r) - 1 < dg:
        return [], r
    lead_inv = F.inv(g[-1])
    q = [0] * (len(r) - dg)
    for k in range(len(r) - 1, dg - 1, -1):
        c = r[k]
        if c == 0:
            continue
        c = F.mul(c, lead_inv)
        q[k - dg] = c
        for j in range(dg + 1):
            if g[j]:
                r[k - dg + j] = F.sub(r[k - dg + j], F.mul(c, g[j]))
    return trim(q), trim(r[:dg])


def mod(F, f: Sequence[int], g: Sequence[int]) -> Poly:
    return div_mod(F, f, g)[1]


def exact_div(F, f: Sequence[int], g: Sequence[int]) -> Poly:
    """Quotient f / g, raising :class:`AlgebraError` if g does not divide f."""
    q, r = div_mod(F, f, g)
    if r:
        raise AlgebraError("inexact polynomial division")
    return q


def monic(F, f: Sequence[int]) -> Poly:
    f = trim(f)
    if not f:
        return []
    return scale(F, F.inv(f[-1]), f)


def gcd(F, f: Sequence[int], g: Sequence[int]) -> Poly:
    """Monic greatest common divisor (zero if both inputs are zero)."""
    a, b = trim(f), trim(g)
    while b:
        a, b = b, mod(F, a, b)
    return monic(F, a)


def xgcd(F, f: Sequence[int], g: Sequence[int]) -> tuple[Poly, Poly, Poly]:
    """Return (d, s, t) with s*f + t*g = d and d monic."""
    r0, r1 = trim(f), trim(g)
    s0, s1 = [F.one], []
    t0, t1 = [], [F.one]
    while r1:
        q, r = div_mod(F, r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, sub(F, s0, mul(F, q, s1))
        t0, t1 = t1, sub(F, t0, mul(F, q, t1))
    if not r0:
        return [], s0, t0
    u = F.inv(r0[-1])
    return scale(F, u, r0), scale(F, u, s0), scale(F, u, t0)


def inverse_mod(F, f: Sequence[int], m: Sequence[int]) -> Poly:
    d, s, _ = xgcd(F, f, m)
    if d != [F.one]:
        raise AlgebraError("polynomial is not invertible modulo the given modulus")
    return mod(F, s, m)


def pow_mod(F, f: Sequence[int], e: int, m: Sequence[int]) -> Poly:
    result = mod(F, [F.one], m)
    base = mod(F, f, m)
    while e:
        if e & 1:
            result = mod(F, mul(F, result, base), m)
        e >>= 1
        if e:
            base = mod(F, mul(F, base, base), m)
    return result


def evaluate(F, f: Sequence[int], x: int) -> int:
    acc = 0
    for c in reversed(f):
        acc = F.add(F.mul(acc, x), c)
    return acc


def from_roots(F, roots: Iterable[int]) -> Poly:
    """The monic polynomial prod (X - r)."""
    out: Poly = [F.one]
    for r in roots:
        out = mul(F, out, [F.neg(r), F.one])
    return out


def product(F, polys: Iterable[Sequence[int]]) -> Poly:
    out: Poly = [F.one]
    for f in polys:
        out = mul(F, out, f)
    return out


def map_coeffs(fn, f: Sequence[int]) -> Poly:
    return trim([fn(c) for c in f])
