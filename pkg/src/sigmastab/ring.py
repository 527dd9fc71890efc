"""The cyclotomic ring R = F[X]/(X^n - 1) and the factorization of X^n - 1.

Factors are built from cyclotomic cosets: the factor whose roots are
``beta^i`` for ``i`` in a q-coset is the minimal polynomial of ``beta^i`` over
F_q.  It is named by the smallest exponent in its coset, so ``g_i`` (over F_p)
and ``h_i`` (over F_{p^2}) are the factors having ``beta^i`` as a root.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from collections.abc import Sequence

from . import poly
from .errors import AlgebraError, PreconditionError
from .fields import SplitField


def xn_minus_1(F, n: int) -> list[int]:
    return poly.trim([F.neg(F.one)] + [0] * (n - 1) + [F.one])


def reduce(F, f: Sequence[int], n: int) -> list[int]:
    """Residue of f modulo X^n - 1 (fold exponents mod n)."""
    out = [0] * n
    for i, c in enumerate(f):
        if c:
            out[i % n] = F.add(out[i % n], c)
    return poly.trim(out)


def ring_mul(F, f: Sequence[int], g: Sequence[int], n: int) -> list[int]:
    if not f or not g:
        return []
    out = [0] * n
    for i, a in enumerate(f):
        if a == 0:
            continue
        for j, b in enumerate(g):
            if b:
                k = (i + j) % n
                out[k] = F.add(out[k], F.mul(a, b))
    return poly.trim(out)


def ring_pow(F, f: Sequence[int], e: int, n: int) -> list[int]:
    result = [F.one]
    base = reduce(F, f, n)
    while e:
        if e & 1:
            result = ring_mul(F, result, base, n)
        e >>= 1
        if e:
            base = ring_mul(F, base, base, n)
    return result


def to_vector(f: Sequence[int], n: int) -> list[int]:
    """Length-n coefficient vector of a ring residue."""
    if len(f) > n:
        raise PreconditionError(f"polynomial of degree {len(f) - 1} is not a residue mod X^{n} - 1")
    return list(f) + [0] * (n - len(f))


def check_involution(n: int, m: int) -> int:
    m %= n
    if (m * m) % n != 1 % n:
        raise PreconditionError(f"m={m} is not a square root of 1 mod {n}")
    return m


def frobenius_substitute(F, a: Sequence[int], n: int, m: int) -> list[int]:
    """a(X^{-m}) in R: the coefficient of X^i moves to X^{-m*i mod n}."""
    m = check_involution(n, m)
    out = [0] * n
    for i, c in enumerate(reduce(F, a, n)):
        out[(-m * i) % n] = c
    return poly.trim(out)


def cyclotomic_cosets(n: int, q: int) -> list[tuple[int, ...]]:
    """Orbits of i -> q*i on Z_n, each listed in orbit order from its least
    element, sorted by that element."""
    if math.gcd(n, q) != 1:
        raise PreconditionError(f"gcd({n}, {q}) != 1")
    seen: set[int] = set()
    out = []
    for i in range(n):
        if i in seen:
            continue
        orbit = [i]
        j = i * q % n
        while j != i:
            orbit.append(j)
            j = j * q % n
        seen.update(orbit)
        out.append(tuple(orbit))
    return out


@dataclass(frozen=True)
class Factor:
    index: int
    coset: tuple[int, ...]
    coeffs: tuple[int, ...]

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def roots(self) -> frozenset[int]:
        return frozenset(self.coset)


@dataclass(frozen=True)
class FactorSet:
    """Irreducible factors of X^n - 1 over F_p (``over_quad=False``) or
    F_{p^2}, with their root cosets."""

    n: int
    over_quad: bool
    factors: tuple[Factor, ...]

    def __getitem__(self, index: int) -> Factor:
        for f in self.factors:
            if f.index == index:
                return f
        raise KeyError(f"no factor named {index}; valid names are {self.indices}")

    def __iter__(self):
        return iter(self.factors)

    def __len__(self) -> int:
        return len(self.factors)

    @property
    def indices(self) -> list[int]:
        return [f.index for f in self.factors]

    def owner(self, exponent: int) -> Factor:
        """The factor with beta^exponent as a root."""
        exponent %= self.n
        for f in self.factors:
            if exponent in f.coset:
                return f
        raise KeyError(exponent)  # pragma: no cover

    def to_json(self, quad=None) -> list[dict]:
        out = []
        for f in self.factors:
            coeffs = list(f.coeffs)
            if self.over_quad and quad is not None:
                coeffs = [list(quad.components(c)) for c in coeffs]
            out.append({"index": f.index, "degree": f.degree, "coset": list(f.coset), "coefficients": coeffs})
        return out


def factor_xn_minus_1(split: SplitField, over_quad: bool = False) -> FactorSet:
    """Factor X^n - 1 over F_p, or over F_{p^2} when ``over_quad``.

    Each factor is the product of (X - beta^i) over one coset, computed in the
    split field; every coefficient is checked to lie in the base field.
    """
    n, p = split.n, split.p
    ext = split.ext
    q = p * p if over_quad else p
    factors = []
    for coset in cyclotomic_cosets(n, q):
        prod = poly.from_roots(ext, (split.beta_pow(i) for i in coset))
        coeffs = []
        for c in prod:
            if over_quad:
                lifted = split.lift(c)
                if lifted is None:
                    raise AlgebraError(f"coefficient of h_{coset[0]} is not in GF({p}^2)")
                coeffs.append(lifted)
            else:
                if c >= p:
                    raise AlgebraError(f"coefficient of g_{coset[0]} is not in GF({p})")
                coeffs.append(c)
        factors.append(Factor(coset[0], coset, tuple(coeffs)))
    return FactorSet(n, over_quad, tuple(factors))


def crt_combine(F, residues: Sequence[tuple[Sequence[int], Sequence[int]]]) -> list[int]:
    """The unique f with deg f < sum(deg m_i) and f = v_i mod m_i for all i."""
    value: list[int] = []
    modulus: list[int] = [F.one]
    for v, m in residues:
        m = poly.trim(m)
        if poly.gcd(F, modulus, m) != [F.one]:
            raise PreconditionError("CRT moduli are not pairwise coprime")
        # value + modulus * k = v (mod m)
        inv = poly.inverse_mod(F, modulus, m)
        k = poly.mod(F, poly.mul(F, poly.sub(F, v, value), inv), m)
        value = poly.add(F, value, poly.mul(F, modulus, k))
        modulus = poly.mul(F, modulus, m)
        value = poly.mod(F, value, modulus)
    return value
