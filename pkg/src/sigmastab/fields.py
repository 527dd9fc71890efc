"""Exact arithmetic in F_p, its quadratic extension F_p(eta), and a splitting
field of X^n - 1 that contains both.

Field elements are plain Python ints so that they hash, compare and pack into
numpy arrays without ceremony:

* ``PrimeField``: residues ``0 .. p-1``.
* ``QuadExtField``: ``a + eta*b`` is stored as ``a + p*b`` where eta is a root
  of ``mu(Y) = Y^2 - c1*Y - c0``.
* ``ExtField``: base-p digits of the int are the coefficients of the residue
  class modulo an irreducible polynomial of degree L.  For p = 2 the ints are
  ordinary bit vectors and arithmetic is carry-less.

All field objects are immutable after construction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property

from . import poly
from .errors import AlgebraError, PreconditionError


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    return all(p % d for d in range(3, math.isqrt(p) + 1, 2))


def prime_factors(n: int) -> list[int]:
    """Distinct prime factors of n >= 1, ascending."""
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def multiplicative_order(p: int, n: int) -> int:
    """Order of p in (Z/nZ)^*; 1 when n == 1."""
    if n == 1:
        return 1
    if math.gcd(p, n) != 1:
        raise PreconditionError(f"gcd({p}, {n}) != 1")
    k, x = 1, p % n
    while x != 1:
        x = x * p % n
        k += 1
    return k


class _Field:
    """Shared exponentiation/inversion on top of ``mul`` and ``one``."""

    p: int
    order: int
    zero = 0
    one = 1

    def pow(self, x: int, e: int) -> int:
        if e < 0:
            x, e = self.inv(x), -e
        result = self.one
        while e:
            if e & 1:
                result = self.mul(result, x)
            e >>= 1
            if e:
                x = self.mul(x, x)
        return result

    def inv(self, x: int) -> int:
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        return self.pow(x, self.order - 2)

    def div(self, x: int, y: int) -> int:
        return self.mul(x, self.inv(y))

    def elements(self) -> range:
        return range(self.order)

    def frobenius(self, x: int) -> int:
        return self.pow(x, self.p)


class PrimeField(_Field):
    def __init__(self, p: int):
        if not is_prime(p):
            raise PreconditionError(f"{p} is not prime")
        self.p = p
        self.order = p

    def add(self, x: int, y: int) -> int:
        return (x + y) % self.p

    def sub(self, x: int, y: int) -> int:
        return (x - y) % self.p

    def neg(self, x: int) -> int:
        return -x % self.p

    def mul(self, x: int, y: int) -> int:
        return x * y % self.p

    def inv(self, x: int) -> int:
        if x % self.p == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(x, -1, self.p)

    def frobenius(self, x: int) -> int:
        return x

    def __repr__(self) -> str:
        return f"GF({self.p})"

    def __eq__(self, other) -> bool:
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self) -> int:
        return hash(("GF", self.p))


class QuadExtField(_Field):
    """F_p(eta) with eta^2 = c1*eta + c0."""

    def __init__(self, p: int, c0: int, c1: int):
        self.base = PrimeField(p)
        self.p = p
        self.order = p * p
        self.c0 = c0 % p
        self.c1 = c1 % p
        if any((y * y - self.c1 * y - self.c0) % p == 0 for y in range(p)):
            raise PreconditionError(f"Y^2 - {self.c1}Y - {self.c0} has a root in GF({p})")
        self.eta = p
        self._mul_table = None
        if self.order <= 256:
            self._mul_table = [[self._mul(x, y) for y in range(self.order)] for x in range(self.order)]

    def element(self, a: int, b: int = 0) -> int:
        return a % self.p + self.p * (b % self.p)

    def components(self, x: int) -> tuple[int, int]:
        return x % self.p, x // self.p

    def add(self, x: int, y: int) -> int:
        p = self.p
        if p == 2:
            return x ^ y
        return (x % p + y % p) % p + p * ((x // p + y // p) % p)

    def sub(self, x: int, y: int) -> int:
        p = self.p
        if p == 2:
            return x ^ y
        return (x % p - y % p) % p + p * ((x // p - y // p) % p)

    def neg(self, x: int) -> int:
        p = self.p
        return (-(x % p)) % p + p * ((-(x // p)) % p)

    def _mul(self, x: int, y: int) -> int:
        p = self.p
        a, b = x % p, x // p
        c, d = y % p, y // p
        bd = b * d
        return (a * c + self.c0 * bd) % p + p * ((a * d + b * c + self.c1 * bd) % p)

    def mul(self, x: int, y: int) -> int:
        if self._mul_table is not None:
            return self._mul_table[x][y]
        return self._mul(x, y)

    def conjugate(self, x: int) -> int:
        # x^p; eta^p = c1 - eta since the roots of mu sum to c1
        a, b = self.components(x)
        return self.element(a + self.c1 * b, -b)

    frobenius = conjugate

    def in_base(self, x: int) -> bool:
        return x < self.p

    def mu(self, y: int) -> int:
        """Evaluate mu(Y) = Y^2 - c1*Y - c0 at y."""
        return self.sub(self.sub(self.mul(y, y), self.mul(self.c1, y)), self.c0)

    def __repr__(self) -> str:
        return f"GF({self.p}^2)[eta^2={self.c1}*eta+{self.c0}]"

    def __eq__(self, other) -> bool:
        return isinstance(other, QuadExtField) and (other.p, other.c0, other.c1) == (self.p, self.c0, self.c1)

    def __hash__(self) -> int:
        return hash(("GF2ext", self.p, self.c0, self.c1))


class ExtField(_Field):
    """F_p[Z]/(modulus(Z)) for a monic irreducible modulus of degree L."""

    def __init__(self, p: int, modulus: list[int]):
        self.base = PrimeField(p)
        self.p = p
        self.modulus = poly.trim(modulus)
        self.degree = len(self.modulus) - 1
        if self.degree < 1 or self.modulus[-1] != 1:
            raise PreconditionError("modulus must be monic of positive degree")
        self.order = p**self.degree
        if p == 2:
            self._mod_int = sum(c << i for i, c in enumerate(self.modulus))

    def to_digits(self, x: int) -> list[int]:
        p = self.p
        out = []
        while x:
            x, r = divmod(x, p)
            out.append(r)
        return out

    def from_digits(self, digits) -> int:
        x = 0
        for c in reversed(list(digits)):
            x = x * self.p + c
        return x

    def add(self, x: int, y: int) -> int:
        if self.p == 2:
            return x ^ y
        a, b = self.to_digits(x), self.to_digits(y)
        return self.from_digits(poly.add(self.base, a, b))

    def sub(self, x: int, y: int) -> int:
        if self.p == 2:
            return x ^ y
        a, b = self.to_digits(x), self.to_digits(y)
        return self.from_digits(poly.sub(self.base, a, b))

    def neg(self, x: int) -> int:
        if self.p == 2:
            return x
        return self.from_digits(poly.neg(self.base, self.to_digits(x)))

    def mul(self, x: int, y: int) -> int:
        if self.p == 2:
            top = 1 << self.degree
            red = self._mod_int
            r = 0
            while y:
                if y & 1:
                    r ^= x
                y >>= 1
                x <<= 1
                if x & top:
                    x ^= red
            return r
        prod = poly.mul(self.base, self.to_digits(x), self.to_digits(y))
        return self.from_digits(poly.mod(self.base, prod, self.modulus))

    def __repr__(self) -> str:
        return f"GF({self.p}^{self.degree})"


def find_irreducible_quadratic(p: int) -> QuadExtField:
    """Deterministic choice of F_{p^2}: Y^2+Y+1 for p = 2, else Y^2 - c0 with
    c0 the least quadratic non-residue."""
    if p == 2:
        return QuadExtField(2, 1, 1)
    if not is_prime(p):
        raise PreconditionError(f"{p} is not prime")
    squares = {y * y % p for y in range(p)}
    c0 = next(c for c in range(1, p) if c not in squares)
    return QuadExtField(p, c0, 0)


def is_irreducible(F: PrimeField, f: list[int]) -> bool:
    """Rabin's test: f of degree d is irreducible over F_p iff X^(p^d) = X mod f
    and gcd(X^(p^(d/q)) - X, f) = 1 for every prime q | d."""
    f = poly.monic(F, f)
    d = poly.deg(f)
    if d < 1:
        return False
    if d == 1:
        return True
    p = F.p
    x = [0, 1]
    powers = {0: poly.mod(F, x, f)}
    cur = powers[0]
    for k in range(1, d + 1):
        cur = poly.pow_mod(F, cur, p, f)
        powers[k] = cur
    if poly.sub(F, powers[d], poly.mod(F, x, f)):
        return False
    for q in prime_factors(d):
        g = poly.gcd(F, poly.sub(F, powers[d // q], x), f)
        if g != [F.one]:
            return False
    return True


def find_irreducible(p: int, degree: int) -> list[int]:
    """First monic irreducible of the given degree, candidates ordered by the
    integer whose base-p digits are the lower coefficients."""
    F = PrimeField(p)
    for c in range(1, p**degree):
        low = _digits(c, p, degree)
        if low[0] == 0:
            continue
        cand = low + [1]
        if is_irreducible(F, cand):
            return cand
    raise AlgebraError(f"no irreducible polynomial of degree {degree} over GF({p})")  # pragma: no cover


def _digits(c: int, p: int, width: int) -> list[int]:
    out = []
    for _ in range(width):
        c, r = divmod(c, p)
        out.append(r)
    return out


def element_order(F: _Field, x: int, group_order: int) -> int:
    """Multiplicative order of x, given that it divides ``group_order``."""
    order = group_order
    for q in prime_factors(group_order):
        while order % q == 0 and F.pow(x, order // q) == F.one:
            order //= q
    return order


@dataclass(frozen=True)
class SplitField:
    """F_{p^L} with L = lcm(2, ord_n(p)), holding both F_{p^2} and the n-th
    roots of unity.

    ``gamma`` is the image of eta, ``beta`` the fixed primitive n-th root of
    unity that names factors of X^n - 1.
    """

    n: int
    p: int
    quad: QuadExtField
    ext: ExtField
    gamma: int
    beta: int
    beta_powers: tuple[int, ...] = field(repr=False)

    @property
    def degree(self) -> int:
        return self.ext.degree

    @classmethod
    def build(cls, n: int, p: int, quad: QuadExtField | None = None) -> SplitField:
        if n < 1:
            raise PreconditionError("n must be positive")
        if math.gcd(n, p) != 1:
            raise PreconditionError(f"n={n} is not coprime to p={p}")
        quad = quad or find_irreducible_quadratic(p)
        if quad.p != p:
            raise PreconditionError("quadratic extension has the wrong characteristic")
        L = math.lcm(2, multiplicative_order(p, n))
        ext = ExtField(p, find_irreducible(p, L))
        gamma = _embed_quadratic_root(ext, quad)
        beta = primitive_nth_root(ext, n)
        pows = [ext.one]
        for _ in range(n - 1):
            pows.append(ext.mul(pows[-1], beta))
        return cls(n, p, quad, ext, gamma, beta, tuple(pows))

    def beta_pow(self, i: int) -> int:
        return self.beta_powers[i % self.n]

    def embed(self, x: int) -> int:
        """Image of an F_{p^2} element a + eta*b."""
        a, b = self.quad.components(x)
        return self.ext.add(a, self.ext.mul(b, self.gamma))

    @cached_property
    def _lift_table(self) -> dict[int, int]:
        return {self.embed(x): x for x in self.quad.elements()}

    def lift(self, y: int) -> int | None:
        """Inverse of :meth:`embed`; None when y is outside the subfield."""
        return self._lift_table.get(y)

    def embed_poly(self, f: list[int]) -> list[int]:
        return [self.embed(c) for c in f]


def _embed_quadratic_root(ext: ExtField, quad: QuadExtField) -> int:
    """Deterministic root of mu in ext (which must contain F_{p^2})."""
    q2 = quad.order - 1
    cofactor = (ext.order - 1) // q2
    for x in range(2, ext.order):
        y = ext.pow(x, cofactor)
        if element_order(ext, y, q2) != q2:
            continue
        z = ext.one
        for _ in range(q2):
            val = ext.sub(ext.sub(ext.mul(z, z), ext.mul(quad.c1, z)), quad.c0)
            if val == 0:
                return z
            z = ext.mul(z, y)
    raise AlgebraError("quadratic polynomial has no root in the extension")  # pragma: no cover


def primitive_nth_root(ext: ExtField, n: int) -> int:
    """Deterministic primitive n-th root of unity in ``ext``."""
    if math.gcd(n, ext.p) != 1:
        raise PreconditionError(f"n={n} is not coprime to p={ext.p}")
    group = ext.order - 1
    if group % n:
        raise PreconditionError(f"n={n} does not divide {ext.p}^{ext.degree} - 1")
    if n == 1:
        return ext.one
    cofactor = group // n
    for x in range(2, ext.order):
        b = ext.pow(x, cofactor)
        if all(ext.pow(b, n // q) != ext.one for q in prime_factors(n)):
            return b
    raise AlgebraError("no primitive root found")  # pragma: no cover
