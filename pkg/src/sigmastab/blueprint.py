"""Linear cyclic stabilizer codes from sigma_m-isotropic ideals of F_{p^2}[X]/(X^n - 1).

The ideal S is generated by g(X) h(X, eta) where

* g is an F_p-factor of X^n - 1 containing every odd-degree irreducible factor,
* h holds exactly one member of each Frobenius-conjugate pair of F_{p^2}
  factors of (X^n - 1)/g.

As an F_p-space S is spanned by the shifts of (g, f) with f = c0^{-1} a g,
where a is the F_p polynomial with a = 0 mod g, a = eta^p mod h and
a = eta mod hbar.  The sigma_m-centralizer is the ideal generated by h.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass, field
from functools import cached_property
from collections.abc import Iterable, Sequence

import numpy as np

from . import poly, ring
from .errors import ConstructionError, NotGoodTriplet, PreconditionError
from .fields import PrimeField, QuadExtField, SplitField, find_irreducible_quadratic, multiplicative_order
from .symplectic import (
    PauliVector,
    SigmaInvolution,
    SubspaceBasis,
    centralizer,
    is_sigma_isotropic,
    same_span,
)


@dataclass(frozen=True)
class GoodTriplet:
    n: int
    p: int
    m: int
    t: int


@dataclass(frozen=True)
class Route:
    name: str
    m: int
    t: int


def validate_good_triplet(n: int, p: int, m: int) -> GoodTriplet:
    """Check (n, p, m) and find the least t with n | p^t + m (t = 0 for m = -1).

    Raises :class:`NotGoodTriplet` when no such t exists, when t is odd for
    m != -1 (the ideal is forced to be trivial), or when ord_n(p) is odd (every
    factor of X^n - 1 has odd degree).
    """
    if n < 2:
        raise PreconditionError("n must be at least 2")
    if math.gcd(n, p) != 1:
        raise PreconditionError(f"gcd(n={n}, p={p}) != 1")
    m = ring.check_involution(n, m)
    order = multiplicative_order(p, n)
    if order % 2:
        raise NotGoodTriplet(f"ord_{n}({p}) = {order} is odd: no non-trivial sigma_m-isotropic ideals")
    if m == n - 1:
        return GoodTriplet(n, p, -1, 0)
    t = next((t for t in range(order) if (pow(p, t, n) + m) % n == 0), None)
    if t is None:
        raise NotGoodTriplet(f"({n}, {p}, {m}) is not good: n never divides p^t + m")
    if t % 2:
        raise NotGoodTriplet(f"({n}, {p}, {m}) needs odd t={t}; the isotropic ideals are trivial")
    return GoodTriplet(n, p, m, t)


def route_name(m: int, n: int) -> str:
    m %= n
    if m == n - 1:
        return "sigma_minus_one"
    if m == 1:
        return "standard"
    return "nontrivial_root"


def strategy_select(n: int, p: int) -> Route:
    """Pick the involution: m = -p^(2t) when ord_n(p) = 4t, else m = -1 for
    even order; odd order fails."""
    order = multiplicative_order(p, n)
    if order % 2:
        raise NotGoodTriplet(f"ord_{n}({p}) = {order} is odd: our construction fails")
    if order % 4 == 0:
        m = (-pow(p, order // 2, n)) % n
        triplet = validate_good_triplet(n, p, m)
        return Route(route_name(m, n), triplet.m, triplet.t)
    return Route("sigma_minus_one", -1, 0)


# ----------------------------------------------------------------------------
# factor bookkeeping


def build_g(factors: ring.FactorSet, p: int, extra: Iterable[int] = ()) -> tuple[list[int], tuple[int, ...]]:
    """Product of all odd-degree F_p factors and the requested extra factors.

    Returns (g coefficients, sorted factor names).
    """
    names = {f.index for f in factors if f.degree % 2}
    for i in extra:
        names.add(factors[int(i)].index)
    names = tuple(sorted(names))
    g = poly.product(PrimeField(p), (list(factors[i].coeffs) for i in names))
    return g, names


def pair_conjugate_factors(
    quad_factors: ring.FactorSet, g_roots: Iterable[int], p: int
) -> list[tuple[ring.Factor, ring.Factor]]:
    """Group the F_{p^2} factors of (X^n - 1)/g into Frobenius-conjugate pairs.

    Conjugation maps the root coset C to p*C.  Pairs are ordered (lower name,
    higher name).
    """
    n = quad_factors.n
    g_roots = set(g_roots)
    pairs = []
    seen: set[int] = set()
    for fac in quad_factors:
        if fac.index in seen or set(fac.coset) <= g_roots:
            continue
        if set(fac.coset) & g_roots:
            raise ConstructionError(f"h_{fac.index} straddles g")  # pragma: no cover
        conj = quad_factors.owner(fac.index * p % n)
        if conj.index == fac.index:
            raise ConstructionError(
                f"h_{fac.index} is self-conjugate; g must absorb every odd-degree factor"
            )
        seen.update((fac.index, conj.index))
        pairs.append(tuple(sorted((fac, conj), key=lambda f: f.index)))
    return pairs


def choose_h(
    quad: QuadExtField, pairs: Sequence[tuple[ring.Factor, ring.Factor]], selection: Iterable[int]
) -> tuple[list[int], tuple[int, ...]]:
    """h = product of the selected member of each pair.

    Raises :class:`ConstructionError` unless the selection names exactly one
    member of every pair and nothing else.
    """
    selection = set(selection)
    chosen = []
    for r, rbar in pairs:
        hit = [f for f in (r, rbar) if f.index in selection]
        if len(hit) != 1:
            raise ConstructionError(
                f"selection must contain exactly one of h_{r.index}, h_{rbar.index}; got {sorted(selection)}"
            )
        chosen.append(hit[0])
    extra = selection - {f.index for f in chosen}
    if extra:
        raise ConstructionError(f"h indices {sorted(extra)} are not factors of (X^n - 1)/g")
    chosen.sort(key=lambda f: f.index)
    h = poly.product(quad, (list(f.coeffs) for f in chosen))
    return h, tuple(f.index for f in chosen)


def auto_select_h(n: int, pairs: Sequence[tuple[ring.Factor, ring.Factor]]) -> tuple[int, ...]:
    """The selection with the largest BCH distance; ties go to the
    lexicographically smallest tuple of factor names."""
    from .distance import bch_distance_of_roots

    best = None
    for choice in itertools.product(*pairs):
        names = tuple(sorted(f.index for f in choice))
        roots = set().union(*(f.coset for f in choice)) if choice else set()
        d = bch_distance_of_roots(roots, n)[0]
        key = (-d, names)
        if best is None or key < best[0]:
            best = (key, names)
    return best[1] if best else ()


def conjugate_poly(quad: QuadExtField, f: Sequence[int]) -> list[int]:
    return poly.trim([quad.conjugate(c) for c in f])


def compute_a(quad: QuadExtField, n: int, g: Sequence[int], h: Sequence[int], hbar: Sequence[int]) -> list[int]:
    """CRT over F_{p^2}: a = 0 mod g, eta^p mod h, eta mod hbar.

    The result must be fixed by Frobenius; its coefficients are returned as
    F_p elements.
    """
    eta = quad.eta
    residues = [([quad.conjugate(eta)], h), ([eta], hbar), ([], list(g))]
    a = ring.crt_combine(quad, residues)
    if poly.deg(a) >= n:
        raise ConstructionError("CRT result is not reduced")  # pragma: no cover
    if any(not quad.in_base(c) for c in a):
        raise ConstructionError("a(X) is not Frobenius-fixed: conjugate pairing is wrong")
    return a


# ----------------------------------------------------------------------------
# blueprint


@dataclass(frozen=True, eq=False)
class CodeBlueprint:
    """Every polynomial of one constructed code, plus the field contexts used."""

    triplet: GoodTriplet
    route: str
    quad: QuadExtField
    g_indices: tuple[int, ...]
    h_indices: tuple[int, ...]
    g: tuple[int, ...]
    h: tuple[int, ...]
    hbar: tuple[int, ...]
    a: tuple[int, ...]
    f: tuple[int, ...]
    h_roots: tuple[int, ...]
    split: SplitField = field(repr=False)

    @property
    def n(self) -> int:
        return self.triplet.n

    @property
    def p(self) -> int:
        return self.triplet.p

    @property
    def m(self) -> int:
        return self.triplet.m

    @property
    def t(self) -> int:
        return self.triplet.t

    @property
    def k(self) -> int:
        return len(self.g) - 1

    @property
    def Fp(self) -> PrimeField:
        return self.quad.base

    @property
    def sigma(self) -> SigmaInvolution:
        return SigmaInvolution.from_m(self.n, self.m)

    @cached_property
    def generator(self) -> PauliVector:
        """(g, f) as a vector."""
        n = self.n
        F = self.Fp
        g = ring.reduce(F, list(self.g), n)  # g = X^n - 1 is the zero residue
        return PauliVector(tuple(ring.to_vector(g, n)), tuple(ring.to_vector(list(self.f), n)))

    @cached_property
    def stabilizer(self) -> SubspaceBasis:
        return assemble(self)

    @cached_property
    def centralizer(self) -> SubspaceBasis:
        return centralizer_basis(self)

    @cached_property
    def g_cofactor(self) -> list[int]:
        """(X^n - 1)/g over F_p."""
        F = self.Fp
        return poly.exact_div(F, ring.xn_minus_1(F, self.n), list(self.g))

    def label(self) -> str:
        return f"[[{self.n},{self.k}]]"

    def to_json(self) -> dict:
        q = self.quad
        as_pairs = lambda f: [list(q.components(c)) for c in f]  # noqa: E731
        return {
            "n": self.n,
            "p": self.p,
            "m": self.m,
            "t": self.t,
            "route": self.route,
            "mu": {"c0": q.c0, "c1": q.c1},
            "k": self.k,
            "g_indices": list(self.g_indices),
            "h_indices": list(self.h_indices),
            "g": list(self.g),
            "h": as_pairs(self.h),
            "hbar": as_pairs(self.hbar),
            "a": list(self.a),
            "f": list(self.f),
            "h_roots": list(self.h_roots),
            "split_field": {"modulus": list(self.split.ext.modulus), "beta": self.split.beta},
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2)

    @classmethod
    def from_json(cls, data: dict | str) -> CodeBlueprint:
        """Rebuild from JSON and verify every stored polynomial."""
        if isinstance(data, str):
            data = json.loads(data)
        quad = QuadExtField(data["p"], data["mu"]["c0"], data["mu"]["c1"])
        bp = construct(
            data["n"], data["p"], data["m"], g_extra=data["g_indices"], h_select=data["h_indices"], quad=quad
        )
        stored = bp.to_json()
        for key in ("g", "h", "hbar", "a", "f", "k", "h_roots", "t"):
            if stored[key] != data[key]:
                raise ConstructionError(f"blueprint field {key!r} does not match its reconstruction")
        return bp


@dataclass(frozen=True, eq=False)
class IdealBasis:
    S: SubspaceBasis
    generator: PauliVector


def construct(
    n: int,
    p: int = 2,
    m: int | None = -1,
    *,
    g_extra: Iterable[int] = (),
    h_select: Iterable[int] | str = "auto",
    quad: QuadExtField | None = None,
) -> CodeBlueprint:
    """Build a code blueprint.

    ``m=None`` picks the involution with :func:`strategy_select`.  ``g_extra``
    names even-degree F_p factors to fold into g; ``h_select`` names one
    F_{p^2} factor per conjugate pair, or ``"auto"`` for the selection with the
    longest run of consecutive roots.
    """
    if m is None:
        route = strategy_select(n, p)
        m = route.m
    triplet = validate_good_triplet(n, p, m)
    quad = quad or find_irreducible_quadratic(p)
    split = SplitField.build(n, p, quad)
    fp_factors = ring.factor_xn_minus_1(split, over_quad=False)
    quad_factors = ring.factor_xn_minus_1(split, over_quad=True)

    F = quad.base
    g, g_indices = build_g(fp_factors, p, g_extra)
    g_roots = set().union(*(fp_factors[i].coset for i in g_indices))

    pairs = pair_conjugate_factors(quad_factors, g_roots, p)
    if isinstance(h_select, str):
        if h_select != "auto":
            raise PreconditionError(f"unknown h selection mode {h_select!r}")
        h_select = auto_select_h(n, pairs)
    h, h_indices = choose_h(quad, pairs, [int(i) for i in h_select])
    hbar = conjugate_poly(quad, h)
    h_roots = tuple(sorted(set().union(*(quad_factors[i].coset for i in h_indices)))) if h_indices else ()

    xn1 = ring.xn_minus_1(quad, n)
    if poly.mul(quad, poly.mul(quad, g, h), hbar) != xn1:
        raise ConstructionError("g * h * hbar != X^n - 1")

    a = compute_a(quad, n, g, h, hbar)
    f = ring.ring_mul(F, ring.ring_mul(F, [F.inv(quad.c0)], a, n), g, n)

    bp = CodeBlueprint(
        triplet=triplet,
        route=route_name(triplet.m, n),
        quad=quad,
        g_indices=g_indices,
        h_indices=h_indices,
        g=tuple(g),
        h=tuple(h),
        hbar=tuple(hbar),
        a=tuple(a),
        f=tuple(f),
        h_roots=h_roots,
        split=split,
    )
    check_blueprint(bp)
    return bp


def check_blueprint(bp: CodeBlueprint) -> None:
    """Assert the polynomial identities every blueprint must satisfy."""
    F, quad, n = bp.Fp, bp.quad, bp.n
    cof = bp.g_cofactor
    a = list(bp.a)
    # mu(a) = 0 mod (X^n - 1)/g
    mu_a = poly.sub(F, poly.sub(F, poly.mul(F, a, a), poly.scale(F, quad.c1, a)), [quad.c0])
    if cof and poly.mod(F, mu_a, cof):
        raise ConstructionError("mu(a) != 0 mod (X^n - 1)/g")
    if poly.mod(F, a, list(bp.g)):
        raise ConstructionError("a is not pinned to 0 mod g")
    if bp.h and poly.mod(quad, poly.sub(quad, a, [quad.conjugate(quad.eta)]), list(bp.h)):
        raise ConstructionError("a != eta^p mod h")
    # a^(p^t) = a mod (X^n - 1)/g
    if cof and bp.t:
        lhs = ring.ring_pow(F, a, bp.p**bp.t, n)
        if poly.mod(F, poly.sub(F, lhs, a), cof):
            raise ConstructionError("a^(p^t) != a mod (X^n - 1)/g")


# ----------------------------------------------------------------------------
# subspaces


def _shifts(vec: Sequence[int], n: int, count: int) -> np.ndarray:
    v = np.asarray(vec, dtype=np.int64)
    return np.stack([np.roll(v, i) for i in range(count)]) if count else np.zeros((0, n), dtype=np.int64)


def assemble(bp: CodeBlueprint) -> SubspaceBasis:
    """F_p basis of S from the shifts of (g, f) and of eta*(g, f)."""
    n, p = bp.n, bp.p
    gen = bp.generator
    c0, c1 = bp.quad.c0, bp.quad.c1
    ga, fb = np.array(gen.a), np.array(gen.b)
    eta_a, eta_b = c0 * fb % p, (ga + c1 * fb) % p
    rows = np.concatenate(
        [
            np.concatenate([_shifts(ga, n, n), _shifts(fb, n, n)], axis=1),
            np.concatenate([_shifts(eta_a, n, n), _shifts(eta_b, n, n)], axis=1),
        ]
    )
    S = SubspaceBasis.span(rows, n, p)
    if S.dim != n - bp.k:
        raise ConstructionError(f"dim S = {S.dim}, expected n - deg g = {n - bp.k}")
    if not is_sigma_isotropic(S, bp.sigma):
        raise ConstructionError("S is not sigma_m-isotropic")
    return S


def ideal_basis(bp: CodeBlueprint) -> IdealBasis:
    return IdealBasis(bp.stabilizer, bp.generator)


def z_set_basis(bp: CodeBlueprint) -> np.ndarray:
    """Rows (X^i, c0^{-1} X^i a) for i < n and (0, X^j (X^n - 1)/g) for j < deg g."""
    n, p = bp.n, bp.p
    F = bp.Fp
    a = ring.to_vector(poly.scale(F, F.inv(bp.quad.c0), list(bp.a)), n)
    unit_rows = np.concatenate([np.eye(n, dtype=np.int64), _shifts(a, n, n)], axis=1)
    cof = ring.to_vector(bp.g_cofactor, n)
    tail = np.concatenate([np.zeros((bp.k, n), dtype=np.int64), _shifts(cof, n, bp.k)], axis=1)
    return np.concatenate([unit_rows, tail]) % p


def centralizer_basis(bp: CodeBlueprint) -> SubspaceBasis:
    """sigma_m-centralizer of S, computed from the Z-set and checked against
    the kernel of the form."""
    n, p = bp.n, bp.p
    Z = SubspaceBasis.span(z_set_basis(bp), n, p)
    K = centralizer(bp.stabilizer, bp.sigma)
    if Z.dim != n + bp.k or not same_span(Z.rows, K.rows, p):
        raise ConstructionError("Z-set does not match the sigma_m-centralizer")
    return Z


def centralizer_generator(bp: CodeBlueprint) -> list[int]:
    """h(X, eta); validates that the Z-set equals the computed centralizer."""
    centralizer_basis(bp)
    return list(bp.h)
