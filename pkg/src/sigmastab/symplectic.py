"""Vectors of F_p^n x F_p^n, the sigma-symplectic form and subspace algebra.

A vector ``(a, b)`` is stored as one length-2n integer row ``[a | b]``; a
subspace is a 2-D array of such rows kept in reduced row echelon form.  The
pairing is

    <(a, b), (c, d)>_sigma = a . sigma(d) - b . sigma(c)

for a permutation involution sigma, which for the identity is the standard
symplectic form.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from . import ring
from .errors import PreconditionError


@dataclass(frozen=True)
class PauliVector:
    """Label (a, b) of the Weyl error U_a V_b."""

    a: tuple[int, ...]
    b: tuple[int, ...]

    def __post_init__(self):
        if len(self.a) != len(self.b):
            raise PreconditionError("halves of a PauliVector must have equal length")

    @classmethod
    def from_row(cls, row) -> PauliVector:
        row = [int(x) for x in row]
        n = len(row) // 2
        return cls(tuple(row[:n]), tuple(row[n:]))

    @classmethod
    def zero(cls, n: int) -> PauliVector:
        return cls((0,) * n, (0,) * n)

    @property
    def n(self) -> int:
        return len(self.a)

    def row(self) -> np.ndarray:
        return np.array(self.a + self.b, dtype=np.int64)

    def weight(self) -> int:
        return joint_weight(self)


@dataclass(frozen=True)
class SigmaInvolution:
    """Index involution; ``perm[i]`` is the image of i, and (sigma d)_i = d_{perm[i]}."""

    perm: tuple[int, ...]

    def __post_init__(self):
        perm = self.perm
        if sorted(perm) != list(range(len(perm))) or any(perm[perm[i]] != i for i in range(len(perm))):
            raise PreconditionError("sigma must be an involutive permutation")

    @classmethod
    def from_m(cls, n: int, m: int) -> SigmaInvolution:
        m = ring.check_involution(n, m)
        return cls(tuple(m * i % n for i in range(n)))

    @classmethod
    def identity(cls, n: int) -> SigmaInvolution:
        return cls(tuple(range(n)))

    @property
    def n(self) -> int:
        return len(self.perm)

    def apply(self, v) -> np.ndarray:
        return np.asarray(v)[..., list(self.perm)]

    def matrix(self) -> np.ndarray:
        n = self.n
        out = np.zeros((n, n), dtype=np.int64)
        out[np.arange(n), list(self.perm)] = 1
        return out


def _sigma(n: int, sigma: SigmaInvolution | int | None) -> SigmaInvolution:
    if sigma is None:
        return SigmaInvolution.identity(n)
    if isinstance(sigma, SigmaInvolution):
        if sigma.n != n:
            raise PreconditionError("sigma acts on the wrong number of indices")
        return sigma
    return SigmaInvolution.from_m(n, sigma)


def _as_rows(x) -> np.ndarray:
    if isinstance(x, PauliVector):
        return x.row()[None, :]
    arr = np.asarray(x, dtype=np.int64)
    return arr[None, :] if arr.ndim == 1 else arr


# ----------------------------------------------------------------------------
# vectors


def joint_weight(v) -> int:
    """Number of positions i with (a_i, b_i) != (0, 0)."""
    row = _as_rows(v)[0]
    n = row.shape[0] // 2
    return int(np.count_nonzero(row[:n] | row[n:]))


def joint_weights(rows: np.ndarray) -> np.ndarray:
    rows = np.asarray(rows)
    n = rows.shape[1] // 2
    return np.count_nonzero(rows[:, :n] | rows[:, n:], axis=1)


def form_matrix(n: int, p: int, sigma: SigmaInvolution | int | None = None) -> np.ndarray:
    """Gram matrix [[0, sigma], [-sigma, 0]] of the sigma-form."""
    s = _sigma(n, sigma).matrix()
    z = np.zeros((n, n), dtype=np.int64)
    return np.block([[z, s], [(-s) % p, z]]) % p


def sigma_form(u, v, p: int, sigma: SigmaInvolution | int | None = None) -> int:
    u, v = _as_rows(u)[0], _as_rows(v)[0]
    n = u.shape[0] // 2
    return int(u @ form_matrix(n, p, sigma) @ v % p)


def pairings(U, V, p: int, sigma: SigmaInvolution | int | None = None) -> np.ndarray:
    """Matrix of all sigma-form values between rows of U and rows of V."""
    U, V = _as_rows(U), _as_rows(V)
    n = U.shape[1] // 2
    return U @ form_matrix(n, p, sigma) @ V.T % p


def apply_sigma(S, sigma: SigmaInvolution | int) -> np.ndarray:
    """Rows (a, b) -> (a, sigma b)."""
    rows = _as_rows(S).copy()
    n = rows.shape[1] // 2
    s = _sigma(n, sigma)
    rows[:, n:] = s.apply(rows[:, n:])
    return rows


def shift(v, k: int = 1) -> np.ndarray:
    """Simultaneous right cyclic shift (N^k a, N^k b)."""
    rows = _as_rows(v)
    n = rows.shape[1] // 2
    return np.concatenate([np.roll(rows[:, :n], k, axis=1), np.roll(rows[:, n:], k, axis=1)], axis=1)


simultaneous_shift = shift


def eta_multiply(v, c0: int, c1: int, p: int) -> np.ndarray:
    """Multiplication by eta under (a, b) <-> a + eta*b: (a, b) -> (c0 b, a + c1 b)."""
    rows = _as_rows(v)
    n = rows.shape[1] // 2
    a, b = rows[:, :n], rows[:, n:]
    return np.concatenate([c0 * b % p, (a + c1 * b) % p], axis=1)


# ----------------------------------------------------------------------------
# linear algebra over F_p


def rref(M, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form over F_p with zero rows dropped, plus pivot columns."""
    A = np.array(M, dtype=np.int64) % p
    if A.ndim == 1:
        A = A[None, :]
    rows, cols = A.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(A[r:, c])[0]
        if nz.size == 0:
            continue
        k = r + nz[0]
        if k != r:
            A[[r, k]] = A[[k, r]]
        A[r] = A[r] * pow(int(A[r, c]), -1, p) % p
        others = np.nonzero(A[:, c])[0]
        others = others[others != r]
        if others.size:
            A[others] = (A[others] - np.outer(A[others, c], A[r])) % p
        pivots.append(c)
        r += 1
    return A[:r], pivots


def rank(M, p: int) -> int:
    if np.asarray(M).size == 0:
        return 0
    return rref(M, p)[0].shape[0]


def nullspace(M, p: int, ncols: int | None = None) -> np.ndarray:
    """Basis (rows, in RREF) of {x : M x = 0}."""
    M = np.asarray(M, dtype=np.int64)
    if M.size == 0:
        return np.eye(ncols if ncols is not None else M.shape[-1], dtype=np.int64)
    R, pivots = rref(M, p)
    cols = R.shape[1]
    free = [c for c in range(cols) if c not in pivots]
    basis = np.zeros((len(free), cols), dtype=np.int64)
    for i, f in enumerate(free):
        basis[i, f] = 1
        for r, pc in enumerate(pivots):
            basis[i, pc] = -R[r, f] % p
    if basis.shape[0] == 0:
        return basis
    return rref(basis, p)[0]


def span_contains(basis: np.ndarray, v, p: int) -> bool:
    basis = np.asarray(basis)
    if basis.size == 0:
        return not np.any(np.asarray(v) % p)
    return rank(np.vstack([basis, _as_rows(v)]), p) == rank(basis, p)


def same_span(A, B, p: int) -> bool:
    A, B = np.asarray(A), np.asarray(B)
    ra, rb = rank(A, p), rank(B, p)
    if ra != rb:
        return False
    return ra == 0 or rank(np.vstack([A, B]), p) == ra


# ----------------------------------------------------------------------------
# subspaces


@dataclass(frozen=True)
class SubspaceBasis:
    """F_p-subspace of F_p^{2n} held as RREF rows."""

    rows: np.ndarray
    n: int
    p: int

    @classmethod
    def span(cls, vectors, n: int, p: int) -> SubspaceBasis:
        vectors = np.asarray(vectors, dtype=np.int64).reshape(-1, 2 * n)
        if vectors.shape[0] == 0:
            return cls(np.zeros((0, 2 * n), dtype=np.int64), n, p)
        return cls(rref(vectors, p)[0], n, p)

    @property
    def dim(self) -> int:
        return int(self.rows.shape[0])

    def contains(self, v) -> bool:
        return span_contains(self.rows, v, self.p)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, SubspaceBasis)
            and (self.n, self.p) == (other.n, other.p)
            and self.rows.shape == other.rows.shape
            and np.array_equal(self.rows, other.rows)
        )

    __hash__ = None

    def elements(self) -> np.ndarray:
        """All p^dim elements (small subspaces only)."""
        coeffs = np.array(list(itertools.product(range(self.p), repeat=self.dim)), dtype=np.int64)
        if self.dim == 0:
            return np.zeros((1, 2 * self.n), dtype=np.int64)
        return coeffs @ self.rows % self.p


def is_sigma_isotropic(S: SubspaceBasis, sigma: SigmaInvolution | int | None = None) -> bool:
    """True iff every pair of basis rows (self-pairs included) pairs to zero."""
    if S.dim == 0:
        return True
    return not np.any(pairings(S.rows, S.rows, S.p, sigma))


def centralizer(S: SubspaceBasis, sigma: SigmaInvolution | int | None = None) -> SubspaceBasis:
    """{x : <x, u>_sigma = 0 for all u in S}."""
    n, p = S.n, S.p
    if S.dim == 0:
        return SubspaceBasis(np.eye(2 * n, dtype=np.int64), n, p)
    functionals = S.rows @ form_matrix(n, p, sigma).T % p
    return SubspaceBasis(nullspace(functionals, p, 2 * n), n, p)


def is_simultaneously_cyclic(S: SubspaceBasis) -> bool:
    return all(S.contains(r) for r in shift(S.rows))


def is_quad_linear(S: SubspaceBasis, c0: int, c1: int) -> bool:
    return all(S.contains(r) for r in eta_multiply(S.rows, c0, c1, S.p))


def is_uniquely_cyclic(S: SubspaceBasis) -> bool:
    """No element (0, b) with b != 0; i.e. the projection to the first half is injective."""
    if S.dim == 0:
        return True
    return rank(S.rows[:, : S.n], S.p) == S.dim


def polynomial_isotropy_check(u, v, p: int, m: int) -> bool:
    """a(X) d(X^{-m}) - b(X) c(X^{-m}) == 0 in F_p[X]/(X^n - 1)."""
    from .fields import PrimeField

    u, v = _as_rows(u)[0], _as_rows(v)[0]
    n = u.shape[0] // 2
    F = PrimeField(p)
    a, b = [int(x) for x in u[:n]], [int(x) for x in u[n:]]
    c, d = [int(x) for x in v[:n]], [int(x) for x in v[n:]]
    lhs = ring.ring_mul(F, a, ring.frobenius_substitute(F, d, n, m), n)
    rhs = ring.ring_mul(F, b, ring.frobenius_substitute(F, c, n, m), n)
    return not ring.reduce(F, [F.sub(x, y) for x, y in zip(ring.to_vector(lhs, n), ring.to_vector(rhs, n))], n)
