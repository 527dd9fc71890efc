from __future__ import annotations

import itertools
import json

import numpy as np
import pytest

from sigmastab import poly, ring
from sigmastab.blueprint import (
    CodeBlueprint,
    build_g,
    centralizer_generator,
    choose_h,
    compute_a,
    construct,
    pair_conjugate_factors,
    strategy_select,
    validate_good_triplet,
    z_set_basis,
)
from sigmastab.errors import ConstructionError, NotGoodTriplet, PreconditionError
from sigmastab.fields import PrimeField, SplitField
from sigmastab.symplectic import (
    SubspaceBasis,
    is_quad_linear,
    is_sigma_isotropic,
    is_simultaneously_cyclic,
    is_uniquely_cyclic,
    same_span,
)
from sigmastab.manifest import MANIFEST

F2 = PrimeField(2)


# ----------------------------------------------------------------------------
# triplets and routes


def test_good_triplet_examples():
    assert validate_good_triplet(9, 2, -1).t == 0
    assert validate_good_triplet(5, 2, -1).t == 0
    assert validate_good_triplet(5, 2, 1).t == 2  # 5 | 2^2 + 1


def test_standard_route_refused_for_n9():
    # 9 | 2^3 + 1 with t = 3 odd
    with pytest.raises(NotGoodTriplet):
        validate_good_triplet(9, 2, 1)


@pytest.mark.parametrize("m", [-1, 1])
def test_odd_order_refused(m):
    with pytest.raises(NotGoodTriplet):
        validate_good_triplet(7, 2, m)


def test_bad_involution_and_gcd():
    with pytest.raises(PreconditionError):
        validate_good_triplet(15, 2, 2)
    with pytest.raises(PreconditionError):
        validate_good_triplet(10, 2, -1)


def test_strategy_select():
    r5 = strategy_select(5, 2)
    assert (r5.m, r5.t, r5.name) == (1, 2, "standard")
    r9 = strategy_select(9, 2)
    assert (r9.m, r9.name) == (-1, "sigma_minus_one")
    r15 = strategy_select(15, 2)  # ord 4, 2^2 = 4: m = -4 = 11
    assert (r15.m, r15.name) == (11, "nontrivial_root")
    with pytest.raises(NotGoodTriplet):
        strategy_select(7, 2)


# ----------------------------------------------------------------------------
# factors


def _factors(n, over_quad=False):
    return ring.factor_xn_minus_1(SplitField.build(n, 2), over_quad)


@pytest.mark.parametrize("n,extra,names,deg", [
    (5, (), (0,), 1),
    (15, (7,), (0, 7), 5),
    (21, (3, 5, 9), (0, 3, 5, 9), 13),
    (21, (5,), (0, 3, 5, 9), 13),  # odd-degree g3, g9 are mandatory
])
def test_build_g(n, extra, names, deg):
    g, got = build_g(_factors(n), 2, extra)
    assert got == names and poly.deg(g) == deg
    assert not poly.mod(F2, ring.xn_minus_1(F2, n), g)


def test_pairs_n5():
    pairs = pair_conjugate_factors(_factors(5, True), {0}, 2)
    assert [(a.index, b.index) for a, b in pairs] == [(1, 2)]


def test_pairs_n9():
    pairs = pair_conjugate_factors(_factors(9, True), {0}, 2)
    assert [(set(a.coset), set(b.coset)) for a, b in pairs] == [({1, 4, 7}, {2, 8, 5}), ({3}, {6})]


def test_pairs_n13_cover_cofactor():
    pairs = pair_conjugate_factors(_factors(13, True), {0}, 2)
    covered = set().union(*(set(a.coset) | set(b.coset) for a, b in pairs))
    assert covered == set(range(1, 13))
    for a, b in pairs:
        assert set(b.coset) == {2 * i % 13 for i in a.coset}


def test_unpaired_factor_detected():
    # at n=21 the odd-degree g3 must sit in g; leaving it out leaves a
    # self-conjugate F_4 factor
    with pytest.raises(ConstructionError):
        pair_conjugate_factors(_factors(21, True), {0}, 2)


def test_choose_h_rejects_bad_selection():
    quad = SplitField.build(5, 2).quad
    pairs = pair_conjugate_factors(_factors(5, True), {0}, 2)
    with pytest.raises(ConstructionError):
        choose_h(quad, pairs, [1, 2])
    with pytest.raises(ConstructionError):
        choose_h(quad, pairs, [])
    h, names = choose_h(quad, pairs, [2])
    assert names == (2,)


# ----------------------------------------------------------------------------
# blueprints


@pytest.mark.parametrize("row", MANIFEST, ids=lambda r: f"n{r.n}k{r.k}")
def test_manifest_rows_construct(row, code):
    bp = code(row.n, row.k)
    assert bp.k == row.k
    quad = bp.quad
    # g h hbar = X^n - 1 over F_4
    assert poly.mul(quad, poly.mul(quad, list(bp.g), list(bp.h)), list(bp.hbar)) == ring.xn_minus_1(quad, bp.n)
    # f = c0^{-1} a g
    F = bp.Fp
    assert list(bp.f) == ring.ring_mul(F, [F.inv(quad.c0)], ring.ring_mul(F, list(bp.a), list(bp.g), bp.n), bp.n)
    assert bp.stabilizer.dim == bp.n - bp.k
    assert bp.centralizer.dim == bp.n + bp.k


@pytest.mark.parametrize("n,k", [(5, 1), (13, 1), (15, 5), (17, 1)])
def test_a_identities(n, k, code):
    bp = code(n, k)
    F, quad = bp.Fp, bp.quad
    cof = bp.g_cofactor
    a = list(bp.a)
    mu_a = poly.sub(F, poly.sub(F, poly.mul(F, a, a), poly.scale(F, quad.c1, a)), [quad.c0])
    assert not poly.mod(F, mu_a, cof)
    assert not poly.mod(quad, poly.sub(quad, a, [quad.conjugate(quad.eta)]), list(bp.h))
    assert not poly.mod(quad, poly.sub(quad, a, [quad.eta]), list(bp.hbar))


def test_a_fixed_by_power_on_standard_route():
    # (13, 2, 1): t = 6, a^(2^6) = a mod (X^13 - 1)/g
    bp = construct(13, 2, 1)
    assert bp.t == 6
    F = bp.Fp
    lhs = ring.ring_pow(F, list(bp.a), 2**bp.t, 13)
    assert not poly.mod(F, poly.sub(F, lhs, list(bp.a)), bp.g_cofactor)


def test_compute_a_trivial_code():
    sp = SplitField.build(5, 2)
    quad = sp.quad
    assert compute_a(quad, 5, ring.xn_minus_1(quad.base, 5), [1], [1]) == []


def test_trivial_code_all_factors_in_g():
    bp = construct(5, 2, -1, g_extra=[1])
    assert bp.k == 5 and bp.a == () and bp.stabilizer.dim == 0
    assert bp.centralizer.dim == 10


@pytest.mark.parametrize("n,m", [(5, -1), (5, 1), (9, -1), (13, 1), (15, 11), (17, 1)])
def test_structural_properties(n, m):
    bp = construct(n, 2, m)
    S, C = bp.stabilizer, bp.centralizer
    assert is_sigma_isotropic(S, bp.sigma)
    assert is_uniquely_cyclic(S)
    assert is_simultaneously_cyclic(S) and is_simultaneously_cyclic(C)
    assert is_quad_linear(S, 1, 1) and is_quad_linear(C, 1, 1)
    assert all(C.contains(r) for r in S.rows)
    assert S.dim + C.dim == 2 * n


def test_centralizer_does_not_depend_on_m_for_same_polys():
    bp = construct(5, 2, -1, h_select=[2])
    assert centralizer_generator(bp) == list(bp.h)
    Z = SubspaceBasis.span(z_set_basis(bp), 5, 2)
    assert same_span(Z.rows, bp.centralizer.rows, 2)


def test_odd_characteristic_code():
    bp = construct(5, 3, -1)  # ord_5(3) = 4
    assert bp.quad.c0 == 2
    S = bp.stabilizer
    assert is_sigma_isotropic(S, bp.sigma) and is_uniquely_cyclic(S)
    assert S.dim + bp.centralizer.dim == 10
    assert bp.p == 3 and bp.k == 1


@pytest.mark.parametrize("n,k", [(5, 1), (15, 9), (21, 13)])
def test_json_round_trip(n, k, code):
    bp = code(n, k)
    text = bp.dumps()
    again = CodeBlueprint.from_json(text)
    assert again.to_json() == bp.to_json()
    tampered = json.loads(text)
    tampered["a"] = tampered["a"][:-1] + [1 - tampered["a"][-1]] if tampered["a"] else [1]
    with pytest.raises(ConstructionError):
        CodeBlueprint.from_json(tampered)


def test_auto_h_prefers_longest_run():
    from sigmastab.distance import bch_distance

    bp = construct(15, 2, -1)
    best = bch_distance(bp).d
    sp = bp.split
    pairs = pair_conjugate_factors(ring.factor_xn_minus_1(sp, True), {0}, 2)
    for choice in itertools.product(*pairs):
        other = construct(15, 2, -1, h_select=[f.index for f in choice])
        assert bch_distance(other).d <= best


# ----------------------------------------------------------------------------
# exhaustive oracles at n = 5, 9


def _all_vectors(n):
    return np.array(list(itertools.product((0, 1), repeat=2 * n)), dtype=np.int64)


@pytest.mark.parametrize("n", [5, 9])
def test_exhaustive_centralizer_equals_z_set(n, code):
    from sigmastab.symplectic import pairings

    bp = code(n)
    V = _all_vectors(n)
    in_kernel = ~np.any(pairings(V, bp.stabilizer.rows, 2, bp.sigma), axis=1)
    kernel = {tuple(v) for v in V[in_kernel]}
    Z = SubspaceBasis.span(z_set_basis(bp), n, 2)
    z_elems = {tuple(v) for v in Z.elements()}
    assert kernel == z_elems
    assert len(kernel) == 2 ** (n + bp.k)
    # no (0, b) with b != 0 in S
    S_elems = bp.stabilizer.elements()
    assert not any(not v[:n].any() and v[n:].any() for v in S_elems)
