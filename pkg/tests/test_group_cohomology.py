import numpy as np
import pytest

from cocycle_twist.group_cohomology import (
    OneCochain, ZmCocycle, chi_from_cocycle, chi_violation, coboundary, cocycle_from_function,
    cocycle_from_json, cohomologous, h2_structure, invariant_factors, is_cocycle,
    schur_multiplier_abelian, trivial_cocycle,
)
from cocycle_twist.groups import GroupError, cyclic_group, elementary_abelian, symmetric_group
from cocycle_twist.kernels import cocycle_violation

from oracles import h2_order_prime


@pytest.mark.parametrize("spec,p", [((2, 2), 2), ((2, 3), 2), ((3, 2), 3)])
def test_h2_abelian_matches_rank_oracle(spec, p):
    G = elementary_abelian(*spec)
    assert h2_structure(G, p).order == h2_order_prime(G.table, p)


def test_h2_s3_and_s4_match_rank_oracle():
    for n, want in ((3, 2), (4, 4)):
        G = symmetric_group(n)
        assert h2_structure(G, 2).order == h2_order_prime(G.table, 2) == want


def test_h2_symmetric_invariant_factors():
    assert h2_structure(symmetric_group(4), 2).invariant_factors == [2, 2]
    assert h2_structure(symmetric_group(5), 2).invariant_factors == [2, 2]
    assert h2_structure(cyclic_group(4), 2).invariant_factors == [2]


def test_schur_multiplier_abelian_and_uct():
    # |H^2(C_p^n, C_p)| = p^n (Ext part) * |M| (Hom part)
    for p, n in ((2, 2), (2, 3), (3, 2)):
        G = elementary_abelian(p, n)
        M = schur_multiplier_abelian(G, p)
        assert len(M) == n * (n - 1) // 2
        assert p ** n * int(np.prod(M)) == h2_structure(G, p).order
    with pytest.raises(GroupError):
        schur_multiplier_abelian(symmetric_group(3), 2)
    with pytest.raises(ValueError):
        schur_multiplier_abelian(elementary_abelian(2, 2), 4)


def test_invariant_factors():
    assert invariant_factors([2, 3]) == [6]
    assert invariant_factors([2, 2, 4]) == [2, 2, 4]
    assert invariant_factors([4, 6]) == [2, 12]


def test_coboundaries_are_cocycles_and_cohomologous_to_zero():
    G = symmetric_group(4)
    rng = np.random.default_rng(3)
    vals = rng.integers(0, 2, G.order)
    vals[G.identity] = 0
    phi = OneCochain(G, 2, vals)
    d = coboundary(phi)
    assert is_cocycle(d)[0]
    witness = cohomologous(trivial_cocycle(G, 2), d)
    assert witness is not None
    assert ((coboundary(witness).table - d.table) % 2 == 0).all()


def test_is_cocycle_reports_a_witness_and_agrees_with_kernel():
    G = symmetric_group(3)
    t = np.zeros((6, 6), dtype=np.int64)
    t[1, 2] = 1
    bad = ZmCocycle(G, 2, t)
    ok, w = is_cocycle(bad)
    assert not ok and w is not None
    assert cocycle_violation(G.table, bad.table, 2) is not None


def test_bicharacter_is_a_cocycle_and_nontrivial():
    G = elementary_abelian(2, 2)
    b = cocycle_from_function(G, 2, lambda g, h: G.elements[g][0] * G.elements[h][1])
    assert is_cocycle(b)[0]
    assert cohomologous(b, trivial_cocycle(G, 2)) is None


def test_chi_is_a_one_cocycle_and_vanishes_on_coboundary_shifts_of_trivial():
    G = symmetric_group(4)
    mu = trivial_cocycle(G, 2)
    assert not chi_from_cocycle(mu).table.any()
    chi = chi_from_cocycle(mu)
    assert chi_violation(chi) is None


def test_json_round_trip_and_errors():
    G = symmetric_group(3)
    mu = trivial_cocycle(G, 2)
    back = cocycle_from_json(mu.to_json())
    assert back.m == 2 and (back.table == mu.table).all()
    with pytest.raises(ValueError):
        cocycle_from_json({"m": 2})
    with pytest.raises(ValueError):
        OneCochain(G, 2, np.ones(6, dtype=np.int64))
