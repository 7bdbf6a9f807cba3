import itertools

import numpy as np
import pytest

from cocycle_twist.group_cohomology import chi_from_cocycle, cohomologous, is_cocycle
from cocycle_twist.groups import symmetric_group
from cocycle_twist.spin_cover import (
    CliffordElement, aligned_spin_cocycle, blade_sign, chi_on_transpositions, clifford_mul,
    cocycle_family, compare_with_vendramin, extension_invariants, length_cocycle, sign_table,
    spin_cocycle, spin_group, vendramin_table,
)
from cocycle_twist.yd_modules import rack_cocycle

from oracles import clifford_word_product


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_blade_signs_match_rewriting(n):
    S = sign_table(n)
    for a, b in itertools.product(range(2 ** n), repeat=2):
        sign, mask = clifford_word_product(a, b, n)
        assert blade_sign(a, b) == sign == S[a, b]
        assert a ^ b == mask


def test_generators_anticommute_and_square_to_one():
    n = 4
    g = [CliffordElement.generator(n, i) for i in range(1, n + 1)]
    one = CliffordElement.scalar(n, 1)
    for i in range(n):
        assert clifford_mul(g[i], g[i]) == one
        for j in range(i + 1, n):
            assert clifford_mul(g[i], g[j]) == -clifford_mul(g[j], g[i])


@pytest.mark.parametrize("n", [3, 4, 5])
def test_spin_cocycle_is_cocycle_with_lift_invariants(n):
    mu = spin_cocycle(n)
    assert is_cocycle(mu)[0]
    inv = extension_invariants(mu)
    assert inv.order == 2 * symmetric_group(n).order
    assert inv.transposition_lift_order == 2
    if n >= 4:
        assert inv.disjoint_lifts_anticommute


def test_family_classes_distinct_for_n4():
    fam = {(a, b): cocycle_family(4, a, b) for a in (0, 1) for b in (0, 1)}
    for x, y in itertools.combinations(fam, 2):
        assert cohomologous(fam[x], fam[y]) is None
    inv = {k: extension_invariants(v) for k, v in fam.items()}
    assert {(v.alpha, v.beta) for v in inv.values()} == set(fam)


def test_length_cocycle_class():
    mu = length_cocycle(4)
    assert is_cocycle(mu)[0]
    inv = extension_invariants(mu)
    assert inv.transposition_lift_order == 4


def test_vendramin_rule_by_hand():
    # z exactly when sigma(i) < sigma(j) for tau = (i j), i < j
    T = vendramin_table(3)
    assert T[0, 2] == 1  # (12) fixes 3 and maps (2 3) to (1 3): 0 < 2
    assert T[0, 0] == 0  # (12) swaps 1 and 2


@pytest.mark.parametrize("n", [3, 4, 5])
def test_aligned_spin_chi_equals_vendramin_exactly(n):
    mu = aligned_spin_cocycle(n)
    assert (chi_on_transpositions(mu) == vendramin_table(n)).all()
    assert cohomologous(mu, spin_cocycle(n)) is not None
    assert compare_with_vendramin(mu).branch == "exact"


def test_aligned_chi_is_the_qz_exponent_on_all_of_sn():
    n = 4
    mu = aligned_spin_cocycle(n)
    G = mu.group
    chi = chi_from_cocycle(mu).table
    q = rack_cocycle(n, "qz")
    from cocycle_twist.groups import TranspositionClass
    X = TranspositionClass(n)
    idx = [G.index[X.perm(k)] for k in range(len(X))]
    assert (chi[:, idx] % 2 == q.zexp % 2).all()


def test_spin_group_order():
    assert spin_group(4).order == 48
    assert np.unique(spin_group(3).table).size == 12
