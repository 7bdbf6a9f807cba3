import itertools
from fractions import Fraction

import pytest

from cocycle_twist.graded_twist import (
    AlgebraError, GradedModule, adjoint_graded, associativity_violation, clifford_algebra,
    clifford_cocycle, coaction_realization_check, extend, generator_index, group_algebra,
    laycle_check, rescale, restrict_scalars, specialize_algebra, twist,
)
from cocycle_twist.group_cohomology import is_cocycle
from cocycle_twist.groups import elementary_abelian, symmetric_group
from cocycle_twist.scalars import GroupRingScalar
from cocycle_twist.spin_cover import aligned_spin_cocycle

from oracles import clifford_word_product


def _mask(element) -> int:
    return sum(bit << i for i, bit in enumerate(element))


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_clifford_twist_matches_rewriting(n):
    A = clifford_algebra(n)
    G = A.group
    for a, b in itertools.product(range(A.rank), repeat=2):
        sign, mask = clifford_word_product(_mask(G.elements[a]), _mask(G.elements[b]), n)
        got = A.product(a, b)
        assert len(got) == 1
        (k, c), = got.items()
        assert _mask(G.elements[k]) == mask and c == sign


@pytest.mark.parametrize("n", [2, 3, 4])
def test_clifford_generator_relations(n):
    A = clifford_algebra(n)
    G = A.group
    one = A.unit
    for i in range(1, n + 1):
        gi = generator_index(G, i)
        assert A.product(gi, gi) == {one: 1}
        for j in range(i + 1, n + 1):
            gj = generator_index(G, j)
            ij = A.product(gi, gj)
            assert A.product(gj, gi) == {k: -v for k, v in ij.items()}


def test_clifford_cocycle_and_coaction():
    mu = clifford_cocycle(3)
    assert is_cocycle(mu)[0]
    A = group_algebra(mu.group)
    assert coaction_realization_check(A, mu, -1)
    # a deliberately wrong twist is caught
    wrong = twist(A, mu, 1)
    assert not coaction_realization_check(A, mu, -1, twisted=wrong)


def test_extension_specializes_to_twist_and_original():
    mu = clifford_cocycle(2)
    A = group_algebra(mu.group)
    E = extend(A, mu)
    assert specialize_algebra(E, -1).same_constants(twist(A, mu, -1))
    assert specialize_algebra(E, 1).same_constants(A)
    R = restrict_scalars(E)
    assert R.rank == 2 * A.rank and associativity_violation(R) is None


def test_rescale_by_cochain_gives_cohomologous_twist():
    mu = clifford_cocycle(2)
    A = twist(group_algebra(mu.group), mu, -1)
    B = rescale(A, lambda g: Fraction(2) if g else Fraction(1))
    assert associativity_violation(B) is None


def test_spin_twist_of_group_algebra_is_associative():
    mu = aligned_spin_cocycle(3)
    T = twist(group_algebra(mu.group), mu, -1)
    assert associativity_violation(T) is None
    assert coaction_realization_check(group_algebra(mu.group), mu, -1)


def test_laycle_identity():
    mu = clifford_cocycle(2)
    G = mu.group
    X = adjoint_graded(G)
    Y = GradedModule(G, [1, 2])
    Z = GradedModule(G, [3])
    assert laycle_check(mu, X, Y, Z)
    assert laycle_check(mu, X, Y, Z, embed=-1)


def test_bad_inputs():
    with pytest.raises(ValueError):
        twist(group_algebra(elementary_abelian(2, 2)), clifford_cocycle(2), 3)
    with pytest.raises(AlgebraError):
        specialize_algebra(group_algebra(symmetric_group(3)), -1)
    z = GroupRingScalar.z(2)
    assert z * z == 1
