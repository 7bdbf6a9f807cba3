import itertools

import numpy as np
import pytest

from cocycle_twist.doubles import (
    CherednikParams, DoubleError, annihilation_well_defined, beta_equivariant, cherednik_relations_check,
    collapse_matches_vacuum, commutator, covariance_checks, dunkl_commute_check, dunkl_relation_report, dunkl_vector,
    fock_build, heisenberg_beta, heisenberg_checks, kernel_dependency_check, minimal_degree1_relations,
    shift_check, specialize_double, twisted_fock_build,
)
from cocycle_twist.group_cohomology import trivial_cocycle
from cocycle_twist.groups import TranspositionClass, symmetric_group
from cocycle_twist.scalars import InvalidRoot
from cocycle_twist.spin_cover import aligned_spin_cocycle
from cocycle_twist.yd_modules import module_from_spec, rack_module

from oracles import dense_braiding, dense_rank, dense_symmetrizer, fomin_kirillov_sign, inversions, rack_action_dense


def _failed(checks):
    return [c.name for c in checks if not c.status]


@pytest.mark.parametrize("n,D", [(3, 3), (4, 2)])
def test_heisenberg_and_weyl_in_vacuum_model(n, D):
    F = fock_build(rack_module(n, "q1"), D)
    checks = heisenberg_checks(F)
    assert {c.name for c in checks} == {"heisenberg", "weyl"}
    assert not _failed(checks)


def test_covariance_and_well_defined_annihilation():
    F = fock_build(rack_module(3, "q1"), 3)
    assert not _failed(covariance_checks(F))
    assert annihilation_well_defined(F)


def test_operator_algebra_basics():
    F = fock_build(rack_module(3, "q1"), 2)
    L = F.create({0: 1})
    D = F.annihilate({0: 1})
    assert (commutator(L, D) + commutator(D, L)).is_zero()
    assert F.difference(F.identity() @ L, L) is None
    assert F.difference(L, F.zero()) is not None


@pytest.mark.parametrize("spec", ["X3:q1", "X3:qm1", "X3:qz", "adjoint:S3", "trivial:2"])
def test_shift_identity(spec):
    assert shift_check(module_from_spec(spec), 3)


def test_twisted_regular_model():
    TF = twisted_fock_build(rack_module(3, "q1"), aligned_spin_cocycle(3), 2)
    assert set(TF.components) == {"z=1", "z=-1"}
    Y = rack_module(3, "q1")
    assert collapse_matches_vacuum(twisted_fock_build(Y, trivial_cocycle(Y.group, 2), 2))
    with pytest.raises(DoubleError):
        collapse_matches_vacuum(TF)
    for F in TF.components.values():
        assert not _failed(heisenberg_checks(F))
        assert not _failed(covariance_checks(F, symmetric_group(3).adjacent_indices))
    with pytest.raises(InvalidRoot):
        specialize_double(TF, 3)


@pytest.mark.parametrize("n", [3, 4, 5])
def test_dunkl_families(n):
    assert dunkl_commute_check("theta", n, "commute").ok
    assert dunkl_commute_check("alpha", n, "anticommute").ok
    assert dunkl_commute_check("theta_tilde", n, "z_commute").ok


def test_dunkl_wrong_relations_fail():
    assert not dunkl_commute_check("theta", 3, "anticommute").ok
    assert not dunkl_commute_check("alpha", 3, "commute").ok
    assert not dunkl_commute_check("theta_tilde", 3, "commute").ok
    with pytest.raises(DoubleError):
        dunkl_commute_check("theta", 3, "z_commute")


def test_dunkl_vectors_by_hand():
    # theta_2 in X_3 = -e(12) + e(23) with e(ij), i<j; theta~_2 = -e(12) + z e(23)
    X = TranspositionClass(3)
    e12, e23 = X.index_of(0, 1), X.index_of(1, 2)
    assert dunkl_vector("theta", 3, 2) == {e12: -1, e23: 1}
    assert dunkl_vector("alpha", 3, 2) == {e12: -1, e23: -1}
    assert dunkl_vector("theta_tilde", 3, 2, z=-1) == {e12: -1, e23: -1}


def test_adjacent_conjugation_of_theta_tilde_is_off_by_z():
    """s_1 theta~_1 s_1^-1 = z theta~_2 in X_2 from the q_z rule alone.

    q_z((1 2), (1 2)) = -1 because (1 2) reverses 1 < 2; theta~_1 = z e(12) and
    theta~_2 = -e(12), so the conjugate is -z e(12) = z theta~_2.
    """
    z_values = (1, -1)
    for z in z_values:
        theta1 = dunkl_vector("theta_tilde", 2, 1, z=z)
        theta2 = dunkl_vector("theta_tilde", 2, 2, z=z)
        conj = {k: -v for k, v in theta1.items()}
        assert conj == {k: z * v for k, v in theta2.items()}
        assert (conj == theta2) == (z == 1)
    Y = rack_module(2, "qz")
    s1 = symmetric_group(2).adjacent_indices[0]
    (val,) = Y.action[s1].column(0).values()
    assert val == -1


@pytest.mark.parametrize("n", [3, 4, 5])
def test_degree_one_dependency(n):
    rep = kernel_dependency_check(n)
    assert rep.ok and rep.generator_annihilates
    assert rep.component_dimensions == {"z=1": 1, "z=-1": 0}


def test_degree_one_dependency_is_larger_for_n2():
    rep = kernel_dependency_check(2)
    assert rep.component_dimensions == {"z=1": 1, "z=-1": 1}
    assert not rep.ok


def test_heisenberg_beta_is_nondegenerate_and_equivariant():
    Y = rack_module(3, "q1")
    v_ker, f_ker = minimal_degree1_relations(heisenberg_beta(Y))
    assert v_ker == [] and f_ker == []
    assert beta_equivariant(Y)
    assert beta_equivariant(rack_module(3, "qz"))


def test_rational_cherednik_with_trivial_cocycle():
    rep = cherednik_relations_check(CherednikParams(3), "trivial", 2)
    assert rep.ok and rep.dependency_rank is None


def test_covering_cherednik_n3():
    rep = cherednik_relations_check(CherednikParams(3, 0, 1), "1z", 3)
    assert sorted(_failed(rep.relations)) == ["(b) t_i theta~i = theta~(i+1) t_i",
                                               "(vi) t_i x~i = x~(i+1) t_i"]
    for c in rep.relations:
        if not c.status:
            assert c.witness.startswith("z=-1")
    assert all(c.status for c in rep.diagnostics)
    assert all(c.status for cs in rep.specializations.values() for c in cs)
    assert rep.dependency_rank == 1


def test_cherednik_parameter_guards():
    with pytest.raises(DoubleError):
        CherednikParams(3, t=1)
    with pytest.raises(DoubleError):
        CherednikParams(1)
    with pytest.raises(DoubleError):
        cherednik_relations_check(CherednikParams(3), "2z", 2)


def _dense_dunkl_image_rank(n: int, q: int, d: int) -> int:
    """Rank of [d]! applied to all degree-d words in theta~ at z = q, dense arithmetic throughout."""
    sign = (lambda s, _: (-1) ** inversions(s)) if q == -1 else fomin_kirillov_sign
    _, action, degrees = rack_action_dense(n, sign)
    r = len(degrees)
    S = dense_symmetrizer(dense_braiding(action, degrees, r), r, d)
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    theta = []
    for j in range(n):
        v = np.zeros(r, dtype=np.int64)
        for k, (a, b) in enumerate(pairs):
            if b == j:
                v[k] = -1
            elif a == j:
                v[k] = q
        theta.append(v)
    cols = []
    for word in itertools.product(range(n), repeat=d):
        v = theta[word[0]]
        for a in word[1:]:
            v = np.kron(v, theta[a])
        cols.append(S @ v)
    return dense_rank(np.array(cols).tolist())


@pytest.mark.parametrize("n,d", [(2, 2), (3, 2), (3, 3), (4, 2)])
def test_dunkl_relation_counts_match_dense_oracle(n, d):
    rep = dunkl_relation_report(n, d)
    for q in (1, -1):
        assert rep.counts[f"z={q}"] == n ** d - _dense_dunkl_image_rank(n, q, d)


def test_dunkl_relations_at_z1_leave_the_coinvariant_dimensions():
    # theta_1..theta_n generate a copy of the S_n coinvariant algebra; its Hilbert series is Mahonian
    assert dunkl_relation_report(3, 2).counts["z=1"] == 9 - 2
    assert dunkl_relation_report(4, 2).counts["z=1"] == 16 - 5
    assert dunkl_relation_report(3, 3).counts["z=1"] == 27 - 1


def test_dunkl_relations_contain_commutators_at_z1():
    rels = dunkl_relation_report(3, 2).relations["z=1"]
    M = [[rel.get(w, 0) for w in itertools.product(range(1, 4), repeat=2)] for rel in rels]
    for i, j in [(1, 2), (1, 3), (2, 3)]:
        row = [0] * 9
        row[(i - 1) * 3 + (j - 1)] = 1
        row[(j - 1) * 3 + (i - 1)] = -1
        assert dense_rank(M + [row]) == dense_rank(M)
