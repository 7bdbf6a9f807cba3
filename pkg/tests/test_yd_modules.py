import pytest

from cocycle_twist.group_cohomology import trivial_cocycle
from cocycle_twist.groups import TranspositionClass, symmetric_group
from cocycle_twist.linalg import SparseMatrix
from cocycle_twist.scalars import GroupRingScalar
from cocycle_twist.spin_cover import aligned_spin_cocycle
from cocycle_twist.yd_modules import (
    ModuleError, adjoint_module, lift_module, braid_equation_witness, braiding, components, dual, is_module_map,
    module_from_json, module_from_spec, pairing_invariant, rack_cocycle, rack_module,
    rack_rule_mismatch, same_module, satisfies_braid_equation, specialize_module, trivial_module,
    twist_module, twisted_braiding,
)

from oracles import dense_braiding, fomin_kirillov_sign, inversions, rack_action_dense


def _dense(M: SparseMatrix):
    return [[int(x) for x in row] for row in M.to_dense()]


@pytest.mark.parametrize("n", [3, 4])
def test_q1_action_and_braiding_match_dense_oracle(n):
    Y = rack_module(n, "q1")
    perms, action, degrees = rack_action_dense(n, fomin_kirillov_sign)
    assert [p.images for p in Y.group.elements] == perms
    assert Y.degrees == degrees
    for g in range(len(perms)):
        assert _dense(Y.action[g]) == action[g]
    P = dense_braiding(action, degrees, Y.rank)
    assert _dense(braiding(Y)) == P.tolist()


@pytest.mark.parametrize("n", [3, 4])
def test_qm1_is_the_sign_character(n):
    Y = rack_module(n, "qm1")
    perms, action, _ = rack_action_dense(n, lambda s, pair: (-1) ** inversions(s))
    for g in range(len(perms)):
        assert _dense(Y.action[g]) == action[g]


@pytest.mark.parametrize("n", [3, 4, 5])
def test_qz_on_transpositions_follows_the_closed_rule(n):
    Y = rack_module(n, "qz")
    G = Y.group
    X = TranspositionClass(n)
    z = GroupRingScalar.z(2)
    for a, (i0, j0) in enumerate(X.pairs):
        sigma = G.transposition(i0, j0)
        p = G.perm(sigma)
        for k, (i, j) in enumerate(X.pairs):
            want = z if p(i) < p(j) else GroupRingScalar.constant(2, -1)
            assert Y.action[sigma].column(k) == {X.act(p, k): want}
    assert rack_rule_mismatch(rack_cocycle(n, "qz")) is None
    assert rack_rule_mismatch(rack_cocycle(n, "q1"), transpositions_only=False) is None


def test_qz_components_are_q1_and_qm1():
    Y = rack_module(3, "qz")
    comps = dict((int(q), Yq) for q, Yq in components(Y))
    assert same_module(comps[1], rack_module(3, "q1"))
    assert same_module(comps[-1], rack_module(3, "qm1"))


@pytest.mark.parametrize("spec", ["X3:q1", "X3:qm1", "X3:qz", "X4:q1", "X4:qm1", "X4:qz", "adjoint:S3", "trivial:3"])
def test_braid_equation(spec):
    Y = module_from_spec(spec)
    assert satisfies_braid_equation(braiding(Y), Y.rank)


def test_braid_equation_detects_a_bad_matrix():
    r = 2
    bad = SparseMatrix(4, 4, {0: {0: 1}, 1: {1: 2, 2: 1}, 2: {1: 1}, 3: {3: 1}})
    assert braid_equation_witness(bad, r) is not None


@pytest.mark.parametrize("n", [3, 4, 5])
def test_twist_of_q1_by_aligned_spin_is_qz(n):
    T = twist_module(rack_module(n, "q1"), aligned_spin_cocycle(n))
    assert same_module(T, rack_module(n, "qz"))


def test_twisted_braiding_matches_braiding_of_twisted_module():
    n = 3
    mu = aligned_spin_cocycle(n)
    Y = rack_module(n, "q1")
    assert twisted_braiding(Y, mu) == braiding(twist_module(Y, mu))
    assert same_module(twist_module(Y, trivial_cocycle(Y.group, 2)), lift_module(Y, 2))


def test_dual_pairing_and_module_maps():
    for Y in (rack_module(3, "q1"), rack_module(3, "qz"), adjoint_module(symmetric_group(3))):
        assert pairing_invariant(Y, dual(Y))
        assert is_module_map(Y, Y, SparseMatrix.identity(Y.rank, Y.ring.one() if Y.ring.kind == "group_ring" else 1))


def test_json_round_trip():
    for spec in ("X3:q1", "X3:qz", "adjoint:S3"):
        Y = module_from_spec(spec)
        assert same_module(module_from_json(Y.to_json()), Y)


def test_invalid_modules_rejected():
    G = symmetric_group(3)
    Y = rack_module(3, "q1")
    broken = [A for A in Y.action]
    broken[G.adjacent_indices[0]] = SparseMatrix.identity(Y.rank)
    with pytest.raises(ModuleError):
        type(Y)(Y.ring, G, Y.degrees, broken)
    with pytest.raises(ModuleError):
        module_from_spec("Y3:q1")
    with pytest.raises(ModuleError):
        rack_module(3, "q7")
    with pytest.raises(ModuleError):
        module_from_json({"group_id": "S3"})
    with pytest.raises(ModuleError):
        specialize_module(trivial_module(2), -1)
