import numpy as np
import pytest

from cocycle_twist.linalg import SparseMatrix, in_column_space
from cocycle_twist.nichols import (
    BraidingError, BudgetExceeded, DegreeOverflow, RankCache, binomial_theorem_holds,
    braided_factorial, degree_data, hilbert_prefix, index_word, quadratic_cover_comparison, listed_quadratic_relations, nichols_truncation,
    quadratic_relation_report, symmetrizer_apply, twist_equivalence_check,
)
from cocycle_twist.spin_cover import aligned_spin_cocycle
from cocycle_twist.yd_modules import braiding, components, module_from_spec, rack_module

from oracles import dense_braiding, dense_nullspace, dense_rank, dense_symmetrizer, fomin_kirillov_sign, rack_action_dense


def _as_dense(M: SparseMatrix) -> np.ndarray:
    return np.array(M.to_dense(), dtype=np.int64)


@pytest.fixture(scope="module")
def x3_oracle():
    _, action, degrees = rack_action_dense(3, fomin_kirillov_sign)
    P = dense_braiding(action, degrees, 3)
    return P, {d: dense_symmetrizer(P, 3, d) for d in range(1, 5)}


def test_x3_symmetrizer_matches_dense_oracle(x3_oracle):
    P, mats = x3_oracle
    psi = braiding(rack_module(3, "q1"))
    assert (_as_dense(psi) == P.astype(np.int64)).all()
    for d, M in mats.items():
        assert (_as_dense(braided_factorial(psi, 3, d)) == M).all()


def test_x3_ranks_match_dense_elimination(x3_oracle):
    _, mats = x3_oracle
    want = [1] + [dense_rank(mats[d].tolist()) for d in range(1, 5)]
    assert want == [1, 3, 4, 3, 1]
    assert hilbert_prefix(rack_module(3, "q1"), 4).ranks == want


def test_quadratic_kernel_size_for_x3(x3_oracle):
    # [2]! is 9 x 9 here: rank 4, kernel 5
    _, mats = x3_oracle
    assert mats[2].shape == (9, 9)
    assert dense_rank(mats[2].tolist()) == 4
    assert degree_data(braiding(rack_module(3, "q1")), 3, 2).nullity == 5


@pytest.mark.parametrize("spec", ["X3:q1", "X3:qm1", "X3:qz", "adjoint:S3", "trivial:2"])
def test_product_and_word_sum_agree(spec):
    Y = module_from_spec(spec)
    psi = braiding(Y)
    for n in range(2, 5):
        if Y.rank ** n * 24 > 2_000_000:
            break
        assert braided_factorial(psi, Y.rank, n, "product") == braided_factorial(psi, Y.rank, n, "word_sum")


@pytest.mark.parametrize("spec", ["X3:q1", "X3:qz", "trivial:2"])
def test_binomial_theorem(spec):
    Y = module_from_spec(spec)
    psi = braiding(Y)
    for n in range(2, 5):
        for k in range(n + 1):
            assert binomial_theorem_holds(psi, Y.rank, n, k)


def test_trivial_braiding_gives_symmetric_powers():
    # flip braiding: dim S^d(k^2) = d + 1
    assert hilbert_prefix(module_from_spec("trivial:2"), 4).ranks == [1, 2, 3, 4, 5]


def test_flatness_x3():
    hp = hilbert_prefix(rack_module(3, "qz"), 4)
    assert hp.flat and hp.components["z=1"] == [1, 3, 4, 3, 1]
    assert hilbert_prefix(rack_module(3, "qm1"), 4).ranks == [1, 3, 4, 3, 1]


def test_twist_equivalence():
    for n in (3,):
        assert twist_equivalence_check(rack_module(n, "q1"), aligned_spin_cocycle(n), 3).ok


def test_truncation_product_is_associative_and_respects_relations():
    T = nichols_truncation(rack_module(3, "q1"), 3)
    e = [T.letter(a) for a in range(3)]
    for a in e:
        assert T.multiply(a, a) == {}
    for a in e:
        for b in e:
            for c in e:
                assert T.multiply(T.multiply(a, b), c) == T.multiply(a, T.multiply(b, c))
    ab = T.multiply(e[0], e[1])
    with pytest.raises(DegreeOverflow):
        T.multiply(ab, ab)


def test_listed_relations_lie_in_kernel():
    Y = rack_module(4, "qz")
    psi = braiding(Y)
    for name, vec in listed_quadratic_relations(4):
        assert not symmetrizer_apply(psi, Y.rank, 2, vec), name


@pytest.mark.parametrize("n,kernel,listed", [(3, 5, 4), (4, 17, 13)])
def test_quadratic_report_counts(n, kernel, listed):
    rep = quadratic_relation_report(n)
    assert rep.all_in_kernel
    assert set(rep.kernel_dimension.values()) == {kernel}
    assert set(rep.listed_span.values()) == {listed}
    assert rep.orbit_spans


def test_rank_cache_round_trip(tmp_path):
    cache = RankCache(tmp_path)
    Y = rack_module(3, "q1")
    first = hilbert_prefix(Y, 3, cache)
    assert cache.misses == 4
    again = hilbert_prefix(Y, 3, cache)
    assert again.ranks == first.ranks and cache.hits == 4


def test_guards():
    bad = SparseMatrix(4, 4, {0: {0: 1}, 1: {1: 2, 2: 1}, 2: {1: 1}, 3: {3: 1}})
    with pytest.raises(BraidingError):
        braided_factorial(bad, 2, 3)
    with pytest.raises(BudgetExceeded):
        braided_factorial(braiding(rack_module(4, "q1")), 6, 4, budget=1000)


def test_quadratic_cover_matches_dense_ideal(x3_oracle):
    _, mats = x3_oracle
    K = dense_nullspace(mats[2].tolist())
    assert len(K) == 5
    r = 3
    for d in (3, 4):
        gens = []
        for i in range(d - 1):
            left, right = np.eye(r ** i, dtype=object), np.eye(r ** (d - i - 2), dtype=object)
            for k in K:
                block = np.kron(np.kron(left, np.array(k, dtype=object).reshape(-1, 1)), right)
                gens.extend(block.T.tolist())
        cover = r ** d - dense_rank(gens)
        assert cover == quadratic_cover_comparison(rack_module(3, "q1"), d).cover["field"][d]
        assert cover == dense_rank(mats[d].tolist())


def test_quadratic_cover_comparison():
    rep = quadratic_cover_comparison(rack_module(4, "q1"), 4)
    assert rep.cover == rep.nichols == {"field": [1, 6, 19, 42, 71]}
    assert rep.quadratic_up_to == 4
    flat = quadratic_cover_comparison(rack_module(3, "qz"), 4)
    assert flat.cover["z=1"] == flat.cover["z=-1"] == [1, 3, 4, 3, 1]


@pytest.mark.parametrize("spec,d", [("X3:q1", 3), ("X3:qz", 3), ("X4:qm1", 3), ("adjoint:S3", 3)])
def test_kernels_are_yd_submodules(spec, d):
    Y = module_from_spec(spec)
    for q, Yq in components(Y):
        r = Yq.rank
        dd = degree_data(braiding(Yq), r, d)
        K = SparseMatrix.from_columns(r ** d, list(dd.kernel.values()))
        for g in Yq.group.generators:
            rho = Yq.action[g]
            big = rho
            for _ in range(d - 1):
                big = big.kron(rho)
            for v in dd.kernel.values():
                assert in_column_space(K, big.apply(v))
        for v in dd.kernel.values():
            degs = set()
            for w in v:
                acc = Yq.group.identity
                for a in index_word(w, r, d):
                    acc = Yq.group.mul(acc, Yq.degrees[a])
                degs.add(acc)
            assert len(degs) == 1


@pytest.mark.parametrize("variant", ["q1", "qm1", "qz"])
def test_product_and_word_sum_agree_for_x5(variant):
    Y = rack_module(5, variant)
    psi = braiding(Y)
    for n in (2, 3, 4):
        assert braided_factorial(psi, 10, n, "product") == braided_factorial(psi, 10, n, "word_sum")
