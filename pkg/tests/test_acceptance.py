"""Acceptance criteria 1-11, one PASS/FAIL line each.

Run under pytest (lines are repeated in the terminal summary) or directly with
``python3 tests/test_acceptance.py``.
"""

import itertools
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

from cocycle_twist.doubles import (  # noqa: E402
    CherednikParams, cherednik_relations_check, dunkl_commute_check, fock_build, heisenberg_checks,
    kernel_dependency_check, shift_check,
)
from cocycle_twist.graded_twist import clifford_algebra, generator_index  # noqa: E402
from cocycle_twist.group_cohomology import cohomologous, h2_structure, is_cocycle, schur_multiplier_abelian  # noqa: E402
from cocycle_twist.groups import elementary_abelian, symmetric_group  # noqa: E402
from cocycle_twist.nichols import (  # noqa: E402
    binomial_theorem_holds, braided_factorial, hilbert_prefix, quadratic_relation_report,
)
from cocycle_twist.spin_cover import (  # noqa: E402
    cocycle_family, compare_with_vendramin, extension_invariants, spin_cocycle,
)
from cocycle_twist.yd_modules import adjoint_module, braiding, module_from_spec, rack_module, satisfies_braid_equation  # noqa: E402

from oracles import (  # noqa: E402
    clifford_word_product, dense_braiding, dense_rank, dense_symmetrizer, fomin_kirillov_sign, rack_action_dense,
)


def _timed(fn):
    start = time.perf_counter()
    out = fn()
    return out, time.perf_counter() - start


def criterion_1():
    parts, ok = [], True
    for n in (4, 5):
        rep, dt = _timed(lambda: h2_structure(symmetric_group(n), 2))
        good = rep.invariant_factors == [2, 2] and dt <= 60
        ok &= good
        parts.append(f"H2(S{n},C2)={rep.invariant_factors} in {dt:.1f}s")
    for (p, k), want in (((2, 2), [2]), ((2, 3), [2, 2, 2]), ((3, 2), [3])):
        got, dt = _timed(lambda: schur_multiplier_abelian(elementary_abelian(p, k), p))
        ok &= got == want and dt <= 60
        parts.append(f"M(C{p}^{k})={got}")
    return ok, "; ".join(parts)


def criterion_2():
    start = time.perf_counter()
    ok, parts = True, []
    for n in (3, 4, 5):
        mu = spin_cocycle(n)
        cocycle, _ = is_cocycle(mu)
        inv = extension_invariants(mu)
        good = (cocycle and inv.order == 2 * symmetric_group(n).order and inv.transposition_lift_order == 2
                and inv.all_transposition_lifts_same_order and (n < 4 or inv.disjoint_lifts_anticommute))
        ok &= good
        parts.append(f"n={n} |E|={inv.order} lift order {inv.transposition_lift_order}"
                     + (f" disjoint anticommute {inv.disjoint_lifts_anticommute}" if n >= 4 else ""))
    fam = [cocycle_family(4, a, b) for a in (0, 1) for b in (0, 1)]
    distinct = all(cohomologous(x, y) is None for x, y in itertools.combinations(fam, 2))
    dt = time.perf_counter() - start
    ok &= distinct and dt <= 120
    parts.append(f"four classes pairwise distinct: {distinct}; {dt:.1f}s")
    return ok, "; ".join(parts)


def criterion_3():
    comp, dt = _timed(lambda: compare_with_vendramin(spin_cocycle(4)))
    ok = comp.branch in ("exact", "coboundary") and dt <= 30
    detail = f"branch={comp.branch}"
    if comp.branch == "coboundary":
        detail += f", correction psi on X_4 = {comp.correction.tolist()}"
    return ok, f"{detail}; {dt:.1f}s"


def criterion_4():
    ok, bad = True, []
    for n in range(1, 5):
        A = clifford_algebra(n)
        G = A.group
        masks = [sum(bit << i for i, bit in enumerate(e)) for e in G.elements]
        for a, b in itertools.product(range(A.rank), repeat=2):
            sign, mask = clifford_word_product(masks[a], masks[b], n)
            (k, c), = A.product(a, b).items()
            if masks[k] != mask or c != sign:
                ok = False
                bad.append((n, a, b))
        for i in range(1, n + 1):
            gi = generator_index(G, i)
            ok &= A.product(gi, gi) == {A.unit: 1}
            for j in range(i + 1, n + 1):
                gj = generator_index(G, j)
                ok &= A.product(gj, gi) == {k: -v for k, v in A.product(gi, gj).items()}
    return ok, "gamma_i^2 = 1, gamma_j gamma_i = -gamma_i gamma_j and all products match rewriting for n = 1..4" + (
        f"; mismatches {bad[:3]}" if bad else "")


def criterion_5():
    start = time.perf_counter()
    failed, count = [], 0
    for n in (3, 4, 5):
        mods = [rack_module(n, v) for v in ("q1", "qm1", "qz")] + [adjoint_module(symmetric_group(n))]
        for Y in mods:
            count += 1
            if not satisfies_braid_equation(braiding(Y), Y.rank):
                failed.append(Y.name)
    dt = time.perf_counter() - start
    return not failed and dt <= 120, f"{count} modules (q1, qm1, qz, adjoint; n = 3,4,5), failures {failed}; {dt:.1f}s"


BUILT_IN = ["X3:q1", "X3:qm1", "X3:qz", "X4:q1", "X4:qm1", "X4:qz", "adjoint:S3", "trivial:2"]


def criterion_6():
    ok, bad = True, []
    for spec in BUILT_IN:
        Y = module_from_spec(spec)
        psi, r = braiding(Y), Y.rank
        for n in range(2, 5):
            if braided_factorial(psi, r, n, "product") != braided_factorial(psi, r, n, "word_sum"):
                ok = False
                bad.append(f"{spec} [{n}]!")
            for k in range(1, n):
                if not binomial_theorem_holds(psi, r, n, k):
                    ok = False
                    bad.append(f"{spec} binom({n},{k})")
    return ok, f"{len(BUILT_IN)} braidings, n = 2..4" + (f"; failures {bad}" if bad else "")


def criterion_7():
    start = time.perf_counter()
    ok, parts = True, []
    for n in (3, 4):
        q1 = hilbert_prefix(rack_module(n, "q1"), 4).ranks
        qm1 = hilbert_prefix(rack_module(n, "qm1"), 4).ranks
        qz = hilbert_prefix(rack_module(n, "qz"), 4)
        good = q1 == qm1 and qz.flat and all(v == q1 for v in qz.components.values())
        ok &= good
        parts.append(f"n={n} q1={q1} qm1={qm1} qz={qz.components}")
    full = hilbert_prefix(rack_module(3, "q1"), 5).ranks
    _, action, degrees = rack_action_dense(3, fomin_kirillov_sign)
    P = dense_braiding(action, degrees, 3)
    oracle = [1] + [dense_rank(dense_symmetrizer(P, 3, d).tolist()) for d in range(1, 6)]
    dt = time.perf_counter() - start
    ok &= full == oracle == [1, 3, 4, 3, 1, 0] and sum(full) == 12 and dt <= 600
    parts.append(f"n=3 prefix {full} (dense oracle {oracle}), total {sum(full)}; {dt:.1f}s")
    return ok, "; ".join(parts)


def criterion_8():
    ok, parts = True, []
    for n in (3, 4):
        rep = quadratic_relation_report(n)
        good = rep.all_in_kernel and rep.count_matches and rep.spans
        ok &= good
        parts.append(f"n={n}: {rep.listed} listed, all in kernel {rep.all_in_kernel}, kernel dim "
                     f"{rep.kernel_dimension}, listed span {rep.listed_span}, S_n-orbit span {rep.orbit_span}")
    return ok, "; ".join(parts)


def criterion_9():
    start = time.perf_counter()
    fails = []
    for n in (3, 4, 5):
        for variant, relation in (("theta", "commute"), ("alpha", "anticommute"), ("theta_tilde", "z_commute")):
            chk = dunkl_commute_check(variant, n, relation)
            if not chk.ok:
                fails.append(f"{variant} n={n} {chk.failures[:3]}")
    dt = time.perf_counter() - start
    return not fails and dt <= 60, f"theta commute, alpha anticommute, theta~ z-commute for n = 3,4,5; failures {fails}; {dt:.1f}s"


def criterion_10():
    ok, parts = True, []
    for n in (3, 4):
        Y = rack_module(n, "q1")
        checks = heisenberg_checks(fock_build(Y, 2))
        good = all(c.status for c in checks) and {c.name for c in checks} == {"heisenberg", "weyl"}
        shift = shift_check(Y, 2)
        ok &= good and shift
        parts.append(f"X{n}: " + ", ".join(f"{c.name} {'ok' if c.status else c.witness}" for c in checks)
                     + f", shift {shift}")
    return ok, "; ".join(parts)


def criterion_11():
    rep, dt = _timed(lambda: cherednik_relations_check(CherednikParams(4, 0, 1), "1z", 3))
    dep = kernel_dependency_check(4)
    failing = [f"{c.name} [{c.witness}]" for c in rep.relations if not c.status]
    specs_ok = all(c.status for cs in rep.specializations.values() for c in cs)
    ok = rep.ok and dep.ok and specs_ok and dt <= 300
    diag = ", ".join(f"{c.name}: {'PASS' if c.status else 'FAIL'}" for c in rep.diagnostics)
    return ok, (f"{len(rep.relations) - len(failing)}/{len(rep.relations)} relations hold; failing {failing}; "
                f"dependency {dep.component_dimensions} ok={dep.ok}; specializations ok={specs_ok}; "
                f"diagnostic {diag}; {dt:.1f}s")


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6,
            criterion_7, criterion_8, criterion_9, criterion_10, criterion_11]


def _run(number, report):
    ok, detail = CRITERIA[number - 1]()
    assert report(number, ok, detail), detail


def test_criterion_1_cohomology(report):
    _run(1, report)


def test_criterion_2_spin_cover(report):
    _run(2, report)


def test_criterion_3_chi_consistency(report):
    _run(3, report)


def test_criterion_4_clifford_twist(report):
    _run(4, report)


def test_criterion_5_braid_equation(report):
    _run(5, report)


def test_criterion_6_symmetrizers(report):
    _run(6, report)


def test_criterion_7_flatness(report):
    _run(7, report)


def test_criterion_8_quadratic_relations(report):
    _run(8, report)


def test_criterion_9_dunkl(report):
    _run(9, report)


def test_criterion_10_heisenberg(report):
    _run(10, report)


def test_criterion_11_covering_cherednik(report):
    _run(11, report)


if __name__ == "__main__":
    failures = 0
    for number, fn in enumerate(CRITERIA, 1):
        ok, detail = fn()
        failures += not ok
        print(f"{'PASS' if ok else 'FAIL'} criterion {number}: {detail}", flush=True)
    sys.exit(1 if failures else 0)
