"""Command-line front end: ``cocycle-twist <subcommand> [options]``.

Exit status: 0 when every check passes, 1 when a mathematical identity fails
(the report carries a witness), 2 on usage errors, bad input or budget overflow.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any, Callable

import numpy as np

from . import __version__
from .doubles import (CherednikParams, DoubleError, annihilation_well_defined, covariance_checks,
                      cherednik_relations_check, dunkl_commute_check, dunkl_relation_report, fock_build,
                       heisenberg_checks, shift_check)
from .graded_twist import clifford_algebra, coaction_realization_check, generator_index, group_algebra, twist
from .group_cohomology import cocycle_from_json, h2_structure, is_cocycle, schur_multiplier_abelian
from .groups import GroupError, group_from_spec
from .nichols import (BudgetExceeded, RankCache, hilbert_prefix, quadratic_cover_comparison,
                      quadratic_relation_report)
from .scalars import InvalidRoot, scalar_to_json
from .spin_cover import CLASS_NAMES, cocycle_family, compare_with_vendramin, extension_invariants
from .yd_modules import ModuleError, braid_equation_witness, braiding, module_from_json, module_from_spec


class UsageError(Exception):
    pass


@dataclass
class Outcome:
    result: dict
    checks: dict[str, bool] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(self.checks.values())


@dataclass
class RunManifest:
    command: str
    parameters: dict
    version: str
    cache_hits: int
    cache_misses: int
    wall_time: float
    result_digest: str

    def to_json(self) -> dict:
        return {"command": self.command, "parameters": self.parameters, "version": self.version,
                "cache_hits": self.cache_hits, "cache_misses": self.cache_misses,
                "wall_time": round(self.wall_time, 6), "result_digest": self.result_digest}


def _jsonable(x: Any):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, np.ndarray):
        return _jsonable(x.tolist())
    if isinstance(x, (np.integer,)):
        return int(x)
    if isinstance(x, (bool, int, float, str)) or x is None:
        return x
    return scalar_to_json(x)


def canonical(obj) -> str:
    return json.dumps(_jsonable(obj), sort_keys=True, separators=(",", ":"))


def digest(obj) -> str:
    return hashlib.sha256(canonical(obj).encode()).hexdigest()


def _rational(text: str) -> Fraction | int:
    try:
        v = Fraction(text)
    except ValueError as exc:
        raise UsageError(f"not a rational number: {text!r}") from exc
    return int(v) if v.denominator == 1 else v


def _load_json(path: str) -> dict:
    try:
        return json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read JSON from {path}: {exc}") from exc


# --- subcommands ---------------------------------------------------------------------------------


def cmd_schur(args, cache) -> Outcome:
    G = group_from_spec(args.group)
    divisors = schur_multiplier_abelian(G, args.p)
    return Outcome({"group": G.name, "p": args.p, "elementary_divisors": divisors})


def cmd_cocycle(args, cache) -> Outcome:
    if args.check:
        mu = cocycle_from_json(_load_json(args.check))
        ok, witness = is_cocycle(mu)
        res = {"group": mu.group.name, "m": mu.m, "cocycle": ok}
        if witness is not None:
            res["witness"] = [str(w) if isinstance(w, str) else mu.group.labels[w] for w in witness]
        return Outcome(res, {"cocycle": ok})
    G = group_from_spec(args.group)
    rep = h2_structure(G, args.m)
    return Outcome({"group": G.name, "m": args.m, "elementary_divisors": rep.invariant_factors,
                    "order": rep.order})


def cmd_spin_cocycle(args, cache) -> Outcome:
    if args.cls not in CLASS_NAMES:
        raise UsageError(f"class must be one of {sorted(CLASS_NAMES)}")
    mu = cocycle_family(args.n, *CLASS_NAMES[args.cls])
    ok, witness = is_cocycle(mu)
    inv = extension_invariants(mu)
    res = {"n": args.n, "class": args.cls, "cocycle": ok, "extension_order": inv.order,
           "transposition_lift_order": inv.transposition_lift_order,
           "disjoint_lifts_anticommute": inv.disjoint_lifts_anticommute}
    checks = {"cocycle": ok}
    if args.cls == "1z":
        cmp = compare_with_vendramin(mu)
        res["vendramin_branch"] = cmp.branch
        checks["vendramin"] = cmp.branch != "mismatch"
    table = mu.to_json()
    if args.out:
        Path(args.out).write_text(canonical(table) + "\n")
        res["out"] = args.out
    else:
        res["table"] = table
    return Outcome(res, checks)


def _embed_arg(text: str):
    if text == "z":
        return None
    return _rational(text)


def cmd_twist_algebra(args, cache) -> Outcome:
    if args.clifford:
        n = args.clifford
        A = clifford_algebra(n)
        G = A.group
        gens = [generator_index(G, i) for i in range(1, n + 1)]
        squares = all(A.product(g, g) == {G.identity: 1} for g in gens)
        anti = True
        for i in range(n):
            for j in range(i + 1, n):
                gi, gj = gens[i], gens[j]
                ij, ji = A.product(gi, gj), A.product(gj, gi)
                anti &= {k: -v for k, v in ij.items()} == ji
        res = {"clifford": n, "algebra": A.to_json(), "squares_one": squares, "anticommute": anti}
        return Outcome(res, {"squares_one": squares, "anticommute": anti})
    if not (args.group and args.cocycle):
        raise UsageError("give --clifford N, or --group with --cocycle FILE")
    G = group_from_spec(args.group)
    mu = cocycle_from_json(_load_json(args.cocycle))
    if mu.group.name != G.name:
        raise UsageError("cocycle group does not match --group")
    mu.group = G
    A = group_algebra(G)
    embed = _rational(args.embed)
    T = twist(A, mu, embed)
    ok = coaction_realization_check(A, mu, embed, T)
    return Outcome({"group": G.name, "embed": embed, "algebra": T.to_json(), "coaction_realization": ok},
                   {"coaction_realization": ok})


def _module(args):
    if getattr(args, "input", None):
        return module_from_json(_load_json(args.input))
    return module_from_spec(args.module)


def cmd_yd_check(args, cache) -> Outcome:
    Y = _module(args)  # construction already verifies the YD axioms
    w = braid_equation_witness(braiding(Y), Y.rank)
    res = {"module": Y.name, "rank": Y.rank, "group": Y.group.name, "ring": Y.ring.tag,
           "yetter_drinfeld": True, "braid_equation": w is None}
    if w is not None:
        res["witness"] = list(w)
    if args.dump:
        res["module_json"] = Y.to_json()
    return Outcome(res, {"braid_equation": w is None})


def cmd_nichols_hilbert(args, cache) -> Outcome:
    Y = _module(args)
    hp = hilbert_prefix(Y, args.max_degree, cache=cache, budget=args.max_dim)
    res = {"module": Y.name, **hp.to_json()}
    if args.quadratic_cover:
        qc = quadratic_cover_comparison(Y, args.max_degree, budget=args.max_dim)
        res["quadratic_cover"] = {"dimensions": qc.cover, "agrees_up_to_degree": qc.quadratic_up_to}
    return Outcome(res)


def cmd_relations(args, cache) -> Outcome:
    rep = quadratic_relation_report(args.n)
    res = {"n": rep.n, "listed": rep.listed, "all_in_kernel": rep.all_in_kernel, "failing": rep.failing,
           "kernel_dimension": rep.kernel_dimension, "listed_span": rep.listed_span,
           "orbit_span": rep.orbit_span, "listed_span_kernel": rep.spans, "orbit_spans_kernel": rep.orbit_spans}
    return Outcome(res, {"all_in_kernel": rep.all_in_kernel, "listed_span_kernel": rep.spans})


def cmd_dunkl(args, cache) -> Outcome:
    chk = dunkl_commute_check(args.variant, args.n, args.relation)
    res = {"variant": args.variant, "n": args.n, "relation": args.relation, "holds": chk.ok,
           "failures": [list(p) for p in chk.failures]}
    if args.relation_degree:
        # inspection only: these relations do not affect the exit status
        rep = dunkl_relation_report(args.n, args.relation_degree)
        res["theta_tilde_relations"] = {
            "degree": rep.degree, "counts": rep.counts,
            "bases": {label: [{"*".join(map(str, w)): scalar_to_json(c) for w, c in rel.items()} for rel in rels]
                      for label, rels in rep.relations.items()}}
    return Outcome(res, {"holds": chk.ok})


def cmd_heisenberg_check(args, cache) -> Outcome:
    Y = _module(args)
    F = fock_build(Y, args.max_degree)
    checks = heisenberg_checks(F) + covariance_checks(F)
    well = annihilation_well_defined(F)
    shift = shift_check(Y, 2)
    rows = [c.to_json() for c in checks]
    rows.append({"name": "annihilation well defined", "status": "PASS" if well else "FAIL"})
    rows.append({"name": "shift", "status": "PASS" if shift else "FAIL"})
    status = {r["name"]: r["status"] == "PASS" for r in rows}
    return Outcome({"module": Y.name, "max_degree": args.max_degree, "fock_dimension": F.dim, "relations": rows},
                   status)


def cmd_cherednik_check(args, cache) -> Outcome:
    try:
        params = CherednikParams(args.n, _rational(args.t), _rational(args.c))
    except DoubleError as exc:
        raise UsageError(str(exc)) from exc
    rep = cherednik_relations_check(params, args.cocycle, args.max_degree)
    status = {c.name: c.status for c in rep.relations}
    for label, cs in rep.specializations.items():
        status.update({f"{label}: {c.name}": c.status for c in cs})
    return Outcome(rep.to_json(), status)


COMMANDS: dict[str, Callable] = {
    "schur": cmd_schur, "cocycle": cmd_cocycle, "spin-cocycle": cmd_spin_cocycle,
    "twist-algebra": cmd_twist_algebra, "yd-check": cmd_yd_check, "nichols-hilbert": cmd_nichols_hilbert,
    "relations": cmd_relations, "dunkl": cmd_dunkl, "heisenberg-check": cmd_heisenberg_check,
    "cherednik-check": cmd_cherednik_check,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit a JSON report with sorted keys")
    common.add_argument("--cache", metavar="DIR", help=f"symmetrizer rank cache (default: ${RankCache.ENV})")
    common.add_argument("--manifest", metavar="FILE", help="write the run manifest here")

    p = argparse.ArgumentParser(prog="cocycle-twist", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("schur", parents=[common], help="Schur multiplier of an elementary abelian group")
    s.add_argument("--group", required=True)
    s.add_argument("--p", type=int, required=True)

    s = sub.add_parser("cocycle", parents=[common], help="H^2(G, C_m), or check a cocycle file")
    s.add_argument("--group", default="S4")
    s.add_argument("--m", type=int, default=2)
    s.add_argument("--check", metavar="FILE")

    s = sub.add_parser("spin-cocycle", parents=[common], help="representative cocycles of H^2(S_n, C_2)")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--class", dest="cls", default="1z")
    s.add_argument("--out", metavar="FILE")

    s = sub.add_parser("twist-algebra", parents=[common], help="twist a group algebra by a cocycle")
    s.add_argument("--clifford", type=int, metavar="N")
    s.add_argument("--group")
    s.add_argument("--cocycle", metavar="FILE")
    s.add_argument("--embed", default="-1", help="image of z (a root of unity in Q)")

    for name, helptext in (("yd-check", "YD axioms and braid equation"),
                           ("nichols-hilbert", "Hilbert series prefix of the Nichols algebra"),
                           ("heisenberg-check", "Heisenberg and Weyl relations in the Fock model")):
        s = sub.add_parser(name, parents=[common], help=helptext)
        s.add_argument("--module", default="X3:q1", help="X<n>:q1|qm1|qz, adjoint:<group>, trivial:<r>")
        s.add_argument("--input", metavar="FILE", help="module JSON instead of --module")
        if name == "yd-check":
            s.add_argument("--dump", action="store_true", help="include the module JSON")
        if name == "nichols-hilbert":
            s.add_argument("--max-degree", type=int, default=4)
            s.add_argument("--max-dim", type=int, default=None, help="budget on r^d * d! per degree")
            s.add_argument("--quadratic-cover", action="store_true",
                           help="also report dimensions of T(V)/(ker [2]!) for comparison")
        if name == "heisenberg-check":
            s.add_argument("--max-degree", type=int, default=3)

    s = sub.add_parser("relations", parents=[common], help="quadratic relations of B(RX_n, q_z)")
    s.add_argument("--n", type=int, default=3)

    s = sub.add_parser("dunkl", parents=[common], help="commutation of Dunkl elements in degree 2")
    s.add_argument("--variant", choices=["theta", "alpha", "theta_tilde"], required=True)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--relation", choices=["commute", "anticommute", "z_commute"], required=True)
    s.add_argument("--relation-degree", type=int, default=0,
                   help="also list degree-d relations among theta~_1..theta~_n per component")

    s = sub.add_parser("cherednik-check", parents=[common], help="covering Cherednik relations in the Fock model")
    s.add_argument("--n", type=int, default=4)
    s.add_argument("--c", default="1")
    s.add_argument("--t", default="0")
    s.add_argument("--cocycle", choices=["trivial", "1z"], default="1z")
    s.add_argument("--max-degree", type=int, default=3)
    return p


def _print_human(command: str, outcome: Outcome, out) -> None:
    for key in sorted(outcome.result):
        value = outcome.result[key]
        if key in ("relations", "algebra", "table", "module_json"):
            continue
        print(f"{key}: {canonical(value) if isinstance(value, (dict, list)) else value}", file=out)
    rows = outcome.result.get("relations", [])
    for row in rows:
        line = f"{row['status']}  {row['name']}"
        if row.get("witness"):
            line += f"  [{row['witness']}]"
        print(line, file=out)
    if not rows:
        for name, ok in outcome.checks.items():
            print(f"{'PASS' if ok else 'FAIL'}  {name}", file=out)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    params = {k: v for k, v in sorted(vars(args).items()) if k not in ("json", "cache", "manifest", "command")}
    cache = RankCache(args.cache)
    start = time.perf_counter()
    try:
        outcome = COMMANDS[args.command](args, cache)
    except (UsageError, GroupError, ModuleError, BudgetExceeded, InvalidRoot, DoubleError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    elapsed = time.perf_counter() - start
    status = "PASS" if outcome.ok else "FAIL"
    result = _jsonable(outcome.result)
    manifest = RunManifest(args.command, _jsonable(params), __version__, cache.hits, cache.misses, elapsed,
                           digest({"command": args.command, "result": result}))
    if args.manifest:
        Path(args.manifest).write_text(json.dumps(manifest.to_json(), sort_keys=True, indent=2) + "\n")
    if args.json:
        print(json.dumps({"command": args.command, "status": status, "result": result,
                          "manifest": manifest.to_json()}, sort_keys=True, indent=2))
    else:
        _print_human(args.command, outcome, sys.stdout)
        print(f"status: {status}  digest: {manifest.result_digest[:16]}")
    return 0 if outcome.ok else 1


if __name__ == "__main__":
    sys.exit(main())
