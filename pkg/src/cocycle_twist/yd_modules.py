"""Yetter-Drinfeld modules over a finite group: grading, action, braiding, duals and twists.

A module is a basis with a group degree per basis vector and one action matrix per
group element.  Coefficients live in Q (Python ints and Fractions), in a cyclotomic
field, or in the group ring k[C_m].  Rack modules (X_n, q) are built from a rack
1-cocycle q defined on the Coxeter generators and extended along reduced words.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable

import numpy as np

from .group_cohomology import ZmCocycle, chi_from_cocycle
from .groups import FiniteGroup, GroupError, Perm, TranspositionClass, group_from_spec, symmetric_group
from .linalg import SparseMatrix
from .scalars import QQ, GroupRingScalar, Ring, group_ring, scalar_from_json, scalar_to_json, specialize


class ModuleError(ValueError):
    pass


def _to_native(x):
    """Fractions with denominator 1 become ints, which keeps elimination on the integer path."""
    if isinstance(x, Fraction) and x.denominator == 1:
        return int(x)
    return x


@dataclass
class YDModule:
    ring: Ring
    group: FiniteGroup
    degrees: list[int]
    action: list[SparseMatrix]
    labels: list[str] = field(default_factory=list)
    name: str = "Y"
    verify: bool = field(default=True, repr=False)

    def __post_init__(self):
        if not self.labels:
            self.labels = [f"v{i}" for i in range(self.rank)]
        if self.verify:
            self.check()

    @property
    def rank(self) -> int:
        return len(self.degrees)

    def rho(self, g: int) -> SparseMatrix:
        return self.action[g]

    def act(self, g: int, vec: dict) -> dict:
        return self.action[g].apply(vec)

    def check(self) -> None:
        """Representation and YD compatibility.

        rho(s) rho(h) = rho(sh) for every generator s and every h, together with
        rho(1) = id, forces rho(g) rho(h) = rho(gh) for all pairs by induction on
        word length; it also makes every rho(g) invertible with inverse rho(g^-1),
        over k[C_m] as well as over a field.
        """
        G, r = self.group, self.rank
        if len(self.action) != G.order:
            raise ModuleError("need one action matrix per group element")
        if self.action[G.identity] != SparseMatrix.identity(r):
            raise ModuleError("the identity must act trivially")
        for g in range(G.order):
            for b, col in self.action[g].cols.items():
                want = G.conj(g, self.degrees[b])
                for c in col:
                    if self.degrees[c] != want:
                        raise ModuleError(
                            f"{G.labels[g]} moves basis {b} of degree {G.labels[self.degrees[b]]} "
                            f"out of degree {G.labels[want]}")
        for s in G.generators:
            rs = self.action[s]
            for h in range(G.order):
                if rs @ self.action[h] != self.action[G.mul(s, h)]:
                    raise ModuleError(f"action is not a representation at ({G.labels[s]}, {G.labels[h]})")

    def to_json(self) -> dict:
        G = self.group
        mats = {G.labels[g]: [[i, j, scalar_to_json(v)] for i, j, v in self.action[g].entries()]
                for g in range(G.order)}
        return {"group_id": G.name, "ring": self.ring.tag, "labels": self.labels,
                "degrees": [G.labels[d] for d in self.degrees], "action_matrices": mats}

    def is_monomial(self) -> bool:
        return all(len(col) == 1 for M in self.action for col in M.cols.values())


def module_from_json(obj: dict) -> YDModule:
    try:
        G = group_from_spec(obj["group_id"])
        ring = Ring.from_tag(obj["ring"])
        pos = {lab: g for g, lab in enumerate(G.labels)}
        degrees = [pos[d] for d in obj["degrees"]]
        r = len(degrees)
        action = [None] * G.order
        for lab, entries in obj["action_matrices"].items():
            action[pos[lab]] = SparseMatrix.from_entries(
                r, r, ((i, j, _to_native(scalar_from_json(v))) for i, j, v in entries))
    except (KeyError, TypeError) as exc:
        raise ModuleError(f"malformed module JSON: {exc}") from exc
    if any(a is None for a in action):
        raise ModuleError("missing action matrices")
    return YDModule(ring, G, degrees, action, list(obj.get("labels", [])), name=obj.get("name", "Y"))


# --- standard examples -------------------------------------------------------------------------


def trivial_module(rank: int, group: FiniteGroup | None = None, ring: Ring = QQ) -> YDModule:
    """All degrees 1, trivial action; its braiding is the flip."""
    G = group if group is not None else symmetric_group(1)
    one = ring.one() if ring.kind != "QQ" else 1
    action = [SparseMatrix.identity(rank, one) for _ in range(G.order)]
    return YDModule(ring, G, [G.identity] * rank, action, name=f"trivial{rank}")


def adjoint_module(G: FiniteGroup) -> YDModule:
    """(kG)_ad: basis G, degree g, action h |> g = h g h^-1."""
    N = G.order
    action = [SparseMatrix(N, N, {g: {G.conj(h, g): 1} for g in range(N)}) for h in range(N)]
    return YDModule(QQ, G, list(range(N)), action, list(G.labels), name=f"adjoint:{G.name}")


# --- rack cocycles on transpositions -----------------------------------------------------------

RACK_VARIANTS = ("q1", "qm1", "qz")


@dataclass
class RackCocycle:
    """q(sigma, tau) = sign * z^zexp for sigma in S_n and tau in X_n (lexicographic pairs)."""

    n: int
    m: int
    sign: np.ndarray
    zexp: np.ndarray
    variant: str = ""

    def value(self, sigma: int, k: int, ring: Ring):
        s = int(self.sign[sigma, k])
        if ring.kind == "group_ring":
            return GroupRingScalar.z(ring.m, int(self.zexp[sigma, k])) * s
        if self.zexp[sigma, k]:
            raise ModuleError("z-valued rack cocycle needs the group ring")
        return s


def _conjugation_on_pairs(n: int) -> np.ndarray:
    G = symmetric_group(n)
    X = TranspositionClass(n)
    return np.array([[X.act(G.perm(s), k) for k in range(len(X))] for s in range(G.order)], dtype=np.int64)


def _generator_rule(variant: str, s: Perm, pair: tuple[int, int]) -> tuple[int, int]:
    i, j = pair
    increasing = s(i) < s(j)
    if variant == "q1":
        return (1, 0) if increasing else (-1, 0)
    if variant == "qm1":
        return (-1, 0)
    if variant == "qz":
        return (1, 1) if increasing else (-1, 0)
    raise ModuleError(f"unknown rack variant {variant!r}")


def rack_cocycle(n: int, variant: str) -> RackCocycle:
    """Values on Coxeter generators, extended by q(s rest, tau) = q(s, rest tau rest^-1) q(rest, tau)."""
    if not 2 <= n <= 6:
        raise ModuleError("rack modules are supported for 2 <= n <= 6")
    G = symmetric_group(n)
    X = TranspositionClass(n)
    m = 2 if variant == "qz" else 1
    conj = _conjugation_on_pairs(n)
    N, r = G.order, len(X)
    sign = np.zeros((N, r), dtype=np.int64)
    zexp = np.zeros((N, r), dtype=np.int64)
    sign[G.identity] = 1
    gens = {}
    for k in range(1, n):
        s = G.adjacent_indices[k - 1]
        vals = [_generator_rule(variant, G.perm(s), p) for p in X.pairs]
        gens[k] = (np.array([v[0] for v in vals]), np.array([v[1] for v in vals]))
    for sigma in sorted(range(N), key=lambda g: G.lengths[g]):
        word = G.words[sigma]
        if not word:
            continue
        letter = word[0]
        s = G.adjacent_indices[letter - 1]
        rest = G.mul(s, sigma)
        gs, gz = gens[letter]
        moved = conj[rest]
        sign[sigma] = gs[moved] * sign[rest]
        zexp[sigma] = (gz[moved] + zexp[rest]) % m
    q = RackCocycle(n, m, sign, zexp, variant)
    bad = rack_cocycle_violation(q)
    if bad is not None:
        raise ModuleError(f"rack cocycle identity fails at {bad}")
    return q


def rack_cocycle_violation(q: RackCocycle):
    """First (rho, sigma, tau) violating q(rho sigma, tau) = q(rho, sigma tau sigma^-1) q(sigma, tau), or None."""
    G = symmetric_group(q.n)
    conj = _conjugation_on_pairs(q.n)
    prod = G.table  # prod[rho, sigma]
    moved = conj  # moved[sigma, tau]
    lhs_s = q.sign[prod]  # [rho, sigma, tau]
    rhs_s = q.sign[np.arange(G.order)[:, None, None], moved[None, :, :]] * q.sign[None, :, :]
    lhs_z = q.zexp[prod]
    rhs_z = (q.zexp[np.arange(G.order)[:, None, None], moved[None, :, :]] + q.zexp[None, :, :]) % q.m
    bad = np.argwhere((lhs_s != rhs_s) | (lhs_z != rhs_z))
    if len(bad):
        return tuple(int(x) for x in bad[0])
    return None


def rack_rule_mismatch(q: RackCocycle, transpositions_only: bool = True):
    """Compare with the closed-form rule; for q1 the rule is checked on all of S_n.

    Returns the first (sigma, tau) where the values differ, or None.
    """
    G = symmetric_group(q.n)
    X = TranspositionClass(q.n)
    sigmas = range(G.order)
    if transpositions_only and q.variant != "q1":
        sigmas = [G.transposition(i, j) for i, j in X.pairs]
    for sigma in sigmas:
        p = G.perm(sigma)
        for k, pair in enumerate(X.pairs):
            want = _generator_rule(q.variant, p, pair)
            if (int(q.sign[sigma, k]), int(q.zexp[sigma, k]) % q.m) != (want[0], want[1] % q.m):
                return sigma, k
    return None


def rack_module(n: int, variant: str) -> YDModule:
    """(X_n, q): sigma |> e_tau = q(sigma, tau) e_{sigma tau sigma^-1}."""
    if variant not in RACK_VARIANTS:
        raise ModuleError(f"unknown rack variant {variant!r}")
    q = rack_cocycle(n, variant)
    G = symmetric_group(n)
    X = TranspositionClass(n)
    ring = group_ring(2) if variant == "qz" else QQ
    conj = _conjugation_on_pairs(n)
    r = len(X)
    action = []
    for sigma in range(G.order):
        action.append(SparseMatrix(r, r, {k: {int(conj[sigma, k]): q.value(sigma, k, ring)} for k in range(r)}))
    degrees = [G.transposition(i, j) for i, j in X.pairs]
    Y = YDModule(ring, G, degrees, action, [f"e{lab}" for lab in X.labels()], name=f"X{n}:{variant}")
    Y.rack = q
    return Y


def module_from_spec(spec: str) -> YDModule:
    """Compact specifiers: 'X4:q1', 'X4:qm1', 'X4:qz', 'adjoint:S3', 'trivial:2'."""
    try:
        head, tail = spec.split(":", 1)
    except ValueError:
        raise ModuleError(f"bad module spec {spec!r}") from None
    if head.startswith("X") and head[1:].isdigit():
        return rack_module(int(head[1:]), tail)
    if head == "adjoint":
        try:
            return adjoint_module(group_from_spec(tail))
        except GroupError as exc:
            raise ModuleError(str(exc)) from exc
    if head == "trivial" and tail.isdigit():
        return trivial_module(int(tail))
    raise ModuleError(f"bad module spec {spec!r}")


# --- braiding ----------------------------------------------------------------------------------


def braiding(Y: YDModule) -> SparseMatrix:
    """Psi(e_a (x) e_b) = (deg(e_a) |> e_b) (x) e_a on the basis index a*r + b."""
    r = Y.rank
    cols = {}
    for a in range(r):
        g = Y.degrees[a]
        for b in range(r):
            col = {c * r + a: v for c, v in Y.action[g].column(b).items()}
            if col:
                cols[a * r + b] = col
    return SparseMatrix(r * r, r * r, cols)


def braid_equation_witness(psi: SparseMatrix, r: int):
    """First differing (row, col) of (Psi(x)1)(1(x)Psi)(Psi(x)1) vs (1(x)Psi)(Psi(x)1)(1(x)Psi), or None."""
    one = SparseMatrix.identity(r)
    left = psi.kron(one)
    right = one.kron(psi)
    lhs = left @ (right @ left)
    rhs = right @ (left @ right)
    diff = lhs - rhs
    for i, j, _ in diff.entries():
        return i, j
    return None


def satisfies_braid_equation(psi: SparseMatrix, r: int) -> bool:
    return braid_equation_witness(psi, r) is None


# --- duals, scalar change, twists --------------------------------------------------------------


def dual(Y: YDModule) -> YDModule:
    """Y* with rho*(g) = rho(g^-1)^T and (Y*)_g = (Y_{g^-1})*."""
    G = Y.group
    action = [Y.action[G.inv(g)].transpose() for g in range(G.order)]
    degrees = [G.inv(d) for d in Y.degrees]
    return YDModule(Y.ring, G, degrees, action, [lab + "*" for lab in Y.labels], name=Y.name + "*")


def pairing_invariant(Y: YDModule, Ystar: YDModule, elements=None) -> bool:
    """<g |> f, g |> v> = <f, v> for dual basis pairs, i.e. rho*(g)^T rho(g) = id."""
    r = Y.rank
    elements = range(Y.group.order) if elements is None else elements
    ident = SparseMatrix.identity(r, Y.ring.one() if Y.ring.kind == "group_ring" else 1)
    return all(Ystar.action[g].transpose() @ Y.action[g] == ident for g in elements)


def is_module_map(Y1: YDModule, Y2: YDModule, M: SparseMatrix) -> bool:
    """M: Y1 -> Y2 preserves degrees and intertwines the actions."""
    for j, col in M.cols.items():
        if any(Y2.degrees[i] != Y1.degrees[j] for i in col):
            return False
    return all(M @ Y1.action[g] == Y2.action[g] @ M for g in range(Y1.group.order))


def map_module(Y: YDModule, fn: Callable[[Any], Any], ring: Ring, name: str | None = None) -> YDModule:
    action = [A.map(fn) for A in Y.action]
    return YDModule(ring, Y.group, list(Y.degrees), action, list(Y.labels), name=name or Y.name, verify=Y.verify)


def lift_module(Y: YDModule, m: int) -> YDModule:
    """R (x) Y for R = k[C_m]."""
    if Y.ring.kind == "group_ring":
        if Y.ring.m != m:
            raise ModuleError("group ring modulus mismatch")
        return Y
    return map_module(Y, lambda v: GroupRingScalar(m, [v]), group_ring(m), name=f"R{Y.name}")


def specialize_module(Y: YDModule, q) -> YDModule:
    """Evaluate a k[C_m]-module at z = q."""
    if Y.ring.kind != "group_ring":
        raise ModuleError("only group-ring modules specialize")
    target = Y.ring.component_field()
    return map_module(Y, lambda v: _to_native(specialize(v, q)), target, name=f"{Y.name}|z={q}")


def components(Y: YDModule) -> list[tuple[Any, YDModule]]:
    """(q, Y at z = q) for every m-th root of unity q; a field module is its own single component."""
    if Y.ring.kind != "group_ring":
        return [(None, Y)]
    return [(q, specialize_module(Y, q)) for q in Y.ring.roots()]


def twist_module(Y: YDModule, mu: ZmCocycle) -> YDModule:
    """F_mu(Y): same grading, g |>_chi x = z^chi(g, deg x) (g |> x) with chi(g,k) = mu(gkg^-1, g) - mu(g, k)."""
    if mu.group.order != Y.group.order:
        raise ModuleError("cocycle lives on a different group")
    chi = chi_from_cocycle(mu)
    base = lift_module(Y, mu.m)
    m = mu.m
    action = []
    for g in range(Y.group.order):
        cols = {}
        for b, col in base.action[g].cols.items():
            zk = GroupRingScalar.z(m, chi(g, Y.degrees[b]))
            cols[b] = {c: v * zk for c, v in col.items()}
        action.append(SparseMatrix(Y.rank, Y.rank, cols))
    return YDModule(group_ring(m), Y.group, list(Y.degrees), action, list(Y.labels),
                    name=f"{Y.name}~[{mu.name}]", verify=Y.verify)


def same_module(Y1: YDModule, Y2: YDModule) -> bool:
    """Equal rings, degrees and action matrices."""
    return (Y1.ring == Y2.ring and Y1.degrees == Y2.degrees
            and all(a == b for a, b in zip(Y1.action, Y2.action)))


def cocycle_scalar_matrix(Y: YDModule, mu: ZmCocycle, inverse: bool = False) -> SparseMatrix:
    """mu acting on Y (x) Y: e_a (x) e_b -> z^mu(deg a, deg b) e_a (x) e_b, over k[C_m]."""
    sgn = -1 if inverse else 1
    return SparseMatrix.diagonal([GroupRingScalar.z(mu.m, sgn * mu(a, b)) for a in Y.degrees for b in Y.degrees])


def twisted_braiding(Y: YDModule, mu: ZmCocycle) -> SparseMatrix:
    """Psi_mu = mu^op o Psi o mu^-1 computed directly from the braiding of R (x) Y."""
    psi = braiding(lift_module(Y, mu.m))
    return cocycle_scalar_matrix(Y, mu) @ psi @ cocycle_scalar_matrix(Y, mu, inverse=True)
