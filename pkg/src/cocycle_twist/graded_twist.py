"""Group-graded algebras by structure constants, their cocycle twists and extensions."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable

import numpy as np

from .group_cohomology import ZmCocycle, is_cocycle
from .groups import FiniteGroup, GroupError, elementary_abelian
from .linalg import SparseMatrix
from .scalars import QQ, GroupRingScalar, Ring, group_ring, specialize

Constants = dict[tuple[int, int], dict[int, Any]]


class AlgebraError(ValueError):
    pass


@dataclass
class GradedAlgebra:
    ring: Ring
    group: FiniteGroup
    basis: list[str]
    degrees: list[int]
    constants: Constants
    unit: int
    verify: bool = field(default=True, repr=False)

    def __post_init__(self):
        self.constants = {k: {c: v for c, v in d.items() if v} for k, d in self.constants.items()}
        self.constants = {k: d for k, d in self.constants.items() if d}
        if self.verify:
            self.check()

    @property
    def rank(self) -> int:
        return len(self.basis)

    def product(self, i: int, j: int) -> dict[int, Any]:
        return self.constants.get((i, j), {})

    def multiply(self, a: dict[int, Any], b: dict[int, Any]) -> dict[int, Any]:
        out: dict[int, Any] = {}
        for i, x in a.items():
            for j, y in b.items():
                for k, c in self.product(i, j).items():
                    s = out.get(k, 0) + x * y * c
                    if s:
                        out[k] = s
                    else:
                        out.pop(k, None)
        return out

    def check(self) -> None:
        G = self.group
        if self.degrees[self.unit] != G.identity:
            raise AlgebraError("the unit must have degree 1")
        for (i, j), terms in self.constants.items():
            want = G.mul(self.degrees[i], self.degrees[j])
            for k in terms:
                if self.degrees[k] != want:
                    raise AlgebraError(f"product of basis {i},{j} leaves degree {G.labels[want]}")
        one = {self.unit: 1}
        for i in range(self.rank):
            e = {i: 1}
            if _clean(self.multiply(one, e)) != e or _clean(self.multiply(e, one)) != e:
                raise AlgebraError(f"unit fails on basis element {i}")
        if self.rank <= 200:
            bad = associativity_violation(self)
            if bad is not None:
                raise AlgebraError(f"associativity fails on basis triple {bad}")

    def map_scalars(self, fn: Callable, ring: Ring) -> "GradedAlgebra":
        consts = {k: {c: fn(v) for c, v in d.items()} for k, d in self.constants.items()}
        return GradedAlgebra(ring, self.group, list(self.basis), list(self.degrees), consts, self.unit, self.verify)

    def to_json(self) -> dict:
        from .scalars import scalar_to_json
        triplets = [[i, j, k, scalar_to_json(v)] for (i, j), d in sorted(self.constants.items())
                    for k, v in sorted(d.items())]
        return {"ring": self.ring.tag, "basis": self.basis, "degrees": [self.group.labels[d] for d in self.degrees],
                "structure_constants": triplets, "unit": self.unit}

    def same_constants(self, other: "GradedAlgebra") -> bool:
        return _normalize(self.constants) == _normalize(other.constants)


def _clean(d: dict) -> dict:
    return {k: v for k, v in d.items() if v}


def _normalize(consts: Constants) -> dict:
    return {k: {c: v for c, v in d.items() if v} for k, d in consts.items() if any(d.values())}


def associativity_violation(A: GradedAlgebra):
    """First basis triple (i, j, k) with (ij)k != i(jk), or None."""
    for i, j, k in itertools.product(range(A.rank), repeat=3):
        left = A.multiply(A.product(i, j), {k: 1})
        right = A.multiply({i: 1}, A.product(j, k))
        if _clean(left) != _clean(right):
            return (i, j, k)
    return None


def group_algebra(G: FiniteGroup, ring: Ring = QQ) -> GradedAlgebra:
    one = ring.one()
    consts = {(g, h): {G.mul(g, h): one} for g in range(G.order) for h in range(G.order)}
    return GradedAlgebra(ring, G, list(G.labels), list(range(G.order)), consts, G.identity)


def _embedding(embed, m: int) -> Callable[[int], Any]:
    """Turn ``embed`` (callable on exponents, or the image q of z) into exponent -> scalar."""
    if callable(embed):
        return embed
    q = embed
    if isinstance(q, int):
        q = Fraction(q)
    if q ** m != 1:
        raise ValueError(f"embed(z) = {embed!r} has order not dividing {m}")
    powers = [q ** k for k in range(m)]
    return lambda e: powers[e % m]


def twist(A: GradedAlgebra, mu: ZmCocycle, embed=-1) -> GradedAlgebra:
    """a * b -> embed(mu(deg a, deg b)) a b."""
    if mu.group is not A.group and mu.group.order != A.group.order:
        raise GroupError("grading group and cocycle group differ")
    f = _embedding(embed, mu.m)
    consts = {}
    for (i, j), d in A.constants.items():
        s = f(mu(A.degrees[i], A.degrees[j]))
        consts[(i, j)] = {k: s * v for k, v in d.items()}
    return GradedAlgebra(A.ring, A.group, list(A.basis), list(A.degrees), consts, A.unit, A.verify)


def extend(A: GradedAlgebra, mu: ZmCocycle) -> GradedAlgebra:
    """Scalar extension to k[C_m] followed by the twist with embed(z) = z."""
    if not A.ring.is_field:
        raise AlgebraError("extension expects an algebra over a field")
    R = group_ring(mu.m)
    lifted = A.map_scalars(lambda v: GroupRingScalar(mu.m, [v]), R)
    return twist(lifted, mu, embed=lambda e: GroupRingScalar.z(mu.m, e))


def specialize_algebra(A: GradedAlgebra, q) -> GradedAlgebra:
    if A.ring.kind != "group_ring":
        raise AlgebraError("only group-ring algebras specialize")
    field_ring = QQ if A.ring.m <= 2 else Ring("cyclotomic", A.ring.m)
    return A.map_scalars(lambda v: specialize(v, q), field_ring)


def restrict_scalars(A: GradedAlgebra) -> GradedAlgebra:
    """A k[C_m]-algebra as a k-algebra on the basis z^a b_i (index a * rank + i), graded by A.group."""
    if A.ring.kind != "group_ring":
        raise AlgebraError("expected an algebra over a group ring")
    m, r = A.ring.m, A.rank
    consts = {}
    for (i, j), d in A.constants.items():
        for a in range(m):
            for b in range(m):
                out = {}
                for k, v in d.items():
                    for e, c in enumerate(v.coeffs):
                        if c:
                            out[((a + b + e) % m) * r + k] = c
                consts[(a * r + i, b * r + j)] = out
    basis = [(f"z^{a}*" if a else "") + A.basis[i] for a in range(m) for i in range(r)]
    field_ring = QQ if m <= 2 else Ring("cyclotomic", m)
    return GradedAlgebra(field_ring, A.group, basis, [A.degrees[i] for _ in range(m) for i in range(r)],
                         consts, A.unit, A.verify)


def rescale(A: GradedAlgebra, phi_values: Callable[[int], Any]) -> GradedAlgebra:
    """Transport the product along b -> s(deg b) b for scalars s = phi_values(degree)."""
    consts = {}
    for (i, j), d in A.constants.items():
        si, sj = phi_values(A.degrees[i]), phi_values(A.degrees[j])
        consts[(i, j)] = {k: v * si * sj / phi_values(A.degrees[k]) for k, v in d.items()}
    return GradedAlgebra(A.ring, A.group, list(A.basis), list(A.degrees), consts, A.unit, A.verify)


def clifford_cocycle(n: int) -> ZmCocycle:
    """prod_{i<j} b_ij on C_2^n: mu(x, y) = sum_{i<j} x_j y_i mod 2."""
    G = elementary_abelian(2, n)
    E = np.array(G.elements, dtype=np.int64).reshape(G.order, n)
    upper = np.triu(np.ones((n, n), dtype=np.int64), 1)  # upper[i, j] = 1 iff i < j
    table = np.einsum("aj,ij,bi->ab", E, upper, E) % 2
    return ZmCocycle(G, 2, table, "clifford")


def clifford_algebra(n: int) -> GradedAlgebra:
    """The twist of Q[C_2^n] by the Clifford cocycle at embed(z) = -1."""
    mu = clifford_cocycle(n)
    return twist(group_algebra(mu.group), mu, -1)


def generator_index(G: FiniteGroup, i: int) -> int:
    """Index of gamma_i (1-based) in an elementary abelian group."""
    return G.index[tuple(1 if k == i - 1 else 0 for k in range(G.rank))]


# --- coaction realization -----------------------------------------------------------------------


def coaction_realization_check(A: GradedAlgebra, mu: ZmCocycle, embed=-1,
                               twisted: GradedAlgebra | None = None) -> bool:
    """delta(a) delta(b) = delta(a * b) inside A (x) k_mu G, delta(a) = a (x) u_{deg a}.

    ``twisted`` defaults to ``twist(A, mu, embed)``; passing a modified algebra
    lets the check detect a wrong twist.
    """
    f = _embedding(embed, mu.m)
    T = twisted if twisted is not None else twist(A, mu, embed)
    G = A.group
    for i in range(A.rank):
        gi = A.degrees[i]
        for j in range(A.rank):
            gj = A.degrees[j]
            # product in A (x) k_mu G, basis (k, g)
            lhs = {}
            s = f(mu(gi, gj))
            gij = G.mul(gi, gj)
            for k, c in A.product(i, j).items():
                lhs[(k, gij)] = c * s
            rhs = {(k, T.degrees[k]): c for k, c in T.product(i, j).items()}
            if _clean(lhs) != _clean(rhs):
                return False
    return True


# --- laycle identity on graded modules --------------------------------------------------------


@dataclass
class GradedModule:
    group: FiniteGroup
    degrees: list[int]

    @property
    def rank(self) -> int:
        return len(self.degrees)

    def tensor(self, other: "GradedModule") -> "GradedModule":
        G = self.group
        return GradedModule(G, [G.mul(a, b) for a in self.degrees for b in other.degrees])

    @classmethod
    def unit_object(cls, G: FiniteGroup) -> "GradedModule":
        return cls(G, [G.identity])


def adjoint_graded(G: FiniteGroup) -> GradedModule:
    return GradedModule(G, list(range(G.order)))


def laycle_operator(mu: ZmCocycle, X: GradedModule, Y: GradedModule, embed) -> SparseMatrix:
    """mu_{X,Y} on X (x) Y: x (x) y -> embed(mu(deg x, deg y)) x (x) y."""
    f = _embedding(embed, mu.m)
    return SparseMatrix.diagonal([f(mu(a, b)) for a in X.degrees for b in Y.degrees])


def laycle_check(mu: ZmCocycle, X: GradedModule, Y: GradedModule, Z: GradedModule, embed=None) -> bool:
    """mu_{X,Y(x)Z} (id (x) mu_{Y,Z}) == mu_{X(x)Y,Z} (mu_{X,Y} (x) id) and normalization, as matrices."""
    if embed is None:
        embed = (lambda e: GroupRingScalar.z(mu.m, e))
    idX = SparseMatrix.identity(X.rank)
    idZ = SparseMatrix.identity(Z.rank)
    lhs = laycle_operator(mu, X, Y.tensor(Z), embed) @ idX.kron(laycle_operator(mu, Y, Z, embed))
    rhs = laycle_operator(mu, X.tensor(Y), Z, embed) @ laycle_operator(mu, X, Y, embed).kron(idZ)
    if lhs != rhs:
        return False
    one = GradedModule.unit_object(X.group)
    for M in (X, Y, Z):
        if laycle_operator(mu, M, one, embed) != SparseMatrix.identity(M.rank):
            return False
        if laycle_operator(mu, one, M, embed) != SparseMatrix.identity(M.rank):
            return False
    return True


def cocycle_group_consistent(mu: ZmCocycle) -> bool:
    return is_cocycle(mu)[0]
