"""Heisenberg doubles acting on truncated Nichols algebras, Dunkl elements and Cherednik relations.

Two operator models are provided.

* The vacuum model of H_Y: the space B(Y)_{<=D}, with creation L_v, the group
  acting diagonally and annihilation D_f(v_1...v_d) = sum_k <f, v_k> v_1...v_{k-1} (g_k |> v_{k+1}...v_d).
* The regular model of a cocycle extension (H_Y)~_mu at one component z = q:
  the space B(Y~_mu)_{<=D} (x) k_mu G.  An operator is a family {x: A_x} acting by
  b (x) u_h -> sum_x A_x b (x) u_x u_h, so products pick up q^mu(x, y).  The
  vacuum model cannot host the twisted group algebra (it has no one-dimensional
  representation when mu is not a coboundary), hence the regular one.

Identities are compared on basis vectors of degree at most D - k, where k is the
largest number of creation operators in a term, so that truncation never
interferes.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

import numpy as np

from .group_cohomology import ZmCocycle, trivial_cocycle
from .groups import FiniteGroup, TranspositionClass, symmetric_group
from .linalg import SparseMatrix, kernel_basis, rank
from .nichols import NicholsTruncation, nichols_truncation, symmetrizer_apply, word_label
from .scalars import GroupRingScalar, InvalidRoot
from .spin_cover import aligned_spin_cocycle
from .yd_modules import (YDModule, _to_native, braiding, components, dual, rack_module,
                         twist_module)


class DoubleError(ValueError):
    pass


# --- operators ---------------------------------------------------------------------------------


class Operator:
    """A family {group key: matrix} on a Fock space; see the module docstring."""

    __slots__ = ("model", "terms")

    def __init__(self, model: "FockOperatorAlgebra", terms: dict[int, SparseMatrix]):
        self.model = model
        self.terms = {k: M for k, M in terms.items() if not M.is_zero()}

    def _combine(self, other: "Operator", sign: int) -> "Operator":
        out = dict(self.terms)
        for k, M in other.terms.items():
            base = out.get(k)
            if base is None:
                out[k] = M if sign > 0 else -M
            else:
                out[k] = base + M if sign > 0 else base - M
        return Operator(self.model, out)

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def __neg__(self):
        return Operator(self.model, {k: -M for k, M in self.terms.items()})

    def __rmul__(self, c):
        return Operator(self.model, {k: M.scale(c) for k, M in self.terms.items()})

    def __matmul__(self, other: "Operator") -> "Operator":
        return self.model.compose(self, other)

    def is_zero(self) -> bool:
        return not self.terms


def commutator(A: Operator, B: Operator) -> Operator:
    return A @ B - B @ A


# --- Fock models -------------------------------------------------------------------------------


@dataclass
class FockOperatorAlgebra:
    module: YDModule
    truncation: NicholsTruncation
    regular: bool = False
    mu: ZmCocycle | None = None
    q: Any = 1
    dual_module: YDModule | None = None
    offsets: list[int] = field(init=False)
    dim: int = field(init=False)
    degree: np.ndarray = field(init=False)
    _position: list[dict[int, int]] = field(init=False, repr=False)
    _cache: dict = field(init=False, default_factory=dict, repr=False)

    def __post_init__(self):
        T = self.truncation
        self.offsets, self._position = [], []
        total = 0
        for d in range(T.max_degree + 1):
            self.offsets.append(total)
            self._position.append({w: i for i, w in enumerate(T.normal_basis(d))})
            total += T.dimension(d)
        self.dim = total
        self.degree = np.concatenate([np.full(T.dimension(d), d, dtype=np.int64) for d in range(T.max_degree + 1)])
        if self.dual_module is None:
            self.dual_module = dual(self.module)

    # basic data
    @property
    def group(self) -> FiniteGroup:
        return self.module.group

    @property
    def max_degree(self) -> int:
        return self.truncation.max_degree

    @property
    def r(self) -> int:
        return self.module.rank

    def basis_label(self, idx: int) -> str:
        d = int(self.degree[idx])
        w = self.truncation.normal_basis(d)[idx - self.offsets[d]]
        return word_label(w, self.r, d, self.module.labels)

    def _key(self, g: int) -> int:
        return g if self.regular else self.group.identity

    def _scalar(self, e: int):
        return _to_native(self.q ** e) if isinstance(self.q, Fraction) else self.q ** e

    def compose(self, A: Operator, B: Operator) -> Operator:
        out: dict[int, SparseMatrix] = {}
        G = self.group
        for x, MA in A.terms.items():
            for y, MB in B.terms.items():
                prod = MA @ MB
                if self.regular and self.mu is not None:
                    e = self.mu(x, y) % self.mu.m
                    if e:
                        prod = prod.scale(self._scalar(e))
                k = G.mul(x, y)
                out[k] = out[k] + prod if k in out else prod
        return Operator(self, out)

    def identity(self) -> Operator:
        return Operator(self, {self.group.identity: SparseMatrix.identity(self.dim)})

    def zero(self) -> Operator:
        return Operator(self, {})

    # tensor-level helpers
    def _act_word(self, Y: YDModule, g: int, word: tuple[int, ...]) -> dict:
        vec = {0: 1}
        r = Y.rank
        for a in word:
            col = Y.action[g].column(a)
            nxt: dict = {}
            for idx, c in vec.items():
                for b, v in col.items():
                    k = idx * r + b
                    s = nxt.get(k, 0) + c * v
                    if s:
                        nxt[k] = s
                    else:
                        nxt.pop(k, None)
            vec = nxt
        return vec

    def _global(self, d: int, reduced: dict) -> dict:
        pos, off = self._position[d], self.offsets[d]
        return {off + pos[w]: x for w, x in reduced.items()}

    def _words(self, d: int):
        from .nichols import index_word
        for w in self.truncation.normal_basis(d):
            yield w, index_word(w, self.r, d)

    # matrices
    def _group_matrix(self, g: int) -> SparseMatrix:
        key = ("rho", g)
        if key not in self._cache:
            cols = {}
            for d in range(self.max_degree + 1):
                for w, word in self._words(d):
                    vec = self._act_word(self.module, g, word)
                    col = self._global(d, self.truncation.reduce(d, vec))
                    if col:
                        cols[self.offsets[d] + self._position[d][w]] = col
            self._cache[key] = SparseMatrix(self.dim, self.dim, cols)
        return self._cache[key]

    def _creation_matrix(self, a: int) -> SparseMatrix:
        key = ("L", a)
        if key not in self._cache:
            r = self.r
            cols = {}
            for d in range(self.max_degree):
                for w, word in self._words(d):
                    target = a * r ** d + w
                    col = self._global(d + 1, self.truncation.reduce(d + 1, {target: 1}))
                    if col:
                        cols[self.offsets[d] + self._position[d][w]] = col
            self._cache[key] = SparseMatrix(self.dim, self.dim, cols)
        return self._cache[key]

    def annihilation_tensor(self, b: int, word: tuple[int, ...]) -> dict:
        """D_{e*_b} on one tensor word (before reduction), as a tensor of degree len(word) - 1."""
        Y, r = self.module, self.r
        g = Y.degrees[b]
        out: dict = {}
        for k, a in enumerate(word):
            if a != b:
                continue
            prefix = 0
            for c in word[:k]:
                prefix = prefix * r + c
            tail = word[k + 1:]
            moved = self._act_word(Y, g, tail)
            scale = r ** len(tail)
            for t, v in moved.items():
                key = prefix * scale + t
                s = out.get(key, 0) + v
                if s:
                    out[key] = s
                else:
                    out.pop(key, None)
        return out

    def _annihilation_matrix(self, b: int) -> SparseMatrix:
        key = ("D", b)
        if key not in self._cache:
            cols = {}
            for d in range(1, self.max_degree + 1):
                for w, word in self._words(d):
                    vec = self.annihilation_tensor(b, word)
                    col = self._global(d - 1, self.truncation.reduce(d - 1, vec))
                    if col:
                        cols[self.offsets[d] + self._position[d][w]] = col
            self._cache[key] = SparseMatrix(self.dim, self.dim, cols)
        return self._cache[key]

    # operators
    def group_op(self, g: int, central: int = 0) -> Operator:
        """The element z^central u_g; in the vacuum model u_g acts diagonally on B(Y)."""
        M = self._group_matrix(g)
        if central:
            M = M.scale(self._scalar(central))
        return Operator(self, {self._key(g): M})

    def create(self, vec: dict) -> Operator:
        """L_v for v = sum_a vec[a] e_a."""
        M = SparseMatrix.zeros(self.dim, self.dim)
        for a, c in vec.items():
            if c:
                M = M + self._creation_matrix(a).scale(c)
        return Operator(self, {self.group.identity: M})

    def annihilate(self, fvec: dict) -> Operator:
        """D_f for f = sum_b fvec[b] e*_b; the e*_b part carries group key deg(e_b)."""
        terms: dict[int, SparseMatrix] = {}
        for b, c in fvec.items():
            if not c:
                continue
            k = self._key(self.module.degrees[b])
            M = self._annihilation_matrix(b).scale(c)
            terms[k] = terms[k] + M if k in terms else M
        return Operator(self, terms)

    def weyl(self, b: int) -> Operator:
        """W_f = rho(x) D_f for f = e*_b of degree x = deg(e_b)^-1 (vacuum model)."""
        x = self.group.inv(self.module.degrees[b])
        return self.group_op(x) @ self.annihilate({b: 1})

    # comparison
    def difference(self, A: Operator, B: Operator, max_degree: int | None = None):
        """First (group key, column, row) where A and B differ on basis vectors of degree <= max_degree."""
        limit = self.max_degree if max_degree is None else max_degree
        D = A - B
        for k in sorted(D.terms):
            M = D.terms[k]
            for j in sorted(M.cols):
                if self.degree[j] <= limit and M.cols[j]:
                    return k, j, min(M.cols[j])
        return None

    def describe(self, witness) -> str:
        if witness is None:
            return ""
        k, j, i = witness
        return (f"group key {self.group.labels[k]}, on basis {self.basis_label(j)} "
                f"(degree {int(self.degree[j])}), output basis {self.basis_label(i)}")


def fock_build(Y: YDModule, D: int) -> FockOperatorAlgebra:
    """Vacuum Fock model B(Y)_{<=D} of the braided Heisenberg double H_Y."""
    if not Y.ring.is_field:
        raise DoubleError("fock_build expects a module over a field; use twisted_fock_build for extensions")
    return FockOperatorAlgebra(Y, nichols_truncation(Y, D))


@dataclass
class TwistedFock:
    """Regular Fock models of (H_Y)~_mu at every component z = q of k[C_m]."""

    base: YDModule
    mu: ZmCocycle
    max_degree: int
    components: dict[str, FockOperatorAlgebra]

    def component(self, q) -> FockOperatorAlgebra:
        return self.components[f"z={q}"]


def collapse(op: Operator) -> SparseMatrix:
    """Sum of the group-keyed parts: the action on B (x) u_1 when the twist is trivial."""
    F = op.model
    out = SparseMatrix.zeros(F.dim, F.dim)
    for M in op.terms.values():
        out = out + M
    return out


def collapse_matches_vacuum(TF: TwistedFock) -> bool:
    """For trivial mu every component, summed over group keys, reproduces fock_build(Y, D)."""
    if not TF.mu.is_trivial_table():
        raise DoubleError("collapse comparison needs the trivial cocycle")
    V = fock_build(TF.base, TF.max_degree)
    G = TF.base.group
    for F in TF.components.values():
        if F.dim != V.dim:
            return False
        for a in range(F.r):
            if collapse(F.create({a: 1})) != collapse(V.create({a: 1})):
                return False
            if collapse(F.annihilate({a: 1})) != collapse(V.annihilate({a: 1})):
                return False
        for g in range(G.order):
            if collapse(F.group_op(g)) != collapse(V.group_op(g)):
                return False
    return True


def twisted_fock_build(Y: YDModule, mu: ZmCocycle, D: int) -> TwistedFock:
    """Creations from Y~_mu = twist_module(Y, mu), annihilations from the untwisted Y*, group k_mu G."""
    if not Y.ring.is_field:
        raise DoubleError("expected the untwisted module over a field")
    twisted = twist_module(Y, mu)
    Ystar = dual(Y)
    comps = {}
    for q, Yq in components(twisted):
        T = nichols_truncation(Yq, D)
        comps[f"z={q}"] = FockOperatorAlgebra(Yq, T, regular=True, mu=mu, q=q, dual_module=Ystar)
    return TwistedFock(Y, mu, D, comps)


def specialize_double(F: TwistedFock, q) -> FockOperatorAlgebra:
    """The z = q component; it is an operator model over the field."""
    m = F.mu.m
    qq = Fraction(q) if isinstance(q, int) else q
    if qq ** m != 1:
        raise InvalidRoot(f"{q!r} is not an {m}-th root of unity")
    return F.components[f"z={qq}"]


# --- identities in Fock models -------------------------------------------------------------------


@dataclass
class Check:
    name: str
    status: bool
    witness: str | None = None

    def to_json(self) -> dict:
        out = {"name": self.name, "status": "PASS" if self.status else "FAIL"}
        if self.witness:
            out["witness"] = self.witness
        return out


def _record(checks: list[Check], name: str, F: FockOperatorAlgebra, A: Operator, B: Operator,
            max_degree: int, context: str = "") -> bool:
    w = F.difference(A, B, max_degree)
    existing = next((c for c in checks if c.name == name), None)
    if existing is None:
        existing = Check(name, True)
        checks.append(existing)
    if w is not None and existing.status:
        existing.status = False
        existing.witness = (context + ": " if context else "") + F.describe(w)
    return w is None


def heisenberg_checks(F: FockOperatorAlgebra) -> list[Check]:
    """[D_f, L_v] = <f, v> u_g for basis f, v; and, in the vacuum model, the braided Weyl relation."""
    checks: list[Check] = []
    Y, r, D = F.module, F.r, F.max_degree
    for b in range(r):
        Df = F.annihilate({b: 1})
        for a in range(r):
            Lv = F.create({a: 1})
            rhs = F.group_op(Y.degrees[a]) if a == b else F.zero()
            _record(checks, "heisenberg", F, commutator(Df, Lv), rhs, D - 1, f"f=e*{b}, v=e{a}")
            if not F.regular:
                Wf = F.weyl(b)
                x = F.group.inv(Y.degrees[b])
                moved = F.create(Y.act(x, {a: 1}))
                rhs = F.identity() if a == b else F.zero()
                _record(checks, "weyl", F, Wf @ Lv - moved @ Wf, rhs, D - 1, f"f=e*{b}, v=e{a}")
    return checks


def covariance_checks(F: FockOperatorAlgebra, elements=None) -> list[Check]:
    """u_g L_v = L_{g|>v} u_g and u_g D_f = D_{g|>f} u_g, for the (twisted) action on Y and the dual action."""
    checks: list[Check] = []
    Y, Ystar, D = F.module, F.dual_module, F.max_degree
    elements = range(F.group.order) if elements is None else elements
    for g in elements:
        ug = F.group_op(g)
        for a in range(F.r):
            _record(checks, "creation covariance", F, ug @ F.create({a: 1}), F.create(Y.act(g, {a: 1})) @ ug,
                    D - 1, f"g={F.group.labels[g]}, v=e{a}")
            _record(checks, "annihilation covariance", F, ug @ F.annihilate({a: 1}),
                    F.annihilate(Ystar.act(g, {a: 1})) @ ug, D, f"g={F.group.labels[g]}, f=e*{a}")
    return checks


def annihilation_well_defined(F: FockOperatorAlgebra) -> bool:
    """D_f maps ker [d]! into ker [d-1]!: kernel vectors go to vectors that reduce to zero."""
    from .nichols import index_word
    T = F.truncation
    for d in range(2, F.max_degree + 1):
        for vec in T.data[d].kernel.values():
            for b in range(F.r):
                image: dict = {}
                for w, x in vec.items():
                    for k, v in F.annihilation_tensor(b, index_word(w, F.r, d)).items():
                        s = image.get(k, 0) + x * v
                        if s:
                            image[k] = s
                        else:
                            image.pop(k, None)
                if T.reduce(d - 1, image):
                    return False
    return True


def shift_check(Y: YDModule, D: int = 2) -> bool:
    """delta~ (M (x) id) delta~^-1 = M' (x) id on Y^(x)n (x) kG for M = [n]!_Psi, M' = [n]!_{tau Psi tau}, 2 <= n <= D.

    delta~(v_1...v_n g) = v_1 (x_1 |> v_2) (x_1 x_2 |> v_3) ... x_1...x_n g, with x_k = deg v_k.
    For n = 2 this is the identity delta~ (Psi (x) id) delta~^-1 = tau Psi tau (x) id.
    """
    from .nichols import braided_factorial, index_word
    G, r = Y.group, Y.rank
    N = G.order
    psi = braiding(Y)
    flip = SparseMatrix(r * r, r * r, {a * r + b: {b * r + a: 1} for a in range(r) for b in range(r)})
    psi_op = flip @ psi @ flip
    for n in range(2, max(D, 2) + 1):
        size = r ** n
        fwd, bwd = {}, {}
        for w in range(size):
            word = index_word(w, r, n)
            for g in range(N):
                for inverse, target in ((False, fwd), (True, bwd)):
                    vec, acc = {0: 1}, G.identity
                    for a in word:
                        col = Y.action[acc].column(a)
                        vec = {i * r + c: x * v for i, x in vec.items() for c, v in col.items()}
                        deg = Y.degrees[a]
                        # the inverse map attaches x^-1 to each letter instead of x
                        acc = G.mul(acc, G.inv(deg) if inverse else deg)
                    final = G.mul(acc, g)
                    target[w * N + g] = {i * N + final: x for i, x in vec.items()}
        delta = SparseMatrix(size * N, size * N, fwd)
        delta_inv = SparseMatrix(size * N, size * N, bwd)
        if delta @ delta_inv != SparseMatrix.identity(size * N):
            return False
        idG = SparseMatrix.identity(N)
        lhs = delta @ braided_factorial(psi, r, n).kron(idG) @ delta_inv
        if lhs != braided_factorial(psi_op, r, n).kron(idG):
            return False
    return True


# --- Dunkl elements ---------------------------------------------------------------------------

DUNKL_MODULES = {"theta": "q1", "alpha": "qm1", "theta_tilde": "qz"}


def dunkl_vector(variant: str, n: int, j: int, z=None) -> dict:
    """Coordinates of theta_j, alpha_j or theta~_j (1-based j) in the basis e_(ik) of X_n."""
    X = TranspositionClass(n)
    if variant == "theta_tilde" and z is None:
        z = GroupRingScalar.z(2, 1)
    out = {}
    for i in range(1, n + 1):
        if i == j:
            continue
        k = X.index_of(i - 1, j - 1)
        if i < j:
            out[k] = -1
        elif variant == "theta":
            out[k] = 1
        elif variant == "alpha":
            out[k] = -1
        elif variant == "theta_tilde":
            out[k] = z
        else:
            raise DoubleError(f"unknown Dunkl variant {variant!r}")
    return out


def dual_dunkl_vector(n: int, j: int) -> dict:
    """theta*_j = -sum_{i<j} e*_(ij) + sum_{j<i} e*_(ji), also the trivial lift theta~*_j."""
    return dunkl_vector("theta", n, j)


def _tensor2(u: dict, v: dict, r: int) -> dict:
    out: dict = {}
    for a, x in u.items():
        for b, y in v.items():
            k = a * r + b
            s = out.get(k, 0) + x * y
            if s:
                out[k] = s
            else:
                out.pop(k, None)
    return out


RELATION_FACTORS = {"commute": 1, "anticommute": -1, "z_commute": "z"}


@dataclass
class DunklCheck:
    variant: str
    n: int
    relation: str
    ok: bool
    failures: list[tuple[int, int]]


def dunkl_commute_check(variant: str, n: int, relation: str) -> DunklCheck:
    """x_i x_j - eps x_j x_i lies in ker [2]! for all i != j, computed over the module's own ring."""
    Y = rack_module(n, DUNKL_MODULES[variant])
    r, psi = Y.rank, braiding(Y)
    eps = RELATION_FACTORS[relation]
    if eps == "z":
        if Y.ring.kind != "group_ring":
            raise DoubleError("z-commutation needs the group-ring module")
        eps = GroupRingScalar.z(2, 1)
    vecs = [dunkl_vector(variant, n, j) for j in range(1, n + 1)]
    failures = []
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            u = _tensor2(vecs[i], vecs[j], r)
            w = _tensor2(vecs[j], vecs[i], r)
            rel = dict(u)
            for k, x in w.items():
                s = rel.get(k, 0) - eps * x
                if s:
                    rel[k] = s
                else:
                    rel.pop(k, None)
            if symmetrizer_apply(psi, r, 2, rel):
                failures.append((i + 1, j + 1))
    return DunklCheck(variant, n, relation, not failures, failures)


# --- degree-one dependencies and minimal-double kernels ------------------------------------------


@dataclass
class DependencyReport:
    n: int
    component_dimensions: dict[str, int]
    generator: list
    generator_annihilates: bool
    kernel_at_one: list[dict]
    ok: bool


def kernel_dependency_check(n: int) -> DependencyReport:
    """R-linear relations among theta~_1..theta~_n in (RX_n, q_z), found componentwise.

    The relation module is e_+ K_+ (+) e_- K_-; it equals R (1+z)(1,...,1) exactly
    when K_+ is spanned by (1,...,1) and K_- = 0.
    """
    r = len(TranspositionClass(n))
    dims, kernels = {}, {}
    for q in (1, -1):
        cols = [dunkl_vector("theta_tilde", n, j, z=q) for j in range(1, n + 1)]
        M = SparseMatrix.from_columns(r, cols)
        K = kernel_basis(M)
        dims[f"z={Fraction(q)}"] = len(K)
        kernels[q] = K
    one = GroupRingScalar.constant(2, 1)
    gen_coef = one + GroupRingScalar.z(2, 1)
    total: dict = {}
    for j in range(1, n + 1):
        for k, v in dunkl_vector("theta_tilde", n, j).items():
            s = total.get(k, 0) + gen_coef * v
            if s:
                total[k] = s
            else:
                total.pop(k, None)
    annihilates = not total
    ones = {j: 1 for j in range(n)}
    plus_ok = len(kernels[1]) == 1 and rank(SparseMatrix.from_columns(n, [kernels[1][0], ones])) == 1
    ok = annihilates and plus_ok and not kernels[-1]
    return DependencyReport(n, dims, [gen_coef] * n, annihilates, kernels[1], ok)


@dataclass
class DunklRelationReport:
    """Degree-d relations among theta~_1..theta~_n, one kernel basis per component.

    A relation is a dict from words (tuples of 1-based indices) to coefficients.
    Nothing is asserted about these relations; they are emitted for inspection.
    """
    n: int
    degree: int
    relations: dict[str, list[dict]]

    @property
    def counts(self) -> dict[str, int]:
        return {label: len(rels) for label, rels in self.relations.items()}


def dunkl_relation_report(n: int, degree: int = 2) -> DunklRelationReport:
    """Kernel of the map from degree-d words in theta~ to B(X_n, q_z)_d, per component."""
    if degree < 1:
        raise DoubleError("degree must be positive")
    Y = rack_module(n, "qz")
    out = {}
    for q, Yq in components(Y):
        T = nichols_truncation(Yq, degree)
        vecs = [dunkl_vector("theta_tilde", n, j, z=q) for j in range(1, n + 1)]
        words = list(itertools.product(range(n), repeat=degree))
        cols = []
        for word in words:
            v = vecs[word[0]]
            for a in word[1:]:
                v = _tensor2(v, vecs[a], Y.rank)
            cols.append(T.reduce(degree, v))
        M = SparseMatrix.from_columns(Y.rank ** degree, cols)
        rels = [{tuple(a + 1 for a in words[k]): _to_native(x) for k, x in sorted(vec.items())}
                for vec in kernel_basis(M)]
        out[f"z={Fraction(q)}"] = rels
    return DunklRelationReport(n, degree, out)


def minimal_degree1_relations(beta: np.ndarray) -> tuple[list[dict], list[dict]]:
    """Left and right kernels of beta: f (x) v -> group algebra, given as beta[f, v, g].

    Returns ({v : beta(f (x) v) = 0 for all f}, {f : beta(f (x) v) = 0 for all v}).
    """
    beta = np.asarray(beta, dtype=object)
    nf, nv, ng = beta.shape
    # rows indexed by (f, g) for the v-kernel, by (v, g) for the f-kernel
    v_cols = [{f * ng + g: beta[f, v, g] for f in range(nf) for g in range(ng) if beta[f, v, g]} for v in range(nv)]
    f_cols = [{v * ng + g: beta[f, v, g] for v in range(nv) for g in range(ng) if beta[f, v, g]} for f in range(nf)]
    return (kernel_basis(SparseMatrix.from_columns(nf * ng, v_cols)),
            kernel_basis(SparseMatrix.from_columns(nv * ng, f_cols)))


def heisenberg_beta(Y: YDModule, fvecs: list[dict] | None = None, vvecs: list[dict] | None = None) -> np.ndarray:
    """beta(f (x) v) = <f, v^(0)> v^(1) on chosen vectors of Y* and Y (default: the bases)."""
    r, N = Y.rank, Y.group.order
    fvecs = [{b: 1} for b in range(r)] if fvecs is None else fvecs
    vvecs = [{a: 1} for a in range(r)] if vvecs is None else vvecs
    out = np.zeros((len(fvecs), len(vvecs), N), dtype=object)
    for i, f in enumerate(fvecs):
        for j, v in enumerate(vvecs):
            for a, x in v.items():
                if a in f:
                    out[i, j, Y.degrees[a]] += f[a] * x
    return out


def beta_equivariant(Y: YDModule) -> bool:
    """beta(g|>f (x) g|>v) = g beta(f (x) v) g^-1 on basis vectors."""
    G, r = Y.group, Y.rank
    Ystar = dual(Y)
    base = heisenberg_beta(Y)
    for g in range(G.order):
        fs = [Ystar.act(g, {b: 1}) for b in range(r)]
        vs = [Y.act(g, {a: 1}) for a in range(r)]
        moved = heisenberg_beta(Y, fs, vs)
        for i in range(r):
            for j in range(r):
                want = np.zeros(G.order, dtype=object)
                for h in range(G.order):
                    if base[i, j, h]:
                        want[G.conj(g, h)] += base[i, j, h]
                if any(moved[i, j] != want):
                    return False
    return True


# --- Cherednik relations -------------------------------------------------------------------------


@dataclass
class CherednikParams:
    n: int
    t: Any = 0
    c: Any = 1

    def __post_init__(self):
        if self.t != 0:
            raise DoubleError("the covering construction requires t = 0")
        if self.n < 2:
            raise DoubleError("n must be at least 2")


@dataclass
class CherednikReport:
    params: CherednikParams
    cocycle: str
    max_degree: int
    relations: list[Check]
    dependency_rank: int | None
    specializations: dict[str, list[Check]]
    diagnostics: list[Check] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return (all(c.status for c in self.relations)
                and all(c.status for cs in self.specializations.values() for c in cs))

    def to_json(self) -> dict:
        return {"n": self.params.n, "c": str(self.params.c), "t": str(self.params.t), "cocycle": self.cocycle,
                "max_degree": self.max_degree, "relations": [c.to_json() for c in self.relations],
                "dependency_rank": self.dependency_rank,
                "specializations": {k: [c.to_json() for c in v] for k, v in self.specializations.items()},
                "diagnostics": [c.to_json() for c in self.diagnostics]}


def _lift_ij(F: FockOperatorAlgebra, i: int, j: int) -> Operator:
    """t_ij = (1, (i j)) for i < j and (z, (i j)) for i > j; 1-based points."""
    G = symmetric_group(F.module.group.n)
    g = G.transposition(i - 1, j - 1)
    return F.group_op(g, central=0 if i < j else 1)


def cherednik_generators(F: FockOperatorAlgebra, n: int, c):
    q = F.q
    X = [F.create(dunkl_vector("theta_tilde", n, j, z=q)) for j in range(1, n + 1)]
    Ths = [F.annihilate(dual_dunkl_vector(n, j)) for j in range(1, n + 1)]
    Yop = [(-c) * th for th in Ths]
    G = symmetric_group(n)
    T = [F.group_op(G.adjacent_indices[i]) for i in range(n - 1)]
    Z = F.identity().__rmul__(_to_native(q))
    return X, Yop, Ths, T, Z


def _covering_relations(F: FockOperatorAlgebra, n: int, c, checks: list[Check], label: str,
                        diagnostics: list[Check] | None = None) -> None:
    D = F.max_degree
    X, Yop, Ths, T, Z = cherednik_generators(F, n, c)
    Id = F.identity()
    ctx = label
    # (i) z central with z^2 = 1
    _record(checks, "(i) z central, z^2 = 1", F, Z @ Z, Id, D, ctx)
    for A in X + Yop + T:
        _record(checks, "(i) z central, z^2 = 1", F, Z @ A, A @ Z, D, ctx)
    # (ii) Schur's presentation of T_n with alpha = 1, beta = z
    for i in range(n - 1):
        _record(checks, "(ii) T_n relations", F, T[i] @ T[i], Id, D, f"{ctx} t{i + 1}^2")
    for i in range(n - 2):
        _record(checks, "(ii) T_n relations", F, T[i] @ T[i + 1] @ T[i], T[i + 1] @ T[i] @ T[i + 1], D,
                f"{ctx} braid t{i + 1}")
    for k in range(n - 1):
        for l in range(k + 2, n - 1):
            _record(checks, "(ii) T_n relations", F, T[k] @ T[l], Z @ T[l] @ T[k], D, f"{ctx} t{k + 1} t{l + 1}")
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            pair = f"{ctx} i={i + 1}, j={j + 1}"
            _record(checks, "(iii) x~i x~j = z x~j x~i", F, X[i] @ X[j], Z @ X[j] @ X[i], D - 2, pair)
            _record(checks, "(iv) y~i y~j = y~j y~i", F, Yop[i] @ Yop[j], Yop[j] @ Yop[i], D, pair)
            _record(checks, "(vii) [y~i, x~j] = c t_ij", F, commutator(Yop[i], X[j]),
                    c * _lift_ij(F, i + 1, j + 1), D - 1, pair)
            _record(checks, "(c) [theta~*i, theta~j] = -t_ij", F, commutator(Ths[i], X[j]),
                    -_lift_ij(F, i + 1, j + 1), D - 1, pair)
    for i in range(n - 1):
        for j in range(n):
            pair = f"{ctx} i={i + 1}, j={j + 1}"
            if j not in (i, i + 1):
                _record(checks, "(v) t_i x~j = z x~j t_i, t_i y~j = y~j t_i", F, T[i] @ X[j], Z @ X[j] @ T[i],
                        D - 1, pair)
                _record(checks, "(v) t_i x~j = z x~j t_i, t_i y~j = y~j t_i", F, T[i] @ Yop[j], Yop[j] @ T[i],
                        D, pair)
                _record(checks, "(a) t_i theta~j = z theta~j t_i, t_i theta~*j = theta~*j t_i", F,
                        T[i] @ X[j], Z @ X[j] @ T[i], D - 1, pair)
                _record(checks, "(a) t_i theta~j = z theta~j t_i, t_i theta~*j = theta~*j t_i", F,
                        T[i] @ Ths[j], Ths[j] @ T[i], D, pair)
        pair = f"{ctx} i={i + 1}"
        _record(checks, "(vi) t_i x~i = x~(i+1) t_i", F, T[i] @ X[i], X[i + 1] @ T[i], D - 1, pair)
        _record(checks, "(vi) t_i y~i = y~(i+1) t_i", F, T[i] @ Yop[i], Yop[i + 1] @ T[i], D, pair)
        _record(checks, "(b) t_i theta~i = theta~(i+1) t_i", F, T[i] @ X[i], X[i + 1] @ T[i], D - 1, pair)
        _record(checks, "(b) t_i theta~*i = theta~*(i+1) t_i", F, T[i] @ Ths[i], Ths[i + 1] @ T[i], D, pair)
        if diagnostics is not None:
            _record(diagnostics, "t_i x~i = z x~(i+1) t_i", F, T[i] @ X[i], Z @ X[i + 1] @ T[i], D - 1, pair)
    for i in range(n):
        lifts = F.zero()
        for k in range(n):
            if k != i:
                lifts = lifts + _lift_ij(F, k + 1, i + 1)
        pair = f"{ctx} i={i + 1}"
        _record(checks, "(viii) [y~i, x~i] = -c sum_k t_ki", F, commutator(Yop[i], X[i]), (-c) * lifts, D - 1, pair)
        _record(checks, "(d) [theta~*i, theta~i] = sum_k t_ki", F, commutator(Ths[i], X[i]), lifts, D - 1, pair)


def _rational_relations(F: FockOperatorAlgebra, n: int, c, checks: list[Check] | None = None) -> list[Check]:
    """H_{0,c}: x's and y's commute, sigma x_i = x_sigma(i) sigma, [y_i, x_j] = c (i j), [y_i, x_i] = -c sum (k i)."""
    checks = [] if checks is None else checks
    D = F.max_degree
    G = symmetric_group(n)
    X = [F.create(dunkl_vector("theta", n, j)) for j in range(1, n + 1)]
    Yop = [(-c) * F.annihilate(dual_dunkl_vector(n, j)) for j in range(1, n + 1)]
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            _record(checks, "x_i x_j = x_j x_i", F, X[i] @ X[j], X[j] @ X[i], D - 2)
            _record(checks, "y_i y_j = y_j y_i", F, Yop[i] @ Yop[j], Yop[j] @ Yop[i], D)
            _record(checks, "y_i x_j - x_j y_i = c (i j)", F, commutator(Yop[i], X[j]),
                    c * F.group_op(G.transposition(i, j)), D - 1, f"i={i + 1}, j={j + 1}")
    for s in G.adjacent_indices:
        p = G.perm(s)
        S = F.group_op(s)
        for i in range(n):
            _record(checks, "sigma x_i = x_sigma(i) sigma", F, S @ X[i], X[p(i)] @ S, D - 1)
            _record(checks, "sigma y_i = y_sigma(i) sigma", F, S @ Yop[i], Yop[p(i)] @ S, D)
    for i in range(n):
        total = F.zero()
        for k in range(n):
            if k != i:
                total = total + F.group_op(G.transposition(k, i))
        _record(checks, "y_i x_i - x_i y_i = -c sum (k i)", F, commutator(Yop[i], X[i]), (-c) * total, D - 1)
    return checks


def _spin_relations(F: FockOperatorAlgebra, n: int) -> list[Check]:
    """z = -1: pairwise anticommuting x's and the spin symmetric group t_i^2 = 1, braid, disjoint anticommute."""
    checks: list[Check] = []
    D = F.max_degree
    G = symmetric_group(n)
    X = [F.create(dunkl_vector("alpha", n, j)) for j in range(1, n + 1)]
    T = [F.group_op(s) for s in G.adjacent_indices]
    Id = F.identity()
    for i in range(n):
        for j in range(n):
            if i != j:
                _record(checks, "x_i x_j = -x_j x_i", F, X[i] @ X[j], -(X[j] @ X[i]), D - 2)
    for i in range(n - 1):
        _record(checks, "t_i^2 = 1", F, T[i] @ T[i], Id, D)
    for i in range(n - 2):
        _record(checks, "t_i t_(i+1) t_i = t_(i+1) t_i t_(i+1)", F, T[i] @ T[i + 1] @ T[i],
                T[i + 1] @ T[i] @ T[i + 1], D)
    for k in range(n - 1):
        for l in range(k + 2, n - 1):
            _record(checks, "t_k t_l = -t_l t_k", F, T[k] @ T[l], -(T[l] @ T[k]), D)
    for i in range(n - 1):
        _record(checks, "t_i x_i = -x_(i+1) t_i", F, T[i] @ X[i], -(X[i + 1] @ T[i]), D - 1)
    return checks


RELATION_ORDER = ["(i)", "(ii)", "(iii)", "(iv)", "(v)", "(vi)", "(vii)", "(viii)", "(a)", "(b)", "(c)", "(d)"]


def cherednik_relations_check(params: CherednikParams, mu: str = "1z", D: int = 3) -> CherednikReport:
    """Verify the covering Cherednik relations (i)-(viii) and the auxiliary identities (a)-(d) in the regular Fock model.

    ``mu`` is "trivial" or "1z" (the cocycle [1, z], in the representative whose
    chi is the q_z rack cocycle).  Generators: x~_j = L(theta~_j), y~_j = -c D(theta~*_j),
    t_i = u_{(i i+1)}.
    """
    n, c = params.n, params.c
    Y = rack_module(n, "q1")
    G = Y.group
    if mu == "trivial":
        cocycle = trivial_cocycle(G, 2)
    elif mu == "1z":
        cocycle = aligned_spin_cocycle(n)
    else:
        raise DoubleError(f"unknown cocycle {mu!r}")
    TF = twisted_fock_build(Y, cocycle, D)
    checks: list[Check] = []
    if mu == "trivial":
        # no twist: every component is the untwisted double, which hosts H_{0,c}
        for F in TF.components.values():
            _rational_relations(F, n, c, checks)
        return CherednikReport(params, mu, D, checks, None, {})
    diagnostics: list[Check] = []
    for label, F in TF.components.items():
        _covering_relations(F, n, c, checks, label, diagnostics)
    dep = kernel_dependency_check(n)
    specs = {"z=1": _rational_relations(TF.components["z=1"], n, c),
             "z=-1": _spin_relations(TF.components["z=-1"], n)}
    checks.sort(key=lambda c: RELATION_ORDER.index(c.name.split(" ", 1)[0]))
    checks.append(Check("(1+z) sum theta~ is the whole degree-1 dependency", dep.ok,
                        None if dep.ok else f"component kernel dimensions {dep.component_dimensions}"))
    return CherednikReport(params, mu, D, checks, sum(dep.component_dimensions.values()), specs, diagnostics)
