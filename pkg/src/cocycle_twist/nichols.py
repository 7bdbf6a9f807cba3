"""Braided integers, binomials and factorials; truncated Nichols algebras.

Tensor words of length d over a basis of size r are indexed by the base-r number
with the first letter most significant.  Braiding matrices act on V (x) V with the
same convention, and Psi_i denotes Psi acting on letters i, i+1 (1-based).
Composite operators follow matrix order: in Psi_a Psi_b, Psi_b is applied first.

Over k[C_m] every computation runs on the idempotent components z = q and the
results are compared (flatness) or recombined.
"""

from __future__ import annotations

import hashlib
import itertools
import json
import os
from dataclasses import dataclass, field
from math import factorial
from pathlib import Path

import numpy as np

from . import __version__
from .group_cohomology import ZmCocycle
from .groups import TranspositionClass, symmetric_group
from .kernels import braid_words
from .linalg import SparseMatrix, column_echelon, connected_blocks, rank, span_equal
from .scalars import GroupRingScalar, recombine, root_of_unity, specialize
from .yd_modules import (YDModule, _to_native, braiding, components, rack_module, satisfies_braid_equation,
                         twisted_braiding)


class BraidingError(ValueError):
    pass


class BudgetExceeded(RuntimeError):
    pass


DEFAULT_BUDGET = 50_000_000  # r^n * n! tensor-word images


# --- tensor words ---------------------------------------------------------------------------


def all_words(r: int, d: int) -> np.ndarray:
    if d == 0:
        return np.zeros((1, 0), dtype=np.int64)
    return np.array(list(itertools.product(range(r), repeat=d)), dtype=np.int64).reshape(r ** d, d)


def word_index(word, r: int) -> int:
    idx = 0
    for a in word:
        idx = idx * r + a
    return idx


def index_word(idx: int, r: int, d: int) -> tuple[int, ...]:
    out = []
    for _ in range(d):
        idx, a = divmod(idx, r)
        out.append(a)
    return tuple(reversed(out))


def word_label(idx: int, r: int, d: int, labels: list[str]) -> str:
    if d == 0:
        return "1"
    return "*".join(labels[a] for a in index_word(idx, r, d))


# --- braiding data -----------------------------------------------------------------------------


@dataclass
class BraidData:
    """A braiding on V (x) V, with a fast path when every column has one integer entry."""

    psi: SparseMatrix
    r: int
    monomial: bool = field(init=False)
    targets: np.ndarray | None = field(init=False, default=None)
    coefs: np.ndarray | None = field(init=False, default=None)

    def __post_init__(self):
        rr = self.r * self.r
        if self.psi.shape != (rr, rr):
            raise BraidingError(f"braiding must be {rr}x{rr}, got {self.psi.shape}")
        cols = self.psi.cols
        self.monomial = all(len(cols.get(j, {})) == 1 and type(next(iter(cols[j].values()))) is int
                            for j in range(rr))
        if self.monomial:
            self.targets = np.array([next(iter(cols[j])) for j in range(rr)], dtype=np.int64)
            self.coefs = np.array([next(iter(cols[j].values())) for j in range(rr)], dtype=np.int64)


def _braid_data(psi, r: int, check: bool = True) -> BraidData:
    if isinstance(psi, BraidData):
        return psi
    if check and not satisfies_braid_equation(psi, r):
        raise BraidingError("input does not satisfy the braid equation")
    return BraidData(psi, r)


def _budget(r: int, n: int, budget: int | None):
    limit = DEFAULT_BUDGET if budget is None else budget
    work = r ** n * factorial(n)
    if work > limit:
        raise BudgetExceeded(f"r^n * n! = {work} exceeds the budget {limit}")


def shifted(psi: SparseMatrix, r: int, n: int, i: int) -> SparseMatrix:
    """Psi_{i,i+1} = id^(i-1) (x) Psi (x) id^(n-i-1) on V^(x)n, 1-based i."""
    if not 1 <= i < n:
        raise ValueError(f"position {i} out of range for {n} factors")
    return SparseMatrix.identity(r ** (i - 1)).kron(psi).kron(SparseMatrix.identity(r ** (n - i - 1)))


def _tensor_identity(M: SparseMatrix, r: int, k: int = 1) -> SparseMatrix:
    return M.kron(SparseMatrix.identity(r ** k))


def braided_integer(psi, r: int, n: int, check: bool = True) -> SparseMatrix:
    """[n]_Psi = id + Psi_{n-1} + Psi_{n-1} Psi_{n-2} + ... + Psi_{n-1} ... Psi_1."""
    bd = _braid_data(psi, r, check)
    total = SparseMatrix.identity(r ** n)
    chain = SparseMatrix.identity(r ** n)
    for i in range(n - 1, 0, -1):
        chain = chain @ shifted(bd.psi, r, n, i)
        total = total + chain
    return total


def _factorial_product(bd: BraidData, n: int) -> SparseMatrix:
    r = bd.r
    F = SparseMatrix.identity(r ** min(n, 1))
    for k in range(2, n + 1):
        F = _tensor_identity(F, r) @ braided_integer(bd, r, k, check=False)
    return F


def _factorial_word_sum_monomial(bd: BraidData, n: int, backend=None) -> SparseMatrix:
    r = bd.r
    G = symmetric_group(n)
    R = r ** n
    words = all_words(r, n)
    powers = r ** np.arange(n - 1, -1, -1, dtype=np.int64)
    rows, vals = [], []
    for sigma in range(G.order):
        seq = [i - 1 for i in reversed(G.words[sigma])]  # rightmost letter acts first
        w, c = braid_words(words, bd.targets, bd.coefs, r, seq, backend=backend)
        rows.append(w @ powers)
        vals.append(c)
    rows = np.concatenate(rows)
    cols = np.tile(np.arange(R, dtype=np.int64), G.order)
    vals = np.concatenate(vals)
    key = cols * R + rows
    uniq, inv = np.unique(key, return_inverse=True)
    sums = np.zeros(len(uniq), dtype=np.int64)
    np.add.at(sums, inv, vals)
    out: dict = {}
    for k, s in zip(uniq.tolist(), sums.tolist()):
        if s:
            j, i = divmod(k, R)
            out.setdefault(j, {})[i] = s
    return SparseMatrix(R, R, out)


def _factorial_word_sum_generic(bd: BraidData, n: int) -> SparseMatrix:
    r = bd.r
    G = symmetric_group(n)
    gens = {i: shifted(bd.psi, r, n, i) for i in range(1, n)}
    memo: dict[int, SparseMatrix] = {G.identity: SparseMatrix.identity(r ** n)}
    # greedy reduced words: word(sigma) = [i] + word(s_i sigma)
    for sigma in sorted(range(G.order), key=lambda g: G.lengths[g]):
        word = G.words[sigma]
        if word:
            rest = G.mul(G.adjacent_indices[word[0] - 1], sigma)
            memo[sigma] = gens[word[0]] @ memo[rest]
    total = SparseMatrix.zeros(r ** n, r ** n)
    for M in memo.values():
        total = total + M
    return total


def braided_factorial(psi, r: int, n: int, method: str = "word_sum", check: bool = True,
                      budget: int | None = None, backend=None) -> SparseMatrix:
    """[n]!_Psi, either as ([1] (x) id)([2] (x) id)...[n] or as sum over S_n of Psi_sigma."""
    bd = _braid_data(psi, r, check)
    if n <= 1:
        return SparseMatrix.identity(r ** n)
    _budget(r, n, budget)
    if method == "product":
        return _factorial_product(bd, n)
    if method == "word_sum":
        if bd.monomial:
            return _factorial_word_sum_monomial(bd, n, backend)
        return _factorial_word_sum_generic(bd, n)
    raise ValueError(f"unknown method {method!r}")


def braided_binomial(psi, r: int, n: int, k: int, check: bool = True) -> SparseMatrix:
    """binom(n, k) = Psi_k Psi_{k+1} ... Psi_{n-1} (binom(n-1, k-1) (x) id) + binom(n-1, k) (x) id."""
    if not 0 <= k <= n:
        raise ValueError("need 0 <= k <= n")
    bd = _braid_data(psi, r, check)
    return _binomial(bd, n, k)


def _binomial(bd: BraidData, n: int, k: int) -> SparseMatrix:
    r = bd.r
    if k == 0 or k == n:
        return SparseMatrix.identity(r ** n)
    shuffle = SparseMatrix.identity(r ** n)
    for i in range(k, n):
        shuffle = shuffle @ shifted(bd.psi, r, n, i)
    out = shuffle @ _tensor_identity(_binomial(bd, n - 1, k - 1), r)
    if k <= n - 1:
        out = out + _tensor_identity(_binomial(bd, n - 1, k), r)
    return out


def binomial_theorem_holds(psi, r: int, n: int, k: int) -> bool:
    """([k]! (x) [n-k]!) binom(n, k) == [n]!."""
    bd = _braid_data(psi, r)
    left = braided_factorial(bd, r, k).kron(braided_factorial(bd, r, n - k))
    return left @ _binomial(bd, n, k) == braided_factorial(bd, r, n)


def apply_braid(psi: SparseMatrix, r: int, i: int, vec: dict, d: int) -> dict:
    """Psi_i applied to a vector on V^(x)d (1-based i), without building the big matrix."""
    out: dict = {}
    low = r ** (d - i - 1)
    for idx, x in vec.items():
        head, rest = divmod(idx, low * r * r)
        pair, tail = divmod(rest, low)
        for t, v in psi.column(pair).items():
            key = (head * r * r + t) * low + tail
            s = out.get(key, 0) + v * x
            if s:
                out[key] = s
            else:
                out.pop(key, None)
    return out


def symmetrizer_apply(psi: SparseMatrix, r: int, d: int, vec: dict) -> dict:
    """[d]!_Psi applied to one vector, valid over any coefficient ring (k[C_m] included)."""
    if d <= 1:
        return dict(vec)
    G = symmetric_group(d)
    total: dict = {}
    for sigma in range(G.order):
        v = dict(vec)
        for i in reversed(G.words[sigma]):
            v = apply_braid(psi, r, i, v, d)
        for k, x in v.items():
            s = total.get(k, 0) + x
            if s:
                total[k] = s
            else:
                total.pop(k, None)
    return total


# --- per-degree elimination --------------------------------------------------------------------


@dataclass
class DegreeData:
    degree: int
    rank: int
    pivots: list[int]
    kernel: dict[int, dict]
    normal_form: dict[int, dict]
    block_sizes: list[int]
    matrix: SparseMatrix | None = None

    @property
    def nullity(self) -> int:
        return len(self.kernel)


def degree_data(psi, r: int, d: int, keep_matrix: bool = False, budget: int | None = None,
                check: bool = False) -> DegreeData:
    """Rank, pivot-word normal basis and kernel of [d]!_Psi, eliminating one braid orbit at a time."""
    bd = _braid_data(psi, r, check)
    R = r ** d
    if d <= 1:
        return DegreeData(d, R, list(range(R)), {}, {}, [1] * R,
                          SparseMatrix.identity(R) if keep_matrix else None)
    M = braided_factorial(bd, r, d, budget=budget, check=False)
    src, dst = [], []
    for j, col in M.cols.items():
        for i in col:
            src.append(i)
            dst.append(j)
    blocks = connected_blocks(R, src, dst)
    pivots: list[int] = []
    kernel: dict = {}
    normal: dict = {}
    for block in blocks:
        sub = SparseMatrix(R, R, {j: M.cols[j] for j in block if j in M.cols})
        res = column_echelon(sub, order=block)
        pivots.extend(res.pivots)
        kernel.update(res.kernel)
        normal.update(res.normal_form)
    pivots.sort()
    return DegreeData(d, len(pivots), pivots, kernel, normal, [len(b) for b in blocks],
                      M if keep_matrix else None)


# --- module-level reports ----------------------------------------------------------------------


class RankCache:
    """Symmetrizer ranks on disk, keyed by a content hash of (component module, degree, version)."""

    ENV = "COCYCLE_TWIST_CACHE"

    def __init__(self, directory: str | os.PathLike | None = None):
        directory = directory or os.environ.get(self.ENV)
        self.directory = Path(directory) if directory else None
        self.hits = 0
        self.misses = 0

    @staticmethod
    def key(Y: YDModule, d: int) -> str:
        payload = json.dumps({"module": Y.to_json(), "degree": d, "version": __version__}, sort_keys=True)
        return hashlib.sha256(payload.encode()).hexdigest()

    def get(self, Y: YDModule, d: int) -> int | None:
        if self.directory is None:
            return None
        path = self.directory / f"{self.key(Y, d)}.json"
        if path.exists():
            self.hits += 1
            return json.loads(path.read_text())["rank"]
        self.misses += 1
        return None

    def put(self, Y: YDModule, d: int, value: int) -> None:
        if self.directory is None:
            return
        self.directory.mkdir(parents=True, exist_ok=True)
        path = self.directory / f"{self.key(Y, d)}.json"
        tmp = path.with_suffix(".tmp")
        tmp.write_text(json.dumps({"rank": value, "degree": d}))
        tmp.replace(path)


def _component_label(q) -> str:
    return "field" if q is None else f"z={q}"


@dataclass
class HilbertPrefix:
    degrees: list[int]
    components: dict[str, list[int]]
    flat: bool

    @property
    def ranks(self) -> list[int]:
        first = next(iter(self.components.values()))
        return list(first) if self.flat else []

    def to_json(self) -> dict:
        return {"degrees": self.degrees, "ranks": self.ranks, "components": self.components, "flat": self.flat}


def hilbert_prefix(Y: YDModule, D: int, cache: RankCache | None = None, budget: int | None = None) -> HilbertPrefix:
    """[rank [d]!_Psi for d = 0..D], per idempotent component over k[C_m]."""
    comps = {}
    for q, Yq in components(Y):
        psi = braiding(Yq)
        bd = _braid_data(psi, Yq.rank)
        ranks = []
        for d in range(D + 1):
            hit = cache.get(Yq, d) if cache is not None else None
            if hit is None:
                hit = degree_data(bd, Yq.rank, d, budget=budget).rank
                if cache is not None:
                    cache.put(Yq, d, hit)
            ranks.append(hit)
        comps[_component_label(q)] = ranks
    values = list(comps.values())
    return HilbertPrefix(list(range(D + 1)), comps, all(v == values[0] for v in values))


@dataclass
class SymmetrizerReport:
    module: YDModule
    max_degree: int
    components: dict[str, list[DegreeData]]
    flat: bool
    kernels: dict[int, list[dict]]  # recombined over k[C_m] when flat, else empty

    def ranks(self, label: str | None = None) -> list[int]:
        label = label or next(iter(self.components))
        return [dd.rank for dd in self.components[label]]


def symmetrizer_report(Y: YDModule, D: int, keep_matrices: bool = False, budget: int | None = None) -> SymmetrizerReport:
    comps = {}
    roots = []
    for q, Yq in components(Y):
        bd = _braid_data(braiding(Yq), Yq.rank)
        comps[_component_label(q)] = [degree_data(bd, Yq.rank, d, keep_matrices, budget) for d in range(D + 1)]
        roots.append(q)
    labels = list(comps)
    flat = all([dd.rank for dd in comps[lab]] == [dd.rank for dd in comps[labels[0]]] for lab in labels)
    kernels: dict[int, list[dict]] = {}
    if roots == [None]:
        kernels = {d: list(comps["field"][d].kernel.values()) for d in range(D + 1)}
    elif flat:
        m = Y.ring.m
        for d in range(D + 1):
            per = [list(comps[lab][d].kernel.values()) for lab in labels]
            kernels[d] = [_recombine_vectors([p[i] for p in per], m) for i in range(len(per[0]))]
    return SymmetrizerReport(Y, D, comps, flat, kernels)


def _recombine_vectors(vectors: list[dict], m: int) -> dict:
    keys = set().union(*vectors)
    out = {}
    for k in sorted(keys):
        x = recombine([v.get(k, 0) for v in vectors], m)
        if x:
            out[k] = x
    return out


def vector_at(vec: dict, q) -> dict:
    """Evaluate a k[C_m]-vector at z = q."""
    out = {}
    for k, v in vec.items():
        x = _to_native(specialize(v, q)) if isinstance(v, GroupRingScalar) else v
        if x:
            out[k] = x
    return out


# --- truncated Nichols algebra ---------------------------------------------------------------


class DegreeOverflow(ValueError):
    pass


@dataclass
class NicholsTruncation:
    """B(V) up to degree D over a field; elements are dicts (degree, word index) -> coefficient."""

    module: YDModule
    max_degree: int
    data: list[DegreeData]

    @property
    def r(self) -> int:
        return self.module.rank

    def normal_basis(self, d: int) -> list[int]:
        return self.data[d].pivots

    def dimension(self, d: int) -> int:
        return self.data[d].rank

    def reduce(self, d: int, vec: dict) -> dict:
        """Tensor vector of degree d -> normal-basis coordinates."""
        dd = self.data[d]
        out: dict = {}
        for w, x in vec.items():
            nf = dd.normal_form.get(w)
            items = nf.items() if nf is not None else ((w, 1),)
            for p, c in items:
                s = out.get(p, 0) + c * x
                if s:
                    out[p] = s
                else:
                    out.pop(p, None)
        return {p: _to_native(x) for p, x in out.items()}

    def element(self, d: int, vec: dict) -> dict:
        return {(d, w): x for w, x in self.reduce(d, vec).items()}

    def letter(self, a: int) -> dict:
        return {(1, a): 1}

    def one(self) -> dict:
        return {(0, 0): 1}

    def multiply(self, a: dict, b: dict) -> dict:
        by_degree: dict[int, dict] = {}
        for (da, wa), x in a.items():
            for (db, wb), y in b.items():
                d = da + db
                if d > self.max_degree:
                    raise DegreeOverflow(f"product of degree {d} exceeds truncation {self.max_degree}")
                slot = by_degree.setdefault(d, {})
                w = wa * self.r ** db + wb
                s = slot.get(w, 0) + x * y
                if s:
                    slot[w] = s
                else:
                    slot.pop(w, None)
        out = {}
        for d, vec in by_degree.items():
            out.update(self.element(d, vec))
        return out

    def add(self, a: dict, b: dict, scale=1) -> dict:
        out = dict(a)
        for k, v in b.items():
            s = out.get(k, 0) + scale * v
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return out


def nichols_truncation(Y: YDModule, D: int, budget: int | None = None) -> NicholsTruncation:
    if not Y.ring.is_field:
        raise ValueError("truncations are built per component; specialize the module first")
    bd = _braid_data(braiding(Y), Y.rank)
    return NicholsTruncation(Y, D, [degree_data(bd, Y.rank, d, budget=budget) for d in range(D + 1)])


def nichols_multiply(T: NicholsTruncation, a: dict, b: dict) -> dict:
    return T.multiply(a, b)


# --- quadratic relations ----------------------------------------------------------------------


def quadratic_relations(Y: YDModule) -> list[dict]:
    """Echelonized kernel basis of [2]!_Psi = id + Psi (recombined over k[C_m] when flat)."""
    rep = symmetrizer_report(Y, 2)
    if not rep.flat:
        raise ValueError("component kernels have different dimensions; no free basis over the group ring")
    return rep.kernels[2]


def listed_quadratic_relations(n: int) -> list[tuple[str, dict]]:
    """The quadratic relations of B(RX_n, q_z) in closed form, as tensors over k[C_2].

    e_(ij)^2; e_(ij) e_(st) - z e_(st) e_(ij) for disjoint pairs (one per unordered
    pair of pairs); e_(ij) e_(jk) - z e_(jk) e_(ik) - z e_(ik) e_(ij) for i < j < k.
    """
    X = TranspositionClass(n)
    r = len(X)
    one = GroupRingScalar.z(2, 0)
    z = GroupRingScalar.z(2, 1)
    out = []
    for k, (i, j) in enumerate(X.pairs):
        out.append((f"e{X.labels()[k]}^2", {k * r + k: one}))
    for a, b in itertools.combinations(range(r), 2):
        if not set(X.pairs[a]) & set(X.pairs[b]):
            out.append((f"disjoint {X.labels()[a]} {X.labels()[b]}", {a * r + b: one, b * r + a: -z}))
    for i, j, k in itertools.combinations(range(n), 3):
        ij, jk, ik = X.index_of(i, j), X.index_of(j, k), X.index_of(i, k)
        vec: dict = {}
        for key, c in ((ij * r + jk, one), (jk * r + ik, -z), (ik * r + ij, -z)):
            vec[key] = vec.get(key, 0) + c
        out.append((f"triangle ({i + 1} {j + 1} {k + 1})", vec))
    return out


@dataclass
class QuadraticReport:
    n: int
    listed: int
    all_in_kernel: bool
    failing: list[str]
    kernel_dimension: dict[str, int]
    listed_span: dict[str, int]
    orbit_span: dict[str, int]

    @property
    def spans(self) -> bool:
        return all(self.listed_span[c] == self.kernel_dimension[c] for c in self.kernel_dimension)

    @property
    def count_matches(self) -> bool:
        return all(self.listed == d for d in self.kernel_dimension.values())

    @property
    def orbit_spans(self) -> bool:
        return all(self.orbit_span[c] == self.kernel_dimension[c] for c in self.kernel_dimension)


def quadratic_relation_report(n: int) -> QuadraticReport:
    """Check the closed-form relations of B(RX_n, q_z) against ker [2]!.

    Membership is tested over k[C_2] directly; spanning is measured per component
    for the listed relations and for their orbit under S_n acting diagonally.
    """
    Y = rack_module(n, "qz")
    r = Y.rank
    psi = braiding(Y)
    listed = listed_quadratic_relations(n)
    failing = [name for name, vec in listed if symmetrizer_apply(psi, r, 2, vec)]
    kernel_dim, listed_span, orbit_span = {}, {}, {}
    G = Y.group
    for q, Yq in components(Y):
        label = _component_label(q)
        dd = degree_data(braiding(Yq), r, 2)
        kernel_dim[label] = dd.nullity
        vecs = [vector_at(v, q) for _, v in listed]
        listed_span[label] = rank(SparseMatrix.from_columns(r * r, vecs))
        orbit = []
        for g in range(G.order):
            rho2 = Yq.action[g].kron(Yq.action[g])
            orbit.extend(rho2.apply(v) for v in vecs)
        orbit_span[label] = rank(SparseMatrix.from_columns(r * r, orbit))
    return QuadraticReport(n, len(listed), not failing, failing, kernel_dim, listed_span, orbit_span)


@dataclass
class QuadraticCoverReport:
    degrees: list[int]
    cover: dict[str, list[int]]
    nichols: dict[str, list[int]]

    @property
    def quadratic_up_to(self) -> int:
        """Largest d with equal dimensions in every degree up to d, on every component."""
        d = -1
        for k in self.degrees:
            if any(self.cover[c][k] != self.nichols[c][k] for c in self.cover):
                break
            d = k
        return d


def quadratic_cover_comparison(Y: YDModule, D: int, budget: int | None = None) -> QuadraticCoverReport:
    """dim of T(V)/(ker [2]!) against rank [d]! for d <= D, per component.

    The degree-d part of the quadratic ideal is spanned by u (x) k (x) w with
    k in ker [2]! and u, w tensor words; the cover can only be larger.
    """
    cover, nich = {}, {}
    for q, Yq in components(Y):
        label = _component_label(q)
        r = Yq.rank
        bd = _braid_data(braiding(Yq), r)
        kernel = list(degree_data(bd, r, 2, budget=budget).kernel.values())
        dims, ranks = [], []
        for d in range(D + 1):
            ranks.append(degree_data(bd, r, d, budget=budget).rank)
            if d < 2:
                dims.append(r ** d)
                continue
            gens = []
            for i in range(d - 1):
                left, right = r ** i, r ** (d - i - 2)
                for u in range(left):
                    for w in range(right):
                        for k in kernel:
                            gens.append({(u * r * r + x) * right + w: c for x, c in k.items()})
            dims.append(r ** d - (rank(SparseMatrix.from_columns(r ** d, gens)) if gens else 0))
        cover[label], nich[label] = dims, ranks
    return QuadraticCoverReport(list(range(D + 1)), cover, nich)


# --- twisting -------------------------------------------------------------------------------


def cocycle_word_exponents(degrees: list[int], mu: ZmCocycle, d: int) -> list[int]:
    """Exponent of mu_d on each word g_1...g_d: sum_{k>=2} mu(g_1...g_{k-1}, g_k)."""
    G = mu.group
    r = len(degrees)
    out = []
    for word in itertools.product(range(r), repeat=d):
        acc, e = G.identity, 0
        for k, a in enumerate(word):
            g = degrees[a]
            if k:
                e += mu(acc, g)
            acc = G.mul(acc, g)
        out.append(e % mu.m)
    return out


@dataclass
class TwistCheck:
    degrees: list[int]
    results: dict[str, list[bool]]

    @property
    def ok(self) -> bool:
        return all(all(v) for v in self.results.values())


def twist_equivalence_check(Y: YDModule, mu: ZmCocycle, D: int) -> TwistCheck:
    """ker [d]!_{Psi_mu} = mu_d(ker [d]!_Psi) for d <= D, at each root of unity z = q.

    Psi_mu is formed directly as mu^op Psi mu^-1, not through the twisted module.
    """
    if not Y.ring.is_field:
        raise ValueError("expected a module over a field")
    r = Y.rank
    psi_mu_R = twisted_braiding(Y, mu)
    psi = braiding(Y)
    results = {}
    for k in range(mu.m):
        q = root_of_unity(mu.m, k)
        psi_q = psi_mu_R.map(lambda v: _to_native(specialize(v, q)))
        flags = []
        for d in range(D + 1):
            if d <= 1:
                flags.append(True)
                continue
            twisted = list(degree_data(psi_q, r, d).kernel.values())
            plain = list(degree_data(psi, r, d).kernel.values())
            scal = [_to_native(q ** e) for e in cocycle_word_exponents(Y.degrees, mu, d)]
            moved = [{w: x * scal[w] for w, x in v.items()} for v in plain]
            flags.append(span_equal(twisted, moved, r ** d))
        results[f"z={q}"] = flags
    return TwistCheck(list(range(D + 1)), results)
