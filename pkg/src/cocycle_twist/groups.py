"""Finite groups as explicit multiplication tables.

Symmetric groups use one-line permutations (0-based images), ordered
lexicographically.  ``FiniteGroup`` is the common table-backed type; cocycles,
modules and extensions all index against its canonical element order.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Hashable, Sequence

import numpy as np


class GroupError(ValueError):
    pass


# --- permutations ----------------------------------------------------------------------


@dataclass(frozen=True, order=True)
class Perm:
    images: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.images) != list(range(len(self.images))):
            raise GroupError(f"not a permutation: {self.images}")

    @classmethod
    def identity(cls, n: int) -> "Perm":
        return cls(tuple(range(n)))

    @classmethod
    def transposition(cls, n: int, i: int, j: int) -> "Perm":
        """Swap of the 0-based points i and j."""
        img = list(range(n))
        img[i], img[j] = img[j], img[i]
        return cls(tuple(img))

    @classmethod
    def adjacent(cls, n: int, k: int) -> "Perm":
        """The Coxeter generator s_k = (k, k+1), k 1-based."""
        return cls.transposition(n, k - 1, k)

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i]

    def __mul__(self, other: "Perm") -> "Perm":
        # (p*q)(i) = p(q(i))
        if self.n != other.n:
            raise GroupError("size mismatch")
        return Perm(tuple(self.images[i] for i in other.images))

    def inverse(self) -> "Perm":
        inv = [0] * self.n
        for i, x in enumerate(self.images):
            inv[x] = i
        return Perm(tuple(inv))

    def conj(self, other: "Perm") -> "Perm":
        """self * other * self^-1."""
        return self * other * self.inverse()

    def length(self) -> int:
        return length(self)

    def is_identity(self) -> bool:
        return all(i == x for i, x in enumerate(self.images))

    def cycles(self) -> list[tuple[int, ...]]:
        seen, out = set(), []
        for i in range(self.n):
            if i in seen:
                continue
            cyc, j = [], i
            while j not in seen:
                seen.add(j)
                cyc.append(j)
                j = self.images[j]
            if len(cyc) > 1:
                out.append(tuple(cyc))
        return out

    def label(self) -> str:
        cyc = self.cycles()
        if not cyc:
            return "()"
        return "".join("(" + " ".join(str(i + 1) for i in c) + ")" for c in cyc)

    def __repr__(self) -> str:
        return f"Perm({list(self.images)})"


def perm_ops(p: Perm, q: Perm | None, op: str) -> Perm:
    if op == "mul":
        return p * q
    if op == "inv":
        return p.inverse()
    if op == "conj":
        return p.conj(q)
    raise ValueError(f"unknown op {op!r}")


def length(p: Perm) -> int:
    """Number of inversions."""
    img = p.images
    return sum(1 for i in range(len(img)) for j in range(i + 1, len(img)) if img[i] > img[j])


def reduced_word(p: Perm) -> list[int]:
    """Lexicographically smallest reduced word in s_1..s_{n-1} (1-based letters).

    Greedy: the smallest left descent always starts some reduced word, so
    taking it repeatedly yields the lex-min one.
    """
    img = list(p.images)
    pos = [0] * len(img)
    for i, x in enumerate(img):
        pos[x] = i
    word = []
    while True:
        for v in range(len(img) - 1):
            if pos[v + 1] < pos[v]:
                # left-multiply by s_{v+1}: swap the values v and v+1
                pos[v], pos[v + 1] = pos[v + 1], pos[v]
                word.append(v + 1)
                break
        else:
            return word


def word_to_perm(n: int, word: Sequence[int]) -> Perm:
    p = Perm.identity(n)
    for k in word:
        p = p * Perm.adjacent(n, k)
    return p


# --- table groups ---------------------------------------------------------------------


class FiniteGroup:
    """A finite group given by a canonically ordered element list and its table."""

    def __init__(self, elements: Sequence[Hashable], table, identity: int, labels: Sequence[str] | None = None,
                 name: str = "G", verify: bool = True, generators: Sequence[int] | None = None):
        self.elements = list(elements)
        self.table = np.asarray(table, dtype=np.int64)
        self.identity = int(identity)
        self.labels = list(labels) if labels is not None else [str(e) for e in self.elements]
        self.name = name
        self.index = {e: i for i, e in enumerate(self.elements)}
        n = len(self.elements)
        if self.table.shape != (n, n):
            raise GroupError("table shape does not match the element count")
        inv = np.full(n, -1, dtype=np.int64)
        rows, cols = np.nonzero(self.table == self.identity)
        inv[rows] = cols
        self.inverse = inv
        if verify:
            self.verify()
        self._generators = list(generators) if generators is not None else None

    @classmethod
    def from_elements(cls, elements: Sequence[Hashable], mul: Callable, identity: Hashable, **kw) -> "FiniteGroup":
        index = {e: i for i, e in enumerate(elements)}
        n = len(elements)
        table = np.empty((n, n), dtype=np.int64)
        for i, a in enumerate(elements):
            for j, b in enumerate(elements):
                c = mul(a, b)
                if c not in index:
                    raise GroupError(f"not closed: {a} * {b}")
                table[i, j] = index[c]
        return cls(elements, table, index[identity], **kw)

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __repr__(self) -> str:
        return f"FiniteGroup({self.name}, order={self.order})"

    def mul(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    def inv(self, a: int) -> int:
        return int(self.inverse[a])

    def conj(self, g: int, h: int) -> int:
        """Index of g h g^-1."""
        return int(self.table[self.table[g, h], self.inverse[g]])

    def product(self, seq: Sequence[int]) -> int:
        out = self.identity
        for g in seq:
            out = int(self.table[out, g])
        return out

    def power(self, g: int, k: int) -> int:
        out = self.identity
        for _ in range(k):
            out = int(self.table[out, g])
        return out

    def element_order(self, g: int) -> int:
        k, x = 1, g
        while x != self.identity:
            x = int(self.table[x, g])
            k += 1
        return k

    def verify(self, sample: int = 4096, seed: int = 0) -> None:
        n = self.order
        t = self.table
        if (self.inverse < 0).any():
            raise GroupError("some element has no inverse")
        ident = np.arange(n)
        if not ((t[self.identity] == ident).all() and (t[:, self.identity] == ident).all()):
            raise GroupError("identity index is not a two-sided identity")
        for row in t:
            if len(np.unique(row)) != n:
                raise GroupError("table row is not a permutation")
        if n <= 256:
            for g in range(n):
                if not (t[t[g]] == t[g][t]).all():
                    raise GroupError(f"associativity fails at g={g}")
        else:
            rng = np.random.default_rng(seed)
            g, h, k = rng.integers(0, n, (3, sample))
            if not (t[t[g, h], k] == t[g, t[h, k]]).all():
                raise GroupError("associativity fails on a sampled triple")

    @cached_property
    def conjugacy_classes(self) -> list[list[int]]:
        seen = np.zeros(self.order, dtype=bool)
        out = []
        for h in range(self.order):
            if seen[h]:
                continue
            cls_ = sorted({self.conj(g, h) for g in range(self.order)})
            seen[cls_] = True
            out.append(cls_)
        return out

    def is_abelian(self) -> bool:
        return bool((self.table == self.table.T).all())

    def center(self) -> list[int]:
        return [g for g in range(self.order) if (self.table[g] == self.table[:, g]).all()]

    def subgroup_generated(self, gens: Sequence[int]) -> set[int]:
        seen = {self.identity}
        frontier = [self.identity]
        while frontier:
            nxt = []
            for x in frontier:
                for s in gens:
                    y = int(self.table[x, s])
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
        return seen

    @property
    def generators(self) -> list[int]:
        if self._generators is None:
            gens: list[int] = []
            span = {self.identity}
            for g in range(self.order):
                if g not in span:
                    gens.append(g)
                    span = self.subgroup_generated(gens)
            self._generators = gens
        return list(self._generators)

    def relabeled(self, perm: Sequence[int]) -> "FiniteGroup":
        """The same group with elements listed in the order ``perm`` (new i = old perm[i])."""
        perm = np.asarray(perm, dtype=np.int64)
        pos = np.empty_like(perm)
        pos[perm] = np.arange(len(perm))
        table = pos[self.table[np.ix_(perm, perm)]]
        gens = [int(pos[g]) for g in self._generators] if self._generators is not None else None
        return FiniteGroup([self.elements[i] for i in perm], table, int(pos[self.identity]),
                           [self.labels[i] for i in perm], name=self.name, verify=False, generators=gens)

    def to_json(self) -> dict:
        return {"name": self.name, "order": self.order, "element_labels": self.labels,
                "multiplication_table": self.table.tolist()}


class SymmetricGroup(FiniteGroup):
    """S_n on one-line permutations in lexicographic order, with a reduced-word cache."""

    def __init__(self, n: int):
        if n < 1:
            raise GroupError("n must be positive")
        self.n = n
        perms = [Perm(p) for p in itertools.permutations(range(n))]
        arr = np.array([p.images for p in perms], dtype=np.int64).reshape(len(perms), n)
        keys = _perm_keys(arr, n)  # increasing: permutations() yields lex order
        table = np.empty((len(perms), len(perms)), dtype=np.int64)
        for i in range(len(perms)):
            # row j holds p_i o p_j
            table[i] = np.searchsorted(keys, _perm_keys(arr[i][arr], n))
        gens = []
        if n >= 2:
            s1 = Perm.adjacent(n, 1)
            cycle = Perm(tuple(list(range(1, n)) + [0]))
            gens = sorted({perms.index(s1), perms.index(cycle)})
        super().__init__(perms, table, 0, [p.label() for p in perms], name=f"S{n}", verify=(n <= 5), generators=gens)
        self.lengths = np.array([length(p) for p in perms], dtype=np.int64)
        self.words = [reduced_word(p) for p in perms]
        self.adjacent_indices = [self.index[Perm.adjacent(n, k)] for k in range(1, n)]

    def perm(self, i: int) -> Perm:
        return self.elements[i]

    def idx(self, p: Perm | Sequence[int]) -> int:
        return self.index[p if isinstance(p, Perm) else Perm(tuple(p))]

    def transposition(self, i: int, j: int) -> int:
        """Index of the transposition of 0-based points i, j."""
        return self.index[Perm.transposition(self.n, i, j)]


def _perm_keys(arr: np.ndarray, n: int) -> np.ndarray:
    k = np.zeros(arr.shape[0], dtype=np.int64)
    for c in range(arr.shape[1]):
        k = k * n + arr[:, c]
    return k


def symmetric_group(n: int) -> SymmetricGroup:
    return _cached_symmetric(n)


_SYM_CACHE: dict[int, SymmetricGroup] = {}


def _cached_symmetric(n: int) -> SymmetricGroup:
    if n not in _SYM_CACHE:
        _SYM_CACHE[n] = SymmetricGroup(n)
    return _SYM_CACHE[n]


def cyclic_group(m: int) -> FiniteGroup:
    table = (np.arange(m)[:, None] + np.arange(m)[None, :]) % m
    return FiniteGroup(list(range(m)), table, 0, [f"c^{k}" for k in range(m)], name=f"C{m}",
                       generators=[1] if m > 1 else [])


def elementary_abelian(p: int, n: int) -> FiniteGroup:
    """C_p^n on exponent tuples in lexicographic order."""
    elements = list(itertools.product(range(p), repeat=n))
    G = FiniteGroup.from_elements(elements, lambda a, b: tuple((x + y) % p for x, y in zip(a, b)),
                                  tuple([0] * n), labels=["".join(map(str, e)) for e in elements],
                                  name=f"C{p}^{n}")
    G._generators = [G.index[tuple(1 if k == i else 0 for k in range(n))] for i in range(n)]
    G.prime = p
    G.rank = n
    return G


def direct_product(A: FiniteGroup, B: FiniteGroup) -> FiniteGroup:
    na, nb = A.order, B.order
    table = (A.table[:, None, :, None] * nb + B.table[None, :, None, :]).reshape(na * nb, na * nb)
    elements = [(a, b) for a in A.elements for b in B.elements]
    labels = [f"({la},{lb})" for la in A.labels for lb in B.labels]
    return FiniteGroup(elements, table, A.identity * nb + B.identity, labels, name=f"{A.name}x{B.name}")


def group_from_spec(spec: str) -> FiniteGroup:
    """Parse ``S<n>``, ``C<m>`` or ``C<p>^<k>``."""
    s = spec.strip()
    if m := re.fullmatch(r"S(\d+)", s):
        return symmetric_group(int(m.group(1)))
    if m := re.fullmatch(r"C(\d+)\^(\d+)", s):
        return elementary_abelian(int(m.group(1)), int(m.group(2)))
    if m := re.fullmatch(r"C(\d+)", s):
        return cyclic_group(int(m.group(1)))
    raise GroupError(f"unknown group spec {spec!r}")


# --- transpositions ----------------------------------------------------------------------


class TranspositionClass:
    """X_n: transpositions (i, j), i < j, 0-based, in lexicographic order."""

    def __init__(self, n: int):
        self.n = n
        self.pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
        self.position = {p: k for k, p in enumerate(self.pairs)}

    def __len__(self) -> int:
        return len(self.pairs)

    def __iter__(self):
        return iter(self.pairs)

    def index_of(self, i: int, j: int) -> int:
        return self.position[(min(i, j), max(i, j))]

    def perm(self, k: int) -> Perm:
        i, j = self.pairs[k]
        return Perm.transposition(self.n, i, j)

    def act(self, p: Perm, k: int) -> int:
        """Position of p (i j) p^-1 = (p(i) p(j))."""
        i, j = self.pairs[k]
        return self.index_of(p(i), p(j))

    def labels(self) -> list[str]:
        return [f"({i + 1} {j + 1})" for i, j in self.pairs]


# --- central extensions ----------------------------------------------------------------


def central_extension(G: FiniteGroup, mu) -> FiniteGroup:
    """The group C_m x G with (z^a, g)(z^b, h) = (z^(a+b+mu(g,h)), gh).

    Elements are pairs (a, g) ordered by a, then g.  Index of (a, g) is a*|G| + g.
    """
    from .group_cohomology import is_cocycle

    ok, witness = is_cocycle(mu)
    if not ok:
        raise GroupError(f"not a cocycle, violated at {witness}")
    m, n = mu.m, G.order
    a = np.arange(m)[:, None, None, None]
    b = np.arange(m)[None, None, :, None]
    exp = (a + b + mu.table[None, :, None, :]) % m
    table = (exp * n + G.table[None, :, None, :]).reshape(m * n, m * n)
    elements = [(k, g) for k in range(m) for g in range(n)]
    labels = [(f"z^{k}*" if k else "") + G.labels[g] for k, g in elements]
    E = FiniteGroup(elements, table, G.identity, labels, name=f"{G.name}~[{mu.name}]", verify=(m * n <= 256))
    E.base = G
    E.modulus = m
    return E


def extension_index(E: FiniteGroup, a: int, g: int) -> int:
    return (a % E.modulus) * E.base.order + g
