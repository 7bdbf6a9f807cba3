"""Spin cocycle of S_n from a Clifford-algebra section, and the four-class family.

Clifford monomials e_S are bitmasks over {1..n} (bit i-1 for e_i) with
e_S e_T = sign(S, T) e_{S xor T} and e_i^2 = 1.  The section sends a
permutation with lex-min reduced word s_{i_1}...s_{i_l} to the integer
element (e_{i_1} - e_{i_1+1}) ... (e_{i_l} - e_{i_l+1}); its square-root-of-2
normalization is dropped, so products agree with the section of the product up
to +-2^k and the sign is the cocycle value.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .group_cohomology import (
    ZmCocycle,
    chi_from_cocycle,
    is_cocycle,
    trivial_cocycle,
)
from .groups import FiniteGroup, SymmetricGroup, TranspositionClass, central_extension, symmetric_group
from .kernels import clifford_left_mul, smith_mod


class SectionError(ArithmeticError):
    """T(g)T(h) is not a scalar multiple of T(gh); indicates a bug."""


# --- Clifford algebra ------------------------------------------------------------------------


def blade_sign(S: int, T: int) -> int:
    """(-1) ** #{(s, t) in S x T : s > t}."""
    count = 0
    t = T
    while t:
        low = t & -t
        count += bin(S & ~((low << 1) - 1)).count("1")
        t ^= low
    return -1 if count & 1 else 1


@lru_cache(maxsize=None)
def sign_table(n: int) -> np.ndarray:
    K = 1 << n
    out = np.empty((K, K), dtype=np.int64)
    for a in range(K):
        for b in range(K):
            out[a, b] = blade_sign(a, b)
    return out


class CliffordElement:
    """Integer combination of Clifford monomials, stored as {bitmask: coefficient}."""

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: dict[int, int] | None = None):
        self.n = n
        self.terms = {k: v for k, v in (terms or {}).items() if v}

    @classmethod
    def generator(cls, n: int, i: int) -> "CliffordElement":
        """e_i, 1-based."""
        return cls(n, {1 << (i - 1): 1})

    @classmethod
    def scalar(cls, n: int, c: int = 1) -> "CliffordElement":
        return cls(n, {0: c})

    def __mul__(self, other):
        if isinstance(other, int):
            return CliffordElement(self.n, {k: v * other for k, v in self.terms.items()})
        return clifford_mul(self, other)

    __rmul__ = __mul__

    def __add__(self, other: "CliffordElement") -> "CliffordElement":
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return CliffordElement(self.n, out)

    def __sub__(self, other: "CliffordElement") -> "CliffordElement":
        return self + other * -1

    def __neg__(self) -> "CliffordElement":
        return self * -1

    def __eq__(self, other) -> bool:
        return isinstance(other, CliffordElement) and self.n == other.n and self.terms == other.terms

    __hash__ = None

    def to_dense(self) -> np.ndarray:
        v = np.zeros(1 << self.n, dtype=np.int64)
        for k, c in self.terms.items():
            v[k] = c
        return v

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for k in sorted(self.terms):
            idx = [str(i + 1) for i in range(self.n) if k >> i & 1]
            parts.append(f"{self.terms[k]}*e{{{','.join(idx)}}}" if idx else str(self.terms[k]))
        return " + ".join(parts)


def clifford_mul(a: CliffordElement, b: CliffordElement) -> CliffordElement:
    if a.n != b.n:
        raise ValueError("Clifford elements of different rank")
    out: dict[int, int] = {}
    for S, x in a.terms.items():
        for T, y in b.terms.items():
            k = S ^ T
            out[k] = out.get(k, 0) + blade_sign(S, T) * x * y
    return CliffordElement(a.n, out)


# --- the section ---------------------------------------------------------------------------------


@dataclass
class SpinSection:
    n: int
    group: SymmetricGroup
    table: np.ndarray  # row g: dense coefficients of T(g) over 2^n blades

    def element(self, g: int) -> CliffordElement:
        return CliffordElement(self.n, {int(k): int(v) for k, v in enumerate(self.table[g]) if v})


def spin_section(n: int) -> SpinSection:
    G = symmetric_group(n)
    K = 1 << n
    sign = sign_table(n)
    T = np.zeros((G.order, K), dtype=np.int64)
    T[G.identity, 0] = 1
    factors = []
    for i in range(1, n):
        f = np.zeros(K, dtype=np.int64)
        f[1 << (i - 1)] = 1
        f[1 << i] = -1
        factors.append(f)
    # lex-min words are greedy, so word(g) = [i] + word(s_i g): fill by length
    for g in sorted(range(G.order), key=lambda x: G.lengths[x]):
        w = G.words[g]
        if not w:
            continue
        rest = G.mul(G.adjacent_indices[w[0] - 1], g)
        T[g] = clifford_left_mul(factors[w[0] - 1], T[rest][None, :], sign)[0]
    return SpinSection(n, G, T)


def spin_cocycle(n: int) -> ZmCocycle:
    """C_2-valued cocycle with T(g) T(h) = (-1)**mu(g, h) * 2**k * T(gh)."""
    if n < 1:
        raise ValueError("n must be positive")
    sec = spin_section(n)
    G = sec.group
    N = G.order
    sign = sign_table(n)
    lengths = G.lengths
    table = np.zeros((N, N), dtype=np.int64)
    lead = np.argmax(sec.table != 0, axis=1)
    for g in range(N):
        prods = clifford_left_mul(sec.table[g], sec.table, sign)
        gh = G.table[g]
        target = sec.table[gh]
        idx = lead[gh]
        ratio_num = prods[np.arange(N), idx]
        ratio_den = target[np.arange(N), idx]
        if (ratio_num % ratio_den != 0).any():
            raise SectionError(f"non-integral ratio at g={g}")
        ratio = ratio_num // ratio_den
        if not (prods == ratio[:, None] * target).all():
            h = int(np.flatnonzero((prods != ratio[:, None] * target).any(axis=1))[0])
            raise SectionError(f"T(g)T(h) is not a multiple of T(gh) at g={g}, h={h}")
        expected = 2 ** ((lengths[g] + lengths - lengths[gh]) // 2)
        if not (np.abs(ratio) == expected).all():
            raise SectionError(f"unexpected scalar magnitude at g={g}")
        table[g] = (ratio < 0).astype(np.int64)
    return ZmCocycle(G, 2, table, "[1,z]")


def length_cocycle(n: int) -> ZmCocycle:
    """z ** ((l(g) + l(h) - l(gh)) / 2), the class [z, 1]."""
    G = symmetric_group(n)
    L = G.lengths
    excess = L[:, None] + L[None, :] - L[G.table]
    if (excess % 2).any():
        raise ArithmeticError("l(g) + l(h) - l(gh) is odd somewhere")
    return ZmCocycle(G, 2, excess // 2, "[z,1]")


def cocycle_family(n: int, alpha: int, beta: int) -> ZmCocycle:
    """Representatives of the classes [alpha, beta] in H^2(S_n, C_2), with 1 meaning z."""
    if alpha not in (0, 1) or beta not in (0, 1):
        raise ValueError("alpha and beta are 0 or 1")
    G = symmetric_group(n)
    mu = trivial_cocycle(G, 2)
    if alpha:
        mu = mu * length_cocycle(n)
    if beta:
        mu = mu * spin_cocycle(n)
    mu.name = f"[{'z' if alpha else '1'},{'z' if beta else '1'}]"
    return mu


CLASS_NAMES = {"11": (0, 0), "z1": (1, 0), "1z": (0, 1), "zz": (1, 1)}


# --- extension invariants -------------------------------------------------------------------------


@dataclass
class ExtensionInvariants:
    order: int
    transposition_lift_order: int
    all_transposition_lifts_same_order: bool
    disjoint_lifts_anticommute: bool | None
    alpha: int
    beta: int | None


def extension_invariants(mu: ZmCocycle) -> ExtensionInvariants:
    """Lift orders and commutation of disjoint lifts inside the central extension of S_n."""
    G = mu.group
    n = G.n
    E = central_extension(G, mu)
    N = G.order
    X = TranspositionClass(n)
    lift_orders = set()
    for k in range(len(X)):
        t = G.index[X.perm(k)]
        for a in range(mu.m):
            lift_orders.add(E.element_order(a * N + t))
    alpha = mu(G.adjacent_indices[0], G.adjacent_indices[0])
    beta = None
    anticommute = None
    if n >= 4:
        checks = []
        for k in range(len(X)):
            for l in range(len(X)):
                if set(X.pairs[k]) & set(X.pairs[l]):
                    continue
                a = G.index[X.perm(k)]
                b = G.index[X.perm(l)]
                ab = E.mul(a, b)
                ba = E.mul(b, a)
                # both products lie over the same g; compare their C_m parts
                checks.append((ab // N - ba // N) % mu.m)
        anticommute = all(c == 1 for c in checks)
        s1, s3 = G.adjacent_indices[0], G.adjacent_indices[2]
        beta = (mu(s1, s3) - mu(s3, s1)) % mu.m
        if not (all(c == checks[0] for c in checks) and checks[0] == beta):
            raise ArithmeticError("commutator of disjoint lifts is not constant")
    order = next(iter(lift_orders))
    return ExtensionInvariants(E.order, order, len(lift_orders) == 1, anticommute, alpha, beta)


# --- chi against the Vendramin rule -----------------------------------------------------------------


def vendramin_table(n: int) -> np.ndarray:
    """Exponents on X_n x X_n: 1 (that is, z) iff sigma(i) < sigma(j) for tau = (i j), i < j.

    The rule is only asserted for sigma a transposition; a 1-cocycle is
    determined by its values there since transpositions generate S_n.
    """
    X = TranspositionClass(n)
    out = np.zeros((len(X), len(X)), dtype=np.int64)
    for a in range(len(X)):
        p = X.perm(a)
        for k, (i, j) in enumerate(X.pairs):
            out[a, k] = 1 if p(i) < p(j) else 0
    return out


def chi_on_transpositions(mu: ZmCocycle) -> np.ndarray:
    """chi_mu restricted to X_n x X_n, rows and columns in transposition order."""
    G = mu.group
    X = TranspositionClass(G.n)
    idx = [G.index[X.perm(k)] for k in range(len(X))]
    return chi_from_cocycle(mu).table[np.ix_(idx, idx)]


@dataclass
class VendraminComparison:
    branch: str  # "exact", "coboundary" or "mismatch"
    correction: np.ndarray | None  # psi on X_n (exponents) when branch == "coboundary"
    aligned: ZmCocycle | None


def compare_with_vendramin(mu: ZmCocycle) -> VendraminComparison:
    """Match chi_mu on X_n x X_n against the Vendramin rule, directly or after mu -> mu + d(phi).

    Changing mu by d(phi) changes chi(g, k) by phi(g k g^-1) - phi(k); only phi
    on X_n matters, so we solve for psi on X_n over Z/2 and extend by 0.
    """
    G = mu.group
    n = G.n
    X = TranspositionClass(n)
    target = vendramin_table(n)
    diff = (target - chi_on_transpositions(mu)) % 2
    if not diff.any():
        return VendraminComparison("exact", None, mu)
    r = len(X)
    rows, rhs = [], []
    for a in range(r):
        p = X.perm(a)
        for k in range(r):
            row = np.zeros(r, dtype=np.int64)
            row[X.act(p, k)] += 1
            row[k] -= 1
            rows.append(row)
            rhs.append(diff[a, k])
    A = np.concatenate([np.array(rows) % 2, np.array(rhs)[:, None]], axis=1)
    A = np.unique(A, axis=0)
    D, V, _, rank, diag = smith_mod(A, 2, r)
    c = D[:, r]
    if (c[rank:] % 2).any():
        return VendraminComparison("mismatch", None, None)
    y = np.zeros(r, dtype=np.int64)
    y[:rank] = c[:rank]
    psi = (V @ y) % 2
    phi = np.zeros(G.order, dtype=np.int64)
    for k in range(r):
        phi[G.index[X.perm(k)]] = psi[k]
    d_phi = (phi[None, :] - phi[G.table] + phi[:, None]) % 2
    aligned = ZmCocycle(G, 2, mu.table + d_phi, mu.name)
    if ((chi_on_transpositions(aligned) - target) % 2).any():
        raise ArithmeticError("coboundary correction did not align chi")
    return VendraminComparison("coboundary", psi, aligned)


@lru_cache(maxsize=None)
def _aligned_cache(n: int) -> ZmCocycle:
    comp = compare_with_vendramin(spin_cocycle(n))
    if comp.aligned is None:
        raise ArithmeticError("spin cocycle cannot be aligned with the Vendramin rule")
    ok, witness = is_cocycle(comp.aligned)
    if not ok:
        raise ArithmeticError(f"aligned cocycle fails at {witness}")
    return comp.aligned


def aligned_spin_cocycle(n: int) -> ZmCocycle:
    """A cocycle of class [1,z] whose chi on S_n x X_n is exactly the Vendramin rule."""
    mu = _aligned_cache(n)
    return ZmCocycle(mu.group, mu.m, mu.table.copy(), "[1,z]")


def spin_group(n: int) -> FiniteGroup:
    return central_extension(symmetric_group(n), spin_cocycle(n))
