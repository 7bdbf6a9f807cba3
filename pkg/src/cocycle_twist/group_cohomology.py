"""Second cohomology of finite groups with cyclic coefficients C_m.

Cocycles are exponent tables: the value of mu(g, h) is z**table[g, h] for a
generator z of C_m, so the cocycle identity becomes additive mod m.
All solving is done over Z/m by unimodular diagonalization
(:func:`cocycle_twist.kernels.smith_mod`), which handles composite m.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .groups import FiniteGroup, GroupError
from .kernels import cocycle_violation, smith_mod


@dataclass(eq=False)
class ZmCocycle:
    group: FiniteGroup
    m: int
    table: np.ndarray
    name: str = "mu"

    def __post_init__(self):
        self.table = np.asarray(self.table, dtype=np.int64) % self.m
        n = self.group.order
        if self.table.shape != (n, n):
            raise ValueError("cocycle table shape does not match the group")

    def __call__(self, g: int, h: int) -> int:
        return int(self.table[g, h])

    def __mul__(self, other: "ZmCocycle") -> "ZmCocycle":
        _check_compatible(self, other)
        return ZmCocycle(self.group, self.m, self.table + other.table, f"{self.name}*{other.name}")

    def inverse(self) -> "ZmCocycle":
        return ZmCocycle(self.group, self.m, -self.table, f"{self.name}^-1")

    def __eq__(self, other) -> bool:
        return (isinstance(other, ZmCocycle) and self.group is other.group and self.m == other.m
                and bool((self.table == other.table).all()))

    __hash__ = None

    def is_trivial_table(self) -> bool:
        return not self.table.any()

    def embed(self, m: int) -> "ZmCocycle":
        """The same cocycle with C_self.m viewed inside C_m (z -> z**(m/self.m))."""
        if m % self.m:
            raise ValueError(f"C_{self.m} does not embed in C_{m}")
        return ZmCocycle(self.group, m, self.table * (m // self.m), self.name)

    def to_json(self) -> dict:
        return {"m": self.m, "group_id": self.group.name, "exponents": self.table.tolist()}


@dataclass(eq=False)
class OneCochain:
    group: FiniteGroup
    m: int
    values: np.ndarray

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=np.int64) % self.m
        if self.values[self.group.identity] != 0:
            raise ValueError("a normalized cochain vanishes at the identity")

    def __call__(self, g: int) -> int:
        return int(self.values[g])


@dataclass(eq=False)
class ChiTable:
    group: FiniteGroup
    m: int
    table: np.ndarray

    def __call__(self, g: int, k: int) -> int:
        return int(self.table[g, k])


def _check_compatible(a, b) -> None:
    if a.group is not b.group and a.group.order != b.group.order:
        raise GroupError("cocycles live on different groups")
    if a.m != b.m:
        raise ValueError("cocycles have different moduli")


def trivial_cocycle(G: FiniteGroup, m: int) -> ZmCocycle:
    return ZmCocycle(G, m, np.zeros((G.order, G.order), dtype=np.int64), "1")


def cocycle_from_function(G: FiniteGroup, m: int, f: Callable[[int, int], int], name: str = "mu") -> ZmCocycle:
    n = G.order
    return ZmCocycle(G, m, np.array([[f(g, h) for h in range(n)] for g in range(n)], dtype=np.int64), name)


def cocycle_from_json(obj: dict) -> ZmCocycle:
    """Inverse of ``ZmCocycle.to_json``; the group is rebuilt from its spec string."""
    from .groups import group_from_spec

    try:
        G = group_from_spec(obj["group_id"])
        return ZmCocycle(G, int(obj["m"]), np.array(obj["exponents"], dtype=np.int64), obj.get("name", "mu"))
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed cocycle JSON: {exc}") from exc


def is_cocycle(mu: ZmCocycle) -> tuple[bool, tuple | None]:
    """Exhaustive check of normalization and the cocycle identity.

    Returns ``(True, None)`` or ``(False, witness)`` where the witness is
    ``("normalization", g)`` or a violating triple ``(g, h, k)``.
    """
    G, t = mu.group, mu.table
    e = G.identity
    bad = np.flatnonzero((t[e] != 0) | (t[:, e] != 0))
    if len(bad):
        return False, ("normalization", int(bad[0]))
    v = cocycle_violation(G.table, t, mu.m)
    return (v is None), v


def coboundary(phi: OneCochain) -> ZmCocycle:
    """d(phi)(g, h) = phi(h) - phi(gh) + phi(g), additively."""
    G, v = phi.group, phi.values
    return ZmCocycle(G, phi.m, v[None, :] - v[G.table] + v[:, None], "d(phi)")


def _solve_mod(A: np.ndarray, b: np.ndarray, m: int) -> np.ndarray | None:
    """One solution of A x = b over Z/m, or None."""
    if A.shape[0] == 0:
        return np.zeros(A.shape[1], dtype=np.int64)
    aug = np.concatenate([A % m, (b % m)[:, None]], axis=1)
    aug = np.unique(aug, axis=0)
    npiv = A.shape[1]
    D, V, _, rank, diag = smith_mod(aug, m, npiv)
    c = D[:, npiv]
    y = np.zeros(npiv, dtype=np.int64)
    for i in range(rank):
        d = diag[i]
        if c[i] % d:
            return None
        y[i] = c[i] // d
    if (c[rank:] % m).any():
        return None
    return (V @ y) % m


def cohomologous(mu: ZmCocycle, nu: ZmCocycle) -> OneCochain | None:
    """A cochain phi with nu = mu + d(phi), or None when the classes differ."""
    _check_compatible(mu, nu)
    G, m = mu.group, mu.m
    n, e = G.order, G.identity
    unknowns = [g for g in range(n) if g != e]
    col = {g: k for k, g in enumerate(unknowns)}
    gg, hh = np.meshgrid(np.array(unknowns), np.array(unknowns), indexing="ij")
    gg, hh = gg.ravel(), hh.ravel()
    prod = G.table[gg, hh]
    rows = len(gg)
    A = np.zeros((rows, len(unknowns)), dtype=np.int64)
    r = np.arange(rows)
    cg = np.array([col[g] for g in gg])
    ch = np.array([col[h] for h in hh])
    np.add.at(A, (r, cg), 1)
    np.add.at(A, (r, ch), 1)
    nz = prod != e
    cp = np.array([col.get(int(p), 0) for p in prod])
    np.add.at(A, (r[nz], cp[nz]), -1)
    rhs = (nu.table - mu.table)[gg, hh]
    x = _solve_mod(A, rhs, m)
    if x is None:
        return None
    values = np.zeros(n, dtype=np.int64)
    values[unknowns] = x
    phi = OneCochain(G, m, values)
    if not ((mu.table + coboundary(phi).table - nu.table) % m == 0).all():
        raise ArithmeticError("solver returned an invalid witness")
    return phi


# --- H^2(G, C_m) -----------------------------------------------------------------------------


@dataclass
class H2Report:
    group: str
    m: int
    invariant_factors: list[int]
    cocycle_rank_info: dict = field(default_factory=dict)

    @property
    def order(self) -> int:
        out = 1
        for d in self.invariant_factors:
            out *= d
        return out


def _cocycle_parametrization(G: FiniteGroup, gens: list[int]) -> np.ndarray:
    """Linear expressions Mu[g, k, :] for mu(g, k) in terms of the values mu(s, x), s in gens.

    Uses mu(s h, k) = mu(s, h k) + mu(h, k) - mu(s, h) along a BFS tree from
    the identity, so any cocycle is determined by its values on gens x G.
    """
    n = G.order
    S = len(gens)
    P = S * n
    Mu = np.zeros((n, n, P), dtype=np.int64)
    done = np.zeros(n, dtype=bool)
    done[G.identity] = True
    queue = deque([G.identity])
    k = np.arange(n)
    while queue:
        h = queue.popleft()
        for si, s in enumerate(gens):
            g = int(G.table[s, h])
            if done[g]:
                continue
            row = Mu[h].copy()
            row[k, si * n + G.table[h, k]] += 1
            row[:, si * n + h] -= 1
            Mu[g] = row
            done[g] = True
            queue.append(g)
    if not done.all():
        raise GroupError("generators do not generate the group")
    return Mu


def h2_structure(G: FiniteGroup, m: int, generators: list[int] | None = None) -> H2Report:
    """Invariant factors of H^2(G, C_m) = Z^2 / B^2 (trivial action).

    Z^2 is the kernel of the cocycle constraints on the values mu(s, x) for a
    generating set s; B^2 is the image of the coboundary map in the same
    coordinates.  Both are diagonalized over Z/m.
    """
    gens = list(generators) if generators is not None else G.generators
    n = G.order
    S = len(gens)
    P = S * n
    Mu = _cocycle_parametrization(G, gens)
    # constraints: mu(s h, k) - mu(h, k) - mu(s, h k) + mu(s, h) = 0 for s in gens
    blocks = []
    hh, kk = np.meshgrid(np.arange(n), np.arange(n), indexing="ij")
    hh, kk = hh.ravel(), kk.ravel()
    for si, s in enumerate(gens):
        block = Mu[G.table[s, hh], kk] - Mu[hh, kk]
        block[np.arange(len(hh)), si * n + G.table[hh, kk]] -= 1
        block[np.arange(len(hh)), si * n + hh] += 1
        blocks.append(block % m)
    # normalization mu(s, 1) = 0 is implied but kept explicit
    norm = np.zeros((S, P), dtype=np.int64)
    for si in range(S):
        norm[si, si * n + G.identity] = 1
    A = np.unique(np.concatenate(blocks + [norm]) % m, axis=0)
    A = A[A.any(axis=1)]
    _, V, Vinv, rank, diag = smith_mod(A, m)
    orders = [d for d in diag] + [m] * (P - rank)
    # kernel generators in y = Vinv x coordinates: (m/d_i) e_i for pivots, e_i for free columns
    keep = [i for i, o in enumerate(orders) if o > 1]
    # coboundaries of the unit cochains delta_y, y != 1, as parameter vectors
    B = np.zeros((P, n), dtype=np.int64)
    for si, s in enumerate(gens):
        x = np.arange(n)
        base = si * n
        np.add.at(B, (base + x, x), 1)
        np.add.at(B, (base + x, G.table[s, x]), -1)
        B[base + x, s] += 1
    B = np.delete(B, G.identity, axis=1) % m
    Y = (Vinv @ B) % m
    rel_rows = []
    for i in keep:
        o = orders[i]
        step = m // o
        if (Y[i] % step).any():
            raise ArithmeticError("coboundary outside the cocycle lattice")
        rel_rows.append((Y[i] // step) % o)
    k = len(keep)
    if k == 0:
        return H2Report(G.name, m, [], {"parameters": P, "constraint_rank": rank})
    rels = np.array(rel_rows, dtype=np.int64).reshape(k, -1)
    presentation = np.concatenate([rels, np.diag([orders[i] for i in keep]) % m], axis=1)
    _, _, _, r2, diag2 = smith_mod(presentation, m)
    cyclic = list(diag2) + [m] * (k - r2)
    factors = invariant_factors([d for d in cyclic if d > 1])
    return H2Report(G.name, m, factors, {"parameters": P, "constraint_rank": rank,
                                         "cocycle_group": invariant_factors([o for o in orders if o > 1])})


def invariant_factors(orders: list[int]) -> list[int]:
    """Invariant factors d_1 | d_2 | ... of a direct sum of cyclic groups of the given orders."""
    prime_powers: dict[int, list[int]] = {}
    for o in orders:
        for p, e in _factorize(o).items():
            prime_powers.setdefault(p, []).append(p ** e)
    if not prime_powers:
        return []
    length = max(len(v) for v in prime_powers.values())
    out = [1] * length
    for p, powers in prime_powers.items():
        powers.sort(reverse=True)
        for i, q in enumerate(powers):
            out[length - 1 - i] *= q
    return out


def _factorize(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


# --- abelian Schur multiplier ------------------------------------------------------------------


def schur_multiplier_abelian(G: FiniteGroup, p: int) -> list[int]:
    """M(C_p^n) as bicharacters on C_p^n modulo the symmetric ones; returns [p] * dimension."""
    if _factorize(p) != {p: 1}:
        raise ValueError(f"{p} is not prime")
    if not G.is_abelian() or any(G.element_order(g) not in (1, p) for g in range(G.order)):
        raise GroupError(f"{G.name} is not an elementary abelian {p}-group")
    rank = 0
    size = 1
    while size < G.order:
        size *= p
        rank += 1
    if size != G.order:
        raise GroupError("order is not a power of p")
    n = rank
    # bicharacters <-> n x n matrices over F_p; symmetric ones spanned by E_ij + E_ji and E_ii
    sym = []
    for i in range(n):
        for j in range(i, n):
            v = np.zeros(n * n, dtype=np.int64)
            v[i * n + j] += 1
            if i != j:
                v[j * n + i] += 1
            sym.append(v)
    if n == 0:
        return []
    _, _, _, r, _ = smith_mod(np.array(sym), p)
    return [p] * (n * n - r)


# --- chi --------------------------------------------------------------------------------------------


def chi_from_cocycle(mu: ZmCocycle) -> ChiTable:
    """chi(g, k) = mu(g k g^-1, g) - mu(g, k), checked to be a 1-cocycle for the conjugation action."""
    G, t, m = mu.group, mu.table, mu.m
    n = G.order
    g = np.arange(n)[:, None]
    k = np.arange(n)[None, :]
    conj = G.table[G.table[g, k], G.inverse[g]]
    chi = (t[conj, np.broadcast_to(g, conj.shape)] - t) % m
    table = ChiTable(G, m, chi)
    bad = chi_violation(table)
    if bad is not None:
        raise ArithmeticError(f"chi fails the 1-cocycle identity at {bad}")
    return table


def chi_violation(chi: ChiTable):
    """First (g, h, k) with chi(gh, k) != chi(g, h k h^-1) + chi(h, k), or None."""
    G, c, m = chi.group, chi.table, chi.m
    n = G.order
    k = np.arange(n)
    for h in range(n):
        hk = G.table[G.table[h, k], G.inverse[h]]
        lhs = c[G.table[:, h]]              # chi(gh, k) for all g, k
        rhs = (c[:, hk] + c[h][None, :]) % m
        diff = np.argwhere((lhs - rhs) % m != 0)
        if len(diff):
            g, kk = diff[0]
            return int(g), h, int(kk)
    return None
