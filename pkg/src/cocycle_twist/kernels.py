"""Hot integer kernels, each with a numba and a pure-numpy implementation.

The numba versions are used when numba imports and the environment variable
``COCYCLE_TWIST_DISABLE_JIT`` is unset (or ``0``).  Both implementations run the
same algorithm with the same pivot rules, so results agree exactly.
"""

from __future__ import annotations

import os

import numpy as np

DISABLE_JIT = os.environ.get("COCYCLE_TWIST_DISABLE_JIT", "0") not in ("", "0")

try:
    if DISABLE_JIT:
        raise ImportError
    from numba import njit
    HAS_NUMBA = True
except ImportError:  # pragma: no cover - exercised via the env flag
    HAS_NUMBA = False

    def njit(*args, **kwargs):
        if args and callable(args[0]):
            return args[0]
        return lambda f: f


BACKEND = "numba" if HAS_NUMBA else "numpy"


# --- cocycle identity over all triples ------------------------------------------


@njit(cache=True)
def _cocycle_violation_numba(table, mu, m):
    n = table.shape[0]
    for g in range(n):
        for h in range(n):
            gh = table[g, h]
            a = mu[g, h]
            for k in range(n):
                lhs = (a + mu[gh, k]) % m
                rhs = (mu[g, table[h, k]] + mu[h, k]) % m
                if lhs != rhs:
                    return g, h, k
    return -1, -1, -1


def _cocycle_violation_numpy(table, mu, m):
    n = table.shape[0]
    for g in range(n):
        lhs = (mu[g, :, None] + mu[table[g], :]) % m
        rhs = (mu[g][table] + mu) % m
        bad = np.argwhere(lhs != rhs)
        if len(bad):
            h, k = bad[0]
            return g, int(h), int(k)
    return -1, -1, -1


def cocycle_violation(table: np.ndarray, mu: np.ndarray, m: int):
    """First triple (g, h, k) breaking the additive cocycle identity mod m, or None."""
    table = np.ascontiguousarray(table, dtype=np.int64)
    mu = np.ascontiguousarray(mu, dtype=np.int64)
    fn = _cocycle_violation_numba if HAS_NUMBA else _cocycle_violation_numpy
    g, h, k = fn(table, mu, m)
    return None if g < 0 else (int(g), int(h), int(k))


# --- Smith-style diagonalization over Z/m ----------------------------------------


@njit(cache=True)
def _egcd(a, b):
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b != 0:
        q = a // b
        a, b = b, a - q * b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


@njit(cache=True)
def _gcd(a, b):
    while b != 0:
        a, b = b, a % b
    return a


@njit(cache=True)
def _unit_for(p, m):
    # u with p*u = gcd(p, m) (mod m) and gcd(u, m) = 1
    g = _gcd(p, m)
    mp = m // g
    if mp == 1:
        return 1
    pp = (p // g) % mp
    _, s, _ = _egcd(pp, mp)
    u = s % mp
    while _gcd(u, m) != 1:
        u += mp
    return u


@njit(cache=True)
def _smith_mod_numba(A, m, npiv, V, Vinv):
    R, C = A.shape
    r = 0
    diag = np.zeros(min(R, npiv), dtype=np.int64)
    while r < R and r < npiv:
        # first column (>= r) with a nonzero entry in rows >= r
        pc = -1
        pr = -1
        best = m + 1
        for j in range(r, npiv):
            for i in range(r, R):
                a = A[i, j]
                if a != 0:
                    g = _gcd(a, m)
                    if g < best:
                        best = g
                        pr = i
                        if g == 1:
                            break
            if pr >= 0:
                pc = j
                break
        if pc < 0:
            break
        if pc != r:
            for i in range(R):
                t = A[i, r]
                A[i, r] = A[i, pc]
                A[i, pc] = t
            for i in range(npiv):
                t = V[i, r]
                V[i, r] = V[i, pc]
                V[i, pc] = t
                t = Vinv[r, i]
                Vinv[r, i] = Vinv[pc, i]
                Vinv[pc, i] = t
        if pr != r:
            for j in range(C):
                t = A[r, j]
                A[r, j] = A[pr, j]
                A[pr, j] = t
        dirty = True
        while dirty:
            dirty = False
            # clear column r below the pivot
            for i in range(r + 1, R):
                b = A[i, r]
                if b == 0:
                    continue
                p = A[r, r]
                if b % p == 0:
                    q = b // p
                    for j in range(r, C):
                        A[i, j] = (A[i, j] - q * A[r, j]) % m
                else:
                    g, s, t = _egcd(p, b)
                    pa = p // g
                    pb = b // g
                    for j in range(r, C):
                        x = A[r, j]
                        y = A[i, j]
                        A[r, j] = (s * x + t * y) % m
                        A[i, j] = (pa * y - pb * x) % m
            # clear row r right of the pivot (column operations)
            for j in range(r + 1, npiv):
                b = A[r, j]
                if b == 0:
                    continue
                p = A[r, r]
                if b % p == 0:
                    q = b // p
                    for i in range(R):
                        A[i, j] = (A[i, j] - q * A[i, r]) % m
                    for i in range(npiv):
                        V[i, j] = (V[i, j] - q * V[i, r]) % m
                        Vinv[r, i] = (Vinv[r, i] + q * Vinv[j, i]) % m
                else:
                    g, s, t = _egcd(p, b)
                    pa = p // g
                    pb = b // g
                    for i in range(R):
                        x = A[i, r]
                        y = A[i, j]
                        A[i, r] = (s * x + t * y) % m
                        A[i, j] = (pa * y - pb * x) % m
                    for i in range(npiv):
                        x = V[i, r]
                        y = V[i, j]
                        V[i, r] = (s * x + t * y) % m
                        V[i, j] = (pa * y - pb * x) % m
                        x = Vinv[r, i]
                        y = Vinv[j, i]
                        Vinv[r, i] = (pa * x + pb * y) % m
                        Vinv[j, i] = (-t * x + s * y) % m
                    dirty = True
        u = _unit_for(A[r, r], m)
        if u != 1:
            for j in range(r, C):
                A[r, j] = (A[r, j] * u) % m
        diag[r] = A[r, r]
        r += 1
    return r, diag[:r]


def _smith_mod_numpy(A, m, npiv, V, Vinv):
    R, C = A.shape
    r = 0
    diag = []
    while r < R and r < npiv:
        pr = pc = -1
        for j in range(r, npiv):
            col = A[r:, j]
            nz = np.flatnonzero(col)
            if len(nz):
                g = np.gcd(col[nz], m)
                pr = r + int(nz[int(np.argmin(g))])
                pc = j
                break
        if pc < 0:
            break
        if pc != r:
            A[:, [r, pc]] = A[:, [pc, r]]
            V[:, [r, pc]] = V[:, [pc, r]]
            Vinv[[r, pc], :] = Vinv[[pc, r], :]
        if pr != r:
            A[[r, pr], :] = A[[pr, r], :]
        dirty = True
        while dirty:
            dirty = False
            for i in (r + 1 + np.flatnonzero(A[r + 1:, r])).tolist():
                b = int(A[i, r])
                p = int(A[r, r])
                if b % p == 0:
                    A[i, r:] = (A[i, r:] - (b // p) * A[r, r:]) % m
                else:
                    g, s, t = _egcd_py(p, b)
                    x = A[r, r:].copy()
                    y = A[i, r:].copy()
                    A[r, r:] = (s * x + t * y) % m
                    A[i, r:] = ((p // g) * y - (b // g) * x) % m
            for j in (r + 1 + np.flatnonzero(A[r, r + 1:npiv])).tolist():
                b = int(A[r, j])
                p = int(A[r, r])
                if b % p == 0:
                    q = b // p
                    A[:, j] = (A[:, j] - q * A[:, r]) % m
                    V[:, j] = (V[:, j] - q * V[:, r]) % m
                    Vinv[r, :] = (Vinv[r, :] + q * Vinv[j, :]) % m
                else:
                    g, s, t = _egcd_py(p, b)
                    pa, pb = p // g, b // g
                    x = A[:, r].copy()
                    y = A[:, j].copy()
                    A[:, r] = (s * x + t * y) % m
                    A[:, j] = (pa * y - pb * x) % m
                    x = V[:, r].copy()
                    y = V[:, j].copy()
                    V[:, r] = (s * x + t * y) % m
                    V[:, j] = (pa * y - pb * x) % m
                    x = Vinv[r, :].copy()
                    y = Vinv[j, :].copy()
                    Vinv[r, :] = (pa * x + pb * y) % m
                    Vinv[j, :] = (-t * x + s * y) % m
                    dirty = True
        u = _unit_for_py(int(A[r, r]), m)
        if u != 1:
            A[r, r:] = (A[r, r:] * u) % m
        diag.append(int(A[r, r]))
        r += 1
    return r, np.array(diag, dtype=np.int64)


def _egcd_py(a, b):
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b != 0:
        q = a // b
        a, b = b, a - q * b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def _unit_for_py(p, m):
    from math import gcd

    g = gcd(p, m)
    mp = m // g
    if mp == 1:
        return 1
    _, s, _ = _egcd_py((p // g) % mp, mp)
    u = s % mp
    while gcd(u, m) != 1:
        u += mp
    return u


def smith_mod(A: np.ndarray, m: int, npiv: int | None = None, backend: str | None = None):
    """Diagonalize A over Z/m by unimodular row and column operations.

    Only the first ``npiv`` columns take part in pivoting and column operations;
    any further columns are carried along by the row operations (right-hand sides).
    Returns ``(D, V, Vinv, rank, diag)`` where D = U A V with D[:rank, :rank]
    diagonal, each diagonal entry a divisor of m (normalized by a unit), and
    V @ Vinv = identity mod m.
    """
    if m < 2:
        raise ValueError("modulus must be at least 2")
    A = np.array(A, dtype=np.int64) % m
    if A.ndim != 2:
        raise ValueError("expected a matrix")
    npiv = A.shape[1] if npiv is None else npiv
    V = np.eye(npiv, dtype=np.int64)
    Vinv = np.eye(npiv, dtype=np.int64)
    use = backend or BACKEND
    if use == "numba" and HAS_NUMBA:
        rank, diag = _smith_mod_numba(A, m, npiv, V, Vinv)
    else:
        rank, diag = _smith_mod_numpy(A, m, npiv, V, Vinv)
    return A, V, Vinv, int(rank), [int(d) for d in diag]


# --- batched Clifford products ----------------------------------------------------


@njit(cache=True)
def _clifford_left_mul_numba(x, Y, sign):
    N, K = Y.shape
    out = np.zeros((N, K), dtype=np.int64)
    for a in range(K):
        xa = x[a]
        if xa == 0:
            continue
        for h in range(N):
            for b in range(K):
                yb = Y[h, b]
                if yb != 0:
                    out[h, a ^ b] += xa * sign[a, b] * yb
    return out


def _clifford_left_mul_numpy(x, Y, sign):
    N, K = Y.shape
    out = np.zeros((N, K), dtype=np.int64)
    idx = np.arange(K)
    for a in np.flatnonzero(x):
        out[:, a ^ idx] += x[a] * sign[a][None, :] * Y
    return out


def clifford_left_mul(x: np.ndarray, Y: np.ndarray, sign: np.ndarray, backend: str | None = None):
    """Rows of ``x * Y[h]`` in the Clifford algebra with blade-sign table ``sign``."""
    x = np.ascontiguousarray(x, dtype=np.int64)
    Y = np.ascontiguousarray(Y, dtype=np.int64)
    use = backend or BACKEND
    if use == "numba" and HAS_NUMBA:
        return _clifford_left_mul_numba(x, Y, sign)
    return _clifford_left_mul_numpy(x, Y, sign)


# --- monomial braid action on tensor words -----------------------------------------


@njit(cache=True)
def _braid_words_numba(words, coefs, targets, tcoefs, r, seq):
    N, d = words.shape
    for w in range(N):
        for s in range(seq.shape[0]):
            i = seq[s]
            pair = words[w, i] * r + words[w, i + 1]
            t = targets[pair]
            coefs[w] *= tcoefs[pair]
            words[w, i] = t // r
            words[w, i + 1] = t % r
    return words, coefs


def _braid_words_numpy(words, coefs, targets, tcoefs, r, seq):
    for i in seq:
        pair = words[:, i] * r + words[:, i + 1]
        t = targets[pair]
        coefs *= tcoefs[pair]
        words[:, i] = t // r
        words[:, i + 1] = t % r
    return words, coefs


def braid_words(words: np.ndarray, targets: np.ndarray, tcoefs: np.ndarray, r: int, seq, backend: str | None = None):
    """Apply adjacent monomial braidings at 0-based positions ``seq`` (in order) to all words.

    ``targets[a*r+b]`` is the image pair index of letters (a, b) and ``tcoefs`` its
    integer coefficient.  Returns the image words and the accumulated coefficients.
    """
    words = np.array(words, dtype=np.int64)
    coefs = np.ones(words.shape[0], dtype=np.int64)
    seq = np.asarray(seq, dtype=np.int64)
    targets = np.ascontiguousarray(targets, dtype=np.int64)
    tcoefs = np.ascontiguousarray(tcoefs, dtype=np.int64)
    use = backend or BACKEND
    if use == "numba" and HAS_NUMBA:
        return _braid_words_numba(words, coefs, targets, tcoefs, r, seq)
    return _braid_words_numpy(words, coefs, targets, tcoefs, r, seq)
