"""Exact coefficient arithmetic.

Three kinds of scalars are used throughout the package:

* rationals, represented by :class:`fractions.Fraction` (exported as ``Rational``);
* elements of a cyclotomic field Q(zeta_m), :class:`Cyclotomic`, stored as
  coefficient vectors reduced modulo the m-th cyclotomic polynomial;
* elements of the group ring k[C_m] = k[z]/(z^m - 1), :class:`GroupRingScalar`.

The group ring is not a field. Linear algebra over it is done one idempotent
component at a time: evaluating at every m-th root of unity gives a ring
isomorphism onto a product of m copies of the base field (``idempotent_split``),
whose inverse is ``recombine``.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd

Rational = Fraction


class NonUnit(ArithmeticError):
    """Raised when inverting an element that is not a unit."""


class InvalidRoot(ValueError):
    """Raised when specializing z at a value that is not an m-th root of unity."""


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"cannot interpret {x!r} as a rational")


# --- dense polynomial helpers over Q (lists, low degree first) ---------------


def _trim(p: list) -> list:
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_mul(a: list, b: list) -> list:
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def _poly_divmod(a: list, b: list) -> tuple[list, list]:
    a = _trim(list(a))
    b = _trim(list(b))
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    lead = b[-1]
    while len(a) >= len(b) and a:
        c = a[-1] / lead
        shift = len(a) - len(b)
        q[shift] = c
        for i, y in enumerate(b):
            a[i + shift] -= c * y
        _trim(a)
    return q, a


@lru_cache(maxsize=None)
def cyclotomic_polynomial(m: int) -> tuple[int, ...]:
    """Integer coefficients of the m-th cyclotomic polynomial, low degree first."""
    if m < 1:
        raise ValueError("m must be positive")
    num = [Fraction(-1)] + [Fraction(0)] * (m - 1) + [Fraction(1)]
    for d in range(1, m):
        if m % d == 0:
            num, rem = _poly_divmod(num, [Fraction(c) for c in cyclotomic_polynomial(d)])
            assert not rem
    return tuple(int(c) for c in num)


@lru_cache(maxsize=None)
def euler_phi(m: int) -> int:
    return len(cyclotomic_polynomial(m)) - 1


class Cyclotomic:
    """An element of Q(zeta_m), as a rational vector over 1, zeta, ..., zeta^(phi(m)-1)."""

    __slots__ = ("m", "coeffs", "_hash")

    def __init__(self, m: int, coeffs=()):
        phi = euler_phi(m)
        cs = [_frac(c) for c in coeffs]
        if len(cs) > phi:
            cs = _reduce(m, cs)
        cs = cs + [Fraction(0)] * (phi - len(cs))
        self.m = m
        self.coeffs = tuple(cs)
        self._hash = None

    @classmethod
    def zeta(cls, m: int, k: int = 1) -> "Cyclotomic":
        """The root of unity zeta_m^k."""
        k %= m
        return cls(m, [0] * k + [1])

    @classmethod
    def from_rational(cls, m: int, x) -> "Cyclotomic":
        return cls(m, [x])

    def _coerce(self, other) -> "Cyclotomic | None":
        if isinstance(other, Cyclotomic):
            if other.m != self.m:
                raise ValueError(f"mixing Q(zeta_{self.m}) and Q(zeta_{other.m})")
            return other
        if isinstance(other, (int, Fraction)):
            return Cyclotomic(self.m, [other])
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Cyclotomic(self.m, [a + b for a, b in zip(self.coeffs, o.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic(self.m, [-a for a in self.coeffs])

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Cyclotomic(self.m, [a - b for a, b in zip(self.coeffs, o.coeffs)])

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Cyclotomic(self.m, [a * other for a in self.coeffs])
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Cyclotomic(self.m, _reduce(self.m, _poly_mul(list(self.coeffs), list(o.coeffs))))

    __rmul__ = __mul__

    def inverse(self) -> "Cyclotomic":
        if not self:
            raise NonUnit("zero has no inverse in a cyclotomic field")
        # extended Euclid: s*a + t*phi = 1
        phi = [Fraction(c) for c in cyclotomic_polynomial(self.m)]
        r0, r1 = phi, _trim(list(self.coeffs))
        s0, s1 = [], [Fraction(1)]
        while len(r1) > 1:
            q, r = _poly_divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _poly_sub(s0, _poly_mul(q, s1))
        c = r1[0]
        return Cyclotomic(self.m, _reduce(self.m, [x / c for x in s1]))

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = Cyclotomic(self.m, [1])
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __bool__(self):
        return any(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, Cyclotomic):
            return self.m == other.m and self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs[0] == other and not any(self.coeffs[1:])
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            if not any(self.coeffs[1:]):
                self._hash = hash(self.coeffs[0])
            else:
                self._hash = hash((self.m, self.coeffs))
        return self._hash

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def to_rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.coeffs[0]

    def __repr__(self):
        terms = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if k == 0:
                terms.append(str(c))
            else:
                mon = f"zeta{self.m}" + (f"^{k}" if k > 1 else "")
                terms.append(mon if c == 1 else f"{c}*{mon}")
        return " + ".join(terms) if terms else "0"


def _poly_sub(a: list, b: list) -> list:
    n = max(len(a), len(b))
    out = [Fraction(0)] * n
    for i, x in enumerate(a):
        out[i] += x
    for i, x in enumerate(b):
        out[i] -= x
    return _trim(out)


def _reduce(m: int, coeffs: list) -> list:
    phi = cyclotomic_polynomial(m)
    d = len(phi) - 1
    cs = list(coeffs)
    for k in range(len(cs) - 1, d - 1, -1):
        c = cs[k]
        if c == 0:
            continue
        shift = k - d
        for i, p in enumerate(phi):
            cs[i + shift] -= c * p
    return cs[:d]


# --- group ring k[z]/(z^m - 1) -----------------------------------------------


class GroupRingScalar:
    """An element sum_i a_i z^i of k[z]/(z^m - 1) over Q or a cyclotomic field."""

    __slots__ = ("m", "coeffs", "_hash")

    def __init__(self, m: int, coeffs=()):
        cs = list(coeffs)
        if len(cs) > m:
            folded = [0] * m
            for i, c in enumerate(cs):
                folded[i % m] = folded[i % m] + c
            cs = folded
        cs = cs + [0] * (m - len(cs))
        self.m = m
        self.coeffs = tuple(c if isinstance(c, Cyclotomic) else _frac(c) for c in cs)
        self._hash = None

    @classmethod
    def z(cls, m: int, k: int = 1) -> "GroupRingScalar":
        """The group element z^k."""
        cs = [0] * m
        cs[k % m] = 1
        return cls(m, cs)

    @classmethod
    def constant(cls, m: int, a) -> "GroupRingScalar":
        return cls(m, [a])

    def _coerce(self, other):
        if isinstance(other, GroupRingScalar):
            if other.m != self.m:
                raise ValueError(f"mixing k[C_{self.m}] and k[C_{other.m}]")
            return other
        if isinstance(other, (int, Fraction, Cyclotomic)):
            return GroupRingScalar(self.m, [other])
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GroupRingScalar(self.m, [a + b for a, b in zip(self.coeffs, o.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return GroupRingScalar(self.m, [-a for a in self.coeffs])

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GroupRingScalar(self.m, [a - b for a, b in zip(self.coeffs, o.coeffs)])

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, Cyclotomic)):
            return GroupRingScalar(self.m, [a * other for a in self.coeffs])
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        m = self.m
        out = [0] * m
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(o.coeffs):
                if b:
                    out[(i + j) % m] = out[(i + j) % m] + a * b
        return GroupRingScalar(m, out)

    __rmul__ = __mul__

    def inverse(self) -> "GroupRingScalar":
        parts = idempotent_split(self)
        if any(not p for p in parts):
            raise NonUnit(f"{self} is not a unit of k[C_{self.m}]")
        return recombine([1 / p if isinstance(p, Fraction) else p.inverse() for p in parts], self.m)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return GroupRingScalar(self.m, [a / other for a in self.coeffs])
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = GroupRingScalar(self.m, [1])
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __bool__(self):
        return any(bool(c) for c in self.coeffs)

    def __eq__(self, other):
        if isinstance(other, GroupRingScalar):
            return self.m == other.m and self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction, Cyclotomic)):
            return self.coeffs[0] == other and not any(bool(c) for c in self.coeffs[1:])
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            if not any(bool(c) for c in self.coeffs[1:]):
                self._hash = hash(self.coeffs[0])
            else:
                self._hash = hash((self.m, self.coeffs))
        return self._hash

    def __repr__(self):
        terms = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            mon = "" if k == 0 else ("z" if k == 1 else f"z^{k}")
            if not mon:
                terms.append(str(c))
            elif c == 1:
                terms.append(mon)
            elif c == -1:
                terms.append("-" + mon)
            else:
                terms.append(f"({c})*{mon}")
        return " + ".join(terms) if terms else "0"


def root_of_unity(m: int, k: int = 1):
    """zeta_m^k as a rational when m <= 2, otherwise as an element of Q(zeta_m)."""
    k %= m
    if m == 1:
        return Fraction(1)
    if m == 2:
        return Fraction(-1) ** k
    return Cyclotomic.zeta(m, k)


def roots_of_unity(m: int) -> list:
    """All m-th roots of unity, ordered zeta^0, zeta^1, ..., zeta^(m-1)."""
    return [root_of_unity(m, k) for k in range(m)]


def _power(q, k: int):
    if isinstance(q, Cyclotomic):
        return q ** k
    return _frac(q) ** k


def specialize(x: GroupRingScalar, q):
    """Evaluate x at z = q; q must satisfy q^m = 1."""
    if _power(q, x.m) != 1:
        raise InvalidRoot(f"{q!r} is not an {x.m}-th root of unity")
    if isinstance(q, int):
        q = Fraction(q)
    out = q * 0
    acc = q ** 0
    for c in x.coeffs:
        if c:
            out = out + c * acc
        acc = acc * q
    return out


def idempotent_split(x: GroupRingScalar) -> list:
    """Values of x at zeta^0, ..., zeta^(m-1); a ring isomorphism k[C_m] -> k^m."""
    return [specialize(x, q) for q in roots_of_unity(x.m)]


def recombine(values, m: int) -> GroupRingScalar:
    """Inverse of ``idempotent_split``."""
    values = list(values)
    if len(values) != m:
        raise ValueError(f"expected {m} components, got {len(values)}")
    coeffs = []
    for i in range(m):
        acc = Fraction(0)
        for k, v in enumerate(values):
            acc = acc + v * root_of_unity(m, -i * k)
        acc = acc * Fraction(1, m)
        if isinstance(acc, Cyclotomic) and acc.is_rational():
            acc = acc.to_rational()
        coeffs.append(acc)
    return GroupRingScalar(m, coeffs)


def ring_arithmetic(a, b, op: str):
    """Single entry point for add / mul / neg / inv on any supported scalar."""
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "neg":
        return -a
    if op == "inv":
        if isinstance(a, (GroupRingScalar, Cyclotomic)):
            return a.inverse()
        a = _frac(a)
        if a == 0:
            raise NonUnit("zero has no inverse")
        return 1 / a
    raise ValueError(f"unknown operation {op!r}")


# --- coefficient rings as objects ---------------------------------------------


class Ring:
    """Descriptor of a coefficient ring: Q, Q(zeta_m) or k[C_m] over Q."""

    def __init__(self, kind: str, m: int = 1):
        if kind not in ("QQ", "cyclotomic", "group_ring"):
            raise ValueError(kind)
        self.kind = kind
        self.m = m

    @property
    def tag(self) -> str:
        if self.kind == "QQ":
            return "QQ"
        if self.kind == "cyclotomic":
            return f"QQ(zeta_{self.m})"
        return f"QQ[C_{self.m}]"

    @property
    def is_field(self) -> bool:
        return self.kind != "group_ring"

    def __eq__(self, other):
        return isinstance(other, Ring) and (self.kind, self.m) == (other.kind, other.m)

    def __hash__(self):
        return hash((self.kind, self.m))

    def __repr__(self):
        return self.tag

    def zero(self):
        return self(0)

    def one(self):
        return self(1)

    def __call__(self, x):
        """Coerce a rational (or a native element) into this ring."""
        if self.kind == "QQ":
            if isinstance(x, Cyclotomic):
                return x.to_rational()
            return _frac(x)
        if self.kind == "cyclotomic":
            if isinstance(x, Cyclotomic):
                return x
            return Cyclotomic(self.m, [x])
        if isinstance(x, GroupRingScalar):
            return x
        return GroupRingScalar(self.m, [x])

    def gen(self):
        """z for k[C_m], zeta_m for a cyclotomic field."""
        if self.kind == "group_ring":
            return GroupRingScalar.z(self.m)
        if self.kind == "cyclotomic":
            return Cyclotomic.zeta(self.m)
        raise ValueError("QQ has no distinguished generator")

    def roots(self) -> list:
        """Component evaluation points (only for the group ring)."""
        if self.kind != "group_ring":
            raise ValueError(f"{self.tag} has no idempotent components")
        return roots_of_unity(self.m)

    def component_field(self) -> "Ring":
        if self.kind != "group_ring":
            return self
        return QQ if self.m <= 2 else Ring("cyclotomic", self.m)

    def to_json(self) -> str:
        return self.tag

    @staticmethod
    def from_tag(tag: str) -> "Ring":
        if tag == "QQ":
            return QQ
        if tag.startswith("QQ(zeta_"):
            return Ring("cyclotomic", int(tag[len("QQ(zeta_"):-1]))
        if tag.startswith("QQ[C_"):
            return Ring("group_ring", int(tag[len("QQ[C_"):-1]))
        raise ValueError(f"unknown ring tag {tag!r}")


QQ = Ring("QQ")


def group_ring(m: int) -> Ring:
    return Ring("group_ring", m)


def cyclotomic_field(m: int) -> Ring:
    return Ring("cyclotomic", m)


def specialize_any(x, q):
    """Specialize group-ring scalars; leave field scalars unchanged."""
    if isinstance(x, GroupRingScalar):
        return specialize(x, q)
    return x


def scalar_to_json(x):
    """Canonical JSON form: rationals as strings, others as coefficient lists."""
    if isinstance(x, int):
        return str(x)
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, Cyclotomic):
        return {"zeta": x.m, "coeffs": [str(c) for c in x.coeffs]}
    if isinstance(x, GroupRingScalar):
        return {"z": x.m, "coeffs": [scalar_to_json(c) for c in x.coeffs]}
    raise TypeError(type(x))


def scalar_from_json(obj):
    if isinstance(obj, str):
        return Fraction(obj)
    if isinstance(obj, (int,)):
        return Fraction(obj)
    if "zeta" in obj:
        return Cyclotomic(obj["zeta"], [Fraction(c) for c in obj["coeffs"]])
    return GroupRingScalar(obj["z"], [scalar_from_json(c) for c in obj["coeffs"]])


def lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)
