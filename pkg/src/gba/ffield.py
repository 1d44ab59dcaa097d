"""
Exact arithmetic in GF(p^a).

Elements are coded as integers 0 <= v < q whose base-p digits are the
polynomial-basis coefficients, lowest degree first.  The ``FieldSpec`` carries
log/antilog tables (and full addition tables for small q), so every operation
works elementwise on plain ints or on numpy integer arrays alike.
``FieldElem`` is the value-like scalar wrapper used at API boundaries.
"""

from __future__ import annotations

import itertools
from functools import lru_cache
from math import gcd

import numpy as np

from .errors import (
    CapExceededError,
    FieldDivisionByZero,
    NonPrimeError,
    SpecMismatchError,
    WrongCharacteristicError,
)

DEFAULT_FIELD_CAP = 2**16
ADD_TABLE_CAP = 1024


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def prime_power(q: int) -> tuple[int, int] | None:
    """Return (p, a) with q = p**a, or None."""
    if q < 2:
        return None
    p = 2
    while q % p:
        p += 1
    a = 0
    while q % p == 0:
        q //= p
        a += 1
    return (p, a) if q == 1 else None


def prime_factors(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


# -- polynomials over GF(p), coefficient lists low degree first ---------------

def _poly_rem(f, g, p):
    f = list(f)
    dg = len(g) - 1
    inv_lead = pow(g[-1], p - 2, p) if p > 2 else 1
    while len(f) - 1 >= dg and any(f):
        if f[-1] == 0:
            f.pop()
            continue
        c = f[-1] * inv_lead % p
        shift = len(f) - 1 - dg
        for i, gi in enumerate(g):
            f[shift + i] = (f[shift + i] - c * gi) % p
        f.pop()
    while f and f[-1] == 0:
        f.pop()
    return f


def is_irreducible(f, p) -> bool:
    """Trial division by every monic polynomial of degree 1..deg(f)//2."""
    deg = len(f) - 1
    if deg < 1:
        return False
    if deg == 1:
        return True
    for d in range(1, deg // 2 + 1):
        for low in itertools.product(range(p), repeat=d):
            if not _poly_rem(f, list(low) + [1], p):
                return False
    return True


def smallest_irreducible(p: int, a: int) -> tuple[int, ...]:
    """Lexicographically smallest monic irreducible of degree a.

    Candidates are ordered by (c0, c1, ..., c_{a-1}), low degree first.
    """
    for low in itertools.product(range(p), repeat=a):
        f = list(low) + [1]
        if is_irreducible(f, p):
            return tuple(f)
    raise AssertionError("no irreducible polynomial found")  # pragma: no cover


class FieldSpec:
    """GF(p^a) with defining polynomial ``irred`` (monic, low degree first)."""

    def __init__(self, p: int, a: int, irred=None, cap: int = DEFAULT_FIELD_CAP):
        if not is_prime(p):
            raise NonPrimeError(f"{p} is not prime")
        if a < 1:
            raise ValueError("exponent must be positive")
        q = p**a
        if q > cap:
            raise CapExceededError(f"q = {q} exceeds field cap {cap}")
        if irred is None:
            irred = smallest_irreducible(p, a)
        irred = tuple(int(c) % p for c in irred)
        if len(irred) != a + 1 or irred[-1] != 1 or not is_irreducible(list(irred), p):
            raise ValueError(f"{irred} is not a monic irreducible of degree {a} over GF({p})")
        self.p, self.a, self.q, self.irred = p, a, q, irred
        self.powers = np.array([p**i for i in range(a)], dtype=np.int64)
        self.digits = (np.arange(q, dtype=np.int64)[:, None] // self.powers) % p
        self._build_log_tables()
        self._add_table = None
        if p != 2 and a > 1 and q <= ADD_TABLE_CAP:
            self._add_table = self._digit_add(
                np.arange(q)[:, None], np.arange(q)[None, :]).astype(np.int32)
        self._neg = self._digit_neg(np.arange(q)) if p != 2 else np.arange(q)
        self._sqrt = None

    def __repr__(self):
        return f"GF({self.q})" if self.a == 1 else f"GF({self.p}^{self.a})"

    def __reduce__(self):
        return (make_field, (self.p, self.a))

    # -- construction helpers
    def _slow_mul(self, x: int, y: int) -> int:
        p, a = self.p, self.a
        dx = [(x // p**i) % p for i in range(a)]
        dy = [(y // p**i) % p for i in range(a)]
        prod = [0] * (2 * a - 1)
        for i, u in enumerate(dx):
            if u:
                for j, v in enumerate(dy):
                    prod[i + j] = (prod[i + j] + u * v) % p
        r = _poly_rem(prod, list(self.irred), p) if a > 1 else [prod[0] % p]
        return sum(c * p**i for i, c in enumerate(r))

    def _slow_pow(self, x: int, k: int) -> int:
        r = 1
        while k:
            if k & 1:
                r = self._slow_mul(r, x)
            x = self._slow_mul(x, x)
            k >>= 1
        return r

    def _build_log_tables(self):
        q = self.q
        n = q - 1
        primes = prime_factors(n) if n > 1 else []
        gen = None
        for g in range(1, q):
            if all(self._slow_pow(g, n // r) != 1 for r in primes):
                gen = g
                break
        self.generator = gen
        exp = np.zeros(2 * n, dtype=np.int64)
        log = np.full(q, -1, dtype=np.int64)
        x = 1
        for i in range(n):
            exp[i] = x
            log[x] = i
            x = self._slow_mul(x, gen)
        exp[n:] = exp[:n]
        self.exp, self.log = exp, log

    def _from_digits(self, d):
        return (d * self.powers).sum(axis=-1)

    def _digit_add(self, x, y):
        return self._from_digits((self.digits[x] + self.digits[y]) % self.p)

    def _digit_neg(self, x):
        return self._from_digits((-self.digits[x]) % self.p)

    # -- vectorized arithmetic on int codes
    def add(self, x, y):
        if self.p == 2:
            return np.bitwise_xor(x, y)
        if self.a == 1:
            return (np.asarray(x) + y) % self.p
        if self._add_table is not None:
            return self._add_table[x, y]
        return self._digit_add(x, y)

    def neg(self, x):
        if self.p == 2:
            return x
        return self._neg[x]

    def sub(self, x, y):
        return self.add(x, self.neg(y))

    def mul(self, x, y):
        x = np.asarray(x)
        y = np.asarray(y)
        out = self.exp[(self.log[x] + self.log[y]) % (self.q - 1)]
        return np.where((x == 0) | (y == 0), 0, out)

    def inv(self, x):
        x = np.asarray(x)
        if np.any(x == 0):
            raise FieldDivisionByZero("inverse of zero")
        return self.exp[(-self.log[x]) % (self.q - 1)]

    def div(self, x, y):
        return self.mul(x, self.inv(y))

    def pow(self, x, k: int):
        x = np.asarray(x)
        if k == 0:
            return np.ones_like(x)
        if k < 0:
            x = self.inv(x)
            k = -k
        out = self.exp[(self.log[x] * k) % (self.q - 1)]
        return np.where(x == 0, 0, out)

    def from_int(self, n: int) -> int:
        """Image of the integer n under Z -> GF(p) -> GF(q)."""
        return n % self.p

    # -- scalar helpers
    @property
    def zero(self) -> "FieldElem":
        return FieldElem(self, 0)

    @property
    def one(self) -> "FieldElem":
        return FieldElem(self, 1)

    @property
    def X(self) -> "FieldElem":
        """The polynomial-basis generator (class of X)."""
        return FieldElem(self, self.p % self.q if self.a > 1 else 0)

    def elem(self, v) -> "FieldElem":
        if isinstance(v, FieldElem):
            if v.spec is not self:
                raise SpecMismatchError(f"{v!r} does not belong to {self!r}")
            return v
        if isinstance(v, (tuple, list)):
            if len(v) != self.a:
                raise ValueError("coefficient vector has wrong length")
            return FieldElem(self, sum((int(c) % self.p) * self.p**i for i, c in enumerate(v)))
        return FieldElem(self, int(v) % self.p)

    def from_code(self, code: int) -> "FieldElem":
        if not 0 <= code < self.q:
            raise ValueError(f"code {code} out of range for {self!r}")
        return FieldElem(self, int(code))

    def elements(self) -> list["FieldElem"]:
        return [FieldElem(self, v) for v in range(self.q)]

    def is_square(self, x) -> np.ndarray:
        """Nonzero squares (odd q: even discrete log; even q: every nonzero x)."""
        x = np.asarray(x)
        if self.p == 2:
            return x != 0
        return (x != 0) & (self.log[x] % 2 == 0)

    def sqrt_table(self) -> np.ndarray:
        """table[c] = one square root of c (the smaller code), -1 if none."""
        if self._sqrt is None:
            t = np.full(self.q, -1, dtype=np.int64)
            sq = self.mul(np.arange(self.q), np.arange(self.q))
            for v in range(self.q - 1, -1, -1):
                t[sq[v]] = v
            self._sqrt = t
        return self._sqrt

    def absolute_trace(self, x) -> np.ndarray:
        """Tr_{GF(q)/GF(p)}(x) = sum of x^(p^i), as a prime-field code."""
        x = np.asarray(x)
        acc = np.zeros_like(x)
        y = x
        for _ in range(self.a):
            acc = self.add(acc, y)
            y = self.pow(y, self.p)
        return acc


@lru_cache(maxsize=None)
def make_field(p: int, a: int = 1, cap: int = DEFAULT_FIELD_CAP) -> FieldSpec:
    """Deterministic GF(p^a) built on the lexicographically smallest irreducible."""
    if not is_prime(p):
        raise NonPrimeError(f"{p} is not prime")
    if a < 1:
        raise ValueError("exponent must be positive")
    if p**a > cap:
        raise CapExceededError(f"q = {p**a} exceeds field cap {cap}")
    return FieldSpec(p, a, cap=cap)


def field_of_order(q: int, cap: int = DEFAULT_FIELD_CAP) -> FieldSpec:
    pa = prime_power(q)
    if pa is None:
        raise NonPrimeError(f"{q} is not a prime power")
    return make_field(pa[0], pa[1], cap)


class FieldElem:
    """An element of a FieldSpec; supports +, -, *, /, ** and comparison."""

    __slots__ = ("spec", "value")

    def __init__(self, spec: FieldSpec, value: int):
        self.spec = spec
        self.value = int(value)

    @property
    def coeffs(self) -> tuple[int, ...]:
        return tuple(int(c) for c in self.spec.digits[self.value])

    def _coerce(self, other) -> int:
        if isinstance(other, FieldElem):
            if other.spec is not self.spec:
                raise SpecMismatchError(f"{other.spec!r} vs {self.spec!r}")
            return other.value
        if isinstance(other, (int, np.integer)):
            return self.spec.from_int(int(other))
        return NotImplemented

    def _wrap(self, v) -> "FieldElem":
        return FieldElem(self.spec, int(v))

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self._wrap(self.spec.add(self.value, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self._wrap(self.spec.sub(self.value, o))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self._wrap(self.spec.sub(o, self.value))

    def __neg__(self):
        return self._wrap(self.spec.neg(self.value))

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self._wrap(self.spec.mul(self.value, o))

    __rmul__ = __mul__

    def inverse(self) -> "FieldElem":
        return self._wrap(self.spec.inv(self.value))

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self._wrap(self.spec.div(self.value, o))

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self._wrap(self.spec.div(o, self.value))

    def __pow__(self, k: int):
        return self._wrap(self.spec.pow(self.value, int(k)))

    def __eq__(self, other):
        if isinstance(other, FieldElem):
            return self.spec is other.spec and self.value == other.value
        if isinstance(other, (int, np.integer)):
            return self.value == self.spec.from_int(int(other))
        return NotImplemented

    def __hash__(self):
        return hash((id(self.spec), self.value))

    def __lt__(self, other):
        return self.value < self._coerce(other)

    def __bool__(self):
        return self.value != 0

    def __int__(self):
        return self.value

    def __repr__(self):
        if self.spec.a == 1:
            return f"{self.value}"
        terms = []
        for i, c in reversed(list(enumerate(self.coeffs))):
            if not c:
                continue
            mono = "" if i == 0 else ("X" if i == 1 else f"X^{i}")
            coef = str(c) if (c != 1 or i == 0) else ""
            terms.append(f"{coef}{'*' if coef and mono else ''}{mono}")
        return " + ".join(terms) or "0"


def arith(op: str, x: FieldElem, y=None) -> FieldElem:
    """Dispatch one of add, mul, neg, inv, pow."""
    if op == "add":
        return x + x.spec.elem(y) if isinstance(y, FieldElem) else x + y
    if op == "mul":
        return x * y
    if op == "neg":
        return -x
    if op == "inv":
        return x.inverse()
    if op == "pow":
        return x ** int(y)
    raise ValueError(f"unknown op {op!r}")


# -- subfields and automorphisms ----------------------------------------------

def frobenius_q(x: FieldElem, q: int) -> FieldElem:
    """x -> x^q on GF(q^2)."""
    if x.spec.q != q * q:
        raise SpecMismatchError(f"{x.spec!r} is not GF({q}^2)")
    return x**q


@lru_cache(maxsize=None)
def subfield_codes(spec: FieldSpec, q: int) -> tuple[int, ...]:
    """Codes of the subfield GF(q) inside spec, as the fixed points of x -> x^q."""
    if q < 2 or (spec.q != q and not _is_power_of(spec.q, q)):
        raise SpecMismatchError(f"GF({q}) is not a subfield of {spec!r}")
    allx = np.arange(spec.q)
    fixed = allx[spec.pow(allx, q) == allx]
    return tuple(int(v) for v in fixed)


def _is_power_of(big: int, small: int) -> bool:
    while big > small and big % small == 0:
        big //= small
    return big == small


@lru_cache(maxsize=None)
def embedding(small: FieldSpec, big: FieldSpec) -> tuple[int, ...]:
    """codes[v] = image in ``big`` of the element of ``small`` with code v.

    Sends the class of X to the smallest root of small.irred in big.
    """
    if small.p != big.p or big.a % small.a:
        raise SpecMismatchError(f"{small!r} does not embed in {big!r}")
    allx = np.arange(big.q)
    val = np.zeros(big.q, dtype=np.int64)
    xp = np.ones(big.q, dtype=np.int64)
    for c in small.irred:
        val = big.add(val, big.mul(xp, c % big.p))
        xp = big.mul(xp, allx)
    root = int(np.flatnonzero(val == 0)[0])
    out = []
    for v in range(small.q):
        acc, rp = 0, 1
        for c in small.digits[v]:
            acc = int(big.add(acc, big.mul(rp, int(c))))
            rp = int(big.mul(rp, root))
        out.append(acc)
    return tuple(out)


def suzuki_theta(x: FieldElem, a: int) -> FieldElem:
    """x -> x^(2^(a+1)) on GF(2^(2a+1)); squaring it twice gives squaring."""
    if x.spec.p != 2 or x.spec.a != 2 * a + 1:
        raise WrongCharacteristicError(f"{x.spec!r} is not GF(2^{2 * a + 1})")
    return x ** (2 ** (a + 1))


def power_residues(spec: FieldSpec, n: int) -> set[FieldElem]:
    allx = np.arange(1, spec.q)
    return {FieldElem(spec, v) for v in np.unique(spec.pow(allx, n))}


def residue_count(spec: FieldSpec, n: int) -> int:
    return (spec.q - 1) // gcd(n, spec.q - 1)


def solve_quadratic(spec: FieldSpec, b, c) -> set[FieldElem]:
    """All roots in spec of y^2 + b*y + c."""
    b = spec.elem(b).value
    c = spec.elem(c).value
    if spec.p != 2:
        # y = (-b +- sqrt(b^2 - 4c)) / 2
        disc = spec.sub(spec.mul(b, b), spec.mul(4 % spec.p, c))
        r = int(spec.sqrt_table()[int(disc)])
        if r < 0:
            return set()
        half = spec.inv(2 % spec.p)
        nb = spec.neg(b)
        roots = {int(spec.mul(spec.add(nb, r), half)), int(spec.mul(spec.sub(nb, r), half))}
        return {FieldElem(spec, v) for v in roots}
    if b == 0:
        # Frobenius is bijective: the unique root is c^(q/2)
        return {FieldElem(spec, int(spec.pow(c, spec.q // 2)))}
    # y = b z with z^2 + z = c / b^2
    target = int(spec.div(c, spec.mul(b, b)))
    if int(spec.absolute_trace(target)) != 0:
        return set()
    z = np.arange(spec.q)
    hits = np.flatnonzero(spec.add(spec.mul(z, z), z) == target)
    return {FieldElem(spec, int(spec.mul(b, int(v)))) for v in hits}
