"""Finite fields F_q for prime powers q up to a configurable cap.

Elements are encoded as integers ``0 <= a < q``: the coordinate vector
``(c_0, ..., c_{k-1})`` of ``a`` on the power basis ``1, g, ..., g^{k-1}``
(``g`` the class of x modulo the field's modulus) is the base-p expansion
``a = c_0 + c_1 p + ... + c_{k-1} p^{k-1}``.  So the prime subfield is
``{0, ..., p-1}`` with its usual residues, zero is 0 and one is 1, and the
canonical element order is integer order.

The modulus is the monic irreducible of degree k whose integer encoding
(same base-p rule on its low coefficients) is smallest.  Multiplication runs
on exp/log tables built from a primitive element.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Sequence

from .errors import InvalidParameterError
from .ntheory import factorint, is_prime, prime_power_decompose

FIELD_CAP = 1 << 16
_TABLE_CAP = 1024  # full addition tables only below this size


@dataclass(frozen=True)
class PrimePower:
    p: int
    k: int

    @property
    def q(self) -> int:
        return self.p**self.k

    def __int__(self) -> int:
        return self.q


def prime_power(q: int, cap: int = FIELD_CAP) -> PrimePower:
    if not isinstance(q, int) or q < 2:
        raise InvalidParameterError(f"q must be a prime power >= 2, got {q!r}")
    if q > cap:
        raise InvalidParameterError(f"q = {q} exceeds the field cap {cap}")
    pk = prime_power_decompose(q)
    if pk is None:
        raise InvalidParameterError(f"{q} is not a prime power")
    return PrimePower(*pk)


# -- arithmetic on coordinate vectors, used only while bootstrapping a field --

def _to_digits(a: int, p: int, k: int) -> list[int]:
    out = []
    for _ in range(k):
        a, r = divmod(a, p)
        out.append(r)
    return out


def _from_digits(c: Sequence[int], p: int) -> int:
    a = 0
    for x in reversed(c):
        a = a * p + x
    return a


def _polymulmod(a: list[int], b: list[int], mod: list[int], p: int) -> list[int]:
    """Product of coordinate vectors modulo the monic ``mod`` (low to high)."""
    k = len(mod) - 1
    prod = [0] * (2 * k - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                prod[i + j] = (prod[i + j] + x * y) % p
    for d in range(len(prod) - 1, k - 1, -1):
        c = prod[d]
        if c:
            for i in range(k + 1):
                prod[d - k + i] = (prod[d - k + i] - c * mod[i]) % p
    return prod[:k]


def _polypowmod(a: list[int], e: int, mod: list[int], p: int) -> list[int]:
    k = len(mod) - 1
    result = [1] + [0] * (k - 1)
    while e:
        if e & 1:
            result = _polymulmod(result, a, mod, p)
        a = _polymulmod(a, a, mod, p)
        e >>= 1
    return result


def _gcd_prime(a: list[int], b: list[int], p: int) -> list[int]:
    def trim(v):
        while v and v[-1] == 0:
            v.pop()
        return v

    a, b = trim(list(a)), trim(list(b))
    while b:
        inv = pow(b[-1], p - 2, p)
        while len(a) >= len(b):
            c = a[-1] * inv % p
            shift = len(a) - len(b)
            for i, y in enumerate(b):
                a[shift + i] = (a[shift + i] - c * y) % p
            trim(a)
            if not a:
                break
        a, b = b, a
    return a


def _is_irreducible_prime(mod: list[int], p: int) -> bool:
    """Rabin's test for a monic polynomial over F_p (coefficients low to high)."""
    k = len(mod) - 1
    if k == 1:
        return True
    x = [0, 1] + [0] * (k - 2)
    if _polypowmod(x, p**k, mod, p) != x:
        return False
    for r in factorint(k):
        h = _polypowmod(x, p ** (k // r), mod, p)
        diff = list(h)
        diff[1] = (diff[1] - 1) % p
        g = _gcd_prime(diff, mod, p)
        if len(g) > 1:
            return False
    return True


def smallest_irreducible(p: int, k: int) -> tuple[int, ...]:
    """Monic irreducible of degree k over F_p with the smallest encoding."""
    for code in range(p**k):
        low = _to_digits(code, p, k)
        if low[0] == 0 and k > 1:
            continue
        mod = low + [1]
        if _is_irreducible_prime(mod, p):
            return tuple(mod)
    raise AssertionError("no irreducible polynomial found")  # pragma: no cover


class Field:
    """The finite field with ``q = p**k`` elements (use :func:`field_make`)."""

    def __init__(self, pp: PrimePower):
        self.p, self.k, self.q = pp.p, pp.k, pp.q
        self.prime_power = pp
        p, k, q = self.p, self.k, self.q
        self.modulus = smallest_irreducible(p, k) if k > 1 else (0, 1)

        if k == 1:
            mul_slow = lambda a, b: a * b % p  # noqa: E731
        else:
            mod = list(self.modulus)
            mul_slow = lambda a, b: _from_digits(  # noqa: E731
                _polymulmod(_to_digits(a, p, k), _to_digits(b, p, k), mod, p), p
            )

        order = q - 1
        cofactors = [order // r for r in factorint(order)] if order > 1 else []
        for g in range(1, q):
            if all(self._slow_pow(g, e, mul_slow) != 1 for e in cofactors):
                break
        self.generator = g

        exp = [1] * (2 * order)
        for i in range(1, 2 * order):
            exp[i] = mul_slow(exp[i - 1], g)
        log = [-1] * q
        for i in range(order):
            log[exp[i]] = i
        self._exp, self._log = exp, log

        if k == 1:
            self._add_table = None
        elif q <= _TABLE_CAP:
            self._add_table = [[self._add_digits(a, b) for b in range(q)] for a in range(q)]
        else:
            self._add_table = None
        self._neg = [self._neg_digits(a) for a in range(q)] if k > 1 else None

    @staticmethod
    def _slow_pow(a, e, mul):
        r = 1
        while e:
            if e & 1:
                r = mul(r, a)
            a = mul(a, a)
            e >>= 1
        return r

    def _add_digits(self, a: int, b: int) -> int:
        p, out, scale = self.p, 0, 1
        while a or b:
            a, x = divmod(a, p)
            b, y = divmod(b, p)
            out += ((x + y) % p) * scale
            scale *= p
        return out

    def _neg_digits(self, a: int) -> int:
        p, out, scale = self.p, 0, 1
        while a:
            a, x = divmod(a, p)
            out += ((-x) % p) * scale
            scale *= p
        return out

    def __repr__(self) -> str:
        return f"GF({self.q})"

    def __reduce__(self):
        return field_make, (self.q,)

    # -- arithmetic ---------------------------------------------------------

    def add(self, a: int, b: int) -> int:
        if self.k == 1:
            return (a + b) % self.p
        if self._add_table is not None:
            return self._add_table[a][b]
        return self._add_digits(a, b)

    def neg(self, a: int) -> int:
        if self.k == 1:
            return -a % self.p
        return self._neg[a]

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self._exp[self._log[a] + self._log[b]]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in " + repr(self))
        return self._exp[(self.q - 1 - self._log[a]) % (self.q - 1)]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            if e < 0:
                raise ZeroDivisionError("negative power of zero")
            return 1 if e == 0 else 0
        return self._exp[(self._log[a] * e) % (self.q - 1)]

    def log(self, a: int) -> int:
        """Discrete log to the base :attr:`generator` (table lookup)."""
        if a == 0:
            raise ValueError("log of zero")
        return self._log[a]

    def exp(self, e: int) -> int:
        return self._exp[e % (self.q - 1)]

    def order(self, a: int) -> int:
        """Multiplicative order of a nonzero element."""
        from math import gcd

        return (self.q - 1) // gcd(self._log[a], self.q - 1)

    def from_int(self, n: int) -> int:
        """Image of the rational integer n in the prime subfield."""
        return n % self.p

    def coords(self, a: int) -> list[int]:
        return _to_digits(a, self.p, self.k)

    def from_coords(self, coords: Sequence[int]) -> int:
        if len(coords) != self.k or not all(0 <= c < self.p for c in coords):
            raise InvalidParameterError(f"bad coordinate vector {coords!r} for {self!r}")
        return _from_digits(coords, self.p)

    def elements(self) -> Iterator[int]:
        return iter(range(self.q))

    def nonzero(self) -> Iterator[int]:
        return iter(range(1, self.q))


@lru_cache(maxsize=None)
def _field_cached(q: int) -> Field:
    return Field(prime_power(q))


def field_make(q: int, cap: int = FIELD_CAP) -> Field:
    """Return the (cached, immutable) field with q elements."""
    prime_power(q, cap)
    return _field_cached(q)


def elements(field: Field) -> Iterator[int]:
    """All elements of the field in canonical order, zero first."""
    return field.elements()


def frobenius(field: Field, a: int, base_q: int) -> int:
    """``a**base_q`` for ``a`` in a field of size ``base_q**2``."""
    if field.q != base_q * base_q:
        raise InvalidParameterError(f"{field!r} is not the quadratic extension of GF({base_q})")
    return field.pow(a, base_q)


@lru_cache(maxsize=None)
def embedding(small_q: int, big_q: int) -> tuple[int, ...]:
    """Table mapping elements of GF(small_q) to GF(big_q), a field homomorphism.

    The generator of GF(small_q) is sent to the smallest root of its modulus in
    GF(big_q).
    """
    small, big = field_make(small_q), field_make(big_q)
    if small.p != big.p or big.k % small.k:
        raise InvalidParameterError(f"GF({small_q}) does not embed in GF({big_q})")
    if small.k == 1:
        return tuple(range(small.q))
    mod = small.modulus

    def evaluate(x):
        acc = 0
        for c in reversed(mod):
            acc = big.add(big.mul(acc, x), c)
        return acc

    root = next(x for x in big.elements() if evaluate(x) == 0)
    powers = [big.pow(root, i) for i in range(small.k)]
    table = []
    for a in small.elements():
        acc = 0
        for c, w in zip(small.coords(a), powers):
            for _ in range(c):
                acc = big.add(acc, w)
        table.append(acc)
    return tuple(table)


def subfield_elements(big: Field, base_q: int) -> list[int]:
    """Elements of ``big`` fixed by ``x -> x**base_q``, in canonical order."""
    return [a for a in big.elements() if big.pow(a, base_q) == a]
