"""Monic polynomials over finite fields.

Polynomials are immutable :class:`MonicPoly` values holding the low
coefficients ``c_0 .. c_{n-1}`` (the leading 1 is implicit).  Internally the
arithmetic works on plain lists of field elements, lowest degree first.

Factorization is the usual squarefree / distinct-degree / equal-degree
(Cantor-Zassenhaus) pipeline.  The random splitting stream is seeded from the
global seed and the polynomial itself, so factorizations are reproducible.
"""

from __future__ import annotations

import math
import os
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from .errors import DomainError, InvalidParameterError
from .ff import Field, field_make
from .ntheory import divisors

GLOBAL_SEED = int(os.environ.get("CHARSPARSE_SEED", "0"))


@dataclass(frozen=True)
class MonicPoly:
    field: Field
    low: tuple[int, ...]

    @property
    def degree(self) -> int:
        return len(self.low)

    @property
    def coeffs(self) -> tuple[int, ...]:
        """All coefficients, lowest first, including the leading 1."""
        return self.low + (1,)

    @property
    def constant(self) -> int:
        return self.low[0] if self.low else 1

    @classmethod
    def from_coeffs(cls, field: Field, coeffs: Sequence[int]) -> "MonicPoly":
        coeffs = list(coeffs)
        if not coeffs or coeffs[-1] != 1:
            raise InvalidParameterError("leading coefficient must be 1")
        return cls(field, tuple(coeffs[:-1]))

    @classmethod
    def x_minus(cls, field: Field, a: int) -> "MonicPoly":
        return cls(field, (field.neg(a),))

    def __mul__(self, other: "MonicPoly") -> "MonicPoly":
        if other.field is not self.field:
            raise InvalidParameterError("polynomials over different fields")
        return MonicPoly.from_coeffs(self.field, _mul(self.field, self.coeffs, other.coeffs))

    def __pow__(self, e: int) -> "MonicPoly":
        out = MonicPoly(self.field, ())
        for _ in range(e):
            out = out * self
        return out

    def __call__(self, x: int) -> int:
        F = self.field
        acc = 0
        for c in reversed(self.coeffs):
            acc = F.add(F.mul(acc, x), c)
        return acc

    def __str__(self) -> str:
        terms = []
        for i, c in reversed(list(enumerate(self.coeffs))):
            if c == 0:
                continue
            mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            if c == 1 and mono:
                terms.append(mono)
            else:
                terms.append(f"{c}{'*' + mono if mono else ''}")
        return " + ".join(terms) or "0"

    def __repr__(self) -> str:
        return f"MonicPoly({self.field!r}, {str(self)!r})"

    def sort_key(self):
        return (self.degree, tuple(reversed(self.low)))


def poly(field: Field | int, coeffs: Sequence[int]) -> MonicPoly:
    """Build a monic polynomial from its full coefficient list, lowest first."""
    if isinstance(field, int):
        field = field_make(field)
    return MonicPoly.from_coeffs(field, coeffs)


# -- list arithmetic ----------------------------------------------------------

def _trim(v: list[int]) -> list[int]:
    while v and v[-1] == 0:
        v.pop()
    return v


def _add(F: Field, a: Sequence[int], b: Sequence[int]) -> list[int]:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    add = F.add
    for i, y in enumerate(b):
        out[i] = add(out[i], y)
    return _trim(out)


def _sub(F: Field, a: Sequence[int], b: Sequence[int]) -> list[int]:
    neg = F.neg
    return _add(F, a, [neg(y) for y in b])


def _mul(F: Field, a: Sequence[int], b: Sequence[int]) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    add, mul = F.add, F.mul
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] = add(out[i + j], mul(x, y))
    return _trim(out)


def _divmod(F: Field, a: Sequence[int], b: Sequence[int]) -> tuple[list[int], list[int]]:
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(a)
    db = len(b) - 1
    if len(rem) - 1 < db:
        return [], _trim(rem)
    add, mul, neg = F.add, F.mul, F.neg
    inv_lead = F.inv(b[-1])
    quot = [0] * (len(rem) - db)
    for d in range(len(rem) - 1, db - 1, -1):
        c = rem[d]
        if c:
            c = mul(c, inv_lead)
            quot[d - db] = c
            nc = neg(c)
            off = d - db
            for i in range(db):
                if b[i]:
                    rem[off + i] = add(rem[off + i], mul(nc, b[i]))
            rem[d] = 0
    return _trim(quot), _trim(rem[:db])


def _mod(F: Field, a: Sequence[int], b: Sequence[int]) -> list[int]:
    return _divmod(F, a, b)[1]


def _monic(F: Field, a: Sequence[int]) -> list[int]:
    if not a or a[-1] == 1:
        return list(a)
    inv = F.inv(a[-1])
    return [F.mul(inv, x) for x in a]


def _gcd(F: Field, a: Sequence[int], b: Sequence[int]) -> list[int]:
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _mod(F, a, b)
    return _monic(F, a)


def _powmod(F: Field, base: Sequence[int], e: int, m: Sequence[int]) -> list[int]:
    result = [1]
    base = _mod(F, base, m)
    while e:
        if e & 1:
            result = _mod(F, _mul(F, result, base), m)
        e >>= 1
        if e:
            base = _mod(F, _mul(F, base, base), m)
    return result


def _deriv(F: Field, a: Sequence[int]) -> list[int]:
    p = F.p
    out = []
    for i in range(1, len(a)):
        k = i % p
        if k == 0 or a[i] == 0:
            out.append(0)
        else:
            out.append(F.mul(F.from_int(k), a[i]))
    return _trim(out)


def _pth_root(F: Field, a: Sequence[int]) -> list[int]:
    """Polynomial b with b**p == a, for a with a' == 0."""
    p = F.p
    inv_frob = F.q // p  # x -> x**(q/p) inverts x -> x**p on F_q
    return [F.pow(a[i], inv_frob) for i in range(0, len(a), p)]


# -- factorization ------------------------------------------------------------

@dataclass(frozen=True)
class Factorization:
    """Irreducible factors with multiplicities, sorted by degree then coefficients."""

    factors: tuple[tuple[MonicPoly, int], ...]

    @property
    def degrees(self) -> tuple[int, ...]:
        return tuple(Q.degree for Q, _ in self.factors)

    @property
    def multiplicities(self) -> tuple[int, ...]:
        return tuple(a for _, a in self.factors)

    def expand(self, field: Field) -> MonicPoly:
        out = MonicPoly(field, ())
        for Q, a in self.factors:
            out = out * Q**a
        return out

    def __iter__(self):
        return iter(self.factors)

    def __len__(self) -> int:
        return len(self.factors)


def _squarefree(F: Field, f: list[int]) -> list[tuple[list[int], int]]:
    out: list[tuple[list[int], int]] = []
    i = 1
    d = _deriv(F, f)
    if not d:
        return [(g, m * F.p) for g, m in _squarefree(F, _pth_root(F, f))]
    c = _gcd(F, f, d)
    w = _divmod(F, f, c)[0]
    while len(w) > 1:
        y = _gcd(F, w, c)
        fac = _divmod(F, w, y)[0]
        if len(fac) > 1:
            out.append((_monic(F, fac), i))
        w = y
        c = _divmod(F, c, y)[0]
        i += 1
    if len(c) > 1:
        out += [(g, m * F.p) for g, m in _squarefree(F, _pth_root(F, c))]
    return out


def _distinct_degree(F: Field, f: list[int]) -> list[tuple[list[int], int]]:
    out = []
    x = [0, 1]
    h = x
    i = 0
    while len(f) - 1 >= 2 * (i + 1):
        i += 1
        h = _powmod(F, h, F.q, f)
        g = _gcd(F, _sub(F, h, x), f)
        if len(g) > 1:
            out.append((g, i))
            f = _divmod(F, f, g)[0]
            h = _mod(F, h, f)
    if len(f) > 1:
        out.append((_monic(F, f), len(f) - 1))
    return out


def _equal_degree(F: Field, f: list[int], d: int, rng: random.Random) -> list[list[int]]:
    n = len(f) - 1
    if n == d:
        return [f]
    q = F.q
    while True:
        a = _trim([rng.randrange(q) for _ in range(n)])
        if len(a) < 2:
            continue
        if F.p == 2:
            # trace map a + a^2 + ... + a^(2^(k d - 1))
            t, s = list(a), list(a)
            for _ in range(F.k * d - 1):
                s = _mod(F, _mul(F, s, s), f)
                t = _add(F, t, s)
            b = t
        else:
            b = _sub(F, _powmod(F, a, (q**d - 1) // 2, f), [1])
        g = _gcd(F, b, f)
        if 1 < len(g) < len(f):
            h = _monic(F, _divmod(F, f, g)[0])
            return _equal_degree(F, g, d, rng) + _equal_degree(F, h, d, rng)


@lru_cache(maxsize=1 << 18)
def _factor_cached(q: int, low: tuple[int, ...], seed: int) -> tuple[tuple[tuple[int, ...], int], ...]:
    F = field_make(q)
    f = list(low) + [1]
    rng = random.Random(f"{seed}:{q}:{low}")
    result = []
    for g, mult in _squarefree(F, f):
        for h, d in _distinct_degree(F, g):
            for irr in _equal_degree(F, h, d, rng):
                result.append((tuple(irr[:-1]), mult))
    merged: dict[tuple[int, ...], int] = {}
    for low_i, m in result:
        merged[low_i] = merged.get(low_i, 0) + m
    return tuple(sorted(merged.items(), key=lambda t: (len(t[0]), t[0][::-1])))


def factor(P: MonicPoly, seed: int | None = None, check: bool = True) -> Factorization:
    """Complete factorization of P into monic irreducibles over its field."""
    if P.degree < 1:
        raise DomainError("factor() needs a polynomial of degree >= 1")
    seed = GLOBAL_SEED if seed is None else seed
    F = P.field
    raw = _factor_cached(F.q, P.low, seed)
    fac = Factorization(tuple((MonicPoly(F, low), m) for low, m in raw))
    if check and fac.expand(F) != P:
        raise AssertionError(f"factorization of {P} does not reproduce it")  # pragma: no cover
    return fac


def is_irreducible(P: MonicPoly) -> bool:
    fac = factor(P, check=False)
    return len(fac) == 1 and fac.factors[0][1] == 1


# -- the invariants used by the polynomial families ---------------------------

def star(P: MonicPoly, base_q: int) -> MonicPoly:
    """Conjugate reciprocal: ``conj(P)(0)^-1 * x^deg * conj(P)(1/x)``.

    Conjugation is coefficientwise ``c -> c**base_q``; trivial when the
    coefficient field is GF(base_q) itself.
    """
    F = P.field
    if F.q == base_q:
        conj = lambda c: c  # noqa: E731
    elif F.q == base_q * base_q:
        conj = lambda c: F.pow(c, base_q)  # noqa: E731
    else:
        raise InvalidParameterError(f"{F!r} is neither GF({base_q}) nor its quadratic extension")
    if P.constant == 0:
        raise DomainError("star needs a nonzero constant term")
    cs = [conj(c) for c in P.coeffs]
    inv0 = F.inv(cs[0])
    rev = [F.mul(inv0, c) for c in reversed(cs)]
    return MonicPoly.from_coeffs(F, rev)


def is_self_star(P: MonicPoly, base_q: int) -> bool:
    return P.constant != 0 and star(P, base_q) == P


def rho(P: MonicPoly) -> int:
    """Sum of ``deg(Q) * (mult(Q) - 1)`` over irreducible factors Q."""
    if P.degree < 1:
        raise DomainError("rho needs degree >= 1")
    return sum(Q.degree * (a - 1) for Q, a in factor(P))


def alpha(P: MonicPoly, q: int) -> Fraction:
    """``prod(1 + q^-b) / (1 - q^-1)`` over the distinct irreducible factor degrees b."""
    num = Fraction(1)
    for Q, _ in factor(P):
        num *= 1 + Fraction(1, q**Q.degree)
    return num / (1 - Fraction(1, q))


def zeta_symmetric(P: MonicPoly) -> set[int]:
    """Orders d > 1 of scalars z with P(z x) == P(x), by the support criterion."""
    if P.constant == 0:
        raise DomainError("zeta_symmetric needs a nonzero constant term")
    g = 0
    for i, c in enumerate(P.coeffs):
        if c:
            g = math.gcd(g, i)
    m = P.field.q - 1
    return {d for d in divisors(math.gcd(g, m)) if d > 1}


def zeta_symmetric_scan(P: MonicPoly) -> set[int]:
    """Same as :func:`zeta_symmetric`, by trying every scalar."""
    F = P.field
    found = set()
    for z in F.nonzero():
        if z == 1:
            continue
        if all(c == 0 or F.pow(z, i) == 1 for i, c in enumerate(P.coeffs)):
            found.add(F.order(z))
    return found


def is_m_regular(P: MonicPoly, m: int) -> bool:
    if m < 0:
        raise InvalidParameterError("m must be nonnegative")
    return not zeta_symmetric(P) and rho(P) <= m


def twist(P: MonicPoly, w: int) -> MonicPoly:
    """The monic rescaling ``w^-deg(P) * P(w x)``."""
    F = P.field
    n = P.degree
    return MonicPoly(F, tuple(F.mul(c, F.pow(w, i - n)) for i, c in enumerate(P.low)))


def change_field(P: MonicPoly, big: Field) -> MonicPoly:
    """Image of P under the standard embedding of its field into ``big``."""
    from .ff import embedding

    table = embedding(P.field.q, big.q)
    return MonicPoly(big, tuple(table[c] for c in P.low))


def product(polys: Iterable[MonicPoly], field: Field) -> MonicPoly:
    out = MonicPoly(field, ())
    for Q in polys:
        out = out * Q
    return out
