"""Exact arithmetic in the cyclotomic integers Z[zeta_N].

An element is stored as a sparse map ``exponent -> integer coefficient`` on a
fixed Z-basis of Z[zeta_N].  The basis is the tensor product of the power
bases of the prime-power pieces: writing ``N = prod p^e`` and
``zeta_N^E = prod zeta_{p^e}^{j_p}`` (so ``j_p = E * (N/p^e)^-1 mod p^e``),
``zeta_N^E`` is a basis element exactly when every ``j_p < phi(p^e)``.
Coordinates on this basis are unique, so equality and divisibility by a
rational integer are coordinatewise.  Passing to a multiple conductor maps
basis elements to basis elements, so lifting is a relabelling of exponents.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping

from .errors import InvalidParameterError
from .ntheory import euler_phi, factorint, mobius


@lru_cache(maxsize=None)
def _crt_data(N: int) -> tuple[tuple[int, int, int, int, int], ...]:
    """Per prime power p^e || N: (p, p^e, p^(e-1), N/p^e, (N/p^e)^-1 mod p^e)."""
    out = []
    for p, e in sorted(factorint(N).items()) if N > 1 else []:
        pe = p**e
        cof = N // pe
        out.append((p, pe, pe // p, cof, pow(cof, -1, pe)))
    return tuple(out)


@lru_cache(maxsize=1 << 20)
def _reduce_root(N: int, E: int) -> tuple[tuple[int, int], ...]:
    """zeta_N^E as ((exponent, coefficient), ...) on the basis."""
    terms = {0: 1}
    for p, pe, low, cof, inv in _crt_data(N):
        j = E * inv % pe
        limit = (p - 1) * low
        if j < limit:
            comp = ((j, 1),)
        else:
            t = j - limit
            comp = tuple((k * low + t, -1) for k in range(p - 1))
        new: dict[int, int] = {}
        for e0, c0 in terms.items():
            for jj, c1 in comp:
                key = (e0 + jj * cof) % N
                new[key] = new.get(key, 0) + c0 * c1
        terms = new
    return tuple(sorted((e, c) for e, c in terms.items() if c))


@lru_cache(maxsize=None)
def is_basis_exponent(N: int, E: int) -> bool:
    return all(E * inv % pe < (p - 1) * low for p, pe, low, _, inv in _crt_data(N))


class CycInt:
    """An element of Z[zeta_N] (immutable)."""

    __slots__ = ("N", "terms")

    def __init__(self, N: int, terms: Mapping[int, int] | None = None, _canonical: bool = False):
        if not isinstance(N, int) or N < 1:
            raise InvalidParameterError(f"conductor must be a positive integer, got {N!r}")
        self.N = N
        if _canonical:
            self.terms = dict(terms or {})
            return
        acc: dict[int, int] = {}
        for E, c in (terms or {}).items():
            if not c:
                continue
            for E2, c2 in _reduce_root(N, E % N):
                acc[E2] = acc.get(E2, 0) + c * c2
        self.terms = {E: c for E, c in acc.items() if c}

    # -- construction -------------------------------------------------------

    @classmethod
    def from_int(cls, n: int, N: int = 1) -> "CycInt":
        return cls(N, {0: n} if n else {}, _canonical=True)

    @classmethod
    def root(cls, N: int, E: int = 1, coeff: int = 1) -> "CycInt":
        return cls(N, {E % N: coeff})

    # -- conductor handling -----------------------------------------------------

    def lift(self, M: int) -> "CycInt":
        """The same element viewed in Z[zeta_M] (M a multiple of N)."""
        if M % self.N:
            raise InvalidParameterError(f"{M} is not a multiple of the conductor {self.N}")
        if M == self.N:
            return self
        s = M // self.N
        return CycInt(M, {E * s: c for E, c in self.terms.items()}, _canonical=True)

    def _common(self, other) -> tuple["CycInt", "CycInt"]:
        if not isinstance(other, CycInt):
            other = CycInt.from_int(int(other))
        if other.N == self.N:
            return self, other
        L = math.lcm(self.N, other.N)
        return self.lift(L), other.lift(L)

    # -- ring operations --------------------------------------------------------

    def __add__(self, other) -> "CycInt":
        if isinstance(other, int):
            other = CycInt.from_int(other)
        elif not isinstance(other, CycInt):
            return NotImplemented
        a, b = self._common(other)
        out = dict(a.terms)
        for E, c in b.terms.items():
            v = out.get(E, 0) + c
            if v:
                out[E] = v
            else:
                out.pop(E, None)
        return CycInt(a.N, out, _canonical=True)

    __radd__ = __add__

    def __neg__(self) -> "CycInt":
        return CycInt(self.N, {E: -c for E, c in self.terms.items()}, _canonical=True)

    def __sub__(self, other) -> "CycInt":
        if isinstance(other, int):
            other = CycInt.from_int(other)
        elif not isinstance(other, CycInt):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "CycInt":
        return (-self) + other

    def __mul__(self, other) -> "CycInt":
        if isinstance(other, int):
            if not other:
                return CycInt(self.N, {}, _canonical=True)
            return CycInt(self.N, {E: c * other for E, c in self.terms.items()}, _canonical=True)
        if not isinstance(other, CycInt):
            return NotImplemented
        a, b = self._common(other)
        N = a.N
        raw: dict[int, int] = {}
        for E1, c1 in a.terms.items():
            for E2, c2 in b.terms.items():
                E = (E1 + E2) % N
                raw[E] = raw.get(E, 0) + c1 * c2
        return CycInt(N, raw)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "CycInt":
        if e < 0:
            raise InvalidParameterError("negative powers are not cyclotomic integers in general")
        result, base = CycInt.from_int(1, self.N), self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def conj(self) -> "CycInt":
        """Complex conjugate (zeta -> zeta^-1)."""
        return CycInt(self.N, {-E % self.N: c for E, c in self.terms.items()})

    def galois(self, a: int) -> "CycInt":
        """Image under zeta_N -> zeta_N^a, for a coprime to N."""
        if math.gcd(a, self.N) != 1:
            raise InvalidParameterError(f"{a} is not coprime to the conductor {self.N}")
        return CycInt(self.N, {E * a % self.N: c for E, c in self.terms.items()})

    # -- predicates and invariants ----------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def rational_value(self) -> int | None:
        """The value as an integer if the element is rational, else None."""
        if not self.terms:
            return 0
        if set(self.terms) == {0}:
            return self.terms[0]
        return None

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            return self.rational_value() == other
        if not isinstance(other, CycInt):
            return NotImplemented
        a, b = self._common(other)
        return a.terms == b.terms

    def __hash__(self) -> int:
        return hash(normalized_trace(self))

    def coords(self) -> dict[int, int]:
        return dict(self.terms)

    def to_complex(self) -> complex:
        import cmath

        return sum(c * cmath.exp(2j * cmath.pi * E / self.N) for E, c in self.terms.items())

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for E, c in sorted(self.terms.items()):
            parts.append(f"{c}" if E == 0 else f"{c}*z{self.N}^{E}")
        return " + ".join(parts)

    # -- serialization ----------------------------------------------------------

    def to_json(self) -> dict:
        return {"N": self.N, "terms": [[c, E] for E, c in sorted(self.terms.items())]}

    @classmethod
    def from_json(cls, doc: Mapping) -> "CycInt":
        try:
            N = doc["N"]
            terms = doc["terms"]
            acc: dict[int, int] = {}
            for c, E in terms:
                if not isinstance(c, int) or not isinstance(E, int):
                    raise TypeError
                acc[E % N] = acc.get(E % N, 0) + c
        except (KeyError, TypeError, ValueError) as exc:
            raise InvalidParameterError(f"malformed cyclotomic integer {doc!r}") from exc
        return cls(N, acc)


def cyc_make(N: int, terms: Iterable[tuple[int, int]] = ()) -> CycInt:
    """Element ``sum coeff * zeta_N^exponent``; exponents may be any integers."""
    if not isinstance(N, int) or N < 1:
        raise InvalidParameterError(f"conductor must be a positive integer, got {N!r}")
    acc: dict[int, int] = {}
    for c, E in terms:
        acc[E % N] = acc.get(E % N, 0) + c
    return CycInt(N, acc)


def galois(alpha: CycInt, a: int) -> CycInt:
    return alpha.galois(a)


def conj(alpha: CycInt) -> CycInt:
    return alpha.conj()


@lru_cache(maxsize=None)
def _root_trace(N: int, E: int) -> Fraction:
    o = N // math.gcd(E, N)
    return Fraction(mobius(o), euler_phi(o))


def normalized_trace(alpha: CycInt) -> Fraction:
    """Trace to Q divided by the degree; independent of the conductor."""
    return sum((c * _root_trace(alpha.N, E) for E, c in alpha.terms.items()), Fraction(0))


def divisible_by_int(alpha: CycInt, d: int) -> bool:
    if d < 1:
        raise InvalidParameterError("d must be >= 1")
    return all(c % d == 0 for c in alpha.terms.values())


def divide_by_int(alpha: CycInt, d: int) -> CycInt:
    """alpha / d, which must be a cyclotomic integer."""
    if not divisible_by_int(alpha, d):
        raise InvalidParameterError(f"{alpha!r} is not divisible by {d}")
    return CycInt(alpha.N, {E: c // d for E, c in alpha.terms.items()}, _canonical=True)


def gallagher_check(alpha: CycInt) -> tuple[Fraction, bool]:
    """(T(alpha * conj alpha), passes) where passes means alpha = 0 or value >= 1."""
    value = normalized_trace(alpha * alpha.conj())
    return value, alpha.is_zero() or value >= 1


def gallagher_check_divisor(alpha: CycInt, d: int) -> tuple[Fraction, bool]:
    """Like gallagher_check, but for alpha divisible by d the bound is d^2."""
    value, ok = gallagher_check(alpha)
    if alpha.is_zero() or not divisible_by_int(alpha, d):
        return value, ok
    return value, value >= d * d
