"""Integer arithmetic for finite classical groups.

Group orders, centralizer orders of semisimple elements read off from a
factored characteristic polynomial, Zsigmondy primes and the divisibility
quantities attached to character degrees.  Everything is exact integer
arithmetic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import BoundViolation, DomainError, InvalidParameterError, PreconditionError
from .ff import prime_power
from .ntheory import factorint, is_prime, multiplicative_order, valuation
from .poly import Factorization, MonicPoly, alpha, factor, rho, star

CASES = ("A_linear", "A_unitary", "B", "C", "D_plus", "D_minus")

VARIANTS = {
    "A_linear": ("GL", "SL", "adjoint", "simply_connected", "simple"),
    "A_unitary": ("U", "SU", "adjoint", "simply_connected", "simple"),
    "B": ("SO", "Omega", "adjoint", "simply_connected", "simple"),
    "C": ("Sp", "adjoint", "simply_connected", "simple"),
    "D_plus": ("SO", "Omega", "adjoint", "simply_connected", "simple"),
    "D_minus": ("SO", "Omega", "adjoint", "simply_connected", "simple"),
}

# Which polynomial family the semisimple classes of each case map to.
FAMILY_OF_CASE = {
    "A_linear": "L",
    "A_unitary": "U",
    "B": "O",  # after removing one factor x - 1
    "C": "O",
    "D_plus": "O",
    "D_minus": "O",
}


@dataclass(frozen=True)
class GroupSpec:
    """A classical case with its parameter (n for type A, rank r otherwise)."""

    case: str
    n: int
    q: int

    def __post_init__(self):
        if self.case not in CASES:
            raise InvalidParameterError(f"unknown case {self.case!r}; expected one of {CASES}")
        if self.case.startswith("A") and self.n < 2:
            raise InvalidParameterError("type A needs n >= 2")
        if self.n < 1:
            raise InvalidParameterError("rank must be >= 1")
        prime_power(self.q, cap=1 << 64)

    @property
    def rank(self) -> int:
        return self.n - 1 if self.case.startswith("A") else self.n

    @property
    def center_order(self) -> int:
        """Order of the center of the simply connected group."""
        q, n = self.q, self.n
        if self.case == "A_linear":
            return math.gcd(n, q - 1)
        if self.case == "A_unitary":
            return math.gcd(n, q + 1)
        if self.case in ("B", "C"):
            return math.gcd(2, q - 1)
        sign = 1 if self.case == "D_plus" else -1
        return math.gcd(4, q**n - sign)


def order_gl(n: int, q: int) -> int:
    out = 1
    for k in range(n):
        out *= q**n - q**k
    return out


def order_u(n: int, q: int) -> int:
    out = q ** (n * (n - 1) // 2)
    for i in range(1, n + 1):
        out *= q**i - (-1) ** i
    return out


def order_sp(r: int, q: int) -> int:
    out = q ** (r * r)
    for i in range(1, r + 1):
        out *= q ** (2 * i) - 1
    return out


def _order_d(r: int, q: int, sign: int) -> int:
    out = q ** (r * (r - 1)) * (q**r - sign)
    for i in range(1, r):
        out *= q ** (2 * i) - 1
    return out


def group_order(spec: GroupSpec, variant: str) -> int:
    if variant not in VARIANTS[spec.case]:
        raise InvalidParameterError(f"variant {variant!r} is not available for case {spec.case}")
    n, q, case = spec.n, spec.q, spec.case
    if case == "A_linear":
        full, torus = order_gl(n, q), q - 1
        return {
            "GL": full,
            "SL": full // torus,
            "adjoint": full // torus,
            "simply_connected": full // torus,
            "simple": full // torus // spec.center_order,
        }[variant]
    if case == "A_unitary":
        full, torus = order_u(n, q), q + 1
        return {
            "U": full,
            "SU": full // torus,
            "adjoint": full // torus,
            "simply_connected": full // torus,
            "simple": full // torus // spec.center_order,
        }[variant]
    two = math.gcd(2, q - 1)
    if case in ("B", "C"):
        N = order_sp(n, q)  # B_r and C_r have the same order
        return N // two if variant in ("Omega", "simple") else N
    N = _order_d(n, q, 1 if case == "D_plus" else -1)
    if variant == "SO":
        return N if q % 2 else 2 * N
    if variant == "Omega":
        return N // two
    if variant == "simple":
        return N // spec.center_order
    return N


def prime_to_q_part(N: int, q: int) -> int:
    if N < 1:
        raise InvalidParameterError("N must be >= 1")
    p = prime_power(q, cap=1 << 64).p
    while N % p == 0:
        N //= p
    return N


def ord_ell(N: int, ell: int) -> int:
    """Exponent of the prime ell in the nonzero integer N."""
    return valuation(N, ell)


# -- centralizers of semisimple elements -----------------------------------------

def _factor_of(f: Factorization | MonicPoly) -> Factorization:
    return factor(f) if isinstance(f, MonicPoly) else f


def centralizer_order_gl(f: Factorization | MonicPoly, q: int) -> int:
    """Order of the centralizer in GL_n(q) of a semisimple element with
    characteristic polynomial ``prod Q_i^{a_i}``: ``prod |GL_{a_i}(q^{b_i})|``."""
    f = _factor_of(f)
    out = 1
    for Q, a in f:
        out *= order_gl(a, q**Q.degree)
    return out


def _star_orbits(f: Factorization, base_q: int):
    """Group the factors into orbits of the star involution.

    Yields ``(Q, a, self_star)``, one entry per orbit.
    """
    seen = set()
    for Q, a in f:
        if Q in seen:
            continue
        S = star(Q, base_q)
        seen.update((Q, S))
        yield Q, a, S == Q


def centralizer_order_u(f: Factorization | MonicPoly, q: int) -> int:
    """Order of the centralizer in U_n(q) of a semisimple element whose
    characteristic polynomial over F_{q^2} factors as ``f``.

    A self-star factor Q of degree b and multiplicity a contributes
    ``|U_a(q^b)|``; a pair {Q, Q*} contributes ``|GL_a(q^{2b})|``.
    """
    f = _factor_of(f)
    out = 1
    for Q, a, self_star in _star_orbits(f, q):
        b = Q.degree
        out *= order_u(a, q**b) if self_star else order_gl(a, q ** (2 * b))
    return out


def torus_centralizer_order(case: str, f: Factorization | MonicPoly, q: int) -> int:
    """Order of the maximal torus centralizing a regular semisimple element.

    ``f`` is the squarefree characteristic polynomial (over F_{q^2} for the
    unitary case, with the extra x - 1 removed for odd orthogonal groups).

    * A_linear: ``prod(q^b - 1) / (q - 1)``.
    * A_unitary: self-star factors of (odd) degree b give ``q^b + 1``, pairs
      {Q, Q*} of degree b give ``q^{2b} - 1``; the product is divided by q + 1.
    * B, C, D: self-star factors of degree 2k give ``q^k + 1``, pairs {Q, Q*}
      of degree b give ``q^b - 1``, and x - 1, x + 1 give 1.
    """
    if case not in CASES:
        raise InvalidParameterError(f"unknown case {case!r}")
    f = _factor_of(f)
    if any(a > 1 for _, a in f):
        raise DomainError("torus centralizers need a squarefree characteristic polynomial")
    if case == "A_linear":
        out = 1
        for Q, _ in f:
            out *= q**Q.degree - 1
        return out // (q - 1)
    if case == "A_unitary":
        out = 1
        for Q, _, self_star in _star_orbits(f, q):
            b = Q.degree
            out *= q**b + 1 if self_star else q ** (2 * b) - 1
        return out // (q + 1)
    out = 1
    for Q, _, self_star in _star_orbits(f, q):
        if Q.degree == 1 and self_star:
            continue
        out *= q ** (Q.degree // 2) + 1 if self_star else q**Q.degree - 1
    return out


def torus_alpha_bound(case: str, P: MonicPoly, q: int, r: int) -> tuple[int, Fraction, bool]:
    """Compare the torus order of P with ``alpha(P) q^r``.

    Returns ``(torus_order, alpha(P) q^r, torus_order <= alpha(P) q^r)``.
    The comparison holds in both type A cases; for B, C and D it can fail
    once P has two or more self-star quadratic factors.
    """
    t = torus_centralizer_order(case, P, q)
    bound = alpha(P, q) * q**r
    return t, bound, t <= bound


# -- Zsigmondy primes -----------------------------------------------------------

@dataclass(frozen=True)
class ZsigmondyResult:
    q: int
    m: int
    primes: frozenset[int]


def zsigmondy(q: int, m: int) -> ZsigmondyResult:
    """All primes ell with ord_ell(q) = m."""
    if m < 2:
        raise InvalidParameterError("m must be >= 2")
    if q < 2:
        raise InvalidParameterError("q must be >= 2")
    primes = frozenset(
        ell for ell in factorint(q**m - 1) if q % ell and multiplicative_order(q % ell, ell) == m
    )
    return ZsigmondyResult(q, m, primes)


def _require_zsigmondy(ell: int, q: int, m: int) -> None:
    if not is_prime(ell) or q % ell == 0 or multiplicative_order(q % ell, ell) != m:
        raise PreconditionError(f"{ell} is not a Zsigmondy prime for (q, m) = ({q}, {m})")


def which_z_check(ell: int, q: int, m: int, k: int) -> tuple[bool, bool]:
    """Return (ell | q^k - 1, ell | q^k + 1), checked against the predicted
    answers (m | k, and k an odd multiple of m/2)."""
    if k < 1:
        raise InvalidParameterError("k must be >= 1")
    _require_zsigmondy(ell, q, m)
    minus = pow(q, k, ell) == 1
    plus = pow(q, k, ell) == ell - 1
    want_minus = k % m == 0
    want_plus = m % 2 == 0 and k % (m // 2) == 0 and (k // (m // 2)) % 2 == 1
    if (minus, plus) != (want_minus, want_plus):
        raise BoundViolation(
            f"ell={ell}, q={q}, m={m}, k={k}: got {(minus, plus)}, predicted {(want_minus, want_plus)}"
        )
    return minus, plus


def just_one_check(P: MonicPoly, m: int, ell: int, mode: str = "linear", q: int | None = None) -> bool:
    """True when ell is prime to the centralizer order of a semisimple element
    with characteristic polynomial P (in GL_n(q), or U_n(q) in unitary mode).

    Raises PreconditionError when the hypotheses do not hold.
    """
    if mode not in ("linear", "unitary"):
        raise InvalidParameterError("mode must be 'linear' or 'unitary'")
    F = P.field
    if mode == "linear":
        q = F.q
    else:
        q = math.isqrt(F.q) if q is None else q
        if q * q != F.q:
            raise InvalidParameterError("unitary mode needs a polynomial over F_{q^2}")
    if P.constant == 0:
        raise PreconditionError("a semisimple invertible element has nonzero constant term")
    _require_zsigmondy(ell, q, m)
    f = factor(P)
    r = rho(P)
    if mode == "linear":
        if m <= 2 * r:
            raise PreconditionError(f"m = {m} <= 2 rho(P) = {2 * r}")
        if any(Q.degree % m == 0 for Q, _ in f):
            raise PreconditionError("an irreducible factor has degree divisible by m")
        order = centralizer_order_gl(f, q)
    else:
        if m <= 4 * r:
            raise PreconditionError(f"m = {m} <= 4 rho(P) = {4 * r}")
        if any((2 * Q.degree) % m == 0 for Q, _ in f):
            raise PreconditionError("an irreducible factor has degree a multiple of m/2")
        if star(P, q) != P:
            raise PreconditionError("unitary mode needs a self-star polynomial")
        order = centralizer_order_u(f, q)
    return order % ell != 0


# -- character degree arithmetic -------------------------------------------------

def burnside_d(char_degree: int, class_size: int) -> int:
    """``chi(1) / gcd(chi(1), |g^G|)``, an integer dividing chi(g)."""
    if char_degree < 1 or class_size < 1:
        raise InvalidParameterError("degree and class size must be >= 1")
    return char_degree // math.gcd(char_degree, class_size)


def jordan_degree(G_prime_part: int, H_prime_part: int, pi_degree: int) -> int:
    """``(|G|' / |H|') * pi(1)`` for the prime-to-p parts of two group orders."""
    if H_prime_part < 1 or G_prime_part < 1:
        raise InvalidParameterError("orders must be positive")
    if G_prime_part % H_prime_part:
        raise DomainError(f"{H_prime_part} does not divide {G_prime_part}")
    return G_prime_part // H_prime_part * pi_degree
