"""Elementary integer number theory: primality, factorization, orders.

Factorization is trial division followed by Brent's variant of Pollard rho.
All functions are exact and work on Python integers of any size, but
factoring is only attempted within an iteration budget.
"""

from __future__ import annotations

import math
import random
from functools import lru_cache

from .errors import BudgetError

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71)

# Deterministic Miller-Rabin witnesses, valid for n < 3.3e24.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)

TRIAL_LIMIT = 1000
RHO_BUDGET = 1 << 20


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _rho(n: int, seed: int) -> int:
    """Return a nontrivial factor of the odd composite n (Brent)."""
    rng = random.Random(seed)
    spent = 0
    while True:
        y, c, m = rng.randrange(1, n), rng.randrange(1, n), 128
        g = r = q = 1
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r *= 2
            spent += r
            if spent > RHO_BUDGET:
                raise BudgetError(f"Pollard rho budget exhausted on a {n.bit_length()}-bit cofactor")
        if g == n:
            while True:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
                if g > 1:
                    break
        if g != n:
            return g


@lru_cache(maxsize=4096)
def _factor_cached(n: int) -> tuple[tuple[int, int], ...]:
    out: dict[int, int] = {}
    for p in range(2, TRIAL_LIMIT):
        if p * p > n:
            break
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    stack = [n] if n > 1 else []
    while stack:
        m = stack.pop()
        if is_prime(m):
            out[m] = out.get(m, 0) + 1
            continue
        root = math.isqrt(m)
        if root * root == m:
            stack += [root, root]
            continue
        d = _rho(m, seed=m & 0xFFFF)
        stack += [d, m // d]
    return tuple(sorted(out.items()))


def factorint(n: int) -> dict[int, int]:
    """Prime factorization ``{p: e}`` of ``n >= 1``."""
    if n < 1:
        raise ValueError("factorint needs a positive integer")
    return dict(_factor_cached(n))


def divisors(n: int) -> list[int]:
    divs = [1]
    for p, e in factorint(n).items():
        divs = [d * p**k for d in divs for k in range(e + 1)]
    return sorted(divs)


def euler_phi(n: int) -> int:
    result = n
    for p in factorint(n):
        result = result // p * (p - 1)
    return result


def mobius(n: int) -> int:
    f = factorint(n)
    if any(e > 1 for e in f.values()):
        return 0
    return -1 if len(f) % 2 else 1


def multiplicative_order(a: int, n: int) -> int:
    """Order of ``a`` in (Z/n)^x; requires gcd(a, n) = 1."""
    if n == 1:
        return 1
    if math.gcd(a, n) != 1:
        raise ValueError(f"{a} is not a unit modulo {n}")
    order = euler_phi(n)
    for p, e in factorint(order).items():
        for _ in range(e):
            if pow(a, order // p, n) == 1:
                order //= p
            else:
                break
    return order


def valuation(n: int, p: int) -> int:
    """Exponent of the prime ``p`` in the nonzero integer ``n``."""
    if n == 0:
        raise ValueError("valuation of 0 is infinite")
    n = abs(n)
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k


def prime_power_decompose(q: int) -> tuple[int, int] | None:
    """Return ``(p, k)`` with ``q = p**k`` or None if q is not a prime power."""
    if q < 2:
        return None
    f = factorint(q)
    if len(f) != 1:
        return None
    ((p, k),) = f.items()
    return p, k
