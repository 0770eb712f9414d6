"""Partition-type counting: generating functions, unipotent class counts,
Lusztig symbols and related small combinatorial helpers.

All counts are exact Python integers; probes of growth rates use Fractions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, Sequence

from .errors import DomainError, InvalidParameterError


# -- partitions -------------------------------------------------------------------

@lru_cache(maxsize=None)
def _partition_table(n: int) -> tuple[int, ...]:
    """p(0..n) by Euler's pentagonal recurrence."""
    p = [1] + [0] * n
    for m in range(1, n + 1):
        total, k = 0, 1
        while True:
            g1 = k * (3 * k - 1) // 2
            if g1 > m:
                break
            sign = 1 if k % 2 else -1
            total += sign * p[m - g1]
            g2 = k * (3 * k + 1) // 2
            if g2 <= m:
                total += sign * p[m - g2]
            k += 1
        p[m] = total
    return tuple(p)


def partition_count(n: int) -> int:
    if n < 0:
        raise InvalidParameterError("n must be >= 0")
    size = max(64, 1 << (n.bit_length()))
    return _partition_table(size)[n]


def partitions(n: int, max_part: int | None = None) -> Iterator[tuple[int, ...]]:
    """All partitions of n as nonincreasing tuples, largest first part first."""
    if n < 0:
        raise InvalidParameterError("n must be >= 0")
    if max_part is None:
        max_part = n
    if n == 0:
        yield ()
        return
    for first in range(min(n, max_part), 0, -1):
        for rest in partitions(n - first, first):
            yield (first,) + rest


def bipartition_count(n: int) -> int:
    """Number of ordered pairs of partitions with total size n."""
    if n < 0:
        return 0
    return sum(partition_count(k) * partition_count(n - k) for k in range(n + 1))


# -- sequences and generating functions ----------------------------------------------

@dataclass(frozen=True)
class SeqSpec:
    """A nonnegative integer sequence a_1, a_2, ...

    ``kind`` is ``"constant"`` (every term equals ``value``), ``"identity"``
    (a_i = i) or ``"explicit"`` (terms from ``prefix``, then ``value`` forever).
    """

    kind: str = "constant"
    value: int = 1
    prefix: tuple[int, ...] = ()

    def __post_init__(self):
        if self.kind not in ("constant", "identity", "explicit"):
            raise InvalidParameterError(f"unknown sequence kind {self.kind!r}")
        if self.value < 0 or any(x < 0 for x in self.prefix):
            raise InvalidParameterError("sequence terms must be nonnegative")

    def term(self, i: int) -> int:
        if i < 1:
            raise InvalidParameterError("sequences are indexed from 1")
        if self.kind == "identity":
            return i
        if self.kind == "explicit" and i <= len(self.prefix):
            return self.prefix[i - 1]
        return self.value


def genfun_coeffs(a: SeqSpec, M: int) -> list[int]:
    """Coefficients A_0..A_M of ``prod_i (1 - z^i)^(-a_i)``."""
    if M < 0:
        raise InvalidParameterError("M must be >= 0")
    A = [1] + [0] * M
    for i in range(1, M + 1):
        for _ in range(a.term(i)):
            # multiply by 1/(1 - z^i)
            for m in range(i, M + 1):
                A[m] += A[m - i]
    return A


def max_product_partition(a: SeqSpec, b: SeqSpec | None, k: int) -> int:
    """Max of ``prod a_j^{e_j}`` over partitions ``1^{e_1} 2^{e_2} ...`` of k
    with every multiplicity ``e_j <= b_j`` (no limit when b is None)."""
    if k < 1:
        raise InvalidParameterError("k must be >= 1")
    best: list[int | None] = [1] + [None] * k
    for j in range(1, k + 1):
        aj = a.term(j)
        if aj < 1:
            raise InvalidParameterError("a_j must be >= 1")
        cap = k // j if b is None else min(b.term(j), k // j)
        new = list(best)
        for total in range(k + 1):
            if best[total] is None:
                continue
            for e in range(1, cap + 1):
                t = total + e * j
                if t > k:
                    break
                cand = best[total] * aj**e
                if new[t] is None or cand > new[t]:
                    new[t] = cand
        best = new
    if best[k] is None:
        raise DomainError(f"no admissible partition of {k}")
    return best[k]


# -- unipotent classes ----------------------------------------------------------------

UNIPOTENT_TYPES = ("GL", "SL_bound", "Sp", "Sp_exact", "SO_plus", "SO_minus", "even_char_bound")


def _sum_over_partitions(n: int, weight) -> int:
    return sum(weight(lam) for lam in partitions(n))


def _sp_weight(lam: tuple[int, ...]) -> int:
    return 2 ** len({x for x in lam if x % 2 == 0})


def _sp_exact_weight(lam: tuple[int, ...]) -> int:
    # odd parts must occur with even multiplicity
    if any(lam.count(x) % 2 for x in set(lam) if x % 2):
        return 0
    return _sp_weight(lam)


def _so_weight(sign: int):
    def weight(lam):
        odd = {x for x in lam if x % 2}
        if not odd:
            return 1 if sign > 0 else 0
        return 2 ** (len(odd) - 1)
    return weight


def unipotent_class_count(kind: str, n: int) -> int:
    """Counts (or upper bounds) of unipotent classes.

    * ``GL``: p(n).
    * ``SL_bound``: n p(n).
    * ``Sp``: sum over partitions of 2n of 2^(number of distinct even parts).
    * ``Sp_exact``: the same sum restricted to partitions whose odd parts have
      even multiplicity (the exact count for odd q).
    * ``SO_plus`` / ``SO_minus``: sum over partitions of 2n of
      2^(number of distinct odd parts - 1), where partitions without odd parts
      contribute 1 (plus type) or 0 (minus type).
    * ``even_char_bound``: ordered quadruples of partitions of total size n.
    """
    if kind not in UNIPOTENT_TYPES:
        raise InvalidParameterError(f"unknown type {kind!r}; expected one of {UNIPOTENT_TYPES}")
    if n < 1:
        raise InvalidParameterError("parameter must be >= 1")
    if kind == "GL":
        return partition_count(n)
    if kind == "SL_bound":
        return n * partition_count(n)
    if kind == "even_char_bound":
        return genfun_coeffs(SeqSpec("constant", 4), n)[n]
    if kind == "Sp":
        return _sum_over_partitions(2 * n, _sp_weight)
    if kind == "Sp_exact":
        return _sum_over_partitions(2 * n, _sp_exact_weight)
    return _sum_over_partitions(2 * n, _so_weight(1 if kind == "SO_plus" else -1))


def _series_mul(a: list[int], b: list[int], N: int) -> list[int]:
    out = [0] * (N + 1)
    for i, x in enumerate(a):
        if x:
            for j in range(0, N + 1 - i):
                if b[j]:
                    out[i + j] += x * b[j]
    return out


@lru_cache(maxsize=None)
def unipotent_count_series(kind: str, M: int) -> tuple[int, ...]:
    """``unipotent_class_count(kind, r)`` for r = 0..M from generating functions.

    This route never lists partitions, so it reaches r in the hundreds.  Entry
    0 is the empty-partition value.
    """
    if kind in ("GL", "SL_bound", "even_char_bound"):
        if kind == "even_char_bound":
            return tuple(genfun_coeffs(SeqSpec("constant", 4), M))
        p = [partition_count(r) for r in range(M + 1)]
        return tuple(p) if kind == "GL" else tuple(r * p[r] for r in range(M + 1))
    N = 2 * M
    if kind in ("Sp", "Sp_exact"):
        series = [1] + [0] * N
        for j in range(1, N + 1):
            factor = [0] * (N + 1)
            factor[0] = 1
            if j % 2 == 0:
                for e in range(1, N // j + 1):
                    factor[e * j] = 2
            else:
                step = 2 * j if kind == "Sp_exact" else j
                for e in range(1, N // step + 1):
                    factor[e * step] = 1
            series = _series_mul(series, factor, N)
        return tuple(series[2 * r] for r in range(M + 1))
    if kind in ("SO_plus", "SO_minus"):
        # track (even-only part) E(z) = prod_{j even} 1/(1-z^j) and
        # F(z) = prod_{j odd} (1 + 2 z^j/(1-z^j)), so that
        # sum 2^{#distinct odd} = E*F and the no-odd partitions give E.
        E = [1] + [0] * N
        F = [1] + [0] * N
        for j in range(1, N + 1):
            factor = [1] + [0] * N
            if j % 2 == 0:
                for e in range(1, N // j + 1):
                    factor[e * j] = 1
                E = _series_mul(E, factor, N)
            else:
                for e in range(1, N // j + 1):
                    factor[e * j] = 2
                F = _series_mul(F, factor, N)
        EF = _series_mul(E, F, N)
        # partitions with odd parts: 2^{d-1} = (2^d)/2; those without: E
        extra = 1 if kind == "SO_plus" else 0
        return tuple((EF[2 * r] - E[2 * r]) // 2 + extra * E[2 * r] for r in range(M + 1))
    raise InvalidParameterError(f"unknown type {kind!r}")


# -- Lusztig symbols ------------------------------------------------------------------

def symbol_rank(S: Sequence[int], T: Sequence[int]) -> int:
    s = len(S) + len(T)
    return sum(S) + sum(T) - (s - 1) ** 2 // 4


def symbol_defect(S: Sequence[int], T: Sequence[int]) -> int:
    return abs(len(S) - len(T))


def reduce_symbol(S: Sequence[int], T: Sequence[int]) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Canonical representative: strip common zeros and downshift, then order
    the pair (shorter row first; lexicographic for equal lengths)."""
    S, T = sorted(set(S)), sorted(set(T))
    while S and T and S[0] == 0 and T[0] == 0:
        S = [x - 1 for x in S[1:]]
        T = [x - 1 for x in T[1:]]
    a, b = tuple(S), tuple(T)
    return (a, b) if (len(a), a) <= (len(b), b) else (b, a)


def _sets_with_sum(size: int, total: int, low: int, bound: int) -> Iterator[tuple[int, ...]]:
    """Strictly increasing tuples of length ``size`` with entries in
    ``[low, bound)`` summing to ``total``."""
    if size == 0:
        if total == 0:
            yield ()
        return
    # the smallest possible sum from here is low + (low+1) + ...
    for x in range(low, bound):
        rest_min = (size - 1) * (x + 1) + (size - 1) * (size - 2) // 2
        if x + rest_min > total:
            break
        for tail in _sets_with_sum(size - 1, total - x, x + 1, bound):
            yield (x,) + tail


def enumerate_symbols(rank: int, defect: int, bound: int | None = None) -> set:
    """All reduced symbols of the given rank and defect with entries < bound."""
    if rank < 0 or defect < 0:
        raise InvalidParameterError("rank and defect must be >= 0")
    if bound is None:
        bound = 2 * rank + defect + 2
    out = set()
    a = 0
    while a + defect * defect // 4 <= rank:
        b = a + defect
        target = rank + (a + b - 1) ** 2 // 4
        for sS in range(target + 1):
            for S in _sets_with_sum(a, sS, 0, bound):
                for T in _sets_with_sum(b, target - sS, 0, bound):
                    if S and T and S[0] == 0 and T[0] == 0:
                        continue
                    out.add(reduce_symbol(S, T))
        a += 1
    return out


def count_symbols(rank: int, defect: int) -> int:
    """Number of reduced symbols of the given rank and defect."""
    return len(enumerate_symbols(rank, defect))


def unipotent_char_count(kind: str, r: int) -> int:
    """Unipotent character counts from the symbol model.

    ``A``: p(r).  ``BC``: symbols of rank r and odd defect.  ``D``: symbols of
    rank r and defect divisible by 4, with degenerate symbols (S = T) counted
    twice.  ``2D``: symbols of rank r and defect 2 mod 4.
    """
    if r < 0:
        raise InvalidParameterError("r must be >= 0")
    if kind == "A":
        return partition_count(r)
    if kind == "BC":
        return sum(count_symbols(r, d) for d in range(1, 2 * math.isqrt(r) + 2, 2) if d * d // 4 <= r)
    if kind in ("D", "2D"):
        start = 0 if kind == "D" else 2
        total = 0
        for d in range(start, 2 * math.isqrt(r) + 2, 4):
            if d * d // 4 > r:
                break
            syms = enumerate_symbols(r, d)
            total += len(syms)
            if d == 0:
                total += sum(1 for S, T in syms if S == T)
        return total
    raise InvalidParameterError(f"unknown type {kind!r}; expected A, BC, D or 2D")


# -- constants and growth probes ----------------------------------------------------

def master_constants(epsilon: Fraction | int | str, N: int) -> tuple[int, Fraction]:
    """(M, delta) with M = max(N, floor(8/eps) + 1) and delta = eps/(2M^2+4)/2.

    These satisfy M^2 delta + 2 delta + 4/M < eps.
    """
    eps = Fraction(epsilon)
    if not 0 < eps < 1:
        raise InvalidParameterError("epsilon must lie strictly between 0 and 1")
    if N < 1:
        raise InvalidParameterError("N must be >= 1")
    M = max(N, math.floor(8 / eps) + 1)
    delta = eps / (2 * M * M + 4) / 2
    return M, delta


def master_guarantee(M: int, delta: Fraction) -> Fraction:
    """The quantity ``M^2 delta + 2 delta + 4/M``."""
    return M * M * delta + 2 * delta + Fraction(4, M)


def subexp_probe(seq: SeqSpec | Sequence[int], gamma: Fraction | int | str, M: int) -> list[Fraction]:
    """``gamma^-m a_m`` for m = 0..M (a SeqSpec is indexed from 1; a_0 = 0)."""
    g = Fraction(gamma)
    if g <= 1:
        raise InvalidParameterError("gamma must be > 1")
    if isinstance(seq, SeqSpec):
        values = [0] + [seq.term(i) for i in range(1, M + 1)]
    else:
        values = list(seq)[: M + 1]
    out, scale = [], Fraction(1)
    for a in values:
        out.append(a * scale)
        scale /= g
    return out


def decreasing_from(values: Sequence[Fraction]) -> int | None:
    """Smallest index from which the sequence is strictly decreasing
    (None if even the last step increases)."""
    if len(values) < 2:
        return None
    i = len(values) - 1
    while i > 0 and values[i - 1] > values[i]:
        i -= 1
    return None if i == len(values) - 1 else i


def eventually_decreasing(values: Sequence[Fraction]) -> bool:
    """Strictly decreasing over at least the second half, with the last value
    below the first."""
    start = decreasing_from(values)
    return start is not None and start <= len(values) // 2 and values[-1] < values[0]
