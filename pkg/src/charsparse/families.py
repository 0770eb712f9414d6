"""The polynomial families L_{n,c}(q), U_{n,c}(q) and O_n(q).

* ``L``: monic degree-n polynomials over F_q with constant term c.
* ``U``: monic degree-n polynomials over F_{q^2} with P = P* and constant c,
  where c * conj(c) = 1.
* ``O``: monic degree-n (n even) polynomials over F_q with P = P* and P(0) = 1.

Members are indexed ``0 .. population-1`` by their free coefficients in
mixed radix (first free coefficient most significant), which fixes the
canonical enumeration order and makes index ranges the unit of parallel work.
Sampling draws uniform indices.

The ``stat_*`` functions count members with a property and compare the count
with the corresponding upper bound.  Bounds involving irrational numbers are
compared exactly (by raising both sides to a power) or, for the logarithmic
bound, in 50-digit decimal arithmetic.
"""

from __future__ import annotations

import csv
import io
import math
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from decimal import Decimal, localcontext
from fractions import Fraction
from typing import Callable, Iterator

from .errors import BudgetError, InvalidParameterError, UnsupportedFamilyError
from .ff import Field, field_make, prime_power
from .poly import (
    MonicPoly,
    _squarefree,
    alpha,
    factor,
    star,
    zeta_symmetric,
)

EXHAUSTIVE_CAP = 10**7
DEFAULT_SAMPLES = 10_000


@dataclass(frozen=True)
class FamilySpec:
    kind: str
    n: int
    q: int
    c: int | None = None

    def __post_init__(self):
        if self.kind not in ("L", "U", "O"):
            raise InvalidParameterError(f"unknown family kind {self.kind!r}")
        if self.n < 1:
            raise InvalidParameterError("degree n must be >= 1")
        prime_power(self.q)
        if self.kind == "U":
            prime_power(self.q * self.q)
        F = self.field
        default = F.from_int((-1) ** self.n)
        if self.kind == "O":
            if self.n % 2:
                raise InvalidParameterError("O_n(q) needs even n")
            if self.c not in (None, 1):
                raise InvalidParameterError("O_n(q) has constant term 1")
            object.__setattr__(self, "c", 1)
        elif self.c is None:
            object.__setattr__(self, "c", default)
        if not 0 < self.c < F.q:
            raise InvalidParameterError(f"constant term {self.c} is not a unit of {F!r}")
        if self.kind == "U" and F.pow(self.c, self.q + 1) != 1:
            raise InvalidParameterError("U_{n,c}(q) needs c * conj(c) = 1")

    @property
    def field(self) -> Field:
        return field_make(self.q * self.q if self.kind == "U" else self.q)

    @property
    def label(self) -> str:
        return f"{self.kind}_{{{self.n},{self.c}}}({self.q})"


def cardinality(spec: FamilySpec) -> int:
    if spec.kind == "O":
        return spec.q ** (spec.n // 2)
    return spec.q ** (spec.n - 1)


# -- coordinates of a member ----------------------------------------------------

def _layout(spec: FamilySpec) -> tuple[list[list[int]], Callable[[list[int]], tuple[int, ...]]]:
    """Value lists for the free coefficients and the map free -> low coefficients."""
    F, n, c = spec.field, spec.n, spec.c
    allf = list(F.elements())
    if spec.kind == "L":
        def build(free):
            return (c,) + tuple(free)
        return [allf] * (n - 1), build

    if spec.kind == "O":
        r = n // 2

        def build(free):
            low = [1] + [0] * (n - 1)
            for i in range(1, r + 1):
                low[i] = free[i - 1]
                if i < r:
                    low[n - i] = free[i - 1]
            return tuple(low)
        return [allf] * r, build

    # U: coefficient c_i (0 < i < n/2) is free in F_{q^2}; c_{n-i} = conj(c_i) * c;
    # for even n the middle coefficient solves m = c * conj(m).
    q = spec.q
    half = (n - 1) // 2
    slots = [allf] * half
    if n % 2 == 0:
        slots = slots + [[m for m in allf if m == F.mul(c, F.pow(m, q))]]

    def build(free):
        low = [c] + [0] * (n - 1)
        for i in range(1, half + 1):
            low[i] = free[i - 1]
            low[n - i] = F.mul(F.pow(free[i - 1], q), c)
        if n % 2 == 0:
            low[n // 2] = free[half]
        return tuple(low)
    return slots, build


def member_at(spec: FamilySpec, index: int) -> MonicPoly:
    """The member with the given canonical index."""
    slots, build = _layout(spec)
    free = []
    for values in reversed(slots):
        index, r = divmod(index, len(values))
        free.append(values[r])
    if index:
        raise IndexError("family index out of range")
    return MonicPoly(spec.field, build(free[::-1]))


def _iter_range(spec: FamilySpec, start: int, stop: int) -> Iterator[MonicPoly]:
    slots, build = _layout(spec)
    F = spec.field
    radices = [len(v) for v in slots]
    digits = []
    rem = start
    for r in reversed(radices):
        rem, d = divmod(rem, r)
        digits.append(d)
    digits.reverse()
    for _ in range(start, stop):
        yield MonicPoly(F, build([slots[i][d] for i, d in enumerate(digits)]))
        for i in range(len(digits) - 1, -1, -1):
            digits[i] += 1
            if digits[i] < radices[i]:
                break
            digits[i] = 0


def enumerate_family(spec: FamilySpec, cap: int = EXHAUSTIVE_CAP) -> Iterator[MonicPoly]:
    """Every member exactly once, in canonical order."""
    pop = cardinality(spec)
    if pop > cap:
        raise BudgetError(f"{spec.label} has {pop} members (cap {cap}); use sample()")
    return _iter_range(spec, 0, pop)


def membership(P: MonicPoly, spec: FamilySpec) -> bool:
    if P.field is not spec.field or P.degree != spec.n or P.constant != spec.c:
        return False
    if spec.kind == "L":
        return True
    return star(P, spec.q) == P


def sample(spec: FamilySpec, count: int, seed: int = 0) -> Iterator[MonicPoly]:
    """``count`` independent uniform draws, reproducible from ``seed``."""
    if count < 1:
        raise InvalidParameterError("sample count must be >= 1")
    rng = random.Random(f"sample:{seed}")
    pop = cardinality(spec)
    for _ in range(count):
        yield member_at(spec, rng.randrange(pop))


# -- statistics -----------------------------------------------------------------

@dataclass
class FamilyStats:
    spec: FamilySpec
    statistic: str
    parameter: int | None
    population: int
    examined: int
    mode: str
    seed: int | None
    count: int
    bound: float | None = None  # upper bound as a fraction of the family
    passed: bool | None = None
    counters: dict[str, int] = field(default_factory=dict)

    @property
    def fraction(self) -> float:
        return self.count / self.examined if self.examined else 0.0

    def row(self) -> dict:
        return {
            "kind": self.spec.kind,
            "n": self.spec.n,
            "q": self.spec.q,
            "c": self.spec.c,
            "statistic": self.statistic,
            "m_or_M": "" if self.parameter is None else self.parameter,
            "examined": self.examined,
            "count": self.count,
            "fraction": f"{self.fraction:.10g}",
            "paper_bound": "" if self.bound is None else f"{self.bound:.10g}",
            "mode": self.mode,
            "seed": "" if self.seed is None else self.seed,
            "passed": "" if self.passed is None else str(self.passed).lower(),
        }


CSV_COLUMNS = ("kind", "n", "q", "c", "statistic", "m_or_M", "examined", "count",
               "fraction", "paper_bound", "mode", "seed", "passed")


def stats_to_csv(stats: list[FamilyStats]) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=CSV_COLUMNS, lineterminator="\n")
    w.writeheader()
    for s in stats:
        w.writerow(s.row())
    return buf.getvalue()


def _count_chunk(args) -> int:
    spec, start, stop, predicate = args
    return sum(1 for P in _iter_range(spec, start, stop) if predicate(P))


def _run(spec: FamilySpec, predicate, budget: int, samples: int, seed: int,
         workers: int = 1) -> tuple[int, int, str, int | None]:
    """Return (count, examined, mode, seed) for a predicate over the family."""
    pop = cardinality(spec)
    if pop <= budget:
        if workers > 1 and pop > 4 * workers:
            step = -(-pop // workers)
            jobs = [(spec, s, min(s + step, pop), predicate) for s in range(0, pop, step)]
            with ProcessPoolExecutor(workers) as ex:
                count = sum(ex.map(_count_chunk, jobs))
        else:
            count = _count_chunk((spec, 0, pop, predicate))
        return count, pop, "exhaustive", None
    count = sum(1 for P in sample(spec, samples, seed) if predicate(P))
    return count, samples, "sampled", seed


class _FactorDegreeDivisible:
    def __init__(self, m: int, half: bool):
        self.m, self.half = m, half

    def __call__(self, P: MonicPoly) -> bool:
        if self.half:
            # degree b is an integer multiple of m/2  <=>  m | 2b
            return any((2 * Q.degree) % self.m == 0 for Q, _ in factor(P))
        return any(Q.degree % self.m == 0 for Q, _ in factor(P))


def rho_fast(P: MonicPoly) -> int:
    """rho(P) from the squarefree decomposition alone."""
    return sum((len(g) - 1) * (i - 1) for g, i in _squarefree(P.field, list(P.coeffs)))


class _RhoAtLeast:
    def __init__(self, m: int):
        self.m = m

    def __call__(self, P: MonicPoly) -> bool:
        return rho_fast(P) >= self.m


class _AlphaAtLeast:
    def __init__(self, threshold: Fraction, q: int):
        self.threshold, self.q = threshold, q

    def __call__(self, P: MonicPoly) -> bool:
        return alpha(P, self.q) >= self.threshold


def _zeta_sym(P: MonicPoly) -> bool:
    return bool(zeta_symmetric(P))


def log_bound_holds(count: int, population: int, n: int, m: int) -> bool:
    """``count < population * (1 + ln n) / m``, decided in 50-digit arithmetic."""
    with localcontext() as ctx:
        ctx.prec = 50
        rhs = Decimal(population) * (1 + Decimal(n).ln()) / Decimal(m)
        return Decimal(count) < rhs


def stat_factor_degree_divisible(spec: FamilySpec, m: int, budget: int = EXHAUSTIVE_CAP,
                                 samples: int = DEFAULT_SAMPLES, seed: int = 0,
                                 half: bool = False, workers: int = 1) -> FamilyStats:
    """Members with an irreducible factor of degree divisible by m.

    Factors are taken over the coefficient field (F_{q^2} for U).  With
    ``half=True`` the condition is "degree is an integer multiple of m/2".
    The comparison bound is ``(1 + ln n) / m`` of the population, the explicit
    bound from the counting argument (not the non-constructive epsilon_r).
    """
    if m < 1:
        raise InvalidParameterError("m must be >= 1")
    count, examined, mode, sd = _run(spec, _FactorDegreeDivisible(m, half), budget, samples, seed, workers)
    pop = cardinality(spec)
    bound = (1 + math.log(spec.n)) / m
    passed = log_bound_holds(count, examined, spec.n, m)
    name = "factor_degree_half_multiple" if half else "factor_degree_divisible"
    return FamilyStats(spec, name, m, pop, examined, mode, sd, count, bound, passed)


def rho_tail_bound_holds(kind: str, count: int, population: int, q: int, m: int) -> bool:
    """Exact test of count < K q^(-m/e) population with (K, e) = (2,2), (4,2), (2,4)."""
    if count == 0:
        return True
    K, e = {"L": (2, 2), "U": (4, 2), "O": (2, 4)}[kind]
    # count < K * population * q^(-m/e)  <=>  count^e * q^m < K^e * population^e
    return count**e * q**m < K**e * population**e


def stat_rho_ge(spec: FamilySpec, m: int, budget: int = EXHAUSTIVE_CAP,
                samples: int = DEFAULT_SAMPLES, seed: int = 0, workers: int = 1) -> FamilyStats:
    """Members with rho(P) >= m, against 2q^(-m/2), 4q^(-m/2), 2q^(-m/4) for L, U, O."""
    if m < 0:
        raise InvalidParameterError("m must be >= 0")
    count, examined, mode, sd = _run(spec, _RhoAtLeast(m), budget, samples, seed, workers)
    K, e = {"L": (2, 2), "U": (4, 2), "O": (2, 4)}[spec.kind]
    bound = K * spec.q ** (-m / e)
    passed = rho_tail_bound_holds(spec.kind, count, examined, spec.q, m)
    return FamilyStats(spec, "rho_ge", m, cardinality(spec), examined, mode, sd, count, bound, passed)


def stat_alpha_ge(spec: FamilySpec, M: int, budget: int = EXHAUSTIVE_CAP,
                  samples: int = DEFAULT_SAMPLES, seed: int = 0, workers: int = 1) -> FamilyStats:
    """Members with alpha(P) >= (1 + 1/q)^M (exact rational comparison).

    There is no closed-form bound to compare with; ``passed`` is left unset.
    """
    if M < 1:
        raise InvalidParameterError("M must be >= 1")
    threshold = (1 + Fraction(1, spec.q)) ** M
    count, examined, mode, sd = _run(spec, _AlphaAtLeast(threshold, spec.q), budget, samples, seed, workers)
    return FamilyStats(spec, "alpha_ge", M, cardinality(spec), examined, mode, sd, count)


def zeta_bound_holds(count: int, q: int, n: int) -> bool:
    """``count < 2 q^(n/2 - 1)``, exactly."""
    return count * count < 4 * q ** (n - 2) if n >= 2 else count == 0


def stat_zeta_symmetric(spec: FamilySpec, budget: int = EXHAUSTIVE_CAP,
                        samples: int = DEFAULT_SAMPLES, seed: int = 0, workers: int = 1) -> FamilyStats:
    """Members with P(z x) == P(x) for some scalar z != 1, against 2q^(n/2-1)."""
    if spec.kind == "O":
        raise UnsupportedFamilyError("the scalar-symmetry count is stated for L and U only")
    count, examined, mode, sd = _run(spec, _zeta_sym, budget, samples, seed, workers)
    pop = cardinality(spec)
    bound = 2 * spec.q ** (spec.n / 2 - 1) / pop
    if mode == "exhaustive":
        passed = zeta_bound_holds(count, spec.q, spec.n)
    else:
        passed = count / examined < bound
    return FamilyStats(spec, "zeta_symmetric", None, pop, examined, mode, sd, count, bound, passed)
