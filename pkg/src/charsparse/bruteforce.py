"""Exhaustive small matrix groups, used as an independent oracle.

Groups are built by listing every matrix row by row (each new row must lie
outside the span of the previous ones, and satisfy the form conditions with
them), then filtering on the determinant.  Conjugacy classes come from
breadth-first search under conjugation by a generating set.
"""

from __future__ import annotations

import itertools
import random
from collections import Counter, deque
from dataclasses import dataclass, field

from .errors import BudgetError, InvalidParameterError
from .families import FamilySpec, membership
from .ff import Field, field_make
from .grouparith import GroupSpec, group_order
from .poly import MonicPoly, _add, _mul, _trim

ORDER_CAP = 2 * 10**6
CASES = ("GL", "SL", "SU", "Sp")

Matrix = tuple  # row-major tuple of n*n field elements


@dataclass
class MatGroup:
    case: str
    n: int
    q: int
    field: Field
    elements: list[Matrix]
    index: dict[Matrix, int] = field(repr=False)
    generators: list[Matrix] = field(default_factory=list, repr=False)
    _classes: list[tuple[Matrix, int]] | None = field(default=None, repr=False)

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def identity(self) -> Matrix:
        n = self.n
        return tuple(1 if i == j else 0 for i in range(n) for j in range(n))


# -- matrix arithmetic -----------------------------------------------------------------------

def mat_mul(F: Field, n: int, A: Matrix, B: Matrix) -> Matrix:
    out = []
    add, mul = F.add, F.mul
    for i in range(n):
        row = A[i * n : i * n + n]
        for j in range(n):
            s = 0
            for k in range(n):
                a = row[k]
                if a:
                    b = B[k * n + j]
                    if b:
                        s = add(s, mul(a, b))
            out.append(s)
    return tuple(out)


def mat_pow(F: Field, n: int, A: Matrix, e: int) -> Matrix:
    result = tuple(1 if i == j else 0 for i in range(n) for j in range(n))
    while e:
        if e & 1:
            result = mat_mul(F, n, result, A)
        A = mat_mul(F, n, A, A)
        e >>= 1
    return result


def element_order(G: MatGroup, A: Matrix) -> int:
    one = G.identity
    X, k = A, 1
    while X != one:
        X = mat_mul(G.field, G.n, X, A)
        k += 1
    return k


def charpoly(F: Field, n: int, A: Matrix) -> MonicPoly:
    """det(x I - A) by expansion over permutations (n <= 4)."""
    total: list[int] = []
    for perm in itertools.permutations(range(n)):
        inversions = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = [1]
        for i, j in enumerate(perm):
            entry = [F.neg(A[i * n + j])]
            if i == j:
                entry = [entry[0], 1]
            term = _mul(F, term, _trim(entry))
            if not term:
                break
        if not term:
            continue
        if inversions % 2:
            term = [F.neg(c) for c in term]
        total = _add(F, total, term)
    return MonicPoly.from_coeffs(F, total)


def determinant(F: Field, n: int, A: Matrix) -> int:
    c = charpoly(F, n, A).constant
    return c if n % 2 == 0 else F.neg(c)


# -- building --------------------------------------------------------------------------------

def _expected_order(case: str, n: int, q: int) -> int:
    if case == "GL":
        return group_order(GroupSpec("A_linear", n, q), "GL")
    if case == "SL":
        return group_order(GroupSpec("A_linear", n, q), "SL")
    if case == "SU":
        return group_order(GroupSpec("A_unitary", n, q), "SU")
    return group_order(GroupSpec("C", n // 2, q), "Sp")


def build(case: str, n: int, q: int, cap: int = ORDER_CAP, seed: int = 0) -> MatGroup:
    """All elements of GL_n(q), SL_n(q), SU_n(q) (over F_{q^2}) or Sp_n(q).

    SU uses the hermitian form with Gram matrix I; Sp uses [[0, I], [-I, 0]].
    """
    if case not in CASES:
        raise InvalidParameterError(f"unknown case {case!r}; expected one of {CASES}")
    if n < 1 or n > 4:
        raise InvalidParameterError("brute-force groups need 1 <= n <= 4")
    if case == "Sp" and n % 2:
        raise InvalidParameterError("symplectic groups need even n")
    if case in ("GL", "SL", "SU") and n < 1:
        raise InvalidParameterError("n must be >= 1")
    expected = _expected_order(case, n, q)
    if expected > cap:
        raise BudgetError(f"{case}_{n}({q}) has order {expected} > cap {cap}")
    F = field_make(q * q if case == "SU" else q)
    vectors = list(itertools.product(range(F.q), repeat=n))

    def form(u, v):
        if case == "SU":
            s = 0
            for a, b in zip(u, v):
                s = F.add(s, F.mul(a, F.pow(b, q)))
            return s
        r = n // 2
        s = 0
        for i in range(r):
            s = F.add(s, F.sub(F.mul(u[i], v[r + i]), F.mul(u[r + i], v[i])))
        return s

    def gram(i, j):
        if case == "SU":
            return 1 if i == j else 0
        r = n // 2
        if j == i + r:
            return 1
        if i == j + r:
            return F.neg(1)
        return 0

    elements: list[Matrix] = []

    def span_add(span: set, v) -> set:
        out = set(span)
        for w in span:
            for c in range(1, F.q):
                out.add(tuple(F.add(x, F.mul(c, y)) for x, y in zip(w, v)))
        return out

    def extend(rows, span):
        i = len(rows)
        if i == n:
            M = tuple(x for r in rows for x in r)
            if case != "GL" and determinant(F, n, M) != 1:
                return
            elements.append(M)
            return
        for v in vectors:
            if v in span:
                continue
            if case in ("SU", "Sp"):
                if form(v, v) != gram(i, i):
                    continue
                if any(form(rows[j], v) != gram(j, i) for j in range(i)):
                    continue
            extend(rows + [v], span_add(span, v))

    extend([], {tuple([0] * n)})
    if len(elements) != expected:
        raise AssertionError(f"{case}_{n}({q}): built {len(elements)} elements, expected {expected}")
    G = MatGroup(case, n, q, F, elements, {A: i for i, A in enumerate(elements)})
    G.generators = _generators(G, seed)
    return G


def _closure(G: MatGroup, gens: list[Matrix]) -> int:
    seen = {G.identity}
    queue = deque([G.identity])
    while queue:
        x = queue.popleft()
        for g in gens:
            y = mat_mul(G.field, G.n, x, g)
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return len(seen)


def _generators(G: MatGroup, seed: int) -> list[Matrix]:
    rng = random.Random(f"gens:{seed}:{G.case}:{G.n}:{G.q}")
    gens: list[Matrix] = []
    size = 1
    while size < G.order:
        g = rng.choice(G.elements)
        trial = gens + [g]
        s = _closure(G, trial)
        if s > size:
            gens, size = trial, s
    return gens


# -- classes ----------------------------------------------------------------------------------

def conjugacy_classes(G: MatGroup) -> list[tuple[Matrix, int]]:
    """(representative, size) for every class, representatives in element order."""
    if G._classes is not None:
        return G._classes
    F, n = G.field, G.n
    conj_pairs = []
    for g in G.generators:
        ginv = mat_pow(F, n, g, element_order(G, g) - 1)
        conj_pairs.append((g, ginv))
    seen = [False] * G.order
    classes = []
    for i, x in enumerate(G.elements):
        if seen[i]:
            continue
        seen[i] = True
        queue = deque([x])
        size = 1
        while queue:
            y = queue.popleft()
            for g, ginv in conj_pairs:
                z = mat_mul(F, n, mat_mul(F, n, ginv, y), g)
                k = G.index[z]
                if not seen[k]:
                    seen[k] = True
                    size += 1
                    queue.append(z)
        classes.append((x, size))
    if sum(s for _, s in classes) != G.order:
        raise AssertionError("class sizes do not add up to the group order")
    G._classes = classes
    return classes


def class_count(G: MatGroup) -> int:
    return len(conjugacy_classes(G))


def centralizer_order(G: MatGroup, g: Matrix) -> int:
    """|C_G(g)|, counted directly."""
    F, n = G.field, G.n
    return sum(1 for h in G.elements if mat_mul(F, n, g, h) == mat_mul(F, n, h, g))


def _is_p_power(k: int, p: int) -> bool:
    while k % p == 0:
        k //= p
    return k == 1


def unipotent_class_count(G: MatGroup) -> int:
    """Classes of elements of p-power order; the characteristic polynomial
    test (x - 1)^n is checked to agree."""
    F, n = G.field, G.n
    unip = MonicPoly.x_minus(F, 1) ** n
    count = 0
    for rep, _ in conjugacy_classes(G):
        by_order = _is_p_power(element_order(G, rep), F.p)
        by_poly = charpoly(F, n, rep) == unip
        if by_order != by_poly:
            raise AssertionError(f"unipotence tests disagree on {rep}")
        count += by_order
    return count


@dataclass
class ClassRecord:
    representative: Matrix
    size: int
    order: int
    semisimple: bool
    charpoly: MonicPoly
    centralizer: int


def class_records(G: MatGroup) -> list[ClassRecord]:
    out = []
    for rep, size in conjugacy_classes(G):
        o = element_order(G, rep)
        out.append(ClassRecord(rep, size, o, o % G.field.p != 0, charpoly(G.field, G.n, rep), G.order // size))
    return out


def family_of(G: MatGroup, P: MonicPoly) -> FamilySpec:
    """The family the characteristic polynomial P of an element of G lies in."""
    if G.case == "GL":
        return FamilySpec("L", G.n, G.q, P.constant)
    if G.case == "SL":
        return FamilySpec("L", G.n, G.q)
    if G.case == "SU":
        return FamilySpec("U", G.n, G.q)
    return FamilySpec("O", G.n, G.q)


@dataclass
class FiberReport:
    group: str
    fibers: dict[MonicPoly, tuple[int, int]]  # charpoly -> (classes, semisimple classes)
    in_family: dict[MonicPoly, bool]
    max_semisimple: int
    bound: int = 4

    @property
    def passed(self) -> bool:
        return self.max_semisimple <= self.bound and all(self.in_family.values())


def charpoly_fiber_report(G: MatGroup) -> FiberReport:
    """Group classes by characteristic polynomial and count semisimple ones."""
    total: Counter = Counter()
    semi: Counter = Counter()
    for rec in class_records(G):
        total[rec.charpoly] += 1
        semi[rec.charpoly] += rec.semisimple
    fibers = {P: (total[P], semi[P]) for P in sorted(total, key=lambda P: P.sort_key())}
    in_family = {P: membership(P, family_of(G, P)) for P in fibers}
    return FiberReport(f"{G.case}{G.n}({G.q})", fibers, in_family, max(semi.values(), default=0))
