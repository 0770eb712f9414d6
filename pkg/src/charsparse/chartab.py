"""Character tables with exact cyclotomic values, and audits on them.

Built-in tables: SL_2(q) for every prime power q <= 256, PSL_2(q) derived
from it (center-trivial characters, classes fused under multiplication by
-1), and GL_2(q) for q <= 16.  Every table is validated on construction:
class sizes, trivial first row, degrees in the identity column, and exact row
and column orthogonality.

Each value is stored at the conductor given by the element order of its
column (character values at g lie in Q(zeta_{o(g)})).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Any, Mapping

from .cyclo import CycInt, divisible_by_int, gallagher_check_divisor
from .errors import InvalidParameterError, PreconditionError, ValidationError
from .ff import field_make, prime_power
from .grouparith import burnside_d, order_gl
from .ntheory import valuation

SL2_CAP = 256
GL2_CAP = 16


@dataclass(frozen=True)
class ClassInfo:
    name: str
    size: int
    element_order: int


@dataclass
class CharTable:
    group: str
    order: int
    classes: list[ClassInfo]
    char_names: list[str]
    values: list[list[CycInt]]  # values[i][j] = chi_i(g_j)
    annotations: dict[str, dict[str, int]] = field(default_factory=dict)
    center_action: list[int] | None = None  # class of z g for SL_2 tables

    @property
    def exponent(self) -> int:
        return math.lcm(*(c.element_order for c in self.classes))

    @property
    def k(self) -> int:
        return len(self.classes)

    @property
    def degrees(self) -> list[int]:
        return [row[0].rational_value() for row in self.values]

    def __eq__(self, other) -> bool:
        if not isinstance(other, CharTable):
            return NotImplemented
        return (
            self.group == other.group
            and self.order == other.order
            and self.classes == other.classes
            and self.char_names == other.char_names
            and self.values == other.values
            and self.annotations == other.annotations
        )


@dataclass
class SparsityReport:
    group: str
    total_entries: int
    nonzero_entries: int
    sigma: Fraction
    zeros_per_character: dict[str, int]
    zeros_per_class: dict[str, int]


# -- exact sums ---------------------------------------------------------------------

def at_conductor(v: CycInt, N: int) -> CycInt:
    """v rewritten in Z[zeta_N]; v must lie in Q(zeta_N)."""
    if v.N == N:
        return v
    L = math.lcm(v.N, N)
    w = v.lift(L)
    s = L // N
    if any(E % s for E in w.terms):
        raise InvalidParameterError(f"{v!r} does not lie in Q(zeta_{N})")
    return CycInt(N, {E // s: c for E, c in w.terms.items()}, _canonical=True)


class _Accumulator:
    """Sum of products of cyclotomic integers, reduced once at the end."""

    def __init__(self):
        self.raw: dict[int, dict[int, int]] = {}

    def add_product(self, a: CycInt, b_conj: CycInt, weight: int) -> None:
        if a.N == b_conj.N:
            N, sa, sb = a.N, 1, 1
        else:
            N = math.lcm(a.N, b_conj.N)
            sa, sb = N // a.N, N // b_conj.N
        bucket = self.raw.setdefault(N, {})
        for E1, c1 in a.terms.items():
            for E2, c2 in b_conj.terms.items():
                E = (E1 * sa - E2 * sb) % N
                bucket[E] = bucket.get(E, 0) + weight * c1 * c2

    def value(self) -> CycInt:
        total = CycInt.from_int(0)
        for N, bucket in self.raw.items():
            total = total + CycInt(N, bucket)
        return total


def _row_inner(table: CharTable, i: int, j: int) -> CycInt:
    acc = _Accumulator()
    for c, a, b in zip(table.classes, table.values[i], table.values[j]):
        if a.terms and b.terms:
            acc.add_product(a, b, c.size)
    return acc.value()


def _column_inner(table: CharTable, g: int, h: int) -> CycInt:
    acc = _Accumulator()
    for row in table.values:
        a, b = row[g], row[h]
        if a.terms and b.terms:
            acc.add_product(a, b, 1)
    return acc.value()


def row_orthogonality_check(table: CharTable) -> tuple[int, int] | None:
    """First pair (i, j) violating row orthogonality, or None."""
    k = table.k
    for i in range(k):
        for j in range(i, k):
            want = table.order if i == j else 0
            if _row_inner(table, i, j) != want:
                return i, j
    return None


def column_orthogonality_failure(table: CharTable) -> tuple[int, int] | None:
    k = table.k
    for g in range(k):
        for h in range(g, k):
            want = table.order // table.classes[g].size if g == h else 0
            if _column_inner(table, g, h) != want:
                return g, h
    return None


def second_orthogonality_check(table: CharTable) -> bool:
    """Column orthogonality: sum_chi chi(g) conj chi(h) = delta |C_G(g)|."""
    return column_orthogonality_failure(table) is None


def validate_table(table: CharTable, orthogonality: bool = True) -> CharTable:
    """Check every table invariant, raising ValidationError at the first failure."""
    k = len(table.classes)
    if len(table.values) != k or len(table.char_names) != k:
        raise ValidationError(f"{table.group}: {len(table.values)} characters but {k} classes")
    if any(len(row) != k for row in table.values):
        raise ValidationError(f"{table.group}: a character has the wrong number of values")
    if len(set(table.char_names)) != k or len({c.name for c in table.classes}) != k:
        raise ValidationError(f"{table.group}: duplicate character or class names")
    if table.order < 1 or any(c.size < 1 or c.element_order < 1 for c in table.classes):
        raise ValidationError(f"{table.group}: sizes and orders must be positive")
    if sum(c.size for c in table.classes) != table.order:
        raise ValidationError(f"{table.group}: class sizes sum to {sum(c.size for c in table.classes)}, not the order {table.order}")
    for c in table.classes:
        if table.order % c.size:
            raise ValidationError(f"{table.group}: class {c.name} size {c.size} does not divide the order")
    first = table.classes[0]
    if first.size != 1 or first.element_order != 1:
        raise ValidationError(f"{table.group}: the first class must be the identity")
    if any(v != 1 for v in table.values[0]):
        raise ValidationError(f"{table.group}: the first character is not trivial")
    for name, row in zip(table.char_names, table.values):
        d = row[0].rational_value()
        if d is None or d < 1:
            raise ValidationError(f"{table.group}: degree of {name} is not a positive integer")
        for c, v in zip(table.classes, row):
            if v.N != c.element_order:
                try:
                    at_conductor(v, c.element_order)
                except InvalidParameterError:
                    raise ValidationError(
                        f"{table.group}: {name} at {c.name} is outside Q(zeta_{c.element_order})"
                    ) from None
    if sum(d * d for d in table.degrees) != table.order:
        raise ValidationError(f"{table.group}: squared degrees do not sum to the order")
    if orthogonality:
        bad = row_orthogonality_check(table)
        if bad is not None:
            i, j = bad
            raise ValidationError(
                f"{table.group}: row orthogonality fails for {table.char_names[i]}, {table.char_names[j]}"
            )
        bad = column_orthogonality_failure(table)
        if bad is not None:
            g, h = bad
            raise ValidationError(
                f"{table.group}: column orthogonality fails for {table.classes[g].name}, {table.classes[h].name}"
            )
    return table


# -- built-in tables ------------------------------------------------------------------

def _two_cos(N: int, E: int) -> CycInt:
    """zeta_N^E + zeta_N^-E."""
    return CycInt(N, {E % N: 1}) + CycInt(N, {-E % N: 1})


def _trace_to_prime(F, x: int) -> int:
    t, y = 0, x
    for _ in range(F.k):
        t = F.add(t, y)
        y = F.pow(y, F.p)
    return t


def _gauss_period(q: int) -> CycInt:
    """Sum of zeta_p^{Tr s} over the nonzero squares s of F_q.

    With G the quadratic Gauss sum of F_q, this equals (G - 1)/2, and
    G^2 = (-1)^((q-1)/2) q.
    """
    F = field_make(q)
    acc: dict[int, int] = {}
    for e in range(0, q - 1, 2):
        t = _trace_to_prime(F, F.exp(e))
        acc[t] = acc.get(t, 0) + 1
    return CycInt(F.p, acc)


def _central(omega: int, v: CycInt) -> CycInt:
    return v if omega == 1 else -v


@lru_cache(maxsize=None)
def table_sl2(q: int) -> CharTable:
    """Character table of SL_2(q) for a prime power q <= 256."""
    pp = prime_power(q)
    if q > SL2_CAP:
        raise InvalidParameterError(f"SL_2 tables are built for q <= {SL2_CAP}")
    p = pp.p
    if p == 2:
        return _table_sl2_even(q)
    eps = 1 if (q - 1) % 4 == 0 else -1
    one = CycInt.from_int(1)
    order = q * (q * q - 1)
    half = (q * q - 1) // 2

    def ord_torus(n, l):
        return n // math.gcd(l, n)

    classes = [
        ClassInfo("1", 1, 1),
        ClassInfo("z", 1, 2),
        ClassInfo("c", half, p),
        ClassInfo("d", half, p),
        ClassInfo("zc", half, 2 * p),
        ClassInfo("zd", half, 2 * p),
    ]
    a_range = range(1, (q - 3) // 2 + 1)
    b_range = range(1, (q - 1) // 2 + 1)
    classes += [ClassInfo(f"a{l}", q * (q + 1), ord_torus(q - 1, l)) for l in a_range]
    classes += [ClassInfo(f"b{m}", q * (q - 1), ord_torus(q + 1, m)) for m in b_range]
    center = [1, 0, 4, 5, 2, 3]
    center += [6 + ((q - 1) // 2 - l) - 1 for l in a_range]
    nb = 6 + len(a_range)
    center += [nb + ((q + 1) // 2 - m) - 1 for m in b_range]

    eta0 = _gauss_period(q)  # (G - 1)/2
    plus = eta0 + 1          # (1 + G)/2
    minus = -eta0            # (1 - G)/2

    rows: list[tuple[str, list[CycInt]]] = []

    def make_row(name, deg, omega, at_c, at_d, at_a, at_b):
        vals = [CycInt.from_int(deg), CycInt.from_int(omega * deg), at_c, at_d,
                _central(omega, at_c), _central(omega, at_d)]
        vals += [at_a(l) for l in a_range]
        vals += [at_b(m) for m in b_range]
        rows.append((name, vals))

    zero = CycInt.from_int(0)
    make_row("1", 1, 1, one, one, lambda l: one, lambda m: one)
    make_row("St", q, 1, zero, zero, lambda l: one, lambda m: -one)
    for i in range(1, (q - 3) // 2 + 1):
        make_row(f"chi{i}", q + 1, (-1) ** i, one, one,
                 lambda l, i=i: _two_cos(q - 1, i * l), lambda m: zero)
    for j in range(1, (q - 1) // 2 + 1):
        make_row(f"theta{j}", q - 1, (-1) ** j, -one, -one,
                 lambda l: zero, lambda m, j=j: -_two_cos(q + 1, j * m))
    make_row("xi1", (q + 1) // 2, eps, plus, minus,
             lambda l: CycInt.from_int((-1) ** l), lambda m: zero)
    make_row("xi2", (q + 1) // 2, eps, minus, plus,
             lambda l: CycInt.from_int((-1) ** l), lambda m: zero)
    make_row("eta1", (q - 1) // 2, -eps, plus - 1, minus - 1,
             lambda l: zero, lambda m: CycInt.from_int((-1) ** (m + 1)))
    make_row("eta2", (q - 1) // 2, -eps, minus - 1, plus - 1,
             lambda l: zero, lambda m: CycInt.from_int((-1) ** (m + 1)))

    values = [[at_conductor(v, c.element_order) for v, c in zip(vals, classes)] for _, vals in rows]
    table = CharTable(f"SL2({q})", order, classes, [n for n, _ in rows], values, center_action=center)
    return validate_table(table)


def _table_sl2_even(q: int) -> CharTable:
    one = CycInt.from_int(1)
    zero = CycInt.from_int(0)
    classes = [ClassInfo("1", 1, 1), ClassInfo("u", q * q - 1, 2)]
    a_range = range(1, (q - 2) // 2 + 1)
    b_range = range(1, q // 2 + 1)
    classes += [ClassInfo(f"a{l}", q * (q + 1), (q - 1) // math.gcd(l, q - 1)) for l in a_range]
    classes += [ClassInfo(f"b{m}", q * (q - 1), (q + 1) // math.gcd(m, q + 1)) for m in b_range]
    rows = []

    def make_row(name, deg, at_u, at_a, at_b):
        rows.append((name, [CycInt.from_int(deg), at_u] + [at_a(l) for l in a_range] + [at_b(m) for m in b_range]))

    make_row("1", 1, one, lambda l: one, lambda m: one)
    make_row("St", q, zero, lambda l: one, lambda m: -one)
    for i in range(1, (q - 2) // 2 + 1):
        make_row(f"chi{i}", q + 1, one, lambda l, i=i: _two_cos(q - 1, i * l), lambda m: zero)
    for j in range(1, q // 2 + 1):
        make_row(f"theta{j}", q - 1, -one, lambda l: zero, lambda m, j=j: -_two_cos(q + 1, j * m))
    values = [[at_conductor(v, c.element_order) for v, c in zip(vals, classes)] for _, vals in rows]
    table = CharTable(f"SL2({q})", q * (q * q - 1), classes, [n for n, _ in rows], values,
                      center_action=list(range(len(classes))))
    return validate_table(table)


@lru_cache(maxsize=None)
def table_psl2(q: int) -> CharTable:
    """PSL_2(q) from SL_2(q): keep center-trivial characters, fuse g with -g."""
    sl = table_sl2(q)
    if q % 2 == 0:
        t = CharTable(f"PSL2({q})", sl.order, sl.classes, sl.char_names, sl.values)
        return t
    center = sl.center_action
    keep_rows = [i for i, row in enumerate(sl.values) if row[1] == row[0]]
    keep_cols, classes = [], []
    seen = set()
    for j, c in enumerate(sl.classes):
        if j in seen:
            continue
        partner = center[j]
        seen.update((j, partner))
        size = c.size // 2 if partner == j else c.size
        o = c.element_order
        order = o // 2 if o % 2 == 0 else o
        name = c.name if partner == j else f"{c.name}~{sl.classes[partner].name}"
        if j == 0:
            name = "1"
        keep_cols.append(j)
        classes.append(ClassInfo(name, size, order))
    values = [[at_conductor(sl.values[i][j], cls.element_order) for j, cls in zip(keep_cols, classes)]
              for i in keep_rows]
    table = CharTable(f"PSL2({q})", sl.order // 2, classes, [sl.char_names[i] for i in keep_rows], values)
    return validate_table(table)


@lru_cache(maxsize=None)
def table_gl2(q: int) -> CharTable:
    """Character table of GL_2(q) for prime powers q <= 16.

    Elements of F_q^x and F_{q^2}^x are handled through exponents of a fixed
    generator gamma of F_{q^2}^x, with F_q^x generated by gamma^(q+1).
    Annotations record, for each character, the centralizer order of the
    semisimple class attached to it.
    """
    pp = prime_power(q)
    if q > GL2_CAP:
        raise InvalidParameterError(f"GL_2 tables are built for q <= {GL2_CAP}")
    p = pp.p
    n1, n2 = q - 1, q * q - 1

    def ordq(t):
        return n1 // math.gcd(t, n1)

    classes: list[ClassInfo] = []
    kinds: list[tuple] = []
    for t in range(n1):
        classes.append(ClassInfo(f"a{t}", 1, ordq(t)))
        kinds.append(("a", t))
    for t in range(n1):
        classes.append(ClassInfo(f"b{t}", q * q - 1, math.lcm(ordq(t), p)))
        kinds.append(("b", t))
    for t in range(n1):
        for u in range(t + 1, n1):
            classes.append(ClassInfo(f"c{t}_{u}", q * q + q, math.lcm(ordq(t), ordq(u))))
            kinds.append(("c", t, u))
    seen = set()
    for s in range(n2):
        if s % (q + 1) == 0 or s in seen:
            continue
        seen.update((s, s * q % n2))
        classes.append(ClassInfo(f"d{s}", q * q - q, n2 // math.gcd(s, n2)))
        kinds.append(("d", s))

    def alpha(i, t):
        return CycInt(n1, {i * t % n1: 1})

    def phi(k, s):
        return CycInt(n2, {k * s % n2: 1})

    zero = CycInt.from_int(0)
    rows: list[tuple[str, list[CycInt]]] = []
    ann: dict[str, dict[str, int]] = {}
    gl = order_gl(2, q)

    for i in range(n1):
        U, V = [], []
        for kd in kinds:
            if kd[0] == "a":
                U.append(alpha(2 * i, kd[1]))
                V.append(alpha(2 * i, kd[1]) * q)
            elif kd[0] == "b":
                U.append(alpha(2 * i, kd[1]))
                V.append(zero)
            elif kd[0] == "c":
                v = alpha(i, kd[1] + kd[2])
                U.append(v)
                V.append(v)
            else:
                v = alpha(i, kd[1])  # z^(q+1) has exponent s in F_q^x
                U.append(v)
                V.append(-v)
        rows += [(f"U{i}", U), (f"V{i}", V)]
        ann[f"U{i}"] = {"centralizer_order": gl}
        ann[f"V{i}"] = {"centralizer_order": gl}
    for i in range(n1):
        for j in range(i + 1, n1):
            W = []
            for kd in kinds:
                if kd[0] == "a":
                    W.append(alpha(i + j, kd[1]) * (q + 1))
                elif kd[0] == "b":
                    W.append(alpha(i + j, kd[1]))
                elif kd[0] == "c":
                    t, u = kd[1], kd[2]
                    W.append(alpha(i, t) * alpha(j, u) + alpha(i, u) * alpha(j, t))
                else:
                    W.append(zero)
            rows.append((f"W{i}_{j}", W))
            ann[f"W{i}_{j}"] = {"centralizer_order": (q - 1) ** 2}
    seen = set()
    for k in range(n2):
        if k % (q + 1) == 0 or k in seen:
            continue
        seen.update((k, k * q % n2))
        X = []
        for kd in kinds:
            if kd[0] == "a":
                X.append(phi(k, (q + 1) * kd[1]) * (q - 1))
            elif kd[0] == "b":
                X.append(-phi(k, (q + 1) * kd[1]))
            elif kd[0] == "c":
                X.append(zero)
            else:
                s = kd[1]
                X.append(-(phi(k, s) + phi(k, s * q)))
        rows.append((f"X{k}", X))
        ann[f"X{k}"] = {"centralizer_order": q * q - 1}

    # the trivial character U0 first
    values = [[at_conductor(v, c.element_order) for v, c in zip(vals, classes)] for _, vals in rows]
    table = CharTable(f"GL2({q})", gl, classes, [n for n, _ in rows], values, annotations=ann)
    return validate_table(table)


def supported_q(kind: str, upto: int) -> list[int]:
    cap = GL2_CAP if kind == "gl2" else SL2_CAP
    out = []
    for q in range(2, min(upto, cap) + 1):
        try:
            prime_power(q)
        except InvalidParameterError:
            continue
        out.append(q)
    return out


def builtin_table(group: str, q: int) -> CharTable:
    builders = {"sl2": table_sl2, "psl2": table_psl2, "gl2": table_gl2}
    if group not in builders:
        raise InvalidParameterError(f"unknown built-in group {group!r}; expected sl2, psl2 or gl2")
    return builders[group](q)


# -- documents ---------------------------------------------------------------------------

def save_table(table: CharTable) -> dict:
    doc: dict[str, Any] = {
        "group": table.group,
        "order": table.order,
        "exponent": table.exponent,
        "classes": [{"name": c.name, "size": c.size, "element_order": c.element_order} for c in table.classes],
        "characters": [
            {"name": n, "values": [v.to_json() for v in row]} for n, row in zip(table.char_names, table.values)
        ],
    }
    if table.annotations:
        doc["annotations"] = {k: dict(v) for k, v in table.annotations.items()}
    return doc


def dumps_table(table: CharTable) -> str:
    return json.dumps(save_table(table), sort_keys=True, separators=(",", ":"))


def load_table(document: Mapping | str) -> CharTable:
    """Parse and validate a table document (a mapping or its JSON text)."""
    if isinstance(document, str):
        try:
            document = json.loads(document)
        except json.JSONDecodeError as exc:
            raise ValidationError(f"not valid JSON: {exc}") from exc
    if not isinstance(document, Mapping):
        raise ValidationError("table document must be an object")
    for key in ("group", "order", "exponent", "classes", "characters"):
        if key not in document:
            raise ValidationError(f"missing field {key!r}")
    try:
        classes = [ClassInfo(str(c["name"]), int(c["size"]), int(c["element_order"])) for c in document["classes"]]
        names = [str(ch["name"]) for ch in document["characters"]]
        values = [[CycInt.from_json(v) for v in ch["values"]] for ch in document["characters"]]
    except (KeyError, TypeError, ValueError, InvalidParameterError) as exc:
        raise ValidationError(f"schema violation: {exc}") from exc
    order = document["order"]
    if not isinstance(order, int):
        raise ValidationError("order must be an integer")
    ann = document.get("annotations") or {}
    table = CharTable(str(document["group"]), order, classes, names, values,
                      annotations={k: dict(v) for k, v in ann.items()})
    if document["exponent"] != table.exponent:
        raise ValidationError(f"exponent {document['exponent']} does not match the class orders ({table.exponent})")
    return validate_table(table)


# -- statistics and audits -------------------------------------------------------------------

def sigma(table: CharTable) -> SparsityReport:
    """Fraction of nonzero entries of the table."""
    zc = {n: sum(1 for v in row if v.is_zero()) for n, row in zip(table.char_names, table.values)}
    zg = {c.name: sum(1 for row in table.values if row[j].is_zero()) for j, c in enumerate(table.classes)}
    total = table.k * table.k
    nonzero = total - sum(zc.values())
    return SparsityReport(table.group, total, nonzero, Fraction(nonzero, total), zc, zg)


def burnside_audit(table: CharTable) -> list[tuple[str, str, int]]:
    """Entries chi(g) != 0 not divisible by chi(1)/gcd(chi(1), |g^G|).

    Returns (character, class, d) triples; a valid table gives an empty list.
    """
    out = []
    for name, row in zip(table.char_names, table.values):
        deg = row[0].rational_value()
        for c, v in zip(table.classes, row):
            if v.is_zero():
                continue
            d = burnside_d(deg, c.size)
            if d > 1 and not divisible_by_int(v, d):
                out.append((name, c.name, d))
    return out


@dataclass
class GallagherReport:
    group: str
    checked: int
    min_trace: Fraction | None
    failures: list[tuple[str, str, int, Fraction]]

    @property
    def passed(self) -> bool:
        return not self.failures


def gallagher_audit(table: CharTable) -> GallagherReport:
    """T(|chi(g)|^2) >= d^2 on every nonzero entry, d the Burnside divisor
    (d = 1 gives the plain bound)."""
    failures = []
    low = None
    checked = 0
    for name, row in zip(table.char_names, table.values):
        deg = row[0].rational_value()
        for c, v in zip(table.classes, row):
            if v.is_zero():
                continue
            d = burnside_d(deg, c.size)
            value, ok = gallagher_check_divisor(v, d)
            checked += 1
            if low is None or value < low:
                low = value
            if not ok or value < 1:
                failures.append((name, c.name, d, value))
    return GallagherReport(table.group, checked, low, failures)


@dataclass
class OrdDegreeReport:
    group: str
    ell: int
    checked: list[str]
    exempt: list[str]
    failures: list[tuple[str, int, int]]

    @property
    def passed(self) -> bool:
        return not self.failures


def ord_degree_audit(table: CharTable, ell: int) -> OrdDegreeReport:
    """For characters whose attached centralizer order is prime to ell,
    check ord_ell(chi(1)) = ord_ell(|G|)."""
    if not table.annotations:
        raise PreconditionError(f"{table.group} carries no centralizer annotations")
    q = _q_of(table)
    if q is not None and q % ell == 0:
        raise PreconditionError(f"ell = {ell} divides q = {q}")
    checked, exempt, failures = [], [], []
    target = valuation(table.order, ell)
    for name, row in zip(table.char_names, table.values):
        info = table.annotations.get(name)
        if info is None:
            continue
        if info["centralizer_order"] % ell == 0:
            exempt.append(name)
            continue
        checked.append(name)
        got = valuation(row[0].rational_value(), ell)
        if got != target:
            failures.append((name, got, target))
    return OrdDegreeReport(table.group, ell, checked, exempt, failures)


def _q_of(table: CharTable) -> int | None:
    g = table.group
    if "(" in g and g.endswith(")"):
        try:
            return int(g[g.index("(") + 1 : -1])
        except ValueError:
            return None
    return None
