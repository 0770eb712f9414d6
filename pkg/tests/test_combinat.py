import itertools
import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st
from sympy.functions.combinatorial.numbers import partition as sympy_partition

from charsparse.combinat import (
    SeqSpec, bipartition_count, count_symbols, decreasing_from, enumerate_symbols, eventually_decreasing,
    genfun_coeffs, master_constants, master_guarantee, max_product_partition, partition_count, partitions,
    reduce_symbol, subexp_probe, symbol_defect, symbol_rank, unipotent_char_count, unipotent_class_count,
    unipotent_count_series,
)
from charsparse.errors import DomainError, InvalidParameterError


def test_partition_examples():
    assert [partition_count(n) for n in (0, 5, 6)] == [1, 7, 11]
    assert sorted(partitions(4)) == sorted([(4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1)])


@given(st.integers(0, 400))
def test_partition_count_matches_sympy(n):
    assert partition_count(n) == sympy_partition(n)


@pytest.mark.parametrize("n", range(0, 16))
def test_partitions_are_exhaustive_and_distinct(n):
    ps = list(partitions(n))
    assert len(ps) == len(set(ps)) == partition_count(n)
    assert all(sum(p) == n and list(p) == sorted(p, reverse=True) for p in ps)


def test_genfun_examples():
    assert genfun_coeffs(SeqSpec("constant", 1), 6)[6] == 11
    assert genfun_coeffs(SeqSpec("constant", 0), 5) == [1, 0, 0, 0, 0, 0]
    assert genfun_coeffs(SeqSpec("constant", 4), 2)[2] == 14


@pytest.mark.parametrize("m", range(0, 7))
def test_genfun_four_counts_quadruples(m):
    brute = 0
    for sizes in itertools.product(range(m + 1), repeat=4):
        if sum(sizes) == m:
            brute += math.prod(partition_count(s) for s in sizes)
    assert genfun_coeffs(SeqSpec("constant", 4), m)[m] == brute


def test_genfun_identity_sequence_is_plane_partitions():
    # prod (1 - z^i)^(-i) counts plane partitions: 1, 1, 3, 6, 13, 24, 48
    assert genfun_coeffs(SeqSpec("identity"), 6) == [1, 1, 3, 6, 13, 24, 48]


def _max_product_brute(a, b, k):
    best = None
    for lam in partitions(k):
        mult = {x: lam.count(x) for x in set(lam)}
        if b is not None and any(e > b.term(j) for j, e in mult.items()):
            continue
        v = math.prod(a.term(x) for x in lam)
        best = v if best is None else max(best, v)
    return best


@pytest.mark.parametrize("k", range(1, 13))
def test_max_product_against_brute_force(k):
    ident, one = SeqSpec("identity"), SeqSpec("constant", 1)
    assert max_product_partition(ident, None, k) == _max_product_brute(ident, None, k)
    assert max_product_partition(ident, one, k) == _max_product_brute(ident, one, k)
    explicit = SeqSpec("explicit", 2, (1, 3, 2, 5))
    assert max_product_partition(explicit, SeqSpec("constant", 2), k) == _max_product_brute(
        explicit, SeqSpec("constant", 2), k
    )


def test_max_product_examples():
    assert max_product_partition(SeqSpec("constant", 1), None, 7) == 1
    assert max_product_partition(SeqSpec("identity"), None, 4) == 4
    # distinct parts of 4: 4 and 3+1, so the maximum is 4
    assert max_product_partition(SeqSpec("identity"), SeqSpec("constant", 1), 4) == 4
    with pytest.raises(DomainError):
        max_product_partition(SeqSpec("identity"), SeqSpec("explicit", 0, (0,)), 3)


def test_unipotent_class_examples():
    assert unipotent_class_count("GL", 2) == 2
    assert unipotent_class_count("Sp", 1) == 3
    assert unipotent_class_count("SL_bound", 3) == 9
    assert unipotent_class_count("even_char_bound", 2) == 14
    with pytest.raises(InvalidParameterError):
        unipotent_class_count("E8", 2)


@pytest.mark.parametrize("kind", ["GL", "SL_bound", "Sp", "Sp_exact", "SO_plus", "SO_minus", "even_char_bound"])
def test_series_matches_partition_sums(kind):
    series = unipotent_count_series(kind, 9)
    assert list(series[1:]) == [unipotent_class_count(kind, r) for r in range(1, 10)]


def test_sp_exact_counts_for_odd_q():
    # Sp_2(q) and Sp_4(q), q odd, have 3 and 7 unipotent classes
    assert unipotent_class_count("Sp_exact", 1) == 3
    assert unipotent_class_count("Sp_exact", 2) == 7


def test_symbol_statistics():
    assert symbol_rank((0, 1), (1,)) == 1
    assert symbol_defect((0, 1), (1,)) == 1
    assert reduce_symbol((0, 2), (0,)) == ((), (1,))
    assert reduce_symbol((3,), (1, 2)) == ((3,), (1, 2))


@pytest.mark.parametrize("rank", range(0, 7))
@pytest.mark.parametrize("defect", [0, 1, 2, 3, 4])
def test_symbol_counts_saturate(rank, defect):
    base = enumerate_symbols(rank, defect)
    assert enumerate_symbols(rank, defect, bound=2 * rank + defect + 8) == base
    for S, T in base:
        assert symbol_rank(S, T) == rank and symbol_defect(S, T) == defect


@pytest.mark.parametrize("r", range(0, 8))
def test_symbols_of_defect_one_are_bipartitions(r):
    assert count_symbols(r, 1) == bipartition_count(r)


def test_unipotent_character_counts():
    assert unipotent_char_count("A", 5) == 7
    assert [unipotent_char_count("BC", r) for r in range(1, 7)] == [2, 6, 12, 25, 46, 86]
    assert [unipotent_char_count("D", r) for r in range(2, 6)] == [4, 5, 14, 20]
    # D_2 = A_1 x A_1 and D_3 = A_3; the twisted forms 2D_2, 2D_3 are A_1(q^2) and 2A_3
    assert unipotent_char_count("2D", 2) == 2
    assert unipotent_char_count("2D", 3) == 5
    with pytest.raises(InvalidParameterError):
        unipotent_char_count("G2", 2)


def test_master_constants_examples():
    M, delta = master_constants(Fraction(1, 10), 3)
    assert M == 81 and delta == Fraction(1, 10) / (2 * 81 * 81 + 4) / 2
    assert master_constants(Fraction(1, 2), 100)[0] == 100
    with pytest.raises(InvalidParameterError):
        master_constants(Fraction(3, 2), 1)


@given(st.fractions(min_value=Fraction(1, 10**4), max_value=Fraction(9999, 10**4)), st.integers(1, 10**4))
def test_master_constants_guarantee(eps, N):
    M, delta = master_constants(eps, N)
    assert M >= N and M > 8 / eps
    assert delta < eps / (2 * M * M + 4)
    assert master_guarantee(M, delta) < eps


@given(st.fractions(min_value=Fraction(1, 1000), max_value=Fraction(1, 2)),
       st.fractions(min_value=Fraction(1, 1000), max_value=Fraction(1, 2)))
def test_master_delta_is_monotone(e1, e2):
    if e1 < e2:
        assert master_constants(e1, 1)[1] < master_constants(e2, 1)[1]


def test_probe_examples():
    halving = subexp_probe(SeqSpec("constant", 1), 2, 5)
    assert halving[1:] == [Fraction(1, 2**m) for m in range(1, 6)]
    growth = subexp_probe([2**m for m in range(41)], Fraction(3, 2), 40)
    assert decreasing_from(growth) is None and not eventually_decreasing(growth)
    p = subexp_probe([partition_count(m) for m in range(201)], Fraction(3, 2), 200)
    assert p[-1] < p[0]
    with pytest.raises(InvalidParameterError):
        subexp_probe(SeqSpec("constant", 1), 1, 5)
