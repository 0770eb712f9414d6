import itertools
import math

import pytest
from hypothesis import given, settings, strategies as st

from charsparse.errors import BudgetError, InvalidParameterError, UnsupportedFamilyError
from charsparse.families import (
    CSV_COLUMNS, FamilySpec, cardinality, enumerate_family, log_bound_holds, member_at, membership,
    rho_tail_bound_holds, sample, stat_alpha_ge, stat_factor_degree_divisible, stat_rho_ge, stat_zeta_symmetric,
    stats_to_csv, zeta_bound_holds,
)
from charsparse.poly import MonicPoly, star

SMALL = [("L", n, q) for n in range(1, 5) for q in (2, 3, 4, 5)]
SMALL += [("U", n, q) for n in range(1, 5) for q in (2, 3)]
SMALL += [("O", n, q) for n in (2, 4, 6) for q in (2, 3, 4)]


def _brute_members(spec):
    """Filter every monic polynomial of the right degree and constant term."""
    F = spec.field
    out = set()
    for rest in itertools.product(range(F.q), repeat=spec.n - 1):
        P = MonicPoly(F, (spec.c,) + rest)
        if spec.kind == "L" or star(P, spec.q) == P:
            out.add(P)
    return out


@pytest.mark.parametrize("kind, n, q", SMALL)
def test_enumeration_matches_brute_filter(kind, n, q):
    spec = FamilySpec(kind, n, q)
    members = list(enumerate_family(spec))
    assert len(members) == cardinality(spec)
    assert set(members) == _brute_members(spec)


def test_non_default_constants():
    spec = FamilySpec("L", 3, 5, 2)
    assert all(P.constant == 2 for P in enumerate_family(spec))
    # c * conj(c) = 1 in F_9 means c^4 = 1
    spec = FamilySpec("U", 3, 3, 2)
    members = set(enumerate_family(spec))
    assert len(members) == 9 and members == _brute_members(spec)
    F = spec.field
    bad = next(c for c in F.nonzero() if F.pow(c, 4) != 1)
    with pytest.raises(InvalidParameterError):
        FamilySpec("U", 3, 3, bad)


def test_spec_validation():
    for args in [("X", 2, 3), ("L", 0, 3), ("L", 2, 6), ("O", 3, 3), ("L", 2, 3, 0)]:
        with pytest.raises(InvalidParameterError):
            FamilySpec(*args)
    with pytest.raises(InvalidParameterError):
        FamilySpec("O", 4, 3, 2)


@given(st.sampled_from(SMALL), st.data())
def test_member_at_is_the_enumeration_order(params, data):
    spec = FamilySpec(*params)
    pop = cardinality(spec)
    i = data.draw(st.integers(0, pop - 1))
    members = list(enumerate_family(spec))
    assert member_at(spec, i) == members[i]
    assert membership(member_at(spec, i), spec)


def test_member_at_out_of_range():
    spec = FamilySpec("U", 3, 2)
    member_at(spec, cardinality(spec) - 1)
    with pytest.raises(IndexError):
        member_at(spec, cardinality(spec))


def test_sampling_is_reproducible():
    spec = FamilySpec("L", 30, 7)
    a = list(sample(spec, 20, seed=5))
    assert a == list(sample(spec, 20, seed=5))
    assert a != list(sample(spec, 20, seed=6))
    assert all(membership(P, spec) for P in a)


def test_enumeration_budget():
    with pytest.raises(BudgetError):
        enumerate_family(FamilySpec("L", 12, 5), cap=1000)


def _non_squarefree_brute(spec):
    """Members divisible by the square of a nonconstant polynomial, by
    multiplying out every Q^2 R."""
    F = spec.field
    hits = set()
    for d in range(1, spec.n // 2 + 1):
        for qlow in itertools.product(range(F.q), repeat=d):
            Q = MonicPoly(F, qlow)
            for rlow in itertools.product(range(F.q), repeat=spec.n - 2 * d):
                hits.add(Q * Q * MonicPoly(F, rlow))
    return sum(1 for P in enumerate_family(spec) if P in hits)


@pytest.mark.parametrize("kind, n, q", [("L", 4, 3), ("U", 4, 2), ("O", 4, 3), ("L", 5, 2), ("O", 6, 2)])
def test_squarefree_counts_against_brute_force(kind, n, q):
    spec = FamilySpec(kind, n, q)
    assert stat_rho_ge(spec, 1).count == _non_squarefree_brute(spec)


def test_frozen_statistics():
    # computed by exhaustive enumeration and cross-checked above
    L, U, O = FamilySpec("L", 4, 3), FamilySpec("U", 4, 2), FamilySpec("O", 4, 3)
    assert [stat_rho_ge(L, m).count for m in (1, 2)] == [8, 6]
    assert [stat_rho_ge(U, m).count for m in (1, 2)] == [5, 4]
    assert [stat_rho_ge(O, m).count for m in (1, 2)] == [6, 4]
    assert stat_zeta_symmetric(L).count == 3
    assert stat_zeta_symmetric(U).count == 0
    assert stat_factor_degree_divisible(L, 2).count == 16
    assert stat_alpha_ge(L, 3).count == 3
    assert stat_rho_ge(L, 0).count == cardinality(L)


def test_statistics_pass_and_report():
    spec = FamilySpec("L", 5, 3)
    s = stat_rho_ge(spec, 2)
    assert s.mode == "exhaustive" and s.passed and s.examined == 81
    z = stat_zeta_symmetric(spec)
    assert z.passed
    f = stat_factor_degree_divisible(spec, 3)
    assert f.passed
    csv_text = stats_to_csv([s, z, f])
    lines = csv_text.strip().split("\n")
    assert lines[0].split(",") == list(CSV_COLUMNS)
    assert len(lines) == 4
    with pytest.raises(UnsupportedFamilyError):
        stat_zeta_symmetric(FamilySpec("O", 4, 3))


def test_sampled_mode():
    spec = FamilySpec("L", 20, 5)
    s = stat_rho_ge(spec, 2, samples=300, seed=1)
    assert s.mode == "sampled" and s.examined == 300 and s.seed == 1
    assert s.row()["seed"] == 1


def test_parallel_matches_serial():
    spec = FamilySpec("L", 6, 3)
    assert stat_rho_ge(spec, 1, workers=2).count == stat_rho_ge(spec, 1).count


@given(st.integers(0, 10**4), st.integers(1, 10**4), st.integers(1, 40), st.integers(1, 40))
def test_log_bound_against_floats(count, pop, n, m):
    rhs = pop * (1 + math.log(n)) / m
    if abs(count - rhs) > 1e-6:
        assert log_bound_holds(count, pop, n, m) == (count < rhs)


@given(st.sampled_from("LUO"), st.integers(0, 10**5), st.integers(1, 10**5),
       st.sampled_from([2, 3, 4, 5, 7, 9]), st.integers(1, 30))
def test_rho_tail_bound_against_floats(kind, count, pop, q, m):
    K, e = {"L": (2, 2), "U": (4, 2), "O": (2, 4)}[kind]
    rhs = K * pop * q ** (-m / e)
    if abs(count - rhs) > 1e-6 * max(1, rhs):
        assert rho_tail_bound_holds(kind, count, pop, q, m) == (count < rhs)


def test_zeta_bound_edges():
    assert zeta_bound_holds(1, 4, 2)  # 1 < 2
    assert not zeta_bound_holds(2, 4, 2)
    assert zeta_bound_holds(2, 3, 3)  # 2 < 2 sqrt 3
    assert not zeta_bound_holds(4, 3, 3)


@settings(max_examples=30)
@given(st.sampled_from([("U", 3, 3), ("U", 4, 3), ("O", 6, 3)]), st.data())
def test_members_are_self_star(params, data):
    spec = FamilySpec(*params)
    P = member_at(spec, data.draw(st.integers(0, cardinality(spec) - 1)))
    assert star(P, spec.q) == P and P.constant == spec.c
