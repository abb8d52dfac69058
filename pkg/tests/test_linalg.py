"""Exact elimination: ranks, kernels, solutions, certificates, determinism."""

import random
from fractions import Fraction

import pytest

from homvir.linalg import (
    LinearSystem,
    eliminate,
    kernel,
    rank,
    residual_rows,
    solve,
    span_contains,
    verify_rank_numeric,
)
from homvir.qfield import HalfInt, LaurentPoly, QRat, ZERO, ONE, parse_scalar

from conftest import random_qrat


def qs(text):
    return parse_scalar(text)


def system_from_lists(rows, ncols):
    sysm = LinearSystem(ncols)
    for row in rows:
        sysm.add_row({i: qs(v) for i, v in row.items()})
    return sysm


def test_rank_of_proportional_rows():
    sysm = system_from_lists([{0: "1", 1: "q"}, {0: "q", 1: "q^2"}], 2)
    assert rank(sysm) == 1


def test_rank_full():
    sysm = system_from_lists([{0: "1", 1: "q"}, {1: "1 - q"}], 2)
    assert rank(sysm) == 2
    assert kernel(sysm) == []


def test_kernel_annihilates_rows():
    sysm = system_from_lists([{0: "1 + q", 1: "q", 2: "1"}, {0: "q", 2: "1 - q"}], 3)
    for vec in kernel(sysm):
        assert residual_rows(sysm, vec) == []


def test_solve_and_verify():
    sysm = system_from_lists([{0: "1", 1: "q"}, {1: "1"}], 2)
    rhs = {0: qs("1 + q"), 1: qs("1")}
    res = solve(sysm, rhs)
    assert res.consistent
    assert residual_rows(sysm, res.solution, rhs) == []


def test_unsat_certificate():
    sysm = system_from_lists([{0: "1 - q"}, {0: "q - q^2"}], 1)
    res = solve(sysm, {0: qs("1"), 1: qs("q^2")})
    assert not res.consistent
    cert = res.certificate()
    assert cert["rank"] == 1 and cert["rank_augmented"] == 2
    assert cert["numeric_rank_checks"]


def test_empty_column_space_unsat():
    sysm = LinearSystem(0)
    sysm.add_row({})
    res = solve(sysm, {0: ONE})
    assert not res.consistent


def test_span_contains():
    v1 = {0: qs("1"), 1: qs("q")}
    v2 = {1: qs("1 - q")}
    assert span_contains([v1, v2], {0: qs("2"), 1: qs("q + 1")})
    assert not span_contains([v2], {0: qs("1")})


@pytest.mark.parametrize("trial", range(25))
def test_randomized_rank_kernel_solve(trial):
    rng = random.Random(1000 + trial)
    n, m = rng.randint(1, 7), rng.randint(1, 7)
    sysm = LinearSystem(m)
    for _ in range(n):
        row = {}
        for j in range(m):
            if rng.random() < 0.5:
                x = random_qrat(rng, max_terms=3, max_exp=3)
                if not x.is_zero:
                    row[j] = x
        sysm.add_row(row)
    r = rank(sysm)  # raises on symbolic/numeric mismatch
    ker = kernel(sysm)
    assert len(ker) == m - r
    for vec in ker:
        assert residual_rows(sysm, vec) == []
    x = {j: QRat.const(rng.randint(-3, 3)) for j in range(m)}
    rhs = {}
    for i, row in enumerate(sysm.rows):
        acc = ZERO
        for c, a in row.items():
            acc = acc + a * x.get(c, ZERO)
        if not acc.is_zero:
            rhs[i] = acc
    res = solve(sysm, rhs)
    assert res.consistent
    assert residual_rows(sysm, res.solution, rhs) == []


def test_deterministic_pivot_sequence():
    def build():
        rng = random.Random(7)
        sysm = LinearSystem(5)
        for _ in range(6):
            sysm.add_row({j: random_qrat(rng, 2, 2) for j in range(5) if rng.random() < 0.6})
        return sysm

    e1 = eliminate(build())
    e2 = eliminate(build())
    assert e1.pivots == e2.pivots
    assert e1.echelon == e2.echelon


def test_numeric_crosscheck_catches_wrong_rank():
    sysm = system_from_lists([{0: "1"}, {0: "q"}], 1)
    with pytest.raises(ArithmeticError):
        verify_rank_numeric(sysm, 2)
