"""Shared test helpers: independent oracles and random generators.

The oracles here deliberately avoid the library's own normal-form machinery:
dense polynomial division over Fraction lists, and numeric evaluation of
both sides of an identity at several generic rational points (q = r^2 for
rational r, so q^(1/2) stays rational).
"""

import random
from fractions import Fraction

import pytest

from homvir.qfield import HalfInt, LaurentPoly, QRat, ZERO, ONE, QRat as _QR
from homvir.superalg import (
    EVEN,
    ODD,
    AlgebraSpec,
    BasisVector,
    CENTRAL,
    Element,
    G,
    L,
)
from homvir.cochain import ADJOINT, SCALAR, Cochain


def dense_divide(num: list[Fraction], den: list[Fraction]) -> list[Fraction]:
    """Plain long division of coefficient lists (oracle for exact quotients);
    raises if the division is not exact."""
    num = [Fraction(v) for v in num]
    den = [Fraction(v) for v in den]
    while den and den[-1] == 0:
        den.pop()
    dn = len(den) - 1
    quo = [Fraction(0)] * (len(num) - dn)
    for i in range(len(num) - 1, dn - 1, -1):
        qc = num[i] / den[-1]
        quo[i - dn] = qc
        for j in range(dn + 1):
            num[i - dn + j] -= qc * den[j]
    assert not any(num[:dn]), "not exactly divisible"
    return quo


def poly_from_dense(coeffs, min_exp_twice=0) -> LaurentPoly:
    return LaurentPoly.from_terms(
        (HalfInt(min_exp_twice + 2 * i), Fraction(c)) for i, c in enumerate(coeffs) if c
    )


GENERIC_POINTS = [Fraction(3, 2), Fraction(5, 7), Fraction(-4, 3), Fraction(9, 5), Fraction(-7, 2)]


def assert_qrat_equal(lhs: QRat, rhs: QRat, points=GENERIC_POINTS):
    """Structural equality plus the differential test: both sides evaluated
    as exact rationals at generic q = r^2 (r not in {0, 1, -1})."""
    assert lhs == rhs, f"{lhs} != {rhs}"
    for r in points:
        assert lhs.eval_sqrt_q(r) == rhs.eval_sqrt_q(r)


def random_qrat(rng: random.Random, max_terms=4, max_exp=5) -> QRat:
    def poly():
        return LaurentPoly.from_terms(
            (HalfInt(rng.randint(-max_exp, max_exp)), Fraction(rng.randint(-6, 6), rng.randint(1, 4)))
            for _ in range(rng.randint(1, max_terms))
        )

    num = poly()
    den = poly()
    while den.is_zero:
        den = poly()
    return QRat(num, den)


def random_scalar_1cochain(spec: AlgebraSpec, rng: random.Random, window=3, parity=EVEN) -> Cochain:
    h = Cochain(spec, 1, parity, SCALAR, name="h-rand")
    for b in spec.basis_window(window):
        if spec.parity(b) == parity and rng.random() < 0.7:
            h.set((b,), QRat.const(rng.randint(-4, 4)))
    return h


def twist_eigen_targets(spec: AlgebraSpec, b: BasisVector) -> list[BasisVector]:
    lam = spec.alpha_scalar(b)
    out = []
    for d in (spec.degree(b), spec.degree(b) + 1, spec.degree(b) - 1, HalfInt(0)):
        for t in spec.basis_at_degree(d):
            if spec.alpha_scalar(t) == lam and t not in out:
                out.append(t)
    return out


def random_adjoint_1cochain(spec: AlgebraSpec, rng: random.Random, window=3, parity=EVEN) -> Cochain:
    """Finite-support twist-compatible 1-cochain (the complex property of the
    adjoint coboundary needs f to commute with the twist)."""
    f = Cochain(spec, 1, parity, ADJOINT, name="f-rand")
    for b in spec.basis_window(window):
        terms = [
            (t, QRat.const(rng.randint(-3, 3)))
            for t in twist_eigen_targets(spec, b)
            if (spec.parity(t) + spec.parity(b)) % 2 == parity
        ]
        if terms:
            f.set((b,), Element.from_terms(terms))
    return f


def random_adjoint_2cochain(spec: AlgebraSpec, rng: random.Random, window=2, parity=EVEN) -> Cochain:
    f = Cochain(spec, 2, parity, ADJOINT, name="f2-rand")
    basis = spec.basis_window(window)
    for i, b1 in enumerate(basis):
        for b2 in basis[i:]:
            if b1 == b2 and spec.parity(b1) == EVEN:
                continue
            tp = (spec.parity(b1) + spec.parity(b2) + parity) % 2
            terms = [
                (t, QRat.const(rng.randint(-2, 2)))
                for t in basis
                if spec.parity(t) == tp and rng.random() < 0.25
            ]
            if terms:
                f.set((b1, b2), Element.from_terms(terms))
    return f


@pytest.fixture
def rng():
    return random.Random(20259)
