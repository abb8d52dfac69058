"""Acceptance suite: one test per criterion, one PASS/FAIL line per criterion.

All checks are exact (zero tolerance): identities are verified as structural
equalities of normalized rational functions, ranks are cross-validated by
numeric evaluation at generic rational points inside the solvers.

Criteria 4 and 6 contain sub-claims that exact computation refutes (the
coboundary of the odd index-shift derivation on the even central extension
equals the lifted odd cocycle; see README "Known red acceptance sub-claims"
and the analysis notes).  Those assertions are implemented faithfully as
stated and fail honestly after every sub-claim that does hold has been
verified; everything else passes.

Run with ``pytest tests/test_acceptance.py -s`` to see the summary lines.
"""

import itertools
import random
import time

import pytest

from homvir.qfield import HalfInt, QRat, ZERO, ONE, b_coefficient
from homvir.superalg import (
    ALGEBRA_BUILDERS,
    EVEN,
    ODD,
    CENTRAL,
    Element,
    G,
    L,
    algebra_by_name,
    check_hom_jacobi,
    check_skew,
    ramond,
    ramond_to_ns_iso_check,
    special_ramond,
    witt_q,
)
from homvir.cochain import (
    ADJOINT,
    SCALAR,
    Cochain,
    bracket_cochain,
    coboundary_solve,
    cocycle_check,
    cohomology_window_dims,
    delta1_adjoint,
    delta2_adjoint,
    delta_trivial,
    derivation_solve,
    derivation_span_contains,
    interior_tuples,
    lift_scalar_cochain,
    make_phi0,
    make_phi1,
    nr_bracket2,
    recurrence_check,
    recurrence_solve,
    standard_derivations,
    structure_system_check,
    vanishing_components_check,
    window_cocycle_space,
)
from homvir.deform import (
    deformation_check,
    equivalence_check,
    m2_deformation,
    m2_normal_form_scenario,
    m3_deformation,
    order_matrix_equals_delta2,
    skew_check,
    transport,
)

from conftest import random_adjoint_1cochain, random_scalar_1cochain

LEDGER = "see README 'Known red acceptance sub-claims'"


def summary(num: int, label: str, ok: bool, detail: str = ""):
    status = "PASS" if ok else "FAIL"
    print(f"ACCEPTANCE {num:02d} {label}: {status}" + (f" ({detail})" if detail else ""))


def test_criterion_01_axioms():
    window = 6
    details = []
    ok = True
    for name in sorted(ALGEBRA_BUILDERS):
        spec = algebra_by_name(name)
        t0 = time.time()
        skew = check_skew(spec, window)
        jac = check_hom_jacobi(spec, window)
        elapsed = time.time() - t0
        ok = ok and skew.ok and jac.ok and elapsed < 60.0
        details.append(f"{name}: {jac.checked} triples {elapsed:.1f}s")
    summary(1, "axioms", ok, "; ".join(details))
    assert ok


def test_criterion_02_cocycles():
    w = witt_q()
    window = 6
    rep0 = cocycle_check(make_phi0(w), w, window=window)
    rep1 = cocycle_check(make_phi1(w), w, window=window)
    b_ok = (
        b_coefficient(2) == ONE
        and b_coefficient(1) == ZERO
        and b_coefficient(0) == ZERO
    )
    ok = rep0.ok and rep1.ok and b_ok
    summary(2, "scalar cocycles", ok,
            f"{rep0.checked}+{rep1.checked} triples, b2=1 b1=b0=0: {b_ok}")
    assert ok


def test_criterion_03_nontriviality():
    w = witt_q()
    ok = True
    certs = []
    for phi in (make_phi0(w), make_phi1(w)):
        for constrained in (True, False):
            res = coboundary_solve(phi, w, window=8, alpha_constrained=constrained)
            cert = res.certificate()
            good = (not res.solved) and cert["rank_augmented"] == cert["rank"] + 1
            ok = ok and good
            certs.append(f"{phi.name}/{'c' if constrained else 'u'}:"
                         f"rank {cert['rank']}<{cert['rank_augmented']}")
    summary(3, "scalar nontriviality window 8", ok, "; ".join(certs))
    assert ok


def test_criterion_04_derivations():
    failures = []
    window = 8

    w = witt_q()
    res_w = derivation_solve(w, r=0, degree=0, window=window)
    if res_w.dimension != 4:
        failures.append(f"witt-q dimension {res_w.dimension} != 4")
    for name, d in standard_derivations(w).items():
        if not derivation_span_contains(res_w, d):
            failures.append(f"witt-q: {name} not in solution span")

    hr, shr = ramond(), special_ramond()
    res_hr = derivation_solve(hr, r=0, degree=0, window=window)
    res_shr = derivation_solve(shr, r=0, degree=0, window=window)

    # the mixed-block vanishing lemma: solutions send the central line into itself
    for label, res in (("ramond", res_hr), ("special-ramond", res_shr)):
        for f in res.basis:
            if not all(bv.kind == "C" for bv in f.value(CENTRAL).terms):
                failures.append(f"{label}: central image leaves the central line")

    # stated claim: both extensions keep the full four-dimensional space,
    # row-reducing to D1..D4 with zero central action
    if res_hr.dimension != 4:
        failures.append(
            f"ramond dimension {res_hr.dimension} != 4 (exact computation: the "
            f"odd index-shift map fails there; {LEDGER})"
        )
    for name, d in standard_derivations(hr).items():
        if not derivation_span_contains(res_hr, d):
            failures.append(f"ramond: {name}(1)=0 variant not in span ({LEDGER})")
    if res_shr.dimension != 4:
        failures.append(f"special-ramond dimension {res_shr.dimension} != 4")
    for name, d in standard_derivations(shr).items():
        if not derivation_span_contains(res_shr, d):
            failures.append(f"special-ramond: {name}(1)=0 variant not in span ({LEDGER})")

    summary(4, "derivation spaces window 8", not failures,
            f"dims: witt-q={res_w.dimension} ramond={res_hr.dimension} "
            f"special-ramond={res_shr.dimension}; {len(failures)} failed sub-claims")
    assert not failures, "\n".join(failures)


def test_criterion_05_structure_system():
    hr, shr = ramond(), special_ramond()
    failures = []

    # the lifted odd cocycle on the even extension: full component system
    phi1l = lift_scalar_cochain(make_phi1(), hr)
    rep = structure_system_check(phi1l, hr, window=4)
    if not rep.ok:
        failures.append("component system fails for the lifted odd cocycle")

    # reduction to the scalar cocycle condition, tuple by tuple on window 6
    d = bracket_cochain(hr)
    df = nr_bracket2(d, phi1l, hr)
    dT = delta_trivial(make_phi1(), witt_q())
    base = [b for b in hr.basis_window(6) if b.kind != "C"]
    checked = 0
    for args in itertools.combinations_with_replacement(base, 3):
        checked += 1
        if df.value(*args) != Element.single(CENTRAL, dT.value(*args)):
            failures.append(f"reduction mismatch at {args}")
            break

    # vanishing component blocks for window 2-cocycles on both extensions
    for spec in (hr, shr):
        for parity in (EVEN, ODD):
            _, cocycles = window_cocycle_space(spec, ADJOINT, parity, HalfInt(0), window=4)
            for z in cocycles:
                if not vanishing_components_check(z, window=4).ok:
                    failures.append(f"vanishing blocks fail on {spec.name} parity {parity}")
                    break

    # the underlying oracle: twisted (r=1) derivations trivial on windows
    for s in (-1, 0, 1):
        res = derivation_solve(witt_q(), r=1, degree=s, window=5)
        if res.dimension != 0:
            failures.append(f"twisted derivation space at degree {s} not trivial")

    summary(5, "structure system + vanishing blocks", not failures,
            f"{checked} reduction tuples; cocycle spaces on both extensions")
    assert not failures, "\n".join(failures)


def test_criterion_06_window_cohomology():
    window = 6
    failures = []
    details = []
    hr, shr = ramond(), special_ramond()
    phi0_hr = lift_scalar_cochain(make_phi0(), hr)
    phi1_hr = lift_scalar_cochain(make_phi1(), hr)
    phi0_shr = lift_scalar_cochain(make_phi0(), shr)

    # phi0 is a coboundary inside the even extension (solvable system)
    sol = coboundary_solve(phi0_hr, hr, window=window, alpha_constrained=True)
    if not sol.solved:
        failures.append("even cocycle not solvable inside ramond")
    else:
        dh = delta1_adjoint(sol.witness, hr)
        for args in interior_tuples(hr, 4, 2):
            if dh.value(*args) != phi0_hr.value(*args):
                failures.append("ramond witness fails verification")
                break

    # phi0's class on the odd extension is nonzero
    sol = coboundary_solve(phi0_shr, shr, window=window, alpha_constrained=True)
    if sol.solved:
        failures.append("even cocycle unexpectedly a coboundary on special-ramond")

    # window surrogate: every degree-0 window cocycle decomposes as
    # coboundary + scalar * representative on the interior sub-window
    t0 = time.time()
    res = cohomology_window_dims(hr, ADJOINT, parity=phi1_hr.parity, degree=0,
                                 window=window, representative=phi1_hr)
    details.append(f"ramond-odd Z/B/H={res.dim_Z}/{res.dim_B_unconstrained}/{res.dim_H_unconstrained}")
    if not res.decomposition_ok:
        failures.append("decomposition surrogate fails on ramond (odd)")
    if not res.representative_in_Z:
        failures.append("lifted odd cocycle is not a window cocycle on ramond")
    phi1_in_b = res.representative_in_B

    res_e = cohomology_window_dims(hr, ADJOINT, parity=EVEN, degree=0, window=window,
                                   representative=phi0_hr)
    details.append(f"ramond-even Z/B/H={res_e.dim_Z}/{res_e.dim_B_unconstrained}/{res_e.dim_H_unconstrained}")
    if not res_e.decomposition_ok:
        failures.append("decomposition surrogate fails on ramond (even)")

    res_s = cohomology_window_dims(shr, ADJOINT, parity=phi0_shr.parity, degree=0,
                                   window=window, representative=phi0_shr)
    details.append(f"shr-odd Z/B/H={res_s.dim_Z}/{res_s.dim_B_unconstrained}/{res_s.dim_H_unconstrained}")
    if not (res_s.representative_in_Z and not res_s.representative_in_B
            and not res_s.representative_in_B_unconstrained):
        failures.append("even cocycle class on special-ramond is not nonzero")
    if not res_s.decomposition_ok:
        failures.append("decomposition surrogate fails on special-ramond (odd)")

    res_se = cohomology_window_dims(shr, ADJOINT, parity=EVEN, degree=0, window=window)
    details.append(f"shr-even Z/B/H={res_se.dim_Z}/{res_se.dim_B_unconstrained}/{res_se.dim_H_unconstrained}")
    details.append(f"{time.time()-t0:.0f}s for the four window computations")

    # stated claim: phi1's class on ramond is nonzero.  Exact computation:
    # it is the coboundary of the odd index-shift derivation.
    if phi1_in_b:
        failures.append(
            f"odd cocycle class on ramond is a coboundary, not nonzero ({LEDGER})"
        )

    summary(6, "window cohomology N=6", not failures, "; ".join(details))
    assert not failures, "\n".join(failures)


def test_criterion_07_recurrence():
    window = 8
    ok = True
    sols = recurrence_solve(0, window=window)
    ok = ok and len(sols) == 1
    if sols:
        scale = sols[0][1]
        ok = ok and all(v == scale * QRat.const(n) for n, v in sols[0].items())
    for s in (-3, -2, -1, 1, 2, 3):
        ok = ok and recurrence_solve(s, window=window) == []
    rep = recurrence_check(lambda s, n: QRat.const(n) if s == 0 else ZERO,
                           list(range(-3, 4)), window=window)
    ok = ok and rep.ok
    bad = not recurrence_check(lambda s, n: QRat.const(n * n), [0], window=2).ok
    ok = ok and bad
    summary(7, "coefficient recurrence window 8", ok,
            "solver finds exactly the linear family at shift 0, zero otherwise")
    assert ok


def test_criterion_08_isomorphism():
    rep = ramond_to_ns_iso_check(6)
    summary(8, "integer-to-half-integer isomorphism window 6", rep.ok,
            f"{rep.checked} pairs")
    assert rep.ok


def test_criterion_09_deformations():
    window = 6
    order = 4
    failures = []
    timings = []
    for fb in (m2_deformation(order=order), m3_deformation(order=order)):
        t0 = time.time()
        rep = deformation_check(fb, window=window, max_order=order)
        elapsed = time.time() - t0
        timings.append(f"{fb.name}:{elapsed:.0f}s")
        if not rep.ok:
            failures.append(f"{fb.name} fails the order-by-order system")
        if elapsed >= 120.0:
            failures.append(f"{fb.name} exceeded the time budget ({elapsed:.0f}s)")
        if not skew_check(fb, 3).ok:
            failures.append(f"{fb.name} component skewness fails")

    # the order-p mechanism: the assembled constraint matrix is the coboundary matrix
    for spec in (ramond(), special_ramond()):
        if not order_matrix_equals_delta2(spec, 1, [ONE, ZERO], window=3):
            failures.append(f"order-p matrix mechanism fails on {spec.name}")

    # the explicit normal-form transport reproduces the given tail
    sc = m2_normal_form_scenario(order=order)
    if not equivalence_check(sc["given"], sc["normal"], sc["automorphism"], window=3).ok:
        failures.append("normal-form equivalence fails")
    moved, compat = transport(sc["normal"], sc["automorphism"], window=3)
    basis = moved.spec.basis_window(3)
    if not compat.ok:
        failures.append("twist transport compatibility fails")
    for s in range(order + 1):
        for x in basis:
            for y in basis:
                if moved.components[s].value(x, y) != sc["given"].components[s].value(x, y):
                    failures.append(f"transport mismatch at order {s}")
                    break

    summary(9, "canonical deformations order 4 window 6", not failures, "; ".join(timings))
    assert not failures, "\n".join(failures)


def test_criterion_10_delta_squared_zero():
    rng = random.Random(20259)
    samples = 50
    failures = 0
    checked = 0
    for name in sorted(ALGEBRA_BUILDERS):
        spec = algebra_by_name(name)
        eval_tuples = list(itertools.combinations_with_replacement(spec.basis_window(2), 3))
        for trial in range(samples):
            h = random_scalar_1cochain(spec, rng, window=3, parity=rng.choice((EVEN, ODD)))
            ddh = delta_trivial(delta_trivial(h, spec), spec)
            f = random_adjoint_1cochain(spec, rng, window=3, parity=rng.choice((EVEN, ODD)))
            ddf = delta2_adjoint(delta1_adjoint(f, spec), spec)
            for args in eval_tuples:
                checked += 2
                if not ddh.value(*args).is_zero:
                    failures += 1
                if not ddf.value(*args).is_zero:
                    failures += 1
    ok = failures == 0
    summary(10, "coboundary squares to zero", ok,
            f"{samples} samples x 5 algebras, both coefficient modes, {checked} evaluations")
    assert ok
