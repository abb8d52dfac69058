"""Truncated formal deformations: the order-by-order system, automorphisms,
transport, the canonical presets."""

import itertools

import pytest

from homvir.qfield import HalfInt, QRat, ZERO, ONE, Q, q_number
from homvir.superalg import (
    EVEN,
    ODD,
    CENTRAL,
    Element,
    G,
    L,
    LinearMap,
    ramond,
    special_ramond,
    witt_q,
)
from homvir.cochain import (
    ADJOINT,
    Cochain,
    bracket_cochain,
    delta1_adjoint,
    lift_scalar_cochain,
    make_phi0,
    make_phi1,
)
from homvir.deform import (
    FormalAutomorphism,
    FormalBracket,
    deformation_check,
    deformation_residual,
    equivalence_check,
    m2_deformation,
    m2_normal_form_scenario,
    m3_deformation,
    order_matrix_equals_delta2,
    skew_check,
    transport,
    zero_component,
)

from conftest import random_adjoint_1cochain

HR = ramond()
SHR = special_ramond()


def basis_pairs(spec, window):
    b = spec.basis_window(window)
    return list(itertools.product(b, repeat=2))


def test_undeformed_passes_all_orders():
    fb = FormalBracket.undeformed(HR, 3)
    rep = deformation_check(fb, window=2, max_order=3)
    assert rep.ok
    assert [c.name for c in rep.children] == ["order-0", "order-1", "order-2", "order-3"]


def test_presets_pass_to_order_three_on_small_window():
    for fb in (m2_deformation(order=3), m3_deformation(order=3)):
        assert skew_check(fb, 2).ok
        assert deformation_check(fb, window=2, max_order=3).ok


def test_preset_first_order_components():
    m2 = m2_deformation(order=2)
    assert m2.components[1].value(L(2), G(-3)) == Element.single(CENTRAL)
    assert m2.components[1].value(L(1), L(2)).is_zero
    m3 = m3_deformation(order=2)
    assert m3.components[1].value(L(2), L(-2)) == Element.single(CENTRAL)
    assert m3.components[1].value(L(2), G(-3)).is_zero


def test_non_cocycle_first_order_fails_exactly_at_order_one():
    def bad_rule(x, y):
        if x.kind == "L" and y.kind == "L" and (x.index + y.index).twice == 0:
            b = make_phi0(witt_q()).value(x, y)
            if abs(x.index.twice) == 4:
                b = b + ONE
            return Element.single(CENTRAL, b)
        return Element.zero()

    bad = Cochain(HR, 2, EVEN, ADJOINT, rule=bad_rule, name="bad")
    fb = FormalBracket(HR, 2, [bracket_cochain(HR), bad, zero_component(HR)])
    rep = deformation_check(fb, window=4, max_order=2)
    assert rep.children[0].ok
    assert not rep.children[1].ok


def test_order_one_is_closedness_mechanism():
    assert order_matrix_equals_delta2(HR, 1, [ONE, ZERO], window=2)
    # nontrivial scalar twist tail contributes only a multiple of the
    # undeformed Jacobi identity, which vanishes identically
    assert order_matrix_equals_delta2(SHR, 1, [ONE, QRat.const(5)], window=2)
    # the identity lives on the even space: deformation components are even
    with pytest.raises(ValueError):
        order_matrix_equals_delta2(HR, 1, [ONE, ZERO], window=2, parity=ODD)


def test_automorphism_inverse_identity():
    phi = FormalAutomorphism.identity(HR, 3)
    inv = phi.inverse()
    assert phi.compose_check(inv, window=2).ok


def test_automorphism_inverse_geometric_series():
    g = LinearMap(lambda b: Element.single(b, QRat.const(3)) if b.kind == "G" else Element.zero())
    phi = FormalAutomorphism(HR, 3, [LinearMap.identity(), g, LinearMap.zero(), LinearMap.zero()])
    inv = phi.inverse()
    assert phi.compose_check(inv, window=2).ok
    for s, sign in ((1, -1), (2, 1), (3, -1)):
        assert inv.components[s](G(2)) == Element.single(G(2), QRat.const(sign * 3 ** s))


def test_automorphism_inverse_single_higher_order_term():
    # Phi = id + t^2 g: the inverse alternates in steps of two
    g = LinearMap(lambda b: Element.single(b, Q) if b.kind == "L" else Element.zero())
    phi = FormalAutomorphism(HR, 4, [LinearMap.identity(), LinearMap.zero(), g,
                                     LinearMap.zero(), LinearMap.zero()])
    inv = phi.inverse()
    assert inv.components[1](L(1)).is_zero
    assert inv.components[2](L(1)) == Element.single(L(1), -Q)
    assert inv.components[3](L(1)).is_zero
    assert inv.components[4](L(1)) == Element.single(L(1), Q * Q)
    assert phi.compose_check(inv, window=2).ok


def test_transport_by_identity_is_identity():
    m2 = m2_deformation(order=3)
    moved, compat = transport(m2, FormalAutomorphism.identity(HR, 3), window=2)
    assert compat.ok
    for s in range(4):
        for x, y in basis_pairs(HR, 2):
            assert moved.components[s].value(x, y) == m2.components[s].value(x, y)


def test_transport_kills_coboundary_tail(rng):
    g1 = random_adjoint_1cochain(HR, rng, window=3, parity=EVEN)
    dg = delta1_adjoint(g1, HR)
    p = 2
    comps = [bracket_cochain(HR), zero_component(HR),
             Cochain(HR, 2, EVEN, ADJOINT, rule=lambda x, y: dg.value(x, y)),
             zero_component(HR)]
    fb = FormalBracket(HR, 3, comps)
    assert deformation_check(fb, window=2, max_order=3).ok
    shear = FormalAutomorphism(
        HR, 3,
        [LinearMap.identity(), LinearMap.zero(), LinearMap(lambda b: -g1.value(b)), LinearMap.zero()],
    )
    moved, compat = transport(fb, shear, window=2)
    assert compat.ok
    for x, y in basis_pairs(HR, 2):
        assert moved.components[p].value(x, y).is_zero


def test_m2_normal_form_scenario():
    sc = m2_normal_form_scenario(order=4)
    given, normal, phi = sc["given"], sc["normal"], sc["automorphism"]
    assert deformation_check(given, window=2, max_order=4).ok
    assert deformation_check(normal, window=2, max_order=4).ok
    assert equivalence_check(given, normal, phi, window=2).ok
    moved, compat = transport(normal, phi, window=2)
    assert compat.ok
    for s in range(5):
        for x, y in basis_pairs(HR, 2):
            assert moved.components[s].value(x, y) == given.components[s].value(x, y)


def test_equivalence_detects_wrong_shear(rng):
    # a transported deformation is equivalent to its source by construction;
    # flipping the sign of the first-order component breaks order 1
    g1 = random_adjoint_1cochain(HR, rng, window=3, parity=EVEN)
    fb0 = FormalBracket.undeformed(HR, 2)
    good = FormalAutomorphism(
        HR, 2, [LinearMap.identity(), LinearMap(lambda b: g1.value(b)), LinearMap.zero()]
    )
    fb, compat = transport(fb0, good, window=2)
    assert compat.ok
    # the first-order transported component is the coboundary of g1
    dg = delta1_adjoint(g1, HR)
    for x, y in basis_pairs(HR, 2):
        assert fb.components[1].value(x, y) == dg.value(x, y)
    assert equivalence_check(fb, fb0, good, window=2).ok
    bad = FormalAutomorphism(
        HR, 2, [LinearMap.identity(), LinearMap(lambda b: -g1.value(b)), LinearMap.zero()]
    )
    rep = equivalence_check(fb, fb0, bad, window=2)
    assert rep.children[0].ok
    assert not rep.children[1].ok


def test_transported_deformation_still_satisfies_system(rng):
    # equivalence preserves the order-by-order system
    m2 = m2_deformation(order=3)
    g = LinearMap(lambda b: Element.single(b, QRat.const(2)) if b.kind == "G" else Element.zero())
    phi = FormalAutomorphism(HR, 3, [LinearMap.identity(), g, LinearMap.zero(), LinearMap.zero()])
    moved, compat = transport(m2, phi, window=2)
    assert compat.ok
    assert deformation_check(moved, window=2, max_order=3).ok
    assert skew_check(moved, 2).ok


def test_component_parities_reported():
    # the second preset's direction is odd with respect to its algebra's
    # central grading (ledger); both presets are reported, not rejected
    assert m2_deformation(order=2).component_parities()[:2] == [EVEN, ODD]
    assert m3_deformation(order=2).component_parities()[:2] == [EVEN, ODD]


def test_alpha_series_validation():
    with pytest.raises(ValueError):
        FormalBracket(HR, 1, [bracket_cochain(HR), zero_component(HR)], alpha_series=[ZERO, ONE])
    with pytest.raises(ValueError):
        FormalBracket(HR, 2, [bracket_cochain(HR)])


def test_residual_order_zero_is_jacobi():
    fb = FormalBracket.undeformed(SHR, 1)
    for x, y in basis_pairs(SHR, 1):
        assert deformation_residual(fb, 0, x, y, L(1)).is_zero
