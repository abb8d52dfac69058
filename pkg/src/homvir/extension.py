"""Extensions of Hom-Lie superalgebras by a module through a 2-cocycle.

Given a base algebra (G, [.,.], alpha), a module (V, action, beta) and a
scalar 2-cochain phi, the extension bracket on G + V is

    d((x,u); (y,v)) = ([x,y], [x,v] - (-1)^{|u||y|} [y,u] + phi(x,y)),

with gamma(x, v) = (alpha(x), beta(v)).  The construction produces a
Hom-Lie superalgebra exactly when phi is a 2-cocycle, which build_extension
checks on a window and refuses with a witness otherwise.  phi = 0 gives the
semidirect product; action = 0 makes the extension central; both together
give the trivial central extension.

Parity placement follows the cocycle: an even phi leaves the module in the
even part, an odd phi shifts it into the odd part (the "special" extension).

The module also verifies the split-extension structure theorem (five
component conditions on the bracket of a direct sum carrying the module as
an ideal), builds the shear equivalences (x, v) -> (x, v - h(x)) between
extensions whose cocycles differ by a coboundary, and checks integer
gradings of extensions with degree-0 cocycle support.

Built-ins keep V one-dimensional (the span of the central generator C);
the data model would carry more but the catalog never needs it.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Optional

from .qfield import HalfInt, QRat, ZERO, ONE
from .superalg import (
    EVEN,
    ODD,
    AlgebraSpec,
    BasisVector,
    CENTRAL,
    Element,
    IndexWindow,
    LinearMap,
    Report,
    check_hom_jacobi,
    check_skew,
)
from .cochain import (
    ADJOINT,
    SCALAR,
    Cochain,
    bracket_cochain,
    circle2,
    cocycle_check,
    coboundary_solve,
    decompose_2cochain,
    delta,
    extension_component,
    nr_bracket2,
)


class NotACocycle(ValueError):
    def __init__(self, report: Report):
        self.report = report
        witness = report.violations[0]
        super().__init__(
            f"cochain is not a window 2-cocycle; first witness at {witness.where}: {witness.residual}"
        )


@dataclass
class ExtensionSpec:
    """Data of an extension of ``base`` by the one-dimensional module C.

    ``action`` is the module action rule (x, C) -> QRat * C, or None for a
    central extension; ``phi`` is a scalar 2-cochain on the base; ``beta``
    is the module twist eigenvalue (identity for all built-ins).
    """

    base: AlgebraSpec
    phi: Optional[Cochain] = None
    action: Optional[Callable[[BasisVector], QRat]] = None
    beta: QRat = ONE
    name: str = ""

    @property
    def central(self) -> bool:
        return self.action is None

    def phi_parity(self) -> int:
        return self.phi.parity if self.phi is not None else EVEN


def build_extension(ext: ExtensionSpec, check_window=4) -> AlgebraSpec:
    """Assemble the extension algebra and verify it on the window.

    Refuses (NotACocycle) when phi fails the window cocycle sweep; the built
    spec re-verifies super-antisymmetry and the twisted Jacobi identity on
    the same window before being returned.
    """
    base = ext.base
    if base.central_parity is not None:
        raise ValueError("base algebra already carries a central generator")
    phi = ext.phi
    if phi is not None:
        rep = cocycle_check(phi, base, window=check_window, coefficients=SCALAR)
        if not rep.ok:
            raise NotACocycle(rep)
    central_parity = (ext.phi_parity()) % 2

    def bracket(x: BasisVector, y: BasisVector) -> Element:
        if x.kind == "C" and y.kind == "C":
            return Element.zero()
        if y.kind == "C":
            if ext.action is None:
                return Element.zero()
            return Element.single(CENTRAL, ext.action(x))
        if x.kind == "C":
            # reached on canonically ordered pairs; reflect through skewness
            inner = bracket(y, x)
            sign = -1 if not (base.parity(y) & central_parity) else 1
            return inner.scale(QRat.const(sign))
        out = base.bracket_basis(x, y)
        if phi is not None:
            v = phi.value(x, y)
            if not v.is_zero:
                out = out + Element.single(CENTRAL, v)
        return out

    def alpha(bv: BasisVector) -> Element:
        if bv.kind == "C":
            return Element.single(bv, ext.beta)
        return base.alpha_basis(bv)

    def parity(bv: BasisVector) -> int:
        return central_parity if bv.kind == "C" else base.parity(bv)

    def degree(bv: BasisVector) -> HalfInt:
        return HalfInt(0) if bv.kind == "C" else base.degree(bv)

    name = ext.name or f"extension[{base.name};{(phi.name if phi else '0')}]"
    spec = AlgebraSpec(
        name=name,
        bracket_rule=bracket,
        alpha_rule=alpha,
        parity_rule=parity,
        degree_rule=degree,
        contains=lambda bv: bv.kind == "C" or base.contains(bv),
        basis_kinds=tuple(sorted(set(base.basis_kinds) | {"C"})),
        central_parity=central_parity,
    )
    jac = check_hom_jacobi(spec, check_window)
    skew = check_skew(spec, check_window)
    if not (jac.ok and skew.ok):
        bad = (jac.violations + skew.violations)[0]
        raise ValueError(f"extension fails the axioms at {bad.where}: {bad.residual}")
    return spec


def check_extension_theorem(spec: AlgebraSpec, window=4) -> Report:
    """The five structure conditions for a split direct sum with the module
    as an ideal, each evaluated on its own argument class:

    1. the base component is itself a Hom-Lie superalgebra;
    2. the module-valued base block pairs to zero with it (cocycle shape);
    3. the action block closes (representation shape, with module bracket);
    4. the module bracket annihilates the action block;
    5. the module with its own bracket is a Hom-Lie superalgebra.

    Conditions 2-4 are evaluated through the circle brackets of the bracket's
    component cochains, which is exactly how they arise from splitting the
    vanishing of [d, d] by argument class and value projection.
    """
    if spec.central_parity is None:
        raise ValueError("check_extension_theorem needs a split extension")
    report = Report(name=f"extension-theorem[{spec.name}]")
    d = bracket_cochain(spec)
    d_tilde = extension_component(d, 0, False, "d~")
    v = extension_component(d, 0, True, "v")
    v_hat = extension_component(d, 1, True, "v^")
    v_bar = extension_component(d, 2, True, "v-")
    d_hat = extension_component(d, 1, False, "d^")
    d_bar = extension_component(d, 2, False, "d-")

    base = [b for b in spec.basis_window(window) if b.kind != "C"]

    pre = Report(name="module-is-ideal")
    for x in base:
        pre.checked += 1
        if not d_hat.value(x, CENTRAL).is_zero:
            pre.add_violation("module-is-ideal", (x, CENTRAL), d_hat.value(x, CENTRAL))
    if spec.central_parity == ODD:
        pre.checked += 1
        if not d_bar.value(CENTRAL, CENTRAL).is_zero:
            pre.add_violation("module-is-ideal", (CENTRAL, CENTRAL), d_bar.value(CENTRAL, CENTRAL))
    report.children.append(pre)

    c1 = Report(name="base-is-hom-lie")
    jac = nr_bracket2(d_tilde, d_tilde, spec)
    for args in itertools.combinations_with_replacement(base, 3):
        c1.checked += 1
        val = jac.value(*args)
        val = Element({bv: c for bv, c in val.terms.items() if bv.kind != "C"})
        if not val.is_zero:
            c1.add_violation("base-jacobi", args, val)
    report.children.append(c1)

    c2 = Report(name="cocycle-pairing")
    lhs = nr_bracket2(v, d_tilde, spec)
    rhs = nr_bracket2(v_hat, v, spec)
    for args in itertools.combinations_with_replacement(base, 3):
        c2.checked += 1
        val = lhs.value(*args) + rhs.value(*args)
        if not val.is_zero:
            c2.add_violation("cocycle-pairing", args, val)
    report.children.append(c2)

    c3 = Report(name="action-closes")
    t1 = circle2(v_hat, v_hat, spec)  # half the graded square
    t2 = nr_bracket2(d_tilde, v_hat, spec)
    t3 = nr_bracket2(v_bar, v, spec)
    for xy in itertools.combinations_with_replacement(base, 2):
        args = xy + (CENTRAL,)
        c3.checked += 1
        val = t1.value(*args) + t2.value(*args) + t3.value(*args)
        if not val.is_zero:
            c3.add_violation("action-closes", args, val)
    report.children.append(c3)

    c4 = Report(name="module-bracket-annihilates-action")
    t4 = nr_bracket2(v_bar, v_hat, spec)
    for x in base:
        args = (x, CENTRAL, CENTRAL)
        c4.checked += 1
        val = t4.value(*args)
        if not val.is_zero:
            c4.add_violation("module-bracket-annihilates-action", args, val)
    report.children.append(c4)

    c5 = Report(name="module-is-hom-lie")
    t5 = nr_bracket2(v_bar, v_bar, spec)
    args = (CENTRAL, CENTRAL, CENTRAL)
    c5.checked += 1
    val = t5.value(*args)
    if not val.is_zero:
        c5.add_violation("module-jacobi", args, val)
    report.children.append(c5)
    return report


@dataclass
class EquivalenceResult:
    map: LinearMap
    report: Report

    @property
    def ok(self) -> bool:
        return self.report.ok


def equivalence_from_h(
    h: Cochain,
    ext_a: AlgebraSpec,
    ext_b: AlgebraSpec,
    window=4,
) -> EquivalenceResult:
    """Build the shear (x, v) -> (x, v - h(x)) and verify it is a
    homomorphism from ext_a to ext_b on all window pairs, i.e.

        shear(d_a(X, Y)) = d_b(shear X, shear Y),    shear o gamma = gamma o shear,

    which for central extensions holds exactly when the cocycles differ by
    the coboundary of h on the ext_b side: phi_b - phi_a = delta1(h).

    Preconditions checked: h is a scalar 1-cochain on the base compatible
    with the twists (h(alpha(x)) = beta(h(x))), and the two extensions share
    the underlying split space.  The shear is automatically bijective: it is
    the identity on the base modulo the module and the identity on the
    module (triangular with unit diagonal), which is verified structurally.
    """
    if h.arity != 1 or h.target != SCALAR:
        raise ValueError("the shear needs a scalar-valued 1-cochain on the base")

    def phi_rule(bv: BasisVector) -> Element:
        if bv.kind == "C":
            return Element.single(bv)
        out = Element.single(bv)
        val = h.value(bv)
        if not val.is_zero:
            out = out + Element.single(CENTRAL, -val)
        return out

    shear = LinearMap(phi_rule, name="shear")
    report = Report(name=f"equivalence[{ext_a.name}->{ext_b.name}]")

    # twist-compatibility of h: beta = twist eigenvalue of the central line
    beta = ext_b.alpha_scalar(CENTRAL)
    pre = Report(name="h-twist-compat")
    basis = [b for b in ext_a.basis_window(window) if b.kind != "C"]
    for b in basis:
        pre.checked += 1
        res = h.apply([ext_a.alpha_basis(b)]) - beta * h.value(b)
        if not res.is_zero:
            pre.add_violation("h-twist-compat", (b,), res)
    report.children.append(pre)
    if not pre.ok:
        raise ValueError(f"h is not twist-compatible: {pre.violations[0]}")

    hom = Report(name="bracket-intertwined")
    full = ext_a.basis_window(window)
    for x in full:
        for y in full:
            hom.checked += 1
            res = shear(ext_a.bracket_basis(x, y)) - ext_b.bracket(shear(x), shear(y))
            if not res.is_zero:
                hom.add_violation("bracket-intertwined", (x, y), res)
    report.children.append(hom)

    tw = Report(name="twist-intertwined")
    for x in full:
        tw.checked += 1
        res = shear(ext_a.alpha_basis(x)) - ext_b.alpha(shear(x))
        if not res.is_zero:
            tw.add_violation("twist-intertwined", (x,), res)
    report.children.append(tw)

    tri = Report(name="triangular-bijective")
    for x in full:
        tri.checked += 1
        img = shear(x)
        proj = Element({bv: c for bv, c in img.terms.items() if bv.kind != "C"})
        expect = Element.zero() if x.kind == "C" else Element.single(x)
        if proj != expect or (x.kind == "C" and img != Element.single(CENTRAL)):
            tri.add_violation("triangular-bijective", (x,), img)
    report.children.append(tri)
    return EquivalenceResult(shear, report)


def check_graded_extension(spec: AlgebraSpec, window=4) -> Report:
    """Integer grading of an extension with the central line in degree 0:
    the cocycle block must be supported on pairs of total degree 0, and the
    full bracket and twist must be degree-additive."""
    if spec.central_parity is None:
        raise ValueError("check_graded_extension needs a split extension")
    report = Report(name=f"graded-extension[{spec.name}]")
    base = [b for b in spec.basis_window(window) if b.kind != "C"]

    support = Report(name="cocycle-degree-support")
    for x in base:
        for y in base:
            support.checked += 1
            central_part = spec.bracket_basis(x, y).coeff(CENTRAL)
            if not central_part.is_zero and (spec.degree(x) + spec.degree(y)).twice != 0:
                support.add_violation("cocycle-degree-support", (x, y), central_part)
    report.children.append(support)

    additive = Report(name="degree-additive")
    basis = spec.basis_window(window)
    for x in basis:
        dx = spec.degree(x)
        for y in basis:
            additive.checked += 1
            d = dx + spec.degree(y)
            for bv in spec.bracket_basis(x, y).terms:
                if spec.degree(bv) != d:
                    additive.add_violation("degree-additive", (x, y), bv)
    report.children.append(additive)
    return report
