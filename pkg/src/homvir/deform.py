"""Truncated one-parameter formal deformations.

A deformation of an algebra (K, [.,.]_0, gamma) is a t-power-series bracket
[.,.]_t = sum_i t^i [.,.]_i together with a twist series; here the twist is
restricted to scalar series gamma_t = (sum_k a_k t^k) gamma with a_0 = 1.
The twisted Jacobi identity for the series is equivalent to one equation per
order s:

    cyclic sum over (x,y,z) of (-1)^{|x||z|}
        sum_{k=0}^{s} sum_{i=0}^{s-k} a_i [gamma(x), [y, z]_k]_{s-i-k}  =  0,

which ``deformation_check`` evaluates on window triples order by order.  The
order-0 equation is the Jacobi identity of the undeformed bracket, and when
components 1..p-1 vanish the order-p equation is precisely closedness of
[.,.]_p under the adjoint coboundary; ``order_matrix_equals_delta2`` asserts
that mechanism by comparing assembled matrices entry for entry.

Equivalences are formal automorphisms Phi_t = id + sum_{i>0} t^i phi_i acting
by Phi_t([x,y]_t) = [Phi_t x, Phi_t y]'_t; ``transport`` pulls a deformation
back through Phi_t (truncated compositional inverse included) and
``equivalence_check`` verifies the two defining identities order by order.

The two canonical presets deform the central extensions along the opposite
scalar cocycle: the even-central extension gains t * (odd cocycle) and the
odd-central one gains t * (even cocycle).  Components are kept strictly
super-antisymmetric by cochain storage; evenness is reported rather than
enforced because the second preset's direction is parity-odd with respect to
its algebra's central grading (see the notes ledger).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .qfield import HalfInt, QRat, ZERO, ONE
from .linalg import LinearSystem
from .superalg import (
    EVEN,
    ODD,
    AlgebraSpec,
    BasisVector,
    Element,
    IndexWindow,
    LinearMap,
    Report,
    ramond,
    special_ramond,
)
from .cochain import (
    ADJOINT,
    Cochain,
    CochainSpace,
    bracket_cochain,
    delta_rows,
    lift_scalar_cochain,
    make_phi0,
    make_phi1,
    two_cochain_space,
)


def zero_component(spec: AlgebraSpec) -> Cochain:
    return Cochain(spec, 2, EVEN, ADJOINT, rule=lambda x, y: Element.zero(), name="0")


@dataclass
class FormalBracket:
    """A deformation truncated at t^order: bracket components [.,.]_0..K and
    the scalar twist series (a_0, ..., a_K) with a_0 = 1."""

    spec: AlgebraSpec
    order: int
    components: list[Cochain]
    alpha_series: list[QRat] = field(default_factory=list)
    name: str = ""

    def __post_init__(self):
        if len(self.components) != self.order + 1:
            raise ValueError("need one bracket component per order 0..K")
        if not self.alpha_series:
            self.alpha_series = [ONE] + [ZERO] * self.order
        if len(self.alpha_series) != self.order + 1:
            raise ValueError("twist series must carry orders 0..K")
        if self.alpha_series[0] != ONE:
            raise ValueError("twist series must start at 1")

    @staticmethod
    def undeformed(spec: AlgebraSpec, order: int, name: str = "") -> "FormalBracket":
        comps = [bracket_cochain(spec)] + [zero_component(spec) for _ in range(order)]
        return FormalBracket(spec, order, comps, name=name or f"undeformed[{spec.name}]")

    def component_value(self, k: int, x: Element, y: Element) -> Element:
        return self.components[k].apply([x, y])

    def component_parities(self) -> list[Optional[int]]:
        """Observed parity of each stored component on a small window (None
        for mixed); purely informational."""
        out: list[Optional[int]] = []
        for comp in self.components:
            par: set[int] = set()
            for x in self.spec.basis_window(2):
                for y in self.spec.basis_window(2):
                    v = comp.value(x, y)
                    if v.is_zero:
                        continue
                    pv = self.spec.element_parity(v)
                    if pv is None:
                        par.add(2)
                    else:
                        par.add((pv + self.spec.parity(x) + self.spec.parity(y)) % 2)
            out.append(par.pop() if len(par) == 1 else (EVEN if not par else None))
        return out


def deformation_residual(fb: FormalBracket, s: int, x: BasisVector, y: BasisVector, z: BasisVector) -> Element:
    """The order-s obstruction at one basis triple."""
    spec = fb.spec
    total = Element.zero()
    for a, b, c in ((x, y, z), (y, z, x), (z, x, y)):
        sign = -1 if (spec.parity(a) & spec.parity(c)) else 1
        ga = spec.alpha_basis(a)
        for k in range(s + 1):
            inner = fb.components[k].value(b, c)
            if inner.is_zero:
                continue
            for i in range(s - k + 1):
                ai = fb.alpha_series[i]
                if ai.is_zero:
                    continue
                outer = fb.components[s - i - k].apply([ga.scale(ai), inner])
                if outer.is_zero:
                    continue
                total = total + (outer if sign == 1 else -outer)
    return total


def skew_check(fb: FormalBracket, window=4) -> Report:
    """Each component satisfies [x,y]_k = -(-1)^{|x||y|} [y,x]_k."""
    spec = fb.spec
    basis = spec.basis_window(window)
    report = Report(name=f"deformation-skew[{fb.name}]")
    for k, comp in enumerate(fb.components):
        for x in basis:
            for y in basis:
                report.checked += 1
                mirrored = comp.value(y, x)
                if spec.parity(x) & spec.parity(y):
                    mirrored = -mirrored
                res = comp.value(x, y) + mirrored
                if not res.is_zero:
                    report.add_violation(f"skew-order-{k}", (x, y), res)
    return report


def deformation_check(fb: FormalBracket, window=4, max_order: Optional[int] = None) -> Report:
    """Evaluate the order-by-order deformation system on all window triples.

    Reports one child per order with its own violation list; the order-0
    child is the Jacobi identity of the undeformed bracket.
    """
    if max_order is None:
        max_order = fb.order
    if max_order > fb.order:
        raise ValueError("max_order beyond the truncation")
    basis = fb.spec.basis_window(window)
    report = Report(name=f"deformation[{fb.name}]")
    for s in range(max_order + 1):
        sub = Report(name=f"order-{s}")
        for x in basis:
            for y in basis:
                for z in basis:
                    sub.checked += 1
                    res = deformation_residual(fb, s, x, y, z)
                    if not res.is_zero:
                        sub.add_violation(f"order-{s}", (x, y, z), res)
        report.children.append(sub)
    return report


def order_matrix_equals_delta2(
    spec: AlgebraSpec, p: int, alpha_series: Sequence[QRat], window=3,
    parity: int = EVEN, degree: Optional[HalfInt] = None,
) -> bool:
    """The mechanism behind the order-p reduction: with components 1..p-1
    zero, the order-p equation as a linear operator on the unknown component
    equals the adjoint coboundary operator, row for row.

    The order-p equation rows are  (-1)^{|x||z|} * (cyclic sum of
    [gamma(x), f(y,z)]_0 + f(gamma(x), [y,z]_0)); the scalar twist series
    contributes only a_p times the Jacobi identity of the undeformed
    bracket, which vanishes identically.  Deformation components are even
    maps, and the identity with the coboundary holds exactly on the even
    unknown space (the coboundary of an odd cochain carries extra signs).
    """
    if parity != EVEN:
        raise ValueError("deformation components are even; the matrix identity lives on the even space")
    degree = HalfInt.make(degree if degree is not None else 0)
    space = two_cochain_space(spec, window, parity, degree, target=ADJOINT)
    basis = spec.basis_window(window)
    a0 = alpha_series[0]
    if a0 != ONE:
        raise ValueError("twist series must start at 1")

    d0 = bracket_cochain(spec)
    for args in itertools.combinations_with_replacement(basis, 3):
        # delta2 rows from the cochain module
        ref = delta_rows(space, spec, args, ADJOINT, r=0)

        # order-p rows assembled from the deformation system
        got: dict = {}

        def bump(w, col, val):
            row = got.setdefault(w, {})
            cur = row.get(col)
            cur = val if cur is None else cur + val
            if cur.is_zero:
                row.pop(col, None)
            else:
                row[col] = cur

        x, y, z = args
        lead = -1 if (spec.parity(x) & spec.parity(z)) else 1
        for a, b, c in ((x, y, z), (y, z, x), (z, x, y)):
            sign = lead * (-1 if (spec.parity(a) & spec.parity(c)) else 1)
            ga = spec.alpha_basis(a)
            # [gamma(a), f(b,c)]_0 : reads f at (b,c), brackets with gamma(a)
            for col, tgt, csign in space.read_terms((b, c)):
                img = spec.bracket(ga, Element.single(tgt))
                for w, mu in img.terms.items():
                    bump(w, col, mu * (sign * csign))
            # f(gamma(a), [b,c]_0) : reads f at expanded basis pairs
            inner = d0.value(b, c)
            for bv_a, ca in ga.terms.items():
                for bv_i, ci in inner.terms.items():
                    for col, tgt, csign in space.read_terms((bv_a, bv_i)):
                        bump(tgt, col, ca * ci * (sign * csign))

        got = {w: row for w, row in got.items() if row}
        ref = {w: row for w, row in ref.items() if row}
        if got != ref:
            return False
    return True


class FormalAutomorphism:
    """Phi_t = sum_i t^i phi_i with phi_0 = id, truncated at t^order."""

    def __init__(self, spec: AlgebraSpec, order: int, components: list[LinearMap], name: str = ""):
        if len(components) != order + 1:
            raise ValueError("need one linear component per order 0..K")
        self.spec = spec
        self.order = order
        self.components = components
        self.name = name or "Phi"

    @staticmethod
    def identity(spec: AlgebraSpec, order: int) -> "FormalAutomorphism":
        return FormalAutomorphism(
            spec, order, [LinearMap.identity()] + [LinearMap.zero() for _ in range(order)], name="id"
        )

    def check_identity_leading_term(self, window=2) -> bool:
        for b in self.spec.basis_window(window):
            if self.components[0](b) != Element.single(b):
                return False
        return True

    def inverse(self) -> "FormalAutomorphism":
        """Truncated compositional inverse: psi_0 = id and
        psi_s = - sum_{i=1}^{s} phi_i o psi_{s-i}; for a single t^p term the
        recursion collapses to the alternating geometric series
        id - t^p phi + t^2p phi o phi - ...
        """
        psi: list[LinearMap] = [LinearMap.identity()]
        for s in range(1, self.order + 1):
            acc = LinearMap.zero()
            for i in range(1, s + 1):
                acc = acc + self.components[i].compose(psi[s - i])
            psi.append(-acc)
        return FormalAutomorphism(self.spec, self.order, psi, name=f"{self.name}^-1")

    def compose_check(self, other: "FormalAutomorphism", window=3) -> Report:
        """Verify (self o other)_s = delta_{s,0} id on the window."""
        report = Report(name=f"compose[{self.name}o{other.name}]")
        basis = self.spec.basis_window(window)
        for s in range(self.order + 1):
            for b in basis:
                report.checked += 1
                acc = Element.zero()
                for i in range(s + 1):
                    acc = acc + self.components[i](other.components[s - i](b))
                expect = Element.single(b) if s == 0 else Element.zero()
                if acc != expect:
                    report.add_violation(f"compose-order-{s}", (b,), acc - expect)
        return report


def transport(fb: FormalBracket, phi: FormalAutomorphism, window=3) -> tuple[FormalBracket, Report]:
    """Pull the deformation back through Phi_t:

        [x, y]_s^new = sum_{i+j+k+l=s} psi_i( [phi_j(x), phi_k(y)]_l ),

    with psi the truncated inverse.  The scalar twist series is kept and the
    compatibility Phi_t o gamma_t = gamma_t o Phi_t is checked on the window
    (diagonal automorphisms commute with the scalar-series twist; a failure
    is reported, not solved for).
    """
    if fb.order != phi.order:
        raise ValueError("orders must match")
    psi = phi.inverse()
    spec = fb.spec

    def component(s: int) -> Cochain:
        def rule(x: BasisVector, y: BasisVector) -> Element:
            total = Element.zero()
            for j in range(s + 1):
                px = phi.components[j](x)
                if px.is_zero:
                    continue
                for k in range(s + 1 - j):
                    py = phi.components[k](y)
                    if py.is_zero:
                        continue
                    for l in range(s + 1 - j - k):
                        inner = fb.components[l].apply([px, py])
                        if inner.is_zero:
                            continue
                        total = total + psi.components[s - j - k - l](inner)
            return total

        return Cochain(spec, 2, EVEN, ADJOINT, rule=rule, name=f"t^{s}")

    out = FormalBracket(
        spec, fb.order, [component(s) for s in range(fb.order + 1)],
        alpha_series=list(fb.alpha_series), name=f"transport[{fb.name}]",
    )

    compat = Report(name="twist-transport")
    basis = spec.basis_window(window)
    for s in range(fb.order + 1):
        for b in basis:
            compat.checked += 1
            lhs = Element.zero()
            rhs = Element.zero()
            for i in range(s + 1):
                a_i = fb.alpha_series[i]
                if not a_i.is_zero:
                    lhs = lhs + phi.components[s - i](spec.alpha_basis(b)).scale(a_i)
                    rhs = rhs + spec.alpha(phi.components[s - i](b)).scale(a_i)
            if lhs != rhs:
                compat.add_violation(f"twist-transport-order-{s}", (b,), lhs - rhs)
    return out, compat


def equivalence_check(
    fb: FormalBracket, fb2: FormalBracket, phi: FormalAutomorphism, window=3,
    max_order: Optional[int] = None,
) -> Report:
    """Verify order by order that Phi_t intertwines the two deformations:

        sum_{i+k=s} phi_i([x,y]_k)  =  sum_{i+j+k=s} [phi_i(x), phi_j(y)]'_k

    together with the twist identity sum phi_i(gamma_k(x)) = sum gamma'_k(phi_i(x)).
    """
    if max_order is None:
        max_order = min(fb.order, fb2.order, phi.order)
    spec = fb.spec
    basis = spec.basis_window(window)
    report = Report(name=f"equivalence[{fb.name}~{fb2.name}]")
    for s in range(max_order + 1):
        sub = Report(name=f"order-{s}")
        for x in basis:
            for y in basis:
                sub.checked += 1
                lhs = Element.zero()
                for k in range(s + 1):
                    v = fb.components[k].value(x, y)
                    if not v.is_zero:
                        lhs = lhs + phi.components[s - k](v)
                rhs = Element.zero()
                for i in range(s + 1):
                    px = phi.components[i](x)
                    if px.is_zero:
                        continue
                    for j in range(s + 1 - i):
                        py = phi.components[j](y)
                        if py.is_zero:
                            continue
                        rhs = rhs + fb2.components[s - i - j].apply([px, py])
                if lhs != rhs:
                    sub.add_violation(f"order-{s}", (x, y), lhs - rhs)
        for x in basis:
            sub.checked += 1
            lhs = Element.zero()
            rhs = Element.zero()
            for i in range(s + 1):
                a_k = fb.alpha_series[s - i]
                if not a_k.is_zero:
                    lhs = lhs + phi.components[i](spec.alpha_basis(x).scale(a_k))
                b_k = fb2.alpha_series[s - i]
                if not b_k.is_zero:
                    rhs = rhs + spec.alpha(phi.components[i](x)).scale(b_k)
            if lhs != rhs:
                sub.add_violation(f"twist-order-{s}", (x,), lhs - rhs)
        report.children.append(sub)
    return report


# ---------------------------------------------------------------------------
# canonical presets


def m2_deformation(order: int = 4) -> FormalBracket:
    """On the even-central extension: order 0 is its full bracket (the even
    cocycle already inside), order 1 adds the odd cocycle lifted to the
    central line, nothing above."""
    hr = ramond()
    comps = [bracket_cochain(hr), lift_scalar_cochain(make_phi1(), hr)]
    comps += [zero_component(hr) for _ in range(order - 1)]
    return FormalBracket(hr, order, comps, name="m2")


def m3_deformation(order: int = 4) -> FormalBracket:
    """On the odd-central extension: order 0 is its full bracket, order 1
    adds the even cocycle lifted to the central line."""
    shr = special_ramond()
    comps = [bracket_cochain(shr), lift_scalar_cochain(make_phi0(), shr)]
    comps += [zero_component(shr) for _ in range(order - 1)]
    return FormalBracket(shr, order, comps, name="m3")


DEFORMATION_PRESETS = {
    "m2": m2_deformation,
    "m3": m3_deformation,
}


def m2_normal_form_scenario(order: int = 4) -> dict:
    """The explicit compression of a tail of odd-cocycle terms into a single
    first-order term: given [.,.]_t = [.,.]_0 + sum_i a_i t^i phi1 with
    a_1 = lambda != 0, the diagonal automorphism Phi_s(G_m) = (a_{s+1}/lambda) G_m
    (zero on L and the central line for s > 0) carries the normal form
    [.,.]_0 + lambda t phi1 back to the given deformation.

    Returns the given deformation, the normal form, the automorphism and the
    verification reports.
    """
    hr = ramond()
    lam = QRat.const(2)
    tail = [ZERO, lam, QRat.const(3)] + [ZERO] * (order - 2)

    phi1l = lift_scalar_cochain(make_phi1(), hr)
    comps = [bracket_cochain(hr)]
    for s in range(1, order + 1):
        a_s = tail[s]
        if a_s.is_zero:
            comps.append(zero_component(hr))
        else:
            comps.append(Cochain(
                hr, 2, phi1l.parity, ADJOINT,
                rule=lambda x, y, a_s=a_s: phi1l.value(x, y).scale(a_s),
                name=f"{a_s}*phi1",
            ))
    given = FormalBracket(hr, order, comps, name="m2-tail")

    normal = FormalBracket(
        hr, order,
        [bracket_cochain(hr),
         Cochain(hr, 2, phi1l.parity, ADJOINT,
                 rule=lambda x, y: phi1l.value(x, y).scale(lam), name="lam*phi1")]
        + [zero_component(hr) for _ in range(order - 1)],
        name="m2-normal",
    )

    def phi_component(s: int) -> LinearMap:
        if s == 0:
            return LinearMap.identity()
        a_next = tail[s + 1] if s + 1 <= order else ZERO

        def rule(b: BasisVector) -> Element:
            if b.kind == "G":
                return Element.single(b, a_next / lam)
            return Element.zero()

        return LinearMap(rule, name=f"phi_{s}")

    phi = FormalAutomorphism(hr, order, [phi_component(s) for s in range(order + 1)], name="m2-shift")
    return {"given": given, "normal": normal, "automorphism": phi, "scale": lam}
