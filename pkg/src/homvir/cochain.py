"""Cochains, coboundary operators and the exact cohomology solvers.

A k-cochain is a k-linear super-alternating map on an algebra's basis with
values either in the scalars (QRat) or in the algebra itself (Element).
Storage is sparse on canonically ordered basis tuples; reads reconstruct the
sign from the rule

    f(..., x, y, ...) = -(-1)^{|x||y|} f(..., y, x, ...),

so adjacent odd arguments are symmetric and every other adjacent pair is
antisymmetric.  A cochain may also carry a closed-form rule (the scalar
2-cocycles, the bracket itself, the standard derivations), in which case it
is defined on every basis tuple, not just a window.

The coboundary of a k-cochain on (x_0, ..., x_k) is

    sum_{s<t} (-1)^{t + |x_t|(|x_{s+1}|+...+|x_{t-1}|)}
        f(a(x_0), ..., a(x_{s-1}), [x_s, x_t], a(x_{s+1}), ..., ^x_t, ..., a(x_k))
  + sum_s (-1)^{s + |x_s|(|f| + |x_0|+...+|x_{s-1}|)}
        [a^{k+r-1}(x_s), f(x_0, ..., ^x_s, ..., x_k)]

with the second sum dropped for trivial coefficients and taken in the
adjoint for algebra-valued cochains (r is the twist exponent, default 0).

The circle products and graded brackets of 2- and 1-cochains are normalised
so that, for the bracket d of the algebra itself, [d, f] coincides with the
adjoint coboundary of f in every arity -- that identity is what pins down
the cyclic-sum convention, and it is tested tuple by tuple.

Linear questions (is this 2-cocycle a coboundary? what are the degree-s
twisted derivations? window cohomology dimensions) are assembled over a
finite index window into exact sparse systems.  Constraint rows are only
taken where every cochain read stays inside the window ("interior"
assembly), so restrictions of genuine infinite-support solutions are never
wrongly rejected; unknown targets come from finite degree slices, which is
why no truncation of the value space is needed.
"""

from __future__ import annotations

import itertools
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Optional, Sequence, Union

from .qfield import HalfInt, QRat, ZERO, ONE, b_coefficient, parse_scalar, q_number
from .linalg import LinearSystem, SolveResult, kernel, rank, solve, span_contains, verify_rank_numeric
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
    witt_q,
)

SCALAR = "scalar"
ADJOINT = "adjoint"

Value = Union[QRat, Element]


def canonical_tuple(args: Sequence[BasisVector], parity: Callable[[BasisVector], int]):
    """Sort a basis tuple into canonical order, tracking the alternating sign.

    Returns (sorted tuple, sign) or None when the value is forced to vanish
    (a repeated argument of even parity).  Swapping two equal odd arguments
    carries sign +1, so the sign is well defined.
    """
    lst = list(args)
    sign = 1
    n = len(lst)
    for i in range(n):
        for j in range(n - 1 - i):
            a, b = lst[j], lst[j + 1]
            if b < a:
                lst[j], lst[j + 1] = b, a
                if not (parity(a) & parity(b)):
                    sign = -sign
    for j in range(n - 1):
        if lst[j] == lst[j + 1] and parity(lst[j]) == EVEN:
            return None
    return tuple(lst), sign


class Cochain:
    """A degree- and parity-homogeneous k-linear super-alternating map.

    ``values`` stores canonically ordered tuples only; ``rule`` (if present)
    provides values for tuples outside the store, making the cochain total.
    Without a rule, missing tuples read as zero (a finite-support cochain).
    """

    def __init__(
        self,
        space: AlgebraSpec,
        arity: int,
        parity: int,
        target: str = SCALAR,
        degree: Optional[HalfInt] = None,
        values: Optional[dict] = None,
        rule: Optional[Callable] = None,
        name: str = "",
    ):
        if arity not in (1, 2, 3):
            raise ValueError("cochain arity must be 1, 2 or 3")
        if target not in (SCALAR, ADJOINT):
            raise ValueError(f"unknown cochain target {target!r}")
        self.space = space
        self.arity = arity
        self.parity = parity
        self.target = target
        self.degree = degree
        self.values: dict[tuple, Value] = values if values is not None else {}
        self.rule = rule
        self.name = name

    def _zero(self) -> Value:
        return ZERO if self.target == SCALAR else Element.zero()

    def value(self, *args: BasisVector) -> Value:
        if len(args) != self.arity:
            raise ValueError(f"{self.arity}-cochain called with {len(args)} arguments")
        canon = canonical_tuple(args, self.space.parity)
        if canon is None:
            return self._zero()
        key, sign = canon
        v = self.values.get(key)
        if v is None:
            if self.rule is None:
                return self._zero()
            v = self.rule(*key)
            self.values[key] = v
        if sign == 1:
            return v
        return -v

    def apply(self, slots: Sequence[Element]) -> Value:
        """Multilinear extension: evaluate on a tuple of Elements."""
        total = self._zero()
        for combo in itertools.product(*(e.items_sorted() for e in slots)):
            coeff = ONE
            for _, c in combo:
                coeff = coeff * c
            if coeff.is_zero:
                continue
            v = self.value(*(bv for bv, _ in combo))
            if isinstance(v, QRat):
                if not v.is_zero:
                    total = total + v * coeff
            else:
                if not v.is_zero:
                    total = total + v.scale(coeff)
        return total

    def set(self, args: Sequence[BasisVector], v: Value) -> None:
        canon = canonical_tuple(args, self.space.parity)
        if canon is None:
            raise ValueError(f"value on {args} is forced to zero by alternation")
        key, sign = canon
        if sign == -1:
            v = -v
        is_zero = v.is_zero
        if is_zero:
            self.values.pop(key, None)
        else:
            self.values[key] = v

    def add_to(self, other: "Cochain", scale_by: QRat = ONE) -> "Cochain":
        """self + scale * other, materialised on the union of stored tuples.
        Both cochains must be store-backed (no rules)."""
        if self.rule is not None or other.rule is not None:
            raise ValueError("add_to requires store-backed cochains")
        out = Cochain(self.space, self.arity, self.parity, self.target, self.degree)
        for key in set(self.values) | set(other.values):
            a = self.values.get(key, self._zero())
            b = other.values.get(key, other._zero())
            v = a + (b * scale_by if isinstance(b, QRat) else b.scale(scale_by))
            if not v.is_zero:
                out.values[key] = v
        return out

    def is_zero_on(self, tuples: Iterable[tuple]) -> bool:
        return all(self.value(*t).is_zero for t in tuples)

    def __repr__(self) -> str:
        tag = self.name or f"{self.arity}-cochain"
        return f"<{tag} on {self.space.name}, parity {self.parity}, target {self.target}>"


# ---------------------------------------------------------------------------
# the scalar 2-cocycles and the bracket cochain


def make_phi0(spec: Optional[AlgebraSpec] = None) -> Cochain:
    """The even scalar 2-cocycle: b_n on (L_n, L_p) with n + p = 0, else 0."""
    spec = spec or witt_q()

    def rule(x: BasisVector, y: BasisVector) -> QRat:
        if x.kind == "L" and y.kind == "L" and (x.index + y.index).twice == 0:
            return b_coefficient(x.index.as_int())
        return ZERO

    return Cochain(spec, 2, EVEN, SCALAR, degree=HalfInt(0), rule=rule, name="phi0")


def make_phi1(spec: Optional[AlgebraSpec] = None) -> Cochain:
    """The odd scalar 2-cocycle: b_n on (L_n, G_k) with n + k = -1, else 0.

    Under the grading deg G_n = n + 1 its support sits in total degree 0,
    matching the even cocycle.
    """
    spec = spec or witt_q()

    def rule(x: BasisVector, y: BasisVector) -> QRat:
        if x.kind == "L" and y.kind == "G" and (x.index + y.index).twice == -2:
            return b_coefficient(x.index.as_int())
        if x.kind == "G" and y.kind == "L" and (x.index + y.index).twice == -2:
            return -b_coefficient(y.index.as_int())
        return ZERO

    return Cochain(spec, 2, ODD, SCALAR, degree=HalfInt(0), rule=rule, name="phi1")


COCYCLE_BUILDERS: dict[str, Callable[..., Cochain]] = {
    "phi0": make_phi0,
    "phi1": make_phi1,
}


def bracket_cochain(spec: AlgebraSpec) -> Cochain:
    """The algebra bracket viewed as an even adjoint-valued 2-cochain."""
    return Cochain(
        spec, 2, EVEN, ADJOINT, degree=HalfInt(0),
        rule=lambda x, y: spec.bracket_basis(x, y), name=f"d[{spec.name}]",
    )


def lift_scalar_cochain(f: Cochain, ext_spec: AlgebraSpec) -> Cochain:
    """Lift a scalar cochain on the base to a C-valued cochain on a central
    extension; central arguments are sent to zero (the extension bracket
    feeds the cocycle base arguments only)."""
    if ext_spec.central_parity is None:
        raise ValueError(f"{ext_spec.name} has no central generator")
    lifted_parity = (f.parity + ext_spec.central_parity) % 2

    def rule(*args: BasisVector) -> Element:
        if any(b.kind == "C" for b in args):
            return Element.zero()
        v = f.value(*args)
        return Element.single(CENTRAL, v)

    return Cochain(
        ext_spec, f.arity, lifted_parity, ADJOINT, degree=f.degree,
        rule=rule, name=f"{f.name}^",
    )


def one_cochain_from_map(
    spec: AlgebraSpec, m: LinearMap, parity: int, degree: Optional[HalfInt] = None, name: str = ""
) -> Cochain:
    return Cochain(spec, 1, parity, ADJOINT, degree=degree,
                   rule=lambda b: m(b), name=name or m.name)


def standard_derivations(spec: AlgebraSpec) -> dict[str, Cochain]:
    """The four basic untwisted derivations (extended by zero on C):

    D1: L_n -> n L_n, G_n -> n G_n        (even)
    D2: L_n -> 0,     G_n -> G_n          (even)
    D3: L_n -> n G_{n-1}, G_n -> 0        (odd)
    D4: L_n -> 0,     G_n -> L_{n+1}      (odd)
    """
    from .superalg import G as G_, L as L_

    def d1(b):
        if b.kind in ("L", "G"):
            return Element.single(b, QRat.const(b.index.as_int()))
        return Element.zero()

    def d2(b):
        return Element.single(b) if b.kind == "G" else Element.zero()

    def d3(b):
        if b.kind == "L" and b.index.twice != 0:
            return Element.single(G_(b.index.as_int() - 1), QRat.const(b.index.as_int()))
        return Element.zero()

    def d4(b):
        return Element.single(L_(b.index.as_int() + 1)) if b.kind == "G" else Element.zero()

    mk = lambda rule, par, name: Cochain(spec, 1, par, ADJOINT, degree=HalfInt(0), rule=rule, name=name)
    return {
        "D1": mk(d1, EVEN, "D1"),
        "D2": mk(d2, EVEN, "D2"),
        "D3": mk(d3, ODD, "D3"),
        "D4": mk(d4, ODD, "D4"),
    }


# ---------------------------------------------------------------------------
# coboundary operators


def _delta_value(f: Cochain, spec: AlgebraSpec, coefficients: str, r: int, args: Sequence[BasisVector]) -> Value:
    k = f.arity
    par = [spec.parity(a) for a in args]
    total = f._zero()
    for s in range(k + 1):
        for t in range(s + 1, k + 1):
            exp = t + par[t] * sum(par[s + 1:t])
            slots: list[Element] = []
            for j in range(k + 1):
                if j == t:
                    continue
                if j == s:
                    slots.append(spec.bracket_basis(args[s], args[t]))
                else:
                    slots.append(spec.alpha_basis(args[j]))
            term = f.apply(slots)
            if term.is_zero:
                continue
            if exp % 2:
                term = -term
            total = total + term
    if coefficients == ADJOINT:
        if f.target != ADJOINT:
            raise ValueError("adjoint coboundary needs an algebra-valued cochain")
        for s in range(k + 1):
            exp = s + par[s] * (f.parity + sum(par[:s]))
            rest = [Element.single(a) for j, a in enumerate(args) if j != s]
            inner = f.apply(rest)
            if inner.is_zero:
                continue
            xs = spec.alpha_power(args[s], k - 1 + r)
            term = spec.bracket(xs, inner)
            if term.is_zero:
                continue
            if exp % 2:
                term = -term
            total = total + term
    return total


def delta_trivial(f: Cochain, spec: Optional[AlgebraSpec] = None) -> Cochain:
    """Coboundary with trivial coefficients (the bracket-substitution sum only)."""
    spec = spec or f.space
    return Cochain(
        spec, f.arity + 1, f.parity, f.target, degree=f.degree,
        rule=lambda *args: _delta_value(f, spec, SCALAR, 0, args),
        name=f"dT({f.name})",
    )


def commutes_with_alpha(f: Cochain, spec: AlgebraSpec, window) -> Report:
    """Check f(alpha(x)) = alpha(f(x)) on the window (1-cochains)."""
    report = Report(name=f"alpha-compat[{f.name}]")
    for b in spec.basis_window(window):
        report.checked += 1
        res = f.apply([spec.alpha_basis(b)]) - spec.alpha(f.value(b))
        if not res.is_zero:
            report.add_violation("alpha-compat", (b,), res)
    return report


def delta1_adjoint(f: Cochain, spec: Optional[AlgebraSpec] = None, r: int = 0,
                   check_window=None) -> Cochain:
    """Adjoint coboundary of a 1-cochain:

        -f([x,y]) + (-1)^{|x||f|} [a^r(x), f(y)] - (-1)^{|y|(|f|+|x|)} [a^r(y), f(x)].

    The complex property (delta2 after delta1 vanishing) holds on the
    twist-compatible subspace, so a window precondition check is offered.
    """
    spec = spec or f.space
    if f.arity != 1:
        raise ValueError("delta1_adjoint expects a 1-cochain")
    if check_window is not None:
        rep = commutes_with_alpha(f, spec, check_window)
        if not rep.ok:
            raise ValueError(f"{f.name or 'cochain'} does not commute with the twist: "
                             f"{rep.violations[0]}")
    return Cochain(
        spec, 2, f.parity, ADJOINT, degree=f.degree,
        rule=lambda *args: _delta_value(f, spec, ADJOINT, r, args),
        name=f"d1({f.name})",
    )


def delta2_adjoint(f: Cochain, spec: Optional[AlgebraSpec] = None, r: int = 0) -> Cochain:
    """Adjoint coboundary of a 2-cochain (spectator slot twisted by a^{1+r})."""
    spec = spec or f.space
    if f.arity != 2:
        raise ValueError("delta2_adjoint expects a 2-cochain")
    return Cochain(
        spec, 3, f.parity, ADJOINT, degree=f.degree,
        rule=lambda *args: _delta_value(f, spec, ADJOINT, r, args),
        name=f"d2({f.name})",
    )


def delta(f: Cochain, spec: Optional[AlgebraSpec] = None, coefficients: str = SCALAR, r: int = 0) -> Cochain:
    """Dispatch to the trivial or adjoint coboundary."""
    if coefficients == SCALAR:
        return delta_trivial(f, spec)
    if f.arity == 1:
        return delta1_adjoint(f, spec, r)
    return delta2_adjoint(f, spec, r)


def cocycle_check(f: Cochain, spec: Optional[AlgebraSpec] = None, window=6,
                  coefficients: Optional[str] = None, r: int = 0) -> Report:
    """Evaluate the appropriate coboundary of f on all window tuples."""
    spec = spec or f.space
    if coefficients is None:
        coefficients = SCALAR if f.target == SCALAR else ADJOINT
    df = delta(f, spec, coefficients, r)
    basis = spec.basis_window(window)
    report = Report(name=f"cocycle[{f.name or 'f'};{spec.name}]")
    for args in itertools.combinations_with_replacement(basis, df.arity):
        report.checked += 1
        v = df.value(*args)
        if not v.is_zero:
            report.add_violation("cocycle", args, v)
    return report


# ---------------------------------------------------------------------------
# circle products and graded brackets


def circle2(phi: Cochain, psi: Cochain, spec: Optional[AlgebraSpec] = None) -> Cochain:
    """Circle product of two 2-cochains (arity 3 result):

        (phi o psi)(X,Y,Z) = (-1)^{|X||Z|} * sum over cyclic rotations
            (A,B,C) of (X,Y,Z) of (-1)^{|A|(|psi|+|C|)} phi(gamma(A), psi(B,C)).

    The leading sign is taken at the original arguments while the inner sign
    rotates; this is the convention under which [d, f] agrees with the
    adjoint coboundary of f (checked in the test suite tuple by tuple).
    """
    spec = spec or phi.space

    def rule(x, y, z):
        lead = spec.parity(x) & spec.parity(z)
        total = Element.zero()
        for a, b, c in ((x, y, z), (y, z, x), (z, x, y)):
            inner = psi.value(b, c)
            if inner.is_zero:
                continue
            term = phi.apply([spec.alpha_basis(a), inner])
            if term.is_zero:
                continue
            if (spec.parity(a) * (psi.parity + spec.parity(c))) % 2:
                term = -term
            total = total + term
        if lead:
            total = -total
        return total

    par = (phi.parity + psi.parity) % 2
    return Cochain(spec, 3, par, ADJOINT, rule=rule, name=f"({phi.name}o{psi.name})")


def nr_bracket2(phi: Cochain, psi: Cochain, spec: Optional[AlgebraSpec] = None) -> Cochain:
    """Graded bracket of 2-cochains: phi o psi + (-1)^{|phi||psi|} psi o phi."""
    spec = spec or phi.space
    a = circle2(phi, psi, spec)
    b = circle2(psi, phi, spec)
    sign = -1 if (phi.parity & psi.parity) else 1

    def rule(x, y, z):
        t = b.value(x, y, z)
        if sign == -1:
            t = -t
        return a.value(x, y, z) + t

    par = (phi.parity + psi.parity) % 2
    return Cochain(spec, 3, par, ADJOINT, rule=rule, name=f"[{phi.name},{psi.name}]")


def circle21(phi: Cochain, psi: Cochain, spec: Optional[AlgebraSpec] = None, r: int = 0) -> Cochain:
    """(phi o psi)(X,Y) = phi(psi(X), gamma^r(Y)) - (-1)^{|X||Y|} phi(psi(Y), gamma^r(X))."""
    spec = spec or phi.space

    def rule(x, y):
        t1 = phi.apply([psi.value(x), spec.alpha_power(y, r)])
        t2 = phi.apply([psi.value(y), spec.alpha_power(x, r)])
        if not (spec.parity(x) & spec.parity(y)):
            t2 = -t2  # the factor -(-1)^{|x||y|}
        return t1 + t2

    par = (phi.parity + psi.parity) % 2
    return Cochain(spec, 2, par, ADJOINT, rule=rule, name=f"({phi.name}o{psi.name})")


def bracket21(phi: Cochain, psi: Cochain, spec: Optional[AlgebraSpec] = None, r: int = 0) -> Cochain:
    """Graded bracket of a 2-cochain with a 1-cochain:

        [phi, psi] = phi o psi - (-1)^{|phi||psi|} psi(phi(.,.)),

    which for phi = d (the bracket) is exactly the adjoint coboundary of psi,
    and vanishes iff psi is an a^r-twisted derivation.
    """
    spec = spec or phi.space
    a = circle21(phi, psi, spec, r)
    sign = -1 if (phi.parity & psi.parity) else 1

    def rule(x, y):
        t = psi.apply([phi.value(x, y)])
        if sign == 1:
            t = -t
        return a.value(x, y) + t

    par = (phi.parity + psi.parity) % 2
    return Cochain(spec, 2, par, ADJOINT, rule=rule, name=f"[{phi.name},{psi.name}]")


# ---------------------------------------------------------------------------
# unknown cochain spaces and matrix assembly


@dataclass
class CochainSpace:
    """A finite-dimensional space of unknown window cochains.

    Columns are (canonical tuple, target) pairs; for scalar cochains the
    target is None.  Targets of algebra-valued cochains are drawn from the
    finite degree slice deg(tuple) + degree, so the value space needs no
    window truncation at all.
    """

    spec: AlgebraSpec
    arity: int
    parity: int
    target: str
    degree: Optional[HalfInt]
    cols: list[tuple[tuple, Optional[BasisVector]]] = field(default_factory=list)
    index: dict = field(default_factory=dict)
    by_tuple: dict = field(default_factory=dict)

    def add(self, key: tuple, tgt: Optional[BasisVector]) -> None:
        col = len(self.cols)
        self.cols.append((key, tgt))
        self.index[(key, tgt)] = col
        self.by_tuple.setdefault(key, []).append((col, tgt))

    @property
    def dim(self) -> int:
        return len(self.cols)

    def read_terms(self, args: Sequence[BasisVector]) -> list[tuple[int, Optional[BasisVector], int]]:
        """Unknown columns contributing to a read at ``args`` with their signs."""
        canon = canonical_tuple(args, self.spec.parity)
        if canon is None:
            return []
        key, sign = canon
        return [(col, tgt, sign) for col, tgt in self.by_tuple.get(key, [])]

    def cochain_from_vector(self, vec: dict[int, QRat], name: str = "") -> Cochain:
        f = Cochain(self.spec, self.arity, self.parity, self.target, self.degree, name=name)
        for col, coeff in sorted(vec.items()):
            key, tgt = self.cols[col]
            old = f.values.get(key, f._zero())
            add = coeff if tgt is None else Element.single(tgt, coeff)
            v = old + add
            if v.is_zero:
                f.values.pop(key, None)
            else:
                f.values[key] = v
        return f

    def vector_from_cochain(self, f: Cochain) -> dict[int, QRat]:
        vec: dict[int, QRat] = {}
        for key, tgt in self.cols:
            v = f.value(*key)
            coeff = v if tgt is None else v.coeff(tgt)
            if not coeff.is_zero:
                vec[self.index[(key, tgt)]] = coeff
        return vec


def one_cochain_space(
    spec: AlgebraSpec,
    domain: Sequence[BasisVector],
    parity: int,
    target: str = ADJOINT,
    degree: Optional[HalfInt] = None,
    alpha_constrained: bool = False,
) -> CochainSpace:
    """Unknown 1-cochains on the given domain basis.

    For scalar targets the value sits in degree 0 and parity 0, so a basis
    vector contributes one unknown iff its parity matches the cochain parity
    (and its degree is -degree when a degree is imposed).  For adjoint
    targets, the targets are the degree slice deg(b) + degree of matching
    parity; ``alpha_constrained`` keeps only targets with the same twist
    eigenvalue as the source, which realises f(alpha(x)) = alpha(f(x)) for
    the diagonal built-in twists.
    """
    space = CochainSpace(spec, 1, parity, target, degree)
    for b in sorted(domain):
        if target == SCALAR:
            if spec.parity(b) != parity:
                continue
            if degree is not None and (spec.degree(b) + degree).twice != 0:
                continue
            # h(alpha(b)) = h(b) forces h(b) = 0 unless the twist eigenvalue is 1
            if alpha_constrained and spec.alpha_scalar(b) != ONE:
                continue
            space.add((b,), None)
        else:
            if degree is None:
                raise ValueError("adjoint 1-cochain spaces need a degree to stay finite")
            d = spec.degree(b) + degree
            tp = (spec.parity(b) + parity) % 2
            for tgt in spec.basis_at_degree(d, parity=tp):
                if alpha_constrained and spec.alpha_scalar(b) != spec.alpha_scalar(tgt):
                    continue
                space.add((b,), tgt)
    return space


def two_cochain_space(
    spec: AlgebraSpec,
    window,
    parity: int,
    degree: Optional[HalfInt],
    target: str = SCALAR,
) -> CochainSpace:
    """Unknown 2-cochains on canonical window pairs (diagonal pairs only for
    odd generators, where alternation is a symmetry)."""
    basis = spec.basis_window(window)
    space = CochainSpace(spec, 2, parity, target, degree)
    for i, b1 in enumerate(basis):
        for b2 in basis[i:]:
            if b1 == b2 and spec.parity(b1) == EVEN:
                continue
            pair_par = (spec.parity(b1) + spec.parity(b2)) % 2
            d = spec.degree(b1) + spec.degree(b2)
            if target == SCALAR:
                if pair_par != parity:
                    continue
                if degree is not None and (d + degree).twice != 0:
                    continue
                space.add((b1, b2), None)
            else:
                if degree is None:
                    raise ValueError("adjoint 2-cochain spaces need a degree")
                tp = (pair_par + parity) % 2
                for tgt in spec.basis_at_degree(d + degree, parity=tp):
                    space.add((b1, b2), tgt)
    return space


def _expand_slots(slots: Sequence[Element]):
    """Yield (basis tuple, coefficient) over the product of the slot terms."""
    for combo in itertools.product(*(e.items_sorted() for e in slots)):
        coeff = ONE
        for _, c in combo:
            coeff = coeff * c
        yield tuple(bv for bv, _ in combo), coeff


def delta_rows(
    space: CochainSpace,
    spec: AlgebraSpec,
    args: Sequence[BasisVector],
    coefficients: str,
    r: int = 0,
) -> dict[Optional[BasisVector], dict[int, QRat]]:
    """Linearise the coboundary at one output tuple over the unknown columns.

    Returns, per value component w (None for scalar rows), the coefficients
    of each unknown column in the equation  (delta f)(args) . w = 0.
    """
    k = space.arity
    par = [spec.parity(a) for a in args]
    rows: dict[Optional[BasisVector], dict[int, QRat]] = defaultdict(dict)

    def bump(w, col, val: QRat):
        row = rows[w]
        cur = row.get(col)
        cur = val if cur is None else cur + val
        if cur.is_zero:
            row.pop(col, None)
        else:
            row[col] = cur

    for s in range(k + 1):
        for t in range(s + 1, k + 1):
            sgn = -1 if (t + par[t] * sum(par[s + 1:t])) % 2 else 1
            slots: list[Element] = []
            for j in range(k + 1):
                if j == t:
                    continue
                if j == s:
                    slots.append(spec.bracket_basis(args[s], args[t]))
                else:
                    slots.append(spec.alpha_basis(args[j]))
            for key, coeff in _expand_slots(slots):
                for col, tgt, csign in space.read_terms(key):
                    bump(tgt, col, coeff * (sgn * csign))

    if coefficients == ADJOINT:
        for s in range(k + 1):
            sgn = -1 if (s + par[s] * (space.parity + sum(par[:s]))) % 2 else 1
            rest = tuple(a for j, a in enumerate(args) if j != s)
            xs = spec.alpha_power(args[s], k - 1 + r)
            for col, tgt, csign in space.read_terms(rest):
                img = spec.bracket(xs, Element.single(tgt))
                for w, mu in img.terms.items():
                    bump(w, col, mu * (sgn * csign))
    return rows


def reads_stay_inside(spec: AlgebraSpec, args: Sequence[BasisVector], allowed: set) -> bool:
    """True when every bracket of two of the args is supported on ``allowed``,
    so a coboundary evaluated there only reads cochain values inside it."""
    for i in range(len(args)):
        for j in range(i + 1, len(args)):
            for bv in spec.bracket_basis(args[i], args[j]).terms:
                if bv not in allowed:
                    return False
    return True


def interior_tuples(spec: AlgebraSpec, window, arity: int) -> list[tuple]:
    """Canonical window tuples whose pairwise brackets stay inside the window."""
    basis = spec.basis_window(window)
    allowed = set(basis)
    out = []
    for args in itertools.combinations_with_replacement(basis, arity):
        if canonical_tuple(args, spec.parity) is None:
            continue
        if reads_stay_inside(spec, args, allowed):
            out.append(args)
    return out


def assemble_delta_system(
    space: CochainSpace,
    spec: AlgebraSpec,
    tuples: Sequence[tuple],
    coefficients: str,
    r: int = 0,
    rhs_cochain: Optional[Cochain] = None,
) -> tuple[LinearSystem, dict[int, QRat]]:
    """Assemble (delta f)(t) = rhs(t) rows for every tuple t; rhs defaults to 0."""
    system = LinearSystem(space.dim, col_labels=space.cols)
    rhs: dict[int, QRat] = {}
    for args in tuples:
        rows = delta_rows(space, spec, args, coefficients, r)
        targets = set(rows)
        rhs_val: Optional[Value] = None
        if rhs_cochain is not None:
            rhs_val = rhs_cochain.value(*args)
            if isinstance(rhs_val, Element):
                targets |= set(rhs_val.terms)
            elif not rhs_val.is_zero:
                targets.add(None)
        for w in sorted(targets, key=lambda t: (t is not None, t)):
            rid = system.nrows
            system.add_row(rows.get(w, {}), label=(args, w))
            if rhs_val is not None:
                b = rhs_val if w is None else rhs_val.coeff(w)
                if isinstance(b, Element):
                    raise TypeError("scalar rhs expected on scalar rows")
                if not b.is_zero:
                    rhs[rid] = b
    return system, rhs


# ---------------------------------------------------------------------------
# solvers


class WindowTooSmall(ValueError):
    pass


@dataclass
class CoboundaryResult:
    """Outcome of solving delta1(h) = target on the interior window."""

    solved: bool
    witness: Optional[Cochain]
    solve_result: SolveResult
    alpha_constrained: bool
    rows: int

    def certificate(self) -> dict:
        out = self.solve_result.certificate()
        out["alpha_constrained"] = self.alpha_constrained
        return out


def coboundary_solve(
    target: Cochain,
    spec: Optional[AlgebraSpec] = None,
    window=6,
    alpha_constrained: bool = True,
    coefficients: Optional[str] = None,
    r: int = 0,
) -> CoboundaryResult:
    """Decide whether ``target`` is a coboundary of a window 1-cochain.

    Unknowns are the values of h on the window basis (twist-compatible when
    ``alpha_constrained``); equations are delta1(h) = target on every window
    pair whose bracket stays inside the window, so restrictions of genuine
    global witnesses always remain feasible.  Returns either a verified
    witness or the rank-based inconsistency certificate of the solver.
    """
    spec = spec or target.space
    if coefficients is None:
        coefficients = SCALAR if target.target == SCALAR else ADJOINT
    window = IndexWindow.make(window)
    basis = spec.basis_window(window)
    space = one_cochain_space(
        spec, basis, target.parity, target=target.target,
        degree=target.degree if target.target == ADJOINT else None,
        alpha_constrained=alpha_constrained,
    )
    pairs = interior_tuples(spec, window, 2)
    if not pairs:
        raise WindowTooSmall(f"window {window.bound} has no interior pairs")
    system, rhs = assemble_delta_system(space, spec, pairs, coefficients, r, rhs_cochain=target)
    res = solve(system, rhs)
    witness = None
    if res.consistent:
        witness = space.cochain_from_vector(res.solution, name="h")
    return CoboundaryResult(res.consistent, witness, res, alpha_constrained, system.nrows)


@dataclass
class DerivationResult:
    """Kernel of [d, .] on degree-homogeneous window 1-cochains."""

    dimension: int
    basis: list[Cochain]
    vectors: list[dict[int, QRat]]
    spaces: list[CochainSpace]


def derivation_solve(
    spec: AlgebraSpec,
    r: int = 0,
    degree: Optional[HalfInt] = None,
    window=8,
    parity: Optional[int] = None,
) -> DerivationResult:
    """Solve [d, f] = 0 for degree-homogeneous window 1-cochains.

    Solves each parity separately (the coboundary signs depend on |f|) and
    concatenates.  Degrees use the grading deg G_n = n + 1, under which all
    four standard derivations are degree 0; their degrees under the naive
    deg G_n = n convention differ by the G-shift and are reported by tests.
    """
    degree = HalfInt.make(degree if degree is not None else 0)
    window = IndexWindow.make(window)
    basis = spec.basis_window(window)
    pairs = interior_tuples(spec, window, 2)
    if not pairs:
        raise WindowTooSmall(f"window {window.bound} has no interior pairs")
    parities = [parity] if parity is not None else [EVEN, ODD]
    all_vectors: list[dict[int, QRat]] = []
    cochains: list[Cochain] = []
    spaces: list[CochainSpace] = []
    offset = 0
    for p in parities:
        space = one_cochain_space(spec, basis, p, target=ADJOINT, degree=degree)
        spaces.append(space)
        system, _ = assemble_delta_system(space, spec, pairs, ADJOINT, r)
        for vec in kernel(system):
            all_vectors.append({offset + c: v for c, v in vec.items()})
            cochains.append(space.cochain_from_vector(vec, name=f"der[p={p}]"))
        offset += space.dim
    return DerivationResult(len(all_vectors), cochains, all_vectors, spaces)


def derivation_span_contains(result: DerivationResult, f: Cochain) -> bool:
    """Whether the window restriction of f lies in the solved kernel span."""
    vec: dict[int, QRat] = {}
    off = 0
    for sp in result.spaces:
        if sp.parity == f.parity:
            for col, val in sp.vector_from_cochain(f).items():
                vec[off + col] = val
        off += sp.dim
    if not vec:
        return True
    return span_contains(result.vectors, vec)


# ---------------------------------------------------------------------------
# window cohomology


@dataclass
class CohomologyWindowResult:
    dim_Z: int
    dim_B: int
    dim_H: int
    dim_B_unconstrained: int
    dim_H_unconstrained: int
    representative_in_Z: Optional[bool]
    representative_in_B: Optional[bool]
    representative_in_B_unconstrained: Optional[bool]
    decomposition_ok: Optional[bool]
    detail: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        out = {
            "dim_Z": self.dim_Z,
            "dim_B": self.dim_B,
            "dim_H": self.dim_H,
            "dim_B_unconstrained": self.dim_B_unconstrained,
            "dim_H_unconstrained": self.dim_H_unconstrained,
        }
        if self.representative_in_Z is not None:
            out["representative_is_cocycle"] = self.representative_in_Z
            out["representative_is_coboundary"] = self.representative_in_B
            out["representative_is_coboundary_unconstrained"] = self.representative_in_B_unconstrained
            out["every_window_cocycle_decomposes"] = self.decomposition_ok
        out.update(self.detail)
        return out


def cohomology_window_dims(
    spec: AlgebraSpec,
    coefficients: str = SCALAR,
    parity: int = EVEN,
    degree: Optional[HalfInt] = None,
    window=6,
    representative: Optional[Cochain] = None,
    r: int = 0,
) -> CohomologyWindowResult:
    """Window surrogate for the second cohomology in one parity and degree.

    Z is the kernel of the coboundary matrix over all window pairs, with
    constraint rows only on triples whose reads stay inside the window.
    Coboundaries of window 1-cochains are well defined on interior pairs
    only, so comparisons (dim H, membership of the representative, the
    decomposition test) happen on those coordinates.  dim H counts window
    cocycle classes modulo coboundaries seen on the interior sub-window; the
    full cohomology statement is out of reach of any finite window.

    The coboundary side is computed both with and without the
    twist-compatibility constraint on 1-cochains and both ranks are
    reported.  The decomposition test ("every window cocycle is a coboundary
    plus a multiple of the representative") uses the unconstrained side:
    with beta = id on scalars the constrained 1-cochain space collapses to
    {0}, under which no two-class picture could come out of any window.
    """
    degree = HalfInt.make(degree if degree is not None else 0)
    window = IndexWindow.make(window)
    space2 = two_cochain_space(spec, window, parity, degree, target=coefficients)
    triples = interior_tuples(spec, window, 3)
    if not triples:
        raise WindowTooSmall(f"window {window.bound} has no interior triples")
    z_system, _ = assemble_delta_system(space2, spec, triples, coefficients, r)
    z_basis = kernel(z_system)
    dim_z = len(z_basis)

    # coboundary vectors on interior pairs
    pairs = interior_tuples(spec, window, 2)
    pair_cols = [i for i, (key, _) in enumerate(space2.cols) if key in set(pairs)]
    pair_col_set = set(pair_cols)

    def restrict(vec: dict[int, QRat]) -> dict[int, QRat]:
        return {c: v for c, v in vec.items() if c in pair_col_set}

    basis1 = spec.basis_window(window)

    def coboundary_vectors(constrained: bool) -> list[dict[int, QRat]]:
        space1 = one_cochain_space(
            spec, basis1, parity, target=coefficients,
            degree=degree if coefficients == ADJOINT else None,
            alpha_constrained=constrained,
        )
        # assemble the linearized delta1 over the interior pairs and read the
        # coboundary generators off as its columns
        by_pair: dict[tuple, list[tuple[int, Optional[BasisVector]]]] = defaultdict(list)
        for c2 in pair_cols:
            key, tgt = space2.cols[c2]
            by_pair[key].append((c2, tgt))
        columns: dict[int, dict[int, QRat]] = defaultdict(dict)
        for key, cols in by_pair.items():
            rows = delta_rows(space1, spec, key, coefficients, r)
            for c2, tgt in cols:
                for col1, coeff in rows.get(tgt, {}).items():
                    columns[col1][c2] = coeff
        return [columns[c] for c in sorted(columns)]

    b_vecs = coboundary_vectors(constrained=True)
    b_vecs_unc = coboundary_vectors(constrained=False)

    def vectors_rank(vectors: list[dict[int, QRat]]) -> int:
        sysm = LinearSystem(space2.dim)
        for v in vectors:
            sysm.add_row(v)
        return rank(sysm)

    dim_b = vectors_rank(b_vecs)
    dim_b_unc = vectors_rank(b_vecs_unc)

    z_int = [restrict(v) for v in z_basis]
    dim_h = vectors_rank(b_vecs + z_int) - dim_b
    dim_h_unc = vectors_rank(b_vecs_unc + z_int) - dim_b_unc

    rep_in_z = rep_in_b = rep_in_b_unc = decomposition_ok = None
    detail: dict = {"window_pairs": space2.dim, "interior_triples": len(triples)}
    if representative is not None:
        rep_vec = space2.vector_from_cochain(representative)
        bad = [i for i, row in enumerate(z_system.rows)
               if not _dot(row, rep_vec).is_zero]
        rep_in_z = not bad
        rep_int = restrict(rep_vec)
        rep_in_b = span_contains(b_vecs, rep_int)
        rep_in_b_unc = span_contains(b_vecs_unc, rep_int)
        with_rep = b_vecs_unc + [rep_int]
        decomposition_ok = vectors_rank(with_rep + z_int) == vectors_rank(with_rep)
    return CohomologyWindowResult(
        dim_z, dim_b, dim_h, dim_b_unc, dim_h_unc,
        rep_in_z, rep_in_b, rep_in_b_unc, decomposition_ok, detail,
    )


def _dot(row: dict[int, QRat], vec: dict[int, QRat]) -> QRat:
    acc = ZERO
    for c, a in row.items():
        v = vec.get(c)
        if v is not None:
            acc = acc + a * v
    return acc


def window_cocycle_space(
    spec: AlgebraSpec,
    coefficients: str,
    parity: int,
    degree: HalfInt,
    window,
    r: int = 0,
) -> tuple[CochainSpace, list[Cochain]]:
    """Kernel basis of the interior coboundary constraints as cochains."""
    window = IndexWindow.make(window)
    space2 = two_cochain_space(spec, window, parity, HalfInt.make(degree), target=coefficients)
    triples = interior_tuples(spec, window, 3)
    system, _ = assemble_delta_system(space2, spec, triples, coefficients, r)
    vecs = kernel(system)
    return space2, [space2.cochain_from_vector(v, name=f"z{i}") for i, v in enumerate(vecs)]


# ---------------------------------------------------------------------------
# the index-shift recurrence of the mixed-slot cocycle components


def recurrence_residual(a: Callable[[int, int], QRat], s: int, n: int, m: int) -> QRat:
    """({m}-{n}) a_{s,n+m} - ({m}-{n+s}) a_{s,n} - ({m+s}-{n}) a_{s,m}."""
    return (
        (q_number(m) - q_number(n)) * a(s, n + m)
        - (q_number(m) - q_number(n + s)) * a(s, n)
        - (q_number(m + s) - q_number(n)) * a(s, m)
    )


def recurrence_check(a: Callable[[int, int], QRat], s_values: Sequence[int], window=8) -> Report:
    """Verify the recurrence for a coefficient family a(s, n) on all window
    index pairs (n, m) with n + m inside the window."""
    window = IndexWindow.make(window)
    ns = window.integers()
    report = Report(name="recurrence")
    for s in s_values:
        for n in ns:
            for m in ns:
                if abs(n + m) > window.bound:
                    continue
                report.checked += 1
                res = recurrence_residual(a, s, n, m)
                if not res.is_zero:
                    report.add_violation("recurrence", (s, n, m), res)
    return report


def recurrence_solve(s: int, window=8) -> list[dict[int, QRat]]:
    """Kernel basis of the window recurrence in the unknowns a_n, n in window.

    The expected picture: a one-dimensional space spanned by a_n = n at
    shift s = 0, and only the zero solution for s != 0.
    """
    window = IndexWindow.make(window)
    ns = window.integers()
    col = {n: i for i, n in enumerate(ns)}
    system = LinearSystem(len(ns), col_labels=ns)
    for n in ns:
        for m in ns:
            if m <= n:
                continue  # the relation is symmetric up to sign in (n, m)
            if abs(n + m) > window.bound:
                continue
            row: dict[int, QRat] = {}

            def bump(c, v):
                if c in row:
                    row[c] = row[c] + v
                else:
                    row[c] = v

            bump(col[n + m], q_number(m) - q_number(n))
            bump(col[n], -(q_number(m) - q_number(n + s)))
            bump(col[m], -(q_number(m + s) - q_number(n)))
            system.add_row(row, label=(s, n, m))
    return [
        {ns[c]: v for c, v in vec.items()}
        for vec in kernel(system)
    ]


# ---------------------------------------------------------------------------
# structure system for 2-cochains on an extension


def extension_component(
    f: Cochain, n_module_args: int, value_in_module: bool, name: str = ""
) -> Cochain:
    """Project a cochain on a split extension to one block of its component
    decomposition: keep tuples with exactly ``n_module_args`` central
    arguments and the module (resp. base) part of the value."""
    spec = f.space

    def rule(*args: BasisVector) -> Value:
        count = sum(1 for b in args if b.kind == "C")
        if count != n_module_args:
            return f._zero()
        v = f.value(*args)
        if isinstance(v, QRat):
            return v
        keep = {bv: c for bv, c in v.terms.items() if (bv.kind == "C") == value_in_module}
        return Element(keep)

    return Cochain(spec, f.arity, f.parity, f.target, degree=f.degree, rule=rule,
                   name=name or f"{f.name}-component")


def decompose_2cochain(f: Cochain) -> dict[str, Cochain]:
    """The six blocks of a 2-cochain on G + V (V spanned by the central C):

    base_base   (G onto the base),      base_scalar (G onto V),
    mixed_base  (G x V onto the base),  mixed_scalar (G x V onto V),
    module_base (V x V onto the base),  module_scalar (V x V onto V).
    """
    return {
        "base_base": extension_component(f, 0, False, "f~"),
        "base_scalar": extension_component(f, 0, True, "v"),
        "mixed_base": extension_component(f, 1, False, "f^"),
        "mixed_scalar": extension_component(f, 1, True, "v^"),
        "module_base": extension_component(f, 2, False, "f-"),
        "module_scalar": extension_component(f, 2, True, "v-"),
    }


def _classify_triples(spec: AlgebraSpec, window, n_central: int) -> list[tuple]:
    base = [b for b in spec.basis_window(window) if b.kind != "C"]
    out = []
    for args in itertools.combinations_with_replacement(base, 3 - n_central):
        full = args + (CENTRAL,) * n_central
        if canonical_tuple(full, spec.parity) is None:
            continue
        out.append(full)
    return out


def structure_system_check(f: Cochain, spec: Optional[AlgebraSpec] = None, window=4) -> Report:
    """Evaluate the closedness of a 2-cochain on a split central extension
    equation block by equation block.

    The seven blocks are the base/module projections of [d, f] on the four
    argument classes (three base arguments; two base and one central; one
    base and two central; three central).  On top of those, the grading
    filters the first and third blocks into the eight consequence families
    (14)-(21) style: single bracket terms must vanish away from the cocycle
    support and the two-term identities must cancel on it.  Each named check
    reports its own violations.
    """
    spec = spec or f.space
    if spec.central_parity is None:
        raise ValueError("structure_system_check needs a split central extension")
    d = bracket_cochain(spec)
    df = nr_bracket2(d, f, spec)
    comp = decompose_2cochain(f)

    report = Report(name=f"structure-system[{f.name or 'f'};{spec.name}]")

    def project(v: Element, module: bool) -> Element:
        return Element({bv: c for bv, c in v.terms.items() if (bv.kind == "C") == module})

    blocks = [
        ("eq1-base-args-base-part", 0, False),
        ("eq2-base-args-module-part", 0, True),
        ("eq3-mixed-args-base-part", 1, False),
        ("eq4-mixed-args-module-part", 1, True),
        ("eq5-two-central-base-part", 2, False),
        ("eq6-two-central-module-part", 2, True),
        ("eq7-three-central", 3, None),
    ]
    for name, n_central, module in blocks:
        sub = Report(name=name)
        for args in _classify_triples(spec, window, n_central):
            sub.checked += 1
            v = df.value(*args)
            if module is not None:
                v = project(v, module)
            if not v.is_zero:
                sub.add_violation(name, args, v)
        report.children.append(sub)

    # degree-filtered consequences; x_n denotes a base vector of degree n
    base = [b for b in spec.basis_window(window) if b.kind != "C"]
    deg = spec.degree
    d_tilde = nr_bracket2(
        extension_component(d, 0, False, "d~"), comp["base_base"], spec
    )
    d_hat = nr_bracket2(
        extension_component(d, 0, False, "d~"), comp["mixed_base"], spec
    )
    phi = extension_component(d, 0, True, "phi")

    checks = {
        "deg-eq-no-pair-sum-zero": Report(name="deg-eq-no-pair-sum-zero"),
        "deg-eq-pair-sum-zero": Report(name="deg-eq-pair-sum-zero"),
        "deg-eq-mixed-read-vanishes": Report(name="deg-eq-mixed-read-vanishes"),
        "deg-eq-mixed-block": Report(name="deg-eq-mixed-block"),
        "deg-eq-mixed-action": Report(name="deg-eq-mixed-action"),
        "deg-eq-mixed-zero-slot": Report(name="deg-eq-mixed-zero-slot"),
        "deg-eq-module-read-vanishes": Report(name="deg-eq-module-read-vanishes"),
        "deg-eq-module-bracket": Report(name="deg-eq-module-bracket"),
    }

    for x, y, z in itertools.combinations(base, 3):
        dx, dy, dz = deg(x), deg(y), deg(z)
        if len({dx.twice, dy.twice, dz.twice}) < 3:
            continue
        sums = [(dx + dy).twice, (dx + dz).twice, (dy + dz).twice]
        if all(s != 0 for s in sums):
            checks["deg-eq-no-pair-sum-zero"].checked += 1
            v = d_tilde.value(x, y, z)
            if not v.is_zero:
                checks["deg-eq-no-pair-sum-zero"].add_violation("", (x, y, z), v)
        else:
            checks["deg-eq-pair-sum-zero"].checked += 1
            v = project(df.value(x, y, z), False)
            if not v.is_zero:
                checks["deg-eq-pair-sum-zero"].add_violation("", (x, y, z), v)

    f_hat = comp["mixed_base"]
    f_bar = comp["module_base"]
    for x in base:
        for y, z in itertools.combinations(base, 2):
            if (deg(y) + deg(z)).twice == 0 or deg(y).twice == 0:
                continue
            checks["deg-eq-mixed-read-vanishes"].checked += 1
            v = f_hat.apply([spec.alpha_basis(x), phi.value(y, z)])
            if not v.is_zero:
                checks["deg-eq-mixed-read-vanishes"].add_violation("", (x, y, z), v)

    for x, y in itertools.combinations(base, 2):
        dx, dy = deg(x), deg(y)
        if (dx + dy).twice != 0 and dx.twice != 0 and dy.twice != 0:
            checks["deg-eq-mixed-block"].checked += 1
            v = project(d_hat.value(x, y, CENTRAL), False)
            if not v.is_zero:
                checks["deg-eq-mixed-block"].add_violation("", (x, y, CENTRAL), v)
        if dx.twice != dy.twice and dx.twice != 0 and dy.twice != 0:
            checks["deg-eq-mixed-action"].checked += 1
            v = f_hat.apply([spec.alpha_basis(x), spec.bracket_basis(y, CENTRAL)])
            if not v.is_zero:
                checks["deg-eq-mixed-action"].add_violation("", (x, y, CENTRAL), v)
        if (dx + dy).twice != 0 and dx.twice != 0 and dy.twice != 0:
            checks["deg-eq-module-read-vanishes"].checked += 1
            v = f_bar.apply([Element.single(CENTRAL), phi.value(x, y)])
            if not v.is_zero:
                checks["deg-eq-module-read-vanishes"].add_violation("", (x, y), v)

    for x in base:
        if deg(x).twice == 0:
            continue
        for y in [b for b in base if deg(b).twice == 0]:
            checks["deg-eq-mixed-zero-slot"].checked += 1
            v = project(df.value(y, x, CENTRAL), False)
            if not v.is_zero:
                checks["deg-eq-mixed-zero-slot"].add_violation("", (y, x, CENTRAL), v)
        checks["deg-eq-module-bracket"].checked += 1
        v = spec.bracket(spec.alpha_basis(x), project(f.value(CENTRAL, CENTRAL), False))
        if not v.is_zero:
            checks["deg-eq-module-bracket"].add_violation("", (x, CENTRAL, CENTRAL), v)

    report.children.extend(checks.values())
    return report


def vanishing_components_check(f: Cochain, window=4) -> Report:
    """The mixed- and module-argument blocks of a window 2-cocycle and its
    module-valued mixed block all vanish; checked on window tuples."""
    spec = f.space
    comp = decompose_2cochain(f)
    report = Report(name="vanishing-components")
    base = [b for b in spec.basis_window(window) if b.kind != "C"]
    checks = [
        ("mixed-base-vanishes", comp["mixed_base"], [(x, CENTRAL) for x in base]),
        ("mixed-scalar-vanishes", comp["mixed_scalar"], [(x, CENTRAL) for x in base]),
        ("module-base-vanishes", comp["module_base"], [(CENTRAL, CENTRAL)]),
        ("module-scalar-vanishes", comp["module_scalar"], [(CENTRAL, CENTRAL)]),
    ]
    for name, g, tuples in checks:
        sub = Report(name=name)
        for t in tuples:
            if canonical_tuple(t, spec.parity) is None:
                continue
            sub.checked += 1
            v = g.value(*t)
            if not v.is_zero:
                sub.add_violation(name, t, v)
        report.children.append(sub)
    return report


# ---------------------------------------------------------------------------
# cochain fixtures (JSON)


def cochain_to_fixture(f: Cochain, window=None) -> list[dict]:
    """Serialize stored values (canonical tuples) to the fixture format."""
    entries = []
    items = sorted(f.values.items())
    for key, v in items:
        entry = {
            "tuple": [[b.kind, str(b.index)] for b in key],
            "value": str(v) if isinstance(v, QRat) else v.serialize(),
        }
        entries.append(entry)
    return entries


def cochain_from_fixture(
    data: list[dict], spec: AlgebraSpec, parity: Optional[int] = None,
    degree: Optional[HalfInt] = None, name: str = "fixture",
) -> Cochain:
    """Build a finite-support cochain from the JSON fixture format:
    a list of {"tuple": [[kind, index], ...], "value": scalar-string or
    element triples}.  Parity is inferred when the entries are homogeneous.
    """
    from .superalg import parse_basis_vector

    if not isinstance(data, list) or not data:
        raise ValueError("fixture must be a non-empty list of entries")
    parsed = []
    arity = None
    target = None
    for entry in data:
        args = tuple(parse_basis_vector(k, i) for k, i in entry["tuple"])
        if arity is None:
            arity = len(args)
        elif arity != len(args):
            raise ValueError("fixture mixes tuple lengths")
        raw = entry["value"]
        if isinstance(raw, str):
            v: Value = parse_scalar(raw)
            this_target = SCALAR
        else:
            v = Element.deserialize(raw)
            this_target = ADJOINT
        if target is None:
            target = this_target
        elif target != this_target:
            raise ValueError("fixture mixes scalar and element values")
        parsed.append((args, v))
    if parity is None:
        parities = set()
        for args, v in parsed:
            pa = sum(spec.parity(b) for b in args)
            pv = 0 if target == SCALAR else spec.element_parity(v)
            if pv is None:
                raise ValueError("fixture value has mixed parity")
            parities.add((pa + pv) % 2)
        if len(parities) != 1:
            raise ValueError("fixture entries have mixed cochain parity; pass parity=")
        parity = parities.pop()
    f = Cochain(spec, arity, parity, target, degree=degree, name=name)
    for args, v in parsed:
        f.set(args, v)
    return f
