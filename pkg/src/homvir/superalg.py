"""Symbolic elements and Hom-Lie superalgebra specifications.

An algebra is presented by structure-constant rules on a basis of symbolic
generators: L_n (even), G_n (odd) for the q-deformed Witt superalgebra, F_m
with half-odd m for the Neveu-Schwarz odd part, and at most one central
generator C.  A spec bundles the bracket rule, the twist map alpha, parities,
and the integer (or half-integer) grading, plus an index-window enumerator
for verification sweeps.

The bracket rule is only consulted on canonically ordered pairs; the other
triangle is filled in by the super-antisymmetry reflection, so skewness holds
by construction.  The Hom-Jacobi identity, in contrast, is a genuine theorem
about the structure constants and is what ``check_hom_jacobi`` sweeps.

Catalog (addressable by name from the CLI):

* ``witt-q``          L, G with q-number structure constants, diagonal twist
* ``ramond``          witt-q plus an even central C on [L_n, L_-n]
* ``neveu-schwarz``   L, F (half-odd), even central C on [L_n, L_-n]
* ``special-ramond``  witt-q plus an odd central C on [L_n, G_m], n+m = -1
* ``trivial-virasoro`` witt-q plus a central C with no cocycle term
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Optional, Sequence, Union

from .qfield import (
    HalfInt,
    HalfIntLike,
    QRat,
    ZERO,
    ONE,
    b_coefficient,
    parse_half_int,
    parse_scalar,
    q_number,
    q_power,
    qrat_to_str,
)

KINDS = ("C", "F", "G", "L")

EVEN = 0
ODD = 1


@dataclass(frozen=True, order=True)
class BasisVector:
    """A symbolic generator: kind in {L, G, F, C} plus a half-integer index.

    L and G carry integer indices, F half-odd ones, and the central C always
    has index 0.  The derived ordering (kind, then index) is the canonical
    tuple order used for cochain storage.
    """

    kind: str
    index: HalfInt

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown generator kind {self.kind!r}")
        if self.kind in ("L", "G") and not self.index.is_integer:
            raise ValueError(f"{self.kind} index must be an integer, got {self.index}")
        if self.kind == "F" and self.index.is_integer:
            raise ValueError(f"F index must be half-odd, got {self.index}")
        if self.kind == "C" and self.index.twice != 0:
            raise ValueError("the central generator has index 0")

    def __str__(self) -> str:
        if self.kind == "C":
            return "C"
        return f"{self.kind}[{self.index}]"


def L(n: int) -> BasisVector:
    return BasisVector("L", HalfInt.make(n))


def G(n: int) -> BasisVector:
    return BasisVector("G", HalfInt.make(n))


def F(m: HalfIntLike) -> BasisVector:
    return BasisVector("F", HalfInt.make(m))


CENTRAL = BasisVector("C", HalfInt(0))


def parse_basis_vector(kind: str, index) -> BasisVector:
    if isinstance(index, str):
        index = parse_half_int(index)
    return BasisVector(kind, HalfInt.make(index))


class Element:
    """A finite linear combination of basis vectors with QRat coefficients.

    Zero coefficients are never stored; the zero element is the empty map.
    Treated as immutable.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: dict | None = None):
        self.terms: dict[BasisVector, QRat] = terms if terms is not None else {}

    @staticmethod
    def zero() -> "Element":
        return _EL_ZERO

    @staticmethod
    def single(bv: BasisVector, coeff: QRat = ONE) -> "Element":
        if coeff.is_zero:
            return _EL_ZERO
        return Element({bv: coeff})

    @staticmethod
    def from_terms(pairs: Iterable[tuple[BasisVector, QRat]]) -> "Element":
        out: dict[BasisVector, QRat] = {}
        for bv, c in pairs:
            v = out.get(bv)
            v = c if v is None else v + c
            if v.is_zero:
                out.pop(bv, None)
            else:
                out[bv] = v
        return Element(out)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def coeff(self, bv: BasisVector) -> QRat:
        return self.terms.get(bv, ZERO)

    def __add__(self, other: "Element") -> "Element":
        if not self.terms:
            return other
        if not other.terms:
            return self
        out = dict(self.terms)
        for bv, c in other.terms.items():
            v = out.get(bv)
            if v is None:
                out[bv] = c
            else:
                v = v + c
                if v.is_zero:
                    del out[bv]
                else:
                    out[bv] = v
        return Element(out)

    def __sub__(self, other: "Element") -> "Element":
        return self + (-other)

    def __neg__(self) -> "Element":
        return Element({bv: -c for bv, c in self.terms.items()})

    def scale(self, a: QRat) -> "Element":
        if a.is_zero:
            return _EL_ZERO
        if a.is_one:
            return self
        return Element({bv: c * a for bv, c in self.terms.items()})

    def __eq__(self, other) -> bool:
        return isinstance(other, Element) and self.terms == other.terms

    __hash__ = None

    def items_sorted(self) -> list[tuple[BasisVector, QRat]]:
        return sorted(self.terms.items(), key=lambda kv: kv[0])

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        return " + ".join(f"({c})*{bv}" for bv, c in self.items_sorted())

    __repr__ = __str__

    def serialize(self) -> list[list[str]]:
        return [[bv.kind, str(bv.index), qrat_to_str(c)] for bv, c in self.items_sorted()]

    @staticmethod
    def deserialize(data: Sequence[Sequence[str]]) -> "Element":
        return Element.from_terms(
            (parse_basis_vector(kind, idx), parse_scalar(cstr)) for kind, idx, cstr in data
        )


_EL_ZERO = Element({})


class LinearMap:
    """A linear map given by its values on basis vectors (Elements)."""

    def __init__(self, rule: Callable[[BasisVector], Element], name: str = ""):
        self.rule = rule
        self.name = name

    def __call__(self, x: Union[Element, BasisVector]) -> Element:
        if isinstance(x, BasisVector):
            return self.rule(x)
        out = _EL_ZERO
        for bv, c in x.terms.items():
            out = out + self.rule(bv).scale(c)
        return out

    def compose(self, other: "LinearMap") -> "LinearMap":
        return LinearMap(lambda b: self(other(b)), name=f"{self.name}∘{other.name}")

    def __add__(self, other: "LinearMap") -> "LinearMap":
        return LinearMap(lambda b: self.rule(b) + other.rule(b))

    def __neg__(self) -> "LinearMap":
        return LinearMap(lambda b: -self.rule(b))

    def scale(self, a: QRat) -> "LinearMap":
        return LinearMap(lambda b: self.rule(b).scale(a))

    @staticmethod
    def identity() -> "LinearMap":
        return LinearMap(lambda b: Element.single(b), name="id")

    @staticmethod
    def zero() -> "LinearMap":
        return LinearMap(lambda b: _EL_ZERO, name="0")


# ---------------------------------------------------------------------------
# windows and reports


@dataclass(frozen=True)
class IndexWindow:
    """The finite index range |index| <= bound used by verification sweeps."""

    bound: int

    @staticmethod
    def make(w: Union["IndexWindow", int]) -> "IndexWindow":
        if isinstance(w, IndexWindow):
            return w
        if isinstance(w, int):
            if w < 0:
                raise ValueError("window bound must be nonnegative")
            return IndexWindow(w)
        raise TypeError(f"cannot interpret {w!r} as an index window")

    def contains(self, m: HalfInt) -> bool:
        return abs(m.twice) <= 2 * self.bound

    def integers(self) -> list[int]:
        return list(range(-self.bound, self.bound + 1))

    def half_odds(self) -> list[HalfInt]:
        return [HalfInt(t) for t in range(-2 * self.bound + 1, 2 * self.bound, 2)]


@dataclass(frozen=True)
class Violation:
    check: str
    where: tuple
    residual: str

    def as_dict(self) -> dict:
        return {
            "check": self.check,
            "where": [str(x) for x in self.where],
            "residual": self.residual,
        }


@dataclass
class Report:
    """Outcome of a verification sweep: how many tuples were checked and
    every violation found (with its offending tuple and nonzero residual)."""

    name: str
    checked: int = 0
    violations: list[Violation] = field(default_factory=list)
    children: list["Report"] = field(default_factory=list)
    info: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.violations and all(c.ok for c in self.children)

    def add_violation(self, check: str, where: tuple, residual) -> None:
        self.violations.append(Violation(check, where, str(residual)))

    def merge(self, other: "Report") -> None:
        self.checked += other.checked
        self.violations.extend(other.violations)
        self.children.extend(other.children)

    def as_dict(self) -> dict:
        out = {
            "name": self.name,
            "status": "pass" if self.ok else "fail",
            "checked": self.checked,
        }
        if self.info:
            out["info"] = self.info
        if self.violations:
            out["witnesses"] = [v.as_dict() for v in self.violations[:10]]
            out["violation_count"] = len(self.violations)
        if self.children:
            out["children"] = [c.as_dict() for c in self.children]
        return out


def thread_count() -> int:
    """Worker cap from HOMVIR_THREADS (default 1: deterministic serial sweeps)."""
    raw = os.environ.get("HOMVIR_THREADS", "1")
    try:
        n = int(raw)
    except ValueError:
        return 1
    return max(1, n)


def parallel_map(fn, items: Sequence):
    """Order-preserving map, fanned out over threads when HOMVIR_THREADS > 1."""
    n = thread_count()
    if n <= 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=n) as pool:
        return list(pool.map(fn, items))


# ---------------------------------------------------------------------------
# algebra specifications


class UnknownBasisVector(ValueError):
    pass


class AlgebraSpec:
    """A Hom-Lie superalgebra presented by rules on basis vectors.

    ``bracket_rule`` is consulted only on canonically ordered pairs; the
    reflected values follow from super-antisymmetry.  ``alpha_rule`` maps a
    basis vector to a scalar multiple of itself for every built-in algebra
    (the twist is diagonal), but linear extension handles the general case.
    """

    def __init__(
        self,
        name: str,
        bracket_rule: Callable[[BasisVector, BasisVector], Element],
        alpha_rule: Callable[[BasisVector], Element],
        parity_rule: Callable[[BasisVector], int],
        degree_rule: Callable[[BasisVector], HalfInt],
        contains: Callable[[BasisVector], bool],
        basis_kinds: Sequence[str],
        central_parity: Optional[int] = None,
    ):
        self.name = name
        self._bracket_rule = bracket_rule
        self._alpha_rule = alpha_rule
        self._parity_rule = parity_rule
        self._degree_rule = degree_rule
        self._contains = contains
        self.basis_kinds = tuple(basis_kinds)
        self.central_parity = central_parity
        self.central = CENTRAL if central_parity is not None else None
        self._bracket_cache: dict[tuple[BasisVector, BasisVector], Element] = {}
        self._alpha_cache: dict[BasisVector, Element] = {}

    # -- basis bookkeeping ---------------------------------------------------

    def contains(self, bv: BasisVector) -> bool:
        return self._contains(bv)

    def require(self, bv: BasisVector) -> None:
        if not self._contains(bv):
            raise UnknownBasisVector(f"{bv} is not a generator of {self.name}")

    def parity(self, bv: BasisVector) -> int:
        return self._parity_rule(bv)

    def degree(self, bv: BasisVector) -> HalfInt:
        return self._degree_rule(bv)

    def element_parity(self, x: Element) -> Optional[int]:
        """Common parity of the terms of x, or None if mixed (0 for zero)."""
        ps = {self.parity(bv) for bv in x.terms}
        if not ps:
            return EVEN
        if len(ps) > 1:
            return None
        return ps.pop()

    def basis_window(self, window) -> list[BasisVector]:
        window = IndexWindow.make(window)
        out: list[BasisVector] = []
        if "C" in self.basis_kinds:
            out.append(CENTRAL)
        if "F" in self.basis_kinds:
            out.extend(BasisVector("F", m) for m in window.half_odds())
        if "G" in self.basis_kinds:
            out.extend(G(n) for n in window.integers())
        if "L" in self.basis_kinds:
            out.extend(L(n) for n in window.integers())
        return sorted(out)

    def basis_at_degree(self, d: HalfInt, parity: Optional[int] = None) -> list[BasisVector]:
        """The (at most three) generators of a given degree.

        Degree slices are finite even though the algebra is not, which is what
        lets degree-homogeneous solvers avoid truncating their target space.
        """
        out: list[BasisVector] = []
        if "C" in self.basis_kinds and d.twice == 0:
            out.append(CENTRAL)
        if "L" in self.basis_kinds and d.is_integer:
            out.append(L(d.as_int()))
        if "G" in self.basis_kinds and d.is_integer:
            out.append(G(d.as_int() - 1))
        if "F" in self.basis_kinds and d.is_integer:
            m = d - Fraction(1, 2)
            out.append(BasisVector("F", m))
        out = [b for b in out if self._contains(b)]
        if parity is not None:
            out = [b for b in out if self.parity(b) == parity]
        return sorted(out)

    # -- structure maps --------------------------------------------------------

    def bracket_basis(self, x: BasisVector, y: BasisVector) -> Element:
        key = (x, y)
        cached = self._bracket_cache.get(key)
        if cached is not None:
            return cached
        self.require(x)
        self.require(y)
        if x <= y:
            value = self._bracket_rule(x, y)
        else:
            sign = -1 if (self.parity(x) & self.parity(y)) == 0 else 1
            mirrored = self._bracket_rule(y, x)
            value = mirrored if sign == 1 else -mirrored
        self._bracket_cache[key] = value
        return value

    def bracket(self, x: Element, y: Element) -> Element:
        out = _EL_ZERO
        for bx, cx in x.terms.items():
            for by, cy in y.terms.items():
                out = out + self.bracket_basis(bx, by).scale(cx * cy)
        return out

    def alpha_basis(self, bv: BasisVector) -> Element:
        cached = self._alpha_cache.get(bv)
        if cached is None:
            self.require(bv)
            cached = self._alpha_rule(bv)
            self._alpha_cache[bv] = cached
        return cached

    def alpha(self, x: Union[Element, BasisVector]) -> Element:
        if isinstance(x, BasisVector):
            return self.alpha_basis(x)
        out = _EL_ZERO
        for bv, c in x.terms.items():
            out = out + self.alpha_basis(bv).scale(c)
        return out

    def alpha_scalar(self, bv: BasisVector) -> QRat:
        """Twist eigenvalue for the diagonal built-in twists."""
        img = self.alpha_basis(bv)
        if img.is_zero:
            return ZERO
        if set(img.terms) != {bv}:
            raise ValueError(f"twist of {self.name} is not diagonal on {bv}")
        return img.terms[bv]

    def alpha_power(self, x: Union[Element, BasisVector], r: int) -> Element:
        if isinstance(x, BasisVector):
            x = Element.single(x)
        for _ in range(r):
            x = self.alpha(x)
        return x

    def alpha_map(self) -> LinearMap:
        return LinearMap(self.alpha_basis, name="alpha")


# ---------------------------------------------------------------------------
# built-in algebras


def _witt_bracket(x: BasisVector, y: BasisVector) -> Element:
    if x.kind == "L" and y.kind == "L":
        n, m = x.index, y.index
        return Element.single(L(n.as_int() + m.as_int()), q_number(m) - q_number(n))
    if x.kind == "L" and y.kind == "G":
        n, m = x.index, y.index
        return Element.single(G(n.as_int() + m.as_int()), q_number(m + 1) - q_number(n))
    if x.kind == "G" and y.kind == "L":
        # G sorts before L, so this is a canonical pair: mirror of the L,G rule
        n, m = y.index, x.index
        return Element.single(G(n.as_int() + m.as_int()), q_number(n) - q_number(m + 1))
    return _EL_ZERO  # [G, G] = 0


def _witt_alpha(bv: BasisVector) -> Element:
    if bv.kind == "L":
        return Element.single(bv, ONE + q_power(bv.index))
    if bv.kind == "G":
        return Element.single(bv, ONE + q_power(bv.index + 1))
    if bv.kind == "F":
        return Element.single(bv, ONE + q_power(bv.index + Fraction(1, 2)))
    return Element.single(bv)  # central: gamma(c) = c


def _witt_parity(bv: BasisVector) -> int:
    return EVEN if bv.kind == "L" else ODD


def _witt_degree(bv: BasisVector) -> HalfInt:
    if bv.kind == "L":
        return bv.index
    if bv.kind == "G":
        return bv.index + 1
    if bv.kind == "F":
        return bv.index + Fraction(1, 2)
    return HalfInt(0)


def witt_q() -> AlgebraSpec:
    """The q-deformed Witt superalgebra on L_n (even) and G_n (odd).

    [L_n, L_m] = ({m} - {n}) L_{n+m},  [L_n, G_m] = ({m+1} - {n}) G_{n+m},
    [G_n, G_m] = 0, with alpha(L_n) = (1+q^n) L_n, alpha(G_n) = (1+q^{n+1}) G_n.
    """
    return AlgebraSpec(
        name="witt-q",
        bracket_rule=_witt_bracket,
        alpha_rule=_witt_alpha,
        parity_rule=_witt_parity,
        degree_rule=_witt_degree,
        contains=lambda bv: bv.kind in ("L", "G"),
        basis_kinds=("G", "L"),
    )


def _central_extension_spec(
    name: str,
    central_parity: int,
    central_term: Callable[[BasisVector, BasisVector], QRat],
    kinds: Sequence[str] = ("C", "G", "L"),
) -> AlgebraSpec:
    def bracket(x: BasisVector, y: BasisVector) -> Element:
        if x.kind == "C" or y.kind == "C":
            return _EL_ZERO
        base = _ns_bracket(x, y) if "F" in kinds else _witt_bracket(x, y)
        extra = central_term(x, y)
        if not extra.is_zero:
            base = base + Element.single(CENTRAL, extra)
        return base

    def parity(bv: BasisVector) -> int:
        if bv.kind == "C":
            return central_parity
        return _witt_parity(bv)

    return AlgebraSpec(
        name=name,
        bracket_rule=bracket,
        alpha_rule=_witt_alpha,
        parity_rule=parity,
        degree_rule=_witt_degree,
        contains=lambda bv: bv.kind in kinds,
        basis_kinds=kinds,
        central_parity=central_parity,
    )


def _ns_bracket(x: BasisVector, y: BasisVector) -> Element:
    if x.kind == "L" and y.kind == "L":
        n, m = x.index, y.index
        return Element.single(L(n.as_int() + m.as_int()), q_number(m) - q_number(n))
    if x.kind == "L" and y.kind == "F":
        n, m = x.index, y.index
        return Element.single(
            BasisVector("F", n + m), q_number(m + Fraction(1, 2)) - q_number(n)
        )
    if x.kind == "F" and y.kind == "L":
        # F sorts before L, so this is a canonical pair: mirror of the L,F rule
        n, m = y.index, x.index
        return Element.single(
            BasisVector("F", n + m), q_number(n) - q_number(m + Fraction(1, 2))
        )
    return _EL_ZERO  # [F, F] = 0


def _phi0_term(x: BasisVector, y: BasisVector) -> QRat:
    if x.kind == "L" and y.kind == "L" and (x.index + y.index).twice == 0:
        return b_coefficient(x.index.as_int())
    return ZERO


def _phi1_term(x: BasisVector, y: BasisVector) -> QRat:
    if x.kind == "L" and y.kind == "G" and (x.index + y.index).twice == -2:
        return b_coefficient(x.index.as_int())
    if x.kind == "G" and y.kind == "L" and (x.index + y.index).twice == -2:
        return -b_coefficient(y.index.as_int())
    return ZERO


def ramond() -> AlgebraSpec:
    """Central extension of witt-q by an even C carried on [L_n, L_-n] with
    coefficient b_n (antisymmetric in n, so skewness survives)."""
    return _central_extension_spec("ramond", EVEN, _phi0_term)


def special_ramond() -> AlgebraSpec:
    """Central extension of witt-q by an odd C carried on [L_n, G_m] for
    n + m = -1 with coefficient b_n (the parity-shifted "special" extension)."""
    return _central_extension_spec("special-ramond", ODD, _phi1_term)


def trivial_virasoro() -> AlgebraSpec:
    """witt-q plus a central C with no cocycle term at all."""
    return _central_extension_spec("trivial-virasoro", EVEN, lambda x, y: ZERO)


def neveu_schwarz() -> AlgebraSpec:
    """Half-integer odd variant: basis L_n and F_m (m half-odd), even central
    C on [L_n, L_-n], bracket [L_n, F_m] = ({m+1/2} - {n}) F_{n+m}, and twist
    alpha(F_m) = (1 + q^{m+1/2}) F_m so that G_n maps to F_{n+1/2}
    twist-equivariantly."""
    return _central_extension_spec(
        "neveu-schwarz", EVEN, _phi0_term, kinds=("C", "F", "L")
    )


ALGEBRA_BUILDERS: dict[str, Callable[[], AlgebraSpec]] = {
    "witt-q": witt_q,
    "ramond": ramond,
    "neveu-schwarz": neveu_schwarz,
    "special-ramond": special_ramond,
    "trivial-virasoro": trivial_virasoro,
}


def algebra_by_name(name: str) -> AlgebraSpec:
    try:
        return ALGEBRA_BUILDERS[name]()
    except KeyError:
        raise KeyError(
            f"unknown algebra {name!r}; available: {', '.join(sorted(ALGEBRA_BUILDERS))}"
        ) from None


# ---------------------------------------------------------------------------
# axiom sweeps


def hom_jacobi_residual(spec: AlgebraSpec, x: BasisVector, y: BasisVector, z: BasisVector) -> Element:
    """Cyclic sum (-1)^{|x||z|} [alpha(x), [y, z]] over rotations of (x, y, z)."""
    total = _EL_ZERO
    for a, b, c in ((x, y, z), (y, z, x), (z, x, y)):
        term = spec.bracket(spec.alpha_basis(a), spec.bracket_basis(b, c))
        if spec.parity(a) & spec.parity(c):
            term = -term
        total = total + term
    return total


def check_hom_jacobi(spec: AlgebraSpec, window) -> Report:
    """Evaluate the twisted super Jacobi identity on every ordered basis
    triple with indices in the window.  Structure constants are closed-form,
    so bracket results landing outside the window are still exact."""
    basis = spec.basis_window(window)
    report = Report(name=f"hom-jacobi[{spec.name}]")

    def run_chunk(xs):
        local = Report(name="chunk")
        for x in xs:
            for y in basis:
                for z in basis:
                    local.checked += 1
                    res = hom_jacobi_residual(spec, x, y, z)
                    if not res.is_zero:
                        local.add_violation("hom-jacobi", (x, y, z), res)
        return local

    n = thread_count()
    if n <= 1:
        chunks = [basis]
    else:
        chunks = [basis[i::n] for i in range(n)]
    for local in parallel_map(run_chunk, chunks):
        report.merge(local)
    report.violations.sort(key=lambda v: v.where)
    return report


def check_skew(spec: AlgebraSpec, window) -> Report:
    """[x, y] + (-1)^{|x||y|} [y, x] = 0 on all ordered window pairs."""
    basis = spec.basis_window(window)
    report = Report(name=f"skew[{spec.name}]")
    for x in basis:
        for y in basis:
            report.checked += 1
            mirrored = spec.bracket_basis(y, x)
            if spec.parity(x) & spec.parity(y):
                mirrored = -mirrored
            res = spec.bracket_basis(x, y) + mirrored
            if not res.is_zero:
                report.add_violation("skew", (x, y), res)
    return report


def check_grading(spec: AlgebraSpec, window) -> Report:
    """deg([x, y]) = deg(x) + deg(y) on every nonzero bracket, and the twist
    preserves degree."""
    basis = spec.basis_window(window)
    report = Report(name=f"grading[{spec.name}]")
    for x in basis:
        dx = spec.degree(x)
        img = spec.alpha_basis(x)
        for bv in img.terms:
            report.checked += 1
            if spec.degree(bv) != dx:
                report.add_violation("alpha-degree", (x,), bv)
        for y in basis:
            report.checked += 1
            d = dx + spec.degree(y)
            val = spec.bracket_basis(x, y)
            for bv in val.terms:
                if spec.degree(bv) != d:
                    report.add_violation("bracket-degree", (x, y), bv)
    return report


def check_centrality(spec: AlgebraSpec, window) -> Report:
    report = Report(name=f"centrality[{spec.name}]")
    if spec.central is None:
        return report
    for x in spec.basis_window(window):
        report.checked += 1
        res = spec.bracket_basis(x, spec.central)
        if not res.is_zero:
            report.add_violation("centrality", (x, CENTRAL), res)
    return report


# ---------------------------------------------------------------------------
# representations


@dataclass
class Representation:
    """A module (V, action, beta) over an algebra, given by basis rules."""

    name: str
    basis: list[BasisVector]
    action: Callable[[BasisVector, BasisVector], Element]
    beta: Callable[[BasisVector], Element]
    parity: Callable[[BasisVector], int]

    def act(self, g: Element, v: Element) -> Element:
        out = _EL_ZERO
        for bg, cg in g.terms.items():
            for bv, cv in v.terms.items():
                out = out + self.action(bg, bv).scale(cg * cv)
        return out

    def beta_apply(self, v: Element) -> Element:
        out = _EL_ZERO
        for bv, c in v.terms.items():
            out = out + self.beta(bv).scale(c)
        return out


def trivial_representation(parity: int = EVEN) -> Representation:
    """The one-dimensional module spanned by C with zero action, beta = id."""
    return Representation(
        name="trivial",
        basis=[CENTRAL],
        action=lambda g, v: _EL_ZERO,
        beta=lambda v: Element.single(v),
        parity=lambda v: parity,
    )


def adjoint_representation(spec: AlgebraSpec, window) -> Representation:
    basis = spec.basis_window(window)
    return Representation(
        name=f"adjoint[{spec.name}]",
        basis=basis,
        action=spec.bracket_basis,
        beta=spec.alpha_basis,
        parity=spec.parity,
    )


def check_representation(spec: AlgebraSpec, rep: Representation, window) -> Report:
    """Module axiom: [[x,y], beta(v)] = [alpha(x), [y,v]] - (-1)^{|x||y|} [alpha(y), [x,v]]."""
    basis = spec.basis_window(window)
    report = Report(name=f"representation[{spec.name};{rep.name}]")
    for x in basis:
        px = spec.parity(x)
        ax = spec.alpha_basis(x)
        for y in basis:
            py = spec.parity(y)
            ay = spec.alpha_basis(y)
            bxy = spec.bracket_basis(x, y)
            for v in rep.basis:
                report.checked += 1
                lhs = rep.act(bxy, rep.beta(v))
                t2 = rep.act(ay, rep.action(x, v))
                if px & py:
                    t2 = -t2
                rhs = rep.act(ax, rep.action(y, v)) - t2
                res = lhs - rhs
                if not res.is_zero:
                    report.add_violation("representation", (x, y, v), res)
    return report


# ---------------------------------------------------------------------------
# the Ramond -> Neveu-Schwarz isomorphism


def ramond_to_ns_map() -> LinearMap:
    """L_n -> L_n, G_n -> F_{n+1/2}, C -> C."""

    def rule(bv: BasisVector) -> Element:
        if bv.kind == "G":
            return Element.single(BasisVector("F", bv.index + Fraction(1, 2)))
        return Element.single(bv)

    return LinearMap(rule, name="ramond->neveu-schwarz")


def ramond_to_ns_iso_check(window) -> Report:
    """Verify that the index-shift map intertwines brackets and twists of the
    integer-indexed and half-integer-indexed central extensions."""
    hr = ramond()
    hn = neveu_schwarz()
    f = ramond_to_ns_map()
    basis = hr.basis_window(window)
    report = Report(name="ramond-to-neveu-schwarz-iso")
    for x in basis:
        report.checked += 1
        res = f(hr.alpha_basis(x)) - hn.alpha(f(x))
        if not res.is_zero:
            report.add_violation("iso-twist", (x,), res)
        for y in basis:
            report.checked += 1
            res = f(hr.bracket_basis(x, y)) - hn.bracket(f(x), f(y))
            if not res.is_zero:
                report.add_violation("iso-bracket", (x, y), res)
    return report
