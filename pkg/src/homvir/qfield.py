"""Exact arithmetic in the field Q(q^(1/2)).

Everything downstream (structure constants, cocycle coefficients, linear
solvers) works over the field of rational functions in a square root of a
formal parameter q.  q is transcendental here: 1 - q, 1 + q^n and friends
are invertible, so denominators of the central charge coefficients never
vanish.

Three layers:

* ``HalfInt``     -- an element of (1/2)Z, stored exactly as twice its value.
                     Used both for basis indices (half-odd for the
                     Neveu-Schwarz odd part) and for exponents of q.
* ``LaurentPoly`` -- sparse Laurent polynomial in q^(1/2) with Fraction
                     coefficients.
* ``QRat``        -- quotient of two Laurent polynomials, kept in a canonical
                     normal form so that ``==`` is a structural check and
                     "is this zero" is O(1).

Normal form of a QRat: gcd(num, den) = 1 (polynomial gcd after shifting away
monomial factors), the denominator has lowest exponent 0 and lowest
coefficient 1.  Monomials are units of the Laurent ring, so this pins the
representation uniquely.

The q-bracket of a number m is {m} = (1 - q^m)/(1 - q), and ``q_number``
returns it as a QRat; for integer m >= 0 it normalizes to
1 + q + ... + q^(m-1).  ``b_coefficient`` builds the antisymmetric family
b_n of coefficients that the degree-zero scalar 2-cocycles of the q-deformed
Witt superalgebra carry on index pairs summing to 0 (resp. -1).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd as _int_gcd
from typing import Iterable, Union


# ---------------------------------------------------------------------------
# half-integers


@dataclass(frozen=True, order=True)
class HalfInt:
    """An element m of (1/2)Z stored as ``twice`` = 2m.

    Integers have even ``twice``; the half-odd indices of the Neveu-Schwarz
    odd part have odd ``twice``.
    """

    twice: int

    @staticmethod
    def make(x: "HalfIntLike") -> "HalfInt":
        if isinstance(x, HalfInt):
            return x
        if isinstance(x, int):
            return HalfInt(2 * x)
        if isinstance(x, Fraction):
            t = 2 * x
            if t.denominator != 1:
                raise ValueError(f"{x} is not a half-integer")
            return HalfInt(int(t))
        raise TypeError(f"cannot interpret {x!r} as a half-integer")

    @property
    def is_integer(self) -> bool:
        return self.twice % 2 == 0

    def as_int(self) -> int:
        if not self.is_integer:
            raise ValueError(f"{self} is not an integer")
        return self.twice // 2

    def as_fraction(self) -> Fraction:
        return Fraction(self.twice, 2)

    def __add__(self, other: "HalfIntLike") -> "HalfInt":
        return HalfInt(self.twice + HalfInt.make(other).twice)

    __radd__ = __add__

    def __sub__(self, other: "HalfIntLike") -> "HalfInt":
        return HalfInt(self.twice - HalfInt.make(other).twice)

    def __rsub__(self, other: "HalfIntLike") -> "HalfInt":
        return HalfInt(HalfInt.make(other).twice - self.twice)

    def __neg__(self) -> "HalfInt":
        return HalfInt(-self.twice)

    def __abs__(self) -> "HalfInt":
        return HalfInt(abs(self.twice))

    def __mul__(self, k: int) -> "HalfInt":
        if not isinstance(k, int):
            return NotImplemented
        return HalfInt(self.twice * k)

    __rmul__ = __mul__

    def __bool__(self) -> bool:
        return self.twice != 0

    def __str__(self) -> str:
        if self.twice % 2 == 0:
            return str(self.twice // 2)
        return f"{self.twice}/2"

    def __repr__(self) -> str:
        return f"HalfInt({self.twice})"


HalfIntLike = Union[HalfInt, int, Fraction]

ZERO_H = HalfInt(0)


def parse_half_int(text: str) -> HalfInt:
    """Parse "3", "-2" or "7/2" style index strings."""
    text = text.strip()
    if "/" in text:
        num, den = text.split("/")
        f = Fraction(int(num), int(den))
        return HalfInt.make(f)
    return HalfInt.make(int(text))


# ---------------------------------------------------------------------------
# sparse Laurent polynomials in q^(1/2)


class LaurentPoly:
    """Sparse Laurent polynomial in q^(1/2), coefficients in Q.

    ``c`` maps twice-the-exponent (an int) to a nonzero Fraction; the zero
    polynomial is the empty map.  Instances are treated as immutable.
    """

    __slots__ = ("c",)

    def __init__(self, coeffs: dict | None = None):
        self.c: dict[int, Fraction] = coeffs if coeffs is not None else {}

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero() -> "LaurentPoly":
        return _LP_ZERO

    @staticmethod
    def one() -> "LaurentPoly":
        return _LP_ONE

    @staticmethod
    def const(a) -> "LaurentPoly":
        a = Fraction(a)
        return LaurentPoly({} if a == 0 else {0: a})

    @staticmethod
    def monomial(exp: HalfIntLike, coeff=1) -> "LaurentPoly":
        coeff = Fraction(coeff)
        if coeff == 0:
            return _LP_ZERO
        return LaurentPoly({HalfInt.make(exp).twice: coeff})

    @staticmethod
    def from_terms(terms: Iterable[tuple[HalfIntLike, Fraction]]) -> "LaurentPoly":
        c: dict[int, Fraction] = {}
        for exp, coeff in terms:
            t = HalfInt.make(exp).twice
            v = c.get(t, Fraction(0)) + Fraction(coeff)
            if v == 0:
                c.pop(t, None)
            else:
                c[t] = v
        return LaurentPoly(c)

    # -- predicates / inspection -------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.c

    def term_count(self) -> int:
        return len(self.c)

    def min_twice(self) -> int:
        return min(self.c)

    def max_twice(self) -> int:
        return max(self.c)

    def trailing_coeff(self) -> Fraction:
        return self.c[self.min_twice()]

    def items_sorted(self) -> list[tuple[int, Fraction]]:
        return sorted(self.c.items())

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        if not self.c:
            return other
        if not other.c:
            return self
        c = dict(self.c)
        for t, v in other.c.items():
            w = c.get(t)
            if w is None:
                c[t] = v
            else:
                w = w + v
                if w == 0:
                    del c[t]
                else:
                    c[t] = w
        return LaurentPoly(c)

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return self + (-other)

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly({t: -v for t, v in self.c.items()})

    def __mul__(self, other: "LaurentPoly") -> "LaurentPoly":
        if not self.c or not other.c:
            return _LP_ZERO
        a, b = self.c, other.c
        if len(a) > len(b):
            a, b = b, a
        c: dict[int, Fraction] = {}
        for t1, v1 in a.items():
            for t2, v2 in b.items():
                t = t1 + t2
                w = c.get(t)
                if w is None:
                    c[t] = v1 * v2
                else:
                    w = w + v1 * v2
                    if w == 0:
                        del c[t]
                    else:
                        c[t] = w
        return LaurentPoly(c)

    def scale(self, a: Fraction) -> "LaurentPoly":
        if a == 0:
            return _LP_ZERO
        if a == 1:
            return self
        return LaurentPoly({t: v * a for t, v in self.c.items()})

    def shift(self, twice: int) -> "LaurentPoly":
        """Multiply by q^(twice/2)."""
        if twice == 0 or not self.c:
            return self
        return LaurentPoly({t + twice: v for t, v in self.c.items()})

    def __pow__(self, n: int) -> "LaurentPoly":
        if n < 0:
            raise ValueError("negative power of a LaurentPoly; use QRat")
        out = _LP_ONE
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other) -> bool:
        return isinstance(other, LaurentPoly) and self.c == other.c

    __hash__ = None  # mutable dict inside; not intended as a dict key

    # -- evaluation -----------------------------------------------------------

    def eval_sqrt_q(self, r: Fraction) -> Fraction:
        """Value at q^(1/2) = r (so q = r^2); r must be nonzero."""
        if r == 0:
            raise ZeroDivisionError("cannot evaluate a Laurent polynomial at 0")
        total = Fraction(0)
        for t, v in self.c.items():
            total += v * r ** t
        return total

    # -- exact division and gcd ------------------------------------------------

    def exact_div(self, d: "LaurentPoly") -> "LaurentPoly":
        """Quotient self / d, raising ArithmeticError if not divisible."""
        if d.is_zero:
            raise ZeroDivisionError("exact_div by zero")
        if self.is_zero:
            return _LP_ZERO
        smin, dmin = self.min_twice(), d.min_twice()
        num = _dense(self.shift(-smin))
        den = _dense(d.shift(-dmin))
        quo = _dense_divexact(num, den)
        return _from_dense(quo).shift(smin - dmin)

    def __str__(self) -> str:
        return poly_to_str(self)

    def __repr__(self) -> str:
        return f"LaurentPoly({poly_to_str(self)!r})"


_LP_ZERO = LaurentPoly({})
_LP_ONE = LaurentPoly({0: Fraction(1)})


def _dense(p: LaurentPoly) -> list[Fraction]:
    """Ordinary-polynomial coefficient list in x = q^(1/2); p.min_twice() must be >= 0."""
    n = p.max_twice()
    out = [Fraction(0)] * (n + 1)
    for t, v in p.c.items():
        out[t] = v
    return out


def _from_dense(coeffs: list[Fraction]) -> LaurentPoly:
    return LaurentPoly({i: v for i, v in enumerate(coeffs) if v != 0})


def _dense_divexact(num: list[Fraction], den: list[Fraction]) -> list[Fraction]:
    num = list(num)
    dn = len(den) - 1
    lead = den[-1]
    if len(num) - 1 < dn:
        raise ArithmeticError("not exactly divisible")
    quo = [Fraction(0)] * (len(num) - dn)
    for i in range(len(num) - 1, dn - 1, -1):
        qc = num[i] / lead
        quo[i - dn] = qc
        if qc:
            for j, dv in enumerate(den):
                num[i - dn + j] -= qc * dv
    if any(num[:dn]):
        raise ArithmeticError("not exactly divisible")
    return quo


def _primitive_int(coeffs: list[Fraction]) -> list[int]:
    """Scale a rational coefficient list to a primitive integer list."""
    lcm = 1
    for v in coeffs:
        if v:
            lcm = lcm * v.denominator // _int_gcd(lcm, v.denominator)
    ints = [int(v * lcm) for v in coeffs]
    g = 0
    for v in ints:
        g = _int_gcd(g, abs(v))
    if g > 1:
        ints = [v // g for v in ints]
    return ints


def _strip(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _int_content(a: list[int]) -> int:
    g = 0
    for v in a:
        g = _int_gcd(g, abs(v))
    return g


def _pseudo_rem(a: list[int], b: list[int]) -> list[int]:
    """Pseudo-remainder of a by b over Z (b nonzero, deg a >= deg b)."""
    a = list(a)
    db = len(b) - 1
    lb = b[-1]
    while len(a) - 1 >= db and a:
        da = len(a) - 1
        la = a[-1]
        a = [v * lb for v in a]
        for j in range(db + 1):
            a[da - db + j] -= la * b[j]
        a = _strip(a)
    return a


def poly_gcd(p: LaurentPoly, d: LaurentPoly) -> LaurentPoly:
    """Canonical gcd of the ordinary-polynomial parts of p and d.

    Monomial factors are units of the Laurent ring, so both inputs are first
    shifted to have lowest exponent 0.  The result is a primitive integer
    polynomial with positive leading coefficient and nonzero constant term.
    Primitive Euclid over Z keeps intermediate coefficients bounded.
    """
    if p.is_zero or d.is_zero:
        raise ValueError("poly_gcd of the zero polynomial")
    a = _primitive_int(_dense(p.shift(-p.min_twice())))
    b = _primitive_int(_dense(d.shift(-d.min_twice())))
    if len(a) < len(b):
        a, b = b, a
    while b:
        r = _pseudo_rem(a, b)
        a = b
        if r:
            cont = _int_content(r)
            r = [v // cont for v in r]
        b = r
    if a[-1] < 0:
        a = [-v for v in a]
    return LaurentPoly({i: Fraction(v) for i, v in enumerate(a) if v})


# ---------------------------------------------------------------------------
# the field


class QRat:
    """A rational function in q^(1/2), always stored in normal form.

    Two QRat are equal iff their (num, den) pairs are structurally equal, and
    a QRat is zero iff its numerator is the zero polynomial.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: LaurentPoly, den: LaurentPoly = _LP_ONE, *, _normalized=False):
        if _normalized:
            self.num = num
            self.den = den
            return
        if den.is_zero:
            raise ZeroDivisionError("QRat with zero denominator")
        if num.is_zero:
            self.num = _LP_ZERO
            self.den = _LP_ONE
            return
        if den is not _LP_ONE and den.c != _LP_ONE.c:
            g = poly_gcd(num, den)
            if g.c != _LP_ONE.c:
                num = num.exact_div(g)
                den = den.exact_div(g)
            e = den.min_twice()
            if e:
                num = num.shift(-e)
                den = den.shift(-e)
            t = den.trailing_coeff()
            if t != 1:
                num = num.scale(1 / t)
                den = den.scale(1 / t)
        self.num = num
        self.den = den

    # -- constructors -------------------------------------------------------

    @staticmethod
    def zero() -> "QRat":
        return ZERO

    @staticmethod
    def one() -> "QRat":
        return ONE

    @staticmethod
    def const(a) -> "QRat":
        return QRat(LaurentPoly.const(a), _LP_ONE, _normalized=True)

    @staticmethod
    def coerce(x) -> "QRat":
        if isinstance(x, QRat):
            return x
        if isinstance(x, (int, Fraction)):
            return QRat.const(x)
        if isinstance(x, LaurentPoly):
            return QRat(x, _LP_ONE, _normalized=True)
        raise TypeError(f"cannot coerce {x!r} to QRat")

    # -- predicates -----------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return self.num.is_zero

    @property
    def is_one(self) -> bool:
        return self.num.c == _LP_ONE.c and self.den.c == _LP_ONE.c

    def __bool__(self) -> bool:
        return not self.num.is_zero

    # -- arithmetic -----------------------------------------------------------

    def __add__(self, other) -> "QRat":
        other = QRat.coerce(other)
        if self.is_zero:
            return other
        if other.is_zero:
            return self
        if self.den.c == _LP_ONE.c and other.den.c == _LP_ONE.c:
            return QRat(self.num + other.num, _LP_ONE, _normalized=True)
        return QRat(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __sub__(self, other) -> "QRat":
        return self + (-QRat.coerce(other))

    def __rsub__(self, other) -> "QRat":
        return QRat.coerce(other) + (-self)

    def __neg__(self) -> "QRat":
        return QRat(-self.num, self.den, _normalized=True)

    def __mul__(self, other) -> "QRat":
        other = QRat.coerce(other)
        if self.is_zero or other.is_zero:
            return ZERO
        if self.den.c == _LP_ONE.c and other.den.c == _LP_ONE.c:
            return QRat(self.num * other.num, _LP_ONE, _normalized=True)
        return QRat(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "QRat":
        other = QRat.coerce(other)
        if other.is_zero:
            raise ZeroDivisionError("QRat division by zero")
        return QRat(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other) -> "QRat":
        return QRat.coerce(other) / self

    def inverse(self) -> "QRat":
        return ONE / self

    def __pow__(self, n: int) -> "QRat":
        if n == 0:
            return ONE
        if n < 0:
            return (ONE / self) ** (-n)
        return QRat(self.num ** n, self.den ** n)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction, LaurentPoly)):
            other = QRat.coerce(other)
        if not isinstance(other, QRat):
            return NotImplemented
        return self.num.c == other.num.c and self.den.c == other.den.c

    __hash__ = None

    # -- evaluation -------------------------------------------------------------

    def eval_sqrt_q(self, r: Fraction) -> Fraction:
        """Value at q^(1/2) = r; raises ZeroDivisionError if the denominator vanishes."""
        d = self.den.eval_sqrt_q(r)
        if d == 0:
            raise ZeroDivisionError(f"denominator vanishes at q^(1/2)={r}")
        return self.num.eval_sqrt_q(r) / d

    def __str__(self) -> str:
        return qrat_to_str(self)

    def __repr__(self) -> str:
        return f"QRat({qrat_to_str(self)!r})"


ZERO = QRat(_LP_ZERO, _LP_ONE, _normalized=True)
ONE = QRat(_LP_ONE, _LP_ONE, _normalized=True)
Q = QRat(LaurentPoly.monomial(1), _LP_ONE, _normalized=True)


def q_power(exp: HalfIntLike) -> QRat:
    """The monomial q^exp for a half-integer exponent."""
    return QRat(LaurentPoly.monomial(exp), _LP_ONE, _normalized=True)


@lru_cache(maxsize=None)
def _q_number_twice(twice: int) -> QRat:
    m = HalfInt(twice)
    num = _LP_ONE - LaurentPoly.monomial(m)
    den = _LP_ONE - LaurentPoly.monomial(1)
    return QRat(num, den)


def q_number(m: HalfIntLike) -> QRat:
    """The q-bracket {m} = (1 - q^m)/(1 - q).

    For integer m >= 0 the normal form is the polynomial 1 + q + ... + q^(m-1);
    {0} = 0 and {-m} = -q^(-m) {m}.
    """
    return _q_number_twice(HalfInt.make(m).twice)


@lru_cache(maxsize=None)
def b_coefficient(n: int) -> QRat:
    """Coefficient b_n of the central terms of the scalar 2-cocycles.

    For n >= 0,

        b_n = q^-(n-2) * (1 + q^2)/(1 + q^n) * {n+1}{n}{n-1} / ({3}{2}),

    extended to negative indices by b_(-n) = -b_n, which is exactly the
    antisymmetry the bracket axiom forces on index pairs summing to zero.
    b_0 = b_1 = 0 and b_2 = 1.
    """
    if n < 0:
        return -b_coefficient(-n)
    if n in (0, 1):
        return ZERO
    one_plus_q2 = QRat(_LP_ONE + LaurentPoly.monomial(2), _LP_ONE, _normalized=True)
    one_plus_qn = QRat(_LP_ONE + LaurentPoly.monomial(n), _LP_ONE, _normalized=True)
    num = q_power(-(n - 2)) * one_plus_q2 * q_number(n + 1) * q_number(n) * q_number(n - 1)
    return num / (one_plus_qn * q_number(3) * q_number(2))


# ---------------------------------------------------------------------------
# canonical printing


def _exp_str(twice: int) -> str:
    if twice == 2:
        return "q"
    if twice % 2 == 0 and twice > 0:
        return f"q^{twice // 2}"
    if twice % 2 == 0:
        return f"q^({twice // 2})"
    return f"q^({twice}/2)"


def poly_to_str(p: LaurentPoly) -> str:
    if p.is_zero:
        return "0"
    parts: list[str] = []
    for twice, coeff in p.items_sorted():
        if twice == 0:
            body = str(abs(coeff))
        else:
            mono = _exp_str(twice)
            a = abs(coeff)
            body = mono if a == 1 else f"{a}*{mono}"
        if not parts:
            parts.append(body if coeff > 0 else f"-{body}")
        else:
            parts.append(("+ " if coeff > 0 else "- ") + body)
    return " ".join(parts)


def qrat_to_str(x: QRat) -> str:
    """Canonical form "num / den", with den omitted when it is 1."""
    if x.den.c == _LP_ONE.c:
        return poly_to_str(x.num)
    return f"({poly_to_str(x.num)}) / ({poly_to_str(x.den)})"


# ---------------------------------------------------------------------------
# parsing (used by JSON fixtures; accepts anything the printer emits)


class ScalarParseError(ValueError):
    pass


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, msg: str):
        raise ScalarParseError(f"{msg} at position {self.pos} in {self.text!r}")

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def take(self, ch: str) -> bool:
        if self.peek() == ch:
            self.pos += 1
            return True
        return False

    def parse_int(self) -> int:
        self.skip_ws()
        start = self.pos
        if self.pos < len(self.text) and self.text[self.pos] in "+-":
            self.pos += 1
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start or not self.text[start:self.pos].lstrip("+-"):
            self.error("expected an integer")
        return int(self.text[start:self.pos])

    def parse_expr(self) -> QRat:
        value = self.parse_term()
        while True:
            if self.take("+"):
                value = value + self.parse_term()
            elif self.take("-"):
                value = value - self.parse_term()
            else:
                return value

    def parse_term(self) -> QRat:
        value = self.parse_factor()
        while True:
            if self.take("*"):
                value = value * self.parse_factor()
            elif self.take("/"):
                value = value / self.parse_factor()
            else:
                return value

    def parse_factor(self) -> QRat:
        sign = 1
        while True:
            if self.take("-"):
                sign = -sign
            elif self.take("+"):
                pass
            else:
                break
        base, is_q = self.parse_atom()
        if self.take("^"):
            exp = self.parse_exponent()
            if exp.is_integer:
                base = base ** exp.as_int()
            elif is_q:
                base = q_power(exp)
            else:
                self.error("half-integer exponent only allowed on q")
        return base if sign == 1 else -base

    def parse_atom(self) -> tuple[QRat, bool]:
        ch = self.peek()
        if ch == "(":
            self.take("(")
            value = self.parse_expr()
            if not self.take(")"):
                self.error("expected ')'")
            return value, False
        if ch == "q":
            self.pos += 1
            return Q, True
        if ch.isdigit():
            return QRat.const(self.parse_int()), False
        self.error("expected a number, 'q' or '('")

    def parse_exponent(self) -> HalfInt:
        if self.take("("):
            num = self.parse_int()
            if self.take("/"):
                den = self.parse_int()
                frac = Fraction(num, den)
            else:
                frac = Fraction(num)
            if not self.take(")"):
                self.error("expected ')' in exponent")
            try:
                return HalfInt.make(frac)
            except ValueError:
                self.error(f"exponent {frac} is not a half-integer")
        return HalfInt.make(self.parse_int())


def parse_scalar(text: str) -> QRat:
    """Parse a scalar written in the canonical string form (or any +,-,*,/,^
    arithmetic over integers and q with integer or half exponents)."""
    p = _Parser(text)
    value = p.parse_expr()
    p.skip_ws()
    if p.pos != len(p.text):
        p.error("unexpected trailing input")
    return value
