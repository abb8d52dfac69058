"""Exact sparse linear algebra over Q(q^(1/2)).

Systems assembled from coboundary operators are solved by fraction-free
(Bareiss-style) elimination: each row is cleared of denominators and scaled
primitive, so intermediate entries stay integer-coefficient Laurent
polynomials (plain int dicts in the hot loop), and the one-step update
divides exactly by the row's previous pivot whenever that division is exact
(always, while a row is touched at every step; rows that sat out a step fall
back to a content reduction).  Division is purely size control: any row
scaling leaves rank, kernel and solvability unchanged.  Back-substitution
for kernels and particular solutions happens in the field (QRat).

Systems are split into column-connected components first and eliminated
block by block.  Pivots are chosen by a Markowitz-style score (minimise
fill-in), with term count and position as deterministic tie-breaks, so
ranks, kernels and certificates are byte-reproducible run to run.

Every rank can be cross-checked numerically: the matrix is evaluated at
rational points q^(1/2) = r (so q = r^2 stays rational) and eliminated over
Q.  Rank can only drop at special parameter values, so agreement at a
generic point certifies the symbolic count.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd as _gcd
from typing import Optional, Sequence

try:  # subquadratic bignum multiply/divide for the Kronecker route
    from gmpy2 import mpz as _mpz
except ImportError:  # pragma: no cover - plain ints are correct, just slower
    _mpz = int

from .qfield import LaurentPoly, QRat, ZERO, ONE

# deterministic generic points q^(1/2) = r used for numeric cross-checks
CROSSCHECK_POINTS = (Fraction(5, 3), Fraction(7, 5), Fraction(11, 4))

AUG = -1  # column id reserved for an augmented right-hand side

# integer-core polynomials: twice-exponent -> nonzero int coefficient
IPoly = dict


class LinearSystem:
    """A sparse matrix over Q(q^(1/2)) with labelled rows and columns.

    Rows are dicts column -> QRat; labels keep enough provenance to print
    certificates and to rebuild cochains from solution vectors.
    """

    def __init__(self, ncols: int, col_labels: Optional[Sequence] = None):
        self.ncols = ncols
        self.rows: list[dict[int, QRat]] = []
        self.row_labels: list = []
        self.col_labels = list(col_labels) if col_labels is not None else None

    def add_row(self, entries: dict[int, QRat], label=None) -> None:
        entries = {c: v for c, v in entries.items() if not v.is_zero}
        self.rows.append(entries)
        self.row_labels.append(label)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    def integer_rows(self, rhs: Optional[dict[int, QRat]] = None) -> list[dict[int, IPoly]]:
        """Rows scaled by their denominator product and made primitive, so
        every entry is an integer-coefficient Laurent polynomial.  Scaling
        rows by nonzero scalars changes neither rank nor kernel; an optional
        RHS joins each row (column AUG) before clearing."""
        out = []
        for i, row in enumerate(self.rows):
            merged = dict(row)
            if rhs is not None:
                b = rhs.get(i)
                if b is not None and not b.is_zero:
                    merged[AUG] = b
            dens = [v.den for v in merged.values() if v.den.term_count() > 1 or v.den.c.get(0) != 1]
            if dens:
                prod = LaurentPoly.one()
                for d in dens:
                    prod = prod * d
                cleared = {c: v.num * prod.exact_div(v.den) for c, v in merged.items()}
            else:
                cleared = {c: v.num for c, v in merged.items()}
            # primitive integer scaling
            den_lcm = 1
            for p in cleared.values():
                for coeff in p.c.values():
                    den_lcm = den_lcm * coeff.denominator // _gcd(den_lcm, coeff.denominator)
            irow = {
                c: {e: int(v * den_lcm) for e, v in p.c.items()}
                for c, p in cleared.items()
            }
            out.append(_icontent_reduce(irow))
        return out

    def evaluate_rows(self, r: Fraction, rhs: Optional[dict[int, QRat]] = None) -> list[dict[int, Fraction]]:
        out = []
        for i, row in enumerate(self.rows):
            vals = {c: v.eval_sqrt_q(r) for c, v in row.items()}
            if rhs is not None:
                b = rhs.get(i)
                if b is not None and not b.is_zero:
                    vals[AUG] = b.eval_sqrt_q(r)
            out.append({c: v for c, v in vals.items() if v != 0})
        return out


# ---------------------------------------------------------------------------
# integer Laurent polynomial helpers (the elimination core)


def _pack(p: IPoly, k: int, pmin: int, width: int) -> int:
    """Kronecker packing: the big integer sum of v * 2^(k*(e - pmin)).

    Built in linear time through a byte buffer: every k-bit digit is biased
    by half = 2^(k-1) so it is nonnegative, and the constant bias is
    subtracted once at the end.  k must be a multiple of 8 and the
    coefficients must satisfy |v| < half.
    """
    kb = k // 8
    half = 1 << (k - 1)
    half_bytes = half.to_bytes(kb, "little")
    buf = bytearray(half_bytes * width)
    for e, v in p.items():
        i = (e - pmin) * kb
        buf[i:i + kb] = (v + half).to_bytes(kb, "little")
    offset = int.from_bytes(half_bytes * width, "little")
    return int.from_bytes(buf, "little") - offset


def _decode(n: int, k: int, width: int, base: int) -> IPoly:
    """Unpack a Kronecker value back into balanced k-bit digits, in linear
    time: add the all-half bias (which makes every digit land in [1, 2^k-1]
    with no carries while |coefficient| < half - 1) and slice bytes."""
    kb = k // 8
    half = 1 << (k - 1)
    half_bytes = half.to_bytes(kb, "little")
    m = n + int.from_bytes(half_bytes * width, "little")
    raw = m.to_bytes(width * kb + 8, "little", signed=True)
    out: IPoly = {}
    for i in range(width):
        d = int.from_bytes(raw[i * kb:(i + 1) * kb], "little") - half
        if d:
            out[base + i] = d
    return out


def _abs_max(p: IPoly) -> int:
    return max(abs(v) for v in p.values())


def _kbits(bound: int) -> int:
    """Digit width for Kronecker packing: enough bits for the coefficient
    bound plus sign and carry margin, rounded up to whole bytes."""
    bits = bound.bit_length() + 3
    return max(16, ((bits + 7) // 8) * 8)


def _imul(a: IPoly, b: IPoly) -> IPoly:
    if not a or not b:
        return {}
    if len(a) > len(b):
        a, b = b, a
    if len(a) * len(b) > 256:
        amin, bmin = min(a), min(b)
        wa = max(a) - amin + 1
        wb = max(b) - bmin + 1
        k = _kbits(_abs_max(a) * _abs_max(b) * min(len(a), len(b)))
        n = int(_mpz(_pack(a, k, amin, wa)) * _mpz(_pack(b, k, bmin, wb)))
        return _decode(n, k, wa + wb - 1, amin + bmin)
    out: IPoly = {}
    for e1, v1 in a.items():
        for e2, v2 in b.items():
            e = e1 + e2
            w = out.get(e, 0) + v1 * v2
            if w:
                out[e] = w
            else:
                out.pop(e, None)
    return out


def _icross(x: IPoly, p: IPoly, y: IPoly, q: IPoly) -> IPoly:
    """x*p - y*q for integer Laurent polynomials.

    Large operands take the Kronecker route with both products packed at a
    common digit width and subtracted as big integers before decoding.
    """
    size = len(x) * len(p) + len(y) * len(q)
    if size > 512 and x and p and y and q:
        b1 = _abs_max(x) * _abs_max(p) * min(len(x), len(p))
        b2 = _abs_max(y) * _abs_max(q) * min(len(y), len(q))
        k = _kbits(b1 + b2)
        base1 = min(x) + min(p)
        base2 = min(y) + min(q)
        base = min(base1, base2)
        top1 = max(x) + max(p)
        top2 = max(y) + max(q)
        wx = max(x) - min(x) + 1
        wp = max(p) - min(p) + 1
        wy = max(y) - min(y) + 1
        wq = max(q) - min(q) + 1
        n = (_mpz(_pack(x, k, min(x), wx)) * _mpz(_pack(p, k, min(p), wp))) << (k * (base1 - base))
        n -= (_mpz(_pack(y, k, min(y), wy)) * _mpz(_pack(q, k, min(q), wq))) << (k * (base2 - base))
        return _decode(int(n), k, max(top1, top2) - base + 1, base)
    out = _imul(x, p)
    for e1, v1 in y.items():
        for e2, v2 in q.items():
            e = e1 + e2
            w = out.get(e, 0) - v1 * v2
            if w:
                out[e] = w
            else:
                out.pop(e, None)
    return out


def _idivexact(a: IPoly, d: IPoly) -> Optional[IPoly]:
    """Exact quotient a / d over the integers, or None when not divisible.

    Large instances go through Kronecker packing: polynomial divisibility
    implies big-integer divisibility of the packed values, so a nonzero
    remainder rejects immediately, and a candidate quotient decoded from the
    integer quotient is verified by multiplying back (which makes the fast
    path sound even when digit bounds were too optimistic).
    """
    if not a:
        return {}
    if len(d) == 1:
        (e0, c0), = d.items()
        out: IPoly = {}
        for e, v in a.items():
            q, r = divmod(v, c0)
            if r:
                return None
            out[e - e0] = q
        return out
    amin, amax = min(a), max(a)
    dmin, dmax = min(d), max(d)
    wq = (amax - amin) - (dmax - dmin) + 1
    if wq <= 0:
        return None
    if len(a) * wq > 512:
        k = _kbits(_abs_max(a) * (wq + len(d)) * 8192)
        na = _mpz(_pack(a, k, amin, amax - amin + 1))
        nd = _mpz(_pack(d, k, dmin, dmax - dmin + 1))
        nq, rem = divmod(na, nd)
        if rem:
            return None
        try:
            quo = _decode(int(nq), k, wq, amin - dmin)
        except OverflowError:
            return None  # quotient digits exceeded the heuristic bound
        if _icross(quo, d, a, _IP_1) == {}:
            return quo
        return None
    num = [0] * (amax - amin + 1)
    for e, v in a.items():
        num[e - amin] = v
    den = [0] * (dmax - dmin + 1)
    for e, v in d.items():
        den[e - dmin] = v
    dn = len(den) - 1
    lead = den[-1]
    quo2 = [0] * (len(num) - dn)
    for i in range(len(num) - 1, dn - 1, -1):
        qc, r = divmod(num[i], lead)
        if r:
            return None
        quo2[i - dn] = qc
        if qc:
            for j in range(dn + 1):
                num[i - dn + j] -= qc * den[j]
    if any(num[:dn]):
        return None
    shift = amin - dmin
    return {i + shift: v for i, v in enumerate(quo2) if v}


def _icontent_reduce(row: dict[int, IPoly]) -> dict[int, IPoly]:
    g = 0
    for p in row.values():
        for v in p.values():
            g = _gcd(g, v)
            if g == 1:
                return row
    if g <= 1:
        return row
    return {c: {e: v // g for e, v in p.items()} for c, p in row.items()}


def _ipoly_to_qrat(p: IPoly) -> QRat:
    return QRat(LaurentPoly({e: Fraction(v) for e, v in p.items()}))


# ---------------------------------------------------------------------------
# elimination


@dataclass
class Elimination:
    """Result of a forward fraction-free elimination."""

    rank: int
    pivots: list[tuple[int, int]]          # (row id, col id) in elimination order
    echelon: list[dict[int, IPoly]]        # surviving pivot rows, same order
    leftover: list[int]                    # non-pivot row ids with nonzero residue
    ncols: int
    numeric_ranks: dict = field(default_factory=dict)


def _split_components(rows: list[dict[int, IPoly]], skip_aug: bool) -> list[list[int]]:
    """Partition rows into independent blocks: two rows interact only when
    they share an unknown column.  The AUG (right-hand-side) column never
    links rows; pure-RHS rows form their own trailing block."""
    parent: dict[int, int] = {}

    def find(c: int) -> int:
        while parent[c] != c:
            parent[c] = parent[parent[c]]
            c = parent[c]
        return c

    for row in rows:
        cols = [c for c in row if not (skip_aug and c == AUG)]
        for c in cols:
            parent.setdefault(c, c)
        for a, b in zip(cols, cols[1:]):
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[ra] = rb

    groups: dict[int, list[int]] = {}
    stray: list[int] = []
    for i, row in enumerate(rows):
        cols = [c for c in row if not (skip_aug and c == AUG)]
        if not cols:
            if row:
                stray.append(i)
            continue
        groups.setdefault(find(cols[0]), []).append(i)
    ordered = [groups[k] for k in sorted(groups, key=lambda k: groups[k][0])]
    if stray:
        ordered.append(stray)
    return ordered


def _forward(rows: list[dict[int, IPoly]], skip_aug: bool) -> tuple[list[tuple[int, int]], list[dict[int, IPoly]], list[int]]:
    pivots_all: list[tuple[int, int]] = []
    echelon_all: list[dict[int, IPoly]] = []
    leftover_all: list[int] = []
    for group in _split_components(rows, skip_aug):
        p, e, l = _forward_block(rows, group, skip_aug)
        pivots_all.extend(p)
        echelon_all.extend(e)
        leftover_all.extend(l)
    leftover_all.sort()
    return pivots_all, echelon_all, leftover_all


def _forward_block(rows: list[dict[int, IPoly]], group: list[int], skip_aug: bool) -> tuple[list[tuple[int, int]], list[dict[int, IPoly]], list[int]]:
    active = set(i for i in group if rows[i])
    col_count: dict[int, int] = {}
    for i in active:
        for c in rows[i]:
            if not (skip_aug and c == AUG):
                col_count[c] = col_count.get(c, 0) + 1

    divisors: dict[int, IPoly] = {i: {0: 1} for i in active}
    pivots: list[tuple[int, int]] = []
    echelon: list[dict[int, IPoly]] = []

    while True:
        best = None
        for ri in sorted(active):
            row = rows[ri]
            rn = len(row) - (1 if skip_aug and AUG in row else 0)
            if rn == 0:
                continue
            for c in sorted(row):
                if skip_aug and c == AUG:
                    continue
                score = (rn - 1) * (col_count[c] - 1)
                key = (score, len(row[c]), ri, c)
                if best is None or key < best[0]:
                    best = (key, ri, c)
        if best is None:
            break
        _, pr, pc = best
        prow = rows[pr]
        pval = prow[pc]
        pivots.append((pr, pc))
        echelon.append(prow)
        active.discard(pr)
        for c in prow:
            if not (skip_aug and c == AUG):
                col_count[c] -= 1

        for ri in sorted(active):
            row = rows[ri]
            if pc not in row:
                continue
            rv = row.pop(pc)
            col_count[pc] -= 1
            new_row: dict[int, IPoly] = {}
            seen = set(row)
            for c, v in row.items():
                t = _icross(v, pval, rv, prow.get(c, _IP_Z))
                if t:
                    new_row[c] = t
            for c, pv in prow.items():
                if c == pc or c in seen:
                    continue
                t = _imul(rv, pv)
                if t:
                    new_row[c] = {e: -v for e, v in t.items()}
            d = divisors[ri]
            if d != _IP_1:
                reduced: Optional[dict[int, IPoly]] = {}
                for c, p in new_row.items():
                    qp = _idivexact(p, d)
                    if qp is None:
                        reduced = None
                        break
                    reduced[c] = qp
                new_row = reduced if reduced is not None else _icontent_reduce(new_row)
            rows[ri] = new_row
            divisors[ri] = pval
            for c in seen - set(new_row):
                if not (skip_aug and c == AUG):
                    col_count[c] -= 1
            for c in set(new_row) - seen:
                if not (skip_aug and c == AUG):
                    col_count[c] = col_count.get(c, 0) + 1

    leftover = [ri for ri in sorted(active) if rows[ri]]
    return pivots, echelon, leftover


_IP_Z: IPoly = {}
_IP_1: IPoly = {0: 1}


def eliminate(system: LinearSystem) -> Elimination:
    rows = system.integer_rows()
    pivots, echelon, leftover = _forward(rows, skip_aug=False)
    return Elimination(len(pivots), pivots, echelon, leftover, system.ncols)


def _fraction_rank(rows: list[dict[int, Fraction]]) -> int:
    """Plain Gaussian elimination over Q on sparse Fraction rows."""
    echelon: dict[int, dict[int, Fraction]] = {}  # pivot col -> normalized row
    rank_ = 0
    for row in rows:
        row = dict(row)
        while row:
            pc = min(row)
            piv = echelon.get(pc)
            if piv is None:
                pv = row[pc]
                echelon[pc] = {c: v / pv for c, v in row.items()}
                rank_ += 1
                break
            f = row.pop(pc)
            for c, v in piv.items():
                if c == pc:
                    continue
                w = row.get(c, Fraction(0)) - f * v
                if w:
                    row[c] = w
                else:
                    row.pop(c, None)
    return rank_


def verify_rank_numeric(system: LinearSystem, symbolic_rank: int) -> dict[str, int]:
    """Evaluate at the generic rational points and compare ranks.

    The evaluated rank never exceeds the symbolic one; agreement certifies
    the symbolic elimination.  Points where a denominator vanishes are
    skipped (that never happens for the built-in coefficients)."""
    seen: dict[str, int] = {}
    for r in CROSSCHECK_POINTS:
        try:
            num_rank = _fraction_rank(system.evaluate_rows(r))
        except ZeroDivisionError:
            continue
        if num_rank != symbolic_rank:
            raise ArithmeticError(
                f"symbolic rank {symbolic_rank} != numeric rank {num_rank} at q^(1/2)={r}"
            )
        seen[str(r)] = num_rank
    return seen


def rank(system: LinearSystem, crosscheck: bool = True) -> int:
    elim = eliminate(system)
    if crosscheck:
        elim.numeric_ranks = verify_rank_numeric(system, elim.rank)
    return elim.rank


def kernel(system: LinearSystem, crosscheck: bool = True) -> list[dict[int, QRat]]:
    """Basis of the right kernel, one sparse coefficient vector per free
    column: the free column is set to 1 and the echelon rows are solved in
    reverse pivot order over the field."""
    elim = eliminate(system)
    if crosscheck:
        elim.numeric_ranks = verify_rank_numeric(system, elim.rank)
    pivot_cols = [pc for _, pc in elim.pivots]
    pivot_set = set(pivot_cols)
    free_cols = [c for c in range(system.ncols) if c not in pivot_set]
    basis = []
    for fc in free_cols:
        vec: dict[int, QRat] = {fc: ONE}
        for own_col, row in zip(reversed(pivot_cols), reversed(elim.echelon)):
            acc = ZERO
            for c, p in row.items():
                if c == own_col:
                    continue
                v = vec.get(c)
                if v is not None:
                    acc = acc + v * _ipoly_to_qrat(p)
            if not acc.is_zero:
                vec[own_col] = -acc / _ipoly_to_qrat(row[own_col])
        basis.append({c: v for c, v in vec.items() if not v.is_zero})
    return basis


@dataclass
class SolveResult:
    """Either a particular solution or a rank-based inconsistency certificate."""

    solution: Optional[dict[int, QRat]]
    rank_matrix: int
    rank_augmented: int
    ncols: int
    nrows: int
    numeric_ranks: dict = field(default_factory=dict)

    @property
    def consistent(self) -> bool:
        return self.solution is not None

    def certificate(self) -> dict:
        return {
            "consistent": self.consistent,
            "rank": self.rank_matrix,
            "rank_augmented": self.rank_augmented,
            "rows": self.nrows,
            "cols": self.ncols,
            "numeric_rank_checks": self.numeric_ranks,
        }


def solve(system: LinearSystem, rhs: dict[int, QRat], crosscheck: bool = True) -> SolveResult:
    """Solve A x = b exactly.

    The augmented matrix [A | b] is eliminated with b excluded from pivoting;
    a leftover row supported on the b-column alone is an inconsistency
    certificate (rank A < rank [A|b]).  The particular solution sets all free
    variables to 0.
    """
    rows = system.integer_rows(rhs)
    pivots, echelon, leftover = _forward(rows, skip_aug=True)
    rank_a = len(pivots)
    inconsistent = bool(leftover)
    rank_aug = rank_a + (1 if inconsistent else 0)

    numeric: dict[str, int] = {}
    if crosscheck:
        numeric = verify_rank_numeric(system, rank_a)
        for r in CROSSCHECK_POINTS:
            try:
                aug_rank = _fraction_rank(system.evaluate_rows(r, rhs))
            except ZeroDivisionError:
                continue
            if aug_rank != rank_aug:
                raise ArithmeticError(
                    f"augmented rank mismatch at q^(1/2)={r}: {rank_aug} vs {aug_rank}"
                )
            numeric[f"aug@{r}"] = aug_rank

    if inconsistent:
        return SolveResult(None, rank_a, rank_aug, system.ncols, system.nrows, numeric)

    vec: dict[int, QRat] = {}
    for (pr, pc), row in zip(reversed(pivots), reversed(echelon)):
        acc = _ipoly_to_qrat(row.get(AUG, _IP_Z))
        for c, p in row.items():
            if c in (pc, AUG):
                continue
            v = vec.get(c)
            if v is not None:
                acc = acc - v * _ipoly_to_qrat(p)
        val = acc / _ipoly_to_qrat(row[pc])
        if not val.is_zero:
            vec[pc] = val
    return SolveResult(vec, rank_a, rank_aug, system.ncols, system.nrows, numeric)


def residual_rows(system: LinearSystem, vec: dict[int, QRat], rhs: Optional[dict[int, QRat]] = None) -> list[int]:
    """Row indices where A x != b; an empty list certifies the solution."""
    bad = []
    for i, row in enumerate(system.rows):
        acc = ZERO
        for c, a in row.items():
            v = vec.get(c)
            if v is not None:
                acc = acc + a * v
        if rhs is not None:
            b = rhs.get(i)
            if b is not None:
                acc = acc - b
        if not acc.is_zero:
            bad.append(i)
    return bad


def span_contains(basis: list[dict[int, QRat]], vec: dict[int, QRat]) -> bool:
    """Whether vec lies in the exact span of the given sparse vectors."""
    sys_a = LinearSystem(len(basis))
    rows: dict[int, dict[int, QRat]] = {}
    for j, b in enumerate(basis):
        for c, v in b.items():
            rows.setdefault(c, {})[j] = v
    rhs: dict[int, QRat] = {}
    for rid, c in enumerate(sorted(set(rows) | set(vec))):
        sys_a.add_row(rows.get(c, {}), label=c)
        v = vec.get(c, ZERO)
        if not v.is_zero:
            rhs[rid] = v
    return solve(sys_a, rhs, crosscheck=False).consistent
