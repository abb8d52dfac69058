"""Command-line front end: verification subcommands emitting JSON certificates.

Every check the library performs is reachable through a subcommand; the
output is a deterministic JSON certificate (schema 1) with one entry per
check, a pass/fail status, and witnesses for failures in canonical scalar
string form.  Exit code 0 means every check passed; distinct nonzero codes
distinguish failed checks (1), usage errors such as an unknown algebra (2),
malformed fixture files (3) and too-small windows (4).

    homvir verify-axioms   --algebra ramond --window 6
    homvir verify-cocycle  --algebra witt-q --cocycle phi0,phi1 --window 6
    homvir cohomology      --algebra ramond --window 6 [--structure]
    homvir derivations     --algebra witt-q --r 0 --degree 0 --window 8
    homvir extend          --base witt-q --cocycle phi0 --check-window 4
    homvir equivalence     [--iso ramond:neveu-schwarz | --shear ...] --window 6
    homvir deform          --preset m2 --order 4 --window 6
    homvir recurrence      --window 8 --shifts -2..2

HOMVIR_THREADS caps worker threads for the axiom sweeps (default 1; results
are identical either way, sweeps merge by union in a fixed order).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from typing import Optional

from . import __version__
from .qfield import HalfInt, QRat, ZERO, ONE, b_coefficient, parse_half_int, q_number
from .superalg import (
    ALGEBRA_BUILDERS,
    EVEN,
    ODD,
    AlgebraSpec,
    CENTRAL,
    Element,
    IndexWindow,
    Report,
    algebra_by_name,
    check_centrality,
    check_grading,
    check_hom_jacobi,
    check_skew,
    ramond_to_ns_iso_check,
    thread_count,
    witt_q,
)
from .cochain import (
    ADJOINT,
    SCALAR,
    COCYCLE_BUILDERS,
    Cochain,
    WindowTooSmall,
    coboundary_solve,
    cochain_from_fixture,
    cocycle_check,
    cohomology_window_dims,
    delta1_adjoint,
    delta_trivial,
    derivation_solve,
    derivation_span_contains,
    lift_scalar_cochain,
    make_phi0,
    make_phi1,
    recurrence_solve,
    recurrence_check,
    standard_derivations,
    structure_system_check,
    vanishing_components_check,
    window_cocycle_space,
)
from .extension import (
    ExtensionSpec,
    NotACocycle,
    build_extension,
    check_extension_theorem,
    check_graded_extension,
    equivalence_from_h,
)
from .deform import (
    DEFORMATION_PRESETS,
    FormalAutomorphism,
    FormalBracket,
    deformation_check,
    equivalence_check,
    m2_normal_form_scenario,
    order_matrix_equals_delta2,
    skew_check,
    transport,
)

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2
EXIT_BAD_FIXTURE = 3
EXIT_WINDOW = 4


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


def _load_algebra(name: str) -> AlgebraSpec:
    try:
        return algebra_by_name(name)
    except KeyError as e:
        raise CliError(str(e), EXIT_USAGE) from None


def _load_cocycle(name_or_path: str, spec: AlgebraSpec) -> Cochain:
    if name_or_path in COCYCLE_BUILDERS:
        base = COCYCLE_BUILDERS[name_or_path](witt_q())
        if spec.central_parity is not None:
            return lift_scalar_cochain(base, spec)
        return Cochain(spec, 2, base.parity, SCALAR, degree=base.degree,
                       rule=base.rule, name=base.name)
    try:
        with open(name_or_path) as fh:
            data = json.load(fh)
        return cochain_from_fixture(data, spec)
    except FileNotFoundError:
        raise CliError(
            f"unknown cocycle {name_or_path!r}: not a builtin (phi0, phi1) and no such file",
            EXIT_USAGE,
        ) from None
    except (ValueError, KeyError, TypeError) as e:
        raise CliError(f"malformed fixture {name_or_path!r}: {e}", EXIT_BAD_FIXTURE) from None


def _window(args) -> IndexWindow:
    n = args.window
    if n < 2:
        raise CliError(f"window bound must be at least 2, got {n}", EXIT_WINDOW)
    return IndexWindow(n)


def certificate(args, checks: list[dict], **extra) -> dict:
    cert = {
        "schema": 1,
        "tool": {"name": "homvir", "version": __version__},
        "command": " ".join(args._argv),
        "environment": {"threads": thread_count()},
    }
    cert.update(extra)
    cert["checks"] = checks
    cert["status"] = "pass" if all(c.get("status") == "pass" for c in checks) else "fail"
    return cert


def report_entry(rep: Report) -> dict:
    return rep.as_dict()


def emit(args, cert: dict) -> int:
    text = json.dumps(cert, indent=2, sort_keys=False)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return EXIT_OK if cert["status"] == "pass" else EXIT_CHECK_FAILED


# ---------------------------------------------------------------------------
# subcommands


def cmd_verify_axioms(args) -> int:
    window = _window(args)
    names = sorted(ALGEBRA_BUILDERS) if args.algebra == "all" else args.algebra.split(",")
    checks = []
    for name in names:
        spec = _load_algebra(name.strip())
        for rep in (
            check_skew(spec, window),
            check_hom_jacobi(spec, window),
            check_grading(spec, window),
            check_centrality(spec, window),
        ):
            checks.append(report_entry(rep))
    return emit(args, certificate(args, checks, algebra=args.algebra, window=window.bound))


def cmd_verify_cocycle(args) -> int:
    window = _window(args)
    spec = _load_algebra(args.algebra)
    names = ["phi0", "phi1"] if args.cocycle == "all" else args.cocycle.split(",")
    checks = []
    for name in names:
        phi = _load_cocycle(name.strip(), spec)
        coefficients = SCALAR if phi.target == SCALAR else ADJOINT
        rep = cocycle_check(phi, spec, window, coefficients=coefficients, r=args.r)
        checks.append(report_entry(rep))
    if args.b_values:
        expected = {0: ZERO, 1: ZERO, 2: ONE}
        ok = all(b_coefficient(n) == expected[n] for n in expected)
        ok = ok and all(b_coefficient(-n) == -b_coefficient(n) for n in range(0, 9))
        checks.append({
            "name": "central-charge-coefficients",
            "status": "pass" if ok else "fail",
            "checked": len(expected) + 9,
            "info": {"b_0": str(b_coefficient(0)), "b_1": str(b_coefficient(1)), "b_2": str(b_coefficient(2))},
        })
    if args.ddzero:
        checks.append(_ddzero_check(spec, window, args.samples))
    return emit(args, certificate(args, checks, algebra=args.algebra, window=window.bound))


def _ddzero_check(spec: AlgebraSpec, window: IndexWindow, samples: int) -> dict:
    """Randomized (seeded) check that the coboundary squares to zero, in both
    coefficient modes, on finite-support twist-compatible 1-cochains."""
    import itertools
    import random

    rng = random.Random(20259)
    basis = spec.basis_window(window)
    eval_basis = spec.basis_window(max(2, window.bound // 2))
    failures = 0
    checked = 0
    for trial in range(samples):
        h = Cochain(spec, 1, EVEN, SCALAR, name=f"h{trial}")
        for b in basis:
            if spec.parity(b) == EVEN and rng.random() < 0.5:
                h.set((b,), QRat.const(rng.randint(-4, 4)))
        ddh = delta_trivial(delta_trivial(h, spec), spec)
        parity = rng.choice((EVEN, ODD))
        f = Cochain(spec, 1, parity, ADJOINT, name=f"f{trial}")
        for b in basis:
            targets = [t for t in _eigen_targets(spec, b)
                       if (spec.parity(t) + spec.parity(b)) % 2 == parity]
            terms = [(t, QRat.const(rng.randint(-3, 3))) for t in targets]
            if terms:
                f.set((b,), Element.from_terms(terms))
        ddf = delta1_adjoint(f, spec)
        from .cochain import delta2_adjoint

        ddf2 = delta2_adjoint(ddf, spec)
        for args3 in itertools.combinations_with_replacement(eval_basis, 3):
            checked += 2
            if not ddh.value(*args3).is_zero:
                failures += 1
            if not ddf2.value(*args3).is_zero:
                failures += 1
    return {
        "name": f"delta-squared-zero[{spec.name}]",
        "status": "pass" if failures == 0 else "fail",
        "checked": checked,
        "info": {"samples": samples},
    }


def _eigen_targets(spec: AlgebraSpec, b) -> list:
    """Basis vectors sharing b's twist eigenvalue (keeps random adjoint
    cochains twist-compatible for the diagonal built-in twists)."""
    lam = spec.alpha_scalar(b)
    out = []
    for d in (spec.degree(b), spec.degree(b) + 1, spec.degree(b) - 1, HalfInt(0)):
        for t in spec.basis_at_degree(d):
            if spec.alpha_scalar(t) == lam and t not in out:
                out.append(t)
    return out


def cmd_cohomology(args) -> int:
    window = _window(args)
    checks = []
    names = args.algebra.split(",")
    for name in names:
        spec = _load_algebra(name.strip())
        if spec.central_parity is None:
            # scalar coefficients on the base algebra
            for phi, parity in ((make_phi0(spec), EVEN), (make_phi1(spec), ODD)):
                res = cohomology_window_dims(
                    spec, SCALAR, parity=parity, degree=HalfInt(0),
                    window=window, representative=phi,
                )
                entry = {"name": f"window-cohomology[{spec.name};{phi.name};scalar]",
                         "status": "pass", "checked": res.detail.get("interior_triples", 0)}
                entry.update(res.as_dict())
                checks.append(entry)
                for constrained in (True, False):
                    sol = coboundary_solve(phi, spec, window, alpha_constrained=constrained)
                    checks.append({
                        "name": f"nontriviality[{phi.name};alpha_constrained={constrained}]",
                        "status": "pass" if not sol.solved else "fail",
                        "checked": sol.rows,
                        "info": sol.certificate(),
                    })
        else:
            base = witt_q()
            for phi_base in (make_phi0(base), make_phi1(base)):
                phi = lift_scalar_cochain(phi_base, spec)
                res = cohomology_window_dims(
                    spec, ADJOINT, parity=phi.parity, degree=HalfInt(0),
                    window=window, representative=phi,
                )
                entry = {"name": f"window-cohomology[{spec.name};{phi_base.name};adjoint]",
                         "status": "pass", "checked": res.detail.get("interior_triples", 0)}
                entry.update(res.as_dict())
                checks.append(entry)
                sol = coboundary_solve(phi, spec, window, alpha_constrained=True)
                checks.append({
                    "name": f"coboundary-solve[{spec.name};{phi_base.name}]",
                    "status": "pass",
                    "checked": sol.rows,
                    "info": {"solved": sol.solved, **sol.certificate()},
                })
        if args.structure and spec.central_parity is not None:
            phi1l = lift_scalar_cochain(make_phi1(witt_q()), spec)
            rep = structure_system_check(phi1l, spec, window=min(window.bound, 4))
            checks.append(report_entry(rep))
            _, cocycles = window_cocycle_space(
                spec, ADJOINT, parity=phi1l.parity, degree=HalfInt(0),
                window=min(window.bound, 4),
            )
            van = Report(name=f"vanishing-components[{spec.name}]")
            for z in cocycles:
                van.merge(vanishing_components_check(z, window=min(window.bound, 4)))
            checks.append(report_entry(van))
    return emit(args, certificate(args, checks, algebra=args.algebra, window=window.bound))


def cmd_derivations(args) -> int:
    window = _window(args)
    degree = parse_half_int(args.degree)
    names = sorted(ALGEBRA_BUILDERS) if args.algebra == "all" else args.algebra.split(",")
    checks = []
    for name in names:
        spec = _load_algebra(name.strip())
        res = derivation_solve(spec, r=args.r, degree=degree, window=window)
        ders = standard_derivations(spec)
        span = {dn: derivation_span_contains(res, dc) for dn, dc in ders.items()}
        central_killed = None
        if spec.central is not None:
            central_killed = all(
                all(bv.kind == "C" for bv in f.value(CENTRAL).terms) for f in res.basis
            )
        checks.append({
            "name": f"derivations[{spec.name};r={args.r};degree={degree}]",
            "status": "pass",
            "checked": res.dimension,
            "info": {
                "dimension": res.dimension,
                "standard_in_span": span,
                "central_to_central_only": central_killed,
            },
        })
    return emit(args, certificate(args, checks, algebra=args.algebra, window=window.bound))


def cmd_extend(args) -> int:
    base = _load_algebra(args.base)
    phi = None
    if args.cocycle and args.cocycle != "zero":
        phi = _load_cocycle(args.cocycle, base)
    try:
        spec = build_extension(ExtensionSpec(base, phi=phi), check_window=args.check_window)
    except NotACocycle as e:
        cert = certificate(
            args,
            [{"name": "cocycle-precondition", "status": "fail",
              "checked": e.report.checked,
              "witnesses": [v.as_dict() for v in e.report.violations[:5]]}],
            base=args.base, cocycle=args.cocycle,
        )
        return emit(args, cert)
    checks = [
        report_entry(check_skew(spec, args.check_window)),
        report_entry(check_hom_jacobi(spec, args.check_window)),
        report_entry(check_extension_theorem(spec, args.check_window)),
        report_entry(check_graded_extension(spec, args.check_window)),
    ]
    sample = []
    for x in spec.basis_window(2):
        for y in spec.basis_window(2):
            val = spec.bracket_basis(x, y)
            if not val.is_zero:
                sample.append({"pair": [str(x), str(y)], "value": val.serialize()})
    cert = certificate(args, checks, base=args.base, cocycle=args.cocycle or "zero",
                       window=args.check_window, central_parity=spec.central_parity,
                       structure_constants_sample=sample[:20])
    return emit(args, cert)


def cmd_equivalence(args) -> int:
    window = _window(args)
    checks = []
    if args.iso:
        if args.iso != "ramond:neveu-schwarz":
            raise CliError(f"unknown isomorphism pair {args.iso!r}", EXIT_USAGE)
        checks.append(report_entry(ramond_to_ns_iso_check(window)))
    else:
        # shear equivalence between the even extension and a coboundary-shifted
        # copy; the module twist eigenvalue 1 + q^2 matches L_2, so nonzero
        # twist-compatible shears exist
        from .qfield import q_power
        from .superalg import L as _L

        base = witt_q()
        beta = ONE + q_power(2)
        h = Cochain(base, 1, EVEN, SCALAR, name="h")
        h.set((_L(2),), QRat.const(args.shear_coefficient))
        dh = delta_trivial(h, base)
        phi0 = make_phi0(base)
        shifted = Cochain(
            base, 2, EVEN, SCALAR, degree=HalfInt(0),
            rule=lambda x, y: phi0.value(x, y) + dh.value(x, y), name="phi0+d1h",
        )
        ext_a = build_extension(ExtensionSpec(base, phi=shifted, beta=beta), check_window=3)
        ext_b = build_extension(ExtensionSpec(base, phi=phi0, beta=beta), check_window=3)
        res = equivalence_from_h(h, ext_b, ext_a, window=window.bound)
        checks.append(report_entry(res.report))
    return emit(args, certificate(args, checks, window=window.bound))


def cmd_deform(args) -> int:
    window = _window(args)
    checks = []
    if args.fixture:
        spec = _load_algebra(args.algebra)
        fb = _deformation_from_fixture(args.fixture, spec, args.order)
        rep = deformation_check(fb, window=window, max_order=args.order)
        checks.append(report_entry(rep))
        checks.append(report_entry(skew_check(fb, min(window.bound, 3))))
    else:
        presets = sorted(DEFORMATION_PRESETS) if args.preset == "all" else args.preset.split(",")
        for pname in presets:
            if pname not in DEFORMATION_PRESETS:
                raise CliError(f"unknown preset {pname!r}", EXIT_USAGE)
            fb = DEFORMATION_PRESETS[pname](order=args.order)
            rep = deformation_check(fb, window=window, max_order=args.order)
            checks.append(report_entry(rep))
            checks.append(report_entry(skew_check(fb, min(window.bound, 3))))
            mech = order_matrix_equals_delta2(fb.spec, 1, fb.alpha_series, window=min(window.bound, 3))
            checks.append({
                "name": f"order-p-matrix-equals-coboundary[{pname}]",
                "status": "pass" if mech else "fail",
                "checked": 1,
            })
        if args.preset in ("all", "m2"):
            sc = m2_normal_form_scenario(order=args.order)
            rep = equivalence_check(sc["given"], sc["normal"], sc["automorphism"], window=min(window.bound, 3))
            checks.append(report_entry(rep))
            moved, compat = transport(sc["normal"], sc["automorphism"], window=min(window.bound, 3))
            basis = moved.spec.basis_window(min(window.bound, 3))
            same = all(
                moved.components[s].value(x, y) == sc["given"].components[s].value(x, y)
                for s in range(args.order + 1) for x in basis for y in basis
            )
            checks.append({
                "name": "normal-form-transport-reproduces-tail",
                "status": "pass" if (same and compat.ok) else "fail",
                "checked": (args.order + 1) * len(basis) ** 2,
            })
    return emit(args, certificate(args, checks, window=window.bound, order=args.order))


def _deformation_from_fixture(path: str, spec: AlgebraSpec, order: int) -> FormalBracket:
    from .deform import zero_component
    from .cochain import bracket_cochain

    try:
        with open(path) as fh:
            data = json.load(fh)
        comps = [bracket_cochain(spec)]
        for k in range(1, order + 1):
            entries = data.get("components", {}).get(str(k))
            if entries:
                comps.append(cochain_from_fixture(entries, spec, name=f"t^{k}"))
            else:
                comps.append(zero_component(spec))
        series = [ONE]
        for k in range(1, order + 1):
            raw = data.get("alpha_series", {}).get(str(k))
            series.append(QRat.coerce(Fraction(raw)) if raw is not None else ZERO)
        return FormalBracket(spec, order, comps, alpha_series=series, name=f"fixture[{path}]")
    except FileNotFoundError:
        raise CliError(f"no such fixture file {path!r}", EXIT_USAGE) from None
    except (ValueError, KeyError, TypeError) as e:
        raise CliError(f"malformed fixture {path!r}: {e}", EXIT_BAD_FIXTURE) from None


def cmd_recurrence(args) -> int:
    window = _window(args)
    lo, hi = args.shifts.split("..")
    shifts = range(int(lo), int(hi) + 1)
    checks = []
    for s in shifts:
        sols = recurrence_solve(s, window)
        if s == 0:
            linear = {n: QRat.const(n) for n in window.integers() if n}
            from .linalg import span_contains

            vecs = [v for v in sols]
            ok = len(sols) == 1 and span_contains(vecs, linear)
            expect = "one-dimensional, spanned by a_n = n"
        else:
            ok = len(sols) == 0
            expect = "only the zero family"
        checks.append({
            "name": f"recurrence-solve[s={s}]",
            "status": "pass" if ok else "fail",
            "checked": len(window.integers()) ** 2,
            "info": {"solution_dimension": len(sols), "expected": expect},
        })
    rep = recurrence_check(lambda s, n: QRat.const(n) if s == 0 else ZERO, list(shifts), window)
    checks.append(report_entry(rep))
    return emit(args, certificate(args, checks, window=window.bound))


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="homvir",
        description="Exact verification kernel for q-deformed Witt Hom-Lie superalgebras "
                    "and their Virasoro-type central extensions.",
    )
    p.add_argument("--version", action="version", version=f"homvir {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, window_default=6):
        sp.add_argument("--window", type=int, default=window_default,
                        help="index window bound N (indices |n| <= N); N >= 2")
        sp.add_argument("--out", help="write the certificate to this file instead of stdout")

    sp = sub.add_parser("verify-axioms", help="super-antisymmetry, twisted Jacobi, grading, centrality")
    sp.add_argument("--algebra", default="all", help="catalog name, comma list, or 'all'")
    common(sp)
    sp.set_defaults(fn=cmd_verify_axioms)

    sp = sub.add_parser("verify-cocycle", help="coboundary of a 2-cochain vanishes on the window")
    sp.add_argument("--algebra", default="witt-q")
    sp.add_argument("--cocycle", default="all", help="phi0, phi1, 'all', or a fixture file")
    sp.add_argument("--r", type=int, default=0, help="twist exponent of the coboundary")
    sp.add_argument("--b-values", action="store_true",
                    help="also verify the central charge coefficient family (b_2 = 1 etc.)")
    sp.add_argument("--ddzero", action="store_true",
                    help="randomized delta(delta(f)) = 0 sweep, both coefficient modes")
    sp.add_argument("--samples", type=int, default=50)
    common(sp)
    sp.set_defaults(fn=cmd_verify_cocycle)

    sp = sub.add_parser("cohomology", help="window cohomology dimensions and nontriviality certificates")
    sp.add_argument("--algebra", default="witt-q", help="catalog name or comma list")
    sp.add_argument("--k", type=int, default=2, help="cochain arity (only 2 is meaningful here)")
    sp.add_argument("--structure", action="store_true",
                    help="also run the component structure system and vanishing checks")
    common(sp)
    sp.set_defaults(fn=cmd_cohomology)

    sp = sub.add_parser("derivations", help="kernel of the twisted derivation system")
    sp.add_argument("--algebra", default="all")
    sp.add_argument("--r", type=int, default=0, help="twist exponent")
    sp.add_argument("--degree", default="0", help="cochain degree (half-integers as p/2)")
    common(sp, window_default=8)
    sp.set_defaults(fn=cmd_derivations)

    sp = sub.add_parser("extend", help="build a central extension from a cocycle and verify it")
    sp.add_argument("--base", default="witt-q")
    sp.add_argument("--cocycle", default="phi0", help="phi0, phi1, 'zero', or a fixture file")
    sp.add_argument("--check-window", type=int, default=4)
    sp.add_argument("--out")
    sp.set_defaults(fn=cmd_extend)

    sp = sub.add_parser("equivalence", help="verify an extension equivalence or the catalog isomorphism")
    sp.add_argument("--iso", help="'ramond:neveu-schwarz' for the index-shift isomorphism")
    sp.add_argument("--shear-coefficient", type=int, default=3,
                    help="coefficient of the shear 1-cochain in the extension equivalence demo")
    common(sp)
    sp.set_defaults(fn=cmd_equivalence)

    sp = sub.add_parser("deform", help="order-by-order deformation system")
    sp.add_argument("--preset", default="all", help="m2, m3, comma list, or 'all'")
    sp.add_argument("--algebra", default="ramond", help="algebra for --fixture deformations")
    sp.add_argument("--order", type=int, default=4)
    sp.add_argument("--fixture", help="JSON file with per-order components")
    common(sp)
    sp.set_defaults(fn=cmd_deform)

    sp = sub.add_parser("recurrence", help="the mixed-slot coefficient recurrence and its solution family")
    sp.add_argument("--shifts", default="-2..2", help="range of degree shifts, lo..hi")
    common(sp, window_default=8)
    sp.set_defaults(fn=cmd_recurrence)
    return p


def main(argv: Optional[list[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    args = parser.parse_args(argv)
    args._argv = ["homvir"] + argv
    try:
        return args.fn(args)
    except CliError as e:
        print(f"homvir: error: {e}", file=sys.stderr)
        return e.code
    except WindowTooSmall as e:
        print(f"homvir: error: {e}", file=sys.stderr)
        return EXIT_WINDOW


if __name__ == "__main__":
    sys.exit(main())
