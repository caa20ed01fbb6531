"""Command-line front end: generate → validate → analyze → report.

All output is deterministic for a fixed command line (fixed iteration
orders, no timestamps, seeded sampling only in the product-of-trees
apartment selection).  Exact rationals print as ``num/den``.  Exit codes:
0 success, 1 analysis/validation failure, 2 usage or input-format error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import fileio, generators
from .core import validate_pcps, validate_tessellation
from .curvature import curvature_report, face_curvature, myers_evidence
from .errors import BudgetExceededError, ComplexError, CurvcxError, UntrustedRegionError
from .isoperimetry import (
    MAX_BRUTEFORCE_REGION,
    cheeger_at_infinity,
    cheeger_bruteforce,
    cheeger_global_minimum,
    cheeger_lower_bounds,
)
from .metric import (
    bigon_certificate,
    cut_locus,
    enumerate_bigons,
    face_metric,
    four_point_delta,
    interval,
    spheres,
)
from .spectral import finite_support_eigenfunctions, solve_dirichlet, spectrum

__all__ = ["main"]


def _q(x: Fraction | int | None) -> str:
    if x is None:
        return "-"
    return str(Fraction(x))


def _fl(x: float) -> str:
    return f"{x:.12g}"


def _load(path: str):
    try:
        return fileio.load(path)
    except FileNotFoundError:
        raise _UsageError(f"--in: no such file: {path}")
    except (ValueError, KeyError, ComplexError) as exc:
        raise _UsageError(f"--in: cannot parse {path}: {exc}")


class _UsageError(Exception):
    pass


def _center(X, arg: int | None) -> int:
    if arg is not None:
        if not 0 <= arg < len(X.faces):
            raise _UsageError(f"--center: face {arg} out of range")
        return arg
    c = X.meta.get("center")
    if c is None:
        return 0
    return int(c)


def _write_lines(path: str | None, lines: list[str]) -> None:
    text = "\n".join(lines) + "\n"
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def _cmd_generate(args) -> int:
    fam = args.family
    radius = args.radius
    if fam == "regular_pq":
        if args.p is None or args.q is None:
            raise _UsageError("--family regular_pq needs --p and --q")
        X = generators.regular_tessellation(args.p, args.q, radius, budget=args.budget)
    elif fam == "coxeter_triangle":
        if not args.marks:
            raise _UsageError("--family coxeter_triangle needs --marks r,s,t")
        try:
            r, s, t = (int(x) for x in args.marks.split(","))
        except ValueError:
            raise _UsageError("--marks: expected three comma-separated integers")
        X = generators.coxeter_triangle(r, s, t, radius, budget=args.budget)
    elif fam == "bipartite_squares":
        if args.n is None:
            raise _UsageError("--family bipartite_squares needs --n")
        X = generators.bipartite_squares(args.n, radius, budget=args.budget)
    elif fam == "product_trees":
        if not args.degrees:
            raise _UsageError("--family product_trees needs --degrees r,s")
        try:
            r, s = (int(x) for x in args.degrees.split(","))
        except ValueError:
            raise _UsageError("--degrees: expected two comma-separated integers")
        X = generators.product_of_trees(
            r, s, radius, apartments=args.apartments, seed=args.seed, budget=args.budget
        )
    elif fam == "book":
        if args.pages is None:
            raise _UsageError("--family book needs --pages")
        X = generators.book(args.pages, radius, budget=args.budget)
    elif fam == "spherical":
        if not args.kind:
            raise _UsageError("--family spherical needs --kind")
        X = generators.spherical_solid(args.kind, n=args.n)
    else:  # pragma: no cover - argparse choices guard this
        raise _UsageError(f"--family: unknown family {fam}")
    fileio.save(X, args.out)
    print(
        f"wrote {args.out}: {len(X.faces)} faces, {len(X.edges)} edges, "
        f"{X.vertex_count} vertices, {len(X.apartments)} apartments"
    )
    return 0


def _cmd_validate(args) -> int:
    X = _load(args.infile)
    # The ambient tessellation axioms only apply when the complex itself is
    # claimed planar: no apartments at all (spheres) or a single apartment
    # covering every face.  Products of trees and books with three or more
    # pages are planar only inside each apartment; for those the substructure
    # axioms below are the whole contract.
    nfaces = len(X.faces)
    ambient_planar = not X.apartments or any(
        len(a.faces) == nfaces for a in X.apartments
    )
    reports = []
    if ambient_planar:
        reports.append(("tessellation", validate_tessellation(X)))
    if X.apartments:
        c = _center(X, args.center)
        reports.append(("planar-substructures", validate_pcps(X, c, args.radius)))
    ok = True
    for label, r in reports:
        for c in r.checks:
            print(f"{label}/{c.name}: {c.status}" + (f" ({c.detail})" if c.detail else ""))
            if c.status == "fail":
                ok = False
        if r.scope_note:
            print(f"{label}: {r.scope_note}")
    print("RESULT:", "pass" if ok else "fail")
    return 0 if ok else 1


def _cmd_curvature(args) -> int:
    X = _load(args.infile)
    rep = curvature_report(X)
    lines = ["apartment,vertex,face,corner_curvature"]
    for (ap, v, f), val in sorted(rep.corner_table.items()):
        lines.append(f"{ap},{v},{f},{_q(val)}")
    _write_lines(args.out, lines)
    if args.out:
        print(f"wrote {args.out}: {len(rep.corner_table)} corners")
    print(f"faces tabled: {len(rep.face_table)}")
    print(f"minimum corner: {_q(rep.minimum)}")
    print(f"maximum corner: {_q(rep.maximum)}")
    flags = []
    if rep.all_negative:
        flags.append("all-negative")
    elif rep.all_nonpositive:
        flags.append("all-nonpositive")
    if rep.all_positive:
        flags.append("all-positive")
    print("sign:", " ".join(flags) if flags else "mixed")
    return 0


def _cmd_geodesics(args) -> int:
    X = _load(args.infile)
    m = face_metric(X)
    d = m.distance(args.src, args.dst)
    iv = interval(X, args.src, args.dst)
    print(f"distance: {d}")
    print("interval layer sizes:", ",".join(str(len(l)) for l in iv.layers))
    print(f"bigon certificate (max layer width): {bigon_certificate(X, args.src, args.dst)}")
    if args.enumerate:
        en = enumerate_bigons(X, args.src, args.dst, cap=args.cap)
        print(f"geodesics: {en.count}")
        print(f"delta_bigon: {en.delta_bigon}")
        print(f"max index spread: {en.max_index_spread}")
        for g in en.geodesics:
            print(" ".join(str(f) for f in g))
    return 0


def _cmd_hyperbolicity(args) -> int:
    X = _load(args.infile)
    c = _center(X, args.center)
    m = face_metric(X)
    dist = m.distances_from(c, limit=args.max_radius)
    lines = ["radius,sample_faces,four_point_delta"]
    for r in range(1, args.max_radius + 1):
        sample = sorted(f for f, d in dist.items() if d <= r)
        try:
            val = four_point_delta(X, sample, budget=args.cap)
        except BudgetExceededError:
            lines.append(f"{r},{len(sample)},skipped-budget")
            break
        except UntrustedRegionError:
            lines.append(f"{r},{len(sample)},not-certified")
            break
        lines.append(f"{r},{len(sample)},{_q(val)}")
    _write_lines(args.out, lines)
    return 0


def _cmd_cheeger(args) -> int:
    X = _load(args.infile)
    c = _center(X, args.center)
    b = cheeger_lower_bounds(X, center=c)
    print(f"bound1 (edge-weight x boundary-length): {_q(b.bound1)}")
    print(f"bound2 (edge-weight threshold): {_q(b.bound2)}")
    print(f"certificate bound (sphere growth): {_q(b.certificate_bound)}")
    print(f"best valid lower bound: {_q(b.best_valid)}")
    prof = cheeger_at_infinity(X, center=c)
    print(
        "at-infinity profile:",
        ",".join(_q(x) for x in prof) if prof else "-",
    )
    if args.exact:
        if X.is_complete():
            region = sorted(range(len(X.faces)))
            if len(region) > MAX_BRUTEFORCE_REGION:
                print(f"exact: complete complex too large for brute force ({len(region)} faces)")
                return 1
            w = cheeger_bruteforce(X, region)
            print(f"exact minimum (half-volume side): {_q(w.ratio)}")
            print("witness faces:", ",".join(str(f) for f in sorted(w.faces)))
        else:
            m = face_metric(X)
            dist = m.distances_from(c, limit=args.region_radius)
            region = sorted(
                f
                for f, d in dist.items()
                if d <= args.region_radius and X.face_complete(f)
            )
            w = cheeger_global_minimum(X, region)
            print(f"exact minimum over ball region ({len(region)} faces): {_q(w.ratio)}")
            print("witness faces:", ",".join(str(f) for f in sorted(w.faces)))
    return 0


def _cmd_spectrum(args) -> int:
    X = _load(args.infile)
    c = _center(X, args.center)
    rep = spectrum(X, c, args.radius, operator=args.operator, budget=args.cap)
    print(f"faces: {len(rep.faces)}")
    print(f"lambda0: {_fl(rep.lambda0)}")
    if rep.lambda0_cheeger_bound is not None:
        print(f"lambda0 isoperimetric lower bound: {_fl(rep.lambda0_cheeger_bound)}")
    print(f"max residual: {_fl(rep.max_residual)}")
    if rep.window is not None:
        print(
            f"ratio window: [{_fl(rep.window[0])}, {_fl(rep.window[1])}], "
            f"fraction inside: {_fl(rep.window_fraction)}"
        )
    print(
        "balance profile:",
        ",".join(_q(x) for x in rep.balance_profile) if rep.balance_profile else "-",
    )
    lines = ["index,eigenvalue,degree_eigenvalue,ratio"]
    for i, v in enumerate(rep.eigenvalues):
        ratio = _fl(rep.ratio_table[i]) if rep.ratio_table else "-"
        lines.append(f"{i},{_fl(v)},{rep.degree_eigenvalues[i]},{ratio}")
    if args.out:
        _write_lines(args.out, lines)
        print(f"wrote {args.out}: {len(rep.eigenvalues)} eigenvalues")
    else:
        _write_lines(None, lines[: 1 + min(len(rep.eigenvalues), args.head)])
    return 0


def _cmd_eigenfunctions(args) -> int:
    X = _load(args.infile)
    c = _center(X, args.center)
    certs = finite_support_eigenfunctions(X, c, args.radius)
    if not certs:
        print("no finitely supported eigenfunctions at this scale")
        return 0
    for k, cert in enumerate(certs):
        lam = _q(cert.eigenvalue) if cert.exact else _fl(cert.eigenvalue)
        kind = "exact" if cert.exact else f"floating (residual {_fl(cert.residual)})"
        print(f"[{k}] eigenvalue {lam} ({kind}), support {len(cert.support)} faces")
        vals = ",".join(
            f"{f}:{_q(v) if cert.exact else _fl(v)}"
            for f, v in sorted(cert.values.items())
        )
        print(f"    {vals}")
    return 0


def _cmd_dirichlet(args) -> int:
    X = _load(args.infile)
    c = _center(X, args.center)
    try:
        with open(args.boundary) as fh:
            raw = json.load(fh)
        bv = {int(k): float(v) for k, v in raw.items()}
    except FileNotFoundError:
        raise _UsageError(f"--boundary: no such file: {args.boundary}")
    except (ValueError, AttributeError):
        raise _UsageError(f"--boundary: {args.boundary} is not a face->value JSON object")
    sol = solve_dirichlet(X, c, args.radius, bv)
    print(f"interior faces: {len(sol.interior)}")
    print(f"boundary faces: {len(sol.boundary)}")
    print(f"residual: {_fl(sol.residual)}")
    print(f"max principle: {'holds' if sol.max_principle_holds() else 'VIOLATED'}")
    lines = ["face,role,value"]
    for f in sorted(sol.values):
        role = "interior" if f in set(sol.interior) else "boundary"
        lines.append(f"{f},{role},{_fl(sol.values[f])}")
    if args.out:
        _write_lines(args.out, lines)
        print(f"wrote {args.out}: {len(sol.values)} faces")
    return 0


# ---------------------------------------------------------------------------
# consolidated report
# ---------------------------------------------------------------------------

_DASH_COLS = ("check", "hypothesis", "status", "detail")


def _dashboard_rows(X, center: int, radius: int) -> list[tuple[str, str, str, str]]:
    rows: list[tuple[str, str, str, str]] = []
    rep = curvature_report(X, center=center)
    tabled = bool(rep.corner_table)
    neg = tabled and rep.all_negative
    nonpos = tabled and rep.all_nonpositive
    pos = tabled and rep.all_positive
    m = face_metric(X)
    w = m.w(center)

    # finiteness under positive curvature
    ev = myers_evidence(X)
    if pos:
        status = (
            "verified-at-scale"
            if ev.verdict == "consistent-positive-finite"
            else "violated"
        )
        detail = ev.note or f"faces {len(X.faces)}, complete {X.is_complete()}"
    else:
        status, detail = "hypothesis-not-met", "not all corners positive"
    rows.append(("positive-curvature-finiteness", "all corners > 0", status, detail))

    # empty cut locus under nonpositive curvature
    if not nonpos:
        rows.append(
            (
                "nonpositive-cut-locus-empty",
                "all corners <= 0",
                "hypothesis-not-met",
                "positive corner exists",
            )
        )
    else:
        r_max = int(min(radius, (w if w != float("inf") else radius) + 1))
        cl = None
        r_used = None
        for r in range(r_max, 1, -1):
            try:
                cl = cut_locus(X, center, r)
            except UntrustedRegionError:
                continue
            r_used = r
            break
        if r_used is None:
            rows.append(
                (
                    "nonpositive-cut-locus-empty",
                    "all corners <= 0",
                    "skipped-budget",
                    "no certifiable radius >= 2",
                )
            )
        else:
            rows.append(
                (
                    "nonpositive-cut-locus-empty",
                    "all corners <= 0",
                    "verified-at-scale" if not cl else "violated",
                    f"radius {r_used}" + ("" if not cl else f"; cells {sorted(cl)}"),
                )
            )

    # backward neighbors bounded by 2 under nonpositive curvature
    if not nonpos:
        rows.append(
            (
                "backward-neighbors-bounded",
                "all corners <= 0",
                "hypothesis-not-met",
                "positive corner exists",
            )
        )
    else:
        r_max = int(min(radius, w if w != float("inf") else radius))
        sp = None
        r_used = None
        for r in range(r_max, 0, -1):
            try:
                sp = spheres(X, center, r)
            except UntrustedRegionError:
                continue
            r_used = r
            break
        if r_used is None:
            rows.append(
                (
                    "backward-neighbors-bounded",
                    "all corners <= 0",
                    "skipped-budget",
                    "no certified sphere",
                )
            )
        else:
            bad = [r.face for r in sp.rows if r.certified and r.backward > 2]
            rows.append(
                (
                    "backward-neighbors-bounded",
                    "all corners <= 0",
                    "verified-at-scale" if not bad else "violated",
                    f"radius {r_used}, max backward {sp.max_backward()}"
                    + ("" if not bad else f"; cells {bad}"),
                )
            )

    # thin bigons under negative curvature
    if not neg:
        rows.append(
            (
                "bigons-thin",
                "all corners < 0",
                "hypothesis-not-met",
                "nonnegative corner exists",
            )
        )
    else:
        dist = m.distances_from(center, limit=min(radius, 3))
        worst = 0
        checked = 0
        cells: list[int] = []
        for f in sorted(dist):
            if f == center:
                continue
            try:
                en = enumerate_bigons(X, center, f, cap=2000)
            except (UntrustedRegionError, BudgetExceededError):
                continue
            checked += 1
            if en.delta_bigon > worst:
                worst = en.delta_bigon
            if en.delta_bigon > 1:
                cells.append(f)
        rows.append(
            (
                "bigons-thin",
                "all corners < 0",
                "verified-at-scale" if not cells else "violated",
                f"{checked} pairs from center, max spread {worst}"
                + ("" if not cells else f"; cells {cells}"),
            )
        )

    # positive isoperimetric bound under negative curvature
    if not neg:
        rows.append(
            (
                "cheeger-bound-positive",
                "all corners < 0",
                "hypothesis-not-met",
                "nonnegative corner exists",
            )
        )
    else:
        b = cheeger_lower_bounds(X, center=center)
        ok = b.best_valid is not None and b.best_valid > 0
        rows.append(
            (
                "cheeger-bound-positive",
                "all corners < 0",
                "verified-at-scale" if ok else "violated",
                f"best valid bound {_q(b.best_valid)}",
            )
        )

    # no finitely supported eigenfunctions under nonpositive curvature
    certs = None
    note = "no searchable radius"
    r_eig = None
    for r in range(min(radius, 4), 0, -1):
        try:
            certs = finite_support_eigenfunctions(X, center, r)
        except (UntrustedRegionError, BudgetExceededError) as exc:
            note = str(exc)
            continue
        r_eig = r
        break
    if not nonpos:
        detail = "positive corner exists"
        if certs:
            lam = certs[0].eigenvalue
            detail += (
                f"; eigenfunction exhibited: eigenvalue {_q(lam) if certs[0].exact else _fl(lam)}, "
                f"support {len(certs[0].support)} faces"
            )
        rows.append(
            (
                "no-finite-support-eigenfunctions",
                "all corners <= 0",
                "hypothesis-not-met",
                detail,
            )
        )
    elif certs is None:
        rows.append(
            (
                "no-finite-support-eigenfunctions",
                "all corners <= 0",
                "skipped-budget",
                note,
            )
        )
    else:
        rows.append(
            (
                "no-finite-support-eigenfunctions",
                "all corners <= 0",
                "verified-at-scale" if not certs else "violated",
                f"search radius {r_eig}"
                + (
                    ""
                    if not certs
                    else f"; cells {sorted(certs[0].support)}"
                ),
            )
        )
    return rows


def _cmd_report(args) -> int:
    X = _load(args.infile)
    c = _center(X, args.center)
    rows = _dashboard_rows(X, c, args.radius)
    widths = [max(len(r[i]) for r in rows + [_DASH_COLS]) for i in range(4)]
    fmt = "  ".join(f"{{:<{w}}}" for w in widths)
    print(fmt.format(*_DASH_COLS))
    for r in rows:
        print(fmt.format(*r))
    return 1 if any(r[2] == "violated" for r in rows) else 0


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="curvcx",
        description="polygonal complexes: curvature, geodesics, isoperimetry, spectra",
    )
    sub = ap.add_subparsers(dest="cmd", required=True)

    def common(p, infile=True):
        if infile:
            p.add_argument("--in", dest="infile", required=True, help="complex file")
        p.add_argument("--threads", type=int, default=0, help="accepted for scripting; all analyses are single-threaded and deterministic")
        p.add_argument("--budget", type=int, default=None, help="cell budget override (also: CURVCX_BUDGET)")

    g = sub.add_parser("generate", help="build a complex and write it to a file")
    g.add_argument("--family", required=True, choices=list(generators.FAMILIES))
    g.add_argument("--p", type=int)
    g.add_argument("--q", type=int)
    g.add_argument("--n", type=int)
    g.add_argument("--marks", help="coxeter_triangle: r,s,t")
    g.add_argument("--degrees", help="product_trees: r,s")
    g.add_argument("--pages", type=int, help="book: page count")
    g.add_argument("--kind", help="spherical: tetrahedron|cube|octahedron|dodecahedron|icosahedron|prism|antiprism")
    g.add_argument("--radius", type=int, default=4)
    g.add_argument("--apartments", type=int, default=6)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--out", required=True)
    common(g, infile=False)

    v = sub.add_parser("validate", help="run the axiom validators")
    common(v)
    v.add_argument("--center", type=int, default=None)
    v.add_argument("--radius", type=int, default=3)

    cv = sub.add_parser("curvature", help="exact corner curvature table")
    common(cv)
    cv.add_argument("--out", default=None, help="write corner CSV here")

    ge = sub.add_parser("geodesics", help="distance and geodesic intervals between two faces")
    common(ge)
    ge.add_argument("--from", dest="src", type=int, required=True)
    ge.add_argument("--to", dest="dst", type=int, required=True)
    ge.add_argument("--enumerate", action="store_true")
    ge.add_argument("--cap", type=int, default=1000)

    hy = sub.add_parser("hyperbolicity", help="four-point deltas over growing balls")
    common(hy)
    hy.add_argument("--center", type=int, default=None)
    hy.add_argument("--max-radius", type=int, default=3)
    hy.add_argument("--cap", type=int, default=None, help="quadruple budget override")
    hy.add_argument("--out", default=None)

    ch = sub.add_parser("cheeger", help="isoperimetric bounds and exact minima")
    common(ch)
    ch.add_argument("--center", type=int, default=None)
    ch.add_argument("--exact", action="store_true")
    ch.add_argument("--region-radius", type=int, default=4)

    spp = sub.add_parser("spectrum", help="operator spectrum on a ball")
    common(spp)
    spp.add_argument("--center", type=int, default=None)
    spp.add_argument("--radius", type=int, required=True)
    spp.add_argument("--operator", choices=["delta", "degree"], default="delta")
    spp.add_argument("--cap", type=int, default=None, help="dense eigensolver cap")
    spp.add_argument("--head", type=int, default=10, help="rows to print without --out")
    spp.add_argument("--out", default=None)

    ef = sub.add_parser("eigenfunctions", help="search finitely supported eigenfunctions")
    common(ef)
    ef.add_argument("--center", type=int, default=None)
    ef.add_argument("--radius", type=int, required=True)

    di = sub.add_parser("dirichlet", help="solve the boundary value problem on a ball")
    common(di)
    di.add_argument("--center", type=int, default=None)
    di.add_argument("--radius", type=int, required=True)
    di.add_argument("--boundary", required=True, help="JSON file: face -> value")
    di.add_argument("--out", default=None)

    rp = sub.add_parser("report", help="consolidated theorem dashboard")
    common(rp)
    rp.add_argument("--center", type=int, default=None)
    rp.add_argument("--radius", type=int, default=4)
    return ap


_HANDLERS = {
    "generate": _cmd_generate,
    "validate": _cmd_validate,
    "curvature": _cmd_curvature,
    "geodesics": _cmd_geodesics,
    "hyperbolicity": _cmd_hyperbolicity,
    "cheeger": _cmd_cheeger,
    "spectrum": _cmd_spectrum,
    "eigenfunctions": _cmd_eigenfunctions,
    "dirichlet": _cmd_dirichlet,
    "report": _cmd_report,
}


def main(argv: list[str] | None = None) -> int:
    ap = _build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return _HANDLERS[args.cmd](args)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except CurvcxError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
