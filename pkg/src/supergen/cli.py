"""Command-line front end: ``supergen {list|verify|tables|suite}``.

Exit codes: 0 success, 1 verification or structural failure, 2 usage error.
Reports carry no timestamps or timings, so identical inputs give identical bytes.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Sequence

from . import __version__
from .core import EVEN, ODD, Element, StructuralError, SuperAlgebra, UsageError, bracket_span, check_axioms, even_part
from .exact import unit_vec
from .families import CATALOG, OUT_OF_SCOPE, Family, catalog_entries, check_size, parse_family, select
from .generate import IngredientSearchError, certify_algebra
from .weights import decompose, irreducible_summands, standard_cartan, weight_str

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


# ---------------------------------------------------------------------------
# per-family pipeline
# ---------------------------------------------------------------------------

def _structural_checks(a: SuperAlgebra, fam: Family):
    """Yields ``(name, ok, detail)`` in a fixed order; stops at the first failure."""
    expected = fam.expected_dim()
    yield "dimension", a.dim == expected, f"built {a.dim}, formula {expected}"
    rep = check_axioms(a)
    yield "axioms", rep.ok, "" if rep.ok else f"{rep.kind} at {rep.triple}: {rep.detail}"
    try:
        frame = standard_cartan(a)
        yield "weight_frame", True, ""
    except (StructuralError, UsageError) as exc:
        yield "weight_frame", False, str(exc)
        return
    odd = a.odd_indices
    span = bracket_span(a, odd, odd)
    ok = span == even_part(a)
    yield "odd_brackets_span_even", ok, f"[odd, odd] has dim {span.dim}, even part {len(a.even_indices)}"


def verify_family(fam: Family, budget: int = 8, graded: bool = False) -> dict:
    """Full pipeline for one family; returns a JSON-ready report entry."""
    entry: dict = {"family": fam.label, "selector": fam.selector, "class": fam.klass}
    try:
        a = fam.build()
    except StructuralError as exc:
        entry.update(status="structural-failure", failed_check="build", detail=str(exc))
        return entry
    entry.update(dim=a.dim, even_dim=len(a.even_indices), odd_dim=len(a.odd_indices))
    checks = {}
    for name, ok, detail in _structural_checks(a, fam):
        checks[name] = "pass" if ok else "fail"
        if not ok:
            entry.update(checks=checks, status="structural-failure", failed_check=name, detail=detail)
            return entry
    entry["checks"] = checks
    entry["weight_digest"] = decompose(standard_cartan(a)).digest()
    try:
        cert = certify_algebra(a, budget=budget, graded=graded)
    except IngredientSearchError as exc:
        entry.update(status="ingredient-search-failure", failed_check="ingredients", detail=str(exc))
        return entry
    entry["status"] = cert.verdict
    entry["certificate"] = cert.to_json()
    return entry


def entry_ok(entry: dict) -> bool:
    return entry.get("status") == "generated"


def run_report(entries: Sequence[dict], budget: int, graded: bool) -> dict:
    entries = sorted(entries, key=lambda e: parse_family(e["selector"]))
    ok = all(entry_ok(e) for e in entries)
    return {
        "tool": "supergen",
        "tool_version": __version__,
        "closure": "graded" if graded else "ungraded",
        "budget": budget,
        "families": list(entries),
        "summary": {"total": len(entries), "generated": sum(entry_ok(e) for e in entries),
                    "failed": sum(not entry_ok(e) for e in entries)},
        "ok": ok,
    }


def _entry_text(e: dict) -> list[str]:
    lines = [f"{e['family']:<8} {e['status']}"]
    if "dim" in e:
        lines[0] += f"  dim {e['dim']} (even {e['even_dim']}, odd {e['odd_dim']})"
    if "failed_check" in e:
        lines.append(f"  failed check: {e['failed_check']}: {e.get('detail', '')}")
    cert = e.get("certificate")
    if cert:
        dims = " -> ".join(map(str, cert["dims"]))
        lines.append(f"  recipe {cert['recipe']}, attempts {cert['attempts']}, closure dims {dims}")
        lines.append(f"  final_dim {cert['final_dim']} / target_dim {cert['target_dim']}")
    return lines


def report_text(rep: dict) -> str:
    lines = []
    for e in rep["families"]:
        lines += _entry_text(e)
    s = rep["summary"]
    lines.append(f"{s['generated']}/{s['total']} families generated by one element"
                 f" ({rep['closure']} closure, budget {rep['budget']})")
    return "\n".join(lines) + "\n"


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _dump(doc) -> str:
    return json.dumps(doc, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


# ---------------------------------------------------------------------------
# tables
# ---------------------------------------------------------------------------

def _piece_labels(a: SuperAlgebra, piece) -> list[str]:
    inside = [a.labels[i] for i in range(a.dim) if piece.contains(unit_vec(a.dim, i))]
    if len(inside) == piece.dim:
        return inside
    return [str(Element(a, tuple(r))) for r in piece.basis.rows]


def fixture_document(a: SuperAlgebra) -> dict:
    """Basis and weight tables in the layout of the checked-in regression fixtures."""
    frame = standard_cartan(a)
    doc = {"family": a.name, "frame": list(frame.labels)}
    if a.meta.get("kind") == "classical":
        h = set(frame.labels)
        doc["even_cartan"] = [lab for i, lab in enumerate(a.labels) if lab in h]
        doc["even_roots"] = [a.labels[i] for i in a.even_indices if a.labels[i] not in h]
        split = irreducible_summands(frame, a.even_indices, a.odd_indices)
        doc["odd_summands"] = [_piece_labels(a, p) for p in split.summands]
        odd = decompose(frame, parity=ODD)
        doc["odd_weights"] = [{"weight": [str(x) for x in w],
                               "vectors": [a.labels[i] for i in odd.members[w]]} for w in odd.weights]
    else:
        layers = {}
        for k in sorted(set(a.z_degree)):
            dec = decompose(frame, degree=k)
            layers[str(k)] = [{"weight": [str(x) for x in w],
                               "vectors": [a.labels[i] for i in dec.members[w]]} for w in dec.weights]
        doc["layers"] = layers
        split = irreducible_summands(frame, a.layer(0), a.layer(1))
        doc["layer1_summands"] = [_piece_labels(a, p) for p in split.summands]
    return doc


def tables_document(a: SuperAlgebra) -> dict:
    frame = standard_cartan(a)
    basis = []
    for i, lab in enumerate(a.labels):
        row = {"label": lab, "parity": a.parity[i], "weight": [str(x) for x in frame.basis_weights[i]]}
        if a.z_degree is not None:
            row["z_degree"] = a.z_degree[i]
        basis.append(row)
    return {"algebra": a.name, "dim": a.dim, "basis": basis, "weights": decompose(frame).to_json()}


def tables_text(a: SuperAlgebra) -> str:
    frame = standard_cartan(a)
    graded = a.z_degree is not None
    out = [f"{a.name}: dim {a.dim} (even {len(a.even_indices)}, odd {len(a.odd_indices)})",
           "frame: " + ", ".join(frame.labels), "", "basis:"]
    for i, lab in enumerate(a.labels):
        deg = f"  deg {a.z_degree[i]:>2}" if graded else ""
        par = "odd " if a.parity[i] else "even"
        out.append(f"  {i:>3}  {lab:<28} {par}{deg}  weight {weight_str(frame.basis_weights[i])}")
    out += ["", "weights:"]
    parts = ([(f"layer {k}", dict(degree=k)) for k in sorted(set(a.z_degree))] if graded
             else [("even", dict(parity=EVEN)), ("odd", dict(parity=ODD))])
    for name, kw in parts:
        dec = decompose(frame, **kw)
        out.append(f"  {name}:")
        for w in dec.weights:
            out.append(f"    {weight_str(w):<22} " + ", ".join(a.labels[i] for i in dec.members[w]))
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def cmd_list(args) -> int:
    entries = catalog_entries()
    if args.json:
        _emit(_dump({"families": entries, "out_of_scope": list(OUT_OF_SCOPE)}), args.out)
        return EXIT_OK
    lines = [f"{e['selector']} ({e['constraint']})  [{e['class']}]" for e in entries]
    lines.append("out of scope: " + ", ".join(OUT_OF_SCOPE) + " (no explicit realization implemented)")
    _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    fam = parse_family(args.family)
    check_size(fam, args.allow_large)
    entry = verify_family(fam, args.budget, args.graded_closure)
    rep = run_report([entry], args.budget, args.graded_closure)
    _emit(_dump(rep) if args.json else report_text(rep), args.out)
    return EXIT_OK if rep["ok"] else EXIT_FAIL


def cmd_tables(args) -> int:
    fam = parse_family(args.family)
    check_size(fam, args.allow_large)
    a = fam.build()
    if args.fixture:
        text = _dump(fixture_document(a))
    elif args.json:
        text = _dump(tables_document(a))
    else:
        text = tables_text(a)
    _emit(text, args.out)
    return EXIT_OK


def _verify_worker(job: tuple[Family, int, bool]) -> dict:
    return verify_family(*job)


def cmd_suite(args) -> int:
    fams = select(args.only)
    jobs = [(f, args.budget, args.graded_closure) for f in fams]
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            entries = list(pool.map(_verify_worker, jobs))
    else:
        entries = [_verify_worker(j) for j in jobs]
    rep = run_report(entries, args.budget, args.graded_closure)
    _emit(_dump(rep) if args.json else report_text(rep), args.out)
    return EXIT_OK if rep["ok"] else EXIT_FAIL


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="supergen", description="One-element generation of simple Lie superalgebras.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, family=True):
        if family:
            sp.add_argument("family", nargs="+", help="selector and parameters, e.g. A 1 1 or St 4")
        sp.add_argument("--json", action="store_true", help="machine-readable output")
        sp.add_argument("--out", metavar="PATH", help="write the report to PATH instead of stdout")

    def run_flags(sp):
        sp.add_argument("--budget", type=_positive, default=8, help="generator attempts (default 8)")
        sp.add_argument("--graded-closure", action="store_true",
                        help="split every new vector into parity parts during closure")

    sp = sub.add_parser("list", help="supported families and parameter constraints")
    common(sp, family=False)
    sp.set_defaults(func=cmd_list)

    sp = sub.add_parser("verify", help="build, check and certify one family")
    common(sp)
    run_flags(sp)
    sp.add_argument("--allow-large", action="store_true", help="lift the dimension cap")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("tables", help="basis labels and weight tables")
    common(sp)
    sp.add_argument("--fixture", action="store_true", help="emit the regression-fixture layout")
    sp.add_argument("--allow-large", action="store_true")
    sp.set_defaults(func=cmd_tables)

    sp = sub.add_parser("suite", help="certify the default family matrix")
    common(sp, family=False)
    run_flags(sp)
    sp.add_argument("--only", help="classical, cartan, or a family letter (" + ", ".join(CATALOG) + ")")
    sp.add_argument("--jobs", type=_positive, default=1, help="parallel worker processes")
    sp.set_defaults(func=cmd_suite)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"supergen: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except StructuralError as exc:
        print(f"supergen: structural failure: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
