"""Command-line front end.

Verbs: ``polytope``, ``face``, ``equiv``, ``classify``, ``construct``,
``check``.  Groups are given as ``-n <degree> -g "<gen>; <gen>; ..."`` in
cycle notation; group files hold one group per line as
``n=<degree>; <gen>; <gen>; ...``.  Everything is exact and deterministic:
identical invocations produce byte-identical JSON.  Exit codes: 0 on
success, 1 on verification failure, 2 on parse errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from .classify import (
    FACE_CASES,
    build_face_case,
    classification_report,
    group_invariants,
    verify_table1,
)
from .errors import PermPolytopeError
from .groups import PermutationGroup, group_from_cycle_strings, isomorphisms
from .perms import parse_cycles
from .permutation_polytope import (
    PermPolytope,
    affinely_equivalent_polytopes,
    canonical_crosspolytope_group,
    canonical_cube_group,
    central_symmetry_data,
    constr_face,
    edge_graph,
    effectively_equivalent,
    face_from_subset,
    free_sum_double,
    is_simplex,
)
from .vpolytope import combinatorially_isomorphic


def _parse_group(n: Optional[int], gens_text: str) -> PermutationGroup:
    if n is None:
        raise PermPolytopeError("a degree is required: pass -n <degree>")
    gens = [t.strip() for t in gens_text.split(";") if t.strip()]
    return group_from_cycle_strings(gens, n)


def _parse_group_line(line: str) -> PermutationGroup:
    head, _, rest = line.partition(";")
    head = head.strip()
    if not head.startswith("n="):
        raise PermPolytopeError(f"group line must start with n=<degree>: {line!r}")
    return _parse_group(int(head[2:]), rest)


def _load_group_file(path: str) -> list[PermutationGroup]:
    groups = []
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if line and not line.startswith("#"):
                groups.append(_parse_group_line(line))
    return groups


def _parse_subset(group: PermutationGroup, text: str):
    elems = []
    for token in text.split(";"):
        token = token.strip()
        if not token:
            continue
        perm = group.identity if token == "e" else parse_cycles(token, group.degree)
        elems.append(perm)
    return elems


def _emit(report: dict, args, text_lines: Sequence[str]) -> None:
    payload = json.dumps(report, indent=2, sort_keys=True)
    if args.json:
        print(payload)
    else:
        for line in text_lines:
            print(line)
    if getattr(args, "out", None):
        with open(args.out, "w") as fh:
            fh.write(payload + "\n")


def _polytope_report(group: PermutationGroup) -> dict:
    poly = PermPolytope(group)
    lattice = poly.face_lattice()
    graph = edge_graph(group)
    return {
        "degree": group.degree,
        "generators": [str(g) for g in group.generators],
        "order": group.order,
        "dim": poly.dim,
        "f_vector": list(lattice.f_vector),
        "vertex_degree": graph.degree,
        "n_facets": len(lattice.facets),
        "simplex": is_simplex(group),
        "centrally_symmetric": central_symmetry_data(group) is not None,
        "lattice": lattice.to_json_dict(),
    }


def _cmd_polytope(args) -> int:
    if args.file:
        reports = [_polytope_report(g) for g in _load_group_file(args.file)]
        report = {"groups": reports}
        lines = [
            f"order={r['order']} dim={r['dim']} f={tuple(r['f_vector'])} "
            f"degree={r['vertex_degree']}"
            for r in reports
        ]
        _emit(report, args, lines)
        return 0
    group = _parse_group(args.n, args.generators)
    report = _polytope_report(group)
    lines = [
        f"group of order {report['order']} on {report['degree']} points",
        f"dim:            {report['dim']}",
        f"f-vector:       {tuple(report['f_vector'])}",
        f"vertex degree:  {report['vertex_degree']}",
        f"facets:         {report['n_facets']}",
        f"simplex:        {report['simplex']}",
        f"centrally symmetric: {report['centrally_symmetric']}",
    ]
    _emit(report, args, lines)
    return 0


def _cmd_face(args) -> int:
    group = _parse_group(args.n, args.generators)
    subset = _parse_subset(group, args.subset)
    face = face_from_subset(group, subset)
    poly = PermPolytope(group)
    face_poly = poly.face_vpolytope(face)
    lattice = face_poly.face_lattice()
    verified = poly.is_face(face)
    report = {
        "subset": [str(g) for g in subset],
        "face_elements": [str(g) for g in face],
        "face_size": len(face),
        "face_dim": face_poly.dim,
        "f_vector": list(lattice.f_vector),
        "is_face": verified,
    }
    lines = [
        f"F(S) has {len(face)} vertices, dim {face_poly.dim}, "
        f"f-vector {tuple(lattice.f_vector)}",
        "elements: " + "; ".join(str(g) for g in face),
        f"verified as a face: {verified}",
    ]
    _emit(report, args, lines)
    return 0 if verified else 1


def _cmd_equiv(args) -> int:
    g1 = _parse_group(args.n, args.generators)
    g2 = _parse_group(args.n2, args.g2)
    iso = next(isomorphisms(g1, g2), None)
    eff = effectively_equivalent(g1, g2)
    p1, p2 = PermPolytope(g1), PermPolytope(g2)
    aff = affinely_equivalent_polytopes(p1, p2)
    comb = combinatorially_isomorphic(p1.face_lattice(), p2.face_lattice())
    report = {
        "isomorphic_groups": iso is not None,
        "effectively_equivalent": eff is not None,
        "effective_witness": (
            {str(a): str(b) for a, b in sorted(eff.items())} if eff else None),
        "affinely_equivalent_polytopes": aff is not None,
        "combinatorially_equivalent_polytopes": comb is not None,
    }
    lines = [
        f"isomorphic groups:       {report['isomorphic_groups']}",
        f"effectively equivalent:  {report['effectively_equivalent']}",
        f"affinely equivalent:     {report['affinely_equivalent_polytopes']}",
        f"combinatorially equiv.:  {report['combinatorially_equivalent_polytopes']}",
    ]
    _emit(report, args, lines)
    return 0


def _cmd_classify(args) -> int:
    run_table1 = args.table1 or not args.faces
    run_faces = args.faces or not args.table1
    report: dict = {}
    lines: list[str] = []
    ok = True
    if run_table1:
        table1 = verify_table1()
        report["table1"] = table1.to_json_dict(with_timings=False)
        n_pass = sum(v.passed for v in table1.verdicts)
        for v in table1.verdicts:
            lines.append(
                f"[{'PASS' if v.passed else 'FAIL'}] {v.row.type_name} "
                f"({v.row.iso_type}): order={v.order} dim={v.dim} "
                f"f={tuple(v.f_vector)}")
        lines.append(
            f"[{'PASS' if table1.matrix_ok else 'FAIL'}] effective-equivalence "
            "matrix is diagonal")
        lines.append(
            f"[{'PASS' if table1.affine_pairs_ok else 'FAIL'}] duplicated "
            "combinatorial types are affinely equivalent")
        lines.append(f"table 1: {n_pass}/{len(table1.verdicts)} rows PASS")
        ok &= table1.passed
    if run_faces:
        case_reports = []
        for name in FACE_CASES:
            result = build_face_case(name)
            case_reports.append(result.to_json_dict(with_timings=False))
            lines.append(
                f"[{'PASS' if result.passed else 'FAIL'}] {name}: |G|="
                f"{result.group_order} face dim {result.face_dim} "
                f"f={tuple(result.f_vector)}")
            ok &= result.passed
        report["face_cases"] = case_reports
    report["passed"] = ok
    lines.append(f"overall: {'PASS' if ok else 'FAIL'}")
    if getattr(args, "out", None):
        # the report file additionally carries timings
        with open(args.out, "w") as fh:
            json.dump(classification_report(with_timings=True), fh,
                      indent=2, sort_keys=True)
            fh.write("\n")
        args.out = None
    _emit(report, args, lines)
    return 0 if ok else 1


def _cmd_construct(args) -> int:
    if args.kind == "cube":
        group = canonical_cube_group(args.dim)
        extra = {}
    elif args.kind == "crosspolytope":
        group = canonical_crosspolytope_group(args.dim)
        extra = {}
    elif args.kind == "constr":
        group, apex, face = constr_face(args.sum_l, args.cube_d)
        extra = {
            "face_elements": [str(g) for g in face],
            "face_size": len(face),
            "pair_element": str(apex),
        }
    elif args.kind == "free-sum-double":
        base = _parse_group(args.n, args.generators)
        group = free_sum_double(base)
        extra = {}
    else:
        raise PermPolytopeError(f"unknown construction kind {args.kind!r}")
    report = {
        "kind": args.kind,
        "degree": group.degree,
        "order": group.order,
        "generators": [str(g) for g in group.generators],
        **extra,
    }
    lines = [f"degree: {group.degree}", f"order:  {group.order}",
             "generators: " + "; ".join(str(g) for g in group.generators)]
    if "face_size" in extra:
        lines.append(f"face size: {extra['face_size']}")
    _emit(report, args, lines)
    return 0


def _cmd_check(args) -> int:
    if args.file:
        groups = _load_group_file(args.file)
    else:
        groups = [_parse_group(args.n, args.generators)]
    reports = []
    lines = []
    ok = True
    for group in groups:
        rep = group_invariants(group)
        reports.append(rep.to_json_dict())
        lines.append(
            f"[{'PASS' if rep.passed else 'FAIL'}] order={rep.order} "
            f"degree={rep.degree} dim={rep.dim} vertex degree={rep.vertex_degree}")
        ok &= rep.passed
    report = {"groups": reports, "passed": ok}
    lines.append(f"overall: {'PASS' if ok else 'FAIL'}")
    _emit(report, args, lines)
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="perm",
        description="Exact computations with permutation polytopes.")
    sub = parser.add_subparsers(dest="verb", required=True)

    def add_group_flags(p, required=True):
        p.add_argument("-n", type=int, required=False, help="degree")
        p.add_argument("-g", "--generators", default="",
                       help="semicolon-separated cycle expressions")
        p.add_argument("--json", action="store_true", help="emit JSON")
        p.add_argument("--out", help="also write the JSON report to a file")

    p = sub.add_parser("polytope", help="order, dimension, f-vector, lattice")
    add_group_flags(p)
    p.add_argument("--file", help="group file, one `n=<degree>; <gens>` per line")
    p.set_defaults(func=_cmd_polytope)

    p = sub.add_parser("face", help="the face F(S) spanned by a subset")
    add_group_flags(p)
    p.add_argument("--subset", required=True,
                   help="semicolon-separated elements; `e` is the identity")
    p.set_defaults(func=_cmd_face)

    p = sub.add_parser("equiv", help="compare two permutation groups")
    add_group_flags(p)
    p.add_argument("--n2", type=int, required=True, help="degree of the second group")
    p.add_argument("--g2", required=True, help="generators of the second group")
    p.set_defaults(func=_cmd_equiv)

    p = sub.add_parser("classify", help="re-verify the published tables")
    p.add_argument("--table1", action="store_true", help="only the 14-row table")
    p.add_argument("--faces", action="store_true", help="only the face cases")
    p.add_argument("--json", action="store_true")
    p.add_argument("--out", help="write classification_report.json (with timings)")
    p.set_defaults(func=_cmd_classify)

    p = sub.add_parser("construct", help="canonical groups and face towers")
    add_group_flags(p)
    p.add_argument("--kind", required=True,
                   choices=["cube", "crosspolytope", "constr", "free-sum-double"])
    p.add_argument("--dim", type=int, default=0, help="dimension for cube/crosspolytope")
    p.add_argument("--l", dest="sum_l", type=int, default=0,
                   help="crosspolytope summand dimension for constr")
    p.add_argument("--d", dest="cube_d", type=int, default=0,
                   help="cube summand dimension for constr")
    p.set_defaults(func=_cmd_construct)

    p = sub.add_parser("check", help="run the invariant battery on groups")
    add_group_flags(p)
    p.add_argument("--file", help="group file, one `n=<degree>; <gens>` per line")
    p.set_defaults(func=_cmd_check)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except PermPolytopeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
