"""Command-line front end.

Every subcommand builds a plain document and renders it as json, csv, dot or
text.  Exit status: 0 on success, 1 on a domain error, 2 on a usage error
(including an unknown diagram name).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass, field
from typing import Callable, Sequence

from .clifford import InvalidVersorError
from .diagram import CoxeterDiagram, DiagramParseError, parse_diagram
from .e8fold import CONVENTIONS as FOLD_CONVENTIONS
from .e8fold import FoldingError, fold_report
from .field import FieldScalar
from .induction import check_spinorial_automorphisms, identify, induce, spin_group
from .reptheory import (
    RepresentationError, character_table, matrix_rep, mckay_graph, rep_norm_squared,
)
from .rootsystem import (
    DEFAULT_ROOT_CEILING, RootSystemError, automorphism_order, family_name, generate,
    simple_roots_for, verify,
)
from .versorgroup import (
    DEFAULT_GROUP_CEILING, GroupError, VersorGroup, even_subgroup, generate_pin,
    rotation_quotient,
)

__all__ = ["main", "run", "build_parser"]

FIELD_BASIS = "(a + b√2 + cτ + d√2τ) with rational a, b, c, d"
CONVENTIONS = {
    "field_basis": FIELD_BASIS,
    "exact_scalars": "[a, b, c, d] as rational strings",
    "sandwich": "x -> reverse(A) x A / (A reverse(A)), minus sign for odd A",
    "spinor_coordinates": "(a0, a1, a2, a3) for a0 + a1 e2e3 + a2 e3e1 + a3 e1e2",
    "matrices": "column j is the image of basis vector j",
}

DOMAIN_ERRORS = (RootSystemError, GroupError, RepresentationError, FoldingError,
                 InvalidVersorError, ZeroDivisionError)


class UsageError(Exception):
    pass


@dataclass
class Document:
    data: dict
    csv_rows: list[list[str]] | None = None
    text: list[str] | None = None
    dot: str | None = None
    meta: dict = field(default_factory=dict)


# -- helpers --------------------------------------------------------------------

def _diagram(text: str) -> CoxeterDiagram:
    try:
        return parse_diagram(text)
    except DiagramParseError as exc:
        msg = str(exc)
        raise UsageError(msg if msg.startswith("unknown diagram") else f"invalid diagram {text!r}: {msg}") from None


def _name(d: CoxeterDiagram) -> str:
    return d.name or family_name(d) or d.to_text()


def _group(d: CoxeterDiagram, kind: str, ceiling: int) -> VersorGroup:
    pin = generate_pin(simple_roots_for(d), ceiling=ceiling)
    if kind == "pin":
        return pin
    spin = even_subgroup(pin)
    return spin if kind == "spin" else rotation_quotient(spin)


def _scalar(x: FieldScalar, precision: int) -> dict:
    return x.to_json(precision)


def _group_kind(args) -> str:
    if args.spin:
        return "spin"
    if args.chiral:
        return "rotation"
    return "pin"


def _roots_rows(phi) -> list[list[str]]:
    rows = [["index"] + [f"x{i + 1}" for i in range(phi.dimension)]]
    rows += [[str(k)] + [str(c) for c in r] for k, r in enumerate(phi.roots)]
    return rows


def _roots_text(phi) -> list[str]:
    lines = [f"{phi.name or 'root system'}: {len(phi)} roots in dimension {phi.dimension}"]
    lines += ["(" + ", ".join(str(c) for c in r) + ")" for r in phi.roots]
    return lines


# -- subcommands ------------------------------------------------------------------

def cmd_roots(args) -> Document:
    d = _diagram(args.diagram)
    phi = generate(simple_roots_for(d), ceiling=args.ceiling or DEFAULT_ROOT_CEILING, name=_name(d))
    data = phi.to_json(args.precision)
    data["norms"] = [str(n) for n in phi.norms()]
    return Document(data, _roots_rows(phi), _roots_text(phi), meta={"diagram": _name(d)})


def cmd_group(args) -> Document:
    d = _diagram(args.diagram)
    g = _group(d, _group_kind(args), args.ceiling or DEFAULT_GROUP_CEILING)
    data = g.to_json(args.precision)
    rows = [["index", "element"]] + [[str(i), str(e)] for i, e in enumerate(g.elements)]
    text = [f"{g.kind} group of {_name(d)}: order {g.order}, {data['class_count']} classes",
            "class sizes: " + " ".join(map(str, data["class_sizes"]))]
    return Document(data, rows, text, meta={"diagram": _name(d), "group": g.kind})


def cmd_classes(args) -> Document:
    d = _diagram(args.diagram)
    g = _group(d, _group_kind(args), args.ceiling or DEFAULT_GROUP_CEILING)
    labels = g.class_labels()
    classes = []
    for lab, members in zip(labels, g.conjugacy_classes()):
        classes.append({
            "label": lab,
            "size": len(members),
            "element_order": g.element_order(members[0]),
            "representative": str(g.elements[members[0]]),
            "members": members,
        })
    rows = [["label", "size", "element_order", "representative"]]
    rows += [[c["label"], str(c["size"]), str(c["element_order"]), c["representative"]] for c in classes]
    text = [f"{c['label']:>10}  order {c['element_order']:>2}  {c['representative']}" for c in classes]
    data = {"kind": g.kind, "order": g.order, "class_count": len(classes), "classes": classes}
    return Document(data, rows, text, meta={"diagram": _name(d), "group": g.kind})


def cmd_induce(args) -> Document:
    d = _diagram(args.diagram)
    phi3 = generate(simple_roots_for(d), name=_name(d))
    ceiling = args.ceiling or DEFAULT_GROUP_CEILING
    phi4 = induce(phi3, ceiling=ceiling)
    report = verify(phi4)
    data = phi4.to_json(args.precision)
    data["source"] = {"name": phi3.name, "count": len(phi3)}
    data["root_system_axioms"] = report.to_json()
    text = [f"{phi3.name} ({len(phi3)} roots) -> {len(phi4)} roots in 4D, axioms: {report.summary()}"]
    if args.identify:
        data["identified_as"] = identify(phi4)
        text.append(f"identified as {data['identified_as']}")
    if args.check_aut:
        rep = check_spinorial_automorphisms(phi4, spin_group(phi3, ceiling), with_automorphism_order=True)
        data["spinorial_automorphisms"] = rep.to_json()
        text.append(f"left-right maps: {rep.pairs_checked} pairs, all onto {rep.all_onto}, "
                    f"all isometries {rep.all_isometries}, {rep.distinct_maps} distinct; "
                    f"|Aut| = {rep.automorphism_order}")
    return Document(data, _roots_rows(phi4), text, meta={"diagram": _name(d)})


def cmd_aut(args) -> Document:
    target = args.diagram
    if target.lower().startswith("induced:"):
        d = _diagram(target.split(":", 1)[1])
        phi = induce(generate(simple_roots_for(d), name=_name(d)),
                     ceiling=args.ceiling or DEFAULT_GROUP_CEILING)
        label = f"induced:{_name(d)}"
    else:
        d = _diagram(target)
        phi = generate(simple_roots_for(d), ceiling=args.ceiling or DEFAULT_ROOT_CEILING, name=_name(d))
        label = _name(d)
    n = automorphism_order(phi)
    data = {"root_system": label, "identified_as": phi.name, "root_count": len(phi), "automorphism_order": n}
    rows = [["root_system", "root_count", "automorphism_order"], [label, str(len(phi)), str(n)]]
    return Document(data, rows, [str(n)], meta={"diagram": label})


def cmd_rep(args) -> Document:
    d = _diagram(args.diagram)
    kind = "pin" if args.kind == "parity" else "spin"
    g = _group(d, kind, args.ceiling or DEFAULT_GROUP_CEILING)
    rep = matrix_rep(g, args.kind)
    norm = rep_norm_squared(rep, g)
    labels = g.class_labels()
    chars = rep.character_list()
    data = {
        "kind": args.kind,
        "group": g.kind,
        "group_order": g.order,
        "degree": rep.degree,
        "classes": labels,
        "class_sizes": [len(c) for c in g.conjugacy_classes()],
        "character": [str(x) for x in chars],
        "character_exact": [_scalar(x, args.precision) for x in chars],
        "norm_squared": str(norm),
    }
    rows = [["class", "size", "character"]]
    rows += [[lab, str(size), str(x)] for lab, size, x in zip(labels, data["class_sizes"], chars)]
    text = [f"{lab:>10}  {x}" for lab, x in zip(labels, chars)] + [f"||chi||^2 = {norm}"]
    return Document(data, rows, text, meta={"diagram": _name(d), "group": g.kind})


def cmd_chartable(args) -> Document:
    d = _diagram(args.diagram)
    g = _group(d, "spin" if args.binary else "rotation", args.ceiling or DEFAULT_GROUP_CEILING)
    table = character_table(g)
    data = table.to_json(args.precision)
    rows = [["irrep"] + table.class_labels]
    rows += [[lab] + [str(e) for e in row] for lab, row in zip(table.irrep_labels, table.entries)]
    width = max(len(c) for r in rows for c in r) + 2
    text = ["".join(c.rjust(width) for c in r) for r in rows]
    return Document(data, rows, text, meta={"diagram": _name(d), "group": g.kind})


def cmd_mckay(args) -> Document:
    d = _diagram(args.diagram)
    g = _group(d, "spin", args.ceiling or DEFAULT_GROUP_CEILING)
    graph = mckay_graph(g)
    data = graph.to_json()
    text = [f"{graph.labels[i]} -- {graph.labels[j]}" + (f" (x{m})" if m > 1 else "")
            for i, j, m in graph.edges()]
    text.append(f"affine diagram: {data['affine_diagram']}")
    return Document(data, None, text, graph.to_dot(), meta={"diagram": _name(d), "group": g.kind})


def cmd_fold(args) -> Document:
    both = not (args.relations or args.coxeter)
    data = fold_report(relations=both or args.relations, coxeter=both or args.coxeter)
    text = [f"pairs orthogonal: {data['pairs_orthogonal']}"]
    if "relations" in data:
        rel = data["relations"]
        text.append("order matrix: " + "; ".join(" ".join(map(str, r)) for r in rel["order_matrix"]))
        text.append(f"matches H4: {rel['matches_h4']}")
    if "coxeter" in data:
        cox = data["coxeter"]
        text.append(f"h = {cox['h']}, h(H4) = {cox['h_H4']}, W_H4 = +-W: {cox['W_H4_equals_pm_W']}")
    return Document(data, None, text, meta={"diagram": "E8", "fold_conventions": FOLD_CONVENTIONS})


# -- parser and rendering -----------------------------------------------------------

COMMANDS: dict[str, tuple[Callable, tuple[str, ...], str]] = {
    "roots": (cmd_roots, ("json", "csv", "text"), "json"),
    "group": (cmd_group, ("json", "csv", "text"), "json"),
    "classes": (cmd_classes, ("json", "csv", "text"), "json"),
    "induce": (cmd_induce, ("json", "csv", "text"), "json"),
    "aut": (cmd_aut, ("json", "csv", "text"), "json"),
    "rep": (cmd_rep, ("json", "csv", "text"), "json"),
    "chartable": (cmd_chartable, ("json", "csv", "text"), "json"),
    "mckay": (cmd_mckay, ("dot", "json", "text"), "dot"),
    "fold-e8": (cmd_fold, ("json", "text"), "json"),
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv", "dot", "text"), default=None,
                        help="output format (default depends on the command)")
    common.add_argument("--precision", type=int, default=64,
                        help="bits of precision for decimal renderings (>= 16, default 64)")
    common.add_argument("--ceiling", type=int, default=None,
                        help="abort generation beyond this many elements")

    parser = argparse.ArgumentParser(prog="versorlab", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")

    p = sub.add_parser("roots", parents=[common], help="generate a root system")
    p.add_argument("diagram")

    for name, helptext in (("group", "versor group order and classes"),
                           ("classes", "conjugacy classes with representatives")):
        p = sub.add_parser(name, parents=[common], help=helptext)
        p.add_argument("diagram")
        kind = p.add_mutually_exclusive_group()
        kind.add_argument("--pin", action="store_true", help="full pinor group (default)")
        kind.add_argument("--spin", action="store_true", help="even (binary) subgroup")
        kind.add_argument("--chiral", action="store_true", help="rotation group, R identified with -R")

    p = sub.add_parser("induce", parents=[common], help="4D root system from a 3D one")
    p.add_argument("diagram")
    p.add_argument("--identify", action="store_true")
    p.add_argument("--check-aut", action="store_true")

    p = sub.add_parser("aut", parents=[common], help="order of the automorphism group")
    p.add_argument("diagram", help="diagram, or induced:<3d diagram>")

    p = sub.add_parser("rep", parents=[common], help="character of a versor representation")
    p.add_argument("diagram")
    p.add_argument("--kind", required=True, choices=("so3", "leftmult", "parity", "trivial", "contragredient"))

    p = sub.add_parser("chartable", parents=[common], help="character table of the rotation group")
    p.add_argument("diagram")
    p.add_argument("--binary", action="store_true", help="use the binary (spin) group")

    p = sub.add_parser("mckay", parents=[common], help="McKay graph of the binary group")
    p.add_argument("diagram")

    p = sub.add_parser("fold-e8", parents=[common], help="E8 to H4 folding report")
    p.add_argument("--relations", action="store_true")
    p.add_argument("--coxeter", action="store_true")
    return parser


def _render(doc: Document, fmt: str, args) -> str:
    if fmt == "json":
        meta = {"command": args.command, **doc.meta, "conventions": CONVENTIONS,
                "precision_bits": args.precision}
        return json.dumps({"meta": meta, "data": doc.data}, indent=2, ensure_ascii=False) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        csv.writer(buf, lineterminator="\n").writerows(doc.csv_rows)
        return buf.getvalue()
    if fmt == "dot":
        return doc.dot
    return "\n".join(doc.text) + "\n"


def run(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    handler, formats, default = COMMANDS[args.command]
    fmt = args.format or default
    if fmt not in formats:
        err.write(f"versorlab {args.command}: format {fmt!r} not available (choose from {', '.join(formats)})\n")
        return 2
    if args.precision < 16:
        err.write("versorlab: --precision must be at least 16\n")
        return 2
    if args.ceiling is not None and args.ceiling < 1:
        err.write("versorlab: --ceiling must be positive\n")
        return 2
    try:
        doc = handler(args)
    except UsageError as exc:
        err.write(f"versorlab {args.command}: {exc}\n")
        return 2
    except DOMAIN_ERRORS as exc:
        err.write(f"versorlab {args.command}: {exc}\n")
        return 1
    out.write(_render(doc, fmt, args))
    return 0


def main(argv: Sequence[str] | None = None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
