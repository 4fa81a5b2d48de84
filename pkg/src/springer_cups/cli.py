"""Command-line front end: ``springer-cups <command> ...``."""
from __future__ import annotations

import argparse
import json
import sys

from . import cups as cd
from . import springer as sp
from . import tableaux as tb
from .spheres import oracle_cross_check


class InputError(ValueError):
    """Malformed command-line input (exit code 2)."""


def _shape(text: str) -> tuple:
    try:
        a, b = (int(x) for x in text.replace("-", ",").split(","))
    except ValueError:
        raise InputError(f"shape must look like 5,3, got {text!r}") from None
    if a < b or b < 0:
        raise InputError(f"({a},{b}) is not a partition")
    return a, b


def _seed(text: str) -> int:
    try:
        s = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"seed must be an integer, got {text!r}") from None
    if not 0 <= s < 2 ** 64:
        raise argparse.ArgumentTypeError("seed must be a 64-bit unsigned integer")
    return s


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError("expected a positive integer")
    return v


def _load_json(text: str):
    """A JSON document given inline, as a file path, or '-' for stdin."""
    try:
        if text == "-":
            return json.load(sys.stdin)
        if text.lstrip().startswith(("{", "[")):
            return json.loads(text)
        with open(text, encoding="utf-8") as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read JSON from {text!r}: {exc}") from None


def _parse_syt(text: str) -> tb.StandardYoungTableau:
    """Rows separated by '/', entries by spaces or commas: ``5 4 3/2 1``."""
    rows = []
    for part in text.split("/"):
        tokens = part.replace(",", " ").split()
        try:
            rows.append(tuple(int(x) for x in tokens))
        except ValueError:
            raise InputError(f"bad tableau row {part!r}") from None
    if not 1 <= len(rows) <= 2:
        raise InputError("a standard tableau has one or two rows")
    return tb.StandardYoungTableau(*rows)


def _emit(obj, as_json: bool, text: str | None = None):
    if as_json or text is None:
        print(json.dumps(obj, indent=2))
    else:
        print(text)


# ---------------------------------------------------------------------------
# commands


def cmd_enumerate(args):
    a, b = _shape(args.shape)
    if args.what == "cups":
        items = cd.diagrams_for_shape(a, b)
        if args.parity:
            items = [x for x in items if x.parity == args.parity]
        names = cd.diagram_names(cd.diagrams_for_shape(a, b))
        name_of = dict(zip(map(str, cd.diagrams_for_shape(a, b)), names))
        payload = {"count": len(items),
                   "items": [dict(x.to_json(), name=name_of[str(x)], text=str(x), parity=x.parity)
                             for x in items]}
        text = "\n".join(f"{name_of[str(x)]}: {x}  [{x.parity}]" for x in items)
    elif args.what == "syt":
        items = tb.enumerate_syt((a, b))
        rows = [x.increasing() if args.increasing else (x.top, x.bottom) for x in items]
        payload = {"count": len(items), "items": [{"rows": [list(r) for r in rw]} for rw in rows]}
        text = "\n".join(" ".join(map(str, t)) + " / " + " ".join(map(str, u)) for t, u in rows)
    else:
        if args.what == "adt":
            items = tb.enumerate_adt((a, b), args.flavor)
        else:
            items = tb.enumerate_signed((a, b), args.flavor, args.parity)
        payload = {"count": len(items), "items": [x.to_json() for x in items]}
        text = "\n\n".join(str(x) for x in items)
    _emit(payload, args.json, f"{text}\ncount: {payload['count']}")
    return 0


def cmd_biject(args):
    if args.psi:
        T = _parse_syt(args.input)
        a = tb.psi(T)
        _emit(a.to_json(), args.json, str(a))
    elif args.psi_inv:
        a = cd.parse_diagram(args.input)
        T = tb.psi_inverse(a)
        _emit({"rows": [list(T.top), list(T.bottom)]}, args.json, str(T))
    elif args.Psi:
        T = tb.SignedDominoTableau.from_json(_load_json(args.input))
        a = tb.Psi(T)
        _emit(a.to_json(), args.json, str(a))
    elif args.Psi_inv:
        T = tb.Psi_inverse(cd.parse_diagram(args.input))
        _emit(T.to_json(), True)
    else:
        T = tb.SignedDominoTableau.from_json(_load_json(args.input))
        _emit(tb.d_to_c(T).to_json(), True)
    return 0


def cmd_intersect(args):
    a, b = _shape(args.shape)
    diagrams = cd.diagrams_for_shape(a, b)
    names = cd.diagram_names(diagrams)
    if args.pairs == "all":
        graph = cd.intersection_graph(diagrams, names)
        pairs = [(i, j) for i in range(len(diagrams)) for j in range(i, len(diagrams))]
    else:
        wanted = args.pairs.split(",")
        if len(wanted) != 2 or any(w not in names for w in wanted):
            raise InputError(f"--pairs needs two names among {names[0]}..{names[-1]}")
        pairs = [(names.index(wanted[0]), names.index(wanted[1]))]
        graph = None
    status = 0
    rows = []
    for i, j in pairs:
        res = cd.intersection_type(diagrams[i], diagrams[j])
        row = {"a": names[i], "b": names[j], "type": str(res)}
        if args.oracle:
            check = oracle_cross_check(diagrams[i], diagrams[j])
            row["oracle"] = {k: str(v) for k, v in check.verdicts.items()}
            row["agree"] = check.ok
            if not check.ok:
                status = 1
                print(check.report(), file=sys.stderr)
        rows.append(row)
    if args.format == "dot" and graph is not None:
        print(graph.to_dot())
    elif args.format == "json" or args.json:
        out = {"pairs": rows}
        if graph is not None:
            out["graph"] = graph.to_json()
        print(json.dumps(out, indent=2))
    else:
        for row in rows:
            extra = "" if "agree" not in row else ("  oracle agrees" if row["agree"] else "  ORACLE MISMATCH")
            print(f"{row['a']} x {row['b']}: {row['type']}{extra}")
    return status


def cmd_lift(args):
    a = cd.parse_diagram(args.diagram)
    n_minus_k, k = a.shape
    amb = sp.build_ambient(a.m, n_minus_k)
    out = []
    for lines, flag in sp.lift(a, args.samples, args.seed, amb):
        out.append({"lines": [l.to_json() for l in lines], "flag": flag.to_json()})
    print(json.dumps({"diagram": str(a), "shape": [n_minus_k, k], "seed": args.seed,
                      "samples": out}, indent=2))
    return 0


def _flag_and_shape(data, shape_arg):
    if "flag" in data:
        flag_data = data["flag"]
    elif "samples" in data:
        flag_data = data["samples"][0]["flag"]
    else:
        flag_data = data
    shape = _shape(shape_arg) if shape_arg else tuple(data.get("shape", ()))
    if len(shape) != 2:
        raise InputError("the type D shape is needed: pass --shape n-k,k")
    try:
        flag = sp.Flag.from_json(flag_data)
    except (KeyError, TypeError) as exc:
        raise InputError(f"malformed flag JSON: {exc}") from None
    return flag, shape


def cmd_spaltenstein(args):
    data = _load_json(args.flag)
    flag, (a, b) = _flag_and_shape(data, args.shape)
    form = sp.make_form(args.form, a + b, b)
    if flag.ambient_dim != form.ambient.dim:
        raise InputError(f"flag lives in dimension {flag.ambient_dim}, the form expects {form.ambient.dim}")
    if args.form == "C" and len(flag) == (a + b) // 2:
        flag = sp.pi(flag)
    res = sp.spaltenstein_data(flag, form)
    payload = dict(res.tableau.to_json(), jordan_types=[list(s) for s in res.shapes])
    _emit(payload, args.json, str(res.tableau) + "\nJordan types: " +
          ", ".join(str(s) for s in res.shapes))
    return 0


def cmd_verify(args):
    a, b = _shape(args.shape)
    diagrams = cd.diagrams_for_shape(a, b)
    total = sp.Report(f"verify ({a},{b})")
    lines = []
    for x in diagrams:
        if args.theorem in ("1", "all"):
            r = sp.verify_component(x, args.samples, args.seed)
            total.add(r)
            lines.append(r.summary())
        if args.theorem in ("2", "all") and x.parity == "odd":
            r = sp.verify_theorem2(x, args.samples, args.seed)
            total.add(r)
            lines.append(r.summary())
    if args.json:
        print(json.dumps(total.to_json(), indent=2))
    else:
        print("\n".join(lines))
        for f in total.failures:
            print(f"counterexample: {json.dumps(f.to_json())}")
        print(total.summary())
    return 0 if total.ok else 1


def render_svg(a: cd.CupDiagram, step: int = 40) -> str:
    """Cups as semicircles below a baseline, rays down to the bottom edge, dots filled."""
    depth = max([(j - i) * step / 2 for i, j, _ in a.cups] + [step / 2])
    top, width = 20, (a.m + 1) * step
    height = int(top + depth + 30)
    parts = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
             f'viewBox="0 0 {width} {height}">',
             f'<line x1="0" y1="{top}" x2="{width}" y2="{top}" stroke="#999" stroke-dasharray="4 3"/>']
    for i, j, d in a.cups:
        x1, x2 = i * step, j * step
        r = (x2 - x1) / 2
        parts.append(f'<path d="M {x1} {top} A {r} {r} 0 0 0 {x2} {top}" fill="none" stroke="black" stroke-width="2"/>')
        if d:
            parts.append(f'<circle cx="{(x1 + x2) / 2}" cy="{top + r}" r="4" fill="black"/>')
    for v, d in a.rays:
        x = v * step
        parts.append(f'<line x1="{x}" y1="{top}" x2="{x}" y2="{height}" stroke="black" stroke-width="2"/>')
        if d:
            parts.append(f'<circle cx="{x}" cy="{(top + height) / 2}" r="4" fill="black"/>')
    for v in range(1, a.m + 1):
        parts.append(f'<text x="{v * step}" y="{top - 6}" font-size="12" text-anchor="middle">{v}</text>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def cmd_render(args):
    svg = render_svg(cd.parse_diagram(args.diagram))
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(svg)
    else:
        sys.stdout.write(svg)
    return 0


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="springer-cups",
                                description="Cup diagrams, domino tableaux and two-row Springer fibers.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    sub = p.add_subparsers(dest="command", required=True)

    e = sub.add_parser("enumerate", parents=[common], help="list diagrams or tableaux of a shape")
    e.add_argument("--shape", required=True, help="two-row shape n-k,k, e.g. 5,3")
    e.add_argument("--what", choices=["cups", "syt", "adt", "signed"], default="cups")
    e.add_argument("--flavor", choices=["D", "C"], default="D")
    e.add_argument("--parity", choices=["odd", "even"])
    e.add_argument("--increasing", action="store_true", help="show tableaux in increasing convention")
    e.set_defaults(func=cmd_enumerate)

    b = sub.add_parser("biject", parents=[common], help="apply one of the bijections")
    mode = b.add_mutually_exclusive_group(required=True)
    mode.add_argument("--psi", action="store_true", help="standard tableau '5 4 3/2 1' to diagram")
    mode.add_argument("--psi-inv", action="store_true", help="undecorated diagram to standard tableau")
    mode.add_argument("--Psi", action="store_true", help="signed tableau JSON to diagram")
    mode.add_argument("--Psi-inv", dest="Psi_inv", action="store_true", help="diagram to signed tableau")
    mode.add_argument("--d-to-c", action="store_true", help="type D tableau JSON to type C")
    b.add_argument("input", help="diagram text, tableau rows, or JSON (inline, path or '-')")
    b.set_defaults(func=cmd_biject)

    i = sub.add_parser("intersect", parents=[common], help="pairwise intersections of components")
    i.add_argument("--shape", required=True)
    i.add_argument("--pairs", default="all", help="'all' or two names such as a,c")
    i.add_argument("--oracle", action="store_true", help="cross-check with the union-find oracle")
    i.add_argument("--format", choices=["table", "dot", "json"], default="table")
    i.set_defaults(func=cmd_intersect)

    l = sub.add_parser("lift", parents=[common], help="sample points of a component and lift them to flags")
    l.add_argument("--diagram", required=True)
    l.add_argument("--samples", type=_positive, default=1)
    l.add_argument("--seed", type=_seed, default=0)
    l.set_defaults(func=cmd_lift)

    s = sub.add_parser("spaltenstein", parents=[common], help="domino tableau of a flag")
    s.add_argument("--flag", required=True, help="flag JSON (inline, path or '-'); lift output accepted")
    s.add_argument("--form", choices=["D", "C"], default="D")
    s.add_argument("--shape", help="type D shape n-k,k (read from lift output if omitted)")
    s.set_defaults(func=cmd_spaltenstein)

    v = sub.add_parser("verify", parents=[common], help="check the component theorems on sampled flags")
    v.add_argument("--shape", required=True)
    v.add_argument("--theorem", choices=["1", "2", "all"], default="all")
    v.add_argument("--samples", type=_positive, default=5)
    v.add_argument("--seed", type=_seed, default=0)
    v.set_defaults(func=cmd_verify)

    r = sub.add_parser("render", parents=[common], help="draw a cup diagram as SVG")
    r.add_argument("--diagram", required=True)
    r.add_argument("--out", help="output file (default: stdout)")
    r.set_defaults(func=cmd_render)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (InputError, cd.DiagramError, tb.TableauError, sp.NotContained, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
