"""Command-line surface: exact solvers, constructors, the certificate
verifier, and the SVG renderer, wired for reproducible batch use.

Machine-readable results go to stdout as one "RESULT key=value ..." line;
human logs go to stderr.  Exit codes: 0 success / predicate holds,
2 usage error, 3 budget exhausted, 4 verification or embeddability reject,
1 internal invariant breach.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import families, solvers, svg
from .drawings import (BookDrawing, CylindricalDrawing, book_crossings,
                       cyl_crossings, format_book_text,
                       format_cylindrical_text, parse_book_text,
                       parse_cylindrical_text)
from .errors import (ConstructionError, FormatError, ParameterError,
                     SearchBudgetExceeded, ToolkitError)
from .graphs import Graph, format_graph_text, parse_graph_text
from .maps import (certificate_crossings, format_cert_text,
                   format_rotation_text, parse_cert_text,
                   parse_rotation_text, verify_certificate)

EXIT_OK = 0
EXIT_INTERNAL = 1
EXIT_USAGE = 2
EXIT_TIMEOUT = 3
EXIT_REJECT = 4


def _log(msg: str):
    print(msg, file=sys.stderr)


def _result(**kv):
    print("RESULT " + " ".join(f"{k}={v}" for k, v in kv.items()))


def _read(path: str) -> str:
    return Path(path).read_text()


def _write(path: str | None, text: str, what: str):
    if path:
        Path(path).write_text(text)
        _log(f"wrote {what} to {path}")


def _load_graph(path: str) -> Graph:
    return parse_graph_text(_read(path))


def _cmd_solve(args) -> int:
    g = _load_graph(args.graph)
    if args.mode == "book":
        res = solvers.book_crossing_number(g, args.pages, args.budget_ms)
        witness_text = format_book_text(res.witness)
    else:
        res = solvers.cylindrical_crossing_number(
            g, args.winding, args.budget_ms, workers=args.threads)
        witness_text = format_cylindrical_text(res.witness)
    _write(args.out, witness_text, "witness drawing")
    if args.cert:
        # a certificate makes the value auditable through `tcc verify`
        from .planarize import drawing_to_certificate
        cert = drawing_to_certificate(res.witness)
        _write(args.cert, format_cert_text(cert), "witness certificate")
    kv = {"value": res.value, "status": res.status, "explored": res.explored}
    if res.winding_cap_used is not None:
        kv["winding_cap"] = res.winding_cap_used
    _result(**kv)
    return EXIT_TIMEOUT if res.status == solvers.STATUS_TIMEOUT else EXIT_OK


def _cmd_embed(args) -> int:
    m = parse_rotation_text(_read(args.map))
    cert = solvers.t_curve_embeddable(m, args.t, args.budget_ms)
    if cert is None:
        _result(embeddable="no", t=args.t)
        return EXIT_REJECT
    _write(args.out, format_cert_text(cert), "curve certificate")
    _result(embeddable="yes", t=cert.t,
            crossings=certificate_crossings(cert))
    return EXIT_OK


def _cmd_verify(args) -> int:
    cert = parse_cert_text(_read(args.cert))
    g = _load_graph(args.graph)
    err = verify_certificate(g, cert, args.t, args.k)
    if err is None:
        _result(verdict="accept", crossings=certificate_crossings(cert),
                t=cert.t)
        return EXIT_OK
    _result(verdict="reject", reason=f'"{err}"')
    return EXIT_REJECT


def _cmd_construct(args) -> int:
    if args.family == "hill":
        d = families.hill_drawing(args.n)
        _write(args.out, format_cylindrical_text(d), "drawing")
        if args.svg:
            _write(args.svg, svg.render_svg(d), "svg")
        _result(crossings=cyl_crossings(d), n=args.n)
        return EXIT_OK
    if args.family == "stacked":
        tri = families.stacked_triangulation(args.index)
        _write(args.out, format_rotation_text(tri.map), "rotation map")
        _result(vertices=tri.n, round=args.index)
        return EXIT_OK
    if args.family == "gt":
        gt = families.gt_triangulation(args.t, args.budget_ms,
                                       regenerate=args.regenerate)
        _write(args.out, format_rotation_text(gt.map), "rotation map")
        _result(vertices=gt.n, t=args.t)
        return EXIT_OK
    if args.family == "reduction":
        g = _load_graph(args.graph)
        inst = families.reduction_instance(g, args.t, args.k, args.budget_ms)
        _write(args.out, format_graph_text(inst.graph), "reduction instance")
        _log("roles: " + ", ".join(inst.roles))
        if args.compose_from:
            bd = parse_book_text(_read(args.compose_from))
            cert = families.compose_reduction_drawing(bd, args.t, args.k,
                                                      args.budget_ms)
            _write(args.cert, format_cert_text(cert), "certificate")
            _result(vertices=inst.graph.n, edges=inst.graph.m,
                    crossings=certificate_crossings(cert), t=cert.t)
            return EXIT_OK
        _result(vertices=inst.graph.n, edges=inst.graph.m)
        return EXIT_OK
    raise ParameterError(f"unknown family {args.family!r}")


def _cmd_render(args) -> int:
    text = _read(args.input)
    obj = None
    for parser in (parse_cert_text, parse_cylindrical_text, parse_book_text):
        try:
            obj = parser(text)
            break
        except (FormatError, ValueError):
            continue
    if obj is None:
        raise FormatError(f"cannot recognize the format of {args.input}")
    _write(args.svg, svg.render_svg(obj), "svg")
    if isinstance(obj, CylindricalDrawing):
        _result(crossings=cyl_crossings(obj))
    elif isinstance(obj, BookDrawing):
        _result(crossings=book_crossings(obj))
    else:
        _result(crossings=certificate_crossings(obj))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="tcc",
        description="Exact cylindrical and book crossing number toolkit")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--budget-ms", type=float, default=None,
                       help="time budget in milliseconds")
        p.add_argument("--seed", type=int, default=0,
                       help="exploration seed (results are seed independent)")
        p.add_argument("--threads", type=int, default=1,
                       help="worker processes for the cylindrical search")

    p = sub.add_parser("solve", help="exact crossing number")
    p.add_argument("--mode", choices=["book", "cyl"], required=True)
    p.add_argument("--graph", required=True)
    p.add_argument("--pages", type=int, default=2)
    p.add_argument("--winding", type=int, default=2,
                   help="initial annulus winding cap")
    p.add_argument("--out", help="path for the witness drawing")
    p.add_argument("--cert", help="also write a verifiable certificate "
                   "of the witness (book mode needs at most 2 pages)")
    common(p)
    p.set_defaults(fn=_cmd_solve)

    p = sub.add_parser("embed", help="t-curve embeddability with certificate")
    p.add_argument("--map", required=True, help="rotation file")
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--out", help="path for the certificate")
    common(p)
    p.set_defaults(fn=_cmd_embed)

    p = sub.add_parser("verify", help="check a curve certificate")
    p.add_argument("--cert", required=True)
    p.add_argument("--graph", required=True)
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    common(p)
    p.set_defaults(fn=_cmd_verify)

    p = sub.add_parser("construct", help="build library objects")
    p.add_argument("--family", required=True,
                   choices=["stacked", "gt", "hill", "reduction"])
    p.add_argument("-n", type=int, default=6, help="hill: complete graph size")
    p.add_argument("-i", "--index", type=int, default=2,
                   help="stacked: round index")
    p.add_argument("--t", type=int, default=2)
    p.add_argument("--k", type=int, default=0)
    p.add_argument("--graph", help="reduction: input graph file")
    p.add_argument("--compose-from",
                   help="reduction: 0-crossing 2-page drawing to compose")
    p.add_argument("--cert", help="reduction: output certificate path")
    p.add_argument("--regenerate", action="store_true",
                   help="gt: rebuild the cached gadget")
    p.add_argument("--out", help="output artifact path")
    p.add_argument("--svg", help="also render to this svg path")
    common(p)
    p.set_defaults(fn=_cmd_construct)

    p = sub.add_parser("render", help="render a drawing or certificate")
    p.add_argument("--input", required=True)
    p.add_argument("--svg", required=True)
    common(p)
    p.set_defaults(fn=_cmd_render)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        return args.fn(args)
    except SearchBudgetExceeded as exc:
        _log(f"budget exhausted: {exc}")
        _result(status="timeout")
        return EXIT_TIMEOUT
    except (ParameterError, FormatError, FileNotFoundError) as exc:
        _log(f"usage error: {exc}")
        return EXIT_USAGE
    except ConstructionError as exc:
        _log(f"internal invariant breach: {exc}")
        return EXIT_INTERNAL
    except ToolkitError as exc:
        _log(f"error: {exc}")
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
