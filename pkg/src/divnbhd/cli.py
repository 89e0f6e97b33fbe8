"""Command line interface: ``divnbhd {analyze,enumerate,hj,dot}``."""
import argparse
import json
import sys

from .classify import ClassificationError, classify
from .enumeration import catalog_note, enumerate_normal_nss, enumerate_semistable
from .exact import DEFAULT_PELL_BOUND, hj_expand, hj_recognize
from .graph import analyze_germ
from .io import DocumentError, jsonable, load_graph, report_dict, report_text, to_dot

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


def _err(msg):
    print(f"divnbhd: error: {msg}", file=sys.stderr)


def cmd_analyze(args):
    try:
        g = load_graph(args.path)
        analysis = analyze_germ(g)
    except (DocumentError, ArithmeticError) as exc:
        _err(exc)
        return EXIT_INPUT
    except ValueError as exc:
        _err(f"unsupported germ: {exc}")
        return EXIT_INPUT
    try:
        verdict = classify(analysis, args.cls)
    except ClassificationError as exc:
        _err(f"not classifiable as {args.cls}: {exc}")
        return EXIT_FAIL
    if args.json:
        print(json.dumps(report_dict(g, analysis, verdict, source=args.path), indent=2))
    else:
        print(report_text(g, analysis, verdict))
    return EXIT_OK if verdict.passed else EXIT_FAIL


def _semistable_catalog(args):
    if args.k is None:
        raise ValueError("enumerate semistable needs --k")
    records = enumerate_semistable(args.k, args.bound)
    return {
        "kind": "semistable",
        "parameters": {"k": args.k, "bound": args.bound},
        "note": catalog_note(args.k, records, args.bound),
        "records": [
            {"n": s.n, "a": s.a, "d": s.d, "n2": s.n2, "a2": s.a2, "d2": s.d2, "pell_witness": list(s.pell_witness)}
            for s in records
        ],
    }


def _normal_catalog(args):
    germs = enumerate_normal_nss(args.max_n, args.max_d, args.max_chain)
    bounds = {"max_n": args.max_n, "max_d": args.max_d, "max_chain": args.max_chain}
    return {
        "kind": "normal",
        "parameters": bounds,
        "note": f"{'empty' if not germs else 'complete'} up to bound {bounds}",
        "records": [
            {
                "chain": list(x.chain),
                "position": x.position,
                "duval_length": x.duval_length,
                "t_decomposition": x.verdict.extras["t_decomposition"],
                "target_type": x.verdict.target_type,
            }
            for x in germs
        ],
    }


def cmd_enumerate(args):
    try:
        catalog = _semistable_catalog(args) if args.kind == "semistable" else _normal_catalog(args)
    except ValueError as exc:
        _err(exc)
        return EXIT_INPUT
    text = json.dumps(jsonable(catalog), indent=2) + "\n"
    if args.out is None:
        sys.stdout.write(text)
        return EXIT_OK
    try:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    except OSError as exc:
        _err(f"cannot write {args.out}: {exc.strerror}")
        return EXIT_INPUT
    print(f"{len(catalog['records'])} records written to {args.out} ({catalog['note']})")
    return EXIT_OK


def cmd_hj(args):
    try:
        if args.chain is not None:
            chain = [int(b) for b in args.chain.split(",")]
            n, a = hj_recognize(chain)
            print(f"{n}/{a} ⇒ 1/{n}(1,{a})")
        else:
            if args.n is None or args.a is None:
                raise ValueError("give n and a, or --chain")
            print("[" + ",".join(map(str, hj_expand(args.n, args.a))) + "]")
    except ValueError as exc:
        _err(exc)
        return EXIT_INPUT
    return EXIT_OK


def cmd_dot(args):
    try:
        g = load_graph(args.path)
    except DocumentError as exc:
        _err(exc)
        return EXIT_INPUT
    sys.stdout.write(to_dot(g))
    return EXIT_OK


def build_parser():
    p = argparse.ArgumentParser(prog="divnbhd", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", help="classify a germ given as a JSON graph document")
    a.add_argument("path")
    a.add_argument("--class", dest="cls", default="auto", choices=["auto", "normal", "nonnormal", "semistable"])
    a.add_argument("--json", action="store_true", help="machine-readable report")
    a.set_defaults(func=cmd_analyze)

    e = sub.add_parser("enumerate", help="bounded catalogues")
    e.add_argument("kind", choices=["semistable", "normal"])
    e.add_argument("--k", type=int, help="section type A_{k-1} (semistable)")
    e.add_argument("--bound", type=int, default=DEFAULT_PELL_BOUND, help="Pell |y| bound")
    e.add_argument("--max-n", type=int, default=5)
    e.add_argument("--max-d", type=int, default=4)
    e.add_argument("--max-chain", type=int, default=5)
    e.add_argument("--out", help="write the catalogue here instead of stdout")
    e.set_defaults(func=cmd_enumerate)

    h = sub.add_parser("hj", help="Hirzebruch-Jung continued fractions")
    h.add_argument("n", type=int, nargs="?")
    h.add_argument("a", type=int, nargs="?")
    h.add_argument("--chain", help="comma-separated entries, e.g. 2,5")
    h.set_defaults(func=cmd_hj)

    d = sub.add_parser("dot", help="Graphviz export")
    d.add_argument("path")
    d.set_defaults(func=cmd_dot)
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
