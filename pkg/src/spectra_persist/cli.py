"""Command-line front end.

Commands compose over pipes: every command reads "-" as standard input and
writes machine-readable text, TSV or JSON.  Exit codes: 0 success, 1 data
error (parse or validation failures, failed verification), 2 usage error.
"""
from __future__ import annotations

import argparse
import json
import random
import sys

from .complexes import FilteredChainComplex
from .errors import (ClosureError, InvalidComplexError, PageTableError,
                     ParseError, UsageError)
from .fields import field_from_text
from .ingest import (parse_complex, parse_point_cloud, parse_simplicial, rips,
                     serialize_complex, simplicial_to_chain)
from .persistence import INF, Barcode, betti, decompose
from .randomgen import random_complex
from .spectral import (PageTable, pages_direct, pages_from_barcode,
                       parse_page_table, recover_barcode, verify)

JSON_FORMAT = "spectra-persist/1"


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None


def _load_complex(args) -> FilteredChainComplex:
    field = field_from_text(args.field)
    if getattr(args, "random", None) is not None:
        rng = random.Random(args.seed)
        return random_complex(rng, args.random, field)
    if args.input is None:
        raise UsageError("an input path (or '-') is required unless --random is given")
    text = _read_text(args.input)
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            if line.split()[0] == "simp":
                return simplicial_to_chain(parse_simplicial(text), field)
            break
    return parse_complex(text, field)


def _default_r_max(args, c: FilteredChainComplex) -> int:
    if args.r_max is not None:
        if args.r_max < 1:
            raise UsageError("--r-max must be >= 1")
        return args.r_max
    return c.filtration_span + 1


def _emit(lines) -> None:
    for line in lines:
        print(line)


def _barcode_lines(b: Barcode, sep: str = " ") -> list[str]:
    out = []
    for entry, mult in b.entries():
        m = "inf" if entry.is_essential else str(entry.lifetime)
        out.append(sep.join((str(entry.degree), str(entry.birth), m, str(mult))))
    return out


def _barcode_json(b: Barcode) -> dict:
    return {
        "format": JSON_FORMAT,
        "kind": "barcode",
        "entries": [
            {"n": e.degree, "s": e.birth,
             "m": "inf" if e.is_essential else e.lifetime, "multiplicity": mult}
            for e, mult in b.entries()
        ],
    }


def _pages_json(p: PageTable) -> dict:
    return {"format": JSON_FORMAT, "kind": "pages", **p.to_json_obj()}


def cmd_barcode(args) -> int:
    c = _load_complex(args)
    _, b = decompose(c)
    if args.format == "json":
        print(json.dumps(_barcode_json(b), indent=2))
    else:
        _emit(_barcode_lines(b, "\t" if args.format == "tsv" else " "))
    return 0


def cmd_pages(args) -> int:
    c = _load_complex(args)
    r_max = _default_r_max(args, c)
    tables = {}
    if args.engine in ("barcode", "both"):
        _, b = decompose(c)
        tables["barcode"] = pages_from_barcode(b, r_max)
    if args.engine in ("direct", "both"):
        tables["direct"] = pages_direct(c, r_max)
    if args.engine != "both":
        table = tables[args.engine]
        if args.format == "json":
            print(json.dumps(_pages_json(table), indent=2))
        else:
            _emit(table.to_lines("\t" if args.format == "tsv" else " "))
        return 0
    diff = tables["barcode"].diff(tables["direct"])
    if args.format == "json":
        obj = {
            "format": JSON_FORMAT,
            "kind": "pages-both",
            "barcode_engine": tables["barcode"].to_json_obj(),
            "direct_engine": tables["direct"].to_json_obj(),
            "diff": [
                {"r": "inf" if r == INF else r, "n": n, "s": s,
                 "barcode": a, "direct": b}
                for r, n, s, a, b in diff
            ],
        }
        print(json.dumps(obj, indent=2))
    else:
        sep = "\t" if args.format == "tsv" else " "
        print("# engine: barcode")
        _emit(tables["barcode"].to_lines(sep))
        print("# engine: direct")
        _emit(tables["direct"].to_lines(sep))
        if diff:
            for r, n, s, a, b in diff:
                r_txt = "inf" if r == INF else str(r)
                print(f"DIFF: r={r_txt} n={n} s={s} barcode={a} direct={b}")
        else:
            print("DIFF: none")
    return 1 if diff else 0


def cmd_verify(args) -> int:
    c = _load_complex(args)
    r_max = _default_r_max(args, c)
    report = verify(c, r_max)
    if args.format == "json":
        obj = {
            "format": JSON_FORMAT,
            "kind": "report",
            "r_max": r_max,
            "checks": [
                {"name": ch.name, "passed": ch.passed, "detail": ch.detail}
                for ch in report.checks
            ],
        }
        print(json.dumps(obj, indent=2))
    else:
        _emit(report.lines())
    return 0 if report.all_passed else 1


def cmd_rips(args) -> int:
    if args.dist is not None and args.input is not None:
        raise UsageError("give either an input path or --dist, not both")
    path = args.dist if args.dist is not None else args.input
    if path is None:
        raise UsageError("an input path (or '-') is required")
    pc = parse_point_cloud(_read_text(path))
    fsc = rips(pc, args.max_dim, args.threshold)
    field = field_from_text(args.field)
    c = simplicial_to_chain(fsc, field)
    comments = [f"rips: {len(pc)} points, max_dim={args.max_dim}, "
                f"threshold={args.threshold}"]
    comments += [f"level {k} = {v}" for k, v in enumerate(fsc.levels)]
    sys.stdout.write(serialize_complex(c, comments))
    return 0


def cmd_recover(args) -> int:
    text = _read_text(args.input)
    stripped = text.lstrip()
    if stripped.startswith("{"):
        obj = json.loads(stripped)
        table = PageTable.from_json_obj(obj)
    else:
        table = parse_page_table(text)
    s_min = args.s_min
    if s_min is None:
        support = table.support()
        s_min = min((s for _, s in support), default=0)
    b = recover_barcode(table, s_min)
    if args.format == "json":
        print(json.dumps(_barcode_json(b), indent=2))
    else:
        _emit(_barcode_lines(b, "\t" if args.format == "tsv" else " "))
    return 0


def cmd_betti(args) -> int:
    c = _load_complex(args)
    _, b = decompose(c)
    print(betti(b, args.n, args.i, args.j))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spectra-persist",
        description="Barcodes and spectral-sequence pages of filtered chain complexes.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, with_random=False, with_rmax=False):
        p.add_argument("input", nargs="?", help="input path, or '-' for stdin")
        p.add_argument("--field", default="2",
                       help="coefficient field: a prime, or 'q' (default 2)")
        p.add_argument("--format", choices=("text", "json", "tsv"), default="text")
        if with_rmax:
            p.add_argument("--r-max", type=int, default=None,
                           help="deepest page (default: filtration span + 1)")
        if with_random:
            p.add_argument("--random", type=int, metavar="N", default=None,
                           help="generate a random N-generator complex instead of reading input")
            p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("barcode", help="interval decomposition of a complex")
    add_common(p, with_random=True)
    p.set_defaults(func=cmd_barcode)

    p = sub.add_parser("pages", help="spectral-sequence page dimensions")
    add_common(p, with_random=True, with_rmax=True)
    p.add_argument("--engine", choices=("barcode", "direct", "both"), default="barcode")
    p.set_defaults(func=cmd_pages)

    p = sub.add_parser("verify", help="run the cross-checks between the two engines")
    add_common(p, with_random=True, with_rmax=True)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("rips", help="Vietoris-Rips filtration of a point cloud")
    p.add_argument("input", nargs="?", help="point cloud path, or '-' for stdin")
    p.add_argument("--dist", default=None, metavar="PATH",
                   help="read a distance-matrix file instead")
    p.add_argument("--max-dim", type=int, default=1)
    p.add_argument("--threshold", type=float, default=None)
    p.add_argument("--field", default="2")
    p.set_defaults(func=cmd_rips)

    p = sub.add_parser("recover", help="barcode from a serialized page table")
    p.add_argument("input", help="page table path, or '-' for stdin")
    p.add_argument("--s-min", type=int, default=None,
                   help="lowest birth level (default: lowest level in the table)")
    p.add_argument("--format", choices=("text", "json", "tsv"), default="text")
    p.set_defaults(func=cmd_recover)

    p = sub.add_parser("betti", help="persistent Betti number from the barcode")
    add_common(p, with_random=True)
    p.add_argument("--n", type=int, required=True, help="homological degree")
    p.add_argument("--i", type=int, required=True, help="source level")
    p.add_argument("--j", type=int, required=True, help="target level")
    p.set_defaults(func=cmd_betti)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, ClosureError, PageTableError, InvalidComplexError,
            json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
