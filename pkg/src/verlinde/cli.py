"""Command-line front end.

Exit codes: 0 success, 1 usage or invalid input, 2 the computed result does
not match the expected pattern, 3 resource limits (including windows that
are too small).
"""

from __future__ import annotations

import argparse
import json
import sys
import warnings
from typing import Sequence

from .affine import StarContext, make_face
from .cache import SCHEMA_VERSION, ResultCache, resolve_cache_dir
from .chain import (
    DEFAULT_MAX_BLOCK,
    ChainElement,
    Truncation,
    differential,
    homology_snf,
    reduce_cycle,
)
from .errors import InvalidTypeError, LabelError, NotACycleError, ResourceLimitError
from .fusion import FusionTable, build_fusion_table, format_label, fusion_product, parse_label
from .rootdata import build_root_system

EXIT_OK, EXIT_USAGE, EXIT_MISMATCH, EXIT_RESOURCE = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _lie(text: str):
    try:
        return build_root_system(text)
    except InvalidTypeError as exc:
        raise UsageError(str(exc)) from None


def _level(text: str) -> int:
    k = int(text)
    if k < 0:
        raise argparse.ArgumentTypeError("level must be non-negative")
    return k


def _nonneg(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return v


def _label(text: str):
    try:
        return parse_label(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad label {text!r}; use comma-separated Dynkin labels") from None


def _dump(doc) -> str:
    return json.dumps(doc, sort_keys=False, ensure_ascii=False) + "\n"


def _cache(args) -> ResultCache | None:
    if args.no_cache:
        return None
    return ResultCache(resolve_cache_dir(args.cache_dir))


# -- commands ----------------------------------------------------------------

def cmd_info(args, out) -> int:
    rs = _lie(args.type)
    doc = {
        "type": rs.name,
        "rank": rs.rank,
        "cartan": [list(row) for row in rs.cartan],
        "rho": list(rs.rho),
        "highest_root": list(rs.highest_root),
        "marks": list(rs.marks),
        "comarks": list(rs.comarks),
        "dual_coxeter": rs.dual_coxeter,
        "weyl_order": rs.weyl_order,
    }
    if args.format == "json":
        out.write(_dump(doc))
        return EXIT_OK
    out.write(f"type {rs.name} (rank {rs.rank})\n")
    out.write("Cartan matrix:\n")
    for row in rs.cartan:
        out.write("  " + " ".join(f"{v:>2d}" for v in row) + "\n")
    out.write(f"rho = {format_label(rs.rho)}\n")
    out.write(f"theta = {format_label(rs.highest_root)}\n")
    out.write(f"comarks = {format_label(rs.comarks)}\n")
    out.write(f"h^vee = {rs.dual_coxeter}\n")
    out.write(f"|W| = {rs.weyl_order}\n")
    return EXIT_OK


def cmd_fusion(args, out) -> int:
    ctx = StarContext(_lie(args.type), args.k)
    product = fusion_product(ctx, args.lam, args.mu)
    if args.format == "json":
        out.write(_dump({format_label(nu): n for nu, n in product.items()}))
    else:
        out.write(" ".join(f"{format_label(nu)}:{n}" for nu, n in product.items()) + "\n")
    return EXIT_OK


def _fusion_table_json(ctx: StarContext, cache: ResultCache | None) -> str:
    if cache is None:
        return build_fusion_table(ctx).to_json()
    path = cache.path_for("fusion", ctx.rs.name, ctx.k)
    text = cache.load(path)
    if text is not None:
        try:
            FusionTable.from_json(text)
            return text
        except (KeyError, ValueError, TypeError) as exc:
            warnings.warn(f"ignoring malformed cache entry {path}: {exc}", RuntimeWarning)
    text = build_fusion_table(ctx).to_json()
    cache.store(path, text)
    return text


def cmd_fusion_table(args, out) -> int:
    ctx = StarContext(_lie(args.type), args.k)
    text = _fusion_table_json(ctx, _cache(args))
    if args.format == "json":
        out.write(text)
        return EXIT_OK
    table = FusionTable.from_json(text)
    if args.format == "csv":
        out.write(table.to_csv())
        return EXIT_OK
    for a in table.labels:
        for b in table.labels:
            if a <= b:
                prod = " ".join(f"{format_label(nu)}:{n}" for nu, n in table.products[a, b].items())
                out.write(f"({format_label(a)}) x ({format_label(b)}) = {prod}\n")
    return EXIT_OK


def _homology_json(ctx, trunc, max_block, cache) -> str:
    path = None
    if cache is not None:
        path = cache.path_for("homology", ctx.rs.name, ctx.k, trunc.L,
                              extra=f"margin={trunc.margin};block={max_block}")
        text = cache.load(path)
        if text is not None:
            doc = json.loads(text)
            if isinstance(doc, dict) and "degrees" in doc and "pass" in doc:
                return text
            warnings.warn(f"ignoring malformed cache entry {path}", RuntimeWarning)
    text = _dump(homology_snf(ctx, trunc, max_block=max_block).to_dict())
    if cache is not None:
        cache.store(path, text)
    return text


def cmd_homology(args, out) -> int:
    ctx = StarContext(_lie(args.type), args.k)
    trunc = Truncation(args.trunc, args.margin)
    text = _homology_json(ctx, trunc, args.max_block, _cache(args))
    doc = json.loads(text)
    if args.format == "json":
        out.write(text)
    else:
        out.write(f"{doc['type']} level {doc['level']}, L = {doc['trunc']}, "
                  f"inner window L - {doc['margin']}\n")
        for d in doc["degrees"]:
            tors = ",".join(map(str, d["torsion"])) or "none"
            out.write(f"degree {d['degree']}: rank {d['rank']} (basis {d['basis']}, "
                      f"full window {d['full_rank']}), torsion {tors}\n")
        out.write(f"expected degree-0 rank {doc['expected_degree0']}: "
                  f"{'PASS' if doc['pass'] else 'FAIL'}\n")
    return EXIT_OK if doc["pass"] else EXIT_MISMATCH


def _parse_word(text: str) -> tuple[int, ...]:
    text = text.strip()
    if text in ("", "e", "id"):
        return ()
    return tuple(int(v) for v in text.split(","))


def _parse_term(text: str, rank: int):
    parts = text.split(":")
    if len(parts) not in (2, 3):
        raise UsageError(f"bad term {text!r}; expected FACE:WEIGHT[:COEF]")
    try:
        face = make_face((int(v) for v in parts[0].split(",")), rank)
        lam = parse_label(parts[1])
        coef = int(parts[2]) if len(parts) == 3 else 1
    except ValueError as exc:
        raise UsageError(f"bad term {text!r}: {exc}") from None
    if len(lam) != rank:
        raise UsageError(f"weight {parts[1]!r} needs {rank} labels")
    return face, lam, coef


def chain_to_json(x: ChainElement) -> list:
    return [{"face": list(face), "weight": list(lam), "coef": c} for (face, lam), c in x.items()]


def _chain_text(x: ChainElement) -> str:
    if not x:
        return "0"
    return " ".join(f"{c:+d}*Sk{{{','.join(map(str, face))}}}({format_label(lam)})"
                    for (face, lam), c in x.items())


def cmd_reduce(args, out) -> int:
    ctx = StarContext(_lie(args.type), args.k)
    terms = [_parse_term(t, ctx.rank) for t in args.term]
    x = ChainElement.from_terms(ctx, terms)
    targets = []
    for t in args.target or ():
        try:
            word = _parse_word(t)
        except ValueError:
            raise UsageError(f"bad target word {t!r}") from None
        if any(not 0 <= i <= ctx.rank for i in word):
            raise UsageError(f"target word {t!r} uses generators outside 0..{ctx.rank}")
        targets.append(word)
    steps = [] if args.trace else None
    try:
        canonical, witness = reduce_cycle(ctx, x, targets, steps=steps, normalize=not args.keep_faces)
    except NotACycleError as exc:
        sys.stderr.write(f"error: input is not a cycle; d(x) = {_chain_text(exc.residual)}\n")
        return EXIT_USAGE
    if args.format == "json":
        doc = {"input": chain_to_json(x), "canonical": chain_to_json(canonical),
               "witness": chain_to_json(witness.z)}
        if steps is not None:
            doc["trace"] = [s._asdict() for s in steps]
        out.write(_dump(doc))
        return EXIT_OK
    if steps is not None:
        for s in steps:
            out.write(f"peel Sk{{{','.join(map(str, s.face))}}}({format_label(s.weight)}) "
                      f"coef {s.coefficient} length {s.length}: generator s{s.generator}, "
                      f"face -> {{{','.join(map(str, s.enlarged))}}}, sign {s.sign:+d}\n")
    out.write(f"input:     {_chain_text(x)}\n")
    out.write(f"canonical: {_chain_text(canonical)}\n")
    out.write(f"witness:   {_chain_text(witness.z)}\n")
    return EXIT_OK


# -- entry point -------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="verlinde", description="Level-k Verlinde ring computations.")
    parser.add_argument("--cache-dir", help="cache directory (default: $VERLINDE_CACHE_DIR or ~/.cache/verlinde)")
    parser.add_argument("--no-cache", action="store_true", help="neither read nor write the cache")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("info", help="root data of a simple type")
    p.add_argument("type")
    p.add_argument("--format", choices=("plain", "json"), default="plain")
    p.set_defaults(func=cmd_info)

    p = sub.add_parser("fusion", help="one fusion product")
    p.add_argument("type")
    p.add_argument("k", type=_level)
    p.add_argument("lam", type=_label)
    p.add_argument("mu", type=_label)
    p.add_argument("--format", choices=("plain", "json"), default="plain")
    p.set_defaults(func=cmd_fusion)

    p = sub.add_parser("fusion-table", help="full fusion table")
    p.add_argument("type")
    p.add_argument("k", type=_level)
    p.add_argument("--format", choices=("plain", "json", "csv"), default="plain")
    p.set_defaults(func=cmd_fusion_table)

    p = sub.add_parser("homology", help="homology of the truncated complex")
    p.add_argument("type")
    p.add_argument("k", type=_level)
    p.add_argument("--trunc", type=_nonneg, required=True, metavar="L")
    p.add_argument("--margin", type=_nonneg, default=None)
    p.add_argument("--max-block", type=int, default=DEFAULT_MAX_BLOCK)
    p.add_argument("--format", choices=("plain", "json"), default="plain")
    p.set_defaults(func=cmd_homology)

    p = sub.add_parser("reduce", help="reduce a cycle onto target alcoves")
    p.add_argument("type")
    p.add_argument("k", type=_level)
    p.add_argument("--term", action="append", required=True, metavar="FACE:WEIGHT[:COEF]",
                   help="e.g. 0,1:3:-1 for -Sk_{0,1}(3); repeatable")
    p.add_argument("--target", action="append", metavar="WORD",
                   help="affine word such as 0,1 (e for the fundamental alcove); repeatable")
    p.add_argument("--trace", action="store_true")
    p.add_argument("--keep-faces", action="store_true",
                   help="leave degree-0 survivors on whichever singleton face they reach")
    p.add_argument("--format", choices=("plain", "json"), default="plain")
    p.set_defaults(func=cmd_reduce)
    return parser


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args, out)
    except (UsageError, LabelError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE
    except ResourceLimitError as exc:
        hint = getattr(exc, "suggested", None)
        extra = f" (try --trunc {hint})" if hint is not None and "truncation" in str(exc) else ""
        sys.stderr.write(f"insufficient resources: {exc}{extra}\n")
        return EXIT_RESOURCE
    except ValueError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
