"""Command-line front end: file grammars, reports, and the self-test harness.

Presentation files are line oriented: a `char <n>` header, then one
`<kind> <name> <degree>` line per cogenerator, `#` comments anywhere.  E2
files use `<kind> <name> <s> <t>` lines instead.  Report bodies are
deterministic (byte-identical for identical inputs); timing goes to stderr.

Exit codes: 0 success, 1 invariant failure, 2 input error.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from . import __version__
from .coalg import (
    KINDS,
    CoalgebraPresentation,
    Cogenerator,
    NotConnected,
    ParityViolation,
    UnknownCogenerator,
)
from .cochain import (
    BidegreeWindow,
    DifferentialNotSquareZero,
    WindowTooSmall,
    build_complex,
)
from .cohomology import (
    BigradedTable,
    cohh_table,
    euler_check,
    identify_presentation,
    table_to_csv,
    table_to_json_dict,
)
from .collapse import E2Generator, E2Presentation, WrongShape, analyze
from .exactfield import CompositeCharacteristic, Field, ImageNotInKernel
from .hopfstruct import AlgebraPresentation, indecomposables, primitives
from .torpipe import hz_e2_pipeline
from . import selftest as selftest_mod

TOOL_LINE = f"# tool: cohh {__version__}"
INPUT_ERRORS = (
    CompositeCharacteristic,
    NotConnected,
    ParityViolation,
    UnknownCogenerator,
    WrongShape,
    WindowTooSmall,
    FileNotFoundError,
    IsADirectoryError,
)
INVARIANT_ERRORS = (DifferentialNotSquareZero, ImageNotInKernel, AssertionError)


class ParseError(ValueError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


def _tokenize(text: str):
    """Yield (line_number, [(column, token), ...]) for meaningful lines."""
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        tokens = []
        col = 0
        for tok in line.split():
            col = line.index(tok, col)
            tokens.append((col + 1, tok))
            col += len(tok)
        if tokens:
            yield lineno, tokens


def _parse_header_and_lines(text: str):
    lines = list(_tokenize(text))
    if not lines:
        return 0, []
    lineno, tokens = lines[0]
    if tokens[0][1] != "char":
        raise ParseError("expected `char <n>` header", lineno, tokens[0][0])
    if len(tokens) != 2:
        raise ParseError("header must be exactly `char <n>`", lineno, tokens[-1][0])
    col, value = tokens[1]
    try:
        characteristic = int(value)
    except ValueError:
        raise ParseError(f"characteristic {value!r} is not an integer", lineno, col)
    return characteristic, lines[1:]


def _int_token(tokens, idx, what, lineno):
    col, value = tokens[idx]
    try:
        return int(value)
    except ValueError:
        raise ParseError(f"{what} {value!r} is not an integer", lineno, col)


def parse_presentation(text: str, override_char=None) -> CoalgebraPresentation:
    characteristic, lines = _parse_header_and_lines(text)
    if override_char is not None:
        characteristic = override_char
    cogens = []
    for lineno, tokens in lines:
        if len(tokens) != 3:
            raise ParseError(
                "expected `<kind> <name> <degree>`", lineno, tokens[0][0]
            )
        kind = tokens[0][1]
        if kind not in KINDS:
            raise ParseError(
                f"unknown kind {kind!r} (expected one of {', '.join(KINDS)})",
                lineno, tokens[0][0],
            )
        name = tokens[1][1]
        degree = _int_token(tokens, 2, "degree", lineno)
        cogens.append(Cogenerator(name, kind, degree))
    return CoalgebraPresentation(Field(characteristic), cogens)


def format_presentation(C: CoalgebraPresentation) -> str:
    lines = [f"char {C.field.characteristic}"]
    for cog in C.cogenerators:
        lines.append(f"{cog.kind} {cog.name} {cog.degree}")
    return "\n".join(lines) + "\n"


def parse_e2(text: str, override_char=None) -> E2Presentation:
    characteristic, lines = _parse_header_and_lines(text)
    if override_char is not None:
        characteristic = override_char
    gens = []
    for lineno, tokens in lines:
        if len(tokens) != 4:
            raise ParseError("expected `<kind> <name> <s> <t>`", lineno, tokens[0][0])
        kind = tokens[0][1]
        if kind not in KINDS:
            raise ParseError(
                f"unknown kind {kind!r} (expected one of {', '.join(KINDS)})",
                lineno, tokens[0][0],
            )
        name = tokens[1][1]
        s = _int_token(tokens, 2, "column", lineno)
        t = _int_token(tokens, 3, "internal degree", lineno)
        gens.append(E2Generator(name, kind, s, t))
    return E2Presentation(characteristic, gens)


def format_e2(e2: E2Presentation) -> str:
    lines = [f"char {e2.characteristic}"]
    for g in e2.generators:
        lines.append(f"{g.kind} {g.name} {g.s} {g.t}")
    return "\n".join(lines) + "\n"


# -- report rendering ---------------------------------------------------------


def render_grid(table: BigradedTable) -> str:
    w = table.window
    width = max(2, *(len(str(v)) for v in table.entries.values()), len(str(w.max_s)))
    header = "# t\\s " + " ".join(f"{s:>{width}}" for s in range(w.max_s + 1))
    lines = [header]
    for t in range(w.max_t, -1, -1):
        cells = " ".join(
            f"{table.dim(s, t) or '.':>{width}}" for s in range(w.max_s + 1)
        )
        lines.append(f"{t:>5} {cells}")
    return "\n".join(lines)


def render_cohh_report(C, window, table, ident, euler, fmt: str) -> str:
    if fmt == "csv":
        return table_to_csv(table)
    ident_str = ident.describe() if ident is not None else "unrecognized"
    if fmt == "json":
        data = table_to_json_dict(table)
        data.update(
            {
                "kind": "cohh_report",
                "tool": f"cohh {__version__}",
                "characteristic": C.field.characteristic,
                "presentation": format_presentation(C).splitlines(),
                "identification": ident_str,
                "checks": {
                    "d_squared": "ok",
                    "euler": euler.describe(),
                },
            }
        )
        return json.dumps(data, indent=2, ensure_ascii=False, sort_keys=True) + "\n"
    lines = [
        "# cohh report",
        TOOL_LINE,
        f"# characteristic: {C.field.characteristic}",
        f"# window: max_s={window.max_s} max_t={window.max_t}",
        "# presentation:",
    ]
    lines += [f"#   {ln}" for ln in format_presentation(C).splitlines()]
    lines += [
        "# checks: d_squared=ok"
        f" euler={'pass' if euler.passed else 'FAIL t=' + str(euler.first_violation)}",
        f"# identification: {ident_str}",
        render_grid(table),
    ]
    return "\n".join(lines) + "\n"


def render_collapse_report(e2, cert, fmt: str) -> str:
    if fmt == "json":
        data = cert.to_json_dict(e2)
        data["tool"] = f"cohh {__version__}"
        data["presentation"] = format_e2(e2).splitlines()
        return json.dumps(data, indent=2, ensure_ascii=False, sort_keys=True) + "\n"
    lines = [
        "# collapse certificate",
        TOOL_LINE,
        f"# characteristic: {e2.characteristic}",
        f"# shape: {cert.shape}",
        f"# search bounds: max_t={cert.max_t} max_page={cert.max_page_searched}",
    ]
    if cert.hypothesis_checks:
        lines.append("# hypothesis checks:")
        for name, ok in sorted(cert.hypothesis_checks.items()):
            lines.append(f"#   {name}: {'pass' if ok else 'FAIL'}")
    lines.append(f"verdict: {cert.verdict}")
    if cert.obstructions:
        lines.append("obstructions:")
        for o in cert.obstructions:
            lines.append(f"  {o.describe(e2)}")
    if cert.argument:
        lines.append(f"# argument: {cert.argument}")
    if cert.verdict == "collapses":
        from .collapse import CONVERGENCE_NOTE

        lines.append(f"# note: {CONVERGENCE_NOTE}")
    lines.append("# caveats:")
    for c in cert.caveats:
        lines.append(f"#   - {c}")
    return "\n".join(lines) + "\n"


def _emit(text: str, out_path):
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# -- commands -----------------------------------------------------------------


def cmd_cohh(args) -> int:
    with open(args.file, encoding="utf-8") as fh:
        C = parse_presentation(fh.read(), args.char)
    window = BidegreeWindow(args.max_s, args.max_t)
    cx = build_complex(C, window)
    table = cohh_table(cx)
    euler = euler_check(cx, table)
    ident = identify_presentation(table)
    _emit(render_cohh_report(C, window, table, ident, euler, args.format), args.out)
    return 0 if euler.passed else 1


def cmd_collapse(args) -> int:
    with open(args.file, encoding="utf-8") as fh:
        e2 = parse_e2(fh.read(), args.char)
    cert = analyze(e2, args.max_t)
    _emit(render_collapse_report(e2, cert, args.format), args.out)
    return 0


def cmd_hz(args) -> int:
    window = BidegreeWindow(args.max_s, args.max_t)
    result = hz_e2_pipeline(args.char, window)
    if args.format == "csv":
        _emit(table_to_csv(result.table), args.out)
        return 0
    if args.format == "json":
        data = table_to_json_dict(result.table)
        data.update(
            {
                "kind": "hz_report",
                "tool": f"cohh {__version__}",
                "characteristic": result.characteristic,
                "tor_dims": result.tor_dims[:5],
                "identification": result.description,
            }
        )
        _emit(json.dumps(data, indent=2, ensure_ascii=False, sort_keys=True) + "\n",
              args.out)
        return 0
    lines = [
        "# hz pipeline report",
        TOOL_LINE,
        f"# characteristic: {result.characteristic}",
        f"# tor dims (degrees 0..4): {result.tor_dims[:5]}",
        f"# identification: {result.description}",
        render_grid(result.table),
    ]
    _emit("\n".join(lines) + "\n", args.out)
    return 0


def cmd_primitives(args) -> int:
    with open(args.file, encoding="utf-8") as fh:
        C = parse_presentation(fh.read(), args.char)
    prims = primitives(C, args.max_t)
    lines = [
        "# primitives report",
        TOOL_LINE,
        f"# characteristic: {C.field.characteristic}",
        f"# max internal degree: {args.max_t}",
    ]
    for t, elems in sorted(prims.formatted(C).items()):
        lines.append(f"t={t}: " + "; ".join(elems))
    _emit("\n".join(lines) + "\n", args.out)
    return 0


def cmd_indecomposables(args) -> int:
    with open(args.file, encoding="utf-8") as fh:
        C = parse_presentation(fh.read(), args.char)
    A = AlgebraPresentation(C.field, C.cogenerators)
    inde = indecomposables(A, args.max_t)
    lines = [
        "# indecomposables report",
        TOOL_LINE,
        f"# characteristic: {A.field.characteristic}",
        f"# max internal degree: {args.max_t}",
    ]
    for t, elems in sorted(inde.formatted(A).items()):
        lines.append(f"t={t}: " + "; ".join(elems))
    _emit("\n".join(lines) + "\n", args.out)
    return 0


def cmd_selftest(args) -> int:
    results = selftest_mod.run_selftest(corrupt_twist=args.corrupt_twist)
    lines = ["# selftest report", TOOL_LINE]
    failures = 0
    for res in results:
        status = "PASS" if res.passed else "FAIL"
        failures += 0 if res.passed else 1
        detail = f" ({res.detail})" if res.detail else ""
        lines.append(f"{status} {res.name}{detail}")
    lines.append(f"# total: {len(results)} checks, {failures} failed")
    _emit("\n".join(lines) + "\n", args.out)
    return 1 if failures else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cohh",
        description=(
            "Exact coHochschild homology tables and spectral-sequence collapse "
            "certificates for graded coalgebras over a field."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, window=(6, 24), with_file=True):
        if with_file:
            p.add_argument("file", help="input presentation file")
        p.add_argument("--max-s", type=int, default=window[0])
        p.add_argument("--max-t", type=int, default=window[1])
        p.add_argument("--char", type=int, default=None,
                       help="override the characteristic header")
        p.add_argument("--format", choices=("table", "csv", "json"), default="table")
        p.add_argument("--out", default=None, help="write the report to this path")

    p = sub.add_parser("cohh", help="bigraded coHH table of a coalgebra presentation")
    common(p)
    p.set_defaults(func=cmd_cohh)

    p = sub.add_parser("collapse", help="collapse certificate for an E2 presentation")
    p.add_argument("file")
    p.add_argument("--max-t", type=int, default=40)
    p.add_argument("--char", type=int, default=None)
    p.add_argument("--format", choices=("table", "json"), default="table")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_collapse)

    p = sub.add_parser("hz", help="Tor pipeline table at a prime")
    p.add_argument("--char", type=int, required=True)
    p.add_argument("--max-s", type=int, default=3)
    p.add_argument("--max-t", type=int, default=6)
    p.add_argument("--format", choices=("table", "csv", "json"), default="table")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_hz)

    p = sub.add_parser("primitives", help="primitive elements per internal degree")
    p.add_argument("file")
    p.add_argument("--max-t", type=int, default=24)
    p.add_argument("--char", type=int, default=None)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_primitives)

    p = sub.add_parser(
        "indecomposables", help="indecomposable elements per internal degree"
    )
    p.add_argument("file")
    p.add_argument("--max-t", type=int, default=24)
    p.add_argument("--char", type=int, default=None)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_indecomposables)

    p = sub.add_parser("selftest", help="run the full acceptance suite")
    p.add_argument("--corrupt-twist", action="store_true", help=argparse.SUPPRESS)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_selftest)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    start = time.perf_counter()
    try:
        code = args.func(args)
    except INVARIANT_ERRORS as exc:
        print(f"invariant failure: {exc}", file=sys.stderr)
        return 1
    except (ParseError, *INPUT_ERRORS) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2
    print(f"# elapsed_seconds: {time.perf_counter() - start:.3f}", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
