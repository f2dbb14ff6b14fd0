"""Command line interface.

Every subcommand writes one deterministic report to stdout (JSON by default,
a plain-text rendering with --format text); all diagnostics and timings go
to stderr so report bytes are reproducible run to run.

Exit codes: 0 success, 1 usage, 2 input parse or validation failure,
3 classification mismatch.
"""

from __future__ import annotations

import argparse
import dataclasses
import hashlib
import json
import random
import sys
import time
from fractions import Fraction

from .core import Lattice, LatticeError, is_positive_definite
from .enumeration import box_enumerate
from .pairs import FeasibilityReport, PairSpec, TypeIVSolution, analyze_screener
from .recognition import (
    ClassificationError,
    NoScreener,
    NotGeneratedError,
    WARN_2B_ODD,
    catalog,
    identify_extended_type,
    rank2_normal_form,
    rank2_predicted_in_lattice,
    rank2_screener_list,
    recognize_components,
    reduce_screener_basis,
    _screener_basis,
)
from .screeners import all_screeners, is_screener

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INPUT = 2
EXIT_MISMATCH = 3


class UsageError(Exception):
    pass


class ParseFailure(Exception):
    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        loc = f" (line {line}, column {column})" if line is not None else ""
        super().__init__(message + loc)


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # route argparse failures to exit code 1
        raise UsageError(message)


def parse_lattice(text: str) -> tuple[Lattice, str | None]:
    """Read a Gram matrix from JSON ({"gram": [[...]], "name"?, "scale"?})
    or from a plain whitespace-separated d*d integer block."""
    stripped = text.lstrip()
    if stripped.startswith("{"):
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as e:
            raise ParseFailure(f"invalid JSON: {e.msg}", e.lineno, e.colno)
        if not isinstance(doc, dict) or "gram" not in doc:
            raise ParseFailure("JSON input must be an object with a 'gram' key")
        gram = doc["gram"]
        if not isinstance(gram, list) or not all(isinstance(r, list) for r in gram):
            raise ParseFailure("'gram' must be a list of rows")
        for i, row in enumerate(gram):
            for j, v in enumerate(row):
                if isinstance(v, bool) or not isinstance(v, int):
                    raise ParseFailure(f"gram[{i}][{j}] = {v!r} is not an integer")
        name = doc.get("name")
        if name is not None and not isinstance(name, str):
            raise ParseFailure("'name' must be a string")
        scale = doc.get("scale", 1)
        if isinstance(scale, bool) or not isinstance(scale, int) or scale < 1:
            raise ParseFailure("'scale' must be a positive integer")
        rows = [[scale * v for v in row] for row in gram]
        return Lattice(rows), name
    # plain block: track line/column of the first bad token
    tokens: list[int] = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        col = 1
        for tok in line.split():
            col = line.index(tok, col - 1) + 1
            try:
                tokens.append(int(tok))
            except ValueError:
                raise ParseFailure(f"token {tok!r} is not an integer", lineno, col)
            col += len(tok)
    if not tokens:
        raise ParseFailure("empty input")
    d = int(round(len(tokens) ** 0.5))
    if d * d != len(tokens):
        raise ParseFailure(f"{len(tokens)} values do not form a square matrix")
    rows = [tokens[i * d:(i + 1) * d] for i in range(d)]
    return Lattice(rows), None


def _read_input(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return fh.read()
    except OSError as e:
        raise ParseFailure(f"cannot read {path}: {e.strerror}")


def _digest(text: str) -> str:
    return "sha256:" + hashlib.sha256(text.encode("utf-8")).hexdigest()


def _jsonable(obj):
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, Lattice):
        return [list(r) for r in obj.gram]
    if isinstance(obj, (PairSpec, FeasibilityReport, TypeIVSolution)):
        return {k: _jsonable(v) for k, v in dataclasses.asdict(obj).items()}
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    return obj


def _report(command: str, options: dict, results: dict, warnings: list[dict], inp: dict | None = None) -> dict:
    rep = {
        "command": command,
        "options": _jsonable(options),
        "results": _jsonable(results),
        "warnings": warnings,
    }
    if inp is not None:
        rep["input"] = inp
    return rep


def _emit(report: dict, fmt: str, text_renderer) -> None:
    if fmt == "json":
        sys.stdout.write(json.dumps(report, indent=2, sort_keys=True) + "\n")
    else:
        sys.stdout.write(text_renderer(report))


def _input_block(text: str, lat: Lattice, name: str | None) -> dict:
    return {
        "digest": _digest(text),
        "name": name,
        "rank": lat.rank,
        "determinant": lat.determinant,
    }


def _vec(v) -> str:
    return "(" + ", ".join(str(t) for t in v) + ")"


def cmd_screeners(args) -> int:
    text = _read_input(args.input)
    lat, name = parse_lattice(text)
    sset = all_screeners(lat)
    min_norm = sset.min_norm
    rows = [
        {"coords": list(v), "norm": n, "nonroot": bool(min_norm is not None and n > min_norm)}
        for v, n in zip(sset.vectors, sset.norms)
    ]
    results = {
        "bound": 2 * lat.determinant,
        "count": len(sset),
        "total_count": sset.total_count,
        "min_norm": min_norm,
        "screeners": rows,
    }
    rep = _report("screeners", {"format": args.format}, results,
                  [], _input_block(text, lat, name))

    def render(r):
        lines = [f"screeners of {r['input']['name'] or 'lattice'} "
                 f"(rank {r['input']['rank']}, det {r['input']['determinant']})"]
        lines.append(f"searched norms <= {r['results']['bound']}")
        lines.append(f"{r['results']['count']} canonical, {r['results']['total_count']} with signs")
        for row in r["results"]["screeners"]:
            flag = "  nonroot" if row["nonroot"] else ""
            lines.append(f"  {_vec(row['coords'])} norm {row['norm']}{flag}")
        return "\n".join(lines) + "\n"

    _emit(rep, args.format, render)
    return EXIT_OK


def cmd_decompose(args) -> int:
    text = _read_input(args.input)
    lat, name = parse_lattice(text)
    sset = all_screeners(lat)
    basis = _screener_basis(lat, sset)
    reduced = reduce_screener_basis(lat, basis)
    comps = recognize_components(lat, reduced)
    results = {
        "screener_basis": [list(v) for v in basis],
        "reduced_basis": [{"coords": list(v), "norm": lat.norm(v)} for v in reduced],
        "components": [
            {
                "type": c.kind,
                "n": c.n,
                "label": c.label,
                "scale": c.scale,
                "root_count": c.root_count,
                "basis": [list(v) for v in c.basis],
            }
            for c in comps
        ],
    }
    rep = _report("decompose", {"format": args.format}, results, [],
                  _input_block(text, lat, name))

    def render(r):
        lines = [f"decomposition (rank {r['input']['rank']}, det {r['input']['determinant']})"]
        lines.append("reduced basis:")
        for row in r["results"]["reduced_basis"]:
            lines.append(f"  {_vec(row['coords'])} norm {row['norm']}")
        lines.append("components:")
        for c in r["results"]["components"]:
            lines.append(f"  {c['label']} scale {c['scale']} roots {c['root_count']}")
        return "\n".join(lines) + "\n"

    _emit(rep, args.format, render)
    return EXIT_OK


def cmd_classify(args) -> int:
    text = _read_input(args.input)
    lat, name = parse_lattice(text)
    groups, sset = identify_extended_type(lat)
    results = {
        "screener_count": sset.total_count,
        "groups": [
            {
                "extended_type": g.label,
                "name": g.name,
                "n": g.n,
                "scale": g.scale,
                "expected_count": g.expected_count,
                "actual_count": g.actual_count,
                "components": [c.label for c in g.components],
            }
            for g in groups
        ],
    }
    rep = _report("classify", {"format": args.format}, results, [],
                  _input_block(text, lat, name))

    def render(r):
        lines = [f"classification (rank {r['input']['rank']}, det {r['input']['determinant']})"]
        for g in r["results"]["groups"]:
            lines.append(
                f"  {g['extended_type']} scale {g['scale']}: "
                f"{g['actual_count']} screeners (expected {g['expected_count']})"
            )
        lines.append(f"total screeners {r['results']['screener_count']}")
        return "\n".join(lines) + "\n"

    _emit(rep, args.format, render)
    return EXIT_OK


def cmd_rank2(args) -> int:
    text = _read_input(args.input)
    lat, name = parse_lattice(text)
    form = rank2_normal_form(lat)
    warnings = []
    if isinstance(form, NoScreener):
        results = {"kind": "no-screener"}
    else:
        predicted = rank2_predicted_in_lattice(form)
        actual = all_screeners(lat).vectors
        agrees = set(predicted) == set(actual)
        for w in form.warnings:
            warnings.append({
                "code": w,
                "message": "type 2b normal form with odd scale: the nominal "
                           "screener list overcounts; definition-level screeners win",
            })
        if not agrees and not form.warnings:
            raise ClassificationError(
                f"normal-form screener list {sorted(predicted)} disagrees with "
                f"the actual set {sorted(actual)}"
            )
        results = {
            "kind": form.kind,
            "p": form.p,
            "m": form.m,
            "subtype": form.subtype,
            "normal_form_gram": form.gram,
            "basis_change_columns": [list(c) for c in zip(*form.basis_change)],
            "predicted_normal_form_coords": [list(v) for v in rank2_screener_list(form)],
            "predicted": [list(v) for v in predicted],
            "actual": [list(v) for v in actual],
            "agrees": agrees,
        }
    rep = _report("rank2", {"format": args.format}, results, warnings,
                  _input_block(text, lat, name))

    def render(r):
        res = r["results"]
        if res.get("kind") == "no-screener":
            return "no screeners: the lattice has no screening vector\n"
        lines = [f"normal form: {res['kind']} p={res['p']} m={res['m']}"
                 + (f" subtype {res['subtype']}" if res["subtype"] else "")]
        lines.append(f"gram {res['normal_form_gram']}")
        lines.append(f"predicted screeners {res['predicted']}")
        lines.append(f"actual screeners    {res['actual']}")
        lines.append(f"agreement: {res['agrees']}")
        for w in r["warnings"]:
            lines.append(f"warning {w['code']}: {w['message']}")
        return "\n".join(lines) + "\n"

    _emit(rep, args.format, render)
    return EXIT_OK


def cmd_pairs(args) -> int:
    text = _read_input(args.input)
    lat, name = parse_lattice(text)
    if args.alpha is not None:
        try:
            alpha = tuple(int(t) for t in args.alpha.split(","))
        except ValueError:
            raise UsageError(f"--alpha expects comma-separated integers, got {args.alpha!r}")
        targets = [alpha]
    else:
        targets = list(all_screeners(lat).vectors)
    reports = [analyze_screener(lat, a, max_r=args.max_r) for a in targets]
    results = {"max_r": args.max_r, "screeners": reports}
    rep = _report("pairs", {"format": args.format, "alpha": args.alpha, "max_r": args.max_r},
                  results, [], _input_block(text, lat, name))

    def render(r):
        lines = [f"screening pairs (rank {r['input']['rank']})"]
        for srep in r["results"]["screeners"]:
            note = "  [doubled: odd parity]" if srep["substituted"] else ""
            lines.append(f"alpha {_vec(srep['alpha'])} norm {srep['norm']}{note}")
            for ent in srep["entries"]:
                lines.append(f"  (p, p') = ({ent['p']}, {ent['p_prime']})")
                if "type_i" in ent:
                    ti = ent["type_i"]
                    lines.append(f"    type I: gamma {_vec(ti['gamma'])} c {ti['c']}")
                else:
                    lines.append(f"    type I: error: {ent['type_i_error']}")
                for key, label in (("type_ii", "type II"), ("type_iii", "type III")):
                    fr = ent[key]
                    if fr["feasible"]:
                        lines.append(f"    {label}: feasible, c {fr['pair']['c']}, beta {fr['pair']['beta']}")
                    else:
                        lines.append(f"    {label}: infeasible ({'; '.join(fr['reasons'])})")
                if ent["type_iv"]:
                    for sol in ent["type_iv"]:
                        lines.append(
                            f"    type IV {sol['branch']}: r1={sol['r1']} r2={sol['r2']} m {sol['m_values']}"
                        )
                else:
                    lines.append("    type IV: none")
        return "\n".join(lines) + "\n"

    _emit(rep, args.format, render)
    return EXIT_OK


def cmd_catalog(args) -> int:
    lat = catalog(args.kind, args.n, args.scale)
    results = {"kind": args.kind, "n": args.n, "scale": args.scale, "gram": lat}
    rep = _report("catalog", {"kind": args.kind, "n": args.n, "scale": args.scale,
                              "format": args.format}, results, [])

    def render(r):
        rows = r["results"]["gram"]
        width = max(len(str(v)) for row in rows for v in row)
        return "\n".join(" ".join(str(v).rjust(width) for v in row) for row in rows) + "\n"

    _emit(rep, args.format, render)
    return EXIT_OK


def cmd_oracle_check(args) -> int:
    rng = random.Random(args.seed)
    mismatches = []
    done = 0
    attempts = 0
    while done < args.cases:
        attempts += 1
        d = rng.randint(1, args.rank)
        g = [[0] * d for _ in range(d)]
        for i in range(d):
            g[i][i] = rng.randint(1, args.max_entry)
            for j in range(i + 1, d):
                g[i][j] = g[j][i] = rng.randint(-args.max_entry, args.max_entry)
        if not is_positive_definite(g):
            continue
        done += 1
        lat = Lattice(g)
        t0 = time.perf_counter()
        fast = all_screeners(lat)
        boxed = box_enumerate(lat, 2 * lat.determinant)
        slow = tuple(v for v in boxed.vectors if is_screener(lat, v))
        dt = time.perf_counter() - t0
        ok = fast.vectors == slow
        print(f"case {done}: rank {d} det {lat.determinant} "
              f"screeners {len(fast)} {'ok' if ok else 'MISMATCH'} ({dt:.3f}s)",
              file=sys.stderr)
        if not ok:
            mismatches.append({
                "gram": g,
                "fast": [list(v) for v in fast.vectors],
                "box": [list(v) for v in slow],
            })
    results = {
        "cases": args.cases,
        "rank_max": args.rank,
        "max_entry": args.max_entry,
        "seed": args.seed,
        "mismatches": mismatches,
        "pass": not mismatches,
    }
    rep = _report("oracle-check", {"rank": args.rank, "cases": args.cases,
                                   "seed": args.seed, "max_entry": args.max_entry,
                                   "format": args.format}, results, [])

    def render(r):
        res = r["results"]
        status = "PASS" if res["pass"] else f"FAIL ({len(res['mismatches'])} mismatches)"
        return (f"oracle-check: {status} over {res['cases']} cases "
                f"(rank <= {res['rank_max']}, entries <= {res['max_entry']}, seed {res['seed']})\n")

    _emit(rep, args.format, render)
    return EXIT_OK if not mismatches else EXIT_MISMATCH


def build_parser() -> _Parser:
    parser = _Parser(
        prog="latscreen",
        description="Screening momenta of positive definite integral lattices",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, with_input=True):
        if with_input:
            p.add_argument("--input", required=True,
                           help="lattice file (JSON or plain matrix block; '-' for stdin)")
        p.add_argument("--format", choices=("json", "text"), default="json")

    p = sub.add_parser("screeners", help="enumerate all screening vectors")
    add_common(p)
    p.set_defaults(func=cmd_screeners)

    p = sub.add_parser("decompose", help="reduce a screener basis and recognize root components")
    add_common(p)
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("classify", help="extended-type classification with count check")
    add_common(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("rank2", help="rank-2 normal form and predicted screeners")
    add_common(p)
    p.set_defaults(func=cmd_rank2)

    p = sub.add_parser("pairs", help="screening-pair data per screener")
    add_common(p)
    p.add_argument("--alpha", help="comma-separated coordinates (default: every screener)")
    p.add_argument("--max-r", type=int, default=50, help="level bound for the sporadic search")
    p.set_defaults(func=cmd_pairs)

    p = sub.add_parser("catalog", help="standard Gram matrices (A/D/E, scaled)")
    p.add_argument("kind", choices=("A", "D", "E"))
    p.add_argument("n", type=int)
    p.add_argument("--scale", type=int, default=1)
    add_common(p, with_input=False)
    p.set_defaults(func=cmd_catalog)

    p = sub.add_parser("oracle-check", help="randomized cross-check against the box oracle")
    p.add_argument("--rank", type=int, default=4, help="maximum rank of the random lattices")
    p.add_argument("--cases", type=int, default=200)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--max-entry", type=int, default=8)
    add_common(p, with_input=False)
    p.set_defaults(func=cmd_oracle_check)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as e:
        print(f"usage error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except ParseFailure as e:
        print(f"input error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except NotGeneratedError as e:
        print(f"input error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except ClassificationError as e:
        print(f"classification mismatch: {e}", file=sys.stderr)
        return EXIT_MISMATCH
    except LatticeError as e:
        print(f"input error: {e}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
