"""Command line front end.

Subcommands: ``chains`` lists chains with their factorizations, ``diff``
prints one boundary, ``confluence`` resolves rewriting overlaps, ``verify``
cross-checks the two differential engines on the default presentation,
``cohomology`` prints dimension tables (text, CSV or JSON, with an optional
figure), and ``presets`` lists the built-in sign bimodules.

Exit codes: 0 success, 1 usage problem, 2 a verification found a mismatch,
3 a computation failed (budget exhausted, malformed input file, et cetera).
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .algebra import (
    DEFAULT_STEP_BUDGET,
    ComputationError,
    load_presentation,
    parse_word,
    render_poly,
    render_word,
)
from .chains import chain_factorization, enumerate_chains
from .confluence import check_confluence
from .g23 import (
    DegreeMismatch,
    closed_form_differential,
    closed_form_table,
    g23_chain_words,
    g23_presentation,
)
from .hochschild import (
    PRESET_NAMES,
    PRESETS,
    CohomologyReport,
    build_matrix,
    parse_bimodule,
    report,
    report_to_json_obj,
)
from .morse import (
    GraphRecorder,
    anick_differential,
    compose_check,
    differential_table,
    to_dot,
)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_FAIL = 2
EXIT_ERROR = 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _env_int(name):
    raw = os.environ.get(name)
    if raw is None:
        return None
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"{name} must be an integer, got {raw!r}")


def _resolve_budgets(args):
    step = args.step_budget or _env_int("ANICK_STEP_BUDGET") or DEFAULT_STEP_BUDGET
    depth = args.depth_budget if getattr(args, "depth_budget", None) else _env_int("ANICK_DEPTH_BUDGET")
    return step, depth


def _load(args):
    step, _ = _resolve_budgets(args)
    if getattr(args, "presentation", None):
        try:
            return load_presentation(args.presentation, step)
        except (OSError, json.JSONDecodeError) as exc:
            raise ComputationError(f"cannot load presentation: {exc}")
    return g23_presentation(step)


def _word_arg(text, pres):
    try:
        return parse_word(text, pres.alphabet)
    except ValueError as exc:
        raise UsageError(str(exc))


def _print_json(obj):
    print(json.dumps(obj, indent=2, sort_keys=True))


def cmd_chains(args):
    if args.n < 0:
        raise UsageError("--n must be nonnegative")
    pres = _load(args)
    words = enumerate_chains(args.n, pres)
    elements = [chain_factorization(w, pres) for w in words]
    if args.json:
        _print_json(
            {
                "n": args.n,
                "chains": [
                    {"word": render_word(e.word), "factors": [render_word(f) for f in e.factors]}
                    for e in elements
                ],
            }
        )
    else:
        for e in elements:
            print(f"{render_word(e.word)} = {e}")
    return EXIT_OK


def _format_term(target, left, right, coef):
    inner = render_word(target)
    core = f"{render_word(left)}[{inner}]{render_word(right)}"
    if abs(coef) != 1:
        core = f"{abs(coef)}{core}"
    return core


def _sorted_terms(row):
    terms = []
    for target, weight in row.items():
        for (left, right), coef in weight.items():
            terms.append((render_word(target), render_word(left), render_word(right), target, left, right, coef))
    terms.sort(key=lambda t: t[:3])
    return [(t[3], t[4], t[5], t[6]) for t in terms]


def cmd_diff(args):
    pres = _load(args)
    _, depth = _resolve_budgets(args)
    word = _word_arg(args.chain, pres)
    if args.source == "closed":
        if args.presentation:
            raise UsageError("--source closed only applies to the default presentation")
        if args.dot:
            raise UsageError("--dot needs --source morse")
        try:
            row = closed_form_differential(word, args.n)
        except DegreeMismatch as exc:
            raise UsageError(str(exc))
        element = chain_factorization(word, g23_presentation())
    else:
        element = chain_factorization(word, pres)
        if args.n is not None and args.n != element.degree:
            raise UsageError(
                f"{render_word(word)} is a chain of degree {element.degree}, not {args.n}"
            )
        recorder = GraphRecorder() if args.dot else None
        row = anick_differential(element, pres, depth, recorder)
        if args.dot:
            with open(args.dot, "w", encoding="utf-8") as fh:
                fh.write(to_dot(recorder, title=f"d[{render_word(word)}]"))
    terms = _sorted_terms(row)
    if args.json:
        _print_json(
            {
                "chain": render_word(word),
                "degree": element.degree,
                "terms": [
                    {
                        "target": render_word(t),
                        "left": render_word(l),
                        "right": render_word(r),
                        "coef": str(c),
                    }
                    for t, l, r, c in terms
                ],
            }
        )
        return EXIT_OK
    if not terms:
        print(f"d[{render_word(word)}] = 0")
        return EXIT_OK
    bits = []
    for t, l, r, c in terms:
        core = _format_term(t, l, r, c)
        if not bits:
            bits.append(core if c > 0 else f"-{core}")
        else:
            bits.append(f"+ {core}" if c > 0 else f"- {core}")
    print(f"d[{render_word(word)}] = " + " ".join(bits))
    return EXIT_OK


def cmd_confluence(args):
    pres = _load(args)
    ok, results = check_confluence(pres)
    for r in results:
        o = r.overlap
        status = "resolves" if r.resolves else "FAILS"
        print(f"{render_word(o.word)} (rules {o.left},{o.right} at {o.offset}): {status}")
        if not r.resolves:
            print(f"  first branch:  {render_poly(dict(r.left_form))}")
            print(f"  second branch: {render_poly(dict(r.right_form))}")
    print(f"confluent: {'yes' if ok else 'no'} ({len(results)} overlaps)")
    return EXIT_OK if ok else EXIT_FAIL


def cmd_verify(args):
    if args.max_n < 1:
        raise UsageError("--max-n must be at least 1")
    pres = _load(args)
    _, depth = _resolve_budgets(args)
    max_n = args.max_n
    failures = 0

    def check(label, ok, detail=""):
        nonlocal failures
        if ok:
            print(f"{label}: pass")
        else:
            failures += 1
            suffix = f" ({detail})" if detail else ""
            print(f"{label}: FAIL{suffix}")

    ok, results = check_confluence(pres)
    check("confluence", ok, f"{sum(not r.resolves for r in results)} unresolved overlaps")
    for n in range(max_n + 1):
        got = enumerate_chains(n, pres)
        want = g23_chain_words(n)
        expected = 3 if n == 0 else 2 * n + 3
        check(
            f"chains n={n}",
            got == want and len(got) == expected,
            f"{len(got)} found, {expected} expected",
        )
    for n in range(1, max_n + 1):
        morse_rows = differential_table(n, pres, depth)
        closed_rows = closed_form_table(n)
        if morse_rows == closed_rows:
            check(f"diff n={n}", True)
        else:
            bad = sorted(
                render_word(w)
                for w in set(morse_rows) | set(closed_rows)
                if morse_rows.get(w) != closed_rows.get(w)
            )
            check(f"diff n={n}", False, "mismatch at " + ", ".join(bad))
    for n in range(1, max_n + 1):
        check(f"compose n={n}", compose_check(n, pres))
    for name in PRESET_NAMES:
        bimodule = PRESETS[name]
        good = True
        for k in range(max_n + 1):
            m = build_matrix(k, bimodule, "morse", pres)
            c = build_matrix(k, bimodule, "closed")
            if m.entries != c.entries or m.rank() != m.rank_reference():
                good = False
                break
        check(f"matrices {name}", good)
    if failures:
        print("verify: FAIL")
        return EXIT_FAIL
    print("verify: PASS")
    return EXIT_OK


def _emit_report(rep, bimodule, args):
    if args.json:
        _print_json(report_to_json_obj(rep))
        return
    lines = [
        (str(r.n), str(r.chains), str(r.rank_in), str(r.rank_out), str(r.dim))
        for r in rep.rows
    ]
    header = ("n", "chains", "rank_in", "rank_out", "dim")
    if args.csv:
        print(",".join(header))
        for line in lines:
            print(",".join(line))
        return
    print(f"bimodule {rep.bimodule} ({bimodule.describe()}), source {rep.source}")
    widths = [max(len(h), *(len(l[i]) for l in lines)) for i, h in enumerate(header)]
    print("  ".join(h.ljust(w) for h, w in zip(header, widths)).rstrip())
    for line in lines:
        print("  ".join(v.ljust(w) for v, w in zip(line, widths)).rstrip())


def cmd_cohomology(args):
    if args.max_n < 0:
        raise UsageError("--max-n must be nonnegative")
    pres = _load(args)
    if args.source != "morse" and args.presentation:
        raise UsageError(f"--source {args.source} only applies to the default presentation")
    try:
        bimodule = parse_bimodule(args.bimodule, pres.alphabet)
    except ValueError as exc:
        raise UsageError(str(exc))
    if args.json and args.csv:
        raise UsageError("choose one of --json and --csv")
    if args.source == "both":
        rep_m = report(bimodule, args.max_n, "morse", pres)
        rep_c = report(bimodule, args.max_n, "closed")
        if rep_m.rows != rep_c.rows:
            print("cohomology: engines disagree", file=sys.stderr)
            for rm, rc in zip(rep_m.rows, rep_c.rows):
                if rm != rc:
                    print(f"  n={rm.n}: morse {rm} vs closed {rc}", file=sys.stderr)
            return EXIT_FAIL
        rep = CohomologyReport(rep_m.bimodule, "both", rep_m.rows)
    else:
        rep = report(bimodule, args.max_n, args.source, pres)
    _emit_report(rep, bimodule, args)
    if args.figure:
        from .plotting import save_report_figure

        save_report_figure(rep, args.figure)
    return EXIT_OK


def cmd_presets(args):
    for name in PRESET_NAMES:
        print(f"{name}  {PRESETS[name].describe()}")
    return EXIT_OK


def _add_common(sub, presentation=True, depth=False):
    sub.add_argument("--step-budget", type=int, default=None, help="rewrite step limit")
    if presentation:
        sub.add_argument("--presentation", help="JSON presentation file")
    if depth:
        sub.add_argument("--depth-budget", type=int, default=None, help="zigzag climb limit")


def build_parser():
    parser = _Parser(prog="anick", description=__doc__.splitlines()[0])
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("chains", help="list chains of one degree")
    p.add_argument("--n", type=int, required=True, help="chain degree")
    p.add_argument("--json", action="store_true")
    _add_common(p)
    p.set_defaults(func=cmd_chains)

    p = subs.add_parser("diff", help="print the boundary of one chain")
    p.add_argument("--chain", required=True, help="chain word, e.g. bca^2")
    p.add_argument("--n", type=int, default=None, help="expected degree (checked)")
    p.add_argument("--source", choices=("morse", "closed"), default="morse")
    p.add_argument("--json", action="store_true")
    p.add_argument("--dot", help="write the explored subgraph as DOT")
    _add_common(p, depth=True)
    p.set_defaults(func=cmd_diff)

    p = subs.add_parser("confluence", help="resolve all rewriting overlaps")
    _add_common(p)
    p.set_defaults(func=cmd_confluence)

    p = subs.add_parser("verify", help="cross-check the engines on the default presentation")
    p.add_argument("--max-n", type=int, default=5)
    _add_common(p, presentation=False, depth=True)
    p.set_defaults(func=cmd_verify)

    p = subs.add_parser("cohomology", help="dimension table for a sign bimodule")
    p.add_argument("--bimodule", required=True, help="preset like W5 or signs like ++-/+-+")
    p.add_argument("--max-n", type=int, default=4)
    p.add_argument("--source", choices=("morse", "closed", "both"), default="morse")
    p.add_argument("--json", action="store_true")
    p.add_argument("--csv", action="store_true")
    p.add_argument("--figure", help="write a PNG summary to this path")
    _add_common(p, depth=True)
    p.set_defaults(func=cmd_cohomology)

    p = subs.add_parser("presets", help="list built-in sign bimodules")
    p.set_defaults(func=cmd_presets)

    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ComputationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
