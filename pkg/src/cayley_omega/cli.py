"""Command-line front end.

    cayley-lab verify cayley --n 3 --s 2 --rows 1,3 --cols 2,3
    cayley-lab verify vivanti --n 3 --k 3 --s 1
    cayley-lab verify laplace --size 5 --trials 50 --seed 42
    cayley-lab verify showthis --n 4 --k 3 --scheme "1,3|2"
    cayley-lab verify partial-action --n 3 --k 2 --s 2
    cayley-lab schemes --k 3 --s 4 --count-only
    cayley-lab diagram --perm 2,5,1,4,3 --format dot
    cayley-lab suite --max-n 3 --max-s 3

Exit status: 0 when every check holds, 1 when one fails (or a case hits the
term budget), 2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from . import lab, perms
from .matrices import MAX_SYMBOLIC_N
from .perms import Permutation, PartitionScheme

MAX_NUMERIC_SIZE = 8
MAX_SCHEME_PARAM = 6
VERIFY_KINDS = ("cayley", "vivanti", "laplace", "showthis", "partial-action")


def _index_list(text: str) -> tuple[int, ...]:
    text = text.strip()
    if not text:
        return ()
    try:
        return tuple(int(t) for t in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _scheme(text: str) -> PartitionScheme:
    try:
        return PartitionScheme(tuple(_index_list(w) for w in text.split("|")))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cayley-lab",
        description="Exact brute-force checks of Cayley's Omega-process identity and its companion sign rules.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def out_flag(p):
        p.add_argument("--out", help="write the output here instead of stdout")

    v = sub.add_parser("verify", help="check one identity family")
    v.add_argument("kind", choices=VERIFY_KINDS)
    v.add_argument("--n", type=int, help="dimension of the generic matrix")
    v.add_argument("--k", type=int, help="size of the leading minor")
    v.add_argument("--s", type=int, help="power of det X")
    v.add_argument("--rows", type=_index_list, help="row set I, e.g. 1,3")
    v.add_argument("--cols", type=_index_list, help="column set J, e.g. 2,5")
    v.add_argument("--size", type=int, help="matrix size for laplace")
    v.add_argument("--trials", type=int, default=50)
    v.add_argument("--seed", type=int, default=lab.DEFAULT_SEED)
    v.add_argument("--scheme", type=_scheme, help='nonempty words split by "|", e.g. "1,3|2"')
    out_flag(v)

    sc = sub.add_parser("schemes", help="list partition schemes of [k] into s words")
    sc.add_argument("--k", type=int, required=True)
    sc.add_argument("--s", type=int, required=True)
    sc.add_argument("--count-only", action="store_true")
    out_flag(sc)

    d = sub.add_parser("diagram", help="describe the permutation diagram of a permutation")
    d.add_argument("--perm", required=True, help="one-line notation, e.g. 2,5,1,4,3")
    d.add_argument("--format", choices=("json", "dot"), default="json")
    out_flag(d)

    st = sub.add_parser("suite", help="run every identity family")
    st.add_argument("--max-n", type=int, default=3)
    st.add_argument("--max-s", type=int, default=3)
    st.add_argument("--trials", type=int, default=50, help="random matrices per Laplace size")
    st.add_argument("--seed", type=int, default=lab.DEFAULT_SEED)
    out_flag(st)
    return parser


def _require(parser, args, *names):
    missing = [f"--{n.replace('_', '-')}" for n in names if getattr(args, n) is None]
    if missing:
        parser.error(f"verify {args.kind} needs {' '.join(missing)}")


def _validate(parser: argparse.ArgumentParser, args: argparse.Namespace) -> None:
    def bound(name, value, lo, hi):
        if value is not None and not lo <= value <= hi:
            parser.error(f"--{name.replace('_', '-')} must lie in [{lo}, {hi}], got {value}")

    if args.command == "verify":
        kind = args.kind
        if kind == "cayley":
            _require(parser, args, "n", "s", "rows", "cols")
        elif kind in ("vivanti", "partial-action"):
            _require(parser, args, "n", "k", "s")
        elif kind == "laplace":
            _require(parser, args, "size")
        elif kind == "showthis":
            _require(parser, args, "n")
            if args.scheme is None and args.k is None:
                parser.error("verify showthis needs --scheme or --k")
        bound("n", args.n, 1, MAX_SYMBOLIC_N)
        bound("s", args.s, 0, 10)
        bound("size", args.size, 1, MAX_NUMERIC_SIZE)
        bound("trials", args.trials, 0, 10_000)
        if args.k is not None:
            bound("k", args.k, 0, args.n if args.n is not None else MAX_SYMBOLIC_N)
        if kind == "cayley":
            if len(args.rows) != len(args.cols):
                parser.error("--rows and --cols must have the same length")
            for name in ("rows", "cols"):
                idx = getattr(args, name)
                if len(set(idx)) != len(idx) or any(not 1 <= i <= args.n for i in idx):
                    parser.error(f"--{name} must be distinct indices in 1..{args.n}")
        if kind == "partial-action" and args.s > 3:
            parser.error("--s is limited to 3 for the diagram-tuple expansion")
        if kind == "showthis" and args.scheme is not None:
            if not all(args.scheme.words):
                parser.error("--scheme words must be nonempty")
            if args.scheme.k > args.n:
                parser.error(f"--scheme covers [{args.scheme.k}] but --n is {args.n}")
    elif args.command == "schemes":
        bound("k", args.k, 0, MAX_SCHEME_PARAM)
        bound("s", args.s, 1, MAX_SCHEME_PARAM)
    elif args.command == "suite":
        bound("max_n", args.max_n, 0, MAX_SYMBOLIC_N)
        bound("max_s", args.max_s, 0, 6)
        bound("trials", args.trials, 0, 10_000)


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _reports_json(reports: Sequence[lab.VerificationReport]) -> str:
    return json.dumps([r.to_dict() for r in reports], indent=2) + "\n"


def _run_verify(args) -> list[lab.VerificationReport]:
    if args.kind == "cayley":
        return [lab.verify_cayley(lab.CayleyCase(args.n, args.s, args.rows, args.cols))]
    if args.kind == "vivanti":
        return [lab.verify_vivanti(args.n, args.k, args.s)]
    if args.kind == "partial-action":
        lead = tuple(range(1, args.k + 1))
        return [lab.verify_partial_action(lab.CayleyCase(args.n, args.s, lead, lead))]
    if args.kind == "laplace":
        return lab.random_laplace_reports(args.size, args.trials, args.seed)
    schemes = [args.scheme] if args.scheme is not None else lab.nonempty_schemes(args.k)
    return [lab.verify_showthis(sc, args.n) for sc in schemes]


def diagram_json(p: Permutation) -> str:
    doc = {
        "perm": str(p),
        "n": p.n,
        "vertices": {"lower": list(range(1, p.n + 1)), "upper": list(range(1, p.n + 1))},
        "edges": [list(e) for e in p.edges()],
        "crossings": [list(pair) for pair in perms.inversions(p)],
        "inversions": len(perms.inversions(p)),
        "sign": perms.sign(p),
        "weight": str(perms.weight(p)),
    }
    return json.dumps(doc, indent=2) + "\n"


def diagram_dot(p: Permutation) -> str:
    # crossings are data only; the drawing keeps just the two ranks and the edges
    lines = ["digraph permutation {", "  rankdir=BT;", "  node [shape=circle];"]
    lines.append("  { rank=same; " + " ".join(f'l{i} [label="{i}"];' for i in range(1, p.n + 1)) + " }")
    lines.append("  { rank=same; " + " ".join(f'u{i} [label="{i}"];' for i in range(1, p.n + 1)) + " }")
    lines.extend(f"  l{i} -> u{j};" for i, j in p.edges())
    lines.append(f'  label="{p}  sign={perms.sign(p):+d}  crossings={len(perms.inversions(p))}";')
    lines.append("}")
    return "\n".join(lines) + "\n"


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    _validate(parser, args)

    if args.command == "diagram":
        try:
            p = Permutation.parse(args.perm)
        except ValueError as exc:
            parser.error(f"malformed permutation: {exc}")
        _emit(diagram_json(p) if args.format == "json" else diagram_dot(p), args.out)
        return 0

    if args.command == "schemes":
        schemes = perms.enumerate_schemes(args.k, args.s)
        text = f"{len(schemes)}\n" if args.count_only else "".join(f"{sc}\n" for sc in schemes)
        _emit(text, args.out)
        return 0

    try:
        if args.command == "verify":
            reports = _run_verify(args)
        else:
            config = lab.SuiteConfig(max_n=args.max_n, max_s=args.max_s, laplace_trials=args.trials, seed=args.seed)
            reports = lab.run_suite(config)
    except lab.TermBudgetExceeded as exc:
        print(f"cayley-lab: {exc}", file=sys.stderr)
        return 1
    _emit(_reports_json(reports), args.out)
    return 0 if all(r.equal for r in reports) else 1


if __name__ == "__main__":
    sys.exit(main())
