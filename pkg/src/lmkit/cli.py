"""Command line interface: ``lmkit <verb> ...``.

Exit codes: 0 success, 1 validation error, 2 theorem-check failure,
3 I/O or parse error.
"""

import argparse
import json
import sys
from pathlib import Path

from .algebra import boolean_names, validate_axioms
from .boolean import boolean_congruences, principal_is_boolean
from .checks import SUITES, CorpusEntry, default_corpus, run_suite
from .congruence import (
    DEFAULT_MAX_SPACE_SIZE,
    LM,
    THETA,
    all_congruences,
    is_principal,
    principal_congruence,
    principal_forms,
    principal_theta_congruence,
    principal_theta_forms,
)
from .dot import emit_dot
from .duality import chain_decomposition, dual_space, round_trip, set_name, validate_space
from .errors import InvalidInput, LMKitError, ParseError, TheoremViolation, ValidationError
from .formats import FORMAT, algebra_from_dict, algebra_to_dict, load_algebra, parse_spec

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_THEOREM = 2
EXIT_IO = 3


class _Output:
    def __init__(self, path):
        self.path = path
        self.chunks = []

    def write(self, text):
        self.chunks.append(text)

    def flush(self):
        text = "".join(self.chunks)
        if self.path:
            try:
                Path(self.path).write_text(text, encoding="utf-8")
            except OSError as exc:
                raise ParseError(f"cannot write {self.path}: {exc}") from None
        else:
            sys.stdout.write(text)


def _read(path):
    if path == "-":
        return parse_spec(sys.stdin.read())
    return load_algebra(path)


def _element(A, name):
    try:
        return A.el(name)
    except InvalidInput:
        raise InvalidInput(f"unknown element {name!r}; elements are {', '.join(A.names)}") from None


def _dumps(obj):
    return json.dumps(obj, indent=2) + "\n"


# -- verbs -----------------------------------------------------------------------


def cmd_gen(args, out):
    if args.kind == "corpus":
        corpus = default_corpus(seed=args.seed)
        if args.dir:
            folder = Path(args.dir)
            try:
                folder.mkdir(parents=True, exist_ok=True)
                for entry in corpus:
                    (folder / f"{entry.label}.json").write_text(_dumps(entry.spec), encoding="utf-8")
            except OSError as exc:
                raise ParseError(f"cannot write corpus: {exc}") from None
            out.write(f"wrote {len(corpus)} specs to {folder}\n")
        else:
            out.write(_dumps([e.spec for e in corpus]))
        return EXIT_OK
    if args.n is None:
        raise InvalidInput(f"gen {args.kind} needs -n")
    if args.kind == "chain":
        spec = {"format": FORMAT, "kind": "chain", "n": args.n}
        if args.values:
            spec["values"] = args.values
    else:
        factor = {"format": FORMAT, "kind": "chain", "n": args.n}
        spec = {"format": FORMAT, "kind": "product", "factors": [factor] * args.k}
    A = algebra_from_dict(spec)
    out.write(_dumps(algebra_to_dict(A) if args.explicit else spec))
    return EXIT_OK


def cmd_validate(args, out):
    try:
        A = _read(args.file)
    except ValidationError as exc:
        out.write(f"invalid: {exc}\n")
        for v in exc.violations:
            out.write(f"  {v.axiom} witness={list(v.witness)}: {v.message}\n")
        return EXIT_VALIDATION
    bad = validate_axioms(A)
    X = dual_space(A)
    space_bad = validate_space(X, max_subset_points=args.max_space_size)
    out.write(f"{A.name or args.file}: LM_{A.n}-algebra with {A.size} elements\n")
    out.write(f"Boolean elements: {', '.join(boolean_names(A))}\n")
    out.write(f"dual space: {X.size} points, {'valid' if not space_bad else 'INVALID'}\n")
    for v in bad + space_bad:
        out.write(f"  {v.axiom} witness={list(v.witness)}: {v.message}\n")
    return EXIT_VALIDATION if bad or space_bad else EXIT_OK


def cmd_dual(args, out):
    A = _read(args.file)
    X = dual_space(A)
    rt = round_trip(A)
    chains = chain_decomposition(X)
    bad = validate_space(X, max_subset_points=args.max_space_size)
    if args.json:
        out.write(
            _dumps(
                {
                    "points": list(X.names),
                    "order": [[X.names[x], X.names[y]] for x, y in X.poset.covers],
                    "maps": {str(i): {X.names[x]: X.names[X.f(i, x)] for x in range(X.size)} for i in X.indices},
                    "chains": [X.poset.names_of(c) for c in chains],
                    "round_trip": rt.algebra_side.size == A.size,
                    "violations": [v.as_dict() for v in bad],
                }
            )
        )
    else:
        out.write(f"X({A.name or 'A'}): {X.size} points\n")
        for x in range(X.size):
            images = ", ".join(f"f{i}={X.names[X.f(i, x)]}" for i in X.indices)
            out.write(f"  {X.names[x]}: {images}\n")
        out.write("order: " + ", ".join(f"{X.names[x]}<{X.names[y]}" for x, y in X.poset.covers) + "\n")
        out.write("chains: " + " + ".join(set_name(X, c) for c in chains) + "\n")
        out.write(f"round trip: |D(X(A))| = {rt.algebra_side.size}, sigma and epsilon are isomorphisms\n")
        out.write(f"space axioms: {'all hold' if not bad else ', '.join(v.axiom for v in bad)}\n")
    return EXIT_VALIDATION if bad else EXIT_OK


def cmd_con(args, out):
    A = _read(args.file)
    mode = THETA if args.theta else LM
    X = dual_space(A)
    if args.pair:
        a, b = (_element(A, v) for v in args.pair)
        if mode == LM:
            sets, congs = principal_forms(A, a, b, args.max_space_size)
            theta = principal_congruence(A, a, b, max_space_size=args.max_space_size)
        else:
            sets, congs = principal_theta_forms(A, a, b, args.max_space_size)
            theta = principal_theta_congruence(A, a, b, max_space_size=args.max_space_size)
        label = "Theta" if mode == LM else "Theta_theta"
        out.write(f"{label}({A.names[a]}, {A.names[b]}) = {theta.describe()}\n")
        for name, G in sets.items():
            out.write(f"  open set [{name}]: {set_name(X, G)}\n")
        out.write(f"  forms agreeing with the generated congruence: {', '.join(congs)}\n")
        return EXIT_OK
    lat = all_congruences(A, mode, args.max_space_size)
    title = "Con" if mode == LM else "Con_theta"
    out.write(f"{title}({A.name or 'A'}): {len(lat)} congruences\n")
    for k, c in enumerate(lat):
        Y = lat.subsets[k] if lat.subsets is not None else None
        w = is_principal(A, c, mode)
        parts = [f"  [{k}] {c.describe()}"]
        if Y is not None:
            parts.append(f"Y={set_name(X, Y)}")
        if w is not None:
            parts.append(f"= Theta({A.names[w.a]}, {A.names[w.b]})")
        out.write("  ".join(parts) + "\n")
    return EXIT_OK


def cmd_boolean(args, out):
    A = _read(args.file)
    X = dual_space(A)
    if args.pair:
        a, b = (_element(A, v) for v in args.pair)
        ok, cert = principal_is_boolean(A, a, b, args.max_space_size)
        out.write(
            f"Theta({A.names[a]}, {A.names[b]}) is {'Boolean' if ok else 'not Boolean'}; "
            f"generator {A.names[cert.generator]}, G={set_name(X, cert.open_set)}\n"
        )
        return EXIT_OK
    recs = boolean_congruences(A, args.max_space_size)
    out.write(f"{len(recs)} Boolean congruences, |C(A)| = {len(boolean_names(A))}\n")
    for r in recs:
        out.write(
            f"  c={A.names[r.generator]}  Y={set_name(X, r.dual_subset)}  {r.congruence.describe()}\n"
        )
    return EXIT_OK


def cmd_check(args, out):
    if args.files:
        corpus = []
        for path in args.files:
            try:
                text = sys.stdin.read() if path == "-" else Path(path).read_text(encoding="utf-8")
                spec = json.loads(text)
            except (OSError, json.JSONDecodeError) as exc:
                raise ParseError(f"cannot read {path}: {exc}") from None
            corpus.append(CorpusEntry(Path(path).stem, spec))
    else:
        corpus = default_corpus(seed=args.seed)
    report = run_suite(corpus, args.suite, args.max_space_size)
    if args.report:
        try:
            Path(args.report).write_text(report.to_json(), encoding="utf-8")
        except OSError as exc:
            raise ParseError(f"cannot write {args.report}: {exc}") from None
    out.write(report.to_json() if args.json else report.to_text())
    if not report.ok:
        return EXIT_THEOREM
    return EXIT_VALIDATION if report.skipped else EXIT_OK


def cmd_dot(args, out):
    A = _read(args.file)
    if args.what == "algebra":
        obj = A
    elif args.what == "space":
        obj = dual_space(A)
    else:
        obj = all_congruences(A, THETA if args.what == "con-theta" else LM, args.max_space_size)
    out.write(emit_dot(obj))
    return EXIT_OK


# -- parser ----------------------------------------------------------------------


def _global_flags(parser, suppress):
    # the flags are accepted before or after the verb; the copy attached to
    # the verbs must not overwrite values given before it
    default = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    parser.add_argument("--out", default=default(None), help="write output to this file instead of stdout")
    parser.add_argument(
        "--max-space-size",
        type=int,
        default=default(DEFAULT_MAX_SPACE_SIZE),
        help=f"largest dual space whose subsets are enumerated (default {DEFAULT_MAX_SPACE_SIZE})",
    )
    parser.add_argument("--seed", type=int, default=default(None), help="shuffle the corpus order with this seed")


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    _global_flags(common, suppress=True)

    parser = argparse.ArgumentParser(prog="lmkit", description=__doc__.splitlines()[0])
    _global_flags(parser, suppress=False)
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("gen", parents=[common], help="generate algebra specs")
    p.add_argument("kind", choices=["chain", "power", "corpus"])
    p.add_argument("-n", type=int, help="number of truth values")
    p.add_argument("-k", type=int, default=2, help="number of factors for power (default 2)")
    p.add_argument("--values", type=int, nargs="+", help="subchain numerators for chain")
    p.add_argument("--explicit", action="store_true", help="emit explicit tables")
    p.add_argument("--dir", help="corpus: write one file per algebra here")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("validate", parents=[common], help="check axioms of an algebra and its dual")
    p.add_argument("file")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("dual", parents=[common], help="show the dual space")
    p.add_argument("file")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_dual)

    p = sub.add_parser("con", parents=[common], help="list congruences or one principal congruence")
    p.add_argument("file")
    p.add_argument("--theta", action="store_true", help="theta-congruences instead")
    p.add_argument("--pair", nargs=2, metavar=("A", "B"))
    p.set_defaults(func=cmd_con)

    p = sub.add_parser("boolean", parents=[common], help="Boolean congruences")
    p.add_argument("file")
    p.add_argument("--pair", nargs=2, metavar=("A", "B"), help="decide whether Theta(A, B) is Boolean")
    p.set_defaults(func=cmd_boolean)

    p = sub.add_parser("check", parents=[common], help="run the theorem checks")
    p.add_argument("files", nargs="*", help="algebra specs (default: the built-in corpus)")
    p.add_argument("--suite", choices=("all",) + SUITES, default="all")
    p.add_argument("--json", action="store_true", help="print the JSON report")
    p.add_argument("--report", help="also write the JSON report here")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("dot", parents=[common], help="Graphviz output")
    p.add_argument("file")
    p.add_argument("--what", choices=["algebra", "space", "con", "con-theta"], default="algebra")
    p.set_defaults(func=cmd_dot)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    out = _Output(args.out)
    try:
        code = args.func(args, out)
        out.flush()
        return code
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except ValidationError as exc:
        print(f"invalid: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except TheoremViolation as exc:
        print(f"theorem check failed: {exc}", file=sys.stderr)
        return EXIT_THEOREM
    except InvalidInput as exc:
        print(f"invalid: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except LMKitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_THEOREM


__all__ = ["build_parser", "main"]
