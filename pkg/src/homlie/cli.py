"""Command-line interface: ``homlie <command> ...``.

Exit codes: 0 all checks pass, 1 a check failed (or a proper ideal was
found), 2 usage or parse error.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import corpus
from .algebra import AlgebraPresentation
from .checks import (
    AxiomError,
    ConstructionError,
    hom_lie_battery,
    is_invariant_metric,
    is_jacobi,
    is_skew,
)
from .documents import (
    double_document,
    extend_document,
    invert_document,
    lie_document,
    product_document,
    span_text,
)
from .extension import QuadraticHomLie, TwistInvertibleError
from .inverse import HypothesisError
from .product import scan_proper_ideals
from .textformat import Document, ParseError, parse_file, serialize

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _load(path: str) -> Document:
    try:
        return parse_file(path)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _first(doc: Document, want_twist=False, want_form=False, path="") -> AlgebraPresentation:
    for alg in doc.algebras.values():
        if (not want_twist or alg.twist is not None) and (not want_form or alg.form is not None):
            return alg
    needs = " and ".join(w for w, f in (("a twist map", want_twist), ("a metric", want_form)) if f)
    raise UsageError(f"{path}: no algebra with {needs}" if needs else f"{path}: no algebra")


def _emit(text: str, out: str | None):
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def cmd_check(args) -> int:
    doc = _load(args.file)
    ok = True
    for alg in doc.algebras.values():
        print(f"algebra {alg.name}")
        if not alg.product.skew:
            print("plain product: no axioms apply")
            continue
        if alg.twist is not None:
            required = hom_lie_battery(alg.product, alg.twist, alg.form)
            informational = [is_jacobi(alg.product)] if required[0] else []
        else:
            required = [is_skew(alg.product)]
            if required[0]:
                required.append(is_jacobi(alg.product))
                if alg.form is not None:
                    required.append(is_invariant_metric(alg.form, alg.product))
            informational = []
        for rep in required + informational:
            print(rep.describe(alg.labels))
        passed = all(required)
        ok &= passed
        note = " (jacobi is informational when a twist map is present)" if informational else ""
        print(f"verdict: {'pass' if passed else 'FAIL'}{note}")
    return EXIT_OK if ok else EXIT_FAIL


def cmd_lie(args) -> int:
    doc = _load(args.file)
    q = QuadraticHomLie(_first(doc, True, True, args.file))
    _emit(serialize(lie_document(q)), args.out)
    return EXIT_OK


def cmd_extend(args) -> int:
    doc = _load(args.file)
    q = QuadraticHomLie(_first(doc, True, True, args.file))
    _emit(serialize(extend_document(q)), args.out)
    return EXIT_OK


def cmd_double(args) -> int:
    doc = _load(args.file)
    _emit(serialize(double_document(_first(doc, True, False, args.file))), args.out)
    return EXIT_OK


def cmd_invert(args) -> int:
    g = _first(_load(args.g_file), False, True, args.g_file)
    G = _first(_load(args.G_file), False, True, args.G_file)
    _emit(serialize(invert_document(g, G)), args.out)
    return EXIT_OK


def cmd_product(args) -> int:
    doc = _load(args.file)
    q = QuadraticHomLie(_first(doc, True, True, args.file))
    _emit(serialize(product_document(q)), args.out)
    return EXIT_OK


def cmd_ideals(args) -> int:
    doc = _load(args.file)
    alg = doc.algebra(args.algebra) if args.algebra else _first(doc, path=args.file)
    if args.trials < 0:
        raise UsageError("--trials must be non-negative")
    ideal = scan_proper_ideals(alg.product, args.trials, args.seed)
    if ideal is None:
        print(f"none found (trials={args.trials})")
        return EXIT_OK
    print(f"proper ideal found: dim {ideal.dim} of {alg.dim}: {span_text(ideal, alg.labels)}")
    return EXIT_FAIL


def cmd_example(args) -> int:
    text = corpus.example_text(args.name)
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        (out / corpus.FILES[args.name]).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="homlie", description="Exact computations with quadratic Hom-Lie algebras.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="run the axiom checks on every algebra in a file")
    p.add_argument("file")
    p.set_defaults(func=cmd_check)

    for name, func, helptext in (
        ("lie", cmd_lie, "induced Lie bracket T o mu, with center and derived subalgebra"),
        ("extend", cmd_extend, "quadratic central extension, cocycle, k, h and the extended twist"),
        ("double", cmd_double, "quadratic Hom-Lie algebra on h + h*"),
        ("product", cmd_product, "non-associative product on G and the unital algebra F x G"),
    ):
        p = sub.add_parser(name, help=helptext)
        p.add_argument("file")
        p.add_argument("--out", help="write to this file instead of standard output")
        p.set_defaults(func=func)

    p = sub.add_parser("invert", help="recover (mu, T) from a quadratic Lie algebra and a central extension")
    p.add_argument("g_file")
    p.add_argument("G_file")
    p.add_argument("--out")
    p.set_defaults(func=cmd_invert)

    p = sub.add_parser("ideals", help="scan for proper two-sided ideals")
    p.add_argument("file")
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--algebra", help="algebra to scan (default: the first in the file)")
    p.set_defaults(func=cmd_ideals)

    p = sub.add_parser("example", help="write a bundled example file")
    p.add_argument("name", choices=sorted(corpus.FILES))
    p.add_argument("--out", help="directory to write into")
    p.set_defaults(func=cmd_example)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except (ParseError, UsageError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (AxiomError, HypothesisError, ConstructionError, TwistInvertibleError) as exc:
        print(f"check failed: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
