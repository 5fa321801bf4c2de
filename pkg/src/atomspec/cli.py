"""Command-line front end: ``atomspec {check,spectrum,ideal,verify,triangular}``.

Exit status: 0 success, 1 rejected input (for example a non-admissible
relation), 2 an enumeration guard was exceeded, 3 the input failed to parse.
Diagnostics go to stderr; results go to stdout or ``--out``.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path

from .algebra import Relation, is_admissible, resolve_relations
from .dsl import ParsedInput, parse_quiver
from .errors import AtomSpecError, CapabilityError, NonAdmissibleRelationError, ParseError, ResourceError, UsageError
from .ideals import DEFAULT_DEGREE_BOUND, DEFAULT_M_MAX, is_right_rooted
from .oracle import HOM_LIMIT, SUBMODULE_LIMIT, TUPLE_LIMIT, Limits, verify_theorem_A
from .rings import BaseRing, is_prime, parse_prime
from .spectrum import atom_spectrum, comonoform_ideal, emit
from .triangular import load_bimodule, triangular_spectrum

EXIT_OK, EXIT_REJECTED, EXIT_GUARD, EXIT_PARSE = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        # bad flags are a rejection; exit 2 is reserved for resource guards
        self.print_usage(sys.stderr)
        self.exit(EXIT_REJECTED, f"{self.prog}: error: {message}\n")


def _positive(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer") from None
    if n < 1:
        raise argparse.ArgumentTypeError(f"{n} is not positive")
    return n


def _primes(text: str) -> tuple[int, ...]:
    try:
        ps = tuple(sorted({int(t) for t in text.split(",") if t.strip()}))
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not a comma-separated list of primes") from None
    bad = [p for p in ps if not is_prime(p)]
    if bad or not ps:
        raise argparse.ArgumentTypeError(f"not primes: {bad or text!r}")
    return ps


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="atomspec", description="Atom spectra of bound quiver algebras and triangular rings.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p, formats=("json", "text")):
        p.add_argument("--format", choices=formats, default=formats[0])
        p.add_argument("--out", type=Path, help="write the result here instead of stdout")

    def bounds(p):
        p.add_argument("--degree-bound", type=_positive, default=DEFAULT_DEGREE_BOUND)
        p.add_argument("--mmax", type=_positive, default=DEFAULT_M_MAX)

    p = sub.add_parser("check", help="admissibility of each relation and right-rootedness")
    p.add_argument("input", type=Path)
    common(p, ("text", "json"))
    bounds(p)

    p = sub.add_parser("spectrum", help="the atom spectrum as JSON, DOT or text")
    p.add_argument("input", type=Path)
    common(p, ("json", "dot", "text"))
    bounds(p)
    p.add_argument("--primes", type=_primes, default=(2, 3, 5), help="sample of Spec Z, e.g. 2,3,5")

    p = sub.add_parser("ideal", help="generators of the comonoform ideal at (vertex, prime)")
    p.add_argument("input", type=Path)
    common(p, ("text", "json"))
    p.add_argument("--vertex", required=True)
    p.add_argument("--prime", default="0", help="0, unique, or a rational prime")

    p = sub.add_parser("verify", help="brute-force check of the stalk description of atoms")
    p.add_argument("input", type=Path)
    common(p, ("json",))
    p.add_argument("--dim-bound", type=_positive, default=2)
    p.add_argument("--oracle-prime", type=_positive, help="field F_p to enumerate over (default: the input ring)")
    p.add_argument("--guard-submodules", type=_positive, default=SUBMODULE_LIMIT)
    p.add_argument("--guard-hom", type=_positive, default=HOM_LIMIT)
    p.add_argument("--guard-tuples", type=_positive, default=TUPLE_LIMIT)

    p = sub.add_parser("triangular", help="atom spectrum of [[A,0],[M,B]] from a bimodule JSON file")
    p.add_argument("input", type=Path, help='JSON: {"group": "F2^r" or "Z/m", "left_action": ..., "right_action": ...}')
    common(p, ("json", "dot", "text"))
    p.add_argument("--ring-a", required=True)
    p.add_argument("--ring-b", required=True)
    p.add_argument("--primes", type=_primes, default=(2, 3, 5))
    return parser


@dataclass
class Loaded:
    parsed: ParsedInput
    relations: tuple[Relation, ...]


def _load(path: Path) -> Loaded:
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    parsed = parse_quiver(text)
    return Loaded(parsed, resolve_relations(parsed.relations, parsed.quiver, parsed.ring))


def _where(rel: Relation) -> str:
    return f"{rel.source.line}:{rel.source.col}" if rel.source is not None else "?"


def _reject_non_admissible(loaded: Loaded) -> None:
    for r in loaded.relations:
        if not is_admissible(r):
            raise NonAdmissibleRelationError(r.element, r.source)


def cmd_check(args) -> tuple[str, int]:
    loaded = _load(args.input)
    rows, status = [], EXIT_OK
    for r in loaded.relations:
        ok = is_admissible(r)
        rows.append({"relation": r.label(), "position": _where(r), "admissible": ok})
        if not ok:
            status = EXIT_REJECTED
            print(
                f"{args.input}:{_where(r)}: error: relation {r.label()!r} is not admissible "
                f"(nonzero coefficient on a trivial path)",
                file=sys.stderr,
            )
    verdict = None
    if status == EXIT_OK:
        q, ring = loaded.parsed.quiver, loaded.parsed.ring
        try:
            verdict = is_right_rooted(q, loaded.relations, ring, args.degree_bound, args.mmax).value
        except CapabilityError as exc:
            print(f"{args.input}: warning: {exc}", file=sys.stderr)
            verdict = "Inconclusive"
    if args.format == "json":
        out = json.dumps({"relations": rows, "right_rooted": verdict}, indent=2) + "\n"
    else:
        lines = [
            f"{row['position']}  {row['relation']}: {'admissible' if row['admissible'] else 'NOT admissible'}"
            for row in rows
        ]
        lines.append(f"right rooted: {verdict if verdict is not None else 'not decided (rejected input)'}")
        out = "\n".join(lines) + "\n"
    return out, status


def cmd_spectrum(args) -> tuple[str, int]:
    loaded = _load(args.input)
    _reject_non_admissible(loaded)
    p = loaded.parsed
    s = atom_spectrum(p.quiver, loaded.relations, p.ring, args.degree_bound, args.mmax)
    for w in s.warnings:
        print(f"{args.input}: warning: {w}", file=sys.stderr)
    return emit(s, args.format, args.primes), EXIT_OK


def cmd_ideal(args) -> tuple[str, int]:
    loaded = _load(args.input)
    p = loaded.parsed
    c = comonoform_ideal(p.quiver, p.ring, args.vertex, parse_prime(args.prime, p.ring))
    gens = [g.render() for g in c.generators]
    if args.format == "json":
        payload = {"vertex": c.vertex, "prime": c.prime.to_json(), "generators": gens, "label": c.label()}
        return json.dumps(payload, indent=2) + "\n", EXIT_OK
    lines = [f"comonoform ideal at vertex {c.vertex}, prime {c.prime}:", *(f"  {g}" for g in gens), c.label()]
    return "\n".join(lines) + "\n", EXIT_OK


def cmd_verify(args) -> tuple[str, int]:
    loaded = _load(args.input)
    _reject_non_admissible(loaded)
    ring = loaded.parsed.ring
    p = args.oracle_prime
    if p is None:
        if not (ring.is_field and ring.is_finite):
            raise UsageError(f"the oracle works over F_p; pass --oracle-prime for ring {ring.name}")
        p = ring.modulus
    if not is_prime(p):
        raise UsageError(f"--oracle-prime {p} is not prime")
    limits = Limits(args.guard_submodules, args.guard_hom, args.guard_tuples)
    report = verify_theorem_A(loaded.parsed.quiver, loaded.relations, p, args.dim_bound, limits)
    return json.dumps(report.to_json(), indent=2) + "\n", EXIT_OK


def cmd_triangular(args) -> tuple[str, int]:
    a, b = BaseRing.parse(args.ring_a), BaseRing.parse(args.ring_b)
    try:
        text = args.input.read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {args.input}: {exc.strerror}") from None
    m = load_bimodule(text, a, b)
    return emit(triangular_spectrum(a, b, m), args.format, args.primes), EXIT_OK


COMMANDS = {
    "check": cmd_check,
    "spectrum": cmd_spectrum,
    "ideal": cmd_ideal,
    "verify": cmd_verify,
    "triangular": cmd_triangular,
}


def run(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    src = getattr(args, "input", None)
    try:
        out, status = COMMANDS[args.command](args)
    except ParseError as exc:
        where = f"{exc.line}:{exc.col}:" if exc.line else ""
        print(f"{src}:{where} parse error: {exc.message}", file=sys.stderr)
        return EXIT_PARSE
    except ResourceError as exc:
        print(f"{src}: resource guard: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except NonAdmissibleRelationError as exc:
        pos = f"{exc.source.line}:{exc.source.col}:" if exc.source is not None else ""
        print(f"{src}:{pos} error: {exc}", file=sys.stderr)
        return EXIT_REJECTED
    except (UsageError, CapabilityError, AtomSpecError) as exc:
        print(f"{src}: error: {exc}", file=sys.stderr)
        return EXIT_REJECTED
    if args.out is not None:
        args.out.write_text(out, encoding="utf-8")
    else:
        sys.stdout.write(out)
    return status


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
