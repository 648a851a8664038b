"""Command-line front end.

Subcommands: factor (the main computation), corpus (stress-input
constructors), bench (timing table), verify (hidden; oracle self-checks).
Exit codes: 0 success, 2 invalid input, 3 internal invariant violation.

All big numbers cross the JSON boundary as decimal strings; everything that
fits in a double-precision mantissa stays a plain int.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
import time
from typing import List, Optional, Tuple

from .corpus import multi_branch, quartic_refine, random_tower, tower_phi
from .driver import disc_valuation, factor_prime
from .errors import InputError, InvariantViolation, ParseError
from .zpoly import IntPolynomial, is_prime


# --- polynomial expression grammar ---
#
# expr   := term (('+'|'-') term)*
# term   := factor ('*' factor)*
# factor := base ('^' nat)?
# base   := 'x' | integer | '(' expr ')'
#
# No implicit multiplication, no unary minus; whitespace is free.  Offsets
# in error messages count bytes from the start of the input.


class _Scanner:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def take(self) -> str:
        ch = self.peek()
        self.pos += 1
        return ch

    def fail(self, message: str):
        raise ParseError(message, self.pos)

    def nat(self) -> int:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start:
            self.fail("expected a number")
        return int(self.text[start : self.pos])


def _parse_expr(sc: _Scanner) -> IntPolynomial:
    out = _parse_term(sc)
    while sc.peek() in ("+", "-"):
        op = sc.take()
        rhs = _parse_term(sc)
        out = out + rhs if op == "+" else out - rhs
    return out


def _parse_term(sc: _Scanner) -> IntPolynomial:
    out = _parse_factor(sc)
    while sc.peek() == "*":
        sc.take()
        out = out * _parse_factor(sc)
    return out


def _parse_factor(sc: _Scanner) -> IntPolynomial:
    base = _parse_base(sc)
    if sc.peek() == "^":
        sc.take()
        return base ** sc.nat()
    return base


def _parse_base(sc: _Scanner) -> IntPolynomial:
    ch = sc.peek()
    if ch == "x":
        sc.take()
        return IntPolynomial((0, 1))
    if ch.isdigit():
        return IntPolynomial((sc.nat(),))
    if ch == "(":
        sc.take()
        inner = _parse_expr(sc)
        if sc.peek() != ")":
            sc.fail("expected ')'")
        sc.take()
        return inner
    sc.fail("expected 'x', a number, or '('")


def parse_poly(text: str) -> IntPolynomial:
    """Expand an expression in x with integer coefficients."""
    sc = _Scanner(text)
    out = _parse_expr(sc)
    sc.skip_ws()
    if sc.pos != len(sc.text):
        sc.fail("unexpected trailing input")
    return out


def parse_coeffs(text: str) -> IntPolynomial:
    """One decimal coefficient per line, degree-descending."""
    rows = [ln.strip() for ln in text.splitlines()]
    rows = [ln for ln in rows if ln]
    if not rows:
        raise InputError("empty coefficient list")
    try:
        desc = [int(ln, 10) for ln in rows]
    except ValueError as exc:
        raise InputError(f"bad coefficient line: {exc}") from None
    return IntPolynomial(list(reversed(desc)))


def poly_to_expr(f: IntPolynomial) -> str:
    """Canonical printable form; parse_poly reads it back exactly."""
    if f.is_zero:
        return "0"
    parts: List[str] = []
    for k in range(f.degree, -1, -1):
        c = f.coeffs[k] if k < len(f.coeffs) else 0
        if c == 0:
            continue
        mag = abs(c)
        if k == 0:
            body = str(mag)
        else:
            xs = "x" if k == 1 else f"x^{k}"
            body = xs if mag == 1 else f"{mag}*{xs}"
        if not parts:
            parts.append(body if c > 0 else f"0-{body}")
        else:
            parts.append(("+" if c > 0 else "-") + body)
    return "".join(parts)


def poly_to_coeff_lines(f: IntPolynomial) -> str:
    cs = list(f.coeffs) + [0] * (f.degree + 1 - len(f.coeffs))
    return "\n".join(str(c) for c in reversed(cs))


# --- factor subcommand ---


def _read_poly(args) -> IntPolynomial:
    if args.poly_file is not None:
        try:
            with open(args.poly_file, "r", encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise InputError(f"cannot read {args.poly_file}: {exc.strerror}") from exc
    else:
        text = args.poly
    if args.format == "coeffs":
        return parse_coeffs(text)
    return parse_poly(text)


def _result_payload(r, want_disc: bool, timings: dict) -> dict:
    disc_v = disc_valuation(r.poly, r.p) if want_disc else None
    primes = []
    for rec in r.primes:
        gen = None
        if rec.generator is not None:
            G, k = rec.generator
            cs = list(G.coeffs) or [0]
            gen = {"num": [str(c) for c in cs], "p_power": k}
        primes.append({"e": rec.e, "f": rec.f, "generator": gen})
    return {
        "prime": str(r.p),
        "degree": r.poly.degree,
        "index": r.index,
        "disc_valuation": disc_v,
        "field_disc_valuation": None if disc_v is None else disc_v - 2 * r.index,
        "primes": primes,
        "timings_ms": timings,
    }


def _print_text(payload: dict, out) -> None:
    print(f"prime: {payload['prime']}", file=out)
    print(f"degree: {payload['degree']}", file=out)
    print(f"index: {payload['index']}", file=out)
    if payload["disc_valuation"] is not None:
        print(f"disc valuation: {payload['disc_valuation']}", file=out)
        print(f"field disc valuation: {payload['field_disc_valuation']}", file=out)
    print("primes:", file=out)
    for rec in payload["primes"]:
        line = f"  e={rec['e']} f={rec['f']}"
        if rec["generator"] is not None:
            asc = [int(c) for c in rec["generator"]["num"]]
            gpoly = poly_to_expr(IntPolynomial(asc))
            k = rec["generator"]["p_power"]
            gen = gpoly if k == 0 else f"({gpoly})/{payload['prime']}^{k}"
            line += f" generator={gen}"
        print(line, file=out)


def cmd_factor(args) -> int:
    t0 = time.perf_counter()
    f = _read_poly(args)
    t1 = time.perf_counter()
    if not is_prime(args.prime):
        raise InputError(f"{args.prime} is not prime")
    r = factor_prime(
        f,
        args.prime,
        seed=args.seed,
        parallel=args.parallel,
        generators=args.generators,
    )
    t2 = time.perf_counter()
    timings = {
        "parse": round((t1 - t0) * 1000.0, 3),
        "factor": round((t2 - t1) * 1000.0, 3),
        "total": round((t2 - t0) * 1000.0, 3),
    }
    payload = _result_payload(r, args.disc, timings)
    if args.json:
        json.dump(payload, sys.stdout, indent=2)
        sys.stdout.write("\n")
    else:
        _print_text(payload, sys.stdout)
    return 0


# --- corpus subcommand ---


def _parse_chain(text: str) -> List[Tuple[int, int, int]]:
    # "h:e:f,h:e:f,..." one triple per level.
    out = []
    for part in text.split(","):
        bits = part.split(":")
        if len(bits) != 3:
            raise InputError("chain levels look like h:e:f separated by commas")
        try:
            out.append((int(bits[0]), int(bits[1]), int(bits[2])))
        except ValueError:
            raise InputError("chain entries must be integers") from None
    return out


def cmd_corpus(args) -> int:
    if args.family == "tower":
        if args.chain is not None:
            f = random_tower(args.prime or 2, args.f0, _parse_chain(args.chain), args.seed)
        else:
            f = tower_phi(args.level)
    elif args.family == "quartic-refine":
        if args.prime is None:
            raise InputError("quartic-refine needs --prime")
        f = quartic_refine(args.prime, args.k)
    elif args.family == "multi-branch":
        f = multi_branch(args.j)
    else:
        raise InputError(f"unknown family {args.family!r}")
    if args.format == "coeffs":
        print(poly_to_coeff_lines(f))
    else:
        print(poly_to_expr(f))
    return 0


# --- bench subcommand ---


def _bench_poly(spec: str) -> Tuple[str, IntPolynomial, int]:
    bits = spec.split(":")
    name = bits[0]
    if name == "tower":
        level = int(bits[1]) if len(bits) > 1 else 1
        return spec, tower_phi(level), 2
    if name == "quartic-refine":
        if len(bits) != 3:
            raise InputError("bench spec quartic-refine:<p>:<k>")
        return spec, quartic_refine(int(bits[1]), int(bits[2])), int(bits[1])
    if name == "multi-branch":
        j = int(bits[1]) if len(bits) > 1 else 1
        return spec, multi_branch(j), 13
    raise InputError(f"unknown bench spec {spec!r}")


def cmd_bench(args) -> int:
    print("name,degree,prime,index,ms")
    for spec in args.specs:
        name, f, p = _bench_poly(spec)
        took = []
        index = None
        for _ in range(args.repeat):
            t0 = time.perf_counter()
            r = factor_prime(f, p, seed=args.seed, generators=args.generators)
            took.append((time.perf_counter() - t0) * 1000.0)
            index = r.index
        ms = sum(took) / len(took)
        print(f"{name},{f.degree},{p},{index},{ms:.1f}")
    return 0


# --- hidden verify subcommand ---


def cmd_verify(args) -> int:
    from . import verify as V
    from .zpoly import X, is_squarefree

    rng = random.Random(args.seed)
    failures = 0

    def report(label: str, ok: bool) -> None:
        nonlocal failures
        print(f"{label}: {'ok' if ok else 'FAIL'}")
        failures += 0 if ok else 1

    if args.suite in ("dedekind", "all"):
        zero, primes = V.dedekind_oracle(IntPolynomial([1, 0, 1]), 2)
        report("dedekind x^2+1 at 2", zero and primes == [(2, 1)])
    if args.suite in ("lattice", "all"):
        report("lattice unit side", V.lattice_index_oracle([(0, 1), (1, 0)]) == 0)
        report("lattice steep side", V.lattice_index_oracle([(0, 3), (1, 1), (2, 0)]) == 1)
    if args.suite in ("tame", "all"):
        lhs, rhs = V.tame_disc_check(IntPolynomial([-3, 0, 1]), 3, 0, [(2, 1)])
        report("tame x^2-3 at 3", lhs == rhs)
    if args.suite in ("refinement", "all"):
        ok = True
        for _ in range(10):
            k = rng.randint(1, 4)
            a = rng.randint(-5, 5)
            f = (X - IntPolynomial([a])) ** 2 + IntPolynomial([2 ** (2 * k)])
            if not is_squarefree(f):
                continue
            ok = ok and V.refinement_equivalence_check(f, 2)
        report("refinement random family", ok)
    if args.suite not in ("dedekind", "lattice", "tame", "refinement", "all"):
        raise InputError(f"unknown suite {args.suite!r}")
    if failures:
        raise InvariantViolation(f"{failures} verify check(s) failed")
    return 0


# --- argument plumbing ---


def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="montes",
        description="Exact factorization of a prime in Q[x]/(f) with index and generators.",
    )
    sub = ap.add_subparsers(dest="command", metavar="{factor,corpus,bench}")
    sub.required = True

    fa = sub.add_parser("factor", help="factor p in Q[x]/(f)")
    fa.add_argument("--prime", type=int, required=True, help="the prime p")
    src = fa.add_mutually_exclusive_group(required=True)
    src.add_argument("--poly", help="polynomial expression in x")
    src.add_argument("--poly-file", help="file holding the polynomial")
    fa.add_argument(
        "--format",
        choices=("expr", "coeffs"),
        default="expr",
        help="input format: expression or one coefficient per line, degree-descending",
    )
    fa.add_argument("--generators", action="store_true", help="also compute two-element generators")
    fa.add_argument("--disc", action="store_true", help="also compute v_p(disc f)")
    fa.add_argument("--json", action="store_true", help="machine-readable output")
    fa.add_argument("--seed", type=int, default=0, help="seed for randomized field arithmetic")
    fa.add_argument("--parallel", action="store_true", help="process branches in parallel")
    fa.set_defaults(run=cmd_factor)

    co = sub.add_parser("corpus", help="emit a stress-test polynomial")
    co.add_argument("--family", required=True, choices=("tower", "quartic-refine", "multi-branch"))
    co.add_argument("--level", type=int, default=1, help="tower: chain level 1..8")
    co.add_argument("--chain", help="tower: random chain, levels h:e:f joined by commas")
    co.add_argument("--f0", type=int, default=1, help="tower: residual degree of the random base")
    co.add_argument("--prime", type=int, help="quartic-refine: the prime; random tower: base prime")
    co.add_argument("--k", type=int, default=1, help="quartic-refine: exponent parameter")
    co.add_argument("--j", type=int, default=1, help="multi-branch: number of branches")
    co.add_argument("--seed", type=int, default=0, help="random tower seed")
    co.add_argument("--format", choices=("expr", "coeffs"), default="expr")
    co.set_defaults(run=cmd_corpus)

    be = sub.add_parser("bench", help="time a set of corpus runs, CSV output")
    be.add_argument("specs", nargs="*", help="runs like tower:3 quartic-refine:7:50 multi-branch:1")
    be.add_argument("--repeat", type=int, default=1, help="average over this many runs")
    be.add_argument("--generators", action="store_true")
    be.add_argument("--seed", type=int, default=0)
    be.set_defaults(run=cmd_bench)

    ve = sub.add_parser("verify")
    ve.add_argument("--suite", default="all")
    ve.add_argument("--seed", type=int, default=0)
    ve.set_defaults(run=cmd_verify)

    return ap


def main(argv: Optional[List[str]] = None) -> int:
    # Corpus members carry coefficients with thousands of digits; lift the
    # interpreter's decimal conversion guard so they print and parse.
    if hasattr(sys, "set_int_max_str_digits"):
        sys.set_int_max_str_digits(max(sys.get_int_max_str_digits(), 2_000_000))
    ap = _build_parser()
    args = ap.parse_args(argv)
    try:
        return args.run(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except InvariantViolation as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
