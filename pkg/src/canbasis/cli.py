"""Command-line front end: ``canbasis <subcommand> ...``.

Exit status is 0 on success, 2 for invalid input and 3 when a computation runs
out of budget.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from pathlib import Path
from typing import Callable, Sequence, TextIO

from .canonical import Budget, CanonicalCache, canonical_basis, kl_poly
from .errors import BudgetExceeded, InvalidInput
from .order import (
    compare,
    dominant_source,
    dominant_source_blocks,
    format_blocks,
    format_sigma,
    format_tuple,
    lambda_gl,
    lambda_q,
    parse_sigma,
    parse_tuple,
)
from .tensor import TensorVector, e_act, f_act

EXIT_OK, EXIT_INVALID, EXIT_BUDGET = 0, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InvalidInput(message)


def _dumps(obj) -> str:
    return json.dumps(obj, separators=(",", ":"))


def _fmt_frac(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _symbolic_lambda(b, sigma) -> list[str]:
    out = []
    for br, sr in zip(b, sigma):
        shift = f"+{br}" if br > 0 else (f"{br}" if br < 0 else "")
        out.append(f"z{shift}" if sr > 0 else f"-(z{shift})")
    return out


# -- per-(sigma, b) handlers, shared by single and batch mode -----------------


def _do_compute(sigma, b, cache, budget, args):
    vec = canonical_basis(b, sigma, cache, budget)
    return str(vec), vec.to_json()


def _do_source(sigma, b, cache, budget, args):
    a, word = dominant_source(b, sigma)
    blocks = format_blocks(dominant_source_blocks(b, sigma)) or "1"
    text = f"a = ({format_tuple(a)})\nX = {blocks}"
    return text, {"sigma": format_sigma(sigma), "b": list(b), "a": list(a), "X": word, "X_display": blocks}


def _do_weights(sigma, b, cache, budget, args):
    coords, parity = lambda_gl(b, sigma)
    if args.z is not None:
        lam = [_fmt_frac(x) for x in lambda_q(b, sigma, args.z, args.odd)]
    else:
        lam = _symbolic_lambda(b, sigma) + (["1"] if args.odd else [])
    text = (
        f"lambda  = ({', '.join(lam)})\n"
        f"lambda' = ({', '.join(str(c) for c in coords)})\n"
        f"parity  = {parity}"
    )
    return text, {"sigma": format_sigma(sigma), "b": list(b), "lambda": lam, "lambda_prime": coords, "parity": parity}


_BATCHABLE: dict[str, Callable] = {"compute": _do_compute, "source": _do_source, "weights": _do_weights}


def _parse_z(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise InvalidInput(f"malformed rational z={text!r}") from None


def _parse_line(line: str):
    try:
        s, t = line.split(";")
    except ValueError:
        raise InvalidInput(f"batch line {line!r} is not of the form 'S;T'") from None
    sigma, b = parse_sigma(s), parse_tuple(t)
    if len(b) != len(sigma):
        raise InvalidInput(f"tuple ({format_tuple(b)}) does not match sign sequence {s.strip()}")
    return sigma, b


def _batch_items(cmd, pairs, cache, budget, args) -> list[dict]:
    out = []
    for sigma, b in pairs:
        try:
            _, obj = _BATCHABLE[cmd](sigma, b, cache, budget, args)
            if cmd == "compute":
                obj = {"sigma": format_sigma(sigma), "b": list(b), "vector": obj}
        except BudgetExceeded as exc:
            obj = {"sigma": format_sigma(sigma), "b": list(b), "error": "budget", "message": str(exc)}
        out.append(obj)
    return out


def _batch_worker(payload):
    # runs in a child process with its own cache; the parent merges afterwards
    cmd, pairs, budget, z, odd = payload
    cache = CanonicalCache()
    out = _batch_items(cmd, pairs, cache, budget, argparse.Namespace(z=z, odd=odd))
    return out, cache.to_json()


def _run_batch(args, cache, budget, stdin: TextIO, stdout: TextIO) -> int:
    pairs = [_parse_line(ln) for ln in stdin.read().splitlines() if ln.strip()]
    jobs = max(1, min(args.jobs, len(pairs) or 1))
    if jobs == 1:
        ordered = _batch_items(args.command, pairs, cache, budget, args)
    else:
        payloads = [(args.command, pairs[k::jobs], budget, getattr(args, "z", None), getattr(args, "odd", False)) for k in range(jobs)]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            raw = list(pool.map(_batch_worker, payloads))
        ordered = [None] * len(pairs)
        for k, (res, cache_json) in enumerate(raw):
            cache.merge(CanonicalCache.from_json(cache_json))
            ordered[k::jobs] = res
    status = EXIT_OK
    for obj in ordered:
        if "error" in obj:
            status = EXIT_BUDGET
        stdout.write(_dumps(obj) + "\n")
    return status


# -- argument parsing ---------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit JSON instead of text")
    common.add_argument("--cache", metavar="FILE", help="read and update a persistent result cache")
    common.add_argument("--max-depth", type=int, default=Budget.max_recursion_depth)
    common.add_argument("--max-steps", type=int, default=Budget.max_correction_steps)

    p = _Parser(prog="canbasis", description="Canonical basis elements and KL polynomials for mixed tensor spaces of U_q(sl_inf).")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("compute", parents=[common], help="print the canonical basis element c_b")
    c.add_argument("--sigma")
    c.add_argument("--b", required=True, help="tuple like 1,2,2,1, or '-' for batch input on stdin")
    c.add_argument("--jobs", type=int, default=1, help="worker processes for batch mode")

    for name, hlp in (("klpoly", "print d_{a,b}(q)"), ("mult", "print d_{a,b}(1)"), ("bruhat", "compare a and b")):
        s = sub.add_parser(name, parents=[common], help=hlp)
        s.add_argument("--sigma", required=True)
        s.add_argument("--a", required=True)
        s.add_argument("--b", required=True)

    s = sub.add_parser("source", parents=[common], help="dominant typical source (a, X) of b")
    s.add_argument("--sigma")
    s.add_argument("--b", required=True)
    s.add_argument("--jobs", type=int, default=1)

    w = sub.add_parser("weights", parents=[common], help="weight dictionaries of b")
    w.add_argument("--sigma")
    w.add_argument("--b", required=True)
    w.add_argument("--z", type=str, default=None, help="rational z with 2z not an integer, e.g. 1/3")
    w.add_argument("--odd", action="store_true", help="append the extra coordinate of the odd-n variant")
    w.add_argument("--jobs", type=int, default=1)

    a = sub.add_parser("act", parents=[common], help="apply f_i or e_i to a vector read from JSON")
    a.add_argument("--sigma")
    a.add_argument("--op", choices=("f", "e"), required=True)
    a.add_argument("--i", type=int, required=True)
    a.add_argument("--vec", required=True, metavar="FILE", help="vector JSON file, or '-' for stdin")
    return p


def _sigma_and_tuples(args, *names) -> tuple:
    if args.sigma is None:
        raise InvalidInput("--sigma is required")
    sigma = parse_sigma(args.sigma)
    out = [sigma]
    for name in names:
        t = parse_tuple(getattr(args, name))
        if len(t) != len(sigma):
            raise InvalidInput(f"--{name} ({format_tuple(t)}) does not match sign sequence {args.sigma}")
        out.append(t)
    return tuple(out)


def _dispatch(args, cache, budget, stdin, stdout) -> int:
    cmd = args.command
    if cmd in _BATCHABLE and args.b.strip() == "-":
        if getattr(args, "z", None) is not None:
            args.z = _parse_z(args.z)
        return _run_batch(args, cache, budget, stdin, stdout)

    if cmd in _BATCHABLE:
        sigma, b = _sigma_and_tuples(args, "b")
        if getattr(args, "z", None) is not None:
            args.z = _parse_z(args.z)
        text, obj = _BATCHABLE[cmd](sigma, b, cache, budget, args)
    elif cmd in ("klpoly", "mult"):
        sigma, a, b = _sigma_and_tuples(args, "a", "b")
        poly = kl_poly(a, b, sigma, cache, budget)
        base = {"sigma": format_sigma(sigma), "a": list(a), "b": list(b)}
        if cmd == "klpoly":
            text, obj = str(poly), {**base, "d": poly.to_json()}
        else:
            text, obj = str(poly.eval_one()), {**base, "multiplicity": poly.eval_one()}
    elif cmd == "bruhat":
        sigma, a, b = _sigma_and_tuples(args, "a", "b")
        text = compare(a, b, sigma)
        obj = {"sigma": format_sigma(sigma), "a": list(a), "b": list(b), "relation": text}
    elif cmd == "act":
        raw = stdin.read() if args.vec == "-" else Path(args.vec).read_text()
        try:
            vec = TensorVector.from_json(json.loads(raw))
        except json.JSONDecodeError as exc:
            raise InvalidInput(f"vector file is not valid JSON: {exc}") from None
        if args.sigma is not None and parse_sigma(args.sigma) != vec.sigma:
            raise InvalidInput(f"--sigma {args.sigma} does not match the vector's {format_sigma(vec.sigma)}")
        vec = (f_act if args.op == "f" else e_act)(args.i, vec)
        text, obj = str(vec), vec.to_json()
    else:  # pragma: no cover - argparse restricts choices
        raise InvalidInput(f"unknown subcommand {cmd}")

    stdout.write((_dumps(obj) if args.json else text) + "\n")
    return EXIT_OK


def run(argv: Sequence[str] | None = None, stdin: TextIO | None = None, stdout: TextIO | None = None,
        stderr: TextIO | None = None) -> int:
    stdin = stdin or sys.stdin
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except InvalidInput as exc:
        stderr.write(f"canbasis: invalid input: {exc}\n")
        return EXIT_INVALID
    except SystemExit as exc:  # --help
        return int(exc.code or 0)

    try:
        budget = Budget(args.max_depth, args.max_steps)
        cache = CanonicalCache()
        cache_path = Path(args.cache) if args.cache else None
        if cache_path is not None and cache_path.exists():
            cache = CanonicalCache.load(cache_path)
        before = len(cache)
        status = _dispatch(args, cache, budget, stdin, stdout)
        if cache_path is not None and status == EXIT_OK and (len(cache) != before or not cache_path.exists()):
            cache.save(cache_path)
        return status
    except InvalidInput as exc:
        stderr.write(f"canbasis: invalid input: {exc}\n")
        return EXIT_INVALID
    except OSError as exc:
        stderr.write(f"canbasis: invalid input: {exc}\n")
        return EXIT_INVALID
    except BudgetExceeded as exc:
        stderr.write(f"canbasis: budget exceeded: {exc}\n")
        return EXIT_BUDGET


def main() -> None:
    sys.exit(run())
