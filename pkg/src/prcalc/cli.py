"""Command line front end.

Subcommands cover the whole toolbox: typecheck and evaluate terms, quote
them as numbers, trace machine runs, drive complexity-controlled
iterations, synthesize choice inverses, minimize predicates, probe the
antidiagonal, and sweep a term corpus against the structural oracle.

Exit codes: 0 on success, 1 when an evaluation fails (fuel, descent,
stationarity, a rejected restriction), 2 on usage or type errors.  With
`--format records` output is line-delimited key=value and byte-identical
for identical invocations; `--seed` pins all sampling.
"""

from __future__ import annotations

import argparse
import os
import random
import sys
from typing import List, Optional, Tuple

from .coding import IllTyped, NotAPredicateCode, num
from .diagonal import liar_report_lines, run_liar
from .gen import find_member, random_value
from .machine import (
    DescentViolation, Done, EvalFailure, FuelExhausted, NestedFuelExhausted,
    Outcome, StatViolation, eval_iterative, trace,
)
from .ordinal import LESS, Ord, descent_check, ord_brackets, ord_cmp
from .partial import (
    CCIDone, DescViolation, UnsupportedConstructor, audit_cci, cci_run,
    load_cci, middle_inverse_total, mu_search, structural_middle_inverse,
)
from .partial import Done as ParDone
from .partial import FuelExhausted as ParFuel
from .surface import ParseError, parse_term, parse_value, print_obj, \
    print_term, print_value
from .term import Comp, EvalError, TypeMismatch, eval_structural, typecheck

DEFAULT_FUEL = 10 ** 6
DEFAULT_LAW_SAMPLES = 200

__all__ = ["main"]


def _parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(prog="prcalc", description=__doc__)
    sub = top.add_subparsers(dest="subcommand", required=True)
    names = {
        "check": "print the domain and codomain of a term",
        "eval": "evaluate a term at an argument",
        "quote": "print a term's code and its number",
        "run": "run the machine and emit the step trace",
        "cci": "run or audit a complexity-controlled iteration",
        "choice": "synthesize a middle inverse and check its law",
        "mu": "minimize a predicate at an argument",
        "liar": "evaluate the antidiagonal at its own index",
        "corpus": "sweep a corpus file against the structural oracle",
    }
    for name, help_text in names.items():
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--term", metavar="PATH", help="term (or corpus) file")
        p.add_argument("--arg", metavar="V",
                       help="value literal: naturals, () for unit, (v,w)")
        p.add_argument("--mode", choices=("structural", "iterative"),
                       default="structural")
        p.add_argument("--fuel", type=int, default=DEFAULT_FUEL)
        p.add_argument("--trace", metavar="PATH", dest="trace_path",
                       help="also write the output records to this file")
        p.add_argument("--audit", type=int, metavar="N",
                       help="number of sampled checks")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--format", choices=("text", "records"),
                       default="text")
    return top


# ---------------------------------------------------------------------------
# small helpers shared by the handlers

class _Usage(Exception):
    """Bad invocation shape: missing flags, unreadable files."""


def _need(value, flag: str, sub: str):
    if value is None:
        raise _Usage(f"{sub} requires {flag}")
    return value


def _read(path: str) -> str:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return fh.read()
    except OSError as e:
        raise _Usage(str(e)) from e


def _load_term(path: str):
    return parse_term(_read(path))


def _emit(lines: List[str], trace_path: Optional[str]) -> None:
    text = "\n".join(lines) + "\n" if lines else ""
    sys.stdout.write(text)
    if trace_path:
        with open(trace_path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _exhaustion_step(out) -> int:
    return out.tail[-1][0] + 1 if out.tail else 0


def _outcome_lines(out: Outcome, records: bool) -> Tuple[List[str], int]:
    """Render a machine outcome; the exit code distinguishes failures."""
    if isinstance(out, Done):
        val = print_value(out.value)
        return (["outcome=Done", f"value={val}"] if records else [val]), 0
    if isinstance(out, FuelExhausted):
        step = _exhaustion_step(out)
        if records:
            return ["outcome=FuelExhausted", f"step={step}"], 1
        return [f"fuel exhausted at step {step}"], 1
    if isinstance(out, NestedFuelExhausted):
        step = _exhaustion_step(out)
        if records:
            return ["outcome=NestedFuelExhausted", f"step={step}"], 1
        return [f"nested fuel exhausted at step {step}"], 1
    if isinstance(out, DescentViolation):
        desc = (f"step={out.step} before={ord_brackets(out.before)} "
                f"after={ord_brackets(out.after)}")
        if records:
            return ["outcome=DescentViolation", desc], 1
        return [f"descent violation at {desc}"], 1
    if isinstance(out, StatViolation):
        if records:
            return ["outcome=StatViolation", f"step={out.step}"], 1
        return [f"stationarity violation at step {out.step}"], 1
    assert isinstance(out, EvalFailure)
    if records:
        return ["outcome=EvalFailure", f"reason={out.reason}"], 1
    return [f"evaluation failed: {out.reason}"], 1


# ---------------------------------------------------------------------------
# subcommand handlers

def _cmd_check(a) -> int:
    dom, cod = typecheck(_load_term(_need(a.term, "--term", "check")))
    if a.format == "records":
        _emit([f"dom={print_obj(dom)}", f"cod={print_obj(cod)}"],
              a.trace_path)
    else:
        _emit([f"{print_obj(dom)} -> {print_obj(cod)}"], a.trace_path)
    return 0


def _cmd_eval(a) -> int:
    t = _load_term(_need(a.term, "--term", "eval"))
    v = parse_value(_need(a.arg, "--arg", "eval"))
    if a.mode == "structural":
        try:
            got: Outcome = Done(eval_structural(t, v))
        except EvalError as e:
            got = EvalFailure(str(e))
    else:
        got = eval_iterative(t, v, a.fuel)
    lines, code = _outcome_lines(got, a.format == "records")
    _emit(lines, a.trace_path)
    return code


def _cmd_quote(a) -> int:
    t = _load_term(_need(a.term, "--term", "quote"))
    lines = [f"code={print_term(t)}", f"num={num(t)}"]
    if a.format != "records":
        lines = [print_term(t), str(num(t))]
    _emit(lines, a.trace_path)
    return 0


def _cmd_run(a) -> int:
    t = _load_term(_need(a.term, "--term", "run"))
    v = parse_value(_need(a.arg, "--arg", "run"))
    records, out = trace(t, v, a.fuel)
    out_lines, code = _outcome_lines(out, records=True)
    _emit(records + out_lines, a.trace_path)
    return code


def _cmd_cci(a) -> int:
    inst = load_cci(_read(_need(a.term, "--term", "cci")))
    lines: List[str] = []
    code = 0
    if a.arg is not None:
        got = cci_run(inst, parse_value(a.arg), a.fuel)
        if isinstance(got, CCIDone):
            if a.format == "records":
                lines += [f"value={print_value(got.value)}",
                          f"index={got.index}"]
            else:
                lines.append(f"({print_value(got.value)}, {got.index})")
        elif isinstance(got, DescViolation):
            lines.append(
                f"descent violation at step {got.step}: "
                f"{ord_brackets(got.before)} -> {ord_brackets(got.after)}")
            code = 1
        elif isinstance(got, ParFuel):
            lines.append(f"fuel exhausted after {got.fuel} steps")
            code = 1
        else:
            lines.append(f"stationarity violation at {print_value(got.state)}")
            code = 1
    if a.audit:
        rng = random.Random(f"{a.seed}:cci")
        args = [random_value(rng, inst.space) for _ in range(a.audit)]
        report = audit_cci(inst, args, a.fuel)
        for e in report.entries:
            lines.append(f"audit arg={print_value(e.arg)} "
                         f"outcome={e.outcome} index={e.index}")
        lines.append(f"audit_ok={report.ok}")
        code = code or (0 if report.ok else 1)
    if a.arg is None and not a.audit:
        raise _Usage("cci requires --arg or --audit")
    _emit(lines, a.trace_path)
    return code


def _cmd_choice(a) -> int:
    f = _load_term(_need(a.term, "--term", "choice"))
    dom, _ = typecheck(f)
    if a.arg is not None:
        # the search-based inverse, evaluated at one point
        base = find_member(dom)
        if base is None:
            raise _Usage("could not find a fallback point in the domain")
        g = middle_inverse_total(f, base, a.fuel)
        _emit([print_value(g(parse_value(a.arg)))], a.trace_path)
        return 0
    w = structural_middle_inverse(f)
    fgf = Comp(f, Comp(w, f))
    n = a.audit or DEFAULT_LAW_SAMPLES
    rng = random.Random(f"{a.seed}:choice")
    passes = 0
    for _ in range(n):
        x = random_value(rng, dom)
        passes += eval_structural(fgf, x) == eval_structural(f, x)
    if a.format == "records":
        lines = [f"witness={print_term(w)}", f"law={passes}/{n}"]
    else:
        lines = [print_term(w), f"law {passes}/{n}"]
    _emit(lines, a.trace_path)
    return 0 if passes == n else 1


def _cmd_mu(a) -> int:
    phi = _load_term(_need(a.term, "--term", "mu"))
    v = parse_value(_need(a.arg, "--arg", "mu"))
    got = mu_search(phi, v, a.fuel)
    if isinstance(got, ParFuel):
        _emit([f"no witness below {got.fuel}"], a.trace_path)
        return 1
    _emit([f"index={got}" if a.format == "records" else str(got)],
          a.trace_path)
    return 0


def _cmd_liar(a) -> int:
    report = run_liar(a.fuel)
    _emit(liar_report_lines(report), a.trace_path)
    return 1 if report.verdict == "ContradictionValue" else 0


def _parse_corpus_line(line: str) -> Tuple[str, int, int]:
    parts = line.split()
    path, samples, cap = parts[0], 100, 12
    for part in parts[1:]:
        key, _, val = part.partition("=")
        if key == "samples":
            samples = int(val)
        elif key == "cap":
            cap = int(val)
        else:
            raise _Usage(f"unknown sampling key {key!r}")
    return path, samples, cap


def _cmd_corpus(a) -> int:
    corpus_path = _need(a.term, "--term", "corpus")
    base = os.path.dirname(os.path.abspath(corpus_path))
    lines: List[str] = []
    totals = {"terms": 0, "args": 0, "mismatches": 0,
              "descent_violations": 0, "fuel_exhausted": 0}
    max_steps = 0
    max_cx: Ord = ()
    for raw in _read(corpus_path).splitlines():
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        rel, samples, cap = _parse_corpus_line(stripped)
        t = parse_term(_read(os.path.join(base, rel)))
        dom, _ = typecheck(t)
        rng = random.Random(f"{a.seed}:{rel}")
        mismatches = fuel_out = desc = 0
        term_steps = 0
        term_cx: Ord = ()
        for _ in range(samples):
            arg = random_value(rng, dom, cap)
            ords: List[Ord] = []
            got = eval_iterative(t, arg, a.fuel,
                                 on_record=lambda i, c: ords.append(c.ord()))
            try:
                expected = eval_structural(t, arg)
            except EvalError:
                expected = None
            if isinstance(got, Done):
                mismatches += got.value != expected
            elif isinstance(got, EvalFailure):
                mismatches += expected is not None
            elif isinstance(got, (FuelExhausted, NestedFuelExhausted)):
                fuel_out += 1
            else:
                mismatches += 1
            if isinstance(got, DescentViolation) \
                    or descent_check(ords) is not None:
                desc += 1
            term_steps = max(term_steps, len(ords))
            if ords and ord_cmp(term_cx, ords[0]) == LESS:
                term_cx = ords[0]
        totals["terms"] += 1
        totals["args"] += samples
        totals["mismatches"] += mismatches
        totals["descent_violations"] += desc
        totals["fuel_exhausted"] += fuel_out
        max_steps = max(max_steps, term_steps)
        if ord_cmp(max_cx, term_cx) == LESS:
            max_cx = term_cx
        if a.format == "records":
            lines += [f"term={rel}", f"samples={samples}",
                      f"mismatches={mismatches}",
                      f"descent_violations={desc}",
                      f"fuel_exhausted={fuel_out}",
                      f"max_steps={term_steps}",
                      f"max_complexity={ord_brackets(term_cx)}"]
        else:
            lines.append(
                f"{rel}: samples={samples} mismatches={mismatches} "
                f"descent_violations={desc} fuel_exhausted={fuel_out} "
                f"max_steps={term_steps} "
                f"max_complexity={ord_brackets(term_cx)}")
    ok = not (totals["mismatches"] or totals["descent_violations"]
              or totals["fuel_exhausted"])
    if a.format == "records":
        lines += ["kind=corpus-summary"]
        lines += [f"{k}={v}" for k, v in totals.items()]
        lines += [f"max_steps={max_steps}",
                  f"max_complexity={ord_brackets(max_cx)}", f"ok={ok}"]
    else:
        lines.append(
            f"summary: terms={totals['terms']} args={totals['args']} "
            f"mismatches={totals['mismatches']} "
            f"descent_violations={totals['descent_violations']} "
            f"fuel_exhausted={totals['fuel_exhausted']} "
            f"max_steps={max_steps} max_complexity={ord_brackets(max_cx)} "
            f"ok={ok}")
    _emit(lines, a.trace_path)
    return 0 if ok else 1


_HANDLERS = {
    "check": _cmd_check,
    "eval": _cmd_eval,
    "quote": _cmd_quote,
    "run": _cmd_run,
    "cci": _cmd_cci,
    "choice": _cmd_choice,
    "mu": _cmd_mu,
    "liar": _cmd_liar,
    "corpus": _cmd_corpus,
}


def main(argv: Optional[List[str]] = None) -> int:
    args = _parser().parse_args(argv)
    try:
        return _HANDLERS[args.subcommand](args)
    except _Usage as e:
        print(f"usage error: {e}", file=sys.stderr)
        return 2
    except (ParseError, TypeMismatch, IllTyped, NotAPredicateCode,
            UnsupportedConstructor) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except EvalError as e:
        print(f"evaluation failed: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
