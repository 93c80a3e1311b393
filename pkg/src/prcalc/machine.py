"""Iterative evaluator: a frame machine with an ordinal termination measure.

A configuration is a stack of frames plus the current value.  Each frame
carries an ordinal cost and every transition strictly lowers the natural
sum of the frame costs, so the measure witnesses termination; the evaluator
checks the descent at every step and reports a violation as an outcome
rather than trusting the design.  Complexity zero holds exactly on the
empty stack, where stepping is a no-op.

Configurations encode as (code, value) pairs: the stack folds into a
composition chain whose captured values travel as machine-internal
constants.  That encoding is what the reflected operators act on: edot
decodes a configuration number, fires one transition, and re-encodes;
cdot reports the decoded configuration's complexity as an ordinal code;
dminus searches for the step count at which the reflected complexity hits
zero, running this same machine on a shared fuel tank.

Fuel counts machine steps, including every step taken inside reflected
runs, so one budget bounds the total work of an evaluation.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Tuple, Union

from .coding import (
    IllTyped, decode_value, encode_ord, encode_value, from_num, hashc_num,
    num, sd_pair, sd_unpair,
)
from .ordinal import (
    LESS, Ord, ord_cmp, ord_brackets, ord_nat_scale, ord_nat_sum,
    ord_omega_shift,
)
from .surface import print_term, print_value
from .term import (
    Abstr, Bang, CDot, Comp, ConstVal, Cyl, DMinus, EDot, EqNat, EvalError,
    FalseC, HashC, Id, Incl, Iter, NAT, NN, Nat, NatV, NotC, Obj, Pair,
    PairV, Prod, ProjL, ProjR, Restrict, Succ, Term, TrueC, TypeMismatch,
    UNITV, Unit, UnitV, Value, ZeroC, eval_structural, shape_fits, typecheck,
)

DEFAULT_FUEL = 10 ** 6

_ONE: Ord = (1,)


# ---------------------------------------------------------------------------
# code complexity

_cx_memo: Dict[int, Tuple[Term, Ord]] = {}
_MEMO_CAP = 200_000

# reflected-step caches: deep towers of self-interpretation revisit the same
# coded configurations at every level
_ccost_memo: Dict[int, int] = {}
_estep_memo: Dict[Tuple[int, int], Tuple[int, int]] = {}


def complexity(c: Term) -> Ord:
    """The ordinal measure of a code.

    Administrative constants are chosen so that every machine transition
    descends strictly: unfolding a composition splits its cost into the two
    application frames with one unit to spare, a pair costs its components
    plus the bookkeeping frames plus one, and an iteration sits one omega
    power above its body, which dominates the finite-scale pending frame it
    unfolds into.  Reflected operators cost a flat unit; their real work is
    accounted as nested fuel, not as measure.
    """
    hit = _cx_memo.get(id(c))
    if hit is not None and hit[0] is c:
        return hit[1]
    if isinstance(c, Comp):
        out = ord_nat_sum(ord_nat_sum(complexity(c.f), complexity(c.g)), (2,))
    elif isinstance(c, Pair):
        out = ord_nat_sum(ord_nat_sum(complexity(c.f), complexity(c.g)), (4,))
    elif isinstance(c, Cyl):
        out = ord_nat_sum(complexity(c.g), (2,))
    elif isinstance(c, Restrict):
        out = ord_nat_sum(
            ord_nat_sum(complexity(c.f), complexity(c.ab.chi)), (2,))
    elif isinstance(c, Iter):
        out = ord_omega_shift(ord_nat_sum(complexity(c.g), _ONE))
    elif isinstance(c, (DMinus, CDot, EDot, HashC)):
        out = _ONE
    else:
        out = ()
    if len(_cx_memo) > _MEMO_CAP:
        _cx_memo.clear()
    _cx_memo[id(c)] = (c, out)
    return out


# ---------------------------------------------------------------------------
# frames

@dataclass(frozen=True)
class Apply:
    code: Term


@dataclass(frozen=True)
class PairLeft:
    # waiting for the left component; fires with the left result in current
    g: Term
    saved: Value
    left_cod: Obj


@dataclass(frozen=True)
class PairRight:
    # waiting for the right component; fires with the right result in current
    left: Value
    left_obj: Obj
    right_cod: Obj


@dataclass(frozen=True)
class IterPending:
    g: Term
    remaining: int


@dataclass(frozen=True)
class RestrictCheck:
    ab: Abstr


Frame = Union[Apply, PairLeft, PairRight, IterPending, RestrictCheck]


def frame_cost(fr: Frame) -> Ord:
    """Every frame costs at least one, so zero total means empty stack.

    Descent margins per transition: applying a basic constant pops its
    whole cost (>= 1); a composition frame of cost f+g+3 becomes two apply
    frames of cost f+g+2; a pair frame of cost f+g+5 becomes apply f plus a
    PairLeft of cost f+g+4, the PairLeft then becomes apply g plus a unit
    PairRight with one to spare; an iteration frame omega-dominates the
    k-scaled pending frame it unfolds into; a pending frame sheds exactly
    one unit per unfolding; the reflected operators pop a flat cost of two.
    """
    if isinstance(fr, Apply):
        return ord_nat_sum(complexity(fr.code), _ONE)
    if isinstance(fr, PairLeft):
        return ord_nat_sum(complexity(fr.g), (3,))
    if isinstance(fr, PairRight):
        return _ONE
    if isinstance(fr, IterPending):
        per = ord_nat_sum(complexity(fr.g), (2,))
        return ord_nat_sum(ord_nat_scale(fr.remaining, per), _ONE)
    if isinstance(fr, RestrictCheck):
        return ord_nat_sum(complexity(fr.ab.chi), _ONE)
    raise TypeError(f"not a frame: {fr!r}")


def _acc_add(acc: List[int], o: Ord) -> None:
    if len(acc) < len(o):
        acc.extend([0] * (len(o) - len(acc)))
    for i, c in enumerate(o):
        acc[i] += c


def _acc_sub(acc: List[int], o: Ord) -> None:
    for i, c in enumerate(o):
        acc[i] -= c


class Config:
    """Machine state: frame stack (top at the end), current value, and the
    object the value inhabits.

    The total complexity is maintained incrementally: the natural sum is a
    coefficientwise sum, hence cancellative, so pushing adds a frame's cost
    and popping subtracts it.
    """

    __slots__ = ("frames", "current", "value_obj", "_acc")

    def __init__(self, frames, current: Value, value_obj: Obj):
        self.frames: List[Frame] = list(frames)
        self.current = current
        self.value_obj = value_obj
        acc: List[int] = []
        for fr in self.frames:
            _acc_add(acc, frame_cost(fr))
        self._acc = acc

    def ord(self) -> Ord:
        acc = self._acc
        i = len(acc)
        while i and acc[i - 1] == 0:
            i -= 1
        return tuple(acc[:i])

    def halted(self) -> bool:
        return not self.frames

    def _push(self, fr: Frame) -> None:
        self.frames.append(fr)
        _acc_add(self._acc, frame_cost(fr))

    def _pop(self) -> Frame:
        fr = self.frames.pop()
        _acc_sub(self._acc, frame_cost(fr))
        return fr

    def __repr__(self):
        return (f"Config(frames={len(self.frames)}, "
                f"complexity={ord_brackets(self.ord())})")


def config_complexity(cfg: Config) -> Ord:
    """Natural sum of the frame costs, recomputed from scratch."""
    total: Ord = ()
    for fr in cfg.frames:
        total = ord_nat_sum(total, frame_cost(fr))
    return total


# ---------------------------------------------------------------------------
# fuel and internal run errors

class _OutOfFuel(Exception):
    def __init__(self, nested: bool):
        self.nested = nested


class _DescentErr(Exception):
    def __init__(self, step: int, before: Ord, after: Ord):
        self.step, self.before, self.after = step, before, after


class _StatErr(Exception):
    def __init__(self, step: int):
        self.step = step


class FuelTank:
    """Shared step budget; reflected runs draw from the caller's tank."""

    __slots__ = ("remaining", "depth")

    def __init__(self, fuel: int):
        self.remaining = fuel
        self.depth = 0

    def spend(self) -> None:
        if self.remaining <= 0:
            raise _OutOfFuel(self.depth > 0)
        self.remaining -= 1


# ---------------------------------------------------------------------------
# configuration coding (the pairing and value codecs live in coding)


def _frame_code(fr: Frame) -> Term:
    """The code a frame contributes to the folded chain.  Captured values
    ride along as machine-internal constants fed through a bang."""
    if isinstance(fr, Apply):
        return fr.code
    if isinstance(fr, PairLeft):
        a_obj, _ = typecheck(fr.g)
        return Pair(Id(fr.left_cod),
                    Comp(fr.g, Comp(ConstVal(a_obj, fr.saved),
                                    Bang(fr.left_cod))))
    if isinstance(fr, PairRight):
        return Pair(Comp(ConstVal(fr.left_obj, fr.left), Bang(fr.right_cod)),
                    Id(fr.right_cod))
    if isinstance(fr, IterPending):
        a_obj, _ = typecheck(fr.g)
        return Comp(Iter(fr.g),
                    Pair(Id(a_obj),
                         Comp(ConstVal(NAT, NatV(fr.remaining)),
                              Bang(a_obj))))
    if isinstance(fr, RestrictCheck):
        return Restrict(Id(fr.ab.carrier), fr.ab)
    raise TypeError(f"not a frame: {fr!r}")


def encode_config(cfg: Config) -> Tuple[Term, Value]:
    """Fold the stack into one composition chain ending at the identity of
    the current value's object; structural evaluation of the chain on the
    current value yields the machine's result."""
    chain: Term = Id(cfg.value_obj)
    for fr in reversed(cfg.frames):
        chain = Comp(_frame_code(fr), chain)
    return chain, cfg.current


def _match_frame(code: Term) -> Frame:
    # PairLeft image: (id L) paired with g after a captured argument
    if (isinstance(code, Pair) and isinstance(code.f, Id)
            and isinstance(code.g, Comp) and isinstance(code.g.f, Comp)
            and isinstance(code.g.f.g, ConstVal)
            and isinstance(code.g.f.f, Bang)
            and code.g.f.f.obj == code.f.obj):
        g, cv = code.g.g, code.g.f.g
        if typecheck(g)[0] == cv.obj:
            return PairLeft(g, cv.value, code.f.obj)
    # PairRight image: captured left result paired with (id R)
    if (isinstance(code, Pair) and isinstance(code.g, Id)
            and isinstance(code.f, Comp) and isinstance(code.f.g, ConstVal)
            and isinstance(code.f.f, Bang)
            and code.f.f.obj == code.g.obj):
        cv = code.f.g
        return PairRight(cv.value, cv.obj, code.g.obj)
    # IterPending image: iteration precomposed with a captured counter
    if (isinstance(code, Comp) and isinstance(code.g, Iter)
            and isinstance(code.f, Pair) and isinstance(code.f.f, Id)
            and isinstance(code.f.g, Comp)
            and isinstance(code.f.g.g, ConstVal)
            and isinstance(code.f.g.g.obj, Nat)
            and isinstance(code.f.g.g.value, NatV)
            and isinstance(code.f.g.f, Bang)
            and code.f.g.f.obj == code.f.f.obj):
        g = code.g.g
        if typecheck(g)[0] == code.f.f.obj:
            return IterPending(g, code.f.g.g.value.n)
    # RestrictCheck image: a restriction of the identity
    if (isinstance(code, Restrict) and isinstance(code.f, Id)
            and code.f.obj == code.ab.carrier):
        return RestrictCheck(code.ab)
    return Apply(code)


def _unfold(code: Term) -> Tuple[List[Frame], Obj]:
    """Invert the fold: peel the composition spine down to an identity.
    A code that does not end in one is a single application frame."""
    spine = []
    t = code
    while isinstance(t, Comp):
        spine.append(t.g)
        t = t.f
    if isinstance(t, Id):
        return [_match_frame(g) for g in spine], t.obj
    dom, _ = typecheck(code)
    return [Apply(code)], dom


def decode_config(code: Term, value: Value) -> Config:
    frames, t0 = _unfold(code)
    if not shape_fits(t0, value):
        raise EvalError("value does not fit the configuration's object")
    return Config(frames, value, t0)


def _config_to_nums(cfg: Config) -> Tuple[int, int]:
    code, value = encode_config(cfg)
    return num(code), encode_value(cfg.value_obj, value)


def _config_from_nums(nu: int, nv: int) -> Config:
    frames, t0 = _unfold(from_num(nu))
    return Config(frames, decode_value(t0, nv), t0)


# ---------------------------------------------------------------------------
# transitions

_BASIC = (Id, Bang, ZeroC, Succ, ProjL, ProjR, TrueC, FalseC, NotC, EqNat,
          Incl, ConstVal)


def _fire(cfg: Config, tank: FuelTank) -> None:
    """One transition; no-op on the empty stack (stationarity)."""
    if not cfg.frames:
        return
    top = cfg.frames[-1]
    if isinstance(top, Apply):
        _apply(cfg, top.code, tank)
    elif isinstance(top, PairLeft):
        cfg._pop()
        g_dom, g_cod = typecheck(top.g)
        cfg._push(PairRight(cfg.current, top.left_cod, g_cod))
        cfg._push(Apply(top.g))
        cfg.current = top.saved
        cfg.value_obj = g_dom
    elif isinstance(top, PairRight):
        cfg._pop()
        cfg.current = PairV(top.left, cfg.current)
        cfg.value_obj = Prod(top.left_obj, top.right_cod)
    elif isinstance(top, IterPending):
        cfg._pop()
        if top.remaining > 0:
            cfg._push(IterPending(top.g, top.remaining - 1))
            cfg._push(Apply(top.g))
    elif isinstance(top, RestrictCheck):
        ab = top.ab
        if eval_structural(ab.chi, cfg.current) != NatV(1):
            raise EvalError("restriction predicate rejected the value")
        cfg._pop()
        cfg.value_obj = ab
    else:
        raise EvalError(f"unknown frame {top!r}")


def _apply(cfg: Config, u: Term, tank: FuelTank) -> None:
    if isinstance(u, _BASIC):
        cfg._pop()
        cfg.current = eval_structural(u, cfg.current)
        cfg.value_obj = typecheck(u)[1]
    elif isinstance(u, Comp):
        cfg._pop()
        cfg._push(Apply(u.g))
        cfg._push(Apply(u.f))
    elif isinstance(u, Pair):
        cfg._pop()
        _, f_cod = typecheck(u.f)
        cfg._push(PairLeft(u.g, cfg.current, f_cod))
        cfg._push(Apply(u.f))
    elif isinstance(u, Cyl):
        cur = cfg.current
        if not isinstance(cur, PairV):
            raise EvalError("cylinder expects a pair")
        cfg._pop()
        g_dom, g_cod = typecheck(u.g)
        cfg._push(PairRight(cur.left, u.c, g_cod))
        cfg._push(Apply(u.g))
        cfg.current = cur.right
        cfg.value_obj = g_dom
    elif isinstance(u, Iter):
        cur = cfg.current
        if not (isinstance(cur, PairV) and isinstance(cur.right, NatV)):
            raise EvalError("iteration expects (start, count)")
        cfg._pop()
        cfg._push(IterPending(u.g, cur.right.n))
        cfg.current = cur.left
        cfg.value_obj = typecheck(u.g)[0]
    elif isinstance(u, Restrict):
        cfg._pop()
        cfg._push(RestrictCheck(u.ab))
        cfg._push(Apply(u.f))
    elif isinstance(u, DMinus):
        cfg._pop()
        a = cfg.current
        dom_p, _ = typecheck(u.p)
        s, k = a, 0
        while True:
            r = _run_nested(u.c, s, tank)
            if not isinstance(r, NatV):
                raise EvalError("reflected measure returned a non-number")
            if r.n == 0:
                break
            s = _run_nested(u.p, s, tank)
            k += 1
        cfg.current = PairV(a, NatV(k))
        cfg.value_obj = Prod(dom_p, NAT)
    elif isinstance(u, CDot):
        nu, _ = _reflected_input(cfg.current)
        cfg._pop()
        cost = _ccost_memo.get(nu)
        if cost is None:
            # the measure factors through the code: the value number is unused
            frames, _ = _unfold(from_num(nu))
            total: Ord = ()
            for fr in frames:
                total = ord_nat_sum(total, frame_cost(fr))
            cost = encode_ord(total)
            if len(_ccost_memo) > _MEMO_CAP:
                _ccost_memo.clear()
            _ccost_memo[nu] = cost
        cfg.current = NatV(cost)
        cfg.value_obj = NAT
    elif isinstance(u, EDot):
        nu, nv = _reflected_input(cfg.current)
        cfg._pop()
        hit = _estep_memo.get((nu, nv))
        if hit is not None:
            # replay the recorded step: same single spend at nested depth,
            # so exhaustion surfaces exactly as it would on a fresh compute
            tank.depth += 1
            try:
                tank.spend()
            finally:
                tank.depth -= 1
            cfg.current = PairV(NatV(hit[0]), NatV(hit[1]))
        else:
            sub = _config_from_nums(nu, nv)
            if sub.frames:
                fuel_before = tank.remaining
                tank.depth += 1
                try:
                    _checked_step(sub, tank, 0)
                finally:
                    tank.depth -= 1
                out = _config_to_nums(sub)
                # only cache steps that cost exactly one unit: anything that
                # recursed into a nested run has fuel effects of its own
                if tank.remaining == fuel_before - 1:
                    if len(_estep_memo) > _MEMO_CAP:
                        _estep_memo.clear()
                    _estep_memo[(nu, nv)] = out
                cfg.current = PairV(NatV(out[0]), NatV(out[1]))
        # a halted configuration is a fixed point of the reflected step
        cfg.value_obj = NN
    elif isinstance(u, HashC):
        cur = cfg.current
        if not isinstance(cur, NatV):
            raise EvalError("hash expects a number")
        cfg._pop()
        cfg.current = NatV(hashc_num(cur.n))
        cfg.value_obj = NAT
    else:
        raise EvalError(f"unknown code constructor {type(u).__name__}")


def _reflected_input(v: Value) -> Tuple[int, int]:
    if (isinstance(v, PairV) and isinstance(v.left, NatV)
            and isinstance(v.right, NatV)):
        return v.left.n, v.right.n
    raise EvalError("reflected operator expects a pair of numbers")


def _run_nested(code: Term, value: Value, tank: FuelTank) -> Value:
    dom, _ = typecheck(code)
    sub = Config([Apply(code)], value, dom)
    tank.depth += 1
    try:
        return _machine_run(sub, tank)
    finally:
        tank.depth -= 1


def step(cfg: Config, tank: Optional[FuelTank] = None) -> Config:
    """Fire the top frame once; mutates and returns cfg.  Reflected
    operators draw nested fuel from tank (a fresh default tank if none)."""
    _fire(cfg, tank if tank is not None else FuelTank(DEFAULT_FUEL))
    return cfg


# ---------------------------------------------------------------------------
# the run loop

def _checked_step(cfg: Config, tank: FuelTank, idx: int) -> None:
    before = cfg.ord()
    tank.spend()
    _fire(cfg, tank)
    after = cfg.ord()
    if ord_cmp(after, before) != LESS:
        raise _DescentErr(idx, before, after)


def _machine_run(cfg: Config, tank: FuelTank,
                 tail: Optional[deque] = None,
                 on_record: Optional[Callable[[int, Config], None]] = None,
                 ) -> Value:
    idx = 0
    while not cfg.halted():
        if on_record is not None:
            on_record(idx, cfg)
        _checked_step(cfg, tank, idx)
        if tail is not None:
            tail.append((idx, cfg.ord()))
        idx += 1
    # stationarity probe: stepping the empty stack must change nothing
    cur, vo = cfg.current, cfg.value_obj
    _fire(cfg, tank)
    if cfg.frames or cfg.current is not cur or cfg.value_obj is not vo:
        raise _StatErr(idx)
    return cfg.current


# ---------------------------------------------------------------------------
# outcomes

@dataclass(frozen=True)
class Done:
    value: Value


@dataclass(frozen=True)
class FuelExhausted:
    tail: Tuple[Tuple[int, Ord], ...]  # trailing (step, complexity) entries


@dataclass(frozen=True)
class NestedFuelExhausted:
    tail: Tuple[Tuple[int, Ord], ...]


@dataclass(frozen=True)
class DescentViolation:
    step: int
    before: Ord
    after: Ord


@dataclass(frozen=True)
class StatViolation:
    step: int


@dataclass(frozen=True)
class EvalFailure:
    reason: str


Outcome = Union[Done, FuelExhausted, NestedFuelExhausted, DescentViolation,
                StatViolation, EvalFailure]


def _launch(u: Term, v: Value) -> Config:
    dom, _ = typecheck(u)
    if not shape_fits(dom, v):
        raise TypeMismatch(f"argument does not fit {dom}")
    return Config([Apply(u)], v, dom)


def eval_iterative(u: Term, v: Value, fuel: int = DEFAULT_FUEL,
                   on_record: Optional[Callable[[int, Config], None]] = None,
                   ) -> Outcome:
    """Run the machine from ([Apply(u)], v) until complexity zero."""
    cfg = _launch(u, v)
    tank = FuelTank(fuel)
    tail: deque = deque(maxlen=10)
    try:
        result = _machine_run(cfg, tank, tail=tail, on_record=on_record)
    except _OutOfFuel as e:
        if e.nested:
            return NestedFuelExhausted(tuple(tail))
        return FuelExhausted(tuple(tail))
    except _DescentErr as e:
        return DescentViolation(e.step, e.before, e.after)
    except _StatErr as e:
        return StatViolation(e.step)
    except (EvalError, IllTyped) as e:
        return EvalFailure(str(e))
    return Done(result)


def outcome_kind(o: Outcome) -> str:
    return type(o).__name__


# ---------------------------------------------------------------------------
# tracing and agreement reports

def _render_frame(fr: Frame) -> str:
    if isinstance(fr, Apply):
        return "Apply:" + print_term(fr.code, const_sigil=True)
    if isinstance(fr, PairLeft):
        return (f"PairLeft[{print_value(fr.saved)}]:"
                + print_term(fr.g, const_sigil=True))
    if isinstance(fr, PairRight):
        return f"PairRight[{print_value(fr.left)}]"
    if isinstance(fr, IterPending):
        return (f"IterPending[{fr.remaining}]:"
                + print_term(fr.g, const_sigil=True))
    return "RestrictCheck:" + print_term(fr.ab.chi, const_sigil=True)


def trace(u: Term, v: Value, fuel: int = DEFAULT_FUEL,
          ) -> Tuple[List[str], Outcome]:
    """One record per fired step, deterministic; returns (records, outcome)."""
    records: List[str] = []

    def rec(idx: int, cfg: Config) -> None:
        frames = "|".join(_render_frame(fr) for fr in cfg.frames)
        records.append(
            f"step={idx} frames={frames} "
            f"complexity={ord_brackets(cfg.ord())} "
            f"value={print_value(cfg.current)}")

    outcome = eval_iterative(u, v, fuel, on_record=rec)
    return records, outcome


@dataclass(frozen=True)
class ObjectivityEntry:
    arg: Value
    kind: str  # match | mismatch | both_fail | fuel
    note: str


@dataclass(frozen=True)
class ObjectivityReport:
    term: Term
    entries: Tuple[ObjectivityEntry, ...]

    @property
    def mismatches(self) -> Tuple[ObjectivityEntry, ...]:
        return tuple(e for e in self.entries if e.kind == "mismatch")

    @property
    def fuel_exhaustions(self) -> Tuple[ObjectivityEntry, ...]:
        return tuple(e for e in self.entries if e.kind == "fuel")

    @property
    def ok(self) -> bool:
        return not self.mismatches and not self.fuel_exhaustions


def objectivity_check(t: Term, args, fuel: int = DEFAULT_FUEL,
                      ) -> ObjectivityReport:
    """Compare the machine against structural evaluation on sample args."""
    entries = []
    for arg in args:
        expected: Optional[Value] = None
        structural_err = ""
        try:
            expected = eval_structural(t, arg)
        except EvalError as e:
            structural_err = str(e)
        got = eval_iterative(t, arg, fuel)
        if isinstance(got, Done):
            if expected is not None and got.value == expected:
                kind, note = "match", ""
            else:
                kind = "mismatch"
                note = (f"structural {structural_err or print_value(expected)}"
                        f" vs machine {print_value(got.value)}")
        elif isinstance(got, EvalFailure):
            if expected is None:
                kind, note = "both_fail", got.reason
            else:
                kind, note = "mismatch", f"machine failed: {got.reason}"
        elif isinstance(got, (FuelExhausted, NestedFuelExhausted)):
            kind, note = "fuel", outcome_kind(got)
        else:
            kind, note = "mismatch", f"{outcome_kind(got)}: {got}"
        entries.append(ObjectivityEntry(arg, kind, note))
    return ObjectivityReport(t, tuple(entries))


__all__ = [
    "Apply", "Config", "DEFAULT_FUEL", "DescentViolation", "Done",
    "EvalFailure", "Frame", "FuelExhausted", "FuelTank", "IterPending",
    "NestedFuelExhausted", "ObjectivityEntry", "ObjectivityReport",
    "Outcome", "PairLeft", "PairRight", "RestrictCheck", "StatViolation",
    "complexity", "config_complexity", "decode_config", "decode_value",
    "encode_config", "encode_value", "eval_iterative", "eval_structural",
    "frame_cost", "objectivity_check", "outcome_kind", "sd_pair",
    "sd_unpair", "step", "trace",
]
