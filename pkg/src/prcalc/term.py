"""Objects, terms, values, typing, and the structural evaluator.

The term language is a categorical presentation of primitive recursion:
identities, the terminal map, zero sections, successor, projections, induced
pairs, composition, cylindrification and iteration, plus a two-element truth
object Two carved out of the naturals by a predicate, with inclusion and
runtime-checked corestriction.

Four reflected constructors (DMinus, CDot, EDot, HashC) belong to the coded
layer: they typecheck here but only the iterative machine can run them, and
the structural evaluator refuses them.  ConstVal is internal plumbing for the
machine's configuration encoding and has no surface form.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Optional, Tuple, Union


class TypeMismatch(Exception):
    """A term fails to typecheck."""


class EvalError(Exception):
    """A runtime failure: bad value shape, failed corestriction check,
    or a reflected constructor outside the machine."""


### objects


@dataclass(frozen=True)
class Unit:
    def __repr__(self) -> str:
        return "Unit"


@dataclass(frozen=True)
class Nat:
    def __repr__(self) -> str:
        return "Nat"


@dataclass(frozen=True)
class Prod:
    left: "Obj"
    right: "Obj"


@dataclass(frozen=True)
class Abstr:
    carrier: "Obj"
    chi: "Term"  # must typecheck as carrier -> Two


Obj = Union[Unit, Nat, Prod, Abstr]

UNIT = Unit()
NAT = Nat()


### values


@dataclass(frozen=True)
class UnitV:
    def __repr__(self) -> str:
        return "UnitV"


@dataclass(frozen=True)
class NatV:
    n: int


@dataclass(frozen=True)
class PairV:
    left: "Value"
    right: "Value"


Value = Union[UnitV, NatV, PairV]

UNITV = UnitV()


### terms

# Leaves carry the objects their typing needs; combinators carry subterms.
# None of them store their own type; typecheck() computes it.


@dataclass(frozen=True)
class Id:
    obj: Obj


@dataclass(frozen=True)
class Bang:
    obj: Obj


@dataclass(frozen=True)
class ZeroC:
    obj: Obj


@dataclass(frozen=True)
class Succ:
    pass


@dataclass(frozen=True)
class ProjL:
    left: Obj
    right: Obj


@dataclass(frozen=True)
class ProjR:
    left: Obj
    right: Obj


@dataclass(frozen=True)
class Pair:
    f: "Term"
    g: "Term"


@dataclass(frozen=True)
class Comp:
    g: "Term"  # applied second
    f: "Term"  # applied first


@dataclass(frozen=True)
class Cyl:
    c: Obj
    g: "Term"


@dataclass(frozen=True)
class Iter:
    g: "Term"  # endomap; Iter(g)(a, n) = g^n(a)


@dataclass(frozen=True)
class TrueC:
    pass


@dataclass(frozen=True)
class FalseC:
    pass


@dataclass(frozen=True)
class NotC:
    pass


@dataclass(frozen=True)
class EqNat:
    pass


@dataclass(frozen=True)
class Incl:
    ab: Abstr


@dataclass(frozen=True)
class Restrict:
    f: "Term"
    ab: Abstr


@dataclass(frozen=True)
class ConstVal:
    # machine-internal literal; value must fit obj's carrier shape
    obj: Obj
    value: Value


@dataclass(frozen=True)
class DMinus:
    # reflected bounded-descent search: c complexity code, p step code
    c: "Term"
    p: "Term"


@dataclass(frozen=True)
class CDot:
    pass


@dataclass(frozen=True)
class EDot:
    pass


@dataclass(frozen=True)
class HashC:
    pass


Term = Union[
    Id, Bang, ZeroC, Succ, ProjL, ProjR, Pair, Comp, Cyl, Iter,
    TrueC, FalseC, NotC, EqNat, Incl, Restrict, ConstVal,
    DMinus, CDot, EDot, HashC,
]

REFLECTED = (DMinus, CDot, EDot, HashC)


### shapes

def value_shape(v: Value) -> Obj:
    """The fundamental object a value tree inhabits."""
    if isinstance(v, NatV):
        return NAT
    if isinstance(v, UnitV):
        return UNIT
    return Prod(value_shape(v.left), value_shape(v.right))


def shape_fits(obj: Obj, v: Value) -> bool:
    """Does v fit obj's carrier skeleton (predicates ignored)?"""
    if isinstance(obj, Nat):
        return isinstance(v, NatV) and v.n >= 0
    if isinstance(obj, Unit):
        return isinstance(v, UnitV)
    if isinstance(obj, Prod):
        return (isinstance(v, PairV)
                and shape_fits(obj.left, v.left)
                and shape_fits(obj.right, v.right))
    return shape_fits(obj.carrier, v)


def carrier_shape(obj: Obj) -> Obj:
    """Strip abstraction layers down to the fundamental skeleton."""
    if isinstance(obj, Prod):
        return Prod(carrier_shape(obj.left), carrier_shape(obj.right))
    if isinstance(obj, Abstr):
        return carrier_shape(obj.carrier)
    return obj


def has_abstr(obj: Obj) -> bool:
    if isinstance(obj, Abstr):
        return True
    if isinstance(obj, Prod):
        return has_abstr(obj.left) or has_abstr(obj.right)
    return False


def zero_value(obj: Obj) -> Value:
    """Componentwise zero of the carrier skeleton."""
    if isinstance(obj, Nat):
        return NatV(0)
    if isinstance(obj, Unit):
        return UNITV
    if isinstance(obj, Prod):
        return PairV(zero_value(obj.left), zero_value(obj.right))
    return zero_value(obj.carrier)


### typing

_tc_memo: Dict[int, Tuple[Term, Tuple[Obj, Obj]]] = {}
_obj_memo: Dict[int, Obj] = {}
_MEMO_CAP = 200_000  # decoded code trees are fresh objects; keep memos bounded


def obj_check(obj: Obj) -> None:
    """Validate well-formedness: every Abstr's chi is a carrier -> Two map."""
    key = id(obj)
    if key in _obj_memo:
        return
    if isinstance(obj, Prod):
        obj_check(obj.left)
        obj_check(obj.right)
    elif isinstance(obj, Abstr):
        obj_check(obj.carrier)
        dom, cod = typecheck(obj.chi)
        if dom != obj.carrier or cod != TWO:
            raise TypeMismatch(
                f"abstraction predicate must map the carrier into Two, got {dom} -> {cod}")
    if len(_obj_memo) > _MEMO_CAP:
        _obj_memo.clear()
    _obj_memo[key] = obj


def typecheck(t: Term) -> Tuple[Obj, Obj]:
    """Compute (dom, cod) or raise TypeMismatch.  Typings are principal."""
    key = id(t)
    hit = _tc_memo.get(key)
    if hit is not None:
        return hit[1]
    res = _typecheck(t)
    if len(_tc_memo) > _MEMO_CAP:
        _tc_memo.clear()
    _tc_memo[key] = (t, res)
    return res


def _typecheck(t: Term) -> Tuple[Obj, Obj]:
    if isinstance(t, Id):
        obj_check(t.obj)
        return (t.obj, t.obj)
    if isinstance(t, Bang):
        obj_check(t.obj)
        return (t.obj, UNIT)
    if isinstance(t, ZeroC):
        obj_check(t.obj)
        return (UNIT, t.obj)
    if isinstance(t, Succ):
        return (NAT, NAT)
    if isinstance(t, ProjL):
        obj_check(t.left)
        obj_check(t.right)
        return (Prod(t.left, t.right), t.left)
    if isinstance(t, ProjR):
        obj_check(t.left)
        obj_check(t.right)
        return (Prod(t.left, t.right), t.right)
    if isinstance(t, Pair):
        df, cf = typecheck(t.f)
        dg, cg = typecheck(t.g)
        if df != dg:
            raise TypeMismatch(f"pair components disagree on domain: {df} vs {dg}")
        return (df, Prod(cf, cg))
    if isinstance(t, Comp):
        df, cf = typecheck(t.f)
        dg, cg = typecheck(t.g)
        if cf != dg:
            raise TypeMismatch(f"composition mismatch: {cf} then {dg}")
        return (df, cg)
    if isinstance(t, Cyl):
        obj_check(t.c)
        dg, cg = typecheck(t.g)
        return (Prod(t.c, dg), Prod(t.c, cg))
    if isinstance(t, Iter):
        dg, cg = typecheck(t.g)
        if dg != cg:
            raise TypeMismatch(f"iteration needs an endomap, got {dg} -> {cg}")
        return (Prod(dg, NAT), dg)
    if isinstance(t, TrueC) or isinstance(t, FalseC):
        return (UNIT, TWO)
    if isinstance(t, NotC):
        return (TWO, TWO)
    if isinstance(t, EqNat):
        return (Prod(NAT, NAT), TWO)
    if isinstance(t, Incl):
        obj_check(t.ab)
        return (t.ab, t.ab.carrier)
    if isinstance(t, Restrict):
        obj_check(t.ab)
        df, cf = typecheck(t.f)
        if cf != t.ab.carrier:
            raise TypeMismatch(
                f"corestriction needs codomain {t.ab.carrier}, got {cf}")
        return (df, t.ab)
    if isinstance(t, ConstVal):
        obj_check(t.obj)
        if not shape_fits(t.obj, t.value):
            raise TypeMismatch("literal does not fit its object's carrier shape")
        return (UNIT, t.obj)
    if isinstance(t, DMinus):
        dc, cc = typecheck(t.c)
        dp, cp = typecheck(t.p)
        if cc != NAT:
            raise TypeMismatch("descent-search complexity code must land in Nat")
        if dp != cp or dp != dc:
            raise TypeMismatch("descent-search step code must be an endomap on the same object")
        return (dp, Prod(dp, NAT))
    if isinstance(t, CDot):
        return (Prod(NAT, NAT), NAT)
    if isinstance(t, EDot):
        return (Prod(NAT, NAT), Prod(NAT, NAT))
    if isinstance(t, HashC):
        return (NAT, NAT)
    raise TypeMismatch(f"unknown constructor {type(t).__name__}")


def depth(t: Term) -> int:
    """Constructor nesting depth; leaves are 0."""
    if isinstance(t, (Pair, Comp)):
        return 1 + max(depth(t.f), depth(t.g))
    if isinstance(t, DMinus):
        return 1 + max(depth(t.c), depth(t.p))
    if isinstance(t, (Cyl, Iter)):
        return 1 + depth(t.g)
    if isinstance(t, Restrict):
        return 1 + depth(t.f)
    return 0


### structural evaluation

def eval_structural(t: Term, v: Value) -> Value:
    """Total evaluator by structural recursion.  Reflected constructors are
    refused: their semantics is the step machine's."""
    if isinstance(t, Comp):
        return eval_structural(t.g, eval_structural(t.f, v))
    if isinstance(t, Pair):
        return PairV(eval_structural(t.f, v), eval_structural(t.g, v))
    if isinstance(t, Id):
        return v
    if isinstance(t, ProjL):
        if not isinstance(v, PairV):
            raise EvalError("projection needs a pair")
        return v.left
    if isinstance(t, ProjR):
        if not isinstance(v, PairV):
            raise EvalError("projection needs a pair")
        return v.right
    if isinstance(t, Succ):
        if not isinstance(v, NatV):
            raise EvalError("successor needs a natural")
        return NatV(v.n + 1)
    if isinstance(t, Iter):
        if not (isinstance(v, PairV) and isinstance(v.right, NatV)):
            raise EvalError("iteration needs (start, count)")
        acc = v.left
        for _ in range(v.right.n):
            acc = eval_structural(t.g, acc)
        return acc
    if isinstance(t, Cyl):
        if not isinstance(v, PairV):
            raise EvalError("cylinder needs a pair")
        return PairV(v.left, eval_structural(t.g, v.right))
    if isinstance(t, Bang):
        return UNITV
    if isinstance(t, ZeroC):
        z = zero_value(t.obj)
        if has_abstr(t.obj) and not value_check(t.obj, z):
            raise EvalError("zero is not a member of the abstraction")
        return z
    if isinstance(t, TrueC):
        return NatV(1)
    if isinstance(t, FalseC):
        return NatV(0)
    if isinstance(t, NotC):
        if not isinstance(v, NatV) or v.n not in (0, 1):
            raise EvalError("negation needs a truth value")
        return NatV(1 - v.n)
    if isinstance(t, EqNat):
        if not (isinstance(v, PairV) and isinstance(v.left, NatV)
                and isinstance(v.right, NatV)):
            raise EvalError("equality needs a pair of naturals")
        return NatV(1 if v.left.n == v.right.n else 0)
    if isinstance(t, Incl):
        return v
    if isinstance(t, Restrict):
        out = eval_structural(t.f, v)
        chk = eval_structural(t.ab.chi, out)
        if chk != NatV(1):
            raise EvalError("corestriction check failed")
        return out
    if isinstance(t, ConstVal):
        return t.value
    if isinstance(t, REFLECTED):
        raise EvalError(f"{type(t).__name__} is reflected; run it on the machine")
    raise EvalError(f"unknown constructor {type(t).__name__}")


def value_check(obj: Obj, v: Value) -> bool:
    """Membership: shape fits and every abstraction predicate holds."""
    if isinstance(obj, Nat):
        return isinstance(v, NatV) and v.n >= 0
    if isinstance(obj, Unit):
        return isinstance(v, UnitV)
    if isinstance(obj, Prod):
        return (isinstance(v, PairV)
                and value_check(obj.left, v.left)
                and value_check(obj.right, v.right))
    return (value_check(obj.carrier, v)
            and eval_structural(obj.chi, v) == NatV(1))


### standard library

NN = Prod(NAT, NAT)

zero_n = Comp(ZeroC(NAT), Bang(NAT))          # n |-> 0
one_n = Comp(Succ(), zero_n)                    # n |-> 1
_zero_nn = Comp(ZeroC(NN), Bang(NAT))         # n |-> (0, 0)
_zero_n_of_nn = Comp(ZeroC(NAT), Bang(NN))    # (m, k) |-> 0

_shift = Pair(ProjR(NAT, NAT), Comp(Succ(), ProjR(NAT, NAT)))

pred = Comp(ProjL(NAT, NAT), Comp(Iter(_shift), Pair(_zero_nn, Id(NAT))))

monus = Iter(pred)      # (m, k) |-> m - k, truncated
add = Iter(Succ())        # (m, k) |-> m + k
swap = Pair(ProjR(NAT, NAT), ProjL(NAT, NAT))

# mul walks (acc, m) |-> (acc + m, m) k times from (0, m)
_mul_step = Pair(add, ProjR(NAT, NAT))
_mul_init = Pair(Pair(_zero_n_of_nn, ProjL(NAT, NAT)), ProjR(NAT, NAT))
mul = Comp(ProjL(NAT, NAT), Comp(Iter(_mul_step), _mul_init))

eq0 = Comp(EqNat(), Pair(Id(NAT), zero_n))
leq = Comp(eq0, monus)
eq = Comp(eq0, Comp(add, Pair(monus, Comp(monus, swap))))

# the truth object: naturals below two
lt2 = Comp(eq0, Comp(monus, Pair(Id(NAT), one_n)))
TWO = Abstr(NAT, lt2)

# tri(n) = 0 + 1 + ... + (n-1)
_tri_step = Pair(add, Comp(Succ(), ProjR(NAT, NAT)))
tri = Comp(ProjL(NAT, NAT), Comp(Iter(_tri_step), Pair(_zero_nn, Id(NAT))))

# cantor_pair(x, y) = tri(x + y + 1) + y
cantor_pair = Comp(add, Pair(Comp(tri, Comp(Succ(), add)), ProjR(NAT, NAT)))


def cond(obj: Obj) -> Term:
    """Definition by cases: Two x (A x A) -> A, componentwise arithmetic."""
    dom = Prod(TWO, Prod(obj, obj))
    sel = Comp(Incl(TWO), ProjL(TWO, Prod(obj, obj)))        # b as a natural
    br = ProjR(TWO, Prod(obj, obj))
    if isinstance(obj, Unit):
        return Comp(ZeroC(UNIT), Bang(dom))
    if isinstance(obj, Nat):
        x = Comp(ProjL(obj, obj), br)
        y = Comp(ProjR(obj, obj), br)
        one_on_dom = Comp(Succ(), Comp(ZeroC(NAT), Bang(dom)))
        nb = Comp(monus, Pair(one_on_dom, sel))
        return Comp(add, Pair(Comp(mul, Pair(sel, x)), Comp(mul, Pair(nb, y))))
    if isinstance(obj, Prod):
        x = Comp(ProjL(obj, obj), br)
        y = Comp(ProjR(obj, obj), br)
        l, r = obj.left, obj.right
        lefts = Pair(ProjL(TWO, Prod(obj, obj)),
                     Pair(Comp(ProjL(l, r), x), Comp(ProjL(l, r), y)))
        rights = Pair(ProjL(TWO, Prod(obj, obj)),
                      Pair(Comp(ProjR(l, r), x), Comp(ProjR(l, r), y)))
        return Pair(Comp(cond(l), lefts), Comp(cond(r), rights))
    carrier = obj.carrier
    x = Comp(Incl(obj), Comp(ProjL(obj, obj), br))
    y = Comp(Incl(obj), Comp(ProjR(obj, obj), br))
    picked = Comp(cond(carrier), Pair(ProjL(TWO, Prod(obj, obj)), Pair(x, y)))
    return Restrict(picked, obj)  # never fails: picks one of two members


two_and = Restrict(
    Comp(mul, Pair(Comp(Incl(TWO), ProjL(TWO, TWO)), Comp(Incl(TWO), ProjR(TWO, TWO)))),
    TWO)
two_or = Comp(NotC(), Comp(two_and, Pair(Comp(NotC(), ProjL(TWO, TWO)),
                                       Comp(NotC(), ProjR(TWO, TWO)))))

# cantor_unpair(n) walks the pairing diagonal n steps from (0, 0):
# (x, y) |-> (x-1, y+1) while x > 0, else start the next diagonal (y+1, 0).
_diag_then = Pair(Comp(Succ(), ProjR(NAT, NAT)), _zero_n_of_nn)
_diag_else = Pair(Comp(pred, ProjL(NAT, NAT)), Comp(Succ(), ProjR(NAT, NAT)))
_diag_step = Comp(cond(NN), Pair(Comp(eq0, ProjL(NAT, NAT)), Pair(_diag_then, _diag_else)))
cantor_unpair = Comp(Iter(_diag_step), Pair(_zero_nn, Id(NAT)))

STDLIB: Dict[str, Term] = {
    "pred": pred,
    "add": add,
    "mul": mul,
    "monus": monus,
    "leq": leq,
    "eq": eq,
    "cantor_pair": cantor_pair,
    "cantor_unpair": cantor_unpair,
}


def find_point(obj: Obj, fuel: int = 1000) -> Optional[Value]:
    """Search the canonical count of the carrier for a member of obj."""
    from .coding import cont_raw
    if not has_abstr(obj):
        return zero_value(obj)
    for n in range(fuel):
        v = cont_raw(carrier_shape(obj), n)
        if value_check(obj, v):
            return v
    return None


def eq_sample(f: Term, g: Term, bound: int) -> Optional[Value]:
    """Compare two maps on the first `bound` arguments of the domain's
    canonical count.  None means they agree; otherwise the first witness."""
    from .coding import cont
    df, cf = typecheck(f)
    dg, cg = typecheck(g)
    if (df, cf) != (dg, cg):
        raise TypeMismatch("can only sample maps of identical typing")
    a0 = find_point(df)
    if a0 is None:
        raise EvalError("sampling needs an inhabited domain")
    for n in range(bound):
        a = cont(df, a0, n)
        if eval_structural(f, a) != eval_structural(g, a):
            return a
    return None
