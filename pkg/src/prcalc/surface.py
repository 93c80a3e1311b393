"""Textual surface syntax for objects, terms, and values.

The grammar is s-expression style, one token class, no precedence:

    term  ::= succ | true | false | not | eqnat | cdot | edot | hashc
            | <stdlib name>
            | (id A) | (bang A) | (zero A) | (projl A B) | (projr A B)
            | (pair f g) | (comp g f) | (cyl C g) | (iter g)
            | (incl A chi) | (restrict f A chi) | (dminus c p)
    obj   ::= 1 | N | (x A B) | (abstr A chi)
    value ::= <natural> | () | (v,w)

Stdlib names (pred, add, mul, ...) resolve to their definitions at parse
time; printing always emits the expansion, so a printed term can be re-read
without any name table and its code is stable.  Line comments start with
`;`.  Machine-internal constants have no surface form: printing one raises
RefusesConstVal unless the caller asks for the brace sigil used in traces,
which is deliberately outside the grammar and will not re-parse.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Tuple

from .term import (
    Abstr, Bang, CDot, Comp, ConstVal, Cyl, DMinus, EDot, EqNat, FalseC,
    HashC, Id, Incl, Iter, NAT, Nat, NatV, NotC, Obj, Pair, PairV, Prod,
    ProjL, ProjR, Restrict, STDLIB, Succ, Term, TrueC, UNIT, UNITV, Unit,
    UnitV, Value, ZeroC, obj_check, typecheck,
)


class ParseError(Exception):
    """Malformed input.  Carries the character offset and what was expected."""

    def __init__(self, position: int, expectation: str):
        self.position = position
        self.expectation = expectation
        super().__init__(f"at offset {position}: expected {expectation}")


class RefusesConstVal(Exception):
    """The term contains a machine-internal constant with no surface form."""


# ---------------------------------------------------------------------------
# tokenizer

_WS = " \t\r\n"
_PUNCT = "(),"


@dataclass(frozen=True)
class _Tok:
    text: str
    pos: int


def _tokenize(src: str) -> List[_Tok]:
    toks = []
    i, n = 0, len(src)
    while i < n:
        ch = src[i]
        if ch in _WS:
            i += 1
        elif ch == ";":
            while i < n and src[i] != "\n":
                i += 1
        elif ch in _PUNCT:
            toks.append(_Tok(ch, i))
            i += 1
        else:
            j = i
            while j < n and src[j] not in _WS + _PUNCT + ";":
                j += 1
            toks.append(_Tok(src[i:j], i))
            i = j
    return toks


class _Cursor:
    """Token stream with one-token lookahead and end-of-input position."""

    def __init__(self, toks: List[_Tok], end: int):
        self.toks = toks
        self.i = 0
        self.end = end

    def peek(self) -> Optional[_Tok]:
        return self.toks[self.i] if self.i < len(self.toks) else None

    def take(self, expectation: str) -> _Tok:
        tok = self.peek()
        if tok is None:
            raise ParseError(self.end, expectation)
        self.i += 1
        return tok

    def match(self, text: str) -> _Tok:
        tok = self.take(f"'{text}'")
        if tok.text != text:
            raise ParseError(tok.pos, f"'{text}'")
        return tok

    def done(self) -> None:
        tok = self.peek()
        if tok is not None:
            raise ParseError(tok.pos, "end of input")


# ---------------------------------------------------------------------------
# parsing

_ATOMS = {
    "succ": Succ,
    "true": TrueC,
    "false": FalseC,
    "not": NotC,
    "eqnat": EqNat,
    "cdot": CDot,
    "edot": EDot,
    "hashc": HashC,
}


def _parse_obj(cur: _Cursor) -> Obj:
    tok = cur.take("an object")
    if tok.text == "1":
        return UNIT
    if tok.text == "N":
        return NAT
    if tok.text == "(":
        head = cur.take("'x' or 'abstr'")
        if head.text == "x":
            left = _parse_obj(cur)
            right = _parse_obj(cur)
            cur.match(")")
            return Prod(left, right)
        if head.text == "abstr":
            carrier = _parse_obj(cur)
            chi = _parse_term(cur)
            cur.match(")")
            return Abstr(carrier, chi)
        raise ParseError(head.pos, "'x' or 'abstr'")
    raise ParseError(tok.pos, "an object")


def _parse_term(cur: _Cursor) -> Term:
    tok = cur.take("a term")
    if tok.text in _ATOMS:
        return _ATOMS[tok.text]()
    if tok.text in STDLIB:
        return STDLIB[tok.text]
    if tok.text != "(":
        raise ParseError(tok.pos, "a term")
    head = cur.take("a term form")
    kind = head.text
    if kind == "id":
        t: Term = Id(_parse_obj(cur))
    elif kind == "bang":
        t = Bang(_parse_obj(cur))
    elif kind == "zero":
        t = ZeroC(_parse_obj(cur))
    elif kind == "projl":
        t = ProjL(_parse_obj(cur), _parse_obj(cur))
    elif kind == "projr":
        t = ProjR(_parse_obj(cur), _parse_obj(cur))
    elif kind == "pair":
        t = Pair(_parse_term(cur), _parse_term(cur))
    elif kind == "comp":
        t = Comp(_parse_term(cur), _parse_term(cur))
    elif kind == "cyl":
        t = Cyl(_parse_obj(cur), _parse_term(cur))
    elif kind == "iter":
        t = Iter(_parse_term(cur))
    elif kind == "incl":
        carrier = _parse_obj(cur)
        t = Incl(Abstr(carrier, _parse_term(cur)))
    elif kind == "restrict":
        f = _parse_term(cur)
        carrier = _parse_obj(cur)
        t = Restrict(f, Abstr(carrier, _parse_term(cur)))
    elif kind == "dminus":
        t = DMinus(_parse_term(cur), _parse_term(cur))
    else:
        raise ParseError(head.pos, "a term form")
    cur.match(")")
    return t


def _parse_value(cur: _Cursor) -> Value:
    tok = cur.take("a value")
    if tok.text.isdigit():
        return NatV(int(tok.text))
    if tok.text == "(":
        nxt = cur.peek()
        if nxt is not None and nxt.text == ")":
            cur.take(")")
            return UNITV
        left = _parse_value(cur)
        cur.match(",")
        right = _parse_value(cur)
        cur.match(")")
        return PairV(left, right)
    raise ParseError(tok.pos, "a value")


def _cursor(src: str) -> _Cursor:
    return _Cursor(_tokenize(src), len(src))


def parse_term(src: str) -> Term:
    """Parse exactly one term and typecheck it."""
    cur = _cursor(src)
    t = _parse_term(cur)
    cur.done()
    typecheck(t)
    return t


def parse_obj(src: str) -> Obj:
    """Parse exactly one object and validate any abstraction predicates."""
    cur = _cursor(src)
    obj = _parse_obj(cur)
    cur.done()
    obj_check(obj)
    return obj


def parse_value(src: str) -> Value:
    cur = _cursor(src)
    v = _parse_value(cur)
    cur.done()
    return v


def parse_lines(src: str) -> List[Tuple[int, Term]]:
    """Parse a many-term file, one term per non-blank non-comment line.

    Returns (1-based line number, term) pairs.  Offsets inside a ParseError
    refer to the single line being parsed.
    """
    out = []
    for lineno, line in enumerate(src.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith(";"):
            continue
        out.append((lineno, parse_term(line)))
    return out


# ---------------------------------------------------------------------------
# printing

def print_obj(obj: Obj) -> str:
    if isinstance(obj, Unit):
        return "1"
    if isinstance(obj, Nat):
        return "N"
    if isinstance(obj, Prod):
        return f"(x {print_obj(obj.left)} {print_obj(obj.right)})"
    return f"(abstr {print_obj(obj.carrier)} {print_term(obj.chi)})"


def print_value(v: Value) -> str:
    if isinstance(v, NatV):
        return str(v.n)
    if isinstance(v, UnitV):
        return "()"
    return f"({print_value(v.left)},{print_value(v.right)})"


_ATOM_NAMES = {
    Succ: "succ", TrueC: "true", FalseC: "false", NotC: "not",
    EqNat: "eqnat", CDot: "cdot", EDot: "edot", HashC: "hashc",
}


def print_term(t: Term, const_sigil: bool = False) -> str:
    """Render a term in the surface grammar; parse_term inverts it.

    Stdlib names are not reconstructed: a term prints as its full tree.
    With const_sigil=True machine-internal constants render as a brace
    sigil (used by traces only); the sigil does not re-parse.
    """
    name = _ATOM_NAMES.get(type(t))
    if name is not None:
        return name
    if isinstance(t, Id):
        return f"(id {print_obj(t.obj)})"
    if isinstance(t, Bang):
        return f"(bang {print_obj(t.obj)})"
    if isinstance(t, ZeroC):
        return f"(zero {print_obj(t.obj)})"
    if isinstance(t, ProjL):
        return f"(projl {print_obj(t.left)} {print_obj(t.right)})"
    if isinstance(t, ProjR):
        return f"(projr {print_obj(t.left)} {print_obj(t.right)})"
    if isinstance(t, Pair):
        return f"(pair {print_term(t.f, const_sigil)} {print_term(t.g, const_sigil)})"
    if isinstance(t, Comp):
        return f"(comp {print_term(t.g, const_sigil)} {print_term(t.f, const_sigil)})"
    if isinstance(t, Cyl):
        return f"(cyl {print_obj(t.c)} {print_term(t.g, const_sigil)})"
    if isinstance(t, Iter):
        return f"(iter {print_term(t.g, const_sigil)})"
    if isinstance(t, Incl):
        ab = t.ab
        return f"(incl {print_obj(ab.carrier)} {print_term(ab.chi, const_sigil)})"
    if isinstance(t, Restrict):
        ab = t.ab
        return (f"(restrict {print_term(t.f, const_sigil)} "
                f"{print_obj(ab.carrier)} {print_term(ab.chi, const_sigil)})")
    if isinstance(t, DMinus):
        return f"(dminus {print_term(t.c, const_sigil)} {print_term(t.p, const_sigil)})"
    if isinstance(t, ConstVal):
        if const_sigil:
            return f"{{const {print_obj(t.obj)} {print_value(t.value)}}}"
        raise RefusesConstVal(
            "machine-internal constant has no surface form")
    raise RefusesConstVal(f"unprintable term {t!r}")
