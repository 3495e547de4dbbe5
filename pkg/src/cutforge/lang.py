"""The .cut surface language: parser, evaluator, canonical printer, JSON codec.

A program is a sequence of statements over one active group:

    group Q,Z
    S = seg(1, >, [0, 0])
    T = msub(S, S)
    print S + T
    solve seg(1, >=, [0, 0]) = S + ?

Expressions cover segment literals, element literals, ideal constructors
(ideal, principal, Ov, Mv, O(j), M(j)), the engine operators, and solve both
as a function and as a statement.  Canonical printing round-trips: parsing the
printed form of any value (reports excepted) evaluates back to an equal value.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Sequence

from . import idealcalc, segcalc
from .errors import CutforgeError, CutSyntaxError, EvalError
from .idealcalc import Ideal, Overring, SolveIdealOutcome, ValuedField
from .lexgroup import ConvexSubgroup, GroupElement, GroupSignature, elem
from .segcalc import FinalSegment, SolveOutcome


# -- tokens ------------------------------------------------------------------------

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>[ \t]+)
  | (?P<comment>\#[^\n]*)
  | (?P<newline>\n)
  | (?P<nosol>no-solution)
  | (?P<number>\d+)
  | (?P<ident>[A-Za-z_][A-Za-z_0-9']*)
  | (?P<op>>=|[()\[\]{}=+*/^,>?-])
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class Token:
    kind: str  # 'number' | 'ident' | 'op' | 'newline' | 'eof'
    text: str
    line: int
    col: int


def tokenize(text: str) -> list[Token]:
    tokens: list[Token] = []
    line, col = 1, 1
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise CutSyntaxError(line, col, "a token", repr(text[pos]))
        kind = m.lastgroup or ""
        value = m.group()
        if kind == "newline":
            tokens.append(Token("newline", "\n", line, col))
            line += 1
            col = 1
        elif kind in ("ws", "comment"):
            col += len(value)
        else:
            out_kind = "op" if kind == "nosol" else kind
            text_out = "no-solution" if kind == "nosol" else value
            tokens.append(Token(out_kind, text_out, line, col))
            col += len(value)
        pos = m.end()
    tokens.append(Token("eof", "", line, col))
    return tokens


# -- AST ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Node:
    line: int
    col: int


@dataclass(frozen=True)
class RationalLit(Node):
    value: Fraction


@dataclass(frozen=True)
class ElementLit(Node):
    coords: tuple[Fraction, ...]


@dataclass(frozen=True)
class SegLit(Node):
    level: int
    flavor: str
    coords: tuple[Fraction, ...]


@dataclass(frozen=True)
class NameRef(Node):
    name: str


@dataclass(frozen=True)
class Call(Node):
    func: str
    args: tuple[Any, ...]


@dataclass(frozen=True)
class BinOp(Node):
    op: str
    left: Any
    right: Any


@dataclass(frozen=True)
class Neg(Node):
    operand: Any


@dataclass(frozen=True)
class OutcomeLit(Node):
    kind: str
    payload: Any = None
    s2_prime: Any = None
    t_max: Any = None


@dataclass(frozen=True)
class GroupDecl(Node):
    sig: GroupSignature


@dataclass(frozen=True)
class Assign(Node):
    name: str
    expr: Any


@dataclass(frozen=True)
class PrintStmt(Node):
    expr: Any


@dataclass(frozen=True)
class SolveStmt(Node):
    target: Any
    known: Any
    op: str  # '+' or '*'


@dataclass(frozen=True)
class Program:
    statements: tuple[Any, ...]


_KEYWORD_FUNCS = {
    "seg", "ideal", "principal", "O", "M", "H",
    "delta", "ncomp", "msub", "cdiff", "ms", "hat", "dhat", "ntimes",
    "inv", "push", "pull", "mul", "colon", "ann", "extend", "closure", "solve",
}
_RESERVED = _KEYWORD_FUNCS | {
    "group", "print", "Ov", "Mv", "Z", "Q",
    "unique", "largest", "no-solution", "tmax",
}


class _Parser:
    def __init__(self, tokens: list[Token]):
        self.tokens = tokens
        self.pos = 0

    def peek(self) -> Token:
        return self.tokens[self.pos]

    def advance(self) -> Token:
        tok = self.tokens[self.pos]
        if tok.kind != "eof":
            self.pos += 1
        return tok

    def skip_newlines(self) -> None:
        while self.peek().kind == "newline":
            self.advance()

    def expect(self, kind: str, text: str | None = None) -> Token:
        tok = self.peek()
        if tok.kind != kind or (text is not None and tok.text != text):
            want = text if text is not None else kind
            found = tok.text if tok.text else tok.kind
            raise CutSyntaxError(tok.line, tok.col, repr(want), repr(found))
        return self.advance()

    def at_op(self, text: str) -> bool:
        tok = self.peek()
        return tok.kind == "op" and tok.text == text

    # statements ------------------------------------------------------------

    def parse_program(self) -> Program:
        stmts = []
        self.skip_newlines()
        while self.peek().kind != "eof":
            stmts.append(self.parse_statement())
            tok = self.peek()
            if tok.kind not in ("newline", "eof"):
                raise CutSyntaxError(tok.line, tok.col, "end of statement", repr(tok.text))
            self.skip_newlines()
        return Program(tuple(stmts))

    def parse_statement(self):
        tok = self.peek()
        if tok.kind == "ident" and tok.text == "group":
            self.advance()
            return GroupDecl(tok.line, tok.col, self.parse_signature())
        if tok.kind == "ident" and tok.text == "print":
            self.advance()
            return PrintStmt(tok.line, tok.col, self.parse_expr())
        if tok.kind == "ident" and tok.text == "solve":
            nxt = self.tokens[self.pos + 1]
            if nxt.kind == "op" and nxt.text == "(":
                return PrintStmt(tok.line, tok.col, self.parse_expr())
            self.advance()
            target = self.parse_expr()
            self.expect("op", "=")
            known = self.parse_expr()
            op_tok = self.peek()
            if not (self.at_op("+") or self.at_op("*")):
                raise CutSyntaxError(op_tok.line, op_tok.col, "'+' or '*'", repr(op_tok.text))
            op = self.advance().text
            self.expect("op", "?")
            return SolveStmt(tok.line, tok.col, target, known, op)
        if (
            tok.kind == "ident"
            and tok.text not in _RESERVED
            and self.tokens[self.pos + 1].kind == "op"
            and self.tokens[self.pos + 1].text == "="
        ):
            self.advance()
            self.advance()
            return Assign(tok.line, tok.col, tok.text, self.parse_expr())
        return PrintStmt(tok.line, tok.col, self.parse_expr())

    def parse_signature(self) -> GroupSignature:
        tok = self.peek()
        wrapped = self.at_op("(")
        if wrapped:
            self.advance()
        factors = [self.parse_factor()]
        if self.at_op("^"):
            self.advance()
            count_tok = self.expect("number")
            count = int(count_tok.text)
            if count < 1:
                raise CutSyntaxError(count_tok.line, count_tok.col, "a positive power")
            factors = factors * count
        else:
            while self.at_op(","):
                self.advance()
                factors.append(self.parse_factor())
        if wrapped:
            self.expect("op", ")")
        try:
            return GroupSignature(tuple(factors))
        except CutforgeError as exc:
            raise CutSyntaxError(tok.line, tok.col, "a signature", str(exc))

    def parse_factor(self) -> str:
        tok = self.expect("ident")
        if tok.text not in ("Z", "Q"):
            raise CutSyntaxError(tok.line, tok.col, "'Z' or 'Q'", repr(tok.text))
        return tok.text

    # expressions -----------------------------------------------------------

    def parse_expr(self):
        node = self.parse_term()
        while self.at_op("+") or self.at_op("*"):
            # a trailing '+ ?' / '* ?' belongs to an enclosing solve statement
            if self.tokens[self.pos + 1].kind == "op" and self.tokens[self.pos + 1].text == "?":
                break
            tok = self.advance()
            right = self.parse_term()
            node = BinOp(tok.line, tok.col, tok.text, node, right)
        return node

    def parse_term(self):
        if self.at_op("-"):
            tok = self.advance()
            return Neg(tok.line, tok.col, self.parse_term())
        return self.parse_primary()

    def parse_primary(self):
        tok = self.peek()
        if tok.kind == "number":
            return self.parse_rational()
        if self.at_op("["):
            return self.parse_element()
        if self.at_op("("):
            self.advance()
            node = self.parse_expr()
            self.expect("op", ")")
            return node
        if tok.kind == "op" and tok.text == "no-solution":
            return self.parse_no_solution()
        if tok.kind == "ident":
            if tok.text in ("unique", "largest"):
                self.advance()
                return OutcomeLit(tok.line, tok.col, tok.text, payload=self.parse_expr())
            if tok.text == "seg":
                return self.parse_seg()
            if tok.text in _KEYWORD_FUNCS:
                return self.parse_call()
            if tok.text in ("Ov", "Mv"):
                self.advance()
                return Call(tok.line, tok.col, tok.text, ())
            if tok.text in ("group", "print", "solve", "Z", "Q", "tmax"):
                raise CutSyntaxError(tok.line, tok.col, "an expression", repr(tok.text))
            self.advance()
            return NameRef(tok.line, tok.col, tok.text)
        raise CutSyntaxError(tok.line, tok.col, "an expression", repr(tok.text or tok.kind))

    def parse_rational(self) -> RationalLit:
        tok = self.expect("number")
        value = Fraction(int(tok.text))
        if self.at_op("/"):
            self.advance()
            den_tok = self.expect("number")
            den = int(den_tok.text)
            if den == 0:
                raise CutSyntaxError(den_tok.line, den_tok.col, "a nonzero denominator")
            value = Fraction(int(tok.text), den)
        return RationalLit(tok.line, tok.col, value)

    def parse_signed_rational(self) -> Fraction:
        sign = 1
        if self.at_op("-"):
            self.advance()
            sign = -1
        return sign * self.parse_rational().value

    def parse_element(self) -> ElementLit:
        tok = self.expect("op", "[")
        coords: list[Fraction] = []
        if not self.at_op("]"):
            coords.append(self.parse_signed_rational())
            while self.at_op(","):
                self.advance()
                coords.append(self.parse_signed_rational())
        self.expect("op", "]")
        return ElementLit(tok.line, tok.col, tuple(coords))

    def parse_seg(self) -> SegLit:
        tok = self.expect("ident", "seg")
        self.expect("op", "(")
        level_tok = self.expect("number")
        self.expect("op", ",")
        flavor_tok = self.peek()
        if self.at_op(">="):
            flavor = segcalc.GEQ
        elif self.at_op(">"):
            flavor = segcalc.GT
        else:
            raise CutSyntaxError(flavor_tok.line, flavor_tok.col, "'>=' or '>'", repr(flavor_tok.text))
        self.advance()
        self.expect("op", ",")
        coords = self.parse_element()
        self.expect("op", ")")
        return SegLit(tok.line, tok.col, int(level_tok.text), flavor, coords.coords)

    def parse_call(self) -> Call:
        tok = self.expect("ident")
        self.expect("op", "(")
        args: list[Any] = []
        if not self.at_op(")"):
            args.append(self.parse_expr())
            while self.at_op(","):
                self.advance()
                args.append(self.parse_expr())
        self.expect("op", ")")
        return Call(tok.line, tok.col, tok.text, tuple(args))

    def parse_no_solution(self) -> OutcomeLit:
        tok = self.expect("op", "no-solution")
        self.expect("op", "{")
        self.expect("ident", "s2'")
        self.expect("op", "=")
        s2p = self.parse_expr()
        self.expect("op", ",")
        self.expect("ident", "tmax")
        self.expect("op", "=")
        tmax = self.parse_expr()
        self.expect("op", "}")
        return OutcomeLit(tok.line, tok.col, "no-solution", s2_prime=s2p, t_max=tmax)


def parse(text: str) -> Program:
    """Parse a .cut program, raising a located CutSyntaxError on bad input."""
    return _Parser(tokenize(text)).parse_program()


# -- evaluation ---------------------------------------------------------------------

Value = Any  # GroupElement | FinalSegment | Ideal | Overring | ConvexSubgroup
             # | SolveOutcome | SolveIdealOutcome | Fraction | report objects


class Env:
    """One mutable binding environment with an active group."""

    def __init__(self) -> None:
        self.sig: GroupSignature | None = None
        self.bindings: dict[str, Value] = {}

    @property
    def field(self) -> ValuedField:
        return ValuedField(self.require_sig())

    def require_sig(self) -> GroupSignature:
        if self.sig is None:
            raise CutforgeError("no active group; start with 'group ...'")
        return self.sig

    def reset(self, sig: GroupSignature) -> None:
        self.sig = sig
        self.bindings = {}


def eval_program(program: Program, env: Env | None = None) -> list[Value]:
    """Evaluate a parsed program; returns the values of print statements."""
    env = env if env is not None else Env()
    out: list[Value] = []
    for stmt in program.statements:
        value = eval_statement(stmt, env)
        if value is not None:
            out.append(value)
    return out


def eval_statement(stmt: Any, env: Env) -> Value | None:
    if isinstance(stmt, GroupDecl):
        env.reset(stmt.sig)
        return None
    if isinstance(stmt, Assign):
        env.bindings[stmt.name] = _eval(stmt.expr, env)
        return None
    if isinstance(stmt, PrintStmt):
        return _eval(stmt.expr, env)
    if isinstance(stmt, SolveStmt):
        known = _eval(stmt.known, env)
        target = _eval(stmt.target, env)
        try:
            if stmt.op == "*":
                return idealcalc.solve_ideal(_as_ideal(known), _as_ideal(target))
            return segcalc.solve(_expect(known, FinalSegment), _expect(target, FinalSegment))
        except CutforgeError as exc:
            raise EvalError(stmt.line, stmt.col, exc) from exc
    raise CutforgeError(f"unknown statement {stmt!r}")


def _expect(value: Value, kind: type) -> Any:
    if not isinstance(value, kind):
        raise CutforgeError(f"expected {kind.__name__}, got {type(value).__name__}")
    return value


def _as_ideal(value: Value) -> Ideal:
    if isinstance(value, Overring):
        return value.as_ideal()
    return _expect(value, Ideal)


def _expect_int(value: Value) -> int:
    if isinstance(value, Fraction) and value.denominator == 1:
        return int(value)
    raise CutforgeError(f"expected an integer, got {value!r}")


def _eval(node: Any, env: Env) -> Value:
    try:
        return _eval_inner(node, env)
    except EvalError:
        raise
    except CutforgeError as exc:
        raise EvalError(node.line, node.col, exc) from exc


def _eval_inner(node: Any, env: Env) -> Value:
    if isinstance(node, RationalLit):
        return node.value
    if isinstance(node, ElementLit):
        return elem(env.require_sig(), node.coords)
    if isinstance(node, SegLit):
        sig = env.require_sig()
        return segcalc.seg(sig, node.level, node.flavor, elem(sig, _pad(node.coords, sig.n)))
    if isinstance(node, NameRef):
        if node.name not in env.bindings:
            raise CutforgeError(f"unbound identifier {node.name!r}")
        return env.bindings[node.name]
    if isinstance(node, Neg):
        operand = _eval(node.operand, env)
        if isinstance(operand, (Fraction, GroupElement)):
            return -operand
        raise CutforgeError(f"cannot negate {type(operand).__name__}")
    if isinstance(node, BinOp):
        left = _eval(node.left, env)
        right = _eval(node.right, env)
        return _apply_binop(node.op, left, right, env)
    if isinstance(node, OutcomeLit):
        return _eval_outcome(node, env)
    if isinstance(node, Call):
        return _apply_call(node, env)
    raise CutforgeError(f"unknown expression {node!r}")


def _pad(coords: Sequence[Fraction], n: int) -> tuple[Fraction, ...]:
    if len(coords) > n:
        raise CutforgeError(f"{len(coords)} coordinates for a rank-{n} group")
    return tuple(coords) + (Fraction(0),) * (n - len(coords))


def _apply_binop(op: str, left: Value, right: Value, env: Env) -> Value:
    if op == "+":
        if isinstance(left, FinalSegment) and isinstance(right, FinalSegment):
            return segcalc.add(left, right)
        if isinstance(left, GroupElement) and isinstance(right, GroupElement):
            return left + right
        if isinstance(left, GroupElement) and isinstance(right, FinalSegment):
            return segcalc.shift(right, left)
        if isinstance(left, Fraction) and isinstance(right, Fraction):
            return left + right
        raise CutforgeError(
            f"cannot add {type(left).__name__} and {type(right).__name__}"
        )
    if op == "*":
        if isinstance(left, (Ideal, Overring)) and isinstance(right, (Ideal, Overring)):
            return idealcalc.mul(_as_ideal(left), _as_ideal(right))
        if isinstance(left, Fraction) and isinstance(right, Fraction):
            return left * right
        raise CutforgeError(
            f"cannot multiply {type(left).__name__} and {type(right).__name__}"
        )
    raise CutforgeError(f"unknown operator {op!r}")


def _eval_outcome(node: OutcomeLit, env: Env) -> Value:
    if node.kind == "no-solution":
        s2p = _eval(node.s2_prime, env)
        tmax = _eval(node.t_max, env)
        if isinstance(s2p, Ideal):
            return SolveIdealOutcome("no_solution", i2_prime=s2p, j_max=_expect(tmax, Ideal))
        return SolveOutcome(
            "no_solution",
            s2_prime=_expect(s2p, FinalSegment),
            t_max=_expect(tmax, FinalSegment),
        )
    payload = _eval(node.payload, env)
    kind = node.kind
    if isinstance(payload, Ideal):
        return SolveIdealOutcome(kind, solution=payload)
    return SolveOutcome(kind, solution=_expect(payload, FinalSegment))


def _apply_call(node: Call, env: Env) -> Value:
    name = node.func
    args = [_eval(a, env) for a in node.args]

    def arity(k: int) -> None:
        if len(args) != k:
            raise CutforgeError(f"{name} expects {k} argument(s), got {len(args)}")

    if name == "Ov":
        arity(0)
        return idealcalc.valuation_ring(env.field)
    if name == "Mv":
        arity(0)
        return idealcalc.maximal_ideal(env.field)
    if name == "O":
        arity(1)
        return idealcalc.overring(env.field, _expect_int(args[0]))
    if name == "M":
        arity(1)
        return idealcalc.overring(env.field, _expect_int(args[0])).max_ideal()
    if name == "H":
        arity(1)
        return ConvexSubgroup(env.require_sig(), _expect_int(args[0]))
    if name == "ideal":
        arity(1)
        return idealcalc.ideal_from_segment(env.field, _expect(args[0], FinalSegment))
    if name == "principal":
        arity(1)
        return idealcalc.principal_ideal(env.field, _expect(args[0], GroupElement))
    if name == "delta":
        arity(1)
        return segcalc.delta(_expect(args[0], FinalSegment))
    if name == "ncomp":
        arity(1)
        return segcalc.neg_complement(_expect(args[0], FinalSegment))
    if name == "hat":
        arity(1)
        return segcalc.hat(_expect(args[0], FinalSegment))
    if name == "dhat":
        arity(1)
        if isinstance(args[0], Ideal):
            return idealcalc.deep_closure(args[0])
        return segcalc.dhat(_expect(args[0], FinalSegment))
    if name == "msub":
        arity(2)
        return segcalc.msub(_expect(args[0], FinalSegment), _expect(args[1], FinalSegment))
    if name == "cdiff":
        arity(2)
        return segcalc.cdiff(_expect(args[0], FinalSegment), _expect(args[1], FinalSegment))
    if name == "ms":
        arity(2)
        return segcalc.ms(_expect(args[0], FinalSegment), _expect(args[1], FinalSegment))
    if name == "ntimes":
        arity(2)
        k = _expect_int(args[1])
        if isinstance(args[0], Ideal):
            return idealcalc.power(args[0], k)
        return segcalc.n_times(_expect(args[0], FinalSegment), k)
    if name == "inv":
        arity(1)
        if isinstance(args[0], (Ideal, Overring)):
            return idealcalc.inv_ring(_as_ideal(args[0]))
        return segcalc.inv_group(_expect(args[0], FinalSegment))
    if name == "push":
        arity(2)
        return segcalc.push_quotient(_expect(args[0], FinalSegment), _expect_int(args[1]))
    if name == "pull":
        arity(2)
        s_bar = _expect(args[0], FinalSegment)
        k = _expect_int(args[1])
        if s_bar.sig.n != k:
            raise CutforgeError(f"pull level {k} does not match a rank-{s_bar.sig.n} segment")
        return segcalc.pull_quotient(env.require_sig(), s_bar)
    if name == "mul":
        arity(2)
        return idealcalc.mul(_as_ideal(args[0]), _as_ideal(args[1]))
    if name == "colon":
        arity(2)
        return idealcalc.colon(_as_ideal(args[0]), _as_ideal(args[1]))
    if name == "ann":
        arity(2)
        return idealcalc.annihilator(_as_ideal(args[0]), _as_ideal(args[1]))
    if name == "extend":
        arity(2)
        return idealcalc.extend(_as_ideal(args[0]), _expect(args[1], Overring))
    if name == "closure":
        arity(2)
        return idealcalc.closure_over(_as_ideal(args[0]), _expect(args[1], Overring))
    if name == "solve":
        arity(2)
        if isinstance(args[0], (Ideal, Overring)) or isinstance(args[1], (Ideal, Overring)):
            return idealcalc.solve_ideal(_as_ideal(args[0]), _as_ideal(args[1]))
        return segcalc.solve(
            _expect(args[0], FinalSegment), _expect(args[1], FinalSegment)
        )
    raise CutforgeError(f"unknown function {name!r}")


# -- printing -----------------------------------------------------------------------


def print_value(value: Value) -> str:
    """Canonical text form; parses back to an equal value (reports excepted)."""
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, GroupElement):
        return str(value)
    if isinstance(value, ConvexSubgroup):
        return f"H({value.level})"
    if isinstance(value, FinalSegment):
        return str(value)
    if isinstance(value, Ideal):
        return f"ideal({value.segment})"
    if isinstance(value, Overring):
        return f"O({value.level})"
    if isinstance(value, SolveOutcome):
        if value.kind == "no_solution":
            return (
                f"no-solution {{ s2' = {print_value(value.s2_prime)}, "
                f"tmax = {print_value(value.t_max)} }}"
            )
        return f"{value.kind} {print_value(value.solution)}"
    if isinstance(value, SolveIdealOutcome):
        if value.kind == "no_solution":
            return (
                f"no-solution {{ s2' = {print_value(value.i2_prime)}, "
                f"tmax = {print_value(value.j_max)} }}"
            )
        return f"{value.kind} {print_value(value.solution)}"
    if hasattr(value, "summary_lines"):
        return "\n".join(value.summary_lines())
    if hasattr(value, "summary"):
        return value.summary()
    raise CutforgeError(f"cannot print {type(value).__name__}")


# -- JSON ---------------------------------------------------------------------------


def value_to_jsonable(value: Value) -> Any:
    """JSON-ready form; rationals are strings so exactness survives decoding."""
    if isinstance(value, Fraction):
        return {"kind": "rational", "value": str(value)}
    if isinstance(value, GroupElement):
        return {
            "kind": "element",
            "group": str(value.sig),
            "coords": [str(c) for c in value.coords],
        }
    if isinstance(value, ConvexSubgroup):
        return {"kind": "subgroup", "group": str(value.sig), "level": value.level}
    if isinstance(value, FinalSegment):
        return {
            "kind": "segment",
            "group": str(value.sig),
            "level": value.level,
            "flavor": value.flavor,
            "anchor": [str(c) for c in value.anchor.coords],
        }
    if isinstance(value, Ideal):
        return {
            "kind": "ideal",
            "segment": value_to_jsonable(value.segment),
        }
    if isinstance(value, Overring):
        return {
            "kind": "overring",
            "group": str(value.field.value_group),
            "level": value.level,
        }
    if isinstance(value, (SolveOutcome, SolveIdealOutcome)):
        ideal_flavor = isinstance(value, SolveIdealOutcome)
        out: dict[str, Any] = {
            "kind": "solve-outcome",
            "over": "ideals" if ideal_flavor else "segments",
            "variant": value.kind.replace("_", "-"),
        }
        if value.kind == "no_solution":
            prime = value.i2_prime if ideal_flavor else value.s2_prime
            best = value.j_max if ideal_flavor else value.t_max
            out["s2_prime"] = value_to_jsonable(prime)
            out["t_max"] = value_to_jsonable(best)
        else:
            out["solution"] = value_to_jsonable(value.solution)
        return out
    if hasattr(value, "checks"):  # property reports
        return {
            "kind": "report",
            "passed": value.passed,
            "checks": [
                {
                    "name": c.name,
                    "description": c.description,
                    "instances": c.instances,
                    "failures": list(c.failures),
                    "passed": c.passed,
                }
                for c in value.checks
            ],
        }
    if hasattr(value, "operation"):  # agreement reports
        return {
            "kind": "agreement",
            "operation": value.operation,
            "mode": value.mode,
            "instances": value.instance_count,
            "points": value.point_count,
            "failures": [str(f) for f in value.failures],
            "passed": value.passed,
        }
    raise CutforgeError(f"cannot encode {type(value).__name__}")


def to_json(value: Value) -> str:
    return json.dumps(value_to_jsonable(value), sort_keys=True)


def value_from_jsonable(data: Any) -> Value:
    """Inverse of value_to_jsonable for the exact value kinds."""
    kind = data.get("kind")
    if kind == "rational":
        return Fraction(data["value"])
    if kind == "element":
        sig = GroupSignature.parse(data["group"])
        return elem(sig, data["coords"])
    if kind == "subgroup":
        return ConvexSubgroup(GroupSignature.parse(data["group"]), data["level"])
    if kind == "segment":
        sig = GroupSignature.parse(data["group"])
        return FinalSegment(
            sig, data["level"], data["flavor"], elem(sig, data["anchor"])
        )
    if kind == "ideal":
        segment = value_from_jsonable(data["segment"])
        return Ideal(ValuedField(segment.sig), segment)
    if kind == "overring":
        sig = GroupSignature.parse(data["group"])
        return Overring(ValuedField(sig), data["level"])
    if kind == "solve-outcome":
        variant = data["variant"].replace("-", "_")
        if data["over"] == "ideals":
            if variant == "no_solution":
                return SolveIdealOutcome(
                    variant,
                    i2_prime=value_from_jsonable(data["s2_prime"]),
                    j_max=value_from_jsonable(data["t_max"]),
                )
            return SolveIdealOutcome(variant, solution=value_from_jsonable(data["solution"]))
        if variant == "no_solution":
            return SolveOutcome(
                variant,
                s2_prime=value_from_jsonable(data["s2_prime"]),
                t_max=value_from_jsonable(data["t_max"]),
            )
        return SolveOutcome(variant, solution=value_from_jsonable(data["solution"]))
    raise CutforgeError(f"cannot decode kind {kind!r}")


def from_json(text: str) -> Value:
    return value_from_jsonable(json.loads(text))
