"""Parse `.hsl` text into a Specification.

Parsing runs in two passes: lark builds a raw tree which a transformer turns
into plain Python values, then `_SpecificationBuilder` resolves identifiers,
checks arities, alpha-renames process binders and expands macros.
"""

import logging
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Set, Tuple, Union

from lark import Lark, Token, Transformer, v_args
from lark.exceptions import UnexpectedInput

from ..errors import Diagnostic, SpecificationError
from ..terms.fact import ATTACKER, EVENT, MESSAGE, Fact
from ..terms.formula import Disequal, Equal, Formula, NatLeq, NatLess
from ..terms.symbols import FunctionSymbol, RewriteRule, SymbolKind
from ..terms.term import Fun, Name, Term, Var, iter_vars, nat, tuple_symbol
from .ast import (
    Disjunct,
    EventDecl,
    EventProcess,
    FreeName,
    Input,
    LetExpression,
    LetSuchThat,
    Nil,
    Output,
    Parallel,
    Pattern,
    PatternData,
    PatternEqual,
    PatternVar,
    PredicateDecl,
    Process,
    Replication,
    Restriction,
    Specification,
    Statement,
    StatementKind,
    UserClause,
    canonical_premise,
)
from .grammar import GRAMMAR

logger = logging.getLogger(__name__)

RESERVED = frozenset({ATTACKER, MESSAGE, EVENT, "fail", "zero", "succ", "true", "false"})


@lru_cache(maxsize=1)
def _lark_parser() -> Lark:
    return Lark(
        GRAMMAR,
        parser="lalr",
        lexer="contextual",
        propagate_positions=True,
        maybe_placeholders=True,
    )


# Raw values produced by the transformer


@dataclass
class _Ident:
    name: str
    line: int
    column: int


@dataclass
class _Apply:
    name: str
    args: List["_Raw"]
    line: int
    column: int


@dataclass
class _Tuple:
    items: List["_Raw"]


@dataclass
class _Number:
    value: int


@dataclass
class _Plus:
    base: "_Raw"
    offset: int


_Raw = Union[_Ident, _Apply, _Tuple, _Number, _Plus]


@dataclass
class _Literal:
    kind: str
    left: _Raw
    right: Optional[_Raw]
    line: Optional[int]


@dataclass
class _Binder:
    name: str
    sort: str
    line: int
    column: int


class _Options(list):
    pass


def _line(raw: _Raw) -> Optional[int]:
    if isinstance(raw, (_Ident, _Apply)):
        return raw.line
    if isinstance(raw, _Plus):
        return _line(raw.base)
    if isinstance(raw, _Tuple) and raw.items:
        return _line(raw.items[0])
    return None


def _or_nil(value):
    return ("nil",) if value is None else value


class _RawTransformer(Transformer):
    """Turns the lark tree into tuples and small dataclasses."""

    # terms
    def ident(self, c):
        return _Ident(str(c[0]), c[0].line, c[0].column)

    def apply(self, c):
        return _Apply(str(c[0]), list(c[1] or []), c[0].line, c[0].column)

    def terms(self, c):
        return list(c)

    def tuple(self, c):
        items = list(c[0] or [])
        return items[0] if len(items) == 1 else _Tuple(items)

    def number(self, c):
        return _Number(int(c[0]))

    def zero(self, c):
        return _Number(0)

    def plus(self, c):
        return _Plus(c[0], int(c[1]))

    # literals
    def fact_literal(self, c):
        return _Literal("fact", c[0], None, _line(c[0]))

    def event_literal(self, c):
        return _Literal("event", c[0], None, _line(c[0]))

    def eq_literal(self, c):
        return _Literal("=", c[0], c[1], _line(c[0]))

    def neq_literal(self, c):
        return _Literal("<>", c[0], c[1], _line(c[0]))

    def lt_literal(self, c):
        return _Literal("<", c[0], c[1], _line(c[0]))

    def le_literal(self, c):
        return _Literal("<=", c[0], c[1], _line(c[0]))

    def literals(self, c):
        return list(c)

    def conjunction(self, c):
        return c[0]

    def false_conjunction(self, c):
        return None

    def conclusion(self, c):
        return list(c)

    # binders and options
    def binder_group(self, c):
        sort = str(c[-1])
        return [_Binder(str(tok), sort, tok.line, tok.column) for tok in c[:-1]]

    def binders(self, c):
        return [b for group in c for b in group]

    def forall(self, c):
        return c[0]

    def name_list(self, c):
        return [str(tok) for tok in c]

    def option(self, c):
        return (str(c[0]), None if c[1] is None else str(c[1]))

    def axiom_option(self, c):
        return ("axiom", None)

    def options(self, c):
        return _Options(c)

    # declarations
    def type_decl(self, c):
        return ("type", c[0])

    def fun_decl(self, c):
        name, args, result, options = c
        return ("fun", name, args or [], str(result), options or _Options())

    def const_decl(self, c):
        name, sort, options = c
        return ("fun", name, [], str(sort), options or _Options())

    def rewrite(self, c):
        return (c[0] or [], c[1], c[2])

    def reduc_decl(self, c):
        return ("reduc", list(c))

    def free_decl(self, c):
        names, sort, options = c
        return ("free", names, str(sort), options or _Options(), sort.line)

    @staticmethod
    def _signature_parts(c):
        name = c[0]
        sorts = next((x for x in c[1:] if isinstance(x, list) and not isinstance(x, _Options)), [])
        options = next((x for x in c[1:] if isinstance(x, _Options)), _Options())
        return name, sorts, options

    def pred_decl(self, c):
        name, sorts, options = self._signature_parts(c)
        return ("pred", name, sorts, options)

    def event_decl(self, c):
        name, sorts, _ = self._signature_parts(c)
        return ("event", name, sorts)

    def implication(self, c):
        return ("clause", c[0] or [], c[1], c[2])

    def fact_clause(self, c):
        return ("clause", c[0] or [], [], c[1])

    def clauses_decl(self, c):
        return ("clauses", list(c))

    def macro_decl(self, c):
        name = c[0]
        params = next((x for x in c[1:-1] if isinstance(x, list)), [])
        return ("macro", name, params, c[-1])

    def statement_kind(self, c):
        return str(c[0])

    @v_args(meta=True)
    def statement(self, meta, c):
        kind, binders, premise, conclusion, options = c
        line = getattr(meta, "line", None)
        return ("statement", kind, binders or [], premise, conclusion, options or _Options(), line)

    def process_decl(self, c):
        return ("process", c[0])

    def start(self, c):
        return list(c)

    # processes
    def nil(self, c):
        return ("nil",)

    def parallel(self, c):
        return ("par", c[0], c[1])

    def replication(self, c):
        return ("repl", c[0])

    def continuation(self, c):
        return _or_nil(c[0] if c else None)

    def else_branch(self, c):
        return _or_nil(c[0] if c else None)

    def restriction(self, c):
        return ("new", c[0], str(c[1]), c[2])

    def input(self, c):
        return ("in", c[0], c[1], c[2])

    def output(self, c):
        return ("out", c[0], c[1], c[2])

    def event_process(self, c):
        args = next((x for x in c[1:-1] if isinstance(x, list)), [])
        return ("event", c[0], args, c[-1])

    def let_process(self, c):
        return ("let", c[0], c[1], c[2], c[3])

    def suchthat_process(self, c):
        return ("suchthat", c[0], c[1], c[2], c[3])

    def if_equal(self, c):
        return ("if_equal", c[0], c[1], c[2], c[3])

    def if_predicate(self, c):
        return ("if_pred", c[0], c[1], c[2])

    def macro_call(self, c):
        args = next((x for x in c[1:] if isinstance(x, list)), [])
        return ("call", c[0], args)

    # patterns
    def pattern_var(self, c):
        return ("pvar", c[0], None)

    def pattern_typed(self, c):
        return ("pvar", c[0], str(c[1]))

    def pattern_equal(self, c):
        return ("peq", c[0])

    def pattern_tuple(self, c):
        items = list(c[0] or [])
        return items[0] if len(items) == 1 else ("ptuple", items)

    def pattern_data(self, c):
        return ("pdata", c[0], list(c[1] or []))

    def patterns(self, c):
        return list(c)


Scope = Dict[str, Term]


def default_label(kind: StatementKind, ordinal: int) -> str:
    return f"{kind.value}_{ordinal}"


class _SpecificationBuilder:
    """Resolves raw declarations into a Specification, collecting diagnostics."""

    def __init__(self, source: Optional[str] = None):
        self.spec = Specification(source=source)
        self.errors: List[Diagnostic] = []
        self.macros: Dict[str, Tuple[List[_Binder], tuple]] = {}
        self.binder_names: Set[str] = set()
        self.counts: Dict[StatementKind, int] = {}
        self._expanding: List[str] = []

    # diagnostics

    def error(self, code: str, message: str, line=None, column=None) -> None:
        self.errors.append(Diagnostic(code, message, line, column))

    def _globals(self) -> Set[str]:
        spec = self.spec
        return (
            set(spec.signature.symbols)
            | set(spec.free_names)
            | set(spec.predicates)
            | set(spec.events)
            | set(self.macros)
        )

    def _declare_name(self, token: Token) -> bool:
        name = str(token)
        if name in RESERVED or name.startswith("tuple_"):
            self.error("E012", f"'{name}' is reserved", token.line, token.column)
            return False
        if name in self._globals():
            self.error("E009", f"'{name}' is already declared", token.line, token.column)
            return False
        return True

    def _check_sort(self, sort: str, line=None) -> None:
        if sort not in self.spec.types:
            self.error("E003", f"Unknown type '{sort}'", line)

    def binder(self, name: str) -> str:
        """A process binder identifier not used by any earlier binder or global."""
        taken = self._globals()
        candidate, k = name, 2
        while candidate in self.binder_names or candidate in taken:
            candidate = f"{name}_{k}"
            k += 1
        self.binder_names.add(candidate)
        return candidate

    # terms and literals

    def term(self, raw: _Raw, scope: Scope) -> Term:
        spec = self.spec
        if isinstance(raw, _Number):
            return nat(raw.value)
        if isinstance(raw, _Plus):
            return nat(raw.offset, self.term(raw.base, scope))
        if isinstance(raw, _Tuple):
            symbol = spec.signature.get(tuple_symbol(len(raw.items)))
            return Fun(symbol.name, tuple(self.term(item, scope) for item in raw.items))
        if isinstance(raw, _Ident):
            if raw.name in scope:
                return scope[raw.name]
            if raw.name in spec.free_names:
                return Name(raw.name)
            symbol = spec.signature.find(raw.name)
            if symbol is not None:
                if symbol.arity != 0:
                    self.error(
                        "E002",
                        f"'{raw.name}' expects {symbol.arity} arguments",
                        raw.line,
                        raw.column,
                    )
                return Fun(raw.name)
            self.error("E003", f"Unbound identifier '{raw.name}'", raw.line, raw.column)
            return Var(raw.name)
        symbol = spec.signature.find(raw.name)
        args = tuple(self.term(arg, scope) for arg in raw.args)
        if symbol is None:
            if raw.name in spec.predicates or raw.name in spec.events:
                self.error(
                    "E013", f"'{raw.name}' is not a function symbol", raw.line, raw.column
                )
            else:
                self.error("E003", f"Unknown function '{raw.name}'", raw.line, raw.column)
        elif symbol.arity != len(args):
            self.error(
                "E002",
                f"'{raw.name}' expects {symbol.arity} arguments, got {len(args)}",
                raw.line,
                raw.column,
            )
        return Fun(raw.name, args)

    def fact(self, literal: _Literal, scope: Scope) -> Optional[Fact]:
        spec = self.spec
        raw = literal.left
        if literal.kind == "event":
            name, raw_args = self._head(raw)
            if name is None or name not in spec.events:
                self.error("E006", "event(...) needs a declared event", literal.line)
                return None
            args = tuple(self.term(a, scope) for a in raw_args)
            declared = spec.events[name]
            if len(args) != len(declared.arg_sorts):
                self.error("E002", f"Event '{name}' expects {len(declared.arg_sorts)} arguments", literal.line)
            return Fact(EVENT, (Fun(name, args),))
        name, raw_args = self._head(raw)
        if name is None:
            self.error("E013", "Expected a fact", literal.line)
            return None
        args = tuple(self.term(a, scope) for a in raw_args)
        if name == ATTACKER or name == MESSAGE:
            expected = 1 if name == ATTACKER else 2
            if len(args) != expected:
                self.error("E002", f"'{name}' expects {expected} arguments", literal.line)
            return Fact(name, args)
        declared = spec.predicates.get(name)
        if declared is None:
            code = "E013" if name in spec.signature or name in spec.events else "E006"
            self.error(code, f"'{name}' is not a declared predicate", literal.line)
            return None
        if len(args) != len(declared.arg_sorts):
            self.error(
                "E002", f"Predicate '{name}' expects {len(declared.arg_sorts)} arguments", literal.line
            )
        return Fact(name, args, declared.blocking)

    @staticmethod
    def _head(raw: _Raw) -> Tuple[Optional[str], List[_Raw]]:
        if isinstance(raw, _Apply):
            return raw.name, raw.args
        if isinstance(raw, _Ident):
            return raw.name, []
        return None, []

    def constraint(self, literal: _Literal, scope: Scope):
        left = self.term(literal.left, scope)
        right = self.term(literal.right, scope)
        if literal.kind == "=":
            return Equal(left, right)
        if literal.kind == "<>":
            return Disequal(left, right)
        if literal.kind == "<":
            return NatLess(left, right)
        return NatLeq(left, right)

    def literals(self, literals: Sequence[_Literal], scope: Scope) -> Tuple[List[Fact], list]:
        facts: List[Fact] = []
        atoms = []
        for literal in literals:
            if literal.kind in ("fact", "event"):
                fact = self.fact(literal, scope)
                if fact is not None:
                    facts.append(fact)
            else:
                atoms.append(self.constraint(literal, scope))
        return facts, atoms

    def binder_scope(self, binders: Sequence[_Binder]) -> Tuple[Scope, Tuple[Var, ...]]:
        scope: Scope = {}
        variables = []
        for binder in binders:
            self._check_sort(binder.sort, binder.line)
            if binder.name in scope:
                self.error("E009", f"Variable '{binder.name}' bound twice", binder.line, binder.column)
            var = Var(binder.name, 0, binder.sort)
            scope[binder.name] = var
            variables.append(var)
        return scope, tuple(variables)

    # declarations

    def build(self, declarations: list) -> Specification:
        for decl in declarations:
            handler = getattr(self, f"_decl_{decl[0]}")
            handler(*decl[1:])
        return self.spec

    def _decl_type(self, token: Token) -> None:
        if str(token) in self.spec.types:
            self.error("E009", f"Type '{token}' is already declared", token.line, token.column)
            return
        self.spec.types.append(str(token))

    def _decl_fun(self, token: Token, sorts: List[str], result: str, options: _Options) -> None:
        if not self._declare_name(token):
            return
        for sort in sorts + [result]:
            self._check_sort(sort, token.line)
        flags = {key for key, _ in options}
        kind = SymbolKind.DATA if "data" in flags else SymbolKind.CONSTRUCTOR
        self.spec.signature.declare(
            FunctionSymbol(str(token), len(sorts), kind, tuple(sorts), result, (), "private" in flags)
        )

    def _decl_reduc(self, rewrites: list) -> None:
        name: Optional[str] = None
        rules: List[RewriteRule] = []
        line = None
        for binders, raw_lhs, raw_rhs in rewrites:
            if not isinstance(raw_lhs, _Apply):
                self.error("E001", "A rewrite rule must start with a destructor application")
                return
            line = raw_lhs.line
            if name is None:
                token = Token("NAME", raw_lhs.name, line=raw_lhs.line, column=raw_lhs.column)
                if not self._declare_name(token):
                    return
                name = raw_lhs.name
            elif raw_lhs.name != name:
                self.error("E001", f"'otherwise' rule defines '{raw_lhs.name}', expected '{name}'", line)
                return
            scope, _ = self.binder_scope(binders)
            lhs = tuple(self.term(arg, scope) for arg in raw_lhs.args)
            rhs = self.term(raw_rhs, scope)
            lhs_vars = {v for t in lhs for v in iter_vars(t)}
            if any(v not in lhs_vars for v in iter_vars(rhs)):
                self.error("E003", f"Result of '{name}' uses a variable absent from its arguments", line)
            if rules and len(lhs) != len(rules[0].lhs):
                self.error("E002", f"Rules of '{name}' disagree on arity", line)
            rules.append(RewriteRule(lhs, rhs))
        if name is None:
            return
        arity = len(rules[0].lhs)
        self.spec.signature.declare(
            FunctionSymbol(name, arity, SymbolKind.DESTRUCTOR, ("bitstring",) * arity, "bitstring", tuple(rules))
        )

    def _decl_free(self, names: List[str], sort: str, options: _Options, line: int) -> None:
        self._check_sort(sort, line)
        private = any(key == "private" for key, _ in options)
        for name in names:
            if self._declare_name(Token("NAME", name, line=line, column=0)):
                self.spec.free_names[name] = FreeName(name, sort, private)

    def _decl_pred(self, token: Token, sorts: List[str], options: _Options) -> None:
        if not self._declare_name(token):
            return
        for sort in sorts:
            self._check_sort(sort, token.line)
        blocking = any(key == "block" for key, _ in options)
        self.spec.predicates[str(token)] = PredicateDecl(str(token), tuple(sorts), blocking)

    def _decl_event(self, token: Token, sorts: List[str]) -> None:
        if not self._declare_name(token):
            return
        for sort in sorts:
            self._check_sort(sort, token.line)
        self.spec.events[str(token)] = EventDecl(str(token), tuple(sorts))

    def _decl_clauses(self, clauses: list) -> None:
        for _, binders, hypotheses, conclusion in clauses:
            scope, variables = self.binder_scope(binders)
            facts, atoms = self.literals(hypotheses, scope)
            if conclusion.kind not in ("fact", "event"):
                self.error("E013", "A clause must conclude a fact", conclusion.line)
                continue
            head = self.fact(conclusion, scope)
            if head is None:
                continue
            self.spec.clauses.append(
                UserClause(tuple(facts), Formula(tuple(atoms)), head, variables, conclusion.line)
            )

    def _decl_macro(self, token: Token, params: List[_Binder], body: tuple) -> None:
        if not self._declare_name(token):
            return
        self.macros[str(token)] = (params, body)

    def _decl_statement(self, kind_text, binders, premise, conclusion, options, line) -> None:
        kind = StatementKind(kind_text)
        flags = dict(options)
        if "axiom" in flags:
            kind = StatementKind.AXIOM
        scope, variables = self.binder_scope(binders)
        facts, atoms = self.literals(premise, scope)
        if atoms:
            self.error("E013", "Constraints are not allowed in a premise", line)
        disjuncts: List[Disjunct] = []
        for conjunction in conclusion or [None]:
            if conjunction is None:
                continue
            c_facts, c_atoms = self.literals(conjunction, scope)
            disjuncts.append(Disjunct(tuple(c_facts), Formula(tuple(c_atoms))))
        self.counts[kind] = self.counts.get(kind, 0) + 1
        label = flags.get("label") or default_label(kind, self.counts[kind])
        self.spec.statements.append(
            Statement(
                kind,
                canonical_premise(tuple(facts)),
                tuple(disjuncts),
                "induction" in flags,
                label,
                variables,
                line,
                "ordered" in flags,
            )
        )

    def _decl_process(self, raw: tuple) -> None:
        self.spec.process = self.process(raw, {})

    # processes

    def process(self, raw: tuple, scope: Scope) -> Process:
        tag = raw[0]
        if tag == "nil":
            return Nil()
        if tag == "par":
            return Parallel(self.process(raw[1], scope), self.process(raw[2], scope))
        if tag == "repl":
            return Replication(self.process(raw[1], scope))
        if tag == "new":
            _, token, sort, then = raw
            self._check_sort(sort, token.line)
            name = self.binder(str(token))
            return Restriction(name, sort, self.process(then, {**scope, str(token): Name(name)}))
        if tag == "in":
            _, channel, pattern, then = raw
            channel_term = self.term(channel, scope)
            if pattern[0] == "pvar":
                var = self._pattern_variable(pattern)
                return Input(channel_term, var, self.process(then, {**scope, str(pattern[1]): var}))
            fresh = Var(self.binder("msg"), 0, "bitstring")
            compiled, inner = self.pattern(pattern, scope)
            body = LetExpression(compiled, fresh, self.process(then, inner), Nil())
            return Input(channel_term, fresh, body)
        if tag == "out":
            _, channel, message, then = raw
            return Output(self.term(channel, scope), self.term(message, scope), self.process(then, scope))
        if tag == "event":
            _, token, args, then = raw
            declared = self.spec.events.get(str(token))
            terms = tuple(self.term(a, scope) for a in args)
            if declared is None:
                self.error("E006", f"Undeclared event '{token}'", token.line, token.column)
            elif len(declared.arg_sorts) != len(terms):
                self.error("E002", f"Event '{token}' expects {len(declared.arg_sorts)} arguments", token.line)
            return EventProcess(Fun(str(token), terms), self.process(then, scope))
        if tag == "let":
            _, pattern, expression, then, otherwise = raw
            value = self.term(expression, scope)
            compiled, inner = self.pattern(pattern, scope)
            return LetExpression(
                compiled, value, self.process(then, inner), self.process(otherwise, scope)
            )
        if tag == "suchthat":
            _, binders, condition, then, otherwise = raw
            inner = dict(scope)
            variables = []
            for binder in binders:
                self._check_sort(binder.sort, binder.line)
                var = Var(self.binder(binder.name), 0, binder.sort)
                inner[binder.name] = var
                variables.append(var)
            fact = self.fact(_Literal("fact", condition, None, _line(condition)), inner)
            fact = fact or Fact("", ())
            return LetSuchThat(
                tuple(variables), fact, self.process(then, inner), self.process(otherwise, scope)
            )
        if tag == "if_equal":
            _, left, right, then, otherwise = raw
            return LetExpression(
                PatternEqual(self.term(right, scope)),
                self.term(left, scope),
                self.process(then, scope),
                self.process(otherwise, scope),
            )
        if tag == "if_pred":
            _, condition, then, otherwise = raw
            fact = self.fact(_Literal("fact", condition, None, _line(condition)), scope)
            return LetSuchThat(
                (), fact or Fact("", ()), self.process(then, scope), self.process(otherwise, scope)
            )
        if tag == "call":
            return self._expand(raw[1], raw[2], scope)
        raise ValueError(f"Unknown process form: {tag}")

    def _expand(self, token: Token, args: list, scope: Scope) -> Process:
        name = str(token)
        macro = self.macros.get(name)
        if macro is None:
            self.error("E003", f"Unknown process macro '{name}'", token.line, token.column)
            return Nil()
        if name in self._expanding:
            self.error("E001", f"Macro '{name}' is recursive", token.line, token.column)
            return Nil()
        params, body = macro
        if len(params) != len(args):
            self.error("E002", f"Macro '{name}' expects {len(params)} arguments", token.line)
            return Nil()
        inner = {p.name: self.term(a, scope) for p, a in zip(params, args)}
        self._expanding.append(name)
        try:
            return self.process(body, inner)
        finally:
            self._expanding.pop()

    def _pattern_variable(self, pattern: tuple) -> Var:
        _, token, sort = pattern
        sort = sort or "bitstring"
        self._check_sort(sort, token.line)
        return Var(self.binder(str(token)), 0, sort)

    def pattern(self, raw: tuple, scope: Scope) -> Tuple[Pattern, Scope]:
        tag = raw[0]
        if tag == "pvar":
            var = self._pattern_variable(raw)
            return PatternVar(var), {**scope, str(raw[1]): var}
        if tag == "peq":
            return PatternEqual(self.term(raw[1], scope)), scope
        if tag == "ptuple":
            symbol = self.spec.signature.get(tuple_symbol(len(raw[1]))).name
            subs = raw[1]
        else:
            token = raw[1]
            declared = self.spec.signature.find(str(token))
            symbol = str(token)
            subs = raw[2]
            if declared is None or not declared.is_data:
                self.error("E013", f"'{token}' is not a data constructor", token.line, token.column)
            elif declared.arity != len(subs):
                self.error("E002", f"'{token}' expects {declared.arity} arguments", token.line)
        compiled = []
        for sub in subs:
            pattern, scope = self.pattern(sub, scope)
            compiled.append(pattern)
        return PatternData(symbol, tuple(compiled)), scope


def parse_specification(
    text: str, source: Optional[str] = None, *, validate: bool = True
) -> Specification:
    """Parse and resolve a specification.

    Raises:
        SpecificationError: on syntax errors, resolution errors and, when
            `validate` is set, on any validation diagnostic.
    """
    try:
        tree = _lark_parser().parse(text)
    except UnexpectedInput as exc:
        line = getattr(exc, "line", None)
        column = getattr(exc, "column", None)
        line = line if isinstance(line, int) and line > 0 else None
        column = column if isinstance(column, int) and column > 0 else None
        raise SpecificationError.single("E001", "Syntax error", line, column) from exc
    raw = _RawTransformer().transform(tree)
    builder = _SpecificationBuilder(source)
    spec = builder.build(raw)
    if builder.errors:
        raise SpecificationError(builder.errors)
    if validate:
        from .validate import validate_specification

        diagnostics = validate_specification(spec)
        if diagnostics:
            raise SpecificationError(diagnostics)
    logger.debug(
        "Parsed %s: %d clauses, %d statements",
        source or "<string>",
        len(spec.clauses),
        len(spec.statements),
    )
    return spec


def parse_file(path: Union[str, Path], *, validate: bool = True) -> Specification:
    path = Path(path)
    return parse_specification(path.read_text(encoding="utf-8"), str(path), validate=validate)
