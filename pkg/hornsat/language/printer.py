"""Render a Specification back into the input language.

The output re-parses to an equal Specification, so printing twice gives the
same text.
"""

from typing import Dict, List, Sequence

from ..terms.fact import EVENT, Fact
from ..terms.formula import Disequal, Equal, Formula, NatLeq, NatLess
from ..terms.symbols import SymbolKind
from ..terms.term import SUCC, ZERO, Term, Var, is_tuple_symbol
from .ast import (
    BUILTIN_TYPES,
    EventProcess,
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
    Process,
    Replication,
    Restriction,
    Specification,
    Statement,
    StatementKind,
    UserClause,
)
from .parser import default_label

INDENT = "    "


def format_term(term: Term) -> str:
    return str(term)


def format_fact(fact: Fact) -> str:
    """A fact in input syntax; blocking forms print as their plain fact."""
    if fact.predicate == EVENT:
        return f"event({format_term(fact.args[0])})"
    return f"{fact.predicate}({', '.join(format_term(a) for a in fact.args)})"


def format_atom(atom) -> str:
    if isinstance(atom, Equal):
        return f"{atom.left} = {atom.right}"
    if isinstance(atom, Disequal):
        return f"{atom.left} <> {atom.right}"
    if isinstance(atom, NatLess):
        return f"{atom.left} < {atom.right}"
    if isinstance(atom, NatLeq):
        return f"{atom.left} <= {atom.right}"
    raise TypeError(f"Not a constraint atom: {atom!r}")


def _literals(facts: Sequence[Fact], formula: Formula) -> str:
    parts = [format_fact(f) for f in facts] + [format_atom(a) for a in formula.atoms]
    return " && ".join(parts)


def _binders(variables: Sequence[Var]) -> str:
    return ", ".join(f"{v}: {v.sort}" for v in variables)


def _options(items: List[str]) -> str:
    return f" [{', '.join(items)}]" if items else ""


def format_pattern(pattern: Pattern) -> str:
    if isinstance(pattern, PatternVar):
        return f"{pattern.var}: {pattern.var.sort}"
    if isinstance(pattern, PatternEqual):
        return f"={format_term(pattern.term)}"
    inner = ", ".join(format_pattern(p) for p in pattern.args)
    if is_tuple_symbol(pattern.symbol):
        return f"({inner})"
    return f"{pattern.symbol}({inner})"


def _branch(lines: List[str], head: str, then: Process, otherwise: Process, depth: int) -> None:
    pad = INDENT * depth
    lines.append(f"{pad}{head} (")
    lines.extend(format_process(then, depth + 1))
    if isinstance(otherwise, Nil):
        lines.append(f"{pad})")
    else:
        lines.append(f"{pad}) else (")
        lines.extend(format_process(otherwise, depth + 1))
        lines.append(f"{pad})")


def format_process(process: Process, depth: int = 0) -> List[str]:
    """Lines of the process, indented by `depth` levels."""
    pad = INDENT * depth
    lines: List[str] = []
    while True:
        if isinstance(process, Nil):
            lines.append(f"{pad}0")
            return lines
        if isinstance(process, Parallel):
            lines.append(f"{pad}(")
            lines.extend(format_process(process.left, depth + 1))
            lines.append(f"{pad}) | (")
            lines.extend(format_process(process.right, depth + 1))
            lines.append(f"{pad})")
            return lines
        if isinstance(process, Replication):
            lines.append(f"{pad}!(")
            lines.extend(format_process(process.body, depth + 1))
            lines.append(f"{pad})")
            return lines
        if isinstance(process, LetExpression):
            if isinstance(process.pattern, PatternEqual):
                head = f"if {process.expression} = {process.pattern.term} then"
            else:
                head = f"let {format_pattern(process.pattern)} = {process.expression} in"
            _branch(lines, head, process.then, process.otherwise, depth)
            return lines
        if isinstance(process, LetSuchThat):
            if process.variables:
                head = (
                    f"let {_binders(process.variables)} suchthat "
                    f"{format_fact(process.condition)} in"
                )
            else:
                head = f"if {format_fact(process.condition)} then"
            _branch(lines, head, process.then, process.otherwise, depth)
            return lines
        if isinstance(process, Restriction):
            step = f"new {process.name}: {process.sort}"
        elif isinstance(process, Input):
            step = f"in({process.channel}, {process.variable}: {process.variable.sort})"
        elif isinstance(process, Output):
            step = f"out({process.channel}, {process.message})"
        elif isinstance(process, EventProcess):
            step = f"event {process.atom}"
        else:
            raise TypeError(f"Not a process: {process!r}")
        if isinstance(process.then, Nil):
            lines.append(f"{pad}{step}")
            return lines
        lines.append(f"{pad}{step};")
        process = process.then


def format_clause(clause: UserClause) -> str:
    prefix = f"forall {_binders(clause.variables)}; " if clause.variables else ""
    body = _literals(clause.hypotheses, clause.formula)
    head = format_fact(clause.conclusion)
    return f"{prefix}{body} -> {head}" if body else f"{prefix}{head}"


def format_statement(statement: Statement, ordinal: int) -> str:
    text = statement.kind.value
    if statement.variables:
        text += f" {_binders(statement.variables)};"
    text += " " + " && ".join(format_fact(f) for f in statement.premise)
    if statement.conclusion:
        text += " ==> " + " || ".join(
            _literals(d.facts, d.formula) or "false" for d in statement.conclusion
        )
    else:
        text += " ==> false"
    options = []
    if statement.induction:
        options.append("induction")
    if statement.ordered:
        options.append("ordered")
    if statement.label != default_label(statement.kind, ordinal):
        options.append(f"label = {statement.label}")
    return text + _options(options) + "."


def format_specification(spec: Specification) -> str:
    out: List[str] = []
    for name in spec.types:
        if name not in BUILTIN_TYPES:
            out.append(f"type {name}.")
    destructors = []
    for symbol in spec.signature.user_symbols():
        if is_tuple_symbol(symbol.name) or symbol.name in (ZERO, SUCC):
            continue
        if symbol.kind is SymbolKind.DESTRUCTOR:
            destructors.append(symbol)
            continue
        flags = []
        if symbol.is_data:
            flags.append("data")
        if symbol.private:
            flags.append("private")
        if symbol.arity == 0:
            out.append(f"const {symbol.name}: {symbol.result_sort}{_options(flags)}.")
        else:
            sorts = ", ".join(symbol.arg_sorts)
            out.append(f"fun {symbol.name}({sorts}): {symbol.result_sort}{_options(flags)}.")
    for symbol in destructors:
        rules = []
        for rule in symbol.rules:
            variables = rule.variables()
            prefix = f"forall {_binders(variables)}; " if variables else ""
            lhs = ", ".join(format_term(t) for t in rule.lhs)
            rules.append(f"{prefix}{symbol.name}({lhs}) = {format_term(rule.rhs)}")
        out.append("reduc " + "\n    otherwise ".join(rules) + ".")
    for free in spec.free_names.values():
        out.append(f"free {free.name}: {free.sort}{_options(['private'] if free.private else [])}.")
    for event in spec.events.values():
        args = f"({', '.join(event.arg_sorts)})" if event.arg_sorts else ""
        out.append(f"event {event.name}{args}.")
    for pred in spec.predicates.values():
        args = f"({', '.join(pred.arg_sorts)})"
        out.append(f"pred {pred.name}{args}{_options(['block'] if pred.blocking else [])}.")
    if spec.clauses:
        out.append("clauses")
        out.append(";\n".join(f"{INDENT}{format_clause(c)}" for c in spec.clauses) + ".")
    ordinals: Dict[StatementKind, int] = {}
    for statement in spec.statements:
        ordinals[statement.kind] = ordinals.get(statement.kind, 0) + 1
        out.append(format_statement(statement, ordinals[statement.kind]))
    if not isinstance(spec.process, Nil):
        out.append("process")
        out.extend(format_process(spec.process, 1))
    return "\n".join(out) + "\n"
