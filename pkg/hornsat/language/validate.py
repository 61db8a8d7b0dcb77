"""Semantic checks on a parsed Specification."""

from collections import Counter
from typing import Iterable, List

from ..errors import Diagnostic
from ..terms.fact import ATTACKER, EVENT, MESSAGE, STANDARD_PREDICATES, Fact
from ..terms.term import Fun, Name, Term
from .ast import (
    EventProcess,
    Input,
    LetExpression,
    LetSuchThat,
    Output,
    PatternData,
    PatternEqual,
    Specification,
    iter_subprocesses,
    process_binders,
)

_STANDARD_ARITY = {ATTACKER: 1, MESSAGE: 2, EVENT: 1}


def _subterms(term: Term) -> Iterable[Term]:
    stack = [term]
    while stack:
        current = stack.pop()
        yield current
        if isinstance(current, (Fun, Name)):
            stack.extend(current.args)


class _Validator:
    def __init__(self, spec: Specification):
        self.spec = spec
        self.diagnostics: List[Diagnostic] = []

    def report(self, code: str, message: str, line=None) -> None:
        diagnostic = Diagnostic(code, message, line)
        if diagnostic not in self.diagnostics:
            self.diagnostics.append(diagnostic)

    def check_term(self, term: Term, where: str, line=None, allow_destructors=False) -> None:
        for sub in _subterms(term):
            if not isinstance(sub, Fun):
                continue
            symbol = self.spec.signature.find(sub.symbol)
            if symbol is None:
                self.report("E003", f"Unknown function '{sub.symbol}' in {where}", line)
            elif symbol.arity != len(sub.args):
                self.report("E002", f"'{sub.symbol}' applied to {len(sub.args)} arguments in {where}", line)
            elif symbol.is_destructor and not allow_destructors:
                self.report("E010", f"Destructor '{sub.symbol}' outside a let expression in {where}", line)

    def check_fact(self, fact: Fact, where: str, line=None) -> None:
        if fact.predicate in STANDARD_PREDICATES:
            expected = _STANDARD_ARITY[fact.predicate]
            if len(fact.args) != expected:
                self.report("E002", f"'{fact.predicate}' takes {expected} arguments in {where}", line)
            if fact.predicate == EVENT and fact.args:
                self.check_event_atom(fact.args[0], where, line)
                return
        else:
            declared = self.spec.predicates.get(fact.predicate)
            if declared is None:
                self.report("E006", f"Undeclared predicate '{fact.predicate}' in {where}", line)
                return
            if len(declared.arg_sorts) != len(fact.args):
                self.report("E002", f"'{fact.predicate}' takes {len(declared.arg_sorts)} arguments in {where}", line)
        for arg in fact.args:
            self.check_term(arg, where, line)

    def check_event_atom(self, atom: Term, where: str, line=None) -> None:
        if not isinstance(atom, Fun) or atom.symbol not in self.spec.events:
            self.report("E006", f"Undeclared event in {where}", line)
            return
        declared = self.spec.events[atom.symbol]
        if len(declared.arg_sorts) != len(atom.args):
            self.report("E002", f"Event '{atom.symbol}' takes {len(declared.arg_sorts)} arguments in {where}", line)
        for arg in atom.args:
            self.check_term(arg, where, line)

    def mentions_private_name(self, term: Term) -> bool:
        for sub in _subterms(term):
            if isinstance(sub, Name) and not sub.args:
                declared = self.spec.free_names.get(sub.symbol)
                if declared is not None and declared.private:
                    return True
        return False

    # sections

    def check_signature(self) -> None:
        for symbol in self.spec.signature:
            if symbol.is_destructor and not symbol.rules:
                self.report("E011", f"Destructor '{symbol.name}' has no rewrite rules")
            if not symbol.is_destructor and symbol.rules:
                self.report("E011", f"Constructor '{symbol.name}' cannot have rewrite rules")
            for rule in symbol.rules:
                for term in rule.lhs + (rule.rhs,):
                    self.check_term(term, f"a rule of '{symbol.name}'")

    def check_clauses(self) -> None:
        blocking = self.spec.declared_blocking
        for clause in self.spec.clauses:
            where = f"the clause concluding {clause.conclusion.predicate}"
            if clause.conclusion.predicate in blocking:
                self.report(
                    "E004",
                    f"Clause concludes the blocking predicate '{clause.conclusion.predicate}'",
                    clause.line,
                )
            for fact in clause.hypotheses + (clause.conclusion,):
                if fact.predicate in STANDARD_PREDICATES:
                    self.report(
                        "E005",
                        f"'{fact.predicate}' cannot occur in a user clause",
                        clause.line,
                    )
                else:
                    self.check_fact(fact, where, clause.line)
            for term in clause.formula.iter_terms():
                self.check_term(term, where, clause.line)

    def check_statements(self) -> None:
        for statement in self.spec.statements:
            where = f"statement {statement.label}"
            if not statement.premise:
                self.report("E013", f"{where} has an empty premise", statement.line)
            if statement.ordered and (
                not statement.is_axiom
                or len(statement.premise) < 2
                or any(f.predicate != EVENT for f in statement.premise)
            ):
                self.report("E013", f"{where} is ordered: it must be an axiom over two or more events", statement.line)
            facts = list(statement.premise)
            terms: List[Term] = []
            for disjunct in statement.conclusion:
                facts.extend(disjunct.facts)
                terms.extend(disjunct.formula.iter_terms())
            mentioned = list(terms)
            for fact in facts:
                self.check_fact(fact, where, statement.line)
                mentioned.extend(fact.args)
            for term in terms:
                self.check_term(term, where, statement.line)
            if any(self.mentions_private_name(term) for term in mentioned):
                self.report("E007", f"{where} mentions a private name", statement.line)

    def check_process(self) -> None:
        counts = Counter(process_binders(self.spec.process))
        for name, count in counts.items():
            if count > 1:
                self.report("E009", f"Binder '{name}' is bound {count} times in the process")
        for node in iter_subprocesses(self.spec.process):
            if isinstance(node, Output):
                self.check_term(node.channel, "an output channel")
                self.check_term(node.message, "an output")
            elif isinstance(node, Input):
                self.check_term(node.channel, "an input channel")
            elif isinstance(node, EventProcess):
                self.check_event_atom(node.atom, "an event")
            elif isinstance(node, LetExpression):
                self.check_term(node.expression, "a let expression", allow_destructors=True)
                self.check_pattern(node.pattern)
            elif isinstance(node, LetSuchThat):
                self.check_suchthat(node)

    def check_pattern(self, pattern) -> None:
        if isinstance(pattern, PatternEqual):
            self.check_term(pattern.term, "a pattern")
        elif isinstance(pattern, PatternData):
            for sub in pattern.args:
                self.check_pattern(sub)

    def check_suchthat(self, node: LetSuchThat) -> None:
        condition = node.condition
        if condition.predicate in STANDARD_PREDICATES or condition.predicate not in self.spec.predicates:
            self.report("E006", f"'{condition.predicate}' is not a user predicate")
            return
        self.check_fact(condition, "a suchthat condition")
        present = set(condition.iter_vars())
        for var in node.variables:
            if var not in present:
                self.report("E008", f"Binder '{var}' does not occur in {condition}")

    def run(self) -> List[Diagnostic]:
        self.check_signature()
        self.check_clauses()
        self.check_statements()
        self.check_process()
        return self.diagnostics


def validate_specification(spec: Specification) -> List[Diagnostic]:
    """Return every diagnostic of the specification; empty when well formed."""
    return _Validator(spec).run()


__all__ = ["validate_specification"]
