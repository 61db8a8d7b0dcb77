"""Typed model of a parsed specification: declarations, processes and statements."""

from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, Iterator, List, Optional, Set, Tuple, Union

from ..terms.fact import STANDARD_PREDICATES, Fact
from ..terms.formula import TRUE, Formula
from ..terms.symbols import Signature
from ..terms.term import Fun, Name, Substitution, Term, Var, apply_subst, iter_vars, make_tuple

BUILTIN_TYPES = ("bitstring", "channel", "nat")


# Patterns


@dataclass(frozen=True)
class PatternVar:
    var: Var


@dataclass(frozen=True)
class PatternEqual:
    """`=M`: matches only the value of M."""

    term: Term


@dataclass(frozen=True)
class PatternData:
    """Data-constructor pattern, tuples included."""

    symbol: str
    args: Tuple["Pattern", ...]


Pattern = Union[PatternVar, PatternEqual, PatternData]


def pattern_term(pattern: Pattern) -> Term:
    """The term a value must be equal to for the pattern to match."""
    if isinstance(pattern, PatternVar):
        return pattern.var
    if isinstance(pattern, PatternEqual):
        return pattern.term
    return Fun(pattern.symbol, tuple(pattern_term(p) for p in pattern.args))


def pattern_vars(pattern: Pattern) -> List[Var]:
    if isinstance(pattern, PatternVar):
        return [pattern.var]
    if isinstance(pattern, PatternEqual):
        return []
    found: List[Var] = []
    for sub in pattern.args:
        found.extend(pattern_vars(sub))
    return found


def apply_pattern(subst: Substitution, pattern: Pattern) -> Pattern:
    if isinstance(pattern, PatternVar):
        return pattern
    if isinstance(pattern, PatternEqual):
        return PatternEqual(apply_subst(subst, pattern.term))
    return PatternData(pattern.symbol, tuple(apply_pattern(subst, p) for p in pattern.args))


# Processes


@dataclass(frozen=True)
class Nil:
    pass


@dataclass(frozen=True)
class Output:
    channel: Term
    message: Term
    then: "Process" = Nil()


@dataclass(frozen=True)
class Input:
    channel: Term
    variable: Var
    then: "Process" = Nil()


@dataclass(frozen=True)
class Parallel:
    left: "Process"
    right: "Process"


@dataclass(frozen=True)
class Replication:
    body: "Process"
    session: Optional[Var] = None


@dataclass(frozen=True)
class Restriction:
    name: str
    sort: str
    then: "Process" = Nil()


@dataclass(frozen=True)
class LetExpression:
    pattern: Pattern
    expression: Term
    then: "Process" = Nil()
    otherwise: "Process" = Nil()


@dataclass(frozen=True)
class LetSuchThat:
    variables: Tuple[Var, ...]
    condition: Fact
    then: "Process" = Nil()
    otherwise: "Process" = Nil()


@dataclass(frozen=True)
class EventProcess:
    atom: Term
    then: "Process" = Nil()


Process = Union[
    Nil, Output, Input, Parallel, Replication, Restriction, LetExpression, LetSuchThat, EventProcess
]


def iter_subprocesses(process: Process) -> Iterator[Process]:
    """Pre-order walk over a process tree."""
    stack = [process]
    while stack:
        current = stack.pop()
        yield current
        if isinstance(current, Parallel):
            stack.extend((current.right, current.left))
        elif isinstance(current, Replication):
            stack.append(current.body)
        elif isinstance(current, (LetExpression, LetSuchThat)):
            stack.extend((current.otherwise, current.then))
        elif isinstance(current, (Output, Input, Restriction, EventProcess)):
            stack.append(current.then)


def process_binders(process: Process) -> List[str]:
    """Identifiers bound anywhere in the process, with repetitions."""
    names: List[str] = []
    for node in iter_subprocesses(process):
        if isinstance(node, Input):
            names.append(node.variable.name)
        elif isinstance(node, Restriction):
            names.append(node.name)
        elif isinstance(node, LetExpression):
            names.extend(v.name for v in pattern_vars(node.pattern))
        elif isinstance(node, LetSuchThat):
            names.extend(v.name for v in node.variables)
    return names


# Declarations


@dataclass(frozen=True)
class FreeName:
    name: str
    sort: str
    private: bool = False

    @property
    def term(self) -> Name:
        return Name(self.name)


@dataclass(frozen=True)
class PredicateDecl:
    name: str
    arg_sorts: Tuple[str, ...]
    blocking: bool = False


@dataclass(frozen=True)
class EventDecl:
    name: str
    arg_sorts: Tuple[str, ...]


@dataclass(frozen=True)
class UserClause:
    """A clause of C_user: `hypotheses && formula -> conclusion`."""

    hypotheses: Tuple[Fact, ...]
    formula: Formula
    conclusion: Fact
    variables: Tuple[Var, ...] = ()
    line: Optional[int] = field(default=None, compare=False)


# Statements


class StatementKind(str, Enum):
    QUERY = "query"
    LEMMA = "lemma"
    AXIOM = "axiom"


@dataclass(frozen=True)
class Disjunct:
    """One conjunction of the conclusion: facts and constraint atoms."""

    facts: Tuple[Fact, ...] = ()
    formula: Formula = TRUE

    def __str__(self) -> str:
        parts = [str(f) for f in self.facts] + [str(a) for a in self.formula.atoms]
        return " && ".join(parts) if parts else "true"


@dataclass(frozen=True)
class Statement:
    """`premise ==> ψ1 || ... || ψk`. An empty conclusion means `false`.

    An ordered statement only speaks of premise events that occur in the
    written order, each strictly before the next.
    """

    kind: StatementKind
    premise: Tuple[Fact, ...]
    conclusion: Tuple[Disjunct, ...] = ()
    induction: bool = False
    label: str = ""
    variables: Tuple[Var, ...] = ()
    line: Optional[int] = field(default=None, compare=False)
    ordered: bool = False

    @property
    def is_axiom(self) -> bool:
        return self.kind is StatementKind.AXIOM

    @property
    def idx(self) -> int:
        """1-based index of the first premise on a user predicate, n+1 if none."""
        for position, fact in enumerate(self.premise, start=1):
            if fact.predicate not in STANDARD_PREDICATES:
                return position
        return len(self.premise) + 1

    def variables_of_premise(self) -> Set[Var]:
        found: Set[Var] = set()
        for fact in self.premise:
            found |= fact.vars()
        return found

    def inductive_hypothesis(self) -> "Statement":
        """The statement with every conclusion fact replaced by its blocking form."""
        disjuncts = tuple(
            Disjunct(tuple(f.to_blocking() for f in d.facts), d.formula) for d in self.conclusion
        )
        return Statement(
            StatementKind.LEMMA,
            self.premise,
            disjuncts,
            True,
            self.label,
            self.variables,
            self.line,
        )

    def __str__(self) -> str:
        premise = " && ".join(str(f) for f in self.premise)
        if not self.conclusion:
            return f"{premise} ==> false"
        return f"{premise} ==> " + " || ".join(str(d) for d in self.conclusion)


def canonical_premise(facts: Tuple[Fact, ...]) -> Tuple[Fact, ...]:
    """Standard predicates first, user predicates after, each group in source order."""
    standard = tuple(f for f in facts if f.predicate in STANDARD_PREDICATES)
    user = tuple(f for f in facts if f.predicate not in STANDARD_PREDICATES)
    return standard + user


# Specification


@dataclass
class Specification:
    types: List[str] = field(default_factory=lambda: list(BUILTIN_TYPES))
    signature: Signature = field(default_factory=Signature)
    free_names: Dict[str, FreeName] = field(default_factory=dict)
    predicates: Dict[str, PredicateDecl] = field(default_factory=dict)
    events: Dict[str, EventDecl] = field(default_factory=dict)
    clauses: List[UserClause] = field(default_factory=list)
    process: Process = Nil()
    statements: List[Statement] = field(default_factory=list)
    source: Optional[str] = None

    @property
    def clause_defined(self) -> Set[str]:
        """F_p: user predicates whose semantics is given by C_user."""
        return {p.name for p in self.predicates.values() if not p.blocking}

    @property
    def declared_blocking(self) -> Set[str]:
        """F_ap: predicates declared blocking."""
        return {p.name for p in self.predicates.values() if p.blocking}

    def public_names(self) -> List[FreeName]:
        return [n for n in self.free_names.values() if not n.private]

    def is_public_channel(self, term: Term) -> bool:
        if isinstance(term, Name) and not term.args:
            declared = self.free_names.get(term.symbol)
            return declared is not None and not declared.private
        return False

    def merge(self, other: "Specification") -> "Specification":
        """Combine two fragments; `other`'s process runs in parallel with ours."""
        merged = Specification(
            types=self.types + [t for t in other.types if t not in self.types],
            signature=Signature(dict(self.signature.symbols)),
            free_names={**self.free_names, **other.free_names},
            predicates={**self.predicates, **other.predicates},
            events={**self.events, **other.events},
            clauses=self.clauses + other.clauses,
            process=_parallel(self.process, other.process),
            statements=self.statements + other.statements,
            source=self.source,
        )
        for symbol in other.signature:
            merged.signature.declare(symbol)
        return merged


def _parallel(left: Process, right: Process) -> Process:
    if isinstance(left, Nil):
        return right
    if isinstance(right, Nil):
        return left
    return Parallel(left, right)


def event_atom(name: str, args: Tuple[Term, ...]) -> Fun:
    return Fun(name, args)


def tuple_pattern(items: Tuple[Pattern, ...]) -> PatternData:
    return PatternData(make_tuple(pattern_term(p) for p in items).symbol, items)


def free_variables(terms: Tuple[Term, ...]) -> Set[Var]:
    found: Set[Var] = set()
    for term in terms:
        found.update(iter_vars(term))
    return found
