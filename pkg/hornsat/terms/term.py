"""Terms: variables, name patterns, function applications and the fail constant."""

from dataclasses import dataclass, field
from typing import Dict, Iterable, Iterator, Optional, Set, Tuple

ZERO = "zero"
SUCC = "succ"
TUPLE_PREFIX = "tuple_"


class Term:
    """Base class of all terms. Terms are immutable and hashable."""

    __slots__ = ()


@dataclass(frozen=True)
class Var(Term):
    """A variable. Two variables are equal when name and index agree."""

    name: str
    index: int = 0
    sort: str = field(default="any", compare=False)

    def __str__(self) -> str:
        return self.name if self.index == 0 else f"{self.name}_{self.index}"


@dataclass(frozen=True)
class Name(Term):
    """An instrumented name pattern `a[M1, ..., Mn]`.

    Free names are name patterns with no arguments.
    """

    symbol: str
    args: Tuple[Term, ...] = ()

    def __str__(self) -> str:
        if not self.args:
            return self.symbol
        return f"{self.symbol}[{', '.join(str(a) for a in self.args)}]"


@dataclass(frozen=True)
class Fun(Term):
    """Application of a function symbol."""

    symbol: str
    args: Tuple[Term, ...] = ()

    def __str__(self) -> str:
        view = nat_view(self)
        if view is not None:
            base, offset = view
            if base is None:
                return str(offset)
            return f"{base} + {offset}"
        if is_tuple_symbol(self.symbol):
            return f"({', '.join(str(a) for a in self.args)})"
        if not self.args:
            return self.symbol
        return f"{self.symbol}({', '.join(str(a) for a in self.args)})"


@dataclass(frozen=True)
class Fail(Term):
    """The special constant produced by failed destructor evaluation."""

    def __str__(self) -> str:
        return "fail"


FAIL = Fail()

Substitution = Dict[Var, Term]


def tuple_symbol(arity: int) -> str:
    return f"{TUPLE_PREFIX}{arity}"


def is_tuple_symbol(symbol: str) -> bool:
    return symbol.startswith(TUPLE_PREFIX) and symbol[len(TUPLE_PREFIX):].isdigit()


def make_tuple(items: Iterable[Term]) -> Term:
    items = tuple(items)
    return Fun(tuple_symbol(len(items)), items)


def nat(value: int, base: Optional[Term] = None) -> Term:
    """Build `succ^value(base)`, with `zero` when no base is given."""
    term = base if base is not None else Fun(ZERO)
    for _ in range(value):
        term = Fun(SUCC, (term,))
    return term


def nat_view(term: Term) -> Optional[Tuple[Optional[Term], int]]:
    """Decompose a successor chain into (base, offset).

    Returns (None, k) for the numeral k and (t, k) for `t + k` with k >= 1.
    Returns None when the term is not a successor chain.
    """
    offset = 0
    while isinstance(term, Fun) and term.symbol == SUCC and len(term.args) == 1:
        offset += 1
        term = term.args[0]
    if isinstance(term, Fun) and term.symbol == ZERO and not term.args:
        return None, offset
    if offset == 0:
        return None
    return term, offset


def iter_vars(term: Term) -> Iterator[Var]:
    """Yield the variables of a term in left-to-right order, with repetitions."""
    stack = [term]
    while stack:
        current = stack.pop()
        if isinstance(current, Var):
            yield current
        elif isinstance(current, (Fun, Name)):
            stack.extend(reversed(current.args))


def term_vars(term: Term) -> Set[Var]:
    return set(iter_vars(term))


def occurs(var: Var, term: Term) -> bool:
    return any(v == var for v in iter_vars(term))


def is_ground(term: Term) -> bool:
    return next(iter_vars(term), None) is None


def depth(term: Term) -> int:
    if isinstance(term, (Fun, Name)) and term.args:
        return 1 + max(depth(a) for a in term.args)
    return 0


def size(term: Term) -> int:
    if isinstance(term, (Fun, Name)):
        return 1 + sum(size(a) for a in term.args)
    return 1


def apply_subst(subst: Substitution, term: Term) -> Term:
    """Replace every variable of `term` bound in `subst`.

    The substitution is applied once; callers normalize it beforehand
    when they need idempotence.
    """
    if not subst:
        return term
    if isinstance(term, Var):
        return subst.get(term, term)
    if isinstance(term, Fun):
        if not term.args:
            return term
        return Fun(term.symbol, tuple(apply_subst(subst, a) for a in term.args))
    if isinstance(term, Name):
        if not term.args:
            return term
        return Name(term.symbol, tuple(apply_subst(subst, a) for a in term.args))
    return term


def compose(first: Substitution, second: Substitution) -> Substitution:
    """Return the substitution equivalent to applying `first` then `second`."""
    result = {v: apply_subst(second, t) for v, t in first.items()}
    for v, t in second.items():
        if v not in result:
            result[v] = t
    return {v: t for v, t in result.items() if t != v}


def shift_var(var: Var, offset: int) -> Var:
    return Var(var.name, var.index + offset, var.sort)


class FreshVariables:
    """Source of variables that cannot clash with user-written ones.

    Generated names start with `~`, which the input language never accepts.
    """

    def __init__(self, start: int = 0):
        self._next = start

    def var(self, name: str, sort: str = "any") -> Var:
        index = self._next
        self._next += 1
        return Var("~" + name.lstrip("~"), index, sort)

    def renaming(self, variables: Iterable[Var]) -> Substitution:
        result: Substitution = {}
        for v in variables:
            if v not in result:
                result[v] = self.var(v.name, v.sort)
        return result


def max_index(terms: Iterable[Term]) -> int:
    """Largest variable index occurring in `terms`, or -1."""
    best = -1
    for term in terms:
        for v in iter_vars(term):
            if v.index > best:
                best = v.index
    return best
