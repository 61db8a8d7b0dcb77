"""Function symbols, rewrite rules and the signature that holds them."""

from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, Iterator, Optional, Tuple

from ..errors import EvaluationError
from .term import SUCC, ZERO, Term, Var, is_tuple_symbol, iter_vars

NAT_SORT = "nat"
BITSTRING_SORT = "bitstring"
SESSION_SORT = "session"


class SymbolKind(str, Enum):
    CONSTRUCTOR = "constructor"
    DESTRUCTOR = "destructor"
    DATA = "data"


@dataclass(frozen=True)
class RewriteRule:
    """`g(lhs...) -> rhs`. Rules of a destructor are tried in order."""

    lhs: Tuple[Term, ...]
    rhs: Term

    def variables(self) -> Tuple[Var, ...]:
        seen = []
        for arg in self.lhs:
            for v in iter_vars(arg):
                if v not in seen:
                    seen.append(v)
        return tuple(seen)

    def __str__(self) -> str:
        return f"({', '.join(str(a) for a in self.lhs)}) -> {self.rhs}"


@dataclass(frozen=True)
class FunctionSymbol:
    name: str
    arity: int
    kind: SymbolKind = SymbolKind.CONSTRUCTOR
    arg_sorts: Tuple[str, ...] = ()
    result_sort: str = BITSTRING_SORT
    rules: Tuple[RewriteRule, ...] = ()
    private: bool = False

    @property
    def is_destructor(self) -> bool:
        return self.kind is SymbolKind.DESTRUCTOR

    @property
    def is_data(self) -> bool:
        return self.kind is SymbolKind.DATA

    @property
    def builds_terms(self) -> bool:
        """Constructors and data-constructors both appear in messages."""
        return self.kind is not SymbolKind.DESTRUCTOR


def _builtin_symbols() -> Dict[str, FunctionSymbol]:
    return {
        ZERO: FunctionSymbol(ZERO, 0, SymbolKind.DATA, (), NAT_SORT),
        SUCC: FunctionSymbol(SUCC, 1, SymbolKind.DATA, (NAT_SORT,), NAT_SORT),
    }


@dataclass
class Signature:
    """Declared function symbols, plus `zero`, `succ` and tuples on demand."""

    symbols: Dict[str, FunctionSymbol] = field(default_factory=_builtin_symbols)

    def declare(self, symbol: FunctionSymbol) -> None:
        self.symbols[symbol.name] = symbol

    def __contains__(self, name: str) -> bool:
        return name in self.symbols or is_tuple_symbol(name)

    def find(self, name: str) -> Optional[FunctionSymbol]:
        found = self.symbols.get(name)
        if found is None and is_tuple_symbol(name):
            arity = int(name.rsplit("_", 1)[1])
            found = FunctionSymbol(name, arity, SymbolKind.DATA, (BITSTRING_SORT,) * arity)
            self.symbols[name] = found
        return found

    def get(self, name: str) -> FunctionSymbol:
        found = self.find(name)
        if found is None:
            raise EvaluationError(f"Unknown function symbol: {name}")
        return found

    def __iter__(self) -> Iterator[FunctionSymbol]:
        return iter(list(self.symbols.values()))

    def user_symbols(self) -> Iterator[FunctionSymbol]:
        builtin = _builtin_symbols()
        for symbol in self:
            if symbol.name not in builtin:
                yield symbol
