"""Constraint formulas: equalities, universally quantified disequalities and
comparisons between successor-encoded naturals."""

from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, Iterator, List, Optional, Set, Tuple, Union

from .term import (
    Substitution,
    Term,
    Var,
    apply_subst,
    iter_vars,
    max_index,
    nat_view,
    shift_var,
)
from .unify import match_terms, unify_pairs, unify_terms


@dataclass(frozen=True)
class Equal:
    left: Term
    right: Term

    def apply(self, subst: Substitution) -> "Equal":
        return Equal(apply_subst(subst, self.left), apply_subst(subst, self.right))

    def free_vars(self) -> Set[Var]:
        return set(iter_vars(self.left)) | set(iter_vars(self.right))

    def __str__(self) -> str:
        return f"{self.left} = {self.right}"


@dataclass(frozen=True)
class Disequal:
    """`∀ variables. left ≠ right`."""

    left: Term
    right: Term
    variables: FrozenSet[Var] = field(default_factory=frozenset)

    def apply(self, subst: Substitution) -> "Disequal":
        inner = {v: t for v, t in subst.items() if v not in self.variables}
        if not inner:
            return self
        atom = self
        captured = any(v in self.variables for t in inner.values() for v in iter_vars(t))
        if captured:
            atom = atom._rename_bound(max_index(inner.values()) + 1)
        return Disequal(
            apply_subst(inner, atom.left), apply_subst(inner, atom.right), atom.variables
        )

    def _rename_bound(self, offset: int) -> "Disequal":
        renaming = {v: shift_var(v, offset) for v in self.variables}
        return Disequal(
            apply_subst(renaming, self.left),
            apply_subst(renaming, self.right),
            frozenset(renaming.values()),
        )

    def free_vars(self) -> Set[Var]:
        found = set(iter_vars(self.left)) | set(iter_vars(self.right))
        return found - self.variables

    def __str__(self) -> str:
        body = f"{self.left} <> {self.right}"
        if self.variables:
            bound = ", ".join(sorted(str(v) for v in self.variables))
            return f"forall {bound}. {body}"
        return body


@dataclass(frozen=True)
class NatLess:
    left: Term
    right: Term

    def apply(self, subst: Substitution) -> "NatLess":
        return NatLess(apply_subst(subst, self.left), apply_subst(subst, self.right))

    def free_vars(self) -> Set[Var]:
        return set(iter_vars(self.left)) | set(iter_vars(self.right))

    def __str__(self) -> str:
        return f"{self.left} < {self.right}"


@dataclass(frozen=True)
class NatLeq:
    left: Term
    right: Term

    def apply(self, subst: Substitution) -> "NatLeq":
        return NatLeq(apply_subst(subst, self.left), apply_subst(subst, self.right))

    def free_vars(self) -> Set[Var]:
        return set(iter_vars(self.left)) | set(iter_vars(self.right))

    def __str__(self) -> str:
        return f"{self.left} <= {self.right}"


Atom = Union[Equal, Disequal, NatLess, NatLeq]
NAT_ATOMS = (NatLess, NatLeq)


@dataclass(frozen=True)
class Formula:
    """Conjunction of constraint atoms. The empty formula is true."""

    atoms: Tuple[Atom, ...] = ()

    def __and__(self, other: "Formula") -> "Formula":
        if not other.atoms:
            return self
        if not self.atoms:
            return other
        return Formula(self.atoms + other.atoms)

    def apply(self, subst: Substitution) -> "Formula":
        if not subst or not self.atoms:
            return self
        return Formula(tuple(atom.apply(subst) for atom in self.atoms))

    def free_vars(self) -> Set[Var]:
        found: Set[Var] = set()
        for atom in self.atoms:
            found |= atom.free_vars()
        return found

    def iter_terms(self) -> Iterator[Term]:
        for atom in self.atoms:
            yield atom.left
            yield atom.right

    def all_vars(self) -> Set[Var]:
        """Free and bound variables."""
        found: Set[Var] = set()
        for term in self.iter_terms():
            found.update(iter_vars(term))
        return found

    def rename(self, renaming: Dict[Var, Var]) -> "Formula":
        """Apply an injective variable renaming to free and bound variables alike."""
        if not renaming or not self.atoms:
            return self
        return Formula(tuple(_rename_atom(atom, renaming) for atom in self.atoms))

    @property
    def is_true(self) -> bool:
        return not self.atoms

    def __str__(self) -> str:
        return " && ".join(str(a) for a in self.atoms) if self.atoms else "true"


TRUE = Formula()


def _rename_atom(atom: Atom, renaming: Dict[Var, Var]) -> Atom:
    left = apply_subst(renaming, atom.left)
    right = apply_subst(renaming, atom.right)
    if isinstance(atom, Disequal):
        bound = frozenset(renaming.get(v, v) for v in atom.variables)
        return Disequal(left, right, bound)
    return type(atom)(left, right)


def disequality_status(atom: Disequal) -> Optional[bool]:
    """True when the disequality always holds, False when it never holds, None otherwise."""
    if unify_terms(atom.left, atom.right) is None:
        return True
    if unify_terms(atom.left, atom.right, flexible=atom.variables) is not None:
        return False
    return None


_ZERO_NODE = "0"


def _nat_node(term: Term) -> Tuple[object, int]:
    view = nat_view(term)
    if view is None:
        return term, 0
    base, offset = view
    return (_ZERO_NODE if base is None else base), offset


def _nat_edges(atoms: Iterable[Atom]) -> List[Tuple[object, object, int]]:
    # x + k < y + m  is  x - y <= m - k - 1, an edge y -> x of that weight.
    edges = []
    for atom in atoms:
        left, k = _nat_node(atom.left)
        right, m = _nat_node(atom.right)
        weight = m - k - 1 if isinstance(atom, NatLess) else m - k
        edges.append((right, left, weight))
    return edges


def _nat_consistent(atoms: List[Atom]) -> bool:
    edges = _nat_edges(atoms)
    nodes = {_ZERO_NODE}
    for src, dst, _ in edges:
        nodes.add(src)
        nodes.add(dst)
    for node in list(nodes):
        if node != _ZERO_NODE:
            edges.append((node, _ZERO_NODE, 0))
    distance: Dict[object, int] = {node: 0 for node in nodes}
    for _ in range(len(nodes)):
        changed = False
        for src, dst, weight in edges:
            if distance[src] + weight < distance[dst]:
                distance[dst] = distance[src] + weight
                changed = True
        if not changed:
            return True
    return False


def _nat_trivially_true(atom: Atom) -> bool:
    left, k = _nat_node(atom.left)
    right, m = _nat_node(atom.right)
    if left != right:
        return False
    return k < m if isinstance(atom, NatLess) else k <= m


def normalize(formula: Formula) -> Optional[Tuple[Substitution, Formula]]:
    """Solve equalities and drop atoms that always hold.

    Returns:
        (σ, φ') where σ is the most general solution of the equalities and
        φ' the remaining atoms under σ, or None when the formula is
        unsatisfiable.
    """
    equalities = [(a.left, a.right) for a in formula.atoms if isinstance(a, Equal)]
    subst: Substitution = {}
    if equalities:
        solved = unify_pairs(equalities)
        if solved is None:
            return None
        subst = solved
    kept: List[Atom] = []
    nat_atoms: List[Atom] = []
    for atom in formula.atoms:
        if isinstance(atom, Equal):
            continue
        atom = atom.apply(subst)
        if isinstance(atom, Disequal):
            status = disequality_status(atom)
            if status is False:
                return None
            if status is True:
                continue
        elif _nat_trivially_true(atom):
            continue
        else:
            nat_atoms.append(atom)
        if atom not in kept:
            kept.append(atom)
    if nat_atoms and not _nat_consistent(nat_atoms):
        return None
    return subst, Formula(tuple(kept))


def is_satisfiable(formula: Formula) -> bool:
    return normalize(formula) is not None


def _disequality_entailed(premises: Iterable[Disequal], goal: Disequal) -> bool:
    status = disequality_status(goal)
    if status is True:
        return True
    for known in premises:
        for left, right in ((known.left, known.right), (known.right, known.left)):
            theta = match_terms(left, goal.left)
            if theta is not None:
                theta = match_terms(right, goal.right, theta)
            if theta is None:
                continue
            if all(v in known.variables or t == v for v, t in theta.items()):
                return True
    return False


def check_formula_implication(premise: Formula, conclusion: Formula) -> bool:
    """Conservative entailment test φ1 ⊨ φ2.

    A True answer is always correct; a False answer may be incomplete.
    """
    normal = normalize(premise)
    if normal is None:
        return True
    subst, known = normal
    diseqs = [a for a in known.atoms if isinstance(a, Disequal)]
    nats = [a for a in known.atoms if isinstance(a, NAT_ATOMS)]
    for atom in conclusion.atoms:
        atom = atom.apply(subst)
        if isinstance(atom, Equal):
            if atom.left != atom.right:
                return False
        elif isinstance(atom, Disequal):
            if not _disequality_entailed(diseqs, atom):
                return False
        else:
            if _nat_trivially_true(atom):
                continue
            negation: Atom
            if isinstance(atom, NatLess):
                negation = NatLeq(atom.right, atom.left)
            else:
                negation = NatLess(atom.right, atom.left)
            if _nat_consistent(nats + [negation]):
                return False
    return True
