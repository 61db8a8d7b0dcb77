"""Tests for terms, unification, constraint formulas and evaluation."""

import pytest

from hornsat.errors import EvaluationError
from hornsat.terms.evaluate import eval_expression, evaluate_ground
from hornsat.terms.fact import Fact, attacker, event
from hornsat.terms.formula import (
    TRUE,
    Disequal,
    Equal,
    Formula,
    NatLeq,
    NatLess,
    check_formula_implication,
    normalize,
)
from hornsat.terms.symbols import FunctionSymbol, RewriteRule, Signature, SymbolKind
from hornsat.terms.term import (
    FAIL,
    FreshVariables,
    Fun,
    Name,
    Var,
    apply_subst,
    compose,
    depth,
    is_ground,
    make_tuple,
    nat,
    nat_view,
    size,
)
from hornsat.terms.unify import match_terms, mgu, unify_terms

x, y, z = Var("x"), Var("y"), Var("z")
a, b, k = Name("a"), Name("b"), Name("k")


def f(*args):
    return Fun("f", args)


def g(*args):
    return Fun("g", args)


@pytest.fixture
def signature():
    sig = Signature()
    m, key = Var("m"), Var("key")
    sig.declare(FunctionSymbol("senc", 2, SymbolKind.CONSTRUCTOR, ("bitstring", "key")))
    sig.declare(
        FunctionSymbol(
            "sdec",
            2,
            SymbolKind.DESTRUCTOR,
            ("bitstring", "key"),
            rules=(RewriteRule((Fun("senc", (m, key)), key), m),),
        )
    )
    return sig


class TestTerms:
    """Tests for term construction and printing."""

    def test_naturals(self):
        assert str(nat(2)) == "2"
        assert str(nat(1, Var("i"))) == "i + 1"
        assert nat_view(nat(3, x)) == (x, 3)
        assert nat_view(f(x)) is None

    def test_tuples_and_variables(self):
        assert str(make_tuple((a, b))) == "(a, b)"
        assert str(Var("x", 3)) == "x_3"
        assert str(Name("n", (x,))) == "n[x]"

    def test_measures(self):
        term = f(g(x), a)

        assert size(term) == 4
        assert depth(term) == 2
        assert not is_ground(term)
        assert is_ground(f(a, b))

    def test_apply_and_compose(self):
        assert apply_subst({x: a}, f(x, y)) == f(a, y)
        assert compose({x: y}, {y: a}) == {x: a, y: a}

    def test_fresh_variables_cannot_clash(self):
        fresh = FreshVariables(5)

        first = fresh.var("m")
        renaming = fresh.renaming([x, x, y])

        assert first == Var("~m", 5)
        assert renaming == {x: Var("~x", 6), y: Var("~y", 7)}

    def test_variable_equality_ignores_sort(self):
        assert Var("x", 0, "nat") == Var("x", 0, "bitstring")


class TestFacts:
    """Tests for facts and their blocking forms."""

    def test_blocking_forms(self):
        fact = Fact("verify_pp", (x, y, z))

        assert str(fact.to_blocking()) == "b-verify_pp(x, y, z)"
        assert fact.to_blocking().to_plain() == fact
        assert str(event(Fun("Sent", (a,)), sure=True)) == "s-event(Sent(a))"

    def test_vars_and_depth(self):
        fact = attacker(f(g(x), y))

        assert fact.vars() == {x, y}
        assert fact.depth == 2


class TestUnify:
    """Tests for unification and matching."""

    def test_most_general_unifier(self):
        assert unify_terms(f(x, b), f(a, y)) == {x: a, y: b}

    def test_occurs_check(self):
        assert unify_terms(x, f(x)) is None

    def test_symbol_clash(self):
        assert unify_terms(f(a), g(a)) is None
        assert unify_terms(f(a), f(a, b)) is None

    def test_unifier_is_idempotent(self):
        subst = unify_terms(f(x, y), f(y, g(z)))

        assert apply_subst(subst, f(x, y)) == f(g(z), g(z))

    def test_flexible_variables(self):
        assert unify_terms(x, a, flexible={y}) is None
        assert unify_terms(x, y, flexible={y}) == {y: x}

    def test_fail_unifies_with_nothing_but_variables(self):
        assert unify_terms(FAIL, a) is None
        assert unify_terms(x, FAIL) == {x: FAIL}

    def test_matching_is_one_way(self):
        assert match_terms(f(x, y), f(a, b)) == {x: a, y: b}
        assert match_terms(f(x, x), f(a, b)) is None
        assert match_terms(f(a), f(x)) is None

    def test_mgu_respects_blocking(self):
        plain = Fact("mem", (x, y))

        assert mgu(plain, Fact("mem", (a, b))) == {x: a, y: b}
        assert mgu(plain, plain.to_blocking()) is None
        assert mgu(plain, Fact("represents", (x, y))) is None


class TestFormula:
    """Tests for normalization and implication of constraints."""

    def test_equalities_are_solved(self):
        subst, rest = normalize(Formula((Equal(x, f(y)), Equal(y, a))))

        assert apply_subst(subst, x) == f(a)
        assert rest == TRUE

    def test_contradictions(self):
        assert normalize(Formula((Equal(x, a), Disequal(x, a)))) is None
        assert normalize(Formula((NatLess(x, x),))) is None
        assert normalize(Formula((Equal(f(x), g(y)),))) is None

    def test_bound_disequality(self):
        formula = Formula((Equal(x, f(a)), Disequal(x, f(y), frozenset({y}))))

        assert normalize(formula) is None

    def test_trivial_atoms_are_dropped(self):
        subst, rest = normalize(Formula((NatLeq(x, nat(1, x)), Disequal(f(a), g(a)))))

        assert subst == {}
        assert rest == TRUE

    def test_transitivity_of_less(self):
        j, i, n = Var("j"), Var("i"), Var("n")
        premise = Formula((NatLess(j, i), NatLess(i, n)))

        assert check_formula_implication(premise, Formula((NatLess(j, n),)))
        assert not check_formula_implication(Formula((NatLess(j, n),)), Formula((NatLess(j, i),)))

    def test_successor_bound(self):
        i, j = Var("i"), Var("j")

        assert check_formula_implication(
            Formula((NatLess(i, j),)), Formula((NatLeq(nat(1, i), j),))
        )

    def test_disequality_implication(self):
        premise = Formula((Disequal(x, a),))

        assert check_formula_implication(premise, Formula((Disequal(a, x),)))
        assert not check_formula_implication(TRUE, Formula((Disequal(x, a),)))

    def test_unsatisfiable_premise_implies_anything(self):
        premise = Formula((Equal(a, b),))

        assert check_formula_implication(premise, Formula((Equal(x, y),)))


class TestEvaluate:
    """Tests for destructor evaluation."""

    def test_ground_evaluation(self, signature):
        ciphertext = Fun("senc", (a, k))

        assert evaluate_ground(Fun("sdec", (ciphertext, k)), signature) == a
        assert evaluate_ground(Fun("sdec", (ciphertext, b)), signature) == FAIL

    def test_failure_propagates(self, signature):
        inner = Fun("sdec", (a, k))

        assert evaluate_ground(Fun("senc", (inner, k)), signature) == FAIL

    def test_open_term_rejected(self, signature):
        with pytest.raises(EvaluationError, match="variable x"):
            evaluate_ground(Fun("sdec", (x, k)), signature)

    def test_symbolic_branches(self, signature):
        branches = eval_expression(Fun("sdec", (x, k)), signature)

        success = [br for br in branches if br.result != FAIL]
        failure = [br for br in branches if br.result == FAIL]
        assert len(success) == 1 and len(failure) == 1
        assert success[0].subst[x] == Fun("senc", (success[0].result, k))
        assert failure[0].subst == {}
        assert isinstance(failure[0].formula.atoms[0], Disequal)

    def test_constructor_has_one_branch(self, signature):
        branches = eval_expression(Fun("senc", (x, k)), signature)

        assert [br.result for br in branches] == [Fun("senc", (x, k))]
