"""Tests for parsing, validating and printing specifications."""

import pytest

from hornsat.errors import SpecificationError
from hornsat.language import (
    StatementKind,
    format_specification,
    parse_specification,
    validate_specification,
)
from hornsat.language.ast import (
    Input,
    LetExpression,
    LetSuchThat,
    Parallel,
    Replication,
    Restriction,
    process_binders,
)
from hornsat.terms.term import Fun, Name, Var

SHARED_KEY = """
type key.
fun senc(bitstring, key): bitstring.
reduc forall m: bitstring, k: key; sdec(senc(m, k), k) = m.
free c: channel.
event Sent(bitstring).
event Received(bitstring).

process
  new k: key;
  ( ( new s: bitstring; event Sent(s); out(c, senc(s, k)) )
  | ( in(c, x: bitstring); let y = sdec(x, k) in event Received(y) )
  )
"""

LOG = """
fun H(bitstring, bitstring): bitstring.
const h0: bitstring.
fun nil(): bitstring [data].
fun cons(bitstring, bitstring): bitstring [data].
pred mem(bitstring, bitstring).
pred verify_pp(bitstring, bitstring, bitstring) [block].

clauses
  forall x, l: bitstring;
    mem(x, cons(x, l));
  forall x, y, l: bitstring;
    mem(x, l) -> mem(x, cons(y, l)).
"""


def parse_errors(text):
    with pytest.raises(SpecificationError) as info:
        parse_specification(text)
    return [d.code for d in info.value.diagnostics]


class TestParser:
    """Tests for parse_specification."""

    def test_declarations(self):
        spec = parse_specification(SHARED_KEY)

        assert "key" in spec.types
        assert spec.signature.get("sdec").is_destructor
        assert not spec.signature.get("senc").is_destructor
        assert not spec.free_names["c"].private
        assert set(spec.events) == {"Sent", "Received"}

    def test_process_shape(self):
        spec = parse_specification(SHARED_KEY)

        assert isinstance(spec.process, Restriction)
        assert spec.process.sort == "key"
        branches = spec.process.then
        assert isinstance(branches, Parallel)
        receiver = branches.right
        assert isinstance(receiver, Input)
        assert isinstance(receiver.then, LetExpression)
        assert receiver.then.expression == Fun("sdec", (receiver.variable, Name("k")))

    def test_user_clauses(self):
        spec = parse_specification(LOG)

        assert len(spec.clauses) == 2
        assert spec.clauses[0].hypotheses == ()
        assert spec.clauses[1].hypotheses[0].predicate == "mem"
        assert spec.clause_defined == {"mem"}
        assert spec.declared_blocking == {"verify_pp"}

    def test_blocking_predicates_parse_blocked(self):
        spec = parse_specification(
            LOG + "query r, h, pi: bitstring; mem(r, h) ==> verify_pp(pi, r, h).\n"
        )

        statement = spec.statements[0]
        assert not statement.premise[0].blocked
        assert statement.conclusion[0].facts[0].blocked

    def test_statement_labels_and_options(self):
        spec = parse_specification(
            LOG
            + "query x, l: bitstring; mem(x, l) ==> false.\n"
            + "lemma x, l: bitstring; mem(x, l) [induction, label = P1].\n"
            + "query x, l: bitstring; mem(x, l).\n"
            + "lemma x, l: bitstring; mem(x, l) [axiom].\n"
        )

        labels = [s.label for s in spec.statements]
        assert labels == ["query_1", "P1", "query_2", "axiom_1"]
        assert spec.statements[1].induction
        assert spec.statements[3].kind is StatementKind.AXIOM
        assert all(s.conclusion == () for s in spec.statements)

    def test_premise_puts_standard_facts_first(self):
        spec = parse_specification(
            LOG + "query x, l: bitstring; mem(x, l) && attacker(x) ==> false.\n"
        )

        statement = spec.statements[0]
        assert [f.predicate for f in statement.premise] == ["attacker", "mem"]
        assert statement.idx == 2

    def test_conclusion_disjuncts(self):
        spec = parse_specification(
            LOG + "query x, y, l: bitstring; mem(x, cons(y, l)) ==> x = y || mem(x, l).\n"
        )

        first, second = spec.statements[0].conclusion
        assert first.facts == () and len(first.formula.atoms) == 1
        assert [f.predicate for f in second.facts] == ["mem"]

    def test_binders_are_renamed_apart(self):
        spec = parse_specification(
            "free c: channel.\n"
            "process ( new s: bitstring; out(c, s) ) | ( new s: bitstring; out(c, s) )\n"
        )

        assert sorted(process_binders(spec.process)) == ["s", "s_2"]

    def test_input_pattern_becomes_let(self):
        spec = parse_specification(
            "free c: channel.\nprocess in(c, (x: bitstring, =c)); out(c, x)\n"
        )

        assert isinstance(spec.process, Input)
        assert isinstance(spec.process.then, LetExpression)

    def test_predicate_test_and_replication(self):
        spec = parse_specification(
            LOG + "free c: channel.\n"
            "process ! in(c, x: bitstring); if mem(x, x) then out(c, x)\n"
        )

        assert isinstance(spec.process, Replication)
        test = spec.process.body.then
        assert isinstance(test, LetSuchThat)
        assert test.variables == ()
        assert test.condition.predicate == "mem"

    def test_macros_are_expanded(self):
        spec = parse_specification(
            "free c: channel.\nconst a: bitstring.\n"
            "let Send(x: bitstring) = out(c, x).\n"
            "process Send(a) | Send(c)\n"
        )

        assert isinstance(spec.process, Parallel)
        assert spec.process.left.message == Fun("a")
        assert spec.process.right.message == Name("c")

    def test_naturals_in_process(self):
        spec = parse_specification(
            "free c: channel.\nprocess in(c, i: nat); out(c, i + 2)\n"
        )

        output = spec.process.then
        assert str(output.message) == "i + 2"
        assert spec.process.variable == Var("i", 0, "nat")


class TestParserErrors:
    """Tests for diagnostics raised while parsing."""

    def test_syntax_error(self):
        with pytest.raises(SpecificationError, match="E001 Syntax error"):
            parse_specification("fun f(bitstring: bitstring.")

    def test_unbound_identifier(self):
        assert "E003" in parse_errors(LOG + "query l: bitstring; mem(x, l).\n")

    def test_undeclared_predicate(self):
        assert "E006" in parse_errors(LOG + "query x: bitstring; unknown(x).\n")

    def test_duplicate_declaration(self):
        assert "E009" in parse_errors("const a: bitstring.\nconst a: bitstring.\n")

    def test_reserved_name(self):
        assert "E012" in parse_errors("const fail: bitstring.\n")

    def test_constraint_in_premise(self):
        assert "E013" in parse_errors(LOG + "query x, y: bitstring; x = y ==> false.\n")

    def test_arity_mismatch(self):
        assert "E002" in parse_errors(LOG + "query x: bitstring; mem(x) ==> false.\n")


class TestValidation:
    """Tests for validate_specification."""

    def test_valid_specification(self):
        spec = parse_specification(SHARED_KEY)

        assert validate_specification(spec) == []

    def test_event_statements_are_valid(self):
        spec = parse_specification(
            "event A(bitstring).\nevent B(bitstring).\n"
            "query x: bitstring; event(A(x)) ==> event(B(x)).\n"
        )

        assert validate_specification(spec) == []
        assert spec.statements[0].premise[0].predicate == "event"

    def test_ordered_axiom_over_events(self):
        spec = parse_specification(
            "event A(bitstring).\nevent B(bitstring).\n"
            "axiom x, y: bitstring; event(A(x)) && event(B(y)) ==> x = y [ordered].\n"
        )

        assert spec.statements[0].ordered
        assert validate_specification(spec) == []

    @pytest.mark.parametrize(
        "statement",
        [
            "lemma x, y: bitstring; event(A(x)) && event(B(y)) ==> x = y [ordered].",
            "axiom x: bitstring; event(A(x)) ==> false [ordered].",
            "axiom x, l: bitstring; event(A(x)) && mem(x, l) ==> false [ordered].",
        ],
    )
    def test_ordered_statement_misuse(self, statement):
        text = LOG + "event A(bitstring).\nevent B(bitstring).\n" + statement + "\n"

        assert "E013" in parse_errors(text)

    def test_private_name_inside_an_event(self):
        text = (
            "free d: channel [private].\nevent A(channel).\n"
            "query event(A(d)) ==> false.\n"
        )

        assert "E007" in parse_errors(text)

    def test_clause_concluding_blocking_predicate(self):
        text = LOG + "clauses forall r, h: bitstring; verify_pp(r, r, h).\n"

        with pytest.raises(SpecificationError, match="E004"):
            parse_specification(text)
        spec = parse_specification(text, validate=False)
        assert [d.code for d in validate_specification(spec)] == ["E004"]

    def test_standard_predicate_in_clause(self):
        text = LOG + "clauses forall x, l: bitstring; attacker(x) -> mem(x, l).\n"

        assert "E005" in parse_errors(text)

    def test_private_name_in_statement(self):
        text = "free d: channel [private].\nquery x: bitstring; mess(d, x).\n"

        assert "E007" in parse_errors(text)

    def test_destructor_outside_let(self):
        text = SHARED_KEY.replace("let y = sdec(x, k) in event Received(y)", "out(c, sdec(x, k))")

        assert "E010" in parse_errors(text)

    def test_suchthat_binder_must_occur(self):
        text = LOG + (
            "free c: channel.\n"
            "process let y: bitstring suchthat mem(c, c) in out(c, y)\n"
        )

        assert "E008" in parse_errors(text)


class TestPrinter:
    """Tests for format_specification."""

    def test_declarations_are_printed(self):
        text = format_specification(parse_specification(SHARED_KEY))

        assert "type key." in text
        assert "reduc forall m: bitstring, k: key; sdec(senc(m, k), k) = m." in text
        assert "free c: channel." in text
        assert "let y: bitstring = sdec(x, k) in (" in text

    def test_printing_is_stable(self):
        printed = format_specification(parse_specification(SHARED_KEY))

        assert format_specification(parse_specification(printed)) == printed

    def test_statements_keep_options(self):
        spec = parse_specification(
            LOG + "lemma x, l: bitstring; mem(x, l) ==> false [induction, label = P1].\n"
        )

        text = format_specification(spec)

        assert "lemma x: bitstring, l: bitstring; mem(x, l) ==> false [induction, label = P1]." in text

    def test_ordered_option_is_printed(self):
        spec = parse_specification(
            "event A(bitstring).\nevent B(bitstring).\n"
            "axiom x, y: bitstring; event(A(x)) && event(B(y)) ==> x = y [ordered, label = order].\n"
        )

        text = format_specification(spec)

        assert "==> x = y [ordered, label = order]." in text
        assert format_specification(parse_specification(text)) == text
