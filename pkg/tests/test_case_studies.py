"""Log and transparent-decryption models end to end."""

import dataclasses

import pytest

from hornsat.clauses import ClauseKind
from hornsat.models import build_case_study, load_model
from hornsat.saturation import initial_clauses
from hornsat.solver import Outcome, verify_specification


def only(spec, *labels):
    return dataclasses.replace(spec, statements=[s for s in spec.statements if s.label in labels])


class TestCaseStudyShape:
    """Clause generation for the transparent-decryption models."""

    @pytest.mark.parametrize("mode", ["interface", "concrete"])
    def test_initial_clauses(self, mode):
        clauses = initial_clauses(build_case_study("transparent_decryption", mode))

        kinds = {c.kind for c in clauses}
        assert {ClauseKind.PROTOCOL, ClauseKind.ATTACKER, ClauseKind.USER} <= kinds

    def test_interface_has_no_log_clauses(self):
        clauses = initial_clauses(build_case_study("transparent_decryption"))

        user = [c for c in clauses if c.kind is ClauseKind.USER]
        assert {c.conclusion.predicate for c in user} == {"mem"}


@pytest.mark.slow
class TestHashList:
    """Interface properties of the hash list."""

    def test_empty_list_digest(self):
        spec = only(load_model("hash_list_interface"), "P1")

        (verdict,) = verify_specification(spec)

        assert verdict.outcome is Outcome.PROVED
        assert verdict.witnesses

    def test_every_property_is_proved(self):
        verdicts = verify_specification(load_model("hash_list_interface"))

        assert {v.label: v.outcome for v in verdicts} == {f"P{n}": Outcome.PROVED for n in range(1, 8)}

    def test_transitivity_applies_its_hypothesis_once(self):
        (verdict,) = verify_specification(only(load_model("hash_list_interface"), "P5"))

        assert verdict.proved
        steps = [w for w in verdict.witnesses if "applied P5" in w["history"]]
        assert steps
        for witness in steps:
            history = witness["history"]
            assert history.count("applied P5") == 1
            assert history[0].startswith("resolved verify_pe(")
            assert witness["clause"].count("b-verify_pe(") == 1


@pytest.mark.slow
class TestMerkleTree:
    """Interface properties of the balanced Merkle tree."""

    def test_every_statement_is_proved(self):
        verdicts = verify_specification(load_model("merkle_tree_interface"))

        failed = [v.label for v in verdicts if v.outcome is not Outcome.PROVED]
        assert failed == []
        assert [v.label for v in verdicts][-7:] == [f"P{n}" for n in range(1, 8)]

    def test_presence_needs_the_leaves_lemma(self):
        spec = only(load_model("merkle_tree_interface"), "P3")

        (verdict,) = verify_specification(spec)

        assert not verdict.proved


@pytest.mark.slow
class TestTransparentDecryption:
    """The monitor only accepts digests of logs that hold its ciphertext."""

    def test_interface_mode_proves_every_statement(self):
        spec = build_case_study("transparent_decryption")

        verdicts = {v.label: v for v in verify_specification(spec)}

        assert verdicts["decrypted_then_signed"].outcome is Outcome.ASSUMED
        assert verdicts["decrypted_is_logged"].outcome is Outcome.PROVED
        assert verdicts["decrypted_before_signature"].outcome is Outcome.PROVED
        assert verdicts["main"].outcome is Outcome.PROVED

    def test_signature_order_needs_the_ordered_axiom(self):
        spec = build_case_study("transparent_decryption")
        spec = dataclasses.replace(
            spec, statements=[s for s in spec.statements if s.label not in ("decrypted_then_signed", "main")]
        )

        verdicts = {v.label: v for v in verify_specification(spec)}

        assert not verdicts["decrypted_before_signature"].proved
