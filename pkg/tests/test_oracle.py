import numpy as np
import pytest

from afkit import (ArgumentationFramework, MAX_ORACLE_ARGS, TASKS,
                   acceptance_labels, acceptance_set, credulous, extensions,
                   grounded_labelling, label_dataset, oracle_decision,
                   random_framework, skeptical)
from afkit.oracle import SEMANTICS, labels_text, parse_labels

from reference import reference_acceptance, reference_extensions


def _families(af, semantics):
    return set(extensions(af, semantics))


class TestGoldenFixture:
    def test_complete(self, af_seven):
        assert _families(af_seven, "co") == {
            frozenset({1}), frozenset({1, 3}), frozenset({1, 4, 6})}

    def test_preferred(self, af_seven):
        assert _families(af_seven, "pr") == {
            frozenset({1, 3}), frozenset({1, 4, 6})}

    def test_grounded(self, af_seven):
        assert _families(af_seven, "gr") == {frozenset({1})}

    def test_stable(self, af_seven):
        assert _families(af_seven, "st") == {frozenset({1, 4, 6})}

    def test_acceptance_sets(self, af_seven):
        assert credulous(af_seven, "co") == {1, 3, 4, 6}
        assert skeptical(af_seven, "co") == {1}
        assert credulous(af_seven, "pr") == {1, 3, 4, 6}
        assert skeptical(af_seven, "pr") == {1}
        assert credulous(af_seven, "st") == {1, 4, 6}
        assert skeptical(af_seven, "st") == {1, 4, 6}


class TestConventions:
    def test_no_stable_extension(self):
        af = ArgumentationFramework(1, [(1, 1)])
        assert extensions(af, "st") == []
        assert credulous(af, "st") == frozenset()
        assert skeptical(af, "st") == {1}

    def test_edgeless_single_extension(self):
        af = ArgumentationFramework(3)
        for semantics in SEMANTICS:
            assert _families(af, semantics) == {frozenset({1, 2, 3})}
        for task in TASKS:
            assert acceptance_set(af, task) == {1, 2, 3}

    def test_guard(self):
        af = ArgumentationFramework(MAX_ORACLE_ARGS + 1)
        with pytest.raises(ValueError, match="at most"):
            extensions(af, "co")

    def test_unknown_semantics(self, af_seven):
        with pytest.raises(ValueError, match="semantics"):
            extensions(af_seven, "sst")

    def test_deterministic_order(self, af_seven):
        assert extensions(af_seven, "co") == extensions(af_seven, "co")


class TestCrossCheck:
    def test_matches_naive_enumeration(self):
        for seed in range(100):
            af = random_framework(3 + seed % 7, 0.3, seed)
            for semantics in SEMANTICS:
                assert _families(af, semantics) == reference_extensions(
                    af, semantics), (semantics, af.attacks)

    def test_family_inclusions(self):
        for seed in range(60):
            af = random_framework(8, 0.25, seed)
            stable = _families(af, "st")
            preferred = _families(af, "pr")
            complete = _families(af, "co")
            assert stable <= preferred <= complete

    def test_grounded_is_least_complete(self):
        for seed in range(60):
            af = random_framework(8, 0.25, seed)
            grounded = extensions(af, "gr")
            assert len(grounded) == 1
            assert grounded[0] == grounded_labelling(af).in_set
            assert all(grounded[0] <= other for other in extensions(af, "co"))

    def test_skeptical_complete_equals_grounded(self):
        for seed in range(40):
            af = random_framework(8, 0.25, seed)
            assert skeptical(af, "co") == extensions(af, "gr")[0]

    def test_every_extension_is_admissible(self):
        from reference import _conflict_free, _defended
        for seed in range(40):
            af = random_framework(7, 0.3, seed)
            for semantics in SEMANTICS:
                for extension in extensions(af, semantics):
                    assert _conflict_free(af, extension)
                    assert all(_defended(af, extension, member)
                               for member in extension)


class TestDecisions:
    def test_matches_reference_acceptance(self):
        for seed in range(50):
            af = random_framework(3 + seed % 6, 0.3, seed)
            for task in TASKS:
                assert acceptance_set(af, task) == reference_acceptance(
                    af, task), (task, af.attacks)

    def test_oracle_decision(self, af_seven):
        assert oracle_decision(af_seven, 3, "DC-CO") is True
        assert oracle_decision(af_seven, 3, "DS-PR") is False
        assert oracle_decision(af_seven, 4, "DS-ST") is True
        with pytest.raises(ValueError, match="out of range"):
            oracle_decision(af_seven, 8, "DC-CO")
        with pytest.raises(ValueError, match="task"):
            oracle_decision(af_seven, 1, "EE-PR")

    def test_labels_vector(self, af_seven):
        labels = acceptance_labels(af_seven, "DC-CO")
        assert labels.tolist() == [True, False, True, True, False, True, False]

    def test_empty_stable_family_labels_all_yes(self):
        af = ArgumentationFramework(2, [(1, 1), (2, 2)])
        assert acceptance_labels(af, "DS-ST").all()
        assert not acceptance_labels(af, "DC-ST").any()


class TestDatasetLabelling:
    def test_label_dataset(self, af_seven, af_six):
        labels = label_dataset([af_seven, af_six], "DC-CO")
        assert len(labels) == 2
        assert labels[0].tolist() == [True, False, True, True, False, True, False]

    def test_guard_lists_positions(self, af_seven):
        big = ArgumentationFramework(MAX_ORACLE_ARGS + 3)
        with pytest.raises(ValueError, match=r"positions \[1, 2\]"):
            label_dataset([af_seven, big, big], "DC-CO")

    def test_text_round_trip(self, af_seven):
        labels = acceptance_labels(af_seven, "DC-CO")
        text = labels_text(af_seven, labels)
        assert text.splitlines()[0] == "1 YES"
        assert text.splitlines()[1] == "2 NO"
        assert np.array_equal(parse_labels(text, af_seven), labels)

    def test_text_round_trip_with_names(self):
        from afkit import parse_apx
        af = parse_apx("arg(a).\narg(b).\natt(a,b).\n")
        text = labels_text(af, acceptance_labels(af, "DS-PR"))
        assert text == "a YES\nb NO\n"
        assert parse_labels(text, af).tolist() == [True, False]

    def test_parse_labels_errors(self, af_seven):
        with pytest.raises(ValueError, match="expected"):
            parse_labels("1 MAYBE\n", af_seven)
        with pytest.raises(ValueError, match="duplicate"):
            parse_labels("1 YES\n1 NO\n", af_seven)
        with pytest.raises(ValueError, match="missing"):
            parse_labels("1 YES\n", af_seven)
