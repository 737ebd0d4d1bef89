import numpy as np
import pytest

from afkit import (AccuracyReport, ArgumentationFramework, GroundedBaseline,
                   acceptance_labels, bench_report, count_solved, evaluate,
                   random_gcn_model, time_pipeline)
from afkit.bench import CSV_HEADER, CSV_SCHEMA_VERSION, STAGES


def _always(value):
    return lambda af: np.full(af.n, bool(value))


class TestEvaluate:
    def test_macro_is_unweighted_mean(self):
        big = ArgumentationFramework(4)
        small = ArgumentationFramework(2)
        dataset = [(big, [True] * 4), (small, [True, False])]
        report = evaluate(_always(True), dataset, "DC-CO")
        assert report.thetas == (1.0, 0.5)
        assert report.macro == 0.75

    def test_restricted_accuracies(self):
        af = ArgumentationFramework(4)
        report = evaluate(_always(True), [(af, [True, True, False, False])],
                          "DC-CO")
        assert report.pos_accs == (1.0,)
        assert report.neg_accs == (0.0,)

    def test_empty_restriction_is_excluded(self):
        all_yes = ArgumentationFramework(2)
        mixed = ArgumentationFramework(2)
        dataset = [(all_yes, [True, True]), (mixed, [True, False])]
        report = evaluate(_always(True), dataset, "DC-CO")
        assert report.neg_accs == (None, 0.0)
        assert report.neg_acc == 0.0
        assert report.pos_acc == 1.0
        no_negatives = evaluate(_always(True), [(all_yes, [True, True])],
                                "DC-CO")
        assert no_negatives.neg_acc is None

    def test_perfect_scorer_on_oracle_labels(self, af_seven):
        labels = acceptance_labels(af_seven, "DC-CO")
        report = evaluate(lambda af: labels, [(af_seven, labels)], "DC-CO")
        assert report.macro == 1.0
        assert report.pos_acc == 1.0 and report.neg_acc == 1.0

    def test_constant_predictor_scores_base_rate(self, af_seven):
        labels = acceptance_labels(af_seven, "DC-CO")
        report = evaluate(_always(True), [(af_seven, labels)], "DC-CO")
        assert report.thetas == (float(np.mean(labels)),)

    def test_model_is_wrapped(self, af_seven):
        labels = acceptance_labels(af_seven, "DC-CO")
        report = evaluate(random_gcn_model(seed=1), [(af_seven, labels)],
                          "DC-CO")
        assert 0.0 <= report.macro <= 1.0
        assert len(report.forward_ms) == 1 and report.forward_ms[0] > 0.0
        assert report.total_ms == report.forward_ms[0]

    def test_shape_errors(self, af_seven):
        with pytest.raises(ValueError, match="labels shape"):
            evaluate(_always(True), [(af_seven, [True])], "DC-CO")
        with pytest.raises(ValueError, match="scorer returned"):
            evaluate(lambda af: np.ones(3, dtype=bool),
                     [(af_seven, [True] * 7)], "DC-CO")
        with pytest.raises(TypeError, match="callable"):
            evaluate("not a scorer", [], "DC-CO")
        with pytest.raises(ValueError, match="task"):
            evaluate(_always(True), [], "EE-PR")


class TestGroundedBaseline:
    def test_decided_arguments_follow_labelling(self, af_seven):
        baseline = GroundedBaseline("DC-CO")
        assert baseline(af_seven).tolist() == [True, False, False, False,
                                               False, False, False]

    def test_undec_fallback_is_task_aware(self, af_seven):
        skeptical_stable = GroundedBaseline("DS-ST")
        assert skeptical_stable(af_seven).tolist() == [True, False, True, True,
                                                       True, True, True]

    def test_baseline_accuracy_on_golden_fixture(self, af_seven):
        labels = acceptance_labels(af_seven, "DC-CO")
        report = evaluate(GroundedBaseline("DC-CO"), [(af_seven, labels)],
                          "DC-CO")
        assert report.thetas == (4.0 / 7.0,)
        ds_st = evaluate(GroundedBaseline("DS-ST"),
                         [(af_seven, acceptance_labels(af_seven, "DS-ST"))],
                         "DS-ST")
        assert ds_st.thetas == (4.0 / 7.0,)

    def test_unknown_task(self):
        with pytest.raises(ValueError, match="task"):
            GroundedBaseline("DC-PR")


class TestCountSolved:
    def test_counts_matching_single_queries(self, af_seven):
        labels = acceptance_labels(af_seven, "DC-CO")
        queries = [(af_seven, arg, labels[arg - 1]) for arg in range(1, 8)]
        assert count_solved(lambda af: labels, queries) == 7
        assert count_solved(_always(True), queries) == int(labels.sum())
        assert count_solved(GroundedBaseline("DC-CO"), queries) == 4

    def test_empty_query_list(self):
        assert count_solved(_always(True), []) == 0


class TestTimePipeline:
    def test_all_stages_by_default(self, af_seven):
        rows = time_pipeline([("one", af_seven)], random_gcn_model())
        assert len(rows) == 1
        row = rows[0]
        assert row["instance"] == "one" and row["n_args"] == 7
        for stage in STAGES:
            assert row[f"{stage}_ms"] > 0.0

    def test_stage_filter(self, af_seven):
        rows = time_pipeline([("one", af_seven)], stages=("grounded",))
        assert rows[0]["grounded_ms"] > 0.0
        assert rows[0]["parse_ms"] == 0.0
        assert rows[0]["features_ms"] == 0.0
        assert rows[0]["infer_ms"] == 0.0

    def test_infer_needs_model(self, af_seven):
        rows = time_pipeline([("one", af_seven)], stages=("infer",))
        assert rows[0]["infer_ms"] == 0.0
        rows = time_pipeline([("one", af_seven)], random_gcn_model(),
                             stages=("infer",))
        assert rows[0]["infer_ms"] > 0.0

    def test_unknown_stage(self, af_seven):
        with pytest.raises(ValueError, match="unknown stage"):
            time_pipeline([("one", af_seven)], stages=("training",))

    def test_input_order_preserved(self, af_seven, af_six):
        rows = time_pipeline([("b", af_six), ("a", af_seven)],
                             stages=("grounded",))
        assert [row["instance"] for row in rows] == ["b", "a"]


class TestBenchReport:
    def test_schema(self):
        assert CSV_SCHEMA_VERSION == 1
        assert CSV_HEADER == ("instance,task,n_args,theta,pos_acc,neg_acc,"
                              "parse_ms,grounded_ms,features_ms,infer_ms")

    def test_csv_layout(self, af_seven, af_six):
        named = [("first", af_seven, acceptance_labels(af_seven, "DC-CO")),
                 ("second", af_six, acceptance_labels(af_six, "DC-CO"))]
        report, csv_text = bench_report(named, GroundedBaseline("DC-CO"),
                                        "DC-CO")
        lines = csv_text.splitlines()
        assert lines[0] == CSV_HEADER
        assert len(lines) == 3 and csv_text.endswith("\n")
        first = lines[1].split(",")
        assert first[0] == "first" and first[1] == "DC-CO" and first[2] == "7"
        assert first[3] == f"{report.thetas[0]:.6f}"
        assert len(first) == 10

    def test_empty_restriction_is_blank_cell(self):
        af = ArgumentationFramework(2)
        named = [("allyes", af, np.array([True, True]))]
        report, csv_text = bench_report(named, _always(True), "DC-CO")
        cells = csv_text.splitlines()[1].split(",")
        assert cells[4] == "1.000000" and cells[5] == ""
        assert report.neg_acc is None

    def test_model_timing_included(self, af_seven):
        named = [("one", af_seven, acceptance_labels(af_seven, "DC-CO"))]
        _, csv_text = bench_report(named, random_gcn_model(), "DC-CO")
        cells = csv_text.splitlines()[1].split(",")
        assert float(cells[9]) > 0.0

    def test_report_type(self, af_seven):
        named = [("one", af_seven, acceptance_labels(af_seven, "DS-PR"))]
        report, _ = bench_report(named, GroundedBaseline("DS-PR"), "DS-PR")
        assert isinstance(report, AccuracyReport)
        assert report.task == "DS-PR"
