"""Aggregation arithmetic and lossless persistence of results."""

import pytest

from puzzlebench.metrics import (
    CSV_COLUMNS,
    EmptyInputError,
    MetricsIOError,
    MixedConfigError,
    aggregate,
    aggregate_by_key,
    read_aggregates_csv,
    read_trials_jsonl,
    write_aggregates_csv,
    write_trials_jsonl,
)
from puzzlebench.orchestrator import (
    ILLEGAL_MOVE,
    LOOP_DETECTED,
    ConfigKey,
    ExperimentConfig,
    TokenUsage,
    TrialResult,
    run_experiment,
)

KEY = ConfigKey(puzzle="hanoi", n=5, k=None, p=10, protocol="stepwise", agent="oracle")


def fake_trial(
    index=0,
    outcome="success",
    cause=None,
    requests=1,
    total_tokens=100,
    key=KEY,
):
    return TrialResult(
        config_key=key,
        trial_index=index,
        outcome=outcome,
        cause=cause,
        failure_turn=None if cause is None else 1,
        detail="" if cause is None else "synthetic failure",
        moves_executed=0,
        requests=requests,
        usage=TokenUsage(0, total_tokens, total_tokens),
        substages=[],
    )


class TestAggregateArithmetic:
    def test_success_rate_seven_of_ten(self):
        trials = [fake_trial(i) for i in range(7)] + [
            fake_trial(7 + i, outcome="failure", cause=ILLEGAL_MOVE) for i in range(3)
        ]
        stats = aggregate(trials)
        assert stats.trials == 10
        assert stats.successes == 7
        assert stats.success_rate == 0.7

    def test_constant_totals_have_zero_std(self):
        trials = [fake_trial(i, total_tokens=100) for i in range(3)]
        stats = aggregate(trials)
        assert stats.mean_total_tokens == 100.0
        assert stats.std_total_tokens == 0.0

    def test_std_is_population_not_sample(self):
        trials = [
            fake_trial(0, total_tokens=10),
            fake_trial(1, total_tokens=20),
        ]
        assert aggregate(trials).std_total_tokens == 5.0

    def test_tokens_per_request_averaged_per_trial(self):
        trials = [
            fake_trial(0, requests=3, total_tokens=90),
            fake_trial(1, requests=1, total_tokens=30),
        ]
        assert aggregate(trials).mean_tokens_per_request == 30.0

    def test_pooled_variant_differs_when_trials_are_uneven(self):
        trials = [
            fake_trial(0, requests=3, total_tokens=90),
            fake_trial(1, requests=1, total_tokens=40),
        ]
        per_trial = aggregate(trials).mean_tokens_per_request
        pooled = aggregate(trials, pooled_tokens_per_request=True).mean_tokens_per_request
        assert per_trial == 35.0
        assert pooled == 32.5

    def test_zero_request_trials_count_as_zero_ratio(self):
        trials = [
            fake_trial(0, requests=0, total_tokens=0, outcome="failure", cause=ILLEGAL_MOVE),
            fake_trial(1, requests=2, total_tokens=80),
        ]
        assert aggregate(trials).mean_tokens_per_request == 20.0

    def test_failed_trials_count_in_token_statistics(self):
        trials = [
            fake_trial(0, total_tokens=100),
            fake_trial(1, total_tokens=300, outcome="failure", cause=LOOP_DETECTED),
        ]
        stats = aggregate(trials)
        assert stats.mean_total_tokens == 200.0

    def test_cause_histogram_covers_all_causes(self):
        trials = [
            fake_trial(0),
            fake_trial(1, outcome="failure", cause=ILLEGAL_MOVE),
            fake_trial(2, outcome="failure", cause=ILLEGAL_MOVE),
            fake_trial(3, outcome="failure", cause=LOOP_DETECTED),
        ]
        stats = aggregate(trials)
        assert stats.cause_count("illegal_move") == 2
        assert stats.cause_count("loop_detected") == 1
        assert stats.cause_count("format_error") == 0
        assert stats.cause_count("transport_failure") == 0

    def test_truncation_invariance_of_tokens_per_request(self):
        # Constant per-request cost: cutting a run short scales the total
        # but leaves the per-request ratio untouched.
        cost = 117
        short = [fake_trial(i, requests=2, total_tokens=2 * cost) for i in range(5)]
        long = [fake_trial(i, requests=9, total_tokens=9 * cost) for i in range(5)]
        assert (
            aggregate(short).mean_tokens_per_request
            == aggregate(long).mean_tokens_per_request
            == float(cost)
        )
        assert aggregate(short).mean_total_tokens != aggregate(long).mean_total_tokens

    def test_empty_input_rejected(self):
        with pytest.raises(EmptyInputError):
            aggregate([])
        with pytest.raises(EmptyInputError):
            aggregate_by_key([])

    def test_mixed_keys_rejected(self):
        other = ConfigKey("hanoi", 6, None, 10, "stepwise", "oracle")
        with pytest.raises(MixedConfigError):
            aggregate([fake_trial(0), fake_trial(1, key=other)])

    def test_expected_key_mismatch_rejected(self):
        other = ConfigKey("hanoi", 6, None, 10, "stepwise", "oracle")
        with pytest.raises(MixedConfigError):
            aggregate([fake_trial(0)], key=other)


class TestAggregateByKey:
    def test_groups_and_orders_rows(self):
        key_a = ConfigKey("hanoi", 4, None, 5, "stepwise", "oracle")
        key_b = ConfigKey("hanoi", 3, None, 5, "stepwise", "oracle")
        key_c = ConfigKey("river", 2, 2, 5, "stepwise", "oracle")
        trials = [
            fake_trial(0, key=key_a),
            fake_trial(0, key=key_c),
            fake_trial(0, key=key_b),
            fake_trial(1, key=key_a),
        ]
        rows = aggregate_by_key(trials)
        assert [row.key for row in rows] == [key_b, key_a, key_c]
        assert rows[1].trials == 2


class TestCsvRoundTrip:
    def make_rows(self):
        trials = [
            fake_trial(0, requests=3, total_tokens=91),
            fake_trial(1, requests=2, total_tokens=57, outcome="failure", cause=ILLEGAL_MOVE),
            fake_trial(2, requests=4, total_tokens=123),
        ]
        return aggregate_by_key(trials)

    def test_round_trip_is_field_identical(self, tmp_path):
        rows = self.make_rows()
        path = tmp_path / "aggregates.csv"
        write_aggregates_csv(rows, path)
        assert read_aggregates_csv(path) == rows

    def test_header_and_comment_layout(self, tmp_path):
        path = tmp_path / "aggregates.csv"
        write_aggregates_csv(self.make_rows(), path)
        lines = path.read_text().splitlines()
        assert lines[0].startswith("# std_total_tokens is the population")
        assert lines[1] == ",".join(CSV_COLUMNS)

    def test_floats_survive_via_repr(self, tmp_path):
        # 1/3 has no short decimal form; repr keeps the bits.
        trials = [fake_trial(i, requests=3, total_tokens=100) for i in range(3)]
        rows = aggregate_by_key(trials)
        path = tmp_path / "aggregates.csv"
        write_aggregates_csv(rows, path)
        (read,) = read_aggregates_csv(path)
        assert read.mean_tokens_per_request == rows[0].mean_tokens_per_request

    def test_none_fields_round_trip_as_blank(self, tmp_path):
        rows = self.make_rows()  # hanoi rows carry k=None
        path = tmp_path / "aggregates.csv"
        write_aggregates_csv(rows, path)
        (read,) = read_aggregates_csv(path)
        assert read.key.k is None
        assert read.key.p == 10

    def test_missing_column_named_in_error(self, tmp_path):
        path = tmp_path / "broken.csv"
        path.write_text("puzzle,N\nhanoi,3\n")
        with pytest.raises(MetricsIOError, match="success_rate"):
            read_aggregates_csv(path)

    def test_bad_cell_locates_data_row(self, tmp_path):
        rows = self.make_rows()
        path = tmp_path / "aggregates.csv"
        write_aggregates_csv(rows, path)
        text = path.read_text().replace("hanoi,5", "hanoi,five", 1)
        path.write_text(text)
        with pytest.raises(MetricsIOError, match="data row 1"):
            read_aggregates_csv(path)

    def test_headerless_file_rejected(self, tmp_path):
        path = tmp_path / "empty.csv"
        path.write_text("")
        with pytest.raises(MetricsIOError, match="no CSV header"):
            read_aggregates_csv(path)


class TestTrialsJsonl:
    def test_round_trip_from_real_experiment(self, tmp_path):
        config = ExperimentConfig(
            puzzle="hanoi", n=3, protocol="stepwise", p=3, trials=2, agent="random"
        )
        trials = run_experiment(config)
        path = tmp_path / "trials.jsonl"
        write_trials_jsonl(trials, path)
        read = read_trials_jsonl(path)
        assert [t.to_json() for t in read] == [t.to_json() for t in trials]

    def test_aggregates_from_reloaded_trials_match(self, tmp_path):
        config = ExperimentConfig(
            puzzle="hanoi", n=4, protocol="stepwise", p=5, trials=3
        )
        trials = run_experiment(config)
        path = tmp_path / "trials.jsonl"
        write_trials_jsonl(trials, path)
        assert aggregate_by_key(read_trials_jsonl(path)) == aggregate_by_key(trials)

    def test_bad_line_is_located(self, tmp_path):
        path = tmp_path / "trials.jsonl"
        path.write_text('{"not": "a trial"}\n')
        with pytest.raises(MetricsIOError, match="line 1"):
            read_trials_jsonl(path)

    def test_blank_lines_skipped(self, tmp_path):
        config = ExperimentConfig(puzzle="hanoi", n=3)
        trials = run_experiment(config)
        path = tmp_path / "trials.jsonl"
        write_trials_jsonl(trials, path)
        path.write_text(path.read_text() + "\n\n")
        assert len(read_trials_jsonl(path)) == 1
