"""Tests for evaluation suites: seed schedules, settings, score reports."""

import json

import pytest

from inquest.agents import RandomAnswerAgent
from inquest.evaluation import (
    SETTINGS,
    ZERO_SHOT_EPISODES,
    ScoreReport,
    SuiteSpec,
    evaluate,
    make_agent,
)


def spec(**overrides) -> SuiteSpec:
    base = dict(setting="unlimited", difficulty="fixed_map", qtype="existence",
                master_seed=99, episodes=10)
    base.update(overrides)
    return SuiteSpec(**base)


class TestSuiteSpec:
    def test_settings_catalogued(self):
        assert SETTINGS == ("training", "unlimited", "zero_shot")

    def test_unknown_setting_rejected(self):
        with pytest.raises(ValueError):
            spec(setting="few_shot")

    def test_training_requires_game_pool(self):
        with pytest.raises(ValueError):
            spec(setting="training")
        spec(setting="training", n_games=5)

    def test_zero_shot_is_fixed_size(self):
        with pytest.raises(ValueError):
            spec(setting="zero_shot", episodes=10)
        block = spec(setting="zero_shot", episodes=ZERO_SHOT_EPISODES)
        assert block.episodes == 500

    def test_rejects_empty_suite(self):
        with pytest.raises(ValueError):
            spec(episodes=0)


class TestSeedSchedules:
    def test_unlimited_draws_fresh_games(self):
        configs = spec(episodes=20).configs()
        assert len({c.seed for c in configs}) == 20

    def test_training_cycles_game_pool(self):
        configs = spec(setting="training", n_games=4, episodes=12).configs()
        seeds = [c.seed for c in configs]
        assert len(set(seeds)) == 4
        assert seeds[0:4] == seeds[4:8] == seeds[8:12]

    def test_training_questions_stay_fresh(self):
        configs = spec(setting="training", n_games=4, episodes=12).configs()
        assert len({c.question_seed for c in configs}) == 12, (
            "revisiting a game must still pose a new question")

    def test_same_spec_same_schedule(self):
        assert spec().configs() == spec().configs()

    def test_suites_never_share_games(self):
        by_label = {}
        for setting in ("unlimited", "zero_shot"):
            episodes = 500 if setting == "zero_shot" else 10
            for qtype in ("location", "existence", "attribute"):
                suite = spec(setting=setting, qtype=qtype, episodes=episodes)
                by_label[(setting, qtype)] = {c.seed for c in suite.configs()}
        labels = list(by_label)
        for i, a in enumerate(labels):
            for b in labels[i + 1:]:
                assert not (by_label[a] & by_label[b]), (
                    f"suites {a} and {b} share a game seed")

    def test_master_seed_changes_everything(self):
        a = {c.seed for c in spec(master_seed=1).configs()}
        b = {c.seed for c in spec(master_seed=2).configs()}
        assert not a & b

    def test_mode_and_budget_forwarded(self):
        configs = spec(mode="train", max_steps=25).configs()
        assert all(c.mode == "train" and c.max_steps == 25 for c in configs)


class TestEvaluate:
    def test_report_counts(self):
        report = evaluate(spec(episodes=12),
                          lambda i: RandomAnswerAgent(seed=i),
                          agent_name="random-answer")
        assert report.n_episodes == 12
        assert 0 <= report.n_correct <= 12
        assert report.n_aborted == 0
        assert len(report.rows) == 12
        assert report.accuracy == report.n_correct / 12

    def test_rows_follow_schedule(self):
        suite = spec(episodes=6)
        report = evaluate(suite, lambda i: RandomAnswerAgent(seed=i))
        scheduled = suite.configs()
        for row, config in zip(report.rows, scheduled):
            assert row["seed"] == config.seed
            assert row["question_seed"] == config.question_seed

    def test_evaluation_is_reproducible(self):
        reports = [
            evaluate(spec(episodes=15), lambda i: RandomAnswerAgent(seed=i))
            for _ in range(2)
        ]
        assert reports[0].to_dict() == reports[1].to_dict()

    def test_per_episode_agent_seed_matters(self):
        fixed = evaluate(spec(episodes=30), lambda i: RandomAnswerAgent(seed=0))
        varied = evaluate(spec(episodes=30), lambda i: RandomAnswerAgent(seed=i))
        fixed_answers = [r["correct"] for r in fixed.rows]
        varied_answers = [r["correct"] for r in varied.rows]
        assert fixed_answers != varied_answers, (
            "per-episode seeds should change the answer pattern")

    def test_progress_callback_sees_every_episode(self):
        seen = []
        evaluate(spec(episodes=5), lambda i: RandomAnswerAgent(seed=i),
                 progress=lambda i, record: seen.append(i))
        assert seen == [0, 1, 2, 3, 4]

    def test_records_saved_when_asked(self, tmp_path):
        evaluate(spec(episodes=3), lambda i: RandomAnswerAgent(seed=i),
                 record_dir=tmp_path / "records")
        index = json.loads((tmp_path / "records" / "index.json").read_text())
        assert len(index["episodes"]) == 3

    def test_explorer_beats_random_on_existence(self):
        suite = spec(episodes=30, difficulty="random_map")
        random_report = evaluate(
            suite, lambda i: make_agent("random-answer", seed=i))
        explorer_report = evaluate(
            suite, lambda i: make_agent("explorer", seed=i))
        assert explorer_report.n_correct > random_report.n_correct


class TestScoreReport:
    def make_report(self, pattern: list[bool]) -> ScoreReport:
        rows = [{"episode": i, "seed": i, "question_seed": i,
                 "correct": c, "sufficient_info": 0.0, "aborted": False,
                 "steps": 1}
                for i, c in enumerate(pattern)]
        return ScoreReport(setting="unlimited", difficulty="fixed_map",
                           qtype="existence", agent="test",
                           n_episodes=len(pattern), n_correct=sum(pattern),
                           n_aborted=0, mean_sufficient_info=0.0, rows=rows)

    def test_windowed_accuracy(self):
        report = self.make_report([True] * 4 + [False] * 4 + [True, False])
        assert report.windowed_accuracy(window=4) == [1.0, 0.0, 0.5]

    def test_empty_report_accuracy(self):
        report = self.make_report([])
        assert report.accuracy == 0.0

    def test_summary_mentions_the_score(self):
        report = self.make_report([True, True, False, False])
        line = report.summary()
        assert "2/4" in line and "0.500" in line

    def test_to_dict_is_json_ready(self):
        report = self.make_report([True, False])
        parsed = json.loads(json.dumps(report.to_dict()))
        assert parsed["accuracy"] == 0.5
        assert parsed["agent"] == "test"
