"""Evaluation suites: fixed seed schedules and score reports.

Suites are named by setting.  A training suite cycles through a fixed pool
of games; an unlimited suite draws a fresh game per episode; a zero-shot
suite is a frozen block of exactly 500 held-out games.  All seeds derive
from the master seed and the suite labels, so two runs of the same suite
see identical worlds and questions, and differently labeled suites never
share a game seed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Optional

from .agents import Agent, HeuristicExplorer, RandomAnswerAgent, RandomCommandAgent
from .episode import DEFAULT_MAX_STEPS, EpisodeConfig, EpisodeRecord, run_episode, save_records
from .rng import derive_seed

SETTINGS = ("training", "unlimited", "zero_shot")
ZERO_SHOT_EPISODES = 500
AGENT_NAMES = ("random-answer", "random-command", "explorer")


@dataclass(frozen=True)
class SuiteSpec:
    """One evaluation run's worth of episode configurations."""

    setting: str
    difficulty: str
    qtype: str
    master_seed: int
    episodes: int = ZERO_SHOT_EPISODES
    n_games: Optional[int] = None
    mode: str = "test"
    max_steps: int = DEFAULT_MAX_STEPS

    def __post_init__(self) -> None:
        if self.setting not in SETTINGS:
            raise ValueError(f"unknown setting {self.setting!r}")
        if self.setting == "training" and not self.n_games:
            raise ValueError("training suites need n_games")
        if self.setting == "zero_shot" and self.episodes != ZERO_SHOT_EPISODES:
            raise ValueError(
                f"zero-shot suites are fixed at {ZERO_SHOT_EPISODES} episodes"
            )
        if self.episodes < 1:
            raise ValueError("episodes must be positive")

    def _label(self, kind: str) -> str:
        return f"{self.setting}:{self.difficulty}:{self.qtype}:{kind}"

    def configs(self) -> list[EpisodeConfig]:
        out = []
        for i in range(self.episodes):
            if self.setting == "training":
                game_index = i % self.n_games
            else:
                game_index = i
            out.append(
                EpisodeConfig(
                    difficulty=self.difficulty,
                    seed=derive_seed(self.master_seed, self._label("game"), game_index),
                    qtype=self.qtype,
                    question_seed=derive_seed(self.master_seed, self._label("question"), i),
                    mode=self.mode,
                    max_steps=self.max_steps,
                )
            )
        return out


@dataclass
class ScoreReport:
    """Aggregate results of running one suite with one agent."""

    setting: str
    difficulty: str
    qtype: str
    agent: str
    n_episodes: int
    n_correct: int
    n_aborted: int
    mean_sufficient_info: float
    rows: list[dict] = field(default_factory=list)

    @property
    def accuracy(self) -> float:
        return self.n_correct / self.n_episodes if self.n_episodes else 0.0

    def windowed_accuracy(self, window: int = 100) -> list[float]:
        """Mean accuracy over consecutive episode windows, in order."""

        out = []
        for start in range(0, len(self.rows), window):
            chunk = self.rows[start : start + window]
            out.append(sum(r["correct"] for r in chunk) / len(chunk))
        return out

    def to_dict(self) -> dict:
        return {
            "setting": self.setting,
            "difficulty": self.difficulty,
            "qtype": self.qtype,
            "agent": self.agent,
            "n_episodes": self.n_episodes,
            "n_correct": self.n_correct,
            "n_aborted": self.n_aborted,
            "accuracy": self.accuracy,
            "mean_sufficient_info": self.mean_sufficient_info,
            "rows": self.rows,
        }

    def summary(self) -> str:
        return (
            f"{self.setting}/{self.difficulty}/{self.qtype} agent={self.agent}: "
            f"{self.n_correct}/{self.n_episodes} correct "
            f"({self.accuracy:.3f}), mean sufficient info "
            f"{self.mean_sufficient_info:.3f}, aborted {self.n_aborted}"
        )


def make_agent(name: str, seed: int = 0) -> Agent:
    """Build a baseline agent by CLI name."""

    if name == "random-answer":
        return RandomAnswerAgent(seed=seed)
    if name == "random-command":
        return RandomCommandAgent(seed=seed)
    if name == "explorer":
        return HeuristicExplorer(seed=seed)
    raise ValueError(f"unknown agent {name!r}")


def evaluate(
    spec: SuiteSpec,
    agent_factory: Callable[[int], Agent],
    agent_name: str = "custom",
    step_timeout: Optional[float] = None,
    record_dir: Optional[Path | str] = None,
    progress: Optional[Callable[[int, EpisodeRecord], None]] = None,
) -> ScoreReport:
    """Run a whole suite, one fresh agent per episode."""

    records: list[EpisodeRecord] = []
    rows: list[dict] = []
    correct = 0
    aborted = 0
    suff = 0.0
    for i, config in enumerate(spec.configs()):
        record = run_episode(config, agent_factory(i), step_timeout=step_timeout)
        records.append(record)
        correct += record.answer_correct
        aborted += record.aborted
        suff += record.sufficient_info.total
        rows.append(
            {
                "episode": i,
                "seed": config.seed,
                "question_seed": config.question_seed,
                "correct": record.answer_correct,
                "sufficient_info": record.sufficient_info.total,
                "aborted": record.aborted,
                "steps": len(record.outcomes) - 1,
            }
        )
        if progress is not None:
            progress(i, record)
    if record_dir is not None:
        save_records(records, record_dir)
    return ScoreReport(
        setting=spec.setting,
        difficulty=spec.difficulty,
        qtype=spec.qtype,
        agent=agent_name,
        n_episodes=len(rows),
        n_correct=correct,
        n_aborted=aborted,
        mean_sufficient_info=suff / len(rows) if rows else 0.0,
        rows=rows,
    )
