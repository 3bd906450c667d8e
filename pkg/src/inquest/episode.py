"""Episode runtime: one generated world, one question, a step budget.

An episode advances strictly through text commands.  Answering the question
is not a world command; it becomes available once the episode is done, which
happens when the agent waits or the step budget runs out.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Optional, Sequence

from .commands import Feedback, ParseError, apply, parse, parse_failure
from .gen import GenConfig, generate_world
from .questions import Question, answer_candidates, make_question
from .rewards import (
    AttributeEvidence,
    CoverageTracker,
    EpisodicNovelty,
    SufficientInfo,
    subject_mentioned,
    sufficient_info_attribute,
    sufficient_info_existence,
    sufficient_info_location,
)
from .templates import render_observation
from .world import World

RECORD_VERSION = 1
DEFAULT_MAX_STEPS = 80


class EpisodeError(Exception):
    """Raised on out-of-order runtime calls, such as answering too early."""


@dataclass(frozen=True)
class EpisodeConfig:
    """Everything needed to reproduce an episode's world and question."""

    difficulty: str
    seed: int
    qtype: str
    question_seed: int
    mode: str = "test"
    max_steps: int = DEFAULT_MAX_STEPS
    n_locations: Optional[int] = None
    made_up_names: bool = True

    def __post_init__(self) -> None:
        if self.mode not in ("train", "test"):
            raise ValueError(f"unknown mode {self.mode!r}")
        if self.max_steps < 1:
            raise ValueError("max_steps must be at least 1")
        if self.qtype == "attribute" and not self.made_up_names:
            raise ValueError("attribute questions need an invented-name entity")

    def gen_config(self) -> GenConfig:
        return GenConfig(
            difficulty=self.difficulty,
            seed=self.seed,
            n_locations_override=self.n_locations,
            made_up_names=self.made_up_names,
        )

    def to_dict(self) -> dict:
        return {
            "difficulty": self.difficulty,
            "seed": self.seed,
            "qtype": self.qtype,
            "question_seed": self.question_seed,
            "mode": self.mode,
            "max_steps": self.max_steps,
            "n_locations": self.n_locations,
            "made_up_names": self.made_up_names,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "EpisodeConfig":
        return cls(
            difficulty=data["difficulty"],
            seed=data["seed"],
            qtype=data["qtype"],
            question_seed=data["question_seed"],
            mode=data.get("mode", "test"),
            max_steps=data.get("max_steps", DEFAULT_MAX_STEPS),
            n_locations=data.get("n_locations"),
            made_up_names=data.get("made_up_names", True),
        )


@dataclass
class StepOutcome:
    """What one step produced.  Train-only fields are None in test mode."""

    step: int
    command: Optional[str]
    observation: str
    feedback: Feedback
    done: bool
    episodic_bonus: Optional[float] = None
    valid_commands: Optional[list[str]] = None

    def to_dict(self) -> dict:
        return {
            "step": self.step,
            "command": self.command,
            "observation": self.observation,
            "feedback": self.feedback.to_dict(),
            "done": self.done,
            "episodic_bonus": self.episodic_bonus,
            "valid_commands": self.valid_commands,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "StepOutcome":
        return cls(
            step=data["step"],
            command=data.get("command"),
            observation=data["observation"],
            feedback=Feedback.from_dict(data["feedback"]),
            done=data["done"],
            episodic_bonus=data.get("episodic_bonus"),
            valid_commands=data.get("valid_commands"),
        )


@dataclass
class EpisodeRecord:
    """Complete, replayable trace of one finished episode."""

    config: EpisodeConfig
    question: Question
    outcomes: list[StepOutcome]
    final_answer: Optional[str]
    answer_correct: bool
    sufficient_info: SufficientInfo
    distinct_observations: int
    aborted: bool = False
    duration_s: float = 0.0
    version: int = RECORD_VERSION

    def to_dict(self) -> dict:
        return {
            "version": self.version,
            "config": self.config.to_dict(),
            "question": self.question.to_dict(),
            "outcomes": [outcome.to_dict() for outcome in self.outcomes],
            "final_answer": self.final_answer,
            "answer_correct": self.answer_correct,
            "sufficient_info": self.sufficient_info.to_dict(),
            "distinct_observations": self.distinct_observations,
            "aborted": self.aborted,
            "duration_s": self.duration_s,
        }

    def comparable(self) -> dict:
        """The record as a dict with wall-clock noise stripped out."""

        data = self.to_dict()
        del data["duration_s"]
        return data

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, data: dict) -> "EpisodeRecord":
        if data.get("version") != RECORD_VERSION:
            raise ValueError(f"unsupported record version {data.get('version')!r}")
        return cls(
            config=EpisodeConfig.from_dict(data["config"]),
            question=Question.from_dict(data["question"]),
            outcomes=[StepOutcome.from_dict(o) for o in data["outcomes"]],
            final_answer=data.get("final_answer"),
            answer_correct=data["answer_correct"],
            sufficient_info=SufficientInfo.from_dict(data["sufficient_info"]),
            distinct_observations=data["distinct_observations"],
            aborted=data.get("aborted", False),
            duration_s=data.get("duration_s", 0.0),
        )

    @classmethod
    def from_json(cls, text: str) -> "EpisodeRecord":
        return cls.from_dict(json.loads(text))

    def save(self, path: Path | str) -> None:
        Path(path).write_text(self.to_json() + "\n", encoding="utf-8")

    @classmethod
    def load(cls, path: Path | str) -> "EpisodeRecord":
        return cls.from_json(Path(path).read_text(encoding="utf-8"))


class Episode:
    """A live episode.  step() until done, then answer() exactly once."""

    def __init__(self, config: EpisodeConfig) -> None:
        self.config = config
        self.world: World = generate_world(config.gen_config())
        self.question: Question = make_question(
            self.world, config.qtype, config.question_seed
        )
        self._novelty = EpisodicNovelty()
        self._coverage = CoverageTracker(self.world)
        self._evidence: Optional[AttributeEvidence] = None
        if config.qtype == "attribute":
            self._evidence = AttributeEvidence(
                self.question.subject_entity, self.question.attribute
            )
        self._subject_seen = False
        self._answered = False
        self.done = False
        self._started = time.monotonic()

        observation = render_observation(self.world)
        bonus = self._novelty.bonus(observation)
        self._coverage.observe(self.world)
        if self._evidence is not None:
            self._evidence.observe_state(self.world)
        self._note_subject(observation, "")
        initial = StepOutcome(
            step=0,
            command=None,
            observation=observation,
            feedback=Feedback(text="", success=True, effect="start"),
            done=False,
            episodic_bonus=bonus if config.mode == "train" else None,
            valid_commands=self._maybe_valid_commands(),
        )
        self.outcomes: list[StepOutcome] = [initial]

    def _maybe_valid_commands(self) -> Optional[list[str]]:
        if self.config.mode != "train":
            return None
        from .commands import valid_commands

        return valid_commands(self.world)

    def _note_subject(self, observation: str, feedback_text: str) -> None:
        if not self._subject_seen:
            self._subject_seen = subject_mentioned(
                [observation, feedback_text], self.question.subject
            )

    @property
    def initial_outcome(self) -> StepOutcome:
        return self.outcomes[0]

    @property
    def evidence(self) -> Optional[AttributeEvidence]:
        """The attribute evidence ledger; None unless qtype is attribute."""
        return self._evidence

    @property
    def steps_taken(self) -> int:
        return len(self.outcomes) - 1

    @property
    def steps_remaining(self) -> int:
        return self.config.max_steps - self.steps_taken

    def lexicons(self) -> dict:
        lex = self.world.lexicons
        return {
            "actions": list(lex.actions),
            "modifiers": list(lex.modifiers),
            "objects": list(lex.objects),
        }

    def candidates(self) -> list[str]:
        return answer_candidates(self.world, self.config.qtype)

    def step(self, text: str) -> StepOutcome:
        if self.done:
            raise EpisodeError("episode is already done")
        facts = None
        try:
            command = parse(self.world, text)
        except ParseError as error:
            command = None
            feedback = parse_failure(error)
        else:
            if self._evidence is not None:
                facts = self._evidence.pre_facts(self.world, command)
            feedback = apply(self.world, command)

        observation = render_observation(self.world)
        step_index = len(self.outcomes)
        waited = command is not None and feedback.effect == "waited"
        self.done = waited or step_index >= self.config.max_steps

        bonus = self._novelty.bonus(observation)
        self._coverage.observe(self.world)
        if self._evidence is not None:
            if facts is not None and command is not None:
                self._evidence.record(facts, command, feedback)
            self._evidence.observe_state(self.world)
        self._note_subject(observation, feedback.text)

        outcome = StepOutcome(
            step=step_index,
            command=text,
            observation=observation,
            feedback=feedback,
            done=self.done,
            episodic_bonus=bonus if self.config.mode == "train" else None,
            valid_commands=self._maybe_valid_commands(),
        )
        self.outcomes.append(outcome)
        return outcome

    def _final_text(self) -> str:
        last = self.outcomes[-1]
        if last.feedback.text:
            return last.observation + " " + last.feedback.text
        return last.observation

    def _score(self) -> SufficientInfo:
        question = self.question
        if question.qtype == "location":
            return sufficient_info_location(question.subject, self._final_text())
        if question.qtype == "existence":
            return sufficient_info_existence(
                question.subject,
                question.answer,
                self._final_text(),
                self._coverage.ratio(),
            )
        return sufficient_info_attribute(
            self._evidence, self._subject_seen, self._coverage.ratio()
        )

    def answer(self, token: str) -> EpisodeRecord:
        if not self.done:
            raise EpisodeError("cannot answer before waiting or running out of steps")
        if self._answered:
            raise EpisodeError("episode was already answered")
        self._answered = True
        normalized = token.strip().lower()
        correct = normalized == self.question.answer.lower()
        return EpisodeRecord(
            config=self.config,
            question=self.question,
            outcomes=self.outcomes,
            final_answer=normalized,
            answer_correct=correct,
            sufficient_info=self._score(),
            distinct_observations=self._novelty.distinct_count,
            duration_s=time.monotonic() - self._started,
        )

    def abort(self) -> EpisodeRecord:
        """Close out an episode whose agent failed; scored as incorrect."""

        self.done = True
        self._answered = True
        return EpisodeRecord(
            config=self.config,
            question=self.question,
            outcomes=self.outcomes,
            final_answer=None,
            answer_correct=False,
            sufficient_info=self._score(),
            distinct_observations=self._novelty.distinct_count,
            aborted=True,
            duration_s=time.monotonic() - self._started,
        )


def agent_view(episode: Episode, outcome: StepOutcome) -> dict:
    """The step as an agent sees it, with train-only fields mode-gated."""

    view = {
        "step": outcome.step,
        "observation": outcome.observation,
        "feedback": outcome.feedback.text,
        "done": outcome.done,
        "steps_remaining": episode.steps_remaining,
    }
    if episode.config.mode == "train":
        view["episodic_bonus"] = outcome.episodic_bonus
        view["valid_commands"] = outcome.valid_commands
    return view


def _call_timed(fn: Callable[[], str], timeout: Optional[float]) -> tuple[Optional[str], bool]:
    start = time.monotonic()
    result = fn()
    if timeout is not None and time.monotonic() - start > timeout:
        return None, True
    return result, False


def run_episode(config: EpisodeConfig, agent, step_timeout: Optional[float] = None) -> EpisodeRecord:
    """Drive one agent through one episode, enforcing an optional timeout."""

    episode = Episode(config)
    agent.start(
        question=episode.question.text,
        qtype=episode.question.qtype,
        mode=config.mode,
        candidates=episode.candidates(),
        lexicons=episode.lexicons(),
    )
    outcome = episode.initial_outcome
    while not episode.done:
        command, late = _call_timed(
            lambda: agent.act(agent_view(episode, outcome)), step_timeout
        )
        if late:
            return episode.abort()
        outcome = episode.step(command)
    token, late = _call_timed(lambda: agent.answer(), step_timeout)
    if late:
        return episode.abort()
    return episode.answer(token)


def run_batch(
    configs: Sequence[EpisodeConfig],
    agent_factory: Callable[[], object],
    step_timeout: Optional[float] = None,
) -> list[EpisodeRecord]:
    """Run episodes in lock-step rounds, one agent per episode.

    Finished episodes sit out later rounds without consuming engine steps,
    so each record matches what a solo run of that episode would produce.
    """

    episodes = [Episode(config) for config in configs]
    agents = [agent_factory() for _ in configs]
    records: list[Optional[EpisodeRecord]] = [None] * len(configs)
    outcomes = []
    for episode, agent in zip(episodes, agents):
        agent.start(
            question=episode.question.text,
            qtype=episode.question.qtype,
            mode=episode.config.mode,
            candidates=episode.candidates(),
            lexicons=episode.lexicons(),
        )
        outcomes.append(episode.initial_outcome)

    while any(record is None for record in records):
        for i, episode in enumerate(episodes):
            if records[i] is not None:
                continue
            agent = agents[i]
            if episode.done:
                token, late = _call_timed(lambda: agent.answer(), step_timeout)
                records[i] = episode.abort() if late else episode.answer(token)
                continue
            command, late = _call_timed(
                lambda: agent.act(agent_view(episode, outcomes[i])), step_timeout
            )
            if late:
                records[i] = episode.abort()
                continue
            outcomes[i] = episode.step(command)
    return records


def replay_record(record: EpisodeRecord) -> EpisodeRecord:
    """Re-run a record's commands from its config and score it afresh."""

    episode = Episode(record.config)
    for outcome in record.outcomes[1:]:
        episode.step(outcome.command)
    if record.aborted:
        episode.done = True
        return episode.abort()
    return episode.answer(record.final_answer)


def verify_replay(record: EpisodeRecord) -> bool:
    """True when a fresh replay reproduces the record bit for bit."""

    return replay_record(record).comparable() == record.comparable()


def save_records(records: Sequence[EpisodeRecord], directory: Path | str) -> Path:
    """Write one JSON file per record plus an index of summary rows."""

    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    rows = []
    for i, record in enumerate(records):
        name = f"episode-{i:05d}.json"
        record.save(directory / name)
        rows.append(
            {
                "file": name,
                "qtype": record.question.qtype,
                "seed": record.config.seed,
                "question_seed": record.config.question_seed,
                "answer_correct": record.answer_correct,
                "sufficient_info": record.sufficient_info.total,
                "aborted": record.aborted,
            }
        )
    index_path = directory / "index.json"
    index_path.write_text(
        json.dumps({"version": RECORD_VERSION, "episodes": rows}, indent=2) + "\n",
        encoding="utf-8",
    )
    return index_path
