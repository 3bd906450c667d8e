"""Export of (document, question, answer) triplets for reading-model work.

Each document is the transcript an explorer agent produced while settling
the question.  A triplet is only written if the finished episode actually
contains the information needed to answer, so a reader model trained on
the export never faces an unanswerable document.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Optional

from .agents import HeuristicExplorer
from .episode import EpisodeConfig, EpisodeRecord, run_episode
from .rng import derive_seed

#: Minimum sufficient-information base for a triplet to be kept.  Yes/no
#: evidence is binary; search coverage for negative existence answers must
#: be complete.
SUFFICIENCY_FLOOR = 0.999

SPLIT_NAMES = ("train", "valid", "test")


def build_doc(record: EpisodeRecord) -> str:
    """The episode transcript: one observation-and-feedback line per step."""

    lines = []
    for outcome in record.outcomes:
        if outcome.feedback.text:
            lines.append(outcome.observation + " " + outcome.feedback.text)
        else:
            lines.append(outcome.observation)
    return "\n".join(lines)


def record_triplet(record: EpisodeRecord) -> dict:
    return {
        "doc": build_doc(record),
        "question": record.question.text,
        "answer": record.question.answer,
        "qtype": record.question.qtype,
        "difficulty": record.config.difficulty,
        "seed": record.config.seed,
        "question_seed": record.config.question_seed,
    }


def export_dataset(
    qtype: str,
    difficulty: str,
    episodes: int,
    master_seed: int,
    out_dir: Path | str,
    ratios: tuple[float, float, float] = (0.8, 0.1, 0.1),
    agent_seed: int = 0,
    max_steps: Optional[int] = None,
) -> dict:
    """Generate triplets with the explorer and write seed-disjoint splits.

    Episodes whose transcript fails the sufficiency check are skipped, not
    replaced, so the split sizes are upper bounds.
    """

    if abs(sum(ratios) - 1.0) > 1e-9:
        raise ValueError("split ratios must sum to 1")
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)

    triplets = []
    skipped = 0
    for i in range(episodes):
        config = EpisodeConfig(
            difficulty=difficulty,
            seed=derive_seed(master_seed, f"docs:{difficulty}:{qtype}:game", i),
            qtype=qtype,
            question_seed=derive_seed(master_seed, f"docs:{difficulty}:{qtype}:question", i),
            mode="test",
            **({"max_steps": max_steps} if max_steps else {}),
        )
        record = run_episode(config, HeuristicExplorer(seed=agent_seed + i))
        if record.aborted or record.sufficient_info.base < SUFFICIENCY_FLOOR:
            skipped += 1
            continue
        triplets.append(record_triplet(record))

    n = len(triplets)
    n_train = int(n * ratios[0])
    n_valid = int(n * ratios[1])
    splits = {
        "train": triplets[:n_train],
        "valid": triplets[n_train : n_train + n_valid],
        "test": triplets[n_train + n_valid :],
    }
    written = {}
    for name in SPLIT_NAMES:
        path = out_dir / f"{name}.jsonl"
        with path.open("w", encoding="utf-8") as fh:
            for triplet in splits[name]:
                fh.write(json.dumps(triplet, sort_keys=True) + "\n")
        written[name] = len(splits[name])
    return {
        "total": episodes,
        "kept": n,
        "skipped": skipped,
        "written": written,
        "out_dir": str(out_dir),
    }


def verify_split_disjoint(out_dir: Path | str) -> bool:
    """Check that no game seed appears in more than one split file."""

    out_dir = Path(out_dir)
    seen: dict[int, str] = {}
    for name in SPLIT_NAMES:
        path = out_dir / f"{name}.jsonl"
        if not path.exists():
            continue
        for line in path.read_text(encoding="utf-8").splitlines():
            seed = json.loads(line)["seed"]
            if seed in seen and seen[seed] != name:
                return False
            seen[seed] = name
    return True
