"""Command line entry point.

Subcommands cover the whole lifecycle: generate a world, play an episode in
the terminal, evaluate an agent over a suite, serve the network interfaces,
export question-answer documents, and verify saved records by replay.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .episode import (
    DEFAULT_MAX_STEPS,
    Episode,
    EpisodeConfig,
    EpisodeRecord,
    verify_replay,
)
from .evaluation import AGENT_NAMES, SETTINGS, SuiteSpec, evaluate, make_agent
from .docexport import export_dataset, verify_split_disjoint
from .gen import DIFFICULTIES, GenConfig, generate_world
from .questions import QUESTION_TYPES
from .rng import derive_seed
from .templates import render_observation


def _add_episode_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--difficulty", choices=DIFFICULTIES, default="fixed_map")
    parser.add_argument("--qtype", choices=QUESTION_TYPES, default="location")
    parser.add_argument("--seed", type=int, default=0, help="world seed")
    parser.add_argument("--question-seed", type=int, default=0)
    parser.add_argument("--mode", choices=("train", "test"), default="test")
    parser.add_argument("--max-steps", type=int, default=DEFAULT_MAX_STEPS)


def _cmd_gen(args: argparse.Namespace) -> int:
    config = GenConfig(
        difficulty=args.difficulty,
        seed=args.seed,
        made_up_names=args.made_up_names,
    )
    world = generate_world(config)
    if args.json:
        print(json.dumps(world.to_dict(), indent=2, sort_keys=True))
        return 0
    print(f"world seed={args.seed} difficulty={args.difficulty}")
    print(f"locations: {', '.join(loc.name for loc in world.locations.values())}")
    print(f"entities: {len(world.entities)}")
    print()
    print(render_observation(world))
    return 0


def _cmd_play(args: argparse.Namespace) -> int:
    config = EpisodeConfig(
        difficulty=args.difficulty,
        seed=args.seed,
        qtype=args.qtype,
        question_seed=args.question_seed,
        mode=args.mode,
        max_steps=args.max_steps,
    )
    episode = Episode(config)
    print(f"Question: {episode.question.text}")
    print()
    print(episode.initial_outcome.observation)
    while not episode.done:
        try:
            line = input(f"[{episode.steps_remaining} steps] > ").strip()
        except EOFError:
            print()
            return 1
        if not line:
            continue
        outcome = episode.step(line)
        if outcome.feedback.text:
            print(outcome.feedback.text)
        print()
        print(outcome.observation)
    print()
    print(f"Question: {episode.question.text}")
    try:
        token = input("Your answer > ").strip()
    except EOFError:
        print()
        return 1
    record = episode.answer(token)
    verdict = "correct" if record.answer_correct else f"wrong (truth: {record.question.answer})"
    print(f"Answer is {verdict}.")
    print(f"Sufficient information score: {record.sufficient_info.total:.3f}")
    if args.record:
        record.save(args.record)
        print(f"Record saved to {args.record}")
    return 0 if record.answer_correct else 1


def _cmd_eval(args: argparse.Namespace) -> int:
    spec = SuiteSpec(
        setting=args.setting,
        difficulty=args.difficulty,
        qtype=args.qtype,
        master_seed=args.master_seed,
        episodes=args.episodes,
        n_games=args.n_games,
        mode=args.mode,
        max_steps=args.max_steps,
    )

    def factory(index: int):
        return make_agent(args.agent, seed=derive_seed(args.master_seed, "agent", index))

    def progress(i, record):
        if not args.json and (i + 1) % args.progress_every == 0:
            mark = "+" if record.answer_correct else "-"
            print(f"  episode {i + 1}/{spec.episodes} {mark}", file=sys.stderr)

    report = evaluate(
        spec,
        factory,
        agent_name=args.agent,
        record_dir=args.record_dir,
        progress=progress,
    )
    if args.json:
        print(json.dumps(report.to_dict(), indent=2, sort_keys=True))
    else:
        print(report.summary())
    return 0


def _cmd_serve(args: argparse.Namespace) -> int:
    from . import service

    if args.transport == "stdio":
        service.serve_stdio(record_dir=args.record_dir)
        return 0
    if args.transport == "tcp":
        server = service.AgentProtocolServer(
            host=args.host, port=args.port, record_dir=args.record_dir
        )
        host, port = server.address
        print(f"agent protocol listening on {host}:{port}", file=sys.stderr)
        try:
            server.serve_forever()
        except KeyboardInterrupt:
            server.shutdown()
        return 0

    import uvicorn

    app = service.create_play_app(
        record_dir=args.record_dir, frontend_dir=args.frontend_dir
    )
    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    return 0


def _cmd_export_docs(args: argparse.Namespace) -> int:
    stats = export_dataset(
        qtype=args.qtype,
        difficulty=args.difficulty,
        episodes=args.episodes,
        master_seed=args.master_seed,
        out_dir=args.out_dir,
    )
    verify_split_disjoint(args.out_dir)
    if args.json:
        print(json.dumps(stats, indent=2, sort_keys=True))
    else:
        print(
            f"kept {stats['kept']}/{stats['total']} episodes "
            f"({stats['skipped']} below the sufficiency floor)"
        )
        for name, count in stats["written"].items():
            print(f"  {name}: {count}")
    return 0


def _cmd_replay(args: argparse.Namespace) -> int:
    paths: list[Path] = []
    for raw in args.records:
        path = Path(raw)
        if path.is_dir():
            paths.extend(sorted(path.glob("episode-*.json")))
            paths.extend(sorted(path.glob("session-*.json")))
        else:
            paths.append(path)
    if not paths:
        print("no records found", file=sys.stderr)
        return 2
    failures = 0
    for path in paths:
        record = EpisodeRecord.load(path)
        ok = verify_replay(record)
        if not ok:
            failures += 1
        if args.json:
            print(json.dumps({"file": str(path), "ok": ok}))
        else:
            print(f"{'ok  ' if ok else 'FAIL'} {path}")
    if not args.json:
        print(f"{len(paths) - failures}/{len(paths)} records replay identically")
    return 1 if failures else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="inquest",
        description="Generated text worlds with question answering.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_gen = sub.add_parser("gen", help="generate a world and print it")
    p_gen.add_argument("--difficulty", choices=DIFFICULTIES, default="fixed_map")
    p_gen.add_argument("--seed", type=int, default=0)
    p_gen.add_argument("--made-up-names", action="store_true")
    p_gen.add_argument("--json", action="store_true", help="dump the world snapshot")
    p_gen.set_defaults(func=_cmd_gen)

    p_play = sub.add_parser("play", help="play one episode in the terminal")
    _add_episode_args(p_play)
    p_play.add_argument("--record", type=Path, help="save the episode record here")
    p_play.set_defaults(func=_cmd_play)

    p_eval = sub.add_parser("eval", help="score a built-in agent over a suite")
    p_eval.add_argument("--agent", choices=AGENT_NAMES, default="random-answer")
    p_eval.add_argument("--setting", choices=SETTINGS, default="unlimited")
    p_eval.add_argument("--difficulty", choices=DIFFICULTIES, default="fixed_map")
    p_eval.add_argument("--qtype", choices=QUESTION_TYPES, default="location")
    p_eval.add_argument("--master-seed", type=int, default=0)
    p_eval.add_argument("--episodes", type=int, default=500)
    p_eval.add_argument("--n-games", type=int, help="distinct games in training setting")
    p_eval.add_argument("--mode", choices=("train", "test"), default="test")
    p_eval.add_argument("--max-steps", type=int, default=DEFAULT_MAX_STEPS)
    p_eval.add_argument("--record-dir", type=Path)
    p_eval.add_argument("--progress-every", type=int, default=50)
    p_eval.add_argument("--json", action="store_true")
    p_eval.set_defaults(func=_cmd_eval)

    p_serve = sub.add_parser("serve", help="serve the play API or agent protocol")
    p_serve.add_argument(
        "--transport", choices=("http", "tcp", "stdio"), default="http"
    )
    p_serve.add_argument("--host", default="127.0.0.1")
    p_serve.add_argument("--port", type=int, default=8000)
    p_serve.add_argument("--record-dir", type=Path)
    p_serve.add_argument("--frontend-dir", type=Path, help="static files to mount at /")
    p_serve.set_defaults(func=_cmd_serve)

    p_export = sub.add_parser("export-docs", help="export question-answer documents")
    p_export.add_argument("--qtype", choices=QUESTION_TYPES, default="location")
    p_export.add_argument("--difficulty", choices=DIFFICULTIES, default="fixed_map")
    p_export.add_argument("--episodes", type=int, default=100)
    p_export.add_argument("--master-seed", type=int, default=0)
    p_export.add_argument("--out-dir", type=Path, required=True)
    p_export.add_argument("--json", action="store_true")
    p_export.set_defaults(func=_cmd_export_docs)

    p_replay = sub.add_parser("replay", help="verify saved records replay identically")
    p_replay.add_argument("records", nargs="+", help="record files or directories")
    p_replay.add_argument("--json", action="store_true")
    p_replay.set_defaults(func=_cmd_replay)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError) as error:
        print(f"error: {error}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
