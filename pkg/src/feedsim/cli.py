"""Command line entry point: gen-agents, run, replicate, report, replay-verify."""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from pathlib import Path

from . import errors
from .agents import dump_agents, generate_population
from .config import RunConfig, config_from_dict
from .decision.backends import DeterministicBackend, LLMBackend
from .decision.llm import API_KEY_ENV, CassetteChat, CassetteStore, ChatClient
from .engine import audit, read_transcript, replicate_experiment, run, write_atomic
from .engine.transcript import TranscriptWriter
from .metrics import ReactionTally, render_report, score_summary, series_csv, tally, write_report_files

log = logging.getLogger("feedsim")

# Module that owns each error type, used to qualify diagnostics.
_ERROR_MODULE = {
    errors.ConfigError: "harness",
    errors.FixtureCorrupt: "content",
    errors.EmptyPool: "content",
    errors.EmptyInterests: "agents",
    errors.RangeError: "agents",
    errors.InsufficientCandidates: "recommender",
    errors.EmptySelection: "recommender",
    errors.EmptyConsumption: "dynamics",
    errors.ParseError: "decision",
    errors.TransportError: "decision",
    errors.CassetteMiss: "decision",
    errors.TranscriptError: "engine",
    errors.UnknownProfile: "metrics",
}


def _module_of(exc: BaseException) -> str:
    for cls in type(exc).__mro__:
        if cls in _ERROR_MODULE:
            return _ERROR_MODULE[cls]
    return "feedsim"


def _load_config(args, need_scenario: bool = True) -> RunConfig:
    data: dict = {}
    if args.config:
        path = Path(args.config)
        try:
            data = json.loads(path.read_text(encoding="utf-8"))
        except OSError as exc:
            raise errors.ConfigError(f"{path}: cannot read config ({exc.strerror})") from exc
        except (UnicodeDecodeError, json.JSONDecodeError) as exc:
            raise errors.ConfigError(f"{path}: not valid UTF-8 JSON ({exc})") from exc
        if not isinstance(data, dict):
            raise errors.ConfigError(f"{path}: expected a JSON object")
    for key in ("scenario", "seed", "backend", "out_dir"):
        value = getattr(args, key, None)
        if value is not None:
            data[key] = value
    if getattr(args, "cassettes", None):
        data["llm"] = {**data.get("llm", {}), "cassette_dir": args.cassettes}
    if not need_scenario:
        data.setdefault("scenario", "Similarity")
    return config_from_dict(data)


def make_backend(config: RunConfig):
    if config.backend == "deterministic":
        return DeterministicBackend()
    llm = config.llm
    if config.backend == "replay":
        if not llm.cassette_dir:
            raise errors.ConfigError("llm.cassette_dir: required for the replay backend")
        chat = CassetteChat(CassetteStore(llm.cassette_dir), "replay", model=llm.model)
    else:
        if not os.environ.get(API_KEY_ENV):
            raise errors.ConfigError(f"backend llm: set {API_KEY_ENV}")
        chat = ChatClient(llm.endpoint, llm.model, timeout=llm.timeout, max_retries=llm.max_retries)
        if llm.cassette_dir:
            chat = CassetteChat(CassetteStore(llm.cassette_dir), "record", inner=chat)
    return LLMBackend(chat, max_in_flight=llm.max_in_flight, retries=llm.parse_retries)


def _out_dir(config: RunConfig, args) -> Path:
    return Path(args.out or config.out_dir or ".")


def cmd_gen_agents(args) -> int:
    agents = generate_population(args.n, args.seed)
    out = Path(args.out)
    write_atomic(out, dump_agents(agents))
    print(f"wrote {len(agents)} agents to {out}")
    return 0


def cmd_run(args) -> int:
    config = _load_config(args)
    backend = make_backend(config)
    out = _out_dir(config, args)
    name = config.scenario.value
    transcript = out / f"transcript_{name}.ndjson" if config.record_transcript else None
    result = run(config, backend, transcript_path=transcript)
    tallies = [ReactionTally.from_counts(aid, name, result.counts[j]) for j, aid in enumerate(result.agent_ids)]
    paths = write_report_files(render_report(tallies), out, name)
    series = out / f"series_{name}.csv"
    write_atomic(series, series_csv(result))
    summary = score_summary(result)
    summary_path = out / f"summary_{name}.json"
    write_atomic(summary_path, json.dumps({
        "scenario": name,
        "engine": result.engine,
        "days": result.days,
        "agents": len(result.agent_ids),
        "wall_seconds": round(result.wall_seconds, 3),
        "final_P_s": vars(summary.final_polarization),
        "final_E_s": vars(summary.final_engagement),
        **result.extras,
    }, indent=2) + "\n")
    write_atomic(out / f"daily_means_{name}.csv", summary.to_csv())
    for p in ([transcript] if transcript else []) + paths + [series, summary_path]:
        print(f"wrote {p}")
    print(f"{name}: {len(result.agent_ids)} agents x {result.days} days in {result.wall_seconds:.1f}s "
          f"({result.engine} engine); final P_s mean {summary.final_polarization.mean:.4f}, "
          f"E_s mean {summary.final_engagement.mean:.4f}")
    return 0


def cmd_replicate(args) -> int:
    config = _load_config(args, need_scenario=False)
    backend = make_backend(config)
    out = _out_dir(config, args)
    rep = replicate_experiment(backend, seed=config.seed, alpha=config.alpha, beta=config.beta,
                               balance_ratio=config.balance_ratio, weights=config.weights)
    for kind, ts in rep.tallies.items():
        for p in write_report_files(render_report(ts), out, kind.value):
            print(f"wrote {p}")
        with TranscriptWriter(out / f"transcript_replicate_{kind.value}.ndjson", rep.headers[kind]) as w:
            w.write_many(r.to_record(kind.value) for r in rep.transcripts[kind])
    print(rep.report().text)
    return 0


def cmd_report(args) -> int:
    t = read_transcript(args.transcript)
    name = t.header["scenario"]
    profiles = args.profiles or [a["agent_id"] for a in t.header["agents"]]
    report = render_report(tally(t, p, name) for p in profiles)
    out = Path(args.out or Path(args.transcript).parent)
    for p in write_report_files(report, out, name):
        print(f"wrote {p}")
    print(report.text)
    return 0


def cmd_replay_verify(args) -> int:
    report = audit(read_transcript(args.transcript))
    print(f"records {report.records}, agent-days {report.agent_days}, max deviation {report.max_deviation!r}")
    for problem in report.problems[:20]:
        print(f"problem: {problem}", file=sys.stderr)
    return 0 if report.ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="feedsim", description=__doc__)
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, scenario: bool = True):
        p.add_argument("--config", help="run config (JSON)")
        if scenario:
            p.add_argument("--scenario", help="Plurality, Balanced or Similarity")
        p.add_argument("--seed", type=int)
        p.add_argument("--backend", choices=("deterministic", "llm", "replay"))
        p.add_argument("--cassettes", help="cassette directory for llm/replay backends")
        p.add_argument("--out", help="output directory")

    g = sub.add_parser("gen-agents", help="write a random agent population")
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--seed", type=int, default=42)
    g.add_argument("--out", required=True, help="output JSON file")
    g.set_defaults(func=cmd_gen_agents)

    r = sub.add_parser("run", help="simulate a population for the configured number of days")
    common(r)
    r.set_defaults(func=cmd_run)

    rep = sub.add_parser("replicate", help="three fixture profiles, one 30-post session per scenario")
    common(rep, scenario=False)
    rep.set_defaults(func=cmd_replicate)

    rp = sub.add_parser("report", help="reaction tables from a transcript")
    rp.add_argument("transcript")
    rp.add_argument("--profiles", nargs="*")
    rp.add_argument("--out")
    rp.set_defaults(func=cmd_report)

    v = sub.add_parser("replay-verify", help="re-derive every score update in a transcript")
    v.add_argument("transcript")
    v.set_defaults(func=cmd_replay_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except errors.FeedsimError as exc:
        print(f"feedsim {_module_of(exc)}: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"feedsim: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
