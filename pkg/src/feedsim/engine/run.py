"""Run orchestration: engine choice, per-day series and transcript streaming."""

from __future__ import annotations

import logging
import time
from pathlib import Path

import numpy as np

from ..config import RunConfig
from ..decision.backends import DecisionBackend, DeterministicBackend
from ..recommender import ScenarioKind
from .fast import FastEngineUnavailable, FastWorld
from .reference import run_day
from .state import COUNT_COLUMNS, RunResult, SimulationState, header_for, initial_state
from .transcript import TranscriptWriter

log = logging.getLogger(__name__)


def run(
    config: RunConfig,
    backend: DecisionBackend | None = None,
    transcript_path: str | Path | None = None,
    state: SimulationState | None = None,
    engine: str | None = None,
) -> RunResult:
    """Simulate ``config.days`` days.

    With a ``transcript_path`` the records are streamed to disk (atomically
    renamed at the end) instead of being kept in memory.
    """
    backend = backend or DeterministicBackend()
    state = initial_state(config) if state is None else state
    engine = engine or config.engine
    if engine == "auto":
        engine = "fast" if backend.name == "deterministic" else "reference"
    if engine == "fast" and backend.name != "deterministic":
        raise FastEngineUnavailable("the fast engine only runs the deterministic backend")

    world = None
    if engine == "fast":
        try:
            world = FastWorld(state, config)
        except FastEngineUnavailable as exc:
            if config.engine == "fast":
                raise
            log.info("falling back to the reference engine: %s", exc)
            engine = "reference"

    ids = state.order
    n, days = len(ids), config.days
    P = np.empty((days + 1, n))
    E = np.empty((days + 1, n))
    F = np.empty((days, n))
    P[0] = [state.agents[a].polarization for a in ids]
    E[0] = [state.agents[a].engagement for a in ids]
    counts = np.zeros((n, len(COUNT_COLUMNS)), dtype=np.int64)
    keep = config.record_transcript and transcript_path is None
    state.keep_transcript = keep
    writer = None
    if config.record_transcript and transcript_path is not None:
        writer = TranscriptWriter(transcript_path, header_for(config, state, engine))
    scenario = config.scenario.value

    started = time.perf_counter()
    try:
        for d in range(days):
            if world is not None:
                world.step(counts)
                if config.record_transcript:
                    records = world.interactions()
                    if keep:
                        state.transcript.extend(records)
                    elif writer is not None:
                        writer.write_many(r.to_record(scenario) for r in records)
                F[d] = world.o_F
                world.close()
                P[d + 1] = world.a_P
                E[d + 1] = world.a_E
            else:
                records = run_day(state, config, backend, counts)
                if writer is not None:
                    writer.write_many(r.to_record(scenario) for r in records)
                by_agent = {r.agent_id: r.F for r in records}
                F[d] = [by_agent.get(a, np.nan) for a in ids]
                P[d + 1] = [state.agents[a].polarization for a in ids]
                E[d + 1] = [state.agents[a].engagement for a in ids]
            if (d + 1) % 30 == 0:
                log.info("day %d/%d done (%.1fs)", d + 1, days, time.perf_counter() - started)
    except BaseException:
        if writer is not None:
            writer.abort()
        raise
    wall = time.perf_counter() - started
    path = str(writer.close()) if writer is not None else None

    if world is not None:
        agents = _world_agents(world)
        extras = {"friend_edges": world.edge_count(), "posts": world.n_posts}
    else:
        agents = [state.agents[a] for a in ids]
        extras = {"friend_edges": sum(len(a.friends) for a in agents) // 2, "posts": len(state.pool)}
    return RunResult(
        config=config,
        agent_ids=ids,
        agents=agents,
        polarization=P,
        engagement=E,
        impact=F,
        counts=counts,
        transcript=state.transcript if keep else None,
        transcript_path=path,
        engine=engine,
        wall_seconds=wall,
        extras=extras,
    )


def _world_agents(world: FastWorld):
    import dataclasses

    from ..agents import DynamicTraits

    out = []
    for i, agent in enumerate(world.agents):
        friends = frozenset(world.agent_ids[j] for j in world.friends_of(i))
        out.append(dataclasses.replace(
            agent,
            polarization=float(world.a_P[i]),
            engagement=float(world.a_E[i]),
            dynamic=DynamicTraits(float(world.a_pa[i]), float(world.a_sc[i]), float(world.a_er[i])),
            friends=friends,
        ))
    return out


def run_scenarios(config: RunConfig, scenarios=tuple(ScenarioKind), backend: DecisionBackend | None = None):
    return {kind: run(config.with_overrides(scenario=kind.value), backend) for kind in scenarios}
