"""Simulation loop, run orchestration, transcripts and the fixture replication."""

from .fast import FastEngineUnavailable, FastWorld
from .reference import run_day
from .replicate import PROFILES, Replication, replicate_experiment
from .run import run, run_scenarios
from .state import COUNT_COLUMNS, RunResult, SimulationState, header_for, initial_state
from .transcript import (
    AuditReport,
    Interaction,
    Transcript,
    TranscriptWriter,
    audit,
    read_transcript,
    write_atomic,
)

__all__ = [
    "AuditReport", "COUNT_COLUMNS", "PROFILES", "Replication", "replicate_experiment", "FastEngineUnavailable", "FastWorld", "Interaction",
    "RunResult", "SimulationState", "Transcript", "TranscriptWriter", "audit", "header_for",
    "initial_state", "read_transcript", "run", "run_day", "run_scenarios", "write_atomic",
]
