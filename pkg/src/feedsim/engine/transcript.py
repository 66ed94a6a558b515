"""NDJSON transcripts: streaming atomic writer, strict reader and recurrence audit."""

from __future__ import annotations

import json
import math
import os
import tempfile
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Iterable, Iterator

from ..decision.outcome import InteractionOutcome, ReactionKind
from ..errors import TranscriptError

RECORD_KEYS = (
    "day", "scenario", "agent_id", "post_id", "source", "reaction", "read_comments",
    "comment", "shared", "friend_request", "F", "P_s", "E_s",
)


@dataclass(frozen=True)
class Interaction:
    day: int
    agent_id: str
    post_id: str
    source: str
    outcome: InteractionOutcome
    F: float
    P_s: float
    E_s: float

    def to_record(self, scenario: str) -> dict[str, Any]:
        o = self.outcome
        return {
            "day": self.day,
            "scenario": scenario,
            "agent_id": self.agent_id,
            "post_id": self.post_id,
            "source": self.source,
            "reaction": o.reaction.value,
            "read_comments": o.read_comments,
            "comment": o.comment_text,
            "shared": o.shared,
            "friend_request": o.friend_requested,
            "F": self.F,
            "P_s": self.P_s,
            "E_s": self.E_s,
        }


def _dumps(obj: dict[str, Any]) -> str:
    return json.dumps(obj, ensure_ascii=False, separators=(",", ":"), allow_nan=False)


def write_atomic(path: str | Path, text: str) -> None:
    """Write ``text`` to ``path`` via a temp file in the same directory and a rename."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


class TranscriptWriter:
    """Streams records to a temp file; the target path appears only on :meth:`close`.

    A run that dies midway leaves no transcript at ``path`` (and a
    truncated temp file has no footer, so the reader rejects it anyway).
    """

    def __init__(self, path: str | Path, header: dict[str, Any]):
        self.path = Path(path)
        self.path.parent.mkdir(parents=True, exist_ok=True)
        fd, self._tmp = tempfile.mkstemp(dir=self.path.parent, prefix=f".{self.path.name}.", suffix=".tmp")
        self._fh = os.fdopen(fd, "w", encoding="utf-8", newline="\n")
        self.count = 0
        self._last: tuple | None = None
        self._fh.write(_dumps({"type": "header", **header}) + "\n")

    def write(self, record: dict[str, Any]) -> None:
        order = (record["day"], record["agent_id"], record["post_id"])
        if self._last is not None and order <= self._last:
            raise TranscriptError(f"transcript out of order at {order} after {self._last}")
        self._last = order
        self._fh.write(_dumps(record) + "\n")
        self.count += 1

    def write_many(self, records: Iterable[dict[str, Any]]) -> None:
        for r in records:
            self.write(r)

    def close(self) -> Path:
        self._fh.write(_dumps({"type": "footer", "records": self.count}) + "\n")
        self._fh.close()
        os.replace(self._tmp, self.path)
        return self.path

    def abort(self) -> None:
        self._fh.close()
        if os.path.exists(self._tmp):
            os.unlink(self._tmp)

    def __enter__(self) -> "TranscriptWriter":
        return self

    def __exit__(self, exc_type, exc, tb):
        if exc_type is None:
            self.close()
        else:
            self.abort()


@dataclass
class Transcript:
    header: dict[str, Any]
    records: list[dict[str, Any]]


def iter_lines(path: str | Path) -> Iterator[dict[str, Any]]:
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            try:
                yield json.loads(line)
            except json.JSONDecodeError as exc:
                raise TranscriptError(f"{path}:{lineno}: malformed JSON ({exc.msg})") from None


def read_transcript(path: str | Path) -> Transcript:
    """Load a complete transcript; missing header/footer or a count mismatch is an error."""
    path = Path(path)
    if not path.exists():
        raise TranscriptError(f"{path}: no such transcript")
    header = None
    footer = None
    records: list[dict[str, Any]] = []
    for obj in iter_lines(path):
        if footer is not None:
            raise TranscriptError(f"{path}: data after footer")
        kind = obj.get("type")
        if kind == "header":
            if header is not None or records:
                raise TranscriptError(f"{path}: header must be the first line")
            header = obj
        elif kind == "footer":
            footer = obj
        else:
            if tuple(obj) != RECORD_KEYS:
                raise TranscriptError(f"{path}: record keys {list(obj)} do not match {list(RECORD_KEYS)}")
            records.append(obj)
    if header is None:
        raise TranscriptError(f"{path}: missing header")
    if footer is None:
        raise TranscriptError(f"{path}: missing footer (truncated transcript?)")
    if footer.get("records") != len(records):
        raise TranscriptError(f"{path}: footer says {footer.get('records')} records, found {len(records)}")
    return Transcript(header, records)


@dataclass(frozen=True)
class AuditReport:
    records: int
    agent_days: int
    max_deviation: float
    problems: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return not self.problems and self.max_deviation == 0.0


def audit(transcript: Transcript) -> AuditReport:
    """Re-derive every P_s/E_s update from the recorded F values.

    Scores are recomputed with the engine's exact expressions, so a clean
    transcript has deviation 0.0 rather than merely a small one.
    """
    header = transcript.header
    alpha, beta = header["alpha"], header["beta"]
    state = {a["agent_id"]: (a["P_s"], a["E_s"], a["T"]) for a in header["agents"]}
    problems: list[str] = []
    worst = 0.0
    agent_days = 0
    last = None
    group = scores = None
    for r in transcript.records:
        order = (r["day"], r["agent_id"], r["post_id"])
        if last is not None and order <= last:
            problems.append(f"record order broken at {order}")
        last = order
        if r["reaction"] not in ReactionKind._value2member_map_:
            problems.append(f"unknown reaction {r['reaction']!r} at {order}")
        if r["reaction"] == "None" and (r["comment"] is not None or r["shared"] or r["friend_request"]):
            problems.append(f"skipped post carries an action at {order}")
        key = (r["day"], r["agent_id"])
        if key == group:
            if (r["F"], r["P_s"], r["E_s"]) != scores:
                problems.append(f"scores differ within agent-day {key}")
            continue
        group = key
        scores = (r["F"], r["P_s"], r["E_s"])
        agent_days += 1
        if r["agent_id"] not in state:
            problems.append(f"agent {r['agent_id']} missing from header")
            continue
        p, e, t = state[r["agent_id"]]
        f = r["F"]
        if not (-1.0 <= f <= 1.0) or not math.isfinite(f):
            problems.append(f"F out of range at {key}")
        p_next = alpha * p + (1 - alpha) * f
        e_next = beta * e + (1 - beta) * t * f
        worst = max(worst, abs(p_next - r["P_s"]), abs(e_next - r["E_s"]))
        state[r["agent_id"]] = (r["P_s"], r["E_s"], t)
    return AuditReport(len(transcript.records), agent_days, worst, tuple(problems))
