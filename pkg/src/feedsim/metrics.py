"""Reaction tallies, report tables and score summaries."""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, fields
from pathlib import Path
from typing import Any, Iterable, Mapping, Sequence

import numpy as np

from .decision.outcome import ReactionKind
from .errors import UnknownProfile
from .recommender import ScenarioKind

REACTION_COLUMNS = ("Haha", "Like", "Wow", "Care", "Love", "Sad", "Angry")
TABLE_COLUMNS = REACTION_COLUMNS + ("Comments", "Total Reactions", "Total Positive", "Total Negative")
EXTENDED_COLUMNS = ("Shares", "Friend Requests")
TOTAL_LABEL = "In total"


@dataclass(frozen=True)
class ReactionTally:
    profile_id: str
    scenario: str
    haha: int = 0
    like: int = 0
    wow: int = 0
    care: int = 0
    love: int = 0
    sad: int = 0
    angry: int = 0
    comments: int = 0
    shares: int = 0
    friend_requests: int = 0

    def __post_init__(self):
        for f in fields(self):
            if f.type == "int" and getattr(self, f.name) < 0:
                raise ValueError(f"{f.name} must be non-negative")

    @property
    def reactions(self) -> tuple[int, ...]:
        return (self.haha, self.like, self.wow, self.care, self.love, self.sad, self.angry)

    @property
    def total_positive(self) -> int:
        return self.haha + self.like + self.wow + self.care + self.love

    @property
    def total_negative(self) -> int:
        return self.sad + self.angry

    @property
    def total_reactions(self) -> int:
        # Comments count as engagement alongside emoji reactions.
        return sum(self.reactions) + self.comments

    def row(self) -> tuple[int, ...]:
        return self.reactions + (self.comments, self.total_reactions, self.total_positive, self.total_negative)

    @property
    def label(self) -> str:
        return self.profile_id.replace("_", " ")

    @classmethod
    def from_counts(cls, profile_id: str, scenario: str, counts: Sequence[int]) -> "ReactionTally":
        """From a row in ``engine.COUNT_COLUMNS`` order."""
        return cls(profile_id, scenario, *(int(c) for c in counts[:10]))


_FIELD_OF = {
    ReactionKind.HAHA.value: "haha", ReactionKind.LIKE.value: "like", ReactionKind.WOW.value: "wow",
    ReactionKind.CARE.value: "care", ReactionKind.LOVE.value: "love", ReactionKind.SAD.value: "sad",
    ReactionKind.ANGRY.value: "angry",
}


def _as_record(r: Any) -> Mapping[str, Any]:
    if isinstance(r, Mapping):
        return r
    return {
        "agent_id": r.agent_id,
        "reaction": r.outcome.reaction.value,
        "comment": r.outcome.comment_text,
        "shared": r.outcome.shared,
        "friend_request": r.outcome.friend_requested,
        "scenario": None,
    }


def tally(transcript: Any, profile_id: str, scenario: str | ScenarioKind) -> ReactionTally:
    """Count one profile's reactions and comments in a transcript.

    ``transcript`` is a loaded :class:`~feedsim.engine.Transcript`, or any
    iterable of records (dicts or engine interactions).  Records carrying a
    different scenario name are ignored.
    """
    scenario = scenario.value if isinstance(scenario, ScenarioKind) else str(scenario)
    records: Iterable[Any] = transcript
    header = getattr(transcript, "header", None)
    if header is not None:
        known = {a["agent_id"] for a in header.get("agents", ())}
        if profile_id not in known:
            raise UnknownProfile(f"metrics: profile {profile_id!r} not in transcript")
        records = transcript.records
    counts = dict.fromkeys(_FIELD_OF.values(), 0)
    comments = shares = requests = 0
    for raw in records:
        r = _as_record(raw)
        if r["agent_id"] != profile_id:
            continue
        if r.get("scenario") not in (None, scenario):
            continue
        name = _FIELD_OF.get(r["reaction"])
        if name is not None:
            counts[name] += 1
        comments += r["comment"] is not None
        shares += bool(r["shared"])
        requests += bool(r["friend_request"])
    return ReactionTally(profile_id, scenario, comments=comments, shares=shares, friend_requests=requests, **counts)


@dataclass(frozen=True)
class TotalRow:
    total_reactions: int
    total_positive: int
    total_negative: int


def in_total(tallies: Iterable[ReactionTally]) -> TotalRow:
    ts = list(tallies)
    return TotalRow(
        sum(t.total_reactions for t in ts),
        sum(t.total_positive for t in ts),
        sum(t.total_negative for t in ts),
    )


@dataclass(frozen=True)
class Report:
    text: str
    csv: str
    by_scenario: dict[str, list[ReactionTally]]

    def totals(self) -> dict[str, TotalRow]:
        return {s: in_total(ts) for s, ts in self.by_scenario.items()}


def _group(tallies: Iterable[ReactionTally]) -> dict[str, list[ReactionTally]]:
    groups: dict[str, list[ReactionTally]] = {}
    for t in tallies:
        groups.setdefault(t.scenario, []).append(t)
    rank = {k.value: i for i, k in enumerate(ScenarioKind)}
    return {s: groups[s] for s in sorted(groups, key=lambda s: (rank.get(s, len(rank)), s))}


def _aligned(rows: list[list[str]]) -> str:
    widths = [max(len(r[c]) for r in rows) for c in range(len(rows[0]))]
    lines = []
    for r in rows:
        cells = [r[0].ljust(widths[0])] + [cell.rjust(w) for cell, w in zip(r[1:], widths[1:])]
        lines.append("  ".join(cells).rstrip())
    return "\n".join(lines)


def render_report(tallies: Iterable[ReactionTally]) -> Report:
    """One table per scenario: profile rows plus an "In total" row.

    The "In total" row fills only the last three columns. Shares and friend
    requests go in a separate block since they are not part of the totals.
    """
    groups = _group(tallies)
    if not groups:
        raise ValueError("render_report needs at least one tally")
    blocks = []
    buf = io.StringIO()
    out = csv.writer(buf, lineterminator="\n")
    out.writerow(("Scenario", "Profile") + TABLE_COLUMNS + EXTENDED_COLUMNS)
    for scenario, ts in groups.items():
        total = in_total(ts)
        rows = [[""] + list(TABLE_COLUMNS)]
        for t in ts:
            rows.append([t.label] + [str(v) for v in t.row()])
            out.writerow((scenario, t.label) + t.row() + (t.shares, t.friend_requests))
        blank = [""] * len(REACTION_COLUMNS + ("Comments",))
        tail = [str(total.total_reactions), str(total.total_positive), str(total.total_negative)]
        rows.append([TOTAL_LABEL] + blank + tail)
        out.writerow((scenario, TOTAL_LABEL) + tuple(blank) + tuple(tail) + ("", ""))
        extended = [[""] + list(EXTENDED_COLUMNS)] + [[t.label, str(t.shares), str(t.friend_requests)] for t in ts]
        blocks.append(
            f"{scenario} scenario\n\n{_aligned(rows)}\n\n"
            f"Not counted in the totals:\n{_aligned(extended)}\n"
        )
    return Report("\n".join(blocks), buf.getvalue(), groups)


def read_report_csv(text: str) -> tuple[list[ReactionTally], dict[str, TotalRow]]:
    """Inverse of the CSV half of :func:`render_report`."""
    reader = csv.reader(io.StringIO(text))
    head = next(reader)
    if tuple(head) != ("Scenario", "Profile") + TABLE_COLUMNS + EXTENDED_COLUMNS:
        raise ValueError(f"unexpected report header {head}")
    tallies, totals = [], {}
    for row in reader:
        scenario, label = row[0], row[1]
        if label == TOTAL_LABEL:
            totals[scenario] = TotalRow(int(row[10]), int(row[11]), int(row[12]))
            continue
        nums = [int(x) for x in row[2:]]
        t = ReactionTally(label.replace(" ", "_"), scenario, *nums[:8], shares=nums[11], friend_requests=nums[12])
        if t.row() != tuple(nums[:11]):
            raise ValueError(f"row {label} in {scenario}: totals disagree with its counts")
        tallies.append(t)
    return tallies, totals


@dataclass(frozen=True)
class Stats:
    mean: float
    min: float
    max: float


@dataclass(frozen=True)
class ScoreSummary:
    scenario: str
    final_polarization: Stats
    final_engagement: Stats
    daily_mean_polarization: np.ndarray  # index 0 is the initial state
    daily_mean_engagement: np.ndarray
    daily_mean_impact: np.ndarray  # index 0 is day 1; NaN if every agent idled

    def to_csv(self) -> str:
        buf = io.StringIO()
        out = csv.writer(buf, lineterminator="\n")
        out.writerow(("day", "mean_P_s", "mean_E_s", "mean_F"))
        for d in range(len(self.daily_mean_polarization)):
            f = "" if d == 0 or math.isnan(self.daily_mean_impact[d - 1]) else repr(float(self.daily_mean_impact[d - 1]))
            out.writerow((d, repr(float(self.daily_mean_polarization[d])), repr(float(self.daily_mean_engagement[d])), f))
        return buf.getvalue()


def _stats(values: np.ndarray) -> Stats:
    return Stats(float(np.mean(values)), float(np.min(values)), float(np.max(values)))


def score_summary(result) -> ScoreSummary:
    """Final-day statistics and per-day population means of a run."""
    P, E, F = result.polarization, result.engagement, result.impact
    active = ~np.isnan(F)
    counts = active.sum(axis=1)
    sums = np.where(active, F, 0.0).sum(axis=1)
    with np.errstate(invalid="ignore", divide="ignore"):
        mean_f = np.where(counts > 0, sums / np.maximum(counts, 1), np.nan)
    return ScoreSummary(
        scenario=result.config.scenario.value,
        final_polarization=_stats(P[-1]),
        final_engagement=_stats(E[-1]),
        daily_mean_polarization=P.mean(axis=1),
        daily_mean_engagement=E.mean(axis=1),
        daily_mean_impact=mean_f,
    )


def series_csv(result) -> str:
    """Per-agent, per-day scores: ``day, agent_id, P_s, E_s, F`` (F blank on idle days)."""
    buf = io.StringIO()
    out = csv.writer(buf, lineterminator="\n")
    out.writerow(("day", "agent_id", "P_s", "E_s", "F"))
    for j, aid in enumerate(result.agent_ids):
        out.writerow((0, aid, repr(float(result.polarization[0, j])), repr(float(result.engagement[0, j])), ""))
    for d in range(result.days):
        for j, aid in enumerate(result.agent_ids):
            f = result.impact[d, j]
            out.writerow((d + 1, aid, repr(float(result.polarization[d + 1, j])),
                          repr(float(result.engagement[d + 1, j])), "" if math.isnan(f) else repr(float(f))))
    return buf.getvalue()


def write_report_files(report: Report, out_dir: str | Path, name: str) -> list[Path]:
    from .engine.transcript import write_atomic

    out_dir = Path(out_dir)
    paths = [out_dir / f"report_{name}.txt", out_dir / f"report_{name}.csv"]
    write_atomic(paths[0], report.text)
    write_atomic(paths[1], report.csv)
    return paths
