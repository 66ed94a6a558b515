import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from feedsim.config import RunConfig
from feedsim.engine import RunResult, Transcript
from feedsim.errors import UnknownProfile
from feedsim.metrics import (
    TABLE_COLUMNS, TOTAL_LABEL, ReactionTally, in_total, read_report_csv, render_report, score_summary,
    series_csv, tally,
)

from oracles import PUBLISHED_TABLES, PUBLISHED_TOTALS, naive_tally, records_for_row


def test_tally_example():
    records = records_for_row("PROFILE_1", "Plurality", (0, 0, 4, 3, 16, 1, 0, 24))
    t = tally(records, "PROFILE_1", "Plurality")
    assert (t.total_reactions, t.total_positive, t.total_negative) == (48, 23, 1)
    assert t.label == "PROFILE 1"


@pytest.mark.parametrize("scenario", list(PUBLISHED_TABLES))
def test_tables_reproduce_published_rows(scenario):
    tallies = []
    for pid, (row, totals) in PUBLISHED_TABLES[scenario].items():
        t = tally(records_for_row(pid, scenario, row), pid, scenario)
        assert t.row() == row + totals
        tallies.append(t)
    total = in_total(tallies)
    assert (total.total_reactions, total.total_positive, total.total_negative) == PUBLISHED_TOTALS[scenario]


def test_tally_ignores_other_agents_and_scenarios():
    records = records_for_row("A", "Balanced", (1, 1, 0, 0, 0, 0, 1, 2))
    records += records_for_row("B", "Balanced", (5, 0, 0, 0, 0, 0, 0, 0))
    records += records_for_row("A", "Plurality", (0, 0, 0, 0, 0, 3, 0, 0))
    t = tally(records, "A", "Balanced")
    assert t.reactions == (1, 1, 0, 0, 0, 0, 1) and t.comments == 2
    assert tally(records, "Z", "Balanced") == ReactionTally("Z", "Balanced")


def test_skips_count_nowhere():
    rec = records_for_row("A", "Similarity", (1, 0, 0, 0, 0, 0, 0, 0))[0]
    skipped = dict(rec, post_id="P999", reaction="None", read_comments=False, comment=None)
    t = tally([rec, skipped], "A", "Similarity")
    assert t.total_reactions == 1


rows = st.tuples(*[st.integers(0, 9)] * 7).flatmap(
    lambda r: st.tuples(st.just(r), st.integers(0, sum(r))))


@given(rows)
def test_tally_identities(data):
    reactions, comments = data
    records = records_for_row("P", "Balanced", reactions + (comments,))
    t = tally(records, "P", "Balanced")
    assert t.total_reactions == t.total_positive + t.total_negative + t.comments
    assert t.total_positive + t.total_negative == sum(reactions)
    naive = naive_tally(records, "P")
    names = ("Haha", "Like", "Wow", "Care", "Love", "Sad", "Angry")
    assert t.reactions == tuple(naive.get(n, 0) for n in names)
    assert t.comments == naive.get("Comments", 0)


def published_tallies():
    return [
        tally(records_for_row(pid, scenario, row), pid, scenario)
        for scenario, table in PUBLISHED_TABLES.items()
        for pid, (row, _) in table.items()
    ]


def test_report_layout():
    report = render_report(published_tallies())
    assert list(report.by_scenario) == ["Plurality", "Balanced", "Similarity"]
    assert {s: (t.total_reactions, t.total_positive, t.total_negative) for s, t in report.totals().items()} == PUBLISHED_TOTALS
    lines = report.text.splitlines()
    assert lines[0] == "Plurality scenario"
    header = lines[2].split()
    assert header[:8] == list(TABLE_COLUMNS[:8])
    total_line = next(line for line in lines if line.startswith(TOTAL_LABEL))
    assert total_line.split()[2:] == ["118", "40", "19"]
    assert "PROFILE 21" in report.text and "Not counted in the totals" in report.text


def test_report_csv_round_trip():
    tallies = published_tallies()
    back, totals = read_report_csv(render_report(tallies).csv)
    assert back == tallies
    assert {s: (t.total_reactions, t.total_positive, t.total_negative) for s, t in totals.items()} == PUBLISHED_TOTALS


def test_report_csv_rejects_inconsistent_rows():
    csv = render_report(published_tallies()).csv.replace("PROFILE 1,0,0,4,3,16,1,0,24,48", "PROFILE 1,0,0,4,3,16,1,0,24,49")
    with pytest.raises(ValueError, match="PROFILE 1"):
        read_report_csv(csv)
    with pytest.raises(ValueError):
        render_report([])


def test_unknown_profile_and_empty_transcript():
    header = {"agents": [{"agent_id": "A", "T": 0.5, "P_s": 0.0, "E_s": 0.0}]}
    t = Transcript(header, [])
    assert tally(t, "A", "Balanced") == ReactionTally("A", "Balanced")
    with pytest.raises(UnknownProfile):
        tally(t, "B", "Balanced")


def test_negative_counts_rejected():
    with pytest.raises(ValueError):
        ReactionTally("A", "Balanced", like=-1)


def fake_result():
    P = np.array([[0.0, 0.0], [0.1, 0.3], [0.2, 0.2]])
    E = np.array([[0.0, 0.0], [0.05, -0.05], [0.1, 0.0]])
    F = np.array([[0.4, 0.0], [np.nan, np.nan]])
    return RunResult(RunConfig(scenario="Balanced", days=2), ["A", "B"], [], P, E, F, np.zeros((2, 10), int))


def test_score_summary():
    s = score_summary(fake_result())
    assert s.final_polarization.mean == pytest.approx(0.2)
    assert (s.final_polarization.min, s.final_polarization.max) == (0.2, 0.2)
    assert s.final_engagement.mean == pytest.approx(0.05)
    assert s.daily_mean_impact[0] == pytest.approx(0.2)
    assert math.isnan(s.daily_mean_impact[1])
    lines = s.to_csv().splitlines()
    assert lines[0] == "day,mean_P_s,mean_E_s,mean_F"
    assert lines[1].endswith(",") and lines[3].endswith(",")


def test_series_csv():
    lines = series_csv(fake_result()).splitlines()
    assert lines[0] == "day,agent_id,P_s,E_s,F"
    assert len(lines) == 1 + 3 * 2
    assert lines[3] == "1,A,0.1,0.05,0.4"
    assert lines[-1] == "2,B,0.2,0.0,"
