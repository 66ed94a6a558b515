"""Independent reference computations used by the tests.

Nothing here calls into the code under test except for plain data access.
"""

from fractions import Fraction
from itertools import combinations


def affinity_exact(pa, stance, tags, interests, w_s=Fraction(3, 5)):
    """The affinity formula in exact rational arithmetic."""
    pa, stance = Fraction(pa), Fraction(stance)
    overlap = Fraction(len(set(tags) & set(interests)), len(tags))
    value = w_s * (1 - 2 * abs(pa - stance) / 6) + (1 - w_s) * (2 * overlap - 1)
    return max(Fraction(-1), min(Fraction(1), value))


def brute_force_select(scored, k, maximize):
    """Best k-subset by mean score over all subsets; ties go to the lexicographically smallest id list.

    ``scored`` maps post id to an exact score.  Returns ids ordered by
    descending score, then id.
    """
    best, best_key = None, None
    for subset in combinations(sorted(scored), k):
        mean = sum((scored[p] for p in subset), Fraction(0)) / k
        key = (-mean if maximize else mean, list(subset))
        if best_key is None or key < best_key:
            best, best_key = subset, key
    return sorted(best, key=lambda p: (-scored[p], p))


def naive_tally(records, profile_id):
    counts = {}
    for r in records:
        if r["agent_id"] != profile_id:
            continue
        if r["reaction"] != "None":
            counts[r["reaction"]] = counts.get(r["reaction"], 0) + 1
        if r["comment"] is not None:
            counts["Comments"] = counts.get("Comments", 0) + 1
    return counts


def closed_form_score(p0, alpha, f, t):
    """Constant-F fixed point: F + alpha**t * (P0 - F)."""
    return f + alpha ** t * (p0 - f)


def records_for_row(profile_id, scenario, row):
    """Hand-built transcript records realising one table row (reaction counts + comments)."""
    names = ("Haha", "Like", "Wow", "Care", "Love", "Sad", "Angry")
    reactions = [n for n, c in zip(names, row[:7]) for _ in range(c)]
    comments = row[7]
    if comments > len(reactions):
        raise ValueError("more comments than reactions is not representable")
    records = []
    for i, reaction in enumerate(reactions):
        records.append({
            "day": 0, "scenario": scenario, "agent_id": profile_id, "post_id": f"P{i:03d}",
            "source": "Imposed", "reaction": reaction, "read_comments": i < comments,
            "comment": f"c{i}" if i < comments else None, "shared": False, "friend_request": False,
            "F": 0.0, "P_s": 0.0, "E_s": 0.0,
        })
    return records


# Rows of the three published tables: Haha Like Wow Care Love Sad Angry Comments | Total Pos Neg
PUBLISHED_TABLES = {
    "Plurality": {
        "PROFILE_1": ((0, 0, 4, 3, 16, 1, 0, 24), (48, 23, 1)),
        "PROFILE_21": ((0, 4, 0, 0, 0, 0, 4, 8), (16, 4, 4)),
        "PROFILE_22": ((0, 0, 1, 8, 4, 0, 14, 27), (54, 13, 14)),
    },
    "Balanced": {
        "PROFILE_1": ((0, 0, 2, 3, 15, 1, 0, 21), (42, 20, 1)),
        "PROFILE_21": ((0, 4, 0, 0, 8, 0, 5, 17), (34, 12, 5)),
        "PROFILE_22": ((0, 0, 1, 7, 18, 0, 3, 28), (57, 26, 3)),
    },
    "Similarity": {
        "PROFILE_1": ((0, 0, 0, 3, 22, 0, 0, 25), (50, 25, 0)),
        "PROFILE_21": ((0, 2, 0, 0, 8, 0, 5, 15), (30, 10, 5)),
        "PROFILE_22": ((0, 0, 3, 6, 20, 0, 1, 29), (59, 29, 1)),
    },
}
PUBLISHED_TOTALS = {"Plurality": (118, 40, 19), "Balanced": (133, 58, 9), "Similarity": (139, 64, 6)}
