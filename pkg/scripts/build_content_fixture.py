"""Regenerate src/feedsim/fixtures/content_150.json from the hand-written banks below.

Usage:
    python scripts/build_content_fixture.py
"""

import json
from pathlib import Path

OUT = Path(__file__).resolve().parents[1] / "src" / "feedsim" / "fixtures" / "content_150.json"

ISSUES = [
    ("IMM", "Immigration Policies and Border Control", "immigration"),
    ("CLI", "Climate Change and Environmental Regulations", "climate"),
    ("HEA", "Healthcare System Reform", "healthcare"),
]

NEWS = {
    "IMM": [
        ("Senate advances bill to expand work visas for farm labor",
         "A bipartisan bill would add 60,000 seasonal visas and tie them to wage floors set by the labor department."),
        ("Border crossings fall for third straight month",
         "Officials credit new processing centers and stricter asylum screening; advocates warn of longer detention times."),
        ("City council votes to fund legal aid for asylum seekers",
         "The measure sets aside two million dollars for court representation of families awaiting hearings."),
        ("Report: immigrants founded a quarter of new small businesses last year",
         "A chamber of commerce study counts restaurants, construction firms and tech startups across twelve states."),
        ("Governor deploys National Guard to southern border",
         "The deployment will last ninety days; critics call it political theater while supporters cite smuggling arrests."),
    ],
    "CLI": [
        ("New rule would cut power plant emissions by 40 percent",
         "The environmental agency proposal gives utilities until 2035 to install capture systems or switch fuels."),
        ("Record heat wave strains regional power grid",
         "Rolling blackouts hit three counties as temperatures passed 45 degrees for a fifth consecutive day."),
        ("Carbon tax proposal returns dividends to households",
         "Economists say most lower-income families would come out ahead; industry groups warn of higher fuel prices."),
        ("Offshore wind project approved after five-year review",
         "The 800-megawatt farm will power 300,000 homes; fishing associations have filed an appeal."),
        ("State rolls back vehicle emission standards",
         "Lawmakers say the old standards raised car prices; environmental groups plan to sue."),
    ],
    "HEA": [
        ("Public option clears key committee vote",
         "The plan would let anyone buy into a government-run insurance plan priced below private premiums."),
        ("Hospital price transparency rule takes effect",
         "Hospitals must now publish negotiated rates for 300 common procedures or face daily fines."),
        ("Drug price caps extended to twenty more medicines",
         "Insulin-style caps will cover inhalers and blood thinners; manufacturers say research budgets will shrink."),
        ("Rural clinics close as reimbursement rates stall",
         "Eleven clinics shut their doors this year, leaving some patients two hours from the nearest emergency room."),
        ("Proposal would expand health savings accounts",
         "Families could deposit up to 15,000 dollars tax-free and use the funds for premiums and direct primary care."),
    ],
}

# Opinion phrases by stance (1 = most liberal, 7 = most conservative).
VOICES = {
    "IMM": {
        1: ["Nobody is illegal. Open the doors and treat people with dignity.",
            "Detention of families is a moral stain. Abolish it now.",
            "Every person fleeing danger deserves a safe welcome, full stop."],
        2: ["Immigrants make this country stronger. We need more legal pathways, not walls.",
            "Asylum is a human right and the backlog is a choice we keep making."],
        3: ["Reform should be humane and practical: faster hearings, fair wages, clear rules.",
            "Keeping families together should come first in any deal.",
            "Fix the courts, protect kids, and give long-time residents a path."],
        4: ["Both sides have a point here. Enforce the law but fix the broken system.",
            "Show me the numbers on costs and benefits before picking a side.",
            "The system is broken for everyone. Start with what both parties agree on."],
        5: ["Legal immigration is fine, but the rules have to mean something.",
            "We cannot reward people who skipped the line."],
        6: ["Secure the border first, talk about everything else later.",
            "Our communities are paying for a border that is wide open."],
        7: ["Stop the invasion. Build the wall and deport every illegal.",
            "The elites want cheap labor and we pay the price. Close it down."],
    },
    "CLI": {
        1: ["This is a climate emergency. Ban new fossil fuel projects today.",
            "Every delay is a death sentence for the next generation. Act now.",
            "Our planet is burning while leaders argue. Strike for climate justice."],
        2: ["Clean energy is the future and the science has been clear for decades.",
            "Polluters should pay for the damage they cause."],
        3: ["We need smart regulation that cuts emissions without leaving workers behind.",
            "Good step forward. Protecting nature is worth a small cost.",
            "Cleaner air and healthy rivers are worth paying a bit more for."],
        4: ["Climate matters, but so do electricity bills. Where is the balance?",
            "Interesting proposal. I want to see the cost estimates first.",
            "Good goals, but the transition has to keep the lights on and bills sane."],
        5: ["Innovation will solve this faster than new regulations will.",
            "Rules like this hit small businesses hardest."],
        6: ["Another job-killing mandate from bureaucrats who never ran a business.",
            "Cheap reliable energy keeps this country running. Stop the war on it."],
        7: ["Climate alarmism is a scam to control how we live.",
            "They want to take your car and your stove. Wake up."],
    },
    "HEA": {
        1: ["Healthcare is a human right. Single payer now, no excuses.",
            "Profit has no place in medicine. Nationalize the insurers.",
            "Medicine for people, not profit. Guarantee care for everyone."],
        2: ["A public option is the least we should do for working families.",
            "Nobody should go bankrupt because they got sick."],
        3: ["Lower drug prices and protect coverage for pre-existing conditions.",
            "This helps families. Not perfect, but a real improvement.",
            "Capping what families pay for medicine is a sensible fix."],
        4: ["Costs are out of control. Show me a plan that actually pays for itself.",
            "There are good ideas on both sides of this debate.",
            "Every plan has trade-offs. Give me the numbers on waiting times and cost."],
        5: ["Competition lowers prices better than government mandates.",
            "Let families keep their own money and choose their own care."],
        6: ["Government-run healthcare means longer lines and worse care.",
            "Stop growing the bureaucracy and get out of the doctor's office."],
        7: ["Socialized medicine is the road to tyranny. Repeal it all.",
            "They want total control over your body and your wallet."],
    },
}

# Topic tag next to the issue tag, by stance band.
STANCE_TAGS = {
    "IMM": {1: "human-rights", 2: "human-rights", 3: "family", 4: "law", 5: "law", 6: "border-security", 7: "nationalism"},
    "CLI": {1: "activism", 2: "environment", 3: "nature", 4: "economy", 5: "business", 6: "energy", 7: "conspiracy"},
    "HEA": {1: "social-justice", 2: "social-justice", 3: "family", 4: "economy", 5: "business", 6: "freedom", 7: "conspiracy"},
}

# Stances of the ten posts under each article; conservative voices are the minority.
STANCE_PATTERNS = [
    [1, 1, 1, 2, 3, 3, 3, 4, 4, 6],
    [1, 1, 2, 3, 3, 4, 4, 4, 6, 7],
    [1, 1, 1, 2, 2, 3, 3, 4, 4, 5],
    [1, 1, 2, 3, 3, 3, 4, 4, 4, 6],
    [1, 1, 3, 3, 4, 4, 4, 5, 6, 7],
]


def build():
    issues, news, posts = [], [], []
    for issue_id, name, issue_tag in ISSUES:
        issues.append({"id": issue_id, "name": name})
        for n, (headline, body) in enumerate(NEWS[issue_id], start=1):
            news_id = f"{issue_id}-N{n}"
            news.append({"id": news_id, "issue_id": issue_id, "headline": headline, "body": body})
            seen = {}
            for p, stance in enumerate(STANCE_PATTERNS[n - 1], start=1):
                voice = VOICES[issue_id][stance]
                variant = seen.get(stance, (n + p) % len(voice))
                seen[stance] = (variant + 1) % len(voice)
                posts.append({
                    "id": f"{issue_id}-N{n}-P{p:02d}",
                    "news_id": news_id,
                    "issue_id": issue_id,
                    "stance": stance,
                    "tags": [issue_tag, STANCE_TAGS[issue_id][stance]],
                    "text": f"{voice[variant]} Re: {headline}.",
                })
    return {"issues": issues, "news": news, "posts": posts}


if __name__ == "__main__":
    OUT.write_text(json.dumps(build(), indent=1, ensure_ascii=False) + "\n", encoding="utf-8")
    print(f"wrote {OUT}")
