"""
From survey tallies to a defensible shortlist
=============================================

Turns raw Likert counts into percentages, filters factors that clear the
frequency bar in both evidence sources, and sanity-checks how the two
sources relate.
"""

from pathlib import Path

import mmk

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"

# integer percentages, half rounded up, straight from the counts
rows = mmk.parse_likert_document((FIXTURES / "likert/sf_survey_tally.json").read_text())
print("strongest survey support")
scored = [(label, mmk.tally_percentages(t)) for label, t in rows]
for label, pct in sorted(scored, key=lambda r: -r[1].positive_pct)[:5]:
    print(f"  {label:<5} +{pct.positive_pct}%  -{pct.negative_pct}%  neutral {pct.neutral_pct}%")

# a factor is critical when it clears 50% in the literature AND the survey
records, notes = mmk.parse_frequency_records((FIXTURES / "frequencies/success_factors.json").read_text())
critical = mmk.criticality_filter(records)
print("\ncritical factors:", ", ".join(r.factor_id for r in records if r.factor_id in critical))
for note in notes:
    print("note:", note)

# do the two evidence sources even agree? compare their rank lists
labels, slr_ranks, survey_ranks = mmk.parse_rank_series(
    (FIXTURES / "ranks/sf_ranks.json").read_text()
)
corr = mmk.pearson_r(list(zip(slr_ranks, survey_ranks)))
print(f"\nrank agreement: r = {corr.r:.3f}  p = {corr.p_two_tailed:.4f}  (n = {corr.n})")

# and are success-factor opinions more spread out than barrier opinions?
a = mmk.SummaryStats(4.4444, 3.48479, 18)
b = mmk.SummaryStats(5.3889, 1.88302, 18)
t = mmk.t_test_from_summary(a, b, mmk.TTestVariant.WELCH)
print(f"group means differ? t = {t.t:.3f}  df = {t.df:.2f}  p = {t.p_two_tailed:.3f}")
