"""
Scoring an assessment and planning the next level
=================================================

Loads a complete set of practice scores, gates the maturity ladder, and
asks the planner what it would take to reach the next level.
"""

from pathlib import Path

import mmk

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"

model = mmk.bundled_sre_himm()
_, _, scores = mmk.parse_scores_document((FIXTURES / "scores/company_a.json").read_text())

report = mmk.assess_maturity(model, scores)
print(f"model {report.model_ref}: achieved level {report.achieved_level}\n")

# every factor's final score is the plain mean of its practice scores;
# 7.0 or better counts as Strong
for level in report.levels[1:]:
    print(f"level {level.number}: {level.name}")
    for factor in level.factors:
        print(f"  {factor.factor_id:<5} {factor.final_score:5.2f}  {factor.status.value}")

# weak factors are what stands between the company and the next rung
print("\nweak factors:", ", ".join(w.factor_id for w in report.weak_factors) or "none")

# the planner raises the lowest-scoring practices first and reports the
# cheapest dimension edits that get each weak factor over the bar
plan = mmk.whatif_plan(report, report.achieved_level + 1)
print(f"\nto reach level {plan.target_level}:")
for factor_plan in plan.factors:
    print(f"  {factor_plan.factor_id} needs {factor_plan.deficit} practice point(s)")
    for pr in factor_plan.raises:
        print(
            f"    {pr.practice_id}: {pr.from_score} -> {pr.to_score}  "
            f"(A{pr.from_dims.approach}->{pr.to_dims.approach}"
            f" D{pr.from_dims.deployment}->{pr.to_dims.deployment}"
            f" R{pr.from_dims.results}->{pr.to_dims.results})"
        )

# replaying the plan against the original scores proves it is sufficient
after = mmk.assess_maturity(model, mmk.apply_plan(scores, plan))
print(f"\nreplayed plan gives level {after.achieved_level}")
