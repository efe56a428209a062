"""
Prioritizing success factors from pairwise judgments
====================================================

Walks one judgment matrix from raw comparisons to a checked priority
vector, then rolls four category vectors up into a global ranking.
"""

from pathlib import Path

import mmk

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"

# a five-item comparison set scored on the 1..9 scale; fractions mean
# "the column item matters more"
matrix = mmk.parse_matrix_document((FIXTURES / "matrices/sf_coordination.json").read_text())

weights = mmk.priority_weights(matrix)
ranks = mmk.rank_weights(weights)
print("local priorities")
for item, weight, rank in zip(weights.items, weights.weights, ranks):
    print(f"  {item:<4} {weight:.3f}  (rank {rank})")

# the verdict only counts if the judgments hang together; CR < 0.1 passes
report = mmk.consistency_report(matrix)
print(f"\nlambda_max {report.lambda_max:.2f}  CI {report.ci:.2f}  CR {report.cr:.2f}")
print("verdict:", "consistent" if report.consistent else "inconsistent")

# when a matrix fails the check, the hint names the judgment to revisit
hint = mmk.inconsistency_hint(matrix, weights)
print(f"weakest judgment: ({hint.row_item}, {hint.col_item})", end=" ")
print(f"currently {mmk.format_judgment(hint.current)}, ratio of weights suggests {hint.suggested:.2f}")

# global priorities = category weight x local weight, ranked across all items
hierarchy = mmk.parse_hierarchy_document((FIXTURES / "hierarchies/sf_hierarchy.json").read_text())
ranking = mmk.aggregate_global(hierarchy)
print("\ntop five global priorities")
for entry in sorted(ranking.entries, key=lambda e: e.global_rank)[:5]:
    print(f"  {entry.item:<5} {entry.global_weight:.3f}  via {entry.category}")
