"""Practice scoring and maturity gating.

Scores each practice on three dimensions (approach, deployment, results),
averages practices into factor scores, and gates maturity levels on the
"every factor of every level up to L is strong" rule.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Mapping, Sequence

from .errors import DomainError, SchemaError
from .model import MaturityModel

DIMENSION_VALUES = (0, 2, 4, 6, 8, 10)
STRONG_THRESHOLD = 7.0


class Status(str, Enum):
    STRONG = "Strong"
    WEAK = "Weak"


def _check_dimension(name: str, value: object) -> int:
    if not isinstance(value, int) or isinstance(value, bool) or value not in DIMENSION_VALUES:
        raise DomainError(
            f"{name} must be one of {DIMENSION_VALUES}, got {value!r}",
            code="dimension_out_of_range",
        )
    return value


@dataclass(frozen=True)
class DimensionScores:
    approach: int
    deployment: int
    results: int

    def __post_init__(self) -> None:
        for name in ("approach", "deployment", "results"):
            _check_dimension(name, getattr(self, name))

    @property
    def total(self) -> int:
        return self.approach + self.deployment + self.results


def practice_score(d: DimensionScores) -> int:
    """Mean of the three dimensions, rounded half away from zero.

    Integer arithmetic: (2·total + 3) // 6 rounds total/3 half-up, and with
    even-integer dimensions an exact half never occurs.
    """
    return (2 * d.total + 3) // 6


def factor_score(scores: Sequence[int]) -> tuple[float, Status]:
    """Unrounded mean of practice scores; strong at 7.0 or above."""
    if not scores:
        raise DomainError("a factor needs at least one practice score", code="empty_factor")
    for s in scores:
        if not isinstance(s, int) or isinstance(s, bool) or not 0 <= s <= 10:
            raise DomainError(f"practice scores must be integers 0..10, got {s!r}", code="score_out_of_range")
    final = sum(scores) / len(scores)
    return final, (Status.STRONG if final >= STRONG_THRESHOLD else Status.WEAK)


@dataclass(frozen=True)
class PracticeAssessment:
    practice_id: str
    dims: DimensionScores | None  # None = not yet scored
    score: int

    @property
    def scored(self) -> bool:
        return self.dims is not None


@dataclass(frozen=True)
class FactorAssessment:
    factor_id: str
    name: str
    kind: str
    practices: tuple[PracticeAssessment, ...]
    final_score: float
    status: Status
    complete: bool

    @property
    def practice_scores(self) -> tuple[int, ...]:
        return tuple(p.score for p in self.practices)


@dataclass(frozen=True)
class LevelAssessment:
    number: int
    name: str
    factors: tuple[FactorAssessment, ...]


@dataclass(frozen=True)
class WeakFactor:
    level: int
    factor_id: str
    final_score: float


@dataclass(frozen=True)
class MaturityReport:
    model_ref: str
    levels: tuple[LevelAssessment, ...]
    achieved_level: int
    weak_factors: tuple[WeakFactor, ...]

    @property
    def max_level(self) -> int:
        return self.levels[-1].number if self.levels else 1

    def factor(self, factor_id: str) -> FactorAssessment:
        for level in self.levels:
            for f in level.factors:
                if f.factor_id == factor_id:
                    return f
        raise KeyError(factor_id)


def gate_levels(
    model: MaturityModel, finals: Mapping[str, float]
) -> tuple[int, list[tuple[int, str, float]]]:
    """Gating over factor final scores alone.

    Returns the highest contiguously-strong level and every weak factor as
    (level, factor_id, final_score), sorted by level then score ascending.
    A factor missing from ``finals`` counts as weak.
    """
    achieved = 1
    gate_open = True
    weak: list[tuple[int, str, float]] = []
    for level in model.levels[1:]:
        level_strong = True
        for factor in level.factors:
            final = finals.get(factor.id)
            if final is None or final < STRONG_THRESHOLD:
                level_strong = False
                weak.append((level.number, factor.id, 0.0 if final is None else final))
        if gate_open and level_strong:
            achieved = level.number
        else:
            gate_open = False
    weak.sort(key=lambda w: (w[0], w[2]))
    return achieved, weak


def assess_maturity(
    model: MaturityModel,
    scores: Mapping[str, DimensionScores],
    partial: bool = False,
) -> MaturityReport:
    """Full assessment: practice scores, factor scores, gating, weak list.

    Every practice must be scored unless ``partial`` is set; then missing
    practices count 0 and their factor is reported incomplete and weak.
    """
    known = set(model.practice_ids())
    unknown = sorted(set(scores) - known)
    if unknown:
        raise DomainError(
            f"score(s) reference unknown practice id(s): {', '.join(unknown)}",
            code="unknown_practice",
        )
    missing = [pid for pid in model.practice_ids() if pid not in scores]
    if missing and not partial:
        raise DomainError(
            f"{len(missing)} practice(s) unscored, first {missing[0]!r}; "
            "pass partial=True for an exploratory assessment",
            code="scores_incomplete",
            detail={"missing": len(missing)},
        )

    levels = []
    finals: dict[str, float] = {}
    incomplete: set[str] = set()
    for level in model.levels:
        factors = []
        for factor in level.factors:
            practices = tuple(
                PracticeAssessment(
                    p.id,
                    scores.get(p.id),
                    practice_score(scores[p.id]) if p.id in scores else 0,
                )
                for p in factor.practices
            )
            final, status = factor_score([p.score for p in practices])
            complete = all(p.scored for p in practices)
            if not complete:
                status = Status.WEAK  # an unfinished factor never gates a level open
                incomplete.add(factor.id)
            factors.append(
                FactorAssessment(factor.id, factor.name, factor.kind.value, practices, final, status, complete)
            )
            finals[factor.id] = final
        levels.append(LevelAssessment(level.number, level.name, tuple(factors)))

    gate_finals = {fid: final for fid, final in finals.items() if fid not in incomplete}
    achieved, weak = gate_levels(model, gate_finals)
    weak_factors = tuple(
        WeakFactor(lvl, fid, finals[fid]) for lvl, fid, _ in weak
    )
    weak_factors = tuple(sorted(weak_factors, key=lambda w: (w.level, w.final_score)))
    return MaturityReport(model.ref, tuple(levels), achieved, weak_factors)


# --- what-if planning ---------------------------------------------------------


@dataclass(frozen=True)
class PracticeRaise:
    practice_id: str
    from_score: int
    to_score: int
    from_dims: DimensionScores
    to_dims: DimensionScores


@dataclass(frozen=True)
class FactorPlan:
    factor_id: str
    level: int
    final_score: float
    deficit: int
    raises: tuple[PracticeRaise, ...]


@dataclass(frozen=True)
class WhatIfPlan:
    target_level: int
    factors: tuple[FactorPlan, ...]


def _deficit(final: float, count: int) -> int:
    # pre-round kills float residue so e.g. (7 - 20/3) * 3 lands on 1, not 2
    return max(0, math.ceil(round((STRONG_THRESHOLD - final) * count, 9)))


def _dims_for_score(current: DimensionScores, target: int) -> DimensionScores:
    """Smallest even-step raises of ``current`` that reach practice score ``target``."""
    best: tuple[int, tuple[int, int, int]] | None = None
    for a in DIMENSION_VALUES:
        if a < current.approach:
            continue
        for d in DIMENSION_VALUES:
            if d < current.deployment:
                continue
            for r in DIMENSION_VALUES:
                if r < current.results:
                    continue
                if (2 * (a + d + r) + 3) // 6 != target:
                    continue
                cost = (a + d + r) - current.total
                key = (cost, (a, d, r))
                if best is None or key < best:
                    best = key
                    break  # larger r only costs more for this (a, d)
    if best is None:
        raise DomainError(
            f"no dimension raise reaches practice score {target}", code="deficit_unsatisfiable"
        )
    return DimensionScores(*best[1])


def whatif_plan(report: MaturityReport, target_level: int) -> WhatIfPlan:
    """Cheapest practice raises that make every factor up to ``target_level`` strong.

    Each weak factor's point deficit is spread greedily over its lowest-scored
    practices, then each raised practice gets the minimal even dimension bumps
    that realize its new score.
    """
    if not isinstance(target_level, int) or isinstance(target_level, bool):
        raise DomainError(f"target level must be an integer, got {target_level!r}", code="bad_target")
    if not 2 <= target_level <= report.max_level:
        raise DomainError(
            f"target level must be in 2..{report.max_level}, got {target_level}",
            code="target_out_of_range",
        )
    if target_level <= report.achieved_level:
        raise DomainError(
            f"level {target_level} is already achieved (current level {report.achieved_level})",
            code="target_already_achieved",
        )

    plans = []
    for level in report.levels:
        if not 2 <= level.number <= target_level:
            continue
        for f in level.factors:
            if f.status is Status.STRONG:
                continue
            deficit = _deficit(f.final_score, len(f.practices))
            remaining = deficit
            raises = []
            order = sorted(range(len(f.practices)), key=lambda k: (f.practices[k].score, k))
            for k in order:
                p = f.practices[k]
                take = max(0, min(10 - p.score, remaining))
                if take == 0 and p.scored:
                    if remaining <= 0:
                        break
                    continue
                # unscored practices always get an entry, else the factor
                # would stay incomplete (and weak) after the plan is applied
                current = p.dims or DimensionScores(0, 0, 0)
                new_dims = _dims_for_score(current, p.score + take)
                raises.append(PracticeRaise(p.practice_id, p.score, p.score + take, current, new_dims))
                remaining -= take
            if remaining > 0:
                raise DomainError(
                    f"factor {f.factor_id} cannot gain {deficit} point(s); practices are capped at 10",
                    code="deficit_unsatisfiable",
                )
            plans.append(FactorPlan(f.factor_id, level.number, f.final_score, deficit, tuple(raises)))
    return WhatIfPlan(target_level, tuple(plans))


def apply_plan(
    scores: Mapping[str, DimensionScores], plan: WhatIfPlan
) -> dict[str, DimensionScores]:
    """Returns a copy of ``scores`` with the plan's dimension raises applied."""
    out = dict(scores)
    for fp in plan.factors:
        for pr in fp.raises:
            out[pr.practice_id] = pr.to_dims
    return out


# --- wire formats -------------------------------------------------------------


def parse_scores_document(document: str | bytes | Mapping) -> tuple[str, bool, dict[str, DimensionScores]]:
    """Reads {"model": ref, "partial": bool, "scores": [{practice_id, approach, deployment, results}]}."""
    if isinstance(document, (str, bytes)):
        try:
            document = json.loads(document)
        except json.JSONDecodeError as exc:
            raise SchemaError(f"not valid JSON: {exc}", "") from exc
    if not isinstance(document, dict):
        raise SchemaError("scores document must be an object", "$")
    unknown = set(document) - {"model", "partial", "scores"}
    if unknown:
        raise SchemaError(f"unknown field {sorted(unknown)[0]!r}", "$")
    model_ref = document.get("model")
    if not isinstance(model_ref, str) or not model_ref:
        raise SchemaError("'model' must be a non-empty string", "model")
    partial = document.get("partial", False)
    if not isinstance(partial, bool):
        raise SchemaError("'partial' must be a boolean", "partial")
    raw = document.get("scores")
    if not isinstance(raw, list):
        raise SchemaError("'scores' must be a list", "scores")
    scores: dict[str, DimensionScores] = {}
    for si, entry in enumerate(raw):
        path = f"scores[{si}]"
        if not isinstance(entry, dict) or set(entry) != {"practice_id", "approach", "deployment", "results"}:
            raise SchemaError("each entry needs exactly practice_id, approach, deployment, results", path)
        pid = entry["practice_id"]
        if not isinstance(pid, str) or not pid:
            raise SchemaError("'practice_id' must be a non-empty string", path)
        if pid in scores:
            raise SchemaError(f"duplicate scores for practice {pid!r}", path)
        scores[pid] = DimensionScores(entry["approach"], entry["deployment"], entry["results"])
    return model_ref, partial, scores


def serialize_scores(scores: Mapping[str, DimensionScores], model_ref: str, partial: bool = False) -> dict:
    return {
        "model": model_ref,
        "partial": partial,
        "scores": [
            {"practice_id": pid, "approach": d.approach, "deployment": d.deployment, "results": d.results}
            for pid, d in sorted(scores.items())
        ],
    }


def report_to_dict(report: MaturityReport) -> dict:
    return {
        "model": report.model_ref,
        "achieved_level": report.achieved_level,
        "levels": [
            {
                "number": level.number,
                "name": level.name,
                "factors": [
                    {
                        "factor_id": f.factor_id,
                        "name": f.name,
                        "kind": f.kind,
                        "final_score": f.final_score,
                        "status": f.status.value,
                        "complete": f.complete,
                        "practices": [
                            {
                                "practice_id": p.practice_id,
                                "score": p.score,
                                "scored": p.scored,
                                "dims": None
                                if p.dims is None
                                else {
                                    "approach": p.dims.approach,
                                    "deployment": p.dims.deployment,
                                    "results": p.dims.results,
                                },
                            }
                            for p in f.practices
                        ],
                    }
                    for f in level.factors
                ],
            }
            for level in report.levels
        ],
        "weak_factors": [
            {"level": w.level, "factor_id": w.factor_id, "final_score": w.final_score}
            for w in report.weak_factors
        ],
    }


def plan_to_dict(plan: WhatIfPlan) -> dict:
    return {
        "target_level": plan.target_level,
        "factors": [
            {
                "factor_id": fp.factor_id,
                "level": fp.level,
                "final_score": fp.final_score,
                "deficit": fp.deficit,
                "raises": [
                    {
                        "practice_id": pr.practice_id,
                        "from_score": pr.from_score,
                        "to_score": pr.to_score,
                        "from": {
                            "approach": pr.from_dims.approach,
                            "deployment": pr.from_dims.deployment,
                            "results": pr.from_dims.results,
                        },
                        "to": {
                            "approach": pr.to_dims.approach,
                            "deployment": pr.to_dims.deployment,
                            "results": pr.to_dims.results,
                        },
                    }
                    for pr in fp.raises
                ],
            }
            for fp in plan.factors
        ],
    }
