"""Pairwise-comparison engine: matrix construction, priority weights,
consistency checking, local and global rankings, and repair hints."""

from __future__ import annotations

import json
import math
import warnings
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import ConvergenceError, DomainError, SchemaError

SCALE_MIN = 1.0 / 9.0
SCALE_MAX = 9.0

# Expected consistency index of random reciprocal matrices, by order.
RANDOM_INDEX = {
    1: 0.0, 2: 0.0, 3: 0.58, 4: 0.90, 5: 1.12,
    6: 1.24, 7: 1.32, 8: 1.41, 9: 1.45, 10: 1.49,
}
MAX_ORDER = max(RANDOM_INDEX)

CR_THRESHOLD = 0.1

# whole intensities 1..9 plus their reciprocals
_DISCRETE_SCALE = sorted({float(k) for k in range(1, 10)} | {1.0 / k for k in range(2, 10)})

_EIGEN_TOL = 1e-12
_EIGEN_CAP = 10_000


class ScaleWarning(UserWarning):
    """A judgment is legal but not one of the discrete intensity values."""


class WeightMethod(str, Enum):
    COLUMN_NORM = "column_norm"
    EIGENVECTOR = "eigenvector"


def parse_judgment_value(value: object) -> float:
    """Accepts 2, 0.25, or "1/3" and returns the judgment as a float."""
    if isinstance(value, bool):
        raise SchemaError("judgment value must be a number or fraction string")
    if isinstance(value, (int, float)):
        return float(value)
    if isinstance(value, Fraction):
        return float(value)
    if isinstance(value, str):
        try:
            return float(Fraction(value.strip()))
        except (ValueError, ZeroDivisionError) as exc:
            raise SchemaError(f"cannot parse judgment value {value!r}") from exc
    raise SchemaError(f"judgment value must be a number or fraction string, got {type(value).__name__}")


def format_judgment(value: float) -> str:
    """Compact display form: whole numbers as "k", reciprocals as "1/k"."""
    if value >= 1 and abs(value - round(value)) < 1e-9:
        return str(int(round(value)))
    inverse = 1.0 / value
    if abs(inverse - round(inverse)) < 1e-9:
        return f"1/{int(round(inverse))}"
    return f"{value:.4g}"


@dataclass(frozen=True)
class PairwiseMatrix:
    """Reciprocal comparison matrix stored as its upper triangle.

    The diagonal is fixed at 1 and the lower triangle is derived as 1/a_ij,
    so reciprocity holds by construction. Use :func:`build_matrix` to get
    validation; the constructor trusts its arguments.
    """

    items: tuple[str, ...]
    judgments: Mapping[tuple[int, int], float]

    @property
    def n(self) -> int:
        return len(self.items)

    def value(self, row: int, col: int) -> float:
        if row == col:
            return 1.0
        if row < col:
            return self.judgments[(row, col)]
        return 1.0 / self.judgments[(col, row)]

    def to_array(self) -> np.ndarray:
        a = np.ones((self.n, self.n))
        for (i, j), v in self.judgments.items():
            a[i, j] = v
            a[j, i] = 1.0 / v
        return a

    def pairs(self) -> Iterable[tuple[int, int]]:
        n = self.n
        return ((i, j) for i in range(n) for j in range(i + 1, n))


def _resolve_pair(key: object, index: Mapping[str, int], n: int) -> tuple[int, int]:
    if not isinstance(key, tuple) or len(key) != 2:
        raise SchemaError(f"judgment key must be a (row, col) pair, got {key!r}")
    row, col = key
    if isinstance(row, str) and isinstance(col, str):
        try:
            row, col = index[row], index[col]
        except KeyError as exc:
            raise SchemaError(f"judgment references unknown item {exc.args[0]!r}") from exc
    if not isinstance(row, int) or not isinstance(col, int):
        raise SchemaError(f"judgment key must pair two labels or two indices, got {key!r}")
    if not (0 <= row < n and 0 <= col < n):
        raise SchemaError(f"judgment index ({row}, {col}) out of range for {n} items")
    if row == col:
        raise SchemaError(f"diagonal judgment ({row}, {col}) is fixed at 1 and cannot be set")
    if row > col:
        raise SchemaError(
            f"judgment ({row}, {col}) addresses the lower triangle; "
            "enter the upper-triangle pair instead (reciprocals are derived)"
        )
    return row, col


def check_judgment_range(value: float) -> float:
    if not math.isfinite(value) or value <= 0:
        raise DomainError(f"judgment must be positive, got {value}", code="judgment_out_of_range")
    if value < SCALE_MIN - 1e-12 or value > SCALE_MAX + 1e-12:
        raise DomainError(
            f"judgment {value} outside the 1/9..9 intensity scale",
            code="judgment_out_of_range",
        )
    if not any(abs(value - s) <= 1e-9 for s in _DISCRETE_SCALE):
        warnings.warn(
            f"judgment {value} is not a whole intensity 1..9 or a reciprocal; accepted as-is",
            ScaleWarning,
            stacklevel=3,
        )
    return value


def build_matrix(items: Sequence[str], judgments: Mapping) -> PairwiseMatrix:
    """Validates items and upper-triangle judgments and builds the matrix.

    Keys may be (row_index, col_index) or (row_label, col_label); values may be
    numbers, Fractions, or "p/q" strings. Every pair above the diagonal must be
    present exactly once.
    """
    items = tuple(items)
    if len(items) < 2:
        raise SchemaError(f"a comparison matrix needs at least 2 items, got {len(items)}")
    index: dict[str, int] = {}
    for pos, label in enumerate(items):
        if not isinstance(label, str) or not label:
            raise SchemaError(f"item labels must be non-empty strings, got {label!r}")
        if label in index:
            raise SchemaError(f"duplicate item label {label!r}")
        index[label] = pos

    resolved: dict[tuple[int, int], float] = {}
    for key, raw in judgments.items():
        pair = _resolve_pair(key, index, len(items))
        if pair in resolved:
            raise SchemaError(f"duplicate judgment for ({items[pair[0]]}, {items[pair[1]]})")
        resolved[pair] = check_judgment_range(parse_judgment_value(raw))

    missing = [(i, j) for i in range(len(items)) for j in range(i + 1, len(items)) if (i, j) not in resolved]
    if missing:
        i, j = missing[0]
        raise DomainError(
            f"matrix is incomplete: {len(missing)} judgment(s) missing, first ({items[i]}, {items[j]})",
            code="matrix_incomplete",
            detail={"missing_pairs": len(missing)},
        )
    return PairwiseMatrix(items, resolved)


def parse_matrix_document(document: str | bytes | Mapping) -> PairwiseMatrix:
    """Reads the JSON wire form: {"items": [...], "judgments": [{"row", "col", "value"}]}."""
    if isinstance(document, (str, bytes)):
        try:
            document = json.loads(document)
        except json.JSONDecodeError as exc:
            raise SchemaError(f"not valid JSON: {exc}", "") from exc
    if not isinstance(document, dict):
        raise SchemaError("matrix document must be an object", "$")
    unknown = set(document) - {"items", "judgments"}
    if unknown:
        raise SchemaError(f"unknown field {sorted(unknown)[0]!r}", "$")
    items = document.get("items")
    raw_judgments = document.get("judgments")
    if not isinstance(items, list) or not all(isinstance(s, str) for s in items):
        raise SchemaError("'items' must be a list of strings", "items")
    if not isinstance(raw_judgments, list):
        raise SchemaError("'judgments' must be a list", "judgments")
    judgments = {}
    for ji, entry in enumerate(raw_judgments):
        if not isinstance(entry, dict) or set(entry) != {"row", "col", "value"}:
            raise SchemaError("each judgment needs exactly row, col, value", f"judgments[{ji}]")
        judgments[(entry["row"], entry["col"])] = entry["value"]
    return build_matrix(items, judgments)


def _wire_value(v: float) -> int | float | str:
    # ints and exact reciprocals get readable forms; anything else stays a
    # raw float so serialize/parse round trips are lossless
    if v == round(v) and 1 <= v <= 9:
        return int(v)
    k = round(1 / v)
    if 2 <= k <= 9 and v == 1 / k:
        return f"1/{k}"
    return v


def serialize_matrix(m: PairwiseMatrix) -> dict:
    return {
        "items": list(m.items),
        "judgments": [
            {"row": m.items[i], "col": m.items[j], "value": _wire_value(m.judgments[(i, j)])}
            for i, j in sorted(m.judgments)
        ],
    }


@dataclass(frozen=True)
class PriorityVector:
    """Positive weights over items, summing to 1.

    ``method`` records how the weights were derived; None marks externally
    supplied weights (e.g. a hierarchy document).
    """

    items: tuple[str, ...]
    weights: tuple[float, ...]
    method: WeightMethod | None = WeightMethod.COLUMN_NORM

    def __post_init__(self) -> None:
        if len(self.items) != len(self.weights):
            raise SchemaError("weights and items differ in length")
        if any(w <= 0 for w in self.weights):
            raise SchemaError("weights must be strictly positive")
        if abs(sum(self.weights) - 1.0) > 1e-9:
            raise SchemaError(f"weights must sum to 1, got {sum(self.weights)}")

    def as_array(self) -> np.ndarray:
        return np.asarray(self.weights)

    def weight_of(self, item: str) -> float:
        return self.weights[self.items.index(item)]


def priority_weights(m: PairwiseMatrix, method: WeightMethod = WeightMethod.COLUMN_NORM) -> PriorityVector:
    """Derives priority weights: column-normalized row averages, or the
    principal eigenvector by power iteration."""
    a = m.to_array()
    if method == WeightMethod.COLUMN_NORM:
        w = (a / a.sum(axis=0)).mean(axis=1)
    elif method == WeightMethod.EIGENVECTOR:
        w = np.full(m.n, 1.0 / m.n)
        for _ in range(_EIGEN_CAP):
            v = a @ w
            v /= v.sum()
            if np.max(np.abs(v - w) / w) <= _EIGEN_TOL:
                w = v
                break
            w = v
        else:
            raise ConvergenceError(f"power iteration did not converge in {_EIGEN_CAP} steps")
    else:
        raise SchemaError(f"unknown weight method {method!r}")
    w = w / w.sum()
    return PriorityVector(m.items, tuple(float(x) for x in w), method)


def estimate_lambda_max(m: PairwiseMatrix, w: PriorityVector) -> float:
    """Mean of (A·w)_i / w_i, the principal-eigenvalue estimate."""
    wv = w.as_array()
    return float(np.mean((m.to_array() @ wv) / wv))


@dataclass(frozen=True)
class ConsistencyReport:
    lambda_max: float
    ci: float
    ri: float
    cr: float
    consistent: bool


def consistency_report(m: PairwiseMatrix, method: WeightMethod = WeightMethod.COLUMN_NORM) -> ConsistencyReport:
    """λ_max, CI, RI, CR and the CR < 0.1 verdict for a complete matrix."""
    if m.n > MAX_ORDER:
        raise DomainError(
            f"no random-index value for {m.n} items (supported up to {MAX_ORDER})",
            code="unsupported_order",
        )
    w = priority_weights(m, method)
    lam = estimate_lambda_max(m, w)
    ci = 0.0 if m.n == 2 else (lam - m.n) / (m.n - 1)
    ri = RANDOM_INDEX[m.n]
    cr = 0.0 if ri == 0 else ci / ri
    return ConsistencyReport(lam, ci, ri, cr, cr < CR_THRESHOLD)


def rank_weights(weights: Sequence[float] | PriorityVector) -> list[int]:
    """Competition ranks (descending; ties share the best rank, next is skipped)."""
    if isinstance(weights, PriorityVector):
        weights = weights.weights
    return [1 + sum(1 for other in weights if other > w) for w in weights]


@dataclass(frozen=True)
class Hierarchy:
    """Category weights plus per-category member weights."""

    categories: PriorityVector
    members: Mapping[str, PriorityVector]

    def __post_init__(self) -> None:
        if set(self.members) != set(self.categories.items):
            raise SchemaError("member map keys must match the category items exactly")
        seen: dict[str, str] = {}
        for category in self.categories.items:
            for item in self.members[category].items:
                if item in seen:
                    raise DomainError(
                        f"item {item!r} appears in categories {seen[item]!r} and {category!r}",
                        code="duplicate_item",
                    )
                seen[item] = category


@dataclass(frozen=True)
class GlobalEntry:
    item: str
    category: str
    local_weight: float
    local_rank: int
    global_weight: float
    global_rank: int


@dataclass(frozen=True)
class GlobalRanking:
    entries: tuple[GlobalEntry, ...]

    def entry(self, item: str) -> GlobalEntry:
        for e in self.entries:
            if e.item == item:
                return e
        raise KeyError(item)


def aggregate_global(h: Hierarchy) -> GlobalRanking:
    """global weight = category weight × local weight; ranks over all items."""
    rows: list[tuple[str, str, float, int, float]] = []
    for category, cat_weight in zip(h.categories.items, h.categories.weights):
        local = h.members[category]
        local_ranks = rank_weights(local)
        for item, lw, lr in zip(local.items, local.weights, local_ranks):
            rows.append((item, category, lw, lr, cat_weight * lw))
    global_ranks = rank_weights([r[4] for r in rows])
    entries = tuple(
        GlobalEntry(item, category, lw, lr, gw, gr)
        for (item, category, lw, lr, gw), gr in zip(rows, global_ranks)
    )
    return GlobalRanking(entries)


def parse_hierarchy_document(document: str | bytes | Mapping) -> Hierarchy:
    """Reads {"categories": {"items", "weights"}, "members": {cat: {...}}}.

    Weight vectors are renormalized when their sum is within 2% of 1, which
    absorbs rounding in hand-published tables; anything further off is rejected.
    """
    if isinstance(document, (str, bytes)):
        try:
            document = json.loads(document)
        except json.JSONDecodeError as exc:
            raise SchemaError(f"not valid JSON: {exc}", "") from exc
    if not isinstance(document, dict) or set(document) != {"categories", "members"}:
        raise SchemaError("hierarchy document needs exactly 'categories' and 'members'", "$")

    def vector(raw: object, path: str) -> PriorityVector:
        if not isinstance(raw, dict) or set(raw) != {"items", "weights"}:
            raise SchemaError("weight vector needs exactly 'items' and 'weights'", path)
        items, weights = raw["items"], raw["weights"]
        if not isinstance(items, list) or not all(isinstance(s, str) for s in items):
            raise SchemaError("'items' must be a list of strings", path)
        if (
            not isinstance(weights, list)
            or len(weights) != len(items)
            or not all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in weights)
        ):
            raise SchemaError("'weights' must be a list of numbers, one per item", path)
        if any(x <= 0 for x in weights):
            raise SchemaError("weights must be strictly positive", path)
        total = sum(weights)
        if abs(total - 1.0) > 0.02:
            raise SchemaError(f"weights sum to {total:.4f}, too far from 1 to renormalize", path)
        return PriorityVector(tuple(items), tuple(x / total for x in weights), method=None)

    members_raw = document["members"]
    if not isinstance(members_raw, dict):
        raise SchemaError("'members' must be an object keyed by category", "members")
    categories = vector(document["categories"], "categories")
    members = {key: vector(value, f"members.{key}") for key, value in members_raw.items()}
    return Hierarchy(categories, members)


def serialize_hierarchy(h: Hierarchy) -> dict:
    return {
        "categories": {"items": list(h.categories.items), "weights": list(h.categories.weights)},
        "members": {
            cat: {"items": list(v.items), "weights": list(v.weights)}
            for cat, v in h.members.items()
        },
    }


@dataclass(frozen=True)
class InconsistencyHint:
    """The judgment most at odds with the derived weights, and a replacement."""

    row: int
    col: int
    row_item: str
    col_item: str
    current: float
    suggested: float
    deviation: float


def inconsistency_hint(m: PairwiseMatrix, w: PriorityVector) -> InconsistencyHint:
    """Scans the upper triangle for the pair maximizing |ln(a_ij · w_j / w_i)|.

    The suggestion is the consistency-ideal ratio w_i/w_j clamped to the scale
    bounds; the first maximal pair in row-major order wins ties.
    """
    best: tuple[int, int] | None = None
    best_dev = -1.0
    for i, j in m.pairs():
        dev = abs(math.log(m.value(i, j) * w.weights[j] / w.weights[i]))
        if dev > best_dev + 1e-15:
            best, best_dev = (i, j), dev
    assert best is not None
    i, j = best
    ideal = min(max(w.weights[i] / w.weights[j], SCALE_MIN), SCALE_MAX)
    return InconsistencyHint(i, j, m.items[i], m.items[j], m.value(i, j), ideal, best_dev)
