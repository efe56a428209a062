"""Maturity-model definitions: parsing, validation, the bundled model, and the
criticality filter that derives critical factors from frequency evidence."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from importlib import resources
from typing import Iterable, Iterator, Mapping

from .errors import NotFoundError, SchemaError

DEFAULT_CRITICALITY_THRESHOLD = 50.0


class FactorKind(str, Enum):
    CSF = "CSF"  # critical success factor
    CB = "CB"  # critical barrier


@dataclass(frozen=True)
class Practice:
    id: str
    text: str
    source: str = ""


@dataclass(frozen=True)
class Factor:
    id: str
    kind: FactorKind
    name: str
    practices: tuple[Practice, ...]


@dataclass(frozen=True)
class Level:
    number: int
    name: str
    factors: tuple[Factor, ...]


@dataclass(frozen=True)
class MaturityModel:
    """A validated maturity model: contiguous levels 1..K, factors, practices.

    Instances are immutable and safe to share; construct via :func:`parse_model`
    (or the dataclass directly, followed by :func:`validate_model`).
    """

    name: str
    version: str
    levels: tuple[Level, ...]

    @property
    def ref(self) -> str:
        return f"{self.name}@{self.version}"

    def factors(self) -> Iterator[tuple[Level, Factor]]:
        for level in self.levels:
            for factor in level.factors:
                yield level, factor

    def factor(self, factor_id: str) -> Factor:
        for _, f in self.factors():
            if f.id == factor_id:
                return f
        raise NotFoundError(f"unknown factor id {factor_id!r} in model {self.ref}")

    def level_of(self, factor_id: str) -> Level:
        for level, f in self.factors():
            if f.id == factor_id:
                return level
        raise NotFoundError(f"unknown factor id {factor_id!r} in model {self.ref}")

    def practice_ids(self) -> list[str]:
        return [p.id for _, f in self.factors() for p in f.practices]

    def factor_count(self) -> int:
        return sum(len(level.factors) for level in self.levels)

    def practice_count(self) -> int:
        return sum(len(f.practices) for _, f in self.factors())


def validate_model(model: MaturityModel) -> MaturityModel:
    """Checks every model invariant, raising :class:`SchemaError` on the first failure."""
    numbers = [level.number for level in model.levels]
    if len(numbers) < 2:
        raise SchemaError("a model needs at least 2 levels", "levels")
    if numbers != list(range(1, len(numbers) + 1)):
        raise SchemaError(
            f"level numbers must be exactly 1..{len(numbers)} in order, got {numbers}", "levels"
        )
    if model.levels[0].factors:
        raise SchemaError("level 1 must not contain factors", "levels[0].factors")

    seen_factors: dict[str, int] = {}
    seen_practices: dict[str, str] = {}
    for li, level in enumerate(model.levels):
        for fi, factor in enumerate(level.factors):
            path = f"levels[{li}].factors[{fi}]"
            if factor.id in seen_factors:
                raise SchemaError(f"duplicate factor id {factor.id!r}", f"{path}.id")
            seen_factors[factor.id] = level.number
            if not factor.practices:
                raise SchemaError(f"factor {factor.id!r} has no practices", f"{path}.practices")
            for pi, practice in enumerate(factor.practices):
                if practice.id in seen_practices:
                    raise SchemaError(
                        f"duplicate practice id {practice.id!r} "
                        f"(already under factor {seen_practices[practice.id]!r})",
                        f"{path}.practices[{pi}].id",
                    )
                seen_practices[practice.id] = factor.id
    return model


def _expect(obj: object, keys: dict[str, type], path: str) -> dict:
    if not isinstance(obj, dict):
        raise SchemaError(f"expected an object, got {type(obj).__name__}", path)
    unknown = set(obj) - set(keys)
    if unknown:
        raise SchemaError(f"unknown field {sorted(unknown)[0]!r}", path)
    out = {}
    for key, typ in keys.items():
        if key not in obj:
            raise SchemaError(f"missing field {key!r}", path)
        value = obj[key]
        if typ is float:
            if not isinstance(value, (int, float)) or isinstance(value, bool):
                raise SchemaError(f"field {key!r} must be a number", path)
            value = float(value)
        elif not isinstance(value, typ) or (typ is int and isinstance(value, bool)):
            raise SchemaError(f"field {key!r} must be {typ.__name__}", path)
        out[key] = value
    return out


def parse_model(document: str | bytes | Mapping) -> MaturityModel:
    """Parses and validates a model document (JSON text or an already-decoded mapping)."""
    if isinstance(document, (str, bytes)):
        try:
            document = json.loads(document)
        except json.JSONDecodeError as exc:
            raise SchemaError(f"not valid JSON: {exc}", "") from exc
    top = _expect(document, {"name": str, "version": str, "levels": list}, "$")

    levels = []
    for li, raw_level in enumerate(top["levels"]):
        lpath = f"levels[{li}]"
        lv = _expect(raw_level, {"number": int, "name": str, "factors": list}, lpath)
        factors = []
        for fi, raw_factor in enumerate(lv["factors"]):
            fpath = f"{lpath}.factors[{fi}]"
            fc = _expect(raw_factor, {"id": str, "kind": str, "name": str, "practices": list}, fpath)
            if fc["kind"] not in (FactorKind.CSF.value, FactorKind.CB.value):
                raise SchemaError(f"kind must be 'CSF' or 'CB', got {fc['kind']!r}", f"{fpath}.kind")
            practices = []
            for pi, raw_practice in enumerate(fc["practices"]):
                ppath = f"{fpath}.practices[{pi}]"
                if isinstance(raw_practice, dict) and "source" not in raw_practice:
                    raw_practice = {**raw_practice, "source": ""}
                pc = _expect(raw_practice, {"id": str, "text": str, "source": str}, ppath)
                practices.append(Practice(pc["id"], pc["text"], pc["source"]))
            factors.append(Factor(fc["id"], FactorKind(fc["kind"]), fc["name"], tuple(practices)))
        levels.append(Level(lv["number"], lv["name"], tuple(factors)))

    return validate_model(MaturityModel(top["name"], top["version"], tuple(levels)))


def serialize_model(model: MaturityModel) -> dict:
    """Inverse of :func:`parse_model`: emits the canonical document mapping."""
    return {
        "name": model.name,
        "version": model.version,
        "levels": [
            {
                "number": level.number,
                "name": level.name,
                "factors": [
                    {
                        "id": f.id,
                        "kind": f.kind.value,
                        "name": f.name,
                        "practices": [
                            {"id": p.id, "text": p.text, "source": p.source} for p in f.practices
                        ],
                    }
                    for f in level.factors
                ],
            }
            for level in model.levels
        ],
    }


@lru_cache(maxsize=1)
def bundled_sre_himm() -> MaturityModel:
    """The SRE-HIMM model shipped with the package (5 levels, 12 factors, 51 practices)."""
    data = resources.files(__package__).joinpath("data/sre_himm.json").read_text("utf-8")
    return parse_model(data)


# --- criticality -------------------------------------------------------------


@dataclass(frozen=True)
class FrequencyRecord:
    """Occurrence percentages of one factor in literature and survey evidence."""

    factor_id: str
    slr_pct: float
    survey_pct: float

    def __post_init__(self) -> None:
        for name in ("slr_pct", "survey_pct"):
            value = getattr(self, name)
            if not 0 <= value <= 100:
                raise SchemaError(f"{name} must be in [0, 100], got {value}", self.factor_id)


def criticality_filter(
    records: Iterable[FrequencyRecord], threshold: float = DEFAULT_CRITICALITY_THRESHOLD
) -> set[str]:
    """Ids whose frequency meets ``threshold`` in *both* evidence sources (inclusive)."""
    if not 0 <= threshold <= 100:
        raise SchemaError(f"threshold must be in [0, 100], got {threshold}", "threshold")
    return {r.factor_id for r in records if r.slr_pct >= threshold and r.survey_pct >= threshold}


def parse_frequency_records(document: str | bytes | Mapping) -> tuple[list[FrequencyRecord], list[str]]:
    """Reads a ``{"records": [...], "notes": [...]}`` document; notes are optional."""
    if isinstance(document, (str, bytes)):
        try:
            document = json.loads(document)
        except json.JSONDecodeError as exc:
            raise SchemaError(f"not valid JSON: {exc}", "") from exc
    if not isinstance(document, dict) or not isinstance(document.get("records"), list):
        raise SchemaError("expected an object with a 'records' list", "$")
    records = []
    seen: set[str] = set()
    for ri, raw in enumerate(document["records"]):
        rc = _expect(raw, {"factor_id": str, "slr_pct": float, "survey_pct": float}, f"records[{ri}]")
        if rc["factor_id"] in seen:
            raise SchemaError(f"duplicate factor id {rc['factor_id']!r}", f"records[{ri}].factor_id")
        seen.add(rc["factor_id"])
        records.append(FrequencyRecord(rc["factor_id"], rc["slr_pct"], rc["survey_pct"]))
    notes = document.get("notes", [])
    if not isinstance(notes, list) or not all(isinstance(n, str) for n in notes):
        raise SchemaError("'notes' must be a list of strings", "notes")
    return records, notes


# --- registry ----------------------------------------------------------------


class ModelRegistry:
    """Resolves ``name`` / ``name@version`` references to registered models."""

    def __init__(self, models: Iterable[MaturityModel] = ()) -> None:
        self._models: dict[str, MaturityModel] = {}
        for model in models:
            self.add(model)

    def add(self, model: MaturityModel) -> None:
        self._models[model.ref] = model

    def get(self, ref: str) -> MaturityModel:
        if ref in self._models:
            return self._models[ref]
        if "@" not in ref:
            matches = [m for m in self._models.values() if m.name == ref]
            if len(matches) == 1:
                return matches[0]
            if matches:
                versions = sorted(m.ref for m in matches)
                raise NotFoundError(f"ambiguous model {ref!r}; candidates: {', '.join(versions)}")
        raise NotFoundError(f"unknown model {ref!r}")

    def refs(self) -> list[str]:
        return sorted(self._models)

    def models(self) -> list[MaturityModel]:
        return [self._models[r] for r in self.refs()]


def default_registry() -> ModelRegistry:
    return ModelRegistry([bundled_sre_himm()])
