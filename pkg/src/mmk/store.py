"""File-backed assessment sessions with optimistic concurrency.

One JSON document per session under a data directory, plus an index file.
Every write goes to a temp file first and is renamed into place, so a crash
can never leave a half-written session behind.
"""

from __future__ import annotations

import json
import os
import threading
import uuid
from dataclasses import dataclass, replace
from datetime import datetime, timezone
from pathlib import Path
from typing import Mapping, Sequence

from .ahp import PairwiseMatrix, build_matrix, check_judgment_range, parse_judgment_value
from .errors import ConflictError, DomainError, NotFoundError, SchemaError
from .model import ModelRegistry
from .motorola import DimensionScores

DEFAULT_DATA_DIR = "~/.mmk/sessions"


def resolve_data_dir(explicit: str | os.PathLike | None = None) -> Path:
    """--data-dir beats MMK_DATA_DIR beats the home-directory default."""
    if explicit:
        return Path(explicit).expanduser()
    env = os.environ.get("MMK_DATA_DIR")
    return Path(env).expanduser() if env else Path(DEFAULT_DATA_DIR).expanduser()


@dataclass(frozen=True)
class SessionMatrix:
    """A comparison matrix mid-entry: items fixed, judgments possibly partial."""

    items: tuple[str, ...]
    judgments: Mapping[tuple[int, int], float]

    @property
    def n(self) -> int:
        return len(self.items)

    def missing_pairs(self) -> int:
        return self.n * (self.n - 1) // 2 - len(self.judgments)

    def to_pairwise(self) -> PairwiseMatrix:
        if self.missing_pairs():
            raise DomainError(
                f"matrix is incomplete: {self.missing_pairs()} judgment(s) missing",
                code="matrix_incomplete",
                detail={"missing_pairs": self.missing_pairs()},
            )
        return build_matrix(self.items, self.judgments)


@dataclass(frozen=True)
class Session:
    id: str
    model_ref: str
    revision: int
    created_at: str
    updated_at: str
    partial: bool
    matrices: Mapping[str, SessionMatrix]
    scores: Mapping[str, DimensionScores]


# --- mutations ----------------------------------------------------------------


@dataclass(frozen=True)
class MatrixMutation:
    """Create or edit one matrix: optional (re)definition of items, then a
    batch of judgment edits; a None value deletes that judgment."""

    matrix_id: str
    entries: Sequence[tuple[str, str, object]] = ()
    items: Sequence[str] | None = None


@dataclass(frozen=True)
class ScoresMutation:
    """Merge practice scores; a None value clears that practice.

    ``partial`` switches the session's assessment mode when given.
    """

    entries: Mapping[str, DimensionScores | None]
    partial: bool | None = None


@dataclass(frozen=True)
class ClearMutation:
    target: str = "all"  # "matrices" | "scores" | "all"


Mutation = MatrixMutation | ScoresMutation | ClearMutation


def _apply_matrix_mutation(session: Session, m: MatrixMutation) -> Session:
    if not m.matrix_id or not isinstance(m.matrix_id, str):
        raise SchemaError("matrix id must be a non-empty string", "matrix_id")
    existing = session.matrices.get(m.matrix_id)
    if m.items is not None:
        items = tuple(m.items)
        if len(items) < 2:
            raise SchemaError("a comparison matrix needs at least 2 items", "items")
        if len(set(items)) != len(items):
            raise SchemaError("duplicate item label", "items")
        if not all(isinstance(s, str) and s for s in items):
            raise SchemaError("item labels must be non-empty strings", "items")
        judgments: dict[tuple[int, int], float] = {}
        if existing is not None and existing.items == items:
            judgments = dict(existing.judgments)
    elif existing is not None:
        items = existing.items
        judgments = dict(existing.judgments)
    else:
        raise SchemaError(f"matrix {m.matrix_id!r} does not exist yet; supply its items", "items")

    index = {label: pos for pos, label in enumerate(items)}
    for row, col, value in m.entries:
        if row not in index or col not in index:
            missing = row if row not in index else col
            raise SchemaError(f"judgment references unknown item {missing!r}", "judgments")
        i, j = index[row], index[col]
        if i == j:
            raise SchemaError(f"diagonal judgment ({row}, {row}) is fixed at 1", "judgments")
        if i > j:
            raise SchemaError(
                f"judgment ({row}, {col}) addresses the lower triangle; "
                "enter the upper-triangle pair instead",
                "judgments",
            )
        if value is None:
            judgments.pop((i, j), None)
        else:
            judgments[(i, j)] = check_judgment_range(parse_judgment_value(value))

    matrices = dict(session.matrices)
    matrices[m.matrix_id] = SessionMatrix(items, judgments)
    return replace(session, matrices=matrices)


def _apply_scores_mutation(session: Session, m: ScoresMutation, registry: ModelRegistry) -> Session:
    model = registry.get(session.model_ref)
    known = set(model.practice_ids())
    scores = dict(session.scores)
    for pid, dims in m.entries.items():
        if pid not in known:
            raise DomainError(f"unknown practice id {pid!r}", code="unknown_practice")
        if dims is None:
            scores.pop(pid, None)
        elif isinstance(dims, DimensionScores):
            scores[pid] = dims
        else:
            raise SchemaError(f"score for {pid!r} must be DimensionScores or None", "scores")
    partial = session.partial if m.partial is None else bool(m.partial)
    return replace(session, scores=scores, partial=partial)


def _apply_clear(session: Session, m: ClearMutation) -> Session:
    if m.target not in ("matrices", "scores", "all"):
        raise SchemaError(f"unknown clear target {m.target!r}", "target")
    out = session
    if m.target in ("matrices", "all"):
        out = replace(out, matrices={})
    if m.target in ("scores", "all"):
        out = replace(out, scores={})
    return out


# --- serialization ------------------------------------------------------------


def _session_to_doc(s: Session) -> dict:
    return {
        "id": s.id,
        "model_ref": s.model_ref,
        "revision": s.revision,
        "created_at": s.created_at,
        "updated_at": s.updated_at,
        "partial": s.partial,
        "matrices": {
            mid: {
                "items": list(m.items),
                "judgments": [
                    {"row": m.items[i], "col": m.items[j], "value": v}
                    for (i, j), v in sorted(m.judgments.items())
                ],
            }
            for mid, m in sorted(s.matrices.items())
        },
        "scores": {
            pid: {"approach": d.approach, "deployment": d.deployment, "results": d.results}
            for pid, d in sorted(s.scores.items())
        },
    }


def _session_from_doc(doc: Mapping) -> Session:
    matrices = {}
    for mid, raw in doc["matrices"].items():
        items = tuple(raw["items"])
        index = {label: pos for pos, label in enumerate(items)}
        judgments = {
            (index[e["row"]], index[e["col"]]): float(e["value"]) for e in raw["judgments"]
        }
        matrices[mid] = SessionMatrix(items, judgments)
    scores = {
        pid: DimensionScores(d["approach"], d["deployment"], d["results"])
        for pid, d in doc["scores"].items()
    }
    return Session(
        id=doc["id"],
        model_ref=doc["model_ref"],
        revision=doc["revision"],
        created_at=doc["created_at"],
        updated_at=doc["updated_at"],
        partial=doc["partial"],
        matrices=matrices,
        scores=scores,
    )


def _write_atomic(path: Path, payload: str) -> None:
    tmp = path.with_name(path.name + ".tmp")
    tmp.write_text(payload, encoding="utf-8")
    os.replace(tmp, path)


# --- the store ----------------------------------------------------------------


class SessionStore:
    """Serializes mutations per session; safe to share across request handlers."""

    def __init__(self, data_dir: str | os.PathLike, registry: ModelRegistry) -> None:
        self.data_dir = Path(data_dir).expanduser()
        self.data_dir.mkdir(parents=True, exist_ok=True)
        self.registry = registry
        self._guard = threading.Lock()
        self._locks: dict[str, threading.Lock] = {}
        self._cache: dict[str, Session] = {}

    def _lock_for(self, session_id: str) -> threading.Lock:
        with self._guard:
            return self._locks.setdefault(session_id, threading.Lock())

    def _index_path(self) -> Path:
        return self.data_dir / "index.json"

    def _session_path(self, session_id: str) -> Path:
        return self.data_dir / f"{session_id}.json"

    def _read_index(self) -> list[str]:
        path = self._index_path()
        if not path.exists():
            return []
        return json.loads(path.read_text("utf-8"))["sessions"]

    def _write_index(self, ids: list[str]) -> None:
        _write_atomic(self._index_path(), json.dumps({"sessions": sorted(ids)}, indent=2))

    def _persist(self, session: Session) -> None:
        _write_atomic(
            self._session_path(session.id),
            json.dumps(_session_to_doc(session), indent=2, sort_keys=True),
        )
        self._cache[session.id] = session

    def create_session(self, model_ref: str) -> Session:
        model = self.registry.get(model_ref)  # raises NotFoundError for unknown refs
        now = datetime.now(timezone.utc).isoformat()
        session = Session(
            id=uuid.uuid4().hex,
            model_ref=model.ref,
            revision=0,
            created_at=now,
            updated_at=now,
            partial=True,
            matrices={},
            scores={},
        )
        self._persist(session)
        with self._guard:
            ids = self._read_index()
            ids.append(session.id)
            self._write_index(ids)
        return session

    def load_session(self, session_id: str) -> Session:
        if session_id in self._cache:
            return self._cache[session_id]
        path = self._session_path(session_id)
        if not path.exists():
            raise NotFoundError(f"unknown session {session_id!r}")
        session = _session_from_doc(json.loads(path.read_text("utf-8")))
        self._cache[session_id] = session
        return session

    def list_sessions(self) -> list[Session]:
        return [self.load_session(sid) for sid in self._read_index()]

    def update_session(self, session_id: str, expected_revision: int, mutation: Mutation) -> Session:
        """Validates against the current revision, applies, persists, returns.

        The mutation is applied to a copy and persisted before becoming
        visible, so a validation failure leaves the session untouched.
        """
        with self._lock_for(session_id):
            current = self.load_session(session_id)
            if expected_revision != current.revision:
                raise ConflictError(
                    f"session {session_id} is at revision {current.revision}, "
                    f"caller expected {expected_revision}",
                    expected=expected_revision,
                    actual=current.revision,
                )
            if isinstance(mutation, MatrixMutation):
                mutated = _apply_matrix_mutation(current, mutation)
            elif isinstance(mutation, ScoresMutation):
                mutated = _apply_scores_mutation(current, mutation, self.registry)
            elif isinstance(mutation, ClearMutation):
                mutated = _apply_clear(current, mutation)
            else:
                raise SchemaError(f"unknown mutation type {type(mutation).__name__}")
            mutated = replace(
                mutated,
                revision=current.revision + 1,
                updated_at=datetime.now(timezone.utc).isoformat(),
            )
            self._persist(mutated)
            return mutated

    def delete_session(self, session_id: str) -> None:
        with self._lock_for(session_id):
            path = self._session_path(session_id)
            if not path.exists():
                raise NotFoundError(f"unknown session {session_id!r}")
            path.unlink()
            self._cache.pop(session_id, None)
            with self._guard:
                self._write_index([sid for sid in self._read_index() if sid != session_id])
