import json
from pathlib import Path

import pytest

import mmk

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


def read_fixture(relpath: str) -> str:
    return (FIXTURES / relpath).read_text(encoding="utf-8")


def load_fixture(relpath: str) -> dict:
    return json.loads(read_fixture(relpath))


@pytest.fixture(scope="session")
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture(scope="session")
def model() -> mmk.MaturityModel:
    return mmk.bundled_sre_himm()


@pytest.fixture(scope="session")
def coordination_matrix() -> mmk.PairwiseMatrix:
    return mmk.parse_matrix_document(read_fixture("matrices/sf_coordination.json"))


@pytest.fixture(scope="session")
def company_scores() -> dict[str, mmk.DimensionScores]:
    _, _, scores = mmk.parse_scores_document(read_fixture("scores/company_a.json"))
    return scores
