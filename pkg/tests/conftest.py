from pathlib import Path

import pytest

from spokenud import parse

DATA = Path(__file__).parent / "data"


@pytest.fixture(scope="session")
def example1_text() -> str:
    return (DATA / "example1.conllu").read_text(encoding="utf-8")


@pytest.fixture(scope="session")
def example2_text() -> str:
    return (DATA / "example2.conllu").read_text(encoding="utf-8")


@pytest.fixture(scope="session")
def example1(example1_text):
    return parse(example1_text, source_name="example1.conllu")


@pytest.fixture(scope="session")
def example2(example2_text):
    return parse(example2_text, source_name="example2.conllu")


@pytest.fixture
def example1_path() -> Path:
    return DATA / "example1.conllu"


@pytest.fixture
def example2_path() -> Path:
    return DATA / "example2.conllu"
