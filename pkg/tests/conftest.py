import pathlib

import pytest

CORPUS = pathlib.Path(__file__).parent / "corpus"


@pytest.fixture
def corpus():
    def load(name: str) -> str:
        return (CORPUS / name).read_text()

    return load
