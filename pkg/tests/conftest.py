from pathlib import Path

import pytest

from polyground.syntax import parse_program

CORPUS = Path(__file__).resolve().parents[1] / "src" / "polyground" / "corpus"

CORPUS_NAMES = (
    "append.pl",
    "factorial.pl",
    "lookup.pl",
    "merge.pl",
    "nrev.pl",
    "permsort.pl",
    "rotate.pl",
)


def load(name: str):
    if not name.endswith(".pl"):
        name += ".pl"
    return parse_program((CORPUS / name).read_text())


@pytest.fixture
def load_corpus():
    return load


@pytest.fixture
def corpus_dir():
    return CORPUS
