import os
from dataclasses import dataclass
from typing import List

import pytest

from rce import syntax as S
from rce.parser import parse_comp

CORPUS_DIR = os.path.join(os.path.dirname(__file__), os.pardir,
                          "src", "rce", "corpus")


@dataclass(frozen=True)
class CorpusProgram:
    name: str
    expect_converges: bool
    program: S.CompTerm


def _load_corpus() -> List[CorpusProgram]:
    out = []
    for fname in sorted(os.listdir(CORPUS_DIR)):
        if not fname.endswith(".rce"):
            continue
        with open(os.path.join(CORPUS_DIR, fname)) as f:
            text = f.read()
        first = text.splitlines()[0]
        assert first.startswith("-- expect:"), fname
        expect = first.split(":", 1)[1].strip()
        assert expect in ("converges", "diverges"), fname
        out.append(CorpusProgram(fname, expect == "converges",
                                 parse_comp(text)))
    return out


_CORPUS = _load_corpus()


@pytest.fixture(scope="session")
def corpus() -> List[CorpusProgram]:
    return _CORPUS


def pytest_generate_tests(metafunc):
    if "corpus_program" in metafunc.fixturenames:
        metafunc.parametrize("corpus_program", _CORPUS,
                             ids=[p.name for p in _CORPUS])
