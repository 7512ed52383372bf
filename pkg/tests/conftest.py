import json
from pathlib import Path

import pytest

from qchat.extraction import CorpusRecord, ExtractionQuestion, QuestionKind

CORPUS_DIR = Path(__file__).resolve().parents[1] / "src" / "qchat" / "assets" / "corpus"
FIXTURE_DIR = Path(__file__).resolve().parent / "fixtures"
GOLDEN_DIR = FIXTURE_DIR / "golden"


def load_extraction_records(path: Path) -> list[CorpusRecord]:
    records = []
    for line in path.read_text(encoding="utf-8").splitlines():
        d = json.loads(line)
        records.append(
            CorpusRecord(
                context=d["context"],
                question=ExtractionQuestion(
                    QuestionKind(d["question_form"]), **d["slots"]
                ),
                expected_span=d["expected_span"],
            )
        )
    return records


@pytest.fixture(scope="session")
def intent_corpus() -> list[dict]:
    lines = (CORPUS_DIR / "intent.jsonl").read_text(encoding="utf-8").splitlines()
    return [json.loads(line) for line in lines]


@pytest.fixture(scope="session")
def extraction_corpus() -> list[CorpusRecord]:
    return load_extraction_records(CORPUS_DIR / "extraction.jsonl")


@pytest.fixture(scope="session")
def adversarial_corpus() -> list[CorpusRecord]:
    return load_extraction_records(CORPUS_DIR / "adversarial.jsonl")
