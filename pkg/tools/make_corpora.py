"""Generate the bundled intent and extraction corpora.

Contexts and their expected answers are built together, so every label is
known by construction rather than re-derived by the extractor under test.
The script validates both corpora before writing: 100% intent accuracy and
100% extraction exact match on the main corpus are enforced here, which
keeps regressions loud.

Run from the repo root:  python3 tools/make_corpora.py
"""
from __future__ import annotations

import json
import random
from pathlib import Path

from qchat.extraction import (
    CorpusRecord,
    DeterministicExtractor,
    ExtractionQuestion,
    QuestionKind,
    exact_match,
)
from qchat.intent import Intent, classify

CORPUS_DIR = Path(__file__).resolve().parents[1] / "src" / "qchat" / "assets" / "corpus"

PER_INTENT = 60
PER_QUESTION = 300

GATES = [
    ("identity", "i"), ("Identity", "i"),
    ("X", "x"), ("Pauli-X", "x"), ("NOT", "x"), ("bit flip", "x"),
    ("Y", "y"), ("Pauli-Y", "y"),
    ("Z", "z"), ("Pauli-Z", "z"), ("phase flip", "z"),
    ("S", "s"),
    ("S dagger", "sdg"), ("sdg", "sdg"),
    ("Hadamard", "h"), ("H", "h"),
    ("phase", "phase"),
    ("Rx", "rx"), ("Ry", "ry"), ("Rz", "rz"),
    ("CNOT", "cnot"), ("controlled-NOT", "cnot"), ("CX", "cnot"),
    ("CZ", "cz"), ("controlled-Z", "cz"),
    ("SWAP", "swap"),
]
ONE_QUBIT_BITS = ["0", "1"]
TWO_QUBIT = {"cnot", "cz", "swap"}

CITIES = [
    "Bern", "Basel", "Zurich", "Geneva", "Lausanne", "Lugano", "Lucerne",
    "Zug", "Chur", "Sion", "Thun", "Biel", "Aarau", "Uster", "Winterthur",
]
ITEMS = [
    "tent", "stove", "lamp", "axe", "rope", "torch", "kettle", "blanket",
    "radio", "camera", "compass", "helmet", "parka", "canteen", "shovel",
]

ANGLE_FORMS = [
    "pi/2", "pi/4", "pi/3", "3pi/4", "2pi/3", "pi", "π/2", "π/4", "3π/4",
    "0.7", "1.25", "0.5", "2.1", "90 degrees", "45 degrees", "30 degrees",
    "120 degrees", "0.8 rad", "1.2 radians",
]
AXES = ["x", "y", "z"]

DEFINE_TEMPLATES = [
    "What is the {g} gate?",
    "Define the {g} gate.",
    "Can you define the {g} gate for me?",
    "Please explain the {g} gate.",
    "Tell me about the {g} gate.",
    "Describe the {g} gate.",
    "What's the {g} gate?",
    "Give me the definition of the {g} gate.",
    "Explain what the {g} gate does to a qubit.",
    "I'm new to quantum computing. What is the {g} gate?",
    "Could you describe the {g} gate in simple terms?",
    "What is the matrix of the {g} gate?",
]

DRAW_TEMPLATES = [
    "Draw the {g} gate.",
    "Show me the {g} gate.",
    "Show the circuit for the {g} gate.",
    "Sketch the {g} gate, please.",
    "What does the circuit of the {g} gate look like?",
    "Can you visualize the {g} gate?",
    "I want to see the circuit representation of the {g} gate.",
    "Give me a diagram of the {g} gate.",
    "How is the {g} gate drawn in a circuit?",
    "Depict the {g} gate.",
    "Draw a {g} gate for me.",
    "Show me a circuit diagram of the {g} gate.",
]

APPLY_TEMPLATES = [
    "Apply the {g} gate to |{b}>.",
    "Apply a {g} gate to the state |{b}>.",
    "What happens when the {g} gate acts on |{b}>?",
    "Compute the result of applying the {g} gate to |{b}>.",
    "Evolve |{b}> with the {g} gate.",
    "If the initial state is |{b}>, what does the {g} gate produce?",
    "Apply the {g} gate on |{b}> and give me the final state.",
    "Let the {g} gate act on |{b}>.",
]

PHASE_APPLY_TEMPLATES = [
    "Apply the phase gate with phase {a} to |{b}>.",
    "Apply a phase shift of {a} to |{b}>.",
    "Apply a phase gate with phase {a} to the state |{b}>.",
    "Apply the phase gate to |{b}>; the phase is {a}.",
    "Use a phase gate with a phase shift of {a} on |{b}>.",
]

ROTATE_TEMPLATES = [
    "Rotate the qubit around the {ax} axis by {a} starting from |{b}>.",
    "Apply a rotation of {a} around the {ax} axis to |{b}>.",
    "Rotate |{b}> by {a} about the {ax}-axis.",
    "Apply an {ax} rotation with angle {a} to |{b}>.",
    "Perform a rotation around the {ax} axis with angle {a} on the state |{b}>.",
]

TSP_TEMPLATES = [
    (
        "A salesperson wants to visit {A}, {B} and {C}. {A} to {B} is {d1} km, "
        "{A} to {C} is {d2} km and {B} to {C} is {d3} km. What is the shortest route?"
    ),
    (
        "Find the shortest round trip through {A}, {B} and {C}. The distance "
        "between {A} and {B} is {d1}, between {A} and {C} is {d2} and between "
        "{B} and {C} is {d3}."
    ),
    (
        "I must visit {A}, {B} and {C} and come back. {A} to {B} takes {d1}, "
        "{A} to {C} takes {d2} and {B} to {C} takes {d3}. Plan the cheapest tour."
    ),
    (
        "In what order should I visit {A}, {B} and {C} to travel the least? "
        "{A}-{B}: {d1}, {A}-{C}: {d2}, {B}-{C}: {d3}."
    ),
    (
        "Solve this travelling salesperson problem with cities {A}, {B} and {C}: "
        "{A} to {B} is {d1} km, {A} to {C} is {d2} km and {B} to {C} is {d3} km."
    ),
    (
        "A saleswoman needs the most efficient route covering {A}, {B} and {C}. "
        "{A} and {B} are {d1} km apart, {A} and {C} are {d2} km apart and {B} "
        "and {C} are {d3} km apart."
    ),
    (
        "Plan a tour of {A}, {B} and {C}. {A} to {B} is {d1} miles, {A} to {C} "
        "is {d2} miles and {B} to {C} is {d3} miles."
    ),
]

KP_TEMPLATES = [
    (
        "I have a {i1}, a {i2} and a {i3}. The {i1} weighs {w1} kg and is "
        "worth {v1}. The {i2} weighs {w2} kg and is worth {v2}. The {i3} "
        "weighs {w3} kg and is worth {v3}. My knapsack holds at most {W} kg. "
        "Which items should I pack?"
    ),
    (
        "Pack from a {i1}, a {i2} and a {i3}. The {i1} ({w1} kg, worth {v1}), "
        "the {i2} ({w2} kg, worth {v2}), the {i3} ({w3} kg, worth {v3}). "
        "The backpack can carry up to {W} kg."
    ),
    (
        "My rucksack has a weight limit of {W} kg. I am considering a {i1}, "
        "a {i2} and a {i3}. The {i1} weighs {w1} kg, valued at {v1}; the {i2} "
        "weighs {w2} kg, valued at {v2}; the {i3} weighs {w3} kg, valued at "
        "{v3}. Which items maximize the value?"
    ),
    (
        "Solve this knapsack problem. Items: a {i1}, a {i2} and a {i3}. The "
        "{i1} weighs {w1} kg and brings {v1}. The {i2} weighs {w2} kg and "
        "brings {v2}. The {i3} weighs {w3} kg and brings {v3}. The knapsack "
        "holds at most {W} kg."
    ),
    (
        "A knapsack holds up to {W} kg. I can choose from a {i1}, a {i2} and "
        "a {i3}. The {i1} is {w1} kg and worth {v1}, the {i2} is {w2} kg and "
        "worth {v2}, the {i3} is {w3} kg and worth {v3}. Maximize the total value."
    ),
]

ADVERSARIAL_PHASE_TEMPLATES = [
    "Apply a phase gate to the state {ket} with phase {a}.",
    "Starting in the state {ket}, apply a phase shift of {a}.",
    "The initial state is {ket}. Use a phase gate with phase {a}.",
    "Take the state {ket} and apply the phase gate; the phase is {a}.",
]
ADVERSARIAL_KETS = [
    "3|0>+4|1>", "(|00>+|11>)/sqrt(2)", "0.6|0>+0.8|1>", "(3|0>-4|1>)/5",
    "1/2|00>+1/2|01>+1/2|10>+1/2|11>",
]


def gen_intent_corpus(rng: random.Random) -> list[dict]:
    records: list[dict] = []
    seen: set[str] = set()

    def add(text: str, intent: Intent, gate: str | None = None):
        if text in seen:
            return
        seen.add(text)
        record = {"text": text, "expected_intent": intent.value}
        if gate:
            record["expected_gate"] = gate
        records.append(record)

    def take(n, maker):
        made = 0
        while made < n:
            before = len(records)
            maker()
            made += len(records) - before

    def make_define():
        template = rng.choice(DEFINE_TEMPLATES)
        name, gate = rng.choice(GATES)
        add(template.format(g=name), Intent.DEFINE_GATE, gate)

    def make_draw():
        template = rng.choice(DRAW_TEMPLATES)
        name, gate = rng.choice(GATES)
        add(template.format(g=name), Intent.DRAW_GATE, gate)

    def make_apply():
        kind = rng.random()
        if kind < 0.2:
            template = rng.choice(PHASE_APPLY_TEMPLATES)
            text = template.format(a=rng.choice(ANGLE_FORMS), b=rng.choice(ONE_QUBIT_BITS))
            add(text, Intent.APPLY_GATE, "phase")
        elif kind < 0.4:
            template = rng.choice(ROTATE_TEMPLATES)
            axis = rng.choice(AXES)
            text = template.format(
                a=rng.choice(ANGLE_FORMS), ax=axis, b=rng.choice(ONE_QUBIT_BITS)
            )
            add(text, Intent.APPLY_GATE, f"r{axis}")
        else:
            template = rng.choice(APPLY_TEMPLATES)
            name, gate = rng.choice(
                [(n, g) for n, g in GATES if g not in ("phase", "rx", "ry", "rz")]
            )
            bits = rng.choice(["00", "01", "10", "11"]) if gate in TWO_QUBIT else rng.choice(ONE_QUBIT_BITS)
            add(template.format(g=name, b=bits), Intent.APPLY_GATE, gate)

    def make_tsp():
        template = rng.choice(TSP_TEMPLATES)
        a, b, c = rng.sample(CITIES, 3)
        text = template.format(
            A=a, B=b, C=c,
            d1=rng.randint(1, 9), d2=rng.randint(1, 9), d3=rng.randint(1, 9),
        )
        add(text, Intent.SOLVE_TSP)

    def make_kp():
        template = rng.choice(KP_TEMPLATES)
        i1, i2, i3 = rng.sample(ITEMS, 3)
        text = template.format(
            i1=i1, i2=i2, i3=i3,
            w1=rng.randint(1, 9), w2=rng.randint(1, 9), w3=rng.randint(1, 9),
            v1=rng.randint(1, 9), v2=rng.randint(1, 9), v3=rng.randint(1, 9),
            W=rng.randint(3, 15),
        )
        add(text, Intent.SOLVE_KP)

    take(PER_INTENT, make_define)
    take(PER_INTENT, make_draw)
    take(PER_INTENT, make_apply)
    take(PER_INTENT, make_tsp)
    take(PER_INTENT, make_kp)
    return records


def gen_extraction_corpus(rng: random.Random) -> list[dict]:
    records: list[dict] = []

    def add(context, kind, expected_span, **slots):
        records.append(
            {
                "context": context,
                "question_form": kind.value,
                "slots": slots,
                "expected_span": expected_span,
            }
        )

    for _ in range(PER_QUESTION):
        template = rng.choice(PHASE_APPLY_TEMPLATES + ADVERSARIAL_PHASE_TEMPLATES)
        angle = rng.choice(ANGLE_FORMS)
        if "{ket}" in template:
            context = template.format(a=angle, ket=rng.choice(ADVERSARIAL_KETS))
        else:
            context = template.format(a=angle, b=rng.choice(ONE_QUBIT_BITS))
        add(context, QuestionKind.PHASE_SHIFT, angle)

    for _ in range(PER_QUESTION):
        template = rng.choice(ROTATE_TEMPLATES)
        angle, axis = rng.choice(ANGLE_FORMS), rng.choice(AXES)
        context = template.format(a=angle, ax=axis, b=rng.choice(ONE_QUBIT_BITS))
        add(context, QuestionKind.ROTATION_ANGLE, angle)
        # reuse every other rotation context for the axis question
        if sum(r["question_form"] == "rotation_axis" for r in records) < PER_QUESTION:
            add(context, QuestionKind.ROTATION_AXIS, axis)
    while sum(r["question_form"] == "rotation_axis" for r in records) < PER_QUESTION:
        template = rng.choice(ROTATE_TEMPLATES)
        angle, axis = rng.choice(ANGLE_FORMS), rng.choice(AXES)
        context = template.format(a=angle, ax=axis, b=rng.choice(ONE_QUBIT_BITS))
        add(context, QuestionKind.ROTATION_AXIS, axis)

    for _ in range(PER_QUESTION):
        template = rng.choice(TSP_TEMPLATES)
        a, b, c = rng.sample(CITIES, 3)
        d1, d2, d3 = rng.randint(1, 9), rng.randint(1, 9), rng.randint(1, 9)
        context = template.format(A=a, B=b, C=c, d1=d1, d2=d2, d3=d3)
        add(context, QuestionKind.TSP_CITIES, f"{a}, {b} and {c}")
        pair, span = rng.choice([((a, b), d1), ((a, c), d2), ((b, c), d3)])
        add(
            context,
            QuestionKind.TSP_DISTANCE,
            str(span),
            city1=pair[0],
            city2=pair[1],
        )

    for _ in range(PER_QUESTION):
        template = rng.choice(KP_TEMPLATES)
        i1, i2, i3 = rng.sample(ITEMS, 3)
        w = [rng.randint(1, 9) for _ in range(3)]
        v = [rng.randint(1, 9) for _ in range(3)]
        W = rng.randint(3, 15)
        context = template.format(
            i1=i1, i2=i2, i3=i3, w1=w[0], w2=w[1], w3=w[2],
            v1=v[0], v2=v[1], v3=v[2], W=W,
        )
        add(context, QuestionKind.KP_ITEMS, f"a {i1}, a {i2} and a {i3}")
        add(context, QuestionKind.KP_MAX_WEIGHT, str(W))
        which = rng.randrange(3)
        item = (i1, i2, i3)[which]
        add(context, QuestionKind.KP_ITEM_WEIGHT, str(w[which]), item=item)
        add(context, QuestionKind.KP_ITEM_VALUE, str(v[which]), item=item)

    return records


def gen_adversarial_corpus(rng: random.Random) -> list[dict]:
    records = []
    for _ in range(40):
        template = rng.choice(ADVERSARIAL_PHASE_TEMPLATES)
        angle = rng.choice(ANGLE_FORMS)
        context = template.format(a=angle, ket=rng.choice(ADVERSARIAL_KETS))
        records.append(
            {
                "context": context,
                "question_form": QuestionKind.PHASE_SHIFT.value,
                "slots": {},
                "expected_span": angle,
            }
        )
    return records


def to_question(record: dict) -> ExtractionQuestion:
    return ExtractionQuestion(QuestionKind(record["question_form"]), **record["slots"])


def validate(intent_records, extraction_records) -> None:
    bad = []
    for record in intent_records:
        query = classify(record["text"])
        expected_gate = record.get("expected_gate")
        got_gate = query.gate.value if query.gate else None
        if query.intent.value != record["expected_intent"] or got_gate != expected_gate:
            bad.append((record, query.intent.value, got_gate))
    if bad:
        for record, intent, gate in bad[:20]:
            print(f"INTENT MISS: {record} -> {intent}/{gate}")
        raise SystemExit(f"{len(bad)} intent misclassifications")

    extractor = DeterministicExtractor()
    misses = []
    for record in extraction_records:
        try:
            answer = extractor.extract(to_question(record), record["context"])
            ok = exact_match(answer.span, record["expected_span"])
        except Exception as exc:
            answer, ok = exc, False
        if not ok:
            misses.append((record, answer))
    if misses:
        for record, got in misses[:20]:
            print(f"EXTRACTION MISS: {record['question_form']} {record['slots']} "
                  f"expected {record['expected_span']!r} got {got!r}\n"
                  f"  context: {record['context']}")
        raise SystemExit(f"{len(misses)} extraction misses")


def write_jsonl(path: Path, records: list[dict]) -> None:
    with path.open("w", encoding="utf-8") as fh:
        for record in records:
            fh.write(json.dumps(record, ensure_ascii=False) + "\n")


def main() -> None:
    rng = random.Random(20240817)
    intent_records = gen_intent_corpus(rng)
    extraction_records = gen_extraction_corpus(rng)
    adversarial_records = gen_adversarial_corpus(rng)
    validate(intent_records, extraction_records)

    CORPUS_DIR.mkdir(parents=True, exist_ok=True)
    write_jsonl(CORPUS_DIR / "intent.jsonl", intent_records)
    write_jsonl(CORPUS_DIR / "extraction.jsonl", extraction_records)
    write_jsonl(CORPUS_DIR / "adversarial.jsonl", adversarial_records)
    counts = {}
    for r in extraction_records:
        counts[r["question_form"]] = counts.get(r["question_form"], 0) + 1
    print(f"intent: {len(intent_records)} records")
    print(f"extraction: {len(extraction_records)} records {counts}")
    print(f"adversarial: {len(adversarial_records)} records")


if __name__ == "__main__":
    main()
