"""Deterministic intent classification for the five supported request kinds.

The default classifier is a keyword/pattern cascade kept deliberately
auditable: every decision is traceable to the matched spans it returns.
It sits behind the ``UtteranceClassifier`` protocol so a learned model can
replace it without touching the rest of the pipeline.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from typing import Protocol

from .errors import EmptyInputError
from .gates import GateId, catalog

# Intents outside this enum do not exist; Unknown is the artifact's own
# fallback for out-of-scope questions (answered with a capability summary).


class Intent(str, Enum):
    DEFINE_GATE = "define_gate"
    DRAW_GATE = "draw_gate"
    APPLY_GATE = "apply_gate"
    SOLVE_TSP = "solve_tsp"
    SOLVE_KP = "solve_kp"
    UNKNOWN = "unknown"


GATE_INTENTS = (Intent.DEFINE_GATE, Intent.DRAW_GATE, Intent.APPLY_GATE)


@dataclass(frozen=True)
class ClassifiedQuery:
    intent: Intent
    gate: GateId | None
    confidence: float
    matched_evidence: tuple[str, ...]


@dataclass(frozen=True)
class ConfirmationPrompt:
    text: str
    options: tuple[str, ...] = ("accept", "modify")


class UtteranceClassifier(Protocol):
    def classify(self, text: str) -> ClassifiedQuery: ...


_FAMILY_PATTERNS: dict[Intent, tuple[str, ...]] = {
    Intent.DEFINE_GATE: (
        r"\bdefine\b",
        r"\bdefinition\b",
        r"\bwhat\s+is\b",
        r"\bwhat's\b",
        r"\bwhat\s+are\b",
        r"\bdescribe\b",
        r"\bexplain\b",
        r"\btell\s+me\s+about\b",
        r"\bmeaning\s+of\b",
        r"\bintroduce\b",
    ),
    Intent.DRAW_GATE: (
        r"\bdraw\b",
        r"\bsketch\b",
        r"\bshow\b",
        r"\bcircuit\s+diagram\b",
        r"\bcircuit\s+representation\b",
        r"\bcircuit\b",
        r"\bdiagram\b",
        r"\bvisuali[sz]e\b",
        r"\brepresentation\b",
        r"\bdepict\b",
        r"\bhow\s+does\s+.{0,40}\blook\b",
    ),
    Intent.APPLY_GATE: (
        r"\bapply(?:ing)?\b",
        r"\bapplied\b",
        r"\bact(?:s|ing)?\s+on\b",
        r"\binitial\s+state\b",
        r"\bresulting\s+state\b",
        r"\bfinal\s+state\b",
        r"\bto\s+the\s+state\b",
        r"\bon\s+the\s+state\b",
        r"\|[01]+[⟩>]",
        r"\brotate\b",
        r"\bevolve\b",
    ),
    Intent.SOLVE_TSP: (
        r"\bsalesperson\b",
        r"\bsalesman\b",
        r"\bsaleswoman\b",
        r"\btravell?ing\s+sales\w*\b",
        r"\btsp\b",
        r"\bshortest\s+(?:route|tour|trip|path)\b",
        r"\b(?:best|optimal|cheapest|most\s+efficient)\s+(?:route|tour|order)\b",
        r"\bround\s+trip\b",
        r"\bvisit(?:s|ing)?\b.{0,80}\b(?:cities|city|stops?|towns?)\b",
        r"\bwhat\s+order\s+should\s+I\s+visit\b",
        r"\btravel\s+the\s+least\b",
        r"\bitinerary\b",
        r"\broute\b",
        r"\btour\b",
    ),
    Intent.SOLVE_KP: (
        r"\bknapsack\b",
        r"\bbackpack\b",
        r"\brucksack\b",
        r"\bweight\s+limit\b",
        r"\bcarrying\s+capacity\b",
        r"\bcan\s+(?:hold|carry)\b",
        r"\bholds?\s+at\s+most\b",
        r"\bmaximi[sz]e\b.{0,60}\bvalue\b",
        r"\bmost\s+valuable\b.{0,40}\b(?:items?|selection|subset)\b",
        r"\bwhich\s+items\b",
        r"\bpack\b",
    ),
}

_COMPILED = {
    intent: [re.compile(p, re.IGNORECASE) for p in patterns]
    for intent, patterns in _FAMILY_PATTERNS.items()
}

# Gate mentions: multi-word aliases match anywhere; single letters only in
# an explicit "<letter> gate" / "gate <letter>" construction, otherwise
# pronouns and axis letters would resolve as gates.
_AXIS_ROTATION = re.compile(
    r"\brotat\w*\b.{0,60}?\b([xyz])(?:\s*[- ]\s*axis|\s+axis)\b|"
    r"\b([xyz])(?:\s*[- ]\s*axis|\s+axis)\b.{0,40}?\brotat\w*\b",
    re.IGNORECASE | re.DOTALL,
)


def _gate_mention_patterns() -> list[tuple[re.Pattern, GateId]]:
    patterns: list[tuple[str, GateId]] = []
    for spec in catalog().values():
        for name in (spec.display_name, *spec.aliases):
            if len(name) == 1:
                patterns.append((rf"\b{re.escape(name)}\s+gate\b", spec.id))
                patterns.append((rf"\bgate\s+{re.escape(name)}\b", spec.id))
            elif name == "s†":
                patterns.append((r"s†", spec.id))
            else:
                patterns.append((rf"\b{re.escape(name)}\b", spec.id))
    patterns.sort(key=lambda pair: len(pair[0]), reverse=True)
    return [(re.compile(p, re.IGNORECASE), gate) for p, gate in patterns]


_GATE_PATTERNS = _gate_mention_patterns()
_UNKNOWN_GATE_MENTION = re.compile(r"\b([a-z][a-z0-9-]*)\s+gate\b", re.IGNORECASE)


def extract_gate_mention(text: str) -> tuple[GateId | None, str | None]:
    """Resolve the gate a request talks about.

    Returns (gate, matched span). An unresolvable "<word> gate" mention
    returns (None, span) so the caller can ask for clarification.
    """
    earliest: tuple[int, int, GateId, str] | None = None
    for pattern, gate in _GATE_PATTERNS:
        m = pattern.search(text)
        if m and (earliest is None or (m.start(), -len(m.group(0))) < earliest[:2]):
            earliest = (m.start(), -len(m.group(0)), gate, m.group(0))
    if earliest is not None:
        return earliest[2], earliest[3]
    axis = _AXIS_ROTATION.search(text)
    if axis:
        letter = (axis.group(1) or axis.group(2)).lower()
        return GateId(f"r{letter}"), axis.group(0)
    unknown = _UNKNOWN_GATE_MENTION.search(text)
    if unknown:
        return None, unknown.group(0)
    return None, None


def _family_spans(text: str) -> dict[Intent, list[str]]:
    spans: dict[Intent, list[str]] = {}
    for intent, patterns in _COMPILED.items():
        hits = [m.group(0) for p in patterns for m in [p.search(text)] if m]
        if hits:
            spans[intent] = hits
    return spans


class KeywordClassifier:
    """Rule cascade: verb cues pick the family, gate resolution arbitrates
    between gate and optimization intents, longest evidence breaks the rest."""

    def classify(self, text: str) -> ClassifiedQuery:
        if not text or not text.strip():
            raise EmptyInputError("utterance is empty")
        spans = _family_spans(text)
        gate, mention = extract_gate_mention(text)

        if not spans:
            return ClassifiedQuery(Intent.UNKNOWN, None, 0.0, ())

        # A gate family needs an actual gate mention (resolved or not) to be
        # viable; "what is ..." about something else entirely stays unknown.
        gate_families = {
            i: s for i, s in spans.items() if i in GATE_INTENTS and mention is not None
        }
        optimization = {i: s for i, s in spans.items() if i not in GATE_INTENTS}

        # Gate intents outrank optimization intents only when a catalog gate
        # actually resolves; otherwise the optimization evidence wins.
        if gate_families and optimization:
            candidates = gate_families if gate is not None else optimization
        else:
            candidates = gate_families or optimization
        if not candidates:
            return ClassifiedQuery(Intent.UNKNOWN, None, 0.0, ())

        if len(candidates) == 1:
            intent = next(iter(candidates))
            confidence = 1.0 if len(spans) == 1 else 0.75
        else:
            ranked = sorted(
                candidates.items(),
                key=lambda kv: (
                    max(len(s) for s in kv[1]),
                    sum(len(s) for s in kv[1]),
                ),
                reverse=True,
            )
            (first, first_spans), (second, second_spans) = ranked[0], ranked[1]
            first_key = (max(map(len, first_spans)), sum(map(len, first_spans)))
            second_key = (max(map(len, second_spans)), sum(map(len, second_spans)))
            if first_key == second_key:
                return ClassifiedQuery(Intent.UNKNOWN, None, 0.0, ())
            intent, confidence = first, 0.75

        evidence = tuple(candidates[intent])
        if mention:
            evidence = evidence + (mention,)
        resolved = gate if intent in GATE_INTENTS else None
        return ClassifiedQuery(intent, resolved, confidence, evidence)


_DEFAULT = KeywordClassifier()


def classify(text: str) -> ClassifiedQuery:
    """Classify with the default deterministic classifier."""
    return _DEFAULT.classify(text)


_TASK_PHRASES = {
    Intent.DEFINE_GATE: "define the {gate} gate",
    Intent.DRAW_GATE: "draw the {gate} gate",
    Intent.APPLY_GATE: "apply the {gate} gate to your initial state",
    Intent.SOLVE_TSP: (
        "solve a travelling-salesperson problem "
        "(shortest round trip through your cities)"
    ),
    Intent.SOLVE_KP: (
        "solve a knapsack problem (most valuable selection within the weight limit)"
    ),
}


def confirm_interpretation(query: ClassifiedQuery) -> ConfirmationPrompt:
    """Human-readable restatement offered before any answer is produced."""
    if query.intent is Intent.UNKNOWN:
        raise ValueError("nothing to confirm for an unknown intent")
    phrase = _TASK_PHRASES[query.intent]
    if query.intent in GATE_INTENTS:
        if query.gate is None:
            raise ValueError("gate request needs a resolved gate before confirmation")
        phrase = phrase.format(gate=catalog()[query.gate].display_name)
    return ConfirmationPrompt(text=f"You asked me to {phrase}. Is that correct?")
