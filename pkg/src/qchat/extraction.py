"""Grammar-based parameter extraction: the nine supported questions plus
initial-state parsing, and the exact-match metric used to score them.

Extractors never fabricate: every returned span is a verbatim substring of
the context. Ambiguity and absence are surfaced as typed errors so the
confirmation flow can ask the user instead of guessing. The extractor class
sits behind the same (context, question) -> answer interface a learned QA
model would use.
"""
from __future__ import annotations

import math
import re
import string
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .errors import (
    AmbiguousError,
    EmptyCorpusError,
    KetParseError,
    MixedArityError,
    NotFoundError,
)


class QuestionKind(str, Enum):
    PHASE_SHIFT = "phase_shift"
    ROTATION_ANGLE = "rotation_angle"
    ROTATION_AXIS = "rotation_axis"
    TSP_CITIES = "tsp_cities"
    TSP_DISTANCE = "tsp_distance"
    KP_ITEMS = "kp_items"
    KP_MAX_WEIGHT = "kp_max_weight"
    KP_ITEM_WEIGHT = "kp_item_weight"
    KP_ITEM_VALUE = "kp_item_value"


_SLOTTED = {
    QuestionKind.TSP_DISTANCE: ("city1", "city2"),
    QuestionKind.KP_ITEM_WEIGHT: ("item",),
    QuestionKind.KP_ITEM_VALUE: ("item",),
}


@dataclass(frozen=True)
class ExtractionQuestion:
    kind: QuestionKind
    city1: str | None = None
    city2: str | None = None
    item: str | None = None

    def __post_init__(self):
        needed = _SLOTTED.get(self.kind, ())
        for slot in ("city1", "city2", "item"):
            have = getattr(self, slot) is not None
            if have != (slot in needed):
                raise ValueError(f"{self.kind.value} question misuses slot {slot!r}")


@dataclass(frozen=True)
class Answer:
    span: str
    value: object  # radians / float / str / list of names


@dataclass(frozen=True)
class TspParams:
    cities: tuple[str, ...]
    distances: dict[tuple[str, str], float]  # directed (from, to) pairs

    def missing_pairs(self) -> list[tuple[str, str]]:
        return [
            (a, b)
            for a in self.cities
            for b in self.cities
            if a != b and (a, b) not in self.distances
        ]


@dataclass(frozen=True)
class KpParams:
    items: tuple[str, ...]
    weights: dict[str, float]
    values: dict[str, float]
    capacity: float | None

    def missing_fields(self) -> list[str]:
        missing = []
        if self.capacity is None:
            missing.append("capacity")
        for item in self.items:
            if item not in self.weights:
                missing.append(f"weight:{item}")
            if item not in self.values:
                missing.append(f"value:{item}")
        return missing


# --- angle expressions -------------------------------------------------------

_NUM = r"\d+(?:\.\d+)?"
# order matters: longer, more specific forms first
_ANGLE_PATTERNS = (
    ("pi_fraction", rf"(?:{_NUM}\s*\*?\s*)?(?:π|pi)(?:\s*/\s*{_NUM})?"),
    ("degrees", rf"-?{_NUM}\s*(?:°|degrees?|deg\b)"),
    ("radians", rf"-?{_NUM}\s*(?:radians?|rad\b)"),
    ("bare", rf"-?{_NUM}"),
)
_ANGLE_RE = re.compile(
    "|".join(f"(?P<{name}>{pattern})" for name, pattern in _ANGLE_PATTERNS),
    re.IGNORECASE,
)
_PI_PARTS = re.compile(rf"(?:({_NUM})\s*\*?\s*)?(?:π|pi)(?:\s*/\s*({_NUM}))?", re.IGNORECASE)


def parse_angle(text: str) -> float:
    """Angle text to radians: pi fractions, degrees with explicit unit,
    or bare numbers read as radians."""
    m = _ANGLE_RE.fullmatch(text.strip())
    if m is None:
        raise NotFoundError(f"not an angle expression: {text!r}")
    if m.lastgroup == "pi_fraction":
        parts = _PI_PARTS.fullmatch(m.group(0).strip())
        k = float(parts.group(1)) if parts.group(1) else 1.0
        denom = float(parts.group(2)) if parts.group(2) else 1.0
        return k * math.pi / denom
    number = float(re.search(rf"-?{_NUM}", m.group(0)).group(0))
    if m.lastgroup == "degrees":
        return number * math.pi / 180.0
    return number  # radians, explicit or bare


# --- ket expressions ---------------------------------------------------------


@dataclass(frozen=True)
class KetExpression:
    """Parsed superposition. basis_bits are stored as written in the ket
    label, leftmost character first, so |10> keeps bits (1, 0) and denotes
    basis index 2 (qubit 0 is the rightmost character)."""

    terms: tuple[tuple[complex, tuple[int, ...]], ...]
    renormalized: bool = False

    @property
    def n_qubits(self) -> int:
        return len(self.terms[0][1])

    def to_statevector(self):
        from .quantum import Statevector

        n = self.n_qubits
        amps = np.zeros(2**n, dtype=complex)
        for coef, bits in self.terms:
            index = int("".join(str(b) for b in bits), 2)
            amps[index] += coef
        return Statevector(amps, n)


_KET_TOKEN = re.compile(r"\|([01]+)[⟩>]")
_SQRT = r"(?:sqrt\(\s*(\d+)\s*\)|√\s*\(?\s*(\d+)\s*\)?)"
_COEF = re.compile(
    rf"^\s*(?:(?P<num>{_NUM})\s*)?(?P<imag>i)?\s*(?:/\s*(?:(?P<den>{_NUM})|(?P<dsqrt>{_SQRT})))?\s*\*?\s*$"
)
_GLOBAL_DIV = re.compile(rf"^\((?P<body>.*)\)\s*/\s*(?:(?P<den>{_NUM})|{_SQRT})\s*$", re.DOTALL)

KET_NORM_TOL = 1e-6


def parse_ket(text: str) -> KetExpression:
    """Parse sums of optionally signed coefficient-ket terms; accepts
    rational, decimal and k/sqrt(m) coefficients and a global (...)/sqrt(m)
    divisor. Renormalizes (with a flag) when the norm is off by > 1e-6."""
    stripped = text.strip()
    if not stripped:
        raise KetParseError("empty state expression")
    divisor = 1.0
    m = _GLOBAL_DIV.match(stripped)
    if m:
        if m.group("den"):
            divisor = float(m.group("den"))
        else:
            root = next(g for g in m.groups()[2:] if g)
            divisor = math.sqrt(float(root))
        stripped = m.group("body")

    tokens = list(_KET_TOKEN.finditer(stripped))
    if not tokens:
        raise KetParseError(f"no |bits> token in {text!r}")
    terms: list[tuple[complex, tuple[int, ...]]] = []
    cursor = 0
    for tok in tokens:
        prefix = stripped[cursor : tok.start()]
        cursor = tok.end()
        sign = 1.0
        prefix = prefix.strip()
        while prefix and prefix[0] in "+-":
            if prefix[0] == "-":
                sign = -sign
            prefix = prefix[1:].strip()
        coef = _parse_coefficient(prefix) if prefix else 1.0
        bits = tuple(int(b) for b in tok.group(1))
        terms.append((sign * coef / divisor, bits))
    trailing = stripped[cursor:].strip()
    if trailing:
        raise KetParseError(f"unparsed trailing text {trailing!r}")

    lengths = {len(bits) for _, bits in terms}
    if len(lengths) != 1:
        raise MixedArityError(f"mixed ket widths {sorted(lengths)} in {text!r}")

    merged: dict[tuple[int, ...], complex] = {}
    for coef, bits in terms:
        merged[bits] = merged.get(bits, 0.0) + coef
    combined = tuple((c, b) for b, c in sorted(merged.items()))
    norm = math.sqrt(sum(abs(c) ** 2 for c, _ in combined))
    if norm == 0.0:
        raise KetParseError("state has zero norm")
    if abs(norm - 1.0) > KET_NORM_TOL:
        combined = tuple((c / norm, b) for c, b in combined)
        return KetExpression(terms=combined, renormalized=True)
    return KetExpression(terms=combined, renormalized=False)


def _parse_coefficient(text: str) -> complex:
    m = _COEF.match(text)
    if m is None or (m.group("num") is None and m.group("imag") is None):
        raise KetParseError(f"bad coefficient {text!r}")
    value = float(m.group("num")) if m.group("num") else 1.0
    if m.group("den"):
        value /= float(m.group("den"))
    elif m.group("dsqrt"):
        root = re.search(r"\d+", m.group("dsqrt")).group(0)
        value /= math.sqrt(float(root))
    return value * 1j if m.group("imag") else complex(value)


_KET_REGION = re.compile(
    rf"\(?\s*(?:[-+]?\s*(?:{_NUM}\s*)?i?\s*(?:/\s*(?:{_NUM}|{_SQRT}))?\s*\*?\s*"
    rf"\|[01]+[⟩>]\s*)+\)?(?:\s*/\s*(?:{_NUM}|{_SQRT}))?"
)


def find_ket_span(context: str) -> str | None:
    """Locate the ket-expression substring of an utterance, if any."""
    m = _KET_REGION.search(context)
    return m.group(0).strip() if m else None


# --- the nine question extractors -------------------------------------------

_AXIS_CUES = (
    r"(?:around|about|along)\s+the\s+([xyz])(?:\s*-\s*|\s+)axis",
    r"(?:around|about|along)\s+([xyz])\b",
    r"\b([xyz])\s*-\s*axis",
    r"\b([xyz])\s+axis",
    r"\b([xyz])\s+rotation",
    r"\brotation\s+(?:around|about)\s+([xyz])\b",
)

_PHASE_CUES = (
    rf"phase\s+shift\s+(?:of|is|=|:)?\s*(?P<angle>{{ANGLE}})",
    rf"phase\s+(?:of|is|=|:)\s*(?P<angle>{{ANGLE}})",
    rf"with\s+phase\s+(?P<angle>{{ANGLE}})",
    rf"phase\s+(?P<angle>{{ANGLE}})",
    rf"shifts?\s+the\s+phase\s+by\s+(?P<angle>{{ANGLE}})",
    # last resort: nearest angle expression after a phase/shift mention in the
    # same sentence; this is the cue the initial-state mask exists for
    rf"(?:phase|shift)\b[^.;?!]*?(?P<angle>{{ANGLE}})",
)

_ANGLE_CUES = (
    rf"(?:angle|rotation)\s+(?:of|is|=|:)\s*(?P<angle>{{ANGLE}})",
    rf"\bby\s+(?P<angle>{{ANGLE}})",
    rf"\bangle\s+(?P<angle>{{ANGLE}})",
    rf"rotation\s+through\s+(?P<angle>{{ANGLE}})",
)

_ANGLE_ALTERNATION = "|".join(p for _, p in _ANGLE_PATTERNS)

_ENUM_NAME = r"[A-Z][a-zA-Z]+"
_CITY_ENUM = re.compile(
    rf"({_ENUM_NAME}(?:\s*,\s*{_ENUM_NAME})*\s*,?\s+and\s+{_ENUM_NAME})"
)
_CITY_ANCHORS = (
    r"(?:visit(?:s|ing)?|through|of|covering|between)\s+",
    r"cities\s+(?:are\s+)?",
    r"",
)

_ITEM_WORD = r"[a-z]+"
_ITEM_ENUM = re.compile(
    rf"(an?\s+{_ITEM_WORD}(?:\s*,\s*an?\s+{_ITEM_WORD})*\s*,?\s+and\s+an?\s+{_ITEM_WORD})"
)
_ARTICLE = re.compile(r"^an?\s+")

_CAPACITY_CUES = (
    rf"holds?\s+(?:at\s+most|up\s+to)\s+(?P<num>{_NUM})",
    rf"carry\s+(?:at\s+most|up\s+to|no\s+more\s+than)\s+(?P<num>{_NUM})",
    rf"(?:weight\s+limit|capacity)\s+(?:of|is|=|:)?\s*(?P<num>{_NUM})",
    rf"limit(?:ed)?\s+(?:to|of|at)\s+(?P<num>{_NUM})",
    rf"no\s+more\s+than\s+(?P<num>{_NUM})",
    rf"maximum\s+(?:weight\s+)?(?:of\s+)?(?P<num>{_NUM})",
)

_WEIGHT_CUES = (
    rf"weigh(?:s|ing)?\s+(?:about\s+)?(?P<num>{_NUM})",
    rf"\((?P<num>{_NUM})\s*kg",
    rf"(?:weight|mass)\s+(?:of|is|=|:)?\s*(?P<num>{_NUM})",
    rf"is\s+(?P<num>{_NUM})\s*kg",
    rf"at\s+(?P<num>{_NUM})\s*kg",
)

_VALUE_CUES = (
    rf"(?:is\s+)?worth\s+(?P<num>{_NUM})",
    rf"valued?\s+(?:at|of|is|=|:)?\s*(?P<num>{_NUM})",
    rf"value\s*[:=]?\s*(?P<num>{_NUM})",
    rf"brings?\s+(?P<num>{_NUM})",
)

class DeterministicExtractor:
    """Pattern-table extractor for the nine question forms.

    ``mask_initial_state`` hides ket expressions and trailing state clauses
    before looking for phase/angle values; switching it off reproduces the
    classic confusion between a phase shift and the initial state, which the
    adversarial corpus exercises.
    """

    def __init__(self, mask_initial_state: bool = True):
        self.mask_initial_state = mask_initial_state

    # -- public API ---

    def extract(self, question: ExtractionQuestion, context: str) -> Answer:
        handler = {
            QuestionKind.PHASE_SHIFT: self._phase_shift,
            QuestionKind.ROTATION_ANGLE: self._rotation_angle,
            QuestionKind.ROTATION_AXIS: self._rotation_axis,
            QuestionKind.TSP_CITIES: self._tsp_cities,
            QuestionKind.TSP_DISTANCE: self._tsp_distance,
            QuestionKind.KP_ITEMS: self._kp_items,
            QuestionKind.KP_MAX_WEIGHT: self._kp_max_weight,
            QuestionKind.KP_ITEM_WEIGHT: self._kp_item_weight,
            QuestionKind.KP_ITEM_VALUE: self._kp_item_value,
        }[question.kind]
        answer = handler(question, context)
        assert answer.span in context, "extractor fabricated a span"
        return answer

    # -- helpers ---

    def _masked(self, context: str) -> str:
        """Blank out ket expressions (offsets preserved) so their digits are
        never mistaken for phase or rotation values."""
        if not self.mask_initial_state:
            return context
        return _KET_REGION.sub(lambda m: " " * len(m.group(0)), context)

    def _first_cue_match(
        self, cues: tuple[str, ...], haystack: str, group: str
    ) -> re.Match | None:
        matches = []
        for cue in cues:
            pattern = cue.replace("{ANGLE}", _ANGLE_ALTERNATION)
            m = re.search(pattern, haystack, re.IGNORECASE)
            if m:
                matches.append(m)
        if not matches:
            return None
        return min(matches, key=lambda m: (m.start(group), -len(m.group(group))))

    def _angle_answer(
        self, cues: tuple[str, ...], context: str, what: str
    ) -> Answer:
        haystack = self._masked(context)
        m = self._first_cue_match(cues, haystack, "angle")
        if m is None:
            raise NotFoundError(f"no {what} found")
        span = m.group("angle").strip()
        start = m.start("angle")
        original = context[start : start + len(span)]
        return Answer(span=original, value=parse_angle(span))

    # -- gate parameters ---

    def _phase_shift(self, question: ExtractionQuestion, context: str) -> Answer:
        return self._angle_answer(_PHASE_CUES, context, "phase shift")

    def _rotation_angle(self, question: ExtractionQuestion, context: str) -> Answer:
        return self._angle_answer(_ANGLE_CUES, context, "rotation angle")

    def _rotation_axis(self, question: ExtractionQuestion, context: str) -> Answer:
        haystack = self._masked(context)
        found: list[tuple[int, str]] = []
        for cue in _AXIS_CUES:
            for m in re.finditer(cue, haystack, re.IGNORECASE):
                found.append((m.start(1), m.group(1)))
        if not found:
            raise NotFoundError("no rotation axis found")
        found.sort()
        axes = {axis.lower() for _, axis in found}
        if len(axes) > 1:
            raise AmbiguousError("several rotation axes mentioned", sorted(axes))
        start, span = found[0]
        return Answer(span=context[start : start + len(span)], value=span.lower())

    # -- TSP parameters ---

    def _tsp_cities(self, question: ExtractionQuestion, context: str) -> Answer:
        for anchor in _CITY_ANCHORS:
            pattern = re.compile(anchor + _CITY_ENUM.pattern) if anchor else _CITY_ENUM
            m = pattern.search(context)
            if m:
                span = m.group(1) if anchor else m.group(0)
                names = re.findall(_ENUM_NAME, span)
                return Answer(span=span, value=names)
        raise NotFoundError("no city enumeration found")

    def _distance_mentions(
        self, city_from: str, city_to: str, context: str
    ) -> list[tuple[int, str, str]]:
        """(position, number text, kind) mentions; kind 'directed' states
        from->to, kind 'symmetric' states both directions at once."""
        a, b = re.escape(city_from), re.escape(city_to)
        directed = (
            rf"(?:from\s+)?{a}\s+to\s+{b}\s+(?:is|:|=|takes)?\s*(?P<num>{_NUM})",
            rf"{a}\s*(?:-|–|->)\s*{b}\s*[:=]?\s*(?P<num>{_NUM})",
        )
        symmetric = (
            rf"between\s+{a}\s+and\s+{b}\s+(?:is|:|=)?\s*(?P<num>{_NUM})",
            rf"{a}\s+and\s+{b}\s+are\s+(?P<num>{_NUM})\s*(?:km|miles|kilometers)?\s*apart",
            rf"{a}\s+is\s+(?P<num>{_NUM})\s*(?:km|miles|kilometers)?\s*(?:away\s+)?from\s+{b}",
        )
        mentions = []
        for kind, patterns in (("directed", directed), ("symmetric", symmetric)):
            for pattern in patterns:
                for m in re.finditer(pattern, context, re.IGNORECASE):
                    mentions.append((m.start("num"), m.group("num"), kind))
        return mentions

    def _tsp_distance(self, question: ExtractionQuestion, context: str) -> Answer:
        # the question itself is symmetric; mentions in either direction count
        mentions = self._distance_mentions(
            question.city1, question.city2, context
        ) + self._distance_mentions(question.city2, question.city1, context)
        if not mentions:
            raise NotFoundError(
                f"no distance between {question.city1} and {question.city2}"
            )
        mentions.sort()
        values = {float(num) for _, num, _ in mentions}
        if len(values) > 1:
            raise AmbiguousError(
                f"conflicting distances for {question.city1}-{question.city2}",
                sorted({num for _, num, _ in mentions}),
            )
        start, span, _ = mentions[0]
        return Answer(span=span, value=float(span))

    # -- KP parameters ---

    def _kp_items(self, question: ExtractionQuestion, context: str) -> Answer:
        m = _ITEM_ENUM.search(context)
        if m is None:
            raise NotFoundError("no item enumeration found")
        span = m.group(1)
        names = [
            _ARTICLE.sub("", part.strip())
            for part in re.split(r",| and ", span)
            if part.strip()
        ]
        return Answer(span=span, value=names)

    def _kp_max_weight(self, question: ExtractionQuestion, context: str) -> Answer:
        m = self._first_cue_match(_CAPACITY_CUES, context, "num")
        if m is None:
            raise NotFoundError("no capacity found")
        return Answer(span=m.group("num"), value=float(m.group("num")))

    def _item_windows(self, item: str, context: str) -> list[tuple[int, str]]:
        """Text windows following each mention of the item, each cut at the
        next sentence break or item-ish mention so values belonging to other
        items never leak in."""
        mentions = list(re.finditer(rf"\b{re.escape(item)}\b", context, re.IGNORECASE))
        if not mentions:
            raise NotFoundError(f"item {item!r} not mentioned")
        stop = re.compile(r"[.;?!]|,\s+an?\s+[a-z]+\s+(?:weigh|valued|worth|\()")
        windows = []
        for m in mentions:
            tail = context[m.end():]
            cut = stop.search(tail)
            windows.append((m.end(), tail[: cut.start() + 1] if cut else tail))
        return windows

    def _item_number(
        self, cues: tuple[str, ...], item: str, context: str, what: str
    ) -> Answer:
        for offset, window in self._item_windows(item, context):
            m = self._first_cue_match(cues, window, "num")
            if m is not None:
                start = offset + m.start("num")
                span = m.group("num")
                return Answer(span=context[start : start + len(span)], value=float(span))
        raise NotFoundError(f"no {what} for item {item!r}")

    def _kp_item_weight(self, question: ExtractionQuestion, context: str) -> Answer:
        return self._item_number(_WEIGHT_CUES, question.item, context, "weight")

    def _kp_item_value(self, question: ExtractionQuestion, context: str) -> Answer:
        return self._item_number(_VALUE_CUES, question.item, context, "value")


_DEFAULT_EXTRACTOR = DeterministicExtractor()


def extract(question: ExtractionQuestion, context: str) -> Answer:
    """Extract with the default (state-masking) extractor."""
    return _DEFAULT_EXTRACTOR.extract(question, context)


# --- exact match and corpus evaluation ---------------------------------------

_PUNCTUATION = str.maketrans("", "", string.punctuation)


def exact_match(predicted: str, expected: str) -> bool:
    """Case-insensitive equality after dropping punctuation characters and
    collapsing whitespace."""
    def canon(text: str) -> str:
        return re.sub(r"\s+", " ", text.translate(_PUNCTUATION)).strip().casefold()

    return canon(predicted) == canon(expected)


@dataclass(frozen=True)
class QuestionScore:
    asked: int
    failed: int

    @property
    def failure_rate(self) -> float:
        return self.failed / self.asked


@dataclass(frozen=True)
class CorpusRecord:
    context: str
    question: ExtractionQuestion
    expected_span: str


def evaluate_corpus(
    records: list[CorpusRecord],
    extractor: DeterministicExtractor | None = None,
) -> dict[str, QuestionScore]:
    """Per-question-form failure rates, highest first (the report shape is a
    sorted table of rates per question)."""
    if not records:
        raise EmptyCorpusError("corpus has no records")
    extractor = extractor or _DEFAULT_EXTRACTOR
    asked: dict[str, int] = {}
    failed: dict[str, int] = {}
    for record in records:
        form = record.question.kind.value
        asked[form] = asked.get(form, 0) + 1
        try:
            answer = extractor.extract(record.question, record.context)
            ok = exact_match(answer.span, record.expected_span)
        except Exception:
            ok = False
        if not ok:
            failed[form] = failed.get(form, 0) + 1
    scores = {
        form: QuestionScore(asked=n, failed=failed.get(form, 0))
        for form, n in asked.items()
    }
    return dict(
        sorted(scores.items(), key=lambda kv: (-kv[1].failure_rate, kv[0]))
    )


def format_report(scores: dict[str, QuestionScore]) -> str:
    """Aligned failure-rate table, one row per question form."""
    width = max(len(form) for form in scores)
    lines = [f"{'question':<{width}}  asked  failed  failure_rate"]
    for form, score in scores.items():
        lines.append(
            f"{form:<{width}}  {score.asked:>5d}  {score.failed:>6d}  "
            f"{score.failure_rate:>12.4f}"
        )
    return "\n".join(lines)


# --- assembling confirmed parameter sets -------------------------------------


def collect_tsp_params(context: str) -> tuple[TspParams, list[str], list[str]]:
    """Cities plus every stated pair distance.

    Returns (params, missing pair descriptions, assumed-symmetric pairs).
    A distance stated in one direction only is mirrored onto the reverse
    pair and reported as assumed so the confirmation view can flag it;
    nothing is guessed silently.
    """
    extractor = _DEFAULT_EXTRACTOR
    cities = tuple(
        extractor.extract(ExtractionQuestion(QuestionKind.TSP_CITIES), context).value
    )
    stated: dict[tuple[str, str], float] = {}
    ambiguous: list[str] = []
    for a in cities:
        for b in cities:
            if a == b:
                continue
            mentions = extractor._distance_mentions(a, b, context)
            values = sorted({float(num) for _, num, _ in mentions})
            if len(values) > 1:
                ambiguous.append(f"distance {a}->{b} (candidates: {values})")
                continue
            if values:
                stated[(a, b)] = values[0]
                if any(kind == "symmetric" for _, _, kind in mentions):
                    stated.setdefault((b, a), values[0])
    distances = dict(stated)
    assumed: list[str] = []
    for (a, b), value in sorted(stated.items()):
        if (b, a) not in stated:
            distances[(b, a)] = value
            assumed.append(f"{b}->{a}")
    params = TspParams(cities=cities, distances=distances)
    missing = [f"distance {a}->{b}" for a, b in params.missing_pairs()] + ambiguous
    return params, missing, assumed


def collect_kp_params(context: str) -> tuple[KpParams, list[str]]:
    """Items with their weights and values plus the capacity; anything the
    context does not state comes back in the missing list."""
    extractor = _DEFAULT_EXTRACTOR
    items = tuple(
        extractor.extract(ExtractionQuestion(QuestionKind.KP_ITEMS), context).value
    )
    weights: dict[str, float] = {}
    values: dict[str, float] = {}
    for item in items:
        try:
            weights[item] = float(
                extractor.extract(
                    ExtractionQuestion(QuestionKind.KP_ITEM_WEIGHT, item=item), context
                ).value
            )
        except NotFoundError:
            pass
        try:
            values[item] = float(
                extractor.extract(
                    ExtractionQuestion(QuestionKind.KP_ITEM_VALUE, item=item), context
                ).value
            )
        except NotFoundError:
            pass
    try:
        capacity = float(
            extractor.extract(
                ExtractionQuestion(QuestionKind.KP_MAX_WEIGHT), context
            ).value
        )
    except NotFoundError:
        capacity = None
    params = KpParams(items=items, weights=weights, values=values, capacity=capacity)
    return params, params.missing_fields()
