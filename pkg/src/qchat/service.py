"""HTTP/JSON service: classify -> extract -> confirm -> answer/compute.

Confirmation is mandatory: every gate, TSP and KP request is restated with
its extracted parameters and answered only after POST /confirm. Sessions
live in memory; feedback and retained questions go to append-only JSONL
files under the data directory. Deleting a session (explicitly or via idle
expiry) erases the conversation and keeps only (question text, intent)
pairs, never linked to the session id.
"""
from __future__ import annotations

import json
import os
import threading
import time
import uuid
from concurrent.futures import ThreadPoolExecutor, TimeoutError as FutureTimeout
from dataclasses import dataclass, field as dc_field
from enum import Enum
from pathlib import Path

from fastapi import FastAPI, HTTPException
from pydantic import BaseModel

from . import ENGINE_VERSION, codegen
from .errors import (
    InstanceTooLargeError,
    KetParseError,
    MixedArityError,
    NoFeasibleSolutionError,
    QChatError,
)
from .extraction import collect_kp_params, collect_tsp_params, find_ket_span, parse_ket
from .gates import GateId, GateParams, apply_gate, catalog, define_gate, draw_gate
from .intent import GATE_INTENTS, Intent, classify, confirm_interpretation
from .qubo import KpInstance, TspInstance, kp_auto_penalty, tsp_auto_penalty
from .quantum import render_ket
from .variational import QUBIT_CEILING, SolverConfig, solve_kp, solve_tsp

SCHEMA_VERSION = "1"
MAX_TEXT_BYTES = 8 * 1024
MAX_COMMENT_CHARS = 2000
DEFAULT_IDLE_TIMEOUT_S = 60 * 60
DEFAULT_COMPUTE_TIMEOUT_S = 120.0

CAPABILITY_MESSAGE = (
    "I can help with five kinds of requests: defining a quantum gate, drawing "
    "a quantum gate, applying a gate to an initial state, solving a "
    "travelling-salesperson problem, and solving a knapsack problem. "
    "Supported gates: Identity, Pauli-X, Pauli-Y, Pauli-Z, S, S-dagger, "
    "Hadamard, Phase, Rx, Ry, Rz, CNOT, CZ and SWAP."
)


# --- envelopes ----------------------------------------------------------------


class CodeBlock(BaseModel):
    framework_tag: str
    source_text: str
    template_id: str


class Provenance(BaseModel):
    intent: str
    params: dict
    engine_version: str = ENGINE_VERSION
    seed: int | None = None


class ComputeOffer(BaseModel):
    available: bool
    compute_token: str | None = None
    reason: str | None = None


class AnswerEnvelope(BaseModel):
    schema_version: str = SCHEMA_VERSION
    kind: str = "answer"
    session_id: str
    intent: str
    text: str
    diagram: str | None = None
    final_state: str | None = None
    code: CodeBlock | None = None
    compute: ComputeOffer | None = None
    provenance: Provenance | None = None


class ConfirmationEnvelope(BaseModel):
    schema_version: str = SCHEMA_VERSION
    kind: str = "confirmation"
    session_id: str
    intent: str
    gate: str | None = None
    restatement: str
    params: dict
    missing_fields: list[str] = []
    assumed_fields: list[str] = []
    options: list[str] = ["accept", "modify"]


class SolveEnvelope(BaseModel):
    schema_version: str = SCHEMA_VERSION
    kind: str = "solve"
    session_id: str
    intent: str
    text: str
    solution: dict
    result: dict
    provenance: Provenance


class FeedbackAck(BaseModel):
    schema_version: str = SCHEMA_VERSION
    kind: str = "ack"
    receipt_id: str


class DeleteAck(BaseModel):
    schema_version: str = SCHEMA_VERSION
    kind: str = "ack"
    retained_questions: int


# --- session state ------------------------------------------------------------


class PendingStatus(str, Enum):
    AWAITING_CONFIRMATION = "awaiting_confirmation"
    CONFIRMED = "confirmed"
    COMPUTING = "computing"
    DONE = "done"


_STATUS_ORDER = [
    PendingStatus.AWAITING_CONFIRMATION,
    PendingStatus.CONFIRMED,
    PendingStatus.COMPUTING,
    PendingStatus.DONE,
]


@dataclass
class PendingRequest:
    intent: Intent
    gate: GateId | None
    params: dict
    status: PendingStatus = PendingStatus.AWAITING_CONFIRMATION
    compute_token: str | None = None
    confirmed_params: dict | None = None
    cached_confirm: tuple[str, dict] | None = None  # (payload key, envelope)

    def advance(self, new: PendingStatus) -> None:
        if _STATUS_ORDER.index(new) < _STATUS_ORDER.index(self.status):
            raise ValueError(f"status cannot move back from {self.status} to {new}")
        self.status = new


@dataclass
class Message:
    role: str
    text: str
    intent: str | None
    created_at: float


@dataclass
class Session:
    id: str
    created_at: float
    last_active: float
    messages: list[Message] = dc_field(default_factory=list)
    pending: PendingRequest | None = None
    lock: threading.RLock = dc_field(default_factory=threading.RLock)


class Store:
    """In-memory session table plus append-only JSONL persistence."""

    def __init__(
        self,
        data_dir: str | Path,
        idle_timeout_s: float = DEFAULT_IDLE_TIMEOUT_S,
        clock=time.time,
    ):
        self.data_dir = Path(data_dir)
        self.data_dir.mkdir(parents=True, exist_ok=True)
        self.idle_timeout_s = idle_timeout_s
        self.clock = clock
        self.sessions: dict[str, Session] = {}
        self._lock = threading.RLock()

    @property
    def feedback_path(self) -> Path:
        return self.data_dir / "feedback.jsonl"

    @property
    def retained_path(self) -> Path:
        return self.data_dir / "retained_questions.jsonl"

    def create_session(self) -> Session:
        with self._lock:
            session = Session(
                id=uuid.uuid4().hex, created_at=self.clock(), last_active=self.clock()
            )
            self.sessions[session.id] = session
            return session

    def get(self, session_id: str) -> Session | None:
        self.expire_idle()
        with self._lock:
            session = self.sessions.get(session_id)
            if session:
                session.last_active = self.clock()
            return session

    def expire_idle(self) -> None:
        """Idle sessions take the same retention path as explicit deletion."""
        with self._lock:
            now = self.clock()
            expired = [
                sid
                for sid, session in self.sessions.items()
                if now - session.last_active > self.idle_timeout_s
            ]
        for sid in expired:
            self.delete_session(sid)

    def delete_session(self, session_id: str) -> int | None:
        with self._lock:
            session = self.sessions.pop(session_id, None)
        if session is None:
            return None
        retained = 0
        with self._lock:
            with self.retained_path.open("a", encoding="utf-8") as fh:
                for message in session.messages:
                    if message.role != "user":
                        continue
                    fh.write(
                        json.dumps(
                            {
                                "text": message.text,
                                "intent": message.intent,
                                "created_at": message.created_at,
                            },
                            ensure_ascii=False,
                        )
                        + "\n"
                    )
                    retained += 1
            self._unlink_feedback(session_id)
        return retained

    def append_feedback(self, session_id: str, stars: int, comment: str | None) -> str:
        receipt_id = uuid.uuid4().hex
        record = {
            "receipt_id": receipt_id,
            "session_id": session_id,
            "stars": stars,
            "comment": comment,
            "created_at": self.clock(),
        }
        with self._lock:
            with self.feedback_path.open("a", encoding="utf-8") as fh:
                fh.write(json.dumps(record, ensure_ascii=False) + "\n")
        return receipt_id

    def _unlink_feedback(self, session_id: str) -> None:
        """Feedback rows survive session deletion, but unlinked."""
        if not self.feedback_path.exists():
            return
        lines = self.feedback_path.read_text(encoding="utf-8").splitlines()
        rewritten = []
        for line in lines:
            record = json.loads(line)
            if record.get("session_id") == session_id:
                record["session_id"] = None
            rewritten.append(json.dumps(record, ensure_ascii=False))
        tmp = self.feedback_path.with_suffix(".tmp")
        tmp.write_text("\n".join(rewritten) + ("\n" if rewritten else ""), encoding="utf-8")
        tmp.replace(self.feedback_path)


# --- parameter plumbing -------------------------------------------------------


def _gate_param_fields(gate: GateId | None, intent: Intent, text: str) -> tuple[dict, list[str]]:
    """Editable parameter dict plus the names of anything not extracted."""
    from .extraction import ExtractionQuestion, QuestionKind, extract

    params: dict = {"gate": gate.value if gate else None}
    missing: list[str] = []
    if gate is GateId.PHASE:
        try:
            params["phase_shift"] = float(
                extract(ExtractionQuestion(QuestionKind.PHASE_SHIFT), text).value
            )
        except QChatError:
            missing.append("phase_shift")
    if gate in (GateId.RX, GateId.RY, GateId.RZ):
        try:
            params["angle"] = float(
                extract(ExtractionQuestion(QuestionKind.ROTATION_ANGLE), text).value
            )
        except QChatError:
            missing.append("angle")
    if intent is Intent.APPLY_GATE:
        span = find_ket_span(text)
        if span is None and gate is not None:
            missing.append("initial_state")
        else:
            params["initial_state"] = span
    return params, missing


def _tsp_param_fields(text: str) -> tuple[dict, list[str], list[str]]:
    try:
        params, missing, assumed = collect_tsp_params(text)
    except QChatError:
        return {"cities": [], "distances": {}}, ["cities"], []
    distances = {f"{a}->{b}": v for (a, b), v in sorted(params.distances.items())}
    return (
        {"cities": list(params.cities), "distances": distances},
        missing,
        assumed,
    )


def _kp_param_fields(text: str) -> tuple[dict, list[str]]:
    try:
        params, missing = collect_kp_params(text)
    except QChatError:
        return {"items": [], "weights": {}, "values": {}, "capacity": None}, ["items"]
    return (
        {
            "items": list(params.items),
            "weights": dict(params.weights),
            "values": dict(params.values),
            "capacity": params.capacity,
        },
        missing,
    )


def _invalid(field: str, message: str) -> HTTPException:
    return HTTPException(status_code=422, detail={"field": field, "message": message})


def _validated_gate_call(intent: Intent, params: dict):
    gate_value = params.get("gate")
    if not gate_value:
        raise _invalid("gate", "a gate is required")
    try:
        gate = GateId(str(gate_value).lower())
    except ValueError:
        raise _invalid("gate", f"unknown gate {gate_value!r}")
    slots = catalog()[gate].parameter_slots
    kwargs = {}
    for slot in slots:
        if params.get(slot) is None:
            raise _invalid(slot, f"{slot} is required for the {gate.value} gate")
        try:
            kwargs[slot] = float(params[slot])
        except (TypeError, ValueError):
            raise _invalid(slot, f"{slot} must be a number (radians)")
    gate_params = GateParams(**kwargs)
    initial = None
    if intent is Intent.APPLY_GATE:
        ket_text = params.get("initial_state")
        if not ket_text:
            raise _invalid("initial_state", "an initial state such as |0> is required")
        try:
            expr = parse_ket(str(ket_text))
        except (KetParseError, MixedArityError) as exc:
            raise _invalid("initial_state", str(exc))
        if expr.n_qubits != catalog()[gate].arity:
            raise _invalid(
                "initial_state",
                f"{gate.value} needs a {catalog()[gate].arity}-qubit state, "
                f"got {expr.n_qubits} qubits",
            )
        initial = expr
    return gate, gate_params, initial


def _validated_tsp_instance(params: dict) -> TspInstance:
    cities = params.get("cities") or []
    if len(cities) < 2:
        raise _invalid("cities", "need at least two cities")
    if len(set(cities)) != len(cities):
        raise _invalid("cities", "city names must be unique")
    distances = params.get("distances") or {}
    import numpy as np

    n = len(cities)
    matrix = np.zeros((n, n))
    for i, a in enumerate(cities):
        for j, b in enumerate(cities):
            if i == j:
                continue
            key = f"{a}->{b}"
            if key not in distances:
                raise _invalid(f"distances.{key}", "distance is missing")
            try:
                value = float(distances[key])
            except (TypeError, ValueError):
                raise _invalid(f"distances.{key}", "distance must be a number")
            if value < 0:
                raise _invalid(f"distances.{key}", "distance must be nonnegative")
            matrix[i][j] = value
    return TspInstance(labels=tuple(cities), distances=matrix)


def _validated_kp_instance(params: dict) -> KpInstance:
    items = params.get("items") or []
    if not items:
        raise _invalid("items", "need at least one item")
    if len(set(items)) != len(items):
        raise _invalid("items", "item names must be unique")
    weights, values = params.get("weights") or {}, params.get("values") or {}

    def integer_field(mapping: dict, kind: str, item: str) -> int:
        if item not in mapping:
            raise _invalid(f"{kind}.{item}", f"{kind[:-1]} is missing")
        raw = mapping[item]
        try:
            value = float(raw)
        except (TypeError, ValueError):
            raise _invalid(f"{kind}.{item}", "must be a number")
        if value <= 0:
            raise _invalid(f"{kind}.{item}", "must be positive")
        if value != int(value):
            raise _invalid(
                f"{kind}.{item}",
                f"must be an integer for the exact encoding; scale all "
                f"weights and the capacity by the same factor (for example "
                f"{raw} -> {int(round(value * 10))} with everything else x10)",
            )
        return int(value)

    capacity_raw = params.get("capacity")
    if capacity_raw is None:
        raise _invalid("capacity", "capacity is missing")
    try:
        capacity_value = float(capacity_raw)
    except (TypeError, ValueError):
        raise _invalid("capacity", "capacity must be a number")
    if capacity_value != int(capacity_value) or capacity_value < 1:
        raise _invalid("capacity", "capacity must be a positive integer")

    return KpInstance(
        items=tuple(items),
        weights=tuple(integer_field(weights, "weights", item) for item in items),
        values=tuple(integer_field(values, "values", item) for item in items),
        capacity=int(capacity_value),
    )


# --- answering ----------------------------------------------------------------


def _code_block(artifact: codegen.CodeArtifact) -> CodeBlock:
    return CodeBlock(
        framework_tag=artifact.framework_tag,
        source_text=artifact.source_text,
        template_id=artifact.template_id,
    )


def answer_gate_request(
    session_id: str, intent: Intent, params: dict
) -> AnswerEnvelope:
    gate, gate_params, initial_expr = _validated_gate_call(intent, params)
    provenance = Provenance(intent=intent.value, params=params)
    if intent is Intent.DEFINE_GATE:
        answer = define_gate(gate, gate_params)
        return AnswerEnvelope(
            session_id=session_id,
            intent=intent.value,
            text=answer.text,
            provenance=provenance,
        )
    if intent is Intent.DRAW_GATE:
        answer = draw_gate(gate, gate_params)
        return AnswerEnvelope(
            session_id=session_id,
            intent=intent.value,
            text=f"Here is the {catalog()[gate].display_name} gate as a circuit.",
            diagram=answer.diagram.text,
            code=_code_block(answer.code),
            provenance=provenance,
        )
    initial = initial_expr.to_statevector()
    notice = (
        "The initial state was renormalized to unit norm. "
        if initial_expr.renormalized
        else ""
    )
    answer = apply_gate(gate, gate_params, initial)
    return AnswerEnvelope(
        session_id=session_id,
        intent=intent.value,
        text=notice + answer.rendered_text,
        final_state=render_ket(answer.final),
        code=_code_block(answer.code),
        provenance=provenance,
    )


def _solver_code(intent: Intent, params: dict, seed: int) -> codegen.CodeArtifact:
    if intent is Intent.SOLVE_TSP:
        inst = _validated_tsp_instance(params)
        bindings = {
            "city_names": codegen.serialize_value(list(inst.labels)),
            "distance_matrix": codegen.serialize_value(
                [[float(x) for x in row] for row in inst.distances]
            ),
            "penalty": codegen.serialize_number(tsp_auto_penalty(inst)),
            "seed": codegen.serialize_number(seed),
        }
        return codegen.render("tsp_solver", bindings)
    inst = _validated_kp_instance(params)
    bindings = {
        "item_names": codegen.serialize_value(list(inst.items)),
        "weights": codegen.serialize_value(list(inst.weights)),
        "values": codegen.serialize_value(list(inst.values)),
        "capacity": codegen.serialize_number(inst.capacity),
        "penalty": codegen.serialize_number(kp_auto_penalty(inst)),
        "seed": codegen.serialize_number(seed),
    }
    return codegen.render("kp_solver", bindings)


def _computability(intent: Intent, params: dict) -> tuple[bool, str | None]:
    if intent is Intent.SOLVE_TSP:
        n = len(params.get("cities") or [])
        if n * n > QUBIT_CEILING:
            return False, (
                f"{n} cities need {n * n} qubits, above the in-process ceiling "
                f"of {QUBIT_CEILING}; run the generated code locally instead"
            )
    else:
        inst = _validated_kp_instance(params)
        from .qubo import slack_coefficients

        n_qubits = len(inst.items) + len(slack_coefficients(inst.capacity))
        if n_qubits > QUBIT_CEILING:
            return False, (
                f"{len(inst.items)} items plus slack bits need {n_qubits} "
                f"qubits, above the in-process ceiling of {QUBIT_CEILING}; "
                f"run the generated code locally instead"
            )
    return True, None


# --- the application ----------------------------------------------------------


class ChatRequest(BaseModel):
    session_id: str | None = None
    text: str


class ConfirmRequest(BaseModel):
    session_id: str
    edited_params: dict


class ComputeRequest(BaseModel):
    session_id: str
    compute_token: str
    config: dict | None = None


class FeedbackRequest(BaseModel):
    session_id: str
    stars: int
    comment: str | None = None


class DeleteRequest(BaseModel):
    session_id: str


def _solver_config(overrides: dict | None, seed_default: int = 7) -> SolverConfig:
    overrides = dict(overrides or {})
    allowed = {
        "seed", "qaoa_layers", "vqe_layers", "shots", "eval_budget",
        "n_starts", "vqe_sweeps", "penalty",
    }
    unknown = set(overrides) - allowed
    if unknown:
        raise _invalid("config", f"unknown config fields: {sorted(unknown)}")
    overrides.setdefault("seed", seed_default)
    try:
        return SolverConfig(**overrides)
    except TypeError as exc:
        raise _invalid("config", str(exc))


def create_app(store: Store, compute_timeout_s: float = DEFAULT_COMPUTE_TIMEOUT_S) -> FastAPI:
    app = FastAPI(title="qchat", version=ENGINE_VERSION.split("/")[1])
    solver_pool = ThreadPoolExecutor(max_workers=os.cpu_count() or 2)
    app.state.store = store

    def session_or_404(session_id: str) -> Session:
        session = store.get(session_id)
        if session is None:
            raise HTTPException(status_code=404, detail="unknown session")
        return session

    @app.post("/chat")
    def chat(request: ChatRequest) -> dict:
        text = request.text
        if len(text.encode("utf-8")) > MAX_TEXT_BYTES:
            raise HTTPException(status_code=413, detail="message too large")
        if not text.strip():
            raise HTTPException(status_code=400, detail="empty message")
        if request.session_id:
            session = session_or_404(request.session_id)
        else:
            session = store.create_session()

        with session.lock:
            query = classify(text)
            session.messages.append(
                Message("user", text, query.intent.value, store.clock())
            )

            if query.intent is Intent.UNKNOWN:
                envelope = AnswerEnvelope(
                    session_id=session.id, intent=query.intent.value,
                    text=CAPABILITY_MESSAGE,
                    provenance=Provenance(intent=query.intent.value, params={}),
                )
                session.messages.append(
                    Message("assistant", envelope.text, None, store.clock())
                )
                return envelope.model_dump()

            if query.intent in GATE_INTENTS and query.gate is None:
                mention = query.matched_evidence[-1] if query.matched_evidence else "that gate"
                envelope = AnswerEnvelope(
                    session_id=session.id, intent=query.intent.value,
                    text=(
                        f"I do not recognize {mention!r}. {CAPABILITY_MESSAGE} "
                        "Which of these did you mean?"
                    ),
                    provenance=Provenance(intent=query.intent.value, params={}),
                )
                session.messages.append(
                    Message("assistant", envelope.text, None, store.clock())
                )
                return envelope.model_dump()

            assumed: list[str] = []
            if query.intent in GATE_INTENTS:
                params, missing = _gate_param_fields(query.gate, query.intent, text)
            elif query.intent is Intent.SOLVE_TSP:
                params, missing, assumed = _tsp_param_fields(text)
            else:
                params, missing = _kp_param_fields(text)

            session.pending = PendingRequest(
                intent=query.intent, gate=query.gate, params=params
            )
            envelope = ConfirmationEnvelope(
                session_id=session.id,
                intent=query.intent.value,
                gate=query.gate.value if query.gate else None,
                restatement=confirm_interpretation(query).text,
                params=params,
                missing_fields=missing,
                assumed_fields=assumed,
            )
            session.messages.append(
                Message("assistant", envelope.restatement, None, store.clock())
            )
            return envelope.model_dump()

    @app.post("/confirm")
    def confirm(request: ConfirmRequest) -> dict:
        session = session_or_404(request.session_id)
        with session.lock:
            pending = session.pending
            if pending is None:
                raise HTTPException(status_code=404, detail="no pending request")
            payload_key = json.dumps(request.edited_params, sort_keys=True)
            if pending.status is not PendingStatus.AWAITING_CONFIRMATION:
                if pending.cached_confirm and pending.cached_confirm[0] == payload_key:
                    return pending.cached_confirm[1]
                raise HTTPException(
                    status_code=404, detail="no request awaiting confirmation"
                )

            params = dict(pending.params)
            params.update(request.edited_params)

            if pending.intent in GATE_INTENTS:
                envelope = answer_gate_request(session.id, pending.intent, params)
                pending.confirmed_params = params
                pending.advance(PendingStatus.CONFIRMED)
                pending.advance(PendingStatus.DONE)
                result = envelope.model_dump()
            else:
                computable, reason = _computability(pending.intent, params)
                seed = int(params.get("seed", 7))
                artifact = _solver_code(pending.intent, params, seed)
                pending.confirmed_params = params
                pending.advance(PendingStatus.CONFIRMED)
                # the token exists either way; /compute answers 422 with
                # code-only guidance when the instance is over the ceiling
                token = uuid.uuid4().hex
                pending.compute_token = token
                offer = ComputeOffer(
                    available=computable, compute_token=token, reason=reason
                )
                problem = (
                    "travelling-salesperson"
                    if pending.intent is Intent.SOLVE_TSP
                    else "knapsack"
                )
                envelope = AnswerEnvelope(
                    session_id=session.id,
                    intent=pending.intent.value,
                    text=(
                        f"Here is ready-to-run code for your {problem} instance. "
                        + (
                            "I can also compute the solution right here."
                            if computable
                            else f"Computing here is unavailable: {reason}."
                        )
                    ),
                    code=_code_block(artifact),
                    compute=offer,
                    provenance=Provenance(
                        intent=pending.intent.value, params=params, seed=seed
                    ),
                )
                result = envelope.model_dump()
            pending.cached_confirm = (payload_key, result)
            session.messages.append(
                Message("assistant", result.get("text", ""), None, store.clock())
            )
            return result

    @app.post("/compute")
    def compute(request: ComputeRequest) -> dict:
        session = session_or_404(request.session_id)
        with session.lock:
            pending = session.pending
            if (
                pending is None
                or pending.status is not PendingStatus.CONFIRMED
                or pending.compute_token != request.compute_token
                or pending.intent in GATE_INTENTS
            ):
                raise HTTPException(
                    status_code=409, detail="no confirmed computable request"
                )
            params = pending.confirmed_params
            computable, reason = _computability(pending.intent, params)
            if not computable:
                raise HTTPException(
                    status_code=422,
                    detail=f"{reason}; the generated code from the confirmation "
                    "answer runs the same computation locally",
                )
            config = _solver_config(
                request.config, seed_default=int(params.get("seed", 7))
            )
            pending.advance(PendingStatus.COMPUTING)

        def run():
            if pending.intent is Intent.SOLVE_TSP:
                inst = _validated_tsp_instance(params)
                result, tour = solve_tsp(inst, config)
                solution = {
                    "order": [inst.labels[i] for i in tour.order],
                    "cost": tour.cost,
                }
                text = (
                    "Best tour: "
                    + " -> ".join(solution["order"] + [solution["order"][0]])
                    + f" with total cost {tour.cost}."
                )
            else:
                inst = _validated_kp_instance(params)
                result, selection = solve_kp(inst, config)
                solution = {
                    "items": [inst.items[i] for i in selection.items],
                    "total_value": selection.total_value,
                    "total_weight": selection.total_weight,
                }
                text = (
                    f"Best selection: {', '.join(solution['items']) or '(nothing)'} "
                    f"with value {selection.total_value} and weight "
                    f"{selection.total_weight} (capacity {inst.capacity})."
                )
            return solution, text, result

        future = solver_pool.submit(run)
        try:
            solution, text, result = future.result(timeout=compute_timeout_s)
        except FutureTimeout:
            with session.lock:
                pending.status = PendingStatus.CONFIRMED  # allow a retry
            raise HTTPException(status_code=504, detail="computation timed out")
        except InstanceTooLargeError as exc:
            with session.lock:
                pending.status = PendingStatus.CONFIRMED
            raise HTTPException(status_code=422, detail=str(exc))
        except NoFeasibleSolutionError as exc:
            with session.lock:
                pending.status = PendingStatus.CONFIRMED
            raise HTTPException(status_code=500, detail=str(exc))

        with session.lock:
            pending.advance(PendingStatus.DONE)
            envelope = SolveEnvelope(
                session_id=session.id,
                intent=pending.intent.value,
                text=text,
                solution=solution,
                result={
                    "seed": result.seed,
                    "evaluations": result.evaluations,
                    "objective": result.objective,
                    "best_bits": list(result.best_bits),
                },
                provenance=Provenance(
                    intent=pending.intent.value, params=params, seed=result.seed
                ),
            )
            session.messages.append(
                Message("assistant", envelope.text, None, store.clock())
            )
            return envelope.model_dump()

    @app.post("/feedback")
    def feedback(request: FeedbackRequest) -> dict:
        session_or_404(request.session_id)
        if not 1 <= request.stars <= 5:
            raise HTTPException(
                status_code=422, detail="stars must be between 1 and 5"
            )
        if request.comment is not None and len(request.comment) > MAX_COMMENT_CHARS:
            raise HTTPException(
                status_code=422,
                detail=f"comment must be at most {MAX_COMMENT_CHARS} characters",
            )
        receipt_id = store.append_feedback(
            request.session_id, request.stars, request.comment
        )
        return FeedbackAck(receipt_id=receipt_id).model_dump()

    @app.delete("/session")
    def delete_session(request: DeleteRequest) -> dict:
        retained = store.delete_session(request.session_id)
        if retained is None:
            raise HTTPException(status_code=404, detail="unknown session")
        return DeleteAck(retained_questions=retained).model_dump()

    return app
