"""Command line interface: ask, serve, eval, solve."""
from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

import numpy as np

from . import ENGINE_VERSION
from .errors import QChatError
from .extraction import (
    CorpusRecord,
    DeterministicExtractor,
    ExtractionQuestion,
    QuestionKind,
    evaluate_corpus,
    format_report,
)
from .intent import GATE_INTENTS, Intent, classify
from .qubo import KpInstance, TspInstance
from .variational import SolverConfig, solve_kp, solve_tsp

BUNDLED_CORPUS_DIR = Path(__file__).resolve().parent / "assets" / "corpus"


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="qchat",
        description=(
            "Deterministic quantum assistant: gate answers, TSP/KP solvers, "
            "and templated Qiskit code generation."
        ),
    )
    parser.add_argument("--version", action="version", version=ENGINE_VERSION)
    sub = parser.add_subparsers(dest="command", required=True)

    ask = sub.add_parser("ask", help="answer one utterance with auto-confirm")
    ask.add_argument("text", help="the request, quoted")
    ask.add_argument("--json", action="store_true", help="print the raw envelope")
    ask.add_argument("--compute", action="store_true",
                     help="also compute TSP/KP solutions in-process")
    ask.add_argument("--seed", type=int, default=7)

    serve = sub.add_parser("serve", help="run the HTTP service")
    serve.add_argument("--port", type=int,
                       default=int(os.environ.get("QCHAT_PORT", "8000")))
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--data-dir",
                       default=os.environ.get("QCHAT_DATA_DIR", "./qchat-data"))
    serve.add_argument("--ui-dir", default=None,
                       help="serve a built frontend directory at /ui")

    ev = sub.add_parser("eval", help="score the intent and extraction corpora")
    ev.add_argument("--corpus", default=None,
                    help="corpus directory (defaults to the bundled corpora)")

    solve = sub.add_parser("solve", help="run a solver on an instance file")
    group = solve.add_mutually_exclusive_group(required=True)
    group.add_argument("--tsp", metavar="FILE", help="TSP instance JSON")
    group.add_argument("--kp", metavar="FILE", help="KP instance JSON")
    solve.add_argument("--seed", type=int, default=7)
    solve.add_argument("--shots", type=int, default=4096)
    solve.add_argument("--eval-budget", type=int, default=400)
    solve.add_argument("--starts", type=int, default=4)
    solve.add_argument("--vqe-layers", type=int, default=2)
    solve.add_argument("--vqe-sweeps", type=int, default=2)
    solve.add_argument("--qaoa-layers", type=int, default=2)
    solve.add_argument("--penalty", type=float, default=None)
    solve.add_argument("--json", action="store_true")

    args = parser.parse_args(argv)
    try:
        if args.command == "ask":
            return cmd_ask(args)
        if args.command == "serve":
            return cmd_serve(args)
        if args.command == "eval":
            return cmd_eval(args)
        return cmd_solve(args)
    except QChatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def cmd_ask(args) -> int:
    from .service import (
        CAPABILITY_MESSAGE,
        _computability,
        _gate_param_fields,
        _kp_param_fields,
        _solver_code,
        _tsp_param_fields,
        answer_gate_request,
    )

    query = classify(args.text)
    if query.intent is Intent.UNKNOWN:
        print(CAPABILITY_MESSAGE)
        return 0
    if query.intent in GATE_INTENTS and query.gate is None:
        print(f"unrecognized gate in: {args.text!r}", file=sys.stderr)
        print(CAPABILITY_MESSAGE)
        return 1

    if query.intent in GATE_INTENTS:
        params, missing = _gate_param_fields(query.gate, query.intent, args.text)
    elif query.intent is Intent.SOLVE_TSP:
        params, missing, _ = _tsp_param_fields(args.text)
    else:
        params, missing = _kp_param_fields(args.text)
    if missing:
        print(f"cannot auto-confirm, missing: {', '.join(missing)}", file=sys.stderr)
        return 1

    if query.intent in GATE_INTENTS:
        try:
            envelope = answer_gate_request("cli", query.intent, params)
        except Exception as exc:
            print(f"error: {_detail(exc)}", file=sys.stderr)
            return 1
        if args.json:
            print(json.dumps(envelope.model_dump(), indent=2, ensure_ascii=False))
            return 0
        print(envelope.text)
        if envelope.diagram:
            print()
            print(envelope.diagram)
        if envelope.code:
            print()
            print(f"# --- code ({envelope.code.framework_tag}) ---")
            print(envelope.code.source_text)
        return 0

    artifact = _solver_code(query.intent, params, args.seed)
    if not args.json:
        print(f"# --- code ({artifact.framework_tag}) ---")
        print(artifact.source_text)
    payload = {"intent": query.intent.value, "params": params,
               "code": artifact.source_text}
    if args.compute:
        computable, reason = _computability(query.intent, params)
        if not computable:
            print(f"cannot compute in-process: {reason}", file=sys.stderr)
            return 1
        config = SolverConfig(seed=args.seed)
        if query.intent is Intent.SOLVE_TSP:
            inst = _instance_from_params_tsp(params)
            result, tour = solve_tsp(inst, config)
            solution = {"order": [inst.labels[i] for i in tour.order], "cost": tour.cost}
            print(f"best tour: {' -> '.join(solution['order'])} (cost {tour.cost})")
        else:
            inst = _instance_from_params_kp(params)
            result, selection = solve_kp(inst, config)
            solution = {
                "items": [inst.items[i] for i in selection.items],
                "total_value": selection.total_value,
                "total_weight": selection.total_weight,
            }
            print(f"best selection: {', '.join(solution['items']) or '(nothing)'} "
                  f"(value {selection.total_value}, weight {selection.total_weight})")
        payload["solution"] = solution
        payload["seed"] = result.seed
    if args.json:
        print(json.dumps(payload, indent=2, ensure_ascii=False))
    return 0


def _detail(exc: Exception) -> str:
    detail = getattr(exc, "detail", None)
    return str(detail) if detail is not None else str(exc)


def _instance_from_params_tsp(params: dict) -> TspInstance:
    cities = params["cities"]
    n = len(cities)
    matrix = np.zeros((n, n))
    for i, a in enumerate(cities):
        for j, b in enumerate(cities):
            if i != j:
                matrix[i][j] = float(params["distances"][f"{a}->{b}"])
    return TspInstance(labels=tuple(cities), distances=matrix)


def _instance_from_params_kp(params: dict) -> KpInstance:
    items = params["items"]
    return KpInstance(
        items=tuple(items),
        weights=tuple(int(params["weights"][i]) for i in items),
        values=tuple(int(params["values"][i]) for i in items),
        capacity=int(params["capacity"]),
    )


def cmd_serve(args) -> int:
    import uvicorn

    from .service import Store, create_app

    timeout = float(os.environ.get("QCHAT_COMPUTE_TIMEOUT", "120"))
    app = create_app(Store(args.data_dir), compute_timeout_s=timeout)
    if args.ui_dir:
        from starlette.staticfiles import StaticFiles

        app.mount("/ui", StaticFiles(directory=args.ui_dir, html=True), name="ui")
    uvicorn.run(app, host=args.host, port=args.port)
    return 0


def _load_extraction_records(path: Path) -> list[CorpusRecord]:
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


def cmd_eval(args) -> int:
    corpus_dir = Path(args.corpus) if args.corpus else BUNDLED_CORPUS_DIR

    intent_path = corpus_dir / "intent.jsonl"
    lines = intent_path.read_text(encoding="utf-8").splitlines()
    total, correct = 0, 0
    per_intent: dict[str, list[int]] = {}
    for line in lines:
        record = json.loads(line)
        query = classify(record["text"])
        gate = query.gate.value if query.gate else None
        ok = query.intent.value == record["expected_intent"] and gate == record.get(
            "expected_gate"
        )
        total += 1
        correct += ok
        bucket = per_intent.setdefault(record["expected_intent"], [0, 0])
        bucket[0] += 1
        bucket[1] += ok
    print("intent classification")
    print(f"{'intent':<12}  asked  correct  accuracy")
    for intent, (asked, good) in sorted(per_intent.items()):
        print(f"{intent:<12}  {asked:>5d}  {good:>7d}  {good / asked:>8.2f}")
    print(f"{'overall':<12}  {total:>5d}  {correct:>7d}  {correct / total:>8.2f}")

    records = _load_extraction_records(corpus_dir / "extraction.jsonl")
    scores = evaluate_corpus(records, DeterministicExtractor())
    print()
    print("parameter extraction (exact match)")
    print(format_report(scores))
    worst = max(score.failure_rate for score in scores.values())
    return 0 if correct == total and worst <= 0.10 else 1


def cmd_solve(args) -> int:
    config = SolverConfig(
        seed=args.seed,
        qaoa_layers=args.qaoa_layers,
        vqe_layers=args.vqe_layers,
        shots=args.shots,
        eval_budget=args.eval_budget,
        n_starts=args.starts,
        vqe_sweeps=args.vqe_sweeps,
        penalty=args.penalty,
    )
    if args.tsp:
        spec = json.loads(Path(args.tsp).read_text(encoding="utf-8"))
        cities = spec["cities"]
        raw = spec["distances"]
        if isinstance(raw, dict):
            n = len(cities)
            matrix = np.zeros((n, n))
            for i, a in enumerate(cities):
                for j, b in enumerate(cities):
                    if i != j:
                        matrix[i][j] = float(raw[f"{a}->{b}"])
        else:
            matrix = np.asarray(raw, dtype=float)
        inst = TspInstance(labels=tuple(cities), distances=matrix)
        result, tour = solve_tsp(inst, config)
        out = {
            "order": [inst.labels[i] for i in tour.order],
            "cost": tour.cost,
            "seed": result.seed,
            "evaluations": result.evaluations,
        }
    else:
        spec = json.loads(Path(args.kp).read_text(encoding="utf-8"))
        inst = KpInstance(
            items=tuple(spec["items"]),
            weights=tuple(int(w) for w in spec["weights"]),
            values=tuple(int(v) for v in spec["values"]),
            capacity=int(spec["capacity"]),
        )
        result, selection = solve_kp(inst, config)
        out = {
            "items": [inst.items[i] for i in selection.items],
            "total_value": selection.total_value,
            "total_weight": selection.total_weight,
            "seed": result.seed,
            "evaluations": result.evaluations,
        }
    if args.json:
        print(json.dumps(out, indent=2, ensure_ascii=False))
    else:
        for key, value in out.items():
            print(f"{key}: {value}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
