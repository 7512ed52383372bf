"""Template-based Qiskit code generation.

Templates are curated repository assets with ``{{name}}`` placeholders; the
required binding set of a template is exactly the set of placeholders in its
body. Rendering is byte-deterministic: same template + same bindings gives
the same source text, which is what the golden-file tests pin down.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path
from typing import Mapping

from .errors import (
    MissingBindingError,
    NonFiniteError,
    UnboundPlaceholderError,
    UnexpectedBindingError,
    UnknownTemplateError,
)

TEMPLATE_IDS = ("draw_gate", "apply_gate", "tsp_solver", "kp_solver")

# Tag shown next to the copy button so users know which SDK the code targets.
# All templates use the post-1.0 package layout.
FRAMEWORK_TAG = "qiskit>=1.0"

_TEMPLATE_DIR = Path(__file__).resolve().parent / "assets" / "templates"
_PLACEHOLDER = re.compile(r"\{\{([a-z_]+)\}\}")


@dataclass(frozen=True)
class CodeTemplate:
    id: str
    body: str
    required_bindings: frozenset[str]


@dataclass(frozen=True)
class CodeArtifact:
    framework_tag: str
    source_text: str
    template_id: str


@lru_cache(maxsize=None)
def load_template(template_id: str) -> CodeTemplate:
    if template_id not in TEMPLATE_IDS:
        raise UnknownTemplateError(f"no template named {template_id!r}")
    body = (_TEMPLATE_DIR / f"{template_id}.py.tmpl").read_text(encoding="utf-8")
    names = frozenset(_PLACEHOLDER.findall(body))
    return CodeTemplate(id=template_id, body=body, required_bindings=names)


def render(template_id: str, bindings: Mapping[str, str]) -> CodeArtifact:
    """Fill a template's placeholders with pre-serialized binding values."""
    template = load_template(template_id)
    missing = template.required_bindings - bindings.keys()
    if missing:
        raise MissingBindingError(template_id, sorted(missing))
    extra = bindings.keys() - template.required_bindings
    if extra:
        raise UnexpectedBindingError(
            f"template {template_id!r} does not use bindings: {sorted(extra)}"
        )
    source = _PLACEHOLDER.sub(lambda m: bindings[m.group(1)], template.body)
    if "{{" in source or "}}" in source:
        raise UnboundPlaceholderError(
            f"template {template_id!r} left unresolved placeholders in output"
        )
    return CodeArtifact(
        framework_tag=FRAMEWORK_TAG, source_text=source, template_id=template_id
    )


def serialize_number(x) -> str:
    """Shortest round-trip decimal; pi multiples come out as plain decimals
    so the generated code runs without symbolic constants."""
    if isinstance(x, bool):
        raise TypeError("booleans are not numbers here")
    if isinstance(x, int):
        return str(x)
    x = float(x)
    if not math.isfinite(x):
        raise NonFiniteError(f"cannot serialize {x}")
    return repr(x)


def serialize_complex(c: complex) -> str:
    return f"{serialize_number(c.real)} + {serialize_number(c.imag)}j"


def serialize_value(v) -> str:
    """Canonical recursive formatter for numbers, strings and (nested) lists."""
    if isinstance(v, str):
        return repr(v)
    if isinstance(v, complex):
        return serialize_complex(v)
    if isinstance(v, (list, tuple)):
        return "[" + ", ".join(serialize_value(item) for item in v) + "]"
    return serialize_number(v)
