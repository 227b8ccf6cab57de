"""Prompt building, transports, and response extraction for the oracle."""

from __future__ import annotations

import os
from pathlib import Path
from typing import Mapping

from .client import Oracle, OracleTranscript
from .extract import EntailmentVerdict, Verdict, extract_rdf, parse_entailment_verdict
from .prompts import (
    TEMPLATE_VERSION,
    EmptyFact,
    InactiveItem,
    PromptError,
    PromptKind,
    RenderedPrompt,
    build_entailment_prompt,
    build_fact_sentence_prompt,
    build_kgc_prompt,
    render_bf_lines,
)
from .transport import (
    DecodingParams,
    LiveTransport,
    RateLimited,
    RecordingTransport,
    ReplayMiss,
    ReplayTransport,
    ScriptedTransport,
    TransientTransportError,
    Transport,
    TransportError,
    default_script,
    request_digest,
)

__all__ = [
    "DecodingParams",
    "EmptyFact",
    "EntailmentVerdict",
    "InactiveItem",
    "LiveTransport",
    "Oracle",
    "OracleTranscript",
    "PromptError",
    "PromptKind",
    "RateLimited",
    "RecordingTransport",
    "RenderedPrompt",
    "ReplayMiss",
    "ReplayTransport",
    "ScriptedTransport",
    "TEMPLATE_VERSION",
    "TransientTransportError",
    "Transport",
    "TransportError",
    "Verdict",
    "build_entailment_prompt",
    "build_fact_sentence_prompt",
    "build_kgc_prompt",
    "default_script",
    "extract_rdf",
    "oracle_from_env",
    "parse_entailment_verdict",
    "render_bf_lines",
    "request_digest",
]


def oracle_from_env(env: Mapping[str, str] | None = None, **kwargs) -> Oracle:
    """Build an oracle from ORACLE_MODE / ORACLE_ENDPOINT / ORACLE_API_KEY /
    ORACLE_MODEL / FIXTURE_DIR environment configuration.

    Modes: live, replay, record (live traffic captured into FIXTURE_DIR),
    scripted (deterministic canned responder, useful for offline smoke
    runs).
    """
    env = os.environ if env is None else env
    mode = env.get("ORACLE_MODE", "replay").lower()
    params = DecodingParams(model=env.get("ORACLE_MODEL", "gpt-3.5-turbo"))
    fixture_dir = env.get("FIXTURE_DIR", "")

    if mode == "scripted":
        transport: Transport = ScriptedTransport(default_script)
    elif mode == "replay":
        if not fixture_dir:
            raise ValueError("replay mode needs FIXTURE_DIR")
        transport = ReplayTransport(Path(fixture_dir))
    elif mode in ("live", "record"):
        endpoint = env.get("ORACLE_ENDPOINT", "")
        if not endpoint:
            raise ValueError(f"{mode} mode needs ORACLE_ENDPOINT")
        transport = LiveTransport(endpoint, api_key=env.get("ORACLE_API_KEY", ""))
        if mode == "record":
            if not fixture_dir:
                raise ValueError("record mode needs FIXTURE_DIR")
            transport = RecordingTransport(transport, Path(fixture_dir))
    else:
        raise ValueError(f"unknown ORACLE_MODE {mode!r}")
    return Oracle(transport, params=params, **kwargs)
