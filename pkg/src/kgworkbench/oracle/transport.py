"""Pluggable transports behind the oracle client.

live      chat-completion endpoint (OpenAI-compatible JSON over HTTPS)
replay    responses looked up in a fixture directory by request digest
scripted  responses from an injected function (tests and smoke runs)
record    any transport wrapped so its traffic lands in the fixture layout

A consistency check issues the same prompt N times, so all N requests share
one digest; fixture files therefore hold a response *list* and requests
address it with their repeat index. That keeps digests a pure function of
(template version, prompt, decoding parameters) while still replaying a
recorded session bit-for-bit.
"""

from __future__ import annotations

import hashlib
import json
import threading
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Protocol

import httpx


class TransportError(Exception):
    """Hard transport failure (network, HTTP, malformed response)."""


class TransientTransportError(TransportError):
    """Retryable failure: connection trouble, 429, or 5xx."""

    def __init__(self, message: str, status: int | None = None):
        super().__init__(message)
        self.status = status


class RateLimited(TransportError):
    """Retry budget exhausted on rate-limit responses."""


class ReplayMiss(TransportError):
    def __init__(self, digest: str, detail: str = "no fixture recorded"):
        super().__init__(f"replay miss for digest {digest}: {detail}")
        self.digest = digest


@dataclass(frozen=True, slots=True)
class DecodingParams:
    """Decoding parameters sent with every request and baked into digests.

    Unset fields defer to the provider's defaults but are still recorded,
    since consistency statistics are meaningless without them.
    """

    model: str = "gpt-3.5-turbo"
    temperature: float | None = None
    top_p: float | None = None
    max_tokens: int | None = None

    def payload(self) -> dict:
        out: dict = {"model": self.model}
        for name in ("temperature", "top_p", "max_tokens"):
            value = getattr(self, name)
            if value is not None:
                out[name] = value
        return out


def request_digest(prompt_text: str, params: DecodingParams, template_version: str) -> str:
    body = json.dumps(
        {
            "template_version": template_version,
            "prompt": prompt_text,
            "params": params.payload(),
        },
        sort_keys=True,
        ensure_ascii=True,
        separators=(",", ":"),
    )
    return hashlib.sha256(body.encode("utf-8")).hexdigest()


@dataclass(frozen=True, slots=True)
class TransportReply:
    text: str
    timestamp: float


class Transport(Protocol):
    kind: str

    def send(
        self,
        prompt_text: str,
        params: DecodingParams,
        digest: str,
        repeat_index: int,
    ) -> TransportReply: ...


class LiveTransport:
    """One HTTP round trip per send against a chat-completion endpoint."""

    kind = "live"

    def __init__(
        self,
        endpoint: str,
        api_key: str = "",
        timeout: float = 60.0,
        client: httpx.Client | None = None,
        clock: Callable[[], float] = time.time,
    ):
        self.endpoint = endpoint.rstrip("/")
        self.api_key = api_key
        self.timeout = timeout
        self._client = client or httpx.Client(timeout=timeout)
        self._clock = clock

    def send(self, prompt_text, params, digest, repeat_index) -> TransportReply:
        headers = {"Content-Type": "application/json"}
        if self.api_key:
            headers["Authorization"] = f"Bearer {self.api_key}"
        body = dict(params.payload())
        body["messages"] = [{"role": "user", "content": prompt_text}]
        try:
            response = self._client.post(
                self.endpoint + "/chat/completions", json=body, headers=headers
            )
        except httpx.HTTPError as exc:
            raise TransientTransportError(f"connection failure: {exc}") from exc
        if response.status_code == 429 or response.status_code >= 500:
            raise TransientTransportError(
                f"HTTP {response.status_code}", status=response.status_code
            )
        if response.status_code != 200:
            raise TransportError(
                f"HTTP {response.status_code}: {response.text[:200]}"
            )
        try:
            text = response.json()["choices"][0]["message"]["content"]
        except (KeyError, IndexError, ValueError) as exc:
            raise TransportError(f"malformed completion payload: {exc}") from exc
        return TransportReply(text=text, timestamp=self._clock())


def fixture_path(fixture_dir: Path | str, digest: str) -> Path:
    return Path(fixture_dir) / f"{digest}.json"


class ReplayTransport:
    """Serves recorded responses; lock-free reads, misses name the digest."""

    kind = "replay"

    def __init__(self, fixture_dir: Path | str):
        self.fixture_dir = Path(fixture_dir)

    def send(self, prompt_text, params, digest, repeat_index) -> TransportReply:
        path = fixture_path(self.fixture_dir, digest)
        if not path.exists():
            raise ReplayMiss(digest)
        record = json.loads(path.read_text(encoding="utf-8"))
        responses = record.get("responses", [])
        if repeat_index >= len(responses):
            raise ReplayMiss(
                digest,
                f"has {len(responses)} recorded responses, "
                f"request wanted index {repeat_index}",
            )
        timestamps = record.get("timestamps", [])
        ts = timestamps[repeat_index] if repeat_index < len(timestamps) else 0.0
        return TransportReply(text=responses[repeat_index], timestamp=ts)


ScriptFn = Callable[[str, DecodingParams, int], str]


class ScriptedTransport:
    """Responses from an injected function; the function may raise
    transport errors to simulate failure sequences."""

    kind = "scripted"

    def __init__(self, script: ScriptFn, clock: Callable[[], float] = lambda: 0.0):
        self.script = script
        self._clock = clock

    def send(self, prompt_text, params, digest, repeat_index) -> TransportReply:
        return TransportReply(
            text=self.script(prompt_text, params, repeat_index),
            timestamp=self._clock(),
        )


class RecordingTransport:
    """Write-through wrapper capturing traffic into the replay layout."""

    kind = "record"

    def __init__(self, inner: Transport, fixture_dir: Path | str):
        self.inner = inner
        self.fixture_dir = Path(fixture_dir)
        self._lock = threading.Lock()

    def send(self, prompt_text, params, digest, repeat_index) -> TransportReply:
        reply = self.inner.send(prompt_text, params, digest, repeat_index)
        with self._lock:
            self.fixture_dir.mkdir(parents=True, exist_ok=True)
            path = fixture_path(self.fixture_dir, digest)
            if path.exists():
                record = json.loads(path.read_text(encoding="utf-8"))
            else:
                record = {
                    "prompt": prompt_text,
                    "params": params.payload(),
                    "responses": [],
                    "timestamps": [],
                }
            responses = record["responses"]
            timestamps = record.setdefault("timestamps", [])
            while len(responses) <= repeat_index:
                responses.append(None)
                timestamps.append(0.0)
            responses[repeat_index] = reply.text
            timestamps[repeat_index] = reply.timestamp
            path.write_text(
                json.dumps(record, indent=2, sort_keys=True, ensure_ascii=False),
                encoding="utf-8",
            )
        return reply


def default_script(prompt_text: str, params: DecodingParams, repeat_index: int) -> str:
    """Deterministic canned responder for offline smoke runs.

    KGC prompts get a tiny valid TTL document derived from the prompt
    digest; sentence prompts get a fixed sentence; entailment prompts get
    an affirmative answer.
    """
    tag = hashlib.sha256(prompt_text.encode("utf-8")).hexdigest()[:8]
    head = prompt_text.splitlines()[0].lower() if prompt_text else ""
    if "yes or no" in head:
        return "Yes. The statement follows from the given text."
    if "sentence" in head:
        return f"The subject s{tag} has the stated property."
    return (
        "@prefix d: <http://example.org/demo#> .\n"
        f'd:s{tag} d:describedBy "paragraph" ;\n'
        f'    d:digest "{tag}" .\n'
    )
