"""Oracle client: retries, concurrency limiting, and transcripts.

Every completed call yields an immutable transcript carrying the prompt,
the response, and the request digest; identical (template version, prompt,
parameters) always digest identically, which is what makes replay mode
bit-reproducible.
"""

from __future__ import annotations

import threading
import time
from dataclasses import dataclass
from typing import Callable

from .prompts import RenderedPrompt
from .transport import (
    DecodingParams,
    RateLimited,
    Transport,
    TransientTransportError,
    TransportError,
    request_digest,
)


@dataclass(frozen=True, slots=True)
class OracleTranscript:
    prompt_text: str
    prompt_kind: str
    response_text: str
    transport: str
    request_digest: str
    timestamp: float
    attempt: int
    repeat_index: int
    template_version: str

    def to_json(self) -> dict:
        return {
            "prompt_text": self.prompt_text,
            "prompt_kind": self.prompt_kind,
            "response_text": self.response_text,
            "transport": self.transport,
            "request_digest": self.request_digest,
            "timestamp": self.timestamp,
            "attempt": self.attempt,
            "repeat_index": self.repeat_index,
            "template_version": self.template_version,
        }

    @classmethod
    def from_json(cls, payload: dict) -> "OracleTranscript":
        return cls(**payload)


class Oracle:
    """Front door to the configured transport.

    Transient failures (429, 5xx, connection trouble) are retried with
    exponential backoff up to ``max_attempts``; exhausting the budget on
    rate limits raises RateLimited. At most ``max_concurrency`` requests
    are in flight at once.
    """

    def __init__(
        self,
        transport: Transport,
        params: DecodingParams = DecodingParams(),
        max_attempts: int = 5,
        backoff: float = 0.5,
        max_concurrency: int = 4,
        sleeper: Callable[[float], None] = time.sleep,
    ):
        self.transport = transport
        self.params = params
        self.max_attempts = max_attempts
        self.backoff = backoff
        self.max_concurrency = max_concurrency
        self._sleeper = sleeper
        self._slots = threading.Semaphore(max_concurrency)

    def complete(self, prompt: RenderedPrompt, repeat_index: int = 0) -> OracleTranscript:
        digest = request_digest(prompt.text, self.params, prompt.template_version)
        last: TransientTransportError | None = None
        for attempt in range(1, self.max_attempts + 1):
            with self._slots:
                try:
                    reply = self.transport.send(
                        prompt.text, self.params, digest, repeat_index
                    )
                except TransientTransportError as exc:
                    last = exc
                    if attempt < self.max_attempts:
                        self._sleeper(self.backoff * 2 ** (attempt - 1))
                    continue
            return OracleTranscript(
                prompt_text=prompt.text,
                prompt_kind=prompt.kind.value,
                response_text=reply.text,
                transport=self.transport.kind,
                request_digest=digest,
                timestamp=reply.timestamp,
                attempt=attempt,
                repeat_index=repeat_index,
                template_version=prompt.template_version,
            )
        assert last is not None
        if last.status == 429:
            raise RateLimited(
                f"rate limited after {self.max_attempts} attempts"
            ) from last
        raise TransportError(
            f"transport failed after {self.max_attempts} attempts: {last}"
        ) from last
