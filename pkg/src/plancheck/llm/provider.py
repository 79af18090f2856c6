"""Language-model provider contract and implementations.

Every LLM-facing operation goes through one ``complete`` call tagged with
a purpose (translate, back_translate, plan, convert, judge).  The recorded
provider replays responses from fixture files keyed by request hash, so
the whole pipeline runs bit-deterministically without network access; a
cache miss raises instead of degrading.  The live provider talks to any
OpenAI-compatible chat endpoint configured through environment variables.
"""

import hashlib
import json
import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Mapping, Protocol

import httpx

from ..errors import FixtureMiss, ProviderError

PURPOSES = ("translate", "back_translate", "plan", "convert", "judge")

ENV_URL = "PLANCHECK_API_URL"
ENV_KEY = "PLANCHECK_API_KEY"
ENV_MODEL = "PLANCHECK_MODEL"


@dataclass(frozen=True)
class Message:
    role: str
    content: str


@dataclass(frozen=True)
class ProviderRequest:
    purpose: str
    messages: tuple[Message, ...]
    temperature: float = 0.0

    def __post_init__(self):
        if self.purpose not in PURPOSES:
            raise ValueError(f"unknown purpose {self.purpose!r}")

    def sha256(self) -> str:
        doc = {
            "purpose": self.purpose,
            "temperature": self.temperature,
            "messages": [[m.role, m.content] for m in self.messages],
        }
        canonical = json.dumps(doc, sort_keys=True, ensure_ascii=False)
        return hashlib.sha256(canonical.encode("utf-8")).hexdigest()


@dataclass(frozen=True)
class ProviderResponse:
    text: str
    metadata: Mapping[str, str] = field(default_factory=dict)


def user_request(purpose: str, prompt: str, temperature: float = 0.0) -> ProviderRequest:
    return ProviderRequest(purpose, (Message("user", prompt),), temperature)


class Provider(Protocol):
    def complete(self, request: ProviderRequest) -> ProviderResponse: ...


class FixtureStore:
    """Recorded responses, loaded from a directory of JSON files.

    Each file holds ``{"purpose", "request_sha256", "response"}``.  Lookups
    are exact on (purpose, request hash).
    """

    def __init__(self, responses: Mapping[tuple[str, str], str]):
        self._responses = dict(responses)

    @classmethod
    def from_dir(cls, directory) -> "FixtureStore":
        directory = Path(directory)
        responses: dict[tuple[str, str], str] = {}
        for path in sorted(directory.glob("*.json")):
            doc = json.loads(path.read_text(encoding="utf-8"))
            key = (doc["purpose"], doc["request_sha256"])
            if key in responses and responses[key] != doc["response"]:
                raise ValueError(f"conflicting fixtures for {key} (one of them: {path.name})")
            responses[key] = doc["response"]
        return cls(responses)

    def __len__(self) -> int:
        return len(self._responses)

    def get(self, purpose: str, digest: str) -> str | None:
        return self._responses.get((purpose, digest))


class FixtureProvider:
    """Replays recorded responses; raises FixtureMiss on unknown requests."""

    def __init__(self, store: FixtureStore):
        self.store = store

    def complete(self, request: ProviderRequest) -> ProviderResponse:
        digest = request.sha256()
        text = self.store.get(request.purpose, digest)
        if text is None:
            raise FixtureMiss(request.purpose, digest)
        return ProviderResponse(text, {"provider": "recorded"})


class ScriptedProvider:
    """Serves queued responses per purpose, in order. Intended for tests
    and for regenerating the bundled fixtures."""

    def __init__(self, scripts: Mapping[str, Iterable[str]]):
        self._queues = {purpose: list(texts) for purpose, texts in scripts.items()}

    def complete(self, request: ProviderRequest) -> ProviderResponse:
        queue = self._queues.get(request.purpose)
        if not queue:
            raise ProviderError(f"no scripted response left for purpose {request.purpose!r}")
        return ProviderResponse(queue.pop(0), {"provider": "scripted"})


class RecordingProvider:
    """Wraps another provider and writes each exchange as a fixture file."""

    def __init__(self, inner: Provider, directory):
        self.inner = inner
        self.directory = Path(directory)
        self.directory.mkdir(parents=True, exist_ok=True)

    def complete(self, request: ProviderRequest) -> ProviderResponse:
        response = self.inner.complete(request)
        digest = request.sha256()
        doc = {"purpose": request.purpose, "request_sha256": digest, "response": response.text}
        path = self.directory / f"{request.purpose}-{digest[:12]}.json"
        path.write_text(json.dumps(doc, indent=2, ensure_ascii=False) + "\n", encoding="utf-8")
        return response


class LiveProvider:
    """OpenAI-compatible chat-completions client, configured from the
    PLANCHECK_API_URL / PLANCHECK_API_KEY / PLANCHECK_MODEL environment
    variables. Never required by the test suite."""

    def __init__(self, url: str | None = None, api_key: str | None = None, model: str | None = None, timeout: float = 60.0):
        self.url = url or os.environ.get(ENV_URL)
        self.api_key = api_key or os.environ.get(ENV_KEY)
        self.model = model or os.environ.get(ENV_MODEL)
        self.timeout = timeout
        if not self.url or not self.model:
            raise ProviderError(
                f"live provider needs {ENV_URL} and {ENV_MODEL} set ({ENV_KEY} if the endpoint requires auth)"
            )

    def complete(self, request: ProviderRequest) -> ProviderResponse:
        headers = {"Content-Type": "application/json"}
        if self.api_key:
            headers["Authorization"] = f"Bearer {self.api_key}"
        payload = {
            "model": self.model,
            "temperature": request.temperature,
            "messages": [{"role": m.role, "content": m.content} for m in request.messages],
        }
        try:
            reply = httpx.post(self.url, json=payload, headers=headers, timeout=self.timeout)
            reply.raise_for_status()
            body = reply.json()
            text = body["choices"][0]["message"]["content"]
        except (httpx.HTTPError, KeyError, IndexError, TypeError, ValueError) as exc:
            raise ProviderError(f"live provider call failed: {exc}") from exc
        return ProviderResponse(text, {"provider": "live", "model": self.model})
