"""Chat-completions client for remote solver models.

One generic wire shape (messages array in, choices plus usage object out)
covers OpenAI-compatible and Gemini-compatible endpoints.  The credential is
read from an environment variable named in the endpoint config and never
stored in files.  Transient transport failures retry with bounded
exponential backoff; a module-level semaphore caps concurrent requests per
endpoint across all trials.
"""

from __future__ import annotations

import json
import os
import sys
import threading
import time
from dataclasses import dataclass
from pathlib import Path

import requests

from .agents import Agent, AgentContext, AgentResponse, TokenUsage


class TransportError(Exception):
    """Network-level failure that persisted past the retry budget."""


class ProviderError(Exception):
    """The endpoint answered, but with a non-retryable status or bad body."""


# HTTP statuses worth retrying; everything else 4xx/5xx is a provider error.
_RETRYABLE_STATUSES = frozenset({408, 429, 500, 502, 503, 504})


@dataclass(frozen=True)
class EndpointConfig:
    base_url: str
    model: str
    api_key_env: str = "PUZZLEBENCH_API_KEY"
    temperature: float | None = None
    max_output_tokens: int | None = None
    max_retries: int = 3
    backoff_base: float = 0.5
    timeout: float = 60.0
    max_concurrency: int = 4

    def __post_init__(self) -> None:
        if self.max_retries < 0:
            raise ValueError(f"max_retries must be >= 0, got {self.max_retries}")
        if self.max_concurrency < 1:
            raise ValueError(f"max_concurrency must be >= 1, got {self.max_concurrency}")

    @classmethod
    def from_file(cls, path: str | Path) -> "EndpointConfig":
        path = Path(path)
        text = path.read_text(encoding="utf-8")
        if path.suffix.lower() == ".json":
            data = json.loads(text)
        else:
            try:
                import tomllib
            except ModuleNotFoundError:
                import tomli as tomllib
            data = tomllib.loads(text)
        known = set(cls.__dataclass_fields__)
        unknown = sorted(set(data) - known)
        if unknown:
            raise ValueError(f"unknown endpoint config keys in {path}: {unknown}")
        if "base_url" not in data or "model" not in data:
            raise ValueError(f"endpoint config {path} must set base_url and model")
        return cls(**data)


_semaphores: dict[tuple[str, int], threading.Semaphore] = {}
_semaphores_lock = threading.Lock()


def _endpoint_semaphore(config: EndpointConfig) -> threading.Semaphore:
    key = (config.base_url, config.max_concurrency)
    with _semaphores_lock:
        if key not in _semaphores:
            _semaphores[key] = threading.Semaphore(config.max_concurrency)
        return _semaphores[key]


def _messages_from_context(context: AgentContext) -> list[dict[str, str]]:
    messages = [{"role": "system", "content": context.system_text}]
    for exchange in context.transcript:
        messages.append({"role": "user", "content": exchange.prompt})
        messages.append({"role": "assistant", "content": exchange.response})
    messages.append({"role": "user", "content": context.user_text})
    return messages


def _parse_usage(body: dict) -> tuple[TokenUsage, dict]:
    """Map the provider's usage object; zeros plus a diagnostic if absent."""
    meta: dict = {}
    usage_obj = body.get("usage")
    if not isinstance(usage_obj, dict):
        meta["missing_usage"] = True
        return TokenUsage(), meta
    meta["usage_fields"] = sorted(usage_obj)
    prompt = usage_obj.get("prompt_tokens", 0)
    completion = usage_obj.get("completion_tokens", 0)
    total = usage_obj.get("total_tokens", prompt + completion)
    try:
        return TokenUsage(int(prompt), int(completion), int(total)), meta
    except (TypeError, ValueError) as exc:
        raise ProviderError(f"unusable usage object: {usage_obj!r}") from exc


class ChatCompletionsAgent(Agent):
    name = "llm"

    def __init__(
        self,
        config: EndpointConfig,
        session: requests.Session | None = None,
        sleeper=time.sleep,
    ) -> None:
        self._config = config
        self._session = session if session is not None else requests.Session()
        self._sleeper = sleeper
        key = os.environ.get(config.api_key_env)
        if not key:
            raise ValueError(
                f"environment variable {config.api_key_env} is not set; "
                "it must hold the API key for the configured endpoint"
            )
        self._api_key = key
        self._semaphore = _endpoint_semaphore(config)

    def respond(self, context: AgentContext) -> AgentResponse:
        payload: dict = {
            "model": self._config.model,
            "messages": _messages_from_context(context),
        }
        if self._config.temperature is not None:
            payload["temperature"] = self._config.temperature
        if self._config.max_output_tokens is not None:
            payload["max_tokens"] = self._config.max_output_tokens
        url = self._config.base_url.rstrip("/") + "/chat/completions"
        headers = {
            "Authorization": f"Bearer {self._api_key}",
            "Content-Type": "application/json",
        }

        attempts = self._config.max_retries + 1
        last_error: Exception | None = None
        started = time.monotonic()
        for attempt in range(attempts):
            if attempt:
                # Backoff doubles per attempt, so intervals never decrease.
                self._sleeper(self._config.backoff_base * (2 ** (attempt - 1)))
            try:
                with self._semaphore:
                    reply = self._session.post(
                        url, json=payload, headers=headers, timeout=self._config.timeout
                    )
            except requests.RequestException as exc:
                last_error = exc
                continue
            if reply.status_code in _RETRYABLE_STATUSES:
                last_error = TransportError(
                    f"endpoint returned retryable status {reply.status_code}"
                )
                continue
            if reply.status_code != 200:
                raise ProviderError(
                    f"endpoint returned status {reply.status_code}: {reply.text[:200]}"
                )
            return self._finish(reply, attempt, time.monotonic() - started)
        raise TransportError(
            f"gave up after {attempts} attempts: {last_error}"
        ) from last_error

    def _finish(self, reply, retries_used: int, latency: float) -> AgentResponse:
        try:
            body = reply.json()
        except ValueError as exc:
            raise ProviderError(f"endpoint returned non-JSON body: {exc}") from exc
        try:
            text = body["choices"][0]["message"]["content"]
        except (KeyError, IndexError, TypeError) as exc:
            raise ProviderError(f"malformed completion body: {exc!r}") from exc
        if not isinstance(text, str):
            raise ProviderError(f"completion content is not text: {type(text).__name__}")
        usage, meta = _parse_usage(body)
        if meta.get("missing_usage"):
            print(
                "warning: endpoint omitted the usage object; recording zeros",
                file=sys.stderr,
            )
        meta["model"] = body.get("model", self._config.model)
        meta["retries"] = retries_used
        return AgentResponse(text=text, usage=usage, latency=latency, provider_meta=meta)
