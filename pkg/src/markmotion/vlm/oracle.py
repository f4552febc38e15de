"""Deterministic scripted stand-in for the remote model.

A script is an ordered rule list; each rule fires when every one of its
substrings occurs in the request's matchable text. The first match wins and
every request is recorded so tests can assert on what was asked.

Rules match against the first and last text segments of the request — the
instruction preamble and the live query — not against any worked examples
inserted between them, whose text would otherwise shadow the query.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from ..errors import ConfigError
from .messages import TextPart, message_texts


@dataclass(frozen=True)
class OracleRule:
    contains: tuple
    response: str

    def matches(self, request_text: str) -> bool:
        return all(needle in request_text for needle in self.contains)


@dataclass
class OracleScript:
    rules: tuple = ()
    default_response: str = ""
    requests: list = field(default_factory=list)

    @classmethod
    def from_json_dict(cls, payload: dict) -> "OracleScript":
        rules = tuple(
            OracleRule(contains=tuple(r["contains"]), response=str(r["response"]))
            for r in payload.get("rules", [])
        )
        return cls(rules=rules, default_response=str(payload.get("default_response", "")))

    @classmethod
    def load(cls, path: str | Path) -> "OracleScript":
        with open(path, "r", encoding="utf-8") as f:
            return cls.from_json_dict(json.load(f))

    def to_json_dict(self) -> dict:
        return {
            "rules": [
                {"contains": list(r.contains), "response": r.response} for r in self.rules
            ],
            "default_response": self.default_response,
        }

    def save(self, path: str | Path) -> None:
        with open(path, "w", encoding="utf-8") as f:
            json.dump(self.to_json_dict(), f, indent=2)
            f.write("\n")


def load_packaged_script(name: str) -> OracleScript:
    """A scripted responder shipped with the package, by scene family name."""
    ref = resources.files("markmotion.assets.oracles").joinpath(f"{name}.json")
    try:
        text = ref.read_text(encoding="utf-8")
    except FileNotFoundError:
        raise ConfigError(f"no packaged oracle script named {name!r}") from None
    return OracleScript.from_json_dict(json.loads(text))


def _matchable_text(messages) -> str:
    texts = [
        part.text
        for message in messages
        for part in message.parts
        if isinstance(part, TextPart)
    ]
    if not texts:
        return ""
    if len(texts) == 1:
        return texts[0]
    return texts[0] + "\n" + texts[-1]


def oracle_query(messages, script: OracleScript) -> str:
    """First matching rule's response, else the default. Records the request."""
    script.requests.append(message_texts(messages))
    for rule in script.rules:
        if rule.matches(_matchable_text(messages)):
            return rule.response
    return script.default_response
