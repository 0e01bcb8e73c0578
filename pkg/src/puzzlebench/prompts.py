"""Prompt templates: plain-text files with ``{placeholder}`` slots.

Template ids are file stems under the package's ``templates`` directory; a
user-supplied directory can shadow or extend the built-ins.  Rendering is a
pure substitution: same bindings, same text.  A placeholder without a
binding is an error, never silently left in place.
"""

from __future__ import annotations

import re
from importlib import resources
from pathlib import Path
from typing import Mapping


class UnknownTemplateError(KeyError):
    pass


class UnboundPlaceholderError(KeyError):
    pass


_PLACEHOLDER = re.compile(r"\{([a-z_]+)\}")


class PromptLibrary:
    def __init__(self, extra_dir: str | Path | None = None) -> None:
        self._extra_dir = Path(extra_dir) if extra_dir is not None else None
        self._cache: dict[str, str] = {}

    def template_text(self, template_id: str) -> str:
        if template_id in self._cache:
            return self._cache[template_id]
        text = self._load(template_id)
        self._cache[template_id] = text
        return text

    def _load(self, template_id: str) -> str:
        if self._extra_dir is not None:
            candidate = self._extra_dir / f"{template_id}.txt"
            if candidate.is_file():
                return candidate.read_text(encoding="utf-8")
        builtin = resources.files("puzzlebench").joinpath(
            "templates", f"{template_id}.txt"
        )
        if builtin.is_file():
            return builtin.read_text(encoding="utf-8")
        raise UnknownTemplateError(f"no template named {template_id!r}")

    def render(self, template_id: str, bindings: Mapping[str, object]) -> str:
        """Substitute every ``{name}`` placeholder from ``bindings``."""
        template = self.template_text(template_id)

        def substitute(match: re.Match) -> str:
            name = match.group(1)
            if name not in bindings:
                raise UnboundPlaceholderError(
                    f"template {template_id!r} uses unbound placeholder {{{name}}}"
                )
            return str(bindings[name])

        return _PLACEHOLDER.sub(substitute, template)


def default_template_id(puzzle_kind: str, slot: str) -> str:
    """Template naming convention: ``<puzzle>_<slot>``."""
    return f"{puzzle_kind}_{slot}"
