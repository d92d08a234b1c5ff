"""Label normalization and the deterministic label order shared by all modules."""

from __future__ import annotations

from typing import Iterable

from blockerlab.errors import BlockerLabError


def normalize(label) -> str:
    if isinstance(label, bool):
        raise BlockerLabError(f"labels must be strings or integers, got {label!r}")
    if isinstance(label, (str, int)):
        return str(label)
    raise BlockerLabError(f"labels must be strings or integers, got {label!r}")


def label_key(label: str):
    # integer-looking labels sort numerically and ahead of all other labels
    try:
        return (0, int(label), "")
    except ValueError:
        return (1, 0, label)


def sort_labels(labels: Iterable[str]) -> list[str]:
    return sorted(labels, key=label_key)


def parse_label_list(text: str) -> list[str]:
    """Split a comma-separated CLI argument; ``""`` and ``"{}"`` denote the empty list."""
    text = text.strip()
    if text.startswith("{") and text.endswith("}"):
        text = text[1:-1]
    return [part.strip() for part in text.split(",") if part.strip()]
