"""JSON file formats for labelled posets and chain actions.

Poset document::

    {"elements": [...], "covers": [[lower, upper], ...], "labels": {"lower|upper": int}}

Action document::

    {"poset": <poset document or path>, "chains": [[element, ...], ...], "U": [[chain index, ...], ...]}

``U[i - 1][c]`` is the index of U_i applied to chain ``c``.
"""
from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from .hecke import ActionError, ChainAction
from .labeling import EdgeLabeling, LabelOnNonCover, labeling_from_names
from .poset import Poset, UnknownElement, maximal_chains


class MalformedJson(ValueError):
    pass


def _load(data: bytes | str) -> Any:
    if isinstance(data, bytes):
        try:
            data = data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise MalformedJson(f"not UTF-8: {exc}") from None
    try:
        return json.loads(data)
    except json.JSONDecodeError as exc:
        raise MalformedJson(str(exc)) from None


def _split_label_key(P: Poset, key: str) -> tuple[str, str]:
    """Split "a|b" at the bar that separates two known elements."""
    parts = key.split("|")
    for k in range(1, len(parts)):
        a, b = "|".join(parts[:k]), "|".join(parts[k:])
        if a in P.index and b in P.index:
            return a, b
    if len(parts) < 2:
        raise MalformedJson(f"label key {key!r} has no '|'")
    raise UnknownElement(f"label key {key!r} does not name two elements")


def poset_from_document(doc: Any) -> tuple[Poset, EdgeLabeling | None]:
    if not isinstance(doc, dict) or "elements" not in doc:
        raise MalformedJson("expected an object with an 'elements' list")
    elements, covers = doc["elements"], doc.get("covers", [])
    if not isinstance(elements, list) or not all(isinstance(e, str) for e in elements):
        raise MalformedJson("'elements' must be a list of strings")
    if not isinstance(covers, list) or not all(isinstance(c, list) and len(c) == 2 for c in covers):
        raise MalformedJson("'covers' must be a list of [lower, upper] pairs")
    P = Poset(elements, [tuple(c) for c in covers])
    labels = doc.get("labels")
    if labels is None:
        return P, None
    if not isinstance(labels, dict):
        raise MalformedJson("'labels' must be an object")
    named = {}
    for key, value in labels.items():
        if not isinstance(value, int) or isinstance(value, bool):
            raise MalformedJson(f"label {key!r} is not an integer")
        a, b = _split_label_key(P, key)
        named[(a, b)] = value
    return P, labeling_from_names(P, named)


def parse_poset_file(data: bytes | str) -> tuple[Poset, EdgeLabeling | None]:
    """Parse a poset document; labels, when present, must sit on covers."""
    return poset_from_document(_load(data))


def poset_document(P: Poset, labeling: EdgeLabeling | None = None) -> dict:
    doc: dict[str, Any] = {
        "elements": sorted(P.names),
        "covers": sorted([a, b] for a, b in P.named_covers()),
    }
    if labeling is not None:
        doc["labels"] = {
            f"{P.name(a)}|{P.name(b)}": v
            for (a, b), v in sorted(labeling.items(), key=lambda item: (P.name(item[0][0]), P.name(item[0][1])))
        }
    return doc


def write_poset(P: Poset, labeling: EdgeLabeling | None = None) -> str:
    return json.dumps(poset_document(P, labeling), indent=1) + "\n"


def parse_action_file(data: bytes | str, base: Path | None = None) -> ChainAction:
    """Parse an action document.  A string "poset" field is a path, relative to ``base``."""
    doc = _load(data)
    if not isinstance(doc, dict) or not {"poset", "chains", "U"} <= doc.keys():
        raise MalformedJson("expected an object with 'poset', 'chains' and 'U'")
    inner = doc["poset"]
    if isinstance(inner, str):
        path = Path(inner)
        if base is not None and not path.is_absolute():
            path = base / path
        try:
            inner = _load(path.read_bytes())
        except OSError as exc:
            raise MalformedJson(f"cannot read poset file {str(path)!r}: {exc.strerror}") from None
    P, _ = poset_from_document(inner)

    chains_raw, table_raw = doc["chains"], doc["U"]
    if not isinstance(chains_raw, list) or not all(isinstance(m, list) for m in chains_raw):
        raise MalformedJson("'chains' must be a list of element lists")
    if not isinstance(table_raw, list) or not all(
        isinstance(row, list) and all(isinstance(c, int) for c in row) for row in table_raw
    ):
        raise MalformedJson("'U' must be a list of integer rows")
    chains = tuple(tuple(P.idx(x) for x in m) for m in chains_raw)
    expected = set(maximal_chains(P))
    if len(set(chains)) != len(chains) or set(chains) != expected:
        raise ActionError("'chains' must list every maximal chain exactly once")
    rank = len(chains[0]) - 1 if chains else 0
    if len(table_raw) != max(rank - 1, 0):
        raise ActionError(f"'U' needs {max(rank - 1, 0)} rows for rank {rank}")
    return ChainAction(P, chains, tuple(tuple(row) for row in table_raw))


def action_document(action: ChainAction, poset: Any = None) -> dict:
    """``poset`` overrides the embedded poset document (e.g. with a path)."""
    return {
        "poset": poset if poset is not None else poset_document(action.poset),
        "chains": [action.chain_names(c) for c in range(len(action.chains))],
        "U": [list(row) for row in action.table],
    }


def write_action(action: ChainAction, poset: Any = None) -> str:
    return json.dumps(action_document(action, poset), indent=1) + "\n"


__all__ = [
    "LabelOnNonCover",
    "MalformedJson",
    "UnknownElement",
    "action_document",
    "parse_action_file",
    "parse_poset_file",
    "poset_document",
    "poset_from_document",
    "write_action",
    "write_poset",
]
