from __future__ import annotations

from dataclasses import dataclass
from typing import Any


@dataclass(frozen=True)
class Verdict:
    """Outcome of a check. Truthy iff the check passed.

    ``tag`` names the definition or theorem being instantiated, ``witness``
    carries whatever object explains a failure (or a success certificate).
    """

    ok: bool
    tag: str
    reason: str = ""
    witness: Any = None

    def __bool__(self) -> bool:
        return self.ok
