"""Exception types and the desk-scale size guards."""

from __future__ import annotations

import os

GUARD_ENV = "ROBUST_GUARD_OVERRIDE"


class GuardError(ValueError):
    """An exhaustive routine was asked to run on an instance that is too large."""


class InvalidPathError(ValueError):
    """A vertex sequence is not an alternating/augmenting path for the matching."""


class WitnessStructureError(ValueError):
    """A robust witness is malformed (as opposed to failing (R1)-(R3))."""


class LemmaViolation(RuntimeError):
    """A proof-replay assertion fired.

    Every assertion guarded by this exception restates a proven lemma, so
    raising it means the implementation is wrong, not the mathematics.
    """

    def __init__(self, lemma: str, detail: str):
        super().__init__(f"{lemma}: {detail}")
        self.lemma = lemma
        self.detail = detail


def guards_lifted() -> bool:
    return os.environ.get(GUARD_ENV) == "1"


def guard(what: str, value: int, limit: int) -> None:
    if value > limit and not guards_lifted():
        raise GuardError(
            f"{what} = {value} exceeds the limit {limit} "
            f"(set {GUARD_ENV}=1 to override at your own risk)"
        )
