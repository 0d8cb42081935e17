"""Verification reports and the exception hierarchy."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np


class InputError(ValueError):
    """Malformed input: wrong shapes, bad indices, unparseable rationals."""


class PreconditionError(ValueError):
    """A mathematical precondition failed; ``report`` says which and where."""

    def __init__(self, message: str, report: "VerificationReport | None" = None):
        super().__init__(message)
        self.report = report


class NotInvertibleError(PreconditionError):
    pass


class ConsistencyError(AssertionError):
    """Two independent computation routes disagreed.

    Raised only when an identity that must hold on every input fails; it
    signals a defect, never a property of the user's data.
    """


def _plain(value):
    if value is None:
        return None
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, (int, str, bool)):
        return value
    if isinstance(value, np.ndarray):
        return _plain(value.tolist())
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    if hasattr(value, "to_dict"):
        return value.to_dict()
    return repr(value)


@dataclass(frozen=True)
class VerificationReport:
    """Outcome of a basis-level identity check.

    ``witness`` is the first failing basis tuple (0-based positions) and
    ``lhs``/``rhs`` the two sides evaluated there.
    """

    check: str
    ok: bool
    witness: tuple | None = None
    lhs: object = None
    rhs: object = None
    detail: str = ""
    parts: tuple["VerificationReport", ...] = field(default_factory=tuple)

    def __bool__(self) -> bool:
        return self.ok

    @classmethod
    def passed(cls, check: str, detail: str = "", parts=()) -> "VerificationReport":
        return cls(check, True, detail=detail, parts=tuple(parts))

    @classmethod
    def combine(cls, check: str, parts, detail: str = "") -> "VerificationReport":
        """All-of report; the first failing part supplies the witness."""
        parts = tuple(parts)
        bad = next((p for p in parts if not p.ok), None)
        if bad is None:
            return cls(check, True, detail=detail, parts=parts)
        return cls(check, False, witness=bad.witness, lhs=bad.lhs, rhs=bad.rhs,
                   detail=detail or f"{bad.check} failed", parts=parts)

    def first_failure(self) -> "VerificationReport | None":
        if self.ok:
            return None
        for p in self.parts:
            if not p.ok:
                return p.first_failure()
        return self

    def to_dict(self) -> dict:
        out = {"check": self.check, "ok": self.ok}
        if self.witness is not None:
            out["witness"] = [w + 1 if isinstance(w, int) else w for w in self.witness]
        if self.lhs is not None or self.rhs is not None:
            out["lhs"] = _plain(self.lhs)
            out["rhs"] = _plain(self.rhs)
        if self.detail:
            out["detail"] = self.detail
        if self.parts:
            out["parts"] = [p.to_dict() for p in self.parts]
        return out

    def summary(self) -> str:
        if self.ok:
            return f"{self.check}: pass"
        f = self.first_failure()
        if f is None:
            f = self
        where = ""
        if f.witness is not None:
            where = " at (" + ", ".join(str(w + 1) if isinstance(w, int) else str(w)
                                        for w in f.witness) + ")"
        msg = f"{self.check}: FAIL ({f.check}{where})"
        if f.detail:
            msg += f": {f.detail}"
        return msg


def first_mismatch(check: str, pairs) -> VerificationReport:
    """Scan ``(witness, lhs, rhs)`` triples and report the first disagreement."""
    for witness, lhs, rhs in pairs:
        if np.any(np.asarray(lhs, dtype=object) != np.asarray(rhs, dtype=object)):
            return VerificationReport(check, False, tuple(witness), lhs, rhs)
    return VerificationReport(check, True)
