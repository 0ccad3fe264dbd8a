"""Certificates: ordered, witness-carrying step records for one group instance."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Optional

from ..fpgroups import FamilySpec

SCHEMA_VERSION = "1.0"

PASS, FAIL, GATED, NOTED = "pass", "fail", "gated", "noted-discrepancy"
STATUSES = (PASS, FAIL, GATED, NOTED)


def jsonable(x: Any) -> Any:
    """Plain JSON data (tuples to lists, keys to strings, objects via ``as_dict``)."""
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    if isinstance(x, (bool, int, float, str)) or x is None:
        return x
    if hasattr(x, "as_dict"):
        return jsonable(x.as_dict())
    if hasattr(x, "as_json"):
        return jsonable(x.as_json())
    if hasattr(x, "item"):
        return x.item()
    return str(x)


@dataclass
class Step:
    name: str
    status: str
    anchor: str
    witness: dict = field(default_factory=dict)
    note: str = ""

    def __post_init__(self):
        if self.status not in STATUSES:
            raise ValueError(f"unknown step status {self.status!r}")

    def as_dict(self) -> dict:
        d = {"name": self.name, "status": self.status, "paper_anchor": self.anchor,
             "witness": jsonable(self.witness)}
        if self.note:
            d["note"] = self.note
        return d


@dataclass
class Certificate:
    family: FamilySpec
    cases: list[str] = field(default_factory=list)
    steps: list[Step] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    @property
    def verdict(self) -> str:
        if not self.steps or any(s.status == FAIL for s in self.steps):
            return FAIL
        return PASS

    def counts(self) -> dict[str, int]:
        out = {s: 0 for s in STATUSES}
        for st in self.steps:
            out[st.status] += 1
        return out

    def step(self, name: str) -> Optional[Step]:
        return next((s for s in self.steps if s.name == name), None)

    def as_dict(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "family": self.family.as_dict(),
            "cases": list(self.cases),
            "steps": [s.as_dict() for s in self.steps],
            "verdict": self.verdict,
            "notes": list(self.notes),
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), indent=2, sort_keys=False)

    def to_markdown(self) -> str:
        f = self.family
        title = f"G{f.family_index} ({f.theorem}), p={f.p}, n={f.n}" + (f", a={f.a}" if f.a else "")
        lines = [f"### {title}: {self.verdict.upper()}", "",
                 f"cases: {', '.join(self.cases) or '-'}", "",
                 "| step | status | anchor |", "|---|---|---|"]
        for s in self.steps:
            lines.append(f"| {s.name} | {s.status} | {s.anchor} |")
        if self.notes:
            lines.append("")
            lines.extend(f"- {n}" for n in self.notes)
        return "\n".join(lines) + "\n"


class CaseRun:
    """Appends steps to a certificate; every check returns its boolean outcome."""

    def __init__(self, cert: Certificate, case: str):
        self.cert = cert
        self.case = case
        if case not in cert.cases:
            cert.cases.append(case)

    def _add(self, name: str, status: str, anchor: str, witness: Optional[dict], note: str) -> None:
        self.cert.steps.append(Step(f"{self.case}:{name}", status, anchor, dict(witness or {}), note))

    def check(self, name: str, anchor: str, ok: bool, witness: Optional[dict] = None, note: str = "") -> bool:
        self._add(name, PASS if ok else FAIL, anchor, witness, note)
        return bool(ok)

    def gate(self, name: str, anchor: str, ok: bool, witness: Optional[dict] = None, note: str = "") -> bool:
        """A hypothesis check for a cited result; status ``gated`` when the hypotheses hold."""
        self._add(name, GATED if ok else FAIL, anchor, witness, note)
        return bool(ok)

    def discrepancy(self, name: str, anchor: str, verified: bool, witness: Optional[dict] = None,
                    note: str = "") -> bool:
        """A printed value that differs from the recomputed one.

        ``verified`` says the recomputed replacement passed its own checks; when it
        did not, the step fails.
        """
        self._add(name, NOTED if verified else FAIL, anchor, witness, note)
        if verified and note:
            self.note(note)
        return bool(verified)

    def skip(self, name: str, anchor: str, reason: str) -> None:
        self._add(name, PASS, anchor, {"skipped": reason}, "")

    def note(self, text: str) -> None:
        if text not in self.cert.notes:
            self.cert.notes.append(text)
