"""Case registry, grid runner and reports."""

from __future__ import annotations

import json
import traceback
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Optional, Sequence

from ..fpgroups import FamilySpec, family_indices, in_range, validate
from ..fpgroups.families import ODD, TWO
from . import odd, two
from .certificate import FAIL, SCHEMA_VERSION, STATUSES, CaseRun, Certificate, jsonable
from .common import DEFAULT_ORACLE_DEPTH, prefix

SUPPORTED_PRIMES = (2, 3, 5)
MAX_ORDER = 4096
DEFAULT_N = {2: (4, 5, 6), 3: (3, 4, 5), 5: (3, 4)}
# instances outside the default n-ranges, so that every family gets at least one certificate
DEFAULT_EXTRAS = ((ODD, 10, 3, 6),)

DUP_G23_NOTE = ("two-3/two-8: G23 is listed under both the abelian-index-2 case and the u-variable case; "
                "both scripts are run and their outcomes recorded")
UNMAPPED_NOTE = ("G25 is not named in any p = 2 case header; the structurally matching u-variable script "
                 "is run as a fallback and the family is listed as unmapped")


class RunConfigError(ValueError):
    pass


@dataclass(frozen=True)
class RunConfig:
    primes: tuple[int, ...] = SUPPORTED_PRIMES
    n_values: Optional[tuple[int, ...]] = None
    theorem: Optional[str] = None
    families: Optional[tuple[int, ...]] = None
    report_format: str = "json"
    oracle_depth: int = DEFAULT_ORACLE_DEPTH
    jobs: int = 1
    extras: tuple[tuple[str, int, int, int], ...] = DEFAULT_EXTRAS

    def __post_init__(self):
        for p in self.primes:
            if p not in SUPPORTED_PRIMES:
                raise RunConfigError(f"p={p} not supported (choose from {SUPPORTED_PRIMES})")
            for n in self.n_for(p):
                if n < 1 or p ** n > MAX_ORDER:
                    raise RunConfigError(f"p^n = {p}^{n} outside 1..{MAX_ORDER}")
        if self.theorem not in (None, ODD, TWO):
            raise RunConfigError(f"unknown theorem {self.theorem!r}")
        if self.report_format not in ("json", "md"):
            raise RunConfigError(f"unknown report format {self.report_format!r}")
        if self.oracle_depth < 0 or self.jobs < 1:
            raise RunConfigError("oracle depth must be >= 0 and jobs >= 1")

    def n_for(self, p: int) -> tuple[int, ...]:
        return tuple(self.n_values) if self.n_values is not None else DEFAULT_N[p]

    def _wanted(self, theorem: str, index: int) -> bool:
        return (self.theorem is None or self.theorem == theorem) and \
            (self.families is None or index in self.families)

    def instances(self) -> list[FamilySpec]:
        """Valid family instances in deterministic order: theorem, family, p, n."""
        out = set()
        for theorem in (ODD, TWO):
            for idx in family_indices(theorem):
                if not self._wanted(theorem, idx):
                    continue
                for p in self.primes:
                    if (p == 2) != (theorem == TWO):
                        continue
                    for n in self.n_for(p):
                        if in_range(theorem, idx, p, n):
                            out.add((theorem, idx, p, n))
        if self.n_values is None:
            for theorem, idx, p, n in self.extras:
                if p in self.primes and self._wanted(theorem, idx) and in_range(theorem, idx, p, n):
                    out.add((theorem, idx, p, n))
        return [validate(FamilySpec(t, i, p, n)) for t, i, p, n in sorted(out)]


def scripts_for(spec: FamilySpec) -> list[str]:
    """Case scripts run on one instance, in order."""
    if spec.theorem == ODD:
        return [odd.CASES[spec.family_index][0]]
    idx = spec.family_index
    out = list(two.FAMILY_CASES.get(idx, ()))
    if idx in two.UNMAPPED:
        out.append(two.UNMAPPED[idx])
    if spec.n == 5:
        out.append("two-4")
    return out


def coverage() -> dict:
    """Family to case-script mapping for both theorems, and the unmapped list."""
    mapped = {ODD: {f"G{i}": [odd.CASES[i][0]] for i in family_indices(ODD)},
              TWO: {f"G{i}": list(two.FAMILY_CASES[i]) for i in family_indices(TWO) if i in two.FAMILY_CASES}}
    unmapped = [{"theorem": TWO, "family": f"G{i}", "fallback_script": s}
                for i, s in sorted(two.UNMAPPED.items())]
    unlisted = [{"case": "two-4", "named_family": "G26", "handled_by": "order-32 gate on every n = 5 instance"}]
    return {"mapped": mapped, "unmapped": unmapped, "named_but_not_classified": unlisted}


def _run_script(cert: Certificate, script: str, spec: FamilySpec, G, depth: int) -> None:
    run = CaseRun(cert, script)
    try:
        if spec.theorem == ODD:
            odd.CASES[spec.family_index][1](run, spec, G, depth)
        else:
            two.CASES[script](run, spec, G, depth)
    except Exception as e:  # noqa: BLE001  (failures live inside the certificate)
        run.check("error", script, False, {"exception": repr(e), "trace": traceback.format_exc(limit=4)})


def run_case(spec: FamilySpec, oracle_depth: int = DEFAULT_ORACLE_DEPTH) -> Certificate:
    """Run every script claiming ``spec``; never raises for mathematical failures."""
    spec = validate(spec)
    cert = Certificate(spec)
    try:
        G = prefix(CaseRun(cert, "prefix"), spec)
    except Exception as e:  # noqa: BLE001
        CaseRun(cert, "prefix").check("error", "classification", False, {"exception": repr(e)})
        G = None
    if G is not None:
        for script in scripts_for(spec):
            _run_script(cert, script, spec, G, oracle_depth)
    if spec.theorem == TWO and spec.family_index == 23:
        cert.notes.append(DUP_G23_NOTE)
    if spec.theorem == TWO and spec.family_index in two.UNMAPPED:
        cert.notes.append(UNMAPPED_NOTE)
    for st in cert.steps:
        st.witness = jsonable(st.witness)
    return cert


def _worker(args: tuple[FamilySpec, int]) -> Certificate:
    return run_case(*args)


@dataclass
class Report:
    config: RunConfig
    certificates: list[Certificate] = field(default_factory=list)

    @property
    def failed(self) -> list[Certificate]:
        return [c for c in self.certificates if c.verdict == FAIL]

    def summary(self) -> dict:
        steps = {s: 0 for s in STATUSES}
        for c in self.certificates:
            for k, v in c.counts().items():
                steps[k] += v
        return {"certificates": len(self.certificates),
                "pass": len(self.certificates) - len(self.failed),
                "fail": len(self.failed), "steps": steps}

    def notes(self) -> list[str]:
        out: list[str] = []
        for c in self.certificates:
            for n in c.notes:
                if n not in out:
                    out.append(n)
        return out

    def as_dict(self) -> dict:
        cov = coverage()
        return {"schema_version": SCHEMA_VERSION, "summary": self.summary(),
                "unmapped": cov["unmapped"], "named_but_not_classified": cov["named_but_not_classified"],
                "coverage": cov["mapped"], "notes": self.notes(),
                "certificates": [c.as_dict() for c in self.certificates]}

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), indent=2) + "\n"

    def to_markdown(self) -> str:
        s = self.summary()
        lines = ["# Certificate report", "",
                 f"certificates: {s['certificates']}, pass: {s['pass']}, fail: {s['fail']}", "",
                 "step statuses: " + ", ".join(f"{k} {v}" for k, v in s["steps"].items()), "",
                 "## Unmapped families", ""]
        cov = coverage()
        for u in cov["unmapped"]:
            lines.append(f"- {u['family']} ({u['theorem']}): fallback script {u['fallback_script']}")
        for u in cov["named_but_not_classified"]:
            lines.append(f"- {u['named_family']} named in {u['case']}: {u['handled_by']}")
        lines += ["", "## Notes", ""]
        lines += [f"- {n}" for n in self.notes()] or ["- none"]
        lines += ["", "## Certificates", ""]
        for c in self.certificates:
            lines.append(c.to_markdown())
        return "\n".join(lines)

    def render(self) -> str:
        return self.to_json() if self.config.report_format == "json" else self.to_markdown()


def run_all(cfg: RunConfig, specs: Optional[Sequence[FamilySpec]] = None) -> Report:
    """One certificate per instance, merged in the deterministic instance order."""
    specs = list(specs) if specs is not None else cfg.instances()
    args = [(s, cfg.oracle_depth) for s in specs]
    if cfg.jobs > 1 and len(args) > 1:
        with ProcessPoolExecutor(max_workers=cfg.jobs) as ex:
            certs = list(ex.map(_worker, args))
    else:
        certs = [_worker(a) for a in args]
    return Report(cfg, certs)


__all__ = ["RunConfig", "RunConfigError", "Report", "run_case", "run_all", "coverage", "scripts_for"]
