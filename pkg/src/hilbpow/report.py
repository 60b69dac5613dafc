"""Experiment manifests, the job runner, and report rendering.

A manifest is a JSON document::

    {
      "schema": "hilbpow.manifest/v1",
      "n": 2,
      "ideals": {"I": "x1^2, x1*x2", "J": "x1^2, x2^3"},
      "caps": {"k_max": 60, "g_max": 6, "time_budget": null},
      "jobs": [
        {"name": "sat", "family": "SAT_VS_POWER", "I": "I",
         "k_range": [1, 12], "verdicts": ["cor-2.8-rational-limit"],
         "out": "sat.jsonl"}
      ]
    }

Jobs reference ideals by name.  ``J`` is required for the families that pair
two ideals; ``n_max`` (default 8) bounds the reduction search; ``out`` streams
rows as JSON lines, relative to the manifest's directory.
"""

from __future__ import annotations

import json
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any

from .asymptotics import (
    InsufficientSamples,
    TheoremViolation,
    Verdict,
    degree_bound_verdict,
    equal_leading_verdict,
    fit_polynomial,
    fit_quasipolynomial,
    normalized_limit,
    rees_criterion_verdict,
    stabilized_value,
)
from .families import FamilyKind, FamilySpec, K_MAX_CAP, is_reduction, iter_rows
from .hilbert import EMPTY
from .monomial import MonomialIdeal, colon_monomial, power, product
from .textio import IdealParseError, format_ideal, parse_ideal

REPORT_SCHEMA = "hilbpow.report/v1"
MANIFEST_SCHEMA = "hilbpow.manifest/v1"

CLAIMS = (
    "thm-1.1-degree-bound",
    "thm-2.7a-dimension-stable",
    "thm-2.7b-equal-leading",
    "cor-2.8-rational-limit",
    "cor-2.4-colon-identity",
    "rees-criterion",
    "thm-4.10-normal-pair",
)

_APPLICABLE = {
    "thm-1.1-degree-bound": {FamilyKind.QUOTIENT_RING_POWERS},
    "rees-criterion": {FamilyKind.REES_PAIR},
    "thm-4.10-normal-pair": {FamilyKind.CLOSURE_PAIR},
}

DEFAULT_VERDICTS = {
    FamilyKind.QUOTIENT_RING_POWERS: ["thm-1.1-degree-bound"],
    FamilyKind.SAT_VS_POWER: ["thm-2.7a-dimension-stable", "thm-2.7b-equal-leading", "cor-2.8-rational-limit"],
    FamilyKind.SYMBOLIC_J_VS_POWER: ["thm-2.7a-dimension-stable", "thm-2.7b-equal-leading", "cor-2.8-rational-limit"],
    FamilyKind.SQUAREFREE_SYMBOLIC_VS_POWER: ["thm-2.7a-dimension-stable", "thm-2.7b-equal-leading"],
    FamilyKind.CLOSURE_VS_POWER: ["thm-2.7a-dimension-stable", "thm-2.7b-equal-leading", "cor-2.8-rational-limit"],
    FamilyKind.CONSECUTIVE_POWERS: ["thm-2.7a-dimension-stable"],
    FamilyKind.REES_PAIR: ["rees-criterion"],
    FamilyKind.CLOSURE_PAIR: ["thm-4.10-normal-pair"],
}


class ManifestError(ValueError):
    def __init__(self, message: str, job: str | None = None, line: int | None = None, column: int | None = None):
        self.job, self.line, self.column = job, line, column
        where = []
        if job is not None:
            where.append(f"job {job!r}")
        if line is not None:
            where.append(f"line {line}, column {column}")
        super().__init__(f"{message}" + (f" ({'; '.join(where)})" if where else ""))


@dataclass(frozen=True)
class Job:
    name: str
    spec: FamilySpec
    verdicts: tuple[str, ...]
    n_max: int = 8
    out: str | None = None


@dataclass
class ExperimentManifest:
    n: int
    ideals: dict[str, MonomialIdeal]
    jobs: list[Job]
    k_max: int = K_MAX_CAP
    g_max: int = 6
    time_budget: float | None = None
    base_dir: Path = field(default_factory=Path)

    def to_json(self) -> dict:
        return {
            "schema": MANIFEST_SCHEMA,
            "n": self.n,
            "ideals": {name: format_ideal(I) for name, I in sorted(self.ideals.items())},
            "caps": {"k_max": self.k_max, "g_max": self.g_max, "time_budget": self.time_budget},
            "jobs": [self._job_json(job) for job in self.jobs],
        }

    def _label(self, ideal: MonomialIdeal | None) -> str | None:
        if ideal is None:
            return None
        return next(name for name, I in sorted(self.ideals.items()) if I == ideal)

    def _job_json(self, job: Job) -> dict:
        out = {
            "name": job.name,
            "family": job.spec.kind.value,
            "I": self._label(job.spec.I),
            "k_range": list(job.spec.k_range),
            "verdicts": list(job.verdicts),
            "n_max": job.n_max,
            "out": job.out,
        }
        if job.spec.J is not None:
            out["J"] = self._label(job.spec.J)
        return out


def _job_from_json(raw: Any, idx: int, n: int, ideals: dict, k_cap: int) -> Job:
    if not isinstance(raw, dict):
        raise ManifestError("job entry must be an object", job=f"#{idx}")
    name = str(raw.get("name", f"job{idx}"))
    try:
        kind = FamilyKind(raw["family"])
    except KeyError:
        raise ManifestError("missing 'family'", job=name) from None
    except ValueError:
        raise ManifestError(f"unknown family {raw['family']!r}", job=name) from None

    def ref(key):
        label = raw.get(key)
        if label is None:
            return None
        if label not in ideals:
            raise ManifestError(f"undeclared ideal {label!r}", job=name)
        return ideals[label]

    k_range = raw.get("k_range", [1, 20])
    if not (isinstance(k_range, list) and len(k_range) == 2 and all(isinstance(v, int) for v in k_range)):
        raise ManifestError("k_range must be [k_min, k_max]", job=name)
    if k_range[1] > k_cap:
        raise ManifestError(f"k_max {k_range[1]} exceeds the manifest cap {k_cap}", job=name)
    try:
        spec = FamilySpec(kind, ref("I"), ref("J"), tuple(k_range))
    except (ValueError, TypeError) as exc:
        raise ManifestError(str(exc), job=name) from exc
    verdicts = tuple(raw.get("verdicts", DEFAULT_VERDICTS[kind]))
    for claim in verdicts:
        if claim not in CLAIMS:
            raise ManifestError(f"unknown verdict {claim!r}", job=name)
        if claim in _APPLICABLE and kind not in _APPLICABLE[claim]:
            raise ManifestError(f"verdict {claim!r} does not apply to {kind.value}", job=name)
    return Job(name, spec, verdicts, int(raw.get("n_max", 8)), raw.get("out"))


def load_manifest(text: str, base_dir: Path | str = ".") -> ExperimentManifest:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ManifestError(exc.msg, line=exc.lineno, column=exc.colno) from exc
    if not isinstance(data, dict) or "n" not in data:
        raise ManifestError("manifest must be an object with a ring dimension 'n'")
    n = data["n"]
    if not isinstance(n, int) or n < 1:
        raise ManifestError("ring dimension 'n' must be a positive integer")
    ideals = {}
    for label, body in (data.get("ideals") or {}).items():
        try:
            ideals[label] = parse_ideal(body if isinstance(body, str) else json.dumps(body), n)
        except IdealParseError as exc:
            raise ManifestError(f"ideal {label!r}: {exc}") from exc
    caps = data.get("caps") or {}
    k_cap = int(caps.get("k_max", K_MAX_CAP))
    jobs = [_job_from_json(raw, i, n, ideals, k_cap) for i, raw in enumerate(data.get("jobs") or [])]
    names = [job.name for job in jobs]
    dupes = sorted({x for x in names if names.count(x) > 1})
    if dupes:
        raise ManifestError(f"duplicate job name {dupes[0]!r}", job=dupes[0])
    return ExperimentManifest(
        n, ideals, jobs, k_cap, int(caps.get("g_max", 6)), caps.get("time_budget"), Path(base_dir)
    )


# -- running -----------------------------------------------------------------


@dataclass
class JobResult:
    name: str
    spec: FamilySpec
    status: str
    rows: list = field(default_factory=list)
    fits: dict = field(default_factory=dict)
    verdicts: list[Verdict] = field(default_factory=list)
    error: str | None = None
    seconds: float = 0.0

    def to_json(self, timings: bool = False) -> dict:
        out = {
            "name": self.name,
            "family": self.spec.to_json(),
            "status": self.status,
            "rows": [
                {
                    "k": r.k,
                    "dimension": "EMPTY" if r.data.d is EMPTY else r.data.d,
                    "e": list(r.data.e),
                    "length": r.length,
                    "series": str(r.series),
                }
                for r in self.rows
            ],
            "fits": self.fits,
            "verdicts": [v.to_json() for v in self.verdicts],
            "error": self.error,
        }
        if timings:
            out["seconds"] = round(self.seconds, 3)
        return out


@dataclass
class Report:
    manifest: ExperimentManifest
    jobs: list[JobResult]

    @property
    def any_failed_verdict(self) -> bool:
        return any(v.holds is False for job in self.jobs for v in job.verdicts)

    @property
    def any_job_error(self) -> bool:
        return any(job.status == "error" for job in self.jobs)

    def to_json(self, timings: bool = False) -> dict:
        return {
            "schema": REPORT_SCHEMA,
            "manifest": self.manifest.to_json(),
            "jobs": [job.to_json(timings) for job in self.jobs],
        }


def _e0_sequence(rows, k_start):
    return {r.k: (0 if r.data.d is EMPTY else r.data.e[0]) for r in rows if r.k >= k_start}


def _colon_identity_verdict(spec: FamilySpec) -> Verdict:
    claim = "cor-2.4-colon-identity"
    I = spec.I
    k_min, k_max = spec.k_range
    prev = power(I, max(k_min, 2) - 1)
    for k in range(max(k_min, 2), k_max + 1):
        cur = product(prev, I)
        for i in range(I.n):
            x = tuple(int(j == i) for j in range(I.n))
            lhs = colon_monomial(cur, x)
            rhs = product(colon_monomial(prev, x), I)
            if lhs != rhs:
                return Verdict(claim, False, {"k": k, "variable": f"x{i + 1}", "lhs": format_ideal(lhs), "rhs": format_ideal(rhs)})
        prev = cur
    return Verdict(claim, True, {"k_range": [max(k_min, 2), k_max]})


def _analyse(job: Job, rows: list, manifest: ExperimentManifest) -> tuple[dict, list[Verdict]]:
    spec = job.spec
    n = spec.n
    fits: dict = {}
    verdicts: list[Verdict] = []
    if not rows:
        return fits, [Verdict(c, None, {"reason": "no rows"}) for c in job.verdicts]

    dims = {r.k: r.data.d for r in rows}
    stable = stabilized_value(dims)
    if stable is not None:
        d, k_start = stable
        fits["dimension"] = {"value": "EMPTY" if d is EMPTY else d, "k0": k_start}
    else:
        d, k_start = None, rows[0].k
        fits["dimension"] = None

    qp = None
    if stable is not None:
        try:
            qp = fit_quasipolynomial(_e0_sequence(rows, k_start), manifest.g_max)
        except InsufficientSamples:
            qp = None
        fits["e0"] = None if qp is None else qp.to_json()
    if all(r.length is not None for r in rows):
        try:
            fit = fit_polynomial({r.k: r.length for r in rows})
        except InsufficientSamples:
            fit = None
        fits["length"] = None if fit is None else {"k0": fit[1], **fit[0].to_json()}

    reduction = None
    if spec.kind in (FamilyKind.REES_PAIR, FamilyKind.CLOSURE_PAIR):
        reduction = is_reduction(spec.J, spec.I, job.n_max)
        fits["reduction"] = {"n_max": job.n_max, "n": reduction}

    for claim in job.verdicts:
        if claim == "thm-1.1-degree-bound":
            verdicts.append(degree_bound_verdict(rows, n, claim))
        elif claim == "thm-2.7a-dimension-stable":
            if stable is None:
                verdicts.append(Verdict(claim, None, {"reason": "no constant final run", "dimensions": [str(v) for v in dims.values()]}))
            else:
                verdicts.append(Verdict(claim, True, fits["dimension"]))
        elif claim == "thm-2.7b-equal-leading":
            if qp is None:
                verdicts.append(Verdict(claim, None, {"reason": "e_0 did not fit a quasi-polynomial"}))
            else:
                verdicts.append(equal_leading_verdict(qp, claim))
        elif claim == "cor-2.8-rational-limit":
            if qp is None:
                verdicts.append(Verdict(claim, None, {"reason": "e_0 did not fit a quasi-polynomial"}))
            else:
                try:
                    limit = normalized_limit(qp, n, d)
                    fits["limit"] = str(limit)
                    verdicts.append(Verdict(claim, True, {"limit": str(limit), "n_minus_d": None if d is EMPTY else n - d}))
                except TheoremViolation as exc:
                    verdicts.append(Verdict(claim, False, {"reason": str(exc), "e0": qp.to_json()}))
                except ValueError as exc:
                    verdicts.append(Verdict(claim, False, {"reason": str(exc), "e0": qp.to_json()}))
        elif claim == "cor-2.4-colon-identity":
            verdicts.append(_colon_identity_verdict(spec))
        elif claim in ("rees-criterion", "thm-4.10-normal-pair"):
            if any(r.length is None for r in rows):
                verdicts.append(Verdict(claim, None, {"reason": "rows are not of finite length"}))
            else:
                verdicts.append(rees_criterion_verdict(rows, reduction, n, claim))
    return fits, verdicts


def run_job(job: Job, manifest: ExperimentManifest) -> JobResult:
    start = time.perf_counter()
    budget = manifest.time_budget
    rows = []
    status = "ok"
    try:
        for row in iter_rows(job.spec):
            rows.append(row)
            if budget is not None and time.perf_counter() - start > budget:
                status = "timed_out"
                break
        if job.out:
            path = manifest.base_dir / job.out
            with open(path, "w", encoding="utf-8") as fh:
                for row in rows:
                    fh.write(json.dumps(row.to_json(), sort_keys=True) + "\n")
        if status == "ok":
            fits, verdicts = _analyse(job, rows, manifest)
        else:
            fits, verdicts = {}, [Verdict(c, None, {"reason": "time budget exhausted"}) for c in job.verdicts]
        return JobResult(job.name, job.spec, status, rows, fits, verdicts, None, time.perf_counter() - start)
    except Exception as exc:  # recorded per job; siblings keep running
        return JobResult(job.name, job.spec, "error", rows, {}, [], f"{type(exc).__name__}: {exc}", time.perf_counter() - start)


def run(manifest: ExperimentManifest, workers: int = 1) -> Report:
    if workers <= 1 or len(manifest.jobs) <= 1:
        results = [run_job(job, manifest) for job in manifest.jobs]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(lambda job: run_job(job, manifest), manifest.jobs))
    return Report(manifest, results)


# -- rendering ---------------------------------------------------------------


def _jsonable(obj):
    if isinstance(obj, Fraction):
        return str(obj)
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def render(report: Report, fmt: str = "json", quantities: tuple[str, ...] = ("length", "e0"), timings: bool = False) -> str:
    if fmt == "json":
        return json.dumps(report.to_json(timings), sort_keys=True, indent=2, default=_jsonable) + "\n"
    if fmt == "tsv":
        lines = ["job\tk\tdimension\te\tlength"]
        for job in report.jobs:
            for r in job.rows:
                dim = "EMPTY" if r.data.d is EMPTY else str(r.data.d)
                e = ",".join(str(v) for v in r.data.e)
                ln = "" if r.length is None else str(r.length)
                lines.append(f"{job.name}\t{r.k}\t{dim}\t{e}\t{ln}")
        return "\n".join(lines) + "\n"
    if fmt == "plotdata":
        blocks = []
        for job in report.jobs:
            for q in quantities:
                pts = []
                for r in job.rows:
                    if q == "length":
                        value = r.length
                    elif q == "e0":
                        value = 0 if r.data.d is EMPTY else r.data.e[0]
                    elif q == "dimension":
                        value = None if r.data.d is EMPTY else r.data.d
                    else:
                        raise ValueError(f"unknown quantity {q!r}")
                    if value is not None:
                        pts.append(f"{r.k} {value}")
                if pts:
                    blocks.append("\n".join([f"# {job.name} {q}", *pts]))
        return "\n\n".join(blocks) + ("\n" if blocks else "")
    raise ValueError(f"unknown format {fmt!r}")
