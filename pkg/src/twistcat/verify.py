"""Law-scanning engine and check reports.

A law is a predicate over a tuple space.  The engine either walks the whole
space in lexicographic order or draws a seeded sample from it, and records
the least (or first drawn) violating tuple with both evaluated sides.
Results never depend on the number of worker threads.
"""
from __future__ import annotations

import json
import random
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from itertools import islice
from typing import Any, Callable, Iterable, Optional, Sequence

MODES = ("auto", "exhaustive", "sampled")
CHUNK = 4096


@dataclass(frozen=True)
class VerificationPolicy:
    """How laws are scanned.

    ``mode="auto"`` enumerates a tuple space when its size is at most
    ``threshold`` and samples otherwise.  ``workers`` only affects speed.
    """

    mode: str = "auto"
    samples: int = 10000
    seed: int = 20240601
    threshold: int = 200000
    workers: int = 1

    def __post_init__(self):
        if self.mode not in MODES:
            raise ValueError(f"unknown verification mode {self.mode!r}")
        if self.samples < 1 or self.threshold < 1 or self.workers < 1:
            raise ValueError("samples, threshold and workers must be positive")

    def echo(self) -> dict:
        return {"mode": self.mode, "samples": self.samples, "seed": self.seed,
                "threshold": self.threshold}

    def with_(self, **kw) -> "VerificationPolicy":
        return replace(self, **kw)


DEFAULT_POLICY = VerificationPolicy()


def law_rng(policy: VerificationPolicy, name: str) -> random.Random:
    # str seeds go through sha512, so this is stable across runs and platforms
    return random.Random(f"{policy.seed}/{name}")


def jsonable(x):
    if isinstance(x, (tuple, list)):
        return [jsonable(y) for y in x]
    if isinstance(x, (frozenset, set)):
        return sorted((jsonable(y) for y in x), key=repr)
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    if x is None or isinstance(x, (bool, int, str)):
        return x
    return repr(x)


def differ(lhs, rhs):
    """Test helper: None when equal, otherwise the pair of evaluated sides."""
    return None if lhs == rhs else (lhs, rhs)


@dataclass
class Law:
    name: str
    argnames: Sequence[str]
    test: Callable[..., Any]
    space: Optional[Callable[[], Iterable[tuple]]] = None
    size: Any = None                    # int or zero-argument callable
    sample: Optional[Callable[[random.Random], tuple]] = None
    critical: Optional[Callable[[], Iterable[tuple]]] = None

    def space_size(self) -> Optional[int]:
        s = self.size
        return s() if callable(s) else s


@dataclass
class LawResult:
    law: str
    cases: int
    mode: str
    violations: int = 0
    counterexample: Optional[dict] = None
    note: Optional[str] = None

    @property
    def ok(self) -> bool:
        return self.violations == 0

    def to_dict(self) -> dict:
        d = {"law": self.law, "cases": self.cases, "mode": self.mode,
             "violations": self.violations, "status": "pass" if self.ok else "fail"}
        if self.counterexample is not None:
            d["counterexample"] = self.counterexample
        if self.note:
            d["note"] = self.note
        return d


@dataclass
class CheckReport:
    subject: str
    laws: list = field(default_factory=list)
    policy: Optional[VerificationPolicy] = None
    facts: dict = field(default_factory=dict)
    refusal: Optional[str] = None
    timing_ms: float = 0.0

    @property
    def status(self) -> str:
        if self.refusal is not None:
            return "refused"
        return "pass" if all(r.ok for r in self.laws) else "fail"

    @property
    def ok(self) -> bool:
        return self.status == "pass"

    def law(self, name: str) -> LawResult:
        for r in self.laws:
            if r.law == name:
                return r
        raise KeyError(name)

    def failures(self) -> list:
        return [r for r in self.laws if not r.ok]

    def merge(self, other: "CheckReport", prefix: str = "") -> "CheckReport":
        for r in other.laws:
            self.laws.append(replace(r, law=prefix + r.law))
        for k, v in other.facts.items():
            self.facts[prefix + k] = v
        if other.refusal is not None and self.refusal is None:
            self.refusal = f"{prefix}{other.refusal}"
        self.timing_ms += other.timing_ms
        return self

    def to_dict(self, timing: bool = False) -> dict:
        d = {"subject": self.subject, "status": self.status,
             "laws": [r.to_dict() for r in sorted(self.laws, key=lambda r: r.law)],
             "facts": jsonable(self.facts)}
        if self.policy is not None:
            d["policy"] = self.policy.echo()
        if self.refusal is not None:
            d["refusal"] = self.refusal
        if timing:
            d["timing_ms"] = round(self.timing_ms, 3)
        return d

    def to_json(self, timing: bool = False) -> str:
        return json.dumps(self.to_dict(timing), sort_keys=True, indent=2)

    def summary(self) -> str:
        lines = [f"{self.subject}: {self.status.upper()}"]
        if self.refusal:
            lines.append(f"  refused: {self.refusal}")
        for r in sorted(self.laws, key=lambda r: r.law):
            flag = "ok  " if r.ok else "FAIL"
            lines.append(f"  [{flag}] {r.law}: {r.cases} cases ({r.mode})")
            if r.counterexample is not None:
                lines.append(f"         counterexample {json.dumps(r.counterexample, sort_keys=True)}")
        for k, v in sorted(self.facts.items()):
            lines.append(f"  {k}: {json.dumps(jsonable(v))}")
        return "\n".join(lines)


def _evaluate(test, argnames, indexed):
    """Scan one chunk; returns (count, violations, (index, counterexample) | None)."""
    count = bad = 0
    first = None
    for i, args in indexed:
        count += 1
        try:
            out = test(*args)
        except Exception as exc:  # a crash inside a law is itself a violation
            out = f"error: {type(exc).__name__}: {exc}"
        if out is None:
            continue
        bad += 1
        if first is None:
            ce = {"args": {n: jsonable(a) for n, a in zip(argnames, args)}}
            if isinstance(out, tuple) and len(out) == 2:
                ce["lhs"], ce["rhs"] = jsonable(out[0]), jsonable(out[1])
            else:
                ce["note"] = str(out)
            first = (i, ce)
    return count, bad, first


def scan(name: str, argnames, test, tuples: Iterable[tuple], mode: str,
         workers: int = 1) -> LawResult:
    it = enumerate(tuples)
    if workers <= 1:
        count, bad, first = _evaluate(test, argnames, it)
    else:
        count = bad = 0
        first = None
        with ThreadPoolExecutor(max_workers=workers) as pool:
            futures = []
            while True:
                chunk = list(islice(it, CHUNK))
                if not chunk:
                    break
                futures.append(pool.submit(_evaluate, test, argnames, chunk))
            for fut in futures:
                c, b, f = fut.result()
                count += c
                bad += b
                if f is not None and (first is None or f[0] < first[0]):
                    first = f
    return LawResult(name, count, mode, bad, None if first is None else first[1])


def choose_mode(law: Law, policy: VerificationPolicy) -> str:
    if law.space is None:
        return "sampled"
    if law.sample is None or policy.mode == "exhaustive":
        return "exhaustive"
    if policy.mode == "sampled":
        return "sampled"
    size = law.space_size()
    return "exhaustive" if size is not None and size <= policy.threshold else "sampled"


def run_law(law: Law, policy: VerificationPolicy) -> list:
    mode = choose_mode(law, policy)
    if mode == "exhaustive":
        return [scan(law.name, law.argnames, law.test, law.space(), mode, policy.workers)]
    rng = law_rng(policy, law.name)
    drawn = [law.sample(rng) for _ in range(policy.samples)]
    out = [scan(law.name, law.argnames, law.test, drawn, mode, policy.workers)]
    if law.critical is not None:
        out.append(scan(law.name + "@critical", law.argnames, law.test, law.critical(),
                        "exhaustive", policy.workers))
    return out


def run_laws(subject: str, laws: Iterable[Law], policy: Optional[VerificationPolicy] = None,
             facts: Optional[dict] = None) -> CheckReport:
    policy = policy or DEFAULT_POLICY
    t0 = time.perf_counter()
    report = CheckReport(subject, policy=policy, facts=dict(facts or {}))
    for law in laws:
        report.laws.extend(run_law(law, policy))
    report.timing_ms = (time.perf_counter() - t0) * 1000.0
    return report


def refused(subject: str, reason: str, policy: Optional[VerificationPolicy] = None,
            cause: Optional[CheckReport] = None) -> CheckReport:
    rep = CheckReport(subject, policy=policy or DEFAULT_POLICY, refusal=reason)
    if cause is not None:
        rep.laws.extend(cause.laws)
    return rep
