"""Check reports shared by all axiom suites."""
from __future__ import annotations

from dataclasses import dataclass, field


class ScaleError(RuntimeError):
    """Raised when an exhaustive computation is requested beyond its supported range."""


@dataclass
class CheckResult:
    name: str
    passed: bool | None  # None means skipped
    samples: int = 0
    counterexample: str | None = None
    note: str | None = None

    @property
    def status(self) -> str:
        if self.passed is None:
            return "skip"
        return "pass" if self.passed else "fail"


@dataclass
class AxiomReport:
    title: str
    results: list[CheckResult] = field(default_factory=list)

    def add(self, result: CheckResult) -> CheckResult:
        self.results.append(result)
        return result

    @property
    def passed(self) -> bool:
        return all(r.passed is not False for r in self.results)

    def __getitem__(self, name: str) -> CheckResult:
        for r in self.results:
            if r.name == name:
                return r
        raise KeyError(name)

    def __contains__(self, name: str) -> bool:
        return any(r.name == name for r in self.results)

    def failures(self) -> list[CheckResult]:
        return [r for r in self.results if r.passed is False]

    def lines(self) -> list[str]:
        out = []
        for r in self.results:
            out.append(f"{r.name}={r.status}")
            if r.samples:
                out.append(f"{r.name}.samples={r.samples}")
            if r.counterexample is not None:
                out.append(f"{r.name}.counterexample={r.counterexample}")
            if r.note:
                out.append(f"{r.name}.note={r.note}")
        out.append(f"{self.title}.result={'pass' if self.passed else 'fail'}")
        return out

    def text(self) -> str:
        return "\n".join(self.lines())
