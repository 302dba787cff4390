"""Tiny pass/fail report container used by the validators and the CLI."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class CheckLine:
    group: str
    name: str
    passed: bool
    detail: str = ""


@dataclass
class CheckReport:
    title: str
    lines: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    def add(self, group: str, name: str, passed: bool, detail: str = "") -> None:
        self.lines.append(CheckLine(group, name, passed, detail))

    def note(self, text: str) -> None:
        self.notes.append(text)

    @property
    def passed(self) -> bool:
        return all(line.passed for line in self.lines)

    def counts(self, group: str) -> tuple[int, int]:
        sub = [line for line in self.lines if line.group == group]
        return sum(line.passed for line in sub), len(sub)

    def groups(self) -> list:
        seen = []
        for line in self.lines:
            if line.group not in seen:
                seen.append(line.group)
        return seen

    def summary(self) -> str:
        out = [self.title]
        for group in self.groups():
            ok, total = self.counts(group)
            out.append(f"  {group}: {ok}/{total} pass")
            for line in self.lines:
                if line.group == group and not line.passed:
                    out.append(f"    FAIL {line.name}: {line.detail}")
        for note in self.notes:
            out.append(f"  note: {note}")
        return "\n".join(out)

    def to_dict(self) -> dict:
        return {
            "title": self.title,
            "passed": self.passed,
            "groups": {
                group: {"passed": self.counts(group)[0], "total": self.counts(group)[1]}
                for group in self.groups()
            },
            "failures": [
                {"group": l.group, "name": l.name, "detail": l.detail}
                for l in self.lines
                if not l.passed
            ],
            "notes": list(self.notes),
        }
