"""Machine-readable outcomes of law checks.

A :class:`LawReport` records one law's verdict over a batch of trials.  A
refutation always carries a replayable witness (JSON-serializable, built from
the canonical element encodings), and inconclusive verdicts carry the search
bound that was exhausted.  Report lists serialize to JSON lines with a fixed
key order so identical runs are byte-identical.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable

PASS = "pass"
REFUTED = "refuted"
INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class LawReport:
    law_id: str
    verdict: str
    trials: int
    seed: int
    witness: object = None
    bound: int | None = None
    detail: str = ""

    @staticmethod
    def passed(law_id: str, trials: int, seed: int, detail: str = "") -> "LawReport":
        return LawReport(law_id, PASS, trials, seed, detail=detail)

    @staticmethod
    def refuted(law_id: str, trials: int, seed: int, witness, detail: str = "") -> "LawReport":
        return LawReport(law_id, REFUTED, trials, seed, witness=witness, detail=detail)

    @staticmethod
    def inconclusive(law_id: str, trials: int, seed: int, bound: int, detail: str = "") -> "LawReport":
        return LawReport(law_id, INCONCLUSIVE, trials, seed, bound=bound, detail=detail)

    @property
    def ok(self) -> bool:
        return self.verdict != REFUTED

    def to_json_dict(self) -> dict:
        out = {
            "law_id": self.law_id,
            "verdict": self.verdict,
            "trials": self.trials,
            "seed": self.seed,
        }
        if self.witness is not None:
            out["witness"] = self.witness
        if self.bound is not None:
            out["bound"] = self.bound
        if self.detail:
            out["detail"] = self.detail
        return out


def reports_to_jsonl(reports: Iterable[LawReport]) -> str:
    return "".join(
        json.dumps(r.to_json_dict(), separators=(",", ":")) + "\n" for r in reports
    )


def render_table(reports: Iterable[LawReport], expected: frozenset[str] = frozenset()) -> str:
    """Plain-text table; law ids in ``expected`` are flagged as predicted refutations."""
    rows = []
    for r in reports:
        verdict = r.verdict.upper()
        if r.law_id in expected and r.verdict == REFUTED:
            verdict += " (expected)"
        note = r.detail
        if r.verdict == REFUTED and r.witness is not None:
            blob = json.dumps(r.witness, separators=(",", ":"))
            note = (note + " " if note else "") + (blob if len(blob) <= 60 else blob[:57] + "...")
        if r.verdict == INCONCLUSIVE and r.bound is not None:
            note = (note + " " if note else "") + f"bound={r.bound}"
        rows.append((r.law_id, verdict, str(r.trials), note))
    header = ("LAW", "VERDICT", "TRIALS", "NOTE")
    widths = [max(len(row[i]) for row in rows + [header]) for i in range(4)]
    lines = ["  ".join(h.ljust(w) for h, w in zip(header, widths)).rstrip()]
    for row in rows:
        lines.append("  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip())
    return "\n".join(lines) + "\n"
