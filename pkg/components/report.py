"""
Check reports: ordered verdicts with printable witnesses.

Witness expressions are stored in the canonical expression grammar, so a
witness copied out of a report parses back to the same polynomial.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, field
from typing import Dict, List, Optional

import pandas as pd

from utils.constants import INFO_GLYPH, VERDICT_GLYPHS, VERDICTS


@dataclass(frozen=True)
class CheckEntry:
    """One named verdict."""

    check_id: str
    verdict: str
    witness: Optional[str] = None
    witness_label: Optional[str] = None
    note: Optional[str] = None
    informational: bool = False

    def __post_init__(self):
        if self.verdict not in VERDICTS:
            raise ValueError(f"Invalid verdict '{self.verdict}'. Must be one of: {', '.join(VERDICTS)}")

    def to_dict(self) -> Dict[str, Optional[str]]:
        return asdict(self)


@dataclass
class CheckReport:
    """
    Ordered list of verdicts plus report-level notes.

    Informational entries are printed but left out of ``summary`` and ``passed``.
    """

    title: str
    entries: List[CheckEntry] = field(default_factory=list)
    notes: List[str] = field(default_factory=list)

    def add(self, check_id: str, verdict: str, witness=None, witness_label: Optional[str] = None,
            note: Optional[str] = None, informational: bool = False) -> CheckEntry:
        if witness is not None and not isinstance(witness, str):
            witness = witness.to_expr() if hasattr(witness, 'to_expr') else str(witness)
        entry = CheckEntry(check_id, verdict, witness, witness_label, note, informational)
        self.entries.append(entry)
        return entry

    def extend(self, other: 'CheckReport') -> None:
        self.entries.extend(other.entries)
        self.notes.extend(n for n in other.notes if n not in self.notes)

    def verdict_of(self, check_id: str) -> Optional[str]:
        for entry in self.entries:
            if entry.check_id == check_id:
                return entry.verdict
        return None

    def to_frame(self) -> pd.DataFrame:
        columns = ['check_id', 'verdict', 'witness', 'witness_label', 'note', 'informational']
        return pd.DataFrame([e.to_dict() for e in self.entries], columns=columns)

    @property
    def summary(self) -> Dict[str, int]:
        frame = self.to_frame()
        graded = frame.loc[~frame['informational'].astype(bool), 'verdict']
        counts = graded.value_counts().reindex(list(VERDICTS), fill_value=0)
        return {verdict: int(count) for verdict, count in counts.items()}

    @property
    def passed(self) -> bool:
        return all(e.verdict == 'pass' for e in self.entries if not e.informational)

    def to_dict(self) -> Dict:
        return {
            'title': self.title,
            'entries': [e.to_dict() for e in self.entries],
            'notes': list(self.notes),
            'summary': self.summary,
        }

    def format_text(self) -> str:
        lines = [self.title]
        for entry in self.entries:
            if entry.informational:
                line = f"  {INFO_GLYPH} {entry.check_id} [{entry.verdict}]"
            else:
                line = f"  {VERDICT_GLYPHS[entry.verdict]} {entry.check_id}"
            if entry.witness is not None:
                label = entry.witness_label or 'witness'
                line += f": {label} = {entry.witness}"
            if entry.note:
                line += f"  ({entry.note})"
            lines.append(line)
        for note in self.notes:
            lines.append(f"  note: {note}")
        summary = self.summary
        lines.append("  " + ", ".join(f"{summary[v]} {v}" for v in VERDICTS))
        return "\n".join(lines)
