"""Shared record of acceptance outcomes, read by the terminal summary hook."""
from __future__ import annotations

RESULTS: dict[int, tuple[bool, float, str]] = {}


def summary_lines() -> list[str]:
    return [
        f"criterion {k:>2}: {'PASS' if ok else 'FAIL'} ({secs:.1f} s of {note})"
        for k, (ok, secs, note) in sorted(RESULTS.items())
    ]
