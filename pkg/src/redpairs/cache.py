"""Persistent character store: an append-only JSON-lines file of computed characters.

Purely an optimization: deleting the file never changes any result.  Entries
are keyed by (kind, p, weight) where kind names one of the in-memory memo
tables (rank-1 simple, rank-1 tilting, rank-2 simple).  Every entry read back
is validated (leading weight, multiplicity one, dimension bookkeeping) before
being injected, so a corrupt or stale file degrades to recomputation, not to
wrong answers.  Malformed lines are counted and skipped; concurrent appends
from parallel invocations can in the worst case tear a line, which the next
load then ignores.
"""

from __future__ import annotations

import json
import os
from pathlib import Path

from . import sl2chars, sl3verdict
from .a2lat import A2Weight, dim_a2
from .charlat import FormalCharacter

__all__ = ["CharacterStore", "default_cache_dir"]

_ENV_VAR = "REDPAIRS_CACHE_DIR"
_FILE_NAME = "characters.jsonl"


def default_cache_dir() -> Path:
    env = os.environ.get(_ENV_VAR)
    if env:
        return Path(env)
    xdg = os.environ.get("XDG_CACHE_HOME")
    base = Path(xdg) if xdg else Path.home() / ".cache"
    return base / "redpairs"


def _check_sl2_simple(p: int, w, char: FormalCharacter) -> bool:
    return (
        isinstance(w, int)
        and w >= 0
        and char.rank == 1
        and char.coefficient(w) == 1
        and max(char.support()) == w
        and char.dimension() == sl2chars.simple_dimension(p, w)
    )


def _check_sl2_tilting(p: int, w, char: FormalCharacter) -> bool:
    return (
        isinstance(w, int)
        and w >= 0
        and char.rank == 1
        and char.coefficient(w) == 1
        and max(char.support()) == w
        and char.dimension() == sl2chars.tilting_dimension(p, w)
    )


def _a2_simple_dim(p: int, w: A2Weight) -> "int | None":
    total = 1
    for d in sl3verdict.steinberg_digits_a2(p, w).digit_weights:
        if d.a + d.b + 2 > p:
            return None
        total *= dim_a2(d)
    return total


def _check_a2_simple(p: int, w, char: FormalCharacter) -> bool:
    if not (isinstance(w, A2Weight) and w.a >= 0 and w.b >= 0 and char.rank == 2):
        return False
    if char.coefficient(tuple(w)) != 1:
        return False
    top = max(char.support(), key=lambda t: (t[0] + t[1], t))
    if A2Weight(*top) != w:
        return False
    want = _a2_simple_dim(p, w)
    # Entries whose digits fall outside the supported region never originate
    # from the memo tables; refuse them rather than trust them unverified.
    return want is not None and char.dimension() == want


def _registry() -> dict:
    return {
        "sl2-simple": (sl2chars._SIMPLE_MEMO, _check_sl2_simple),
        "sl2-tilting": (sl2chars._TILTING_MEMO, _check_sl2_tilting),
        "a2-simple": (sl3verdict._A2_SIMPLE_MEMO, _check_a2_simple),
    }


def _weight_to_json(w):
    return list(w) if isinstance(w, tuple) else w


def _weight_from_json(kind: str, raw):
    if kind == "a2-simple":
        if isinstance(raw, list) and len(raw) == 2 and all(isinstance(c, int) for c in raw):
            return A2Weight(*raw)
        return None
    return raw if isinstance(raw, int) else None


class CharacterStore:
    """Loads cached characters into the memo tables and appends new ones back."""

    def __init__(self, directory: "Path | str | None" = None):
        self.directory = Path(directory) if directory else default_cache_dir()
        self.path = self.directory / _FILE_NAME
        self.known: set = set()
        self.skipped = 0

    def load(self) -> int:
        """Inject valid cached entries; returns how many were accepted."""
        self.skipped = 0
        accepted = 0
        if not self.path.exists():
            return 0
        registry = _registry()
        with open(self.path, "r", encoding="utf-8") as fh:
            for line in fh:
                line = line.strip()
                if not line:
                    continue
                try:
                    row = json.loads(line)
                    kind = row["kind"]
                    p = row["p"]
                    memo, check = registry[kind]
                    w = _weight_from_json(kind, row["weight"])
                    char = FormalCharacter.from_json_dict(row["character"])
                    ok = (
                        w is not None
                        and isinstance(p, int)
                        and p >= 2
                        and check(p, w, char)
                    )
                except (KeyError, TypeError, ValueError, json.JSONDecodeError):
                    ok = False
                if not ok:
                    self.skipped += 1
                    continue
                memo.setdefault((p, w), char)
                self.known.add((kind, p, w))
                accepted += 1
        return accepted

    def flush(self) -> int:
        """Append memo entries not yet on disk; returns how many were written."""
        rows = []
        for kind, (memo, _) in _registry().items():
            for (p, w), char in memo.items():
                if (kind, p, w) in self.known:
                    continue
                rows.append(
                    (
                        kind,
                        p,
                        w,
                        json.dumps(
                            {
                                "kind": kind,
                                "p": p,
                                "weight": _weight_to_json(w),
                                "character": char.to_json_dict(),
                            },
                            sort_keys=True,
                            separators=(",", ":"),
                        ),
                    )
                )
        if not rows:
            return 0
        rows.sort(key=lambda r: (r[0], r[1], _weight_to_json(r[2]) if isinstance(r[2], tuple) else [r[2]]))
        self.directory.mkdir(parents=True, exist_ok=True)
        with open(self.path, "a", encoding="utf-8") as fh:
            for kind, p, w, payload in rows:
                fh.write(payload + "\n")
                self.known.add((kind, p, w))
        return len(rows)
