"""Append-only JSON-lines result cache.

One record per line: {"hash", "op", "params", "version", "result"}.
Lookups match on the first four fields exactly; records written by another
tool version are treated as misses.  Corrupt lines are skipped with a
warning, and an unwritable path downgrades to a warning so computation can
proceed uncached.
"""

from __future__ import annotations

import json
import sys


def _canonical(params: dict) -> str:
    return json.dumps(params, sort_keys=True, separators=(",", ":"))


def cache_lookup(path: str, quiver_hash: str, op: str, params: dict, version: str):
    """The most recent matching payload, or None."""
    wanted = _canonical(params)
    found = None
    try:
        with open(path, "r", encoding="utf-8") as fh:
            for lineno, line in enumerate(fh, start=1):
                line = line.strip()
                if not line:
                    continue
                try:
                    record = json.loads(line)
                except json.JSONDecodeError:
                    print(f"warning: skipping corrupt cache line {lineno}", file=sys.stderr)
                    continue
                if not isinstance(record, dict):
                    print(f"warning: skipping corrupt cache line {lineno}", file=sys.stderr)
                    continue
                if (
                    record.get("hash") == quiver_hash
                    and record.get("op") == op
                    and record.get("version") == version
                    and _canonical(record.get("params", {})) == wanted
                ):
                    found = record.get("result")
    except FileNotFoundError:
        return None
    except OSError as exc:
        print(f"warning: cache unreadable ({exc}); computing fresh", file=sys.stderr)
        return None
    return found


def cache_store(path: str, quiver_hash: str, op: str, params: dict, version: str, result) -> None:
    record = {
        "hash": quiver_hash,
        "op": op,
        "params": params,
        "version": version,
        "result": result,
    }
    try:
        with open(path, "a", encoding="utf-8") as fh:
            fh.write(json.dumps(record, sort_keys=True, separators=(",", ":")) + "\n")
    except OSError as exc:
        print(f"warning: cache unwritable ({exc}); result not stored", file=sys.stderr)
