"""Report envelopes and emission: deterministic JSON, flattened CSV.

Identical configuration and seed must produce byte-identical output, so
everything is emitted with sorted keys and no timestamps.
"""

from __future__ import annotations

import csv
import io
import json

SCHEMA_VERSION = "1"

EXIT_OK = 0
EXIT_COUNTEREXAMPLE = 1
EXIT_INVALID_INPUT = 2
EXIT_PRECISION = 3


def envelope(command: str, config: dict, result: dict, status: str,
             counterexamples=None, suite: str | None = None) -> dict:
    out = {
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "config": config,
        "result": result,
        "status": status,
        "counterexamples": counterexamples or [],
    }
    if suite is not None:
        out["suite"] = suite
    return out


def to_json_bytes(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2) + "\n"


def flatten_rows(report: dict) -> list[dict]:
    """One CSV row per sample-like record; falls back to one summary row."""
    rows = []
    result = report.get("result", {})
    base = {"command": report.get("command", ""), "suite": report.get("suite", ""),
            "status": report.get("status", "")}
    entries = result.get("entries")
    if isinstance(entries, list):  # orbit records
        for e in entries:
            rows.append({**base, "n": e["n"], "x": json.dumps(e["x"], sort_keys=True),
                         "norm_exp": e["norm_exp"],
                         "ref_dists": ";".join(e["ref_dists"])})
        return rows
    checks = result.get("checks")
    if isinstance(checks, list):  # verification batteries
        for i, c in enumerate(checks):
            row = {**base, "index": i}
            for key, val in sorted(c.items()):
                row[key] = json.dumps(val, sort_keys=True) if isinstance(val, (dict, list)) else val
            rows.append(row)
        return rows
    row = dict(base)
    for key, val in sorted(result.items()):
        row[key] = json.dumps(val, sort_keys=True) if isinstance(val, (dict, list)) else val
    return [row]


def to_csv_bytes(report: dict) -> str:
    rows = flatten_rows(report)
    fields: list[str] = []
    for row in rows:
        for key in row:
            if key not in fields:
                fields.append(key)
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=fields, restval="")
    writer.writeheader()
    writer.writerows(rows)
    return buf.getvalue()


def emit(report: dict, fmt: str, output: str | None) -> None:
    text = to_csv_bytes(report) if fmt == "csv" else to_json_bytes(report)
    if output:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        print(text, end="")
