"""Self-contained JSON reports and their text rendering.

Everything that depends on the wall clock (the timestamp and per-check
seconds) lives under the top-level ``timing`` key; ``report_digest`` is the
sha256 of the report without that key, so equal inputs give equal digests
and byte-identical files once ``timing`` is dropped.
"""

from __future__ import annotations

import datetime as _dt
import hashlib
import json
from typing import Any

from .graph import Graph
from .io import digest, format_edge_list
from .oracle import VerificationReport

SCHEMA = "quasiconn-report/1"
EXIT_CODES = {"PASS": 0, "SKIPPED": 0, "BUDGET": 0, "FAIL": 1, "ERROR": 2, "THEORY_VIOLATION": 3}
_ORDER = ["PASS", "SKIPPED", "BUDGET", "FAIL", "ERROR", "THEORY_VIOLATION"]


def worst(verdicts) -> str:
    return max(verdicts, key=_ORDER.index, default="PASS")


def graph_block(g: Graph, name: str) -> dict[str, Any]:
    return {"name": name, "n": g.n, "m": g.m, "digest": digest(g), "edge_list": format_edge_list(g).splitlines()}


def build(command: str, verdict: str, *, graphs: list[dict] | None = None, result: Any = None,
          checks: list[VerificationReport] | None = None, seconds: dict[str, float] | None = None,
          timestamp: str | None = None) -> dict[str, Any]:
    from . import __version__

    body: dict[str, Any] = {
        "schema": SCHEMA,
        "tool": "quasiconn",
        "version": __version__,
        "command": command,
        "verdict": verdict,
        "inputs": graphs or [],
        "result": result,
        "checks": [c.to_json(with_time=False) for c in checks or []],
    }
    body["report_digest"] = content_digest(body)
    times = dict(seconds or {})
    for rep in checks or []:
        for c in rep.checks:
            times[f"{rep.graph_id}:{c.check}"] = round(c.seconds, 4)
    body["timing"] = {
        "timestamp": timestamp or _dt.datetime.now(_dt.timezone.utc).isoformat(timespec="seconds"),
        "seconds": times,
    }
    return body


def content_digest(report: dict) -> str:
    clean = {k: v for k, v in report.items() if k not in ("timing", "report_digest")}
    return hashlib.sha256(dumps_json(clean).encode()).hexdigest()


def without_timing(report: dict) -> dict:
    return {k: v for k, v in report.items() if k != "timing"}


def dumps_json(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def render_text(report: dict) -> str:
    lines = [f"{report['command']}: {report['verdict']}"]
    for g in report.get("inputs", []):
        lines.append(f"  graph {g['name']}: n={g['n']} m={g['m']} sha256={g['digest'][:16]}")
    res = report.get("result")
    if isinstance(res, dict):
        for k, v in res.items():
            if k in ("trace", "files"):
                continue
            lines.append(f"  {k}: {json.dumps(v, ensure_ascii=False)}")
    elif isinstance(res, list):
        for item in res:
            lines.append(f"  {json.dumps(item, ensure_ascii=False)}")
    for rep in report.get("checks", []):
        for c in rep["checks"]:
            lines.append(f"  [{c['verdict']}] {rep['graph']} {c['check']} {json.dumps(c['detail'], ensure_ascii=False)}")
    return "\n".join(lines) + "\n"
