#!/usr/bin/env python3

"""
Report Envelopes
----------------
Every command emits the same envelope: the command name, the configuration
echo, a typed payload, the tool version and precision notes. Big integers are
serialized as decimal strings so downstream JSON tools never truncate them.
Every payload parses back to an equal in-memory value.
"""

import csv
import io
import json
from typing import Any, Dict, List, Optional, Union

from typing_extensions import NotRequired, TypedDict

from bounds import BoundReport
from sequences import SequenceParams, term
from stepper import RigiditySolution, StepWitness, WalkConfig
from verification import SuiteResult
from walker import TerminationCertificate, WalkFailure, WalkRecord

VERSION = "1.0.0"
SCHEMA_VERSION = 1

# CSV column order is part of the schema version
CSV_COLUMNS = {
    "bound_report": (
        "params", "base", "digits", "n_star", "k_log_bound", "k_exact", "m_star", "threshold",
        "theorem_bound", "closed_form", "log_rho_base", "l_max", "l_max_nodes", "satisfied",
    ),
    "witnesses": ("m", "k", "t", "r"),
    "walk": ("step", "m", "k", "t", "r", "value"),
    "walk_failure": ("block_index", "value", "reached_length"),
    "certificate": (
        "params", "base", "digits", "threshold", "k_exact", "m_star", "n_star",
        "rigidity_solutions", "scan_margin", "conclusion",
    ),
    "suites": ("name", "passed", "checked", "elapsed"),
}

EVALUATION_NOTES = (
    "All thresholds, bounds and certificates are exact integer computations. "
    "closed_form and log_rho_base are mpmath evaluations reported to 18 significant "
    "digits with a stated precision of 1e-6; they never gate exact logic. "
    "Walk lengths count steps; the degenerate append 0 -> 0 is not a step."
)

Payload = Union[BoundReport, List[StepWitness], WalkRecord, WalkFailure, TerminationCertificate, List[SuiteResult]]


class Envelope(TypedDict):
    command: str
    config: Optional[Dict[str, Any]]
    payload_type: str
    payload: Any
    version: str
    schema_version: int
    evaluation_notes: str
    csv_columns: NotRequired[List[str]]


# ========================================================================
# === PAYLOAD CODECS ===
# ========================================================================

def config_to_dict(cfg: WalkConfig) -> Dict[str, Any]:
    return {"params": str(cfg.params), "base": cfg.base, "digits": cfg.digits}


def config_from_dict(data: Dict[str, Any]) -> WalkConfig:
    return WalkConfig(SequenceParams.parse(data["params"]), int(data["base"]), int(data["digits"]))


def witness_to_dict(w: StepWitness) -> Dict[str, Any]:
    return {"m": w.m, "k": w.k, "t": w.t, "r": str(w.r)}


def witness_from_dict(data: Dict[str, Any]) -> StepWitness:
    return StepWitness(int(data["m"]), int(data["k"]), int(data["t"]), int(data["r"]))


def walk_to_dict(walk: WalkRecord, params: SequenceParams) -> Dict[str, Any]:
    return {
        "start": walk.start,
        "length": walk.length,
        "nodes": walk.nodes,
        "indices": walk.indices(),
        "values": [str(term(params, n)) for n in walk.indices()],
        "steps": [witness_to_dict(w) for w in walk.steps],
    }


def walk_from_dict(data: Dict[str, Any]) -> WalkRecord:
    return WalkRecord(int(data["start"]), tuple(witness_from_dict(w) for w in data["steps"]))


def failure_to_dict(failure: WalkFailure, params: SequenceParams) -> Dict[str, Any]:
    return {
        "block_index": failure.block_index,
        "value": str(failure.value),
        "reached": walk_to_dict(failure.reached, params),
    }


def failure_from_dict(data: Dict[str, Any]) -> WalkFailure:
    return WalkFailure(int(data["block_index"]), int(data["value"]), walk_from_dict(data["reached"]))


def report_to_dict(report: BoundReport) -> Dict[str, Any]:
    return {
        "cfg": config_to_dict(report.cfg),
        "n_star": report.n_star,
        "k_log_bound": report.k_log_bound,
        "k_exact": report.k_exact,
        "m_star": report.m_star,
        "threshold": report.threshold,
        "theorem_bound": report.theorem_bound,
        "closed_form": report.closed_form,
        "log_rho_base": report.log_rho_base,
        "chain_holds": report.chain_holds,
        "l_max": report.l_max,
        "l_max_nodes": report.l_max_nodes,
        "satisfied": report.satisfied,
        "closed_form_precision": report.closed_form_precision,
        "evaluation_method": report.evaluation_method,
    }


def report_from_dict(data: Dict[str, Any]) -> BoundReport:
    fields = dict(data)
    fields["cfg"] = config_from_dict(data["cfg"])
    return BoundReport(**fields)


def certificate_to_dict(cert: TerminationCertificate) -> Dict[str, Any]:
    return {
        "cfg": config_to_dict(cert.cfg),
        "threshold": cert.threshold,
        "k_exact": cert.k_exact,
        "m_star": cert.m_star,
        "rigidity_solutions": [{"k": s.k, "t": s.t} for s in cert.rigidity_solutions],
        "n_star": cert.n_star,
        "scan_margin": cert.scan_margin,
        "conclusion": cert.conclusion,
    }


def certificate_from_dict(data: Dict[str, Any]) -> TerminationCertificate:
    return TerminationCertificate(
        cfg=config_from_dict(data["cfg"]),
        threshold=int(data["threshold"]),
        k_exact=int(data["k_exact"]),
        m_star=int(data["m_star"]),
        rigidity_solutions=tuple(RigiditySolution(int(s["k"]), int(s["t"])) for s in data["rigidity_solutions"]),
        n_star=int(data["n_star"]),
        scan_margin=int(data["scan_margin"]),
        conclusion=data["conclusion"],
    )


def suite_to_dict(result: SuiteResult) -> Dict[str, Any]:
    return {
        "name": result.name,
        "passed": result.passed,
        "checked": result.checked,
        "counterexample": result.counterexample,
        "elapsed": result.elapsed,
    }


def suite_from_dict(data: Dict[str, Any]) -> SuiteResult:
    return SuiteResult(**data)


def encode_payload(payload_type: str, payload: Payload, cfg: Optional[WalkConfig]) -> Any:
    params = cfg.params if cfg is not None else None
    if payload_type == "bound_report":
        return report_to_dict(payload)
    if payload_type == "witnesses":
        return [witness_to_dict(w) for w in payload]
    if payload_type == "walk":
        return walk_to_dict(payload, params)
    if payload_type == "walk_failure":
        return failure_to_dict(payload, params)
    if payload_type == "certificate":
        return certificate_to_dict(payload)
    if payload_type == "suites":
        return [suite_to_dict(s) for s in payload]
    raise ValueError(f"unknown payload type {payload_type!r}")


def decode_payload(payload_type: str, data: Any) -> Payload:
    if payload_type == "bound_report":
        return report_from_dict(data)
    if payload_type == "witnesses":
        return [witness_from_dict(w) for w in data]
    if payload_type == "walk":
        return walk_from_dict(data)
    if payload_type == "walk_failure":
        return failure_from_dict(data)
    if payload_type == "certificate":
        return certificate_from_dict(data)
    if payload_type == "suites":
        return [suite_from_dict(s) for s in data]
    raise ValueError(f"unknown payload type {payload_type!r}")


# ========================================================================
# === ENVELOPES ===
# ========================================================================

def make_envelope(command: str, cfg: Optional[WalkConfig], payload_type: str, payload: Payload) -> Envelope:
    envelope: Envelope = {
        "command": command,
        "config": config_to_dict(cfg) if cfg is not None else None,
        "payload_type": payload_type,
        "payload": encode_payload(payload_type, payload, cfg),
        "version": VERSION,
        "schema_version": SCHEMA_VERSION,
        "evaluation_notes": EVALUATION_NOTES,
    }
    if payload_type in CSV_COLUMNS:
        envelope["csv_columns"] = list(CSV_COLUMNS[payload_type])
    return envelope


def parse_envelope(text: str) -> Envelope:
    return json.loads(text)


def envelope_payload(envelope: Envelope) -> Payload:
    """Decode the payload of a parsed envelope back into domain objects."""
    return decode_payload(envelope["payload_type"], envelope["payload"])


def render_json(envelope: Envelope) -> str:
    return json.dumps(envelope, indent=2, sort_keys=True)


def payload_rows(envelope: Envelope) -> List[Dict[str, Any]]:
    """Flatten a payload into rows keyed by its CSV columns."""
    kind, data, config = envelope["payload_type"], envelope["payload"], envelope["config"] or {}
    if kind == "bound_report":
        return [dict(data, **data["cfg"])]
    if kind == "witnesses":
        return list(data)
    if kind == "walk":
        return [dict(step, step=i, value=data["values"][i + 1]) for i, step in enumerate(data["steps"])]
    if kind == "walk_failure":
        return [dict(data, reached_length=data["reached"]["length"])]
    if kind == "certificate":
        solutions = " ".join(f"{s['k']}:{s['t']}" for s in data["rigidity_solutions"])
        return [dict(data, rigidity_solutions=solutions, **data["cfg"])]
    if kind == "suites":
        return list(data)
    return [dict(config)]


def render_csv(envelope: Envelope) -> str:
    columns = CSV_COLUMNS[envelope["payload_type"]]
    buffer = io.StringIO()
    writer = csv.DictWriter(buffer, fieldnames=columns, extrasaction="ignore", lineterminator="\n")
    writer.writeheader()
    for row in payload_rows(envelope):
        writer.writerow({key: _cell(row.get(key)) for key in columns})
    return buffer.getvalue()


def render_table(envelope: Envelope) -> str:
    """Human-oriented aligned text; not a stability contract."""
    columns = CSV_COLUMNS[envelope["payload_type"]]
    rows = [[_cell(row.get(key)) for key in columns] for row in payload_rows(envelope)]
    widths = [max([len(c)] + [len(r[i]) for r in rows]) for i, c in enumerate(columns)]
    lines = [
        f"{envelope['command']} (lucaswalk {envelope['version']})",
        "  ".join(c.ljust(w) for c, w in zip(columns, widths)),
        "  ".join("-" * w for w in widths),
    ]
    lines += ["  ".join(v.ljust(w) for v, w in zip(row, widths)) for row in rows]
    if not rows:
        lines.append("(no rows)")
    return "\n".join(lines)


def render(envelope: Envelope, fmt: str = "json") -> str:
    if fmt == "csv":
        return render_csv(envelope)
    if fmt == "table":
        return render_table(envelope)
    return render_json(envelope)


def _cell(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    return str(value)

