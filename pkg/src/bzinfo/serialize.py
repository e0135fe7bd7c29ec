"""Lossless JSON persistence for states, measurements, reports and counts.

Numbers are emitted with Python's shortest round-trip float repr, complex
entries as [re, im] pairs in row-major order.  Every document carries the
schema version field "v": 1 and a "schema" discriminator.  Decoding
re-validates the entity, so a tampered or truncated file never yields a
usable object.
"""

from __future__ import annotations

import json

import numpy as np

from .errors import BzinfoError, SchemaError
from .invariants import BzReport
from .linalg import hermitian
from .measurements import GsmSet, MumSet, Povm, verify
from .sampler import CountTable
from .states import DensityMatrix, validate_state

SCHEMA_VERSION = 1
PARAMETER_TOL = 1e-9
CONDITION_TOL = 1e-10

_REPORT_FIELDS = (
    "dim",
    "kind",
    "parameter",
    "purity",
    "C_direct",
    "C_closed",
    "V_direct",
    "V_closed",
    "V_min",
    "V_max",
    "I_direct",
    "I_closed",
    "U_direct",
    "U_closed",
    "max_abs_discrepancy",
    "negatives_clamped",
)


def _matrix_to_json(m: np.ndarray) -> list:
    return [[[float(z.real), float(z.imag)] for z in row] for row in m]


def _matrix_from_json(rows, d: int) -> np.ndarray:
    try:
        a = np.asarray(rows, dtype=np.float64)
    except (TypeError, ValueError) as exc:
        raise SchemaError(f"matrix entries are not [re, im] numbers: {exc}") from exc
    if a.shape != (d, d, 2):
        raise SchemaError(f"expected a {d}x{d} matrix of [re, im] pairs, got shape {a.shape}")
    return a[..., 0] + 1j * a[..., 1]


def encode(entity, meta: dict | None = None) -> bytes:
    """Serialize an entity to JSON bytes."""
    if isinstance(entity, DensityMatrix):
        doc = {
            "v": SCHEMA_VERSION,
            "schema": "state",
            "dim": entity.dim,
            "rho": _matrix_to_json(entity.matrix),
        }
    elif isinstance(entity, MumSet):
        doc = {
            "v": SCHEMA_VERSION,
            "schema": "measurement",
            "kind": entity.kind,
            "dim": entity.dim,
            "t": entity.t,
            "kappa": entity.kappa,
            "effects": [[_matrix_to_json(e) for e in p.effects] for p in entity.povms],
        }
    elif isinstance(entity, GsmSet):
        doc = {
            "v": SCHEMA_VERSION,
            "schema": "measurement",
            "kind": entity.kind,
            "dim": entity.dim,
            "t": entity.t,
            "a": entity.a,
            "effects": [_matrix_to_json(e) for e in entity.effects],
        }
    elif isinstance(entity, BzReport):
        doc = {"v": SCHEMA_VERSION, "schema": "report"}
        doc.update({name: getattr(entity, name) for name in _REPORT_FIELDS})
    elif isinstance(entity, CountTable):
        doc = {
            "v": SCHEMA_VERSION,
            "schema": "counts",
            "shots": entity.shots_per_povm,
            "counts": [[int(c) for c in row] for row in entity.counts],
        }
    else:
        raise SchemaError(f"cannot encode object of type {type(entity).__name__}")
    if meta is not None:
        doc["meta"] = meta
    return json.dumps(doc, allow_nan=False).encode("utf-8")


def decode(data: bytes | str):
    """Parse and re-validate a serialized entity."""
    if isinstance(data, bytes):
        data = data.decode("utf-8", errors="replace")
    try:
        doc = json.loads(data)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"malformed JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise SchemaError("top-level JSON value must be an object")
    if doc.get("v") != SCHEMA_VERSION:
        raise SchemaError(f"unsupported schema version {doc.get('v')!r}")
    schema = doc.get("schema")
    decoders = {
        "state": _decode_state,
        "measurement": _decode_measurement,
        "report": _decode_report,
        "counts": _decode_counts,
    }
    if schema not in decoders:
        raise SchemaError(f"unknown schema {schema!r}")
    return decoders[schema](doc)


def _require(doc: dict, key: str):
    if key not in doc:
        raise SchemaError(f"missing field {key!r}")
    return doc[key]


def _decode_state(doc: dict) -> DensityMatrix:
    d = _require(doc, "dim")
    if not isinstance(d, int) or d < 1:
        raise SchemaError(f"invalid dim {d!r}")
    rho = _matrix_from_json(_require(doc, "rho"), d)
    try:
        return validate_state(rho)
    except BzinfoError as exc:
        raise SchemaError(f"decoded state fails validation: {exc}") from exc


def _decode_measurement(doc: dict):
    kind = _require(doc, "kind")
    d = _require(doc, "dim")
    if not isinstance(d, int) or d < 2:
        raise SchemaError(f"invalid dim {d!r}")
    effects = _require(doc, "effects")
    if not isinstance(effects, list):
        raise SchemaError("effects must be a list")

    try:
        t = float(_require(doc, "t"))
        if kind in ("mum", "mub"):
            kappa = float(_require(doc, "kappa"))
            if len(effects) != d + 1 or any(len(group) != d for group in effects):
                raise SchemaError(f"expected {d + 1} groups of {d} effects")
            povms = []
            for group in effects:
                stack = np.stack([hermitian(_matrix_from_json(e, d)) for e in group])
                stack.setflags(write=False)
                povms.append(Povm(dim=d, effects=stack))
            family = MumSet(dim=d, t=t, kappa=kappa, povms=tuple(povms), kind=kind)
        elif kind in ("gsm", "sic"):
            a = float(_require(doc, "a"))
            if len(effects) != d * d:
                raise SchemaError(f"expected {d * d} effects, got {len(effects)}")
            stack = np.stack([hermitian(_matrix_from_json(e, d)) for e in effects])
            stack.setflags(write=False)
            family = GsmSet(dim=d, t=t, a=a, effects=stack, kind=kind)
        else:
            raise SchemaError(f"unknown measurement kind {kind!r}")
    except SchemaError:
        raise
    except BzinfoError as exc:
        raise SchemaError(f"decoded measurement fails validation: {exc}") from exc
    except (TypeError, ValueError) as exc:
        raise SchemaError(f"malformed measurement document: {exc}") from exc

    report = verify(family, CONDITION_TOL)
    parameter_dev = report.deviations.pop("parameter")
    if parameter_dev >= PARAMETER_TOL:
        name = "kappa" if kind in ("mum", "mub") else "a"
        raise SchemaError(
            f"stored {name} inconsistent with t (deviation {parameter_dev:.3e})"
        )
    bad = [name for name, v in report.deviations.items() if v >= CONDITION_TOL]
    if bad:
        raise SchemaError(f"decoded measurement violates: {', '.join(bad)}")
    return family


def _decode_report(doc: dict) -> BzReport:
    values = {name: _require(doc, name) for name in _REPORT_FIELDS}
    try:
        report = BzReport(**values)
        pairs = [
            (report.V_direct, report.V_closed),
            (report.I_direct, report.I_closed),
            (report.U_direct, report.U_closed),
        ]
        if report.C_direct is not None:
            pairs.append((report.C_direct, report.C_closed))
        recomputed = max(abs(x - y) for x, y in pairs)
    except (TypeError, ValueError) as exc:
        raise SchemaError(f"malformed report document: {exc}") from exc
    if abs(recomputed - report.max_abs_discrepancy) > 1e-15:
        raise SchemaError("stored max_abs_discrepancy inconsistent with fields")
    return report


def _decode_counts(doc: dict) -> CountTable:
    shots = _require(doc, "shots")
    rows = _require(doc, "counts")
    if not isinstance(shots, int) or shots < 1:
        raise SchemaError(f"invalid shots {shots!r}")
    if not isinstance(rows, list) or not rows:
        raise SchemaError("counts must be a non-empty list of rows")
    decoded = []
    for row in rows:
        try:
            counts = np.asarray(row, dtype=np.int64)
        except (TypeError, ValueError, OverflowError) as exc:
            raise SchemaError(f"counts rows must be integers: {exc}") from exc
        if counts.ndim != 1 or counts.size == 0 or counts.min() < 0:
            raise SchemaError("counts rows must be nonnegative integers")
        if int(counts.sum()) != shots:
            raise SchemaError(f"row sums to {int(counts.sum())}, expected {shots}")
        counts.setflags(write=False)
        decoded.append(counts)
    return CountTable(shots_per_povm=shots, counts=tuple(decoded))


def save(entity, path, meta: dict | None = None) -> None:
    with open(path, "wb") as fh:
        fh.write(encode(entity, meta=meta))
        fh.write(b"\n")


def load(path):
    with open(path, "rb") as fh:
        return decode(fh.read())
