"""Line-delimited JSON state records.

One object per line::

    {"id": "bell", "format": "matrix", "payload": {"matrix": [[[re, im], ...], ...]}}
    {"id": "b1", "format": "bloch", "payload": {"m": [..], "n": [..], "T": [[..], [..], [..]]}}
    {"id": "x1", "format": "xstate", "payload": {"x1": .., "x2": .., "x3": .., "x4": .., "y1": .., "y2": ..}}
    {"id": "g", "format": "family", "payload": {"family": "ghz", "params": {"zeta": 0.3}, "reduce": "AB"}}

Complex numbers are ``[re, im]`` pairs and matrices are row-major. Family
records describe three-qubit pure states (``ghz``: zeta; ``w``: zeta1,
zeta2; ``biseparable``: s11, s12, f1, f2); the optional ``reduce`` field
(e.g. ``"AC"``) selects a two-qubit reduction, first label leading.
"""

import json
from dataclasses import dataclass

import numpy as np

from .entangle import biseparable_state, ghz_state, reduce_pair, w_state
from .errors import InputError
from .qstate import BlochForm, bloch_compose, xstate

FORMATS = ("matrix", "bloch", "xstate", "family")
FAMILIES = {
    "ghz": (ghz_state, ("zeta",)),
    "w": (w_state, ("zeta1", "zeta2")),
    "biseparable": (biseparable_state, ("s11", "s12", "f1", "f2")),
}


@dataclass(frozen=True)
class StateRecord:
    id: str
    format: str
    payload: dict

    def to_json(self):
        return json.dumps({"id": self.id, "format": self.format, "payload": self.payload})


def encode_matrix(rho):
    return [[[float(z.real), float(z.imag)] for z in row] for row in np.asarray(rho, complex)]


def decode_matrix(data):
    try:
        arr = np.asarray(data, dtype=float)
    except (TypeError, ValueError) as exc:
        raise InputError(f"matrix entries must be [re, im] pairs: {exc}") from None
    if arr.ndim != 3 or arr.shape[2] != 2 or arr.shape[0] != arr.shape[1]:
        raise InputError(f"matrix must be square with [re, im] entries, got shape {arr.shape}")
    return arr[..., 0] + 1j * arr[..., 1]


def matrix_record(rec_id, rho):
    return StateRecord(str(rec_id), "matrix", {"matrix": encode_matrix(rho)})


def parse_record(line, index=0):
    """Decode one JSON line into a :class:`StateRecord` (schema checks only)."""
    try:
        obj = json.loads(line)
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON: {exc}") from None
    if not isinstance(obj, dict):
        raise InputError("record must be a JSON object")
    fmt = obj.get("format")
    if fmt not in FORMATS:
        raise InputError(f"format must be one of {FORMATS}, got {fmt!r}")
    payload = obj.get("payload")
    if not isinstance(payload, dict):
        raise InputError("record needs a 'payload' object")
    return StateRecord(str(obj.get("id", f"record-{index}")), fmt, payload)


def _get(payload, key):
    if key not in payload:
        raise InputError(f"payload is missing {key!r}")
    return payload[key]


def family_state(payload):
    name = _get(payload, "family")
    if name not in FAMILIES:
        raise InputError(f"unknown family {name!r}; expected one of {sorted(FAMILIES)}")
    fn, keys = FAMILIES[name]
    params = payload.get("params", {})
    try:
        args = [float(params[k]) for k in keys]
    except KeyError as exc:
        raise InputError(f"family {name!r} needs parameter {exc.args[0]!r}") from None
    return fn(*args)


def record_state(rec, full=False):
    """Density matrix described by a record.

    Family records yield the three-qubit state when ``full`` is true or no
    ``reduce`` field is given; otherwise the requested two-qubit reduction.
    """
    p = rec.payload
    if rec.format == "matrix":
        return decode_matrix(_get(p, "matrix"))
    if rec.format == "bloch":
        try:
            b = BlochForm(
                m=np.asarray(_get(p, "m"), float),
                n=np.asarray(_get(p, "n"), float),
                T=np.asarray(_get(p, "T"), float),
            )
        except (TypeError, ValueError) as exc:
            raise InputError(f"bad Bloch payload: {exc}") from None
        return bloch_compose(b)
    if rec.format == "xstate":
        try:
            vals = [float(_get(p, k)) for k in ("x1", "x2", "x3", "x4", "y1", "y2")]
        except (TypeError, ValueError) as exc:
            raise InputError(f"bad X-state payload: {exc}") from None
        return xstate(*vals)
    rho3 = family_state(p)
    red = p.get("reduce")
    if full or not red:
        return rho3
    red = str(red).upper()
    if len(red) != 2 or red[0] == red[1] or any(c not in "ABC" for c in red):
        raise InputError(f"reduce must name two distinct parties out of A, B, C, got {red!r}")
    return reduce_pair(rho3, red[0], red[1])


def read_records(stream):
    """Yield ``(index, record or InputError)`` lazily, skipping blank lines."""
    index = 0
    for line in stream:
        if not line.strip():
            continue
        try:
            yield index, parse_record(line, index)
        except InputError as exc:
            yield index, exc
        index += 1
