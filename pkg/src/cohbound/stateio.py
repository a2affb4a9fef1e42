"""JSON state files.

Four kinds are accepted. Complex numbers are [re, im] pairs; floats are
written with full round-trip precision.

  {"kind": "pure", "n_qubits": 3, "amplitudes": [[re, im], ...]}
  {"kind": "density", "n_qubits": 2, "entries": [[[re, im], ...], ...]}
  {"kind": "schmidt3", "lambda": [l0, l1, l2, l3, l4], "phi": 0.0}
  {"kind": "product", "factors": [<pure specs>, ...]}

Any kind may carry an optional "note" string, which the CLI echoes.
"""

import functools
import json

from .errors import StateFormatError
from .qstate import (
    DensityMatrix,
    PureState,
    SchmidtSpec,
    density_of,
    make_density,
    make_pure,
    schmidt_state,
    tensor_pure,
)


def _complex_list(raw, what):
    try:
        return [complex(float(re), float(im)) for re, im in raw]
    except (TypeError, ValueError) as exc:
        raise StateFormatError(f"{what} must be a list of [re, im] pairs") from exc


def _parse_pure(doc):
    amps = _complex_list(doc.get("amplitudes", ()), "amplitudes")
    state = make_pure(amps)
    declared = doc.get("n_qubits")
    if declared is not None and int(declared) != state.n_qubits:
        raise StateFormatError(
            f"file says {declared} qubits but amplitudes give {state.n_qubits}"
        )
    return state


def parse_state(doc):
    """Parse a decoded JSON document into a PureState or DensityMatrix."""
    if not isinstance(doc, dict):
        raise StateFormatError("state file must contain a JSON object")
    kind = doc.get("kind", "pure" if "amplitudes" in doc else None)
    if kind == "pure":
        return _parse_pure(doc)
    if kind == "density":
        rows = doc.get("entries")
        if rows is None:
            raise StateFormatError("density file needs an \"entries\" matrix")
        mat = [_complex_list(row, "entries row") for row in rows]
        declared = doc.get("n_qubits")
        return make_density(mat, None if declared is None else int(declared))
    if kind == "schmidt3":
        lambdas = doc.get("lambda")
        if lambdas is None or len(lambdas) != 5:
            raise StateFormatError("schmidt3 file needs a 5-entry \"lambda\" list")
        spec = SchmidtSpec(tuple(float(x) for x in lambdas), float(doc.get("phi", 0.0)))
        return schmidt_state(spec)
    if kind == "product":
        factors = doc.get("factors")
        if not factors:
            raise StateFormatError("product file needs a non-empty \"factors\" list")
        parts = [_parse_pure(f) for f in factors]
        return functools.reduce(tensor_pure, parts)
    raise StateFormatError(f"unknown state kind {kind!r}")


def load_state(path):
    """Read a state file. Returns (state, note) with note possibly None."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise StateFormatError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise StateFormatError(f"{path} is not valid JSON: {exc}") from exc
    note = doc.get("note") if isinstance(doc, dict) else None
    return parse_state(doc), note


def as_density(state) -> DensityMatrix:
    if isinstance(state, DensityMatrix):
        return state
    if isinstance(state, PureState):
        return density_of(state)
    raise TypeError(f"not a state object: {type(state)!r}")


def _pairs(vec):
    return [[float(z.real), float(z.imag)] for z in vec]


def save_pure(path, state: PureState, note=None):
    doc = {"kind": "pure", "n_qubits": state.n_qubits,
           "amplitudes": _pairs(state.amps)}
    if note:
        doc["note"] = note
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh, indent=1)
        fh.write("\n")


def save_density(path, rho: DensityMatrix, note=None):
    doc = {"kind": "density", "n_qubits": rho.n_qubits,
           "entries": [_pairs(row) for row in rho.mat]}
    if note:
        doc["note"] = note
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh, indent=1)
        fh.write("\n")
