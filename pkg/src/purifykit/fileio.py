"""Structured text files for ensembles, density matrices, states, and plans.

The documents are JSON with a fixed field order; every real number is
rendered with 17 significant digits so doubles round-trip exactly and
rewriting the same data yields byte-identical files. Complex numbers are
stored as [re, im] pairs.
"""

from __future__ import annotations

import json

import numpy as np

from .ensembles import DensityMatrix, Ensemble
from .errors import ParseError
from .purification import BipartiteState, SteeringPlan


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def _render(value) -> str:
    if isinstance(value, bool):
        raise TypeError("booleans have no place in these documents")
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return _fmt(value)
    if isinstance(value, str):
        return json.dumps(value)
    if isinstance(value, dict):
        inner = ", ".join(f"{json.dumps(k)}: {_render(v)}" for k, v in value.items())
        return "{" + inner + "}"
    if isinstance(value, (list, tuple)):
        return "[" + ", ".join(_render(v) for v in value) + "]"
    raise TypeError(f"cannot render {type(value)!r}")


def _render_document(fields: dict) -> str:
    body = ",\n".join(f'  {json.dumps(k)}: {_render(v)}' for k, v in fields.items())
    return "{\n" + body + "\n}\n"


def _complex_pairs(values: np.ndarray) -> list:
    return [[float(v.real), float(v.imag)] for v in np.asarray(values, complex).ravel()]


def _matrix_pairs(matrix: np.ndarray) -> list:
    return [_complex_pairs(row) for row in np.asarray(matrix, complex)]


def _parse_complex_vector(raw, what: str) -> np.ndarray:
    try:
        pairs = [(float(re), float(im)) for re, im in raw]
    except (TypeError, ValueError) as exc:
        raise ParseError(f"{what} must be a list of [re, im] pairs") from exc
    return np.array([complex(re, im) for re, im in pairs])


def _load_document(path, expected_fields: tuple[str, ...]) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            doc = json.load(handle)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: not a valid document ({exc})") from exc
    if not isinstance(doc, dict):
        raise ParseError(f"{path}: top level must be an object")
    missing = [f for f in expected_fields if f not in doc]
    if missing:
        raise ParseError(f"{path}: missing fields {missing}")
    return doc


def write_ensemble(path, ensemble: Ensemble) -> None:
    fields = {
        "dim": ensemble.dim,
        "weights": [float(w) for w in ensemble.weights],
        "states": [_complex_pairs(state) for state in ensemble.states],
    }
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(_render_document(fields))


def read_ensemble(path) -> Ensemble:
    doc = _load_document(path, ("dim", "weights", "states"))
    try:
        dim = int(doc["dim"])
        weights = [float(w) for w in doc["weights"]]
    except (TypeError, ValueError) as exc:
        raise ParseError(f"{path}: dim must be an integer and weights reals") from exc
    states = [_parse_complex_vector(raw, f"{path}: state") for raw in doc["states"]]
    return Ensemble(dim, np.array(weights), np.array(states))


def write_density_matrix(path, rho: DensityMatrix) -> None:
    fields = {
        "dim": rho.dim,
        "entries": _complex_pairs(rho.matrix),
    }
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(_render_document(fields))


def read_density_matrix(path) -> DensityMatrix:
    doc = _load_document(path, ("dim", "entries"))
    try:
        dim = int(doc["dim"])
    except (TypeError, ValueError) as exc:
        raise ParseError(f"{path}: dim must be an integer") from exc
    entries = _parse_complex_vector(doc["entries"], f"{path}: entries")
    if entries.size != dim * dim:
        raise ParseError(f"{path}: expected {dim * dim} entries, got {entries.size}")
    return DensityMatrix(dim, entries.reshape(dim, dim))


def write_bipartite_state(path, psi: BipartiteState) -> None:
    fields = {
        "dim_s": psi.dim_s,
        "dim_k": psi.dim_k,
        "amplitudes": _complex_pairs(psi.amplitudes),
    }
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(_render_document(fields))


def read_bipartite_state(path) -> BipartiteState:
    doc = _load_document(path, ("dim_s", "dim_k", "amplitudes"))
    try:
        dim_s = int(doc["dim_s"])
        dim_k = int(doc["dim_k"])
    except (TypeError, ValueError) as exc:
        raise ParseError(f"{path}: dim_s and dim_k must be integers") from exc
    amplitudes = _parse_complex_vector(doc["amplitudes"], f"{path}: amplitudes")
    return BipartiteState(dim_s, dim_k, amplitudes)


def write_plan(path, plan: SteeringPlan) -> None:
    fields = {
        "coeffs": _matrix_pairs(plan.coeffs),
        "isometry": _matrix_pairs(plan.isometry),
        "unitary": _matrix_pairs(plan.unitary),
        "basis": _matrix_pairs(plan.basis),
    }
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(_render_document(fields))


def read_plan(path) -> SteeringPlan:
    doc = _load_document(path, ("coeffs", "isometry", "unitary", "basis"))
    matrices = {}
    for name in ("coeffs", "isometry", "unitary", "basis"):
        rows = [_parse_complex_vector(raw, f"{path}: {name} row") for raw in doc[name]]
        if not rows or any(r.size != rows[0].size for r in rows):
            raise ParseError(f"{path}: {name} rows must be non-empty and equal length")
        matrices[name] = np.array(rows)
    return SteeringPlan(**matrices)
