"""JSON readers and writers for every object the command line touches.

Formats (all JSON documents):
  matrix      {"dim": n, "entries": [[re, im], ...]} row-major, n*n entries
  algebra     {"ambient_dim": n, "generators": [matrix, ...]}
  state       {"algebra": "path", "values": [[re, im], ...]} one per basis element
  relation    {"points": [...], "pairs": [[a, b], ...]}
  measure     relation fields plus {"weights": [[from, to, re, im], ...]}
  subrelation relation fields plus {"subset_pairs": [[a, b], ...]}
  group       {"order": n, "table": row-major indices, "name": optional}
  lattice     {"size": n, "meet": ..., "join": ..., "complement": [...],
               "zero": i, "one": i} with tables row-major or nested

Malformed input raises InputError naming the offending field in one line.
"""

from __future__ import annotations

import json
import os

import numpy as np

from .errors import InputError
from .groups import FiniteGroup
from .measures import RelMeasure
from .oml import FiniteLattice
from .relations import EquivRelation, SubRelation, _closure_pairs


def read_document(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            obj = json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror or exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc.msg} at line {exc.lineno}") from exc
    if not isinstance(obj, dict):
        raise InputError(f"{path} must contain a JSON object")
    return obj


def _need(obj: dict, field: str):
    if field not in obj:
        raise InputError(f"missing field '{field}'")
    return obj[field]


def _int_field(obj: dict, field: str) -> int:
    v = _need(obj, field)
    if not isinstance(v, int) or isinstance(v, bool):
        raise InputError(f"field '{field}' must be an integer")
    return v


def _complex_pair(v, field: str) -> complex:
    if (
        not isinstance(v, (list, tuple))
        or len(v) != 2
        or not all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in v)
    ):
        raise InputError(f"field '{field}' entries must be [re, im] pairs")
    return complex(v[0], v[1])


def parse_matrix(obj: dict) -> np.ndarray:
    n = _int_field(obj, "dim")
    if n <= 0:
        raise InputError("field 'dim' must be positive")
    entries = _need(obj, "entries")
    if not isinstance(entries, list) or len(entries) != n * n:
        raise InputError(f"field 'entries' must list {n * n} pairs for dim {n}")
    flat = [_complex_pair(e, "entries") for e in entries]
    return np.array(flat, dtype=np.complex128).reshape(n, n)


def dump_matrix(m: np.ndarray) -> dict:
    n = m.shape[0]
    return {
        "dim": n,
        "entries": [[float(z.real), float(z.imag)] for z in m.reshape(-1)],
    }


def parse_algebra(obj: dict) -> tuple[int, list[np.ndarray]]:
    n = _int_field(obj, "ambient_dim")
    gens_raw = _need(obj, "generators")
    if not isinstance(gens_raw, list):
        raise InputError("field 'generators' must be a list of matrix objects")
    gens = []
    for i, g in enumerate(gens_raw):
        if not isinstance(g, dict):
            raise InputError(f"field 'generators[{i}]' must be a matrix object")
        m = parse_matrix(g)
        if m.shape[0] != n:
            raise InputError(
                f"field 'generators[{i}]' has dim {m.shape[0]}, expected {n}"
            )
        gens.append(m)
    return n, gens


def parse_state_values(obj: dict) -> tuple[str, np.ndarray]:
    path = _need(obj, "algebra")
    if not isinstance(path, str):
        raise InputError("field 'algebra' must be a path string")
    values = _need(obj, "values")
    if not isinstance(values, list) or not values:
        raise InputError("field 'values' must be a nonempty list of [re, im] pairs")
    return path, np.array([_complex_pair(v, "values") for v in values])


def resolve_relative(base_file: str, path: str) -> str:
    if os.path.isabs(path):
        return path
    return os.path.join(os.path.dirname(os.path.abspath(base_file)), path)


def _parse_pairs(obj: dict, field: str) -> list[tuple[str, str]]:
    raw = _need(obj, field)
    if not isinstance(raw, list):
        raise InputError(f"field '{field}' must be a list of [from, to] pairs")
    pairs = []
    for p in raw:
        if not isinstance(p, (list, tuple)) or len(p) != 2:
            raise InputError(f"field '{field}' entries must be 2-element lists")
        pairs.append((str(p[0]), str(p[1])))
    return pairs


def parse_relation(obj: dict) -> EquivRelation:
    """Pairs in the file generate the relation: reflexive pairs are added
    for every point and the symmetric transitive closure is taken."""
    points = _need(obj, "points")
    if not isinstance(points, list) or not points:
        raise InputError("field 'points' must be a nonempty list of labels")
    pts = tuple(str(p) for p in points)
    pairs = set(_parse_pairs(obj, "pairs"))
    for a, b in pairs:
        if a not in pts or b not in pts:
            raise InputError(f"field 'pairs' mentions unknown point {a!r} or {b!r}")
    pairs.update((p, p) for p in pts)
    try:
        return EquivRelation(pts, _closure_pairs(pairs))
    except ValueError as exc:
        raise InputError(f"field 'pairs' invalid: {exc}") from exc


def parse_measure(obj: dict) -> RelMeasure:
    rel = parse_relation(obj)
    raw = _need(obj, "weights")
    if not isinstance(raw, list):
        raise InputError("field 'weights' must be a list of [from, to, re, im]")
    weights = {}
    for w in raw:
        if not isinstance(w, (list, tuple)) or len(w) != 4:
            raise InputError("field 'weights' entries must be [from, to, re, im]")
        weights[(str(w[0]), str(w[1]))] = complex(w[2], w[3])
    try:
        return RelMeasure(rel, weights)
    except ValueError as exc:
        raise InputError(f"field 'weights' invalid: {exc}") from exc


def parse_subrelation(obj: dict) -> SubRelation:
    """subset_pairs generate the sub-relation on the points they mention."""
    rel = parse_relation(obj)
    pairs = set(_parse_pairs(obj, "subset_pairs"))
    pairs.update((a, a) for pair in list(pairs) for a in pair)
    try:
        return SubRelation(rel, _closure_pairs(pairs))
    except ValueError as exc:
        raise InputError(f"field 'subset_pairs' invalid: {exc}") from exc


def _index_table(obj: dict, field: str, n: int) -> tuple[tuple[int, ...], ...]:
    raw = _need(obj, field)
    if not isinstance(raw, list):
        raise InputError(f"field '{field}' must be a list")
    if raw and isinstance(raw[0], list):
        rows = raw
    else:
        if len(raw) != n * n:
            raise InputError(f"field '{field}' must have {n * n} row-major entries")
        rows = [raw[i * n : (i + 1) * n] for i in range(n)]
    if len(rows) != n or any(len(r) != n for r in rows):
        raise InputError(f"field '{field}' must be {n}x{n}")
    try:
        return tuple(tuple(int(x) for x in r) for r in rows)
    except (TypeError, ValueError) as exc:
        raise InputError(f"field '{field}' entries must be integers") from exc


def parse_group(obj: dict) -> FiniteGroup:
    n = _int_field(obj, "order")
    if n <= 0:
        raise InputError("field 'order' must be positive")
    table = _index_table(obj, "table", n)
    name = obj.get("name", "")
    if not isinstance(name, str):
        raise InputError("field 'name' must be a string")
    return FiniteGroup.from_table(table, name)


def parse_lattice(obj: dict) -> FiniteLattice:
    n = _int_field(obj, "size")
    meet = _index_table(obj, "meet", n)
    join = _index_table(obj, "join", n)
    compl = _need(obj, "complement")
    if not isinstance(compl, list) or len(compl) != n:
        raise InputError(f"field 'complement' must list {n} indices")
    try:
        compl_t = tuple(int(x) for x in compl)
    except (TypeError, ValueError) as exc:
        raise InputError("field 'complement' entries must be integers") from exc
    zero = _int_field(obj, "zero")
    one = _int_field(obj, "one")
    return FiniteLattice(n, meet, join, compl_t, zero, one)


def jsonable(value):
    """Recursively convert report values into JSON-serializable data."""
    if isinstance(value, dict):
        return {str(k): jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonable(v) for v in value]
    if isinstance(value, (bool, int, str)) or value is None:
        return value
    if isinstance(value, (np.bool_,)):
        return bool(value)
    if isinstance(value, (np.integer,)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        return float(value)
    if isinstance(value, (complex, np.complexfloating)):
        return [float(value.real), float(value.imag)]
    if isinstance(value, np.ndarray):
        return jsonable(value.tolist())
    return str(value)


def render_report(report: dict) -> str:
    return json.dumps(jsonable(report), indent=2, sort_keys=True) + "\n"


def write_report(report: dict, path: str | None) -> str:
    text = render_report(report)
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    return text
