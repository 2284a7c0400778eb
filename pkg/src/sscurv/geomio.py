"""Geometry and jet JSON files.

Rationals are encoded as strings "p/q" (or bare integers); float literals
are rejected outright since the engine admits no rounding. Structure
constants are a list of {i, j, k, value} entries for C^k_ij with 1-based
indices; the antisymmetric partner of every entry is filled in
automatically and conflicts are diagnosed field by field.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from .errors import InputError
from .geometry import (DistinguishedField, FrameAlgebra, GeometrySpec,
                       MetricFrame, ScalarJet)
from .rat import Rat, ZERO, format_rat, parse_rat, rat
from .tensor import DOWN, UP, Tensor


@dataclass(frozen=True)
class LoadedGeometry:
    spec: GeometrySpec
    notes: tuple[str, ...]


def _rat_value(value, *, path, field) -> Rat:
    if isinstance(value, bool):
        raise InputError("expected a rational, got a boolean", path=path, field=field)
    if isinstance(value, int):
        return rat(value)
    if isinstance(value, float):
        raise InputError(
            f"float literal {value!r} rejected; use an exact string like \"1/2\"",
            path=path, field=field)
    if isinstance(value, str):
        try:
            return parse_rat(value)
        except ValueError as exc:
            raise InputError(str(exc), path=path, field=field) from None
    raise InputError(f"expected a rational, got {type(value).__name__}",
                     path=path, field=field)


def _index(value, dim, *, path, field) -> int:
    if not isinstance(value, int) or isinstance(value, bool):
        raise InputError(f"expected a 1-based index, got {value!r}", path=path, field=field)
    if not 1 <= value <= dim:
        raise InputError(f"index {value} out of range 1..{dim}", path=path, field=field)
    return value - 1


def _square_array(data, dim, variance, *, path, field) -> Tensor:
    if not isinstance(data, list) or len(data) != dim:
        raise InputError(f"expected a {dim}x{dim} array", path=path, field=field)
    comps = []
    for r, row in enumerate(data):
        if not isinstance(row, list) or len(row) != dim:
            raise InputError(f"expected a {dim}x{dim} array", path=path,
                             field=f"{field}[{r}]")
        for c, value in enumerate(row):
            comps.append(_rat_value(value, path=path, field=f"{field}[{r}][{c}]"))
    return Tensor(variance, dim, comps)


def _flat_array(data, dim, variance, *, path, field) -> Tensor:
    if not isinstance(data, list) or len(data) != dim:
        raise InputError(f"expected an array of length {dim}", path=path, field=field)
    comps = [_rat_value(v, path=path, field=f"{field}[{c}]") for c, v in enumerate(data)]
    return Tensor(variance, dim, comps)


def geometry_from_dict(data: dict, *, path: str | None = None,
                       default_name: str = "geometry") -> LoadedGeometry:
    if not isinstance(data, dict):
        raise InputError("top-level value must be an object", path=path)
    notes: list[str] = []

    dim = data.get("dim", 3)
    if not isinstance(dim, int) or isinstance(dim, bool) or not 1 <= dim <= 4:
        raise InputError(f"dim must be an integer in 1..4, got {dim!r}",
                         path=path, field="dim")
    name = data.get("name", default_name)
    if not isinstance(name, str) or not name:
        raise InputError("name must be a non-empty string", path=path, field="name")

    entries = data.get("structure_constants", [])
    if not isinstance(entries, list):
        raise InputError("structure_constants must be a list", path=path,
                         field="structure_constants")
    explicit: dict[tuple[int, int, int], Rat] = {}
    for pos, entry in enumerate(entries):
        field = f"structure_constants[{pos}]"
        if not isinstance(entry, dict) or set(entry) != {"i", "j", "k", "value"}:
            raise InputError("entry must be an object with keys i, j, k, value",
                             path=path, field=field)
        i = _index(entry["i"], dim, path=path, field=f"{field}.i")
        j = _index(entry["j"], dim, path=path, field=f"{field}.j")
        k = _index(entry["k"], dim, path=path, field=f"{field}.k")
        v = _rat_value(entry["value"], path=path, field=f"{field}.value")
        if i == j and v != 0:
            raise InputError(f"antisymmetry forces C^{k + 1}_({i + 1},{j + 1}) = 0",
                             path=path, field=field)
        key = (k, i, j)
        if key in explicit and explicit[key] != v:
            raise InputError(
                f"conflicting values for C^{k + 1}_({i + 1},{j + 1}): "
                f"{format_rat(explicit[key])} vs {format_rat(v)}",
                path=path, field=field)
        explicit[key] = v

    full: dict[tuple[int, int, int], Rat] = {}
    for (k, i, j), v in sorted(explicit.items()):
        full[(k, i, j)] = v
        mirror = (k, j, i)
        if mirror in explicit:
            if explicit[mirror] != -v:
                raise InputError(
                    f"antisymmetry conflict: C^{k + 1}_({i + 1},{j + 1}) = {format_rat(v)} "
                    f"but C^{k + 1}_({j + 1},{i + 1}) = {format_rat(explicit[mirror])}",
                    path=path, field="structure_constants")
        elif v != 0:
            full[mirror] = -v
            notes.append(
                f"completed C^{k + 1}_({j + 1},{i + 1}) = {format_rat(-v)} by antisymmetry")
    comps = [ZERO] * dim ** 3
    for (k, i, j), v in full.items():
        comps[(k * dim + i) * dim + j] = v
    frame = FrameAlgebra(dim, Tensor((UP, DOWN, DOWN), dim, comps))

    if "metric" not in data:
        raise InputError("missing required field", path=path, field="metric")
    g = _square_array(data["metric"], dim, (DOWN, DOWN), path=path, field="metric")
    try:
        metric = MetricFrame.from_tensor(g)
    except Exception as exc:
        raise InputError(f"metric not invertible: {exc}", path=path, field="metric") from None

    if "xi" not in data:
        raise InputError("missing required field", path=path, field="xi")
    xi = _flat_array(data["xi"], dim, (UP,), path=path, field="xi")
    dist = DistinguishedField.from_xi(xi, metric)

    jet = None
    if "jet" in data and data["jet"] is not None:
        jet = jet_from_dict(data["jet"], dim, path=path, field="jet")

    known = {"name", "dim", "structure_constants", "metric", "xi", "jet"}
    for key in data:
        if key not in known:
            raise InputError(f"unknown field {key!r}", path=path, field=key)

    return LoadedGeometry(GeometrySpec(name, frame, metric, dist, jet), tuple(notes))


def jet_from_dict(data, dim: int, *, path: str | None = None,
                  field: str = "jet") -> ScalarJet:
    if not isinstance(data, dict) or set(data) - {"d", "dd"}:
        raise InputError("jet must be an object with keys d and dd", path=path, field=field)
    if "d" not in data or "dd" not in data:
        raise InputError("jet needs both d and dd", path=path, field=field)
    d = _flat_array(data["d"], dim, (DOWN,), path=path, field=f"{field}.d")
    dd = _square_array(data["dd"], dim, (DOWN, DOWN), path=path, field=f"{field}.dd")
    return ScalarJet(d, dd)


def load_geometry(path: str | Path) -> LoadedGeometry:
    path = Path(path)
    if not path.exists():
        raise InputError("file not found", path=str(path))
    try:
        data = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}",
                         path=str(path)) from None
    return geometry_from_dict(data, path=str(path), default_name=path.stem)


def parse_geometry(path: str | Path) -> GeometrySpec:
    """Parse a geometry file; normalization notes are dropped."""
    return load_geometry(path).spec


def load_jet(path: str | Path, dim: int) -> ScalarJet:
    path = Path(path)
    if not path.exists():
        raise InputError("file not found", path=str(path))
    try:
        data = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}",
                         path=str(path)) from None
    return jet_from_dict(data, dim, path=str(path), field="jet")


def geometry_to_dict(spec: GeometrySpec) -> dict:
    """Canonical emission: entries with i < j only, sorted, lowest-term strings."""
    dim = spec.dim
    entries = []
    for i in range(dim):
        for j in range(i + 1, dim):
            for k in range(dim):
                v = spec.frame.c[k, i, j]
                if v != 0:
                    entries.append({"i": i + 1, "j": j + 1, "k": k + 1,
                                    "value": format_rat(v)})
    out = {
        "name": spec.name,
        "dim": dim,
        "structure_constants": entries,
        "metric": [[format_rat(spec.metric.g[i, j]) for j in range(dim)]
                   for i in range(dim)],
        "xi": [format_rat(spec.distinguished.xi[i]) for i in range(dim)],
    }
    if spec.jet is not None:
        out["jet"] = {
            "d": [format_rat(spec.jet.d[i]) for i in range(dim)],
            "dd": [[format_rat(spec.jet.dd[i, j]) for j in range(dim)]
                   for i in range(dim)],
        }
    return out


def dumps_geometry(spec: GeometrySpec) -> str:
    return json.dumps(geometry_to_dict(spec), indent=2) + "\n"


def write_geometry(spec: GeometrySpec, path: str | Path):
    Path(path).write_text(dumps_geometry(spec))
