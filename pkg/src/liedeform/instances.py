"""JSON descriptions of algebras and homomorphisms, and the bundled instances.

Two forms are accepted for an algebra::

    {"dim": 3, "labels": ["X", "Y", "Z"],
     "brackets": [{"i": 0, "j": 2, "coeffs": {"Y": "-1"}}]}

    {"n": 3, "labels": [...], "generators": [[[0,0,0],[1,0,0],[0,0,0]], ...]}

and ``{"gl": n}`` for gl(n) itself.  A homomorphism file has ``source``,
``target``, optional ``images`` (one per source basis vector: a coordinate
list, or a matrix when the target is gl(n)) and optional ``cocycles``,
preferred H^1 generators written in cochain notation.  If ``images`` is
missing and the source is given by matrices, the map is the inclusion.
Rationals are ``"p/q"`` strings or integers.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Any, Mapping

from .cohomology import Cochain, parse_cochain
from .exact import as_rational, format_rational
from .lie import (
    GlElement,
    LieAlgebra,
    LieError,
    LinearEmbedding,
    algebra_from_matrices,
    gl,
)

__all__ = [
    "InputError",
    "Instance",
    "BUILTINS",
    "algebra_from_json",
    "algebra_to_json",
    "homomorphism_from_json",
    "load_instance",
]

BUILTINS = {"heisenberg-gl3": "heisenberg_gl3.json"}


class InputError(ValueError):
    """Malformed instance description."""


@dataclass(frozen=True, eq=False)
class Instance:
    name: str
    rho: LinearEmbedding
    cocycles: tuple[Cochain, ...] | None = None
    raw: Mapping | None = None


def _label_index(key, labels) -> int:
    if isinstance(key, int):
        if not 0 <= key < len(labels):
            raise InputError(f"basis index {key} out of range")
        return key
    if key in labels:
        return labels.index(key)
    raise InputError(f"unknown basis label {key!r}")


def _rational(x):
    try:
        return as_rational(x)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise InputError(f"not an exact rational: {x!r}") from exc


def algebra_from_json(obj: Mapping[str, Any]) -> tuple[LieAlgebra, LinearEmbedding | None]:
    """Parse an algebra; the second value is the inclusion for matrix-generator input."""
    if not isinstance(obj, Mapping):
        raise InputError("algebra description must be an object")
    if "gl" in obj:
        return gl(int(obj["gl"])), None
    if "generators" in obj:
        gens = []
        for g in obj["generators"]:
            try:
                gens.append(GlElement.from_rows([[_rational(x) for x in row] for row in g]))
            except ValueError as exc:
                raise InputError(str(exc)) from exc
        if "n" in obj and any(g.n != int(obj["n"]) for g in gens):
            raise InputError("generator size does not match n")
        labels = obj.get("labels")
        alg, inc = algebra_from_matrices(gens, labels)
        return alg, inc
    if "dim" in obj:
        dim = int(obj["dim"])
        labels = list(obj.get("labels") or [f"b{i + 1}" for i in range(dim)])
        if len(labels) != dim:
            raise InputError("need one label per basis vector")
        brackets = {}
        for entry in obj.get("brackets", []):
            i = _label_index(entry["i"], labels)
            j = _label_index(entry["j"], labels)
            coords = [0] * dim
            for lab, c in entry.get("coeffs", {}).items():
                coords[_label_index(lab, labels)] = _rational(c)
            brackets[(i, j)] = coords
        return LieAlgebra.from_constants(labels, brackets), None
    raise InputError("algebra needs one of 'gl', 'generators' or 'dim'")


def algebra_to_json(alg: LieAlgebra) -> dict:
    brackets = []
    for (i, j), terms in alg.structure.items():
        brackets.append({
            "i": i,
            "j": j,
            "coeffs": {alg.labels[k]: format_rational(c) for k, c in terms},
        })
    return {"dim": alg.dim, "labels": list(alg.labels), "brackets": brackets}


def homomorphism_from_json(obj: Mapping[str, Any], name: str = "input") -> Instance:
    try:
        source, inclusion = algebra_from_json(obj["source"])
        target, _ = algebra_from_json(obj["target"])
    except KeyError as exc:
        raise InputError(f"missing field {exc}") from exc
    if "images" in obj:
        images = []
        for img in obj["images"]:
            if img and isinstance(img[0], list):
                images.append(GlElement.from_rows([[_rational(x) for x in row]
                                                   for row in img]).coords())
            else:
                images.append(tuple(_rational(x) for x in img))
        try:
            rho = LinearEmbedding(source, target, tuple(images))
        except LieError as exc:
            raise InputError(str(exc)) from exc
    elif inclusion is not None:
        if inclusion.target.labels != target.labels:
            raise InputError("inclusion needs target gl(n) with matching n")
        rho = LinearEmbedding(source, target, inclusion.images)
    else:
        raise InputError("'images' required unless the source is given by matrices")
    cocycles = None
    if "cocycles" in obj:
        try:
            cocycles = tuple(parse_cochain(s, source, target, degree=1) for s in obj["cocycles"])
        except ValueError as exc:
            raise InputError(f"bad cocycle: {exc}") from exc
    return Instance(obj.get("name", name), rho, cocycles, obj)


def load_instance(spec: str | Path) -> Instance:
    """Load ``builtin:<name>`` or a JSON file path."""
    spec = str(spec)
    if spec.startswith("builtin:"):
        key = spec.split(":", 1)[1]
        if key not in BUILTINS:
            raise InputError(f"unknown builtin {key!r}; have {sorted(BUILTINS)}")
        text = resources.files("liedeform.data").joinpath(BUILTINS[key]).read_text("utf-8")
        return homomorphism_from_json(json.loads(text), key)
    try:
        text = Path(spec).read_text("utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {spec}: {exc}") from exc
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{spec}: invalid JSON ({exc})") from exc
    if not isinstance(obj, Mapping):
        raise InputError(f"{spec}: top level must be an object")
    return homomorphism_from_json(obj, Path(spec).stem)
