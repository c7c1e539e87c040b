"""JSON readers and writers for matroids, graphs, family descriptions and exterior elements."""
from __future__ import annotations

import json
import os
import tempfile
from fractions import Fraction
from typing import Mapping

from .constructions import FamilySpec, Graph
from .exterior import ExteriorElement
from .matroid import Matroid, MatroidError

SCHEMA_VERSION = 1


def matroid_to_json(m: Matroid) -> dict:
    pos = {l: i for i, l in enumerate(m.labels)}
    cs = sorted((sorted(m.labels_of(c), key=pos.__getitem__) for c in m.circuits),
                key=lambda c: (len(c), [pos[x] for x in c]))
    return {"ground": list(m.labels), "circuits": cs}


def matroid_from_json(data: Mapping) -> Matroid:
    if "ground" not in data or "circuits" not in data:
        raise MatroidError("matroid JSON needs 'ground' and 'circuits'")
    return Matroid.from_labels(data["ground"], data["circuits"])


def graph_to_json(g: Graph) -> dict:
    return {"vertices": list(g.vertices),
            "edges": [{"label": l, "ends": [u, v]} for l, u, v in g.edges]}


def graph_from_json(data: Mapping) -> Graph:
    edges = []
    for e in data["edges"]:
        u, v = e["ends"]
        edges.append((e["label"], u, v))
    return Graph(tuple(data["vertices"]), tuple(edges))


def family_to_json(spec: FamilySpec) -> dict:
    return {"seed": matroid_to_json(spec.seed), "basepoint": spec.basepoint, "n": spec.n}


def family_from_json(data: Mapping) -> FamilySpec:
    return FamilySpec(matroid_from_json(data["seed"]), data["basepoint"], int(data["n"]))


def exterior_to_json(x: ExteriorElement, labels) -> dict:
    terms = []
    for mono, c in sorted(x.terms.items(), key=lambda kv: (len(kv[0]), kv[0])):
        terms.append({"monomial": [labels[i] for i in mono], "num": c.numerator, "den": c.denominator})
    return {"terms": terms}


def exterior_from_json(data: Mapping, labels) -> ExteriorElement:
    index = {l: i for i, l in enumerate(labels)}
    out = ExteriorElement()
    for t in data["terms"]:
        try:
            ids = [index[str(l)] for l in t["monomial"]]
        except KeyError as exc:
            raise MatroidError(f"unknown generator {exc.args[0]!r}") from None
        out = out + ExteriorElement.monomial(ids, Fraction(int(t["num"]), int(t.get("den", 1))))
    return out


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False, ensure_ascii=False) + "\n"


def load(path: str):
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


def write_atomic(path: str, text: str) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".osforge-")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
