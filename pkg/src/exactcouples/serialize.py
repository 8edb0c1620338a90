"""Canonical JSON interchange format for couples and derivation trees.

One self-describing document per couple; key order is fixed, rationals are
"p/q" strings in lowest terms ("p" when the denominator is 1), and
subspace bases are stored in their canonical echelon form, so canonical
documents round-trip byte-identically and certificates diff cleanly.
"""

from __future__ import annotations

import json

from .category import Morphism
from .couple import CoupleTree, ExactCouple
from .errors import DocumentError
from .filt import FILT, FiltObject
from .linalg import Matrix, Subspace, rat, rat_str
from .vect import VECT, VectObject

FORMAT_VERSION = 1


def matrix_to_json(m: Matrix) -> list:
    return [[rat_str(x) for x in row] for row in m.data]


def matrix_from_json(data, rows: int, cols: int, where: str) -> Matrix:
    if not isinstance(data, list) or len(data) != rows:
        raise DocumentError(f"{where}: expected {rows} rows")
    try:
        return Matrix(rows, cols, [[rat(x) for x in row] for row in data])
    except (ValueError, TypeError) as exc:
        raise DocumentError(f"{where}: {exc}") from exc


def object_to_json(backend, obj) -> dict:
    if backend is VECT:
        return {"dim": obj.dim}
    steps = []
    for s in obj.steps:
        steps.append([[rat_str(x) for x in s.basis.column(j)] for j in range(s.basis.cols)])
    return {"dim": obj.dim, "steps": steps}


def object_from_json(kind: str, data, where: str):
    if not isinstance(data, dict) or "dim" not in data:
        raise DocumentError(f"{where}: object needs a dim")
    dim = data["dim"]
    if not isinstance(dim, int) or dim < 0:
        raise DocumentError(f"{where}: bad dimension {dim!r}")
    if kind == "vect":
        return VectObject(dim)
    steps_json = data.get("steps")
    if not isinstance(steps_json, list):
        raise DocumentError(f"{where}: filtered object needs steps")
    steps = []
    for p, cols in enumerate(steps_json):
        try:
            basis = Matrix.from_columns(dim, [[rat(x) for x in col] for col in cols])
            steps.append(Subspace(dim, basis))
        except (ValueError, TypeError) as exc:
            raise DocumentError(f"{where}: step {p}: {exc}") from exc
    try:
        return FiltObject(dim, tuple(steps))
    except ValueError as exc:
        raise DocumentError(f"{where}: {exc}") from exc


def couple_to_doc(c: ExactCouple) -> dict:
    be = c.backend
    return {
        "format_version": FORMAT_VERSION,
        "kind": be.name,
        "objects": {
            "D": object_to_json(be, c.D),
            "E": object_to_json(be, c.E),
        },
        "morphisms": {
            "alpha": matrix_to_json(c.alpha.matrix),
            "beta": matrix_to_json(c.beta.matrix),
            "gamma": matrix_to_json(c.gamma.matrix),
        },
    }


def doc_to_couple(doc: dict) -> ExactCouple:
    """Parse a couple document; exactness is NOT checked here.

    Shape and model constraints (e.g. filtration respect) are enforced,
    with the offending morphism and level named on failure.
    """
    if not isinstance(doc, dict):
        raise DocumentError("document must be a JSON object")
    if doc.get("format_version") != FORMAT_VERSION:
        raise DocumentError(f"unsupported format_version {doc.get('format_version')!r}")
    kind = doc.get("kind")
    if kind not in ("vect", "filt"):
        raise DocumentError(f"unknown backend kind {kind!r}")
    be = VECT if kind == "vect" else FILT
    objects = doc.get("objects")
    morphisms = doc.get("morphisms")
    if not isinstance(objects, dict) or not isinstance(morphisms, dict):
        raise DocumentError("document needs objects and morphisms")
    D = object_from_json(kind, objects.get("D"), "objects.D")
    E = object_from_json(kind, objects.get("E"), "objects.E")
    mats = {}
    shapes = {"alpha": (D, D), "beta": (D, E), "gamma": (E, D)}
    for name, (src, tgt) in shapes.items():
        raw = morphisms.get(name)
        if raw is None:
            raise DocumentError(f"missing morphism {name}")
        m = matrix_from_json(raw, tgt.dim, src.dim, f"morphisms.{name}")
        witness = be.matrix_witness(src, tgt, m)
        if witness is not None:
            raise DocumentError(f"morphisms.{name}: {witness}")
        mats[name] = Morphism(be, src, tgt, m)
    return ExactCouple(mats["alpha"], mats["beta"], mats["gamma"])


def dumps_canonical(doc: dict) -> str:
    return json.dumps(doc, indent=2) + "\n"


def loads(text: str) -> dict:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc


def node_to_doc(node, include_morphisms: bool) -> dict:
    out = {
        "path": node.path or "root",
        "certificate": dict(node.certificate),
        "valid": node.error is None,
    }
    if node.error is not None:
        out["error"] = node.error
    if include_morphisms:
        out["morphisms"] = {
            "alpha": matrix_to_json(node.couple.alpha.matrix),
            "beta": matrix_to_json(node.couple.beta.matrix),
            "gamma": matrix_to_json(node.couple.gamma.matrix),
        }
    if node.omega_data is not None:
        om = node.omega_data
        out["omega"] = {
            "unique": om.unique,
            "monic": om.monic,
            "epic": om.epic,
            "iso": om.iso,
            "ker_semistable": om.ker_verdict.verdict,
            "cok_semistable": om.cok_verdict.verdict,
        }
        if include_morphisms:
            out["omega"]["matrix"] = matrix_to_json(om.omega.matrix)
    children = {}
    if node.left is not None:
        children["left"] = node_to_doc(node.left, include_morphisms)
    if node.right is not None:
        children["right"] = node_to_doc(node.right, include_morphisms)
    if children:
        out["children"] = children
    return out


def tree_to_doc(tree: CoupleTree, include_morphisms: bool = False) -> dict:
    return {
        "format_version": FORMAT_VERSION,
        "kind": tree.root.couple.backend.name,
        "depth": tree.depth,
        "nodes": len(tree.all_nodes()),
        "leaves": len(tree.leaves()),
        "tree": node_to_doc(tree.root, include_morphisms),
    }
