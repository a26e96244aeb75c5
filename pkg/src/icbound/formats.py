"""JSON formats for instances, certificates, matroids, and codes.

Everything round-trips bit-exactly: rationals as "p/q" strings in lowest
terms, subsets as sorted label arrays, schema rows as tagged objects that
carry their full homomorphism data so a certificate can be re-verified with
no access to whatever produced it. Malformed input surfaces as InputError,
never as a raw KeyError or TypeError.
"""

from __future__ import annotations

import json
from typing import Dict, List, Optional

from icbound.certificate import DualCertificate
from icbound.errors import InputError
from icbound.groundset import GroundSet, LatticeHom, bit_indices
from icbound.instance import ClosureMode, IndexCodingInstance, from_graph
from icbound.lincode import ScalarLinearCode
from icbound.matroid import Matroid, rank_from_matrix
from icbound.rational import parse_rational, rat_str
from icbound.schema import HomExtRow, SchemaRow, SideRow, SubmodRow, SubmodSchema
from icbound.tighten import fano_schema, schema_with_submod

__all__ = [
    "schema_by_name",
    "SCHEMA_NAMES",
    "instance_to_json",
    "instance_from_json",
    "certificate_to_json",
    "certificate_from_json",
    "matroid_from_json",
    "matroid_to_json",
    "code_from_json",
    "code_to_json",
    "load_json",
    "dump_json",
]

SCHEMA_NAMES = (
    "submod",
    "fano-odd",
    "fano-even",
    "submod+fano-odd",
    "submod+fano-even",
)


def schema_by_name(name: str, policy: str = "identity", perms=None, homs=None):
    """Build a schema from its registry name.

    The policy arguments only matter for the homomorphic-extension part;
    a plain submod schema ignores them.
    """
    if name == "submod":
        return SubmodSchema()
    if name in ("fano-odd", "fano-even"):
        return fano_schema(name.split("-", 1)[1], policy, perms, homs)
    if name in ("submod+fano-odd", "submod+fano-even"):
        return schema_with_submod(name.rsplit("-", 1)[1], policy, perms, homs)
    raise InputError(f"unknown schema {name!r}; known: {', '.join(SCHEMA_NAMES)}")


# -- plumbing -----------------------------------------------------------------


def load_json(path: str):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from exc


def dump_json(obj, path: Optional[str]) -> str:
    text = json.dumps(obj, indent=2, sort_keys=False)
    if path is not None:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    return text


def _need(obj: dict, key: str, where: str):
    if not isinstance(obj, dict) or key not in obj:
        raise InputError(f"{where} is missing the {key!r} field")
    return obj[key]


def _labels_of_mask(gs: GroundSet, mask: int) -> List[str]:
    return [str(gs.labels[i]) for i in bit_indices(mask)]


def _mask_of_labels(gs: GroundSet, labels, where: str) -> int:
    if not isinstance(labels, (list, tuple)):
        raise InputError(f"{where} must be an array of labels")
    return gs.mask_of(tuple(labels))


# -- instances ----------------------------------------------------------------


def instance_to_json(instance: IndexCodingInstance) -> dict:
    gs = instance.messages
    return {
        "messages": [str(lab) for lab in gs.labels],
        "receivers": [
            {"wants": str(gs.labels[w]), "knows": _labels_of_mask(gs, k)}
            for w, k in instance.receivers
        ],
    }


def instance_from_json(obj) -> IndexCodingInstance:
    if not isinstance(obj, dict):
        raise InputError("instance file must be a JSON object")
    # Labels are canonicalized to strings at the file boundary so numeric
    # and string spellings of the same label cannot drift apart.
    if "graph" in obj:
        graph = obj["graph"]
        vertices = _need(graph, "vertices", "graph")
        edges = _need(graph, "edges", "graph")
        pairs = []
        for e in edges:
            if not isinstance(e, (list, tuple)) or len(e) != 2:
                raise InputError(f"edge {e!r} is not a pair")
            pairs.append((str(e[0]), str(e[1])))
        return from_graph(tuple(str(v) for v in vertices), pairs)
    messages = _need(obj, "messages", "instance")
    receivers = _need(obj, "receivers", "instance")
    gs = GroundSet(tuple(str(m) for m in messages))
    pairs = []
    for rec in receivers:
        wants = _need(rec, "wants", "receiver")
        knows = _need(rec, "knows", "receiver")
        pairs.append((str(wants), tuple(str(k) for k in knows)))
    return IndexCodingInstance.from_receivers(gs, pairs)


# -- schema rows and certificates ----------------------------------------------


def _row_to_json(row: SchemaRow, gs: GroundSet, schema) -> dict:
    if isinstance(row, SideRow):
        part = (schema.left, schema.right)[row.side]
        inner = _row_to_json(row.inner, gs, part)
        return {"kind": "left" if row.side == 0 else "right", "inner": inner}
    if isinstance(row, SubmodRow):
        return {
            "kind": "submod",
            "s": _labels_of_mask(gs, row.s),
            "t": _labels_of_mask(gs, row.t),
        }
    if isinstance(row, HomExtRow):
        gen = row.hom.domain
        atoms = {}
        for i, lab in enumerate(gen.labels):
            atoms[str(lab)] = _labels_of_mask(gs, row.hom.atom_images[i])
        return {
            "kind": "homext",
            "schema": row.schema,
            "base": _labels_of_mask(gs, row.hom.base),
            "atoms": atoms,
        }
    raise InputError(f"cannot serialize schema row {row!r}")


def _row_from_json(obj, gs: GroundSet, schema) -> SchemaRow:
    kind = _need(obj, "kind", "schema row")
    if kind in ("left", "right"):
        if not hasattr(schema, "left"):
            raise InputError(f"{kind!r} row used with non-union schema {schema.name!r}")
        side = 0 if kind == "left" else 1
        part = (schema.left, schema.right)[side]
        return SideRow(side, _row_from_json(_need(obj, "inner", "side row"), gs, part))
    if kind == "submod":
        s = _mask_of_labels(gs, _need(obj, "s", "submod row"), "s")
        t = _mask_of_labels(gs, _need(obj, "t", "submod row"), "t")
        return SubmodRow(s, t)
    if kind == "homext":
        name = _need(obj, "schema", "homext row")
        if getattr(schema, "generator", None) is None:
            raise InputError(f"homext row used with schema {schema.name!r}")
        if name != schema.name:
            raise InputError(
                f"homext row names schema {name!r} but is placed under {schema.name!r}"
            )
        gen = schema.generator
        base = _mask_of_labels(gs, _need(obj, "base", "homext row"), "base")
        atoms_obj = _need(obj, "atoms", "homext row")
        images = []
        for lab in gen.labels:
            entry = atoms_obj.get(str(lab), [])
            images.append(_mask_of_labels(gs, entry, f"atom {lab!r}"))
        return HomExtRow(name, LatticeHom(gen, gs, base, tuple(images)))
    raise InputError(f"unknown schema row kind {kind!r}")


def certificate_to_json(cert: DualCertificate, gs: GroundSet, schema) -> dict:
    x_entries = []
    for (s, t), v in sorted(cert.x.items()):
        x_entries.append(
            {
                "s": _labels_of_mask(gs, s),
                "t": _labels_of_mask(gs, t),
                "v": rat_str(v),
            }
        )
    y_entries = []
    for row, v in cert.y.items():
        y_entries.append({"row": _row_to_json(row, gs, schema), "v": rat_str(v)})
    return {
        "value": None if cert.claimed_value is None else rat_str(cert.claimed_value),
        "schema": cert.schema_name,
        "closure": cert.closure.value,
        "x": x_entries,
        "y": y_entries,
    }


def certificate_from_json(obj, gs: GroundSet, schema=None):
    """Read a certificate; returns (certificate, schema).

    When no schema object is supplied, one is built from the file's schema
    name with the default row policy — verification never depends on the
    policy because every row carries its full homomorphism.
    """
    if not isinstance(obj, dict):
        raise InputError("certificate file must be a JSON object")
    name = _need(obj, "schema", "certificate")
    if schema is None:
        schema = schema_by_name(name)
    closure_raw = _need(obj, "closure", "certificate")
    try:
        closure = ClosureMode(closure_raw)
    except ValueError as exc:
        raise InputError(f"unknown closure mode {closure_raw!r}") from exc
    x: Dict = {}
    for entry in _need(obj, "x", "certificate"):
        s = _mask_of_labels(gs, _need(entry, "s", "x entry"), "s")
        t = _mask_of_labels(gs, _need(entry, "t", "x entry"), "t")
        v = parse_rational(_need(entry, "v", "x entry"))
        if (s, t) in x:
            raise InputError(f"duplicate x entry for ({entry['s']}, {entry['t']})")
        x[(s, t)] = v
    y: Dict = {}
    for entry in _need(obj, "y", "certificate"):
        row = _row_from_json(_need(entry, "row", "y entry"), gs, schema)
        v = parse_rational(_need(entry, "v", "y entry"))
        y[row] = (y[row] + v) if row in y else v
    value = obj.get("value")
    claimed = None if value is None else parse_rational(value)
    return DualCertificate(name, closure, x, y, claimed), schema


# -- matroids and codes ---------------------------------------------------------


def matroid_to_json(matroid: Matroid) -> dict:
    return {
        "elements": [str(lab) for lab in matroid.gs.labels],
        "ranks": list(matroid.ranks),
    }


def matroid_from_json(obj) -> Matroid:
    if not isinstance(obj, dict):
        raise InputError("matroid file must be a JSON object")
    elements = _need(obj, "elements", "matroid")
    if "matrix" in obj:
        mat = obj["matrix"]
        p = _need(mat, "p", "matroid matrix")
        rows = _need(mat, "rows", "matroid matrix")
        for row in rows:
            if len(row) != len(elements):
                raise InputError("matrix rows must have one entry per element")
        columns = [[row[j] for row in rows] for j in range(len(elements))]
        return rank_from_matrix(tuple(str(e) for e in elements), columns, p)
    ranks = _need(obj, "ranks", "matroid")
    m = Matroid(GroundSet(tuple(str(e) for e in elements)), ranks)
    m.check_axioms()
    return m


def code_to_json(code: ScalarLinearCode) -> dict:
    return {"p": code.p, "matrix": [list(row) for row in code.matrix]}


def code_from_json(obj) -> ScalarLinearCode:
    if not isinstance(obj, dict):
        raise InputError("code file must be a JSON object")
    p = _need(obj, "p", "code")
    matrix = _need(obj, "matrix", "code")
    return ScalarLinearCode(int(p), tuple(tuple(int(v) for v in row) for row in matrix))
