"""JSON round-trips for algebra descriptors and tower files.

Descriptors rebuild through the validating constructors, so a hand-edited
file that violates a construction hypothesis is rejected on load.
"""

from __future__ import annotations

from typing import Optional

from .chains import Algebra, BaseAlgebra, BoundedAlgebra, adjoin_bounds
from .errors import ShapeError
from .groups import QChain, SubgroupDescriptor, Trivial, ZLex
from .plp import build_plp
from .towers import Countertower, RepresentationSpec


def algebra_to_json(algebra: Algebra) -> dict:
    if isinstance(algebra, BaseAlgebra):
        chain = algebra.chain
        if isinstance(chain, ZLex):
            return {"base": "Z", "rank": chain.rank}
        if isinstance(chain, QChain):
            return {"base": "Q"}
        return {"base": "1"}
    if isinstance(algebra, BoundedAlgebra):
        return {"bounded": algebra_to_json(algebra.inner)}
    doc = {
        "plp": algebra.kind.value,
        "first": algebra_to_json(algebra.first),
        "vdesc": algebra.vdesc.to_strings(),
        "second": algebra_to_json(algebra.second),
    }
    if algebra.zdesc is not None:
        doc["zdesc"] = algebra.zdesc.to_strings()
    return doc


def algebra_from_json(doc: dict) -> Algebra:
    if not isinstance(doc, dict):
        raise ShapeError("algebra document must be a JSON object")
    if "base" in doc:
        kind = doc["base"]
        if kind == "Z":
            return BaseAlgebra(ZLex(int(doc.get("rank", 1))))
        if kind == "Q":
            return BaseAlgebra(QChain())
        if kind == "1":
            return BaseAlgebra(Trivial())
        raise ShapeError(f"unknown base chain {kind!r}")
    if "bounded" in doc:
        return adjoin_bounds(algebra_from_json(doc["bounded"]))
    if "plp" in doc:
        kind = doc["plp"]
        first = algebra_from_json(doc["first"])
        second = algebra_from_json(doc["second"])
        vdesc = SubgroupDescriptor.from_strings(doc["vdesc"])
        zdesc: Optional[SubgroupDescriptor] = None
        if "zdesc" in doc:
            zdesc = SubgroupDescriptor.from_strings(doc["zdesc"])
        if kind == "III":
            return build_plp("III", first, zdesc=zdesc, vdesc=vdesc, second=second)
        if kind == "IV":
            return build_plp("IV", first, vdesc=vdesc, second=second)
        raise ShapeError(f"unknown product kind {kind!r}")
    raise ShapeError("algebra document has no recognised shape")


def tower_to_json(tower: Countertower) -> dict:
    return {
        "mode": tower.mode,
        "spec": tower.spec.to_json(),
        "stages": [algebra_to_json(stage) for stage in tower.stages],
    }


def tower_from_json(doc: dict) -> Countertower:
    spec = RepresentationSpec.from_json(doc["spec"])
    stages = tuple(algebra_from_json(stage) for stage in doc["stages"])
    return Countertower(spec, doc["mode"], stages)
