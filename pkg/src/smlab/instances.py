"""Instance descriptors: JSON-able dicts that rebuild rings, modules and submodules.

Ring descriptors::

    {"kind": "zmod", "n": 12}
    {"kind": "gfpoly", "p": 2, "modulus": [1, 1, 1]}        # little-endian, monic
    {"kind": "truncpoly", "p": 2, "nvars": 2, "degree": 2}   # F_p[x1..xk]/(x1..xk)^d
    {"kind": "product", "factors": [<ring>, ...]}
    {"kind": "quotient", "base": <ring>, "ideal_gens": [i, ...]}

Module descriptors::

    {"kind": "regular"}
    {"kind": "cyclic", "ideal_gens": [i, ...]}
    {"kind": "dsum", "parts": [<module>, ...]}
    {"kind": "quotient", "base": <module>, "sub_gens": [x, ...]}

Integer modules: ``{"rank": k, "relations": [[...], ...]}`` with submodules
``{"gens": [[...], ...]}``; each inner list is one generator vector.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any

from .errors import Caps, CapExceeded, ParseError, PreconditionError
from .finmod import (
    ModuleTable,
    Submodule,
    mod_cyclic,
    mod_direct_sum,
    mod_quotient,
    mod_regular,
    submodule_generated,
)
from .finring import (
    RingTable,
    ideal_generated,
    ring_polyquot,
    ring_product,
    ring_quotient,
    ring_truncpoly,
    ring_zmod,
)
from .zlattice import ZModule, ZSubmodule, z_submodule, zmodule


def _int(d: dict, key: str) -> int:
    try:
        v = d[key]
    except (KeyError, TypeError):
        raise ParseError(f"missing field {key!r} in {d!r}") from None
    if isinstance(v, bool) or not isinstance(v, int):
        raise ParseError(f"field {key!r} must be an integer, got {v!r}")
    return v


def _int_list(d: dict, key: str, default=None) -> list[int]:
    v = d.get(key, default) if isinstance(d, dict) else None
    if v is None:
        raise ParseError(f"missing field {key!r} in {d!r}")
    if not isinstance(v, list) or not all(isinstance(a, int) and not isinstance(a, bool) for a in v):
        raise ParseError(f"field {key!r} must be a list of integers, got {v!r}")
    return v


def _elements(gens: list[int], size: int, what: str) -> list[int]:
    for g in gens:
        if not 0 <= g < size:
            raise ParseError(f"{what} index {g} out of range 0..{size - 1}")
    return gens


def build_ring(desc: Any, caps: Caps | None = None) -> RingTable:
    caps = caps or Caps.from_env()
    if not isinstance(desc, dict) or "kind" not in desc:
        raise ParseError(f"ring descriptor must be an object with a 'kind': {desc!r}")
    kind = desc["kind"]
    try:
        if kind == "zmod":
            r = ring_zmod(_int(desc, "n"))
        elif kind == "gfpoly":
            r = ring_polyquot(_int(desc, "p"), _int_list(desc, "modulus"))
        elif kind == "truncpoly":
            r = ring_truncpoly(_int(desc, "p"), _int(desc, "nvars"), _int(desc, "degree"))
        elif kind == "product":
            factors = desc.get("factors")
            if not isinstance(factors, list) or not factors:
                raise ParseError("product needs a nonempty 'factors' list")
            r = build_ring(factors[0], caps)
            for f in factors[1:]:
                r = ring_product(r, build_ring(f, caps))
        elif kind == "quotient":
            base = build_ring(desc.get("base"), caps)
            gens = _elements(_int_list(desc, "ideal_gens"), base.size, "ring element")
            r, _ = ring_quotient(base, ideal_generated(base, gens))
        else:
            raise ParseError(f"unknown ring kind {kind!r}")
    except PreconditionError as exc:
        # a ring constructor rejecting its parameters means the descriptor is bad
        raise ParseError(str(exc)) from exc
    if r.size > caps.ring:
        raise CapExceeded(f"ring of size {r.size} exceeds cap ring={caps.ring}")
    return r


def build_module(r: RingTable, desc: Any, caps: Caps | None = None) -> ModuleTable:
    caps = caps or Caps.from_env()
    if not isinstance(desc, dict) or "kind" not in desc:
        raise ParseError(f"module descriptor must be an object with a 'kind': {desc!r}")
    kind = desc["kind"]
    if kind == "regular":
        m = mod_regular(r)
    elif kind == "cyclic":
        gens = _elements(_int_list(desc, "ideal_gens"), r.size, "ring element")
        i = ideal_generated(r, gens)
        if not i.is_proper:
            raise PreconditionError("cyclic module R/I needs a proper ideal I")
        m = mod_cyclic(r, i)
    elif kind == "dsum":
        parts = desc.get("parts")
        if not isinstance(parts, list) or not parts:
            raise ParseError("dsum needs a nonempty 'parts' list")
        m = build_module(r, parts[0], caps)
        for part in parts[1:]:
            m = mod_direct_sum(m, build_module(r, part, caps))
            if m.size > caps.module:
                raise CapExceeded(f"module of size {m.size} exceeds cap module={caps.module}")
    elif kind == "quotient":
        base = build_module(r, desc.get("base"), caps)
        gens = _elements(_int_list(desc, "sub_gens"), base.size, "module element")
        n = submodule_generated(base, gens)
        if not n.is_proper:
            raise PreconditionError("quotient by the whole module")
        m, _ = mod_quotient(base, n)
    else:
        raise ParseError(f"unknown module kind {kind!r}")
    if m.size > caps.module:
        raise CapExceeded(f"module of size {m.size} exceeds cap module={caps.module}")
    return m


def build_submodule(m: ModuleTable, desc: Any) -> Submodule:
    gens = _elements(_int_list(desc, "gens"), m.size, "module element")
    return submodule_generated(m, gens)


def _matrix(desc: dict, key: str, k: int) -> list[list[int]]:
    rows = desc.get(key, [])
    if not isinstance(rows, list):
        raise ParseError(f"{key!r} must be a list of integer vectors")
    for row in rows:
        if not isinstance(row, list) or len(row) != k or not all(
                isinstance(a, int) and not isinstance(a, bool) for a in row):
            raise ParseError(f"{key!r} entry {row!r} is not an integer vector of length {k}")
    return rows


def build_zmodule(desc: Any) -> ZModule:
    if not isinstance(desc, dict):
        raise ParseError("zmodule descriptor must be an object")
    k = _int(desc, "rank")
    if k < 1:
        raise ParseError("rank must be at least 1")
    return zmodule(k, _matrix(desc, "relations", k))


def build_zsub(m: ZModule, desc: Any) -> ZSubmodule:
    if not isinstance(desc, dict) or "gens" not in desc:
        raise ParseError("zsub descriptor must be an object with 'gens'")
    return z_submodule(m, _matrix(desc, "gens", m.rank))


@dataclass
class Instance:
    """One corpus or file instance; ``backend`` is "finite" or "zlattice"."""
    backend: str
    descriptor: dict
    provenance: str = ""
    _built: dict = field(default_factory=dict, repr=False, compare=False)

    @property
    def name(self) -> str:
        return self.provenance or json.dumps(self.descriptor, sort_keys=True)

    def module(self, caps: Caps | None = None):
        if "module" not in self._built:
            if self.backend == "finite":
                r = build_ring(self.descriptor["ring"], caps)
                self._built["module"] = build_module(r, self.descriptor["module"], caps)
            else:
                self._built["module"] = build_zmodule(self.descriptor["zmodule"])
        return self._built["module"]

    def submodule(self, caps: Caps | None = None):
        key = "zsub" if self.backend == "zlattice" else "submodule"
        if key not in self.descriptor:
            return None
        m = self.module(caps)
        if self.backend == "zlattice":
            return build_zsub(m, self.descriptor["zsub"])
        return build_submodule(m, self.descriptor["submodule"])

    def to_json(self) -> dict:
        return {"backend": self.backend, "provenance": self.provenance, **self.descriptor}


def parse_instance(doc: Any, provenance: str = "") -> Instance:
    if not isinstance(doc, dict):
        raise ParseError("instance file must hold a JSON object")
    if "zmodule" in doc:
        desc = {"zmodule": doc["zmodule"]}
        if "zsub" in doc:
            desc["zsub"] = doc["zsub"]
        return Instance("zlattice", desc, provenance or doc.get("provenance", ""))
    if "ring" in doc:
        desc = {"ring": doc["ring"], "module": doc.get("module", {"kind": "regular"})}
        if "submodule" in doc:
            desc["submodule"] = doc["submodule"]
        return Instance("finite", desc, provenance or doc.get("provenance", ""))
    raise ParseError("instance needs either 'ring' or 'zmodule'")


def serialize_instance(inst: Instance) -> dict:
    out = dict(inst.descriptor)
    if inst.provenance:
        out["provenance"] = inst.provenance
    return out


def load_instance(path: str) -> Instance:
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: {exc}") from exc
    return parse_instance(doc)
