"""Deterministic instance corpora for the law suites."""

from __future__ import annotations

import random

from ..errors import CapExceeded, Caps, PreconditionError
from ..instances import Instance, build_module, build_ring

RANDOM_LATTICE_LIMIT = 128


def zmod(n):
    return {"kind": "zmod", "n": n}


def gfpoly(p, modulus):
    return {"kind": "gfpoly", "p": p, "modulus": list(modulus)}


def product(*factors):
    return {"kind": "product", "factors": list(factors)}


def truncpoly(p, nvars, degree):
    return {"kind": "truncpoly", "p": p, "nvars": nvars, "degree": degree}


REGULAR = {"kind": "regular"}


def cyclic(*gens):
    return {"kind": "cyclic", "ideal_gens": list(gens)}


def dsum(*parts):
    return {"kind": "dsum", "parts": list(parts)}


def mquot(base, *gens):
    return {"kind": "quotient", "base": base, "sub_gens": list(gens)}


def _monic(p: int, degree: int):
    for low in range(p ** degree):
        coeffs = [(low // p ** i) % p for i in range(degree)]
        yield coeffs + [1]


def curated_finite() -> list[tuple[str, dict, dict]]:
    out = []
    for n in range(2, 31):
        out.append((f"Z/{n}", zmod(n), REGULAR))
    for degree in (1, 2, 3):
        for f in _monic(2, degree):
            out.append((f"F2[x]/{f}", gfpoly(2, f), REGULAR))
    for degree in (1, 2):
        for f in _monic(3, degree):
            out.append((f"F3[x]/{f}", gfpoly(3, f), REGULAR))
    for f in ([0, 0, 0, 1], [1, 2, 0, 1], [0, 2, 0, 1]):
        out.append((f"F3[x]/{f}", gfpoly(3, f), REGULAR))
    f2xy = truncpoly(2, 2, 2)
    out += [
        ("F2[x,y]/(x,y)^2", f2xy, REGULAR),
        ("F2[x,y,z]/(x,y,z)^2", truncpoly(2, 3, 2), REGULAR),
        ("F3[x,y]/(x,y)^2", truncpoly(3, 2, 2), REGULAR),
        ("F2[x,y]/(x,y)^3", truncpoly(2, 2, 3), REGULAR),
    ]
    f4 = gfpoly(2, [1, 1, 1])
    dual = gfpoly(2, [0, 0, 1])
    for name, ring in [
        ("Z/2xZ/2", product(zmod(2), zmod(2))),
        ("Z/2xZ/3", product(zmod(2), zmod(3))),
        ("Z/2xZ/4", product(zmod(2), zmod(4))),
        ("Z/3xZ/3", product(zmod(3), zmod(3))),
        ("Z/4xZ/4", product(zmod(4), zmod(4))),
        ("Z/2xZ/2xZ/2", product(zmod(2), zmod(2), zmod(2))),
        ("F4xZ/2", product(f4, zmod(2))),
        ("Z/2xF2[x]/(x^2)", product(zmod(2), dual)),
        ("Z/3xZ/4", product(zmod(3), zmod(4))),
        ("Z/4xZ/9", product(zmod(4), zmod(9))),
        ("Z/8xZ/8", product(zmod(8), zmod(8))),
    ]:
        out.append((name, ring, REGULAR))
    out += [
        ("(Z/2)^2 over Z/2", zmod(2), dsum(REGULAR, REGULAR)),
        ("(Z/2)^3 over Z/2", zmod(2), dsum(REGULAR, REGULAR, REGULAR)),
        ("(Z/2)^4 over Z/2", zmod(2), dsum(REGULAR, REGULAR, REGULAR, REGULAR)),
        ("(Z/3)^2 over Z/3", zmod(3), dsum(REGULAR, REGULAR)),
        ("F4^2 over F4", f4, dsum(REGULAR, REGULAR)),
        ("Z/4+Z/2 over Z/4", zmod(4), dsum(REGULAR, cyclic(2))),
        ("Z/4+Z/4 over Z/4", zmod(4), dsum(REGULAR, REGULAR)),
        ("Z/8+Z/2 over Z/8", zmod(8), dsum(REGULAR, cyclic(2))),
        ("Z/8+Z/4 over Z/8", zmod(8), dsum(REGULAR, cyclic(4))),
        ("Z/9+Z/3 over Z/9", zmod(9), dsum(REGULAR, cyclic(3))),
        ("Z/12+Z/2 over Z/12", zmod(12), dsum(REGULAR, cyclic(2))),
        ("Z/4 over Z/12", zmod(12), cyclic(4)),
        ("Z/6+Z/6 over Z/6", zmod(6), dsum(REGULAR, REGULAR)),
        ("Z/6+Z/3 over Z/6", zmod(6), dsum(REGULAR, cyclic(3))),
        ("Z/24/(8)", zmod(24), mquot(REGULAR, 8)),
        ("Z/30 over Z/60", zmod(60), cyclic(30)),
        ("F2[x]/(x^2) doubled", dual, dsum(REGULAR, REGULAR)),
        ("F2[x]/(x^2)+F2", dual, dsum(REGULAR, cyclic(2))),
        ("F2[x]/(x^3)+F2[x]/(x)", gfpoly(2, [0, 0, 0, 1]), dsum(REGULAR, cyclic(2))),
        ("F2[x,y]/(x,y)^2 / (x)", f2xy, cyclic(2)),
        ("F2[x,y]/(x,y)^2 / (x+y)", f2xy, mquot(REGULAR, 6)),
        ("F2[x,y]/(x,y)^2 mod m", f2xy, cyclic(2, 4)),
        ("Z/2xZ/4 doubled first", product(zmod(2), zmod(4)), dsum(REGULAR, cyclic(4))),
    ]
    return out


def _random_finite(rng: random.Random, caps: Caps, count: int) -> list[tuple[str, dict, dict]]:
    pool = [zmod(n) for n in range(2, 17)]
    pool += [gfpoly(2, [0, 0, 1]), gfpoly(2, [1, 1, 1]), gfpoly(2, [0, 1, 1]), gfpoly(3, [0, 0, 1]),
             truncpoly(2, 2, 2), product(zmod(2), zmod(3)), product(zmod(2), zmod(2))]
    out, seen = [], set()
    attempts = 0
    while len(out) < count and attempts < 50 * count:
        attempts += 1
        ring_desc = rng.choice(pool)
        try:
            ring = build_ring(ring_desc, caps)
        except (CapExceeded, PreconditionError):
            continue
        kind = rng.choice(["cyclic", "dsum", "quotient", "dsum"])
        if kind == "cyclic":
            mod_desc = cyclic(rng.randrange(1, ring.size))
        elif kind == "dsum":
            parts = [REGULAR if rng.random() < 0.5 else cyclic(rng.randrange(1, ring.size))
                     for _ in range(2)]
            mod_desc = dsum(*parts)
        else:
            base = dsum(REGULAR, REGULAR)
            mod_desc = mquot(base, rng.randrange(1, ring.size ** 2))
        key = repr((ring_desc, mod_desc))
        if key in seen:
            continue
        try:
            m = build_module(ring, mod_desc, caps)
            if m.size < 2 or len(m.lattice) > RANDOM_LATTICE_LIMIT:
                continue
        except (CapExceeded, PreconditionError):
            continue
        seen.add(key)
        out.append((f"random-{len(out)}", ring_desc, mod_desc))
    return out


def zcases() -> list[tuple[str, dict, dict]]:
    """Curated integer-lattice decision cases (module, submodule)."""
    def zm(rank, *relations):
        return {"rank": rank, "relations": [list(r) for r in relations]}

    def zs(*gens):
        return {"gens": [list(g) for g in gens]}

    out = []
    Z = zm(1)
    for n in range(2, 21):
        out.append((f"Z, {n}Z", Z, zs([n])))
    out.append(("Z, 0", Z, zs()))
    Z2 = zm(2)
    for name, gens in [
        ("0", []), ("4Z^2", [[4, 0], [0, 4]]), ("2Z^2", [[2, 0], [0, 2]]),
        ("Z+2Z", [[1, 0], [0, 2]]), ("Z+4Z", [[1, 0], [0, 4]]), ("2Z+4Z", [[2, 0], [0, 4]]),
        ("<(2,0),(1,3)>", [[2, 0], [1, 3]]), ("Z+0", [[1, 0]]), ("<(1,1)>", [[1, 1]]),
        ("Z+9Z", [[1, 0], [0, 9]]),
    ]:
        out.append((f"Z^2, {name}", Z2, zs(*gens)))
    out.append(("Z^3, 0", zm(3), zs()))
    out.append(("Z^3, Z+Z+4Z", zm(3), zs([1, 0, 0], [0, 1, 0], [0, 0, 4])))
    for q in (3, 5):
        M = zm(2, [0, q])
        for a in (1, 2, 3):
            out.append((f"Z+Z/{q}, {2 ** a}Z+Z/{q}", M, zs([2 ** a, 0], [0, 1])))
        out.append((f"Z+Z/{q}, 4Z+0", M, zs([4, 0])))
        out.append((f"Z+Z/{q}, 0", M, zs()))
    M = zm(2, [0, 3])
    out += [
        ("Z+Z/3, 9Z+Z/3", M, zs([9, 0], [0, 1])),
        ("Z+Z/3, 9Z+0", M, zs([9, 0])),
        ("Z+Z/3, <(3,1)>", M, zs([3, 1])),
    ]
    M = zm(2, [0, 2])
    out += [
        ("Z+Z/2, 4Z+Z/2", M, zs([4, 0], [0, 1])),
        ("Z+Z/2, 4Z+0", M, zs([4, 0])),
        ("Z+Z/2, 9Z+Z/2", M, zs([9, 0], [0, 1])),
    ]
    M = zm(2, [0, 9])
    out += [
        ("Z+Z/9, 4Z+Z/9", M, zs([4, 0], [0, 1])),
        ("Z+Z/9, 8Z+Z/9", M, zs([8, 0], [0, 1])),
    ]
    # torsion modules
    for n, divisors in [(12, (2, 3, 4, 6)), (8, (2, 4)), (9, (3,)), (16, (2, 4, 8)), (30, (2, 6, 10, 15))]:
        for d in divisors:
            out.append((f"Z/{n}, {d}Z/{n}", zm(1, [n]), zs([d])))
        out.append((f"Z/{n}, 0", zm(1, [n]), zs()))
    for name, rels, gens in [
        ("Z/2+Z/2, 0", [[2, 0], [0, 2]], []),
        ("Z/2+Z/2, line", [[2, 0], [0, 2]], [[1, 1]]),
        ("Z/2+Z/4, 0", [[2, 0], [0, 4]], []),
        ("Z/2+Z/4, <(0,2)>", [[2, 0], [0, 4]], [[0, 2]]),
        ("Z/2+Z/4, <(1,0)>", [[2, 0], [0, 4]], [[1, 0]]),
        ("Z/2+Z/4, <(1,2)>", [[2, 0], [0, 4]], [[1, 2]]),
        ("Z/3+Z/9, <(0,3)>", [[3, 0], [0, 9]], [[0, 3]]),
        ("Z/3+Z/9, <(1,0)>", [[3, 0], [0, 9]], [[1, 0]]),
        ("Z/4+Z/4, <(2,0),(0,2)>", [[4, 0], [0, 4]], [[2, 0], [0, 2]]),
        ("Z/4+Z/4, <(1,0)>", [[4, 0], [0, 4]], [[1, 0]]),
        ("Z/6+Z/6, <(1,0)>", [[6, 0], [0, 6]], [[1, 0]]),
        ("Z^2/<(2,0),(1,3)>, 0", [[2, 0], [1, 3]], []),
    ]:
        out.append((name, zm(2, *rels), zs(*gens)))
    return out


def ztorsion_free() -> list[tuple[str, dict]]:
    def zm(rank, *relations):
        return {"rank": rank, "relations": [list(r) for r in relations]}

    return [("Z", zm(1)), ("Z^2", zm(2)), ("Z^3", zm(3)),
            ("Z^3/<(1,1,1)>", zm(3, [1, 1, 1])), ("Z^2/<(1,2)>", zm(2, [1, 2]))]


def generate_corpus(seed: int = 42, caps: Caps | None = None, random_count: int = 24) -> list[Instance]:
    """Curated plus seeded random instances, identical for identical arguments."""
    caps = caps or Caps.from_env()
    rng = random.Random(seed)
    out = []
    for name, ring, module in curated_finite() + _random_finite(rng, caps, random_count):
        inst = Instance("finite", {"ring": ring, "module": module}, name)
        try:
            inst.module(caps)
        except CapExceeded:
            continue
        out.append(inst)
    for name, zmodule, zsub in zcases():
        out.append(Instance("zlattice", {"zmodule": zmodule, "zsub": zsub}, name))
    for name, zmodule in ztorsion_free():
        out.append(Instance("zlattice", {"zmodule": zmodule}, name))
    return out
