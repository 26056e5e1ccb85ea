"""Submodule property checkers over the finite backend.

Each predicate takes a module ``M`` and (where relevant) a proper submodule
``N`` and returns a :class:`PropertyVerdict`.  Where a characterization gives a
faster route than the definition, both exist; with ``CROSS_CHECK`` enabled
(the test suite turns it on) the definitional route runs alongside the fast
one and the two verdicts are asserted equal.

Witnesses in false verdicts are the first offending tuple in canonical
lattice order.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from . import _bits
from .errors import PreconditionError
from .finmod import (
    ModuleTable,
    Submodule,
    colon_ideal,
    colon_into_module,
    ideal_times,
    localize,
)
from .finring import IdealSet, is_prime_ideal, maximal_ideals, radical_ideal

CROSS_CHECK = os.environ.get("SMLAB_CROSSCHECK", "") not in ("", "0")


@dataclass(frozen=True)
class PropertyVerdict:
    name: str
    verdict: bool
    witness: dict[str, Any] | None = None
    path: str = "definition"
    data: dict[str, Any] = field(default_factory=dict)

    def __bool__(self):
        return self.verdict

    def to_json(self) -> dict:
        out = {"property": self.name, "verdict": self.verdict, "path": self.path}
        if self.witness is not None:
            out["witness"] = _jsonify(self.witness)
        if self.data:
            out["data"] = _jsonify(self.data)
        return out


def _jsonify(value):
    if isinstance(value, (Submodule, IdealSet)):
        return value.to_json()
    if isinstance(value, dict):
        return {k: _jsonify(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonify(v) for v in value]
    if isinstance(value, np.integer):
        return int(value)
    return value


def _check(M: ModuleTable, N: Submodule) -> None:
    if N.module is not M:
        raise PreconditionError("submodule does not belong to the module")
    if not N.is_proper:
        raise PreconditionError("N = M: predicates need a proper submodule")


def _above(M: ModuleTable, N: Submodule) -> list[int]:
    n = N.bits
    return [b for b in M.lattice.bits if b != n and n & ~b == 0]


def _minimal(bits: list[int]) -> list[int]:
    return [a for a in bits if not any(b != a and b & ~a == 0 for b in bits)]


# -- irreducibility -------------------------------------------------------

def is_irreducible(M: ModuleTable, N: Submodule) -> PropertyVerdict:
    """N is not the intersection of two submodules properly containing it."""
    _check(M, N)
    above = _above(M, N)
    covers = _minimal(above)
    fast = len(covers) == 1
    witness = None
    for i, a in enumerate(above):
        for b in above[i:]:
            if a & b == N.bits:
                witness = {"K": M.sub(a), "L": M.sub(b)}
                break
        if witness:
            break
    assert fast == (witness is None), "unique-upper-cover test disagrees with pair scan"
    return PropertyVerdict("irreducible", fast, witness, "definition",
                           {"upper_covers": [M.sub(c) for c in covers]})


def _si_scan(N: Submodule, candidates: list[int]) -> tuple[int, int] | None:
    n = N.bits
    outside = [b for b in candidates if b & ~n]
    for i, a in enumerate(outside):
        for b in outside[i:]:
            if (a & b) & ~n == 0:
                return a, b
    return None


def is_strongly_irreducible_exhaustive(M: ModuleTable, N: Submodule) -> PropertyVerdict:
    _check(M, N)
    pair = _si_scan(N, M.lattice.bits)
    witness = None if pair is None else {"K": M.sub(pair[0]), "L": M.sub(pair[1])}
    return PropertyVerdict("strongly_irreducible", pair is None, witness, "definition")


def is_strongly_irreducible_cyclic(M: ModuleTable, N: Submodule) -> PropertyVerdict:
    """Scan pairs of cyclic submodules only; enough by the cyclic-pair criterion."""
    _check(M, N)
    lat = M.lattice
    pair = _si_scan(N, [s.bits for s in lat.cyclic])
    witness = None
    if pair is not None:
        witness = {"K": M.sub(pair[0]), "L": M.sub(pair[1]),
                   "x": lat.generators[pair[0]], "y": lat.generators[pair[1]]}
    return PropertyVerdict("strongly_irreducible", pair is None, witness, "fast")


def is_strongly_irreducible(M: ModuleTable, N: Submodule) -> PropertyVerdict:
    fast = is_strongly_irreducible_cyclic(M, N)
    if CROSS_CHECK:
        slow = is_strongly_irreducible_exhaustive(M, N)
        assert slow.verdict == fast.verdict, "cyclic and exhaustive strong irreducibility disagree"
    return fast


# -- prime / primary / primal ---------------------------------------------

def _kills_table(M: ModuleTable, N: Submodule) -> np.ndarray:
    """Entry (r, x) is True iff r x lies in N."""
    return N.members[M.act]


def is_prime_submodule(M: ModuleTable, N: Submodule) -> PropertyVerdict:
    _check(M, N)
    lands = _kills_table(M, N)
    outside = ~N.members
    colon = lands.all(axis=1)
    bad = lands & outside[None, :] & ~colon[:, None]
    if bad.any():
        r, x = np.argwhere(bad)[0]
        return PropertyVerdict("prime", False, {"r": int(r), "x": int(x)})
    return PropertyVerdict("prime", True, data={"colon": IdealSet(M.ring, _bits.from_mask(colon))})


def is_primary_submodule(M: ModuleTable, N: Submodule) -> PropertyVerdict:
    _check(M, N)
    colon = colon_ideal(N, M.whole)
    rad = radical_ideal(M.ring, colon)
    lands = _kills_table(M, N)
    bad = lands & ~N.members[None, :] & ~rad.members[:, None]
    if bad.any():
        r, x = np.argwhere(bad)[0]
        return PropertyVerdict("primary", False, {"r": int(r), "x": int(x)})
    assert is_prime_ideal(rad), "radical of a primary submodule's colon is not prime"
    return PropertyVerdict("primary", True, data={"prime": rad})


def zero_divisors(M: ModuleTable, N: Submodule) -> np.ndarray:
    """Mask of Z_R(M/N) = {r : r x in N for some x outside N}."""
    return (_kills_table(M, N) & ~N.members[None, :]).any(axis=1)


def is_primal(M: ModuleTable, N: Submodule) -> PropertyVerdict:
    _check(M, N)
    r = M.ring
    zd = zero_divisors(M, N)
    idx = np.flatnonzero(zd)
    sums = ~zd[r.add[np.ix_(idx, idx)]]
    if sums.any():
        i, j = np.argwhere(sums)[0]
        return PropertyVerdict("primal", False, {"a": int(idx[i]), "b": int(idx[j]), "reason": "a+b not a zero-divisor"})
    prods = ~zd[r.mul[:, idx]]
    if prods.any():
        c, i = np.argwhere(prods)[0]
        return PropertyVerdict("primal", False, {"a": int(idx[i]), "c": int(c), "reason": "c*a not a zero-divisor"})
    adjoint = IdealSet(r, _bits.from_mask(zd))
    if not (adjoint.is_proper and is_prime_ideal(adjoint)):
        raise AssertionError(f"zero-divisor ideal {adjoint} of M/N is not prime")
    return PropertyVerdict("primal", True, data={"adjoint_prime": adjoint})


# -- shelters and distributivity ------------------------------------------

def is_sheltered(M: ModuleTable, N: Submodule) -> PropertyVerdict:
    _check(M, N)
    above = _above(M, N)
    meet = M.whole.bits
    for b in above:
        meet &= b
    if meet != N.bits:
        return PropertyVerdict("sheltered", True, data={"shelter": M.sub(meet)})
    covers = _minimal(above)
    return PropertyVerdict("sheltered", False, {"minimal_over": [M.sub(c) for c in covers[:2]]})


def _distributive_i(M: ModuleTable, n: int) -> tuple[int, int] | None:
    lat = M.lattice
    bits = lat.bits
    for i, k in enumerate(bits):
        for l in bits[i:]:
            if lat.join(k, l) & n != lat.join(k & n, l & n):
                return k, l
    return None


def _distributive_ii(M: ModuleTable, n: int) -> tuple[int, int] | None:
    lat = M.lattice
    bits = lat.bits
    for i, k in enumerate(bits):
        for l in bits[i:]:
            if lat.join(k & l, n) != lat.join(k, n) & lat.join(l, n):
                return k, l
    return None


def is_distributive_submodule(M: ModuleTable, N: Submodule) -> PropertyVerdict:
    """Both lattice conditions are checked; in a modular lattice they agree."""
    if N.module is not M:
        raise PreconditionError("submodule does not belong to the module")
    first = _distributive_i(M, N.bits)
    second = _distributive_ii(M, N.bits)
    assert (first is None) == (second is None), "distributivity conditions (i) and (ii) disagree"
    witness = None
    if first is not None:
        witness = {"K": M.sub(first[0]), "L": M.sub(first[1]), "N": N}
    return PropertyVerdict("distributive_submodule", first is None, witness)


def is_distributive_module(M: ModuleTable) -> PropertyVerdict:
    for s in M.lattice:
        v = is_distributive_submodule(M, s)
        if not v:
            return PropertyVerdict("distributive_module", False, v.witness)
    return PropertyVerdict("distributive_module", True)


# -- uniserial / arithmetical / multiplication -----------------------------

def _incomparable_pair(M: ModuleTable) -> tuple[int, int] | None:
    bits = M.lattice.bits
    for i, a in enumerate(bits):
        for b in bits[i + 1:]:
            if a & ~b and b & ~a:
                return a, b
    return None


def is_uniserial(M: ModuleTable) -> PropertyVerdict:
    pair = _incomparable_pair(M)
    if pair is None:
        return PropertyVerdict("uniserial", True)
    return PropertyVerdict("uniserial", False, {"K": M.sub(pair[0]), "L": M.sub(pair[1])})


def is_arithmetical(M: ModuleTable) -> PropertyVerdict:
    """Every localization at a maximal ideal has a totally ordered lattice."""
    for w in maximal_ideals(M.ring):
        loc = localize(M, w.ideal)
        pair = _incomparable_pair(loc.module)
        if pair is not None:
            return PropertyVerdict(
                "arithmetical", False,
                {"maximal_ideal": w.ideal, "K_local": loc.module.sub(pair[0]).to_json(),
                 "L_local": loc.module.sub(pair[1]).to_json()})
    return PropertyVerdict("arithmetical", True)


def is_multiplication_submodule(M: ModuleTable, U: Submodule) -> PropertyVerdict:
    """U, viewed as a module, satisfies K = (K :_R U) U for each submodule K of U."""
    for s in M.lattice:
        if s <= U and ideal_times(colon_ideal(s, U), U).bits != s.bits:
            return PropertyVerdict("multiplication", False, {"K": s, "U": U})
    return PropertyVerdict("multiplication", True)


def is_multiplication_module(M: ModuleTable) -> PropertyVerdict:
    v = is_multiplication_submodule(M, M.whole)
    return PropertyVerdict("multiplication_module", v.verdict, None if v.verdict else {"K": v.witness["K"]})


def all_submodules_multiplication(M: ModuleTable) -> PropertyVerdict:
    for u in M.lattice:
        v = is_multiplication_submodule(M, u)
        if not v:
            return PropertyVerdict("submodules_multiplication", False, v.witness)
    return PropertyVerdict("submodules_multiplication", True)


# -- radical and colon identities -----------------------------------------

def prime_submodules(M: ModuleTable) -> list[Submodule]:
    return [s for s in M.lattice if s.is_proper and is_prime_submodule(M, s).verdict]


def radical_submodule(M: ModuleTable, N: Submodule) -> Submodule:
    """Intersection of the prime submodules containing N (M if there are none)."""
    bits = M.whole.bits
    for p in prime_submodules(M):
        if N <= p:
            bits &= p.bits
    return M.sub(bits)


def _ideal_sum_memo(M: ModuleTable):
    add, size, cache = M.ring.add, M.ring.size, {}

    def isum(a: int, b: int) -> int:
        if a & ~b == 0:
            return b
        if b & ~a == 0:
            return a
        key = (a, b) if a < b else (b, a)
        out = cache.get(key)
        if out is None:
            ia, ib = _bits.to_indices(a, size), _bits.to_indices(b, size)
            out = cache[key] = _bits.from_indices(add[np.ix_(ia, ib)].ravel(), size)
        return out

    return isum


def colon_identity_iii(M: ModuleTable) -> PropertyVerdict:
    """(K+L) :_R N = (K :_R N) + (L :_R N) for all K, L, N."""
    lat = M.lattice
    colon, bits, isum = lat.colon_matrix, lat.bits, _ideal_sum_memo(M)
    index = lat.index
    for i, k in enumerate(bits):
        for j in range(i, len(bits)):
            kl = index[lat.join(k, bits[j])]
            for n in range(len(bits)):
                if colon[kl][n] != isum(colon[i][n], colon[j][n]):
                    return PropertyVerdict("colon_identity_iii", False,
                                           {"K": M.sub(k), "L": M.sub(bits[j]), "N": M.sub(bits[n])})
    return PropertyVerdict("colon_identity_iii", True)


def colon_identity_iv(M: ModuleTable) -> PropertyVerdict:
    """K :_R (L ∩ N) = (K :_R L) + (K :_R N) for all K, L, N."""
    lat = M.lattice
    colon, bits, isum = lat.colon_matrix, lat.bits, _ideal_sum_memo(M)
    index = lat.index
    for k in range(len(bits)):
        row = colon[k]
        for j, l in enumerate(bits):
            for n in range(j, len(bits)):
                if row[index[l & bits[n]]] != isum(row[j], row[n]):
                    return PropertyVerdict("colon_identity_iv", False,
                                           {"K": M.sub(bits[k]), "L": M.sub(l), "N": M.sub(bits[n])})
    return PropertyVerdict("colon_identity_iv", True)


def colon_identities(M: ModuleTable) -> PropertyVerdict:
    third, fourth = colon_identity_iii(M), colon_identity_iv(M)
    witness = None
    if not (third and fourth):
        witness = {"iii": third.witness, "iv": fourth.witness}
    return PropertyVerdict("colon_identities", third.verdict and fourth.verdict, witness,
                           data={"iii": third.verdict, "iv": fourth.verdict})


# -- helpers used by the law harness --------------------------------------

def colon_of(M: ModuleTable, N: Submodule) -> IdealSet:
    return colon_ideal(N, M.whole)


def socle_over(N: Submodule, ideal: IdealSet) -> Submodule:
    """N :_M ideal."""
    return colon_into_module(N, ideal)


PROPERTIES = {
    "irreducible": is_irreducible,
    "strongly_irreducible": is_strongly_irreducible,
    "prime": is_prime_submodule,
    "primary": is_primary_submodule,
    "primal": is_primal,
    "sheltered": is_sheltered,
    "distributive_submodule": is_distributive_submodule,
}

MODULE_PROPERTIES = {
    "uniserial": is_uniserial,
    "arithmetical": is_arithmetical,
    "distributive_module": is_distributive_module,
    "multiplication_module": is_multiplication_module,
    "colon_identities": colon_identities,
}
