"""Finitely generated abelian groups Z^k / R and their submodules.

A submodule N of M = Z^k / R is stored as its preimage in Z^k, a lattice
containing R, in the canonical echelon form of :mod:`.normalform`.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from math import gcd
from typing import NamedTuple, Sequence

import numpy as np

from ..errors import CONSTRUCTION_CAP, CapExceeded, PreconditionError
from ..finmod import ModuleTable, mod_from_tables
from ..finring import ring_zmod
from .normalform import Matrix, hnf, mat_vec, reduce, snf, solve


class Invariants(NamedTuple):
    free_rank: int
    factors: tuple[int, ...]  # d_1 | d_2 | ..., units dropped

    @property
    def exponent(self) -> int:
        """Generator of the annihilator: 0 with a free part, else the last factor (1 if trivial)."""
        if self.free_rank:
            return 0
        return self.factors[-1] if self.factors else 1

    @property
    def torsion_exponent(self) -> int:
        return self.factors[-1] if self.factors else 1

    @property
    def order(self) -> int | None:
        if self.free_rank:
            return None
        out = 1
        for d in self.factors:
            out *= d
        return out


def _invariants(gens: Matrix, k: int) -> Invariants:
    diag, _, _ = snf(gens, k)
    return Invariants(k - len(diag), tuple(d for d in diag if d != 1))


@dataclass(frozen=True)
class ZModule:
    rank: int
    relations: Matrix

    def __post_init__(self):
        if self.rank < 1:
            raise PreconditionError("ambient rank must be at least 1")

    @cached_property
    def invariants(self) -> Invariants:
        return _invariants(self.relations, self.rank)

    @cached_property
    def _smith(self):
        return snf(self.relations, self.rank)

    @property
    def is_torsion(self) -> bool:
        return self.invariants.free_rank == 0

    @cached_property
    def whole(self) -> "ZSubmodule":
        return ZSubmodule(self, hnf([[int(i == j) for j in range(self.rank)] for i in range(self.rank)], self.rank))

    @cached_property
    def zero(self) -> "ZSubmodule":
        return ZSubmodule(self, self.relations)

    def to_json(self) -> dict:
        return {"rank": self.rank, "relations": [list(r) for r in self.relations]}

    def __repr__(self):
        inv = self.invariants
        parts = ["Z"] * inv.free_rank + [f"Z/{d}" for d in inv.factors]
        return f"ZModule({' + '.join(parts) or '0'})"


def zmodule(rank: int, relations: Sequence[Sequence[int]] = ()) -> ZModule:
    return ZModule(rank, hnf(relations, rank))


@dataclass(frozen=True)
class ZSubmodule:
    parent: ZModule
    gens: Matrix

    @property
    def rank(self) -> int:
        return self.parent.rank

    @property
    def is_proper(self) -> bool:
        return self.gens != self.parent.whole.gens

    def __contains__(self, x) -> bool:
        return not any(reduce(self.gens, x))

    def __le__(self, other: "ZSubmodule") -> bool:
        return all(g in other for g in self.gens)

    def __lt__(self, other: "ZSubmodule") -> bool:
        return self <= other and self != other

    def to_json(self) -> dict:
        return {"gens": [list(g) for g in self.gens]}

    def __repr__(self):
        return f"ZSubmodule({[list(g) for g in self.gens]})"


def z_canonicalize(gens: Sequence[Sequence[int]], k: int | None = None) -> Matrix:
    if k is None:
        if not gens:
            raise PreconditionError("cannot infer the rank of an empty generator list")
        k = len(gens[0])
    return hnf(gens, k)


def z_submodule(m: ZModule, gens: Sequence[Sequence[int]]) -> ZSubmodule:
    for g in gens:
        if len(g) != m.rank:
            raise PreconditionError(f"generator {list(g)} has the wrong length for rank {m.rank}")
    return ZSubmodule(m, hnf(list(gens) + list(m.relations), m.rank))


def z_span(m: ZModule, x: Sequence[int]) -> ZSubmodule:
    return z_submodule(m, [x])


def _same(a: ZSubmodule, b: ZSubmodule) -> ZModule:
    if a.parent.rank != b.parent.rank or a.parent.relations != b.parent.relations:
        raise PreconditionError("submodules of different modules")
    return a.parent


def z_membership(n: ZSubmodule, x: Sequence[int]) -> bool:
    if len(x) != n.rank:
        raise PreconditionError("rank mismatch")
    return x in n


def z_sum(a: ZSubmodule, b: ZSubmodule) -> ZSubmodule:
    m = _same(a, b)
    return ZSubmodule(m, hnf(a.gens + b.gens, m.rank))


def lattice_meet(a: Matrix, b: Matrix, k: int) -> Matrix:
    """Intersection of two lattices in Z^k from stacked rows [a | a] and [b | 0]."""
    rows = [list(g) + list(g) for g in a] + [list(g) + [0] * k for g in b]
    h = hnf(rows, 2 * k)
    return hnf([r[k:] for r in h if not any(r[:k])], k)


def z_intersect(a: ZSubmodule, b: ZSubmodule) -> ZSubmodule:
    m = _same(a, b)
    return ZSubmodule(m, lattice_meet(a.gens, b.gens, m.rank))


def z_scale(n: ZSubmodule, c: int) -> ZSubmodule:
    """c N + R."""
    m = n.parent
    return ZSubmodule(m, hnf([[c * a for a in g] for g in n.gens] + list(m.relations), m.rank))


def z_quotient_invariants(m: ZModule, n: ZSubmodule) -> Invariants:
    if n.parent is not m and n.parent != m:
        raise PreconditionError("submodule does not belong to the module")
    return _invariants(n.gens, m.rank)


def z_relative_invariants(big: Matrix, small: Matrix, k: int) -> Invariants:
    """Invariants of big/small for lattices small ⊆ big in Z^k."""
    coords = []
    for g in small:
        c = solve(big, g)
        if c is None:
            raise PreconditionError("lattice is not contained in the larger one")
        coords.append(c)
    return _invariants(tuple(tuple(c) for c in coords), len(big)) if big else Invariants(0, ())


def z_colon(n: ZSubmodule, m: ZModule) -> int:
    """Nonnegative generator of (N :_Z M)."""
    return z_quotient_invariants(m, n).exponent


def z_ann(m: ZModule) -> int:
    return m.invariants.exponent


def prime_factors(e: int) -> list[int]:
    e = abs(e)
    out, p = [], 2
    while p * p <= e:
        if e % p == 0:
            out.append(p)
            while e % p == 0:
                e //= p
        p += 1
    if e > 1:
        out.append(e)
    return out


def is_prime(p: int) -> bool:
    return p >= 2 and prime_factors(p) == [p]


def z_radical(e: int) -> int:
    """Square-free kernel; the radical of (0) is (0)."""
    if e == 0:
        return 0
    out = 1
    for p in prime_factors(e):
        out *= p
    return out


def valuation(e: int, p: int) -> int:
    v = 0
    while e and e % p == 0:
        e //= p
        v += 1
    return v


def _check_proper(m: ZModule, n: ZSubmodule) -> None:
    if not n.is_proper:
        raise PreconditionError("N = M: a proper submodule is required")


def z_is_primary(m: ZModule, n: ZSubmodule) -> tuple[bool, int]:
    """(verdict, p): p = 0 for a torsion-free quotient, the prime for a p-group."""
    _check_proper(m, n)
    inv = z_quotient_invariants(m, n)
    if not inv.factors:
        return True, 0
    if inv.free_rank:
        return False, 0
    primes = prime_factors(inv.factors[-1])
    if len(primes) == 1:
        return True, primes[0]
    return False, 0


def z_is_prime_submodule(m: ZModule, n: ZSubmodule) -> bool:
    _check_proper(m, n)
    inv = z_quotient_invariants(m, n)
    if not inv.factors:
        return True
    return inv.free_rank == 0 and len(set(inv.factors)) == 1 and is_prime(inv.factors[0])


def z_arithmetical_at(m: ZModule, p: int) -> bool:
    if not is_prime(p):
        raise PreconditionError(f"{p} is not prime")
    inv = m.invariants
    return inv.free_rank + sum(1 for d in inv.factors if d % p == 0) <= 1


def z_is_multiplication(m: ZModule) -> bool:
    """Over the integers a finitely generated module is multiplication iff cyclic."""
    inv = m.invariants
    return inv.free_rank + len(inv.factors) <= 1


def z_symbolic_power(m: ZModule, p: int, n: int) -> ZSubmodule:
    """(pM)^(n): elements x with s x in p^n M for some s prime to p."""
    if not is_prime(p):
        raise PreconditionError(f"{p} is not prime")
    if n < 1:
        raise PreconditionError("exponent must be at least 1")
    if not p_multiple_is_proper(m, p):
        raise PreconditionError("pM = M: the saturating set is undefined")
    power = z_scale(m.whole, p ** n)
    e = z_quotient_invariants(m, power).exponent
    s = e
    while s % p == 0:
        s //= p
    if s == 1:
        return power
    meet = lattice_meet(power.gens, hnf([[s * int(i == j) for j in range(m.rank)] for i in range(m.rank)], m.rank), m.rank)
    return ZSubmodule(m, hnf([[a // s for a in g] for g in meet], m.rank))


def p_multiple_is_proper(m: ZModule, p: int) -> bool:
    """True iff pM != M."""
    inv = m.invariants
    return inv.free_rank > 0 or any(d % p == 0 for d in inv.factors)


def z_regular_element_in(e: int, m: ZModule) -> bool:
    """Does the ideal (e) contain a non-zerodivisor on M?"""
    return e != 0 and gcd(e, m.invariants.torsion_exponent) == 1


def z_localized_invariants(m: ZModule, p: int) -> Invariants:
    """Invariants of M_(p): only the p-parts of the torsion survive."""
    factors = []
    for d in m.invariants.factors:
        q = p ** valuation(d, p)
        if q > 1:
            factors.append(q)
    return Invariants(m.invariants.free_rank, tuple(sorted(factors)))


# -- bridge to the finite backend ----------------------------------------

@dataclass(frozen=True)
class FiniteCoordinates:
    """Encoding of M = Z^k/R (torsion) as element indices of a table module."""
    module: ZModule
    factors: tuple[int, ...]
    positions: tuple[int, ...]   # coordinates of y = x V carrying the factors
    v: tuple[tuple[int, ...], ...]
    vinv: tuple[tuple[int, ...], ...]

    @property
    def size(self) -> int:
        out = 1
        for d in self.factors:
            out *= d
        return out

    def encode(self, x: Sequence[int]) -> int:
        y = mat_vec(x, self.v)
        idx, scale = 0, 1
        for d, pos in zip(self.factors, self.positions):
            idx += (y[pos] % d) * scale
            scale *= d
        return idx

    def digits(self, idx: int) -> list[int]:
        out = []
        for d in self.factors:
            out.append(idx % d)
            idx //= d
        return out

    def decode(self, idx: int) -> tuple[int, ...]:
        y = [0] * self.module.rank
        for a, pos in zip(self.digits(idx), self.positions):
            y[pos] = a
        return tuple(mat_vec(y, self.vinv))


def z_finite_coordinates(m: ZModule) -> FiniteCoordinates:
    if not m.is_torsion:
        raise PreconditionError("module has a free part; it is not finite")
    diag, v, vinv = m._smith
    positions = tuple(i for i, d in enumerate(diag) if d != 1)
    factors = tuple(diag[i] for i in positions)
    return FiniteCoordinates(m, factors, positions, tuple(map(tuple, v)), tuple(map(tuple, vinv)))


def z_to_finite(m: ZModule) -> ModuleTable:
    """The torsion module M as a table module over Z/e, e its exponent."""
    coords = z_finite_coordinates(m)
    size = coords.size
    if size > CONSTRUCTION_CAP:
        raise CapExceeded(f"|M| = {size} exceeds {CONSTRUCTION_CAP}")
    e = m.invariants.exponent
    ring = ring_zmod(e) if e >= 2 else ring_zmod(2)
    digits = np.array([coords.digits(i) for i in range(size)], dtype=np.int64).reshape(size, len(coords.factors))
    mods = np.array(coords.factors, dtype=np.int64)
    weights = np.cumprod(np.concatenate([[1], mods[:-1]])).astype(np.int64) if len(mods) else np.zeros(0, np.int64)

    def index(d):
        return (d % mods) @ weights if len(mods) else np.zeros(d.shape[:-1], np.int64)

    add = index(digits[:, None, :] + digits[None, :, :])
    scalars = np.arange(ring.size, dtype=np.int64)
    act = index(scalars[:, None, None] * digits[None, :, :])
    label = {"kind": "zmodule", **m.to_json()}
    names = [str(tuple(coords.decode(i))) for i in range(size)]
    return mod_from_tables(ring, add.astype(np.int64), act.astype(np.int64), 0, label, names)
