"""Finite commutative rings given by explicit addition and multiplication tables.

Element encodings are fixed per constructor so that reports are bit-stable:

* ``ring_zmod(n)``: element ``i`` is the residue ``i``.
* ``ring_polyquot(p, f)``: the coefficient vector ``(c_0, ..., c_{d-1})`` of a
  polynomial of degree < d is stored at index ``sum(c_i * p**i)``.
* ``ring_truncpoly(p, k, d)``: same little-endian base-p encoding, with the
  coordinates being the monomials of total degree < d in graded-lex order
  (``1, x1, ..., xk, x1^2, x1 x2, ...``).
* ``ring_product(a, b)``: the pair ``(x, y)`` is stored at ``x * |b| + y``.
* ``ring_quotient(r, i)``: cosets are numbered by their sorted minimal
  representatives.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import NamedTuple, Sequence

import numpy as np

from . import _bits
from .errors import CONSTRUCTION_CAP, IDEAL_LATTICE_CAP, CapExceeded, PreconditionError


@dataclass(frozen=True, eq=False)
class RingTable:
    size: int
    add: np.ndarray
    mul: np.ndarray
    zero: int
    one: int
    label: dict
    names: tuple[str, ...] = field(default=(), repr=False)

    def __post_init__(self):
        if self.size < 2:
            raise PreconditionError("rings must have non-zero identity (size >= 2)")
        if self.size > CONSTRUCTION_CAP:
            raise CapExceeded(f"ring of size {self.size} exceeds {CONSTRUCTION_CAP}")
        for table in (self.add, self.mul):
            table.flags.writeable = False

    def __repr__(self):
        return f"RingTable({self.label!r}, size={self.size})"

    @cached_property
    def neg(self) -> np.ndarray:
        rows, cols = np.nonzero(self.add == self.zero)
        out = np.empty(self.size, dtype=np.int64)
        out[rows] = cols
        return out

    @cached_property
    def elements(self) -> np.ndarray:
        return np.arange(self.size)

    @cached_property
    def units(self) -> np.ndarray:
        return np.flatnonzero((self.mul == self.one).any(axis=1))

    def name(self, x: int) -> str:
        return self.names[x] if self.names else str(x)

    @cached_property
    def whole(self) -> "IdealSet":
        return IdealSet(self, (1 << self.size) - 1)

    @cached_property
    def zero_ideal(self) -> "IdealSet":
        return IdealSet(self, 1 << self.zero)

    @cached_property
    def ideal_lattice(self) -> tuple["IdealSet", ...]:
        from .finmod import enumerate_submodules, mod_regular

        return tuple(IdealSet(self, s.bits) for s in enumerate_submodules(mod_regular(self)).all)

    @cached_property
    def maximal(self) -> tuple["IdealSet", ...]:
        proper = [i for i in self.ideal_lattice if i.is_proper]
        return tuple(i for i in proper if not any(i.bits != j.bits and i <= j for j in proper))


@dataclass(frozen=True, eq=False)
class IdealSet:
    ring: RingTable
    bits: int

    @property
    def members(self) -> np.ndarray:
        return _bits.to_mask(self.bits, self.ring.size)

    @property
    def elements(self) -> np.ndarray:
        return _bits.to_indices(self.bits, self.ring.size)

    def __contains__(self, x: int) -> bool:
        return bool(self.bits >> int(x) & 1)

    def __len__(self) -> int:
        return _bits.popcount(self.bits)

    def __le__(self, other: "IdealSet") -> bool:
        return _bits.subset(self.bits, other.bits)

    def __eq__(self, other):
        if not isinstance(other, IdealSet):
            return NotImplemented
        return self.ring is other.ring and self.bits == other.bits

    def __hash__(self):
        return hash((id(self.ring), self.bits))

    def __repr__(self):
        return f"IdealSet({[self.ring.name(x) for x in self.elements]})"

    @property
    def is_proper(self) -> bool:
        return self.ring.one not in self

    def to_json(self) -> list[int]:
        return [int(x) for x in self.elements]


@dataclass(frozen=True)
class PrimeWitness:
    ideal: IdealSet
    is_maximal: bool


class IdealOps(NamedTuple):
    sum: IdealSet
    product: IdealSet
    intersection: IdealSet
    colon: IdealSet


# -- constructors ---------------------------------------------------------

def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    return all(n % d for d in range(2, int(n ** 0.5) + 1))


def ring_zmod(n: int) -> RingTable:
    if n < 2:
        raise PreconditionError("Z/n needs n >= 2")
    if n > CONSTRUCTION_CAP:
        raise CapExceeded(f"Z/{n} exceeds construction cap")
    a = np.arange(n)
    return RingTable(
        size=n,
        add=(a[:, None] + a[None, :]) % n,
        mul=(a[:, None] * a[None, :]) % n,
        zero=0,
        one=1 % n,
        label={"kind": "zmod", "n": n},
        names=tuple(str(i) for i in range(n)),
    )


def _digits(q: int, p: int, d: int) -> np.ndarray:
    idx = np.arange(q)
    return np.stack([(idx // p ** i) % p for i in range(d)], axis=1)


def _poly_name(coeffs: Sequence[int], monomials: Sequence[str]) -> str:
    terms = []
    for c, mono in zip(coeffs, monomials):
        if c == 0:
            continue
        if mono == "1":
            terms.append(str(c))
        else:
            terms.append(mono if c == 1 else f"{c}{mono}")
    return "+".join(terms) if terms else "0"


def _tables_from_basis_action(p: int, digits: np.ndarray, basis_mats: np.ndarray):
    """Addition and multiplication tables of a ring that is F_p^d additively.

    ``basis_mats[i]`` acts on coordinate column vectors; multiplication by an
    element is the F_p-linear combination of these matrices.
    """
    q, d = digits.shape
    weights = p ** np.arange(d)
    # small exact integers: float matmul goes through BLAS
    fdigits = digits.astype(np.float64)
    reduce = np.arange(d * p * p + 2 * p) % p
    add = np.empty((q, q), dtype=np.int64)
    mul = np.empty((q, q), dtype=np.int64)
    for a in range(q):
        add[a] = reduce[digits[a] + digits] @ weights
        mat = reduce[np.tensordot(digits[a], basis_mats, axes=1)].astype(np.float64)
        mul[a] = reduce[(fdigits @ mat.T).astype(np.int64)] @ weights
    return add, mul


def ring_polyquot(p: int, modulus: Sequence[int]) -> RingTable:
    """F_p[x]/(f) with ``modulus`` the little-endian coefficients of monic f."""
    if not _is_prime(p):
        raise PreconditionError(f"{p} is not prime")
    f = [int(c) % p for c in modulus]
    while len(f) > 1 and f[-1] == 0:
        f.pop()
    d = len(f) - 1
    if d < 1 or f[-1] != 1:
        raise PreconditionError("modulus must be monic of degree >= 1")
    q = p ** d
    if q > CONSTRUCTION_CAP:
        raise CapExceeded(f"F_{p}[x]/(f) of size {q} exceeds construction cap")
    digits = _digits(q, p, d)

    # companion matrix: multiplication by x
    companion = np.zeros((d, d), dtype=np.int64)
    companion[1:, :-1] = np.eye(d - 1, dtype=np.int64)
    companion[:, -1] = [(-c) % p for c in f[:d]]
    mats = [np.eye(d, dtype=np.int64)]
    for _ in range(d - 1):
        mats.append(companion @ mats[-1] % p)

    add, mul = _tables_from_basis_action(p, digits, np.stack(mats))
    monos = ["1", "x"] + [f"x^{i}" for i in range(2, d)]
    return RingTable(
        size=q,
        add=add,
        mul=mul,
        zero=0,
        one=1,
        label={"kind": "gfpoly", "p": p, "modulus": f},
        names=tuple(_poly_name(row, monos[:d]) for row in digits),
    )


def _monomials(nvars: int, degree: int) -> list[tuple[int, ...]]:
    out = []
    for total in range(degree):
        layer = [e for e in itertools.product(range(total + 1), repeat=nvars) if sum(e) == total]
        out.extend(sorted(layer, reverse=True))
    return out


def ring_truncpoly(p: int, nvars: int, degree: int) -> RingTable:
    """F_p[x_1..x_k]/(x_1..x_k)^degree, e.g. ``ring_truncpoly(2, 2, 2)`` = F_2[x,y]/(x,y)^2."""
    if not _is_prime(p):
        raise PreconditionError(f"{p} is not prime")
    if nvars < 1 or degree < 1:
        raise PreconditionError("need nvars >= 1 and degree >= 1")
    monos = _monomials(nvars, degree)
    d = len(monos)
    q = p ** d
    if q > CONSTRUCTION_CAP:
        raise CapExceeded(f"truncated polynomial ring of size {q} exceeds construction cap")
    position = {m: i for i, m in enumerate(monos)}
    # mats[i][t, j] = 1 when monomial i times monomial j is monomial t
    mats = np.zeros((d, d, d), dtype=np.int64)
    for (i, a), (j, b) in itertools.product(enumerate(monos), repeat=2):
        t = tuple(x + y for x, y in zip(a, b))
        if t in position:
            mats[i, position[t], j] = 1
    digits = _digits(q, p, d)

    letters = "xyzw" if nvars <= 4 else None

    def mono_name(e):
        if sum(e) == 0:
            return "1"
        parts = []
        for v, k in enumerate(e):
            sym = letters[v] if letters else f"x{v + 1}"
            if k == 1:
                parts.append(sym)
            elif k > 1:
                parts.append(f"{sym}^{k}")
        return "".join(parts)

    add, mul = _tables_from_basis_action(p, digits, mats)
    names = [mono_name(m) for m in monos]
    return RingTable(
        size=q,
        add=add,
        mul=mul,
        zero=0,
        one=1,
        label={"kind": "truncpoly", "p": p, "nvars": nvars, "degree": degree},
        names=tuple(_poly_name(row, names) for row in digits),
    )


def ring_product(a: RingTable, b: RingTable) -> RingTable:
    q = a.size * b.size
    if q > CONSTRUCTION_CAP:
        raise CapExceeded(f"product of size {q} exceeds construction cap")
    n = b.size
    ia = np.arange(q) // n
    ib = np.arange(q) % n
    add = a.add[ia[:, None], ia[None, :]] * n + b.add[ib[:, None], ib[None, :]]
    mul = a.mul[ia[:, None], ia[None, :]] * n + b.mul[ib[:, None], ib[None, :]]
    factors = []
    for part in (a, b):
        if part.label.get("kind") == "product":
            factors.extend(part.label["factors"])
        else:
            factors.append(part.label)
    return RingTable(
        size=q,
        add=add,
        mul=mul,
        zero=a.zero * n + b.zero,
        one=a.one * n + b.one,
        label={"kind": "product", "factors": factors},
        names=tuple(f"({a.name(x)},{b.name(y)})" for x in range(a.size) for y in range(n)),
    )


def coset_projection(add: np.ndarray, sub_idx: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Map each element to the index of its coset; cosets sorted by minimal representative."""
    min_rep = add[:, sub_idx].min(axis=1)
    reps = np.unique(min_rep)
    return np.searchsorted(reps, min_rep), reps


def ring_quotient(r: RingTable, i: IdealSet) -> tuple[RingTable, np.ndarray]:
    if i.ring is not r:
        raise PreconditionError("ideal belongs to a different ring")
    if not i.is_proper:
        raise PreconditionError("cannot quotient by the whole ring")
    proj, reps = coset_projection(r.add, i.elements)
    ring = RingTable(
        size=len(reps),
        add=proj[r.add[np.ix_(reps, reps)]],
        mul=proj[r.mul[np.ix_(reps, reps)]],
        zero=int(proj[r.zero]),
        one=int(proj[r.one]),
        label={"kind": "quotient", "base": r.label, "ideal_gens": ideal_generators(i)},
        names=tuple(f"[{r.name(x)}]" for x in reps),
    )
    return ring, proj


def ring_validate(r: RingTable, *, seed: int = 0, samples: int = 100_000) -> None:
    """Raise AssertionError if the tables are not a commutative ring with identity."""
    q, add, mul = r.size, r.add, r.mul
    e = np.arange(q)
    assert add.shape == mul.shape == (q, q)
    assert ((add >= 0) & (add < q)).all() and ((mul >= 0) & (mul < q)).all()
    assert (add == add.T).all(), "addition not commutative"
    assert (mul == mul.T).all(), "multiplication not commutative"
    assert (add[r.zero] == e).all(), "zero is not an additive identity"
    assert (mul[r.one] == e).all(), "one is not a multiplicative identity"
    assert r.one != r.zero
    assert ((add == r.zero).sum(axis=1) == 1).all(), "missing additive inverses"
    if q <= 64:
        x, y, z = (g.ravel() for g in np.meshgrid(e, e, e, indexing="ij"))
    else:
        rng = np.random.default_rng(seed)
        x, y, z = rng.integers(0, q, size=(3, samples))
    assert (add[add[x, y], z] == add[x, add[y, z]]).all(), "addition not associative"
    assert (mul[mul[x, y], z] == mul[x, mul[y, z]]).all(), "multiplication not associative"
    assert (mul[x, add[y, z]] == add[mul[x, y], mul[x, z]]).all(), "not distributive"


# -- ideals ---------------------------------------------------------------

def _subgroup_sum(add: np.ndarray, a_idx: np.ndarray, b_idx: np.ndarray) -> int:
    return _bits.from_indices(add[np.ix_(a_idx, b_idx)].ravel(), add.shape[0])


def principal_ideal(r: RingTable, g: int) -> IdealSet:
    return IdealSet(r, _bits.from_indices(r.mul[:, g], r.size))


def ideal_generated(r: RingTable, gens: Sequence[int]) -> IdealSet:
    bits = 1 << r.zero
    for g in gens:
        g = int(g)
        if not 0 <= g < r.size:
            raise PreconditionError(f"element {g} out of range for ring of size {r.size}")
        if bits >> g & 1:
            continue
        cyc = principal_ideal(r, g)
        bits = _subgroup_sum(r.add, _bits.to_indices(bits, r.size), cyc.elements)
    return IdealSet(r, bits)


def ideal_generators(i: IdealSet) -> list[int]:
    """A short generating list, chosen greedily in index order."""
    gens, current = [], i.ring.zero_ideal
    for x in i.elements:
        if int(x) not in current:
            gens.append(int(x))
            current = ideal_generated(i.ring, gens)
        if current.bits == i.bits:
            break
    return gens


def _same_ring(i: IdealSet, j: IdealSet) -> RingTable:
    if i.ring is not j.ring:
        raise PreconditionError("ideals belong to different rings")
    return i.ring


def ideal_sum(i: IdealSet, j: IdealSet) -> IdealSet:
    r = _same_ring(i, j)
    if i <= j:
        return j
    if j <= i:
        return i
    return IdealSet(r, _subgroup_sum(r.add, i.elements, j.elements))


def ideal_intersection(i: IdealSet, j: IdealSet) -> IdealSet:
    return IdealSet(_same_ring(i, j), i.bits & j.bits)


def ideal_product(i: IdealSet, j: IdealSet) -> IdealSet:
    r = _same_ring(i, j)
    return ideal_generated(r, np.unique(r.mul[np.ix_(i.elements, j.elements)]))


def ideal_colon(i: IdealSet, j: IdealSet) -> IdealSet:
    """(i : j) = {r : r j contained in i}."""
    r = _same_ring(i, j)
    ok = i.members[r.mul[:, j.elements]].all(axis=1)
    return IdealSet(r, _bits.from_mask(ok))


def ideal_ops(i: IdealSet, j: IdealSet) -> IdealOps:
    return IdealOps(ideal_sum(i, j), ideal_product(i, j), ideal_intersection(i, j), ideal_colon(i, j))


def ideal_power(i: IdealSet, n: int) -> IdealSet:
    out = i.ring.whole
    for _ in range(n):
        out = ideal_product(out, i)
    return out


def radical_ideal(r: RingTable, i: IdealSet) -> IdealSet:
    """{x : x^t in i for some t}; the power sequence of each x cycles within q steps."""
    if i.ring is not r:
        raise PreconditionError("ideal belongs to a different ring")
    inside = i.members
    power = r.elements.copy()
    hit = inside[power].copy()
    for _ in range(r.size):
        power = r.mul[power, r.elements]
        hit |= inside[power]
    return IdealSet(r, _bits.from_mask(hit))


def is_prime_ideal(i: IdealSet) -> bool:
    if not i.is_proper:
        raise PreconditionError("primality is only defined for proper ideals")
    inside = i.members
    r = i.ring
    outside = np.flatnonzero(~inside)
    return not inside[r.mul[np.ix_(outside, outside)]].any()


def enumerate_ideals(r: RingTable) -> list[IdealSet]:
    """All ideals in canonical order, via the submodule lattice of R over itself."""
    if r.size > IDEAL_LATTICE_CAP:
        raise CapExceeded(f"ideal lattice of ring of size {r.size} exceeds {IDEAL_LATTICE_CAP}")
    return list(r.ideal_lattice)


def prime_ideals(r: RingTable) -> list[PrimeWitness]:
    maximal = {w.ideal.bits for w in maximal_ideals(r)}
    out = []
    for i in enumerate_ideals(r):
        if i.is_proper and is_prime_ideal(i):
            # finite rings: every prime is maximal
            assert i.bits in maximal, f"prime ideal {i} of a finite ring is not maximal"
            out.append(PrimeWitness(i, True))
    return out


def maximal_ideals(r: RingTable) -> list[PrimeWitness]:
    enumerate_ideals(r)
    return [PrimeWitness(i, True) for i in r.maximal]


def is_local(r: RingTable) -> tuple[bool, IdealSet | None]:
    maxes = maximal_ideals(r)
    if len(maxes) == 1:
        return True, maxes[0].ideal
    return False, None
