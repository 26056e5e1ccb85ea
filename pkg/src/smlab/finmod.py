"""Finite modules over table rings, and their submodule lattices.

A submodule is a dense membership vector over the module elements, packed into
an int (bit ``x`` set iff element ``x`` belongs).  All lattice listings use the
canonical order (cardinality, then the membership vector read lexicographically
from element 0 with False < True).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from . import _bits
from .errors import CONSTRUCTION_CAP, CapExceeded, PreconditionError, lattice_cap
from .finring import (
    IdealSet,
    PrimeWitness,
    RingTable,
    coset_projection,
    ideal_generators,
    ideal_power,
    ideal_product,
    is_prime_ideal,
    ring_quotient,
)


@dataclass(frozen=True, eq=False)
class ModuleTable:
    ring: RingTable
    size: int
    add: np.ndarray
    act: np.ndarray
    zero: int
    label: dict
    names: tuple[str, ...] = field(default=(), repr=False)

    def __post_init__(self):
        if self.size > CONSTRUCTION_CAP:
            raise CapExceeded(f"module of size {self.size} exceeds {CONSTRUCTION_CAP}")
        if self.act.shape != (self.ring.size, self.size):
            raise PreconditionError("action table has the wrong shape")
        for table in (self.add, self.act):
            table.flags.writeable = False

    def __repr__(self):
        return f"ModuleTable({self.label!r}, size={self.size}, ring={self.ring.label!r})"

    def name(self, x: int) -> str:
        return self.names[x] if self.names else str(x)

    @cached_property
    def whole(self) -> "Submodule":
        return Submodule(self, (1 << self.size) - 1)

    @cached_property
    def zero_sub(self) -> "Submodule":
        return Submodule(self, 1 << self.zero)

    @cached_property
    def cyclic_bits(self) -> np.ndarray:
        """Row x holds the packed membership of R x."""
        m, q = self.size, self.ring.size
        mask = np.zeros((m, m), dtype=bool)
        mask[np.broadcast_to(np.arange(m), (q, m)), self.act] = True
        return mask

    @cached_property
    def lattice(self) -> "SubmoduleLattice":
        return _enumerate(self)

    def sub(self, bits: int) -> "Submodule":
        return Submodule(self, bits)


@dataclass(frozen=True, eq=False)
class Submodule:
    module: ModuleTable
    bits: int

    @property
    def members(self) -> np.ndarray:
        return _bits.to_mask(self.bits, self.module.size)

    @property
    def elements(self) -> np.ndarray:
        return _bits.to_indices(self.bits, self.module.size)

    def __contains__(self, x: int) -> bool:
        return bool(self.bits >> int(x) & 1)

    def __len__(self) -> int:
        return _bits.popcount(self.bits)

    def __le__(self, other: "Submodule") -> bool:
        return _bits.subset(self.bits, other.bits)

    def __lt__(self, other: "Submodule") -> bool:
        return self.bits != other.bits and _bits.subset(self.bits, other.bits)

    def __eq__(self, other):
        if not isinstance(other, Submodule):
            return NotImplemented
        return self.module is other.module and self.bits == other.bits

    def __hash__(self):
        return hash((id(self.module), self.bits))

    def __repr__(self):
        return f"Submodule({[self.module.name(x) for x in self.elements]})"

    @property
    def is_proper(self) -> bool:
        return self.bits != self.module.whole.bits

    def key(self) -> tuple[int, str]:
        return _bits.canonical_key(self.bits, self.module.size)

    def to_json(self) -> list[int]:
        return [int(x) for x in self.elements]


class SubmoduleLattice:
    """All submodules of a module, canonically sorted, with cover relations."""

    def __init__(self, module: ModuleTable, bits: Iterable[int], generators: dict[int, int]):
        self.module = module
        ordered = sorted(bits, key=lambda b: _bits.canonical_key(b, module.size))
        self.all = [Submodule(module, b) for b in ordered]
        self.index = {b: i for i, b in enumerate(ordered)}
        # cyclic submodule bits -> smallest generating element
        self.generators = generators
        self.cyclic = [s for s in self.all if s.bits in generators]

    def __len__(self):
        return len(self.all)

    def __iter__(self):
        return iter(self.all)

    @property
    def bits(self) -> list[int]:
        return [s.bits for s in self.all]

    @cached_property
    def covers(self) -> list[tuple[int, int]]:
        """Pairs (i, j) such that all[j] covers all[i]."""
        out = []
        bits = self.bits
        for i, a in enumerate(bits):
            ups = [j for j, b in enumerate(bits) if b != a and a & ~b == 0]
            for j in ups:
                b = bits[j]
                if not any(bits[k] != b and bits[k] & ~b == 0 and a & ~bits[k] == 0 for k in ups):
                    out.append((i, j))
        return sorted(out)

    def upper_covers(self, sub: Submodule) -> list[Submodule]:
        i = self.index[sub.bits]
        return [self.all[j] for a, j in self.covers if a == i]

    def generator(self, sub: Submodule) -> int:
        return self.generators[sub.bits]

    def is_chain(self) -> bool:
        bits = self.bits
        return all(a & ~b == 0 for a, b in zip(bits, bits[1:]))

    @cached_property
    def _joins(self) -> dict[tuple[int, int], int]:
        return {}

    def join(self, a: int, b: int) -> int:
        if a > b:
            a, b = b, a
        key = (a, b)
        out = self._joins.get(key)
        if out is None:
            out = self._joins[key] = _sum_bits(self.module, a, b)
        return out

    @cached_property
    def membership(self) -> np.ndarray:
        """Boolean matrix: row i is the membership vector of all[i]."""
        return np.array([s.members for s in self.all], dtype=bool).reshape(len(self.all), self.module.size)

    @cached_property
    def colon_matrix(self) -> list[list[int]]:
        """colon_matrix[i][j] = bits of (all[i] :_R all[j])."""
        act, mem = self.module.act, self.membership
        cols = []
        for s in self.all:
            inside = mem[:, act[:, s.elements]].all(axis=2)
            packed = np.packbits(inside, axis=1, bitorder="little")
            cols.append([int.from_bytes(row.tobytes(), "little") for row in packed])
        return [list(row) for row in zip(*cols)]


# -- constructors ---------------------------------------------------------

def mod_regular(r: RingTable) -> ModuleTable:
    return ModuleTable(r, r.size, r.add, r.mul, r.zero, {"kind": "regular"}, r.names)


def mod_quotient(m: ModuleTable, n: Submodule) -> tuple[ModuleTable, np.ndarray]:
    """M/N with cosets numbered by sorted minimal representative, plus the projection."""
    if n.module is not m:
        raise PreconditionError("submodule belongs to a different module")
    proj, reps = coset_projection(m.add, n.elements)
    quotient = ModuleTable(
        ring=m.ring,
        size=len(reps),
        add=proj[m.add[np.ix_(reps, reps)]],
        act=proj[m.act[:, reps]],
        zero=int(proj[m.zero]),
        label={"kind": "quotient", "base": m.label, "sub_gens": submodule_generators(n)},
        names=tuple(f"[{m.name(x)}]" for x in reps),
    )
    return quotient, proj


def mod_cyclic(r: RingTable, i: IdealSet) -> ModuleTable:
    """R/i as an R-module."""
    if i.ring is not r:
        raise PreconditionError("ideal belongs to a different ring")
    reg = mod_regular(r)
    q, _ = mod_quotient(reg, Submodule(reg, i.bits))
    names = q.names if len(i) > 1 else r.names
    return ModuleTable(r, q.size, q.add, q.act, q.zero,
                       {"kind": "cyclic", "ideal_gens": ideal_generators(i)}, names)


def mod_direct_sum(m1: ModuleTable, m2: ModuleTable) -> ModuleTable:
    if m1.ring is not m2.ring:
        raise PreconditionError("direct summands must share a ring")
    size = m1.size * m2.size
    if size > CONSTRUCTION_CAP:
        raise CapExceeded(f"direct sum of size {size} exceeds {CONSTRUCTION_CAP}")
    n = m2.size
    ia, ib = np.arange(size) // n, np.arange(size) % n
    add = m1.add[ia[:, None], ia[None, :]] * n + m2.add[ib[:, None], ib[None, :]]
    act = m1.act[:, ia] * n + m2.act[:, ib]
    parts = []
    for part in (m1, m2):
        parts.extend(part.label["parts"] if part.label.get("kind") == "dsum" else [part.label])
    return ModuleTable(
        m1.ring, size, add, act, m1.zero * n + m2.zero, {"kind": "dsum", "parts": parts},
        tuple(f"({m1.name(x)},{m2.name(y)})" for x in range(m1.size) for y in range(n)),
    )


def mod_from_tables(r: RingTable, add: np.ndarray, act: np.ndarray, zero: int, label: dict,
                    names: Sequence[str] = ()) -> ModuleTable:
    return ModuleTable(r, add.shape[0], np.asarray(add), np.asarray(act), zero, label, tuple(names))


def mod_validate(m: ModuleTable, *, seed: int = 0, samples: int = 100_000) -> None:
    """Raise AssertionError unless the tables satisfy the module axioms."""
    r, add, act, size = m.ring, m.add, m.act, m.size
    e = np.arange(size)
    assert ((add >= 0) & (add < size)).all() and ((act >= 0) & (act < size)).all()
    assert (add == add.T).all(), "addition not commutative"
    assert (add[m.zero] == e).all(), "zero is not an additive identity"
    assert ((add == m.zero).sum(axis=1) == 1).all(), "missing additive inverses"
    assert (act[r.one] == e).all(), "1 does not act as the identity"
    assert (act[r.zero] == m.zero).all(), "0 does not act as zero"
    if size <= 64 and r.size <= 64:
        x, y, z = (g.ravel() for g in np.meshgrid(e, e, e, indexing="ij"))
        rr, ss, xx = (g.ravel() for g in np.meshgrid(r.elements, r.elements, e, indexing="ij"))
        ry, rx = (g.ravel() for g in np.meshgrid(r.elements, e, indexing="ij"))
    else:
        rng = np.random.default_rng(seed)
        x, y, z = rng.integers(0, size, size=(3, samples))
        rr, ss = rng.integers(0, r.size, size=(2, samples))
        xx = rng.integers(0, size, size=samples)
        ry, rx = rr, xx
    assert (add[add[x, y], z] == add[x, add[y, z]]).all(), "addition not associative"
    assert (act[r.mul[rr, ss], xx] == act[rr, act[ss, xx]]).all(), "(rs)x != r(sx)"
    assert (act[r.add[rr, ss], xx] == add[act[rr, xx], act[ss, xx]]).all(), "(r+s)x != rx+sx"
    if size <= 64 and r.size <= 64:
        rxy = np.meshgrid(r.elements, e, e, indexing="ij")
        a, b, c = (g.ravel() for g in rxy)
    else:
        a, b, c = ry, rx, z[: len(ry)]
    assert (act[a, add[b, c]] == add[act[a, b], act[a, c]]).all(), "r(x+y) != rx+ry"


# -- generation and lattice arithmetic ------------------------------------

def _sum_bits(m: ModuleTable, a: int, b: int) -> int:
    if a & ~b == 0:
        return b
    if b & ~a == 0:
        return a
    ia, ib = _bits.to_indices(a, m.size), _bits.to_indices(b, m.size)
    return _bits.from_indices(m.add[np.ix_(ia, ib)].ravel(), m.size)


def _same_module(a: Submodule, b: Submodule) -> ModuleTable:
    if a.module is not b.module:
        raise PreconditionError("submodules belong to different modules")
    return a.module


def cyclic_submodule(m: ModuleTable, x: int) -> Submodule:
    return Submodule(m, _bits.from_mask(m.cyclic_bits[int(x)]))


def submodule_generated(m: ModuleTable, gens: Sequence[int]) -> Submodule:
    bits = 1 << m.zero
    for g in gens:
        g = int(g)
        if not 0 <= g < m.size:
            raise PreconditionError(f"element {g} out of range for module of size {m.size}")
        if not bits >> g & 1:
            bits = _sum_bits(m, bits, _bits.from_mask(m.cyclic_bits[g]))
    return Submodule(m, bits)


def submodule_generators(n: Submodule) -> list[int]:
    gens, bits = [], n.module.zero_sub.bits
    for x in n.elements:
        if bits == n.bits:
            break
        if not bits >> int(x) & 1:
            gens.append(int(x))
            bits = _sum_bits(n.module, bits, _bits.from_mask(n.module.cyclic_bits[x]))
    return gens


def sub_sum(a: Submodule, b: Submodule) -> Submodule:
    m = _same_module(a, b)
    return Submodule(m, _sum_bits(m, a.bits, b.bits))


def sub_intersect(a: Submodule, b: Submodule) -> Submodule:
    return Submodule(_same_module(a, b), a.bits & b.bits)


def ideal_times(i: IdealSet, k: Submodule) -> Submodule:
    """The submodule i K generated by all r x with r in i, x in K."""
    m = k.module
    if i.ring is not m.ring:
        raise PreconditionError("ideal and module are over different rings")
    idx = i.elements
    bits = 1 << m.zero
    for x in k.elements:
        # i x is already a submodule
        part = _bits.from_indices(m.act[idx, x], m.size)
        bits = _sum_bits(m, bits, part)
    return Submodule(m, bits)


def colon_ideal(n: Submodule, k: Submodule) -> IdealSet:
    """(N :_R K) = {r : r K contained in N}."""
    m = _same_module(n, k)
    ok = n.members[m.act[:, k.elements]].all(axis=1)
    return IdealSet(m.ring, _bits.from_mask(ok))


def colon_into_module(n: Submodule, i: IdealSet) -> Submodule:
    """(N :_M i) = {x : i x contained in N}."""
    m = n.module
    if i.ring is not m.ring:
        raise PreconditionError("ideal and module are over different rings")
    ok = n.members[m.act[i.elements, :]].all(axis=0)
    out = Submodule(m, _bits.from_mask(ok))
    _check_submodule(out)
    return out


def _check_submodule(s: Submodule) -> None:
    m, idx, mask = s.module, s.elements, s.members
    assert mask[m.zero], "missing zero"
    assert mask[m.add[np.ix_(idx, idx)]].all(), "not closed under addition"
    assert mask[m.act[:, idx]].all(), "not closed under the ring action"


def is_submodule(m: ModuleTable, bits: int) -> bool:
    try:
        _check_submodule(Submodule(m, bits))
    except AssertionError:
        return False
    return True


def _enumerate(m: ModuleTable) -> SubmoduleLattice:
    cap = lattice_cap()
    if m.size > cap:
        raise CapExceeded(f"module of size {m.size} exceeds lattice cap {cap}")
    packed = np.packbits(m.cyclic_bits, axis=1, bitorder="little")
    generators: dict[int, int] = {}
    for x in range(m.size):
        generators.setdefault(int.from_bytes(packed[x].tobytes(), "little"), x)
    cyclic = sorted(generators, key=lambda b: _bits.canonical_key(b, m.size))
    zero = 1 << m.zero
    seen = {zero}
    work = [zero]
    while work:
        s = work.pop()
        for c in cyclic:
            if c & ~s == 0:
                continue
            t = _sum_bits(m, s, c)
            if t not in seen:
                seen.add(t)
                work.append(t)
    return SubmoduleLattice(m, seen, generators)


def enumerate_submodules(m: ModuleTable) -> SubmoduleLattice:
    return m.lattice


def cyclic_submodules(m: ModuleTable) -> list[Submodule]:
    return m.lattice.cyclic


# -- annihilators and associated primes -----------------------------------

def annihilator(m: ModuleTable) -> IdealSet:
    return colon_ideal(m.zero_sub, m.whole)


def element_annihilator(m: ModuleTable, x: int) -> IdealSet:
    return IdealSet(m.ring, _bits.from_mask(m.act[:, int(x)] == m.zero))


def _ideal_key(i: IdealSet):
    return _bits.canonical_key(i.bits, i.ring.size)


def ass_module(m: ModuleTable) -> list[IdealSet]:
    """Ann(x) for nonzero x whenever that annihilator is prime."""
    found = {}
    for x in range(m.size):
        if x == m.zero:
            continue
        ann = element_annihilator(m, x)
        if ann.bits not in found and ann.is_proper and is_prime_ideal(ann):
            found[ann.bits] = ann
    return sorted(found.values(), key=_ideal_key)


def mass_module(m: ModuleTable) -> list[IdealSet]:
    ass = ass_module(m)
    return [p for p in ass if not any(q.bits != p.bits and q <= p for q in ass)]


def _as_ideal(p) -> IdealSet:
    return p.ideal if isinstance(p, PrimeWitness) else p


def complement_of_primes(r: RingTable, primes: Iterable) -> np.ndarray:
    covered = np.zeros(r.size, dtype=bool)
    for p in primes:
        covered |= _as_ideal(p).members
    return np.flatnonzero(~covered)


def saturate(n: Submodule, primes: Iterable) -> Submodule:
    """S(N) = union of (N :_M s) over s in S = R minus the union of ``primes``."""
    m = n.module
    s_idx = complement_of_primes(m.ring, primes)
    if len(s_idx) == 0:
        raise PreconditionError("multiplicative set is empty")
    ok = n.members[m.act[s_idx, :]].any(axis=0)
    out = Submodule(m, _bits.from_mask(ok))
    _check_submodule(out)
    return out


def symbolic_power(m: ModuleTable, a: IdealSet, n: int) -> Submodule:
    """(aM)^(n) = S(a^n M) with S the complement of the minimal primes of M/aM."""
    if n < 1:
        raise PreconditionError("symbolic powers need n >= 1")
    am = ideal_times(a, m.whole)
    if am.bits == m.whole.bits:
        raise PreconditionError("aM = M: the multiplicative set is undefined")
    quotient, _ = mod_quotient(m, am)
    return saturate(ideal_times(ideal_power(a, n), m.whole), mass_module(quotient))


def gamma(m: ModuleTable, a: IdealSet) -> Submodule:
    """Elements killed by some power of a."""
    power = a
    while True:
        nxt = ideal_product(power, a)
        if nxt.bits == power.bits:
            return colon_into_module(m.zero_sub, power)
        power = nxt


# -- localization ---------------------------------------------------------

@dataclass(frozen=True, eq=False)
class Localization:
    base: ModuleTable
    prime: IdealSet
    ring: RingTable
    module: ModuleTable
    ring_proj: np.ndarray
    module_proj: np.ndarray

    def image(self, n: Submodule) -> Submodule:
        return Submodule(self.module, _bits.from_indices(self.module_proj[n.elements], self.module.size))

    def ideal_image(self, i: IdealSet) -> IdealSet:
        return IdealSet(self.ring, _bits.from_indices(self.ring_proj[i.elements], self.ring.size))

    def preimage(self, n: Submodule) -> Submodule:
        return Submodule(self.base, _bits.from_mask(n.members[self.module_proj]))


def localize(m: ModuleTable, p) -> Localization:
    """M_p as the quotient of M by its S-torsion (S = R minus p).

    Valid for finite structures only: every s outside p acts injectively on
    the quotient, and injective self-maps of finite sets are bijective.
    """
    p = _as_ideal(p)
    r = m.ring
    if p.ring is not r or not p.is_proper or not is_prime_ideal(p):
        raise PreconditionError("localization needs a prime ideal of the base ring")
    s_idx = np.flatnonzero(~p.members)
    ring_torsion = IdealSet(r, _bits.from_mask((r.mul[s_idx, :] == r.zero).any(axis=0)))
    mod_torsion = Submodule(m, _bits.from_mask((m.act[s_idx, :] == m.zero).any(axis=0)))
    _check_submodule(mod_torsion)
    ring_p, ring_proj = ring_quotient(r, ring_torsion)
    mod_proj, mod_reps = coset_projection(m.add, mod_torsion.elements)
    _, ring_reps = np.unique(ring_proj, return_index=True)
    module_p = ModuleTable(
        ring=ring_p,
        size=len(mod_reps),
        add=mod_proj[m.add[np.ix_(mod_reps, mod_reps)]],
        act=mod_proj[m.act[np.ix_(ring_reps, mod_reps)]],
        zero=int(mod_proj[m.zero]),
        label={"kind": "localization", "base": m.label, "prime_gens": ideal_generators(p)},
        names=tuple(f"{m.name(x)}/1" for x in mod_reps),
    )
    for s in np.unique(ring_proj[s_idx]):
        assert len(np.unique(module_p.act[s])) == module_p.size, "s does not act bijectively on M_p"
        assert len(np.unique(ring_p.mul[s])) == ring_p.size, "s does not act bijectively on R_p"
    return Localization(m, p, ring_p, module_p, ring_proj, mod_proj)
