"""Algebraic laws as executable checks.

Each law quantifies over the tuples its statement needs (submodules, primes,
pairs, ...).  Tuples failing the hypothesis are skipped, never counted as a
pass; a law fails when some tuple satisfies the hypothesis but not the
conclusion.  A law whose hypothesis is never met on an instance reports
``skipped-hypothesis`` with zero quantified tuples.
"""

from __future__ import annotations

import random
import zlib
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Callable

from .. import predicates as P
from ..finmod import (
    ModuleTable,
    Submodule,
    colon_ideal,
    colon_into_module,
    ideal_times,
    localize,
    mod_quotient,
    saturate,
)
from ..finring import IdealSet, is_local, prime_ideals, radical_ideal
from ..instances import Instance
from ..zlattice import (
    DEFAULT_BOUND,
    ZModule,
    ZSubmodule,
    recheck_thm47,
    z_arithmetical_at,
    z_colon,
    z_decide_strongly_irreducible,
    z_intersect,
    z_is_primary,
    z_localized_invariants,
    z_regular_element_in,
    z_scale,
    z_submodule,
    z_sum,
    z_symbolic_power,
    z_witness_search,
)
from ..zlattice.lattice import is_prime

VACUOUS_ASS = "𝔭 ∈ Ass(R/Ann M) always"
FINITE_DIM_ZERO = "dim M = 0 for modules over finite rings"
NEEDS_DOMAIN = "needs a torsion-free module over an infinite domain"

MUTATIONS = {
    "si-as-irreducible": "the definitional strong-irreducibility check answers irreducibility instead",
    "primal-always": "primality of a submodule always reports true",
}


@dataclass
class LawResult:
    law: str
    instance: str
    descriptor: dict
    verdict: str                       # pass | fail | skipped-hypothesis | probe | error
    quantified: int = 0
    skipped: int = 0
    payload: dict | None = None
    reason: str | None = None
    anomalies: list = field(default_factory=list)
    probes: list = field(default_factory=list)

    def to_json(self) -> dict:
        out = {"law": self.law, "instance": self.instance, "descriptor": self.descriptor,
               "verdict": self.verdict, "quantified": self.quantified, "skipped": self.skipped}
        if self.payload is not None:
            out["payload"] = self.payload
        if self.reason:
            out["reason"] = self.reason
        if self.anomalies:
            out["anomalies"] = self.anomalies
        if self.probes:
            out["probes"] = self.probes
        return out


class Tally:
    def __init__(self):
        self.quantified = 0
        self.skipped = 0
        self.failure: dict | None = None
        self.reason: str | None = None
        self.anomalies: list = []
        self.probes: list = []

    def skip(self, n: int = 1) -> None:
        self.skipped += n

    def check(self, ok: bool, payload: Callable[[], dict] | dict) -> None:
        self.quantified += 1
        if not ok and self.failure is None:
            self.failure = payload() if callable(payload) else payload

    def vacuous(self, reason: str) -> "Tally":
        self.reason = reason
        return self


def _sub(s: Submodule) -> list[int]:
    return s.to_json()


def _ideal(i: IdealSet) -> list[int]:
    return i.to_json()


# -- finite backend --------------------------------------------------------

class FiniteContext:
    """Per-module caches shared by every finite law."""

    def __init__(self, m: ModuleTable, mutation: str | None = None):
        self.m = m
        self.mutation = mutation
        self.lattice = m.lattice
        self.proper = [s for s in self.lattice if s.is_proper]
        self._si: dict = {}
        self._loc: dict = {}
        self._quot: dict = {}

    # predicates, with the optional mutation
    def si_of(self, m: ModuleTable, n: Submodule) -> bool:
        key = (id(m), n.bits)
        if key not in self._si:
            if self.mutation == "si-as-irreducible":
                self._si[key] = P.is_irreducible(m, n).verdict
            else:
                self._si[key] = P.is_strongly_irreducible_exhaustive(m, n).verdict
        return self._si[key]

    def si(self, n: Submodule) -> bool:
        return self.si_of(self.m, n)

    def si_cyclic(self, n: Submodule) -> bool:
        return P.is_strongly_irreducible_cyclic(self.m, n).verdict

    def irreducible(self, n: Submodule) -> bool:
        return P.is_irreducible(self.m, n).verdict

    def primal(self, n: Submodule) -> bool:
        if self.mutation == "primal-always":
            return True
        return P.is_primal(self.m, n).verdict

    def prime(self, n: Submodule) -> bool:
        return P.is_prime_submodule(self.m, n).verdict

    def primary(self, n: Submodule) -> IdealSet | None:
        """The associated prime when N is primary, else None."""
        v = P.is_primary_submodule(self.m, n)
        return v.data["prime"] if v.verdict else None

    def colon(self, n: Submodule) -> IdealSet:
        return colon_ideal(n, self.m.whole)

    def rad_colon(self, n: Submodule) -> IdealSet:
        return radical_ideal(self.m.ring, self.colon(n))

    @cached_property
    def primes(self) -> list[IdealSet]:
        return [w.ideal for w in prime_ideals(self.m.ring)]

    @cached_property
    def local(self) -> IdealSet | None:
        ok, maximal = is_local(self.m.ring)
        return maximal if ok else None

    @cached_property
    def multiplication(self) -> bool:
        return P.is_multiplication_module(self.m).verdict

    @cached_property
    def arithmetical(self) -> bool:
        return P.is_arithmetical(self.m).verdict

    def loc(self, p: IdealSet):
        if p.bits not in self._loc:
            self._loc[p.bits] = localize(self.m, p)
        return self._loc[p.bits]

    def quotient(self, u: Submodule):
        if u.bits not in self._quot:
            self._quot[u.bits] = mod_quotient(self.m, u)
        return self._quot[u.bits]

    def image_in_quotient(self, u: Submodule, n: Submodule) -> Submodule:
        q, proj = self.quotient(u)
        from .. import _bits
        return Submodule(q, _bits.from_indices(proj[n.elements], q.size))


def law_l2_2(ctx: FiniteContext) -> Tally:
    t = Tally()
    for n in ctx.proper:
        if not ctx.si(n):
            t.skip()
            continue
        t.check(ctx.irreducible(n) and ctx.primary(n) is not None,
                lambda: {"N": _sub(n), "irreducible": ctx.irreducible(n),
                         "primary": ctx.primary(n) is not None})
    return t


def law_l2_3(ctx: FiniteContext) -> Tally:
    t = Tally()
    if not ctx.multiplication:
        t.skip(len(ctx.proper))
        return t.vacuous("M is not a multiplication module")
    for n in ctx.proper:
        if not ctx.prime(n):
            t.skip()
            continue
        t.check(ctx.si(n), lambda: {"N": _sub(n), "prime": True, "strongly_irreducible": False})
    return t


def law_l2_5(ctx: FiniteContext) -> Tally:
    t = Tally()
    for p in ctx.primes:
        loc = ctx.loc(p)
        for n in ctx.proper:
            np_ = loc.image(n)
            if not np_.is_proper or not ctx.si_of(loc.module, np_):
                t.skip()
                continue
            sn = saturate(n, [p])
            t.check(sn.is_proper and ctx.si(sn),
                    lambda: {"N": _sub(n), "prime": _ideal(p), "S(N)": _sub(sn)})
    return t


def law_p2_6(ctx: FiniteContext) -> Tally:
    t = Tally()
    for n in ctx.proper:
        if not ctx.si(n) or ctx.primary(n) is None:
            t.skip(len(ctx.primes))
            continue
        rad = ctx.rad_colon(n)
        for p in ctx.primes:
            if not rad <= p:
                t.skip()
                continue
            loc = ctx.loc(p)
            np_ = loc.image(n)
            t.check(np_.is_proper and ctx.si_of(loc.module, np_),
                    lambda: {"N": _sub(n), "prime": _ideal(p), "N_p": _sub(np_)})
    return t


def law_l2_7(ctx: FiniteContext) -> Tally:
    t = Tally()
    for n in ctx.proper:
        p = ctx.primary(n)
        if p is None:
            t.skip()
            continue
        loc = ctx.loc(p)
        np_ = loc.image(n)
        if not np_.is_proper or not ctx.si_of(loc.module, np_):
            t.skip()
            continue
        t.check(ctx.si(n), lambda: {"N": _sub(n), "prime": _ideal(p)})
    return t


def _quotient_pairs(ctx: FiniteContext):
    for u in ctx.lattice:
        if not u.is_proper:
            continue
        for n in ctx.proper:
            if u <= n:
                yield u, n


def law_l2_9(ctx: FiniteContext) -> Tally:
    t = Tally()
    for u, n in _quotient_pairs(ctx):
        if not ctx.si(n):
            t.skip()
            continue
        q, _ = ctx.quotient(u)
        nu = ctx.image_in_quotient(u, n)
        t.check(ctx.si_of(q, nu), lambda: {"U": _sub(u), "N": _sub(n), "N/U": _sub(nu)})
    return t


def law_q2_9_converse(ctx: FiniteContext) -> Tally:
    t = Tally()
    for u, n in _quotient_pairs(ctx):
        q, _ = ctx.quotient(u)
        nu = ctx.image_in_quotient(u, n)
        if not ctx.si_of(q, nu):
            t.skip()
            continue
        t.quantified += 1
        if not ctx.si(n):
            t.probes.append({"U": _sub(u), "N": _sub(n), "note": "N/U strongly irreducible, N not"})
    return t


def law_p2_10(ctx: FiniteContext) -> Tally:
    t = Tally()
    for n in ctx.proper:
        a, b = ctx.si_cyclic(n), ctx.si(n)
        t.check(a == b, lambda: {"N": _sub(n), "cyclic": a, "exhaustive": b})
    return t


def law_t2_11(ctx: FiniteContext) -> Tally:
    t = Tally()
    mm = ctx.local
    if mm is None:
        t.skip(len(ctx.proper))
        return t.vacuous("R is not quasi-local")
    gens = ctx.lattice.generators
    for n in ctx.proper:
        if not ctx.si(n):
            t.skip()
            continue
        c = colon_into_module(n, mm)
        if c == n:
            t.skip()
            continue
        cyclic = c.bits in gens
        product = ideal_times(mm, c) == n
        comparable = all(k <= n or c <= k for k in ctx.lattice)
        t.check(cyclic and product and comparable,
                lambda: {"N": _sub(n), "N:m": _sub(c), "cyclic": cyclic,
                         "N = m(N:m)": product, "comparable": comparable})
    return t


def law_c2_12(ctx: FiniteContext) -> Tally:
    t = Tally()
    mm = ctx.local
    if mm is None:
        t.skip(len(ctx.proper))
        return t.vacuous("R is not quasi-local")
    for n in ctx.proper:
        if not ctx.si(n) or ctx.rad_colon(n) != mm:
            t.skip()
            continue
        c = colon_into_module(n, mm)
        v = P.is_sheltered(ctx.m, n)
        ok = v.verdict and v.data["shelter"] == c
        t.check(ok, lambda: {"N": _sub(n), "N:m": _sub(c), "sheltered": v.verdict,
                             "shelter": _sub(v.data["shelter"]) if v.verdict else None})
    return t


def law_t3_1(ctx: FiniteContext) -> Tally:
    t = Tally()
    m = ctx.m
    verdicts = {
        "arithmetical": ctx.arithmetical,
        "distributive": P.is_distributive_module(m).verdict,
        "colon_iii": P.colon_identity_iii(m).verdict,
        "colon_iv": P.colon_identity_iv(m).verdict,
        "submodules_multiplication": P.all_submodules_multiplication(m).verdict,
    }
    t.check(len(set(verdicts.values())) == 1, lambda: dict(verdicts))
    t.probes.append({"arithmetical": ctx.arithmetical})
    return t


def law_t3_2(ctx: FiniteContext) -> Tally:
    t = Tally()
    if not ctx.arithmetical:
        t.skip(len(ctx.proper))
        # necessity probe: an irreducible submodule that is not strongly irreducible
        for n in ctx.proper:
            if ctx.irreducible(n) and not ctx.si(n):
                w = P.is_strongly_irreducible_cyclic(ctx.m, n).witness
                if w is not None:
                    k, l = w["K"], w["L"]
                    t.probes.append({"N": _sub(n), "K": _sub(k), "L": _sub(l),
                                     "meet": _sub(ctx.m.sub(k.bits & l.bits)),
                                     "note": "irreducible but not strongly irreducible"})
        return t.vacuous("M is not arithmetical")
    for n in ctx.proper:
        a, b, c = ctx.irreducible(n), ctx.si(n), ctx.primal(n)
        t.check(a == b == c, lambda: {"N": _sub(n), "irreducible": a, "strongly_irreducible": b, "primal": c})
    return t


def law_p4_1(ctx: FiniteContext) -> Tally:
    t = Tally()
    for n in ctx.proper:
        if not ctx.si(n):
            t.skip()
            continue
        p = ctx.rad_colon(n)
        loc = ctx.loc(p)
        mp = loc.module
        np_ = loc.image(n)
        pp = loc.ideal_image(p)
        if ideal_times(pp, mp.whole) == np_:
            t.skip()
            continue
        cp = loc.image(colon_into_module(n, p))
        d = colon_into_module(np_, pp)
        cyclic = cp.bits in mp.lattice.generators
        product = ideal_times(pp, d) == np_
        comparable = all(k <= n or d <= loc.image(k) for k in ctx.lattice)
        t.check(cyclic and product and comparable,
                lambda: {"N": _sub(n), "prime": _ideal(p), "cyclic": cyclic,
                         "N_p = p(N_p:p)": product, "comparable": comparable})
    return t


def law_t4_2(ctx: FiniteContext) -> Tally:
    t = Tally()
    mm = ctx.local
    if mm is None:
        t.skip(len(ctx.proper))
        return t.vacuous("R is not local")
    m_m = ideal_times(mm, ctx.m.whole)
    from .. import _bits
    for n in ctx.proper:
        if not ctx.si(n) or m_m == n or ctx.rad_colon(n) != mm:
            t.skip()
            continue
        c = colon_into_module(n, mm)
        comp_n = all(k <= n or n <= k for k in ctx.lattice)
        comp_c = all(k <= c or c <= k for k in ctx.lattice)
        union = 0
        for k in ctx.lattice:
            if k < c:
                union |= k.bits
        meet = ctx.m.whole.bits
        for l in ctx.lattice:
            if n < l:
                meet &= l.bits
        ok = comp_n and comp_c and union == n.bits and meet == c.bits
        t.check(ok, lambda: {"N": _sub(n), "N:m": _sub(c), "N comparable": comp_n,
                             "N:m comparable": comp_c,
                             "union": [int(x) for x in _bits.to_indices(union, ctx.m.size)],
                             "intersection": [int(x) for x in _bits.to_indices(meet, ctx.m.size)]})
    return t


def law_p4_4(ctx: FiniteContext) -> Tally:
    t = Tally()
    if not ctx.multiplication:
        t.skip(len(ctx.proper))
        return t.vacuous("M is not a multiplication module")
    for n in ctx.proper:
        colon = ctx.colon(n)
        if any(colon == p for p in ctx.primes):
            t.skip()
            continue
        lhs = ctx.si(n)
        rhs = None
        prime = ctx.primary(n)
        if prime is not None:
            pm = ideal_times(prime, ctx.m.whole)
            loc = ctx.loc(prime)
            for l in ctx.lattice:
                if n < l and l <= pm:
                    lp = loc.image(l)
                    if all(k <= n or lp <= loc.image(k) for k in ctx.lattice):
                        rhs = l
                        break
        t.check(lhs == (rhs is not None),
                lambda: {"N": _sub(n), "strongly_irreducible": lhs,
                         "L": _sub(rhs) if rhs is not None else None})
    return t


def law_p4_9(ctx: FiniteContext) -> Tally:
    t = Tally()
    for n in ctx.proper:
        if not ctx.si(n) or P.radical_submodule(ctx.m, n) != n:
            t.skip()
            continue
        t.check(ctx.prime(n), lambda: {"N": _sub(n), "prime": False})
    return t


def _always_vacuous(reason: str):
    def law(ctx: FiniteContext) -> Tally:
        t = Tally()
        return t.vacuous(reason)
    return law


# -- integer backend --------------------------------------------------------

class ZContext:
    def __init__(self, m: ZModule, n: ZSubmodule | None, name: str, seed: int, mutation: str | None = None):
        self.m, self.n, self.name, self.seed = m, n, name, seed
        self.mutation = mutation

    @cached_property
    def decision(self):
        return z_decide_strongly_irreducible(self.m, self.n)

    @cached_property
    def witness(self):
        return z_witness_search(self.m, self.n, DEFAULT_BOUND)

    @property
    def si_evidence(self) -> bool:
        """No witness within the search bound."""
        return self.witness is None


def zlaw_t4_7(ctx: ZContext) -> Tally:
    t = Tally()
    m, n = ctx.m, ctx.n
    if n is None:
        return t.vacuous("module-only instance")
    if m.is_torsion:
        t.skip()
        return t.vacuous(VACUOUS_ASS)
    e = z_colon(n, m)
    primary, p = z_is_primary(m, n)
    if not primary or e == 0 or is_prime(e):
        t.skip()
        return t.vacuous("Rad(N:M) not a prime with 𝔭M ⊄ N")
    v = ctx.decision
    if v.data.get("anomaly"):
        t.anomalies.append({"instance": ctx.name, "n": v.data["n"], "note": v.data["anomaly"]})
    consistent = recheck_thm47(m, n, v)
    t.check(consistent and v.verdict == ctx.si_evidence,
            lambda: {"decision": v.to_json(), "search_witness": ctx.witness,
                     "bound": DEFAULT_BOUND})
    return t


PRIMES_TRIED = (2, 3, 5)


def zlaw_c4_8(ctx: ZContext) -> Tally:
    t = Tally()
    m = ctx.m
    if ctx.n is not None:
        return t.vacuous("pair instance; the corollary quantifies over all N")
    inv = m.invariants
    if inv.factors or inv.free_rank == 0:
        t.skip()
        return t.vacuous("M is not torsion-free and nonzero")
    candidates = []
    for p in PRIMES_TRIED:
        for a in (2, 3):
            candidates.append(z_symbolic_power(m, p, a))
            candidates.append(z_submodule(m, [[p ** a if i == j == 0 else int(i == j) for j in range(m.rank)]
                                               for i in range(m.rank)]))
    lhs = None
    for n in candidates:
        if not n.is_proper:
            continue
        e = z_colon(n, m)
        if e == 0 or is_prime(e):
            continue
        if z_witness_search(m, n, DEFAULT_BOUND) is None:
            lhs = n
            break
    rhs = [p for p in PRIMES_TRIED if z_arithmetical_at(m, p)]
    t.check((lhs is not None) == bool(rhs),
            lambda: {"si_with_nonprime_colon": lhs.to_json() if lhs is not None else None,
                     "arithmetical_at": rhs})
    return t


C4_3_PAIRS = 1000
C4_3_HEIGHT = 6


def zlaw_c4_3(ctx: ZContext) -> Tally:
    t = Tally()
    m, n = ctx.m, ctx.n
    if n is None:
        return t.vacuous("module-only instance")
    if m.is_torsion:
        t.skip()
        return t.vacuous("dim M = 0")
    v = ctx.decision
    e = z_colon(n, m)
    if v.verdict is not True or not ctx.si_evidence or not z_regular_element_in(e, m):
        t.skip()
        return t.vacuous("N not strongly irreducible with a regular element in (N:M)")
    rng = random.Random(zlib.crc32(f"{ctx.seed}:{ctx.name}".encode()))
    k = m.rank

    def sample():
        gens = [[rng.randint(-C4_3_HEIGHT, C4_3_HEIGHT) for _ in range(k)] for _ in range(rng.randint(1, 2))]
        return z_submodule(m, gens)

    for _ in range(C4_3_PAIRS):
        a, b = sample(), sample()
        left = z_sum(z_intersect(a, b), n)
        right = z_intersect(z_sum(a, n), z_sum(b, n))
        t.check(left == right, lambda: {"K": a.to_json(), "L": b.to_json(), "N": n.to_json()})
    return t


def zlaw_p4_6(ctx: ZContext) -> Tally:
    t = Tally()
    m, n = ctx.m, ctx.n
    if n is None:
        return t.vacuous("module-only instance")
    if m.is_torsion:
        t.skip()
        return t.vacuous(VACUOUS_ASS)
    v = ctx.decision
    primary, p = z_is_primary(m, n)
    if v.verdict is not True or not ctx.si_evidence or not primary or p == 0:
        t.skip()
        return t.vacuous("N not strongly irreducible with Rad(N:M) a nonzero prime")
    if z_scale(m.whole, p) <= n:
        t.skip()
        return t.vacuous("𝔭M ⊆ N")
    e = z_colon(n, m)
    local = z_localized_invariants(m, p)
    ok = e != 0 and all(d % p for d in local.factors)
    t.check(ok, lambda: {"p": p, "colon": e, "localized_factors": list(local.factors)})
    return t


@dataclass(frozen=True)
class Law:
    id: str
    statement: str
    finite: Callable[[FiniteContext], Tally] | None
    zlattice: Callable[[ZContext], Tally] | None = None
    probe: bool = False


LAWS: dict[str, Law] = {law.id: law for law in [
    Law("L2_2", "strongly irreducible ⇒ irreducible ⇒ primary", law_l2_2),
    Law("L2_3", "multiplication module, prime N ⇒ N strongly irreducible", law_l2_3),
    Law("L2_5", "S⁻¹N strongly irreducible ⇒ S(N) strongly irreducible", law_l2_5),
    Law("P2_6", "strongly irreducible primary N, Rad(N:M) ∩ S = ∅ ⇒ S⁻¹N strongly irreducible", law_p2_6),
    Law("L2_7", "𝔭-primary N with N_𝔭 strongly irreducible ⇒ N strongly irreducible", law_l2_7),
    Law("L2_9", "U ⊆ N strongly irreducible ⇒ N/U strongly irreducible in M/U", law_l2_9),
    Law("P2_10", "cyclic pairs decide strong irreducibility", law_p2_10),
    Law("T2_11", "quasi-local, N ≠ N:𝔪 ⇒ N:𝔪 cyclic, N = 𝔪(N:𝔪), comparability", law_t2_11),
    Law("C2_12", "local, Rad(N:M) = 𝔪 ⇒ N sheltered by N:𝔪", law_c2_12),
    Law("T3_1", "arithmetical ⇔ distributive ⇔ colon identities ⇔ submodules multiplication", law_t3_1),
    Law("T3_2", "arithmetical M: irreducible ⇔ strongly irreducible ⇔ primal", law_t3_2),
    Law("P4_1", "localized structure of strongly irreducible N when 𝔭M_𝔭 ≠ N_𝔭", law_p4_1),
    Law("T4_2", "local, 𝔪M ≠ N, Rad(N:M) = 𝔪 ⇒ comparability and union/intersection formulas", law_t4_2),
    Law("C4_3", "dim 1, regular element in (N:M) ⇒ N distributive", _always_vacuous(FINITE_DIM_ZERO), zlaw_c4_3),
    Law("P4_4", "multiplication M, non-prime colon: strongly irreducible ⇔ (L, 𝔭) structure", law_p4_4),
    Law("P4_6", "(N_𝔭 : M_𝔭) contains a regular element on M_𝔭", _always_vacuous(VACUOUS_ASS), zlaw_p4_6),
    Law("T4_7", "strongly irreducible ⇔ primary, M_𝔭 arithmetical, N = (𝔭M)^(n), n > 1",
        _always_vacuous(VACUOUS_ASS), zlaw_t4_7),
    Law("C4_8", "torsion-free M: strongly irreducible N with non-prime colon exists ⇔ some M_𝔭 arithmetical",
        _always_vacuous(NEEDS_DOMAIN), zlaw_c4_8),
    Law("P4_9", "strongly irreducible N with rad_M(N) = N ⇒ N prime", law_p4_9),
    Law("Q2_9_CONVERSE", "probe: N/U strongly irreducible ⇒ N strongly irreducible?", law_q2_9_converse,
        probe=True),
]}

LAW_ORDER = list(LAWS)
ZLAWS = [k for k, law in LAWS.items() if law.zlattice is not None]


def _result(law: Law, inst: Instance, t: Tally) -> LawResult:
    if law.probe:
        verdict = "probe"
    elif t.failure is not None:
        verdict = "fail"
    elif t.quantified == 0:
        verdict = "skipped-hypothesis"
    else:
        verdict = "pass"
    return LawResult(law.id, inst.name, inst.descriptor, verdict, t.quantified, t.skipped,
                     t.failure, t.reason if t.quantified == 0 else None, t.anomalies, t.probes)


def check_law(law_id: str, inst: Instance, mutation: str | None = None, *, seed: int = 42,
              context: Any = None) -> LawResult:
    """Run one law on one instance.  ``context`` lets callers share caches across laws."""
    if law_id not in LAWS:
        raise KeyError(f"unknown law {law_id!r}")
    if mutation is not None and mutation not in MUTATIONS:
        raise KeyError(f"unknown mutation {mutation!r}")
    law = LAWS[law_id]
    if inst.backend == "finite":
        ctx = context or FiniteContext(inst.module(), mutation)
        t = law.finite(ctx)
    else:
        if law.zlattice is None:
            t = Tally().vacuous("finite-backend law")
        else:
            ctx = context or ZContext(inst.module(), inst.submodule(), inst.name, seed, mutation)
            t = law.zlattice(ctx)
    return _result(law, inst, t)


def make_context(inst: Instance, mutation: str | None = None, seed: int = 42):
    if inst.backend == "finite":
        return FiniteContext(inst.module(), mutation)
    return ZContext(inst.module(), inst.submodule(), inst.name, seed, mutation)
