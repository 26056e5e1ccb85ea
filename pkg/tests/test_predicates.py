import itertools

import pytest
from hypothesis import given, settings, strategies as st

from smlab import predicates as P
from smlab.errors import PreconditionError
from smlab.finmod import (
    Submodule,
    colon_ideal,
    ideal_times,
    mod_cyclic,
    mod_direct_sum,
    mod_regular,
    submodule_generated,
)
from smlab.finring import ideal_generated, ring_product, ring_truncpoly, ring_zmod

X, Y, XY = 2, 4, 6   # x, y, x+y in F2[x,y]/(x,y)^2


def elems(s):
    return sorted(int(v) for v in s.elements)


def z(n):
    return mod_regular(ring_zmod(n))


def gen(m, *g):
    return submodule_generated(m, list(g))


def prime_power(d):
    ps = [p for p in range(2, d + 1) if d % p == 0 and all(p % q for q in range(2, p))]
    return len(ps) == 1


@pytest.fixture
def local8():
    return mod_regular(ring_truncpoly(2, 2, 2))


def f2_square():
    r = ring_zmod(2)
    return mod_direct_sum(mod_regular(r), mod_regular(r))


# -- independent definitional oracles over brute-force lattices ------------

def naive(m, brute):
    subs = [frozenset(s) for s in brute(m)]
    return subs


def naive_si(subs, n):
    return all(k <= n or l <= n for k in subs for l in subs if k & l <= n)


def naive_irreducible(subs, n):
    above = [k for k in subs if n < k]
    return not any(k & l == n for k in above for l in above)


def naive_prime(m, n):
    whole = range(m.size)
    colon = {r for r in range(m.ring.size) if all(m.act[r, x] in n for x in whole)}
    return all(r in colon for r in range(m.ring.size) for x in whole
               if m.act[r, x] in n and x not in n)


def naive_primary(m, n):
    whole = range(m.size)

    def some_power_kills(r):
        p = r
        for _ in range(m.ring.size + 1):
            if all(m.act[p, x] in n for x in whole):
                return True
            p = m.ring.mul[p, r]
        return False
    return all(some_power_kills(r) for r in range(m.ring.size) for x in whole
               if m.act[r, x] in n and x not in n)


def _z4_plus_z2():
    r = ring_zmod(4)
    return mod_direct_sum(mod_regular(r), mod_cyclic(r, ideal_generated(r, [2])))


SMALL = [lambda: z(12), lambda: z(16), f2_square, lambda: mod_regular(ring_truncpoly(2, 2, 2)),
         lambda: mod_regular(ring_product(ring_zmod(2), ring_zmod(4))), _z4_plus_z2]


@pytest.mark.parametrize("build", SMALL)
def test_against_naive_definitions(build, brute):
    m = build()
    subs = naive(m, brute)
    for n in m.lattice:
        if not n.is_proper:
            continue
        ns = frozenset(elems(n))
        want_si = naive_si(subs, ns)
        assert P.is_strongly_irreducible_exhaustive(m, n).verdict == want_si
        assert P.is_strongly_irreducible_cyclic(m, n).verdict == want_si
        assert P.is_irreducible(m, n).verdict == naive_irreducible(subs, ns)
        assert P.is_prime_submodule(m, n).verdict == naive_prime(m, ns)
        assert P.is_primary_submodule(m, n).verdict == naive_primary(m, ns)


@given(st.integers(2, 60), st.integers(1, 60))
@settings(max_examples=40, deadline=None)
def test_zmod_closed_forms(n, g):
    """In Z/n the submodule (d), d | n, d > 1, is SI, irreducible, primary and primal
    exactly when d is a prime power, and prime exactly when d is prime."""
    m = z(n)
    d = max(k for k in range(1, n + 1) if n % k == 0 and g % k == 0) if g % n else n
    if d == 1:
        return
    sub = gen(m, g % n)
    pp = prime_power(d)
    assert P.is_strongly_irreducible(m, sub).verdict == pp
    assert P.is_irreducible(m, sub).verdict == pp
    assert P.is_primary_submodule(m, sub).verdict == pp
    assert P.is_primal(m, sub).verdict == pp
    assert P.is_prime_submodule(m, sub).verdict == (pp and all(d % q for q in range(2, d)))


def test_irreducible_examples(local8):
    m = z(12)
    v = P.is_irreducible(m, gen(m, 6))
    assert not v.verdict
    assert {tuple(elems(v.witness["K"])), tuple(elems(v.witness["L"]))} == {
        tuple(elems(gen(m, 2))), tuple(elems(gen(m, 3)))}
    assert P.is_irreducible(local8, gen(local8, X)).verdict
    for mx in (gen(m, 2), gen(m, 3)):
        assert P.is_irreducible(m, mx).verdict


def test_strongly_irreducible_examples(local8):
    m = z(12)
    assert P.is_strongly_irreducible(m, gen(m, 4)).verdict
    v = P.is_strongly_irreducible_exhaustive(m, gen(m, 6))
    assert not v.verdict
    k, l = v.witness["K"], v.witness["L"]
    assert k.bits & l.bits == 1 and elems(k) == [0, 4, 8] and elems(l) == [0, 3, 6, 9]
    w = P.is_strongly_irreducible(local8, gen(local8, X))
    assert not w.verdict
    pair = {tuple(elems(w.witness["K"])), tuple(elems(w.witness["L"]))}
    assert pair == {(0, Y), (0, XY)}
    assert w.witness["K"].bits & w.witness["L"].bits == 1
    with pytest.raises(PreconditionError):
        P.is_strongly_irreducible(m, m.whole)


def test_prime_primary_primal_examples():
    m = z(12)
    field = z(5)
    assert P.is_prime_submodule(field, field.zero_sub).verdict
    assert P.is_prime_submodule(m, gen(m, 2)).verdict
    v = P.is_prime_submodule(m, gen(m, 4))
    assert not v.verdict
    primary = P.is_primary_submodule(m, gen(m, 4))
    assert primary.verdict and elems(primary.data["prime"]) == [0, 2, 4, 6, 8, 10]
    assert not P.is_primary_submodule(m, gen(m, 6)).verdict
    primal = P.is_primal(m, gen(m, 4))
    assert primal.verdict and elems(primal.data["adjoint_prime"]) == [0, 2, 4, 6, 8, 10]
    assert not P.is_primal(m, gen(m, 6)).verdict


def test_sheltered_examples():
    z8 = z(8)
    v = P.is_sheltered(z8, gen(z8, 4))
    assert v.verdict and elems(v.data["shelter"]) == [0, 2, 4, 6]
    assert P.is_sheltered(z8, gen(z8, 2)).data["shelter"] == z8.whole
    sq = f2_square()
    assert not P.is_sheltered(sq, sq.zero_sub).verdict


def test_distributive_examples(local8):
    assert P.is_distributive_module(z(8)).verdict
    assert P.is_distributive_module(z(12)).verdict
    v = P.is_distributive_module(local8)
    assert not v.verdict
    # the witness is a genuine failure of K ∩ (L + N) = K∩L + K∩N
    k, l, n = v.witness["K"], v.witness["L"], v.witness["N"]
    from smlab.finmod import sub_intersect, sub_sum
    assert sub_intersect(k, sub_sum(l, n)) != sub_sum(sub_intersect(k, l), sub_intersect(k, n)) or \
        sub_sum(k, sub_intersect(l, n)) != sub_intersect(sub_sum(k, l), sub_sum(k, n))
    assert {tuple(elems(k)), tuple(elems(l))} == {(0, X), (0, Y)} and elems(n) == [0, XY]


def test_uniserial_arithmetical_examples(local8):
    assert P.is_uniserial(z(8)).verdict and P.is_arithmetical(z(8)).verdict
    assert not P.is_uniserial(z(12)).verdict and P.is_arithmetical(z(12)).verdict
    assert not P.is_arithmetical(local8).verdict


def test_multiplication_examples(local8):
    assert P.is_multiplication_module(local8).verdict   # regular modules always are
    assert P.is_multiplication_module(z(12)).verdict
    assert not P.is_multiplication_module(f2_square()).verdict


def test_radical_submodule_examples():
    m = z(12)
    assert elems(P.radical_submodule(m, gen(m, 4))) == [0, 2, 4, 6, 8, 10]
    assert P.radical_submodule(m, gen(m, 3)) == gen(m, 3)


def test_colon_identities_examples(local8):
    assert P.colon_identities(z(8)).verdict
    assert P.colon_identities(z(12)).verdict
    v = P.colon_identities(local8)
    assert not v.verdict and not v.data["iii"]


def _ideal_sum_bits(r, a, b):
    from smlab.finring import IdealSet, ideal_sum
    return ideal_sum(IdealSet(r, a), IdealSet(r, b)).bits


@pytest.mark.parametrize("build", SMALL)
def test_colon_identity_iii_by_hand(build):
    """(K+L):N = (K:N)+(L:N), recomputed from colon_ideal directly."""
    m = build()
    lat = list(m.lattice)
    holds = True
    for k, l, n in itertools.product(lat, repeat=3):
        lhs = colon_ideal(Submodule(m, m.lattice.join(k.bits, l.bits)), n).bits
        rhs = _ideal_sum_bits(m.ring, colon_ideal(k, n).bits, colon_ideal(l, n).bits)
        holds &= lhs == rhs
    assert P.colon_identity_iii(m).verdict == holds


@pytest.mark.parametrize("build", SMALL)
def test_thm31_equivalence(build):
    m = build()
    verdicts = {P.is_arithmetical(m).verdict, P.is_distributive_module(m).verdict,
                P.colon_identity_iii(m).verdict, P.colon_identity_iv(m).verdict,
                P.all_submodules_multiplication(m).verdict}
    assert len(verdicts) == 1


def test_multiplication_submodule_matches_definition():
    m = z(12)
    for u in m.lattice:
        want = all(ideal_times(colon_ideal(k, u), u) == k for k in m.lattice if k <= u)
        assert P.is_multiplication_submodule(m, u).verdict == want


def test_verdict_json_roundtrip():
    m = z(12)
    doc = P.is_strongly_irreducible(m, gen(m, 6)).to_json()
    assert doc["verdict"] is False and doc["witness"]["K"] == [0, 4, 8]
