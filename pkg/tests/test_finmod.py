import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from smlab.errors import PreconditionError
from smlab.finmod import (
    annihilator,
    ass_module,
    colon_ideal,
    colon_into_module,
    cyclic_submodules,
    enumerate_submodules,
    gamma,
    ideal_times,
    localize,
    mass_module,
    mod_cyclic,
    mod_direct_sum,
    mod_quotient,
    mod_regular,
    mod_validate,
    saturate,
    sub_intersect,
    sub_sum,
    submodule_generated,
    symbolic_power,
)
from smlab.finring import (
    ideal_generated,
    ideal_power,
    prime_ideals,
    ring_polyquot,
    ring_product,
    ring_truncpoly,
    ring_zmod,
)


def elems(s):
    return sorted(int(x) for x in s.elements)


def z(n):
    return mod_regular(ring_zmod(n))


def ideal(r, *gens):
    return ideal_generated(r, list(gens))


def f2_square():
    r = ring_zmod(2)
    return mod_direct_sum(mod_regular(r), mod_regular(r))


def _z4_plus_z2():
    r = ring_zmod(4)
    return mod_direct_sum(mod_regular(r), mod_cyclic(r, ideal(r, 2)))


SMALL = [
    lambda: z(2), lambda: z(12), lambda: z(16), lambda: f2_square(),
    lambda: mod_regular(ring_truncpoly(2, 2, 2)),
    lambda: mod_regular(ring_product(ring_zmod(2), ring_zmod(2))),
    lambda: _z4_plus_z2(),
    lambda: mod_regular(ring_polyquot(2, [0, 0, 1])),
    lambda: mod_regular(ring_polyquot(3, [1, 0, 1])),
]


@pytest.mark.parametrize("build", SMALL)
def test_lattice_matches_brute_force(build, brute):
    m = build()
    mod_validate(m)
    lat = enumerate_submodules(m)
    assert {frozenset(elems(s)) for s in lat} == brute(m)
    assert len(lat) == len(brute(m))


@pytest.mark.parametrize("build", SMALL)
def test_lattice_closed_and_ordered(build):
    m = build()
    lat = enumerate_submodules(m)
    bits = set(lat.bits)
    assert m.zero_sub.bits in bits and m.whole.bits in bits
    for a in lat:
        for b in lat:
            assert sub_sum(a, b).bits in bits
            assert sub_intersect(a, b).bits in bits
    keys = [s.key() for s in lat]
    assert keys == sorted(keys)
    # cover pairs are exactly the strict inclusions with nothing strictly between
    subs = lat.all
    for i, j in lat.covers:
        assert subs[i] < subs[j]
        assert not any(subs[i] < k < subs[j] for k in subs)


def test_lattice_counts():
    assert len(enumerate_submodules(z(2))) == 2
    assert len(enumerate_submodules(z(12))) == 6
    assert len(enumerate_submodules(f2_square())) == 5
    assert len(cyclic_submodules(f2_square())) == 4


def test_generation_examples():
    m = z(12)
    assert elems(submodule_generated(m, [])) == [0]
    assert elems(submodule_generated(m, [3])) == [0, 3, 6, 9]
    sq = f2_square()
    assert elems(submodule_generated(sq, [3])) == [0, 3]   # (1,1) has index 3


def test_sum_intersection_examples():
    m = z(12)
    four, six, three = (submodule_generated(m, [g]) for g in (4, 6, 3))
    assert elems(sub_sum(four, six)) == [0, 2, 4, 6, 8, 10]
    assert elems(sub_intersect(four, three)) == [0]
    assert sub_sum(four, m.zero_sub) == four
    assert sub_intersect(four, m.whole) == four


def test_colon_examples():
    m = z(12)
    four = submodule_generated(m, [4])
    assert elems(colon_ideal(four, m.whole)) == [0, 4, 8]
    assert colon_ideal(four, m.zero_sub) == m.ring.whole
    sq = f2_square()
    assert elems(colon_ideal(sq.zero_sub, sq.whole)) == [0]
    z8 = z(8)
    max8 = ideal(z8.ring, 2)
    assert elems(colon_into_module(submodule_generated(z8, [4]), max8)) == [0, 2, 4, 6]
    assert colon_into_module(four, m.ring.whole) == four
    assert colon_into_module(m.zero_sub, m.ring.zero_ideal) == m.whole


def test_ass_examples():
    assert [elems(p) for p in ass_module(z(7))] == [[0]]
    ass12 = sorted(elems(p)[1] for p in ass_module(z(12)))
    assert ass12 == [2, 3]
    assert sorted(elems(p)[1] for p in mass_module(z(12))) == [2, 3]
    assert [elems(p) for p in ass_module(z(8))] == [[0, 2, 4, 6]]
    assert elems(annihilator(f2_square())) == [0]


def test_saturate_examples():
    m = z(12)
    two = ideal(m.ring, 2)
    four = submodule_generated(m, [4])
    assert saturate(four, [two]) == four
    assert elems(saturate(m.zero_sub, [two])) == [0, 4, 8]
    with pytest.raises(PreconditionError):
        saturate(four, [two, ideal(m.ring, 3), m.ring.whole])


@pytest.mark.parametrize("build", SMALL)
def test_saturate_idempotent_extensive(build):
    m = build()
    for p in prime_ideals(m.ring):
        for n in enumerate_submodules(m):
            s = saturate(n, [p])
            assert n <= s and saturate(s, [p]) == s


def test_symbolic_power_examples():
    z8 = z(8)
    assert elems(symbolic_power(z8, ideal(z8.ring, 2), 2)) == [0, 4]
    m = z(12)
    assert elems(symbolic_power(m, ideal(m.ring, 2), 2)) == [0, 4, 8]
    with pytest.raises(PreconditionError):
        symbolic_power(m, m.ring.whole, 1)


@pytest.mark.parametrize("build", SMALL)
def test_symbolic_power_contains_power(build):
    m = build()
    for a in m.ring.ideal_lattice:
        if ideal_times(a, m.whole) == m.whole:
            continue
        for n in (1, 2, 3):
            sp = symbolic_power(m, a, n)
            an = ideal_power(a, n)
            assert ideal_times(an, m.whole) <= sp
            assert an <= colon_ideal(sp, m.whole)


def test_localize_examples():
    m = z(12)
    at2 = localize(m, ideal(m.ring, 2))
    assert at2.ring.size == 4 and at2.module.size == 4
    at3 = localize(m, ideal(m.ring, 3))
    assert at3.ring.size == 3
    z8 = z(8)
    assert localize(z8, ideal(z8.ring, 2)).module.size == 8
    with pytest.raises(PreconditionError):
        localize(m, ideal(m.ring, 4))


@pytest.mark.parametrize("build", SMALL)
def test_localize_units_act_bijectively(build):
    m = build()
    for w in prime_ideals(m.ring):
        loc = localize(m, w)
        mod_validate(loc.module)
        assert m.size % loc.module.size == 0
        outside = np.flatnonzero(~w.ideal.members)
        for s in outside:
            image = loc.module_proj[m.act[s]]
            s_p = loc.ring_proj[s]
            assert len(set(loc.module.act[s_p].tolist())) == loc.module.size
            # the induced action agrees with acting before projecting
            assert (loc.module.act[s_p][loc.module_proj] == image).all()


def test_gamma_examples():
    m = z(12)
    assert elems(gamma(m, ideal(m.ring, 2))) == [0, 3, 6, 9]
    assert elems(gamma(m, m.ring.whole)) == [0]
    assert gamma(m, m.ring.zero_ideal) == m.whole


def test_quotient_and_cyclic():
    m = z(12)
    q, proj = mod_quotient(m, submodule_generated(m, [4]))
    mod_validate(q)
    assert q.size == 4 and len(set(proj.tolist())) == 4
    r = ring_zmod(6)
    assert mod_cyclic(r, r.zero_ideal).size == mod_regular(r).size
    c = mod_cyclic(r, ideal(r, 2))
    mod_validate(c)
    assert c.size == 2


@given(st.integers(2, 48))
@settings(max_examples=20, deadline=None)
def test_zmod_submodules_are_divisor_ideals(n):
    lat = enumerate_submodules(z(n))
    assert len(lat) == sum(1 for d in range(1, n + 1) if n % d == 0)
    assert all(len(s) * (n // len(s)) == n for s in lat)
