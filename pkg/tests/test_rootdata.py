import random
from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from uoplab.coeffs import GroupAlgElt, LaurentPoly
from uoplab.errors import InvalidDatum, NotFiniteType
from uoplab.rootdata import (
    PRESETS,
    ExtAffWeylElt,
    RootDatum,
    affine_weyl,
    dot_act,
    dot_orbit_sum,
    ext_length,
    is_antidominant,
    is_dot_invariant,
    pair,
    preset,
    weyl_group,
)

q = LaurentPoly.q()


def generic_alcove_point(d, seed=1):
    """A rational point with 0 < <p, a> < 1 for all positive roots, off every wall."""
    rng = random.Random(seed)
    for _ in range(200_000):
        p = tuple(Fraction(rng.randint(-997, 997), 997) for _ in range(d.n))
        vals = [pair(p, a) for a in d.positive_roots]
        if all(0 < x < 1 for x in vals) and len(set(vals)) == len(vals):
            return p
    raise AssertionError("no alcove point found")


def separating_hyperplanes(d, x, p):
    """Number of affine root hyperplanes between p and x(p) = lam + w p."""
    image = tuple(a + b for a, b in zip(x.lam, x.w.act(p)))
    total = 0
    for a in d.positive_roots:
        lo, hi = sorted((pair(p, a), pair(image, a)))
        # integers strictly between two non-integers
        total += len([k for k in range(int(lo) - 2, int(hi) + 3) if lo < k < hi])
    return total


@pytest.mark.parametrize("name, order", [("gl2", 2), ("sl2", 2), ("pgl2", 2), ("gl3", 6), ("sl3", 6), ("sp4", 8)])
def test_weyl_orders(name, order):
    assert len(weyl_group(preset(name))) == order


@pytest.mark.parametrize("name", sorted(PRESETS))
def test_length_matches_hyperplane_count(name):
    d = preset(name)
    p = generic_alcove_point(d)
    for x in affine_weyl(d).elements_in_box(2):
        assert ext_length(d, x) == separating_hyperplanes(d, x, p), x


def test_gl2_length_examples():
    d = preset("gl2")
    W = d.weyl
    s = W.simple[0]
    assert ext_length(d, ExtAffWeylElt((1, 0), W.identity)) == 1
    assert ext_length(d, ExtAffWeylElt((0, 0), W.identity)) == 0
    # omega = t_{(1,0)} s normalises the alcove
    assert ext_length(d, ExtAffWeylElt((1, 0), s)) == 0


@pytest.mark.parametrize("name", ["gl2", "gl3", "sp4"])
def test_word_search_reaches_the_same_lengths(name):
    """Breadth-first search over words in wall reflections, started from the
    elements that fix the alcove (both read off from hyperplane counts)."""
    d = preset(name)
    aw = affine_weyl(d)
    p = generic_alcove_point(d)
    pool = aw.elements_in_box(3)
    zero = [x for x in pool if separating_hyperplanes(d, x, p) == 0]
    walls = [x for x in pool if separating_hyperplanes(d, x, p) == 1 and aw.mul(x, x) == aw.identity]
    dist = {x: 0 for x in zero}
    frontier = list(zero)
    for k in range(1, 5):
        nxt = []
        for x in frontier:
            for s in walls:
                y = aw.mul(x, s)
                if y not in dist:
                    dist[y] = k
                    nxt.append(y)
        frontier = nxt
    for x, k in dist.items():
        assert ext_length(d, x) == k
    if name == "gl3":
        assert dist[aw.translation((1, 0, 0))] == 2


@pytest.mark.parametrize("name", sorted(PRESETS))
def test_length_changes_by_one_and_inverse(name):
    d = preset(name)
    aw = affine_weyl(d)
    for x in aw.elements_in_box(2):
        assert ext_length(d, aw.inverse(x)) == ext_length(d, x)
        for s in aw.simple:
            assert abs(ext_length(d, aw.mul(x, s)) - ext_length(d, x)) == 1


def test_reduced_words_rebuild_the_element():
    d = preset("sp4")
    aw = affine_weyl(d)
    for x in aw.elements_in_box(2, 6):
        omega, word = aw.reduced_word(x)
        assert ext_length(d, omega) == 0 and len(word) == ext_length(d, x)
        y = omega
        for i in word:
            y = aw.mul(y, aw.simple[i])
        assert y == x


def test_cone_examples():
    d = preset("gl2")
    assert is_antidominant(d, (1, 0))
    assert not is_antidominant(d, (0, 1))
    assert is_antidominant(d, (1, 1))


def test_dot_action_examples():
    d = preset("gl2")
    s = d.weyl.simple[0]
    assert dot_act(d, s, GroupAlgElt.e((1, 0))) == GroupAlgElt.e((0, 1), q)
    assert dot_act(d, s, GroupAlgElt.e((3, 3))) == GroupAlgElt.e((3, 3))
    r = GroupAlgElt.e((2, -1), q) + GroupAlgElt.e((0, 1))
    assert dot_act(d, d.weyl.identity, r) == r


def test_orbit_sum_examples():
    gl2, gl3 = preset("gl2"), preset("gl3")
    e = GroupAlgElt.e
    assert dot_orbit_sum(gl2, (1, 0)) == e((1, 0)) + e((0, 1), q)
    assert dot_orbit_sum(gl2, (1, 1)) == e((1, 1))
    assert dot_orbit_sum(gl3, (1, 1, 0)) == e((1, 1, 0)) + e((1, 0, 1), q) + e((0, 1, 1), q * q)


@pytest.mark.parametrize("name", sorted(PRESETS))
def test_cexp_nonnegative_and_integral_on_cone(name):
    d = preset(name)
    for lam in product(range(-3, 4), repeat=d.n):
        for w in d.weyl:
            c = d.cexp(lam, w)
            assert isinstance(c, int)
            if d.is_antidominant(lam):
                assert c >= 0


@given(
    st.sampled_from(["gl2", "gl3", "sl3", "sp4"]),
    st.data(),
)
@settings(max_examples=40, deadline=None)
def test_dot_action_is_a_group_action(name, data):
    d = preset(name)
    elems = list(d.weyl)
    w = data.draw(st.sampled_from(elems))
    u = data.draw(st.sampled_from(elems))
    lam = data.draw(st.tuples(*[st.integers(-3, 3)] * d.n))
    r = GroupAlgElt.e(lam, q + 1) + GroupAlgElt.e(tuple(-x for x in lam))
    assert dot_act(d, w, dot_act(d, u, r)) == dot_act(d, d.weyl.mul(w, u), r)


@pytest.mark.parametrize("name", sorted(PRESETS))
def test_orbit_sums_are_invariant(name):
    d = preset(name)
    for lam in product(range(-2, 3), repeat=d.n):
        if d.is_antidominant(lam):
            assert is_dot_invariant(d, dot_orbit_sum(d, lam))


def test_bad_pairing_is_rejected():
    with pytest.raises(InvalidDatum, match="!= 2"):
        RootDatum("bad", 1, ((3,),), ((3,),), ((1,),))


def test_simple_root_must_be_positive():
    with pytest.raises(InvalidDatum):
        RootDatum("bad", 2, ((1, -1),), ((1, 1),), ((1, 1),))


def test_weyl_bound_from_environment(monkeypatch):
    monkeypatch.setenv("UOPLAB_MAX_WEYL", "4")
    fresh = RootDatum("gl3-copy", 3, ((1, -1, 0), (0, 1, -1)),
                      ((1, -1, 0), (0, 1, -1), (1, 0, -1)), ((1, -1, 0), (0, 1, -1), (1, 0, -1)))
    with pytest.raises(NotFiniteType):
        fresh.weyl


def test_json_round_trip():
    d = preset("sp4")
    j = d.to_json()
    again = RootDatum(j["name"], j["rank"], j["simple_roots"], j["positive_roots"], j["positive_coroots"])
    assert again == d
    assert d.two_rho == (4, 2)
