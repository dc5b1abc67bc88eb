import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from uoplab import uops
from uoplab.coeffs import GroupAlgElt, LaurentPoly
from uoplab.errors import CheckFailure, NotAntidominant, RankMismatch
from uoplab.hecke import HeckeAlgebra
from uoplab.rootdata import is_dot_invariant, preset
from uoplab.uops import UOperator, integrality_certificate, orbit_char_poly, u_ring_product

q = LaurentPoly.q()
e = GroupAlgElt.e


def test_gl2_orbit_polynomial():
    # X^2 - (e10 + q e01) X + q e11
    c0, c1, c2 = orbit_char_poly(preset("gl2"), (1, 0))
    assert c2 == GroupAlgElt.one(2)
    assert c1 == -(e((1, 0)) + e((0, 1), q))
    assert c0 == e((1, 1), q)


def test_orbit_polynomial_degree_is_orbit_size():
    for name, lam, deg in [("gl2", (1, 1), 1), ("gl3", (1, 0, 0), 3), ("gl3", (1, 1, 0), 3), ("sp4", (1, 0), 4),
                           ("sp4", (1, 1), 4), ("sl3", (2, 1), 3), ("sl3", (1, 1), 6)]:
        d = preset(name)
        poly = orbit_char_poly(d, lam)
        assert len(poly) - 1 == deg
        assert all(is_dot_invariant(d, c) for c in poly)


def test_orbit_polynomial_errors():
    d = preset("gl2")
    with pytest.raises(NotAntidominant):
        orbit_char_poly(d, (0, 1))
    with pytest.raises(RankMismatch):
        orbit_char_poly(d, (1, 0, 0))


def test_gl2_certificate_is_the_classical_hecke_polynomial():
    cert = integrality_certificate(preset("gl2"), (1, 0))
    assert cert.passed and cert.degree == 2
    sph = [s.terms for s in cert.spherical]
    assert sph[2] == {(0, 0): 1}
    assert sph[1] == {(1, 0): -1}
    assert sph[0] == {(1, 1): q}
    assert set(cert.checks) == {"hecke_identity", "projected_identity", "satake_roundtrip"}
    assert [s["q"] for s in cert.q_specializations] == [2, 4, 9]


@pytest.mark.parametrize("name, lam", [("gl3", (1, 0, 0)), ("gl3", (1, 1, 0)), ("sl2", (1,)), ("pgl2", (1,))])
def test_certificates_pass(name, lam):
    assert integrality_certificate(preset(name), lam).passed


def test_sp4_degree_four_at_q_two():
    d = preset("sp4")
    cert = integrality_certificate(d, (1, 0), specializations=())
    assert cert.degree == 4
    # evaluate again by hand in the algebra specialized at q = 2
    B = HeckeAlgebra(d, 2)
    th = B.theta((1, 0))
    total = B.zero()
    for k, c in enumerate(cert.polynomial):
        total = total + (th ** k) * B.theta_of(c)
    assert not total


def test_wrong_polynomial_fails_the_hecke_layer(monkeypatch):
    real = uops.orbit_char_poly

    def doubled_constant(d, lam):
        poly = real(d, lam)
        return [poly[0].scale(2)] + poly[1:]

    monkeypatch.setattr(uops, "orbit_char_poly", doubled_constant)
    with pytest.raises(CheckFailure) as info:
        integrality_certificate(preset("gl2"), (1, 0))
    assert info.value.layer == "hecke_identity"
    cert = integrality_certificate(preset("gl2"), (1, 0), specializations=(), strict=False)
    assert not cert.passed and cert.checks["hecke_identity"] is False


def test_certificate_json_schema():
    doc = json.loads(json.dumps(integrality_certificate(preset("gl2"), (1, 0)).to_json()))
    assert doc["group"] == "gl2" and doc["lambda"] == [1, 0] and doc["degree"] == 2
    assert [c["power"] for c in doc["coefficients"]] == [0, 1, 2]
    for c in doc["coefficients"]:
        assert set(c) == {"power", "spherical", "satake", "lambda_function"}
    assert doc["coefficients"][0]["spherical"] == [{"coweight": [1, 1], "weight": "q"}]
    assert all(s["hecke_identity"] and s["projected_identity"] for s in doc["q_specializations"])
    assert all(doc["checks"].values())


def test_certificate_text():
    text = str(integrality_certificate(preset("gl2"), (1, 0)))
    assert "degree=2" in text and "FAILED" not in text


def test_u_operator_cone():
    d = preset("gl2")
    with pytest.raises(NotAntidominant):
        UOperator.basic(d, (0, 1))
    u = UOperator.basic(d, (1, 0))
    assert (u * u).r == e((2, 0))


cone_gl2 = st.tuples(st.integers(0, 3), st.integers(0, 3)).map(lambda t: (t[0] + t[1], t[1]))
u_ops = st.lists(st.tuples(cone_gl2, st.sampled_from([LaurentPoly.one(), q, -q + 1])), min_size=1, max_size=3).map(
    lambda ts: UOperator.of(preset("gl2"), sum((e(m, c) for m, c in ts), GroupAlgElt.zero(2)))
)


@given(u_ops, u_ops, u_ops)
@settings(max_examples=40)
def test_u_ring_is_commutative_and_associative(a, b, c):
    assert u_ring_product(a, b) == u_ring_product(b, a)
    assert u_ring_product(u_ring_product(a, b), c) == u_ring_product(a, u_ring_product(b, c))
    # the cone is closed under addition
    UOperator.of(preset("gl2"), (a * b).r)
