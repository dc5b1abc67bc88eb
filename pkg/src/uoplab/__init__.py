"""Exact Iwahori-Hecke arithmetic, Satake transforms, U-operator integrality
certificates and a rank-one tree model."""

from .coeffs import GroupAlgElt, LaurentPoly, ga_mul, lp_eval_q, lp_mul
from .errors import UoplabError
from .hecke import (
    BernsteinForm,
    HeckeAlgebra,
    HeckeElt,
    bernstein_form,
    hecke_algebra,
    hk_mul,
    project_IK,
    satake,
    satake_inverse,
    spherical_elt,
    t_inverse,
    theta,
    theta_of,
)
from .rootdata import (
    ExtAffWeylElt,
    RootDatum,
    dot_act,
    dot_orbit_sum,
    ext_length,
    is_antidominant,
    preset,
    weyl_group,
)
from .uops import IntegralityCertificate, UOperator, integrality_certificate, orbit_char_poly, u_ring_product

__version__ = "0.1.0"
