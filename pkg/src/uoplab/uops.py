"""
U-operators and their integrality over the spherical Hecke algebra.

A U-operator is indexed by an element of the cone subring of R.  For a cone
coweight lam the orbit polynomial

    P_lam(X) = prod over the orbit W0.lam of (X - q^{c} e_{w lam})

has dot-invariant coefficients, so each coefficient is the Satake image of a
spherical function.  The certificate checks P_lam(theta_lam) = 0 in H_I and
after projecting to functions on I\\G/K, then records the spherical
coefficients.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Sequence

from .coeffs import Coweight, GroupAlgElt, LaurentPoly
from .errors import CheckFailure, NotAntidominant, RankMismatch
from .hecke import HeckeAlgebra, LambdaFunction, SphericalCombination, hecke_algebra
from .rootdata import RootDatum, dot_orbit_sum, is_dot_invariant

DEFAULT_SPECIALIZATIONS = (2, 4, 9)


@dataclass(frozen=True)
class UOperator:
    """u_r for r supported in the cone; products are products of the r."""

    r: GroupAlgElt

    @classmethod
    def of(cls, d: RootDatum, r: GroupAlgElt) -> "UOperator":
        outside = [lam for lam in r.support() if not d.is_antidominant(lam)]
        if outside:
            raise NotAntidominant(f"{sorted(outside)[0]} is not in the cone")
        return cls(r)

    @classmethod
    def basic(cls, d: RootDatum, lam: Sequence[int]) -> "UOperator":
        return cls.of(d, GroupAlgElt.e(tuple(lam)))

    def __mul__(self, other: "UOperator") -> "UOperator":
        return u_ring_product(self, other)


def u_ring_product(a: UOperator, b: UOperator) -> UOperator:
    return UOperator(a.r * b.r)


def orbit_char_poly(d: RootDatum, lam: Sequence[int]) -> List[GroupAlgElt]:
    """Coefficients of X^0, ..., X^deg of the dot-orbit polynomial of e_lam."""
    lam = tuple(lam)
    if len(lam) != d.n:
        raise RankMismatch(f"{lam} has rank {len(lam)}, expected {d.n}")
    if not d.is_antidominant(lam):
        raise NotAntidominant(f"{lam} is not in the cone")
    roots = list(dot_orbit_sum(d, lam).items())
    coeffs = [GroupAlgElt.one(d.n)]
    for mu, c in roots:
        root = GroupAlgElt.e(mu, c)
        nxt = [GroupAlgElt.zero(d.n)] * (len(coeffs) + 1)
        for k, a in enumerate(coeffs):
            nxt[k + 1] = nxt[k + 1] + a
            nxt[k] = nxt[k] - a * root
        coeffs = nxt
    for k, c in enumerate(coeffs):
        if not is_dot_invariant(d, c):
            raise CheckFailure("orbit_polynomial", f"coefficient of X^{k} is not dot-invariant")
    return coeffs


@dataclass
class IntegralityCertificate:
    group: str
    lam: Coweight
    degree: int
    polynomial: List[GroupAlgElt]
    spherical: List[SphericalCombination]
    projections: List[LambdaFunction]
    checks: Dict[str, bool]
    q_specializations: List[dict] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(self.checks.values()) and all(
            s["hecke_identity"] and s["projected_identity"] for s in self.q_specializations
        )

    def to_json(self) -> dict:
        return {
            "group": self.group,
            "lambda": list(self.lam),
            "degree": self.degree,
            "coefficients": [
                {
                    "power": k,
                    "spherical": [
                        {"coweight": list(mu), "weight": _render(c)}
                        for mu, c in sorted(sph.terms.items())
                    ],
                    "satake": str(poly),
                    "lambda_function": proj.to_json(),
                }
                for k, (sph, poly, proj) in enumerate(
                    zip(self.spherical, self.polynomial, self.projections)
                )
            ],
            "checks": dict(self.checks),
            "q_specializations": list(self.q_specializations),
        }

    def __str__(self) -> str:
        lines = [f"{self.group} lambda={','.join(map(str, self.lam))} degree={self.degree}"]
        for k in range(self.degree, -1, -1):
            lines.append(f"  X^{k}: {self.spherical[k]}")
        for name, ok in self.checks.items():
            lines.append(f"  {name}: {'ok' if ok else 'FAILED'}")
        for s in self.q_specializations:
            ok = s["hecke_identity"] and s["projected_identity"]
            lines.append(f"  q={s['q']}: {'ok' if ok else 'FAILED'}")
        return "\n".join(lines)


def _render(c) -> str:
    return c.pretty() if isinstance(c, LaurentPoly) else str(c)


def _evaluate(A: HeckeAlgebra, lam: Coweight, poly: Sequence[GroupAlgElt]):
    """sum_k theta_lam^k theta(c_k), and the same times e_K."""
    th = A.theta(lam)
    total = A.zero()
    power = A.unit()
    for k, c in enumerate(poly):
        if k:
            power = power * th
        total = total + power * A.theta_of(c)
    return total, total * A.e_K()


def integrality_certificate(
    d: RootDatum,
    lam: Sequence[int],
    specializations: Sequence[int] = DEFAULT_SPECIALIZATIONS,
    strict: bool = True,
) -> IntegralityCertificate:
    """Build and verify the monic annihilating polynomial of u_lam.

    With ``strict`` the first failing layer raises CheckFailure; otherwise the
    outcome is only recorded in ``checks``.
    """
    lam = tuple(lam)
    poly = orbit_char_poly(d, lam)
    A = hecke_algebra(d)
    checks: Dict[str, bool] = {}

    def record(name: str, ok: bool) -> None:
        checks[name] = ok
        if strict and not ok:
            raise CheckFailure(name, f"{d.name} lambda={lam}")

    total, projected = _evaluate(A, lam, poly)
    record("hecke_identity", not total)
    record("projected_identity", not projected)

    spherical = [A.satake_inverse(c) for c in poly]
    back = [A.satake(s.to_hecke(A)) for s in spherical]
    monic = spherical[-1].terms == {(0,) * d.n: LaurentPoly.one()}
    record("satake_roundtrip", back == poly and monic)
    projections = [A.project_IK(A.theta_of(c)) for c in poly]

    specs = []
    for q in specializations:
        B = HeckeAlgebra(d, q)
        t, p = _evaluate(B, lam, poly)
        specs.append({"q": q, "hecke_identity": not t, "projected_identity": not p})
        if strict and (t or p):
            raise CheckFailure(f"specialization q={q}", f"{d.name} lambda={lam}")
    return IntegralityCertificate(d.name, lam, len(poly) - 1, poly, spherical, projections, checks, specs)
