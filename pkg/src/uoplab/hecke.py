"""
The Iwahori-Hecke algebra in the T-basis, Bernstein elements, the spherical
subalgebra and the twisted Satake transform.

Coefficients are function values: the coefficient of ``T_x`` is the value on
the double coset ``IxI`` and convolution gives ``I`` volume one, so

    T_x T_s = T_{xs}                      if l(xs) > l(x)
    T_x T_s = (q - 1) T_x + q T_{xs}      otherwise.

An algebra is either generic (coefficients in Z[v^{+-1}], v^2 = q) or
specialized at an integer q (coefficients in Q); the second form is used to
re-check identities numerically.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from .coeffs import Coweight, GroupAlgElt, LaurentPoly
from .errors import (
    NotAntidominant,
    NotIntegral,
    NotInvariant,
    NotRightKInvariant,
    NotSpherical,
    RankMismatch,
    SolveFailure,
)
from .rootdata import (
    AffineWeyl,
    ExtAffWeylElt,
    FiniteWeylElt,
    RootDatum,
    affine_weyl,
    dot_act,
    is_dot_invariant,
    pair,
)

# safety net for the Bernstein elimination; real inputs stop far earlier
_MAX_ELIMINATION_STEPS = 200_000


class HeckeAlgebra:
    """H_I for one root datum, generic or specialized at an integer q."""

    def __init__(self, d: RootDatum, q: Optional[int] = None):
        self.datum = d
        self.aw: AffineWeyl = affine_weyl(d)
        self.W = self.aw.W
        self.q_value = q
        if q is None:
            self.one_c = LaurentPoly.one()
            self.zero_c = LaurentPoly.zero()
            self.q = LaurentPoly.q()
            self.q_inv = LaurentPoly.monomial(-2)
        else:
            self.one_c = Fraction(1)
            self.zero_c = Fraction(0)
            self.q = Fraction(q)
            self.q_inv = Fraction(1, q)
        self.q_minus_1 = self.q - 1
        self._basis: Dict[Tuple[ExtAffWeylElt, ExtAffWeylElt], Dict[ExtAffWeylElt, object]] = {}
        self._inverse: Dict[ExtAffWeylElt, HeckeElt] = {}
        self._theta: Dict[Coweight, HeckeElt] = {}
        self._left_theta_cache: Dict[Tuple[FiniteWeylElt, Coweight], HeckeElt] = {}
        self._shift: Dict[Coweight, Coweight] = {}
        self._commute_cache: Dict = {}
        self._generator_cache: Dict = {}
        self._form_cache: Dict = {}
        self._poincare = None

    def __repr__(self) -> str:
        where = "generic" if self.q_value is None else f"q={self.q_value}"
        return f"HeckeAlgebra({self.datum.name}, {where})"

    # -- coefficients -----------------------------------------------------

    def coerce(self, c):
        """Bring an int or LaurentPoly into this algebra's coefficient ring."""
        if self.q_value is None:
            return LaurentPoly._coerce(c) if not isinstance(c, LaurentPoly) else c
        if isinstance(c, LaurentPoly):
            return c.eval_q(self.q_value)
        return Fraction(c)

    @property
    def poincare(self):
        """sum_{w in W0} q^{l(w)} = [K : I]."""
        if self._poincare is None:
            self._poincare = self.coerce(self.W.poincare())
        return self._poincare

    # -- elements ---------------------------------------------------------

    def element(self, terms: Mapping[ExtAffWeylElt, object]) -> "HeckeElt":
        return HeckeElt(self, {x: self.coerce(c) for x, c in terms.items()})

    def zero(self) -> "HeckeElt":
        return HeckeElt(self, {})

    def T(self, x: ExtAffWeylElt) -> "HeckeElt":
        return HeckeElt(self, {x: self.one_c})

    def T_finite(self, w: FiniteWeylElt) -> "HeckeElt":
        return self.T(self.aw.finite(w))

    def T_translation(self, lam: Sequence[int]) -> "HeckeElt":
        return self.T(self.aw.translation(lam))

    def unit(self) -> "HeckeElt":
        return self.T(self.aw.identity)

    def e_K(self) -> "HeckeElt":
        """Indicator of K: sum of T_w over W0."""
        return HeckeElt(self, {self.aw.finite(w): self.one_c for w in self.W})

    # -- multiplication ---------------------------------------------------

    def _right_mul_simple(self, terms: Mapping[ExtAffWeylElt, object], s: ExtAffWeylElt) -> Dict:
        aw = self.aw
        out: Dict[ExtAffWeylElt, object] = {}
        for x, c in terms.items():
            xs = aw.mul(x, s)
            if aw.length(xs) > aw.length(x):
                out[xs] = out[xs] + c if xs in out else c
            else:
                a = self.q_minus_1 * c
                b = self.q * c
                out[x] = out[x] + a if x in out else a
                out[xs] = out[xs] + b if xs in out else b
        return {x: c for x, c in out.items() if c}

    def basis_product(self, x: ExtAffWeylElt, y: ExtAffWeylElt) -> Dict[ExtAffWeylElt, object]:
        """T_x T_y as a term dict, memoized along the right factor's reduced word."""
        key = (x, y)
        r = self._basis.get(key)
        if r is not None:
            return r
        aw = self.aw
        i = aw.right_descent(y)
        if i is None:
            r = {aw.mul(x, y): self.one_c}
        else:
            s = aw.simple[i]
            r = self._right_mul_simple(self.basis_product(x, aw.mul(y, s)), s)
        self._basis[key] = r
        return r

    def mul(self, a: "HeckeElt", b: "HeckeElt") -> "HeckeElt":
        if a.parent is not b.parent:
            if a.parent.datum.n != b.parent.datum.n:
                raise RankMismatch(f"rank {a.parent.datum.n} vs {b.parent.datum.n}")
            raise RankMismatch("elements belong to different Hecke algebras")
        out: Dict[ExtAffWeylElt, object] = {}
        for y, cb in b.terms.items():
            for x, ca in a.terms.items():
                cab = ca * cb
                for z, c in self.basis_product(x, y).items():
                    t = cab * c
                    out[z] = out[z] + t if z in out else t
        return HeckeElt(self, {z: c for z, c in out.items() if c})

    # -- inverses and Bernstein elements ----------------------------------

    def t_inverse(self, x: ExtAffWeylElt) -> "HeckeElt":
        """T_x^{-1}, computed from T_x = T_omega T_s1 ... T_sk."""
        r = self._inverse.get(x)
        if r is not None:
            return r
        aw = self.aw
        omega, word = aw.reduced_word(x)
        # T_x^{-1} = T_sk^{-1} ... T_s1^{-1} T_{omega^{-1}}, built by right multiplication
        terms: Dict[ExtAffWeylElt, object] = {aw.identity: self.one_c}
        for i in reversed(word):
            s = aw.simple[i]
            with_s = self._right_mul_simple(terms, s)
            # T_s^{-1} = q^{-1} T_s + (q^{-1} - 1)
            merged: Dict[ExtAffWeylElt, object] = {}
            for z, c in with_s.items():
                merged[z] = self.q_inv * c
            k = self.q_inv - 1
            for z, c in terms.items():
                t = k * c
                merged[z] = merged[z] + t if z in merged else t
            terms = {z: c for z, c in merged.items() if c}
        om_inv = aw.inverse(omega)
        terms = {aw.mul(z, om_inv): c for z, c in terms.items()}
        r = HeckeElt(self, terms)
        self._inverse[x] = r
        return r

    def auxiliary_shift(self, lam: Sequence[int]) -> Coweight:
        """A shortest cone coweight mu with lam + mu in the cone.

        Both conditions only involve the simple roots, so a bounded box search
        finds a minimizer of <mu, 2rho>; a shorter mu keeps T_{t_mu}^{-1} small.
        """
        lam = tuple(lam)
        d = self.datum
        if d.is_antidominant(lam):
            return (0,) * d.n
        cached = self._shift.get(lam)
        if cached is not None:
            return cached
        need = [max(0, -pair(lam, a)) for a in d.simple_roots]
        radius = 2 * max(abs(x) for x in lam) + 2
        best = None
        for mu in product(range(-radius, radius + 1), repeat=d.n):
            if all(pair(mu, a) >= c for a, c in zip(d.simple_roots, need)):
                key = (pair(mu, d.two_rho), sum(abs(x) for x in mu), mu)
                if best is None or key < best:
                    best = key
        if best is None:
            # fall back to a multiple of 2rho^v, which always works
            two_rho_v = tuple(sum(col) for col in zip(*d.positive_coroots))
            k = 0
            while not d.is_antidominant(tuple(a + k * b for a, b in zip(lam, two_rho_v))):
                k += 1
            mu = tuple(k * b for b in two_rho_v)
        else:
            mu = best[2]
        self._shift[lam] = mu
        return mu

    def theta(self, lam: Sequence[int], mu: Optional[Sequence[int]] = None) -> "HeckeElt":
        """Bernstein element T_{t_{lam+mu}} T_{t_mu}^{-1} for cone elements mu, lam + mu."""
        lam = tuple(lam)
        d = self.datum
        if mu is None:
            cached = self._theta.get(lam)
            if cached is not None:
                return cached
            mu = self.auxiliary_shift(lam)
        mu = tuple(mu)
        shifted = tuple(a + b for a, b in zip(lam, mu))
        if not (d.is_antidominant(mu) and d.is_antidominant(shifted)):
            raise NotAntidominant(f"auxiliary {mu} does not put {lam} into the cone")
        if not any(mu):
            r = self.T_translation(lam)
        else:
            r = self.T_translation(shifted) * self.t_inverse(self.aw.translation(mu))
        self._theta.setdefault(lam, r)
        return r

    def theta_of(self, r: GroupAlgElt) -> "HeckeElt":
        if r.n != self.datum.n:
            raise RankMismatch(f"rank {r.n} vs {self.datum.n}")
        out = self.zero()
        for lam, c in r.items():
            out = out + self.theta(lam).scale(self.coerce(c))
        return out

    # -- Bernstein normal form --------------------------------------------

    def _left_theta(self, w: FiniteWeylElt, nu: Coweight) -> "HeckeElt":
        key = (w, nu)
        r = self._left_theta_cache.get(key)
        if r is None:
            # T_w T_{t_{nu+mu}} = T_{w t_{nu+mu}} because nu + mu lies in the cone
            mu = self.auxiliary_shift(nu)
            shifted = tuple(a + b for a, b in zip(nu, mu))
            head = self.T(ExtAffWeylElt(w.act(shifted), w))
            r = head if not any(mu) else head * self.t_inverse(self.aw.translation(mu))
            self._left_theta_cache[key] = r
        return r

    def left_bernstein(self, h: "HeckeElt") -> Dict[FiniteWeylElt, GroupAlgElt]:
        """Coefficients r_w with h = sum_w T_w theta(r_w).

        T_w theta_nu equals a unit times T_{w t_nu} plus strictly shorter
        terms, so the system is unitriangular for the length order.
        """
        if self.q_value is not None:
            raise SolveFailure("Bernstein elimination runs over Z[v^{+-1}] only")
        aw = self.aw
        n = self.datum.n
        rem = dict(h.terms)
        out: Dict[FiniteWeylElt, Dict[Coweight, LaurentPoly]] = {}
        steps = 0
        while rem:
            steps += 1
            if steps > _MAX_ELIMINATION_STEPS:
                raise SolveFailure("elimination did not terminate")
            x = max(rem, key=lambda z: (aw.length(z), z.sort_key()))
            lx = aw.length(x)
            w = x.w
            nu = self.W.inverse(w).act(x.lam)
            e = self._left_theta(w, nu).terms
            lead = e.get(x)
            if lead is None or not lead.is_unit():
                raise SolveFailure(f"pivot T_{x} has coefficient {lead} in T_w theta_nu")
            c = rem[x] * lead.unit_inverse()
            for z, a in e.items():
                if z != x and aw.length(z) >= lx:
                    raise SolveFailure(f"T_w theta_nu is not triangular at {x}")
                t = rem.get(z, self.zero_c) - c * a
                if t:
                    rem[z] = t
                else:
                    rem.pop(z, None)
            bucket = out.setdefault(w, {})
            bucket[nu] = bucket[nu] + c if nu in bucket else c
        return {
            w: GroupAlgElt(n, {nu: c for nu, c in terms.items() if c}) for w, terms in out.items()
        }

    def _bernstein_commute(self, s_index: int, r: GroupAlgElt) -> GroupAlgElt:
        """The element B with T_s theta(r) = theta(s . r) T_s + theta(B), s . r the dot-action.

        For k = <m, a> the correction for e_m is
        (q - 1) sum_{0 <= j < k} q^j e_{m - j a^v} when k > 0 and
        -(q - 1) sum_{1 <= j <= -k} q^{-j} e_{m + j a^v} when k < 0.
        """
        d = self.datum
        i = d.simple_indices[s_index]
        a, a_v = d.positive_roots[i], d.positive_coroots[i]
        qm1 = LaurentPoly.q() - 1
        terms: Dict[Coweight, LaurentPoly] = {}
        for m, c in r.items():
            k = pair(m, a)
            if k > 0:
                steps = [(-j, LaurentPoly.monomial(2 * j)) for j in range(k)]
            else:
                steps = [(j, LaurentPoly.monomial(-2 * j, -1)) for j in range(1, -k + 1)]
            for j, weight in steps:
                key = tuple(x + j * y for x, y in zip(m, a_v))
                t = c * qm1 * weight
                terms[key] = terms[key] + t if key in terms else t
        return GroupAlgElt(d.n, terms)

    def _commute_through(self, w: FiniteWeylElt, r: GroupAlgElt) -> Dict[FiniteWeylElt, GroupAlgElt]:
        """T_w theta(r) rewritten as sum_u theta(g_u) T_u."""
        W = self.W
        form: Dict[FiniteWeylElt, GroupAlgElt] = {W.identity: r}
        q = LaurentPoly.q()
        for j in reversed(w.word):
            s = W.simple[j]
            nxt: Dict[FiniteWeylElt, GroupAlgElt] = {}

            def add(u, g):
                if g:
                    nxt[u] = nxt[u] + g if u in nxt else g

            for u, g in form.items():
                sg = dot_act(self.datum, s, g)
                su = W.mul(s, u)
                if su.length > u.length:
                    add(su, sg)
                else:
                    add(u, sg.scale(q - 1))
                    add(su, sg.scale(q))
                add(u, self._bernstein_commute(j, g))
            form = {u: g for u, g in nxt.items() if g}
        return form

    def _commute_monomial(self, w: FiniteWeylElt, m: Coweight) -> Dict[FiniteWeylElt, GroupAlgElt]:
        key = (w, m)
        r = self._commute_cache.get(key)
        if r is None:
            r = self._commute_through(w, GroupAlgElt.e(m))
            self._commute_cache[key] = r
        return r

    def right_bernstein(
        self, left: Mapping[FiniteWeylElt, GroupAlgElt]
    ) -> Dict[Tuple[Coweight, FiniteWeylElt], LaurentPoly]:
        """Move every T_w to the right: sum_w T_w theta(r_w) -> sum theta_m T_u c_{m,u}."""
        total: Dict[FiniteWeylElt, GroupAlgElt] = {}
        for w, r in left.items():
            for u, g in self._commute_through(w, r).items():
                total[u] = total[u] + g if u in total else g
        return _flatten(total)

    # right forms: dicts u -> g_u standing for sum_u theta(g_u) T_u

    def _finite_product(self, u: FiniteWeylElt, v: FiniteWeylElt) -> Dict[FiniteWeylElt, LaurentPoly]:
        aw = self.aw
        return {z.w: c for z, c in self.basis_product(aw.finite(u), aw.finite(v)).items()}

    def _form_mul(self, F: Mapping, G: Mapping) -> Dict[FiniteWeylElt, GroupAlgElt]:
        """Product of two right forms, using T_u theta(a) = sum theta(b_u') T_u'."""
        out: Dict[FiniteWeylElt, GroupAlgElt] = {}
        for u, r in F.items():
            for v, a in G.items():
                moved: Dict[FiniteWeylElt, GroupAlgElt] = {}
                for m, c in a.items():
                    for u2, b in self._commute_monomial(u, m).items():
                        b = b.scale(c)
                        moved[u2] = moved[u2] + b if u2 in moved else b
                for u2, b in moved.items():
                    rb = r * b
                    for u3, c in self._finite_product(u2, v).items():
                        t = rb.scale(c)
                        out[u3] = out[u3] + t if u3 in out else t
        return {u: g for u, g in out.items() if g}

    def _generator_form(self, y: ExtAffWeylElt) -> Dict[FiniteWeylElt, GroupAlgElt]:
        r = self._generator_cache.get(y)
        if r is None:
            r = {}
            for (m, u), c in self.right_bernstein(self.left_bernstein(self.T(y))).items():
                g = GroupAlgElt.e(m, c)
                r[u] = r[u] + g if u in r else g
            self._generator_cache[y] = r
        return r

    def basis_form(self, x: ExtAffWeylElt) -> Dict[FiniteWeylElt, GroupAlgElt]:
        """Right form of T_x, built along a reduced word of x.

        Length-zero elements and affine simple reflections are solved by
        elimination once; finite simple reflections multiply in directly.
        """
        r = self._form_cache.get(x)
        if r is not None:
            return r
        aw = self.aw
        i = aw.right_descent(x)
        if i is None:
            r = self._generator_form(x)
        else:
            s = aw.simple[i]
            prev = self.basis_form(aw.mul(x, s))
            if any(s.lam):
                r = self._form_mul(prev, self._generator_form(s))
            else:
                W, q = self.W, LaurentPoly.q()
                r = {}

                def add(u, g):
                    r[u] = r[u] + g if u in r else g

                for u, g in prev.items():
                    us = W.mul(u, s.w)
                    if us.length > u.length:
                        add(us, g)
                    else:
                        add(u, g.scale(q - 1))
                        add(us, g.scale(q))
                r = {u: g for u, g in r.items() if g}
        self._form_cache[x] = r
        return r

    def bernstein_form(self, h: "HeckeElt", method: str = "word", check: bool = True) -> "BernsteinForm":
        """Coordinates c_{m,w} with h = sum c_{m,w} theta_m T_w.

        ``method="word"`` assembles the forms of the T_x along reduced words;
        ``method="eliminate"`` solves the unitriangular system for the whole of h.
        """
        if self.q_value is not None:
            raise SolveFailure("Bernstein forms are computed over Z[v^{+-1}] only")
        if method == "eliminate":
            terms = self.right_bernstein(self.left_bernstein(h))
        elif method == "word":
            total: Dict[FiniteWeylElt, GroupAlgElt] = {}
            for x, c in h.terms.items():
                for u, g in self.basis_form(x).items():
                    t = g.scale(c)
                    total[u] = total[u] + t if u in total else t
            terms = _flatten(total)
        else:
            raise ValueError(f"unknown method {method!r}")
        form = BernsteinForm(self, terms)
        if check and form.expand() != h:
            raise SolveFailure("Bernstein form does not round-trip")
        return form

    # -- spherical algebra ------------------------------------------------

    def spherical_elt(self, lam: Sequence[int]) -> "HeckeElt":
        """1_{K t_lam K}: sum of T_x over W0 t_lam W0."""
        lam = tuple(lam)
        if not self.datum.is_antidominant(lam):
            raise NotAntidominant(f"{lam} is not in the cone")
        terms = {}
        for mu in self.W.orbit(lam):
            for u in self.W:
                terms[type(self.aw.identity)(mu, u)] = self.one_c
        return HeckeElt(self, terms)

    def is_spherical(self, h: "HeckeElt") -> bool:
        """Bi-K-invariance: coefficients constant on W0 x W0 double cosets."""
        for x, c in h.terms.items():
            for mu in self.W.orbit(x.lam):
                for u in self.W:
                    if h.terms.get(type(x)(mu, u)) != c:
                        return False
        return True

    def convolve_K(self, a: "HeckeElt", b: "HeckeElt") -> "HeckeElt":
        """Product in H_K with K of volume one: (a * b) / [K : I]."""
        prod = a * b
        P = self.poincare
        if self.q_value is None:
            return HeckeElt(self, {x: c.divexact(P) for x, c in prod.terms.items()})
        return HeckeElt(self, {x: c / P for x, c in prod.terms.items()})

    def project_IK(self, h: "HeckeElt") -> "LambdaFunction":
        """pi_a: value of h * e_K on each double coset I t_lam K."""
        f = h * self.e_K()
        values: Dict[Coweight, object] = {}
        for x, c in f.terms.items():
            values.setdefault(x.lam, c)
        for lam, c in values.items():
            for u in self.W:
                if f.terms.get(type(self.aw.identity)(lam, u)) != c:
                    raise NotRightKInvariant(f"h * e_K is not constant on t_{lam} W0")
        return LambdaFunction(self.datum.n, values)

    def satake(self, h: "HeckeElt") -> GroupAlgElt:
        if not self.is_spherical(h):
            raise NotSpherical("element is not bi-K-invariant")
        form = self.bernstein_form(h, check=False)
        raw: Dict[Coweight, LaurentPoly] = {}
        for (m, w), c in form.terms.items():
            t = c * LaurentPoly.monomial(2 * w.length)
            raw[m] = raw[m] + t if m in raw else t
        P = self.W.poincare()
        return GroupAlgElt(self.datum.n, {m: c.divexact(P) for m, c in raw.items() if c})

    def satake_inverse(self, r: GroupAlgElt) -> "SphericalCombination":
        d = self.datum
        if not is_dot_invariant(d, r):
            raise NotInvariant("input is not invariant under the dot-action")
        values = dict(self.project_IK(self.theta_of(r)).terms)
        out: Dict[Coweight, object] = {}
        while values:
            cone = [lam for lam in values if d.is_antidominant(lam)]
            if not cone:
                raise NotIntegral(f"remainder {values} has no cone point")
            lam = min(cone)
            a = values[lam]
            out[lam] = a
            for mu in self.W.orbit(lam):
                t = values.get(mu, self.zero_c) - a
                if t:
                    values[mu] = t
                else:
                    values.pop(mu, None)
        return SphericalCombination(d.n, out)


def _pretty(c) -> str:
    return c.pretty() if isinstance(c, LaurentPoly) else str(c)


def _flatten(total: Mapping[FiniteWeylElt, GroupAlgElt]) -> Dict[Tuple[Coweight, FiniteWeylElt], LaurentPoly]:
    out: Dict[Tuple[Coweight, FiniteWeylElt], LaurentPoly] = {}
    for u, g in total.items():
        for m, c in g.items():
            if c:
                out[(m, u)] = c
    return out


@lru_cache(maxsize=None)
def hecke_algebra(d: RootDatum, q: Optional[int] = None) -> HeckeAlgebra:
    return HeckeAlgebra(d, q)


class HeckeElt:
    """Finite linear combination of T_x; coefficients are double-coset values."""

    __slots__ = ("parent", "terms")

    def __init__(self, parent: HeckeAlgebra, terms: Mapping[ExtAffWeylElt, object]):
        self.parent = parent
        self.terms: Dict[ExtAffWeylElt, object] = {x: c for x, c in terms.items() if c}

    def __add__(self, other: "HeckeElt") -> "HeckeElt":
        if not isinstance(other, HeckeElt):
            return NotImplemented
        self._check(other)
        out = dict(self.terms)
        for x, c in other.terms.items():
            out[x] = out[x] + c if x in out else c
        return HeckeElt(self.parent, out)

    def __neg__(self) -> "HeckeElt":
        return HeckeElt(self.parent, {x: -c for x, c in self.terms.items()})

    def __sub__(self, other: "HeckeElt") -> "HeckeElt":
        return self + (-other)

    def scale(self, c) -> "HeckeElt":
        c = self.parent.coerce(c)
        return HeckeElt(self.parent, {x: a * c for x, a in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, HeckeElt):
            return self.parent.mul(self, other)
        if isinstance(other, (int, LaurentPoly, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, LaurentPoly, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, k: int) -> "HeckeElt":
        out = self.parent.unit()
        for _ in range(k):
            out = out * self
        return out

    def _check(self, other: "HeckeElt") -> None:
        if self.parent is not other.parent:
            raise RankMismatch("elements belong to different Hecke algebras")

    def __eq__(self, other) -> bool:
        if isinstance(other, HeckeElt):
            return self.parent is other.parent and self.terms == other.terms
        if isinstance(other, int) and other == 0:
            return not self.terms
        return NotImplemented

    __hash__ = None

    def __bool__(self) -> bool:
        return bool(self.terms)

    def coefficient(self, x: ExtAffWeylElt):
        return self.terms.get(x, self.parent.zero_c)

    def sorted_terms(self) -> List[Tuple[ExtAffWeylElt, object]]:
        aw = self.parent.aw
        return sorted(self.terms.items(), key=lambda t: (aw.length(t[0]), t[0].sort_key()))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"({c}) * T{x}" for x, c in self.sorted_terms())

    def __repr__(self) -> str:
        return f"HeckeElt({self})"

    def to_json(self) -> list:
        return [
            {"lambda": list(x.lam), "w": x.w.label, "w_matrix": [list(r) for r in x.w.matrix],
             "coeff": str(c)}
            for x, c in self.sorted_terms()
        ]


@dataclass
class BernsteinForm:
    """sum c_{m,w} theta_m T_w, keyed by (m, w)."""

    parent: HeckeAlgebra
    terms: Dict[Tuple[Coweight, FiniteWeylElt], LaurentPoly]

    def expand(self) -> HeckeElt:
        A = self.parent
        out = A.zero()
        for (m, w), c in self.terms.items():
            out = out + (A.theta(m) * A.T_finite(w)).scale(c)
        return out

    def to_json(self) -> list:
        return [
            {"m": list(m), "w": w.label, "coeff": str(c)}
            for (m, w), c in sorted(self.terms.items(), key=lambda t: (t[0][1], t[0][0]))
        ]

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(
            f"({c}) * theta[{','.join(map(str, m))}] T_{w.label}"
            for (m, w), c in sorted(self.terms.items(), key=lambda t: (t[0][1], t[0][0]))
        )


@dataclass
class LambdaFunction:
    """Function on I\\G/K, identified with the coweight lattice."""

    n: int
    terms: Dict[Coweight, object]

    def __post_init__(self):
        self.terms = {lam: c for lam, c in self.terms.items() if c}

    def __eq__(self, other) -> bool:
        if isinstance(other, LambdaFunction):
            return self.n == other.n and self.terms == other.terms
        if isinstance(other, dict):
            return self.terms == {k: v for k, v in other.items() if v}
        return NotImplemented

    def to_json(self) -> dict:
        return {",".join(map(str, lam)): str(c) for lam, c in sorted(self.terms.items())}


@dataclass
class SphericalCombination:
    """sum_lam c_lam 1_{K t_lam K} over cone coweights."""

    n: int
    terms: Dict[Coweight, object]

    def __post_init__(self):
        self.terms = {lam: c for lam, c in self.terms.items() if c}

    def to_hecke(self, A: HeckeAlgebra) -> HeckeElt:
        out = A.zero()
        for lam, c in self.terms.items():
            out = out + A.spherical_elt(lam).scale(c)
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, SphericalCombination):
            return self.n == other.n and self.terms == other.terms
        return NotImplemented

    def to_json(self) -> list:
        return [{"coweight": list(lam), "weight": str(c)} for lam, c in sorted(self.terms.items())]

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(
            f"({_pretty(c)}) sph[{','.join(map(str, lam))}]" for lam, c in sorted(self.terms.items())
        )


# -- functional surface ------------------------------------------------------


def hk_mul(a: HeckeElt, b: HeckeElt) -> HeckeElt:
    return a.parent.mul(a, b)


def t_inverse(d: RootDatum, x: ExtAffWeylElt) -> HeckeElt:
    return hecke_algebra(d).t_inverse(x)


def theta(d: RootDatum, lam: Sequence[int]) -> HeckeElt:
    return hecke_algebra(d).theta(lam)


def theta_of(d: RootDatum, r: GroupAlgElt) -> HeckeElt:
    return hecke_algebra(d).theta_of(r)


def bernstein_form(h: HeckeElt) -> BernsteinForm:
    return h.parent.bernstein_form(h)


def spherical_elt(d: RootDatum, lam: Sequence[int]) -> HeckeElt:
    return hecke_algebra(d).spherical_elt(lam)


def project_IK(h: HeckeElt) -> LambdaFunction:
    return h.parent.project_IK(h)


def satake(h: HeckeElt) -> GroupAlgElt:
    return h.parent.satake(h)


def satake_inverse(d: RootDatum, r: GroupAlgElt) -> SphericalCombination:
    return hecke_algebra(d).satake_inverse(r)
