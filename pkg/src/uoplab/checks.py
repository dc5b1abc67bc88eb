"""
Verification suites.  Each suite returns a list of CheckResult, one per
invariant, so the CLI and the acceptance tests share the same checks.
"""

from __future__ import annotations

import random
from collections import Counter
import time
from dataclasses import dataclass
from itertools import combinations_with_replacement, product
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from .coeffs import Coweight, GroupAlgElt, LaurentPoly
from .errors import UoplabError
from .hecke import HeckeAlgebra, HeckeElt, hecke_algebra
from .rootdata import (
    ExtAffWeylElt,
    RootDatum,
    affine_weyl,
    dot_act,
    dot_orbit_sum,
    is_dot_invariant,
)
from . import tree as tr
from .uops import integrality_certificate

SUITES = ("coeffs", "rootdata", "hecke", "satake", "integrality", "tree")


@dataclass
class CheckResult:
    name: str
    passed: bool
    seconds: float
    detail: str = ""

    def to_json(self) -> dict:
        return {"name": self.name, "passed": self.passed, "seconds": round(self.seconds, 4),
                "detail": self.detail}

    def line(self) -> str:
        mark = "PASS" if self.passed else "FAIL"
        tail = f"  {self.detail}" if self.detail else ""
        return f"{mark}  {self.name}  ({self.seconds:.2f}s){tail}"


def run_check(name: str, fn: Callable[[], Tuple[bool, str]]) -> CheckResult:
    """Run fn, which returns (passed, detail); library errors count as failures."""
    t0 = time.perf_counter()
    try:
        ok, detail = fn()
    except (UoplabError, AssertionError) as exc:
        ok, detail = False, f"{type(exc).__name__}: {exc}"
    return CheckResult(name, bool(ok), time.perf_counter() - t0, detail)


def _first_failure(items, test) -> Tuple[bool, str]:
    count = 0
    for item in items:
        count += 1
        if not test(item):
            return False, f"fails at {item}"
    return True, f"{count} cases"


def box(n: int, radius: int) -> List[Coweight]:
    return list(product(range(-radius, radius + 1), repeat=n))


def cone_box(d: RootDatum, radius: int) -> List[Coweight]:
    return [lam for lam in box(d.n, radius) if d.is_antidominant(lam)]


# -- random elements ----------------------------------------------------------


def random_lp(rng: random.Random, terms: int = 8, span: int = 6) -> LaurentPoly:
    return LaurentPoly({rng.randint(-span, span): rng.randint(-5, 5) for _ in range(rng.randint(0, terms))})


def random_ga(rng: random.Random, n: int, terms: int = 4, span: int = 2) -> GroupAlgElt:
    return GroupAlgElt(
        n,
        {tuple(rng.randint(-span, span) for _ in range(n)): random_lp(rng, 3, 3)
         for _ in range(rng.randint(0, terms))},
    )


def _ring_axioms(a, b, c, zero, one) -> bool:
    return (
        a + b == b + a
        and a * b == b * a
        and (a + b) + c == a + (b + c)
        and (a * b) * c == a * (b * c)
        and a * (b + c) == a * b + a * c
        and a + zero == a
        and a * one == a
        and a - a == zero
    )


# -- suites -------------------------------------------------------------------


def coeffs_suite(seed: int = 0, cases: int = 500) -> List[CheckResult]:
    rng = random.Random(seed)
    lps = [tuple(random_lp(rng) for _ in range(3)) for _ in range(cases)]
    gas = [tuple(random_ga(rng, 2) for _ in range(3)) for _ in range(cases)]
    z, o = LaurentPoly.zero(), LaurentPoly.one()
    gz, go = GroupAlgElt.zero(2), GroupAlgElt.one(2)

    def hom():
        for a, b, _ in lps:
            for q in (4, 9):
                if (a * b).eval_q(q) != a.eval_q(q) * b.eval_q(q):
                    return False, f"product at q={q}: {a}, {b}"
                if (a + b).eval_q(q) != a.eval_q(q) + b.eval_q(q):
                    return False, f"sum at q={q}: {a}, {b}"
        return True, f"{len(lps)} pairs at q=4, 9"

    def minkowski():
        for a, b, _ in gas:
            sums = {tuple(x + y for x, y in zip(s, t)) for s in a.support() for t in b.support()}
            if not (a * b).support() <= sums:
                return False, f"{a}, {b}"
        return True, f"{len(gas)} pairs"

    return [
        run_check("coeffs: LaurentPoly ring axioms",
                  lambda: _first_failure(lps, lambda t: _ring_axioms(*t, z, o))),
        run_check("coeffs: GroupAlgElt ring axioms",
                  lambda: _first_failure(gas, lambda t: _ring_axioms(*t, gz, go))),
        run_check("coeffs: evaluation at q is a ring homomorphism", hom),
        run_check("coeffs: support of a product lies in the Minkowski sum", minkowski),
    ]


def rootdata_suite(d: RootDatum, radius: int = 2, seed: int = 0) -> List[CheckResult]:
    aw = affine_weyl(d)
    W = d.weyl
    rng = random.Random(seed)

    def valid():
        d.validate()
        return True, f"|W| = {len(W)}"

    def weyl_lengths():
        # the length of w counts positive roots sent to negative ones
        for w in W:
            if sum(W.inversion_flags(w)) != w.length:
                return False, f"{w.label}"
        return True, f"{len(W)} elements"

    def descents():
        xs = aw.elements_in_box(radius)
        for x in xs:
            lx = aw.length(x)
            for s in aw.simple:
                if abs(aw.length(aw.mul(x, s)) - lx) != 1:
                    return False, f"{x} * {s}"
            if aw.length(aw.inverse(x)) != lx:
                return False, f"inverse of {x}"
        return True, f"{len(xs)} elements"

    def cexp_nonneg():
        for lam in cone_box(d, radius):
            for w in W:
                if d.cexp(lam, w) < 0:
                    return False, f"{lam}, {w.label}"
        return True, ""

    def dot_group_action():
        elems = list(W)
        rs = [random_ga(rng, d.n) for _ in range(3)]
        for r in rs:
            for w in elems:
                for u in elems:
                    if dot_act(d, w, dot_act(d, u, r)) != dot_act(d, W.mul(w, u), r):
                        return False, f"{w.label}, {u.label}"
        return True, f"{len(rs)} elements, all pairs"

    def orbit_sums():
        return _first_failure(cone_box(d, radius), lambda lam: is_dot_invariant(d, dot_orbit_sum(d, lam)))

    return [
        run_check(f"rootdata[{d.name}]: datum invariants", valid),
        run_check(f"rootdata[{d.name}]: Weyl lengths count inversions", weyl_lengths),
        run_check(f"rootdata[{d.name}]: l(xs) = l(x) +- 1 and l(x^-1) = l(x)", descents),
        run_check(f"rootdata[{d.name}]: c-exponents are nonnegative on the cone", cexp_nonneg),
        run_check(f"rootdata[{d.name}]: dot-action is a group action", dot_group_action),
        run_check(f"rootdata[{d.name}]: dot-orbit sums are invariant", orbit_sums),
    ]


class ThetaTimesTranslation:
    """theta_lam T_{t_kappa} for cone kappa, built by short cone steps and memoized.

    theta_lam theta_mu = theta_{lam+mu} is equivalent (right-multiply by the
    invertible T_{t_nu}, nu the auxiliary shift of mu) to
    theta_lam T_{t_{mu+nu}} = theta_{lam+mu} T_{t_nu}; both sides are values
    of this table, and neighboring entries differ by one short T_{t_f}.
    """

    def __init__(self, A: HeckeAlgebra, step_radius: int = 2):
        self.A = A
        d = A.datum
        self.steps = sorted(
            (f for f in cone_box(d, step_radius) if any(f)),
            key=lambda f: (sum(map(abs, f)), f),
        )
        self._memo: Dict[Tuple[Coweight, Coweight], HeckeElt] = {}

    def __call__(self, lam: Coweight, kappa: Coweight) -> HeckeElt:
        key = (lam, kappa)
        r = self._memo.get(key)
        if r is not None:
            return r
        A, d = self.A, self.A.datum
        if not any(kappa):
            r = A.theta(lam)
        else:
            norm = sum(map(abs, kappa))
            f = kappa
            for g in self.steps:
                rest = tuple(a - b for a, b in zip(kappa, g))
                if d.is_antidominant(rest) and sum(map(abs, rest)) < norm:
                    f = g
                    break
            rest = tuple(a - b for a, b in zip(kappa, f))
            r = self(lam, rest) * A.T_translation(f)
        self._memo[key] = r
        return r


def theta_additivity(d: RootDatum, radius: int = 2) -> Tuple[bool, str]:
    A = hecke_algebra(d)
    table = ThetaTimesTranslation(A)
    pts = box(d.n, radius)
    for lam in pts:
        for mu in pts:
            nu = A.auxiliary_shift(mu)
            total = tuple(a + b for a, b in zip(lam, mu))
            if table(lam, tuple(a + b for a, b in zip(mu, nu))) != table(total, nu):
                return False, f"theta{lam} theta{mu} != theta{total}"
    return True, f"{len(pts) ** 2} pairs"


def _random_short(rng: random.Random, pool: Sequence[ExtAffWeylElt]) -> ExtAffWeylElt:
    return pool[rng.randrange(len(pool))]


HECKE_CHECKS = ("quadratic", "inverses", "associativity", "theta", "roundtrip", "routes", "centre")


def hecke_suite(d: RootDatum, radius: int = 2, seed: int = 0, triples: int = 200,
                centre_samples: int = 5, only: Optional[Sequence[str]] = None) -> List[CheckResult]:
    """Run the Hecke checks; ``only`` picks a subset of HECKE_CHECKS by key."""
    A = hecke_algebra(d)
    aw = A.aw
    rng = random.Random(seed)

    def quadratic():
        for s in aw.simple:
            Ts = A.T(s)
            if Ts * Ts != Ts.scale(LaurentPoly.q() - 1) + A.unit().scale(LaurentPoly.q()):
                return False, f"T_s^2 for s = {s}"
        return True, f"{len(aw.simple)} simple reflections"

    def inverses():
        xs = aw.elements_in_box(min(radius, 1), 4)
        return _first_failure(xs, lambda x: A.T(x) * A.t_inverse(x) == A.unit())

    def associativity():
        pool = aw.elements_in_box(radius, 6)
        for _ in range(triples):
            a, b, c = (A.T(_random_short(rng, pool)) for _ in range(3))
            if (a * b) * c != a * (b * c):
                return False, "a triple fails"
        return True, f"{triples} random triples"

    def roundtrip():
        xs = aw.elements_in_box(radius, 5)
        return _first_failure(xs, lambda x: A.bernstein_form(A.T(x)).expand() == A.T(x))

    def two_routes():
        xs = aw.elements_in_box(1, 4)
        return _first_failure(
            xs,
            lambda x: A.bernstein_form(A.T(x), check=False).terms
            == A.bernstein_form(A.T(x), method="eliminate", check=False).terms,
        )

    def centre():
        r = max(radius, 1)
        lams = cone_box(d, r)
        while len(lams) < centre_samples and r < 6:
            r += 1
            lams = cone_box(d, r)
        picks = rng.sample(lams, min(centre_samples, len(lams)))
        xs = [A.T(x) for x in aw.elements_in_box(radius, 4)]
        for lam in picks:
            z = A.theta_of(dot_orbit_sum(d, lam))
            for x in xs:
                if z * x != x * z:
                    return False, f"theta(orbit sum {lam}) and {x}"
        return True, f"{len(picks)} coweights x {len(xs)} basis elements"

    tag = f"hecke[{d.name}]"
    table = [
        ("quadratic", "quadratic relation", quadratic),
        ("inverses", "T_x T_x^-1 = 1", inverses),
        ("associativity", "associativity on random triples (l <= 6)", associativity),
        ("theta", "theta additivity on the box", lambda: theta_additivity(d, radius)),
        ("roundtrip", "Bernstein form round-trips (l <= 5)", roundtrip),
        ("routes", "word and elimination routes agree", two_routes),
        ("centre", "dot-invariant thetas are central (l <= 4)", centre),
    ]
    if only is not None:
        unknown = set(only) - set(HECKE_CHECKS)
        if unknown:
            raise ValueError(f"unknown Hecke check(s): {', '.join(sorted(unknown))}")
    return [run_check(f"{tag}: {label}", fn) for key, label, fn in table if only is None or key in only]


def satake_suite(d: RootDatum, radius: int = 2) -> List[CheckResult]:
    A = hecke_algebra(d)
    lams = cone_box(d, radius)
    sph = {lam: A.spherical_elt(lam) for lam in lams}
    images: Dict[Coweight, GroupAlgElt] = {}

    def invariant():
        for lam in lams:
            images[lam] = A.satake(sph[lam])
            if not is_dot_invariant(d, images[lam]):
                return False, f"image of {lam}"
        return True, f"{len(lams)} cone coweights"

    def multiplicative():
        if len(images) < len(lams):
            invariant()
        pairs = list(combinations_with_replacement(lams, 2))
        for a, b in pairs:
            if A.satake(A.convolve_K(sph[a], sph[b])) != images[a] * images[b]:
                return False, f"{a} * {b}"
        return True, f"{len(pairs)} pairs"

    def inverse():
        if len(images) < len(lams):
            invariant()
        for lam in lams:
            back = A.satake_inverse(images[lam])
            if back.terms != {lam: LaurentPoly.one()}:
                return False, f"{lam} -> {back}"
        return True, f"{len(lams)} cone coweights"

    tag = f"satake[{d.name}]"
    return [
        run_check(f"{tag}: images are dot-invariant", invariant),
        run_check(f"{tag}: multiplicative on box pairs", multiplicative),
        run_check(f"{tag}: satake_inverse after satake is the identity", inverse),
    ]


def integrality_suite(d: RootDatum, lam: Sequence[int], certs: Optional[list] = None) -> List[CheckResult]:
    lam = tuple(lam)
    holder = {}

    def build():
        cert = integrality_certificate(d, lam, strict=False)
        holder["cert"] = cert
        if certs is not None:
            certs.append(cert)
        return True, f"degree {cert.degree}"

    out = [run_check(f"integrality[{d.name} {lam}]: certificate built", build)]
    cert = holder.get("cert")
    if cert is None:
        return out
    for name, ok in cert.checks.items():
        out.append(CheckResult(f"integrality[{d.name} {lam}]: {name}", ok, 0.0))
    for s in cert.q_specializations:
        ok = s["hecke_identity"] and s["projected_identity"]
        out.append(CheckResult(f"integrality[{d.name} {lam}]: identities at q={s['q']}", ok, 0.0))
    return out


def tree_suite(q: int, depth: int) -> List[CheckResult]:
    t = tr.TreeModel(q, depth)
    inner = list(t.interior())
    tag = f"tree[q={q} D={depth}]"

    def each(test):
        return lambda: _first_failure(inner, test)

    def vu(w):
        x = tr.VertexSum.delta(w)
        return tr.apply_v(t, tr.apply_u(t, x)) == x * q

    def t_split(w):
        x = tr.VertexSum.delta(w)
        return tr.hecke_T(t, x) == tr.apply_u(t, x) + tr.apply_v(t, x)

    def uv_not_q():
        for w in inner:
            x = tr.VertexSum.delta(w)
            if tr.apply_u(t, tr.apply_v(t, x)) != x * q:
                return True, f"at {tr.render(w) or 'origin'}"
        return False, "u o v = q everywhere"

    def witness():
        w = tr.find_noncommuting_vertex(t)
        return w is not None, f"at {tr.render(w) or 'origin'}" if w is not None else "none found"

    def fibers():
        ks = range(1, min(4, depth - 2) + 1)
        base = tr.VertexSum.delta(tr.ORIGIN)
        for k in ks:
            U = tr.fiber_operator_U(t, k, base)
            geo = {v for v in t.vertices(k) if tr.retraction(t, v) == tr.apartment_vertex(k)}
            it = base
            for _ in range(k):
                it = tr.apply_u(t, it)
            if U != it or U.support() != geo or len(U) != q ** k:
                return False, f"k={k}"
        pts = [w for w in inner if len(w) <= depth - 4]
        for w in pts:
            x = tr.VertexSum.delta(w)
            it = x
            for k in ks:
                if len(w) + k > depth - 1:
                    break
                it = tr.apply_u(t, it)
                if tr.fiber_operator_U(t, k, x) != it:
                    return False, f"{tr.render(w)}, k={k}"
        return True, f"k <= {max(ks)}"

    def additivity():
        pts = [w for w in inner if len(w) <= depth - 5]
        for w in pts:
            x = tr.VertexSum.delta(w)
            for j in (1, 2):
                for k in (1, 2):
                    lhs = tr.fiber_operator_U(t, j, tr.fiber_operator_U(t, k, x))
                    if lhs != tr.fiber_operator_U(t, j + k, x):
                        return False, f"{tr.render(w)}, j={j}, k={k}"
        return True, f"{len(pts)} vertices"

    def beta():
        pts = [w for w in inner if len(w) <= depth - 4]
        for w in pts:
            for k in range(1, 5):
                if len(w) + k > depth:
                    break
                b = tr.beta_filtration(t, k, w)
                if b != tr.fiber_operator_U(t, k, tr.VertexSum.delta(w)):
                    return False, f"{tr.render(w)}, k={k}"
        return True, f"{len(pts)} vertices, k <= 4"

    def retraction():
        ok = all(tr.retraction(t, v) == v for v in t.vertices() if tr.in_apartment(v))
        if not ok:
            return False, "a vertex of A moves"
        if tr.retraction(t, ()) != () or tr.retraction(t, (0,)) != (0,):
            return False, "alcove vertices move"
        return True, ""

    def traces():
        count = 0
        for cfg in tr.CONFIGS:
            for z in t.vertices(depth - 1):
                c = tr.conductor(t, cfg, z)
                if 2 <= c <= min(6, depth - 2):
                    orbit = tr.trace_orbit(t, cfg, z)
                    if len(orbit) != q:
                        return False, f"{cfg} {tr.render(z)}: orbit size {len(orbit)}"
                    count += 1
        return True, f"{count} vertices over three configurations"

    def spheres():
        sizes = Counter(tr.conductor(t, "inert", v) for v in t.vertices())
        for n in range(1, depth + 1):
            if sizes[n] != (q + 1) * q ** (n - 1):
                return False, f"n={n}"
        return True, ""

    return [
        run_check(f"{tag}: v o u = q", each(vu)),
        run_check(f"{tag}: T = u + v", each(t_split)),
        run_check(f"{tag}: u o v != q somewhere", uv_not_q),
        run_check(f"{tag}: u^2 - T o u + q = 0", each(lambda w: not tr.right_root_defect(t, w))),
        run_check(f"{tag}: v^2 - v o T + q = 0", each(lambda w: not tr.left_root_defect(t, w))),
        run_check(f"{tag}: T o u != u o T witness", witness),
        run_check(f"{tag}: fiber operators equal successor iterates", fibers),
        run_check(f"{tag}: fiber operators are additive", additivity),
        run_check(f"{tag}: beta filtration equals fiber operators", beta),
        run_check(f"{tag}: retraction fixes the apartment", retraction),
        run_check(f"{tag}: Tr(z) = T(z') - z''", traces),
        run_check(f"{tag}: conductor spheres have (q+1) q^(n-1) points", spheres),
        run_check(f"{tag}: gl2 certificate annihilates u", lambda: (tr.gl2_bridge(t), "")),
    ]
