"""
Based root data, finite Weyl groups and the extended affine Weyl group.

Coordinates: a coweight is an integer vector of length ``n`` and characters
pair with coweights by the dot product.  The translation ``t_lam`` models
``diag(p^lam_1, ..., p^lam_n)`` for GL_n, and the cone used to index
U-operators is ``{lam : <lam, alpha> >= 0 for all positive alpha}``.

The extended affine Weyl group is ``L x| W0``; an element is a pair
``(lam, w)`` standing for ``t_lam * w`` with the group law
``(lam, w)(mu, u) = (lam + w.mu, w u)``.  Its length is computed from the
Iwahori-Matsumoto formula

    l(t_lam w) = sum_{a > 0, w^-1 a > 0} |<lam, a>|
               + sum_{a > 0, w^-1 a < 0} |<lam, a> - 1|

and reduced words are recovered by greedy right descent.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Dict, List, NamedTuple, Optional, Sequence, Tuple

from .coeffs import Coweight, GroupAlgElt, LaurentPoly
from .errors import InvalidDatum, NotFiniteType

Vector = Tuple[int, ...]
Matrix = Tuple[Tuple[int, ...], ...]

DEFAULT_MAX_WEYL = 10_000


def pair(x: Sequence[int], y: Sequence[int]) -> int:
    return sum(a * b for a, b in zip(x, y))


def _matvec(m: Matrix, v: Sequence[int]) -> Vector:
    return tuple(sum(a * b for a, b in zip(row, v)) for row in m)


def _matmul(a: Matrix, b: Matrix) -> Matrix:
    cols = list(zip(*b))
    return tuple(tuple(pair(row, col) for col in cols) for row in a)


def _transpose(m: Matrix) -> Matrix:
    return tuple(zip(*m))


def _identity(n: int) -> Matrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


class FiniteWeylElt:
    """An element of W0 as an integer matrix acting on coweights."""

    __slots__ = ("matrix", "length", "index", "word", "_hash")

    def __init__(self, matrix: Matrix, length: int, index: int = -1, word: Tuple[int, ...] = ()):
        self.matrix = matrix
        self.length = length
        self.index = index
        self.word = word
        self._hash = hash(matrix)

    def act(self, lam: Sequence[int]) -> Vector:
        return _matvec(self.matrix, lam)

    def __eq__(self, other) -> bool:
        return isinstance(other, FiniteWeylElt) and self.matrix == other.matrix

    def __hash__(self) -> int:
        return self._hash

    def __lt__(self, other: "FiniteWeylElt") -> bool:
        return (self.length, self.word) < (other.length, other.word)

    @property
    def label(self) -> str:
        return "e" if not self.word else "".join(f"s{i + 1}" for i in self.word)

    def __repr__(self) -> str:
        return f"FiniteWeylElt({self.label})"


class ExtAffWeylElt(NamedTuple):
    """``t_lam * w`` in the extended affine Weyl group."""

    lam: Coweight
    w: FiniteWeylElt

    def __str__(self) -> str:
        return f"({','.join(map(str, self.lam))} | {self.w.label})"

    def sort_key(self):
        return (self.lam, self.w.length, self.w.word)


@dataclass(frozen=True)
class RootDatum:
    """A split based root datum given by its positive roots and coroots.

    ``positive_coroots[i]`` is the coroot of ``positive_roots[i]``; the simple
    roots must appear among the positive roots.
    """

    name: str
    n: int
    simple_roots: Tuple[Vector, ...]
    positive_roots: Tuple[Vector, ...]
    positive_coroots: Tuple[Vector, ...]
    max_weyl: int = field(default=0, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "simple_roots", tuple(tuple(a) for a in self.simple_roots))
        object.__setattr__(self, "positive_roots", tuple(tuple(a) for a in self.positive_roots))
        object.__setattr__(self, "positive_coroots", tuple(tuple(a) for a in self.positive_coroots))
        self.validate()

    # -- basic derived data -----------------------------------------------

    @cached_property
    def two_rho(self) -> Vector:
        return tuple(sum(col) for col in zip(*self.positive_roots)) if self.positive_roots else (0,) * self.n

    @cached_property
    def simple_indices(self) -> Tuple[int, ...]:
        return tuple(self.positive_roots.index(a) for a in self.simple_roots)

    @cached_property
    def simple_coroots(self) -> Tuple[Vector, ...]:
        return tuple(self.positive_coroots[i] for i in self.simple_indices)

    @cached_property
    def cartan_matrix(self) -> Tuple[Tuple[int, ...], ...]:
        return tuple(tuple(pair(a, c) for a in self.simple_roots) for c in self.simple_coroots)

    @cached_property
    def _root_index(self) -> Dict[Vector, int]:
        out = {a: i for i, a in enumerate(self.positive_roots)}
        out.update({tuple(-x for x in a): -1 - i for i, a in enumerate(self.positive_roots)})
        return out

    def reflection_matrix(self, i: int) -> Matrix:
        """Coweight action of the reflection in positive root ``i``: lam - <lam, a> a^v."""
        a, c = self.positive_roots[i], self.positive_coroots[i]
        return tuple(
            tuple(int(r == s) - c[r] * a[s] for s in range(self.n)) for r in range(self.n)
        )

    # -- validation -------------------------------------------------------

    def validate(self) -> None:
        n = self.n
        if n < 1:
            raise InvalidDatum("rank must be positive")
        if len(self.positive_roots) != len(self.positive_coroots):
            raise InvalidDatum("positive_roots and positive_coroots differ in length")
        for v in (*self.simple_roots, *self.positive_roots, *self.positive_coroots):
            if len(v) != n:
                raise InvalidDatum(f"vector {v} does not have length {n}")
        if len(set(self.positive_roots)) != len(self.positive_roots):
            raise InvalidDatum("repeated positive root")
        for a in self.simple_roots:
            if a not in self.positive_roots:
                raise InvalidDatum(f"simple root {a} is not listed as a positive root")
        for a, c in zip(self.positive_roots, self.positive_coroots):
            if pair(a, c) != 2:
                raise InvalidDatum(f"<alpha, alpha^v> = {pair(a, c)} != 2 for alpha = {a}")
        self._check_positive_combinations()
        self._check_reflections_permute_roots()
        for c in self.positive_coroots:
            if pair(self.two_rho, c) % 2:
                raise InvalidDatum(f"<2rho, {c}> is odd; c-exponents would not be integral")

    def _check_positive_combinations(self) -> None:
        k = len(self.simple_roots)
        cartan = [[Fraction(x) for x in row] for row in self.cartan_matrix]
        for a in self.positive_roots:
            rhs = [Fraction(pair(a, c)) for c in self.simple_coroots]
            try:
                coeffs = _solve(cartan, rhs)
            except ZeroDivisionError:
                raise InvalidDatum("Cartan matrix is singular") from None
            if any(x.denominator != 1 or x < 0 for x in coeffs):
                raise InvalidDatum(f"{a} is not a nonnegative integer combination of simple roots")
            recon = tuple(
                sum(int(coeffs[j]) * self.simple_roots[j][i] for j in range(k)) for i in range(self.n)
            )
            if recon != a:
                raise InvalidDatum(f"{a} is not in the span of the simple roots")

    def _check_reflections_permute_roots(self) -> None:
        index = self._root_index
        coindex = {c: i for i, c in enumerate(self.positive_coroots)}
        coindex.update({tuple(-x for x in c): i for i, c in enumerate(self.positive_coroots)})
        for i in self.simple_indices:
            m = self.reflection_matrix(i)
            mt = _transpose(m)  # action on characters of the same reflection
            for a, c in zip(self.positive_roots, self.positive_coroots):
                if _matvec(mt, a) not in index:
                    raise InvalidDatum(f"simple reflection {i} does not permute the roots")
                if _matvec(m, c) not in coindex:
                    raise InvalidDatum(f"simple reflection {i} does not permute the coroots")

    # -- Weyl group -------------------------------------------------------

    @cached_property
    def weyl(self) -> "WeylGroup":
        return WeylGroup(self)

    def is_antidominant(self, lam: Sequence[int]) -> bool:
        return all(pair(lam, a) >= 0 for a in self.positive_roots)

    def cexp(self, lam: Sequence[int], w: FiniteWeylElt) -> int:
        """Exponent of q in the dot-action twist: <rho, lam - w.lam>."""
        diff = pair(self.two_rho, lam) - pair(self.two_rho, w.act(lam))
        if diff % 2:
            raise InvalidDatum(f"odd twist exponent for {tuple(lam)}")
        return diff // 2

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "rank": self.n,
            "simple_roots": [list(a) for a in self.simple_roots],
            "positive_roots": [list(a) for a in self.positive_roots],
            "positive_coroots": [list(c) for c in self.positive_coroots],
        }

    def __str__(self) -> str:
        return self.name


def _solve(a: List[List[Fraction]], b: List[Fraction]) -> List[Fraction]:
    """Gauss-Jordan over Q for a square nonsingular system."""
    n = len(a)
    m = [row[:] + [rhs] for row, rhs in zip(a, b)]
    for col in range(n):
        piv = next(r for r in range(col, n) if m[r][col] != 0) if any(
            m[r][col] != 0 for r in range(col, n)
        ) else None
        if piv is None:
            raise ZeroDivisionError("singular system")
        m[col], m[piv] = m[piv], m[col]
        p = m[col][col]
        m[col] = [x / p for x in m[col]]
        for r in range(n):
            if r != col and m[r][col] != 0:
                f = m[r][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    return [m[r][n] for r in range(n)]


class WeylGroup:
    """W0 as a list of FiniteWeylElt closed under multiplication."""

    def __init__(self, d: RootDatum):
        self.datum = d
        bound = d.max_weyl or int(os.environ.get("UOPLAB_MAX_WEYL", DEFAULT_MAX_WEYL))
        n = d.n
        gens = [d.reflection_matrix(i) for i in d.simple_indices]
        ident = _identity(n)
        # BFS in shortlex order so the first word reaching an element is reduced
        words: Dict[Matrix, Tuple[int, ...]] = {ident: ()}
        frontier = [ident]
        while frontier:
            nxt = []
            for m in frontier:
                for j, g in enumerate(gens):
                    prod = _matmul(m, g)
                    if prod not in words:
                        words[prod] = words[m] + (j,)
                        nxt.append(prod)
                        if len(words) > bound:
                            raise NotFiniteType(
                                f"Weyl group of {d.name} exceeds {bound} elements"
                            )
            frontier = nxt
        self.elements: List[FiniteWeylElt] = []
        for idx, (m, word) in enumerate(words.items()):
            self.elements.append(FiniteWeylElt(m, len(word), idx, word))
        self._by_matrix = {w.matrix: w for w in self.elements}
        self.identity = self.elements[0]
        self.simple = [self._by_matrix[g] for g in gens]
        # inversion data: for each w and positive root a, whether w^-1 a < 0
        root_index = d._root_index
        self._inv_flags: Dict[int, Tuple[bool, ...]] = {}
        for w in self.elements:
            mt = _transpose(w.matrix)  # w^-1 on characters
            self._inv_flags[w.index] = tuple(root_index[_matvec(mt, a)] < 0 for a in d.positive_roots)
        for w in self.elements:
            if sum(self._inv_flags[self.inverse(w).index]) != w.length:
                raise InvalidDatum("Weyl group length does not match inversion count")
        self._mul: Dict[Tuple[int, int], FiniteWeylElt] = {}

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __getitem__(self, matrix: Matrix) -> FiniteWeylElt:
        return self._by_matrix[matrix]

    def mul(self, a: FiniteWeylElt, b: FiniteWeylElt) -> FiniteWeylElt:
        key = (a.index, b.index)
        r = self._mul.get(key)
        if r is None:
            r = self._by_matrix[_matmul(a.matrix, b.matrix)]
            self._mul[key] = r
        return r

    @lru_cache(maxsize=None)
    def inverse(self, w: FiniteWeylElt) -> FiniteWeylElt:
        # orthogonality is not available in general coordinates; search instead
        for u in self.elements:
            if _matmul(w.matrix, u.matrix) == self.identity.matrix:
                return u
        raise AssertionError("element without inverse")

    def inversion_flags(self, w: FiniteWeylElt) -> Tuple[bool, ...]:
        """Flags ``w^-1 a < 0`` for each positive root ``a``."""
        return self._inv_flags[w.index]

    def orbit(self, lam: Sequence[int]) -> List[Coweight]:
        seen: Dict[Coweight, None] = {}
        for w in self.elements:
            seen.setdefault(w.act(lam), None)
        return list(seen)

    def orbit_reps(self, lam: Sequence[int]) -> List[Tuple[Coweight, FiniteWeylElt]]:
        """One shortest w per point of the orbit W0.lam (coset reps of W0/W_lam)."""
        seen: Dict[Coweight, FiniteWeylElt] = {}
        for w in self.elements:
            mu = w.act(lam)
            if mu not in seen:
                seen[mu] = w
        return list(seen.items())

    def poincare(self) -> LaurentPoly:
        """sum_w q^{l(w)} as an element of Z[v]."""
        out = LaurentPoly.zero()
        for w in self.elements:
            out = out + LaurentPoly.monomial(2 * w.length)
        return out


def weyl_group(d: RootDatum) -> List[FiniteWeylElt]:
    return list(d.weyl.elements)


def is_antidominant(d: RootDatum, lam: Sequence[int]) -> bool:
    return d.is_antidominant(lam)


class AffineWeyl:
    """Arithmetic in the extended affine Weyl group of a root datum."""

    def __init__(self, d: RootDatum):
        self.datum = d
        self.W = d.weyl
        self.zero: Coweight = (0,) * d.n
        self.identity = ExtAffWeylElt(self.zero, self.W.identity)
        self._len: Dict[ExtAffWeylElt, int] = {}
        self._descent: Dict[ExtAffWeylElt, Optional[int]] = {}
        self._mul: Dict[Tuple[ExtAffWeylElt, ExtAffWeylElt], ExtAffWeylElt] = {}
        self.simple = self._simple_affine_reflections()

    def _simple_affine_reflections(self) -> List[ExtAffWeylElt]:
        d, W = self.datum, self.W
        gens = [ExtAffWeylElt(self.zero, s) for s in W.simple]
        extra = []
        for i, c in enumerate(d.positive_coroots):
            s = W[d.reflection_matrix(i)]
            for k in range(1, 4):
                for sign in (1, -1):
                    x = ExtAffWeylElt(tuple(sign * k * x for x in c), s)
                    if self.length(x) == 1 and x not in extra:
                        extra.append(x)
        return gens + extra

    # -- group law --------------------------------------------------------

    def mul(self, x: ExtAffWeylElt, y: ExtAffWeylElt) -> ExtAffWeylElt:
        key = (x, y)
        r = self._mul.get(key)
        if r is None:
            wy = x.w.act(y.lam)
            r = ExtAffWeylElt(tuple(a + b for a, b in zip(x.lam, wy)), self.W.mul(x.w, y.w))
            self._mul[key] = r
        return r

    def inverse(self, x: ExtAffWeylElt) -> ExtAffWeylElt:
        wi = self.W.inverse(x.w)
        return ExtAffWeylElt(tuple(-a for a in wi.act(x.lam)), wi)

    def translation(self, lam: Sequence[int]) -> ExtAffWeylElt:
        return ExtAffWeylElt(tuple(lam), self.W.identity)

    def finite(self, w: FiniteWeylElt) -> ExtAffWeylElt:
        return ExtAffWeylElt(self.zero, w)

    # -- length and words -------------------------------------------------

    def length(self, x: ExtAffWeylElt) -> int:
        r = self._len.get(x)
        if r is None:
            flags = self.W.inversion_flags(x.w)
            r = 0
            for a, neg in zip(self.datum.positive_roots, flags):
                p = pair(x.lam, a)
                r += abs(p - 1) if neg else abs(p)
            self._len[x] = r
        return r

    def right_descent(self, x: ExtAffWeylElt) -> Optional[int]:
        """Index of a simple affine reflection s with l(xs) < l(x), or None."""
        if x in self._descent:
            return self._descent[x]
        lx = self.length(x)
        found = None
        if lx:
            for i, s in enumerate(self.simple):
                if self.length(self.mul(x, s)) < lx:
                    found = i
                    break
            if found is None:
                raise AssertionError(f"no descent for {x} of length {lx}")
        self._descent[x] = found
        return found

    def reduced_word(self, x: ExtAffWeylElt) -> Tuple[ExtAffWeylElt, List[int]]:
        """Return ``(omega, [i1, ..., ik])`` with x = omega s_i1 ... s_ik and l(omega) = 0."""
        word: List[int] = []
        while True:
            i = self.right_descent(x)
            if i is None:
                break
            word.append(i)
            x = self.mul(x, self.simple[i])
        word.reverse()
        return x, word

    def elements_in_box(self, radius: int, max_length: Optional[int] = None) -> List[ExtAffWeylElt]:
        """All (lam, w) with |lam_i| <= radius (and length bound if given), sorted."""
        from itertools import product

        out = []
        for lam in product(range(-radius, radius + 1), repeat=self.datum.n):
            for w in self.W:
                x = ExtAffWeylElt(lam, w)
                if max_length is None or self.length(x) <= max_length:
                    out.append(x)
        out.sort(key=lambda x: (self.length(x), x.sort_key()))
        return out


@lru_cache(maxsize=None)
def affine_weyl(d: RootDatum) -> AffineWeyl:
    return AffineWeyl(d)


def ext_length(d: RootDatum, x: ExtAffWeylElt) -> int:
    return affine_weyl(d).length(x)


def dot_act(d: RootDatum, w: FiniteWeylElt, r: GroupAlgElt) -> GroupAlgElt:
    """Twisted action e_lam -> q^{<rho, lam - w lam>} e_{w lam}."""
    out = {}
    for lam, c in r.items():
        out[w.act(lam)] = c * LaurentPoly.monomial(2 * d.cexp(lam, w))
    return GroupAlgElt(d.n, out)


def dot_orbit_sum(d: RootDatum, lam: Sequence[int]) -> GroupAlgElt:
    lam = tuple(lam)
    out = GroupAlgElt.zero(d.n)
    for mu, w in d.weyl.orbit_reps(lam):
        out = out + GroupAlgElt.e(mu, LaurentPoly.monomial(2 * d.cexp(lam, w)))
    return out


def is_dot_invariant(d: RootDatum, r: GroupAlgElt) -> bool:
    return all(dot_act(d, s, r) == r for s in d.weyl.simple)


# -- presets -----------------------------------------------------------------


def _type_a_gl(n: int) -> RootDatum:
    def e(i):
        return tuple(int(k == i) for k in range(n))

    pos = [tuple(a - b for a, b in zip(e(i), e(j))) for i in range(n) for j in range(i + 1, n)]
    simple = [tuple(a - b for a, b in zip(e(i), e(i + 1))) for i in range(n - 1)]
    return RootDatum(f"gl{n}", n, tuple(simple), tuple(pos), tuple(pos))


def _presets() -> Dict[str, RootDatum]:
    return {
        "gl2": _type_a_gl(2),
        "sl2": RootDatum("sl2", 1, ((2,),), ((2,),), ((1,),)),
        "pgl2": RootDatum("pgl2", 1, ((1,),), ((1,),), ((2,),)),
        "gl3": _type_a_gl(3),
        # simply connected SL3: coweights in the basis of simple coroots,
        # characters in the basis of fundamental weights
        "sl3": RootDatum(
            "sl3", 2, ((2, -1), (-1, 2)), ((2, -1), (-1, 2), (1, 1)), ((1, 0), (0, 1), (1, 1))
        ),
        # Sp4 with torus diag(x1, x2, 1/x2, 1/x1); long roots 2e_i have coroots e_i
        "sp4": RootDatum(
            "sp4",
            2,
            ((1, -1), (0, 2)),
            ((1, -1), (0, 2), (1, 1), (2, 0)),
            ((1, -1), (0, 1), (1, 1), (1, 0)),
        ),
    }


PRESETS: Dict[str, RootDatum] = _presets()


def preset(name: str) -> RootDatum:
    return PRESETS[name]
