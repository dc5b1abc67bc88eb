"""
Exact coefficient arithmetic.

``LaurentPoly`` is an element of Z[v, v^-1] where v stands for a square root
of the residue cardinality q, so ``v**2 == q``.  ``GroupAlgElt`` is an element
of the group algebra Z[v, v^-1][L] of a coweight lattice L, stored as a sparse
map from integer vectors to nonzero Laurent polynomials.

Both types are immutable values: arithmetic returns new objects and no stored
coefficient is ever zero, so structural equality is mathematical equality.
"""

from __future__ import annotations

import re
from fractions import Fraction
from math import isqrt
from typing import Dict, Iterable, Iterator, Mapping, Tuple, Union

from .errors import NotExactDivision, OddExponentAtNonSquare, ParseError, RankMismatch

Coweight = Tuple[int, ...]


class LaurentPoly:
    """Sparse Laurent polynomial in v with integer coefficients.

    >>> v = LaurentPoly.v()
    >>> (v - 1) * (v + 1)
    LaurentPoly('-1*v^0 + 1*v^2')
    """

    __slots__ = ("_t", "_hash")

    def __init__(self, terms: Mapping[int, int] | None = None):
        self._t: Dict[int, int] = {k: c for k, c in (terms or {}).items() if c}
        self._hash = None

    @classmethod
    def _raw(cls, terms: Dict[int, int]) -> "LaurentPoly":
        # caller guarantees no zero coefficients
        obj = cls.__new__(cls)
        obj._t = terms
        obj._hash = None
        return obj

    @classmethod
    def zero(cls) -> "LaurentPoly":
        return cls._raw({})

    @classmethod
    def one(cls) -> "LaurentPoly":
        return cls._raw({0: 1})

    @classmethod
    def const(cls, c: int) -> "LaurentPoly":
        return cls._raw({0: c} if c else {})

    @classmethod
    def monomial(cls, exponent: int, coeff: int = 1) -> "LaurentPoly":
        return cls._raw({exponent: coeff} if coeff else {})

    @classmethod
    def v(cls) -> "LaurentPoly":
        return cls._raw({1: 1})

    @classmethod
    def q(cls) -> "LaurentPoly":
        return cls._raw({2: 1})

    # -- inspection -------------------------------------------------------

    @property
    def terms(self) -> Dict[int, int]:
        return dict(self._t)

    def items(self) -> Iterator[Tuple[int, int]]:
        return iter(sorted(self._t.items()))

    def is_zero(self) -> bool:
        return not self._t

    def __bool__(self) -> bool:
        return bool(self._t)

    def min_exp(self) -> int:
        return min(self._t)

    def max_exp(self) -> int:
        return max(self._t)

    def is_unit(self) -> bool:
        """Units of Z[v^{+-1}] are exactly the monomials +-v^k."""
        return len(self._t) == 1 and abs(next(iter(self._t.values()))) == 1

    def coefficient(self, exponent: int) -> int:
        return self._t.get(exponent, 0)

    def is_even(self) -> bool:
        """True when only even powers of v occur, i.e. the element lies in Z[q^{+-1}]."""
        return all(k % 2 == 0 for k in self._t)

    # -- arithmetic -------------------------------------------------------

    @staticmethod
    def _coerce(other) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            return other
        if isinstance(other, int):
            return LaurentPoly.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not other._t:
            return self
        if not self._t:
            return other
        out = dict(self._t)
        for k, c in other._t.items():
            s = out.get(k, 0) + c
            if s:
                out[k] = s
            else:
                del out[k]
        return LaurentPoly._raw(out)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly._raw({k: -c for k, c in self._t.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, int):
            if not other:
                return LaurentPoly.zero()
            return LaurentPoly._raw({k: c * other for k, c in self._t.items()})
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        a, b = self._t, other._t
        if len(a) == 1:
            (ka, ca), = a.items()
            return LaurentPoly._raw({ka + k: ca * c for k, c in b.items()})
        if len(b) == 1:
            (kb, cb), = b.items()
            return LaurentPoly._raw({k + kb: c * cb for k, c in a.items()})
        out: Dict[int, int] = {}
        for ka, ca in a.items():
            for kb, cb in b.items():
                k = ka + kb
                out[k] = out.get(k, 0) + ca * cb
        return LaurentPoly._raw({k: c for k, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "LaurentPoly":
        if n < 0:
            return self.unit_inverse() ** (-n)
        result = LaurentPoly.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def unit_inverse(self) -> "LaurentPoly":
        if not self.is_unit():
            raise NotExactDivision(f"{self} is not a unit of Z[v, 1/v]")
        (k, c), = self._t.items()
        return LaurentPoly._raw({-k: c})

    def divexact(self, other: "LaurentPoly") -> "LaurentPoly":
        """Exact quotient ``self / other``; raises NotExactDivision otherwise."""
        other = self._coerce(other)
        if not other._t:
            raise ZeroDivisionError("division by the zero Laurent polynomial")
        if not self._t:
            return self
        if other.is_unit():
            return self * other.unit_inverse()
        # long division from the top degree down; a Laurent quotient is a
        # polynomial quotient after shifting both operands to exponent 0
        lo_d, hi_d = other.min_exp(), other.max_exp()
        lead = other._t[hi_d]
        rem = dict(self._t)
        quot: Dict[int, int] = {}
        lo_n = self.min_exp()
        while rem:
            hi = max(rem)
            if hi - hi_d < lo_n - lo_d:
                raise NotExactDivision(f"{other} does not divide {self}")
            c, r = divmod(rem[hi], lead)
            if r:
                raise NotExactDivision(f"{other} does not divide {self}")
            shift = hi - hi_d
            quot[shift] = c
            for k, d in other._t.items():
                s = rem.get(k + shift, 0) - c * d
                if s:
                    rem[k + shift] = s
                else:
                    rem.pop(k + shift, None)
        return LaurentPoly._raw(quot)

    # -- comparison -------------------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            return self._t == ({0: other} if other else {})
        if isinstance(other, LaurentPoly):
            return self._t == other._t
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._t.items()))
        return self._hash

    # -- specialization ---------------------------------------------------

    def eval_q(self, q: int) -> Fraction:
        """Value at v = sqrt(q)."""
        root = isqrt(q) if q > 0 else 0
        square = q > 0 and root * root == q
        total = Fraction(0)
        for k, c in self._t.items():
            if k % 2 == 0:
                total += c * Fraction(q) ** (k // 2)
            elif square:
                total += c * Fraction(root) ** k
            else:
                raise OddExponentAtNonSquare(f"v^{k} has no rational value at q={q}")
        return total

    # -- text -------------------------------------------------------------

    def __str__(self) -> str:
        if not self._t:
            return "0"
        return " + ".join(f"{c}*v^{k}" for k, c in sorted(self._t.items()))

    def __repr__(self) -> str:
        return f"LaurentPoly('{self}')"

    def pretty(self) -> str:
        """Human rendering in q where possible, e.g. ``q^2 - 1``."""
        if not self._t:
            return "0"
        even = self.is_even()
        var = "q" if even else "v"
        parts = []
        for k, c in sorted(self._t.items(), reverse=True):
            e = k // 2 if even else k
            mono = "" if e == 0 else (var if e == 1 else f"{var}^{e}")
            mag = abs(c)
            body = str(mag) if not mono else (mono if mag == 1 else f"{mag}{mono}")
            parts.append(("-" if c < 0 else "+", body))
        sign, body = parts[0]
        out = ("-" if sign == "-" else "") + body
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    _TERM = re.compile(r"^\s*(-?\d+)\*v\^(-?\d+)\s*$")

    @classmethod
    def parse(cls, text: str) -> "LaurentPoly":
        """Inverse of ``str``."""
        text = text.strip()
        if text == "0":
            return cls.zero()
        out: Dict[int, int] = {}
        for chunk in text.split(" + "):
            m = cls._TERM.match(chunk)
            if not m:
                raise ParseError(f"bad Laurent term {chunk!r}")
            c, k = int(m.group(1)), int(m.group(2))
            out[k] = out.get(k, 0) + c
        return cls(out)


Coeff = Union[LaurentPoly, int]


def lp_mul(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    return a * b


def lp_eval_q(a: LaurentPoly, q: int) -> Fraction:
    return a.eval_q(q)


class GroupAlgElt:
    """Element of Z[v^{+-1}][L] for a rank-``n`` lattice L.

    Basis elements ``e[lam]`` multiply by adding coweights.
    """

    __slots__ = ("n", "_t")

    def __init__(self, n: int, terms: Mapping[Coweight, LaurentPoly | int] | None = None):
        self.n = n
        self._t: Dict[Coweight, LaurentPoly] = {}
        for lam, c in (terms or {}).items():
            lam = tuple(lam)
            if len(lam) != n:
                raise RankMismatch(f"coweight {lam} has rank {len(lam)}, expected {n}")
            c = LaurentPoly._coerce(c)
            if c:
                prev = self._t.get(lam)
                s = c if prev is None else prev + c
                if s:
                    self._t[lam] = s
                else:
                    del self._t[lam]

    @classmethod
    def _raw(cls, n: int, terms: Dict[Coweight, LaurentPoly]) -> "GroupAlgElt":
        obj = cls.__new__(cls)
        obj.n = n
        obj._t = terms
        return obj

    @classmethod
    def zero(cls, n: int) -> "GroupAlgElt":
        return cls._raw(n, {})

    @classmethod
    def one(cls, n: int) -> "GroupAlgElt":
        return cls._raw(n, {(0,) * n: LaurentPoly.one()})

    @classmethod
    def e(cls, lam: Iterable[int], coeff: Coeff = 1) -> "GroupAlgElt":
        lam = tuple(lam)
        return cls(len(lam), {lam: coeff})

    def items(self) -> Iterator[Tuple[Coweight, LaurentPoly]]:
        return iter(sorted(self._t.items()))

    @property
    def terms(self) -> Dict[Coweight, LaurentPoly]:
        return dict(self._t)

    def support(self) -> set:
        return set(self._t)

    def coefficient(self, lam: Iterable[int]) -> LaurentPoly:
        return self._t.get(tuple(lam), LaurentPoly.zero())

    def __bool__(self) -> bool:
        return bool(self._t)

    def _check(self, other: "GroupAlgElt") -> None:
        if self.n != other.n:
            raise RankMismatch(f"rank {self.n} vs rank {other.n}")

    def __add__(self, other):
        if not isinstance(other, GroupAlgElt):
            return NotImplemented
        self._check(other)
        out = dict(self._t)
        for lam, c in other._t.items():
            prev = out.get(lam)
            s = c if prev is None else prev + c
            if s:
                out[lam] = s
            else:
                del out[lam]
        return GroupAlgElt._raw(self.n, out)

    def __neg__(self) -> "GroupAlgElt":
        return GroupAlgElt._raw(self.n, {lam: -c for lam, c in self._t.items()})

    def __sub__(self, other):
        if not isinstance(other, GroupAlgElt):
            return NotImplemented
        return self + (-other)

    def scale(self, c: Coeff) -> "GroupAlgElt":
        c = LaurentPoly._coerce(c)
        if not c:
            return GroupAlgElt.zero(self.n)
        return GroupAlgElt._raw(self.n, {lam: a * c for lam, a in self._t.items()})

    def __mul__(self, other):
        if isinstance(other, (int, LaurentPoly)):
            return self.scale(other)
        if not isinstance(other, GroupAlgElt):
            return NotImplemented
        self._check(other)
        out: Dict[Coweight, LaurentPoly] = {}
        for lam, a in self._t.items():
            for mu, b in other._t.items():
                key = tuple(x + y for x, y in zip(lam, mu))
                prev = out.get(key)
                prod = a * b
                out[key] = prod if prev is None else prev + prod
        return GroupAlgElt._raw(self.n, {k: c for k, c in out.items() if c})

    def __rmul__(self, other):
        if isinstance(other, (int, LaurentPoly)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, k: int) -> "GroupAlgElt":
        if k < 0:
            raise ValueError("negative powers are only defined for monomials")
        result = GroupAlgElt.one(self.n)
        for _ in range(k):
            result = result * self
        return result

    def divexact(self, c: LaurentPoly) -> "GroupAlgElt":
        return GroupAlgElt._raw(self.n, {lam: a.divexact(c) for lam, a in self._t.items()})

    def map_coeffs(self, f) -> Dict[Coweight, object]:
        return {lam: f(c) for lam, c in self._t.items()}

    def __eq__(self, other) -> bool:
        if isinstance(other, GroupAlgElt):
            return self.n == other.n and self._t == other._t
        if isinstance(other, int) and other == 0:
            return not self._t
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.n, frozenset(self._t.items())))

    def __str__(self) -> str:
        if not self._t:
            return "0"
        return " + ".join(
            f"({c}) * e[{','.join(map(str, lam))}]" for lam, c in sorted(self._t.items())
        )

    def __repr__(self) -> str:
        return f"GroupAlgElt('{self}')"

    def pretty(self) -> str:
        if not self._t:
            return "0"
        parts = []
        for lam, c in sorted(self._t.items(), reverse=True):
            basis = f"e[{','.join(map(str, lam))}]"
            parts.append(basis if c == 1 else f"({c.pretty()})*{basis}")
        return " + ".join(parts)

    _TERM = re.compile(r"^\((.*)\) \* e\[(-?\d+(?:,-?\d+)*)?\]$")

    @classmethod
    def parse(cls, text: str, n: int) -> "GroupAlgElt":
        text = text.strip()
        if text == "0":
            return cls.zero(n)
        out: Dict[Coweight, LaurentPoly] = {}
        for chunk in re.split(r" \+ (?=\()", text):
            m = cls._TERM.match(chunk.strip())
            if not m:
                raise ParseError(f"bad group-algebra term {chunk!r}")
            lam = tuple(int(x) for x in m.group(2).split(",")) if m.group(2) else ()
            out[lam] = LaurentPoly.parse(m.group(1))
        return cls(n, out)


def ga_mul(a: GroupAlgElt, b: GroupAlgElt) -> GroupAlgElt:
    return a * b
