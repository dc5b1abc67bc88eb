"""
The (q+1)-regular tree of PGL2 with a marked apartment, alcove and end.

Vertices are addresses: tuples s1 s2 ... sn with s1 in 0..q and later digits
in 0..q-1; the empty tuple is the origin.  The marked end xi is the ray of
all-zero addresses, the marked apartment A is that ray together with the
ray 1, 10, 100, ..., and the marked alcove is the edge {origin, "0"}.

Everything is truncated at a fixed depth D.  Operators are partial: whenever
a result would need a vertex beyond depth D they raise BoundaryClipped.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Dict, Iterable, Iterator, List, Mapping, Optional, Tuple

from .errors import BoundaryClipped, ConductorTooSmall, ConfigError

Vertex = Tuple[int, ...]
ORIGIN: Vertex = ()
CONFIGS = ("inert", "ramified", "split")


@dataclass(frozen=True)
class TreeModel:
    q: int
    depth: int

    def __post_init__(self):
        if self.q < 2:
            raise ConfigError(f"q must be at least 2, got {self.q}")
        if self.depth < 2:
            raise ConfigError(f"depth must be at least 2, got {self.depth}")

    def check(self, v: Vertex) -> Vertex:
        v = tuple(v)
        if len(v) > self.depth:
            raise BoundaryClipped(f"{render(v)} lies beyond depth {self.depth}")
        if v and (v[0] > self.q or min(v) < 0 or (len(v) > 1 and max(v) >= self.q and max(v[1:]) >= self.q)):
            raise ValueError(f"address {v} has a digit out of range for q={self.q}")
        return v

    def vertices(self, max_depth: Optional[int] = None) -> Iterator[Vertex]:
        """All addresses up to max_depth (default D), breadth first."""
        limit = self.depth if max_depth is None else max_depth
        layer: List[Vertex] = [ORIGIN]
        for n in range(limit + 1):
            yield from layer
            if n == limit:
                break
            layer = [v + (s,) for v in layer for s in range(self.q + 1 if n == 0 else self.q)]

    def interior(self, margin: int = 2) -> Iterator[Vertex]:
        return self.vertices(self.depth - margin)


def render(v: Vertex) -> str:
    if any(s > 9 for s in v):
        return ".".join(map(str, v))
    return "".join(map(str, v))


def parse_vertex(text: str) -> Vertex:
    text = text.strip()
    if text in ("", "o"):
        return ORIGIN
    if "." in text:
        return tuple(int(s) for s in text.split("."))
    return tuple(int(s) for s in text)


class VertexSum:
    """Finitely supported Z-valued function on vertices."""

    __slots__ = ("terms",)

    def __init__(self, terms: Optional[Mapping[Vertex, int]] = None):
        self.terms: Dict[Vertex, int] = {tuple(v): c for v, c in (terms or {}).items() if c}

    @classmethod
    def delta(cls, v: Iterable[int], c: int = 1) -> "VertexSum":
        return cls({tuple(v): c})

    @classmethod
    def _raw(cls, terms: Dict[Vertex, int]) -> "VertexSum":
        obj = cls.__new__(cls)
        obj.terms = terms
        return obj

    def __add__(self, other: "VertexSum") -> "VertexSum":
        out = dict(self.terms)
        for v, c in other.terms.items():
            s = out.get(v, 0) + c
            if s:
                out[v] = s
            else:
                del out[v]
        return VertexSum._raw(out)

    def __neg__(self) -> "VertexSum":
        return VertexSum._raw({v: -c for v, c in self.terms.items()})

    def __sub__(self, other: "VertexSum") -> "VertexSum":
        return self + (-other)

    def __mul__(self, k: int) -> "VertexSum":
        if not isinstance(k, int):
            return NotImplemented
        return VertexSum({v: c * k for v, c in self.terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if isinstance(other, VertexSum):
            return self.terms == other.terms
        if other == 0:
            return not self.terms
        return NotImplemented

    __hash__ = None

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def support(self) -> set:
        return set(self.terms)

    def to_json(self) -> Dict[str, int]:
        return {render(v): c for v, c in sorted(self.terms.items(), key=lambda t: (len(t[0]), t[0]))}

    def __repr__(self) -> str:
        return f"VertexSum({self.to_json()})"


def linear(f: Callable[[Vertex], VertexSum]) -> Callable[[VertexSum], VertexSum]:
    """Extend a vertex map to vertex sums."""

    def apply(x: VertexSum) -> VertexSum:
        out: Dict[Vertex, int] = {}
        for v, c in x.terms.items():
            for w, a in f(v).terms.items():
                out[w] = out.get(w, 0) + a * c
        return VertexSum(out)

    return apply


# -- local structure ------------------------------------------------------


def neighbors(t: TreeModel, v: Vertex) -> List[Vertex]:
    return _neighbors(t, t.check(v))


def _neighbors(t: TreeModel, v: Vertex) -> List[Vertex]:
    # v is assumed valid; the public wrappers validate once
    if len(v) == t.depth:
        raise BoundaryClipped(f"{render(v) or 'origin'} sits on the truncation boundary")
    kids = [v + (s,) for s in range(t.q + 1 if not v else t.q)]
    return ([v[:-1]] if v else []) + kids


def distance(a: Vertex, b: Vertex) -> int:
    k = 0
    while k < min(len(a), len(b)) and a[k] == b[k]:
        k += 1
    return len(a) + len(b) - 2 * k


def zero_prefix(v: Vertex) -> int:
    k = 0
    while k < len(v) and v[k] == 0:
        k += 1
    return k


def horocycle(v: Vertex) -> int:
    """Busemann level towards xi: going towards the end lowers it by one."""
    return len(v) - 2 * zero_prefix(v)


def _sum_map(x: VertexSum, f: Callable[[Vertex], List[Vertex]]) -> VertexSum:
    out: Dict[Vertex, int] = {}
    get = out.get
    for v, c in x.terms.items():
        for w in f(v):
            out[w] = get(w, 0) + c
    return VertexSum._raw({w: c for w, c in out.items() if c})


def hecke_T(t: TreeModel, x: VertexSum) -> VertexSum:
    return _sum_map(x, lambda v: _neighbors(t, t.check(v)))


def _successors(t: TreeModel, v: Vertex) -> List[Vertex]:
    """Neighbors one horocycle level up, i.e. every neighbor except the predecessor."""
    if len(v) == t.depth:
        raise BoundaryClipped(f"{render(v)} sits on the truncation boundary")
    if not v:
        return [(s,) for s in range(1, t.q + 1)]
    if zero_prefix(v) == len(v):
        return [v[:-1]] + [v + (s,) for s in range(1, t.q)]
    return [v + (s,) for s in range(t.q)]


def _predecessor(t: TreeModel, v: Vertex) -> Vertex:
    if zero_prefix(v) < len(v):
        return v[:-1]
    # v lies on the ray towards xi, so the predecessor is one step further out
    if len(v) == t.depth:
        raise BoundaryClipped(f"predecessor of {render(v)} lies beyond depth {t.depth}")
    return v + (0,)


def successor_u(t: TreeModel, v: Vertex) -> VertexSum:
    return VertexSum({w: 1 for w in _successors(t, t.check(v))})


def predecessor_v(t: TreeModel, v: Vertex) -> Vertex:
    return _predecessor(t, t.check(v))


def apply_u(t: TreeModel, x: VertexSum) -> VertexSum:
    return _sum_map(x, lambda v: _successors(t, t.check(v)))


def apply_v(t: TreeModel, x: VertexSum) -> VertexSum:
    return _sum_map(x, lambda v: [_predecessor(t, t.check(v))])


# -- apartment, retraction and fiber operators ----------------------------


def in_apartment(v: Vertex) -> bool:
    return zero_prefix(v) == len(v) or (v[0] == 1 and zero_prefix(v[1:]) == len(v) - 1)


def retraction(t: TreeModel, v: Vertex) -> Vertex:
    """Retraction onto A centred at the marked alcove."""
    v = t.check(v)
    if v and v[0] == 0:
        # the geodesic enters the alcove at "0" after len(v) - 1 steps
        return (0,) * len(v)
    return (1,) + (0,) * (len(v) - 1) if v else ORIGIN


def apartment_vertex(k: int) -> Vertex:
    """The point of A at signed position k: 1 0^{k-1} for k > 0, 0^{-k} for k <= 0."""
    return (1,) + (0,) * (k - 1) if k > 0 else (0,) * (-k)


def _fiber(t: TreeModel, y: Vertex, k: int) -> List[Vertex]:
    """Vertices at distance k from y reached without passing pred(y).

    This is the retraction fiber over the k-th apartment point, moved to y by
    an element fixing xi; for y = origin it is literally r^{-1}(1 0^{k-1}).
    """
    banned = _predecessor(t, y)
    frontier = [y]
    seen = {y, banned}
    for _ in range(k):
        nxt = []
        for v in frontier:
            for w in neighbors(t, v):
                if w not in seen:
                    seen.add(w)
                    nxt.append(w)
        frontier = nxt
    return frontier


def fiber_operator_U(t: TreeModel, k: int, x: VertexSum) -> VertexSum:
    if k < 1:
        raise ValueError("k must be positive")
    return linear(lambda y: VertexSum({w: 1 for w in _fiber(t, y, k)}))(x)


def beta_filtration(t: TreeModel, k: int, b: Vertex) -> VertexSum:
    """All a whose ray towards xi passes through b after exactly k steps."""
    if k < 1:
        raise ValueError("k must be positive")
    b = t.check(b)
    ball = {b}
    frontier = [b]
    for _ in range(k):
        frontier = [w for v in frontier for w in neighbors(t, v) if w not in ball]
        ball.update(frontier)
    out = {}
    for a in ball:
        if distance(a, b) != k:
            continue
        c = a
        for _ in range(k):
            if zero_prefix(c) == len(c) and (zero_prefix(b) < len(b) or len(c) > len(b)):
                # already on the ray to xi beyond b: it never comes back
                break
            c = _predecessor(t, c)
        if c == b:
            out[a] = 1
    return VertexSum(out)


def apply_beta(t: TreeModel, k: int, x: VertexSum) -> VertexSum:
    return linear(lambda b: beta_filtration(t, k, b))(x)


# -- conductor and the trace relation -------------------------------------


def conductor(t: TreeModel, cfg: str, v: Vertex) -> int:
    """Distance to the base: origin (inert), marked alcove (ramified) or A (split)."""
    v = t.check(v)
    if cfg == "inert":
        return len(v)
    if cfg == "ramified":
        return len(v) - 1 if v and v[0] == 0 else len(v)
    if cfg == "split":
        k = len(v)
        while not in_apartment(v[:k]):
            k -= 1
        return len(v) - k
    raise ConfigError(f"unknown configuration {cfg!r}; expected one of {', '.join(CONFIGS)}")


def successor_from_base(t: TreeModel, cfg: str, v: Vertex) -> VertexSum:
    """Neighbors one step further from the base set."""
    c = conductor(t, cfg, v) + 1
    return VertexSum({w: 1 for w in neighbors(t, v) if conductor(t, cfg, w) == c})


def trace_orbit(t: TreeModel, cfg: str, z: Vertex) -> VertexSum:
    n = conductor(t, cfg, z)
    if n < 2:
        raise ConductorTooSmall(f"{render(z)} has conductor {n} < 2")
    z1 = next(w for w in neighbors(t, z) if conductor(t, cfg, w) == n - 1)
    z2 = next(w for w in neighbors(t, z1) if conductor(t, cfg, w) == n - 2)
    orbit = successor_from_base(t, cfg, z1)
    assert orbit == hecke_T(t, VertexSum.delta(z1)) - VertexSum.delta(z2)
    assert z in orbit.terms
    return orbit


# -- operator identities --------------------------------------------------


def find_noncommuting_vertex(t: TreeModel) -> Optional[Vertex]:
    for w in t.interior():
        x = VertexSum.delta(w)
        if hecke_T(t, apply_u(t, x)) != apply_u(t, hecke_T(t, x)):
            return w
    return None


def noncommutativity_witness(t: TreeModel) -> bool:
    """T o u != u o T somewhere, while u^2 - T o u + q = 0 everywhere inside."""
    if t.depth < 4:
        raise ConfigError("the witness search needs depth at least 4")
    if find_noncommuting_vertex(t) is None:
        return False
    return all(not right_root_defect(t, w) for w in t.interior())


def right_root_defect(t: TreeModel, w: Vertex) -> VertexSum:
    x = VertexSum.delta(w)
    ux = apply_u(t, x)
    return apply_u(t, ux) - hecke_T(t, ux) + x * t.q


def left_root_defect(t: TreeModel, w: Vertex) -> VertexSum:
    x = VertexSum.delta(w)
    return apply_v(t, apply_v(t, x)) - apply_v(t, hecke_T(t, x)) + x * t.q


def gl2_bridge(t: TreeModel) -> bool:
    """Evaluate the gl2 certificate at u on the tree; S acts trivially here."""
    from .rootdata import preset
    from .uops import integrality_certificate

    cert = integrality_certificate(preset("gl2"), (1, 0), specializations=())
    for w in t.interior():
        x = VertexSum.delta(w)
        power = x
        total = VertexSum()
        for k, sph in enumerate(cert.spherical):
            if k:
                power = apply_u(t, power)
            term = VertexSum()
            for lam, c in sph.terms.items():
                weight = c.eval_q(t.q)
                if weight.denominator != 1:
                    return False
                image = hecke_T(t, power) if lam == (1, 0) else power
                term = term + image * int(weight)
            total = total + term
        if total:
            return False
    return True
