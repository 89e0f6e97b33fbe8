"""Weighted dual graphs of smooth rational curves on a smooth surface germ.

Vertices carry self-intersections on the resolution; *marked* vertices are the
curves that survive the contraction (the bullets in the usual diagrams), the
rest form the exceptional set. Everything downstream -- pullbacks,
discrepancies, intersection numbers on the contracted surface -- is computed
exactly from the graph.
"""
from collections import deque
from dataclasses import dataclass, field
from typing import Optional

from .exact import Fraction, SingularSystemError, gcd, hj_recognize, leading_minors, solve_rational
from .quotient import CyclicQuotient


class GraphError(ValueError):
    """Malformed graph (duplicate ids, dangling edges, loops, ...)."""


class NotContractibleError(ValueError):
    """The requested curve configuration is not negative definite."""


class UnsupportedGraphError(ValueError):
    """A configuration outside the chain-shaped cases this package handles."""


@dataclass(frozen=True)
class Vertex:
    id: str
    e: int
    marked: bool = False


@dataclass(frozen=True)
class WeightedDualGraph:
    vertices: tuple
    edges: tuple
    glue: Optional[tuple] = None
    _index: dict = field(init=False, repr=False, compare=False)
    _adj: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        verts = tuple(v if isinstance(v, Vertex) else Vertex(*v) for v in self.vertices)
        object.__setattr__(self, "vertices", verts)
        index = {}
        for v in verts:
            if v.id in index:
                raise GraphError(f"duplicate vertex id {v.id!r}")
            index[v.id] = v
        adj = {v.id: set() for v in verts}
        edges = []
        for u, w in self.edges:
            if u not in index or w not in index:
                raise GraphError(f"edge ({u!r}, {w!r}) references an unknown vertex")
            if u == w:
                raise GraphError(f"loop at {u!r}")
            if w in adj[u]:
                raise GraphError(f"multiple edge ({u!r}, {w!r})")
            adj[u].add(w)
            adj[w].add(u)
            edges.append((u, w))
        object.__setattr__(self, "edges", tuple(edges))
        if self.glue is not None:
            glue = tuple(self.glue)
            if len(glue) != 2 or glue[0] == glue[1]:
                raise GraphError("glue must name two distinct vertices")
            for g in glue:
                if g not in index or not index[g].marked:
                    raise GraphError(f"glue vertex {g!r} is not a marked curve")
            object.__setattr__(self, "glue", glue)
        object.__setattr__(self, "_index", index)
        object.__setattr__(self, "_adj", adj)

    @classmethod
    def chain(cls, weights, marked=(), prefix="E"):
        """A path graph with self-intersections ``weights`` (ids E1, E2, ...)."""
        verts = [Vertex(f"{prefix}{i + 1}", w, i in marked) for i, w in enumerate(weights)]
        edges = [(verts[i].id, verts[i + 1].id) for i in range(len(verts) - 1)]
        return cls(tuple(verts), tuple(edges))

    def __getitem__(self, vid):
        return self._index[vid]

    def __contains__(self, vid):
        return vid in self._index

    @property
    def ids(self):
        return [v.id for v in self.vertices]

    @property
    def marked(self):
        return [v.id for v in self.vertices if v.marked]

    @property
    def exceptional(self):
        return [v.id for v in self.vertices if not v.marked]

    def neighbors(self, vid):
        return self._adj[vid]

    def dot(self, u, w):
        """Intersection number of two vertex curves on the resolution."""
        if u == w:
            return self._index[u].e
        return 1 if w in self._adj[u] else 0

    def components(self, subset):
        """Connected components of the subgraph induced on ``subset``, each in
        vertex order."""
        subset = set(subset)
        seen = set()
        out = []
        for vid in self.ids:
            if vid not in subset or vid in seen:
                continue
            comp = set()
            queue = deque([vid])
            seen.add(vid)
            while queue:
                u = queue.popleft()
                comp.add(u)
                for w in self._adj[u]:
                    if w in subset and w not in seen:
                        seen.add(w)
                        queue.append(w)
            out.append([x for x in self.ids if x in comp])
        return out


def _ordered(g, subset):
    subset = list(subset)
    unknown = [v for v in subset if v not in g]
    if unknown:
        raise GraphError(f"unknown vertices {unknown}")
    return subset


def intersection_matrix(g, subset):
    subset = _ordered(g, subset)
    return [[g.dot(u, w) for w in subset] for u in subset]


def is_negative_definite(matrix):
    """Leading principal minors alternate in sign, starting negative."""
    for k, minor in enumerate(leading_minors(matrix), start=1):
        if not minor or (minor > 0) != (k % 2 == 0):
            return False
    return True


def is_contractible(g, subset):
    """True iff the curves in ``subset`` have a negative definite intersection
    matrix (checked per connected component)."""
    subset = _ordered(g, subset)
    if not subset:
        raise ValueError("subset must be nonempty")
    return all(is_negative_definite(intersection_matrix(g, comp)) for comp in g.components(subset))


def cycle_square(g, coefficients):
    """Self-intersection of the cycle ``sum c_v * v`` on the resolution."""
    items = list(coefficients.items())
    return sum(cu * cw * g.dot(u, w) for u, cu in items for w, cw in items)


def _solve(g, exceptional, rhs):
    if not exceptional:
        return []
    try:
        return solve_rational(intersection_matrix(g, exceptional), rhs)
    except SingularSystemError:
        raise NotContractibleError(f"{exceptional} is not contractible (singular matrix)") from None


def pullback_coeffs(g, exceptional, c):
    """Coefficients ``gamma`` with ``(c' + sum gamma_i E_i) . E_j = 0`` for all j."""
    exceptional = _ordered(g, exceptional)
    if c in exceptional:
        raise ValueError(f"{c!r} is in the exceptional set")
    if exceptional and not is_contractible(g, exceptional):
        raise NotContractibleError(f"{exceptional} is not negative definite")
    return _solve(g, exceptional, [-g.dot(c, e) for e in exceptional])


def discrepancies(g, exceptional):
    """``beta`` with ``K_U = g^*K_Z + sum beta_i E_i``.

    Solves ``sum_i beta_i (E_i . E_j) = K_U . E_j = -2 - E_j^2``.
    """
    exceptional = _ordered(g, exceptional)
    if exceptional and not is_contractible(g, exceptional):
        raise NotContractibleError(f"{exceptional} is not negative definite")
    return _solve(g, exceptional, [-2 - g[e].e for e in exceptional])


@dataclass(frozen=True)
class SingularPoint:
    """One connected component of the exceptional set.

    ``vertices`` are listed in reading order and ``quotient`` is the point read
    that way. ``readings`` maps a marked curve attached at an end of the chain
    to the point read walking away from it.
    """

    vertices: tuple
    quotient: CyclicQuotient
    attached: tuple
    readings: dict

    def reading_from(self, c):
        return self.readings.get(c, self.quotient)


@dataclass(frozen=True)
class GermAnalysis:
    graph: WeightedDualGraph
    exceptional: tuple
    singular_points: tuple
    pullback: dict
    discrepancies: dict
    kz_dot: dict
    self_int: dict
    cross_int: dict

    def dot(self, c, d):
        """Intersection number of marked curves ``c``, ``d`` on the contracted
        surface."""
        if c == d:
            return self.self_int[c]
        return self.cross_int[(c, d)]

    def points_on(self, c):
        return [p for p in self.singular_points if c in p.attached]


def _path_order(g, comp):
    if len(comp) == 1:
        return list(comp)
    cs = set(comp)
    deg = {v: len(g.neighbors(v) & cs) for v in comp}
    if any(d >= 3 for d in deg.values()):
        raise UnsupportedGraphError("branch vertex in the exceptional set: non-cyclic singularity, unsupported")
    ends = [v for v in comp if deg[v] == 1]
    if len(ends) != 2:
        raise UnsupportedGraphError("cycle in the exceptional set: unsupported")
    order = [ends[0]]
    prev = None
    while len(order) < len(comp):
        cur = order[-1]
        nxt = next(w for w in g.neighbors(cur) if w in cs and w != prev)
        prev = cur
        order.append(nxt)
    return order


def _read(g, path):
    return CyclicQuotient(*hj_recognize([-g[v].e for v in path]))


def analyze_germ(g):
    """Contract every unmarked curve and compute the resulting germ's data."""
    exceptional = g.exceptional
    marked = g.marked
    if not marked:
        raise GraphError("a germ needs at least one marked curve")
    comps = g.components(exceptional)
    paths = [_path_order(g, comp) for comp in comps]
    for path in paths:
        if any(g[v].e >= -1 for v in path):
            bad = [v for v in path if g[v].e >= -1]
            raise UnsupportedGraphError(
                f"exceptional curves {bad} have self-intersection >= -1; "
                "the resolution is not minimal"
            )
    if exceptional and not is_contractible(g, exceptional):
        raise NotContractibleError("exceptional set is not negative definite")

    points = []
    for path in paths:
        pset = set(path)
        attached = []
        readings = {}
        for c in marked:
            hits = [v for v in path if v in g.neighbors(c)]
            if len(hits) >= 3:
                raise UnsupportedGraphError(f"{c!r} meets one exceptional chain {len(hits)} times")
            if not hits:
                continue
            attached.append(c)
            if hits[0] == path[0] or hits[-1] == path[-1]:
                start_at_head = hits[0] == path[0]
                readings[c] = _read(g, path if start_at_head else path[::-1])
        # default reading: away from the first end-attached marked curve
        start = None
        for c in attached:
            if c in readings:
                start = c
                break
        if start is not None and path[0] not in g.neighbors(start):
            path = path[::-1]
        points.append(SingularPoint(tuple(path), _read(g, path), tuple(attached), readings))
        assert pset == set(path)

    gam = {c: pullback_coeffs(g, exceptional, c) if exceptional else [] for c in marked}
    beta = discrepancies(g, exceptional) if exceptional else []

    def on_z(c, d):
        return g.dot(c, d) + sum(gi * g.dot(c, e) for gi, e in zip(gam[d], exceptional))

    kz = {}
    for c in marked:
        kz[c] = (-2 - g[c].e) - sum(b * g.dot(e, c) for b, e in zip(beta, exceptional))
    self_int = {c: Fraction(on_z(c, c)) for c in marked}
    cross = {}
    for c in marked:
        for d in marked:
            if c != d:
                cross[(c, d)] = Fraction(on_z(c, d))
    return GermAnalysis(
        graph=g,
        exceptional=tuple(exceptional),
        singular_points=tuple(points),
        pullback={c: dict(zip(exceptional, gam[c])) for c in marked},
        discrepancies=dict(zip(exceptional, beta)),
        kz_dot={c: Fraction(v) for c, v in kz.items()},
        self_int=self_int,
        cross_int=cross,
    )


class BlowDownError(ValueError):
    pass


def blow_down_to_minimal(g, subset=None):
    """Repeatedly contract (-1)-curves of degree <= 2 inside ``subset``.

    Each contraction raises the neighbours' self-intersections by one and
    joins two neighbours by an edge. Vertices outside ``subset`` are dropped.
    """
    keep = g.ids if subset is None else _ordered(g, subset)
    weight = {v: g[v].e for v in keep}
    adj = {v: set(g.neighbors(v)) & set(keep) for v in keep}
    while True:
        minus_one = [v for v in keep if v in weight and weight[v] == -1]
        removable = [v for v in minus_one if len(adj[v]) <= 2]
        if not removable:
            if minus_one:
                raise BlowDownError(f"(-1)-curve {minus_one[0]!r} meets 3 or more curves: not a simple blow-down")
            break
        v = removable[0]
        nbrs = sorted(adj.pop(v), key=keep.index)
        del weight[v]
        for w in nbrs:
            adj[w].discard(v)
            weight[w] += 1
        if len(nbrs) == 2:
            u, w = nbrs
            if w in adj[u]:
                raise BlowDownError(f"contracting {v!r} would create a double edge")
            adj[u].add(w)
            adj[w].add(u)
    verts = [Vertex(v, weight[v], g[v].marked) for v in keep if v in weight]
    edges = []
    seen = set()
    for v in keep:
        if v not in weight:
            continue
        for w in sorted(adj[v], key=keep.index):
            if (w, v) not in seen:
                seen.add((v, w))
                edges.append((v, w))
    return WeightedDualGraph(tuple(verts), tuple(edges))


def duval_type(g):
    """``m`` if ``g`` is a chain of ``m`` (-2)-curves (``0`` if empty), else None."""
    if not g.vertices:
        return 0
    if any(v.e != -2 for v in g.vertices):
        return None
    try:
        comps = g.components(g.ids)
        if len(comps) != 1:
            return None
        _path_order(g, comps[0])
    except UnsupportedGraphError:
        return None
    return len(g.vertices)


def _check_position(n, k):
    if n < 1 or not 1 <= k <= n:
        raise ValueError(f"need 1 <= k <= n, got n={n}, k={k}")


def line_index(n, k):
    """Index of a smooth curve through an ``A_n`` point whose transform meets
    ``E_k``."""
    _check_position(n, k)
    return (n + 1) // gcd(k, n + 1)


def line_pullback(n, k):
    """Closed-form coefficients of ``f^* l`` on ``E_1..E_n`` for a curve
    meeting ``E_k`` of the ``A_n`` chain."""
    _check_position(n, k)
    return [
        Fraction((n - k + 1) * i, n + 1) if i <= k else Fraction(k * (n + 1 - i), n + 1)
        for i in range(1, n + 1)
    ]


def curve_dot_gamma(n, k):
    """``C . Gamma`` on an ``A_n`` point, ``C`` through the ``E_n`` end and
    ``Gamma`` meeting ``E_k``."""
    _check_position(n, k)
    return Fraction(k, n + 1)
