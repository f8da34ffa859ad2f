"""Generators for the test spaces: broom trees, regular trees, Farey
truncations, and square grids as non-hyperbolic negative controls.

Every generator returns a :class:`LabeledGraph` carrying a basepoint and an
injective vertex labeling. Outputs are deterministic: the same parameters
always produce the same vertex ids, labels and edges.

The Farey graph is infinite; :func:`farey_truncation` materializes the
window ``{1/0} ∪ {p/q reduced : 1 <= q <= qmax, |p| <= qmax}``. Truncation
distorts distances near the window boundary, so metric assertions are only
made inside the empirically stabilized ball, see :func:`farey_safe_radius`.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .graphs import MetricGraph, bfs_distances

__all__ = [
    "ProjectiveRational",
    "LabeledGraph",
    "broom_tree",
    "regular_tree",
    "farey_truncation",
    "grid",
    "farey_safe_radius",
]


@dataclass(frozen=True)
class ProjectiveRational:
    """A reduced projective rational p/q with q >= 0; 1/0 is the single
    point at infinity and 0 is written 0/1. Sign is carried on p."""

    p: int
    q: int

    def __post_init__(self):
        if self.q < 0:
            raise ValueError("denominator must be nonnegative")
        if self.q == 0 and self.p != 1:
            raise ValueError("the only vertex with q = 0 is 1/0")
        if gcd(abs(self.p), self.q) != 1:
            raise ValueError(f"{self.p}/{self.q} is not reduced")

    def __str__(self) -> str:
        return f"{self.p}/{self.q}"


@dataclass(frozen=True)
class LabeledGraph:
    """A metric graph plus an injective labeling and a distinguished basepoint."""

    graph: MetricGraph
    labels: tuple[str, ...]
    basepoint: int

    def __post_init__(self):
        if len(self.labels) != self.graph.vertex_count:
            raise ValueError("one label per vertex required")
        if len(set(self.labels)) != len(self.labels):
            raise ValueError("labels must be injective")
        self.graph.check_vertex(self.basepoint)

    def label_of(self, v: int) -> str:
        return self.labels[v]

    def vertex_of(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise KeyError(f"no vertex labeled {label!r}") from None


def broom_tree(m: int) -> LabeledGraph:
    """Root with m attached subdivided paths of lengths 1..m.

    The classical picture has edges of length 1, 2, 3, ... issuing from a
    single vertex; keeping edges unit length, those become paths of that
    many unit edges. Basepoint is the root, which has valence m.
    """
    if m < 1:
        raise ValueError("broom_tree needs m >= 1")
    edges = []
    labels = ["x0"]
    nv = 1
    for ray in range(1, m + 1):
        prev = 0
        for depth in range(1, ray + 1):
            labels.append(f"{ray}.{depth}")
            edges.append((prev, nv))
            prev = nv
            nv += 1
    g = MetricGraph(nv, edges, name=f"broom_{m}")
    return LabeledGraph(g, tuple(labels), 0)


def regular_tree(valence: int, depth: int) -> LabeledGraph:
    """Rooted tree in which every non-leaf vertex has the given valence,
    truncated at the given depth; a finite ball of the Cayley graph of a
    free group when the valence is even."""
    if valence < 2:
        raise ValueError("regular_tree needs valence >= 2")
    if depth < 1:
        raise ValueError("regular_tree needs depth >= 1")
    edges = []
    labels = ["r"]
    frontier = [0]
    nv = 1
    for _ in range(depth):
        nxt = []
        for u in frontier:
            kids = valence if u == 0 else valence - 1
            for k in range(kids):
                labels.append(f"{labels[u]}.{k}")
                edges.append((u, nv))
                nxt.append(nv)
                nv += 1
        frontier = nxt
    g = MetricGraph(nv, edges, name=f"tree_{valence}_{depth}")
    return LabeledGraph(g, tuple(labels), 0)


def _farey_vertices(qmax: int) -> list[ProjectiveRational]:
    verts = [ProjectiveRational(1, 0)]
    for q in range(1, qmax + 1):
        for p in range(-qmax, qmax + 1):
            if gcd(abs(p), q) == 1:
                verts.append(ProjectiveRational(p, q))
    verts.sort(key=lambda f: (f.q, f.p))
    return verts


def farey_truncation(qmax: int) -> LabeledGraph:
    """Finite window of the Farey graph.

    Vertices are 1/0 together with the reduced fractions p/q with
    1 <= q <= qmax and |p| <= qmax; two fractions p/q and r/s are joined
    exactly when |p*s - r*q| = 1. Basepoint is 0/1. Vertex ids sort by
    (q, p), so 1/0 gets id 0.
    """
    if qmax < 1:
        raise ValueError("farey_truncation needs qmax >= 1")
    verts = _farey_vertices(qmax)
    index = {(f.p, f.q): i for i, f in enumerate(verts)}
    edges = set()
    inf = index[(1, 0)]
    for n in range(-qmax, qmax + 1):
        # |1*q - 0*p| = q, so 1/0 meets exactly the integers n/1
        j = index[(n, 1)]
        edges.add((min(inf, j), max(inf, j)))
    for f in verts:
        p, q = f.p, f.q
        if q == 0:
            continue
        i = index[(p, q)]
        # p*s - r*q = ±1 forces s ≡ ±p^{-1} (mod q); step s by q
        inv = pow(p % q, -1, q) if q > 1 else 0
        for sign, s0 in ((1, inv % max(q, 1)), (-1, (-inv) % max(q, 1))):
            s = s0 if s0 != 0 else q
            if q == 1:
                s = 1
            while s <= qmax:
                r = (p * s - sign) // q
                if -qmax <= r <= qmax:
                    j = index.get((r, s))
                    if j is not None and j != i:
                        edges.add((min(i, j), max(i, j)))
                s += q if q > 1 else 1
    g = MetricGraph(len(verts), sorted(edges), name=f"farey_{qmax}")
    labels = tuple(str(f) for f in verts)
    return LabeledGraph(g, labels, index[(0, 1)])


def grid(n: int) -> LabeledGraph:
    """n-by-n square lattice with 4-neighbor adjacency; basepoint (0,0).

    Not hyperbolic at large n: included purely as falsification material
    for the boundedness and thin-triangle checkers.
    """
    if n < 2:
        raise ValueError("grid needs n >= 2")
    edges = []
    labels = []
    for i in range(n):
        for j in range(n):
            labels.append(f"({i},{j})")
            u = i * n + j
            if i + 1 < n:
                edges.append((u, (i + 1) * n + j))
            if j + 1 < n:
                edges.append((u, i * n + j + 1))
    g = MetricGraph(n * n, edges, name=f"grid_{n}")
    return LabeledGraph(g, tuple(labels), 0)


def farey_safe_radius(qmax: int) -> int:
    """Empirical stabilization radius of the basepoint ball.

    The largest R such that every window vertex within distance R of 0/1
    (distance taken in the doubled window) has the same distance in both
    the qmax and the 2*qmax truncations. Doubling the window can only add
    shortcut routes, so disagreement means the smaller window distorts the
    metric there; inside R the truncated distances are trusted, outside no
    metric claim is asserted.
    """
    small = farey_truncation(qmax)
    big = farey_truncation(2 * qmax)
    ds = bfs_distances(small.graph, small.basepoint)
    db = bfs_distances(big.graph, big.basepoint)
    big_of = {big.labels[v]: v for v in range(big.graph.vertex_count)}
    horizon = max((d for d in db if d >= 0), default=0)
    first_bad = horizon + 1
    for v, lab in enumerate(small.labels):
        d_small = ds[v]
        d_big = db[big_of[lab]]
        if d_small != d_big:
            anchor = d_big if d_big >= 0 else d_small
            first_bad = min(first_bad, anchor)
    return max(first_bad - 1, 0)
