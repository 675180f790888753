"""Enumerable low-rank cases: the Bruhat-Tits tree of SL_2(Q_p), the link of a
vertex for SL_3(Q_p), and the Galois fixed-point gap for Eisenstein
extensions.

Vertices are lattice classes keyed by a canonical matrix: scale a basis so
that its Hermite form has minimal entry valuation 0, then take the Hermite
form.  Neighbours of the class of L are the classes of the lattices M with
pL < M < L, one per proper nonzero subspace of L/pL = F_p^n.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

from .building import BuildingPoint, common_basis, relpos
from .errors import CapExceeded
from .linalg import ExactMatrix, hnf_dvr, matrix_to_json
from .scalars import FieldConfig

DEFAULT_CAP = 100_000


@dataclass(frozen=True)
class TreeVertex:
    key: ExactMatrix

    @property
    def config(self) -> FieldConfig:
        return self.key.config

    @property
    def p(self) -> int:
        return self.key.config.p

    @property
    def label(self) -> str:
        rows = matrix_to_json(self.key)
        return "[" + ",".join("[" + ",".join(r) + "]" for r in rows) + "]"

    def sort_key(self) -> bytes:
        return self.label.encode()

    def point(self) -> BuildingPoint:
        """The lattice norm of this class (weights 0 in the key basis)."""
        return BuildingPoint(self.key, (0,) * self.key.rows)

    def __lt__(self, other: "TreeVertex"):
        return self.sort_key() < other.sort_key()

    def __repr__(self):
        return f"TreeVertex({self.label})"


def canonical_vertex(M: ExactMatrix) -> TreeVertex:
    H = hnf_dvr(M)
    lo = min(e.val() for e in H.entries)
    if lo != 0:
        H = hnf_dvr(H.scale(Fraction(M.config.p) ** int(-lo)))
    return TreeVertex(H)


def standard_vertex(p: int, n: int = 2) -> TreeVertex:
    return TreeVertex(ExactMatrix.identity(n, FieldConfig(p)))


def subspaces(n: int, p: int, k: int) -> Iterator[list]:
    """k-dimensional subspaces of F_p^n, each as its reduced row echelon rows."""
    for pivots in itertools.combinations(range(n), k):
        free = [(r, c) for r in range(k) for c in range(pivots[r] + 1, n) if c not in pivots]
        for vals in itertools.product(range(p), repeat=len(free)):
            rows = [[0] * n for _ in range(k)]
            for r, c in enumerate(pivots):
                rows[r][c] = 1
            for (r, c), v in zip(free, vals):
                rows[r][c] = v
            yield rows


def _sublattice_matrix(rows: list, n: int, p: int) -> list:
    """Columns spanning S + p Z_p^n for the subspace with echelon rows."""
    pivots = {r.index(1) for r in rows}
    cols = [list(r) for r in rows]
    cols += [[p * int(i == j) for i in range(n)] for j in range(n) if j not in pivots]
    return cols


def lattice_neighbors(v: TreeVertex) -> list:
    K = v.key
    n, p = K.rows, v.p
    cfg = K.config
    out = set()
    for k in range(1, n):
        for rows in subspaces(n, p, k):
            N = ExactMatrix.from_columns(_sublattice_matrix(rows, n, p), cfg)
            out.add(canonical_vertex(K @ N))
    return sorted(out)


def neighbors(v: TreeVertex) -> list:
    return lattice_neighbors(v)


def ball_size(p: int, r: int) -> int:
    return 1 + sum((p + 1) * p ** (k - 1) for k in range(1, r + 1))


def bfs(v: TreeVertex, r: int, cap: int = DEFAULT_CAP):
    """Breadth-first enumeration to depth r: (depth map, parent map)."""
    if r < 0:
        raise ValueError("radius must be non-negative")
    if v.key.rows == 2 and ball_size(v.p, r) > cap:
        raise CapExceeded(f"ball of radius {r} has {ball_size(v.p, r)} vertices > cap {cap}")
    depth = {v: 0}
    parent = {v: None}
    queue = deque([v])
    while queue:
        u = queue.popleft()
        if depth[u] == r:
            continue
        for w in lattice_neighbors(u):
            if w not in depth:
                depth[w] = depth[u] + 1
                parent[w] = u
                if len(depth) > cap:
                    raise CapExceeded(f"more than {cap} vertices")
                queue.append(w)
    return depth, parent


def ball(v: TreeVertex, r: int, cap: int = DEFAULT_CAP) -> list:
    depth, _ = bfs(v, r, cap)
    return sorted(depth)


def ball_edges(v: TreeVertex, r: int, cap: int = DEFAULT_CAP):
    """Vertices and the undirected adjacency edges among them, canonically sorted."""
    depth, _ = bfs(v, r, cap)
    verts = sorted(depth)
    inside = set(verts)
    edges = set()
    for u in verts:
        if depth[u] == r:
            # neighbours of the outer sphere point outward except the parent
            continue
        for w in lattice_neighbors(u):
            if w in inside:
                edges.add(tuple(sorted((u, w))))
    return verts, sorted(edges)


def sphere_sizes(v: TreeVertex, r: int, cap: int = DEFAULT_CAP) -> list:
    depth, _ = bfs(v, r, cap)
    sizes = [0] * (r + 1)
    for d in depth.values():
        sizes[d] += 1
    return sizes


def tree_distance(u: TreeVertex, v: TreeVertex) -> int:
    return int(relpos(u.point(), v.point()).gap())


def path(u: TreeVertex, v: TreeVertex) -> list:
    """The geodesic u = v_0, ..., v_n = v, read off a common adapted basis."""
    if u == v:
        return [u]
    f, wu, wv = common_basis(u.point(), v.point())
    p = u.p
    cfg = f.config
    delta = [b - a for a, b in zip(wu, wv)]
    n = int(delta[1] - delta[0])
    out = []
    for t in range(n + 1):
        c0 = [x * Fraction(p) ** int(-(wu[0] + delta[0])) for x in f.column(0)]
        c1 = [x * Fraction(p) ** int(-(wu[1] + delta[0] + t)) for x in f.column(1)]
        out.append(canonical_vertex(ExactMatrix.from_columns([c0, c1], cfg)))
    return out


def link_counts_sl3(cfg: FieldConfig, cap: int = DEFAULT_CAP):
    """(link size, triangles per edge) around the standard vertex for SL_3.

    Triangles are counted in the building itself: an edge {M, N} lies in as
    many triangles as M and N have common neighbours.  Every edge at the
    standard vertex and every edge of its link is checked.
    """
    if cfg.m != 1:
        raise ValueError("link enumeration works over the base field")
    p = cfg.p
    size = 2 * (p * p + p + 1)
    if p > 7 or size > cap:
        raise CapExceeded(f"link enumeration for p={p} exceeds the cap")
    L = standard_vertex(p, 3)
    link = lattice_neighbors(L)
    nbrs = {L: set(link)}
    for M in link:
        nbrs[M] = set(lattice_neighbors(M))
    counts = set()
    for M in link:
        counts.add(len(nbrs[L] & nbrs[M]))
        for N in nbrs[M] & nbrs[L]:
            counts.add(len(nbrs[M] & nbrs[N]))
    if len(counts) != 1:
        raise AssertionError(f"triangle counts not constant: {sorted(counts)}")
    return len(link), counts.pop()


def link_incidence(p: int):
    """Lines and planes of F_p^3 and the line-in-plane incidence edges."""
    lines = [tuple(map(tuple, s)) for s in subspaces(3, p, 1)]
    planes = [tuple(map(tuple, s)) for s in subspaces(3, p, 2)]

    def in_plane(line, plane):
        v = line[0]
        # plane = row space of two echelon rows; test v by brute force
        a, b = plane
        return any(all((s * a[i] + t * b[i] - v[i]) % p == 0 for i in range(3))
                   for s in range(p) for t in range(p))

    edges = [(l, P) for l in lines for P in planes if in_plane(l, P)]
    return lines, planes, edges


def galois_gap(cfg: FieldConfig, e: int):
    """(gap exists, v(alpha)) for a totally ramified Galois extension of degree e
    given by an Eisenstein polynomial with v(a_0) = 1."""
    if e < 1:
        raise ValueError("degree must be positive")
    return e % cfg.p == 0, Fraction(1, e)

