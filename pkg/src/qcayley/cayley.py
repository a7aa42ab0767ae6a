"""Classical Cayley tree of a free product, built breadth-first up to a radius.

Vertices are interned with BFS-order integer ids (deterministic); per-vertex
data lives in flat arrays so that trees with ~10^6 vertices stay cheap.  The
reduced word of a vertex is materialized lazily from the parent chain, since
the big acceptance sweeps only need ids and dimensions.

Every vertex has exactly one ascending child per direction and one parent;
the descending summand of any generator fusion is the parent, which is what
makes the incremental dimension recursion in the BFS kernel exact.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Union

from . import _core
from .errors import TreeSizeError
from .scalars import QQ
from .fusion import (
    ORTHOGONAL,
    UNITARY,
    Direction,
    Irrep,
    QuantumGroupSpec,
    dual_direction,
    fuse_generator,
    irrep_length,
    quantum_dim,
    validate_irrep,
)

__all__ = [
    "Edge",
    "CayleyTree",
    "GeodesicRay",
    "build_tree",
    "geodesic",
    "sphere",
    "validate",
    "ValidationReport",
    "canonical_ray_pattern",
    "iter_ray",
]

DEFAULT_VERTEX_CAP = 200_000


@dataclass(frozen=True)
class Edge:
    source: Irrep
    target: Irrep
    direction: Direction
    ascending: bool


def _direction_steps(spec: QuantumGroupSpec, alpha: Irrep) -> list[Direction]:
    """Directions of the geodesic from the root to alpha, derived letterwise."""
    steps: list[Direction] = []
    for fidx, payload in alpha.word:
        if isinstance(payload, int):
            steps.extend([Direction(fidx, 0)] * payload)
        else:
            steps.extend(Direction(fidx, s) for s in payload)
    return steps


class CayleyTree:
    """Rooted, direction-labelled tree of irreducibles up to a radius."""

    def __init__(self, spec, radius, parent, pdir, length, dims, last_factor,
                 last_code, cap):
        self.spec = spec
        self.radius = radius
        self.cap = cap
        self.directions = spec.directions
        self._parent = parent
        self._pdir = pdir
        self._length = length
        self._dims = dims
        self._last_factor = last_factor
        self._last_code = last_code
        n = len(dims)
        ndir = len(self.directions)
        children = [-1] * (n * ndir)
        for v in range(1, n):
            children[parent[v] * ndir + pdir[v]] = v
        self._children = children
        self._words: list = [None] * n
        self._words[0] = Irrep(())
        # BFS order sorts by length; record sphere boundaries once
        starts = [0] * (radius + 2)
        for v in range(n):
            starts[length[v] + 1] = v + 1
        for i in range(1, radius + 2):
            starts[i] = max(starts[i], starts[i - 1])
        self._level_start = starts

    # -- basic accessors -----------------------------------------------------

    @property
    def n_vertices(self) -> int:
        return len(self._dims)

    @property
    def n_geometric_edges(self) -> int:
        return len(self._dims) - 1

    def dim(self, vid: int):
        return self._dims[vid]

    def length(self, vid: int) -> int:
        return self._length[vid]

    def parent(self, vid: int):
        """(parent id, direction of the ascending parent edge), None at the root."""
        if vid == 0:
            return None
        return self._parent[vid], self.directions[self._pdir[vid]]

    def dir_dim(self, d: Direction):
        return QQ(self.spec.factors[d.factor].dimq)

    def child(self, vid: int, d: Direction) -> int:
        idx = self.directions.index(d)
        c = self._children[vid * len(self.directions) + idx]
        if c < 0:
            raise KeyError(f"vertex {vid} has no stored child in direction {d}")
        return c

    def word(self, vid: int) -> Irrep:
        """Reduced word of a vertex, materialized from the parent chain."""
        w = self._words[vid]
        if w is not None:
            return w
        chain = []
        v = vid
        while self._words[v] is None:
            chain.append(v)
            v = self._parent[v]
        letters = list(self._words[v].word)
        for v2 in reversed(chain):
            d = self.directions[self._pdir[v2]]
            kind = self.spec.factors[d.factor].kind
            if letters and letters[-1][0] == d.factor:
                fidx, payload = letters[-1]
                if kind == ORTHOGONAL:
                    letters[-1] = (fidx, payload + 1)
                else:
                    letters[-1] = (fidx, payload + (d.bar,))
            else:
                payload = 1 if kind == ORTHOGONAL else (d.bar,)
                letters.append((d.factor, payload))
            self._words[v2] = Irrep(tuple(letters))
        return self._words[vid]

    def vertex_id(self, alpha: Irrep) -> int:
        """BFS id of a word; raises KeyError when it lies outside the tree."""
        validate_irrep(self.spec, alpha)
        if irrep_length(alpha) > self.radius:
            raise KeyError(f"{alpha} lies beyond radius {self.radius}")
        v = 0
        ndir = len(self.directions)
        for d in _direction_steps(self.spec, alpha):
            c = self._children[v * ndir + self.directions.index(d)]
            if c < 0:
                raise KeyError(f"{alpha} not generated; tree too small")
            v = c
        return v

    def __contains__(self, alpha: Irrep) -> bool:
        try:
            self.vertex_id(alpha)
            return True
        except (KeyError, ValueError):
            return False

    # -- traversal -----------------------------------------------------------

    def sphere_ids(self, n: int) -> range:
        if n > self.radius:
            raise ValueError(f"sphere radius {n} exceeds tree radius {self.radius}")
        return range(self._level_start[n], self._level_start[n + 1])

    def geodesic_ids(self, vid: int) -> list[int]:
        """Vertex ids along the unique ascending path root -> vid."""
        chain = [vid]
        while vid != 0:
            vid = self._parent[vid]
            chain.append(vid)
        chain.reverse()
        return chain

    def ascending_edges(self) -> Iterator[tuple]:
        """(parent id, child id, direction) for every geometric edge."""
        for v in range(1, self.n_vertices):
            yield self._parent[v], v, self.directions[self._pdir[v]]

    def edges(self) -> Iterator[Edge]:
        """Both orientations of every geometric edge."""
        for p, c, d in self.ascending_edges():
            pw, cw = self.word(p), self.word(c)
            yield Edge(pw, cw, d, True)
            yield Edge(cw, pw, dual_direction(self.spec, d), False)


def build_tree(spec: QuantumGroupSpec, radius: int,
               max_vertices: int = DEFAULT_VERTEX_CAP) -> CayleyTree:
    """Breadth-first closure of generator fusion from the root.

    Raises TreeSizeError instead of silently truncating when the closure
    would exceed `max_vertices` (unitary factors grow the tree as 2^radius).
    """
    if radius < 0:
        raise ValueError("radius must be >= 0")
    dirs = spec.directions
    dir_factor = [d.factor for d in dirs]
    dir_bar = [d.bar for d in dirs]
    factor_is_ao = [f.kind == ORTHOGONAL for f in spec.factors]

    all_int = all(f.dimq.denominator == 1 for f in spec.factors)
    if all_int:
        m1s = [int(f.dimq) for f in spec.factors]
        # compiled twin is int64-only; geometric bound keeps it safe
        max_dim_bound = (max(m1s) if m1s else 1) ** max(radius, 1)
        kernel = _core.bfs_tree if max_dim_bound < 2**62 else _core.pure.bfs_tree
    else:
        m1s = [QQ(f.dimq) for f in spec.factors]
        kernel = _core.pure.bfs_tree

    try:
        parent, pdir, length, dims, last_factor, last_code = kernel(
            dir_factor, dir_bar, factor_is_ao, m1s, radius, max_vertices)
    except ValueError as exc:
        if "vertex cap" in str(exc):
            raise TreeSizeError(
                f"tree for {spec} at radius {radius} exceeds the vertex cap "
                f"{max_vertices}; raise max_vertices explicitly if intended"
            ) from None
        raise
    if all_int:
        dims = [QQ(d) for d in dims]
    return CayleyTree(spec, radius, parent, pdir, length, dims, last_factor,
                      last_code, max_vertices)


def geodesic(tree: CayleyTree, alpha: Union[Irrep, int]) -> list[Edge]:
    """The unique ascending path root -> alpha as Edge objects."""
    vid = alpha if isinstance(alpha, int) else tree.vertex_id(alpha)
    ids = tree.geodesic_ids(vid)
    out = []
    for p, c in zip(ids, ids[1:]):
        out.append(Edge(tree.word(p), tree.word(c),
                        tree.directions[tree._pdir[c]], True))
    return out


def sphere(tree: CayleyTree, n: int) -> list[Irrep]:
    """All vertices at distance n from the root, in BFS order."""
    return [tree.word(v) for v in tree.sphere_ids(n)]


@dataclass
class ValidationReport:
    ok: bool
    n_vertices: int
    n_geometric_edges: int
    issues: list = field(default_factory=list)


def validate(tree: CayleyTree) -> ValidationReport:
    """Re-check the tree axioms and the fusion-dimension bookkeeping.

    Dimensions are recomputed letterwise from the words, independently of the
    incremental recursion used during the build.
    """
    spec = tree.spec
    issues = []
    n = tree.n_vertices
    for v in range(1, n):
        p = tree._parent[v]
        if tree.length(v) != tree.length(p) + 1:
            issues.append(f"vertex {v}: length not graded along parent edge")
        if quantum_dim(spec, tree.word(v)) != tree.dim(v):
            issues.append(f"vertex {v}: stored dimension disagrees with letterwise product")
    for p, c, d in tree.ascending_edges():
        summands = fuse_generator(spec, tree.word(p), d)
        if tree.word(c) != summands[-1]:
            issues.append(f"edge {p}->{c}: ascending fusion result mismatch")
        total = sum((quantum_dim(spec, s) for s in summands), QQ(0))
        if total != tree.dim(p) * tree.dir_dim(d):
            issues.append(f"edge {p}->{c}: dimension bookkeeping fails")
        if len(summands) == 2:
            # the generator absorbed the last letter of p: the reduced word is p's parent
            if p == 0 or summands[0] != tree.word(tree._parent[p]):
                issues.append(f"edge {p}->{c}: descending summand is not p's parent")
    edge_entries = sum(1 for c in tree._children if c >= 0)
    if edge_entries != n - 1:
        issues.append("child table does not have exactly V-1 entries")
    return ValidationReport(not issues, n, n - 1, issues)


# ---------------------------------------------------------------------------
# infinite geodesics (lazy rays)
# ---------------------------------------------------------------------------

def canonical_ray_pattern(spec: QuantumGroupSpec) -> tuple:
    """Default infinite geodesic: the half-line for a single Ao factor, the
    alternating generator/conjugate spine for a unitary factor, and an
    alternating two-factor spine otherwise."""
    for i, f in enumerate(spec.factors):
        if f.kind == UNITARY:
            return (Direction(i, 1), Direction(i, -1))
    if len(spec.factors) == 1:
        return (Direction(0, 0),)
    return (Direction(0, 0), Direction(1, 0))


def iter_ray(spec: QuantumGroupSpec, pattern=None):
    """Lazily walk an infinite geodesic: yields (word, quantum dimension).

    The first yield is the root; afterwards the pattern of directions is
    repeated forever, always taking the ascending fusion result.
    """
    if pattern is None:
        pattern = canonical_ray_pattern(spec)
    prev_dim = None
    word, dim = Irrep(()), QQ(1)
    i = 0
    while True:
        yield word, dim
        d = pattern[i % len(pattern)]
        summands = fuse_generator(spec, word, d)
        m1 = QQ(spec.factors[d.factor].dimq)
        nxt = m1 * dim - prev_dim if len(summands) == 2 else m1 * dim
        word, dim, prev_dim = summands[-1], nxt, dim
        i += 1


class GeodesicRay:
    """Finite prefix of an infinite geodesic, shaped like a path tree.

    Vertex ids are 0..steps; exposes the same accessors the vector operations
    need (dim, parent, length, word), so path and fixed-vector computations
    can run far beyond any materializable tree radius.
    """

    def __init__(self, spec: QuantumGroupSpec, pattern, steps: int):
        if not pattern:
            raise ValueError("empty direction pattern")
        self.spec = spec
        self.pattern = tuple(pattern)
        self.directions = spec.directions
        words = [Irrep(())]
        dims = [QQ(1)]
        dirs = []
        for i in range(steps):
            d = self.pattern[i % len(self.pattern)]
            summands = fuse_generator(spec, words[-1], d)
            ascending = summands[-1]
            m1 = QQ(spec.factors[d.factor].dimq)
            if len(summands) == 2:
                # descending summand is the previous ray vertex by construction
                if i == 0 or summands[0] != words[-2]:
                    raise ValueError("pattern does not trace a geodesic")
                dims.append(m1 * dims[-1] - dims[-2])
            else:
                dims.append(m1 * dims[-1])
            words.append(ascending)
            dirs.append(d)
        self._words = words
        self._dims = dims
        self._dirs = dirs

    @property
    def n_vertices(self) -> int:
        return len(self._words)

    def dim(self, vid: int):
        return self._dims[vid]

    def length(self, vid: int) -> int:
        return vid

    def parent(self, vid: int):
        if vid == 0:
            return None
        return vid - 1, self._dirs[vid - 1]

    def dir_dim(self, d: Direction):
        return QQ(self.spec.factors[d.factor].dimq)

    def word(self, vid: int) -> Irrep:
        return self._words[vid]

    def geodesic_ids(self, vid: int) -> list[int]:
        return list(range(vid + 1))

    def words(self) -> list:
        return list(self._words)
