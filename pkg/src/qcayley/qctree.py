"""Weighted hilbertian structure on the classical Cayley tree.

Orthonormal bases and the maps between them:

* vertex basis ``xt_a`` (one unit vector per vertex; the unnormalized
  vectors carry weight ``m_a``),
* geometric (antisymmetric) edge basis ``xt_{a^b}``, one per ascending edge,
  keyed here by the upper endpoint (the parent is unique),
* oriented edge basis, the normalized ``x_(s,t)`` with
  ``||x_(s,t)||^2 = m_s m_t m_g``; keys are (upper endpoint, +1/-1).

The target map on the normalized antisymmetric basis is

    E2(xt_{a^b}) = sqrt(m_g/2) * ( sqrt(m_a/m_b) xt_b - sqrt(m_b/m_a) xt_a )

with the source map O = E2 after edge reversal.  All coefficients live in
the exact Radical scalar type: products of the square-root weights collapse
to rationals exactly, which is what the telescoping checks rely on.

Path vectors sum ``sqrt(2/m_g) xt_{a_i ^ a_{i+1}} / sqrt(m_i m_{i+1})``
along geodesics.  Their infinite-geodesic limits, the half-line inverse
series and its Gram entries are returned as truncations with certified
geometric tail bounds (per-step dimension growth >= a floor rho > 1).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .cayley import CayleyTree, GeodesicRay, canonical_ray_pattern
from .errors import GateError
from .fusion import (
    ORTHOGONAL,
    Irrep,
    QuantumGroupSpec,
    a_param,
    ao_dims,
    growth_floor,
)
from .scalars import QQ, Interval, Radical, sqrt_rational

__all__ = [
    "VertexVector",
    "GeomEdgeVector",
    "OrientedEdgeVector",
    "e2",
    "o_source",
    "theta",
    "antisymmetrize",
    "embed_oriented",
    "counit",
    "path_vector",
    "path_norm_sq",
    "path_target",
    "fixed_vector",
    "FixedVectorResult",
    "e2_inverse_ao",
    "InverseResult",
    "TailCertificate",
    "gram",
    "gram_bound",
]

_HALF = QQ(1, 2)


class _SparseVector:
    """Finitely supported coefficient map with exact Radical entries."""

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Optional[dict] = None):
        if coeffs:
            cleaned = {}
            for k, v in coeffs.items():
                r = v if isinstance(v, Radical) else Radical.from_rational(v)
                if not r.is_zero():
                    cleaned[k] = r
            self._coeffs = cleaned
        else:
            self._coeffs = {}

    @classmethod
    def unit(cls, key):
        return cls({key: Radical.from_rational(1)})

    @property
    def support(self):
        return self._coeffs.keys()

    def coeff(self, key) -> Radical:
        return self._coeffs.get(key, Radical({}))

    def items(self):
        return self._coeffs.items()

    def is_zero(self) -> bool:
        return not self._coeffs

    def __len__(self):
        return len(self._coeffs)

    def __add__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        out = dict(self._coeffs)
        for k, v in other._coeffs.items():
            cur = out.get(k)
            if cur is None:
                out[k] = v
            else:
                s = cur + v
                if s.is_zero():
                    del out[k]
                else:
                    out[k] = s
        new = type(self).__new__(type(self))
        new._coeffs = out
        return new

    def __neg__(self):
        new = type(self).__new__(type(self))
        new._coeffs = {k: -v for k, v in self._coeffs.items()}
        return new

    def __sub__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        return self + (-other)

    def scaled(self, factor):
        f = factor if isinstance(factor, Radical) else Radical.from_rational(factor)
        if f.is_zero():
            return type(self)()
        new = type(self).__new__(type(self))
        new._coeffs = {k: v * f for k, v in self._coeffs.items()}
        return new

    def __eq__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        return self._coeffs == other._coeffs

    def __hash__(self):
        return hash(frozenset((k, hash(v)) for k, v in self._coeffs.items()))

    def norm_sq(self) -> Radical:
        """Exact squared norm in the orthonormal basis."""
        total = Radical({})
        for v in self._coeffs.values():
            total = total + v * v
        return total

    def __repr__(self):
        inner = ", ".join(f"{k}: {v}" for k, v in sorted(self._coeffs.items(),
                                                         key=lambda kv: str(kv[0])))
        return f"{type(self).__name__}({{{inner}}})"


class VertexVector(_SparseVector):
    """Coefficients over the orthonormal vertex basis, keyed by vertex id."""


class GeomEdgeVector(_SparseVector):
    """Coefficients over the antisymmetric edge basis, keyed by upper endpoint."""


class OrientedEdgeVector(_SparseVector):
    """Coefficients over normalized oriented edges, keyed by (upper endpoint, +-1).

    Orientation +1 points away from the root (ascending), -1 towards it.
    """


def _edge_data(tree, child_vid: int, unit_weights: bool):
    """(m_parent, m_child, m_gamma, parent_vid) of the edge below child_vid."""
    parent = tree.parent(child_vid)
    if parent is None:
        raise ValueError(f"vertex {child_vid} is the root; it has no parent edge")
    pvid, direction = parent
    if unit_weights:
        one = QQ(1)
        return one, one, one, pvid
    return tree.dim(pvid), tree.dim(child_vid), tree.dir_dim(direction), pvid


def e2(tree, vec, unit_weights: bool = False) -> VertexVector:
    """Target map: antisymmetric or oriented edge vectors to vertex vectors."""
    out: dict = {}

    def bump(vid, value):
        cur = out.get(vid)
        s = value if cur is None else cur + value
        if s.is_zero():
            out.pop(vid, None)
        else:
            out[vid] = s

    if isinstance(vec, GeomEdgeVector):
        for c, coeff in vec.items():
            ma, mb, mg, p = _edge_data(tree, c, unit_weights)
            factor = sqrt_rational(mg * _HALF)
            bump(c, coeff * factor * sqrt_rational(ma / mb))
            bump(p, -(coeff * factor * sqrt_rational(mb / ma)))
        return VertexVector(out)
    if isinstance(vec, OrientedEdgeVector):
        for (c, sign), coeff in vec.items():
            ma, mb, mg, p = _edge_data(tree, c, unit_weights)
            if sign > 0:  # edge (parent -> child): target is the child
                bump(c, coeff * sqrt_rational(ma * mg / mb))
            else:  # reversed edge: target is the parent
                bump(p, coeff * sqrt_rational(mb * mg / ma))
        return VertexVector(out)
    raise TypeError("e2 expects a GeomEdgeVector or OrientedEdgeVector")


def o_source(tree, vec: OrientedEdgeVector, unit_weights: bool = False) -> VertexVector:
    """Source map on oriented vectors: O(x_(s,t)) = (m_t m_g / m_s) x_s, normalized."""
    if not isinstance(vec, OrientedEdgeVector):
        raise TypeError("o_source expects an OrientedEdgeVector")
    out: dict = {}

    def bump(vid, value):
        cur = out.get(vid)
        s = value if cur is None else cur + value
        if s.is_zero():
            out.pop(vid, None)
        else:
            out[vid] = s

    for (c, sign), coeff in vec.items():
        ma, mb, mg, p = _edge_data(tree, c, unit_weights)
        if sign > 0:  # source is the parent
            bump(p, coeff * sqrt_rational(mb * mg / ma))
        else:
            bump(c, coeff * sqrt_rational(ma * mg / mb))
    return VertexVector(out)


def theta(tree, vec):
    """Edge reversal: swaps the two orientations; -id on antisymmetric vectors."""
    if isinstance(vec, OrientedEdgeVector):
        return OrientedEdgeVector({(c, -sign): coeff for (c, sign), coeff in vec.items()})
    if isinstance(vec, GeomEdgeVector):
        return -vec
    raise TypeError("theta expects an edge vector")


_SQRT_HALF = sqrt_rational(_HALF)


def antisymmetrize(tree, vec: OrientedEdgeVector) -> GeomEdgeVector:
    """Orthogonal projection onto antisymmetric vectors, in the geometric basis."""
    out: dict = {}
    for (c, sign), coeff in vec.items():
        term = coeff * _SQRT_HALF if sign > 0 else -(coeff * _SQRT_HALF)
        cur = out.get(c)
        s = term if cur is None else cur + term
        if s.is_zero():
            out.pop(c, None)
        else:
            out[c] = s
    return GeomEdgeVector(out)


def embed_oriented(tree, vec: GeomEdgeVector) -> OrientedEdgeVector:
    """Isometric inclusion of the antisymmetric basis into oriented vectors."""
    out: dict = {}
    for c, coeff in vec.items():
        half = coeff * _SQRT_HALF
        out[(c, 1)] = half
        out[(c, -1)] = -half
    return OrientedEdgeVector(out)


def counit(tree, vec: VertexVector, unit_weights: bool = False) -> Radical:
    """Counit at the hilbertian level: eps(xt_a) = m_a, extended linearly."""
    total = Radical({})
    for vid, coeff in vec.items():
        weight = QQ(1) if unit_weights else tree.dim(vid)
        total = total + coeff * weight
    return total


# ---------------------------------------------------------------------------
# path vectors
# ---------------------------------------------------------------------------

def _resolve_vid(tree, alpha) -> int:
    if isinstance(alpha, int):
        return alpha
    if isinstance(alpha, Irrep):
        return tree.vertex_id(alpha)
    raise TypeError("expected a vertex id or an Irrep")


def path_vector(tree, alpha, unit_weights: bool = False) -> GeomEdgeVector:
    """Canonical preimage of xt_a/m_a - xt_root under E2, summed along the geodesic."""
    vid = _resolve_vid(tree, alpha)
    coeffs = {}
    ids = tree.geodesic_ids(vid)
    for c in ids[1:]:
        ma, mb, mg, _ = _edge_data(tree, c, unit_weights)
        coeffs[c] = sqrt_rational(2 / (mg * ma * mb))
    return GeomEdgeVector(coeffs)


def path_norm_sq(tree, alpha, unit_weights: bool = False):
    """Exact rational ||path_vector||^2 without building the vector."""
    vid = _resolve_vid(tree, alpha)
    total = QQ(0)
    for c in tree.geodesic_ids(vid)[1:]:
        ma, mb, mg, _ = _edge_data(tree, c, unit_weights)
        total += 2 / (mg * ma * mb)
    return total


def path_target(tree, alpha, unit_weights: bool = False) -> VertexVector:
    """xt_a / m_a - xt_root: what E2 of the path vector must equal exactly."""
    vid = _resolve_vid(tree, alpha)
    m = QQ(1) if unit_weights else tree.dim(vid)
    return VertexVector({vid: QQ(1) / m}) - VertexVector({0: QQ(1)})


# ---------------------------------------------------------------------------
# certified truncations: fixed vector, half-line inverse, Gram entries
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TailCertificate:
    """Geometric domination certificate: term(i+1) <= ratio * term(i) for i >= start."""

    ratio: object
    start: int
    growth_floor: object


def _spec_of(source) -> QuantumGroupSpec:
    return source if isinstance(source, QuantumGroupSpec) else source.spec


@dataclass
class FixedVectorResult:
    vector: GeomEdgeVector
    tail_bound: object
    norm_sq: object
    residual_norm: object
    radius: int
    basis: object
    certificate: TailCertificate

    def __iter__(self):
        yield self.vector
        yield self.tail_bound

    @property
    def norm_sq_interval(self) -> Interval:
        return Interval(self.norm_sq, self.norm_sq + self.tail_bound)


def fixed_vector(source, radius: int, pattern=None) -> FixedVectorResult:
    """Truncated infinite-geodesic path vector with a certified tail.

    `source` is a CayleyTree (vector keyed by its vertex ids when it is deep
    enough) or a QuantumGroupSpec (vector keyed by ray ids).  The default
    geodesic is `canonical_ray_pattern`.  Refused when a factor used by the
    pattern has generator dimension <= 2: the dimensions along the ray then
    grow too slowly for the defining series to converge (the exceptional
    generators of quantum dimension 1 and 2).
    """
    spec = _spec_of(source)
    if pattern is None:
        pattern = canonical_ray_pattern(spec)
    used = sorted({d.factor for d in pattern})
    rho = min(growth_floor(spec.factors[f].dimq) for f in used)
    ray = GeodesicRay(spec, pattern, radius + 1)

    basis = source if isinstance(source, CayleyTree) and source.radius >= radius + 1 else ray
    if basis is not ray and isinstance(source, CayleyTree):
        # ray ids == tree ids only for the half line; map explicitly otherwise
        id_of = [source.vertex_id(ray.word(i)) for i in range(radius + 1)]
    else:
        id_of = list(range(radius + 1))

    coeffs = {}
    norm_sq = QQ(0)
    for i in range(radius):
        d = ray.parent(i + 1)[1]
        mg = ray.dir_dim(d)
        ma, mb = ray.dim(i), ray.dim(i + 1)
        t = 2 / (mg * ma * mb)
        norm_sq += t
        coeffs[id_of[i + 1]] = sqrt_rational(t)
    vector = GeomEdgeVector(coeffs)

    mg_min = min(ray.dir_dim(d) for d in pattern)
    m_r, m_r1 = ray.dim(radius), ray.dim(radius + 1)
    tail = (2 / (mg_min * m_r * m_r1)) / (1 - 1 / (rho * rho))
    cert = TailCertificate(ratio=1 / (rho * rho), start=radius, growth_floor=rho)

    # sign audit: termwise E2 sends the truncation to xt_{a_R}/m_R - xi_0,
    # so the truncation approximates a preimage of -xi_0; report the exact
    # residual against that sign convention.
    residual = e2(basis, vector) + VertexVector({0: QQ(1)})
    expected = VertexVector({id_of[radius]: QQ(1) / m_r})
    if residual != expected:
        raise AssertionError("fixed-vector residual audit failed")
    return FixedVectorResult(vector, tail, norm_sq, QQ(1) / m_r, radius, basis, cert)


def _half_line_dims(source, count: int):
    spec = _spec_of(source)
    if len(spec.factors) != 1 or spec.factors[0].kind != ORTHOGONAL:
        raise GateError("half-line operations require a single orthogonal factor")
    dimq = spec.factors[0].dimq
    if dimq < 3:
        raise GateError(
            f"generator quantum dimension {dimq} < 3: the invertibility estimates "
            "assume geometric dimension growth (dimension-2 generators are excluded)"
        )
    return dimq, ao_dims(dimq, count)


@dataclass
class InverseResult:
    vector: GeomEdgeVector
    tail_bound: object
    residual_norm: object
    k: int
    radius: int
    basis: object
    certificate: TailCertificate

    def __iter__(self):
        yield self.vector
        yield self.tail_bound


def e2_inverse_ao(source, k: int, radius: int) -> InverseResult:
    """Truncation of the half-line inverse series for E2.

    E2^{-1}(xt_k) = -m_k sqrt(2/m_1) sum_{i>=k} xt_{i^i+1} / sqrt(m_i m_{i+1});
    the truncation at `radius` satisfies
    E2(truncation) = xt_k - (m_k/m_{R+1}) xt_{R+1}  exactly.
    """
    if k < 0 or radius < k:
        raise ValueError("need 0 <= k <= radius")
    spec = _spec_of(source)
    dimq, dims = _half_line_dims(source, radius + 3)
    rho = growth_floor(dimq)
    if isinstance(source, CayleyTree) and source.radius >= radius + 1:
        basis = source
    else:
        basis = GeodesicRay(spec, canonical_ray_pattern(spec), radius + 1)

    m1, mk = dims[1], dims[k]
    coeffs = {}
    for i in range(k, radius + 1):
        coeffs[i + 1] = -(mk * sqrt_rational(2 / (m1 * dims[i] * dims[i + 1])))
    vector = GeomEdgeVector(coeffs)

    tail = (2 * mk * mk / (m1 * dims[radius + 1] * dims[radius + 2])) / (1 - 1 / (rho * rho))
    cert = TailCertificate(ratio=1 / (rho * rho), start=radius, growth_floor=rho)

    residual = e2(basis, vector) - VertexVector({k: QQ(1)})
    expected = VertexVector({radius + 1: -(mk / dims[radius + 1])})
    if residual != expected:
        raise AssertionError("inverse-series residual audit failed")
    return InverseResult(vector, tail, mk / dims[radius + 1], k, radius, basis, cert)


def gram(source, k: int, l: int, radius: int) -> Interval:
    """Certified interval for the Gram entry of the half-line inverse series:

        (2/m_1) sum_{i >= max(k,l)} m_k m_l / (m_i m_{i+1}).
    """
    j = max(k, l)
    if min(k, l) < 0 or radius < j:
        raise ValueError("need 0 <= k, l <= radius")
    dimq, dims = _half_line_dims(source, radius + 3)
    rho = growth_floor(dimq)
    m1 = dims[1]
    weight = 2 * dims[k] * dims[l] / m1
    partial = QQ(0)
    for i in range(j, radius + 1):
        partial += weight / (dims[i] * dims[i + 1])
    tail = (weight / (dims[radius + 1] * dims[radius + 2])) / (1 - 1 / (rho * rho))
    return Interval(partial, partial + tail)


def gram_bound(source, kmax: int, radius: Optional[int] = None):
    """Smallest D with every computed entry (k, l <= kmax) <= D * a^{-|k-l|}.

    Upper interval ends are used on both the entries and the powers of a, so
    the returned rational D certifies the decay inequality for every entry.
    """
    if radius is None:
        radius = kmax + 40
    spec = _spec_of(source)
    dimq, _ = _half_line_dims(source, 2)
    a_hi = a_param(dimq).interval.hi
    best = QQ(0)
    for k in range(kmax + 1):
        for l in range(k, kmax + 1):
            entry_hi = gram(source, k, l, radius).hi
            cand = entry_hi * a_hi ** (l - k)
            if cand > best:
                best = cand
    return best
