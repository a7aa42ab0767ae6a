"""Tensor-power model for the unitary factor: exact cocycle-norm bounds.

Monomial vectors of the n-th generator power are identified with rank-one
operators e_i e_k^* in the n-fold matrix algebra under the normalized
Hilbert-Schmidt norm.  Splitting every leg as x = x0 + (Tr x / m1) id grades
the space by the last non-scalar leg; the component norms are exact
rationals, and summing them with the chain weights m1^{2(i-1)} gives
two-sided bounds for the squared cocycle norms, growing linearly in n.

Everything is per unit source vector; only norms are materialized, never the
chain vectors themselves (their norms are pinned, their ambient spaces are
not needed).  The exhaustive multi-index enumerations are the definitional
route and double as the oracle for the closed-form summations.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import _core
from .errors import GateError
from .scalars import QQ

__all__ = [
    "LegDecomposition",
    "EtaChain",
    "ql_norm_sq",
    "ql_sums",
    "eta_chain",
    "cg_bounds",
    "cg_bounds_closed",
    "cn_lower",
    "check_index_independence",
    "parseval_violations",
]


def _check_n(N: int) -> None:
    if not isinstance(N, int) or N < 1:
        raise ValueError("N must be a positive integer")


def _gate_dimension(N: int) -> None:
    if N == 2:
        raise GateError(
            "generator quantum dimension 2 excluded (the exceptional unitary "
            "and orthogonal generators of dimension 2 have no geometric growth)"
        )
    if N < 3:
        raise GateError(f"need generator dimension >= 3, got {N}")


@dataclass(frozen=True)
class LegDecomposition:
    """Per-leg split of e_i e_k^* into scalar and traceless parts (squared norms)."""

    scalar_part_sq: object
    traceless_part_sq: object

    @classmethod
    def of(cls, i: int, k: int, N: int) -> "LegDecomposition":
        delta = 1 if i == k else 0
        return cls(QQ(delta, N * N), QQ(1, N) - QQ(delta, N * N))

    @property
    def total_sq(self):
        return self.scalar_part_sq + self.traceless_part_sq


def _validate_indices(i_idx, k_idx, N: int) -> int:
    if len(i_idx) != len(k_idx):
        raise ValueError("multi-index length mismatch")
    for seq in (i_idx, k_idx):
        for e in seq:
            if not 1 <= e <= N:
                raise ValueError(f"multi-index entry {e} outside 1..{N}")
    return len(i_idx)


def ql_norm_sq(i_idx, k_idx, l: int, N: int):
    """Squared norm of the grade-l component of the monomial (i, k); exact.

    Grade l means: legs before l are unrestricted, leg l is traceless, legs
    after l are scalar.  Grade 0 is the all-scalar component.
    """
    _check_n(N)
    n = _validate_indices(i_idx, k_idx, N)
    if not 0 <= l <= n:
        raise ValueError(f"l = {l} outside 0..{n}")
    out = QQ(1)
    for p in range(n):
        leg = LegDecomposition.of(i_idx[p], k_idx[p], N)
        if p + 1 < l:
            out *= leg.total_sq
        elif p + 1 == l:
            out *= leg.traceless_part_sq
        else:
            out *= leg.scalar_part_sq
        if not out:
            return out
    return out


def ql_sums(i_idx, N: int):
    """[sum over all k of ql_norm_sq(i, k, l) for l = 0..n], by enumeration."""
    _check_n(N)
    n = len(i_idx)
    scaled = _core.ql_sums_scaled(N, n, tuple(i_idx))
    scale = QQ(N) ** (2 * n)
    return [QQ(s) / scale for s in scaled]


def eta_chain(n: int, l: int, N: int) -> "EtaChain":
    """Norms of the preimage chain for a grade-l source: ||eta_i||^2 = m1^{2(i-1)},
    vanishing beyond i = n - l + 1.  Per unit source norm."""
    _gate_dimension(N)
    if not 0 <= l <= n:
        raise ValueError(f"l = {l} outside 0..{n}")
    return EtaChain(n, l, tuple(QQ(N) ** (2 * (i - 1)) for i in range(1, n - l + 2)))


@dataclass(frozen=True)
class EtaChain:
    n: int
    l: int
    norms_sq: tuple


def cg_bounds(n: int, l: int, N: int):
    """Exact two-sided bounds for the squared cocycle norm of a grade-l unit vector.

    lower = (1/2) sum_{i=1}^{n-l} m1^{2(i-1)}  (the chain terms whose
    antisymmetric projections are orthogonal and norm-halving); upper adds
    the full norm of the one remaining chain term, since the projection is a
    contraction.
    """
    chain = eta_chain(n, l, N)
    lower = sum(chain.norms_sq[:-1], QQ(0)) / 2
    upper = lower + chain.norms_sq[-1]
    return lower, upper


def cg_bounds_closed(n: int, l: int, N: int):
    """Geometric-sum form of cg_bounds: lower = (m1^{2(n-l)} - 1)/(2(m1^2 - 1))."""
    _gate_dimension(N)
    if not 0 <= l <= n:
        raise ValueError(f"l = {l} outside 0..{n}")
    m1sq = QQ(N) ** 2
    lower = (m1sq ** (n - l) - 1) / (2 * (m1sq - 1))
    return lower, lower + m1sq ** (n - l)


def cn_lower(n: int, N: int, i_idx=None, method: str = "enumerate"):
    """Certified lower bound for the squared norm of the n-th power cocycle matrix,
    per unit basis vector:  sum_k sum_l cg_lower(n, l) * ql_norm_sq(i, k, l).

    method="enumerate" runs the definitional exhaustive sum over all N^n
    multi-indices k; method="closed" evaluates the same double sum through
    the factorized per-grade totals.  The value does not depend on i
    (see check_index_independence).
    """
    _gate_dimension(N)
    if n < 1:
        raise ValueError("n must be >= 1")
    if i_idx is None:
        i_idx = (1,) * n
    _validate_indices(i_idx, i_idx, N)
    if method == "enumerate":
        scaled = _core.cn_lower_scaled(N, n, tuple(i_idx))
        return QQ(scaled) / (2 * (QQ(N) ** 2 - 1) * QQ(N) ** (2 * n))
    if method == "closed":
        m1sq = QQ(N) ** 2
        total = QQ(0)
        # grade totals over all k: S_0 = m1^{-2n}, S_l = (1 - m1^{-2}) m1^{-2(n-l)}
        for l in range(n + 1):
            lower = (m1sq ** (n - l) - 1) / (2 * (m1sq - 1))
            if l == 0:
                s_l = m1sq ** (-n)
            else:
                s_l = (1 - 1 / m1sq) * m1sq ** (-(n - l))
            total += lower * s_l
        return total
    raise ValueError(f"unknown method {method!r}")


def check_index_independence(n: int, N: int) -> bool:
    """Exhaustively confirm cn_lower is the same for every source multi-index."""
    from itertools import product

    values = {cn_lower(n, N, i_idx=i) for i in product(range(1, N + 1), repeat=n)}
    return len(values) == 1


def parseval_violations(n: int, N: int) -> int:
    """Pairs (i, k) where the grade components fail to resolve the full norm.

    Zero on a correct decomposition: sum_l ql_norm_sq(i,k,l) must equal the
    normalized Hilbert-Schmidt norm m1^{-n} of the rank-one monomial.
    """
    _check_n(N)
    return _core.parseval_violations(N, n)
