"""Pure-Python kernel twins.

These are the reference implementations of the hot inner loops; the Cython
module `_ckernels` mirrors them with C integer arithmetic and is selected at
import when available.  Everything here is exact integer work: callers own
the scaling conventions that turn the results back into rationals.
"""

from __future__ import annotations

from array import array
from itertools import product

__all__ = [
    "bfs_tree",
    "ql_sums_scaled",
    "cn_lower_scaled",
    "parseval_violations",
]


def bfs_tree(dir_factor, dir_bar, factor_is_ao, factor_m1, radius, cap):
    """Breadth-first structural closure of the Cayley tree.

    Per-vertex outputs (index = BFS id, root = 0):
      parent, pdir      -- parent id and the direction index of the parent edge
      length            -- distance to the root
      dim               -- quantum dimension (exact; callers pass int or rational m1)
      last_factor       -- factor index of the last letter (-1 at the root)
      last_code         -- Ao: the letter's k; Au: the last symbol +-1

    Every vertex has exactly one ascending child per direction; the
    descending summand of any fusion is the parent, which gives the dimension
    recursion  m_child = m1 * m_v - m_parent  when the generator is absorbed
    and  m_child = m1 * m_v  otherwise.

    Raises ValueError("vertex cap") when the closure exceeds `cap` vertices.
    """
    ndir = len(dir_factor)
    parent = array("q", [-1])
    pdir = array("b", [-1])
    length = array("b", [0])
    last_factor = array("b", [-1])
    last_code = array("q", [0])
    dims = [factor_m1[0] * 0 + 1]  # 1 in the caller's arithmetic type

    v = 0
    while v < len(dims):
        if length[v] >= radius:
            break  # BFS order: all later vertices are at least this deep
        lf = last_factor[v]
        lc = last_code[v]
        dv = dims[v]
        dpar = dims[parent[v]] if v else None
        for d in range(ndir):
            f = dir_factor[d]
            b = dir_bar[d]
            m1 = factor_m1[f]
            if lf != f:
                child_dim = dv * m1
                code = 1 if factor_is_ao[f] else b
            elif factor_is_ao[f]:
                child_dim = dv * m1 - dpar
                code = lc + 1
            else:
                child_dim = dv * m1 - dpar if lc == -b else dv * m1
                code = b
            if len(dims) >= cap:
                raise ValueError("vertex cap")
            parent.append(v)
            pdir.append(d)
            length.append(length[v] + 1)
            last_factor.append(f)
            last_code.append(code)
            dims.append(child_dim)
        v += 1
    return parent, pdir, length, dims, last_factor, last_code


# ---------------------------------------------------------------------------
# tensor-power model sums; everything scaled to integers by powers of m1 = N.
#
# Per leg p the components of the rank-one e_i e_k^* under x = x0 + (Tr x/N) id,
# in the normalized Hilbert-Schmidt norm, scaled by N^2:
#   scalar part   -> delta_{ik}
#   traceless part-> N - delta_{ik}
#   full leg      -> N
# so ql_norm_sq(i, k, l) * N^(2n) is the integer product
#   prod_{p<l} N  *  (N - delta_l)  *  prod_{p>l} delta_p      (l >= 1)
#   prod_p delta_p                                             (l = 0).
# ---------------------------------------------------------------------------

def _ql_scaled_one(i_idx, k_idx, l, N):
    n = len(i_idx)
    if l == 0:
        out = 1
        for p in range(n):
            if i_idx[p] != k_idx[p]:
                return 0
        return out
    out = N ** (l - 1)
    out *= N - (1 if i_idx[l - 1] == k_idx[l - 1] else 0)
    for p in range(l, n):
        if i_idx[p] != k_idx[p]:
            return 0
    return out


def ql_sums_scaled(N, n, i_idx):
    """[sum over all k of ql_norm_sq(i,k,l) * N^(2n) for l = 0..n], by enumeration."""
    sums = [0] * (n + 1)
    rng = range(1, N + 1)
    for k_idx in product(rng, repeat=n):
        for l in range(n + 1):
            sums[l] += _ql_scaled_one(i_idx, k_idx, l, N)
    return sums


def cn_lower_scaled(N, n, i_idx):
    """sum_k sum_l (N^(2(n-l)) - 1) * ql_norm_sq(i,k,l) * N^(2n), by enumeration.

    The caller divides by 2*(N^2-1)*N^(2n) to recover the exact lower bound.
    """
    total = 0
    rng = range(1, N + 1)
    weights = [N ** (2 * (n - l)) - 1 for l in range(n + 1)]
    for k_idx in product(rng, repeat=n):
        for l in range(n + 1):
            w = weights[l]
            if w:
                total += w * _ql_scaled_one(i_idx, k_idx, l, N)
    return total


def parseval_violations(N, n):
    """Number of index pairs (i, k) with sum_l ql_norm_sq != ||e_i e_k*||^2_HS.

    Scaled check: sum_l ql_scaled must equal N^n for every pair.  Returns 0
    on a correct decomposition.
    """
    bad = 0
    target = N ** n
    rng = range(1, N + 1)
    for i_idx in product(rng, repeat=n):
        for k_idx in product(rng, repeat=n):
            s = 0
            for l in range(n + 1):
                s += _ql_scaled_one(i_idx, k_idx, l, N)
            if s != target:
                bad += 1
    return bad
