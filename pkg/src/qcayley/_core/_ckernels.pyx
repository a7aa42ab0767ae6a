# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernel twins of `_pykernels` (int64 fast paths).

Same contracts as the pure module; callers guard the int64 range before
dispatching here (dimension growth is geometric, so the guard is a cheap
power estimate).
"""

from array import array

from cpython.mem cimport PyMem_Free, PyMem_Malloc

__all__ = [
    "bfs_tree",
    "ql_sums_scaled",
    "cn_lower_scaled",
    "parseval_violations",
]


def bfs_tree(dir_factor, dir_bar, factor_is_ao, factor_m1, int radius, long long cap):
    cdef int ndir = len(dir_factor)
    cdef int nfac = len(factor_m1)
    cdef long long est = 1, total_est = 1
    cdef int i
    # size estimate: full (ndir)-ary tree; also the exact count here
    for i in range(radius):
        est *= ndir
        total_est += est
        if total_est > cap:
            total_est = cap + 1
            break
    cdef Py_ssize_t alloc = <Py_ssize_t>(total_est if total_est <= cap else cap + 1)

    cdef long long* parent = <long long*>PyMem_Malloc(alloc * sizeof(long long))
    cdef signed char* pdir = <signed char*>PyMem_Malloc(alloc)
    cdef signed char* length = <signed char*>PyMem_Malloc(alloc)
    cdef long long* dims = <long long*>PyMem_Malloc(alloc * sizeof(long long))
    cdef signed char* last_factor = <signed char*>PyMem_Malloc(alloc)
    cdef long long* last_code = <long long*>PyMem_Malloc(alloc * sizeof(long long))
    if not (parent and pdir and length and dims and last_factor and last_code):
        raise MemoryError()

    cdef long long* c_m1 = <long long*>PyMem_Malloc(nfac * sizeof(long long))
    cdef signed char* c_isao = <signed char*>PyMem_Malloc(nfac)
    cdef signed char* c_df = <signed char*>PyMem_Malloc(ndir)
    cdef signed char* c_db = <signed char*>PyMem_Malloc(ndir)
    for i in range(nfac):
        c_m1[i] = factor_m1[i]
        c_isao[i] = 1 if factor_is_ao[i] else 0
    for i in range(ndir):
        c_df[i] = dir_factor[i]
        c_db[i] = dir_bar[i]

    parent[0] = -1
    pdir[0] = -1
    length[0] = 0
    dims[0] = 1
    last_factor[0] = -1
    last_code[0] = 0

    cdef Py_ssize_t count = 1, v = 0
    cdef int d, f, b
    cdef signed char lf
    cdef long long lc, dv, dpar, m1, child_dim, code
    cdef bint overflow = False
    try:
        while v < count:
            if length[v] >= radius:
                break
            lf = last_factor[v]
            lc = last_code[v]
            dv = dims[v]
            dpar = dims[parent[v]] if v > 0 else 0
            for d in range(ndir):
                f = c_df[d]
                b = c_db[d]
                m1 = c_m1[f]
                if lf != f:
                    child_dim = dv * m1
                    code = 1 if c_isao[f] else b
                elif c_isao[f]:
                    child_dim = dv * m1 - dpar
                    code = lc + 1
                else:
                    child_dim = dv * m1 - dpar if lc == -b else dv * m1
                    code = b
                if count >= cap:
                    overflow = True
                    break
                parent[count] = v
                pdir[count] = <signed char>d
                length[count] = length[v] + 1
                last_factor[count] = <signed char>f
                last_code[count] = code
                dims[count] = child_dim
                count += 1
            if overflow:
                break
            v += 1
        if overflow:
            raise ValueError("vertex cap")

        out_parent = array("q", [0]) * 0
        out_pdir = array("b", [0]) * 0
        out_length = array("b", [0]) * 0
        out_lf = array("b", [0]) * 0
        out_lc = array("q", [0]) * 0
        out_dims = [0] * count
        out_parent.extend([0] * count)
        out_pdir.extend([0] * count)
        out_length.extend([0] * count)
        out_lf.extend([0] * count)
        out_lc.extend([0] * count)
        for i2 in range(count):
            out_parent[i2] = parent[i2]
            out_pdir[i2] = pdir[i2]
            out_length[i2] = length[i2]
            out_lf[i2] = last_factor[i2]
            out_lc[i2] = last_code[i2]
            out_dims[i2] = dims[i2]
        return out_parent, out_pdir, out_length, out_dims, out_lf, out_lc
    finally:
        PyMem_Free(parent)
        PyMem_Free(pdir)
        PyMem_Free(length)
        PyMem_Free(dims)
        PyMem_Free(last_factor)
        PyMem_Free(last_code)
        PyMem_Free(c_m1)
        PyMem_Free(c_isao)
        PyMem_Free(c_df)
        PyMem_Free(c_db)


cdef long long _ql_scaled_one(long long* i_idx, long long* k_idx, int l, int n,
                              long long N) noexcept nogil:
    cdef long long out = 1
    cdef int p
    if l == 0:
        for p in range(n):
            if i_idx[p] != k_idx[p]:
                return 0
        return 1
    for p in range(l, n):
        if i_idx[p] != k_idx[p]:
            return 0
    for p in range(l - 1):
        out *= N
    out *= N - (1 if i_idx[l - 1] == k_idx[l - 1] else 0)
    return out


cdef bint _advance(long long* k_idx, int n, long long N) noexcept nogil:
    # odometer matching itertools.product(range(1, N+1), repeat=n)
    cdef int p = n - 1
    while p >= 0:
        if k_idx[p] < N:
            k_idx[p] += 1
            return True
        k_idx[p] = 1
        p -= 1
    return False


def ql_sums_scaled(long long N, int n, i_idx):
    cdef long long* ci = <long long*>PyMem_Malloc(n * sizeof(long long))
    cdef long long* ck = <long long*>PyMem_Malloc((n or 1) * sizeof(long long))
    cdef long long* sums = <long long*>PyMem_Malloc((n + 1) * sizeof(long long))
    if not (ci and ck and sums):
        raise MemoryError()
    cdef int p, l
    try:
        for p in range(n):
            ci[p] = i_idx[p]
            ck[p] = 1
        for l in range(n + 1):
            sums[l] = 0
        if n == 0:
            sums[0] = 1
        else:
            while True:
                for l in range(n + 1):
                    sums[l] += _ql_scaled_one(ci, ck, l, n, N)
                if not _advance(ck, n, N):
                    break
        return [sums[l] for l in range(n + 1)]
    finally:
        PyMem_Free(ci)
        PyMem_Free(ck)
        PyMem_Free(sums)


def cn_lower_scaled(long long N, int n, i_idx):
    cdef long long* ci = <long long*>PyMem_Malloc(n * sizeof(long long))
    cdef long long* ck = <long long*>PyMem_Malloc(n * sizeof(long long))
    cdef long long* weights = <long long*>PyMem_Malloc((n + 1) * sizeof(long long))
    if not (ci and ck and weights):
        raise MemoryError()
    cdef long long total = 0, w, n2l
    cdef int p, l
    try:
        for p in range(n):
            ci[p] = i_idx[p]
            ck[p] = 1
        for l in range(n + 1):
            n2l = 1
            for p in range(2 * (n - l)):
                n2l *= N
            weights[l] = n2l - 1
        while True:
            for l in range(n + 1):
                w = weights[l]
                if w:
                    total += w * _ql_scaled_one(ci, ck, l, n, N)
            if not _advance(ck, n, N):
                break
        return total
    finally:
        PyMem_Free(ci)
        PyMem_Free(ck)
        PyMem_Free(weights)


def parseval_violations(long long N, int n):
    cdef long long* ci = <long long*>PyMem_Malloc(n * sizeof(long long))
    cdef long long* ck = <long long*>PyMem_Malloc(n * sizeof(long long))
    if not (ci and ck):
        raise MemoryError()
    cdef long long target = 1, s, bad = 0
    cdef int p, l
    cdef bint more_i
    try:
        for p in range(n):
            target *= N
            ci[p] = 1
        more_i = True
        while more_i:
            for p in range(n):
                ck[p] = 1
            while True:
                s = 0
                for l in range(n + 1):
                    s += _ql_scaled_one(ci, ck, l, n, N)
                if s != target:
                    bad += 1
                if not _advance(ck, n, N):
                    break
            more_i = _advance(ci, n, N)
        return bad
    finally:
        PyMem_Free(ci)
        PyMem_Free(ck)
