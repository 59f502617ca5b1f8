# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled twins of the kernels in ``_kernels_py``; same contracts.

When every coefficient is a machine-size ``int`` and a worst-case bound on
the accumulated sums fits in 62 bits, products accumulate in a dense
``int64`` buffer. Otherwise coefficients stay Python objects.
"""

from math import comb, factorial

from libc.stdlib cimport calloc, free
from libc.stdint cimport int64_t

cdef dict _reorder_cache = {}
cdef object _LIMIT = 1 << 62
cdef Py_ssize_t _MAX_CELLS = 1 << 22


cpdef tuple reorder_coefficients(Py_ssize_t j, Py_ssize_t i):
    cdef tuple key = (j, i)
    cdef object hit = _reorder_cache.get(key)
    cdef Py_ssize_t k
    if hit is not None:
        return <tuple>hit
    res = tuple([comb(j, k) * comb(i, k) * factorial(k) for k in range(min(i, j) + 1)])
    _reorder_cache[key] = res
    return res


cdef object _max_abs_int(dict p):
    """Largest ``|c|`` if every coefficient is an ``int``, else ``None``."""
    cdef object m = 0
    for c in p.values():
        if type(c) is not int:
            return None
        if c > m:
            m = c
        elif -c > m:
            m = -c
    return m


cdef tuple _shape(dict p):
    cdef Py_ssize_t mi = 0, mj = 0
    for key in p:
        if key[0] > mi:
            mi = key[0]
        if key[1] > mj:
            mj = key[1]
    return mi, mj


cdef tuple _unpack(dict q):
    cdef Py_ssize_t m = len(q), v = 0
    cdef list qi = [0] * m
    cdef list qj = [0] * m
    cdef list qc = [None] * m
    for key, c in q.items():
        qi[v] = key[0]
        qj[v] = key[1]
        qc[v] = c
        v += 1
    return qi, qj, qc


cdef dict _from_buffer(int64_t* buf, Py_ssize_t ni, Py_ssize_t nj):
    cdef dict out = {}
    cdef Py_ssize_t i, j
    cdef int64_t val
    for i in range(ni):
        for j in range(nj):
            val = buf[i * nj + j]
            if val != 0:
                out[(i, j)] = val
    return out


cdef dict _poly_mul_int(dict p, dict q, Py_ssize_t ni, Py_ssize_t nj):
    cdef int64_t* buf = <int64_t*> calloc(ni * nj, sizeof(int64_t))
    cdef Py_ssize_t u, m = len(q), i1, j1
    cdef int64_t c1
    if buf == NULL:
        raise MemoryError()
    qi, qj, qc = _unpack(q)
    try:
        for key, c in p.items():
            i1 = key[0]
            j1 = key[1]
            c1 = c
            for u in range(m):
                buf[(i1 + <Py_ssize_t>qi[u]) * nj + j1 + <Py_ssize_t>qj[u]] += c1 * <int64_t>qc[u]
        return _from_buffer(buf, ni, nj)
    finally:
        free(buf)


cpdef dict poly_mul(dict p, dict q):
    cdef dict out = {}
    cdef Py_ssize_t i1, j1, u, m
    cdef object c1, acc
    if not p or not q:
        return {}
    if len(p) > len(q):
        p, q = q, p
    mp, mq = _max_abs_int(p), _max_abs_int(q)
    if mp is not None and mq is not None and mp * mq * len(p) < _LIMIT:
        (pi, pj), (qi_, qj_) = _shape(p), _shape(q)
        ni, nj = pi + qi_ + 1, pj + qj_ + 1
        if ni * nj <= _MAX_CELLS:
            return _poly_mul_int(p, q, ni, nj)
    qi, qj, qc = _unpack(q)
    m = len(qc)
    for key, c1 in p.items():
        i1 = key[0]
        j1 = key[1]
        for u in range(m):
            k = (i1 + <Py_ssize_t>qi[u], j1 + <Py_ssize_t>qj[u])
            acc = out.get(k)
            if acc is None:
                out[k] = c1 * qc[u]
            else:
                out[k] = acc + c1 * qc[u]
    return {k: v for k, v in out.items() if v}


cdef dict _weyl_mul_int(dict p, dict q, Py_ssize_t ni, Py_ssize_t nj):
    cdef int64_t* buf = <int64_t*> calloc(ni * nj, sizeof(int64_t))
    cdef Py_ssize_t a, b, c, d, k, u, nk, m = len(q)
    cdef int64_t c1, c12
    cdef tuple coeffs
    if buf == NULL:
        raise MemoryError()
    qi, qj, qc = _unpack(q)
    try:
        for key, cv in p.items():
            a = key[0]
            b = key[1]
            c1 = cv
            for u in range(m):
                c = qi[u]
                d = qj[u]
                c12 = c1 * <int64_t>qc[u]
                if b == 0 or c == 0:
                    buf[(a + c) * nj + b + d] += c12
                    continue
                coeffs = reorder_coefficients(b, c)
                nk = len(coeffs)
                for k in range(nk):
                    buf[(a + c - k) * nj + b + d - k] += c12 * <int64_t>coeffs[k]
        return _from_buffer(buf, ni, nj)
    finally:
        free(buf)


cdef object _max_reorder(dict p, dict q):
    cdef Py_ssize_t bmax = 0, cmax = 0
    for key in p:
        if key[1] > bmax:
            bmax = key[1]
    for key in q:
        if key[0] > cmax:
            cmax = key[0]
    return max(reorder_coefficients(bmax, cmax))


cpdef dict weyl_mul(dict p, dict q):
    cdef dict out = {}
    cdef Py_ssize_t a, b, c, d, k, u, m, nk
    cdef tuple coeffs
    cdef object c1, c12, acc, term
    if not p or not q:
        return {}
    mp, mq = _max_abs_int(p), _max_abs_int(q)
    if mp is not None and mq is not None:
        # each output cell receives at most len(p) * len(q) terms
        if mp * mq * _max_reorder(p, q) * len(p) * len(q) < _LIMIT:
            (pi, pj), (qi_, qj_) = _shape(p), _shape(q)
            ni, nj = pi + qi_ + 1, pj + qj_ + 1
            if ni * nj <= _MAX_CELLS:
                return _weyl_mul_int(p, q, ni, nj)
    qi, qj, qc = _unpack(q)
    m = len(qc)
    for key, c1 in p.items():
        a = key[0]
        b = key[1]
        for u in range(m):
            c = qi[u]
            d = qj[u]
            c12 = c1 * qc[u]
            if b == 0 or c == 0:
                kk = (a + c, b + d)
                acc = out.get(kk)
                out[kk] = c12 if acc is None else acc + c12
                continue
            coeffs = reorder_coefficients(b, c)
            nk = len(coeffs)
            for k in range(nk):
                kk = (a + c - k, b + d - k)
                term = c12 * coeffs[k] if k else c12
                acc = out.get(kk)
                out[kk] = term if acc is None else acc + term
    return {kk: v for kk, v in out.items() if v}
