# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled subset kernels over int64 numerators.

Same contracts as ``_pykernels``. Callers must guarantee that every
intermediate fits in a signed 64-bit integer; ``kernels`` checks this
before dispatching here.
"""

from libc.stdlib cimport malloc, free

ctypedef long long i64


cdef i64* _load(values, Py_ssize_t size) except NULL:
    cdef i64* a = <i64*> malloc(size * sizeof(i64))
    if a == NULL:
        raise MemoryError()
    cdef Py_ssize_t k
    for k in range(size):
        a[k] = values[k]
    return a


cdef list _dump(i64* a, Py_ssize_t size):
    return [a[k] for k in range(size)]


def zeta(values, int n):
    cdef Py_ssize_t size = (<Py_ssize_t> 1) << n
    cdef i64* a = _load(values, size)
    cdef Py_ssize_t i, mask, bit
    try:
        for i in range(n):
            bit = (<Py_ssize_t> 1) << i
            for mask in range(size):
                if mask & bit:
                    a[mask] += a[mask ^ bit]
        return _dump(a, size)
    finally:
        free(a)


def mobius(values, int n):
    cdef Py_ssize_t size = (<Py_ssize_t> 1) << n
    cdef i64* a = _load(values, size)
    cdef Py_ssize_t i, mask, bit
    try:
        for i in range(n):
            bit = (<Py_ssize_t> 1) << i
            for mask in range(size):
                if mask & bit:
                    a[mask] -= a[mask ^ bit]
        return _dump(a, size)
    finally:
        free(a)


def monotonicity_violation(values, int n):
    cdef Py_ssize_t size = (<Py_ssize_t> 1) << n
    cdef i64* a = _load(values, size)
    cdef Py_ssize_t i, mask, bit
    try:
        for mask in range(size):
            for i in range(n):
                bit = (<Py_ssize_t> 1) << i
                if not (mask & bit) and a[mask | bit] < a[mask]:
                    return mask, bit
        return None
    finally:
        free(a)


def superadditivity_violation(values, int n):
    cdef Py_ssize_t size = (<Py_ssize_t> 1) << n
    cdef i64* a = _load(values, size)
    cdef Py_ssize_t union, sub, rest
    cdef i64 vu
    try:
        for union in range(1, size):
            vu = a[union]
            sub = (union - 1) & union
            while sub:
                rest = union ^ sub
                if sub < rest and vu < a[sub] + a[rest]:
                    return sub, rest
                sub = (sub - 1) & union
        return None
    finally:
        free(a)


def additivity_violation(values, int n):
    cdef Py_ssize_t size = (<Py_ssize_t> 1) << n
    cdef i64* a = _load(values, size)
    cdef Py_ssize_t mask, m, low, rest, idx
    cdef i64 total
    try:
        for mask in range(1, size):
            if mask & (mask - 1) == 0:
                continue
            total = 0
            m = mask
            while m:
                low = m & -m
                total += a[low]
                m ^= low
            if total != a[mask]:
                m = mask
                while True:
                    low = m & -m
                    rest = m ^ low
                    if a[m] != a[low] + a[rest]:
                        return low, rest
                    m = rest
        return None
    finally:
        free(a)


def minimal_positive(values, int n):
    cdef Py_ssize_t size = (<Py_ssize_t> 1) << n
    cdef i64* a = _load(values, size)
    cdef Py_ssize_t mask, m, low
    cdef bint ok
    out = []
    try:
        for mask in range(1, size):
            if a[mask] <= 0:
                continue
            m = mask
            ok = True
            while m:
                low = m & -m
                if a[mask ^ low] > 0:
                    ok = False
                    break
                m ^= low
            if ok:
                out.append(mask)
        return out
    finally:
        free(a)


def threshold_family(values, int n, i64 scale, i64 bound, bint strict):
    cdef Py_ssize_t size = (<Py_ssize_t> 1) << n
    cdef i64* a = _load(values, size)
    cdef Py_ssize_t mask
    cdef bytearray buf = bytearray((size + 7) // 8)
    cdef unsigned char[:] view = buf
    cdef i64 v
    try:
        for mask in range(size):
            v = a[mask] * scale
            if (v > bound) if strict else (v >= bound):
                view[mask >> 3] |= 1 << (mask & 7)
        return int.from_bytes(buf, "little")
    finally:
        free(a)
