# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled strict feasibility kernel.

Same tableau, pivot rule and stopping rule as ``_lpkernel_py``, on 64-bit
integers with 128-bit intermediate products. Any overflow raises ``OverflowError`` so the caller can rerun the
system on the arbitrary-precision fallback.
"""

from libc.stdlib cimport malloc, free

cdef extern from *:
    """
    static inline int cf_mul(long long a, long long b, long long *r) {
        return __builtin_mul_overflow(a, b, r);
    }
    /* out = (piv * x - f * y) / den with 128-bit intermediates; the
       division is exact, so only the quotient has to fit in 64 bits */
    static inline int cf_combine(long long piv, long long x, long long f, long long y,
                                 long long den, long long *out) {
        __int128 a = (__int128)piv * x;
        __int128 b = (__int128)f * y;
        __int128 c;
        if (__builtin_sub_overflow(a, b, &c))
            return 1;
        c /= den;
        if (c > (__int128)0x7fffffffffffffffLL || c < -(__int128)0x7fffffffffffffffLL - 1)
            return 1;
        *out = (long long)c;
        return 0;
    }
    """
    int cf_mul(long long a, long long b, long long *r) nogil
    int cf_combine(long long piv, long long x, long long f, long long y,
                   long long den, long long *out) nogil


cdef inline int combine(long long piv, long long x, long long f, long long y,
                        long long den, long long *out) noexcept nogil:
    # returns 1 on overflow
    return cf_combine(piv, x, f, y, den, out)


def solve_strict(int nvars, eq_rows, strict_rows):
    cdef int width = 2 * nvars + 1
    cdef int n_eq = len(eq_rows)
    cdef int n_st = len(strict_rows)
    cdef int m = 2 * n_eq + n_st + width
    cdef long long *tab = <long long *> malloc(sizeof(long long) * m * width)
    cdef long long *b = <long long *> malloc(sizeof(long long) * m)
    cdef long long *obj = <long long *> malloc(sizeof(long long) * width)
    cdef int *nonbasic = <int *> malloc(sizeof(int) * width)
    cdef int *basic = <int *> malloc(sizeof(int) * m)
    cdef int i, j, r, col, row, best, tmp
    cdef long long z = 0, den = 1, piv, f, b_r, lhs, rhs, a, v
    cdef bint overflow = False
    if not tab or not b or not obj or not nonbasic or not basic:
        free(tab); free(b); free(obj); free(nonbasic); free(basic)
        raise MemoryError()
    try:
        for i in range(m * width):
            tab[i] = 0
        r = 0
        for e in eq_rows:
            for j in range(nvars):
                v = e[j]
                tab[r * width + j] = v
                tab[r * width + nvars + j] = -v
                tab[(r + 1) * width + j] = -v
                tab[(r + 1) * width + nvars + j] = v
            b[r] = 0
            b[r + 1] = 0
            r += 2
        for g in strict_rows:
            for j in range(nvars):
                v = g[j]
                tab[r * width + j] = -v
                tab[r * width + nvars + j] = v
            tab[r * width + width - 1] = 1
            b[r] = 0
            r += 1
        for j in range(width):
            tab[r * width + j] = 1
            b[r] = 1
            r += 1
        for j in range(width):
            obj[j] = 0
            nonbasic[j] = j
        obj[width - 1] = -1
        for i in range(m):
            basic[i] = width + i

        with nogil:
            while z <= 0:
                col = -1
                best = -1
                for j in range(width):
                    if obj[j] < 0 and (best < 0 or nonbasic[j] < best):
                        best = nonbasic[j]
                        col = j
                if col < 0:
                    break
                row = -1
                for i in range(m):
                    a = tab[i * width + col]
                    if a <= 0:
                        continue
                    if row < 0:
                        row = i
                        continue
                    if cf_mul(b[i], tab[row * width + col], &lhs) or cf_mul(b[row], a, &rhs):
                        overflow = True
                        break
                    if lhs < rhs or (lhs == rhs and basic[i] < basic[row]):
                        row = i
                if overflow:
                    break
                if row < 0:
                    overflow = True
                    break
                piv = tab[row * width + col]
                b_r = b[row]
                for i in range(m):
                    if i == row:
                        continue
                    f = tab[i * width + col]
                    for j in range(width):
                        if j != col:
                            if combine(piv, tab[i * width + j], f, tab[row * width + j], den, &tab[i * width + j]):
                                overflow = True
                                break
                    if overflow:
                        break
                    tab[i * width + col] = -f
                    if combine(piv, b[i], f, b_r, den, &b[i]):
                        overflow = True
                        break
                if overflow:
                    break
                f = obj[col]
                for j in range(width):
                    if j != col:
                        if combine(piv, obj[j], f, tab[row * width + j], den, &obj[j]):
                            overflow = True
                            break
                if overflow:
                    break
                obj[col] = -f
                if combine(piv, z, f, b_r, den, &z):
                    overflow = True
                    break
                tab[row * width + col] = den
                den = piv
                tmp = nonbasic[col]
                nonbasic[col] = basic[row]
                basic[row] = tmp

        if overflow:
            raise OverflowError("64-bit tableau overflow")
        if z <= 0:
            return None
        values = [0] * width
        for i in range(m):
            if basic[i] < width:
                values[basic[i]] = b[i]
        return [values[j] - values[nvars + j] for j in range(nvars)], den
    finally:
        free(tab)
        free(b)
        free(obj)
        free(nonbasic)
        free(basic)
