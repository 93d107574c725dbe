# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled kernel: fraction-free linear algebra over the Gaussian integers.

Twin of relpos._gaussint (same contracts, same results); the arithmetic stays
on arbitrary-precision Python ints, the win is loop and dispatch overhead.
"""

BACKEND = "cython"


def ffgj(re, im, Py_ssize_t nrows, Py_ssize_t ncols):
    """Fraction-free Gauss-Jordan over Z[i]; see relpos._gaussint.ffgj."""
    cdef list m_re = list(re)
    cdef list m_im = list(im)
    cdef list pivots = []
    cdef Py_ssize_t pr = 0, pc, r, c, best, base, row, i1, i2
    cdef long best_key = 0, key
    cdef bint trivial_prev
    prev_re = 1
    prev_im = 0
    for pc in range(ncols):
        if pr >= nrows:
            break
        best = -1
        best_key = 0
        for r in range(pr, nrows):
            a = m_re[r * ncols + pc]
            b = m_im[r * ncols + pc]
            if a or b:
                key = <long>((a if a >= 0 else -a).bit_length()) + \
                      <long>((b if b >= 0 else -b).bit_length())
                if best < 0 or key < best_key:
                    best = r
                    best_key = key
        if best < 0:
            continue
        if best != pr:
            for c in range(ncols):
                i1 = pr * ncols + c
                i2 = best * ncols + c
                m_re[i1], m_re[i2] = m_re[i2], m_re[i1]
                m_im[i1], m_im[i2] = m_im[i2], m_im[i1]
        base = pr * ncols
        p_re = m_re[base + pc]
        p_im = m_im[base + pc]
        pn = prev_re * prev_re + prev_im * prev_im
        trivial_prev = (prev_re == 1 and prev_im == 0)
        for r in range(nrows):
            if r == pr:
                continue
            row = r * ncols
            f_re = m_re[row + pc]
            f_im = m_im[row + pc]
            if f_re == 0 and f_im == 0:
                if p_re == 1 and p_im == 0 and trivial_prev:
                    continue
                for c in range(ncols):
                    a = m_re[row + c]
                    b = m_im[row + c]
                    if a == 0 and b == 0:
                        continue
                    n_re = p_re * a - p_im * b
                    n_im = p_re * b + p_im * a
                    if trivial_prev:
                        m_re[row + c] = n_re
                        m_im[row + c] = n_im
                    else:
                        m_re[row + c] = (n_re * prev_re + n_im * prev_im) // pn
                        m_im[row + c] = (n_im * prev_re - n_re * prev_im) // pn
                continue
            for c in range(ncols):
                if c == pc:
                    continue
                a = m_re[row + c]
                b = m_im[row + c]
                u = m_re[base + c]
                v = m_im[base + c]
                n_re = (p_re * a - p_im * b) - (f_re * u - f_im * v)
                n_im = (p_re * b + p_im * a) - (f_re * v + f_im * u)
                if trivial_prev:
                    m_re[row + c] = n_re
                    m_im[row + c] = n_im
                else:
                    m_re[row + c] = (n_re * prev_re + n_im * prev_im) // pn
                    m_im[row + c] = (n_im * prev_re - n_re * prev_im) // pn
            m_re[row + pc] = 0
            m_im[row + pc] = 0
        pivots.append(pc)
        prev_re = p_re
        prev_im = p_im
        pr += 1
    return m_re, m_im, pivots, prev_re, prev_im


def matmul(are, aim, Py_ssize_t n, Py_ssize_t k, bre, bim, Py_ssize_t m):
    """Product of an n*k and a k*m matrix over Z[i], flat row-major."""
    cdef list c_re = [0] * (n * m)
    cdef list c_im = [0] * (n * m)
    cdef Py_ssize_t i, t, j, arow, crow, brow
    for i in range(n):
        arow = i * k
        crow = i * m
        for t in range(k):
            a = are[arow + t]
            b = aim[arow + t]
            if a == 0 and b == 0:
                continue
            brow = t * m
            for j in range(m):
                u = bre[brow + j]
                v = bim[brow + j]
                if u == 0 and v == 0:
                    continue
                c_re[crow + j] = c_re[crow + j] + (a * u - b * v)
                c_im[crow + j] = c_im[crow + j] + (a * v + b * u)
    return c_re, c_im
