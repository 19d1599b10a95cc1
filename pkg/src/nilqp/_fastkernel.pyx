# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled elimination kernels on 64-bit rationals.

Same contracts as nilqp._purekernel: rows of (num, den) or
(re_n, re_d, im_n, im_d) tuples in lowest terms, Gauss-Jordan reduction and
forward-only rank.  All intermediate products use 128-bit integers; whenever
a reduced value would not fit in 64 bits (or an input does not), the function
raises OverflowError and the caller falls back to the pure-Python kernel.
The reduced row echelon form is mathematically unique, so both kernels
produce identical results on inputs both can handle.
"""

from libc.stdlib cimport free, malloc

cdef extern from *:
    ctypedef long long i128 "__int128"

ctypedef long long i64

cdef i64 I64MAX = 9223372036854775807
cdef i64 I64MIN = -9223372036854775807 - 1


cdef inline i128 _abs128(i128 x) noexcept:
    return -x if x < 0 else x


cdef i128 _gcd128(i128 a, i128 b) noexcept:
    a = _abs128(a)
    b = _abs128(b)
    while b != 0:
        a, b = b, a % b
    return a


cdef struct QR:
    i64 n
    i64 d


cdef inline int _q_make(i128 n, i128 d, QR *out) except -1:
    cdef i128 g
    if d < 0:
        n = -n
        d = -d
    if n == 0:
        out.n = 0
        out.d = 1
        return 0
    g = _gcd128(n, d)
    n = n // g
    d = d // g
    if n > <i128>I64MAX or n < <i128>I64MIN or d > <i128>I64MAX:
        raise OverflowError("rational exceeds 64-bit kernel range")
    out.n = <i64>n
    out.d = <i64>d
    return 0


cdef inline int _q_mul(QR a, QR b, QR *out) except -1:
    return _q_make(<i128>a.n * b.n, <i128>a.d * b.d, out)


cdef inline int _q_div(QR a, QR b, QR *out) except -1:
    if b.n == 0:
        raise ZeroDivisionError()
    return _q_make(<i128>a.n * b.d, <i128>a.d * b.n, out)


cdef inline int _q_add(QR a, QR b, QR *out) except -1:
    return _q_make(<i128>a.n * b.d + <i128>b.n * a.d, <i128>a.d * b.d, out)


cdef inline int _q_sub(QR a, QR b, QR *out) except -1:
    return _q_make(<i128>a.n * b.d - <i128>b.n * a.d, <i128>a.d * b.d, out)


cdef inline int _q_submul(QR a, QR f, QR b, QR *out) except -1:
    # a - f*b with one intermediate reduction, keeping products in range
    cdef QR t
    _q_mul(f, b, &t)
    return _q_sub(a, t, out)


# -- rational matrices -------------------------------------------------------


cdef QR *_q_load(object rows, Py_ssize_t nrows, Py_ssize_t ncols) except NULL:
    cdef QR *data = <QR *> malloc(nrows * ncols * sizeof(QR))
    cdef Py_ssize_t r, c
    cdef object row, ent
    if data == NULL:
        raise MemoryError()
    try:
        for r in range(nrows):
            row = rows[r]
            for c in range(ncols):
                ent = row[c]
                data[r * ncols + c].n = ent[0]  # OverflowError if too large
                data[r * ncols + c].d = ent[1]
    except BaseException:
        free(data)
        raise
    return data


cdef object _q_store(QR *data, Py_ssize_t nrows, Py_ssize_t ncols):
    cdef Py_ssize_t r, c
    out = []
    for r in range(nrows):
        row = []
        for c in range(ncols):
            row.append((data[r * ncols + c].n, data[r * ncols + c].d))
        out.append(row)
    return out


def rref_q(object rows, object ncols_obj):
    """Reduced row echelon form over Q: (rows, pivot columns)."""
    cdef Py_ssize_t nrows = len(rows)
    cdef Py_ssize_t ncols = ncols_obj
    cdef Py_ssize_t r, c, col, src, i, j
    cdef QR *data
    cdef QR p, f, tmp
    cdef QR *prow
    cdef QR *irow
    if nrows == 0 or ncols == 0:
        return [list(row) for row in rows], []
    data = _q_load(rows, nrows, ncols)
    pivots = []
    try:
        r = 0
        for col in range(ncols):
            src = -1
            for i in range(r, nrows):
                if data[i * ncols + col].n != 0:
                    src = i
                    break
            if src < 0:
                continue
            if src != r:
                for j in range(ncols):
                    tmp = data[r * ncols + j]
                    data[r * ncols + j] = data[src * ncols + j]
                    data[src * ncols + j] = tmp
            prow = data + r * ncols
            p = prow[col]
            if p.n != p.d:
                prow[col].n = 1
                prow[col].d = 1
                for j in range(col + 1, ncols):
                    if prow[j].n != 0:
                        _q_div(prow[j], p, &prow[j])
            for i in range(nrows):
                if i == r:
                    continue
                irow = data + i * ncols
                f = irow[col]
                if f.n == 0:
                    continue
                irow[col].n = 0
                irow[col].d = 1
                for j in range(col + 1, ncols):
                    if prow[j].n != 0:
                        _q_submul(irow[j], f, prow[j], &irow[j])
            pivots.append(col)
            r += 1
            if r == nrows:
                break
        return _q_store(data, nrows, ncols), pivots
    finally:
        free(data)


def rank_q(object rows, object ncols_obj):
    """Rank over Q by forward elimination."""
    cdef Py_ssize_t nrows = len(rows)
    cdef Py_ssize_t ncols = ncols_obj
    cdef Py_ssize_t r, col, src, i, j
    cdef QR *data
    cdef QR f, tmp
    cdef QR *prow
    cdef QR *irow
    if nrows == 0 or ncols == 0:
        return 0
    data = _q_load(rows, nrows, ncols)
    try:
        r = 0
        for col in range(ncols):
            src = -1
            for i in range(r, nrows):
                if data[i * ncols + col].n != 0:
                    src = i
                    break
            if src < 0:
                continue
            if src != r:
                for j in range(col, ncols):
                    tmp = data[r * ncols + j]
                    data[r * ncols + j] = data[src * ncols + j]
                    data[src * ncols + j] = tmp
            prow = data + r * ncols
            for i in range(r + 1, nrows):
                irow = data + i * ncols
                if irow[col].n == 0:
                    continue
                _q_div(irow[col], prow[col], &f)
                irow[col].n = 0
                irow[col].d = 1
                for j in range(col + 1, ncols):
                    if prow[j].n != 0:
                        _q_submul(irow[j], f, prow[j], &irow[j])
            r += 1
            if r == nrows:
                break
        return r
    finally:
        free(data)


# -- Gaussian-rational matrices ----------------------------------------------


cdef struct QC:
    QR re
    QR im


cdef inline bint _qc_zero(QC a) noexcept:
    return a.re.n == 0 and a.im.n == 0


cdef inline int _qc_mul(QC a, QC b, QC *out) except -1:
    cdef QR t1, t2
    _q_mul(a.re, b.re, &t1)
    _q_mul(a.im, b.im, &t2)
    _q_sub(t1, t2, &out.re)
    _q_mul(a.re, b.im, &t1)
    _q_mul(a.im, b.re, &t2)
    _q_add(t1, t2, &out.im)
    return 0


cdef inline int _qc_sub(QC a, QC b, QC *out) except -1:
    _q_sub(a.re, b.re, &out.re)
    _q_sub(a.im, b.im, &out.im)
    return 0


cdef inline int _qc_submul(QC a, QC f, QC b, QC *out) except -1:
    cdef QC t
    _qc_mul(f, b, &t)
    return _qc_sub(a, t, out)


cdef inline int _qc_div(QC a, QC b, QC *out) except -1:
    cdef QR n1, n2, norm
    if _qc_zero(b):
        raise ZeroDivisionError()
    _q_mul(b.re, b.re, &n1)
    _q_mul(b.im, b.im, &n2)
    _q_add(n1, n2, &norm)
    cdef QC conj_b
    conj_b.re = b.re
    conj_b.im.n = -b.im.n
    conj_b.im.d = b.im.d
    cdef QC t
    _qc_mul(a, conj_b, &t)
    _q_div(t.re, norm, &out.re)
    _q_div(t.im, norm, &out.im)
    return 0


cdef QC *_qc_load(object rows, Py_ssize_t nrows, Py_ssize_t ncols) except NULL:
    cdef QC *data = <QC *> malloc(nrows * ncols * sizeof(QC))
    cdef Py_ssize_t r, c
    cdef object row, ent
    if data == NULL:
        raise MemoryError()
    try:
        for r in range(nrows):
            row = rows[r]
            for c in range(ncols):
                ent = row[c]
                data[r * ncols + c].re.n = ent[0]
                data[r * ncols + c].re.d = ent[1]
                data[r * ncols + c].im.n = ent[2]
                data[r * ncols + c].im.d = ent[3]
    except BaseException:
        free(data)
        raise
    return data


cdef object _qc_store(QC *data, Py_ssize_t nrows, Py_ssize_t ncols):
    cdef Py_ssize_t r, c
    cdef QC *e
    out = []
    for r in range(nrows):
        row = []
        for c in range(ncols):
            e = data + r * ncols + c
            row.append((e.re.n, e.re.d, e.im.n, e.im.d))
        out.append(row)
    return out


def rref_qi(object rows, object ncols_obj):
    """Reduced row echelon form over Q(i): (rows, pivot columns)."""
    cdef Py_ssize_t nrows = len(rows)
    cdef Py_ssize_t ncols = ncols_obj
    cdef Py_ssize_t r, col, src, i, j
    cdef QC *data
    cdef QC p, f, tmp
    cdef QC *prow
    cdef QC *irow
    if nrows == 0 or ncols == 0:
        return [list(row) for row in rows], []
    data = _qc_load(rows, nrows, ncols)
    pivots = []
    try:
        r = 0
        for col in range(ncols):
            src = -1
            for i in range(r, nrows):
                if not _qc_zero(data[i * ncols + col]):
                    src = i
                    break
            if src < 0:
                continue
            if src != r:
                for j in range(ncols):
                    tmp = data[r * ncols + j]
                    data[r * ncols + j] = data[src * ncols + j]
                    data[src * ncols + j] = tmp
            prow = data + r * ncols
            p = prow[col]
            if not (p.re.n == p.re.d and p.im.n == 0):
                prow[col].re.n = 1
                prow[col].re.d = 1
                prow[col].im.n = 0
                prow[col].im.d = 1
                for j in range(col + 1, ncols):
                    if not _qc_zero(prow[j]):
                        _qc_div(prow[j], p, &prow[j])
            for i in range(nrows):
                if i == r:
                    continue
                irow = data + i * ncols
                f = irow[col]
                if _qc_zero(f):
                    continue
                irow[col].re.n = 0
                irow[col].re.d = 1
                irow[col].im.n = 0
                irow[col].im.d = 1
                for j in range(col + 1, ncols):
                    if not _qc_zero(prow[j]):
                        _qc_submul(irow[j], f, prow[j], &irow[j])
            pivots.append(col)
            r += 1
            if r == nrows:
                break
        return _qc_store(data, nrows, ncols), pivots
    finally:
        free(data)


def rank_qi(object rows, object ncols_obj):
    """Rank over Q(i) by forward elimination."""
    cdef Py_ssize_t nrows = len(rows)
    cdef Py_ssize_t ncols = ncols_obj
    cdef Py_ssize_t r, col, src, i, j
    cdef QC *data
    cdef QC f, tmp
    cdef QC *prow
    cdef QC *irow
    if nrows == 0 or ncols == 0:
        return 0
    data = _qc_load(rows, nrows, ncols)
    try:
        r = 0
        for col in range(ncols):
            src = -1
            for i in range(r, nrows):
                if not _qc_zero(data[i * ncols + col]):
                    src = i
                    break
            if src < 0:
                continue
            if src != r:
                for j in range(col, ncols):
                    tmp = data[r * ncols + j]
                    data[r * ncols + j] = data[src * ncols + j]
                    data[src * ncols + j] = tmp
            prow = data + r * ncols
            for i in range(r + 1, nrows):
                irow = data + i * ncols
                if _qc_zero(irow[col]):
                    continue
                _qc_div(irow[col], prow[col], &f)
                irow[col].re.n = 0
                irow[col].re.d = 1
                irow[col].im.n = 0
                irow[col].im.d = 1
                for j in range(col + 1, ncols):
                    if not _qc_zero(prow[j]):
                        _qc_submul(irow[j], f, prow[j], &irow[j])
            r += 1
            if r == nrows:
                break
        return r
    finally:
        free(data)
