# cython: language_level=3
# cython: boundscheck=False
# cython: wraparound=False
"""Compiled reduced-row-echelon kernel over exact rationals.

Same contract as ``_rref_py.rref``.  Internally each row is scaled to
integers and eliminated fraction-free with periodic content reduction, so
the hot loops run on machine-sized bookkeeping plus CPython big-int
arithmetic; the unique reduced echelon form over the rationals guarantees
output identical to the pure-Python twin.
"""

from fractions import Fraction
from math import gcd

BACKEND = "c"


cdef list _to_integer_rows(list rows, Py_ssize_t ncols):
    cdef list out = []
    cdef Py_ssize_t c
    cdef object lcm_, den, val
    for row in rows:
        lcm_ = 1
        for c in range(ncols):
            den = (<object> row[c]).denominator
            if den != 1:
                lcm_ = lcm_ // gcd(lcm_, den) * den
        introw = [None] * ncols
        for c in range(ncols):
            val = <object> row[c]
            introw[c] = val.numerator * (lcm_ // val.denominator)
        out.append(introw)
    return out


cdef void _reduce_content(list row, Py_ssize_t ncols):
    cdef Py_ssize_t c
    cdef object g = 0
    for c in range(ncols):
        if row[c]:
            g = gcd(g, row[c])
            if g == 1:
                return
    if g > 1:
        for c in range(ncols):
            if row[c]:
                row[c] = row[c] // g


def rref(rows):
    """Reduce a list of Fraction rows; returns (reduced rows, pivot cols)."""
    cdef Py_ssize_t nrows = len(rows)
    cdef Py_ssize_t ncols = len(rows[0]) if nrows else 0
    cdef list m = _to_integer_rows(rows, ncols)
    cdef list pivots = []
    cdef Py_ssize_t pr = 0, pc, r, c, found, idx
    cdef object lead, factor, piv_val
    cdef list piv_row, row

    for pc in range(ncols):
        found = -1
        for r in range(pr, nrows):
            if m[r][pc]:
                found = r
                break
        if found < 0:
            continue
        if found != pr:
            m[pr], m[found] = m[found], m[pr]
        piv_row = m[pr]
        piv_val = piv_row[pc]
        for r in range(pr + 1, nrows):
            row = m[r]
            factor = row[pc]
            if factor:
                for c in range(pc, ncols):
                    row[c] = piv_val * row[c] - factor * piv_row[c]
                _reduce_content(row, ncols)
        pivots.append(pc)
        pr += 1
        if pr == nrows:
            break

    # eliminate above each pivot, bottom-up
    cdef Py_ssize_t npiv = len(pivots)
    for idx in range(npiv - 1, -1, -1):
        pc = pivots[idx]
        piv_row = m[idx]
        piv_val = piv_row[pc]
        for r in range(idx):
            row = m[r]
            factor = row[pc]
            if factor:
                for c in range(ncols):
                    row[c] = piv_val * row[c] - factor * piv_row[c]
                _reduce_content(row, ncols)

    # normalise pivot rows to Fractions with unit leading entry
    out = []
    for idx in range(npiv):
        pc = pivots[idx]
        piv_row = m[idx]
        piv_val = piv_row[pc]
        frow = [Fraction(piv_row[c], piv_val) for c in range(ncols)]
        out.append(frow)
    zero = Fraction(0)
    for r in range(npiv, nrows):
        out.append([zero] * ncols)
    return out, list(pivots)
