"""Pure-Python reduced row echelon kernel over exact rationals.

The compiled twin in ``_rref_c`` implements the same contract; because the
reduced row echelon form of a matrix over a field is unique, both backends
must return identical output for identical input.
"""

from fractions import Fraction

BACKEND = "python"

_ZERO = Fraction(0)
_ONE = Fraction(1)


def rref(rows):
    """Reduce ``rows`` (list of lists of Fraction) to reduced row echelon form.

    Returns ``(reduced_rows, pivot_columns)`` with pivot rows first, zero rows
    last. The input is not modified.
    """
    m = [list(row) for row in rows]
    nrows = len(m)
    ncols = len(m[0]) if nrows else 0
    pivots = []
    pr = 0
    for pc in range(ncols):
        found = -1
        for r in range(pr, nrows):
            if m[r][pc] != 0:
                found = r
                break
        if found < 0:
            continue
        if found != pr:
            m[pr], m[found] = m[found], m[pr]
        piv_row = m[pr]
        inv = _ONE / piv_row[pc]
        if inv != 1:
            for c in range(pc, ncols):
                if piv_row[c]:
                    piv_row[c] *= inv
        for r in range(nrows):
            if r == pr:
                continue
            factor = m[r][pc]
            if factor == 0:
                continue
            row = m[r]
            row[pc] = _ZERO
            for c in range(pc + 1, ncols):
                if piv_row[c]:
                    row[c] -= factor * piv_row[c]
        pivots.append(pc)
        pr += 1
        if pr == nrows:
            break
    return m, pivots
