"""Pure-Python Smith normal form (diagonal only) over the integers."""

from math import gcd


def _min_in_column(a, t, j, nr):
    best, bi = 0, -1
    for i in range(t, nr):
        v = a[i][j]
        if v:
            av = abs(v)
            if bi < 0 or av < best:
                best, bi = av, i
                if av == 1:
                    break
    return bi


def _min_in_row(a, t, nc):
    row = a[t]
    best, bj = 0, -1
    for j in range(t, nc):
        v = row[j]
        if v:
            av = abs(v)
            if bj < 0 or av < best:
                best, bj = av, j
                if av == 1:
                    break
    return bj


def _swap_cols(a, j1, j2, start):
    if j1 != j2:
        for i in range(start, len(a)):
            r = a[i]
            r[j1], r[j2] = r[j2], r[j1]


def smith_diagonal(rows):
    """Nonzero diagonal of a diagonalisation of ``rows`` by unimodular row/column operations.

    Entries are positive but not yet in divisibility order; see
    :func:`invariant_factors`.
    """
    a = [list(map(int, r)) for r in rows]
    nr = len(a)
    nc = len(a[0]) if nr else 0
    diag = []
    t = 0
    col = 0
    while t < nr and col < nc:
        # first column (from col) with a nonzero entry in rows >= t
        while col < nc:
            i = _min_in_column(a, t, col, nr)
            if i >= 0:
                break
            col += 1
        if col >= nc:
            break
        a[t], a[i] = a[i], a[t]
        _swap_cols(a, t, col, t)
        while True:
            piv_row = a[t]
            p = piv_row[t]
            dirty = False
            for i in range(t + 1, nr):
                ri = a[i]
                v = ri[t]
                if v:
                    q = v // p
                    for j in range(t, nc):
                        pj = piv_row[j]
                        if pj:
                            ri[j] -= q * pj
                    if ri[t]:
                        dirty = True
            if dirty:
                i = _min_in_column(a, t, t, nr)
                a[t], a[i] = a[i], a[t]
                continue
            p = piv_row[t]
            for j in range(t + 1, nc):
                v = piv_row[j]
                if v:
                    q = v // p
                    piv_row[j] = v - q * p
                    if piv_row[j]:
                        dirty = True
            if dirty:
                j = _min_in_row(a, t, nc)
                _swap_cols(a, t, j, t)
                continue
            break
        diag.append(abs(a[t][t]))
        t += 1
        col = t
    return diag


def invariant_factors(diag):
    """Turn a diagonal into the divisibility chain d_1 | d_2 | ..."""
    ones = [d for d in diag if d == 1]
    rest = [d for d in diag if d != 1]
    for i in range(len(rest)):
        for j in range(i + 1, len(rest)):
            g = gcd(rest[i], rest[j])
            if g != rest[i]:
                rest[i], rest[j] = g, rest[i] * rest[j] // g
    rest.sort()
    return ones + rest
