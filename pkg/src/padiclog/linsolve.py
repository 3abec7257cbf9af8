"""Linear algebra over Z/p^N.

Diagonalizes by always pivoting on a minimal-valuation entry, so the row and
column eliminations are exact unit divisions.  Solutions come back together
with a kernel basis, which callers use to adjust representatives (e.g. to
force a unit constant term).
"""

from __future__ import annotations


def _vp(n, p, cap):
    if n == 0:
        return cap
    v = 0
    while v < cap and n % p == 0:
        n //= p
        v += 1
    return v


def solve_mod_ppow(rows, rhs, p, npow):
    """Solve A x = rhs over Z/p^npow.

    rows: list of equation rows (len = #unknowns).  Returns (x, kernel, loss)
    with kernel a list of generators of the solution lattice mod p^npow and
    loss the largest pivot valuation (the intrinsic precision cost of the
    back-substitution), or None when the system is inconsistent.
    """
    m = p ** npow
    nr = len(rows)
    nc = len(rows[0]) if nr else 0
    a = [[c % m for c in row] for row in rows]
    b = [c % m for c in rhs]
    # column operations tracked through v: x = v * y
    v = [[1 if i == j else 0 for j in range(nc)] for i in range(nc)]
    pivots = []
    used_r, used_c = set(), set()
    while True:
        best, bv = None, npow
        for i in range(nr):
            if i in used_r:
                continue
            for j in range(nc):
                if j in used_c:
                    continue
                e = a[i][j]
                if e:
                    w = _vp(e, p, npow)
                    if w < bv:
                        best, bv = (i, j), w
                        if w == 0:
                            break
            if best and bv == 0:
                break
        if best is None:
            break
        pi, pj = best
        used_r.add(pi)
        used_c.add(pj)
        piv = a[pi][pj]
        unit = piv // p ** bv
        uinv = pow(unit, -1, m)
        # clear the pivot column (row ops touch b as well)
        for i in range(nr):
            if i == pi or a[i][pj] == 0:
                continue
            q = ((a[i][pj] // p ** bv) * uinv) % (m // p ** bv)
            for j in range(nc):
                a[i][j] = (a[i][j] - q * a[pi][j]) % m
            b[i] = (b[i] - q * b[pi]) % m
        # clear the pivot row (column ops touch v)
        for j in range(nc):
            if j == pj or a[pi][j] == 0:
                continue
            q = ((a[pi][j] // p ** bv) * uinv) % (m // p ** bv)
            for i in range(nr):
                a[i][j] = (a[i][j] - q * a[i][pj]) % m
            for i in range(nc):
                v[i][j] = (v[i][j] - q * v[i][pj]) % m
        pivots.append((pi, pj, bv, uinv))
    # consistency of untouched rows
    for i in range(nr):
        if i not in used_r and b[i] % m:
            return None
    y = [0] * nc
    kernel_y = []
    for pi, pj, bv, uinv in pivots:
        c = b[pi]
        if c % p ** bv:
            return None
        y[pj] = ((c // p ** bv) * uinv) % m
        if bv > 0:
            gen = [0] * nc
            gen[pj] = p ** (npow - bv)
            kernel_y.append(gen)
    for j in range(nc):
        if j not in used_c:
            gen = [0] * nc
            gen[j] = 1
            kernel_y.append(gen)
    x = [sum(v[i][j] * y[j] for j in range(nc)) % m for i in range(nc)]
    kernel = [[sum(v[i][j] * g[j] for j in range(nc)) % m for i in range(nc)]
              for g in kernel_y]
    loss = max((bv for _, _, bv, _ in pivots), default=0)
    return x, kernel, loss
