"""Row reduction over F_p for the small subspace computations."""

from __future__ import annotations


def rref(rows: list[list[int]], p: int) -> list[list[int]]:
    """Reduced row echelon form; returns the nonzero rows only."""
    m = [[x % p for x in r] for r in rows]
    if not m:
        return []
    ncols = len(m[0])
    out = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = pow(m[r][c], p - 2, p)
        m[r] = [x * inv % p for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [(a - f * b) % p for a, b in zip(m[i], m[r])]
        r += 1
        if r == len(m):
            break
    for row in m[:r]:
        out.append(row)
    return out


def rank(rows: list[list[int]], p: int) -> int:
    return len(rref(rows, p))


def nullspace(rows: list[list[int]], p: int, ncols: int) -> list[list[int]]:
    """Basis of {x : rows @ x = 0}."""
    red = rref(rows, p) if rows else []
    pivots = []
    for row in red:
        pivots.append(next(i for i, x in enumerate(row) if x))
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [0] * ncols
        v[f] = 1
        for row, pc in zip(red, pivots):
            v[pc] = (-row[f]) % p
        basis.append(v)
    return basis


def intersect_rowspaces(u: list[list[int]], w: list[list[int]], p: int) -> list[list[int]]:
    """Basis (rref) of rowspace(u) ∩ rowspace(w)."""
    if not u or not w:
        return []
    # a.u = b.w  <=>  (a, -b) in the left nullspace of [u; w]
    stacked = u + w
    ncols = len(stacked)
    cols = [[stacked[i][j] for i in range(ncols)] for j in range(len(stacked[0]))]
    vecs = []
    for v in nullspace(cols, p, ncols):
        a = v[: len(u)]
        vecs.append([sum(ai * row[j] for ai, row in zip(a, u)) % p for j in range(len(u[0]))])
    return rref(vecs, p)
