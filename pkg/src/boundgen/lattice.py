"""Integer lattice utilities: LLL reduction and row-style Hermite normal form."""

from __future__ import annotations

from fractions import Fraction


def _dot(u, v):
    return sum(a * b for a, b in zip(u, v))


def lll_reduce(basis, delta=Fraction(3, 4)):
    """LLL-reduce the rows of an integer matrix (exact rational Gram-Schmidt).

    Rows must be linearly independent.
    """
    b = [list(map(int, row)) for row in basis]
    n = len(b)
    if n == 0:
        return b

    def gram_schmidt():
        bstar = []
        mu = [[Fraction(0)] * n for _ in range(n)]
        norms = []
        for i in range(n):
            v = [Fraction(x) for x in b[i]]
            for j in range(i):
                mu[i][j] = _dot(b[i], bstar[j]) / norms[j] if norms[j] else Fraction(0)
                v = [x - mu[i][j] * y for x, y in zip(v, bstar[j])]
            bstar.append(v)
            norms.append(_dot(v, v))
        return bstar, mu, norms

    bstar, mu, norms = gram_schmidt()
    k = 1
    while k < n:
        for j in range(k - 1, -1, -1):
            q = round(mu[k][j])
            if q:
                b[k] = [x - q * y for x, y in zip(b[k], b[j])]
                for i in range(j + 1):
                    mu[k][i] -= q * (mu[j][i] if i < j else 1)
        if norms[k] >= (delta - mu[k][k - 1] ** 2) * norms[k - 1]:
            k += 1
        else:
            b[k], b[k - 1] = b[k - 1], b[k]
            bstar, mu, norms = gram_schmidt()
            k = max(k - 1, 1)
    return b


def hnf(rows, ncols=None):
    """Row-style Hermite normal form of the lattice spanned by ``rows``.

    Pivots are positive and entries above each pivot lie in ``[0, pivot)``;
    zero rows are dropped, so equal lattices give identical output.
    """
    m = [list(map(int, r)) for r in rows if any(r)]
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    out = []
    col = 0
    while m and col < ncols:
        active = [r for r in m if r[col] != 0]
        rest = [r for r in m if r[col] == 0]
        if not active:
            col += 1
            continue
        while len(active) > 1:
            active.sort(key=lambda r: abs(r[col]))
            piv = active[0]
            nxt = [piv]
            for r in active[1:]:
                q = r[col] // piv[col]
                r = [a - q * b for a, b in zip(r, piv)]
                if r[col] != 0:
                    nxt.append(r)
                elif any(r):
                    rest.append(r)
            active = nxt
        piv = active[0]
        if piv[col] < 0:
            piv = [-a for a in piv]
        out.append((col, piv))
        m = rest
        col += 1
    # reduce entries above pivots
    basis = [r for _, r in out]
    for i, (c, r) in enumerate(out):
        for j in range(i):
            q = basis[j][c] // r[c]
            if q:
                basis[j] = [a - q * b for a, b in zip(basis[j], r)]
    return basis


def in_lattice(vec, basis) -> bool:
    """Membership test against an HNF basis."""
    v = list(vec)
    for row in basis:
        c = next(i for i, x in enumerate(row) if x)
        if v[c] % row[c]:
            return False
        q = v[c] // row[c]
        v = [a - q * b for a, b in zip(v, row)]
    return not any(v)
