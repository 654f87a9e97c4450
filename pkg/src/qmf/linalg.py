"""Exact integer / rational / modular linear algebra.

Matrices are lists of rows unless a function says otherwise.  Nothing here
uses floating point.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Sequence

Matrix = list[list[int]]


def transpose(rows: Sequence[Sequence]) -> list[list]:
    return [list(col) for col in zip(*rows)]


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> list[list]:
    bt = transpose(b)
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def _integer_rows(rows: Sequence[Sequence]) -> Matrix:
    out = []
    for row in rows:
        den = 1
        for x in row:
            d = Fraction(x).denominator
            den = den * d // gcd(den, d)
        out.append([int(Fraction(x) * den) for x in row])
    return out


def bareiss(rows: Sequence[Sequence]) -> tuple[int, int]:
    """Fraction-free elimination; returns ``(rank, last_pivot)``.

    For a square nonsingular integer matrix ``last_pivot`` is the determinant
    up to the sign of the row swaps, which :func:`det` tracks separately.
    """
    a = _integer_rows(rows)
    m = len(a)
    n = len(a[0]) if m else 0
    rank = 0
    prev = 1
    for col in range(n):
        if rank == m:
            break
        piv = next((i for i in range(rank, m) if a[i][col] != 0), None)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        p = a[rank][col]
        for i in range(rank + 1, m):
            ai = a[i]
            f = ai[col]
            ar = a[rank]
            for j in range(col + 1, n):
                ai[j] = (p * ai[j] - f * ar[j]) // prev
            ai[col] = 0
        prev = p
        rank += 1
    return rank, prev


def exact_rank(rows: Sequence[Sequence]) -> int:
    if not rows or not rows[0]:
        return 0
    return bareiss(rows)[0]


def det(rows: Sequence[Sequence]):
    """Exact determinant of a square integer or rational matrix."""
    n = len(rows)
    if n == 0:
        return 1
    a = [[Fraction(x) for x in row] for row in rows]
    sign = 1
    d = Fraction(1)
    for col in range(n):
        piv = next((i for i in range(col, n) if a[i][col] != 0), None)
        if piv is None:
            return 0
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            sign = -sign
        p = a[col][col]
        d *= p
        for i in range(col + 1, n):
            f = a[i][col] / p
            if f:
                ri, rc = a[i], a[col]
                for j in range(col, n):
                    ri[j] -= f * rc[j]
    d *= sign
    return int(d) if d.denominator == 1 else d


def rref_mod_p(rows: Sequence[Sequence[int]], p: int) -> tuple[list[list[int]], list[int]]:
    """Reduced row echelon form over F_p and the list of pivot columns."""
    a = [[x % p for x in row] for row in rows]
    m = len(a)
    n = len(a[0]) if m else 0
    pivots = []
    r = 0
    for col in range(n):
        if r == m:
            break
        piv = next((i for i in range(r, m) if a[i][col]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = pow(a[r][col], -1, p)
        a[r] = [x * inv % p for x in a[r]]
        ar = a[r]
        for i in range(m):
            if i != r and a[i][col]:
                f = a[i][col]
                a[i] = [(x - f * y) % p for x, y in zip(a[i], ar)]
        pivots.append(col)
        r += 1
    return a[:r], pivots


def rank_mod_p(rows: Sequence[Sequence[int]], p: int) -> int:
    if not rows or not rows[0]:
        return 0
    # forward elimination only; cheaper than full RREF
    a = [[x % p for x in row] for row in rows]
    m, n = len(a), len(a[0])
    r = 0
    for col in range(n):
        if r == m:
            break
        piv = next((i for i in range(r, m) if a[i][col]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        ar = a[r]
        inv = pow(ar[col], -1, p)
        for i in range(r + 1, m):
            f = a[i][col]
            if f:
                f = f * inv % p
                a[i] = [(x - f * y) % p for x, y in zip(a[i], ar)]
        r += 1
    return r


def nullspace_mod_p(rows: Sequence[Sequence[int]], p: int, ncols: int) -> list[list[int]]:
    """Basis of the right kernel over F_p, one vector per free column.

    The vector attached to free column ``f`` has a 1 in position ``f``, zeros
    in the other free positions and entries in ``[0, p)``.
    """
    return [v for _, v in kernel_mod_p(rows, p, ncols)]


def kernel_mod_p(rows: Sequence[Sequence[int]], p: int, ncols: int) -> list[tuple[int, list[int]]]:
    """Like :func:`nullspace_mod_p` but pairs each vector with its free column."""
    if rows:
        red, pivots = rref_mod_p(rows, p)
    else:
        red, pivots = [], []
    free = [j for j in range(ncols) if j not in pivots]
    basis = []
    for f in free:
        v = [0] * ncols
        v[f] = 1
        for r, pc in enumerate(pivots):
            v[pc] = (-red[r][f]) % p
        basis.append((f, v))
    return basis


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """``(g, x, y)`` with ``x*a + y*b = g = gcd(a, b) >= 0``."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def column_hnf(rows: Sequence[Sequence[int]]) -> tuple[Matrix, Matrix, list[int]]:
    """Column Hermite normal form ``H = A U`` with ``U`` unimodular.

    Full-column-rank inputs go through :func:`_hnf_full_rank`, which keeps
    entries bounded by working modulo a determinant; everything else (and any
    result that fails verification) uses the direct elimination of
    :func:`column_hnf_direct`.  The two agree since the form is unique.
    """
    m = len(rows)
    d = len(rows[0]) if m else 0
    if m and d:
        res = _hnf_full_rank(rows)
        if res is not None:
            return res
    return column_hnf_direct(rows)


_BIG_PRIME = (1 << 61) - 1


def greedy_row_basis(rows: Sequence[Sequence[int]], p: int = _BIG_PRIME) -> list[int]:
    """Rows that increase the rank mod ``p`` when scanned top to bottom."""
    basis: list[tuple[int, list[int]]] = []  # (pivot column, reduced row)
    chosen = []
    for idx, row in enumerate(rows):
        v = [x % p for x in row]
        for pc, b in basis:
            f = v[pc]
            if f:
                v = [(x - f * y) % p for x, y in zip(v, b)]
        pc = next((j for j, x in enumerate(v) if x), None)
        if pc is None:
            continue
        inv = pow(v[pc], -1, p)
        basis.append((pc, [x * inv % p for x in v]))
        chosen.append(idx)
        if len(chosen) == len(row):
            break
    return chosen


def solve_matrix(a: Sequence[Sequence], b: Sequence[Sequence]) -> list[list[Fraction]]:
    """``X`` with ``a X = b`` for square nonsingular ``a`` (exact)."""
    n = len(a)
    k = len(b[0]) if b else 0
    w = [[Fraction(x) for x in ra] + [Fraction(x) for x in rb] for ra, rb in zip(a, b)]
    for col in range(n):
        piv = next(i for i in range(col, n) if w[i][col] != 0)
        w[col], w[piv] = w[piv], w[col]
        pv = w[col][col]
        w[col] = [x / pv for x in w[col]]
        rc = w[col]
        for i in range(n):
            if i != col and w[i][col] != 0:
                f = w[i][col]
                w[i] = [x - f * y for x, y in zip(w[i], rc)]
    return [r[n:n + k] for r in w]


def _hnf_square_mod(a: Sequence[Sequence[int]], D: int) -> Matrix:
    """Lower-triangular column HNF of a nonsingular square matrix, ``|det| = D``.

    Works modulo ``R`` where ``R e_i`` lies in the lattice for the rows still
    to be processed (``R`` starts at ``D`` and is divided by each pivot).
    """
    n = len(a)
    W = [[a[i][j] % D for i in range(n)] for j in range(n)]  # column-major
    R = D
    for i in range(n):
        for j in range(i + 1, n):
            b = W[j][i]
            if b == 0:
                continue
            c = W[i][i]
            g, x, y = xgcd(c, b)
            s, t = c // g, b // g
            ci, cj = W[i], W[j]
            W[i] = [(x * u + y * v) % R for u, v in zip(ci, cj)]
            W[j] = [(s * v - t * u) % R for u, v in zip(ci, cj)]
        g, x, _ = xgcd(W[i][i], R)
        W[i] = [(x * u) % R for u in W[i]]
        W[i][i] = g
        for r in range(i):
            W[i][r] = 0
        R //= g
    # reduce entries left of each pivot
    for i in range(n):
        piv = W[i][i]
        for j in range(i):
            q = W[j][i] // piv
            if q:
                W[j] = [u - q * v for u, v in zip(W[j], W[i])]
    return transpose(W)


def _hnf_full_rank(rows: Sequence[Sequence[int]]):
    m, d = len(rows), len(rows[0])
    P = greedy_row_basis(rows)
    if len(P) < d:
        return None
    sq = [list(rows[r]) for r in P]
    _, last = bareiss(sq)
    D = abs(last)
    if D == 0:
        return None
    Hs = _hnf_square_mod(sq, D)
    X = solve_matrix(sq, Hs)
    if any(x.denominator != 1 for r in X for x in r):
        return None
    U = [[int(x) for x in r] for r in X]
    H = matmul(rows, U)
    # verify the defining conditions on all rows
    for t, pr in enumerate(P):
        if H[pr][t] <= 0 or any(H[r][t] for r in range(pr)):
            return None
        if any(not 0 <= H[pr][j] < H[pr][t] for j in range(t)):
            return None
    return H, U, P


def column_hnf_direct(rows: Sequence[Sequence[int]]) -> tuple[Matrix, Matrix, list[int]]:
    """Column Hermite normal form ``H = A U`` with ``U`` unimodular.

    Returns ``(H, U, pivot_rows)``.  Column ``t < rank`` of ``H`` is zero above
    its pivot row ``pivot_rows[t]`` (strictly increasing), the pivot is
    positive, and entries of earlier columns in that row lie in
    ``[0, pivot)``.  Columns ``rank..d-1`` of ``H`` are zero, so the matching
    columns of ``U`` are a basis of the integer kernel of ``A``.
    """
    m = len(rows)
    d = len(rows[0]) if m else 0
    # column-major working copies
    H = [[rows[i][j] for i in range(m)] for j in range(d)]
    U = [[int(i == j) for i in range(d)] for j in range(d)]
    pivots = []
    c = 0
    for i in range(m):
        if c == d:
            break
        for j in range(c + 1, d):
            b = H[j][i]
            if b == 0:
                continue
            a = H[c][i]
            g, x, y = xgcd(a, b)
            s, t = a // g, b // g
            hc, hj = H[c], H[j]
            H[c] = [x * u + y * v for u, v in zip(hc, hj)]
            H[j] = [s * v - t * u for u, v in zip(hc, hj)]
            uc, uj = U[c], U[j]
            U[c] = [x * u + y * v for u, v in zip(uc, uj)]
            U[j] = [s * v - t * u for u, v in zip(uc, uj)]
        piv = H[c][i]
        if piv == 0:
            continue
        if piv < 0:
            H[c] = [-v for v in H[c]]
            U[c] = [-v for v in U[c]]
            piv = -piv
        hc, uc = H[c], U[c]
        for j in range(c):
            q = H[j][i] // piv
            if q:
                H[j] = [u - q * v for u, v in zip(H[j], hc)]
                U[j] = [u - q * v for u, v in zip(U[j], uc)]
        pivots.append(i)
        c += 1
    return transpose(H) if d else [[] for _ in range(m)], transpose(U), pivots


def integer_kernel(rows: Sequence[Sequence[int]], ncols: int) -> list[list[int]]:
    """Basis of ``{x in Z^ncols : A x = 0}``."""
    if not rows:
        return identity(ncols)
    _, U, pivots = column_hnf(rows)
    r = len(pivots)
    return [[U[i][j] for i in range(ncols)] for j in range(r, ncols)]


def solve_rational(rows: Sequence[Sequence], rhs: Sequence) -> tuple[list[Fraction] | None, int]:
    """Solve ``A x = b`` exactly over Q.

    Returns ``(x, rank)``.  ``x`` is ``None`` when the system is inconsistent;
    when the rank is below the number of unknowns ``x`` is one particular
    solution with free variables set to zero.
    """
    m = len(rows)
    n = len(rows[0]) if m else 0
    a = [[Fraction(v) for v in row] + [Fraction(b)] for row, b in zip(rows, rhs)]
    pivots = []
    r = 0
    for col in range(n):
        if r == m:
            break
        piv = next((i for i in range(r, m) if a[i][col] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        p = a[r][col]
        a[r] = [v / p for v in a[r]]
        ar = a[r]
        for i in range(m):
            if i != r and a[i][col] != 0:
                f = a[i][col]
                a[i] = [u - f * v for u, v in zip(a[i], ar)]
        pivots.append(col)
        r += 1
    if any(a[i][n] != 0 for i in range(r, m)):
        return None, r
    x = [Fraction(0)] * n
    for i, col in enumerate(pivots):
        x[col] = a[i][n]
    return x, r
