"""Exact integer matrix utilities: determinants, Hermite/Smith forms, basis extension.

All routines work over Python ints (or Fractions where a division is genuinely
needed) so results are exact at any size.  Matrices are lists of row lists;
ranks here are small, so clarity beats asymptotics.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

Matrix = list[list[int]]


def copy_matrix(mat: Sequence[Sequence[int]]) -> Matrix:
    return [[int(v) for v in row] for row in mat]


def identity(n: int) -> Matrix:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def matmul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> Matrix:
    n, k, m = len(a), len(b), len(b[0]) if b else 0
    return [[sum(a[i][t] * b[t][j] for t in range(k)) for j in range(m)] for i in range(n)]


def matvec(a: Sequence[Sequence[int]], x: Sequence[int]) -> list[int]:
    return [sum(row[j] * x[j] for j in range(len(x))) for row in a]


def transpose(a: Sequence[Sequence[int]]) -> Matrix:
    return [list(col) for col in zip(*a)] if a else []


def leading_minors(mat: Sequence[Sequence[int]]) -> list[int]:
    """Leading principal minors det(mat[:k,:k]) for k = 1..n, by Bareiss.

    Fraction-free: every intermediate entry is an integer, and the pivot after
    eliminating column k equals the k+1-st leading minor.  Returns the minors;
    a zero is reported in place if a leading submatrix is singular.
    """
    a = copy_matrix(mat)
    n = len(a)
    minors = []
    prev = 1
    for k in range(n):
        piv = a[k][k]
        minors.append(piv)
        if piv == 0:
            # Bareiss needs nonzero pivots; once a leading minor vanishes the
            # remaining ones are filled in by direct cofactor expansion.
            for t in range(k + 1, n):
                minors.append(_det_direct([row[: t + 1] for row in mat[: t + 1]]))
            return minors
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * piv - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = piv
    return minors


def _det_direct(mat: Sequence[Sequence[int]]) -> int:
    """Exact determinant via fraction elimination (fallback for zero pivots)."""
    d = _det_fraction(mat)
    assert d.denominator == 1
    return d.numerator


def _det_fraction(mat: Sequence[Sequence[int]]) -> Fraction:
    a = [[Fraction(v) for v in row] for row in mat]
    n = len(a)
    det = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if a[r][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            det = -det
        det *= a[c][c]
        for r in range(c + 1, n):
            f = a[r][c] / a[c][c]
            for k in range(c, n):
                a[r][k] -= f * a[c][k]
    return det


def determinant(mat: Sequence[Sequence[int]]) -> int:
    if not mat:
        return 1
    return leading_minors(mat)[-1]


def divisors(n: int) -> list[int]:
    """Positive divisors of n > 0, ascending, by trial division."""
    if n < 1:
        raise ValueError(f"divisors of {n} undefined, need a positive integer")
    small = []
    large = []
    k = 1
    while k * k <= n:
        if n % k == 0:
            small.append(k)
            if k * k != n:
                large.append(n // k)
        k += 1
    return small + large[::-1]


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """(g, s, t) with g = gcd(a, b) >= 0 and s*a + t*b = g."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r != 0:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def solve_gcd_one(x: Sequence[int]) -> list[int]:
    """Integer z with sum(z_i * x_i) = 1, built by one xgcd step per index.

    Deterministic: indices are folded in increasing order, so the same input
    always yields the same certificate.  Raises if gcd(x) != 1.
    """
    g = 0
    z: list[int] = [0] * len(x)
    for i, xi in enumerate(x):
        g2, s, t = xgcd(g, xi)
        z = [s * v for v in z]
        z[i] = t
        g = g2
    if g != 1:
        raise ValueError(f"coordinates have gcd {g}, expected 1")
    return z


def unimodular_with_first_column(x: Sequence[int]) -> Matrix:
    """Integer matrix with determinant +-1 whose first column is x.

    Requires gcd(x) = 1.  Built from the inverses of the 2x2 elimination
    steps that reduce x to e_1, applied in index order, so the result is
    deterministic.
    """
    x = [int(v) for v in x]
    d = len(x)
    if d == 0 or all(v == 0 for v in x):
        raise ValueError("cannot extend the zero vector")
    if d == 1:
        if abs(x[0]) != 1:
            raise ValueError("coordinates have gcd > 1, vector is not primitive")
        return [[x[0]]]
    m = identity(d)
    g = x[0]
    for i in range(1, d):
        g2, s, t = xgcd(g, x[i])
        # inverse of the step mapping (g, x_i) -> (g2, 0) on coordinates (0, i)
        f = identity(d)
        f[0][0] = g // g2 if g2 else 1
        f[0][i] = -t
        f[i][0] = x[i] // g2 if g2 else 0
        f[i][i] = s
        m = matmul(m, f)
        g = g2
    if g != 1:
        raise ValueError("coordinates have gcd > 1, vector is not primitive")
    return m


def hnf_rows(rows: Sequence[Sequence[int]]) -> Matrix:
    """Row Hermite normal form of the lattice spanned by the given rows.

    Returns only the nonzero rows: pivots positive, entries above a pivot
    reduced into [0, pivot).  Deterministic for any input order.
    """
    a = copy_matrix(rows)
    if not a:
        return []
    m, n = len(a), len(a[0])
    r = 0
    for c in range(n):
        piv = None
        for i in range(r, m):
            if a[i][c] != 0:
                if piv is None:
                    piv = i
                    continue
                g, s, t = xgcd(a[piv][c], a[i][c])
                u, v = a[piv][c] // g, a[i][c] // g
                rp = [s * a[piv][j] + t * a[i][j] for j in range(n)]
                ri = [-v * a[piv][j] + u * a[i][j] for j in range(n)]
                a[piv], a[i] = rp, ri
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        if a[r][c] < 0:
            a[r] = [-v for v in a[r]]
        for i in range(r):
            q = a[i][c] // a[r][c]
            if q:
                a[i] = [a[i][j] - q * a[r][j] for j in range(n)]
        r += 1
    return a[:r]


def in_row_span(hnf: Sequence[Sequence[int]], x: Sequence[int]) -> bool:
    """Whether x lies in the integer row span given in Hermite form."""
    rem = [int(v) for v in x]
    n = len(rem)
    for row in hnf:
        c = next((j for j in range(n) if row[j] != 0), None)
        if c is None:
            continue
        if rem[c] % row[c] != 0:
            return False
        q = rem[c] // row[c]
        if q:
            rem = [rem[j] - q * row[j] for j in range(n)]
    return all(v == 0 for v in rem)


def rank(mat: Sequence[Sequence[int]]) -> int:
    return len(hnf_rows(mat))


def _nearest_quotient(x: int, p: int) -> int:
    """Integer q minimizing |x - q*p| for p > 0 (ties toward the floor)."""
    q, r = divmod(x, p)
    if 2 * r > p:
        q += 1
    return q


def smith_normal_form(mat: Sequence[Sequence[int]]) -> tuple[Matrix, Matrix, Matrix]:
    """(u, d, v) with u*mat*v = d diagonal, u and v unimodular.

    Diagonal entries are nonnegative and each divides the next.  Every pass
    re-selects the globally smallest pivot and reduces with balanced
    quotients, which keeps intermediate entries from compounding.
    """
    a = copy_matrix(mat)
    m = len(a)
    n = len(a[0]) if a else 0
    u = identity(m)
    v = identity(n)
    t = 0
    while t < min(m, n):
        # smallest nonzero magnitude in the trailing block becomes the pivot
        piv = None
        for i in range(t, m):
            for j in range(t, n):
                if a[i][j] != 0 and (piv is None or abs(a[i][j]) < abs(a[piv[0]][piv[1]])):
                    piv = (i, j)
        if piv is None:
            break
        i0, j0 = piv
        a[t], a[i0] = a[i0], a[t]
        u[t], u[i0] = u[i0], u[t]
        if j0 != t:
            for row in a:
                row[t], row[j0] = row[j0], row[t]
            for row in v:
                row[t], row[j0] = row[j0], row[t]
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
        p = a[t][t]
        # one balanced reduction pass; any leftover means a smaller entry
        # appeared somewhere, so re-pick the pivot
        leftover = False
        for i in range(t + 1, m):
            if a[i][t] != 0:
                q = _nearest_quotient(a[i][t], p)
                if q:
                    a[i] = [a[i][j] - q * a[t][j] for j in range(n)]
                    u[i] = [u[i][j] - q * u[t][j] for j in range(m)]
                if a[i][t] != 0:
                    leftover = True
        for j in range(t + 1, n):
            if a[t][j] != 0:
                q = _nearest_quotient(a[t][j], p)
                if q:
                    for row in a:
                        row[j] -= q * row[t]
                    for row in v:
                        row[j] -= q * row[t]
                if a[t][j] != 0:
                    leftover = True
        if leftover:
            continue
        # pivot row and column are clean: enforce that the pivot divides the
        # whole trailing block before moving on
        bad = None
        for i in range(t + 1, m):
            for j in range(t + 1, n):
                if a[i][j] % p != 0:
                    bad = i
                    break
            if bad is not None:
                break
        if bad is not None:
            a[t] = [a[t][j] + a[bad][j] for j in range(n)]
            u[t] = [u[t][j] + u[bad][j] for j in range(m)]
            continue
        t += 1
    return u, a, v


def invariant_factors(mat: Sequence[Sequence[int]]) -> list[int]:
    """Nonzero diagonal of the Smith form."""
    _, d, _ = smith_normal_form(mat)
    out = []
    for t in range(min(len(d), len(d[0]) if d else 0)):
        if d[t][t] != 0:
            out.append(d[t][t])
    return out


def kernel_rows(mat: Sequence[Sequence[int]]) -> Matrix:
    """Basis rows of {x : mat @ x = 0} over the integers (saturated)."""
    m = len(mat)
    n = len(mat[0]) if mat else 0
    if m == 0:
        return identity(n)
    _, d, v = smith_normal_form(mat)
    r = len(invariant_factors(mat))
    # columns r..n-1 of v span the kernel
    return [[v[i][j] for i in range(n)] for j in range(r, n)]


def saturation_rows(rows: Sequence[Sequence[int]]) -> Matrix:
    """Basis rows of (Q-span of rows) intersected with Z^n."""
    n = len(rows[0]) if rows else 0
    ker = kernel_rows(rows)  # rows k with rows @ k^T = 0 ... careful: acts on right
    # kernel_rows treats mat as a map x -> mat @ x; we need vectors y with
    # row . y = 0 for all rows, i.e. kernel of the matrix itself.
    sat = kernel_rows(ker) if ker else identity(n)
    return hnf_rows(sat)


def invert_unimodular(mat: Sequence[Sequence[int]]) -> Matrix:
    """Exact inverse of an integer matrix with determinant +-1."""
    n = len(mat)
    a = [[Fraction(mat[i][j]) for j in range(n)] + [Fraction(1 if i == j else 0) for j in range(n)]
         for i in range(n)]
    for c in range(n):
        piv = next((r for r in range(c, n) if a[r][c] != 0), None)
        if piv is None:
            raise ValueError("matrix is singular")
        a[c], a[piv] = a[piv], a[c]
        inv = 1 / a[c][c]
        a[c] = [v * inv for v in a[c]]
        for r in range(n):
            if r != c and a[r][c] != 0:
                f = a[r][c]
                a[r] = [a[r][j] - f * a[c][j] for j in range(2 * n)]
    out = [[a[i][n + j] for j in range(n)] for i in range(n)]
    if any(v.denominator != 1 for row in out for v in row):
        raise ValueError("matrix is not unimodular")
    return [[v.numerator for v in row] for row in out]


def complement_rows(sat: Sequence[Sequence[int]]) -> Matrix:
    """Rows completing a saturated basis to a basis of Z^n.

    The input rows must be a basis of a saturated sublattice (all invariant
    factors 1); the returned rows together with the input form a Z^n basis.
    """
    if not sat:
        raise ValueError("empty input")
    n = len(sat[0])
    r = len(sat)
    facs = invariant_factors(sat)
    if len(facs) != r or any(f != 1 for f in facs):
        raise ValueError("rows are not a basis of a saturated sublattice")
    _, _, v = smith_normal_form(sat)
    vinv = invert_unimodular(v)
    # sat = u^-1 [I 0] vinv, so rows r..n-1 of vinv complete the basis
    return [vinv[i] for i in range(r, n)]


def solve_linear_system(mat: Sequence[Sequence[int]], rhs: Sequence[int | Fraction]) -> list[Fraction]:
    """Unique exact solution of mat @ x = rhs for invertible mat."""
    n = len(mat)
    a = [[Fraction(mat[i][j]) for j in range(n)] + [Fraction(rhs[i])] for i in range(n)]
    for c in range(n):
        piv = next((r for r in range(c, n) if a[r][c] != 0), None)
        if piv is None:
            raise ValueError("matrix is singular")
        a[c], a[piv] = a[piv], a[c]
        inv = 1 / a[c][c]
        a[c] = [v * inv for v in a[c]]
        for r in range(n):
            if r != c and a[r][c] != 0:
                f = a[r][c]
                a[r] = [a[r][j] - f * a[c][j] for j in range(n + 1)]
    return [a[i][n] for i in range(n)]


def lll_rows(gram: Sequence[Sequence[int]], delta: Fraction = Fraction(3, 4)) -> Matrix:
    """Unimodular rows u with u * gram * u^T LLL-reduced, computed on the
    Gram matrix alone in all-integer arithmetic.

    The enumerators need this: their level-by-level ranges stay tight only on
    a reduced basis, and mod-kernel bases straight out of the Smith form can
    be arbitrarily skewed.  The state is the classical lambda/d pair, where
    dd[i] is the Gram determinant of the first i vectors and
    lam[i][j] = mu[i][j] * dd[j + 1], so every division below is exact and no
    rational Gram-Schmidt data is ever rebuilt."""
    n = len(gram)
    u = identity(n)
    if n < 2:
        return u
    g = [[int(gram[i][j]) for j in range(n)] for i in range(n)]
    dd = [1] * (n + 1)
    lam = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1):
            s = g[i][j]
            for k in range(j):
                s = (dd[k + 1] * s - lam[i][k] * lam[j][k]) // dd[k]
            if j < i:
                lam[i][j] = s
            elif s > 0:
                dd[i + 1] = s
            else:
                raise ValueError("gram matrix is not positive definite")

    def reduce_row(k: int, j: int) -> None:
        q = _nearest_quotient(lam[k][j], dd[j + 1])
        if q == 0:
            return
        u[k] = [a - q * b for a, b in zip(u[k], u[j])]
        lam[k][j] -= q * dd[j + 1]
        for i in range(j):
            lam[k][i] -= q * lam[j][i]

    k = 1
    while k < n:
        reduce_row(k, k - 1)
        lb = lam[k][k - 1]
        swap = delta.denominator * (dd[k + 1] * dd[k - 1] + lb * lb)
        if swap < delta.numerator * dd[k] * dd[k]:
            u[k], u[k - 1] = u[k - 1], u[k]
            for j in range(k - 1):
                lam[k][j], lam[k - 1][j] = lam[k - 1][j], lam[k][j]
            # mu[k][k-1] survives the swap unchanged in lambda form
            fused = (dd[k - 1] * dd[k + 1] + lb * lb) // dd[k]
            for i in range(k + 1, n):
                t = lam[i][k]
                s = lam[i][k - 1]
                lam[i][k] = (s * dd[k + 1] - t * lb) // dd[k]
                lam[i][k - 1] = (s * lb + t * dd[k - 1]) // dd[k]
            dd[k] = fused
            k = max(k - 1, 1)
        else:
            for j in range(k - 2, -1, -1):
                reduce_row(k, j)
            k += 1
    return u
