"""Independent brute-force oracles for the test suite.

Everything here is deliberately written against the standard library only
(fractions.Fraction, itertools) and shares no code with the package: a
separate elimination routine, a separate differential construction with
permutation-parity signs, and a separate Jacobi evaluator.  Golden values in
the tests were produced by these oracles.
"""

from fractions import Fraction
from itertools import combinations


def frac_rank(rows):
    """Gaussian elimination over Fraction (or complex Fractions as tuples)."""
    m = [list(map(Fraction, r)) for r in rows]
    if not m or not m[0]:
        return 0
    nrows, ncols = len(m), len(m[0])
    rank = 0
    for col in range(ncols):
        piv = next((i for i in range(rank, nrows) if m[i][col]), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        for i in range(nrows):
            if i != rank and m[i][col]:
                f = m[i][col] / m[rank][col]
                m[i] = [a - f * b for a, b in zip(m[i], m[rank])]
        rank += 1
        if rank == nrows:
            break
    return rank


def frac_rref(rows, ncols):
    """Reduced row echelon form over Fraction; returns (rows, pivots)."""
    m = [list(map(Fraction, r)) for r in rows]
    pivots = []
    rank = 0
    nrows = len(m)
    for col in range(ncols):
        piv = next((i for i in range(rank, nrows) if m[i][col]), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        lead = m[rank][col]
        m[rank] = [x / lead for x in m[rank]]
        for i in range(nrows):
            if i != rank and m[i][col]:
                f = m[i][col]
                m[i] = [a - f * b for a, b in zip(m[i], m[rank])]
        pivots.append(col)
        rank += 1
        if rank == nrows:
            break
    return m, pivots


def perm_sign(seq):
    """Parity of the permutation sorting seq (distinct entries)."""
    sign = 1
    items = list(seq)
    for i in range(len(items)):
        for j in range(i + 1, len(items)):
            if items[i] > items[j]:
                sign = -sign
    return sign


def oracle_differential(brackets, n, k):
    """Matrix of d on degree-k dual monomials, built from first principles.

    brackets: {(i, j): {t: Fraction}} for i < j.  Convention:
    d x^t = - sum C_{ij}^t x^i ^ x^j, extended as an odd derivation.
    Returns a list of rows (length C(n, k+1)) over columns C(n, k).
    """
    src = list(combinations(range(n), k))
    dst = list(combinations(range(n), k + 1))
    dst_index = {mon: r for r, mon in enumerate(dst)}
    rows = [[Fraction(0)] * len(src) for _ in dst]
    for c, mon in enumerate(src):
        for pos, t in enumerate(mon):
            rest = mon[:pos] + mon[pos + 1 :]
            for (i, j), coeffs in brackets.items():
                coeff = coeffs.get(t)
                if not coeff:
                    continue
                if i in rest or j in rest:
                    continue
                seq = (i, j) + rest
                target = tuple(sorted(seq))
                sign = perm_sign(seq) * ((-1) ** pos)
                rows[dst_index[target]][c] += -Fraction(coeff) * sign
    return rows


def oracle_betti(brackets, n):
    """Betti numbers from oracle differentials and Fraction ranks."""
    from math import comb

    ranks = [frac_rank(oracle_differential(brackets, n, k)) for k in range(n + 1)]
    out = []
    for k in range(n + 1):
        prev = ranks[k - 1] if k else 0
        out.append(comb(n, k) - ranks[k] - prev)
    return out


def oracle_bracket(brackets, n, u, v):
    """Bilinear bracket of coordinate vectors over Fraction."""
    out = [Fraction(0)] * n
    for (i, j), coeffs in brackets.items():
        c = u[i] * v[j] - u[j] * v[i]
        if c:
            for t, w in coeffs.items():
                out[t] += c * Fraction(w)
    return out


def oracle_jacobi_residual(brackets, n, i, j, k):
    """[[Xi,Xj],Xk] + [[Xj,Xk],Xi] + [[Xk,Xi],Xj] over Fraction."""
    def basis(t):
        e = [Fraction(0)] * n
        e[t] = Fraction(1)
        return e

    def br(a, b):
        return oracle_bracket(brackets, n, a, b)

    r1 = br(br(basis(i), basis(j)), basis(k))
    r2 = br(br(basis(j), basis(k)), basis(i))
    r3 = br(br(basis(k), basis(i)), basis(j))
    return [a + b + c for a, b, c in zip(r1, r2, r3)]


def oracle_centralizer_dim(brackets, n):
    """dim{v : [v, X_i] = 0 for all i} by stacking ad-matrices."""
    rows = []
    for i in range(n):
        e = [Fraction(0)] * n
        e[i] = Fraction(1)
        cols = []
        for j in range(n):
            ej = [Fraction(0)] * n
            ej[j] = Fraction(1)
            cols.append(oracle_bracket(brackets, n, ej, e))
        for coord in range(n):
            rows.append([cols[j][coord] for j in range(n)])
    return n - frac_rank(rows)
