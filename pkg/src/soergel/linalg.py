# Exact linear algebra.
#
# Two layers:
#   * generic dense row reduction over any exact field (Fraction, GFElt,
#     RatFunc), used for small systems and for eliminations over the
#     fraction field of R;
#   * a fast certified kernel engine over the rationals: ranks are computed
#     modulo several word-size primes (block Gaussian elimination on numpy
#     arrays, exact in int64), kernel bases are lifted by CRT + rational
#     reconstruction and then verified exactly.
#
# A modular rank is always a lower bound for the rational rank, so the
# reported nullity is an upper bound; agreement of independent primes (for
# dimensions) or exact verification of reconstructed vectors (for bases)
# certifies the result.

from __future__ import annotations

from fractions import Fraction
from math import gcd, isqrt

import numpy as np

_BLOCK = 256
_PRIME_BOUND = 5_931_641  # 256 * p^2 < 2^63 needs p < 5_931_641 for int64 matmul


def _is_prime(n):
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31):
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _gen_primes(count, below):
    out = []
    n = below - 1
    while len(out) < count:
        if _is_prime(n):
            out.append(n)
        n -= 2 if n % 2 else 1
    return out


PRIMES = _gen_primes(16, _PRIME_BOUND)


# ---------------------------------------------------------------------------
# generic dense elimination


def rref_generic(rows, ncols):
    """Reduced row echelon form in place; returns the pivot column list.

    ``rows`` is a list of lists of field elements (anything with +,-,*,/ and
    truthiness as a zero test).
    """
    pivots = []
    r = 0
    for c in range(ncols):
        pr = None
        for i in range(r, len(rows)):
            if rows[i][c]:
                pr = i
                break
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        inv_src = rows[r][c]
        rows[r] = [x / inv_src for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    del rows[r:]
    return pivots


def kernel_generic(rows, ncols, zero, one):
    """Kernel basis of the matrix given by dense rows over a generic field."""
    work = [list(r) for r in rows]
    pivots = rref_generic(work, ncols)
    pivot_set = set(pivots)
    free = [c for c in range(ncols) if c not in pivot_set]
    basis = []
    for fc in free:
        vec = [zero] * ncols
        vec[fc] = one
        for r, pc in enumerate(pivots):
            v = work[r][fc]
            if v:
                vec[pc] = zero - v
        basis.append(vec)
    return basis


def solve_generic(rows, rhs, ncols, zero):
    """One solution of A x = b, or None.  rows/rhs are parallel lists."""
    work = [list(r) + [b] for r, b in zip(rows, rhs)]
    pivots = rref_generic(work, ncols + 1)
    if ncols in pivots:
        return None
    sol = [zero] * ncols
    for r, pc in enumerate(pivots):
        sol[pc] = work[r][ncols]
    return sol


def invert_generic(mat, zero, one):
    """Inverse of a square matrix over a generic field; None if singular."""
    n = len(mat)
    work = [list(row) + [one if i == j else zero for j in range(n)] for i, row in enumerate(mat)]
    pivots = rref_generic(work, 2 * n)
    if pivots[:n] != list(range(n)):
        return None
    return [row[n:] for row in work]


# ---------------------------------------------------------------------------
# modular engine


def _rows_to_int(rows):
    """Clear denominators row by row; each row becomes {col: int}."""
    out = []
    for row in rows:
        lcm = 1
        for v in row.values():
            if isinstance(v, Fraction):
                d = v.denominator
                lcm = lcm * d // gcd(lcm, d)
        ints = {}
        for c, v in row.items():
            if isinstance(v, Fraction):
                iv = int(v * lcm)
            else:
                iv = int(v) * lcm
            if iv:
                ints[c] = iv
        if ints:
            out.append(ints)
    return out


def _dense_modp(int_rows, ncols, p):
    A = np.zeros((len(int_rows), ncols), dtype=np.int64)
    for i, row in enumerate(int_rows):
        for c, v in row.items():
            A[i, c] = v % p
    return A


def _panel_echelon(A, p, row, col, width):
    """Scalar elimination on panel columns [col, col+width); returns pivots.

    Multiplier bookkeeping is returned so the caller can replay the row
    operations on the trailing columns with matmuls.
    """
    m = A.shape[0]
    piv_rows = []
    piv_cols = []
    inv_list = []
    M = np.zeros((m, width), dtype=np.int64)  # multipliers per pivot step
    r = row
    for lc in range(width):
        c = col + lc
        colv = A[r:, c]
        nz = np.nonzero(colv)[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            A[[r, i]] = A[[i, r]]
            M[[r, i]] = M[[i, r]]
        inv = pow(int(A[r, c]), -1, p)
        A[r, col:col + width] = (A[r, col:col + width] * inv) % p
        below = A[r + 1:, c]
        nzb = np.nonzero(below)[0]
        if nzb.size:
            f = below[nzb].copy()
            A[r + 1 + nzb, col:col + width] = (
                A[r + 1 + nzb, col:col + width] - f[:, None] * A[r, col:col + width][None, :]
            ) % p
            M[r + 1 + nzb, len(piv_rows)] = f
        piv_rows.append(r)
        piv_cols.append(c)
        inv_list.append(inv)
        r += 1
        if r == m:
            break
    return piv_rows, piv_cols, inv_list, M


def rank_modp(int_rows, ncols, p):
    """Rank mod p via blocked Gaussian elimination (exact int64 arithmetic)."""
    if not int_rows or ncols == 0:
        return 0
    A = _dense_modp(int_rows, ncols, p)
    m = A.shape[0]
    row = 0
    col = 0
    rank = 0
    while row < m and col < ncols:
        w = min(_BLOCK, ncols - col)
        piv_rows, piv_cols, inv_list, M = _panel_echelon(A, p, row, col, w)
        k = len(piv_rows)
        trail = A[:, col + w:]
        if k and trail.shape[1]:
            # forward-substitute the pivot rows' trailing parts
            U = np.zeros((k, trail.shape[1]), dtype=np.int64)
            for t in range(k):
                acc = trail[piv_rows[t]].copy()
                if t:
                    acc = (acc - M[piv_rows[t], :t] @ U[:t]) % p
                U[t] = (acc * inv_list[t]) % p
            mask = np.ones(m, dtype=bool)
            for pr in piv_rows:
                mask[pr] = False
            mask[:row] = False
            idx = np.nonzero(mask)[0]
            if idx.size:
                Msub = M[idx, :k]
                upd = Msub @ U
                trail_idx = (trail[idx] - upd) % p
                trail[idx] = trail_idx
            for t, pr in enumerate(piv_rows):
                trail[pr] = U[t]
        # compact the pivot rows to the top of the active region
        for t, pr in enumerate(piv_rows):
            dest = row + t
            if pr != dest:
                A[[dest, pr]] = A[[pr, dest]]
        rank += k
        row += k
        col += w
    return rank


def rref_modp(int_rows, ncols, p):
    """Full RREF mod p (unblocked); returns (pivot_cols, rows as int64 array)."""
    A = _dense_modp(int_rows, ncols, p)
    m = A.shape[0]
    pivots = []
    r = 0
    for c in range(ncols):
        nz = np.nonzero(A[r:, c])[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            A[[r, i]] = A[[i, r]]
        inv = pow(int(A[r, c]), -1, p)
        A[r] = (A[r] * inv) % p
        others = np.nonzero(A[:, c])[0]
        others = others[others != r]
        if others.size:
            f = A[others, c].copy()
            A[others] = (A[others] - f[:, None] * A[r][None, :]) % p
        pivots.append(c)
        r += 1
        if r == m:
            break
    return pivots, A[:r]


def nullity_qq(rows, ncols, min_agree=2):
    """Certified kernel dimension over the rationals.

    ``rows`` is a list of {col: int|Fraction}.  The rank is computed modulo
    independent primes until ``min_agree`` of them agree on the maximum;
    since modular ranks never exceed the rational rank, the agreed maximum is
    accepted.
    """
    int_rows = _rows_to_int(rows)
    if not int_rows:
        return ncols
    ranks = []
    for p in PRIMES:
        ranks.append(rank_modp(int_rows, ncols, p))
        best = max(ranks)
        if ranks.count(best) >= min_agree:
            return ncols - best
    raise ArithmeticError("modular ranks failed to stabilize")


def _crt_pair(a1, m1, a2, m2):
    d = pow(m1, -1, m2)
    t = ((a2 - a1) * d) % m2
    return a1 + m1 * t, m1 * m2


def rational_reconstruct(a, m):
    """Balanced rational reconstruction of a mod m; None if out of range."""
    a %= m
    bound = isqrt(m // 2)
    r0, r1 = m, a
    t0, t1 = 0, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        t0, t1 = t1, t0 - q * t1
    if t1 == 0 or abs(t1) > bound or gcd(r1, abs(t1)) != 1:
        return None
    num, den = (r1, t1) if t1 > 0 else (-r1, -t1)
    if (num - a * den) % m != 0:
        return None
    return Fraction(num, den)


def kernel_qq(rows, ncols, max_primes=8):
    """Certified exact kernel basis over the rationals.

    Returns a list of Fraction vectors in RREF form (one per free column);
    each vector is verified against the exact input rows.
    """
    int_rows = _rows_to_int(rows)
    if not int_rows:
        from .fieldops import QQ

        return [
            [Fraction(1) if j == i else Fraction(0) for j in range(ncols)]
            for i in range(ncols)
        ]
    exact_rows = rows

    used = []
    datas = []
    pivots_ref = None
    for p in PRIMES[:max_primes]:
        piv, R = rref_modp(int_rows, ncols, p)
        if pivots_ref is None or len(piv) > len(pivots_ref):
            pivots_ref, datas, used = piv, [R], [p]
        elif piv == pivots_ref:
            datas.append(R)
            used.append(p)
        if len(used) >= 2:
            vecs = _lift_kernel(datas, used, pivots_ref, ncols)
            if vecs is not None and _verify_kernel(exact_rows, vecs):
                return vecs
    raise ArithmeticError("kernel reconstruction failed")


def _lift_kernel(datas, primes, pivots, ncols):
    pivot_set = set(pivots)
    free = [c for c in range(ncols) if c not in pivot_set]
    vecs = []
    for fc in free:
        vec = [Fraction(0)] * ncols
        vec[fc] = Fraction(1)
        ok = True
        for r, pc in enumerate(pivots):
            a, m = int(datas[0][r, fc]), primes[0]
            for R, p in zip(datas[1:], primes[1:]):
                a, m = _crt_pair(a, m, int(R[r, fc]), p)
            val = rational_reconstruct(a, m)
            if val is None:
                ok = False
                break
            vec[pc] = -val
        if not ok:
            return None
        vecs.append(vec)
    return vecs


def _verify_kernel(rows, vecs):
    for row in rows:
        for vec in vecs:
            s = Fraction(0)
            for c, v in row.items():
                if vec[c]:
                    s += Fraction(v) * vec[c]
            if s != 0:
                return False
    return True


def nullity_field(rows, ncols, field):
    """Kernel dimension over the realization field (rows: {col: coeff})."""
    if field.is_rational:
        return nullity_qq(rows, ncols)
    p = field.char
    int_rows = []
    for row in rows:
        ints = {}
        for c, v in row.items():
            iv = v.v if hasattr(v, "v") else int(v)
            if iv % p:
                ints[c] = iv % p
        if ints:
            int_rows.append(ints)
    if not int_rows:
        return ncols
    return ncols - rank_modp(int_rows, ncols, p)


def kernel_field(rows, ncols, field):
    """Exact kernel basis over the realization field."""
    if field.is_rational:
        return kernel_qq(rows, ncols)
    dense = []
    for row in rows:
        dense.append([field.of(row.get(c, 0)) for c in range(ncols)])
    return kernel_generic(dense, ncols, field.zero(), field.one())
