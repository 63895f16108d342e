"""Integer lattices and exact linear algebra.

Lattices are generated by the rows of an integer matrix.  The Hermite normal
form used everywhere is row-style: upper triangular (echelon), positive
pivots, entries above each pivot reduced into [0, pivot), zero rows last.
Ideal equality elsewhere in the package is literally equality of these
matrices, so the convention must not drift.
"""
from __future__ import annotations

from fractions import Fraction

from .errors import DivisionByZero, InvalidArgument

Matrix = list  # list of rows


def identity(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def _echelon(rows, ncols, modulus=None, track=0):
    """Row-reduce integer rows in place; returns (pivot rows, pivot columns, zero-reduced rows).

    ``track`` trailing columns are carried along without being eliminated
    (used for the transformation matrix).
    """
    active = [r for r in rows]
    pivots: list[list[int]] = []
    pivcols: list[int] = []
    for col in range(ncols):
        with_col = [r for r in active if r[col] != 0]
        if not with_col:
            continue
        others = [r for r in active if r[col] == 0]
        while len(with_col) > 1:
            with_col.sort(key=lambda r: abs(r[col]))
            piv = with_col[0]
            nxt = [piv]
            for r in with_col[1:]:
                q = r[col] // piv[col]
                r2 = [a - q * b for a, b in zip(r, piv)]
                if modulus:
                    for j in range(col + 1, ncols):
                        r2[j] %= modulus
                (nxt if r2[col] != 0 else others).append(r2)
            with_col = nxt
        piv = with_col[0]
        if piv[col] < 0:
            piv = [-a for a in piv]
        if modulus:
            for j in range(col + 1, ncols):
                piv[j] %= modulus
        pivots.append(piv)
        pivcols.append(col)
        if track:
            active = others
        else:
            active = [r for r in others if any(r[:ncols])]
    for i, c in enumerate(pivcols):
        p = pivots[i][c]
        for k in range(i):
            q = pivots[k][c] // p
            if q:
                pivots[k] = [a - q * b for a, b in zip(pivots[k], pivots[i])]
    return pivots, pivcols, active


def hnf(M, modulus: int | None = None) -> list[list[int]]:
    """Hermite normal form of the row lattice of M, same shape as M.

    If ``modulus`` is given the lattice is assumed to contain
    modulus * Z^ncols; those rows are added and intermediate entries are
    reduced modulo it, which keeps coefficients small.
    """
    M = [[int(a) for a in r] for r in M]
    if not M:
        return []
    ncols = len(M[0])
    rows = [list(r) for r in M]
    if modulus:
        modulus = abs(int(modulus))
        rows += [[modulus * int(i == j) for j in range(ncols)] for i in range(ncols)]
    pivots, _, _ = _echelon(rows, ncols, modulus)
    nrows = max(len(M), len(pivots))
    return pivots + [[0] * ncols for _ in range(nrows - len(pivots))]


def hnf_basis(M, modulus: int | None = None) -> list[list[int]]:
    """Non-zero rows of the HNF."""
    return [r for r in hnf(M, modulus) if any(r)]


def hnf_with_transform(M):
    """Return (H, U) with U unimodular and U*M = H (H in HNF, zero rows last)."""
    M = [[int(a) for a in r] for r in M]
    m = len(M)
    if m == 0:
        return [], []
    ncols = len(M[0])
    rows = [list(M[i]) + [int(i == j) for j in range(m)] for i in range(m)]
    pivots, _, rest = _echelon(rows, ncols, None, track=m)
    full = pivots + rest
    H = [r[:ncols] for r in full]
    U = [r[ncols:] for r in full]
    return H, U


def integer_left_kernel(M) -> list[list[int]]:
    """Basis of {x in Z^m : x*M = 0}."""
    H, U = hnf_with_transform(M)
    return [u for h, u in zip(H, U) if not any(h)]


def solve_echelon(H, v):
    """Coefficients x (Fractions) with x*H = v for H in row echelon form, or None."""
    resid = [Fraction(a) for a in v]
    xs = []
    for row in H:
        c = next((j for j, a in enumerate(row) if a), None)
        if c is None:
            xs.append(Fraction(0))
            continue
        if any(resid[j] for j in range(c)):
            return None
        x = resid[c] / row[c]
        xs.append(x)
        if x:
            resid = [a - x * b for a, b in zip(resid, row)]
    if any(resid):
        return None
    return xs


def in_lattice(H, v) -> bool:
    """Membership of a rational vector in the row lattice of an HNF matrix."""
    xs = solve_echelon(H, v)
    return xs is not None and all(x.denominator == 1 for x in xs)


def lattice_decompose(gens, v):
    """Integer coefficients c with sum c_i * gens_i = v, or None if v is not in the lattice."""
    H, U = hnf_with_transform(gens)
    xs = solve_echelon(H, v)
    if xs is None or any(x.denominator != 1 for x in xs):
        return None
    m = len(gens)
    coeffs = [0] * m
    for x, u in zip(xs, U):
        if x:
            for j in range(m):
                coeffs[j] += int(x) * u[j]
    return coeffs


def determinant_hnf(H) -> int:
    """Index of a full-rank lattice given by its square HNF."""
    out = 1
    for i, row in enumerate(H):
        out *= row[i]
    return out


# ---------------------------------------------------------------------------
# rational matrices


def mat_mul(A, B):
    return [[sum(A[i][k] * B[k][j] for k in range(len(B))) for j in range(len(B[0]))] for i in range(len(A))]


def vec_mat(v, A):
    n = len(A[0]) if A else 0
    out = [Fraction(0)] * n
    for a, row in zip(v, A):
        if a:
            for j in range(n):
                out[j] += a * row[j]
    return out


def transpose(A):
    return [list(r) for r in zip(*A)]


def mat_inverse(A):
    n = len(A)
    aug = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(A)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if piv is None:
            raise DivisionByZero("singular matrix")
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [a * inv for a in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


def determinant(A) -> Fraction:
    n = len(A)
    M = [[Fraction(x) for x in row] for row in A]
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if M[r][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            M[col], M[piv] = M[piv], M[col]
            det = -det
        det *= M[col][col]
        for r in range(col + 1, n):
            if M[r][col]:
                f = M[r][col] / M[col][col]
                M[r] = [a - f * b for a, b in zip(M[r], M[col])]
    return det


def rational_row_space_kernel(A):
    """Basis (rational) of {y : A*y = 0} for a rational matrix A (rows)."""
    if not A:
        raise InvalidArgument("empty matrix")
    n = len(A[0])
    M = [[Fraction(x) for x in row] for row in A]
    pivcols = []
    r = 0
    for col in range(n):
        piv = next((i for i in range(r, len(M)) if M[i][col] != 0), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = 1 / M[r][col]
        M[r] = [a * inv for a in M[r]]
        for i in range(len(M)):
            if i != r and M[i][col]:
                f = M[i][col]
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        pivcols.append(col)
        r += 1
    free = [c for c in range(n) if c not in pivcols]
    basis = []
    for fc in free:
        y = [Fraction(0)] * n
        y[fc] = Fraction(1)
        for i, pc in enumerate(pivcols):
            y[pc] = -M[i][fc]
        basis.append(y)
    return basis


def _integerize(v):
    from .arith import lcm_all

    den = lcm_all(Fraction(a).denominator for a in v)
    return [int(Fraction(a) * den) for a in v]


def saturation(A) -> list[list[int]]:
    """HNF basis of (Q-span of the rows of A) intersected with Z^n."""
    n = len(A[0])
    kernel = rational_row_space_kernel(A)
    if not kernel:
        return identity(n)
    Y = transpose([_integerize(y) for y in kernel])  # n x k
    return hnf_basis(integer_left_kernel(Y))
