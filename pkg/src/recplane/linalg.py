"""Small dense exact linear algebra over a coefficient field.

Matrices are lists of row lists of field scalars.  Everything here is plain
Gaussian elimination; sizes stay tiny except for the Hilbert rank oracle,
which gets a bitmask fast path over F_2.
"""

from __future__ import annotations


def rref(field, rows):
    """Reduced row echelon form.  Returns (new_rows, pivot_columns)."""
    m = [list(r) for r in rows]
    if not m:
        return m, []
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(m)) if m[i][c] != field.zero), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = field.inv(m[r][c])
        m[r] = [field.mul(inv, x) for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != field.zero:
                f = m[i][c]
                m[i] = [field.sub(x, field.mul(f, y)) for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def rank(field, rows) -> int:
    return len(rref(field, rows)[1])


def kernel_basis(field, rows, ncols):
    """Basis of {v : M v = 0} for M given by `rows` (each of length ncols)."""
    reduced, pivots = rref(field, rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [field.zero] * ncols
        v[fc] = field.one
        for r, pc in enumerate(pivots):
            v[pc] = field.neg(reduced[r][fc])
        basis.append(v)
    return basis


def solve_combination(field, basis_rows, target):
    """Coefficients c with sum(c_i * basis_rows[i]) == target, or None."""
    if not basis_rows:
        return [] if all(x == field.zero for x in target) else None
    ncols = len(basis_rows[0])
    # Transpose: unknowns are the combination coefficients.
    aug = [[row[c] for row in basis_rows] + [target[c]] for c in range(ncols)]
    reduced, pivots = rref(field, aug)
    k = len(basis_rows)
    if k in pivots:
        return None  # inconsistent
    sol = [field.zero] * k
    for r, pc in enumerate(pivots):
        sol[pc] = reduced[r][k]
    return sol


def matrix_rank_f2_bitmask(rows_bits) -> int:
    """Rank over F_2 of rows given as int bitmasks."""
    by_pivot = {}
    rk = 0
    for row in rows_bits:
        while row:
            low = row & -row
            other = by_pivot.get(low)
            if other is None:
                by_pivot[low] = row
                rk += 1
                break
            row ^= other
    return rk


def matrix_rank(field, rows) -> int:
    """Rank of a dense scalar matrix; F_2 rows get packed into bitmasks."""
    if not rows:
        return 0
    if getattr(field, "p", 0) == 2:
        packed = []
        for row in rows:
            bits = 0
            for j, x in enumerate(row):
                if x:
                    bits |= 1 << j
            packed.append(bits)
        return matrix_rank_f2_bitmask(packed)
    return rank(field, rows)
