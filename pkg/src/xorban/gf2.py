"""GF(2) linear algebra on int bitsets.

Vectors are Python ints; bit ``c`` is column ``c``. Matrices are lists of row
bitsets. Everything here is exact and small (n <= a few dozen), so plain
Gaussian elimination is enough.
"""

from __future__ import annotations

from typing import List, Optional, Sequence, Tuple


def rank(rows: Sequence[int]) -> int:
    return len(echelon(rows))


def echelon(vectors: Sequence[int]) -> List[Tuple[int, int]]:
    """Reduced basis of span(vectors) as ``(pivot_bit, vector)`` pairs.

    Pivots are taken at the highest set bit, and every pivot bit is cleared
    from all other basis vectors, so reducing against the basis yields the
    minimum element of a coset.
    """
    basis: List[Tuple[int, int]] = []
    for v in vectors:
        for p, b in basis:
            if (v >> p) & 1:
                v ^= b
        if not v:
            continue
        p = v.bit_length() - 1
        basis = [(q, b ^ v) if (b >> p) & 1 else (q, b) for q, b in basis]
        basis.append((p, v))
    basis.sort(reverse=True)
    return basis


def coset_min(v: int, basis: Sequence[Tuple[int, int]]) -> int:
    """Smallest integer in ``v + span(basis)`` for a basis from :func:`echelon`."""
    for p, b in basis:
        if (v >> p) & 1:
            v ^= b
    return v


def solve(rows: Sequence[int], rhs: int, n_cols: int) -> Optional[int]:
    """One solution ``s`` of ``rows * s = rhs`` (bit r of rhs is row r), or None.

    Free variables are set to zero, so the returned solution is deterministic.
    """
    m = len(rows)
    # augmented rows: column n_cols holds the right-hand side
    aug = [rows[r] | (((rhs >> r) & 1) << n_cols) for r in range(m)]
    pivots: List[Tuple[int, int]] = []
    row = 0
    for col in range(n_cols):
        piv = next((r for r in range(row, m) if (aug[r] >> col) & 1), None)
        if piv is None:
            continue
        aug[row], aug[piv] = aug[piv], aug[row]
        for r in range(m):
            if r != row and (aug[r] >> col) & 1:
                aug[r] ^= aug[row]
        pivots.append((row, col))
        row += 1
        if row == m:
            break
    lhs_mask = (1 << n_cols) - 1
    for r in range(row, m):
        if not aug[r] & lhs_mask and (aug[r] >> n_cols) & 1:
            return None
    s = 0
    for r, col in pivots:
        if (aug[r] >> n_cols) & 1:
            s |= 1 << col
    return s


def matvec(rows: Sequence[int], v: int) -> int:
    out = 0
    for r, row in enumerate(rows):
        if (row & v).bit_count() & 1:
            out |= 1 << r
    return out


def transpose(rows: Sequence[int], n_cols: int) -> List[int]:
    cols = [0] * n_cols
    for r, row in enumerate(rows):
        for c in range(n_cols):
            if (row >> c) & 1:
                cols[c] |= 1 << r
    return cols


__all__ = ["rank", "echelon", "coset_min", "solve", "matvec", "transpose"]
