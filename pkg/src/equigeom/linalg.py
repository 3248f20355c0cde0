"""Incremental row echelon forms over a field, with sparse rows.

Rows are dicts ``column -> raw value`` with no zero entries.  Each stored row
is normalised so that its pivot (smallest column) is 1.  A row can carry a
*tag*: a second sparse vector transformed alongside it, used to recover the
linear combination that produced a reduction.
"""

from __future__ import annotations

from .exactfield import FieldDescriptor


def _axpy(F: FieldDescriptor, target: dict, scale, source: dict) -> None:
    """target -= scale * source, in place."""
    zero = F.zero
    for col, v in source.items():
        new = F.sub(target.get(col, zero), F.mul(scale, v))
        if new == zero:
            target.pop(col, None)
        else:
            target[col] = new


class RowSpace:
    def __init__(self, field: FieldDescriptor):
        self.field = field
        self.rows: dict[int, tuple[dict, dict | None]] = {}

    def __len__(self) -> int:
        return len(self.rows)

    def reduce(self, row: dict, tag: dict | None = None):
        """Reduce ``row`` against the stored rows; returns (residue, tag)."""
        F = self.field
        row = dict(row)
        tag = dict(tag) if tag is not None else None
        # stored rows are fully reduced, so eliminating one never reintroduces another pivot
        for col in [c for c in row if c in self.rows]:
            if col not in row:
                continue
            srow, stag = self.rows[col]
            scale = row[col]
            _axpy(F, row, scale, srow)
            if tag is not None and stag is not None:
                _axpy(F, tag, scale, stag)
        return row, tag

    def add(self, row: dict, tag: dict | None = None):
        """Insert a row; returns (residue, tag) after reduction (empty residue: dependent)."""
        F = self.field
        residue, tag = self.reduce(row, tag)
        if residue:
            # residue has no stored pivot columns; make its minimum column the pivot
            col = min(residue)
            inv = F.inv(residue[col])
            residue = {c: F.mul(inv, v) for c, v in residue.items()}
            if tag is not None:
                tag = {c: F.mul(inv, v) for c, v in tag.items()}
            # keep stored rows free of the new pivot column
            for pcol, (srow, stag) in list(self.rows.items()):
                if col in srow:
                    scale = srow[col]
                    srow = dict(srow)
                    _axpy(F, srow, scale, residue)
                    if stag is not None and tag is not None:
                        stag = dict(stag)
                        _axpy(F, stag, scale, tag)
                    self.rows[pcol] = (srow, stag)
            self.rows[col] = (residue, tag)
        return residue, tag

    def contains(self, row: dict) -> bool:
        residue, _ = self.reduce(row)
        return not residue


def solve(field: FieldDescriptor, matrix: list[list], rhs: list):
    """Solve a square nonsingular system exactly (Gauss-Jordan); returns the raw solution."""
    F = field
    n = len(matrix)
    A = [list(row) + [b] for row, b in zip(matrix, rhs)]
    for col in range(n):
        piv = next((r for r in range(col, n) if not F.is_zero(A[r][col])), None)
        if piv is None:
            raise ArithmeticError("singular system")
        A[col], A[piv] = A[piv], A[col]
        inv = F.inv(A[col][col])
        A[col] = [F.mul(inv, v) for v in A[col]]
        for r in range(n):
            if r != col and not F.is_zero(A[r][col]):
                s = A[r][col]
                A[r] = [F.sub(v, F.mul(s, w)) for v, w in zip(A[r], A[col])]
    return [A[r][n] for r in range(n)]
