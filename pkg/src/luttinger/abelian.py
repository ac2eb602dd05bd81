"""Integer matrices, Smith normal form and abelianization."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Sequence

from .presentation import Presentation


@dataclass(frozen=True)
class IntMatrix:
    rows: int
    cols: int
    entries: tuple[int, ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ValueError("negative dimension")
        if len(self.entries) != self.rows * self.cols:
            raise ValueError(
                f"{len(self.entries)} entries for a {self.rows}x{self.cols} matrix"
            )

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> IntMatrix:
        rows = [list(map(int, r)) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        if any(len(r) != cols for r in rows):
            raise ValueError("ragged rows")
        return cls(len(rows), cols, tuple(x for r in rows for x in r))

    @classmethod
    def identity(cls, n: int) -> IntMatrix:
        return cls.from_rows([[int(i == j) for j in range(n)] for i in range(n)], n)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> IntMatrix:
        return cls(rows, cols, (0,) * (rows * cols))

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i * self.cols + j]

    def to_rows(self) -> list[list[int]]:
        return [list(self.entries[i * self.cols : (i + 1) * self.cols]) for i in range(self.rows)]

    def __matmul__(self, other: IntMatrix) -> IntMatrix:
        if self.cols != other.rows:
            raise ValueError("dimension mismatch")
        a, b = self.to_rows(), other.to_rows()
        out = [
            [sum(a[i][k] * b[k][j] for k in range(self.cols)) for j in range(other.cols)]
            for i in range(self.rows)
        ]
        return IntMatrix.from_rows(out, other.cols)

    def diagonal(self) -> list[int]:
        return [self[i, i] for i in range(min(self.rows, self.cols))]

    def is_diagonal(self) -> bool:
        return all(self[i, j] == 0 for i in range(self.rows) for j in range(self.cols) if i != j)

    def determinant(self) -> int:
        """Exact determinant by fraction-free (Bareiss) elimination."""
        if self.rows != self.cols:
            raise ValueError("determinant of a non-square matrix")
        n = self.rows
        m = self.to_rows()
        sign, prev = 1, 1
        for k in range(n - 1):
            if m[k][k] == 0:
                for i in range(k + 1, n):
                    if m[i][k] != 0:
                        m[k], m[i] = m[i], m[k]
                        sign = -sign
                        break
                else:
                    return 0
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            prev = m[k][k]
        return sign * m[n - 1][n - 1] if n else 1


def smith_normal_form(m: IntMatrix) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Return ``(D, U, V)`` with ``U @ m @ V == D`` in Smith normal form.

    ``U`` and ``V`` are unimodular; the diagonal of ``D`` is non-negative and
    each entry divides the next.  Pivots are chosen by smallest magnitude.
    """
    r, c = m.rows, m.cols
    a = m.to_rows()
    u = IntMatrix.identity(r).to_rows()
    v = IntMatrix.identity(c).to_rows()

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, k):  # row_dst += k * row_src
        a[dst] = [x + k * y for x, y in zip(a[dst], a[src])]
        u[dst] = [x + k * y for x, y in zip(u[dst], u[src])]

    def add_col(dst, src, k):  # col_dst += k * col_src
        for row in a:
            row[dst] += k * row[src]
        for row in v:
            row[dst] += k * row[src]

    for t in range(min(r, c)):
        while True:
            nonzero = [(abs(a[i][j]), i, j) for i in range(t, r) for j in range(t, c) if a[i][j]]
            if not nonzero:
                break
            _, pi, pj = min(nonzero)
            swap_rows(t, pi)
            swap_cols(t, pj)
            p = a[t][t]
            done = True
            for i in range(t + 1, r):
                if a[i][t]:
                    add_row(i, t, -(a[i][t] // p))
                    done = done and a[i][t] == 0
            for j in range(t + 1, c):
                if a[t][j]:
                    add_col(j, t, -(a[t][j] // p))
                    done = done and a[t][j] == 0
            if not done:
                continue
            # pivot must divide the rest of the block
            bad = next(
                ((i, j) for i in range(t + 1, r) for j in range(t + 1, c) if a[i][j] % p),
                None,
            )
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
    return IntMatrix.from_rows(a, c), IntMatrix.from_rows(u, r), IntMatrix.from_rows(v, c)


@dataclass(frozen=True)
class AbelianInvariants:
    """``Z^free_rank ⊕ Z/d1 ⊕ ... ⊕ Z/dk`` with ``d1 | d2 | ...`` and every ``di >= 2``."""

    free_rank: int
    torsion: tuple[int, ...] = field(default=())

    def __post_init__(self):
        tor = tuple(int(d) for d in self.torsion)
        if self.free_rank < 0:
            raise ValueError("negative free rank")
        if any(d < 2 for d in tor):
            raise ValueError(f"torsion factors must be >= 2: {tor}")
        if any(b % a for a, b in zip(tor, tor[1:])):
            raise ValueError(f"torsion factors do not form a divisibility chain: {tor}")
        object.__setattr__(self, "torsion", tor)

    @classmethod
    def from_orders(cls, orders: Sequence[int]) -> AbelianInvariants:
        """Invariants of a direct sum of cyclic groups ``Z/n`` (``n == 0`` means ``Z``)."""
        if not orders:
            return cls(0)
        d, _, _ = smith_normal_form(_diag(orders))
        return _from_diagonal(d.diagonal(), len(orders))

    @classmethod
    def parse(cls, text: str) -> AbelianInvariants:
        """Parse ``Z^2``, ``Z/6``, ``Z ⊕ Z/2 ⊕ Z/4`` (``+`` also accepted) or ``0``."""
        text = text.strip()
        if text in ("0", "1", "Z^0"):
            return cls(0)
        orders = []
        for part in re.split(r"\s*(?:⊕|\+)\s*", text):
            m = re.fullmatch(r"Z(?:\^(\d+)|/(\d+))?", part)
            if not m:
                raise ValueError(f"cannot parse abelian group {text!r}")
            if m.group(1) is not None:
                orders += [0] * int(m.group(1))
            elif m.group(2) is not None:
                orders.append(int(m.group(2)))
            else:
                orders.append(0)
        return cls.from_orders(orders)

    def __str__(self) -> str:
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        parts += [f"Z/{d}" for d in self.torsion]
        return " ⊕ ".join(parts) if parts else "0"

    def to_json(self) -> dict:
        return {"free_rank": self.free_rank, "torsion": list(self.torsion)}

    @classmethod
    def from_json(cls, data: dict) -> AbelianInvariants:
        return cls(data["free_rank"], tuple(data["torsion"]))

    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion


def _diag(orders: Sequence[int]) -> IntMatrix:
    n = len(orders)
    return IntMatrix.from_rows([[orders[i] if i == j else 0 for j in range(n)] for i in range(n)], n)


def _from_diagonal(diag: Sequence[int], ngens: int) -> AbelianInvariants:
    rank = sum(1 for d in diag if d != 0)
    return AbelianInvariants(ngens - rank, tuple(d for d in diag if d > 1))


def relation_matrix(p: Presentation) -> IntMatrix:
    """Exponent sums: one row per relator, one column per generator."""
    return IntMatrix.from_rows([r.exponent_sums() for r in p.relators], p.rank)


def abelianization(p: Presentation) -> AbelianInvariants:
    d, _, _ = smith_normal_form(relation_matrix(p))
    return _from_diagonal(d.diagonal(), p.rank)
