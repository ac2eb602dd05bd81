"""HLT-style Todd-Coxeter enumeration of the cosets of the trivial subgroup."""

from __future__ import annotations

import os
from dataclasses import dataclass

from .presentation import Presentation

DEFAULT_MAX_COSETS = 50_000


def default_max_cosets() -> int:
    return int(os.environ.get("LUTTINGER_MAX_COSETS", DEFAULT_MAX_COSETS))


@dataclass(frozen=True)
class EnumerationResult:
    outcome: str  # "finite" or "exceeded"
    order: int | None
    cap: int
    live_cosets_at_end: int
    work: int
    table: tuple[tuple[int, ...], ...] | None = None

    @property
    def finite(self) -> bool:
        return self.outcome == "finite"

    def to_json(self) -> dict:
        if self.finite:
            return {"outcome": "finite", "order": self.order, "work": self.work}
        return {"outcome": "exceeded", "cap": self.cap}

    def __str__(self) -> str:
        return f"Finite({self.order})" if self.finite else f"Exceeded({self.cap})"


class _CapExceeded(Exception):
    pass


class CosetTable:
    """Coset table with one column per generator and per inverse.

    Column ``2*g`` is generator ``g``, column ``2*g + 1`` its inverse.
    Merged cosets are tracked with a union-find forest (``parent``).
    """

    def __init__(self, ngens: int, cap: int, check: bool = False):
        self.ncols = 2 * ngens
        self.cap = cap
        self.check = check
        self.rows: list[list[int | None]] = [[None] * self.ncols]
        self.parent = [0]
        self.defined = 1

    @staticmethod
    def inv(col: int) -> int:
        return col ^ 1

    def live(self, c: int) -> bool:
        return self.parent[c] == c

    def rep(self, c: int) -> int:
        root = c
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[c] != root:
            self.parent[c], c = root, self.parent[c]
        return root

    def define(self, c: int, col: int) -> int:
        if self.defined >= self.cap:
            raise _CapExceeded
        d = len(self.rows)
        self.rows.append([None] * self.ncols)
        self.parent.append(d)
        self.defined += 1
        self.rows[c][col] = d
        self.rows[d][self.inv(col)] = c
        return d

    def scan_and_fill(self, c: int, word: list[int]) -> None:
        rows = self.rows
        f, b = c, c
        i, j = 0, len(word) - 1
        while True:
            while i <= j and rows[f][word[i]] is not None:
                f = rows[f][word[i]]
                i += 1
            if i > j:
                if f != b:
                    self.coincidence(f, b)
                return
            while j >= i and rows[b][self.inv(word[j])] is not None:
                b = rows[b][self.inv(word[j])]
                j -= 1
            if j < i:
                self.coincidence(f, b)
                return
            if i == j:
                rows[f][word[i]] = b
                rows[b][self.inv(word[i])] = f
                return
            self.define(f, word[i])

    def _merge(self, k: int, l: int, queue: list[int]) -> None:
        k, l = self.rep(k), self.rep(l)
        if k == l:
            return
        lo, hi = min(k, l), max(k, l)
        self.parent[hi] = lo
        queue.append(hi)

    def coincidence(self, a: int, b: int) -> None:
        rows = self.rows
        queue: list[int] = []
        self._merge(a, b, queue)
        i = 0
        while i < len(queue):
            e = queue[i]
            i += 1
            for col in range(self.ncols):
                f = rows[e][col]
                if f is None:
                    continue
                rows[f][self.inv(col)] = None
                e1, f1 = self.rep(e), self.rep(f)
                if rows[e1][col] is not None:
                    self._merge(f1, rows[e1][col], queue)
                elif rows[f1][self.inv(col)] is not None:
                    self._merge(e1, rows[f1][self.inv(col)], queue)
                else:
                    rows[e1][col] = f1
                    rows[f1][self.inv(col)] = e1
        if self.check:
            self.assert_consistent()

    def assert_consistent(self) -> None:
        for c, row in enumerate(self.rows):
            if not self.live(c):
                continue
            for col, d in enumerate(row):
                if d is None or not self.live(self.rep(d)):
                    continue
                d = self.rep(d)
                back = self.rows[d][self.inv(col)]
                assert back is not None and self.rep(back) == c, (c, col, d, back)

    def live_rows(self) -> list[int]:
        return [c for c in range(len(self.rows)) if self.live(c)]

    def compact(self) -> tuple[tuple[int, ...], ...]:
        """Renumber live cosets 0..n-1 (coset 0 stays first)."""
        live = self.live_rows()
        index = {c: k for k, c in enumerate(live)}
        return tuple(tuple(index[self.rep(d)] for d in self.rows[c]) for c in live)


def _encode(p: Presentation) -> list[list[int]]:
    return [[2 * g + (0 if s > 0 else 1) for g, s in r.letters] for r in p.relators if r.letters]


def todd_coxeter(
    p: Presentation, cap: int | None = None, check: bool = False
) -> EnumerationResult:
    """Enumerate cosets of the trivial subgroup, i.e. the elements of ``p``.

    Returns ``Finite(order)`` when the table closes with at most ``cap``
    cosets ever defined, else ``Exceeded(cap)``.  ``check`` asserts table
    consistency after every coincidence.
    """
    cap = default_max_cosets() if cap is None else cap
    if cap < 1:
        raise ValueError("cap must be >= 1")
    table = CosetTable(p.rank, cap, check)
    rels = _encode(p)
    try:
        c = 0
        while c < len(table.rows):
            if table.live(c):
                for r in rels:
                    table.scan_and_fill(c, r)
                    if not table.live(c):
                        break
                if table.live(c):
                    for col in range(table.ncols):
                        if table.rows[c][col] is None:
                            table.define(c, col)
            c += 1
    except _CapExceeded:
        return EnumerationResult(
            "exceeded", None, cap, len(table.live_rows()), table.defined
        )
    compact = table.compact()
    return EnumerationResult("finite", len(compact), cap, len(compact), table.defined, compact)
