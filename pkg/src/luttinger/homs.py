"""Counting homomorphisms into small finite groups.

The number of homomorphisms ``G -> S3`` or ``G -> S4`` is an isomorphism
invariant of ``G`` that is cheap to compute for the presentations in this
package, so it is used to sanity-check simplifications.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from functools import lru_cache

from .presentation import Presentation


@dataclass(frozen=True)
class FiniteGroup:
    name: str
    elements: tuple
    mul: tuple[tuple[int, ...], ...]
    inv: tuple[int, ...]
    identity: int

    @property
    def order(self) -> int:
        return len(self.elements)

    def evaluate(self, letters, assignment) -> int:
        x = self.identity
        for g, s in letters:
            a = assignment[g]
            x = self.mul[x][a if s > 0 else self.inv[a]]
        return x


def _compose(p, q):
    # (p * q)(i) = p(q(i)); permutations act on the left
    return tuple(p[i] for i in q)


@lru_cache(maxsize=None)
def symmetric_group(n: int) -> FiniteGroup:
    if not 1 <= n <= 5:
        raise ValueError("symmetric targets are limited to S1..S5")
    elems = tuple(itertools.permutations(range(n)))
    index = {p: i for i, p in enumerate(elems)}
    mul = tuple(tuple(index[_compose(p, q)] for q in elems) for p in elems)
    inv = tuple(index[tuple(sorted(range(n), key=p.__getitem__))] for p in elems)
    return FiniteGroup(f"S{n}", elems, mul, inv, index[tuple(range(n))])


@lru_cache(maxsize=None)
def cyclic_group(m: int) -> FiniteGroup:
    if not 1 <= m <= 12:
        raise ValueError("cyclic targets are limited to Z/1..Z/12")
    mul = tuple(tuple((a + b) % m for b in range(m)) for a in range(m))
    return FiniteGroup(f"Z/{m}", tuple(range(m)), mul, tuple((-a) % m for a in range(m)), 0)


def target_group(spec: str | FiniteGroup) -> FiniteGroup:
    """``"S3"``, ``"S4"``, ``"Z/6"``, ... -> the corresponding group."""
    if isinstance(spec, FiniteGroup):
        return spec
    m = re.fullmatch(r"\s*(?:S(\d+)|Z/(\d+))\s*", spec)
    if not m:
        raise ValueError(f"unknown target group {spec!r} (use Sn or Z/m)")
    if m.group(1):
        return symmetric_group(int(m.group(1)))
    return cyclic_group(int(m.group(2)))


class SearchTooLarge:
    """Returned instead of a count when the search budget is exceeded."""

    def __repr__(self) -> str:
        return "too large"

    __str__ = __repr__


TOO_LARGE = SearchTooLarge()


class _Budget(Exception):
    pass


def count_homomorphisms(
    p: Presentation, target: str | FiniteGroup, max_nodes: int = 2_000_000
) -> int | SearchTooLarge:
    """Exact number of homomorphisms ``p -> target`` by exhaustive search.

    Generators are assigned in id order; whenever a relator has a single
    unassigned generator occurring once, its value is forced.  Generators
    that occur in no relator contribute a factor ``|target|`` each.
    """
    group = target_group(target)
    mul, inv, e = group.mul, group.inv, group.identity
    rels = [r.letters for r in p.relators if r.letters]
    occurrences: list[list[tuple[int, int]]] = [[] for _ in range(p.rank)]
    for ri, r in enumerate(rels):
        for g in {g for g, _ in r}:
            occurrences[g].append((ri, sum(1 for h, _ in r if h == g)))
    used = [g for g in range(p.rank) if occurrences[g]]
    free_factor = group.order ** (p.rank - len(used))
    # branch first on generators that occur in many relators
    order = sorted(used, key=lambda g: (-len(occurrences[g]), g))
    assign: list[int | None] = [None] * p.rank
    missing = [len(r) for r in rels]
    nodes = 0

    def evaluate(letters) -> int:
        x = e
        for g, s in letters:
            a = assign[g]
            x = mul[x][a if s > 0 else inv[a]]
        return x

    def put(g: int, x: int, trail: list[int]) -> bool:
        """Assign and propagate forced values; False on a violated relator."""
        queue = [(g, x)]
        while queue:
            g, x = queue.pop()
            if assign[g] is not None:
                if assign[g] != x:
                    return False
                continue
            assign[g] = x
            trail.append(g)
            for ri, c in occurrences[g]:
                missing[ri] -= c
            for ri, _ in occurrences[g]:
                r = rels[ri]
                if missing[ri] == 0:
                    if evaluate(r) != e:
                        return False
                elif missing[ri] == 1:
                    k = next(k for k, (h, _) in enumerate(r) if assign[h] is None)
                    h, s = r[k]
                    # a * h^s * b = 1  =>  h^s = a^-1 b^-1
                    y = mul[inv[evaluate(r[:k])]][inv[evaluate(r[k + 1 :])]]
                    queue.append((h, y if s > 0 else inv[y]))
        return True

    def undo(trail: list[int]):
        for g in reversed(trail):
            for ri, c in occurrences[g]:
                missing[ri] += c
            assign[g] = None

    def search(depth: int) -> int:
        nonlocal nodes
        while depth < len(order) and assign[order[depth]] is not None:
            depth += 1
        if depth == len(order):
            return 1
        g = order[depth]
        total = 0
        for x in range(group.order):
            nodes += 1
            if nodes > max_nodes:
                raise _Budget
            trail: list[int] = []
            if put(g, x, trail):
                total += search(depth + 1)
            undo(trail)
        return total

    try:
        return search(0) * free_factor
    except _Budget:
        return TOO_LARGE
