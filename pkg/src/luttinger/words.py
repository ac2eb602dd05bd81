"""Reduced words in a free group.

A letter is a pair ``(generator_id, sign)`` with ``sign`` in ``{+1, -1}``.
Words remember the rank of the ambient free group so that words built over
different generator sets cannot be mixed by accident.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

Letter = tuple[int, int]


class MalformedWordError(ValueError):
    """A letter references a generator outside the ambient free group."""


def _reduce(letters: Iterable[Letter]) -> tuple[Letter, ...]:
    out: list[Letter] = []
    for gen, sign in letters:
        if out and out[-1][0] == gen and out[-1][1] == -sign:
            out.pop()
        else:
            out.append((gen, sign))
    return tuple(out)


@dataclass(frozen=True)
class Word:
    letters: tuple[Letter, ...]
    rank: int

    def __post_init__(self):
        for gen, sign in self.letters:
            if not 0 <= gen < self.rank:
                raise MalformedWordError(f"generator id {gen} outside rank {self.rank}")
            if sign not in (1, -1):
                raise MalformedWordError(f"bad exponent sign {sign}")
        for (g, s), (h, t) in zip(self.letters, self.letters[1:]):
            if g == h and s == -t:
                raise MalformedWordError("word is not freely reduced")

    @classmethod
    def identity(cls, rank: int) -> Word:
        return cls((), rank)

    @classmethod
    def generator(cls, gen: int, rank: int, power: int = 1) -> Word:
        return cls(((gen, 1 if power > 0 else -1),) * abs(power), rank)

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def is_identity(self) -> bool:
        return not self.letters

    def _check(self, other: Word):
        if self.rank != other.rank:
            raise MalformedWordError(
                f"words over different generator sets (rank {self.rank} vs {other.rank})"
            )

    def __mul__(self, other: Word) -> Word:
        self._check(other)
        return Word(_reduce(self.letters + other.letters), self.rank)

    def inverse(self) -> Word:
        return Word(tuple((g, -s) for g, s in reversed(self.letters)), self.rank)

    __invert__ = inverse

    def __pow__(self, n: int) -> Word:
        base = self if n >= 0 else self.inverse()
        return Word(_reduce(base.letters * abs(n)), self.rank)

    def generators_used(self) -> set[int]:
        return {g for g, _ in self.letters}

    def exponent_sums(self) -> list[int]:
        sums = [0] * self.rank
        for g, s in self.letters:
            sums[g] += s
        return sums

    def substitute(self, images: Sequence[Word] | Mapping[int, Word], rank: int) -> Word:
        """Apply the homomorphism sending generator ``i`` to ``images[i]``.

        With a mapping, generators missing from it are sent to themselves
        (which then must fit inside ``rank``).
        """
        out: list[Letter] = []
        for g, s in self.letters:
            if isinstance(images, Mapping) and g not in images:
                piece: tuple[Letter, ...] = ((g, 1),)
            else:
                img = images[g]
                if img.rank != rank:
                    raise MalformedWordError("image word has the wrong rank")
                piece = img.letters
            if s < 0:
                piece = tuple((h, -t) for h, t in reversed(piece))
            out.extend(piece)
        return free_reduce(out, rank)

    def relabel(self, mapping: Mapping[int, int] | Sequence[int], rank: int) -> Word:
        """Rename generator ids (an injective relabelling; no cancellation)."""
        return Word(tuple((mapping[g], s) for g, s in self.letters), rank)


def free_reduce(letters: Iterable[Letter], rank: int) -> Word:
    """Return the freely reduced word spelled by ``letters``."""
    letters = [(int(g), int(s)) for g, s in letters]
    for g, s in letters:
        if not 0 <= g < rank:
            raise MalformedWordError(f"unknown generator id {g} (rank {rank})")
        if s not in (1, -1):
            raise MalformedWordError(f"bad exponent sign {s}")
    return Word(_reduce(letters), rank)


def commutator(u: Word, v: Word) -> Word:
    """``[u, v] = u v u^-1 v^-1``."""
    u._check(v)
    return u * v * u.inverse() * v.inverse()


def cyclic_reduce(w: Word) -> tuple[Word, Word]:
    """Split ``w = c r c^-1`` with ``r`` cyclically reduced; returns ``(r, c)``."""
    letters = w.letters
    i, j = 0, len(letters) - 1
    while i < j and letters[i][0] == letters[j][0] and letters[i][1] == -letters[j][1]:
        i += 1
        j -= 1
    return Word(letters[i : j + 1], w.rank), Word(letters[:i], w.rank)


def _letter_key(letter: Letter) -> tuple[int, int]:
    return (letter[0], 0 if letter[1] > 0 else 1)


def canonical_relator(w: Word) -> tuple[Word, Word, int]:
    """Canonical cyclic form of a relator.

    Returns ``(canon, conj, exp)`` such that ``w`` is freely equal to
    ``conj * canon**exp * conj**-1``.  ``canon`` is the lexicographically least
    rotation among the rotations of the cyclic reduction of ``w`` and of its
    inverse.
    """
    r, conj = cyclic_reduce(w)
    n = len(r)
    if n == 0:
        return r, Word.identity(w.rank), 1
    best_key = None
    best = None
    for exp, base in ((1, r), (-1, r.inverse())):
        letters = base.letters
        for i in range(n):
            rot = letters[i:] + letters[:i]
            key = [_letter_key(a) for a in rot]
            if best_key is None or key < best_key:
                best_key = key
                best = (rot, exp, i)
    rot, exp, i = best
    base = r if exp == 1 else r.inverse()
    # base = p canon p^-1 and r = base**exp
    p = Word(base.letters[:i], w.rank)
    return Word(rot, w.rank), conj * p, exp
