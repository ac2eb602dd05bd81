"""Finitely presented groups and the constructions used to assemble them."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence

from . import syntax
from .words import MalformedWordError, Word, canonical_relator, commutator, cyclic_reduce

PRIME = "′"


class GeneratorSymbol(NamedTuple):
    name: str
    id: int


@dataclass(frozen=True)
class Presentation:
    """``< generators | relators >`` with relators stored cyclically reduced."""

    generators: tuple[str, ...]
    relators: tuple[Word, ...] = ()

    def __post_init__(self):
        gens = tuple(self.generators)
        if len(set(gens)) != len(gens):
            raise ValueError(f"duplicate generator names in {gens}")
        for name in gens:
            if not syntax.IDENT_RE.fullmatch(name):
                raise ValueError(f"invalid generator name {name!r}")
        rels = []
        for r in self.relators:
            if r.rank != len(gens):
                raise MalformedWordError(
                    f"relator over {r.rank} generators in a presentation on {len(gens)}"
                )
            rels.append(cyclic_reduce(r)[0])
        object.__setattr__(self, "generators", gens)
        object.__setattr__(self, "relators", tuple(rels))

    @classmethod
    def parse(cls, text: str) -> Presentation:
        return syntax.parse_presentation(text)

    @classmethod
    def free(cls, *names: str) -> Presentation:
        return cls(tuple(names), ())

    @property
    def rank(self) -> int:
        return len(self.generators)

    @property
    def symbols(self) -> tuple[GeneratorSymbol, ...]:
        return tuple(GeneratorSymbol(n, i) for i, n in enumerate(self.generators))

    def index(self, name: str) -> int:
        try:
            return self.generators.index(name)
        except ValueError:
            raise KeyError(f"no generator {name!r} in {self.generators}") from None

    def gen(self, name: str) -> Word:
        return Word.generator(self.index(name), self.rank)

    def word(self, text: str | Word) -> Word:
        """Parse ``text`` as a word over this presentation's generators."""
        if isinstance(text, Word):
            if text.rank != self.rank:
                raise MalformedWordError("word does not belong to this presentation")
            return text
        return syntax.parse_word(text, self.generators)

    def format_word(self, w: Word) -> str:
        return syntax.format_word(w, self.generators)

    def __str__(self) -> str:
        return syntax.format_presentation(self)

    def normalized(self) -> Presentation:
        """Canonical relator forms, trivial relators dropped, duplicates removed, sorted."""
        seen = set()
        for r in self.relators:
            canon = canonical_relator(r)[0]
            if canon.letters:
                seen.add(canon.letters)
        rels = sorted(seen, key=lambda ls: (len(ls), [(g, 0 if s > 0 else 1) for g, s in ls]))
        return Presentation(self.generators, tuple(Word(ls, self.rank) for ls in rels))

    def same_as(self, other: Presentation) -> bool:
        """Equal generator lists and equal relator sets after normalization."""
        return self.generators == other.generators and (
            self.normalized().relators == other.normalized().relators
        )

    def relabelled(self, names: Sequence[str]) -> Presentation:
        return Presentation(tuple(names), tuple(Word(r.letters, len(names)) for r in self.relators))


def fresh_name(name: str, taken: Iterable[str]) -> str:
    taken = set(taken)
    while name in taken:
        name += PRIME
    return name


def free_product(p: Presentation, q: Presentation) -> tuple[Presentation, dict[str, str]]:
    """Free product ``p * q``.

    Generators of ``q`` that collide with names already used get primes
    appended; the returned dict maps every ``q`` generator name to its name in
    the product.  ``q``'s generator ids are shifted by ``p.rank``.
    """
    names = list(p.generators)
    rename: dict[str, str] = {}
    for name in q.generators:
        new = fresh_name(name, names + list(q.generators[len(rename) + 1 :]))
        rename[name] = new
        names.append(new)
    rank = len(names)
    rels = [Word(r.letters, rank) for r in p.relators]
    rels += [shift_word(r, p.rank, rank) for r in q.relators]
    return Presentation(tuple(names), tuple(rels)), rename


def shift_word(w: Word, offset: int, rank: int) -> Word:
    return Word(tuple((g + offset, s) for g, s in w.letters), rank)


def embed_word(w: Word, rank: int) -> Word:
    """View ``w`` inside a presentation whose first generators are ``w``'s."""
    return Word(w.letters, rank)


def quotient_by_normal_closure(p: Presentation, extra: Iterable[Word | str]) -> Presentation:
    """Add ``extra`` words as relators; trivial and duplicate ones are skipped."""
    rels = list(p.relators)
    known = {canonical_relator(r)[0].letters for r in rels}
    for w in extra:
        w = p.word(w)
        canon = canonical_relator(w)[0]
        if not canon.letters or canon.letters in known:
            continue
        known.add(canon.letters)
        rels.append(w)
    return Presentation(p.generators, tuple(rels))


def direct_sum_with_Z(p: Presentation, name: str = "s") -> Presentation:
    """``p ⊕ Z``: a new generator commuting with every old one."""
    new = fresh_name(name, p.generators)
    rank = p.rank + 1
    s = Word.generator(p.rank, rank)
    rels = [embed_word(r, rank) for r in p.relators]
    rels += [commutator(s, Word.generator(g, rank)) for g in range(p.rank)]
    return Presentation(p.generators + (new,), tuple(rels))
