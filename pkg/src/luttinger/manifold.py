"""4-manifold building blocks and the operations that combine them.

A block records the Euler characteristic and signature of a closed
4-manifold together with a presentation of the fundamental group of the
complement of its marked surfaces.  Each marked surface carries its meridian
and the push-offs of a standard basis of its fundamental group, as words in
that complement group.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field, replace
from functools import lru_cache
from math import gcd
from typing import Sequence

from .presentation import (
    Presentation,
    embed_word,
    fresh_name,
    free_product,
    quotient_by_normal_closure,
    shift_word,
)
from .tietze import tietze_simplify, word_trivial_under
from .words import Word, commutator

log = logging.getLogger(__name__)


class BlockError(ValueError):
    pass


def standard_basis_names(genus: int) -> tuple[str, ...]:
    return tuple(f"{c}{i}" for i in range(1, genus + 1) for c in "ab")


@dataclass(frozen=True)
class MarkedSubmanifold:
    label: str
    genus: int
    meridian: Word
    pushoffs: tuple[Word, ...]
    basis_names: tuple[str, ...] = ()
    framing_note: str = ""

    def __post_init__(self):
        if self.genus < 0:
            raise BlockError(f"{self.label}: negative genus")
        object.__setattr__(self, "pushoffs", tuple(self.pushoffs))
        if len(self.pushoffs) != 2 * self.genus:
            raise BlockError(
                f"{self.label}: {len(self.pushoffs)} push-offs for genus {self.genus}"
            )
        names = tuple(self.basis_names) or standard_basis_names(self.genus)
        if len(names) != 2 * self.genus or len(set(names)) != len(names):
            raise BlockError(f"{self.label}: bad basis names {names}")
        object.__setattr__(self, "basis_names", names)

    def basis_index(self, name: str) -> int:
        try:
            return self.basis_names.index(name)
        except ValueError:
            raise BlockError(f"{self.label} has no basis curve {name!r}") from None

    def moved(self, fn) -> MarkedSubmanifold:
        return replace(self, meridian=fn(self.meridian), pushoffs=tuple(map(fn, self.pushoffs)))


@dataclass(frozen=True)
class ManifoldBlock:
    name: str
    euler: int
    signature: int
    complement: Presentation
    marked: tuple[MarkedSubmanifold, ...] = ()
    flags: frozenset[str] = field(default_factory=frozenset)
    notes: tuple[str, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "marked", tuple(self.marked))
        object.__setattr__(self, "flags", frozenset(self.flags))
        labels = [m.label for m in self.marked]
        if len(set(labels)) != len(labels):
            raise BlockError(f"{self.name}: duplicate marked labels {labels}")
        rank = self.complement.rank
        for m in self.marked:
            for w in (m.meridian, *m.pushoffs):
                if w.rank != rank:
                    raise BlockError(f"{self.name}.{m.label}: word not over the complement")

    def surface(self, label: str) -> MarkedSubmanifold:
        for m in self.marked:
            if m.label == label:
                return m
        raise BlockError(
            f"{self.name} has no marked surface {label!r} (has {[m.label for m in self.marked]})"
        )

    def word(self, text: str | Word) -> Word:
        return self.complement.word(text)


@dataclass(frozen=True)
class GluingMatch:
    """Pairs ``(i, j, sign)``: basis curve ``i`` of the first surface is glued
    to basis curve ``j`` of the second, raised to ``sign``."""

    pairs: tuple[tuple[int, int, int], ...]

    def __post_init__(self):
        object.__setattr__(self, "pairs", tuple(tuple(p) for p in self.pairs))
        for _, _, s in self.pairs:
            if s not in (1, -1):
                raise BlockError(f"gluing sign must be ±1, got {s}")

    @classmethod
    def identity(cls, n: int) -> GluingMatch:
        return cls(tuple((i, i, 1) for i in range(n)))

    @classmethod
    def from_names(
        cls, x: MarkedSubmanifold, y: MarkedSubmanifold, pairs: Sequence[tuple[str, str, int]]
    ) -> GluingMatch:
        return cls(tuple((x.basis_index(a), y.basis_index(b), s) for a, b, s in pairs))

    def validate(self, genus: int):
        n = 2 * genus
        if len(self.pairs) != n:
            raise BlockError(f"gluing needs {n} pairs, got {len(self.pairs)}")
        for axis in (0, 1):
            if sorted(p[axis] for p in self.pairs) != list(range(n)):
                raise BlockError("gluing match is not a bijection on basis positions")


@lru_cache(maxsize=256)
def _simplified(p: Presentation):
    return tietze_simplify(p)[1]


def certified_trivial(p: Presentation, w: Word) -> bool:
    """``w`` is the empty word or is killed by the simplification of ``p``."""
    return w.is_identity() or word_trivial_under(_simplified(p), w)


def closed_pi1(b: ManifoldBlock) -> Presentation:
    """Fill every marked surface back in: kill all meridians."""
    return quotient_by_normal_closure(b.complement, [m.meridian for m in b.marked])


def fiber_sum(
    x: ManifoldBlock, sx: str, y: ManifoldBlock, sy: str, match: GluingMatch, name: str | None = None
) -> ManifoldBlock:
    """Symplectic sum of ``x`` and ``y`` along the marked surfaces ``sx``, ``sy``."""
    fx, fy = x.surface(sx), y.surface(sy)
    if fx.genus != fy.genus:
        raise BlockError(f"genus mismatch: {x.name}.{sx} has {fx.genus}, {y.name}.{sy} has {fy.genus}")
    g = fx.genus
    match.validate(g)
    prod, _ = free_product(x.complement, y.complement)
    rank = prod.rank

    def from_x(w: Word) -> Word:
        return embed_word(w, rank)

    def from_y(w: Word) -> Word:
        return shift_word(w, x.complement.rank, rank)

    glue = [from_x(fx.pushoffs[i]) * (from_y(fy.pushoffs[j]) ** s).inverse() for i, j, s in match.pairs]
    glue.append(from_x(fx.meridian) * from_y(fy.meridian).inverse())
    complement = quotient_by_normal_closure(prod, glue)

    notes = list(x.notes) + list(y.notes)
    if not certified_trivial(x.complement, fx.meridian) and not certified_trivial(
        y.complement, fy.meridian
    ):
        msg = (
            f"fiber sum {x.name}.{sx} + {y.name}.{sy}: neither meridian is shown trivial; "
            "the twist of the gluing is not modelled"
        )
        log.warning(msg)
        notes.append("warning: " + msg)

    labels = [m.label for m in x.marked if m.label != sx]
    marked = [m.moved(from_x) for m in x.marked if m.label != sx]
    for m in y.marked:
        if m.label == sy:
            continue
        new_label = fresh_name(m.label, labels)
        labels.append(new_label)
        marked.append(replace(m.moved(from_y), label=new_label))

    return ManifoldBlock(
        name=name or f"{x.name}#{y.name}",
        euler=x.euler + y.euler - 2 * (2 - 2 * g),
        signature=x.signature + y.signature,
        complement=complement,
        marked=tuple(marked),
        flags=x.flags & y.flags,
        notes=tuple(notes),
    )


def luttinger(
    b: ManifoldBlock, torus: str, gamma: tuple[int, int], k: int, name: str | None = None
) -> ManifoldBlock:
    """``1/k`` Luttinger surgery on a marked torus along ``gamma = (p, q)``.

    The complement is untouched; the torus' meridian becomes
    ``gamma**k * meridian`` with ``gamma = pushoff1**p * pushoff2**q``.
    """
    t = b.surface(torus)
    if t.genus != 1:
        raise BlockError(f"{b.name}.{torus} has genus {t.genus}; Luttinger surgery needs a torus")
    p, q = gamma
    if (p, q) == (0, 0):
        raise BlockError("surgery direction (0, 0) is not a curve")
    if gcd(p, q) != 1:
        raise BlockError(f"surgery direction {gamma} is not primitive")
    u, v = t.pushoffs
    gamma_word = u**p * v**q
    notes = list(b.notes)
    fmt = b.complement.format_word
    if p and q and not certified_trivial(b.complement, commutator(u, v)):
        notes.append(
            f"warning: {torus}: push-offs {fmt(u)}, {fmt(v)} not shown to commute; "
            f"gamma taken as the word {fmt(gamma_word)}"
        )
    if not certified_trivial(b.complement, t.meridian):
        msg = f"{torus}: meridian {fmt(t.meridian)} not shown trivial; framing ambiguity not resolved"
        log.warning(msg)
        notes.append("warning: " + msg)
    new_meridian = gamma_word**k * t.meridian
    notes.append(f"luttinger {torus}: gamma = {fmt(gamma_word)}, k = {k}")
    marked = tuple(replace(m, meridian=new_meridian) if m.label == torus else m for m in b.marked)
    return replace(b, name=name or f"{b.name}({torus};{p},{q};{k})", marked=marked, notes=tuple(notes))


def hnn_mapping_torus(
    x: Presentation, pairs: Sequence[tuple[Word | str, Word | str]], t_name: str = "t"
) -> Presentation:
    """Fundamental group of a generalized mapping torus.

    ``pairs`` lists, for each generator of the subcomplex group, its image
    under inclusion and under the gluing map.  Adds ``t`` and the relators
    ``t * i * t^-1 * f^-1``.
    """
    name = fresh_name(t_name, x.generators)
    rank = x.rank + 1
    t = Word.generator(x.rank, rank)
    rels = [embed_word(r, rank) for r in x.relators]
    for i_img, f_img in pairs:
        i_w = embed_word(x.word(i_img), rank)
        f_w = embed_word(x.word(f_img), rank)
        rels.append(t * i_w * t.inverse() * f_w.inverse())
    return Presentation(x.generators + (name,), tuple(rels))


def blow_up(b: ManifoldBlock, n: int = 1) -> ManifoldBlock:
    """Invariant bookkeeping for ``n`` blow-ups: ``e += n``, ``sigma -= n``."""
    if n < 0:
        raise BlockError("cannot blow up a negative number of times")
    if n == 0:
        return b
    return replace(b, name=f"{b.name}#{n}CP2bar", euler=b.euler + n, signature=b.signature - n)


def geography_formulas(g: int, r: int) -> tuple[int, int]:
    """(e, sigma) of the manifold realizing a group with ``g`` generators and ``r`` relations."""
    if g < 0 or r < 0:
        raise ValueError("generator and relation counts must be non-negative")
    return 12 + 8 * (g + r), -8 - 4 * (g + r)


def free_abelian_formula(n: int) -> tuple[int, int]:
    """(e, sigma) of the manifold with fundamental group ``Z^(2n-1)``."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return 11 - 5 * n + 2 * n * n, -3 - n


def block_to_json(b: ManifoldBlock) -> dict:
    fmt = b.complement.format_word
    return {
        "name": b.name,
        "euler": b.euler,
        "signature": b.signature,
        "complement": str(b.complement),
        "marked": [
            {
                "label": m.label,
                "genus": m.genus,
                "meridian": fmt(m.meridian),
                "pushoffs": [fmt(w) for w in m.pushoffs],
                "basis_names": list(m.basis_names),
                "framing_note": m.framing_note,
            }
            for m in b.marked
        ],
        "flags": sorted(b.flags),
        "notes": list(b.notes),
    }


def block_from_json(data: dict) -> ManifoldBlock:
    complement = Presentation.parse(data["complement"])
    marked = tuple(
        MarkedSubmanifold(
            label=m["label"],
            genus=m["genus"],
            meridian=complement.word(m["meridian"]),
            pushoffs=tuple(complement.word(w) for w in m["pushoffs"]),
            basis_names=tuple(m.get("basis_names", ())),
            framing_note=m.get("framing_note", ""),
        )
        for m in data.get("marked", [])
    )
    return ManifoldBlock(
        name=data["name"],
        euler=data["euler"],
        signature=data["signature"],
        complement=complement,
        marked=marked,
        flags=frozenset(data.get("flags", ())),
        notes=tuple(data.get("notes", ())),
    )
