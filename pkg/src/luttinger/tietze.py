"""Deterministic Tietze simplification with replayable certificates.

Every simplification returns a certificate carrying

* ``generator_images``: a word in the target generators for each source
  generator (a homomorphism source -> target), and
* ``derivation``: for each source relator ``r``, a list of terms
  ``(c, j, e)`` such that ``image(r)`` is freely equal to the product of
  ``c * target.relators[j]**e * c**-1``.

The second item makes the certificate checkable by free reduction alone:
``replay()`` recomputes both sides.  Target generators are always a subset of
the source generators (moves only ever delete generators), so the inverse map
is the inclusion recorded in ``target_to_source``.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

from .presentation import Presentation
from .words import Word, canonical_relator

log = logging.getLogger(__name__)

Term = tuple[Word, int, int]


@dataclass(frozen=True)
class Effort:
    max_passes: int = 2000
    max_relator_length: int = 512
    search_relator_length: int = 64
    window: int = 16

    @classmethod
    def level(cls, n: int) -> Effort:
        """Scale the default budget; level 1 is the default."""
        n = max(1, int(n))
        return cls(max_passes=2000 * n, max_relator_length=512 * n)


@dataclass(frozen=True)
class SimplificationCertificate:
    source: Presentation
    target: Presentation
    generator_images: tuple[Word, ...]
    target_to_source: tuple[int, ...]
    derivation: tuple[tuple[Term, ...], ...]
    log: tuple[str, ...] = ()
    exhausted: bool = False

    def image(self, w: Word) -> Word:
        if w.rank != self.source.rank:
            raise ValueError("word is not over the certificate's source generators")
        return w.substitute(self.generator_images, self.target.rank)

    def replay(self) -> bool:
        """Check every source relator against its recorded derivation."""
        if len(self.derivation) != len(self.source.relators):
            return False
        rank = self.target.rank
        for rel, terms in zip(self.source.relators, self.derivation):
            rhs = Word.identity(rank)
            for conj, j, e in terms:
                if not 0 <= j < len(self.target.relators):
                    return False
                rhs = rhs * conj * self.target.relators[j] ** e * conj.inverse()
            if self.image(rel) != rhs:
                return False
        # target generators must map back to themselves
        for t, s in enumerate(self.target_to_source):
            if self.generator_images[s] != Word.generator(t, rank):
                return False
        return True

    def compose(self, other: SimplificationCertificate) -> SimplificationCertificate:
        """Certificate for ``self.source -> other.target`` (``other`` starts where ``self`` ends)."""
        if other.source != self.target:
            raise ValueError("certificates do not chain")
        rank = other.target.rank
        images = tuple(other.image(w) for w in self.generator_images)
        derivation = []
        for terms in self.derivation:
            out: list[Term] = []
            for conj, j, e in terms:
                c2 = other.image(conj)
                out += _conjugate_terms(c2, other.derivation[j], e)
            derivation.append(tuple(out))
        return SimplificationCertificate(
            source=self.source,
            target=other.target,
            generator_images=images,
            target_to_source=tuple(self.target_to_source[s] for s in other.target_to_source),
            derivation=tuple(derivation),
            log=self.log + other.log,
            exhausted=self.exhausted or other.exhausted,
        )

    def summary(self) -> dict:
        return {
            "source_generators": self.source.rank,
            "source_relators": len(self.source.relators),
            "target": str(self.target),
            "steps": len(self.log),
            "replay_ok": self.replay(),
            "exhausted": self.exhausted,
        }


def _conjugate_terms(u: Word, terms, e: int) -> list[Term]:
    """Terms for ``u * (prod terms)**e * u^-1`` with ``e = ±1``."""
    seq = terms if e == 1 else [(c, j, -f) for c, j, f in reversed(terms)]
    return [(u * c, j, f) for c, j, f in seq]


class _Simplifier:
    def __init__(self, p: Presentation, effort: Effort):
        self.p = p
        self.effort = effort
        self.rank = p.rank
        self.alive = [True] * p.rank
        self.images = [Word.generator(g, p.rank) for g in range(p.rank)]
        self.rels: list[Word] = list(p.relators)
        self.proofs: list[list[Term]] = [
            [(Word.identity(p.rank), i, 1)] for i in range(len(p.relators))
        ]
        self.log: list[str] = []

    def name(self, w: Word) -> str:
        return self.p.format_word(w)

    def _apply(self, new_rels, rewrite, subst=None):
        """Replace the relator list; ``rewrite[i]`` expresses old relator ``i``
        (after ``subst``) through the new relators."""
        new_proofs = []
        for terms in self.proofs:
            out: list[Term] = []
            for conj, i, e in terms:
                if subst is not None:
                    conj = conj.substitute(subst, self.rank)
                out += _conjugate_terms(conj, rewrite[i], e)
            new_proofs.append(out)
        self.proofs = new_proofs
        self.rels = list(new_rels)

    def normalize(self) -> bool:
        """Drop trivial relators, canonicalize and deduplicate.  Returns True if
        the relator list changed."""
        new_rels: list[Word] = []
        index: dict[tuple, int] = {}
        rewrite = []
        dropped = 0
        for r in self.rels:
            canon, conj, exp = canonical_relator(r)
            if not canon.letters:
                rewrite.append([])
                dropped += 1
                continue
            k = index.get(canon.letters)
            if k is None:
                k = index[canon.letters] = len(new_rels)
                new_rels.append(canon)
            else:
                dropped += 1
            rewrite.append([(conj, k, exp)])
        changed = new_rels != self.rels
        if dropped:
            self.log.append(f"dropped {dropped} trivial or duplicate relator(s)")
        self._apply(new_rels, rewrite)
        return changed

    def eliminate_one(self) -> bool:
        for g in range(self.rank):
            if not self.alive[g]:
                continue
            best = None
            for j, r in enumerate(self.rels):
                occ = [k for k, (h, _) in enumerate(r.letters) if h == g]
                if len(occ) == 1 and (best is None or len(r) < len(self.rels[best[0]])):
                    best = (j, occ[0])
            if best is None:
                continue
            j, pos = best
            r = self.rels[j]
            eps = r.letters[pos][1]
            a = Word(r.letters[:pos], self.rank)
            b = Word(r.letters[pos + 1 :], self.rank)
            expr = (b * a) ** (-eps)
            subst = {g: expr}
            new_rels = [Word.identity(self.rank) if i == j else w.substitute(subst, self.rank)
                        for i, w in enumerate(self.rels)]
            if any(len(w) > self.effort.max_relator_length for w in new_rels):
                log.debug("skipping elimination of %s: relator blowup", self.p.generators[g])
                continue
            self.log.append(
                f"eliminate {self.p.generators[g]} = {self.name(expr)} using {self.name(r)}"
            )
            self.images = [w.substitute(subst, self.rank) for w in self.images]
            self.alive[g] = False
            rewrite = [[] if i == j else [(Word.identity(self.rank), i, 1)]
                       for i in range(len(self.rels))]
            self._apply(new_rels, rewrite, subst)
            return True
        return False

    def shorten_one(self) -> bool:
        eff = self.effort
        order = sorted(range(len(self.rels)), key=lambda i: (-len(self.rels[i]), i))
        for i in order:
            target = self.rels[i]
            n = len(target)
            doubled = target.letters + target.letters
            for k, rel in enumerate(self.rels):
                L = len(rel)
                if k == i or L == 0 or L > eff.search_relator_length:
                    continue
                for m in range(min(eff.window, L, n), L // 2, -1):
                    for e in (1, -1):
                        base = rel if e == 1 else rel.inverse()
                        for o2 in range(L):
                            s = base.letters[o2:] + base.letters[:o2]
                            u = s[:m]
                            for o in range(n):
                                if doubled[o : o + m] != u:
                                    continue
                                self._replace(i, o, k, e, o2, m, s)
                                return True
        return False

    def _replace(self, i, o, k, e, o2, m, s):
        rank = self.rank
        target = self.rels[i]
        rot = target.letters[o:] + target.letters[:o]
        d = Word(target.letters[:o], rank)
        base = self.rels[k] if e == 1 else self.rels[k].inverse()
        c = Word(base.letters[:o2], rank)
        v = Word(s[m:], rank).inverse()
        rest = Word(rot[m:], rank)
        new = v * rest
        self.log.append(
            f"shorten {self.name(target)} -> {self.name(new)} using {self.name(self.rels[k])}"
        )
        new_rels = list(self.rels)
        new_rels[i] = new
        ident = Word.identity(rank)
        rewrite = [[(ident, x, 1)] for x in range(len(self.rels))]
        rewrite[i] = [(d * c.inverse(), k, e), (d, i, 1)]
        self._apply(new_rels, rewrite)

    def run(self) -> SimplificationCertificate:
        self.normalize()
        for _ in range(self.effort.max_passes):
            if self.eliminate_one() or self.shorten_one():
                self.normalize()
                continue
            return self._finish(exhausted=False)
        return self._finish(exhausted=True)

    def _finish(self, exhausted: bool) -> SimplificationCertificate:
        keep = [g for g in range(self.rank) if self.alive[g]]
        relabel = {g: t for t, g in enumerate(keep)}
        n = len(keep)
        names = tuple(self.p.generators[g] for g in keep)

        def move(w: Word) -> Word:
            return w.relabel(relabel, n)

        target = Presentation(names, tuple(move(r) for r in self.rels))
        derivation = tuple(
            tuple((move(c), j, e) for c, j, e in terms) for terms in self.proofs
        )
        return SimplificationCertificate(
            source=self.p,
            target=target,
            generator_images=tuple(move(w) for w in self.images),
            target_to_source=tuple(keep),
            derivation=derivation,
            log=tuple(self.log),
            exhausted=exhausted,
        )


def tietze_simplify(
    p: Presentation, effort: Effort | None = None
) -> tuple[Presentation, SimplificationCertificate]:
    """Simplify ``p`` to fixpoint (or until the budget runs out).

    Relators are kept canonical (trivial ones deleted, duplicates up to
    rotation and inversion merged).  Each step then either eliminates a
    generator occurring exactly once in some relator (lowest id first, using
    the shortest such relator) or, failing that, shortens a relator by
    swapping a piece of it for the shorter complement of another relator.
    ``effort.max_passes`` bounds the number of steps.
    """
    cert = _Simplifier(p, effort or Effort()).run()
    if cert.exhausted:
        log.warning("simplification budget exhausted; returning best presentation so far")
    return cert.target, cert


def identity_certificate(p: Presentation) -> SimplificationCertificate:
    ident = Word.identity(p.rank)
    return SimplificationCertificate(
        source=p,
        target=p,
        generator_images=tuple(Word.generator(g, p.rank) for g in range(p.rank)),
        target_to_source=tuple(range(p.rank)),
        derivation=tuple(((ident, j, 1),) for j in range(len(p.relators))),
    )


def word_trivial_under(cert: SimplificationCertificate, w: Word) -> bool:
    """True if ``w`` maps to the empty word; False only means "not shown trivial"."""
    return cert.image(w).is_identity()
