"""Built-in blocks and the standard constructions assembled from them."""

from __future__ import annotations

from typing import Callable, Mapping

from .abelian import AbelianInvariants
from .manifold import (
    GluingMatch,
    ManifoldBlock,
    MarkedSubmanifold,
    fiber_sum,
    luttinger,
)
from .presentation import Presentation

C_TEXT = "< x, y, t, s | [t,x], [y^-1,t]*x^-1, [s,x], [s,y], [s,t] >"
C_T1_TEXT = "< x, y, t, s | [y^-1,t]*x^-1, [t,[x,y]], [s,x], [s,y], [s,t] >"
C_T2_TEXT = "< x, y, t, s | [t,x], [y^-1,t]*x^-1, [s,x], [s,t] >"
B_TEXT = (
    "< x1, y1, x2, y2, t, s | [x1,y1]*[x2,y2], [y1^-1,t]*x1^-1, [t,[x1,y1]], "
    "[x2^-1,t]*y2^-1, [t,y2], [s,x1], [s,y1], [s,t], [s,y2] >"
)
T4_TEXT = "< x, y, c, d | [x,y], [x,c], [x,d], [y,c], [y,d] >"
W_TEXT = "< a, b | [a,b] >"

GENUS2_BASIS = ("a1", "b1", "a2", "b2")
B_SURFACE_CAVEAT = (
    "meridian of G taken as the boundary word [x1,y1]*[x2,y2]; it is not derived, "
    "and only enters a sum through mu_F * mu_G^-1 with mu_F = 1"
)


class UnknownBlock(KeyError):
    def __init__(self, name: str, catalog: Mapping[str, object]):
        super().__init__(name)
        self.name = name
        self.known = sorted(catalog)

    def __str__(self) -> str:
        return f"unknown block {self.name!r}; catalog has: {', '.join(self.known) or '(empty)'}"


def _torus(p: Presentation, label: str, meridian: str, u: str, v: str, note: str = "") -> MarkedSubmanifold:
    return MarkedSubmanifold(
        label=label,
        genus=1,
        meridian=p.word(meridian),
        pushoffs=(p.word(u), p.word(v)),
        basis_names=(u, v),
        framing_note=note,
    )


def _w_like(name: str, euler: int, signature: int, note: str) -> ManifoldBlock:
    p = Presentation.parse(W_TEXT)
    surface = MarkedSubmanifold(
        label="F",
        genus=2,
        meridian=p.word("1"),
        pushoffs=tuple(p.word(w) for w in ("a", "b", "a^-1", "b^-1")),
        basis_names=GENUS2_BASIS,
        framing_note=note,
    )
    return ManifoldBlock(name, euler, signature, p, (surface,), frozenset({"symplectic"}))


def matsumoto_W() -> ManifoldBlock:
    """``(T^2 x S^2) # 4 CP2bar`` with its genus 2 surface ``F``."""
    return _w_like("W", 4, -4, "meridian lies on an exceptional sphere, so it is nullhomotopic")


def W_prime() -> ManifoldBlock:
    """``W`` summed with ``T^4 # 2 CP2bar``: same group data, larger ``e``."""
    return _w_like("W'", 10, -6, "meridian of H in T^4 # 2 CP2bar is nullhomotopic")


def block_C() -> ManifoldBlock:
    return ManifoldBlock("C", 0, 0, Presentation.parse(C_TEXT), (), frozenset({"symplectic"}))


def block_C_T1() -> ManifoldBlock:
    p = Presentation.parse(C_T1_TEXT)
    return ManifoldBlock(
        "C", 0, 0, p, (_torus(p, "T1", "[t,x]", "y", "s", "Lagrangian"),), frozenset({"symplectic"})
    )


def block_C_T2() -> ManifoldBlock:
    p = Presentation.parse(C_T2_TEXT)
    return ManifoldBlock(
        "C", 0, 0, p, (_torus(p, "T2", "[s,y]", "x", "t", "Lagrangian"),), frozenset({"symplectic"})
    )


def block_B() -> ManifoldBlock:
    """Product of ``S^1`` with the mapping torus of ``D2 * D1`` on a genus 2 surface."""
    p = Presentation.parse(B_TEXT)
    g = MarkedSubmanifold(
        label="G",
        genus=2,
        meridian=p.word("[x1,y1]*[x2,y2]"),
        pushoffs=tuple(p.word(w) for w in ("x1", "y1", "x2", "y2")),
        basis_names=("x1", "y1", "x2", "y2"),
        framing_note=B_SURFACE_CAVEAT,
    )
    marked = (
        _torus(p, "T1", "[x1,t]", "y1", "s", "Lagrangian"),
        _torus(p, "T2", "[x2,s]", "y2", "t", "Lagrangian"),
        g,
    )
    return ManifoldBlock("B", 0, 0, p, marked, frozenset({"symplectic", "minimal"}), (B_SURFACE_CAVEAT,))


def torus_T4() -> ManifoldBlock:
    """``T^4`` with one coordinate torus marked."""
    p = Presentation.parse(T4_TEXT)
    return ManifoldBlock(
        "T4", 0, 0, p, (_torus(p, "T", "[c,d]", "x", "y", "product"),), frozenset({"symplectic"})
    )


CATALOG: dict[str, Callable[[], ManifoldBlock]] = {
    "matsumoto_W": matsumoto_W,
    "block_C": block_C,
    "block_C_T1": block_C_T1,
    "block_C_T2": block_C_T2,
    "block_B": block_B,
    "torus_T4": torus_T4,
    "W_prime": W_prime,
}

# abelianization of the closed manifold's fundamental group
FINGERPRINTS: dict[str, AbelianInvariants] = {
    "matsumoto_W": AbelianInvariants(2),
    "block_C": AbelianInvariants(3),
    "block_C_T1": AbelianInvariants(3),
    "block_C_T2": AbelianInvariants(3),
    "block_B": AbelianInvariants(4),
    "torus_T4": AbelianInvariants(4),
    "W_prime": AbelianInvariants(2),
}


def builtin(name: str, catalog: Mapping[str, Callable[[], ManifoldBlock]] | None = None) -> ManifoldBlock:
    catalog = CATALOG if catalog is None else catalog
    try:
        return catalog[name]()
    except KeyError:
        raise UnknownBlock(name, catalog) from None


# -- constructions --------------------------------------------------------

STANDARD_MATCH = (("a1", "x1", 1), ("b1", "y1", 1), ("a2", "x2", 1), ("b2", "y2", 1))


def sum_with_B(w: ManifoldBlock, b: ManifoldBlock, name: str = "R") -> ManifoldBlock:
    fw, gb = w.surface("F"), b.surface("G")
    return fiber_sum(w, "F", b, "G", GluingMatch.from_names(fw, gb, STANDARD_MATCH), name=name)


def build_R(catalog=None) -> ManifoldBlock:
    return sum_with_B(builtin("matsumoto_W", catalog), builtin("block_B", catalog), "R")


def build_P(catalog=None) -> ManifoldBlock:
    return luttinger(build_R(catalog), "T1", (0, 1), 1, name="P")


def surger_R(r: ManifoldBlock, k1: int, k2: int, p: int, name: str) -> ManifoldBlock:
    """``Q(k1, s; k2, p*y2 + t)`` built from an ``R``-like block."""
    q = luttinger(r, "T1", (0, 1), k1)
    return luttinger(q, "T2", (p, 1), k2, name=name)


def build_Q(k1: int, k2: int, p: int, catalog=None) -> ManifoldBlock:
    return surger_R(build_R(catalog), k1, k2, p, f"Q({k1},s;{k2},{p}y2+t)")


def build_P_T4(catalog=None) -> ManifoldBlock:
    """``P`` summed with ``T^4`` along ``T2``; ``y2`` (trivial in ``P``) meets ``x``."""
    p = build_P(catalog)
    t4 = builtin("torus_T4", catalog)
    match = GluingMatch.from_names(p.surface("T2"), t4.surface("T"), (("y2", "x", 1), ("t", "y", 1)))
    return fiber_sum(p, "T2", t4, "T", match, name="P#T4")


def build_W_prime_Q(p: int = 1, catalog=None) -> ManifoldBlock:
    r = sum_with_B(builtin("W_prime", catalog), builtin("block_B", catalog), "R'")
    return surger_R(r, 1, 1, p, f"Q'(1,s;1,{p}y2+t)")


def build_P_P_swap(catalog=None) -> ManifoldBlock:
    """Two copies of ``P`` summed along ``T2`` with the basis curves swapped."""
    p = build_P(catalog)
    t = p.surface("T2")
    match = GluingMatch.from_names(t, t, (("y2", "t", 1), ("t", "y2", 1)))
    return fiber_sum(p, "T2", p, "T2", match, name="P#P")
