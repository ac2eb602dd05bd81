"""Claim-by-claim verification of the group-theoretic and (e, sigma) facts
about the built-in constructions."""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field
from importlib import resources
from typing import Callable, Mapping

from . import blocks as bk
from .abelian import AbelianInvariants, abelianization
from .coset import EnumerationResult, todd_coxeter
from .homs import count_homomorphisms
from .manifold import (
    ManifoldBlock,
    closed_pi1,
    free_abelian_formula,
    geography_formulas,
    hnn_mapping_torus,
)
from .presentation import Presentation, direct_sum_with_Z, quotient_by_normal_closure
from .tietze import SimplificationCertificate, tietze_simplify, word_trivial_under

log = logging.getLogger(__name__)

Catalog = Mapping[str, Callable[[], ManifoldBlock]]

W_AND_B = ("matsumoto_W", "block_B")
Q_RANGE = [(k1, k2, p) for k1 in range(1, 5) for k2 in range(1, 5) for p in range(3)]


def _citations() -> dict:
    text = resources.files("luttinger").joinpath("data/claims.json").read_text(encoding="utf-8")
    return json.loads(text)


@dataclass
class Outcome:
    ok: bool
    invariants: dict = field(default_factory=dict)
    certificate: dict | None = None
    detail: str = ""


@dataclass(frozen=True)
class Claim:
    id: str
    statement: str
    requires: tuple[str, ...]
    check: Callable[[Catalog, "Checker"], Outcome]


class Checker:
    """Runs simplifications and remembers each one for the soundness audit."""

    def __init__(self, cap: int | None = None, effort=None):
        self.cap = cap
        self.effort = effort
        self.simplifications: list[SimplificationCertificate] = []

    def simplify(self, p: Presentation) -> tuple[Presentation, SimplificationCertificate]:
        target, cert = tietze_simplify(p, self.effort)
        self.simplifications.append(cert)
        return target, cert

    def order(self, p: Presentation) -> EnumerationResult:
        return todd_coxeter(p, self.cap)


def soundness(cert: SimplificationCertificate) -> dict:
    """Invariants of source and target of a simplification; they must agree."""
    src, dst = cert.source, cert.target
    row = {
        "source": str(src) if len(str(src)) <= 200 else f"<{src.rank} generators, {len(src.relators)} relators>",
        "target": str(dst),
        "replay_ok": cert.replay(),
    }
    row["abelianization"] = [str(abelianization(src)), str(abelianization(dst))]
    for g in ("S3", "S4"):
        row[g] = [str(count_homomorphisms(src, g)), str(count_homomorphisms(dst, g))]
    row["ok"] = (
        row["replay_ok"]
        and row["abelianization"][0] == row["abelianization"][1]
        and all(row[g][0] == row[g][1] and row[g][0] != "too large" for g in ("S3", "S4"))
    )
    return row


def _is_commutator_pair(p: Presentation, a: str, b: str) -> bool:
    return p.same_as(Presentation.parse(f"< {a}, {b} | [{a},{b}] >"))


def _closed_and_simplified(ch: Checker, b: ManifoldBlock):
    closed = closed_pi1(b)
    target, cert = ch.simplify(closed)
    return closed, target, cert


# -- the claims -----------------------------------------------------------


def _check_R(cat, ch):
    r = bk.build_R(cat)
    closed, target, cert = _closed_and_simplified(ch, r)
    ab = abelianization(closed)
    ok = (
        _is_commutator_pair(target, "t", "s")
        and target.generators == ("t", "s")
        and ab == AbelianInvariants(2)
        and (r.euler, r.signature) == (8, -4)
    )
    return Outcome(
        ok,
        {"euler": r.euler, "signature": r.signature, "pi1": str(target), "abelianization": str(ab)},
        cert.summary(),
    )


def _check_R_meridians(cat, ch):
    r = bk.build_R(cat)
    target, cert = ch.simplify(r.complement)
    shown = {
        m.label: word_trivial_under(cert, m.meridian) for m in r.marked
    }
    closed_target, _ = ch.simplify(closed_pi1(r))
    same = target.same_as(closed_target)
    return Outcome(
        all(shown.values()) and set(shown) == {"T1", "T2"} and same,
        {"meridians_trivial": shown, "complement_pi1": str(target), "complement_equals_closed": same},
        cert.summary(),
    )


def _check_P(cat, ch):
    p = bk.build_P(cat)
    closed, target, cert = _closed_and_simplified(ch, p)
    complement_t, ccert = ch.simplify(quotient_by_normal_closure(p.complement, [p.surface("T1").meridian]))
    mu2 = word_trivial_under(ccert, p.complement.word(p.surface("T2").meridian))
    ok = (
        target.same_as(Presentation.parse("< t | >"))
        and target.generators == ("t",)
        and (p.euler, p.signature) == (8, -4)
        and mu2
    )
    return Outcome(
        ok,
        {
            "euler": p.euler,
            "signature": p.signature,
            "pi1": str(target),
            "pi1_minus_T2": str(complement_t),
            "mu2_trivial": mu2,
        },
        cert.summary(),
    )


def _check_Q_family(cat, ch):
    rows, ok = [], True
    r = bk.build_R(cat)
    for k1, k2, p in Q_RANGE:
        q = bk.surger_R(r, k1, k2, p, f"Q({k1},s;{k2},{p}y2+t)")
        closed = closed_pi1(q)
        res = ch.order(closed)
        ab = abelianization(closed)
        want = AbelianInvariants.from_orders([k1, k2])
        good = res.finite and res.order == k1 * k2 and ab == want and (q.euler, q.signature) == (8, -4)
        ok &= good
        rows.append({"k1": k1, "k2": k2, "p": p, "order": str(res), "abelianization": str(ab), "ok": good})
    return Outcome(ok, {"cases": rows})


def _check_Q_simply_connected(cat, ch):
    r = bk.build_R(cat)
    orders = {}
    for p in range(3):
        q = bk.surger_R(r, 1, 1, p, f"Q(1,s;1,{p}y2+t)")
        orders[p] = str(ch.order(closed_pi1(q)))
    return Outcome(all(v == "Finite(1)" for v in orders.values()), {"order_by_p": orders, "euler": 8, "signature": -4})


def _check_sequential(cat, ch):
    r = bk.build_R(cat)
    mismatches = []
    for k1, k2, p in Q_RANGE:
        q = bk.surger_R(r, k1, k2, p, "Q")
        t1, t2 = r.surface("T1"), r.surface("T2")
        g1 = t1.pushoffs[1]
        g2 = t2.pushoffs[0] ** p * t2.pushoffs[1]
        direct = quotient_by_normal_closure(
            r.complement, [g1**k1 * t1.meridian, g2**k2 * t2.meridian]
        )
        if not closed_pi1(q).same_as(direct):
            mismatches.append([k1, k2, p])
    return Outcome(not mismatches, {"cases": len(Q_RANGE), "mismatches": mismatches})


def _check_P_T4(cat, ch):
    x = bk.build_P_T4(cat)
    closed, target, cert = _closed_and_simplified(ch, x)
    ab = abelianization(closed)
    ok = ab == AbelianInvariants(3) and (x.euler, x.signature) == (8, -4)
    return Outcome(
        ok,
        {"euler": x.euler, "signature": x.signature, "abelianization": str(ab), "pi1": str(target)},
        cert.summary(),
    )


def _check_W_prime(cat, ch):
    x = bk.build_W_prime_Q(1, cat)
    closed = closed_pi1(x)
    res = ch.order(closed)
    ok = res.finite and res.order == 1 and (x.euler, x.signature) == (14, -6)
    return Outcome(ok, {"euler": x.euler, "signature": x.signature, "order": str(res)})


def _check_P_P(cat, ch):
    x = bk.build_P_P_swap(cat)
    closed, target, cert = _closed_and_simplified(ch, x)
    ab = abelianization(closed)
    ok = ab.is_trivial() and (x.euler, x.signature) == (16, -8)
    return Outcome(
        ok,
        {"euler": x.euler, "signature": x.signature, "abelianization": str(ab), "pi1": str(target)},
        cert.summary(),
    )


def _check_formulas(cat, ch):
    p = bk.build_P(cat)
    per_piece = (p.euler, p.signature)
    geo = {f"{g},{r}": geography_formulas(g, r) for g in range(3) for r in range(3)}
    steps_ok = all(
        tuple(a - b for a, b in zip(geography_formulas(g, r + 1), geography_formulas(g, r))) == per_piece
        for g in range(3)
        for r in range(3)
    )
    free = {n: free_abelian_formula(n) for n in range(1, 6)}
    ok = (
        geography_formulas(0, 0) == (12, -8)
        and steps_ok
        and free[1] == per_piece
        and all(free[n] == (11 - 5 * n + 2 * n * n, -3 - n) for n in free)
    )
    return Outcome(
        ok,
        {
            "P": list(per_piece),
            "geography": {k: list(v) for k, v in geo.items()},
            "free_abelian": {str(n): list(v) for n, v in free.items()},
        },
    )


def _check_hnn(cat, ch):
    h = Presentation.free("x", "y")
    c = direct_sum_with_Z(hnn_mapping_torus(h, [("x", "x"), ("y", "y*x")]))
    c_t1 = direct_sum_with_Z(hnn_mapping_torus(h, [("y", "y*x"), ("[x,y]", "[x,y*x]")]))
    z = hnn_mapping_torus(h, [("x", "x"), ("y", "y*x")])
    c_t2 = hnn_mapping_torus(z, [("x", "x"), ("t", "t")], "s")
    results = {
        "block_C": c.same_as(bk.builtin("block_C", cat).complement),
        "block_C_T1": c_t1.same_as(bk.builtin("block_C_T1", cat).complement),
        "block_C_T2": c_t2.same_as(bk.builtin("block_C_T2", cat).complement),
    }
    return Outcome(all(results.values()), {"matches": results})


def _check_catalog(cat, ch):
    rows = {}
    for name in sorted(cat):
        b = bk.builtin(name, cat)
        ab = abelianization(closed_pi1(b))
        round_trip = Presentation.parse(str(b.complement)) == b.complement
        expected = bk.FINGERPRINTS.get(name)
        rows[name] = {
            "abelianization": str(ab),
            "expected": str(expected) if expected else None,
            "round_trip": round_trip,
            "ok": round_trip and (expected is None or ab == expected),
        }
    return Outcome(all(r["ok"] for r in rows.values()), {"blocks": rows})


CLAIMS: tuple[Claim, ...] = (
    Claim("R.pi1", "closed pi1(R) = <t, s | [t,s]> = Z^2, e = 8, sigma = -4", W_AND_B, _check_R),
    Claim("R.meridians", "mu1, mu2 trivial in pi1(R - (T1 u T2)), which equals pi1(R)", W_AND_B, _check_R_meridians),
    Claim("P.pi1", "pi1(P) = Z t, e = 8, sigma = -4, mu2 trivial in pi1(P - T2)", W_AND_B, _check_P),
    Claim("Q.family", "pi1(Q(k1,s;k2,p y2+t)) = Z/k1 + Z/k2 of order k1 k2", W_AND_B, _check_Q_family),
    Claim("Q.simply_connected", "Q(1,s;1,p y2+t) is simply connected", W_AND_B, _check_Q_simply_connected),
    Claim("Q.sequential", "successive surgeries equal one quotient of pi1(R - (T1 u T2))", W_AND_B, _check_sequential),
    Claim("PT4.pi1", "P # T^4 has pi1 = Z^3, e = 8, sigma = -4", W_AND_B + ("torus_T4",), _check_P_T4),
    Claim("Wprime.Q", "W' # B with surgeries (1,s;1,y2+t): e = 14, sigma = -6, simply connected", ("W_prime", "block_B"), _check_W_prime),
    Claim("PP.swap", "P # P with swapped torus generators: e = 16, sigma = -8, H1 = 0", W_AND_B, _check_P_P),
    Claim("formulas", "geography and free-abelian (e, sigma) formulas; each P adds (8, -4)", W_AND_B, _check_formulas),
    Claim("C.hnn", "mapping-torus presentations reproduce pi1(C), pi1(C - T1), pi1(C - T2)", ("block_C", "block_C_T1", "block_C_T2"), _check_hnn),
    Claim("catalog", "built-in blocks round-trip and match their abelianization fingerprints", (), _check_catalog),
)

ANNOTATIONS = (
    ("R.minimal", "R, P and Q(k1,s;k2,p y2+t) are minimal (recorded, not computed)"),
    ("Q.exotic", "Q(1,s;1,p y2+t) is homeomorphic but not diffeomorphic to CP2 # 5 CP2bar (recorded, not computed)"),
    ("Wprime.exotic", "Q'(1,s;1,p y2+t) is an exotic 3 CP2 # 9 CP2bar (recorded, not computed)"),
)


def verify_paper(
    catalog: Catalog | None = None,
    cap: int | None = None,
    effort=None,
    audit: bool = True,
) -> dict:
    """Run every claim against ``catalog`` and return a JSON-ready report."""
    catalog = bk.CATALOG if catalog is None else catalog
    cites = _citations()
    checker = Checker(cap, effort)
    rows = []
    for claim in CLAIMS:
        row = {"id": claim.id, "citation": cites.get(claim.id, ""), "statement": claim.statement}
        missing = [n for n in claim.requires if n not in catalog]
        if not catalog or missing:
            row.update(status="blocked", detail="missing block: " + ", ".join(missing or ["(empty catalog)"]))
            rows.append(row)
            continue
        try:
            out = claim.check(catalog, checker)
        except Exception as exc:  # a broken block is a failed claim, not a crash
            log.debug("claim %s raised", claim.id, exc_info=True)
            row.update(status="fail", detail=f"{type(exc).__name__}: {exc}")
            rows.append(row)
            continue
        row.update(status="pass" if out.ok else "fail", invariants=out.invariants)
        if out.certificate is not None:
            row["certificate"] = out.certificate
        if out.detail:
            row["detail"] = out.detail
        rows.append(row)

    report = {
        "claims": rows,
        "annotations": [
            {"id": i, "citation": cites.get(i, ""), "note": text} for i, text in ANNOTATIONS
        ],
    }
    if audit:
        audit_rows = [soundness(c) for c in checker.simplifications]
        report["soundness"] = audit_rows
    counts = {s: sum(r["status"] == s for r in rows) for s in ("pass", "fail", "blocked")}
    if audit:
        counts["soundness_failures"] = sum(not r["ok"] for r in report["soundness"])
    report["summary"] = counts
    return report


def report_ok(report: dict) -> bool:
    s = report["summary"]
    return s["fail"] == 0 and s["blocked"] == 0 and s.get("soundness_failures", 0) == 0


def format_report(report: dict) -> str:
    lines = []
    for row in report["claims"]:
        status = row["status"].upper()
        line = f"[{status:7}] {row['id']:20} {row['statement']}"
        if row.get("citation"):
            line += f"  ({row['citation']})"
        lines.append(line)
        if row.get("detail"):
            lines.append(f"          {row['detail']}")
        inv = row.get("invariants", {})
        for key in ("euler", "signature", "pi1", "abelianization", "order"):
            if key in inv:
                lines.append(f"          {key}: {inv[key]}")
    for a in report["annotations"]:
        lines.append(f"[NOTE   ] {a['id']:20} {a['note']}")
    if "soundness" in report:
        bad = [r for r in report["soundness"] if not r["ok"]]
        lines.append(
            f"soundness: {len(report['soundness'])} simplification(s) audited, {len(bad)} mismatch(es)"
        )
    s = report["summary"]
    lines.append(f"summary: {s['pass']} passed, {s['fail']} failed, {s['blocked']} blocked")
    return "\n".join(lines)
