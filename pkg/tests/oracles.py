"""Reference implementations used as test oracles.

Nothing here imports the engine's algorithms: words are plain tuples of
``(gen, sign)`` letters and matrices are lists of lists.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from math import gcd


# -- integer matrices -------------------------------------------------------


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    """(g, x, y) with a*x + b*y = g = gcd(a, b) >= 0."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def naive_invariant_factors(rows: list[list[int]]) -> list[int]:
    """Diagonal of the Smith form (zeros included), by Bezout row/column
    combinations on the first nonzero entry, then a gcd/lcm sweep."""
    a = [list(r) for r in rows]
    m = len(a)
    n = len(a[0]) if m else 0
    diag = []
    for t in range(min(m, n)):
        pos = next(((i, j) for i in range(t, m) for j in range(t, n) if a[i][j]), None)
        if pos is None:
            diag += [0] * (min(m, n) - t)
            break
        i, j = pos
        a[t], a[i] = a[i], a[t]
        for r in a:
            r[t], r[j] = r[j], r[t]
        while any(a[i][t] for i in range(t + 1, m)) or any(a[t][j] for j in range(t + 1, n)):
            for i in range(t + 1, m):
                if a[i][t]:
                    p, q = a[t][t], a[i][t]
                    if q % p == 0:
                        a[i] = [v - (q // p) * u for u, v in zip(a[t], a[i])]
                        continue
                    g, x, y = _xgcd(p, q)
                    rt = [x * u + y * v for u, v in zip(a[t], a[i])]
                    ri = [(-q // g) * u + (p // g) * v for u, v in zip(a[t], a[i])]
                    a[t], a[i] = rt, ri
            for j in range(t + 1, n):
                if a[t][j]:
                    p, q = a[t][t], a[t][j]
                    if q % p == 0:
                        for r in a:
                            r[j] -= (q // p) * r[t]
                        continue
                    g, x, y = _xgcd(p, q)
                    for r in a:
                        u, v = r[t], r[j]
                        r[t], r[j] = x * u + y * v, (-q // g) * u + (p // g) * v
        diag.append(abs(a[t][t]))
    # enforce the divisibility chain
    changed = True
    while changed:
        changed = False
        for i in range(len(diag)):
            for j in range(i + 1, len(diag)):
                d, e = diag[i], diag[j]
                g = gcd(d, e)
                l = d * e // g if g else 0
                if (g, l) != (d, e) and not (d == 0 and e == 0):
                    if d == 0:
                        diag[i], diag[j] = e, 0
                    else:
                        diag[i], diag[j] = g, l
                    changed = True
    nonzero = sorted(d for d in diag if d)
    return nonzero + [0] * (len(diag) - len(nonzero))


def _det(m: list[list[int]]) -> int:
    a = [[Fraction(x) for x in r] for r in m]
    n = len(a)
    det = Fraction(1)
    for c in range(n):
        p = next((r for r in range(c, n) if a[r][c] != 0), None)
        if p is None:
            return 0
        if p != c:
            a[c], a[p] = a[p], a[c]
            det = -det
        det *= a[c][c]
        for r in range(c + 1, n):
            f = a[r][c] / a[c][c]
            for k in range(c, n):
                a[r][k] -= f * a[c][k]
    return int(det)


def determinantal_invariant_factors(rows: list[list[int]]) -> list[int]:
    """d_k = gcd of the k x k minors; factors are d_k / d_(k-1)."""
    m = len(rows)
    n = len(rows[0]) if m else 0
    ds = [1]
    for k in range(1, min(m, n) + 1):
        g = 0
        for ri in itertools.combinations(range(m), k):
            for ci in itertools.combinations(range(n), k):
                g = gcd(g, _det([[rows[i][j] for j in ci] for i in ri]))
                if g == 1:
                    break
            if g == 1:
                break
        if g == 0:
            break
        ds.append(g)
    factors = [ds[k] // ds[k - 1] for k in range(1, len(ds))]
    return factors + [0] * (min(m, n) - len(factors))


def abelian_invariants_oracle(rows: list[list[int]], ngens: int) -> tuple[int, list[int]]:
    diag = determinantal_invariant_factors(rows) if rows else []
    rank = sum(1 for d in diag if d)
    return ngens - rank, [d for d in diag if d > 1]


# -- permutations and finite groups ------------------------------------------


def perm_mul(p, q):
    """Apply q first, then p (matches left action composition p*q)."""
    return tuple(p[i] for i in q)


def perm_inv(p):
    out = [0] * len(p)
    for i, x in enumerate(p):
        out[x] = i
    return tuple(out)


def evaluate(letters, images, identity):
    x = identity
    for g, s in letters:
        y = images[g] if s > 0 else perm_inv(images[g])
        x = perm_mul(x, y)
    return x


def all_perms(n):
    return list(itertools.permutations(range(n)))


def cyclic_perms(m):
    return [tuple((i + k) % m for i in range(m)) for k in range(m)]


def brute_force_homs(ngens: int, relators, elements) -> int:
    """Count tuples of elements satisfying every relator (letters lists)."""
    identity = tuple(range(len(elements[0])))
    count = 0
    for images in itertools.product(elements, repeat=ngens):
        if all(evaluate(r, images, identity) == identity for r in relators):
            count += 1
    return count


def closure_order(gens) -> int:
    """Size of the permutation group generated by ``gens`` (Cayley graph search)."""
    identity = tuple(range(len(gens[0])))
    seen = {identity}
    frontier = [identity]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = perm_mul(g, x)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return len(seen)


def cycle(n, *points):
    p = list(range(n))
    for a, b in zip(points, points[1:] + points[:1]):
        p[a] = b
    return tuple(p)


def disjoint(*perms):
    """Direct product of permutations acting on disjoint point sets."""
    out, offset = [], 0
    for p in perms:
        out += [x + offset for x in p]
        offset += len(p)
    return tuple(out)


def identity_perm(n):
    return tuple(range(n))
