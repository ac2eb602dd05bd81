"""Presentations of small finite groups with faithful permutation images."""

from oracles import cycle, disjoint, identity_perm


def reflection(n):
    return tuple((-i) % n for i in range(n))


def rotation(n):
    return cycle(n, *range(n))


# presentation, faithful permutation images of its generators, known order
CORPUS = [
    ("< a | a >", [identity_perm(1)], 1),
    ("< a | a^5 >", [rotation(5)], 5),
    ("< a | a^12 >", [rotation(12)], 12),
    ("< a, b | a^2, b^3, [a,b] >", [disjoint(rotation(2), identity_perm(3)), disjoint(identity_perm(2), rotation(3))], 6),
    ("< a, b | a^2, b^2, (a b)^3 >", [cycle(3, 0, 1), cycle(3, 1, 2)], 6),
    ("< a, b | a^3, b^2, (a b)^2 >", [rotation(3), reflection(3)], 6),
    ("< a, b | a^4, b^2, (a b)^2 >", [rotation(4), reflection(4)], 8),
    ("< a, b | a^5, b^2, (a b)^2 >", [rotation(5), reflection(5)], 10),
    ("< a, b | a^6, b^2, (a b)^2 >", [rotation(6), reflection(6)], 12),
    ("< a, b | a^12, b^2, (a b)^2 >", [rotation(12), reflection(12)], 24),
    ("< a, b | a^2, b^3, (a b)^4 >", [cycle(4, 0, 1), cycle(4, 1, 2, 3)], 24),
    ("< a, b | a^4, b^2, (a b)^3 >", [cycle(4, 0, 1, 2, 3), cycle(4, 0, 1)], 24),
    (
        "< a, b, c | a^2, b^2, c^2, (a b)^3, (b c)^3, (a c)^2 >",
        [cycle(4, 0, 1), cycle(4, 1, 2), cycle(4, 2, 3)],
        24,
    ),
    ("< a, b | a^2, b^3, (a b)^3 >", [disjoint(cycle(2, 0, 1), cycle(2, 0, 1)), cycle(4, 0, 1, 2)], 12),
    ("< a, b | a^2, b^2, [a,b] >", [disjoint(rotation(2), identity_perm(2)), disjoint(identity_perm(2), rotation(2))], 4),
    ("< a, b | a^2, b^4, [a,b] >", [disjoint(rotation(2), identity_perm(4)), disjoint(identity_perm(2), rotation(4))], 8),
    ("< a, b | a^3, b^3, [a,b] >", [disjoint(rotation(3), identity_perm(3)), disjoint(identity_perm(3), rotation(3))], 9),
    ("< a, b | a^2, b^6, [a,b] >", [disjoint(rotation(2), identity_perm(6)), disjoint(identity_perm(2), rotation(6))], 12),
    ("< a, b | a^4, b^4, [a,b] >", [disjoint(rotation(4), identity_perm(4)), disjoint(identity_perm(4), rotation(4))], 16),
    ("< a, b | a^2, b^12, [a,b] >", [disjoint(rotation(2), identity_perm(12)), disjoint(identity_perm(2), rotation(12))], 24),
]
