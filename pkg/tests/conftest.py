"""Shared fixtures and brute-force oracles.

The oracles here deliberately avoid the package's vectorized paths: they walk
Cayley tables with plain Python loops so that they can be used to check the
fast implementations.
"""

from __future__ import annotations

import itertools
from math import gcd

import pytest

from cp2kit import constructors as c


def naive_order(g, a):
    k, x = 1, a
    while x != 0:
        x = int(g.table[x][a])
        k += 1
    return k


def naive_cp2(g):
    """Pairwise check of o(xy) <= max(o(x), o(y)) with orders recomputed by hand."""
    orders = [naive_order(g, a) for a in range(g.order)]
    for x in range(g.order):
        for y in range(g.order):
            if orders[int(g.table[x][y])] > max(orders[x], orders[y]):
                return False, (x, y)
    return True, None


def naive_closure(g, gens):
    members = {0}
    frontier = [0]
    while frontier:
        x = frontier.pop()
        for s in gens:
            y = int(g.table[x][s])
            if y not in members:
                members.add(y)
                frontier.append(y)
    return frozenset(members)


def naive_subgroups_bruteforce(g):
    """All subgroups by testing every subset that contains the identity (tiny groups only)."""
    n = g.order
    out = set()
    others = list(range(1, n))
    for r in range(n):
        for combo in itertools.combinations(others, r):
            s = {0, *combo}
            if all(int(g.table[a][b]) in s for a in s for b in s):
                out.add(frozenset(s))
    return out


def naive_two_generated(g):
    """Subgroups generated by at most two elements."""
    return {naive_closure(g, [a, b]) for a in range(g.order) for b in range(a, g.order)}


def naive_conjugate(g, x, a):
    inv = next(b for b in range(g.order) if int(g.table[x][b]) == 0)
    return int(g.table[int(g.table[inv][a])][x])


def lcm(a, b):
    return a * b // gcd(a, b)


def perm_compose(a, b):
    """Apply a then b, as tuples of images."""
    return tuple(b[i] for i in a)


def perm_order(p):
    ident = tuple(range(len(p)))
    k, x = 1, p
    while x != ident:
        x = perm_compose(x, p)
        k += 1
    return k


# zero-based images of sigma = (12)(34) and tau = (235) on five points
SIGMA = (1, 0, 3, 2, 4)
TAU = (0, 2, 4, 3, 1)


@pytest.fixture(scope="session")
def A4():
    return c.alternating(4)


@pytest.fixture(scope="session")
def A5():
    return c.alternating(5)


@pytest.fixture(scope="session")
def Q8():
    return c.generalized_quaternion(8)


@pytest.fixture(scope="session")
def D8():
    return c.dihedral(8)


@pytest.fixture(scope="session")
def S3():
    return c.symmetric(3)


@pytest.fixture(scope="session")
def small_groups():
    """A spread of small groups from every family, for property checks."""
    return [
        c.cyclic(1), c.cyclic(6), c.cyclic(8), c.abelian([4, 2]), c.elementary_abelian(3, 2),
        c.dihedral(8), c.dihedral(12), c.generalized_quaternion(8), c.generalized_quaternion(16),
        c.symmetric(3), c.symmetric(4), c.alternating(4), c.alternating(5),
        c.extraspecial_exponent_p(3), c.paper_example(2), c.paper_example_quotient(2),
        c.frobenius_linear(2, 2, 3), c.frobenius_linear(3, 2, 2), c.frobenius_linear(7, 1, 3),
        c.metacyclic(3, 2, 1, 1), c.metacyclic(2, 3, 1, 2),
    ]
