"""Named group families used by the corpus and the regression suites."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidParameters
from .group import (
    ActionSpec,
    Group,
    PermutationSpec,
    direct_product,
    from_permutations,
    quotient,
    semidirect_product,
)
from .numtheory import is_prime, prime_factors, prime_power

SYMMETRIC_DEGREE_CAP = 7
ALTERNATING_DEGREE_CAP = 7


def _named(group: Group, name: str) -> Group:
    group.meta["name"] = name
    return group


def cyclic(n: int) -> Group:
    if n < 1:
        raise InvalidParameters("cyclic group needs n >= 1")
    ar = np.arange(n)
    return _named(Group((ar[:, None] + ar[None, :]) % n), f"C{n}")


def abelian(partition) -> Group:
    """Direct product of cyclic groups of the given prime-power orders."""
    parts = [int(x) for x in partition]
    if not parts:
        return _named(cyclic(1), "C1")
    for q in parts:
        if prime_power(q) is None:
            raise InvalidParameters(f"{q} is not a prime power")
    group = cyclic(parts[0])
    for q in parts[1:]:
        group = direct_product(group, cyclic(q))
    return _named(group, "x".join(f"C{q}" for q in parts))


def elementary_abelian(p: int, k: int) -> Group:
    if not is_prime(p) or k < 0:
        raise InvalidParameters("elementary abelian group needs a prime p and k >= 0")
    if k == 0:
        return _named(cyclic(1), "C1")
    return _named(abelian([p] * k), f"E{p}^{k}")


def dihedral(n: int) -> Group:
    """Dihedral group of order ``n`` (so D8 has eight elements).

    Element ``r^i s^j`` has index ``i + m*j`` with ``m = n/2`` rotations.
    """
    if n == 1:
        return _named(cyclic(1), "D1")
    if n < 1 or n % 2:
        raise InvalidParameters("dihedral order must be 1 or even")
    m = n // 2
    i = np.arange(m)[:, None, None, None]
    j = np.arange(2)[None, :, None, None]
    k = np.arange(m)[None, None, :, None]
    l = np.arange(2)[None, None, None, :]
    rot = (i + np.where(j == 0, k, -k)) % m
    table = rot + m * ((j + l) % 2)
    # reorder axes to (i, j) x (k, l) with index i + m*j
    table = table.transpose(1, 0, 3, 2).reshape(n, n)
    return _named(Group(table), f"D{n}")


def generalized_quaternion(order: int) -> Group:
    """``<a, b | a^(2m) = 1, b^2 = a^m, b^-1 a b = a^-1>`` of the given 2-power order."""
    pk = prime_power(order)
    if pk is None or pk[0] != 2 or pk[1] < 3:
        raise InvalidParameters("generalized quaternion order must be 2^n with n >= 3")
    m = order // 2
    half = m // 2
    table = np.empty((order, order), dtype=np.int64)
    for j in range(2):
        for i in range(m):
            for l in range(2):
                k = np.arange(m)
                if j == 0:
                    rot, s = (i + k) % m, l
                elif l == 0:
                    rot, s = (i - k) % m, 1
                else:
                    rot, s = (i - k + half) % m, 0
                table[i + m * j, m * l + k] = rot + m * s
    return _named(Group(table), f"Q{order}")


def symmetric(n: int, *, cap: int = SYMMETRIC_DEGREE_CAP) -> Group:
    if n < 1 or n > cap:
        raise InvalidParameters(f"symmetric degree must be in 1..{cap}")
    gens = []
    if n >= 2:
        gens.append([1, 0] + list(range(2, n)))
    if n >= 3:
        gens.append(list(range(1, n)) + [0])
    return from_permutations(PermutationSpec(n, gens), name=f"S{n}")


def alternating(n: int, *, cap: int = ALTERNATING_DEGREE_CAP) -> Group:
    """Generated by the 3-cycles ``(0 1 i)``."""
    if n < 1 or n > cap:
        raise InvalidParameters(f"alternating degree must be in 1..{cap}")
    gens = []
    for i in range(2, n):
        img = list(range(n))
        img[0], img[1], img[i] = 1, i, 0
        gens.append(img)
    return from_permutations(PermutationSpec(n, gens), name=f"A{n}")


def extraspecial_exponent_p(p: int) -> Group:
    """Heisenberg group mod p: upper unitriangular 3x3 matrices, stored as (a, b, c)."""
    if not is_prime(p) or p == 2:
        raise InvalidParameters("extraspecial exponent-p group needs an odd prime")
    # [[1,a,c],[0,1,b],[0,0,1]]; index = (a*p + b)*p + c
    a1, b1, c1, a2, b2, c2 = np.ix_(*[np.arange(p)] * 6)
    a = (a1 + a2) % p
    b = (b1 + b2) % p
    c = (c1 + c2 + a1 * b2) % p
    n = p ** 3
    return _named(Group(((a * p + b) * p + c).reshape(n, n)), f"He{p}")


def _cyclic_action(target: Group, images) -> np.ndarray:
    """Action array of a cyclic actor whose generator acts by the map ``images``."""
    images = np.asarray(images)
    maps = [np.arange(target.order)]
    while True:
        nxt = images[maps[-1]]
        if np.array_equal(nxt, maps[0]):
            return np.array(maps)
        maps.append(nxt)


def _extend_cyclic_action(maps: np.ndarray, actor_order: int) -> np.ndarray:
    if actor_order % len(maps):
        raise InvalidParameters("actor order is not a multiple of the action's order")
    return np.array([maps[h % len(maps)] for h in range(actor_order)])


def paper_example(p: int, *, with_central: bool = False):
    """Elementary abelian ``A`` of order ``p^p`` extended by ``C_{p^2}`` cyclically permuting a basis.

    Element ``(v, j)`` stands for ``v * x^j``; ``x`` has index 1 and ``x^p`` has
    index ``p``. With ``with_central=True`` the pair ``(group, x^p index)`` is returned.
    """
    if not is_prime(p):
        raise InvalidParameters("p must be prime")
    a = elementary_abelian(p, p)
    h = cyclic(p * p)
    # A's element index is the base-p number whose digits are the coordinates
    digits = np.array(list(itertools.product(range(p), repeat=p)))
    weights = p ** np.arange(p - 1, -1, -1)
    shifted = np.roll(digits, 1, axis=1) @ weights
    act = _extend_cyclic_action(_cyclic_action(a, shifted), h.order)
    group = semidirect_product(ActionSpec(h, a, act))
    _named(group, f"C{p}^{p}:C{p * p}")
    group.meta["x"] = 1
    group.meta["x_p"] = p
    if with_central:
        return group, p
    return group


def paper_example_quotient(p: int) -> Group:
    """The example group modulo ``<x^p>``."""
    from .structure import generated_subgroup

    g, xp = paper_example(p, with_central=True)
    sub = generated_subgroup(g, g.element_set([xp]))
    return _named(quotient(g, sub), f"(C{p}^{p}:C{p * p})/<x^{p}>")


def _reduce(poly: list[int], f: list[int], p: int) -> list[int]:
    # coefficient lists, lowest degree first; f monic of degree d
    d = len(f) - 1
    poly = [c % p for c in poly]
    for k in range(len(poly) - 1, d - 1, -1):
        c = poly[k]
        if c:
            for t in range(d + 1):
                poly[k - d + t] = (poly[k - d + t] - c * f[t]) % p
    return (poly + [0] * d)[:d]


def _mulmod(a: list[int], b: list[int], f: list[int], p: int) -> list[int]:
    prod = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            prod[i + j] += x * y
    return _reduce(prod, f, p)


def _powmod(a: list[int], e: int, f: list[int], p: int) -> list[int]:
    result = _reduce([1], f, p)
    while e:
        if e & 1:
            result = _mulmod(result, a, f, p)
        a = _mulmod(a, a, f, p)
        e >>= 1
    return result


def primitive_polynomial(p: int, degree: int) -> list[int]:
    """Smallest monic polynomial (lowest coefficient first) for which ``x`` generates ``GF(p^degree)*``.

    If ``x`` has multiplicative order ``p^d - 1`` modulo ``f`` then every nonzero
    residue is a unit, so the quotient ring is a field.
    """
    size = p ** degree - 1
    for coeffs in itertools.product(range(p), repeat=degree):
        f = list(coeffs) + [1]
        if f[0] == 0:
            continue
        one = _reduce([1], f, p)
        x = _reduce([0, 1], f, p)
        if _powmod(x, size, f, p) != one:
            continue
        if all(_powmod(x, size // r, f, p) != one for r in prime_factors(size)):
            return f
    raise InvalidParameters(f"no primitive polynomial of degree {degree} over GF({p})")


def frobenius_linear(p: int, alpha: int, q_power: int) -> Group:
    """``GF(p^alpha)`` (additive) extended by the multiplicative subgroup of order ``q_power``.

    The complement acts by field multiplication, so no nonidentity complement
    element fixes a nonzero vector.
    """
    if not is_prime(p) or alpha < 1:
        raise InvalidParameters("need a prime p and alpha >= 1")
    if prime_power(q_power) is None:
        raise InvalidParameters(f"{q_power} is not a prime power")
    size = p ** alpha - 1
    if size % q_power:
        raise InvalidParameters(f"{q_power} does not divide {p}^{alpha} - 1")
    f = primitive_polynomial(p, alpha)
    # multiplication by x on coefficient vectors (companion matrix)
    comp = np.zeros((alpha, alpha), dtype=np.int64)
    comp[np.arange(1, alpha), np.arange(alpha - 1)] = 1
    comp[:, alpha - 1] = [(-c) % p for c in f[:alpha]]
    scalar = np.eye(alpha, dtype=np.int64)
    for _ in range(size // q_power):
        scalar = (comp @ scalar) % p
    kernel = elementary_abelian(p, alpha)
    # kernel index = base-p number of the coordinate vector, first coordinate most significant
    vecs = np.array(list(itertools.product(range(p), repeat=alpha)))
    weights = p ** np.arange(alpha - 1, -1, -1)
    images = ((scalar @ vecs.T) % p).T @ weights
    act = _cyclic_action(kernel, images)
    if len(act) != q_power:
        raise InvalidParameters("scalar has the wrong multiplicative order")
    group = semidirect_product(ActionSpec(cyclic(q_power), kernel, act))
    return _named(group, f"Frob({p}^{alpha}:{q_power})")


def metacyclic(p: int, m: int, k: int, s: int) -> Group:
    """``C_{p^m} x| C_{p^k}`` where the generator acts as ``a -> a^(1 + p^s)``.

    For odd ``p`` and ``s >= 1`` the commutator subgroup lies in the ``p``-th
    powers, i.e. the group is powerful.
    """
    if not is_prime(p) or m < 1 or k < 1 or s < 1:
        raise InvalidParameters("need a prime p and m, k, s >= 1")
    target = cyclic(p ** m)
    unit = 1 + p ** s
    images = (np.arange(p ** m) * unit) % (p ** m)
    maps = _cyclic_action(target, images)
    if p ** k % len(maps):
        raise InvalidParameters("automorphism order does not divide the acting cyclic group")
    act = _extend_cyclic_action(maps, p ** k)
    group = semidirect_product(ActionSpec(cyclic(p ** k), target, act))
    return _named(group, f"M({p};{m},{k},{s})")


@dataclass(frozen=True)
class FamilyDescriptor:
    family: str
    parameters: tuple[int, ...] = field(default_factory=tuple)

    def to_json(self) -> dict:
        return {"family": self.family, "parameters": list(self.parameters)}

    @classmethod
    def from_json(cls, payload: dict) -> FamilyDescriptor:
        if not isinstance(payload, dict) or "family" not in payload:
            raise InvalidParameters(f"bad manifest record: {payload!r}")
        params = payload.get("parameters", [])
        if isinstance(params, int):
            params = [params]
        return cls(str(payload["family"]), tuple(int(x) for x in params))

    def label(self) -> str:
        return f"{self.family}({','.join(map(str, self.parameters))})"


def _unpack(name: str, params: tuple[int, ...], arity: int) -> tuple[int, ...]:
    if len(params) != arity:
        raise InvalidParameters(f"{name} takes {arity} parameter(s), got {len(params)}")
    return params


FAMILIES = {
    "cyclic": lambda ps: cyclic(*_unpack("cyclic", ps, 1)),
    "abelianFromPartition": lambda ps: abelian(ps),
    "dihedral": lambda ps: dihedral(*_unpack("dihedral", ps, 1)),
    "generalizedQuaternion": lambda ps: generalized_quaternion(*_unpack("generalizedQuaternion", ps, 1)),
    "symmetric": lambda ps: symmetric(*_unpack("symmetric", ps, 1)),
    "alternating": lambda ps: alternating(*_unpack("alternating", ps, 1)),
    "elementaryAbelian": lambda ps: elementary_abelian(*_unpack("elementaryAbelian", ps, 2)),
    "extraspecialExponentP": lambda ps: extraspecial_exponent_p(*_unpack("extraspecialExponentP", ps, 1)),
    "paperExample": lambda ps: paper_example(*_unpack("paperExample", ps, 1)),
    "paperExampleQuotient": lambda ps: paper_example_quotient(*_unpack("paperExampleQuotient", ps, 1)),
    "frobeniusLinear": lambda ps: frobenius_linear(*_unpack("frobeniusLinear", ps, 3)),
    "metacyclic": lambda ps: metacyclic(*_unpack("metacyclic", ps, 4)),
}


def build(descriptor: FamilyDescriptor) -> Group:
    try:
        factory = FAMILIES[descriptor.family]
    except KeyError:
        raise InvalidParameters(f"unknown family {descriptor.family!r}") from None
    group = factory(descriptor.parameters)
    group.meta["family"] = descriptor.family
    group.meta["parameters"] = list(descriptor.parameters)
    return group


__all__ = [
    "FAMILIES",
    "FamilyDescriptor",
    "abelian",
    "alternating",
    "build",
    "cyclic",
    "dihedral",
    "elementary_abelian",
    "extraspecial_exponent_p",
    "frobenius_linear",
    "generalized_quaternion",
    "metacyclic",
    "paper_example",
    "paper_example_quotient",
    "primitive_polynomial",
    "symmetric",
]
