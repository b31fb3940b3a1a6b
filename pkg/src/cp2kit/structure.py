"""Subgroup machinery: closures, conjugation, Sylow, cores, lattice, series."""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, field

import numpy as np

from .elementset import ElementSet
from .errors import EvenPrime, NotAPGroup, ThresholdExceeded
from .group import Group
from .numtheory import is_prime, p_part, prime_power

LATTICE_MAX_ORDER = 512
LATTICE_MAX_SUBGROUPS = 4000


def lattice_max_subgroups() -> int:
    env = os.environ.get("CP2KIT_LATTICE_MAX_SUBGROUPS")
    return int(env) if env else LATTICE_MAX_SUBGROUPS


def _close(g: Group, base: np.ndarray, gens) -> np.ndarray:
    """Mask of the subgroup generated by the subgroup ``base`` (index array) and ``gens``.

    The result is grown as a union of right cosets ``base * x``; it is closed
    once every coset representative times every generator lands inside. So
    ``gens`` must include generators of ``base`` itself unless every extra
    generator normalizes it.
    """
    table = g.table
    mask = np.zeros(g.order, dtype=bool)
    mask[base] = True
    gens = np.asarray(gens, dtype=np.int64)
    if gens.size == 0:
        return mask
    frontier = np.array([0])
    while frontier.size:
        ys = table[np.ix_(frontier, gens)].ravel()
        ys = np.unique(ys[~mask[ys]])
        if ys.size == 0:
            break
        mask[table[np.ix_(base, ys)]] = True
        frontier = ys
    return mask


def generated_subgroup(g: Group, seed: ElementSet) -> ElementSet:
    gens = [a for a in seed if a != 0]
    return ElementSet.from_mask(_close(g, np.array([0]), gens))


def join(g: Group, a: ElementSet, b: ElementSet) -> ElementSet:
    """Smallest subgroup containing both subgroups."""
    if b <= a:
        return a
    if a <= b:
        return b
    return ElementSet.from_mask(_close(g, a.indices(), np.concatenate([a.indices(), b.indices()])))


def cyclic_subgroup(g: Group, a: int) -> ElementSet:
    members = [0]
    x = a
    while x != 0:
        members.append(x)
        x = g.mul(x, a)
    return g.element_set(members)


def is_subgroup(g: Group, s: ElementSet) -> bool:
    return g.is_closed(s)


def is_normal(g: Group, s: ElementSet) -> bool:
    return g.is_normal(s)


def conjugate(g: Group, s: ElementSet, x: int) -> ElementSet:
    """``x^-1 s x``."""
    return g.element_set(g.conjugation[x, s.indices()])


def conjugates(g: Group, s: ElementSet) -> list[ElementSet]:
    """Distinct conjugates of ``s``, in order of first appearance over ``x = 0, 1, ...``."""
    images = g.conjugation[:, s.indices()]
    masks = np.zeros((g.order, g.order), dtype=bool)
    masks[np.arange(g.order)[:, None], images] = True
    seen: dict[int, ElementSet] = {}
    for row in masks:
        es = ElementSet.from_mask(row)
        seen.setdefault(es.bits, es)
    return list(seen.values())


def normal_closure(g: Group, s: ElementSet) -> ElementSet:
    images = np.unique(g.conjugation[:, s.indices()])
    return generated_subgroup(g, g.element_set(images))


def normalizer(g: Group, s: ElementSet) -> ElementSet:
    mask = s.mask()
    inside = mask[g.conjugation[:, s.indices()]].all(axis=1)
    return ElementSet.from_mask(inside)


def core(g: Group, s: ElementSet) -> ElementSet:
    """Intersection of all conjugates of ``s``."""
    bits = s.bits
    for c in conjugates(g, s):
        bits &= c.bits
    return ElementSet(bits, g.order)


def centralizer(g: Group, a: int) -> ElementSet:
    return ElementSet.from_mask(g.table[a, :] == g.table[:, a])


def center(g: Group) -> ElementSet:
    return ElementSet.from_mask((g.table == g.table.T).all(axis=1))


def conjugacy_classes(g: Group) -> list[ElementSet]:
    """Classes ordered by their smallest member."""
    seen = np.zeros(g.order, dtype=bool)
    classes = []
    for a in range(g.order):
        if seen[a]:
            continue
        members = np.unique(g.conjugation[:, a])
        seen[members] = True
        classes.append(g.element_set(members))
    return classes


def is_cyclic(g: Group, s: ElementSet | None = None) -> bool:
    if s is None:
        return bool((g.element_orders == g.order).any())
    return bool((g.element_orders[s.indices()] == len(s)).any())


def is_p_group_set(g: Group, s: ElementSet) -> bool:
    """True when ``|s|`` is 1 or a prime power."""
    return len(s) == 1 or prime_power(len(s)) is not None


def sylow(g: Group, p: int) -> ElementSet:
    """A Sylow ``p``-subgroup, grown one factor of ``p`` at a time inside normalizers.

    Starts from the cyclic subgroup of the smallest-index nonidentity ``p``-element;
    while short of the full ``p``-part, extends by the smallest ``x`` in the
    normalizer but outside the current subgroup with ``x^p`` inside it.
    """
    if not is_prime(p) or g.order % p:
        raise ValueError(f"{p} is not a prime dividing {g.order}")
    target = p_part(g.order, p)
    p_elements = [a for a in range(1, g.order)
                  if (pk := prime_power(int(g.element_orders[a]))) is not None and pk[0] == p]
    current = cyclic_subgroup(g, p_elements[0])
    pow_p = g.power_map(p)
    while len(current) < target:
        cmask = current.mask()
        norm = normalizer(g, current).mask()
        candidates = norm & ~cmask & cmask[pow_p]
        x = int(np.argmax(candidates))
        if not candidates[x]:
            raise RuntimeError("normalizer growth stalled; Sylow theory violated")
        # x normalizes current, so current*<x> is already a subgroup
        current = ElementSet.from_mask(_close(g, current.indices(), [x]))
    return current


def sylow_count(g: Group, p: int) -> int:
    return len(conjugates(g, sylow(g, p)))


def p_core(g: Group, p: int) -> ElementSet:
    """Largest normal ``p``-subgroup."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if g.order % p:
        return g.trivial()
    return core(g, sylow(g, p))


def fitting(g: Group) -> ElementSet:
    seed = g.trivial()
    for p in g.prime_factors:
        seed = seed | p_core(g, p)
    return generated_subgroup(g, seed)


def commutator_subgroup(g: Group) -> ElementSet:
    return generated_subgroup(g, g.element_set(np.unique(g.commutators)))


def power_subgroup(g: Group, k: int) -> ElementSet:
    """Subgroup generated by all ``k``-th powers."""
    return generated_subgroup(g, g.element_set(np.unique(g.power_map(k))))


def exponent(g: Group) -> int:
    return g.exponent()


@dataclass
class SeriesReport:
    kind: str
    terms: list[ElementSet]
    stabilized: bool = True

    @property
    def last(self) -> ElementSet:
        return self.terms[-1]

    def sizes(self) -> list[int]:
        return [len(t) for t in self.terms]


def upper_central_series(g: Group) -> SeriesReport:
    terms = [g.trivial()]
    comm = g.commutators
    while True:
        zmask = terms[-1].mask()
        nxt = ElementSet.from_mask(zmask[comm].all(axis=1))
        if nxt == terms[-1]:
            return SeriesReport("upperCentral", terms)
        terms.append(nxt)


def derived_series(g: Group) -> SeriesReport:
    terms = [g.whole()]
    comm = g.commutators
    while True:
        idx = terms[-1].indices()
        nxt = generated_subgroup(g, g.element_set(np.unique(comm[np.ix_(idx, idx)])))
        if nxt == terms[-1]:
            return SeriesReport("derived", terms)
        terms.append(nxt)


def is_nilpotent(g: Group) -> bool:
    return upper_central_series(g).last.is_full()


def is_solvable(g: Group) -> bool:
    return derived_series(g).last.is_trivial()


def is_powerful(g: Group, p: int) -> bool:
    """``G' <= G^p`` for an odd-order ``p``-group."""
    if p == 2:
        raise EvenPrime("powerfulness is checked here for odd primes only")
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if g.order > 1 and g.prime_factors != (p,):
        raise NotAPGroup(f"group of order {g.order} is not a {p}-group")
    return commutator_subgroup(g) <= power_subgroup(g, p)


@dataclass
class SubgroupLattice:
    """All subgroups, sorted by size and then by member list."""

    subgroups: list[ElementSet]
    maximal: list[bool] = field(default_factory=list)
    normal: list[bool] = field(default_factory=list)
    class_count: int = 0

    def __len__(self) -> int:
        return len(self.subgroups)

    def maximal_subgroups(self) -> list[ElementSet]:
        return [s for s, m in zip(self.subgroups, self.maximal) if m]

    def normal_subgroups(self) -> list[ElementSet]:
        return [s for s, m in zip(self.subgroups, self.normal) if m]


def subgroup_lattice(g: Group, *, max_order: int = LATTICE_MAX_ORDER,
                     max_subgroups: int | None = None) -> SubgroupLattice:
    """Every subgroup, found by closing the cyclic subgroups under joins.

    Works on conjugacy classes of subgroups. A class representative ``H`` is
    joined with a cyclic ``p``-power subgroup ``<c>`` only when ``<c^p>`` already
    lies in ``H`` (any subgroup can be built up this way), and only with one
    cyclic subgroup per orbit of the normalizer of ``H`` (those joins are
    conjugate). ``H`` is maximal exactly when every such join is the whole group.
    """
    if g.order > max_order:
        raise ThresholdExceeded(f"lattice refused for order {g.order} > {max_order}")
    limit = lattice_max_subgroups() if max_subgroups is None else max_subgroups
    n = g.order
    whole_bits = (1 << n) - 1
    conj = g.conjugation

    # cyclic subgroups of prime-power order, each with one generator
    elem_cyc = np.full(n, -1, dtype=np.int64)
    cyc_bits: list[int] = []
    cyc_gen: list[int] = []
    cyc_pred: list[int] = []
    cyc_idx: list[np.ndarray] = []
    for a in range(1, n):
        if elem_cyc[a] >= 0:
            continue
        o = int(g.element_orders[a])
        pk = prime_power(o)
        if pk is None:
            continue
        c = cyclic_subgroup(g, a)
        same = c.indices()[g.element_orders[c.indices()] == o]
        elem_cyc[same] = len(cyc_bits)
        cyc_bits.append(c.bits)
        cyc_idx.append(c.indices())
        cyc_gen.append(a)
        cyc_pred.append(cyclic_subgroup(g, g.power(a, pk[0])).bits)
    cyc_gen_arr = np.array(cyc_gen, dtype=np.int64)

    class_of: dict[int, int] = {}
    reps: list[tuple[int, np.ndarray, list[int]]] = []
    rep_maximal: list[bool] = []

    def add_class(es: ElementSet, gens: list[int]) -> None:
        cid = len(reps)
        for conj_set in conjugates(g, es):
            class_of[conj_set.bits] = cid
        if len(class_of) > limit:
            raise ThresholdExceeded(f"lattice has more than {limit} subgroups")
        reps.append((es.bits, es.indices(), gens))
        rep_maximal.append(False)
        work.append(cid)

    work: list[int] = []
    add_class(g.trivial(), [])
    while work:
        cid = work.pop()
        hbits, hidx, hgens = reps[cid]
        cands = [i for i in range(len(cyc_bits))
                 if cyc_bits[i] & hbits != cyc_bits[i] and cyc_pred[i] & hbits == cyc_pred[i]]
        norm_mask = None
        if cands:
            norm_mask = normalizer(g, ElementSet(hbits, n)).mask()
            cands_arr = np.array(cands)
            orbit_min = elem_cyc[conj[np.ix_(np.flatnonzero(norm_mask), cyc_gen_arr[cands_arr])]].min(axis=0)
            cands = cands_arr[orbit_min == cands_arr].tolist()
        all_whole = hbits != whole_bits
        for i in cands:
            c = cyc_gen[i]
            gens = hgens + [c]
            if norm_mask[c]:
                # c normalizes H, so the join is H<c>
                mask = np.zeros(n, dtype=bool)
                mask[g.table[hidx[:, None], cyc_idx[i][None, :]]] = True
                joined = ElementSet.from_mask(mask)
            else:
                joined = ElementSet.from_mask(_close(g, hidx, gens))
            if joined.bits != whole_bits:
                all_whole = False
            if joined.bits not in class_of:
                add_class(joined, gens)
        rep_maximal[cid] = all_whole

    class_sizes: dict[int, int] = {}
    for cid in class_of.values():
        class_sizes[cid] = class_sizes.get(cid, 0) + 1
    subgroups = sorted((ElementSet(b, n) for b in class_of), key=ElementSet.sort_key)
    return SubgroupLattice(
        subgroups=subgroups,
        maximal=[rep_maximal[class_of[s.bits]] for s in subgroups],
        normal=[class_sizes[class_of[s.bits]] == 1 for s in subgroups],
        class_count=len(reps),
    )


def frattini(g: Group, *, max_order: int = LATTICE_MAX_ORDER,
             max_subgroups: int | None = None) -> ElementSet:
    """Intersection of the maximal subgroups (the whole group if there are none)."""
    lattice = subgroup_lattice(g, max_order=max_order, max_subgroups=max_subgroups)
    bits = (1 << g.order) - 1
    for s in lattice.maximal_subgroups():
        bits &= s.bits
    return ElementSet(bits, g.order)


def lcm_of_orders(g: Group, s: ElementSet) -> int:
    return math.lcm(*np.unique(g.element_orders[s.indices()]).tolist())
