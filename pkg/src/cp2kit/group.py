"""Finite groups as dense Cayley tables.

Every group is stored as an ``n x n`` integer table over element indices with
the identity at index 0. Inverses and element orders are computed once at
construction. Groups are treated as immutable; lazily built auxiliary tables
(conjugation, commutators) are cached on the instance.
"""

from __future__ import annotations

import json
import math
import os
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Any, Sequence

import numpy as np

from .elementset import ElementSet
from .errors import (
    ClosureCapExceeded,
    InvalidAction,
    NotAGroup,
    NotASubgroup,
    NotNormal,
)
from .numtheory import prime_factors

DEFAULT_CLOSURE_CAP = 20160
FULL_ASSOCIATIVITY_LIMIT = 512
SAMPLED_TRIPLES = 1_000_000


def closure_cap() -> int:
    env = os.environ.get("CP2KIT_CLOSURE_CAP")
    return int(env) if env else DEFAULT_CLOSURE_CAP


class Group:
    """A finite group given by its multiplication table.

    ``table[a, b]`` is the index of ``a*b``. Index 0 is the identity. ``labels``
    optionally maps indices back to the objects they were built from
    (permutation tuples, pairs for products, cosets for quotients).
    """

    def __init__(self, table: np.ndarray, *, labels: Sequence[Any] | None = None,
                 meta: dict[str, Any] | None = None) -> None:
        table = np.ascontiguousarray(table, dtype=np.int32)
        n = table.shape[0]
        self.order = n
        self.table = table
        self.table.setflags(write=False)
        self.labels = list(labels) if labels is not None else None
        self.meta = dict(meta or {})

        inv = np.argmin(table, axis=1).astype(np.int32)
        inv.setflags(write=False)
        self.inverse = inv
        self.element_orders = _orders(table)
        self.element_orders.setflags(write=False)
        self.prime_factors = prime_factors(n)

    def __repr__(self) -> str:
        name = self.meta.get("name")
        tag = f" {name}" if name else ""
        return f"<Group{tag} of order {self.order}>"

    def __len__(self) -> int:
        return self.order

    def mul(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    def element_order(self, a: int) -> int:
        if not 0 <= a < self.order:
            raise IndexError(f"element {a} out of range for order {self.order}")
        return int(self.element_orders[a])

    def order_spectrum(self) -> set[int]:
        return set(np.unique(self.element_orders).tolist())

    def exponent(self) -> int:
        return math.lcm(*self.order_spectrum())

    def power(self, a: int, k: int) -> int:
        return int(self.power_map(k)[a])

    def power_map(self, k: int) -> np.ndarray:
        """Array whose entry ``x`` is the index of ``x**k`` (``k`` may be negative)."""
        n = self.order
        base = np.arange(n, dtype=np.int32)
        if k < 0:
            base = self.inverse.copy()
            k = -k
        result = np.zeros(n, dtype=np.int32)
        while k:
            if k & 1:
                result = self.table[result, base]
            base = self.table[base, base]
            k >>= 1
        return result

    def index_of(self, label: Any) -> int:
        if self.labels is None:
            raise LookupError("group carries no element labels")
        return self.labels.index(label)

    def is_p_group(self) -> bool:
        return len(self.prime_factors) == 1

    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.table, self.table.T))

    @cached_property
    def conjugation(self) -> np.ndarray:
        """``conjugation[g, a]`` is the index of ``g^-1 a g``."""
        left = self.table[self.inverse, :]
        conj = self.table[left, np.arange(self.order)[:, None]]
        conj.setflags(write=False)
        return conj

    @cached_property
    def commutators(self) -> np.ndarray:
        """``commutators[a, b]`` is the index of ``a^-1 b^-1 a b``."""
        inv = self.inverse
        left = self.table[inv[:, None], inv[None, :]]
        comm = self.table[left, self.table]
        comm.setflags(write=False)
        return comm

    def element_set(self, indices) -> ElementSet:
        return ElementSet.from_indices(indices, self.order)

    def whole(self) -> ElementSet:
        return ElementSet.full(self.order)

    def trivial(self) -> ElementSet:
        return ElementSet.identity(self.order)

    def is_closed(self, s: ElementSet) -> bool:
        """True when ``s`` is a nonempty set closed under multiplication (so a subgroup)."""
        idx = s.indices()
        if idx.size == 0:
            return False
        mask = s.mask()
        return bool(mask[self.table[np.ix_(idx, idx)]].all())

    def is_normal(self, s: ElementSet) -> bool:
        if not self.is_closed(s):
            raise NotASubgroup("set is not closed under multiplication")
        return bool(s.mask()[self.conjugation[:, s.indices()]].all())

    def validate(self, *, full: bool | None = None, seed: int = 0) -> str:
        """Check identity, inverses and associativity; return the associativity mode used."""
        _check_latin(self.table)
        if not (np.array_equal(self.table[0], np.arange(self.order))
                and np.array_equal(self.table[:, 0], np.arange(self.order))):
            raise NotAGroup("index 0 is not the identity")
        if full is None:
            full = self.order <= FULL_ASSOCIATIVITY_LIMIT
        return _check_associative(self.table, full=full, seed=seed)


def _orders(table: np.ndarray) -> np.ndarray:
    n = table.shape[0]
    ar = np.arange(n, dtype=np.int32)
    orders = np.zeros(n, dtype=np.int64)
    cur = ar.copy()
    k = 1
    while True:
        hit = (cur == 0) & (orders == 0)
        orders[hit] = k
        if orders.all():
            return orders
        if k > n:
            raise NotAGroup("element powers never reach the identity")
        cur = table[cur, ar]
        k += 1


def _check_latin(table: np.ndarray) -> None:
    n = table.shape[0]
    target = np.arange(n)
    if not (np.sort(table, axis=1) == target).all():
        raise NotAGroup("a row of the table is not a permutation (missing inverses)")
    if not (np.sort(table, axis=0) == target[:, None]).all():
        raise NotAGroup("a column of the table is not a permutation (missing inverses)")


def _check_associative(table: np.ndarray, *, full: bool, seed: int = 0) -> str:
    n = table.shape[0]
    if full:
        for a in range(n):
            # (a*b)*c against a*(b*c) for all b, c
            if not np.array_equal(table[table[a]], table[a][table]):
                raise NotAGroup(f"associativity fails for left factor {a}")
        return "full"
    rng = np.random.default_rng(seed)
    a, b, c = rng.integers(0, n, size=(3, SAMPLED_TRIPLES))
    if not np.array_equal(table[table[a, b], c], table[a, table[b, c]]):
        raise NotAGroup("associativity fails on a sampled triple")
    return "sampled"


def from_cayley_table(raw, *, name: str | None = None) -> Group:
    """Build a validated group from an untrusted Cayley table.

    The identity need not sit at index 0 in ``raw``; it is moved there and the
    remaining indices keep their relative order.
    """
    try:
        table = np.asarray(raw, dtype=np.int64)
    except (TypeError, ValueError) as exc:
        raise NotAGroup(f"table is not a rectangular integer array: {exc}") from None
    if table.ndim != 2 or table.shape[0] != table.shape[1] or table.shape[0] == 0:
        raise NotAGroup("table must be a nonempty square array")
    n = table.shape[0]
    if table.min() < 0 or table.max() >= n:
        raise NotAGroup("table entries out of range")
    ar = np.arange(n)
    ident = [e for e in range(n)
             if np.array_equal(table[e], ar) and np.array_equal(table[:, e], ar)]
    if not ident:
        raise NotAGroup("no identity element")
    e = ident[0]
    perm = np.array([e] + [x for x in range(n) if x != e])
    pos = np.empty(n, dtype=np.int64)
    pos[perm] = ar
    relabelled = pos[table[np.ix_(perm, perm)]]
    _check_latin(relabelled)
    group = Group(relabelled, meta={"name": name} if name else None)
    group.meta["associativity"] = group.validate()
    group.meta["source"] = "cayley"
    if e != 0:
        group.meta["renumbered_identity_from"] = int(e)
    return group


@dataclass
class PermutationSpec:
    """Generators of a permutation group on ``{0, ..., degree-1}``.

    Each generator is its image list: point ``i`` goes to ``gen[i]``.
    """

    degree: int
    generators: list[list[int]] = field(default_factory=list)

    def __post_init__(self) -> None:
        if self.degree < 1:
            raise NotAGroup("degree must be positive")
        pts = list(range(self.degree))
        for gen in self.generators:
            if sorted(gen) != pts:
                raise NotAGroup(f"generator {gen} is not a bijection on {self.degree} points")
        self.generators = [list(map(int, g)) for g in self.generators]


def from_permutations(spec: PermutationSpec, *, cap: int | None = None,
                      name: str | None = None) -> Group:
    """Generate the permutation group spanned by ``spec.generators``.

    Products compose left to right: ``(a*b)[i] = b[a[i]]``. Elements are
    numbered in breadth-first order from the identity, multiplying on the
    right by generators in the listed order.
    """
    cap = closure_cap() if cap is None else cap
    identity = tuple(range(spec.degree))
    gens = [tuple(g) for g in spec.generators]
    index = {identity: 0}
    elements = [identity]
    parent = [-1]
    via = [-1]
    right = [[] for _ in gens]
    queue = deque([0])
    while queue:
        i = queue.popleft()
        x = elements[i]
        for k, g in enumerate(gens):
            y = tuple(g[v] for v in x)
            j = index.get(y)
            if j is None:
                j = len(elements)
                if j >= cap:
                    raise ClosureCapExceeded(f"generated group exceeds {cap} elements")
                index[y] = j
                elements.append(y)
                parent.append(i)
                via.append(k)
                queue.append(j)
            right[k].append(j)
    n = len(elements)
    # right[k][i] was appended in BFS pop order, which is index order
    right_mul = [np.array(r, dtype=np.int32) for r in right]
    table = np.empty((n, n), dtype=np.int32)
    table[:, 0] = np.arange(n)
    for j in range(1, n):
        # a * elem_j = (a * elem_parent) * gen
        table[:, j] = right_mul[via[j]][table[:, parent[j]]]
    group = Group(table, labels=elements, meta={"name": name} if name else None)
    group.meta["source"] = "permutations"
    group.meta["associativity"] = "by-construction"
    return group


def direct_product(a: Group, b: Group, *, cap: int | None = None) -> Group:
    """Direct product; the pair ``(x, y)`` gets index ``x*|b| + y``."""
    cap = closure_cap() if cap is None else cap
    na, nb = a.order, b.order
    if na * nb > cap:
        raise ClosureCapExceeded(f"direct product of order {na * nb} exceeds {cap}")
    ta = a.table.astype(np.int64)
    tb = b.table.astype(np.int64)
    table = ta[:, None, :, None] * nb + tb[None, :, None, :]
    labels = [(x, y) for x in range(na) for y in range(nb)]
    group = Group(table.reshape(na * nb, na * nb), labels=labels)
    group.meta.update(source="direct", associativity="by-construction")
    return group


@dataclass
class ActionSpec:
    """Action of ``actor`` on ``target`` by automorphisms.

    ``action[h][k]`` is the image of target element ``k`` under actor element
    ``h``; it must satisfy ``action[h1*h2] = action[h1] o action[h2]``.
    """

    actor: Group
    target: Group
    action: Any

    def as_array(self) -> np.ndarray:
        arr = np.asarray(self.action, dtype=np.int64)
        if arr.shape != (self.actor.order, self.target.order):
            raise InvalidAction(
                f"action must have shape {(self.actor.order, self.target.order)}, got {arr.shape}")
        return arr

    def validate(self) -> np.ndarray:
        act = self.as_array()
        tn, th = self.target.table, self.actor.table
        ar = np.arange(self.target.order)
        if not (np.sort(act, axis=1) == ar).all():
            raise InvalidAction("an action map is not a bijection")
        if not np.array_equal(act[0], ar):
            raise InvalidAction("identity does not act trivially")
        for h in range(self.actor.order):
            phi = act[h]
            if not np.array_equal(phi[tn], tn[np.ix_(phi, phi)]):
                raise InvalidAction(f"action of {h} is not multiplicative")
        for h1 in range(self.actor.order):
            if not np.array_equal(act[th[h1]], act[h1][act]):
                raise InvalidAction(f"action is not a homomorphism at {h1}")
        return act


def semidirect_product(spec: ActionSpec, *, cap: int | None = None) -> Group:
    """``N x| H`` with ``(n1,h1)(n2,h2) = (n1 * h1(n2), h1 h2)``.

    The pair ``(n, h)`` gets index ``n*|H| + h``.
    """
    cap = closure_cap() if cap is None else cap
    nn, nh = spec.target.order, spec.actor.order
    if nn * nh > cap:
        raise ClosureCapExceeded(f"semidirect product of order {nn * nh} exceeds {cap}")
    act = spec.validate()
    tn = spec.target.table.astype(np.int64)
    th = spec.actor.table.astype(np.int64)
    n1 = np.arange(nn)[:, None, None, None]
    h1 = np.arange(nh)[None, :, None, None]
    n2 = np.arange(nn)[None, None, :, None]
    h2 = np.arange(nh)[None, None, None, :]
    table = tn[n1, act[h1, n2]] * nh + th[h1, h2]
    labels = [(x, y) for x in range(nn) for y in range(nh)]
    group = Group(table.reshape(nn * nh, nn * nh), labels=labels)
    group.meta.update(source="semidirect", associativity="by-construction")
    return group


def quotient(g: Group, n: ElementSet) -> Group:
    """Quotient by a normal subgroup; cosets are numbered by their smallest member."""
    if not g.is_closed(n):
        raise NotASubgroup("quotient requires a subgroup")
    if not g.is_normal(n):
        raise NotNormal("subgroup is not normal")
    nidx = n.indices()
    reps = g.table[:, nidx].min(axis=1)
    uniq = np.unique(reps)
    coset_id = np.empty(g.order, dtype=np.int64)
    coset_id[uniq] = np.arange(uniq.size)
    coset_of = coset_id[reps]
    table = coset_of[g.table[np.ix_(uniq, uniq)]]
    group = Group(table, labels=[int(r) for r in uniq])
    group.meta.update(source="quotient", associativity="by-construction")
    group.meta["projection"] = coset_of
    return group


def induced_subgroup(g: Group, s: ElementSet) -> Group:
    """The subgroup ``s`` as a standalone group; labels are the parent indices."""
    if not g.is_closed(s):
        raise NotASubgroup("set is not closed under multiplication")
    members = s.indices()
    local = np.full(g.order, -1, dtype=np.int64)
    local[members] = np.arange(members.size)
    table = local[g.table[np.ix_(members, members)]]
    group = Group(table, labels=members.tolist())
    group.meta.update(source="subgroup", associativity="by-construction")
    return group


def load_group(payload: dict[str, Any] | str | Path) -> Group:
    """Read a Cayley JSON (``order``/``table``) or permutation JSON (``degree``/``generators``)."""
    if isinstance(payload, (str, Path)):
        try:
            payload = json.loads(Path(payload).read_text(encoding="utf-8"))
        except json.JSONDecodeError as exc:
            raise NotAGroup(f"invalid JSON: {exc}") from None
    if not isinstance(payload, dict):
        raise NotAGroup("group file must hold a JSON object")
    if "table" in payload:
        table = payload["table"]
        if "order" in payload and payload["order"] != len(table):
            raise NotAGroup(f"order {payload['order']} does not match table size {len(table)}")
        return from_cayley_table(table, name=payload.get("name"))
    if "generators" in payload:
        if "degree" not in payload:
            raise NotAGroup("permutation file needs a degree")
        spec = PermutationSpec(int(payload["degree"]), list(payload["generators"]))
        return from_permutations(spec, name=payload.get("name"))
    raise NotAGroup("expected either a 'table' or a 'generators' field")


def cayley_json(g: Group) -> dict[str, Any]:
    return {"order": g.order, "table": g.table.tolist()}

