"""Class predicates: the element-order inequality and its structural characterizations.

A group is in CP2 when ``o(xy) <= max(o(x), o(y))`` for every pair of
elements. ``cp2_oracle`` tests that inequality pair by pair; the other
routes here decide the same question through normal subgroups of bounded
element order, through p-group closure and Frobenius structure, and are
expected to agree with the oracle on every input.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import structure as st
from .elementset import ElementSet
from .errors import NotAPGroup, PreconditionNotCP2
from .group import Group, induced_subgroup, quotient
from .numtheory import is_prime, prime_power

PGROUP_OMEGA = "pGroupOmega"
FROBENIUS_PQ = "frobeniusPQ"
NOT_CP2 = "notCP2"


@dataclass(frozen=True)
class ViolationWitness:
    x: int
    y: int
    oxy: int
    bound: int

    def to_json(self) -> dict:
        return {"x": self.x, "y": self.y, "oxy": self.oxy, "bound": self.bound}


@dataclass
class ClassVerdict:
    cp1: bool
    cp: bool
    cn: bool
    cp2: bool
    witness: Optional[ViolationWitness] = None

    def to_json(self) -> dict:
        return {
            "cp1": self.cp1,
            "cp": self.cp,
            "cn": self.cn,
            "cp2": self.cp2,
            "witness": self.witness.to_json() if self.witness else None,
        }


@dataclass
class FrobeniusDecomposition:
    kernel: ElementSet
    complement: ElementSet
    p: int
    q: int
    alpha: int
    beta: int
    complement_cyclic: bool

    def to_json(self, members: bool = False) -> dict:
        out = {
            "p": self.p,
            "q": self.q,
            "alpha": self.alpha,
            "beta": self.beta,
            "kernelOrder": len(self.kernel),
            "complementOrder": len(self.complement),
            "complementCyclic": self.complement_cyclic,
        }
        if members:
            out["kernel"] = self.kernel.indices().tolist()
            out["complement"] = self.complement.indices().tolist()
        return out


@dataclass
class TheoremDOutcome:
    branch: str
    prime: Optional[int] = None
    decomposition: Optional[FrobeniusDecomposition] = None
    omega_evidence: Optional[list[tuple[int, bool]]] = None

    @property
    def in_cp2(self) -> bool:
        return self.branch != NOT_CP2

    def to_json(self, members: bool = False) -> dict:
        return {
            "branch": self.branch,
            "prime": self.prime,
            "decomposition": self.decomposition.to_json(members) if self.decomposition else None,
            "omegaEvidence": ([[n, closed] for n, closed in self.omega_evidence]
                              if self.omega_evidence is not None else None),
        }


def cp2_oracle(g: Group) -> tuple[bool, Optional[ViolationWitness]]:
    """Scan every ordered pair; return the first violation in x-major order."""
    orders = g.element_orders
    bound = np.maximum(orders[:, None], orders[None, :])
    bad = orders[g.table] > bound
    if not bad.any():
        return True, None
    x, y = np.unravel_index(int(np.argmax(bad)), bad.shape)
    x, y = int(x), int(y)
    return False, ViolationWitness(x, y, int(orders[g.table[x, y]]), int(bound[x, y]))


def is_cp2(g: Group) -> bool:
    return cp2_oracle(g)[0]


def witness_is_valid(g: Group, w: ViolationWitness) -> bool:
    o = g.element_orders
    oxy = int(o[g.table[w.x, w.y]])
    bound = max(int(o[w.x]), int(o[w.y]))
    return oxy == w.oxy and bound == w.bound and oxy > bound


def order_bounded_set(g: Group, alpha: int) -> ElementSet:
    """Elements of order at most ``alpha``."""
    return ElementSet.from_mask(g.element_orders <= alpha)


def cp2_via_theorem_a(g: Group) -> bool:
    """Every set of elements of order at most ``a`` (``a`` an element order) is a normal subgroup."""
    for alpha in sorted(g.order_spectrum()):
        s = order_bounded_set(g, alpha)
        if not g.is_closed(s) or not g.is_normal(s):
            return False
    return True


def is_cp(g: Group) -> bool:
    return all(o == 1 or prime_power(o) is not None for o in g.order_spectrum())


def is_cp1(g: Group) -> bool:
    return all(o == 1 or is_prime(o) for o in g.order_spectrum())


def is_cn(g: Group) -> bool:
    """Centralizers of nonidentity elements are nilpotent.

    Conjugate elements have conjugate (isomorphic) centralizers, so one
    representative per conjugacy class is enough.
    """
    seen: set[int] = set()
    for cls in st.conjugacy_classes(g)[1:]:
        cent = st.centralizer(g, int(cls.indices()[0]))
        if cent.bits in seen:
            continue
        seen.add(cent.bits)
        if not st.is_nilpotent(induced_subgroup(g, cent)):
            return False
    return True


def classify(g: Group) -> ClassVerdict:
    cp2, witness = cp2_oracle(g)
    return ClassVerdict(cp1=is_cp1(g), cp=is_cp(g), cn=is_cn(g), cp2=cp2, witness=witness)


def order_map_property(g: Group) -> bool:
    """For CP2 groups: ``o(xy) == max(o(x), o(y))`` whenever ``o(x) != o(y)``."""
    if not is_cp2(g):
        raise PreconditionNotCP2("order map property is only claimed for CP2 groups")
    orders = g.element_orders
    differ = orders[:, None] != orders[None, :]
    bound = np.maximum(orders[:, None], orders[None, :])
    return bool((orders[g.table] == bound)[differ].all())


def _p_of_p_group(g: Group) -> Optional[int]:
    if g.order == 1:
        return None
    if len(g.prime_factors) != 1:
        raise NotAPGroup(f"group of order {g.order} is not a p-group")
    return g.prime_factors[0]


def omega_condition(g: Group, p: Optional[int] = None) -> list[tuple[int, bool]]:
    """For ``n = 1 .. log_p(exponent)``: is ``{x : x^(p^n) = 1}`` closed under multiplication?"""
    gp = _p_of_p_group(g)
    if p is not None and gp is not None and p != gp:
        raise NotAPGroup(f"group of order {g.order} is not a {p}-group")
    if gp is None:
        return []
    exp = g.exponent()
    out = []
    n, pn = 1, gp
    while pn <= exp:
        s = ElementSet.from_mask(pn % g.element_orders == 0)
        out.append((n, g.is_closed(s)))
        n += 1
        pn *= gp
    return out


def detect_frobenius(g: Group) -> Optional[FrobeniusDecomposition]:
    """Frobenius structure with the Fitting subgroup as kernel, or None."""
    if len(g.prime_factors) != 2:
        return None
    kernel = st.fitting(g)
    kpp = prime_power(len(kernel))
    if kpp is None:
        return None
    p, alpha = kpp
    if g.order % (len(kernel) * p) == 0:
        # kernel is not a full Sylow p-subgroup
        return None
    (q,) = [r for r in g.prime_factors if r != p]
    complement = st.sylow(g, q)
    if len(kernel) * len(complement) != g.order:
        return None
    if (kernel & complement).bits != 1:
        return None
    k_idx = kernel.indices()[1:]
    h_idx = complement.indices()[1:]
    # h^-1 k h != k for all nonidentity h, k
    fixed = g.conjugation[np.ix_(h_idx, k_idx)] == k_idx[None, :]
    if fixed.any():
        return None
    beta = prime_power(len(complement))[1]
    return FrobeniusDecomposition(
        kernel=kernel,
        complement=complement,
        p=p,
        q=q,
        alpha=alpha,
        beta=beta,
        complement_cyclic=st.is_cyclic(g, complement),
    )


def classify_theorem_d(g: Group) -> TheoremDOutcome:
    """Decide CP2 through p-group closure conditions or Frobenius structure.

    Branch conditions are applied as literally stated; agreement with
    ``cp2_oracle`` is checked by callers, not assumed here.
    """
    if len(g.prime_factors) <= 1:
        evidence = omega_condition(g)
        prime = g.prime_factors[0] if g.prime_factors else None
        branch = PGROUP_OMEGA if all(closed for _, closed in evidence) else NOT_CP2
        return TheoremDOutcome(branch, prime=prime, omega_evidence=evidence)
    dec = detect_frobenius(g)
    if dec is None:
        return TheoremDOutcome(NOT_CP2)
    if dec.p < dec.q and dec.complement_cyclic:
        return TheoremDOutcome(FROBENIUS_PQ, prime=dec.p, decomposition=dec)
    return TheoremDOutcome(NOT_CP2, prime=dec.p, decomposition=dec)


@dataclass
class CorollaryFRecord:
    in_intersection: bool
    branch: Optional[str] = None
    commutator_equals_fitting: Optional[bool] = None
    sylow_q_count: Optional[int] = None
    expected_sylow_q_count: Optional[int] = None
    partition_valid: Optional[bool] = None
    consistent: bool = True
    notes: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "inIntersection": self.in_intersection,
            "branch": self.branch,
            "commutatorEqualsFitting": self.commutator_equals_fitting,
            "sylowQCount": self.sylow_q_count,
            "expectedSylowQCount": self.expected_sylow_q_count,
            "partitionValid": self.partition_valid,
            "consistent": self.consistent,
            "notes": list(self.notes),
        }


def sylow_partition_valid(g: Group, kernel: ElementSet, complements: list[ElementSet]) -> bool:
    """Kernel and the complement conjugates cover the group and meet pairwise trivially."""
    parts = [kernel] + complements
    covered = 0
    total = 0
    for i, a in enumerate(parts):
        covered |= a.bits
        total += len(a) - 1
        for b in parts[i + 1:]:
            if (a & b).bits != 1:
                return False
    return covered == (1 << g.order) - 1 and total == g.order - 1


def corollary_f(g: Group, outcome: Optional[TheoremDOutcome] = None) -> CorollaryFRecord:
    cp1 = is_cp1(g)
    cp2 = is_cp2(g)
    if not (cp1 and cp2):
        return CorollaryFRecord(in_intersection=False)
    outcome = outcome or classify_theorem_d(g)
    rec = CorollaryFRecord(in_intersection=True)
    if outcome.branch == PGROUP_OMEGA:
        rec.branch = "exponentP"
        if g.order > 1 and g.exponent() != g.prime_factors[0]:
            rec.consistent = False
            rec.notes.append("p-group in CP1 and CP2 without exponent p")
        return rec
    if outcome.branch != FROBENIUS_PQ:
        rec.consistent = False
        rec.notes.append("in the intersection but classified notCP2")
        return rec
    dec = outcome.decomposition
    rec.branch = "frobeniusPQ1"
    rec.commutator_equals_fitting = st.commutator_subgroup(g) == st.fitting(g)
    complements = st.conjugates(g, dec.complement)
    rec.sylow_q_count = len(complements)
    rec.expected_sylow_q_count = dec.p ** dec.alpha
    rec.partition_valid = sylow_partition_valid(g, dec.kernel, complements)
    if dec.beta != 1:
        rec.consistent = False
        rec.notes.append("complement order is not prime")
    if st.lcm_of_orders(g, dec.kernel) != dec.p:
        rec.consistent = False
        rec.notes.append("kernel exponent is not p")
    if not rec.commutator_equals_fitting:
        rec.consistent = False
        rec.notes.append("commutator subgroup differs from Fitting subgroup")
    if rec.sylow_q_count != rec.expected_sylow_q_count:
        rec.consistent = False
        rec.notes.append("Sylow q count differs from kernel order")
    if not rec.partition_valid:
        rec.consistent = False
        rec.notes.append("kernel and complement conjugates do not partition the group")
    return rec


@dataclass
class OrderCut:
    cut_set: ElementSet
    is_normal: bool
    quotient_exponent: Optional[int]
    top_prime: int

    def to_json(self) -> dict:
        return {
            "cutOrder": len(self.cut_set),
            "isNormal": self.is_normal,
            "quotientExponent": self.quotient_exponent,
            "topPrime": self.top_prime,
        }


def largest_order_cut(g: Group) -> OrderCut:
    """Elements of order below the maximum ``q^n``; normal with elementary quotient for CP2 groups."""
    if g.order == 1 or not is_cp2(g):
        raise PreconditionNotCP2("largest-order cut needs a nontrivial CP2 group")
    top = int(g.element_orders.max())
    pk = prime_power(top)
    if pk is None:
        raise PreconditionNotCP2("largest element order is not a prime power")
    cut = ElementSet.from_mask(g.element_orders < top)
    normal = g.is_closed(cut) and g.is_normal(cut)
    qexp = quotient(g, cut).exponent() if normal else None
    return OrderCut(cut, normal, qexp, pk[0])
