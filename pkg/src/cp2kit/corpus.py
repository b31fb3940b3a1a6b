"""Corpus harness: evaluate every group in a manifest and collect discrepancies.

Each group gets the full battery: class verdicts by the pairwise oracle, the
normal-subgroup characterization, the p-group / Frobenius classifier, the
intersection analyzer, structural invariants and the property suite. Any
disagreement between routes, or any failed property, is recorded as a
discrepancy; a correct toolkit on a sound theory produces none.
"""

from __future__ import annotations

import hashlib
import json
import os
import time
from concurrent.futures import ProcessPoolExecutor
from importlib import resources
from pathlib import Path
from typing import Any, Iterable, Optional

from . import __version__
from . import checkers as ch
from . import structure as st
from .constructors import FamilyDescriptor, build
from .elementset import ElementSet
from .errors import CP2KitError, InvalidParameters, ThresholdExceeded
from .group import Group, induced_subgroup
from .numtheory import prime_factors

SCHEMA_VERSION = 1
DEFAULT_MAX_ORDER = 512

THEOREM = "THEOREM-DISCREPANCY"
PROPERTY = "PROPERTY-VIOLATION"


def max_order_from_env() -> int:
    env = os.environ.get("CP2KIT_MAX_ORDER")
    return int(env) if env else DEFAULT_MAX_ORDER


def default_manifest_text() -> str:
    return resources.files("cp2kit").joinpath("data/default_manifest.json").read_text(encoding="utf-8")


def load_manifest(path: Optional[str | Path] = None) -> list[FamilyDescriptor]:
    text = default_manifest_text() if path is None else Path(path).read_text(encoding="utf-8")
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidParameters(f"manifest is not valid JSON: {exc}") from None
    if not isinstance(payload, list):
        raise InvalidParameters("manifest must be a JSON list of {family, parameters} records")
    return [FamilyDescriptor.from_json(r) for r in payload]


def manifest_hash(descriptors: Iterable[FamilyDescriptor]) -> str:
    canon = json.dumps([d.to_json() for d in descriptors], sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canon.encode("utf-8")).hexdigest()


def evaluate(g: Group, descriptor: Optional[FamilyDescriptor] = None) -> dict[str, Any]:
    """Run every check on one group and return its JSON-ready record."""
    issues: list[dict[str, str]] = []

    def flag(kind: str, check: str, detail: str) -> None:
        issues.append({"kind": kind, "check": check, "detail": detail})

    cp2, witness = ch.cp2_oracle(g)
    verdict = ch.ClassVerdict(cp1=ch.is_cp1(g), cp=ch.is_cp(g), cn=ch.is_cn(g), cp2=cp2, witness=witness)
    via_a = ch.cp2_via_theorem_a(g)
    outcome = ch.classify_theorem_d(g)
    corf = ch.corollary_f(g, outcome)

    if via_a != cp2:
        flag(THEOREM, "theoremA", f"oracle says {cp2}, normal-subgroup route says {via_a}")
    if outcome.in_cp2 != cp2:
        flag(THEOREM, "theoremD", f"oracle says {cp2}, classifier branch is {outcome.branch}")
    if descriptor is not None and descriptor.family == "frobeniusLinear":
        p, _, qb = descriptor.parameters
        q = prime_factors(qb)[0]
        if p < q and outcome.branch != ch.FROBENIUS_PQ:
            flag(THEOREM, "theoremD", f"Frobenius instance with p < q classified {outcome.branch}")
    if cp2 and not verdict.cp:
        flag(THEOREM, "classChain", "CP2 group outside CP")
    if verdict.cp1 and not verdict.cp:
        flag(PROPERTY, "classChain", "CP1 group outside CP")
    if verdict.cp and not verdict.cn:
        flag(PROPERTY, "classChain", "CP group outside CN")
    if witness is not None and not ch.witness_is_valid(g, witness):
        flag(PROPERTY, "witness", f"witness {witness} does not recompute")
    if not corf.consistent:
        flag(THEOREM, "corollaryF", "; ".join(corf.notes))

    center = st.center(g)
    fit = st.fitting(g)
    comm = st.commutator_subgroup(g)
    solvable = st.is_solvable(g)
    nilpotent = st.is_nilpotent(g)
    lattice = None
    lattice_note = None
    try:
        lattice = st.subgroup_lattice(g)
    except ThresholdExceeded as exc:
        lattice_note = str(exc)
    frat = None
    if lattice is not None:
        bits = (1 << g.order) - 1
        for s in lattice.maximal_subgroups():
            bits &= s.bits
        frat = ElementSet(bits, g.order)

    structure = {
        "orderSpectrum": sorted(g.order_spectrum()),
        "exponent": g.exponent(),
        "centerOrder": len(center),
        "fittingOrder": len(fit),
        "commutatorOrder": len(comm),
        "frattiniOrder": len(frat) if frat is not None else None,
        "conjugacyClasses": len(st.conjugacy_classes(g)),
        "nilpotent": nilpotent,
        "solvable": solvable,
        "latticeSize": len(lattice) if lattice is not None else None,
        "latticeSkipped": lattice_note,
    }

    prop_c: Optional[dict[str, Any]] = None
    if cp2 and g.order > 1:
        single = [p for p in g.prime_factors if st.p_core(g, p) == fit]
        prop_c = {
            "fittingSinglePrime": bool(single),
            "centerPGroup": st.is_p_group_set(g, center),
            "frattiniPGroup": st.is_p_group_set(g, frat) if frat is not None else None,
            "centerInFitting": center <= fit,
            "frattiniInFitting": (frat <= fit) if frat is not None else None,
            "centerTrivialIfNotPGroup": center.is_trivial() if not g.is_p_group() else None,
        }
        for key, value in prop_c.items():
            if value is False:
                flag(THEOREM, "propositionC", f"{key} fails")
        if not solvable:
            flag(THEOREM, "solvability", "CP2 group is not solvable")

    properties: dict[str, Any] = {
        "witnessValid": ch.witness_is_valid(g, witness) if witness is not None else None,
        "orderMapProperty": None,
        "largestOrderCut": None,
        "subgroupClosure": None,
        "powerful": None,
    }
    if cp2:
        properties["orderMapProperty"] = ch.order_map_property(g)
        if not properties["orderMapProperty"]:
            flag(THEOREM, "orderMap", "o(xy) != max(o(x), o(y)) for some pair with o(x) != o(y)")
        if g.order > 1:
            cut = ch.largest_order_cut(g)
            properties["largestOrderCut"] = cut.to_json()
            if not cut.is_normal or cut.quotient_exponent != cut.top_prime:
                flag(THEOREM, "largestOrderCut",
                     f"normal={cut.is_normal}, quotient exponent={cut.quotient_exponent}, expected {cut.top_prime}")
        if lattice is not None:
            closed = all(ch.is_cp2(induced_subgroup(g, s)) for s in lattice.subgroups)
            properties["subgroupClosure"] = closed
            if not closed:
                flag(THEOREM, "subgroupClosure", "a subgroup of a CP2 group is not CP2")
    if g.is_p_group() and g.prime_factors[0] % 2 == 1:
        powerful = st.is_powerful(g, g.prime_factors[0])
        properties["powerful"] = powerful
        if powerful and not cp2:
            flag(THEOREM, "powerful", "odd-order powerful p-group outside CP2")

    return {
        "familyDescriptor": descriptor.to_json() if descriptor is not None else None,
        "name": g.meta.get("name"),
        "order": g.order,
        "verdict": verdict.to_json(),
        "theoremA": via_a,
        "theoremD": outcome.to_json(),
        "corollaryF": corf.to_json(),
        "structure": structure,
        "propositionC": prop_c,
        "properties": properties,
        "discrepancies": issues,
    }


class CorpusError(CP2KitError):
    """A manifest entry could not be built within the configured caps."""


def _evaluate_descriptor(args: tuple[FamilyDescriptor, int, bool]) -> dict[str, Any]:
    descriptor, max_order, timings = args
    start = time.perf_counter()
    try:
        g = build(descriptor)
    except CP2KitError as exc:
        raise CorpusError(f"{descriptor.label()}: {exc}") from None
    if g.order > max_order:
        raise CorpusError(f"{descriptor.label()}: order {g.order} exceeds cap {max_order}")
    record = evaluate(g, descriptor)
    if timings:
        record["timingMs"] = round((time.perf_counter() - start) * 1000, 1)
    return record


def run_corpus(descriptors: list[FamilyDescriptor], *, max_order: Optional[int] = None,
               jobs: int = 1, timings: bool = False) -> dict[str, Any]:
    """Evaluate every manifest entry; results keep manifest order at any parallelism."""
    max_order = max_order_from_env() if max_order is None else max_order
    work = [(d, max_order, timings) for d in descriptors]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            records = list(pool.map(_evaluate_descriptor, work))
    else:
        records = [_evaluate_descriptor(w) for w in work]
    return assemble_report(records, manifest_hash(descriptors))


def assemble_report(records: list[dict[str, Any]], digest: str) -> dict[str, Any]:
    discrepancies = []
    for i, rec in enumerate(records):
        for issue in rec["discrepancies"]:
            discrepancies.append({"index": i, "group": rec["name"], **issue})
    return {
        "schemaVersion": SCHEMA_VERSION,
        "toolVersion": __version__,
        "corpusManifestHash": digest,
        "perGroup": records,
        "summary": {
            "totalGroups": len(records),
            "cp2Count": sum(r["verdict"]["cp2"] for r in records),
            "discrepancies": discrepancies,
        },
    }


def evaluate_groups(groups: list[tuple[FamilyDescriptor, Group]]) -> dict[str, Any]:
    """Harness over prebuilt groups (for groups no manifest family produces)."""
    records = [evaluate(g, d) for d, g in groups]
    return assemble_report(records, manifest_hash(d for d, _ in groups))


CENSUS_COLUMNS = ("order", "family", "cp1", "cp", "cn", "cp2", "branch")


def census_rows(report: dict[str, Any]) -> list[list[str]]:
    """Project the report onto the census columns."""
    rows = []
    for rec in report["perGroup"]:
        v = rec["verdict"]
        fam = rec["familyDescriptor"]["family"] if rec["familyDescriptor"] else ""
        cells = [rec["order"], fam, v["cp1"], v["cp"], v["cn"], v["cp2"], rec["theoremD"]["branch"]]
        rows.append([str(c).lower() if isinstance(c, bool) else str(c) for c in cells])
    return rows


def dumps_report(report: dict[str, Any]) -> str:
    return json.dumps(report, indent=1, sort_keys=False) + "\n"
