"""Utility evaluation, comprehensive expected-utility solving, thresholds.

Overall patient utility is the product of every subvalue-node factor, so a
healthy untreated patient scores exactly 1. Treatment choices are binary;
`solve_comprehensive` maximizes expected utility over all of them jointly.

A treatment threshold is the lowest probability of a single disease at
which treating strictly beats not treating, in the submodel where every
other disease and treatment is clamped false. Both expected utilities are
affine in that probability, so the threshold has a closed form; it is
UNATTAINABLE when no probability in [0, 1] warrants the treatment.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Mapping, Sequence

from .canonical import canonical_bytes, content_hash
from .errors import CapExceededError, ParseError, StaleThresholdsError
from .inference import joint_posterior
from .kb import Findings, KnowledgeBase, SubvalueNode, kb_hash

DEFAULT_TREATMENT_CAP = 16

JointEngine = Callable[[KnowledgeBase, Findings, Sequence[str]], Mapping[str, float]]


class _Unattainable:
    """Sentinel: no disease probability in [0,1] warrants the treatment."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "UNATTAINABLE"


UNATTAINABLE = _Unattainable()

Threshold = float | _Unattainable


def utility_of_state(
    kb: KnowledgeBase,
    disease_state: Mapping[str, bool],
    assignment: Mapping[str, bool],
) -> float:
    """Product over all subvalue nodes of the table entry selected by the
    given disease states and treatment choices."""
    u = 1.0
    for node in kb.subvalues:
        u *= node.value(disease_state, assignment)
    return u


def value_parent_diseases(nodes: Sequence[SubvalueNode]) -> tuple[str, ...]:
    """Sorted union of the disease parents of `nodes`."""
    return tuple(sorted({d for node in nodes for d in node.disease_parents}))


def eu_over_joint(
    nodes: Sequence[SubvalueNode],
    parents: Sequence[str],
    joint: Mapping[str, float],
    assignment: Mapping[str, bool],
) -> float:
    """Expected product of `nodes` under a joint posterior over `parents`."""
    eu = 0.0
    for bits, prob in joint.items():
        state = {d: bits[i] == "1" for i, d in enumerate(parents)}
        u = 1.0
        for node in nodes:
            u *= node.value(state, assignment)
        eu += prob * u
    return eu


def expected_utility(
    kb: KnowledgeBase,
    findings: Findings,
    assignment: Mapping[str, bool],
    engine: JointEngine | None = None,
) -> float:
    """E[utility | findings] for one treatment assignment.

    Marginalizes exactly over the diseases that parent some subvalue node
    (all others cancel out of the expectation)."""
    engine = engine or joint_posterior
    parents = value_parent_diseases(kb.subvalues)
    joint = engine(kb, findings, parents)
    return eu_over_joint(kb.subvalues, parents, joint, assignment)


def assignments_in_preference_order(treatment_ids: Sequence[str]):
    """All 2^t assignments, ordered fewest-true first, then lexicographic
    by the tuple of true ids. Scanning in this order and keeping the first
    strict maximum realizes the deterministic tie-break."""
    ids = list(treatment_ids)
    for count in range(len(ids) + 1):
        for combo in itertools.combinations(ids, count):
            chosen = set(combo)
            yield {i: i in chosen for i in ids}


def assignment_key(kb: KnowledgeBase, assignment: Mapping[str, bool]) -> str:
    """Bitstring over kb.treatments order (sorted ids)."""
    return "".join("1" if assignment[t.id] else "0" for t in kb.treatments)


@dataclass(frozen=True)
class ComprehensiveSolution:
    best: dict[str, bool]
    eu: float
    eu_by_assignment: dict[str, float]
    op_count: int

    def to_dict(self) -> dict:
        return {
            "best": {k: self.best[k] for k in sorted(self.best)},
            "eu": self.eu,
            "eu_by_assignment": dict(sorted(self.eu_by_assignment.items())),
            "op_count": self.op_count,
        }


def solve_comprehensive(
    kb: KnowledgeBase,
    findings: Findings,
    engine: JointEngine | None = None,
    *,
    max_treatments: int = DEFAULT_TREATMENT_CAP,
) -> ComprehensiveSolution:
    """Exhaustive expected-utility maximization over all 2^t assignments.

    Ties resolve to the fewest-true assignment, then lexicographic id
    order. op_count is the number of expected-utility evaluations."""
    t = len(kb.treatments)
    if t > max_treatments:
        raise CapExceededError(f"{t} treatments exceeds the brute-force cap {max_treatments}")
    engine = engine or joint_posterior
    parents = value_parent_diseases(kb.subvalues)
    joint = engine(kb, findings, parents)

    best = None
    best_eu = -1.0
    table: dict[str, float] = {}
    op_count = 0
    for assignment in assignments_in_preference_order([x.id for x in kb.treatments]):
        eu = eu_over_joint(kb.subvalues, parents, joint, assignment)
        op_count += 1
        table[assignment_key(kb, assignment)] = eu
        if eu > best_eu:
            best_eu = eu
            best = assignment
    return ComprehensiveSolution(best=best, eu=best_eu, eu_by_assignment=table, op_count=op_count)


# ---------------------------------------------------------------------------
# Treatment thresholds

def _isolated_utilities(kb: KnowledgeBase, treatment_id: str, disease_id: str):
    """U(d, a) for the submodel where every other disease and treatment is
    false. Only nodes touching the pair matter; all others contribute 1."""
    out = {}
    for d_val, a_val in itertools.product((False, True), repeat=2):
        u = 1.0
        for node in kb.subvalues:
            if disease_id not in node.disease_parents and treatment_id not in node.treatment_parents:
                continue
            key = "".join(
                "1" if (p == disease_id and d_val) else "0" for p in node.disease_parents
            ) + "".join(
                "1" if (p == treatment_id and a_val) else "0" for p in node.treatment_parents
            )
            u *= node.table[key]
        out[(d_val, a_val)] = u
    return out


def compute_threshold(kb: KnowledgeBase, treatment_id: str, disease_id: str) -> Threshold:
    """Lowest disease probability at which treating strictly beats not
    treating, with everything else clamped false.

    With U the isolated submodel utilities, both expected utilities are
    affine in p and cross at
    p* = (U(0,0)-U(0,1)) / ((U(1,1)-U(1,0)) + (U(0,0)-U(0,1))).
    Returns UNATTAINABLE when treating is not strictly better for any
    p in [0,1], i.e. when the treated-sick gain U(1,1)-U(1,0) is <= 0.
    """
    treatment = kb.treatment_by_id.get(treatment_id)
    if treatment is None or disease_id not in treatment.treats:
        raise ValueError(f"({treatment_id}, {disease_id}) is not a treating pair")
    u = _isolated_utilities(kb, treatment_id, disease_id)
    harm_when_healthy = u[(False, False)] - u[(False, True)]
    gain_when_sick = u[(True, True)] - u[(True, False)]
    if gain_when_sick <= 0.0:
        return UNATTAINABLE
    if harm_when_healthy <= 0.0:
        return 0.0
    p_star = harm_when_healthy / (harm_when_healthy + gain_when_sick)
    return min(max(p_star, 0.0), 1.0)


@dataclass(frozen=True)
class ThresholdTable:
    """Threshold per treating pair, tied to the KB it was computed from."""

    entries: Mapping[tuple[str, str], Threshold]
    kb_hash: str

    def __post_init__(self) -> None:
        object.__setattr__(self, "entries", dict(self.entries))

    def threshold(self, treatment_id: str, disease_id: str) -> Threshold:
        return self.entries[(treatment_id, disease_id)]

    def to_dict(self) -> dict:
        return {
            "kb_hash": self.kb_hash,
            "thresholds": {
                f"{t}:{d}": (None if v is UNATTAINABLE else v)
                for (t, d), v in sorted(self.entries.items())
            },
        }

    @classmethod
    def from_dict(cls, data: Mapping) -> "ThresholdTable":
        if "kb_hash" not in data or "thresholds" not in data:
            raise ParseError("threshold table must have 'kb_hash' and 'thresholds'")
        entries: dict[tuple[str, str], Threshold] = {}
        for key, val in data["thresholds"].items():
            tid, _, did = key.partition(":")
            if not did:
                raise ParseError(f"threshold key {key!r} is not 'treatment:disease'")
            entries[(tid, did)] = UNATTAINABLE if val is None else float(val)
        return cls(entries=entries, kb_hash=data["kb_hash"])

    def save(self, path: str | Path) -> None:
        Path(path).write_bytes(canonical_bytes(self.to_dict()))

    @classmethod
    def load(cls, path: str | Path) -> "ThresholdTable":
        try:
            data = json.loads(Path(path).read_text(encoding="utf-8"))
        except json.JSONDecodeError as e:
            raise ParseError(f"{path}: line {e.lineno} column {e.colno}: {e.msg}") from e
        except OSError as e:
            raise ParseError(f"{path}: {e}") from e
        return cls.from_dict(data)

    def check_fresh(self, kb: KnowledgeBase) -> None:
        actual = kb_hash(kb)
        if actual != self.kb_hash:
            raise StaleThresholdsError(
                f"threshold table was computed for KB {self.kb_hash[:12]}…, "
                f"current KB is {actual[:12]}…"
            )


def threshold_table(kb: KnowledgeBase) -> ThresholdTable:
    """compute_threshold for every treating pair. Pure in the KB, so the
    result is cacheable to a file and independent of any findings."""
    entries = {
        (tid, did): compute_threshold(kb, tid, did) for tid, did in kb.treating_pairs
    }
    return ThresholdTable(entries=entries, kb_hash=kb_hash(kb))


def thresholds_hash(table: ThresholdTable) -> str:
    return content_hash(table.to_dict())
