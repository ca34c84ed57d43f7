"""Reduce the comprehensive model to a case-specific decision model.

Pipeline: posterior inference -> clamp never-warranted treatments false
(a treatment is clamped iff, for every disease it treats, the posterior
upper bound falls strictly below that pair's threshold) -> remove subvalue
nodes whose decision parents are all false and any node left disconnected
from the value node -> split what remains into independent components and
maximize each component's expected utility separately.

The reduction is deliberately not sound: a treatment whose per-disease
posteriors all sit just below threshold can still be optimal in the
comprehensive model when its benefits add up across diseases. The harness
module measures how often that happens.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

from .decision import (
    DEFAULT_TREATMENT_CAP,
    UNATTAINABLE,
    JointEngine,
    Threshold,
    ThresholdTable,
    assignments_in_preference_order,
    eu_over_joint,
    value_parent_diseases,
)
from .errors import CapExceededError, ConsultError, InvalidModelError
from .inference import (
    PosteriorReport,
    SampleBudget,
    bounded_posteriors,
    joint_posterior,
    mc_posteriors,
    oracle_posteriors,
    quickscore_posteriors,
)
from .kb import Findings, KnowledgeBase, Violation, findings_hash, kb_hash

ACTIVE = "ACTIVE"
CLAMPED_FALSE = "CLAMPED_FALSE"

PRUNED = "PRUNED"
SOLVED = "SOLVED"

# Documented default for method "auto": quickscore while the positive
# findings keep its 2^|F+| cost at desk scale, interval bounds beyond.
AUTO_PRESENT_CUTOFF = 12
DEFAULT_BOUNDS_BUDGET = 1024


@dataclass(frozen=True)
class Policy:
    """Caller policy for the inference stage of formulation."""

    method: str = "auto"
    budget: int | None = None
    n_samples: int = 20000
    seed: int = 0
    allow_unsafe_mc: bool = False

    METHODS = ("auto", "oracle", "quickscore", "bounds", "montecarlo")

    def __post_init__(self) -> None:
        if self.method not in self.METHODS:
            raise ValueError(f"unknown method {self.method!r}; expected one of {self.METHODS}")

    def to_dict(self) -> dict:
        return {
            "method": self.method,
            "budget": self.budget,
            "n_samples": self.n_samples,
            "seed": self.seed,
            "allow_unsafe_mc": self.allow_unsafe_mc,
        }

    @classmethod
    def from_dict(cls, data: Mapping) -> "Policy":
        known = {"method", "budget", "n_samples", "seed", "allow_unsafe_mc"}
        extra = set(data) - known
        if extra:
            raise ValueError(f"unknown policy fields: {sorted(extra)}")
        return cls(**{k: data[k] for k in known & set(data)})


@dataclass(frozen=True)
class PairJustification:
    disease_id: str
    upper: float
    threshold: Threshold

    def to_dict(self) -> dict:
        return {
            "disease": self.disease_id,
            "upper": self.upper,
            "threshold": None if self.threshold is UNATTAINABLE else self.threshold,
        }


@dataclass(frozen=True)
class PruneDecision:
    treatment_id: str
    status: str
    justification: tuple[PairJustification, ...]

    def to_dict(self) -> dict:
        return {
            "treatment": self.treatment_id,
            "status": self.status,
            "justification": [j.to_dict() for j in self.justification],
        }


def prune_treatments(
    kb: KnowledgeBase,
    findings: Findings,
    thresholds: ThresholdTable,
    posteriors: PosteriorReport,
) -> list[PruneDecision]:
    """Clamp a treatment false iff every treated disease's posterior upper
    bound is strictly below its threshold.

    Point estimates count as degenerate intervals. An UNATTAINABLE
    threshold satisfies the clamp condition vacuously: that pair alone can
    never warrant the treatment."""
    thresholds.check_fresh(kb)
    del findings  # evidence already folded into the posterior report
    missing = [
        did
        for t in kb.treatments
        for did in t.treats
        if did not in posteriors.posteriors
    ]
    if missing:
        raise InvalidModelError(
            Violation(did, "missing-posterior", "no posterior entry for treated disease")
            for did in sorted(set(missing))
        )
    decisions = []
    for t in kb.treatments:
        justification = []
        clamp = True
        for did in t.treats:
            upper = posteriors.upper(did)
            thr = thresholds.threshold(t.id, did)
            justification.append(PairJustification(disease_id=did, upper=upper, threshold=thr))
            if thr is not UNATTAINABLE and upper >= thr:
                clamp = False
        decisions.append(
            PruneDecision(
                treatment_id=t.id,
                status=CLAMPED_FALSE if clamp else ACTIVE,
                justification=tuple(justification),
            )
        )
    return decisions


@dataclass(frozen=True)
class Provenance:
    kb_hash: str
    findings_hash: str | None = None
    method: str | None = None
    budget: int | None = None

    def to_dict(self) -> dict:
        return {
            "kb_hash": self.kb_hash,
            "findings_hash": self.findings_hash,
            "method": self.method,
            "budget": self.budget,
        }


@dataclass(frozen=True)
class Component:
    """A maximal group of active treatments connected through shared active
    subvalue nodes, with those nodes and their disease parents."""

    treatments: tuple[str, ...]
    subvalues: tuple[str, ...]
    diseases: tuple[str, ...]

    def to_dict(self) -> dict:
        return {
            "treatments": list(self.treatments),
            "subvalues": list(self.subvalues),
            "diseases": list(self.diseases),
        }


@dataclass(frozen=True)
class ReducedModel:
    active_treatments: frozenset[str]
    active_subvalues: frozenset[str]
    retained_diseases: frozenset[str]
    components: tuple[Component, ...]
    provenance: Provenance

    def to_dict(self) -> dict:
        return {
            "active_treatments": sorted(self.active_treatments),
            "active_subvalues": sorted(self.active_subvalues),
            "retained_diseases": sorted(self.retained_diseases),
            "components": [c.to_dict() for c in self.components],
            "provenance": self.provenance.to_dict(),
        }


def reduce_model(
    kb: KnowledgeBase,
    decisions: Sequence[PruneDecision],
    provenance: Provenance | None = None,
) -> ReducedModel:
    """Two-step removal: drop every subvalue node whose decision parents
    are all clamped false (vacuously, nodes with no decision parents),
    then keep only nodes still connected to the value node: treatments
    and diseases that parent a surviving subvalue node.

    Also records the connected components: two active treatments share a
    component iff they co-parent some active subvalue node, transitively.
    """
    status = {d.treatment_id: d.status for d in decisions}
    missing = [t.id for t in kb.treatments if t.id not in status]
    if missing:
        raise InvalidModelError(
            Violation(tid, "missing-prune-decision", "no prune decision for treatment")
            for tid in missing
        )
    active_treatments = {tid for tid, s in status.items() if s == ACTIVE}
    active_subvalues = [
        u for u in kb.subvalues if any(tp in active_treatments for tp in u.treatment_parents)
    ]
    retained = {d for u in active_subvalues for d in u.disease_parents}

    # Union-find over active treatments through co-parented active nodes.
    parent: dict[str, str] = {tid: tid for tid in active_treatments}

    def find(x: str) -> str:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(a: str, b: str) -> None:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)

    for u in active_subvalues:
        actives = [tp for tp in u.treatment_parents if tp in active_treatments]
        for other in actives[1:]:
            union(actives[0], other)

    by_root: dict[str, dict[str, set]] = {}
    for tid in active_treatments:
        by_root.setdefault(find(tid), {"treatments": set(), "subvalues": set(), "diseases": set()})[
            "treatments"
        ].add(tid)
    for u in active_subvalues:
        root = find(next(tp for tp in u.treatment_parents if tp in active_treatments))
        by_root[root]["subvalues"].add(u.id)
        by_root[root]["diseases"].update(u.disease_parents)

    components = tuple(
        Component(
            treatments=tuple(sorted(g["treatments"])),
            subvalues=tuple(sorted(g["subvalues"])),
            diseases=tuple(sorted(g["diseases"])),
        )
        for _, g in sorted(by_root.items())
    )
    return ReducedModel(
        active_treatments=frozenset(active_treatments),
        active_subvalues=frozenset(u.id for u in active_subvalues),
        retained_diseases=frozenset(retained),
        components=components,
        provenance=provenance or Provenance(kb_hash=kb_hash(kb)),
    )


@dataclass(frozen=True)
class TreatmentDecision:
    decision: bool
    source: str  # PRUNED | SOLVED
    component: int | None

    def to_dict(self) -> dict:
        return {"decision": self.decision, "source": self.source, "component": self.component}


@dataclass(frozen=True)
class Recommendation:
    decisions: Mapping[str, TreatmentDecision]
    eu_by_component: tuple[float, ...]
    op_count: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "decisions", dict(self.decisions))

    def assignment(self) -> dict[str, bool]:
        return {tid: d.decision for tid, d in self.decisions.items()}

    def to_dict(self) -> dict:
        return {
            "decisions": {tid: d.to_dict() for tid, d in sorted(self.decisions.items())},
            "eu_by_component": list(self.eu_by_component),
            "op_count": self.op_count,
        }


def solve_reduced(
    kb: KnowledgeBase,
    findings: Findings,
    model: ReducedModel,
    engine: JointEngine | None = None,
    *,
    max_treatments: int = DEFAULT_TREATMENT_CAP,
) -> Recommendation:
    """Maximize each component's expected utility independently.

    Within a component the maximization is exact: all of the component's
    subvalue nodes, exhaustive enumeration of its treatment assignments,
    exact joint posterior over its disease parents. Choices across
    components are made independently; that decomposition is the point of
    the reduction. Pruned treatments are reported false with source
    PRUNED. Tie-break matches solve_comprehensive."""
    engine = engine or joint_posterior
    decisions: dict[str, TreatmentDecision] = {
        t.id: TreatmentDecision(decision=False, source=PRUNED, component=None)
        for t in kb.treatments
        if t.id not in model.active_treatments
    }
    eu_by_component = []
    op_count = 0
    for ci, comp in enumerate(model.components):
        if len(comp.treatments) > max_treatments:
            raise CapExceededError(
                f"component {ci} has {len(comp.treatments)} treatments, cap {max_treatments}"
            )
        nodes = [kb.subvalue_by_id[uid] for uid in comp.subvalues]
        parents = value_parent_diseases(nodes)
        try:
            joint = engine(kb, findings, parents)
        except CapExceededError as e:
            raise CapExceededError(f"component {ci}: {e}") from e
        # Treatments outside the component never parent its nodes other
        # than as clamped-false entries, so a false base covers them.
        base = {t.id: False for t in kb.treatments}
        best = None
        best_eu = -1.0
        for local in assignments_in_preference_order(comp.treatments):
            assignment = dict(base)
            assignment.update(local)
            eu = eu_over_joint(nodes, parents, joint, assignment)
            op_count += 1
            if eu > best_eu:
                best_eu = eu
                best = local
        eu_by_component.append(best_eu)
        for tid in comp.treatments:
            decisions[tid] = TreatmentDecision(decision=best[tid], source=SOLVED, component=ci)
    return Recommendation(
        decisions=decisions, eu_by_component=tuple(eu_by_component), op_count=op_count
    )


def run_inference(kb: KnowledgeBase, findings: Findings, policy: Policy) -> PosteriorReport:
    """Run the posterior method selected by `policy` (resolving "auto")."""
    method = policy.method
    if method == "auto":
        method = "quickscore" if len(findings.present) <= AUTO_PRESENT_CUTOFF else "bounds"
    if method == "oracle":
        return oracle_posteriors(kb, findings)
    if method == "quickscore":
        return quickscore_posteriors(kb, findings)
    if method == "bounds":
        budget = policy.budget if policy.budget is not None else DEFAULT_BOUNDS_BUDGET
        return bounded_posteriors(kb, findings, budget)
    if method == "montecarlo":
        return mc_posteriors(kb, findings, SampleBudget(policy.n_samples, policy.seed))
    raise ValueError(f"unknown method {method!r}")


@dataclass(frozen=True)
class FormulationResult:
    report: PosteriorReport
    decisions: tuple[PruneDecision, ...]
    model: ReducedModel
    recommendation: Recommendation


def formulate_full(
    kb: KnowledgeBase,
    findings: Findings,
    thresholds: ThresholdTable,
    policy: Policy = Policy(),
    engine: JointEngine | None = None,
) -> FormulationResult:
    """Inference -> prune -> reduce -> solve, keeping every intermediate."""
    if policy.method == "montecarlo" and not policy.allow_unsafe_mc:
        raise ConsultError(
            "montecarlo posteriors carry no bound guarantee; pruning on them "
            "requires allow_unsafe_mc"
        )
    report = run_inference(kb, findings, policy)
    if report.all_weights_zero:
        raise ConsultError("all Monte-Carlo sample weights are zero; cannot prune")
    decisions = prune_treatments(kb, findings, thresholds, report)
    provenance = Provenance(
        kb_hash=kb_hash(kb),
        findings_hash=findings_hash(findings),
        method=report.method,
        budget=report.budget_used,
    )
    model = reduce_model(kb, decisions, provenance)
    recommendation = solve_reduced(kb, findings, model, engine)
    return FormulationResult(
        report=report,
        decisions=tuple(decisions),
        model=model,
        recommendation=recommendation,
    )


def formulate(
    kb: KnowledgeBase,
    findings: Findings,
    thresholds: ThresholdTable,
    policy: Policy = Policy(),
) -> tuple[ReducedModel, Recommendation]:
    result = formulate_full(kb, findings, thresholds, policy)
    return result.model, result.recommendation
