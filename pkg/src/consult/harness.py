"""Experiments quantifying when the reduction changes recommendations,
and what it saves.

The reduction is conjectured to rarely disagree with the comprehensive
solve. `run_soundness_experiment` measures the agreement rate over seeded
random cases; `find_unsound_case` constructs a verified disagreement (one
treatment covering two diseases whose posteriors sit just below their
thresholds, where treating is still jointly optimal); `cost_report`
compares instrumented operation counts and node counts.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field, replace

from .decision import solve_comprehensive, threshold_table
from .errors import ConstructionError, InfeasibleSpecError, ZeroEvidenceError
from .formulation import PRUNED, Policy, formulate_full
from .generate import GeneratorSpec, generate_kb
from .inference import quickscore_posteriors
from .kb import (
    Disease,
    Findings,
    KnowledgeBase,
    Link,
    Manifestation,
    SubvalueNode,
    Treatment,
)


def random_findings(
    kb: KnowledgeBase, density: tuple[float, float], seed: int
) -> Findings:
    """Mark each manifestation present/absent/unobserved independently with
    probabilities (p_present, p_absent, remainder)."""
    p_present, p_absent = density
    if p_present < 0 or p_absent < 0 or p_present + p_absent > 1:
        raise InfeasibleSpecError(f"bad findings density {density}")
    r = random.Random(seed)
    present, absent = set(), set()
    for m in kb.manifestations:
        x = r.random()
        if x < p_present:
            present.add(m.id)
        elif x < p_present + p_absent:
            absent.add(m.id)
    return Findings(frozenset(present), frozenset(absent))


def sample_patient_findings(
    kb: KnowledgeBase,
    seed: int,
    observe_prob: float = 0.6,
    max_present: int | None = None,
) -> Findings:
    """Forward-sample a patient from the model and observe a random subset
    of their manifestations, so the evidence is coherent with the KB."""
    r = random.Random(seed)
    state = {d.id: r.random() < d.prior for d in kb.diseases}
    present, absent = [], []
    for m in kb.manifestations:
        p_absent = 1.0 - m.leak
        for link in m.links:
            if state[link.disease]:
                p_absent *= 1.0 - link.strength
        fired = r.random() >= p_absent
        if r.random() < observe_prob:
            (present if fired else absent).append(m.id)
    if max_present is not None:
        present = present[:max_present]
    return Findings(frozenset(present), frozenset(absent))


@dataclass(frozen=True)
class DisagreementCase:
    kb_seed: int
    findings_seed: int
    differing_treatments: tuple[str, ...]

    def to_dict(self) -> dict:
        return {
            "kb_seed": self.kb_seed,
            "findings_seed": self.findings_seed,
            "differing_treatments": list(self.differing_treatments),
        }


@dataclass(frozen=True)
class SoundnessReport:
    n_cases: int
    n_agreements: int
    disagreement_cases: tuple[DisagreementCase, ...]
    mean_op_count_comprehensive: float
    mean_op_count_reduced: float

    @property
    def agreement_rate(self) -> float:
        return self.n_agreements / self.n_cases if self.n_cases else 1.0

    def to_dict(self) -> dict:
        return {
            "n_cases": self.n_cases,
            "n_agreements": self.n_agreements,
            "agreement_rate": self.agreement_rate,
            "disagreement_cases": [c.to_dict() for c in self.disagreement_cases],
            "mean_op_count_comprehensive": self.mean_op_count_comprehensive,
            "mean_op_count_reduced": self.mean_op_count_reduced,
        }


@dataclass(frozen=True)
class ExperimentSpec:
    n_cases: int
    kb_spec: GeneratorSpec = GeneratorSpec(
        n_diseases=6, n_manifestations=8, n_treatments=4, links_per_manifestation=2
    )
    findings_density: tuple[float, float] = (0.15, 0.25)
    seed: int = 0
    policy: Policy = field(default_factory=Policy)

    def validate(self) -> None:
        if self.n_cases < 0:
            raise InfeasibleSpecError("n_cases must be >= 0")
        if self.kb_spec.n_diseases > 12:
            raise InfeasibleSpecError("soundness experiments cap at 12 diseases")
        if self.kb_spec.n_treatments > 8:
            raise InfeasibleSpecError("soundness experiments cap at 8 treatments")


def _case_findings(kb, density, findings_seed):
    # Deterministic retry ladder in case custom specs permit impossible
    # evidence (default generator leaks are strictly positive, so the
    # first attempt normally stands).
    for attempt in range(5):
        findings = random_findings(kb, density, findings_seed + attempt * 0x9E3779B9)
        try:
            quickscore_posteriors(kb, findings)
            return findings
        except ZeroEvidenceError:
            continue
    raise ZeroEvidenceError(f"no feasible findings for seed {findings_seed}")


def soundness_case_seeds(spec: ExperimentSpec) -> list[tuple[int, int]]:
    """The (kb_seed, findings_seed) pair for every case of the experiment,
    derived deterministically from the master seed."""
    master = random.Random(spec.seed)
    return [(master.getrandbits(63), master.getrandbits(63)) for _ in range(spec.n_cases)]


def run_soundness_experiment(spec: ExperimentSpec) -> SoundnessReport:
    """Generate `n_cases` random (KB, findings) pairs, run both the reduced
    pipeline and the comprehensive solver, and compare full treatment
    assignments. Deterministic given the spec; per-case seeds are recorded
    so every disagreement replays."""
    spec.validate()
    case_seeds = soundness_case_seeds(spec)
    disagreements = []
    agreements = 0
    ops_comp = []
    ops_red = []
    for kb_seed, findings_seed in case_seeds:
        kb = generate_kb(replace(spec.kb_spec, seed=kb_seed))
        findings = _case_findings(kb, spec.findings_density, findings_seed)
        thresholds = threshold_table(kb)
        result = formulate_full(kb, findings, thresholds, spec.policy)
        comprehensive = solve_comprehensive(kb, findings)
        reduced_assignment = result.recommendation.assignment()
        differing = tuple(
            sorted(
                tid
                for tid in comprehensive.best
                if comprehensive.best[tid] != reduced_assignment[tid]
            )
        )
        if differing:
            disagreements.append(
                DisagreementCase(
                    kb_seed=kb_seed,
                    findings_seed=findings_seed,
                    differing_treatments=differing,
                )
            )
        else:
            agreements += 1
        ops_comp.append(comprehensive.op_count)
        ops_red.append(result.recommendation.op_count)
    n = spec.n_cases
    return SoundnessReport(
        n_cases=n,
        n_agreements=agreements,
        disagreement_cases=tuple(disagreements),
        mean_op_count_comprehensive=(sum(ops_comp) / n) if n else 0.0,
        mean_op_count_reduced=(sum(ops_red) / n) if n else 0.0,
    )


@dataclass(frozen=True)
class CostReport:
    op_count_reduced: int
    op_count_comprehensive: int
    nodes_before: int
    nodes_after: int

    def to_dict(self) -> dict:
        return {
            "op_count_reduced": self.op_count_reduced,
            "op_count_comprehensive": self.op_count_comprehensive,
            "nodes_before": self.nodes_before,
            "nodes_after": self.nodes_after,
        }


def cost_report(
    kb: KnowledgeBase,
    findings: Findings,
    policy: Policy = Policy(),
    thresholds=None,
) -> CostReport:
    """Instrumented comparison of the reduced pipeline against the
    comprehensive solve. Node counts cover diseases, treatments, and
    subvalue nodes (manifestation nodes serve inference in both paths)."""
    thresholds = thresholds if thresholds is not None else threshold_table(kb)
    result = formulate_full(kb, findings, thresholds, policy)
    comprehensive = solve_comprehensive(kb, findings)
    model = result.model
    return CostReport(
        op_count_reduced=result.recommendation.op_count,
        op_count_comprehensive=comprehensive.op_count,
        nodes_before=len(kb.diseases) + len(kb.treatments) + len(kb.subvalues),
        nodes_after=len(model.retained_diseases)
        + len(model.active_treatments)
        + len(model.active_subvalues),
    )


# ---------------------------------------------------------------------------
# Constructing a verified unsound case

@dataclass(frozen=True)
class UnsoundCase:
    """A KB + findings where pruning flips the recommendation.

    `boosters` maps each disease to an unobserved manifestation strongly
    linked to it; marking one present pushes that disease past its
    threshold, which reactivates the treatment and restores agreement."""

    kb: KnowledgeBase
    findings: Findings
    comprehensive_best: dict[str, bool]
    reduced_best: dict[str, bool]
    treatment_id: str
    boosters: dict[str, str]

    def strengthened_findings(self, disease_id: str) -> Findings:
        return Findings(
            self.findings.present | {self.boosters[disease_id]}, self.findings.absent
        )


def _posterior_manifestation(disease_id, mid, leak, target, prior):
    """A manifestation whose positive observation moves the disease from
    `prior` to exactly `target`."""
    effective = target * (1 - prior) * leak / (prior * (1 - target))
    if not (leak + 0.005 < effective < 0.995):
        return None
    strength = 1.0 - (1.0 - effective) / (1.0 - leak)
    return Manifestation(
        id=mid, name=f"Sign of {disease_id}", leak=leak,
        links=(Link(disease=disease_id, strength=strength),),
    )


def find_unsound_case(seed: int) -> UnsoundCase:
    """Construct and verify a disagreement between pipeline and oracle.

    One treatment covers two diseases, each with a side-effect penalty on
    the other's subvalue node implicit in the shared treatment: the
    isolated thresholds are high enough that evidence placing both
    posteriors just below them clamps the treatment, while the
    comprehensive model treats because the two benefits stack. The
    returned case is re-verified end to end before being returned."""
    r = random.Random(seed)
    for _ in range(200):
        s1, s2 = r.uniform(0.7, 0.93), r.uniform(0.7, 0.93)
        mo1, mo2 = r.uniform(0.15, 0.45), r.uniform(0.15, 0.45)
        b1 = r.uniform(min(mo1 / s2 + 0.12, 0.97), 1.0)
        b2 = r.uniform(min(mo2 / s1 + 0.12, 0.97), 1.0)
        harm = 1.0 - s1 * s2
        gain1 = b1 * s2 - mo1
        gain2 = b2 * s1 - mo2
        if gain1 <= 0 or gain2 <= 0:
            continue
        p1_star = harm / (harm + gain1)
        p2_star = harm / (harm + gain2)
        if not (0.05 < p1_star < 0.9 and 0.05 < p2_star < 0.9):
            continue
        for delta in (0.04, 0.015, 0.005):
            t1, t2 = p1_star * (1 - delta), p2_star * (1 - delta)
            f1 = (1 - t1) * s1 + t1 * b1
            g1 = 1 - t1 + t1 * mo1
            f2 = (1 - t2) * s2 + t2 * b2
            g2 = 1 - t2 + t2 * mo2
            if f1 * f2 <= g1 * g2 * 1.0005:
                continue
            prior1 = min(max(0.4 * t1, 0.002), 0.5)
            prior2 = min(max(0.4 * t2, 0.002), 0.5)
            sign1 = _posterior_manifestation("d1", "m1", 0.08, t1, prior1)
            sign2 = _posterior_manifestation("d2", "m2", 0.08, t2, prior2)
            if sign1 is None or sign2 is None:
                continue
            boosters = {
                "d1": Manifestation(
                    id="mb1", name="Booster for d1", leak=0.05,
                    links=(Link(disease="d1", strength=0.95),),
                ),
                "d2": Manifestation(
                    id="mb2", name="Booster for d2", leak=0.05,
                    links=(Link(disease="d2", strength=0.95),),
                ),
            }
            kb = KnowledgeBase(
                version=1,
                diseases=(
                    Disease(id="d1", name="Disease one", prior=prior1),
                    Disease(id="d2", name="Disease two", prior=prior2),
                ),
                manifestations=(sign1, sign2, boosters["d1"], boosters["d2"]),
                treatments=(Treatment(id="tx", name="Dual treatment", treats=("d1", "d2")),),
                subvalues=(
                    SubvalueNode(
                        id="u_tx_d1", disease_parents=("d1",), treatment_parents=("tx",),
                        table={"00": 1.0, "01": s1, "10": mo1, "11": b1},
                    ),
                    SubvalueNode(
                        id="u_tx_d2", disease_parents=("d2",), treatment_parents=("tx",),
                        table={"00": 1.0, "01": s2, "10": mo2, "11": b2},
                    ),
                ),
            )
            findings = Findings(frozenset({"m1", "m2"}), frozenset())
            thresholds = threshold_table(kb)
            result = formulate_full(kb, findings, thresholds, Policy(method="quickscore"))
            comprehensive = solve_comprehensive(kb, findings)
            reduced_assignment = result.recommendation.assignment()
            if not comprehensive.best["tx"]:
                continue
            if reduced_assignment["tx"]:
                continue
            if result.recommendation.decisions["tx"].source != PRUNED:
                continue
            return UnsoundCase(
                kb=kb,
                findings=findings,
                comprehensive_best=dict(comprehensive.best),
                reduced_best=reduced_assignment,
                treatment_id="tx",
                boosters={k: v.id for k, v in boosters.items()},
            )
    raise ConstructionError(f"could not construct a verified unsound case for seed {seed}")
