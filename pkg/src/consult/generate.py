"""Synthetic knowledge-base generation for tests, experiments, and demos.

Generated models mirror the real structure at desk scale: rare-ish disease
priors, a handful of noisy-OR links per manifestation, one subvalue node
per treating pair, and optional pairwise treatment-interaction nodes
(a node over two treatments whose both-true entry is a penalty).
Everything is a pure function of the spec, including its seed.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, replace

from .errors import InfeasibleSpecError
from .kb import Disease, KnowledgeBase, Link, Manifestation, SubvalueNode, Treatment


@dataclass(frozen=True)
class GeneratorSpec:
    n_diseases: int
    n_manifestations: int
    n_treatments: int
    links_per_manifestation: int = 2
    prior_range: tuple[float, float] = (0.01, 0.2)
    strength_range: tuple[float, float] = (0.2, 0.95)
    leak_range: tuple[float, float] = (0.01, 0.1)
    interaction_prob: float = 0.25
    # Probability a treatment covers two diseases instead of one.
    two_disease_prob: float = 0.35
    # Force treatments to treat pairwise-disjoint disease sets (needed by
    # the decomposition-exactness experiments).
    disjoint_treats: bool = False
    seed: int = 0

    def validate(self) -> None:
        if min(self.n_diseases, self.n_manifestations, self.n_treatments) < 0:
            raise InfeasibleSpecError("counts must be >= 0")
        if self.links_per_manifestation < 0:
            raise InfeasibleSpecError("links_per_manifestation must be >= 0")
        if self.n_diseases == 0:
            # A valid KB needs at least one disease.
            raise InfeasibleSpecError("a knowledge base needs at least one disease")
        if self.n_manifestations > 0 and self.links_per_manifestation > self.n_diseases:
            raise InfeasibleSpecError(
                f"links_per_manifestation {self.links_per_manifestation} exceeds "
                f"{self.n_diseases} diseases"
            )
        lo, hi = self.prior_range
        if not (0.0 < lo <= hi < 1.0):
            raise InfeasibleSpecError(f"prior_range {self.prior_range} not inside (0,1)")
        lo, hi = self.strength_range
        if not (0.0 < lo <= hi <= 1.0):
            raise InfeasibleSpecError(f"strength_range {self.strength_range} not inside (0,1]")
        lo, hi = self.leak_range
        if not (0.0 <= lo <= hi < 1.0):
            raise InfeasibleSpecError(f"leak_range {self.leak_range} not inside [0,1)")
        if self.disjoint_treats and self.n_treatments > self.n_diseases:
            raise InfeasibleSpecError("disjoint_treats needs at least one disease per treatment")


def _width(n: int) -> int:
    return max(3, len(str(max(n - 1, 0))))


def generate_kb(spec: GeneratorSpec) -> KnowledgeBase:
    """Deterministically generate a KB that passes validate_kb."""
    spec.validate()
    r = random.Random(spec.seed)
    dw = _width(spec.n_diseases)

    diseases = tuple(
        Disease(
            id=f"d{i:0{dw}d}",
            name=f"Disease {i}",
            prior=r.uniform(*spec.prior_range),
        )
        for i in range(spec.n_diseases)
    )
    disease_ids = [d.id for d in diseases]

    mw = _width(spec.n_manifestations)
    manifestations = []
    for i in range(spec.n_manifestations):
        targets = sorted(r.sample(range(spec.n_diseases), spec.links_per_manifestation))
        links = tuple(
            Link(disease=disease_ids[j], strength=r.uniform(*spec.strength_range))
            for j in targets
        )
        manifestations.append(
            Manifestation(
                id=f"m{i:0{mw}d}",
                name=f"Manifestation {i}",
                leak=r.uniform(*spec.leak_range),
                links=links,
            )
        )

    tw = _width(spec.n_treatments)
    treatments = []
    subvalues = []
    unclaimed = list(range(spec.n_diseases))
    for i in range(spec.n_treatments):
        tid = f"t{i:0{tw}d}"
        want_two = spec.n_diseases >= 2 and r.random() < spec.two_disease_prob
        if spec.disjoint_treats:
            still_needed = spec.n_treatments - i - 1
            k = 2 if want_two and len(unclaimed) >= 2 + still_needed else 1
            picked = sorted(r.sample(range(len(unclaimed)), k))
            targets = [unclaimed[j] for j in picked]
            for j in reversed(picked):
                del unclaimed[j]
        else:
            targets = sorted(r.sample(range(spec.n_diseases), 2 if want_two else 1))
        treats = tuple(disease_ids[j] for j in targets)
        treatments.append(Treatment(id=tid, name=f"Treatment {i}", treats=treats))
        for did in treats:
            side_effect = 1.0 if r.random() < 0.1 else r.uniform(0.6, 0.999)
            morbidity = r.uniform(0.05, 0.9)
            treated = r.uniform(0.05, 1.0)
            subvalues.append(
                SubvalueNode(
                    id=f"u_{tid}_{did}",
                    disease_parents=(did,),
                    treatment_parents=(tid,),
                    table={"00": 1.0, "01": side_effect, "10": morbidity, "11": treated},
                )
            )
        if i > 0 and r.random() < spec.interaction_prob:
            partner = treatments[r.randrange(i)].id
            a, b = sorted((partner, tid))
            subvalues.append(
                SubvalueNode(
                    id=f"u_x_{a}_{b}",
                    disease_parents=(),
                    treatment_parents=(a, b),
                    table={"00": 1.0, "01": 1.0, "10": 1.0, "11": r.uniform(0.3, 0.95)},
                )
            )

    return KnowledgeBase(
        version=1,
        diseases=diseases,
        manifestations=tuple(manifestations),
        treatments=tuple(treatments),
        subvalues=tuple(subvalues),
    )


def with_seed(spec: GeneratorSpec, seed: int) -> GeneratorSpec:
    return replace(spec, seed=seed)
