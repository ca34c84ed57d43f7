"""Posterior disease probabilities given findings.

Four interchangeable methods over the same noisy-OR model:

* `oracle_posteriors`: exact brute force over all disease states; the
  ground truth everything else is tested against.
* `quickscore_posteriors`: exact inclusion-exclusion over subsets of the
  positive findings; cost is exponential only in |F+|.
* `bounded_posteriors`: anytime [lower, upper] intervals from partial
  enumeration of disease states in descending prior-mass order.
* `mc_posteriors`: seeded likelihood-weighted sampling.

P(m present | state) = 1 - (1-leak) * prod over linked true diseases of
(1 - strength). Diseases are marginally independent.
"""

from __future__ import annotations

import heapq
import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import CapExceededError, InvalidModelError, ZeroEvidenceError
from .kb import Findings, KnowledgeBase, Manifestation, validate_findings

DEFAULT_DISEASE_CAP = 20
DEFAULT_PRESENT_CAP = 20
DEFAULT_SUBSET_CAP = 16

# Likelihood products switch to log space beyond this many negative
# findings, to avoid underflow of long probability products.
LOG_SPACE_NEGATIVE_CUTOFF = 64

# Quickscore falls back to exact rational arithmetic when inclusion-
# exclusion cancellation leaves fewer than ~4 leading digits in float64.
_CANCELLATION_GUARD = 1e-4

# Relative slack applied to anytime bounds so that independently computed
# exact values can never fall outside an interval by a rounding ulp.
_BOUND_SLACK = 1e-12


@dataclass(frozen=True)
class SampleBudget:
    """Monte-Carlo effort: explicit sample count and RNG seed."""

    n_samples: int
    seed: int

    def __post_init__(self) -> None:
        if self.n_samples < 1:
            raise ValueError(f"n_samples must be >= 1, got {self.n_samples}")


@dataclass(frozen=True)
class PosteriorReport:
    """Per-disease posterior estimates plus method/effort metadata.

    `posteriors` maps disease id to either a point probability or a
    (lower, upper) tuple. `op_count` counts elementary term evaluations;
    `outer_terms` is the inclusion-exclusion outer-term count (quickscore
    only). `evidence_likelihood` is reported by point methods only.
    """

    method: str
    posteriors: Mapping[str, float | tuple[float, float]]
    budget_used: int
    op_count: int
    evidence_likelihood: float | None = None
    outer_terms: int | None = None
    all_weights_zero: bool = False

    def __post_init__(self) -> None:
        object.__setattr__(self, "posteriors", dict(self.posteriors))

    def lower(self, disease_id: str) -> float:
        entry = self.posteriors[disease_id]
        return entry[0] if isinstance(entry, tuple) else entry

    def upper(self, disease_id: str) -> float:
        entry = self.posteriors[disease_id]
        return entry[1] if isinstance(entry, tuple) else entry

    @property
    def is_interval(self) -> bool:
        return any(isinstance(v, tuple) for v in self.posteriors.values())

    def to_dict(self) -> dict:
        out: dict = {
            "method": self.method,
            "budget_used": self.budget_used,
            "op_count": self.op_count,
            "posteriors": {
                k: (list(v) if isinstance(v, tuple) else v)
                for k, v in sorted(self.posteriors.items())
            },
        }
        if self.evidence_likelihood is not None:
            out["evidence_likelihood"] = self.evidence_likelihood
        if self.outer_terms is not None:
            out["outer_terms"] = self.outer_terms
        if self.all_weights_zero:
            out["all_weights_zero"] = True
        return out


def _check_findings(kb: KnowledgeBase, findings: Findings) -> None:
    violations = validate_findings(kb, findings)
    if violations:
        raise InvalidModelError(violations)


@lru_cache(maxsize=32)
def _state_matrix(n: int) -> np.ndarray:
    """All 2^n disease states as a (2^n, n) 0/1 matrix; column j is disease j."""
    idx = np.arange(2**n, dtype=np.uint32)
    return ((idx[:, None] >> np.arange(n, dtype=np.uint32)) & 1).astype(np.uint8)


def _absence_probability(
    kb: KnowledgeBase, m: Manifestation, states: np.ndarray
) -> np.ndarray:
    """P(m absent | state) for each row of `states`."""
    out = np.full(states.shape[0], 1.0 - m.leak)
    for link in m.links:
        j = kb.disease_index[link.disease]
        out *= np.where(states[:, j] == 1, 1.0 - link.strength, 1.0)
    return out


def _state_weights(
    kb: KnowledgeBase, findings: Findings, states: np.ndarray
) -> tuple[np.ndarray, float]:
    """P(state) * P(findings | state) per row, possibly rescaled.

    Returns (weights, log_offset): true weight = weights * exp(log_offset).
    The offset is 0 unless the negative-findings count forces log space.
    """
    n = len(kb.diseases)
    present = sorted(findings.present)
    absent = sorted(findings.absent)
    if len(absent) <= LOG_SPACE_NEGATIVE_CUTOFF:
        w = np.ones(states.shape[0])
        for j, d in enumerate(kb.diseases):
            w *= np.where(states[:, j] == 1, d.prior, 1.0 - d.prior)
        for mid in present:
            w *= 1.0 - _absence_probability(kb, kb.manifestation_by_id[mid], states)
        for mid in absent:
            w *= _absence_probability(kb, kb.manifestation_by_id[mid], states)
        return w, 0.0

    with np.errstate(divide="ignore"):
        logw = np.zeros(states.shape[0])
        for j, d in enumerate(kb.diseases):
            logw += np.where(states[:, j] == 1, math.log(d.prior), math.log1p(-d.prior))
        for mid in present:
            logw += np.log(
                1.0 - _absence_probability(kb, kb.manifestation_by_id[mid], states)
            )
        for mid in absent:
            logw += np.log(_absence_probability(kb, kb.manifestation_by_id[mid], states))
    finite = np.isfinite(logw)
    if not finite.any():
        return np.zeros(states.shape[0]), 0.0
    offset = float(logw[finite].max())
    return np.where(finite, np.exp(logw - offset), 0.0), offset


def oracle_posteriors(
    kb: KnowledgeBase,
    findings: Findings,
    *,
    max_diseases: int = DEFAULT_DISEASE_CAP,
) -> PosteriorReport:
    """Exact posteriors by full enumeration of all 2^n disease states."""
    _check_findings(kb, findings)
    n = len(kb.diseases)
    if n > max_diseases:
        raise CapExceededError(f"{n} diseases exceeds the enumeration cap {max_diseases}")
    states = _state_matrix(n)
    w, offset = _state_weights(kb, findings, states)
    total = float(w.sum())
    if total <= 0.0:
        raise ZeroEvidenceError("the observed findings have zero likelihood")
    marg = (w @ states) / total
    posteriors = {d.id: float(np.clip(marg[j], 0.0, 1.0)) for j, d in enumerate(kb.diseases)}
    return PosteriorReport(
        method="oracle",
        posteriors=posteriors,
        budget_used=2**n,
        op_count=2**n,
        evidence_likelihood=total * math.exp(offset),
    )


def joint_posterior(
    kb: KnowledgeBase,
    findings: Findings,
    subset: Sequence[str],
    *,
    max_subset: int = DEFAULT_SUBSET_CAP,
    max_diseases: int = DEFAULT_DISEASE_CAP,
) -> dict[str, float]:
    """Exact joint posterior over `subset`, marginalizing all other diseases.

    Keys are bitstrings in subset order (leftmost bit = first id). Values
    sum to 1 within 1e-12.
    """
    _check_findings(kb, findings)
    k = len(subset)
    if k > max_subset:
        raise CapExceededError(f"subset of {k} diseases exceeds the joint cap {max_subset}")
    if len(set(subset)) != k:
        raise ValueError("subset contains duplicate disease ids")
    for did in subset:
        if did not in kb.disease_index:
            raise ValueError(f"unknown disease id {did!r}")
    n = len(kb.diseases)
    if n > max_diseases:
        raise CapExceededError(f"{n} diseases exceeds the enumeration cap {max_diseases}")

    if n <= 6:
        return _joint_posterior_small(kb, findings, tuple(subset))

    states = _state_matrix(n)
    w, _ = _state_weights(kb, findings, states)
    total = float(w.sum())
    if total <= 0.0:
        raise ZeroEvidenceError("the observed findings have zero likelihood")
    if k == 0:
        return {"": 1.0}
    pos = np.array([kb.disease_index[did] for did in subset])
    place = 1 << np.arange(k - 1, -1, -1, dtype=np.int64)
    idx = states[:, pos].astype(np.int64) @ place
    sums = np.bincount(idx, weights=w, minlength=2**k)
    return {format(i, f"0{k}b"): float(sums[i] / total) for i in range(2**k)}


def _joint_posterior_small(
    kb: KnowledgeBase, findings: Findings, subset: tuple[str, ...]
) -> dict[str, float]:
    # Pure-python fast path: avoids numpy overhead for the tiny submodels
    # the threshold sweep hammers.
    n = len(kb.diseases)
    present = [kb.manifestation_by_id[i] for i in sorted(findings.present)]
    absent = [kb.manifestation_by_id[i] for i in sorted(findings.absent)]
    priors = kb.priors
    k = len(subset)
    pos = [kb.disease_index[did] for did in subset]
    sums = [0.0] * (2**k)
    total = 0.0
    for bits in itertools.product((0, 1), repeat=n):
        w = 1.0
        for j in range(n):
            w *= priors[j] if bits[j] else 1.0 - priors[j]
        for m, want_absent in itertools.chain(
            ((m, False) for m in present), ((m, True) for m in absent)
        ):
            ab = 1.0 - m.leak
            for link in m.links:
                if bits[kb.disease_index[link.disease]]:
                    ab *= 1.0 - link.strength
            w *= ab if want_absent else 1.0 - ab
        total += w
        idx = 0
        for p in pos:
            idx = (idx << 1) | bits[p]
        sums[idx] += w
    if total <= 0.0:
        raise ZeroEvidenceError("the observed findings have zero likelihood")
    if k == 0:
        return {"": 1.0}
    return {format(i, f"0{k}b"): sums[i] / total for i in range(2**k)}


# ---------------------------------------------------------------------------
# Quickscore

def _neg_products(kb: KnowledgeBase, absent: list[Manifestation]):
    """Single linear pass absorbing all negative findings.

    Returns (per-disease product of link-failure probabilities, log of the
    product of (1-leak) factors)."""
    n = len(kb.diseases)
    qneg = np.ones(n)
    log_leak = 0.0
    for m in absent:
        log_leak += math.log(1.0 - m.leak)
        for link in m.links:
            qneg[kb.disease_index[link.disease]] *= 1.0 - link.strength
    return qneg, log_leak


def quickscore_posteriors(
    kb: KnowledgeBase,
    findings: Findings,
    *,
    max_present: int = DEFAULT_PRESENT_CAP,
) -> PosteriorReport:
    """Exact posteriors by inclusion-exclusion over the positive findings.

    Cost is O(2^|F+| * n) term evaluations plus a linear pass over the
    negative findings; `outer_terms` reports the inclusion-exclusion
    outer-term count, exactly 2^|F+|. When alternating-sum cancellation
    eats the float64 significand the subset loop is re-run in exact
    rational arithmetic, so results match the oracle to ~1e-12 regardless
    of how unlikely the evidence is.
    """
    _check_findings(kb, findings)
    present = [kb.manifestation_by_id[i] for i in sorted(findings.present)]
    absent = [kb.manifestation_by_id[i] for i in sorted(findings.absent)]
    p = len(present)
    if p > max_present:
        raise CapExceededError(f"{p} positive findings exceeds the quickscore cap {max_present}")
    n = len(kb.diseases)
    priors = np.array(kb.priors)
    qneg, log_leak_neg = _neg_products(kb, absent)

    pm_idx = []
    pm_q = []
    pm_leak = []
    for m in present:
        pm_idx.append(np.array([kb.disease_index[l.disease] for l in m.links], dtype=np.intp))
        pm_q.append(np.array([1.0 - l.strength for l in m.links]))
        pm_leak.append(1.0 - m.leak)

    total = 0.0
    abs_sum = 0.0
    numer = np.zeros(n)
    outer_terms = 0
    for s in range(2**p):
        qs = qneg.copy()
        leak_factor = 1.0
        sign = 1.0
        for t in range(p):
            if s >> t & 1:
                qs[pm_idx[t]] *= pm_q[t]
                leak_factor *= pm_leak[t]
                sign = -sign
        f = 1.0 - priors + priors * qs
        term = sign * leak_factor * float(np.prod(f))
        total += term
        abs_sum += abs(term)
        numer += term * (priors * qs / f)
        outer_terms += 1

    # op_count: one factor evaluation per disease per outer term, plus one
    # per disease per negative finding for the linear absorption pass.
    op_count = n * (outer_terms + len(absent))

    if total <= abs_sum * _CANCELLATION_GUARD:
        total_exact, numer_exact = _quickscore_exact(kb, present, absent)
        if total_exact == 0:
            raise ZeroEvidenceError("the observed findings have zero likelihood")
        total = float(total_exact)
        posteriors = {
            d.id: min(max(float(numer_exact[j] / total_exact), 0.0), 1.0)
            for j, d in enumerate(kb.diseases)
        }
    else:
        posteriors = {
            d.id: min(max(float(numer[j] / total), 0.0), 1.0)
            for j, d in enumerate(kb.diseases)
        }

    evidence = math.exp(log_leak_neg) * total if total > 0 else 0.0
    return PosteriorReport(
        method="quickscore",
        posteriors=posteriors,
        budget_used=outer_terms,
        op_count=op_count,
        evidence_likelihood=evidence,
        outer_terms=outer_terms,
    )


def _quickscore_exact(
    kb: KnowledgeBase, present: list[Manifestation], absent: list[Manifestation]
):
    """The subset loop in exact rational arithmetic (no leak factor for the
    negative findings: it cancels in every posterior)."""
    n = len(kb.diseases)
    one = Fraction(1)
    priors = [Fraction(d.prior) for d in kb.diseases]
    qneg = [one] * n
    for m in absent:
        for link in m.links:
            qneg[kb.disease_index[link.disease]] *= one - Fraction(link.strength)
    pm = [
        (
            [kb.disease_index[l.disease] for l in m.links],
            [one - Fraction(l.strength) for l in m.links],
            one - Fraction(m.leak),
        )
        for m in present
    ]
    total = Fraction(0)
    numer = [Fraction(0)] * n
    for s in range(2 ** len(present)):
        qs = list(qneg)
        leak_factor = one
        sign = 1
        for t, (idxs, qvals, lk) in enumerate(pm):
            if s >> t & 1:
                for i, q in zip(idxs, qvals):
                    qs[i] *= q
                leak_factor *= lk
                sign = -sign
        term = leak_factor if sign > 0 else -leak_factor
        fs = []
        for j in range(n):
            f = one - priors[j] + priors[j] * qs[j]
            fs.append(f)
            term *= f
        total += term
        for j in range(n):
            numer[j] += term * priors[j] * qs[j] / fs[j]
    return total, numer


# ---------------------------------------------------------------------------
# Anytime bounds

def _states_by_prior_mass(priors: Sequence[float], limit: int):
    """Yield up to `limit` disease states in descending prior-mass order.

    Deterministic: ties broken by the flip set. Each state is reached by
    flipping a set of diseases away from their individually most likely
    value, so enumeration order is prefix-stable across budgets.
    """
    n = len(priors)
    base = tuple(1 if p > 0.5 else 0 for p in priors)
    base_mass = 1.0
    for j, p in enumerate(priors):
        base_mass *= max(p, 1.0 - p)
    ratio = [min(p, 1.0 - p) / max(p, 1.0 - p) for p in priors]
    heap = [(-base_mass, ())]
    emitted = 0
    while heap and emitted < limit:
        neg_mass, flips = heapq.heappop(heap)
        state = list(base)
        for j in flips:
            state[j] = 1 - state[j]
        yield tuple(state), -neg_mass
        emitted += 1
        start = flips[-1] + 1 if flips else 0
        for j in range(start, n):
            heapq.heappush(heap, (neg_mass * ratio[j], flips + (j,)))


def bounded_posteriors(
    kb: KnowledgeBase,
    findings: Findings,
    budget: int,
    *,
    max_diseases: int = DEFAULT_DISEASE_CAP,
) -> PosteriorReport:
    """Anytime [lower, upper] posterior intervals.

    Enumerates the `budget` highest-prior-mass disease states exactly and
    bounds the contribution of the unenumerated prior mass R by its
    extremes: lower = W_d / (W + R), upper = (W_d + R) / (W + R), where W
    is the explained evidence mass and W_d its share with the disease
    true. Intervals always contain the exact posterior, tighten weakly as
    the budget grows, and collapse to the oracle at full enumeration.
    """
    _check_findings(kb, findings)
    if budget < 1:
        raise ValueError(f"budget must be >= 1, got {budget}")
    n = len(kb.diseases)
    if n > max_diseases:
        raise CapExceededError(f"{n} diseases exceeds the enumeration cap {max_diseases}")
    full = 2**n
    k = min(budget, full)

    if k == full:
        states = _state_matrix(n)
        R = 0.0
    else:
        rows = [state for state, _ in _states_by_prior_mass(kb.priors, k)]
        states = np.array(rows, dtype=np.uint8)
        pr = np.array(kb.priors)
        masses = np.where(states == 1, pr, 1.0 - pr).prod(axis=1)
        # Unenumerated prior mass, from per-state products consistent
        # across budgets (fsum keeps the partial sums order-independent).
        R = max(0.0, 1.0 - math.fsum(masses.tolist()))

    w, log_offset = _state_weights(kb, findings, states)
    w_list = w.tolist()
    W = math.fsum(w_list)
    if log_offset != 0.0 and R > 0.0:
        # Rescaled weights: combine in log space to keep ratios stable.
        logW = math.log(W) + log_offset if W > 0 else -math.inf
        logR = math.log(R)
        logD = np.logaddexp(logW, logR)
        entries = {}
        for j, d in enumerate(kb.diseases):
            Wj = math.fsum(wv for wv, b in zip(w_list, states[:, j]) if b)
            logWj = math.log(Wj) + log_offset if Wj > 0 else -math.inf
            lo = math.exp(logWj - logD) if logWj > -math.inf else 0.0
            hi = math.exp(np.logaddexp(logWj, logR) - logD)
            entries[d.id] = _slacked(lo, hi)
        return PosteriorReport(
            method="bounds", posteriors=entries, budget_used=k, op_count=k
        )

    denom = W + R
    if denom <= 0.0:
        # Only reachable at full enumeration: the likelihood upper bound is 0.
        raise ZeroEvidenceError("the observed findings have zero likelihood")
    entries = {}
    for j, d in enumerate(kb.diseases):
        Wj = math.fsum(wv for wv, b in zip(w_list, states[:, j]) if b)
        entries[d.id] = _slacked(Wj / denom, (Wj + R) / denom)
    return PosteriorReport(method="bounds", posteriors=entries, budget_used=k, op_count=k)


def _slacked(lo: float, hi: float) -> tuple[float, float]:
    return (lo * (1.0 - _BOUND_SLACK), min(1.0, hi * (1.0 + _BOUND_SLACK)))


# ---------------------------------------------------------------------------
# Monte Carlo

def mc_posteriors(
    kb: KnowledgeBase, findings: Findings, budget: SampleBudget
) -> PosteriorReport:
    """Likelihood-weighted estimates: diseases sampled from their priors,
    each sample weighted by the likelihood of the observed findings.

    Fully determined by the explicit seed. If every sample weight is zero
    the report says so instead of crashing (posteriors omitted)."""
    _check_findings(kb, findings)
    n = len(kb.diseases)
    rng = np.random.default_rng(budget.seed)
    states = (rng.random((budget.n_samples, n)) < np.array(kb.priors)).astype(np.uint8)

    present = sorted(findings.present)
    absent = sorted(findings.absent)
    if len(absent) <= LOG_SPACE_NEGATIVE_CUTOFF:
        w = np.ones(budget.n_samples)
        for mid in present:
            w *= 1.0 - _absence_probability(kb, kb.manifestation_by_id[mid], states)
        for mid in absent:
            w *= _absence_probability(kb, kb.manifestation_by_id[mid], states)
    else:
        with np.errstate(divide="ignore"):
            logw = np.zeros(budget.n_samples)
            for mid in present:
                logw += np.log(
                    1.0 - _absence_probability(kb, kb.manifestation_by_id[mid], states)
                )
            for mid in absent:
                logw += np.log(
                    _absence_probability(kb, kb.manifestation_by_id[mid], states)
                )
        w = np.exp(logw)

    total = float(w.sum())
    if total <= 0.0:
        return PosteriorReport(
            method="montecarlo",
            posteriors={},
            budget_used=budget.n_samples,
            op_count=budget.n_samples,
            evidence_likelihood=0.0,
            all_weights_zero=True,
        )
    est = (w @ states) / total
    posteriors = {d.id: float(np.clip(est[j], 0.0, 1.0)) for j, d in enumerate(kb.diseases)}
    return PosteriorReport(
        method="montecarlo",
        posteriors=posteriors,
        budget_used=budget.n_samples,
        op_count=budget.n_samples,
        evidence_likelihood=total / budget.n_samples,
    )
