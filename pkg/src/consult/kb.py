"""Knowledge-base domain types, structural validation, file format, and stats.

The model is a two-layer bipartite belief network (independent binary
diseases conditioning binary manifestations through noisy-OR links, each
manifestation carrying a leak probability) extended with binary treatment
decisions and multiplicative subvalue-utility nodes.

File format: UTF-8 JSON with top-level keys exactly
{"version", "diseases", "manifestations", "treatments", "subvalues"};
see schemas/kb.schema.json. Serialization is canonical (sorted ids, sorted
keys, shortest round-trip floats) so save/load round-trips are byte-exact.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Any, Iterable, Mapping

from .canonical import canonical_bytes, content_hash
from .errors import InvalidModelError, ParseError

IDENT_RE = re.compile(r"^[A-Za-z0-9_]+$")


@dataclass(frozen=True)
class Violation:
    """One broken invariant: which node, which rule, and what happened."""

    node_id: str
    rule: str
    message: str

    def __str__(self) -> str:
        return f"[{self.rule}] {self.node_id}: {self.message}"


@dataclass(frozen=True)
class Disease:
    id: str
    name: str
    prior: float


@dataclass(frozen=True)
class Link:
    """Noisy-OR arc: `strength` is the probability the disease alone causes
    the manifestation."""

    disease: str
    strength: float


@dataclass(frozen=True)
class Manifestation:
    id: str
    name: str
    leak: float
    links: tuple[Link, ...]

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "links", tuple(sorted(self.links, key=lambda l: l.disease))
        )


@dataclass(frozen=True)
class Treatment:
    id: str
    name: str
    treats: tuple[str, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "treats", tuple(sorted(self.treats)))


@dataclass(frozen=True)
class SubvalueNode:
    """One multiplicative utility factor.

    `table` maps a parent-state bitstring to a utility in (0, 1]. Bit order
    is disease parents first, then treatment parents, in declared order;
    '0' is false. The all-false key must map to exactly 1.0 so an untreated
    healthy patient has unit utility.
    """

    id: str
    disease_parents: tuple[str, ...]
    treatment_parents: tuple[str, ...]
    table: Mapping[str, float]

    def __post_init__(self) -> None:
        object.__setattr__(self, "disease_parents", tuple(self.disease_parents))
        object.__setattr__(self, "treatment_parents", tuple(self.treatment_parents))
        object.__setattr__(self, "table", dict(self.table))

    @property
    def arity(self) -> int:
        return len(self.disease_parents) + len(self.treatment_parents)

    def value(self, disease_state: Mapping[str, bool], assignment: Mapping[str, bool]) -> float:
        key = "".join(
            "1" if disease_state[d] else "0" for d in self.disease_parents
        ) + "".join("1" if assignment[t] else "0" for t in self.treatment_parents)
        return self.table[key]


@dataclass(frozen=True)
class KnowledgeBase:
    """The comprehensive model. Immutable after construction; node lists are
    canonicalized (sorted by id) so deep equality matches file equality."""

    version: int
    diseases: tuple[Disease, ...]
    manifestations: tuple[Manifestation, ...]
    treatments: tuple[Treatment, ...]
    subvalues: tuple[SubvalueNode, ...]

    def __post_init__(self) -> None:
        for attr in ("diseases", "manifestations", "treatments", "subvalues"):
            items = tuple(sorted(getattr(self, attr), key=lambda x: x.id))
            object.__setattr__(self, attr, items)

    @cached_property
    def disease_ids(self) -> tuple[str, ...]:
        return tuple(d.id for d in self.diseases)

    @cached_property
    def disease_index(self) -> dict[str, int]:
        return {d.id: i for i, d in enumerate(self.diseases)}

    @cached_property
    def priors(self) -> tuple[float, ...]:
        return tuple(d.prior for d in self.diseases)

    @cached_property
    def manifestation_by_id(self) -> dict[str, Manifestation]:
        return {m.id: m for m in self.manifestations}

    @cached_property
    def treatment_by_id(self) -> dict[str, Treatment]:
        return {t.id: t for t in self.treatments}

    @cached_property
    def subvalue_by_id(self) -> dict[str, SubvalueNode]:
        return {u.id: u for u in self.subvalues}

    @cached_property
    def treating_pairs(self) -> tuple[tuple[str, str], ...]:
        """All (treatment-id, disease-id) pairs where the treatment treats
        the disease, sorted."""
        return tuple(sorted((t.id, d) for t in self.treatments for d in t.treats))


@dataclass(frozen=True)
class Findings:
    """Per-case evidence: manifestations observed present or absent.
    Anything unmentioned is unobserved."""

    present: frozenset[str]
    absent: frozenset[str]

    def __post_init__(self) -> None:
        object.__setattr__(self, "present", frozenset(self.present))
        object.__setattr__(self, "absent", frozenset(self.absent))
        overlap = self.present & self.absent
        if overlap:
            raise InvalidModelError(
                Violation(i, "present-absent-disjoint", "marked both present and absent")
                for i in sorted(overlap)
            )

    @property
    def observed(self) -> frozenset[str]:
        return self.present | self.absent


EMPTY_FINDINGS = Findings(frozenset(), frozenset())


# ---------------------------------------------------------------------------
# Validation

def _check_ident(node_id: str, out: list[Violation]) -> None:
    if not IDENT_RE.match(node_id):
        out.append(Violation(node_id, "identifier-charset", "id must match [A-Za-z0-9_]+"))


def validate_kb(kb: KnowledgeBase) -> list[Violation]:
    """Check every structural invariant; an empty list means the KB is valid.

    Violations are data, not exceptions: each names the offending node id
    and the rule it breaks.
    """
    out: list[Violation] = []
    if not kb.diseases:
        out.append(Violation("<kb>", "nonempty-diseases", "at least one disease required"))

    seen_by_kind: dict[str, str] = {}
    for kind, items in (
        ("disease", kb.diseases),
        ("manifestation", kb.manifestations),
        ("treatment", kb.treatments),
        ("subvalue", kb.subvalues),
    ):
        kind_seen: set[str] = set()
        for item in items:
            _check_ident(item.id, out)
            if item.id in kind_seen:
                out.append(Violation(item.id, "duplicate-id", f"duplicate {kind} id"))
            elif item.id in seen_by_kind:
                out.append(
                    Violation(
                        item.id,
                        "namespace-collision",
                        f"id used by both a {seen_by_kind[item.id]} and a {kind}",
                    )
                )
            kind_seen.add(item.id)
        for i in kind_seen:
            seen_by_kind.setdefault(i, kind)

    disease_ids = {d.id for d in kb.diseases}
    for d in kb.diseases:
        if not (0.0 < d.prior < 1.0):
            out.append(Violation(d.id, "prior-open-interval", f"prior {d.prior!r} not in (0,1)"))

    for m in kb.manifestations:
        if not (0.0 <= m.leak < 1.0):
            out.append(Violation(m.id, "leak-range", f"leak {m.leak!r} not in [0,1)"))
        linked: set[str] = set()
        for link in m.links:
            if link.disease not in disease_ids:
                out.append(Violation(m.id, "unknown-disease", f"links to unknown disease {link.disease!r}"))
            if link.disease in linked:
                out.append(Violation(m.id, "duplicate-link", f"duplicate link to {link.disease!r}"))
            linked.add(link.disease)
            if not (0.0 < link.strength <= 1.0):
                out.append(
                    Violation(m.id, "strength-range", f"strength {link.strength!r} for {link.disease!r} not in (0,1]")
                )

    covered_pairs: set[tuple[str, str]] = set()
    for u in kb.subvalues:
        for did in u.disease_parents:
            for tid in u.treatment_parents:
                covered_pairs.add((tid, did))

    for t in kb.treatments:
        if not t.treats:
            out.append(Violation(t.id, "treats-nonempty", "treatment must treat at least one disease"))
        if len(set(t.treats)) != len(t.treats):
            out.append(Violation(t.id, "duplicate-treats", "treats list has duplicates"))
        for did in t.treats:
            if did not in disease_ids:
                out.append(Violation(t.id, "unknown-disease", f"treats unknown disease {did!r}"))
            elif (t.id, did) not in covered_pairs:
                out.append(
                    Violation(
                        t.id,
                        "treating-pair-coverage",
                        f"pair ({t.id},{did}) never co-parents a subvalue node",
                    )
                )

    treatment_ids = {t.id for t in kb.treatments}
    for u in kb.subvalues:
        if not u.disease_parents and not u.treatment_parents:
            out.append(Violation(u.id, "parents-empty", "subvalue node has no parents"))
        dupes = len(set(u.disease_parents)) != len(u.disease_parents) or len(
            set(u.treatment_parents)
        ) != len(u.treatment_parents)
        if dupes:
            out.append(Violation(u.id, "duplicate-parent", "repeated parent in parent list"))
        for did in u.disease_parents:
            if did not in disease_ids:
                out.append(Violation(u.id, "unknown-disease", f"unknown disease parent {did!r}"))
        for tid in u.treatment_parents:
            if tid not in treatment_ids:
                out.append(Violation(u.id, "unknown-treatment", f"unknown treatment parent {tid!r}"))
        arity = u.arity
        expected = {format(i, f"0{arity}b") for i in range(2**arity)} if arity else {""}
        keys = set(u.table.keys())
        if keys != expected:
            missing = sorted(expected - keys)[:3]
            extra = sorted(keys - expected)[:3]
            out.append(
                Violation(
                    u.id,
                    "table-keys",
                    f"table must cover exactly the {2**arity} parent states"
                    + (f"; missing {missing}" if missing else "")
                    + (f"; unexpected {extra}" if extra else ""),
                )
            )
        for key, val in u.table.items():
            if not isinstance(val, (int, float)) or not (0.0 < float(val) <= 1.0):
                out.append(Violation(u.id, "utility-range", f"table[{key!r}] = {val!r} not in (0,1]"))
        all_false = "0" * arity
        if u.table.get(all_false) != 1:
            out.append(
                Violation(u.id, "normalization", f"all-false state must have utility 1, got {u.table.get(all_false)!r}")
            )

    return out


def validate_findings(kb: KnowledgeBase, findings: Findings) -> list[Violation]:
    known = set(kb.manifestation_by_id)
    return [
        Violation(i, "unknown-manifestation", "findings reference unknown manifestation")
        for i in sorted(findings.observed - known)
    ]


# ---------------------------------------------------------------------------
# File format

def kb_to_dict(kb: KnowledgeBase) -> dict[str, Any]:
    return {
        "version": kb.version,
        "diseases": [{"id": d.id, "name": d.name, "prior": d.prior} for d in kb.diseases],
        "manifestations": [
            {
                "id": m.id,
                "name": m.name,
                "leak": m.leak,
                "links": [{"disease": l.disease, "strength": l.strength} for l in m.links],
            }
            for m in kb.manifestations
        ],
        "treatments": [
            {"id": t.id, "name": t.name, "treats": list(t.treats)} for t in kb.treatments
        ],
        "subvalues": [
            {
                "id": u.id,
                "disease_parents": list(u.disease_parents),
                "treatment_parents": list(u.treatment_parents),
                "table": {k: float(v) for k, v in u.table.items()},
            }
            for u in kb.subvalues
        ],
    }


class _Path:
    """Tracks a JSON field path for parse-error context."""

    def __init__(self, *parts: Any) -> None:
        self.parts = parts

    def __truediv__(self, part: Any) -> "_Path":
        return _Path(*self.parts, part)

    def __str__(self) -> str:
        s = "$"
        for p in self.parts:
            s += f"[{p}]" if isinstance(p, int) else f".{p}"
        return s


def _expect(obj: Mapping[str, Any], key: str, types: type | tuple, path: _Path) -> Any:
    if not isinstance(obj, Mapping):
        raise ParseError(f"{path}: expected an object")
    if key not in obj:
        raise ParseError(f"{path}: missing required field {key!r}")
    val = obj[key]
    if types is float and isinstance(val, int) and not isinstance(val, bool):
        val = float(val)
    if not isinstance(val, types) or isinstance(val, bool) and types is not bool:
        raise ParseError(f"{path / key}: expected {getattr(types, '__name__', types)}, got {type(val).__name__}")
    return val


def kb_from_dict(data: Mapping[str, Any]) -> KnowledgeBase:
    """Build a KnowledgeBase from parsed JSON, with field-level error context.

    Structural problems raise ParseError naming the offending path; semantic
    invariants are left to validate_kb.
    """
    root = _Path()
    if not isinstance(data, Mapping):
        raise ParseError("$: top level must be a JSON object")
    expected_keys = {"version", "diseases", "manifestations", "treatments", "subvalues"}
    actual = set(data.keys())
    if actual != expected_keys:
        missing, extra = sorted(expected_keys - actual), sorted(actual - expected_keys)
        raise ParseError(
            "$: top-level keys must be exactly "
            f"{sorted(expected_keys)} (missing {missing}, unexpected {extra})"
        )
    version = _expect(data, "version", int, root)

    diseases = []
    for i, raw in enumerate(_expect(data, "diseases", list, root)):
        p = root / "diseases" / i
        diseases.append(
            Disease(
                id=_expect(raw, "id", str, p),
                name=_expect(raw, "name", str, p),
                prior=_expect(raw, "prior", float, p),
            )
        )

    manifestations = []
    for i, raw in enumerate(_expect(data, "manifestations", list, root)):
        p = root / "manifestations" / i
        links = []
        for j, rawlink in enumerate(_expect(raw, "links", list, p)):
            lp = p / "links" / j
            links.append(
                Link(
                    disease=_expect(rawlink, "disease", str, lp),
                    strength=_expect(rawlink, "strength", float, lp),
                )
            )
        manifestations.append(
            Manifestation(
                id=_expect(raw, "id", str, p),
                name=_expect(raw, "name", str, p),
                leak=_expect(raw, "leak", float, p),
                links=tuple(links),
            )
        )

    treatments = []
    for i, raw in enumerate(_expect(data, "treatments", list, root)):
        p = root / "treatments" / i
        treats = _expect(raw, "treats", list, p)
        if not all(isinstance(x, str) for x in treats):
            raise ParseError(f"{p / 'treats'}: every entry must be a disease id string")
        treatments.append(
            Treatment(id=_expect(raw, "id", str, p), name=_expect(raw, "name", str, p), treats=tuple(treats))
        )

    subvalues = []
    for i, raw in enumerate(_expect(data, "subvalues", list, root)):
        p = root / "subvalues" / i
        dparents = _expect(raw, "disease_parents", list, p)
        tparents = _expect(raw, "treatment_parents", list, p)
        if not all(isinstance(x, str) for x in dparents + tparents):
            raise ParseError(f"{p}: parent lists must contain id strings")
        table_raw = _expect(raw, "table", dict, p)
        table: dict[str, float] = {}
        for key, val in table_raw.items():
            if not isinstance(key, str) or (key and not set(key) <= {"0", "1"}):
                raise ParseError(f"{p / 'table'}: key {key!r} is not a bitstring")
            if isinstance(val, bool) or not isinstance(val, (int, float)):
                raise ParseError(f"{p / 'table'}: value for {key!r} is not a number")
            table[key] = float(val)
        subvalues.append(
            SubvalueNode(
                id=_expect(raw, "id", str, p),
                disease_parents=tuple(dparents),
                treatment_parents=tuple(tparents),
                table=table,
            )
        )

    return KnowledgeBase(
        version=version,
        diseases=tuple(diseases),
        manifestations=tuple(manifestations),
        treatments=tuple(treatments),
        subvalues=tuple(subvalues),
    )


def dumps_kb(kb: KnowledgeBase) -> bytes:
    return canonical_bytes(kb_to_dict(kb))


def save_kb(kb: KnowledgeBase, path: str | Path) -> None:
    Path(path).write_bytes(dumps_kb(kb))


def load_kb(path: str | Path) -> KnowledgeBase:
    """Load and fully validate a knowledge-base file.

    Raises ParseError (with line/field context) if the file is not valid
    JSON in the KB shape, or InvalidModelError (listing every violated
    invariant) if it parses but is semantically broken.
    """
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise ParseError(f"{path}: {e}") from e
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"{path}: line {e.lineno} column {e.colno}: {e.msg}") from e
    kb = kb_from_dict(data)
    violations = validate_kb(kb)
    if violations:
        raise InvalidModelError(violations)
    return kb


def kb_hash(kb: KnowledgeBase) -> str:
    return content_hash(kb_to_dict(kb))


def findings_to_dict(findings: Findings) -> dict[str, Any]:
    return {"present": sorted(findings.present), "absent": sorted(findings.absent)}


def findings_from_dict(data: Mapping[str, Any]) -> Findings:
    root = _Path()
    present = _expect(data, "present", list, root)
    absent = _expect(data, "absent", list, root)
    if not all(isinstance(x, str) for x in present + absent):
        raise ParseError("$: findings ids must be strings")
    return Findings(frozenset(present), frozenset(absent))


def save_findings(findings: Findings, path: str | Path) -> None:
    Path(path).write_bytes(canonical_bytes(findings_to_dict(findings)))


def load_findings(path: str | Path, kb: KnowledgeBase | None = None) -> Findings:
    path = Path(path)
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as e:
        raise ParseError(f"{path}: line {e.lineno} column {e.colno}: {e.msg}") from e
    except OSError as e:
        raise ParseError(f"{path}: {e}") from e
    findings = findings_from_dict(data)
    if kb is not None:
        violations = validate_findings(kb, findings)
        if violations:
            raise InvalidModelError(violations)
    return findings


def findings_hash(findings: Findings) -> str:
    return content_hash(findings_to_dict(findings))


def kb_stats(kb: KnowledgeBase) -> dict[str, int]:
    """Headline counts; n_arcs is the total number of disease→manifestation
    links."""
    return {
        "n_diseases": len(kb.diseases),
        "n_manifestations": len(kb.manifestations),
        "n_arcs": sum(len(m.links) for m in kb.manifestations),
        "n_treatments": len(kb.treatments),
        "n_subvalues": len(kb.subvalues),
    }
