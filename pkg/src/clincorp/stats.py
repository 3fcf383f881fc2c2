"""Descriptive corpus statistics and regression against reference tables.

All percentages are rounded half away from zero to two decimals.  Tables
list observed labels only (a label never annotated simply has no row), sorted
by count descending then label, which keeps output deterministic.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import InputError
from .groups import expand_all
from .model import DOC_TYPES, Document
from .numfmt import round_half_up
from .refdata import matches_display
from .tagsets import EntityType, VALID_ASSERTIONS, relation_signature

DISTRIBUTION_LAYERS = ("pos", "syntactic", "entity_type", "relation_type")

# Entity-pair subtotal labels, keyed by the unordered endpoint-type pair and
# listed in canonical reporting order.
_PAIR_LABELS: list[tuple[frozenset[EntityType], str]] = [
    (frozenset({EntityType.TREATMENT, EntityType.DISEASE}), "R(Tr, D)"),
    (frozenset({EntityType.TREATMENT, EntityType.SYMPTOM}), "R(Tr, S)"),
    (frozenset({EntityType.TEST, EntityType.DISEASE}), "R(Te, D)"),
    (frozenset({EntityType.TEST, EntityType.SYMPTOM}), "R(Te, S)"),
    (frozenset({EntityType.DISEASE, EntityType.SYMPTOM}), "R(D, S)"),
]

_CROSS_TYPE_ORDER = (
    EntityType.DISEASE, EntityType.SYMPTOM, EntityType.TREATMENT, EntityType.TEST,
)


@dataclass(frozen=True, slots=True)
class DistributionRow:
    label: str
    count: int
    pct: float


@dataclass(frozen=True, slots=True)
class CrossRow:
    label: str
    count: int
    pct_within: float
    pct_all: float


def _filtered(docs: Iterable[Document], doc_type: str | None) -> list[Document]:
    return [d for d in docs if doc_type is None or d.doc_type == doc_type]


def _pct(count: int, total: int) -> float:
    return round_half_up(100.0 * count / total, 2)


def distribution(
    docs: Iterable[Document],
    layer: str,
    doc_type: str | None = None,
) -> list[DistributionRow]:
    """Label frequency table for one layer.

    pos counts part-of-speech labels over tokens; syntactic counts internal
    constituent labels over trees; entity_type counts entities; relation_type
    counts one-to-one expanded relations.
    """
    if layer not in DISTRIBUTION_LAYERS:
        raise InputError(
            f"unknown layer {layer!r}; expected one of {DISTRIBUTION_LAYERS}"
        )
    tally: Counter = Counter()
    for doc in _filtered(docs, doc_type):
        if layer == "pos":
            tally.update(
                t.pos for s in doc.sentences for t in s.tokens if t.pos is not None
            )
        elif layer == "syntactic":
            for tree in doc.trees:
                tally.update(
                    n.label for n in tree.nodes() if not n.is_preterminal
                )
        elif layer == "entity_type":
            if doc.annotations:
                tally.update(e.etype.value for e in doc.annotations.entities.values())
        else:
            if doc.annotations:
                tally.update(p.rtype.value for p in expand_all(doc.annotations))
    total = sum(tally.values())
    if total == 0:
        raise InputError(f"corpus has no {layer} annotations")
    return [
        DistributionRow(label, count, _pct(count, total))
        for label, count in sorted(tally.items(), key=lambda kv: (-kv[1], kv[0]))
    ]


def assertion_cross_table(
    docs: Iterable[Document], doc_type: str | None = None
) -> list[CrossRow]:
    """Entity counts broken down by type and assertion.

    Row labels are "<type>:<assertion>" ("none" for entities without one)
    plus a ":total" row per type; every valid combination gets a row even at
    count zero, so table shapes are comparable across corpora.
    """
    pair_tally: Counter = Counter()
    for doc in _filtered(docs, doc_type):
        if not doc.annotations:
            continue
        for e in doc.annotations.entities.values():
            a = e.assertion.value if e.assertion else "none"
            pair_tally[(e.etype, a)] += 1
    grand_total = sum(pair_tally.values())
    if grand_total == 0:
        return []
    rows: list[CrossRow] = []
    for etype in _CROSS_TYPE_ORDER:
        type_total = sum(c for (t, _), c in pair_tally.items() if t is etype)
        if type_total == 0:
            continue
        labels = {a.value for a in VALID_ASSERTIONS[etype]}
        labels.update(a for (t, a) in pair_tally if t is etype)
        per = sorted(
            ((a, pair_tally.get((etype, a), 0)) for a in labels),
            key=lambda kv: (-kv[1], kv[0]),
        )
        for a, count in per:
            rows.append(CrossRow(
                f"{etype.value}:{a}", count,
                _pct(count, type_total), _pct(count, grand_total),
            ))
        rows.append(CrossRow(
            f"{etype.value}:total", type_total, 100.0, _pct(type_total, grand_total),
        ))
    return rows


def relation_table(
    docs: Iterable[Document], doc_type: str | None = None
) -> list[CrossRow]:
    """One-to-one relation counts grouped by entity pair, with "R(x, y)"
    subtotal rows; percentages are within-pair and of all expanded relations."""
    tally: Counter = Counter()
    for doc in _filtered(docs, doc_type):
        if doc.annotations:
            tally.update(p.rtype for p in expand_all(doc.annotations))
    grand_total = sum(tally.values())
    if grand_total == 0:
        return []
    rows: list[CrossRow] = []
    for pair, pair_label in _PAIR_LABELS:
        members = [
            (rt, c) for rt, c in tally.items()
            if frozenset(relation_signature(rt)) == pair
        ]
        pair_total = sum(c for _, c in members)
        if pair_total == 0:
            continue
        for rt, count in sorted(members, key=lambda kv: (-kv[1], kv[0].value)):
            rows.append(CrossRow(
                rt.value, count, _pct(count, pair_total), _pct(count, grand_total),
            ))
        rows.append(CrossRow(
            pair_label, pair_total, 100.0, _pct(pair_total, grand_total),
        ))
    return rows


def avg_sentence_length(
    docs: Iterable[Document], doc_type: str | None = None
) -> float:
    """Mean tokens per sentence, to two decimals."""
    tokens = sentences = 0
    for doc in _filtered(docs, doc_type):
        sentences += len(doc.sentences)
        tokens += sum(len(s.tokens) for s in doc.sentences)
    if sentences == 0:
        raise InputError("corpus has no sentences")
    return round_half_up(tokens / sentences, 2)


def token_and_sentence_counts(
    docs: Iterable[Document], doc_type: str | None = None
) -> tuple[int, int]:
    tokens = sentences = 0
    for doc in _filtered(docs, doc_type):
        sentences += len(doc.sentences)
        tokens += sum(len(s.tokens) for s in doc.sentences)
    return tokens, sentences


@dataclass(frozen=True, slots=True)
class Deviation:
    """One disagreement between a computed table and a reference table."""

    label: str
    field: str
    computed: float | int
    expected: str | int

    def render(self) -> str:
        return f"{self.label}\t{self.field}\tcomputed={self.computed}\texpected={self.expected}"


def compare_reference(
    rows: Sequence[DistributionRow | CrossRow],
    reference: Sequence[tuple],
    tol_pct: float = 0.01,
) -> list[Deviation]:
    """Check computed rows against a reference table, matching by label.

    Reference rows may be (label, count, pct), (label, count, pct_within,
    pct_all), or percentage-only (label, pct).  A reference label with no
    computed row counts as zero; a computed label missing from the reference
    is a hard mismatch since references are complete inventories.
    """
    by_label = {r.label: r for r in rows}
    known = {ref[0] for ref in reference}
    extra = sorted(set(by_label) - known)
    if extra:
        raise InputError(f"labels not in the reference table: {', '.join(extra)}")

    out: list[Deviation] = []

    def check_pct(label: str, field: str, computed: float, display: str) -> None:
        if not matches_display(computed, display, tol_pct):
            out.append(Deviation(label, field, computed, display))

    for ref in reference:
        label = ref[0]
        row = by_label.get(label)
        if len(ref) == 2:
            computed_pct = getattr(row, "pct", 0.0) if row else 0.0
            check_pct(label, "pct", computed_pct, ref[1])
            continue
        count = row.count if row else 0
        if ref[1] != count:
            out.append(Deviation(label, "count", count, ref[1]))
        if len(ref) == 3:
            check_pct(label, "pct", row.pct if row else 0.0, ref[2])
        else:
            check_pct(label, "pct_within", row.pct_within if row else 0.0, ref[2])
            check_pct(label, "pct_all", row.pct_all if row else 0.0, ref[3])
    return out


def reference_column(
    table: Sequence[tuple[str, str, str]], doc_type: str
) -> list[tuple[str, str]]:
    """Project a by-document-type reference table onto one document type,
    yielding (label, pct) rows for compare_reference."""
    if doc_type not in DOC_TYPES:
        raise InputError(f"unknown document type {doc_type!r}")
    col = 1 if doc_type == DOC_TYPES[0] else 2
    return [(label, values[col - 1]) for label, *values in table]
