"""Inter-annotator agreement as precision, recall, and F measure.

Annotator A plays the reference role and annotator B the response role:
recall is the share of A's annotations that B also produced, precision the
share of B's that A produced.  Swapping the annotators therefore swaps
precision with recall and leaves F unchanged.

All layer scorers return raw (agreed, count_a, count_b) triples; `prf` turns
a triple into an AgreementReport.  When both sides are empty there is
nothing to disagree about, so all three measures are 1 and the report is
flagged vacuous.
"""
from __future__ import annotations

import enum
from collections import Counter
from dataclasses import dataclass

from .errors import LengthMismatchError
from .groups import expand_all, relation_match_key
from .model import AnnotationSet, Chunk, DocAnnotations, Document, Sentence
from .numfmt import round_half_up
from .parseval import EvalParams, ParseTree, match_counts, score_corpus
from .tagsets import normalize_syn_tag

LAYERS = ("seg", "pos", "chunk", "tree", "entity", "relation")


@dataclass(frozen=True, slots=True)
class AgreementConfig:
    """Weighting of precision against recall in the F measure."""

    beta: float = 1.0

    def __post_init__(self) -> None:
        if self.beta <= 0:
            raise ValueError("beta must be positive")


@dataclass(frozen=True, slots=True)
class AgreementReport:
    agreed: int
    count_a: int
    count_b: int
    precision: float
    recall: float
    f: float
    vacuous: bool

    def to_dict(self, *, rounded: bool = True) -> dict:
        p, r, f = self.precision, self.recall, self.f
        if rounded:
            p, r, f = (round_half_up(x, 3) for x in (p, r, f))
        return {
            "agreed": self.agreed,
            "count_a": self.count_a,
            "count_b": self.count_b,
            "precision": p,
            "recall": r,
            "f": f,
            "vacuous": self.vacuous,
        }


def prf(agreed: int, count_a: int, count_b: int, beta: float = 1.0) -> AgreementReport:
    """Build an agreement report from raw counts.

    F is the beta-weighted harmonic mean; with the default beta of 1 it is
    the plain F1.  Zero denominators give zero for the affected measure, and
    an entirely empty comparison is vacuously perfect.
    """
    if agreed < 0 or count_a < 0 or count_b < 0:
        raise ValueError("counts must be non-negative")
    if agreed > count_a or agreed > count_b:
        raise ValueError("agreed cannot exceed either annotator's count")
    if count_a == 0 and count_b == 0:
        return AgreementReport(agreed, count_a, count_b, 1.0, 1.0, 1.0, True)
    precision = agreed / count_b if count_b else 0.0
    recall = agreed / count_a if count_a else 0.0
    b2 = beta * beta
    denom = b2 * precision + recall
    f = (1.0 + b2) * precision * recall / denom if denom > 0 else 0.0
    return AgreementReport(agreed, count_a, count_b, precision, recall, f, False)


Counts = tuple[int, int, int]


def _match(ca: Counter, cb: Counter) -> Counts:
    return sum((ca & cb).values()), sum(ca.values()), sum(cb.values())


def add_counts(*counts: Counts) -> Counts:
    agreed = sum(c[0] for c in counts)
    count_a = sum(c[1] for c in counts)
    count_b = sum(c[2] for c in counts)
    return agreed, count_a, count_b


# ---------------------------------------------------------------- layers ---

def token_counts(
    sents_a: list[Sentence], sents_b: list[Sentence], *, labeled: bool = False
) -> Counts:
    """Segmentation agreement over absolute character spans; with labeled=True
    a token must also carry the same part-of-speech to count."""

    def spans(sents: list[Sentence]) -> Counter:
        c: Counter = Counter()
        for sent in sents:
            for tok in sent.tokens:
                s, e = sent.abs_span(tok)
                c[(s, e, tok.pos) if labeled else (s, e)] += 1
        return c

    return _match(spans(sents_a), spans(sents_b))


def chunk_counts(
    blocks_a: list[list[Chunk]], blocks_b: list[list[Chunk]]
) -> Counts:
    """Chunk agreement per aligned sentence over (first, last, label); labels
    are compared after alias normalization."""
    if len(blocks_a) != len(blocks_b):
        raise LengthMismatchError(
            f"chunk layers have {len(blocks_a)} vs {len(blocks_b)} sentences"
        )

    def keys(block: list[Chunk]) -> Counter:
        return Counter(
            (c.first, c.last_exclusive, normalize_syn_tag(c.label) or c.label)
            for c in block
        )

    total: Counts = (0, 0, 0)
    for ba, bb in zip(blocks_a, blocks_b):
        total = add_counts(total, _match(keys(ba), keys(bb)))
    return total


def tree_counts(
    trees_a: list[ParseTree],
    trees_b: list[ParseTree],
    params: EvalParams = EvalParams(),
) -> tuple[Counts, list[int]]:
    """Labeled-bracketing agreement; returns counts plus excluded sentence
    indices (pairs whose scorable leaf counts differ)."""
    score = score_corpus(trees_a, trees_b, params)
    return (score.agreed, score.count_a, score.count_b), score.excluded


def score_trees(
    gold: ParseTree,
    cand: ParseTree,
    params: EvalParams = EvalParams(),
    beta: float = 1.0,
) -> AgreementReport:
    """Bracketing agreement for one sentence pair, gold on the recall side."""
    agreed, ca, cb = match_counts(gold, cand, params)
    return prf(agreed, ca, cb, beta=beta)


class MatchPolicy(enum.Enum):
    """What must coincide for two entity annotations to agree."""

    SPAN = "span"
    SPAN_TYPE = "span_type"
    SPAN_TYPE_ASSERTION = "span_type_assertion"


def entity_counts(
    ann_a: DocAnnotations,
    ann_b: DocAnnotations,
    policy: MatchPolicy = MatchPolicy.SPAN_TYPE,
) -> Counts:
    def keys(ann: DocAnnotations) -> Counter:
        c: Counter = Counter()
        for e in ann.entities.values():
            if policy is MatchPolicy.SPAN:
                key: tuple = (e.start, e.end)
            elif policy is MatchPolicy.SPAN_TYPE:
                key = (e.start, e.end, e.etype.value)
            else:
                key = (
                    e.start, e.end, e.etype.value,
                    e.assertion.value if e.assertion else None,
                )
            c[key] += 1
        return c

    return _match(keys(ann_a), keys(ann_b))


class RelationMode(enum.Enum):
    """How relation arguments are compared.

    GROUP_PRESERVED requires the two annotators to agree on the grouping
    itself: each endpoint matches as a whole member set.  ONE_TO_ONE first
    expands every relation to entity pairs and compares those, so different
    groupings of the same underlying pairs still agree.
    """

    GROUP_PRESERVED = "group_preserved"
    ONE_TO_ONE = "one_to_one"


def relation_counts(
    ann_a: DocAnnotations,
    ann_b: DocAnnotations,
    mode: RelationMode = RelationMode.ONE_TO_ONE,
) -> Counts:
    if mode is RelationMode.GROUP_PRESERVED:
        ka = Counter(relation_match_key(ann_a, r) for r in ann_a.relations.values())
        kb = Counter(relation_match_key(ann_b, r) for r in ann_b.relations.values())
    else:
        ka = Counter(p.key for p in expand_all(ann_a))
        kb = Counter(p.key for p in expand_all(ann_b))
    return _match(ka, kb)


# ------------------------------------------------------------ aggregation ---

def micro_report(per_doc: list[Counts], beta: float = 1.0) -> AgreementReport:
    """Pool counts over documents, then compute one report."""
    return prf(*add_counts(*per_doc), beta=beta) if per_doc else prf(0, 0, 0, beta=beta)


def macro_average(reports: list[AgreementReport]) -> tuple[float, float, float]:
    """Unweighted mean of per-document precision, recall, and F.  Vacuous
    documents count as perfect agreement."""
    if not reports:
        return (1.0, 1.0, 1.0)
    n = len(reports)
    return (
        sum(r.precision for r in reports) / n,
        sum(r.recall for r in reports) / n,
        sum(r.f for r in reports) / n,
    )


@dataclass(slots=True)
class CorpusAgreement:
    """Per-document counts for one layer over a document collection, with a
    record of everything that could not be scored."""

    layer: str
    per_doc: dict[str, Counts]
    excluded_docs: list[str]
    excluded_sentences: dict[str, list[int]]

    @property
    def has_exclusions(self) -> bool:
        return bool(self.excluded_docs or self.excluded_sentences)

    def counts(self) -> Counts:
        return add_counts(*self.per_doc.values()) if self.per_doc else (0, 0, 0)

    def report(self, beta: float = 1.0) -> AgreementReport:
        """The headline micro-averaged report (global counts)."""
        return prf(*self.counts(), beta=beta)

    def doc_reports(self, beta: float = 1.0) -> dict[str, AgreementReport]:
        return {d: prf(*c, beta=beta) for d, c in self.per_doc.items()}

    def macro(self, beta: float = 1.0) -> tuple[float, float, float]:
        return macro_average(list(self.doc_reports(beta).values()))


def _empty_doc(doc_id: str) -> Document:
    return Document(doc_id=doc_id, text="")


def corpus_agreement(
    set_a: AnnotationSet,
    set_b: AnnotationSet,
    layer: str,
    *,
    policy: MatchPolicy = MatchPolicy.SPAN_TYPE,
    mode: RelationMode = RelationMode.ONE_TO_ONE,
    params: EvalParams = EvalParams(),
) -> CorpusAgreement:
    """Score one layer across two annotation sets, document by document.

    The document universe is the union of both sets' ids; a document missing
    from one side counts as empty there.  Documents whose tree or chunk
    layers have incompatible shapes are excluded and reported, never silently
    dropped or silently kept.
    """
    if layer not in LAYERS:
        raise ValueError(f"unknown layer {layer!r}; expected one of {LAYERS}")
    result = CorpusAgreement(layer, {}, [], {})
    for doc_id in sorted(set(set_a.documents) | set(set_b.documents)):
        da = set_a.documents.get(doc_id) or _empty_doc(doc_id)
        db = set_b.documents.get(doc_id) or _empty_doc(doc_id)
        try:
            if layer == "seg":
                counts = token_counts(da.sentences, db.sentences, labeled=False)
            elif layer == "pos":
                counts = token_counts(da.sentences, db.sentences, labeled=True)
            elif layer == "chunk":
                counts = chunk_counts(da.chunks, db.chunks)
            elif layer == "tree":
                counts, excluded = tree_counts(da.trees, db.trees, params)  # type: ignore[arg-type]
                if excluded:
                    result.excluded_sentences[doc_id] = excluded
            else:
                ann_a = da.annotations or DocAnnotations(doc_id=doc_id, text=da.text)
                ann_b = db.annotations or DocAnnotations(doc_id=doc_id, text=db.text)
                if layer == "entity":
                    counts = entity_counts(ann_a, ann_b, policy)
                else:
                    counts = relation_counts(ann_a, ann_b, mode)
        except LengthMismatchError:
            result.excluded_docs.append(doc_id)
            continue
        result.per_doc[doc_id] = counts
    return result
