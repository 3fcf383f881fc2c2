"""Well-formedness and guideline-conformance checks.

Validation never raises on annotation content: every finding becomes a
Diagnostic with a stable rule id, so callers can count, filter, or fail a
build on them.  The one hard error is a wiring problem: annotations that do
not belong to the document they are validated against.
"""
from __future__ import annotations

from dataclasses import dataclass

from .errors import InputError
from .model import AnnotationSet, DocAnnotations, Document, Entity
from .tagsets import (
    POS_TAG_SET,
    VALID_ASSERTIONS,
    assertion_valid,
    normalize_syn_tag,
    relation_signature,
)


@dataclass(frozen=True, slots=True)
class Diagnostic:
    """One validation finding."""

    rule: str
    message: str
    layer: str = ""
    doc_id: str = ""
    location: str = ""

    def render(self) -> str:
        where = f" [{self.location}]" if self.location else ""
        doc = f"{self.doc_id}: " if self.doc_id else ""
        return f"{doc}{self.layer}: {self.rule}{where}: {self.message}"


def validate_sections(doc: Document) -> list[Diagnostic]:
    """Sections must be ordered and disjoint; their sentence spans must stay
    inside the section and must not overlap."""
    out: list[Diagnostic] = []
    prev_end = 0
    for i, sec in enumerate(doc.sections):
        loc = f"section {i} ({sec.name})"
        if sec.end < sec.start or sec.end > len(doc.text) or sec.start < 0:
            out.append(Diagnostic(
                "span-out-of-range",
                f"section span [{sec.start}, {sec.end}) is invalid for text "
                f"of length {len(doc.text)}", "section", doc.doc_id, loc,
            ))
        if sec.start < prev_end:
            out.append(Diagnostic(
                "section-overlap", "section overlaps the previous section",
                "section", doc.doc_id, loc,
            ))
        prev_end = max(prev_end, sec.end)
        last = sec.start
        for s0, s1 in sec.sentence_spans:
            if s0 < sec.start or s1 > sec.end:
                out.append(Diagnostic(
                    "span-out-of-range",
                    f"sentence [{s0}, {s1}) leaves the section", "section",
                    doc.doc_id, loc,
                ))
            if s0 < last:
                out.append(Diagnostic(
                    "sentence-order", f"sentence [{s0}, {s1}) overlaps or "
                    "precedes the previous one", "section", doc.doc_id, loc,
                ))
            last = max(last, s1)
    return out


def validate_tokens(doc: Document) -> list[Diagnostic]:
    """Check the segmentation layer.  Token spans must strictly increase,
    never overlap, and tile each sentence exactly; surfaces must reproduce
    the text; part-of-speech labels must come from the closed tagset."""
    out: list[Diagnostic] = []
    text = doc.text
    prev_sent_end = 0
    for si, sent in enumerate(doc.sentences):
        loc = f"sentence {si}"
        if sent.start < prev_sent_end:
            out.append(Diagnostic(
                "sentence-order", f"sentence starts at {sent.start}, "
                f"before previous sentence ended at {prev_sent_end}",
                "token", doc.doc_id, loc,
            ))
        prev_sent_end = max(prev_sent_end, sent.end)
        prev_end = None
        for ti, tok in enumerate(sent.tokens):
            s, e = sent.abs_span(tok)
            tloc = f"sentence {si} token {ti}"
            if s < 0 or e > len(text) or e <= s:
                out.append(Diagnostic(
                    "span-out-of-range", f"token span [{s}, {e}) is invalid "
                    f"for text of length {len(text)}", "token", doc.doc_id, tloc,
                ))
                prev_end = tok.end
                continue
            if text[s:e] != tok.surface:
                out.append(Diagnostic(
                    "surface-mismatch",
                    f"token surface {tok.surface!r} != text {text[s:e]!r}",
                    "token", doc.doc_id, tloc,
                ))
            if prev_end is not None:
                if tok.start < prev_end:
                    out.append(Diagnostic(
                        "token-overlap",
                        f"token starts at {s} inside the previous token",
                        "token", doc.doc_id, tloc,
                    ))
                elif tok.start > prev_end:
                    gap = text[sent.start + prev_end : s]
                    out.append(Diagnostic(
                        "token-gap",
                        f"sentence text {gap!r} is covered by no token",
                        "token", doc.doc_id, tloc,
                    ))
            prev_end = tok.end
            if tok.pos is not None and tok.pos not in POS_TAG_SET:
                out.append(Diagnostic(
                    "unknown-pos", f"part-of-speech {tok.pos!r} is not in the tagset",
                    "token", doc.doc_id, tloc,
                ))
    return out


def validate_chunks(doc: Document) -> list[Diagnostic]:
    out: list[Diagnostic] = []
    if doc.sentences and doc.chunks and len(doc.chunks) != len(doc.sentences):
        out.append(Diagnostic(
            "layer-count-mismatch",
            f"{len(doc.chunks)} chunk blocks for {len(doc.sentences)} sentences",
            "chunk", doc.doc_id,
        ))
    for si, block in enumerate(doc.chunks):
        n_tokens = (
            len(doc.sentences[si].tokens)
            if doc.sentences and si < len(doc.sentences)
            else None
        )
        for ci, ch in enumerate(block):
            loc = f"sentence {si} chunk {ci}"
            if normalize_syn_tag(ch.label) is None:
                out.append(Diagnostic(
                    "unknown-label", f"chunk label {ch.label!r} is not in the tagset",
                    "chunk", doc.doc_id, loc,
                ))
            if ch.last_exclusive <= ch.first or ch.first < 0:
                out.append(Diagnostic(
                    "empty-span",
                    f"chunk token range [{ch.first}, {ch.last_exclusive}) is "
                    "empty or inverted", "chunk", doc.doc_id, loc,
                ))
            elif n_tokens is not None and ch.last_exclusive > n_tokens:
                out.append(Diagnostic(
                    "span-out-of-range",
                    f"chunk covers tokens [{ch.first}, {ch.last_exclusive}) but "
                    f"the sentence has {n_tokens} tokens", "chunk", doc.doc_id, loc,
                ))
    return out


def validate_trees(doc: Document) -> list[Diagnostic]:
    out: list[Diagnostic] = []
    if doc.sentences and doc.trees and len(doc.trees) != len(doc.sentences):
        out.append(Diagnostic(
            "layer-count-mismatch",
            f"{len(doc.trees)} trees for {len(doc.sentences)} sentences",
            "tree", doc.doc_id,
        ))
    for si, tree in enumerate(doc.trees):
        loc = f"sentence {si}"
        for node in tree.nodes():
            if node.is_preterminal:
                if node.label not in POS_TAG_SET:
                    out.append(Diagnostic(
                        "unknown-pos",
                        f"leaf part-of-speech {node.label!r} is not in the tagset",
                        "tree", doc.doc_id, loc,
                    ))
            elif normalize_syn_tag(node.label) is None:
                out.append(Diagnostic(
                    "unknown-label",
                    f"constituent label {node.label!r} is not in the tagset",
                    "tree", doc.doc_id, loc,
                ))
        if doc.sentences and si < len(doc.sentences):
            leaf_surfaces = [surf for _, surf in tree.leaves()]
            tok_surfaces = [t.surface for t in doc.sentences[si].tokens]
            if leaf_surfaces != tok_surfaces:
                out.append(Diagnostic(
                    "tree-token-mismatch",
                    f"tree leaves disagree with the token layer "
                    f"({len(leaf_surfaces)} leaves vs {len(tok_surfaces)} tokens)",
                    "tree", doc.doc_id, loc,
                ))
    return out


def _entity_sentence(e: Entity, spans: list[tuple[int, int]]) -> int | None:
    for i, (s0, s1) in enumerate(spans):
        if s0 <= e.start and e.end <= s1:
            return i
    return None


def validate_annotations(
    ann: DocAnnotations,
    sentence_spans: list[tuple[int, int]] | None = None,
) -> list[Diagnostic]:
    """Check the entity layer.  Sentence containment rules only run when the
    caller supplies sentence spans; this validator never re-splits text."""
    out: list[Diagnostic] = []
    text = ann.text
    doc = ann.doc_id

    seen_entities: dict[tuple[int, int, str], str] = {}
    for e in ann.entities.values():
        if e.end <= e.start:
            out.append(Diagnostic(
                "empty-span", f"entity span [{e.start}, {e.end}) is empty or inverted",
                "entity", doc, e.eid,
            ))
        elif text and (e.start < 0 or e.end > len(text)):
            out.append(Diagnostic(
                "span-out-of-range",
                f"entity span [{e.start}, {e.end}) exceeds text of length {len(text)}",
                "entity", doc, e.eid,
            ))
        elif text and text[e.start:e.end] != e.surface:
            out.append(Diagnostic(
                "surface-mismatch",
                f"entity surface {e.surface!r} != text {text[e.start:e.end]!r}",
                "entity", doc, e.eid,
            ))
        if e.assertion is None:
            if VALID_ASSERTIONS[e.etype]:
                out.append(Diagnostic(
                    "assertion-missing",
                    f"{e.etype.value} entity requires an assertion",
                    "entity", doc, e.eid,
                ))
        elif not assertion_valid(e.etype, e.assertion):
            out.append(Diagnostic(
                "assertion-invalid",
                f"assertion {e.assertion.value!r} is not admissible on a "
                f"{e.etype.value} entity", "entity", doc, e.eid,
            ))
        key = e.key()
        if key in seen_entities:
            out.append(Diagnostic(
                "duplicate-annotation",
                f"entity duplicates {seen_entities[key]} (same span and type)",
                "entity", doc, e.eid,
            ))
        else:
            seen_entities[key] = e.eid

    seen_groups: dict[tuple, str] = {}
    for g in ann.groups.values():
        member_sents: set[int | None] = set()
        for m in g.members:
            ent = ann.entities.get(m)
            if ent is None:
                out.append(Diagnostic(
                    "dangling-reference", f"group member {m} does not exist",
                    "group", doc, g.gid,
                ))
                continue
            if ent.etype is not g.etype:
                out.append(Diagnostic(
                    "heterogeneous-group",
                    f"member {m} is {ent.etype.value} but the group is "
                    f"{g.etype.value}", "group", doc, g.gid,
                ))
            if sentence_spans is not None:
                member_sents.add(_entity_sentence(ent, sentence_spans))
        if sentence_spans is not None and len(member_sents) > 1:
            out.append(Diagnostic(
                "cross-sentence-group",
                "group members span more than one sentence", "group", doc, g.gid,
            ))
        gkey = (g.etype.value, tuple(sorted(g.members)))
        if gkey in seen_groups:
            out.append(Diagnostic(
                "duplicate-annotation",
                f"group duplicates {seen_groups[gkey]} (same type and members)",
                "group", doc, g.gid,
            ))
        else:
            seen_groups[gkey] = g.gid

    seen_relations: dict[tuple, str] = {}
    for r in ann.relations.values():
        endpoint_types = []
        arg_entities: list[Entity] = []
        for ref in (r.arg1, r.arg2):
            target = ann.resolve(ref)
            if target is None:
                out.append(Diagnostic(
                    "dangling-reference", f"relation argument {ref} does not exist",
                    "relation", doc, r.rid,
                ))
                endpoint_types.append(None)
                continue
            endpoint_types.append(target.etype)
            if isinstance(target, Entity):
                arg_entities.append(target)
            else:
                arg_entities.extend(
                    ann.entities[m] for m in target.members if m in ann.entities
                )
        want = relation_signature(r.rtype)
        if None not in endpoint_types and tuple(endpoint_types) != want:
            got = ", ".join(t.value for t in endpoint_types)  # type: ignore[union-attr]
            out.append(Diagnostic(
                "signature-mismatch",
                f"{r.rtype.value} requires ({want[0].value}, {want[1].value}) "
                f"but arguments are ({got})", "relation", doc, r.rid,
            ))
        if sentence_spans is not None and arg_entities:
            sents = {_entity_sentence(e, sentence_spans) for e in arg_entities}
            if len(sents) > 1:
                out.append(Diagnostic(
                    "cross-sentence-relation",
                    "relation arguments span more than one sentence",
                    "relation", doc, r.rid,
                ))
        rkey = (r.rtype.value, r.arg1, r.arg2)
        if rkey in seen_relations:
            out.append(Diagnostic(
                "duplicate-annotation",
                f"relation duplicates {seen_relations[rkey]} "
                f"(same type and arguments)", "relation", doc, r.rid,
            ))
        else:
            seen_relations[rkey] = r.rid
    return out


def validate_document(doc: Document) -> list[Diagnostic]:
    """Run every applicable layer check on one document.

    Raises InputError when attached annotations carry a different document
    id; that is a wiring mistake, not an annotation finding.
    """
    out = validate_sections(doc)
    out.extend(validate_tokens(doc))
    out.extend(validate_chunks(doc))
    out.extend(validate_trees(doc))
    if doc.annotations is not None:
        if doc.annotations.doc_id and doc.annotations.doc_id != doc.doc_id:
            raise InputError(
                f"annotations for document {doc.annotations.doc_id!r} cannot "
                f"be validated against document {doc.doc_id!r}"
            )
        spans = doc.sentence_spans() if doc.sentences else None
        if spans is None and doc.sections:
            spans = [s for sec in doc.sections for s in sec.sentence_spans] or None
        out.extend(validate_annotations(doc.annotations, spans))
    return out


def validate_set(annset: AnnotationSet) -> list[Diagnostic]:
    """Validate every document of an annotation set, in document-id order."""
    out: list[Diagnostic] = []
    for doc_id in sorted(annset.documents):
        out.extend(validate_document(annset.documents[doc_id]))
    return out
