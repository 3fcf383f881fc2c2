"""Tree parsing and labeled-bracketing agreement."""
import random

import pytest

from clincorp.errors import LengthMismatchError, ParseError
from clincorp.parseval import (
    EvalParams,
    ParseTree,
    brackets,
    filtered_leaf_count,
    match_counts,
    parse_tree,
    score_corpus,
)
from helpers import random_tree

GOLD = "(IP (NP (NN a) (NN b)) (VP (VV c)))"
CAND = "(IP (NP (NN a)) (VP (NN b) (VV c)))"


def test_parse_roundtrip():
    t = parse_tree(GOLD)
    assert t.to_string() == GOLD
    assert t.leaves() == [("NN", "a"), ("NN", "b"), ("VV", "c")]
    assert [n.label for n in t.nodes() if not n.is_preterminal] == ["IP", "NP", "VP"]


def test_parse_anonymous_wrapper():
    t = parse_tree(f"( {GOLD} )")
    assert t.to_string() == GOLD


def test_parse_alias_normalized():
    t = parse_tree("(VS (VV 治) (VV 疗))")
    assert t.label == "VSB"


@pytest.mark.parametrize(
    "bad",
    [
        "",
        "(IP (NN a)",          # unbalanced
        "(IP (NN a)))",        # trailing material
        "(IP)",                # empty constituent
        "(XX (NN a))",         # unknown constituent label
        "(IP (QQ a))",         # unknown part-of-speech label
        "(IP ((NN a)))",       # anonymous node below the root
        "(NN a b)",            # two surfaces in one leaf
    ],
)
def test_parse_errors(bad):
    with pytest.raises(ParseError):
        parse_tree(bad)


def test_parse_error_kinds_named():
    with pytest.raises(ParseError, match="unknown-syntactic-label"):
        parse_tree("(XX (NN a))")
    with pytest.raises(ParseError, match="unknown-pos-label"):
        parse_tree("(IP (QQ a))")


def test_brackets_hand_example():
    b = brackets(parse_tree(GOLD))
    assert b == {("IP", 0, 3): 1, ("NP", 0, 2): 1, ("VP", 2, 3): 1}


def test_identical_trees_agree_fully():
    t = parse_tree(GOLD)
    assert match_counts(t, t) == (3, 3, 3)


def test_hand_example_scores_one_third():
    agreed, ca, cb = match_counts(parse_tree(GOLD), parse_tree(CAND))
    assert (agreed, ca, cb) == (1, 3, 3)


def test_punctuation_removed_from_index_space():
    a = parse_tree("(IP (NP (NN a) (PU ,) (NN b)) (VP (VV c)))")
    b = parse_tree("(IP (NP (NN a) (NN b)) (VP (VV c)))")
    assert filtered_leaf_count(a, EvalParams()) == 3
    assert match_counts(a, b) == (3, 3, 3)
    # Keeping punctuation makes the leaf counts differ.
    with pytest.raises(LengthMismatchError):
        match_counts(a, b, EvalParams(ignore_punct=False))


def test_all_punctuation_constituent_vanishes():
    a = parse_tree("(IP (NP (NN a)) (PRN (PU -) (PU -)) (VP (VV c)))")
    assert ("PRN", 1, 1) not in brackets(a)
    assert sum(brackets(a).values()) == 3  # IP, NP, VP


def test_unlabeled_and_rootless_modes():
    g, c = parse_tree(GOLD), parse_tree(CAND)
    agreed, *_ = match_counts(g, c, EvalParams(labeled=False))
    assert agreed == 1  # spans (0,3) match; (0,2)/(2,3) vs (0,1)/(1,3) do not
    agreed_no_root, ca, cb = match_counts(g, c, EvalParams(include_root=False))
    assert (agreed_no_root, ca, cb) == (0, 2, 2)


def test_duplicate_brackets_match_by_multiplicity():
    a = parse_tree("(NP (NP (NN a) (NN b)))")
    b = parse_tree("(NP (NP (NP (NN a) (NN b))))")
    agreed, ca, cb = match_counts(a, b)
    assert (agreed, ca, cb) == (2, 2, 3)


def test_length_mismatch_reported_and_excluded():
    a = [parse_tree("(IP (NN a) (NN b))"), parse_tree("(IP (NN a))")]
    b = [parse_tree("(IP (NN a) (NN b))"), parse_tree("(IP (NN a) (NN b))")]
    score = score_corpus(a, b)
    assert score.excluded == [1]
    assert (score.agreed, score.count_a, score.count_b) == (1, 1, 1)
    with pytest.raises(LengthMismatchError):
        score_corpus(a, [])


def test_random_trees_roundtrip():
    rng = random.Random(99)
    for _ in range(50):
        t = random_tree(rng)
        assert parse_tree(t.to_string()) == t
