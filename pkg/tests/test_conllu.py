"""CoNLL-U reading, validation, and serialization."""

import io

import pytest
from hypothesis import given, strategies as st

from qa2oie.conllu import (
    DepTree,
    Token,
    find_first,
    parse_conllu,
    subtree_indices,
    subtree_text,
    to_conllu,
)
from qa2oie.errors import ConlluError

SIMPLE = """\
# sent_id = s1
# text = Rollo ruled Normandy.
1\tRollo\tRollo\tPROPN\t_\t_\t2\tnsubj\t_\t_
2\truled\trule\tVERB\t_\t_\t0\troot\t_\t_
3\tNormandy\tNormandy\tPROPN\t_\t_\t2\tdobj\t_\t_
4\t.\t.\tPUNCT\t_\t_\t2\tpunct\t_\t_
"""


def block(*rows, sent_id="s1", text=None):
    lines = [f"# sent_id = {sent_id}"]
    if text is not None:
        lines.append(f"# text = {text}")
    lines.extend("\t".join(row) for row in rows)
    return "\n".join(lines) + "\n"


def row(index, surface, head, deprel, upos="X", lemma=None):
    return (str(index), surface, lemma or surface.lower(), upos, "_", "_", str(head), deprel, "_", "_")


class TestParsing:
    def test_single_sentence(self):
        trees = parse_conllu(SIMPLE)
        assert len(trees) == 1
        tree = trees[0]
        assert tree.sent_id == "s1"
        assert tree.text == "Rollo ruled Normandy."
        assert len(tree) == 4
        assert [tok.surface for tok in tree.tokens] == ["Rollo", "ruled", "Normandy", "."]
        assert tree.token(2).lemma == "rule"
        assert tree.token(2).deprel == "root"

    def test_accepts_file_object(self):
        trees = parse_conllu(io.StringIO(SIMPLE))
        assert trees[0].sent_id == "s1"

    def test_multiple_sentences_split_on_blank_line(self):
        text = block(row(1, "Hi", 0, "root")) + "\n" + block(row(1, "Yo", 0, "root"), sent_id="s2")
        trees = parse_conllu(text)
        assert [t.sent_id for t in trees] == ["s1", "s2"]

    def test_char_spans_follow_text_metadata(self):
        tree = parse_conllu(SIMPLE)[0]
        spans = [tok.char_span for tok in tree.tokens]
        assert spans == [(0, 5), (6, 11), (12, 20), (20, 21)]
        assert tree.has_text_metadata

    def test_text_falls_back_to_joined_surfaces(self):
        tree = parse_conllu(block(row(1, "Hello", 2, "discourse"), row(2, "world", 0, "root")))[0]
        assert tree.text == "Hello world"
        assert not tree.has_text_metadata
        assert all(tok.char_span is None for tok in tree.tokens)

    def test_multiword_token_ranges_are_skipped(self):
        text = block(
            row(1, "He", 2, "nsubj"),
            ("2-3", "isn't", "_", "_", "_", "_", "_", "_", "_", "_"),
            row(2, "is", 0, "root"),
            row(3, "not", 2, "advmod"),
        )
        tree = parse_conllu(text)[0]
        assert [tok.index for tok in tree.tokens] == [1, 2, 3]

    def test_empty_nodes_are_skipped(self):
        text = block(
            row(1, "Go", 0, "root"),
            ("1.1", "ghost", "_", "_", "_", "_", "_", "_", "_", "_"),
            row(2, "home", 1, "advmod"),
        )
        tree = parse_conllu(text)[0]
        assert [tok.index for tok in tree.tokens] == [1, 2]

    def test_fixture_files_all_parse(self, coverage_trees, squad_trees, newsqa_trees):
        assert len(coverage_trees) == 50
        assert len(squad_trees) == 12
        assert len(newsqa_trees) == 9


class TestValidation:
    def test_missing_sent_id(self):
        text = "1\tHi\thi\tX\t_\t_\t0\troot\t_\t_\n"
        with pytest.raises(ConlluError, match="sent_id"):
            parse_conllu(text)

    def test_duplicate_sent_id(self):
        text = block(row(1, "Hi", 0, "root")) + "\n" + block(row(1, "Yo", 0, "root"))
        with pytest.raises(ConlluError, match="duplicate"):
            parse_conllu(text)

    def test_non_contiguous_indices(self):
        with pytest.raises(ConlluError):
            parse_conllu(block(row(1, "Hi", 0, "root"), row(3, "yo", 1, "discourse")))

    def test_two_roots(self):
        with pytest.raises(ConlluError):
            parse_conllu(block(row(1, "Hi", 0, "root"), row(2, "yo", 0, "root")))

    def test_no_root(self):
        with pytest.raises(ConlluError):
            parse_conllu(block(row(1, "Hi", 2, "dep"), row(2, "yo", 1, "dep")))

    def test_self_loop(self):
        with pytest.raises(ConlluError):
            parse_conllu(block(row(1, "Hi", 0, "root"), row(2, "yo", 2, "dep")))

    def test_cycle_unreachable_from_root(self):
        text = block(
            row(1, "Hi", 0, "root"),
            row(2, "a", 3, "dep"),
            row(3, "b", 2, "dep"),
        )
        with pytest.raises(ConlluError, match="s1"):
            parse_conllu(text)

    def test_head_out_of_range(self):
        with pytest.raises(ConlluError):
            parse_conllu(block(row(1, "Hi", 5, "root")))

    def test_bad_column_count_names_line(self):
        text = "# sent_id = s1\n1\tHi\thi\n"
        with pytest.raises(ConlluError, match="line 2"):
            parse_conllu(text)

    def test_token_index_out_of_range(self):
        tree = parse_conllu(SIMPLE)[0]
        with pytest.raises(IndexError):
            tree.token(0)
        with pytest.raises(IndexError):
            tree.token(5)


class TestSerialization:
    def test_round_trip_preserves_structure(self):
        tree = parse_conllu(SIMPLE)[0]
        again = parse_conllu(to_conllu(tree))[0]
        assert again == tree

    def test_text_comment_only_when_present(self):
        tree = parse_conllu(block(row(1, "Hi", 0, "root")))[0]
        assert "# text" not in to_conllu(tree)

    def test_fixture_round_trip(self, coverage_trees):
        for tree in coverage_trees.values():
            assert parse_conllu(to_conllu(tree))[0] == tree


class TestHelpers:
    def test_root(self):
        tree = parse_conllu(SIMPLE)[0]
        assert tree.root().surface == "ruled"

    def test_children_in_token_order(self):
        tree = parse_conllu(SIMPLE)[0]
        assert [tok.surface for tok in tree.children(2)] == ["Rollo", "Normandy", "."]

    def test_find_first_lowest_index(self):
        tree = parse_conllu(SIMPLE)[0]
        assert find_first(tree, "nsubj").index == 1
        assert find_first(tree, "obl") is None

    def test_subtree_indices_sorted(self, squad_trees):
        tree = squad_trees["squad-q11"]  # Who is the CEO of Acme?
        assert subtree_indices(tree, 4) == [3, 4, 5, 6]
        assert subtree_text(tree, 4) == "the CEO of Acme"

    def test_subtree_of_leaf_is_itself(self):
        tree = parse_conllu(SIMPLE)[0]
        assert subtree_indices(tree, 3) == [3]


@st.composite
def random_trees(draw):
    n = draw(st.integers(min_value=1, max_value=8))
    words = st.sampled_from(["alpha", "beta", "gamma", "delta", "nine", "oak", "pine"])
    deprels = st.sampled_from(["dep", "nsubj", "dobj", "advmod", "nmod", "punct"])
    tokens = []
    for i in range(1, n + 1):
        head = 0 if i == 1 else draw(st.integers(min_value=1, max_value=i - 1))
        deprel = "root" if i == 1 else draw(deprels)
        surface = draw(words)
        tokens.append(Token(index=i, surface=surface, lemma=surface, upos="X", head=head, deprel=deprel))
    return DepTree(sent_id="prop", text=" ".join(t.surface for t in tokens), tokens=tuple(tokens))


@given(random_trees())
def test_round_trip_random_trees(tree):
    """Serialize-then-parse is the identity on any valid tree."""
    again = parse_conllu(to_conllu(tree))[0]
    assert again.tokens == tree.tokens
    assert again.sent_id == tree.sent_id


@given(random_trees())
def test_subtrees_partition_under_root(tree):
    indices = subtree_indices(tree, tree.root().index)
    assert indices == [tok.index for tok in tree.tokens]
