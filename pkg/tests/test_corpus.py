import random

import pytest

from recipeforge import nlp
from recipeforge.corpus import (
    CorpusIndex,
    DuplicateDocument,
    IndexedDocument,
    UnknownDocument,
    extract_facets,
    field_weight,
)

from oracles import search_reference

WORDS = [
    "silver", "gold", "nanowire", "synthesis", "aqueous", "route", "stirring",
    "temperature", "plasmon", "copper", "oxide", "crystal", "habit", "growth",
    "citrate", "seed", "plate", "film", "anneal", "substrate",
]


def random_doc(rng, doc_id):
    def text(n):
        return " ".join(rng.choice(WORDS) for _ in range(n))

    return IndexedDocument(
        doc_id=doc_id,
        title=text(rng.randint(3, 7)),
        sections={
            "abstract": text(rng.randint(10, 25)),
            "experimental": text(rng.randint(10, 30)),
            "results": text(rng.randint(0, 20)),
        },
        materials={rng.choice(["silver", "gold", "tio2"])},
        morphologies={rng.choice(["nanowire", "film"])},
    )


def build_index(rng, n_docs):
    index = CorpusIndex()
    docs = [random_doc(rng, f"doc{i:03d}") for i in range(n_docs)]
    for doc in docs:
        index.index_document(doc)
    return index, docs


class TestIndexing:
    def test_title_term_ranks_doc_first(self):
        index = CorpusIndex()
        index.index_document(IndexedDocument(doc_id="a", title="zirconia membranes"))
        index.index_document(IndexedDocument(doc_id="b", title="other things",
                                             sections={"abstract": "zirconia mentioned once"}))
        result = index.search("zirconia", k=5)
        assert result.hits[0].doc_id == "a"
        assert result.hits[0].score > 0

    def test_duplicate_rejected_reindex_allowed(self):
        index = CorpusIndex()
        doc = IndexedDocument(doc_id="a", title="one two")
        index.index_document(doc)
        with pytest.raises(DuplicateDocument):
            index.index_document(doc)
        index.index_document(IndexedDocument(doc_id="a", title="three four"), reindex=True)
        assert index.search("three", k=5).hits[0].doc_id == "a"
        assert index.search("one", k=5).hits == []

    def test_df_table_matches_census(self):
        rng = random.Random(1)
        index, docs = build_index(rng, 50)
        census = {}
        for doc in docs:
            seen = set()
            for text in doc.fields().values():
                seen |= set(nlp.tokenize(text))
            for term in seen:
                census[term] = census.get(term, 0) + 1
        assert {t: len(d) for t, d in index.postings.items()} == census

    def test_get_document_roundtrip(self):
        index = CorpusIndex()
        doc = IndexedDocument(doc_id="a", title="t", doi="10.1/x",
                              sections={"abstract": "alpha"}, recipe={"steps": []},
                              materials={"silver"}, morphologies={"film"})
        index.index_document(doc)
        assert index.get_document("a").to_dict() == doc.to_dict()
        with pytest.raises(UnknownDocument):
            index.get_document("missing")


class TestSearch:
    def test_ranking_matches_bruteforce_oracle(self):
        for seed in (0, 1, 2):
            rng = random.Random(seed)
            index, docs = build_index(rng, rng.randint(20, 100))
            raw = {doc.doc_id: doc.fields() for doc in docs}
            for _ in range(20):
                query = " ".join(rng.choice(WORDS) for _ in range(rng.randint(1, 4)))
                got = index.search(query, k=10)
                want = search_reference(raw, nlp.tokenize(query), nlp.tokenize, field_weight, k=10)
                assert [h.doc_id for h in got.hits] == [d for d, _ in want]
                for hit, (_, score) in zip(got.hits, want):
                    assert hit.score == pytest.approx(score, abs=1e-9)

    def test_facet_filter_exact_set_semantics(self):
        rng = random.Random(3)
        index, docs = build_index(rng, 30)
        got = index.search(material="silver", k=100)
        want = sorted(d.doc_id for d in docs if "silver" in d.materials)
        assert [h.doc_id for h in got.hits] == want
        assert all(h.score == 0.0 for h in got.hits)

    def test_facets_combine_with_text(self):
        rng = random.Random(4)
        index, docs = build_index(rng, 40)
        got = index.search("synthesis", material="gold", k=100)
        allowed = {d.doc_id for d in docs if "gold" in d.materials}
        assert set(h.doc_id for h in got.hits) <= allowed

    def test_empty_query_no_facets_rejected(self):
        index = CorpusIndex()
        index.index_document(IndexedDocument(doc_id="a", title="t"))
        with pytest.raises(ValueError):
            index.search("")

    def test_deterministic_tie_break_by_doc_id(self):
        index = CorpusIndex()
        for doc_id in ("b", "a", "c"):
            index.index_document(IndexedDocument(doc_id=doc_id, title="same words here"))
        hits = index.search("same", k=5).hits
        assert [h.doc_id for h in hits] == ["a", "b", "c"]

    def test_snippet_from_matching_field(self):
        index = CorpusIndex()
        index.index_document(
            IndexedDocument(doc_id="a", title="plain title",
                            sections={"experimental": "the mixture was sonicated for ten minutes"})
        )
        hit = index.search("sonicated", k=1).hits[0]
        assert "sonicated" in hit.snippet


class TestPersistence:
    def test_roundtrip_preserves_postings(self, tmp_path):
        rng = random.Random(7)
        index, _ = build_index(rng, 25)
        path = tmp_path / "corpus.idx"
        index.save(path)
        loaded = CorpusIndex.load(path)
        assert loaded.postings == dict(index.postings)
        assert {d: v.to_dict() for d, v in loaded.documents.items()} == {
            d: v.to_dict() for d, v in index.documents.items()
        }

    def test_search_identical_after_reload(self, tmp_path):
        rng = random.Random(8)
        index, _ = build_index(rng, 30)
        path = tmp_path / "corpus.idx"
        index.save(path)
        loaded = CorpusIndex.load(path)
        for query in ("silver nanowire", "copper oxide", "anneal film"):
            a = index.search(query, k=10)
            b = loaded.search(query, k=10)
            assert [h.to_dict() for h in a.hits] == [h.to_dict() for h in b.hits]

    def test_version_header_checked(self, tmp_path):
        path = tmp_path / "bad.idx"
        path.write_text('{"format": "recipeforge-index", "version": 99, "documents": {}, "postings": {}}')
        with pytest.raises(ValueError):
            CorpusIndex.load(path)
        path.write_text('{"format": "nope"}')
        with pytest.raises(ValueError):
            CorpusIndex.load(path)


class TestFacetExtraction:
    def test_gazetteer_hits(self):
        materials, morphologies = extract_facets(
            "Silver nanowire synthesis", "we grow AgNO3-derived silver nanowires on film"
        )
        assert "silver" in materials
        assert "nanowire" in morphologies or "nanowires" in morphologies
        assert "film" in morphologies

    def test_word_boundaries(self):
        materials, _ = extract_facets("silvery sheen", "")
        assert "silver" not in materials
