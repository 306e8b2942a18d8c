#include "coper/common/error.hpp"
#include "coper/lexical/inverted_index.hpp"
#include "coper/lexical/scoring.hpp"

#include "support/oracles.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>

using namespace coper;
using namespace coper::lexical;
using Catch::Matchers::WithinAbs;

namespace {

InvertedIndex index_of(const oracle::Corpus& c)
{
    std::vector<IndexedText> docs;
    for (std::size_t i = 0; i < c.docs.size(); ++i) {
        docs.push_back(IndexedText{c.ids[i], c.docs[i]});
    }
    return InvertedIndex::build(docs);
}

InvertedIndex two_doc_index()
{
    std::vector<IndexedText> docs{{"d1", {"a", "b", "a"}}, {"d2", {"b", "c"}}};
    return InvertedIndex::build(docs);
}

std::vector<std::string> q(std::initializer_list<const char*> terms)
{
    return {terms.begin(), terms.end()};
}

}  // namespace

TEST_CASE("build_index on an empty corpus", "[lexical][index]")
{
    auto index = InvertedIndex::build({});
    CHECK(index.num_docs() == 0);
    CHECK(index.avgdl() == 0.0);
    CHECK(bm25_topk(q({"a"}), index, {}).empty());
    CHECK_THROWS_AS(idf("a", index), EmptyIndexError);
    CHECK(tfidf_vector(q({"a"}), index).empty());
}

TEST_CASE("build_index counts one document", "[lexical][index]")
{
    std::vector<IndexedText> docs{{"d", {"a", "b", "a"}}};
    auto index = InvertedIndex::build(docs);
    auto a = index.find_term("a");
    auto b = index.find_term("b");
    REQUIRE(a);
    REQUIRE(b);
    REQUIRE(index.postings(*a).size() == 1);
    CHECK(index.postings(*a)[0].tf == 2);
    CHECK(index.postings(*b)[0].tf == 1);
    CHECK(index.avgdl() == 3.0);
}

TEST_CASE("build_index averages document lengths", "[lexical][index]")
{
    CHECK(two_doc_index().avgdl() == 2.5);
}

TEST_CASE("build_index rejects duplicate ids", "[lexical][index]")
{
    std::vector<IndexedText> docs{{"x", {"a"}}, {"x", {"b"}}};
    CHECK_THROWS_AS(InvertedIndex::build(docs), IngestionError);
}

TEST_CASE("build_index is independent of ingestion order", "[lexical][index][property]")
{
    std::mt19937_64 rng(11);
    for (int round = 0; round < 30; ++round) {
        auto corpus = oracle::random_corpus(rng, 20, 30);
        auto reversed = corpus;
        std::reverse(reversed.ids.begin(), reversed.ids.end());
        std::reverse(reversed.docs.begin(), reversed.docs.end());
        REQUIRE(index_of(corpus).serialize() == index_of(reversed).serialize());
    }
}

TEST_CASE("index invariants hold on random corpora", "[lexical][index][property]")
{
    std::mt19937_64 rng(12);
    for (int round = 0; round < 30; ++round) {
        auto corpus = oracle::random_corpus(rng);
        auto index = index_of(corpus);
        double total = 0;
        for (DocNo d = 0; d < index.num_docs(); ++d) total += index.doc_len(d);
        REQUIRE_THAT(index.avgdl(), WithinAbs(total / static_cast<double>(index.num_docs()), 1e-12));
        for (TermId t = 0; t < index.vocabulary_size(); ++t) {
            auto list = index.postings(t);
            for (std::size_t i = 1; i < list.size(); ++i) {
                REQUIRE(index.doc_id(list[i - 1].doc) < index.doc_id(list[i].doc));
            }
            for (const auto& p : list) REQUIRE(p.doc < index.num_docs());
        }
    }
}

TEST_CASE("tf_weight is ln(1+freq)", "[lexical][tfidf]")
{
    CHECK(tf_weight(0) == 0.0);
    CHECK_THAT(tf_weight(1), WithinAbs(0.693147, 1e-6));
    // freq = e - 1 is not an integer; check the formula through log1p directly
    CHECK_THAT(std::log1p(std::exp(1.0) - 1.0), WithinAbs(1.0, 1e-9));
}

TEST_CASE("idf examples", "[lexical][tfidf]")
{
    std::vector<IndexedText> docs;
    for (int i = 0; i < 10; ++i) {
        docs.push_back({"d" + std::to_string(i), {"common", i == 3 ? "rare" : "filler"}});
    }
    auto index = InvertedIndex::build(docs);
    CHECK(*idf("common", index) == 0.0);
    CHECK_THAT(*idf("rare", index), WithinAbs(2.302585, 1e-6));
    CHECK_FALSE(idf("unseen", index).has_value());
}

TEST_CASE("idf is anti-monotone in document frequency", "[lexical][tfidf][property]")
{
    std::mt19937_64 rng(13);
    for (int round = 0; round < 50; ++round) {
        auto index = index_of(oracle::random_corpus(rng));
        for (TermId a = 0; a + 1 < index.vocabulary_size(); ++a) {
            TermId b = a + 1;
            if (index.df(a) < index.df(b)) REQUIRE(idf(a, index) > idf(b, index));
            if (index.df(a) > index.df(b)) REQUIRE(idf(a, index) < idf(b, index));
        }
    }
}

TEST_CASE("bm25_score examples", "[lexical][bm25]")
{
    auto index = two_doc_index();
    Bm25Params p;
    CHECK(bm25_score(q({"c"}), "d1", index, p) == 0.0);
    CHECK_THAT(bm25_score(q({"a"}), "d1", index, p), WithinAbs(std::log(2.0) * 2.0 * 2.5 / 3.725, 1e-9));
    CHECK_THAT(bm25_score(q({"a"}), "d1", index, p), WithinAbs(0.930399, 1e-6));
    CHECK_THROWS_AS(bm25_score(q({"a"}), "nope", index, p), LookupError);

    std::vector<IndexedText> single{{"only", {"x", "y", "x"}}};
    auto one = InvertedIndex::build(single);
    CHECK(bm25_score(q({"x", "y"}), "only", one, p) == 0.0);
}

TEST_CASE("bm25_score matches the literal formula on random corpora", "[lexical][bm25][oracle]")
{
    std::mt19937_64 rng(14);
    Bm25Params p;
    for (int round = 0; round < 60; ++round) {
        auto corpus = oracle::random_corpus(rng);
        auto index = index_of(corpus);
        for (int k = 0; k < 5; ++k) {
            auto query = oracle::random_query(rng);
            for (std::size_t d = 0; d < corpus.docs.size(); ++d) {
                REQUIRE_THAT(bm25_score(query, corpus.ids[d], index, p),
                             WithinAbs(oracle::bm25(corpus, d, query, p.k1, p.b), 1e-9));
            }
        }
    }
}

TEST_CASE("bm25 length penalty", "[lexical][bm25][property]")
{
    std::mt19937_64 rng(15);
    Bm25Params p;
    for (int round = 0; round < 200; ++round) {
        auto corpus = oracle::random_corpus(rng, 20, 30);
        auto query = oracle::random_query(rng, 30, 3);
        auto d = std::uniform_int_distribution<std::size_t>(0, corpus.docs.size() - 1)(rng);
        auto before = bm25_score(query, corpus.ids[d], index_of(corpus), p);
        corpus.docs[d].push_back("zz_not_in_query");
        auto after = bm25_score(query, corpus.ids[d], index_of(corpus), p);
        // the new token leaves every query df unchanged; avgdl grows by 1/N
        // which is less than the growth of |D| whenever N > 1
        if (before > 0.0) {
            REQUIRE(after < before);
        } else {
            REQUIRE(after == 0.0);
        }
    }
}

TEST_CASE("bm25_topk examples", "[lexical][bm25]")
{
    auto index = two_doc_index();
    CHECK(bm25_topk(q({"zzz"}), index, {}).empty());

    std::vector<IndexedText> docs{{"a", {"x", "y"}}, {"b", {"x", "x", "x"}}, {"c", {"y", "z", "w", "v"}}};
    auto three = InvertedIndex::build(docs);
    Bm25Params p;
    p.pool = 1;
    auto top = bm25_topk(q({"x", "z"}), three, p);
    REQUIRE(top.size() == 1);
    Bm25Params full;
    std::string best;
    double best_score = -1;
    for (auto id : {"a", "b", "c"}) {
        auto s = bm25_score(q({"x", "z"}), id, three, full);
        if (s > best_score) {
            best_score = s;
            best = id;
        }
    }
    CHECK(top[0].doc_id == best);

    p.pool = 0;
    CHECK_THROWS_AS(bm25_topk(q({"x"}), three, p), DomainError);
}

TEST_CASE("bm25_topk equals brute-force ranking and is a prefix of it", "[lexical][bm25][oracle]")
{
    std::mt19937_64 rng(16);
    for (int round = 0; round < 60; ++round) {
        auto corpus = oracle::random_corpus(rng);
        auto index = index_of(corpus);
        auto query = oracle::random_query(rng);
        auto expected = oracle::bm25_ranking(corpus, query, 1.5, 0.75);
        Bm25Params p;
        p.pool = std::uniform_int_distribution<std::size_t>(1, 60)(rng);
        auto got = bm25_topk(query, index, p);
        REQUIRE(got.size() == std::min(p.pool, expected.size()));
        for (std::size_t i = 0; i < got.size(); ++i) {
            REQUIRE(got[i].doc_id == expected[i].first);
            REQUIRE_THAT(got[i].score, WithinAbs(expected[i].second, 1e-9));
        }
    }
}

TEST_CASE("tfidf_vector examples", "[lexical][tfidf]")
{
    auto index = two_doc_index();
    auto v = tfidf_vector(q({"a", "b", "a"}), index);
    auto a = index.find_term("a");
    auto b = index.find_term("b");
    CHECK_THAT(v.weight(*a), WithinAbs(std::log(3.0) * std::log(2.0), 1e-12));
    CHECK_THAT(v.weight(*a), WithinAbs(0.761500, 1e-6));
    CHECK(v.weight(*b) == 0.0);  // "b" appears in every document
    CHECK(v.entries().size() == 1);
    CHECK(tfidf_vector({}, index).empty());
}

TEST_CASE("tfidf_vector matches the literal formula on random corpora", "[lexical][tfidf][oracle]")
{
    std::mt19937_64 rng(17);
    for (int round = 0; round < 60; ++round) {
        auto corpus = oracle::random_corpus(rng);
        auto index = index_of(corpus);
        TfIdfModel model(index);
        for (std::size_t d = 0; d < corpus.docs.size(); ++d) {
            auto expected = oracle::tfidf(corpus, corpus.docs[d]);
            auto got = tfidf_vector(corpus.docs[d], index);
            const auto& stored = model.doc_vector(*index.find_doc(corpus.ids[d]));
            REQUIRE(got.entries().size() == expected.size());
            REQUIRE(stored.entries().size() == expected.size());
            for (const auto& [term, w] : expected) {
                auto id = index.find_term(term);
                REQUIRE(id);
                REQUIRE_THAT(got.weight(*id), WithinAbs(w, 1e-9));
                REQUIRE_THAT(stored.weight(*id), WithinAbs(w, 1e-9));
            }
        }
    }
}

TEST_CASE("cosine conventions", "[lexical][cosine]")
{
    std::vector<double> a{1, 2, 3}, b{-2, 1, 0}, zero{0, 0, 0};
    CHECK_THAT(cosine(a, a), WithinAbs(1.0, 1e-15));
    CHECK(cosine(a, b) == 0.0);
    CHECK(cosine(zero, a) == 0.0);
    CHECK_THROWS_AS(cosine(std::vector<double>{1, 2}, a), ShapeError);

    TfIdfVector x({{0, 1.0}, {3, 2.0}});
    TfIdfVector y({{1, 1.0}});
    CHECK_THAT(cosine(x, x), WithinAbs(1.0, 1e-15));
    CHECK(cosine(x, y) == 0.0);
    CHECK(cosine(x, TfIdfVector{}) == 0.0);
}

TEST_CASE("cosine is scale invariant", "[lexical][cosine][property]")
{
    std::mt19937_64 rng(18);
    std::normal_distribution<double> g;
    std::uniform_real_distribution<double> scale(1e-3, 1e3);
    for (int i = 0; i < 1000; ++i) {
        std::vector<double> a(8), b(8);
        for (auto& v : a) v = g(rng);
        for (auto& v : b) v = g(rng);
        double alpha = scale(rng);
        std::vector<double> sa(a);
        for (auto& v : sa) v *= alpha;
        REQUIRE_THAT(cosine(sa, b), WithinAbs(cosine(a, b), 1e-12));
        REQUIRE_THAT(cosine(a, b), WithinAbs(oracle::dense_cosine(a, b), 1e-12));
    }
}

TEST_CASE("index round-trips through its binary format", "[lexical][persist]")
{
    std::mt19937_64 rng(19);
    auto corpus = oracle::random_corpus(rng);
    std::vector<IndexedText> docs;
    for (std::size_t i = 0; i < corpus.docs.size(); ++i) docs.push_back({corpus.ids[i], corpus.docs[i]});
    Snapshot snap;
    snap.bytes[0] = 0xAB;
    auto index = InvertedIndex::build(docs, snap);
    auto bytes = index.serialize();
    auto back = InvertedIndex::deserialize(bytes);
    CHECK(back.serialize() == bytes);
    CHECK(back.snapshot() == snap);
    CHECK(back.avgdl() == index.avgdl());

    CHECK_THROWS_AS(InvertedIndex::deserialize(bytes.substr(0, bytes.size() - 1)), InputError);
    auto wrong_magic = bytes;
    wrong_magic[0] = 'X';
    CHECK_THROWS_AS(InvertedIndex::deserialize(wrong_magic), InputError);
    auto wrong_version = bytes;
    wrong_version[8] = 9;
    CHECK_THROWS_AS(InvertedIndex::deserialize(wrong_version), InputError);
}
