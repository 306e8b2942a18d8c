#include "coper/common/error.hpp"
#include "coper/semantic/provider.hpp"
#include "coper/semantic/representation.hpp"
#include "coper/semantic/vector_index.hpp"

#include "support/oracles.hpp"

#include <catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <random>

using namespace coper;
using namespace coper::semantic;
using Catch::Matchers::WithinAbs;

namespace {

double norm(std::span<const double> v)
{
    double s = 0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

std::vector<double> random_unit(std::mt19937_64& rng, std::size_t dim)
{
    std::normal_distribution<double> g;
    std::vector<double> v(dim);
    for (auto& x : v) x = g(rng);
    return unit(std::move(v));
}

const std::vector<std::string> kSamples{"علائم کرونا", "واکسن کرونا", "تب و سرفه خشک", "covid vaccine",
                                        "a", "ماسک"};

std::string fake_embedder(const std::string& args)
{
    return std::string(FAKE_EMBEDDER) + " " + args;
}

}  // namespace

TEST_CASE("hash embedder basics", "[semantic][hash]")
{
    HashEmbedder e;
    CHECK(e.dim() == 256);
    for (const auto& s : kSamples) {
        std::vector<std::string> seg{s};
        auto v = e.embed(seg);
        REQUIRE(v.size() == 256);
        CHECK_THAT(norm(v), WithinAbs(1.0, 1e-12));
        CHECK(v == e.embed(seg));
        for (double x : v) REQUIRE(std::isfinite(x));
    }
    CHECK(norm(e.embed(std::vector<std::string>{})) == 0.0);
    CHECK(norm(e.embed(std::vector<std::string>{"", ""})) == 0.0);
    CHECK_THROWS_AS(HashEmbedder(0), ConfigError);
}

TEST_CASE("hash embedder seeds and segment order", "[semantic][hash]")
{
    HashEmbedder a(64, 1), b(64, 2);
    bool differs = false;
    for (const auto& s : kSamples) {
        std::vector<std::string> seg{s};
        differs = differs || a.embed(seg) != b.embed(seg);
    }
    CHECK(differs);

    std::vector<std::string> ab{"تب", "سرفه"}, ba{"سرفه", "تب"};
    CHECK(a.embed(ab) != a.embed(ba));
    // empty segments are skipped entirely
    std::vector<std::string> with_gap{"تب", "", "سرفه"};
    CHECK(a.embed(ab) == a.embed(with_gap));
}

TEST_CASE("hash embedder rejects invalid UTF-8", "[semantic][hash]")
{
    HashEmbedder e;
    std::vector<std::string> bad{"\xff\xfe"};
    CHECK_THROWS_AS(e.embed(bad), EmbeddingError);
}

TEST_CASE("embed_title and embed_noun_phrases", "[semantic][embed]")
{
    HashEmbedder e(32, 7);
    CHECK(norm(embed_title("", e)) == 0.0);
    CHECK(embed_title("", e).size() == 32);
    CHECK_THAT(norm(embed_title("واکسن", e)), WithinAbs(1.0, 1e-9));
    CHECK(embed_title("واکسن", e) == embed_title("واکسن", e));

    CHECK(norm(embed_noun_phrases({}, e)) == 0.0);
    std::vector<std::string> one{"سرفه خشک"};
    CHECK(embed_noun_phrases(one, e) == embed_title("سرفه خشک", e));
    std::vector<std::string> two{"سرفه خشک", "تب"};
    CHECK_THAT(norm(embed_noun_phrases(two, e)), WithinAbs(1.0, 1e-9));
}

TEST_CASE("build_doc_vector", "[semantic][doc]")
{
    std::mt19937_64 rng(31);
    auto t = random_unit(rng, 16);
    auto n = random_unit(rng, 16);
    auto d = build_doc_vector("x", t, n);
    REQUIRE(d.vec.size() == 32);
    CHECK_THAT(norm(d.vec), WithinAbs(std::sqrt(2.21), 1e-9));
    CHECK_THAT(norm(d.vec), WithinAbs(1.486607, 1e-6));
    CHECK_THAT(norm(std::span<const double>(d.vec).first(16)), WithinAbs(1.1, 1e-12));
    for (std::size_t i = 0; i < 16; ++i) CHECK(d.vec[i] == 1.1 * t[i]);

    std::vector<double> zero(16, 0.0);
    CHECK_THAT(norm(build_doc_vector("z", zero, n).vec), WithinAbs(1.0, 1e-12));
    CHECK_THROWS_AS(build_doc_vector("bad", t, std::vector<double>(15, 0.0)), ShapeError);
}

TEST_CASE("query_vector", "[semantic][query]")
{
    HashEmbedder e(32, 3);
    auto q = query_vector("علائم کرونا چیست", e);
    REQUIRE(q.size() == 64);
    CHECK_THAT(norm(q), WithinAbs(std::sqrt(2.0), 1e-12));
    CHECK(std::equal(q.begin(), q.begin() + 32, q.begin() + 32));
    CHECK(norm(query_vector("", e)) == 0.0);
}

TEST_CASE("query/document cosine closed form", "[semantic][query][oracle]")
{
    std::mt19937_64 rng(32);
    for (int i = 0; i < 500; ++i) {
        auto dim = std::uniform_int_distribution<std::size_t>(1, 64)(rng);
        auto q = random_unit(rng, dim);
        auto t = random_unit(rng, dim);
        auto n = random_unit(rng, dim);
        auto doc = build_doc_vector("d", t, n);
        std::vector<double> qq(q);
        qq.insert(qq.end(), q.begin(), q.end());
        double closed = (1.1 * oracle::dense_cosine(q, t) + oracle::dense_cosine(q, n)) / (std::sqrt(2.0) * std::sqrt(2.21));
        REQUIRE_THAT(oracle::dense_cosine(qq, doc.vec), WithinAbs(closed, 1e-9));
    }
}

TEST_CASE("relative half scaling matters, global scaling does not", "[semantic][property]")
{
    std::mt19937_64 rng(33);
    std::uniform_real_distribution<double> alpha(1e-3, 1e3);
    for (int i = 0; i < 500; ++i) {
        auto q = random_unit(rng, 8);
        auto t = random_unit(rng, 8);
        auto n = random_unit(rng, 8);
        std::vector<double> qq(q);
        qq.insert(qq.end(), q.begin(), q.end());
        auto weighted = build_doc_vector("d", t, n, 1.1);
        auto flat = build_doc_vector("d", t, n, 1.0);
        REQUIRE(std::abs(oracle::dense_cosine(qq, weighted.vec) - oracle::dense_cosine(qq, flat.vec)) > 1e-12);

        auto scaled = weighted.vec;
        double a = alpha(rng);
        for (auto& x : scaled) x *= a;
        REQUIRE_THAT(oracle::dense_cosine(qq, scaled), WithinAbs(oracle::dense_cosine(qq, weighted.vec), 1e-12));
    }
}

TEST_CASE("vector index examples", "[semantic][index]")
{
    std::mt19937_64 rng(34);
    std::vector<DocSemanticVector> docs;
    for (int i = 0; i < 5; ++i) {
        docs.push_back(build_doc_vector("d" + std::to_string(i), random_unit(rng, 4), random_unit(rng, 4)));
    }
    auto idx = VectorIndex::build(docs);
    auto q = docs[3].vec;
    auto all = vindex_search(q, idx, 100);
    REQUIRE(all.size() == 5);
    CHECK(all[0].doc_id == "d3");
    CHECK_THAT(all[0].cosine, WithinAbs(1.0, 1e-12));
    for (std::size_t i = 1; i < all.size(); ++i) CHECK(all[i - 1].cosine >= all[i].cosine);

    // a stored unit vector with a zero other half
    std::vector<double> zero(4, 0.0);
    auto only_np = build_doc_vector("np", zero, random_unit(rng, 4));
    docs.push_back(only_np);
    auto idx2 = VectorIndex::build(docs);
    CHECK(vindex_search(only_np.vec, idx2, 1).at(0).doc_id == "np");

    CHECK_THROWS_AS(vindex_search(std::vector<double>(3, 1.0), idx, 1), ShapeError);
    docs.push_back(DocSemanticVector{"d0", std::vector<double>(8, 0.5)});
    CHECK_THROWS_AS(VectorIndex::build(docs), IngestionError);
    CHECK_THROWS_AS(VectorIndex::build({{"a", {1.0, 0.0}}, {"b", {1.0}}}), ShapeError);
    CHECK(VectorIndex{}.search(std::vector<double>(3, 1.0), 5).empty());
}

TEST_CASE("vector index equals brute force", "[semantic][index][oracle]")
{
    std::mt19937_64 rng(35);
    for (int round = 0; round < 100; ++round) {
        auto n = std::uniform_int_distribution<std::size_t>(1, 100)(rng);
        auto dim = std::uniform_int_distribution<std::size_t>(1, 64)(rng);
        // small integer components produce exact ties
        std::uniform_int_distribution<int> comp(-2, 2);
        std::vector<DocSemanticVector> docs;
        for (std::size_t i = 0; i < n; ++i) {
            std::vector<double> v(dim);
            for (auto& x : v) x = comp(rng);
            docs.push_back({"doc" + std::to_string(i), v});
        }
        std::vector<double> q(dim);
        for (auto& x : q) x = comp(rng);
        auto k = std::uniform_int_distribution<std::size_t>(1, n + 5)(rng);

        std::vector<std::pair<std::string, double>> brute;
        for (const auto& d : docs) brute.emplace_back(d.doc_id, oracle::dense_cosine(q, d.vec));
        std::sort(brute.begin(), brute.end(), [](const auto& a, const auto& b) {
            return a.second != b.second ? a.second > b.second : a.first < b.first;
        });
        brute.resize(std::min(k, brute.size()));

        auto got = vindex_search(q, VectorIndex::build(docs), k);
        REQUIRE(got.size() == brute.size());
        for (std::size_t i = 0; i < got.size(); ++i) {
            REQUIRE(got[i].doc_id == brute[i].first);
            REQUIRE_THAT(got[i].cosine, WithinAbs(brute[i].second, 1e-12));
        }
    }
}

TEST_CASE("embedding cache round trip", "[semantic][cache]")
{
    std::mt19937_64 rng(36);
    HashEmbedder e(16, 9);
    std::vector<DocSemanticVector> docs;
    for (const auto& s : kSamples) {
        auto d = build_doc_vector("id-" + s, embed_title(s, e), embed_title(s + " x", e));
        d.vec = quantize_f32(d.vec);
        docs.push_back(d);
    }
    auto idx = VectorIndex::build(docs);
    Snapshot snap;
    snap.bytes[5] = 7;
    auto bytes = serialize_embeddings(idx, snap);
    CHECK(bytes.substr(0, 8) == "COPEREMB");

    auto back = deserialize_embeddings(bytes);
    CHECK(back.snapshot == snap);
    REQUIRE(back.index.size() == idx.size());
    for (std::size_t i = 0; i < idx.size(); ++i) {
        CHECK(back.index.docs()[i].doc_id == idx.docs()[i].doc_id);
        CHECK(back.index.docs()[i].vec == idx.docs()[i].vec);
    }
    CHECK(serialize_embeddings(back.index, back.snapshot) == bytes);

    CHECK_THROWS_AS(deserialize_embeddings(bytes.substr(0, bytes.size() - 2)), InputError);
    CHECK_THROWS_AS(deserialize_embeddings("NOTEMBED" + bytes.substr(8)), InputError);
    CHECK_THROWS_AS(deserialize_embeddings(bytes + "x"), InputError);

    auto dir = std::filesystem::temp_directory_path() / "coper_test_semantic";
    std::filesystem::create_directories(dir);
    save_embeddings(dir / "embeddings.bin", idx, snap);
    CHECK(load_embeddings(dir / "embeddings.bin").index.docs()[0].vec == idx.docs()[0].vec);
    std::filesystem::remove_all(dir);
}

TEST_CASE("external provider over the line protocol", "[semantic][process]")
{
    ProcessEmbeddingProvider p(fake_embedder("8 ok"), 8);
    std::vector<std::string> seg{"علائم کرونا", "تب"};
    auto v = p.embed(seg);
    REQUIRE(v.size() == 8);
    CHECK(v == p.embed(seg));
    CHECK_THAT(norm(embed_noun_phrases(seg, p)), WithinAbs(1.0, 1e-9));
    CHECK(query_vector("تب", p).size() == 16);
}

TEST_CASE("external provider failures", "[semantic][process]")
{
    std::vector<std::string> seg{"x"};
    {
        ProcessEmbeddingProvider p(fake_embedder("8 short"), 8);
        CHECK_THROWS_AS(p.embed(seg), EmbeddingError);
    }
    {
        ProcessEmbeddingProvider p(fake_embedder("8 garbage"), 8);
        CHECK_THROWS_AS(p.embed(seg), EmbeddingError);
    }
    {
        ProcessEmbeddingProvider p(fake_embedder("8 die"), 8);
        try {
            embed_title("x", p, "doc-7");
            FAIL("expected EmbeddingError");
        } catch (const EmbeddingError& e) {
            CHECK(e.doc_id() == "doc-7");
        }
    }
    {
        ProcessEmbeddingProvider p("/nonexistent/encoder", 8);
        CHECK_THROWS_AS(p.embed(seg), EmbeddingError);
    }
}
