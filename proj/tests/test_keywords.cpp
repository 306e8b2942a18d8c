#include "coper/common/error.hpp"
#include "coper/common/util.hpp"
#include "coper/keywords/extract.hpp"
#include "coper/keywords/ner.hpp"
#include "coper/keywords/yake.hpp"

#include "support/shipped.hpp"

#include <catch_amalgamated.hpp>

#include <filesystem>
#include <random>

using namespace coper;
using namespace coper::keywords;
using Catch::Matchers::WithinAbs;
using text::PosTag;
using text::Token;

namespace {

const std::filesystem::path kSource = COPER_SOURCE_DIR;

// Tokens laid out as if separated by single spaces.
std::vector<Token> toks(std::initializer_list<std::pair<const char*, PosTag>> items,
                        std::initializer_list<const char*> stop = {})
{
    std::vector<Token> out;
    std::size_t at = 0;
    for (const auto& [surface, tag] : items) {
        Token t;
        t.surface = surface;
        t.start = at;
        t.end = at + t.surface.size();
        t.pos = tag;
        for (auto s : stop) {
            t.stopword = t.stopword || t.surface == s;
        }
        at = t.end + 1;
        out.push_back(t);
    }
    return out;
}

std::vector<Token> words(std::initializer_list<const char*> items, std::initializer_list<const char*> stop = {})
{
    std::vector<Token> out;
    std::size_t at = 0;
    for (auto w : items) {
        Token t;
        t.surface = w;
        t.start = at;
        t.end = at + t.surface.size();
        t.pos = (t.surface == "." || t.surface == ",") ? PosTag::Punc : PosTag::Noun;
        for (auto s : stop) {
            t.stopword = t.stopword || t.surface == s;
        }
        at = t.end + 1;
        out.push_back(t);
    }
    return out;
}

CandidatePhrase phrase(std::initializer_list<const char*> surfaces, std::uint32_t tf)
{
    CandidatePhrase c;
    c.tokens = words(surfaces);
    c.tf = tf;
    return c;
}

TermScores scores(std::initializer_list<std::pair<const char*, double>> items)
{
    TermScores out;
    for (const auto& [term, s] : items) {
        out.emplace(term, TermScore{term, s, {}});
    }
    return out;
}

std::vector<std::string> texts(const std::vector<CandidatePhrase>& cs)
{
    std::vector<std::string> out;
    for (const auto& c : cs) out.push_back(c.text());
    return out;
}

text::ProcessedDocument analyse(std::string_view body)
{
    text::ProcessedDocument doc;
    doc.body_tokens = shipped::pipeline().analyze(body, &doc.body);
    return doc;
}

}  // namespace

TEST_CASE("score_keyword follows the phrase formula", "[keywords][eq5]")
{
    auto terms = scores({{"a", 0.1}, {"b", 0.2}});
    CHECK_THAT(score_keyword(phrase({"a"}, 2), terms), WithinAbs(0.1 / (2 * 1.1), 1e-15));
    CHECK_THAT(score_keyword(phrase({"a"}, 2), terms), WithinAbs(0.0454545, 1e-7));
    CHECK_THAT(score_keyword(phrase({"a", "b"}, 1), terms), WithinAbs(0.0153846, 1e-7));
    CHECK_THAT(score_keyword(phrase({"a", "b"}, 2), terms),
               WithinAbs(score_keyword(phrase({"a", "b"}, 1), terms) / 2, 1e-15));
}

TEST_CASE("score_keyword skips stopwords and checks its preconditions", "[keywords][eq5]")
{
    auto terms = scores({{"a", 0.1}, {"b", 0.2}});
    CandidatePhrase c;
    c.tokens = words({"a", "of", "b"}, {"of"});
    c.tf = 1;
    CHECK_THAT(score_keyword(c, terms), WithinAbs(0.02 / 1.3, 1e-15));
    c.tf = 0;
    CHECK_THROWS_AS(score_keyword(c, terms), PreconditionError);
    CHECK_THROWS_AS(score_keyword(phrase({"zz"}, 1), terms), InternalError);
}

TEST_CASE("score_keyword is positive and monotone", "[keywords][eq5][property]")
{
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> s(1e-3, 10.0);
    std::uniform_int_distribution<std::uint32_t> tf(1, 50);
    std::uniform_int_distribution<int> n(1, 3);
    const char* names[] = {"a", "b", "c"};
    for (int i = 0; i < 1000; ++i) {
        int len = n(rng);
        TermScores terms;
        CandidatePhrase kw;
        std::vector<Token> ts;
        for (int j = 0; j < len; ++j) {
            terms.emplace(names[j], TermScore{names[j], s(rng), {}});
        }
        kw.tokens = words({"a", "b", "c"});
        kw.tokens.resize(static_cast<std::size_t>(len));
        kw.tf = tf(rng);
        double base = score_keyword(kw, terms);
        REQUIRE(base > 0.0);

        auto more = kw;
        more.tf += 1;
        REQUIRE(score_keyword(more, terms) < base);

        auto bumped = terms;
        auto& target = bumped.at(names[std::uniform_int_distribution<int>(0, len - 1)(rng)]);
        target.score *= 1.5;
        REQUIRE(score_keyword(kw, bumped) > base);
    }
}

TEST_CASE("score_terms edge cases", "[keywords][terms]")
{
    CHECK(score_terms(std::vector<Token>{}).empty());
    CHECK(score_terms(words({".", ","})).empty());

    auto one = score_terms(words({"solo"}));
    REQUIRE(one.size() == 1);
    CHECK(one.at("solo").score > 0.0);

    auto stop_only = score_terms(words({"the", "of"}, {"the", "of"}));
    CHECK(stop_only.empty());
}

TEST_CASE("later first occurrence scores worse", "[keywords][terms]")
{
    auto t = score_terms(words({"x", "a", ".", "y", "b", ".", "z", "c"}));
    CHECK(t.at("a").score < t.at("c").score);
    CHECK(t.at("a").features.first_sentence == 0);
    CHECK(t.at("c").features.first_sentence == 2);
}

TEST_CASE("sentence ids", "[keywords][terms]")
{
    auto ids = sentence_ids(words({".", "a", "b", ".", ".", "c", ",", "d", "."}));
    CHECK(ids == std::vector<std::size_t>{0, 0, 0, 0, 0, 1, 1, 1, 1});
}

TEST_CASE("term scores for the 20-token fixture match the reference", "[keywords][terms][golden]")
{
    auto doc = analyse(read_file(kSource / "tests/fixtures/yake_20.txt"));
    REQUIRE(doc.body_tokens.size() == 20);
    auto got = score_terms(doc);

    const std::string golden = read_file(kSource / "tests/golden/yake_20_scores.tsv");
    std::size_t rows = 0;
    for (auto line : split(golden, '\n')) {
        if (line.empty()) continue;
        auto cols = split(line, '\t');
        REQUIRE(cols.size() == 2);
        INFO(std::string(cols[0]));
        REQUIRE(got.contains(cols[0]));
        CHECK_THAT(got.find(cols[0])->second.score, WithinAbs(std::stod(std::string(cols[1])), 1e-12));
        ++rows;
    }
    CHECK(rows == got.size());
}

TEST_CASE("generate_candidates examples", "[keywords][candidates]")
{
    CHECK(texts(generate_candidates(words({"a", "b"}))) == std::vector<std::string>{"a", "a b", "b"});

    auto c = generate_candidates(words({"a", "of", "the", "b"}, {"of", "the"}));
    CHECK(texts(c) == std::vector<std::string>{"a", "b"});

    auto with_inner = generate_candidates(words({"a", "of", "b"}, {"of"}));
    CHECK(texts(with_inner) == std::vector<std::string>{"a", "a of b", "b"});

    auto rep = generate_candidates(words({"x", "y", ".", "x", "y"}));
    REQUIRE(texts(rep) == std::vector<std::string>{"x", "x y", "y"});
    CHECK(rep[1].tf == 2);
    CHECK(rep[0].tf == 2);

    auto four = generate_candidates(words({"a", "b", "c", "d"}), 2);
    for (const auto& p : four) CHECK(p.n() <= 2);
    CHECK(four.size() == 7);

    CHECK(generate_candidates(words({".", ","})).empty());
}

TEST_CASE("candidates do not bridge removed tokens", "[keywords][candidates]")
{
    auto all = words({"a", "b", "c"});
    std::vector<Token> gap{all[0], all[2]};
    CHECK(texts(generate_candidates(gap)) == std::vector<std::string>{"a", "c"});
}

TEST_CASE("candidate invariants on random token streams", "[keywords][candidates][property]")
{
    std::mt19937_64 rng(22);
    const char* vocab[] = {"a", "b", "c", "d", "of", "the", ".", ","};
    for (int round = 0; round < 300; ++round) {
        std::vector<Token> ts;
        std::size_t at = 0;
        auto len = std::uniform_int_distribution<int>(0, 30)(rng);
        for (int i = 0; i < len; ++i) {
            Token t;
            t.surface = vocab[std::uniform_int_distribution<int>(0, 7)(rng)];
            t.pos = (t.surface == "." || t.surface == ",") ? PosTag::Punc : PosTag::Noun;
            t.stopword = t.surface == "of" || t.surface == "the";
            t.start = at;
            t.end = at + t.surface.size();
            at = t.end + 1 + std::uniform_int_distribution<int>(0, 5)(rng) / 5;
            ts.push_back(t);
        }
        auto max_n = static_cast<std::size_t>(std::uniform_int_distribution<int>(1, 3)(rng));
        std::size_t total = 0;
        for (const auto& c : generate_candidates(ts, max_n)) {
            REQUIRE(c.tf >= 1);
            REQUIRE(c.n() >= 1);
            REQUIRE(c.n() <= max_n);
            REQUIRE_FALSE(c.tokens.front().stopword);
            REQUIRE_FALSE(c.tokens.back().stopword);
            for (const auto& t : c.tokens) REQUIRE_FALSE(t.is_punct());
            if (c.n() == 1) total += c.tf;
        }
        std::size_t content = 0;
        for (const auto& t : ts) content += (!t.is_punct() && !t.stopword) ? 1 : 0;
        REQUIRE(total == content);
    }
}

TEST_CASE("gazetteer filtering", "[keywords][ner]")
{
    auto doc = analyse("ویروس در تهران و چین شایع شد");
    auto kept = filter_named_entities(doc.body_tokens, shipped::ner());
    std::vector<std::string> surfaces;
    for (const auto& t : kept) surfaces.push_back(t.surface);
    CHECK(surfaces == std::vector<std::string>{"ویروس", "در", "و", "شایع", "شد"});

    GazetteerRecognizer empty;
    CHECK(filter_named_entities(doc.body_tokens, empty).size() == doc.body_tokens.size());
}

TEST_CASE("person names are removed against the shipped gazetteer", "[keywords][ner]")
{
    auto doc = analyse("دکتر محمدی درباره واکسن توضیح داد");
    auto kept = filter_named_entities(doc.body_tokens, shipped::ner());
    REQUIRE(kept.size() == doc.body_tokens.size() - 1);
    for (const auto& t : kept) CHECK(t.surface != "محمدی");
}

TEST_CASE("multi-token entities and normalization of entries", "[keywords][ner]")
{
    auto doc = analyse("سعید نمکی از کره جنوبی بازدید کرد");
    auto kept = filter_named_entities(doc.body_tokens, shipped::ner());
    std::vector<std::string> surfaces;
    for (const auto& t : kept) surfaces.push_back(t.surface);
    CHECK(surfaces == std::vector<std::string>{"از", "بازدید", "کرد"});

    // Arabic yeh in the text still matches the Persian spelling on file.
    auto arabic = analyse("علي");
    CHECK(filter_named_entities(arabic.body_tokens, shipped::ner()).empty());

    CHECK_THROWS_AS(Gazetteer::load("/nonexistent/places.txt", "PLACE", shipped::pipeline().charmap), ConfigError);
}

TEST_CASE("expand_to_noun_phrase examples", "[keywords][expand]")
{
    auto ts = toks({{"the", PosTag::Other}, {"dry", PosTag::Adj}, {"cough", PosTag::Noun}, {"is", PosTag::Verb}},
                   {"the", "is"});
    CandidatePhrase kw;
    kw.tokens = {ts[2]};
    kw.tf = 1;
    auto np = expand_to_noun_phrase(kw, ts);
    CHECK(np.text == "dry cough");
    CHECK(np.keyword == "cough");

    CandidatePhrase maximal;
    maximal.tokens = {ts[1], ts[2]};
    maximal.tf = 1;
    CHECK(expand_to_noun_phrase(maximal, ts).text == "dry cough");

    CandidatePhrase missing = phrase({"fever"}, 1);
    CHECK_THROWS_AS(expand_to_noun_phrase(missing, ts), InternalError);
}

TEST_CASE("NUM-ADJ-NOUN-NOUN chunk expands to four tokens", "[keywords][expand]")
{
    auto doc = analyse("۳ مهم‌ترین علامت بیماری را بشناسید");
    REQUIRE(doc.body_tokens.size() == 6);
    CHECK(doc.body_tokens[0].pos == PosTag::Num);
    CHECK(doc.body_tokens[1].pos == PosTag::Adj);
    CHECK(doc.body_tokens[2].pos == PosTag::Noun);
    CHECK(doc.body_tokens[3].pos == PosTag::Noun);
    CandidatePhrase kw;
    kw.tokens = {doc.body_tokens[2]};
    kw.tf = 1;
    auto np = expand_to_noun_phrase(kw, doc);
    CHECK(np.text == "3 مهم‌ترین علامت بیماری");
    CHECK(np.tokens.size() == 4);
}

TEST_CASE("expansion stops at removed entities", "[keywords][expand]")
{
    auto doc = analyse("وزیر بهداشت سعید نمکی واکسن جدید را معرفی کرد");
    auto kept = filter_named_entities(doc.body_tokens, shipped::ner());
    CandidatePhrase kw;
    kw.tokens = {kept[2]};  // واکسن
    kw.tf = 1;
    CHECK(expand_to_noun_phrase(kw, kept).text == "واکسن جدید");
}

TEST_CASE("extract_keywords on the fixture article matches the reference", "[keywords][extract][golden]")
{
    auto body = read_file(kSource / "tests/fixtures/keyword_article.txt");
    text::RawDocument raw{"article", "title", body, std::nullopt, std::nullopt};
    auto got = extract_keywords(raw, 5, shipped::pipeline(), shipped::ner());

    const std::string golden = read_file(kSource / "tests/golden/keyword_article_top5.tsv");
    std::vector<std::vector<std::string>> rows;
    for (auto line : split(golden, '\n')) {
        if (line.empty()) continue;
        std::vector<std::string> cols;
        for (auto c : split(line, '\t')) cols.emplace_back(c);
        rows.push_back(cols);
    }
    REQUIRE(got.size() == rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        CHECK(got[i].text == rows[i][1]);
        CHECK(got[i].keyword == rows[i][2]);
        CHECK_THAT(got[i].score, WithinAbs(std::stod(rows[i][3]), 1e-12));
    }
}

TEST_CASE("extract_keywords bounds and dedup", "[keywords][extract]")
{
    auto& pipeline = shipped::pipeline();
    auto& ner = shipped::ner();
    text::RawDocument empty{"e", "t", "", std::nullopt, std::nullopt};
    CHECK(extract_keywords(empty, 5, pipeline, ner).empty());
    CHECK_THROWS_AS(extract_keywords(empty, 0, pipeline, ner), PreconditionError);

    // "سرفه خشک" is a single chunk: both unigrams and the bigram expand to it
    text::RawDocument small{"s", "t", "سرفه خشک .", std::nullopt, std::nullopt};
    auto all = extract_keywords(small, 100, pipeline, ner);
    REQUIRE(all.size() == 1);
    CHECK(all[0].text == "سرفه خشک");
}

TEST_CASE("extracted phrases contain their keywords and respect k", "[keywords][extract][property]")
{
    auto body = read_file(kSource / "tests/fixtures/keyword_article.txt");
    text::RawDocument raw{"article", "title", body, std::nullopt, std::nullopt};
    for (std::size_t k = 1; k <= 40; ++k) {
        auto nps = extract_keywords(raw, k, shipped::pipeline(), shipped::ner());
        REQUIRE(nps.size() <= k);
        for (const auto& np : nps) {
            REQUIRE(np.text.find(np.keyword) != std::string::npos);
            bool noun = false;
            for (const auto& t : np.tokens) noun = noun || t.pos == PosTag::Noun;
            REQUIRE(noun);
        }
    }
}
