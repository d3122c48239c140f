#include <doctest.h>

#include "emarc/arcs.hpp"
#include "emarc/errors.hpp"
#include "emarc/rng.hpp"

#include <algorithm>
#include <set>
#include <sstream>

using namespace emarc;

namespace {

LemmaSequence words(const std::vector<std::string>& lemmas, const std::string& id = "doc") {
    LemmaSequence seq;
    seq.doc_id = id;
    for (const auto& l : lemmas) {
        Token t;
        t.surface = l;
        t.lemma = l;
        t.is_word = true;
        seq.tokens.push_back(t);
    }
    if (!seq.tokens.empty())
        seq.sentence_boundaries = {seq.tokens.size()};
    return seq;
}

Lexicon tsv(const std::string& text) {
    std::istringstream in(text);
    return load_lexicon(in, "test");
}

} // namespace

TEST_CASE("score_document: per-10k normalization hand case") {
    // ten words, `ilo` twice, joy intensity 0.8 -> raw 1.6, per-10k 1600
    const auto seq = words({"ilo", "talo", "puu", "ilo", "tie", "maa", "vesi", "kivi", "yö",
                            "suo"});
    const auto lex = tsv("ilo\tjoy\t0.8\n");
    const auto score = score_document(seq, lex);
    CHECK(score.word_count == 10);
    const auto joy = *lex.emotions().index_of("joy");
    CHECK(score.raw.values[joy] == 1.6);
    CHECK(score.normalized.values[joy] == 1600.0);
    for (std::size_t e = 0; e < score.raw.values.size(); ++e)
        if (e != joy) {
            CHECK(score.raw.values[e] == 0.0);
            CHECK(score.normalized.values[e] == 0.0);
        }
    CHECK(score.raw.kind == EmotionVector::Kind::raw_sum);
    CHECK(score.normalized.kind == EmotionVector::Kind::per_10k);
}

TEST_CASE("score_document with an empty lexicon is all zeros") {
    const auto seq = words({"yksi", "kaksi"});
    const auto lex = tsv("");
    const auto score = score_document(seq, lex);
    for (const double v : score.raw.values)
        CHECK(v == 0.0);
}

TEST_CASE("score_document without word tokens raises EmptyDocumentError") {
    LemmaSequence seq;
    seq.doc_id = "empty";
    Token comma;
    comma.surface = ",";
    comma.lemma = ",";
    comma.is_word = false;
    seq.tokens.push_back(comma);
    CHECK_THROWS_AS(score_document(seq, tsv("ilo\tjoy\t0.8\n")), EmptyDocumentError);
}

TEST_CASE("a lemma with several emotions contributes to each") {
    const auto seq = words({"kylmä", "x"});
    const auto lex = tsv("kylmä\tfear\t0.4\nkylmä\tsadness\t0.3\n");
    const auto score = score_document(seq, lex);
    CHECK(score.raw.values[*lex.emotions().index_of("fear")] == 0.4);
    CHECK(score.raw.values[*lex.emotions().index_of("sadness")] == 0.3);
}

TEST_CASE("build_arc splits 100 tokens into 4 chunks of 25") {
    std::vector<std::string> lemmas(100, "sana");
    const auto arc = build_arc(words(lemmas), tsv(""), ChunkingSpec::by_count(4));
    REQUIRE(arc.chunk_word_counts == std::vector<std::size_t>{25, 25, 25, 25});
}

TEST_CASE("build_arc splits 10 tokens into 3 chunks as 4/3/3") {
    std::vector<std::string> lemmas(10, "sana");
    const auto arc = build_arc(words(lemmas), tsv(""), ChunkingSpec::by_count(3));
    REQUIRE(arc.chunk_word_counts == std::vector<std::size_t>{4, 3, 3});
}

TEST_CASE("build_arc window mode leaves a final partial chunk") {
    std::vector<std::string> lemmas(10, "sana");
    const auto arc = build_arc(words(lemmas), tsv(""), ChunkingSpec::by_window(4));
    REQUIRE(arc.chunk_word_counts == std::vector<std::size_t>{4, 4, 2});
}

TEST_CASE("build_arc rejects more chunks than word tokens") {
    CHECK_THROWS_AS(build_arc(words({"a", "b"}), tsv(""), ChunkingSpec::by_count(3)),
                    ChunkingError);
}

TEST_CASE("joy planted in the final quarter peaks in the last chunk") {
    std::vector<std::string> lemmas(30, "talo");
    for (int i = 0; i < 10; ++i)
        lemmas.push_back("ilo");
    const auto lex = tsv("ilo\tjoy\t0.8\n");
    const auto arc = build_arc(words(lemmas), lex, ChunkingSpec::by_count(4));
    const auto joy = *lex.emotions().index_of("joy");
    // oracle: chunks of 10; first three all `talo`, last all `ilo`
    CHECK(arc.sums[0].values[joy] == 0.0);
    CHECK(arc.sums[1].values[joy] == 0.0);
    CHECK(arc.sums[2].values[joy] == 0.0);
    CHECK(arc.sums[3].values[joy] == doctest::Approx(8.0));
    CHECK(arc.scores[3].values[joy] == doctest::Approx(8000.0));
}

TEST_CASE("per-chunk scores are normalized within the chunk") {
    // 6 words, 2 chunks of 3; one hit each of intensity 0.3
    const auto lex = tsv("paha\tanger\t0.3\n");
    const auto arc =
        build_arc(words({"paha", "a", "b", "paha", "c", "d"}), lex, ChunkingSpec::by_count(2));
    const auto anger = *lex.emotions().index_of("anger");
    CHECK(arc.scores[0].values[anger] == doctest::Approx(10000.0 * 0.3 / 3.0));
    CHECK(arc.scores[1].values[anger] == doctest::Approx(10000.0 * 0.3 / 3.0));
}

TEST_CASE("chunk conservation: chunk sums add to the document raw vector") {
    Rng rng(31);
    const auto lex = tsv("a\tjoy\t0.5\nb\tfear\t0.25\nc\tfear\t0.125\nc\tjoy\t0.75\n");
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<std::string> lemmas;
        const std::size_t len = 5 + rng.next_below(60);
        static const std::vector<std::string> pool = {"a", "b", "c", "d", "e"};
        for (std::size_t i = 0; i < len; ++i)
            lemmas.push_back(pool[rng.next_below(pool.size())]);
        const auto seq = words(lemmas);
        const auto whole = score_document(seq, lex);
        const std::size_t n_chunks = 1 + rng.next_below(5);
        const auto arc = build_arc(seq, lex, ChunkingSpec::by_count(n_chunks));
        for (std::size_t e = 0; e < whole.raw.values.size(); ++e) {
            double sum = 0.0;
            for (const auto& chunk : arc.sums)
                sum += chunk.values[e];
            REQUIRE(sum == whole.raw.values[e]);
        }
    }
}

TEST_CASE("normalization is invariant under doubling the document") {
    const auto lex = tsv("ilo\tjoy\t0.8\nsuru\tsadness\t0.7\n");
    std::vector<std::string> lemmas = {"ilo", "a", "suru", "b", "ilo", "c", "d"};
    const auto once = score_document(words(lemmas), lex);
    std::vector<std::string> twice = lemmas;
    twice.insert(twice.end(), lemmas.begin(), lemmas.end());
    const auto doubled = score_document(words(twice), lex);
    for (std::size_t e = 0; e < once.normalized.values.size(); ++e) {
        const double a = once.normalized.values[e];
        const double b = doubled.normalized.values[e];
        CHECK(b == doctest::Approx(a).epsilon(1e-9));
    }
}

TEST_CASE("adding a lexicon entry never lowers that emotion's raw score") {
    const auto lex = tsv("ilo\tjoy\t0.8\n");
    const auto seq = words({"ilo", "uusi", "talo", "uusi"});
    const auto before = score_document(seq, lex);
    const auto extended = edit_lexicon(lex, make_add("uusi", "joy", 0.25));
    const auto after = score_document(seq, extended);
    const auto joy = *lex.emotions().index_of("joy");
    CHECK(after.raw.values[joy] >= before.raw.values[joy]);
    for (std::size_t e = 0; e < before.raw.values.size(); ++e)
        if (e != joy)
            CHECK(after.raw.values[e] == before.raw.values[e]);
}

TEST_CASE("smooth_arc: constant series is a fixpoint") {
    std::vector<std::string> lemmas(20, "ilo");
    const auto lex = tsv("ilo\tjoy\t0.5\n");
    auto arc = build_arc(words(lemmas), lex, ChunkingSpec::by_count(5));
    arc = smooth_arc(std::move(arc), 3);
    REQUIRE(arc.smoothed.has_value());
    const auto joy = *lex.emotions().index_of("joy");
    for (const auto& chunk : *arc.smoothed)
        CHECK(chunk.values[joy] == doctest::Approx(5000.0));
}

TEST_CASE("smooth_arc window 1 is the identity") {
    const auto lex = tsv("ilo\tjoy\t0.5\n");
    auto arc = build_arc(words({"ilo", "a", "b", "ilo", "c", "ilo"}), lex,
                         ChunkingSpec::by_count(3));
    arc = smooth_arc(std::move(arc), 1);
    REQUIRE(arc.smoothed.has_value());
    for (std::size_t c = 0; c < arc.scores.size(); ++c)
        CHECK((*arc.smoothed)[c].values == arc.scores[c].values);
}

TEST_CASE("smooth_arc truncated means: [0,0,9,0,0] with window 3 -> [0,3,3,3,0]") {
    // engineer per-chunk scores of exactly [0,0,9,0,0]
    Arc arc;
    arc.doc_id = "hand";
    arc.emotions = {"joy"};
    arc.chunking = ChunkingSpec::by_count(5);
    arc.chunk_word_counts = {1, 1, 1, 1, 1};
    for (const double v : {0.0, 0.0, 9.0, 0.0, 0.0}) {
        EmotionVector sum{EmotionVector::Kind::raw_sum, {v}};
        EmotionVector score{EmotionVector::Kind::per_10k, {v}};
        arc.sums.push_back(sum);
        arc.scores.push_back(score);
    }
    const auto smoothed = smooth_arc(arc, 3);
    REQUIRE(smoothed.smoothed.has_value());
    const std::vector<double> expected = {0.0, 3.0, 3.0, 3.0, 0.0};
    for (std::size_t c = 0; c < expected.size(); ++c)
        CHECK((*smoothed.smoothed)[c].values[0] == expected[c]);
}

TEST_CASE("smooth_arc rejects even windows") {
    const auto lex = tsv("");
    auto arc = build_arc(words({"a", "b", "c", "d"}), lex, ChunkingSpec::by_count(2));
    CHECK_THROWS_AS(smooth_arc(std::move(arc), 4), ConfigError);
}

TEST_CASE("smoothed values stay within the raw range of their window") {
    Rng rng(77);
    const auto lex = tsv("a\tjoy\t0.5\nb\tjoy\t0.875\nc\tjoy\t0.125\n");
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<std::string> lemmas;
        static const std::vector<std::string> pool = {"a", "b", "c", "d"};
        const std::size_t len = 10 + rng.next_below(80);
        for (std::size_t i = 0; i < len; ++i)
            lemmas.push_back(pool[rng.next_below(pool.size())]);
        auto arc = build_arc(words(lemmas), lex, ChunkingSpec::by_count(5 + rng.next_below(5)));
        const std::size_t window = 1 + 2 * rng.next_below(3); // 1, 3 or 5
        arc = smooth_arc(std::move(arc), window);
        const std::size_t half = window / 2;
        const auto joy = *lex.emotions().index_of("joy");
        for (std::size_t i = 0; i < arc.scores.size(); ++i) {
            const std::size_t lo = i >= half ? i - half : 0;
            const std::size_t hi = std::min(arc.scores.size() - 1, i + half);
            double mn = arc.scores[lo].values[joy], mx = mn;
            for (std::size_t j = lo; j <= hi; ++j) {
                mn = std::min(mn, arc.scores[j].values[joy]);
                mx = std::max(mx, arc.scores[j].values[joy]);
            }
            const double v = (*arc.smoothed)[i].values[joy];
            CHECK(v >= mn - 1e-9);
            CHECK(v <= mx + 1e-9);
        }
    }
}

TEST_CASE("score_document matches a brute-force accumulator on random pairs") {
    Rng rng(123);
    static const std::vector<std::string> pool = {"a", "b", "c", "d", "e", "f", "g", "h"};
    const std::vector<std::string> emotions = EmotionSet::default_set().names();
    for (int trial = 0; trial < 200; ++trial) {
        // random lexicon on a dyadic grid so double sums are exact
        std::ostringstream tsv_text;
        std::set<std::pair<std::string, std::string>> used;
        const std::size_t rows = rng.next_below(20);
        for (std::size_t r = 0; r < rows; ++r) {
            const std::string lemma = pool[rng.next_below(pool.size())];
            const std::string emotion = emotions[rng.next_below(emotions.size())];
            if (!used.insert({lemma, emotion}).second)
                continue;
            tsv_text << lemma << '\t' << emotion << '\t'
                     << format_double(static_cast<double>(rng.next_below(1025)) / 1024.0)
                     << '\n';
        }
        const auto lex = tsv(tsv_text.str());

        std::vector<std::string> lemmas;
        const std::size_t len = 1 + rng.next_below(50);
        for (std::size_t i = 0; i < len; ++i)
            lemmas.push_back(pool[rng.next_below(pool.size())]);
        const auto seq = words(lemmas);

        // oracle: straight per-token accumulation over the raw rows
        std::vector<double> expected(emotions.size(), 0.0);
        for (const auto& lemma : lemmas)
            for (std::size_t e = 0; e < emotions.size(); ++e)
                if (const auto v = lex.intensity(lemma, emotions[e]))
                    expected[e] += *v;

        const auto score = score_document(seq, lex);
        for (std::size_t e = 0; e < emotions.size(); ++e) {
            REQUIRE(score.raw.values[e] == expected[e]);
            const double norm = 10000.0 * expected[e] / static_cast<double>(len);
            REQUIRE(score.normalized.values[e] ==
                    doctest::Approx(norm).epsilon(1e-9));
        }
    }
}
