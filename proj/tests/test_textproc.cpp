#include <doctest.h>

#include "emarc/errors.hpp"
#include "emarc/rng.hpp"
#include "emarc/textproc.hpp"
#include "emarc/unicode.hpp"

#include <algorithm>
#include <map>
#include <sstream>

using namespace emarc;

TEST_CASE("tokenize splits words and peels punctuation") {
    const auto tokens = tokenize("Harakan mieli käy surulliseksi,");
    REQUIRE(tokens.size() == 5);
    CHECK(tokens[0].lemma == "harakan");
    CHECK(tokens[1].lemma == "mieli");
    CHECK(tokens[2].lemma == "käy");
    CHECK(tokens[3].lemma == "surulliseksi");
    CHECK(tokens[4].surface == ",");
    CHECK_FALSE(tokens[4].is_word);
    for (int i = 0; i < 4; ++i)
        CHECK(tokens[i].is_word);
}

TEST_CASE("tokenize of empty string is empty") {
    CHECK(tokenize("").empty());
    CHECK(tokenize("   \n\t ").empty());
}

TEST_CASE("tokenize counts four word tokens in a bare phrase") {
    const auto tokens = tokenize("alavilla mailla hallan vaara");
    REQUIRE(tokens.size() == 4);
    for (const auto& t : tokens)
        CHECK(t.is_word);
}

TEST_CASE("tokenize lowercases the lemma, including non-ASCII") {
    const auto tokens = tokenize("Ääni JÄRVI Öinen");
    REQUIRE(tokens.size() == 3);
    CHECK(tokens[0].lemma == "ääni");
    CHECK(tokens[1].lemma == "järvi");
    CHECK(tokens[2].lemma == "öinen");
    for (const auto& t : tokens) {
        CHECK(t.upos.empty());
        CHECK(t.lemma == lower_copy(t.surface));
    }
}

TEST_CASE("tokenize: digits are tokens but not words") {
    const auto tokens = tokenize("vuonna 1884.");
    REQUIRE(tokens.size() == 3);
    CHECK(tokens[1].surface == "1884");
    CHECK_FALSE(tokens[1].is_word);
    CHECK_FALSE(tokens[2].is_word);
}

TEST_CASE("sequence_from_text records sentence boundaries at terminators") {
    const auto seq = sequence_from_text("d", "Tämä on lause. Toinen lause! Kolmas");
    // tokens: tämä on lause . toinen lause ! kolmas
    REQUIRE(seq.tokens.size() == 8);
    REQUIRE(seq.sentence_boundaries.size() == 3);
    CHECK(seq.sentence_boundaries[0] == 4);
    CHECK(seq.sentence_boundaries[1] == 7);
    CHECK(seq.sentence_boundaries[2] == 8);
}

namespace {

constexpr const char* kConllu =
    "# newdoc id = fixture\n"
    "# sent_id = 1\n"
    "1\tHarakan\tharakka\tNOUN\t_\t_\t2\tnmod\t_\t_\n"
    "2\tmieli\tmieli\tNOUN\t_\t_\t3\tnsubj\t_\t_\n"
    "3\tkäy\tkäydä\tVERB\t_\t_\t0\troot\t_\t_\n"
    "4\tsurulliseksi\tsurullinen\tADJ\t_\t_\t3\txcomp\t_\t_\n"
    "5\t,\t,\tPUNCT\t_\t_\t3\tpunct\t_\t_\n"
    "\n"
    "# sent_id = 2\n"
    "1\tsillä\tsillä\tADV\t_\t_\t4\tadvmod\t_\t_\n"
    "2\ton\tolla\tAUX\t_\t_\t4\tcop\t_\t_\n"
    "3\tnälkä\tnälkä\tNOUN\t_\t_\t0\troot\t_\t_\n"
    "4\t.\t.\tPUNCT\t_\t_\t3\tpunct\t_\t_\n";

} // namespace

TEST_CASE("read_conllu: 9 rows over 2 sentences") {
    std::istringstream in(kConllu);
    const auto seq = read_conllu(in, "fixture");
    REQUIRE(seq.tokens.size() == 9);
    REQUIRE(seq.sentence_boundaries.size() == 2);
    CHECK(seq.sentence_boundaries[0] == 5);
    CHECK(seq.sentence_boundaries[1] == 9);
    CHECK(seq.tokens[0].lemma == "harakka");
    CHECK(seq.tokens[0].upos == "NOUN");
    CHECK(seq.tokens[2].lemma == "käydä");
    CHECK_FALSE(seq.tokens[4].is_word); // the comma
    CHECK(seq.word_count() == 7);
}

TEST_CASE("read_conllu skips multiword range rows, keeps the parts") {
    std::istringstream in(
        "1-2\tettei\t_\t_\t_\t_\t_\t_\t_\t_\n"
        "1\tettä\tettä\tSCONJ\t_\t_\t3\tmark\t_\t_\n"
        "2\tei\tei\tAUX\t_\t_\t3\taux\t_\t_\n"
        "3\ttule\ttulla\tVERB\t_\t_\t0\troot\t_\t_\n");
    const auto seq = read_conllu(in);
    REQUIRE(seq.tokens.size() == 3);
    CHECK(seq.tokens[0].lemma == "että");
    CHECK(seq.tokens[1].lemma == "ei");
    CHECK(seq.tokens[2].lemma == "tulla");
}

TEST_CASE("read_conllu skips empty nodes") {
    std::istringstream in(
        "1\tsana\tsana\tNOUN\t_\t_\t0\troot\t_\t_\n"
        "1.1\tolla\tolla\tVERB\t_\t_\t_\t_\t_\t_\n"
        "2\ttoinen\ttoinen\tADJ\t_\t_\t1\tamod\t_\t_\n");
    const auto seq = read_conllu(in);
    CHECK(seq.tokens.size() == 2);
}

TEST_CASE("read_conllu rejects a 9-column row with its line number") {
    std::istringstream in(
        "1\tsana\tsana\tNOUN\t_\t_\t0\troot\t_\t_\n"
        "2\ttoinen\ttoinen\tADJ\t_\t_\t1\tamod\t_\n");
    try {
        read_conllu(in);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        const std::string msg = e.what();
        CHECK(msg.find("line 2") != std::string::npos);
        CHECK(msg.find("9") != std::string::npos);
    }
}

TEST_CASE("read_conllu falls back to lowercased FORM when LEMMA is underscore") {
    std::istringstream in("1\tSana\t_\tNOUN\t_\t_\t0\troot\t_\t_\n");
    const auto seq = read_conllu(in);
    REQUIRE(seq.tokens.size() == 1);
    CHECK(seq.tokens[0].lemma == "sana");
}

TEST_CASE("corpus_stats hand case: lemmas a, b, a") {
    LemmaSequence seq;
    seq.doc_id = "t";
    for (const char* l : {"a", "b", "a"}) {
        Token t;
        t.surface = l;
        t.lemma = l;
        t.is_word = true;
        seq.tokens.push_back(t);
    }
    seq.sentence_boundaries = {3};
    const auto stats = corpus_stats({seq}, 10);
    CHECK(stats.token_count == 3);
    CHECK(stats.word_count == 3);
    CHECK(stats.type_count == 2);
    CHECK(stats.ttr == doctest::Approx(2.0 / 3.0));
    REQUIRE(stats.top_frequent.size() == 2);
    CHECK(stats.top_frequent[0].first == "a");
    CHECK(stats.top_frequent[0].second == 2);
}

TEST_CASE("corpus_stats with k = 0 reports no top lemmas") {
    const auto seq = sequence_from_text("t", "yksi kaksi kolme");
    const auto stats = corpus_stats({seq}, 0);
    CHECK(stats.top_frequent.empty());
    CHECK(stats.word_count == 3);
}

namespace {

LemmaSequence random_sequence(Rng& rng, std::size_t id) {
    static const std::vector<std::string> pool = {"aalto", "ilta",  "kivi", "lumi",
                                                  "meri",  "pilvi", "suo",  "tuli"};
    LemmaSequence seq;
    seq.doc_id = "r" + std::to_string(id);
    const std::size_t len = 1 + rng.next_below(40);
    for (std::size_t i = 0; i < len; ++i) {
        Token t;
        if (rng.next_below(5) == 0) {
            t.surface = ".";
            t.lemma = ".";
            t.is_word = false;
        } else {
            t.surface = pool[rng.next_below(pool.size())];
            t.lemma = t.surface;
            t.is_word = true;
        }
        seq.tokens.push_back(t);
    }
    seq.sentence_boundaries = {seq.tokens.size()};
    return seq;
}

} // namespace

TEST_CASE("corpus_stats matches a brute-force tally on 100 random corpora") {
    Rng rng(7);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<LemmaSequence> seqs;
        const std::size_t n = 1 + rng.next_below(6);
        for (std::size_t i = 0; i < n; ++i)
            seqs.push_back(random_sequence(rng, i));

        // independent recount
        std::size_t tokens = 0, words = 0;
        std::map<std::string, std::size_t> tally;
        for (const auto& s : seqs)
            for (const auto& t : s.tokens) {
                ++tokens;
                if (t.is_word) {
                    ++words;
                    ++tally[t.lemma];
                }
            }

        const auto stats = corpus_stats(seqs, 3);
        REQUIRE(stats.token_count == tokens);
        REQUIRE(stats.word_count == words);
        REQUIRE(stats.type_count == tally.size());

        std::vector<std::pair<std::string, std::size_t>> expected(tally.begin(), tally.end());
        std::sort(expected.begin(), expected.end(), [](const auto& a, const auto& b) {
            if (a.second != b.second)
                return a.second > b.second;
            return a.first < b.first;
        });
        if (expected.size() > 3)
            expected.resize(3);
        REQUIRE(stats.top_frequent == expected);
    }
}

TEST_CASE("corpus_stats is permutation-invariant over document order") {
    Rng rng(11);
    std::vector<LemmaSequence> seqs;
    for (std::size_t i = 0; i < 5; ++i)
        seqs.push_back(random_sequence(rng, i));
    const auto a = corpus_stats(seqs, 5);
    std::reverse(seqs.begin(), seqs.end());
    const auto b = corpus_stats(seqs, 5);
    CHECK(a.token_count == b.token_count);
    CHECK(a.word_count == b.word_count);
    CHECK(a.type_count == b.type_count);
    CHECK(a.ttr == b.ttr);
    CHECK(a.top_frequent == b.top_frequent);
}

TEST_CASE("frequency TSV is lemma<TAB>count") {
    const auto seq = sequence_from_text("t", "yö yö päivä");
    const auto stats = corpus_stats({seq}, 2);
    std::ostringstream out;
    write_frequency_tsv(out, stats);
    CHECK(out.str() == "yö\t2\npäivä\t1\n");
}
