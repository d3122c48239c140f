#ifndef EMARC_TEXTPROC_HPP
#define EMARC_TEXTPROC_HPP

#include <cstddef>
#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace emarc {

// One token as produced by the fallback tokenizer or read from CoNLL-U.
// An empty upos means unknown. is_word is true iff the token carries
// alphabetic content; punctuation, symbols and bare numbers are counted as
// tokens but never as words.
struct Token {
    std::string surface;
    std::string lemma; // never empty
    std::string upos;  // empty = unknown
    bool is_word = false;
};

struct LemmaSequence {
    std::string doc_id;
    std::vector<Token> tokens;
    // Exclusive end index of each sentence; strictly increasing, the last one
    // equals tokens.size() for a non-empty sequence.
    std::vector<std::size_t> sentence_boundaries;

    std::size_t word_count() const;
};

// Splits on whitespace, then peels punctuation into single-codepoint tokens.
// Maximal runs of letters/digits form one token. Lemma is the lowercased
// surface and upos stays unknown; this is the documented naive fallback, use
// CoNLL-U input for real work (Finnish morphology is not approximated here).
std::vector<Token> tokenize(std::string_view text);

// tokenize() plus sentence boundaries at . ! ? and ellipsis tokens.
LemmaSequence sequence_from_text(std::string doc_id, std::string_view text);

// Reads the ID/FORM/LEMMA/UPOS columns of a CoNLL-U stream. Multiword range
// rows (ID "1-2") and empty nodes (ID "1.1") are skipped; `#` comments and
// blank-line sentence separators follow the UD spec. A row without exactly
// 10 tab-separated columns raises ParseError with its line number.
LemmaSequence read_conllu(std::istream& in, std::string doc_id = {});

struct CorpusStats {
    std::size_t token_count = 0; // all tokens, punctuation included
    std::size_t word_count = 0;  // is_word tokens only
    std::size_t type_count = 0;  // distinct lemmas among is_word tokens
    double ttr = 0.0;            // type_count / word_count, 0 when no words
    // k most frequent lemmas, count desc, ties lexicographic asc
    std::vector<std::pair<std::string, std::size_t>> top_frequent;
};

CorpusStats corpus_stats(const std::vector<LemmaSequence>& seqs, std::size_t k);

// lemma<TAB>count, one row per top_frequent entry
void write_frequency_tsv(std::ostream& out, const CorpusStats& stats);

} // namespace emarc

#endif
