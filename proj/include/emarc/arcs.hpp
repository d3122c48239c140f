#ifndef EMARC_ARCS_HPP
#define EMARC_ARCS_HPP

#include "emarc/lexicon.hpp"
#include "emarc/textproc.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace emarc {

// One non-negative value per emotion, aligned to the active emotion set
// order. kind tags whether values are raw intensity sums or per-10k-words
// normalized scores.
struct EmotionVector {
    enum class Kind { raw_sum, per_10k };
    Kind kind = Kind::raw_sum;
    std::vector<double> values;
};

struct DocumentScore {
    EmotionVector raw;        // sum of intensities over is_word tokens
    EmotionVector normalized; // 10000 * raw / word_count
    std::size_t word_count = 0;
};

// raw[e] = sum of intensity(lemma, e) over is_word tokens; a lemma carrying
// several emotions contributes to each. word_count of zero raises
// EmptyDocumentError.
DocumentScore score_document(const LemmaSequence& seq, const Lexicon& lex);

struct ChunkingSpec {
    enum class Mode { by_count, by_window };
    Mode mode = Mode::by_count;
    std::size_t value = 100; // n_chunks or window_tokens

    static ChunkingSpec by_count(std::size_t n) { return {Mode::by_count, n}; }
    static ChunkingSpec by_window(std::size_t w) { return {Mode::by_window, w}; }
};

struct Arc {
    std::string doc_id;
    std::vector<std::string> emotions; // active set order, fixes column order
    ChunkingSpec chunking;
    std::vector<std::size_t> chunk_word_counts;
    std::vector<EmotionVector> sums;   // per-chunk raw intensity sums
    std::vector<EmotionVector> scores; // per-chunk per-10k-within-chunk
    std::optional<std::vector<EmotionVector>> smoothed;
    std::optional<std::size_t> smoothing_window;

    std::size_t chunk_count() const { return scores.size(); }
};

// by_count splits the word-token stream into n contiguous chunks with sizes
// differing by at most one (leading chunks take the remainder); by_window
// uses fixed spans with a final partial chunk. Chunks are defined over word
// tokens only; punctuation tokens take no part in sizes or scores.
Arc build_arc(const LemmaSequence& seq, const Lexicon& lex, ChunkingSpec chunking);

// Centered moving average over the per-10k series; the window is truncated
// at the edges and the mean is taken over the actual window size. Window
// must be odd (ConfigError otherwise); window 1 returns the arc unchanged
// apart from the recorded smoothing spec.
Arc smooth_arc(Arc arc, std::size_t window);

} // namespace emarc

#endif
