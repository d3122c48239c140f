#include "emarc/arcs.hpp"

#include "emarc/errors.hpp"

#include <algorithm>

namespace emarc {

namespace {

void accumulate(EmotionVector& acc, const Token& token, const Lexicon& lex) {
    if (!token.is_word)
        return;
    for (const auto& [emotion, intensity] : lex.entries_for(token.lemma)) {
        const auto idx = lex.emotions().index_of(emotion);
        if (idx)
            acc.values[*idx] += intensity;
    }
}

EmotionVector normalize_per_10k(const EmotionVector& raw, std::size_t word_count) {
    EmotionVector out;
    out.kind = EmotionVector::Kind::per_10k;
    out.values.resize(raw.values.size());
    for (std::size_t i = 0; i < raw.values.size(); ++i)
        out.values[i] = 10000.0 * raw.values[i] / static_cast<double>(word_count);
    return out;
}

} // namespace

DocumentScore score_document(const LemmaSequence& seq, const Lexicon& lex) {
    DocumentScore score;
    score.raw.kind = EmotionVector::Kind::raw_sum;
    score.raw.values.assign(lex.emotions().size(), 0.0);

    for (const auto& token : seq.tokens) {
        if (token.is_word)
            ++score.word_count;
        accumulate(score.raw, token, lex);
    }
    if (score.word_count == 0)
        throw EmptyDocumentError("document '" + seq.doc_id + "' has no word tokens");

    score.normalized = normalize_per_10k(score.raw, score.word_count);
    return score;
}

Arc build_arc(const LemmaSequence& seq, const Lexicon& lex, ChunkingSpec chunking) {
    if (chunking.value < 1)
        throw ChunkingError("chunking parameter must be >= 1");

    std::vector<std::size_t> word_positions;
    for (std::size_t i = 0; i < seq.tokens.size(); ++i)
        if (seq.tokens[i].is_word)
            word_positions.push_back(i);
    const std::size_t words = word_positions.size();
    if (words == 0)
        throw EmptyDocumentError("document '" + seq.doc_id + "' has no word tokens");

    std::vector<std::size_t> chunk_sizes;
    if (chunking.mode == ChunkingSpec::Mode::by_count) {
        const std::size_t n = chunking.value;
        if (words < n)
            throw ChunkingError("document '" + seq.doc_id + "' has " + std::to_string(words) +
                                " word tokens, fewer than " + std::to_string(n) + " chunks");
        const std::size_t base = words / n;
        const std::size_t extra = words % n;
        for (std::size_t c = 0; c < n; ++c)
            chunk_sizes.push_back(base + (c < extra ? 1 : 0));
    } else {
        const std::size_t w = chunking.value;
        for (std::size_t done = 0; done < words; done += w)
            chunk_sizes.push_back(std::min(w, words - done));
    }

    Arc arc;
    arc.doc_id = seq.doc_id;
    arc.emotions = lex.emotions().names();
    arc.chunking = chunking;

    std::size_t pos = 0; // index into word_positions
    for (const std::size_t size : chunk_sizes) {
        EmotionVector sum;
        sum.kind = EmotionVector::Kind::raw_sum;
        sum.values.assign(lex.emotions().size(), 0.0);
        for (std::size_t k = 0; k < size; ++k, ++pos)
            accumulate(sum, seq.tokens[word_positions[pos]], lex);
        arc.chunk_word_counts.push_back(size);
        arc.scores.push_back(normalize_per_10k(sum, size));
        arc.sums.push_back(std::move(sum));
    }
    return arc;
}

Arc smooth_arc(Arc arc, std::size_t window) {
    if (window < 1 || window % 2 == 0)
        throw ConfigError("smoothing window must be odd and >= 1, got " +
                          std::to_string(window));

    const std::size_t n = arc.scores.size();
    const std::size_t half = window / 2;
    std::vector<EmotionVector> smoothed(n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t lo = i >= half ? i - half : 0;
        const std::size_t hi = std::min(n - 1, i + half);
        EmotionVector v;
        v.kind = EmotionVector::Kind::per_10k;
        v.values.assign(arc.emotions.size(), 0.0);
        for (std::size_t j = lo; j <= hi; ++j)
            for (std::size_t e = 0; e < v.values.size(); ++e)
                v.values[e] += arc.scores[j].values[e];
        const auto width = static_cast<double>(hi - lo + 1);
        for (auto& x : v.values)
            x /= width;
        smoothed[i] = std::move(v);
    }
    arc.smoothed = std::move(smoothed);
    arc.smoothing_window = window;
    return arc;
}

} // namespace emarc
