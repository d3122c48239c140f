#ifndef EMARC_EMBEDDINGS_HPP
#define EMARC_EMBEDDINGS_HPP

#include "emarc/lexicon.hpp"
#include "emarc/textproc.hpp"

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace emarc {

// Training hyperparameters. The defaults are conventional word2vec settings;
// they are recorded in every saved model's metadata because results are not
// comparable without them.
struct EmbeddingConfig {
    std::size_t dimension = 100;
    std::size_t window = 5;
    std::size_t negatives = 5;
    std::size_t epochs = 5;
    std::size_t min_count = 5;
    double subsample_threshold = 1e-4;
    double learning_rate = 0.025; // decays linearly to 1e-4 of itself
    std::uint64_t seed = 0;
};

struct EmbeddingModel {
    EmbeddingConfig config;
    std::uint64_t corpus_fingerprint = 0;
    std::size_t dimension = 0;
    std::vector<std::string> vocab;        // count desc, lemma asc
    std::vector<std::uint64_t> counts;     // zero for externally loaded models
    std::vector<float> matrix;             // row-major vocab.size() x dimension

    std::optional<std::size_t> index_of(std::string_view lemma) const;
    bool contains(std::string_view lemma) const { return index_of(lemma).has_value(); }
    std::span<const float> row(std::size_t i) const;

    void rebuild_index();

private:
    std::unordered_map<std::string, std::size_t> index_;
};

// Sequential, seed-deterministic skip-gram with negative sampling. Windows
// never cross the sentence boundaries recorded in the sequences. Negatives
// come from the unigram distribution raised to 3/4; frequent words are
// subsampled at the configured threshold. Identical seed + corpus + config
// give bit-identical vectors.
EmbeddingModel train_sgns(const std::vector<LemmaSequence>& seqs, const EmbeddingConfig& cfg);

// dot(u,v) / (|u||v|). Mismatched dimensions raise DimError, an all-zero
// vector raises ZeroVectorError.
double cosine(std::span<const float> u, std::span<const float> v);

// text format: header "<vocab_size> <dimension>", then "lemma v1 ... vd"
void save_model(std::ostream& out, const EmbeddingModel& model);
EmbeddingModel load_model(std::istream& in);

struct ExpansionProposal {
    enum class Status { pending, accepted, rejected };
    std::string candidate;
    std::string source; // lexicon lemma with maximal cosine
    double cosine = 0.0;
    std::vector<std::pair<std::string, double>> proposed_entries; // source's entries
    Status status = Status::pending;
};

struct ExpansionResult {
    std::vector<ExpansionProposal> proposals;   // cosine >= threshold, cosine desc
    std::vector<ExpansionProposal> near_misses; // best match below threshold
    std::vector<std::pair<std::string, std::string>> skipped; // (candidate, reason)
};

// For each candidate not already in the lexicon and present in the model
// vocabulary, finds the lexicon lemma (also in the vocabulary) with maximal
// cosine; ties break to the lexicographically smaller lemma. The search is
// an exact linear scan.
ExpansionResult propose_expansions(const EmbeddingModel& model, const Lexicon& lex,
                                   const std::vector<std::string>& candidates,
                                   double threshold);

struct ApplyResult {
    Lexicon lexicon;
    std::vector<ExpansionProposal> proposals; // statuses resolved
};

// Applies each accepted proposal as a copy_entries edit carrying the
// embedding-copy provenance; everything else is marked rejected and left
// out. accepted must be a subset of the proposals' candidate lemmas.
ApplyResult apply_proposals(const Lexicon& lex, const std::vector<ExpansionProposal>& proposals,
                            const std::set<std::string>& accepted);

// JSON-lines persistence for curator review.
void write_proposals(std::ostream& out, const std::vector<ExpansionProposal>& proposals);
std::vector<ExpansionProposal> read_proposals(std::istream& in);

// one accepted candidate lemma per line, `#` comments allowed
std::set<std::string> read_acceptance_file(std::istream& in);

} // namespace emarc

#endif
