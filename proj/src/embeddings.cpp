#include "emarc/embeddings.hpp"

#include "emarc/errors.hpp"
#include "emarc/rng.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

namespace emarc {

using nlohmann::json;

namespace {

constexpr std::size_t kUnigramTableSize = 1u << 20;

double sigmoid(double x) {
    if (x > 30.0)
        return 1.0;
    if (x < -30.0)
        return 0.0;
    return 1.0 / (1.0 + std::exp(-x));
}

std::uint64_t fnv1a(std::uint64_t h, std::string_view s) {
    for (const char c : s) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::uint64_t fingerprint(const std::vector<LemmaSequence>& seqs) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (const auto& seq : seqs) {
        h = fnv1a(h, seq.doc_id);
        h = fnv1a(h, "\x1f");
        for (const auto& t : seq.tokens) {
            h = fnv1a(h, t.lemma);
            h ^= t.is_word ? 0x9eULL : 0x3cULL;
            h *= 0x100000001b3ULL;
        }
        for (const auto b : seq.sentence_boundaries) {
            h ^= b;
            h *= 0x100000001b3ULL;
        }
    }
    return h;
}

void validate(const EmbeddingConfig& cfg) {
    if (cfg.dimension == 0 || cfg.window == 0 || cfg.negatives == 0 || cfg.epochs == 0 ||
        cfg.min_count == 0)
        throw ConfigError("embedding config: dimension, window, negatives, epochs and "
                          "min_count must all be positive");
    if (cfg.learning_rate <= 0.0)
        throw ConfigError("embedding config: learning rate must be positive");
}

std::string format_float(float value) {
    char buf[48];
    const auto res = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, res.ptr);
}

} // namespace

std::optional<std::size_t> EmbeddingModel::index_of(std::string_view lemma) const {
    const auto it = index_.find(std::string(lemma));
    if (it == index_.end())
        return std::nullopt;
    return it->second;
}

std::span<const float> EmbeddingModel::row(std::size_t i) const {
    return std::span<const float>(matrix.data() + i * dimension, dimension);
}

void EmbeddingModel::rebuild_index() {
    index_.clear();
    index_.reserve(vocab.size());
    for (std::size_t i = 0; i < vocab.size(); ++i)
        index_.emplace(vocab[i], i);
}

EmbeddingModel train_sgns(const std::vector<LemmaSequence>& seqs, const EmbeddingConfig& cfg) {
    validate(cfg);

    // vocabulary: lemmas of word tokens with count >= min_count
    std::unordered_map<std::string, std::uint64_t> freq;
    for (const auto& seq : seqs)
        for (const auto& t : seq.tokens)
            if (t.is_word)
                ++freq[t.lemma];

    EmbeddingModel model;
    model.config = cfg;
    model.corpus_fingerprint = fingerprint(seqs);
    model.dimension = cfg.dimension;
    for (const auto& [lemma, count] : freq)
        if (count >= cfg.min_count)
            model.vocab.push_back(lemma);
    if (model.vocab.empty())
        throw EmptyVocabError("no lemma reaches min_count " + std::to_string(cfg.min_count));
    std::sort(model.vocab.begin(), model.vocab.end(),
              [&](const std::string& a, const std::string& b) {
                  const auto ca = freq[a], cb = freq[b];
                  if (ca != cb)
                      return ca > cb;
                  return a < b;
              });
    model.counts.reserve(model.vocab.size());
    for (const auto& lemma : model.vocab)
        model.counts.push_back(freq[lemma]);
    model.rebuild_index();

    const std::size_t vocab_size = model.vocab.size();
    const std::size_t dim = cfg.dimension;
    std::uint64_t train_words = 0;
    for (const auto c : model.counts)
        train_words += c;

    // sentences as vocabulary ids, windows never cross them
    std::vector<std::vector<std::uint32_t>> sentences;
    for (const auto& seq : seqs) {
        std::size_t begin = 0;
        for (const std::size_t end : seq.sentence_boundaries) {
            std::vector<std::uint32_t> ids;
            for (std::size_t i = begin; i < end; ++i) {
                const auto& t = seq.tokens[i];
                if (!t.is_word)
                    continue;
                if (const auto idx = model.index_of(t.lemma))
                    ids.push_back(static_cast<std::uint32_t>(*idx));
            }
            if (!ids.empty())
                sentences.push_back(std::move(ids));
            begin = end;
        }
    }

    // unigram^(3/4) table for negative sampling
    std::vector<std::uint32_t> unigram_table(kUnigramTableSize);
    {
        double norm = 0.0;
        for (const auto c : model.counts)
            norm += std::pow(static_cast<double>(c), 0.75);
        std::size_t word = 0;
        double cum = std::pow(static_cast<double>(model.counts[0]), 0.75) / norm;
        for (std::size_t i = 0; i < kUnigramTableSize; ++i) {
            unigram_table[i] = static_cast<std::uint32_t>(word);
            if (static_cast<double>(i) / kUnigramTableSize > cum && word + 1 < vocab_size) {
                ++word;
                cum += std::pow(static_cast<double>(model.counts[word]), 0.75) / norm;
            }
        }
    }

    // subsampling keep probabilities
    std::vector<double> keep_prob(vocab_size, 1.0);
    if (cfg.subsample_threshold > 0.0) {
        for (std::size_t i = 0; i < vocab_size; ++i) {
            const double z = static_cast<double>(model.counts[i]) /
                             static_cast<double>(train_words);
            const double p = (std::sqrt(z / cfg.subsample_threshold) + 1.0) *
                             (cfg.subsample_threshold / z);
            keep_prob[i] = std::min(1.0, p);
        }
    }

    Rng rng(cfg.seed);
    std::vector<float> syn0(vocab_size * dim);
    std::vector<float> syn1(vocab_size * dim, 0.0f);
    for (auto& w : syn0)
        w = static_cast<float>((rng.next_double() - 0.5) / static_cast<double>(dim));

    const double lr0 = cfg.learning_rate;
    const double lr_floor = lr0 * 1e-4;
    const auto total_words = static_cast<double>(cfg.epochs * train_words + 1);
    std::uint64_t processed = 0;
    std::vector<double> grad_center(dim);
    std::vector<std::uint32_t> kept;

    for (std::size_t epoch = 0; epoch < cfg.epochs; ++epoch) {
        for (const auto& sentence : sentences) {
            const double lr =
                std::max(lr_floor, lr0 * (1.0 - static_cast<double>(processed) / total_words));
            processed += sentence.size();

            kept.clear();
            for (const auto id : sentence) {
                if (keep_prob[id] >= 1.0 || rng.next_double() < keep_prob[id])
                    kept.push_back(id);
            }
            if (kept.size() < 2)
                continue;

            for (std::size_t center = 0; center < kept.size(); ++center) {
                // classic dynamic window: effective size uniform in [1, window]
                const std::size_t reach =
                    1 + static_cast<std::size_t>(rng.next_below(cfg.window));
                const std::size_t lo = center >= reach ? center - reach : 0;
                const std::size_t hi = std::min(kept.size() - 1, center + reach);
                const std::uint32_t center_id = kept[center];
                float* const v_center = syn0.data() + center_id * dim;

                for (std::size_t ctx = lo; ctx <= hi; ++ctx) {
                    if (ctx == center)
                        continue;
                    const std::uint32_t context_id = kept[ctx];
                    std::fill(grad_center.begin(), grad_center.end(), 0.0);

                    for (std::size_t k = 0; k <= cfg.negatives; ++k) {
                        std::uint32_t target;
                        double label;
                        if (k == 0) {
                            target = context_id;
                            label = 1.0;
                        } else {
                            target = unigram_table[rng.next_below(kUnigramTableSize)];
                            if (target == context_id)
                                continue;
                            label = 0.0;
                        }
                        float* const v_target = syn1.data() + target * dim;
                        double dot = 0.0;
                        for (std::size_t d = 0; d < dim; ++d)
                            dot += static_cast<double>(v_center[d]) * v_target[d];
                        const double g = (label - sigmoid(dot)) * lr;
                        for (std::size_t d = 0; d < dim; ++d) {
                            grad_center[d] += g * v_target[d];
                            v_target[d] += static_cast<float>(g * v_center[d]);
                        }
                    }
                    for (std::size_t d = 0; d < dim; ++d)
                        v_center[d] += static_cast<float>(grad_center[d]);
                }
            }
        }
    }

    model.matrix = std::move(syn0);
    return model;
}

double cosine(std::span<const float> u, std::span<const float> v) {
    if (u.size() != v.size())
        throw DimError("cosine: dimension mismatch " + std::to_string(u.size()) + " vs " +
                       std::to_string(v.size()));
    double dot = 0.0, nu = 0.0, nv = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        dot += static_cast<double>(u[i]) * v[i];
        nu += static_cast<double>(u[i]) * u[i];
        nv += static_cast<double>(v[i]) * v[i];
    }
    if (nu == 0.0 || nv == 0.0)
        throw ZeroVectorError("cosine: zero vector");
    return dot / (std::sqrt(nu) * std::sqrt(nv));
}

void save_model(std::ostream& out, const EmbeddingModel& model) {
    out << model.vocab.size() << ' ' << model.dimension << '\n';
    for (std::size_t i = 0; i < model.vocab.size(); ++i) {
        out << model.vocab[i];
        const auto r = model.row(i);
        for (const float w : r)
            out << ' ' << format_float(w);
        out << '\n';
    }
}

EmbeddingModel load_model(std::istream& in) {
    EmbeddingModel model;
    std::string line;
    if (!std::getline(in, line))
        throw ParseError("model file: missing header");
    std::istringstream header(line);
    std::size_t vocab_size = 0, dim = 0;
    if (!(header >> vocab_size >> dim) || dim == 0)
        throw ParseError("model file: bad header '" + line + "'");
    model.dimension = dim;
    model.vocab.reserve(vocab_size);
    model.matrix.reserve(vocab_size * dim);

    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty())
            continue;
        std::istringstream row(line);
        std::string lemma;
        row >> lemma;
        std::vector<float> values;
        values.reserve(dim);
        float w;
        while (row >> w)
            values.push_back(w);
        if (values.size() != dim)
            throw ParseError("model file line " + std::to_string(line_no) + ": expected " +
                             std::to_string(dim) + " values, got " +
                             std::to_string(values.size()));
        model.vocab.push_back(std::move(lemma));
        model.matrix.insert(model.matrix.end(), values.begin(), values.end());
    }
    if (model.vocab.size() != vocab_size)
        throw ParseError("model file: header promises " + std::to_string(vocab_size) +
                         " rows, found " + std::to_string(model.vocab.size()));
    model.counts.assign(model.vocab.size(), 0);
    model.rebuild_index();
    return model;
}

ExpansionResult propose_expansions(const EmbeddingModel& model, const Lexicon& lex,
                                   const std::vector<std::string>& candidates,
                                   double threshold) {
    if (!(threshold > 0.0 && threshold <= 1.0))
        throw ConfigError("expansion threshold must be in (0, 1], got " +
                          format_double(threshold));

    // lexicon lemmas present in the model vocabulary, with nonzero vectors
    std::vector<std::pair<std::string, std::size_t>> anchors;
    for (const auto& lemma : lex.lemmas()) {
        if (const auto idx = model.index_of(lemma)) {
            const auto r = model.row(*idx);
            double norm = 0.0;
            for (const float w : r)
                norm += static_cast<double>(w) * w;
            if (norm > 0.0)
                anchors.emplace_back(lemma, *idx);
        }
    }

    ExpansionResult result;
    for (const auto& candidate : candidates) {
        if (lex.contains(candidate))
            continue;
        const auto cand_idx = model.index_of(candidate);
        if (!cand_idx) {
            result.skipped.emplace_back(candidate, "not in model vocabulary");
            continue;
        }
        if (anchors.empty()) {
            result.skipped.emplace_back(candidate, "no lexicon lemma in model vocabulary");
            continue;
        }
        const auto cand_row = model.row(*cand_idx);
        {
            double norm = 0.0;
            for (const float w : cand_row)
                norm += static_cast<double>(w) * w;
            if (norm == 0.0) {
                result.skipped.emplace_back(candidate, "zero vector");
                continue;
            }
        }

        bool have_best = false;
        double best_cos = 0.0;
        std::string best_lemma;
        for (const auto& [lemma, idx] : anchors) {
            const double c = cosine(cand_row, model.row(idx));
            if (!have_best || c > best_cos || (c == best_cos && lemma < best_lemma)) {
                have_best = true;
                best_cos = c;
                best_lemma = lemma;
            }
        }

        ExpansionProposal p;
        p.candidate = candidate;
        p.source = best_lemma;
        p.cosine = best_cos;
        p.proposed_entries = lex.entries_for(best_lemma);
        p.status = ExpansionProposal::Status::pending;
        if (best_cos >= threshold)
            result.proposals.push_back(std::move(p));
        else
            result.near_misses.push_back(std::move(p));
    }

    const auto by_cosine = [](const ExpansionProposal& a, const ExpansionProposal& b) {
        if (a.cosine != b.cosine)
            return a.cosine > b.cosine;
        return a.candidate < b.candidate;
    };
    std::sort(result.proposals.begin(), result.proposals.end(), by_cosine);
    std::sort(result.near_misses.begin(), result.near_misses.end(), by_cosine);
    return result;
}

ApplyResult apply_proposals(const Lexicon& lex, const std::vector<ExpansionProposal>& proposals,
                            const std::set<std::string>& accepted) {
    for (const auto& id : accepted) {
        const bool known = std::any_of(proposals.begin(), proposals.end(),
                                       [&](const auto& p) { return p.candidate == id; });
        if (!known)
            throw ConfigError("accepted lemma '" + id + "' matches no proposal");
    }

    ApplyResult result;
    result.lexicon = lex;
    result.proposals = proposals;
    for (auto& p : result.proposals) {
        if (accepted.count(p.candidate)) {
            result.lexicon =
                edit_lexicon(result.lexicon, make_copy(p.source, p.candidate, p.cosine));
            p.status = ExpansionProposal::Status::accepted;
        } else {
            p.status = ExpansionProposal::Status::rejected;
        }
    }
    return result;
}

namespace {

std::string status_name(ExpansionProposal::Status s) {
    switch (s) {
    case ExpansionProposal::Status::pending: return "pending";
    case ExpansionProposal::Status::accepted: return "accepted";
    case ExpansionProposal::Status::rejected: return "rejected";
    }
    return "pending";
}

ExpansionProposal::Status status_from(const std::string& s) {
    if (s == "accepted")
        return ExpansionProposal::Status::accepted;
    if (s == "rejected")
        return ExpansionProposal::Status::rejected;
    return ExpansionProposal::Status::pending;
}

} // namespace

void write_proposals(std::ostream& out, const std::vector<ExpansionProposal>& proposals) {
    for (const auto& p : proposals) {
        json j;
        j["candidate"] = p.candidate;
        j["source"] = p.source;
        j["cosine"] = p.cosine;
        json entries = json::array();
        for (const auto& [emotion, intensity] : p.proposed_entries)
            entries.push_back({{"emotion", emotion}, {"intensity", intensity}});
        j["entries"] = entries;
        j["status"] = status_name(p.status);
        out << j.dump() << '\n';
    }
}

std::vector<ExpansionProposal> read_proposals(std::istream& in) {
    std::vector<ExpansionProposal> proposals;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty())
            continue;
        try {
            const json j = json::parse(line);
            ExpansionProposal p;
            p.candidate = j.at("candidate").get<std::string>();
            p.source = j.at("source").get<std::string>();
            p.cosine = j.at("cosine").get<double>();
            for (const auto& e : j.at("entries"))
                p.proposed_entries.emplace_back(e.at("emotion").get<std::string>(),
                                                e.at("intensity").get<double>());
            p.status = status_from(j.value("status", "pending"));
            proposals.push_back(std::move(p));
        } catch (const json::exception& e) {
            throw ParseError("proposal line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    return proposals;
}

std::set<std::string> read_acceptance_file(std::istream& in) {
    std::set<std::string> accepted;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        const auto first = line.find_first_not_of(" \t");
        if (first == std::string::npos)
            continue;
        const auto last = line.find_last_not_of(" \t");
        const std::string lemma = line.substr(first, last - first + 1);
        if (lemma.empty() || lemma[0] == '#')
            continue;
        accepted.insert(lemma);
    }
    return accepted;
}

} // namespace emarc
