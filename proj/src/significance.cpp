#include "emarc/significance.hpp"

#include "emarc/errors.hpp"
#include "emarc/rng.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <utility>
#include <vector>

namespace emarc {

namespace {

// per-word-token intensities for one emotion
std::vector<double> token_intensities(const LemmaSequence& seq, const Lexicon& lex,
                                      const std::string& emotion) {
    std::vector<double> out;
    for (const auto& t : seq.tokens) {
        if (!t.is_word)
            continue;
        out.push_back(lex.intensity(t.lemma, emotion).value_or(0.0));
    }
    return out;
}

double normalized_diff(const std::vector<double>& pool, std::size_t n_a, double total) {
    double sum_a = 0.0;
    for (std::size_t i = 0; i < n_a; ++i)
        sum_a += pool[i];
    const double sum_b = total - sum_a;
    const auto n_b = static_cast<double>(pool.size() - n_a);
    return 10000.0 * (sum_a / static_cast<double>(n_a) - sum_b / n_b);
}

} // namespace

SignificanceResult permutation_test(const LemmaSequence& a, const LemmaSequence& b,
                                    const Lexicon& lex, const std::string& emotion,
                                    std::size_t n_permutations, std::uint64_t seed) {
    if (!lex.emotions().contains(emotion))
        throw ConfigError("emotion '" + emotion + "' is not in the active set");
    if (n_permutations < 1)
        throw ConfigError("n_permutations must be >= 1");

    const std::vector<double> ints_a = token_intensities(a, lex, emotion);
    const std::vector<double> ints_b = token_intensities(b, lex, emotion);
    if (ints_a.empty() || ints_b.empty())
        throw EmptyDocumentError("permutation test needs word tokens in both documents");

    const std::size_t n_a = ints_a.size();
    std::vector<double> pool = ints_a;
    pool.insert(pool.end(), ints_b.begin(), ints_b.end());
    double total = 0.0;
    for (const double v : pool)
        total += v;

    // observed from direct per-group folds, so identical inputs give exactly 0
    double sum_a = 0.0, sum_b = 0.0;
    for (const double v : ints_a)
        sum_a += v;
    for (const double v : ints_b)
        sum_b += v;
    const double observed = 10000.0 * (sum_a / static_cast<double>(ints_a.size()) -
                                       sum_b / static_cast<double>(ints_b.size()));
    const double observed_abs = std::fabs(observed);
    // Intensities are discrete, so many permutations tie with the observed
    // difference exactly; a relative epsilon keeps summation-order noise from
    // flipping those ties, which would bias p badly.
    const double tie_eps = 1e-9 * (observed_abs + 1.0);

    std::size_t at_least = 0;
    std::vector<double> shuffled;
    for (std::size_t perm = 0; perm < n_permutations; ++perm) {
        Rng rng = substream(seed, perm);
        shuffled = pool;
        // partial Fisher-Yates: only the first n_a slots need placing
        for (std::size_t i = 0; i < n_a; ++i) {
            const std::size_t j =
                i + static_cast<std::size_t>(rng.next_below(shuffled.size() - i));
            std::swap(shuffled[i], shuffled[j]);
        }
        if (std::fabs(normalized_diff(shuffled, n_a, total)) >= observed_abs - tie_eps)
            ++at_least;
    }

    SignificanceResult result;
    result.emotion = emotion;
    result.observed_diff = observed;
    result.p_value = static_cast<double>(1 + at_least) / static_cast<double>(1 + n_permutations);
    result.n_permutations = n_permutations;
    result.seed = seed;
    return result;
}

std::string to_json(const SignificanceResult& result) {
    nlohmann::json j;
    j["emotion"] = result.emotion;
    j["observed_diff"] = result.observed_diff;
    j["p_value"] = result.p_value;
    j["n_permutations"] = result.n_permutations;
    j["seed"] = result.seed;
    return j.dump(2) + "\n";
}

} // namespace emarc
