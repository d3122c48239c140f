#ifndef EMARC_SIGNIFICANCE_HPP
#define EMARC_SIGNIFICANCE_HPP

#include "emarc/arcs.hpp"
#include "emarc/lexicon.hpp"
#include "emarc/textproc.hpp"

#include <cstddef>
#include <cstdint>
#include <string>

namespace emarc {

struct SignificanceResult {
    std::string emotion;
    double observed_diff = 0.0; // normalized score A - B
    double p_value = 1.0;       // (1 + #{|perm diff| >= |observed|}) / (1 + n)
    std::size_t n_permutations = 0;
    std::uint64_t seed = 0;
};

// Token-level permutation test: pools the word tokens of both documents,
// reassigns them to two groups of the original sizes per permutation, and
// compares the per-10k score difference for the chosen emotion. Two-sided,
// with add-one smoothing so p never reaches zero. The permutation stream for
// index i depends only on (seed, i), so results are reproducible and the
// loop is safe to parallelize.
SignificanceResult permutation_test(const LemmaSequence& a, const LemmaSequence& b,
                                    const Lexicon& lex, const std::string& emotion,
                                    std::size_t n_permutations, std::uint64_t seed);

std::string to_json(const SignificanceResult& result);

} // namespace emarc

#endif
