#ifndef EMARC_PIPELINE_HPP
#define EMARC_PIPELINE_HPP

#include "emarc/embeddings.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace emarc {

// Everything a run depends on. Serialized (with the defaults actually used
// and the toolkit version) into every output file so no result is separable
// from its parameters.
struct RunConfig {
    std::filesystem::path corpus_dir;
    std::filesystem::path conllu_dir;           // empty = naive tokenizer fallback
    std::filesystem::path lexicon_path;
    std::filesystem::path chapter_patterns_path; // empty = built-in defaults
    std::vector<std::string> emotions;          // empty = default seven
    std::string chunk_mode = "count";           // "count" | "window"
    std::size_t chunk_value = 100;
    std::size_t smoothing_window = 5;
    EmbeddingConfig embedding;
    double expansion_threshold = 0.5;
    std::filesystem::path out_dir;
    std::uint64_t seed = 0;
    bool emit_svg = false;
    std::vector<std::string> svg_emotions;      // empty = all active emotions
    bool normalize_by_all_tokens = false;       // per-10k over all tokens, not words
    std::string dedupe = "error";               // "error" | "keep-max"
};

// JSON object with every field above plus toolkit_version; stable key order.
std::string config_to_json(const RunConfig& config);

// Throws ConfigError for invalid configuration (the CLI maps that to exit
// code 2). Returns 0 on success, 1 when some books were discarded or
// skipped, 3 when the corpus is empty.
int run_pipeline(const RunConfig& config, std::ostream& log);

// write-temp-then-rename
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

} // namespace emarc

#endif
