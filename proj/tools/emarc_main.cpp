// emarc: emotion arc toolkit for lemmatized literary corpora.
// Subcommands mirror the pipeline stages so each can be re-run on its own:
// ingest, stats, lex (validate/edit/stats), embed (train/propose/apply),
// arc, compare, plot, and run for the whole chain.

#include "emarc/arcs.hpp"
#include "emarc/corpus.hpp"
#include "emarc/embeddings.hpp"
#include "emarc/errors.hpp"
#include "emarc/export.hpp"
#include "emarc/lexicon.hpp"
#include "emarc/pipeline.hpp"
#include "emarc/significance.hpp"
#include "emarc/textproc.hpp"
#include "emarc/version.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitPartial = 1;
constexpr int kExitConfig = 2;
constexpr int kExitEmptyCorpus = 3;

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw emarc::IoError("cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

emarc::EmotionSet emotion_set_from(const std::vector<std::string>& names) {
    return names.empty() ? emarc::EmotionSet::default_set() : emarc::EmotionSet(names);
}

emarc::DedupePolicy dedupe_from(const std::string& mode) {
    if (mode == "error")
        return emarc::DedupePolicy::error;
    if (mode == "keep-max")
        return emarc::DedupePolicy::keep_max;
    throw emarc::ConfigError("dedupe must be 'error' or 'keep-max'");
}

emarc::Lexicon load_lexicon_file(const fs::path& path, const std::vector<std::string>& emotions,
                                 const std::string& dedupe) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw emarc::ConfigError("cannot open lexicon: " + path.string());
    return emarc::load_lexicon(in, path.filename().string(), emotion_set_from(emotions),
                               dedupe_from(dedupe));
}

emarc::ChapterPatterns patterns_from(const fs::path& path) {
    if (path.empty())
        return emarc::ChapterPatterns::defaults();
    std::ifstream in(path);
    if (!in)
        throw emarc::ConfigError("cannot open chapter pattern file: " + path.string());
    return emarc::ChapterPatterns::load(in);
}

// Per-document lemma source: <id>.conllu when available, naive tokenizer
// otherwise.
emarc::LemmaSequence sequence_for(const emarc::Document& doc, const fs::path& conllu_dir) {
    const fs::path conllu = conllu_dir.empty() ? fs::path() : conllu_dir / (doc.id + ".conllu");
    if (!conllu.empty() && fs::is_regular_file(conllu)) {
        std::ifstream in(conllu, std::ios::binary);
        return emarc::read_conllu(in, doc.id);
    }
    return emarc::sequence_from_text(doc.id, doc.body);
}

emarc::LemmaSequence sequence_from_file(const fs::path& text_path, const fs::path& conllu_path) {
    if (!conllu_path.empty()) {
        std::ifstream in(conllu_path, std::ios::binary);
        if (!in)
            throw emarc::ConfigError("cannot open " + conllu_path.string());
        return emarc::read_conllu(in, text_path.stem().string());
    }
    const emarc::RawBook raw{text_path.string(), slurp(text_path)};
    const emarc::StripResult stripped = emarc::strip_gutenberg(raw);
    return emarc::sequence_from_text(text_path.stem().string(), stripped.body);
}

int cmd_ingest(const fs::path& in_dir, const fs::path& out_dir, const fs::path& patterns_path) {
    const auto patterns = patterns_from(patterns_path);
    const emarc::IngestResult result = emarc::load_corpus(in_dir, patterns);
    fs::create_directories(out_dir);
    for (const auto& doc : result.documents) {
        emarc::write_file_atomic(out_dir / (doc.id + ".txt"), doc.body);
        json meta;
        meta["id"] = doc.id;
        meta["title"] = doc.metadata.title ? json(*doc.metadata.title) : json(nullptr);
        meta["author"] = doc.metadata.author ? json(*doc.metadata.author) : json(nullptr);
        meta["year"] = doc.metadata.year ? json(*doc.metadata.year) : json(nullptr);
        meta["originally_finnish"] = doc.metadata.originally_finnish
                                         ? json(*doc.metadata.originally_finnish)
                                         : json(nullptr);
        meta["chapters"] = doc.chapters.size();
        json lengths = json::array();
        for (const auto& ch : doc.chapters)
            lengths.push_back(ch.size());
        meta["chapter_lengths"] = std::move(lengths);
        emarc::write_file_atomic(out_dir / (doc.id + ".meta.json"), meta.dump(2) + "\n");
    }
    emarc::write_file_atomic(out_dir / "ingest_report.json",
                             emarc::report_to_json(result.report));
    std::cout << "retained " << result.report.retained << ", discarded "
              << result.report.discarded.size() << "\n";
    return result.documents.empty() ? kExitEmptyCorpus
           : result.report.discarded.empty() ? kExitOk
                                             : kExitPartial;
}

int cmd_stats(const fs::path& in_dir, const fs::path& conllu_dir, std::size_t top,
              const fs::path& freq_tsv, const fs::path& patterns_path) {
    const auto patterns = patterns_from(patterns_path);
    const emarc::IngestResult result = emarc::load_corpus(in_dir, patterns);
    if (result.documents.empty())
        return kExitEmptyCorpus;
    std::vector<emarc::LemmaSequence> seqs;
    for (const auto& doc : result.documents)
        seqs.push_back(sequence_for(doc, conllu_dir));
    const emarc::CorpusStats stats = emarc::corpus_stats(seqs, top);

    json j;
    j["documents"] = result.documents.size();
    j["token_count"] = stats.token_count;
    j["word_count"] = stats.word_count;
    j["type_count"] = stats.type_count;
    j["type_token_ratio"] = stats.ttr;
    json topj = json::array();
    for (const auto& [lemma, count] : stats.top_frequent)
        topj.push_back({{"lemma", lemma}, {"count", count}});
    j["top_frequent"] = std::move(topj);
    std::cout << j.dump(2) << "\n";

    if (!freq_tsv.empty()) {
        std::ostringstream tsv;
        emarc::write_frequency_tsv(tsv, stats);
        emarc::write_file_atomic(freq_tsv, tsv.str());
    }
    return kExitOk;
}

int cmd_lex_validate(const fs::path& lexicon_path, const std::vector<std::string>& emotions,
                     const std::string& dedupe) {
    const emarc::Lexicon lex = load_lexicon_file(lexicon_path, emotions, dedupe);
    const emarc::LexiconStats stats = emarc::lexicon_stats(lex);
    json j;
    j["name"] = lex.name();
    j["entries"] = lex.size();
    j["lemmas"] = lex.lemmas().size();
    json counts;
    for (std::size_t i = 0; i < stats.emotions.size(); ++i)
        counts[stats.emotions[i]] = stats.counts[i];
    j["per_emotion"] = std::move(counts);
    std::cout << j.dump(2) << "\n";
    return kExitOk;
}

int cmd_lex_edit(const fs::path& lexicon_path, const fs::path& edits_path, const fs::path& out,
                 const std::vector<std::string>& emotions, const std::string& dedupe) {
    emarc::Lexicon lex = load_lexicon_file(lexicon_path, emotions, dedupe);
    std::ifstream edits_in(edits_path);
    if (!edits_in)
        throw emarc::ConfigError("cannot open edit log: " + edits_path.string());
    const auto commands = emarc::read_edit_log(edits_in);
    for (const auto& cmd : commands)
        lex = emarc::edit_lexicon(lex, cmd);
    std::ostringstream tsv;
    emarc::save_lexicon(tsv, lex);
    emarc::write_file_atomic(out, tsv.str());
    std::ostringstream logged;
    emarc::write_edit_log(logged, lex.edit_log());
    emarc::write_file_atomic(fs::path(out.string() + ".edits.jsonl"), logged.str());
    std::cout << "applied " << commands.size() << " edit(s), " << lex.size()
              << " entries written to " << out.string() << "\n";
    return kExitOk;
}

int cmd_lex_stats(const fs::path& lexicon_path, const std::vector<std::string>& emotions,
                  const std::string& dedupe) {
    const emarc::Lexicon lex = load_lexicon_file(lexicon_path, emotions, dedupe);
    const emarc::LexiconStats stats = emarc::lexicon_stats(lex);
    json j;
    j["emotions"] = stats.emotions;
    j["counts"] = stats.counts;
    j["co_annotation"] = stats.co_annotation;
    std::cout << j.dump(2) << "\n";
    return kExitOk;
}

json embedding_meta(const emarc::EmbeddingModel& model) {
    json j;
    j["toolkit_version"] = std::string(emarc::kVersion);
    j["dimension"] = model.config.dimension;
    j["window"] = model.config.window;
    j["negatives"] = model.config.negatives;
    j["epochs"] = model.config.epochs;
    j["min_count"] = model.config.min_count;
    j["subsample_threshold"] = model.config.subsample_threshold;
    j["learning_rate"] = model.config.learning_rate;
    j["seed"] = model.config.seed;
    j["vocab_size"] = model.vocab.size();
    j["corpus_fingerprint"] = model.corpus_fingerprint;
    return j;
}

int cmd_embed_train(const fs::path& in_dir, const fs::path& conllu_dir, const fs::path& out,
                    const emarc::EmbeddingConfig& cfg, const fs::path& patterns_path) {
    const auto patterns = patterns_from(patterns_path);
    const emarc::IngestResult result = emarc::load_corpus(in_dir, patterns);
    if (result.documents.empty())
        return kExitEmptyCorpus;
    std::vector<emarc::LemmaSequence> seqs;
    for (const auto& doc : result.documents)
        seqs.push_back(sequence_for(doc, conllu_dir));
    const emarc::EmbeddingModel model = emarc::train_sgns(seqs, cfg);
    std::ostringstream vec;
    emarc::save_model(vec, model);
    emarc::write_file_atomic(out, vec.str());
    emarc::write_file_atomic(fs::path(out.string() + ".meta.json"),
                             embedding_meta(model).dump(2) + "\n");
    std::cout << "trained " << model.vocab.size() << " vectors of dimension "
              << model.dimension << " -> " << out.string() << "\n";
    return kExitOk;
}

int cmd_embed_propose(const fs::path& model_path, const fs::path& lexicon_path,
                      const fs::path& in_dir, const fs::path& conllu_dir, std::size_t top,
                      double threshold, const fs::path& out,
                      const std::vector<std::string>& emotions, const std::string& dedupe,
                      const fs::path& patterns_path) {
    std::ifstream model_in(model_path);
    if (!model_in)
        throw emarc::ConfigError("cannot open model: " + model_path.string());
    const emarc::EmbeddingModel model = emarc::load_model(model_in);
    const emarc::Lexicon lex = load_lexicon_file(lexicon_path, emotions, dedupe);

    const auto patterns = patterns_from(patterns_path);
    const emarc::IngestResult result = emarc::load_corpus(in_dir, patterns);
    if (result.documents.empty())
        return kExitEmptyCorpus;
    std::vector<emarc::LemmaSequence> seqs;
    for (const auto& doc : result.documents)
        seqs.push_back(sequence_for(doc, conllu_dir));
    const emarc::CorpusStats stats = emarc::corpus_stats(seqs, top);
    std::vector<std::string> candidates;
    for (const auto& [lemma, count] : stats.top_frequent)
        candidates.push_back(lemma);

    const emarc::ExpansionResult expansion =
        emarc::propose_expansions(model, lex, candidates, threshold);
    std::ostringstream proposals;
    emarc::write_proposals(proposals, expansion.proposals);
    emarc::write_file_atomic(out, proposals.str());
    std::ostringstream near;
    emarc::write_proposals(near, expansion.near_misses);
    emarc::write_file_atomic(fs::path(out.string() + ".near_misses.jsonl"), near.str());
    std::cout << expansion.proposals.size() << " proposal(s), "
              << expansion.near_misses.size() << " near miss(es), " << expansion.skipped.size()
              << " skipped -> " << out.string() << "\n";
    return kExitOk;
}

int cmd_embed_apply(const fs::path& lexicon_path, const fs::path& proposals_path,
                    const fs::path& accept_path, const fs::path& out,
                    const std::vector<std::string>& emotions, const std::string& dedupe) {
    const emarc::Lexicon lex = load_lexicon_file(lexicon_path, emotions, dedupe);
    std::ifstream props_in(proposals_path);
    if (!props_in)
        throw emarc::ConfigError("cannot open proposals: " + proposals_path.string());
    const auto proposals = emarc::read_proposals(props_in);
    std::ifstream accept_in(accept_path);
    if (!accept_in)
        throw emarc::ConfigError("cannot open acceptance file: " + accept_path.string());
    const auto accepted = emarc::read_acceptance_file(accept_in);

    const emarc::ApplyResult applied = emarc::apply_proposals(lex, proposals, accepted);
    std::ostringstream tsv;
    emarc::save_lexicon(tsv, applied.lexicon);
    emarc::write_file_atomic(out, tsv.str());
    std::ostringstream logged;
    emarc::write_edit_log(logged, applied.lexicon.edit_log());
    emarc::write_file_atomic(fs::path(out.string() + ".edits.jsonl"), logged.str());
    // resolved statuses, accepted and rejected alike, for the curation trail
    std::ostringstream resolved;
    emarc::write_proposals(resolved, applied.proposals);
    emarc::write_file_atomic(fs::path(out.string() + ".proposals.jsonl"), resolved.str());
    std::cout << "accepted " << accepted.size() << " of " << proposals.size()
              << " proposal(s) -> " << out.string() << "\n";
    return kExitOk;
}

int cmd_arc(const fs::path& text_path, const fs::path& conllu_path,
            const fs::path& lexicon_path, const std::vector<std::string>& emotions,
            const std::string& dedupe, const std::string& chunk_mode, std::size_t chunk_value,
            std::size_t smooth, const fs::path& out_csv, const fs::path& out_json,
            const fs::path& out_svg, const std::vector<std::string>& svg_emotions) {
    const emarc::Lexicon lex = load_lexicon_file(lexicon_path, emotions, dedupe);
    const emarc::LemmaSequence seq = sequence_from_file(text_path, conllu_path);
    const emarc::ChunkingSpec chunking = chunk_mode == "window"
                                             ? emarc::ChunkingSpec::by_window(chunk_value)
                                             : emarc::ChunkingSpec::by_count(chunk_value);
    emarc::Arc arc = emarc::build_arc(seq, lex, chunking);
    arc = emarc::smooth_arc(std::move(arc), smooth);

    json cfg;
    cfg["toolkit_version"] = std::string(emarc::kVersion);
    cfg["text"] = text_path.string();
    cfg["conllu"] = conllu_path.string();
    cfg["lexicon"] = lexicon_path.string();
    cfg["emotions"] = lex.emotions().names();
    cfg["chunk_mode"] = chunk_mode;
    cfg["chunk_value"] = chunk_value;
    cfg["smoothing_window"] = smooth;
    const std::string cfg_json = cfg.dump();

    if (!out_csv.empty()) {
        std::ostringstream csv;
        emarc::write_arc_csv(csv, arc);
        emarc::write_file_atomic(out_csv, csv.str());
    }
    if (!out_json.empty()) {
        std::ostringstream js;
        emarc::write_arc_json(js, arc, cfg_json);
        emarc::write_file_atomic(out_json, js.str());
    }
    if (!out_svg.empty()) {
        std::ostringstream svg;
        const auto subset = svg_emotions.empty() ? arc.emotions : svg_emotions;
        emarc::write_arc_svg(svg, arc, subset, arc.doc_id, cfg_json);
        emarc::write_file_atomic(out_svg, svg.str());
    }
    const emarc::DocumentScore score = emarc::score_document(seq, lex);
    json j;
    j["doc_id"] = seq.doc_id;
    j["word_count"] = score.word_count;
    j["emotions"] = arc.emotions;
    j["normalized_per_10k"] = score.normalized.values;
    std::cout << j.dump(2) << "\n";
    return kExitOk;
}

int cmd_compare(const fs::path& a_path, const fs::path& b_path, const fs::path& conllu_a,
                const fs::path& conllu_b, const fs::path& lexicon_path,
                const std::vector<std::string>& emotions, const std::string& dedupe,
                const std::string& emotion, std::size_t permutations, std::uint64_t seed,
                const fs::path& out) {
    const emarc::Lexicon lex = load_lexicon_file(lexicon_path, emotions, dedupe);
    const emarc::LemmaSequence a = sequence_from_file(a_path, conllu_a);
    const emarc::LemmaSequence b = sequence_from_file(b_path, conllu_b);
    const emarc::SignificanceResult result =
        emarc::permutation_test(a, b, lex, emotion, permutations, seed);
    const std::string js = emarc::to_json(result);
    std::cout << js;
    if (!out.empty())
        emarc::write_file_atomic(out, js);
    return kExitOk;
}

int cmd_plot(const fs::path& arc_json, const fs::path& out,
             const std::vector<std::string>& svg_emotions, const std::string& title) {
    std::ifstream in(arc_json);
    if (!in)
        throw emarc::ConfigError("cannot open arc JSON: " + arc_json.string());
    const emarc::Arc arc = emarc::read_arc_json(in);
    const auto subset = svg_emotions.empty() ? arc.emotions : svg_emotions;
    std::ostringstream svg;
    emarc::write_arc_svg(svg, arc, subset, title.empty() ? arc.doc_id : title);
    emarc::write_file_atomic(out, svg.str());
    std::cout << "wrote " << out.string() << "\n";
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"emarc - emotion arcs and lexicon curation for literary corpora"};
    app.set_version_flag("--version", std::string(emarc::kVersion));
    app.set_config("--config", "", "read options from a key=value config file");
    app.require_subcommand(1);

    // shared options; individual subcommands bind the ones they use
    emarc::RunConfig run;
    std::vector<std::string> emotions;
    std::string dedupe = "error";
    std::uint64_t seed = 0;

    fs::path in_dir, out_dir, out_file, conllu_dir, patterns_path;

    auto* ingest = app.add_subcommand("ingest", "clean and chapterize raw Gutenberg files");
    ingest->add_option("--in", in_dir, "directory of .txt files")->required();
    ingest->add_option("--out", out_dir, "output directory")->required();
    ingest->add_option("--chapter-patterns", patterns_path, "chapter heading pattern file");

    auto* stats = app.add_subcommand("stats", "corpus statistics and frequency list");
    std::size_t stats_top = 2000;
    fs::path freq_tsv;
    stats->add_option("--in", in_dir, "directory of .txt files")->required();
    stats->add_option("--conllu", conllu_dir, "directory of <id>.conllu files");
    stats->add_option("--top", stats_top, "number of top lemmas to report");
    stats->add_option("--freq-tsv", freq_tsv, "write lemma<TAB>count list here");
    stats->add_option("--chapter-patterns", patterns_path, "chapter heading pattern file");

    auto* lex = app.add_subcommand("lex", "lexicon loading, editing and statistics");
    lex->require_subcommand(1);
    fs::path lexicon_path, edits_path;
    auto* lex_validate = lex->add_subcommand("validate", "parse and summarize a lexicon");
    lex_validate->add_option("--lexicon", lexicon_path, "lexicon TSV")->required();
    lex_validate->add_option("--emotions", emotions, "override the emotion set");
    lex_validate->add_option("--dedupe", dedupe, "error|keep-max");
    auto* lex_edit = lex->add_subcommand("edit", "apply a JSONL edit log");
    lex_edit->add_option("--lexicon", lexicon_path, "lexicon TSV")->required();
    lex_edit->add_option("--edits", edits_path, "JSONL edit commands")->required();
    lex_edit->add_option("--out", out_file, "edited lexicon TSV")->required();
    lex_edit->add_option("--emotions", emotions, "override the emotion set");
    lex_edit->add_option("--dedupe", dedupe, "error|keep-max");
    auto* lex_stats = lex->add_subcommand("stats", "per-emotion counts and co-annotation");
    lex_stats->add_option("--lexicon", lexicon_path, "lexicon TSV")->required();
    lex_stats->add_option("--emotions", emotions, "override the emotion set");
    lex_stats->add_option("--dedupe", dedupe, "error|keep-max");

    auto* embed = app.add_subcommand("embed", "train vectors and expand the lexicon");
    embed->require_subcommand(1);
    emarc::EmbeddingConfig embed_cfg;
    fs::path model_path, proposals_path, accept_path;
    double threshold = 0.5;
    std::size_t propose_top = 2000;
    auto* embed_train = embed->add_subcommand("train", "train skip-gram vectors");
    embed_train->add_option("--in", in_dir, "directory of .txt files")->required();
    embed_train->add_option("--conllu", conllu_dir, "directory of <id>.conllu files");
    embed_train->add_option("--out", out_file, "model file (.vec)")->required();
    embed_train->add_option("--dimension", embed_cfg.dimension, "vector dimension");
    embed_train->add_option("--window", embed_cfg.window, "context window");
    embed_train->add_option("--negatives", embed_cfg.negatives, "negative samples");
    embed_train->add_option("--epochs", embed_cfg.epochs, "training epochs");
    embed_train->add_option("--min-count", embed_cfg.min_count, "vocabulary threshold");
    embed_train->add_option("--subsample", embed_cfg.subsample_threshold,
                            "frequent-word subsampling threshold");
    embed_train->add_option("--learning-rate", embed_cfg.learning_rate, "initial learning rate");
    embed_train->add_option("--seed", embed_cfg.seed, "random seed");
    embed_train->add_option("--chapter-patterns", patterns_path, "chapter heading pattern file");
    auto* embed_propose = embed->add_subcommand("propose", "nearest-neighbor expansion proposals");
    embed_propose->add_option("--model", model_path, "trained .vec model")->required();
    embed_propose->add_option("--lexicon", lexicon_path, "lexicon TSV")->required();
    embed_propose->add_option("--in", in_dir, "directory of .txt files")->required();
    embed_propose->add_option("--conllu", conllu_dir, "directory of <id>.conllu files");
    embed_propose->add_option("--top", propose_top, "candidate pool size");
    embed_propose->add_option("--threshold", threshold, "minimum cosine for a proposal");
    embed_propose->add_option("--out", out_file, "proposals JSONL")->required();
    embed_propose->add_option("--emotions", emotions, "override the emotion set");
    embed_propose->add_option("--dedupe", dedupe, "error|keep-max");
    embed_propose->add_option("--chapter-patterns", patterns_path,
                              "chapter heading pattern file");
    auto* embed_apply = embed->add_subcommand("apply", "apply accepted proposals");
    embed_apply->add_option("--lexicon", lexicon_path, "lexicon TSV")->required();
    embed_apply->add_option("--proposals", proposals_path, "proposals JSONL")->required();
    embed_apply->add_option("--accept", accept_path, "plain-text accepted lemmas")->required();
    embed_apply->add_option("--out", out_file, "expanded lexicon TSV")->required();
    embed_apply->add_option("--emotions", emotions, "override the emotion set");
    embed_apply->add_option("--dedupe", dedupe, "error|keep-max");

    auto* arc = app.add_subcommand("arc", "score one document and emit its arc");
    fs::path text_path, conllu_path, out_csv, out_json, out_svg;
    std::string chunk_mode = "count";
    std::size_t chunk_value = 100;
    std::size_t smooth = 5;
    std::vector<std::string> svg_emotions;
    arc->add_option("--text", text_path, "book text file")->required();
    arc->add_option("--conllu", conllu_path, "CoNLL-U file for the book");
    arc->add_option("--lexicon", lexicon_path, "lexicon TSV")->required();
    arc->add_option("--emotions", emotions, "override the emotion set");
    arc->add_option("--dedupe", dedupe, "error|keep-max");
    arc->add_option("--chunk-mode", chunk_mode, "count|window");
    arc->add_option("--chunks", chunk_value, "chunk count or window size");
    arc->add_option("--smooth", smooth, "smoothing window (odd)");
    arc->add_option("--out-csv", out_csv, "arc CSV path");
    arc->add_option("--out-json", out_json, "arc JSON path");
    arc->add_option("--out-svg", out_svg, "arc SVG path");
    arc->add_option("--svg-emotions", svg_emotions, "emotions to plot");

    auto* compare = app.add_subcommand("compare", "permutation test between two books");
    fs::path b_path, conllu_b;
    std::string emotion;
    std::size_t permutations = 999;
    compare->add_option("--a", text_path, "first book text")->required();
    compare->add_option("--b", b_path, "second book text")->required();
    compare->add_option("--conllu-a", conllu_path, "CoNLL-U for the first book");
    compare->add_option("--conllu-b", conllu_b, "CoNLL-U for the second book");
    compare->add_option("--lexicon", lexicon_path, "lexicon TSV")->required();
    compare->add_option("--emotions", emotions, "override the emotion set");
    compare->add_option("--dedupe", dedupe, "error|keep-max");
    compare->add_option("--emotion", emotion, "emotion to test")->required();
    compare->add_option("--permutations", permutations, "number of permutations");
    compare->add_option("--seed", seed, "random seed");
    compare->add_option("--out", out_file, "also write the JSON result here");

    auto* plot = app.add_subcommand("plot", "SVG chart from a saved arc JSON");
    std::string plot_title;
    plot->add_option("--arc-json", text_path, "arc JSON produced by arc/run")->required();
    plot->add_option("--out", out_file, "SVG path")->required();
    plot->add_option("--emotions", svg_emotions, "emotions to plot");
    plot->add_option("--title", plot_title, "chart title");

    auto* run_cmd = app.add_subcommand("run", "full pipeline: ingest, score, arcs, summary");
    run_cmd->add_option("--in", run.corpus_dir, "directory of .txt files")->required();
    run_cmd->add_option("--conllu", run.conllu_dir, "directory of <id>.conllu files");
    run_cmd->add_option("--lexicon", run.lexicon_path, "lexicon TSV")->required();
    run_cmd->add_option("--chapter-patterns", run.chapter_patterns_path,
                        "chapter heading pattern file");
    run_cmd->add_option("--emotions", run.emotions, "override the emotion set");
    run_cmd->add_option("--chunk-mode", run.chunk_mode, "count|window");
    run_cmd->add_option("--chunks", run.chunk_value, "chunk count or window size");
    run_cmd->add_option("--smooth", run.smoothing_window, "smoothing window (odd)");
    run_cmd->add_option("--threshold", run.expansion_threshold, "expansion cosine threshold");
    run_cmd->add_option("--out", run.out_dir, "output directory")->required();
    run_cmd->add_option("--seed", run.seed, "random seed");
    run_cmd->add_flag("--svg", run.emit_svg, "emit per-book SVG charts");
    run_cmd->add_option("--svg-emotions", run.svg_emotions, "emotions to plot");
    run_cmd->add_flag("--normalize-all-tokens", run.normalize_by_all_tokens,
                      "normalize per-10k over all tokens instead of word tokens");
    run_cmd->add_option("--dedupe", run.dedupe, "error|keep-max");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    try {
        if (app.got_subcommand(ingest))
            return cmd_ingest(in_dir, out_dir, patterns_path);
        if (app.got_subcommand(stats))
            return cmd_stats(in_dir, conllu_dir, stats_top, freq_tsv, patterns_path);
        if (app.got_subcommand(lex)) {
            if (lex->got_subcommand(lex_validate))
                return cmd_lex_validate(lexicon_path, emotions, dedupe);
            if (lex->got_subcommand(lex_edit))
                return cmd_lex_edit(lexicon_path, edits_path, out_file, emotions, dedupe);
            return cmd_lex_stats(lexicon_path, emotions, dedupe);
        }
        if (app.got_subcommand(embed)) {
            if (embed->got_subcommand(embed_train))
                return cmd_embed_train(in_dir, conllu_dir, out_file, embed_cfg, patterns_path);
            if (embed->got_subcommand(embed_propose))
                return cmd_embed_propose(model_path, lexicon_path, in_dir, conllu_dir,
                                         propose_top, threshold, out_file, emotions, dedupe,
                                         patterns_path);
            return cmd_embed_apply(lexicon_path, proposals_path, accept_path, out_file,
                                   emotions, dedupe);
        }
        if (app.got_subcommand(arc))
            return cmd_arc(text_path, conllu_path, lexicon_path, emotions, dedupe, chunk_mode,
                           chunk_value, smooth, out_csv, out_json, out_svg, svg_emotions);
        if (app.got_subcommand(compare))
            return cmd_compare(text_path, b_path, conllu_path, conllu_b, lexicon_path,
                               emotions, dedupe, emotion, permutations, seed, out_file);
        if (app.got_subcommand(plot))
            return cmd_plot(text_path, out_file, svg_emotions, plot_title);
        if (app.got_subcommand(run_cmd))
            return emarc::run_pipeline(run, std::cout);
    } catch (const emarc::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const emarc::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    }
    return kExitConfig;
}
