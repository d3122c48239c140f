#include "emarc/pipeline.hpp"

#include "emarc/arcs.hpp"
#include "emarc/corpus.hpp"
#include "emarc/errors.hpp"
#include "emarc/export.hpp"
#include "emarc/version.hpp"

#include <nlohmann/json.hpp>

#include <fstream>
#include <ostream>
#include <sstream>

namespace emarc {

namespace fs = std::filesystem;
using nlohmann::json;

void write_file_atomic(const fs::path& path, std::string_view content) {
    const fs::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw IoError("cannot write " + tmp.string());
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out)
            throw IoError("short write to " + tmp.string());
    }
    std::error_code ec;
    fs::rename(tmp, path, ec);
    if (ec)
        throw IoError("cannot rename " + tmp.string() + " -> " + path.string() + ": " +
                      ec.message());
}

std::string config_to_json(const RunConfig& config) {
    json j;
    j["toolkit_version"] = std::string(kVersion);
    j["corpus_dir"] = config.corpus_dir.string();
    j["conllu_dir"] = config.conllu_dir.string();
    j["lexicon_path"] = config.lexicon_path.string();
    j["chapter_patterns_path"] = config.chapter_patterns_path.string();
    j["emotions"] = config.emotions;
    j["chunk_mode"] = config.chunk_mode;
    j["chunk_value"] = config.chunk_value;
    j["smoothing_window"] = config.smoothing_window;
    j["embedding"] = {{"dimension", config.embedding.dimension},
                      {"window", config.embedding.window},
                      {"negatives", config.embedding.negatives},
                      {"epochs", config.embedding.epochs},
                      {"min_count", config.embedding.min_count},
                      {"subsample_threshold", config.embedding.subsample_threshold},
                      {"learning_rate", config.embedding.learning_rate},
                      {"seed", config.embedding.seed}};
    j["expansion_threshold"] = config.expansion_threshold;
    j["out_dir"] = config.out_dir.string();
    j["seed"] = config.seed;
    j["emit_svg"] = config.emit_svg;
    j["svg_emotions"] = config.svg_emotions;
    j["normalize_by_all_tokens"] = config.normalize_by_all_tokens;
    j["dedupe"] = config.dedupe;
    return j.dump();
}

namespace {

std::string quote_csv(std::string_view field) {
    if (field.find_first_of(",\"\n") == std::string_view::npos)
        return std::string(field);
    std::string out = "\"";
    for (const char c : field) {
        if (c == '"')
            out += "\"\"";
        else
            out.push_back(c);
    }
    out += "\"";
    return out;
}

ChunkingSpec chunking_from(const RunConfig& config) {
    if (config.chunk_mode == "count")
        return ChunkingSpec::by_count(config.chunk_value);
    if (config.chunk_mode == "window")
        return ChunkingSpec::by_window(config.chunk_value);
    throw ConfigError("chunk mode must be 'count' or 'window', got '" + config.chunk_mode +
                      "'");
}

struct BookResult {
    std::string id;
    Metadata metadata;
    DocumentScore score;
    std::size_t token_count = 0;
};

json metadata_to_json(const Metadata& m) {
    json j;
    j["title"] = m.title ? json(*m.title) : json(nullptr);
    j["author"] = m.author ? json(*m.author) : json(nullptr);
    j["year"] = m.year ? json(*m.year) : json(nullptr);
    j["originally_finnish"] = m.originally_finnish ? json(*m.originally_finnish) : json(nullptr);
    return j;
}

} // namespace

int run_pipeline(const RunConfig& config, std::ostream& log) {
    // validate up front; every referenced path must exist
    if (config.corpus_dir.empty() || !fs::is_directory(config.corpus_dir))
        throw ConfigError("corpus directory not found: " + config.corpus_dir.string());
    if (config.lexicon_path.empty() || !fs::is_regular_file(config.lexicon_path))
        throw ConfigError("lexicon file not found: " + config.lexicon_path.string());
    if (!config.conllu_dir.empty() && !fs::is_directory(config.conllu_dir))
        throw ConfigError("CoNLL-U directory not found: " + config.conllu_dir.string());
    if (!config.chapter_patterns_path.empty() &&
        !fs::is_regular_file(config.chapter_patterns_path))
        throw ConfigError("chapter pattern file not found: " +
                          config.chapter_patterns_path.string());
    if (config.out_dir.empty())
        throw ConfigError("output directory not set");
    if (config.smoothing_window % 2 == 0)
        throw ConfigError("smoothing window must be odd");
    if (config.chunk_value < 1)
        throw ConfigError("chunk count/window must be >= 1");
    const ChunkingSpec chunking = chunking_from(config);

    EmotionSet emotions = config.emotions.empty() ? EmotionSet::default_set()
                                                  : EmotionSet(config.emotions);
    const DedupePolicy dedupe = [&] {
        if (config.dedupe == "error")
            return DedupePolicy::error;
        if (config.dedupe == "keep-max")
            return DedupePolicy::keep_max;
        throw ConfigError("dedupe must be 'error' or 'keep-max', got '" + config.dedupe + "'");
    }();

    ChapterPatterns patterns = ChapterPatterns::defaults();
    if (!config.chapter_patterns_path.empty()) {
        std::ifstream in(config.chapter_patterns_path);
        patterns = ChapterPatterns::load(in);
    }

    Lexicon lexicon;
    {
        std::ifstream in(config.lexicon_path, std::ios::binary);
        if (!in)
            throw ConfigError("cannot open lexicon: " + config.lexicon_path.string());
        lexicon = load_lexicon(in, config.lexicon_path.filename().string(), emotions, dedupe);
    }

    const std::string run_config_json = config_to_json(config);
    const std::vector<std::string> csv_comments = {"run_config: " + run_config_json};

    fs::create_directories(config.out_dir / "arcs");

    const IngestResult ingest = load_corpus(config.corpus_dir, patterns);
    log << "ingested " << ingest.documents.size() << " book(s), discarded "
        << ingest.report.discarded.size() << "\n";
    {
        json report = json::parse(report_to_json(ingest.report));
        report["run_config"] = json::parse(run_config_json);
        write_file_atomic(config.out_dir / "ingest_report.json", report.dump(2) + "\n");
    }
    if (ingest.documents.empty()) {
        log << "empty corpus\n";
        return 3;
    }

    std::vector<BookResult> totals;
    std::vector<LemmaSequence> sequences;
    std::vector<std::pair<std::string, std::string>> skipped;

    const std::vector<std::string> svg_subset =
        config.svg_emotions.empty() ? emotions.names() : config.svg_emotions;

    for (const auto& doc : ingest.documents) {
        try {
            LemmaSequence seq;
            const fs::path conllu =
                config.conllu_dir.empty() ? fs::path()
                                          : config.conllu_dir / (doc.id + ".conllu");
            if (!conllu.empty() && fs::is_regular_file(conllu)) {
                std::ifstream in(conllu, std::ios::binary);
                seq = read_conllu(in, doc.id);
            } else {
                seq = sequence_from_text(doc.id, doc.body);
            }

            BookResult book;
            book.id = doc.id;
            book.metadata = doc.metadata;
            book.token_count = seq.tokens.size();
            book.score = score_document(seq, lexicon);
            if (config.normalize_by_all_tokens) {
                for (std::size_t e = 0; e < book.score.normalized.values.size(); ++e)
                    book.score.normalized.values[e] = 10000.0 * book.score.raw.values[e] /
                                                      static_cast<double>(book.token_count);
            }

            Arc arc = build_arc(seq, lexicon, chunking);
            arc = smooth_arc(std::move(arc), config.smoothing_window);

            {
                std::ostringstream csv;
                write_arc_csv(csv, arc, csv_comments);
                write_file_atomic(config.out_dir / "arcs" / (doc.id + ".csv"), csv.str());
            }
            {
                std::ostringstream js;
                write_arc_json(js, arc, run_config_json);
                write_file_atomic(config.out_dir / "arcs" / (doc.id + ".json"), js.str());
            }
            if (config.emit_svg) {
                std::ostringstream svg;
                const std::string title =
                    doc.metadata.title ? *doc.metadata.title : doc.id;
                write_arc_svg(svg, arc, svg_subset, title, run_config_json);
                write_file_atomic(config.out_dir / "arcs" / (doc.id + ".svg"), svg.str());
            }

            totals.push_back(std::move(book));
            sequences.push_back(std::move(seq));
        } catch (const Error& e) {
            skipped.emplace_back(doc.id, e.what());
            log << "skipped " << doc.id << ": " << e.what() << "\n";
        }
    }

    // totals table, Table-3 layout: one row per book, emotion columns in
    // active set order, 2-decimal per-10k scores
    {
        std::ostringstream csv;
        csv << "# run_config: " << run_config_json << "\n";
        csv << "id,title,word_count,token_count";
        for (const auto& e : emotions.names())
            csv << ',' << e;
        csv << '\n';
        for (const auto& book : totals) {
            csv << quote_csv(book.id) << ','
                << quote_csv(book.metadata.title ? *book.metadata.title : "") << ','
                << book.score.word_count << ',' << book.token_count;
            for (const double v : book.score.normalized.values)
                csv << ',' << format_fixed2(v);
            csv << '\n';
        }
        write_file_atomic(config.out_dir / "totals.csv", csv.str());
    }
    {
        json rows = json::array();
        for (const auto& book : totals) {
            json row;
            row["id"] = book.id;
            row["metadata"] = metadata_to_json(book.metadata);
            row["word_count"] = book.score.word_count;
            row["token_count"] = book.token_count;
            row["raw"] = book.score.raw.values;
            row["normalized_per_10k"] = book.score.normalized.values;
            rows.push_back(std::move(row));
        }
        json j;
        j["emotions"] = emotions.names();
        j["books"] = std::move(rows);
        j["run_config"] = json::parse(run_config_json);
        write_file_atomic(config.out_dir / "totals.json", j.dump(2) + "\n");
    }

    // corpus summary
    {
        const CorpusStats stats = corpus_stats(sequences, 50);
        json j;
        j["documents"] = totals.size();
        j["token_count"] = stats.token_count;
        j["word_count"] = stats.word_count;
        j["type_count"] = stats.type_count;
        j["type_token_ratio"] = stats.ttr;
        json top = json::array();
        for (const auto& [lemma, count] : stats.top_frequent)
            top.push_back({{"lemma", lemma}, {"count", count}});
        j["top_frequent"] = std::move(top);
        json skips = json::array();
        for (const auto& [id, reason] : skipped)
            skips.push_back({{"id", id}, {"reason", reason}});
        j["skipped"] = std::move(skips);
        j["run_config"] = json::parse(run_config_json);
        write_file_atomic(config.out_dir / "summary.json", j.dump(2) + "\n");
    }

    log << "wrote outputs for " << totals.size() << " book(s) to " << config.out_dir.string()
        << "\n";
    if (!skipped.empty() || !ingest.report.discarded.empty())
        return 1;
    return 0;
}

} // namespace emarc
