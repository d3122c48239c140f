#ifndef EMARC_CORPUS_HPP
#define EMARC_CORPUS_HPP

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace emarc {

struct RawBook {
    std::string source_path;
    std::string bytes;
};

struct Metadata {
    std::optional<std::string> title;
    std::optional<std::string> author;
    std::optional<int> year; // 4-digit when known
    std::optional<bool> originally_finnish;
};

struct Document {
    std::string id; // source filename stem
    Metadata metadata;
    std::vector<std::string> chapters; // non-empty; concatenation == body
    std::string body;
};

struct StripResult {
    std::string body;   // text strictly between the marker lines
    std::string header; // text before the start marker (or first 200 lines)
    bool start_found = false;
    bool end_found = false;

    bool markers_found() const { return start_found || end_found; }
};

// Removes everything at or before the start marker line and at or after the
// end marker line. Recognizes the historical marker wordings
// ("*** START OF THE/THIS PROJECT GUTENBERG EBOOK ...", with or without the
// space after the asterisks), case-insensitively, line by line. Line endings
// are normalized to LF. Without markers the decoded text is returned intact
// and the flags stay false. Non-UTF-8 input raises DecodeError; an end
// marker before the start marker raises MarkerOrderError.
StripResult strip_gutenberg(const RawBook& raw);

// Pulls Title: / Author: / Language: / Translator: lines and
// publication-year patterns out of the header region. Unmatched fields stay
// unknown, never invented.
Metadata extract_metadata(std::string_view header);

// Line-match regexes (ECMAScript, applied case-insensitively to whole
// lines). A matching line starts a new chapter.
class ChapterPatterns {
public:
    static ChapterPatterns defaults();
    // one regex per line, `#` comments and blank lines ignored
    static ChapterPatterns load(std::istream& in);
    explicit ChapterPatterns(std::vector<std::string> patterns);

    const std::vector<std::string>& patterns() const { return patterns_; }
    bool matches(std::string_view line) const;

private:
    std::vector<std::string> patterns_;
    struct Compiled;
    std::shared_ptr<const Compiled> compiled_;
};

// Splits body at heading lines. Every byte of body lands in exactly one
// chapter, so concatenating the chapters reproduces body. A whitespace-only
// preamble is merged into the first chapter; with no matching heading the
// whole body is a single chapter.
std::vector<std::string> chapterize(std::string_view body,
                                    const ChapterPatterns& patterns = ChapterPatterns::defaults());

struct IngestReport {
    struct Discard {
        std::string file;
        std::string reason;
    };
    std::size_t retained = 0;
    std::vector<Discard> discarded;
    std::vector<std::string> warnings;
};

struct IngestResult {
    std::vector<Document> documents;
    IngestReport report;
};

// strip -> metadata -> chapterize for every .txt file in the directory,
// lexicographic by filename. Books that fail to decode are discarded and
// listed in the report, not fatal.
IngestResult load_corpus(const std::filesystem::path& dir,
                         const ChapterPatterns& patterns = ChapterPatterns::defaults());

std::string report_to_json(const IngestReport& report);

} // namespace emarc

#endif
