#include "emarc/corpus.hpp"

#include "emarc/errors.hpp"
#include "emarc/unicode.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cctype>
#include <fstream>
#include <istream>
#include <regex>
#include <sstream>

namespace emarc {

using nlohmann::json;

namespace {

std::string to_upper_ascii(std::string_view s) {
    std::string out(s);
    for (char& c : out)
        c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    return out;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t'))
        s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
        s.remove_suffix(1);
    return s;
}

enum class MarkerKind { none, start, end };

MarkerKind classify_marker(std::string_view line) {
    std::string_view t = trim(line);
    if (!t.starts_with("*"))
        return MarkerKind::none;
    while (!t.empty() && (t.front() == '*' || t.front() == ' '))
        t.remove_prefix(1);
    const std::string u = to_upper_ascii(t);
    if (u.starts_with("START OF THE PROJECT GUTENBERG") ||
        u.starts_with("START OF THIS PROJECT GUTENBERG"))
        return MarkerKind::start;
    if (u.starts_with("END OF THE PROJECT GUTENBERG") ||
        u.starts_with("END OF THIS PROJECT GUTENBERG"))
        return MarkerKind::end;
    return MarkerKind::none;
}

std::vector<std::string_view> split_lines(std::string_view text) {
    std::vector<std::string_view> lines;
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto nl = text.find('\n', start);
        if (nl == std::string_view::npos) {
            lines.push_back(text.substr(start));
            break;
        }
        lines.push_back(text.substr(start, nl - start));
        start = nl + 1;
    }
    return lines;
}

std::string first_n_lines(std::string_view text, std::size_t n) {
    std::size_t pos = 0;
    std::size_t seen = 0;
    while (seen < n) {
        const auto nl = text.find('\n', pos);
        if (nl == std::string_view::npos)
            return std::string(text);
        pos = nl + 1;
        ++seen;
    }
    return std::string(text.substr(0, pos));
}

} // namespace

StripResult strip_gutenberg(const RawBook& raw) {
    if (!is_valid_utf8(raw.bytes))
        throw DecodeError(raw.source_path + ": not valid UTF-8");

    // normalize CRLF / lone CR to LF
    std::string text;
    text.reserve(raw.bytes.size());
    for (std::size_t i = 0; i < raw.bytes.size(); ++i) {
        const char c = raw.bytes[i];
        if (c == '\r') {
            if (i + 1 >= raw.bytes.size() || raw.bytes[i + 1] != '\n')
                text.push_back('\n');
            continue;
        }
        text.push_back(c);
    }

    const auto lines = split_lines(text);
    std::ptrdiff_t start_line = -1;
    std::ptrdiff_t end_line = -1;
    for (std::size_t i = 0; i < lines.size(); ++i) {
        const MarkerKind kind = classify_marker(lines[i]);
        if (kind == MarkerKind::start && start_line < 0)
            start_line = static_cast<std::ptrdiff_t>(i);
        else if (kind == MarkerKind::end)
            end_line = static_cast<std::ptrdiff_t>(i);
    }
    if (start_line >= 0 && end_line >= 0 && end_line < start_line)
        throw MarkerOrderError(raw.source_path + ": end marker before start marker");
    if (end_line >= 0 && start_line < 0 && end_line == 0) {
        // an end marker on the very first line leaves no body
        StripResult r;
        r.end_found = true;
        r.header = first_n_lines(text, 200);
        return r;
    }

    StripResult result;
    result.start_found = start_line >= 0;
    result.end_found = end_line >= 0;

    std::size_t body_begin = 0;
    std::size_t body_end = text.size();
    if (start_line >= 0) {
        const auto& marker = lines[static_cast<std::size_t>(start_line)];
        body_begin = static_cast<std::size_t>(marker.data() - text.data()) + marker.size();
        if (body_begin < text.size() && text[body_begin] == '\n')
            ++body_begin;
    }
    if (end_line >= 0) {
        const auto& marker = lines[static_cast<std::size_t>(end_line)];
        body_end = static_cast<std::size_t>(marker.data() - text.data());
    }
    result.body = text.substr(body_begin, body_end - body_begin);
    result.header = start_line >= 0
                        ? text.substr(0, static_cast<std::size_t>(
                                             lines[static_cast<std::size_t>(start_line)].data() -
                                             text.data()))
                        : first_n_lines(text, 200);
    return result;
}

Metadata extract_metadata(std::string_view header) {
    Metadata meta;
    bool has_translator = false;
    std::optional<bool> language_finnish;
    std::optional<int> publication_year;
    std::optional<int> release_year;

    static const std::regex title_re(R"(^\s*Title:\s*(.+?)\s*$)", std::regex::icase);
    static const std::regex author_re(R"(^\s*Author:\s*(.+?)\s*$)", std::regex::icase);
    static const std::regex language_re(R"(^\s*Language:\s*(.+?)\s*$)", std::regex::icase);
    static const std::regex translator_re(R"(^\s*Translator:\s*.+$)", std::regex::icase);
    static const std::regex publication_re(
        R"(^\s*(Original publication|Originally published|First published|Published|Publication year|Julkaistu)\b[^0-9]*([12][0-9]{3})\b.*$)",
        std::regex::icase);
    static const std::regex release_re(
        R"(^\s*Release date:.*\b([12][0-9]{3})\b.*$)", std::regex::icase);

    for (const auto line_view : split_lines(header)) {
        const std::string line(trim(line_view));
        if (line.empty())
            continue;
        std::smatch m;
        if (!meta.title && std::regex_match(line, m, title_re)) {
            meta.title = m[1].str();
        } else if (!meta.author && std::regex_match(line, m, author_re)) {
            meta.author = m[1].str();
        } else if (!language_finnish && std::regex_match(line, m, language_re)) {
            const std::string lang = to_upper_ascii(m[1].str());
            language_finnish = lang.find("FINNISH") != std::string::npos ||
                               lang.find("SUOMI") != std::string::npos;
        } else if (std::regex_match(line, translator_re)) {
            has_translator = true;
        } else if (!publication_year && std::regex_match(line, m, publication_re)) {
            publication_year = std::stoi(m[2].str());
        } else if (!release_year && std::regex_match(line, m, release_re)) {
            release_year = std::stoi(m[1].str());
        }
    }

    meta.year = publication_year ? publication_year : release_year;
    if (has_translator)
        meta.originally_finnish = false;
    else if (language_finnish)
        meta.originally_finnish = language_finnish;
    return meta;
}

struct ChapterPatterns::Compiled {
    std::vector<std::regex> regexes;
};

ChapterPatterns::ChapterPatterns(std::vector<std::string> patterns)
    : patterns_(std::move(patterns)) {
    auto compiled = std::make_shared<Compiled>();
    for (const auto& p : patterns_) {
        try {
            compiled->regexes.emplace_back(p, std::regex::ECMAScript | std::regex::icase);
        } catch (const std::regex_error& e) {
            throw ConfigError("bad chapter pattern '" + p + "': " + e.what());
        }
    }
    compiled_ = std::move(compiled);
}

ChapterPatterns ChapterPatterns::defaults() {
    // Reconstruction of typical chapter headings in Gutenberg-era Finnish
    // and English layouts; override with --chapter-patterns for other
    // conventions.
    static const std::vector<std::string> kDefaults = {
        R"(\s*(LUKU|KAPPALE)\s+[0-9IVXLCDM]+[.:]?\s*)",          // LUKU I / KAPPALE 3
        R"(\s*[0-9IVXLCDM]+[.:]?\s*(LUKU|KAPPALE)[.:]?\s*)",     // I. LUKU
        R"(\s*\S+\s+(LUKU|KAPPALE)[.:]?\s*)",                    // ENSIMMÄINEN LUKU
        R"(\s*CHAPTER\s+[0-9IVXLCDM]+[.:]?(\s+\S.*)?)",          // CHAPTER IV. Title
        R"(\s*[IVXLCDM]+[.:]?\s*)",                              // bare Roman numeral
        R"(\s*[0-9]{1,3}[.:]?\s*)",                              // bare Arabic numeral
    };
    return ChapterPatterns(kDefaults);
}

ChapterPatterns ChapterPatterns::load(std::istream& in) {
    std::vector<std::string> patterns;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty() || line[0] == '#')
            continue;
        patterns.push_back(line);
    }
    if (patterns.empty())
        throw ConfigError("chapter pattern file contains no patterns");
    return ChapterPatterns(std::move(patterns));
}

bool ChapterPatterns::matches(std::string_view line) const {
    for (const auto& re : compiled_->regexes)
        if (std::regex_match(line.begin(), line.end(), re))
            return true;
    return false;
}

std::vector<std::string> chapterize(std::string_view body, const ChapterPatterns& patterns) {
    std::vector<std::size_t> split_points;
    std::size_t line_start = 0;
    while (line_start <= body.size()) {
        const auto nl = body.find('\n', line_start);
        const std::string_view line =
            nl == std::string_view::npos ? body.substr(line_start)
                                         : body.substr(line_start, nl - line_start);
        if (!line.empty() && patterns.matches(line))
            split_points.push_back(line_start);
        if (nl == std::string_view::npos)
            break;
        line_start = nl + 1;
    }

    std::vector<std::string> chapters;
    if (split_points.empty()) {
        chapters.emplace_back(body);
        return chapters;
    }

    std::size_t prev = 0;
    for (const std::size_t point : split_points) {
        if (point > prev)
            chapters.emplace_back(body.substr(prev, point - prev));
        prev = point;
    }
    chapters.emplace_back(body.substr(prev));

    // a whitespace-only preamble is noise, fold it into the first chapter
    if (chapters.size() > 1 && split_points.front() > 0) {
        const auto& preamble = chapters.front();
        const bool blank = preamble.find_first_not_of(" \t\r\n") == std::string::npos;
        if (blank) {
            chapters[1] = chapters[0] + chapters[1];
            chapters.erase(chapters.begin());
        }
    }
    return chapters;
}

IngestResult load_corpus(const std::filesystem::path& dir, const ChapterPatterns& patterns) {
    namespace fs = std::filesystem;
    std::error_code ec;
    if (!fs::is_directory(dir, ec))
        throw IoError("not a readable directory: " + dir.string());

    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir, ec)) {
        if (entry.is_regular_file() && entry.path().extension() == ".txt")
            files.push_back(entry.path());
    }
    if (ec)
        throw IoError("cannot list directory " + dir.string() + ": " + ec.message());
    std::sort(files.begin(), files.end(),
              [](const fs::path& a, const fs::path& b) { return a.filename() < b.filename(); });

    IngestResult result;
    for (const auto& path : files) {
        std::ifstream in(path, std::ios::binary);
        if (!in) {
            result.report.discarded.push_back({path.filename().string(), "unreadable file"});
            continue;
        }
        std::ostringstream buf;
        buf << in.rdbuf();
        RawBook raw{path.string(), buf.str()};
        if (raw.bytes.empty()) {
            result.report.discarded.push_back({path.filename().string(), "empty file"});
            continue;
        }
        try {
            const StripResult stripped = strip_gutenberg(raw);
            Document doc;
            doc.id = path.stem().string();
            doc.metadata = extract_metadata(stripped.header);
            doc.body = stripped.body;
            doc.chapters = chapterize(doc.body, patterns);
            if (!stripped.markers_found())
                result.report.warnings.push_back(path.filename().string() +
                                                 ": no Gutenberg markers found");
            result.documents.push_back(std::move(doc));
        } catch (const DecodeError&) {
            result.report.discarded.push_back({path.filename().string(), "invalid UTF-8"});
        } catch (const MarkerOrderError&) {
            result.report.discarded.push_back(
                {path.filename().string(), "end marker before start marker"});
        }
    }
    result.report.retained = result.documents.size();
    if (files.empty())
        result.report.warnings.push_back("no .txt files found in " + dir.string());
    return result;
}

std::string report_to_json(const IngestReport& report) {
    json j;
    j["retained"] = report.retained;
    j["discarded"] = json::array();
    for (const auto& d : report.discarded)
        j["discarded"].push_back({{"file", d.file}, {"reason", d.reason}});
    j["warnings"] = report.warnings;
    return j.dump(2) + "\n";
}

} // namespace emarc
