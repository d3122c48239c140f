#include "emarc/export.hpp"

#include "emarc/errors.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>

namespace emarc {

using nlohmann::json;

std::string format_fixed2(double value) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.2f", value);
    return buf;
}

void write_arc_csv(std::ostream& out, const Arc& arc,
                   const std::vector<std::string>& comment_lines) {
    for (const auto& line : comment_lines)
        out << "# " << line << '\n';
    out << "chunk";
    for (const auto& e : arc.emotions)
        out << ',' << e;
    if (arc.smoothed)
        for (const auto& e : arc.emotions)
            out << ',' << e << "_smoothed";
    out << '\n';

    for (std::size_t c = 0; c < arc.scores.size(); ++c) {
        out << c;
        for (const double v : arc.scores[c].values)
            out << ',' << format_fixed2(v);
        if (arc.smoothed)
            for (const double v : (*arc.smoothed)[c].values)
                out << ',' << format_fixed2(v);
        out << '\n';
    }
}

namespace {

json vectors_to_json(const std::vector<EmotionVector>& series) {
    json rows = json::array();
    for (const auto& v : series)
        rows.push_back(v.values);
    return rows;
}

std::vector<EmotionVector> vectors_from_json(const json& rows, EmotionVector::Kind kind) {
    std::vector<EmotionVector> series;
    for (const auto& row : rows) {
        EmotionVector v;
        v.kind = kind;
        v.values = row.get<std::vector<double>>();
        series.push_back(std::move(v));
    }
    return series;
}

} // namespace

void write_arc_json(std::ostream& out, const Arc& arc, std::string_view run_config_json) {
    json j;
    j["doc_id"] = arc.doc_id;
    j["emotions"] = arc.emotions;
    j["chunking"] = {
        {"mode", arc.chunking.mode == ChunkingSpec::Mode::by_count ? "count" : "window"},
        {"value", arc.chunking.value}};
    if (arc.smoothing_window)
        j["smoothing_window"] = *arc.smoothing_window;
    else
        j["smoothing_window"] = nullptr;
    j["chunk_word_counts"] = arc.chunk_word_counts;
    j["sums"] = vectors_to_json(arc.sums);
    j["scores"] = vectors_to_json(arc.scores);
    if (arc.smoothed)
        j["smoothed"] = vectors_to_json(*arc.smoothed);
    else
        j["smoothed"] = nullptr;
    if (!run_config_json.empty())
        j["run_config"] = json::parse(run_config_json);
    out << j.dump(2) << '\n';
}

Arc read_arc_json(std::istream& in) {
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ParseError(std::string("arc JSON: ") + e.what());
    }
    Arc arc;
    arc.doc_id = j.at("doc_id").get<std::string>();
    arc.emotions = j.at("emotions").get<std::vector<std::string>>();
    const auto& chunking = j.at("chunking");
    arc.chunking.mode = chunking.at("mode").get<std::string>() == "count"
                            ? ChunkingSpec::Mode::by_count
                            : ChunkingSpec::Mode::by_window;
    arc.chunking.value = chunking.at("value").get<std::size_t>();
    arc.chunk_word_counts = j.at("chunk_word_counts").get<std::vector<std::size_t>>();
    arc.sums = vectors_from_json(j.at("sums"), EmotionVector::Kind::raw_sum);
    arc.scores = vectors_from_json(j.at("scores"), EmotionVector::Kind::per_10k);
    if (j.contains("smoothed") && !j.at("smoothed").is_null())
        arc.smoothed = vectors_from_json(j.at("smoothed"), EmotionVector::Kind::per_10k);
    if (j.contains("smoothing_window") && !j.at("smoothing_window").is_null())
        arc.smoothing_window = j.at("smoothing_window").get<std::size_t>();
    return arc;
}

namespace {

std::string xml_escape(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (const char c : s) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        default: out.push_back(c);
        }
    }
    return out;
}

// palette indexed by position in the active emotion set
constexpr const char* kPalette[] = {
    "#c0392b", // anger
    "#e67e22", // anticipation
    "#7d6608", // disgust
    "#6c3483", // fear
    "#f1c40f", // joy
    "#2471a3", // sadness
    "#1e8449", // trust
    "#884ea0",
};

} // namespace

void write_arc_svg(std::ostream& out, const Arc& arc,
                   const std::vector<std::string>& emotion_subset, std::string_view title,
                   std::string_view run_config_json) {
    if (emotion_subset.empty())
        throw ConfigError("SVG emotion subset is empty");
    std::vector<std::size_t> selected;
    for (const auto& e : emotion_subset) {
        const auto it = std::find(arc.emotions.begin(), arc.emotions.end(), e);
        if (it == arc.emotions.end())
            throw ConfigError("SVG subset: unknown emotion '" + e + "'");
        selected.push_back(static_cast<std::size_t>(it - arc.emotions.begin()));
    }
    const auto& series = arc.smoothed ? *arc.smoothed : arc.scores;
    const std::size_t n = series.size();

    constexpr double width = 800.0, height = 500.0;
    constexpr double left = 60.0, right = 780.0, top = 60.0, bottom = 450.0;

    double y_max = 0.0;
    for (const auto& v : series)
        for (const std::size_t e : selected)
            y_max = std::max(y_max, v.values[e]);
    if (y_max <= 0.0)
        y_max = 1.0;

    const auto x_of = [&](std::size_t i) {
        if (n <= 1)
            return (left + right) / 2.0;
        return left + (right - left) * static_cast<double>(i) / static_cast<double>(n - 1);
    };
    const auto y_of = [&](double v) { return bottom - (bottom - top) * (v / y_max); };

    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
    if (!run_config_json.empty())
        out << "  <metadata id=\"run-config\">" << xml_escape(run_config_json)
            << "</metadata>\n";
    out << "  <rect x=\"0\" y=\"0\" width=\"" << width << "\" height=\"" << height
        << "\" fill=\"white\"/>\n";
    out << "  <text x=\"" << (width / 2) << "\" y=\"30\" text-anchor=\"middle\" "
           "font-family=\"sans-serif\" font-size=\"18\">"
        << xml_escape(title.empty() ? std::string_view(arc.doc_id) : title) << "</text>\n";

    // axes
    out << "  <line x1=\"" << left << "\" y1=\"" << bottom << "\" x2=\"" << right << "\" y2=\""
        << bottom << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
    out << "  <line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left << "\" y2=\""
        << bottom << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
    out << "  <text x=\"" << left << "\" y=\"" << (bottom + 20)
        << "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\">0</text>\n";
    out << "  <text x=\"" << right << "\" y=\"" << (bottom + 20)
        << "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\">"
        << (n > 0 ? n - 1 : 0) << "</text>\n";
    out << "  <text x=\"" << (left - 8) << "\" y=\"" << (top + 4)
        << "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"end\">"
        << format_fixed2(y_max) << "</text>\n";
    out << "  <text x=\"" << (left - 8) << "\" y=\"" << (bottom + 4)
        << "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"end\">0.00</text>\n";

    // data
    for (std::size_t s = 0; s < selected.size(); ++s) {
        const std::size_t e = selected[s];
        const char* color = kPalette[e % (sizeof kPalette / sizeof kPalette[0])];
        out << "  <polyline class=\"data\" fill=\"none\" stroke=\"" << color
            << "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t i = 0; i < n; ++i) {
            if (i > 0)
                out << ' ';
            out << format_fixed2(x_of(i)) << ',' << format_fixed2(y_of(series[i].values[e]));
        }
        out << "\"/>\n";
    }

    // legend
    for (std::size_t s = 0; s < selected.size(); ++s) {
        const std::size_t e = selected[s];
        const char* color = kPalette[e % (sizeof kPalette / sizeof kPalette[0])];
        const double ly = top + 16.0 * static_cast<double>(s);
        out << "  <line x1=\"" << (right - 120) << "\" y1=\"" << ly << "\" x2=\""
            << (right - 100) << "\" y2=\"" << ly << "\" stroke=\"" << color
            << "\" stroke-width=\"3\"/>\n";
        out << "  <text x=\"" << (right - 94) << "\" y=\"" << (ly + 4)
            << "\" font-family=\"sans-serif\" font-size=\"12\">" << xml_escape(arc.emotions[e])
            << "</text>\n";
    }
    out << "</svg>\n";
}

} // namespace emarc
