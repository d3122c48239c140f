#include "emarc/lexicon.hpp"

#include "emarc/errors.hpp"

#include <nlohmann/json.hpp>

#include <charconv>
#include <istream>
#include <ostream>
#include <set>
#include <unordered_set>

namespace emarc {

using nlohmann::json;

EmotionSet EmotionSet::default_set() {
    EmotionSet s({"anger", "anticipation", "disgust", "fear", "joy", "sadness", "trust"});
    s.is_default_ = true;
    return s;
}

EmotionSet::EmotionSet(std::vector<std::string> names) : names_(std::move(names)) {
    std::unordered_set<std::string_view> seen;
    for (const auto& n : names_) {
        if (n.empty())
            throw ConfigError("empty emotion name");
        if (!seen.insert(n).second)
            throw ConfigError("duplicate emotion name: " + n);
    }
}

bool EmotionSet::contains(std::string_view name) const {
    return index_of(name).has_value();
}

std::optional<std::size_t> EmotionSet::index_of(std::string_view name) const {
    for (std::size_t i = 0; i < names_.size(); ++i)
        if (names_[i] == name)
            return i;
    return std::nullopt;
}

void EmotionSet::append(std::string name) {
    if (contains(name))
        throw ConfigError("emotion already in set: " + name);
    names_.push_back(std::move(name));
}

EditCommand make_add(std::string lemma, std::string emotion, double intensity) {
    EditCommand c;
    c.op = EditCommand::Op::add;
    c.lemma = std::move(lemma);
    c.emotion = std::move(emotion);
    c.intensity = intensity;
    return c;
}

EditCommand make_remove(std::string lemma) {
    EditCommand c;
    c.op = EditCommand::Op::remove_lemma;
    c.lemma = std::move(lemma);
    return c;
}

EditCommand make_copy(std::string source, std::string target, std::optional<double> cosine) {
    EditCommand c;
    c.op = EditCommand::Op::copy_entries;
    c.source_lemma = std::move(source);
    c.lemma = std::move(target);
    c.cosine = cosine;
    return c;
}

std::size_t Lexicon::size() const {
    std::size_t n = 0;
    for (const auto& [lemma, cells] : rows_)
        n += cells.size();
    return n;
}

bool Lexicon::contains(std::string_view lemma) const {
    return rows_.find(lemma) != rows_.end();
}

std::optional<double> Lexicon::intensity(std::string_view lemma, std::string_view emotion) const {
    const auto row = rows_.find(lemma);
    if (row == rows_.end())
        return std::nullopt;
    const auto cell = row->second.find(std::string(emotion));
    if (cell == row->second.end())
        return std::nullopt;
    return cell->second.intensity;
}

std::vector<std::pair<std::string, double>> Lexicon::entries_for(std::string_view lemma) const {
    std::vector<std::pair<std::string, double>> out;
    const auto row = rows_.find(lemma);
    if (row == rows_.end())
        return out;
    for (const auto& [emotion, cell] : row->second)
        out.emplace_back(emotion, cell.intensity);
    return out;
}

std::vector<LexiconEntry> Lexicon::entries() const {
    std::vector<LexiconEntry> out;
    out.reserve(size());
    for (const auto& [lemma, cells] : rows_)
        for (const auto& [emotion, cell] : cells)
            out.push_back({lemma, emotion, cell.intensity, cell.provenance});
    return out;
}

std::vector<std::string> Lexicon::lemmas() const {
    std::vector<std::string> out;
    out.reserve(rows_.size());
    for (const auto& [lemma, cells] : rows_)
        out.push_back(lemma);
    return out;
}

bool Lexicon::same_entries(const Lexicon& other) const {
    if (rows_.size() != other.rows_.size())
        return false;
    auto a = rows_.begin();
    auto b = other.rows_.begin();
    for (; a != rows_.end(); ++a, ++b) {
        if (a->first != b->first || a->second.size() != b->second.size())
            return false;
        auto ca = a->second.begin();
        auto cb = b->second.begin();
        for (; ca != a->second.end(); ++ca, ++cb)
            if (ca->first != cb->first || ca->second.intensity != cb->second.intensity)
                return false;
    }
    return true;
}

namespace {

void check_intensity(double v, const std::string& where) {
    if (!(v >= 0.0 && v <= 1.0))
        throw RangeError("intensity " + format_double(v) + " outside [0,1] " + where);
}

} // namespace

Lexicon load_lexicon(std::istream& in, std::string name, EmotionSet emotions,
                     DedupePolicy dedupe) {
    Lexicon lex(std::move(name), std::move(emotions));

    std::string line;
    std::size_t line_no = 0;
    std::set<std::pair<std::string, std::string>> seen;
    std::vector<std::string> duplicates;

    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty())
            continue;

        const auto t1 = line.find('\t');
        const auto t2 = t1 == std::string::npos ? std::string::npos : line.find('\t', t1 + 1);
        if (t2 == std::string::npos)
            throw ParseError("lexicon line " + std::to_string(line_no) +
                             ": expected word<TAB>emotion<TAB>intensity");
        std::string lemma = line.substr(0, t1);
        std::string emotion = line.substr(t1 + 1, t2 - t1 - 1);
        const std::string value = line.substr(t2 + 1);

        double intensity = 0.0;
        const auto* first = value.data();
        const auto* last = value.data() + value.size();
        const auto [ptr, ec] = std::from_chars(first, last, intensity);
        if (ec != std::errc() || ptr != last) {
            if (line_no == 1)
                continue; // header row
            throw ParseError("lexicon line " + std::to_string(line_no) +
                             ": bad intensity '" + value + "'");
        }
        if (!(intensity >= 0.0 && intensity <= 1.0))
            throw RangeError("lexicon line " + std::to_string(line_no) + ": intensity " +
                             value + " outside [0,1]");

        if (!lex.emotions_.contains(emotion)) {
            if (emotion == "surprise" && lex.emotions_.is_default())
                lex.emotions_.append("surprise");
            else
                throw UnknownEmotionError("lexicon line " + std::to_string(line_no) +
                                          ": unknown emotion '" + emotion + "'");
        }

        if (!seen.insert({lemma, emotion}).second) {
            if (dedupe == DedupePolicy::error) {
                duplicates.push_back(lemma + "/" + emotion + " (line " +
                                     std::to_string(line_no) + ")");
                continue;
            }
            // keep-max
            auto& cell = lex.rows_[lemma][emotion];
            if (intensity > cell.intensity)
                cell.intensity = intensity;
            continue;
        }
        lex.rows_[lemma][emotion] = Lexicon::Cell{intensity, Provenance{}};
    }

    if (!duplicates.empty()) {
        std::string msg = "duplicate (lemma, emotion) rows:";
        for (const auto& d : duplicates)
            msg += " " + d;
        throw DuplicateError(msg);
    }
    return lex;
}

void save_lexicon(std::ostream& out, const Lexicon& lex) {
    for (const auto& e : lex.entries())
        out << e.lemma << '\t' << e.emotion << '\t' << format_double(e.intensity) << '\n';
}

Lexicon edit_lexicon(const Lexicon& lex, const EditCommand& cmd) {
    Lexicon next = lex;
    switch (cmd.op) {
    case EditCommand::Op::add: {
        check_intensity(cmd.intensity, "in add(" + cmd.lemma + ", " + cmd.emotion + ")");
        if (!next.emotions_.contains(cmd.emotion))
            throw UnknownEmotionError("add: unknown emotion '" + cmd.emotion + "'");
        auto& row = next.rows_[cmd.lemma];
        const auto it = row.find(cmd.emotion);
        Provenance prov;
        prov.kind = it == row.end() ? Provenance::Kind::manual_add
                                    : Provenance::Kind::manual_edit;
        row[cmd.emotion] = Lexicon::Cell{cmd.intensity, prov};
        break;
    }
    case EditCommand::Op::remove_lemma:
        next.rows_.erase(cmd.lemma);
        break;
    case EditCommand::Op::copy_entries: {
        const auto src = next.rows_.find(cmd.source_lemma);
        if (src == next.rows_.end())
            throw MissingLemmaError("copy_entries: source lemma '" + cmd.source_lemma +
                                    "' not in lexicon");
        Provenance prov;
        if (cmd.cosine) {
            prov.kind = Provenance::Kind::embedding_copy;
            prov.source_lemma = cmd.source_lemma;
            prov.cosine = *cmd.cosine;
        } else {
            prov.kind = Provenance::Kind::manual_add;
        }
        std::map<std::string, Lexicon::Cell> copied;
        for (const auto& [emotion, cell] : src->second)
            copied[emotion] = Lexicon::Cell{cell.intensity, prov};
        next.rows_[cmd.lemma] = std::move(copied);
        break;
    }
    }
    next.edit_log_.push_back(cmd);
    return next;
}

LexiconStats lexicon_stats(const Lexicon& lex) {
    LexiconStats stats;
    stats.emotions = lex.emotions().names();
    const std::size_t n = stats.emotions.size();
    stats.counts.assign(n, 0);

    // lemma sets per emotion
    std::vector<std::set<std::string>> lemma_sets(n);
    for (const auto& e : lex.entries()) {
        const auto idx = lex.emotions().index_of(e.emotion);
        if (!idx)
            continue;
        ++stats.counts[*idx];
        lemma_sets[*idx].insert(e.lemma);
    }

    stats.co_annotation.assign(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
        if (lemma_sets[i].empty())
            continue;
        for (std::size_t j = 0; j < n; ++j) {
            std::size_t both = 0;
            for (const auto& lemma : lemma_sets[i])
                if (lemma_sets[j].count(lemma))
                    ++both;
            stats.co_annotation[i][j] =
                static_cast<double>(both) / static_cast<double>(lemma_sets[i].size());
        }
    }
    return stats;
}

namespace {

json command_to_json(const EditCommand& c) {
    json j;
    switch (c.op) {
    case EditCommand::Op::add:
        j["op"] = "add";
        j["lemma"] = c.lemma;
        j["emotion"] = c.emotion;
        j["intensity"] = c.intensity;
        break;
    case EditCommand::Op::remove_lemma:
        j["op"] = "remove_lemma";
        j["lemma"] = c.lemma;
        break;
    case EditCommand::Op::copy_entries:
        j["op"] = "copy_entries";
        j["source"] = c.source_lemma;
        j["target"] = c.lemma;
        if (c.cosine)
            j["cosine"] = *c.cosine;
        break;
    }
    return j;
}

EditCommand command_from_json(const json& j) {
    const std::string op = j.at("op").get<std::string>();
    if (op == "add")
        return make_add(j.at("lemma").get<std::string>(), j.at("emotion").get<std::string>(),
                        j.at("intensity").get<double>());
    if (op == "remove_lemma")
        return make_remove(j.at("lemma").get<std::string>());
    if (op == "copy_entries") {
        std::optional<double> cosine;
        if (j.contains("cosine"))
            cosine = j.at("cosine").get<double>();
        return make_copy(j.at("source").get<std::string>(), j.at("target").get<std::string>(),
                         cosine);
    }
    throw ParseError("edit log: unknown op '" + op + "'");
}

} // namespace

void write_edit_log(std::ostream& out, const std::vector<EditCommand>& log) {
    for (const auto& c : log)
        out << command_to_json(c).dump() << '\n';
}

std::vector<EditCommand> read_edit_log(std::istream& in) {
    std::vector<EditCommand> log;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty())
            continue;
        try {
            log.push_back(command_from_json(json::parse(line)));
        } catch (const json::exception& e) {
            throw ParseError("edit log line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    return log;
}

std::string format_double(double value) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, res.ptr);
}

} // namespace emarc
