#ifndef EMARC_LEXICON_HPP
#define EMARC_LEXICON_HPP

#include <cstddef>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace emarc {

// Ordered, run-scoped emotion set. The default is the seven-category scheme
// used throughout (anger, anticipation, disgust, fear, joy, sadness, trust);
// "surprise" from the upstream NRC scheme is auto-accepted on load when the
// default set is in use.
class EmotionSet {
public:
    static EmotionSet default_set();
    explicit EmotionSet(std::vector<std::string> names);

    bool contains(std::string_view name) const;
    std::optional<std::size_t> index_of(std::string_view name) const;
    std::size_t size() const { return names_.size(); }
    const std::vector<std::string>& names() const { return names_; }
    bool is_default() const { return is_default_; }

    void append(std::string name); // extends the set (e.g. surprise)

    bool operator==(const EmotionSet&) const = default;

private:
    std::vector<std::string> names_;
    bool is_default_ = false;
};

struct Provenance {
    enum class Kind { original, manual_add, manual_edit, embedding_copy };
    Kind kind = Kind::original;
    std::string source_lemma; // embedding_copy only
    double cosine = 0.0;      // embedding_copy only

    bool operator==(const Provenance&) const = default;
};

struct LexiconEntry {
    std::string lemma;
    std::string emotion;
    double intensity = 0.0; // in [0, 1]
    Provenance provenance;
};

struct EditCommand {
    enum class Op { add, remove_lemma, copy_entries };
    Op op = Op::add;
    std::string lemma;                // add/remove target lemma; copy target
    std::string emotion;              // add only
    double intensity = 0.0;           // add only
    std::string source_lemma;         // copy only
    std::optional<double> cosine;     // copy via embedding expansion
};

EditCommand make_add(std::string lemma, std::string emotion, double intensity);
EditCommand make_remove(std::string lemma);
EditCommand make_copy(std::string source, std::string target,
                      std::optional<double> cosine = std::nullopt);

enum class DedupePolicy { error, keep_max };

// Immutable after construction. Edits go through edit_lexicon(), which
// returns a new value and appends to the edit log, so replaying the log on
// the original reproduces the result.
class Lexicon {
public:
    Lexicon() : emotions_(EmotionSet::default_set()) {}
    Lexicon(std::string name, EmotionSet emotions)
        : name_(std::move(name)), emotions_(std::move(emotions)) {}

    const std::string& name() const { return name_; }
    const EmotionSet& emotions() const { return emotions_; }
    const std::vector<EditCommand>& edit_log() const { return edit_log_; }

    std::size_t size() const; // number of (lemma, emotion) entries
    bool contains(std::string_view lemma) const;
    std::optional<double> intensity(std::string_view lemma, std::string_view emotion) const;
    // (emotion, intensity) pairs for a lemma, emotion asc; empty when absent
    std::vector<std::pair<std::string, double>> entries_for(std::string_view lemma) const;
    // canonical order: lemma asc, emotion asc
    std::vector<LexiconEntry> entries() const;
    std::vector<std::string> lemmas() const;

    friend Lexicon edit_lexicon(const Lexicon& lex, const EditCommand& cmd);
    friend Lexicon load_lexicon(std::istream&, std::string, EmotionSet, DedupePolicy);

    // same (lemma, emotion, intensity) triples, provenance and log ignored
    bool same_entries(const Lexicon& other) const;

private:
    struct Cell {
        double intensity = 0.0;
        Provenance provenance;
    };
    std::string name_;
    EmotionSet emotions_;
    std::map<std::string, std::map<std::string, Cell>, std::less<>> rows_;
    std::vector<EditCommand> edit_log_;
};

// TSV rows `word<TAB>emotion<TAB>intensity`, optional header row. Duplicate
// (lemma, emotion) rows raise DuplicateError listing the offenders unless
// keep_max is requested; intensities outside [0,1] raise RangeError with the
// line number; emotion names outside the set raise UnknownEmotionError
// (except "surprise" under the default set, which extends it).
Lexicon load_lexicon(std::istream& in, std::string name,
                     EmotionSet emotions = EmotionSet::default_set(),
                     DedupePolicy dedupe = DedupePolicy::error);

// Canonical order, UTF-8, LF, shortest round-trip decimal intensities.
void save_lexicon(std::ostream& out, const Lexicon& lex);

Lexicon edit_lexicon(const Lexicon& lex, const EditCommand& cmd);

struct LexiconStats {
    std::vector<std::string> emotions;       // active set order
    std::vector<std::size_t> counts;         // entries per emotion
    // co_annotation[i][j] = |lemmas with both e_i and e_j| / |lemmas with e_i|;
    // 1 on the diagonal for non-empty emotions, 0 rows for empty ones
    std::vector<std::vector<double>> co_annotation;
};

LexiconStats lexicon_stats(const Lexicon& lex);

// Edit log persistence, one JSON object per line.
void write_edit_log(std::ostream& out, const std::vector<EditCommand>& log);
std::vector<EditCommand> read_edit_log(std::istream& in);

// Shortest decimal that round-trips to the same double (used by save_lexicon
// and the JSON exports).
std::string format_double(double value);

} // namespace emarc

#endif
