#include "emarc/textproc.hpp"

#include "emarc/errors.hpp"
#include "emarc/unicode.hpp"

#include <algorithm>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace emarc {

namespace {

bool is_space_cp(char32_t cp) {
    return cp == ' ' || cp == '\t' || cp == '\n' || cp == '\r' || cp == '\f' ||
           cp == '\v' || cp == 0xA0 || cp == 0x2028 || cp == 0x2029;
}

bool contains_letter(const std::vector<char32_t>& cps, std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i)
        if (is_letter(cps[i]))
            return true;
    return false;
}

std::string encode_range(const std::vector<char32_t>& cps, std::size_t begin, std::size_t end) {
    std::string out;
    for (std::size_t i = begin; i < end; ++i)
        append_utf8(out, cps[i]);
    return out;
}

Token make_token(const std::vector<char32_t>& cps, std::size_t begin, std::size_t end) {
    Token t;
    t.surface = encode_range(cps, begin, end);
    std::string lemma;
    for (std::size_t i = begin; i < end; ++i)
        append_utf8(lemma, to_lower(cps[i]));
    t.lemma = std::move(lemma);
    t.is_word = contains_letter(cps, begin, end);
    return t;
}

bool is_sentence_final(const std::string& surface) {
    return surface == "." || surface == "!" || surface == "?" ||
           surface == "…"; // …
}

} // namespace

std::size_t LemmaSequence::word_count() const {
    std::size_t n = 0;
    for (const auto& t : tokens)
        if (t.is_word)
            ++n;
    return n;
}

std::vector<Token> tokenize(std::string_view text) {
    const std::vector<char32_t> cps = decode_utf8(text);
    std::vector<Token> tokens;
    std::size_t i = 0;
    while (i < cps.size()) {
        if (is_space_cp(cps[i])) {
            ++i;
            continue;
        }
        if (is_letter(cps[i]) || is_digit(cps[i])) {
            std::size_t j = i;
            while (j < cps.size() && (is_letter(cps[j]) || is_digit(cps[j])))
                ++j;
            tokens.push_back(make_token(cps, i, j));
            i = j;
        } else {
            // each punctuation/symbol code point is its own token
            tokens.push_back(make_token(cps, i, i + 1));
            ++i;
        }
    }
    return tokens;
}

LemmaSequence sequence_from_text(std::string doc_id, std::string_view text) {
    LemmaSequence seq;
    seq.doc_id = std::move(doc_id);
    seq.tokens = tokenize(text);
    for (std::size_t i = 0; i < seq.tokens.size(); ++i)
        if (is_sentence_final(seq.tokens[i].surface))
            seq.sentence_boundaries.push_back(i + 1);
    if (!seq.tokens.empty() &&
        (seq.sentence_boundaries.empty() ||
         seq.sentence_boundaries.back() != seq.tokens.size()))
        seq.sentence_boundaries.push_back(seq.tokens.size());
    return seq;
}

LemmaSequence read_conllu(std::istream& in, std::string doc_id) {
    LemmaSequence seq;
    seq.doc_id = std::move(doc_id);

    std::string line;
    std::size_t line_no = 0;
    bool in_sentence = false;

    auto close_sentence = [&] {
        if (in_sentence) {
            seq.sentence_boundaries.push_back(seq.tokens.size());
            in_sentence = false;
        }
    };

    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty()) {
            close_sentence();
            continue;
        }
        if (line[0] == '#')
            continue;

        std::vector<std::string_view> cols;
        std::string_view rest = line;
        while (true) {
            const auto tab = rest.find('\t');
            if (tab == std::string_view::npos) {
                cols.push_back(rest);
                break;
            }
            cols.push_back(rest.substr(0, tab));
            rest.remove_prefix(tab + 1);
        }
        if (cols.size() != 10)
            throw ParseError("CoNLL-U line " + std::to_string(line_no) +
                             ": expected 10 columns, got " + std::to_string(cols.size()));

        const std::string_view id = cols[0];
        if (id.empty())
            throw ParseError("CoNLL-U line " + std::to_string(line_no) + ": empty ID");
        // range rows cover multiword tokens; their parts follow as plain rows
        if (id.find('-') != std::string_view::npos)
            continue;
        // empty nodes (enhanced dependencies) carry no surface token
        if (id.find('.') != std::string_view::npos)
            continue;
        for (char c : id)
            if (c < '0' || c > '9')
                throw ParseError("CoNLL-U line " + std::to_string(line_no) +
                                 ": bad token ID '" + std::string(id) + "'");

        Token t;
        t.surface = std::string(cols[1]);
        t.lemma = (cols[2] == "_") ? lower_copy(cols[1]) : std::string(cols[2]);
        if (t.lemma.empty())
            t.lemma = lower_copy(cols[1]);
        t.upos = (cols[3] == "_") ? std::string() : std::string(cols[3]);
        if (t.upos == "PUNCT" || t.upos == "SYM") {
            t.is_word = false;
        } else if (!t.upos.empty()) {
            t.is_word = true;
        } else {
            const auto cps = decode_utf8(t.surface);
            t.is_word = contains_letter(cps, 0, cps.size());
        }
        seq.tokens.push_back(std::move(t));
        in_sentence = true;
    }
    close_sentence();
    return seq;
}

CorpusStats corpus_stats(const std::vector<LemmaSequence>& seqs, std::size_t k) {
    CorpusStats stats;
    std::unordered_map<std::string, std::size_t> counts;
    for (const auto& seq : seqs) {
        stats.token_count += seq.tokens.size();
        for (const auto& t : seq.tokens) {
            if (!t.is_word)
                continue;
            ++stats.word_count;
            ++counts[t.lemma];
        }
    }
    stats.type_count = counts.size();
    stats.ttr = stats.word_count > 0
                    ? static_cast<double>(stats.type_count) / static_cast<double>(stats.word_count)
                    : 0.0;

    std::vector<std::pair<std::string, std::size_t>> ranked(counts.begin(), counts.end());
    std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second)
            return a.second > b.second;
        return a.first < b.first;
    });
    if (ranked.size() > k)
        ranked.resize(k);
    stats.top_frequent = std::move(ranked);
    return stats;
}

void write_frequency_tsv(std::ostream& out, const CorpusStats& stats) {
    for (const auto& [lemma, count] : stats.top_frequent)
        out << lemma << '\t' << count << '\n';
}

} // namespace emarc
