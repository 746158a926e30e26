// Corpus ingestion: pipe-delimited document records and the variable
// universe (words / authors / references) derived from them.
#pragma once

#include <algorithm>
#include <cstdlib>
#include <istream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "scimap/common.hpp"

namespace scimap {

struct DocumentRecord {
    std::string doc_id;
    std::vector<std::string> title_tokens;  // lowercase, punctuation-free
    std::vector<std::string> authors;       // verbatim names
    std::vector<std::string> references;    // may be empty
    int time_slice = 0;                     // contiguous 0..T-1 after ingestion
    int year = 0;                           // raw year the slice was derived from
};

struct CorpusConfig {
    std::set<std::string> stopwords;     // matched after lowercasing
    std::size_t min_token_length = 1;
    int slice_granularity_years = 1;     // years per time slice
};

enum class VariableKind { word = 0, author = 1, reference = 2 };

inline const char* to_string(VariableKind k) {
    switch (k) {
        case VariableKind::word: return "word";
        case VariableKind::author: return "author";
        case VariableKind::reference: return "reference";
    }
    return "?";
}

// Ordered list of matrix columns. Ordering is total: by kind, then by
// descending document frequency, ties broken lexicographically.
struct VariableUniverse {
    struct Entry {
        std::string label;
        VariableKind kind;
        int document_frequency = 0;
    };

    std::vector<Entry> entries;
    std::map<std::pair<int, std::string>, std::size_t> index;  // (kind, label) -> column

    std::size_t size() const { return entries.size(); }

    std::size_t column_of(const std::string& label, VariableKind kind) const {
        auto it = index.find({static_cast<int>(kind), label});
        if (it == index.end())
            throw Error("variable '" + label + "' (" + to_string(kind) + ") not in universe");
        return it->second;
    }

    bool contains(const std::string& label, VariableKind kind) const {
        return index.count({static_cast<int>(kind), label}) > 0;
    }
};

namespace detail {

inline std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

inline std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    out.push_back(cur);
    return out;
}

// ASCII punctuation separates tokens; bytes >= 0x80 are kept so UTF-8 words
// survive untouched. ASCII letters are lowercased.
inline std::vector<std::string> tokenize_title(const std::string& title, const CorpusConfig& cfg) {
    std::vector<std::string> out;
    std::string cur;
    auto flush = [&]() {
        if (!cur.empty()) {
            if (cur.size() >= cfg.min_token_length && !cfg.stopwords.count(cur)) out.push_back(cur);
            cur.clear();
        }
    };
    for (unsigned char c : title) {
        if (c >= 0x80 || std::isalnum(c)) {
            cur.push_back(static_cast<char>(std::tolower(c)));
        } else {
            flush();
        }
    }
    flush();
    return out;
}

inline int parse_year(const std::string& field, std::size_t line_no) {
    const std::string t = trim(field);
    if (t.empty()) throw Error("line " + std::to_string(line_no) + ": empty year field");
    char* end = nullptr;
    long v = std::strtol(t.c_str(), &end, 10);
    if (end == t.c_str() || *end != '\0')
        throw Error("line " + std::to_string(line_no) + ": year '" + t + "' is not an integer");
    return static_cast<int>(v);
}

}  // namespace detail

// Input: one document per line, `doc_id | title | author;author;... | year`
// with an optional fifth field `ref;ref;...`. Lines starting with '#' are
// comments; blank lines are skipped.
inline std::vector<DocumentRecord> parse_corpus(std::istream& in, const CorpusConfig& cfg) {
    if (cfg.slice_granularity_years < 1) throw Error("slice granularity must be >= 1 year");
    std::vector<DocumentRecord> docs;
    std::map<std::string, std::size_t> seen_ids;  // doc_id -> line number
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string stripped = detail::trim(line);
        if (stripped.empty() || stripped[0] == '#') continue;

        std::vector<std::string> fields = detail::split(line, '|');
        if (fields.size() != 4 && fields.size() != 5)
            throw Error("line " + std::to_string(line_no) + ": expected 4 or 5 pipe-separated fields, got " +
                        std::to_string(fields.size()));

        DocumentRecord rec;
        rec.doc_id = detail::trim(fields[0]);
        if (rec.doc_id.empty()) throw Error("line " + std::to_string(line_no) + ": empty doc_id");
        auto dup = seen_ids.find(rec.doc_id);
        if (dup != seen_ids.end())
            throw Error("duplicate doc_id '" + rec.doc_id + "' on lines " + std::to_string(dup->second) +
                        " and " + std::to_string(line_no));
        seen_ids[rec.doc_id] = line_no;

        rec.title_tokens = detail::tokenize_title(fields[1], cfg);
        for (const std::string& a : detail::split(fields[2], ';')) {
            const std::string name = detail::trim(a);
            if (!name.empty()) rec.authors.push_back(name);
        }
        rec.year = detail::parse_year(fields[3], line_no);
        if (fields.size() == 5) {
            for (const std::string& r : detail::split(fields[4], ';')) {
                const std::string ref = detail::trim(r);
                if (!ref.empty()) rec.references.push_back(ref);
            }
        }
        docs.push_back(std::move(rec));
    }

    // Slice years into buckets of the configured width, then compress the
    // occupied buckets to a contiguous 0..T-1 range.
    if (!docs.empty()) {
        int min_year = docs.front().year;
        for (const auto& d : docs) min_year = std::min(min_year, d.year);
        std::set<int> buckets;
        for (const auto& d : docs) buckets.insert((d.year - min_year) / cfg.slice_granularity_years);
        std::map<int, int> rank;
        int next = 0;
        for (int b : buckets) rank[b] = next++;
        for (auto& d : docs) d.time_slice = rank[(d.year - min_year) / cfg.slice_granularity_years];
    }
    return docs;
}

inline std::vector<DocumentRecord> parse_corpus(const std::string& text, const CorpusConfig& cfg) {
    std::istringstream in(text);
    return parse_corpus(in, cfg);
}

// Variables of the requested kinds occurring in at least min_occurrence
// distinct documents.
inline VariableUniverse build_universe(const std::vector<DocumentRecord>& docs,
                                       const std::set<VariableKind>& kinds, int min_occurrence) {
    if (min_occurrence < 1) throw Error("min_occurrence must be >= 1");
    // (kind, label) -> distinct document count
    std::map<std::pair<int, std::string>, int> doc_freq;
    auto count_doc = [&](const std::vector<std::string>& labels, VariableKind kind) {
        if (!kinds.count(kind)) return;
        std::set<std::string> distinct(labels.begin(), labels.end());
        for (const auto& l : distinct) ++doc_freq[{static_cast<int>(kind), l}];
    };
    for (const auto& d : docs) {
        count_doc(d.title_tokens, VariableKind::word);
        count_doc(d.authors, VariableKind::author);
        count_doc(d.references, VariableKind::reference);
    }

    VariableUniverse uni;
    for (const auto& [key, freq] : doc_freq) {
        if (freq < min_occurrence) continue;
        uni.entries.push_back({key.second, static_cast<VariableKind>(key.first), freq});
    }
    if (uni.entries.empty()) throw Error("empty universe: no variable satisfies min_occurrence");

    std::sort(uni.entries.begin(), uni.entries.end(), [](const auto& a, const auto& b) {
        if (a.kind != b.kind) return static_cast<int>(a.kind) < static_cast<int>(b.kind);
        if (a.document_frequency != b.document_frequency) return a.document_frequency > b.document_frequency;
        return a.label < b.label;
    });
    for (std::size_t i = 0; i < uni.entries.size(); ++i)
        uni.index[{static_cast<int>(uni.entries[i].kind), uni.entries[i].label}] = i;
    return uni;
}

}  // namespace scimap
