// CSV serialization for labeled matrices, coordinate tables, animation frame
// records, and stress traces. Writers are byte-deterministic; readers accept
// exactly what the writers emit plus ordinary hand-written files.
#pragma once

#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "scimap/common.hpp"
#include "scimap/dynamic_layout.hpp"
#include "scimap/matrix.hpp"

namespace scimap {

namespace detail {

inline bool csv_needs_quotes(const std::string& field) {
    return field.find_first_of(",\"\n\r") != std::string::npos;
}

inline std::string csv_quote(const std::string& field) {
    if (!csv_needs_quotes(field)) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

// Split one logical CSV record; the caller has already joined quoted
// newlines. Reports the 1-based line number on malformed quoting.
inline std::vector<std::string> csv_split(const std::string& line, std::size_t line_number) {
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cur += c;
            }
        } else if (c == '"') {
            if (!cur.empty())
                throw Error("line " + std::to_string(line_number) + ": quote inside unquoted field");
            quoted = true;
        } else if (c == ',') {
            fields.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (quoted) throw Error("line " + std::to_string(line_number) + ": unterminated quote");
    fields.push_back(cur);
    return fields;
}

// Read one logical record, joining physical lines while inside quotes.
// Returns false at end of input. Strips a trailing CR from each physical line.
inline bool csv_read_record(std::istream& in, std::string& record, std::size_t& line_number) {
    record.clear();
    std::string line;
    bool have_any = false;
    while (std::getline(in, line)) {
        ++line_number;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        record += have_any ? "\n" + line : line;
        have_any = true;
        std::size_t quotes = 0;
        for (char c : record)
            if (c == '"') ++quotes;
        if (quotes % 2 == 0) return true;
    }
    if (have_any) throw Error("line " + std::to_string(line_number) + ": unterminated quote");
    return false;
}

inline double csv_parse_number(const std::string& field, std::size_t line_number) {
    try {
        std::size_t used = 0;
        const double v = std::stod(field, &used);
        if (used != field.size()) throw Error("");
        return v;
    } catch (...) {
        throw Error("line " + std::to_string(line_number) + ": '" + field + "' is not a number");
    }
}

}  // namespace detail

// Matrix layout: header row of column labels behind an empty corner cell,
// then one row per matrix row starting with its label. Integer-valued cells
// are written bare, everything else with six decimals.
inline void write_matrix_csv(std::ostream& out, const LabeledMatrix& mat) {
    out << "";
    for (const auto& label : mat.col_labels) out << ',' << detail::csv_quote(label);
    out << '\n';
    for (std::size_t r = 0; r < mat.row_labels.size(); ++r) {
        out << detail::csv_quote(mat.row_labels[r]);
        for (std::size_t c = 0; c < mat.col_labels.size(); ++c)
            out << ',' << format_cell(mat.at(r, c));
        out << '\n';
    }
}

inline std::string write_matrix_csv(const LabeledMatrix& mat) {
    std::ostringstream out;
    write_matrix_csv(out, mat);
    return out.str();
}

inline LabeledMatrix read_matrix_csv(std::istream& in) {
    std::string record;
    std::size_t line_number = 0;
    if (!detail::csv_read_record(in, record, line_number)) throw Error("empty matrix file");
    const auto header = detail::csv_split(record, line_number);
    if (header.size() < 2) throw Error("line 1: matrix header needs at least one column label");
    LabeledMatrix mat;
    mat.col_labels.assign(header.begin() + 1, header.end());

    while (detail::csv_read_record(in, record, line_number)) {
        if (record.empty()) continue;
        const auto fields = detail::csv_split(record, line_number);
        if (fields.size() != header.size())
            throw Error("line " + std::to_string(line_number) + ": expected " +
                        std::to_string(header.size()) + " fields, got " +
                        std::to_string(fields.size()));
        mat.row_labels.push_back(fields[0]);
        for (std::size_t c = 1; c < fields.size(); ++c)
            mat.values.push_back(detail::csv_parse_number(fields[c], line_number));
    }
    if (mat.row_labels.empty()) throw Error("matrix file has no data rows");
    return mat;
}

inline LabeledMatrix read_matrix_csv(const std::string& text) {
    std::istringstream in(text);
    return read_matrix_csv(in);
}

// Coordinates: "label,x,y" with a header line, six decimals.
inline void write_coordinates_csv(std::ostream& out, const std::vector<std::string>& labels,
                                  const Positions& positions) {
    if (labels.size() != positions.size())
        throw Error("coordinate table has " + std::to_string(labels.size()) + " labels for " +
                    std::to_string(positions.size()) + " points");
    out << "label,x,y\n";
    for (std::size_t i = 0; i < labels.size(); ++i)
        out << detail::csv_quote(labels[i]) << ',' << format_fixed(positions[i].x, 6) << ','
            << format_fixed(positions[i].y, 6) << '\n';
}

inline void read_coordinates_csv(std::istream& in, std::vector<std::string>& labels,
                                 Positions& positions) {
    labels.clear();
    positions.clear();
    std::string record;
    std::size_t line_number = 0;
    if (!detail::csv_read_record(in, record, line_number)) throw Error("empty coordinate file");
    const auto header = detail::csv_split(record, line_number);
    if (header.size() != 3 || header[0] != "label" || header[1] != "x" || header[2] != "y")
        throw Error("line 1: coordinate files start with 'label,x,y'");
    while (detail::csv_read_record(in, record, line_number)) {
        if (record.empty()) continue;
        const auto fields = detail::csv_split(record, line_number);
        if (fields.size() != 3)
            throw Error("line " + std::to_string(line_number) + ": expected 3 fields, got " +
                        std::to_string(fields.size()));
        labels.push_back(fields[0]);
        positions.push_back({detail::csv_parse_number(fields[1], line_number),
                             detail::csv_parse_number(fields[2], line_number)});
    }
    if (labels.empty()) throw Error("coordinate file has no data rows");
}

// Animation frame records: "t,label,x,y,opacity,cluster", one row per node
// occurrence, frames in order.
inline void write_frame_records_csv(std::ostream& out, const AnimationSequence& seq) {
    out << "t,label,x,y,opacity,cluster\n";
    for (const auto& frame : seq.frames)
        for (const auto& node : frame.nodes)
            out << format_cell(frame.t) << ',' << detail::csv_quote(seq.labels[node.node_id]) << ','
                << format_fixed(node.x, 6) << ',' << format_fixed(node.y, 6) << ','
                << format_fixed(node.opacity, 6) << ',' << seq.clusters[node.node_id] << '\n';
}

// Stress trace: a single column, first value = initial configuration.
inline void write_stress_trace_csv(std::ostream& out, const std::vector<double>& trace) {
    out << "stress\n";
    for (double v : trace) out << format_general(v) << '\n';
}

}  // namespace scimap
