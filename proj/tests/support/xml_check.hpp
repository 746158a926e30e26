// Minimal XML well-formedness scanner for generated SVG: balanced tags,
// quoted attribute values, sane entity references. Not a general XML parser;
// it only needs to reject the ways an SVG writer can realistically break.
#pragma once

#include <cctype>
#include <string>
#include <vector>

namespace testsupport {

struct XmlReport {
    bool well_formed = true;
    std::string problem;
    int element_count = 0;
};

namespace xmldetail {

inline bool name_start(char c) {
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == ':';
}
inline bool name_char(char c) {
    return name_start(c) || std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '.';
}

}  // namespace xmldetail

inline XmlReport check_xml(const std::string& text) {
    XmlReport rep;
    auto fail = [&](const std::string& why) {
        rep.well_formed = false;
        rep.problem = why;
        return rep;
    };

    std::vector<std::string> stack;
    std::size_t i = 0;
    const std::size_t n = text.size();
    bool saw_root = false;

    while (i < n) {
        const char c = text[i];
        if (c == '<') {
            if (i + 1 < n && text[i + 1] == '?') {  // declaration / PI
                const std::size_t end = text.find("?>", i + 2);
                if (end == std::string::npos) return fail("unterminated processing instruction");
                i = end + 2;
                continue;
            }
            if (text.compare(i, 4, "<!--") == 0) {
                const std::size_t end = text.find("-->", i + 4);
                if (end == std::string::npos) return fail("unterminated comment");
                i = end + 3;
                continue;
            }
            if (i + 1 < n && text[i + 1] == '/') {  // closing tag
                std::size_t j = i + 2;
                std::string name;
                while (j < n && xmldetail::name_char(text[j])) name += text[j++];
                while (j < n && std::isspace(static_cast<unsigned char>(text[j]))) ++j;
                if (j >= n || text[j] != '>') return fail("malformed closing tag near offset " + std::to_string(i));
                if (stack.empty()) return fail("closing tag </" + name + "> with nothing open");
                if (stack.back() != name)
                    return fail("closing tag </" + name + "> does not match <" + stack.back() + ">");
                stack.pop_back();
                i = j + 1;
                continue;
            }
            // Opening or self-closing tag.
            std::size_t j = i + 1;
            if (j >= n || !xmldetail::name_start(text[j])) return fail("bad tag start at offset " + std::to_string(i));
            std::string name;
            while (j < n && xmldetail::name_char(text[j])) name += text[j++];
            // Attributes.
            bool self_closing = false;
            while (j < n) {
                while (j < n && std::isspace(static_cast<unsigned char>(text[j]))) ++j;
                if (j >= n) return fail("unterminated tag <" + name + ">");
                if (text[j] == '>') {
                    ++j;
                    break;
                }
                if (text[j] == '/') {
                    if (j + 1 >= n || text[j + 1] != '>') return fail("stray '/' in tag <" + name + ">");
                    self_closing = true;
                    j += 2;
                    break;
                }
                if (!xmldetail::name_start(text[j])) return fail("bad attribute name in <" + name + ">");
                while (j < n && xmldetail::name_char(text[j])) ++j;
                if (j >= n || text[j] != '=') return fail("attribute without '=' in <" + name + ">");
                ++j;
                if (j >= n || (text[j] != '"' && text[j] != '\'')) return fail("unquoted attribute value in <" + name + ">");
                const char quote = text[j++];
                while (j < n && text[j] != quote) {
                    if (text[j] == '<') return fail("raw '<' inside attribute value in <" + name + ">");
                    ++j;
                }
                if (j >= n) return fail("unterminated attribute value in <" + name + ">");
                ++j;
            }
            ++rep.element_count;
            if (stack.empty()) {
                if (saw_root && !self_closing) return fail("second root element <" + name + ">");
                if (saw_root && self_closing) return fail("content after root element");
                saw_root = true;
            }
            if (!self_closing) stack.push_back(name);
            i = j;
            continue;
        }
        if (c == '>') return fail("stray '>' at offset " + std::to_string(i));
        if (c == '&') {
            std::size_t j = i + 1;
            std::string ent;
            while (j < n && text[j] != ';' && ent.size() < 10) ent += text[j++];
            if (j >= n || text[j] != ';') return fail("unterminated entity reference");
            if (ent != "amp" && ent != "lt" && ent != "gt" && ent != "quot" && ent != "apos" &&
                !(ent.size() > 1 && ent[0] == '#'))
                return fail("unknown entity &" + ent + ";");
            i = j + 1;
            continue;
        }
        ++i;
    }

    if (!stack.empty()) return fail("unclosed element <" + stack.back() + ">");
    if (!saw_root) return fail("no root element");
    return rep;
}

}  // namespace testsupport
