#pragma once

#include <cctype>
#include <cstddef>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "fclat/context.hpp"
#include "fclat/errors.hpp"

namespace fclat {

enum class ContextFormat { burmeister, csv };

namespace detail {

inline std::vector<std::string> split_lines(std::string_view text) {
    std::vector<std::string> lines;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t nl = text.find('\n', pos);
        std::string_view line =
            nl == std::string_view::npos ? text.substr(pos) : text.substr(pos, nl - pos);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        lines.emplace_back(line);
        if (nl == std::string_view::npos) break;
        pos = nl + 1;
    }
    return lines;
}

inline bool parse_size(const std::string& s, std::size_t& out) {
    if (s.empty()) return false;
    std::size_t v = 0;
    for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
        v = v * 10 + static_cast<std::size_t>(c - '0');
    }
    out = v;
    return true;
}

inline FormalContext parse_burmeister(std::string_view text) {
    std::vector<std::string> lines = split_lines(text);
    std::size_t at = 0;
    auto next = [&](const char* what) -> const std::string& {
        if (at >= lines.size()) throw parse_error(std::string("unexpected end of file, expected ") + what);
        return lines[at++];
    };

    if (next("header 'B'") != "B") throw parse_error("Burmeister context must start with 'B'");

    // Optional name line: absent when the next two lines are both sizes.
    std::size_t gs = 0, ms = 0;
    {
        const std::string& l1 = next("object count");
        std::size_t a = 0, b = 0;
        bool l1_num = parse_size(l1, a);
        bool l2_num = at < lines.size() && parse_size(lines[at], b);
        if (l1_num && l2_num) {
            gs = a;
            ms = b;
            ++at;
        } else {
            if (!parse_size(next("object count"), gs)) throw parse_error("invalid object count");
            if (!parse_size(next("attribute count"), ms)) throw parse_error("invalid attribute count");
        }
    }
    // Optional blank separator before the name block.
    if (at < lines.size() && lines[at].empty()) ++at;

    std::vector<std::string> objects, attributes;
    objects.reserve(gs);
    attributes.reserve(ms);
    for (std::size_t g = 0; g < gs; ++g) objects.push_back(next("object name"));
    for (std::size_t m = 0; m < ms; ++m) attributes.push_back(next("attribute name"));

    std::vector<Bitset> rows;
    rows.reserve(gs);
    for (std::size_t g = 0; g < gs; ++g) {
        const std::string& line = next("data row");
        if (line.size() != ms)
            throw parse_error("data row for '" + objects[g] + "' has " +
                              std::to_string(line.size()) + " cells, expected " + std::to_string(ms));
        Bitset r(ms);
        for (std::size_t m = 0; m < ms; ++m) {
            char c = line[m];
            if (c == 'X' || c == 'x')
                r.set(m);
            else if (c != '.')
                throw parse_error(std::string("invalid cell character '") + c + "' in row for '" +
                                  objects[g] + "'");
        }
        rows.push_back(std::move(r));
    }
    for (; at < lines.size(); ++at)
        if (!lines[at].empty()) throw parse_error("trailing content after data rows");
    try {
        return FormalContext(std::move(objects), std::move(attributes), std::move(rows));
    } catch (const std::invalid_argument& e) {
        throw parse_error(e.what());
    }
}

inline std::vector<std::string> split_csv_record(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        char c = line[i];
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
            quoted = true;
        } else if (c == ',') {
            fields.push_back(std::move(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (quoted) throw parse_error("unterminated quote in CSV record");
    fields.push_back(std::move(cur));
    return fields;
}

inline bool csv_truthy(const std::string& s) {
    return s == "1" || s == "x" || s == "X" || s == "true";
}

/// First row: attribute names (leading corner cell ignored). First column:
/// object names.
inline FormalContext parse_csv(std::string_view text) {
    std::vector<std::string> lines = split_lines(text);
    if (lines.empty()) throw parse_error("empty CSV document");

    std::vector<std::string> header = split_csv_record(lines[0]);
    if (header.empty()) throw parse_error("CSV header has no cells");
    std::vector<std::string> attributes(header.begin() + 1, header.end());

    std::vector<std::string> objects;
    std::vector<Bitset> rows;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        std::vector<std::string> rec = split_csv_record(lines[i]);
        if (rec.size() != header.size())
            throw parse_error("CSV row " + std::to_string(i + 1) + " has " +
                              std::to_string(rec.size()) + " cells, expected " +
                              std::to_string(header.size()));
        objects.push_back(rec[0]);
        Bitset r(attributes.size());
        for (std::size_t m = 0; m < attributes.size(); ++m)
            if (csv_truthy(rec[m + 1])) r.set(m);
        rows.push_back(std::move(r));
    }
    try {
        return FormalContext(std::move(objects), std::move(attributes), std::move(rows));
    } catch (const std::invalid_argument& e) {
        throw parse_error(e.what());
    }
}

inline std::string csv_quote(const std::string& s) {
    if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

}  // namespace detail

inline FormalContext parse_context(std::string_view text, ContextFormat format) {
    return format == ContextFormat::burmeister ? detail::parse_burmeister(text)
                                               : detail::parse_csv(text);
}

/// Canonical Burmeister form: no name line, no blank separators, 'X' crosses.
inline std::string write_burmeister(const FormalContext& ctx) {
    std::ostringstream out;
    out << "B\n" << ctx.object_count() << '\n' << ctx.attribute_count() << '\n';
    for (const auto& g : ctx.objects()) out << g << '\n';
    for (const auto& m : ctx.attributes()) out << m << '\n';
    for (std::size_t g = 0; g < ctx.object_count(); ++g) out << ctx.row(g).to_string() << '\n';
    return out.str();
}

inline std::string write_csv(const FormalContext& ctx) {
    std::ostringstream out;
    out << "name";
    for (const auto& m : ctx.attributes()) out << ',' << detail::csv_quote(m);
    out << '\n';
    for (std::size_t g = 0; g < ctx.object_count(); ++g) {
        out << detail::csv_quote(ctx.objects()[g]);
        for (std::size_t m = 0; m < ctx.attribute_count(); ++m)
            out << ',' << (ctx.incident(g, m) ? '1' : '0');
        out << '\n';
    }
    return out.str();
}

}  // namespace fclat
