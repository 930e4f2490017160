#pragma once

// Plain-text family format: one set per line as a comma-separated strictly
// increasing integer list. Blank lines and lines starting with '#' are
// skipped; a repeated set is an error.

#include <charconv>
#include <istream>
#include <map>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "errors.hpp"
#include "groundset.hpp"
#include "systems.hpp"

namespace sidonkit {

namespace detail {

inline std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos)
        return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

} // namespace detail

inline KSet parse_kset(std::string_view line, std::size_t line_no) {
    std::vector<Element> elems;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        const std::string_view token =
            detail::trim(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
        if (token.empty())
            throw parse_error(line_no, "empty element");
        Element value = 0;
        const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
        if (ec == std::errc::result_out_of_range)
            throw parse_error(line_no, "element out of 64-bit range: " + std::string(token));
        if (ec != std::errc() || ptr != token.data() + token.size())
            throw parse_error(line_no, "not an integer: " + std::string(token));
        if (!elems.empty() && value <= elems.back())
            throw parse_error(line_no, "elements are not strictly increasing");
        elems.push_back(value);
        if (comma == std::string_view::npos)
            break;
        start = comma + 1;
    }
    return KSet(std::move(elems));
}

inline Family read_family(std::istream& in) {
    std::vector<KSet> members;
    std::map<KSet, std::size_t> seen;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string_view body = detail::trim(line);
        if (body.empty() || body.front() == '#')
            continue;
        KSet set = parse_kset(body, line_no);
        const auto [it, inserted] = seen.emplace(set, line_no);
        if (!inserted)
            throw parse_error(line_no, "duplicate set (first seen on line " + std::to_string(it->second) + ")");
        members.push_back(std::move(set));
    }
    return Family(std::move(members));
}

inline void write_family(std::ostream& out, const Family& family) {
    for (const KSet& s : family)
        out << s.to_string() << '\n';
}

} // namespace sidonkit
