#pragma once

#include "halving/errors.hpp"
#include "halving/kernel.hpp"

#include <cctype>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace halving::detail {

struct Token {
    std::string_view text;
    std::size_t column;  // 1-based
};

struct ContentLine {
    std::size_t number;  // 1-based
    std::vector<Token> tokens;
};

/// Whitespace-separated tokens of every non-blank line, '#' comments removed.
inline std::vector<ContentLine> content_lines(std::string_view text) {
    std::vector<ContentLine> out;
    std::size_t number = 0;
    std::size_t pos = 0;
    while (pos < text.size()) {
        auto eol = text.find('\n', pos);
        if (eol == std::string_view::npos) eol = text.size();
        std::string_view line = text.substr(pos, eol - pos);
        pos = eol + 1;
        ++number;
        if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);

        ContentLine cl{number, {}};
        std::size_t i = 0;
        while (i < line.size()) {
            while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
            const std::size_t start = i;
            while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
            if (i > start) cl.tokens.push_back({line.substr(start, i - start), start + 1});
        }
        if (!cl.tokens.empty()) out.push_back(std::move(cl));
    }
    return out;
}

/// Joins a line's tokens with single spaces.
inline std::string joined(const ContentLine& line) {
    std::string s;
    for (const auto& t : line.tokens) {
        if (!s.empty()) s += ' ';
        s += t.text;
    }
    return s;
}

inline Scalar scalar_at(const ContentLine& line, std::size_t token) {
    try {
        return parse_scalar(line.tokens[token].text);
    } catch (const NonRationalNumber& e) {
        throw NonRationalNumber("line " + std::to_string(line.number) + ", column " +
                                std::to_string(line.tokens[token].column) + ": " + e.what());
    }
}

inline Point point_at(const ContentLine& line) {
    if (line.tokens.size() != 2) {
        const std::size_t col = line.tokens.size() > 2 ? line.tokens[2].column : 0;
        throw ParseError("expected exactly two coordinates", line.number, col);
    }
    return Point(scalar_at(line, 0), scalar_at(line, 1));
}

inline bool looks_like_json(std::string_view text) {
    for (char c : text) {
        if (std::isspace(static_cast<unsigned char>(c))) continue;
        return c == '{';
    }
    return false;
}

}  // namespace halving::detail
