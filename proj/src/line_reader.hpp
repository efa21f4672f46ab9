#pragma once

// Internal helper shared by the text-format parsers. Splits input into
// comment-stripped token lines with source positions for error reporting.

#include <cctype>
#include <string>
#include <vector>

#include "pcsp/errors.hpp"

namespace pcsp::detail {

struct Token {
    std::string text;
    int column = 0; // 1-based
};

struct TokenLine {
    int line = 0; // 1-based
    std::vector<Token> tokens;
};

inline bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
inline bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

inline bool is_identifier(const std::string & s)
{
    if (s.empty() || ! is_ident_start(s[0]))
        return false;
    for (char c : s)
        if (! is_ident_char(c))
            return false;
    return true;
}

/// Tokenizes one line. Punctuation characters '(', ')', ',' and '=' become
/// single-character tokens; everything else splits on whitespace. A '#'
/// discards the rest of the line.
inline std::vector<Token> tokenize_line(const std::string & line)
{
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < line.size()) {
        char c = line[i];
        if (c == '#')
            break;
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        if (c == '(' || c == ')' || c == ',' || c == '=') {
            out.push_back({std::string(1, c), static_cast<int>(i) + 1});
            ++i;
            continue;
        }
        std::size_t start = i;
        while (i < line.size() && ! std::isspace(static_cast<unsigned char>(line[i])) &&
               line[i] != '(' && line[i] != ')' && line[i] != ',' && line[i] != '=' &&
               line[i] != '#')
            ++i;
        out.push_back({line.substr(start, i - start), static_cast<int>(start) + 1});
    }
    return out;
}

/// All non-empty token lines of the input.
inline std::vector<TokenLine> tokenize(const std::string & text)
{
    std::vector<TokenLine> out;
    int line_no = 1;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t nl = text.find('\n', pos);
        std::string line = text.substr(pos, nl == std::string::npos ? std::string::npos : nl - pos);
        auto tokens = tokenize_line(line);
        if (! tokens.empty())
            out.push_back({line_no, std::move(tokens)});
        if (nl == std::string::npos)
            break;
        pos = nl + 1;
        ++line_no;
    }
    return out;
}

inline int parse_int(const Token & tok, int line)
{
    try {
        std::size_t used = 0;
        int v = std::stoi(tok.text, &used);
        if (used != tok.text.size())
            throw std::invalid_argument("trailing characters");
        return v;
    }
    catch (const std::exception &) {
        throw ParseError(line, tok.column, "expected an integer, got '" + tok.text + "'");
    }
}

} // namespace pcsp::detail
