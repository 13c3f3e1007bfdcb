#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace vbp::formula {

enum class TokenKind {
    number,
    text,
    ident,
    lparen,
    rparen,
    comma,
    colon,
    bang,
    plus,
    minus,
    star,
    slash,
    caret,
    eq,
    ne,
    lt,
    le,
    gt,
    ge,
};

struct Token {
    TokenKind kind;
    std::string text; // identifier spelling or unescaped text literal
    double number = 0.0;
    std::size_t begin = 0; // source span [begin, end)
    std::size_t end = 0;
};

/// Splits formula text (no leading '=') into tokens. Identifiers cover
/// names, function names, TRUE/FALSE and A1 references, '$' included.
/// Throws ParseError on an illegal character.
std::vector<Token> tokenize(std::string_view text);

std::string_view token_kind_name(TokenKind kind);

} // namespace vbp::formula
