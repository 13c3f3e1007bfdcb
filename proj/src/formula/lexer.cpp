#include "vbp/formula/lexer.hpp"

#include "vbp/errors.hpp"

#include <cctype>
#include <charconv>

namespace vbp::formula {

namespace {

bool ident_start(char c)
{
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == '$';
}

bool ident_char(char c)
{
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == '$';
}

bool digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }

} // namespace

std::vector<Token> tokenize(std::string_view text)
{
    std::vector<Token> out;
    std::size_t i = 0;
    auto push = [&](TokenKind k, std::size_t len) {
        out.push_back({k, std::string(text.substr(i, len)), 0.0, i, i + len});
        i += len;
    };
    while (i < text.size()) {
        char c = text[i];
        if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
            ++i;
            continue;
        }
        if (digit(c) || (c == '.' && i + 1 < text.size() && digit(text[i + 1]))) {
            std::size_t j = i;
            while (j < text.size() && digit(text[j]))
                ++j;
            if (j < text.size() && text[j] == '.') {
                ++j;
                while (j < text.size() && digit(text[j]))
                    ++j;
            }
            if (j < text.size() && (text[j] == 'e' || text[j] == 'E')) {
                std::size_t k = j + 1;
                if (k < text.size() && (text[k] == '+' || text[k] == '-'))
                    ++k;
                if (k < text.size() && digit(text[k])) {
                    while (k < text.size() && digit(text[k]))
                        ++k;
                    j = k;
                }
            }
            Token t{TokenKind::number, std::string(text.substr(i, j - i)), 0.0, i, j};
            auto res = std::from_chars(text.data() + i, text.data() + j, t.number);
            if (res.ec != std::errc() || res.ptr != text.data() + j)
                throw ParseError("malformed number '" + t.text + "'", i);
            out.push_back(std::move(t));
            i = j;
            continue;
        }
        if (c == '"') {
            std::string lit;
            std::size_t j = i + 1;
            for (;;) {
                if (j >= text.size())
                    throw ParseError("unterminated text literal", i);
                if (text[j] == '"') {
                    if (j + 1 < text.size() && text[j + 1] == '"') {
                        lit.push_back('"');
                        j += 2;
                        continue;
                    }
                    ++j;
                    break;
                }
                lit.push_back(text[j++]);
            }
            out.push_back({TokenKind::text, std::move(lit), 0.0, i, j});
            i = j;
            continue;
        }
        if (ident_start(c)) {
            std::size_t j = i + 1;
            while (j < text.size() && ident_char(text[j]))
                ++j;
            push(TokenKind::ident, j - i);
            continue;
        }
        switch (c) {
        case '(': push(TokenKind::lparen, 1); continue;
        case ')': push(TokenKind::rparen, 1); continue;
        case ',': push(TokenKind::comma, 1); continue;
        case ':': push(TokenKind::colon, 1); continue;
        case '!': push(TokenKind::bang, 1); continue;
        case '+': push(TokenKind::plus, 1); continue;
        case '-': push(TokenKind::minus, 1); continue;
        case '*': push(TokenKind::star, 1); continue;
        case '/': push(TokenKind::slash, 1); continue;
        case '^': push(TokenKind::caret, 1); continue;
        case '=': push(TokenKind::eq, 1); continue;
        case '<':
            if (i + 1 < text.size() && text[i + 1] == '>')
                push(TokenKind::ne, 2);
            else if (i + 1 < text.size() && text[i + 1] == '=')
                push(TokenKind::le, 2);
            else
                push(TokenKind::lt, 1);
            continue;
        case '>':
            if (i + 1 < text.size() && text[i + 1] == '=')
                push(TokenKind::ge, 2);
            else
                push(TokenKind::gt, 1);
            continue;
        default: break;
        }
        throw ParseError(std::string("illegal character '") + c + "'", i);
    }
    return out;
}

std::string_view token_kind_name(TokenKind kind)
{
    switch (kind) {
    case TokenKind::number: return "number";
    case TokenKind::text: return "text";
    case TokenKind::ident: return "identifier";
    case TokenKind::lparen: return "'('";
    case TokenKind::rparen: return "')'";
    case TokenKind::comma: return "','";
    case TokenKind::colon: return "':'";
    case TokenKind::bang: return "'!'";
    case TokenKind::plus: return "'+'";
    case TokenKind::minus: return "'-'";
    case TokenKind::star: return "'*'";
    case TokenKind::slash: return "'/'";
    case TokenKind::caret: return "'^'";
    case TokenKind::eq: return "'='";
    case TokenKind::ne: return "'<>'";
    case TokenKind::lt: return "'<'";
    case TokenKind::le: return "'<='";
    case TokenKind::gt: return "'>'";
    case TokenKind::ge: return "'>='";
    }
    return "token";
}

} // namespace vbp::formula
