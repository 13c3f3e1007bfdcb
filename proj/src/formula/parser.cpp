#include "vbp/formula/parser.hpp"

#include "vbp/errors.hpp"
#include "vbp/formula/builtins.hpp"
#include "vbp/formula/lexer.hpp"

#include <cctype>
#include <optional>

namespace vbp::formula {

namespace {

bool iequal(std::string_view a, std::string_view b)
{
    if (a.size() != b.size())
        return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (std::toupper(static_cast<unsigned char>(a[i])) != std::toupper(static_cast<unsigned char>(b[i])))
            return false;
    return true;
}

std::optional<RefPart> ref_part(std::string_view text)
{
    auto coord = grid::match_a1(text);
    if (!coord)
        return std::nullopt;
    RefPart p;
    p.coord = *coord;
    p.abs_col = text.front() == '$';
    p.abs_row = text.find('$', 1) != std::string_view::npos;
    return p;
}

class Parser {
public:
    Parser(std::vector<Token> tokens, std::size_t length, std::size_t offset)
        : toks_(std::move(tokens)), length_(length), offset_(offset) {}

    Ast parse()
    {
        if (toks_.empty())
            throw ParseError("empty formula", offset_);
        Ast e = comparison();
        if (pos_ != toks_.size())
            unexpected();
        return e;
    }

private:
    const Token* peek() const { return pos_ < toks_.size() ? &toks_[pos_] : nullptr; }

    bool at(TokenKind k) const { return pos_ < toks_.size() && toks_[pos_].kind == k; }

    [[noreturn]] void unexpected() const
    {
        if (pos_ >= toks_.size())
            throw ParseError("unexpected end of formula", offset_ + length_);
        const Token& t = toks_[pos_];
        std::string shown = t.kind == TokenKind::ident || t.kind == TokenKind::number
                                ? "'" + t.text + "'"
                                : std::string(token_kind_name(t.kind));
        throw ParseError("unexpected " + shown, offset_ + t.begin);
    }

    const Token& expect(TokenKind k)
    {
        if (!at(k))
            unexpected();
        return toks_[pos_++];
    }

    Ast comparison()
    {
        Ast lhs = additive();
        for (;;) {
            BinOp op;
            if (at(TokenKind::eq))
                op = BinOp::eq;
            else if (at(TokenKind::ne))
                op = BinOp::ne;
            else if (at(TokenKind::lt))
                op = BinOp::lt;
            else if (at(TokenKind::le))
                op = BinOp::le;
            else if (at(TokenKind::gt))
                op = BinOp::gt;
            else if (at(TokenKind::ge))
                op = BinOp::ge;
            else
                return lhs;
            ++pos_;
            lhs = make_binary(op, std::move(lhs), additive());
        }
    }

    Ast additive()
    {
        Ast lhs = multiplicative();
        while (at(TokenKind::plus) || at(TokenKind::minus)) {
            BinOp op = toks_[pos_++].kind == TokenKind::plus ? BinOp::add : BinOp::sub;
            lhs = make_binary(op, std::move(lhs), multiplicative());
        }
        return lhs;
    }

    Ast multiplicative()
    {
        Ast lhs = power();
        while (at(TokenKind::star) || at(TokenKind::slash)) {
            BinOp op = toks_[pos_++].kind == TokenKind::star ? BinOp::mul : BinOp::div;
            lhs = make_binary(op, std::move(lhs), power());
        }
        return lhs;
    }

    Ast power()
    {
        Ast base = unary();
        if (at(TokenKind::caret)) {
            ++pos_;
            return make_binary(BinOp::pow, std::move(base), power());
        }
        return base;
    }

    Ast unary()
    {
        if (at(TokenKind::minus) || at(TokenKind::plus)) {
            char op = toks_[pos_++].kind == TokenKind::minus ? '-' : '+';
            return make_unary(op, unary());
        }
        return primary();
    }

    Ast primary()
    {
        const Token* t = peek();
        if (!t)
            unexpected();
        switch (t->kind) {
        case TokenKind::number: ++pos_; return make_number(t->number);
        case TokenKind::text: ++pos_; return make_text(t->text);
        case TokenKind::lparen: {
            ++pos_;
            Ast inner = comparison();
            expect(TokenKind::rparen);
            return inner;
        }
        case TokenKind::ident: return identifier();
        default: unexpected();
        }
    }

    Ast identifier()
    {
        const Token& id = toks_[pos_++];
        if (at(TokenKind::lparen))
            return call(id);
        if (at(TokenKind::bang)) {
            ++pos_;
            if (id.text.find('$') != std::string::npos)
                throw ParseError("unexpected character '$' in sheet name", offset_ + id.begin);
            return reference(id.text, expect_ref_token());
        }
        if (auto part = ref_part(id.text))
            return reference({}, {id, *part});
        if (iequal(id.text, "TRUE"))
            return make_boolean(true);
        if (iequal(id.text, "FALSE"))
            return make_boolean(false);
        if (!is_valid_name(id.text)) {
            auto dollar = id.text.find('$');
            throw ParseError("malformed reference or name '" + id.text + "'",
                             offset_ + id.begin + (dollar == std::string::npos ? 0 : dollar));
        }
        return make_name(id.text);
    }

    struct RefToken {
        const Token& token;
        RefPart part;
    };

    RefToken expect_ref_token()
    {
        const Token& t = expect(TokenKind::ident);
        auto part = ref_part(t.text);
        if (!part)
            throw ParseError("expected a cell reference, found '" + t.text + "'", offset_ + t.begin);
        return {t, *part};
    }

    Ast reference(std::string sheet, RefToken first)
    {
        auto n = std::make_unique<Node>();
        n->text = std::move(sheet);
        n->first = first.part;
        if (!at(TokenKind::colon)) {
            n->kind = NodeKind::cell;
            return n;
        }
        ++pos_;
        RefToken second = expect_ref_token();
        n->kind = NodeKind::range;
        n->second = second.part;
        // Normalise so that `first` is the top-left corner.
        if (n->first.coord.row > n->second.coord.row) {
            std::swap(n->first.coord.row, n->second.coord.row);
            std::swap(n->first.abs_row, n->second.abs_row);
        }
        if (n->first.coord.col > n->second.coord.col) {
            std::swap(n->first.coord.col, n->second.coord.col);
            std::swap(n->first.abs_col, n->second.abs_col);
        }
        return n;
    }

    Ast call(const Token& id)
    {
        const BuiltinInfo* info = find_builtin(id.text);
        if (!info)
            throw ParseError("unknown function '" + id.text + "'", offset_ + id.begin);
        expect(TokenKind::lparen);
        std::vector<Ast> args;
        if (at(TokenKind::rparen)) {
            ++pos_;
        } else {
            for (;;) {
                if (at(TokenKind::comma) || at(TokenKind::rparen))
                    args.push_back(std::make_unique<Node>()); // omitted
                else
                    args.push_back(comparison());
                if (at(TokenKind::comma)) {
                    ++pos_;
                    continue;
                }
                expect(TokenKind::rparen);
                break;
            }
        }
        int n = static_cast<int>(args.size());
        if (n < info->min_args || (info->max_args >= 0 && n > info->max_args)) {
            std::string expected = info->max_args < 0 ? "at least " + std::to_string(info->min_args)
                                   : info->min_args == info->max_args
                                       ? std::to_string(info->min_args)
                                       : std::to_string(info->min_args) + " to " + std::to_string(info->max_args);
            throw ParseError(std::string(info->name) + " takes " + expected + " argument(s), got " +
                                 std::to_string(n),
                             offset_ + id.begin);
        }
        return make_call(info->id, std::move(args));
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    std::size_t length_;
    std::size_t offset_;
};

} // namespace

Ast parse_formula(std::string_view text)
{
    std::size_t offset = 0;
    if (!text.empty() && text.front() == '=') {
        text.remove_prefix(1);
        offset = 1;
    }
    std::vector<Token> toks;
    try {
        toks = tokenize(text);
    } catch (const ParseError& e) {
        throw ParseError(e.what(), e.position() + offset);
    }
    return Parser(std::move(toks), text.size(), offset).parse();
}

bool is_valid_name(std::string_view text)
{
    if (text.empty())
        return false;
    char c0 = text.front();
    if (!std::isalpha(static_cast<unsigned char>(c0)) && c0 != '_')
        return false;
    for (char c : text)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '.')
            return false;
    if (grid::match_a1(text))
        return false;
    if (iequal(text, "TRUE") || iequal(text, "FALSE"))
        return false;
    return true;
}

} // namespace vbp::formula
