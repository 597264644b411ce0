#include "urel/parser.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "urel/errors.hpp"

namespace urel {

namespace {

enum class TokKind { Ident, Number, String, Punct, End };

struct Token {
    TokKind kind;
    std::string text;   // idents lowercased separately on demand
    std::size_t pos;
};

struct Lexer {
    const std::string& src;
    std::size_t pos = 0;
    Token current;

    explicit Lexer(const std::string& s) : src(s) { advance(); }

    void advance() {
        while (pos < src.size() && std::isspace(static_cast<unsigned char>(src[pos]))) ++pos;
        current.pos = pos;
        if (pos >= src.size()) {
            current = {TokKind::End, "", pos};
            return;
        }
        char c = src[pos];
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos;
            while (pos < src.size() &&
                   (std::isalnum(static_cast<unsigned char>(src[pos])) || src[pos] == '_' ||
                    src[pos] == '.'))
                ++pos;
            current = {TokKind::Ident, src.substr(start, pos - start), start};
            return;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) ||
            ((c == '-' || c == '+') && pos + 1 < src.size() &&
             std::isdigit(static_cast<unsigned char>(src[pos + 1])))) {
            std::size_t start = pos;
            ++pos;
            while (pos < src.size() && (std::isdigit(static_cast<unsigned char>(src[pos])) ||
                                        src[pos] == '.'))
                ++pos;
            current = {TokKind::Number, src.substr(start, pos - start), start};
            return;
        }
        if (c == '\'') {
            std::size_t start = ++pos;
            while (pos < src.size() && src[pos] != '\'') ++pos;
            if (pos >= src.size()) throw SyntaxError(start, "unterminated string literal");
            current = {TokKind::String, src.substr(start, pos - start), start - 1};
            ++pos;
            return;
        }
        // multi-char operators first
        for (const char* op : {"<>", "<=", ">="}) {
            if (src.compare(pos, 2, op) == 0) {
                current = {TokKind::Punct, op, pos};
                pos += 2;
                return;
            }
        }
        if (std::string("=<>,()*").find(c) != std::string::npos) {
            current = {TokKind::Punct, std::string(1, c), pos};
            ++pos;
            return;
        }
        throw SyntaxError(pos, std::string("unexpected character '") + c + "'");
    }
};

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

struct Parser {
    Lexer lex;

    explicit Parser(const std::string& s) : lex(s) {}

    bool atKeyword(const char* kw) const {
        return lex.current.kind == TokKind::Ident && lower(lex.current.text) == kw;
    }

    bool acceptKeyword(const char* kw) {
        if (!atKeyword(kw)) return false;
        lex.advance();
        return true;
    }

    void expectKeyword(const char* kw) {
        if (!acceptKeyword(kw))
            throw SyntaxError(lex.current.pos, std::string("expected '") + kw + "'");
    }

    bool acceptPunct(const char* p) {
        if (lex.current.kind != TokKind::Punct || lex.current.text != p) return false;
        lex.advance();
        return true;
    }

    void expectPunct(const char* p) {
        if (!acceptPunct(p))
            throw SyntaxError(lex.current.pos, std::string("expected '") + p + "'");
    }

    std::string expectIdent(const char* what) {
        if (lex.current.kind != TokKind::Ident)
            throw SyntaxError(lex.current.pos, std::string("expected ") + what);
        std::string s = lex.current.text;
        lex.advance();
        return s;
    }

    Operand parseOperand() {
        if (lex.current.kind == TokKind::Number) {
            Value v = Value::parse(lex.current.text);
            lex.advance();
            return Operand::lit(std::move(v));
        }
        if (lex.current.kind == TokKind::String) {
            // Quoted ISO dates compare against date columns; everything else
            // stays a string.
            Value v = Value::parse(lex.current.text);
            if (v.tag() != ValueTag::Date) v = Value::string(lex.current.text);
            lex.advance();
            return Operand::lit(std::move(v));
        }
        if (atKeyword("date")) {
            lex.advance();
            if (lex.current.kind != TokKind::String)
                throw SyntaxError(lex.current.pos, "expected quoted date literal");
            Value v = Value::date(lex.current.text);
            lex.advance();
            return Operand::lit(std::move(v));
        }
        return Operand::col(expectIdent("column reference or literal"));
    }

    CmpOp parseOp() {
        if (lex.current.kind != TokKind::Punct)
            throw SyntaxError(lex.current.pos, "expected comparison operator");
        const std::string& t = lex.current.text;
        CmpOp op;
        if (t == "=") op = CmpOp::Eq;
        else if (t == "<>") op = CmpOp::Ne;
        else if (t == "<") op = CmpOp::Lt;
        else if (t == ">") op = CmpOp::Gt;
        else if (t == "<=") op = CmpOp::Le;
        else if (t == ">=") op = CmpOp::Ge;
        else throw SyntaxError(lex.current.pos, "expected comparison operator");
        lex.advance();
        return op;
    }

    Condition parseConjunction() {
        Condition cond;
        do {
            CondAtom atom;
            atom.lhs = parseOperand();
            atom.op = parseOp();
            atom.rhs = parseOperand();
            cond.push_back(std::move(atom));
        } while (acceptKeyword("and"));
        return cond;
    }

    LogicalPtr parseSelect() {
        expectKeyword("select");
        std::vector<std::pair<std::string, std::string>> proj;
        bool star = false;
        if (acceptPunct("*")) {
            star = true;
        } else {
            do {
                std::string col = expectIdent("column name");
                std::size_t dot = col.rfind('.');
                proj.emplace_back(col, dot == std::string::npos ? col : col.substr(dot + 1));
            } while (acceptPunct(","));
        }

        expectKeyword("from");
        std::vector<std::pair<std::string, std::string>> rels;  // (name, alias)
        std::set<std::string> aliases;
        do {
            std::string name = expectIdent("relation name");
            std::string alias = name;
            if (lex.current.kind == TokKind::Ident && !atKeyword("where") &&
                !atKeyword("union")) {
                alias = expectIdent("alias");
            }
            if (!aliases.insert(alias).second)
                throw SyntaxError(lex.current.pos, "duplicate alias '" + alias + "'");
            rels.emplace_back(std::move(name), std::move(alias));
        } while (acceptPunct(","));

        Condition where;
        if (acceptKeyword("where")) where = parseConjunction();

        LogicalPtr body = makeRelation(rels[0].first, rels[0].second);
        for (std::size_t i = 1; i < rels.size(); ++i)
            body = makeJoin({}, body, makeRelation(rels[i].first, rels[i].second));
        if (!where.empty()) body = makeSelect(std::move(where), std::move(body));
        return makeProject(std::move(proj), star, std::move(body));
    }

    LogicalPtr parseQuery() {
        LogicalPtr q;
        if (acceptKeyword("possible")) {
            bool paren = acceptPunct("(");
            q = parseSelect();
            if (paren) expectPunct(")");
            q = makePoss(std::move(q));
        } else {
            q = parseSelect();
            if (acceptKeyword("union")) q = makeUnion(std::move(q), parseSelect());
        }
        if (atKeyword("possible"))
            throw SyntaxError(lex.current.pos, "possible may only appear outermost");
        if (lex.current.kind != TokKind::End)
            throw SyntaxError(lex.current.pos, "trailing input after query");
        return q;
    }
};

}  // namespace

LogicalPtr parseQuery(const std::string& text) { return Parser(text).parseQuery(); }

}  // namespace urel
