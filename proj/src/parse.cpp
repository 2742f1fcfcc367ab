#include "kwcalc/parse.hpp"

#include <cctype>

#include "kwcalc/errors.hpp"

namespace kw {

namespace {

class Cursor {
public:
    explicit Cursor(const std::string& text) : s_(text) {}

    void skip_ws() {
        while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
    }
    bool eof() {
        skip_ws();
        return i_ >= s_.size();
    }
    char peek() {
        skip_ws();
        return i_ < s_.size() ? s_[i_] : '\0';
    }
    std::size_t pos() {
        skip_ws();
        return i_;
    }
    bool accept(char c) {
        skip_ws();
        if (i_ < s_.size() && s_[i_] == c) {
            ++i_;
            return true;
        }
        return false;
    }
    void expect(char c, const char* what) {
        if (!accept(c)) throw ParseError(std::string("expected ") + what, pos());
    }

    std::string digits() {
        skip_ws();
        std::size_t start = i_;
        while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
        if (start == i_) throw ParseError("expected a number", start);
        return s_.substr(start, i_ - start);
    }

    std::string letters() {
        skip_ws();
        std::size_t start = i_;
        while (i_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[i_]))) ++i_;
        return s_.substr(start, i_ - start);
    }

private:
    const std::string& s_;
    std::size_t i_ = 0;
};

Ast parse_expr(Cursor& cur);

Ast parse_atom(Cursor& cur) {
    const std::size_t at = cur.pos();
    const char c = cur.peek();
    if (c == '(') {
        cur.accept('(');
        Ast inner = parse_expr(cur);
        cur.expect(')', "')'");
        return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
        std::string num = cur.digits();
        Ast node;
        node.kind = Ast::Kind::Number;
        node.pos = at;
        if (cur.accept('/')) {
            std::string den = cur.digits();
            node.number = Rational::parse(num + "/" + den);
        } else {
            node.number = Rational::parse(num);
        }
        return node;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
        std::string name = cur.letters();
        Ast node;
        node.kind = Ast::Kind::Coord;
        node.pos = at;
        if (name == "x")
            node.coord_kind = CoordKind::X;
        else if (name == "xi")
            node.coord_kind = CoordKind::Xi;
        else if (name == "p")
            node.coord_kind = CoordKind::P;
        else
            throw ParseError("unknown coordinate '" + name + "'", at);
        node.coord_index = std::stoi(cur.digits());
        return node;
    }
    throw ParseError("expected a rational, a coordinate or '('", at);
}

Ast parse_factor(Cursor& cur) {
    Ast base = parse_atom(cur);
    if (cur.accept('^')) {
        Ast node;
        node.kind = Ast::Kind::Power;
        node.pos = base.pos;
        node.exponent = static_cast<unsigned>(std::stoul(cur.digits()));
        node.children.push_back(std::move(base));
        return node;
    }
    return base;
}

Ast parse_term(Cursor& cur) {
    Ast node;
    node.kind = Ast::Kind::Term;
    node.pos = cur.pos();
    node.sign = 1;
    if (cur.accept('-'))
        node.sign = -1;
    else
        cur.accept('+');
    node.children.push_back(parse_factor(cur));
    while (cur.accept('*')) node.children.push_back(parse_factor(cur));
    return node;
}

Ast parse_expr(Cursor& cur) {
    Ast node;
    node.kind = Ast::Kind::Sum;
    node.pos = cur.pos();
    node.children.push_back(parse_term(cur));
    node.signs.push_back(1);
    while (true) {
        if (cur.peek() == '+' || cur.peek() == '-') {
            const int s = cur.accept('+') ? 1 : (cur.accept('-'), -1);
            node.children.push_back(parse_term(cur));
            node.signs.push_back(s);
        } else {
            break;
        }
    }
    return node;
}

} // namespace

Ast parse(const std::string& text) {
    Cursor cur(text);
    Ast root = parse_expr(cur);
    if (!cur.eof()) throw ParseError("unexpected trailing input", cur.pos());
    return root;
}

GradedElement to_element(const Ast& ast, const SpecPtr& spec) {
    switch (ast.kind) {
        case Ast::Kind::Number:
            return GradedElement::constant(spec, ast.number);
        case Ast::Kind::Coord: {
            try {
                return GradedElement::coordinate(spec, ast.coord_kind, ast.coord_index);
            } catch (const Error& e) {
                throw ParseError(e.what(), ast.pos);
            }
        }
        case Ast::Kind::Power: {
            GradedElement base = to_element(ast.children.front(), spec);
            GradedElement out = GradedElement::constant(spec, 1);
            for (unsigned k = 0; k < ast.exponent; ++k) out = out * base;
            return out;
        }
        case Ast::Kind::Term: {
            GradedElement out = GradedElement::constant(spec, ast.sign);
            for (const Ast& child : ast.children) out = out * to_element(child, spec);
            return out;
        }
        case Ast::Kind::Sum: {
            GradedElement out = GradedElement::zero(spec);
            for (std::size_t i = 0; i < ast.children.size(); ++i) {
                GradedElement term = to_element(ast.children[i], spec);
                out = ast.signs[i] > 0 ? out + term : out - term;
            }
            return out;
        }
    }
    throw Error("unreachable expression node");
}

GradedElement parse_element(const SpecPtr& spec, const std::string& text) {
    return to_element(parse(text), spec);
}

} // namespace kw
