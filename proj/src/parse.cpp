#include "jetgeo/expr.hpp"

#include <cctype>
#include <cstdlib>

namespace jetgeo {

namespace {

struct Parser {
    const std::string& text;
    const std::vector<std::string>& vars;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }
    bool at_end() {
        skip_ws();
        return pos >= text.size();
    }
    char peek() {
        skip_ws();
        return pos < text.size() ? text[pos] : '\0';
    }
    bool accept(char c) {
        if (peek() == c) {
            ++pos;
            return true;
        }
        return false;
    }
    void expect(char c, const char* what) {
        if (!accept(c)) throw SyntaxError(std::string("expected ") + what, pos);
    }

    Ast parse_expr() {
        Ast lhs = parse_term();
        for (;;) {
            if (accept('+')) {
                Ast n;
                n.kind = AstKind::Add;
                n.children = {std::move(lhs), parse_term()};
                lhs = std::move(n);
            } else if (accept('-')) {
                Ast n;
                n.kind = AstKind::Sub;
                n.children = {std::move(lhs), parse_term()};
                lhs = std::move(n);
            } else {
                return lhs;
            }
        }
    }

    Ast parse_term() {
        Ast lhs = parse_unary();
        for (;;) {
            if (accept('*')) {
                Ast n;
                n.kind = AstKind::Mul;
                n.children = {std::move(lhs), parse_unary()};
                lhs = std::move(n);
            } else if (accept('/')) {
                Ast n;
                n.kind = AstKind::Div;
                n.children = {std::move(lhs), parse_unary()};
                // "p/q" is a rational literal, not a deferred division.
                if (n.children[0].kind == AstKind::Number &&
                    n.children[1].kind == AstKind::Number &&
                    !n.children[1].number.is_zero()) {
                    Ast folded;
                    folded.kind = AstKind::Number;
                    folded.number = n.children[0].number / n.children[1].number;
                    lhs = std::move(folded);
                } else {
                    lhs = std::move(n);
                }
            } else {
                return lhs;
            }
        }
    }

    Ast parse_unary() {
        if (accept('-')) {
            Ast inner = parse_unary();
            if (inner.kind == AstKind::Number) {
                inner.number = -inner.number;
                return inner;
            }
            Ast n;
            n.kind = AstKind::Neg;
            n.children = {std::move(inner)};
            return n;
        }
        return parse_power();
    }

    Ast parse_power() {
        Ast base = parse_atom();
        if (accept('^')) {
            Ast n;
            n.kind = AstKind::Pow;
            n.exponent = parse_exponent();
            n.children = {std::move(base)};
            return n;
        }
        return base;
    }

    // exponent := ['-'] integer ['^' exponent], folded to a single integer.
    // A negative intermediate result would leave the integers, so only the
    // outermost sign may be negative.
    long parse_exponent() {
        skip_ws();
        bool neg = false;
        if (accept('-')) neg = true;
        skip_ws();
        if (pos >= text.size() || !std::isdigit(static_cast<unsigned char>(text[pos])))
            throw SyntaxError("exponent must be an integer literal", pos);
        long v = 0;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
            v = v * 10 + (text[pos] - '0');
            if (v > 1000000) throw SyntaxError("exponent too large", pos);
            ++pos;
        }
        if (pos < text.size() && text[pos] == '.')
            throw SyntaxError("exponent must be an integer literal", pos);
        if (accept('^')) {
            long e = parse_exponent();
            if (e < 0) throw SyntaxError("exponent must be an integer literal", pos);
            long r = 1;
            for (long i = 0; i < e; ++i) {
                r *= v;
                if (r > 1000000 || r < -1000000)
                    throw SyntaxError("exponent too large", pos);
            }
            v = r;
        }
        return neg ? -v : v;
    }

    Ast parse_atom() {
        skip_ws();
        if (pos >= text.size()) throw SyntaxError("expected an operand", pos);
        char c = text[pos];
        if (c == '(') {
            ++pos;
            Ast inner = parse_expr();
            expect(')', "')'");
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return parse_ident();
        throw SyntaxError("expected an operand", pos);
    }

    Ast parse_number() {
        std::size_t start = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        if (pos < text.size() && text[pos] == '.') {
            ++pos;
            while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        }
        std::string lit = text.substr(start, pos - start);
        if (lit == "." || lit.empty()) throw SyntaxError("malformed number", start);
        Ast n;
        n.kind = AstKind::Number;
        n.number = Rational::from_string(lit);
        return n;
    }

    Ast parse_ident() {
        std::size_t start = pos;
        while (pos < text.size() &&
               (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
            ++pos;
        std::string name = text.substr(start, pos - start);
        skip_ws();
        if (pos < text.size() && text[pos] == '(') {
            ++pos;
            FuncTag tag;
            if (name == "recip") tag = FuncTag::Recip;
            else if (name == "sqrt") tag = FuncTag::Sqrt;
            else if (name == "sin") tag = FuncTag::Sin;
            else if (name == "cos") tag = FuncTag::Cos;
            else if (name == "exp") tag = FuncTag::Exp;
            else if (name == "log") tag = FuncTag::Log;
            else if (name == "tanh") tag = FuncTag::Tanh;
            else throw SyntaxError("unknown function '" + name + "'", start);
            Ast n;
            n.kind = AstKind::Call;
            n.func = tag;
            n.children = {parse_expr()};
            expect(')', "')'");
            return n;
        }
        for (std::size_t i = 0; i < vars.size(); ++i) {
            if (vars[i] == name) {
                Ast n;
                n.kind = AstKind::Var;
                n.name = name;
                n.var_index = i;
                return n;
            }
        }
        throw SyntaxError("unknown identifier '" + name + "'", start);
    }
};

int precedence(AstKind k) {
    switch (k) {
        case AstKind::Add:
        case AstKind::Sub: return 1;
        case AstKind::Mul:
        case AstKind::Div: return 2;
        case AstKind::Neg: return 3;
        case AstKind::Pow: return 4;
        default: return 5;
    }
}

void print_node(const Ast& ast, std::string& out);

void print_child(const Ast& child, int parent_prec, bool tight_side, std::string& out) {
    int p = precedence(child.kind);
    bool parens = tight_side ? p <= parent_prec : p < parent_prec;
    // Negative or fractional literals reparse through unary minus and
    // division; parentheses keep them a single operand.
    if (child.kind == AstKind::Number &&
        (child.number.sign() < 0 || !child.number.is_integer()))
        parens = true;
    if (parens) out += '(';
    print_node(child, out);
    if (parens) out += ')';
}

void print_node(const Ast& ast, std::string& out) {
    switch (ast.kind) {
        case AstKind::Number: {
            // Integers print bare; other rationals keep the p/q form, which
            // reparses as an exact division of integer literals.
            std::string s = ast.number.str();
            auto slash = s.find('/');
            if (s.substr(slash + 1) == "1") s = s.substr(0, slash);
            out += s;
            return;
        }
        case AstKind::Var: out += ast.name; return;
        case AstKind::Neg:
            out += '-';
            print_child(ast.children[0], precedence(AstKind::Neg), true, out);
            return;
        case AstKind::Add:
        case AstKind::Sub: {
            int p = precedence(ast.kind);
            print_child(ast.children[0], p, false, out);
            out += ast.kind == AstKind::Add ? " + " : " - ";
            print_child(ast.children[1], p, true, out);
            return;
        }
        case AstKind::Mul:
        case AstKind::Div: {
            int p = precedence(ast.kind);
            print_child(ast.children[0], p, false, out);
            out += ast.kind == AstKind::Mul ? "*" : "/";
            print_child(ast.children[1], p, true, out);
            return;
        }
        case AstKind::Pow:
            print_child(ast.children[0], precedence(AstKind::Pow), true, out);
            out += '^';
            if (ast.exponent < 0) out += '-';
            out += std::to_string(ast.exponent < 0 ? -ast.exponent : ast.exponent);
            return;
        case AstKind::Call:
            out += func_name(ast.func);
            out += '(';
            print_node(ast.children[0], out);
            out += ')';
            return;
    }
}

} // namespace

Ast parse(const std::string& text, const std::vector<std::string>& vars) {
    Parser p{text, vars};
    if (p.at_end()) throw SyntaxError("empty expression", 0);
    Ast ast = p.parse_expr();
    if (!p.at_end()) throw SyntaxError("unexpected trailing input", p.pos);
    return ast;
}

std::string print(const Ast& ast) {
    std::string out;
    print_node(ast, out);
    return out;
}

} // namespace jetgeo
