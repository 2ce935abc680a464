#pragma once

/**
 * @file expr.hpp
 * @brief Expression DSL for metric entries and map components.
 *
 * Asts are immutable value trees; evaluation is generic over the target
 * algebra, so the same expression runs on plain scalars, first- and
 * second-order jets, and Laplace-algebra elements. All derivatives in the
 * library come from evaluating expressions on jet arguments, never from
 * symbolic manipulation.
 */

#include <cstddef>
#include <string>
#include <vector>

#include "jetgeo/jets.hpp"

namespace jetgeo {

enum class AstKind { Number, Var, Neg, Add, Sub, Mul, Div, Pow, Call };

struct Ast {
    AstKind kind = AstKind::Number;
    Rational number;            // Number
    std::string name;           // Var (for printing)
    std::size_t var_index = 0;  // Var (resolved against the declared names)
    FuncTag func = FuncTag::Recip; // Call
    long exponent = 0;          // Pow
    std::vector<Ast> children;  // operands

    friend bool operator==(const Ast& a, const Ast& b) {
        return a.kind == b.kind && a.number == b.number && a.name == b.name &&
               a.var_index == b.var_index && a.func == b.func &&
               a.exponent == b.exponent && a.children == b.children;
    }
};

/// Parse `text` against the declared variable names. Grammar (normative copy
/// in docs/expression-grammar.md): precedence ^ > unary - > *,/ > +,-;
/// binaries left-associative; ^ right-associative with integer-literal
/// exponents only. Throws SyntaxError with a byte offset.
Ast parse(const std::string& text, const std::vector<std::string>& vars);

/// Precedence-aware printer; print(parse(t)) reparses to an identical tree.
std::string print(const Ast& ast);

template <class A>
A eval(const Ast& ast, const std::vector<A>& env) {
    detail::require(!env.empty(), "evaluation needs at least one bound variable");
    switch (ast.kind) {
        case AstKind::Number: return constant_like(env.front(), ast.number);
        case AstKind::Var:
            detail::require(ast.var_index < env.size(), "variable index out of range");
            return env[ast.var_index];
        case AstKind::Neg: return -eval(ast.children[0], env);
        case AstKind::Add: return eval(ast.children[0], env) + eval(ast.children[1], env);
        case AstKind::Sub: return eval(ast.children[0], env) - eval(ast.children[1], env);
        case AstKind::Mul: return eval(ast.children[0], env) * eval(ast.children[1], env);
        case AstKind::Div: return div(eval(ast.children[0], env), eval(ast.children[1], env));
        case AstKind::Pow: return pow_int(eval(ast.children[0], env), ast.exponent);
        case AstKind::Call: return lift(ast.func, eval(ast.children[0], env));
    }
    throw Error("unreachable ast kind");
}

} // namespace jetgeo
