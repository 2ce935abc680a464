#include "jetgeo/rational.hpp"

#include <cctype>

namespace jetgeo {

Rational Rational::from_string(const std::string& text) {
    if (text.empty()) throw DomainError("empty rational literal");
    auto slash = text.find('/');
    if (slash != std::string::npos) {
        mpq_class q;
        if (q.set_str(text, 10) != 0)
            throw DomainError("bad rational literal '" + text + "'");
        if (sgn(q.get_den()) == 0)
            throw DomainError("rational with zero denominator '" + text + "'");
        q.canonicalize();
        return Rational(q);
    }
    auto dot = text.find('.');
    if (dot == std::string::npos) {
        mpq_class q;
        if (q.set_str(text, 10) != 0)
            throw DomainError("bad integer literal '" + text + "'");
        return Rational(q);
    }
    // finite decimal: digits '.' digits  ->  exact p/10^k
    std::string digits = text.substr(0, dot) + text.substr(dot + 1);
    std::size_t frac_len = text.size() - dot - 1;
    bool neg = false;
    if (!digits.empty() && (digits[0] == '-' || digits[0] == '+')) {
        neg = digits[0] == '-';
        digits.erase(0, 1);
    }
    if (digits.empty()) throw DomainError("bad decimal literal '" + text + "'");
    for (char c : digits)
        if (!std::isdigit(static_cast<unsigned char>(c)))
            throw DomainError("bad decimal literal '" + text + "'");
    mpz_class num(digits, 10);
    mpz_class den(1);
    for (std::size_t i = 0; i < frac_len; ++i) den *= 10;
    mpq_class q(neg ? mpz_class(-num) : num, den);
    q.canonicalize();
    return Rational(q);
}

std::string Rational::str() const {
    return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

std::optional<Rational> Rational::exact_sqrt() const {
    if (sign() < 0) return std::nullopt;
    const mpz_class& num = v_.get_num();
    const mpz_class& den = v_.get_den();
    if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t()))
        return std::nullopt;
    mpz_class rn, rd;
    mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
    return Rational(mpq_class(rn, rd));
}

Rational abs(const Rational& a) { return a.sign() < 0 ? -a : a; }

} // namespace jetgeo
