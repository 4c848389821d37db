#include "pmg/rational.hpp"

#include <cctype>

namespace pmg {

namespace {

bool valid_int_token(const std::string& s) {
    if (s.empty()) return false;
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
}

}  // namespace

Rational Rational::parse(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) {
        if (!valid_int_token(s)) throw std::invalid_argument("Rational::parse: bad integer '" + s + "'");
        return Rational(mpq_class(mpz_class(s)));
    }
    std::string num = s.substr(0, slash), den = s.substr(slash + 1);
    if (!valid_int_token(num) || !valid_int_token(den))
        throw std::invalid_argument("Rational::parse: bad rational '" + s + "'");
    mpz_class d(den);
    if (d == 0) throw std::invalid_argument("Rational::parse: zero denominator in '" + s + "'");
    mpq_class q(mpz_class(num), d);
    q.canonicalize();
    return Rational(q);
}

std::string Rational::str() const {
    if (is_integer()) return v_.get_num().get_str();
    return v_.get_str();
}

mpz_class Rational::floor() const {
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), v_.get_num().get_mpz_t(), v_.get_den().get_mpz_t());
    return q;
}

mpz_class Rational::ceil() const {
    mpz_class q;
    mpz_cdiv_q(q.get_mpz_t(), v_.get_num().get_mpz_t(), v_.get_den().get_mpz_t());
    return q;
}

Rational pow_rational(const mpz_class& base, unsigned long e) {
    mpz_class z;
    mpz_pow_ui(z.get_mpz_t(), base.get_mpz_t(), e);
    return Rational(z);
}

}  // namespace pmg
