#include "freearr/rational.hpp"

#include "freearr/errors.hpp"

#include <cmath>
#include <limits>

namespace freearr {

namespace {

bool is_digit_run(std::string_view s) {
    if (s.empty()) return false;
    for (char ch : s) {
        if (ch < '0' || ch > '9') return false;
    }
    return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
    std::string_view body = text;
    if (!body.empty() && (body.front() == '-' || body.front() == '+')) body.remove_prefix(1);
    const auto slash = body.find('/');
    std::string_view num = body.substr(0, slash);
    std::string_view den = slash == std::string_view::npos ? std::string_view{} : body.substr(slash + 1);
    if (!is_digit_run(num) || (slash != std::string_view::npos && !is_digit_run(den))) {
        throw ParseError("not an integer or p/q rational: \"" + std::string(text) + "\"");
    }
    Integer numerator(std::string(num), 10);
    Integer denominator = den.empty() ? Integer(1) : Integer(std::string(den), 10);
    if (denominator == 0) throw ParseError("zero denominator in \"" + std::string(text) + "\"");
    if (!text.empty() && text.front() == '-') numerator = -numerator;
    Rational out(numerator, denominator);
    out.canonicalize();
    return out;
}

std::string format_rational(const Rational& value) {
    Rational v = value;
    v.canonicalize();
    if (v.get_den() == 1) return v.get_num().get_str();
    return v.get_num().get_str() + "/" + v.get_den().get_str();
}

std::size_t bit_length(const Integer& value) {
    if (value == 0) return 0;
    return mpz_sizeinbase(value.get_mpz_t(), 2);
}

void make_primitive(IntVector& values) {
    Integer g = 0;
    for (const auto& v : values) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
        if (g == 1) break;
    }
    if (g == 0) return;
    int sign = 0;
    for (const auto& v : values) {
        if (v != 0) {
            sign = sgn(v);
            break;
        }
    }
    if (sign < 0) g = -g;
    if (g == 1) return;
    for (auto& v : values) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
}

IntVector primitive_integer_vector(const RationalVector& values) {
    Integer common = 1;
    for (const auto& v : values) {
        mpz_lcm(common.get_mpz_t(), common.get_mpz_t(), v.get_den_mpz_t());
    }
    IntVector out;
    out.reserve(values.size());
    for (const auto& v : values) {
        Integer scaled = common / v.get_den();
        out.emplace_back(scaled * v.get_num());
    }
    make_primitive(out);
    return out;
}

Rational rationalize(double value, long max_denominator) {
    if (!std::isfinite(value)) throw ParseError("cannot rationalize a non-finite value");
    // Convergents p_k/q_k of the continued fraction of |value|.
    const bool negative = value < 0;
    double x = std::fabs(value);
    Integer p_prev = 1, q_prev = 0;
    Integer p = static_cast<long>(std::floor(x)), q = 1;
    double frac = x - std::floor(x);
    while (frac > 1e-15) {
        x = 1.0 / frac;
        if (x > static_cast<double>(std::numeric_limits<long>::max() / 2)) break;
        const long a = static_cast<long>(std::floor(x));
        frac = x - std::floor(x);
        Integer p_next = a * p + p_prev;
        Integer q_next = a * q + q_prev;
        if (q_next > max_denominator) break;
        p_prev = p;
        q_prev = q;
        p = p_next;
        q = q_next;
    }
    Rational out(negative ? Integer(-p) : p, q);
    out.canonicalize();
    return out;
}

}  // namespace freearr
