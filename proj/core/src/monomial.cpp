#include "freearr/monomial.hpp"

#include "freearr/errors.hpp"

namespace freearr {

MonomialBasis::MonomialBasis(int degree) : degree_(degree) {
    if (degree < 0) throw Error("monomial degree must be nonnegative");
    monomials_.reserve(monomial_count(degree));
    for (int i = degree; i >= 0; --i) {
        for (int j = degree - i; j >= 0; --j) monomials_.push_back({i, j, degree - i - j});
    }
}

MonomialBasis monomial_basis(int d) { return MonomialBasis(d); }

std::string monomial_key(const Exponent& e) {
    return std::to_string(e[0]) + "," + std::to_string(e[1]) + "," + std::to_string(e[2]);
}

std::string monomial_name(const Exponent& e) {
    static const char* vars[3] = {"x", "y", "z"};
    std::string out;
    for (int v = 0; v < 3; ++v) {
        if (e[v] == 0) continue;
        if (!out.empty()) out += "*";
        out += vars[v];
        if (e[v] > 1) out += "^" + std::to_string(e[v]);
    }
    return out.empty() ? "1" : out;
}

}  // namespace freearr
