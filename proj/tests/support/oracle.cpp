#include "oracle.hpp"

#include "freearr/io.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#ifndef FREEARR_TEST_DATA_DIR
#error "FREEARR_TEST_DATA_DIR must be defined"
#endif

namespace oracle {

std::filesystem::path data_path(const std::string& name) {
    return std::filesystem::path(FREEARR_TEST_DATA_DIR) / name;
}

freearr::Arrangement fixture(const std::string& name) { return freearr::load_arrangement(data_path(name)); }

freearr::Arrangement make(const std::vector<Triple>& lines) {
    std::vector<freearr::Line> out;
    for (const auto& l : lines) out.push_back(freearr::Line::from_integers(l[0], l[1], l[2]));
    return freearr::build_arrangement(std::move(out));
}

namespace {

using QPoint = std::array<mpq_class, 3>;

QPoint cross(const Triple& u, const Triple& v) {
    return {mpq_class(mpz_class(u[1]) * v[2] - mpz_class(u[2]) * v[1]),
            mpq_class(mpz_class(u[2]) * v[0] - mpz_class(u[0]) * v[2]),
            mpq_class(mpz_class(u[0]) * v[1] - mpz_class(u[1]) * v[0])};
}

std::array<std::string, 3> key_of(QPoint p) {
    int last = 2;
    while (p[last] == 0) --last;
    const mpq_class s = p[last];
    std::array<std::string, 3> key;
    for (int i = 0; i < 3; ++i) {
        p[i] /= s;
        key[i] = p[i].get_str();
    }
    return key;
}

std::vector<Triple> triples_of(const freearr::Arrangement& arrangement) {
    std::vector<Triple> out;
    for (const auto& line : arrangement.lines())
        out.push_back({line.a().get_si(), line.b().get_si(), line.c().get_si()});
    return out;
}

}  // namespace

Profile brute_profile(const std::vector<Triple>& lines) {
    std::map<std::array<std::string, 3>, QPoint> points;
    for (std::size_t i = 0; i < lines.size(); ++i)
        for (std::size_t j = i + 1; j < lines.size(); ++j) {
            QPoint p = cross(lines[i], lines[j]);
            points.emplace(key_of(p), p);
        }
    Profile out;
    for (const auto& [key, p] : points) {
        long m = 0;
        for (const auto& l : lines)
            if (l[0] * p[0] + l[1] * p[1] + l[2] * p[2] == 0) ++m;
        ++out.t[static_cast<int>(m)];
        out.b2 += m - 1;
        out.pairs += m * (m - 1) / 2;
    }
    return out;
}

Profile brute_profile(const freearr::Arrangement& arrangement) { return brute_profile(triples_of(arrangement)); }

std::set<Triple> brute_pool(long R) {
    std::set<Triple> out;
    for (long a = -R; a <= R; ++a)
        for (long b = -R; b <= R; ++b)
            for (long c = -R; c <= R; ++c) {
                if (a == 0 && b == 0 && c == 0) continue;
                const long g = std::gcd(std::gcd(a, b), c);
                Triple t{a / g, b / g, c / g};
                const long last = t[2] != 0 ? t[2] : (t[1] != 0 ? t[1] : t[0]);
                if (last < 0)
                    for (auto& v : t) v = -v;
                out.insert(t);
            }
    return out;
}

Poly linear(const Triple& abc) {
    Poly p;
    if (abc[0] != 0) p[{1, 0, 0}] = abc[0];
    if (abc[1] != 0) p[{0, 1, 0}] = abc[1];
    if (abc[2] != 0) p[{0, 0, 1}] = abc[2];
    return p;
}

Poly mul(const Poly& p, const Poly& q) {
    Poly out;
    for (const auto& [ep, cp] : p)
        for (const auto& [eq, cq] : q) {
            const std::array<int, 3> e{ep[0] + eq[0], ep[1] + eq[1], ep[2] + eq[2]};
            out[e] += cp * cq;
        }
    std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
    return out;
}

Poly add(const Poly& p, const Poly& q, const mpq_class& scale) {
    Poly out = p;
    for (const auto& [e, c] : q) out[e] += scale * c;
    std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
    return out;
}

Poly from_coeffs(const freearr::RationalVector& coeffs, int degree) {
    // Graded-lex order with x > y > z, enumerated independently of the library.
    Poly out;
    std::size_t idx = 0;
    for (int i = degree; i >= 0; --i)
        for (int j = degree - i; j >= 0; --j) {
            const int k = degree - i - j;
            if (idx >= coeffs.size()) throw std::logic_error("coefficient vector too short");
            if (coeffs[idx] != 0) out[{i, j, k}] = coeffs[idx];
            ++idx;
        }
    if (idx != coeffs.size()) throw std::logic_error("coefficient vector has the wrong length");
    return out;
}

bool equal(const Poly& p, const Poly& q) { return add(p, q, -1).empty(); }

Poly defining_polynomial(const freearr::Arrangement& arrangement) {
    Poly out{{{0, 0, 0}, 1}};
    for (const auto& t : triples_of(arrangement)) out = mul(out, linear(t));
    return out;
}

std::array<Poly, 3> components(const freearr::Derivation& theta) {
    const std::size_t N = theta.coeffs.size() / 3;
    std::array<Poly, 3> out;
    for (int w = 0; w < 3; ++w) {
        freearr::RationalVector part(theta.coeffs.begin() + w * N, theta.coeffs.begin() + (w + 1) * N);
        out[w] = from_coeffs(part, theta.degree);
    }
    return out;
}

Poly saito_det(const freearr::Derivation& theta1, const freearr::Derivation& theta2) {
    const auto [f1, g1, h1] = components(theta1);
    const auto [f2, g2, h2] = components(theta2);
    const Poly x = linear({1, 0, 0}), y = linear({0, 1, 0}), z = linear({0, 0, 1});
    Poly det = mul(x, add(mul(g1, h2), mul(g2, h1), -1));
    det = add(det, mul(y, add(mul(f1, h2), mul(f2, h1), -1)), -1);
    det = add(det, mul(z, add(mul(f1, g2), mul(f2, g1), -1)));
    return det;
}

Poly apply(const freearr::Derivation& theta, const Triple& abc) {
    const auto comps = components(theta);
    Poly out;
    for (int w = 0; w < 3; ++w) out = add(out, comps[w], abc[w]);
    return out;
}

namespace {

mpq_class evaluate(const Poly& p, const QPoint& at) {
    mpq_class total = 0;
    for (const auto& [e, c] : p) {
        mpq_class term = c;
        for (int i = 0; i < 3; ++i)
            for (int k = 0; k < e[i]; ++k) term *= at[i];
        total += term;
    }
    return total;
}

}  // namespace

bool vanishes_on_line(const Poly& p, const Triple& abc) {
    if (p.empty()) return true;
    const int degree = p.begin()->first[0] + p.begin()->first[1] + p.begin()->first[2];
    std::vector<QPoint> on_line;
    for (int i = 0; i < 3; ++i) {
        Triple e{0, 0, 0};
        e[i] = 1;
        QPoint c = cross(abc, e);
        if (c[0] != 0 || c[1] != 0 || c[2] != 0) on_line.push_back(c);
    }
    const QPoint P = on_line[0];
    QPoint R = P;
    for (const auto& c : on_line) {
        const QPoint k{P[1] * c[2] - P[2] * c[1], P[2] * c[0] - P[0] * c[2], P[0] * c[1] - P[1] * c[0]};
        if (k[0] != 0 || k[1] != 0 || k[2] != 0) {
            R = c;
            break;
        }
    }
    // A binary form of degree d vanishing at d + 1 distinct points of P^1 is zero.
    for (int lambda = 0; lambda <= degree; ++lambda) {
        const QPoint at{P[0] + lambda * R[0], P[1] + lambda * R[1], P[2] + lambda * R[2]};
        if (evaluate(p, at) != 0) return false;
    }
    return true;
}

std::size_t rank(std::vector<std::vector<mpq_class>> rows) {
    std::size_t r = 0;
    const std::size_t cols = rows.empty() ? 0 : rows[0].size();
    for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
        std::size_t pivot = r;
        while (pivot < rows.size() && rows[pivot][c] == 0) ++pivot;
        if (pivot == rows.size()) continue;
        std::swap(rows[r], rows[pivot]);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == r || rows[i][c] == 0) continue;
            const mpq_class f = rows[i][c] / rows[r][c];
            for (std::size_t k = c; k < cols; ++k) rows[i][k] -= f * rows[r][k];
        }
        ++r;
    }
    return r;
}

std::vector<Triple> random_pool_subset(std::mt19937_64& rng, long R, std::size_t n) {
    const auto pool = brute_pool(R);
    std::vector<Triple> all(pool.begin(), pool.end());
    std::shuffle(all.begin(), all.end(), rng);
    all.resize(std::min(n, all.size()));
    return all;
}

}  // namespace oracle
