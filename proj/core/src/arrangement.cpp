#include "freearr/arrangement.hpp"

#include "freearr/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>

namespace freearr {

Coords canonical_coords(Coords raw) {
    Integer g = 0;
    for (const auto& v : raw) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
    if (g == 0) throw ZeroForm();
    for (const auto& v : raw) {
        if (v != 0) {
            if (v < 0) g = -g;
            break;
        }
    }
    if (g != 1) {
        for (auto& v : raw) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
    }
    return raw;
}

std::size_t hash_integer(const Integer& value) noexcept {
    const mpz_srcptr z = value.get_mpz_t();
    std::size_t h = static_cast<std::size_t>(z->_mp_size) * 0x9E3779B97F4A7C15ull;
    const int limbs = std::abs(z->_mp_size);
    for (int i = 0; i < limbs; ++i) {
        h ^= static_cast<std::size_t>(z->_mp_d[i]) + 0x9E3779B97F4A7C15ull + (h << 6) + (h >> 2);
    }
    return h;
}

std::size_t CoordsHash::operator()(const Coords& c) const noexcept {
    std::size_t h = hash_integer(c[0]);
    h = h * 1000003u ^ hash_integer(c[1]);
    h = h * 1000003u ^ hash_integer(c[2]);
    return h;
}

bool coords_less(const Coords& lhs, const Coords& rhs) {
    for (int i = 0; i < 3; ++i) {
        const int cmp = ::cmp(lhs[i], rhs[i]);
        if (cmp != 0) return cmp < 0;
    }
    return false;
}

Line Line::from_integers(const Integer& a, const Integer& b, const Integer& c) {
    return Line(canonical_coords({a, b, c}));
}

Integer Line::evaluate(const Coords& point) const {
    Integer out = coords_[0] * point[0];
    mpz_addmul(out.get_mpz_t(), coords_[1].get_mpz_t(), point[1].get_mpz_t());
    mpz_addmul(out.get_mpz_t(), coords_[2].get_mpz_t(), point[2].get_mpz_t());
    return out;
}

std::string Line::to_string() const {
    return "(" + coords_[0].get_str() + ", " + coords_[1].get_str() + ", " + coords_[2].get_str() + ")";
}

Line canonicalize_line(const Rational& a, const Rational& b, const Rational& c) {
    Integer common = 1;
    for (const Rational* v : {&a, &b, &c}) {
        mpz_lcm(common.get_mpz_t(), common.get_mpz_t(), v->get_den_mpz_t());
    }
    auto scale = [&](const Rational& v) { return Integer(common / v.get_den() * v.get_num()); };
    return Line::from_integers(scale(a), scale(b), scale(c));
}

long LatticeSummary::points_with_multiplicity_at_least(int m) const {
    long count = 0;
    for (const auto& [mult, num] : t) {
        if (mult >= m) count += num;
    }
    return count;
}

int LatticeSummary::max_multiplicity() const {
    return t.empty() ? 0 : t.rbegin()->first;
}

std::optional<std::size_t> Arrangement::index_of(const Line& line) const {
    const auto it = index_.find(line);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

Arrangement Arrangement::with_line(const Line& line) const {
    std::vector<Line> lines = lines_;
    lines.push_back(line);
    return build_arrangement(std::move(lines));
}

Arrangement build_arrangement(std::vector<Line> lines) {
    if (lines.empty()) throw Error("an arrangement needs at least one line");
    Arrangement out;
    out.index_.reserve(lines.size());
    for (std::size_t i = 0; i < lines.size(); ++i) {
        const auto [it, inserted] = out.index_.emplace(lines[i], i);
        if (!inserted) throw DuplicateLine(it->second, i);
    }
    out.summary_ = intersection_summary(lines);
    out.lines_ = std::move(lines);
    return out;
}

LatticeSummary intersection_summary(const std::vector<Line>& lines) {
    const std::size_t n = lines.size();
    std::unordered_map<Coords, std::vector<std::size_t>, CoordsHash> groups;
    groups.reserve(n * (n - 1) / 2 + 1);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const Coords& p = lines[i].coords();
            const Coords& q = lines[j].coords();
            Coords cross{p[1] * q[2] - p[2] * q[1], p[2] * q[0] - p[0] * q[2], p[0] * q[1] - p[1] * q[0]};
            auto& incident = groups[canonical_coords(std::move(cross))];
            incident.push_back(i);
            incident.push_back(j);
        }
    }

    LatticeSummary out;
    out.points.reserve(groups.size());
    for (auto& [coords, incident] : groups) {
        std::sort(incident.begin(), incident.end());
        incident.erase(std::unique(incident.begin(), incident.end()), incident.end());
        out.points.push_back({coords, std::move(incident)});
    }
    std::sort(out.points.begin(), out.points.end(),
              [](const IntersectionPoint& l, const IntersectionPoint& r) { return l.incident_lines < r.incident_lines; });

    long pairs = 0;
    for (const auto& p : out.points) {
        const long m = p.multiplicity();
        ++out.t[static_cast<int>(m)];
        out.b2 += m - 1;
        pairs += m * (m - 1) / 2;
    }
    out.pair_count_check = pairs == static_cast<long>(n * (n - 1) / 2);
    return out;
}

const char* to_string(ExponentStatus status) {
    switch (status) {
        case ExponentStatus::ok: return "ok";
        case ExponentStatus::negative_discriminant: return "negative_discriminant";
        case ExponentStatus::not_a_square: return "discriminant_not_square";
        case ExponentStatus::degenerate: return "nonpositive_exponent";
    }
    return "unknown";
}

long discriminant(long n, long b2) {
    return (n - 1) * (n - 1) - 4 * (b2 - n + 1);
}

std::optional<long> exact_sqrt(long value) {
    if (value < 0) return std::nullopt;
    long r = static_cast<long>(std::sqrt(static_cast<double>(value)));
    while (r * r > value) --r;
    while ((r + 1) * (r + 1) <= value) ++r;
    if (r * r != value) return std::nullopt;
    return r;
}

ExponentCheck candidate_exponents(long n, long b2) {
    ExponentCheck out;
    out.discriminant = discriminant(n, b2);
    if (out.discriminant < 0) {
        out.status = ExponentStatus::negative_discriminant;
        return out;
    }
    const auto root = exact_sqrt(out.discriminant);
    if (!root) {
        out.status = ExponentStatus::not_a_square;
        return out;
    }
    // (n - 1) and the root share parity because the discriminant is (n-1)^2 mod 4.
    const long d1 = (n - 1 - *root) / 2;
    const long d2 = (n - 1 + *root) / 2;
    if (d1 < 1) {
        out.status = ExponentStatus::degenerate;
        return out;
    }
    out.exponents = CandidateExponents{static_cast<int>(d1), static_cast<int>(d2), out.discriminant};
    return out;
}

ExponentCheck candidate_exponents(const Arrangement& arrangement) {
    return candidate_exponents(static_cast<long>(arrangement.size()), arrangement.summary().b2);
}

long CharPoly::evaluate(long t) const {
    return ((cubic[0] * t + cubic[1]) * t + cubic[2]) * t + cubic[3];
}

long CharPoly::evaluate_quadratic(long t) const {
    return (quadratic[0] * t + quadratic[1]) * t + quadratic[2];
}

CharPoly characteristic_polynomial(long n, long b2) {
    CharPoly out;
    out.cubic = {1, -n, b2, -(b2 - n + 1)};
    out.quadratic = {1, -(n - 1), b2 - n + 1};
    return out;
}

CharPoly characteristic_polynomial(const Arrangement& arrangement) {
    return characteristic_polynomial(static_cast<long>(arrangement.size()), arrangement.summary().b2);
}

long tjurina(const Arrangement& arrangement) {
    const long n = static_cast<long>(arrangement.size());
    const LatticeSummary& summary = arrangement.summary();
    const long tau = n * (n - 1) - summary.b2;
    long local_sum = 0;
    for (const auto& [m, count] : summary.t) local_sum += static_cast<long>(m - 1) * (m - 1) * count;
    if (local_sum != tau) {
        throw InternalInconsistency("Tjurina number mismatch: n(n-1) - b2 = " + std::to_string(tau) +
                                    " but sum (m_p - 1)^2 = " + std::to_string(local_sum));
    }
    if (const auto check = candidate_exponents(arrangement)) {
        const long via_exponents = (n - 1) * (n - 1) - static_cast<long>(check.exponents->d1) * check.exponents->d2;
        if (via_exponents != tau) {
            throw InternalInconsistency("Tjurina number disagrees with (n-1)^2 - d1 d2");
        }
    }
    return tau;
}

std::string arrangement_hash(const Arrangement& arrangement) {
    std::vector<Line> sorted = arrangement.lines();
    std::sort(sorted.begin(), sorted.end());
    std::uint64_t h = 1469598103934665603ull;
    auto feed = [&h](const std::string& s) {
        for (unsigned char ch : s) {
            h ^= ch;
            h *= 1099511628211ull;
        }
    };
    for (const auto& line : sorted) {
        feed(line.a().get_str());
        feed(",");
        feed(line.b().get_str());
        feed(",");
        feed(line.c().get_str());
        feed(";");
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace freearr
