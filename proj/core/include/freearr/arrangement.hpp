#pragma once

#include "freearr/rational.hpp"

#include <array>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace freearr {

using Coords = std::array<Integer, 3>;

/// Divides by the gcd and makes the first nonzero coordinate positive. Throws ZeroForm on (0,0,0).
Coords canonical_coords(Coords raw);

std::size_t hash_integer(const Integer& value) noexcept;

struct CoordsHash {
    std::size_t operator()(const Coords& c) const noexcept;
};

bool coords_less(const Coords& lhs, const Coords& rhs);

/// Projective line a*x + b*y + c*z = 0 in canonical integer-coprime form.
class Line {
public:
    /// Canonicalizes an integer triple. Throws ZeroForm.
    static Line from_integers(const Integer& a, const Integer& b, const Integer& c);

    const Integer& a() const noexcept { return coords_[0]; }
    const Integer& b() const noexcept { return coords_[1]; }
    const Integer& c() const noexcept { return coords_[2]; }
    const Coords& coords() const noexcept { return coords_; }
    const Integer& operator[](std::size_t i) const noexcept { return coords_[i]; }

    Integer evaluate(const Coords& point) const;
    bool passes_through(const Coords& point) const { return evaluate(point) == 0; }

    std::string to_string() const;

    friend bool operator==(const Line& lhs, const Line& rhs) { return lhs.coords_ == rhs.coords_; }
    friend bool operator<(const Line& lhs, const Line& rhs) { return coords_less(lhs.coords_, rhs.coords_); }

private:
    explicit Line(Coords canonical) : coords_(std::move(canonical)) {}
    Coords coords_;
};

struct LineHash {
    std::size_t operator()(const Line& line) const noexcept { return CoordsHash{}(line.coords()); }
};

/// Unique canonical representative of the projective class of (a, b, c). Throws ZeroForm.
Line canonicalize_line(const Rational& a, const Rational& b, const Rational& c);

/// Point of P^2 stored in the same canonical form as lines.
struct IntersectionPoint {
    Coords coords;
    std::vector<std::size_t> incident_lines;  // sorted

    int multiplicity() const noexcept { return static_cast<int>(incident_lines.size()); }
};

struct LatticeSummary {
    std::vector<IntersectionPoint> points;
    std::map<int, long> t;  // multiplicity m -> number of m-fold points
    long b2 = 0;
    bool pair_count_check = true;

    long points_with_multiplicity_at_least(int m) const;
    int max_multiplicity() const;
};

/// Ordered set of pairwise distinct lines with its cached intersection data.
class Arrangement {
public:
    const std::vector<Line>& lines() const noexcept { return lines_; }
    std::size_t size() const noexcept { return lines_.size(); }
    const Line& operator[](std::size_t i) const noexcept { return lines_[i]; }
    const LatticeSummary& summary() const noexcept { return summary_; }

    bool contains(const Line& line) const { return index_.count(line) != 0; }
    std::optional<std::size_t> index_of(const Line& line) const;

    /// Copy with one more line appended. Throws DuplicateLine.
    Arrangement with_line(const Line& line) const;

    friend Arrangement build_arrangement(std::vector<Line> lines);

private:
    Arrangement() = default;

    std::vector<Line> lines_;
    std::unordered_map<Line, std::size_t, LineHash> index_;
    LatticeSummary summary_;
};

/// Throws DuplicateLine(i, j) for the first colliding pair and Error for an empty list.
Arrangement build_arrangement(std::vector<Line> lines);

/// Groups all pairwise intersections by canonical point. Valid for any n >= 1.
LatticeSummary intersection_summary(const std::vector<Line>& lines);
inline const LatticeSummary& intersection_summary(const Arrangement& arrangement) { return arrangement.summary(); }

struct CandidateExponents {
    int d1 = 0;
    int d2 = 0;
    long discriminant = 0;
};

enum class ExponentStatus {
    ok,
    negative_discriminant,
    not_a_square,
    degenerate,  // perfect square, but the smaller root is not positive (pencils, n < 3)
};

struct ExponentCheck {
    ExponentStatus status = ExponentStatus::ok;
    long discriminant = 0;
    std::optional<CandidateExponents> exponents;

    explicit operator bool() const noexcept { return exponents.has_value(); }
};

const char* to_string(ExponentStatus status);

/// Integer roots of t^2 - (n-1) t + (b2 - n + 1), when they exist and are positive.
ExponentCheck candidate_exponents(long n, long b2);
ExponentCheck candidate_exponents(const Arrangement& arrangement);

/// Discriminant (n-1)^2 - 4 (b2 - n + 1).
long discriminant(long n, long b2);

std::optional<long> exact_sqrt(long value);

struct CharPoly {
    std::array<long, 4> cubic{};      // t^3, t^2, t, 1
    std::array<long, 3> quadratic{};  // t^2, t, 1 after dividing by (t - 1)

    long evaluate(long t) const;
    long evaluate_quadratic(long t) const;
};

CharPoly characteristic_polynomial(long n, long b2);
CharPoly characteristic_polynomial(const Arrangement& arrangement);

/// Total Tjurina number n(n-1) - b2, cross-checked against sum (m_p - 1)^2.
long tjurina(const Arrangement& arrangement);

/// Order-independent FNV-1a digest of the canonical line set, as 16 hex digits.
std::string arrangement_hash(const Arrangement& arrangement);

}  // namespace freearr
