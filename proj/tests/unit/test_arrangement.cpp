#include "oracle.hpp"

#include "freearr/arrangement.hpp"
#include "freearr/errors.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace freearr;

namespace {

Line L(long a, long b, long c) { return Line::from_integers(a, b, c); }

void expect_coords(const Line& line, long a, long b, long c) {
    EXPECT_EQ(line.a(), a);
    EXPECT_EQ(line.b(), b);
    EXPECT_EQ(line.c(), c);
}

long choose2(long m) { return m * (m - 1) / 2; }

}  // namespace

TEST(Canonicalize, ClearsDenominatorsAndGcd) {
    expect_coords(canonicalize_line(Rational(2, 3), Rational(-4, 3), Rational(2)), 1, -2, 3);
    expect_coords(canonicalize_line(0, 0, 5), 0, 0, 1);
    expect_coords(canonicalize_line(-1, 5, -3), 1, -5, 3);
}

TEST(Canonicalize, ZeroFormThrows) { EXPECT_THROW(canonicalize_line(0, 0, 0), ZeroForm); }

TEST(Canonicalize, IdempotentAndScaleInvariant) {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<long> coord(-30, 30), scale(1, 9);
    for (int trial = 0; trial < 500; ++trial) {
        const long a = coord(rng), b = coord(rng), c = coord(rng);
        if (a == 0 && b == 0 && c == 0) continue;
        const Line once = canonicalize_line(a, b, c);
        const Line twice = canonicalize_line(once.a(), once.b(), once.c());
        EXPECT_EQ(once, twice);
        const Rational s(scale(rng) * (trial % 2 ? -1 : 1), scale(rng));
        EXPECT_EQ(once, canonicalize_line(s * a, s * b, s * c));
    }
}

TEST(BuildArrangement, KeepsOrderAndCountsLines) {
    const auto A = build_arrangement({L(1, 0, 0), L(0, 1, 0), L(0, 0, 1)});
    EXPECT_EQ(A.size(), 3u);
    EXPECT_EQ(A[0], L(1, 0, 0));
    EXPECT_EQ(A[2], L(0, 0, 1));
    EXPECT_EQ(oracle::fixture("free_n13.json").size(), 13u);
}

TEST(BuildArrangement, DuplicateNamesIndices) {
    try {
        build_arrangement({L(1, 0, 0), L(2, 0, 0)});
        FAIL() << "expected DuplicateLine";
    } catch (const DuplicateLine& e) {
        EXPECT_EQ(e.first(), 0u);
        EXPECT_EQ(e.second(), 1u);
    }
}

TEST(BuildArrangement, EmptyListRejected) { EXPECT_THROW(build_arrangement({}), Error); }

TEST(IntersectionSummary, Boolean) {
    const auto A = oracle::fixture("boolean.json");
    const auto& s = A.summary();
    EXPECT_EQ(s.t.size(), 1u);
    EXPECT_EQ(s.t.at(2), 3);
    EXPECT_EQ(s.b2, 3);
    EXPECT_TRUE(s.pair_count_check);
}

TEST(IntersectionSummary, PointsAreIncidentToListedLines) {
    const auto A = oracle::fixture("free_n19.json");
    for (const auto& p : A.summary().points) {
        for (std::size_t i = 0; i < A.size(); ++i) {
            const bool listed = std::binary_search(p.incident_lines.begin(), p.incident_lines.end(), i);
            EXPECT_EQ(A[i].passes_through(p.coords), listed);
        }
        EXPECT_GE(p.multiplicity(), 2);
    }
}

struct FixtureProfile {
    const char* file;
    std::map<int, long> t;
    long b2;
    int d1, d2;
};

class FixtureInvariants : public ::testing::TestWithParam<FixtureProfile> {};

TEST_P(FixtureInvariants, ProfileAndExponents) {
    const auto& expected = GetParam();
    const auto A = oracle::fixture(expected.file);
    const auto& s = A.summary();
    EXPECT_EQ(s.t, expected.t);
    EXPECT_EQ(s.b2, expected.b2);

    const auto brute = oracle::brute_profile(A);
    EXPECT_EQ(brute.t, expected.t);
    EXPECT_EQ(brute.b2, expected.b2);

    const auto check = candidate_exponents(A);
    ASSERT_TRUE(check);
    EXPECT_EQ(check.exponents->d1, expected.d1);
    EXPECT_EQ(check.exponents->d2, expected.d2);
}

INSTANTIATE_TEST_SUITE_P(
    LargeFixtures, FixtureInvariants,
    ::testing::Values(FixtureProfile{"free_n13.json", {{2, 14}, {3, 6}, {4, 6}, {5, 1}}, 48, 6, 6},
                      FixtureProfile{"free_n19.json", {{2, 24}, {3, 12}, {4, 6}, {5, 6}, {6, 1}}, 95, 7, 11},
                      FixtureProfile{"free_n20.json", {{2, 38}, {3, 14}, {4, 5}, {5, 2}, {6, 4}}, 109, 9, 10}),
    [](const auto& info) { return std::string(info.param.file).substr(0, 8); });

TEST(CandidateExponents, Examples) {
    auto c = candidate_exponents(13, 48);
    ASSERT_TRUE(c);
    EXPECT_EQ(c.discriminant, 0);
    EXPECT_EQ(c.exponents->d1, 6);

    c = candidate_exponents(19, 95);
    ASSERT_TRUE(c);
    EXPECT_EQ(c.discriminant, 16);
    EXPECT_EQ(c.exponents->d1, 7);
    EXPECT_EQ(c.exponents->d2, 11);
}

TEST(CandidateExponents, GenericFourLinesHasNone) {
    // Hand count: four lines in general position meet in C(4,2) = 6 double points.
    const auto A = oracle::fixture("generic4.json");
    const auto brute = oracle::brute_profile(A);
    EXPECT_EQ(brute.t, (std::map<int, long>{{2, 6}}));
    EXPECT_EQ(A.summary().b2, 6);
    const long delta = (4 - 1) * (4 - 1) - 4 * (6 - 4 + 1);
    EXPECT_EQ(delta, -3);
    const auto c = candidate_exponents(A);
    EXPECT_FALSE(c);
    EXPECT_EQ(c.status, ExponentStatus::negative_discriminant);
    EXPECT_EQ(c.discriminant, -3);
}

TEST(CandidateExponents, NonSquareAndPencil) {
    // n = 5, b2 = 6: Delta = 16 - 4 * 2 = 8.
    EXPECT_EQ(candidate_exponents(5, 6).status, ExponentStatus::not_a_square);
    // A pencil of 4 lines: b2 = 3, roots 0 and 3.
    EXPECT_EQ(candidate_exponents(4, 3).status, ExponentStatus::degenerate);
}

TEST(CharPoly, Examples) {
    const auto boolean = characteristic_polynomial(3, 3);
    EXPECT_EQ(boolean.cubic, (std::array<long, 4>{1, -3, 3, -1}));
    const auto c1 = characteristic_polynomial(13, 48);
    EXPECT_EQ(c1.cubic, (std::array<long, 4>{1, -13, 48, -36}));
    EXPECT_EQ(c1.quadratic, (std::array<long, 3>{1, -12, 36}));
    const auto c3 = characteristic_polynomial(20, 109);
    EXPECT_EQ(c3.quadratic, (std::array<long, 3>{1, -19, 90}));
    EXPECT_EQ(c3.evaluate_quadratic(9), 0);
    EXPECT_EQ(c3.evaluate_quadratic(10), 0);
}

TEST(Tjurina, Examples) {
    EXPECT_EQ(tjurina(oracle::fixture("boolean.json")), 3);
    // Sum of (m - 1)^2 t_m over the expected profiles.
    EXPECT_EQ(tjurina(oracle::fixture("free_n13.json")), 14 * 1 + 6 * 4 + 6 * 9 + 1 * 16);
    EXPECT_EQ(tjurina(oracle::fixture("free_n20.json")), 38 * 1 + 14 * 4 + 5 * 9 + 2 * 16 + 4 * 25);
    EXPECT_EQ(tjurina(oracle::fixture("free_n20.json")), 20 * 19 - 109);
}

TEST(ArrangementProperties, RandomPoolArrangements) {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<std::size_t> size(1, 14);
    for (int trial = 0; trial < 200; ++trial) {
        const auto lines = oracle::random_pool_subset(rng, 2, size(rng));
        const auto A = oracle::make(lines);
        const auto& s = A.summary();
        const long n = static_cast<long>(A.size());

        long pairs = 0, b2 = 0, tau = 0;
        for (const auto& [m, count] : s.t) {
            pairs += choose2(m) * count;
            b2 += (m - 1) * count;
            tau += (m - 1) * (m - 1) * count;
        }
        EXPECT_EQ(pairs, choose2(n));
        EXPECT_EQ(b2, s.b2);
        EXPECT_TRUE(s.pair_count_check);
        EXPECT_EQ(n * (n - 1) - s.b2, tau);

        const auto brute = oracle::brute_profile(lines);
        EXPECT_EQ(brute.t, s.t);

        const auto chi = characteristic_polynomial(A);
        EXPECT_EQ(chi.evaluate(1), 0);
        for (long t = -3; t <= 3; ++t) EXPECT_EQ(chi.evaluate(t), (t - 1) * chi.evaluate_quadratic(t));

        if (const auto c = candidate_exponents(A)) {
            EXPECT_EQ(c.exponents->d1 + c.exponents->d2, n - 1);
            EXPECT_EQ(long(c.exponents->d1) * c.exponents->d2, s.b2 - n + 1);
            EXPECT_EQ(tjurina(A), (n - 1) * (n - 1) - long(c.exponents->d1) * c.exponents->d2);
        }
    }
}

TEST(ArrangementHash, OrderIndependent) {
    const auto a = build_arrangement({L(1, 0, 0), L(0, 1, 0), L(0, 0, 1)});
    const auto b = build_arrangement({L(0, 0, 1), L(1, 0, 0), L(0, 1, 0)});
    const auto c = build_arrangement({L(0, 0, 1), L(1, 0, 0), L(1, 1, 0)});
    EXPECT_EQ(arrangement_hash(a), arrangement_hash(b));
    EXPECT_NE(arrangement_hash(a), arrangement_hash(c));
    EXPECT_EQ(arrangement_hash(a).size(), 16u);
}
