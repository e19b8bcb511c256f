#pragma once

#include "freearr/als.hpp"
#include "freearr/arrangement.hpp"
#include "freearr/verify.hpp"

#include <optional>
#include <utility>

namespace freearr {

using ExponentPair = std::pair<int, int>;

struct ScoreConfig {
    std::optional<double> delta_max;         // default (n - 1)^2
    std::optional<ExponentPair> targets;     // (d1*, d2*) for the finished arrangement
    int exact_cutoff = 13;                   // terminal bonus uses exact verification up to this n
    ALSConfig als;

    double delta_max_for(long n) const;
    /// b2* = (n* - 1) + d1* d2*, where n* = d1* + d2* + 1.
    std::optional<long> b2_target() const;
    void validate() const;
};

struct RewardWeights {
    double comb = 0.5;
    double alg = 1.0;
    double feas = 0.25;
    double b2 = 0.25;
    double intersect = 0.1;
    double pen = 0.1;
    double mult = 0.1;
    double free = 5.0;

    static RewardWeights unit();
    void validate() const;  // nonnegative; alg and free are the two largest
};

/// Distance from the discriminant to the nearest nonnegative perfect square (|Delta| when negative).
long discriminant_distance(long n, long b2);

/// 1 for a nonnegative square discriminant, -1 when b2 < n - 1, else 1 - 2 delta / delta_max clamped.
double sigma_comb(long n, long b2, const ScoreConfig& config = {});
double sigma_comb(const Arrangement& arrangement, const ScoreConfig& config = {});

struct AlgebraicScore {
    double value = 0;
    int tier = 0;                  // 0 when n < 3
    std::optional<double> saito;   // tier 2 only
};

/// Tier 2 (candidate exponents): 1 - S. Tier 1: -max(delta, 1) / delta_max, or with targets
/// -max(|b2 - b2*|, 1) / b2*, clamped to [-1, 0).
AlgebraicScore sigma_alg(const Arrangement& arrangement, const ScoreConfig& config = {});
double tier1_score(long n, long b2, const ScoreConfig& config = {});

double sigma_b2(const Arrangement& arrangement, const ScoreConfig& config = {});
double sigma_int(const Arrangement& arrangement);
double sigma_pen(const Arrangement& arrangement);

struct RewardBreakdown {
    double comb = 0, alg = 0, feas = 0, b2 = 0, intersect = 0, pen = 0;
    long delta_mult = 0;   // change in the number of points of multiplicity >= 3
    double free_bonus = 0;  // already weighted
    bool terminal = false;
    bool certified = false;
    double total = 0;
};

/// Per-step reward; `prev` is the summary before the last line was added (empty for the first step).
RewardBreakdown reward(const Arrangement& current, const LatticeSummary& prev, const RewardWeights& weights,
                       const ScoreConfig& config, bool terminal);

}  // namespace freearr
