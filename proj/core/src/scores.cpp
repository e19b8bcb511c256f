#include "freearr/scores.hpp"

#include "freearr/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

namespace freearr {

double ScoreConfig::delta_max_for(long n) const {
    if (delta_max) return *delta_max;
    return std::max(1.0, static_cast<double>((n - 1) * (n - 1)));
}

std::optional<long> ScoreConfig::b2_target() const {
    if (!targets) return std::nullopt;
    const long d1 = targets->first, d2 = targets->second;
    return (d1 + d2) + d1 * d2;
}

void ScoreConfig::validate() const {
    if (delta_max && !(*delta_max > 0)) throw Error("delta_max must be positive");
    if (targets && (targets->first < 1 || targets->second < targets->first)) {
        throw Error("target exponents need 1 <= d1 <= d2");
    }
    als.validate();
}

RewardWeights RewardWeights::unit() {
    RewardWeights w;
    w.comb = w.alg = w.feas = w.b2 = w.intersect = w.pen = w.mult = w.free = 1.0;
    return w;
}

void RewardWeights::validate() const {
    for (double w : {comb, alg, feas, b2, intersect, pen, mult, free}) {
        if (!(w >= 0)) throw Error("reward weights must be nonnegative");
    }
    const double others = std::max({comb, feas, b2, intersect, pen, mult});
    if (alg < others || free < others) throw Error("w_alg and w_free must be the two largest weights");
}

long discriminant_distance(long n, long b2) {
    const long delta = discriminant(n, b2);
    if (delta < 0) return -delta;
    long r = static_cast<long>(std::sqrt(static_cast<double>(delta)));
    while (r * r > delta) --r;
    while ((r + 1) * (r + 1) <= delta) ++r;
    return std::min(delta - r * r, (r + 1) * (r + 1) - delta);
}

double sigma_comb(long n, long b2, const ScoreConfig& config) {
    if (n < 3) return 0.0;
    if (b2 < n - 1) return -1.0;
    const long delta = discriminant(n, b2);
    if (delta >= 0 && exact_sqrt(delta)) return 1.0;
    const double d = static_cast<double>(discriminant_distance(n, b2));
    return std::clamp(1.0 - 2.0 * d / config.delta_max_for(n), -1.0, 1.0);
}

double sigma_comb(const Arrangement& arrangement, const ScoreConfig& config) {
    return sigma_comb(static_cast<long>(arrangement.size()), arrangement.summary().b2, config);
}

double tier1_score(long n, long b2, const ScoreConfig& config) {
    if (b2 < n - 1) return -1.0;
    if (const auto target = config.b2_target()) {
        const double gap = std::max<double>(static_cast<double>(std::labs(b2 - *target)), 1.0);
        return -std::min(1.0, gap / static_cast<double>(*target));
    }
    const double d = std::max<double>(static_cast<double>(discriminant_distance(n, b2)), 1.0);
    return -std::min(1.0, d / config.delta_max_for(n));
}

AlgebraicScore sigma_alg(const Arrangement& arrangement, const ScoreConfig& config) {
    AlgebraicScore out;
    const long n = static_cast<long>(arrangement.size());
    if (n < 3) return out;
    const ExponentCheck check = candidate_exponents(arrangement);
    if (!check) {
        out.tier = 1;
        out.value = tier1_score(n, arrangement.summary().b2, config);
        return out;
    }
    out.tier = 2;
    const SaitoEvaluation eval = saito_functional(arrangement, check.exponents->d1, check.exponents->d2, config.als);
    out.saito = eval.loss();
    out.value = std::clamp(1.0 - eval.loss(), 0.0, 1.0);
    return out;
}

double sigma_b2(const Arrangement& arrangement, const ScoreConfig& config) {
    const auto target = config.b2_target();
    if (!target) return 0.0;
    const double b2 = static_cast<double>(arrangement.summary().b2);
    return std::clamp(1.0 - std::fabs(b2 - static_cast<double>(*target)) / static_cast<double>(*target), -1.0, 1.0);
}

double sigma_int(const Arrangement& arrangement) {
    const auto& points = arrangement.summary().points;
    if (points.empty()) return 0.0;
    return static_cast<double>(arrangement.summary().points_with_multiplicity_at_least(3)) /
           static_cast<double>(points.size());
}

double sigma_pen(const Arrangement& arrangement) {
    const long n = static_cast<long>(arrangement.size());
    return n >= 4 && arrangement.summary().max_multiplicity() >= n - 1 ? 1.0 : 0.0;
}

RewardBreakdown reward(const Arrangement& current, const LatticeSummary& prev, const RewardWeights& weights,
                       const ScoreConfig& config, bool terminal) {
    RewardBreakdown out;
    const long n = static_cast<long>(current.size());
    const AlgebraicScore alg = sigma_alg(current, config);
    const ExponentCheck check = candidate_exponents(current);

    out.comb = sigma_comb(current, config);
    out.alg = alg.value;
    out.feas = check ? 1.0 : 0.0;
    out.b2 = sigma_b2(current, config);
    out.intersect = sigma_int(current);
    out.pen = sigma_pen(current);
    out.delta_mult = current.summary().points_with_multiplicity_at_least(3) - prev.points_with_multiplicity_at_least(3);
    out.terminal = terminal;

    if (terminal) {
        if (n <= config.exact_cutoff) {
            bool match = static_cast<bool>(check);
            if (match && config.targets) {
                match = check.exponents->d1 == config.targets->first && check.exponents->d2 == config.targets->second;
            }
            if (match) {
                VerifyOptions options;
                options.als = config.als;
                out.certified = verify_free(current, check.exponents->d1, check.exponents->d2, options).certified();
            }
            out.free_bonus = out.certified ? weights.free : 0.0;
        } else {
            const double graded = std::max(0.0, alg.value);
            out.free_bonus = weights.free * graded * graded;
        }
    }

    out.total = weights.comb * out.comb + weights.alg * out.alg + weights.feas * out.feas + weights.b2 * out.b2 +
                weights.intersect * out.intersect - weights.pen * out.pen +
                weights.mult * static_cast<double>(out.delta_mult) + out.free_bonus;
    return out;
}

}  // namespace freearr
