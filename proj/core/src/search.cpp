#include "freearr/search.hpp"

#include "freearr/errors.hpp"
#include "freearr/parallel.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <unordered_map>

namespace freearr {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

std::optional<Line> join(const Coords& p, const Coords& q) {
    Coords cross{p[1] * q[2] - p[2] * q[1], p[2] * q[0] - p[0] * q[2], p[0] * q[1] - p[1] * q[0]};
    if (cross[0] == 0 && cross[1] == 0 && cross[2] == 0) return std::nullopt;
    return Line::from_integers(cross[0], cross[1], cross[2]);
}

unsigned lowest_source(unsigned mask) {
    for (unsigned bit : {kPointPairs, kMultiPoint, kPool}) {
        if (mask & bit) return bit;
    }
    return 0;
}

}  // namespace

CandidatePool candidate_pool(int R) {
    if (R < 1) throw Error("pool bound must be at least 1");
    std::set<Line> lines;
    for (int a = -R; a <= R; ++a) {
        for (int b = -R; b <= R; ++b) {
            for (int c = -R; c <= R; ++c) {
                if (a == 0 && b == 0 && c == 0) continue;
                lines.insert(Line::from_integers(a, b, c));
            }
        }
    }
    return {R, std::vector<Line>(lines.begin(), lines.end())};
}

long delta_b2(const Arrangement& arrangement, const Line& line) {
    if (const auto i = arrangement.index_of(line)) throw DuplicateLine(*i, arrangement.size());
    long absorbed = 0;
    for (const auto& p : arrangement.summary().points) {
        if (line.passes_through(p.coords)) absorbed += p.multiplicity() - 1;
    }
    return static_cast<long>(arrangement.size()) - absorbed;
}

std::vector<ExponentPair> admissible_exponents(int n) {
    std::vector<ExponentPair> out;
    for (int d1 = 1; 2 * d1 <= n - 1; ++d1) out.emplace_back(d1, n - 1 - d1);
    return out;
}

const char* source_name(unsigned source) {
    switch (lowest_source(source)) {
        case kPointPairs: return "point-pairs";
        case kMultiPoint: return "multi-point";
        case kPool: return "pool";
        default: return "none";
    }
}

void ExtensionConfig::validate() const {
    if (!(prefilter_threshold > 0 && prefilter_threshold < 1)) throw Error("prefilter threshold must lie in (0, 1)");
    if ((sources & kAllSources) == 0) throw Error("no candidate source enabled");
    if ((sources & kPool) && pool_bound < 1) throw Error("pool bound must be at least 1");
    als.validate();
}

std::vector<ExtensionCandidate> enumerate_extension_candidates(const Arrangement& arrangement,
                                                               const ExtensionConfig& config) {
    std::map<Line, unsigned> found;
    const auto& points = arrangement.summary().points;

    if (config.sources & (kPointPairs | kMultiPoint)) {
        for (std::size_t i = 0; i < points.size(); ++i) {
            for (std::size_t j = i + 1; j < points.size(); ++j) {
                const auto line = join(points[i].coords, points[j].coords);
                if (!line || arrangement.contains(*line)) continue;
                unsigned mask = 0;
                if (config.sources & kPointPairs) mask |= kPointPairs;
                if ((config.sources & kMultiPoint) && points[i].multiplicity() >= 3 && points[j].multiplicity() >= 3) {
                    mask |= kMultiPoint;
                }
                if (mask) found[*line] |= mask;
            }
        }
        if (config.sources & kMultiPoint) {
            // Joins that pass through three or more existing points.
            std::set<Line> joins;
            for (std::size_t i = 0; i < points.size(); ++i) {
                for (std::size_t j = i + 1; j < points.size(); ++j) {
                    const auto line = join(points[i].coords, points[j].coords);
                    if (line && !arrangement.contains(*line)) joins.insert(*line);
                }
            }
            for (const Line& line : joins) {
                std::size_t on = 0;
                for (const auto& p : points) on += line.passes_through(p.coords) ? 1 : 0;
                if (on >= 3) found[line] |= kMultiPoint;
            }
        }
    }
    if (config.sources & kPool) {
        for (const Line& line : candidate_pool(config.pool_bound).lines) {
            if (!arrangement.contains(line)) found[line] |= kPool;
        }
    }

    std::vector<ExtensionCandidate> out;
    out.reserve(found.size());
    for (const auto& [line, mask] : found) {
        if (config.delta_b2_target && delta_b2(arrangement, line) != *config.delta_b2_target) continue;
        out.push_back({line, mask});
    }
    return out;
}

ExtensionReport bootstrap_extend(const Arrangement& seed, int d1p, int d2p, const ExtensionConfig& config) {
    config.validate();
    const long n = static_cast<long>(seed.size());
    if (d1p + d2p != n) throw DegreeMismatch("extension exponents must satisfy d1' + d2' = n(seed)");
    if (d1p < 1 || d2p < 1) throw DegreeMismatch("extension exponents must be positive");
    if (d1p > d2p) std::swap(d1p, d2p);

    ExtensionReport report;
    report.delta_b2_target = config.delta_b2_target.value_or(n + static_cast<long>(d1p) * d2p - seed.summary().b2);
    ExtensionConfig filtered = config;
    filtered.delta_b2_target = report.delta_b2_target;
    const std::vector<ExtensionCandidate> candidates = enumerate_extension_candidates(seed, filtered);
    report.candidates = candidates.size();

    struct Evaluation {
        std::optional<Arrangement> extended;
        double saito = 1.0;
        bool survived = false;
        std::optional<VerificationOutcome> outcome;
    };
    std::vector<Evaluation> evals(candidates.size());
    parallel_for(candidates.size(), config.threads, [&](std::size_t i) {
        Evaluation& e = evals[i];
        e.extended = seed.with_line(candidates[i].line);
        const ExponentCheck check = candidate_exponents(*e.extended);
        if (!check || check.exponents->d1 != d1p || check.exponents->d2 != d2p) return;
        e.saito = saito_functional(*e.extended, d1p, d2p, config.als).loss();
        e.survived = e.saito <= config.prefilter_threshold;
        if (e.survived || config.audit_rejected) e.outcome = verify_free(*e.extended, d1p, d2p, config.verify);
    });

    const std::string seed_hash = arrangement_hash(seed);
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        Evaluation& e = evals[i];
        if (e.survived) ++report.survivors;
        if (!e.outcome || !e.outcome->certified()) continue;
        if (!e.survived) {
            report.findings.push_back("prefilter rejected free extension by " + candidates[i].line.to_string() +
                                      " (S = " + std::to_string(e.saito) + ")");
            continue;
        }
        CatalogEntry entry{std::move(*e.extended), std::move(*e.outcome->certificate), "", seed_hash,
                           source_name(candidates[i].sources), report.delta_b2_target, e.saito};
        entry.hash = arrangement_hash(entry.arrangement);
        report.discoveries.push_back(std::move(entry));
    }
    return report;
}

Arrangement supersolvable_two_pencil(int d1, int d2) {
    if (d1 < 1 || d2 < d1) throw Error("two-pencil construction needs 1 <= d1 <= d2");
    std::vector<Line> lines;
    lines.push_back(Line::from_integers(0, 0, 1));
    for (int a = 0; a < d1; ++a) lines.push_back(Line::from_integers(1, 0, -a));
    for (int b = 0; b < d2; ++b) lines.push_back(Line::from_integers(0, 1, -b));
    return build_arrangement(std::move(lines));
}

std::vector<BeamEntry> beam_search_build(const BeamConfig& config) {
    if (config.n < 1) throw Error("beam search needs n >= 1");
    if (config.beam_width < 1) throw Error("beam width must be at least 1");
    config.weights.validate();
    ScoreConfig scores = config.scores;
    if (config.targets) scores.targets = config.targets;
    scores.validate();
    const std::vector<Line> pool = candidate_pool(config.pool_bound).lines;

    struct Partial {
        std::vector<Line> lines;
        std::optional<Arrangement> arrangement;
        double cumulative = 0;
        std::vector<RewardBreakdown> trace;
        std::uint64_t tiebreak = 0;
    };
    auto tiebreak_of = [&](const std::string& hash) {
        return splitmix64(config.seed ^ std::stoull(hash, nullptr, 16));
    };

    std::vector<Partial> beam(1);
    for (int step = 1; step <= config.n; ++step) {
        const bool terminal = step == config.n;
        // Children keyed by line set. Among parents producing the same set, keep the one maximizing
        // cumulative reward minus its weighted count of >=3 points, which is exactly the best child total.
        struct Child {
            std::size_t parent;
            Line line;
            double key;
        };
        std::map<std::string, Child> children;
        for (std::size_t p = 0; p < beam.size(); ++p) {
            const Partial& parent = beam[p];
            const long m3 = parent.arrangement ? parent.arrangement->summary().points_with_multiplicity_at_least(3) : 0;
            const double key = parent.cumulative - config.weights.mult * static_cast<double>(m3);
            for (const Line& line : pool) {
                if (parent.arrangement && parent.arrangement->contains(line)) continue;
                std::vector<Line> lines = parent.lines;
                lines.push_back(line);
                std::sort(lines.begin(), lines.end());
                std::string set_key;
                for (const Line& l : lines) set_key += l.to_string();
                auto it = children.find(set_key);
                if (it == children.end() || key > it->second.key) children.insert_or_assign(set_key, Child{p, line, key});
            }
        }

        std::vector<Child> flat;
        flat.reserve(children.size());
        for (auto& [k, child] : children) flat.push_back(child);
        std::vector<Partial> next(flat.size());
        parallel_for(flat.size(), config.threads, [&](std::size_t i) {
            const Partial& parent = beam[flat[i].parent];
            Partial child;
            child.lines = parent.lines;
            child.lines.push_back(flat[i].line);
            child.arrangement = build_arrangement(child.lines);
            const LatticeSummary empty;
            const LatticeSummary& prev = parent.arrangement ? parent.arrangement->summary() : empty;
            const RewardBreakdown r = reward(*child.arrangement, prev, config.weights, scores, terminal);
            child.trace = parent.trace;
            child.trace.push_back(r);
            child.cumulative = parent.cumulative + r.total;
            child.tiebreak = tiebreak_of(arrangement_hash(*child.arrangement));
            next[i] = std::move(child);
        });
        std::sort(next.begin(), next.end(), [](const Partial& a, const Partial& b) {
            if (a.cumulative != b.cumulative) return a.cumulative > b.cumulative;
            return a.tiebreak < b.tiebreak;
        });
        if (next.size() > config.beam_width) next.resize(config.beam_width);
        beam = std::move(next);
        if (beam.empty()) break;
    }

    std::vector<BeamEntry> out;
    for (Partial& p : beam) {
        if (!p.arrangement) continue;
        BeamEntry entry{std::move(*p.arrangement), p.cumulative, std::move(p.trace), {}, {}, {}};
        entry.alg = sigma_alg(entry.arrangement, scores);
        VerifyOptions options;
        options.als = scores.als;
        const VerificationOutcome outcome = verify_free(entry.arrangement, options);
        entry.status = outcome.status;
        entry.certificate = outcome.certificate;
        out.push_back(std::move(entry));
    }
    std::stable_sort(out.begin(), out.end(), [](const BeamEntry& a, const BeamEntry& b) {
        if (a.alg.value != b.alg.value) return a.alg.value > b.alg.value;
        const bool ca = a.status == VerificationStatus::certified, cb = b.status == VerificationStatus::certified;
        return ca && !cb;
    });
    return out;
}

CascadeReport cascade(const std::vector<Arrangement>& seeds, const CascadeConfig& config) {
    config.extension.validate();
    CascadeReport report;

    std::vector<Arrangement> frontier;
    for (const Arrangement& seed : seeds) {
        const VerificationOutcome outcome = verify_free(seed, config.extension.verify);
        if (!outcome.certified()) {
            report.findings.push_back("seed " + arrangement_hash(seed) + " skipped: " + to_string(outcome.status));
            continue;
        }
        CatalogEntry entry{seed, *outcome.certificate, arrangement_hash(seed), "", "seed", {}, {}};
        if (report.catalog.add(std::move(entry))) frontier.push_back(seed);
    }

    auto by_size_then_hash = [](const Arrangement& a, const Arrangement& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return arrangement_hash(a) < arrangement_hash(b);
    };
    std::sort(frontier.begin(), frontier.end(), by_size_then_hash);

    while (!frontier.empty()) {
        std::vector<Arrangement> next;
        for (const Arrangement& seed : frontier) {
            const int n = static_cast<int>(seed.size());
            if (n >= config.n_max) continue;
            std::vector<ExponentPair> targets;
            if (config.targets.empty()) {
                targets = admissible_exponents(n + 1);
            } else {
                for (const auto& t : config.targets) {
                    if (t.first + t.second == n) targets.push_back(t);
                }
            }
            for (const auto& [d1p, d2p] : targets) {
                ExtensionReport ext = bootstrap_extend(seed, d1p, d2p, config.extension);
                for (auto& finding : ext.findings) report.findings.push_back(std::move(finding));
                for (auto& discovery : ext.discoveries) {
                    Arrangement arrangement = discovery.arrangement;
                    if (report.catalog.add(std::move(discovery))) {
                        ++report.discoveries_per_level[n + 1];
                        next.push_back(std::move(arrangement));
                    }
                }
            }
        }
        std::sort(next.begin(), next.end(), by_size_then_hash);
        if (config.max_seeds_per_level && next.size() > config.max_seeds_per_level) {
            next.erase(next.begin() + static_cast<std::ptrdiff_t>(config.max_seeds_per_level), next.end());
        }
        frontier = std::move(next);
    }
    return report;
}

}  // namespace freearr
