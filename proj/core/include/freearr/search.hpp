#pragma once

#include "freearr/als.hpp"
#include "freearr/arrangement.hpp"
#include "freearr/catalog.hpp"
#include "freearr/scores.hpp"
#include "freearr/verify.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace freearr {

struct CandidatePool {
    int bound = 0;
    std::vector<Line> lines;  // canonical, sorted
};

/// One canonical line per projective class of nonzero integer triples with max |coordinate| <= R.
CandidatePool candidate_pool(int R);

/// b2(A + L) - b2(A) = n - sum over existing points p on L of (m_p - 1). Throws DuplicateLine.
long delta_b2(const Arrangement& arrangement, const Line& line);

std::vector<ExponentPair> admissible_exponents(int n);

enum CandidateSource : unsigned {
    kPointPairs = 1u,
    kPool = 2u,
    kMultiPoint = 4u,
    kAllSources = 7u,
};

const char* source_name(unsigned source);

struct ExtensionConfig {
    double prefilter_threshold = 0.05;
    unsigned sources = kAllSources;
    int pool_bound = 2;
    std::optional<long> delta_b2_target;  // overrides the value implied by the target exponents
    bool audit_rejected = false;          // also verify prefilter rejects and report any that certify
    ALSConfig als;
    VerifyOptions verify;
    unsigned threads = 0;

    void validate() const;
};

struct ExtensionCandidate {
    Line line;
    unsigned sources = 0;  // bitmask of CandidateSource
};

/// Deduplicated candidates from the enabled sources, sorted by canonical form, excluding lines of A.
/// Filtered to an exact delta-b2 when config.delta_b2_target is set.
std::vector<ExtensionCandidate> enumerate_extension_candidates(const Arrangement& arrangement,
                                                               const ExtensionConfig& config);

struct ExtensionReport {
    std::vector<CatalogEntry> discoveries;  // ordered by the added line
    std::size_t candidates = 0;
    std::size_t survivors = 0;
    long delta_b2_target = 0;
    std::vector<std::string> findings;  // prefilter rejections that turned out free
};

/// Adds one line to a free seed, aiming at exponents (d1p, d2p) with d1p + d2p = n(seed).
ExtensionReport bootstrap_extend(const Arrangement& seed, int d1p, int d2p, const ExtensionConfig& config);

/// Shared line z, d1 lines x - a z through [0:1:0], d2 lines y - b z through [1:0:0].
Arrangement supersolvable_two_pencil(int d1, int d2);

struct BeamConfig {
    int n = 3;
    std::optional<ExponentPair> targets;
    RewardWeights weights;
    ScoreConfig scores;
    int pool_bound = 1;
    std::size_t beam_width = 4;
    std::uint64_t seed = 20240917;
    unsigned threads = 0;
};

struct BeamEntry {
    Arrangement arrangement;
    double cumulative_reward = 0;
    std::vector<RewardBreakdown> trace;
    AlgebraicScore alg;
    VerificationStatus status = VerificationStatus::no_candidate_exponents;
    std::optional<FreenessCertificate> certificate;
};

/// Deterministic beam over the pool using the per-step reward. The final beam is sorted by sigma_alg,
/// then certified before uncertified.
std::vector<BeamEntry> beam_search_build(const BeamConfig& config);

struct CascadeConfig {
    int n_max = 9;
    std::vector<ExponentPair> targets;  // empty: every admissible pair at each level
    ExtensionConfig extension;
    std::size_t max_seeds_per_level = 16;  // 0: unbounded
};

struct CascadeReport {
    Catalog catalog;
    std::map<int, std::size_t> discoveries_per_level;
    std::vector<std::string> findings;
};

/// Extends certified seeds level by level up to n_max. Seeds that do not certify at their
/// candidate exponents are skipped and reported.
CascadeReport cascade(const std::vector<Arrangement>& seeds, const CascadeConfig& config);

}  // namespace freearr
