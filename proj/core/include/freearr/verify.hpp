#pragma once

#include "freearr/als.hpp"
#include "freearr/arrangement.hpp"
#include "freearr/derivation.hpp"

#include <optional>
#include <string>

namespace freearr {

struct FreenessCertificate {
    int d1 = 0, d2 = 0;
    Derivation theta1, theta2;
    Rational c;  // verify_free normalizes theta2 so that c = 1
    RationalVector determinant;  // degree-n coefficients, equal to c * Q
    std::string arrangement_hash;
};

/// Evidence that the Saito determinant vanishes on every pair of kernel vectors at (d1, d2).
/// Says nothing about other exponent pairs.
struct NotFreeProof {
    int d1 = 0, d2 = 0;
    std::size_t k1 = 0, k2 = 0;
    std::size_t quotient1 = 0, quotient2 = 0;  // dimensions after removing Euler multiples
    std::size_t pairs_checked = 0;
};

enum class VerificationStatus { certified, not_free_at_exponents, no_candidate_exponents };
const char* to_string(VerificationStatus status);

struct VerificationOutcome {
    VerificationStatus status = VerificationStatus::no_candidate_exponents;
    std::optional<FreenessCertificate> certificate;
    NotFreeProof proof;
    std::string reason;
    std::string witness;  // "als" or "scan" for certified outcomes
    double als_loss = -1;  // when the ALS hint ran

    bool certified() const noexcept { return status == VerificationStatus::certified; }
};

struct VerifyOptions {
    bool als_hint = true;
    ALSConfig als;
    long max_denominator = 1000000;
    unsigned threads = 0;
};

/// Exact x(g1 h2 - g2 h1) - y(f1 h2 - f2 h1) + z(f1 g2 - f2 g1). Throws DegreeMismatch unless
/// deg theta1 + deg theta2 = n - 1.
RationalVector exact_determinant(const Arrangement& arrangement, const Derivation& theta1, const Derivation& theta2);

/// Throws DegreeMismatch unless d1 + d2 = n - 1, InternalInconsistency if a nonzero determinant
/// is not proportional to Q.
VerificationOutcome verify_free(const Arrangement& arrangement, int d1, int d2, const VerifyOptions& options = {});
/// At the candidate exponents; NoCandidateExponents outcome when there are none.
VerificationOutcome verify_free(const Arrangement& arrangement, const VerifyOptions& options = {});

struct CertificateCheck {
    bool ok = false;
    std::string failure;  // first failing check

    explicit operator bool() const noexcept { return ok; }
};

CertificateCheck check_certificate(const Arrangement& arrangement, const FreenessCertificate& certificate);

/// Returns c when det = c * Q with c != 0.
std::optional<Rational> proportionality_constant(const RationalVector& det, const IntVector& q);

}  // namespace freearr
