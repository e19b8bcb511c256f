#include "freearr/verify.hpp"

#include "freearr/errors.hpp"
#include "freearr/nullspace.hpp"
#include "freearr/parallel.hpp"
#include "freearr/saito_tensor.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

namespace freearr {

namespace {

Derivation to_derivation(int degree, const IntVector& v) {
    Derivation out;
    out.degree = degree;
    out.coeffs.assign(v.begin(), v.end());
    return out;
}

bool is_zero(const RationalVector& v) {
    return std::all_of(v.begin(), v.end(), [](const Rational& x) { return x == 0; });
}

std::size_t max_bits(const IntVector& v) {
    std::size_t bits = 0;
    for (const auto& x : v) bits = std::max(bits, bit_length(x));
    return bits;
}

// Rational combination of exact basis vectors approximating a float kernel vector.
// Exact basis vectors are supported on a single free column each, which gives the coordinates directly.
std::optional<Derivation> rationalize_witness(const Eigen::VectorXd& theta, const NullBasisExact& K, int degree,
                                              long max_den) {
    const std::size_t k = K.nullity();
    std::vector<double> x(k);
    double scale = 0;
    for (std::size_t j = 0; j < k; ++j) {
        const double pivot = K.basis[j][K.free_columns[j]].get_d();
        x[j] = theta(static_cast<Eigen::Index>(K.free_columns[j])) / pivot;
        scale = std::max(scale, std::fabs(x[j]));
    }
    if (scale == 0 || !std::isfinite(scale)) return std::nullopt;
    Derivation out;
    out.degree = degree;
    out.coeffs.assign(K.cols, Rational(0));
    for (std::size_t j = 0; j < k; ++j) {
        const Rational xj = rationalize(x[j] / scale, max_den);
        if (xj == 0) continue;
        for (std::size_t i = 0; i < K.cols; ++i) {
            if (K.basis[j][i] != 0) out.coeffs[i] += xj * K.basis[j][i];
        }
    }
    if (is_zero(out.coeffs)) return std::nullopt;
    const IntVector primitive = primitive_integer_vector(out.coeffs);
    for (std::size_t i = 0; i < K.cols; ++i) out.coeffs[i] = primitive[i];
    return out;
}

FreenessCertificate make_certificate(const Arrangement& A, const IntVector& q, Derivation theta1, Derivation theta2,
                                     RationalVector det) {
    const auto c = proportionality_constant(det, q);
    if (!c) {
        throw InternalInconsistency("nonzero Saito determinant is not proportional to the defining polynomial");
    }
    // Rescale theta2 so the determinant is Q itself; the certificate then carries c = 1.
    for (auto& v : theta2.coeffs) v /= *c;
    for (auto& v : det) v /= *c;
    FreenessCertificate cert;
    cert.d1 = theta1.degree;
    cert.d2 = theta2.degree;
    cert.theta1 = std::move(theta1);
    cert.theta2 = std::move(theta2);
    cert.c = 1;
    cert.determinant = std::move(det);
    cert.arrangement_hash = arrangement_hash(A);
    return cert;
}

}  // namespace

const char* to_string(VerificationStatus status) {
    switch (status) {
        case VerificationStatus::certified: return "certified";
        case VerificationStatus::not_free_at_exponents: return "not_free_at_exponents";
        case VerificationStatus::no_candidate_exponents: return "no_candidate_exponents";
    }
    return "unknown";
}

std::optional<Rational> proportionality_constant(const RationalVector& det, const IntVector& q) {
    if (det.size() != q.size()) return std::nullopt;
    std::optional<Rational> c;
    for (std::size_t i = 0; i < q.size(); ++i) {
        if (q[i] != 0) {
            c = det[i] / q[i];
            break;
        }
    }
    if (!c || *c == 0) return std::nullopt;
    for (std::size_t i = 0; i < q.size(); ++i) {
        if (det[i] != *c * q[i]) return std::nullopt;
    }
    return c;
}

RationalVector exact_determinant(const Arrangement& arrangement, const Derivation& theta1, const Derivation& theta2) {
    if (theta1.degree + theta2.degree != static_cast<int>(arrangement.size()) - 1) {
        throw DegreeMismatch("derivation degrees " + std::to_string(theta1.degree) + " + " +
                             std::to_string(theta2.degree) + " != n - 1");
    }
    return saito_determinant(theta1, theta2);
}

VerificationOutcome verify_free(const Arrangement& arrangement, int d1, int d2, const VerifyOptions& options) {
    const int n = static_cast<int>(arrangement.size());
    if (d1 + d2 != n - 1) throw DegreeMismatch("exponents must satisfy d1 + d2 = n - 1");
    if (d1 < 1 || d2 < 1) throw DegreeMismatch("exponents must be positive");
    if (d1 > d2) std::swap(d1, d2);

    VerificationOutcome out;
    out.proof.d1 = d1;
    out.proof.d2 = d2;

    const DerivationMatrix M1 = derivation_matrix(arrangement, d1);
    const NullBasisExact K1 = null_space_exact(M1);
    const DerivationMatrix M2 = d2 == d1 ? M1 : derivation_matrix(arrangement, d2);
    const NullBasisExact K2 = d2 == d1 ? K1 : null_space_exact(M2);
    out.proof.k1 = K1.nullity();
    out.proof.k2 = K2.nullity();
    const IntVector q = q_coefficient_vector(arrangement);

    if (K1.nullity() > 0 && K2.nullity() > 0 && options.als_hint) {
        const NullBasisFloat V1 = to_float_basis(K1);
        const NullBasisFloat V2 = d2 == d1 ? V1 : to_float_basis(K2);
        const SaitoTensor T = SaitoTensor::assemble(arrangement, d1, V1, d2, V2, options.als.tensor_budget);
        const ALSResult als = als_minimize(T, options.als);
        out.als_loss = als.loss;
        if (als.status == ALSStatus::ok) {
            // Coarse denominators first: any nonzero determinant certifies, and small ones read better.
            const Eigen::VectorXd w1 = V1.V * als.alpha1, w2 = V2.V * als.alpha2;
            for (long den = 1; den <= options.max_denominator; den *= 10) {
                auto theta1 = rationalize_witness(w1, K1, d1, den);
                auto theta2 = rationalize_witness(w2, K2, d2, den);
                if (!theta1 || !theta2) continue;
                RationalVector det = saito_determinant(*theta1, *theta2);
                if (is_zero(det)) continue;
                out.certificate = make_certificate(arrangement, q, std::move(*theta1), std::move(*theta2),
                                                   std::move(det));
                out.status = VerificationStatus::certified;
                out.witness = "als";
                return out;
            }
        }
    }

    const std::vector<std::size_t> C1 = K1.nullity() ? euler_complement(K1, d1) : std::vector<std::size_t>{};
    const std::vector<std::size_t> C2 = K2.nullity() ? euler_complement(K2, d2) : std::vector<std::size_t>{};
    out.proof.quotient1 = C1.size();
    out.proof.quotient2 = C2.size();

    std::vector<std::tuple<std::size_t, std::size_t, std::size_t>> pairs;  // (bits, i, j)
    for (std::size_t i : C1) {
        for (std::size_t j : C2) {
            if (d1 == d2 && j <= i) continue;  // det(theta, theta) = 0 and the map is antisymmetric
            pairs.emplace_back(max_bits(K1.basis[i]) + max_bits(K2.basis[j]), i, j);
        }
    }
    std::sort(pairs.begin(), pairs.end());

    const unsigned threads = options.threads ? options.threads : default_threads();
    const std::size_t batch = std::max<std::size_t>(1, 2 * threads);
    for (std::size_t start = 0; start < pairs.size(); start += batch) {
        const std::size_t count = std::min(batch, pairs.size() - start);
        std::vector<RationalVector> dets(count);
        parallel_for(count, threads, [&](std::size_t t) {
            const auto& [bits, i, j] = pairs[start + t];
            dets[t] = saito_determinant(to_derivation(d1, K1.basis[i]), to_derivation(d2, K2.basis[j]));
        });
        for (std::size_t t = 0; t < count; ++t) {
            ++out.proof.pairs_checked;
            if (is_zero(dets[t])) continue;
            const auto& [bits, i, j] = pairs[start + t];
            out.certificate = make_certificate(arrangement, q, to_derivation(d1, K1.basis[i]),
                                               to_derivation(d2, K2.basis[j]), std::move(dets[t]));
            out.status = VerificationStatus::certified;
            out.witness = "scan";
            return out;
        }
    }
    out.status = VerificationStatus::not_free_at_exponents;
    out.reason = out.proof.k1 == 0 || out.proof.k2 == 0 ? "empty kernel" : "all basis-pair determinants vanish";
    return out;
}

VerificationOutcome verify_free(const Arrangement& arrangement, const VerifyOptions& options) {
    const ExponentCheck check = candidate_exponents(arrangement);
    if (!check) {
        VerificationOutcome out;
        out.status = VerificationStatus::no_candidate_exponents;
        out.reason = to_string(check.status);
        return out;
    }
    return verify_free(arrangement, check.exponents->d1, check.exponents->d2, options);
}

CertificateCheck check_certificate(const Arrangement& arrangement, const FreenessCertificate& cert) {
    CertificateCheck out;
    auto fail = [&](std::string why) {
        out.failure = std::move(why);
        return out;
    };
    if (!cert.arrangement_hash.empty() && cert.arrangement_hash != arrangement_hash(arrangement)) {
        return fail("arrangement hash mismatch");
    }
    const int n = static_cast<int>(arrangement.size());
    if (cert.theta1.degree != cert.d1 || cert.theta2.degree != cert.d2 || cert.d1 + cert.d2 != n - 1 ||
        cert.d1 < 1 || cert.d2 < 1) {
        return fail("exponents do not satisfy d1 + d2 = n - 1");
    }
    if (cert.theta1.coeffs.size() != 3 * monomial_count(cert.d1) ||
        cert.theta2.coeffs.size() != 3 * monomial_count(cert.d2)) {
        return fail("derivation coefficient count does not match its degree");
    }
    if (!derivation_matrix(arrangement, cert.d1).annihilates(cert.theta1.coeffs)) {
        return fail("kernel membership: theta1 is not logarithmic");
    }
    if (!derivation_matrix(arrangement, cert.d2).annihilates(cert.theta2.coeffs)) {
        return fail("kernel membership: theta2 is not logarithmic");
    }
    const RationalVector det = saito_determinant(cert.theta1, cert.theta2);
    if (!cert.determinant.empty() && cert.determinant != det) {
        return fail("stored determinant differs from the recomputed determinant");
    }
    if (cert.c == 0) return fail("c is zero");
    const IntVector q = q_coefficient_vector(arrangement);
    for (std::size_t i = 0; i < q.size(); ++i) {
        if (det[i] != cert.c * q[i]) return fail("determinant ≠ c·Q");
    }
    out.ok = true;
    return out;
}

}  // namespace freearr
