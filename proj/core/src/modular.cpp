#include "modular.hpp"

namespace freearr::detail {

u64 pow_mod(u64 base, u64 exp, u64 p) {
    u64 result = 1 % p;
    base %= p;
    while (exp) {
        if (exp & 1) result = mul_mod(result, base, p);
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    return result;
}

u64 inv_mod(u64 a, u64 p) { return pow_mod(a, p - 2, p); }

bool is_prime(u64 n) {
    if (n < 2) return false;
    for (u64 small : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % small == 0) return n == small;
    }
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        u64 x = pow_mod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int r = 1; r < s; ++r) {
            x = mul_mod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

u64 PrimeSequence::next() {
    do {
        --cursor_;
    } while (!is_prime(cursor_));
    return cursor_;
}

void rref_mod(ModRref& m, u64 p) {
    const std::size_t R = m.rows, C = m.cols;
    m.pivots.clear();
    std::size_t r = 0;
    for (std::size_t c = 0; c < C && r < R; ++c) {
        std::size_t piv = R;
        for (std::size_t i = r; i < R; ++i) {
            if (m.entries[i * C + c] != 0) {
                piv = i;
                break;
            }
        }
        if (piv == R) continue;
        u64* prow = m.entries.data() + r * C;
        if (piv != r) {
            u64* other = m.entries.data() + piv * C;
            for (std::size_t j = c; j < C; ++j) std::swap(prow[j], other[j]);
        }
        const u64 inv = inv_mod(prow[c], p);
        for (std::size_t j = c; j < C; ++j) {
            if (prow[j]) prow[j] = mul_mod(prow[j], inv, p);
        }
        // Columns right of c that are nonzero in the pivot row; rows are mostly sparse early on.
        std::vector<std::size_t> support;
        for (std::size_t j = c + 1; j < C; ++j) {
            if (prow[j]) support.push_back(j);
        }
        for (std::size_t i = 0; i < R; ++i) {
            if (i == r) continue;
            u64* row = m.entries.data() + i * C;
            const u64 f = row[c];
            if (f == 0) continue;
            row[c] = 0;
            for (std::size_t j : support) row[j] = sub_mod(row[j], mul_mod(f, prow[j], p), p);
        }
        m.pivots.push_back(c);
        ++r;
    }
}

bool rational_reconstruct(const Integer& a, const Integer& m, Rational& out) {
    // Extended Euclid on (m, a), stopping once the remainder drops below sqrt(m/2).
    Integer bound;
    {
        Integer half = m / 2;
        mpz_sqrt(bound.get_mpz_t(), half.get_mpz_t());
    }
    Integer r0 = m, r1 = a % m;
    if (r1 < 0) r1 += m;
    Integer t0 = 0, t1 = 1;
    Integer q, tmp;
    while (r1 > bound) {
        mpz_fdiv_q(q.get_mpz_t(), r0.get_mpz_t(), r1.get_mpz_t());
        tmp = r0 - q * r1;
        r0 = r1;
        r1 = tmp;
        tmp = t0 - q * t1;
        t0 = t1;
        t1 = tmp;
    }
    if (t1 == 0 || abs(t1) > bound) return false;
    Integer g;
    mpz_gcd(g.get_mpz_t(), r1.get_mpz_t(), t1.get_mpz_t());
    if (g != 1) return false;
    out = Rational(r1, t1);
    out.canonicalize();
    return true;
}

}  // namespace freearr::detail
