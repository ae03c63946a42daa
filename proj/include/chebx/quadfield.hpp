#ifndef CHEBX_QUADFIELD_HPP
#define CHEBX_QUADFIELD_HPP

// Exact prime-splitting arithmetic for quadratic fields over Q: Kronecker
// classification, the inertia-averaged theta weights, the Chebyshev-type
// counting functions psi_C, psi(C;.), psi_L, pi_C, pi(C;.), and the
// Lambda-tilde block inequality check.

#include <gmp.h>

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <stdexcept>
#include <vector>

#include "chebx/primes.hpp"

namespace chebx {
namespace field {

enum class PrimeClass { Split, Inert, Ramified };
enum class ConjClass { Trivial, Nontrivial };

// d = 1 mod 4 squarefree, or d = 4m with m = 2,3 mod 4 squarefree
inline bool is_fundamental(long d) {
    if (d == 0 || d == 1) return false;
    auto squarefree = [](long v) {
        v = std::labs(v);
        for (long q = 2; q * q <= v; ++q) {
            if (v % (q * q) == 0) return false;
        }
        return true;
    };
    long m4 = ((d % 4) + 4) % 4;
    if (m4 == 1) return squarefree(d);
    if (m4 == 0) {
        long m = d / 4;
        long mm4 = ((m % 4) + 4) % 4;
        return (mm4 == 2 || mm4 == 3) && squarefree(m);
    }
    return false;
}

struct QuadraticField {
    long d;
    int r1, r2;
    std::vector<std::uint32_t> ramified; // prime divisors of |d|

    explicit QuadraticField(long disc) : d(disc) {
        if (!is_fundamental(disc))
            throw std::domain_error("QuadraticField: discriminant is not fundamental");
        r1 = d > 0 ? 2 : 0;
        r2 = d > 0 ? 0 : 1;
        long v = std::labs(d);
        for (long q = 2; q * q <= v; ++q)
            if (v % q == 0) {
                ramified.push_back((std::uint32_t)q);
                while (v % q == 0) v /= q;
            }
        if (v > 1) ramified.push_back((std::uint32_t)v);
    }

    double ldl() const { return std::log((double)std::labs(d)); }
    int omega() const { return (int)ramified.size(); }
    // order-2 element: S_g = r2 - 2 r2(E) with E = Q
    int sg_nontrivial() const { return r2; }
    int sg_trivial() const { return r1 + r2; }
};

inline PrimeClass classify_prime(long d, std::uint32_t p) {
    if (!is_fundamental(d)) throw std::domain_error("classify_prime: non-fundamental d");
    if (std::labs(d) % p == 0) return PrimeClass::Ramified;
    mpz_t dz;
    mpz_init_set_si(dz, d);
    int k = mpz_kronecker_ui(dz, p);
    mpz_clear(dz);
    return k == 1 ? PrimeClass::Split : PrimeClass::Inert;
}

// theta(C; p^m) in {0, 1/2, 1}, returned as twice the value to stay integral
inline int theta_weight_times2(long d, ConjClass c, std::uint32_t p, unsigned m) {
    switch (classify_prime(d, p)) {
        case PrimeClass::Ramified:
            return 1; // (eps_C(1) + eps_C(sigma)) / 2 for either class
        case PrimeClass::Split:
            return c == ConjClass::Trivial ? 2 : 0;
        default: // inert: Frobenius = sigma, sigma^m trivial iff m even
            if (m % 2 == 0) return c == ConjClass::Trivial ? 2 : 0;
            return c == ConjClass::Nontrivial ? 2 : 0;
    }
}

struct PsiValues {
    CompensatedSum psi_c;    // psi_C(x): unramified prime powers only
    CompensatedSum psi_full; // psi(C;x) = psi_C + R_G
    CompensatedSum r_g;      // ramified part
};

inline PsiValues psi_functions(const QuadraticField& F, ConjClass c, double x,
                               const Sieve& sieve) {
    PsiValues out;
    if (x < 2) return out;
    if ((double)sieve.limit < x) throw std::domain_error("psi_functions: sieve too small");
    for (std::uint32_t p : sieve.primes) {
        if ((double)p > x) break;
        double lp = std::log((double)p);
        bool ram = std::labs(F.d) % p == 0;
        double pk = p;
        unsigned m = 1;
        while (pk <= x) {
            if (ram) {
                out.r_g.add(0.5 * lp);
                out.psi_full.add(0.5 * lp);
            } else {
                int w2 = theta_weight_times2(F.d, c, p, m);
                if (w2) {
                    out.psi_c.add(0.5 * w2 * lp);
                    out.psi_full.add(0.5 * w2 * lp);
                }
            }
            pk *= p;
            ++m;
            if (pk > 1e18) break;
        }
    }
    return out;
}

// Dedekind psi_L: split p contributes 2 log p at p^m; inert 2 log p at
// p^{2m}; ramified log p at p^m.
inline CompensatedSum psi_L(const QuadraticField& F, double x, const Sieve& sieve) {
    CompensatedSum s;
    if (x < 2) return s;
    if ((double)sieve.limit < x) throw std::domain_error("psi_L: sieve too small");
    for (std::uint32_t p : sieve.primes) {
        if ((double)p > x) break;
        double lp = std::log((double)p);
        PrimeClass pc = classify_prime(F.d, p);
        double pk = p;
        unsigned m = 1;
        while (pk <= x) {
            switch (pc) {
                case PrimeClass::Split: s.add(2 * lp); break;
                case PrimeClass::Ramified: s.add(lp); break;
                default:
                    if (m % 2 == 0) s.add(2 * lp);
                    break;
            }
            pk *= p;
            ++m;
            if (pk > 1e18) break;
        }
    }
    return s;
}

struct PiValues {
    std::uint64_t pi_c = 0;  // plain count of unramified p <= x with Frob in C
    CompensatedSum pi_full;  // log-weighted: sum theta(C;p) log p over p <= x
};

inline PiValues pi_functions(const QuadraticField& F, ConjClass c, double x,
                             const Sieve& sieve) {
    PiValues out;
    if (x < 2) return out;
    if ((double)sieve.limit < x) throw std::domain_error("pi_functions: sieve too small");
    for (std::uint32_t p : sieve.primes) {
        if ((double)p > x) break;
        double lp = std::log((double)p);
        PrimeClass pc = classify_prime(F.d, p);
        if (pc == PrimeClass::Ramified) {
            out.pi_full.add(0.5 * lp);
            continue;
        }
        bool in_class = (pc == PrimeClass::Split) == (c == ConjClass::Trivial);
        if (in_class) {
            out.pi_c++;
            out.pi_full.add(lp);
        }
    }
    return out;
}

// Lambda-tilde block inequality for n_L = 2: for any prime p and l >= 1,
// Ltilde(p^{2l+1}) + Ltilde(p^{2l+2}) >= 2 log p. The comparison is exact:
// both sides are integer multiples of log p.
inline bool prime_power_block_check(const QuadraticField& F, std::uint32_t p, unsigned ell) {
    if (ell < 1) throw std::domain_error("prime_power_block_check: ell >= 1");
    auto coeff = [&](unsigned long k) -> int {
        // Ltilde_L(p^k) as a multiple of log p
        switch (classify_prime(F.d, p)) {
            case PrimeClass::Split: return 2;            // two ideals of norm p^k
            case PrimeClass::Ramified: return 1;         // one ideal of norm p^k
            default: return k % 2 == 0 ? 2 : 0;          // norms are p^{2m}
        }
    };
    return coeff(2 * ell + 1) + coeff(2 * ell + 2) >= 2;
}

} // namespace field
} // namespace chebx

#endif
