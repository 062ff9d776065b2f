#ifndef ANGLERANK_TESTS_CORPUS_GEN_HPP
#define ANGLERANK_TESTS_CORPUS_GEN_HPP

#include <vector>

#include "anglerank/spectrum.hpp"
#include "anglerank/weil.hpp"
#include "intpoly.hpp"

namespace anglerank::testgen {

// deterministic corpus of valid Weil polynomials with g in {1, 2, 3}:
// all quadratics over small q, quartic/sextic irreducible-shaped families,
// and products of smaller entries
inline std::vector<WeilPolynomial> corpus()
{
    std::vector<WeilPolynomial> out;
    auto try_add = [&](const std::vector<mpz_class>& coeffs, const mpz_class& q) {
        try {
            WeilPolynomial f = parse_weil(coeffs, q);
            compute_spectrum(f, 128, 4096);
            out.push_back(std::move(f));
            return true;
        } catch (...) {
            return false;
        }
    };

    for (long q : {2L, 3L, 4L, 5L})
        for (long a = -5; a <= 5; ++a) {
            if (a * a > 4 * q) continue;
            try_add({mpz_class(q), mpz_class(-a), 1}, q);
        }

    // quartics x^4 + a x^3 + b x^2 + qa x + q^2 over F_2 and F_3
    for (long q : {2L, 3L}) {
        for (long a = -3; a <= 3; ++a)
            for (long b = -2 * q; b <= 2 * q; ++b)
                try_add({mpz_class(q * q), mpz_class(q * a), mpz_class(b), mpz_class(a), 1}, q);
    }

    // sextics x^6 + a x^5 + b x^4 + c x^3 + qb x^2 + q^2 a x + q^3 over F_2
    for (long a = -2; a <= 2; ++a)
        for (long b = -3; b <= 3; ++b)
            for (long c = -4; c <= 4; c += 2)
                try_add({8, mpz_class(4 * a), mpz_class(2 * b), mpz_class(c), mpz_class(b),
                         mpz_class(a), 1},
                        2);

    // products of quadratics over F_2 (g = 2 and g = 3 entries with known factors)
    std::vector<IntPoly> quads;
    for (long a = -2; a <= 2; ++a) quads.push_back({2, mpz_class(-a), 1});
    for (size_t i = 0; i < quads.size(); ++i)
        for (size_t j = i; j < quads.size(); ++j)
            try_add(poly::mul(quads[i], quads[j]), 2);
    try_add(poly::mul(poly::mul(quads[0], quads[2]), quads[4]), 2);
    try_add(poly::mul(poly::mul(quads[1], quads[2]), quads[3]), 2);

    return out;
}

// the frozen criterion-2 sextics: irreducible, almost ordinary, heuristically
// absolutely simple, certified angle rank 2
inline std::vector<std::pair<std::string, WeilPolynomial>> lemma_sextics()
{
    std::vector<std::pair<std::string, WeilPolynomial>> out;
    out.emplace_back("3.2.ac_b_a", parse_weil({8, -8, 2, 0, 1, -2, 1}, 2));
    out.emplace_back("3.2.a_ab_ac", parse_weil({8, 0, -2, -2, -1, 0, 1}, 2));
    out.emplace_back("3.2.a_ab_c", parse_weil({8, 0, -2, 2, -1, 0, 1}, 2));
    out.emplace_back("3.3.ae_k_av", parse_weil({27, -36, 30, -21, 10, -4, 1}, 3));
    out.emplace_back("3.3.ac_ac_j", parse_weil({27, -18, -6, 9, -2, -2, 1}, 3));
    return out;
}

} // namespace anglerank::testgen

#endif
