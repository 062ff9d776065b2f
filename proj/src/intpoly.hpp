#ifndef ANGLERANK_INTPOLY_HPP
#define ANGLERANK_INTPOLY_HPP

#include <gmpxx.h>
#include <cstdint>
#include <vector>

namespace anglerank {

// Integer polynomials as ascending coefficient vectors. The zero polynomial
// is the empty vector; nonzero polynomials keep coeffs.back() != 0.
using IntPoly = std::vector<mpz_class>;

namespace poly {

int degree(const IntPoly& f); // -1 for zero
void normalize(IntPoly& f);
bool is_monic(const IntPoly& f);
bool is_zero(const IntPoly& f);

IntPoly add(const IntPoly& a, const IntPoly& b);
IntPoly sub(const IntPoly& a, const IntPoly& b);
IntPoly mul(const IntPoly& a, const IntPoly& b);
IntPoly derivative(const IntPoly& f);
mpz_class eval(const IntPoly& f, const mpz_class& x);

// Quotient of exact division, or false if the division leaves a remainder.
bool divide_exact(const IntPoly& num, const IntPoly& den, IntPoly& quot);

// Monic gcd over Q of two nonzero integer polynomials, returned as the
// primitive integer polynomial with positive leading coefficient.
IntPoly gcd_primitive(const IntPoly& a, const IntPoly& b);

// Yun's algorithm: f monic, returns pairs (u, m) with f = prod u^m, u monic
// squarefree pairwise coprime, m ascending.
std::vector<std::pair<IntPoly, int>> squarefree_decomposition(const IntPoly& f);

// Power sums p_k = sum of roots^k for k = 0..count-1, via Newton's identities
// on a monic polynomial (exact integer recurrence).
std::vector<mpz_class> power_sums(const IntPoly& f, int count);

// Monic polynomial of degree deg with prescribed power sums p_1..p_deg.
// Throws if the reconstruction is not integral.
IntPoly from_power_sums(const std::vector<mpz_class>& ps, int deg);

// Irreducibility of f modulo a prime ell (f monic, ell not dividing lc).
// Returns false if f mod ell has degree loss, is not squarefree, or factors.
bool irreducible_mod_p(const IntPoly& f, uint64_t ell);

std::string to_string(const IntPoly& f); // human-readable, for messages

} // namespace poly
} // namespace anglerank

#endif
