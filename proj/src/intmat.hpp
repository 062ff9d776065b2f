#ifndef ANGLERANK_INTMAT_HPP
#define ANGLERANK_INTMAT_HPP

#include <gmpxx.h>
#include <vector>

namespace anglerank {

using ZVec = std::vector<mpz_class>;
using ZMat = std::vector<ZVec>; // row-major

namespace zmat {

ZMat identity(size_t n);
ZMat mul(const ZMat& a, const ZMat& b);
ZVec mul_vec(const ZVec& x, const ZMat& a); // row vector times matrix

// Canonical row Hermite normal form of the row lattice: nonzero rows only,
// pivot columns strictly increasing, positive pivots, entries above each
// pivot reduced into [0, pivot).
ZMat hnf(ZMat a);

// Does v lie in the Z-row-space of the HNF matrix h?
bool hnf_member(const ZMat& h, const ZVec& v);

// Solve x * h = v over Z for HNF h; false when v is outside the row space.
bool hnf_solve(const ZMat& h, const ZVec& v, ZVec& x);

// Smith normal form with transforms: u * a * v = diag(d), d_1 | d_2 | ...,
// nonzero entries first. u, v unimodular.
void snf(const ZMat& a, ZVec& diag, ZMat& u, ZMat& v);

// Exact inverse of a matrix with determinant +-1.
ZMat inverse_unimodular(const ZMat& v);

// Saturation of the row lattice of a inside Z^n, plus a complement basis
// completing it to a basis of Z^n. Either output may be empty (rank 0 / full).
void saturate(const ZMat& a, size_t n, ZMat& sat, ZMat& complement);

} // namespace zmat

// Exact integral LLL with delta = 99/100 on the rows of b (full row rank
// required). On return d has size rows+1 with d[0] = 1 and
// ||b*_i||^2 = d[i]/d[i-1] for the reduced basis.
void lll_reduce(ZMat& b, ZVec& d);

} // namespace anglerank

#endif
