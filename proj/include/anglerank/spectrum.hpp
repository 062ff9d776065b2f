#ifndef ANGLERANK_SPECTRUM_HPP
#define ANGLERANK_SPECTRUM_HPP

#include <gmpxx.h>

#include <vector>

#include "anglerank/ball.hpp"
#include "anglerank/weil.hpp"

namespace anglerank {

struct RootEnclosure {
    CBall disk;
    int multiplicity = 1;
    int conj_index = -1;  // index of the enclosure of the conjugate root (self for real roots)
    bool real = false;
};

// Certified enclosures of the 2g Frobenius eigenvalues. Distinct roots are
// stored once with multiplicity; the 2g index slots map onto them with
// slots 0..g-1 sorted by angle ascending in [0,1] and slot i+g carrying the
// conjugate, so the pairing involution is i <-> i+g.
struct FrobeniusSpectrum {
    mpz_class q;
    unsigned g = 0;
    long precision_bits = 0;
    std::vector<mpz_class> poly;
    std::vector<RootEnclosure> roots;
    std::vector<int> slot_root;  // size 2g

    int pairing(int slot) const { return (slot + static_cast<int>(g)) % (2 * static_cast<int>(g)); }
    const RootEnclosure& enclosure(int slot) const { return roots[slot_root[slot]]; }
    const CBall& alpha(int slot) const { return roots[slot_root[slot]].disk; }
};

// t_i = arg(alpha_i)/pi for the g upper slots; exact zero-width intervals for
// the real eigenvalues (t = 0 or 1). root_index records which enclosure each
// angle came from, so exactly-equal angles are recognizable downstream.
struct AngleVector {
    std::vector<RBall> t;
    std::vector<int> root_index;
    long precision_bits = 0;
};

FrobeniusSpectrum compute_spectrum(const WeilPolynomial& f, long precision_bits,
                                   long precision_cap = 16384);

FrobeniusSpectrum refine(const FrobeniusSpectrum& s, long target_bits,
                         long precision_cap = 16384);

AngleVector angles(const FrobeniusSpectrum& s);

} // namespace anglerank

#endif
