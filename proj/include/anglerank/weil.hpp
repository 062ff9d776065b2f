#ifndef ANGLERANK_WEIL_HPP
#define ANGLERANK_WEIL_HPP

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

namespace anglerank {

struct FrobeniusSpectrum;

// Validated Weil q-polynomial: monic, degree 2g, coefficients ascending,
// functional equation a_i = q^(g-i) a_(2g-i). Root moduli are certified
// separately by compute_spectrum.
struct WeilPolynomial {
    std::vector<mpz_class> coeffs;
    mpz_class q;
    mpz_class p;
    unsigned r = 0;
    unsigned g = 0;

    int degree() const { return static_cast<int>(coeffs.size()) - 1; }
};

// Slopes ascending in [0, 1] with multiplicities summing to 2g,
// symmetric under s <-> 1-s.
struct NewtonPolygon {
    std::vector<std::pair<mpq_class, int>> slopes;
};

enum class NewtonClass { Ordinary, AlmostOrdinary, Supersingular, Other };

const char* newton_class_name(NewtonClass c);

struct SimplicityVerdict {
    enum class Certificate { ModPWitness, SubsetFactorExhaustion };
    enum class Abs { Yes, HeuristicYes, No };

    bool irreducible = false;
    Certificate certificate = Certificate::SubsetFactorExhaustion;
    uint64_t mod_p_witness = 0;               // prime ell when certificate is ModPWitness
    std::vector<mpz_class> factor_witness;    // nontrivial factor when reducible
    Abs absolutely_simple = Abs::No;
    int m_checked = 0;                        // m_max for (Heuristic)Yes, witness m for No
};

WeilPolynomial parse_weil(const std::vector<mpz_class>& coeffs, const mpz_class& q);

NewtonPolygon newton_polygon(const WeilPolynomial& f);

NewtonClass classify_newton(const NewtonPolygon& np, unsigned g);

// Weil polynomial over F_(q^m) whose roots are the m-th powers, exact.
WeilPolynomial base_extend(const WeilPolynomial& f, unsigned m);

// Irreducibility decided exactly (mod-ell witness, else subset-factor
// exhaustion over the certified enclosures). Absolute simplicity is the
// f_m-irreducibility heuristic for m = 2..m_max.
SimplicityVerdict simplicity(const WeilPolynomial& f, const FrobeniusSpectrum& s,
                             int m_max, long precision_cap = 16384);

} // namespace anglerank

#endif
