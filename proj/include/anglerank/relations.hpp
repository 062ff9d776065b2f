#ifndef ANGLERANK_RELATIONS_HPP
#define ANGLERANK_RELATIONS_HPP

#include <gmpxx.h>

#include <functional>
#include <vector>

#include "anglerank/ball.hpp"
#include "anglerank/spectrum.hpp"

namespace anglerank {

enum class CertStatus { Certified, Heuristic, Refuted };

const char* cert_status_name(CertStatus s);

struct RelationCertificate {
    std::vector<mpz_class> e;
    mpq_class claimed;        // claimed value of sum e_i t_i
    bool claimed_known = false;
    CertStatus status = CertStatus::Heuristic;
    long precision_bits = 0;
    double separation_margin = 0.0; // log2(separation bound / |gamma|), > 0 once certified
};

// Certified inputs for relation detection: angles, their beta enclosures, and
// the data behind the separation bound. Joint A x E systems append E's angle.
struct AngleSystem {
    mpz_class q;
    std::vector<RBall> t;
    std::vector<CBall> beta;        // beta_i = q / alpha_i^2
    std::vector<int> group;         // angles from the same enclosure share a group id
    mpz_class split_degree_bound;   // rigorous bound on [splitting field : Q]
    double log2_rho = 0.0;          // upper bound on log2 max(|a|/sqrt q, sqrt q/|a|)
    long precision_bits = 0;
};

using AngleSystemProvider = std::function<AngleSystem(long prec)>;

AngleSystem make_angle_system(const FrobeniusSpectrum& s);
AngleSystem make_joint_system(const FrobeniusSpectrum& a, const FrobeniusSpectrum& e);

struct AngleLattice {
    size_t dim = 0;

    // exact relation lattice Gamma_1: HNF rows (e | e0) with sum e_i t_i + e0 = 0
    std::vector<std::pair<std::vector<mpz_class>, mpz_class>> basis_exact;
    std::vector<RelationCertificate> exact_certs;

    struct SatVector {
        std::vector<mpz_class> e;
        RelationCertificate cert;
    };
    std::vector<SatVector> basis_saturated; // HNF rows of the saturation Lambda

    int angle_rank = 0;
    bool stable = false;               // detection agreed across doubled precision
    bool complement_certified = false; // no further relations up to the height bound
    long precision_bits = 0;
    mpz_class height_bound;
    mpz_class denom_bound;

    bool certified() const;
    bool member(const std::vector<mpz_class>& v) const;
};

struct DetectionParams {
    mpz_class height_bound = mpz_class(1) << 20;
    mpz_class denom_bound = 0; // 0: max(60, 4 g^2)
    long precision_bits = 128;
    long precision_cap = 16384;
};

AngleLattice find_relation_lattice(const AngleSystemProvider& provider, size_t dim,
                                   const DetectionParams& params);

// convenience overload for a single spectrum
AngleLattice find_relation_lattice(const FrobeniusSpectrum& s, const DetectionParams& params);

RelationCertificate certify_relation(const AngleSystemProvider& provider,
                                     const std::vector<mpz_class>& e, const mpq_class& claimed,
                                     long start_prec, long precision_cap);

RelationCertificate certify_relation(const FrobeniusSpectrum& s, const std::vector<mpz_class>& e,
                                     const mpq_class& claimed, long precision_cap = 16384);

int angle_rank(const AngleLattice& lat);

struct LemmaCheck {
    enum class Verdict { Pass, Fail, NotApplicable };
    Verdict verdict = Verdict::NotApplicable;
    mpz_class n;                      // Pass: the generator is N (1, ..., 1) after sign flips
    std::vector<int> sign_pattern;    // +1 kept, -1 flipped (Pass)
    std::vector<mpz_class> witness;   // Fail: the offending generator
    bool certified = false;
};

struct SimplicityVerdict;
LemmaCheck check_lemma_form(const AngleLattice& lat);

// Necessary consequence of Galois stability: the saturated lattice is closed
// under negation (always true) and, as reported here, under all coordinate
// permutations.
bool galois_stability_probe(const AngleLattice& lat);

// Simplest rational in the certified interval with denominator <= dmax.
bool reconstruct_rational(const RBall& x, const mpz_class& dmax, mpq_class& out);

} // namespace anglerank

#endif
