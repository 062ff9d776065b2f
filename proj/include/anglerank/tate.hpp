#ifndef ANGLERANK_TATE_HPP
#define ANGLERANK_TATE_HPP

#include <gmpxx.h>

#include <string>
#include <vector>

#include "anglerank/relations.hpp"
#include "anglerank/spectrum.hpp"
#include "anglerank/weil.hpp"

namespace anglerank {

// Eigenvalue slot layout of H^1(X) for X = A x A, A x E, or A itself.
// Slots carry merged multiplicities per distinct eigenvalue; the folded
// exponent of a profile lives in the angle-lattice coordinates via fold_basis.
struct VarietySpec {
    enum class Kind { SelfProduct, ProductWithE, Single };

    struct Slot {
        int group;  // folded coordinate
        int sign;   // +1 / -1 conjugate orientation (+1 for real eigenvalues)
        int mult;
    };

    Kind kind = Kind::Single;
    std::vector<Slot> slots;
    int dim = 0;
    size_t fold_dim = 0;
    size_t lat_dim = 0;
    std::vector<std::vector<mpz_class>> fold_basis; // fold_dim rows of length lat_dim

    int h1_dim() const;
};

VarietySpec make_variety(VarietySpec::Kind kind, const FrobeniusSpectrum& a,
                         const FrobeniusSpectrum* e = nullptr);

// per-slot counts, 0 <= c_s <= mult(s)
using Profile = std::vector<int>;

int profile_degree(const Profile& c);
mpz_class profile_weight(const VarietySpec& vs, const Profile& c);
std::vector<mpz_class> profile_fold(const VarietySpec& vs, const Profile& c);

bool is_tate(const VarietySpec& vs, const Profile& c, const AngleLattice& lat);

struct DegreeRow {
    int degree = 0;
    mpz_class tate;
    mpz_class lefschetz;
    mpz_class exotic;
};

struct CorollaryCheck {
    std::string id;
    bool pass = true;
    std::string note;
};

struct ExoticReport {
    VarietySpec::Kind kind = VarietySpec::Kind::Single;
    int dim = 0;
    int middle_degree = 0;
    std::vector<DegreeRow> rows; // even degrees 0, 2, ..., 2 dim
    bool lattice_certified = false;
    std::vector<CorollaryCheck> checks;

    const DegreeRow& at_degree(int deg) const;
};

// hypotheses the corollary checks condition on
struct CorollaryContext {
    bool simple_ok = false; // simplicity verdict at least HeuristicYes
    unsigned g = 0;
    int angle_rank = -1;
    bool e_present = false;
    NewtonClass e_class = NewtonClass::Other;
};

mpz_class tate_dimension(const VarietySpec& vs, int degree, const AngleLattice& lat);
mpz_class lefschetz_dimension(const VarietySpec& vs, int degree, const AngleLattice& lat);

ExoticReport exotic_report(const VarietySpec& vs, const AngleLattice& lat,
                           const CorollaryContext& ctx);

// saturated relation lattice over (t_1..t_g, t_E)
AngleLattice joint_lattice(const FrobeniusSpectrum& a, const FrobeniusSpectrum& e,
                           const DetectionParams& params);

} // namespace anglerank

#endif
