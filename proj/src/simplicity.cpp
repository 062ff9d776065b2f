#include "anglerank/errors.hpp"
#include "anglerank/spectrum.hpp"
#include "anglerank/weil.hpp"
#include "intpoly.hpp"

namespace anglerank {

namespace {

constexpr uint64_t kSmallPrimes[] = {2,  3,  5,  7,  11, 13, 17, 19, 23, 29, 31, 37, 41,
                                     43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97};

using RPoly = std::vector<RBall>;

RPoly rpoly_mul(const RPoly& a, const RPoly& b, mpfr_prec_t wp)
{
    RPoly r(a.size() + b.size() - 1, RBall(wp));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] = r[i + j].add(a[i].mul(b[j]));
    return r;
}

// the monic real factor carried by one distinct root: (x - rho) for real
// roots, (x^2 - 2 Re(a) x + |a|^2) for a conjugate pair
RPoly group_factor(const RootEnclosure& r, mpfr_prec_t wp)
{
    RBall one = RBall::from_si(1, wp);
    if (r.real) {
        RPoly f(2, RBall(wp));
        f[0] = r.disk.real_part().neg();
        f[1] = one;
        return f;
    }
    RBall re = r.disk.real_part();
    RBall im = r.disk.imag_part();
    RPoly f(3, RBall(wp));
    f[0] = re.mul(re).add(im.mul(im));
    f[1] = re.mul_q(mpq_class(-2));
    f[2] = one;
    return f;
}

// true factor found (quot set) / false none; throws PrecisionExhausted when the
// enclosures cannot pin integer coefficients within the cap
bool subset_factor_search(const IntPoly& f, FrobeniusSpectrum spec, long precision_cap,
                          IntPoly& witness)
{
    // distinct upper representatives: real roots and one per conjugate pair
    while (true) {
        mpfr_prec_t wp = static_cast<mpfr_prec_t>(spec.precision_bits + 64);
        std::vector<size_t> groups;
        for (size_t k = 0; k < spec.roots.size(); ++k) {
            const RootEnclosure& r = spec.roots[k];
            if (r.real || static_cast<int>(k) < r.conj_index) groups.push_back(k);
        }
        std::vector<int> mult;
        mult.reserve(groups.size());
        for (size_t k : groups) mult.push_back(spec.roots[k].multiplicity);

        std::vector<int> sel(groups.size(), 0);
        bool precision_ok = true;
        while (precision_ok) {
            // next selection (odometer); skip all-zero and full
            size_t pos = 0;
            while (pos < sel.size() && sel[pos] == mult[pos]) {
                sel[pos] = 0;
                ++pos;
            }
            if (pos == sel.size()) break;
            ++sel[pos];
            bool full = true;
            for (size_t i = 0; i < sel.size(); ++i)
                if (sel[i] != mult[i]) full = false;
            if (full) continue;

            RPoly cand(1, RBall::from_si(1, wp));
            for (size_t i = 0; i < groups.size(); ++i)
                for (int c = 0; c < sel[i]; ++c)
                    cand = rpoly_mul(cand, group_factor(spec.roots[groups[i]], wp), wp);

            IntPoly guess(cand.size());
            bool narrow = true;
            for (size_t i = 0; i < cand.size(); ++i) {
                Flt w(64);
                mpfr_mul_2ui(w.raw(), cand[i].rad.raw(), 1, MPFR_RNDU);
                if (mpfr_cmp_ui(w.raw(), 1) >= 0) {
                    narrow = false;
                    break;
                }
                Flt rounded(64);
                mpfr_round(rounded.raw(), cand[i].mid.raw());
                mpfr_get_z(guess[i].get_mpz_t(), rounded.raw(), MPFR_RNDN);
            }
            if (!narrow) {
                precision_ok = false;
                break;
            }
            IntPoly quot;
            if (poly::divide_exact(f, guess, quot) && poly::degree(guess) >= 1) {
                witness = guess;
                return true;
            }
        }
        if (precision_ok) return false;
        long target = spec.precision_bits * 2;
        if (target > precision_cap)
            throw Error(ErrorKind::PrecisionExhausted,
                        "subset-factor exhaustion cannot separate candidate coefficients");
        spec = refine(spec, target, precision_cap);
    }
}

// exact irreducibility with certificate data
void decide_irreducible(const IntPoly& f, const mpz_class& q, long start_prec, long precision_cap,
                        bool& irreducible, SimplicityVerdict::Certificate& certificate,
                        uint64_t& mod_p_witness, IntPoly& factor_witness)
{
    auto sqfree = poly::squarefree_decomposition(f);
    if (sqfree.size() != 1 || sqfree[0].second != 1) {
        irreducible = false;
        certificate = SimplicityVerdict::Certificate::SubsetFactorExhaustion;
        factor_witness = sqfree[0].first;
        return;
    }
    for (uint64_t ell : kSmallPrimes) {
        if (poly::irreducible_mod_p(f, ell)) {
            irreducible = true;
            certificate = SimplicityVerdict::Certificate::ModPWitness;
            mod_p_witness = ell;
            return;
        }
    }
    WeilPolynomial w;
    w.coeffs = f;
    w.q = q;
    w.g = static_cast<unsigned>(poly::degree(f) / 2);
    FrobeniusSpectrum spec = compute_spectrum(w, start_prec, precision_cap);
    certificate = SimplicityVerdict::Certificate::SubsetFactorExhaustion;
    irreducible = !subset_factor_search(f, std::move(spec), precision_cap, factor_witness);
}

} // namespace

SimplicityVerdict simplicity(const WeilPolynomial& f, const FrobeniusSpectrum& s, int m_max,
                             long precision_cap)
{
    SimplicityVerdict v;
    // reuse the provided spectrum for the base polynomial where possible
    auto sqfree = poly::squarefree_decomposition(f.coeffs);
    if (sqfree.size() != 1 || sqfree[0].second != 1) {
        v.irreducible = false;
        v.certificate = SimplicityVerdict::Certificate::SubsetFactorExhaustion;
        v.factor_witness = sqfree[0].first;
    } else {
        bool found_mod = false;
        for (uint64_t ell : kSmallPrimes) {
            if (poly::irreducible_mod_p(f.coeffs, ell)) {
                v.irreducible = true;
                v.certificate = SimplicityVerdict::Certificate::ModPWitness;
                v.mod_p_witness = ell;
                found_mod = true;
                break;
            }
        }
        if (!found_mod) {
            IntPoly witness;
            v.certificate = SimplicityVerdict::Certificate::SubsetFactorExhaustion;
            v.irreducible = !subset_factor_search(f.coeffs, s, precision_cap, witness);
            if (!v.irreducible) v.factor_witness = witness;
        }
    }

    if (!v.irreducible) {
        v.absolutely_simple = SimplicityVerdict::Abs::No;
        v.m_checked = 1;
        return v;
    }

    for (int m = 2; m <= m_max; ++m) {
        WeilPolynomial fm = base_extend(f, static_cast<unsigned>(m));
        bool irr = false;
        SimplicityVerdict::Certificate cert;
        uint64_t ell = 0;
        IntPoly witness;
        decide_irreducible(fm.coeffs, fm.q, s.precision_bits, precision_cap, irr, cert, ell, witness);
        if (!irr) {
            v.absolutely_simple = SimplicityVerdict::Abs::No;
            v.m_checked = m;
            return v;
        }
    }
    v.absolutely_simple = SimplicityVerdict::Abs::HeuristicYes;
    v.m_checked = std::max(1, m_max);
    return v;
}

} // namespace anglerank
