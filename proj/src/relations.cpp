#include "anglerank/relations.hpp"

#include <algorithm>
#include <cmath>

#include "anglerank/errors.hpp"
#include "intmat.hpp"

namespace anglerank {

const char* cert_status_name(CertStatus s)
{
    switch (s) {
        case CertStatus::Certified: return "certified";
        case CertStatus::Heuristic: return "heuristic";
        case CertStatus::Refuted: return "refuted";
    }
    return "heuristic";
}

namespace {

mpz_class factorial(unsigned n)
{
    mpz_class r = 1;
    for (unsigned i = 2; i <= n; ++i) r *= i;
    return r;
}

mpz_class euler_phi(mpz_class n)
{
    mpz_class r = 1;
    for (mpz_class p = 2; p * p <= n; ++p) {
        if (n % p != 0) continue;
        r *= p - 1;
        n /= p;
        while (n % p == 0) {
            r *= p;
            n /= p;
        }
    }
    if (n > 1) r *= n - 1;
    return r;
}

// rigorous bound on [splitting field : Q] from the proven orbit structure of
// alpha -> q/alpha on the distinct enclosures; falls back to d! when the
// matching is ambiguous at this precision
mpz_class split_degree_bound_of(const FrobeniusSpectrum& s)
{
    size_t nd = s.roots.size();
    mpfr_prec_t wp = static_cast<mpfr_prec_t>(s.precision_bits + 64);
    CBall qb = CBall::from_z(s.q, wp);
    std::vector<int> match(nd, -1);
    bool ok = true;
    for (size_t k = 0; k < nd && ok; ++k) {
        CBall m = qb.div(s.roots[k].disk);
        int hit = -1;
        for (size_t j = 0; j < nd; ++j) {
            if (!disks_disjoint(m, s.roots[j].disk)) {
                if (hit >= 0) {
                    ok = false;
                    break;
                }
                hit = static_cast<int>(j);
            }
        }
        if (hit < 0) ok = false;
        match[k] = hit;
    }
    if (ok)
        for (size_t k = 0; k < nd; ++k)
            if (match[static_cast<size_t>(match[k])] != static_cast<int>(k)) ok = false;
    if (!ok) return factorial(static_cast<unsigned>(nd));
    unsigned fixed = 0, cycles = 0;
    for (size_t k = 0; k < nd; ++k) {
        if (match[k] == static_cast<int>(k))
            ++fixed;
        else if (match[k] > static_cast<int>(k))
            ++cycles;
    }
    mpz_class b = factorial(cycles + fixed);
    mpz_mul_2exp(b.get_mpz_t(), b.get_mpz_t(), cycles);
    return b;
}

double log2_rho_of(const FrobeniusSpectrum& s)
{
    mpfr_prec_t wp = 128;
    Flt sq_lo(wp), sq_hi(wp);
    mpfr_set_z(sq_lo.raw(), s.q.get_mpz_t(), MPFR_RNDD);
    mpfr_sqrt(sq_lo.raw(), sq_lo.raw(), MPFR_RNDD);
    mpfr_set_z(sq_hi.raw(), s.q.get_mpz_t(), MPFR_RNDU);
    mpfr_sqrt(sq_hi.raw(), sq_hi.raw(), MPFR_RNDU);
    Flt best(wp);
    mpfr_set_ui(best.raw(), 1, MPFR_RNDN);
    for (const auto& r : s.roots) {
        RBall m = r.disk.abs();
        Flt u = m.upper(), l = m.lower();
        Flt a(wp), b(wp);
        mpfr_div(a.raw(), u.raw(), sq_lo.raw(), MPFR_RNDU);
        mpfr_div(b.raw(), sq_hi.raw(), l.raw(), MPFR_RNDU);
        if (mpfr_cmp(a.raw(), best.raw()) > 0) mpfr_set(best.raw(), a.raw(), MPFR_RNDU);
        if (mpfr_cmp(b.raw(), best.raw()) > 0) mpfr_set(best.raw(), b.raw(), MPFR_RNDU);
    }
    Flt lg(wp);
    mpfr_log2(lg.raw(), best.raw(), MPFR_RNDU);
    double d = mpfr_get_d(lg.raw(), MPFR_RNDU);
    return d < 0 ? 0.0 : d;
}

} // namespace

AngleSystem make_angle_system(const FrobeniusSpectrum& s)
{
    AngleSystem sys;
    sys.q = s.q;
    sys.precision_bits = s.precision_bits;
    AngleVector av = angles(s);
    sys.t = av.t;
    sys.group = av.root_index;
    mpfr_prec_t wp = static_cast<mpfr_prec_t>(s.precision_bits + 64);
    CBall qb = CBall::from_z(s.q, wp);
    std::vector<CBall> beta_of_root;
    beta_of_root.reserve(s.roots.size());
    for (const auto& r : s.roots) beta_of_root.push_back(qb.div(r.disk.powi(2)));
    for (unsigned i = 0; i < s.g; ++i) sys.beta.push_back(beta_of_root[static_cast<size_t>(s.slot_root[i])]);
    sys.split_degree_bound = split_degree_bound_of(s);
    sys.log2_rho = log2_rho_of(s);
    return sys;
}

AngleSystem make_joint_system(const FrobeniusSpectrum& a, const FrobeniusSpectrum& e)
{
    if (a.q != e.q)
        throw Error(ErrorKind::InvalidArgument, "joint angle system requires matching base fields");
    AngleSystem sa = make_angle_system(a);
    AngleSystem se = make_angle_system(e);
    AngleSystem sys = sa;
    int off = static_cast<int>(a.roots.size());
    for (size_t i = 0; i < se.t.size(); ++i) {
        sys.t.push_back(se.t[i]);
        sys.beta.push_back(se.beta[i]);
        sys.group.push_back(se.group[i] + off);
    }
    sys.split_degree_bound = sa.split_degree_bound * se.split_degree_bound;
    sys.log2_rho = std::max(sa.log2_rho, se.log2_rho);
    sys.precision_bits = std::min(sa.precision_bits, se.precision_bits);
    return sys;
}

bool reconstruct_rational(const RBall& x, const mpz_class& dmax, mpq_class& out)
{
    mpq_class lo = x.lower_q(), hi = x.upper_q();
    // simplest rational in [lo, hi] via the Stern-Brocot recursion
    mpq_class add = 0;
    bool neg = false;
    if (hi < 0) {
        std::swap(lo, hi);
        lo = -lo;
        hi = -hi;
        neg = true;
    } else if (lo < 0) {
        out = 0;
        return dmax >= 1;
    }
    // now 0 <= lo <= hi; peel continued-fraction digits
    std::vector<mpz_class> digits;
    mpq_class a = lo, b = hi;
    mpq_class result;
    for (int guard = 0; guard < 20000; ++guard) {
        mpz_class fa;
        mpz_fdiv_q(fa.get_mpz_t(), a.get_num().get_mpz_t(), a.get_den().get_mpz_t());
        mpz_class fb;
        mpz_fdiv_q(fb.get_mpz_t(), b.get_num().get_mpz_t(), b.get_den().get_mpz_t());
        if (fa < fb || b.get_den() == 1) {
            // an integer (fa + 1 <= b, or b itself) lies inside: simplest is the
            // smallest integer >= a
            mpz_class n = fa;
            if (mpq_class(fa) < a) n = fa + 1;
            digits.push_back(n);
            break;
        }
        digits.push_back(fa);
        // recurse on 1/(b - fa), 1/(a - fa)
        mpq_class ra = b - mpq_class(fa);
        mpq_class rb = a - mpq_class(fa);
        if (rb == 0) {
            break; // a itself is the integer fa; digits hold it already
        }
        a = 1 / ra;
        b = 1 / rb;
    }
    // rebuild the continued fraction
    mpq_class v = digits.back();
    for (size_t i = digits.size() - 1; i-- > 0;) v = mpq_class(digits[i]) + 1 / v;
    if (neg) v = -v;
    out = v;
    out.canonicalize();
    return out.get_den() <= dmax;
}

namespace {

struct CollapsedRelation {
    std::vector<std::pair<size_t, long>> exps; // (angle index of group representative, exponent)
    mpz_class h;                               // sum |exponents|
};

CollapsedRelation collapse(const AngleSystem& sys, const std::vector<mpz_class>& e)
{
    std::vector<std::pair<int, mpz_class>> per_group; // (group id, exp)
    std::vector<size_t> rep;
    for (size_t i = 0; i < e.size(); ++i) {
        if (e[i] == 0) continue;
        int gid = sys.group[i];
        bool found = false;
        for (size_t k = 0; k < per_group.size(); ++k)
            if (per_group[k].first == gid) {
                per_group[k].second += e[i];
                found = true;
                break;
            }
        if (!found) {
            per_group.emplace_back(gid, e[i]);
            rep.push_back(i);
        }
    }
    CollapsedRelation c;
    c.h = 0;
    for (size_t k = 0; k < per_group.size(); ++k) {
        if (per_group[k].second == 0) continue;
        if (!per_group[k].second.fits_slong_p())
            throw Error(ErrorKind::InvalidArgument, "relation exponent exceeds the supported range");
        c.exps.emplace_back(rep[k], per_group[k].second.get_si());
        c.h += abs(per_group[k].second);
    }
    return c;
}

RBall relation_value(const AngleSystem& sys, const CollapsedRelation& c, mpfr_prec_t wp)
{
    RBall v(wp);
    for (const auto& [idx, ex] : c.exps) {
        RBall term = sys.t[idx].mul_q(mpq_class(ex));
        v = v.add(term);
    }
    return v;
}

// bits needed by the norm separation bound; negative when infeasible
double separation_bits(const AngleSystem& sys, const mpz_class& h, const mpz_class& den)
{
    if (h == 0) return 0.0;
    mpz_class deg = sys.split_degree_bound * euler_phi(den);
    double degd = deg.get_d();
    double hd = h.get_d();
    double log2q = mpz_sizeinbase(sys.q.get_mpz_t(), 2);
    double bits = hd * degd * log2q + (degd - 1.0) * (1.0 + 2.0 * hd * sys.log2_rho);
    if (!std::isfinite(bits) || bits > 1e9) return -1.0;
    return bits + 32.0;
}

RelationCertificate certify_with_system(const AngleSystemProvider& provider, AngleSystem sys,
                                        const std::vector<mpz_class>& e, const mpq_class& claimed,
                                        long precision_cap)
{
    RelationCertificate cert;
    cert.e = e;
    cert.claimed = claimed;
    cert.claimed_known = true;
    cert.status = CertStatus::Heuristic;

    CollapsedRelation col = collapse(sys, e);

    // exact empty product: gamma = exp(2 pi i claimed) - 1
    if (col.exps.empty()) {
        cert.precision_bits = sys.precision_bits;
        if (claimed.get_den() == 1 && claimed.get_num() == 0) {
            cert.status = CertStatus::Certified;
            cert.separation_margin = 1e9;
        } else if (claimed.get_den() == 1) {
            // sum e_i t_i = 0 exactly but a nonzero integer is claimed
            cert.status = CertStatus::Refuted;
        } else {
            cert.status = CertStatus::Refuted;
        }
        return cert;
    }

    double sep = separation_bits(sys, col.h, mpz_class(claimed.get_den()));
    bool feasible = sep >= 0 && sep + 64 <= static_cast<double>(precision_cap);
    long refute_budget = 4;

    long prec = sys.precision_bits;
    if (feasible && static_cast<double>(prec) < sep) prec = static_cast<long>(sep) + 64;
    for (;; prec *= 2) {
        if (prec > precision_cap) break;
        if (sys.precision_bits < prec) sys = provider(prec);
        mpfr_prec_t wp = static_cast<mpfr_prec_t>(sys.precision_bits + 64);
        cert.precision_bits = sys.precision_bits;

        RBall value = relation_value(sys, col, wp);
        if (!value.contains_q(claimed)) {
            cert.status = CertStatus::Refuted;
            return cert;
        }

        CBall gamma = CBall::root_of_unity(claimed, wp);
        for (const auto& [idx, ex] : col.exps) gamma = gamma.mul(sys.beta[idx].powi(ex));
        gamma = gamma.sub(CBall::from_z(1, wp));
        RBall g = gamma.abs();
        if (g.provably_positive()) {
            cert.status = CertStatus::Refuted;
            return cert;
        }
        if (feasible) {
            Flt ub = g.upper();
            Flt bound(64);
            mpfr_set_ui_2exp(bound.raw(), 1, -static_cast<long>(sep), MPFR_RNDD);
            if (mpfr_cmp(ub.raw(), bound.raw()) < 0) {
                cert.status = CertStatus::Certified;
                Flt lg(64);
                if (mpfr_zero_p(ub.raw()))
                    cert.separation_margin = 1e9;
                else {
                    mpfr_log2(lg.raw(), ub.raw(), MPFR_RNDU);
                    cert.separation_margin = -sep - mpfr_get_d(lg.raw(), MPFR_RNDN);
                }
                return cert;
            }
        } else {
            if (--refute_budget <= 0) break;
        }
    }
    cert.status = CertStatus::Heuristic;
    return cert;
}

} // namespace

RelationCertificate certify_relation(const AngleSystemProvider& provider,
                                     const std::vector<mpz_class>& e, const mpq_class& claimed,
                                     long start_prec, long precision_cap)
{
    AngleSystem sys = provider(start_prec);
    return certify_with_system(provider, std::move(sys), e, claimed, precision_cap);
}

RelationCertificate certify_relation(const FrobeniusSpectrum& s, const std::vector<mpz_class>& e,
                                     const mpq_class& claimed, long precision_cap)
{
    WeilPolynomial f;
    f.coeffs = s.poly;
    f.q = s.q;
    f.g = s.g;
    AngleSystemProvider provider = [f, precision_cap](long prec) {
        return make_angle_system(compute_spectrum(f, prec, std::max(prec, precision_cap)));
    };
    return certify_with_system(provider, make_angle_system(s), e, claimed, precision_cap);
}

namespace {

// one LLL detection pass: returns the HNF of the detected (e | e0) lattice
ZMat detect_exact(const AngleSystem& sys, const mpz_class& height_bound, long prec)
{
    size_t n = sys.t.size();
    long scale = prec / 2;
    ZMat rows(n + 1, ZVec(n + 2, 0));
    std::vector<mpz_class> zrad(n);
    for (size_t i = 0; i < n; ++i) {
        rows[i][i] = 1;
        Flt sc(sys.t[i].prec());
        mpfr_mul_2si(sc.raw(), sys.t[i].mid.raw(), scale, MPFR_RNDN);
        mpfr_get_z(rows[i][n + 1].get_mpz_t(), sc.raw(), MPFR_RNDN);
        Flt sr(64);
        mpfr_mul_2si(sr.raw(), sys.t[i].rad.raw(), scale, MPFR_RNDU);
        mpfr_get_z(zrad[i].get_mpz_t(), sr.raw(), MPFR_RNDU);
        zrad[i] += 1;
    }
    rows[n][n] = 1;
    mpz_class C = mpz_class(1) << static_cast<unsigned>(scale);
    rows[n][n + 1] = C;

    ZVec d;
    lll_reduce(rows, d);

    ZMat accepted;
    for (const ZVec& w : rows) {
        bool nonzero = false;
        mpz_class tau = 1;
        bool tall = false;
        for (size_t i = 0; i < n; ++i) {
            if (w[i] != 0) nonzero = true;
            if (abs(w[i]) > height_bound) tall = true;
            tau += abs(w[i]) * zrad[i];
        }
        if (!nonzero || tall) continue;
        if (abs(w[n + 1]) > tau) continue;
        // necessary check: the certified interval of sum e_i t_i + e0 contains 0
        RBall v(static_cast<mpfr_prec_t>(prec + 64));
        for (size_t i = 0; i < n; ++i)
            if (w[i] != 0) v = v.add(sys.t[i].mul_q(mpq_class(w[i])));
        v = v.add_q(mpq_class(w[n]));
        if (!v.contains_zero()) continue;
        ZVec row(n + 1);
        for (size_t i = 0; i < n; ++i) row[i] = w[i];
        row[n] = w[n];
        accepted.push_back(std::move(row));
    }
    // exact duplicate-angle relations are free
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j)
            if (sys.group[i] == sys.group[j]) {
                ZVec row(n + 1, 0);
                row[i] = 1;
                row[j] = -1;
                accepted.push_back(std::move(row));
            }
    return zmat::hnf(std::move(accepted));
}

mpz_class ceil_q(const mpq_class& x)
{
    mpz_class r;
    mpz_cdiv_q(r.get_mpz_t(), x.get_num().get_mpz_t(), x.get_den().get_mpz_t());
    return r;
}

// certifies that no exact relation of height <= B lies outside the detected
// saturation; see the lattice bound in find_relation_lattice
bool certify_complement(const AngleSystem& sys, const ZMat& gamma1, const AngleLattice& lat,
                        long prec)
{
    size_t n = sys.t.size();
    size_t k = lat.basis_saturated.size();
    if (k == n) return true;
    for (const auto& sv : lat.basis_saturated)
        if (!sv.cert.claimed_known) return false;

    ZMat eproj;
    for (const auto& [e, e0] : lat.basis_exact) eproj.push_back(e);
    if (eproj.empty()) {
        // rank 0: the main detection lattice itself certifies; fall through with
        // the complement being all of Z^n
    }
    ZVec diag;
    ZMat u, v;
    ZMat sat, comp;
    if (eproj.empty()) {
        comp = zmat::identity(n);
        v = zmat::identity(n);
    } else {
        zmat::snf(eproj, diag, u, v);
        ZMat vinv = zmat::inverse_unimodular(v);
        size_t rank = 0;
        for (const auto& dd : diag)
            if (dd != 0) ++rank;
        for (size_t i = 0; i < rank; ++i) sat.push_back(vinv[i]);
        for (size_t i = rank; i < n; ++i) comp.push_back(vinv[i]);
        if (rank != k) return false;
    }
    size_t m = comp.size();

    // rational values of the raw saturation rows
    ZMat sat_hnf;
    for (const auto& sv : lat.basis_saturated) sat_hnf.push_back(sv.e);
    mpz_class L = 1;
    mpq_class rmax = 0;
    std::vector<mpq_class> rvals;
    for (const auto& row : sat) {
        ZVec x;
        if (!zmat::hnf_solve(sat_hnf, row, x)) return false;
        mpq_class val = 0;
        for (size_t j = 0; j < x.size(); ++j) val += mpq_class(x[j]) * lat.basis_saturated[j].cert.claimed;
        rvals.push_back(val);
        L = lcm(L, val.get_den());
        if (abs(val) > rmax) rmax = abs(val);
    }

    mpz_class vmax = 1;
    for (const auto& row : v)
        for (const auto& x : row)
            if (abs(x) > vmax) vmax = abs(x);

    // coefficient bounds for a hidden relation mapped into complement coordinates
    mpz_class B = lat.height_bound;
    mpz_class X = B * vmax * static_cast<long>(n);
    mpz_class H = L * X;
    mpq_class h0q = mpq_class(L) * (mpq_class(B) * static_cast<long>(n) +
                                    mpq_class(X) * static_cast<long>(k) * rmax);
    mpz_class H0 = ceil_q(h0q);

    // complement detection lattice at the working precision
    long scale = prec / 2;
    mpfr_prec_t wp = static_cast<mpfr_prec_t>(prec + 64);
    ZMat rows(m + 1, ZVec(m + 2, 0));
    mpz_class residual = 0;
    for (size_t j = 0; j < m; ++j) {
        RBall s(wp);
        for (size_t i = 0; i < n; ++i)
            if (comp[j][i] != 0) s = s.add(sys.t[i].mul_q(mpq_class(comp[j][i])));
        rows[j][j] = 1;
        Flt sc(wp);
        mpfr_mul_2si(sc.raw(), s.mid.raw(), scale, MPFR_RNDN);
        mpfr_get_z(rows[j][m + 1].get_mpz_t(), sc.raw(), MPFR_RNDN);
        Flt sr(64);
        mpfr_mul_2si(sr.raw(), s.rad.raw(), scale, MPFR_RNDU);
        mpz_class zr;
        mpfr_get_z(zr.get_mpz_t(), sr.raw(), MPFR_RNDU);
        residual += H * (zr + 1);
    }
    rows[m][m] = 1;
    rows[m][m + 1] = mpz_class(1) << static_cast<unsigned>(scale);

    ZVec d;
    lll_reduce(rows, d);

    mpz_class n2 = H * H * static_cast<long>(m) + H0 * H0 + residual * residual;
    // lambda_1^2 >= min d_i/d_(i-1) > n2  <=>  d_i > n2 d_(i-1) for all i
    for (size_t i = 1; i < d.size(); ++i)
        if (d[i] <= n2 * d[i - 1]) return false;
    return true;
}

} // namespace

AngleLattice find_relation_lattice(const AngleSystemProvider& provider, size_t dim,
                                   const DetectionParams& params)
{
    AngleLattice lat;
    lat.dim = dim;
    lat.height_bound = params.height_bound;
    lat.denom_bound = params.denom_bound != 0
                          ? params.denom_bound
                          : mpz_class(std::max<long>(60, 4 * static_cast<long>(dim) * static_cast<long>(dim)));

    long prec = params.precision_bits;
    AngleSystem sys = provider(prec);
    ZMat g1 = detect_exact(sys, lat.height_bound, prec);
    ZMat g1_hi;
    AngleSystem sys_hi;
    bool stable = false;
    long final_prec = prec;
    while (true) {
        long hi = prec * 2;
        if (hi > params.precision_cap) break;
        sys_hi = provider(hi);
        g1_hi = detect_exact(sys_hi, lat.height_bound, hi);
        if (g1 == g1_hi) {
            stable = true;
            sys = std::move(sys_hi);
            final_prec = hi;
            break;
        }
        prec = hi;
        sys = std::move(sys_hi);
        g1 = std::move(g1_hi);
        final_prec = prec;
    }
    lat.stable = stable;
    lat.precision_bits = final_prec;

    AngleSystemProvider prov = provider;

    // exact basis with integer values read off e0, then certified
    for (const ZVec& row : g1) {
        std::vector<mpz_class> e(row.begin(), row.begin() + static_cast<long>(dim));
        mpz_class e0 = row[dim];
        lat.basis_exact.emplace_back(e, e0);
        RelationCertificate c =
            certify_with_system(prov, sys, e, mpq_class(-e0), params.precision_cap);
        lat.exact_certs.push_back(std::move(c));
    }

    // saturation with reconstructed rational values
    ZMat eproj;
    for (const auto& [e, e0] : lat.basis_exact) eproj.push_back(e);
    ZMat sat, comp;
    zmat::saturate(eproj, dim, sat, comp);
    mpfr_prec_t wp = static_cast<mpfr_prec_t>(final_prec + 64);
    for (const ZVec& e : sat) {
        AngleLattice::SatVector sv;
        sv.e = e;
        RBall val(wp);
        for (size_t i = 0; i < dim; ++i)
            if (e[i] != 0) val = val.add(sys.t[i].mul_q(mpq_class(e[i])));
        mpq_class claimed;
        if (reconstruct_rational(val, lat.denom_bound, claimed)) {
            sv.cert = certify_with_system(prov, sys, e, claimed, params.precision_cap);
            sv.cert.claimed_known = sv.cert.status != CertStatus::Refuted;
        } else {
            sv.cert.e = e;
            sv.cert.claimed_known = false;
            sv.cert.status = CertStatus::Heuristic;
            sv.cert.precision_bits = final_prec;
        }
        lat.basis_saturated.push_back(std::move(sv));
    }

    lat.angle_rank = static_cast<int>(dim) - static_cast<int>(lat.basis_saturated.size());
    lat.complement_certified = stable && certify_complement(sys, g1, lat, final_prec);
    return lat;
}

AngleLattice find_relation_lattice(const FrobeniusSpectrum& s, const DetectionParams& params)
{
    WeilPolynomial f;
    f.coeffs = s.poly;
    f.q = s.q;
    f.g = s.g;
    long cap = params.precision_cap;
    AngleSystemProvider provider = [f, cap](long prec) {
        return make_angle_system(compute_spectrum(f, prec, std::max(prec, cap)));
    };
    return find_relation_lattice(provider, s.g, params);
}

bool AngleLattice::certified() const
{
    if (!stable || !complement_certified) return false;
    for (const auto& c : exact_certs)
        if (c.status != CertStatus::Certified) return false;
    for (const auto& sv : basis_saturated)
        if (sv.cert.status != CertStatus::Certified) return false;
    return true;
}

bool AngleLattice::member(const std::vector<mpz_class>& v) const
{
    ZMat h;
    for (const auto& sv : basis_saturated) h.push_back(sv.e);
    return zmat::hnf_member(h, v);
}

int angle_rank(const AngleLattice& lat)
{
    return lat.angle_rank;
}

LemmaCheck check_lemma_form(const AngleLattice& lat)
{
    LemmaCheck lc;
    lc.certified = lat.certified();
    if (lat.angle_rank != static_cast<int>(lat.dim) - 1) {
        lc.verdict = LemmaCheck::Verdict::NotApplicable;
        return lc;
    }
    if (lat.basis_exact.size() != 1)
        throw Error(ErrorKind::Internal, "rank-1 exact lattice expected when angle rank is g-1");
    const auto& gen = lat.basis_exact[0].first;
    mpz_class n0 = 0;
    for (const auto& x : gen) {
        if (x == 0) {
            lc.verdict = LemmaCheck::Verdict::Fail;
            lc.witness = gen;
            return lc;
        }
        mpz_class a = abs(x);
        if (n0 == 0)
            n0 = a;
        else if (a != n0) {
            lc.verdict = LemmaCheck::Verdict::Fail;
            lc.witness = gen;
            return lc;
        }
    }
    lc.verdict = LemmaCheck::Verdict::Pass;
    lc.n = n0;
    for (const auto& x : gen) lc.sign_pattern.push_back(x < 0 ? -1 : 1);
    return lc;
}

bool galois_stability_probe(const AngleLattice& lat)
{
    ZMat h;
    for (const auto& sv : lat.basis_saturated) h.push_back(sv.e);
    if (h.empty()) return true;
    size_t n = lat.dim;
    // negation stability holds for any lattice; verify as a sanity check
    for (const auto& row : h) {
        ZVec neg(row.size());
        for (size_t i = 0; i < row.size(); ++i) neg[i] = -row[i];
        if (!zmat::hnf_member(h, neg))
            throw Error(ErrorKind::Internal, "saturated lattice not closed under negation");
    }
    // full symmetric group: adjacent transpositions generate
    for (size_t sw = 0; sw + 1 < n; ++sw) {
        for (const auto& row : h) {
            ZVec p = row;
            std::swap(p[sw], p[sw + 1]);
            if (!zmat::hnf_member(h, p)) return false;
        }
    }
    return true;
}

} // namespace anglerank
