#include "anglerank/spectrum.hpp"

#include <algorithm>
#include <vector>

#include "anglerank/errors.hpp"
#include "intpoly.hpp"

namespace anglerank {

namespace {

// plain complex floats for the Aberth iteration (no radius tracking)
struct FC {
    Flt re, im;
    explicit FC(mpfr_prec_t p) : re(p), im(p) {}
};

void fc_sub(FC& r, const FC& a, const FC& b)
{
    mpfr_sub(r.re.raw(), a.re.raw(), b.re.raw(), MPFR_RNDN);
    mpfr_sub(r.im.raw(), a.im.raw(), b.im.raw(), MPFR_RNDN);
}

void fc_mul(FC& r, const FC& a, const FC& b)
{
    Flt t(r.re.prec());
    mpfr_fmms(t.raw(), a.re.raw(), b.re.raw(), a.im.raw(), b.im.raw(), MPFR_RNDN);
    mpfr_fmma(r.im.raw(), a.re.raw(), b.im.raw(), a.im.raw(), b.re.raw(), MPFR_RNDN);
    mpfr_swap(r.re.raw(), t.raw());
}

void fc_div(FC& r, const FC& a, const FC& b)
{
    Flt n2(r.re.prec()), t(r.re.prec());
    mpfr_fmma(n2.raw(), b.re.raw(), b.re.raw(), b.im.raw(), b.im.raw(), MPFR_RNDN);
    mpfr_fmma(t.raw(), a.re.raw(), b.re.raw(), a.im.raw(), b.im.raw(), MPFR_RNDN);
    mpfr_fmms(r.im.raw(), a.im.raw(), b.re.raw(), a.re.raw(), b.im.raw(), MPFR_RNDN);
    mpfr_div(r.im.raw(), r.im.raw(), n2.raw(), MPFR_RNDN);
    mpfr_div(r.re.raw(), t.raw(), n2.raw(), MPFR_RNDN);
}

void fc_add_inplace(FC& r, const FC& a)
{
    mpfr_add(r.re.raw(), r.re.raw(), a.re.raw(), MPFR_RNDN);
    mpfr_add(r.im.raw(), r.im.raw(), a.im.raw(), MPFR_RNDN);
}

// |z|^2 into out
void fc_abs2(Flt& out, const FC& a)
{
    mpfr_fmma(out.raw(), a.re.raw(), a.re.raw(), a.im.raw(), a.im.raw(), MPFR_RNDN);
}

// Horner evaluation of f and f' at z
void fc_eval(const std::vector<Flt>& cf, const FC& z, FC& f, FC& df)
{
    mpfr_prec_t p = z.re.prec();
    FC acc(p), dacc(p), t(p);
    mpfr_set(acc.re.raw(), cf.back().raw(), MPFR_RNDN);
    for (size_t i = cf.size() - 1; i-- > 0;) {
        fc_mul(t, dacc, z);
        fc_add_inplace(t, acc);
        dacc = std::move(t);
        t = FC(p);
        fc_mul(t, acc, z);
        mpfr_add(t.re.raw(), t.re.raw(), cf[i].raw(), MPFR_RNDN);
        acc = std::move(t);
        t = FC(p);
    }
    f = std::move(acc);
    df = std::move(dacc);
}

// Aberth-Ehrlich with immediate updates; starts are deterministic; refines
// seeds in-place when provided at lower precision.
void aberth(const IntPoly& u, mpfr_prec_t wp, std::vector<FC>& z)
{
    int n = poly::degree(u);
    std::vector<Flt> cf;
    cf.reserve(u.size());
    for (const auto& c : u) {
        Flt x(wp);
        mpfr_set_z(x.raw(), c.get_mpz_t(), MPFR_RNDN);
        cf.push_back(std::move(x));
    }

    if (static_cast<int>(z.size()) != n) {
        z.clear();
        // start on a circle of radius |a_0|^(1/n), slightly staggered
        Flt R(wp);
        mpfr_set_z(R.raw(), u[0].get_mpz_t(), MPFR_RNDN);
        mpfr_abs(R.raw(), R.raw(), MPFR_RNDN);
        mpfr_rootn_ui(R.raw(), R.raw(), static_cast<unsigned long>(n), MPFR_RNDN);
        if (mpfr_zero_p(R.raw())) mpfr_set_ui(R.raw(), 1, MPFR_RNDN);
        Flt pi(wp);
        mpfr_const_pi(pi.raw(), MPFR_RNDN);
        for (int j = 0; j < n; ++j) {
            FC s(wp);
            Flt th(wp);
            mpfr_set_ui(th.raw(), 2 * static_cast<unsigned long>(j), MPFR_RNDN);
            mpfr_add_d(th.raw(), th.raw(), 0.7 + 0.003 * j, MPFR_RNDN);
            mpfr_mul(th.raw(), th.raw(), pi.raw(), MPFR_RNDN);
            mpfr_div_ui(th.raw(), th.raw(), static_cast<unsigned long>(n), MPFR_RNDN);
            mpfr_sin_cos(s.im.raw(), s.re.raw(), th.raw(), MPFR_RNDN);
            mpfr_mul(s.re.raw(), s.re.raw(), R.raw(), MPFR_RNDN);
            mpfr_mul(s.im.raw(), s.im.raw(), R.raw(), MPFR_RNDN);
            z.push_back(std::move(s));
        }
    } else {
        for (auto& zi : z) {
            Flt re(wp), im(wp);
            mpfr_set(re.raw(), zi.re.raw(), MPFR_RNDN);
            mpfr_set(im.raw(), zi.im.raw(), MPFR_RNDN);
            zi.re = std::move(re);
            zi.im = std::move(im);
        }
    }
    if (n == 1) {
        mpfr_set_z(z[0].re.raw(), u[0].get_mpz_t(), MPFR_RNDN);
        mpfr_neg(z[0].re.raw(), z[0].re.raw(), MPFR_RNDN);
        mpfr_set_zero(z[0].im.raw(), 1);
        return;
    }

    Flt tol(64);
    mpfr_set_ui_2exp(tol.raw(), 1, -(wp - 8), MPFR_RNDN);
    long max_iter = 200 + wp / 2;
    FC f(wp), df(wp), d(wp), s(wp), w(wp), corr(wp);
    Flt m2(wp), best(64), cur(64);
    for (long iter = 0; iter < max_iter; ++iter) {
        Flt maxrel(64);
        mpfr_set_zero(maxrel.raw(), 1);
        for (int i = 0; i < n; ++i) {
            fc_eval(cf, z[i], f, df);
            if (mpfr_zero_p(f.re.raw()) && mpfr_zero_p(f.im.raw())) continue;
            // w = f / f'
            fc_abs2(m2, df);
            if (mpfr_zero_p(m2.raw())) {
                // critical point; nudge deterministically
                mpfr_add_d(z[i].re.raw(), z[i].re.raw(), 1e-3 + 1e-4 * i, MPFR_RNDN);
                continue;
            }
            fc_div(w, f, df);
            // s = sum 1/(z_i - z_j)
            mpfr_set_zero(s.re.raw(), 1);
            mpfr_set_zero(s.im.raw(), 1);
            for (int j = 0; j < n; ++j) {
                if (j == i) continue;
                fc_sub(d, z[i], z[j]);
                fc_abs2(m2, d);
                if (mpfr_zero_p(m2.raw())) {
                    mpfr_add_d(z[i].re.raw(), z[i].re.raw(), 1e-3 + 1e-4 * j, MPFR_RNDN);
                    fc_sub(d, z[i], z[j]);
                }
                FC one(wp);
                mpfr_set_ui(one.re.raw(), 1, MPFR_RNDN);
                fc_div(d, one, d);
                fc_add_inplace(s, d);
            }
            fc_mul(d, w, s);
            mpfr_ui_sub(d.re.raw(), 1, d.re.raw(), MPFR_RNDN);
            mpfr_neg(d.im.raw(), d.im.raw(), MPFR_RNDN);
            fc_abs2(m2, d);
            if (mpfr_zero_p(m2.raw())) {
                mpfr_add_d(z[i].re.raw(), z[i].re.raw(), 1e-3, MPFR_RNDN);
                continue;
            }
            fc_div(corr, w, d);
            mpfr_sub(z[i].re.raw(), z[i].re.raw(), corr.re.raw(), MPFR_RNDN);
            mpfr_sub(z[i].im.raw(), z[i].im.raw(), corr.im.raw(), MPFR_RNDN);
            // relative step size
            fc_abs2(cur, corr);
            mpfr_sqrt(cur.raw(), cur.raw(), MPFR_RNDU);
            fc_abs2(best, z[i]);
            mpfr_sqrt(best.raw(), best.raw(), MPFR_RNDD);
            if (mpfr_cmp_ui(best.raw(), 1) < 0) mpfr_set_ui(best.raw(), 1, MPFR_RNDN);
            mpfr_div(cur.raw(), cur.raw(), best.raw(), MPFR_RNDU);
            if (mpfr_cmp(cur.raw(), maxrel.raw()) > 0) mpfr_set(maxrel.raw(), cur.raw(), MPFR_RNDU);
        }
        if (mpfr_cmp(maxrel.raw(), tol.raw()) < 0) break;
    }

    // snap nearly-real approximations onto the axis; the inclusion disks
    // computed later are valid for any choice of approximation points, and a
    // genuinely complex root stops being snapped once 2^(-wp/2) drops below
    // its imaginary part
    Flt snap(64);
    mpfr_set_ui_2exp(snap.raw(), 1, -(wp / 2), MPFR_RNDN);
    for (auto& zi : z) {
        Flt scale(64);
        mpfr_abs(scale.raw(), zi.re.raw(), MPFR_RNDU);
        if (mpfr_cmp_ui(scale.raw(), 1) < 0) mpfr_set_ui(scale.raw(), 1, MPFR_RNDN);
        mpfr_mul(scale.raw(), scale.raw(), snap.raw(), MPFR_RNDU);
        if (mpfr_cmpabs(zi.im.raw(), scale.raw()) <= 0) mpfr_set_zero(zi.im.raw(), 1);
    }
}

CBall cb_eval_intpoly(const IntPoly& f, const CBall& z)
{
    mpfr_prec_t wp = z.prec();
    CBall acc(wp);
    for (size_t i = f.size(); i-- > 0;) {
        acc = acc.mul(z).add(CBall::from_z(f[i], wp));
    }
    return acc;
}

// Weierstrass inclusion disks for the simple roots of a monic squarefree
// factor: D(z_i, n |f(z_i) / prod_{j != i} (z_i - z_j)|). Pairwise disjoint
// disks each contain exactly one root.
std::vector<CBall> weierstrass_disks(const IntPoly& u, const std::vector<FC>& z, mpfr_prec_t wp)
{
    int n = poly::degree(u);
    std::vector<CBall> centers;
    centers.reserve(n);
    for (const FC& zi : z) {
        CBall c(wp);
        mpfr_set(c.re.raw(), zi.re.raw(), MPFR_RNDN);
        mpfr_set(c.im.raw(), zi.im.raw(), MPFR_RNDN);
        centers.push_back(std::move(c));
    }
    std::vector<CBall> disks;
    disks.reserve(n);
    for (int i = 0; i < n; ++i) {
        CBall num = cb_eval_intpoly(u, centers[i]);
        CBall den(wp);
        mpfr_set_ui(den.re.raw(), 1, MPFR_RNDN);
        for (int j = 0; j < n; ++j) {
            if (j == i) continue;
            den = den.mul(centers[i].sub(centers[j]));
        }
        RBall w = num.div(den).abs();
        CBall d = centers[i];
        Flt wu = w.upper();
        mpfr_mul_ui(d.rad.raw(), wu.raw(), static_cast<unsigned long>(n), MPFR_RNDU);
        disks.push_back(std::move(d));
    }
    return disks;
}

struct Candidate {
    CBall disk;
    int multiplicity;
    int conj_index = -1;
    bool real = false;
};

// one attempt at the target precision; false = needs more precision
bool try_build(const WeilPolynomial& f,
               const std::vector<std::pair<IntPoly, int>>& sqfree,
               std::vector<std::vector<FC>>& seeds, long prec,
               FrobeniusSpectrum& out)
{
    mpfr_prec_t wp = static_cast<mpfr_prec_t>(prec + 64);
    std::vector<Candidate> cand;
    for (size_t k = 0; k < sqfree.size(); ++k) {
        aberth(sqfree[k].first, wp, seeds[k]);
        std::vector<CBall> disks = weierstrass_disks(sqfree[k].first, seeds[k], wp);
        for (auto& d : disks) cand.push_back({std::move(d), sqfree[k].second});
    }
    size_t nd = cand.size();

    // modulus screening first: a provably off-circle root rejects the input
    // regardless of how the matching below fares at this precision
    RBall sqq(wp);
    mpfr_set_z(sqq.mid.raw(), f.q.get_mpz_t(), MPFR_RNDN);
    int tsq = mpfr_sqrt(sqq.mid.raw(), sqq.mid.raw(), MPFR_RNDN);
    if (tsq != 0)
        mpfr_set_ui_2exp(sqq.rad.raw(), 1, mpfr_get_exp(sqq.mid.raw()) - wp + 1, MPFR_RNDU);
    for (auto& c : cand) {
        RBall m = c.disk.abs();
        if (intervals_disjoint(m, sqq))
            throw Error(ErrorKind::RootModulusViolation,
                        "root enclosure " + c.disk.str() + " has modulus provably different from sqrt(" +
                            f.q.get_str() + ")");
    }

    for (size_t i = 0; i < nd; ++i)
        for (size_t j = i + 1; j < nd; ++j)
            if (!disks_disjoint(cand[i].disk, cand[j].disk)) return false;

    // conjugate matching: conj(D_i) must meet exactly one disk
    for (size_t i = 0; i < nd; ++i) {
        CBall cj = cand[i].disk.conj();
        int hit = -1;
        for (size_t j = 0; j < nd; ++j) {
            if (!disks_disjoint(cj, cand[j].disk)) {
                if (hit >= 0) return false;
                hit = static_cast<int>(j);
            }
        }
        if (hit < 0) return false;
        cand[i].conj_index = hit;
    }
    for (size_t i = 0; i < nd; ++i) {
        size_t j = static_cast<size_t>(cand[i].conj_index);
        if (cand[j].conj_index != static_cast<int>(i)) return false;
        if (cand[j].multiplicity != cand[i].multiplicity) return false;
    }

    // self-matched enclosures hold real roots: snap onto the axis
    for (size_t i = 0; i < nd; ++i) {
        if (cand[i].conj_index != static_cast<int>(i)) continue;
        cand[i].real = true;
        Flt ai(64);
        mpfr_abs(ai.raw(), cand[i].disk.im.raw(), MPFR_RNDU);
        mpfr_add(cand[i].disk.rad.raw(), cand[i].disk.rad.raw(), ai.raw(), MPFR_RNDU);
        mpfr_set_zero(cand[i].disk.im.raw(), 1);
        if (cand[i].multiplicity % 2 != 0) return false; // see modulus check below
    }
    // snapping grew radii; disjointness must survive
    for (size_t i = 0; i < nd; ++i)
        for (size_t j = i + 1; j < nd; ++j)
            if (!disks_disjoint(cand[i].disk, cand[j].disk)) return false;

    // complex roots need a certified half-plane
    for (auto& c : cand) {
        if (c.real) continue;
        if (c.disk.imag_part().contains_zero()) return false;
    }

    // modulus intervals must contain sqrt(q)
    for (auto& c : cand) {
        RBall m = c.disk.abs();
        if (!interval_contains(m, sqq)) return false;
    }

    // pairing product check: alpha * alpha-bar must contain q
    for (size_t i = 0; i < nd; ++i) {
        CBall prod = cand[i].disk.mul(cand[static_cast<size_t>(cand[i].conj_index)].disk);
        int in = disk_contains_point_z(prod, f.q, 0);
        if (in < 0)
            throw Error(ErrorKind::RootModulusViolation,
                        "conjugate-paired enclosures do not multiply to q");
        if (in == 0) return false;
    }

    // order the upper representatives by certified angle
    struct Upper {
        int idx;
        RBall t;
    };
    std::vector<Upper> uppers;
    RBall zero(wp), one(wp);
    mpfr_set_ui(one.mid.raw(), 1, MPFR_RNDN);
    for (size_t i = 0; i < nd; ++i) {
        const Candidate& c = cand[i];
        if (c.real) {
            uppers.push_back({static_cast<int>(i), mpfr_sgn(c.disk.re.raw()) > 0 ? zero : one});
        } else if (mpfr_sgn(c.disk.im.raw()) > 0) {
            RBall t = c.disk.arg().div(RBall::pi(wp));
            uppers.push_back({static_cast<int>(i), std::move(t)});
        }
    }
    for (size_t a = 0; a < uppers.size(); ++a)
        for (size_t b = a + 1; b < uppers.size(); ++b)
            if (!intervals_disjoint(uppers[a].t, uppers[b].t) &&
                uppers[a].idx != uppers[b].idx)
                return false;
    std::sort(uppers.begin(), uppers.end(), [](const Upper& a, const Upper& b) {
        return mpfr_cmp(a.t.mid.raw(), b.t.mid.raw()) < 0;
    });

    // angle widths must satisfy the spectrum contract
    Flt wcap(64);
    mpfr_set_ui_2exp(wcap.raw(), 1, -(prec / 2), MPFR_RNDN);
    for (auto& u : uppers) {
        Flt w(64);
        mpfr_mul_2ui(w.raw(), u.t.rad.raw(), 1, MPFR_RNDU);
        if (mpfr_cmp(w.raw(), wcap.raw()) > 0) return false;
    }

    out.q = f.q;
    out.g = f.g;
    out.precision_bits = prec;
    out.poly = f.coeffs;
    out.roots.clear();
    out.slot_root.assign(2 * f.g, -1);

    std::vector<int> remap(nd, -1);
    for (auto& u : uppers) {
        remap[static_cast<size_t>(u.idx)] = static_cast<int>(out.roots.size());
        const Candidate& c = cand[static_cast<size_t>(u.idx)];
        out.roots.push_back({c.disk, c.multiplicity, -1, c.real});
    }
    for (auto& u : uppers) {
        const Candidate& c = cand[static_cast<size_t>(u.idx)];
        if (c.real) {
            out.roots[static_cast<size_t>(remap[static_cast<size_t>(u.idx)])].conj_index =
                remap[static_cast<size_t>(u.idx)];
        } else {
            size_t lo = static_cast<size_t>(c.conj_index);
            remap[lo] = static_cast<int>(out.roots.size());
            out.roots.push_back({cand[lo].disk, cand[lo].multiplicity,
                                 remap[static_cast<size_t>(u.idx)], false});
            out.roots[static_cast<size_t>(remap[static_cast<size_t>(u.idx)])].conj_index = remap[lo];
        }
    }

    unsigned slot = 0;
    for (auto& u : uppers) {
        const Candidate& c = cand[static_cast<size_t>(u.idx)];
        int ridx = remap[static_cast<size_t>(u.idx)];
        int copies = c.real ? c.multiplicity / 2 : c.multiplicity;
        for (int t = 0; t < copies; ++t) {
            out.slot_root[slot] = ridx;
            out.slot_root[slot + f.g] = out.roots[static_cast<size_t>(ridx)].conj_index;
            ++slot;
        }
    }
    if (slot != f.g)
        throw Error(ErrorKind::Internal, "slot assignment does not fill g upper slots");
    return true;
}

} // namespace

FrobeniusSpectrum compute_spectrum(const WeilPolynomial& f, long precision_bits, long precision_cap)
{
    if (precision_bits < 8) precision_bits = 8;
    auto sqfree = poly::squarefree_decomposition(f.coeffs);
    std::vector<std::vector<FC>> seeds(sqfree.size());
    FrobeniusSpectrum out;
    for (long prec = precision_bits; prec <= precision_cap; prec *= 2) {
        if (try_build(f, sqfree, seeds, prec, out)) return out;
    }
    throw Error(ErrorKind::PrecisionExhausted,
                "could not certify the spectrum of " + poly::to_string(f.coeffs) + " within " +
                    std::to_string(precision_cap) + " bits");
}

FrobeniusSpectrum refine(const FrobeniusSpectrum& s, long target_bits, long precision_cap)
{
    if (target_bits < s.precision_bits)
        throw Error(ErrorKind::InvalidArgument, "refine target below current precision");
    if (target_bits == s.precision_bits) return s;
    WeilPolynomial f;
    f.coeffs = s.poly;
    f.q = s.q;
    f.g = s.g;
    FrobeniusSpectrum r = compute_spectrum(f, target_bits, std::max(precision_cap, target_bits));
    if (r.roots.size() != s.roots.size())
        throw Error(ErrorKind::Internal, "refinement changed the root count");
    return r;
}

AngleVector angles(const FrobeniusSpectrum& s)
{
    AngleVector av;
    av.precision_bits = s.precision_bits;
    mpfr_prec_t wp = static_cast<mpfr_prec_t>(s.precision_bits + 64);
    RBall pi = RBall::pi(wp);
    int last = -1;
    RBall cached(wp);
    for (unsigned i = 0; i < s.g; ++i) {
        int ridx = s.slot_root[i];
        const RootEnclosure& r = s.roots[static_cast<size_t>(ridx)];
        if (ridx != last) {
            if (r.real) {
                cached = RBall(wp);
                if (mpfr_sgn(r.disk.re.raw()) < 0) mpfr_set_ui(cached.mid.raw(), 1, MPFR_RNDN);
            } else {
                cached = r.disk.arg().div(pi);
            }
            last = ridx;
        }
        av.t.push_back(cached);
        av.root_index.push_back(ridx);
    }
    return av;
}

} // namespace anglerank
