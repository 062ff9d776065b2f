#include "anglerank/ball.hpp"

#include <algorithm>
#include <sstream>

#include "anglerank/errors.hpp"

namespace anglerank {

namespace {

constexpr mpfr_prec_t RAD_PREC = 64;

// one-ulp upper bound of |v|'s rounding error, added to rad (RNDU).
// An exactly-zero component carries no rounding error: the working exponent
// range is far inside MPFR's, so a zero result is exact.
void bump_ulp(Flt& rad, const Flt& v, int ternary)
{
    if (ternary == 0 || v.is_zero()) return;
    mpfr_t u;
    mpfr_init2(u, RAD_PREC);
    mpfr_set_ui_2exp(u, 1, mpfr_get_exp(v.raw()) - v.prec() + 1, MPFR_RNDU);
    mpfr_add(rad.raw(), rad.raw(), u, MPFR_RNDU);
    mpfr_clear(u);
}

Flt abs_upper(const Flt& v)
{
    Flt r(RAD_PREC);
    mpfr_abs(r.raw(), v.raw(), MPFR_RNDU);
    return r;
}

} // namespace

std::string Flt::str(size_t digits) const
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%%.%zuRNg", digits);
    char out[128];
    mpfr_snprintf(out, sizeof out, buf, x_);
    return out;
}

RBall::RBall(mpfr_prec_t prec) : mid(prec), rad(RAD_PREC) {}

RBall RBall::from_si(long v, mpfr_prec_t prec)
{
    RBall r(prec);
    int t = mpfr_set_si(r.mid.raw(), v, MPFR_RNDN);
    bump_ulp(r.rad, r.mid, t);
    return r;
}

RBall RBall::from_z(const mpz_class& v, mpfr_prec_t prec)
{
    RBall r(prec);
    int t = mpfr_set_z(r.mid.raw(), v.get_mpz_t(), MPFR_RNDN);
    bump_ulp(r.rad, r.mid, t);
    return r;
}

RBall RBall::from_q(const mpq_class& v, mpfr_prec_t prec)
{
    RBall r(prec);
    int t = mpfr_set_q(r.mid.raw(), v.get_mpq_t(), MPFR_RNDN);
    bump_ulp(r.rad, r.mid, t);
    return r;
}

RBall RBall::pi(mpfr_prec_t prec)
{
    RBall r(prec);
    int t = mpfr_const_pi(r.mid.raw(), MPFR_RNDN);
    bump_ulp(r.rad, r.mid, t);
    return r;
}

RBall RBall::add(const RBall& o) const
{
    RBall r(std::max(prec(), o.prec()));
    int t = mpfr_add(r.mid.raw(), mid.raw(), o.mid.raw(), MPFR_RNDN);
    mpfr_add(r.rad.raw(), rad.raw(), o.rad.raw(), MPFR_RNDU);
    bump_ulp(r.rad, r.mid, t);
    return r;
}

RBall RBall::sub(const RBall& o) const
{
    RBall r(std::max(prec(), o.prec()));
    int t = mpfr_sub(r.mid.raw(), mid.raw(), o.mid.raw(), MPFR_RNDN);
    mpfr_add(r.rad.raw(), rad.raw(), o.rad.raw(), MPFR_RNDU);
    bump_ulp(r.rad, r.mid, t);
    return r;
}

RBall RBall::neg() const
{
    RBall r = *this;
    mpfr_neg(r.mid.raw(), r.mid.raw(), MPFR_RNDN);
    return r;
}

RBall RBall::mul(const RBall& o) const
{
    RBall r(std::max(prec(), o.prec()));
    int t = mpfr_mul(r.mid.raw(), mid.raw(), o.mid.raw(), MPFR_RNDN);
    // |a| rb + |b| ra + ra rb
    Flt aa = abs_upper(mid), bb = abs_upper(o.mid);
    Flt t1(RAD_PREC), t2(RAD_PREC);
    mpfr_mul(t1.raw(), aa.raw(), o.rad.raw(), MPFR_RNDU);
    mpfr_mul(t2.raw(), bb.raw(), rad.raw(), MPFR_RNDU);
    mpfr_add(t1.raw(), t1.raw(), t2.raw(), MPFR_RNDU);
    mpfr_mul(t2.raw(), rad.raw(), o.rad.raw(), MPFR_RNDU);
    mpfr_add(r.rad.raw(), t1.raw(), t2.raw(), MPFR_RNDU);
    bump_ulp(r.rad, r.mid, t);
    return r;
}

RBall RBall::div(const RBall& o) const
{
    // |x/y - mx/my| <= (ra |my| + rb |mx|) / (|my| (|my| - rb))
    RBall r(std::max(prec(), o.prec()));
    Flt myl(RAD_PREC);
    mpfr_abs(myl.raw(), o.mid.raw(), MPFR_RNDD);
    Flt den(RAD_PREC);
    mpfr_sub(den.raw(), myl.raw(), o.rad.raw(), MPFR_RNDD);
    if (mpfr_sgn(den.raw()) <= 0)
        throw Error(ErrorKind::PrecisionExhausted, "interval division by an interval containing zero");
    int t = mpfr_div(r.mid.raw(), mid.raw(), o.mid.raw(), MPFR_RNDN);
    Flt num(RAD_PREC), t2(RAD_PREC);
    mpfr_mul(num.raw(), rad.raw(), abs_upper(o.mid).raw(), MPFR_RNDU);
    mpfr_mul(t2.raw(), o.rad.raw(), abs_upper(mid).raw(), MPFR_RNDU);
    mpfr_add(num.raw(), num.raw(), t2.raw(), MPFR_RNDU);
    mpfr_mul(t2.raw(), myl.raw(), den.raw(), MPFR_RNDD);
    mpfr_div(r.rad.raw(), num.raw(), t2.raw(), MPFR_RNDU);
    bump_ulp(r.rad, r.mid, t);
    return r;
}

RBall RBall::mul_q(const mpq_class& c) const
{
    RBall cq = RBall::from_q(c, prec());
    return mul(cq);
}

RBall RBall::add_q(const mpq_class& c) const
{
    RBall cq = RBall::from_q(c, prec());
    return add(cq);
}

Flt RBall::upper() const
{
    Flt r(RAD_PREC);
    mpfr_add(r.raw(), mid.raw(), rad.raw(), MPFR_RNDU);
    return r;
}

Flt RBall::lower() const
{
    Flt r(RAD_PREC);
    mpfr_sub(r.raw(), mid.raw(), rad.raw(), MPFR_RNDD);
    return r;
}

bool RBall::contains_zero() const
{
    return mpfr_cmpabs(mid.raw(), rad.raw()) <= 0;
}

bool RBall::contains_q(const mpq_class& v) const
{
    mpq_class m, r;
    mpfr_get_q(m.get_mpq_t(), mid.raw());
    mpfr_get_q(r.get_mpq_t(), rad.raw());
    mpq_class d = m - v;
    return abs(d) <= r;
}

bool RBall::provably_positive() const { return mpfr_sgn(lower().raw()) > 0; }
bool RBall::provably_negative() const { return mpfr_sgn(upper().raw()) < 0; }

mpq_class RBall::lower_q() const
{
    mpq_class m, r;
    mpfr_get_q(m.get_mpq_t(), mid.raw());
    mpfr_get_q(r.get_mpq_t(), rad.raw());
    return m - r;
}

mpq_class RBall::upper_q() const
{
    mpq_class m, r;
    mpfr_get_q(m.get_mpq_t(), mid.raw());
    mpfr_get_q(r.get_mpq_t(), rad.raw());
    return m + r;
}

std::string RBall::str() const
{
    std::ostringstream os;
    os << mid.str() << " +/- " << rad.str(6);
    return os.str();
}

bool intervals_disjoint(const RBall& a, const RBall& b)
{
    return mpfr_cmp(a.upper().raw(), b.lower().raw()) < 0 ||
           mpfr_cmp(b.upper().raw(), a.lower().raw()) < 0;
}

bool interval_contains(const RBall& outer, const RBall& inner)
{
    return mpfr_cmp(outer.lower().raw(), inner.lower().raw()) <= 0 &&
           mpfr_cmp(inner.upper().raw(), outer.upper().raw()) <= 0;
}

CBall::CBall(mpfr_prec_t prec) : re(prec), im(prec), rad(RAD_PREC) {}

CBall CBall::from_z(const mpz_class& x, mpfr_prec_t prec)
{
    CBall r(prec);
    int t = mpfr_set_z(r.re.raw(), x.get_mpz_t(), MPFR_RNDN);
    bump_ulp(r.rad, r.re, t);
    return r;
}

CBall CBall::from_real(const RBall& x)
{
    CBall r(x.prec());
    mpfr_set(r.re.raw(), x.mid.raw(), MPFR_RNDN);
    mpfr_set(r.rad.raw(), x.rad.raw(), MPFR_RNDU);
    return r;
}

CBall CBall::add(const CBall& o) const
{
    CBall r(std::max(prec(), o.prec()));
    int t1 = mpfr_add(r.re.raw(), re.raw(), o.re.raw(), MPFR_RNDN);
    int t2 = mpfr_add(r.im.raw(), im.raw(), o.im.raw(), MPFR_RNDN);
    mpfr_add(r.rad.raw(), rad.raw(), o.rad.raw(), MPFR_RNDU);
    bump_ulp(r.rad, r.re, t1);
    bump_ulp(r.rad, r.im, t2);
    return r;
}

CBall CBall::sub(const CBall& o) const
{
    CBall r(std::max(prec(), o.prec()));
    int t1 = mpfr_sub(r.re.raw(), re.raw(), o.re.raw(), MPFR_RNDN);
    int t2 = mpfr_sub(r.im.raw(), im.raw(), o.im.raw(), MPFR_RNDN);
    mpfr_add(r.rad.raw(), rad.raw(), o.rad.raw(), MPFR_RNDU);
    bump_ulp(r.rad, r.re, t1);
    bump_ulp(r.rad, r.im, t2);
    return r;
}

CBall CBall::neg() const
{
    CBall r = *this;
    mpfr_neg(r.re.raw(), r.re.raw(), MPFR_RNDN);
    mpfr_neg(r.im.raw(), r.im.raw(), MPFR_RNDN);
    return r;
}

CBall CBall::conj() const
{
    CBall r = *this;
    mpfr_neg(r.im.raw(), r.im.raw(), MPFR_RNDN);
    return r;
}

namespace {

Flt center_abs_upper(const CBall& c)
{
    Flt r(RAD_PREC);
    mpfr_hypot(r.raw(), c.re.raw(), c.im.raw(), MPFR_RNDU);
    return r;
}

Flt center_abs_lower(const CBall& c)
{
    Flt r(RAD_PREC);
    mpfr_hypot(r.raw(), c.re.raw(), c.im.raw(), MPFR_RNDD);
    return r;
}

} // namespace

CBall CBall::mul(const CBall& o) const
{
    CBall r(std::max(prec(), o.prec()));
    // fmms/fmma give a single rounding per component
    int t1 = mpfr_fmms(r.re.raw(), re.raw(), o.re.raw(), im.raw(), o.im.raw(), MPFR_RNDN);
    int t2 = mpfr_fmma(r.im.raw(), re.raw(), o.im.raw(), im.raw(), o.re.raw(), MPFR_RNDN);
    Flt aa = center_abs_upper(*this), bb = center_abs_upper(o);
    Flt u1(RAD_PREC), u2(RAD_PREC);
    mpfr_mul(u1.raw(), aa.raw(), o.rad.raw(), MPFR_RNDU);
    mpfr_mul(u2.raw(), bb.raw(), rad.raw(), MPFR_RNDU);
    mpfr_add(u1.raw(), u1.raw(), u2.raw(), MPFR_RNDU);
    mpfr_mul(u2.raw(), rad.raw(), o.rad.raw(), MPFR_RNDU);
    mpfr_add(r.rad.raw(), u1.raw(), u2.raw(), MPFR_RNDU);
    bump_ulp(r.rad, r.re, t1);
    bump_ulp(r.rad, r.im, t2);
    return r;
}

CBall CBall::inv() const
{
    // |1/z - 1/c| <= r / (|c| (|c| - r)) for |z - c| <= r < |c|
    Flt cl = center_abs_lower(*this);
    Flt den(RAD_PREC);
    mpfr_sub(den.raw(), cl.raw(), rad.raw(), MPFR_RNDD);
    if (mpfr_sgn(den.raw()) <= 0)
        throw Error(ErrorKind::PrecisionExhausted, "inverting a disk containing zero");
    CBall r(prec());
    Flt n2(prec());
    int tn = mpfr_fmma(n2.raw(), re.raw(), re.raw(), im.raw(), im.raw(), MPFR_RNDN);
    int t1 = mpfr_div(r.re.raw(), re.raw(), n2.raw(), MPFR_RNDN);
    int t2 = mpfr_div(r.im.raw(), im.raw(), n2.raw(), MPFR_RNDN);
    mpfr_neg(r.im.raw(), r.im.raw(), MPFR_RNDN);
    Flt u(RAD_PREC);
    mpfr_mul(u.raw(), cl.raw(), den.raw(), MPFR_RNDD);
    mpfr_div(r.rad.raw(), rad.raw(), u.raw(), MPFR_RNDU);
    // |c|^2 rounding shifts the center by at most |c| ulp(n2) / n2^2-ish; cover
    // the three roundings with component ulps plus one extra bump on each.
    bump_ulp(r.rad, r.re, t1 | tn);
    bump_ulp(r.rad, r.im, t2 | tn);
    if (tn != 0) {
        bump_ulp(r.rad, r.re, 1);
        bump_ulp(r.rad, r.im, 1);
    }
    return r;
}

CBall CBall::div(const CBall& o) const { return mul(o.inv()); }

CBall CBall::powi(long e) const
{
    if (e == 0) {
        CBall one(prec());
        mpfr_set_ui(one.re.raw(), 1, MPFR_RNDN);
        return one;
    }
    bool invert = e < 0;
    unsigned long n = invert ? static_cast<unsigned long>(-(e + 1)) + 1ul : static_cast<unsigned long>(e);
    CBall base = *this;
    CBall acc(prec());
    mpfr_set_ui(acc.re.raw(), 1, MPFR_RNDN);
    while (n) {
        if (n & 1) acc = acc.mul(base);
        n >>= 1;
        if (n) base = base.mul(base);
    }
    return invert ? acc.inv() : acc;
}

RBall CBall::abs() const
{
    RBall r(prec());
    int t = mpfr_hypot(r.mid.raw(), re.raw(), im.raw(), MPFR_RNDN);
    mpfr_set(r.rad.raw(), rad.raw(), MPFR_RNDU);
    bump_ulp(r.rad, r.mid, t);
    return r;
}

RBall CBall::arg() const
{
    Flt cl = center_abs_lower(*this);
    Flt slack(RAD_PREC);
    mpfr_sub(slack.raw(), cl.raw(), rad.raw(), MPFR_RNDD);
    if (mpfr_sgn(slack.raw()) <= 0)
        throw Error(ErrorKind::PrecisionExhausted, "argument of a disk containing zero");
    RBall r(prec());
    int t = mpfr_atan2(r.mid.raw(), im.raw(), re.raw(), MPFR_RNDN);
    // half-width <= asin(rad/|c|) <= (pi/2) * rad / (|c| - rad)
    Flt u(RAD_PREC);
    mpfr_div(u.raw(), rad.raw(), slack.raw(), MPFR_RNDU);
    Flt pu(RAD_PREC);
    mpfr_const_pi(pu.raw(), MPFR_RNDU);
    mpfr_mul(u.raw(), u.raw(), pu.raw(), MPFR_RNDU);
    mpfr_div_2ui(r.rad.raw(), u.raw(), 1, MPFR_RNDU);
    bump_ulp(r.rad, r.mid, t);
    return r;
}

RBall CBall::real_part() const
{
    RBall r(prec());
    mpfr_set(r.mid.raw(), re.raw(), MPFR_RNDN);
    mpfr_set(r.rad.raw(), rad.raw(), MPFR_RNDU);
    return r;
}

RBall CBall::imag_part() const
{
    RBall r(prec());
    mpfr_set(r.mid.raw(), im.raw(), MPFR_RNDN);
    mpfr_set(r.rad.raw(), rad.raw(), MPFR_RNDU);
    return r;
}

bool CBall::contains_zero_maybe() const
{
    Flt cl = center_abs_lower(*this);
    return mpfr_cmp(cl.raw(), rad.raw()) <= 0;
}

CBall CBall::root_of_unity(const mpq_class& frac, mpfr_prec_t prec)
{
    mpq_class x = frac;
    // reduce mod 1
    mpz_class fl;
    mpz_fdiv_q(fl.get_mpz_t(), x.get_num().get_mpz_t(), x.get_den().get_mpz_t());
    x -= mpq_class(fl);
    RBall phi = RBall::pi(prec).mul_q(2 * x);
    CBall r(prec);
    int t1 = mpfr_cos(r.re.raw(), phi.mid.raw(), MPFR_RNDN);
    int t2 = mpfr_sin(r.im.raw(), phi.mid.raw(), MPFR_RNDN);
    // |e^{ix} - e^{iy}| <= |x - y|
    mpfr_set(r.rad.raw(), phi.rad.raw(), MPFR_RNDU);
    bump_ulp(r.rad, r.re, t1);
    bump_ulp(r.rad, r.im, t2);
    return r;
}

std::string CBall::str() const
{
    std::ostringstream os;
    os << "(" << re.str() << ", " << im.str() << ") +/- " << rad.str(6);
    return os.str();
}

Flt center_dist_upper(const CBall& a, const CBall& b)
{
    Flt dx(RAD_PREC + 16), dy(RAD_PREC + 16), r(RAD_PREC);
    mpfr_sub(dx.raw(), a.re.raw(), b.re.raw(), MPFR_RNDA);
    mpfr_sub(dy.raw(), a.im.raw(), b.im.raw(), MPFR_RNDA);
    mpfr_hypot(r.raw(), dx.raw(), dy.raw(), MPFR_RNDU);
    return r;
}

Flt center_dist_lower(const CBall& a, const CBall& b)
{
    Flt dx(RAD_PREC + 16), dy(RAD_PREC + 16), r(RAD_PREC);
    mpfr_sub(dx.raw(), a.re.raw(), b.re.raw(), MPFR_RNDZ);
    mpfr_sub(dy.raw(), a.im.raw(), b.im.raw(), MPFR_RNDZ);
    mpfr_hypot(r.raw(), dx.raw(), dy.raw(), MPFR_RNDD);
    return r;
}

bool disks_disjoint(const CBall& a, const CBall& b)
{
    Flt d = center_dist_lower(a, b);
    Flt s(RAD_PREC);
    mpfr_add(s.raw(), a.rad.raw(), b.rad.raw(), MPFR_RNDU);
    return mpfr_cmp(d.raw(), s.raw()) > 0;
}

int disk_contains_point_z(const CBall& d, const mpz_class& re, const mpz_class& im)
{
    CBall p(d.prec());
    int t1 = mpfr_set_z(p.re.raw(), re.get_mpz_t(), MPFR_RNDN);
    int t2 = mpfr_set_z(p.im.raw(), im.get_mpz_t(), MPFR_RNDN);
    bump_ulp(p.rad, p.re, t1);
    bump_ulp(p.rad, p.im, t2);
    Flt lo = center_dist_lower(d, p), hi = center_dist_upper(d, p);
    Flt out(RAD_PREC), in(RAD_PREC);
    mpfr_sub(out.raw(), lo.raw(), p.rad.raw(), MPFR_RNDD);
    if (mpfr_cmp(out.raw(), d.rad.raw()) > 0) return -1;
    mpfr_add(in.raw(), hi.raw(), p.rad.raw(), MPFR_RNDU);
    if (mpfr_cmp(in.raw(), d.rad.raw()) <= 0) return 1;
    return 0;
}

} // namespace anglerank
