#ifndef ANGLERANK_BALL_HPP
#define ANGLERANK_BALL_HPP

#include <gmpxx.h>
#include <mpfr.h>

#include <string>

namespace anglerank {

// RAII mpfr_t with explicit precision.
class Flt {
public:
    Flt() { mpfr_init2(x_, 64); mpfr_set_zero(x_, 1); }
    explicit Flt(mpfr_prec_t prec) { mpfr_init2(x_, prec); mpfr_set_zero(x_, 1); }
    Flt(const Flt& o) { mpfr_init2(x_, mpfr_get_prec(o.x_)); mpfr_set(x_, o.x_, MPFR_RNDN); }
    Flt(Flt&& o) noexcept { mpfr_init2(x_, 2); mpfr_swap(x_, o.x_); }
    Flt& operator=(const Flt& o)
    {
        if (this != &o) {
            mpfr_set_prec(x_, mpfr_get_prec(o.x_));
            mpfr_set(x_, o.x_, MPFR_RNDN);
        }
        return *this;
    }
    Flt& operator=(Flt&& o) noexcept
    {
        if (this != &o) mpfr_swap(x_, o.x_);
        return *this;
    }
    ~Flt() { mpfr_clear(x_); }

    mpfr_ptr raw() { return x_; }
    mpfr_srcptr raw() const { return x_; }
    mpfr_prec_t prec() const { return mpfr_get_prec(x_); }
    bool is_zero() const { return mpfr_zero_p(x_); }
    int sgn() const { return mpfr_sgn(x_); }
    double to_double() const { return mpfr_get_d(x_, MPFR_RNDN); }
    std::string str(size_t digits = 20) const;

private:
    mpfr_t x_;
};

// Certified real interval, stored as midpoint +- radius. The midpoint carries
// the working precision; the radius is a short upward-rounded float.
struct RBall {
    Flt mid;
    Flt rad;

    RBall() : RBall(64) {}
    explicit RBall(mpfr_prec_t prec);

    static RBall from_si(long v, mpfr_prec_t prec);
    static RBall from_z(const mpz_class& v, mpfr_prec_t prec);
    static RBall from_q(const mpq_class& v, mpfr_prec_t prec);
    static RBall pi(mpfr_prec_t prec);

    mpfr_prec_t prec() const { return mid.prec(); }
    bool is_exact() const { return rad.is_zero(); }

    RBall add(const RBall& o) const;
    RBall sub(const RBall& o) const;
    RBall neg() const;
    RBall mul(const RBall& o) const;
    RBall div(const RBall& o) const; // requires o provably nonzero
    RBall mul_q(const mpq_class& c) const;
    RBall add_q(const mpq_class& c) const;

    Flt upper() const; // 64-bit bound, rounded up
    Flt lower() const; // 64-bit bound, rounded down

    bool contains_zero() const;
    bool contains_q(const mpq_class& v) const;     // exact rational test
    bool provably_positive() const;
    bool provably_negative() const;

    mpq_class lower_q() const; // exact mid - rad as a rational
    mpq_class upper_q() const;

    std::string str() const;
};

bool intervals_disjoint(const RBall& a, const RBall& b);
bool interval_contains(const RBall& outer, const RBall& inner);

// Certified complex disk: center (re, im) at working precision, radius as in RBall.
struct CBall {
    Flt re;
    Flt im;
    Flt rad;

    CBall() : CBall(64) {}
    explicit CBall(mpfr_prec_t prec);

    static CBall from_z(const mpz_class& x, mpfr_prec_t prec);
    static CBall from_real(const RBall& x);
    // e^(2*pi*i*(a/b))
    static CBall root_of_unity(const mpq_class& frac, mpfr_prec_t prec);

    mpfr_prec_t prec() const { return re.prec(); }

    CBall add(const CBall& o) const;
    CBall sub(const CBall& o) const;
    CBall neg() const;
    CBall conj() const;
    CBall mul(const CBall& o) const;
    CBall inv() const; // requires the disk to provably exclude 0
    CBall div(const CBall& o) const;
    CBall powi(long e) const;

    RBall abs() const;
    RBall arg() const;        // half-width asin-bounded; requires 0 outside the disk
    RBall real_part() const;
    RBall imag_part() const;

    bool contains_zero_maybe() const; // true when 0 cannot be excluded

    std::string str() const;
};

// distance between centers, directed bounds
Flt center_dist_upper(const CBall& a, const CBall& b);
Flt center_dist_lower(const CBall& a, const CBall& b);
bool disks_disjoint(const CBall& a, const CBall& b);

// three-way point membership: 1 = provably inside, -1 = provably outside, 0 = unknown
int disk_contains_point_z(const CBall& d, const mpz_class& re, const mpz_class& im);

} // namespace anglerank

#endif
