#include <doctest.h>

#include "anglerank/ball.hpp"

using namespace anglerank;

namespace {

// deterministic little generator for property checks
struct Lcg {
    uint64_t s = 0x9e3779b97f4a7c15ull;
    uint64_t next()
    {
        s = s * 6364136223846793005ull + 1442695040888963407ull;
        return s >> 11;
    }
    long small(long lo, long hi) { return lo + static_cast<long>(next() % static_cast<uint64_t>(hi - lo + 1)); }
    mpq_class rational()
    {
        long num = small(-500, 500);
        long den = small(1, 40);
        return mpq_class(num, den);
    }
};

} // namespace

TEST_CASE("real ball arithmetic contains the exact rational results")
{
    Lcg rng;
    for (int it = 0; it < 300; ++it) {
        mpq_class x = rng.rational(), y = rng.rational();
        RBall bx = RBall::from_q(x, 96), by = RBall::from_q(y, 96);
        CHECK(bx.add(by).contains_q(x + y));
        CHECK(bx.sub(by).contains_q(x - y));
        CHECK(bx.mul(by).contains_q(x * y));
        if (y != 0 && abs(y) > mpq_class(1, 100)) CHECK(bx.div(by).contains_q(x / y));
        CHECK(bx.mul_q(y).contains_q(x * y));
    }
}

TEST_CASE("complex ball products and powers contain exact Gaussian rationals")
{
    Lcg rng;
    for (int it = 0; it < 100; ++it) {
        mpq_class ar = rng.rational(), ai = rng.rational();
        if (ar == 0 && ai == 0) continue;
        CBall a(96);
        mpfr_set_q(a.re.raw(), ar.get_mpq_t(), MPFR_RNDN);
        mpfr_set_q(a.im.raw(), ai.get_mpq_t(), MPFR_RNDN);
        // from_q can round; widen by one representable step
        mpfr_set_ui_2exp(a.rad.raw(), 1, -80, MPFR_RNDU);

        // a^3 componentwise, exactly
        mpq_class r2 = ar * ar - ai * ai, i2 = 2 * ar * ai;
        mpq_class r3 = r2 * ar - i2 * ai, i3 = r2 * ai + i2 * ar;
        CBall p = a.powi(3);
        CHECK(p.real_part().contains_q(r3));
        CHECK(p.imag_part().contains_q(i3));

        // a * inv(a) contains 1
        mpq_class n2 = ar * ar + ai * ai;
        if (n2 > mpq_class(1, 50)) {
            CBall unit = a.mul(a.inv());
            CHECK(unit.real_part().contains_q(1));
            CHECK(unit.imag_part().contains_q(0));
        }
    }
}

TEST_CASE("roots of unity and arguments")
{
    CBall i4 = CBall::root_of_unity(mpq_class(1, 4), 128);
    CHECK(i4.real_part().contains_q(0));
    CHECK(i4.imag_part().contains_q(1));

    CBall half = CBall::root_of_unity(mpq_class(1, 2), 128);
    CHECK(half.real_part().contains_q(-1));
    CHECK(half.imag_part().contains_q(0));

    // arg(1 + i) = pi/4, so arg/pi contains 1/4
    CBall z(128);
    mpfr_set_ui(z.re.raw(), 1, MPFR_RNDN);
    mpfr_set_ui(z.im.raw(), 1, MPFR_RNDN);
    RBall t = z.arg().div(RBall::pi(128));
    CHECK(t.contains_q(mpq_class(1, 4)));
    CHECK_FALSE(t.contains_q(mpq_class(1, 3)));
}

TEST_CASE("disk membership and disjointness are directionally safe")
{
    CBall a = CBall::from_z(3, 96);
    mpfr_set_ui_2exp(a.rad.raw(), 1, -10, MPFR_RNDU);
    CHECK(disk_contains_point_z(a, 3, 0) == 1);
    CHECK(disk_contains_point_z(a, 4, 0) == -1);
    CBall b = CBall::from_z(4, 96);
    mpfr_set_ui_2exp(b.rad.raw(), 1, -10, MPFR_RNDU);
    CHECK(disks_disjoint(a, b));
    CBall c = CBall::from_z(3, 96);
    mpfr_set_ui(c.rad.raw(), 2, MPFR_RNDU);
    CHECK_FALSE(disks_disjoint(a, c));
}
