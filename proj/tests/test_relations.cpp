#include <doctest.h>

#include "anglerank/errors.hpp"
#include "anglerank/relations.hpp"
#include "corpus_gen.hpp"
#include "intpoly.hpp"

using namespace anglerank;

namespace {

AngleLattice lattice_of(std::vector<mpz_class> c, long q, DetectionParams p = {})
{
    WeilPolynomial f = parse_weil(c, q);
    FrobeniusSpectrum s = compute_spectrum(f, p.precision_bits, p.precision_cap);
    return find_relation_lattice(s, p);
}

AngleLattice synthetic(size_t dim, std::vector<std::vector<long>> sat_rows)
{
    AngleLattice lat;
    lat.dim = dim;
    for (const auto& row : sat_rows) {
        AngleLattice::SatVector sv;
        for (long x : row) sv.e.emplace_back(x);
        sv.cert.status = CertStatus::Certified;
        sv.cert.claimed_known = true;
        lat.basis_saturated.push_back(std::move(sv));
        std::vector<mpz_class> e;
        for (long x : row) e.emplace_back(x);
        lat.basis_exact.emplace_back(e, 0);
        RelationCertificate rc;
        rc.status = CertStatus::Certified;
        lat.exact_certs.push_back(rc);
    }
    lat.angle_rank = static_cast<int>(dim) - static_cast<int>(sat_rows.size());
    lat.stable = true;
    lat.complement_certified = true;
    return lat;
}

} // namespace

TEST_CASE("rational reconstruction finds the simplest rational")
{
    auto around = [](const mpq_class& x, long bits) {
        RBall b = RBall::from_q(x, 256);
        mpfr_set_ui_2exp(b.rad.raw(), 1, -bits, MPFR_RNDU);
        return b;
    };
    mpq_class out;
    CHECK(reconstruct_rational(around(mpq_class(1, 2), 60), 10, out));
    CHECK(out == mpq_class(1, 2));
    CHECK(reconstruct_rational(around(mpq_class(-3, 7), 60), 10, out));
    CHECK(out == mpq_class(-3, 7));
    CHECK(reconstruct_rational(around(mpq_class(5), 60), 10, out));
    CHECK(out == 5);
    CHECK(reconstruct_rational(around(mpq_class(0), 60), 10, out));
    CHECK(out == 0);
    // denominator bound rejects
    CHECK_FALSE(reconstruct_rational(around(mpq_class(13, 61), 80), 10, out));
    // an interval around an irrational-ish value has only big denominators
    RBall pi_ball = RBall::pi(256);
    CHECK_FALSE(reconstruct_rational(pi_ball, 1000, out));
}

TEST_CASE("supersingular elliptic curve: angle rank 0, certified generator")
{
    AngleLattice lat = lattice_of({2, 0, 1}, 2);
    CHECK(lat.angle_rank == 0);
    CHECK(lat.stable);
    CHECK(lat.complement_certified);
    CHECK(lat.certified());
    REQUIRE(lat.basis_exact.size() == 1);
    CHECK(lat.basis_exact[0].first == std::vector<mpz_class>{2});
    CHECK(lat.basis_exact[0].second == -1);
    REQUIRE(lat.basis_saturated.size() == 1);
    CHECK(lat.basis_saturated[0].cert.claimed == mpq_class(1, 2));
    CHECK(lat.basis_saturated[0].cert.status == CertStatus::Certified);
}

TEST_CASE("ordinary elliptic curve: no relation up to large bounds")
{
    DetectionParams p;
    p.height_bound = 1000000;
    p.denom_bound = 10000;
    AngleLattice lat = lattice_of({2, -1, 1}, 2, p);
    CHECK(lat.angle_rank == 1);
    CHECK(lat.basis_exact.empty());
    CHECK(lat.certified());

    // independent oracle: exhaustive denominator scan of the certified interval
    WeilPolynomial f = parse_weil({2, -1, 1}, 2);
    FrobeniusSpectrum s = compute_spectrum(f, 256);
    RBall t = angles(s).t[0];
    mpq_class lo = t.lower_q(), hi = t.upper_q();
    bool hit = false;
    for (long b = 1; b <= 10000 && !hit; ++b) {
        mpz_class lo_num;
        mpz_cdiv_q(lo_num.get_mpz_t(), mpq_class(lo * b).get_num().get_mpz_t(),
                   mpq_class(lo * b).get_den().get_mpz_t());
        if (mpq_class(lo_num, b) <= hi) hit = true;
    }
    CHECK_FALSE(hit);
}

TEST_CASE("non-simple sextic: angle rank 1 with the expected relations")
{
    AngleLattice lat = lattice_of({8, 0, 10, 0, 5, 0, 1}, 2);
    CHECK(lat.angle_rank == 1);
    CHECK(lat.certified());
    // t1 + t3 = 1 and t2 = 1/2
    CHECK(lat.member({1, 0, 1}));
    CHECK(lat.member({0, 1, 0}));
    CHECK_FALSE(lat.member({1, 0, 0}));
    CHECK_FALSE(lat.member({1, 0, -1}));
}

TEST_CASE("certify_relation on the worked examples")
{
    WeilPolynomial ss = parse_weil({2, 0, 1}, 2);
    FrobeniusSpectrum s1 = compute_spectrum(ss, 128);
    RelationCertificate c1 = certify_relation(s1, {mpz_class(2)}, mpq_class(1));
    CHECK(c1.status == CertStatus::Certified);
    CHECK(c1.separation_margin > 0);

    WeilPolynomial od = parse_weil({2, -1, 1}, 2);
    FrobeniusSpectrum s2 = compute_spectrum(od, 128);
    CHECK(certify_relation(s2, {mpz_class(1)}, mpq_class(1, 2)).status == CertStatus::Refuted);
    CHECK(certify_relation(s2, {mpz_class(0)}, mpq_class(0)).status == CertStatus::Certified);

    // certified relations re-verify at doubled precision
    FrobeniusSpectrum hs = compute_spectrum(ss, 256);
    CHECK(certify_relation(hs, {mpz_class(2)}, mpq_class(1)).status == CertStatus::Certified);
}

TEST_CASE("lemma form checks the generator shape")
{
    AngleLattice pass = synthetic(3, {{3, 3, 3}});
    pass.basis_exact[0].first = {3, 3, 3};
    LemmaCheck lc = check_lemma_form(pass);
    CHECK(lc.verdict == LemmaCheck::Verdict::Pass);
    CHECK(lc.n == 3);
    CHECK(lc.sign_pattern == std::vector<int>{1, 1, 1});

    AngleLattice mixed = synthetic(3, {{2, -2, 2}});
    LemmaCheck lm = check_lemma_form(mixed);
    CHECK(lm.verdict == LemmaCheck::Verdict::Pass);
    CHECK(lm.n == 2);
    CHECK(lm.sign_pattern == std::vector<int>{1, -1, 1});

    AngleLattice fail = synthetic(3, {{1, -1, 0}});
    LemmaCheck lf = check_lemma_form(fail);
    CHECK(lf.verdict == LemmaCheck::Verdict::Fail);
    CHECK(lf.witness == std::vector<mpz_class>{1, -1, 0});

    AngleLattice na = synthetic(3, {});
    CHECK(check_lemma_form(na).verdict == LemmaCheck::Verdict::NotApplicable);
}

TEST_CASE("galois stability probe")
{
    CHECK(galois_stability_probe(synthetic(3, {{2, 2, 2}})));
    CHECK_FALSE(galois_stability_probe(synthetic(3, {{1, -1, 0}})));
    CHECK(galois_stability_probe(synthetic(3, {})));
    // coordinate kernel: lattice {e_1, e_2, e_3} is symmetric
    CHECK(galois_stability_probe(synthetic(3, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}})));
}

TEST_CASE("base-extension invariance and product subadditivity")
{
    std::vector<std::vector<mpz_class>> polys = {{2, 0, 1}, {2, -1, 1}, {2, -2, 1}};
    for (const auto& c : polys) {
        WeilPolynomial f = parse_weil(c, 2);
        AngleLattice base = lattice_of(c, 2);
        for (unsigned m : {2u, 3u}) {
            WeilPolynomial fm = base_extend(f, m);
            FrobeniusSpectrum sm = compute_spectrum(fm, 128);
            AngleLattice lm = find_relation_lattice(sm, {});
            CHECK(lm.angle_rank == base.angle_rank);
        }
    }

    // rank(f1 f2) <= rank(f1) + rank(f2)
    IntPoly a = {2, -1, 1}, b = {2, 0, 1};
    AngleLattice la = lattice_of(a, 2), lb = lattice_of(b, 2);
    AngleLattice lab = lattice_of(poly::mul(a, b), 2);
    CHECK(lab.angle_rank <= la.angle_rank + lb.angle_rank);
}

TEST_CASE("rank plus lattice rank equals the number of angles")
{
    for (const auto& f : testgen::lemma_sextics()) {
        FrobeniusSpectrum s = compute_spectrum(f.second, 128);
        AngleLattice lat = find_relation_lattice(s, {});
        CHECK(lat.angle_rank + static_cast<int>(lat.basis_saturated.size()) ==
              static_cast<int>(f.second.g));
        CHECK(lat.basis_exact.size() == lat.basis_saturated.size());
    }
}
