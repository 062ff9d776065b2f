#include "anglerank/weil.hpp"

#include <algorithm>

#include "anglerank/errors.hpp"
#include "intpoly.hpp"

namespace anglerank {

const char* newton_class_name(NewtonClass c)
{
    switch (c) {
        case NewtonClass::Ordinary: return "ordinary";
        case NewtonClass::AlmostOrdinary: return "almost_ordinary";
        case NewtonClass::Supersingular: return "supersingular";
        case NewtonClass::Other: return "other";
    }
    return "other";
}

namespace {

// q = p^r with p prime, maximal r; q < 2^64
bool prime_power_split(const mpz_class& q, mpz_class& p, unsigned& r)
{
    if (q < 2 || mpz_sizeinbase(q.get_mpz_t(), 2) > 64) return false;
    for (unsigned k = 64; k >= 1; --k) {
        mpz_class root;
        mpz_root(root.get_mpz_t(), q.get_mpz_t(), k);
        mpz_class pw;
        mpz_pow_ui(pw.get_mpz_t(), root.get_mpz_t(), k);
        if (pw != q) continue;
        if (mpz_probab_prime_p(root.get_mpz_t(), 40) > 0) {
            p = root;
            r = k;
            return true;
        }
    }
    return false;
}

} // namespace

WeilPolynomial parse_weil(const std::vector<mpz_class>& coeffs, const mpz_class& q)
{
    if (coeffs.empty())
        throw Error(ErrorKind::InvalidArgument, "empty coefficient list");
    if (coeffs.back() != 1)
        throw Error(ErrorKind::NotMonic, "leading coefficient is " + coeffs.back().get_str());
    int deg = static_cast<int>(coeffs.size()) - 1;
    if (deg < 2 || deg % 2 != 0)
        throw Error(ErrorKind::OddDegree, "degree " + std::to_string(deg) + " is not a positive even integer");

    WeilPolynomial f;
    f.coeffs = coeffs;
    f.q = q;
    f.g = static_cast<unsigned>(deg / 2);
    if (!prime_power_split(q, f.p, f.r))
        throw Error(ErrorKind::NotPrimePower, q.get_str() + " is not a prime power below 2^64");

    for (unsigned i = 0; i < f.g; ++i) {
        mpz_class qpow;
        mpz_pow_ui(qpow.get_mpz_t(), q.get_mpz_t(), f.g - i);
        if (f.coeffs[i] != qpow * f.coeffs[2 * f.g - i])
            throw Error(ErrorKind::FunctionalEquationViolation,
                        "a_" + std::to_string(i) + " != q^" + std::to_string(f.g - i) +
                            " * a_" + std::to_string(2 * f.g - i),
                        static_cast<long>(i));
    }
    return f;
}

NewtonPolygon newton_polygon(const WeilPolynomial& f)
{
    struct Pt {
        long x;
        long v;
    };
    std::vector<Pt> pts;
    for (size_t i = 0; i < f.coeffs.size(); ++i) {
        if (f.coeffs[i] == 0) continue;
        mpz_class tmp;
        unsigned long v = mpz_remove(tmp.get_mpz_t(), f.coeffs[i].get_mpz_t(), f.p.get_mpz_t());
        pts.push_back({static_cast<long>(i), static_cast<long>(v)});
    }

    // lower convex hull, points already sorted by x
    std::vector<Pt> hull;
    for (const Pt& p : pts) {
        while (hull.size() >= 2) {
            const Pt& a = hull[hull.size() - 2];
            const Pt& b = hull[hull.size() - 1];
            // keep right turns strictly below: pop b when it is on or above chord a-p
            __int128 cross = static_cast<__int128>(b.x - a.x) * (p.v - a.v) -
                             static_cast<__int128>(b.v - a.v) * (p.x - a.x);
            if (cross <= 0)
                hull.pop_back();
            else
                break;
        }
        hull.push_back(p);
    }

    NewtonPolygon np;
    for (size_t k = 0; k + 1 < hull.size(); ++k) {
        long dx = hull[k + 1].x - hull[k].x;
        long dv = hull[k].v - hull[k + 1].v; // root valuation = -(edge slope)
        mpq_class s(dv, dx * static_cast<long>(f.r));
        s.canonicalize();
        np.slopes.emplace_back(s, static_cast<int>(dx));
    }
    std::sort(np.slopes.begin(), np.slopes.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    // merge equal slopes
    std::vector<std::pair<mpq_class, int>> merged;
    for (auto& sm : np.slopes) {
        if (!merged.empty() && merged.back().first == sm.first)
            merged.back().second += sm.second;
        else
            merged.push_back(sm);
    }
    np.slopes = std::move(merged);

    int total = 0;
    for (auto& sm : np.slopes) total += sm.second;
    if (total != 2 * static_cast<int>(f.g))
        throw Error(ErrorKind::Internal, "newton polygon multiplicities do not sum to 2g");
    return np;
}

NewtonClass classify_newton(const NewtonPolygon& np, unsigned g)
{
    const auto& s = np.slopes;
    auto is = [&](std::vector<std::pair<mpq_class, int>> want) {
        std::erase_if(want, [](const auto& p) { return p.second == 0; });
        return s == want;
    };
    if (is({{mpq_class(0), static_cast<int>(g)}, {mpq_class(1), static_cast<int>(g)}}))
        return NewtonClass::Ordinary;
    if (is({{mpq_class(1, 2), 2 * static_cast<int>(g)}}))
        return NewtonClass::Supersingular;
    if (g >= 2 &&
        is({{mpq_class(0), static_cast<int>(g) - 1},
            {mpq_class(1, 2), 2},
            {mpq_class(1), static_cast<int>(g) - 1}}))
        return NewtonClass::AlmostOrdinary;
    return NewtonClass::Other;
}

WeilPolynomial base_extend(const WeilPolynomial& f, unsigned m)
{
    if (m == 0)
        throw Error(ErrorKind::InvalidArgument, "base extension degree must be >= 1");
    if (m == 1) return f;
    int n = f.degree();
    std::vector<mpz_class> ps = poly::power_sums(f.coeffs, n * static_cast<int>(m) + 1);
    std::vector<mpz_class> pm(n + 1);
    for (int k = 1; k <= n; ++k) pm[k] = ps[static_cast<size_t>(k) * m];
    IntPoly fm = poly::from_power_sums(pm, n);
    mpz_class qm;
    mpz_pow_ui(qm.get_mpz_t(), f.q.get_mpz_t(), m);
    return parse_weil(fm, qm);
}

} // namespace anglerank
