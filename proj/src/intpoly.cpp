#include "intpoly.hpp"

#include <algorithm>
#include <sstream>

#include "anglerank/errors.hpp"

namespace anglerank {
namespace poly {

int degree(const IntPoly& f) { return static_cast<int>(f.size()) - 1; }

void normalize(IntPoly& f)
{
    while (!f.empty() && f.back() == 0) f.pop_back();
}

bool is_zero(const IntPoly& f) { return f.empty(); }

bool is_monic(const IntPoly& f) { return !f.empty() && f.back() == 1; }

IntPoly add(const IntPoly& a, const IntPoly& b)
{
    IntPoly r(std::max(a.size(), b.size()), 0);
    for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] += b[i];
    normalize(r);
    return r;
}

IntPoly sub(const IntPoly& a, const IntPoly& b)
{
    IntPoly r(std::max(a.size(), b.size()), 0);
    for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
    normalize(r);
    return r;
}

IntPoly mul(const IntPoly& a, const IntPoly& b)
{
    if (a.empty() || b.empty()) return {};
    IntPoly r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j)
            r[i + j] += a[i] * b[j];
    normalize(r);
    return r;
}

IntPoly derivative(const IntPoly& f)
{
    if (f.size() <= 1) return {};
    IntPoly r(f.size() - 1);
    for (size_t i = 1; i < f.size(); ++i) r[i - 1] = f[i] * static_cast<long>(i);
    normalize(r);
    return r;
}

mpz_class eval(const IntPoly& f, const mpz_class& x)
{
    mpz_class v = 0;
    for (size_t i = f.size(); i-- > 0;) v = v * x + f[i];
    return v;
}

bool divide_exact(const IntPoly& num, const IntPoly& den, IntPoly& quot)
{
    quot.clear();
    if (den.empty()) return false;
    if (num.empty()) return true;
    if (num.size() < den.size()) return false;
    IntPoly rem = num;
    quot.assign(num.size() - den.size() + 1, 0);
    const mpz_class& lc = den.back();
    for (size_t k = quot.size(); k-- > 0;) {
        mpz_class& top = rem[k + den.size() - 1];
        if (top % lc != 0) return false;
        mpz_class q = top / lc;
        quot[k] = q;
        if (q != 0)
            for (size_t j = 0; j < den.size(); ++j) rem[k + j] -= q * den[j];
    }
    for (const auto& c : rem)
        if (c != 0) return false;
    normalize(quot);
    return true;
}

namespace {

using QPoly = std::vector<mpq_class>;

void qnormalize(QPoly& f)
{
    while (!f.empty() && f.back() == 0) f.pop_back();
}

QPoly to_q(const IntPoly& f)
{
    QPoly r(f.size());
    for (size_t i = 0; i < f.size(); ++i) r[i] = f[i];
    return r;
}

// remainder of a mod b over Q, b nonzero
QPoly qrem(QPoly a, const QPoly& b)
{
    while (a.size() >= b.size() && !a.empty()) {
        mpq_class q = a.back() / b.back();
        size_t off = a.size() - b.size();
        for (size_t j = 0; j < b.size(); ++j) a[off + j] -= q * b[j];
        a.pop_back();
        qnormalize(a);
    }
    return a;
}

IntPoly q_to_primitive(const QPoly& f)
{
    if (f.empty()) return {};
    mpz_class den = 1;
    for (const auto& c : f) den = lcm(den, c.get_den());
    IntPoly r(f.size());
    for (size_t i = 0; i < f.size(); ++i) {
        mpq_class s = f[i] * den;
        r[i] = s.get_num();
    }
    mpz_class g = 0;
    for (const auto& c : r) g = gcd(g, c);
    if (g > 1)
        for (auto& c : r) c /= g;
    if (r.back() < 0)
        for (auto& c : r) c = -c;
    return r;
}

} // namespace

IntPoly gcd_primitive(const IntPoly& a, const IntPoly& b)
{
    if (a.empty()) return b;
    if (b.empty()) return a;
    QPoly x = to_q(a), y = to_q(b);
    while (!y.empty()) {
        QPoly r = qrem(x, y);
        x = std::move(y);
        y = std::move(r);
    }
    return q_to_primitive(x);
}

std::vector<std::pair<IntPoly, int>> squarefree_decomposition(const IntPoly& f)
{
    if (!is_monic(f))
        throw Error(ErrorKind::InvalidArgument, "squarefree decomposition requires a monic polynomial");
    std::vector<std::pair<IntPoly, int>> out;
    if (degree(f) < 1) return out;

    // Yun: a0 = gcd(f, f'), b1 = f/a0, c1 = f'/a0, d1 = c1 - b1'
    IntPoly fp = derivative(f);
    IntPoly a = gcd_primitive(f, fp);
    IntPoly b, c;
    if (!divide_exact(f, a, b) || !divide_exact(fp, a, c))
        throw Error(ErrorKind::Internal, "squarefree decomposition: gcd does not divide");
    int m = 1;
    while (degree(b) > 0) {
        IntPoly d = sub(c, derivative(b));
        IntPoly u = gcd_primitive(b, d);
        if (degree(u) > 0) out.emplace_back(u, m);
        IntPoly b2, c2;
        if (!divide_exact(b, u, b2) || !divide_exact(d, u, c2))
            throw Error(ErrorKind::Internal, "squarefree decomposition: factor does not divide");
        b = std::move(b2);
        c = std::move(c2);
        ++m;
    }
    return out;
}

std::vector<mpz_class> power_sums(const IntPoly& f, int count)
{
    if (!is_monic(f))
        throw Error(ErrorKind::InvalidArgument, "power sums require a monic polynomial");
    int n = degree(f);
    std::vector<mpz_class> p(count);
    if (count > 0) p[0] = n;
    // Newton: p_k + sum_{i=1..k-1} a_{n-i} p_{k-i} + k a_{n-k} = 0 for k <= n,
    // and the pure recurrence p_k = -sum_{i=1..n} a_{n-i} p_{k-i} for k > n.
    for (int k = 1; k < count; ++k) {
        mpz_class s = 0;
        if (k <= n) {
            for (int i = 1; i < k; ++i) s += f[n - i] * p[k - i];
            s += f[n - k] * k;
        } else {
            for (int i = 1; i <= n; ++i) s += f[n - i] * p[k - i];
        }
        p[k] = -s;
    }
    return p;
}

IntPoly from_power_sums(const std::vector<mpz_class>& ps, int deg)
{
    // e_k = (1/k) sum_{i=1..k} (-1)^{i-1} e_{k-i} p_i, coefficients a_{n-k} = (-1)^k e_k
    std::vector<mpq_class> e(deg + 1);
    e[0] = 1;
    for (int k = 1; k <= deg; ++k) {
        mpq_class s = 0;
        for (int i = 1; i <= k; ++i) {
            mpq_class term = e[k - i] * ps[i];
            if (i % 2 == 0) s -= term;
            else s += term;
        }
        e[k] = s / k;
    }
    IntPoly f(deg + 1);
    for (int k = 0; k <= deg; ++k) {
        mpq_class c = e[deg - k];
        if ((deg - k) % 2 != 0) c = -c;
        if (c.get_den() != 1)
            throw Error(ErrorKind::Internal, "power sum reconstruction is not integral");
        f[k] = c.get_num();
    }
    return f;
}

namespace {

// dense polynomials over F_ell, ell < 2^31
using FpPoly = std::vector<uint64_t>;

uint64_t mulmod(uint64_t a, uint64_t b, uint64_t m)
{
    return static_cast<uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

void fp_normalize(FpPoly& f)
{
    while (!f.empty() && f.back() == 0) f.pop_back();
}

FpPoly fp_rem(FpPoly a, const FpPoly& b, uint64_t m)
{
    // b monic
    while (a.size() >= b.size() && !a.empty()) {
        uint64_t q = a.back();
        size_t off = a.size() - b.size();
        if (q != 0)
            for (size_t j = 0; j + 1 < b.size(); ++j)
                a[off + j] = (a[off + j] + m - mulmod(q, b[j], m)) % m;
        a.pop_back();
        fp_normalize(a);
    }
    return a;
}

FpPoly fp_mulmod(const FpPoly& a, const FpPoly& b, const FpPoly& mod, uint64_t m)
{
    if (a.empty() || b.empty()) return {};
    FpPoly r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j)
            r[i + j] = (r[i + j] + mulmod(a[i], b[j], m)) % m;
    }
    fp_normalize(r);
    return fp_rem(std::move(r), mod, m);
}

FpPoly fp_gcd(FpPoly a, FpPoly b, uint64_t m)
{
    while (!b.empty()) {
        // make b monic for fp_rem
        uint64_t lc = b.back();
        if (lc != 1) {
            // inverse via Fermat
            uint64_t inv = 1, base = lc, e = m - 2;
            while (e) {
                if (e & 1) inv = mulmod(inv, base, m);
                base = mulmod(base, base, m);
                e >>= 1;
            }
            for (auto& c : b) c = mulmod(c, inv, m);
        }
        FpPoly r = fp_rem(std::move(a), b, m);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

// x^(ell^e) mod f via repeated Frobenius (binary powering of x by ell, e times)
FpPoly fp_frobenius_power(const FpPoly& f, uint64_t ell, int e, uint64_t m)
{
    FpPoly x = {0, 1};
    FpPoly r = x;
    for (int i = 0; i < e; ++i) {
        // r = r^ell mod f
        FpPoly acc = {1};
        FpPoly base = r;
        uint64_t ex = ell;
        while (ex) {
            if (ex & 1) acc = fp_mulmod(acc, base, f, m);
            base = fp_mulmod(base, base, f, m);
            ex >>= 1;
        }
        r = std::move(acc);
    }
    return r;
}

} // namespace

bool irreducible_mod_p(const IntPoly& f, uint64_t ell)
{
    int n = degree(f);
    if (n < 1) return false;
    FpPoly g(f.size());
    for (size_t i = 0; i < f.size(); ++i) {
        mpz_class c = f[i] % static_cast<long>(ell);
        if (c < 0) c += static_cast<long>(ell);
        g[i] = c.get_ui();
    }
    fp_normalize(g);
    if (degree(f) != static_cast<int>(g.size()) - 1) return false; // degree loss
    if (g.back() != 1) return false;                               // expect monic input

    // squarefree check
    FpPoly gp(g.size() - 1);
    for (size_t i = 1; i < g.size(); ++i) gp[i - 1] = mulmod(g[i], i % ell, ell);
    fp_normalize(gp);
    if (gp.empty()) return false;
    FpPoly d = fp_gcd(g, gp, ell);
    if (d.size() != 1) return false;

    // Rabin: x^(ell^n) == x mod g, and gcd(x^(ell^(n/t)) - x, g) == 1 for primes t | n
    FpPoly xn = fp_frobenius_power(g, ell, n, ell);
    FpPoly x = {0, 1};
    FpPoly diff(std::max(xn.size(), x.size()), 0);
    for (size_t i = 0; i < xn.size(); ++i) diff[i] = xn[i];
    for (size_t i = 0; i < x.size(); ++i) diff[i] = (diff[i] + ell - x[i]) % ell;
    fp_normalize(diff);
    if (!diff.empty()) return false;

    int nn = n;
    for (int t = 2; t * t <= nn; ++t) {
        if (nn % t != 0) continue;
        while (nn % t == 0) nn /= t;
        FpPoly xe = fp_frobenius_power(g, ell, n / t, ell);
        FpPoly d2(std::max(xe.size(), x.size()), 0);
        for (size_t i = 0; i < xe.size(); ++i) d2[i] = xe[i];
        for (size_t i = 0; i < x.size(); ++i) d2[i] = (d2[i] + ell - x[i]) % ell;
        fp_normalize(d2);
        FpPoly gg = fp_gcd(g, d2, ell);
        if (gg.size() != 1) return false;
    }
    if (nn > 1) {
        FpPoly xe = fp_frobenius_power(g, ell, n / nn, ell);
        FpPoly d2(std::max(xe.size(), x.size()), 0);
        for (size_t i = 0; i < xe.size(); ++i) d2[i] = xe[i];
        for (size_t i = 0; i < x.size(); ++i) d2[i] = (d2[i] + ell - x[i]) % ell;
        fp_normalize(d2);
        FpPoly gg = fp_gcd(g, d2, ell);
        if (gg.size() != 1) return false;
    }
    return true;
}

std::string to_string(const IntPoly& f)
{
    if (f.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (size_t i = f.size(); i-- > 0;) {
        if (f[i] == 0) continue;
        mpz_class c = f[i];
        if (!first) os << (c < 0 ? " - " : " + ");
        else if (c < 0) os << "-";
        first = false;
        mpz_class a = abs(c);
        if (i == 0 || a != 1) os << a.get_str();
        if (i >= 1) {
            if (a != 1) os << "*";
            os << "x";
            if (i > 1) os << "^" << i;
        }
    }
    return os.str();
}

} // namespace poly
} // namespace anglerank
