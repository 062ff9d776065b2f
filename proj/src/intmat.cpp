#include "intmat.hpp"

#include "anglerank/errors.hpp"

namespace anglerank {
namespace zmat {

ZMat identity(size_t n)
{
    ZMat e(n, ZVec(n, 0));
    for (size_t i = 0; i < n; ++i) e[i][i] = 1;
    return e;
}

ZMat mul(const ZMat& a, const ZMat& b)
{
    if (a.empty() || b.empty()) return {};
    size_t n = a.size(), m = b[0].size(), k = b.size();
    ZMat r(n, ZVec(m, 0));
    for (size_t i = 0; i < n; ++i)
        for (size_t l = 0; l < k; ++l) {
            if (a[i][l] == 0) continue;
            for (size_t j = 0; j < m; ++j) r[i][j] += a[i][l] * b[l][j];
        }
    return r;
}

ZVec mul_vec(const ZVec& x, const ZMat& a)
{
    if (a.empty()) return {};
    ZVec r(a[0].size(), 0);
    for (size_t i = 0; i < x.size(); ++i) {
        if (x[i] == 0) continue;
        for (size_t j = 0; j < r.size(); ++j) r[j] += x[i] * a[i][j];
    }
    return r;
}

ZMat hnf(ZMat a)
{
    if (a.empty()) return a;
    size_t rows = a.size(), cols = a[0].size();
    size_t r = 0;
    for (size_t c = 0; c < cols && r < rows; ++c) {
        // clear column c below row r with gcd steps
        for (size_t i = r + 1; i < rows; ++i) {
            if (a[i][c] == 0) continue;
            if (a[r][c] == 0) {
                std::swap(a[r], a[i]);
                continue;
            }
            mpz_class g, s, t;
            mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a[r][c].get_mpz_t(),
                       a[i][c].get_mpz_t());
            mpz_class u = a[r][c] / g, v = a[i][c] / g;
            for (size_t j = 0; j < cols; ++j) {
                mpz_class nr = s * a[r][j] + t * a[i][j];
                mpz_class ni = u * a[i][j] - v * a[r][j];
                a[r][j] = nr;
                a[i][j] = ni;
            }
        }
        if (a[r][c] == 0) continue;
        if (a[r][c] < 0)
            for (size_t j = 0; j < cols; ++j) a[r][j] = -a[r][j];
        // reduce entries above the pivot into [0, pivot)
        for (size_t i = 0; i < r; ++i) {
            mpz_class qd;
            mpz_fdiv_q(qd.get_mpz_t(), a[i][c].get_mpz_t(), a[r][c].get_mpz_t());
            if (qd != 0)
                for (size_t j = 0; j < cols; ++j) a[i][j] -= qd * a[r][j];
        }
        ++r;
    }
    a.resize(r);
    return a;
}

bool hnf_solve(const ZMat& h, const ZVec& v, ZVec& x)
{
    ZVec w = v;
    size_t cols = w.size();
    size_t row = 0;
    x.assign(h.size(), 0);
    for (size_t c = 0; c < cols; ++c) {
        if (row < h.size() && h[row][c] != 0) {
            if (w[c] % h[row][c] != 0) return false;
            mpz_class q = w[c] / h[row][c];
            x[row] = q;
            if (q != 0)
                for (size_t j = c; j < cols; ++j) w[j] -= q * h[row][j];
            ++row;
        } else if (w[c] != 0) {
            return false;
        }
    }
    for (const auto& e : w)
        if (e != 0) return false;
    return true;
}

bool hnf_member(const ZMat& h, const ZVec& v)
{
    ZVec x;
    return hnf_solve(h, v, x);
}

void snf(const ZMat& a0, ZVec& diag, ZMat& u, ZMat& v)
{
    size_t rows = a0.size();
    size_t cols = rows ? a0[0].size() : 0;
    ZMat a = a0;
    u = identity(rows);
    v = identity(cols);
    diag.clear();
    if (rows == 0 || cols == 0) return;

    auto row_op = [&](size_t i, size_t j, const mpz_class& s, const mpz_class& t,
                      const mpz_class& uu, const mpz_class& vv) {
        // (row_i, row_j) <- (s row_i + t row_j, uu row_j - vv row_i)
        for (size_t c = 0; c < cols; ++c) {
            mpz_class ni = s * a[i][c] + t * a[j][c];
            mpz_class nj = uu * a[j][c] - vv * a[i][c];
            a[i][c] = ni;
            a[j][c] = nj;
        }
        for (size_t c = 0; c < rows; ++c) {
            mpz_class ni = s * u[i][c] + t * u[j][c];
            mpz_class nj = uu * u[j][c] - vv * u[i][c];
            u[i][c] = ni;
            u[j][c] = nj;
        }
    };
    auto col_op = [&](size_t i, size_t j, const mpz_class& s, const mpz_class& t,
                      const mpz_class& uu, const mpz_class& vv) {
        for (size_t r = 0; r < rows; ++r) {
            mpz_class ni = s * a[r][i] + t * a[r][j];
            mpz_class nj = uu * a[r][j] - vv * a[r][i];
            a[r][i] = ni;
            a[r][j] = nj;
        }
        for (size_t r = 0; r < cols; ++r) {
            mpz_class ni = s * v[r][i] + t * v[r][j];
            mpz_class nj = uu * v[r][j] - vv * v[r][i];
            v[r][i] = ni;
            v[r][j] = nj;
        }
    };

    size_t s = 0;
    size_t dim = std::min(rows, cols);
    while (s < dim) {
        // find a nonzero pivot in the lower-right block
        size_t pi = s, pj = s;
        bool found = false;
        mpz_class best;
        for (size_t i = s; i < rows; ++i)
            for (size_t j = s; j < cols; ++j)
                if (a[i][j] != 0) {
                    mpz_class av = abs(a[i][j]);
                    if (!found || av < best) {
                        best = av;
                        pi = i;
                        pj = j;
                        found = true;
                    }
                }
        if (!found) break;
        if (pi != s) {
            std::swap(a[pi], a[s]);
            std::swap(u[pi], u[s]);
        }
        if (pj != s) {
            for (size_t r = 0; r < rows; ++r) std::swap(a[r][pj], a[r][s]);
            for (size_t r = 0; r < cols; ++r) std::swap(v[r][pj], v[r][s]);
        }

        // Clear row and column s. Divisible entries are reduced by plain
        // quotients (no pivot change, no reintroduction); otherwise a gcd step
        // strictly shrinks |pivot|, so the loop terminates.
        bool dirty = true;
        while (dirty) {
            dirty = false;
            for (size_t i = s + 1; i < rows; ++i) {
                if (a[i][s] == 0) continue;
                if (a[i][s] % a[s][s] == 0) {
                    mpz_class q = a[i][s] / a[s][s];
                    for (size_t c = 0; c < cols; ++c) a[i][c] -= q * a[s][c];
                    for (size_t c = 0; c < rows; ++c) u[i][c] -= q * u[s][c];
                } else {
                    mpz_class g, x, y;
                    mpz_gcdext(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(), a[s][s].get_mpz_t(),
                               a[i][s].get_mpz_t());
                    row_op(s, i, x, y, a[s][s] / g, a[i][s] / g);
                    dirty = true;
                }
            }
            for (size_t j = s + 1; j < cols; ++j) {
                if (a[s][j] == 0) continue;
                if (a[s][j] % a[s][s] == 0) {
                    mpz_class q = a[s][j] / a[s][s];
                    for (size_t r2 = 0; r2 < rows; ++r2) a[r2][j] -= q * a[r2][s];
                    for (size_t r2 = 0; r2 < cols; ++r2) v[r2][j] -= q * v[r2][s];
                } else {
                    mpz_class g, x, y;
                    mpz_gcdext(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(), a[s][s].get_mpz_t(),
                               a[s][j].get_mpz_t());
                    col_op(s, j, x, y, a[s][s] / g, a[s][j] / g);
                    dirty = true;
                }
            }
            if (!dirty) {
                for (size_t i = s + 1; i < rows; ++i)
                    if (a[i][s] != 0) dirty = true;
                for (size_t j = s + 1; j < cols; ++j)
                    if (a[s][j] != 0) dirty = true;
            }
        }
        // divisibility sweep: fold any non-multiple into the pivot's row
        bool redo = false;
        for (size_t i = s + 1; i < rows && !redo; ++i)
            for (size_t j = s + 1; j < cols && !redo; ++j)
                if (a[i][j] % a[s][s] != 0) {
                    // add row i to row s and restart the pivot cleanup
                    for (size_t c = 0; c < cols; ++c) a[s][c] += a[i][c];
                    for (size_t c = 0; c < rows; ++c) u[s][c] += u[i][c];
                    redo = true;
                }
        if (redo) continue;
        if (a[s][s] < 0) {
            for (size_t c = 0; c < cols; ++c) a[s][c] = -a[s][c];
            for (size_t c = 0; c < rows; ++c) u[s][c] = -u[s][c];
        }
        ++s;
    }
    for (size_t i = 0; i < dim; ++i) diag.push_back(i < s ? a[i][i] : mpz_class(0));
}

ZMat inverse_unimodular(const ZMat& m)
{
    size_t n = m.size();
    std::vector<std::vector<mpq_class>> a(n, std::vector<mpq_class>(2 * n, 0));
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < n; ++j) a[i][j] = m[i][j];
        a[i][n + i] = 1;
    }
    for (size_t c = 0; c < n; ++c) {
        size_t p = c;
        while (p < n && a[p][c] == 0) ++p;
        if (p == n) throw Error(ErrorKind::Internal, "singular matrix in unimodular inverse");
        std::swap(a[p], a[c]);
        mpq_class inv = 1 / a[c][c];
        for (size_t j = 0; j < 2 * n; ++j) a[c][j] *= inv;
        for (size_t i = 0; i < n; ++i) {
            if (i == c || a[i][c] == 0) continue;
            mpq_class f = a[i][c];
            for (size_t j = 0; j < 2 * n; ++j) a[i][j] -= f * a[c][j];
        }
    }
    ZMat r(n, ZVec(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            mpq_class x = a[i][n + j];
            if (x.get_den() != 1)
                throw Error(ErrorKind::Internal, "matrix inverse is not integral");
            r[i][j] = x.get_num();
        }
    return r;
}

void saturate(const ZMat& a, size_t n, ZMat& sat, ZMat& complement)
{
    sat.clear();
    complement.clear();
    if (a.empty()) {
        complement = identity(n);
        return;
    }
    ZVec diag;
    ZMat u, v;
    snf(a, diag, u, v);
    size_t rank = 0;
    for (const auto& d : diag)
        if (d != 0) ++rank;
    ZMat vinv = inverse_unimodular(v);
    // row space of a = span{ d_i * vinv_i }; saturation keeps vinv rows 0..rank-1
    for (size_t i = 0; i < rank; ++i) sat.push_back(vinv[i]);
    for (size_t i = rank; i < n; ++i) complement.push_back(vinv[i]);
    sat = hnf(std::move(sat));
}

} // namespace zmat

void lll_reduce(ZMat& b, ZVec& d)
{
    size_t n = b.size();
    d.assign(n + 1, 0);
    d[0] = 1;
    if (n == 0) return;

    std::vector<ZVec> lam(n + 1, ZVec(n + 1, 0)); // lam[i][j], 1-based, j < i
    auto dot = [&](size_t i, size_t j) {
        mpz_class s = 0;
        for (size_t c = 0; c < b[i - 1].size(); ++c) s += b[i - 1][c] * b[j - 1][c];
        return s;
    };
    for (size_t i = 1; i <= n; ++i) {
        for (size_t j = 1; j <= i; ++j) {
            mpz_class uacc = dot(i, j);
            for (size_t k = 1; k < j; ++k) uacc = (d[k] * uacc - lam[i][k] * lam[j][k]) / d[k - 1];
            if (j < i)
                lam[i][j] = uacc;
            else {
                d[i] = uacc;
                if (d[i] <= 0)
                    throw Error(ErrorKind::Internal, "LLL input rows are linearly dependent");
            }
        }
    }

    auto red = [&](size_t k, size_t l) {
        mpz_class two_lam = 2 * lam[k][l];
        if (abs(two_lam) <= d[l]) return;
        // nearest integer to lam/d
        mpz_class qn;
        mpz_class num = two_lam + d[l];
        mpz_fdiv_q(qn.get_mpz_t(), num.get_mpz_t(), mpz_class(2 * d[l]).get_mpz_t());
        if (qn == 0) return;
        for (size_t c = 0; c < b[k - 1].size(); ++c) b[k - 1][c] -= qn * b[l - 1][c];
        lam[k][l] -= qn * d[l];
        for (size_t i = 1; i < l; ++i) lam[k][i] -= qn * lam[l][i];
    };

    size_t k = 2;
    while (k <= n) {
        red(k, k - 1);
        mpz_class nu = lam[k][k - 1];
        // swap iff 100 (d_k d_{k-2} + nu^2) < 99 d_{k-1}^2
        if (100 * (d[k] * d[k - 2] + nu * nu) < 99 * d[k - 1] * d[k - 1]) {
            std::swap(b[k - 1], b[k - 2]);
            for (size_t j = 1; j + 1 < k; ++j) std::swap(lam[k][j], lam[k - 1][j]);
            mpz_class newd = (d[k] * d[k - 2] + nu * nu) / d[k - 1];
            for (size_t i = k + 1; i <= n; ++i) {
                mpz_class t = lam[i][k - 1];
                lam[i][k - 1] = (nu * t + d[k - 2] * lam[i][k]) / d[k - 1];
                lam[i][k] = (d[k] * t - nu * lam[i][k]) / d[k - 1];
            }
            d[k - 1] = newd;
            if (k > 2) --k;
        } else {
            for (size_t l = k - 1; l-- > 1;) red(k, l);
            ++k;
        }
    }
}

} // namespace anglerank
