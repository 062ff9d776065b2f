#include "anglerank/tate.hpp"

#include <algorithm>
#include <map>

#include "anglerank/errors.hpp"
#include "intmat.hpp"

namespace anglerank {

int VarietySpec::h1_dim() const
{
    int s = 0;
    for (const auto& sl : slots) s += sl.mult;
    return s;
}

namespace {

// distinct-root groups of a spectrum: (root index, first upper slot, real)
struct Group {
    int root;
    int first_slot;
    int mult; // multiplicity of the root in the polynomial
    bool real;
};

std::vector<Group> spectrum_groups(const FrobeniusSpectrum& s)
{
    std::vector<Group> gs;
    for (unsigned i = 0; i < s.g; ++i) {
        int r = s.slot_root[i];
        if (!gs.empty() && gs.back().root == r) continue;
        gs.push_back({r, static_cast<int>(i), s.roots[static_cast<size_t>(r)].multiplicity,
                      s.roots[static_cast<size_t>(r)].real});
    }
    return gs;
}

} // namespace

VarietySpec make_variety(VarietySpec::Kind kind, const FrobeniusSpectrum& a,
                         const FrobeniusSpectrum* e)
{
    if ((kind == VarietySpec::Kind::ProductWithE) != (e != nullptr))
        throw Error(ErrorKind::InvalidArgument, "elliptic factor mismatch for variety kind");

    VarietySpec vs;
    vs.kind = kind;
    int factor = kind == VarietySpec::Kind::SelfProduct ? 2 : 1;
    vs.dim = kind == VarietySpec::Kind::SelfProduct ? 2 * static_cast<int>(a.g)
             : kind == VarietySpec::Kind::ProductWithE ? static_cast<int>(a.g) + 1
                                                       : static_cast<int>(a.g);
    vs.lat_dim = kind == VarietySpec::Kind::ProductWithE ? a.g + 1 : a.g;

    std::vector<Group> ga = spectrum_groups(a);
    for (const Group& g : ga) {
        int gi = static_cast<int>(vs.fold_dim);
        std::vector<mpz_class> basis(vs.lat_dim, 0);
        basis[static_cast<size_t>(g.first_slot)] = 1;
        vs.fold_basis.push_back(std::move(basis));
        ++vs.fold_dim;
        if (g.real) {
            vs.slots.push_back({gi, +1, g.mult * factor});
        } else {
            vs.slots.push_back({gi, +1, g.mult * factor});
            vs.slots.push_back({gi, -1, g.mult * factor});
        }
    }
    if (kind == VarietySpec::Kind::ProductWithE) {
        std::vector<Group> ge = spectrum_groups(*e);
        for (const Group& g : ge) {
            int gi = static_cast<int>(vs.fold_dim);
            std::vector<mpz_class> basis(vs.lat_dim, 0);
            basis[a.g] = 1; // E carries a single upper angle coordinate
            vs.fold_basis.push_back(std::move(basis));
            ++vs.fold_dim;
            if (g.real) {
                vs.slots.push_back({gi, +1, g.mult});
            } else {
                vs.slots.push_back({gi, +1, g.mult});
                vs.slots.push_back({gi, -1, g.mult});
            }
        }
    }
    if (vs.h1_dim() != 2 * vs.dim)
        throw Error(ErrorKind::Internal, "variety slot multiplicities do not sum to 2 dim");
    return vs;
}

int profile_degree(const Profile& c)
{
    int d = 0;
    for (int x : c) d += x;
    return d;
}

mpz_class profile_weight(const VarietySpec& vs, const Profile& c)
{
    mpz_class w = 1;
    for (size_t s = 0; s < c.size(); ++s) {
        mpz_class b;
        mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(vs.slots[s].mult),
                     static_cast<unsigned long>(c[s]));
        w *= b;
    }
    return w;
}

std::vector<mpz_class> profile_fold(const VarietySpec& vs, const Profile& c)
{
    std::vector<mpz_class> v(vs.lat_dim, 0);
    for (size_t s = 0; s < c.size(); ++s) {
        if (c[s] == 0) continue;
        const auto& basis = vs.fold_basis[static_cast<size_t>(vs.slots[s].group)];
        for (size_t j = 0; j < vs.lat_dim; ++j)
            v[j] += basis[j] * vs.slots[s].sign * c[s];
    }
    return v;
}

bool is_tate(const VarietySpec& vs, const Profile& c, const AngleLattice& lat)
{
    return lat.member(profile_fold(vs, c));
}

namespace {

struct Tables {
    std::vector<mpz_class> tate;      // by degree
    std::vector<mpz_class> lefschetz; // by degree
};

// full enumeration over profiles with memoized lattice membership on the
// folded exponent
Tables enumerate_tables(const VarietySpec& vs, const AngleLattice& lat)
{
    size_t ns = vs.slots.size();
    int maxdeg = vs.h1_dim();
    Tables tb;
    tb.tate.assign(static_cast<size_t>(maxdeg) + 1, 0);
    tb.lefschetz.assign(static_cast<size_t>(maxdeg) + 1, 0);

    // mixed-radix strides for profile encoding
    std::vector<uint64_t> stride(ns);
    uint64_t states = 1;
    for (size_t s = 0; s < ns; ++s) {
        stride[s] = states;
        states *= static_cast<uint64_t>(vs.slots[s].mult + 1);
        if (states > (1ull << 33))
            throw Error(ErrorKind::InvalidArgument, "profile space too large to enumerate");
    }

    // membership memo over folded vectors
    std::map<std::vector<int>, bool> memo;
    auto member = [&](const Profile& c) {
        std::vector<int> key(vs.fold_dim, 0);
        for (size_t s = 0; s < ns; ++s)
            key[static_cast<size_t>(vs.slots[s].group)] += vs.slots[s].sign * c[s];
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;
        std::vector<mpz_class> v(vs.lat_dim, 0);
        for (size_t gi = 0; gi < vs.fold_dim; ++gi) {
            if (key[gi] == 0) continue;
            for (size_t j = 0; j < vs.lat_dim; ++j) v[j] += vs.fold_basis[gi][j] * key[gi];
        }
        bool m = lat.member(v);
        memo.emplace(std::move(key), m);
        return m;
    };

    // binomial weights per slot
    std::vector<std::vector<mpz_class>> binom(ns);
    for (size_t s = 0; s < ns; ++s) {
        binom[s].resize(static_cast<size_t>(vs.slots[s].mult) + 1);
        for (int c = 0; c <= vs.slots[s].mult; ++c)
            mpz_bin_uiui(binom[s][static_cast<size_t>(c)].get_mpz_t(),
                         static_cast<unsigned long>(vs.slots[s].mult),
                         static_cast<unsigned long>(c));
    }

    std::vector<std::vector<uint64_t>> tate_profiles(static_cast<size_t>(maxdeg) + 1);

    Profile c(ns, 0);
    while (true) {
        int deg = profile_degree(c);
        if (deg % 2 == 0 && member(c)) {
            mpz_class w = 1;
            for (size_t s = 0; s < ns; ++s) w *= binom[s][static_cast<size_t>(c[s])];
            tb.tate[static_cast<size_t>(deg)] += w;
            uint64_t code = 0;
            for (size_t s = 0; s < ns; ++s) code += stride[s] * static_cast<uint64_t>(c[s]);
            tate_profiles[static_cast<size_t>(deg)].push_back(code);
        }
        size_t pos = 0;
        while (pos < ns && c[pos] == vs.slots[pos].mult) {
            c[pos] = 0;
            ++pos;
        }
        if (pos == ns) break;
        ++c[pos];
    }

    // Lefschetz: iterated sumsets of the degree-2 Tate profiles
    const auto& p2codes = tate_profiles[2];
    std::vector<Profile> p2;
    p2.reserve(p2codes.size());
    for (uint64_t code : p2codes) {
        Profile p(ns, 0);
        uint64_t x = code;
        for (size_t s = 0; s < ns; ++s) {
            p[s] = static_cast<int>(x % static_cast<uint64_t>(vs.slots[s].mult + 1));
            x /= static_cast<uint64_t>(vs.slots[s].mult + 1);
        }
        p2.push_back(std::move(p));
    }

    tb.lefschetz[0] = 1;
    std::vector<uint64_t> current{0};
    std::vector<bool> seen(states, false);
    for (int n = 1; 2 * n <= maxdeg; ++n) {
        std::fill(seen.begin(), seen.end(), false);
        std::vector<uint64_t> next;
        for (uint64_t code : current) {
            Profile base(ns, 0);
            uint64_t x = code;
            for (size_t s = 0; s < ns; ++s) {
                base[s] = static_cast<int>(x % static_cast<uint64_t>(vs.slots[s].mult + 1));
                x /= static_cast<uint64_t>(vs.slots[s].mult + 1);
            }
            for (const Profile& p : p2) {
                uint64_t sum = code;
                bool ok = true;
                for (size_t s = 0; s < ns && ok; ++s) {
                    if (p[s] == 0) continue;
                    if (base[s] + p[s] > vs.slots[s].mult)
                        ok = false;
                    else
                        sum += stride[s] * static_cast<uint64_t>(p[s]);
                }
                if (ok && !seen[sum]) {
                    seen[sum] = true;
                    next.push_back(sum);
                }
            }
        }
        std::sort(next.begin(), next.end());
        mpz_class total = 0;
        for (uint64_t code : next) {
            Profile p(ns, 0);
            uint64_t x = code;
            mpz_class w = 1;
            for (size_t s = 0; s < ns; ++s) {
                p[s] = static_cast<int>(x % static_cast<uint64_t>(vs.slots[s].mult + 1));
                x /= static_cast<uint64_t>(vs.slots[s].mult + 1);
                w *= binom[s][static_cast<size_t>(p[s])];
            }
            total += w;
        }
        tb.lefschetz[static_cast<size_t>(2 * n)] = total;
        current = std::move(next);
    }
    return tb;
}

} // namespace

mpz_class tate_dimension(const VarietySpec& vs, int degree, const AngleLattice& lat)
{
    if (degree < 0 || degree > vs.h1_dim() || degree % 2 != 0)
        throw Error(ErrorKind::InvalidArgument, "degree out of range");
    return enumerate_tables(vs, lat).tate[static_cast<size_t>(degree)];
}

mpz_class lefschetz_dimension(const VarietySpec& vs, int degree, const AngleLattice& lat)
{
    if (degree < 0 || degree > vs.h1_dim() || degree % 2 != 0)
        throw Error(ErrorKind::InvalidArgument, "degree out of range");
    return enumerate_tables(vs, lat).lefschetz[static_cast<size_t>(degree)];
}

const DegreeRow& ExoticReport::at_degree(int deg) const
{
    for (const auto& r : rows)
        if (r.degree == deg) return r;
    throw Error(ErrorKind::InvalidArgument, "degree not present in report");
}

ExoticReport exotic_report(const VarietySpec& vs, const AngleLattice& lat,
                           const CorollaryContext& ctx)
{
    ExoticReport rep;
    rep.kind = vs.kind;
    rep.dim = vs.dim;
    rep.middle_degree = vs.dim;
    rep.lattice_certified = lat.certified();

    Tables tb = enumerate_tables(vs, lat);
    for (int deg = 0; deg <= vs.h1_dim(); deg += 2) {
        DegreeRow row;
        row.degree = deg;
        row.tate = tb.tate[static_cast<size_t>(deg)];
        row.lefschetz = tb.lefschetz[static_cast<size_t>(deg)];
        row.exotic = row.tate - row.lefschetz;
        if (row.exotic < 0)
            throw Error(ErrorKind::Internal, "negative exotic dimension");
        rep.rows.push_back(std::move(row));
    }

    auto exotic_at = [&](int deg) -> const mpz_class& { return rep.at_degree(deg).exotic; };
    auto middle_only = [&]() {
        for (const auto& r : rep.rows)
            if (r.degree != rep.middle_degree && r.exotic != 0) return false;
        return true;
    };
    bool middle_even = rep.middle_degree % 2 == 0;
    const mpz_class middle = middle_even ? exotic_at(rep.middle_degree) : mpz_class(0);

    bool base = ctx.simple_ok && ctx.g % 2 == 1 && ctx.g > 1 &&
                (ctx.angle_rank == static_cast<int>(ctx.g) - 1 ||
                 ctx.angle_rank == static_cast<int>(ctx.g));
    bool rank_gm1 = ctx.angle_rank == static_cast<int>(ctx.g) - 1;
    bool rank_g = ctx.angle_rank == static_cast<int>(ctx.g);

    if (vs.kind == VarietySpec::Kind::SelfProduct && base) {
        rep.checks.push_back({"C1", middle_only(), "exotic classes only in the middle degree (A x A)"});
        rep.checks.push_back({"C2", middle == 0 || middle == 2,
                              "middle exotic dimension in {0, 2} for A x A"});
    }
    if (vs.kind == VarietySpec::Kind::ProductWithE && base) {
        rep.checks.push_back({"C1", middle_only(), "exotic classes only in the middle degree (A x E)"});
        if (ctx.e_class == NewtonClass::Supersingular)
            rep.checks.push_back({"C3", middle == 0 || middle == 4,
                                  "middle exotic dimension in {0, 4} for A x E, E supersingular"});
        if (ctx.e_class == NewtonClass::Ordinary && rank_gm1) {
            bool all_zero = true;
            for (const auto& r : rep.rows)
                if (r.exotic != 0) all_zero = false;
            rep.checks.push_back({"C4", all_zero, "no exotic classes for A x E, E ordinary, angle rank g-1"});
        }
        if (rank_g) {
            if (ctx.e_class == NewtonClass::Supersingular) {
                bool all_zero = true;
                for (const auto& r : rep.rows)
                    if (r.exotic != 0) all_zero = false;
                rep.checks.push_back({"C5", all_zero, "no exotic classes for A x E, E supersingular, angle rank g"});
            } else {
                rep.checks.push_back({"C5", middle_only() && (middle == 0 || middle == 2),
                                      "exotic classes middle-only with dimension in {0, 2} for A x E, angle rank g"});
            }
        }
    }
    if (vs.kind == VarietySpec::Kind::Single && ctx.simple_ok && ctx.g % 2 == 0 && ctx.g > 1 &&
        (rank_gm1 || rank_g)) {
        rep.checks.push_back({"C6", middle_only() && (middle == 0 || middle == 2),
                              "exotic classes middle-only with dimension in {0, 2} for A, even g"});
    }
    return rep;
}

AngleLattice joint_lattice(const FrobeniusSpectrum& a, const FrobeniusSpectrum& e,
                           const DetectionParams& params)
{
    WeilPolynomial fa, fe;
    fa.coeffs = a.poly;
    fa.q = a.q;
    fa.g = a.g;
    fe.coeffs = e.poly;
    fe.q = e.q;
    fe.g = e.g;
    long cap = params.precision_cap;
    AngleSystemProvider provider = [fa, fe, cap](long prec) {
        return make_joint_system(compute_spectrum(fa, prec, std::max(prec, cap)),
                                 compute_spectrum(fe, prec, std::max(prec, cap)));
    };
    return find_relation_lattice(provider, a.g + 1, params);
}

} // namespace anglerank
