#include "anglerank/report.hpp"

#include <atomic>
#include <fstream>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "anglerank/errors.hpp"
#include "intpoly.hpp"

namespace anglerank {

using ordered_json = nlohmann::ordered_json;

DetectionParams AnalysisConfig::detection(size_t dim) const
{
    DetectionParams p;
    p.height_bound = height_bound;
    p.denom_bound = denom_bound != 0
                        ? denom_bound
                        : mpz_class(std::max<long>(60, 4 * static_cast<long>(dim) * static_cast<long>(dim)));
    p.precision_bits = precision_bits;
    p.precision_cap = precision_cap;
    return p;
}

WeilPolynomial default_supersingular_e(const mpz_class& q)
{
    return parse_weil({q, 0, 1}, q);
}

WeilPolynomial default_ordinary_e(const mpz_class& q)
{
    // trace 1 is coprime to p and satisfies 1 < 4q for every prime power q
    return parse_weil({q, -1, 1}, q);
}

namespace {

mpz_class mpz_from_json(const nlohmann::json& v)
{
    if (v.is_number_integer()) return mpz_class(static_cast<long>(v.get<long long>()));
    if (v.is_string()) return mpz_class(v.get<std::string>());
    throw Error(ErrorKind::MalformedRow, "expected an integer");
}

ordered_json mpz_to_json(const mpz_class& v)
{
    if (v.fits_slong_p()) return ordered_json(v.get_si());
    return ordered_json(v.get_str());
}

const char* abs_name(SimplicityVerdict::Abs a)
{
    switch (a) {
        case SimplicityVerdict::Abs::Yes: return "yes";
        case SimplicityVerdict::Abs::HeuristicYes: return "heuristic_yes";
        case SimplicityVerdict::Abs::No: return "no";
    }
    return "no";
}

const char* lemma_verdict_name(LemmaCheck::Verdict v)
{
    switch (v) {
        case LemmaCheck::Verdict::Pass: return "pass";
        case LemmaCheck::Verdict::Fail: return "fail";
        case LemmaCheck::Verdict::NotApplicable: return "not_applicable";
    }
    return "not_applicable";
}

ordered_json table_to_json(const ExoticReport& rep, int degree_filter)
{
    ordered_json rows = ordered_json::array();
    for (const auto& r : rep.rows) {
        if (degree_filter >= 0 && r.degree != degree_filter) continue;
        ordered_json row;
        row["degree"] = r.degree;
        row["tate"] = mpz_to_json(r.tate);
        row["lefschetz"] = mpz_to_json(r.lefschetz);
        row["exotic"] = mpz_to_json(r.exotic);
        rows.push_back(std::move(row));
    }
    return rows;
}

bool is_prime_unsigned(unsigned n)
{
    if (n < 2) return false;
    for (unsigned d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

} // namespace

ConjectureReport analyze(const InputRecord& rec, const AnalysisConfig& cfg)
{
    ConjectureReport rep;
    rep.input = rec;

    WeilPolynomial f;
    try {
        f = parse_weil(rec.coeffs, rec.q);
        rep.parsed = true;
        rep.g = f.g;
        rep.p = f.p;
        rep.r = f.r;
    } catch (const Error& e) {
        rep.errors.push_back({"parse", error_kind_name(e.kind()), e.what()});
        return rep;
    }

    try {
        rep.newton_class = classify_newton(newton_polygon(f), f.g);
        rep.have_newton = true;
    } catch (const Error& e) {
        rep.errors.push_back({"newton", error_kind_name(e.kind()), e.what()});
    }

    FrobeniusSpectrum spec;
    bool have_spec = false;
    try {
        spec = compute_spectrum(f, cfg.precision_bits, cfg.precision_cap);
        have_spec = true;
    } catch (const Error& e) {
        rep.errors.push_back({"spectrum", error_kind_name(e.kind()), e.what()});
    }

    if (have_spec) {
        try {
            rep.simple = simplicity(f, spec, cfg.m_max, cfg.precision_cap);
            rep.have_simple = true;
        } catch (const Error& e) {
            rep.errors.push_back({"simplicity", error_kind_name(e.kind()), e.what()});
        }
    }

    AngleLattice lat;
    bool have_lat = false;
    if (have_spec) {
        try {
            lat = find_relation_lattice(spec, cfg.detection(f.g));
            rep.have_rank = true;
            have_lat = true;
            rep.angle_rank_value = lat.angle_rank;
            rep.angle_rank_certified = lat.certified();
        } catch (const Error& e) {
            rep.errors.push_back({"relations", error_kind_name(e.kind()), e.what()});
        }
    }

    if (have_lat) {
        try {
            rep.lemma = check_lemma_form(lat);
            rep.have_lemma = true;
            if (rep.lemma.verdict == LemmaCheck::Verdict::Fail && rep.have_simple &&
                rep.simple.absolutely_simple != SimplicityVerdict::Abs::No && lat.certified())
                rep.critical_lemma_failure = true;
        } catch (const Error& e) {
            rep.errors.push_back({"lemma", error_kind_name(e.kind()), e.what()});
        }
    }

    if (have_lat) {
        try {
            bool simple_ok =
                rep.have_simple && rep.simple.absolutely_simple != SimplicityVerdict::Abs::No;

            WeilPolynomial e_ss = default_supersingular_e(f.q);
            WeilPolynomial e_ord = default_ordinary_e(f.q);
            if (rec.e_trace) {
                WeilPolynomial e_in = parse_weil({f.q, -*rec.e_trace, 1}, f.q);
                if (*rec.e_trace % f.p == 0)
                    e_ss = e_in;
                else
                    e_ord = e_in;
            }

            CorollaryContext ctx;
            ctx.simple_ok = simple_ok;
            ctx.g = f.g;
            ctx.angle_rank = rep.angle_rank_value;

            VarietySpec axa = make_variety(VarietySpec::Kind::SelfProduct, spec);
            rep.table_axa = exotic_report(axa, lat, ctx);

            FrobeniusSpectrum spec_ss = compute_spectrum(e_ss, cfg.precision_bits, cfg.precision_cap);
            FrobeniusSpectrum spec_ord = compute_spectrum(e_ord, cfg.precision_bits, cfg.precision_cap);
            AngleLattice lat_ss = joint_lattice(spec, spec_ss, cfg.detection(f.g + 1));
            AngleLattice lat_ord = joint_lattice(spec, spec_ord, cfg.detection(f.g + 1));

            CorollaryContext ctx_ss = ctx;
            ctx_ss.e_present = true;
            ctx_ss.e_class = classify_newton(newton_polygon(e_ss), 1);
            VarietySpec vss = make_variety(VarietySpec::Kind::ProductWithE, spec, &spec_ss);
            rep.table_axe_ss = exotic_report(vss, lat_ss, ctx_ss);

            CorollaryContext ctx_ord = ctx;
            ctx_ord.e_present = true;
            ctx_ord.e_class = classify_newton(newton_polygon(e_ord), 1);
            VarietySpec vord = make_variety(VarietySpec::Kind::ProductWithE, spec, &spec_ord);
            rep.table_axe_ord = exotic_report(vord, lat_ord, ctx_ord);

            if (f.g % 2 == 0) {
                VarietySpec va = make_variety(VarietySpec::Kind::Single, spec);
                rep.table_a = exotic_report(va, lat, ctx);
            }
            rep.have_tables = true;

            // merge corollary checks by id (AND over instances)
            std::map<std::string, CorollaryCheck> merged;
            auto take = [&](const std::vector<CorollaryCheck>& cs) {
                for (const auto& c : cs) {
                    auto it = merged.find(c.id);
                    if (it == merged.end())
                        merged.emplace(c.id, c);
                    else
                        it->second.pass = it->second.pass && c.pass;
                }
            };
            take(rep.table_axa.checks);
            take(rep.table_axe_ss.checks);
            take(rep.table_axe_ord.checks);
            if (rep.table_a) take(rep.table_a->checks);
            for (auto& [id, c] : merged) rep.corollary_checks.push_back(c);
        } catch (const Error& e) {
            rep.errors.push_back({"tate", error_kind_name(e.kind()), e.what()});
        }
    }

    // theorem applicability
    if (rep.parsed) {
        bool simple_ok = rep.have_simple && rep.simple.absolutely_simple != SimplicityVerdict::Abs::No;
        bool rank_ok = rep.have_rank && (rep.angle_rank_value == static_cast<int>(rep.g) - 1 ||
                                         rep.angle_rank_value == static_cast<int>(rep.g));
        bool heuristic = (rep.have_simple &&
                          rep.simple.absolutely_simple == SimplicityVerdict::Abs::HeuristicYes) ||
                         (rep.have_rank && !rep.angle_rank_certified);
        std::string cond = heuristic ? "; conditional on heuristic certifications" : "";

        {
            TheoremApplication t;
            t.theorem = "main:general";
            t.applies = simple_ok && rep.g % 2 == 1 && rep.g > 1 && rank_ok;
            if (t.applies)
                t.reason = "simple, g odd > 1, angle rank in {g-1, g}: the numerical Hodge standard "
                           "conjecture holds for AxA and AxE" + cond;
            else if (rep.g % 2 == 0 || rep.g <= 1)
                t.reason = "g = " + std::to_string(rep.g) + " is not an odd integer > 1";
            else if (!simple_ok)
                t.reason = "simplicity not established";
            else
                t.reason = "angle rank " + std::to_string(rep.angle_rank_value) + " not in {g-1, g}";
            rep.applicability.push_back(t);
        }
        {
            TheoremApplication t;
            t.theorem = "main:example";
            bool prime_branch = is_prime_unsigned(rep.g);
            bool ao_branch = rep.have_newton && rep.newton_class == NewtonClass::AlmostOrdinary;
            t.applies = simple_ok && (prime_branch || ao_branch);
            if (t.applies)
                t.reason = std::string("simple and ") +
                           (prime_branch ? "g prime" : "almost ordinary") + cond;
            else if (!simple_ok)
                t.reason = "simplicity not established";
            else
                t.reason = "g neither prime nor the input almost ordinary";
            rep.applicability.push_back(t);
        }
        {
            TheoremApplication t;
            t.theorem = "even_remark";
            t.applies = simple_ok && rep.g % 2 == 0 && rep.g > 1 && rank_ok;
            if (t.applies)
                t.reason = "simple, g even, angle rank in {g-1, g}: holds for A itself" + cond;
            else
                t.reason = "requires simple, even g > 1 and angle rank in {g-1, g}";
            rep.applicability.push_back(t);
        }
        {
            TheoremApplication t;
            t.theorem = "classical";
            bool full_rank = rep.have_rank && rep.angle_rank_value == static_cast<int>(rep.g);
            bool ss_elliptic = rep.g == 1 && rep.have_newton &&
                               rep.newton_class == NewtonClass::Supersingular;
            t.applies = rep.g <= 2 || full_rank || ss_elliptic;
            if (t.applies)
                t.reason = rep.g <= 2 ? "all Tate classes on powers are Lefschetz for g <= 2"
                                      : "angle rank g (or supersingular elliptic): Tate classes on "
                                        "powers are Lefschetz";
            else
                t.reason = "exotic classes possible";
            rep.applicability.push_back(t);
        }
    }
    return rep;
}

std::string ConjectureReport::to_json_string(int degree_filter) const
{
    ordered_json j;
    j["label"] = input.label;
    j["g"] = parsed ? ordered_json(g) : ordered_json(nullptr);
    j["q"] = mpz_to_json(input.q);
    j["p"] = parsed ? mpz_to_json(p) : ordered_json(nullptr);
    j["newton_class"] = have_newton ? ordered_json(newton_class_name(newton_class)) : ordered_json(nullptr);
    if (have_simple) {
        j["simple"] = {{"irreducible", simple.irreducible},
                       {"absolutely_simple", abs_name(simple.absolutely_simple)},
                       {"m_checked", simple.m_checked}};
    } else {
        j["simple"] = nullptr;
    }
    if (have_rank) {
        j["angle_rank"] = {{"value", angle_rank_value}, {"certified", angle_rank_certified}};
    } else {
        j["angle_rank"] = nullptr;
    }
    if (have_lemma) {
        ordered_json l;
        l["verdict"] = lemma_verdict_name(lemma.verdict);
        l["N"] = lemma.verdict == LemmaCheck::Verdict::Pass ? mpz_to_json(lemma.n)
                                                            : ordered_json(nullptr);
        j["lemma"] = std::move(l);
    } else {
        j["lemma"] = nullptr;
    }
    if (have_tables) {
        ordered_json t;
        t["AxA"] = table_to_json(table_axa, degree_filter);
        t["AxE_ss"] = table_to_json(table_axe_ss, degree_filter);
        t["AxE_ord"] = table_to_json(table_axe_ord, degree_filter);
        j["tables"] = std::move(t);
    } else {
        j["tables"] = nullptr;
    }
    ordered_json cc = ordered_json::array();
    for (const auto& c : corollary_checks) cc.push_back({{"id", c.id}, {"pass", c.pass}});
    j["corollary_checks"] = std::move(cc);
    ordered_json ap = ordered_json::array();
    for (const auto& a : applicability)
        ap.push_back({{"theorem", a.theorem}, {"applies", a.applies}, {"reason", a.reason}});
    j["applicability"] = std::move(ap);
    if (!errors.empty()) {
        ordered_json es = ordered_json::array();
        for (const auto& e : errors)
            es.push_back({{"stage", e.stage}, {"kind", e.kind}, {"message", e.message}});
        j["errors"] = std::move(es);
    }
    return j.dump();
}

std::string ConjectureReport::to_text(int degree_filter) const
{
    std::ostringstream os;
    os << "== " << (input.label.empty() ? "(unlabeled)" : input.label) << "  q=" << input.q.get_str();
    if (parsed) os << "  g=" << g << "  p=" << p.get_str();
    os << "\n";
    if (have_newton) os << "newton class: " << newton_class_name(newton_class) << "\n";
    if (have_simple)
        os << "simplicity: irreducible=" << (simple.irreducible ? "yes" : "no")
           << ", absolutely_simple=" << abs_name(simple.absolutely_simple)
           << " (m_checked=" << simple.m_checked << ")\n";
    if (have_rank)
        os << "angle rank: " << angle_rank_value << (angle_rank_certified ? " [certified]" : " [heuristic]")
           << "\n";
    if (have_lemma) {
        os << "relation lemma: " << lemma_verdict_name(lemma.verdict);
        if (lemma.verdict == LemmaCheck::Verdict::Pass) os << " (N=" << lemma.n.get_str() << ")";
        os << "\n";
    }
    if (have_tables) {
        auto dump_table = [&](const char* name, const ExoticReport& t) {
            os << name << " (middle degree " << t.middle_degree << "):\n";
            for (const auto& row : t.rows) {
                if (degree_filter >= 0 && row.degree != degree_filter) continue;
                os << "  deg " << row.degree << ": tate=" << row.tate.get_str()
                   << " lefschetz=" << row.lefschetz.get_str() << " exotic=" << row.exotic.get_str()
                   << "\n";
            }
        };
        dump_table("A x A", table_axa);
        dump_table("A x E (supersingular E)", table_axe_ss);
        dump_table("A x E (ordinary E)", table_axe_ord);
    }
    for (const auto& c : corollary_checks)
        os << "check " << c.id << ": " << (c.pass ? "pass" : "FAIL") << "  (" << c.note << ")\n";
    for (const auto& a : applicability)
        os << "theorem " << a.theorem << ": " << (a.applies ? "applies" : "does not apply") << " - "
           << a.reason << "\n";
    for (const auto& e : errors)
        os << "error at stage " << e.stage << ": " << e.kind << ": " << e.message << "\n";
    if (critical_lemma_failure)
        os << "CRITICAL: certified lattice contradicts the rank-1 relation form on a simple input\n";
    return os.str();
}

InputRecord record_from_json_line(const std::string& line)
{
    nlohmann::json j = nlohmann::json::parse(line);
    InputRecord rec;
    if (!j.contains("label") || !j.contains("q") || !j.contains("coeffs"))
        throw Error(ErrorKind::MalformedRow, "record needs label, q and coeffs");
    rec.label = j["label"].get<std::string>();
    rec.q = mpz_from_json(j["q"]);
    for (const auto& c : j["coeffs"]) rec.coeffs.push_back(mpz_from_json(c));
    if (j.contains("e_trace") && !j["e_trace"].is_null()) rec.e_trace = mpz_from_json(j["e_trace"]);
    return rec;
}

std::string record_to_jsonl(const InputRecord& rec)
{
    ordered_json j;
    j["label"] = rec.label;
    j["q"] = mpz_to_json(rec.q);
    ordered_json cs = ordered_json::array();
    for (const auto& c : rec.coeffs) cs.push_back(mpz_to_json(c));
    j["coeffs"] = std::move(cs);
    if (rec.e_trace) j["e_trace"] = mpz_to_json(*rec.e_trace);
    return j.dump();
}

CorpusResult run_corpus_records(const std::vector<InputRecord>& records, const AnalysisConfig& cfg)
{
    CorpusResult res;
    res.reports.resize(records.size());
    int nthreads = std::max(1, cfg.threads);
    std::atomic<size_t> next{0};
    auto worker = [&]() {
        while (true) {
            size_t i = next.fetch_add(1);
            if (i >= records.size()) break;
            res.reports[i] = analyze(records[i], cfg);
        }
    };
    if (nthreads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    res.summary.records = records.size();
    for (const auto& r : res.reports) {
        if (!r.errors.empty()) ++res.summary.failures;
        if (r.have_newton) ++res.summary.newton_counts[newton_class_name(r.newton_class)];
        if (r.have_rank) ++res.summary.angle_rank_histogram[r.angle_rank_value];
        for (const auto& c : r.corollary_checks)
            if (!c.pass) ++res.summary.corollary_failures;
        if (r.critical_lemma_failure)
            res.summary.critical_findings.push_back(r.input.label + ": lemma form failure on a certified simple input");
    }
    res.exit_code = res.summary.failures > 0 ? 2 : 0;
    return res;
}

CorpusResult run_corpus(const std::string& path, const AnalysisConfig& cfg)
{
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::InvalidArgument, "cannot open corpus file " + path);
    std::vector<InputRecord> records;
    std::vector<std::pair<size_t, std::string>> bad_lines;
    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r\n") == std::string::npos) continue;
        try {
            records.push_back(record_from_json_line(line));
        } catch (const std::exception& e) {
            bad_lines.emplace_back(lineno, e.what());
        }
    }
    CorpusResult res = run_corpus_records(records, cfg);
    for (const auto& [ln, msg] : bad_lines) {
        ++res.summary.failures;
        ConjectureReport r;
        r.input.label = "line " + std::to_string(ln);
        r.errors.push_back({"parse", "MalformedRow", msg});
        res.reports.push_back(std::move(r));
    }
    res.summary.records = records.size() + bad_lines.size();
    res.exit_code = res.summary.failures > 0 ? 2 : 0;
    return res;
}

std::string CorpusSummary::to_json_string() const
{
    ordered_json j;
    j["records"] = records;
    j["failures"] = failures;
    ordered_json nc;
    for (const auto& [k, v] : newton_counts) nc[k] = v;
    j["newton_classes"] = std::move(nc);
    ordered_json hist;
    for (const auto& [k, v] : angle_rank_histogram) hist[std::to_string(k)] = v;
    j["angle_rank_histogram"] = std::move(hist);
    j["corollary_failures"] = corollary_failures;
    ordered_json cf = ordered_json::array();
    for (const auto& s : critical_findings) cf.push_back(s);
    j["critical_findings"] = std::move(cf);
    return j.dump();
}

bool direct_tate_oracle(const VarietySpec& vs, const Profile& c,
                        const AngleSystemProvider& provider, const AngleSystem& sys,
                        const mpz_class& denom_bound, long precision_cap)
{
    std::vector<mpz_class> v = profile_fold(vs, c);
    mpfr_prec_t wp = static_cast<mpfr_prec_t>(sys.precision_bits + 64);
    RBall val(wp);
    for (size_t i = 0; i < v.size(); ++i)
        if (v[i] != 0) val = val.add(sys.t[i].mul_q(mpq_class(v[i])));
    mpq_class claimed;
    if (!reconstruct_rational(val, denom_bound, claimed)) return false;
    RelationCertificate cert = certify_relation(provider, v, claimed, sys.precision_bits, precision_cap);
    return cert.status != CertStatus::Refuted;
}

namespace {

// ---- selftest battery ----

struct Battery {
    SelftestResult& out;

    void add(const std::string& name, bool pass, const std::string& note)
    {
        out.items.push_back({name, pass, note});
        if (!pass) out.pass = false;
    }

    void run_item(const std::string& name, const std::function<std::pair<bool, std::string>()>& fn)
    {
        try {
            auto [ok, note] = fn();
            add(name, ok, note);
        } catch (const std::exception& e) {
            add(name, false, std::string("exception: ") + e.what());
        }
    }
};

std::vector<InputRecord> starter_records()
{
    return {
        {"1.2.ab", 2, {2, -1, 1}, std::nullopt},
        {"1.2.b", 2, {2, 1, 1}, std::nullopt},
        {"1.2.a", 2, {2, 0, 1}, std::nullopt},
    };
}

} // namespace

SelftestResult selftest(const AnalysisConfig& cfg)
{
    SelftestResult res;
    Battery b{res};

    b.run_item("starter angle ranks certified", [&] {
        int expected[3] = {1, 1, 0};
        auto recs = starter_records();
        for (size_t i = 0; i < recs.size(); ++i) {
            WeilPolynomial f = parse_weil(recs[i].coeffs, recs[i].q);
            FrobeniusSpectrum s = compute_spectrum(f, cfg.precision_bits, cfg.precision_cap);
            AngleLattice lat = find_relation_lattice(s, cfg.detection(f.g));
            if (lat.angle_rank != expected[i])
                return std::make_pair(false, recs[i].label + ": angle rank " +
                                                 std::to_string(lat.angle_rank) + " != " +
                                                 std::to_string(expected[i]));
            if (!lat.certified())
                return std::make_pair(false, recs[i].label + ": lattice not certified (bounds too tight?)");
        }
        return std::make_pair(true, std::string("ranks 1, 1, 0 all certified"));
    });

    b.run_item("supersingular ExE has no exotic classes", [&] {
        WeilPolynomial f = default_supersingular_e(2);
        FrobeniusSpectrum s = compute_spectrum(f, cfg.precision_bits, cfg.precision_cap);
        AngleLattice lat = find_relation_lattice(s, cfg.detection(1));
        VarietySpec vs = make_variety(VarietySpec::Kind::SelfProduct, s);
        CorollaryContext ctx;
        ctx.g = 1;
        ExoticReport rep = exotic_report(vs, lat, ctx);
        for (const auto& row : rep.rows)
            if (row.exotic != 0)
                return std::make_pair(false, "exotic dimension " + row.exotic.get_str() + " at degree " +
                                                 std::to_string(row.degree));
        if (rep.at_degree(2).tate != 6)
            return std::make_pair(false, "degree-2 Tate dimension " + rep.at_degree(2).tate.get_str() + " != 6");
        return std::make_pair(true, std::string("all exotic dimensions vanish; tate(2) = 6"));
    });

    b.run_item("duality and monotonicity on ExE", [&] {
        for (const auto& f : {default_supersingular_e(2), default_ordinary_e(2)}) {
            FrobeniusSpectrum s = compute_spectrum(f, cfg.precision_bits, cfg.precision_cap);
            AngleLattice lat = find_relation_lattice(s, cfg.detection(1));
            VarietySpec vs = make_variety(VarietySpec::Kind::SelfProduct, s);
            CorollaryContext ctx;
            ctx.g = 1;
            ExoticReport rep = exotic_report(vs, lat, ctx);
            int top = 2 * rep.dim;
            for (const auto& row : rep.rows) {
                const auto& dual = rep.at_degree(top - row.degree);
                if (row.tate != dual.tate || row.lefschetz != dual.lefschetz)
                    return std::make_pair(false, "duality failure at degree " + std::to_string(row.degree));
                if (row.lefschetz > row.tate || row.exotic < 0)
                    return std::make_pair(false, "monotonicity failure at degree " + std::to_string(row.degree));
            }
        }
        return std::make_pair(true, std::string("tate/lefschetz tables dual and monotone"));
    });

    b.run_item("base extension invariance of the angle rank", [&] {
        for (const auto& rec : starter_records()) {
            WeilPolynomial f = parse_weil(rec.coeffs, rec.q);
            FrobeniusSpectrum s = compute_spectrum(f, cfg.precision_bits, cfg.precision_cap);
            AngleLattice lat = find_relation_lattice(s, cfg.detection(f.g));
            for (unsigned m : {2u, 3u}) {
                WeilPolynomial fm = base_extend(f, m);
                FrobeniusSpectrum sm = compute_spectrum(fm, cfg.precision_bits, cfg.precision_cap);
                AngleLattice latm = find_relation_lattice(sm, cfg.detection(fm.g));
                if (latm.angle_rank != lat.angle_rank)
                    return std::make_pair(false, rec.label + " base extension m=" + std::to_string(m) +
                                                     " changed the angle rank");
            }
        }
        return std::make_pair(true, std::string("angle rank stable under m in {2, 3}"));
    });

    b.run_item("oracle equivalence at g <= 2", [&] {
        std::vector<std::vector<mpz_class>> polys = {{2, -1, 1}, {2, 0, 1}};
        {
            IntPoly pa = {2, -1, 1}, pb = {2, 2, 1};
            polys.push_back(poly::mul(pa, pb));
        }
        size_t checked = 0;
        for (const auto& coeffs : polys) {
            WeilPolynomial f = parse_weil(coeffs, 2);
            FrobeniusSpectrum s = compute_spectrum(f, cfg.precision_bits, cfg.precision_cap);
            AngleLattice lat = find_relation_lattice(s, cfg.detection(f.g));
            VarietySpec vs = make_variety(VarietySpec::Kind::SelfProduct, s);
            WeilPolynomial fc = f;
            long cap = cfg.precision_cap;
            AngleSystemProvider provider = [fc, cap](long prec) {
                return make_angle_system(compute_spectrum(fc, prec, std::max(prec, cap)));
            };
            AngleSystem sys = provider(s.precision_bits);
            mpz_class dmax = cfg.detection(f.g).denom_bound;
            Profile c(vs.slots.size(), 0);
            while (true) {
                if (profile_degree(c) % 2 == 0) {
                    bool via_lattice = is_tate(vs, c, lat);
                    bool via_oracle =
                        direct_tate_oracle(vs, c, provider, sys, dmax, cfg.precision_cap);
                    if (via_lattice != via_oracle)
                        return std::make_pair(false, "oracle disagreement on " + poly::to_string(coeffs));
                    ++checked;
                }
                size_t pos = 0;
                while (pos < vs.slots.size() && c[pos] == vs.slots[pos].mult) {
                    c[pos] = 0;
                    ++pos;
                }
                if (pos == vs.slots.size()) break;
                ++c[pos];
            }
        }
        return std::make_pair(true, "agreement on " + std::to_string(checked) + " profiles");
    });

    b.run_item("relation lemma form on built-ins", [&] {
        // corank-1 cases: the supersingular elliptic curve (rank 0 = g-1) and
        // an irreducible almost-ordinary sextic with angle rank 2
        struct Case {
            std::vector<mpz_class> coeffs;
            long q;
            mpz_class n;
        };
        std::vector<Case> cases = {{{2, 0, 1}, 2, 2}, {{8, -8, 2, 0, 1, -2, 1}, 2, 2}};
        for (const auto& c : cases) {
            WeilPolynomial f = parse_weil(c.coeffs, c.q);
            FrobeniusSpectrum s = compute_spectrum(f, cfg.precision_bits, cfg.precision_cap);
            AngleLattice lat = find_relation_lattice(s, cfg.detection(f.g));
            LemmaCheck lc = check_lemma_form(lat);
            if (lc.verdict != LemmaCheck::Verdict::Pass || lc.n != c.n)
                return std::make_pair(false, poly::to_string(c.coeffs) + ": expected Pass(N=" +
                                                 c.n.get_str() + ")");
        }
        return std::make_pair(true, std::string("generators have the (1,...,1)-power form"));
    });

    b.run_item("product polygon additivity", [&] {
        IntPoly a = {2, -1, 1}, bq = {2, 1, 1}, cq = {2, 0, 1};
        WeilPolynomial fa = parse_weil(a, 2), fb = parse_weil(bq, 2), fc = parse_weil(cq, 2);
        WeilPolynomial prod = parse_weil(poly::mul(poly::mul(a, bq), cq), 2);
        NewtonPolygon np = newton_polygon(prod);
        std::map<mpq_class, int> want;
        for (const auto& f : {fa, fb, fc})
            for (const auto& [s, m] : newton_polygon(f).slopes) want[s] += m;
        std::map<mpq_class, int> got;
        for (const auto& [s, m] : np.slopes) got[s] += m;
        return std::make_pair(want == got, std::string("slope multisets match"));
    });

    return res;
}

namespace {

std::vector<std::string> split_top_level(const std::string& line)
{
    std::vector<std::string> out;
    std::string cur;
    int depth = 0;
    bool quoted = false;
    for (char ch : line) {
        if (ch == '"') quoted = !quoted;
        if (!quoted) {
            if (ch == '[' || ch == '(' || ch == '{') ++depth;
            if (ch == ']' || ch == ')' || ch == '}') --depth;
            if (ch == ',' && depth == 0) {
                out.push_back(cur);
                cur.clear();
                continue;
            }
        }
        cur.push_back(ch);
    }
    out.push_back(cur);
    return out;
}

std::string trim(const std::string& s)
{
    size_t a = s.find_first_not_of(" \t\r\n\"");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r\n\"");
    return s.substr(a, b - a + 1);
}

std::vector<mpz_class> parse_coeff_list(const std::string& field)
{
    std::string inner = trim(field);
    if (!inner.empty() && inner.front() == '[') inner = inner.substr(1);
    if (!inner.empty() && inner.back() == ']') inner.pop_back();
    std::vector<mpz_class> out;
    std::string tok;
    std::istringstream is(inner);
    while (std::getline(is, tok, ',')) {
        tok = trim(tok);
        if (tok.empty()) throw Error(ErrorKind::MalformedRow, "empty coefficient");
        out.emplace_back(tok);
    }
    if (out.empty()) throw Error(ErrorKind::MalformedRow, "no coefficients");
    return out;
}

} // namespace

ImportResult import_lmfdb(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::InvalidArgument, "cannot open input file " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    std::string body = buf.str();

    ImportResult res;
    std::map<std::string, size_t> seen;

    auto push_record = [&](InputRecord rec, size_t lineno) {
        try {
            parse_weil(rec.coeffs, rec.q);
        } catch (const Error& e) {
            res.row_errors.push_back({"import", "MalformedRow",
                                      "line " + std::to_string(lineno) + ": " + e.what()});
            return;
        }
        auto it = seen.find(rec.label);
        if (it != seen.end())
            res.warnings.push_back("duplicate label " + rec.label + " at line " +
                                   std::to_string(lineno) + " (both kept)");
        seen[rec.label] = lineno;
        res.records.push_back(std::move(rec));
    };

    size_t first = body.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && body[first] == '[') {
        nlohmann::json arr = nlohmann::json::parse(body);
        size_t idx = 0;
        for (const auto& j : arr) {
            ++idx;
            try {
                InputRecord rec;
                rec.label = j.at("label").get<std::string>();
                rec.q = mpz_from_json(j.at("q"));
                for (const auto& c : j.at("coeffs")) rec.coeffs.push_back(mpz_from_json(c));
                if (j.contains("e_trace") && !j["e_trace"].is_null())
                    rec.e_trace = mpz_from_json(j["e_trace"]);
                push_record(std::move(rec), idx);
            } catch (const std::exception& e) {
                res.row_errors.push_back({"import", "MalformedRow",
                                          "entry " + std::to_string(idx) + ": " + e.what()});
            }
        }
        return res;
    }

    std::istringstream lines(body);
    std::string line;
    size_t lineno = 0;
    while (std::getline(lines, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r\n") == std::string::npos) continue;
        std::string probe = trim(line);
        if (probe.front() == '{') {
            try {
                push_record(record_from_json_line(line), lineno);
            } catch (const std::exception& e) {
                res.row_errors.push_back({"import", "MalformedRow",
                                          "line " + std::to_string(lineno) + ": " + e.what()});
            }
            continue;
        }
        if (lineno == 1 && probe.find("label") != std::string::npos) continue; // header
        try {
            auto fields = split_top_level(line);
            if (fields.size() < 3)
                throw Error(ErrorKind::MalformedRow, "expected label, q, coeffs");
            InputRecord rec;
            rec.label = trim(fields[0]);
            rec.q = mpz_class(trim(fields[1]));
            rec.coeffs = parse_coeff_list(fields[2]);
            if (fields.size() >= 4) {
                std::string et = trim(fields[3]);
                if (!et.empty()) rec.e_trace = mpz_class(et);
            }
            push_record(std::move(rec), lineno);
        } catch (const std::exception& e) {
            res.row_errors.push_back({"import", "MalformedRow",
                                      "line " + std::to_string(lineno) + ": " + e.what()});
        }
    }
    return res;
}

} // namespace anglerank
