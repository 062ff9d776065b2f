#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "anglerank/errors.hpp"
#include "anglerank/report.hpp"

using namespace anglerank;

namespace {

std::vector<mpz_class> parse_coeffs_arg(const std::string& arg)
{
    std::string s = arg;
    std::erase_if(s, [](char c) { return c == '[' || c == ']' || c == ' '; });
    std::vector<mpz_class> out;
    std::string tok;
    std::istringstream is(s);
    while (std::getline(is, tok, ','))
        if (!tok.empty()) out.emplace_back(tok);
    return out;
}

struct CommonOpts {
    long precision_bits = 128;
    long precision_cap = 16384;
    long denom_bound = 0;
    long height_bound = 1 << 20;
    int m_max = 12;
    int threads = 1;
    int degree = -1;
    bool json = false;

    AnalysisConfig config() const
    {
        AnalysisConfig cfg;
        cfg.precision_bits = precision_bits;
        cfg.precision_cap = precision_cap;
        cfg.denom_bound = denom_bound;
        cfg.height_bound = height_bound;
        cfg.m_max = m_max;
        cfg.threads = threads;
        cfg.degree_filter = degree;
        return cfg;
    }
};

void add_common(CLI::App* cmd, CommonOpts& o)
{
    cmd->add_option("--precision-bits", o.precision_bits, "starting working precision")
        ->default_val(128);
    cmd->add_option("--precision-cap", o.precision_cap, "precision-doubling cap")->default_val(16384);
    cmd->add_option("--denom-bound", o.denom_bound,
                    "denominator bound for rational angle values (0 = max(60, 4g^2))");
    cmd->add_option("--height-bound", o.height_bound, "height bound on relation coefficients");
    cmd->add_option("--m-max", o.m_max, "largest base extension tested for absolute simplicity")
        ->default_val(12);
    cmd->add_option("--threads", o.threads, "worker threads for corpus runs")->default_val(1);
    cmd->add_option("--degree", o.degree, "restrict printed tables to one cohomological degree");
    cmd->add_flag("--json", o.json, "machine-readable JSON output");
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"angle ranks and exotic Tate classes of abelian varieties over finite fields"};
    app.require_subcommand(1);

    CommonOpts aopt;
    std::string a_coeffs, a_label = "input";
    long a_q = 0;
    long long a_etrace = 0;
    bool a_has_etrace = false;
    CLI::App* an = app.add_subcommand("analyze", "analyze one Weil polynomial");
    an->add_option("--coeffs", a_coeffs, "coefficients a_0,...,a_2g (ascending)")->required();
    an->add_option("--q", a_q, "prime power q")->required();
    an->add_option("--label", a_label, "record label");
    auto* et = an->add_option("--e-trace", a_etrace, "trace of a supplied elliptic factor");
    add_common(an, aopt);

    CommonOpts copt;
    std::string c_path;
    CLI::App* co = app.add_subcommand("corpus", "run a JSONL corpus");
    co->add_option("path", c_path, "corpus file (one JSON record per line)")->required();
    add_common(co, copt);

    CommonOpts sopt;
    CLI::App* se = app.add_subcommand("selftest", "run the built-in invariant suite");
    add_common(se, sopt);

    CommonOpts iopt;
    std::string i_path, i_out;
    CLI::App* im = app.add_subcommand("import", "normalize a CSV/JSON export into JSONL records");
    im->add_option("path", i_path, "input file")->required();
    im->add_option("--output", i_out, "output JSONL path (default stdout)");
    add_common(im, iopt);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (*an) {
            a_has_etrace = et->count() > 0;
            InputRecord rec;
            rec.label = a_label;
            rec.q = a_q;
            rec.coeffs = parse_coeffs_arg(a_coeffs);
            if (a_has_etrace) rec.e_trace = mpz_class(static_cast<long>(a_etrace));
            ConjectureReport rep = analyze(rec, aopt.config());
            if (aopt.json)
                std::cout << rep.to_json_string(aopt.degree) << "\n";
            else
                std::cout << rep.to_text(aopt.degree);
            return rep.errors.empty() ? 0 : 2;
        }
        if (*co) {
            CorpusResult res = run_corpus(c_path, copt.config());
            if (copt.json) {
                for (const auto& r : res.reports) std::cout << r.to_json_string(copt.degree) << "\n";
                std::cout << res.summary.to_json_string() << "\n";
            } else {
                for (const auto& r : res.reports) std::cout << r.to_text(copt.degree) << "\n";
                std::cout << "records: " << res.summary.records
                          << "  failures: " << res.summary.failures
                          << "  corollary failures: " << res.summary.corollary_failures << "\n";
                std::cout << "angle rank histogram:";
                for (const auto& [k, v] : res.summary.angle_rank_histogram)
                    std::cout << " " << k << ":" << v;
                std::cout << "\n";
                for (const auto& s : res.summary.critical_findings)
                    std::cout << "CRITICAL: " << s << "\n";
            }
            return res.exit_code;
        }
        if (*se) {
            SelftestResult res = selftest(sopt.config());
            for (const auto& item : res.items)
                std::cout << (item.pass ? "[pass] " : "[FAIL] ") << item.name << " - " << item.note
                          << "\n";
            std::cout << (res.pass ? "selftest passed" : "selftest FAILED") << "\n";
            return res.pass ? 0 : 3;
        }
        if (*im) {
            ImportResult res = import_lmfdb(i_path);
            std::ostringstream out;
            for (const auto& r : res.records) out << record_to_jsonl(r) << "\n";
            if (i_out.empty()) {
                std::cout << out.str();
            } else {
                std::ofstream f(i_out);
                f << out.str();
            }
            for (const auto& w : res.warnings) std::cerr << "warning: " << w << "\n";
            for (const auto& e : res.row_errors) std::cerr << e.kind << ": " << e.message << "\n";
            return res.row_errors.empty() ? 0 : 2;
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.kind() == ErrorKind::InvalidArgument ? 1 : 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
