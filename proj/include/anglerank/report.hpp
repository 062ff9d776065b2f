#ifndef ANGLERANK_REPORT_HPP
#define ANGLERANK_REPORT_HPP

#include <gmpxx.h>

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "anglerank/relations.hpp"
#include "anglerank/spectrum.hpp"
#include "anglerank/tate.hpp"
#include "anglerank/weil.hpp"

namespace anglerank {

struct AnalysisConfig {
    long precision_bits = 128;
    long precision_cap = 16384;
    mpz_class height_bound = mpz_class(1) << 20;
    mpz_class denom_bound = 0; // 0: max(60, 4 g^2)
    int m_max = 12;
    int threads = 1;
    int degree_filter = -1; // -1: all degrees

    DetectionParams detection(size_t dim) const;
};

struct InputRecord {
    std::string label;
    mpz_class q;
    std::vector<mpz_class> coeffs;
    std::optional<mpz_class> e_trace;
};

struct StageError {
    std::string stage;
    std::string kind;
    std::string message;
};

struct TheoremApplication {
    std::string theorem;
    bool applies = false;
    std::string reason;
};

struct ConjectureReport {
    InputRecord input;
    bool parsed = false;
    unsigned g = 0;
    mpz_class p;
    unsigned r = 0;
    bool have_newton = false;
    NewtonClass newton_class = NewtonClass::Other;
    bool have_simple = false;
    SimplicityVerdict simple;
    bool have_rank = false;
    int angle_rank_value = -1;
    bool angle_rank_certified = false;
    bool have_lemma = false;
    LemmaCheck lemma;
    bool have_tables = false;
    ExoticReport table_axa;
    ExoticReport table_axe_ss;
    ExoticReport table_axe_ord;
    std::optional<ExoticReport> table_a; // even-g check input, not serialized
    std::vector<CorollaryCheck> corollary_checks;
    std::vector<TheoremApplication> applicability;
    std::vector<StageError> errors;
    bool critical_lemma_failure = false;

    std::string to_json_string(int degree_filter = -1) const;
    std::string to_text(int degree_filter = -1) const;
};

ConjectureReport analyze(const InputRecord& rec, const AnalysisConfig& cfg);

struct CorpusSummary {
    size_t records = 0;
    size_t failures = 0;
    std::map<std::string, size_t> newton_counts;
    std::map<int, size_t> angle_rank_histogram;
    size_t corollary_failures = 0;
    std::vector<std::string> critical_findings;

    std::string to_json_string() const;
};

struct CorpusResult {
    std::vector<ConjectureReport> reports;
    CorpusSummary summary;
    int exit_code = 0;
};

CorpusResult run_corpus(const std::string& path, const AnalysisConfig& cfg);
CorpusResult run_corpus_records(const std::vector<InputRecord>& records, const AnalysisConfig& cfg);

struct SelftestResult {
    struct Item {
        std::string name;
        bool pass = false;
        std::string note;
    };
    std::vector<Item> items;
    bool pass = true;
};

SelftestResult selftest(const AnalysisConfig& cfg);

struct ImportResult {
    std::vector<InputRecord> records;
    std::vector<StageError> row_errors; // kind MalformedRow, message carries the line number
    std::vector<std::string> warnings;
};

ImportResult import_lmfdb(const std::string& path);

std::string record_to_jsonl(const InputRecord& rec);
InputRecord record_from_json_line(const std::string& line);

// default elliptic factors over F_q: supersingular trace 0, ordinary trace 1
WeilPolynomial default_supersingular_e(const mpz_class& q);
WeilPolynomial default_ordinary_e(const mpz_class& q);

// independent Tate test: continued-fraction reconstruction of the folded angle
// sum followed by certify_relation; no lattice membership involved
bool direct_tate_oracle(const VarietySpec& vs, const Profile& c,
                        const AngleSystemProvider& provider, const AngleSystem& sys,
                        const mpz_class& denom_bound, long precision_cap);

} // namespace anglerank

#endif
