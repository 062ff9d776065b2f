#include <doctest.h>

#include <cstdio>
#include <fstream>

#include <json.hpp>

#include "anglerank/errors.hpp"
#include "anglerank/report.hpp"
#include "corpus_gen.hpp"

using namespace anglerank;

TEST_CASE("analyze the supersingular elliptic curve over F_2")
{
    InputRecord rec{"1.2.a", 2, {2, 0, 1}, std::nullopt};
    AnalysisConfig cfg;
    ConjectureReport rep = analyze(rec, cfg);
    CHECK(rep.errors.empty());
    CHECK(rep.g == 1);
    CHECK(rep.newton_class == NewtonClass::Supersingular);
    CHECK(rep.angle_rank_value == 0);
    CHECK(rep.angle_rank_certified);
    bool general_applies = true, classical = false;
    for (const auto& a : rep.applicability) {
        if (a.theorem == "main:general") general_applies = a.applies;
        if (a.theorem == "classical") classical = a.applies;
    }
    CHECK_FALSE(general_applies);
    CHECK(classical);

    // byte-identical reruns
    ConjectureReport rep2 = analyze(rec, cfg);
    CHECK(rep.to_json_string() == rep2.to_json_string());

    // schema roundtrip: serialize -> parse -> serialize is stable
    std::string s = rep.to_json_string();
    nlohmann::ordered_json parsed = nlohmann::ordered_json::parse(s);
    CHECK(parsed.dump() == s);
    CHECK(parsed["angle_rank"]["value"] == 0);
    CHECK(parsed["tables"]["AxA"].size() == 3);
}

TEST_CASE("analyze a lemma sextic end to end")
{
    auto sextics = testgen::lemma_sextics();
    InputRecord rec{sextics[0].first, sextics[0].second.q, sextics[0].second.coeffs, std::nullopt};
    AnalysisConfig cfg;
    ConjectureReport rep = analyze(rec, cfg);
    CHECK(rep.errors.empty());
    CHECK(rep.newton_class == NewtonClass::AlmostOrdinary);
    CHECK(rep.simple.irreducible);
    CHECK(rep.simple.absolutely_simple == SimplicityVerdict::Abs::HeuristicYes);
    CHECK(rep.angle_rank_value == 2);
    CHECK(rep.angle_rank_certified);
    CHECK(rep.lemma.verdict == LemmaCheck::Verdict::Pass);
    for (const auto& c : rep.corollary_checks) CHECK(c.pass);
    bool general = false, example = false;
    for (const auto& a : rep.applicability) {
        if (a.theorem == "main:general") general = a.applies;
        if (a.theorem == "main:example") example = a.applies;
    }
    CHECK(general);
    CHECK(example);
    CHECK_FALSE(rep.critical_lemma_failure);
}

TEST_CASE("even g with full angle rank triggers the A-itself remark")
{
    // irreducible octic over F_2 with certified angle rank 4
    InputRecord rec{"4.2.ac_ab_d_ab", 2, {16, -16, -4, 6, -1, 3, -1, -2, 1}, std::nullopt};
    AnalysisConfig cfg;
    ConjectureReport rep = analyze(rec, cfg);
    CHECK(rep.errors.empty());
    CHECK(rep.g == 4);
    CHECK(rep.simple.irreducible);
    CHECK(rep.angle_rank_value == 4);
    bool even_remark = false, general = false;
    for (const auto& a : rep.applicability) {
        if (a.theorem == "even_remark") even_remark = a.applies;
        if (a.theorem == "main:general") general = a.applies;
    }
    CHECK(even_remark);
    CHECK_FALSE(general); // g even
    // rank g: no exotic classes anywhere on A x A
    for (const auto& row : rep.table_axa.rows) CHECK(row.exotic == 0);
}

TEST_CASE("supplied elliptic trace replaces the matching default")
{
    // e_trace 0 is supersingular over F_2; the ordinary default remains
    InputRecord rec{"x", 2, {2, -1, 1}, mpz_class(0)};
    AnalysisConfig cfg;
    ConjectureReport rep = analyze(rec, cfg);
    CHECK(rep.errors.empty());
    CHECK(rep.have_tables);
}

TEST_CASE("partial reports on failing stages")
{
    // functional equation violation: parse stage fails, later fields null
    InputRecord rec{"bad", 2, {3, -1, 1}, std::nullopt};
    AnalysisConfig cfg;
    ConjectureReport rep = analyze(rec, cfg);
    REQUIRE(!rep.errors.empty());
    CHECK(rep.errors[0].stage == "parse");
    CHECK(rep.errors[0].kind == "FunctionalEquationViolation");
    std::string j = rep.to_json_string();
    auto parsed = nlohmann::json::parse(j);
    CHECK(parsed["g"].is_null());
    CHECK(parsed["errors"].size() == 1);

    // root modulus violation: spectrum stage fails, newton class still present
    InputRecord rec2{"offcircle", 2, {2, -5, 1}, std::nullopt};
    ConjectureReport rep2 = analyze(rec2, cfg);
    REQUIRE(!rep2.errors.empty());
    CHECK(rep2.errors[0].stage == "spectrum");
    CHECK(rep2.errors[0].kind == "RootModulusViolation");
    CHECK(rep2.have_newton);
}

TEST_CASE("corpus run over the starter corpus")
{
    std::vector<InputRecord> recs = {
        {"1.2.ab", 2, {2, -1, 1}, std::nullopt},
        {"1.2.b", 2, {2, 1, 1}, std::nullopt},
        {"1.2.a", 2, {2, 0, 1}, std::nullopt},
    };
    AnalysisConfig cfg;
    CorpusResult res = run_corpus_records(recs, cfg);
    CHECK(res.exit_code == 0);
    CHECK(res.summary.records == 3);
    CHECK(res.summary.failures == 0);
    REQUIRE(res.summary.angle_rank_histogram.count(0) == 1);
    REQUIRE(res.summary.angle_rank_histogram.count(1) == 1);
    CHECK(res.summary.angle_rank_histogram.at(0) == 1);
    CHECK(res.summary.angle_rank_histogram.at(1) == 2);

    // multithreaded run produces the same reports in the same order
    AnalysisConfig cfg2 = cfg;
    cfg2.threads = 2;
    CorpusResult res2 = run_corpus_records(recs, cfg2);
    REQUIRE(res2.reports.size() == res.reports.size());
    for (size_t i = 0; i < res.reports.size(); ++i)
        CHECK(res.reports[i].to_json_string() == res2.reports[i].to_json_string());
    CHECK(res.summary.to_json_string() == res2.summary.to_json_string());
}

TEST_CASE("corpus file handling")
{
    const char* empty_path = "test_empty_corpus.jsonl";
    {
        std::ofstream f(empty_path);
    }
    AnalysisConfig cfg;
    CorpusResult res = run_corpus(empty_path, cfg);
    CHECK(res.exit_code == 0);
    CHECK(res.summary.records == 0);
    std::remove(empty_path);

    const char* bad_path = "test_bad_corpus.jsonl";
    {
        std::ofstream f(bad_path);
        f << R"({"label":"ok","q":2,"coeffs":[2,0,1]})" << "\n";
        f << "this is not json\n";
    }
    CorpusResult res2 = run_corpus(bad_path, cfg);
    CHECK(res2.exit_code == 2);
    CHECK(res2.summary.failures == 1);
    CHECK(res2.summary.records == 2);
    std::remove(bad_path);
}

TEST_CASE("record serialization roundtrip")
{
    InputRecord rec{"1.2.ab", 2, {2, -1, 1}, std::nullopt};
    InputRecord back = record_from_json_line(record_to_jsonl(rec));
    CHECK(back.label == rec.label);
    CHECK(back.q == rec.q);
    CHECK(back.coeffs == rec.coeffs);
    CHECK_FALSE(back.e_trace.has_value());
    CHECK_NOTHROW(parse_weil(back.coeffs, back.q));

    InputRecord rec2{"with_e", 3, {3, -1, 1}, mpz_class(1)};
    InputRecord back2 = record_from_json_line(record_to_jsonl(rec2));
    REQUIRE(back2.e_trace.has_value());
    CHECK(*back2.e_trace == 1);
}

TEST_CASE("import maps CSV and JSON rows")
{
    const char* path = "test_import.csv";
    {
        std::ofstream f(path);
        f << "label, q, coeffs\n";
        f << "1.2.ac, 2, [2,-2,1]\n";
        f << "1.2.ac, 2, [2,-2,1]\n";       // duplicate: kept, warned
        f << "odd, 2, [2,-1]\n";            // odd degree: rejected
        f << "1.2.a, 2, [2,0,1]\n";
    }
    ImportResult res = import_lmfdb(path);
    std::remove(path);
    REQUIRE(res.records.size() == 3);
    CHECK(res.records[0].label == "1.2.ac");
    CHECK(res.records[0].q == 2);
    CHECK(res.records[0].coeffs == std::vector<mpz_class>{2, -2, 1});
    CHECK(res.row_errors.size() == 1);
    CHECK(res.row_errors[0].message.find("line 4") != std::string::npos);
    CHECK(res.warnings.size() == 1);

    const char* jpath = "test_import.json";
    {
        std::ofstream f(jpath);
        f << R"([{"label":"1.2.b","q":2,"coeffs":[2,1,1]},{"label":"broken","q":2,"coeffs":[1,1]}])";
    }
    ImportResult jres = import_lmfdb(jpath);
    std::remove(jpath);
    CHECK(jres.records.size() == 1);
    CHECK(jres.row_errors.size() == 1);
}

TEST_CASE("selftest passes with defaults and flags misconfiguration")
{
    AnalysisConfig cfg;
    SelftestResult ok = selftest(cfg);
    for (const auto& item : ok.items) {
        INFO(item.name, ": ", item.note);
        CHECK(item.pass);
    }
    CHECK(ok.pass);

    AnalysisConfig crippled;
    crippled.denom_bound = 1; // the supersingular value 1/2 needs denominator 2
    SelftestResult flagged = selftest(crippled);
    CHECK_FALSE(flagged.pass);

    AnalysisConfig lowprec;
    lowprec.precision_bits = 8;
    lowprec.precision_cap = 8;
    SelftestResult failed = selftest(lowprec);
    CHECK_FALSE(failed.pass);
}

TEST_CASE("applicability is a pure function of its inputs")
{
    InputRecord rec{"1.2.ab", 2, {2, -1, 1}, std::nullopt};
    AnalysisConfig cfg;
    ConjectureReport a = analyze(rec, cfg);
    ConjectureReport b = analyze(rec, cfg);
    REQUIRE(a.applicability.size() == b.applicability.size());
    for (size_t i = 0; i < a.applicability.size(); ++i) {
        CHECK(a.applicability[i].applies == b.applicability[i].applies);
        CHECK(a.applicability[i].reason == b.applicability[i].reason);
    }
}
