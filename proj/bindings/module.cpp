#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>

#include "anglerank/errors.hpp"
#include "anglerank/report.hpp"

namespace py = pybind11;
using namespace anglerank;

namespace {

mpz_class to_mpz(const py::handle& o)
{
    return mpz_class(py::str(o).cast<std::string>());
}

py::object to_pyint(const mpz_class& v)
{
    return py::module_::import("builtins").attr("int")(v.get_str());
}

std::vector<mpz_class> to_mpz_vec(const py::sequence& seq)
{
    std::vector<mpz_class> out;
    for (const auto& o : seq) out.push_back(to_mpz(o));
    return out;
}

py::list from_mpz_vec(const std::vector<mpz_class>& v)
{
    py::list out;
    for (const auto& x : v) out.append(to_pyint(x));
    return out;
}

AnalysisConfig config_from_kwargs(long precision_bits, long precision_cap, long denom_bound,
                                  long height_bound, int m_max)
{
    AnalysisConfig cfg;
    cfg.precision_bits = precision_bits;
    cfg.precision_cap = precision_cap;
    cfg.denom_bound = denom_bound;
    cfg.height_bound = height_bound;
    cfg.m_max = m_max;
    return cfg;
}

} // namespace

PYBIND11_MODULE(_core, m)
{
    m.doc() = "angle ranks and exotic Tate classes of abelian varieties over finite fields";

    py::register_exception<Error>(m, "AngleRankError");

    py::class_<WeilPolynomial>(m, "WeilPolynomial")
        .def_property_readonly("g", [](const WeilPolynomial& f) { return f.g; })
        .def_property_readonly("r", [](const WeilPolynomial& f) { return f.r; })
        .def_property_readonly("q", [](const WeilPolynomial& f) { return to_pyint(f.q); })
        .def_property_readonly("p", [](const WeilPolynomial& f) { return to_pyint(f.p); })
        .def_property_readonly("coeffs", [](const WeilPolynomial& f) { return from_mpz_vec(f.coeffs); })
        .def("__repr__", [](const WeilPolynomial& f) {
            return "<WeilPolynomial g=" + std::to_string(f.g) + " q=" + f.q.get_str() + ">";
        });

    py::class_<FrobeniusSpectrum>(m, "FrobeniusSpectrum")
        .def_property_readonly("g", [](const FrobeniusSpectrum& s) { return s.g; })
        .def_property_readonly("precision_bits", [](const FrobeniusSpectrum& s) { return s.precision_bits; })
        .def("roots", [](const FrobeniusSpectrum& s) {
            py::list out;
            for (const auto& r : s.roots) {
                py::dict d;
                d["re"] = mpfr_get_d(r.disk.re.raw(), MPFR_RNDN);
                d["im"] = mpfr_get_d(r.disk.im.raw(), MPFR_RNDN);
                d["radius"] = mpfr_get_d(r.disk.rad.raw(), MPFR_RNDU);
                d["multiplicity"] = r.multiplicity;
                d["real"] = r.real;
                out.append(std::move(d));
            }
            return out;
        })
        .def("angles", [](const FrobeniusSpectrum& s) {
            py::list out;
            for (const auto& t : angles(s).t) out.append(mpfr_get_d(t.mid.raw(), MPFR_RNDN));
            return out;
        });

    py::class_<AngleLattice>(m, "AngleLattice")
        .def_property_readonly("angle_rank", [](const AngleLattice& l) { return l.angle_rank; })
        .def_property_readonly("certified", [](const AngleLattice& l) { return l.certified(); })
        .def_property_readonly("stable", [](const AngleLattice& l) { return l.stable; })
        .def_property_readonly("basis_exact", [](const AngleLattice& l) {
            py::list out;
            for (const auto& [e, e0] : l.basis_exact) {
                py::dict d;
                d["e"] = from_mpz_vec(e);
                d["e0"] = to_pyint(e0);
                out.append(std::move(d));
            }
            return out;
        })
        .def_property_readonly("basis_saturated", [](const AngleLattice& l) {
            py::list out;
            for (const auto& sv : l.basis_saturated) {
                py::dict d;
                d["e"] = from_mpz_vec(sv.e);
                if (sv.cert.claimed_known) {
                    d["value_num"] = to_pyint(sv.cert.claimed.get_num());
                    d["value_den"] = to_pyint(sv.cert.claimed.get_den());
                } else {
                    d["value_num"] = py::none();
                    d["value_den"] = py::none();
                }
                d["status"] = cert_status_name(sv.cert.status);
                out.append(std::move(d));
            }
            return out;
        })
        .def("member", [](const AngleLattice& l, const py::sequence& v) {
            return l.member(to_mpz_vec(v));
        });

    m.def(
        "parse_weil",
        [](const py::sequence& coeffs, const py::handle& q) {
            return parse_weil(to_mpz_vec(coeffs), to_mpz(q));
        },
        py::arg("coeffs"), py::arg("q"));

    m.def(
        "newton_polygon",
        [](const WeilPolynomial& f) {
            py::list out;
            for (const auto& [s, mult] : newton_polygon(f).slopes)
                out.append(py::make_tuple(to_pyint(s.get_num()), to_pyint(s.get_den()), mult));
            return out;
        },
        py::arg("f"), "list of (slope numerator, slope denominator, multiplicity)");

    m.def(
        "newton_class",
        [](const WeilPolynomial& f) {
            return std::string(newton_class_name(classify_newton(newton_polygon(f), f.g)));
        },
        py::arg("f"));

    m.def(
        "base_extend", [](const WeilPolynomial& f, unsigned mdeg) { return base_extend(f, mdeg); },
        py::arg("f"), py::arg("m"));

    m.def(
        "compute_spectrum",
        [](const WeilPolynomial& f, long precision_bits, long precision_cap) {
            return compute_spectrum(f, precision_bits, precision_cap);
        },
        py::arg("f"), py::arg("precision_bits") = 128, py::arg("precision_cap") = 16384);

    m.def(
        "simplicity",
        [](const WeilPolynomial& f, const FrobeniusSpectrum& s, int m_max, long cap) {
            SimplicityVerdict v = simplicity(f, s, m_max, cap);
            py::dict d;
            d["irreducible"] = v.irreducible;
            d["absolutely_simple"] = v.absolutely_simple == SimplicityVerdict::Abs::Yes ? "yes"
                                     : v.absolutely_simple == SimplicityVerdict::Abs::HeuristicYes
                                         ? "heuristic_yes"
                                         : "no";
            d["m_checked"] = v.m_checked;
            if (!v.factor_witness.empty()) d["factor_witness"] = from_mpz_vec(v.factor_witness);
            return d;
        },
        py::arg("f"), py::arg("spectrum"), py::arg("m_max") = 12, py::arg("precision_cap") = 16384);

    m.def(
        "find_relation_lattice",
        [](const FrobeniusSpectrum& s, long height_bound, long denom_bound, long precision_bits,
           long precision_cap) {
            DetectionParams p;
            p.height_bound = height_bound;
            p.denom_bound = denom_bound;
            p.precision_bits = precision_bits;
            p.precision_cap = precision_cap;
            return find_relation_lattice(s, p);
        },
        py::arg("spectrum"), py::arg("height_bound") = 1 << 20, py::arg("denom_bound") = 0,
        py::arg("precision_bits") = 128, py::arg("precision_cap") = 16384);

    m.def(
        "certify_relation",
        [](const FrobeniusSpectrum& s, const py::sequence& e, const py::handle& num,
           const py::handle& den, long cap) {
            mpq_class claimed(to_mpz(num), to_mpz(den));
            claimed.canonicalize();
            RelationCertificate c = certify_relation(s, to_mpz_vec(e), claimed, cap);
            return std::string(cert_status_name(c.status));
        },
        py::arg("spectrum"), py::arg("e"), py::arg("num"), py::arg("den") = 1,
        py::arg("precision_cap") = 16384);

    m.def(
        "check_lemma_form",
        [](const AngleLattice& lat) {
            LemmaCheck lc = check_lemma_form(lat);
            py::dict d;
            d["verdict"] = lc.verdict == LemmaCheck::Verdict::Pass        ? "pass"
                           : lc.verdict == LemmaCheck::Verdict::Fail      ? "fail"
                                                                          : "not_applicable";
            d["N"] = lc.verdict == LemmaCheck::Verdict::Pass ? to_pyint(lc.n) : py::object(py::none());
            d["signs"] = lc.sign_pattern;
            d["witness"] = from_mpz_vec(lc.witness);
            d["certified"] = lc.certified;
            return d;
        },
        py::arg("lattice"));

    m.def(
        "galois_stability_probe",
        [](const AngleLattice& lat) { return galois_stability_probe(lat); }, py::arg("lattice"));

    m.def(
        "angle_rank", [](const AngleLattice& lat) { return angle_rank(lat); }, py::arg("lattice"));

    m.def(
        "analyze_json",
        [](const std::string& label, const py::handle& q, const py::sequence& coeffs,
           const py::object& e_trace, long precision_bits, long precision_cap, long denom_bound,
           long height_bound, int m_max, int degree) {
            InputRecord rec;
            rec.label = label;
            rec.q = to_mpz(q);
            rec.coeffs = to_mpz_vec(coeffs);
            if (!e_trace.is_none()) rec.e_trace = to_mpz(e_trace);
            AnalysisConfig cfg = config_from_kwargs(precision_bits, precision_cap, denom_bound,
                                                    height_bound, m_max);
            py::gil_scoped_release release;
            ConjectureReport rep = analyze(rec, cfg);
            return rep.to_json_string(degree);
        },
        py::arg("label"), py::arg("q"), py::arg("coeffs"), py::arg("e_trace") = py::none(),
        py::arg("precision_bits") = 128, py::arg("precision_cap") = 16384,
        py::arg("denom_bound") = 0, py::arg("height_bound") = 1 << 20, py::arg("m_max") = 12,
        py::arg("degree") = -1);

    m.def("selftest", [](long precision_bits, long precision_cap, long denom_bound) {
        AnalysisConfig cfg;
        cfg.precision_bits = precision_bits;
        cfg.precision_cap = precision_cap;
        cfg.denom_bound = denom_bound;
        py::gil_scoped_release release;
        SelftestResult res = selftest(cfg);
        return res.pass;
    },
    py::arg("precision_bits") = 128, py::arg("precision_cap") = 16384, py::arg("denom_bound") = 0);
}
