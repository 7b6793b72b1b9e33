#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "genusbound/cli.hpp"
#include "genusbound/cutoff.hpp"
#include "genusbound/error.hpp"
#include "genusbound/forms.hpp"
#include "genusbound/json_io.hpp"
#include "genusbound/lfunc.hpp"

namespace py = pybind11;
namespace gb = genusbound;

namespace {

mpz_class to_mpz(const py::int_ &x) { return mpz_class(py::str(x).cast<std::string>(), 10); }

py::int_ from_mpz(const mpz_class &x)
{
    return py::reinterpret_steal<py::int_>(PyLong_FromString(x.get_str().c_str(), nullptr, 10));
}

py::object from_mpq(const mpq_class &q)
{
    static py::object fraction = py::module_::import("fractions").attr("Fraction");
    return fraction(from_mpz(q.get_num()), from_mpz(q.get_den()));
}

// Accepts int, Fraction, or a string such as "0.655" / "3/7".
mpq_class to_mpq(const py::object &x)
{
    if (py::isinstance<py::str>(x))
        return gb::parse_rational(x.cast<std::string>());
    if (py::isinstance<py::int_>(x))
        return mpq_class(to_mpz(x.cast<py::int_>()));
    if (py::hasattr(x, "numerator") && py::hasattr(x, "denominator")) {
        mpq_class q(to_mpz(x.attr("numerator")), to_mpz(x.attr("denominator")));
        q.canonicalize();
        return q;
    }
    throw py::type_error("expected int, str or Fraction");
}

using FormTuple = std::tuple<py::int_, py::int_, py::int_>;

FormTuple form_out(const gb::QuadraticForm &f) { return {from_mpz(f.a), from_mpz(f.b), from_mpz(f.c)}; }

gb::QuadraticForm form_in(const FormTuple &t)
{
    return {to_mpz(std::get<0>(t)), to_mpz(std::get<1>(t)), to_mpz(std::get<2>(t))};
}

py::tuple interval_out(const gb::Interval &x) { return py::make_tuple(from_mpq(x.lo), from_mpq(x.hi)); }

py::dict report_out(const gb::GenusReport &r)
{
    py::list forms;
    for (const auto &f : r.reduced_forms)
        forms.append(form_out(f));
    py::dict d;
    d["d"] = from_mpz(r.D.value);
    d["h"] = r.h;
    d["ambiguous"] = r.ambiguous_count;
    d["genera"] = r.genus_count;
    d["ocpg"] = r.one_class_per_genus;
    d["forms"] = forms;
    return d;
}

gb::SearchMode mode_in(const std::string &mode)
{
    if (mode == "all")
        return gb::SearchMode::All;
    if (mode == "fundamental")
        return gb::SearchMode::Fundamental;
    if (mode == "idoneal")
        return gb::SearchMode::Idoneal;
    throw py::value_error("mode must be 'all', 'fundamental' or 'idoneal'");
}

} // namespace

PYBIND11_MODULE(_core, m)
{
    m.doc() = "Binary quadratic forms, certified L(1, chi) enclosures and genus cutoff certificates";

    static py::exception<gb::Error> error(m, "GenusboundError", PyExc_ValueError);
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p)
                std::rethrow_exception(p);
        } catch (const gb::Error &e) {
            py::set_error(error, e.what());
        }
    });

    m.def("validate_discriminant", [](const py::int_ &D) {
        const auto disc = gb::validate_discriminant(to_mpz(D));
        py::dict d;
        d["value"] = from_mpz(disc.value);
        d["is_fundamental"] = disc.is_fundamental;
        d["omega"] = disc.omega;
        return d;
    });
    m.def("reduce", [](const FormTuple &f) { return form_out(gb::reduce(form_in(f))); });
    m.def("compose", [](const FormTuple &f, const FormTuple &g) { return form_out(gb::compose(form_in(f), form_in(g))); });
    m.def("principal_form", [](const py::int_ &D) { return form_out(gb::principal_form(to_mpz(D))); });
    m.def("enumerate_reduced", [](const py::int_ &D) {
        std::vector<FormTuple> out;
        for (const auto &f : gb::enumerate_reduced(gb::validate_discriminant(to_mpz(D))))
            out.push_back(form_out(f));
        return out;
    });
    m.def("class_number", [](const py::int_ &D) { return gb::class_number(gb::validate_discriminant(to_mpz(D))); });
    m.def("genus_report", [](const py::int_ &D) { return report_out(gb::genus_report(gb::validate_discriminant(to_mpz(D)))); });
    m.def(
        "search_ocpg",
        [](long limit, const std::string &mode) {
            py::list out;
            for (const auto &r : gb::search_ocpg(limit, mode_in(mode)))
                out.append(report_out(r));
            return out;
        },
        py::arg("limit"), py::arg("mode") = "all");

    m.def("kronecker", &gb::kronecker, py::arg("D"), py::arg("n"));
    m.def("character_sum", &gb::character_sum, py::arg("d"));
    m.def("analytic_class_number", &gb::analytic_class_number, py::arg("d"));
    m.def(
        "l_one", [](std::int64_t d, long digits) { return interval_out(gb::l_one(d, gb::Precision::digits(digits))); },
        py::arg("d"), py::arg("digits") = 30);
    m.def(
        "bound_check",
        [](std::int64_t d, const py::object &coeff, unsigned exponent, long digits) {
            const auto r = gb::bound_check(d, gb::BoundHypothesis(to_mpq(coeff), exponent), gb::Precision::digits(digits));
            py::dict out;
            out["verdict"] = gb::to_string(r.verdict);
            out["l1"] = interval_out(r.l1);
            out["bound"] = interval_out(r.bound);
            return out;
        },
        py::arg("d"), py::arg("coeff") = 1, py::arg("exponent") = 18, py::arg("digits") = 30);

    m.def(
        "pi_enclosure", [](long digits) { return interval_out(gb::pi_enclosure(gb::Precision::digits(digits))); },
        py::arg("digits") = 30);
    m.def(
        "ln_enclosure",
        [](const py::object &x, long digits) { return interval_out(gb::ln_enclosure(to_mpq(x), gb::Precision::digits(digits))); },
        py::arg("x"), py::arg("digits") = 30);
    m.def(
        "sqrt_enclosure",
        [](const py::object &x, long digits) {
            return interval_out(gb::sqrt_enclosure(to_mpq(x), gb::Precision::digits(digits)));
        },
        py::arg("x"), py::arg("digits") = 30);

    m.def("nth_prime", &gb::nth_prime, py::arg("n"));
    m.def("primorial", [](long g) { return from_mpz(gb::primorial(g)); }, py::arg("g"));
    m.def("ci_exponent", &gb::ci_exponent, py::arg("A"));
    m.def(
        "find_cutoff_json",
        [](const py::object &coeff, unsigned exponent, long g_max, long digits) {
            const auto cert = gb::find_cutoff(gb::BoundHypothesis(to_mpq(coeff), exponent), g_max, gb::Precision::digits(digits));
            return gb::to_json(cert).dump();
        },
        py::arg("coeff") = 1, py::arg("exponent") = 18, py::arg("g_max") = 1000, py::arg("digits") = 80);
    m.def(
        "verify_certificate_json",
        [](const std::string &text, long digits) {
            try {
                const auto cert = gb::certificate_from_json(gb::Json::parse(text));
                return gb::verify_certificate(cert, gb::Precision::digits(digits));
            } catch (const std::exception &) {
                return false;
            }
        },
        py::arg("text"), py::arg("digits") = 100);
    m.def("run_cli", [](const std::vector<std::string> &args) {
        std::ostringstream out, err;
        const int code = gb::cli::run(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
    });
}
