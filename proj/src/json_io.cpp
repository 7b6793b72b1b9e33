#include "genusbound/json_io.hpp"

#include "genusbound/error.hpp"

namespace genusbound {

namespace {

Json mpz_json(const mpz_class &x)
{
    if (x.fits_slong_p())
        return x.get_si();
    return x.get_str();
}

mpz_class parse_decimal(const Json &j)
{
    if (j.is_number_integer())
        return mpz_class(j.get<long>());
    const auto s = j.get<std::string>();
    mpz_class out;
    if (s.empty() || out.set_str(s, 10) != 0)
        throw Error(ErrorKind::InvalidArgument, "not a decimal integer: '" + s + "'");
    return out;
}

std::vector<CheckRecord> checks_from_json(const Json &j)
{
    std::vector<CheckRecord> out;
    for (const auto &c : j)
        out.push_back(check_from_json(c));
    return out;
}

} // namespace

Json form_to_json(const QuadraticForm &f) { return Json::array({mpz_json(f.a), mpz_json(f.b), mpz_json(f.c)}); }

Json to_json(const GenusReport &r)
{
    Json forms = Json::array();
    for (const auto &f : r.reduced_forms)
        forms.push_back(form_to_json(f));
    Json j;
    j["d"] = mpz_json(r.D.value);
    j["h"] = r.h;
    j["ambiguous"] = r.ambiguous_count;
    j["genera"] = r.genus_count;
    j["ocpg"] = r.one_class_per_genus;
    j["forms"] = std::move(forms);
    return j;
}

Json to_json(const Interval &x)
{
    Json j;
    j["lo"] = to_fraction_string(x.lo);
    j["hi"] = to_fraction_string(x.hi);
    return j;
}

Interval interval_from_json(const Json &j)
{
    return {parse_rational(j.at("lo").get<std::string>()), parse_rational(j.at("hi").get<std::string>())};
}

Json to_json(const CheckRecord &c)
{
    Json j;
    j["name"] = c.name;
    j["lhs"] = to_json(c.lhs);
    j["rhs"] = to_json(c.rhs);
    j["verdict"] = to_string(c.verdict);
    return j;
}

CheckRecord check_from_json(const Json &j)
{
    CheckRecord c;
    c.name = j.at("name").get<std::string>();
    c.lhs = interval_from_json(j.at("lhs"));
    c.rhs = interval_from_json(j.at("rhs"));
    c.verdict = parse_verdict(j.at("verdict").get<std::string>());
    return c;
}

Json to_json(const CutoffCertificate &cert)
{
    Json j;
    j["hypothesis"] = {{"c", to_fraction_string(cert.hypothesis.coeff)}, {"A", cert.hypothesis.exponent}};
    j["g_star"] = cert.g_star;
    j["d_g_star"] = cert.d_g_star.get_str();
    j["next_prime"] = cert.next_prime;
    j["min_genus"] = cert.min_genus;
    Json checks = Json::array();
    for (const auto &c : cert.checks)
        checks.push_back(to_json(c));
    j["checks"] = std::move(checks);
    j["engine"] = {{"precision_digits", cert.precision_digits}};
    j["assumptions"] = Json::array({
        "applies to fundamental discriminants -d only",
        "unit count w = 2 in the class number formula (d > 4)",
        "d >= d_g when -d has g prime discriminant factors",
        "conditional on L(1,chi) >= c (log d)^(-A) for every such d",
    });
    Json prev = Json::array();
    for (const auto &c : cert.previous_checks)
        prev.push_back(to_json(c));
    j["minimality"] = {{"g", cert.previous_g}, {"checks", std::move(prev)}};
    return j;
}

CutoffCertificate certificate_from_json(const Json &j)
{
    try {
        CutoffCertificate cert;
        const auto &hyp = j.at("hypothesis");
        const long A = hyp.at("A").get<long>();
        if (A < 0)
            throw Error(ErrorKind::InvalidArgument, "negative exponent");
        cert.hypothesis = BoundHypothesis(parse_rational(hyp.at("c").get<std::string>()), static_cast<unsigned>(A));
        cert.g_star = j.at("g_star").get<long>();
        cert.d_g_star = parse_decimal(j.at("d_g_star"));
        cert.next_prime = j.at("next_prime").get<long>();
        cert.min_genus = j.at("min_genus").get<long>();
        cert.checks = checks_from_json(j.at("checks"));
        cert.precision_digits = j.at("engine").at("precision_digits").get<long>();
        if (j.contains("minimality")) {
            cert.previous_g = j["minimality"].at("g").get<long>();
            cert.previous_checks = checks_from_json(j["minimality"].at("checks"));
        }
        return cert;
    } catch (const nlohmann::json::exception &e) {
        throw Error(ErrorKind::InvalidArgument, std::string("malformed certificate: ") + e.what());
    }
}

Json lvalue_json(std::int64_t d, const Interval &l1, const BoundCheck *check)
{
    const std::int64_t s = character_sum(d);
    Json j;
    j["d"] = d;
    j["S"] = s;
    j["h"] = analytic_class_number(d);
    j["w"] = unit_count(d);
    j["l1_lo"] = to_fraction_string(l1.lo);
    j["l1_hi"] = to_fraction_string(l1.hi);
    if (check) {
        j["bound_lo"] = to_fraction_string(check->bound.lo);
        j["bound_hi"] = to_fraction_string(check->bound.hi);
        j["verdict"] = to_string(check->verdict);
    } else {
        j["bound_lo"] = nullptr;
        j["bound_hi"] = nullptr;
        j["verdict"] = nullptr;
    }
    return j;
}

} // namespace genusbound
