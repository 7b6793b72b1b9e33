#include "genusbound/cli.hpp"

#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"

#include "genusbound/cutoff.hpp"
#include "genusbound/error.hpp"
#include "genusbound/forms.hpp"
#include "genusbound/json_io.hpp"
#include "genusbound/lfunc.hpp"

namespace genusbound::cli {

namespace {

struct Options
{
    std::string discriminant;
    long limit = 0;
    std::string mode = "all";
    bool jsonl = false;
    bool csv = false;
    long digits = 30;
    int refinements = 20;
    std::string coeff = "1";
    unsigned exponent = 18;
    std::string preset;
    long gmax = 1000;
    std::string out_path;
    std::string cert_path;
    unsigned a = 0;
};

int exit_code_for(ErrorKind kind)
{
    switch (kind) {
    case ErrorKind::Indeterminate: return kIndeterminate;
    case ErrorKind::NoCutoffFound:
    case ErrorKind::GenusCrossCheckFailed:
    case ErrorKind::NonIntegralResult: return kVerificationFailed;
    default: return kInvalidInput;
    }
}

mpz_class parse_integer(const std::string &text)
{
    mpz_class v;
    std::string s = text;
    if (!s.empty() && s.front() == '+')
        s.erase(0, 1);
    if (s.empty() || v.set_str(s, 10) != 0)
        throw Error(ErrorKind::InvalidArgument, "not an integer: '" + text + "'");
    return v;
}

// lfunc operations take the positive modulus d; accept either sign.
std::int64_t parse_modulus(const std::string &text)
{
    const mpz_class v = abs(parse_integer(text));
    if (!v.fits_slong_p())
        throw Error(ErrorKind::InvalidArgument, "modulus out of range");
    return v.get_si();
}

void emit(std::ostream &out, const Json &j) { out << j.dump() << '\n'; }

BoundHypothesis hypothesis_from(const Options &o)
{
    static const std::map<std::string, BoundHypothesis> presets = {
        {"conrey-iwaniec", BoundHypothesis(1, 18)},
        {"ci-a12", BoundHypothesis(1, 66)},
        {"ci-trivial", BoundHypothesis(1, 74)},
        {"tatuzawa", BoundHypothesis::tatuzawa()},
    };
    if (!o.preset.empty())
        return presets.at(o.preset);
    return BoundHypothesis(parse_rational(o.coeff), o.exponent);
}

int cmd_forms(const Options &o, std::ostream &out)
{
    const Discriminant D = validate_discriminant(parse_integer(o.discriminant));
    const auto forms = enumerate_reduced(D);
    Json list = Json::array();
    for (const auto &f : forms)
        list.push_back(form_to_json(f));
    Json j;
    j["d"] = D.value.get_si();
    j["h"] = forms.size();
    j["forms"] = std::move(list);
    emit(out, j);
    return kOk;
}

int cmd_classnum(const Options &o, std::ostream &out)
{
    const Discriminant D = validate_discriminant(parse_integer(o.discriminant));
    Json j;
    j["d"] = D.value.get_si();
    j["h"] = class_number(D);
    j["fundamental"] = D.is_fundamental;
    emit(out, j);
    return kOk;
}

int cmd_genus(const Options &o, std::ostream &out)
{
    emit(out, to_json(genus_report(validate_discriminant(parse_integer(o.discriminant)))));
    return kOk;
}

int cmd_search(const Options &o, std::ostream &out)
{
    static const std::map<std::string, SearchMode> modes = {
        {"all", SearchMode::All}, {"fundamental", SearchMode::Fundamental}, {"idoneal", SearchMode::Idoneal}};
    const auto reports = search_ocpg(o.limit, modes.at(o.mode));
    if (o.csv) {
        out << "d,h,ambiguous,genera,ocpg\n";
        for (const auto &r : reports)
            out << r.D.value << ',' << r.h << ',' << r.ambiguous_count << ',' << r.genus_count << ','
                << (r.one_class_per_genus ? "true" : "false") << '\n';
    } else if (o.jsonl) {
        for (const auto &r : reports)
            emit(out, to_json(r));
    } else {
        Json list = Json::array();
        for (const auto &r : reports)
            list.push_back(to_json(r));
        emit(out, list);
    }
    return kOk;
}

int cmd_lvalue(const Options &o, std::ostream &out)
{
    const std::int64_t d = parse_modulus(o.discriminant);
    emit(out, lvalue_json(d, l_one(d, Precision::digits(o.digits)), nullptr));
    return kOk;
}

int cmd_boundcheck(const Options &o, std::ostream &out)
{
    const std::int64_t d = parse_modulus(o.discriminant);
    const BoundCheck check = bound_check(d, hypothesis_from(o), Precision::digits(o.digits, o.refinements));
    emit(out, lvalue_json(d, check.l1, &check));
    switch (check.verdict) {
    case BoundVerdict::Holds: return kOk;
    case BoundVerdict::Fails: return kVerificationFailed;
    case BoundVerdict::Indeterminate: return kIndeterminate;
    }
    return kIndeterminate;
}

int cmd_cutoff(const Options &o, std::ostream &out)
{
    const CutoffCertificate cert = find_cutoff(hypothesis_from(o), o.gmax, Precision::digits(o.digits, o.refinements));
    const Json j = to_json(cert);
    if (!o.out_path.empty()) {
        std::ofstream file(o.out_path);
        if (!file)
            throw Error(ErrorKind::InvalidArgument, "cannot write " + o.out_path);
        file << j.dump(2) << '\n';
    }
    emit(out, j);
    return kOk;
}

int cmd_verify(const Options &o, std::ostream &out, std::ostream &err)
{
    std::ifstream file(o.cert_path);
    if (!file)
        throw Error(ErrorKind::InvalidArgument, "cannot read " + o.cert_path);
    Json j;
    try {
        j = Json::parse(file);
    } catch (const nlohmann::json::exception &e) {
        throw Error(ErrorKind::InvalidArgument, std::string("invalid JSON: ") + e.what());
    }
    const CutoffCertificate cert = certificate_from_json(j);
    const long digits = std::max(o.digits, cert.precision_digits + 20);
    const bool ok = verify_certificate(cert, Precision::digits(digits));
    Json result;
    result["verified"] = ok;
    result["g_star"] = cert.g_star;
    result["precision_digits"] = digits;
    emit(out, result);
    if (!ok)
        err << "certificate rejected\n";
    return ok ? kOk : kVerificationFailed;
}

} // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err)
{
    CLI::App app{"Binary quadratic forms and certified class-number cutoffs", "genusbound"};
    app.require_subcommand(1);
    Options o;

    auto *forms = app.add_subcommand("forms", "List reduced forms of discriminant D");
    forms->add_option("-d", o.discriminant, "Negative discriminant")->required();
    auto *classnum = app.add_subcommand("classnum", "Class number h(D)");
    classnum->add_option("-d", o.discriminant, "Negative discriminant")->required();
    auto *genus = app.add_subcommand("genus", "Genus report for D");
    genus->add_option("-d", o.discriminant, "Negative discriminant")->required();

    auto *search = app.add_subcommand("search", "Discriminants with one class per genus");
    search->add_option("--limit", o.limit, "Largest |D| (or n for idoneal)")->required()->check(CLI::Range(3L, 100000000L));
    search->add_option("--mode", o.mode, "all | fundamental | idoneal")
        ->check(CLI::IsMember({"all", "fundamental", "idoneal"}));
    auto *jsonl = search->add_flag("--jsonl", o.jsonl, "One JSON object per line");
    search->add_flag("--csv", o.csv, "CSV with header d,h,ambiguous,genera,ocpg")->excludes(jsonl);

    auto *lvalue = app.add_subcommand("lvalue", "Enclosure of L(1, chi) for fundamental -d");
    lvalue->add_option("-d", o.discriminant, "d with -d fundamental")->required();
    lvalue->add_option("--digits", o.digits, "Enclosure width 10^-digits")->check(CLI::Range(1L, 100000L));

    auto add_hypothesis = [&](CLI::App *cmd) {
        auto *preset = cmd->add_option("--preset", o.preset, "conrey-iwaniec | ci-a12 | ci-trivial | tatuzawa")
                           ->check(CLI::IsMember({"conrey-iwaniec", "ci-a12", "ci-trivial", "tatuzawa"}));
        cmd->add_option("--coeff", o.coeff, "Bound coefficient c (p/q or decimal)")->excludes(preset);
        cmd->add_option("--exponent", o.exponent, "Bound exponent A")->excludes(preset);
        cmd->add_option("--refinements", o.refinements, "Precision escalations before giving up")
            ->check(CLI::Range(1, 30));
    };
    auto *boundcheck = app.add_subcommand("boundcheck", "Check L(1, chi) >= c (log d)^-A");
    boundcheck->add_option("-d", o.discriminant, "d with -d fundamental")->required();
    boundcheck->add_option("--digits", o.digits, "Initial enclosure width 10^-digits")->check(CLI::Range(1L, 100000L));
    add_hypothesis(boundcheck);

    auto *cutoff = app.add_subcommand("cutoff", "Certify the genus cutoff for a bound hypothesis");
    add_hypothesis(cutoff);
    cutoff->add_option("--gmax", o.gmax, "Largest genus index tried")->check(CLI::Range(1L, 100000L));
    cutoff->add_option("--out", o.out_path, "Also write the certificate to this file");
    cutoff->add_option("--digits", o.digits, "Initial precision in digits")->default_val(80)->check(CLI::Range(1L, 100000L));

    auto *verify = app.add_subcommand("verify", "Re-check a cutoff certificate");
    verify->add_option("--cert", o.cert_path, "Certificate JSON")->required();
    verify->add_option("--digits", o.digits, "Minimum re-evaluation precision")->check(CLI::Range(1L, 100000L));

    auto *ci = app.add_subcommand("ci-exponent", "Exponent 4A + 18 for a zero-spacing parameter A");
    ci->add_option("--a", o.a, "Parameter A >= 0")->required();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError &e) {
        std::ostringstream msg;
        const int code = app.exit(e, msg, msg);
        (code == 0 ? out : err) << msg.str();
        return code == 0 ? kOk : kInvalidInput;
    }

    try {
        if (*forms)
            return cmd_forms(o, out);
        if (*classnum)
            return cmd_classnum(o, out);
        if (*genus)
            return cmd_genus(o, out);
        if (*search)
            return cmd_search(o, out);
        if (*lvalue)
            return cmd_lvalue(o, out);
        if (*boundcheck)
            return cmd_boundcheck(o, out);
        if (*cutoff)
            return cmd_cutoff(o, out);
        if (*verify)
            return cmd_verify(o, out, err);
        if (*ci) {
            out << ci_exponent(o.a) << '\n';
            return kOk;
        }
    } catch (const Error &e) {
        err << "error: " << e.what() << '\n';
        return exit_code_for(e.kind());
    } catch (const std::exception &e) {
        err << "error: " << e.what() << '\n';
        return kInvalidInput;
    }
    return kInvalidInput;
}

} // namespace genusbound::cli
