#include "doctest.h"

#include <random>

#include "genusbound/cutoff.hpp"
#include "genusbound/error.hpp"
#include "genusbound/json_io.hpp"
#include "mpfr_oracle.hpp"

using namespace genusbound;

namespace {

const char *const kD66 = "19361386640700823163471425054312320082662897612571563761906962414215012369856637179096947335243680"
                         "669607531475629148240284399976570";

mpq_class dec(const char *s) { return parse_rational(s); }

Interval two_pow(unsigned long e)
{
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), 2, e);
    return Interval::point(mpq_class(r));
}

const CutoffCertificate &cert18()
{
    static const CutoffCertificate cert = find_cutoff(BoundHypothesis::conrey_iwaniec());
    return cert;
}

} // namespace

TEST_CASE("nth_prime and primorial examples")
{
    CHECK(nth_prime(1) == 2);
    CHECK(nth_prime(67) == 331);
    CHECK(nth_prime(66) == 317);
    CHECK(nth_prime(1000) == 7919);
    CHECK(primorial(1) == 2);
    CHECK(primorial(4) == 210);
    CHECK(primorial(66).get_str() == kD66);
    CHECK(primorial(66).get_str().size() == 131);
    CHECK_THROWS_AS(nth_prime(0), Error);
}

TEST_CASE("primorial recurrence and table consistency")
{
    const PrimorialTable table(400);
    for (long g = 2; g <= 400; ++g) {
        CHECK(table.primorial(g) == table.primorial(g - 1) * table.prime(g));
        CHECK(table.prime(g) == nth_prime(g));
    }
    CHECK(table.primorial(300) == primorial(300));
}

TEST_CASE("summed log enclosures agree with direct logs")
{
    const PrimorialTable table(101);
    const Precision p = Precision::digits(40);
    for (long g = 1; g <= 100; ++g) {
        const Interval summed = table.log_primorial(g, p);
        CHECK(summed.width() <= p.target_width);
        CHECK(summed.overlaps(ln_enclosure(mpq_class(table.primorial(g)), p)));
    }
    const Interval l66 = table.log_primorial(66, p);
    CHECK(l66.lo > dec("299.9967576995"));
    CHECK(l66.hi < dec("299.9967576996"));
    CHECK(l66.contains(oracle::ln(mpq_class(table.primorial(66)))));
}

TEST_CASE("F_eval examples")
{
    const PrimorialTable table(67);
    const Precision p = Precision::digits(80);
    const auto hyp = BoundHypothesis::conrey_iwaniec();
    const Interval F = F_eval(hyp, table.primorial(66), table.log_primorial(66, p), p);
    CHECK(F.lo > dec("110000000000000000000"));
    CHECK(compare(F, two_pow(66)) == Verdict::Greater);
    CHECK(compare(F, two_pow(67)) == Verdict::Less);

    const Interval two_over_pi = F_eval(BoundHypothesis(1, 0), 4, ln_enclosure(4, p), p);
    CHECK(two_over_pi.contains(Interval::point(2) / oracle::pi()));
}

TEST_CASE("F is increasing beyond e^(2A)")
{
    std::mt19937_64 rng(37);
    const Precision p = Precision::digits(60);
    for (unsigned A : {1u, 5u, 18u}) {
        const BoundHypothesis hyp(1, A);
        // ceil(e^(2A)) + 1 computed with MPFR's upward rounding.
        oracle::Real t(256);
        mpfr_set_ui(t.get(), 2 * A, MPFR_RNDU);
        mpfr_exp(t.get(), t.get(), MPFR_RNDU);
        mpz_class start;
        mpfr_get_z(start.get_mpz_t(), t.get(), MPFR_RNDU);
        start += 1;
        std::uniform_int_distribution<unsigned long> offset(0, 1000000), factor(2, 50);
        for (int i = 0; i < 20; ++i) {
            const mpz_class d1 = start * factor(rng) + offset(rng);
            const mpz_class d2 = d1 * factor(rng) + offset(rng);
            const Interval f1 = F_eval(hyp, d1, ln_enclosure(mpq_class(d1), p), p);
            const Interval f2 = F_eval(hyp, d2, ln_enclosure(mpq_class(d2), p), p);
            CHECK(f1.hi < f2.lo);
        }
    }
}

TEST_CASE("min_genus_bound")
{
    const Precision p = Precision::digits(80);
    CHECK(min_genus_bound(BoundHypothesis::conrey_iwaniec(), 66, p) == 68);
    CHECK(min_genus_bound(BoundHypothesis(1, 66), 207, p) == 210);
    CHECK(min_genus_bound(BoundHypothesis(dec("1/1000000000000000000000000000000"), 1), 10, p) == 1);
    // ln d_10 < 36: outside the monotone range.
    CHECK_THROWS_AS(min_genus_bound(BoundHypothesis::conrey_iwaniec(), 10, p), Error);
}

TEST_CASE("find_cutoff reproduces the A = 18 cutoff")
{
    const auto &cert = cert18();
    CHECK(cert.g_star == 66);
    CHECK(cert.d_g_star.get_str() == kD66);
    CHECK(cert.next_prime == 331);
    CHECK(cert.min_genus == 68);
    REQUIRE(cert.checks.size() == 4);
    for (std::size_t i = 0; i < 4; ++i) {
        CHECK(cert.checks[i].name == kCheckNames[i]);
        CHECK(cert.checks[i].verdict == Verdict::Greater);
    }
    // head_check and tail_check against 2^65, tail at g = 67 beyond 7.2e20
    CHECK(cert.checks[1].rhs == two_pow(65));
    CHECK(cert.checks[1].lhs.lo > dec("110000000000000000000"));
    CHECK(cert.checks[2].lhs.lo > dec("720000000000000000000"));
    CHECK(two_pow(65).lo > dec("36000000000000000000"));
    CHECK(two_pow(65).hi < dec("38000000000000000000"));

    CHECK(cert.previous_g == 65);
    REQUIRE(cert.previous_checks.size() == 4);
    CHECK(cert.previous_checks[1].verdict == Verdict::Less);
}

TEST_CASE("tail expression grows from one to two extra primes")
{
    const PrimorialTable table(67);
    const Precision p = Precision::digits(80);
    const auto hyp = BoundHypothesis::conrey_iwaniec();
    const Interval L = table.log_primorial(66, p);
    const Interval m = ln_enclosure(331, p);
    const Interval root_p_half = sqrt_enclosure(331, p) * Interval::point(mpq_class(1, 2));
    // c sqrt(d) (sqrt(p)/2)^k / (pi (L + k m)^A)
    auto tail_k = [&](unsigned k) {
        return Interval::point(hyp.coeff) * sqrt_enclosure(mpq_class(table.primorial(66)), p) * pow_int(root_p_half, k) /
               (pi_enclosure(p) * pow_int(L + Interval::point(k) * m, hyp.exponent));
    };
    CHECK(compare(tail_k(2), tail_k(1)) == Verdict::Greater);
    CHECK(tail_k(1).overlaps(tail_eval(hyp, table.primorial(66), L, 331, m, p)));
}

TEST_CASE("find_cutoff matches an independent float search on other hypotheses")
{
    struct Case
    {
        BoundHypothesis hyp;
        long g_star;
        long min_genus;
    };
    const Case cases[] = {
        {BoundHypothesis::tatuzawa(), 11, 12},
        {BoundHypothesis(1, 1), 10, 12},
        {BoundHypothesis(dec("1/1000"), 5), 29, 30},
        {BoundHypothesis(1, 30), 102, 103},
        {BoundHypothesis(1, 0), 6, 7},
        {BoundHypothesis(7, 40), 131, 133},
    };
    for (const auto &c : cases) {
        const auto cert = find_cutoff(c.hyp);
        CHECK(cert.g_star == c.g_star);
        CHECK(cert.min_genus == c.min_genus);
        CHECK(verify_certificate(cert, Precision::digits(100)));
    }
}

TEST_CASE("find_cutoff errors")
{
    try {
        find_cutoff(BoundHypothesis::conrey_iwaniec(), 40);
        FAIL("expected NoCutoffFound");
    } catch (const Error &e) {
        CHECK(e.kind() == ErrorKind::NoCutoffFound);
    }
    CHECK_THROWS_AS(find_cutoff(BoundHypothesis::conrey_iwaniec(), 0), Error);
}

TEST_CASE("verify_certificate")
{
    const auto &cert = cert18();
    CHECK(verify_certificate(cert, Precision::digits(80)));
    CHECK(verify_certificate(cert, Precision::digits(300)));

    auto flipped = cert;
    std::swap(flipped.checks[1].lhs.hi, flipped.checks[1].rhs.hi);
    CHECK_FALSE(verify_certificate(flipped, Precision::digits(80)));

    auto shifted = cert;
    shifted.checks[2].lhs = {dec("1"), dec("2")};
    shifted.checks[2].verdict = Verdict::Less;
    CHECK_FALSE(verify_certificate(shifted, Precision::digits(80)));

    auto wrong_g = cert;
    wrong_g.g_star = 67;
    CHECK_FALSE(verify_certificate(wrong_g, Precision::digits(80)));
}

TEST_CASE("certificate JSON round trip")
{
    const auto &cert = cert18();
    const Json j = to_json(cert);
    const auto keys = {"hypothesis", "g_star", "d_g_star", "next_prime", "min_genus", "checks", "engine"};
    auto it = j.begin();
    for (const char *key : keys) {
        REQUIRE(it != j.end());
        CHECK(it.key() == key);
        ++it;
    }
    CHECK(j["hypothesis"]["c"] == "1/1");
    CHECK(j["d_g_star"] == kD66);
    const auto back = certificate_from_json(Json::parse(j.dump()));
    CHECK(to_json(back).dump() == j.dump());
    CHECK(verify_certificate(back, Precision::digits(100)));
    CHECK_THROWS_AS(certificate_from_json(Json::parse("{\"g_star\": 1}")), Error);
}

TEST_CASE("ci_exponent")
{
    CHECK(ci_exponent(0) == 18);
    CHECK(ci_exponent(12) == 66);
    CHECK(ci_exponent(3) == 30);
    CHECK(ci_exponent(1) == 22);
}
