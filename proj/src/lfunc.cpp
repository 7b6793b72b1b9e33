#include "genusbound/lfunc.hpp"

#include <cstdlib>

#include "genusbound/error.hpp"
#include "genusbound/forms.hpp"

namespace genusbound {

namespace {

constexpr std::int64_t kMaxCharacterModulus = std::int64_t{1} << 31;

void require_fundamental(std::int64_t d)
{
    if (d < 3 || d % 4 == 1 || d % 4 == 2)
        throw Error(ErrorKind::NotFundamental, "-" + std::to_string(d) + " is not a fundamental discriminant");
    if (d >= kMaxCharacterModulus)
        throw Error(ErrorKind::InvalidArgument, "modulus too large for an exact character sum");
    const Discriminant D = validate_discriminant(mpz_class(static_cast<long>(-d)));
    if (!D.is_fundamental)
        throw Error(ErrorKind::NotFundamental, "-" + std::to_string(d) + " is not a fundamental discriminant");
}

// Jacobi symbol (a | n) for odd n > 0, a >= 0.
int jacobi(std::uint64_t a, std::uint64_t n)
{
    int t = 1;
    a %= n;
    while (a != 0) {
        while (a % 2 == 0) {
            a /= 2;
            const std::uint64_t r = n % 8;
            if (r == 3 || r == 5)
                t = -t;
        }
        std::swap(a, n);
        if (a % 4 == 3 && n % 4 == 3)
            t = -t;
        a %= n;
    }
    return n == 1 ? t : 0;
}

} // namespace

BoundHypothesis::BoundHypothesis(mpq_class c, unsigned a) : coeff(std::move(c)), exponent(a)
{
    coeff.canonicalize();
    if (sgn(coeff) <= 0)
        throw Error(ErrorKind::InvalidArgument, "bound coefficient must be positive");
}

BoundHypothesis BoundHypothesis::conrey_iwaniec() { return {mpq_class(1), 18}; }

BoundHypothesis BoundHypothesis::tatuzawa() { return {mpq_class(655000, 2718282), 1}; }

int kronecker(std::int64_t D, std::int64_t n)
{
    if (n == 0)
        return (D == 1 || D == -1) ? 1 : 0;
    int t = 1;
    // (D | -1) = sign of D
    if (n < 0) {
        n = -n;
        if (D < 0)
            t = -t;
    }
    auto un = static_cast<std::uint64_t>(n);
    if (un % 2 == 0) {
        if (D % 2 == 0)
            return 0;
        int v = 0;
        while (un % 2 == 0) {
            un /= 2;
            ++v;
        }
        // (D | 2) = +1 for D = +-1 mod 8, -1 for D = +-3 mod 8
        const std::int64_t r = ((D % 8) + 8) % 8;
        if (v % 2 == 1 && (r == 3 || r == 5))
            t = -t;
    }
    if (un == 1)
        return t;
    // D mod n as a nonnegative residue; n odd from here on.
    const auto m = static_cast<std::int64_t>(un);
    const auto a = static_cast<std::uint64_t>(((D % m) + m) % m);
    return t * jacobi(a, un);
}

int unit_count(std::int64_t d)
{
    if (d == 3)
        return 6;
    if (d == 4)
        return 4;
    return 2;
}

std::int64_t character_sum(std::int64_t d)
{
    require_fundamental(d);
    std::int64_t s = 0;
    for (std::int64_t a = 1; a < d; ++a)
        s += kronecker(-d, a) * a;
    return s;
}

long analytic_class_number(std::int64_t d)
{
    const std::int64_t s = std::llabs(character_sum(d));
    const std::int64_t numer = unit_count(d) * s;
    if (numer % (2 * d) != 0 || numer == 0)
        throw Error(ErrorKind::NonIntegralResult,
                    "w|S|/(2d) = " + std::to_string(numer) + "/" + std::to_string(2 * d) + " for d=" + std::to_string(d));
    return static_cast<long>(numer / (2 * d));
}

Interval l_one(std::int64_t d, const Precision &prec)
{
    const std::int64_t s = std::llabs(character_sum(d));
    const mpq_class scale(mpz_class(static_cast<long>(s)), mpz_class(static_cast<long>(d)));
    // Shrink the component widths until the product meets the target.
    mpq_class width = prec.target_width / 16;
    while (true) {
        const Precision inner(width, prec.max_refinements);
        const Interval root = sqrt_enclosure(mpq_class(static_cast<long>(d)), inner);
        const Interval value = Interval::point(scale) * pi_enclosure(inner) / root;
        if (value.width() <= prec.target_width)
            return value;
        width /= 1 << 16;
    }
}

Interval bound_value(std::int64_t d, const BoundHypothesis &hyp, const Precision &prec)
{
    const Interval ln_d = ln_enclosure(mpq_class(static_cast<long>(d)), prec);
    return outward(Interval::point(hyp.coeff) / pow_int(ln_d, hyp.exponent), prec.bits() + 32);
}

const char *to_string(BoundVerdict v)
{
    switch (v) {
    case BoundVerdict::Holds: return "Holds";
    case BoundVerdict::Fails: return "Fails";
    case BoundVerdict::Indeterminate: return "Indeterminate";
    }
    return "Indeterminate";
}

BoundCheck bound_check(std::int64_t d, const BoundHypothesis &hyp, const Precision &prec)
{
    require_fundamental(d);
    BoundCheck out;
    Precision p = prec;
    for (int round = 0; round < prec.max_refinements; ++round) {
        out.l1 = l_one(d, p);
        out.bound = bound_value(d, hyp, p);
        out.digits = p.decimal_digits();
        switch (compare(out.l1, out.bound)) {
        case Verdict::Greater: out.verdict = BoundVerdict::Holds; return out;
        case Verdict::Less: out.verdict = BoundVerdict::Fails; return out;
        case Verdict::Overlap: break;
        }
        p = p.refined();
    }
    out.verdict = BoundVerdict::Indeterminate;
    return out;
}

} // namespace genusbound
