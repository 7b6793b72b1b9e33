#include "genusbound/cutoff.hpp"

#include <algorithm>
#include <cmath>

#include "genusbound/error.hpp"

namespace genusbound {

namespace {

std::vector<long> first_primes(long count)
{
    if (count < 1)
        return {};
    long bound = 16;
    if (count >= 6) {
        const double n = static_cast<double>(count);
        bound = static_cast<long>(n * (std::log(n) + std::log(std::log(n)))) + 3;
    }
    std::vector<bool> composite(static_cast<std::size_t>(bound) + 1, false);
    std::vector<long> primes;
    for (long i = 2; i <= bound && static_cast<long>(primes.size()) < count; ++i) {
        if (composite[i])
            continue;
        primes.push_back(i);
        for (long j = i * i; j <= bound; j += i)
            composite[j] = true;
    }
    return primes;
}

mpz_class pow2(unsigned long e)
{
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), 2, e);
    return r;
}

// Relative precision for intermediate rounding inside F and the tail.
long working_bits(const Precision &prec) { return prec.bits() + 96; }

// Significant bits kept in recorded certificate endpoints.
long record_bits(const Precision &prec) { return prec.bits() + 64; }

CheckRecord make_check(const char *name, const Interval &lhs, const Interval &rhs, const Precision &prec)
{
    CheckRecord r;
    r.name = name;
    r.lhs = outward(lhs, record_bits(prec));
    r.rhs = outward(rhs, record_bits(prec));
    r.verdict = compare(r.lhs, r.rhs);
    return r;
}

bool all_greater(const std::vector<CheckRecord> &checks)
{
    return std::all_of(checks.begin(), checks.end(), [](const CheckRecord &c) { return c.verdict == Verdict::Greater; });
}

bool any_less(const std::vector<CheckRecord> &checks)
{
    return std::any_of(checks.begin(), checks.end(), [](const CheckRecord &c) { return c.verdict == Verdict::Less; });
}

// Checks at g0, escalating precision while some verdict is Overlap and none
// is Less. Returns the checks and the precision that produced them.
std::pair<std::vector<CheckRecord>, Precision> settle_checks(const BoundHypothesis &hyp, long g0,
                                                             const PrimorialTable &table, const Precision &prec)
{
    Precision p = prec;
    for (int round = 0; round < prec.max_refinements; ++round) {
        auto checks = evaluate_checks(hyp, g0, table, p);
        if (all_greater(checks) || any_less(checks))
            return {std::move(checks), p};
        p = p.refined();
    }
    throw Error(ErrorKind::Indeterminate, "checks at g=" + std::to_string(g0) + " still overlap at the precision cap");
}

} // namespace

PrimorialTable::PrimorialTable(long count) : primes_(first_primes(count))
{
    products_.reserve(primes_.size() + 1);
    products_.emplace_back(1);
    for (long p : primes_)
        products_.push_back(products_.back() * p);
}

long PrimorialTable::prime(long n) const
{
    if (n < 1 || n > size())
        throw Error(ErrorKind::InvalidArgument, "prime index " + std::to_string(n) + " outside table");
    return primes_[static_cast<std::size_t>(n - 1)];
}

const mpz_class &PrimorialTable::primorial(long g) const
{
    if (g < 0 || g > size())
        throw Error(ErrorKind::InvalidArgument, "primorial index " + std::to_string(g) + " outside table");
    return products_[static_cast<std::size_t>(g)];
}

const std::vector<Interval> &PrimorialTable::log_primes(long bits) const
{
    std::lock_guard lock(logs_->mu);
    auto &entry = logs_->by_bits[bits];
    if (entry.empty()) {
        const Precision each(mpq_class(1, pow2(static_cast<unsigned long>(bits))));
        entry.reserve(primes_.size());
        for (long p : primes_)
            entry.push_back(ln_enclosure(mpq_class(p), each));
    }
    return entry;
}

Interval PrimorialTable::log_prime(long n, const Precision &prec) const
{
    if (n < 1 || n > size())
        throw Error(ErrorKind::InvalidArgument, "prime index " + std::to_string(n) + " outside table");
    return log_primes(prec.bits())[static_cast<std::size_t>(n - 1)];
}

Interval PrimorialTable::log_primorial(long g, const Precision &prec) const
{
    if (g < 0 || g > size())
        throw Error(ErrorKind::InvalidArgument, "primorial index " + std::to_string(g) + " outside table");
    // Per-prime width 2^-(bits + log2(size + 1)) keeps the sum within target.
    long extra = 0;
    while ((1L << extra) < size() + 1)
        ++extra;
    const auto &logs = log_primes(prec.bits() + extra);
    Interval sum = Interval::point(0);
    for (long i = 0; i < g; ++i)
        sum = sum + logs[static_cast<std::size_t>(i)];
    return sum;
}

long nth_prime(long n)
{
    if (n < 1)
        throw Error(ErrorKind::InvalidArgument, "prime index must be positive");
    return first_primes(n).back();
}

mpz_class primorial(long g)
{
    if (g < 1)
        throw Error(ErrorKind::InvalidArgument, "primorial index must be positive");
    return PrimorialTable(g).primorial(g);
}

Interval F_eval(const BoundHypothesis &hyp, const mpz_class &d, const Interval &ln_d, const Precision &prec)
{
    if (d < 2)
        throw Error(ErrorKind::InvalidArgument, "F is evaluated for d >= 2");
    const long bits = working_bits(prec);
    const Interval root = outward(sqrt_enclosure(mpq_class(d), prec), bits);
    const Interval power = outward(pow_int(outward(ln_d, bits), hyp.exponent), bits);
    const Interval denom = outward(pi_enclosure(prec) * power, bits);
    return Interval::point(hyp.coeff) * root / denom;
}

Interval tail_eval(const BoundHypothesis &hyp, const mpz_class &d, const Interval &ln_d, long p, const Interval &ln_p,
                   const Precision &prec)
{
    const long bits = working_bits(prec);
    const Interval half_root_p = sqrt_enclosure(mpq_class(p), prec) * Interval::point(mpq_class(1, 2));
    const Interval root = outward(sqrt_enclosure(mpq_class(d), prec) * half_root_p, bits);
    const Interval power = outward(pow_int(outward(ln_d + ln_p, bits), hyp.exponent), bits);
    const Interval denom = outward(pi_enclosure(prec) * power, bits);
    return Interval::point(hyp.coeff) * root / denom;
}

std::vector<CheckRecord> evaluate_checks(const BoundHypothesis &hyp, long g0, const PrimorialTable &table,
                                         const Precision &prec)
{
    if (g0 < 1 || g0 + 1 > table.size())
        throw Error(ErrorKind::InvalidArgument, "genus index outside prime table");
    const mpz_class &d = table.primorial(g0);
    const long p = table.prime(g0 + 1);
    const Interval L = table.log_primorial(g0, prec);
    const Interval m = table.log_prime(g0 + 1, prec);
    const Interval A = Interval::point(hyp.exponent);
    const Interval genera = Interval::point(mpq_class(pow2(static_cast<unsigned long>(g0 - 1))));

    std::vector<CheckRecord> checks;
    checks.reserve(4);
    // ln d > 2A: F(x) = c sqrt(x) / (pi (ln x)^A) increases for x >= e^(2A).
    checks.push_back(make_check(kCheckNames[0], L, Interval::point(2 * hyp.exponent), prec));
    checks.push_back(make_check(kCheckNames[1], F_eval(hyp, d, L, prec), genera, prec));
    checks.push_back(make_check(kCheckNames[2], tail_eval(hyp, d, L, p, m, prec), genera, prec));
    // ln(sqrt(p)/2) = m/2 - ln 2; L ln(sqrt(p)/2) > A m makes the tail increasing in g.
    const Interval log_half_root = m * Interval::point(mpq_class(1, 2)) - ln2_enclosure(prec);
    checks.push_back(make_check(kCheckNames[3], L * log_half_root, A * m, prec));
    return checks;
}

long min_genus_bound(const BoundHypothesis &hyp, long g0, const Precision &prec)
{
    const PrimorialTable table(g0 + 1);
    const Interval L = table.log_primorial(g0, prec);
    if (compare(L, Interval::point(2 * hyp.exponent)) != Verdict::Greater)
        throw Error(ErrorKind::InvalidArgument, "domain check does not hold at g0=" + std::to_string(g0));
    const mpq_class f_lo = F_eval(hyp, table.primorial(g0), L, prec).lo;
    if (f_lo < 1)
        return 1;
    mpz_class whole;
    mpz_fdiv_q(whole.get_mpz_t(), f_lo.get_num_mpz_t(), f_lo.get_den_mpz_t());
    // 2^e <= floor(f_lo) <= f_lo < 2^(e+1), so g - 1 = e + 1.
    const long e = static_cast<long>(mpz_sizeinbase(whole.get_mpz_t(), 2)) - 1;
    return e + 2;
}

CutoffCertificate find_cutoff(const BoundHypothesis &hyp, long g_max, const Precision &prec)
{
    if (g_max < 1)
        throw Error(ErrorKind::InvalidArgument, "g_max must be positive");
    const PrimorialTable table(g_max + 1);
    std::vector<CheckRecord> previous;
    for (long g0 = 1; g0 <= g_max; ++g0) {
        auto [checks, used] = settle_checks(hyp, g0, table, prec);
        if (!all_greater(checks)) {
            previous = std::move(checks);
            continue;
        }
        CutoffCertificate cert;
        cert.hypothesis = hyp;
        cert.g_star = g0;
        cert.d_g_star = table.primorial(g0);
        cert.next_prime = table.prime(g0 + 1);
        cert.checks = std::move(checks);
        cert.precision_digits = used.decimal_digits();
        cert.min_genus = min_genus_bound(hyp, g0, used);
        cert.previous_g = g0 - 1;
        cert.previous_checks = std::move(previous);
        return cert;
    }
    throw Error(ErrorKind::NoCutoffFound, "no genus index up to " + std::to_string(g_max) + " certifies a cutoff");
}

bool verify_certificate(const CutoffCertificate &cert, const Precision &prec)
{
    try {
        const BoundHypothesis &hyp = cert.hypothesis;
        if (sgn(hyp.coeff) <= 0 || cert.g_star < 1 || cert.checks.size() != 4)
            return false;
        const PrimorialTable table(cert.g_star + 1);
        if (cert.d_g_star != table.primorial(cert.g_star) || cert.next_prime != table.prime(cert.g_star + 1))
            return false;

        for (std::size_t i = 0; i < 4; ++i) {
            const CheckRecord &c = cert.checks[i];
            if (c.name != kCheckNames[i] || !c.lhs.is_valid() || !c.rhs.is_valid())
                return false;
            if (c.verdict != Verdict::Greater || compare(c.lhs, c.rhs) != Verdict::Greater)
                return false;
        }
        const mpq_class genera(pow2(static_cast<unsigned long>(cert.g_star - 1)));
        if (cert.checks[0].rhs != Interval::point(2 * hyp.exponent) || cert.checks[1].rhs != Interval::point(genera) ||
            cert.checks[2].rhs != Interval::point(genera))
            return false;

        const auto [fresh, used] = settle_checks(hyp, cert.g_star, table, prec);
        for (std::size_t i = 0; i < 4; ++i) {
            if (fresh[i].verdict != Verdict::Greater)
                return false;
            // Both enclosures contain the same real number.
            if (!fresh[i].lhs.overlaps(cert.checks[i].lhs) || !fresh[i].rhs.overlaps(cert.checks[i].rhs))
                return false;
        }
        return cert.min_genus == min_genus_bound(hyp, cert.g_star, used);
    } catch (const std::exception &) {
        return false;
    }
}

unsigned ci_exponent(unsigned A) { return 4 * A + 18; }

} // namespace genusbound
