#include "genusbound/interval.hpp"

#include <algorithm>
#include <cstdlib>
#include <mutex>
#include <map>

#include "genusbound/error.hpp"

namespace genusbound {

namespace {

mpz_class pow2(unsigned long e)
{
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), 2, e);
    return r;
}

mpz_class floor_div(const mpz_class &x, const mpz_class &y)
{
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
    return q;
}

mpz_class ceil_div(const mpz_class &x, const mpz_class &y)
{
    mpz_class q;
    mpz_cdiv_q(q.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
    return q;
}

long bit_length(const mpz_class &x)
{
    return sgn(x) == 0 ? 0 : static_cast<long>(mpz_sizeinbase(x.get_mpz_t(), 2));
}

long ceil_log2(unsigned long n)
{
    long b = 0;
    while ((1UL << b) < n)
        ++b;
    return b;
}

mpq_class fixed(const mpz_class &units, unsigned long frac_bits)
{
    mpq_class q(units, pow2(frac_bits));
    q.canonicalize();
    return q;
}

// 2*atanh(y) for rational 0 <= y <= 1/3 with width at most 2^-bits. Terms
// are accumulated in fixed point with B fractional bits, rounded outward;
// the truncated tail is bounded by a geometric series with ratio y^2.
Interval two_atanh(const mpq_class &y, long bits)
{
    const long guard = ceil_log2(static_cast<unsigned long>(bits) + 16) + 8;
    const unsigned long B = static_cast<unsigned long>(bits + guard);
    const mpz_class one = pow2(B);

    const mpz_class y_lo = floor_div(y.get_num() * one, y.get_den());
    const mpz_class y_hi = ceil_div(y.get_num() * one, y.get_den());
    const mpz_class y2_lo = floor_div(y_lo * y_lo, one);
    const mpz_class y2_hi = ceil_div(y_hi * y_hi, one);

    mpz_class p_lo = y_lo, p_hi = y_hi, s_lo = 0, s_hi = 0;
    const mpz_class stop = pow2(static_cast<unsigned long>(guard - 4));
    unsigned long k = 1;
    while (true) {
        s_lo += floor_div(p_lo, mpz_class(k));
        s_hi += ceil_div(p_hi, mpz_class(k));
        p_lo = floor_div(p_lo * y2_lo, one);
        p_hi = ceil_div(p_hi * y2_hi, one);
        k += 2;
        if (p_hi <= stop)
            break;
    }
    // sum_{i >= 0} p y^(2i) / (k + 2i) <= p / (k (1 - y^2))
    mpq_class tail(p_hi, mpz_class(k) * (one - y2_hi));
    tail.canonicalize();
    return {2 * fixed(s_lo, B), 2 * (fixed(s_hi, B) + tail)};
}

// atan(1/n) in fixed point; alternating series, truncation bounded by the
// first omitted term.
Interval atan_inverse(unsigned long n, long bits)
{
    const long guard = ceil_log2(static_cast<unsigned long>(bits) + 16) + 8;
    const unsigned long B = static_cast<unsigned long>(bits + guard);
    const mpz_class one = pow2(B);
    const mpz_class n2 = mpz_class(n) * n;
    const mpz_class stop = pow2(static_cast<unsigned long>(guard - 4));

    mpz_class power = n; // n^(2j+1)
    mpz_class s_lo = 0, s_hi = 0;
    for (unsigned long j = 0;; ++j) {
        const mpz_class denom = power * (2 * j + 1);
        const mpz_class t_lo = floor_div(one, denom);
        const mpz_class t_hi = ceil_div(one, denom);
        if (t_hi <= stop) {
            // t_hi bounds the omitted remainder.
            return {fixed(s_lo - t_hi, B), fixed(s_hi + t_hi, B)};
        }
        if (j % 2 == 0) {
            s_lo += t_lo;
            s_hi += t_hi;
        } else {
            s_lo -= t_hi;
            s_hi -= t_lo;
        }
        power *= n2;
    }
}

// Keyed by exact precision so results never depend on call history.
struct ConstantCache
{
    std::mutex mu;
    std::map<long, Interval> by_bits;
};

template <class Compute>
Interval cached(ConstantCache &cache, long bits, Compute &&compute)
{
    {
        std::lock_guard lock(cache.mu);
        if (auto it = cache.by_bits.find(bits); it != cache.by_bits.end())
            return it->second;
    }
    Interval fresh = compute(bits);
    std::lock_guard lock(cache.mu);
    cache.by_bits.emplace(bits, fresh);
    return fresh;
}

ConstantCache &ln2_cache()
{
    static ConstantCache c;
    return c;
}

ConstantCache &pi_cache()
{
    static ConstantCache c;
    return c;
}

Interval ln2_bits(long bits)
{
    return cached(ln2_cache(), bits, [](long b) { return two_atanh(mpq_class(1, 3), b + 1); });
}

Interval pi_bits(long bits)
{
    return cached(pi_cache(), bits, [](long b) {
        const Interval a5 = atan_inverse(5, b + 6);
        const Interval a239 = atan_inverse(239, b + 4);
        return Interval::point(16) * a5 - Interval::point(4) * a239;
    });
}

mpq_class round_rel(const mpq_class &q, long significant_bits, bool up)
{
    if (sgn(q) == 0)
        return q;
    const long mag = bit_length(abs(q.get_num())) - bit_length(q.get_den());
    const long shift = significant_bits - mag;
    mpz_class units;
    mpq_class out;
    if (shift >= 0) {
        const mpz_class scaled = q.get_num() * pow2(static_cast<unsigned long>(shift));
        units = up ? ceil_div(scaled, q.get_den()) : floor_div(scaled, q.get_den());
        out = mpq_class(units, pow2(static_cast<unsigned long>(shift)));
    } else {
        const mpz_class step = pow2(static_cast<unsigned long>(-shift));
        const mpz_class denom = q.get_den() * step;
        units = up ? ceil_div(q.get_num(), denom) : floor_div(q.get_num(), denom);
        out = mpq_class(units * step);
    }
    out.canonicalize();
    return out;
}

} // namespace

Precision::Precision() : target_width(1, 1)
{
    mpz_class den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, 30);
    target_width = mpq_class(1, den);
}

Precision::Precision(mpq_class width, int refinements) : target_width(std::move(width)), max_refinements(refinements)
{
    target_width.canonicalize();
    if (sgn(target_width) <= 0)
        throw Error(ErrorKind::InvalidArgument, "target width must be positive");
    if (refinements < 1)
        throw Error(ErrorKind::InvalidArgument, "max_refinements must be positive");
}

Precision Precision::digits(long k, int refinements)
{
    if (k < 0)
        throw Error(ErrorKind::InvalidArgument, "digit count must be nonnegative");
    mpz_class den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, static_cast<unsigned long>(k));
    return Precision(mpq_class(1, den), refinements);
}

Precision Precision::refined() const
{
    mpq_class w = target_width * target_width;
    if (w >= target_width)
        w = target_width / 1024;
    return Precision(w, max_refinements);
}

long Precision::bits() const
{
    return std::max(1L, bit_length(target_width.get_den()) - bit_length(target_width.get_num()) + 1);
}

long Precision::decimal_digits() const
{
    mpz_class ratio = target_width.get_den() / target_width.get_num();
    long digits = 0;
    while (ratio >= 10) {
        ratio /= 10;
        ++digits;
    }
    return digits;
}

Interval iv_add(const Interval &x, const Interval &y) { return {x.lo + y.lo, x.hi + y.hi}; }

Interval iv_sub(const Interval &x, const Interval &y) { return {x.lo - y.hi, x.hi - y.lo}; }

Interval iv_neg(const Interval &x) { return {-x.hi, -x.lo}; }

Interval iv_mul(const Interval &x, const Interval &y)
{
    if (sgn(x.lo) >= 0 && sgn(y.lo) >= 0)
        return {x.lo * y.lo, x.hi * y.hi};
    const mpq_class p[4] = {x.lo * y.lo, x.lo * y.hi, x.hi * y.lo, x.hi * y.hi};
    return {*std::min_element(p, p + 4), *std::max_element(p, p + 4)};
}

Interval iv_div(const Interval &x, const Interval &y)
{
    if (y.contains(mpq_class(0)))
        throw Error(ErrorKind::DivisionByIntervalContainingZero, "divisor interval contains zero");
    return iv_mul(x, Interval{1 / y.hi, 1 / y.lo});
}

Interval pow_int(const Interval &x, unsigned long n)
{
    if (n == 0)
        return Interval::point(1);
    auto power = [n](const mpq_class &q) {
        mpz_class num, den;
        mpz_pow_ui(num.get_mpz_t(), q.get_num_mpz_t(), n);
        mpz_pow_ui(den.get_mpz_t(), q.get_den_mpz_t(), n);
        return mpq_class(num, den);
    };
    if (sgn(x.lo) >= 0)
        return {power(x.lo), power(x.hi)};
    if (n % 2 == 1)
        return {power(x.lo), power(x.hi)};
    if (sgn(x.hi) <= 0)
        return {power(x.hi), power(x.lo)};
    return {0, power(std::max(mpq_class(-x.lo), x.hi))};
}

Interval sqrt_enclosure(const mpq_class &x, const Precision &prec)
{
    if (sgn(x) < 0)
        throw Error(ErrorKind::NegativeInput, "sqrt of negative rational " + x.get_str());
    // sqrt(p/q) = sqrt(p q K^2) / (q K) with K = 2^k and q K >= 2^bits.
    const mpz_class &p = x.get_num();
    const mpz_class &q = x.get_den();
    const long k = std::max(0L, prec.bits() - bit_length(q) + 1);
    const mpz_class K = pow2(static_cast<unsigned long>(k));
    const mpz_class radicand = p * q * K * K;
    mpz_class s;
    mpz_sqrt(s.get_mpz_t(), radicand.get_mpz_t());
    const mpz_class scale = q * K;
    mpq_class lo(s, scale);
    lo.canonicalize();
    if (s * s == radicand)
        return Interval::point(lo);
    mpq_class hi(s + 1, scale);
    hi.canonicalize();
    return {lo, hi};
}

Interval ln2_enclosure(const Precision &prec) { return ln2_bits(prec.bits()); }

Interval ln_enclosure(const mpq_class &x, const Precision &prec)
{
    if (sgn(x) <= 0)
        throw Error(ErrorKind::NonpositiveInput, "log of nonpositive rational " + x.get_str());
    // x = m 2^k with 1 <= m < 2
    long k = bit_length(x.get_num()) - bit_length(x.get_den());
    mpq_class m = x;
    if (k > 0)
        mpq_div_2exp(m.get_mpq_t(), x.get_mpq_t(), static_cast<unsigned long>(k));
    else if (k < 0)
        mpq_mul_2exp(m.get_mpq_t(), x.get_mpq_t(), static_cast<unsigned long>(-k));
    while (m >= 2) {
        m /= 2;
        ++k;
    }
    while (m < 1) {
        m *= 2;
        --k;
    }
    const long bits = prec.bits();
    const Interval ln_m = m == 1 ? Interval::point(0) : two_atanh((m - 1) / (m + 1), bits + 1);
    if (k == 0)
        return ln_m;
    const unsigned long abs_k = static_cast<unsigned long>(std::labs(k));
    const Interval ln2 = ln2_bits(bits + 2 + ceil_log2(abs_k + 1));
    return ln_m + Interval::point(k) * ln2;
}

Interval pi_enclosure(const Precision &prec) { return pi_bits(prec.bits()); }

Verdict compare(const Interval &x, const Interval &y)
{
    if (x.hi < y.lo)
        return Verdict::Less;
    if (x.lo > y.hi)
        return Verdict::Greater;
    return Verdict::Overlap;
}

const char *to_string(Verdict v)
{
    switch (v) {
    case Verdict::Less: return "Less";
    case Verdict::Greater: return "Greater";
    case Verdict::Overlap: return "Overlap";
    }
    return "Overlap";
}

Verdict parse_verdict(std::string_view s)
{
    if (s == "Less")
        return Verdict::Less;
    if (s == "Greater")
        return Verdict::Greater;
    if (s == "Overlap")
        return Verdict::Overlap;
    throw Error(ErrorKind::InvalidArgument, "unknown verdict '" + std::string(s) + "'");
}

Interval outward(const Interval &x, long significant_bits)
{
    return {round_rel(x.lo, significant_bits, false), round_rel(x.hi, significant_bits, true)};
}

std::string to_fraction_string(const mpq_class &q)
{
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

mpq_class parse_rational(std::string_view text)
{
    std::string s(text);
    auto bad = [&] { return Error(ErrorKind::InvalidArgument, "not a rational number: '" + s + "'"); };
    if (s.empty())
        throw bad();
    auto is_integer = [](std::string_view t) {
        if (!t.empty() && (t.front() == '-' || t.front() == '+'))
            t.remove_prefix(1);
        return !t.empty() && std::all_of(t.begin(), t.end(), [](char ch) { return ch >= '0' && ch <= '9'; });
    };
    auto to_mpz = [](std::string t) {
        if (!t.empty() && t.front() == '+')
            t.erase(0, 1);
        return mpz_class(t, 10);
    };
    if (const auto slash = s.find('/'); slash != std::string::npos) {
        const std::string num = s.substr(0, slash), den = s.substr(slash + 1);
        if (!is_integer(num) || !is_integer(den) || den.front() == '-' || den.front() == '+')
            throw bad();
        const mpz_class d = to_mpz(den);
        if (d == 0)
            throw bad();
        mpq_class q(to_mpz(num), d);
        q.canonicalize();
        return q;
    }
    if (const auto dot = s.find('.'); dot != std::string::npos) {
        std::string whole = s.substr(0, dot), frac = s.substr(dot + 1);
        const bool negative = !whole.empty() && whole.front() == '-';
        if (!whole.empty() && (whole.front() == '-' || whole.front() == '+'))
            whole.erase(0, 1);
        if (whole.empty())
            whole = "0";
        if (frac.empty() || !is_integer(whole) || !is_integer(frac) || frac.front() == '-' || frac.front() == '+')
            throw bad();
        mpz_class den;
        mpz_ui_pow_ui(den.get_mpz_t(), 10, frac.size());
        mpq_class q(to_mpz(whole) * den + to_mpz(frac), den);
        q.canonicalize();
        return negative ? mpq_class(-q) : q;
    }
    if (!is_integer(s))
        throw bad();
    return mpq_class(to_mpz(s));
}

} // namespace genusbound
