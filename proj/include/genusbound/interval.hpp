#pragma once

#include <string>
#include <string_view>

#include <gmpxx.h>

namespace genusbound {

/// Closed interval with exact rational endpoints.
struct Interval
{
    mpq_class lo;
    mpq_class hi;

    static Interval point(const mpq_class &x) { return {x, x}; }

    mpq_class width() const { return hi - lo; }
    bool is_valid() const { return lo <= hi; }
    bool contains(const mpq_class &x) const { return lo <= x && x <= hi; }
    bool contains(const Interval &inner) const { return lo <= inner.lo && inner.hi <= hi; }
    bool overlaps(const Interval &o) const { return lo <= o.hi && o.lo <= hi; }

    friend bool operator==(const Interval &x, const Interval &y) { return x.lo == y.lo && x.hi == y.hi; }
};

/// Width target for enclosures and the escalation budget used by callers
/// that retry comparisons at higher precision.
struct Precision
{
    mpq_class target_width{1, 1};
    int max_refinements = 20;

    Precision();
    Precision(mpq_class width, int refinements = 20);

    static Precision digits(long k, int refinements = 20);

    /// Squares the target width.
    Precision refined() const;

    /// Smallest b with 2^-b <= target_width (at least 1).
    long bits() const;
    /// Decimal digits implied by target_width, rounded down.
    long decimal_digits() const;
};

Interval iv_add(const Interval &x, const Interval &y);
Interval iv_sub(const Interval &x, const Interval &y);
Interval iv_mul(const Interval &x, const Interval &y);
Interval iv_div(const Interval &x, const Interval &y);
Interval iv_neg(const Interval &x);

inline Interval operator+(const Interval &x, const Interval &y) { return iv_add(x, y); }
inline Interval operator-(const Interval &x, const Interval &y) { return iv_sub(x, y); }
inline Interval operator*(const Interval &x, const Interval &y) { return iv_mul(x, y); }
inline Interval operator/(const Interval &x, const Interval &y) { return iv_div(x, y); }
inline Interval operator-(const Interval &x) { return iv_neg(x); }

Interval pow_int(const Interval &x, unsigned long n);

Interval sqrt_enclosure(const mpq_class &x, const Precision &prec);
Interval ln_enclosure(const mpq_class &x, const Precision &prec);
Interval ln2_enclosure(const Precision &prec);
Interval pi_enclosure(const Precision &prec);

enum class Verdict { Less, Greater, Overlap };

/// Less iff x.hi < y.lo, Greater iff x.lo > y.hi.
Verdict compare(const Interval &x, const Interval &y);

const char *to_string(Verdict v);
Verdict parse_verdict(std::string_view s);

/// Rounds lo down and hi up to `significant_bits` bits relative to each
/// endpoint's magnitude. The result always contains the input.
Interval outward(const Interval &x, long significant_bits);

/// "p/q" with decimal integers, denominator always present.
std::string to_fraction_string(const mpq_class &q);

/// Accepts "p/q", "p", or a plain decimal such as "-0.655".
mpq_class parse_rational(std::string_view text);

} // namespace genusbound
