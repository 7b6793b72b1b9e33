#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "genusbound/interval.hpp"
#include "genusbound/lfunc.hpp"

namespace genusbound {

/// One certified strict inequality lhs > rhs.
struct CheckRecord
{
    std::string name;
    Interval lhs;
    Interval rhs;
    Verdict verdict = Verdict::Overlap;
};

inline constexpr const char *kCheckNames[4] = {"domain_check", "head_check", "tail_check", "slope_check"};

/// Proof that no fundamental -d with one class per genus satisfies
/// hypothesis and d > d_g_star (with w = 2 units).
struct CutoffCertificate
{
    BoundHypothesis hypothesis;
    long g_star = 0;
    mpz_class d_g_star;
    long next_prime = 0;
    long min_genus = 0;
    std::vector<CheckRecord> checks;
    long precision_digits = 0;

    // Verdicts at g_star - 1; informational only.
    long previous_g = 0;
    std::vector<CheckRecord> previous_checks;
};

/// First primes, their products d_g and enclosures of ln d_g by per-prime
/// summation.
class PrimorialTable
{
  public:
    explicit PrimorialTable(long count);

    long size() const { return static_cast<long>(primes_.size()); }
    /// 1-based.
    long prime(long n) const;
    /// Product of the first g primes.
    const mpz_class &primorial(long g) const;
    /// Encloses sum_{i <= g} ln p_i with width at most the target width.
    Interval log_primorial(long g, const Precision &prec) const;
    Interval log_prime(long n, const Precision &prec) const;

  private:
    // ln p_i enclosures keyed by fractional bits; filled on demand.
    struct LogCache
    {
        std::mutex mu;
        std::map<long, std::vector<Interval>> by_bits;
    };

    const std::vector<Interval> &log_primes(long bits) const;

    std::vector<long> primes_;
    std::vector<mpz_class> products_;
    std::shared_ptr<LogCache> logs_ = std::make_shared<LogCache>();
};

long nth_prime(long n);
mpz_class primorial(long g);

/// c sqrt(d) / (pi (ln d)^A), with ln_d an enclosure of ln d.
Interval F_eval(const BoundHypothesis &hyp, const mpz_class &d, const Interval &ln_d, const Precision &prec);

/// c sqrt(d) (sqrt(p)/2) / (pi (ln d + ln p)^A).
Interval tail_eval(const BoundHypothesis &hyp, const mpz_class &d, const Interval &ln_d, long p, const Interval &ln_p,
                   const Precision &prec);

/// The four inequalities of the cutoff argument at genus index g0.
std::vector<CheckRecord> evaluate_checks(const BoundHypothesis &hyp, long g0, const PrimorialTable &table,
                                         const Precision &prec);

/// Least g with 2^(g-1) > lower endpoint of F(d_g0).
long min_genus_bound(const BoundHypothesis &hyp, long g0, const Precision &prec);

CutoffCertificate find_cutoff(const BoundHypothesis &hyp, long g_max = 1000, const Precision &prec = Precision::digits(80));

/// Re-derives every value in the certificate from scratch; never throws.
bool verify_certificate(const CutoffCertificate &cert, const Precision &prec);

/// Exponent 4A + 18 obtained with log T = (log d)^(A + 6).
unsigned ci_exponent(unsigned A);

} // namespace genusbound
