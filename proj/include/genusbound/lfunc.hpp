#pragma once

#include <cstdint>

#include <gmpxx.h>

#include "genusbound/interval.hpp"

namespace genusbound {

/// Assumed lower bound L(1, chi) >= coeff * (log d)^(-exponent).
struct BoundHypothesis
{
    mpq_class coeff{1};
    unsigned exponent = 18;

    BoundHypothesis() = default;
    BoundHypothesis(mpq_class c, unsigned a);

    /// c = 1, A = 18.
    static BoundHypothesis conrey_iwaniec();
    /// c = 655000/2718282, a rational lower bound for 0.655/e; A = 1.
    static BoundHypothesis tatuzawa();
};

/// Kronecker symbol (D | n).
int kronecker(std::int64_t D, std::int64_t n);

/// Number of units of Q(sqrt(-d)).
int unit_count(std::int64_t d);

/// sum_{a=1}^{d-1} chi(a) a with chi = (-d | .). Requires -d fundamental
/// and d < 2^31.
std::int64_t character_sum(std::int64_t d);

/// w |S| / (2 d).
long analytic_class_number(std::int64_t d);

/// Enclosure of L(1, chi) = pi |S| / d^(3/2) with width <= target width.
Interval l_one(std::int64_t d, const Precision &prec);

/// c (log d)^(-A).
Interval bound_value(std::int64_t d, const BoundHypothesis &hyp, const Precision &prec);

enum class BoundVerdict { Holds, Fails, Indeterminate };

const char *to_string(BoundVerdict v);

struct BoundCheck
{
    BoundVerdict verdict = BoundVerdict::Indeterminate;
    Interval l1;
    Interval bound;
    long digits = 0;
};

/// Compares l_one(d) with the hypothesised bound, refining the precision up
/// to prec.max_refinements times while the enclosures overlap.
BoundCheck bound_check(std::int64_t d, const BoundHypothesis &hyp, const Precision &prec);

} // namespace genusbound
