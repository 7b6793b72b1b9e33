#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include <gmpxx.h>

namespace genusbound {

/// Positive definite binary quadratic form a x^2 + b x y + c y^2.
struct QuadraticForm
{
    mpz_class a;
    mpz_class b;
    mpz_class c;

    mpz_class discriminant() const { return b * b - 4 * a * c; }

    friend bool operator==(const QuadraticForm &x, const QuadraticForm &y)
    {
        return x.a == y.a && x.b == y.b && x.c == y.c;
    }
};

std::ostream &operator<<(std::ostream &os, const QuadraticForm &f);

struct Discriminant
{
    mpz_class value;
    bool is_fundamental = false;
    /// Number of distinct primes dividing |D|.
    int omega = 0;
};

struct GenusReport
{
    Discriminant D;
    long h = 0;
    long ambiguous_count = 0;
    long genus_count = 0;
    bool one_class_per_genus = false;
    std::vector<QuadraticForm> reduced_forms;
};

enum class SearchMode { All, Fundamental, Idoneal };

/// Checks D < 0 and D = 0, 1 (mod 4); classifies fundamentality by trial
/// division, so |D| should stay well inside the range where that is cheap.
Discriminant validate_discriminant(const mpz_class &D);

/// (1, 0, |D|/4) or (1, 1, (1 + |D|)/4).
QuadraticForm principal_form(const mpz_class &D);

bool is_reduced(const QuadraticForm &f);

/// Reduced form whose class has order at most two.
bool is_ambiguous_reduced(const QuadraticForm &f);

QuadraticForm reduce(const QuadraticForm &f);

/// Primitive reduced forms of discriminant D, sorted by (a, b).
/// Requires |D| < 2^62.
std::vector<QuadraticForm> enumerate_reduced(const Discriminant &D);

long class_number(const Discriminant &D);

/// Dirichlet composition followed by reduction.
QuadraticForm compose(const QuadraticForm &f, const QuadraticForm &g);

GenusReport genus_report(const Discriminant &D);

/// Discriminants with one class per genus, ascending in |D|. For
/// SearchMode::Idoneal the range is D = -4n with 1 <= n <= limit.
std::vector<GenusReport> search_ocpg(long limit, SearchMode mode);

} // namespace genusbound
