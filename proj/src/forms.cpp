#include "genusbound/forms.hpp"

#include <algorithm>
#include <numeric>
#include <ostream>

#include "genusbound/error.hpp"

namespace genusbound {

namespace {

constexpr std::int64_t kEnumerationLimit = std::int64_t{1} << 62;

// Distinct prime factors of n by trial division; squarefree flag alongside.
struct Factorization
{
    int distinct = 0;
    bool squarefree = true;
};

Factorization factor_small(std::uint64_t n)
{
    Factorization out;
    auto take = [&](std::uint64_t p) {
        if (n % p != 0)
            return;
        ++out.distinct;
        n /= p;
        if (n % p == 0) {
            out.squarefree = false;
            while (n % p == 0)
                n /= p;
        }
    };
    take(2);
    take(3);
    for (std::uint64_t p = 5; p * p <= n; p += 6) {
        take(p);
        take(p + 2);
    }
    if (n > 1)
        ++out.distinct;
    return out;
}

Factorization factor_big(mpz_class n)
{
    Factorization out;
    for (mpz_class p = 2; p * p <= n; ++p) {
        if (!mpz_divisible_p(n.get_mpz_t(), p.get_mpz_t()))
            continue;
        ++out.distinct;
        n /= p;
        if (mpz_divisible_p(n.get_mpz_t(), p.get_mpz_t())) {
            out.squarefree = false;
            while (mpz_divisible_p(n.get_mpz_t(), p.get_mpz_t()))
                n /= p;
        }
    }
    if (n > 1)
        ++out.distinct;
    return out;
}

Factorization factor(const mpz_class &n)
{
    if (n.fits_ulong_p())
        return factor_small(n.get_ui());
    return factor_big(n);
}

long mod_pos(const mpz_class &x, unsigned long m)
{
    return static_cast<long>(mpz_fdiv_ui(x.get_mpz_t(), m));
}

mpz_class floor_div(const mpz_class &x, const mpz_class &y)
{
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
    return q;
}

// Translate so that -a < b <= a.
void normalize(QuadraticForm &f)
{
    const mpz_class two_a = 2 * f.a;
    if (-f.a < f.b && f.b <= f.a)
        return;
    const mpz_class r = floor_div(f.a - f.b, two_a);
    f.c = f.a * r * r + f.b * r + f.c;
    f.b += two_a * r;
}

std::int64_t isqrt64(std::int64_t n)
{
    mpz_class root;
    mpz_class v(static_cast<long>(n));
    mpz_sqrt(root.get_mpz_t(), v.get_mpz_t());
    return root.get_si();
}

// Reduced primitive forms of discriminant -n as int64 triples.
template <class Visit>
void visit_reduced(std::int64_t n, Visit &&visit)
{
    const std::int64_t b_max = isqrt64(n / 3);
    for (std::int64_t b = n % 2; b <= b_max; b += 2) {
        const std::int64_t m = (b * b + n) / 4;
        for (std::int64_t a = std::max<std::int64_t>(b, 1); a * a <= m; ++a) {
            if (m % a != 0)
                continue;
            const std::int64_t c = m / a;
            if (std::gcd(std::gcd(a, b), c) != 1)
                continue;
            visit(a, b, c);
            if (b != 0 && b != a && a != c)
                visit(a, -b, c);
        }
    }
}

void check_negative_discriminant(const mpz_class &D)
{
    if (sgn(D) >= 0)
        throw Error(ErrorKind::NotADiscriminant, "discriminant must be negative, got " + D.get_str());
    const long r = mod_pos(D, 4);
    if (r != 0 && r != 1)
        throw Error(ErrorKind::NotADiscriminant, D.get_str() + " is not 0 or 1 mod 4");
}

} // namespace

std::ostream &operator<<(std::ostream &os, const QuadraticForm &f)
{
    return os << '(' << f.a << ',' << f.b << ',' << f.c << ')';
}

Discriminant validate_discriminant(const mpz_class &D)
{
    check_negative_discriminant(D);
    const mpz_class n = -D;
    Discriminant out;
    out.value = D;
    const Factorization fac = factor(n);
    out.omega = fac.distinct;
    if (mod_pos(D, 4) == 1) {
        out.is_fundamental = fac.squarefree;
    } else {
        const mpz_class m = D / 4;
        const long r = mod_pos(m, 4);
        out.is_fundamental = (r == 2 || r == 3) && factor(-m).squarefree;
    }
    return out;
}

QuadraticForm principal_form(const mpz_class &D)
{
    check_negative_discriminant(D);
    if (mod_pos(D, 4) == 0)
        return {1, 0, -D / 4};
    return {1, 1, (1 - D) / 4};
}

bool is_reduced(const QuadraticForm &f)
{
    if (!(abs(f.b) <= f.a && f.a <= f.c))
        return false;
    if ((abs(f.b) == f.a || f.a == f.c) && f.b < 0)
        return false;
    return true;
}

bool is_ambiguous_reduced(const QuadraticForm &f)
{
    return f.b == 0 || f.a == f.b || f.a == f.c;
}

QuadraticForm reduce(const QuadraticForm &f)
{
    if (sgn(f.discriminant()) >= 0 || sgn(f.a) <= 0)
        throw Error(ErrorKind::NotPositiveDefinite, "form is not positive definite");
    QuadraticForm g = f;
    normalize(g);
    while (g.a > g.c) {
        swap(g.a, g.c);
        g.b = -g.b;
        normalize(g);
    }
    if (g.a == g.c && g.b < 0)
        g.b = -g.b;
    return g;
}

std::vector<QuadraticForm> enumerate_reduced(const Discriminant &D)
{
    check_negative_discriminant(D.value);
    const mpz_class n = -D.value;
    if (!n.fits_slong_p() || n.get_si() >= kEnumerationLimit)
        throw Error(ErrorKind::InvalidArgument, "discriminant too large to enumerate");
    std::vector<QuadraticForm> forms;
    visit_reduced(n.get_si(), [&](std::int64_t a, std::int64_t b, std::int64_t c) {
        forms.push_back({mpz_class(static_cast<long>(a)), mpz_class(static_cast<long>(b)),
                         mpz_class(static_cast<long>(c))});
    });
    std::sort(forms.begin(), forms.end(), [](const QuadraticForm &x, const QuadraticForm &y) {
        return x.a != y.a ? x.a < y.a : x.b < y.b;
    });
    return forms;
}

long class_number(const Discriminant &D)
{
    check_negative_discriminant(D.value);
    const mpz_class n = -D.value;
    if (!n.fits_slong_p() || n.get_si() >= kEnumerationLimit)
        throw Error(ErrorKind::InvalidArgument, "discriminant too large to enumerate");
    long h = 0;
    visit_reduced(n.get_si(), [&](std::int64_t, std::int64_t, std::int64_t) { ++h; });
    return h;
}

QuadraticForm compose(const QuadraticForm &f, const QuadraticForm &g)
{
    const mpz_class D = f.discriminant();
    if (D != g.discriminant())
        throw Error(ErrorKind::DiscriminantMismatch,
                    "cannot compose discriminants " + D.get_str() + " and " + g.discriminant().get_str());
    if (sgn(D) >= 0 || sgn(f.a) <= 0 || sgn(g.a) <= 0)
        throw Error(ErrorKind::NotPositiveDefinite, "form is not positive definite");

    // Unifier e = gcd(a1, a2, s) = u a1 + v a2 + w s.
    const mpz_class s = (f.b + g.b) / 2;
    mpz_class g1, x1, y1, e, x2, y2;
    mpz_gcdext(g1.get_mpz_t(), x1.get_mpz_t(), y1.get_mpz_t(), f.a.get_mpz_t(), g.a.get_mpz_t());
    mpz_gcdext(e.get_mpz_t(), x2.get_mpz_t(), y2.get_mpz_t(), g1.get_mpz_t(), s.get_mpz_t());
    const mpz_class u = x2 * x1;
    const mpz_class v = x2 * y1;
    const mpz_class &w = y2;

    const mpz_class A = f.a * g.a / (e * e);
    const mpz_class numer = u * f.a * g.b + v * g.a * f.b + w * ((f.b * g.b + D) / 2);
    mpz_class B = numer / e;
    const mpz_class two_A = 2 * A;
    B -= two_A * floor_div(B, two_A);
    const mpz_class C = (B * B - D) / (4 * A);
    return reduce({A, B, C});
}

GenusReport genus_report(const Discriminant &D)
{
    GenusReport r;
    r.D = D;
    r.reduced_forms = enumerate_reduced(D);
    r.h = static_cast<long>(r.reduced_forms.size());
    r.ambiguous_count = std::count_if(r.reduced_forms.begin(), r.reduced_forms.end(),
                                      [](const QuadraticForm &f) { return is_ambiguous_reduced(f); });
    r.genus_count = r.ambiguous_count;
    r.one_class_per_genus = r.h == r.genus_count;
    if (D.is_fundamental && r.ambiguous_count != (1L << (D.omega - 1)))
        throw Error(ErrorKind::GenusCrossCheckFailed,
                    "ambiguous count " + std::to_string(r.ambiguous_count) + " for D=" + D.value.get_str());
    return r;
}

std::vector<GenusReport> search_ocpg(long limit, SearchMode mode)
{
    if (limit < 3)
        throw Error(ErrorKind::InvalidArgument, "search limit must be at least 3");
    const std::int64_t bound = mode == SearchMode::Idoneal ? 4 * std::int64_t{limit} : limit;

    // Sieve over reduced primitive triples: one pass yields h and the
    // ambiguous count for every |D| <= bound.
    std::vector<std::int32_t> h(bound + 1, 0), amb(bound + 1, 0);
    for (std::int64_t a = 1; 3 * a * a <= bound; ++a) {
        for (std::int64_t b = -a + 1; b <= a; ++b) {
            for (std::int64_t c = a;; ++c) {
                const std::int64_t n = 4 * a * c - b * b;
                if (n > bound)
                    break;
                if (b < 0 && a == c)
                    continue;
                if (std::gcd(std::gcd(a, b < 0 ? -b : b), c) != 1)
                    continue;
                ++h[n];
                if (b == 0 || b == a || a == c)
                    ++amb[n];
            }
        }
    }

    std::vector<GenusReport> out;
    const std::int64_t step = mode == SearchMode::Idoneal ? 4 : 1;
    for (std::int64_t n = mode == SearchMode::Idoneal ? 4 : 3; n <= bound; n += step) {
        if (n % 4 != 0 && n % 4 != 3)
            continue;
        if (h[n] != amb[n])
            continue;
        const Discriminant D = validate_discriminant(mpz_class(-static_cast<long>(n)));
        if (mode == SearchMode::Fundamental && !D.is_fundamental)
            continue;
        out.push_back(genus_report(D));
    }
    return out;
}

} // namespace genusbound
