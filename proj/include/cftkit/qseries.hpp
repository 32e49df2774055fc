#pragma once

#include "cftkit/rational.hpp"

#include <map>
#include <string>
#include <vector>

namespace cftkit {

inline constexpr int kDefaultOrder = 20;

/// Finite sum of integer multiples of z^e, e in Z. Zero coefficients are never stored.
class LaurentPoly {
public:
    LaurentPoly() = default;
    static LaurentPoly constant(const Integer& c) { return monomial(0, c); }
    static LaurentPoly monomial(long exponent, const Integer& c = 1);
    /// z^j + z^{j-2} + ... + z^{-j}
    static LaurentPoly sl2_character(long j);

    const std::map<long, Integer>& coeffs() const noexcept { return coeffs_; }
    bool is_zero() const noexcept { return coeffs_.empty(); }
    bool is_constant() const;
    bool is_symmetric() const;
    Integer at(long exponent) const;
    Integer at_one() const;
    long min_exponent() const;
    long max_exponent() const;

    void add_term(long exponent, const Integer& c);

    LaurentPoly operator-() const;
    LaurentPoly& operator+=(const LaurentPoly& other);
    LaurentPoly& operator-=(const LaurentPoly& other);
    friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
    friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
    friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
    friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) { return a.coeffs_ == b.coeffs_; }
    friend bool operator!=(const LaurentPoly& a, const LaurentPoly& b) { return !(a == b); }

    /// e.g. "z^2 + 1 + z^-2"
    std::string to_string() const;

private:
    std::map<long, Integer> coeffs_;
};

/// Exact quotient; throws ConsistencyError when den does not divide num.
LaurentPoly laurent_divide_exact(const LaurentPoly& num, const LaurentPoly& den);

/// q^{leading_exponent} * sum_{d < order} coeffs[d] q^d.
class PuiseuxSeries {
public:
    PuiseuxSeries() = default;
    PuiseuxSeries(Rational leading_exponent, std::vector<LaurentPoly> coeffs, bool laurent);
    static PuiseuxSeries integer_series(Rational leading_exponent, const std::vector<Integer>& coeffs);
    static PuiseuxSeries unit(int order);

    const Rational& leading_exponent() const noexcept { return leading_; }
    int order() const noexcept { return static_cast<int>(coeffs_.size()); }
    const std::vector<LaurentPoly>& coeffs() const noexcept { return coeffs_; }
    const LaurentPoly& coeff(int d) const { return coeffs_.at(static_cast<std::size_t>(d)); }
    /// True when coefficients may carry z-dependence; false for integer series.
    bool laurent() const noexcept { return laurent_; }
    /// Integer coefficient at degree d; UsageError if it depends on z.
    Integer integer_coeff(int d) const;
    /// Coefficients with z set to 1.
    std::vector<Integer> graded_dimensions() const;

    PuiseuxSeries truncated(int order) const;
    friend bool operator==(const PuiseuxSeries& a, const PuiseuxSeries& b);

private:
    Rational leading_;
    std::vector<LaurentPoly> coeffs_;
    bool laurent_ = false;
};

/// Whether the leading exponents differ by an integer.
bool same_sector(const PuiseuxSeries& a, const PuiseuxSeries& b);

PuiseuxSeries series_mul(const PuiseuxSeries& a, const PuiseuxSeries& b);
PuiseuxSeries series_inv(const PuiseuxSeries& a);
/// Sum of two series in the same sector; the result starts at the smaller
/// exponent and is truncated where either input runs out.
PuiseuxSeries series_add(const PuiseuxSeries& a, const PuiseuxSeries& b);
PuiseuxSeries series_neg(const PuiseuxSeries& a);

/// sum_n p(n) q^n
PuiseuxSeries euler_phi_inverse(int order);
/// prod_{n >= 1} (1 - q^n)
PuiseuxSeries euler_product(int order);

}  // namespace cftkit
