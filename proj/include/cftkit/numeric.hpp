#pragma once

#include "cftkit/cyclotomic.hpp"
#include "cftkit/root_sum.hpp"

#include <mpfr.h>

#include <string>

namespace cftkit {

/// RAII wrapper around mpfr_t.
class BigFloat {
public:
    explicit BigFloat(long bits = 128);
    BigFloat(const BigFloat& other);
    BigFloat(BigFloat&& other) noexcept;
    BigFloat& operator=(const BigFloat& other);
    BigFloat& operator=(BigFloat&& other) noexcept;
    ~BigFloat();

    mpfr_ptr get() noexcept { return value_; }
    mpfr_srcptr get() const noexcept { return value_; }
    long precision() const { return static_cast<long>(mpfr_get_prec(value_)); }
    double to_double() const { return mpfr_get_d(value_, MPFR_RNDN); }
    std::string to_string(int digits = 20) const;

private:
    mpfr_t value_;
};

/// Box enclosure: the true value lies within `radius` of the midpoint in both
/// the real and the imaginary component.
struct ComplexInterval {
    BigFloat re;
    BigFloat im;
    BigFloat radius;

    explicit ComplexInterval(long bits = 128) : re(bits), im(bits), radius(bits) {}

    bool contains(const ComplexInterval& inner) const;
    /// Floors of the lower and upper ends of the real part.
    Integer floor_re_lower() const;
    Integer floor_re_upper() const;
    double radius_double() const { return radius.to_double(); }
    std::string to_string(int digits = 20) const;
};

ComplexInterval numeric_eval(const Cyclotomic& a, long precision_bits);
ComplexInterval numeric_eval(const RootSum& a, long precision_bits);
ComplexInterval interval_mul(const ComplexInterval& a, const ComplexInterval& b);

}  // namespace cftkit
