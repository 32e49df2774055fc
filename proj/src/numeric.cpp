#include "cftkit/numeric.hpp"

#include "cftkit/error.hpp"

#include <utility>

namespace cftkit {

BigFloat::BigFloat(long bits) {
    mpfr_init2(value_, static_cast<mpfr_prec_t>(bits));
    mpfr_set_zero(value_, 1);
}

BigFloat::BigFloat(const BigFloat& other) {
    mpfr_init2(value_, mpfr_get_prec(other.value_));
    mpfr_set(value_, other.value_, MPFR_RNDN);
}

BigFloat::BigFloat(BigFloat&& other) noexcept {
    mpfr_init2(value_, mpfr_get_prec(other.value_));
    mpfr_swap(value_, other.value_);
}

BigFloat& BigFloat::operator=(const BigFloat& other) {
    if (this != &other) {
        mpfr_set_prec(value_, mpfr_get_prec(other.value_));
        mpfr_set(value_, other.value_, MPFR_RNDN);
    }
    return *this;
}

BigFloat& BigFloat::operator=(BigFloat&& other) noexcept {
    mpfr_swap(value_, other.value_);
    return *this;
}

BigFloat::~BigFloat() { mpfr_clear(value_); }

std::string BigFloat::to_string(int digits) const {
    char* s = nullptr;
    mpfr_asprintf(&s, "%.*Rg", digits, value_);
    std::string out(s);
    mpfr_free_str(s);
    return out;
}

namespace {

// err += |x| * 2^(1 - prec(x)), an upper bound for one rounding of x.
void add_ulp(BigFloat& err, const BigFloat& x) {
    BigFloat t(64);
    mpfr_abs(t.get(), x.get(), MPFR_RNDU);
    mpfr_mul_2si(t.get(), t.get(), 1 - x.precision(), MPFR_RNDU);
    mpfr_add(err.get(), err.get(), t.get(), MPFR_RNDU);
}

struct Accumulator {
    long w;
    BigFloat re, im, err;
    BigFloat pi;

    explicit Accumulator(long bits) : w(bits), re(bits), im(bits), err(64), pi(bits) {
        mpfr_const_pi(pi.get(), MPFR_RNDN);
    }

    void add_to(BigFloat& sum, const BigFloat& x) {
        if (mpfr_add(sum.get(), sum.get(), x.get(), MPFR_RNDN) != 0) add_ulp(err, sum);
    }

    void sub_from(BigFloat& sum, const BigFloat& x) {
        if (mpfr_sub(sum.get(), sum.get(), x.get(), MPFR_RNDN) != 0) add_ulp(err, sum);
    }

    // Adds c * zeta_n^e.
    void term(const Rational& c, long e, long n) {
        if (c == 0) return;
        e %= n;
        if (e < 0) e += n;
        BigFloat cv(w);
        if (mpfr_set_q(cv.get(), c.get_mpq_t(), MPFR_RNDN) != 0) add_ulp(err, cv);
        if ((4 * e) % n == 0) {
            switch ((4 * e) / n) {
                case 0: add_to(re, cv); break;
                case 1: add_to(im, cv); break;
                case 2: sub_from(re, cv); break;
                default: sub_from(im, cv); break;
            }
            return;
        }
        BigFloat theta(w), cs(w), sn(w);
        mpfr_mul_si(theta.get(), pi.get(), 2 * e, MPFR_RNDN);
        mpfr_div_si(theta.get(), theta.get(), n, MPFR_RNDN);
        mpfr_sin_cos(sn.get(), cs.get(), theta.get(), MPFR_RNDN);
        // |theta| < 8 and three roundings: each of cos, sin is off by < 2^(6-w).
        BigFloat trig(64);
        mpfr_abs(trig.get(), cv.get(), MPFR_RNDU);
        mpfr_mul_2si(trig.get(), trig.get(), 7 - w, MPFR_RNDU);
        mpfr_add(err.get(), err.get(), trig.get(), MPFR_RNDU);
        BigFloat p(w);
        if (mpfr_mul(p.get(), cv.get(), cs.get(), MPFR_RNDN) != 0) add_ulp(err, p);
        add_to(re, p);
        if (mpfr_mul(p.get(), cv.get(), sn.get(), MPFR_RNDN) != 0) add_ulp(err, p);
        add_to(im, p);
    }

    ComplexInterval finish() {
        ComplexInterval out(w);
        out.re = re;
        out.im = im;
        mpfr_set(out.radius.get(), err.get(), MPFR_RNDU);
        return out;
    }
};

long working_precision(long bits, std::size_t terms) {
    if (bits < 32) throw UsageError("precision_bits must be at least 32");
    long extra = 16;
    while ((std::size_t(1) << (extra - 16)) < terms + 1) ++extra;
    return bits + extra;
}

}  // namespace

bool ComplexInterval::contains(const ComplexInterval& inner) const {
    BigFloat d(64), lim(64);
    for (int part = 0; part < 2; ++part) {
        const BigFloat& a = part == 0 ? re : im;
        const BigFloat& b = part == 0 ? inner.re : inner.im;
        BigFloat diff(std::max(a.precision(), b.precision()) + 2);
        mpfr_sub(diff.get(), a.get(), b.get(), MPFR_RNDN);
        mpfr_abs(d.get(), diff.get(), MPFR_RNDU);
        mpfr_add(d.get(), d.get(), inner.radius.get(), MPFR_RNDU);
        if (mpfr_cmp(d.get(), radius.get()) > 0) return false;
    }
    return true;
}

Integer ComplexInterval::floor_re_lower() const {
    BigFloat t(re.precision() + 8);
    mpfr_sub(t.get(), re.get(), radius.get(), MPFR_RNDD);
    Integer z;
    mpfr_get_z(z.get_mpz_t(), t.get(), MPFR_RNDD);
    return z;
}

Integer ComplexInterval::floor_re_upper() const {
    BigFloat t(re.precision() + 8);
    mpfr_add(t.get(), re.get(), radius.get(), MPFR_RNDU);
    Integer z;
    mpfr_get_z(z.get_mpz_t(), t.get(), MPFR_RNDD);
    return z;
}

std::string ComplexInterval::to_string(int digits) const {
    return re.to_string(digits) + " + " + im.to_string(digits) + "i +/- " + radius.to_string(3);
}

ComplexInterval numeric_eval(const Cyclotomic& a, long precision_bits) {
    Accumulator acc(working_precision(precision_bits, a.coords().size()));
    for (std::size_t t = 0; t < a.coords().size(); ++t) acc.term(a.coords()[t], static_cast<long>(t), a.order());
    return acc.finish();
}

ComplexInterval numeric_eval(const RootSum& a, long precision_bits) {
    Accumulator acc(working_precision(precision_bits, a.terms().size()));
    for (const auto& [e, c] : a.terms()) acc.term(Rational(c), e, a.order());
    return acc.finish();
}

ComplexInterval interval_mul(const ComplexInterval& a, const ComplexInterval& b) {
    const long w = std::max(a.re.precision(), b.re.precision());
    ComplexInterval out(w);
    BigFloat err(64), p(w), q(w);
    if (mpfr_mul(p.get(), a.re.get(), b.re.get(), MPFR_RNDN)) add_ulp(err, p);
    if (mpfr_mul(q.get(), a.im.get(), b.im.get(), MPFR_RNDN)) add_ulp(err, q);
    if (mpfr_sub(out.re.get(), p.get(), q.get(), MPFR_RNDN)) add_ulp(err, out.re);
    if (mpfr_mul(p.get(), a.re.get(), b.im.get(), MPFR_RNDN)) add_ulp(err, p);
    if (mpfr_mul(q.get(), a.im.get(), b.re.get(), MPFR_RNDN)) add_ulp(err, q);
    if (mpfr_add(out.im.get(), p.get(), q.get(), MPFR_RNDN)) add_ulp(err, out.im);
    // propagated error: 2 (|a| rb + |b| ra + ra rb) with |.| the max-norm of the midpoint
    BigFloat ma(64), mb(64), t(64), u(64);
    mpfr_abs(ma.get(), a.re.get(), MPFR_RNDU);
    mpfr_abs(t.get(), a.im.get(), MPFR_RNDU);
    mpfr_max(ma.get(), ma.get(), t.get(), MPFR_RNDU);
    mpfr_abs(mb.get(), b.re.get(), MPFR_RNDU);
    mpfr_abs(t.get(), b.im.get(), MPFR_RNDU);
    mpfr_max(mb.get(), mb.get(), t.get(), MPFR_RNDU);
    mpfr_mul(t.get(), ma.get(), b.radius.get(), MPFR_RNDU);
    mpfr_mul(u.get(), mb.get(), a.radius.get(), MPFR_RNDU);
    mpfr_add(t.get(), t.get(), u.get(), MPFR_RNDU);
    mpfr_mul(u.get(), a.radius.get(), b.radius.get(), MPFR_RNDU);
    mpfr_add(t.get(), t.get(), u.get(), MPFR_RNDU);
    mpfr_mul_2si(t.get(), t.get(), 1, MPFR_RNDU);
    mpfr_add(err.get(), err.get(), t.get(), MPFR_RNDU);
    mpfr_set(out.radius.get(), err.get(), MPFR_RNDU);
    return out;
}

}  // namespace cftkit
