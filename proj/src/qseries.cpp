#include "cftkit/qseries.hpp"

#include "cftkit/error.hpp"

#include <algorithm>
#include <sstream>

namespace cftkit {

LaurentPoly LaurentPoly::monomial(long exponent, const Integer& c) {
    LaurentPoly p;
    p.add_term(exponent, c);
    return p;
}

LaurentPoly LaurentPoly::sl2_character(long j) {
    LaurentPoly p;
    for (long e = -j; e <= j; e += 2) p.add_term(e, 1);
    return p;
}

bool LaurentPoly::is_constant() const { return coeffs_.empty() || (coeffs_.size() == 1 && coeffs_.begin()->first == 0); }

bool LaurentPoly::is_symmetric() const {
    for (const auto& [e, c] : coeffs_)
        if (at(-e) != c) return false;
    return true;
}

Integer LaurentPoly::at(long exponent) const {
    auto it = coeffs_.find(exponent);
    return it == coeffs_.end() ? Integer(0) : it->second;
}

Integer LaurentPoly::at_one() const {
    Integer s(0);
    for (const auto& [e, c] : coeffs_) s += c;
    return s;
}

long LaurentPoly::min_exponent() const {
    if (coeffs_.empty()) throw UsageError("zero Laurent polynomial has no exponent range");
    return coeffs_.begin()->first;
}

long LaurentPoly::max_exponent() const {
    if (coeffs_.empty()) throw UsageError("zero Laurent polynomial has no exponent range");
    return coeffs_.rbegin()->first;
}

void LaurentPoly::add_term(long exponent, const Integer& c) {
    if (c == 0) return;
    auto [it, inserted] = coeffs_.try_emplace(exponent, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) coeffs_.erase(it);
    }
}

LaurentPoly LaurentPoly::operator-() const {
    LaurentPoly out(*this);
    for (auto& [e, c] : out.coeffs_) c = -c;
    return out;
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& other) {
    for (const auto& [e, c] : other.coeffs_) add_term(e, c);
    return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& other) {
    for (const auto& [e, c] : other.coeffs_) add_term(e, -c);
    return *this;
}

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    LaurentPoly out;
    for (const auto& [e1, c1] : a.coeffs_)
        for (const auto& [e2, c2] : b.coeffs_) out.add_term(e1 + e2, c1 * c2);
    return out;
}

std::string LaurentPoly::to_string() const {
    if (coeffs_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
        const auto& [e, c] = *it;
        Integer mag = c < 0 ? Integer(-c) : c;
        if (first)
            os << (c < 0 ? "-" : "");
        else
            os << (c < 0 ? " - " : " + ");
        first = false;
        if (e == 0) {
            os << mag.get_str();
            continue;
        }
        if (mag != 1) os << mag.get_str() << "*";
        os << "z";
        if (e != 1) os << "^" << e;
    }
    return os.str();
}

LaurentPoly laurent_divide_exact(const LaurentPoly& num, const LaurentPoly& den) {
    if (den.is_zero()) throw UsageError("division by the zero Laurent polynomial");
    LaurentPoly rem(num), quot;
    const long dtop = den.max_exponent(), dlow = den.min_exponent();
    const Integer& lead = den.coeffs().rbegin()->second;
    const long qmin = num.is_zero() ? 0 : num.min_exponent() - dlow;
    while (!rem.is_zero()) {
        const long top = rem.max_exponent();
        if (top - dtop < qmin)
            throw ConsistencyError("Laurent division is not exact: remainder " + rem.to_string());
        const Integer& c = rem.coeffs().rbegin()->second;
        if (c % lead != 0)
            throw ConsistencyError("Laurent division is not exact: " + num.to_string() + " / " + den.to_string());
        LaurentPoly step = LaurentPoly::monomial(top - dtop, c / lead);
        quot += step;
        rem -= step * den;
    }
    return quot;
}

PuiseuxSeries::PuiseuxSeries(Rational leading_exponent, std::vector<LaurentPoly> coeffs, bool laurent)
    : leading_(std::move(leading_exponent)), coeffs_(std::move(coeffs)), laurent_(laurent) {
    if (!laurent_)
        for (const auto& c : coeffs_)
            if (!c.is_constant()) throw UsageError("integer series given a z-dependent coefficient");
}

PuiseuxSeries PuiseuxSeries::integer_series(Rational leading_exponent, const std::vector<Integer>& coeffs) {
    std::vector<LaurentPoly> c;
    c.reserve(coeffs.size());
    for (const auto& v : coeffs) c.push_back(LaurentPoly::constant(v));
    return PuiseuxSeries(std::move(leading_exponent), std::move(c), false);
}

PuiseuxSeries PuiseuxSeries::unit(int order) {
    std::vector<Integer> c(static_cast<std::size_t>(order), 0);
    if (order > 0) c[0] = 1;
    return integer_series(Rational(0), c);
}

Integer PuiseuxSeries::integer_coeff(int d) const {
    const LaurentPoly& c = coeff(d);
    if (!c.is_constant()) throw UsageError("coefficient at degree " + std::to_string(d) + " depends on z");
    return c.at(0);
}

std::vector<Integer> PuiseuxSeries::graded_dimensions() const {
    std::vector<Integer> out;
    out.reserve(coeffs_.size());
    for (const auto& c : coeffs_) out.push_back(c.at_one());
    return out;
}

PuiseuxSeries PuiseuxSeries::truncated(int order) const {
    PuiseuxSeries out(*this);
    if (order < out.order()) out.coeffs_.resize(static_cast<std::size_t>(std::max(order, 0)));
    return out;
}

bool operator==(const PuiseuxSeries& a, const PuiseuxSeries& b) {
    return a.leading_ == b.leading_ && a.coeffs_ == b.coeffs_;
}

bool same_sector(const PuiseuxSeries& a, const PuiseuxSeries& b) {
    return is_integer(Rational(a.leading_exponent() - b.leading_exponent()));
}

PuiseuxSeries series_mul(const PuiseuxSeries& a, const PuiseuxSeries& b) {
    const int order = std::min(a.order(), b.order());
    std::vector<LaurentPoly> c(static_cast<std::size_t>(order));
    for (int i = 0; i < order; ++i) {
        if (a.coeff(i).is_zero()) continue;
        for (int j = 0; i + j < order; ++j)
            if (!b.coeff(j).is_zero()) c[i + j] += a.coeff(i) * b.coeff(j);
    }
    return PuiseuxSeries(a.leading_exponent() + b.leading_exponent(), std::move(c), a.laurent() || b.laurent());
}

PuiseuxSeries series_inv(const PuiseuxSeries& a) {
    if (a.order() == 0) throw UsageError("cannot invert an empty series");
    const LaurentPoly& a0 = a.coeff(0);
    if (a0.coeffs().size() != 1 || (a0.coeffs().begin()->second != 1 && a0.coeffs().begin()->second != -1))
        throw UsageError("series_inv: leading coefficient " + a0.to_string() + " is not invertible");
    const long e0 = a0.coeffs().begin()->first;
    const Integer s0 = a0.coeffs().begin()->second;
    LaurentPoly inv0 = LaurentPoly::monomial(-e0, s0);
    std::vector<LaurentPoly> b(static_cast<std::size_t>(a.order()));
    b[0] = inv0;
    for (int d = 1; d < a.order(); ++d) {
        LaurentPoly acc;
        for (int e = 1; e <= d; ++e)
            if (!a.coeff(e).is_zero() && !b[d - e].is_zero()) acc += a.coeff(e) * b[d - e];
        b[d] = -(inv0 * acc);
    }
    return PuiseuxSeries(-a.leading_exponent(), std::move(b), a.laurent());
}

PuiseuxSeries series_add(const PuiseuxSeries& a, const PuiseuxSeries& b) {
    Rational diff = b.leading_exponent() - a.leading_exponent();
    if (!is_integer(diff))
        throw UsageError("series_add: exponents " + to_string(a.leading_exponent()) + " and " +
                         to_string(b.leading_exponent()) + " lie in different sectors");
    if (diff < 0) return series_add(b, a);
    const long shift = diff.get_num().get_si();
    const long order = std::min<long>(a.order(), b.order() + shift);
    std::vector<LaurentPoly> c(a.coeffs().begin(), a.coeffs().begin() + order);
    for (long d = shift; d < order; ++d) c[d] += b.coeff(static_cast<int>(d - shift));
    return PuiseuxSeries(a.leading_exponent(), std::move(c), a.laurent() || b.laurent());
}

PuiseuxSeries series_neg(const PuiseuxSeries& a) {
    std::vector<LaurentPoly> c;
    for (const auto& x : a.coeffs()) c.push_back(-x);
    return PuiseuxSeries(a.leading_exponent(), std::move(c), a.laurent());
}

PuiseuxSeries euler_product(int order) {
    if (order < 1) throw UsageError("order must be positive");
    std::vector<Integer> c(static_cast<std::size_t>(order), 0);
    c[0] = 1;
    for (int n = 1; n < order; ++n)
        for (int d = order - 1; d >= n; --d) c[d] -= c[d - n];
    return PuiseuxSeries::integer_series(Rational(0), c);
}

PuiseuxSeries euler_phi_inverse(int order) {
    if (order < 1) throw UsageError("order must be positive");
    // pentagonal-number recurrence
    std::vector<Integer> p(static_cast<std::size_t>(order), 0);
    p[0] = 1;
    for (long n = 1; n < order; ++n) {
        Integer s(0);
        for (long k = 1;; ++k) {
            const long g1 = k * (3 * k - 1) / 2, g2 = k * (3 * k + 1) / 2;
            if (g1 > n) break;
            const Integer term = p[n - g1] + (g2 <= n ? p[n - g2] : Integer(0));
            if (k % 2) s += term; else s -= term;
        }
        p[n] = s;
    }
    return PuiseuxSeries::integer_series(Rational(0), p);
}

}  // namespace cftkit
