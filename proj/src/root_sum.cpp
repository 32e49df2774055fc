#include "cftkit/root_sum.hpp"

#include "cftkit/error.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace cftkit {

namespace {

inline long mod(long e, long n) {
    long r = e % n;
    return r < 0 ? r + n : r;
}

inline long checked_add(long a, long b) {
    long r;
    if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("root sum coefficient overflow");
    return r;
}

inline long checked_mul(long a, long b) {
    long r;
    if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("root sum coefficient overflow");
    return r;
}

std::vector<long> finish(const std::vector<__int128>& acc) {
    std::vector<long> out(acc.size());
    for (std::size_t t = 0; t < acc.size(); ++t) {
        if (acc[t] > (__int128)INT64_MAX || acc[t] < (__int128)INT64_MIN)
            throw std::overflow_error("cyclotomic coordinate overflow");
        out[t] = static_cast<long>(acc[t]);
    }
    return out;
}

}  // namespace

RootSum::RootSum(long order, std::vector<Term> terms) : order_(order) {
    if (order < 1) throw UsageError("root sum order must be positive");
    for (auto& [e, c] : terms) e = mod(e, order);
    std::sort(terms.begin(), terms.end());
    for (const auto& [e, c] : terms) {
        if (!terms_.empty() && terms_.back().first == e)
            terms_.back().second = checked_add(terms_.back().second, c);
        else
            terms_.emplace_back(e, c);
    }
    std::erase_if(terms_, [](const Term& t) { return t.second == 0; });
}

RootSum RootSum::monomial(long order, long exponent, long coeff) {
    return RootSum(order, {{exponent, coeff}});
}

long RootSum::l1_norm() const {
    long s = 0;
    for (const auto& t : terms_) s = checked_add(s, t.second < 0 ? -t.second : t.second);
    return s;
}

RootSum RootSum::embedded(long m) const {
    if (m % order_ != 0) throw UsageError("root sum embedding requires N | M");
    const long step = m / order_;
    std::vector<Term> t(terms_);
    for (auto& [e, c] : t) e *= step;
    return RootSum(m, std::move(t));
}

RootSum RootSum::shifted(long e) const {
    std::vector<Term> t(terms_);
    for (auto& term : t) term.first += e;
    return RootSum(order_, std::move(t));
}

RootSum RootSum::scaled(long c) const {
    std::vector<Term> t(terms_);
    for (auto& term : t) term.second = checked_mul(term.second, c);
    return RootSum(order_, std::move(t));
}

namespace {

std::pair<RootSum, RootSum> lift(const RootSum& a, const RootSum& b) {
    if (a.order() == b.order()) return {a, b};
    long m = lcm_order(a.order(), b.order());
    return {a.embedded(m), b.embedded(m)};
}

}  // namespace

RootSum operator+(const RootSum& a, const RootSum& b) {
    auto [x, y] = lift(a, b);
    std::vector<RootSum::Term> t(x.terms());
    t.insert(t.end(), y.terms().begin(), y.terms().end());
    return RootSum(x.order(), std::move(t));
}

RootSum operator-(const RootSum& a, const RootSum& b) { return a + (-b); }

RootSum operator*(const RootSum& a, const RootSum& b) {
    auto [x, y] = lift(a, b);
    std::vector<RootSum::Term> t;
    t.reserve(x.terms().size() * y.terms().size());
    for (const auto& [e1, c1] : x.terms())
        for (const auto& [e2, c2] : y.terms()) t.emplace_back(e1 + e2, checked_mul(c1, c2));
    return RootSum(x.order(), std::move(t));
}

std::vector<long> RootSum::coords() const {
    const CycloField& f = cyclo_field(order_);
    std::vector<__int128> acc(static_cast<std::size_t>(f.degree()), 0);
    for (const auto& [e, c] : terms_) {
        auto [idx, sign] = f.fold(e);
        const long* row = f.power(idx);
        const __int128 w = static_cast<__int128>(sign) * c;
        for (long t = 0; t < f.degree(); ++t)
            if (row[t]) acc[t] += w * row[t];
    }
    return finish(acc);
}

Cyclotomic RootSum::to_cyclotomic() const { return coords_to_cyclotomic(order_, coords()); }

bool RootSum::is_zero() const { return terms_.empty() || coords_zero(coords()); }

std::vector<long> reduce_group_ring(const CycloField& f, const long* buf, long n) {
    if (n != f.order()) throw UsageError("buffer length must equal the field order");
    const long span = f.table_span();
    std::vector<__int128> folded(static_cast<std::size_t>(span), 0);
    for (long e = 0; e < n; ++e) {
        if (!buf[e]) continue;
        if (e < span)
            folded[e] += buf[e];
        else
            folded[e - span] -= buf[e];
    }
    std::vector<__int128> acc(static_cast<std::size_t>(f.degree()), 0);
    const long phi = f.degree();
    for (long idx = 0; idx < span; ++idx) {
        const __int128 w = folded[idx];
        if (!w) continue;
        if (idx < phi) {
            acc[idx] += w;
            continue;
        }
        const long* row = f.power(idx);
        for (long t = 0; t < phi; ++t)
            if (row[t]) acc[t] += w * row[t];
    }
    return finish(acc);
}

bool coords_zero(const std::vector<long>& c) {
    return std::all_of(c.begin(), c.end(), [](long v) { return v == 0; });
}

Cyclotomic coords_to_cyclotomic(long order, const std::vector<long>& c) {
    std::vector<Rational> q;
    q.reserve(c.size());
    for (long v : c) q.emplace_back(v);
    return Cyclotomic(order, std::move(q));
}

RootAccumulator::RootAccumulator(long order) : order_(order), buf_(static_cast<std::size_t>(order), 0) {
    if (order < 1) throw UsageError("accumulator order must be positive");
}

void RootAccumulator::clear() { std::fill(buf_.begin(), buf_.end(), 0); }

void RootAccumulator::add(long exponent, long coeff) {
    long& slot = buf_[static_cast<std::size_t>(mod(exponent, order_))];
    slot = checked_add(slot, coeff);
}

void RootAccumulator::add(const RootSum& s, long coeff, long shift) {
    if (s.order() != order_) {
        if (order_ % s.order() != 0) throw UsageError("root sum order does not divide accumulator order");
        const long step = order_ / s.order();
        for (const auto& [e, c] : s.terms()) add(e * step + shift, checked_mul(c, coeff));
        return;
    }
    for (const auto& [e, c] : s.terms()) add(e + shift, checked_mul(c, coeff));
}

void RootAccumulator::add_product(const RootSum& a, const RootSum& b, long coeff, long shift) {
    if (order_ % a.order() != 0 || order_ % b.order() != 0)
        throw UsageError("root sum order does not divide accumulator order");
    const long sa = order_ / a.order(), sb = order_ / b.order();
    for (const auto& [e1, c1] : a.terms()) {
        const long c1k = checked_mul(c1, coeff);
        for (const auto& [e2, c2] : b.terms()) add(e1 * sa + e2 * sb + shift, checked_mul(c1k, c2));
    }
}

void RootAccumulator::add_coords_times(const std::vector<long>& coords, const RootSum& s, long shift) {
    if (order_ % s.order() != 0) throw UsageError("root sum order does not divide accumulator order");
    const long step = order_ / s.order();
    for (const auto& [e, c] : s.terms()) {
        const long base = e * step + shift;
        for (std::size_t t = 0; t < coords.size(); ++t)
            if (coords[t]) add(base + static_cast<long>(t), checked_mul(coords[t], c));
    }
}

bool RootAccumulator::formally_zero() const {
    return std::all_of(buf_.begin(), buf_.end(), [](long v) { return v == 0; });
}

std::vector<long> RootAccumulator::coords() const {
    return reduce_group_ring(cyclo_field(order_), buf_.data(), order_);
}

bool RootAccumulator::is_zero() const { return formally_zero() || coords_zero(coords()); }

RootSum RootAccumulator::to_root_sum() const {
    std::vector<RootSum::Term> t;
    for (long e = 0; e < order_; ++e)
        if (buf_[e]) t.emplace_back(e, buf_[e]);
    return RootSum(order_, std::move(t));
}

}  // namespace cftkit
