#pragma once

#include "cftkit/cyclotomic.hpp"

#include <utility>
#include <vector>

namespace cftkit {

/// Integer combination sum_e c_e zeta_N^e, exponents taken mod N. This is the
/// group-ring form of an element of Z[zeta_N]; two different RootSums may
/// represent the same field element, so comparisons go through reduction.
class RootSum {
public:
    using Term = std::pair<long, long>;  // (exponent in [0, N), coefficient)

    explicit RootSum(long order = 1) : order_(order) {}
    RootSum(long order, std::vector<Term> terms);

    static RootSum monomial(long order, long exponent, long coeff = 1);
    static RootSum integer(long order, long value) { return monomial(order, 0, value); }

    long order() const noexcept { return order_; }
    const std::vector<Term>& terms() const noexcept { return terms_; }
    bool formally_zero() const noexcept { return terms_.empty(); }
    long l1_norm() const;

    RootSum embedded(long m) const;
    RootSum shifted(long e) const;
    RootSum scaled(long c) const;
    RootSum operator-() const { return scaled(-1); }

    friend RootSum operator+(const RootSum& a, const RootSum& b);
    friend RootSum operator-(const RootSum& a, const RootSum& b);
    friend RootSum operator*(const RootSum& a, const RootSum& b);
    friend bool operator==(const RootSum& a, const RootSum& b) {
        return a.order_ == b.order_ && a.terms_ == b.terms_;
    }

    /// Canonical integer coordinates in the power basis of Q(zeta_N).
    std::vector<long> coords() const;
    Cyclotomic to_cyclotomic() const;
    bool is_zero() const;

private:
    long order_;
    std::vector<Term> terms_;
};

/// Dense accumulator over exponents 0..N-1, reduced once at the end.
class RootAccumulator {
public:
    explicit RootAccumulator(long order);

    long order() const noexcept { return order_; }
    void clear();
    void add(long exponent, long coeff);
    void add(const RootSum& s, long coeff = 1, long shift = 0);
    void add_product(const RootSum& a, const RootSum& b, long coeff = 1, long shift = 0);
    /// Adds (sum_t coords[t] zeta^t) * s.
    void add_coords_times(const std::vector<long>& coords, const RootSum& s, long shift = 0);

    bool formally_zero() const;
    std::vector<long> coords() const;
    bool is_zero() const;
    RootSum to_root_sum() const;
    const std::vector<long>& buffer() const noexcept { return buf_; }

private:
    long order_;
    std::vector<long> buf_;
};

/// Reduces sum_e buf[e] zeta^e (e in [0, N)) to canonical integer coordinates.
std::vector<long> reduce_group_ring(const CycloField& field, const long* buf, long n);

bool coords_zero(const std::vector<long>& c);
Cyclotomic coords_to_cyclotomic(long order, const std::vector<long>& c);

}  // namespace cftkit
