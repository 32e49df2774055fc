#pragma once

#include "cftkit/rational.hpp"

#include <cstdint>
#include <vector>

namespace cftkit {

/// Coefficients of the N-th cyclotomic polynomial, constant term first.
/// Obtained by exact division of x^N - 1 by Phi_d for every proper divisor d.
const std::vector<Integer>& cyclotomic_polynomial(long n);

long euler_phi(long n);

/// Per-order data shared by all elements of Q(zeta_N): Phi_N and the table of
/// x^e mod Phi_N for 0 <= e < N (or N/2 when N is even, using x^{N/2} = -1).
class CycloField {
public:
    explicit CycloField(long n);

    long order() const noexcept { return n_; }
    long degree() const noexcept { return phi_; }
    const std::vector<long>& phi_coeffs() const noexcept { return phi_coeffs_; }

    /// Exponent range covered by the reduction table.
    long table_span() const noexcept { return span_; }
    /// Canonical coordinates of zeta^e for 0 <= e < table_span().
    const long* power(long e) const { return table_.data() + e * phi_; }
    long max_table_entry() const noexcept { return max_entry_; }

    /// Maps an arbitrary exponent to (index into table, sign).
    std::pair<long, int> fold(long e) const noexcept;

private:
    long n_;
    long phi_;
    long span_;
    long max_entry_ = 0;
    std::vector<long> phi_coeffs_;
    std::vector<long> table_;
};

/// Thread-safe cache of fields by order.
const CycloField& cyclo_field(long n);

/// Element of Q(zeta_N) in the power basis 1, zeta, ..., zeta^{phi(N)-1}.
class Cyclotomic {
public:
    Cyclotomic() : Cyclotomic(1) {}
    explicit Cyclotomic(long order);
    Cyclotomic(long order, std::vector<Rational> coords);

    static Cyclotomic zero(long order) { return Cyclotomic(order); }
    static Cyclotomic one(long order) { return from_rational(order, Rational(1)); }
    static Cyclotomic from_rational(long order, const Rational& q);
    /// zeta_N^e for any integer e.
    static Cyclotomic root(long order, long e);

    long order() const noexcept { return order_; }
    const std::vector<Rational>& coords() const noexcept { return coords_; }
    bool is_zero() const;
    bool is_rational() const;
    /// Value when is_rational(); throws UsageError otherwise.
    Rational rational_value() const;

    friend bool operator==(const Cyclotomic& a, const Cyclotomic& b);
    friend bool operator!=(const Cyclotomic& a, const Cyclotomic& b) { return !(a == b); }

    Cyclotomic operator-() const;
    Cyclotomic scaled(const Rational& q) const;

private:
    long order_;
    std::vector<Rational> coords_;
};

/// Canonical representative of sum_a coeffs[a] zeta^a; any length is accepted.
Cyclotomic cyclo_reduce(const std::vector<Rational>& coeffs, long n);
/// Image under zeta_N -> zeta_M^{M/N}; requires N | M.
Cyclotomic cyclo_embed(const Cyclotomic& a, long m);
Cyclotomic cyclo_mul(const Cyclotomic& a, const Cyclotomic& b);
Cyclotomic cyclo_inv(const Cyclotomic& a);
/// zeta_{2n}^a - zeta_{2n}^{-a} = 2i sin(pi a / n).
Cyclotomic two_i_sin(long a, long n);
/// Image under the Galois automorphism zeta -> zeta^k, gcd(k, N) = 1.
Cyclotomic cyclo_galois(const Cyclotomic& a, long k);

/// Mixed-order arithmetic lifts both operands to the lcm of their orders.
Cyclotomic operator+(const Cyclotomic& a, const Cyclotomic& b);
Cyclotomic operator-(const Cyclotomic& a, const Cyclotomic& b);
Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b);

long lcm_order(long a, long b);

}  // namespace cftkit

namespace cftkit {

/// e.g. "1/2 + z^3 - 2*z^5 (z = zeta_12)"
std::string to_string(const Cyclotomic& a);

}  // namespace cftkit
