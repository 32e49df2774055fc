#include "cftkit/cyclotomic.hpp"

#include "cftkit/error.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <numeric>

namespace cftkit {

namespace {

using IntPoly = std::vector<Integer>;
using RatPoly = std::vector<Rational>;

void trim(IntPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

void trim(RatPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

// Exact quotient of a by the monic polynomial b; the remainder must vanish.
IntPoly divide_exact(IntPoly a, const IntPoly& b) {
    const std::size_t db = b.size() - 1;
    IntPoly q(a.size() - db, 0);
    for (std::size_t i = a.size(); i-- > db;) {
        Integer c = a[i];
        q[i - db] = c;
        if (c == 0) continue;
        for (std::size_t t = 0; t <= db; ++t) a[i - db + t] -= c * b[t];
    }
    for (const auto& r : a)
        if (r != 0) throw ConsistencyError("cyclotomic polynomial division left a remainder");
    return q;
}

std::mutex& poly_mutex() {
    static std::mutex m;
    return m;
}

}  // namespace

long euler_phi(long n) {
    if (n < 1) throw UsageError("euler_phi requires n >= 1");
    long result = n;
    long m = n;
    for (long p = 2; p * p <= m; ++p) {
        if (m % p) continue;
        while (m % p == 0) m /= p;
        result -= result / p;
    }
    if (m > 1) result -= result / m;
    return result;
}

const std::vector<Integer>& cyclotomic_polynomial(long n) {
    if (n < 1) throw UsageError("cyclotomic order must be positive");
    static std::map<long, std::unique_ptr<IntPoly>> cache;
    {
        std::lock_guard<std::mutex> lock(poly_mutex());
        auto it = cache.find(n);
        if (it != cache.end()) return *it->second;
    }
    std::vector<const IntPoly*> divisors;
    for (long d = 1; d < n; ++d)
        if (n % d == 0) divisors.push_back(&cyclotomic_polynomial(d));
    IntPoly p(static_cast<std::size_t>(n) + 1, 0);
    p[0] = -1;
    p[static_cast<std::size_t>(n)] = 1;
    for (const IntPoly* d : divisors) p = divide_exact(std::move(p), *d);
    trim(p);
    std::lock_guard<std::mutex> lock(poly_mutex());
    auto& slot = cache[n];
    if (!slot) slot = std::make_unique<IntPoly>(std::move(p));
    return *slot;
}

CycloField::CycloField(long n) : n_(n), phi_(euler_phi(n)) {
    const IntPoly& phi = cyclotomic_polynomial(n);
    phi_coeffs_.reserve(phi.size());
    for (const auto& c : phi) {
        if (!c.fits_slong_p()) throw ConsistencyError("cyclotomic coefficient exceeds machine range");
        phi_coeffs_.push_back(c.get_si());
    }
    span_ = (n % 2 == 0) ? n / 2 : n;
    table_.assign(static_cast<std::size_t>(span_ * phi_), 0);
    std::vector<__int128> cur(static_cast<std::size_t>(phi_), 0);
    cur[0] = 1;
    for (long e = 0; e < span_; ++e) {
        if (e > 0) {
            __int128 top = cur[static_cast<std::size_t>(phi_ - 1)];
            for (long t = phi_ - 1; t > 0; --t) cur[t] = cur[t - 1];
            cur[0] = 0;
            if (top != 0)
                for (long t = 0; t < phi_; ++t) cur[t] -= top * phi_coeffs_[t];
        }
        for (long t = 0; t < phi_; ++t) {
            __int128 v = cur[t];
            if (v > (__int128)(1L << 40) || v < -(__int128)(1L << 40))
                throw ConsistencyError("reduction table entry too large");
            long lv = static_cast<long>(v);
            table_[static_cast<std::size_t>(e * phi_ + t)] = lv;
            max_entry_ = std::max(max_entry_, lv < 0 ? -lv : lv);
        }
    }
}

std::pair<long, int> CycloField::fold(long e) const noexcept {
    long r = e % n_;
    if (r < 0) r += n_;
    if (n_ % 2 == 0 && r >= span_) return {r - span_, -1};
    return {r, 1};
}

const CycloField& cyclo_field(long n) {
    if (n < 1) throw UsageError("cyclotomic order must be positive");
    static std::mutex m;
    static std::map<long, std::unique_ptr<CycloField>> cache;
    {
        std::lock_guard<std::mutex> lock(m);
        auto it = cache.find(n);
        if (it != cache.end()) return *it->second;
    }
    auto field = std::make_unique<CycloField>(n);
    std::lock_guard<std::mutex> lock(m);
    auto& slot = cache[n];
    if (!slot) slot = std::move(field);
    return *slot;
}

long lcm_order(long a, long b) { return std::lcm(a, b); }

Cyclotomic::Cyclotomic(long order) : order_(order) {
    if (order < 1) throw UsageError("cyclotomic order must be positive");
    coords_.assign(static_cast<std::size_t>(euler_phi(order)), Rational(0));
}

Cyclotomic::Cyclotomic(long order, std::vector<Rational> coords) : order_(order), coords_(std::move(coords)) {
    if (order < 1) throw UsageError("cyclotomic order must be positive");
    if (static_cast<long>(coords_.size()) != euler_phi(order))
        throw UsageError("coordinate vector length must equal phi(N)");
    for (auto& c : coords_) c.canonicalize();
}

Cyclotomic Cyclotomic::from_rational(long order, const Rational& q) {
    Cyclotomic out(order);
    out.coords_[0] = q;
    return out;
}

Cyclotomic Cyclotomic::root(long order, long e) {
    const CycloField& f = cyclo_field(order);
    auto [idx, sign] = f.fold(e);
    Cyclotomic out(order);
    const long* row = f.power(idx);
    for (long t = 0; t < f.degree(); ++t)
        if (row[t]) out.coords_[t] = Rational(sign * row[t]);
    return out;
}

bool Cyclotomic::is_zero() const {
    for (const auto& c : coords_)
        if (c != 0) return false;
    return true;
}

bool Cyclotomic::is_rational() const {
    for (std::size_t t = 1; t < coords_.size(); ++t)
        if (coords_[t] != 0) return false;
    return true;
}

Rational Cyclotomic::rational_value() const {
    if (!is_rational()) throw UsageError("cyclotomic element is not rational");
    return coords_[0];
}

bool operator==(const Cyclotomic& a, const Cyclotomic& b) {
    if (a.order_ == b.order_) return a.coords_ == b.coords_;
    long m = lcm_order(a.order_, b.order_);
    return cyclo_embed(a, m).coords_ == cyclo_embed(b, m).coords_;
}

Cyclotomic Cyclotomic::operator-() const {
    Cyclotomic out(*this);
    for (auto& c : out.coords_) c = -c;
    return out;
}

Cyclotomic Cyclotomic::scaled(const Rational& q) const {
    Cyclotomic out(*this);
    for (auto& c : out.coords_) c *= q;
    return out;
}

namespace {

// sum_e poly[e] zeta^e with integer coefficients, reduced to coordinates.
IntPoly reduce_integer(const IntPoly& poly, const CycloField& f) {
    const long phi = f.degree();
    IntPoly out(static_cast<std::size_t>(phi), 0);
    for (std::size_t e = 0; e < poly.size(); ++e) {
        if (poly[e] == 0) continue;
        auto [idx, sign] = f.fold(static_cast<long>(e));
        const long* row = f.power(idx);
        for (long t = 0; t < phi; ++t) {
            if (row[t] != 0) out[t] += poly[e] * (sign * row[t]);
        }
    }
    return out;
}

// Writes q = num / den with a common positive denominator.
Integer common_denominator(const std::vector<Rational>& v) {
    Integer d(1);
    for (const auto& c : v)
        if (c != 0) mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), c.get_den_mpz_t());
    return d;
}

IntPoly numerators(const std::vector<Rational>& v, const Integer& den) {
    IntPoly out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i].get_num() * (den / v[i].get_den());
    return out;
}

Cyclotomic from_integer_coords(long order, const IntPoly& c, const Integer& den) {
    std::vector<Rational> q(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) {
        q[i] = Rational(c[i], den);
        q[i].canonicalize();
    }
    return Cyclotomic(order, std::move(q));
}

bool all_fit(const IntPoly& p, long limit) {
    for (const auto& c : p)
        if (c > limit || c < -limit) return false;
    return true;
}

}  // namespace

Cyclotomic cyclo_reduce(const std::vector<Rational>& coeffs, long n) {
    if (n < 1) throw UsageError("cyclo_reduce requires N >= 1");
    const CycloField& f = cyclo_field(n);
    Integer den = common_denominator(coeffs);
    return from_integer_coords(n, reduce_integer(numerators(coeffs, den), f), den);
}

Cyclotomic cyclo_embed(const Cyclotomic& a, long m) {
    if (m < 1 || m % a.order() != 0)
        throw UsageError("cannot embed Q(zeta_" + std::to_string(a.order()) + ") into Q(zeta_" +
                         std::to_string(m) + ")");
    if (m == a.order()) return a;
    const long step = m / a.order();
    std::vector<Rational> poly(static_cast<std::size_t>((a.coords().size() - 1) * step + 1), Rational(0));
    for (std::size_t t = 0; t < a.coords().size(); ++t) poly[t * step] = a.coords()[t];
    return cyclo_reduce(poly, m);
}

Cyclotomic cyclo_mul(const Cyclotomic& a, const Cyclotomic& b) {
    if (a.order() != b.order())
        throw UsageError("cyclo_mul order mismatch: " + std::to_string(a.order()) + " vs " +
                         std::to_string(b.order()));
    const CycloField& f = cyclo_field(a.order());
    const long phi = f.degree();
    Integer da = common_denominator(a.coords()), db = common_denominator(b.coords());
    IntPoly na = numerators(a.coords(), da), nb = numerators(b.coords(), db);
    IntPoly prod(static_cast<std::size_t>(2 * phi - 1), 0);
    constexpr long kSmall = 1L << 30;
    if (all_fit(na, kSmall) && all_fit(nb, kSmall) && phi < (1L << 20)) {
        std::vector<long> sa(na.size()), sb(nb.size());
        for (std::size_t i = 0; i < na.size(); ++i) sa[i] = na[i].get_si();
        for (std::size_t i = 0; i < nb.size(); ++i) sb[i] = nb[i].get_si();
        std::vector<__int128> acc(prod.size(), 0);
        for (long i = 0; i < phi; ++i) {
            if (!sa[i]) continue;
            for (long j = 0; j < phi; ++j) acc[i + j] += static_cast<__int128>(sa[i]) * sb[j];
        }
        for (std::size_t i = 0; i < acc.size(); ++i) prod[i] = to_integer(acc[i]);
    } else {
        for (long i = 0; i < phi; ++i) {
            if (na[i] == 0) continue;
            for (long j = 0; j < phi; ++j) prod[i + j] += na[i] * nb[j];
        }
    }
    return from_integer_coords(a.order(), reduce_integer(prod, f), Integer(da * db));
}

namespace {

RatPoly to_poly(const Cyclotomic& a) {
    RatPoly p(a.coords());
    trim(p);
    return p;
}

// (quotient, remainder) of a by b over Q.
std::pair<RatPoly, RatPoly> divmod(RatPoly a, const RatPoly& b) {
    const std::size_t db = b.size() - 1;
    if (a.size() < b.size()) return {RatPoly{}, a};
    RatPoly q(a.size() - db, Rational(0));
    Rational lead_inv = 1 / b.back();
    for (std::size_t i = a.size(); i-- > db;) {
        if (a[i] == 0) continue;
        Rational c = a[i] * lead_inv;
        q[i - db] = c;
        for (std::size_t t = 0; t <= db; ++t) a[i - db + t] -= c * b[t];
    }
    a.resize(db);
    trim(a);
    trim(q);
    return {q, a};
}

RatPoly poly_mul(const RatPoly& a, const RatPoly& b) {
    if (a.empty() || b.empty()) return {};
    RatPoly out(a.size() + b.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    }
    trim(out);
    return out;
}

RatPoly poly_sub(RatPoly a, const RatPoly& b) {
    if (a.size() < b.size()) a.resize(b.size(), Rational(0));
    for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
    trim(a);
    return a;
}

}  // namespace

Cyclotomic cyclo_inv(const Cyclotomic& a) {
    if (a.is_zero()) throw std::domain_error("cyclo_inv: division by zero");
    const long n = a.order();
    RatPoly r0;
    for (const auto& c : cyclotomic_polynomial(n)) r0.emplace_back(c);
    RatPoly r1 = to_poly(a);
    RatPoly s0, s1{Rational(1)};
    while (r1.size() > 1) {
        auto [q, r] = divmod(r0, r1);
        RatPoly s2 = poly_sub(s0, poly_mul(q, s1));
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s2);
        if (!r1.empty()) {
            // keep the remainder monic to curb coefficient growth
            Rational lead_inv = 1 / r1.back();
            for (auto& c : r1) c *= lead_inv;
            for (auto& c : s1) c *= lead_inv;
        }
    }
    if (r1.empty()) throw ConsistencyError("cyclo_inv: element shares a factor with Phi_N");
    Rational scale = 1 / r1[0];
    for (auto& c : s1) c *= scale;
    return cyclo_reduce(s1, n);
}

Cyclotomic two_i_sin(long a, long n) {
    if (n < 1) throw UsageError("two_i_sin requires n >= 1");
    return Cyclotomic::root(2 * n, a) - Cyclotomic::root(2 * n, -a);
}

Cyclotomic cyclo_galois(const Cyclotomic& a, long k) {
    const long n = a.order();
    if (std::gcd(k, n) != 1) throw UsageError("Galois exponent must be coprime to the order");
    long kk = ((k % n) + n) % n;
    std::vector<Rational> poly(static_cast<std::size_t>(n), Rational(0));
    for (std::size_t t = 0; t < a.coords().size(); ++t)
        poly[static_cast<std::size_t>((static_cast<long>(t) * kk) % n)] += a.coords()[t];
    return cyclo_reduce(poly, n);
}

Cyclotomic operator+(const Cyclotomic& a, const Cyclotomic& b) {
    if (a.order() != b.order()) {
        long m = lcm_order(a.order(), b.order());
        return cyclo_embed(a, m) + cyclo_embed(b, m);
    }
    std::vector<Rational> c(a.coords());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] += b.coords()[i];
    return Cyclotomic(a.order(), std::move(c));
}

Cyclotomic operator-(const Cyclotomic& a, const Cyclotomic& b) { return a + (-b); }

Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b) {
    if (a.order() != b.order()) {
        long m = lcm_order(a.order(), b.order());
        return cyclo_mul(cyclo_embed(a, m), cyclo_embed(b, m));
    }
    return cyclo_mul(a, b);
}

}  // namespace cftkit

namespace cftkit {

std::string to_string(const Cyclotomic& a) {
    std::string out;
    for (std::size_t t = 0; t < a.coords().size(); ++t) {
        const Rational& c = a.coords()[t];
        if (c == 0) continue;
        Rational mag = abs(c);
        if (out.empty())
            out += c < 0 ? "-" : "";
        else
            out += c < 0 ? " - " : " + ";
        if (t == 0) {
            out += to_string(mag);
            continue;
        }
        if (mag != 1) out += to_string(mag) + "*";
        out += "z";
        if (t != 1) out += "^" + std::to_string(t);
    }
    if (out.empty()) out = "0";
    return out + " (z = zeta_" + std::to_string(a.order()) + ")";
}

}  // namespace cftkit
