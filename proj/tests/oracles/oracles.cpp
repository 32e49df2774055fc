#include "oracles.hpp"

#include <mpfr.h>

#include <cmath>

#include <numeric>
#include <stdexcept>

namespace oracle {

std::vector<mpz_class> partitions(int n) {
    std::vector<mpz_class> p(static_cast<std::size_t>(n), 0);
    if (n == 0) return p;
    p[0] = 1;
    for (int part = 1; part < n; ++part)
        for (int t = part; t < n; ++t) p[t] += p[t - part];
    return p;
}

std::vector<std::map<long, long>> affine_sl2_multiplicities(int k, int j, int depth) {
    const long K = k + 2;
    std::vector<std::map<long, long>> mult(static_cast<std::size_t>(depth) + 1);
    auto get = [&](long mu, long d) -> long {
        if (d < 0 || d > depth) return 0;
        auto it = mult[d].find(mu);
        return it == mult[d].end() ? 0 : it->second;
    };
    for (long d = 0; d <= depth; ++d) {
        const long top = j + 2 * d;
        for (long mu = top; mu >= -top; mu -= 2) {
            if (d == 0 && mu == j) {
                mult[0][mu] = 1;
                continue;
            }
            // 2 * ((Lambda+rho|Lambda+rho) - (lambda+rho|lambda+rho))
            long lhs2 = (long)(j + 1) * (j + 1) - (mu + 1) * (mu + 1) + 4 * d * K;
            // 2 * sum over positive roots beta, n >= 1 of mult(beta) (lambda + n beta | beta) mult(lambda + n beta)
            long rhs = 0;
            for (long n = 1; mu + 2 * n <= j + 2 * d; ++n) rhs += (mu + 2 * n) * get(mu + 2 * n, d);
            for (long l = 1; l <= d; ++l) {
                for (long n = 1; n * l <= d; ++n) {
                    const long dd = d - n * l;
                    rhs += (mu + l * k + 2 * n) * get(mu + 2 * n, dd);
                    rhs += (-mu + l * k + 2 * n) * get(mu - 2 * n, dd);
                    rhs += (l * k) * get(mu, dd);
                }
            }
            rhs *= 4;  // lhs2 is twice the norm difference
            if (lhs2 == 0) {
                if (rhs != 0) throw std::logic_error("Freudenthal: degenerate norm with nonzero sum");
                continue;
            }
            if (rhs % lhs2 != 0) throw std::logic_error("Freudenthal: non-integral multiplicity");
            long m = rhs / lhs2;
            if (m < 0) throw std::logic_error("Freudenthal: negative multiplicity");
            if (m) mult[d][mu] = m;
        }
    }
    return mult;
}

namespace {

using Mono = std::vector<int>;  // L_{-a1} ... L_{-ak} |h>, a1 >= ... >= ak >= 1
using State = std::map<Mono, mpq_class>;

struct Verma {
    mpq_class c, h;

    static int level(const Mono& m) { return std::accumulate(m.begin(), m.end(), 0); }

    void add(State& s, const Mono& m, const mpq_class& v) const {
        if (v == 0) return;
        auto& slot = s[m];
        slot += v;
        if (slot == 0) s.erase(m);
    }

    State apply(int n, const Mono& m) const {
        State out;
        if (n == 0) {
            add(out, m, h + level(m));
            return out;
        }
        if (m.empty()) {
            if (n < 0) add(out, Mono{-n}, 1);
            return out;
        }
        const int a1 = m[0];
        if (n < 0 && -n >= a1) {
            Mono r{-n};
            r.insert(r.end(), m.begin(), m.end());
            add(out, r, 1);
            return out;
        }
        Mono rest(m.begin() + 1, m.end());
        // L_n L_{-a1} R = L_{-a1} L_n R + (n + a1) L_{n-a1} R + delta_{n,a1} c/12 (n^3 - n) R
        for (const auto& [mono, coef] : apply(n, rest))
            for (const auto& [mono2, coef2] : apply(-a1, mono)) add(out, mono2, coef * coef2);
        if (n + a1 != 0)
            for (const auto& [mono, coef] : apply(n - a1, rest)) add(out, mono, coef * (n + a1));
        if (n == a1) add(out, rest, c * (mpq_class(n) * n * n - n) / 12);
        return out;
    }

    mpq_class inner(const Mono& left, const Mono& right) const {
        State s{{right, 1}};
        for (int part : left) {
            State next;
            for (const auto& [mono, coef] : s)
                for (const auto& [m2, c2] : apply(part, mono)) add(next, m2, coef * c2);
            s = std::move(next);
        }
        auto it = s.find(Mono{});
        return it == s.end() ? mpq_class(0) : it->second;
    }
};

void partitions_of(int n, int max_part, Mono& cur, std::vector<Mono>& out) {
    if (n == 0) {
        out.push_back(cur);
        return;
    }
    for (int p = std::min(n, max_part); p >= 1; --p) {
        cur.push_back(p);
        partitions_of(n - p, p, cur, out);
        cur.pop_back();
    }
}

long rank(std::vector<std::vector<mpq_class>> a) {
    long r = 0;
    const std::size_t rows = a.size(), cols = rows ? a[0].size() : 0;
    for (std::size_t col = 0; col < cols && r < (long)rows; ++col) {
        std::size_t piv = r;
        while (piv < rows && a[piv][col] == 0) ++piv;
        if (piv == rows) continue;
        std::swap(a[piv], a[r]);
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == (std::size_t)r || a[i][col] == 0) continue;
            mpq_class f = a[i][col] / a[r][col];
            for (std::size_t t = col; t < cols; ++t) a[i][t] -= f * a[r][t];
        }
        ++r;
    }
    return r;
}

}  // namespace

std::vector<long> virasoro_irreducible_dims(const mpq_class& c, const mpq_class& h, int depth) {
    Verma v{c, h};
    std::vector<long> dims;
    for (int n = 0; n <= depth; ++n) {
        std::vector<Mono> basis;
        Mono cur;
        partitions_of(n, n, cur, basis);
        std::vector<std::vector<mpq_class>> g(basis.size(), std::vector<mpq_class>(basis.size()));
        for (std::size_t i = 0; i < basis.size(); ++i)
            for (std::size_t j = 0; j < basis.size(); ++j) g[i][j] = v.inner(basis[i], basis[j]);
        dims.push_back(rank(g));
    }
    return dims;
}

Numeric root_sum_value(const std::vector<std::pair<long, mpq_class>>& terms, long n, long bits) {
    mpfr_t re, im, x, pi, q, s, c;
    mpfr_inits2(bits, re, im, x, pi, q, s, c, (mpfr_ptr)0);
    mpfr_set_zero(re, 1);
    mpfr_set_zero(im, 1);
    mpfr_const_pi(pi, MPFR_RNDN);
    for (const auto& [e, coef] : terms) {
        mpfr_mul_si(x, pi, 2 * e, MPFR_RNDN);
        mpfr_div_si(x, x, n, MPFR_RNDN);
        mpfr_sin_cos(s, c, x, MPFR_RNDN);
        mpfr_set_q(q, coef.get_mpq_t(), MPFR_RNDN);
        mpfr_mul(c, c, q, MPFR_RNDN);
        mpfr_mul(s, s, q, MPFR_RNDN);
        mpfr_add(re, re, c, MPFR_RNDN);
        mpfr_add(im, im, s, MPFR_RNDN);
    }
    Numeric out{mpfr_get_d(re, MPFR_RNDN), mpfr_get_d(im, MPFR_RNDN)};
    mpfr_clears(re, im, x, pi, q, s, c, (mpfr_ptr)0);
    return out;
}

namespace {

std::pair<long, long> reduce(long num, long den) {
    long g = std::gcd(num < 0 ? -num : num, den);
    if (g == 0) return {0, 1};
    return {num / g, den / g};
}

}  // namespace

std::pair<long, long> minimal_weight_fraction(long m, long r, long s) {
    long a = r * (m + 3) - s * (m + 2);
    return reduce(a * a - 1, 4 * (m + 2) * (m + 3));
}

std::pair<long, long> sl2_weight_fraction(long k, long j) { return reduce(j * (j + 2), 4 * (k + 2)); }

}  // namespace oracle

namespace oracle {

long commutant_dimension(const std::vector<std::vector<std::vector<double>>>& conjugates,
                         const std::vector<std::pair<long, long>>& weights) {
    const std::size_t n = weights.size();
    std::vector<std::pair<std::size_t, std::size_t>> unknowns;
    std::vector<long> index(n * n, -1);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            auto [a, b] = weights[i];
            auto [c, d] = weights[j];
            if ((a * d - c * b) % (b * d) == 0) {
                index[i * n + j] = static_cast<long>(unknowns.size());
                unknowns.emplace_back(i, j);
            }
        }
    const std::size_t u = unknowns.size();
    std::vector<std::vector<double>> rows;
    for (const auto& s : conjugates)
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b) {
                std::vector<double> row(u, 0.0);
                for (std::size_t l = 0; l < n; ++l) {
                    if (index[a * n + l] >= 0) row[index[a * n + l]] += s[l][b];
                    if (index[l * n + b] >= 0) row[index[l * n + b]] -= s[a][l];
                }
                rows.push_back(std::move(row));
            }
    std::size_t rank = 0;
    std::vector<bool> used(u, false);
    for (std::size_t step = 0; step < u; ++step) {
        double best = 0;
        std::size_t br = 0, bc = 0;
        for (std::size_t r = rank; r < rows.size(); ++r)
            for (std::size_t c = 0; c < u; ++c)
                if (!used[c] && std::abs(rows[r][c]) > best) {
                    best = std::abs(rows[r][c]);
                    br = r;
                    bc = c;
                }
        if (best < 1e-9) break;
        std::swap(rows[rank], rows[br]);
        used[bc] = true;
        for (std::size_t r = rank + 1; r < rows.size(); ++r) {
            double f = rows[r][bc] / rows[rank][bc];
            if (f == 0) continue;
            for (std::size_t c = 0; c < u; ++c) rows[r][c] -= f * rows[rank][c];
        }
        ++rank;
    }
    return static_cast<long>(u - rank);
}

std::vector<std::vector<std::vector<double>>> sl2_s_conjugates(long k) {
    const long n = k + 1, big = 2 * (k + 2);
    std::vector<std::vector<std::vector<double>>> out;
    for (long a = 1; a < big; ++a) {
        if (std::gcd(a, big) != 1) continue;
        std::vector<std::vector<double>> s(n, std::vector<double>(n));
        for (long i = 0; i < n; ++i)
            for (long j = 0; j < n; ++j) s[i][j] = std::sin(M_PI * a * (i + 1) * (j + 1) / (k + 2));
        out.push_back(std::move(s));
    }
    return out;
}

std::vector<std::vector<std::vector<double>>> minimal_s_conjugates(long m, std::vector<std::pair<long, long>>& weights) {
    const long p = m + 2, pp = m + 3, big = 2 * p * pp;
    std::vector<std::pair<long, long>> labels;  // (r, s), 1 <= r < p', 1 <= s < p
    for (long r = 1; r < pp; ++r)
        for (long s = 1; s < p; ++s)
            if (r < pp - r || (r == pp - r && s <= p - s)) labels.emplace_back(r, s);
    weights.clear();
    for (auto [r, s] : labels) weights.push_back(reduce((p * r - pp * s) * (p * r - pp * s) - 1, 4 * p * pp));
    std::vector<std::vector<std::vector<double>>> out;
    for (long a = 1; a < big; ++a) {
        if (std::gcd(a, big) != 1) continue;
        const std::size_t n = labels.size();
        std::vector<std::vector<double>> s(n, std::vector<double>(n));
        for (std::size_t x = 0; x < n; ++x)
            for (std::size_t y = 0; y < n; ++y) {
                auto [r, si] = labels[x];
                auto [rho, sigma] = labels[y];
                const double sign = ((1 + si * rho + r * sigma) % 2 == 0) ? 1.0 : -1.0;
                s[x][y] = sign * std::sin(M_PI * a * p * r * rho / pp) * std::sin(M_PI * a * pp * si * sigma / p);
            }
        out.push_back(std::move(s));
    }
    return out;
}

}  // namespace oracle
