#include "cftkit/minimal.hpp"

#include "cftkit/error.hpp"

#include <algorithm>
#include <numeric>

namespace cftkit {

namespace {

void require_index(long m, long min) {
    if (m < min) throw UsageError("minimal model index must be >= " + std::to_string(min) + ", got " + std::to_string(m));
}

void require_kac(long m, long r, long s) {
    require_index(m, 0);
    if (r < 1 || r > m + 1 || s < 1 || s > m + 2)
        throw UsageError("Kac label (" + std::to_string(r) + "," + std::to_string(s) + ") out of range for m=" +
                         std::to_string(m));
}

}  // namespace

Rational minimal_central_charge(long m) {
    require_index(m, 0);
    return 1 - make_rational(6, (m + 2) * (m + 3));
}

Rational minimal_weight(long m, long r, long s) {
    require_kac(m, r, s);
    const long a = r * (m + 3) - s * (m + 2);
    return make_rational(a * a - 1, 4 * (m + 2) * (m + 3));
}

KacLabel kac_canonical(long m, long r, long s) {
    require_kac(m, r, s);
    const long r2 = m + 2 - r, s2 = m + 3 - s;
    if (r < r2 || (r == r2 && s <= s2)) return {m, r, s};
    return {m, r2, s2};
}

std::size_t MinimalModel::index_of(long r, long s) const {
    KacLabel c = kac_canonical(m, r, s);
    auto it = std::lower_bound(labels.begin(), labels.end(), c);
    if (it == labels.end() || *it != c) throw ConsistencyError("canonical label missing from the Kac table");
    return static_cast<std::size_t>(it - labels.begin());
}

MinimalModel minimal_model(long m) {
    require_index(m, 0);
    MinimalModel mm;
    mm.m = m;
    mm.p = m + 2;
    mm.p_prime = m + 3;
    for (long r = 1; r <= m + 1; ++r)
        for (long s = 1; s <= m + 2; ++s)
            if (kac_canonical(m, r, s) == KacLabel{m, r, s}) mm.labels.push_back({m, r, s});
    if (static_cast<long>(mm.labels.size()) != (m + 1) * (m + 2) / 2)
        throw ConsistencyError("Kac table has the wrong number of labels");
    return mm;
}

ModularData minimal_modular_data(long m) {
    require_index(m, 1);
    const MinimalModel mm = minimal_model(m);
    const long p = mm.p, pp = mm.p_prime;
    const std::size_t n = mm.labels.size();
    ModularData d;
    d.theory = {Algebra::Minimal, m};
    d.central_charge = minimal_central_charge(m);
    d.s_order = std::lcm(2 * p, 2 * pp);
    const long up = d.s_order / (2 * p), upp = d.s_order / (2 * pp);
    for (const auto& l : mm.labels) {
        d.labels.push_back(l.to_string());
        d.weights.push_back(minimal_weight(m, l.r, l.s));
        d.t_phases.push_back(d.weights.back() - d.central_charge / 24);
    }
    d.s = Matrix<RootSum>(n, n, RootSum(d.s_order));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const KacLabel& a = mm.labels[i];
            const KacLabel& b = mm.labels[j];
            // (-1)^{s rho + r sigma} (2i sin(pi p' r rho / p)) (2i sin(pi p s sigma / p'))
            const long sign = ((a.s * b.r + a.r * b.s) % 2 == 0) ? 1 : -1;
            const long x = pp * a.r * b.r * up, y = p * a.s * b.s * upp;
            RootSum f1(d.s_order, {{x, 1}, {-x, -1}});
            RootSum f2(d.s_order, {{y, 1}, {-y, -1}});
            d.s(i, j) = (f1 * f2).scaled(sign);
        }
    d.s_scale = Rational(2 * p * pp);
    return d;
}

PuiseuxSeries minimal_character(long m, const KacLabel& label, int order) {
    require_kac(m, label.r, label.s);
    if (order < 1) throw UsageError("order must be positive");
    const long p = m + 2, pp = m + 3, r = label.r, s = label.s;
    std::vector<Integer> num(static_cast<std::size_t>(order), 0);
    for (long k = -order - 1; k <= order + 1; ++k) {
        const long e1 = p * pp * k * k + k * (pp * r - p * s);
        const long e2 = p * pp * k * k + k * (pp * r + p * s) + r * s;
        if (e1 >= 0 && e1 < order) num[e1] += 1;
        if (e2 >= 0 && e2 < order) num[e2] -= 1;
    }
    PuiseuxSeries chi = series_mul(PuiseuxSeries::integer_series(Rational(0), num), euler_phi_inverse(order));
    std::vector<Integer> coeffs = chi.graded_dimensions();
    for (std::size_t d = 0; d < coeffs.size(); ++d)
        if (coeffs[d] < 0)
            throw ConsistencyError("negative character coefficient at degree " + std::to_string(d) + " for " +
                                   label.to_string());
    if (coeffs[0] != 1) throw ConsistencyError("character does not start with a single highest-weight vector");
    return PuiseuxSeries::integer_series(minimal_weight(m, r, s) - minimal_central_charge(m) / 24, coeffs);
}

long minimal_index_for_central_charge(const Rational& c) {
    if (c >= 1) return -1;
    // (m+2)(m+3) = 6 / (1 - c)
    Rational x = 6 / (1 - c);
    if (!is_integer(x)) return -1;
    const Integer v = x.get_num();
    if (!v.fits_slong_p()) return -1;
    const long target = v.get_si();
    long lo = 0, hi = 1;
    while ((hi + 2) * (hi + 3) < target) hi *= 2;
    while (lo < hi) {
        long mid = (lo + hi) / 2;
        if ((mid + 2) * (mid + 3) < target) lo = mid + 1; else hi = mid;
    }
    return (lo + 2) * (lo + 3) == target ? lo : -1;
}

}  // namespace cftkit
