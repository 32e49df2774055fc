#include "cftkit/sl2.hpp"

#include "cftkit/error.hpp"

namespace cftkit {

namespace {

void require_level(long k) {
    if (k < 0) throw UsageError("sl2 level must be nonnegative, got " + std::to_string(k));
}

void require_label(long k, long j) {
    require_level(k);
    if (j < 0 || j > k)
        throw UsageError("sl2 label j=" + std::to_string(j) + " out of range 0.." + std::to_string(k));
}

}  // namespace

Rational sl2_central_charge(long k) {
    require_level(k);
    return make_rational(3 * k, k + 2);
}

Rational sl2_weight(long k, long j) {
    require_label(k, j);
    return make_rational(j * (j + 2), 4 * (k + 2));
}

ModularData sl2_modular_data(long k) {
    require_level(k);
    ModularData d;
    d.theory = {Algebra::Sl2, k};
    const long n = k + 1, K = k + 2;
    d.central_charge = sl2_central_charge(k);
    d.s_order = 2 * K;
    d.s = Matrix<RootSum>(n, n, RootSum(d.s_order));
    for (long j = 0; j < n; ++j) {
        d.labels.push_back(std::to_string(j));
        d.weights.push_back(sl2_weight(k, j));
        d.t_phases.push_back(d.weights.back() - d.central_charge / 24);
    }
    for (long i = 0; i < n; ++i)
        for (long j = 0; j < n; ++j) {
            const long a = (i + 1) * (j + 1);
            d.s(i, j) = RootSum(d.s_order, {{a, 1}, {-a, -1}});
        }
    d.s_scale = Rational(-2 * K);
    return d;
}

PuiseuxSeries sl2_character(long k, long j, int order) {
    require_label(k, j);
    if (order < 1) throw UsageError("order must be positive");
    const long K = k + 2, lam = j + 1;
    std::vector<LaurentPoly> num(static_cast<std::size_t>(order)), den(static_cast<std::size_t>(order));
    for (long n = -order - 1; n <= order + 1; ++n) {
        const long dn = K * n * n + lam * n;
        if (dn >= 0 && dn < order) {
            num[dn].add_term(lam + 2 * K * n, 1);
            num[dn].add_term(-(lam + 2 * K * n), -1);
        }
        const long dd = 2 * n * n + n;
        if (dd >= 0 && dd < order) {
            den[dd].add_term(1 + 4 * n, 1);
            den[dd].add_term(-(1 + 4 * n), -1);
        }
    }
    std::vector<LaurentPoly> chi(static_cast<std::size_t>(order));
    for (int d = 0; d < order; ++d) {
        LaurentPoly rhs = num[d];
        for (int e = 1; e <= d; ++e)
            if (!den[e].is_zero() && !chi[d - e].is_zero()) rhs -= den[e] * chi[d - e];
        chi[d] = laurent_divide_exact(rhs, den[0]);
    }
    Rational lead = sl2_weight(k, j) - sl2_central_charge(k) / 24;
    if (lead != make_rational(lam * lam, 4 * K) - make_rational(1, 8))
        throw ConsistencyError("theta-quotient exponent disagrees with h - c/24");
    return PuiseuxSeries(lead, std::move(chi), true);
}

std::vector<long> sl2_fusion_closed_form(long k, long i, long j) {
    require_label(k, i);
    require_label(k, j);
    std::vector<long> out;
    const long lo = i > j ? i - j : j - i;
    const long hi = std::min(i + j, 2 * k - i - j);
    for (long l = lo; l <= hi; l += 2) out.push_back(l);
    return out;
}

Sl2ExtensionCatalogEntry sl2_simple_current_extension(long k) {
    require_level(k);
    if (k == 0 || k % 4 != 0)
        throw UsageError("no simple-current extension at level " + std::to_string(k) + ": h_" + std::to_string(k) +
                         " = " + to_string(sl2_weight(k, k)) + " is not a positive integer (requires k = 4n, n >= 1)");
    const long n = k / 4;
    Sl2ExtensionCatalogEntry e;
    e.name = "D(" + std::to_string(k) + ")";
    e.level = k;
    e.voa_modules = {0, k};
    for (long j = 0; j < 2 * n; j += 2) e.irreducibles.push_back({{j, k - j}, false});
    e.irreducibles.push_back({{2 * n}, false});
    e.irreducibles.push_back({{2 * n}, true});
    e.unitary = true;
    return e;
}

}  // namespace cftkit
