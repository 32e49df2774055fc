#pragma once

#include "cftkit/modular_data.hpp"
#include "cftkit/qseries.hpp"

#include <string>
#include <vector>

namespace cftkit {

/// Kac-table label (r, s) of the model with index m, p = m+2, p' = m+3.
struct KacLabel {
    long m = 1;
    long r = 1;
    long s = 1;

    std::string to_string() const { return "(" + std::to_string(r) + "," + std::to_string(s) + ")"; }
    friend bool operator==(const KacLabel&, const KacLabel&) = default;
    friend auto operator<=>(const KacLabel&, const KacLabel&) = default;
};

Rational minimal_central_charge(long m);
/// h^m_{r,s} = ((r(m+3) - s(m+2))^2 - 1) / (4(m+2)(m+3))
Rational minimal_weight(long m, long r, long s);
/// Representative of {(r,s), (m+2-r, m+3-s)} with the smaller r, then the smaller s.
KacLabel kac_canonical(long m, long r, long s);

struct MinimalModel {
    long m = 1;
    long p = 3;
    long p_prime = 4;
    std::vector<KacLabel> labels;  // canonical, sorted, (1,1) first

    std::size_t index_of(long r, long s) const;
};

MinimalModel minimal_model(long m);

ModularData minimal_modular_data(long m);

/// Rocha-Caridi character, integer coefficients.
PuiseuxSeries minimal_character(long m, const KacLabel& label, int order = kDefaultOrder);

/// Solves c = 1 - 6/((m+2)(m+3)) for an integer m >= 0; returns -1 if none.
long minimal_index_for_central_charge(const Rational& c);

}  // namespace cftkit
