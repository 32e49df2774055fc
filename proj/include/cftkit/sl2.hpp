#pragma once

#include "cftkit/modular_data.hpp"
#include "cftkit/qseries.hpp"

#include <string>
#include <vector>

namespace cftkit {

Rational sl2_central_charge(long k);
/// h_j = j(j+2) / (4(k+2))
Rational sl2_weight(long k, long j);

/// Labels j = 0..k; S_ij = 2i sin(pi (i+1)(j+1) / (k+2)), s_scale = -2(k+2).
ModularData sl2_modular_data(long k);

/// Characters graded by L0 and the Cartan weight; the z-exponent is the
/// Dynkin label of the weight (twice the spin).
PuiseuxSeries sl2_character(long k, long j, int order = kDefaultOrder);

std::vector<long> sl2_fusion_closed_form(long k, long i, long j);

/// One irreducible module of an extension, as a multiset of base labels.
/// `sigma` marks the second module structure on the same space.
struct Sl2Module {
    std::vector<long> labels;
    bool sigma = false;
    friend bool operator==(const Sl2Module&, const Sl2Module&) = default;
};

struct Sl2ExtensionCatalogEntry {
    std::string name;
    long level = 0;
    std::vector<long> voa_modules;
    std::vector<Sl2Module> irreducibles;
    bool unitary = true;
};

/// L(k,0) + L(k,k) for k = 4n, with its irreducible modules.
Sl2ExtensionCatalogEntry sl2_simple_current_extension(long k);

}  // namespace cftkit
