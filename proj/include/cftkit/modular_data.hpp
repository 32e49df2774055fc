#pragma once

#include "cftkit/cyclotomic.hpp"
#include "cftkit/matrix.hpp"
#include "cftkit/numeric.hpp"
#include "cftkit/rational.hpp"
#include "cftkit/root_sum.hpp"

#include <string>
#include <vector>

namespace cftkit {

enum class Algebra { Sl2, Minimal };

/// Which theory a ModularData describes: sl2 at level `param`, or the
/// Virasoro minimal model with index m = `param`.
struct TheoryId {
    Algebra algebra = Algebra::Sl2;
    long param = 0;

    std::string name() const;
    std::string algebra_name() const { return algebra == Algebra::Sl2 ? "sl2" : "minimal"; }
    std::string param_name() const { return algebra == Algebra::Sl2 ? "level" : "m"; }
    friend bool operator==(const TheoryId&, const TheoryId&) = default;
};

TheoryId parse_algebra(const std::string& algebra, long param);

struct ModularData {
    TheoryId theory;
    std::vector<std::string> labels;  // index 0 is the vacuum
    Rational central_charge;
    std::vector<Rational> weights;
    /// Unnormalized S with entries in Z[zeta_N], N = s_order; S / sqrt(s_scale) is unitary.
    long s_order = 1;
    Matrix<RootSum> s;
    Rational s_scale;
    std::vector<Rational> t_phases;  // h_i - c/24

    std::size_t size() const noexcept { return labels.size(); }
    Cyclotomic s_entry(std::size_t i, std::size_t j) const { return s(i, j).to_cyclotomic(); }
    Matrix<Cyclotomic> s_matrix() const;
    /// Order of T: lcm of the denominators of the phases.
    long t_order() const;
    std::size_t index_of(const std::string& label) const;
};

struct RelationReport {
    bool symmetric = false;
    bool square_is_charge_conjugation = false;  // S^2 = lambda C
    bool modular_relation = false;              // ((S T)^3)^2 = lambda S^4
    bool t_finite = false;
    bool row0_positive = false;
    std::vector<std::size_t> charge_conjugation;
    long t_order = 0;
    std::string failed_relation;  // empty when everything holds
    std::string witness;

    bool passed() const { return failed_relation.empty(); }
    bool charge_conjugation_is_identity() const;
};

RelationReport check_modular_relations(const ModularData& data);
/// Throws ConsistencyError naming the failed relation.
RelationReport require_modular_relations(const ModularData& data);

/// N[i][j][l], stored densely.
class FusionRules {
public:
    explicit FusionRules(std::size_t n = 0) : n_(n), data_(n * n * n, 0) {}
    std::size_t size() const noexcept { return n_; }
    long& operator()(std::size_t i, std::size_t j, std::size_t l) { return data_[(i * n_ + j) * n_ + l]; }
    long operator()(std::size_t i, std::size_t j, std::size_t l) const { return data_[(i * n_ + j) * n_ + l]; }
    friend bool operator==(const FusionRules&, const FusionRules&) = default;

private:
    std::size_t n_;
    std::vector<long> data_;
};

/// Verlinde formula evaluated exactly; entries must be nonnegative integers.
FusionRules verlinde_fusion(const ModularData& data);

struct QuantumDimension {
    Cyclotomic exact;
    ComplexInterval numeric;
};
std::vector<QuantumDimension> quantum_dims(const ModularData& data, long precision_bits = 128);

std::vector<std::size_t> simple_currents(const ModularData& data);
std::vector<std::size_t> simple_currents(const ModularData& data, const FusionRules& fusion);

/// Gauss-Jordan inverse over Q(zeta); throws ConsistencyError if singular.
Matrix<Cyclotomic> cyclo_matrix_inverse(const Matrix<Cyclotomic>& a);

}  // namespace cftkit
