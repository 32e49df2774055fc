#pragma once

#include "cftkit/minimal.hpp"
#include "cftkit/modinv.hpp"
#include "cftkit/modular_data.hpp"

#include <string>
#include <utility>
#include <vector>

namespace cftkit {

/// L(m, n) (x) L(1, eps) = sum over pairs of L(c_m, h_kac) (x) L(m+1, s).
struct BranchingRule {
    long m = 1;
    long n = 0;
    long eps = 0;
    std::vector<std::pair<KacLabel, long>> pairs;

    /// h_kac + h_s - h_n - h_eps for each pair.
    std::vector<Rational> weight_offsets() const;
};

BranchingRule gko_decomposition(long m, long n, long eps);

struct GkoReport {
    bool passed = false;
    bool aligned = false;       // every pair lies in the sector of the left side
    int order = 0;
    Rational leading_exponent;  // of the left side
    std::string mismatch;       // first differing (q, z) coefficient, or the sector failure
};

/// Two-variable character identity checked coefficient by coefficient.
GkoReport verify_gko(long m, long n, long eps, int order);

enum class Unitarity { Proven, Unknown };
std::string to_string(Unitarity u);

struct ExtensionSpec {
    TheoryId base;
    std::vector<std::string> labels;  // canonical labels of the base theory
    std::vector<long> multiplicities;
    std::string name;
    Unitarity unitary = Unitarity::Proven;
};

/// Label strings are "j" for sl2 and "(r,s)" for minimal models.
std::string canonical_label(const TheoryId& base, const std::string& label);
Rational label_weight(const TheoryId& base, const std::string& label);
KacLabel parse_kac_label(long m, const std::string& text);
/// Parses "(1,1),(7,1)" into canonical labels.
std::vector<KacLabel> parse_kac_labels(long m, const std::string& text);

ExtensionSpec make_extension(const TheoryId& base, const std::vector<std::string>& labels,
                             const std::string& name = "", Unitarity unitary = Unitarity::Proven);

struct WeightReport {
    std::vector<std::pair<std::string, Rational>> weights;
    std::vector<bool> integral;
    bool passed = false;
};

WeightReport integral_weight_check(const ExtensionSpec& ext);

struct EmbeddingTarget {
    std::string name;
    long dimension = 0;
    long dual_coxeter = 0;
};

inline const EmbeddingTarget kB2 = {"B2", 10, 3};
inline const EmbeddingTarget kG2 = {"G2", 14, 4};

struct EmbeddingReport {
    Rational sl2_central_charge;
    Rational target_central_charge;
    long weight_one_dimension = 0;
    bool central_charge_ok = false;
    bool dimension_ok = false;

    bool passed() const { return central_charge_ok && dimension_ok; }
};

/// Central charges of sl2 at level k and of the target at level 1, and
/// 3 + sum of (j+1) over catalog summands j with h_j = 1 against dim(target).
EmbeddingReport conformal_embedding_check(long k, const EmbeddingTarget& target);

ExtensionSpec coset_commutant_extension(const ExtensionSpec& affine_ext, long m);
ExtensionSpec mirror_extension(long m, const ExtensionSpec& affine_ext);

struct NamedVOA {
    Algebra algebra = Algebra::Sl2;
    std::string tag;  // "diagonal", "D", "E6", "E8"
    long param = 0;
    std::string name;
};

NamedVOA make_named_voa(Algebra algebra, const std::string& tag, long param, const std::string& name);

struct CatalogEntry {
    ExtensionSpec spec;
    ExtensionDecomposition decomposition;
    NamedVOA voa;
    std::string invariant_tag;  // declared type of the resulting invariant
};

std::vector<CatalogEntry> catalog_extensions(const TheoryId& theory);

struct Classification {
    bool accepted = false;
    NamedVOA voa;
    std::string reason;  // why the input was rejected
};

/// Extensions of L(c_m, 0) with c < 1, decided against the catalog.
Classification classify_preunitary(const Rational& c, const std::vector<KacLabel>& summands);
/// Extensions of L_sl2(k, 0), decided against the catalog.
Classification classify_affine(long k, const std::vector<long>& summands);

}  // namespace cftkit
