#pragma once

#include "cftkit/matrix.hpp"
#include "cftkit/modular_data.hpp"
#include "cftkit/rational.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace cftkit {

struct ModularInvariant {
    std::vector<std::string> basis;
    IntMatrix matrix;
    std::string tag;  // empty when unclassified

    friend bool operator==(const ModularInvariant&, const ModularInvariant&) = default;
};

/// Multiplicity vectors over the base labels, one per irreducible module of
/// the extension; the first row is the extension itself.
struct ExtensionDecomposition {
    std::vector<std::vector<long>> rows;
};

struct InvariantReport {
    std::string failed_axiom;  // "M1", "M2", "M3a", "M3b" or empty
    std::string witness;

    bool passed() const { return failed_axiom.empty(); }
};

InvariantReport verify_invariant(const IntMatrix& x, const ModularData& data);

/// Rational basis of {X : XS = SX, XT = TX}. Unknowns are the T-compatible
/// pairs, (0,0) first; the basis is in reduced row echelon form.
struct CommutantBasis {
    TheoryId theory;
    std::size_t size = 0;
    std::vector<std::pair<std::size_t, std::size_t>> unknowns;
    std::vector<std::vector<Rational>> basis;

    std::size_t dimension() const { return basis.size(); }
    IntMatrix integer_element(std::size_t k) const;
};

CommutantBasis commutant_basis(const ModularData& data);

struct EnumerationOptions {
    long precision_bits = 128;
    std::optional<long> cap;          // replaces certified entry bounds that exceed it
    double max_search = 1e9;          // refuse larger searches unless cap is set
    const CommutantBasis* commutant = nullptr;
};

/// Every physical invariant (nonnegative integer, X[0][0] = 1) in the commutant,
/// classified and sorted by matrix.
std::vector<ModularInvariant> enumerate_physical(const ModularData& data, const EnumerationOptions& options = {});

/// "A", "D_even", "D_odd", "E6", "E7", "E8" for sl2; "(A,A)", "(D,A)", "(A,E6)", ...
/// for minimal models; "unknown" when no template matches.
std::string classify_invariant(const IntMatrix& x, const ModularData& data);

/// X = sum of v v^T over the rows; throws ConsistencyError if X fails verification.
ModularInvariant invariant_from_extension(const ExtensionDecomposition& dec, const ModularData& data);

/// Structural template for sl2 at level k, if it exists at that level.
std::optional<IntMatrix> sl2_template(long k, const std::string& tag);

/// Invariant of the minimal model m built from sl2 invariants at levels m (r index)
/// and m+1 (s index).
IntMatrix minimal_pair_matrix(long m, const IntMatrix& r_factor, const IntMatrix& s_factor);

/// Table of invariants generated from templates, duplicates removed.
std::vector<ModularInvariant> expected_invariants(const TheoryId& theory);

}  // namespace cftkit
