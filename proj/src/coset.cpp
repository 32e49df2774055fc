#include "cftkit/coset.hpp"

#include "cftkit/error.hpp"
#include "cftkit/sl2.hpp"

#include <algorithm>
#include <map>
#include <regex>
#include <set>

namespace cftkit {

namespace {

void require_gko(long m, long n, long eps) {
    if (m < 1) throw UsageError("coset index m must be at least 1");
    if (n < 0 || n > m) throw UsageError("n must satisfy 0 <= n <= m (got n=" + std::to_string(n) + ", m=" + std::to_string(m) + ")");
    if (eps != 0 && eps != 1) throw UsageError("eps must be 0 or 1");
}

long parse_long(const std::string& text, const std::string& what) {
    std::size_t used = 0;
    long v = 0;
    try {
        v = std::stol(text, &used);
    } catch (const std::exception&) {
        throw UsageError("cannot parse " + what + " '" + text + "'");
    }
    if (used != text.size()) throw UsageError("cannot parse " + what + " '" + text + "'");
    return v;
}

// Position of a label within its theory, used to order summands.
std::pair<long, long> label_key(const TheoryId& base, const std::string& label) {
    if (base.algebra == Algebra::Sl2) return {parse_long(label, "sl2 label"), 0};
    KacLabel k = parse_kac_label(base.param, label);
    return {k.r, k.s};
}

std::string sl2_voa_name(long k) { return "L_sl2(" + std::to_string(k) + ",0)"; }
std::string virasoro_voa_name(long m) { return "L(c_" + std::to_string(m) + ",0)"; }

// S^2 = lambda C with C a permutation, so C is the identity iff every diagonal entry of S^2 equals lambda.
void require_trivial_charge_conjugation(const ModularData& data) {
    if (!is_integer(data.s_scale)) throw ConsistencyError("S scale is not an integer");
    const long lambda = data.s_scale.get_num().get_si();
    RootAccumulator acc(data.s_order);
    for (std::size_t i = 0; i < data.size(); ++i) {
        acc.clear();
        for (std::size_t j = 0; j < data.size(); ++j) acc.add_product(data.s(i, j), data.s(j, i));
        acc.add(0, -lambda);
        if (!acc.is_zero())
            throw ConsistencyError("charge conjugation of " + data.theory.name() + " moves label " + data.labels[i]);
    }
}

}  // namespace

std::vector<Rational> BranchingRule::weight_offsets() const {
    std::vector<Rational> out;
    const Rational base = sl2_weight(m, n) + sl2_weight(1, eps);
    for (const auto& [kac, s] : pairs) out.push_back(minimal_weight(m, kac.r, kac.s) + sl2_weight(m + 1, s) - base);
    return out;
}

BranchingRule gko_decomposition(long m, long n, long eps) {
    require_gko(m, n, eps);
    BranchingRule rule{m, n, eps, {}};
    for (long s = 0; s <= m + 1; ++s)
        if ((s - n - eps) % 2 == 0) rule.pairs.emplace_back(kac_canonical(m, n + 1, s + 1), s);
    return rule;
}

GkoReport verify_gko(long m, long n, long eps, int order) {
    require_gko(m, n, eps);
    if (order < 1) throw UsageError("order must be at least 1");
    GkoReport report;
    report.order = order;
    const PuiseuxSeries lhs = series_mul(sl2_character(m, n, order), sl2_character(1, eps, order));
    report.leading_exponent = lhs.leading_exponent();

    std::vector<PuiseuxSeries> terms;
    Rational base = lhs.leading_exponent();
    for (const auto& [kac, s] : gko_decomposition(m, n, eps).pairs) {
        terms.push_back(series_mul(minimal_character(m, kac, order), sl2_character(m + 1, s, order)));
        const Rational& e = terms.back().leading_exponent();
        if (!is_integer(Rational(e - lhs.leading_exponent()))) {
            report.mismatch = "pair " + kac.to_string() + " x " + std::to_string(s) + " starts at q^" + to_string(e) +
                              ", not in the sector of q^" + to_string(lhs.leading_exponent());
            return report;
        }
        base = std::min(base, e);
    }
    report.aligned = true;

    auto offset = [&](const PuiseuxSeries& x) { return Rational(x.leading_exponent() - base).get_num().get_si(); };
    auto coeff_at = [](const PuiseuxSeries& x, long d) {
        return d < 0 || d >= x.order() ? LaurentPoly() : x.coeff(static_cast<int>(d));
    };
    for (long d = 0; d < order; ++d) {
        LaurentPoly left = coeff_at(lhs, d - offset(lhs));
        LaurentPoly right;
        for (const auto& t : terms) right += coeff_at(t, d - offset(t));
        if (left == right) continue;
        std::set<long> exps;
        for (const auto& [e, c] : left.coeffs()) exps.insert(e);
        for (const auto& [e, c] : right.coeffs()) exps.insert(e);
        for (long e : exps)
            if (left.at(e) != right.at(e)) {
                report.mismatch = "q^" + to_string(Rational(base + d)) + " z^" + std::to_string(e) + ": left " +
                                  left.at(e).get_str() + ", right " + right.at(e).get_str();
                return report;
            }
    }
    report.passed = true;
    return report;
}

std::string to_string(Unitarity u) { return u == Unitarity::Proven ? "true" : "unknown"; }

KacLabel parse_kac_label(long m, const std::string& text) {
    static const std::regex pattern(R"(\s*\(\s*(-?\d+)\s*,\s*(-?\d+)\s*\)\s*)");
    std::smatch match;
    if (!std::regex_match(text, match, pattern)) throw UsageError("cannot parse Kac label '" + text + "'");
    return kac_canonical(m, std::stol(match[1]), std::stol(match[2]));
}

std::vector<KacLabel> parse_kac_labels(long m, const std::string& text) {
    static const std::regex item(R"(\(\s*-?\d+\s*,\s*-?\d+\s*\))");
    std::vector<KacLabel> out;
    std::string rest = text;
    for (std::sregex_iterator it(text.begin(), text.end(), item), end; it != end; ++it) {
        out.push_back(parse_kac_label(m, it->str()));
        rest.replace(rest.find(it->str()), it->str().size(), std::string(it->str().size(), ' '));
    }
    if (rest.find_first_not_of(" ,") != std::string::npos || out.empty())
        throw UsageError("cannot parse Kac label list '" + text + "'");
    return out;
}

std::string canonical_label(const TheoryId& base, const std::string& label) {
    if (base.algebra == Algebra::Sl2) {
        long j = parse_long(label, "sl2 label");
        if (j < 0 || j > base.param)
            throw UsageError("sl2 label " + label + " is outside 0.." + std::to_string(base.param));
        return std::to_string(j);
    }
    return parse_kac_label(base.param, label).to_string();
}

Rational label_weight(const TheoryId& base, const std::string& label) {
    if (base.algebra == Algebra::Sl2) return sl2_weight(base.param, parse_long(canonical_label(base, label), "sl2 label"));
    KacLabel k = parse_kac_label(base.param, label);
    return minimal_weight(base.param, k.r, k.s);
}

ExtensionSpec make_extension(const TheoryId& base, const std::vector<std::string>& labels, const std::string& name,
                             Unitarity unitary) {
    std::map<std::pair<long, long>, std::pair<std::string, long>> counted;
    for (const auto& l : labels) {
        std::string c = canonical_label(base, l);
        auto& slot = counted[label_key(base, c)];
        slot.first = c;
        ++slot.second;
    }
    const std::string vacuum = base.algebra == Algebra::Sl2 ? "0" : "(1,1)";
    if (counted.empty() || counted.begin()->second.first != vacuum || counted.begin()->second.second != 1)
        throw UsageError("an extension must contain the vacuum " + vacuum + " exactly once");
    ExtensionSpec spec;
    spec.base = base;
    spec.name = name;
    spec.unitary = unitary;
    for (const auto& [key, entry] : counted) {
        spec.labels.push_back(entry.first);
        spec.multiplicities.push_back(entry.second);
    }
    return spec;
}

WeightReport integral_weight_check(const ExtensionSpec& ext) {
    WeightReport report;
    report.passed = true;
    for (std::size_t i = 0; i < ext.labels.size(); ++i) {
        Rational h = label_weight(ext.base, ext.labels[i]);
        const bool vacuum = i == 0 && h == 0;
        const bool ok = vacuum || (is_integer(h) && h > 0);
        report.weights.emplace_back(ext.labels[i], h);
        report.integral.push_back(is_integer(h) && h >= 0);
        if (!ok) report.passed = false;
    }
    return report;
}

EmbeddingReport conformal_embedding_check(long k, const EmbeddingTarget& target) {
    if (target.dimension < 1 || target.dual_coxeter < 1) throw UsageError("embedding target needs positive dimension and dual Coxeter number");
    EmbeddingReport r;
    r.sl2_central_charge = sl2_central_charge(k);
    r.target_central_charge = make_rational(target.dimension, 1 + target.dual_coxeter);
    r.central_charge_ok = r.sl2_central_charge == r.target_central_charge;
    std::set<long> weight_one;
    for (const auto& entry : catalog_extensions({Algebra::Sl2, k}))
        for (const auto& l : entry.spec.labels)
            if (label_weight(entry.spec.base, l) == 1) weight_one.insert(std::stol(l));
    r.weight_one_dimension = 3;
    for (long j : weight_one) r.weight_one_dimension += j + 1;
    r.dimension_ok = r.weight_one_dimension == target.dimension;
    return r;
}

ExtensionSpec coset_commutant_extension(const ExtensionSpec& affine_ext, long m) {
    if (affine_ext.base != TheoryId{Algebra::Sl2, m})
        throw UsageError("coset commutant needs an extension of sl2 at level " + std::to_string(m) + ", got " +
                         affine_ext.base.name());
    WeightReport w = integral_weight_check(affine_ext);
    if (!w.passed)
        for (std::size_t i = 0; i < w.weights.size(); ++i)
            if (!w.integral[i])
                throw UsageError("summand " + w.weights[i].first + " has non-integral weight " + to_string(w.weights[i].second));
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < affine_ext.labels.size(); ++i) {
        const long j = std::stol(affine_ext.labels[i]);
        const BranchingRule rule = gko_decomposition(m, j, 0);
        auto it = std::find_if(rule.pairs.begin(), rule.pairs.end(), [](const auto& p) { return p.second == 0; });
        if (it == rule.pairs.end()) throw UsageError("label " + affine_ext.labels[i] + " has no vacuum-sector branching");
        for (long c = 0; c < affine_ext.multiplicities[i]; ++c) labels.push_back(it->first.to_string());
    }
    return make_extension({Algebra::Minimal, m}, labels, "coset commutant of " + (affine_ext.name.empty() ? "sl2 extension" : affine_ext.name),
                          affine_ext.unitary);
}

ExtensionSpec mirror_extension(long m, const ExtensionSpec& affine_ext) {
    if (affine_ext.base != TheoryId{Algebra::Sl2, m + 1})
        throw UsageError("mirror extension at m=" + std::to_string(m) + " needs an extension of sl2 at level " +
                         std::to_string(m + 1) + ", got " + affine_ext.base.name());
    require_trivial_charge_conjugation(minimal_modular_data(m));
    const BranchingRule rule = gko_decomposition(m, 0, 0);
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < affine_ext.labels.size(); ++i) {
        const long s = std::stol(affine_ext.labels[i]);
        auto it = std::find_if(rule.pairs.begin(), rule.pairs.end(), [&](const auto& p) { return p.second == s; });
        if (it == rule.pairs.end())
            throw UsageError("label " + affine_ext.labels[i] + " does not occur in the vacuum-sector branching at m=" +
                             std::to_string(m));
        for (long c = 0; c < affine_ext.multiplicities[i]; ++c) labels.push_back(it->first.to_string());
    }
    const Unitarity u = labels.size() == 1 ? Unitarity::Proven : Unitarity::Unknown;
    return make_extension({Algebra::Minimal, m}, labels, "mirror of " + (affine_ext.name.empty() ? "sl2 extension" : affine_ext.name), u);
}

NamedVOA make_named_voa(Algebra algebra, const std::string& tag, long param, const std::string& name) {
    bool ok = false;
    if (tag == "diagonal") {
        ok = param >= 0;
    } else if (algebra == Algebra::Sl2) {
        ok = (tag == "D" && param >= 4 && param % 4 == 0) || (tag == "E6" && param == 10) || (tag == "E8" && param == 28);
    } else {
        ok = (tag == "D" && param >= 3 && (param % 4 == 0 || param % 4 == 3)) ||
             (tag == "E6" && (param == 9 || param == 10)) || (tag == "E8" && (param == 27 || param == 28));
    }
    if (!ok)
        throw UsageError("tag " + tag + " is incompatible with " + TheoryId{algebra, param}.name());
    return {algebra, tag, param, name};
}

namespace {

class RowBuilder {
public:
    explicit RowBuilder(long m) : model_(minimal_model(m)) {}

    void add(const std::vector<std::pair<long, long>>& labels, int copies = 1) {
        std::vector<long> row(model_.labels.size(), 0);
        for (auto [r, s] : labels) row[model_.index_of(r, s)] += 1;
        for (int c = 0; c < copies; ++c) rows_.push_back(row);
    }

    ExtensionDecomposition take() { return {std::move(rows_)}; }

private:
    MinimalModel model_;
    std::vector<std::vector<long>> rows_;
};

ExtensionDecomposition sl2_rows(long k, const std::vector<std::vector<long>>& blocks) {
    ExtensionDecomposition dec;
    for (const auto& b : blocks) {
        std::vector<long> row(static_cast<std::size_t>(k + 1), 0);
        for (long j : b) row[j] += 1;
        dec.rows.push_back(row);
    }
    return dec;
}

const std::vector<std::vector<long>> kE6Blocks = {{0, 6}, {3, 7}, {4, 10}};
const std::vector<std::vector<long>> kE8Blocks = {{0, 10, 18, 28}, {6, 12, 16, 22}};

std::vector<CatalogEntry> sl2_catalog(long k) {
    std::vector<CatalogEntry> out;
    const TheoryId base{Algebra::Sl2, k};
    if (k >= 4 && k % 4 == 0) {
        Sl2ExtensionCatalogEntry e = sl2_simple_current_extension(k);
        std::vector<std::string> voa;
        for (long j : e.voa_modules) voa.push_back(std::to_string(j));
        std::vector<std::vector<long>> blocks;
        for (const auto& mod : e.irreducibles) blocks.push_back(mod.labels);
        out.push_back({make_extension(base, voa, e.name, e.unitary ? Unitarity::Proven : Unitarity::Unknown),
                       sl2_rows(k, blocks), make_named_voa(Algebra::Sl2, "D", k, e.name), "D_even"});
    }
    auto exceptional = [&](const std::vector<std::vector<long>>& blocks, const std::string& tag, const std::string& name) {
        std::vector<std::string> voa;
        for (long j : blocks[0]) voa.push_back(std::to_string(j));
        out.push_back({make_extension(base, voa, name), sl2_rows(k, blocks), make_named_voa(Algebra::Sl2, tag, k, name), tag});
    };
    if (k == 10) exceptional(kE6Blocks, "E6", "E6 (B2 level 1)");
    if (k == 28) exceptional(kE8Blocks, "E8", "E8 (G2 level 1)");
    return out;
}

std::vector<std::pair<long, long>> block_labels(const std::vector<long>& block, long fixed, bool block_on_r) {
    std::vector<std::pair<long, long>> out;
    for (long x : block) out.push_back(block_on_r ? std::pair{x, fixed} : std::pair{fixed, x});
    return out;
}

std::vector<CatalogEntry> minimal_catalog(long m) {
    std::vector<CatalogEntry> out;
    if (m < 3) return out;
    const TheoryId base{Algebra::Minimal, m};
    if (m % 4 == 0) {
        const long half = (m + 2) / 2;
        RowBuilder rows(m);
        for (long r = 1; r < half; r += 2)
            for (long s = 1; s <= half; ++s) rows.add({{r, s}, {m + 2 - r, s}});
        for (long s = 1; s <= half; ++s) rows.add({{half, s}}, 2);
        const std::string name = "D(m=" + std::to_string(m) + ")";
        out.push_back({make_extension(base, {"(1,1)", "(1," + std::to_string(m + 2) + ")"}, name), rows.take(),
                       make_named_voa(Algebra::Minimal, "D", m, name), "(D,A)"});
    }
    if (m % 4 == 3) {
        const long half = (m + 3) / 2;
        RowBuilder rows(m);
        for (long r = 1; r <= (m + 1) / 2; ++r) {
            for (long s = 1; s < half; s += 2) rows.add({{r, s}, {r, m + 3 - s}});
            rows.add({{r, half}}, 2);
        }
        const std::string name = "D(m=" + std::to_string(m) + ")";
        out.push_back({make_extension(base, {"(1,1)", "(1," + std::to_string(m + 2) + ")"}, name), rows.take(),
                       make_named_voa(Algebra::Minimal, "D", m, name), "(A,D)"});
    }
    auto coset_entry = [&](long level, const std::vector<std::vector<long>>& blocks, const std::string& tag) {
        const CatalogEntry affine = sl2_catalog(level).back();
        const std::string name = tag + " coset (m=" + std::to_string(m) + ")";
        ExtensionSpec spec = coset_commutant_extension(affine.spec, m);
        spec.name = name;
        RowBuilder rows(m);
        for (long s = 1; s <= (m + 3) / 2; ++s)
            for (const auto& b : blocks) rows.add(block_labels(b, s, true));
        out.push_back({spec, rows.take(), make_named_voa(Algebra::Minimal, tag, m, name), "(" + tag + ",A)"});
    };
    auto mirror_entry = [&](long level, const std::vector<std::vector<long>>& blocks, const std::string& tag) {
        const CatalogEntry affine = sl2_catalog(level).back();
        const std::string name = tag + " mirror (m=" + std::to_string(m) + ")";
        ExtensionSpec spec = mirror_extension(m, affine.spec);
        spec.name = name;
        RowBuilder rows(m);
        for (long r = 1; r <= (m + 1) / 2; ++r)
            for (const auto& b : blocks) rows.add(block_labels(b, r, false));
        out.push_back({spec, rows.take(), make_named_voa(Algebra::Minimal, tag, m, name), "(A," + tag + ")"});
    };
    auto shift = [](const std::vector<std::vector<long>>& blocks) {
        auto out = blocks;
        for (auto& b : out)
            for (auto& x : b) ++x;
        return out;
    };
    if (m == 10) coset_entry(10, shift(kE6Blocks), "E6");
    if (m == 28) coset_entry(28, shift(kE8Blocks), "E8");
    if (m == 9) mirror_entry(10, shift(kE6Blocks), "E6");
    if (m == 27) mirror_entry(28, shift(kE8Blocks), "E8");
    return out;
}

template <class T>
std::vector<T> sorted(std::vector<T> v) {
    std::sort(v.begin(), v.end());
    return v;
}

}  // namespace

std::vector<CatalogEntry> catalog_extensions(const TheoryId& theory) {
    if (theory.param < 0) throw UsageError("theory parameter must be nonnegative");
    return theory.algebra == Algebra::Sl2 ? sl2_catalog(theory.param) : minimal_catalog(theory.param);
}

Classification classify_preunitary(const Rational& c, const std::vector<KacLabel>& summands) {
    if (c >= 1) throw UsageError("classification covers c < 1 only (got c = " + to_string(c) + ")");
    Classification out;
    const long m = minimal_index_for_central_charge(c);
    if (m < 0) {
        out.reason = "c = " + to_string(c) + " is not c_m = 1 - 6/((m+2)(m+3)) for any m >= 0";
        return out;
    }
    std::vector<KacLabel> canon;
    for (const auto& l : summands) canon.push_back(kac_canonical(m, l.r, l.s));
    canon = sorted(canon);
    if (canon == std::vector<KacLabel>{KacLabel{m, 1, 1}}) {
        out.accepted = true;
        out.voa = make_named_voa(Algebra::Minimal, "diagonal", m, virasoro_voa_name(m));
        return out;
    }
    for (const auto& entry : catalog_extensions({Algebra::Minimal, m})) {
        std::vector<KacLabel> labels;
        for (std::size_t i = 0; i < entry.spec.labels.size(); ++i)
            for (long k = 0; k < entry.spec.multiplicities[i]; ++k) labels.push_back(parse_kac_label(m, entry.spec.labels[i]));
        if (sorted(labels) == canon) {
            out.accepted = true;
            out.voa = entry.voa;
            return out;
        }
    }
    std::string list;
    for (const auto& l : canon) list += (list.empty() ? "" : ",") + l.to_string();
    out.reason = "summands " + list + " at m=" + std::to_string(m) +
                 " are not the diagonal theory or any D-type (m = 0, 3 mod 4), E6-type (m = 9, 10) or E8-type "
                 "(m = 27, 28) extension";
    return out;
}

Classification classify_affine(long k, const std::vector<long>& summands) {
    if (k < 0) throw UsageError("level must be nonnegative");
    for (long j : summands)
        if (j < 0 || j > k) throw UsageError("sl2 label " + std::to_string(j) + " is outside 0.." + std::to_string(k));
    Classification out;
    const std::vector<long> canon = sorted(summands);
    if (canon == std::vector<long>{0}) {
        out.accepted = true;
        out.voa = make_named_voa(Algebra::Sl2, "diagonal", k, sl2_voa_name(k));
        return out;
    }
    for (const auto& entry : catalog_extensions({Algebra::Sl2, k})) {
        std::vector<long> labels;
        for (std::size_t i = 0; i < entry.spec.labels.size(); ++i)
            for (long c = 0; c < entry.spec.multiplicities[i]; ++c) labels.push_back(std::stol(entry.spec.labels[i]));
        if (sorted(labels) == canon) {
            out.accepted = true;
            out.voa = entry.voa;
            return out;
        }
    }
    std::string list;
    for (long j : canon) list += (list.empty() ? "" : ",") + std::to_string(j);
    out.reason = "summands " + list + " at level " + std::to_string(k) +
                 " are not the diagonal theory or a D-type (k = 4n), E6-type (k = 10) or E8-type (k = 28) extension";
    return out;
}

}  // namespace cftkit
