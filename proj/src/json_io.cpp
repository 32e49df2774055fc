#include "cftkit/json_io.hpp"

#include "cftkit/error.hpp"

namespace cftkit {

namespace {

template <class T>
Json array_of(const std::vector<T>& v) {
    Json out = Json::array();
    for (const auto& x : v) out.push_back(to_json(x));
    return out;
}

const Json& field(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw UsageError(std::string("JSON is missing the field '") + key + "'");
    return j.at(key);
}

}  // namespace

Json to_json(const Rational& q) { return to_string(q); }

Rational rational_from_json(const Json& j) {
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number_integer()) return Rational(j.get<long>());
    throw UsageError("expected a rational as a \"p/q\" string, got " + j.dump());
}

Json to_json(const Cyclotomic& a) {
    Json coords = Json::array();
    for (const auto& q : a.coords()) coords.push_back(to_json(q));
    return {{"order", a.order()}, {"coords", coords}};
}

Cyclotomic cyclotomic_from_json(const Json& j) {
    const long order = field(j, "order").get<long>();
    std::vector<Rational> coords;
    for (const auto& c : field(j, "coords")) coords.push_back(rational_from_json(c));
    return Cyclotomic(order, std::move(coords));
}

Json to_json(const TheoryId& t) { return {{"algebra", t.algebra_name()}, {t.param_name(), t.param}}; }

TheoryId theory_from_json(const Json& j) {
    const std::string algebra = field(j, "algebra").get<std::string>();
    const long param = field(j, algebra == "sl2" ? "level" : "m").get<long>();
    return parse_algebra(algebra, param);
}

Json to_json(const ModularData& data) {
    Json s = Json::array();
    for (std::size_t i = 0; i < data.size(); ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < data.size(); ++j) row.push_back(to_json(data.s_entry(i, j)));
        s.push_back(std::move(row));
    }
    return {{"theory", to_json(data.theory)}, {"labels", data.labels},          {"c", to_json(data.central_charge)},
            {"h", array_of(data.weights)},    {"s_scale", to_json(data.s_scale)}, {"S", std::move(s)},
            {"t_phases", array_of(data.t_phases)}};
}

Json to_json(const PuiseuxSeries& s) {
    Json coeffs = Json::array();
    for (const auto& c : s.coeffs()) {
        Json terms = Json::object();
        for (const auto& [e, v] : c.coeffs()) terms[std::to_string(e)] = v.get_str();
        coeffs.push_back(std::move(terms));
    }
    return {{"leading_exponent", to_json(s.leading_exponent())}, {"coeffs", std::move(coeffs)}};
}

Json to_json(const ModularInvariant& x) {
    Json m = Json::array();
    for (std::size_t i = 0; i < x.matrix.rows(); ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < x.matrix.cols(); ++j) row.push_back(x.matrix(i, j));
        m.push_back(std::move(row));
    }
    return {{"basis", x.basis}, {"matrix", std::move(m)}, {"tag", x.tag}};
}

ModularInvariant invariant_from_json(const Json& j) {
    ModularInvariant x;
    const Json& rows = field(j, "matrix");
    const std::size_t n = rows.size();
    x.matrix = IntMatrix::square(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        if (rows[i].size() != n) throw UsageError("invariant matrix must be square");
        for (std::size_t k = 0; k < n; ++k) x.matrix(i, k) = rows[i][k].get<long>();
    }
    if (j.contains("basis")) x.basis = j.at("basis").get<std::vector<std::string>>();
    if (j.contains("tag")) x.tag = j.at("tag").get<std::string>();
    return x;
}

Json to_json(const InvariantReport& r) {
    return {{"passed", r.passed()}, {"failed_axiom", r.failed_axiom}, {"witness", r.witness}};
}

Json to_json(const CommutantBasis& b) {
    Json unknowns = Json::array();
    for (auto [i, j] : b.unknowns) unknowns.push_back({i, j});
    Json basis = Json::array();
    for (const auto& v : b.basis) basis.push_back(array_of(v));
    return {{"theory", to_json(b.theory)}, {"size", b.size}, {"unknowns", std::move(unknowns)}, {"basis", std::move(basis)}};
}

CommutantBasis commutant_from_json(const Json& j) {
    CommutantBasis b;
    b.theory = theory_from_json(field(j, "theory"));
    b.size = field(j, "size").get<std::size_t>();
    for (const auto& u : field(j, "unknowns")) b.unknowns.emplace_back(u.at(0).get<std::size_t>(), u.at(1).get<std::size_t>());
    for (const auto& v : field(j, "basis")) {
        std::vector<Rational> row;
        for (const auto& q : v) row.push_back(rational_from_json(q));
        if (row.size() != b.unknowns.size()) throw UsageError("commutant basis vector has the wrong length");
        b.basis.push_back(std::move(row));
    }
    return b;
}

Json to_json(const BranchingRule& rule) {
    Json pairs = Json::array();
    const auto offsets = rule.weight_offsets();
    for (std::size_t i = 0; i < rule.pairs.size(); ++i)
        pairs.push_back({{"kac", rule.pairs[i].first.to_string()},
                         {"s", rule.pairs[i].second},
                         {"h", to_json(minimal_weight(rule.m, rule.pairs[i].first.r, rule.pairs[i].first.s))},
                         {"weight_offset", to_json(offsets[i])}});
    return {{"m", rule.m}, {"n", rule.n}, {"eps", rule.eps}, {"pairs", std::move(pairs)}};
}

Json to_json(const GkoReport& r) {
    return {{"passed", r.passed},
            {"aligned", r.aligned},
            {"order", r.order},
            {"leading_exponent", to_json(r.leading_exponent)},
            {"mismatch", r.mismatch}};
}

Json to_json(const ExtensionSpec& e) {
    Json summands = Json::array();
    for (std::size_t i = 0; i < e.labels.size(); ++i)
        summands.push_back({{"label", e.labels[i]},
                            {"multiplicity", e.multiplicities[i]},
                            {"weight", to_json(label_weight(e.base, e.labels[i]))}});
    return {{"base", to_json(e.base)}, {"summands", std::move(summands)}, {"name", e.name}, {"unitary", to_string(e.unitary)}};
}

Json to_json(const WeightReport& r) {
    Json w = Json::array();
    for (std::size_t i = 0; i < r.weights.size(); ++i)
        w.push_back({{"label", r.weights[i].first}, {"weight", to_json(r.weights[i].second)}, {"integral", static_cast<bool>(r.integral[i])}});
    return {{"passed", r.passed}, {"weights", std::move(w)}};
}

Json to_json(const EmbeddingReport& r) {
    return {{"passed", r.passed()},
            {"sl2_central_charge", to_json(r.sl2_central_charge)},
            {"target_central_charge", to_json(r.target_central_charge)},
            {"central_charge_ok", r.central_charge_ok},
            {"weight_one_dimension", r.weight_one_dimension},
            {"dimension_ok", r.dimension_ok}};
}

Json to_json(const NamedVOA& v) {
    return {{"algebra", TheoryId{v.algebra, v.param}.algebra_name()},
            {"tag", v.tag},
            {TheoryId{v.algebra, v.param}.param_name(), v.param},
            {"name", v.name}};
}

Json to_json(const CatalogEntry& e) {
    return {{"extension", to_json(e.spec)},
            {"rows", e.decomposition.rows},
            {"voa", to_json(e.voa)},
            {"invariant_tag", e.invariant_tag}};
}

Json to_json(const Classification& c) {
    Json out = {{"accepted", c.accepted}};
    if (c.accepted)
        out["voa"] = to_json(c.voa);
    else
        out["reason"] = c.reason;
    return out;
}

}  // namespace cftkit
