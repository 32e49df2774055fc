#include "cli.hpp"

#include "cftkit/config.hpp"
#include "cftkit/coset.hpp"
#include "cftkit/error.hpp"
#include "cftkit/json_io.hpp"
#include "cftkit/minimal.hpp"
#include "cftkit/modinv.hpp"
#include "cftkit/sl2.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <optional>
#include <sstream>

namespace cftkit {

namespace {

struct Options {
    bool json = false;
    bool markdown = false;
    std::string config_file;
    std::optional<int> order;
    std::optional<long> precision_bits;
    bool use_cache = false;
    std::string cache_dir;
    std::optional<long> cap;

    std::string algebra_pos;
    std::string algebra;
    std::optional<long> level;
    std::optional<long> m;
    std::optional<long> param;

    long j = -1, r = -1, s = -1;
    long n = 0, eps = 0;
    std::string tag;
    std::string matrix_file;
    std::string summands;
    std::string c;
    std::string target;
};

class Printer {
public:
    Printer(OutputFormat format, std::ostream& out) : format_(format), out_(out) {}

    bool json() const { return format_ == OutputFormat::Json; }
    void emit(const Json& j) { out_ << j.dump(2) << "\n"; }
    std::ostream& text() { return out_; }

    void table(const std::vector<std::string>& head, const std::vector<std::vector<std::string>>& rows) {
        row(head);
        std::vector<std::string> rule(head.size(), "---");
        row(rule);
        for (const auto& r : rows) row(r);
        out_ << "\n";
    }

private:
    void row(const std::vector<std::string>& cells) {
        out_ << "|";
        for (const auto& c : cells) out_ << " " << c << " |";
        out_ << "\n";
    }

    OutputFormat format_;
    std::ostream& out_;
};

TheoryId resolve_theory(const Options& o) {
    const std::string algebra = !o.algebra.empty() ? o.algebra : o.algebra_pos;
    if (algebra.empty()) throw UsageError("an algebra is required (sl2 or minimal)");
    std::optional<long> p = o.param;
    if (algebra == "sl2" && o.level) p = o.level;
    if (algebra == "minimal" && o.m) p = o.m;
    if (!p) throw UsageError(algebra == "sl2" ? "sl2 needs --level" : "minimal needs --m");
    return parse_algebra(algebra, *p);
}

ModularData make_data(const TheoryId& t) {
    return t.algebra == Algebra::Sl2 ? sl2_modular_data(t.param) : minimal_modular_data(t.param);
}

void add_theory_options(CLI::App* sub, Options& o, bool positional) {
    if (positional) sub->add_option("theory", o.algebra_pos, "sl2 or minimal");
    sub->add_option("--algebra", o.algebra, "sl2 or minimal");
    sub->add_option("--level", o.level, "sl2 level k");
    sub->add_option("--m", o.m, "minimal model index m");
    sub->add_option("--param", o.param, "level or index");
}

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> out;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ','))
        if (item.find_first_not_of(' ') != std::string::npos) out.push_back(item.substr(item.find_first_not_of(' ')));
    if (out.empty()) throw UsageError("empty summand list");
    return out;
}

std::vector<long> parse_sl2_summands(const std::string& text) {
    std::vector<long> out;
    for (const auto& item : split_list(text)) {
        std::size_t used = 0;
        long v = 0;
        try {
            v = std::stol(item, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != item.size()) throw UsageError("cannot parse sl2 label '" + item + "'");
        out.push_back(v);
    }
    return out;
}

std::vector<std::string> as_labels(const std::vector<long>& v) {
    std::vector<std::string> out;
    for (long x : v) out.push_back(std::to_string(x));
    return out;
}

std::string header(const std::string& title) { return "## " + title + "\n\n"; }

void print_invariant(Printer& p, const ModularInvariant& x) {
    p.text() << header(x.tag.empty() ? "invariant" : x.tag);
    std::vector<std::string> head = {""};
    head.insert(head.end(), x.basis.begin(), x.basis.end());
    std::vector<std::vector<std::string>> rows;
    for (std::size_t i = 0; i < x.matrix.rows(); ++i) {
        std::vector<std::string> r = {x.basis[i]};
        for (std::size_t j = 0; j < x.matrix.cols(); ++j) r.push_back(std::to_string(x.matrix(i, j)));
        rows.push_back(std::move(r));
    }
    p.table(head, rows);
}

int print_invariants(Printer& p, const TheoryId& t, const std::vector<ModularInvariant>& list) {
    if (p.json()) {
        Json arr = Json::array();
        for (const auto& x : list) arr.push_back(to_json(x));
        p.emit({{"theory", to_json(t)}, {"invariants", arr}});
    } else {
        p.text() << "# " << t.name() << ": " << list.size() << " invariant" << (list.size() == 1 ? "" : "s") << "\n\n";
        for (const auto& x : list) print_invariant(p, x);
    }
    return 0;
}

void print_extension(Printer& p, const ExtensionSpec& e) {
    if (p.json()) {
        p.emit(to_json(e));
        return;
    }
    p.text() << header((e.name.empty() ? "extension" : e.name) + " of " + e.base.name() + ", unitary: " + to_string(e.unitary));
    std::vector<std::vector<std::string>> rows;
    for (std::size_t i = 0; i < e.labels.size(); ++i)
        rows.push_back({e.labels[i], std::to_string(e.multiplicities[i]), to_string(label_weight(e.base, e.labels[i]))});
    p.table({"label", "multiplicity", "h"}, rows);
}

int cmd_mdata(Printer& p, const Options& o, const RunConfig& cfg) {
    ModularData data = make_data(resolve_theory(o));
    if (p.json()) {
        p.emit(to_json(data));
        return 0;
    }
    auto dims = quantum_dims(data, cfg.precision_bits);
    p.text() << "# " << data.theory.name() << "\n\n"
             << "c = " << to_string(data.central_charge) << ", s_scale = " << to_string(data.s_scale)
             << ", S in Q(zeta_" << data.s_order << "), T order " << data.t_order() << "\n\n";
    std::vector<std::vector<std::string>> rows;
    for (std::size_t i = 0; i < data.size(); ++i)
        rows.push_back({data.labels[i], to_string(data.weights[i]), to_string(data.t_phases[i]), dims[i].numeric.re.to_string(15)});
    p.table({"label", "h", "t = h - c/24", "qdim (numeric)"}, rows);
    return 0;
}

int cmd_char(Printer& p, const Options& o, const RunConfig& cfg) {
    const TheoryId t = resolve_theory(o);
    PuiseuxSeries series;
    std::string label;
    if (t.algebra == Algebra::Sl2) {
        if (o.j < 0) throw UsageError("sl2 characters need --j");
        series = sl2_character(t.param, o.j, cfg.order);
        label = std::to_string(o.j);
    } else {
        if (o.r < 0 || o.s < 0) throw UsageError("minimal characters need --r and --s");
        KacLabel k = kac_canonical(t.param, o.r, o.s);
        series = minimal_character(t.param, k, cfg.order);
        label = k.to_string();
    }
    if (p.json()) {
        p.emit({{"theory", to_json(t)}, {"label", label}, {"series", to_json(series)}});
        return 0;
    }
    p.text() << "# character " << label << " of " << t.name() << "\n\n";
    std::vector<std::vector<std::string>> rows;
    for (int d = 0; d < series.order(); ++d) {
        const LaurentPoly& c = series.coeff(d);
        rows.push_back({to_string(Rational(series.leading_exponent() + d)), c.is_zero() ? "0" : c.to_string()});
    }
    p.table({"q exponent", "coefficient"}, rows);
    return 0;
}

CommutantBasis cached_commutant(const ModularData& data, const RunConfig& cfg, bool use_cache) {
    if (!use_cache) return commutant_basis(data);
    DiskCache cache(cfg.cache_dir);
    const std::string key = commutant_cache_key(data.theory.algebra_name(), data.theory.param);
    if (auto text = cache.load(key)) {
        try {
            CommutantBasis b = commutant_from_json(Json::parse(*text));
            if (b.theory == data.theory && b.size == data.size()) return b;
        } catch (const std::exception&) {
        }
    }
    CommutantBasis b = commutant_basis(data);
    cache.store(key, to_json(b).dump());
    return b;
}

int cmd_enumerate(Printer& p, const Options& o, const RunConfig& cfg) {
    ModularData data = make_data(resolve_theory(o));
    CommutantBasis basis = cached_commutant(data, cfg, o.use_cache || !o.cache_dir.empty());
    EnumerationOptions opts;
    opts.precision_bits = cfg.precision_bits;
    opts.cap = cfg.enumeration_cap;
    opts.commutant = &basis;
    return print_invariants(p, data.theory, enumerate_physical(data, opts));
}

int cmd_expected(Printer& p, const Options& o) {
    const TheoryId t = resolve_theory(o);
    return print_invariants(p, t, expected_invariants(t));
}

int cmd_verify(Printer& p, const Options& o) {
    ModularData data = make_data(resolve_theory(o));
    ModularInvariant x;
    if (!o.tag.empty() == !o.matrix_file.empty()) throw UsageError("give exactly one of --tag and --matrix");
    if (!o.tag.empty()) {
        bool found = false;
        for (const auto& e : expected_invariants(data.theory))
            if (e.tag == o.tag) {
                x = e;
                found = true;
            }
        if (!found) throw UsageError("no " + o.tag + " invariant in the table for " + data.theory.name());
    } else {
        std::ifstream in(o.matrix_file);
        if (!in) throw UsageError("cannot read matrix file " + o.matrix_file);
        Json j;
        try {
            j = Json::parse(in);
        } catch (const Json::exception& e) {
            throw UsageError("matrix file is not valid JSON: " + std::string(e.what()));
        }
        x = invariant_from_json(j);
        x.basis = data.labels;
    }
    InvariantReport r = verify_invariant(x.matrix, data);
    const std::string tag = r.passed() ? classify_invariant(x.matrix, data) : "";
    if (p.json()) {
        Json j = to_json(r);
        j["theory"] = to_json(data.theory);
        j["tag"] = tag;
        p.emit(j);
    } else {
        p.text() << "# verify " << (o.tag.empty() ? o.matrix_file : o.tag) << " on " << data.theory.name() << "\n\n";
        p.table({"result", "axiom", "witness", "tag"},
                {{r.passed() ? "pass" : "fail", r.failed_axiom.empty() ? "-" : r.failed_axiom,
                  r.witness.empty() ? "-" : r.witness, tag.empty() ? "-" : tag}});
    }
    return r.passed() ? 0 : 1;
}

int cmd_from_extension(Printer& p, const Options& o) {
    ModularData data = make_data(resolve_theory(o));
    Json arr = Json::array();
    bool ok = true;
    if (!p.json()) p.text() << "# extension invariants of " << data.theory.name() << "\n\n";
    for (const auto& e : catalog_extensions(data.theory)) {
        ModularInvariant x = invariant_from_extension(e.decomposition, data);
        const bool match = x.tag == e.invariant_tag;
        ok = ok && match;
        if (p.json()) {
            arr.push_back({{"extension", e.spec.name}, {"declared_tag", e.invariant_tag}, {"invariant", to_json(x)}, {"match", match}});
        } else {
            p.text() << "declared " << e.invariant_tag << " for " << e.spec.name << ": " << (match ? "match" : "MISMATCH")
                     << "\n\n";
            print_invariant(p, x);
        }
    }
    if (p.json()) p.emit({{"theory", to_json(data.theory)}, {"extensions", arr}});
    return ok ? 0 : 1;
}

int cmd_coset_verify(Printer& p, const Options& o, const RunConfig& cfg) {
    if (!o.m) throw UsageError("coset verify needs --m");
    GkoReport r = verify_gko(*o.m, o.n, o.eps, cfg.order);
    if (p.json()) {
        Json j = to_json(r);
        j["rule"] = to_json(gko_decomposition(*o.m, o.n, o.eps));
        p.emit(j);
    } else {
        p.text() << "# GKO m=" << *o.m << " n=" << o.n << " eps=" << o.eps << "\n\n";
        p.table({"result", "order", "leading exponent", "mismatch"},
                {{r.passed ? "pass" : "fail", std::to_string(r.order), to_string(r.leading_exponent),
                  r.mismatch.empty() ? "-" : r.mismatch}});
    }
    return r.passed ? 0 : 1;
}

int cmd_coset_decompose(Printer& p, const Options& o) {
    if (!o.m) throw UsageError("coset decompose needs --m");
    BranchingRule rule = gko_decomposition(*o.m, o.n, o.eps);
    if (p.json()) {
        p.emit(to_json(rule));
        return 0;
    }
    p.text() << "# branching m=" << rule.m << " n=" << rule.n << " eps=" << rule.eps << "\n\n";
    std::vector<std::vector<std::string>> rows;
    const auto off = rule.weight_offsets();
    for (std::size_t i = 0; i < rule.pairs.size(); ++i) {
        const auto& [kac, s] = rule.pairs[i];
        rows.push_back({kac.to_string(), std::to_string(s), to_string(minimal_weight(rule.m, kac.r, kac.s)), to_string(off[i])});
    }
    p.table({"kac", "s", "h", "weight offset"}, rows);
    return 0;
}

int cmd_coset_mirror(Printer& p, const Options& o) {
    if (!o.m) throw UsageError("coset mirror needs --m");
    ExtensionSpec affine = make_extension({Algebra::Sl2, *o.m + 1}, as_labels(parse_sl2_summands(o.summands)));
    print_extension(p, mirror_extension(*o.m, affine));
    return 0;
}

int cmd_coset_commutant(Printer& p, const Options& o) {
    if (!o.m) throw UsageError("coset commutant needs --m");
    ExtensionSpec affine = make_extension({Algebra::Sl2, *o.m}, as_labels(parse_sl2_summands(o.summands)));
    print_extension(p, coset_commutant_extension(affine, *o.m));
    return 0;
}

int cmd_coset_embed(Printer& p, const Options& o) {
    if (!o.level) throw UsageError("coset embed needs --level");
    EmbeddingTarget target;
    if (o.target == "B2")
        target = kB2;
    else if (o.target == "G2")
        target = kG2;
    else
        throw UsageError("unknown embedding target '" + o.target + "' (B2 or G2)");
    EmbeddingReport r = conformal_embedding_check(*o.level, target);
    if (p.json()) {
        p.emit(to_json(r));
    } else {
        p.text() << "# sl2 level " << *o.level << " in " << target.name << " level 1\n\n";
        p.table({"check", "sl2 side", "target side", "result"},
                {{"central charge", to_string(r.sl2_central_charge), to_string(r.target_central_charge),
                  r.central_charge_ok ? "pass" : "fail"},
                 {"weight-one dimension", std::to_string(r.weight_one_dimension), std::to_string(target.dimension),
                  r.dimension_ok ? "pass" : "fail"}});
    }
    return r.passed() ? 0 : 1;
}

int cmd_classify(Printer& p, const Options& o) {
    if (o.summands.empty()) throw UsageError("classify needs --summands");
    Classification c;
    std::string subject;
    if (!o.c.empty()) {
        const Rational cc = parse_rational(o.c);
        if (cc >= 1) throw UsageError("classify --c covers c < 1 only");
        const long m = minimal_index_for_central_charge(cc);
        if (m < 0) {
            c.reason = "c = " + to_string(cc) + " is not c_m = 1 - 6/((m+2)(m+3)) for any m >= 0";
        } else {
            c = classify_preunitary(cc, parse_kac_labels(m, o.summands));
        }
        subject = "c = " + to_string(cc);
    } else if (o.level) {
        c = classify_affine(*o.level, parse_sl2_summands(o.summands));
        subject = "sl2 level " + std::to_string(*o.level);
    } else {
        throw UsageError("classify needs --c or --level");
    }
    if (p.json()) {
        p.emit(to_json(c));
    } else {
        p.text() << "# classify " << subject << ", summands " << o.summands << "\n\n";
        if (c.accepted)
            p.table({"result", "name", "tag", "parameter"},
                    {{"accepted", c.voa.name, c.voa.tag, std::to_string(c.voa.param)}});
        else
            p.table({"result", "reason"}, {{"rejected", c.reason}});
    }
    return c.accepted ? 0 : 1;
}

int cmd_catalog(Printer& p, const Options& o) {
    const TheoryId t = resolve_theory(o);
    auto entries = catalog_extensions(t);
    if (p.json()) {
        Json arr = Json::array();
        for (const auto& e : entries) arr.push_back(to_json(e));
        p.emit({{"theory", to_json(t)}, {"entries", arr}});
        return 0;
    }
    p.text() << "# catalog for " << t.name() << ": " << entries.size() << " entr" << (entries.size() == 1 ? "y" : "ies") << "\n\n";
    for (const auto& e : entries) {
        print_extension(p, e.spec);
        std::vector<std::vector<std::string>> rows;
        const ModularData data = make_data(t);
        for (std::size_t i = 0; i < e.decomposition.rows.size(); ++i) {
            std::string mods;
            for (std::size_t k = 0; k < data.size(); ++k) {
                const long v = e.decomposition.rows[i][k];
                if (!v) continue;
                if (!mods.empty()) mods += " + ";
                mods += (v > 1 ? std::to_string(v) + "*" : "") + data.labels[k];
            }
            rows.push_back({std::to_string(i), mods});
        }
        p.table({"module", "decomposition"}, rows);
    }
    return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact modular data, modular invariants and extension catalogs for sl2 and Virasoro minimal models",
                 "cftkit"};
    app.require_subcommand(1);
    app.fallthrough();
    Options o;
    app.add_flag("--json", o.json, "emit JSON");
    app.add_flag("--markdown", o.markdown, "emit markdown tables (default)");
    app.add_option("--config", o.config_file, "key=value configuration file");
    app.add_option("--order", o.order, "q-series truncation order");
    app.add_option("--precision-bits", o.precision_bits, "working precision of numeric enclosures");
    app.add_flag("--cache", o.use_cache, "read and write the commutant cache");
    app.add_option("--cache-dir", o.cache_dir, "cache directory (implies --cache)");
    app.add_option("--cap", o.cap, "upper bound on every invariant entry");

    auto* mdata = app.add_subcommand("mdata", "modular data of a theory");
    add_theory_options(mdata, o, true);

    auto* chr = app.add_subcommand("char", "character of one module");
    add_theory_options(chr, o, true);
    chr->add_option("--j", o.j, "sl2 Dynkin label");
    chr->add_option("--r", o.r, "Kac label r");
    chr->add_option("--s", o.s, "Kac label s");

    auto* inv = app.add_subcommand("invariants", "modular invariants");
    inv->require_subcommand(1);
    inv->fallthrough();
    auto* enumerate = inv->add_subcommand("enumerate", "all physical invariants");
    auto* verify = inv->add_subcommand("verify", "check one invariant");
    auto* from_ext = inv->add_subcommand("from-extension", "invariants of the catalog extensions");
    auto* expected = inv->add_subcommand("expected", "table of invariants built from templates");
    for (auto* sub : {enumerate, verify, from_ext, expected}) {
        sub->fallthrough();
        add_theory_options(sub, o, true);
    }
    verify->add_option("--tag", o.tag, "tag of a table invariant");
    verify->add_option("--matrix", o.matrix_file, "JSON file with a \"matrix\" field");

    auto* coset = app.add_subcommand("coset", "coset constructions");
    coset->require_subcommand(1);
    coset->fallthrough();
    auto* cverify = coset->add_subcommand("verify", "check a GKO character identity");
    auto* cdecomp = coset->add_subcommand("decompose", "GKO branching pairs");
    auto* cmirror = coset->add_subcommand("mirror", "mirror extension");
    auto* ccomm = coset->add_subcommand("commutant", "coset commutant extension");
    auto* cembed = coset->add_subcommand("embed", "conformal embedding check");
    for (auto* sub : {cverify, cdecomp, cmirror, ccomm, cembed}) sub->fallthrough();
    for (auto* sub : {cverify, cdecomp}) {
        sub->add_option("--m", o.m, "minimal model index")->required();
        sub->add_option("--n", o.n, "level-m label");
        sub->add_option("--eps", o.eps, "level-1 label");
    }
    for (auto* sub : {cmirror, ccomm}) {
        sub->add_option("--m", o.m, "minimal model index")->required();
        sub->add_option("--summands", o.summands, "sl2 labels, e.g. 0,6")->required();
    }
    cembed->add_option("--level", o.level, "sl2 level")->required();
    cembed->add_option("--target", o.target, "B2 or G2")->required();

    auto* classify = app.add_subcommand("classify", "decide an extension against the classification");
    classify->add_option("--c", o.c, "central charge p/q (Virasoro)");
    classify->add_option("--level", o.level, "sl2 level (affine)");
    classify->add_option("--summands", o.summands, "e.g. \"(1,1),(7,1)\" or 0,6");

    auto* catalog = app.add_subcommand("catalog", "extension catalog of a theory");
    add_theory_options(catalog, o, true);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        RunConfig cfg;
        if (!o.config_file.empty()) apply_config_file(cfg, o.config_file);
        if (o.order) cfg.order = *o.order;
        if (o.precision_bits) cfg.precision_bits = *o.precision_bits;
        if (!o.cache_dir.empty()) cfg.cache_dir = o.cache_dir;
        if (o.cap) cfg.enumeration_cap = *o.cap;
        if (o.json) cfg.output = OutputFormat::Json;
        if (o.markdown) cfg.output = OutputFormat::Markdown;
        if (o.json && o.markdown) throw UsageError("--json and --markdown are exclusive");
        cfg.validate();
        Printer p(cfg.output, out);

        if (mdata->parsed()) return cmd_mdata(p, o, cfg);
        if (chr->parsed()) return cmd_char(p, o, cfg);
        if (enumerate->parsed()) return cmd_enumerate(p, o, cfg);
        if (verify->parsed()) return cmd_verify(p, o);
        if (from_ext->parsed()) return cmd_from_extension(p, o);
        if (expected->parsed()) return cmd_expected(p, o);
        if (cverify->parsed()) return cmd_coset_verify(p, o, cfg);
        if (cdecomp->parsed()) return cmd_coset_decompose(p, o);
        if (cmirror->parsed()) return cmd_coset_mirror(p, o);
        if (ccomm->parsed()) return cmd_coset_commutant(p, o);
        if (cembed->parsed()) return cmd_coset_embed(p, o);
        if (classify->parsed()) return cmd_classify(p, o);
        if (catalog->parsed()) return cmd_catalog(p, o);
        throw UsageError("no command given");
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "failure: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace cftkit
