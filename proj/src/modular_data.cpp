#include "cftkit/modular_data.hpp"

#include "cftkit/error.hpp"

#include <numeric>

namespace cftkit {

std::string TheoryId::name() const {
    return algebra_name() + "(" + (algebra == Algebra::Sl2 ? "k=" : "m=") + std::to_string(param) + ")";
}

TheoryId parse_algebra(const std::string& algebra, long param) {
    if (algebra == "sl2") return {Algebra::Sl2, param};
    if (algebra == "minimal") return {Algebra::Minimal, param};
    throw UsageError("unknown algebra '" + algebra + "' (expected sl2 or minimal)");
}

Matrix<Cyclotomic> ModularData::s_matrix() const {
    Matrix<Cyclotomic> out(size(), size(), Cyclotomic(s_order));
    for (std::size_t i = 0; i < size(); ++i)
        for (std::size_t j = 0; j < size(); ++j) out(i, j) = s_entry(i, j);
    return out;
}

long ModularData::t_order() const {
    long n = 1;
    for (const auto& t : t_phases) n = std::lcm(n, t.get_den().get_si());
    return n;
}

std::size_t ModularData::index_of(const std::string& label) const {
    for (std::size_t i = 0; i < labels.size(); ++i)
        if (labels[i] == label) return i;
    throw UsageError("unknown label " + label + " for " + theory.name());
}

bool RelationReport::charge_conjugation_is_identity() const {
    for (std::size_t i = 0; i < charge_conjugation.size(); ++i)
        if (charge_conjugation[i] != i) return false;
    return !charge_conjugation.empty();
}

namespace {

// Integer exponent e with zeta_m^e = exp(2 pi i t).
long phase_exponent(const Rational& t, long m) {
    Rational x = t * m;
    if (!is_integer(x)) throw ConsistencyError("phase " + to_string(t) + " is not a power of zeta_" + std::to_string(m));
    long e = x.get_num().get_si() % m;
    return e < 0 ? e + m : e;
}

bool equals_rational(const std::vector<long>& coords, const Rational& q) {
    if (!is_integer(q)) return false;
    if (coords[0] != q.get_num().get_si()) return false;
    for (std::size_t t = 1; t < coords.size(); ++t)
        if (coords[t]) return false;
    return true;
}

std::string entry_name(const char* what, std::size_t i, std::size_t j) {
    return std::string(what) + "[" + std::to_string(i) + "][" + std::to_string(j) + "]";
}

}  // namespace

RelationReport check_modular_relations(const ModularData& data) {
    RelationReport rep;
    const std::size_t n = data.size();
    const long N = data.s_order;
    auto fail = [&](const std::string& relation, const std::string& witness) {
        if (rep.failed_relation.empty()) {
            rep.failed_relation = relation;
            rep.witness = witness;
        }
    };

    // (a) symmetry
    rep.symmetric = true;
    for (std::size_t i = 0; i < n && rep.symmetric; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (!(data.s(i, j) - data.s(j, i)).is_zero()) {
                rep.symmetric = false;
                fail("(a) S symmetric", entry_name("S", i, j) + " != " + entry_name("S", j, i));
                break;
            }

    // (b) S^2 = lambda C
    rep.square_is_charge_conjugation = true;
    {
        RootAccumulator acc(N);
        std::vector<std::size_t> perm(n, n);
        std::vector<bool> hit(n, false);
        for (std::size_t i = 0; i < n && rep.square_is_charge_conjugation; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                acc.clear();
                for (std::size_t m = 0; m < n; ++m) acc.add_product(data.s(i, m), data.s(m, j));
                std::vector<long> c = acc.coords();
                if (coords_zero(c)) continue;
                if (!equals_rational(c, data.s_scale) || perm[i] != n || hit[j]) {
                    rep.square_is_charge_conjugation = false;
                    fail("(b) S^2 = lambda C",
                         entry_name("(S^2)", i, j) + " = " + to_string(coords_to_cyclotomic(N, c)) +
                             ", lambda = " + to_string(data.s_scale));
                    break;
                }
                perm[i] = j;
                hit[j] = true;
            }
            if (rep.square_is_charge_conjugation && perm[i] == n) {
                rep.square_is_charge_conjugation = false;
                fail("(b) S^2 = lambda C", "row " + std::to_string(i) + " of S^2 vanishes");
            }
        }
        if (rep.square_is_charge_conjugation) rep.charge_conjugation = perm;
    }

    // (d) rational phases consistent with the weights, T of finite order
    rep.t_finite = data.t_phases.size() == n && data.weights.size() == n && n > 0 && data.weights[0] == 0;
    if (rep.t_finite) {
        for (std::size_t i = 0; i < n; ++i)
            if (data.t_phases[i] != data.weights[i] - data.central_charge / 24) {
                rep.t_finite = false;
                fail("(d) T phases", "t[" + std::to_string(i) + "] != h - c/24");
                break;
            }
    } else {
        fail("(d) T phases", "phase list does not match the labels or h_0 != 0");
    }
    if (rep.t_finite) rep.t_order = data.t_order();

    // (c) ((S T)^3)^2 = lambda S^4, checked as t_i t_j (S T S)_ij = mu S_ij with mu^2 = lambda
    if (rep.t_finite && n > 0) {
        const long M = std::lcm(N, rep.t_order);
        const long step = M / N;
        std::vector<long> te(n);
        for (std::size_t i = 0; i < n; ++i) te[i] = phase_exponent(data.t_phases[i], M);
        auto kprime = [&](std::size_t i, std::size_t j) {
            RootAccumulator acc(M);
            for (std::size_t m = 0; m < n; ++m) acc.add_product(data.s(i, m), data.s(m, j), 1, te[m] + te[i] + te[j]);
            return acc.to_root_sum();
        };
        const RootSum k00 = kprime(0, 0);
        const RootSum s00 = data.s(0, 0).embedded(M);
        rep.modular_relation = true;
        {
            // K00^2 - lambda S00^2, with lambda an integer in all theories in scope
            if (!is_integer(data.s_scale)) throw UsageError("non-integral s_scale is not supported");
            RootAccumulator check(M);
            check.add_product(k00, k00);
            check.add_product(s00, s00, -data.s_scale.get_num().get_si());
            if (!check.is_zero()) {
                rep.modular_relation = false;
                fail("(c) ((S T)^3)^2 = lambda S^4", "(t_0^2 (STS)_00)^2 != lambda S_00^2");
            }
        }
        for (std::size_t i = 0; i < n && rep.modular_relation; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                RootAccumulator acc(M);
                acc.add_product(kprime(i, j), s00);
                acc.add_product(k00, data.s(i, j).embedded(M), -1);
                if (!acc.is_zero()) {
                    rep.modular_relation = false;
                    fail("(c) ((S T)^3)^2 = lambda S^4",
                         "t_i t_j (STS)_ij / S_ij differs from its value at (0,0) at " + entry_name("S", i, j));
                    break;
                }
            }
        }
    }

    // normalized row 0 is positive: S_0j / S_00 > 0 and S_00^2 / lambda > 0
    rep.row0_positive = n > 0 && data.s_scale != 0;
    if (rep.row0_positive) {
        const long bits = 96;
        ComplexInterval s00 = numeric_eval(data.s(0, 0), bits);
        ComplexInterval sq = interval_mul(s00, s00);
        const Cyclotomic inv00 = cyclo_inv(data.s_entry(0, 0));
        auto real_positive = [&](const ComplexInterval& z, bool sign_positive) {
            BigFloat t(z.re.precision() + 8);
            if (sign_positive)
                mpfr_sub(t.get(), z.re.get(), z.radius.get(), MPFR_RNDD);
            else
                mpfr_add(t.get(), z.re.get(), z.radius.get(), MPFR_RNDU);
            bool re_ok = sign_positive ? mpfr_sgn(t.get()) > 0 : mpfr_sgn(t.get()) < 0;
            BigFloat a(z.im.precision() + 8);
            mpfr_abs(a.get(), z.im.get(), MPFR_RNDU);
            return re_ok && mpfr_lessequal_p(a.get(), z.radius.get());
        };
        // S_00^2 / lambda must be a positive real
        bool ok = real_positive(sq, data.s_scale > 0);
        std::size_t bad = 0;
        for (std::size_t j = 1; j < n && ok; ++j) {
            Cyclotomic d = cyclo_mul(data.s_entry(0, j), inv00);
            if (!real_positive(numeric_eval(d, bits), true)) {
                ok = false;
                bad = j;
            }
        }
        rep.row0_positive = ok;
        if (!ok) fail("row 0 positivity", "S_0" + std::to_string(bad) + " / S_00 is not a positive real");
    }
    return rep;
}

RelationReport require_modular_relations(const ModularData& data) {
    RelationReport rep = check_modular_relations(data);
    if (!rep.passed())
        throw ConsistencyError(data.theory.name() + ": relation " + rep.failed_relation + " fails: " + rep.witness);
    return rep;
}

FusionRules verlinde_fusion(const ModularData& data) {
    RelationReport rep = require_modular_relations(data);
    const std::size_t n = data.size();
    const long N = data.s_order;
    const CycloField& field = cyclo_field(N);
    const long phi = field.degree();

    // Q[i][m] = S_im / S_0m, exact, scaled to integers by a common denominator D
    std::vector<Cyclotomic> inv0(n);
    for (std::size_t m = 0; m < n; ++m) inv0[m] = cyclo_inv(data.s_entry(0, m));
    std::vector<std::vector<Cyclotomic>> q(n, std::vector<Cyclotomic>(n));
    Integer den(1);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t m = 0; m < n; ++m) {
            q[i][m] = cyclo_mul(data.s_entry(i, m), inv0[m]);
            for (const auto& c : q[i][m].coords()) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
        }
    std::vector<std::vector<std::vector<long>>> qi(n, std::vector<std::vector<long>>(n, std::vector<long>(phi)));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t m = 0; m < n; ++m)
            for (long t = 0; t < phi; ++t) {
                Integer v = q[i][m].coords()[t].get_num() * (den / q[i][m].coords()[t].get_den());
                if (!v.fits_slong_p()) throw std::overflow_error("Verlinde numerators exceed machine range");
                qi[i][m][t] = v.get_si();
            }
    const Rational divisor = data.s_scale * den;
    const std::vector<std::size_t>& conj = rep.charge_conjugation;

    FusionRules out(n);
    RootAccumulator acc(N);
    std::vector<std::vector<std::vector<long>>> tj(n, std::vector<std::vector<long>>(n));
    for (std::size_t i = 0; i < n; ++i) {
        // T[j][m] = Q_im S_jm
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t m = 0; m < n; ++m) {
                acc.clear();
                acc.add_coords_times(qi[i][m], data.s(j, m));
                tj[j][m] = acc.coords();
            }
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t l = 0; l < n; ++l) {
                acc.clear();
                for (std::size_t m = 0; m < n; ++m) acc.add_coords_times(tj[j][m], data.s(m, conj[l]));
                std::vector<long> c = acc.coords();
                bool rational = true;
                for (long t = 1; t < phi; ++t) rational = rational && c[t] == 0;
                Rational value = Rational(c[0]) / divisor;
                if (!rational || !is_integer(value) || value < 0)
                    throw ConsistencyError("Verlinde coefficient N[" + std::to_string(i) + "][" + std::to_string(j) +
                                           "][" + std::to_string(l) + "] = " +
                                           to_string(coords_to_cyclotomic(N, c).scaled(1 / divisor)) +
                                           " is not a nonnegative integer");
                out(i, j, l) = value.get_num().get_si();
            }
    }
    return out;
}

std::vector<QuantumDimension> quantum_dims(const ModularData& data, long precision_bits) {
    const std::size_t n = data.size();
    std::vector<QuantumDimension> out;
    out.reserve(n);
    const Cyclotomic inv00 = cyclo_inv(data.s_entry(0, 0));
    for (std::size_t j = 0; j < n; ++j) {
        Cyclotomic d = cyclo_mul(data.s_entry(0, j), inv00);
        ComplexInterval v = numeric_eval(d, precision_bits);
        BigFloat t(v.re.precision() + 8);
        mpfr_add(t.get(), v.re.get(), v.radius.get(), MPFR_RNDU);
        if (mpfr_cmp_si(t.get(), 1) < 0)
            throw ConsistencyError("quantum dimension of label " + data.labels[j] + " is below 1");
        out.push_back({std::move(d), std::move(v)});
    }
    return out;
}

std::vector<std::size_t> simple_currents(const ModularData& data) {
    return simple_currents(data, verlinde_fusion(data));
}

std::vector<std::size_t> simple_currents(const ModularData& data, const FusionRules& fusion) {
    const std::size_t n = data.size();
    std::vector<std::size_t> out;
    auto dims = quantum_dims(data, 64);
    for (std::size_t a = 0; a < n; ++a) {
        if (dims[a].exact != Cyclotomic::one(data.s_order)) continue;
        std::vector<bool> hit(n, false);
        for (std::size_t j = 0; j < n; ++j) {
            long total = 0;
            std::size_t target = n;
            for (std::size_t l = 0; l < n; ++l) {
                total += fusion(a, j, l);
                if (fusion(a, j, l)) target = l;
            }
            if (total != 1 || hit[target])
                throw ConsistencyError("label " + data.labels[a] +
                                       " has quantum dimension 1 but does not fuse as a permutation (row " +
                                       data.labels[j] + ")");
            hit[target] = true;
        }
        out.push_back(a);
    }
    return out;
}

Matrix<Cyclotomic> cyclo_matrix_inverse(const Matrix<Cyclotomic>& a) {
    const std::size_t n = a.rows();
    if (a.cols() != n) throw UsageError("matrix inverse requires a square matrix");
    if (n == 0) return a;
    const long order = a(0, 0).order();
    Matrix<Cyclotomic> m(a), inv(n, n, Cyclotomic::zero(order));
    for (std::size_t i = 0; i < n; ++i) inv(i, i) = Cyclotomic::one(order);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && m(piv, col).is_zero()) ++piv;
        if (piv == n) throw ConsistencyError("matrix is singular");
        if (piv != col)
            for (std::size_t t = 0; t < n; ++t) {
                std::swap(m(piv, t), m(col, t));
                std::swap(inv(piv, t), inv(col, t));
            }
        Cyclotomic p = cyclo_inv(m(col, col));
        for (std::size_t t = 0; t < n; ++t) {
            m(col, t) = cyclo_mul(m(col, t), p);
            inv(col, t) = cyclo_mul(inv(col, t), p);
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || m(r, col).is_zero()) continue;
            Cyclotomic f = m(r, col);
            for (std::size_t t = 0; t < n; ++t) {
                if (!m(col, t).is_zero()) m(r, t) = m(r, t) - cyclo_mul(f, m(col, t));
                if (!inv(col, t).is_zero()) inv(r, t) = inv(r, t) - cyclo_mul(f, inv(col, t));
            }
        }
    }
    return inv;
}

}  // namespace cftkit
