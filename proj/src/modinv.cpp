#include "cftkit/modinv.hpp"

#include "cftkit/error.hpp"
#include "cftkit/minimal.hpp"
#include "cftkit/numeric.hpp"
#include "cftkit/sl2.hpp"

#include <algorithm>
#include <numeric>
#include <random>

namespace cftkit {

namespace {

std::string entry_name(const ModularData& data, std::size_t i, std::size_t j) {
    return "X[" + data.labels[i] + "][" + data.labels[j] + "]";
}

bool t_compatible(const ModularData& data, std::size_t i, std::size_t j) {
    return is_integer(Rational(data.t_phases[i] - data.t_phases[j]));
}

// Coordinates of every S entry, indexed [i * n + j][t].
std::vector<std::vector<long>> s_coordinates(const ModularData& data) {
    const std::size_t n = data.size();
    std::vector<std::vector<long>> out(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            out[i * n + j] = data.s(i, j).coords();
            if (j != i) out[j * n + i] = data.s(j, i) == data.s(i, j) ? out[i * n + j] : data.s(j, i).coords();
        }
    return out;
}

}  // namespace

InvariantReport verify_invariant(const IntMatrix& x, const ModularData& data) {
    const std::size_t n = data.size();
    if (x.rows() != n || x.cols() != n)
        throw UsageError("invariant is " + std::to_string(x.rows()) + "x" + std::to_string(x.cols()) +
                         " but the theory has " + std::to_string(n) + " labels");
    InvariantReport report;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (x(i, j) < 0) {
                report.failed_axiom = "M1";
                report.witness = entry_name(data, i, j) + " = " + std::to_string(x(i, j)) + " is negative";
                return report;
            }
    if (x(0, 0) != 1) {
        report.failed_axiom = "M2";
        report.witness = entry_name(data, 0, 0) + " = " + std::to_string(x(0, 0));
        return report;
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (x(i, j) && !t_compatible(data, i, j)) {
                report.failed_axiom = "M3b";
                report.witness = entry_name(data, i, j) + " = " + std::to_string(x(i, j)) + " but h_" +
                                 data.labels[i] + " - h_" + data.labels[j] + " = " +
                                 to_string(Rational(data.weights[i] - data.weights[j])) + " is not an integer";
                return report;
            }
    std::vector<std::vector<std::size_t>> row_support(n), col_support(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (x(i, j)) {
                row_support[i].push_back(j);
                col_support[j].push_back(i);
            }
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            std::vector<RootSum::Term> terms;
            for (std::size_t j : row_support[a])
                for (const auto& [e, c] : data.s(j, b).terms()) terms.emplace_back(e, c * x(a, j));
            for (std::size_t i : col_support[b])
                for (const auto& [e, c] : data.s(a, i).terms()) terms.emplace_back(e, -c * x(i, b));
            if (!RootSum(data.s_order, std::move(terms)).is_zero()) {
                report.failed_axiom = "M3a";
                report.witness = "(XS - SX)[" + data.labels[a] + "][" + data.labels[b] + "] != 0";
                return report;
            }
        }
    return report;
}

IntMatrix CommutantBasis::integer_element(std::size_t k) const {
    Integer den = 1;
    for (const Rational& q : basis.at(k)) den = lcm(den, Integer(q.get_den()));
    IntMatrix x = IntMatrix::square(size, 0);
    for (std::size_t u = 0; u < unknowns.size(); ++u) {
        Rational v = basis[k][u] * den;
        if (!fits_long(v.get_num())) throw ConsistencyError("commutant element does not fit a machine integer");
        x(unknowns[u].first, unknowns[u].second) = v.get_num().get_si();
    }
    return x;
}

namespace {

constexpr unsigned long long kPrime = 2305843009213693951ULL;  // 2^61 - 1

unsigned long long mulmod(unsigned long long a, unsigned long long b) {
    return static_cast<unsigned long long>(static_cast<unsigned __int128>(a) * b % kPrime);
}

unsigned long long powmod(unsigned long long a, unsigned long long e) {
    unsigned long long r = 1;
    while (e) {
        if (e & 1) r = mulmod(r, a);
        a = mulmod(a, a);
        e >>= 1;
    }
    return r;
}

unsigned long long to_mod(long v) {
    long r = v % static_cast<long>(kPrime);
    return static_cast<unsigned long long>(r < 0 ? r + static_cast<long>(kPrime) : r);
}

// Linear system XS - SX = 0 restricted to the mask, one row per (a, b, t).
class CommutantSystem {
public:
    explicit CommutantSystem(const ModularData& data) : data_(data), n_(data.size()) {
        index_.assign(n_ * n_, -1);
        unknowns_.emplace_back(0, 0);
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = 0; j < n_; ++j)
                if ((i || j) && t_compatible(data, i, j)) unknowns_.emplace_back(i, j);
        for (std::size_t u = 0; u < unknowns_.size(); ++u)
            index_[unknowns_[u].first * n_ + unknowns_[u].second] = static_cast<long>(u);
        coords_ = s_coordinates(data);
        phi_ = coords_.empty() ? 0 : coords_[0].size();
    }

    std::size_t unknown_count() const { return unknowns_.size(); }
    std::size_t row_count() const { return n_ * n_ * phi_; }
    const std::vector<std::pair<std::size_t, std::size_t>>& unknowns() const { return unknowns_; }

    // Sparse row (unknown, coefficient), coefficients merged.
    std::vector<std::pair<std::size_t, long>> row(std::size_t id) const {
        const std::size_t t = id % phi_;
        const std::size_t ab = id / phi_;
        const std::size_t a = ab / n_, b = ab % n_;
        std::vector<std::pair<std::size_t, long>> out;
        for (std::size_t j = 0; j < n_; ++j) {
            long u = index_[a * n_ + j];
            if (u >= 0 && coords_[j * n_ + b][t]) out.emplace_back(u, coords_[j * n_ + b][t]);
        }
        for (std::size_t i = 0; i < n_; ++i) {
            long u = index_[i * n_ + b];
            if (u >= 0 && coords_[a * n_ + i][t]) out.emplace_back(u, -coords_[a * n_ + i][t]);
        }
        std::sort(out.begin(), out.end());
        std::vector<std::pair<std::size_t, long>> merged;
        for (const auto& [u, c] : out) {
            if (!merged.empty() && merged.back().first == u)
                merged.back().second += c;
            else
                merged.emplace_back(u, c);
        }
        std::erase_if(merged, [](const auto& p) { return p.second == 0; });
        return merged;
    }

    // Ids of rows violated by an integer vector over the unknowns.
    std::vector<std::size_t> violated_rows(const std::vector<Integer>& x, std::size_t limit) const {
        std::vector<std::size_t> out;
        std::vector<Integer> acc(phi_);
        for (std::size_t a = 0; a < n_ && out.size() < limit; ++a)
            for (std::size_t b = 0; b < n_ && out.size() < limit; ++b) {
                for (auto& v : acc) v = 0;
                bool touched = false;
                for (std::size_t j = 0; j < n_; ++j) {
                    long u = index_[a * n_ + j];
                    if (u < 0 || x[u] == 0) continue;
                    touched = true;
                    const auto& c = coords_[j * n_ + b];
                    for (std::size_t t = 0; t < phi_; ++t)
                        if (c[t]) acc[t] += x[u] * c[t];
                }
                for (std::size_t i = 0; i < n_; ++i) {
                    long u = index_[i * n_ + b];
                    if (u < 0 || x[u] == 0) continue;
                    touched = true;
                    const auto& c = coords_[a * n_ + i];
                    for (std::size_t t = 0; t < phi_; ++t)
                        if (c[t]) acc[t] -= x[u] * c[t];
                }
                if (!touched) continue;
                for (std::size_t t = 0; t < phi_; ++t)
                    if (acc[t] != 0) {
                        out.push_back((a * n_ + b) * phi_ + t);
                        break;
                    }
            }
        return out;
    }

private:
    const ModularData& data_;
    std::size_t n_;
    std::size_t phi_ = 0;
    std::vector<long> index_;
    std::vector<std::pair<std::size_t, std::size_t>> unknowns_;
    std::vector<std::vector<long>> coords_;
};

// Incremental echelon form modulo a prime; reports whether a row raises the rank.
class ModularEchelon {
public:
    explicit ModularEchelon(std::size_t cols) : cols_(cols), pivot_row_(cols, -1) {}

    std::size_t rank() const { return rows_.size(); }

    bool insert(const std::vector<std::pair<std::size_t, long>>& sparse) {
        std::vector<unsigned long long> v(cols_, 0);
        for (const auto& [u, c] : sparse) v[u] = to_mod(c);
        for (std::size_t c = 0; c < cols_; ++c) {
            if (!v[c]) continue;
            long p = pivot_row_[c];
            if (p < 0) {
                const unsigned long long inv = powmod(v[c], kPrime - 2);
                for (std::size_t k = c; k < cols_; ++k) v[k] = mulmod(v[k], inv);
                pivot_row_[c] = static_cast<long>(rows_.size());
                rows_.push_back(std::move(v));
                return true;
            }
            const unsigned long long f = v[c];
            const auto& r = rows_[p];
            for (std::size_t k = c; k < cols_; ++k)
                if (r[k]) v[k] = (v[k] + kPrime - mulmod(f, r[k])) % kPrime;
        }
        return false;
    }

private:
    std::size_t cols_;
    std::vector<long> pivot_row_;
    std::vector<std::vector<unsigned long long>> rows_;
};

void remove_content(std::vector<Integer>& row) {
    Integer g = 0;
    for (const auto& v : row)
        if (v != 0) g = gcd(g, v);
    if (g > 1)
        for (auto& v : row)
            if (v != 0) v /= g;
}

// Nullspace of an integer matrix via fraction-free Gauss-Jordan elimination.
std::vector<std::vector<Rational>> integer_nullspace(std::vector<std::vector<Integer>> rows, std::size_t cols) {
    std::vector<long> pivot_of_col(cols, -1);
    std::size_t rank = 0;
    for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
        std::size_t sel = rows.size();
        for (std::size_t r = rank; r < rows.size(); ++r)
            if (rows[r][c] != 0) {
                sel = r;
                break;
            }
        if (sel == rows.size()) continue;
        std::swap(rows[rank], rows[sel]);
        const auto& piv = rows[rank];
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (r == rank || rows[r][c] == 0) continue;
            const Integer a = rows[r][c];
            const Integer p = piv[c];
            const Integer g = gcd(a, p);
            const Integer fa = p / g, fp = a / g;
            for (std::size_t k = 0; k < cols; ++k) rows[r][k] = rows[r][k] * fa - piv[k] * fp;
            remove_content(rows[r]);
        }
        pivot_of_col[c] = static_cast<long>(rank);
        ++rank;
    }
    std::vector<std::vector<Rational>> out;
    for (std::size_t f = 0; f < cols; ++f) {
        if (pivot_of_col[f] >= 0) continue;
        std::vector<Rational> v(cols, Rational(0));
        v[f] = 1;
        for (std::size_t c = 0; c < cols; ++c) {
            long r = pivot_of_col[c];
            if (r < 0) continue;
            v[c] = Rational(-rows[r][f], rows[r][c]);
            v[c].canonicalize();
        }
        out.push_back(std::move(v));
    }
    return out;
}

// Reduced row echelon form of a rational matrix (rows are vectors), zero rows dropped.
std::vector<std::vector<Rational>> rref(std::vector<std::vector<Rational>> rows, std::vector<std::size_t>* pivots = nullptr) {
    if (rows.empty()) return rows;
    const std::size_t cols = rows[0].size();
    std::size_t rank = 0;
    if (pivots) pivots->clear();
    for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
        std::size_t sel = rows.size();
        for (std::size_t r = rank; r < rows.size(); ++r)
            if (rows[r][c] != 0) {
                sel = r;
                break;
            }
        if (sel == rows.size()) continue;
        std::swap(rows[rank], rows[sel]);
        const Rational inv = 1 / rows[rank][c];
        for (auto& v : rows[rank]) v *= inv;
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (r == rank || rows[r][c] == 0) continue;
            const Rational f = rows[r][c];
            for (std::size_t k = 0; k < cols; ++k)
                if (rows[rank][k] != 0) rows[r][k] -= f * rows[rank][k];
        }
        if (pivots) pivots->push_back(c);
        ++rank;
    }
    rows.resize(rank);
    return rows;
}

std::vector<Integer> integer_scaled(const std::vector<Rational>& v) {
    Integer den = 1;
    for (const auto& q : v) den = lcm(den, Integer(q.get_den()));
    std::vector<Integer> out;
    out.reserve(v.size());
    for (const auto& q : v) out.push_back(Integer(q.get_num() * (den / q.get_den())));
    return out;
}

}  // namespace

CommutantBasis commutant_basis(const ModularData& data) {
    CommutantSystem system(data);
    const std::size_t u = system.unknown_count();
    const std::size_t total = system.row_count();

    std::vector<std::size_t> order(total);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::mt19937_64 rng(0x5eed);
    std::shuffle(order.begin(), order.end(), rng);

    ModularEchelon echelon(u);
    std::vector<std::size_t> selected;
    const std::size_t stall_limit = std::max<std::size_t>(256, 4 * u);
    std::size_t stall = 0;
    for (std::size_t id : order) {
        if (echelon.rank() == u || stall > stall_limit) break;
        auto r = system.row(id);
        if (!r.empty() && echelon.insert(r)) {
            selected.push_back(id);
            stall = 0;
        } else {
            ++stall;
        }
    }

    std::vector<std::vector<Rational>> null;
    for (;;) {
        std::vector<std::vector<Integer>> rows;
        rows.reserve(selected.size());
        for (std::size_t id : selected) {
            std::vector<Integer> dense(u, Integer(0));
            for (const auto& [k, c] : system.row(id)) dense[k] = c;
            rows.push_back(std::move(dense));
        }
        null = integer_nullspace(std::move(rows), u);
        std::vector<std::size_t> failing;
        for (const auto& v : null) {
            auto bad = system.violated_rows(integer_scaled(v), 16);
            failing.insert(failing.end(), bad.begin(), bad.end());
        }
        if (failing.empty()) break;
        std::sort(failing.begin(), failing.end());
        failing.erase(std::unique(failing.begin(), failing.end()), failing.end());
        selected.insert(selected.end(), failing.begin(), failing.end());
    }

    CommutantBasis out;
    out.theory = data.theory;
    out.size = data.size();
    out.unknowns = system.unknowns();
    out.basis = rref(std::move(null));
    return out;
}

namespace {

// Certified floor of the upper end of d_i d_j.
std::vector<long> entry_bounds(const ModularData& data, const std::vector<std::pair<std::size_t, std::size_t>>& unknowns,
                               long bits) {
    std::vector<long> out(unknowns.size(), 0);
    std::vector<bool> done(unknowns.size(), false);
    for (long prec = bits; prec <= bits * 8; prec *= 2) {
        auto dims = quantum_dims(data, prec);
        bool all = true;
        for (std::size_t u = 0; u < unknowns.size(); ++u) {
            if (done[u]) continue;
            ComplexInterval p = interval_mul(dims[unknowns[u].first].numeric, dims[unknowns[u].second].numeric);
            Integer hi = p.floor_re_upper();
            Integer lo = p.floor_re_lower();
            if (!fits_long(hi)) throw ConsistencyError("entry bound does not fit a machine integer");
            out[u] = hi.get_si();
            if (hi == lo) {
                done[u] = true;
            } else {
                all = false;
            }
        }
        if (all) break;
    }
    return out;
}

struct SearchSpace {
    std::vector<std::vector<long>> a;  // d rows over columns, scaled by den
    long den = 1;
    std::vector<long> range;           // per basis row
    std::vector<long> col_bound;       // den * bound per column
    std::vector<std::vector<long>> lo, hi;
    std::vector<std::size_t> finish;   // first level after which a column is fixed
};

class Enumerator {
public:
    Enumerator(const SearchSpace& s, double max_nodes) : s_(s), max_nodes_(max_nodes) {}

    std::vector<std::vector<long>> run() {
        const std::size_t cols = s_.col_bound.size();
        partial_.assign(cols, 0);
        values_.assign(s_.a.size(), 0);
        descend(0);
        return found_;
    }

private:
    void descend(std::size_t level) {
        if (++nodes_ > max_nodes_)
            throw UsageError("invariant search exceeded " + std::to_string(static_cast<long>(max_nodes_)) +
                             " nodes; rerun with an entry cap to bound the search");
        const std::size_t cols = partial_.size();
        for (std::size_t e = 0; e < cols; ++e) {
            const long p = partial_[e];
            if (p + s_.hi[level][e] < 0 || p + s_.lo[level][e] > s_.col_bound[e]) return;
            if (s_.finish[e] <= level && p % s_.den != 0) return;
        }
        if (level == s_.a.size()) {
            std::vector<long> x(cols);
            for (std::size_t e = 0; e < cols; ++e) x[e] = partial_[e] / s_.den;
            found_.push_back(std::move(x));
            return;
        }
        const auto& row = s_.a[level];
        const long first = level == 0 ? 1 : 0;
        const long last = level == 0 ? 1 : s_.range[level];
        for (std::size_t e = 0; e < cols; ++e) partial_[e] += first * row[e];
        for (long v = first; v <= last; ++v) {
            values_[level] = v;
            descend(level + 1);
            if (v < last)
                for (std::size_t e = 0; e < cols; ++e) partial_[e] += row[e];
        }
        for (std::size_t e = 0; e < cols; ++e) partial_[e] -= last * row[e];
    }

    const SearchSpace& s_;
    double max_nodes_;
    double nodes_ = 0;
    std::vector<long> partial_;
    std::vector<long> values_;
    std::vector<std::vector<long>> found_;
};

}  // namespace

std::vector<ModularInvariant> enumerate_physical(const ModularData& data, const EnumerationOptions& options) {
    CommutantBasis local;
    const CommutantBasis* cb = options.commutant;
    if (!cb) {
        local = commutant_basis(data);
        cb = &local;
    }
    if (cb->theory != data.theory || cb->size != data.size())
        throw UsageError("commutant basis belongs to " + cb->theory.name() + ", not " + data.theory.name());
    const std::size_t u = cb->unknowns.size();
    if (cb->basis.empty()) return {};

    std::vector<long> bounds = entry_bounds(data, cb->unknowns, options.precision_bits);
    if (options.cap)
        for (auto& b : bounds) b = std::min(b, *options.cap);

    std::vector<std::size_t> perm(u);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    std::stable_sort(perm.begin() + 1, perm.end(), [&](std::size_t x, std::size_t y) { return bounds[x] < bounds[y]; });
    std::vector<std::vector<Rational>> permuted;
    for (const auto& v : cb->basis) {
        std::vector<Rational> w(u);
        for (std::size_t c = 0; c < u; ++c) w[c] = v[perm[c]];
        permuted.push_back(std::move(w));
    }
    std::vector<std::size_t> pivots;
    permuted = rref(std::move(permuted), &pivots);
    if (pivots.empty() || pivots[0] != 0) return {};

    SearchSpace s;
    const std::size_t d = permuted.size();
    Integer den = 1;
    for (const auto& v : permuted)
        for (const auto& q : v) den = lcm(den, Integer(q.get_den()));
    if (!fits_long(den)) throw ConsistencyError("commutant denominators do not fit a machine integer");
    s.den = den.get_si();
    for (const auto& v : permuted) {
        std::vector<long> row(u);
        for (std::size_t c = 0; c < u; ++c) {
            Integer x = v[c].get_num() * (den / v[c].get_den());
            if (!fits_long(x)) throw ConsistencyError("commutant entries do not fit a machine integer");
            row[c] = x.get_si();
        }
        s.a.push_back(std::move(row));
    }
    for (std::size_t k = 0; k < d; ++k) s.range.push_back(bounds[perm[pivots[k]]]);
    for (std::size_t c = 0; c < u; ++c) s.col_bound.push_back(bounds[perm[c]] * s.den);
    s.lo.assign(d + 1, std::vector<long>(u, 0));
    s.hi.assign(d + 1, std::vector<long>(u, 0));
    for (std::size_t k = d; k-- > 0;)
        for (std::size_t c = 0; c < u; ++c) {
            const long r = k == 0 ? 1 : s.range[k];
            const long lo_k = k == 0 ? s.a[k][c] : std::min(0L, s.a[k][c] * r);
            const long hi_k = k == 0 ? s.a[k][c] : std::max(0L, s.a[k][c] * r);
            s.lo[k][c] = s.lo[k + 1][c] + lo_k;
            s.hi[k][c] = s.hi[k + 1][c] + hi_k;
        }
    s.finish.assign(u, 0);
    for (std::size_t c = 0; c < u; ++c)
        for (std::size_t k = 0; k < d; ++k)
            if (s.a[k][c]) s.finish[c] = k + 1;

    Enumerator search(s, options.cap ? 1e12 : options.max_search);
    std::vector<ModularInvariant> out;
    for (const auto& x : search.run()) {
        IntMatrix m = IntMatrix::square(data.size(), 0);
        for (std::size_t c = 0; c < u; ++c) m(cb->unknowns[perm[c]].first, cb->unknowns[perm[c]].second) = x[c];
        InvariantReport r = verify_invariant(m, data);
        if (!r.passed())
            throw ConsistencyError("enumerated matrix fails " + r.failed_axiom + ": " + r.witness);
        out.push_back({data.labels, m, classify_invariant(m, data)});
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.matrix < b.matrix; });
    out.erase(std::unique(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.matrix == b.matrix; }),
              out.end());
    return out;
}

namespace {

void add_block(IntMatrix& x, const std::vector<long>& block) {
    for (long i : block)
        for (long j : block) x(i, j) += 1;
}

const std::vector<std::string> kSl2Tags = {"A", "D_even", "D_odd", "E6", "E7", "E8"};

std::string pair_letter(const std::string& tag) { return tag.starts_with("D") ? "D" : tag; }

}  // namespace

std::optional<IntMatrix> sl2_template(long k, const std::string& tag) {
    if (k < 0) throw UsageError("level must be nonnegative");
    const std::size_t n = static_cast<std::size_t>(k + 1);
    IntMatrix x = IntMatrix::square(n, 0);
    if (tag == "A") return identity_matrix(n);
    if (tag == "D_even") {
        if (k < 4 || k % 4 != 0) return std::nullopt;
        for (long j = 0; j < k / 2; j += 2) add_block(x, {j, k - j});
        x(k / 2, k / 2) = 2;
        return x;
    }
    if (tag == "D_odd") {
        if (k < 2 || k % 4 != 2) return std::nullopt;
        for (long j = 0; j <= k; ++j) {
            if (j % 2 == 0)
                x(j, j) = 1;
            else
                x(j, k - j) = 1;
        }
        return x;
    }
    if (tag == "E6") {
        if (k != 10) return std::nullopt;
        add_block(x, {0, 6});
        add_block(x, {3, 7});
        add_block(x, {4, 10});
        return x;
    }
    if (tag == "E7") {
        if (k != 16) return std::nullopt;
        add_block(x, {0, 16});
        add_block(x, {4, 12});
        add_block(x, {6, 10});
        x(8, 8) = 1;
        for (long j : {2L, 14L}) {
            x(j, 8) = 1;
            x(8, j) = 1;
        }
        return x;
    }
    if (tag == "E8") {
        if (k != 28) return std::nullopt;
        add_block(x, {0, 10, 18, 28});
        add_block(x, {6, 12, 16, 22});
        return x;
    }
    throw UsageError("unknown sl2 invariant tag '" + tag + "'");
}

IntMatrix minimal_pair_matrix(long m, const IntMatrix& r_factor, const IntMatrix& s_factor) {
    const MinimalModel model = minimal_model(m);
    const long p = model.p, pp = model.p_prime;
    if (r_factor.rows() != static_cast<std::size_t>(p - 1) || s_factor.rows() != static_cast<std::size_t>(pp - 1))
        throw UsageError("factor sizes do not match the minimal model m=" + std::to_string(m));
    const std::size_t n = model.labels.size();
    IntMatrix x = IntMatrix::square(n, 0);
    for (std::size_t a = 0; a < n; ++a) {
        const KacLabel& la = model.labels[a];
        const long ra[2] = {la.r, p - la.r}, sa[2] = {la.s, pp - la.s};
        for (std::size_t b = 0; b < n; ++b) {
            const KacLabel& lb = model.labels[b];
            const long rb[2] = {lb.r, p - lb.r}, sb[2] = {lb.s, pp - lb.s};
            long total = 0;
            for (int u = 0; u < 2; ++u)
                for (int v = 0; v < 2; ++v)
                    total += r_factor(ra[u] - 1, rb[v] - 1) * s_factor(sa[u] - 1, sb[v] - 1);
            if (total % 2 != 0)
                throw ConsistencyError("factor pair does not descend to the minimal model at " + la.to_string() +
                                       ", " + lb.to_string());
            x(a, b) = total / 2;
        }
    }
    return x;
}

std::vector<ModularInvariant> expected_invariants(const TheoryId& theory) {
    std::vector<ModularInvariant> out;
    auto push = [&](const std::vector<std::string>& basis, IntMatrix x, const std::string& tag) {
        for (const auto& e : out)
            if (e.matrix == x) return;
        out.push_back({basis, std::move(x), tag});
    };
    if (theory.algebra == Algebra::Sl2) {
        const long k = theory.param;
        if (k < 0) throw UsageError("level must be nonnegative");
        std::vector<std::string> basis;
        for (long j = 0; j <= k; ++j) basis.push_back(std::to_string(j));
        for (const auto& tag : kSl2Tags)
            if (auto x = sl2_template(k, tag)) push(basis, std::move(*x), tag);
        return out;
    }
    const long m = theory.param;
    if (m < 1) throw UsageError("minimal model index must be at least 1");
    std::vector<std::string> basis;
    for (const auto& l : minimal_model(m).labels) basis.push_back(l.to_string());
    const IntMatrix r_id = identity_matrix(static_cast<std::size_t>(m + 1));
    const IntMatrix s_id = identity_matrix(static_cast<std::size_t>(m + 2));
    push(basis, minimal_pair_matrix(m, r_id, s_id), "(A,A)");
    for (const auto& tag : kSl2Tags) {
        if (tag == "A") continue;
        if (auto x = sl2_template(m, tag)) push(basis, minimal_pair_matrix(m, *x, s_id), "(" + pair_letter(tag) + ",A)");
        if (auto x = sl2_template(m + 1, tag))
            push(basis, minimal_pair_matrix(m, r_id, *x), "(A," + pair_letter(tag) + ")");
    }
    return out;
}

std::string classify_invariant(const IntMatrix& x, const ModularData& data) {
    if (data.theory.algebra == Algebra::Minimal && data.theory.param < 1) return "unknown";
    for (const auto& e : expected_invariants(data.theory))
        if (e.matrix == x) return e.tag;
    return "unknown";
}

ModularInvariant invariant_from_extension(const ExtensionDecomposition& dec, const ModularData& data) {
    const std::size_t n = data.size();
    IntMatrix x = IntMatrix::square(n, 0);
    for (const auto& row : dec.rows) {
        if (row.size() != n)
            throw UsageError("decomposition row has " + std::to_string(row.size()) + " entries, expected " +
                             std::to_string(n));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) x(i, j) += row[i] * row[j];
    }
    InvariantReport r = verify_invariant(x, data);
    if (!r.passed())
        throw ConsistencyError("extension decomposition gives a matrix failing " + r.failed_axiom + ": " + r.witness);
    return {data.labels, x, classify_invariant(x, data)};
}

}  // namespace cftkit
