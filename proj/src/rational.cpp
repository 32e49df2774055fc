#include "cftkit/rational.hpp"

#include "cftkit/error.hpp"

#include <cctype>
#include <climits>

namespace cftkit {

Rational make_rational(long num, long den) {
    if (den == 0) throw UsageError("zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

namespace {

bool parse_integer(std::string_view s, Integer& out) {
    if (s.empty()) return false;
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) return false;
    for (std::size_t j = i; j < s.size(); ++j)
        if (!std::isdigit(static_cast<unsigned char>(s[j]))) return false;
    std::string text(s[0] == '+' ? s.substr(1) : s);
    return out.set_str(text, 10) == 0;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

}  // namespace

Rational parse_rational(std::string_view text) {
    std::string_view t = trim(text);
    auto slash = t.find('/');
    Integer num, den(1);
    bool ok = slash == std::string_view::npos
                  ? parse_integer(t, num)
                  : parse_integer(trim(t.substr(0, slash)), num) &&
                        parse_integer(trim(t.substr(slash + 1)), den);
    if (!ok) throw UsageError("malformed rational: '" + std::string(text) + "'");
    if (den == 0) throw UsageError("zero denominator in '" + std::string(text) + "'");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

std::string to_string(const Rational& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Integer floor_of(const Rational& q) {
    Integer out;
    mpz_fdiv_q(out.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return out;
}

bool fits_long(const Integer& z) { return z.fits_slong_p(); }

Integer to_integer(__int128 v) {
    bool neg = v < 0;
    unsigned __int128 u = neg ? -static_cast<unsigned __int128>(v) : static_cast<unsigned __int128>(v);
    Integer hi(static_cast<unsigned long>(u >> 64));
    Integer lo(static_cast<unsigned long>(u & ~0ULL));
    Integer out = (hi << 64) + lo;
    return neg ? Integer(-out) : out;
}

}  // namespace cftkit
