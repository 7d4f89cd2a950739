#pragma once

#include <gmpxx.h>

#include <cmath>
#include <complex>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <type_traits>

namespace symcheck {

/// Exact rational number. GMP keeps it canonical (gcd(num, den) = 1, den > 0).
using Rational = mpq_class;

class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Parses "p", "-p" or "p/q". Rejects zero denominators and anything that is
/// not a plain decimal integer fraction.
inline Rational parse_rational(std::string_view text) {
    if (text.empty()) throw ParseError("malformed rational: empty string");
    auto digits_ok = [](std::string_view s, bool allow_sign) {
        if (s.empty()) return false;
        std::size_t i = 0;
        if (allow_sign && (s[0] == '-' || s[0] == '+')) i = 1;
        if (i == s.size()) return false;
        for (; i < s.size(); ++i)
            if (s[i] < '0' || s[i] > '9') return false;
        return true;
    };
    const auto slash = text.find('/');
    std::string_view num = text.substr(0, slash);
    std::string_view den = slash == std::string_view::npos ? std::string_view{} : text.substr(slash + 1);
    if (!digits_ok(num, true) || (slash != std::string_view::npos && !digits_ok(den, false)))
        throw ParseError("malformed rational: \"" + std::string(text) + "\"");
    std::string num_s(num);
    if (!num_s.empty() && num_s[0] == '+') num_s.erase(0, 1);
    mpz_class n(num_s, 10);
    mpz_class d(1);
    if (slash != std::string_view::npos) {
        d = mpz_class(std::string(den), 10);
        if (d == 0) throw ParseError("zero denominator: \"" + std::string(text) + "\"");
    }
    Rational r(n, d);
    r.canonicalize();
    return r;
}

inline std::string to_string(const Rational& r) { return r.get_str(10); }

inline bool is_zero(const Rational& r) { return sgn(r) == 0; }

/// Element of Q(i).
struct GaussianRational {
    Rational re{0};
    Rational im{0};

    GaussianRational() = default;
    GaussianRational(Rational r) : re(std::move(r)) {}  // NOLINT: implicit lift from Q
    GaussianRational(long v) : re(v) {}                 // NOLINT
    GaussianRational(int v) : re(v) {}                  // NOLINT
    GaussianRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

    static GaussianRational i_unit() { return {Rational(0), Rational(1)}; }

    bool is_real() const { return sgn(im) == 0; }
    GaussianRational conj() const { return {re, -im}; }
    Rational norm2() const { return Rational(re * re + im * im); }

    GaussianRational& operator+=(const GaussianRational& o) {
        re += o.re;
        im += o.im;
        return *this;
    }
    GaussianRational& operator-=(const GaussianRational& o) {
        re -= o.re;
        im -= o.im;
        return *this;
    }
    GaussianRational& operator*=(const GaussianRational& o) {
        Rational r = re * o.re - im * o.im;
        Rational i = re * o.im + im * o.re;
        re = std::move(r);
        im = std::move(i);
        return *this;
    }
    GaussianRational& operator/=(const GaussianRational& o) {
        const Rational n = o.norm2();
        if (sgn(n) == 0) throw std::domain_error("GaussianRational: division by zero");
        *this *= o.conj();
        re /= n;
        im /= n;
        return *this;
    }
    GaussianRational inverse() const {
        GaussianRational one(1);
        one /= *this;
        return one;
    }
    friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
    friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
    friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
    friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }
    friend GaussianRational operator-(const GaussianRational& a) { return {-a.re, -a.im}; }
    friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
        return a.re == b.re && a.im == b.im;
    }
    friend bool operator!=(const GaussianRational& a, const GaussianRational& b) { return !(a == b); }
};

inline bool is_zero(const GaussianRational& z) { return sgn(z.re) == 0 && sgn(z.im) == 0; }

inline std::string to_string(const GaussianRational& z) {
    if (z.is_real()) return to_string(z.re);
    if (sgn(z.re) == 0) return to_string(z.im) + "i";
    std::string s = to_string(z.re);
    if (sgn(z.im) > 0) s += "+";
    return s + to_string(z.im) + "i";
}

inline std::ostream& operator<<(std::ostream& os, const GaussianRational& z) { return os << to_string(z); }

inline std::complex<double> to_complex(const Rational& r) { return {r.get_d(), 0.0}; }
inline std::complex<double> to_complex(const GaussianRational& z) { return {z.re.get_d(), z.im.get_d()}; }

/// Scalar traits used by the generic containers below.
template <class S>
struct ScalarTraits;

template <>
struct ScalarTraits<Rational> {
    static Rational zero() { return Rational(0); }
    static Rational one() { return Rational(1); }
    static Rational conj(const Rational& r) { return r; }
};

template <>
struct ScalarTraits<GaussianRational> {
    static GaussianRational zero() { return {}; }
    static GaussianRational one() { return GaussianRational(1); }
    static GaussianRational conj(const GaussianRational& z) { return z.conj(); }
};

template <>
struct ScalarTraits<double> {
    static double zero() { return 0.0; }
    static double one() { return 1.0; }
    static double conj(double x) { return x; }
};

template <>
struct ScalarTraits<std::complex<double>> {
    static std::complex<double> zero() { return {}; }
    static std::complex<double> one() { return {1.0, 0.0}; }
    static std::complex<double> conj(const std::complex<double>& z) { return std::conj(z); }
};

/// Conversion between the scalar types (exact -> exact, exact -> floating).
template <class T, class S>
T scalar_cast(const S& s) {
    if constexpr (std::is_same_v<T, S>) {
        return s;
    } else if constexpr (std::is_same_v<T, GaussianRational> && std::is_same_v<S, Rational>) {
        return GaussianRational(s);
    } else if constexpr (std::is_same_v<T, double> && std::is_same_v<S, Rational>) {
        return s.get_d();
    } else if constexpr (std::is_same_v<T, std::complex<double>>) {
        return to_complex(s);
    } else {
        static_assert(sizeof(T) == 0, "unsupported scalar_cast");
    }
}

/// Exact division in a field; Bareiss elimination calls this for its
/// guaranteed-exact divisions.
inline Rational exact_div(const Rational& a, const Rational& b) {
    if (sgn(b) == 0) throw std::domain_error("exact_div: division by zero");
    return a / b;
}
inline GaussianRational exact_div(const GaussianRational& a, const GaussianRational& b) { return a / b; }

/// Deterministic RNG helpers. std::uniform_*_distribution is implementation
/// defined, which would break bit-exact reports across standard libraries.
template <class Rng>
std::int64_t uniform_int(Rng& rng, std::int64_t lo, std::int64_t hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    if (span == 0) return static_cast<std::int64_t>(rng());
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
    std::uint64_t x = 0;
    do {
        x = rng();
    } while (x >= limit);
    return lo + static_cast<std::int64_t>(x % span);
}

template <class Rng>
double uniform_real(Rng& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

template <class Rng>
double normal_real(Rng& rng) {
    // Box-Muller; one draw per call keeps the stream layout simple.
    double u1 = 0.0;
    do {
        u1 = uniform_real(rng);
    } while (u1 <= 0.0);
    const double u2 = uniform_real(rng);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
}

}  // namespace symcheck
