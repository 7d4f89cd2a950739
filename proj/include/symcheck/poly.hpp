#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "symcheck/rational.hpp"

namespace symcheck {

inline constexpr std::size_t kMaxVars = 8;

/// Exponent vector alpha in N^n, stored densely.
class MultiIndex {
public:
    MultiIndex() = default;
    explicit MultiIndex(std::size_t nvars) : n_(static_cast<std::uint8_t>(check(nvars))) {}
    MultiIndex(std::initializer_list<int> exps) : n_(static_cast<std::uint8_t>(check(exps.size()))) {
        std::size_t i = 0;
        for (int e : exps) {
            if (e < 0) throw std::invalid_argument("MultiIndex: negative exponent");
            e_[i++] = e;
        }
    }
    static MultiIndex from(std::span<const int> exps) {
        MultiIndex m(exps.size());
        for (std::size_t i = 0; i < exps.size(); ++i) {
            if (exps[i] < 0) throw std::invalid_argument("MultiIndex: negative exponent");
            m.e_[i] = exps[i];
        }
        return m;
    }
    static MultiIndex unit(std::size_t nvars, std::size_t i) {
        MultiIndex m(nvars);
        m.e_.at(i) = 1;
        return m;
    }

    std::size_t size() const { return n_; }
    int operator[](std::size_t i) const { return e_[i]; }
    int& operator[](std::size_t i) { return e_[i]; }
    int degree() const { return std::accumulate(e_.begin(), e_.begin() + n_, 0); }
    std::vector<int> to_vector() const { return {e_.begin(), e_.begin() + n_}; }

    bool divides(const MultiIndex& o) const {
        for (std::size_t i = 0; i < n_; ++i)
            if (e_[i] > o.e_[i]) return false;
        return true;
    }
    bool is_pure_power_of(std::size_t var) const {
        for (std::size_t i = 0; i < n_; ++i)
            if ((i == var) != (e_[i] > 0)) return false;
        return true;
    }
    /// alpha! = prod alpha_i!
    mpz_class factorial() const {
        mpz_class f = 1;
        for (std::size_t i = 0; i < n_; ++i)
            for (int j = 2; j <= e_[i]; ++j) f *= j;
        return f;
    }

    friend MultiIndex operator+(const MultiIndex& a, const MultiIndex& b) {
        MultiIndex r(a.n_);
        for (std::size_t i = 0; i < a.n_; ++i) r.e_[i] = a.e_[i] + b.e_[i];
        return r;
    }
    /// Requires b | a.
    friend MultiIndex operator-(const MultiIndex& a, const MultiIndex& b) {
        MultiIndex r(a.n_);
        for (std::size_t i = 0; i < a.n_; ++i) r.e_[i] = a.e_[i] - b.e_[i];
        return r;
    }
    friend MultiIndex lcm(const MultiIndex& a, const MultiIndex& b) {
        MultiIndex r(a.n_);
        for (std::size_t i = 0; i < a.n_; ++i) r.e_[i] = std::max(a.e_[i], b.e_[i]);
        return r;
    }
    friend bool coprime(const MultiIndex& a, const MultiIndex& b) {
        for (std::size_t i = 0; i < a.n_; ++i)
            if (a.e_[i] > 0 && b.e_[i] > 0) return false;
        return true;
    }
    friend bool operator==(const MultiIndex& a, const MultiIndex& b) {
        return a.n_ == b.n_ && std::equal(a.e_.begin(), a.e_.begin() + a.n_, b.e_.begin());
    }

    /// Plain lexicographic comparison of exponent vectors (x1 > x2 > ...).
    friend int lex_compare(const MultiIndex& a, const MultiIndex& b) {
        for (std::size_t i = 0; i < a.n_; ++i)
            if (a.e_[i] != b.e_[i]) return a.e_[i] < b.e_[i] ? -1 : 1;
        return 0;
    }

private:
    static std::size_t check(std::size_t n) {
        if (n > kMaxVars) throw std::invalid_argument("MultiIndex: too many variables");
        return n;
    }
    std::array<int, kMaxVars> e_{};
    std::uint8_t n_ = 0;
};

enum class MonomialOrder { GradedLex, GradedRevLex };

/// -1, 0, 1 for a < b, a == b, a > b in the given graded order.
inline int compare(const MultiIndex& a, const MultiIndex& b, MonomialOrder order) {
    const int da = a.degree(), db = b.degree();
    if (da != db) return da < db ? -1 : 1;
    if (order == MonomialOrder::GradedLex) return lex_compare(a, b);
    // grevlex: the larger monomial has the smaller exponent in the last differing variable
    for (std::size_t i = a.size(); i-- > 0;)
        if (a[i] != b[i]) return a[i] > b[i] ? -1 : 1;
    return 0;
}

/// Canonical storage order for polynomials: graded lexicographic, ascending.
struct GrlexLess {
    bool operator()(const MultiIndex& a, const MultiIndex& b) const {
        return compare(a, b, MonomialOrder::GradedLex) < 0;
    }
};

/// All multi-indices |alpha| = k in n variables, in descending lex order
/// (for n = 2, k = 2: (2,0), (1,1), (0,2)).
inline std::vector<MultiIndex> multi_indices_of_degree(std::size_t n, int k) {
    std::vector<MultiIndex> out;
    if (n == 0) {
        if (k == 0) out.emplace_back(0);
        return out;
    }
    MultiIndex cur(n);
    std::function<void(std::size_t, int)> rec = [&](std::size_t pos, int left) {
        if (pos + 1 == n) {
            cur[pos] = left;
            out.push_back(cur);
            return;
        }
        for (int e = left; e >= 0; --e) {
            cur[pos] = e;
            rec(pos + 1, left - e);
        }
    };
    rec(0, k);
    return out;
}

/// All multi-indices with |alpha| <= k, grouped by degree ascending.
inline std::vector<MultiIndex> multi_indices_up_to(std::size_t n, int k) {
    std::vector<MultiIndex> out;
    for (int j = 0; j <= k; ++j) {
        auto part = multi_indices_of_degree(n, j);
        out.insert(out.end(), part.begin(), part.end());
    }
    return out;
}

/// Ordered s-tuples (b_1..b_s) over {0..n-1}, first entry most significant.
inline std::vector<std::vector<int>> ordered_tuples(std::size_t n, int s) {
    std::vector<std::vector<int>> out{{}};
    for (int step = 0; step < s; ++step) {
        std::vector<std::vector<int>> next;
        next.reserve(out.size() * n);
        for (const auto& t : out)
            for (std::size_t j = 0; j < n; ++j) {
                auto u = t;
                u.push_back(static_cast<int>(j));
                next.push_back(std::move(u));
            }
        out = std::move(next);
    }
    return out;
}

/// Multi-index counting the entries of an ordered tuple.
inline MultiIndex tuple_to_multi_index(std::size_t n, std::span<const int> tuple) {
    MultiIndex m(n);
    for (int j : tuple) m[static_cast<std::size_t>(j)] += 1;
    return m;
}

/// Multivariate polynomial with exact coefficients. Zero coefficients are
/// never stored, so the term map is a canonical form.
template <class S>
class MultiPoly {
public:
    using Scalar = S;
    using TermMap = std::map<MultiIndex, S, GrlexLess>;

    MultiPoly() = default;
    explicit MultiPoly(std::size_t nvars) : nvars_(nvars) {}

    static MultiPoly constant(std::size_t nvars, const S& c) {
        MultiPoly p(nvars);
        p.add_term(MultiIndex(nvars), c);
        return p;
    }
    static MultiPoly variable(std::size_t nvars, std::size_t i) {
        MultiPoly p(nvars);
        p.add_term(MultiIndex::unit(nvars, i), ScalarTraits<S>::one());
        return p;
    }
    static MultiPoly monomial(const MultiIndex& m, const S& c) {
        MultiPoly p(m.size());
        p.add_term(m, c);
        return p;
    }

    std::size_t nvars() const { return nvars_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }

    /// -1 for the zero polynomial.
    int degree() const { return terms_.empty() ? -1 : terms_.rbegin()->first.degree(); }

    /// Degree of every term equal to `deg`; the zero polynomial is homogeneous of any degree.
    bool is_homogeneous(int deg) const {
        return std::all_of(terms_.begin(), terms_.end(), [&](const auto& t) { return t.first.degree() == deg; });
    }
    bool is_homogeneous() const { return terms_.empty() || is_homogeneous(degree()); }

    MultiPoly homogeneous_part(int deg) const {
        MultiPoly p(nvars_);
        for (const auto& [m, c] : terms_)
            if (m.degree() == deg) p.terms_.emplace_hint(p.terms_.end(), m, c);
        return p;
    }

    S coefficient(const MultiIndex& m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? ScalarTraits<S>::zero() : it->second;
    }

    void add_term(const MultiIndex& m, const S& c) {
        if (m.size() != nvars_) throw std::invalid_argument("MultiPoly: variable-count mismatch");
        if (symcheck::is_zero(c)) return;
        auto [it, inserted] = terms_.try_emplace(m, c);
        if (!inserted) {
            it->second += c;
            if (symcheck::is_zero(it->second)) terms_.erase(it);
        }
    }

    /// Leading monomial and coefficient under `order`; requires a nonzero polynomial.
    std::pair<MultiIndex, S> leading_term(MonomialOrder order) const {
        if (terms_.empty()) throw std::logic_error("leading_term of zero polynomial");
        if (order == MonomialOrder::GradedLex) return *terms_.rbegin();
        auto best = terms_.rbegin();
        for (auto it = std::next(terms_.rbegin()); it != terms_.rend(); ++it) {
            if (it->first.degree() != best->first.degree()) break;
            if (compare(it->first, best->first, order) > 0) best = it;
        }
        return *best;
    }

    MultiPoly& operator+=(const MultiPoly& o) {
        check_same(o);
        for (const auto& [m, c] : o.terms_) add_term(m, c);
        return *this;
    }
    MultiPoly& operator-=(const MultiPoly& o) {
        check_same(o);
        for (const auto& [m, c] : o.terms_) add_term(m, -c);
        return *this;
    }
    MultiPoly& operator*=(const S& c) {
        if (symcheck::is_zero(c)) {
            terms_.clear();
            return *this;
        }
        for (auto& [m, v] : terms_) v *= c;
        return *this;
    }
    friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
    friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
    friend MultiPoly operator-(MultiPoly a) {
        for (auto& [m, v] : a.terms_) v = -v;
        return a;
    }
    friend MultiPoly operator*(MultiPoly a, const S& c) { return a *= c; }
    friend MultiPoly operator*(const S& c, MultiPoly a) { return a *= c; }
    friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
        a.check_same(b);
        MultiPoly r(a.nvars_);
        for (const auto& [ma, ca] : a.terms_)
            for (const auto& [mb, cb] : b.terms_) r.add_term(ma + mb, ca * cb);
        return r;
    }
    MultiPoly& operator*=(const MultiPoly& o) { return *this = *this * o; }

    /// Multiply by c * x^m.
    MultiPoly mul_term(const MultiIndex& m, const S& c) const {
        MultiPoly r(nvars_);
        if (symcheck::is_zero(c)) return r;
        for (const auto& [mm, cc] : terms_) r.terms_.emplace_hint(r.terms_.end(), mm + m, cc * c);
        return r;
    }

    MultiPoly pow(unsigned e) const {
        MultiPoly r = constant(nvars_, ScalarTraits<S>::one());
        for (unsigned i = 0; i < e; ++i) r *= *this;
        return r;
    }

    /// Formal partial derivative in variable i.
    MultiPoly derivative(std::size_t i) const {
        MultiPoly r(nvars_);
        for (const auto& [m, c] : terms_) {
            if (m[i] == 0) continue;
            MultiIndex mm = m;
            mm[i] -= 1;
            r.add_term(mm, c * S(m[i]));
        }
        return r;
    }
    MultiPoly derivative(const MultiIndex& alpha) const {
        MultiPoly r = *this;
        for (std::size_t i = 0; i < alpha.size(); ++i)
            for (int j = 0; j < alpha[i]; ++j) r = r.derivative(i);
        return r;
    }

    /// Evaluate at a point of T^n; T must accept S via implicit conversion.
    template <class T>
    T eval(std::span<const T> point) const {
        if (point.size() != nvars_) throw std::invalid_argument("MultiPoly::eval: point dimension mismatch");
        T sum = ScalarTraits<T>::zero();
        // cache powers per variable
        std::vector<std::vector<T>> powers(nvars_);
        for (const auto& [m, c] : terms_) {
            T term = scalar_cast<T>(c);
            for (std::size_t i = 0; i < nvars_; ++i) {
                const auto e = static_cast<std::size_t>(m[i]);
                if (e == 0) continue;
                auto& pw = powers[i];
                if (pw.empty()) pw.push_back(ScalarTraits<T>::one());
                while (pw.size() <= e) pw.push_back(pw.back() * point[i]);
                term *= pw[e];
            }
            sum += term;
        }
        return sum;
    }
    template <class T>
    T eval(const std::vector<T>& point) const {
        return eval(std::span<const T>(point));
    }

    friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
        return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
    }
    friend bool operator!=(const MultiPoly& a, const MultiPoly& b) { return !(a == b); }

    /// Human-readable form using x1..xn (or `var` prefix), highest terms first.
    std::string to_string(const std::string& var = "x") const {
        if (terms_.empty()) return "0";
        std::string s;
        bool first = true;
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            const auto& [m, c] = *it;
            std::string cs = symcheck::to_string(c);
            const bool is_const = m.degree() == 0;
            const bool neg = !cs.empty() && cs[0] == '-' && cs.find_first_of("+-", 1) == std::string::npos;
            if (!first) s += neg ? " - " : " + ";
            else if (neg) s += "-";
            if (neg) cs.erase(0, 1);
            if (cs.find_first_of("+-", 1) != std::string::npos) cs = "(" + cs + ")";
            if (is_const || cs != "1") s += cs;
            bool need_star = !is_const && cs != "1";
            for (std::size_t i = 0; i < nvars_; ++i) {
                if (m[i] == 0) continue;
                if (need_star) s += "*";
                s += var + std::to_string(i + 1);
                if (m[i] > 1) s += "^" + std::to_string(m[i]);
                need_star = true;
            }
            first = false;
        }
        return s;
    }

private:
    void check_same(const MultiPoly& o) const {
        if (o.nvars_ != nvars_) throw std::invalid_argument("MultiPoly: variable-count mismatch");
    }

    std::size_t nvars_ = 0;
    TermMap terms_;
};

using Poly = MultiPoly<Rational>;

template <class S>
bool is_zero(const MultiPoly<S>& p) {
    return p.is_zero();
}

/// Exact quotient a / b; throws if b does not divide a. Used by Bareiss
/// elimination over Q[x], where every division is exact.
inline Poly exact_div(const Poly& a, const Poly& b) {
    if (b.is_zero()) throw std::domain_error("exact_div: division by zero polynomial");
    if (b.term_count() == 1) {
        const auto& [bm, bc] = *b.terms().begin();
        Poly q(a.nvars());
        for (const auto& [m, c] : a.terms()) {
            if (!bm.divides(m)) throw std::domain_error("exact_div: not divisible");
            q.add_term(m - bm, c / bc);
        }
        return q;
    }
    const auto [lm, lc] = b.leading_term(MonomialOrder::GradedLex);
    Poly rem = a;
    Poly q(a.nvars());
    while (!rem.is_zero()) {
        const auto [rm, rc] = rem.leading_term(MonomialOrder::GradedLex);
        if (!lm.divides(rm)) throw std::domain_error("exact_div: not divisible");
        const MultiIndex qm = rm - lm;
        const Rational qc = rc / lc;
        q.add_term(qm, qc);
        rem -= b.mul_term(qm, qc);
    }
    return q;
}

/// Lift a rational polynomial to Q(i) coefficients.
inline MultiPoly<GaussianRational> to_gaussian(const Poly& p) {
    MultiPoly<GaussianRational> r(p.nvars());
    for (const auto& [m, c] : p.terms()) r.add_term(m, GaussianRational(c));
    return r;
}

}  // namespace symcheck
