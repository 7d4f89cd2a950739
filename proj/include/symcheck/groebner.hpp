#pragma once

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <vector>

#include "symcheck/poly.hpp"

namespace symcheck {

/// Element of the free module Q[xi]^r.
using ModuleElement = std::vector<Poly>;

/// Position-over-term order: the lowest nonzero position leads, ties broken
/// by the monomial order inside that position. Ideals are the rank-1 case.
struct TermOrder {
    MonomialOrder monomial = MonomialOrder::GradedRevLex;
};

struct LeadTerm {
    std::size_t pos = 0;
    MultiIndex mono;
    Rational coeff;
};

inline bool is_zero(const ModuleElement& f) {
    return std::all_of(f.begin(), f.end(), [](const Poly& p) { return p.is_zero(); });
}

inline std::optional<LeadTerm> leading_term(const ModuleElement& f, const TermOrder& order) {
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (f[i].is_zero()) continue;
        auto [m, c] = f[i].leading_term(order.monomial);
        return LeadTerm{i, m, c};
    }
    return std::nullopt;
}

inline ModuleElement zero_element(std::size_t rank, std::size_t nvars) { return ModuleElement(rank, Poly(nvars)); }

inline ModuleElement mul_term(const ModuleElement& f, const MultiIndex& m, const Rational& c) {
    ModuleElement r;
    r.reserve(f.size());
    for (const auto& p : f) r.push_back(p.mul_term(m, c));
    return r;
}

inline ModuleElement& add_scaled(ModuleElement& f, const ModuleElement& g, const MultiIndex& m, const Rational& c) {
    for (std::size_t i = 0; i < f.size(); ++i)
        if (!g[i].is_zero()) f[i] += g[i].mul_term(m, c);
    return f;
}

/// Sum_j q_j * gens_j.
inline ModuleElement combine(const std::vector<Poly>& q, const std::vector<ModuleElement>& gens, std::size_t rank,
                             std::size_t nvars) {
    ModuleElement out = zero_element(rank, nvars);
    for (std::size_t j = 0; j < gens.size(); ++j) {
        if (q[j].is_zero()) continue;
        for (std::size_t i = 0; i < rank; ++i)
            if (!gens[j][i].is_zero()) out[i] += q[j] * gens[j][i];
    }
    return out;
}

/// Result of dividing by a Groebner basis, with the quotient expressed
/// over the original generators when the basis tracks representations.
struct Division {
    ModuleElement remainder;
    std::vector<Poly> coefficients;  // over the original generators; empty if untracked
};

class GroebnerBasis {
public:
    GroebnerBasis(std::size_t nvars, std::size_t rank, TermOrder order, std::vector<ModuleElement> gens, bool track)
        : nvars_(nvars), rank_(rank), order_(order), tracked_(track), input_(std::move(gens)) {}

    std::size_t nvars() const { return nvars_; }
    std::size_t rank() const { return rank_; }
    const TermOrder& order() const { return order_; }
    bool reduced() const { return reduced_; }
    bool tracked() const { return tracked_; }
    const std::vector<ModuleElement>& elements() const { return elems_; }
    const std::vector<ModuleElement>& input() const { return input_; }
    /// elements()[i] = sum_j representation(i)[j] * input()[j] (only when tracked).
    const std::vector<Poly>& representation(std::size_t i) const { return reps_.at(i); }

    std::vector<LeadTerm> leading_terms() const { return leads_; }

    /// Full reduction of f. Quotients are tracked through every step.
    Division divide(const ModuleElement& f) const {
        check_shape(f);
        ModuleElement p = f;
        ModuleElement r = zero_element(rank_, nvars_);
        std::vector<Poly> quot(elems_.size(), Poly(nvars_));
        while (auto lt = leading_term(p, order_)) {
            bool reduced_step = false;
            for (std::size_t g = 0; g < elems_.size(); ++g) {
                const auto& gl = leads_[g];
                if (gl.pos != lt->pos || !gl.mono.divides(lt->mono)) continue;
                const MultiIndex m = lt->mono - gl.mono;
                const Rational c = lt->coeff / gl.coeff;
                add_scaled(p, elems_[g], m, -c);
                if (tracked_) quot[g].add_term(m, c);
                reduced_step = true;
                break;
            }
            if (!reduced_step) {
                r[lt->pos].add_term(lt->mono, lt->coeff);
                p[lt->pos].add_term(lt->mono, -lt->coeff);
            }
        }
        Division d{std::move(r), {}};
        if (tracked_) {
            d.coefficients.assign(input_.size(), Poly(nvars_));
            for (std::size_t g = 0; g < elems_.size(); ++g) {
                if (quot[g].is_zero()) continue;
                for (std::size_t j = 0; j < input_.size(); ++j)
                    if (!reps_[g][j].is_zero()) d.coefficients[j] += quot[g] * reps_[g][j];
            }
        }
        return d;
    }

    ModuleElement normal_form(const ModuleElement& f) const { return divide(f).remainder; }
    Poly normal_form(const Poly& f) const {
        if (rank_ != 1) throw std::invalid_argument("normal_form: polynomial given for a module basis");
        return divide(ModuleElement{f}).remainder[0];
    }
    bool contains(const ModuleElement& f) const { return is_zero(normal_form(f)); }
    bool contains(const Poly& f) const { return normal_form(f).is_zero(); }

    /// S-element of two basis members with the same leading position.
    std::optional<ModuleElement> s_element(std::size_t i, std::size_t j) const {
        const auto& a = leads_[i];
        const auto& b = leads_[j];
        if (a.pos != b.pos) return std::nullopt;
        const MultiIndex l = lcm(a.mono, b.mono);
        ModuleElement s = mul_term(elems_[i], l - a.mono, Rational(1) / a.coeff);
        add_scaled(s, elems_[j], l - b.mono, Rational(-1) / b.coeff);
        return s;
    }

    /// Buchberger criterion: every S-pair reduces to zero. Exhaustive.
    bool satisfies_buchberger_criterion() const {
        for (std::size_t i = 0; i < elems_.size(); ++i)
            for (std::size_t j = i + 1; j < elems_.size(); ++j)
                if (auto s = s_element(i, j); s && !is_zero(normal_form(*s))) return false;
        return true;
    }

    /// Every input generator reduces to zero and, when tracked, every basis
    /// element equals its recorded combination of the inputs.
    bool certifies_equal_span() const {
        for (const auto& g : input_)
            if (!contains(g)) return false;
        if (tracked_)
            for (std::size_t i = 0; i < elems_.size(); ++i)
                if (combine(reps_[i], input_, rank_, nvars_) != elems_[i]) return false;
        return true;
    }

private:
    friend GroebnerBasis buchberger(std::vector<ModuleElement>, std::size_t, std::size_t, TermOrder, bool);

    void check_shape(const ModuleElement& f) const {
        if (f.size() != rank_) throw std::invalid_argument("GroebnerBasis: module rank mismatch");
        for (const auto& p : f)
            if (p.nvars() != nvars_) throw std::invalid_argument("GroebnerBasis: variable-count mismatch");
    }

    void push(ModuleElement f, std::vector<Poly> rep) {
        leads_.push_back(*leading_term(f, order_));
        elems_.push_back(std::move(f));
        if (tracked_) reps_.push_back(std::move(rep));
    }

    std::size_t nvars_;
    std::size_t rank_;
    TermOrder order_;
    bool tracked_;
    bool reduced_ = false;
    std::vector<ModuleElement> input_;
    std::vector<ModuleElement> elems_;
    std::vector<LeadTerm> leads_;
    std::vector<std::vector<Poly>> reps_;
};

/// Reduced Groebner basis of the submodule of Q[xi]^rank spanned by `gens`.
/// With `track`, each basis element records its expression over the inputs.
inline GroebnerBasis buchberger(std::vector<ModuleElement> gens, std::size_t nvars, std::size_t rank,
                                TermOrder order = {}, bool track = false) {
    GroebnerBasis gb(nvars, rank, order, gens, track);
    for (const auto& g : gens) gb.check_shape(g);

    auto unit_rep = [&](std::size_t j) {
        std::vector<Poly> rep(gens.size(), Poly(nvars));
        rep[j] = Poly::constant(nvars, Rational(1));
        return rep;
    };
    auto reduce_with_rep = [&](const ModuleElement& f, std::vector<Poly> rep) {
        Division d = gb.divide(f);
        if (track)
            for (std::size_t j = 0; j < rep.size(); ++j) rep[j] -= d.coefficients[j];
        return std::pair{std::move(d.remainder), std::move(rep)};
    };

    struct Pair {
        std::size_t i, j;
        int degree;
    };
    std::vector<Pair> pairs;
    auto add_pairs_for_last = [&]() {
        const std::size_t j = gb.elems_.size() - 1;
        for (std::size_t i = 0; i < j; ++i) {
            const auto& a = gb.leads_[i];
            const auto& b = gb.leads_[j];
            if (a.pos != b.pos) continue;
            if (rank == 1 && coprime(a.mono, b.mono)) continue;  // product criterion, ideals only
            pairs.push_back({i, j, lcm(a.mono, b.mono).degree()});
        }
    };

    for (std::size_t j = 0; j < gens.size(); ++j) {
        auto [r, rep] = reduce_with_rep(gens[j], track ? unit_rep(j) : std::vector<Poly>{});
        if (is_zero(r)) continue;
        gb.push(std::move(r), std::move(rep));
        add_pairs_for_last();
    }

    // normal selection strategy: smallest lcm degree first, then oldest pair
    while (!pairs.empty()) {
        auto it = std::min_element(pairs.begin(), pairs.end(), [](const Pair& a, const Pair& b) {
            if (a.degree != b.degree) return a.degree < b.degree;
            if (a.j != b.j) return a.j < b.j;
            return a.i < b.i;
        });
        const Pair pr = *it;
        pairs.erase(it);
        auto s = gb.s_element(pr.i, pr.j);
        std::vector<Poly> rep;
        if (track) {
            const auto& a = gb.leads_[pr.i];
            const auto& b = gb.leads_[pr.j];
            const MultiIndex l = lcm(a.mono, b.mono);
            rep.assign(gens.size(), Poly(nvars));
            for (std::size_t k = 0; k < gens.size(); ++k) {
                rep[k] += gb.reps_[pr.i][k].mul_term(l - a.mono, Rational(1) / a.coeff);
                rep[k] += gb.reps_[pr.j][k].mul_term(l - b.mono, Rational(-1) / b.coeff);
            }
        }
        auto [r, rrep] = reduce_with_rep(*s, std::move(rep));
        if (is_zero(r)) continue;
        gb.push(std::move(r), std::move(rrep));
        add_pairs_for_last();
    }

    // minimize: drop elements whose leading term is divisible by another's
    std::vector<bool> keep(gb.elems_.size(), true);
    for (std::size_t i = 0; i < gb.elems_.size(); ++i)
        for (std::size_t j = 0; j < gb.elems_.size() && keep[i]; ++j) {
            if (i == j || !keep[j]) continue;
            const auto& a = gb.leads_[i];
            const auto& b = gb.leads_[j];
            if (a.pos == b.pos && b.mono.divides(a.mono) && (!(a.mono == b.mono) || j < i)) keep[i] = false;
        }
    GroebnerBasis minimal(nvars, rank, order, gb.input_, track);
    for (std::size_t i = 0; i < gb.elems_.size(); ++i)
        if (keep[i]) minimal.push(gb.elems_[i], track ? gb.reps_[i] : std::vector<Poly>{});

    // interreduce and normalize to monic leading coefficients
    GroebnerBasis out(nvars, rank, order, gb.input_, track);
    for (std::size_t i = 0; i < minimal.elems_.size(); ++i) {
        GroebnerBasis others(nvars, rank, order, gb.input_, track);
        for (std::size_t j = 0; j < minimal.elems_.size(); ++j)
            if (j != i) others.push(minimal.elems_[j], track ? minimal.reps_[j] : std::vector<Poly>{});
        // keep the leading term, reduce the tail
        const LeadTerm lt = minimal.leads_[i];
        ModuleElement tail = minimal.elems_[i];
        tail[lt.pos].add_term(lt.mono, -lt.coeff);
        Division d = others.divide(tail);
        ModuleElement f = std::move(d.remainder);
        f[lt.pos].add_term(lt.mono, lt.coeff);
        const Rational inv = Rational(1) / lt.coeff;
        for (auto& p : f) p *= inv;
        std::vector<Poly> rep;
        if (track) {
            rep = minimal.reps_[i];
            for (std::size_t j = 0; j < rep.size(); ++j) {
                rep[j] -= d.coefficients[j];
                rep[j] *= inv;
            }
        }
        out.push(std::move(f), std::move(rep));
    }
    out.reduced_ = true;
    return out;
}

/// Ideal convenience wrapper.
inline GroebnerBasis buchberger(const std::vector<Poly>& gens, std::size_t nvars, TermOrder order = {},
                                bool track = false) {
    std::vector<ModuleElement> m;
    m.reserve(gens.size());
    for (const auto& g : gens) m.push_back(ModuleElement{g});
    return buchberger(std::move(m), nvars, 1, order, track);
}

/// Whether the homogeneous polynomials have no common zero in C^N other
/// than the origin: the reduced basis must contain a pure power of every
/// variable among its leading monomials (or the unit ideal).
inline bool zero_dim_origin(const std::vector<Poly>& gens, std::size_t nvars) {
    for (const auto& g : gens)
        if (!g.is_homogeneous()) throw std::invalid_argument("zero_dim_origin: generators must be homogeneous");
    std::vector<Poly> nonzero;
    for (const auto& g : gens)
        if (!g.is_zero()) nonzero.push_back(g);
    if (nonzero.empty()) return nvars == 0;
    const auto gb = buchberger(nonzero, nvars, TermOrder{MonomialOrder::GradedRevLex}, false);
    std::vector<bool> have(nvars, false);
    for (const auto& lt : gb.leading_terms()) {
        if (lt.mono.degree() == 0) return true;
        for (std::size_t v = 0; v < nvars; ++v)
            if (lt.mono.is_pure_power_of(v)) have[v] = true;
    }
    return std::all_of(have.begin(), have.end(), [](bool b) { return b; });
}

/// Coefficients q with target = sum_j q_j gens_j, or nullopt when target is
/// not in the submodule. The identity is re-checked by exact expansion.
class ModuleMembership {
public:
    ModuleMembership(std::vector<ModuleElement> gens, std::size_t nvars, std::size_t rank, TermOrder order = {})
        : gens_(gens), nvars_(nvars), rank_(rank), gb_(buchberger(std::move(gens), nvars, rank, order, true)) {}

    const GroebnerBasis& basis() const { return gb_; }

    std::optional<std::vector<Poly>> represent(const ModuleElement& target) const {
        Division d = gb_.divide(target);
        if (!is_zero(d.remainder)) return std::nullopt;
        if (combine(d.coefficients, gens_, rank_, nvars_) != target)
            throw std::logic_error("ModuleMembership: representation failed exact re-verification");
        return std::move(d.coefficients);
    }

private:
    std::vector<ModuleElement> gens_;
    std::size_t nvars_;
    std::size_t rank_;
    GroebnerBasis gb_;
};

inline std::optional<std::vector<Poly>> module_member_with_coeffs(const ModuleElement& target,
                                                                  const std::vector<ModuleElement>& gens,
                                                                  std::size_t nvars) {
    if (gens.empty()) {
        if (is_zero(target)) return std::vector<Poly>{};
        return std::nullopt;
    }
    return ModuleMembership(gens, nvars, target.size()).represent(target);
}

}  // namespace symcheck
