#pragma once

#include <deque>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "voa/fock.hpp"

namespace voa {

namespace detail {

inline const std::vector<std::vector<int>>& cached_partitions(int n) {
    static std::mutex mu;
    // deque: growth never invalidates references to existing levels
    static std::deque<std::vector<std::vector<int>>> cache;
    std::lock_guard<std::mutex> lock(mu);
    while (static_cast<int>(cache.size()) <= n)
        cache.push_back(partitions_of(static_cast<int>(cache.size())));
    return cache[n];
}

// Expansion of one normal-ordered product
//   Y(alpha(-p1)...alpha(-ps) (x) e^{m gamma}, z) (mu (x) e^{m' gamma}),
// coefficient of z^{-n-1}.  Per partition part p the field contributes
// sum_j binom(-j-1, p-1) alpha(j) z^{-j-p}; the lattice exponent contributes
// exp(sum_{t>0} (m/t) alpha(-t) z^t) exp(-sum_{t>0} (m/t) alpha(t) z^{-t})
// e_{m gamma} z^{2 k m m'} with trivial two-cocycle.  All annihilators act on
// the input monomial jointly; alpha(0) reads the input exponent m'.
class MonomialModeProduct {
  public:
    MonomialModeProduct(const LatticeContext& ctx, const Monomial& u, long long n,
                        const Monomial& v)
        : ctx_(ctx), n_(n), k_(ctx.k()), m_(u.exponent), mp_(v.exponent) {
        w_out_ = u.weight(k_) + v.weight(k_) - n - 1;
        hu_ = u.heisenberg_weight();
        // group u's parts
        for (std::size_t i = 0; i < u.parts.size();) {
            std::size_t j = i;
            while (j < u.parts.size() && u.parts[j] == u.parts[i]) ++j;
            groups_.push_back({u.parts[i], static_cast<int>(j - i)});
            i = j;
        }
        // distinct v parts
        for (std::size_t i = 0; i < v.parts.size();) {
            std::size_t j = i;
            while (j < v.parts.size() && v.parts[j] == v.parts[i]) ++j;
            vparts_.push_back({v.parts[i], static_cast<int>(j - i)});
            i = j;
        }
        af_.assign(vparts_.size(), 0);
        ea_.assign(vparts_.size(), 0);
    }

    // Accumulates the expansion into `out` (rational coefficients per id).
    void run(std::map<MonomialId, Rational>& out) {
        if (w_out_ < 0) return;
        if (w_out_ > ctx_.truncation()) throw TruncationError(static_cast<int>(w_out_));
        exp_out_ = m_ + mp_;
        hb_ = w_out_ - static_cast<long long>(k_) * exp_out_ * exp_out_;
        if (hb_ < 0) return;
        c_base_ = hu_ - n_ - 1 - 2LL * k_ * m_ * mp_;
        // optimistic creation bound: every v part annihilated
        long long slack = 0;
        for (auto [t, mult] : vparts_) slack += static_cast<long long>(t) * mult;
        cf_bound_ = std::min(hb_, c_base_ + slack);
        if (cf_bound_ < 0) return;
        out_ = &out;
        assign_group(0, Rational(1));
    }

  private:
    struct Group {
        int p;
        int count;
    };

    void assign_group(std::size_t g, Rational coeff) {
        if (g == groups_.size()) {
            eplus(0, std::move(coeff));
            return;
        }
        const Group& gr = groups_[g];
        coeff *= factorial(gr.count);  // multinomial numerator for the group
        int zmax = (mp_ != 0) ? gr.count : 0;
        for (int z = 0; z <= zmax; ++z) {
            Rational cz = coeff;
            if (z > 0) {
                // alpha(0)^z with binom(-1, p-1) = (-1)^{p-1} per copy
                Rational f = rational_pow(Rational(2LL * k_ * mp_), z) / factorial(z);
                if ((gr.p - 1) % 2 != 0 && z % 2 != 0) f = -f;
                cz *= f;
            }
            assign_group_ann(g, 0, gr.count - z, cz);
        }
    }

    // choose F-annihilation counts against each distinct v part
    void assign_group_ann(std::size_t g, std::size_t d, int remaining, Rational coeff) {
        if (d == vparts_.size()) {
            std::size_t mark = cre_.size();
            assign_group_cre(g, remaining, groups_[g].p, mark, std::move(coeff));
            return;
        }
        auto [t, mult] = vparts_[d];
        int avail = mult - af_[d];
        int amax = std::min(remaining, avail);
        Rational per = binomial(-t - 1, groups_[g].p - 1);
        Rational acc = 1;
        int added = 0;
        for (int a = 0; a <= amax; ++a) {
            if (a > 0) {
                if (per == 0) break;
                acc *= per / a;  // builds per^a / a!
                af_[d] += 1;
                ++added;
            }
            assign_group_ann(g, d + 1, remaining - a, coeff * acc);
        }
        af_[d] -= added;
    }

    // choose the creation multiset for the rest of the group: non-decreasing
    // weights >= p, total bounded by cf_bound_; the running 1/multiplicity
    // divisor assembles 1/(count!) per repeated weight within the group
    void assign_group_cre(std::size_t g, int remaining, int min_w, std::size_t mark,
                          Rational coeff) {
        if (remaining == 0) {
            assign_group(g + 1, std::move(coeff));
            return;
        }
        int p = groups_[g].p;
        int lo = std::max(min_w, p);
        for (int w = lo; cf_ + w <= cf_bound_; ++w) {
            Rational b = binomial(w - 1, p - 1);
            if (b == 0) continue;
            int same = 1;
            for (std::size_t i = cre_.size(); i > mark && cre_[i - 1] == w; --i) ++same;
            cf_ += w;
            cre_.push_back(w);
            assign_group_cre(g, remaining - 1, w, mark, coeff * b / same);
            cre_.pop_back();
            cf_ -= w;
        }
    }

    void eplus(std::size_t d, Rational coeff) {
        if (m_ == 0 || d == vparts_.size()) {
            finish(std::move(coeff));
            return;
        }
        auto [t, mult] = vparts_[d];
        int avail = mult - af_[d];
        Rational per = Rational(-m_, t);
        Rational acc = 1;
        int added = 0;
        for (int a = 0; a <= avail; ++a) {
            if (a > 0) {
                acc *= per / a;
                ea_[d] += 1;
                ++added;
            }
            eplus(d + 1, coeff * acc);
        }
        ea_[d] -= added;
    }

    void finish(Rational coeff) {
        // removal factors and creation budget
        long long c_total = c_base_;
        Rational removal = 1;
        for (std::size_t d = 0; d < vparts_.size(); ++d) {
            auto [t, mult] = vparts_[d];
            int r = af_[d] + ea_[d];
            if (r == 0) continue;
            c_total += static_cast<long long>(t) * r;
            removal *= falling_factorial(mult, r) * rational_pow(Rational(2LL * k_ * t), r);
        }
        long long cb = c_total - cf_;
        if (cb < 0) return;
        if (m_ == 0 && cb > 0) return;
        coeff *= removal;
        if (coeff == 0) return;

        // surviving v parts plus F creations
        base_parts_.clear();
        for (std::size_t d = 0; d < vparts_.size(); ++d) {
            int keep = vparts_[d].second - af_[d] - ea_[d];
            for (int i = 0; i < keep; ++i) base_parts_.push_back(vparts_[d].first);
        }
        base_parts_.insert(base_parts_.end(), cre_.begin(), cre_.end());

        if (cb == 0) {
            emit(base_parts_, coeff);
            return;
        }
        for (const auto& nu : cached_partitions(static_cast<int>(cb))) {
            Rational f = coeff;
            for (std::size_t i = 0; i < nu.size();) {
                std::size_t j = i;
                while (j < nu.size() && nu[j] == nu[i]) ++j;
                long long b = static_cast<long long>(j - i);
                f *= rational_pow(Rational(m_, nu[i]), b) / factorial(b);
                i = j;
            }
            std::vector<int> parts = base_parts_;
            parts.insert(parts.end(), nu.begin(), nu.end());
            emit(parts, f);
        }
    }

    void emit(std::vector<int> parts, const Rational& coeff) {
        std::sort(parts.begin(), parts.end(), std::greater<int>());
        Monomial mono{std::move(parts), exp_out_};
        (*out_)[ctx_.id_of(mono)] += coeff;
    }

    const LatticeContext& ctx_;
    long long n_;
    int k_, m_, mp_, exp_out_ = 0;
    long long w_out_ = 0, hu_ = 0, hb_ = 0, c_base_ = 0, cf_ = 0, cf_bound_ = 0;
    std::vector<Group> groups_;
    std::vector<std::pair<int, int>> vparts_;
    std::vector<int> af_, ea_, cre_;
    std::vector<int> base_parts_;
    std::map<MonomialId, Rational>* out_ = nullptr;
};

}  // namespace detail

// u_n v for basis monomials, rational coefficients.
inline std::map<MonomialId, Rational> mode_action_monomials(const LatticeContext& ctx,
                                                            const Monomial& u, long long n,
                                                            const Monomial& v) {
    std::map<MonomialId, Rational> out;
    detail::MonomialModeProduct(ctx, u, n, v).run(out);
    return out;
}

// u_n v, bilinear in both arguments.
inline State mode_action(const LatticeContext& ctx, const State& u, long long n,
                         const State& v) {
    StateBuilder out;
    for (const auto& [uid, cu] : u.terms()) {
        const Monomial& um = ctx.monomial(uid);
        for (const auto& [vid, cv] : v.terms()) {
            std::map<MonomialId, Rational> part;
            detail::MonomialModeProduct(ctx, um, n, ctx.monomial(vid)).run(part);
            if (part.empty()) continue;
            Scalar f = cu * cv;
            for (const auto& [id, q] : part) out.add(id, q * f);
        }
    }
    return out.build();
}

// L(n) v = omega_{n+1} v with omega = alpha(-1)^2 1 / 4k; memoized per
// (n, monomial) column.
inline State virasoro_mode(const LatticeContext& ctx, long long n, const State& v) {
    static const Monomial omega_mono{{1, 1}, 0};
    const Rational norm(1, 4LL * ctx.k());
    StateBuilder out;
    for (const auto& [vid, cv] : v.terms()) {
        bool memo = ctx.weight_of(vid) <= 24 && n >= -128 + 1 && n < 127;
        auto compute = [&, vid_ = vid]() {
            std::map<MonomialId, Rational> part;
            detail::MonomialModeProduct(ctx, omega_mono, n + 1, ctx.monomial(vid_)).run(part);
            std::vector<State::Term> terms;
            terms.reserve(part.size());
            for (const auto& [id, q] : part) {
                Rational x = q * norm;
                if (x != 0) terms.emplace_back(id, Scalar(x));
            }
            return State(std::move(terms));
        };
        State col = memo ? ctx.lmode_memo_get_or_compute(n, vid, compute) : compute();
        out.add_state(col, cv);
    }
    return out.build();
}

// Named vectors of the norm-2 context.  u16 needs the isotypic projection and
// is filled in by the decomposition module.
struct NamedVectors {
    std::map<std::string, State> reg;

    bool has(const std::string& name) const { return reg.count(name) != 0; }
    const State& get(const std::string& name) const {
        auto it = reg.find(name);
        if (it == reg.end())
            throw PreconditionError("named vector '" + name +
                                    "' is not available (unknown name or truncation too small)");
        return it->second;
    }
};

inline NamedVectors build_named(const LatticeContext& ctx) {
    if (ctx.norm() != 2) throw PreconditionError("named vectors require the norm-2 context");
    NamedVectors nv;
    const int N = ctx.truncation();
    const Scalar inv_sqrt2 = Rational(1, 2) * Scalar::sqrt2();

    if (N >= 2) {
        State a1 = State::monomial(ctx, Monomial{{1}, 0});
        State h = scale_state(inv_sqrt2, a1);
        nv.reg["h"] = h;
        nv.reg["x1"] = h;
        State ep = State::monomial(ctx, Monomial{{}, 1});
        State em = State::monomial(ctx, Monomial{{}, -1});
        nv.reg["x2"] = scale_state(inv_sqrt2, add_states(ep, em));
        nv.reg["x3"] = scale_state(Scalar::i() * inv_sqrt2, sub_states(ep, em));
        nv.reg["omega"] =
            State::monomial(ctx, Monomial{{1, 1}, 0}, Scalar(Rational(1, 4LL * ctx.k())));
    }
    if (N >= 4) {
        // J = h(-1)^4 1 - 2 h(-3)h(-1) 1 + (3/2) h(-2)^2 1 with h = alpha/sqrt2
        StateBuilder j;
        j.add(ctx.id_of(Monomial{{1, 1, 1, 1}, 0}), Scalar(Rational(1, 4)));
        j.add(ctx.id_of(Monomial{{3, 1}, 0}), Scalar(Rational(-1)));
        j.add(ctx.id_of(Monomial{{2, 2}, 0}), Scalar(Rational(3, 4)));
        State J = j.build();
        State E = add_states(State::monomial(ctx, Monomial{{}, 2}),
                             State::monomial(ctx, Monomial{{}, -2}));
        nv.reg["J"] = J;
        nv.reg["E"] = E;
        const Scalar sqrt27i = Rational(3) * Scalar::sqrt3() * Scalar::i();
        nv.reg["X1"] = sub_states(J, scale_state(sqrt27i, E));
        nv.reg["X2"] = add_states(J, scale_state(sqrt27i, E));
    }
    if (N >= 9) {
        const State& J = nv.reg["J"];
        const State& E = nv.reg["E"];
        State jme = sub_states(mode_action(ctx, J, -2, E), mode_action(ctx, E, -2, J));
        nv.reg["u9"] = scale_state(Scalar(Rational(-1, 4)) * Scalar::sqrt2(), jme);
    }
    if (N >= 16) {
        nv.reg["E2beta"] = add_states(State::monomial(ctx, Monomial{{}, 4}),
                                      State::monomial(ctx, Monomial{{}, -4}));
    }
    return nv;
}

// Applies a mode word right to left: the last entry hits the seed first.
inline State iterated_modes(const LatticeContext& ctx, const NamedVectors& named,
                            const std::vector<std::pair<std::string, long long>>& word,
                            State seed) {
    for (auto it = word.rbegin(); it != word.rend(); ++it)
        seed = mode_action(ctx, named.get(it->first), it->second, seed);
    return seed;
}

}  // namespace voa
