#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "voa/errors.hpp"
#include "voa/rational.hpp"
#include "voa/scalar.hpp"

namespace voa {

class LatticeContext;

// Basis monomial alpha(-n1)...alpha(-ns) (x) e^{m gamma} of the rank-one
// lattice algebra: a weakly decreasing positive partition plus a lattice
// exponent.  The empty partition with m = 0 is the vacuum.
struct Monomial {
    std::vector<int> parts;  // weakly decreasing
    int exponent = 0;

    long long heisenberg_weight() const {
        return std::accumulate(parts.begin(), parts.end(), 0LL);
    }
    long long weight(int k) const {
        return heisenberg_weight() + static_cast<long long>(k) * exponent * exponent;
    }
    int part_count() const { return static_cast<int>(parts.size()); }

    friend bool operator==(const Monomial& a, const Monomial& b) = default;
};

// Canonical order within one weight: by |m|, positive exponent first, then
// ascending lexicographic on the part lists.
inline bool canonical_less(const Monomial& a, const Monomial& b) {
    int aa = std::abs(a.exponent), ab = std::abs(b.exponent);
    if (aa != ab) return aa < ab;
    int sa = a.exponent < 0 ? 1 : 0, sb = b.exponent < 0 ? 1 : 0;
    if (sa != sb) return sa < sb;
    return std::lexicographical_compare(a.parts.begin(), a.parts.end(), b.parts.begin(),
                                        b.parts.end());
}

inline std::vector<std::vector<int>> partitions_of(int n, int max_part) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    auto rec = [&](auto&& self, int rem, int mp) -> void {
        if (rem == 0) {
            out.push_back(cur);
            return;
        }
        for (int p = std::min(rem, mp); p >= 1; --p) {
            cur.push_back(p);
            self(self, rem - p, p);
            cur.pop_back();
        }
    };
    rec(rec, n, max_part);
    std::sort(out.begin(), out.end());
    return out;
}

inline std::vector<std::vector<int>> partitions_of(int n) { return partitions_of(n, n); }

using MonomialId = std::uint32_t;

// Sparse field-valued combination of basis monomials; terms sorted by id,
// zero coefficients never stored.
class State {
  public:
    using Term = std::pair<MonomialId, Scalar>;

    State() = default;
    explicit State(std::vector<Term> sorted_terms) : terms_(std::move(sorted_terms)) {}

    static State monomial(const LatticeContext& ctx, const Monomial& m, Scalar c = Scalar(1));
    static State vacuum(const LatticeContext& ctx);

    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t support_size() const { return terms_.size(); }

    Scalar coeff(MonomialId id) const {
        auto it = std::lower_bound(terms_.begin(), terms_.end(), id,
                                   [](const Term& t, MonomialId v) { return t.first < v; });
        if (it == terms_.end() || it->first != id) return Scalar();
        return it->second;
    }

    MonomialId leading_id() const {
        if (terms_.empty()) throw PreconditionError("leading_id of zero state");
        return terms_.front().first;
    }

    friend bool operator==(const State& a, const State& b) { return a.terms_ == b.terms_; }

  private:
    std::vector<Term> terms_;
};

class StateBuilder {
  public:
    void add(MonomialId id, const Scalar& c) {
        if (c.is_zero()) return;
        acc_[id] += c;
    }
    void add_state(const State& s, const Scalar& factor) {
        if (factor.is_zero()) return;
        for (const auto& [id, c] : s.terms()) acc_[id] += factor * c;
    }
    void add_state(const State& s) {
        for (const auto& [id, c] : s.terms()) acc_[id] += c;
    }
    bool empty() const { return acc_.empty(); }
    State build() {
        std::vector<State::Term> terms;
        terms.reserve(acc_.size());
        for (auto& [id, c] : acc_) {
            if (!c.is_zero()) terms.emplace_back(id, std::move(c));
        }
        std::sort(terms.begin(), terms.end(),
                  [](const State::Term& a, const State::Term& b) { return a.first < b.first; });
        acc_.clear();
        return State(std::move(terms));
    }

  private:
    std::unordered_map<MonomialId, Scalar> acc_;
};

// Ambient graded space V_L for L = Z*gamma with (gamma,gamma) = 2k, with every
// basis monomial of weight <= truncation interned to a stable id.  Ids are
// ordered by (weight, canonical order), so id order is the canonical order.
class LatticeContext {
  public:
    LatticeContext(int norm, int truncation) : impl_(std::make_shared<Impl>()) {
        if (norm < 2 || norm % 2 != 0) throw PreconditionError("lattice norm must be even and >= 2");
        if (truncation < 0) throw PreconditionError("truncation must be >= 0");
        impl_->norm = norm;
        impl_->truncation = truncation;
        build_tables();
        derive_lattice_signs();
    }

    int norm() const { return impl_->norm; }
    int k() const { return impl_->norm / 2; }
    int truncation() const { return impl_->truncation; }

    int dimension(int w) const { return static_cast<int>(table(w).size()); }

    std::span<const Monomial> basis(int w) const { return table(w); }

    const Monomial& monomial(MonomialId id) const { return impl_->all[id]; }
    int weight_of(MonomialId id) const { return impl_->weight_of[id]; }

    MonomialId id_of(const Monomial& m) const {
        int w = static_cast<int>(m.weight(k()));
        const auto& tab = table(w);
        auto it = std::lower_bound(tab.begin(), tab.end(), m, canonical_less);
        if (it == tab.end() || !(*it == m))
            throw PreconditionError("monomial not interned (weight above truncation?)");
        return impl_->offset[w] + static_cast<MonomialId>(it - tab.begin());
    }

    MonomialId vacuum_id() const { return 0; }

    MonomialId lattice_id(int m) const { return id_of(Monomial{{}, m}); }

    // id of the same partition with negated lattice exponent
    MonomialId mirror_id(MonomialId id) const {
        const Monomial& mo = monomial(id);
        if (mo.exponent == 0) return id;
        Monomial mm = mo;
        mm.exponent = -mm.exponent;
        return id_of(mm);
    }

    // (e^{m gamma}, e^{-m gamma}) sign, derived from form invariance
    const Rational& lattice_pair_sign(int m) const {
        int a = std::abs(m);
        if (a >= static_cast<int>(impl_->lattice_signs.size()))
            throw PreconditionError("lattice exponent outside the interned range");
        return impl_->lattice_signs[a];
    }

    std::size_t total_monomials() const { return impl_->all.size(); }

    // shared memo for Virasoro-mode columns; semantically invisible
    State lmode_memo_get_or_compute(long long n, MonomialId id,
                                    const std::function<State()>& compute) const {
        std::uint64_t key = (static_cast<std::uint64_t>(n + 128) << 32) | id;
        {
            std::lock_guard<std::mutex> lock(impl_->lmode_mutex);
            auto it = impl_->lmode_memo.find(key);
            if (it != impl_->lmode_memo.end()) return it->second;
        }
        State value = compute();
        std::lock_guard<std::mutex> lock(impl_->lmode_mutex);
        auto [it, inserted] = impl_->lmode_memo.emplace(key, std::move(value));
        return it->second;
    }

    friend bool operator==(const LatticeContext& a, const LatticeContext& b) {
        return a.impl_ == b.impl_;
    }

  private:
    struct Impl {
        int norm = 2;
        int truncation = 0;
        std::vector<Monomial> all;                    // indexed by id
        std::vector<int> weight_of;                   // indexed by id
        std::vector<MonomialId> offset;               // first id per weight
        std::vector<std::pair<MonomialId, int>> rng;  // (begin, count) per weight
        std::vector<Rational> lattice_signs;          // c_|m|
        std::mutex lmode_mutex;
        std::unordered_map<std::uint64_t, State> lmode_memo;
    };

    std::span<const Monomial> table(int w) const {
        if (w < 0 || w > impl_->truncation) throw PreconditionError("weight outside [0, truncation]");
        auto [begin, count] = impl_->rng[w];
        return {impl_->all.data() + begin, static_cast<std::size_t>(count)};
    }

    void build_tables() {
        Impl& im = *impl_;
        im.offset.resize(im.truncation + 1);
        im.rng.resize(im.truncation + 1);
        for (int w = 0; w <= im.truncation; ++w) {
            im.offset[w] = static_cast<MonomialId>(im.all.size());
            std::vector<Monomial> level;
            for (int m = 0; static_cast<long long>(k()) * m * m <= w; ++m) {
                int rem = w - k() * m * m;
                for (const auto& parts : partitions_of(rem)) {
                    level.push_back(Monomial{parts, m});
                    if (m > 0) level.push_back(Monomial{parts, -m});
                }
            }
            std::sort(level.begin(), level.end(), canonical_less);
            im.rng[w] = {im.offset[w], static_cast<int>(level.size())};
            for (auto& mo : level) {
                im.all.push_back(std::move(mo));
                im.weight_of.push_back(w);
            }
        }
    }

    // Coefficient of the pure-lattice monomial e^{(mu+mv)gamma} in
    // (e^{mu gamma})_n e^{mv gamma}: the creation exponential contributes at
    // order -n-1-2k*mu*mv, and only order zero is Heisenberg-free.
    static Rational pure_lattice_coefficient(int k, int mu, int mv, long long n) {
        return (-n - 1 - 2LL * k * mu * mv) == 0 ? 1 : 0;
    }

    // Fix the signs c_m = (e^{m gamma}, e^{-m gamma}) by imposing invariance,
    // (a_n u, v) = (-1)^{wt a} (u, a_{2 wt a - 2 - n} v) for the primary
    // a = e^{gamma}, on the exact ladder products that shift m by one.
    void derive_lattice_signs() {
        Impl& im = *impl_;
        int max_m = 0;
        while (static_cast<long long>(k()) * (max_m + 1) * (max_m + 1) <= im.truncation) ++max_m;
        im.lattice_signs.assign(std::max(1, max_m + 1), 0);
        im.lattice_signs[0] = 1;  // (1, 1) = 1 normalization
        int sign = (k() % 2 == 0) ? 1 : -1;
        for (int m = 1; m <= max_m; ++m) {
            long long n = -2LL * k() * (m - 1) - 1;
            Rational lhs = pure_lattice_coefficient(k(), 1, m - 1, n);
            Rational rhs = pure_lattice_coefficient(k(), 1, -m, 2LL * k() - 2 - n);
            if (lhs == 0 || rhs == 0)
                throw InconsistencyError("lattice ladder product degenerated while deriving form signs");
            im.lattice_signs[m] = sign * im.lattice_signs[m - 1] * rhs / lhs;
        }
    }

    std::shared_ptr<Impl> impl_;
};

inline State State::monomial(const LatticeContext& ctx, const Monomial& m, Scalar c) {
    if (c.is_zero()) return State();
    return State({{ctx.id_of(m), std::move(c)}});
}
inline State State::vacuum(const LatticeContext& ctx) { return monomial(ctx, Monomial{}); }

inline std::span<const Monomial> enumerate_basis(const LatticeContext& ctx, int n) {
    return ctx.basis(n);
}
inline long long graded_dimension(const LatticeContext& ctx, int n) { return ctx.dimension(n); }

inline State add_states(const State& a, const State& b) {
    StateBuilder sb;
    sb.add_state(a);
    sb.add_state(b);
    return sb.build();
}

inline State scale_state(const Scalar& c, const State& a) {
    if (c.is_zero()) return State();
    std::vector<State::Term> terms;
    terms.reserve(a.support_size());
    for (const auto& [id, x] : a.terms()) {
        Scalar y = c * x;
        if (!y.is_zero()) terms.emplace_back(id, std::move(y));
    }
    return State(std::move(terms));
}

inline State neg_state(const State& a) { return scale_state(Scalar(-1), a); }

inline State sub_states(const State& a, const State& b) { return add_states(a, neg_state(b)); }

inline State project_weight(const LatticeContext& ctx, const State& u, int n) {
    std::vector<State::Term> terms;
    for (const auto& t : u.terms())
        if (ctx.weight_of(t.first) == n) terms.push_back(t);
    return State(std::move(terms));
}

inline std::optional<int> homogeneous_weight(const LatticeContext& ctx, const State& u) {
    if (u.is_zero()) return std::nullopt;
    int w = ctx.weight_of(u.terms().front().first);
    for (const auto& t : u.terms())
        if (ctx.weight_of(t.first) != w) return std::nullopt;
    return w;
}

// The invariant bilinear form with (1,1) = 1.  On basis monomials it is
// diagonal in the Heisenberg part (alpha(n) adjoint to -alpha(-n)) and pairs
// e^{m gamma} with e^{-m gamma} through the derived sign c_m.
inline Rational form_on_monomials(const LatticeContext& ctx, const Monomial& a) {
    // value of (a, mirror(a)); caller guarantees the partition match
    Rational val = ctx.lattice_pair_sign(a.exponent);
    int i = 0;
    int n = a.part_count();
    while (i < n) {
        int j = i;
        while (j < n && a.parts[j] == a.parts[i]) ++j;
        long long t = a.parts[i], r = j - i;
        // (-1)^r r! (2k t)^r
        Rational f = factorial(r) * rational_pow(Rational(2LL * ctx.k() * t), r);
        if (r % 2 != 0) f = -f;
        val *= f;
        i = j;
    }
    return val;
}

inline Scalar bilinear_form(const LatticeContext& ctx, const State& u, const State& v) {
    Scalar out;
    for (const auto& [id, cu] : u.terms()) {
        MonomialId partner = ctx.mirror_id(id);
        Scalar cv = v.coeff(partner);
        if (cv.is_zero()) continue;
        out += form_on_monomials(ctx, ctx.monomial(id)) * (cu * cv);
    }
    return out;
}

}  // namespace voa
