#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <vector>

#include "voa/fock.hpp"

using namespace voa;

namespace {

// independent partition-count oracle
std::vector<long long> partition_table(int n) {
    std::vector<long long> p(n + 1, 0);
    p[0] = 1;
    for (int part = 1; part <= n; ++part)
        for (int w = part; w <= n; ++w) p[w] += p[w - part];
    return p;
}

State random_state(const LatticeContext& ctx, std::mt19937_64& rng, int weight, int nterms) {
    auto basis = ctx.basis(weight);
    std::uniform_int_distribution<std::size_t> pick(0, basis.size() - 1);
    std::uniform_int_distribution<int> num(-5, 5);
    StateBuilder sb;
    for (int j = 0; j < nterms; ++j) {
        const Monomial& m = basis[pick(rng)];
        sb.add(ctx.id_of(m), Scalar(Rational(num(rng))));
    }
    return sb.build();
}

}  // namespace

TEST_CASE("basis enumeration and graded dimensions") {
    LatticeContext ctx(2, 12);
    auto p = partition_table(20);

    // oracle: dim V_n = sum over k m^2 <= n of p(n - k m^2)
    for (int n = 0; n <= 12; ++n) {
        long long expect = 0;
        for (int m = -4; m <= 4; ++m) {
            long long lw = static_cast<long long>(ctx.k()) * m * m;
            if (lw <= n) expect += p[n - lw];
        }
        REQUIRE(graded_dimension(ctx, n) == expect);
        REQUIRE(static_cast<long long>(enumerate_basis(ctx, n).size()) == expect);
    }
    CHECK(graded_dimension(ctx, 0) == 1);
    CHECK(graded_dimension(ctx, 1) == 3);
    CHECK(graded_dimension(ctx, 2) == 4);

    SECTION("weight-1 basis of the norm-2 lattice") {
        auto b = enumerate_basis(ctx, 1);
        REQUIRE(b.size() == 3);
        // canonical order: m = 0 first, then e^{+alpha}, then e^{-alpha}
        CHECK(b[0] == Monomial{{1}, 0});
        CHECK(b[1] == Monomial{{}, 1});
        CHECK(b[2] == Monomial{{}, -1});
    }

    SECTION("norm 8, weight 4: five partitions of 4 plus both unit exponentials") {
        LatticeContext big(8, 6);
        CHECK(graded_dimension(big, 4) == 7);
        CHECK(graded_dimension(big, 0) == 1);
    }

    SECTION("canonical id order is weight-major and deterministic") {
        MonomialId prev = 0;
        for (int n = 1; n <= 12; ++n)
            for (const auto& m : enumerate_basis(ctx, n)) {
                MonomialId id = ctx.id_of(m);
                CHECK(id > prev);
                prev = id;
            }
    }
}

TEST_CASE("state arithmetic") {
    LatticeContext ctx(2, 10);
    State one = State::vacuum(ctx);
    State a1 = State::monomial(ctx, Monomial{{1}, 0});

    State sum = add_states(one, a1);
    CHECK(project_weight(ctx, sum, 0) == one);
    CHECK(project_weight(ctx, sum, 1) == a1);
    CHECK(add_states(sum, neg_state(sum)).is_zero());
    CHECK(scale_state(Scalar(0), sum).is_zero());
    CHECK(homogeneous_weight(ctx, sum) == std::nullopt);
    CHECK(homogeneous_weight(ctx, a1) == 1);
}

TEST_CASE("bilinear form values") {
    LatticeContext ctx(2, 12);
    State one = State::vacuum(ctx);
    State a1 = State::monomial(ctx, Monomial{{1}, 0});

    CHECK(bilinear_form(ctx, one, one) == Scalar(1));
    // (alpha(-1)1, alpha(-1)1) = -(1, alpha(1)alpha(-1)1) = -2k under the
    // invariant form normalized by (1,1) = 1
    CHECK(bilinear_form(ctx, a1, a1) == Scalar(-2));

    // (omega, omega) = c/2 = 1/2 for omega = alpha(-1)^2 1/4
    State omega = scale_state(Scalar(Rational(1, 4)), State::monomial(ctx, Monomial{{1, 1}, 0}));
    CHECK(bilinear_form(ctx, omega, omega) == Scalar(Rational(1, 2)));

    SECTION("symmetry on random equal-weight pairs") {
        std::mt19937_64 rng(5150);
        for (int it = 0; it < 100; ++it) {
            int w = static_cast<int>(rng() % 9);
            State u = random_state(ctx, rng, w, 4);
            State v = random_state(ctx, rng, w, 4);
            REQUIRE(bilinear_form(ctx, u, v) == bilinear_form(ctx, v, u));
        }
    }

    SECTION("cross-weight orthogonality") {
        std::mt19937_64 rng(6);
        for (int it = 0; it < 50; ++it) {
            int w1 = static_cast<int>(rng() % 8);
            int w2 = (w1 + 1 + static_cast<int>(rng() % 4)) % 9;
            if (w1 == w2) continue;
            State u = random_state(ctx, rng, w1, 3);
            State v = random_state(ctx, rng, w2, 3);
            REQUIRE(bilinear_form(ctx, u, v).is_zero());
        }
    }

    SECTION("derived lattice signs at norm 2 alternate") {
        CHECK(ctx.lattice_pair_sign(0) == 1);
        CHECK(ctx.lattice_pair_sign(1) == -1);
        CHECK(ctx.lattice_pair_sign(2) == 1);
        CHECK(ctx.lattice_pair_sign(3) == -1);
        State e2 = State::monomial(ctx, Monomial{{}, 2});
        State em2 = State::monomial(ctx, Monomial{{}, -2});
        State E = add_states(e2, em2);
        CHECK(bilinear_form(ctx, E, E) == Scalar(2));
    }
}

TEST_CASE("context validation") {
    CHECK_THROWS_AS(LatticeContext(3, 5), PreconditionError);
    CHECK_THROWS_AS(LatticeContext(0, 5), PreconditionError);
    LatticeContext ctx(2, 4);
    CHECK_THROWS_AS(ctx.basis(5), PreconditionError);
    CHECK_THROWS_AS(ctx.id_of(Monomial{{5}, 0}), PreconditionError);
}
