#include "ouspec/order.hpp"
#include "ouspec/rng.hpp"
#include "ouspec/suites.hpp"

#include "doctest.h"
#include "oracles.hpp"

#include <cmath>

using namespace ouspec;

TEST_CASE("cone membership: matrix model") {
    const Ctx ctx = make_matrix_context(2);
    CHECK(cone_contains(Element::unit(ctx)));

    // Eigenvalues {0, 2} by the closed-form 2x2 oracle.
    const Element a = testing::mat2(ctx, 1.0, 1.0, 1.0);
    const auto eig = testing::eig2x2(1.0, 1.0, 1.0);
    CHECK(eig[0] == doctest::Approx(0.0));
    CHECK(eig[1] == doctest::Approx(2.0));
    CHECK(cone_contains(a));
    CHECK_FALSE(cone_contains(a - Element::scalar(ctx, 2.1)));
}

TEST_CASE("cone membership: spin boundary case") {
    const Ctx ctx = make_spin_context(NormOracle::lp(2, 2.0));
    const Element a = Element::from_spin(ctx, 1.0, Vec{0.6, 0.8});  // ||y|| = 1 = alpha
    CHECK(cone_contains(a));
    CHECK_FALSE(cone_contains(Element::from_spin(ctx, 0.99, Vec{0.6, 0.8})));
}

TEST_CASE("order relation") {
    const Ctx ctx = make_spin_context(NormOracle::lp(2, 2.0));
    const Element a = Element::from_spin(ctx, 0.0, Vec{1.0, 0.0});
    CHECK(order_leq(Element::zero(ctx), Element::unit(ctx)));
    CHECK(order_leq(a, a));  // reflexivity
    CHECK(order_leq(a, Element::scalar(ctx, 1.0)));
    CHECK_FALSE(order_leq(a, Element::scalar(ctx, 0.9)));
}

TEST_CASE("order unit norm closed forms") {
    const Ctx mctx = make_matrix_context(2);
    CHECK(order_unit_norm(Element::unit(mctx)) == doctest::Approx(1.0));
    CHECK(order_unit_norm(testing::diag(mctx, {2.0, -3.0})) == doctest::Approx(3.0));

    const Ctx sctx = make_spin_context(NormOracle::lp(2, 2.0));
    const Element s = Element::from_spin(sctx, 2.0, Vec{-3.0, 0.0});
    CHECK(order_unit_norm(s) == doctest::Approx(5.0));
    CHECK(order_unit_norm_bisect(s) == doctest::Approx(5.0).epsilon(1e-10));
}

TEST_CASE("effects") {
    const Ctx ctx = make_matrix_context(3);
    CHECK(is_effect(Element::scalar(ctx, 0.5)));
    CHECK_FALSE(is_effect(Element::scalar(ctx, -0.01)));

    const Ctx sctx = make_spin_context(NormOracle::lp(2, 2.0));
    CHECK(is_effect(Element::from_spin(sctx, 0.5, Vec{0.5, 0.0})));  // sharp element 1/2 (1, y)
}

TEST_CASE("norm axioms on random samples, both models") {
    for (const char* desc : {"matrix:4", "spin:2:3"}) {
        const Ctx ctx = parse_model(desc);
        for (int t = 0; t < 200; ++t) {
            Xorshift64Star rng = trial_stream(1, static_cast<std::uint64_t>(t));
            const Element a = random_element(ctx, rng);
            const Element b = random_element(ctx, rng);
            const double na = order_unit_norm(a), nb = order_unit_norm(b);
            CHECK(order_unit_norm(a + b) <= na + nb + 1e-9);
            const double lam = 2.0 * rng.gauss();
            CHECK(order_unit_norm(lam * a) ==
                  doctest::Approx(std::abs(lam) * na).epsilon(1e-10));
        }
    }
}

TEST_CASE("bisection norm agrees with the closed form to 1e-8") {
    for (const char* desc : {"matrix:3", "spin:3:2"}) {
        const Ctx ctx = parse_model(desc);
        for (int t = 0; t < 1000; ++t) {
            Xorshift64Star rng = trial_stream(2, static_cast<std::uint64_t>(t));
            const Element a = random_element(ctx, rng);
            CHECK(std::abs(order_unit_norm_bisect(a) - order_unit_norm(a)) < 1e-8);
        }
    }
}

TEST_CASE("cone closed under addition and nonnegative scaling") {
    const Ctx ctx = make_matrix_context(4);
    for (int t = 0; t < 100; ++t) {
        Xorshift64Star rng = trial_stream(3, static_cast<std::uint64_t>(t));
        const Element a = random_element(ctx, rng);
        const Element b = random_element(ctx, rng);
        const Element pa = jordan_product(a, a);
        const Element pb = jordan_product(b, b);
        CHECK(cone_contains(pa + pb));
        CHECK(cone_contains(rng.u01() * pa));
    }
}

TEST_CASE("element text round trip") {
    const Ctx ctx = make_matrix_context(2);
    const Element a = testing::mat2(ctx, 1.25, -0.5, 3.0);
    const auto [ctx2, b] = parse_element_text(to_text(a));
    CHECK(ctx->compatible(*ctx2));
    CHECK(order_unit_norm(a - Element(ctx, b.coords())) == doctest::Approx(0.0));

    const Ctx sctx = make_spin_context(NormOracle::lp(3, 2.5));
    const Element s = Element::from_spin(sctx, 0.75, Vec{0.1, -0.2, 0.3});
    const auto [sctx2, s2] = parse_element_text(to_text(s));
    CHECK(sctx->compatible(*sctx2));
    for (size_t i = 0; i < s.coords().size(); ++i) CHECK(s.coords()[i] == s2.coords()[i]);
}

TEST_CASE("context invariants are enforced") {
    CHECK_THROWS_AS(make_matrix_context(0), contract_error);
    CHECK_THROWS_AS(make_matrix_context(2, 0.0), contract_error);
    CHECK_THROWS_AS(make_matrix_context(2, 1e-9, 1e-2), contract_error);
    CHECK_THROWS_AS(parse_model("spin:1.05:2"), contract_error);
    CHECK_THROWS_AS(parse_model("bogus:3"), contract_error);

    const Ctx m = make_matrix_context(2);
    const Ctx s = make_spin_context(NormOracle::lp(2, 2.0));
    CHECK_THROWS_AS(Element::unit(m) + Element::unit(s), contract_error);
}
