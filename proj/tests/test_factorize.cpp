#include <doctest.h>

#include "nheart/factorize.hpp"
#include "nheart/random_gen.hpp"

using namespace nheart;

namespace {

Complex heart_obj(Rng& rng, const HeartContext& ctx) {
    return random_complex(rng.next(), 3, -ctx.n + 1, 0, ctx.p);
}

ChainMap heart_map(Rng& rng, const HeartContext& ctx) {
    auto x = heart_obj(rng, ctx);
    auto y = heart_obj(rng, ctx);
    return random_chain_map(x, y, rng.next());
}

HeartContext ctx_for(int t) {
    int n = 1 + t % 3;
    std::uint32_t p = (t / 3) % 2 ? 2 : 5;
    return HeartContext(n, p);
}

}  // namespace

TEST_CASE("factor_1n: m.e = f exactly, m is n-mono, e is 1-epi") {
    Rng rng(301);
    for (int t = 0; t < 36; ++t) {
        HeartContext ctx = ctx_for(t);
        auto f = heart_map(rng, ctx);
        auto fac = factor_1n(ctx, f);
        CHECK(fac.eta.is_zero_map());
        CHECK(compose(fac.m, fac.e) == f);
        CHECK(is_m_mono(ctx, fac.m, ctx.n));
        CHECK(is_m_epi(ctx, fac.e, 1));
        CHECK(in_heart(ctx, factor_object(fac)));
    }
}

TEST_CASE("factor_n1: m.e = f exactly, e is n-epi, m is 1-mono") {
    Rng rng(303);
    for (int t = 0; t < 36; ++t) {
        HeartContext ctx = ctx_for(t);
        auto f = heart_map(rng, ctx);
        auto fac = factor_n1(ctx, f);
        CHECK(fac.eta.is_zero_map());
        CHECK(compose(fac.m, fac.e) == f);
        CHECK(is_m_epi(ctx, fac.e, ctx.n));
        CHECK(is_m_mono(ctx, fac.m, 1));
        CHECK(in_heart(ctx, factor_object(fac)));
    }
}

TEST_CASE("factor of the identity has quasi-isomorphism legs") {
    Rng rng(305);
    for (int t = 0; t < 12; ++t) {
        HeartContext ctx = ctx_for(t);
        auto x = heart_obj(rng, ctx);
        auto id = ChainMap::identity(x);
        for (auto fac : {factor_1n(ctx, id), factor_n1(ctx, id)}) {
            CHECK(is_quasi_iso(fac.e));
            CHECK(is_quasi_iso(fac.m));
        }
    }
}

TEST_CASE("n=1 recovers the classical image: dim H^0(Z) = rank f") {
    Rng rng(307);
    HeartContext c1(1, 5);
    for (int t = 0; t < 30; ++t) {
        std::size_t dx = rng.below(4), dy = rng.below(4);
        Complex x(5), y(5);
        x.set_dim(0, dx);
        y.set_dim(0, dy);
        ChainMap f(x, y, 0);
        if (dx && dy) f.set_comp(0, FieldMatrix::random(dy, dx, 5, rng));
        auto fac = factor_1n(c1, f);
        CHECK(cohomology(factor_object(fac), 0).dim == rank(f.comp(0)));
        auto fac2 = factor_n1(c1, f);
        CHECK(cohomology(factor_object(fac2), 0).dim == rank(f.comp(0)));
    }
}

TEST_CASE("n=2 pinned example: projection [k,k]@(-1,0) -> k@0") {
    HeartContext c2(2, 5);
    Complex x(5);
    x.set_dim(-1, 1);
    x.set_dim(0, 1);
    Complex y(5);
    y.set_dim(0, 1);
    ChainMap f(x, y, 0);
    f.set_comp(0, FieldMatrix::identity(1, 5));
    auto fac = factor_1n(c2, f);
    // H^0(Z) = H^0(X) = k; H^{-1}(Z) = im H^{-1}(f) = 0.
    CHECK(cohomology(factor_object(fac), 0).dim == 1);
    CHECK(cohomology(factor_object(fac), -1).dim == 0);
}

TEST_CASE("cokernel of m is quasi-isomorphic to cokernel of f") {
    Rng rng(309);
    for (int t = 0; t < 18; ++t) {
        HeartContext ctx = ctx_for(t);
        auto f = heart_map(rng, ctx);
        auto fac = factor_1n(ctx, f);
        auto cf = hcoker(ctx, f);
        auto cm = hcoker(ctx, fac.m);
        for (int i = -4; i <= 1; ++i)
            CHECK(cohomology(cf.c, i).dim == cohomology(cm.c, i).dim);
        // A comparison chain map u with u.q_m ~ q_f exists and is a
        // quasi-isomorphism (the natural morphism of cokernels).
        MapSolver sv;
        auto u = sv.add_unknown(cm.c, cf.c, 0);
        auto hu = sv.add_unknown(fac.m.target(), cf.c, -1);
        auto d = [](const GradedMap& g) { return graded_differential(g); };
        sv.require({{u, d}}, GradedMap::zero(cm.c, cf.c, 1));
        ChainMap qm = cm.proj, qf = cf.proj;
        sv.require({{u, [qm](const GradedMap& g) { return compose(g, qm); }}, {hu, d}}, qf);
        auto sol = sv.solve();
        REQUIRE(sol.has_value());
        CHECK(is_quasi_iso((*sol)[u]));
    }
}

TEST_CASE("comparison of a factorization with itself accepts the identity") {
    Rng rng(311);
    HeartContext ctx(2, 5);
    auto f = heart_map(rng, ctx);
    auto fac = factor_1n(ctx, f);
    auto cmp = compare_factorizations(ctx, fac, fac);
    REQUIRE(cmp.has_value());
    auto h = solve_homotopy(cmp->t, ChainMap::identity(factor_object(fac)));
    CHECK(h.has_value());
}

TEST_CASE("comparison identities hold exactly and t is a homotopy equivalence") {
    Rng rng(313);
    for (int t = 0; t < 18; ++t) {
        HeartContext ctx = ctx_for(t);
        auto f = heart_map(rng, ctx);
        auto fac = factor_1n(ctx, f);

        auto z = factor_object(fac);
        Complex acyclic(ctx.p);
        acyclic.set_dim(-1, 1);
        acyclic.set_dim(0, 1);
        acyclic.set_diff(-1, FieldMatrix::identity(1, ctx.p));
        auto phi = sum_incl_left(z, acyclic);
        auto phi_inv = quasi_inverse(phi);
        REQUIRE(phi_inv.has_value());
        auto moved = transport_along_quasi_iso(fac, phi, *phi_inv);
        CHECK(graded_differential(moved.eta) ==
              compose(fac.m, fac.e) - compose(moved.m, moved.e));

        auto cmp = compare_factorizations(ctx, fac, moved);
        REQUIRE(cmp.has_value());
        CHECK(graded_differential(cmp->t).is_zero_map());
        CHECK(graded_differential(cmp->h_e) == moved.e - compose(cmp->t, fac.e));
        CHECK(graded_differential(cmp->h_m) == fac.m - compose(moved.m, cmp->t));
        CHECK(graded_differential(cmp->zeta) ==
              moved.eta - fac.eta - compose(cmp->h_m, fac.e) + compose(moved.m, cmp->h_e));
        CHECK(quasi_inverse(cmp->t).has_value());
        CHECK(solve_homotopy(cmp->t, phi).has_value());

        Rng sub(rng.next());
        auto cmp2 = compare_factorizations_random(ctx, fac, moved, sub);
        REQUIRE(cmp2.has_value());
        CHECK(solve_homotopy(cmp->t, cmp2->t).has_value());
    }
}

TEST_CASE("degenerate detection: f n-mono iff e-leg is a quasi-iso, f 1-epi iff m-leg is") {
    Rng rng(315);
    for (int t = 0; t < 24; ++t) {
        HeartContext ctx = ctx_for(t);
        auto f = heart_map(rng, ctx);
        auto fac = factor_1n(ctx, f);
        CHECK(is_m_mono(ctx, f, ctx.n) == is_quasi_iso(fac.e));
        CHECK(is_m_epi(ctx, f, 1) == is_quasi_iso(fac.m));
    }
}

TEST_CASE("comparison rejects mismatched inputs") {
    Rng rng(317);
    HeartContext ctx(2, 5);
    auto f = heart_map(rng, ctx);
    auto g = heart_map(rng, ctx);
    auto ff = factor_1n(ctx, f);
    auto fg = factor_1n(ctx, g);
    CHECK_FALSE(compare_factorizations(ctx, ff, fg).has_value());
    auto fn = factor_n1(ctx, f);
    CHECK_FALSE(compare_factorizations(ctx, ff, fn).has_value());
}

TEST_CASE("source normalization kicks in for positive chain support") {
    HeartContext ctx(1, 5);
    Rng rng(319);
    Complex x(5);
    x.set_dim(0, 2);
    x.set_dim(1, 1);
    FieldMatrix d(1, 2, 5);
    d.set(0, 0, 1);
    x.set_diff(0, d);
    REQUIRE(in_heart(ctx, x));
    Complex y(5);
    y.set_dim(0, 2);
    auto f = random_chain_map(x, y, rng.next());
    auto fac = factor_1n(ctx, f);
    CHECK(fac.source_normalized);
    CHECK(is_m_mono(ctx, fac.m, 1));
    CHECK(is_m_epi(ctx, fac.e, 1));
}
