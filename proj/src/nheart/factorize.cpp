#include "nheart/factorize.hpp"

namespace nheart {

namespace {

// Same corestriction helper as the heart constructions use.
ChainMap corestrict_through(const ChainMap& ambient_map, const ChainMap& incl, const char* where) {
    ChainMap r(ambient_map.source(), incl.source(), 0);
    for (auto& [i, d] : ambient_map.source().dims()) {
        (void)d;
        if (incl.source().dim(i) == 0) {
            if (!ambient_map.comp(i).is_zero())
                throw std::logic_error(std::string(where) + ": image escapes the subcomplex");
            continue;
        }
        auto sol = solve_linear(incl.comp(i), ambient_map.comp(i));
        if (!sol) throw std::logic_error(std::string(where) + ": image escapes the subcomplex");
        r.set_comp(i, *sol);
    }
    return r;
}

ChainMap descend_through(const ChainMap& ambient_map, const ChainMap& proj, const char* where) {
    ChainMap r(proj.target(), ambient_map.target(), 0);
    for (auto& [i, d] : proj.target().dims()) {
        (void)d;
        if (ambient_map.target().dim(i) == 0) continue;
        auto sec = solve_linear(proj.comp(i), FieldMatrix::identity(proj.target().dim(i), proj.modulus()));
        if (!sec) throw std::logic_error(std::string(where) + ": projection not surjective");
        r.set_comp(i, ambient_map.comp(i) * *sec);
    }
    if (compose(r, proj) != ambient_map)
        throw std::logic_error(std::string(where) + ": map does not descend through the quotient");
    return r;
}

}  // namespace

const Complex& factor_object(const Factorization& f) { return f.e.target(); }

Factorization factor_1n(const HeartContext& ctx, const ChainMap& f_in) {
    require_in_heart(ctx, f_in.source(), "factor_1n");
    require_in_heart(ctx, f_in.target(), "factor_1n");

    ChainMap f = f_in;
    bool normalized = false;
    if (f.source().max_degree() > 0) {
        Normalized nm = normalize_support(f.source());
        f = compose(f, nm.into_original);
        normalized = true;
    }
    const Complex& x = f.source();
    const Complex& y = f.target();

    CokernelData cd = hcoker(ctx, f);
    KernelData kd = hker(ctx, cd.proj);

    // e(x) = (f x, h^f x) into Cone(q)[-1]^i = Y^i (+) C^{i-1}, corestricted
    // to the kernel subcomplex.
    TruncationMap tr = truncate_le_map(shift(cone(cd.proj).cone, -1), 0);
    ChainMap into_ambient(x, tr.structure.target(), 0);
    for (auto& [i, d] : x.dims()) {
        (void)d;
        if (tr.structure.target().dim(i) == 0) continue;
        into_ambient.set_comp(i, FieldMatrix::vstack(f.comp(i), cd.h.comp(i)));
    }
    ChainMap e = corestrict_through(into_ambient, tr.structure, "factor_1n");

    Factorization out{std::move(e), kd.incl, GradedMap::zero(x, y, -1), FactorKind::OneN,
                      normalized, false};
    if (compose(out.m, out.e) != f) throw std::logic_error("factor_1n: m.e != f (sign bug)");
    return out;
}

Factorization factor_n1(const HeartContext& ctx, const ChainMap& f_in) {
    require_in_heart(ctx, f_in.source(), "factor_n1");
    require_in_heart(ctx, f_in.target(), "factor_n1");

    ChainMap f = f_in;
    bool normalized = false;
    if (f.target().min_degree() < -ctx.n + 1 && !f.target().is_zero_complex()) {
        TruncationMap tm = truncate_ge_map(f.target(), -ctx.n + 1);
        f = compose(tm.structure, f);
        normalized = true;
    }
    const Complex& x = f.source();
    const Complex& y = f.target();

    KernelData kd = hker(ctx, f);
    ConeData cn = cone(kd.incl);
    TruncationMap tr = truncate_ge_map(cn.cone, -ctx.n + 1);
    ChainMap e = compose(tr.structure, cn.incl);

    // m descends (kappa, x) -> -h_f(kappa) + f(x) through tau_ge(-n+1).
    ChainMap ambient = right_comparison(make_three_term(kd.incl, f, kd.h));
    ChainMap m = descend_through(ambient, tr.structure, "factor_n1");

    Factorization out{std::move(e), std::move(m), GradedMap::zero(x, y, -1), FactorKind::NOne,
                      false, normalized};
    if (compose(out.m, out.e) != f) throw std::logic_error("factor_n1: m.e != f (sign bug)");
    return out;
}

namespace {

std::optional<MapSolver> comparison_system(const Factorization& first, const Factorization& second,
                                           std::size_t ids[4]) {
    if (first.kind != second.kind) return std::nullopt;
    if (first.e.source() != second.e.source() || first.m.target() != second.m.target())
        return std::nullopt;
    ChainMap f1 = compose(first.m, first.e) + graded_differential(first.eta);
    ChainMap f2 = compose(second.m, second.e) + graded_differential(second.eta);
    if (f1 != f2) return std::nullopt;

    const Complex& x = first.e.source();
    const Complex& y = first.m.target();
    const Complex& z = first.e.target();
    const Complex& zp = second.e.target();

    MapSolver sv;
    std::size_t t = sv.add_unknown(z, zp, 0);
    std::size_t he = sv.add_unknown(x, zp, -1);
    std::size_t hm = sv.add_unknown(z, y, -1);
    std::size_t zeta = sv.add_unknown(x, y, -2);
    ids[0] = t; ids[1] = he; ids[2] = hm; ids[3] = zeta;

    auto d = [](const GradedMap& g) { return graded_differential(g); };
    ChainMap e = first.e, ep = second.e, m = first.m, mp = second.m;
    // t closed.
    sv.require({{t, d}}, GradedMap::zero(z, zp, 1));
    // D(h_e) + t.e = e'.
    sv.require({{he, d}, {t, [e](const GradedMap& g) { return compose(g, e); }}}, ep);
    // D(h_m) + m'.t = m.
    sv.require({{hm, d}, {t, [mp](const GradedMap& g) { return compose(mp, g); }}}, m);
    // D(zeta) + h_m.e - m'.h_e = eta' - eta.
    sv.require({{zeta, d},
                {hm, [e](const GradedMap& g) { return compose(g, e); }},
                {he, [mp](const GradedMap& g) { return compose(mp, g).negated(); }}},
               second.eta - first.eta);
    return sv;
}

FactorComparison pack_comparison(std::vector<GradedMap> sol, const std::size_t ids[4]) {
    return FactorComparison{std::move(sol[ids[0]]), std::move(sol[ids[1]]),
                            std::move(sol[ids[2]]), std::move(sol[ids[3]])};
}

}  // namespace

std::optional<FactorComparison> compare_factorizations(const HeartContext& ctx,
                                                       const Factorization& first,
                                                       const Factorization& second) {
    (void)ctx;
    std::size_t ids[4];
    auto sv = comparison_system(first, second, ids);
    if (!sv) return std::nullopt;
    auto sol = sv->solve();
    if (!sol) return std::nullopt;
    return pack_comparison(std::move(*sol), ids);
}

std::optional<FactorComparison> compare_factorizations_random(const HeartContext& ctx,
                                                              const Factorization& first,
                                                              const Factorization& second,
                                                              Rng& rng) {
    (void)ctx;
    std::size_t ids[4];
    auto sv = comparison_system(first, second, ids);
    if (!sv) return std::nullopt;
    auto sol = sv->solve_random(rng);
    if (!sol) return std::nullopt;
    return pack_comparison(std::move(*sol), ids);
}

Factorization transport_along_quasi_iso(const Factorization& f, const ChainMap& phi,
                                        const HomotopyEquivalence& phi_inv) {
    if (phi.source() != f.e.target()) throw std::invalid_argument("transport: phi must start at Z");
    Factorization out = f;
    out.e = compose(phi, f.e);
    out.m = compose(f.m, phi_inv.inverse);
    // D(eta + m.h_s.e) = f - m'.e' when D(h_s) = id - g.phi.
    out.eta = f.eta + compose(compose(f.m, phi_inv.h_source), f.e);
    return out;
}

}  // namespace nheart
