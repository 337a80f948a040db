#include "nheart/heart.hpp"

namespace nheart {

namespace {

// Iso of H^i(f) over a closed degree range, dims included.
bool iso_on_range(const ChainMap& f, int lo, int hi) {
    for (int i = lo; i <= hi; ++i) {
        std::size_t a = cohomology(f.source(), i).dim;
        std::size_t b = cohomology(f.target(), i).dim;
        if (a != b) return false;
        if (a != 0 && rank(induced_cohomology_map(f, i)) != a) return false;
    }
    return true;
}

int global_min(const Complex& a, const Complex& b) { return std::min(a.min_degree(), b.min_degree()); }
int global_max(const Complex& a, const Complex& b) { return std::max(a.max_degree(), b.max_degree()); }

// Express a map into an ambient complex through a degreewise-injective
// structure map (the tau_le inclusions); fails only on a convention bug.
ChainMap corestrict(const ChainMap& ambient_map, const ChainMap& incl, const char* where) {
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

// Descend a map defined on an ambient complex through a degreewise-surjective
// structure map (the tau_ge projections); requires the map to kill ker(proj).
ChainMap descend(const ChainMap& ambient_map, const ChainMap& proj, const char* where) {
    ChainMap r(proj.target(), ambient_map.target(), 0);
    for (auto& [i, d] : proj.target().dims()) {
        (void)d;
        if (ambient_map.target().dim(i) == 0) continue;
        auto sec = solve_linear(proj.comp(i), FieldMatrix::identity(proj.target().dim(i), proj.modulus()));
        if (!sec) throw std::logic_error(std::string(where) + ": projection not surjective");
        r.set_comp(i, ambient_map.comp(i) * *sec);
    }
    // Well-definedness: the candidate must reproduce the ambient map.
    if (compose(r, proj) != ambient_map)
        throw std::logic_error(std::string(where) + ": map does not descend through the quotient");
    return r;
}

}  // namespace

bool in_heart(const HeartContext& ctx, const Complex& x) {
    if (x.modulus() != ctx.p) return false;
    if (x.is_zero_complex()) return true;
    for (int i = x.min_degree(); i <= x.max_degree(); ++i) {
        if (i >= -ctx.n + 1 && i <= 0) continue;
        if (cohomology(x, i).dim != 0) return false;
    }
    return true;
}

void require_in_heart(const HeartContext& ctx, const Complex& x, const char* where) {
    if (!in_heart(ctx, x))
        throw std::invalid_argument(std::string(where) + ": object is not in the n-extended heart");
}

Normalized normalize_support(const Complex& x) {
    if (x.max_degree() <= 0) return {x, ChainMap::identity(x), false};
    TruncationMap t = truncate_le_map(x, 0);
    return {t.t, t.structure, true};
}

Complex omega_obj(const HeartContext& ctx, const Complex& x) {
    require_in_heart(ctx, x, "omega");
    return truncate_le(shift(x, -1), 0).t;
}

ChainMap omega_map(const HeartContext& ctx, const ChainMap& f) {
    require_in_heart(ctx, f.source(), "omega");
    require_in_heart(ctx, f.target(), "omega");
    return truncate_le_chain_map(shift_map(f, -1), 0);
}

Complex sigma_obj(const HeartContext& ctx, const Complex& x) {
    require_in_heart(ctx, x, "sigma");
    return truncate_ge(shift(x, 1), -ctx.n + 1).t;
}

ChainMap sigma_map(const HeartContext& ctx, const ChainMap& f) {
    require_in_heart(ctx, f.source(), "sigma");
    require_in_heart(ctx, f.target(), "sigma");
    return truncate_ge_chain_map(shift_map(f, 1), -ctx.n + 1);
}

ChainMap omega_iter_map(const HeartContext& ctx, const ChainMap& f, int times) {
    ChainMap r = f;
    for (int i = 0; i < times; ++i) r = omega_map(ctx, r);
    return r;
}

GradedMap loop_structure_map(const HeartContext& ctx, const Complex& x) {
    require_in_heart(ctx, x, "loop_structure_map");
    TruncationMap t = truncate_le_map(shift(x, -1), 0);
    GradedMap h(t.t, x, -1);
    for (auto& [i, d] : t.t.dims()) {
        (void)d;
        if (x.dim(i - 1) == 0) continue;
        h.set_comp(i, t.structure.comp(i));
    }
    return h;
}

GradedMap susp_structure_map(const HeartContext& ctx, const Complex& x) {
    require_in_heart(ctx, x, "susp_structure_map");
    TruncationMap t = truncate_ge_map(shift(x, 1), -ctx.n + 1);
    GradedMap h(x, t.t, -1);
    for (auto& [i, d] : x.dims()) {
        (void)d;
        if (t.t.dim(i - 1) == 0) continue;
        h.set_comp(i, t.structure.comp(i - 1));
    }
    return h;
}

KernelData hker(const HeartContext& ctx, const ChainMap& f) {
    require_in_heart(ctx, f.source(), "hker");
    require_in_heart(ctx, f.target(), "hker");
    const Complex& x = f.source();
    const Complex& y = f.target();
    ConeData cn = cone(f);
    TruncationMap tr = truncate_le_map(shift(cn.cone, -1), 0);
    const Complex& k = tr.t;

    ChainMap incl(k, x, 0);
    GradedMap h(k, y, -1);
    for (auto& [i, d] : k.dims()) {
        (void)d;
        // Cone(f)[-1]^i = X^i (+) Y^{i-1}; split the inclusion rows.
        FieldMatrix amb = tr.structure.comp(i);
        std::size_t dx = x.dim(i), dy = y.dim(i - 1);
        if (dx > 0) {
            FieldMatrix mx(dx, amb.cols(), ctx.p);
            for (std::size_t r = 0; r < dx; ++r)
                for (std::size_t c = 0; c < amb.cols(); ++c) mx.set(r, c, amb.at(r, c));
            incl.set_comp(i, mx);
        }
        if (dy > 0) {
            FieldMatrix my(dy, amb.cols(), ctx.p);
            for (std::size_t r = 0; r < dy; ++r)
                for (std::size_t c = 0; c < amb.cols(); ++c) my.set(r, c, amb.at(dx + r, c));
            h.set_comp(i, my);
        }
    }
    return {k, std::move(incl), std::move(h)};
}

CokernelData hcoker(const HeartContext& ctx, const ChainMap& f) {
    require_in_heart(ctx, f.source(), "hcoker");
    require_in_heart(ctx, f.target(), "hcoker");
    const Complex& x = f.source();
    ConeData cn = cone(f);
    TruncationMap tr = truncate_ge_map(cn.cone, -ctx.n + 1);
    ChainMap q = compose(tr.structure, cn.incl);
    GradedMap h(x, tr.t, -1);
    for (auto& [i, d] : x.dims()) {
        std::size_t dc = tr.t.dim(i - 1);
        if (dc == 0) continue;
        // h^f(x) = -proj(x, 0); embed X^i into Cone^{i-1} = X^i (+) Y^{i-1}.
        FieldMatrix pi = tr.structure.comp(i - 1);
        FieldMatrix m(dc, d, ctx.p);
        for (std::size_t r = 0; r < dc; ++r)
            for (std::size_t c = 0; c < d; ++c) m.set(r, c, pi.at(r, c));
        h.set_comp(i, m.negated());
    }
    return {tr.t, std::move(q), std::move(h)};
}

bool is_m_mono(const HeartContext& ctx, const ChainMap& f, int m) {
    if (m < 1 || m > ctx.n) throw std::invalid_argument("is_m_mono: m out of range 1..n");
    require_in_heart(ctx, f.source(), "is_m_mono");
    require_in_heart(ctx, f.target(), "is_m_mono");
    CohomologyData hx = cohomology(f.source(), -m + 1);
    if (hx.dim != 0 && rank(induced_cohomology_map(f, -m + 1)) != hx.dim) return false;
    int lo = global_min(f.source(), f.target()) - 1;
    return iso_on_range(f, lo, -m);
}

bool is_m_epi(const HeartContext& ctx, const ChainMap& f, int m) {
    if (m < 1 || m > ctx.n) throw std::invalid_argument("is_m_epi: m out of range 1..n");
    require_in_heart(ctx, f.source(), "is_m_epi");
    require_in_heart(ctx, f.target(), "is_m_epi");
    int top = -ctx.n + m;
    CohomologyData hy = cohomology(f.target(), top);
    if (hy.dim != 0 && rank(induced_cohomology_map(f, top)) != hy.dim) return false;
    int hi = global_max(f.source(), f.target()) + 1;
    return iso_on_range(f, top + 1, hi);
}

ThreeTerm make_three_term(ChainMap f, ChainMap g, GradedMap h) {
    if (f.target() != g.source() || h.source() != f.source() || h.target() != g.target() ||
        h.degree() != -1)
        throw std::invalid_argument("ThreeTerm: endpoint or degree mismatch");
    if (graded_differential(h) != compose(g, f).negated())
        throw std::invalid_argument("ThreeTerm: null-homotopy invariant D(h) = -g.f violated");
    return {std::move(f), std::move(g), std::move(h)};
}

ChainMap right_comparison(const ThreeTerm& t) {
    const Complex& z = t.g.target();
    ConeData cn = cone(t.f);
    ChainMap c(cn.cone, z, 0);
    for (auto& [i, d] : cn.cone.dims()) {
        (void)d;
        if (z.dim(i) == 0) continue;
        FieldMatrix left = t.h.comp(i + 1).negated();  // X^{i+1} -> Z^i
        FieldMatrix right = t.g.comp(i);               // Y^i -> Z^i
        c.set_comp(i, FieldMatrix::hstack(left, right));
    }
    return c;
}

ChainMap left_comparison(const ThreeTerm& t) {
    const Complex& x = t.f.source();
    Complex cg1 = shift(cone(t.g).cone, -1);  // Cone(g)[-1]^i = Y^i (+) Z^{i-1}
    ChainMap ell(x, cg1, 0);
    for (auto& [i, d] : x.dims()) {
        (void)d;
        if (cg1.dim(i) == 0) continue;
        ell.set_comp(i, FieldMatrix::vstack(t.f.comp(i), t.h.comp(i)));
    }
    return ell;
}

ExactnessReport exactness_check(const HeartContext& ctx, const ThreeTerm& t) {
    require_in_heart(ctx, t.f.source(), "exactness_check");
    require_in_heart(ctx, t.f.target(), "exactness_check");
    require_in_heart(ctx, t.g.target(), "exactness_check");
    if (graded_differential(t.h) != compose(t.g, t.f).negated())
        throw std::invalid_argument("exactness_check: D(h) = -g.f violated");
    ChainMap c = right_comparison(t);
    ChainMap ell = left_comparison(t);
    int lo = std::min({c.source().min_degree(), c.target().min_degree(),
                       ell.source().min_degree(), ell.target().min_degree()}) - 1;
    int hi = std::max({c.source().max_degree(), c.target().max_degree(),
                       ell.source().max_degree(), ell.target().max_degree()}) + 1;
    ExactnessReport r;
    r.left_exact = iso_on_range(ell, lo, 0);
    r.right_exact = iso_on_range(c, -ctx.n + 1, hi);
    r.short_exact = iso_on_range(c, lo, hi);
    return r;
}

TrianglePair kernel_cokernel_triangles(const HeartContext& ctx, const ChainMap& f) {
    KernelData kd = hker(ctx, f);
    CokernelData cd = hcoker(ctx, f);
    ThreeTerm kt = make_three_term(kd.incl, f, kd.h);
    ThreeTerm ct = make_three_term(f, cd.proj, cd.h);
    ExactnessReport kr = exactness_check(ctx, kt);
    ExactnessReport cr = exactness_check(ctx, ct);
    return {std::move(kt), std::move(ct), kr, cr};
}

Square make_square(ChainMap a, ChainMap g, ChainMap f, ChainMap ap, GradedMap s) {
    if (a.source() != g.source() || f.source() != a.target() || ap.source() != g.target() ||
        f.target() != ap.target())
        throw std::invalid_argument("Square: corner mismatch");
    if (s.degree() != -1 || s.source() != a.source() || s.target() != f.target())
        throw std::invalid_argument("Square: bad homotopy shape");
    if (graded_differential(s) != compose(f, a) - compose(ap, g))
        throw std::invalid_argument("Square: D(s) = f.a - a'.g violated");
    return {std::move(a), std::move(g), std::move(f), std::move(ap), std::move(s)};
}

Square fiber_product(const HeartContext& ctx, const ChainMap& f, const ChainMap& ap) {
    if (f.target() != ap.target()) throw std::invalid_argument("fiber_product: targets differ");
    const Complex& a = f.source();
    const Complex& bp = ap.source();
    ChainMap pa = sum_proj_left(a, bp);
    ChainMap pbp = sum_proj_right(a, bp);
    ChainMap w = compose(f, pa) - compose(ap, pbp);
    KernelData kd = hker(ctx, w);
    ChainMap amap = compose(pa, kd.incl);
    ChainMap gmap = compose(pbp, kd.incl);
    return make_square(amap, gmap, f, ap, kd.h.negated());
}

Square heart_pushout(const HeartContext& ctx, const ChainMap& f, const ChainMap& a) {
    if (f.source() != a.source()) throw std::invalid_argument("heart_pushout: sources differ");
    const Complex& y = f.target();
    const Complex& xp = a.target();
    ChainMap iy = sum_incl_left(y, xp);
    ChainMap ixp = sum_incl_right(y, xp);
    ChainMap u = compose(iy, f) - compose(ixp, a);
    CokernelData cd = hcoker(ctx, u);
    ChainMap b = compose(cd.proj, iy);
    ChainMap fp = compose(cd.proj, ixp);
    return make_square(f, a, b, fp, cd.h.negated());
}

bool is_heart_cartesian(const HeartContext& ctx, const Square& sq) {
    const Complex& a = sq.f.source();
    const Complex& bp = sq.ap.source();
    ChainMap pa = sum_proj_left(a, bp);
    ChainMap pbp = sum_proj_right(a, bp);
    ChainMap w = compose(sq.f, pa) - compose(sq.ap, pbp);
    Complex cw1 = shift(cone(w).cone, -1);  // (A(+)B')^i (+) A'^{i-1}
    ChainMap cmp(sq.a.source(), cw1, 0);
    for (auto& [i, d] : sq.a.source().dims()) {
        (void)d;
        if (cw1.dim(i) == 0) continue;
        FieldMatrix top = FieldMatrix::vstack(sq.a.comp(i), sq.g.comp(i));
        cmp.set_comp(i, FieldMatrix::vstack(top, sq.s.comp(i).negated()));
    }
    if (!is_chain_map(cmp)) throw std::logic_error("is_heart_cartesian: comparison not a chain map");
    int lo = std::min(cmp.source().min_degree(), cmp.target().min_degree()) - 1;
    (void)ctx;
    return iso_on_range(cmp, lo, 0);
}

bool is_heart_cocartesian(const HeartContext& ctx, const Square& sq) {
    const Complex& y = sq.f.source();   // corner A of the square's bottom row
    const Complex& xp = sq.ap.source();
    ChainMap ia = sum_incl_left(y, xp);
    ChainMap ibp = sum_incl_right(y, xp);
    ChainMap pa = sum_proj_left(y, xp);
    ChainMap pbp = sum_proj_right(y, xp);
    ChainMap u = compose(ia, sq.a) + compose(ibp, sq.g);
    ChainMap v = compose(sq.f, pa) - compose(sq.ap, pbp);
    ThreeTerm t = make_three_term(u, v, sq.s.negated());
    ChainMap c = right_comparison(t);
    int hi = std::max(c.source().max_degree(), c.target().max_degree()) + 1;
    return iso_on_range(c, -ctx.n + 1, hi);
}

TrianglePairStd standard_triangles(const HeartContext& ctx, const ChainMap& f) {
    require_in_heart(ctx, f.source(), "standard_triangles");
    require_in_heart(ctx, f.target(), "standard_triangles");
    const Complex& a1 = f.source();
    const Complex& a0 = f.target();

    LeftTriangle lt;
    {
        KernelData kd = hker(ctx, f);
        TruncationMap omega = truncate_le_map(shift(a0, -1), 0);
        TruncationMap ker_incl = truncate_le_map(shift(cone(f).cone, -1), 0);
        lt.loop = omega.t;
        // f2(a) = (0, -a) into Cone(f)[-1]^i = A1^i (+) A0^{i-1}.
        ChainMap into_ambient(omega.t, ker_incl.structure.target(), 0);
        for (auto& [i, d] : omega.t.dims()) {
            (void)d;
            std::size_t da1 = a1.dim(i), da0 = a0.dim(i - 1);
            if (da1 + da0 == 0) continue;
            FieldMatrix m(da1 + da0, omega.t.dim(i), ctx.p);
            FieldMatrix low = omega.structure.comp(i).negated();
            for (std::size_t r = 0; r < da0; ++r)
                for (std::size_t c = 0; c < m.cols(); ++c) m.set(da1 + r, c, low.at(r, c));
            into_ambient.set_comp(i, m);
        }
        lt.f2 = corestrict(into_ambient, ker_incl.structure, "standard_triangles/left");
        lt.f1 = kd.incl;
        lt.f0 = f;
        lt.h_f1 = GradedMap::zero(lt.loop, a1, -1);
        lt.h_f0 = kd.h;
        lt.h_loop = loop_structure_map(ctx, a0);
        lt.eta = GradedMap::zero(lt.loop, a0, -2);
    }

    RightTriangle rt;
    {
        CokernelData cd = hcoker(ctx, f);
        ConeData cn = cone(f);
        TruncationMap sig = truncate_ge_map(shift(a1, 1), -ctx.n + 1);
        TruncationMap cok_proj = truncate_ge_map(cn.cone, -ctx.n + 1);
        rt.susp = sig.t;
        ChainMap sigma_of_proj = compose(sig.structure, cn.proj);
        rt.f2 = descend(sigma_of_proj, cok_proj.structure, "standard_triangles/right");
        rt.f0 = f;
        rt.f1 = cd.proj;
        rt.h_f1 = GradedMap::zero(a0, rt.susp, -1);
        rt.h_f0 = cd.h;
        rt.h_susp = susp_structure_map(ctx, a1);
        rt.eta = GradedMap::zero(a1, rt.susp, -2);
    }
    return {std::move(lt), std::move(rt)};
}

std::optional<LeftRotation> rotate_left_triangle(const HeartContext& ctx, const LeftTriangle& t) {
    const Complex& a1 = t.f0.source();
    Complex omega_a1 = omega_obj(ctx, a1);
    GradedMap h_loop_a1 = loop_structure_map(ctx, a1);

    MapSolver solver;
    std::size_t f3 = solver.add_unknown(omega_a1, t.loop, 0);
    std::size_t hf2 = solver.add_unknown(omega_a1, t.f1.source(), -1);
    std::size_t eta1 = solver.add_unknown(omega_a1, a1, -2);

    auto d = [](const GradedMap& m) { return graded_differential(m); };
    // f3 closed.
    solver.require({{f3, d}}, GradedMap::zero(omega_a1, t.loop, 1));
    // D(h_f2) + f2.f3 = 0.
    ChainMap f2 = t.f2;
    solver.require({{hf2, d}, {f3, [f2](const GradedMap& m) { return compose(f2, m); }}},
                   GradedMap::zero(omega_a1, t.f1.source(), 0));
    // D(eta1) - f1.h_f2 + h_f1.f3 = -h_loop(A1).
    ChainMap f1 = t.f1;
    GradedMap hf1 = t.h_f1;
    solver.require({{eta1, d},
                    {hf2, [f1](const GradedMap& m) { return compose(f1, m).negated(); }},
                    {f3, [hf1](const GradedMap& m) { return compose(hf1, m); }}},
                   h_loop_a1.negated());

    auto sol = solver.solve();
    if (!sol) return std::nullopt;
    return LeftRotation{(*sol)[f3], (*sol)[hf2], (*sol)[eta1]};
}

Octahedron octahedron(const HeartContext& ctx, const ChainMap& f, const ChainMap& fp) {
    if (f.target() != fp.source()) throw std::invalid_argument("octahedron: maps not composable");
    const Complex& a = f.source();
    const Complex& app = fp.target();

    Octahedron oc;
    oc.ker_f = hker(ctx, f);
    oc.ker_fp = hker(ctx, fp);

    // Fiber product of A --f--> A' <--k_f'-- Ker f', built inline to keep
    // the ambient inclusion available for the universal map u.
    const Complex& kfp = oc.ker_fp.k;
    ChainMap pa = sum_proj_left(a, kfp);
    ChainMap pk = sum_proj_right(a, kfp);
    ChainMap w = compose(f, pa) - compose(oc.ker_fp.incl, pk);
    TruncationMap tr = truncate_le_map(shift(cone(w).cone, -1), 0);
    KernelData kw = hker(ctx, w);
    oc.corner = kw.k;
    oc.k = compose(pa, kw.incl);
    oc.v = compose(pk, kw.incl);
    oc.s_prime = kw.h.negated();

    // u(x) = (k_f x, 0, h_f x) in Cone(w)[-1]^i = A^i (+) Kerf'^i (+) A'^{i-1}.
    ChainMap into_ambient(oc.ker_f.k, tr.structure.target(), 0);
    for (auto& [i, d] : oc.ker_f.k.dims()) {
        std::size_t da = a.dim(i), dk = kfp.dim(i), dap = f.target().dim(i - 1);
        std::size_t rows = da + dk + dap;
        if (rows == 0) continue;
        FieldMatrix m(rows, d, ctx.p);
        FieldMatrix top = oc.ker_f.incl.comp(i);
        FieldMatrix bot = oc.ker_f.h.comp(i);
        for (std::size_t r = 0; r < da; ++r)
            for (std::size_t c = 0; c < d; ++c) m.set(r, c, top.at(r, c));
        for (std::size_t r = 0; r < dap; ++r)
            for (std::size_t c = 0; c < d; ++c) m.set(da + dk + r, c, bot.at(r, c));
        into_ambient.set_comp(i, m);
    }
    oc.u = corestrict(into_ambient, tr.structure, "octahedron/u");

    oc.s = GradedMap::zero(oc.ker_f.k, a, -1);
    oc.h = GradedMap::zero(oc.ker_f.k, kfp, -1);
    oc.h_second = compose(oc.ker_fp.h, oc.v) - compose(fp, oc.s_prime);

    // Degree -2 witnesses; right-hand sides are forced by the morphism
    // identities and must be coboundaries.
    GradedMap t_rhs = compose(oc.ker_fp.incl, oc.h) - compose(oc.s_prime, oc.u) -
                      compose(f, oc.s) - oc.ker_f.h;
    GradedMap tp_rhs = compose(fp, oc.ker_f.h) + compose(compose(fp, f), oc.s) -
                       compose(oc.h_second, oc.u);
    auto t_sol = solve_coboundary(t_rhs);
    auto tp_sol = solve_coboundary(tp_rhs);
    if (!t_sol || !tp_sol) throw std::logic_error("octahedron: witness solve failed (sign bug)");
    oc.t = *t_sol;
    oc.t_prime = *tp_sol;

    oc.column_report = exactness_check(ctx, make_three_term(oc.u, oc.v, oc.h));
    (void)app;
    return oc;
}

std::size_t MapSolver::add_unknown(Complex src, Complex tgt, int degree) {
    spaces_.emplace_back(std::move(src), std::move(tgt));
    degrees_.push_back(degree);
    return spaces_.size() - 1;
}

void MapSolver::require(std::vector<Term> terms, GradedMap rhs) {
    eqs_.push_back({std::move(terms), std::move(rhs)});
}

void MapSolver::assemble(FieldMatrix& m, FieldMatrix& rhs) const {
    const std::uint32_t p = !spaces_.empty() ? spaces_.front().source().modulus()
                            : !eqs_.empty()  ? eqs_.front().rhs.modulus()
                                             : 5;
    std::vector<std::size_t> col_off(spaces_.size() + 1, 0);
    for (std::size_t k = 0; k < spaces_.size(); ++k)
        col_off[k + 1] = col_off[k] + spaces_[k].as_complex().dim(degrees_[k]);
    std::size_t rows = 0;
    std::vector<HomComplex> eq_spaces;
    eq_spaces.reserve(eqs_.size());
    for (auto& e : eqs_) {
        eq_spaces.emplace_back(e.rhs.source(), e.rhs.target());
        rows += eq_spaces.back().as_complex().dim(e.rhs.degree());
    }
    m = FieldMatrix(rows, col_off.back(), p);
    rhs = FieldMatrix(rows, 1, p);
    std::size_t ro = 0;
    for (std::size_t ei = 0; ei < eqs_.size(); ++ei) {
        const auto& e = eqs_[ei];
        const HomComplex& hs = eq_spaces[ei];
        std::size_t nr = hs.as_complex().dim(e.rhs.degree());
        FieldMatrix rv = hs.encode(e.rhs);
        for (std::size_t i = 0; i < nr; ++i) rhs.set(ro + i, 0, rv.at(i, 0));
        for (auto& term : e.terms) {
            FieldMatrix blk = spaces_[term.unknown].operator_matrix(
                degrees_[term.unknown], hs, e.rhs.degree(), term.op);
            for (std::size_t i = 0; i < blk.rows(); ++i)
                for (std::size_t j = 0; j < blk.cols(); ++j) {
                    std::size_t col = col_off[term.unknown] + j;
                    Fp fp(p);
                    m.set(ro + i, col, fp.add(m.at(ro + i, col), blk.at(i, j)));
                }
        }
        ro += nr;
    }
}

std::optional<std::vector<GradedMap>> MapSolver::extract(const FieldMatrix& sol) const {
    std::vector<GradedMap> out;
    std::size_t off = 0;
    for (std::size_t k = 0; k < spaces_.size(); ++k) {
        std::size_t n = spaces_[k].as_complex().dim(degrees_[k]);
        FieldMatrix v(n, 1, sol.modulus());
        for (std::size_t i = 0; i < n; ++i) v.set(i, 0, sol.at(off + i, 0));
        out.push_back(spaces_[k].decode(v, degrees_[k]));
        off += n;
    }
    return out;
}

std::optional<std::vector<GradedMap>> MapSolver::solve() const {
    FieldMatrix m, rhs;
    assemble(m, rhs);
    auto sol = solve_linear(m, rhs);
    if (!sol) return std::nullopt;
    return extract(*sol);
}

std::optional<std::vector<GradedMap>> MapSolver::solve_random(Rng& rng) const {
    FieldMatrix m, rhs;
    assemble(m, rhs);
    auto part = solve_linear(m, rhs);
    if (!part) return std::nullopt;
    FieldMatrix null = kernel_basis(m);
    FieldMatrix coeff(null.cols(), 1, m.modulus());
    for (std::size_t i = 0; i < null.cols(); ++i)
        coeff.set(i, 0, static_cast<std::int64_t>(rng.below(m.modulus())));
    FieldMatrix v = *part + null * coeff;
    return extract(v);
}

}  // namespace nheart
