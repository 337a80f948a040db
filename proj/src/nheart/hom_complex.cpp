#include "nheart/hom_complex.hpp"

namespace nheart {

HomComplex::HomComplex(Complex x, Complex y) : x_(std::move(x)), y_(std::move(y)), hom_(x_.modulus()) {
    if (x_.modulus() != y_.modulus()) throw std::invalid_argument("HomComplex: modulus mismatch");
    if (x_.is_zero_complex() || y_.is_zero_complex()) return;
    int lo = y_.min_degree() - x_.max_degree();
    int hi = y_.max_degree() - x_.min_degree();
    for (int k = lo; k <= hi; ++k) {
        std::size_t n = 0;
        for (auto& [i, dx] : x_.dims()) n += y_.dim(i + k) * dx;
        hom_.set_dim(k, n);
    }
    for (int k = lo; k < hi; ++k) {
        std::size_t rows = hom_.dim(k + 1), cols = hom_.dim(k);
        if (rows == 0 || cols == 0) continue;
        FieldMatrix d(rows, cols, x_.modulus());
        for (std::size_t j = 0; j < cols; ++j) {
            FieldMatrix e(cols, 1, x_.modulus());
            e.set(j, 0, 1);
            FieldMatrix col = encode(graded_differential(decode(e, k)));
            for (std::size_t r = 0; r < rows; ++r) d.set(r, j, col.at(r, 0));
        }
        hom_.set_diff(k, d);
    }
}

FieldMatrix HomComplex::encode(const GradedMap& phi) const {
    const int k = phi.degree();
    FieldMatrix v(hom_.dim(k), 1, x_.modulus());
    std::size_t off = 0;
    for (auto& [i, dx] : x_.dims()) {
        std::size_t dy = y_.dim(i + k);
        if (dy == 0) continue;
        FieldMatrix m = phi.comp(i);
        for (std::size_t r = 0; r < dy; ++r)
            for (std::size_t c = 0; c < dx; ++c) v.set(off + r * dx + c, 0, m.at(r, c));
        off += dy * dx;
    }
    if (off != hom_.dim(k)) throw std::logic_error("HomComplex::encode: layout mismatch");
    return v;
}

GradedMap HomComplex::decode(const FieldMatrix& column, int degree) const {
    if (column.rows() != hom_.dim(degree) || column.cols() != 1)
        throw std::invalid_argument("HomComplex::decode: bad column shape");
    GradedMap phi(x_, y_, degree);
    std::size_t off = 0;
    for (auto& [i, dx] : x_.dims()) {
        std::size_t dy = y_.dim(i + degree);
        if (dy == 0) continue;
        FieldMatrix m(dy, dx, x_.modulus());
        for (std::size_t r = 0; r < dy; ++r)
            for (std::size_t c = 0; c < dx; ++c) m.set(r, c, column.at(off + r * dx + c, 0));
        phi.set_comp(i, m);
        off += dy * dx;
    }
    return phi;
}

FieldMatrix HomComplex::operator_matrix(int deg_from, const HomComplex& to, int deg_to,
                                        const std::function<GradedMap(const GradedMap&)>& op) const {
    std::size_t cols = hom_.dim(deg_from);
    std::size_t rows = to.as_complex().dim(deg_to);
    FieldMatrix m(rows, cols, x_.modulus());
    for (std::size_t j = 0; j < cols; ++j) {
        FieldMatrix e(cols, 1, x_.modulus());
        e.set(j, 0, 1);
        FieldMatrix col = to.encode(op(decode(e, deg_from)));
        for (std::size_t r = 0; r < rows; ++r) m.set(r, j, col.at(r, 0));
    }
    return m;
}

std::map<int, std::size_t> hom_cohomology_dims(const Complex& x, const Complex& y) {
    return cohomology_dims(HomComplex(x, y).as_complex());
}

std::optional<GradedMap> solve_homotopy(const ChainMap& f, const ChainMap& g) {
    if (f.source() != g.source() || f.target() != g.target())
        throw std::invalid_argument("solve_homotopy: endpoint mismatch");
    HomComplex hom(f.source(), f.target());
    FieldMatrix rhs = hom.encode(g - f);
    auto sol = solve_linear(hom.as_complex().diff(-1), rhs);
    if (!sol) return std::nullopt;
    return hom.decode(*sol, -1);
}

bool is_null_homotopic(const ChainMap& f) {
    return solve_homotopy(f, ChainMap::zero(f.source(), f.target(), 0)).has_value();
}

std::optional<GradedMap> solve_coboundary(const GradedMap& phi) {
    HomComplex hom(phi.source(), phi.target());
    auto sol = solve_linear(hom.as_complex().diff(phi.degree() - 1), hom.encode(phi));
    if (!sol) return std::nullopt;
    return hom.decode(*sol, phi.degree() - 1);
}

std::optional<HomotopyEquivalence> quasi_inverse(const ChainMap& f) {
    const Complex& x = f.source();
    const Complex& y = f.target();
    const std::uint32_t p = f.modulus();
    HomComplex hyx(y, x), hxx(x, x), hyy(y, y);
    const std::size_t ng = hyx.as_complex().dim(0);
    const std::size_t ns = hxx.as_complex().dim(-1);
    const std::size_t nt = hyy.as_complex().dim(-1);

    // Unknowns [g | h_s | h_t]; rows: D(g) = 0, g.f + D(h_s) = id_X,
    // f.g + D(h_t) = id_Y.
    FieldMatrix dg = hyx.as_complex().diff(0);
    FieldMatrix pre = hyx.operator_matrix(0, hxx, 0, [&](const GradedMap& g) { return compose(g, f); });
    FieldMatrix post = hyx.operator_matrix(0, hyy, 0, [&](const GradedMap& g) { return compose(f, g); });
    FieldMatrix ds = hxx.as_complex().diff(-1);
    FieldMatrix dt = hyy.as_complex().diff(-1);

    const std::size_t r1 = dg.rows(), r2 = pre.rows(), r3 = post.rows();
    FieldMatrix m(r1 + r2 + r3, ng + ns + nt, p);
    auto put = [&](const FieldMatrix& blk, std::size_t ro, std::size_t co) {
        for (std::size_t i = 0; i < blk.rows(); ++i)
            for (std::size_t j = 0; j < blk.cols(); ++j) m.set(ro + i, co + j, blk.at(i, j));
    };
    put(dg, 0, 0);
    put(pre, r1, 0);
    put(ds, r1, ng);
    put(post, r1 + r2, 0);
    put(dt, r1 + r2, ng + ns);

    FieldMatrix rhs(r1 + r2 + r3, 1, p);
    FieldMatrix idx = hxx.encode(GradedMap::identity(x));
    FieldMatrix idy = hyy.encode(GradedMap::identity(y));
    for (std::size_t i = 0; i < r2; ++i) rhs.set(r1 + i, 0, idx.at(i, 0));
    for (std::size_t i = 0; i < r3; ++i) rhs.set(r1 + r2 + i, 0, idy.at(i, 0));

    auto sol = solve_linear(m, rhs);
    if (!sol) return std::nullopt;
    auto slice = [&](std::size_t off, std::size_t n) {
        FieldMatrix v(n, 1, p);
        for (std::size_t i = 0; i < n; ++i) v.set(i, 0, sol->at(off + i, 0));
        return v;
    };
    return HomotopyEquivalence{
        hyx.decode(slice(0, ng), 0),
        hxx.decode(slice(ng, ns), -1),
        hyy.decode(slice(ng + ns, nt), -1),
    };
}

}  // namespace nheart
