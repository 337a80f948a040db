#include "nheart/chain_map.hpp"

namespace nheart {

GradedMap GradedMap::identity(const Complex& x) {
    GradedMap f(x, x, 0);
    for (auto& [i, d] : x.dims()) f.set_comp(i, FieldMatrix::identity(d, x.modulus()));
    return f;
}

void GradedMap::set_comp(int i, FieldMatrix m) {
    if (m.modulus() != modulus()) throw std::invalid_argument("set_comp: modulus mismatch");
    if (m.rows() != target_.dim(i + degree_) || m.cols() != source_.dim(i))
        throw std::invalid_argument("set_comp: shape must be target.dims(i+k) x source.dims(i)");
    if (m.rows() == 0 || m.cols() == 0 || m.is_zero()) {
        comps_.erase(i);
        return;
    }
    comps_[i] = std::move(m);
}

FieldMatrix GradedMap::comp(int i) const {
    auto it = comps_.find(i);
    if (it != comps_.end()) return it->second;
    return FieldMatrix::zero(target_.dim(i + degree_), source_.dim(i), modulus());
}

bool GradedMap::is_zero_map() const { return comps_.empty(); }

bool GradedMap::operator==(const GradedMap& o) const {
    return degree_ == o.degree_ && source_ == o.source_ && target_ == o.target_ && comps_ == o.comps_;
}

GradedMap GradedMap::operator+(const GradedMap& o) const {
    if (degree_ != o.degree_ || source_ != o.source_ || target_ != o.target_)
        throw std::invalid_argument("graded map add: endpoint or degree mismatch");
    GradedMap r(source_, target_, degree_);
    for (auto& [i, d] : source_.dims()) {
        (void)d;
        if (target_.dim(i + degree_) == 0) continue;
        r.set_comp(i, comp(i) + o.comp(i));
    }
    return r;
}

GradedMap GradedMap::operator-(const GradedMap& o) const { return *this + o.negated(); }

GradedMap GradedMap::negated() const {
    GradedMap r(source_, target_, degree_);
    for (auto& [i, m] : comps_) r.set_comp(i, m.negated());
    return r;
}

GradedMap GradedMap::scaled(std::uint32_t c) const {
    GradedMap r(source_, target_, degree_);
    for (auto& [i, m] : comps_) r.set_comp(i, m.scaled(c));
    return r;
}

GradedMap compose(const GradedMap& g, const GradedMap& f) {
    if (f.target() != g.source()) throw std::invalid_argument("compose: endpoint mismatch");
    GradedMap r(f.source(), g.target(), f.degree() + g.degree());
    for (auto& [i, d] : f.source().dims()) {
        (void)d;
        if (g.target().dim(i + r.degree()) == 0) continue;
        r.set_comp(i, g.comp(i + f.degree()) * f.comp(i));
    }
    return r;
}

GradedMap graded_differential(const GradedMap& phi) {
    const int k = phi.degree();
    GradedMap r(phi.source(), phi.target(), k + 1);
    const bool odd = ((k % 2) + 2) % 2 == 1;
    for (auto& [i, d] : phi.source().dims()) {
        (void)d;
        if (phi.target().dim(i + k + 1) == 0) continue;
        FieldMatrix a = phi.target().diff(i + k) * phi.comp(i);
        FieldMatrix b = phi.comp(i + 1) * phi.source().diff(i);
        r.set_comp(i, odd ? a + b : a - b);
    }
    return r;
}

bool is_closed(const GradedMap& phi) { return graded_differential(phi).is_zero_map(); }

ChainMap make_chain_map(Complex source, Complex target, std::map<int, FieldMatrix> comps) {
    GradedMap f(std::move(source), std::move(target), 0);
    for (auto& [i, m] : comps) f.set_comp(i, std::move(m));
    if (!is_chain_map(f)) throw std::invalid_argument("make_chain_map: does not commute with differentials");
    return f;
}

bool is_chain_map(const GradedMap& f) { return f.degree() == 0 && is_closed(f); }

GradedMap shift_map(const GradedMap& f, int k) {
    GradedMap r(shift(f.source(), k), shift(f.target(), k), f.degree());
    for (auto& [i, m] : f.comps()) r.set_comp(i - k, m);
    return r;
}

FieldMatrix induced_cohomology_map(const ChainMap& f, int i) {
    CohomologyData hx = cohomology(f.source(), i);
    CohomologyData hy = cohomology(f.target(), i);
    if (hx.dim == 0 || hy.dim == 0)
        return FieldMatrix::zero(hy.dim, hx.dim, f.modulus());
    return hy.sq.proj * (f.comp(i) * hx.sq.section);
}

bool is_quasi_iso(const ChainMap& f) {
    int lo = std::min(f.source().min_degree(), f.target().min_degree());
    int hi = std::max(f.source().max_degree(), f.target().max_degree());
    for (int i = lo; i <= hi; ++i) {
        std::size_t a = cohomology(f.source(), i).dim;
        std::size_t b = cohomology(f.target(), i).dim;
        if (a != b) return false;
        if (a != 0 && rank(induced_cohomology_map(f, i)) != a) return false;
    }
    return true;
}

ConeData cone(const ChainMap& f) {
    if (!is_chain_map(f)) throw std::invalid_argument("cone: input must be a chain map");
    const Complex& x = f.source();
    const Complex& y = f.target();
    const std::uint32_t p = f.modulus();
    Complex c(p);
    int lo = std::min(x.min_degree() - 1, y.min_degree());
    int hi = std::max(x.max_degree() - 1, y.max_degree());
    for (int i = lo; i <= hi; ++i) c.set_dim(i, x.dim(i + 1) + y.dim(i));
    for (int i = lo; i < hi; ++i) {
        std::size_t rows = c.dim(i + 1), cols = c.dim(i);
        if (rows == 0 || cols == 0) continue;
        FieldMatrix d(rows, cols, p);
        FieldMatrix dx = x.diff(i + 1).negated();
        FieldMatrix fm = f.comp(i + 1);
        FieldMatrix dy = y.diff(i);
        for (std::size_t a = 0; a < dx.rows(); ++a)
            for (std::size_t b = 0; b < dx.cols(); ++b) d.set(a, b, dx.at(a, b));
        for (std::size_t a = 0; a < fm.rows(); ++a)
            for (std::size_t b = 0; b < fm.cols(); ++b) d.set(x.dim(i + 2) + a, b, fm.at(a, b));
        for (std::size_t a = 0; a < dy.rows(); ++a)
            for (std::size_t b = 0; b < dy.cols(); ++b)
                d.set(x.dim(i + 2) + a, x.dim(i + 1) + b, dy.at(a, b));
        c.set_diff(i, d);
    }

    ChainMap incl(y, c, 0);
    for (auto& [i, dyi] : y.dims()) {
        FieldMatrix m(c.dim(i), dyi, p);
        for (std::size_t a = 0; a < dyi; ++a) m.set(x.dim(i + 1) + a, a, 1);
        incl.set_comp(i, m);
    }
    Complex x1 = shift(x, 1);
    ChainMap proj(c, x1, 0);
    for (auto& [i, dci] : c.dims()) {
        (void)dci;
        std::size_t dx1 = x1.dim(i);
        if (dx1 == 0) continue;
        FieldMatrix m(dx1, c.dim(i), p);
        for (std::size_t a = 0; a < dx1; ++a) m.set(a, a, 1);
        proj.set_comp(i, m);
    }
    return {std::move(c), std::move(incl), std::move(proj)};
}

TruncationMap truncate_le_map(const Complex& x, int k) {
    Truncation tr = truncate_le(x, k);
    ChainMap inc(tr.t, x, 0);
    for (auto& [i, d] : tr.t.dims()) {
        if (i < k) inc.set_comp(i, FieldMatrix::identity(d, x.modulus()));
        else inc.set_comp(i, tr.edge);
    }
    return {tr.t, std::move(inc)};
}

TruncationMap truncate_ge_map(const Complex& x, int k) {
    Truncation tr = truncate_ge(x, k);
    ChainMap pr(x, tr.t, 0);
    for (auto& [i, d] : tr.t.dims()) {
        if (i > k) pr.set_comp(i, FieldMatrix::identity(d, x.modulus()));
        else pr.set_comp(i, tr.edge);
    }
    return {tr.t, std::move(pr)};
}

ChainMap truncate_le_chain_map(const ChainMap& f, int k) {
    TruncationMap ts = truncate_le_map(f.source(), k);
    TruncationMap tt = truncate_le_map(f.target(), k);
    ChainMap r(ts.t, tt.t, 0);
    for (auto& [i, d] : ts.t.dims()) {
        (void)d;
        if (tt.t.dim(i) == 0) continue;
        if (i < k) {
            r.set_comp(i, f.comp(i));
        } else {
            // f maps ker d^k into ker d^k; rewrite in kernel coordinates.
            FieldMatrix img = f.comp(k) * ts.structure.comp(k);
            auto sol = solve_linear(tt.structure.comp(k), img);
            if (!sol) throw std::logic_error("truncate_le_chain_map: kernel not preserved");
            r.set_comp(i, *sol);
        }
    }
    return r;
}

ChainMap truncate_ge_chain_map(const ChainMap& f, int k) {
    TruncationMap ts = truncate_ge_map(f.source(), k);
    TruncationMap tt = truncate_ge_map(f.target(), k);
    ChainMap r(ts.t, tt.t, 0);
    for (auto& [i, d] : ts.t.dims()) {
        (void)d;
        if (tt.t.dim(i) == 0) continue;
        if (i > k) {
            r.set_comp(i, f.comp(i));
        } else {
            // Descend through the quotient: pick any section of the source
            // projection and push representatives forward; f preserves
            // im d^{k-1}, so the result is independent of the section.
            auto sec = solve_linear(ts.structure.comp(k),
                                    FieldMatrix::identity(ts.t.dim(k), f.modulus()));
            if (!sec) throw std::logic_error("truncate_ge_chain_map: projection not surjective");
            r.set_comp(i, tt.structure.comp(k) * (f.comp(k) * *sec));
        }
    }
    return r;
}

ChainMap sum_incl_left(const Complex& x, const Complex& y) {
    Complex s = direct_sum(x, y);
    ChainMap f(x, s, 0);
    for (auto& [i, d] : x.dims()) {
        FieldMatrix m(s.dim(i), d, x.modulus());
        for (std::size_t a = 0; a < d; ++a) m.set(a, a, 1);
        f.set_comp(i, m);
    }
    return f;
}

ChainMap sum_incl_right(const Complex& x, const Complex& y) {
    Complex s = direct_sum(x, y);
    ChainMap f(y, s, 0);
    for (auto& [i, d] : y.dims()) {
        FieldMatrix m(s.dim(i), d, y.modulus());
        for (std::size_t a = 0; a < d; ++a) m.set(x.dim(i) + a, a, 1);
        f.set_comp(i, m);
    }
    return f;
}

ChainMap sum_proj_left(const Complex& x, const Complex& y) {
    Complex s = direct_sum(x, y);
    ChainMap f(s, x, 0);
    for (auto& [i, d] : x.dims()) {
        FieldMatrix m(d, s.dim(i), x.modulus());
        for (std::size_t a = 0; a < d; ++a) m.set(a, a, 1);
        f.set_comp(i, m);
    }
    return f;
}

ChainMap sum_proj_right(const Complex& x, const Complex& y) {
    Complex s = direct_sum(x, y);
    ChainMap f(s, y, 0);
    for (auto& [i, d] : y.dims()) {
        FieldMatrix m(d, s.dim(i), y.modulus());
        for (std::size_t a = 0; a < d; ++a) m.set(a, x.dim(i) + a, 1);
        f.set_comp(i, m);
    }
    return f;
}

Complex dualize(const Complex& x) {
    Complex r(x.modulus());
    for (auto& [i, d] : x.dims()) r.set_dim(-i, d);
    for (int i = x.min_degree(); i < x.max_degree(); ++i) {
        if (r.dim(-i - 1) == 0 || r.dim(-i) == 0) continue;
        r.set_diff(-i - 1, x.diff(i).transposed());
    }
    return r;
}

GradedMap dualize(const GradedMap& f) {
    const int k = f.degree();
    GradedMap r(dualize(f.target()), dualize(f.source()), k);
    for (auto& [i, m] : f.comps()) r.set_comp(-i - k, m.transposed());
    return r;
}

}  // namespace nheart
