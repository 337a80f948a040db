#include "nheart/complex.hpp"

#include <sstream>

namespace nheart {

void Complex::set_dim(int degree, std::size_t dim) {
    if (dim == 0) {
        dims_.erase(degree);
        diffs_.erase(degree);
        diffs_.erase(degree - 1);
        return;
    }
    dims_[degree] = dim;
}

std::size_t Complex::dim(int degree) const {
    auto it = dims_.find(degree);
    return it == dims_.end() ? 0 : it->second;
}

void Complex::set_diff(int degree, FieldMatrix d) {
    if (d.modulus() != p_) throw std::invalid_argument("set_diff: modulus mismatch");
    if (d.rows() != dim(degree + 1) || d.cols() != dim(degree))
        throw std::invalid_argument("set_diff: shape must be dims(i+1) x dims(i)");
    if (d.rows() == 0 || d.cols() == 0 || d.is_zero()) {
        diffs_.erase(degree);
        return;
    }
    diffs_[degree] = std::move(d);
}

FieldMatrix Complex::diff(int degree) const {
    auto it = diffs_.find(degree);
    if (it != diffs_.end()) return it->second;
    return FieldMatrix::zero(dim(degree + 1), dim(degree), p_);
}

int Complex::min_degree() const { return dims_.empty() ? 0 : dims_.begin()->first; }
int Complex::max_degree() const { return dims_.empty() ? -1 : dims_.rbegin()->first; }

std::string Complex::to_string() const {
    std::ostringstream os;
    if (is_zero_complex()) return "0";
    for (auto& [i, d] : dims_) os << "[" << i << "]:" << d << " ";
    return os.str();
}

std::optional<Violation> validate(const Complex& x) {
    if (x.is_zero_complex()) return std::nullopt;
    for (int i = x.min_degree(); i <= x.max_degree(); ++i) {
        FieldMatrix d0 = x.diff(i);
        FieldMatrix d1 = x.diff(i + 1);
        if (d0.rows() != x.dim(i + 1) || d0.cols() != x.dim(i))
            return Violation{i, "differential shape mismatch"};
        if (!(d1 * d0).is_zero()) return Violation{i, "d.d != 0"};
    }
    return std::nullopt;
}

Complex shift(const Complex& x, int k) {
    Complex r(x.modulus());
    for (auto& [i, d] : x.dims()) r.set_dim(i - k, d);
    for (int i = x.min_degree(); i <= x.max_degree(); ++i) {
        FieldMatrix d = x.diff(i);
        if (k % 2 != 0) d = d.negated();
        if (r.dim(i - k) > 0 && r.dim(i - k + 1) > 0) r.set_diff(i - k, d);
    }
    return r;
}

Complex direct_sum(const Complex& x, const Complex& y) {
    if (x.modulus() != y.modulus()) throw std::invalid_argument("direct_sum: modulus mismatch");
    Complex r(x.modulus());
    int lo = std::min(x.min_degree(), y.min_degree());
    int hi = std::max(x.max_degree(), y.max_degree());
    for (int i = lo; i <= hi; ++i) r.set_dim(i, x.dim(i) + y.dim(i));
    for (int i = lo; i < hi; ++i) {
        if (r.dim(i) == 0 || r.dim(i + 1) == 0) continue;
        FieldMatrix d(r.dim(i + 1), r.dim(i), r.modulus());
        FieldMatrix dx = x.diff(i), dy = y.diff(i);
        for (std::size_t a = 0; a < dx.rows(); ++a)
            for (std::size_t b = 0; b < dx.cols(); ++b) d.set(a, b, dx.at(a, b));
        for (std::size_t a = 0; a < dy.rows(); ++a)
            for (std::size_t b = 0; b < dy.cols(); ++b)
                d.set(x.dim(i + 1) + a, x.dim(i) + b, dy.at(a, b));
        r.set_diff(i, d);
    }
    return r;
}

CohomologyData cohomology(const Complex& x, int degree) {
    const std::uint32_t p = x.modulus();
    std::size_t n = x.dim(degree);
    FieldMatrix z = kernel_basis(x.diff(degree));                  // n x z
    FieldMatrix b = column_space_basis(x.diff(degree - 1));       // n x b
    if (n == 0) {
        Subquotient sq{FieldMatrix::zero(0, 0, p), FieldMatrix::zero(0, 0, p), 0};
        return {0, z, b, sq};
    }
    Subquotient sq = subquotient(n, z, b);
    return {sq.dim, std::move(z), std::move(b), std::move(sq)};
}

std::map<int, std::size_t> cohomology_dims(const Complex& x) {
    std::map<int, std::size_t> r;
    if (x.is_zero_complex()) return r;
    for (int i = x.min_degree(); i <= x.max_degree(); ++i) {
        std::size_t d = cohomology(x, i).dim;
        if (d) r[i] = d;
    }
    return r;
}

Truncation truncate_le(const Complex& x, int k) {
    Complex t(x.modulus());
    FieldMatrix ker = kernel_basis(x.diff(k));  // dim(k) x q
    for (auto& [i, d] : x.dims())
        if (i < k) t.set_dim(i, d);
    t.set_dim(k, ker.cols());
    for (int i = t.min_degree(); i < k - 1; ++i)
        if (t.dim(i) > 0 && t.dim(i + 1) > 0) t.set_diff(i, x.diff(i));
    if (t.dim(k - 1) > 0 && t.dim(k) > 0) {
        // d^{k-1} factors through ker d^k.
        auto fac = solve_linear(ker, x.diff(k - 1));
        if (!fac) throw std::logic_error("truncate_le: image not inside kernel (d.d != 0?)");
        t.set_diff(k - 1, *fac);
    }
    return {std::move(t), std::move(ker), k};
}

Truncation truncate_ge(const Complex& x, int k) {
    const std::uint32_t p = x.modulus();
    Complex t(p);
    std::size_t n = x.dim(k);
    FieldMatrix proj, section;
    if (n == 0) {
        proj = FieldMatrix::zero(0, 0, p);
    } else {
        Subquotient sq = subquotient(n, FieldMatrix::identity(n, p), column_space_basis(x.diff(k - 1)));
        proj = sq.proj;
        section = sq.section;
    }
    for (auto& [i, d] : x.dims())
        if (i > k) t.set_dim(i, d);
    t.set_dim(k, proj.rows());
    for (int i = k + 1; i <= t.max_degree(); ++i)
        if (t.dim(i) > 0 && t.dim(i + 1) > 0) t.set_diff(i, x.diff(i));
    if (t.dim(k) > 0 && t.dim(k + 1) > 0) t.set_diff(k, x.diff(k) * section);
    return {std::move(t), std::move(proj), k};
}

}  // namespace nheart
