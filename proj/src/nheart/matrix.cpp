#include "nheart/matrix.hpp"

#include <algorithm>
#include <sstream>

namespace nheart {

FieldMatrix::FieldMatrix(std::size_t rows, std::size_t cols, std::uint32_t p,
                         std::vector<std::uint32_t> entries)
    : rows_(rows), cols_(cols), p_(p), e_(std::move(entries)) {
    check_modulus();
    if (e_.size() != rows_ * cols_) throw std::invalid_argument("FieldMatrix: entry count mismatch");
    for (auto& v : e_)
        if (v >= p_) v %= p_;
}

FieldMatrix FieldMatrix::identity(std::size_t n, std::uint32_t p) {
    FieldMatrix m(n, n, p);
    for (std::size_t i = 0; i < n; ++i) m.e_[i * n + i] = 1;
    return m;
}

FieldMatrix FieldMatrix::random(std::size_t rows, std::size_t cols, std::uint32_t p, Rng& rng) {
    FieldMatrix m(rows, cols, p);
    for (auto& v : m.e_) v = static_cast<std::uint32_t>(rng.below(p));
    return m;
}

bool FieldMatrix::is_zero() const {
    return std::all_of(e_.begin(), e_.end(), [](std::uint32_t v) { return v == 0; });
}

bool FieldMatrix::is_identity() const {
    if (rows_ != cols_) return false;
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c)
            if (at(r, c) != (r == c ? 1u : 0u)) return false;
    return true;
}

FieldMatrix FieldMatrix::operator+(const FieldMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_ || p_ != o.p_)
        throw std::invalid_argument("matrix add: shape or modulus mismatch");
    Fp f(p_);
    FieldMatrix r(rows_, cols_, p_);
    for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] = f.add(e_[i], o.e_[i]);
    return r;
}

FieldMatrix FieldMatrix::operator-(const FieldMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_ || p_ != o.p_)
        throw std::invalid_argument("matrix sub: shape or modulus mismatch");
    Fp f(p_);
    FieldMatrix r(rows_, cols_, p_);
    for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] = f.sub(e_[i], o.e_[i]);
    return r;
}

FieldMatrix FieldMatrix::operator*(const FieldMatrix& o) const {
    if (cols_ != o.rows_ || p_ != o.p_)
        throw std::invalid_argument("matrix mul: shape or modulus mismatch");
    FieldMatrix r(rows_, o.cols_, p_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            std::uint64_t a = at(i, k);
            if (a == 0) continue;
            for (std::size_t j = 0; j < o.cols_; ++j) {
                std::uint64_t v = r.e_[i * o.cols_ + j] + a * o.at(k, j) % p_;
                r.e_[i * o.cols_ + j] = static_cast<std::uint32_t>(v >= p_ ? v - p_ : v);
            }
        }
    return r;
}

FieldMatrix FieldMatrix::scaled(std::uint32_t c) const {
    Fp f(p_);
    FieldMatrix r(rows_, cols_, p_);
    for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] = f.mul(e_[i], c % p_);
    return r;
}

FieldMatrix FieldMatrix::negated() const {
    Fp f(p_);
    FieldMatrix r(rows_, cols_, p_);
    for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] = f.neg(e_[i]);
    return r;
}

FieldMatrix FieldMatrix::transposed() const {
    FieldMatrix r(cols_, rows_, p_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) r.e_[j * rows_ + i] = at(i, j);
    return r;
}

FieldMatrix FieldMatrix::columns(const std::vector<std::size_t>& idx) const {
    FieldMatrix r(rows_, idx.size(), p_);
    for (std::size_t j = 0; j < idx.size(); ++j) {
        if (idx[j] >= cols_) throw std::out_of_range("columns: index out of range");
        for (std::size_t i = 0; i < rows_; ++i) r.e_[i * idx.size() + j] = at(i, idx[j]);
    }
    return r;
}

FieldMatrix FieldMatrix::hstack(const FieldMatrix& a, const FieldMatrix& b) {
    if (a.rows_ != b.rows_ || a.p_ != b.p_)
        throw std::invalid_argument("hstack: row count or modulus mismatch");
    FieldMatrix r(a.rows_, a.cols_ + b.cols_, a.p_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
        for (std::size_t j = 0; j < a.cols_; ++j) r.e_[i * r.cols_ + j] = a.at(i, j);
        for (std::size_t j = 0; j < b.cols_; ++j) r.e_[i * r.cols_ + a.cols_ + j] = b.at(i, j);
    }
    return r;
}

FieldMatrix FieldMatrix::vstack(const FieldMatrix& a, const FieldMatrix& b) {
    if (a.cols_ != b.cols_ || a.p_ != b.p_)
        throw std::invalid_argument("vstack: column count or modulus mismatch");
    FieldMatrix r(a.rows_ + b.rows_, a.cols_, a.p_);
    std::copy(a.e_.begin(), a.e_.end(), r.e_.begin());
    std::copy(b.e_.begin(), b.e_.end(), r.e_.begin() + a.e_.size());
    return r;
}

std::string FieldMatrix::to_string() const {
    std::ostringstream os;
    os << rows_ << "x" << cols_ << " mod " << p_ << "\n";
    for (std::size_t i = 0; i < rows_; ++i) {
        os << "[";
        for (std::size_t j = 0; j < cols_; ++j) os << (j ? " " : "") << at(i, j);
        os << "]\n";
    }
    return os.str();
}

RrefResult rref(const FieldMatrix& m) {
    Fp f(m.modulus());
    FieldMatrix r = m;
    std::vector<std::size_t> pivots;
    std::size_t lead = 0;
    for (std::size_t col = 0; col < r.cols() && lead < r.rows(); ++col) {
        std::size_t sel = lead;
        while (sel < r.rows() && r.at(sel, col) == 0) ++sel;
        if (sel == r.rows()) continue;
        if (sel != lead)
            for (std::size_t j = 0; j < r.cols(); ++j) {
                std::uint32_t t = r.at(lead, j);
                r.set(lead, j, r.at(sel, j));
                r.set(sel, j, t);
            }
        std::uint32_t inv = f.inv(r.at(lead, col));
        for (std::size_t j = 0; j < r.cols(); ++j) r.set(lead, j, f.mul(r.at(lead, j), inv));
        for (std::size_t i = 0; i < r.rows(); ++i) {
            if (i == lead) continue;
            std::uint32_t c = r.at(i, col);
            if (c == 0) continue;
            for (std::size_t j = 0; j < r.cols(); ++j)
                r.set(i, j, f.sub(r.at(i, j), f.mul(c, r.at(lead, j))));
        }
        pivots.push_back(col);
        ++lead;
    }
    std::size_t rk = pivots.size();
    return {std::move(r), std::move(pivots), rk};
}

std::size_t rank(const FieldMatrix& m) { return rref(m).rank; }

FieldMatrix kernel_basis(const FieldMatrix& m) {
    RrefResult rr = rref(m);
    std::vector<std::size_t> free_cols;
    {
        std::size_t pi = 0;
        for (std::size_t c = 0; c < m.cols(); ++c) {
            if (pi < rr.pivots.size() && rr.pivots[pi] == c) { ++pi; continue; }
            free_cols.push_back(c);
        }
    }
    Fp f(m.modulus());
    FieldMatrix k(m.cols(), free_cols.size(), m.modulus());
    for (std::size_t j = 0; j < free_cols.size(); ++j) {
        std::size_t fc = free_cols[j];
        k.set(fc, j, 1);
        for (std::size_t pi = 0; pi < rr.pivots.size(); ++pi)
            k.set(rr.pivots[pi], j, f.neg(rr.R.at(pi, fc)));
    }
    return k;
}

FieldMatrix column_space_basis(const FieldMatrix& m) {
    return m.columns(rref(m).pivots);
}

std::optional<FieldMatrix> solve_linear(const FieldMatrix& m, const FieldMatrix& b) {
    if (m.rows() != b.rows() || m.modulus() != b.modulus())
        throw std::invalid_argument("solve_linear: row count or modulus mismatch");
    RrefResult rr = rref(FieldMatrix::hstack(m, b));
    // Any pivot inside the B block certifies inconsistency.
    for (std::size_t pc : rr.pivots)
        if (pc >= m.cols()) return std::nullopt;
    FieldMatrix x(m.cols(), b.cols(), m.modulus());
    for (std::size_t pi = 0; pi < rr.pivots.size(); ++pi)
        for (std::size_t j = 0; j < b.cols(); ++j)
            x.set(rr.pivots[pi], j, rr.R.at(pi, m.cols() + j));
    return x;
}

Subquotient subquotient(std::size_t ambient_dim, const FieldMatrix& sub, const FieldMatrix& inside) {
    const std::uint32_t p = sub.modulus();
    if (inside.modulus() != p || sub.rows() != ambient_dim || inside.rows() != ambient_dim)
        throw std::invalid_argument("subquotient: shape or modulus mismatch");
    if (rank(FieldMatrix::hstack(sub, inside)) != rank(sub))
        throw std::invalid_argument("subquotient: 'inside' not contained in span of 'sub'");

    FieldMatrix bnd = column_space_basis(inside);
    // Representatives: sub columns completing the boundary space, chosen as
    // the pivot columns of [bnd | sub] beyond the bnd block.
    RrefResult rr = rref(FieldMatrix::hstack(bnd, sub));
    std::vector<std::size_t> rep_idx;
    for (std::size_t pc : rr.pivots)
        if (pc >= bnd.cols()) rep_idx.push_back(pc - bnd.cols());
    FieldMatrix reps = sub.columns(rep_idx);
    const std::size_t q = reps.cols();

    // Complete bnd + reps to an ambient basis, then read class coordinates
    // off the inverse: rows of M^{-1} matching the reps block.
    FieldMatrix full = FieldMatrix::hstack(bnd, reps);
    for (std::size_t c = 0; c < ambient_dim && full.cols() < ambient_dim; ++c) {
        FieldMatrix e(ambient_dim, 1, p);
        e.set(c, 0, 1);
        if (rank(FieldMatrix::hstack(full, e)) > rank(full)) full = FieldMatrix::hstack(full, e);
    }
    if (full.cols() != ambient_dim) throw std::logic_error("subquotient: basis completion failed");

    // Invert 'full' by solving full * X = I.
    auto inv = solve_linear(full, FieldMatrix::identity(ambient_dim, p));
    if (!inv) throw std::logic_error("subquotient: completed basis not invertible");
    FieldMatrix proj(q, ambient_dim, p);
    for (std::size_t r = 0; r < q; ++r)
        for (std::size_t c = 0; c < ambient_dim; ++c)
            proj.set(r, c, inv->at(bnd.cols() + r, c));
    return {std::move(proj), std::move(reps), q};
}

}  // namespace nheart
