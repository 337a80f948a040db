#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "nheart/fp.hpp"

namespace nheart {

// Dense row-major matrix over F_p. Dimensions are desk scale; correctness
// beats speed throughout. Pivoting is deterministic (first nonzero row),
// so every basis this file produces is reproducible across runs/platforms.
class FieldMatrix {
public:
    FieldMatrix() : rows_(0), cols_(0), p_(5) {}
    FieldMatrix(std::size_t rows, std::size_t cols, std::uint32_t p)
        : rows_(rows), cols_(cols), p_(p), e_(rows * cols, 0) { check_modulus(); }
    FieldMatrix(std::size_t rows, std::size_t cols, std::uint32_t p, std::vector<std::uint32_t> entries);

    static FieldMatrix identity(std::size_t n, std::uint32_t p);
    static FieldMatrix zero(std::size_t rows, std::size_t cols, std::uint32_t p) {
        return FieldMatrix(rows, cols, p);
    }
    static FieldMatrix random(std::size_t rows, std::size_t cols, std::uint32_t p, Rng& rng);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::uint32_t modulus() const { return p_; }
    bool is_zero() const;
    bool is_identity() const;

    std::uint32_t at(std::size_t r, std::size_t c) const { return e_[r * cols_ + c]; }
    void set(std::size_t r, std::size_t c, std::int64_t v) { e_[r * cols_ + c] = Fp(p_).reduce(v); }
    const std::vector<std::uint32_t>& entries() const { return e_; }

    FieldMatrix operator+(const FieldMatrix& o) const;
    FieldMatrix operator-(const FieldMatrix& o) const;
    FieldMatrix operator*(const FieldMatrix& o) const;
    FieldMatrix scaled(std::uint32_t c) const;
    FieldMatrix negated() const;
    FieldMatrix transposed() const;
    bool operator==(const FieldMatrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && p_ == o.p_ && e_ == o.e_;
    }
    bool operator!=(const FieldMatrix& o) const { return !(*this == o); }

    // Column selection / block assembly.
    FieldMatrix columns(const std::vector<std::size_t>& idx) const;
    static FieldMatrix hstack(const FieldMatrix& a, const FieldMatrix& b);
    static FieldMatrix vstack(const FieldMatrix& a, const FieldMatrix& b);

    std::string to_string() const;

private:
    void check_modulus() const {
        if (!Fp::is_prime(p_)) throw std::invalid_argument("FieldMatrix: modulus must be prime");
    }
    std::size_t rows_, cols_;
    std::uint32_t p_;
    std::vector<std::uint32_t> e_;
};

struct RrefResult {
    FieldMatrix R;
    std::vector<std::size_t> pivots;  // strictly increasing column indices
    std::size_t rank = 0;
};

// Reduced row echelon form with first-nonzero pivot choice.
RrefResult rref(const FieldMatrix& m);

std::size_t rank(const FieldMatrix& m);

// Columns form a basis of the null space; column count = cols - rank.
FieldMatrix kernel_basis(const FieldMatrix& m);

// Columns form a basis of the column space (the pivot columns of m).
FieldMatrix column_space_basis(const FieldMatrix& m);

// Solves M X = B exactly; absent iff some column of B is outside the column
// span of M. Among solutions, free variables are set to zero (deterministic).
std::optional<FieldMatrix> solve_linear(const FieldMatrix& m, const FieldMatrix& b);

// Presentation of the quotient span(sub)/span(inside) inside an ambient
// coordinate space. proj (dim x ambient) sends any vector of span(sub) to its
// class coordinates and kills span(inside); section (ambient x dim) picks
// representative vectors with proj * section = identity.
struct Subquotient {
    FieldMatrix proj;
    FieldMatrix section;
    std::size_t dim = 0;
};

Subquotient subquotient(std::size_t ambient_dim, const FieldMatrix& sub, const FieldMatrix& inside);

}  // namespace nheart
