#pragma once

#include <map>
#include <optional>
#include <string>

#include "nheart/matrix.hpp"

namespace nheart {

// Bounded cochain complex of finite-dimensional F_p vector spaces.
//
// Sign conventions used across the library (fixed once, verified by tests):
//   * d has degree +1 and d.d = 0.
//   * X[k]^i = X^{i+k} with d_{X[k]} = (-1)^k d_X.
//   * Cone(f)^i = X^{i+1} (+) Y^i with differential [[-d_X, 0], [f, d_Y]].
//   * Hom differential D(phi) = d . phi - (-1)^{|phi|} phi . d.
//   * A 3-term homotopy complex (f, g, h) stores D(h) = -g.f.
class Complex {
public:
    Complex() : p_(5) {}
    explicit Complex(std::uint32_t p) : p_(p) {
        if (!Fp::is_prime(p)) throw std::invalid_argument("Complex: modulus must be prime");
    }

    std::uint32_t modulus() const { return p_; }

    // Degrees with dimension zero carry no stored data.
    void set_dim(int degree, std::size_t dim);
    std::size_t dim(int degree) const;
    void set_diff(int degree, FieldMatrix d);  // shape dims(i+1) x dims(i)
    FieldMatrix diff(int degree) const;        // zero-shaped matrix when absent

    bool is_zero_complex() const { return dims_.empty(); }
    // Leftmost/rightmost degree with a nonzero space; {0, -1} when zero complex.
    int min_degree() const;
    int max_degree() const;

    const std::map<int, std::size_t>& dims() const { return dims_; }

    bool operator==(const Complex& o) const {
        return p_ == o.p_ && dims_ == o.dims_ && diffs_ == o.diffs_;
    }
    bool operator!=(const Complex& o) const { return !(*this == o); }

    std::string to_string() const;

private:
    std::uint32_t p_;
    std::map<int, std::size_t> dims_;
    std::map<int, FieldMatrix> diffs_;
};

// d.d = 0 plus shape consistency; reports the first failing degree.
struct Violation {
    int degree;
    std::string what;
};
std::optional<Violation> validate(const Complex& x);

Complex shift(const Complex& x, int k);

Complex direct_sum(const Complex& x, const Complex& y);

// H^i(X) presented as an explicit subquotient of X^i.
struct CohomologyData {
    std::size_t dim = 0;
    FieldMatrix cocycles;     // X^i  basis of ker d^i (columns)
    FieldMatrix coboundaries; // X^i  basis of im d^{i-1} (columns)
    Subquotient sq;           // proj/section between X^i coordinates and H^i
};
CohomologyData cohomology(const Complex& x, int degree);

std::map<int, std::size_t> cohomology_dims(const Complex& x);

// Smart truncations. le: subcomplex (ker d^k at the top); ge: quotient
// complex (coker d^{k-1} at the bottom). The structure map is an honest
// chain map in both cases, so it is returned by the ChainMap builders in
// chain_map.hpp rather than here; these return the bare complex plus the
// matrix of the edge component.
struct Truncation {
    Complex t;
    FieldMatrix edge;  // le: inclusion ker d^k -> X^k;  ge: projection X^k -> coker
    int k;
};
Truncation truncate_le(const Complex& x, int k);
Truncation truncate_ge(const Complex& x, int k);

}  // namespace nheart
