#pragma once

#include "nheart/complex.hpp"

namespace nheart {

// Degree-k map of graded vector spaces: comps(i) has shape
// target.dims(i+k) x source.dims(i). A chain map is a closed degree-0 map.
class GradedMap {
public:
    GradedMap() : degree_(0) {}
    GradedMap(Complex source, Complex target, int degree)
        : source_(std::move(source)), target_(std::move(target)), degree_(degree) {
        if (source_.modulus() != target_.modulus())
            throw std::invalid_argument("GradedMap: modulus mismatch");
    }

    static GradedMap zero(const Complex& source, const Complex& target, int degree) {
        return GradedMap(source, target, degree);
    }
    static GradedMap identity(const Complex& x);

    const Complex& source() const { return source_; }
    const Complex& target() const { return target_; }
    int degree() const { return degree_; }
    std::uint32_t modulus() const { return source_.modulus(); }

    void set_comp(int i, FieldMatrix m);
    FieldMatrix comp(int i) const;  // zero-shaped matrix when absent
    const std::map<int, FieldMatrix>& comps() const { return comps_; }

    bool is_zero_map() const;
    bool operator==(const GradedMap& o) const;
    bool operator!=(const GradedMap& o) const { return !(*this == o); }

    GradedMap operator+(const GradedMap& o) const;
    GradedMap operator-(const GradedMap& o) const;
    GradedMap negated() const;
    GradedMap scaled(std::uint32_t c) const;

private:
    Complex source_, target_;
    int degree_;
    std::map<int, FieldMatrix> comps_;
};

// g . f with |g.f| = |g| + |f|.
GradedMap compose(const GradedMap& g, const GradedMap& f);

// D(phi) = d_target . phi - (-1)^{|phi|} phi . d_source; degree |phi|+1.
GradedMap graded_differential(const GradedMap& phi);

bool is_closed(const GradedMap& phi);

// Closed degree-0 maps get their own name; construction checks commutation.
using ChainMap = GradedMap;

ChainMap make_chain_map(Complex source, Complex target, std::map<int, FieldMatrix> comps);
bool is_chain_map(const GradedMap& f);

// Reindex a map along shifted endpoints: same component matrices, viewed as
// source[k] -> target[k].
GradedMap shift_map(const GradedMap& f, int k);

// Matrix of H^i(f) in the subquotient bases chosen by cohomology().
FieldMatrix induced_cohomology_map(const ChainMap& f, int i);

bool is_quasi_iso(const ChainMap& f);

// Mapping cone with incl: Y -> Cone(f) and proj: Cone(f) -> X[1].
struct ConeData {
    Complex cone;
    ChainMap incl;
    ChainMap proj;
};
ConeData cone(const ChainMap& f);

// Inclusion tau_le(x,k) -> x and projection x -> tau_ge(x,k) as chain maps.
struct TruncationMap {
    Complex t;
    ChainMap structure;
};
TruncationMap truncate_le_map(const Complex& x, int k);
TruncationMap truncate_ge_map(const Complex& x, int k);

// Functorial truncation of maps: tau_le k (f) between truncated endpoints.
ChainMap truncate_le_chain_map(const ChainMap& f, int k);
ChainMap truncate_ge_chain_map(const ChainMap& f, int k);

// Direct sum helpers: inclusions/projections of X (+) Y.
ChainMap sum_incl_left(const Complex& x, const Complex& y);
ChainMap sum_incl_right(const Complex& x, const Complex& y);
ChainMap sum_proj_left(const Complex& x, const Complex& y);
ChainMap sum_proj_right(const Complex& x, const Complex& y);

// Linear duality: (DX)^i = (X^{-i})^*, d_DX^i = transpose of d_X^{-i-1}.
// Contravariant; involutive on the nose. Used as an independent oracle for
// dual constructions in tests.
Complex dualize(const Complex& x);
GradedMap dualize(const GradedMap& f);

}  // namespace nheart
