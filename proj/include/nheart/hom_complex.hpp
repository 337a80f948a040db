#pragma once

#include <functional>

#include "nheart/chain_map.hpp"

namespace nheart {

// The DG hom-complex Hom*(X, Y) realized as an explicit Complex. Degree k
// holds all degree-k graded maps X -> Y; the differential agrees with
// graded_differential under encode/decode. Basis enumeration is by
// ascending source degree, then row-major inside each component block.
class HomComplex {
public:
    HomComplex(Complex x, Complex y);

    const Complex& as_complex() const { return hom_; }
    const Complex& source() const { return x_; }
    const Complex& target() const { return y_; }

    // Column vector of coordinates at phi's degree.
    FieldMatrix encode(const GradedMap& phi) const;
    GradedMap decode(const FieldMatrix& column, int degree) const;

    // Matrix of a linear operator Hom(X,Y)^deg_from -> other^deg_to obtained
    // by applying op to each basis map.
    FieldMatrix operator_matrix(int deg_from, const HomComplex& to, int deg_to,
                                const std::function<GradedMap(const GradedMap&)>& op) const;

private:
    Complex x_, y_, hom_;
};

std::map<int, std::size_t> hom_cohomology_dims(const Complex& x, const Complex& y);

// Degree -1 map h with D(h) = g - f; absent iff f and g are not homotopic.
std::optional<GradedMap> solve_homotopy(const ChainMap& f, const ChainMap& g);

bool is_null_homotopic(const ChainMap& f);

// Closed degree-(k+1) phi is a coboundary iff phi = D(psi) is solvable.
std::optional<GradedMap> solve_coboundary(const GradedMap& phi);

struct HomotopyEquivalence {
    ChainMap inverse;   // g: Y -> X
    GradedMap h_source; // D(h_source) = id_X - g.f
    GradedMap h_target; // D(h_target) = id_Y - f.g
};

// Succeeds iff f is a quasi-isomorphism (equivalently, over a field and for
// bounded complexes, a homotopy equivalence). All identities hold exactly.
std::optional<HomotopyEquivalence> quasi_inverse(const ChainMap& f);

}  // namespace nheart
