#pragma once

#include "nheart/heart.hpp"

namespace nheart {

enum class FactorKind { OneN, NOne };  // [1,n] or [n,1]

// A factorization f = m.e through Z with D(eta) = f - m.e. The canonical
// constructions commute strictly (eta = 0); nonzero eta is accepted on
// comparison inputs.
struct Factorization {
    ChainMap e;        // X -> Z
    ChainMap m;        // Z -> Y
    GradedMap eta;     // X -> Y, degree -1
    FactorKind kind;
    bool source_normalized = false;  // tau_le0 replacement applied to X
    bool target_normalized = false;  // tau_ge(-n+1) replacement applied to Y
};

const Complex& factor_object(const Factorization& f);

// [1,n]: Z = hker(q) for (C, q, h^f) = hcoker(f); m is the kernel
// inclusion, e(x) = (f x, h^f x), m.e = f exactly. Requires the source to
// have chain support <= 0; otherwise the tau_le0 replacement is applied
// and flagged.
Factorization factor_1n(const HeartContext& ctx, const ChainMap& f);

// [n,1]: Z = hcoker(k) for (K, k, h_f) = hker(f); e is the cokernel
// projection, m descends (kappa, x) -> -h_f(kappa) + f(x). Requires the
// target to have chain support inside [-n+1, 0]; otherwise the
// tau_ge(-n+1) replacement is applied and flagged.
Factorization factor_n1(const HeartContext& ctx, const ChainMap& f);

// Comparison (t, h_e, h_m, zeta) from F to F' for the same f:
//   D(t) = 0,  D(h_e) = e' - t.e,  D(h_m) = m - m'.t,
//   D(zeta) = -h_m.e - eta + m'.h_e + eta'.
// For two valid factorizations of the same kind, t is a homotopy
// equivalence. Absent only when the inputs do not factor the same map.
struct FactorComparison {
    ChainMap t;       // Z -> Z'
    GradedMap h_e;    // X -> Z', degree -1
    GradedMap h_m;    // Z -> Y, degree -1
    GradedMap zeta;   // X -> Y, degree -2
};
std::optional<FactorComparison> compare_factorizations(const HeartContext& ctx,
                                                       const Factorization& first,
                                                       const Factorization& second);

// Random point of the comparison solution space, for homotopy-uniqueness
// checks.
std::optional<FactorComparison> compare_factorizations_random(const HeartContext& ctx,
                                                              const Factorization& first,
                                                              const Factorization& second,
                                                              Rng& rng);

// Transport a factorization along a quasi-isomorphism phi: Z -> Z~ using a
// chosen homotopy inverse: e' = phi.e, m' = m.g, eta' adjusted so that
// D(eta') = f - m'.e' exactly.
Factorization transport_along_quasi_iso(const Factorization& f, const ChainMap& phi,
                                        const HomotopyEquivalence& phi_inv);

}  // namespace nheart
