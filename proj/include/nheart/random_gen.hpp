#pragma once

#include "nheart/chain_map.hpp"

namespace nheart {

// Deterministic generator of valid complexes. Builds a direct sum of
// one-dimensional pieces (a line in a single degree, or a contractible
// [k -> k] segment) and conjugates by random invertible basis changes, so
// d.d = 0 holds by construction and the cohomology dimensions are the
// chosen line counts. Per-degree dimension never exceeds max_dim.
Complex random_complex(std::uint64_t seed, std::size_t max_dim, int lo, int hi, std::uint32_t p);

// Same shape control, but the line counts (cohomology dims) are prescribed.
Complex random_complex_with_cohomology(std::uint64_t seed, const std::map<int, std::size_t>& h,
                                       std::size_t max_dim, int lo, int hi, std::uint32_t p);

// Uniform sample from the space of chain maps X -> Y: solves the commutation
// constraints on all components and draws random coordinates in the solution
// space. The zero map is always reachable.
ChainMap random_chain_map(const Complex& x, const Complex& y, std::uint64_t seed);

// Uniform sample from closed degree-k maps (chain maps are k = 0).
GradedMap random_closed_map(const Complex& x, const Complex& y, int degree, std::uint64_t seed);

// Uniform sample from all degree-k maps, no closedness constraint.
GradedMap random_graded_map(const Complex& x, const Complex& y, int degree, std::uint64_t seed);

FieldMatrix random_invertible(std::size_t n, std::uint32_t p, Rng& rng);

}  // namespace nheart
