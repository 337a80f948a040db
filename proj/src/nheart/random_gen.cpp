#include "nheart/random_gen.hpp"

#include "nheart/hom_complex.hpp"

namespace nheart {

FieldMatrix random_invertible(std::size_t n, std::uint32_t p, Rng& rng) {
    if (n == 0) return FieldMatrix::zero(0, 0, p);
    for (;;) {
        FieldMatrix m = FieldMatrix::random(n, n, p, rng);
        if (rank(m) == n) return m;
    }
}

Complex random_complex_with_cohomology(std::uint64_t seed, const std::map<int, std::size_t>& h,
                                       std::size_t max_dim, int lo, int hi, std::uint32_t p) {
    Rng rng(Rng::mix(seed, 0xC0117751u));
    if (lo > hi) throw std::invalid_argument("random_complex: empty degree window");

    std::map<int, std::size_t> lines;  // cohomology lines per degree
    for (auto& [i, d] : h) {
        if (i < lo || i > hi) throw std::invalid_argument("random_complex: cohomology outside window");
        lines[i] = d;
    }
    // Contractible [i -> i+1] segments, capped so per-degree dims stay <= max_dim.
    std::map<int, std::size_t> segs;
    for (int i = lo; i < hi; ++i) {
        std::size_t low_room = max_dim - std::min(max_dim, lines[i] + segs[i - 1]);
        std::size_t high_room = max_dim - std::min(max_dim, lines[i + 1]);
        std::size_t room = std::min(low_room, high_room);
        segs[i] = room == 0 ? 0 : rng.below(room + 1);
    }

    Complex x(p);
    for (int i = lo; i <= hi; ++i) {
        std::size_t d = lines[i] + segs[i] + (i > lo ? segs[i - 1] : 0);
        x.set_dim(i, d);
    }
    for (int i = lo; i < hi; ++i) {
        if (x.dim(i) == 0 || x.dim(i + 1) == 0) continue;
        FieldMatrix d(x.dim(i + 1), x.dim(i), p);
        // Basis order at degree i: lines[i], then segs[i] (sources), then
        // segs[i-1] (targets of the previous segment block).
        for (std::size_t a = 0; a < segs[i]; ++a) d.set(lines[i + 1] + segs[i + 1] + a, lines[i] + a, 1);
        x.set_diff(i, d);
    }

    // Conjugate by random basis changes: new d^i = P_{i+1} d^i P_i^{-1}.
    std::map<int, FieldMatrix> basis;
    for (int i = lo; i <= hi; ++i)
        if (x.dim(i) > 0) basis[i] = random_invertible(x.dim(i), p, rng);
    Complex r(p);
    for (auto& [i, d] : x.dims()) r.set_dim(i, d);
    for (int i = lo; i < hi; ++i) {
        if (x.dim(i) == 0 || x.dim(i + 1) == 0) continue;
        auto inv = solve_linear(basis[i], FieldMatrix::identity(x.dim(i), p));
        r.set_diff(i, basis[i + 1] * (x.diff(i) * *inv));
    }
    return r;
}

Complex random_complex(std::uint64_t seed, std::size_t max_dim, int lo, int hi, std::uint32_t p) {
    Rng rng(Rng::mix(seed, 0xD1CE5EEDu));
    if (max_dim == 0 || lo > hi) return Complex(p);
    std::map<int, std::size_t> h;
    for (int i = lo; i <= hi; ++i) {
        std::size_t d = rng.below(max_dim + 1);
        if (d) h[i] = d;
    }
    return random_complex_with_cohomology(rng.next(), h, max_dim, lo, hi, p);
}

namespace {

GradedMap sample_from_space(const Complex& x, const Complex& y, int degree, bool closed,
                            std::uint64_t seed) {
    Rng rng(Rng::mix(seed, closed ? 0xC105EDu : 0x0B3Au, static_cast<std::uint64_t>(degree + 64)));
    HomComplex hom(x, y);
    const std::uint32_t p = x.modulus();
    std::size_t n = hom.as_complex().dim(degree);
    if (n == 0) return GradedMap::zero(x, y, degree);
    FieldMatrix coeffs(0, 0, p);
    if (closed) {
        FieldMatrix k = kernel_basis(hom.as_complex().diff(degree));
        FieldMatrix c(k.cols(), 1, p);
        for (std::size_t i = 0; i < k.cols(); ++i) c.set(i, 0, static_cast<std::int64_t>(rng.below(p)));
        coeffs = k * c;
    } else {
        coeffs = FieldMatrix::random(n, 1, p, rng);
    }
    return hom.decode(coeffs, degree);
}

}  // namespace

ChainMap random_chain_map(const Complex& x, const Complex& y, std::uint64_t seed) {
    return sample_from_space(x, y, 0, true, seed);
}

GradedMap random_closed_map(const Complex& x, const Complex& y, int degree, std::uint64_t seed) {
    return sample_from_space(x, y, degree, true, seed);
}

GradedMap random_graded_map(const Complex& x, const Complex& y, int degree, std::uint64_t seed) {
    return sample_from_space(x, y, degree, false, seed);
}

}  // namespace nheart
