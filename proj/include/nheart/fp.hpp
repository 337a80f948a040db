#pragma once

#include <cstdint>
#include <stdexcept>

namespace nheart {

// Prime field F_p with 2 <= p < 2^31. All residues live in [0, p).
class Fp {
public:
    explicit Fp(std::uint32_t p) : p_(p) {
        if (!is_prime(p)) throw std::invalid_argument("Fp: modulus must be a prime in [2, 2^31)");
    }

    std::uint32_t modulus() const { return p_; }

    std::uint32_t reduce(std::int64_t v) const {
        std::int64_t r = v % static_cast<std::int64_t>(p_);
        if (r < 0) r += p_;
        return static_cast<std::uint32_t>(r);
    }

    std::uint32_t add(std::uint32_t a, std::uint32_t b) const {
        std::uint64_t s = static_cast<std::uint64_t>(a) + b;
        if (s >= p_) s -= p_;
        return static_cast<std::uint32_t>(s);
    }

    std::uint32_t sub(std::uint32_t a, std::uint32_t b) const {
        return a >= b ? a - b : static_cast<std::uint32_t>(a + p_ - b);
    }

    std::uint32_t neg(std::uint32_t a) const { return a == 0 ? 0 : p_ - a; }

    std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
        return static_cast<std::uint32_t>(static_cast<std::uint64_t>(a) * b % p_);
    }

    // Fermat inverse; p is prime so a^(p-2) works for a != 0.
    std::uint32_t inv(std::uint32_t a) const {
        if (a == 0) throw std::domain_error("Fp: inverse of zero");
        return pow(a, p_ - 2);
    }

    std::uint32_t pow(std::uint32_t a, std::uint64_t e) const {
        std::uint64_t base = a % p_, acc = 1;
        while (e) {
            if (e & 1) acc = acc * base % p_;
            base = base * base % p_;
            e >>= 1;
        }
        return static_cast<std::uint32_t>(acc);
    }

    static bool is_prime(std::uint32_t p) {
        if (p < 2 || p >= (1u << 31)) return false;
        if (p < 4) return true;
        if (p % 2 == 0) return false;
        for (std::uint64_t d = 3; d * d <= p; d += 2)
            if (p % d == 0) return false;
        return true;
    }

    bool operator==(const Fp& o) const { return p_ == o.p_; }

private:
    std::uint32_t p_;
};

// A single residue tagged with its modulus.
struct FieldElem {
    std::uint32_t value = 0;
    std::uint32_t p = 5;
};

// Deterministic splitmix64 stream; avoids the implementation-defined
// std::uniform_int_distribution so seeded output is identical everywhere.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // Uniform in [0, n); n >= 1.
    std::uint64_t below(std::uint64_t n) {
        std::uint64_t limit = ~0ull - ~0ull % n;
        std::uint64_t v;
        do { v = next(); } while (v >= limit);
        return v % n;
    }

    // Stable sub-stream derivation, independent of draw order at the call site.
    static std::uint64_t mix(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0) {
        Rng r(seed ^ (a * 0x9e3779b97f4a7c15ull) ^ (b * 0xc2b2ae3d27d4eb4full));
        r.next();
        return r.next();
    }

private:
    std::uint64_t state_;
};

}  // namespace nheart
