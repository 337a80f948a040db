#pragma once

#include "nheart/hom_complex.hpp"

namespace nheart {

// Working context for the n-extended heart: complexes over F_p whose
// cohomology is concentrated in degrees [-n+1, 0].
struct HeartContext {
    int n;
    std::uint32_t p;
    HeartContext(int n_, std::uint32_t p_) : n(n_), p(p_) {
        if (n < 1) throw std::invalid_argument("HeartContext: n must be >= 1");
        if (!Fp::is_prime(p)) throw std::invalid_argument("HeartContext: p must be prime");
    }
};

bool in_heart(const HeartContext& ctx, const Complex& x);
void require_in_heart(const HeartContext& ctx, const Complex& x, const char* where);

// tau_le0 replacement for objects with chain components in positive degrees
// (a quasi-isomorphic model; legal for heart objects).
struct Normalized {
    Complex x;
    ChainMap into_original;  // inclusion tau_le0 X -> X
    bool changed;
};
Normalized normalize_support(const Complex& x);

// Loop and suspension: Omega = tau_le0 . [-1], Sigma = tau_ge(-n+1) . [1].
Complex omega_obj(const HeartContext& ctx, const Complex& x);
ChainMap omega_map(const HeartContext& ctx, const ChainMap& f);
Complex sigma_obj(const HeartContext& ctx, const Complex& x);
ChainMap sigma_map(const HeartContext& ctx, const ChainMap& f);
ChainMap omega_iter_map(const HeartContext& ctx, const ChainMap& f, int times);

// Closed degree -1 structure maps h_X : Omega X -> X and h^X : X -> Sigma X.
GradedMap loop_structure_map(const HeartContext& ctx, const Complex& x);
GradedMap susp_structure_map(const HeartContext& ctx, const Complex& x);

// Homotopy kernel (tau_le0(Cone f[-1]), k, h_f) with k(x,y) = x,
// h_f(x,y) = y and D(h_f) = -f.k exactly.
struct KernelData {
    Complex k;
    ChainMap incl;   // k : K -> X
    GradedMap h;     // h_f : K -> Y, degree -1
};
KernelData hker(const HeartContext& ctx, const ChainMap& f);

// Homotopy cokernel (tau_ge(-n+1) Cone f, q, h^f) with q = proj.incl_Y,
// h^f(x) = -proj(x, 0) and D(h^f) = -q.f exactly.
struct CokernelData {
    Complex c;
    ChainMap proj;   // q : Y -> C
    GradedMap h;     // h^f : X -> C, degree -1
};
CokernelData hcoker(const HeartContext& ctx, const ChainMap& f);

// H^{-m+1}(f) injective and H^{<=-m}(f) bijective (dually for epi).
bool is_m_mono(const HeartContext& ctx, const ChainMap& f, int m);
bool is_m_epi(const HeartContext& ctx, const ChainMap& f, int m);

// A pair of composable chain maps with a chosen null-homotopy of g.f;
// stored with the convention D(h) = -g.f.
struct ThreeTerm {
    ChainMap f;   // X -> Y
    ChainMap g;   // Y -> Z
    GradedMap h;  // X -> Z, degree -1
};
ThreeTerm make_three_term(ChainMap f, ChainMap g, GradedMap h);

// Comparison chain maps underlying the exactness predicates:
//   c : Cone(f) -> Z,        c(x, y) = -h(x) + g(y)
//   ell : X -> Cone(g)[-1],  ell(x) = (f(x), h(x))
ChainMap right_comparison(const ThreeTerm& t);
ChainMap left_comparison(const ThreeTerm& t);

struct ExactnessReport {
    bool left_exact = false;   // H^i(ell) iso for all i <= 0
    bool right_exact = false;  // H^i(c) iso for all i >= -n+1
    bool short_exact = false;  // H^i(c) iso for all i
};
ExactnessReport exactness_check(const HeartContext& ctx, const ThreeTerm& t);

struct TrianglePair {
    ThreeTerm kernel;    // (k, f, h_f)
    ThreeTerm cokernel;  // (f, q, h^f)
    ExactnessReport kernel_report;
    ExactnessReport cokernel_report;
};
TrianglePair kernel_cokernel_triangles(const HeartContext& ctx, const ChainMap& f);

// Square with chosen homotopy: D(s) = f.a - a'.g.
//
//      B --g--> B'
//      |a       |a'
//      A --f--> A'
struct Square {
    ChainMap a;    // B -> A
    ChainMap g;    // B -> B'
    ChainMap f;    // A -> A'
    ChainMap ap;   // B' -> A'
    GradedMap s;   // B -> A', degree -1
};
Square make_square(ChainMap a, ChainMap g, ChainMap f, ChainMap ap, GradedMap s);

// B = hker(f.p_A - a'.p_B') over A (+) B'.
Square fiber_product(const HeartContext& ctx, const ChainMap& f, const ChainMap& ap);

// Dual: pushout of (f : X -> Y) along (a : X -> X'); corner A' = Y' is
// hcoker(i_Y.f - i_X'.a). Returned square has a = f, g = a, f-edge = b,
// a'-edge = f' (the edge opposite f).
Square heart_pushout(const HeartContext& ctx, const ChainMap& f, const ChainMap& a);

bool is_heart_cartesian(const HeartContext& ctx, const Square& sq);
bool is_heart_cocartesian(const HeartContext& ctx, const Square& sq);

// Standard left triangle  Omega A0 --f2--> A2 --f1--> A1 --f0--> A0 with
// A2 = hker(f0), f2(a) = (0, -a), plus the structure homotopies that make
// every stored identity exact (contractibles are instantiated as 0).
struct LeftTriangle {
    Complex loop;        // Omega A0
    ChainMap f2;         // Omega A0 -> A2
    ChainMap f1;         // A2 -> A1 (kernel inclusion)
    ChainMap f0;         // A1 -> A0
    GradedMap h_f1;      // Omega A0 -> A1, D = -f1.f2 (zero for the canonical f2)
    GradedMap h_f0;      // A2 -> A0, the kernel homotopy, D = -f0.f1
    GradedMap h_loop;    // Omega A0 -> A0, closed loop structure map
    GradedMap eta;       // Omega A0 -> A0, degree -2; d(eta) = f0.h_f1 - h_f0.f2 - h_loop
};

// Standard right triangle A0 --f0--> A1 --f1--> A2 --f2--> Sigma A0 with
// A2 = hcoker(f0) and f2 the descent of the cone projection.
struct RightTriangle {
    Complex susp;        // Sigma A0
    ChainMap f0;         // A0 -> A1
    ChainMap f1;         // A1 -> A2 (cokernel projection)
    ChainMap f2;         // A2 -> Sigma A0
    GradedMap h_f1;      // A1 -> Sigma A0, D = -f2.f1 (zero for the canonical f2)
    GradedMap h_f0;      // A0 -> A2, the cokernel homotopy, D = -f1.f0
    GradedMap h_susp;    // A0 -> Sigma A0, closed suspension structure map
    GradedMap eta;       // A0 -> Sigma A0, degree -2; d(eta) = h_susp + f2.h_f0 - h_f1.f0
};

struct TrianglePairStd {
    LeftTriangle left;
    RightTriangle right;
};
TrianglePairStd standard_triangles(const HeartContext& ctx, const ChainMap& f);

// Rotation data of a left triangle: closed f3 : Omega A1 -> Omega A0 with
// D(h_f2) = -f2.f3 and d(eta1) = f1.h_f2 - h_f1.f3 - h_loop(A1), found by a
// joint linear solve. Exists whenever (f2, f1, h_f1) is left exact.
struct LeftRotation {
    ChainMap f3;
    GradedMap h_f2;   // Omega A1 -> A2, degree -1
    GradedMap eta1;   // Omega A1 -> A1, degree -2
};
std::optional<LeftRotation> rotate_left_triangle(const HeartContext& ctx, const LeftTriangle& t);

// The two-map octahedron: K = fiber product of A --f--> A' <--k_f'-- Ker f',
// with the left column (u, v, h) left exact and the morphism identities
// stored as exactly verified data.
struct Octahedron {
    KernelData ker_f;     // (Ker f, k_f, h_f)
    KernelData ker_fp;    // (Ker f', k_f', h_f')
    Complex corner;       // K, the fiber product corner
    ChainMap k;           // K -> A
    ChainMap u;           // Ker f -> K
    ChainMap v;           // K -> Ker f'
    GradedMap h;          // Ker f -> Ker f', degree -1; D(h) = -v.u
    GradedMap s;          // Ker f -> A, degree -1; d(s) = k_f - k.u
    GradedMap s_prime;    // K -> A', degree -1; d(s') = f.k - k_f'.v
    GradedMap t;          // Ker f -> A', degree -2; d(t) = k_f'.h - s'.u - f.s - h_f
    GradedMap t_prime;    // Ker f -> A'', degree -2; d(t') = f'.h_f + (f'f).s - h''.u
    GradedMap h_second;   // K -> A'', degree -1; h'' = h_f'.v - f'.s'
    ExactnessReport column_report;  // for (u, v, h)
};
Octahedron octahedron(const HeartContext& ctx, const ChainMap& f, const ChainMap& fp);

// Joint linear solver for unknown graded maps. Each unknown lives in a hom
// space Hom(src, tgt)^deg; equations say a sum of linear images of unknowns
// equals a fixed map. Used wherever the constructions above assert
// "there exists a morphism such that d(.) = ...".
class MapSolver {
public:
    std::size_t add_unknown(Complex src, Complex tgt, int degree);

    struct Term {
        std::size_t unknown;
        std::function<GradedMap(const GradedMap&)> op;
    };
    // sum_j op_j(u_{k_j}) = rhs; the ops must land in rhs's hom space.
    void require(std::vector<Term> terms, GradedMap rhs);

    std::optional<std::vector<GradedMap>> solve() const;
    // A random point of the affine solution space (deterministic in rng).
    std::optional<std::vector<GradedMap>> solve_random(Rng& rng) const;

private:
    struct EquationRow {
        std::vector<Term> terms;
        GradedMap rhs;
    };
    std::optional<std::vector<GradedMap>> extract(const FieldMatrix& sol) const;
    void assemble(FieldMatrix& m, FieldMatrix& rhs) const;
    std::vector<HomComplex> spaces_;
    std::vector<int> degrees_;
    std::vector<EquationRow> eqs_;
};

}  // namespace nheart
