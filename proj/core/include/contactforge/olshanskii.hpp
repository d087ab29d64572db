#pragma once

#include <boost/rational.hpp>

#include <array>
#include <string>
#include <utility>
#include <vector>

namespace cf::olsh {

using Rat = boost::rational<long long>;

// Gaussian rational (exact complex arithmetic).
struct GRat {
    Rat re{0}, im{0};
    friend GRat operator+(const GRat& a, const GRat& b) {
        return {a.re + b.re, a.im + b.im};
    }
    friend GRat operator-(const GRat& a, const GRat& b) {
        return {a.re - b.re, a.im - b.im};
    }
    friend GRat operator*(const GRat& a, const GRat& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend bool operator==(const GRat& a, const GRat& b) {
        return a.re == b.re && a.im == b.im;
    }
    GRat conj() const { return {re, -im}; }
};

using GMat = std::array<GRat, 9>;  // row-major 3x3

GMat bracket(const GMat& X, const GMat& Y);  // XY - YX
bool in_su21(const GMat& X);  // X^* I + I X = 0 and tr X = 0, I = diag(1,1,-1)

// Ordered basis E1, E2, F, Ft, G1, G1t, G2, G2t; h = span(E1, E2).
struct Basis {
    std::array<GMat, 8> X;
    std::array<std::string, 8> names;
};
Basis su21_basis();

// Exact coordinates of M in the basis (Gaussian elimination over Q on the
// 18 real coordinates); throws if M is not in the span.
std::array<Rat, 8> coordinates(const GMat& M, const Basis& basis);

struct RootDatum {
    std::pair<Rat, Rat> functional;  // (m1, m2): value on a E1 + b E2 is m1 a + m2 b
    bool compact = false;
    std::string block;  // which root-space pair it acts on
};

struct OlshanskiiResult {
    bool basis_in_algebra = false;
    bool closed_under_bracket = false;
    std::array<std::array<Rat, 2>, 2> killing_h{};  // exact [[-12,-6],[-6,-12]]
    std::vector<RootDatum> roots;  // gamma compact; alpha1, alpha2 non-compact
    // Distinguished elements, coordinates in (E1, E2):
    std::pair<Rat, Rat> H1, Z, H0;
    std::array<std::pair<Rat, Rat>, 2> c1_generators;    // (-1/3,2/3), (2/3,-1/3)
    std::array<std::pair<Rat, Rat>, 2> c0_generators;    // (1,0), (0,1)
    std::array<std::pair<Rat, Rat>, 2> cone_generators;  // (-1,2), (2,-1)
    bool cone_in_plus_minus_c0 = true;  // computed: false
    bool orderable = true;              // computed: false (criterion fails)
};

// Runs the whole exact chain (basis membership, closure, Killing form on h,
// roots with compactness, distinguished elements, cones, verdict).
OlshanskiiResult run_olshanskii_chain();

// Contact Hamiltonian of the induced S^3 flow of a E1 + b E2: exact
// coefficients (2a+b, a+2b) of (rho_1, rho_2)/(2 pi).
std::pair<Rat, Rat> contact_pairing(const Rat& a, const Rat& b);

// Numeric cross-check of contact_pairing against the projectivized matrix
// flow; returns the max residual over the samples.
double contact_pairing_residual(double a, double b, int samples = 64);

}  // namespace cf::olsh
