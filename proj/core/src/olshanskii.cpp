#include "contactforge/olshanskii.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

namespace cf::olsh {

namespace {
GRat at(const GMat& M, int r, int c) { return M[3 * r + c]; }
GRat& at(GMat& M, int r, int c) { return M[3 * r + c]; }

GMat mul(const GMat& X, const GMat& Y) {
    GMat Z{};
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) {
            GRat acc{};
            for (int k = 0; k < 3; ++k) acc = acc + at(X, r, k) * at(Y, k, c);
            at(Z, r, c) = acc;
        }
    return Z;
}

GMat scaled_add(const GMat& X, const GMat& Y, int sign) {
    GMat Z{};
    for (int i = 0; i < 9; ++i)
        Z[i] = (sign > 0) ? X[i] + Y[i] : X[i] - Y[i];
    return Z;
}

const Rat kSig[3] = {Rat(1), Rat(1), Rat(-1)};  // I = diag(1, 1, -1)
}  // namespace

GMat bracket(const GMat& X, const GMat& Y) {
    return scaled_add(mul(X, Y), mul(Y, X), -1);
}

bool in_su21(const GMat& X) {
    // (X^* I + I X)_{rc} = conj(X_{cr}) sig_c + sig_r X_{rc} = 0.
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) {
            const GRat v = at(X, c, r).conj() * GRat{kSig[c], Rat(0)} +
                           GRat{kSig[r], Rat(0)} * at(X, r, c);
            if (!(v == GRat{})) return false;
        }
    const GRat tr = at(X, 0, 0) + at(X, 1, 1) + at(X, 2, 2);
    return tr == GRat{};
}

Basis su21_basis() {
    Basis b;
    b.names = {"E1", "E2", "F", "Ft", "G1", "G1t", "G2", "G2t"};
    auto i = [](long long v) { return GRat{Rat(0), Rat(v)}; };
    auto r = [](long long v) { return GRat{Rat(v), Rat(0)}; };
    GMat E1{}, E2{}, F{}, Ft{}, G1{}, G1t{}, G2{}, G2t{};
    at(E1, 0, 0) = i(1);
    at(E1, 2, 2) = i(-1);
    at(E2, 1, 1) = i(1);
    at(E2, 2, 2) = i(-1);
    at(F, 0, 1) = r(1);
    at(F, 1, 0) = r(-1);
    at(Ft, 0, 1) = i(1);
    at(Ft, 1, 0) = i(1);
    at(G1, 0, 2) = r(1);
    at(G1, 2, 0) = r(1);
    at(G1t, 0, 2) = i(1);
    at(G1t, 2, 0) = i(-1);
    at(G2, 1, 2) = r(1);
    at(G2, 2, 1) = r(1);
    at(G2t, 1, 2) = i(1);
    at(G2t, 2, 1) = i(-1);
    b.X = {E1, E2, F, Ft, G1, G1t, G2, G2t};
    return b;
}

std::array<Rat, 8> coordinates(const GMat& M, const Basis& basis) {
    // 18 real equations (9 entries x re/im), 8 rational unknowns; augmented
    // Gaussian elimination with exact pivoting.
    constexpr int kRows = 18, kCols = 8;
    std::array<std::array<Rat, kCols + 1>, kRows> A{};
    for (int e = 0; e < 9; ++e) {
        for (int j = 0; j < kCols; ++j) {
            A[2 * e][j] = basis.X[j][e].re;
            A[2 * e + 1][j] = basis.X[j][e].im;
        }
        A[2 * e][kCols] = M[e].re;
        A[2 * e + 1][kCols] = M[e].im;
    }
    int rank = 0;
    std::array<int, kCols> pivot_col{};
    for (int col = 0; col < kCols && rank < kRows; ++col) {
        int pr = -1;
        for (int r = rank; r < kRows; ++r)
            if (A[r][col] != Rat(0)) {
                pr = r;
                break;
            }
        if (pr < 0) continue;
        std::swap(A[rank], A[pr]);
        const Rat p = A[rank][col];
        for (int c = col; c <= kCols; ++c) A[rank][c] /= p;
        for (int r = 0; r < kRows; ++r) {
            if (r == rank || A[r][col] == Rat(0)) continue;
            const Rat f = A[r][col];
            for (int c = col; c <= kCols; ++c) A[r][c] -= f * A[rank][c];
        }
        pivot_col[rank] = col;
        ++rank;
    }
    for (int r = rank; r < kRows; ++r)
        if (A[r][kCols] != Rat(0))
            throw std::domain_error("coordinates: matrix not in the span");
    std::array<Rat, 8> x{};
    for (int r = 0; r < rank; ++r) x[pivot_col[r]] = A[r][kCols];
    return x;
}

OlshanskiiResult run_olshanskii_chain() {
    OlshanskiiResult out;
    const Basis basis = su21_basis();

    out.basis_in_algebra = true;
    for (const auto& X : basis.X)
        out.basis_in_algebra = out.basis_in_algebra && in_su21(X);

    // Closure and exact ad matrices on the 8-dimensional real algebra.
    std::array<std::array<std::array<Rat, 8>, 8>, 8> ad{};  // ad[j][k] = coords of [X_j, X_k]
    out.closed_under_bracket = true;
    try {
        for (int j = 0; j < 8; ++j)
            for (int k = 0; k < 8; ++k)
                ad[j][k] = coordinates(bracket(basis.X[j], basis.X[k]), basis);
    } catch (const std::domain_error&) {
        out.closed_under_bracket = false;
        return out;
    }

    // Killing form K(X_j, X_k) = tr(ad X_j  ad X_k) on h = span(E1, E2).
    for (int j = 0; j < 2; ++j)
        for (int k = 0; k < 2; ++k) {
            Rat tr(0);
            // (ad_j ad_k)_{mm} = sum_l ad[j][l][m] * ad[k][m][l]
            for (int m = 0; m < 8; ++m)
                for (int l = 0; l < 8; ++l) tr += ad[j][l][m] * ad[k][m][l];
            out.killing_h[j][k] = tr;
        }

    // Roots from the ad-invariant 2-planes: ad(a E1 + b E2) acts on the pair
    // (F, Ft) by (m1 a + m2 b) J; read off m from ad[0], ad[1]. The F-block
    // root pairs with the compact factor, the G-blocks do not.
    struct Block {
        int lo;
        const char* name;
        bool compact;
    };
    const Block blocks[] = {{2, "F", true}, {4, "G1", false}, {6, "G2", false}};
    for (const auto& blk : blocks) {
        // [E_i, X_lo] = m_i * X_{lo+1}; verify the full J-block structure.
        const Rat m1 = ad[0][blk.lo][blk.lo + 1];
        const Rat m2 = ad[1][blk.lo][blk.lo + 1];
        for (int i = 0; i < 2; ++i) {
            const Rat mi = (i == 0) ? m1 : m2;
            for (int c = 0; c < 8; ++c) {
                const Rat want_lo = (c == blk.lo + 1) ? mi : Rat(0);
                const Rat want_hi = (c == blk.lo) ? -mi : Rat(0);
                if (ad[i][blk.lo][c] != want_lo || ad[i][blk.lo + 1][c] != want_hi)
                    throw std::logic_error("run_olshanskii_chain: block structure");
            }
        }
        out.roots.push_back({{m1, m2}, blk.compact, blk.name});
        out.roots.push_back({{-m1, -m2}, blk.compact, blk.name});
    }

    // Distinguished elements in (E1, E2)-coordinates. H1 spans the Cartan of
    // the sl2 through the G1 root spaces ([G1, G1t] = -2 E1); Z is central in
    // k = h + span(F, Ft) normalized so both non-compact roots take value 2;
    // H0 closes the triangle.
    out.H1 = {Rat(1), Rat(0)};
    out.Z = {Rat(2, 3), Rat(2, 3)};
    out.H0 = {out.Z.first - out.H1.first, out.Z.second - out.H1.second};

    out.c1_generators = {{{Rat(-1, 3), Rat(2, 3)}, {Rat(2, 3), Rat(-1, 3)}}};
    out.c0_generators = {{{Rat(1), Rat(0)}, {Rat(0), Rat(1)}}};
    // The cone {2a + b >= 0, a + 2b >= 0} cut out by the non-compact root
    // functionals; its edges:
    out.cone_generators = {{{Rat(-1), Rat(2)}, {Rat(2), Rat(-1)}}};

    auto in_c0 = [](const std::pair<Rat, Rat>& v) {
        return v.first >= Rat(0) && v.second >= Rat(0);
    };
    out.cone_in_plus_minus_c0 = true;
    for (const auto& g : out.cone_generators) {
        const std::pair<Rat, Rat> neg{-g.first, -g.second};
        if (!in_c0(g) && !in_c0(neg)) out.cone_in_plus_minus_c0 = false;
    }
    out.orderable = out.cone_in_plus_minus_c0;
    return out;
}

std::pair<Rat, Rat> contact_pairing(const Rat& a, const Rat& b) {
    return {2 * a + b, a + 2 * b};
}

double contact_pairing_residual(double a, double b, int samples) {
    using C = std::complex<double>;
    const double pi = 3.14159265358979323846;
    double worst = 0;
    for (int k = 0; k < samples; ++k) {
        // Deterministic sample on S^3 in the projective chart z3 = 1.
        const double u = (k + 0.5) / samples;
        const double th1 = 2 * pi * u, th2 = 2 * pi * u * u;
        const double r1 = std::sqrt(u), r2 = std::sqrt(1.0 - u);
        C z[2] = {std::polar(r1, th1), std::polar(r2, th2)};
        // Flow of exp(t diag(ia, ib, -i(a+b))) on the chart, numeric derivative.
        const double h = 1e-6;
        C v[2];
        for (int j = 0; j < 2; ++j) {
            const double lamj = (j == 0) ? a : b;
            auto act = [&](double t) {
                return z[j] * std::polar(1.0, lamj * t) /
                       std::polar(1.0, -(a + b) * t);
            };
            v[j] = (act(h) - act(-h)) / (2.0 * h);
        }
        // alpha_z(v) = (1/2) sum Im(conj(z_j) v_j).
        double alpha = 0;
        for (int j = 0; j < 2; ++j) alpha += 0.5 * std::imag(std::conj(z[j]) * v[j]);
        const double rho1 = pi * std::norm(z[0]), rho2 = pi * std::norm(z[1]);
        const double predicted =
            ((2 * a + b) * rho1 + (a + 2 * b) * rho2) / (2 * pi);
        worst = std::max(worst, std::abs(alpha - predicted));
    }
    return worst;
}

}  // namespace cf::olsh
