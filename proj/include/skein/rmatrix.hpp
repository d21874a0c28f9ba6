#pragma once

// The SL2 R-matrix on V⊗V and the small matrix calculus used to expand
// matrix-equation relations into scalar relations.

#include "ncpoly.hpp"

#include <array>

namespace skein {

/// 4x4 matrix over the free algebra; rows/cols indexed by the ordered basis
/// e1⊗e1, e1⊗e2, e2⊗e1, e2⊗e2 of V⊗V.
struct Mat4 {
    std::array<std::array<NCPoly, 4>, 4> e{};

    static Mat4 identity() {
        Mat4 m;
        for (int i = 0; i < 4; ++i) m.e[i][i] = NCPoly(1);
        return m;
    }

    friend Mat4 operator*(const Mat4& a, const Mat4& b) {
        Mat4 r;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j)
                for (int k = 0; k < 4; ++k)
                    if (!a.e[i][k].is_zero() && !b.e[k][j].is_zero())
                        r.e[i][j] += a.e[i][k] * b.e[k][j];
        return r;
    }
    friend Mat4 operator-(const Mat4& a, const Mat4& b) {
        Mat4 r;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) r.e[i][j] = a.e[i][j] - b.e[i][j];
        return r;
    }
    bool is_zero() const {
        for (const auto& row : e)
            for (const auto& x : row)
                if (!x.is_zero()) return false;
        return true;
    }
};

/// 2x2 matrix of algebra elements (a generator matrix A or B, or images
/// thereof under an automorphism).
struct Mat2 {
    std::array<std::array<NCPoly, 2>, 2> e{};

    /// X ⊗ 1 acting on V⊗V: entry ((i,j),(k,l)) = X_{ik} δ_{jl}.
    Mat4 leg1() const {
        Mat4 m;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                for (int k = 0; k < 2; ++k) m.e[2 * i + j][2 * k + j] = e[i][k];
        return m;
    }
    /// 1 ⊗ X: entry ((i,j),(k,l)) = δ_{ik} X_{jl}.
    Mat4 leg2() const {
        Mat4 m;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                for (int l = 0; l < 2; ++l) m.e[2 * i + j][2 * i + l] = e[j][l];
        return m;
    }
};

struct RMatrix {
    std::array<std::array<Scalar, 4>, 4> e{};

    Mat4 as_mat4() const {
        Mat4 m;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j)
                if (!e[i][j].is_zero()) m.e[i][j] = NCPoly(e[i][j]);
        return m;
    }

    RMatrix flipped() const { // R21 = P R P
        auto p = [](int v) { return (v & 1) * 2 + (v >> 1); };
        RMatrix r;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) r.e[p(i)][p(j)] = e[i][j];
        return r;
    }

    RMatrix inverse() const {
        // Gauss-Jordan on a 4x8 augmented scalar matrix.
        std::array<std::array<Scalar, 8>, 4> w{};
        for (int i = 0; i < 4; ++i) {
            for (int j = 0; j < 4; ++j) w[i][j] = e[i][j];
            w[i][4 + i] = Scalar(1);
        }
        for (int c = 0; c < 4; ++c) {
            int pr = -1;
            for (int r = c; r < 4; ++r)
                if (!w[r][c].is_zero()) { pr = r; break; }
            if (pr < 0) throw std::domain_error("RMatrix: singular");
            std::swap(w[c], w[pr]);
            Scalar inv = w[c][c].inverse();
            for (int j = 0; j < 8; ++j) w[c][j] *= inv;
            for (int r = 0; r < 4; ++r) {
                if (r == c || w[r][c].is_zero()) continue;
                Scalar f = w[r][c];
                for (int j = 0; j < 8; ++j) w[r][j] -= f * w[c][j];
            }
        }
        RMatrix out;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) out.e[i][j] = w[i][4 + j];
        return out;
    }
};

/// R = q^{-1/2} [[q,0,0,0],[0,1,0,0],[0,q-q^{-1},1,0],[0,0,0,q]].
inline RMatrix rmatrix() {
    RMatrix r;
    Scalar si = Scalar::s_pow(-1); // q^{-1/2}
    r.e[0][0] = si * Scalar::q_pow(1);
    r.e[1][1] = si;
    r.e[2][1] = si * (Scalar::q_pow(1) - Scalar::q_pow(-1));
    r.e[2][2] = si;
    r.e[3][3] = si * Scalar::q_pow(1);
    return r;
}

/// Quantum Yang-Baxter residual R12 R13 R23 - R23 R13 R12 on V⊗V⊗V,
/// returned as an 8x8 array of Scalars (all zero iff QYBE holds).
inline std::array<std::array<Scalar, 8>, 8> yang_baxter_residual(const RMatrix& R) {
    auto mul = [](const std::array<std::array<Scalar, 8>, 8>& a,
                  const std::array<std::array<Scalar, 8>, 8>& b) {
        std::array<std::array<Scalar, 8>, 8> r{};
        for (int i = 0; i < 8; ++i)
            for (int k = 0; k < 8; ++k)
                if (!a[i][k].is_zero())
                    for (int j = 0; j < 8; ++j) r[i][j] += a[i][k] * b[k][j];
        return r;
    };
    // legs (p,q) of 3: basis index = 4*i1 + 2*i2 + i3, bits i1 i2 i3
    auto lift = [&R](int leg_a, int leg_b) {
        std::array<std::array<Scalar, 8>, 8> m{};
        for (int u = 0; u < 8; ++u)
            for (int v = 0; v < 8; ++v) {
                int bits_u[3] = {(u >> 2) & 1, (u >> 1) & 1, u & 1};
                int bits_v[3] = {(v >> 2) & 1, (v >> 1) & 1, v & 1};
                bool diag_ok = true;
                for (int t = 0; t < 3; ++t)
                    if (t != leg_a && t != leg_b && bits_u[t] != bits_v[t]) diag_ok = false;
                if (!diag_ok) continue;
                int ru = 2 * bits_u[leg_a] + bits_u[leg_b];
                int rv = 2 * bits_v[leg_a] + bits_v[leg_b];
                m[u][v] = R.e[ru][rv];
            }
        return m;
    };
    auto r12 = lift(0, 1), r13 = lift(0, 2), r23 = lift(1, 2);
    auto lhs = mul(mul(r12, r13), r23);
    auto rhs = mul(mul(r23, r13), r12);
    std::array<std::array<Scalar, 8>, 8> res{};
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j) res[i][j] = lhs[i][j] - rhs[i][j];
    return res;
}

} // namespace skein
