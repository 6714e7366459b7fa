#pragma once

// Independent closed-form oracle for left-invariant metrics: on an
// orthonormal frame with constant structure coefficients the Koszul formula
// gives the connection algebraically, so curvature and the kinematic scalars
// of a frame field follow without any coordinate computation. Used to check
// the coordinate pipeline on the homogeneous catalog entries.

#include <array>

namespace oracle {

struct Frame {
    // c[i][j][k] = <[e_i, e_j], e_k> on an orthonormal frame
    double c[3][3][3] = {};
};

// diagonal type: [e2,e3] = c1 e1, [e3,e1] = c2 e2, [e1,e2] = c3 e3
inline Frame milnor(double c1, double c2, double c3) {
    Frame f;
    f.c[1][2][0] = c1;
    f.c[2][1][0] = -c1;
    f.c[2][0][1] = c2;
    f.c[0][2][1] = -c2;
    f.c[0][1][2] = c3;
    f.c[1][0][2] = -c3;
    return f;
}

struct Connection {
    double G[3][3][3] = {};  // G[i][j][k] = <nabla_{e_i} e_j, e_k>
};

inline Connection koszul(const Frame& f) {
    Connection con;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k)
                con.G[i][j][k] =
                    0.5 * (f.c[i][j][k] - f.c[j][k][i] + f.c[k][i][j]);
    return con;
}

struct Curvature {
    double R[3][3][3][3] = {};  // <R(e_i,e_j)e_k, e_l>
    double Ric[3][3] = {};
    double S = 0.0;
};

inline Curvature curvature(const Frame& f) {
    const Connection con = koszul(f);
    Curvature out;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k)
                for (int m = 0; m < 3; ++m) {
                    double r = 0.0;
                    for (int l = 0; l < 3; ++l)
                        r += con.G[j][k][l] * con.G[i][l][m] -
                             con.G[i][k][l] * con.G[j][l][m] -
                             f.c[i][j][l] * con.G[l][k][m];
                    out.R[i][j][k][m] = r;
                }
    for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k) {
            double r = 0.0;
            for (int a = 0; a < 3; ++a) r += out.R[a][j][k][a];
            out.Ric[j][k] = r;
        }
    out.S = out.Ric[0][0] + out.Ric[1][1] + out.Ric[2][2];
    return out;
}

// Kinematics of the unit frame field e_a with screen pair (e_b, e_c) chosen
// by cyclic order.
struct Kinematics {
    double div = 0.0;
    double omega = 0.0;
    double kappa_mag = 0.0;
};

inline Kinematics kinematics(const Frame& f, int a) {
    const Connection con = koszul(f);
    const int b = (a + 1) % 3, c = (a + 2) % 3;
    Kinematics out;
    out.div = con.G[b][a][b] + con.G[c][a][c];
    out.omega = con.G[b][a][c] - con.G[c][a][b];
    const double kb = con.G[a][a][b], kc = con.G[a][a][c];
    out.kappa_mag = std::sqrt(kb * kb + kc * kc);
    return out;
}

}  // namespace oracle
