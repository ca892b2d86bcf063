#include "towerforge/smith.hpp"

#include <stdexcept>

namespace towerforge {

IMat identity_matrix(std::size_t n) {
    IMat m(n, std::vector<Int>(n, Int(0)));
    for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

IMat mat_mul(const IMat& a, const IMat& b) {
    if (a.empty() || b.empty()) return {};
    IMat c(a.size(), std::vector<Int>(b[0].size(), Int(0)));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t k = 0; k < b.size(); ++k) {
            if (a[i][k] == 0) continue;
            for (std::size_t j = 0; j < b[0].size(); ++j) c[i][j] += a[i][k] * b[k][j];
        }
    return c;
}

namespace {

struct Work {
    IMat M, U, Uinv, V, Vinv;
    std::size_t rows, cols;

    // Row ops keep U*M_orig*V = M: applying E on M's rows means U <- E*U and
    // Uinv <- Uinv*E^{-1}. Column ops mirror on V.
    void row_swap(std::size_t a, std::size_t b) {
        if (a == b) return;
        std::swap(M[a], M[b]);
        std::swap(U[a], U[b]);
        for (std::size_t i = 0; i < rows; ++i) std::swap(Uinv[i][a], Uinv[i][b]);
    }
    void row_add(std::size_t dst, std::size_t src, const Int& c) {  // row_dst += c * row_src
        if (c == 0) return;
        for (std::size_t j = 0; j < cols; ++j) M[dst][j] += c * M[src][j];
        for (std::size_t j = 0; j < rows; ++j) U[dst][j] += c * U[src][j];
        for (std::size_t i = 0; i < rows; ++i) Uinv[i][src] -= c * Uinv[i][dst];
    }
    void row_negate(std::size_t a) {
        for (std::size_t j = 0; j < cols; ++j) M[a][j] = -M[a][j];
        for (std::size_t j = 0; j < rows; ++j) U[a][j] = -U[a][j];
        for (std::size_t i = 0; i < rows; ++i) Uinv[i][a] = -Uinv[i][a];
    }
    void col_swap(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t i = 0; i < rows; ++i) std::swap(M[i][a], M[i][b]);
        for (std::size_t i = 0; i < cols; ++i) std::swap(V[i][a], V[i][b]);
        std::swap(Vinv[a], Vinv[b]);
    }
    void col_add(std::size_t dst, std::size_t src, const Int& c) {  // col_dst += c * col_src
        if (c == 0) return;
        for (std::size_t i = 0; i < rows; ++i) M[i][dst] += c * M[i][src];
        for (std::size_t i = 0; i < cols; ++i) V[i][dst] += c * V[i][src];
        for (std::size_t j = 0; j < cols; ++j) Vinv[src][j] -= c * Vinv[dst][j];
    }
    void col_negate(std::size_t a) {
        for (std::size_t i = 0; i < rows; ++i) M[i][a] = -M[i][a];
        for (std::size_t i = 0; i < cols; ++i) V[i][a] = -V[i][a];
        for (std::size_t j = 0; j < cols; ++j) Vinv[a][j] = -Vinv[a][j];
    }
};

}  // namespace

SmithResult smith_normal_form(IMat m) {
    const std::size_t rows = m.size();
    const std::size_t cols = rows == 0 ? 0 : m[0].size();
    for (const auto& r : m)
        if (r.size() != cols) throw std::invalid_argument("smith_normal_form: ragged matrix");

    Work w{std::move(m), identity_matrix(rows), identity_matrix(rows), identity_matrix(cols), identity_matrix(cols),
           rows, cols};

    const std::size_t n = std::min(rows, cols);
    for (std::size_t t = 0; t < n; ++t) {
        // Find a nonzero pivot of minimal absolute value in the submatrix.
        std::size_t pi = t, pj = t;
        bool found = false;
        Int best;
        for (std::size_t i = t; i < rows; ++i)
            for (std::size_t j = t; j < cols; ++j) {
                if (w.M[i][j] == 0) continue;
                Int a = abs(w.M[i][j]);
                if (!found || a < best) {
                    best = a;
                    pi = i;
                    pj = j;
                    found = true;
                }
            }
        if (!found) break;
        w.row_swap(t, pi);
        w.col_swap(t, pj);

        // Eliminate row/column t (repeat while remainders reappear).
        while (true) {
            bool clean = true;
            for (std::size_t i = t + 1; i < rows; ++i) {
                if (w.M[i][t] == 0) continue;
                Int qout;
                mpz_fdiv_q(qout.get_mpz_t(), w.M[i][t].get_mpz_t(), w.M[t][t].get_mpz_t());
                w.row_add(i, t, -qout);
                if (w.M[i][t] != 0) {
                    w.row_swap(t, i);
                    clean = false;
                }
            }
            for (std::size_t j = t + 1; j < cols; ++j) {
                if (w.M[t][j] == 0) continue;
                Int qout;
                mpz_fdiv_q(qout.get_mpz_t(), w.M[t][j].get_mpz_t(), w.M[t][t].get_mpz_t());
                w.col_add(j, t, -qout);
                if (w.M[t][j] != 0) {
                    w.col_swap(t, j);
                    clean = false;
                }
            }
            if (clean) break;
        }
        if (w.M[t][t] < 0) w.row_negate(t);
    }

    // Enforce the divisibility chain d_t | d_{t+1}; each pairwise fix
    // replaces (d_t, d_j) by (gcd, lcm), iterate to a fixed point.
    for (int pass = 0;; ++pass) {
        if (pass > 4096) throw std::logic_error("smith_normal_form: divisibility chain did not stabilize");
        bool changed = false;
        for (std::size_t t = 0; t + 1 < n; ++t) {
            for (std::size_t j = t + 1; j < n; ++j) {
                if (w.M[j][j] == 0 || w.M[t][t] == 0) continue;
                if (divides(w.M[t][t], w.M[j][j])) continue;
                changed = true;
                // Fold column j into column t and rediagonalize the 2x2 block.
                w.col_add(t, j, Int(1));
                while (true) {
                    bool clean = true;
                    if (w.M[j][t] != 0) {
                        Int qout;
                        mpz_fdiv_q(qout.get_mpz_t(), w.M[j][t].get_mpz_t(), w.M[t][t].get_mpz_t());
                        w.row_add(j, t, -qout);
                        if (w.M[j][t] != 0) {
                            w.row_swap(t, j);
                            clean = false;
                        }
                    }
                    if (w.M[t][j] != 0) {
                        Int qout;
                        mpz_fdiv_q(qout.get_mpz_t(), w.M[t][j].get_mpz_t(), w.M[t][t].get_mpz_t());
                        w.col_add(j, t, -qout);
                        if (w.M[t][j] != 0) {
                            w.col_swap(t, j);
                            clean = false;
                        }
                    }
                    if (clean) break;
                }
                if (w.M[t][t] < 0) w.row_negate(t);
                if (w.M[j][j] < 0) w.row_negate(j);
            }
        }
        if (!changed) break;
    }

    // Zero rows/columns sort to the end naturally (they were skipped).
    SmithResult out;
    out.D = std::move(w.M);
    out.U = std::move(w.U);
    out.Uinv = std::move(w.Uinv);
    out.V = std::move(w.V);
    out.Vinv = std::move(w.Vinv);
    return out;
}

}  // namespace towerforge
