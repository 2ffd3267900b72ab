#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace defspace {

using Int = long long;
using IVec = std::vector<Int>;

// Dense integer matrix, row-major.
struct IMat {
    int rows = 0;
    int cols = 0;
    std::vector<Int> data;

    IMat() = default;
    IMat(int r, int c) : rows(r), cols(c), data(static_cast<size_t>(r) * c, 0) {}

    Int& operator()(int r, int c) { return data[static_cast<size_t>(r) * cols + c]; }
    Int operator()(int r, int c) const { return data[static_cast<size_t>(r) * cols + c]; }

    static IMat identity(int n) {
        IMat m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    static IMat from_rows(const std::vector<IVec>& rws, int ncols) {
        IMat m(static_cast<int>(rws.size()), ncols);
        for (int i = 0; i < m.rows; ++i) {
            if (static_cast<int>(rws[i].size()) != ncols)
                throw std::invalid_argument("IMat::from_rows: ragged rows");
            for (int j = 0; j < ncols; ++j) m(i, j) = rws[i][j];
        }
        return m;
    }

    IVec row(int r) const {
        IVec v(cols);
        for (int j = 0; j < cols; ++j) v[j] = (*this)(r, j);
        return v;
    }

    std::vector<IVec> row_list() const {
        std::vector<IVec> out;
        out.reserve(rows);
        for (int i = 0; i < rows; ++i) out.push_back(row(i));
        return out;
    }

    bool operator==(const IMat& o) const {
        return rows == o.rows && cols == o.cols && data == o.data;
    }
};

inline IMat imat_mul(const IMat& a, const IMat& b) {
    if (a.cols != b.rows) throw std::invalid_argument("imat_mul: shape mismatch");
    IMat c(a.rows, b.cols);
    for (int i = 0; i < a.rows; ++i)
        for (int k = 0; k < a.cols; ++k) {
            Int aik = a(i, k);
            if (aik == 0) continue;
            for (int j = 0; j < b.cols; ++j) c(i, j) += aik * b(k, j);
        }
    return c;
}

inline IVec imat_apply(const IMat& a, const IVec& v) {
    if (a.cols != static_cast<int>(v.size())) throw std::invalid_argument("imat_apply: shape mismatch");
    IVec out(a.rows, 0);
    for (int i = 0; i < a.rows; ++i)
        for (int j = 0; j < a.cols; ++j) out[i] += a(i, j) * v[j];
    return out;
}

// v * A (row vector times matrix)
inline IVec ivec_mul_mat(const IVec& v, const IMat& a) {
    if (a.rows != static_cast<int>(v.size())) throw std::invalid_argument("ivec_mul_mat: shape mismatch");
    IVec out(a.cols, 0);
    for (int i = 0; i < a.rows; ++i) {
        if (v[i] == 0) continue;
        for (int j = 0; j < a.cols; ++j) out[j] += v[i] * a(i, j);
    }
    return out;
}

inline IMat imat_transpose(const IMat& a) {
    IMat t(a.cols, a.rows);
    for (int i = 0; i < a.rows; ++i)
        for (int j = 0; j < a.cols; ++j) t(j, i) = a(i, j);
    return t;
}

inline Int ivec_dot(const IVec& a, const IVec& b) {
    if (a.size() != b.size()) throw std::invalid_argument("ivec_dot: length mismatch");
    Int s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline Int int_gcd(Int a, Int b) {
    a = std::llabs(a);
    b = std::llabs(b);
    while (b) {
        Int t = a % b;
        a = b;
        b = t;
    }
    return a;
}

// Determinant by fraction-free (Bareiss) elimination.
inline Int imat_det(IMat a) {
    if (a.rows != a.cols) throw std::invalid_argument("imat_det: not square");
    int n = a.rows;
    if (n == 0) return 1;
    Int prev = 1;
    int sign = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (a(k, k) == 0) {
            int piv = -1;
            for (int i = k + 1; i < n; ++i)
                if (a(i, k) != 0) { piv = i; break; }
            if (piv < 0) return 0;
            for (int j = 0; j < n; ++j) std::swap(a(k, j), a(piv, j));
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j)
                a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
        prev = a(k, k);
    }
    return sign * a(n - 1, n - 1);
}

// Rank over the rationals, via integer fraction-free elimination.
inline int imat_rank(IMat a) {
    int r = 0;
    for (int c = 0; c < a.cols && r < a.rows; ++c) {
        int piv = -1;
        for (int i = r; i < a.rows; ++i)
            if (a(i, c) != 0) { piv = i; break; }
        if (piv < 0) continue;
        for (int j = 0; j < a.cols; ++j) std::swap(a(r, j), a(piv, j));
        for (int i = r + 1; i < a.rows; ++i) {
            Int f = a(i, c), g = a(r, c);
            if (f == 0) continue;
            Int l = f / int_gcd(f, g);
            Int m = g / int_gcd(f, g);
            for (int j = 0; j < a.cols; ++j) a(i, j) = a(i, j) * m - a(r, j) * l;
        }
        ++r;
    }
    return r;
}

// Primitive integer basis of the rational kernel {x : A x = 0}.
// Deterministic: echelon with first-nonzero pivoting, free columns in order.
inline std::vector<IVec> rational_kernel(IMat a) {
    int n = a.cols;
    std::vector<int> pivot_col;
    int r = 0;
    for (int c = 0; c < n && r < a.rows; ++c) {
        int piv = -1;
        for (int i = r; i < a.rows; ++i)
            if (a(i, c) != 0) { piv = i; break; }
        if (piv < 0) continue;
        for (int j = 0; j < n; ++j) std::swap(a(r, j), a(piv, j));
        for (int i = 0; i < a.rows; ++i) {
            if (i == r || a(i, c) == 0) continue;
            Int g = int_gcd(a(i, c), a(r, c));
            Int l = a(i, c) / g, m = a(r, c) / g;
            for (int j = 0; j < n; ++j) a(i, j) = a(i, j) * m - a(r, j) * l;
        }
        pivot_col.push_back(c);
        ++r;
    }
    std::vector<bool> is_pivot(n, false);
    for (int c : pivot_col) is_pivot[c] = true;
    std::vector<IVec> basis;
    for (int free_c = 0; free_c < n; ++free_c) {
        if (is_pivot[free_c]) continue;
        // x[free_c] = L (lcm of pivots), back-substitute exactly.
        Int lcm = 1;
        for (int i = 0; i < r; ++i) {
            Int p = std::llabs(a(i, pivot_col[i]));
            lcm = lcm / int_gcd(lcm, p) * p;
        }
        IVec x(n, 0);
        x[free_c] = lcm;
        for (int i = 0; i < r; ++i)
            x[pivot_col[i]] = -a(i, free_c) * (lcm / a(i, pivot_col[i]));
        Int g = 0;
        for (Int v : x) g = int_gcd(g, v);
        if (g > 1)
            for (Int& v : x) v /= g;
        // sign normalisation: first nonzero entry positive
        for (Int v : x) {
            if (v == 0) continue;
            if (v < 0)
                for (Int& w : x) w = -w;
            break;
        }
        basis.push_back(std::move(x));
    }
    return basis;
}

// Smith normal form: returns D (diagonal, divisibility chain) together with
// unimodular U, V such that U * A * V = D. Pivot selection is by minimal
// absolute value to keep coefficients small.
struct SmithResult {
    IMat d;
    IMat u;  // rows x rows
    IMat v;  // cols x cols
    IMat vinv;
    int rank = 0;
};

inline SmithResult smith_normal_form(IMat a) {
    int m = a.rows, n = a.cols;
    SmithResult res;
    res.u = IMat::identity(m);
    res.v = IMat::identity(n);
    res.vinv = IMat::identity(n);

    auto swap_rows = [&](int i, int j) {
        if (i == j) return;
        for (int c = 0; c < n; ++c) std::swap(a(i, c), a(j, c));
        for (int c = 0; c < m; ++c) std::swap(res.u(i, c), res.u(j, c));
    };
    auto swap_cols = [&](int i, int j) {
        if (i == j) return;
        for (int r = 0; r < m; ++r) std::swap(a(r, i), a(r, j));
        for (int r = 0; r < n; ++r) std::swap(res.v(r, i), res.v(r, j));
        for (int c = 0; c < n; ++c) std::swap(res.vinv(i, c), res.vinv(j, c));
    };
    auto add_row = [&](int dst, int src, Int f) {  // row[dst] += f*row[src]
        if (f == 0) return;
        for (int c = 0; c < n; ++c) a(dst, c) += f * a(src, c);
        for (int c = 0; c < m; ++c) res.u(dst, c) += f * res.u(src, c);
    };
    auto add_col = [&](int dst, int src, Int f) {  // col[dst] += f*col[src]
        if (f == 0) return;
        for (int r = 0; r < m; ++r) a(r, dst) += f * a(r, src);
        for (int r = 0; r < n; ++r) res.v(r, dst) += f * res.v(r, src);
        // inverse op on vinv: row[src] -= f*row[dst]
        for (int c = 0; c < n; ++c) res.vinv(src, c) -= f * res.vinv(dst, c);
    };
    auto negate_row = [&](int i) {
        for (int c = 0; c < n; ++c) a(i, c) = -a(i, c);
        for (int c = 0; c < m; ++c) res.u(i, c) = -res.u(i, c);
    };

    int t = 0;
    while (t < m && t < n) {
        // find pivot of minimal nonzero absolute value in remaining block
        int pr = -1, pc = -1;
        Int best = 0;
        for (int i = t; i < m; ++i)
            for (int j = t; j < n; ++j) {
                Int v = std::llabs(a(i, j));
                if (v != 0 && (best == 0 || v < best)) {
                    best = v;
                    pr = i;
                    pc = j;
                }
            }
        if (pr < 0) break;
        swap_rows(t, pr);
        swap_cols(t, pc);
        if (a(t, t) < 0) negate_row(t);

        bool clean = true;
        for (int i = t + 1; i < m; ++i) {
            Int q = a(i, t) / a(t, t);
            add_row(i, t, -q);
            if (a(i, t) != 0) clean = false;
        }
        for (int j = t + 1; j < n; ++j) {
            Int q = a(t, j) / a(t, t);
            add_col(j, t, -q);
            if (a(t, j) != 0) clean = false;
        }
        if (!clean) continue;  // remainders became new smaller pivots

        // divisibility: pivot must divide the rest of the block
        bool divides = true;
        for (int i = t + 1; i < m && divides; ++i)
            for (int j = t + 1; j < n && divides; ++j)
                if (a(i, j) % a(t, t) != 0) {
                    add_row(t, i, 1);
                    divides = false;
                }
        if (!divides) continue;
        ++t;
    }
    res.rank = t;
    res.d = a;
    return res;
}

// Invariant factors > 1 of coker(A : Z^cols -> Z^rows / row-lattice)… more
// precisely of saturation(rowspace)/rowspace: the nonzero diagonal entries.
inline IVec invariant_factors(const IMat& a) {
    SmithResult s = smith_normal_form(a);
    IVec out;
    for (int i = 0; i < s.rank; ++i) {
        Int d = std::llabs(s.d(i, i));
        if (d > 1) out.push_back(d);
    }
    std::sort(out.begin(), out.end());
    return out;
}

// Basis (rows) of the saturation of the row lattice of A inside Z^cols:
// all integer vectors lying in the rational row span.
inline IMat lattice_saturation(const IMat& a) {
    SmithResult s = smith_normal_form(a);
    IMat out(s.rank, a.cols);
    // A = U^{-1} D V^{-1}; row lattice = Z-span of d_i * (row i of V^{-1});
    // saturation = Z-span of rows 0..rank-1 of V^{-1}.
    for (int i = 0; i < s.rank; ++i)
        for (int j = 0; j < a.cols; ++j) out(i, j) = s.vinv(i, j);
    return out;
}

// Solve x * A = b over the integers. Returns false when no integral solution.
inline bool integer_solve_left(const IMat& a, const IVec& b, IVec& x_out) {
    if (static_cast<int>(b.size()) != a.cols) throw std::invalid_argument("integer_solve_left: shape");
    SmithResult s = smith_normal_form(a);
    // x A = b  <=>  (x U^{-1}) D = b V  with x = z U.
    IVec bv = ivec_mul_mat(b, s.v);
    IVec z(a.rows, 0);
    for (int i = 0; i < std::min(a.rows, a.cols); ++i) {
        Int d = s.d(i, i);
        if (d == 0) {
            if (bv[i] != 0) return false;
        } else {
            if (bv[i] % d != 0) return false;
            z[i] = bv[i] / d;
        }
    }
    for (int i = std::min(a.rows, a.cols); i < a.cols; ++i)
        if (bv[i] != 0) return false;
    x_out = ivec_mul_mat(z, s.u);
    return true;
}

// Solve A x = b over the rationals; returns a solution scaled to the smallest
// integer vector (x, den) with A x = den * b. Returns false if inconsistent.
inline bool rational_solve(const IMat& a, const IVec& b, IVec& x_out, Int& den_out) {
    int m = a.rows, n = a.cols;
    IMat aug(m, n + 1);
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < n; ++j) aug(i, j) = a(i, j);
        aug(i, n) = b[i];
    }
    std::vector<int> pivot_col;
    int r = 0;
    for (int c = 0; c < n && r < m; ++c) {
        int piv = -1;
        for (int i = r; i < m; ++i)
            if (aug(i, c) != 0) { piv = i; break; }
        if (piv < 0) continue;
        for (int j = 0; j <= n; ++j) std::swap(aug(r, j), aug(piv, j));
        for (int i = 0; i < m; ++i) {
            if (i == r || aug(i, c) == 0) continue;
            Int g = int_gcd(aug(i, c), aug(r, c));
            Int l = aug(i, c) / g, mm = aug(r, c) / g;
            for (int j = 0; j <= n; ++j) aug(i, j) = aug(i, j) * mm - aug(r, j) * l;
        }
        pivot_col.push_back(c);
        ++r;
    }
    for (int i = r; i < m; ++i)
        if (aug(i, n) != 0) return false;
    Int lcm = 1;
    for (int i = 0; i < r; ++i) {
        Int p = std::llabs(aug(i, pivot_col[i]));
        lcm = lcm / int_gcd(lcm, p) * p;
    }
    IVec x(n, 0);
    for (int i = 0; i < r; ++i) x[pivot_col[i]] = aug(i, n) * (lcm / aug(i, pivot_col[i]));
    Int g = lcm;
    for (Int v : x) g = int_gcd(g, v);
    if (g > 1) {
        for (Int& v : x) v /= g;
        lcm /= g;
    }
    x_out = x;
    den_out = lcm;
    return true;
}

// Integer kernel {x in Z^cols : A x = 0} as a full-rank basis, rows of result.
inline IMat integer_kernel(const IMat& a) {
    std::vector<IVec> k = rational_kernel(a);
    // rational_kernel already returns primitive vectors spanning ker over Q;
    // the integer kernel is the saturation of their span.
    if (k.empty()) return IMat(0, a.cols);
    return lattice_saturation(IMat::from_rows(k, a.cols));
}

// Is the integer matrix unimodular (square, det = ±1)?
inline bool is_unimodular(const IMat& a) {
    return a.rows == a.cols && std::llabs(imat_det(a)) == 1;
}

// Inverse of a unimodular integer matrix.
inline IMat unimodular_inverse(const IMat& a) {
    if (!is_unimodular(a)) throw std::invalid_argument("unimodular_inverse: matrix is not unimodular");
    int n = a.rows;
    IMat inv(n, n);
    for (int j = 0; j < n; ++j) {
        IVec e(n, 0);
        e[j] = 1;
        IVec x;
        Int den;
        if (!rational_solve(a, e, x, den) || den != 1)
            throw std::logic_error("unimodular_inverse: inconsistent solve");
        for (int i = 0; i < n; ++i) inv(i, j) = x[i];
    }
    return inv;
}

}  // namespace defspace
