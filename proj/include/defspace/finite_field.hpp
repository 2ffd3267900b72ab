#pragma once

#include <algorithm>
#include <cstdint>
#include <memory>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace defspace {

// F_{p^k} with an explicit monic irreducible defining polynomial over F_p.
// Elements are encoded as integers in [0, p^k): the value sum c_i p^i stands
// for the residue of sum c_i x^i.
class FiniteField {
  public:
    using Elt = uint32_t;

    FiniteField(int p, int k, std::vector<int> poly) : p_(p), k_(k), poly_(std::move(poly)) {
        if (p < 2 || !is_prime(p)) throw std::invalid_argument("FiniteField: characteristic must be prime");
        if (k < 1) throw std::invalid_argument("FiniteField: degree must be positive");
        if (static_cast<int>(poly_.size()) != k + 1 || poly_[k] != 1)
            throw std::invalid_argument("FiniteField: defining polynomial must be monic of degree k");
        for (int& c : poly_) c = ((c % p) + p) % p;
        q_ = 1;
        for (int i = 0; i < k; ++i) {
            q_ *= static_cast<uint64_t>(p);
            if (q_ > (1u << 30)) throw std::invalid_argument("FiniteField: field too large");
        }
        if (!poly_irreducible(poly_)) throw std::invalid_argument("FiniteField: defining polynomial is reducible");
    }

    // Smallest (lexicographic by coefficient list) monic irreducible of degree k.
    static FiniteField with_default_poly(int p, int k) {
        if (k == 1) return FiniteField(p, 1, {0, 1});  // x - 0: poly x, but never used for k=1
        std::vector<int> poly(k + 1, 0);
        poly[k] = 1;
        // iterate over the k low coefficients base p, in increasing order
        uint64_t total = 1;
        for (int i = 0; i < k; ++i) total *= static_cast<uint64_t>(p);
        for (uint64_t code = 0; code < total; ++code) {
            uint64_t c = code;
            for (int i = 0; i < k; ++i) {
                poly[i] = static_cast<int>(c % p);
                c /= p;
            }
            FiniteField probe(p, 1, {0, 1});  // cheap prime-field helper
            if (probe.poly_irreducible_over_prime(poly, p)) return FiniteField(p, k, poly);
        }
        throw std::logic_error("with_default_poly: no irreducible polynomial found");
    }

    int characteristic() const { return p_; }
    int degree() const { return k_; }
    uint64_t q() const { return q_; }
    const std::vector<int>& modulus() const { return poly_; }

    Elt zero() const { return 0; }
    Elt one() const { return 1; }

    // Image of an integer under Z -> F_p subset F_q.
    Elt from_int(long long n) const {
        long long r = n % p_;
        if (r < 0) r += p_;
        return static_cast<Elt>(r);
    }

    Elt add(Elt a, Elt b) const {
        Elt out = 0, mul = 1;
        for (int i = 0; i < k_; ++i) {
            int da = static_cast<int>(a % p_), db = static_cast<int>(b % p_);
            a /= p_;
            b /= p_;
            out += static_cast<Elt>((da + db) % p_) * mul;
            if (i + 1 < k_) mul *= static_cast<Elt>(p_);
        }
        return out;
    }

    Elt neg(Elt a) const {
        Elt out = 0, mul = 1;
        for (int i = 0; i < k_; ++i) {
            int da = static_cast<int>(a % p_);
            a /= p_;
            out += static_cast<Elt>((p_ - da) % p_) * mul;
            if (i + 1 < k_) mul *= static_cast<Elt>(p_);
        }
        return out;
    }

    Elt sub(Elt a, Elt b) const { return add(a, neg(b)); }

    Elt mul(Elt a, Elt b) const {
        if (a == 0 || b == 0) return 0;
        // schoolbook product then reduction mod poly
        std::vector<int> da = digits(a), db = digits(b);
        std::vector<int> prod(2 * k_ - 1, 0);
        for (int i = 0; i < k_; ++i) {
            if (da[i] == 0) continue;
            for (int j = 0; j < k_; ++j) prod[i + j] = (prod[i + j] + da[i] * db[j]) % p_;
        }
        for (int d = 2 * k_ - 2; d >= k_; --d) {
            int c = prod[d];
            if (c == 0) continue;
            prod[d] = 0;
            for (int i = 0; i < k_; ++i) prod[d - k_ + i] = ((prod[d - k_ + i] - c * poly_[i]) % p_ + p_) % p_;
        }
        prod.resize(k_);
        return undigits(prod);
    }

    Elt pow(Elt a, long long e) const {
        uint64_t qm1 = q_ - 1;
        if (a == 0) {
            if (e < 0) throw std::domain_error("FiniteField::pow: zero to negative power");
            return e == 0 ? 1 : 0;
        }
        long long r = e % static_cast<long long>(qm1);
        if (r < 0) r += static_cast<long long>(qm1);
        Elt base = a, out = 1;
        while (r > 0) {
            if (r & 1) out = mul(out, base);
            base = mul(base, base);
            r >>= 1;
        }
        return out;
    }

    Elt inv(Elt a) const {
        if (a == 0) throw std::domain_error("FiniteField::inv: zero is not invertible");
        return pow(a, static_cast<long long>(q_) - 2);
    }

    // Smallest generator of the multiplicative group.
    Elt multiplicative_generator() const {
        uint64_t n = q_ - 1;
        std::vector<uint64_t> primes;
        uint64_t m = n;
        for (uint64_t d = 2; d * d <= m; ++d)
            if (m % d == 0) {
                primes.push_back(d);
                while (m % d == 0) m /= d;
            }
        if (m > 1) primes.push_back(m);
        for (Elt g = 1; g < q_; ++g) {
            bool ok = true;
            for (uint64_t pr : primes)
                if (pow(g, static_cast<long long>(n / pr)) == 1) { ok = false; break; }
            if (ok) return g;
        }
        throw std::logic_error("multiplicative_generator: none found");
    }

    bool same_field(const FiniteField& o) const { return p_ == o.p_ && k_ == o.k_ && poly_ == o.poly_; }

    std::string describe() const {
        return "F_" + std::to_string(q_);
    }

  private:
    int p_;
    int k_;
    std::vector<int> poly_;
    uint64_t q_;

    std::vector<int> digits(Elt a) const {
        std::vector<int> d(k_);
        for (int i = 0; i < k_; ++i) {
            d[i] = static_cast<int>(a % p_);
            a /= p_;
        }
        return d;
    }
    Elt undigits(const std::vector<int>& d) const {
        Elt out = 0, mul = 1;
        for (int i = 0; i < k_; ++i) {
            out += static_cast<Elt>(d[i]) * mul;
            if (i + 1 < k_) mul *= static_cast<Elt>(p_);
        }
        return out;
    }

    static bool is_prime(int n) {
        if (n < 2) return false;
        for (int d = 2; d * d <= n; ++d)
            if (n % d == 0) return false;
        return true;
    }

    // Trial division by every monic polynomial of degree 1..deg/2 over F_p.
    bool poly_irreducible(const std::vector<int>& f) const { return poly_irreducible_over_prime(f, p_); }

    static bool poly_irreducible_over_prime(const std::vector<int>& f, int p) {
        int deg = static_cast<int>(f.size()) - 1;
        if (deg == 1) return true;
        for (int d = 1; 2 * d <= deg; ++d) {
            uint64_t total = 1;
            for (int i = 0; i < d; ++i) total *= static_cast<uint64_t>(p);
            std::vector<int> g(d + 1, 0);
            g[d] = 1;
            for (uint64_t code = 0; code < total; ++code) {
                uint64_t c = code;
                for (int i = 0; i < d; ++i) {
                    g[i] = static_cast<int>(c % p);
                    c /= p;
                }
                if (poly_divides(g, f, p)) return false;
            }
        }
        return true;
    }

    static bool poly_divides(const std::vector<int>& g, std::vector<int> f, int p) {
        int dg = static_cast<int>(g.size()) - 1;
        int df = static_cast<int>(f.size()) - 1;
        // g monic: plain long division
        for (int d = df; d >= dg; --d) {
            int c = f[d] % p;
            if (c == 0) continue;
            for (int i = 0; i <= dg; ++i) f[d - dg + i] = ((f[d - dg + i] - c * g[i]) % p + p) % p;
        }
        for (int c : f)
            if (c % p != 0) return false;
        return true;
    }
};

// Dense matrix over a finite field. The field object must outlive the matrix.
struct FqMat {
    const FiniteField* F = nullptr;
    int rows = 0;
    int cols = 0;
    std::vector<FiniteField::Elt> data;

    FqMat() = default;
    FqMat(const FiniteField& f, int r, int c) : F(&f), rows(r), cols(c), data(static_cast<size_t>(r) * c, 0) {}

    FiniteField::Elt& operator()(int r, int c) { return data[static_cast<size_t>(r) * cols + c]; }
    FiniteField::Elt operator()(int r, int c) const { return data[static_cast<size_t>(r) * cols + c]; }

    static FqMat identity(const FiniteField& f, int n) {
        FqMat m(f, n, n);
        for (int i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    bool is_zero() const {
        return std::all_of(data.begin(), data.end(), [](FiniteField::Elt e) { return e == 0; });
    }

    bool operator==(const FqMat& o) const {
        return rows == o.rows && cols == o.cols && data == o.data;
    }
};

inline FqMat fq_mul(const FqMat& a, const FqMat& b) {
    if (a.cols != b.rows || !a.F->same_field(*b.F)) throw std::invalid_argument("fq_mul: shape/field mismatch");
    const FiniteField& F = *a.F;
    FqMat c(F, a.rows, b.cols);
    for (int i = 0; i < a.rows; ++i)
        for (int k = 0; k < a.cols; ++k) {
            auto aik = a(i, k);
            if (aik == 0) continue;
            for (int j = 0; j < b.cols; ++j)
                if (b(k, j) != 0) c(i, j) = F.add(c(i, j), F.mul(aik, b(k, j)));
        }
    return c;
}

inline FqMat fq_add(const FqMat& a, const FqMat& b) {
    if (a.rows != b.rows || a.cols != b.cols) throw std::invalid_argument("fq_add: shape mismatch");
    FqMat c(*a.F, a.rows, a.cols);
    for (size_t i = 0; i < a.data.size(); ++i) c.data[i] = a.F->add(a.data[i], b.data[i]);
    return c;
}

inline FqMat fq_sub(const FqMat& a, const FqMat& b) {
    if (a.rows != b.rows || a.cols != b.cols) throw std::invalid_argument("fq_sub: shape mismatch");
    FqMat c(*a.F, a.rows, a.cols);
    for (size_t i = 0; i < a.data.size(); ++i) c.data[i] = a.F->sub(a.data[i], b.data[i]);
    return c;
}

inline FqMat fq_scale(const FqMat& a, FiniteField::Elt s) {
    FqMat c(*a.F, a.rows, a.cols);
    for (size_t i = 0; i < a.data.size(); ++i) c.data[i] = a.F->mul(a.data[i], s);
    return c;
}

inline FqMat fq_transpose(const FqMat& a) {
    FqMat t(*a.F, a.cols, a.rows);
    for (int i = 0; i < a.rows; ++i)
        for (int j = 0; j < a.cols; ++j) t(j, i) = a(i, j);
    return t;
}

// Row echelon in place; returns rank. Records pivot columns if requested.
inline int fq_echelon(FqMat& a, std::vector<int>* pivot_cols = nullptr) {
    const FiniteField& F = *a.F;
    int r = 0;
    for (int c = 0; c < a.cols && r < a.rows; ++c) {
        int piv = -1;
        for (int i = r; i < a.rows; ++i)
            if (a(i, c) != 0) { piv = i; break; }
        if (piv < 0) continue;
        if (piv != r)
            for (int j = 0; j < a.cols; ++j) std::swap(a(r, j), a(piv, j));
        FiniteField::Elt inv = F.inv(a(r, c));
        for (int j = 0; j < a.cols; ++j) a(r, j) = F.mul(a(r, j), inv);
        for (int i = 0; i < a.rows; ++i) {
            if (i == r || a(i, c) == 0) continue;
            FiniteField::Elt f = a(i, c);
            for (int j = 0; j < a.cols; ++j) a(i, j) = F.sub(a(i, j), F.mul(f, a(r, j)));
        }
        if (pivot_cols) pivot_cols->push_back(c);
        ++r;
    }
    return r;
}

inline int fq_rank(FqMat a) { return fq_echelon(a); }

// Kernel basis (rows) of {x : A x = 0}, echelon-normalised.
inline FqMat fq_kernel(FqMat a) {
    const FiniteField& F = *a.F;
    std::vector<int> piv;
    int r = fq_echelon(a, &piv);
    std::vector<bool> is_piv(a.cols, false);
    for (int c : piv) is_piv[c] = true;
    FqMat out(F, a.cols - r, a.cols);
    int row = 0;
    for (int fc = 0; fc < a.cols; ++fc) {
        if (is_piv[fc]) continue;
        out(row, fc) = 1;
        for (int i = 0; i < r; ++i) out(row, piv[i]) = F.neg(a(i, fc));
        ++row;
    }
    return out;
}

inline bool fq_invertible(const FqMat& a) {
    if (a.rows != a.cols) return false;
    FqMat c = a;
    return fq_echelon(c) == a.rows;
}

inline FqMat fq_inverse(const FqMat& a) {
    if (a.rows != a.cols) throw std::invalid_argument("fq_inverse: not square");
    const FiniteField& F = *a.F;
    int n = a.rows;
    FqMat aug(F, n, 2 * n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) aug(i, j) = a(i, j);
        aug(i, n + i) = 1;
    }
    int r = fq_echelon(aug);
    if (r < n) throw std::domain_error("fq_inverse: singular matrix");
    FqMat inv(F, n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
    return inv;
}

inline FqMat fq_pow(const FqMat& a, long long e) {
    if (a.rows != a.cols) throw std::invalid_argument("fq_pow: not square");
    if (e < 0) return fq_pow(fq_inverse(a), -e);
    FqMat result = FqMat::identity(*a.F, a.rows);
    FqMat base = a;
    while (e > 0) {
        if (e & 1) result = fq_mul(result, base);
        base = fq_mul(base, base);
        e >>= 1;
    }
    return result;
}

// Characteristic polynomial by the Berkowitz algorithm (division-free).
// Returns coefficients c[0..n] with det(xI - A) = sum c[i] x^i, c[n] = 1.
inline std::vector<FiniteField::Elt> fq_charpoly(const FqMat& a) {
    if (a.rows != a.cols) throw std::invalid_argument("fq_charpoly: not square");
    const FiniteField& F = *a.F;
    int n = a.rows;
    if (n == 0) return {1};
    // Berkowitz: iteratively build the coefficient vector via Toeplitz products.
    std::vector<FiniteField::Elt> poly{F.neg(a(0, 0)), 1};  // x - a00
    for (int m = 1; m < n; ++m) {
        // principal (m+1)x(m+1) block; R = row, C = column, M = top-left mxm
        // powers: s_k = R M^k C for k = 0..m-1
        std::vector<FiniteField::Elt> s(m);
        std::vector<FiniteField::Elt> vec(m);
        for (int i = 0; i < m; ++i) vec[i] = a(i, m);  // C
        for (int k = 0; k < m; ++k) {
            FiniteField::Elt acc = 0;
            for (int i = 0; i < m; ++i) acc = F.add(acc, F.mul(a(m, i), vec[i]));  // R . vec
            s[k] = acc;
            if (k + 1 < m) {
                std::vector<FiniteField::Elt> nxt(m, 0);
                for (int i = 0; i < m; ++i) {
                    if (vec[i] == 0) continue;
                    for (int r2 = 0; r2 < m; ++r2) nxt[r2] = F.add(nxt[r2], F.mul(a(r2, i), vec[i]));
                }
                vec = nxt;
            }
        }
        // Toeplitz column: t = (1, -a_mm, -s_0, -s_1, ...)
        std::vector<FiniteField::Elt> t(m + 2);
        t[0] = 1;
        t[1] = F.neg(a(m, m));
        for (int k = 0; k < m; ++k) t[k + 2] = F.neg(s[k]);
        // new_poly[j] = sum_i t[i] * old_poly[j - (1 - i)]… convolution with
        // the old characteristic vector ordered from leading coefficient.
        // Work with coefficient lists ordered by descending degree:
        std::vector<FiniteField::Elt> old_desc(poly.rbegin(), poly.rend());
        std::vector<FiniteField::Elt> out_desc(old_desc.size() + 1, 0);
        for (size_t i = 0; i < t.size(); ++i) {
            if (t[i] == 0) continue;
            for (size_t j = 0; j < old_desc.size(); ++j) {
                size_t idx = i + j;
                if (idx < out_desc.size()) out_desc[idx] = F.add(out_desc[idx], F.mul(t[i], old_desc[j]));
            }
        }
        poly.assign(out_desc.rbegin(), out_desc.rend());
    }
    return poly;
}

}  // namespace defspace
