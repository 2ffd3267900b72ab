#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "defspace/finite_field.hpp"
#include "defspace/levi.hpp"
#include "defspace/root_datum.hpp"

namespace defspace {

namespace detail {

struct Frac {
    Int num = 0;
    Int den = 1;
    Frac() = default;
    Frac(Int n) : num(n), den(1) {}
    Frac(Int n, Int d) : num(n), den(d) { normalise(); }
    void normalise() {
        if (den == 0) throw std::logic_error("Frac: zero denominator");
        if (den < 0) { num = -num; den = -den; }
        Int g = int_gcd(num, den);
        if (g > 1) { num /= g; den /= g; }
        if (num == 0) den = 1;
    }
    Frac operator*(const Frac& o) const { return Frac(num * o.num, den * o.den); }
    Frac operator/(const Frac& o) const {
        if (o.num == 0) throw std::logic_error("Frac: division by zero");
        return Frac(num * o.den, den * o.num);
    }
    Frac operator+(const Frac& o) const { return Frac(num * o.den + o.num * den, den * o.den); }
    Frac operator-() const { return Frac(-num, den); }
    bool is_integer() const { return den == 1; }
};

}  // namespace detail

// Lie algebra over F_{p^k} with Chevalley basis {e_alpha} ∪ {h_i}, built from
// the root system of a based root datum (the simply connected algebra of the
// derived system). Structure constants are computed over Z with the
// extraspecial-pair sign convention in the canonical root order, then the
// whole table is verified: antisymmetry, Jacobi on all basis triples, and
// |N_{alpha,beta}| = p_string + 1.
class ChevalleyAlgebra {
  public:
    using Elt = FiniteField::Elt;

    ChevalleyAlgebra(BasedRootDatum datum, const FiniteField& field)
        : d_(std::move(datum)), F_(&field) {
        nroots_ = d_.num_roots();
        ns_ = d_.num_simple();
        dim_ = nroots_ + ns_;
        if (dim_ == 0) throw std::invalid_argument("ChevalleyAlgebra: datum has no roots");
        compute_coroot_coords();
        compute_structure_constants();
        build_bracket_table();
        verify_table();
    }

    const BasedRootDatum& datum() const { return d_; }
    const FiniteField& field() const { return *F_; }
    int dim() const { return dim_; }
    int num_roots() const { return nroots_; }
    int cartan_index(int i) const { return nroots_ + i; }

    // N_{alpha,beta} for root indices with alpha+beta a root
    Int structure_constant(int a, int b) const {
        auto it = n_.find({a, b});
        if (it == n_.end()) throw std::invalid_argument("structure_constant: sum is not a root");
        return it->second;
    }

    // bracket of basis elements as an integer coordinate vector
    const IVec& bracket_basis(int i, int j) const { return bracket_[i][j]; }

    IVec bracket(const IVec& x, const IVec& y) const {
        IVec out(dim_, 0);
        for (int i = 0; i < dim_; ++i) {
            if (x[i] == 0) continue;
            for (int j = 0; j < dim_; ++j) {
                if (y[j] == 0) continue;
                const IVec& b = bracket_[i][j];
                for (int t = 0; t < dim_; ++t) out[t] += x[i] * y[j] * b[t];
            }
        }
        return out;
    }

    // Ad x_alpha(t) = sum_k t^k (ad e_alpha)^k / k!, integral by the theory of
    // the Chevalley Z-form; the divided powers are computed exactly over Z.
    FqMat ad_unipotent(int root_index, Elt t) const {
        if (root_index < 0 || root_index >= nroots_) throw std::invalid_argument("ad_unipotent: bad root index");
        const std::vector<IMat>& pows = divided_powers(root_index);
        FqMat out = FqMat::identity(*F_, dim_);
        Elt tk = t;
        for (size_t k = 1; k < pows.size(); ++k) {
            const IMat& m = pows[k];
            for (int i = 0; i < dim_; ++i)
                for (int j = 0; j < dim_; ++j)
                    if (m(i, j) != 0) out(i, j) = F_->add(out(i, j), F_->mul(tk, F_->from_int(m(i, j))));
            tk = F_->mul(tk, t);
        }
        return out;
    }

    FqMat ad_unipotent_chr(const IVec& root_chr, Elt t) const {
        int idx = d_.find_root(root_chr);
        if (idx < 0) throw std::invalid_argument("ad_unipotent_chr: not a root");
        return ad_unipotent(idx, t);
    }

    // torus element lambda(u): e_beta -> u^{<beta,lambda>} e_beta, h -> h
    FqMat ad_torus(const Cocharacter& lambda, Elt u) const {
        if (static_cast<int>(lambda.size()) != d_.rank()) throw std::invalid_argument("ad_torus: cocharacter of wrong rank");
        if (u == 0) throw std::domain_error("ad_torus: scalar must be nonzero");
        FqMat out(*F_, dim_, dim_);
        for (int i = 0; i < nroots_; ++i) out(i, i) = F_->pow(u, ivec_dot(d_.root(i).chr, lambda));
        for (int i = 0; i < ns_; ++i) out(nroots_ + i, nroots_ + i) = 1;
        return out;
    }

    // root indices spanning Lie U for a Levi descriptor
    std::vector<int> nilradical_block(const LeviDescriptor& levi) const { return levi.phi_U; }

    // restriction of a dim x dim matrix to the span of the given root lines;
    // throws if the subspace is not invariant
    FqMat restrict_block(const FqMat& m, const std::vector<int>& root_indices) const {
        int b = static_cast<int>(root_indices.size());
        std::vector<int> pos(dim_, -1);
        for (int i = 0; i < b; ++i) pos[root_indices[i]] = i;
        FqMat out(*F_, b, b);
        for (int j = 0; j < b; ++j) {
            for (int i = 0; i < dim_; ++i) {
                Elt v = m(i, root_indices[j]);
                if (v == 0) continue;
                if (pos[i] < 0) throw std::logic_error("restrict_block: subspace is not invariant");
                out(pos[i], j) = v;
            }
        }
        return out;
    }

    // indices (in the root list) of the simple roots
    std::vector<int> simple_root_indices() const {
        std::vector<int> out;
        for (const IVec& a : d_.simple_roots()) out.push_back(d_.find_root(a));
        return out;
    }

  private:
    BasedRootDatum d_;
    const FiniteField* F_;
    int nroots_ = 0, ns_ = 0, dim_ = 0;
    std::vector<IVec> coroot_coords_;                  // per root: coroot in simple-coroot basis
    std::map<std::pair<int, int>, Int> n_;             // structure constants
    std::vector<std::vector<IVec>> bracket_;           // integer bracket table
    mutable std::map<int, std::vector<IMat>> divpow_;  // cache of divided powers

    void compute_coroot_coords() {
        coroot_coords_.resize(nroots_);
        IMat cor = IMat::from_rows(d_.simple_coroots(), d_.rank());
        for (int i = 0; i < nroots_; ++i) {
            IVec x;
            if (!integer_solve_left(cor, d_.root(i).cochr, x))
                throw std::logic_error("ChevalleyAlgebra: coroot outside the coroot lattice");
            coroot_coords_[i] = x;
        }
    }

    int negate(int ri) const { return d_.negative_of(ri); }

    // largest k >= 0 with beta - k*alpha a root
    int p_string(int ai, int bi) const {
        int k = 0;
        IVec cur = d_.root(bi).chr;
        const IVec& a = d_.root(ai).chr;
        while (true) {
            for (size_t t = 0; t < cur.size(); ++t) cur[t] -= a[t];
            if (d_.find_root(cur) < 0) break;
            ++k;
        }
        return k;
    }

    int sum_root(int ai, int bi) const {
        IVec s = d_.root(ai).chr;
        for (int t = 0; t < d_.rank(); ++t) s[t] += d_.root(bi).chr[t];
        return d_.find_root(s);
    }

    int diff_root(int ai, int bi) const {  // alpha - beta
        IVec s = d_.root(ai).chr;
        for (int t = 0; t < d_.rank(); ++t) s[t] -= d_.root(bi).chr[t];
        return d_.find_root(s);
    }

    detail::Frac len(int ri) const { return detail::Frac(d_.length_sq_num(ri), d_.length_sq_den()); }

    // extraspecial pair of a positive root of height >= 2: minimal alpha0 in
    // the canonical order with gamma - alpha0 a positive root
    std::pair<int, int> extraspecial(int gi) const {
        for (int a = 0; a < d_.num_positive(); ++a) {
            int b = diff_root(gi, a);
            if (b >= 0 && d_.is_positive(b)) return {a, b};
        }
        throw std::logic_error("extraspecial: no decomposition found");
    }

    Int get_n(int a, int b) {
        auto it = n_.find({a, b});
        if (it != n_.end()) return it->second;
        detail::Frac v = compute_n(a, b);
        if (!v.is_integer()) throw std::logic_error("structure constant is not an integer");
        n_[{a, b}] = v.num;
        return v.num;
    }

    detail::Frac compute_n(int a, int b) {
        bool pa = d_.is_positive(a), pb = d_.is_positive(b);
        if (pa && pb) {
            if (a > b) return -detail::Frac(get_n(b, a));
            int g = sum_root(a, b);
            if (g < 0) throw std::logic_error("compute_n: sum is not a root");
            auto [a0, b0] = extraspecial(g);
            if (a == a0 && b == b0) return detail::Frac(p_string(a, b) + 1);
            // Jacobi identity against the extraspecial decomposition:
            // N(a,b) * N(g,-a0) = -N(-a0,a) N(a-a0,b) - N(b,-a0) N(b-a0,a)
            detail::Frac rhs(0);
            int xi = diff_root(a, a0);
            if (xi >= 0) {
                // N(-a0,a) = (xi,xi)/(a,a) * N(a0,xi)
                detail::Frac n1 = len(xi) / len(a) * detail::Frac(get_n(a0, xi));
                rhs = rhs + (-(n1 * detail::Frac(get_n(xi, b))));
            }
            int tau = diff_root(b, a0);
            if (tau >= 0) {
                // N(b,-a0) = -(tau,tau)/(b,b) * N(a0,tau)
                detail::Frac n2 = -(len(tau) / len(b)) * detail::Frac(get_n(a0, tau));
                rhs = rhs + (-(n2 * detail::Frac(get_n(tau, a))));
            }
            // N(g,-a0) = -(b0,b0)/(g,g) * N(a0,b0)
            detail::Frac denom = -(len(b0) / len(g)) * detail::Frac(get_n(a0, b0));
            return rhs / denom;
        }
        if (!pa && !pb) return -detail::Frac(get_n(negate(a), negate(b)));
        if (pa && !pb) {
            int delta = sum_root(a, b);
            if (delta < 0) throw std::logic_error("compute_n: sum is not a root");
            if (d_.is_positive(delta)) {
                // triple (a, b, -delta): N(a,b) = (delta,delta)/(a,a) * N(b,-delta)
                // with N(b,-delta) = -N(-b, delta), both arguments positive
                return len(delta) / len(a) * (-detail::Frac(get_n(negate(b), delta)));
            }
            // N(a,b) = (delta,delta)/(b,b) * N(-delta,a), both positive
            return len(delta) / len(b) * detail::Frac(get_n(negate(delta), a));
        }
        // negative, positive
        return -compute_n(b, a);
    }

    void compute_structure_constants() {
        for (int a = 0; a < nroots_; ++a)
            for (int b = 0; b < nroots_; ++b) {
                if (a == b || negate(a) == b) continue;
                if (sum_root(a, b) >= 0) get_n(a, b);
            }
    }

    void build_bracket_table() {
        bracket_.assign(dim_, std::vector<IVec>(dim_, IVec(dim_, 0)));
        for (int a = 0; a < nroots_; ++a) {
            for (int b = 0; b < nroots_; ++b) {
                if (a == b) continue;
                if (negate(a) == b) {
                    // [e_a, e_{-a}] = h_{a}: coroot of a in the Cartan basis
                    for (int i = 0; i < ns_; ++i) bracket_[a][b][nroots_ + i] = coroot_coords_[a][i];
                    continue;
                }
                int s = sum_root(a, b);
                if (s >= 0) bracket_[a][b][s] = n_.at({a, b});
            }
        }
        for (int i = 0; i < ns_; ++i) {
            for (int b = 0; b < nroots_; ++b) {
                Int pairing = ivec_dot(d_.root(b).chr, d_.simple_coroots()[i]);
                bracket_[nroots_ + i][b][b] = pairing;
                bracket_[b][nroots_ + i][b] = -pairing;
            }
        }
    }

    void verify_table() {
        // |N| = p_string + 1
        for (const auto& [key, val] : n_) {
            int expect = p_string(key.first, key.second) + 1;
            if (std::llabs(val) != expect)
                throw std::logic_error("ChevalleyAlgebra: structure constant fails the root-string bound");
        }
        // antisymmetry
        for (int i = 0; i < dim_; ++i)
            for (int j = i; j < dim_; ++j) {
                for (int t = 0; t < dim_; ++t)
                    if (bracket_[i][j][t] != -bracket_[j][i][t])
                        throw std::logic_error("ChevalleyAlgebra: bracket is not antisymmetric");
            }
        // Jacobi on all basis triples
        for (int i = 0; i < dim_; ++i)
            for (int j = i + 1; j < dim_; ++j) {
                const IVec& bij = bracket_[i][j];
                for (int k = j + 1; k < dim_; ++k) {
                    IVec acc(dim_, 0);
                    accumulate_bracket(acc, bij, k, +1);
                    accumulate_bracket(acc, bracket_[j][k], i, +1);
                    accumulate_bracket(acc, bracket_[k][i], j, +1);
                    for (Int v : acc)
                        if (v != 0) throw std::logic_error("ChevalleyAlgebra: Jacobi identity fails");
                }
            }
    }

    // acc += [x, b_k] * sign, with x given by coordinates
    void accumulate_bracket(IVec& acc, const IVec& x, int k, int sign) const {
        for (int i = 0; i < dim_; ++i) {
            if (x[i] == 0) continue;
            const IVec& b = bracket_[i][k];
            for (int t = 0; t < dim_; ++t) acc[t] += sign * x[i] * b[t];
        }
    }

    const std::vector<IMat>& divided_powers(int root_index) const {
        auto it = divpow_.find(root_index);
        if (it != divpow_.end()) return it->second;
        IMat ad(dim_, dim_);
        for (int j = 0; j < dim_; ++j) {
            const IVec& col = bracket_[root_index][j];
            for (int i = 0; i < dim_; ++i) ad(i, j) = col[i];
        }
        std::vector<IMat> pows;
        pows.push_back(IMat::identity(dim_));
        IMat cur = ad;
        Int fact = 1;
        int k = 1;
        while (true) {
            bool zero = std::all_of(cur.data.begin(), cur.data.end(), [](Int v) { return v == 0; });
            if (zero) break;
            IMat divided(dim_, dim_);
            for (int i = 0; i < dim_; ++i)
                for (int j = 0; j < dim_; ++j) {
                    if (cur(i, j) % fact != 0) throw std::logic_error("ad_unipotent: divided power is not integral");
                    divided(i, j) = cur(i, j) / fact;
                }
            pows.push_back(divided);
            if (k > 4) throw std::logic_error("ad_unipotent: nilpotency degree too large");
            ++k;
            fact *= k;
            cur = imat_mul(cur, ad);
        }
        return divpow_.emplace(root_index, std::move(pows)).first->second;
    }
};

struct InvariantSpace {
    int dim = 0;
    FqMat basis;  // echelon rows
};

// Common fixed space of the given invertible matrices; with dual=true the
// fixed space of the contragredient (inverse-transpose) action.
inline InvariantSpace invariant_dim(const FiniteField& F, const std::vector<FqMat>& mats, bool dual, int space_dim) {
    for (const FqMat& m : mats) {
        if (m.rows != m.cols || m.rows != space_dim) throw std::invalid_argument("invariant_dim: dimension mismatch");
        if (!fq_invertible(m)) throw std::invalid_argument("invariant_dim: matrix is not invertible");
    }
    if (mats.empty()) {
        InvariantSpace out;
        out.dim = space_dim;
        out.basis = FqMat::identity(F, space_dim);
        return out;
    }
    FqMat stacked(F, space_dim * static_cast<int>(mats.size()), space_dim);
    int row = 0;
    for (const FqMat& m : mats) {
        FqMat g = dual ? fq_transpose(fq_inverse(m)) : m;
        for (int i = 0; i < space_dim; ++i, ++row)
            for (int j = 0; j < space_dim; ++j) stacked(row, j) = F.sub(g(i, j), i == j ? F.one() : F.zero());
    }
    FqMat ker = fq_kernel(stacked);
    fq_echelon(ker);
    InvariantSpace out;
    out.dim = ker.rows;
    out.basis = ker;
    return out;
}

// Smallest field F_{p^k} with p^k >= 5: enough evaluation points to certify
// one-parameter-subgroup invariance (Ad x_alpha(t) entries have degree <= 3).
inline FiniteField sample_field(Int p) {
    int k = 1;
    Int q = p;
    while (q < 5) {
        q *= p;
        ++k;
    }
    return FiniteField::with_default_poly(static_cast<int>(p), k);
}

// Generators of G'_sc(F) acting on the algebra: all simple +-root unipotents
// with t over the sample field.
inline std::vector<FqMat> simple_unipotent_generators(const ChevalleyAlgebra& a) {
    std::vector<FqMat> gens;
    const FiniteField& F = a.field();
    for (int si : a.simple_root_indices()) {
        for (int idx : {si, a.datum().negative_of(si)}) {
            for (FiniteField::Elt t = 1; t < F.q(); ++t) gens.push_back(a.ad_unipotent(idx, t));
        }
    }
    return gens;
}

// dim of G'-invariants in (Lie G'_sc)^* (dual=true) or Lie G'_sc (dual=false)
// over F_p, certified at finitely many group elements.
inline int sc_invariants(const BasedRootDatum& d, Int p, bool dual) {
    FiniteField F = sample_field(p);
    ChevalleyAlgebra a(d, F);
    std::vector<FqMat> gens = simple_unipotent_generators(a);
    return invariant_dim(F, gens, dual, a.dim()).dim;
}

inline int coadjoint_invariants_sc(const BasedRootDatum& d, Int p) { return sc_invariants(d, p, true); }

// dim of L^0-invariants in (Lie U)^*: torus generators at a multiplicative
// generator of the sample field together with the Levi's simple +-root
// unipotents, restricted to the span of Phi_U.
inline int nilradical_dual_invariants(const GenReductiveDatum& g, const LeviDescriptor& levi, Int p) {
    if (levi.dim_U == 0) return 0;
    FiniteField F = sample_field(p);
    ChevalleyAlgebra a(g.base(), F);
    std::vector<int> block = a.nilradical_block(levi);
    std::vector<FqMat> gens;
    FiniteField::Elt gen = F.multiplicative_generator();
    for (int j = 0; j < g.base().rank(); ++j) {
        Cocharacter lambda(g.base().rank(), 0);
        lambda[j] = 1;
        gens.push_back(a.restrict_block(a.ad_torus(lambda, gen), block));
    }
    // simple roots of Phi_L: positive members not sums of two positive members
    const BasedRootDatum& d = g.base();
    std::set<IVec> posL;
    for (int ri : levi.phi_L)
        if (d.is_positive(ri)) posL.insert(d.root(ri).chr);
    for (int ri : levi.phi_L) {
        if (!d.is_positive(ri)) continue;
        const IVec& al = d.root(ri).chr;
        bool decomposable = false;
        for (const IVec& b : posL) {
            if (b == al) continue;
            IVec c(al.size());
            for (size_t t = 0; t < al.size(); ++t) c[t] = al[t] - b[t];
            if (posL.count(c)) { decomposable = true; break; }
        }
        if (decomposable) continue;
        for (int idx : {ri, d.negative_of(ri)})
            for (FiniteField::Elt t = 1; t < F.q(); ++t) gens.push_back(a.restrict_block(a.ad_unipotent(idx, t), block));
    }
    return invariant_dim(F, gens, true, static_cast<int>(block.size())).dim;
}

}  // namespace defspace
