#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "defspace/finite_field.hpp"
#include "defspace/levi.hpp"
#include "defspace/root_datum.hpp"

namespace defspace {

// Invariants of a finite extension F of Q_p together with the mod-p
// cyclotomic character on the tame generators: sigma (Frobenius lift, chosen
// to act trivially on zeta_p) and tau (tame inertia generator).
struct LocalFieldDesc {
    Int p = 0;       // residue characteristic
    Int f = 1;       // residue degree
    Int e = 1;       // ramification index
    Int m = 0;       // mu_{p^infty}(F) = mu_{p^m}
    Int c_sigma = 1; // chi_bar(sigma) in F_p^*
    Int c_tau = 1;   // chi_bar(tau) in F_p^*

    Int q() const { Int out = 1; for (Int i = 0; i < f; ++i) out *= p; return out; }
    Int degree() const { return e * f; }  // [F : Q_p]

    void validate() const {
        if (p < 2) throw std::invalid_argument("LocalFieldDesc: bad characteristic");
        for (Int d = 2; d * d <= p; ++d)
            if (p % d == 0) throw std::invalid_argument("LocalFieldDesc: p is not prime");
        if (f < 1 || e < 1 || m < 0) throw std::invalid_argument("LocalFieldDesc: bad invariants");
        if (c_sigma <= 0 || c_sigma >= p || c_tau <= 0 || c_tau >= p)
            throw std::invalid_argument("LocalFieldDesc: cyclotomic values must lie in F_p^*");
        if (p == 2 && m < 1) throw std::invalid_argument("LocalFieldDesc: -1 is a 2-power root of unity, m >= 1");
        // c_tau^{q-1} = 1 is forced by the tame relation
        Int pw = 1;
        Int ex = q() - 1;
        for (Int i = 0; i < ex; ++i) pw = pw * c_tau % p;
        if (pw != 1) throw std::invalid_argument("LocalFieldDesc: c_tau^{q-1} != 1");
        bool trivial = (c_sigma == 1 && c_tau == 1);
        if ((m >= 1) != trivial)
            throw std::invalid_argument("LocalFieldDesc: m >= 1 iff mod-p cyclotomic character is trivial");
    }

    static Int primitive_root(Int p) {
        FiniteField f(static_cast<int>(p), 1, {0, 1});
        return f.multiplicative_generator();
    }

    static LocalFieldDesc Qp(Int p) {
        LocalFieldDesc out;
        out.p = p;
        out.m = (p == 2) ? 1 : 0;
        out.c_tau = (p == 2) ? 1 : primitive_root(p);
        out.validate();
        return out;
    }

    static LocalFieldDesc unramified(Int p, Int f) {
        LocalFieldDesc out = Qp(p);
        out.f = f;
        out.validate();
        return out;
    }

    // Q_p(zeta_{p^k})
    static LocalFieldDesc cyclotomic(Int p, Int k) {
        if (k < 1) throw std::invalid_argument("cyclotomic: k >= 1 required");
        LocalFieldDesc out;
        out.p = p;
        out.f = 1;
        out.e = p - 1;  // (p-1) p^{k-1}
        for (Int i = 1; i < k; ++i) out.e *= p;
        out.m = k;
        out.c_sigma = 1;
        out.c_tau = 1;  // ramification kills the tame cyclotomic character
        out.validate();
        return out;
    }
};

// Desk-scale stand-in for a finite-image representation of Gamma_F: matrices
// for the tame generators subject to sigma tau sigma^{-1} = tau^q.
struct TameRep {
    const FiniteField* F = nullptr;
    int dim = 0;
    FqMat m_sigma;
    FqMat m_tau;

    TameRep() = default;
    TameRep(const FiniteField& field, FqMat s, FqMat t)
        : F(&field), dim(s.rows), m_sigma(std::move(s)), m_tau(std::move(t)) {}

    static TameRep trivial(const FiniteField& field, int dim) {
        return TameRep(field, FqMat::identity(field, dim), FqMat::identity(field, dim));
    }
};

inline void validate_tame_rep(const LocalFieldDesc& fld, const TameRep& rep) {
    fld.validate();
    if (!rep.F) throw std::invalid_argument("tame rep: missing field");
    if (rep.F->characteristic() != fld.p)
        throw std::invalid_argument("tame rep: coefficient characteristic differs from residue characteristic");
    if (rep.m_sigma.rows != rep.dim || rep.m_sigma.cols != rep.dim || rep.m_tau.rows != rep.dim ||
        rep.m_tau.cols != rep.dim)
        throw std::invalid_argument("tame rep: matrix shape mismatch");
    if (rep.dim == 0) return;
    if (!fq_invertible(rep.m_sigma)) throw std::invalid_argument("tame rep: M_sigma is singular");
    if (!fq_invertible(rep.m_tau)) throw std::invalid_argument("tame rep: M_tau is singular");
    FqMat lhs = fq_mul(fq_mul(rep.m_sigma, rep.m_tau), fq_inverse(rep.m_sigma));
    FqMat rhs = fq_pow(rep.m_tau, fld.q());
    for (int i = 0; i < rep.dim; ++i)
        for (int j = 0; j < rep.dim; ++j)
            if (lhs(i, j) != rhs(i, j))
                throw std::invalid_argument("tame rep: relation sigma tau sigma^-1 = tau^q fails at entry (" +
                                            std::to_string(i) + "," + std::to_string(j) + ")");
}

namespace detail {

inline int fixed_space_dim(const FiniteField& F, const std::vector<FqMat>& gens, int dim) {
    if (dim == 0) return 0;
    FqMat stacked(F, dim * static_cast<int>(gens.size()), dim);
    int row = 0;
    for (const FqMat& g : gens)
        for (int i = 0; i < dim; ++i, ++row)
            for (int j = 0; j < dim; ++j) stacked(row, j) = F.sub(g(i, j), i == j ? F.one() : F.zero());
    return fq_kernel(stacked).rows;
}

}  // namespace detail

// h^0: dimension of the common fixed space of the image.
inline int h0(const TameRep& rep) {
    if (rep.dim == 0) return 0;
    return detail::fixed_space_dim(*rep.F, {rep.m_sigma, rep.m_tau}, rep.dim);
}

// The cyclotomic twist V(1): gamma acts by chi_bar(gamma) * rho(gamma).
inline TameRep twist_cyclotomic(const LocalFieldDesc& fld, const TameRep& rep) {
    return TameRep(*rep.F, fq_scale(rep.m_sigma, rep.F->from_int(fld.c_sigma)),
                   fq_scale(rep.m_tau, rep.F->from_int(fld.c_tau)));
}

// The twisted dual V^*(1): gamma acts by chi_bar(gamma) * (rho(gamma)^{-1})^T.
inline TameRep twisted_dual(const LocalFieldDesc& fld, const TameRep& rep) {
    if (rep.dim == 0) return rep;
    return TameRep(*rep.F, fq_scale(fq_transpose(fq_inverse(rep.m_sigma)), rep.F->from_int(fld.c_sigma)),
                   fq_scale(fq_transpose(fq_inverse(rep.m_tau)), rep.F->from_int(fld.c_tau)));
}

// h^2(V) = h^0(V^*(1)) by local Tate duality.
inline int h2_via_duality(const LocalFieldDesc& fld, const TameRep& rep) {
    if (rep.dim == 0) return 0;
    return h0(twisted_dual(fld, rep));
}

// h^1 via the local Euler-Poincare characteristic:
// h^1 = h^0 + h^2 + dim V * [F:Q_p].
inline int h1_via_EP(const LocalFieldDesc& fld, const TameRep& rep) {
    return h0(rep) + h2_via_duality(fld, rep) + rep.dim * static_cast<int>(fld.degree());
}

// dim Z^1(Gamma_F, V) = dim V ([F:Q_p]+1) + h^0(V^*(1)).
inline int z1_dim(const LocalFieldDesc& fld, const TameRep& rep) {
    return rep.dim * static_cast<int>(fld.degree() + 1) + h2_via_duality(fld, rep);
}

// (r, s) with R^square = Lambda[[x_1..x_r]]/(f_1..f_s):
// r = dim Z^1(ad), s = h^2(ad); r - s = dim G ([F:Q_p]+1).
struct PresentationNumbers {
    int r = 0;
    int s = 0;
};

inline PresentationNumbers presentation_numbers(const GenReductiveDatum& g, const LocalFieldDesc& fld,
                                                const TameRep& ad_rep) {
    if (ad_rep.dim != g.dim())
        throw std::invalid_argument("presentation_numbers: ad module dimension must equal dim G");
    validate_tame_rep(fld, ad_rep);
    PresentationNumbers out;
    out.r = z1_dim(fld, ad_rep);
    out.s = h2_via_duality(fld, ad_rep);
    return out;
}

// (r, t) for a presentation of R^square_G over R^square_H with the kernel
// module ad^{0,phi}; r - t = (dim G - dim H)([F:Q_p]+1).
inline PresentationNumbers relative_presentation(const GenReductiveDatum& g, const GenReductiveDatum& h,
                                                 const LocalFieldDesc& fld, const TameRep& ad0_rep) {
    if (ad0_rep.dim != g.dim() - h.dim())
        throw std::invalid_argument("relative_presentation: module dimension must equal dim G - dim H");
    if (ad0_rep.dim > 0) validate_tame_rep(fld, ad0_rep);
    PresentationNumbers out;
    out.r = z1_dim(fld, ad0_rep);
    out.s = h2_via_duality(fld, ad0_rep);
    return out;
}

// W-special level: h^0(W(1)). The point is W-special iff the result is >= 1,
// and special at level j iff it is >= j+1.
inline int special_level(const LocalFieldDesc& fld, const TameRep& w_rep) {
    if (w_rep.dim == 0) return 0;
    return h0(twist_cyclotomic(fld, w_rep));
}

// Defect: max over the supplied parabolic modules of h^0((Lie U)^*(1)).
// Each module must have dimension dim U = (dim G - dim L)/2; the bound
// delta <= (dim G - dim L)/2 is asserted.
inline int defect(const LocalFieldDesc& fld, const GenReductiveDatum& g, const LeviDescriptor& levi,
                  const std::vector<TameRep>& lieU_reps) {
    int delta = 0;
    for (const TameRep& rep : lieU_reps) {
        if (rep.dim != levi.dim_U)
            throw std::invalid_argument("defect: module dimension must equal dim U of the Levi");
        validate_tame_rep(fld, rep);
        delta = std::max(delta, h2_via_duality(fld, rep));
    }
    int bound = (g.dim() - levi.dim_L) / 2;
    if (delta > bound) throw std::logic_error("defect: computed value exceeds (dim G - dim L)/2");
    return delta;
}

// dim of the Levi's centre: component-group invariants of X^*/(Z Phi_L),
// computed with the full action when Phi_L is stable, trivially otherwise.
inline int dim_center_levi(const GenReductiveDatum& g, const LeviDescriptor& levi) {
    std::vector<IVec> rv;
    for (int ri : levi.phi_L) rv.push_back(g.base().root(ri).chr);
    if (levi.delta_stable) return dim_center_of(g.base().rank(), rv, g.action());
    return dim_center_of(g.base().rank(), rv, {IMat::identity(g.base().rank())});
}

// dim X^gen_{G,y} <= dim G - dim Z(L) + (dim G - dim L)/2 * [F:Q_p] + delta.
inline int fiber_dim_bound(const GenReductiveDatum& g, const LeviDescriptor& levi, const LocalFieldDesc& fld,
                           int delta) {
    if (delta < 0) throw std::invalid_argument("fiber_dim_bound: delta must be nonnegative");
    int dg = g.dim();
    return dg - dim_center_levi(g, levi) + (dg - levi.dim_L) / 2 * static_cast<int>(fld.degree()) + delta;
}

// dim G (1 + [F:Q_p]) - bound >= [F:Q_p] dim L + dim Z(L)?
inline bool bound_Y_check(const GenReductiveDatum& g, const LeviDescriptor& levi, const LocalFieldDesc& fld,
                          int delta) {
    int dg = g.dim();
    int lhs = dg * static_cast<int>(1 + fld.degree()) - fiber_dim_bound(g, levi, fld, delta);
    int rhs = static_cast<int>(fld.degree()) * levi.dim_L + dim_center_levi(g, levi);
    return lhs >= rhs;
}

}  // namespace defspace
