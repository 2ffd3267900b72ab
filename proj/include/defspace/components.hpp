#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "defspace/finite_group.hpp"
#include "defspace/galois.hpp"
#include "defspace/int_linalg.hpp"
#include "defspace/levi.hpp"
#include "defspace/root_datum.hpp"

namespace defspace {

// Rank-m free module with a component-group action; optionally a stable
// splitting into two blocks of basis coordinates.
struct LatticeWithAction {
    int rank = 0;
    FiniteGroup delta;
    std::vector<IMat> action;
    std::optional<int> split_at;  // M1 = first coordinates, M2 = the rest

    LatticeWithAction() : delta(FiniteGroup::trivial()), action{IMat::identity(0)} {}
    LatticeWithAction(int r, FiniteGroup d, std::vector<IMat> a, std::optional<int> split = std::nullopt)
        : rank(r), delta(std::move(d)), action(std::move(a)), split_at(split) {
        validate();
    }

    static LatticeWithAction trivial(int r) {
        std::vector<IMat> a{IMat::identity(r)};
        return LatticeWithAction(r, FiniteGroup::trivial(), std::move(a));
    }

    void validate() const {
        if (static_cast<int>(action.size()) != delta.order())
            throw std::invalid_argument("lattice action: one matrix per group element");
        for (const IMat& m : action) {
            if (m.rows != rank || m.cols != rank) throw std::invalid_argument("lattice action: wrong shape");
            if (rank > 0 && !is_unimodular(m)) throw std::invalid_argument("lattice action: not an automorphism");
        }
        for (int g = 0; g < delta.order(); ++g)
            for (int h = 0; h < delta.order(); ++h)
                if (!(imat_mul(action[g], action[h]) == action[delta.mul(g, h)]))
                    throw std::invalid_argument("lattice action: not a homomorphism");
        if (split_at) {
            int s = *split_at;
            if (s < 0 || s > rank) throw std::invalid_argument("lattice splitting: bad index");
            for (const IMat& m : action)
                for (int i = 0; i < rank; ++i)
                    for (int j = 0; j < rank; ++j)
                        if (m(i, j) != 0 && (i < s) != (j < s))
                            throw std::invalid_argument("lattice splitting: blocks are not stable");
        }
    }

    LatticeWithAction block(bool first) const {
        if (!split_at) throw std::invalid_argument("lattice: no splitting recorded");
        int s = *split_at;
        int r = first ? s : rank - s;
        std::vector<IMat> a;
        for (const IMat& m : action) {
            IMat b(r, r);
            for (int i = 0; i < r; ++i)
                for (int j = 0; j < r; ++j) b(i, j) = first ? m(i, j) : m(s + i, s + j);
            a.push_back(b);
        }
        return LatticeWithAction(r, delta, std::move(a));
    }
};

// Base local field together with Delta = Gal(E/F) and the cyclotomic action
// chi_E : Delta -> (Z/p^{m_E})^* describing mu_{p^infty}(E) as a Galois module.
struct GaloisExtDesc {
    LocalFieldDesc base;
    FiniteGroup delta;
    Int m_E = 0;
    std::vector<Int> chi_E;  // one unit per group element

    GaloisExtDesc() : delta(FiniteGroup::trivial()), chi_E{1} {}
    GaloisExtDesc(LocalFieldDesc b, FiniteGroup d, Int mE, std::vector<Int> chi)
        : base(std::move(b)), delta(std::move(d)), m_E(mE), chi_E(std::move(chi)) {
        validate();
    }

    Int p_pow_mE() const {
        Int out = 1;
        for (Int i = 0; i < m_E; ++i) out *= base.p;
        return out;
    }

    void validate() const {
        base.validate();
        if (m_E < base.m) throw std::invalid_argument("extension: m_E < m_F is impossible");
        if (static_cast<int>(chi_E.size()) != delta.order())
            throw std::invalid_argument("extension: chi_E needs one value per group element");
        Int mod = p_pow_mE();
        for (Int v : chi_E) {
            if (v < 0 || v >= mod * (mod == 1 ? 2 : 1))
                throw std::invalid_argument("extension: chi_E value out of range");
            if (mod > 1 && int_gcd(v, mod) != 1) throw std::invalid_argument("extension: chi_E value is not a unit");
        }
        if (chi_E[delta.identity] % std::max<Int>(mod, 1) != 1 % std::max<Int>(mod, 1))
            throw std::invalid_argument("extension: chi_E(1) != 1");
        for (int g = 0; g < delta.order(); ++g)
            for (int h = 0; h < delta.order(); ++h)
                if (mod > 1 && (chi_E[g] * chi_E[h]) % mod != chi_E[delta.mul(g, h)] % mod)
                    throw std::invalid_argument("extension: chi_E is not a homomorphism");
    }

    // E = F, Delta trivial
    static GaloisExtDesc trivial(const LocalFieldDesc& f) {
        return GaloisExtDesc(f, FiniteGroup::trivial(), f.m, {1});
    }
};

// full-rank row basis of the integer span of the given rows
inline IMat row_lattice_basis(const std::vector<IVec>& rows, int n) {
    IMat m = IMat::from_rows(rows, n);
    SmithResult s = smith_normal_form(m);
    // row lattice basis: d_i * row_i(V^{-1}) for the nonzero d_i
    IMat out(s.rank, n);
    for (int i = 0; i < s.rank; ++i)
        for (int j = 0; j < n; ++j) out(i, j) = s.d(i, i) * s.vinv(i, j);
    return out;
}

// invariant factors of the quotient by the relation rows, 1s dropped
inline IVec invariant_factors_all(const IMat& rel) {
    SmithResult s = smith_normal_form(rel);
    IVec out;
    for (int i = 0; i < std::min(rel.rows, rel.cols); ++i) {
        Int d = std::llabs(s.d(i, i));
        if (d > 1) out.push_back(d);
    }
    std::sort(out.begin(), out.end());
    return out;
}

// Invariant factors of mu = (mu_{p^{m_E}} tensor M2)^Delta, the kernel over
// Z/p^{m_E} of the stacked maps (chi_E(d) * A_d - 1).
inline IVec mu_group(const GaloisExtDesc& ext, const LatticeWithAction& m2) {
    if (ext.delta.order() != m2.delta.order())
        throw std::invalid_argument("mu_group: component groups of extension and lattice differ");
    if (ext.m_E == 0 || m2.rank == 0) return {};
    Int mod = ext.p_pow_mE();
    int n = m2.rank;
    int k = ext.delta.order();
    // kernel lattice K = {x in Z^n : S x = 0 mod p^{m_E}} via the integer
    // kernel of [S | mod * I] projected to the x block
    IMat s(k * n, n);
    for (int g = 0; g < k; ++g)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                s(g * n + i, j) = ext.chi_E[g] * m2.action[g](i, j) - (i == j ? 1 : 0);
    IMat aug(k * n, n + k * n);
    for (int i = 0; i < k * n; ++i) {
        for (int j = 0; j < n; ++j) aug(i, j) = s(i, j);
        aug(i, n + i) = mod;
    }
    IMat ker = integer_kernel(aug);
    std::vector<IVec> gen_rows;
    for (int r = 0; r < ker.rows; ++r) {
        IVec x(n);
        for (int j = 0; j < n; ++j) x[j] = ker(r, j);
        gen_rows.push_back(std::move(x));
    }
    for (int i = 0; i < n; ++i) {
        IVec x(n, 0);
        x[i] = mod;
        gen_rows.push_back(std::move(x));
    }
    IMat klat = row_lattice_basis(gen_rows, n);
    // mu = K / mod*Z^n: express mod*e_i in the K basis and take Smith form
    IMat rel(n, n);
    for (int i = 0; i < n; ++i) {
        IVec target(n, 0);
        target[i] = mod;
        IVec x;
        if (!integer_solve_left(klat, target, x)) throw std::logic_error("mu_group: p^m lattice not inside kernel lattice");
        for (int j = 0; j < n; ++j) rel(i, j) = x[j];
    }
    return invariant_factors_all(rel);
}

inline Int abelian_order(const IVec& factors) {
    Int out = 1;
    for (Int f : factors) out *= f;
    return out;
}

// Characters of mu as exponent tuples (a_1,...,a_r) with 0 <= a_i < d_i.
inline std::vector<IVec> characters(const IVec& factors) {
    std::vector<IVec> out{IVec(factors.size(), 0)};
    for (size_t i = 0; i < factors.size(); ++i) {
        std::vector<IVec> next;
        for (const IVec& t : out)
            for (Int a = 0; a < factors[i]; ++a) {
                IVec s = t;
                s[i] = a;
                next.push_back(std::move(s));
            }
        out = std::move(next);
    }
    return out;
}

struct ComponentCount {
    IVec mu;
    Int count = 1;
    bool conditional = false;  // set when pi_1(G') is not etale
};

inline ComponentCount component_count(const GaloisExtDesc& ext, const LatticeWithAction& m2, bool pi1_etale) {
    ComponentCount out;
    out.mu = mu_group(ext, m2);
    out.count = abelian_order(out.mu);
    out.conditional = !pi1_etale;
    return out;
}

// Shape (|mu|, r, s) of O[mu][[x_1..x_r]][t_1^{±1}..t_s^{±1}]:
// r = rank M2 * [F:Q_p] + invariant rank, s = rank M2 - invariant rank.
struct AgenShape {
    Int mu_order = 1;
    int r = 0;
    int s = 0;
};

inline AgenShape agen_shape(const GaloisExtDesc& ext, const LatticeWithAction& m2, Int d_F) {
    AgenShape out;
    out.mu_order = abelian_order(mu_group(ext, m2));
    int inv_rank = 0;
    if (m2.rank > 0) {
        std::vector<IVec> rows;
        for (const IMat& m : m2.action) {
            IMat mi = m;
            for (int i = 0; i < m2.rank; ++i) mi(i, i) -= 1;
            for (int r = 0; r < m2.rank; ++r) rows.push_back(mi.row(r));
        }
        inv_rank = static_cast<int>(rational_kernel(IMat::from_rows(rows, m2.rank)).size());
    }
    out.r = m2.rank * static_cast<int>(d_F) + inv_rank;
    out.s = m2.rank - inv_rank;
    return out;
}

// Global dimension formulas for the deformation spaces attached to a datum.
struct DimFormulas {
    int rel_dim_Rsquare = 0;        // dim G ([F:Q_p] + 1)
    int dim_Xgen = 0;               // rel_dim + 1
    int dim_Xgen_special_fibre = 0; // rel_dim
    int dim_Xps = 0;                // dim G [F:Q_p] + dim Z + 1
    int fibre_offset = 0;           // dim G - dim Z
};

inline DimFormulas dim_formulas(const GenReductiveDatum& g, Int d_F) {
    DimFormulas out;
    int dg = g.dim();
    int dz = dim_Z(g);
    out.rel_dim_Rsquare = dg * static_cast<int>(d_F + 1);
    out.dim_Xgen = out.rel_dim_Rsquare + 1;
    out.dim_Xgen_special_fibre = out.rel_dim_Rsquare;
    out.dim_Xps = dg * static_cast<int>(d_F) + dz + 1;
    out.fibre_offset = dg - dz;
    return out;
}

// Codimension of the special locus: 1 + [F:Q_p] in the presence of a
// compatible codimension-2 Levi, 2 [F:Q_p] otherwise.
inline int special_codim_bound(const GenReductiveDatum&, Int d_F, bool compatible_codim2) {
    return compatible_codim2 ? static_cast<int>(1 + d_F) : static_cast<int>(2 * d_F);
}

// Factoriality of the component rings: pi_1(G') etale and either
// [F:Q_p] >= 3, or [F:Q_p] = 2 with no compatible codimension-2 Levi.
inline bool factoriality_check(const GenReductiveDatum& g, Int p, Int d_F, bool compatible_codim2) {
    if (!is_pi1_etale(derived_datum(g.base()), p)) return false;
    return d_F >= 3 || (d_F == 2 && !compatible_codim2);
}

// Dual datum: swap roots and coroots; the component group acts through the
// inverse transpose. This is the L-group recipe at lattice level.
inline GenReductiveDatum lgroup_datum(const GenReductiveDatum& h) {
    const BasedRootDatum& d = h.base();
    BasedRootDatum dual(d.rank(), d.simple_coroots(), d.simple_roots(), d.series() + "^");
    std::vector<IMat> action;
    for (const IMat& m : h.action()) action.push_back(imat_transpose(unimodular_inverse(m)));
    return GenReductiveDatum(std::move(dual), h.component_group(), std::move(action));
}

// Component labelling for the C-group recipe: characters of
// Z(H)^0(F)_{p^infty} = (mu_{p^infty}(E) tensor M)^{Gal(E/F)} with
// M = X^*(H^dual / (H^dual)') computed from the dual datum.
struct CGroupComponents {
    IVec mu;
    Int count = 1;
};

inline CGroupComponents cgroup_component_group(const GenReductiveDatum& h, const GaloisExtDesc& ext) {
    GenReductiveDatum dual = lgroup_datum(h);
    TorusQuotientLattice m = torus_quotient_lattice(dual);
    LatticeWithAction lat(m.basis.rows, ext.delta, m.action);
    CGroupComponents out;
    out.mu = mu_group(ext, lat);
    out.count = abelian_order(out.mu);
    return out;
}

}  // namespace defspace
