#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "defspace/root_datum.hpp"

namespace defspace {

using Cocharacter = IVec;  // X_*-coordinates

// Root partition attached to a cocharacter: Phi_L pairs to zero, Phi_U pairs
// positively; the rest is -Phi_U.
struct LeviDescriptor {
    Cocharacter lambda;
    std::vector<int> phi_L;  // root indices
    std::vector<int> phi_U;  // root indices (positive pairing)
    int dim_L = 0;
    int dim_U = 0;
    bool delta_stable = false;
    std::vector<int> subset;  // simple-root indices, for standard Levis
};

inline LeviDescriptor parabolic_partition(const GenReductiveDatum& g, const Cocharacter& lambda) {
    const BasedRootDatum& d = g.base();
    if (static_cast<int>(lambda.size()) != d.rank())
        throw std::invalid_argument("parabolic_partition: cocharacter of wrong rank");
    LeviDescriptor out;
    out.lambda = lambda;
    for (int i = 0; i < d.num_roots(); ++i) {
        Int pr = ivec_dot(d.root(i).chr, lambda);
        if (pr == 0)
            out.phi_L.push_back(i);
        else if (pr > 0)
            out.phi_U.push_back(i);
    }
    out.dim_U = static_cast<int>(out.phi_U.size());
    out.dim_L = d.rank() + static_cast<int>(out.phi_L.size());
    // stability of Phi_L under the component group
    out.delta_stable = true;
    std::set<IVec> lset;
    for (int i : out.phi_L) lset.insert(d.root(i).chr);
    for (const IMat& m : g.action()) {
        for (int i : out.phi_L)
            if (!lset.count(imat_apply(m, d.root(i).chr))) {
                out.delta_stable = false;
                break;
            }
        if (!out.delta_stable) break;
    }
    return out;
}

// Integer cocharacter pairing to 0 exactly on the simple roots in `subset`
// and positively on the others.
inline Cocharacter standard_levi_cocharacter(const BasedRootDatum& d, const std::vector<int>& subset) {
    int ns = d.num_simple();
    std::set<int> s(subset.begin(), subset.end());
    IMat rmat = IMat::from_rows(d.simple_roots(), d.rank());
    IVec target(ns);
    for (int i = 0; i < ns; ++i) target[i] = s.count(i) ? 0 : 1;
    IVec x;
    Int den;
    if (!rational_solve(rmat, target, x, den))
        throw std::logic_error("standard_levi_cocharacter: pairing system inconsistent");
    return x;  // lambda with <alpha_i, lambda> = den * target_i, den > 0
}

inline std::vector<LeviDescriptor> enumerate_standard_levis(const GenReductiveDatum& g) {
    const BasedRootDatum& d = g.base();
    int ns = d.num_simple();
    std::vector<LeviDescriptor> out;
    for (unsigned mask = 0; mask < (1u << ns); ++mask) {
        std::vector<int> subset;
        for (int i = 0; i < ns; ++i)
            if (mask & (1u << i)) subset.push_back(i);
        LeviDescriptor ld = parabolic_partition(g, standard_levi_cocharacter(d, subset));
        ld.subset = subset;
        out.push_back(std::move(ld));
    }
    return out;
}

// A Levi of codimension 2 whose Phi_L is stable under the component group,
// if one exists among the standard Levis.
inline std::optional<LeviDescriptor> has_codim2_levi(const GenReductiveDatum& g) {
    for (const LeviDescriptor& ld : enumerate_standard_levis(g))
        if (g.dim() - ld.dim_L == 2 && ld.delta_stable) return ld;
    return std::nullopt;
}

// Splitting of the adjoint quotient along a codimension-2 Levi:
// Phi = Phi_L ⊔ {±β} with no mixed roots, so the adjoint datum factors as
// (adjoint datum of Phi_L) x (adjoint A1 spanned by β).
struct A1FactorSplit {
    BasedRootDatum g1_adjoint;
    IVec beta;        // X^*-coordinates in the input datum
    IVec beta_coroot; // X_*-coordinates in the input datum
};

inline A1FactorSplit a1_factor_split(const GenReductiveDatum& g, const LeviDescriptor& levi) {
    const BasedRootDatum& d = g.base();
    if (g.dim() - levi.dim_L != 2 || levi.dim_U != 1)
        throw std::invalid_argument("a1_factor_split: Levi is not of codimension 2");
    int beta_idx = levi.phi_U[0];
    const Root& beta = d.root(beta_idx);

    // exhaustive mixed-root check: r*alpha + s*beta is never a root for
    // alpha in Phi_L and integers r > 0, s != 0
    for (int ai : levi.phi_L) {
        const Root& alpha = d.root(ai);
        for (int gi = 0; gi < d.num_roots(); ++gi) {
            const Root& gamma = d.root(gi);
            // solve r*alpha + s*beta = gamma over Q (alpha, beta independent)
            IMat sys(d.rank(), 2);
            for (int t = 0; t < d.rank(); ++t) {
                sys(t, 0) = alpha.chr[t];
                sys(t, 1) = beta.chr[t];
            }
            IVec rhs = gamma.chr;
            IVec x;
            Int den;
            if (!rational_solve(sys, rhs, x, den)) continue;
            if (den == 0) continue;
            if (x[0] % den != 0 || x[1] % den != 0) continue;
            Int r = x[0] / den, s = x[1] / den;
            if (r > 0 && s != 0)
                throw std::invalid_argument("a1_factor_split: mixed root found, input is not an R-Levi of codimension 2");
        }
    }

    // simple roots of Phi_L: positive members not sums of two positive members
    std::set<IVec> posL;
    for (int ai : levi.phi_L)
        if (d.is_positive(ai)) posL.insert(d.root(ai).chr);
    std::vector<int> simpleL;
    for (int ai : levi.phi_L) {
        if (!d.is_positive(ai)) continue;
        const IVec& a = d.root(ai).chr;
        bool decomposable = false;
        for (const IVec& b : posL) {
            if (b == a) continue;
            IVec c(a.size());
            for (size_t t = 0; t < a.size(); ++t) c[t] = a[t] - b[t];
            if (posL.count(c)) { decomposable = true; break; }
        }
        if (!decomposable) simpleL.push_back(ai);
    }
    std::sort(simpleL.begin(), simpleL.end());

    if (simpleL.empty()) return A1FactorSplit{BasedRootDatum::torus(0), beta.chr, beta.cochr};
    int m = static_cast<int>(simpleL.size());
    IMat c(m, m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) c(i, j) = ivec_dot(d.root(simpleL[i]).chr, d.root(simpleL[j]).cochr);
    return A1FactorSplit{datum_from_cartan_adjoint(c), beta.chr, beta.cochr};
}

}  // namespace defspace
