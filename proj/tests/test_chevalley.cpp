#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "defspace/chevalley.hpp"

using namespace defspace;

namespace {

GenReductiveDatum trivial(BasedRootDatum d) { return GenReductiveDatum::with_trivial_group(std::move(d)); }

// brute-force count of common fixed vectors, for cross-checking kernel solves
long long count_fixed_vectors(const FiniteField& F, const std::vector<FqMat>& gens, bool dual, int dim) {
    std::vector<FqMat> action;
    for (const FqMat& g : gens) action.push_back(dual ? fq_transpose(fq_inverse(g)) : g);
    long long total = 1;
    for (int i = 0; i < dim; ++i) total *= static_cast<long long>(F.q());
    long long fixed = 0;
    for (long long code = 0; code < total; ++code) {
        std::vector<FiniteField::Elt> v(dim);
        long long c = code;
        for (int i = 0; i < dim; ++i) {
            v[i] = static_cast<FiniteField::Elt>(c % F.q());
            c /= F.q();
        }
        bool ok = true;
        for (const FqMat& g : action) {
            for (int i = 0; i < dim && ok; ++i) {
                FiniteField::Elt acc = 0;
                for (int j = 0; j < dim; ++j)
                    if (g(i, j) != 0 && v[j] != 0) acc = F.add(acc, F.mul(g(i, j), v[j]));
                if (acc != v[i]) ok = false;
            }
            if (!ok) break;
        }
        if (ok) ++fixed;
    }
    return fixed;
}

}  // namespace

TEST_CASE("sl2 over F_2: basis and brackets") {
    FiniteField f2 = FiniteField::with_default_poly(2, 1);
    ChevalleyAlgebra a(build_simple('A', 1, Isogeny::SimplyConnected), f2);
    CHECK(a.dim() == 3);
    // indices: 0 = e (positive root), 1 = f, 2 = h
    IVec ef = a.bracket_basis(0, 1);
    CHECK(ef == IVec{0, 0, 1});  // [e,f] = h
    // [h,e] = 2e: nonzero over Z, vanishes mod 2
    IVec he = a.bracket_basis(2, 0);
    CHECK(he == IVec{2, 0, 0});
}

TEST_CASE("structure constants: A2 all |N| = 1, G2 has |N| up to 3") {
    FiniteField f3 = FiniteField::with_default_poly(3, 1);
    ChevalleyAlgebra a2(build_simple('A', 2, Isogeny::SimplyConnected), f3);
    CHECK(a2.dim() == 8);
    for (int i = 0; i < a2.num_roots(); ++i)
        for (int j = 0; j < a2.num_roots(); ++j) {
            if (i == j || a2.datum().negative_of(i) == j) continue;
            IVec sum = a2.datum().root(i).chr;
            for (int t = 0; t < a2.datum().rank(); ++t) sum[t] += a2.datum().root(j).chr[t];
            if (a2.datum().find_root(sum) < 0) continue;
            CHECK(std::llabs(a2.structure_constant(i, j)) == 1);
        }

    FiniteField f5 = FiniteField::with_default_poly(5, 1);
    ChevalleyAlgebra g2(build_simple('G', 2, Isogeny::Adjoint), f5);
    CHECK(g2.dim() == 14);
    std::set<Int> magnitudes;
    for (int i = 0; i < g2.num_roots(); ++i)
        for (int j = 0; j < g2.num_roots(); ++j) {
            if (i == j || g2.datum().negative_of(i) == j) continue;
            IVec sum = g2.datum().root(i).chr;
            for (int t = 0; t < g2.datum().rank(); ++t) sum[t] += g2.datum().root(j).chr[t];
            if (g2.datum().find_root(sum) < 0) continue;
            magnitudes.insert(std::llabs(g2.structure_constant(i, j)));
        }
    CHECK(magnitudes == std::set<Int>{1, 2, 3});
}

TEST_CASE("algebras of rank <= 3 build and verify at p in {2,3,5}") {
    // construction includes Jacobi verification on all basis triples
    for (auto [s, r] : std::vector<std::pair<char, int>>{{'A', 1}, {'A', 2}, {'A', 3}, {'B', 2}, {'B', 3}, {'C', 3}}) {
        for (int p : {2, 3, 5}) {
            FiniteField f = FiniteField::with_default_poly(p, 1);
            ChevalleyAlgebra a(build_simple(s, r, Isogeny::SimplyConnected), f);
            CHECK(a.dim() == build_simple(s, r, Isogeny::SimplyConnected).dim());
        }
    }
}

TEST_CASE("ad_unipotent: identity at 0, divided-power expansion, one-parameter law") {
    FiniteField f3 = FiniteField::with_default_poly(3, 1);
    ChevalleyAlgebra a(build_simple('A', 1, Isogeny::SimplyConnected), f3);
    CHECK(a.ad_unipotent(0, 0) == FqMat::identity(f3, 3));

    // Ad x_e(1) f = f + h - e with the stored sign conventions
    FqMat m = a.ad_unipotent(0, 1);
    // f is basis index 1; read column 1
    CHECK(m(1, 1) == 1);                        // f
    CHECK(m(2, 1) == 1);                        // +h
    CHECK(m(0, 1) == f3.from_int(-1));          // -e

    // one-parameter subgroup law over several fields and roots
    for (int p : {2, 3, 5}) {
        FiniteField f = FiniteField::with_default_poly(p, 2);
        ChevalleyAlgebra b(build_simple('B', 2, Isogeny::SimplyConnected), f);
        for (int root : {0, 1, 2}) {
            for (FiniteField::Elt t = 0; t < f.q(); ++t)
                for (FiniteField::Elt s = 0; s < 3; ++s) {
                    FqMat lhs = fq_mul(b.ad_unipotent(root, t), b.ad_unipotent(root, s));
                    FqMat rhs = b.ad_unipotent(root, f.add(t, s));
                    CHECK(lhs == rhs);
                }
        }
    }
}

TEST_CASE("ad matrices preserve the bracket") {
    for (int p : {2, 3}) {
        FiniteField f = FiniteField::with_default_poly(p, 1);
        ChevalleyAlgebra a(build_simple('A', 2, Isogeny::SimplyConnected), f);
        FqMat g = a.ad_unipotent(0, 1);
        // Ad(g)[x,y] = [Ad(g)x, Ad(g)y] on all basis pairs, computed mod p
        for (int i = 0; i < a.dim(); ++i)
            for (int j = 0; j < a.dim(); ++j) {
                // lhs: g * bracket(e_i, e_j)
                IVec br = a.bracket_basis(i, j);
                std::vector<FiniteField::Elt> lhs(a.dim(), 0);
                for (int t = 0; t < a.dim(); ++t)
                    for (int u = 0; u < a.dim(); ++u)
                        lhs[t] = f.add(lhs[t], f.mul(g(t, u), f.from_int(br[u])));
                // rhs: bracket over F of g e_i with g e_j
                std::vector<FiniteField::Elt> rhs(a.dim(), 0);
                for (int u = 0; u < a.dim(); ++u)
                    for (int v = 0; v < a.dim(); ++v) {
                        if (g(u, i) == 0 || g(v, j) == 0) continue;
                        const IVec& buv = a.bracket_basis(u, v);
                        FiniteField::Elt c = f.mul(g(u, i), g(v, j));
                        for (int t = 0; t < a.dim(); ++t)
                            rhs[t] = f.add(rhs[t], f.mul(c, f.from_int(buv[t])));
                    }
                CHECK(lhs == rhs);
            }
    }
}

TEST_CASE("ad_torus diagonal") {
    FiniteField f5 = FiniteField::with_default_poly(5, 1);
    ChevalleyAlgebra a(build_simple('A', 1, Isogeny::SimplyConnected), f5);
    CHECK(a.ad_torus({1}, 1) == FqMat::identity(f5, 3));
    FqMat m = a.ad_torus({1}, 2);  // lambda = alpha^vee
    CHECK(m(0, 0) == 4);  // u^2 on e
    CHECK(m(1, 1) == f5.inv(4));  // u^-2 on f
    CHECK(m(2, 2) == 1);
    CHECK_THROWS(a.ad_torus({1}, 0));

    // A2, fundamental coweight, u = 2 over F_5: eigenvalue on e_beta is
    // 2^{<beta,lambda>}
    ChevalleyAlgebra b(build_simple('A', 2, Isogeny::SimplyConnected), f5);
    Cocharacter fund{1, 0};
    FqMat t = b.ad_torus(fund, 2);
    for (int i = 0; i < b.num_roots(); ++i) {
        Int pr = ivec_dot(b.datum().root(i).chr, fund);
        CHECK(t(i, i) == f5.pow(2, pr));
    }
}

TEST_CASE("invariant_dim against the brute-force oracle on sl2/F_2") {
    FiniteField f4 = FiniteField::with_default_poly(2, 2);
    ChevalleyAlgebra a(build_simple('A', 1, Isogeny::SimplyConnected), f4);
    std::vector<FqMat> gens;
    for (int idx : {0, 1})
        for (FiniteField::Elt t = 1; t < 4; ++t) gens.push_back(a.ad_unipotent(idx, t));

    InvariantSpace co = invariant_dim(f4, gens, true, 3);
    CHECK(co.dim == 0);
    InvariantSpace ad = invariant_dim(f4, gens, false, 3);
    CHECK(ad.dim == 1);  // the line of h, central in char 2

    long long fixed_dual = count_fixed_vectors(f4, gens, true, 3);
    long long fixed_adj = count_fixed_vectors(f4, gens, false, 3);
    CHECK(fixed_dual == 1);   // q^0
    CHECK(fixed_adj == 4);    // q^1

    // empty generator list: whole space
    CHECK(invariant_dim(f4, {}, false, 3).dim == 3);
    // dimension mismatch rejected
    CHECK_THROWS(invariant_dim(f4, {FqMat::identity(f4, 2)}, false, 3));
}

TEST_CASE("coadjoint invariants vanish for simply connected types") {
    CHECK(coadjoint_invariants_sc(build_simple('A', 1, Isogeny::SimplyConnected), 2) == 0);
    CHECK(coadjoint_invariants_sc(build_simple('A', 2, Isogeny::SimplyConnected), 3) == 0);
    CHECK(coadjoint_invariants_sc(build_simple('C', 2, Isogeny::SimplyConnected), 2) == 0);
}

TEST_CASE("adjoint invariants of sl_p in characteristic p contain the centre") {
    CHECK(sc_invariants(build_simple('A', 1, Isogeny::SimplyConnected), 2, false) == 1);
    CHECK(sc_invariants(build_simple('A', 2, Isogeny::SimplyConnected), 3, false) >= 1);
}

TEST_CASE("sign conventions do not affect invariant dimensions") {
    // same root system with the simple roots listed in the opposite order:
    // different canonical order, different extraspecial signs
    BasedRootDatum b2 = build_simple('B', 2, Isogeny::SimplyConnected);
    std::vector<IVec> roots(b2.simple_roots().rbegin(), b2.simple_roots().rend());
    std::vector<IVec> coroots(b2.simple_coroots().rbegin(), b2.simple_coroots().rend());
    BasedRootDatum flipped(b2.rank(), roots, coroots, "B2flip");
    for (int p : {2, 3}) {
        CHECK(sc_invariants(b2, p, true) == sc_invariants(flipped, p, true));
        CHECK(sc_invariants(b2, p, false) == sc_invariants(flipped, p, false));
    }
}

TEST_CASE("nilradical dual invariants vanish for standard Levis") {
    // GL2, L = T, p = 3
    GenReductiveDatum gl2 = trivial(datum_gl(2));
    auto levis2 = enumerate_standard_levis(gl2);
    for (const auto& l : levis2)
        if (l.dim_U > 0) CHECK(nilradical_dual_invariants(gl2, l, 3) == 0);

    // GL3, L = GL2 x GL1 block, p = 2
    GenReductiveDatum gl3 = trivial(datum_gl(3));
    for (const auto& l : enumerate_standard_levis(gl3))
        if (l.dim_U > 0) CHECK(nilradical_dual_invariants(gl3, l, 2) == 0);

    // restricted generator list: trivial subgroup on a 1-dim module
    FiniteField f9 = FiniteField::with_default_poly(3, 2);
    CHECK(invariant_dim(f9, {}, true, 1).dim == 1);
}
