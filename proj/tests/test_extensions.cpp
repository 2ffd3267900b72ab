#include <catch2/catch_amalgamated.hpp>

#include <map>

#include "defspace/extensions.hpp"

using namespace defspace;

namespace {

// inversion automorphism of Z/n
std::vector<int> inversion(int n) {
    std::vector<int> om(n);
    for (int i = 0; i < n; ++i) om[i] = (n - i) % n;
    return om;
}

std::vector<int> identity_map(int n) {
    std::vector<int> om(n);
    for (int i = 0; i < n; ++i) om[i] = i;
    return om;
}

// Z/n by Z/2 with omega(g) = inversion and c(g,g) = t
GenTwoCocycle twisted_cocycle(int n, int t, bool invert) {
    GenTwoCocycle z;
    z.N = FiniteGroup::cyclic(n);
    z.Delta = FiniteGroup::cyclic(2);
    z.omega = {identity_map(n), invert ? inversion(n) : identity_map(n)};
    z.c.assign(2, std::vector<int>(2, 0));
    z.c[1][1] = t;
    validate_cocycle(z);
    return z;
}

std::map<int, int> order_census(const FiniteGroup& g) {
    std::map<int, int> out;
    for (int x = 0; x < g.order(); ++x) ++out[g.element_order(x)];
    return out;
}

}  // namespace

TEST_CASE("validation: semidirect inputs and axiom failures") {
    // omega a homomorphism, c = 1: the dihedral semidirect product
    FiniteGroup n4 = FiniteGroup::cyclic(4);
    FiniteGroup d2 = FiniteGroup::cyclic(2);
    CHECK_NOTHROW(semidirect_cocycle(n4, d2, {identity_map(4), inversion(4)}));

    // classical central cocycle with trivial omega on Z/4 by Z/2
    CHECK_NOTHROW(twisted_cocycle(4, 2, false));

    // axiom (4) violation is reported with its axiom
    GenTwoCocycle bad = twisted_cocycle(4, 2, false);
    bad.c[0][1] = 1;
    try {
        validate_cocycle(bad);
        FAIL("expected axiom failure");
    } catch (const CocycleError& e) {
        CHECK(std::string(e.what()).find("axiom (4)") != std::string::npos);
    }

    // non-automorphism omega
    GenTwoCocycle nonauto = twisted_cocycle(4, 0, false);
    nonauto.omega[1] = {1, 0, 3, 2};  // bijection but not an automorphism of Z/4
    CHECK_THROWS_AS(validate_cocycle(nonauto), CocycleError);

    // axiom (1) violation: c incompatible with a nonabelian N
    GenTwoCocycle z;
    z.N = FiniteGroup::dihedral(3);
    z.Delta = FiniteGroup::cyclic(2);
    z.omega = {identity_map(6), identity_map(6)};
    z.c.assign(2, std::vector<int>(2, 0));
    z.c[1][1] = 4;  // a reflection: Int_N(c) is nontrivial, axiom (1) fails
    CHECK_THROWS_AS(validate_cocycle(z), CocycleError);
}

TEST_CASE("built extensions: direct, semidirect, quaternion") {
    // trivial omega, trivial c on abelian inputs: direct product
    GenTwoCocycle direct = twisted_cocycle(4, 0, false);
    RigidifiedExtension de = build_extension(direct);
    CHECK(de.group.order() == 8);
    CHECK(de.group.is_abelian());

    // dihedral: inversion, c = 1
    GenTwoCocycle dih = semidirect_cocycle(FiniteGroup::cyclic(4), FiniteGroup::cyclic(2),
                                           {identity_map(4), inversion(4)});
    RigidifiedExtension dh = build_extension(dih);
    CHECK(order_census(dh.group) == order_census(FiniteGroup::dihedral(4)));

    // quaternion: inversion with c(g,g) = 2 gives a unique element of order 2
    GenTwoCocycle quat = twisted_cocycle(4, 2, true);
    RigidifiedExtension q8 = build_extension(quat);
    CHECK(q8.group.order() == 8);
    std::map<int, int> census = order_census(q8.group);
    CHECK(census[2] == 1);
    CHECK(census[4] == 6);
    CHECK(!q8.group.is_abelian());
}

TEST_CASE("extraction from a table") {
    // dihedral group of order 8 rigidified over (Z/4, Z/2)
    FiniteGroup n4 = FiniteGroup::cyclic(4);
    FiniteGroup d2 = FiniteGroup::cyclic(2);
    RigidifiedExtension ext;
    ext.n_order = 4;
    ext.delta_order = 2;
    std::vector<std::vector<int>> table(8, std::vector<int>(8));
    for (int i = 0; i < 4; ++i)
        for (int fi = 0; fi < 2; ++fi)
            for (int j = 0; j < 4; ++j)
                for (int fj = 0; fj < 2; ++fj) {
                    int np = ((i + (fi ? -j : j)) % 4 + 4) % 4;
                    table[i * 2 + fi][j * 2 + fj] = np * 2 + (fi ^ fj);
                }
    ext.group = FiniteGroup(table);
    GenTwoCocycle z = extension_to_cocycle(ext, n4, d2);
    CHECK(z.omega[1] == inversion(4));
    CHECK(z.c[1][1] == 0);

    // note Z/4 with index = n*2+d IS a valid rigidified extension of Z/2 by
    // Z/2 (the non-split one); scrambling the indexing breaks pi
    RigidifiedExtension bad;
    bad.n_order = 2;
    bad.delta_order = 2;
    std::vector<int> perm{0, 1, 3, 2};  // index -> element of Z/4
    std::vector<int> inv_perm{0, 1, 3, 2};
    std::vector<std::vector<int>> t4(4, std::vector<int>(4));
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) t4[a][b] = inv_perm[(perm[a] + perm[b]) % 4];
    bad.group = FiniteGroup(t4);
    CHECK_THROWS(extension_to_cocycle(bad, FiniteGroup::cyclic(2), FiniteGroup::cyclic(2)));
}

TEST_CASE("roundtrips over the catalogue") {
    std::vector<GenTwoCocycle> catalogue;

    // semidirect family: Z/n by Z/2 inversion, n <= 12
    for (int n : {3, 4, 5, 6, 8, 12})
        catalogue.push_back(semidirect_cocycle(FiniteGroup::cyclic(n), FiniteGroup::cyclic(2),
                                               {identity_map(n), inversion(n)}));
    // direct products
    for (int n : {2, 6, 9})
        catalogue.push_back(twisted_cocycle(n, 0, false));
    // central-cocycle family: Z/n by Z/2 with c(g,g) = n/2
    for (int n : {2, 4, 6, 8, 10, 12})
        catalogue.push_back(twisted_cocycle(n, n / 2, false));
    // dihedral/quaternion family: inversion with c(g,g) in {0, n/2}
    for (int n : {4, 6, 8, 12}) {
        catalogue.push_back(twisted_cocycle(n, 0, true));
        catalogue.push_back(twisted_cocycle(n, n / 2, true));
    }
    // nonabelian kernel: S_3 = D_3 by Z/2 acting by an inner automorphism;
    // omega(g) = conjugation by a reflection, c = 1
    {
        FiniteGroup s3 = FiniteGroup::dihedral(3);
        std::vector<int> conj(6);
        int r = 3;  // a reflection
        for (int x = 0; x < 6; ++x) conj[x] = s3.mul(s3.mul(r, x), s3.inv(r));
        catalogue.push_back(semidirect_cocycle(s3, FiniteGroup::cyclic(2), {identity_map(6), conj}));
    }
    // Z/3 by Z/4 with omega(g) = inversion via the surjection Z/4 -> Z/2
    {
        FiniteGroup n3 = FiniteGroup::cyclic(3);
        FiniteGroup d4 = FiniteGroup::cyclic(4);
        std::vector<std::vector<int>> om(4);
        for (int d = 0; d < 4; ++d) om[d] = (d % 2 == 0) ? identity_map(3) : inversion(3);
        catalogue.push_back(semidirect_cocycle(n3, d4, om));
    }

    for (const GenTwoCocycle& z : catalogue) {
        // roundtrip I: extract(build(z)) = z
        RigidifiedExtension ext = build_extension(z);
        GenTwoCocycle back = extension_to_cocycle(ext, z.N, z.Delta);
        CHECK(back.omega == z.omega);
        CHECK(back.c == z.c);

        // roundtrip II: build(extract(G)) reproduces the table
        RigidifiedExtension rebuilt = build_extension(back);
        CHECK(rebuilt.group.table == ext.group.table);
    }
}
