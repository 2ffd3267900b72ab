#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "defspace/finite_group.hpp"

namespace defspace {

// Generalised 2-cocycle (omega, c) of Delta with coefficients in N:
//   (1) omega(d1) . omega(d2) = Int_N(c(d1,d2)) . omega(d1 d2)
//   (2) omega(1) = id
//   (3) c(d1,d2) c(d1 d2, d3) = omega(d1)(c(d2,d3)) c(d1, d2 d3)
//   (4) c(d,1) = c(1,d) = 1
// omega maps each element of Delta to an automorphism of N given as a
// permutation table; c maps pairs to elements of N.
struct GenTwoCocycle {
    FiniteGroup N;
    FiniteGroup Delta;
    std::vector<std::vector<int>> omega;  // omega[d][n]
    std::vector<std::vector<int>> c;      // c[d1][d2]
};

struct CocycleError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline void validate_cocycle(const GenTwoCocycle& z) {
    int n = z.N.order(), k = z.Delta.order();
    if (static_cast<int>(z.omega.size()) != k) throw CocycleError("omega: one permutation per Delta element required");
    if (static_cast<int>(z.c.size()) != k) throw CocycleError("c: square table over Delta required");
    for (const auto& row : z.c)
        if (static_cast<int>(row.size()) != k) throw CocycleError("c: square table over Delta required");
    for (int d = 0; d < k; ++d) {
        if (static_cast<int>(z.omega[d].size()) != n) throw CocycleError("omega: permutation of wrong size");
        std::vector<bool> hit(n, false);
        for (int x = 0; x < n; ++x) {
            int y = z.omega[d][x];
            if (y < 0 || y >= n || hit[y]) throw CocycleError("omega: not a bijection of N");
            hit[y] = true;
        }
        for (int x = 0; x < n; ++x)
            for (int y = 0; y < n; ++y)
                if (z.omega[d][z.N.mul(x, y)] != z.N.mul(z.omega[d][x], z.omega[d][y]))
                    throw CocycleError("omega(" + std::to_string(d) + ") is not an automorphism of N, witness (" +
                                       std::to_string(x) + "," + std::to_string(y) + ")");
    }
    for (const auto& row : z.c)
        for (int v : row)
            if (v < 0 || v >= n) throw CocycleError("c: value outside N");

    // (2)
    for (int x = 0; x < n; ++x)
        if (z.omega[z.Delta.identity][x] != x) throw CocycleError("axiom (2) fails: omega(1) != id");
    // (4)
    for (int d = 0; d < k; ++d) {
        if (z.c[d][z.Delta.identity] != z.N.identity)
            throw CocycleError("axiom (4) fails: c(" + std::to_string(d) + ",1) != 1");
        if (z.c[z.Delta.identity][d] != z.N.identity)
            throw CocycleError("axiom (4) fails: c(1," + std::to_string(d) + ") != 1");
    }
    // (1)
    for (int d1 = 0; d1 < k; ++d1)
        for (int d2 = 0; d2 < k; ++d2) {
            int d12 = z.Delta.mul(d1, d2);
            int cc = z.c[d1][d2];
            for (int x = 0; x < n; ++x) {
                int lhs = z.omega[d1][z.omega[d2][x]];
                int rhs = z.N.mul(z.N.mul(cc, z.omega[d12][x]), z.N.inv(cc));
                if (lhs != rhs)
                    throw CocycleError("axiom (1) fails at (" + std::to_string(d1) + "," + std::to_string(d2) +
                                       "), witness n=" + std::to_string(x));
            }
        }
    // (3)
    for (int d1 = 0; d1 < k; ++d1)
        for (int d2 = 0; d2 < k; ++d2)
            for (int d3 = 0; d3 < k; ++d3) {
                int lhs = z.N.mul(z.c[d1][d2], z.c[z.Delta.mul(d1, d2)][d3]);
                int rhs = z.N.mul(z.omega[d1][z.c[d2][d3]], z.c[d1][z.Delta.mul(d2, d3)]);
                if (lhs != rhs)
                    throw CocycleError("axiom (3) fails at (" + std::to_string(d1) + "," + std::to_string(d2) + "," +
                                       std::to_string(d3) + ")");
            }
}

// A group law on the set N x Delta making n -> (n,1) and (n,d) -> d
// homomorphisms; elements are indexed n * |Delta| + d.
struct RigidifiedExtension {
    FiniteGroup group;
    int n_order = 0;
    int delta_order = 0;

    int index(int n, int d) const { return n * delta_order + d; }
    int n_part(int idx) const { return idx / delta_order; }
    int delta_part(int idx) const { return idx % delta_order; }
};

// Schreier construction: (n1,d1)(n2,d2) = (n1 . omega(d1)(n2) . c(d1,d2), d1 d2).
inline RigidifiedExtension build_extension(const GenTwoCocycle& z) {
    validate_cocycle(z);
    int n = z.N.order(), k = z.Delta.order();
    RigidifiedExtension out;
    out.n_order = n;
    out.delta_order = k;
    std::vector<std::vector<int>> table(n * k, std::vector<int>(n * k));
    for (int n1 = 0; n1 < n; ++n1)
        for (int d1 = 0; d1 < k; ++d1)
            for (int n2 = 0; n2 < n; ++n2)
                for (int d2 = 0; d2 < k; ++d2) {
                    int np = z.N.mul(z.N.mul(n1, z.omega[d1][n2]), z.c[d1][d2]);
                    table[n1 * k + d1][n2 * k + d2] = np * k + z.Delta.mul(d1, d2);
                }
    out.group = FiniteGroup(std::move(table));  // verifies all group axioms
    // iota and pi are homomorphisms
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            if (out.group.mul(out.index(a, z.Delta.identity), out.index(b, z.Delta.identity)) !=
                out.index(z.N.mul(a, b), z.Delta.identity))
                throw std::logic_error("build_extension: iota is not a homomorphism");
    for (int x = 0; x < n * k; ++x)
        for (int y = 0; y < n * k; ++y)
            if (out.delta_part(out.group.mul(x, y)) != z.Delta.mul(out.delta_part(x), out.delta_part(y)))
                throw std::logic_error("build_extension: pi is not a homomorphism");
    return out;
}

// Inverse direction: read off omega*(d)(x) = s(d) x s(d)^{-1} and
// c*(d1,d2) = s(d1) s(d2) s(d1 d2)^{-1} with the section s(d) = (1,d).
inline GenTwoCocycle extension_to_cocycle(const RigidifiedExtension& ext, const FiniteGroup& N,
                                          const FiniteGroup& Delta) {
    int n = N.order(), k = Delta.order();
    if (ext.n_order != n || ext.delta_order != k || ext.group.order() != n * k)
        throw std::invalid_argument("extension_to_cocycle: size mismatch");
    const FiniteGroup& G = ext.group;
    // rigidification checks: iota and pi are homomorphisms
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            int prod = G.mul(ext.index(a, Delta.identity), ext.index(b, Delta.identity));
            if (prod != ext.index(N.mul(a, b), Delta.identity))
                throw std::invalid_argument("extension_to_cocycle: iota is not a homomorphism");
        }
    for (int x = 0; x < n * k; ++x)
        for (int y = 0; y < n * k; ++y)
            if (ext.delta_part(G.mul(x, y)) != Delta.mul(ext.delta_part(x), ext.delta_part(y)))
                throw std::invalid_argument("extension_to_cocycle: pi is not a homomorphism");

    auto s = [&](int d) { return ext.index(N.identity, d); };
    GenTwoCocycle z;
    z.N = N;
    z.Delta = Delta;
    z.omega.assign(k, std::vector<int>(n));
    z.c.assign(k, std::vector<int>(k));
    for (int d = 0; d < k; ++d)
        for (int x = 0; x < n; ++x) {
            int img = G.mul(G.mul(s(d), ext.index(x, Delta.identity)), G.inv(s(d)));
            if (ext.delta_part(img) != Delta.identity)
                throw std::invalid_argument("extension_to_cocycle: N is not normalised by the section");
            z.omega[d][x] = ext.n_part(img);
        }
    for (int d1 = 0; d1 < k; ++d1)
        for (int d2 = 0; d2 < k; ++d2) {
            int prod = G.mul(G.mul(s(d1), s(d2)), G.inv(s(Delta.mul(d1, d2))));
            if (ext.delta_part(prod) != Delta.identity)
                throw std::invalid_argument("extension_to_cocycle: c value outside N");
            z.c[d1][d2] = ext.n_part(prod);
        }
    validate_cocycle(z);
    return z;
}

// Semidirect-product cocycle: omega a homomorphism, c trivial.
inline GenTwoCocycle semidirect_cocycle(const FiniteGroup& N, const FiniteGroup& Delta,
                                        const std::vector<std::vector<int>>& omega) {
    GenTwoCocycle z;
    z.N = N;
    z.Delta = Delta;
    z.omega = omega;
    z.c.assign(Delta.order(), std::vector<int>(Delta.order(), N.identity));
    validate_cocycle(z);
    return z;
}

}  // namespace defspace
