#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace defspace {

inline constexpr int kMaxGroupOrder = 256;

// Finite group given by its multiplication table. table[g][h] = g*h.
// All axioms are verified exhaustively on construction.
struct FiniteGroup {
    std::vector<std::vector<int>> table;
    int identity = -1;
    std::vector<int> inverse;

    FiniteGroup() = default;

    explicit FiniteGroup(std::vector<std::vector<int>> t) : table(std::move(t)) {
        int n = static_cast<int>(table.size());
        if (n == 0) throw std::invalid_argument("FiniteGroup: empty table");
        if (n > kMaxGroupOrder) throw std::invalid_argument("FiniteGroup: order above cap " + std::to_string(kMaxGroupOrder));
        for (const auto& row : table) {
            if (static_cast<int>(row.size()) != n) throw std::invalid_argument("FiniteGroup: table is not square");
            for (int v : row)
                if (v < 0 || v >= n) throw std::invalid_argument("FiniteGroup: entry out of range");
        }
        for (int e = 0; e < n; ++e) {
            bool ok = true;
            for (int g = 0; g < n && ok; ++g)
                if (table[e][g] != g || table[g][e] != g) ok = false;
            if (ok) { identity = e; break; }
        }
        if (identity < 0) throw std::invalid_argument("FiniteGroup: no identity element");
        inverse.assign(n, -1);
        for (int g = 0; g < n; ++g) {
            for (int h = 0; h < n; ++h)
                if (table[g][h] == identity && table[h][g] == identity) { inverse[g] = h; break; }
            if (inverse[g] < 0) throw std::invalid_argument("FiniteGroup: element " + std::to_string(g) + " has no inverse");
        }
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                for (int c = 0; c < n; ++c)
                    if (table[table[a][b]][c] != table[a][table[b][c]])
                        throw std::invalid_argument("FiniteGroup: associativity fails at (" + std::to_string(a) + "," +
                                                    std::to_string(b) + "," + std::to_string(c) + ")");
    }

    int order() const { return static_cast<int>(table.size()); }
    int mul(int g, int h) const { return table[g][h]; }
    int inv(int g) const { return inverse[g]; }

    int element_order(int g) const {
        int x = g, n = 1;
        while (x != identity) {
            x = mul(x, g);
            ++n;
        }
        return n;
    }

    bool is_abelian() const {
        int n = order();
        for (int a = 0; a < n; ++a)
            for (int b = a + 1; b < n; ++b)
                if (table[a][b] != table[b][a]) return false;
        return true;
    }

    static FiniteGroup trivial() {
        std::vector<std::vector<int>> t{{0}};
        return FiniteGroup(std::move(t));
    }

    static FiniteGroup cyclic(int n) {
        std::vector<std::vector<int>> t(n, std::vector<int>(n));
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) t[a][b] = (a + b) % n;
        return FiniteGroup(std::move(t));
    }

    // Dihedral group of order 2n: elements r^i (0..n-1), r^i s (n..2n-1).
    static FiniteGroup dihedral(int n) {
        auto idx = [n](int i, int flip) { return flip ? n + ((i % n + n) % n) : (i % n + n) % n; };
        std::vector<std::vector<int>> t(2 * n, std::vector<int>(2 * n));
        for (int i = 0; i < n; ++i)
            for (int fi = 0; fi < 2; ++fi)
                for (int j = 0; j < n; ++j)
                    for (int fj = 0; fj < 2; ++fj)
                        // (r^i s^fi)(r^j s^fj) = r^{i + (-1)^fi j} s^{fi+fj}
                        t[idx(i, fi)][idx(j, fj)] = idx(i + (fi ? -j : j), fi ^ fj);
        return FiniteGroup(std::move(t));
    }

    static FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b) {
        int na = a.order(), nb = b.order();
        std::vector<std::vector<int>> t(na * nb, std::vector<int>(na * nb));
        auto idx = [nb](int x, int y) { return x * nb + y; };
        for (int x1 = 0; x1 < na; ++x1)
            for (int y1 = 0; y1 < nb; ++y1)
                for (int x2 = 0; x2 < na; ++x2)
                    for (int y2 = 0; y2 < nb; ++y2)
                        t[idx(x1, y1)][idx(x2, y2)] = idx(a.mul(x1, x2), b.mul(y1, y2));
        return FiniteGroup(std::move(t));
    }
};

}  // namespace defspace
