#pragma once

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "defspace/finite_field.hpp"

namespace defspace {

inline constexpr long long kSpinCap = 1000000;  // exhaustive regime: q^d <= 1e6

// Finite list of invertible generators over F_q; optionally tagged with a
// tame relation M_sigma M_tau M_sigma^-1 = M_tau^q0 when generators = {M_sigma, M_tau}.
struct FqMatrixRep {
    const FiniteField* F = nullptr;
    int dim = 0;
    std::vector<FqMat> gens;
    std::optional<Int> tame_q;  // residue-field size of the tame presentation

    FqMatrixRep() = default;
    FqMatrixRep(const FiniteField& field, int d, std::vector<FqMat> g, std::optional<Int> tq = std::nullopt)
        : F(&field), dim(d), gens(std::move(g)), tame_q(tq) {
        validate();
    }

    void validate() const {
        for (const FqMat& m : gens) {
            if (m.rows != dim || m.cols != dim) throw std::invalid_argument("rep: generator of wrong shape");
            if (!fq_invertible(m)) throw std::invalid_argument("rep: singular generator");
        }
        if (tame_q) {
            if (gens.size() != 2) throw std::invalid_argument("rep: tame tag requires exactly two generators");
            FqMat lhs = fq_mul(fq_mul(gens[0], gens[1]), fq_inverse(gens[0]));
            FqMat rhs = fq_pow(gens[1], *tame_q);
            if (!(lhs == rhs)) throw std::invalid_argument("rep: tame relation fails");
        }
    }

    long long state_space() const {
        long long s = 1;
        for (int i = 0; i < dim; ++i) {
            s *= static_cast<long long>(F->q());
            if (s > 4 * kSpinCap) return s;
        }
        return s;
    }

    void check_cap() const {
        if (state_space() > kSpinCap)
            throw std::invalid_argument("rep: q^d exceeds the exhaustive-search cap");
    }
};

using FqVec = std::vector<FiniteField::Elt>;

namespace detail {

inline FqVec apply(const FiniteField& F, const FqMat& m, const FqVec& v) {
    FqVec out(m.rows, 0);
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j)
            if (m(i, j) != 0 && v[j] != 0) out[i] = F.add(out[i], F.mul(m(i, j), v[j]));
    return out;
}

// reduce v against echelon rows with the given pivot columns, in place
inline void reduce_against(const FiniteField& F, const FqMat& basis, const std::vector<int>& pivots, FqVec& v) {
    for (int r = 0; r < basis.rows; ++r) {
        FiniteField::Elt c = v[pivots[r]];
        if (c == 0) continue;
        for (int j = 0; j < basis.cols; ++j) v[j] = F.sub(v[j], F.mul(c, basis(r, j)));
    }
}

struct EchelonBasis {
    FqMat rows;
    std::vector<int> pivots;

    explicit EchelonBasis(const FiniteField& F, int ambient) : rows(F, 0, ambient) {}

    // returns true when v was independent and has been inserted
    bool insert(const FiniteField& F, FqVec v) {
        reduce_against(F, rows, pivots, v);
        int p = -1;
        for (int j = 0; j < rows.cols; ++j)
            if (v[j] != 0) { p = j; break; }
        if (p < 0) return false;
        FiniteField::Elt inv = F.inv(v[p]);
        for (auto& x : v) x = F.mul(x, inv);
        // back-reduce existing rows
        for (int r = 0; r < rows.rows; ++r) {
            FiniteField::Elt c = rows(r, p);
            if (c == 0) continue;
            for (int j = 0; j < rows.cols; ++j) rows(r, j) = F.sub(rows(r, j), F.mul(c, v[j]));
        }
        FqMat next(F, rows.rows + 1, rows.cols);
        int at = 0;
        while (at < rows.rows && pivots[at] < p) ++at;
        for (int r = 0; r < at; ++r)
            for (int j = 0; j < rows.cols; ++j) next(r, j) = rows(r, j);
        for (int j = 0; j < rows.cols; ++j) next(at, j) = v[j];
        for (int r = at; r < rows.rows; ++r)
            for (int j = 0; j < rows.cols; ++j) next(r + 1, j) = rows(r, j);
        rows = next;
        pivots.insert(pivots.begin() + at, p);
        return true;
    }
};

}  // namespace detail

// Smallest generator-stable subspace containing v, as echelon basis rows.
inline FqMat spin(const FqMatrixRep& rep, const FqVec& v) {
    const FiniteField& F = *rep.F;
    if (static_cast<int>(v.size()) != rep.dim) throw std::invalid_argument("spin: vector of wrong length");
    if (std::all_of(v.begin(), v.end(), [](FiniteField::Elt e) { return e == 0; }))
        throw std::invalid_argument("spin: zero vector");
    detail::EchelonBasis basis(F, rep.dim);
    std::vector<FqVec> frontier;
    basis.insert(F, v);
    frontier.push_back(v);
    while (!frontier.empty()) {
        std::vector<FqVec> next;
        for (const FqVec& w : frontier)
            for (const FqMat& g : rep.gens) {
                FqVec img = detail::apply(F, g, w);
                if (basis.insert(F, img)) next.push_back(std::move(img));
            }
        frontier = std::move(next);
    }
    return basis.rows;
}

namespace detail {

// deterministic enumeration of projective points: first nonzero coord = 1,
// leading position ascending, then the tail as a base-q counter
template <typename Fn>
void for_each_line(const FiniteField& F, int dim, Fn&& fn) {
    for (int lead = 0; lead < dim; ++lead) {
        int tail = dim - 1 - lead;
        long long count = 1;
        for (int i = 0; i < tail; ++i) count *= static_cast<long long>(F.q());
        for (long long code = 0; code < count; ++code) {
            FqVec v(dim, 0);
            v[lead] = 1;
            long long c = code;
            for (int i = 0; i < tail; ++i) {
                v[lead + 1 + i] = static_cast<FiniteField::Elt>(c % F.q());
                c /= F.q();
            }
            if (!fn(v)) return;
        }
    }
}

// minimal-dimension invariant subspace, first found in enumeration order
inline FqMat minimal_submodule(const FqMatrixRep& rep) {
    FqMat best(*rep.F, 0, rep.dim);
    int best_dim = rep.dim + 1;
    for_each_line(*rep.F, rep.dim, [&](const FqVec& v) {
        FqMat w = spin(rep, v);
        if (w.rows < best_dim) {
            best = w;
            best_dim = w.rows;
        }
        return best_dim > 1;  // a line is always minimal
    });
    return best;
}

// restriction of a generator to a stable subspace, in basis coordinates
inline FqMat restrict_to_subspace(const FiniteField& F, const FqMat& g, const FqMat& basis,
                                  const std::vector<int>& pivots) {
    int w = basis.rows;
    FqMat out(F, w, w);
    for (int j = 0; j < w; ++j) {
        FqVec img = apply(F, g, FqVec(basis.data.begin() + static_cast<size_t>(j) * basis.cols,
                                      basis.data.begin() + static_cast<size_t>(j + 1) * basis.cols));
        // express in basis: img = sum coeff_r * row_r; echelon rows make the
        // coefficients the pivot entries
        for (int r = 0; r < w; ++r) {
            FiniteField::Elt c = img[pivots[r]];
            out(r, j) = c;
            if (c == 0) continue;
            for (int t = 0; t < basis.cols; ++t) img[t] = F.sub(img[t], F.mul(c, basis(r, t)));
        }
        for (auto e : img)
            if (e != 0) throw std::logic_error("restrict_to_subspace: subspace is not stable");
    }
    return out;
}

inline std::vector<int> pivots_of(const FqMat& echelon) {
    std::vector<int> p;
    for (int r = 0; r < echelon.rows; ++r) {
        int j = 0;
        while (j < echelon.cols && echelon(r, j) == 0) ++j;
        p.push_back(j);
    }
    return p;
}

}  // namespace detail

// Full flag 0 ⊂ V_1 ⊂ … ⊂ V_k = V with irreducible quotients, found by
// exhaustive spin over all lines, taking a minimal-dimension submodule and
// recursing on the quotient. Bases are echelon rows in ambient coordinates.
struct CompositionFlag {
    std::vector<FqMat> steps;  // increasing, last is the full space
    std::vector<int> block_dims;
};

inline CompositionFlag composition_flag(const FqMatrixRep& rep) {
    rep.check_cap();
    const FiniteField& F = *rep.F;
    CompositionFlag out;
    if (rep.dim == 0) return out;

    // current quotient data: generators on the quotient, and a lift matrix
    // whose rows are ambient representatives of the quotient coordinates
    std::vector<FqMat> qgens = rep.gens;
    FqMat lift = FqMat::identity(F, rep.dim);
    detail::EchelonBasis accumulated(F, rep.dim);

    while (accumulated.rows.rows < rep.dim) {
        int qdim = rep.dim - accumulated.rows.rows;
        FqMatrixRep qrep(F, qdim, qgens);
        FqMat sub = detail::minimal_submodule(qrep);
        std::vector<int> sub_piv = detail::pivots_of(sub);
        out.block_dims.push_back(sub.rows);
        // lift the submodule into the ambient space and extend the flag
        for (int r = 0; r < sub.rows; ++r) {
            FqVec amb(rep.dim, 0);
            for (int j = 0; j < qdim; ++j) {
                if (sub(r, j) == 0) continue;
                for (int t = 0; t < rep.dim; ++t) amb[t] = F.add(amb[t], F.mul(sub(r, j), lift(j, t)));
            }
            accumulated.insert(F, amb);
        }
        out.steps.push_back(accumulated.rows);
        if (accumulated.rows.rows == rep.dim) break;

        // build the next quotient: coordinates = non-pivot columns of sub
        std::vector<bool> is_piv(qdim, false);
        for (int c : sub_piv) is_piv[c] = true;
        std::vector<int> comp;
        for (int c = 0; c < qdim; ++c)
            if (!is_piv[c]) comp.push_back(c);
        int ndim = static_cast<int>(comp.size());
        std::vector<FqMat> ngens;
        for (const FqMat& g : qgens) {
            FqMat ng(F, ndim, ndim);
            for (int cj = 0; cj < ndim; ++cj) {
                FqVec img(qdim, 0);
                for (int i = 0; i < qdim; ++i) img[i] = g(i, comp[cj]);
                detail::reduce_against(F, sub, sub_piv, img);
                for (int ci = 0; ci < ndim; ++ci) ng(ci, cj) = img[comp[ci]];
            }
            ngens.push_back(ng);
        }
        FqMat nlift(F, ndim, rep.dim);
        for (int ci = 0; ci < ndim; ++ci)
            for (int t = 0; t < rep.dim; ++t) nlift(ci, t) = lift(comp[ci], t);
        qgens = std::move(ngens);
        lift = std::move(nlift);
    }
    return out;
}

// Block-diagonal associated graded of the composition flag, in a
// flag-adapted basis.
struct Semisimplification {
    FqMatrixRep rep;
    std::vector<int> block_dims;
    FqMat basis;  // rows = flag-adapted basis vectors (ambient coordinates)
};

inline Semisimplification semisimplify(const FqMatrixRep& rep) {
    const FiniteField& F = *rep.F;
    CompositionFlag flag = composition_flag(rep);
    FqMat basis(F, rep.dim, rep.dim);
    {
        detail::EchelonBasis chosen(F, rep.dim);
        int row = 0;
        for (const FqMat& step : flag.steps)
            for (int r = 0; r < step.rows; ++r) {
                FqVec v(step.data.begin() + static_cast<size_t>(r) * step.cols,
                        step.data.begin() + static_cast<size_t>(r + 1) * step.cols);
                if (chosen.insert(F, v)) {
                    for (int t = 0; t < rep.dim; ++t) basis(row, t) = v[t];
                    ++row;
                }
            }
        if (row != rep.dim) throw std::logic_error("semisimplify: flag basis incomplete");
    }
    // conjugate: x = B^T y, so M' = (B^T)^{-1} M B^T is block upper triangular
    FqMat bt = fq_transpose(basis);
    FqMat bti = fq_inverse(bt);
    std::vector<FqMat> blocks;
    for (const FqMat& g : rep.gens) {
        FqMat m = fq_mul(fq_mul(bti, g), bt);
        FqMat clean(F, rep.dim, rep.dim);
        int off = 0;
        for (int bd : flag.block_dims) {
            for (int i = off; i < off + bd; ++i)
                for (int j = off; j < off + bd; ++j) clean(i, j) = m(i, j);
            off += bd;
        }
        blocks.push_back(clean);
    }
    Semisimplification out{FqMatrixRep(F, rep.dim, std::move(blocks)), flag.block_dims, basis};
    return out;
}

// Characteristic polynomial of the word (indices ±1..±m, negative = inverse).
inline std::vector<FiniteField::Elt> char_poly_word(const FqMatrixRep& rep, const std::vector<int>& word) {
    const FiniteField& F = *rep.F;
    FqMat prod = FqMat::identity(F, rep.dim);
    for (int letter : word) {
        if (letter == 0 || std::abs(letter) > static_cast<int>(rep.gens.size()))
            throw std::invalid_argument("char_poly_word: letter outside the generator alphabet");
        const FqMat& g = rep.gens[std::abs(letter) - 1];
        prod = fq_mul(prod, letter > 0 ? g : fq_inverse(g));
    }
    return fq_charpoly(prod);
}

// Determinant-law comparison: characteristic polynomials of all reduced words
// up to maxlen. "Consistent" is a semi-decision up to the stated length.
struct BrauerVerdict {
    bool consistent = true;
    std::vector<int> word;  // first distinguishing word when inconsistent
    long long words_checked = 0;
};

inline BrauerVerdict brauer_nesbitt_equal(const FqMatrixRep& rep1, const FqMatrixRep& rep2, int maxlen) {
    if (rep1.dim != rep2.dim || rep1.gens.size() != rep2.gens.size() || rep1.F->q() != rep2.F->q())
        throw std::invalid_argument("brauer_nesbitt_equal: shape mismatch");
    const FiniteField& F = *rep1.F;
    int m = static_cast<int>(rep1.gens.size());
    BrauerVerdict verdict;

    std::vector<FqMat> inv1, inv2;
    for (const FqMat& g : rep1.gens) inv1.push_back(fq_inverse(g));
    for (const FqMat& g : rep2.gens) inv2.push_back(fq_inverse(g));
    auto letter1 = [&](int l) { return l < m ? rep1.gens[l] : inv1[l - m]; };
    auto letter2 = [&](int l) { return l < m ? rep2.gens[l] : inv2[l - m]; };

    std::vector<int> stack_letters;
    std::vector<FqMat> prod1{FqMat::identity(F, rep1.dim)};
    std::vector<FqMat> prod2{FqMat::identity(F, rep2.dim)};

    auto check_top = [&]() {
        ++verdict.words_checked;
        return fq_charpoly(prod1.back()) == fq_charpoly(prod2.back());
    };
    if (!check_top()) {
        verdict.consistent = false;
        return verdict;
    }

    // iterative DFS over reduced words (no letter followed by its inverse)
    std::vector<int> next_letter{0};
    while (!next_letter.empty()) {
        int depth = static_cast<int>(next_letter.size()) - 1;
        int l = next_letter.back();
        if (l >= 2 * m || depth >= maxlen) {
            next_letter.pop_back();
            if (!stack_letters.empty() && static_cast<int>(stack_letters.size()) == depth) {
                stack_letters.pop_back();
                prod1.pop_back();
                prod2.pop_back();
            }
            if (!next_letter.empty()) ++next_letter.back();
            continue;
        }
        int prev = stack_letters.empty() ? -1 : stack_letters.back();
        bool cancels = prev >= 0 && (prev + m) % (2 * m) == l;
        if (cancels) {
            ++next_letter.back();
            continue;
        }
        stack_letters.push_back(l);
        prod1.push_back(fq_mul(prod1.back(), letter1(l)));
        prod2.push_back(fq_mul(prod2.back(), letter2(l)));
        if (!check_top()) {
            verdict.consistent = false;
            for (int letter : stack_letters) verdict.word.push_back(letter < m ? letter + 1 : -(letter - m + 1));
            return verdict;
        }
        next_letter.push_back(0);
    }
    return verdict;
}

// irreducible + one-dimensional commutant. When irreducible with a larger
// commutant, the commutant is a field extension of degree commutant_dim.
struct Irreducibility {
    bool irreducible = false;
    bool absolutely_irreducible = false;
    int commutant_dim = 0;
};

inline Irreducibility is_absolutely_irreducible(const FqMatrixRep& rep) {
    rep.check_cap();
    const FiniteField& F = *rep.F;
    Irreducibility out;
    if (rep.dim == 0) return out;
    FqMat minimal = detail::minimal_submodule(rep);
    out.irreducible = minimal.rows == rep.dim;
    // commutant: kernel of X -> (X g - g X for all generators)
    int d = rep.dim;
    int ng = static_cast<int>(rep.gens.size());
    FqMat sys(F, ng * d * d, d * d);
    int row = 0;
    for (const FqMat& g : rep.gens)
        for (int a = 0; a < d; ++a)
            for (int b = 0; b < d; ++b, ++row) {
                // (X g - g X)[a][b] = sum_k X[a][k] g[k][b] - g[a][k] X[k][b]
                for (int k = 0; k < d; ++k) {
                    sys(row, a * d + k) = F.add(sys(row, a * d + k), g(k, b));
                    sys(row, k * d + b) = F.sub(sys(row, k * d + b), g(a, k));
                }
            }
    out.commutant_dim = fq_kernel(sys).rows;
    out.absolutely_irreducible = out.irreducible && out.commutant_dim == 1;
    return out;
}

// Stable irreducible summands when the module is semisimple (each flag step
// splits off by an equivariant projection), nullopt otherwise.
inline std::optional<std::vector<FqMat>> decompose_semisimple(const FqMatrixRep& rep) {
    rep.check_cap();
    const FiniteField& F = *rep.F;
    std::vector<FqMat> summands;

    std::vector<FqMat> gens = rep.gens;
    FqMat lift = FqMat::identity(F, rep.dim);  // rows: ambient representatives
    int remaining = rep.dim;
    while (remaining > 0) {
        FqMatrixRep cur(F, remaining, gens);
        FqMat sub = detail::minimal_submodule(cur);
        std::vector<int> sub_piv = detail::pivots_of(sub);
        // ambient rows of the summand
        FqMat amb(F, sub.rows, rep.dim);
        for (int r = 0; r < sub.rows; ++r)
            for (int j = 0; j < remaining; ++j) {
                if (sub(r, j) == 0) continue;
                for (int t = 0; t < rep.dim; ++t) amb(r, t) = F.add(amb(r, t), F.mul(sub(r, j), lift(j, t)));
            }
        fq_echelon(amb);
        summands.push_back(amb);
        if (sub.rows == remaining) break;

        // find an equivariant projection pi = W^T Y with Y W^T = I, pi g = g pi
        int w = sub.rows, d = remaining;
        FqMat wt(F, d, w);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < w; ++j) wt(i, j) = sub(j, i);
        int unknowns = w * d;
        std::vector<FqVec> rows_sys;
        std::vector<FiniteField::Elt> rhs;
        // Y W^T = I_w
        for (int i = 0; i < w; ++i)
            for (int j = 0; j < w; ++j) {
                FqVec r(unknowns, 0);
                for (int k = 0; k < d; ++k) r[i * d + k] = wt(k, j);
                rows_sys.push_back(std::move(r));
                rhs.push_back(i == j ? F.one() : F.zero());
            }
        // W^T Y g = g W^T Y
        for (const FqMat& g : gens)
            for (int a = 0; a < d; ++a)
                for (int b = 0; b < d; ++b) {
                    FqVec r(unknowns, 0);
                    // lhs: sum_{i,k} wt[a][i] Y[i][k] g[k][b]
                    for (int i = 0; i < w; ++i)
                        for (int k = 0; k < d; ++k)
                            r[i * d + k] = F.add(r[i * d + k], F.mul(wt(a, i), g(k, b)));
                    // rhs: sum_{k,i} g[a][k] wt[k][i] Y[i][b]
                    for (int k = 0; k < d; ++k)
                        for (int i = 0; i < w; ++i)
                            r[i * d + b] = F.sub(r[i * d + b], F.mul(g(a, k), wt(k, i)));
                    rows_sys.push_back(std::move(r));
                    rhs.push_back(0);
                }
        // solve the affine system
        int nr = static_cast<int>(rows_sys.size());
        FqMat aug(F, nr, unknowns + 1);
        for (int i = 0; i < nr; ++i) {
            for (int j = 0; j < unknowns; ++j) aug(i, j) = rows_sys[i][j];
            aug(i, unknowns) = rhs[i];
        }
        std::vector<int> piv;
        fq_echelon(aug, &piv);
        bool solvable = true;
        for (int c : piv)
            if (c == unknowns) solvable = false;
        if (!solvable) return std::nullopt;
        FqVec y(unknowns, 0);
        for (size_t r = 0; r < piv.size(); ++r) y[piv[r]] = aug(static_cast<int>(r), unknowns);
        // complement = ker Y (g-stable since pi is equivariant)
        FqMat ymat(F, w, d);
        for (int i = 0; i < w; ++i)
            for (int k = 0; k < d; ++k) ymat(i, k) = y[i * d + k];
        FqMat comp = fq_kernel(ymat);
        if (comp.rows != d - w) return std::nullopt;
        fq_echelon(comp);
        std::vector<int> comp_piv = detail::pivots_of(comp);
        std::vector<FqMat> ngens;
        for (const FqMat& g : gens) ngens.push_back(detail::restrict_to_subspace(F, g, comp, comp_piv));
        FqMat nlift(F, comp.rows, rep.dim);
        for (int r = 0; r < comp.rows; ++r)
            for (int j = 0; j < d; ++j) {
                if (comp(r, j) == 0) continue;
                for (int t = 0; t < rep.dim; ++t) nlift(r, t) = F.add(nlift(r, t), F.mul(comp(r, j), lift(j, t)));
            }
        gens = std::move(ngens);
        lift = std::move(nlift);
        remaining = d - w;
    }
    return summands;
}

inline bool is_semisimple(const FqMatrixRep& rep) { return decompose_semisimple(rep).has_value(); }

// Module isomorphism search between rep and a semisimple target: decompose
// rep into stable irreducible summands, match them against the target's
// summands by Hom-space solves (any nonzero hom between irreducibles is an
// isomorphism), and assemble a conjugating witness. The witness is verified
// by explicit conjugation, so a returned matrix is always correct; failure
// to decompose certifies non-isomorphism because conjugates of semisimple
// representations are semisimple.
inline std::optional<FqMat> conjugating_witness(const FqMatrixRep& rep, const FqMatrixRep& target) {
    if (rep.dim != target.dim || rep.gens.size() != target.gens.size()) return std::nullopt;
    const FiniteField& F = *rep.F;
    auto src = decompose_semisimple(rep);
    if (!src) return std::nullopt;
    auto tgt = decompose_semisimple(target);
    if (!tgt) return std::nullopt;
    if (src->size() != tgt->size()) return std::nullopt;
    int k = static_cast<int>(src->size());

    auto modules_of = [&](const FqMatrixRep& r, const std::vector<FqMat>& bases) {
        std::vector<std::vector<FqMat>> mods;
        for (const FqMat& b : bases) {
            std::vector<int> piv = detail::pivots_of(b);
            std::vector<FqMat> ms;
            for (const FqMat& g : r.gens) ms.push_back(detail::restrict_to_subspace(F, g, b, piv));
            mods.push_back(std::move(ms));
        }
        return mods;
    };
    auto smods = modules_of(rep, *src), tmods = modules_of(target, *tgt);

    // Hom(src_i, tgt_j): X with X A = B X for all generator pairs
    auto hom_iso = [&](const std::vector<FqMat>& a, const std::vector<FqMat>& b) -> std::optional<FqMat> {
        if (a.empty() || a[0].rows != b[0].rows) return std::nullopt;
        int d = a[0].rows;
        FqMat sys(F, static_cast<int>(a.size()) * d * d, d * d);
        int row = 0;
        for (size_t gi = 0; gi < a.size(); ++gi)
            for (int i = 0; i < d; ++i)
                for (int j = 0; j < d; ++j, ++row)
                    for (int t = 0; t < d; ++t) {
                        sys(row, i * d + t) = F.add(sys(row, i * d + t), a[gi](t, j));
                        sys(row, t * d + j) = F.sub(sys(row, t * d + j), b[gi](i, t));
                    }
        FqMat ker = fq_kernel(sys);
        if (ker.rows == 0) return std::nullopt;
        FqMat x(F, d, d);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) x(i, j) = ker(0, i * d + j);
        if (!fq_invertible(x)) return std::nullopt;  // cannot happen for irreducibles
        return x;
    };

    std::vector<int> match(k, -1);
    std::vector<FqMat> isos(k);
    std::vector<bool> used(k, false);
    for (int j = 0; j < k; ++j) {
        for (int i = 0; i < k; ++i) {
            if (used[i] || (*src)[i].rows != (*tgt)[j].rows) continue;
            auto x = hom_iso(smods[i], tmods[j]);
            if (x) {
                match[j] = i;
                isos[j] = *x;
                used[i] = true;
                break;
            }
        }
        if (match[j] < 0) return std::nullopt;
    }

    // assemble the ambient witness: coordinates w.r.t. the source summands,
    // map through the per-block isomorphisms, land in the target summands
    FqMat bsrc(F, rep.dim, rep.dim);
    {
        int row = 0;
        for (const FqMat& b : *src)
            for (int r = 0; r < b.rows; ++r, ++row)
                for (int t = 0; t < rep.dim; ++t) bsrc(row, t) = b(r, t);
    }
    FqMat coords = fq_inverse(fq_transpose(bsrc));  // x -> block coordinates
    FqMat witness(F, rep.dim, rep.dim);
    std::vector<int> src_offsets(k + 1, 0);
    for (int i = 0; i < k; ++i) src_offsets[i + 1] = src_offsets[i] + (*src)[i].rows;
    for (int j = 0; j < k; ++j) {
        int i = match[j];
        const FqMat& tb = (*tgt)[j];
        const FqMat& x = isos[j];
        int bd = tb.rows;
        // contribution: T^T * X * (rows src_offsets[i]..) of coords
        for (int a = 0; a < rep.dim; ++a)
            for (int t = 0; t < rep.dim; ++t) {
                FiniteField::Elt acc = witness(a, t);
                for (int u = 0; u < bd; ++u)
                    for (int v = 0; v < bd; ++v)
                        acc = F.add(acc, F.mul(F.mul(tb(u, a), x(u, v)), coords(src_offsets[i] + v, t)));
                witness(a, t) = acc;
            }
    }
    if (!fq_invertible(witness)) return std::nullopt;
    FqMat winv = fq_inverse(witness);
    for (size_t gi = 0; gi < rep.gens.size(); ++gi) {
        FqMat lhs = fq_mul(fq_mul(witness, rep.gens[gi]), winv);
        if (!(lhs == target.gens[gi])) return std::nullopt;
    }
    return witness;
}

}  // namespace defspace
