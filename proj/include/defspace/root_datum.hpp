#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "defspace/finite_group.hpp"
#include "defspace/int_linalg.hpp"

namespace defspace {

inline constexpr int kMaxComponentGroupOrder = 64;
inline constexpr size_t kMaxRootCount = 1000;

// One root together with its coroot and its coordinates in the simple-root
// basis. chr lives in X^*, cochr in X_*.
struct Root {
    IVec chr;
    IVec cochr;
    IVec simple_coords;
    int height = 0;
};

enum class Isogeny { SimplyConnected, Adjoint, Explicit };

// Based root datum: character lattice X^* = Z^rank with chosen simple roots,
// cocharacter lattice X_* the dual with chosen simple coroots. The pairing is
// the standard dot product between the two coordinate systems.
class BasedRootDatum {
  public:
    BasedRootDatum(int rank, std::vector<IVec> simple_roots, std::vector<IVec> simple_coroots,
                   std::string series = "explicit")
        : rank_(rank), simple_roots_(std::move(simple_roots)), simple_coroots_(std::move(simple_coroots)),
          series_(std::move(series)) {
        validate_and_close();
    }

    static BasedRootDatum torus(int rank) { return BasedRootDatum(rank, {}, {}, "T" + std::to_string(rank)); }

    int rank() const { return rank_; }
    const std::string& series() const { return series_; }
    int num_simple() const { return static_cast<int>(simple_roots_.size()); }
    const std::vector<IVec>& simple_roots() const { return simple_roots_; }
    const std::vector<IVec>& simple_coroots() const { return simple_coroots_; }
    const std::vector<Root>& roots() const { return roots_; }
    int num_roots() const { return static_cast<int>(roots_.size()); }
    int num_positive() const { return num_roots() / 2; }

    // roots are stored positives first (by height, then lex on simple-basis
    // coordinates), then the negatives in matching order.
    const Root& root(int i) const { return roots_[i]; }
    int negative_of(int i) const { return i < num_positive() ? i + num_positive() : i - num_positive(); }
    bool is_positive(int i) const { return i < num_positive(); }

    Int cartan(int i, int j) const { return ivec_dot(simple_roots_[i], simple_coroots_[j]); }

    IMat cartan_matrix() const {
        int n = num_simple();
        IMat c(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) c(i, j) = cartan(i, j);
        return c;
    }

    int dim() const { return rank_ + num_roots(); }

    bool is_semisimple() const {
        if (num_simple() == 0) return rank_ == 0;
        return imat_rank(IMat::from_rows(simple_roots_, rank_)) == rank_;
    }

    // index of a root given by X^*-coordinates, or -1
    int find_root(const IVec& chr) const {
        auto it = root_index_.find(chr);
        return it == root_index_.end() ? -1 : it->second;
    }

    // Squared length of a root in the canonical W-invariant form, scaled so
    // values are integers. Used for structure-constant bookkeeping.
    Int length_sq_num(int ri) const { return length_num_[ri]; }
    Int length_sq_den() const { return length_den_; }

  private:
    int rank_;
    std::vector<IVec> simple_roots_;
    std::vector<IVec> simple_coroots_;
    std::string series_;
    std::vector<Root> roots_;
    std::map<IVec, int> root_index_;
    std::vector<Int> length_num_;
    Int length_den_ = 1;

    void validate_and_close() {
        int ns = num_simple();
        if (rank_ < 0) throw std::invalid_argument("root datum: negative rank");
        for (const auto& v : simple_roots_)
            if (static_cast<int>(v.size()) != rank_) throw std::invalid_argument("root datum: simple root of wrong length");
        for (const auto& v : simple_coroots_)
            if (static_cast<int>(v.size()) != rank_) throw std::invalid_argument("root datum: simple coroot of wrong length");
        if (static_cast<int>(simple_coroots_.size()) != ns)
            throw std::invalid_argument("root datum: #simple roots != #simple coroots");
        if (ns == 0) return;
        if (imat_rank(IMat::from_rows(simple_roots_, rank_)) != ns)
            throw std::invalid_argument("root datum: simple roots are linearly dependent");
        if (imat_rank(IMat::from_rows(simple_coroots_, rank_)) != ns)
            throw std::invalid_argument("root datum: simple coroots are linearly dependent");

        // Cartan matrix shape checks
        for (int i = 0; i < ns; ++i) {
            if (cartan(i, i) != 2) throw std::invalid_argument("root datum: Cartan diagonal entry != 2");
            for (int j = 0; j < ns; ++j) {
                if (i == j) continue;
                Int cij = cartan(i, j), cji = cartan(j, i);
                if (cij > 0 || cji > 0) throw std::invalid_argument("root datum: positive off-diagonal Cartan entry");
                if ((cij == 0) != (cji == 0)) throw std::invalid_argument("root datum: Cartan zero pattern not symmetric");
            }
        }
        check_positive_definite();
        close_roots();
        compute_lengths();
    }

    // d_i C_ij symmetric with d_i > 0, then Sylvester's criterion.
    void check_positive_definite() {
        int ns = num_simple();
        std::vector<Int> dnum(ns, 0), dden(ns, 1);
        for (int start = 0; start < ns; ++start) {
            if (dnum[start] != 0) continue;
            dnum[start] = 1;
            std::vector<int> stack{start};
            while (!stack.empty()) {
                int i = stack.back();
                stack.pop_back();
                for (int j = 0; j < ns; ++j) {
                    if (j == i || cartan(i, j) == 0) continue;
                    Int nn = dnum[i] * cartan(i, j);
                    Int dd = dden[i] * cartan(j, i);
                    if (dd < 0) { nn = -nn; dd = -dd; }
                    Int g = int_gcd(nn, dd);
                    if (g > 1) { nn /= g; dd /= g; }
                    if (dnum[j] == 0) {
                        dnum[j] = nn;
                        dden[j] = dd;
                        stack.push_back(j);
                    } else if (dnum[j] * dd != nn * dden[j]) {
                        throw std::invalid_argument("root datum: Cartan matrix is not symmetrisable");
                    }
                }
            }
        }
        Int lcm = 1;
        for (int i = 0; i < ns; ++i) lcm = lcm / int_gcd(lcm, dden[i]) * dden[i];
        IMat s(ns, ns);
        for (int i = 0; i < ns; ++i)
            for (int j = 0; j < ns; ++j) s(i, j) = dnum[i] * (lcm / dden[i]) * cartan(i, j);
        for (int i = 0; i < ns; ++i)
            if (dnum[i] <= 0) throw std::invalid_argument("root datum: non-positive symmetriser");
        for (int k = 1; k <= ns; ++k) {
            IMat minor(k, k);
            for (int i = 0; i < k; ++i)
                for (int j = 0; j < k; ++j) minor(i, j) = s(i, j);
            if (imat_det(minor) <= 0)
                throw std::invalid_argument("root datum: Cartan matrix is not of finite type");
        }
    }

    void close_roots() {
        int ns = num_simple();
        std::map<IVec, Root> seen;
        std::vector<Root> frontier;
        for (int i = 0; i < ns; ++i) {
            Root r;
            r.chr = simple_roots_[i];
            r.cochr = simple_coroots_[i];
            r.simple_coords = IVec(ns, 0);
            r.simple_coords[i] = 1;
            r.height = 1;
            seen[r.chr] = r;
            frontier.push_back(r);
        }
        while (!frontier.empty()) {
            std::vector<Root> next;
            for (const Root& r : frontier) {
                for (int j = 0; j < ns; ++j) {
                    Int pairing = ivec_dot(r.chr, simple_coroots_[j]);
                    Int copairing = ivec_dot(simple_roots_[j], r.cochr);
                    Root s;
                    s.chr = r.chr;
                    s.cochr = r.cochr;
                    s.simple_coords = r.simple_coords;
                    for (int t = 0; t < rank_; ++t) {
                        s.chr[t] -= pairing * simple_roots_[j][t];
                        s.cochr[t] -= copairing * simple_coroots_[j][t];
                    }
                    s.simple_coords[j] -= pairing;
                    s.height = 0;
                    for (Int c : s.simple_coords) s.height += static_cast<int>(c);
                    if (seen.count(s.chr)) continue;
                    seen[s.chr] = s;
                    next.push_back(s);
                    if (seen.size() > kMaxRootCount) throw std::invalid_argument("root datum: root closure does not terminate");
                }
            }
            frontier = std::move(next);
        }
        std::vector<Root> pos, neg;
        for (auto& [chr, r] : seen) {
            bool all_nonneg = std::all_of(r.simple_coords.begin(), r.simple_coords.end(), [](Int c) { return c >= 0; });
            bool all_nonpos = std::all_of(r.simple_coords.begin(), r.simple_coords.end(), [](Int c) { return c <= 0; });
            if (all_nonneg == all_nonpos) throw std::invalid_argument("root datum: mixed-sign root found");
            (all_nonneg ? pos : neg).push_back(r);
        }
        if (pos.size() != neg.size()) throw std::invalid_argument("root datum: root set is not symmetric");
        auto cmp = [](const Root& a, const Root& b) {
            if (a.height != b.height) return a.height < b.height;
            return a.simple_coords < b.simple_coords;
        };
        std::sort(pos.begin(), pos.end(), cmp);
        roots_.clear();
        roots_.reserve(2 * pos.size());
        for (const Root& r : pos) roots_.push_back(r);
        for (const Root& r : pos) {
            IVec mchr(rank_), mco(rank_), msc(ns);
            for (int t = 0; t < rank_; ++t) mchr[t] = -r.chr[t];
            for (int t = 0; t < rank_; ++t) mco[t] = -r.cochr[t];
            for (int t = 0; t < ns; ++t) msc[t] = -r.simple_coords[t];
            if (!seen.count(mchr)) throw std::invalid_argument("root datum: -root missing from closure");
            Root m;
            m.chr = mchr;
            m.cochr = mco;
            m.simple_coords = msc;
            m.height = -r.height;
            roots_.push_back(m);
        }
        for (int i = 0; i < num_roots(); ++i) root_index_[roots_[i].chr] = i;
        // no multiple of a root besides +-1
        for (const Root& r : roots_) {
            for (Int k = 2; k <= 3; ++k) {
                IVec mult(rank_);
                for (int t = 0; t < rank_; ++t) mult[t] = k * r.chr[t];
                if (root_index_.count(mult)) throw std::invalid_argument("root datum: non-reduced root system");
            }
        }
        // coroots distinct <=> |Phi| = |Phi^vee|
        std::set<IVec> coset;
        for (const Root& r : roots_) coset.insert(r.cochr);
        if (coset.size() != roots_.size()) throw std::invalid_argument("root datum: coroot count mismatch");
    }

    void compute_lengths() {
        int ns = num_simple();
        // squared lengths of the simple roots: l_j / l_i = C_ji / C_ij, then
        // Gram_ij = (alpha_i, alpha_j) = l_j * C_ij / 2
        std::vector<Int> lnum(ns, 0), lden(ns, 1);
        for (int start = 0; start < ns; ++start) {
            if (lnum[start] != 0) continue;
            lnum[start] = 2;  // normalise (alpha,alpha) = 2 on the component
            std::vector<int> stack{start};
            while (!stack.empty()) {
                int i = stack.back();
                stack.pop_back();
                for (int j = 0; j < ns; ++j) {
                    if (j == i || cartan(i, j) == 0 || lnum[j] != 0) continue;
                    Int nn = lnum[i] * cartan(j, i);
                    Int dd = lden[i] * cartan(i, j);
                    if (dd < 0) { nn = -nn; dd = -dd; }
                    Int g = int_gcd(nn, dd);
                    if (g > 1) { nn /= g; dd /= g; }
                    lnum[j] = nn;
                    lden[j] = dd;
                    stack.push_back(j);
                }
            }
        }
        Int lcm = 1;
        for (int i = 0; i < ns; ++i) lcm = lcm / int_gcd(lcm, lden[i]) * lden[i];
        // integer Gram matrix scaled by 2*lcm: s(i,j) = lcm * l_j * C_ij / lden_j
        IMat s(ns, ns);
        for (int i = 0; i < ns; ++i)
            for (int j = 0; j < ns; ++j) s(i, j) = (lcm / lden[j]) * lnum[j] * cartan(i, j);
        for (int i = 0; i < ns; ++i)
            for (int j = 0; j < ns; ++j)
                if (s(i, j) != s(j, i)) throw std::logic_error("root datum: Gram matrix asymmetric");
        length_den_ = 2 * lcm;
        length_num_.resize(num_roots());
        for (int ri = 0; ri < num_roots(); ++ri) {
            const IVec& m = roots_[ri].simple_coords;
            Int acc = 0;
            for (int i = 0; i < ns; ++i)
                for (int j = 0; j < ns; ++j) acc += m[i] * s(i, j) * m[j];
            length_num_[ri] = acc;
        }
    }
};

namespace detail {

inline IMat standard_cartan(char series, int rank) {
    auto bad = [&] {
        throw std::invalid_argument(std::string("invalid Dynkin type ") + series + std::to_string(rank));
    };
    IMat c(rank, rank);
    for (int i = 0; i < rank; ++i) c(i, i) = 2;
    auto link = [&](int i, int j, Int cij, Int cji) {
        c(i, j) = cij;
        c(j, i) = cji;
    };
    switch (series) {
        case 'A':
            if (rank < 1) bad();
            for (int i = 0; i + 1 < rank; ++i) link(i, i + 1, -1, -1);
            break;
        case 'B':  // last simple root short
            if (rank < 2) bad();
            for (int i = 0; i + 2 < rank; ++i) link(i, i + 1, -1, -1);
            link(rank - 2, rank - 1, -2, -1);
            break;
        case 'C':  // last simple root long
            if (rank < 2) bad();
            for (int i = 0; i + 2 < rank; ++i) link(i, i + 1, -1, -1);
            link(rank - 2, rank - 1, -1, -2);
            break;
        case 'D':
            if (rank < 3) bad();
            for (int i = 0; i + 2 < rank; ++i) link(i, i + 1, -1, -1);
            link(rank - 3, rank - 1, -1, -1);
            break;
        case 'E':
            if (rank < 6 || rank > 8) bad();
            // Bourbaki numbering: node 2 attaches to node 4 (1-based)
            link(0, 2, -1, -1);
            link(2, 3, -1, -1);
            link(1, 3, -1, -1);
            for (int i = 3; i + 1 < rank; ++i) link(i, i + 1, -1, -1);
            break;
        case 'F':
            if (rank != 4) bad();
            link(0, 1, -1, -1);
            link(1, 2, -2, -1);
            link(2, 3, -1, -1);
            break;
        case 'G':
            if (rank != 2) bad();
            link(0, 1, -1, -3);
            break;
        default:
            bad();
    }
    return c;
}

}  // namespace detail

// Simply connected datum of a Cartan matrix: X_* has the simple coroots as its
// standard basis.
inline BasedRootDatum datum_from_cartan_sc(const IMat& c, const std::string& series = "explicit") {
    int n = c.rows;
    std::vector<IVec> roots(n), coroots(n);
    for (int i = 0; i < n; ++i) {
        roots[i] = c.row(i);
        coroots[i] = IVec(n, 0);
        coroots[i][i] = 1;
    }
    return BasedRootDatum(n, roots, coroots, series);
}

// Adjoint datum: X^* has the simple roots as its standard basis.
inline BasedRootDatum datum_from_cartan_adjoint(const IMat& c, const std::string& series = "explicit") {
    int n = c.rows;
    std::vector<IVec> roots(n), coroots(n);
    for (int i = 0; i < n; ++i) {
        roots[i] = IVec(n, 0);
        roots[i][i] = 1;
        coroots[i] = IVec(n);
        for (int k = 0; k < n; ++k) coroots[i][k] = c(k, i);
    }
    return BasedRootDatum(n, roots, coroots, series);
}

// Intermediate isogeny: X^* is spanned by the given rows, in fundamental
// weight coordinates. Must contain the root lattice (rows of the Cartan
// matrix); containment in the weight lattice is integrality of the rows.
inline BasedRootDatum datum_from_cartan_explicit(const IMat& c, const IMat& lattice_rows,
                                                 const std::string& series = "explicit") {
    int n = c.rows;
    if (lattice_rows.rows != n || lattice_rows.cols != n)
        throw std::invalid_argument("isogeny lattice must be a square basis matrix of full rank");
    if (imat_det(lattice_rows) == 0) throw std::invalid_argument("isogeny lattice rows are linearly dependent");
    std::vector<IVec> roots(n), coroots(n);
    for (int i = 0; i < n; ++i) {
        IVec x;
        if (!integer_solve_left(lattice_rows, c.row(i), x))
            throw std::invalid_argument("isogeny lattice does not contain the root lattice");
        roots[i] = x;
    }
    for (int j = 0; j < n; ++j) {
        coroots[j] = IVec(n);
        for (int k = 0; k < n; ++k) coroots[j][k] = lattice_rows(k, j);
    }
    return BasedRootDatum(n, roots, coroots, series);
}

inline BasedRootDatum build_simple(char series, int rank, Isogeny iso, const IMat* lattice_rows = nullptr) {
    IMat c = detail::standard_cartan(series, rank);
    std::string name = std::string(1, series) + std::to_string(rank);
    switch (iso) {
        case Isogeny::SimplyConnected:
            return datum_from_cartan_sc(c, name);
        case Isogeny::Adjoint:
            return datum_from_cartan_adjoint(c, name + "ad");
        case Isogeny::Explicit:
            if (!lattice_rows) throw std::invalid_argument("build_simple: explicit isogeny needs lattice rows");
            return datum_from_cartan_explicit(c, *lattice_rows, name + "x");
    }
    throw std::invalid_argument("build_simple: unknown isogeny");
}

// Blockwise concatenation of two data.
inline BasedRootDatum datum_product(const BasedRootDatum& a, const BasedRootDatum& b) {
    int n = a.rank() + b.rank();
    std::vector<IVec> roots, coroots;
    auto pad_left = [&](const IVec& v) {
        IVec out(n, 0);
        std::copy(v.begin(), v.end(), out.begin());
        return out;
    };
    auto pad_right = [&](const IVec& v) {
        IVec out(n, 0);
        std::copy(v.begin(), v.end(), out.begin() + a.rank());
        return out;
    };
    for (const auto& r : a.simple_roots()) roots.push_back(pad_left(r));
    for (const auto& r : b.simple_roots()) roots.push_back(pad_right(r));
    for (const auto& r : a.simple_coroots()) coroots.push_back(pad_left(r));
    for (const auto& r : b.simple_coroots()) coroots.push_back(pad_right(r));
    return BasedRootDatum(n, roots, coroots, a.series() + "x" + b.series());
}

inline BasedRootDatum datum_gl(int n) {
    if (n < 1) throw std::invalid_argument("GL rank must be >= 1");
    std::vector<IVec> roots, coroots;
    for (int i = 0; i + 1 < n; ++i) {
        IVec v(n, 0);
        v[i] = 1;
        v[i + 1] = -1;
        roots.push_back(v);
        coroots.push_back(v);
    }
    return BasedRootDatum(n, roots, coroots, "GL" + std::to_string(n));
}

// Derived datum: restrict to the saturation of the coroot lattice in X_*.
inline BasedRootDatum derived_datum(const BasedRootDatum& d) {
    int ns = d.num_simple();
    if (ns == 0) return BasedRootDatum(0, {}, {}, d.series() + "'");
    IMat cor = IMat::from_rows(d.simple_coroots(), d.rank());
    IMat sat = lattice_saturation(cor);  // ns x rank
    std::vector<IVec> roots(ns), coroots(ns);
    for (int j = 0; j < ns; ++j) {
        IVec x;
        if (!integer_solve_left(sat, d.simple_coroots()[j], x))
            throw std::logic_error("derived_datum: coroot not in saturation");
        coroots[j] = x;
    }
    for (int i = 0; i < ns; ++i) {
        roots[i] = IVec(ns);
        for (int k = 0; k < ns; ++k) roots[i][k] = ivec_dot(d.simple_roots()[i], sat.row(k));
    }
    return BasedRootDatum(ns, roots, coroots, d.series() + "'");
}

// Invariant factors of (X_* cap Q Phi^vee) / Z Phi^vee.
inline IVec pi1_derived(const BasedRootDatum& d) {
    if (d.num_simple() == 0) return {};
    return invariant_factors(IMat::from_rows(d.simple_coroots(), d.rank()));
}

inline bool is_pi1_etale(const BasedRootDatum& d, Int p) {
    for (Int n : pi1_derived(d))
        if (n % p == 0) return false;
    return true;
}

// Lattice-level cover with fundamental group the prime-to-p part of pi1.
// Applied to the derived datum when the input is not semisimple.
inline BasedRootDatum etale_pi1_cover(const BasedRootDatum& d, Int p) {
    if (!d.is_semisimple()) return etale_pi1_cover(derived_datum(d), p);
    int n = d.rank();
    if (n == 0) return d;
    IMat cor = IMat::from_rows(d.simple_coroots(), n);
    SmithResult s = smith_normal_form(cor);
    if (s.rank != n) throw std::logic_error("etale_pi1_cover: semisimple datum with degenerate coroots");
    // saturation basis rows w_i = rows of V^{-1}; coroot lattice = {d_i w_i};
    // intermediate lattice rows: p-part(d_i) * w_i.
    IMat newbasis(n, n);
    for (int i = 0; i < n; ++i) {
        Int di = std::llabs(s.d(i, i));
        Int ppart = 1;
        while (di % p == 0) {
            ppart *= p;
            di /= p;
        }
        for (int j = 0; j < n; ++j) newbasis(i, j) = ppart * s.vinv(i, j);
    }
    std::vector<IVec> roots(n), coroots(n);
    for (int j = 0; j < n; ++j) {
        IVec x;
        if (!integer_solve_left(newbasis, d.simple_coroots()[j], x))
            throw std::logic_error("etale_pi1_cover: coroot lattice not contained in cover lattice");
        coroots[j] = x;
    }
    for (int i = 0; i < n; ++i) {
        roots[i] = IVec(n);
        for (int k = 0; k < n; ++k) roots[i][k] = ivec_dot(d.simple_roots()[i], newbasis.row(k));
    }
    return BasedRootDatum(n, roots, coroots, d.series() + std::string("/cover"));
}

// A finite component group acting on X^* by pinned lattice automorphisms.
// Action matrices act on column vectors of X^*-coordinates; the induced
// action on X_* is by inverse transpose.
class GenReductiveDatum {
  public:
    GenReductiveDatum(BasedRootDatum base, FiniteGroup delta, std::vector<IMat> action)
        : base_(std::move(base)), delta_(std::move(delta)), action_(std::move(action)) {
        validate();
    }

    static GenReductiveDatum with_trivial_group(BasedRootDatum base) {
        int n = base.rank();
        return GenReductiveDatum(std::move(base), FiniteGroup::trivial(), {IMat::identity(n)});
    }

    const BasedRootDatum& base() const { return base_; }
    const FiniteGroup& component_group() const { return delta_; }
    const std::vector<IMat>& action() const { return action_; }
    const IMat& action_of(int g) const { return action_[g]; }
    bool has_trivial_group() const { return delta_.order() == 1; }

    int dim() const { return base_.dim(); }

    // permutation of root indices induced by element g
    std::vector<int> root_permutation(int g) const {
        const IMat& m = action_[g];
        std::vector<int> perm(base_.num_roots());
        for (int i = 0; i < base_.num_roots(); ++i) {
            int img = base_.find_root(imat_apply(m, base_.root(i).chr));
            if (img < 0) throw std::logic_error("root_permutation: action does not permute roots");
            perm[i] = img;
        }
        return perm;
    }

  private:
    BasedRootDatum base_;
    FiniteGroup delta_;
    std::vector<IMat> action_;

    void validate() {
        int n = base_.rank();
        int ord = delta_.order();
        if (ord > kMaxComponentGroupOrder)
            throw std::invalid_argument("component group order above cap");
        if (static_cast<int>(action_.size()) != ord)
            throw std::invalid_argument("action: one matrix per group element required");
        for (const IMat& m : action_) {
            if (m.rows != n || m.cols != n) throw std::invalid_argument("action: matrix of wrong size");
            if (!is_unimodular(m)) throw std::invalid_argument("action: matrix is not a lattice automorphism");
        }
        for (int g = 0; g < ord; ++g)
            for (int h = 0; h < ord; ++h)
                if (!(imat_mul(action_[g], action_[h]) == action_[delta_.mul(g, h)]))
                    throw std::invalid_argument("action: not a group homomorphism");
        if (!(action_[delta_.identity] == IMat::identity(n)))
            throw std::invalid_argument("action: identity element must act trivially");

        // pinned: permutes Phi, permutes the simple roots, and the inverse
        // transpose matches on coroots.
        std::set<IVec> simple_set(base_.simple_roots().begin(), base_.simple_roots().end());
        for (const IMat& m : action_) {
            IMat minvt = imat_transpose(unimodular_inverse(m));
            for (int i = 0; i < base_.num_roots(); ++i) {
                IVec img = imat_apply(m, base_.root(i).chr);
                int j = base_.find_root(img);
                if (j < 0) throw std::invalid_argument("action: does not permute the root set");
                IVec coimg = imat_apply(minvt, base_.root(i).cochr);
                if (coimg != base_.root(j).cochr)
                    throw std::invalid_argument("action: coroot images inconsistent with root images");
            }
            for (const IVec& a : base_.simple_roots())
                if (!simple_set.count(imat_apply(m, a)))
                    throw std::invalid_argument("action is not pinned: simple roots not permuted");
        }
    }
};

// dim of the delta-invariants of (X^* / Z Phi) tensor Q, for the given set of
// root vectors. Used for centres of G and of its R-Levi subgroups.
inline int dim_center_of(int rank, const std::vector<IVec>& root_vectors, const std::vector<IMat>& action) {
    int rk_phi = 0;
    std::vector<IVec> ann;  // functionals vanishing on span(Phi)
    if (root_vectors.empty()) {
        for (int i = 0; i < rank; ++i) {
            IVec e(rank, 0);
            e[i] = 1;
            ann.push_back(e);
        }
    } else {
        IMat r = IMat::from_rows(root_vectors, rank);
        rk_phi = imat_rank(r);
        ann = rational_kernel(r);
    }
    if (ann.empty()) return 0;
    std::vector<IVec> cond_rows;
    for (const IMat& m : action) {
        IMat mi = m;
        for (int i = 0; i < rank; ++i) mi(i, i) -= 1;
        for (const IVec& f : ann) cond_rows.push_back(ivec_mul_mat(f, mi));
    }
    IMat big = IMat::from_rows(cond_rows, rank);
    int dim_k = static_cast<int>(rational_kernel(big).size());
    return dim_k - rk_phi;
}

inline int dim_Z(const GenReductiveDatum& g) {
    std::vector<IVec> rv;
    for (const Root& r : g.base().roots()) rv.push_back(r.chr);
    return dim_center_of(g.base().rank(), rv, g.action());
}

inline int dim_G(const GenReductiveDatum& g) { return g.dim(); }

// The saturated sublattice of X^* orthogonal to all coroots, with the induced
// component-group action.
struct TorusQuotientLattice {
    IMat basis;                 // rows, in X^*-coordinates
    std::vector<IMat> action;   // induced matrices, one per group element
};

inline TorusQuotientLattice torus_quotient_lattice(const GenReductiveDatum& g) {
    const BasedRootDatum& d = g.base();
    TorusQuotientLattice out;
    if (d.num_simple() == 0) {
        out.basis = IMat::identity(d.rank());
    } else {
        out.basis = integer_kernel(IMat::from_rows(d.simple_coroots(), d.rank()));
    }
    int m = out.basis.rows;
    for (const IMat& a : g.action()) {
        IMat induced(m, m);
        for (int i = 0; i < m; ++i) {
            IVec img = imat_apply(a, out.basis.row(i));
            IVec x;
            if (!integer_solve_left(out.basis, img, x))
                throw std::logic_error("torus_quotient_lattice: lattice not stable under action");
            for (int j = 0; j < m; ++j) induced(i, j) = x[j];
        }
        out.action.push_back(imat_transpose(induced));
    }
    return out;
}

}  // namespace defspace
