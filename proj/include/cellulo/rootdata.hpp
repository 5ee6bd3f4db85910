#pragma once

// Root data: the weight lattice X = Z^rank, roots/coroots, pairings,
// dominance, rho and the Coxeter number. Built-in constructors cover
// products of general linear groups and the simply-connected simple types
// of rank <= 2. Root data are immutable after construction; everything
// downstream holds read-only references.

#include "cellulo/common.hpp"
#include "cellulo/intmat.hpp"

#include <map>
#include <memory>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace cellulo {

/// Element of X x_Z Q. Weights of X proper have integer coordinates; rho
/// and rho-shifted quantities may be genuinely rational.
struct Weight {
    std::vector<Rat> c;

    Weight() = default;
    explicit Weight(std::vector<Rat> coords) : c(std::move(coords)) {}

    static Weight zero(std::size_t rank) { return Weight(std::vector<Rat>(rank, Rat(0))); }

    static Weight from_ints(const std::vector<long long>& v) {
        Weight w;
        w.c.reserve(v.size());
        for (long long x : v) w.c.emplace_back(x);
        return w;
    }

    std::size_t rank() const { return c.size(); }

    bool is_integral() const {
        for (const auto& x : c)
            if (x.denominator() != 1) return false;
        return true;
    }

    std::vector<long long> as_ints() const {
        std::vector<long long> v;
        v.reserve(c.size());
        for (const auto& x : c) v.push_back(rat_to_int(x));
        return v;
    }

    Weight& operator+=(const Weight& o) {
        for (std::size_t i = 0; i < c.size(); ++i) c[i] += o.c[i];
        return *this;
    }
    Weight& operator-=(const Weight& o) {
        for (std::size_t i = 0; i < c.size(); ++i) c[i] -= o.c[i];
        return *this;
    }
    friend Weight operator+(Weight a, const Weight& b) { return a += b; }
    friend Weight operator-(Weight a, const Weight& b) { return a -= b; }
    friend Weight operator*(long long k, Weight w) {
        for (auto& x : w.c) x *= k;
        return w;
    }
    Weight operator-() const {
        Weight w = *this;
        for (auto& x : w.c) x = -x;
        return w;
    }
    bool operator==(const Weight& o) const { return c == o.c; }
    bool operator!=(const Weight& o) const { return c != o.c; }
    bool operator<(const Weight& o) const { return c < o.c; }

    std::string str() const {
        std::ostringstream os;
        os << "(";
        for (std::size_t i = 0; i < c.size(); ++i) {
            if (i) os << ",";
            os << c[i].numerator();
            if (c[i].denominator() != 1) os << "/" << c[i].denominator();
        }
        os << ")";
        return os.str();
    }
};

/// Element of Y. Coroots stay integral throughout.
struct Coweight {
    std::vector<long long> c;

    Coweight() = default;
    explicit Coweight(std::vector<long long> coords) : c(std::move(coords)) {}
    bool operator==(const Coweight& o) const { return c == o.c; }
    bool operator<(const Coweight& o) const { return c < o.c; }
};

inline Rat pairing(const Weight& w, const Coweight& y) {
    Rat s(0);
    for (std::size_t i = 0; i < w.c.size(); ++i)
        if (y.c[i] != 0) s += w.c[i] * Rat(y.c[i]);
    return s;
}

inline long long pairing_int(const std::vector<long long>& w, const std::vector<long long>& y) {
    long long s = 0;
    for (std::size_t i = 0; i < w.size(); ++i) s += w[i] * y[i];
    return s;
}

struct PositiveRoot {
    std::vector<long long> root;
    std::vector<long long> coroot;
    long long height = 0;   // sum of simple-root coefficients
    int component = -1;     // irreducible component owning this root
};

class RootDatum;
using RootDatumPtr = std::shared_ptr<const RootDatum>;

class RootDatum {
public:
    /// GL_{a_1} x ... x GL_{a_k} with X = Z^(sum a_i), simple roots
    /// e_j - e_{j+1} within each block.
    static RootDatumPtr build_gl(const std::vector<long long>& a);

    /// Simply-connected simple datum of type A1, A2, B2 or G2 in the
    /// fundamental-weight basis.
    static RootDatumPtr build_simple(const std::string& type_label);

    static RootDatumPtr from_vectors(std::size_t rank,
                                     std::vector<std::vector<long long>> simple_roots,
                                     std::vector<std::vector<long long>> simple_coroots,
                                     std::string name,
                                     std::vector<long long> gl_blocks = {});

    std::size_t rank() const { return rank_; }
    const std::string& name() const { return name_; }
    std::size_t num_simples() const { return simple_roots_.size(); }
    const std::vector<std::vector<long long>>& simple_roots() const { return simple_roots_; }
    const std::vector<std::vector<long long>>& simple_coroots() const { return simple_coroots_; }

    /// cartan(i, j) = <alpha_j, alpha_i^vee>; rows are indexed by coroots.
    const IntMat& cartan() const { return cartan_; }

    /// Partition of simple indices into irreducible components.
    const std::vector<std::vector<int>>& components() const { return components_; }

    const std::vector<PositiveRoot>& positive_roots() const { return positive_roots_; }

    bool is_positive_root(const std::vector<long long>& v) const {
        return posroot_index_.count(v) != 0;
    }
    int positive_root_index(const std::vector<long long>& v) const {
        auto it = posroot_index_.find(v);
        return it == posroot_index_.end() ? -1 : it->second;
    }

    const Weight& rho() const { return rho_; }

    /// For GL data only: the central shift of rho with coordinates
    /// (a_i - 1, ..., 1, 0) per block. Differs from rho by a vector that
    /// pairs to zero with every coroot.
    bool has_integral_rho_shift() const { return !gl_blocks_.empty(); }
    Weight rho_integral() const;

    long long coxeter_number() const { return coxeter_number_; }

    bool is_dominant(const Weight& lambda) const {
        if (!lambda.is_integral())
            throw std::invalid_argument("is_dominant: weight is not in X");
        for (const auto& cv : simple_coroots_)
            if (pairing(lambda, Coweight(cv)) < Rat(0)) return false;
        return true;
    }

    bool is_antidominant(const Weight& lambda) const {
        if (!lambda.is_integral())
            throw std::invalid_argument("is_antidominant: weight is not in X");
        for (const auto& cv : simple_coroots_)
            if (pairing(lambda, Coweight(cv)) > Rat(0)) return false;
        return true;
    }

    /// Reflection matrix of s_i on X.
    IntMat simple_reflection_matrix(std::size_t i) const {
        return reflection_matrix(simple_roots_[i], simple_coroots_[i]);
    }

    IntMat reflection_matrix(const std::vector<long long>& root,
                             const std::vector<long long>& coroot) const {
        IntMat m = IntMat::identity(rank_);
        for (std::size_t r = 0; r < rank_; ++r)
            for (std::size_t cidx = 0; cidx < rank_; ++cidx)
                m(r, cidx) -= root[r] * coroot[cidx];
        return m;
    }

    /// Matrix of the longest element of the finite Weyl group.
    const IntMat& w0_matrix() const { return w0_; }

    /// True when the root lattice has finite index in X.
    bool is_semisimple() const { return semisimple_; }

    /// Representatives of X / Z Phi (only for semisimple data, where the
    /// quotient is finite).
    const std::vector<std::vector<long long>>& root_lattice_coset_reps() const {
        if (!semisimple_)
            throw std::invalid_argument("root_lattice_coset_reps: X/ZPhi is infinite for " + name_);
        return coset_reps_;
    }

    /// GL block sizes, empty for non-GL data.
    const std::vector<long long>& gl_blocks() const { return gl_blocks_; }

    /// First coordinate index of each GL block.
    const std::vector<std::size_t>& gl_block_offsets() const { return gl_block_offsets_; }

    /// Per component: index into positive_roots() of the root whose coroot
    /// is the highest coroot. Its level-one affine reflection is the extra
    /// Coxeter generator of that component.
    const std::vector<int>& affine_root_indices() const { return affine_root_indices_; }

private:
    RootDatum() = default;
    void finish();  // derives all cached structure and validates invariants

    std::size_t rank_ = 0;
    std::string name_;
    std::vector<std::vector<long long>> simple_roots_;
    std::vector<std::vector<long long>> simple_coroots_;
    IntMat cartan_;
    std::vector<std::vector<int>> components_;
    std::vector<PositiveRoot> positive_roots_;
    std::map<std::vector<long long>, int> posroot_index_;
    Weight rho_;
    long long coxeter_number_ = 1;
    IntMat w0_;
    bool semisimple_ = false;
    std::vector<std::vector<long long>> coset_reps_;
    std::vector<long long> gl_blocks_;
    std::vector<std::size_t> gl_block_offsets_;
    std::vector<int> affine_root_indices_;
};

/// Truncation and dilation parameters shared by the dot action, alcove and
/// cell computations.
struct Config {
    long long ell = 0;
    int ball_radius = 0;

    void validate(const RootDatum& d) const {
        if (ell <= d.coxeter_number())
            throw std::invalid_argument("config: ell must exceed the Coxeter number " +
                                        std::to_string(d.coxeter_number()) + " of " + d.name());
        if (ball_radius < 0) throw std::invalid_argument("config: ball_radius must be >= 0");
    }
};

// ---------------------------------------------------------------------------

inline Weight RootDatum::rho_integral() const {
    if (gl_blocks_.empty())
        throw std::invalid_argument("rho_integral: only defined for GL data");
    std::vector<Rat> c(rank_, Rat(0));
    for (std::size_t b = 0; b < gl_blocks_.size(); ++b)
        for (long long j = 0; j < gl_blocks_[b]; ++j)
            c[gl_block_offsets_[b] + j] = Rat(gl_blocks_[b] - 1 - j);
    return Weight(std::move(c));
}

inline RootDatumPtr RootDatum::build_gl(const std::vector<long long>& a) {
    if (a.empty()) throw std::invalid_argument("build_gl: block list must be nonempty");
    for (long long x : a)
        if (x <= 0) throw std::invalid_argument("build_gl: block sizes must be positive");
    std::size_t n = 0;
    for (long long x : a) n += static_cast<std::size_t>(x);
    std::vector<std::vector<long long>> roots, coroots;
    std::size_t off = 0;
    for (long long x : a) {
        for (long long j = 0; j + 1 < x; ++j) {
            std::vector<long long> v(n, 0);
            v[off + j] = 1;
            v[off + j + 1] = -1;
            roots.push_back(v);
            coroots.push_back(v);
        }
        off += static_cast<std::size_t>(x);
    }
    std::ostringstream nm;
    nm << "GL(";
    for (std::size_t i = 0; i < a.size(); ++i) nm << (i ? "," : "") << a[i];
    nm << ")";
    auto d = from_vectors(n, std::move(roots), std::move(coroots), nm.str(), a);
    return d;
}

inline RootDatumPtr RootDatum::build_simple(const std::string& type_label) {
    // X in the fundamental-weight basis, so coroots are the dual standard
    // basis and simple roots are the columns of the Cartan matrix.
    std::vector<std::vector<long long>> cartan;
    if (type_label == "A1") cartan = {{2}};
    else if (type_label == "A2") cartan = {{2, -1}, {-1, 2}};
    else if (type_label == "B2") cartan = {{2, -1}, {-2, 2}};
    else if (type_label == "G2") cartan = {{2, -1}, {-3, 2}};
    else throw std::invalid_argument("build_simple: unsupported type " + type_label);

    std::size_t n = cartan.size();
    std::vector<std::vector<long long>> roots(n, std::vector<long long>(n, 0));
    std::vector<std::vector<long long>> coroots(n, std::vector<long long>(n, 0));
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < n; ++i) roots[j][i] = cartan[i][j];
        coroots[j][j] = 1;
    }
    return from_vectors(n, std::move(roots), std::move(coroots), type_label);
}

inline RootDatumPtr RootDatum::from_vectors(std::size_t rank,
                                            std::vector<std::vector<long long>> simple_roots,
                                            std::vector<std::vector<long long>> simple_coroots,
                                            std::string name,
                                            std::vector<long long> gl_blocks) {
    if (rank == 0) throw std::invalid_argument("root datum: rank must be positive");
    if (simple_roots.size() != simple_coroots.size())
        throw std::invalid_argument("root datum: root/coroot counts differ");
    for (const auto& v : simple_roots)
        if (v.size() != rank) throw std::invalid_argument("root datum: root of wrong rank");
    for (const auto& v : simple_coroots)
        if (v.size() != rank) throw std::invalid_argument("root datum: coroot of wrong rank");

    auto d = std::shared_ptr<RootDatum>(new RootDatum());
    d->rank_ = rank;
    d->name_ = std::move(name);
    d->simple_roots_ = std::move(simple_roots);
    d->simple_coroots_ = std::move(simple_coroots);
    d->gl_blocks_ = std::move(gl_blocks);
    if (!d->gl_blocks_.empty()) {
        std::size_t off = 0;
        for (long long x : d->gl_blocks_) {
            d->gl_block_offsets_.push_back(off);
            off += static_cast<std::size_t>(x);
        }
    }
    d->finish();
    return d;
}

inline void RootDatum::finish() {
    const std::size_t k = simple_roots_.size();

    cartan_ = IntMat(k, k);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j)
            cartan_(i, j) = pairing_int(simple_roots_[j], simple_coroots_[i]);
    for (std::size_t i = 0; i < k; ++i) {
        if (cartan_(i, i) != 2)
            throw std::invalid_argument("root datum: <alpha_i, alpha_i^vee> must be 2");
        for (std::size_t j = 0; j < k; ++j) {
            if (i == j) continue;
            if (cartan_(i, j) > 0)
                throw std::invalid_argument("root datum: off-diagonal Cartan entries must be <= 0");
            if ((cartan_(i, j) == 0) != (cartan_(j, i) == 0))
                throw std::invalid_argument("root datum: Cartan zero pattern must be symmetric");
        }
    }

    // Y / Z Phi^vee must be torsion free: all nonzero elementary divisors
    // of the coroot matrix equal 1.
    if (k > 0) {
        IntMat m(rank_, k);
        for (std::size_t j = 0; j < k; ++j)
            for (std::size_t i = 0; i < rank_; ++i) m(i, j) = simple_coroots_[j][i];
        SmithForm s = smith_normal_form(m);
        for (std::size_t i = 0; i < std::min(s.d.rows, s.d.cols); ++i)
            if (s.d(i, i) > 1)
                throw std::invalid_argument("root datum: Y/ZPhi^vee has torsion (divisor " +
                                            std::to_string(s.d(i, i)) + ")");
    }

    // components of the Cartan diagram
    std::vector<int> comp_of(k, -1);
    int ncomp = 0;
    for (std::size_t i = 0; i < k; ++i) {
        if (comp_of[i] != -1) continue;
        std::vector<std::size_t> stack{i};
        comp_of[i] = ncomp;
        while (!stack.empty()) {
            std::size_t x = stack.back();
            stack.pop_back();
            for (std::size_t j = 0; j < k; ++j)
                if (comp_of[j] == -1 && cartan_(x, j) != 0) {
                    comp_of[j] = ncomp;
                    stack.push_back(j);
                }
        }
        ++ncomp;
    }
    components_.assign(ncomp, {});
    for (std::size_t i = 0; i < k; ++i) components_[comp_of[i]].push_back(static_cast<int>(i));

    // positive roots: close the simple root/coroot pairs under all simple
    // reflections and keep the ones with nonnegative simple-root expansion
    std::set<std::pair<std::vector<long long>, std::vector<long long>>> all;
    std::vector<std::pair<std::vector<long long>, std::vector<long long>>> queue;
    for (std::size_t i = 0; i < k; ++i) {
        all.insert({simple_roots_[i], simple_coroots_[i]});
        queue.push_back({simple_roots_[i], simple_coroots_[i]});
    }
    while (!queue.empty()) {
        auto [beta, betav] = queue.back();
        queue.pop_back();
        for (std::size_t i = 0; i < k; ++i) {
            std::vector<long long> nb = beta, nbv = betav;
            long long p = pairing_int(beta, simple_coroots_[i]);
            long long q = pairing_int(simple_roots_[i], betav);
            for (std::size_t t = 0; t < rank_; ++t) {
                nb[t] -= p * simple_roots_[i][t];
                nbv[t] -= q * simple_coroots_[i][t];
            }
            if (all.insert({nb, nbv}).second) {
                queue.push_back({nb, nbv});
                if (all.size() > 100000)
                    throw std::invalid_argument("root datum: root closure does not terminate");
            }
        }
    }

    // rational expansion in the simple-root basis decides positivity
    std::vector<std::vector<Rat>> A(rank_, std::vector<Rat>(k, Rat(0)));
    for (std::size_t j = 0; j < k; ++j)
        for (std::size_t i = 0; i < rank_; ++i) A[i][j] = Rat(simple_roots_[j][i]);
    for (const auto& [beta, betav] : all) {
        std::vector<Rat> b(rank_);
        for (std::size_t i = 0; i < rank_; ++i) b[i] = Rat(beta[i]);
        std::vector<Rat> x;
        if (!solve_rational(A, b, x))
            throw std::invalid_argument("root datum: root outside the simple-root span");
        bool nonneg = true;
        Rat height(0);
        int comp = -1;
        for (std::size_t j = 0; j < k; ++j) {
            if (x[j] < Rat(0)) nonneg = false;
            height += x[j];
            if (x[j] != Rat(0)) comp = comp_of[j];
        }
        if (!nonneg) continue;
        PositiveRoot pr;
        pr.root = beta;
        pr.coroot = betav;
        pr.height = rat_to_int(height);
        pr.component = comp;
        posroot_index_[beta] = static_cast<int>(positive_roots_.size());
        positive_roots_.push_back(std::move(pr));
    }

    // rho, Coxeter number, w0
    std::vector<Rat> rho(rank_, Rat(0));
    for (const auto& pr : positive_roots_)
        for (std::size_t t = 0; t < rank_; ++t) rho[t] += Rat(pr.root[t], 2);
    rho_ = Weight(std::move(rho));

    coxeter_number_ = 1;
    affine_root_indices_.assign(ncomp, -1);
    std::vector<long long> best_cht(ncomp, -1);
    std::vector<std::vector<Rat>> Av(rank_, std::vector<Rat>(k, Rat(0)));
    for (std::size_t j = 0; j < k; ++j)
        for (std::size_t i = 0; i < rank_; ++i) Av[i][j] = Rat(simple_coroots_[j][i]);
    for (std::size_t r = 0; r < positive_roots_.size(); ++r) {
        const auto& pr = positive_roots_[r];
        coxeter_number_ = std::max(coxeter_number_, pr.height + 1);
        // coroot height picks the root of the highest coroot
        std::vector<Rat> bv(rank_);
        for (std::size_t i = 0; i < rank_; ++i) bv[i] = Rat(pr.coroot[i]);
        std::vector<Rat> xv;
        if (!solve_rational(Av, bv, xv))
            throw std::invalid_argument("root datum: coroot outside the simple-coroot span");
        Rat cht(0);
        for (const auto& v : xv) cht += v;
        long long chti = rat_to_int(cht);
        if (pr.component >= 0 && chti > best_cht[pr.component]) {
            best_cht[pr.component] = chti;
            affine_root_indices_[pr.component] = static_cast<int>(r);
        }
    }

    w0_ = IntMat::identity(rank_);
    {
        // drive rho to the antidominant chamber by simple reflections
        std::vector<Rat> mu = rho_.c;
        bool moved = true;
        while (moved) {
            moved = false;
            for (std::size_t i = 0; i < k; ++i) {
                Rat p(0);
                for (std::size_t t = 0; t < rank_; ++t)
                    if (simple_coroots_[i][t] != 0) p += mu[t] * Rat(simple_coroots_[i][t]);
                if (p > Rat(0)) {
                    IntMat si = simple_reflection_matrix(i);
                    mu = si.apply(mu);
                    w0_ = si * w0_;
                    moved = true;
                }
            }
        }
    }

    // X / Z Phi structure
    semisimple_ = (k == rank_);
    if (semisimple_) {
        IntMat m(rank_, k);
        for (std::size_t j = 0; j < k; ++j)
            for (std::size_t i = 0; i < rank_; ++i) m(i, j) = simple_roots_[j][i];
        SmithForm s = smith_normal_form(m);
        for (std::size_t i = 0; i < rank_; ++i)
            if (s.d(i, i) == 0) semisimple_ = false;
        if (semisimple_) {
            IntMat uinv = unimodular_inverse(s.left);
            std::vector<std::vector<long long>> reps;
            std::vector<long long> c(rank_, 0);
            bool done = false;
            while (!done) {
                reps.push_back(uinv.apply(c));
                std::size_t i = 0;
                while (i < rank_) {
                    if (++c[i] < s.d(i, i)) break;
                    c[i] = 0;
                    ++i;
                }
                done = (i == rank_);
            }
            coset_reps_ = std::move(reps);
        }
    }
}

} // namespace cellulo
