#pragma once

// Elements and arithmetic of the extended affine Weyl group W_ext = W_f |x X.
//
// An element is stored as a pair (fin, trans) representing the affine map
//   mu |-> fin(mu + trans),
// i.e. the group element fin * t_trans with the translation applied first.
// In this representation the closed length formula reads
//   l(w) = sum over alpha > 0 with fin(alpha) > 0 of |<trans, alpha^vee>|
//        + sum over alpha > 0 with fin(alpha) < 0 of |1 + <trans, alpha^vee>|.
// The variable roles here are pinned by requiring l = 1 for the affine
// simple reflections; the word-length oracle in the test suite certifies
// the choice on whole balls.

#include "cellulo/common.hpp"
#include "cellulo/rootdata.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace cellulo {

/// Closed length formula evaluated on a raw (fin, trans) pair.
inline long long affine_length(const RootDatum& d, const IntMat& fin,
                               const std::vector<long long>& trans) {
    long long total = 0;
    for (const auto& pr : d.positive_roots()) {
        long long p = pairing_int(trans, pr.coroot);
        if (d.is_positive_root(fin.apply(pr.root))) {
            total += std::llabs(p);
        } else {
            total += std::llabs(1 + p);
        }
    }
    return total;
}

class WeylElt {
public:
    WeylElt() = default;

    static WeylElt identity(const RootDatumPtr& d) {
        return WeylElt(d, IntMat::identity(d->rank()),
                       IntMat::identity(d->rank()),
                       std::vector<long long>(d->rank(), 0));
    }

    static WeylElt translation(const RootDatumPtr& d, const std::vector<long long>& lambda) {
        return WeylElt(d, IntMat::identity(d->rank()),
                       IntMat::identity(d->rank()), lambda);
    }

    static WeylElt reflection(const RootDatumPtr& d, const std::vector<long long>& root,
                              const std::vector<long long>& coroot,
                              const std::vector<long long>& trans) {
        IntMat m = d->reflection_matrix(root, coroot);
        return WeylElt(d, m, m, trans);  // reflections are involutions
    }

    const RootDatumPtr& datum() const { return datum_; }
    const IntMat& fin_matrix() const { return fin_; }
    const std::vector<long long>& trans() const { return trans_; }
    long long length() const { return len_; }

    bool is_identity() const { return len_ == 0 && fin_is_identity() && trans_is_zero(); }
    bool fin_is_identity() const { return fin_ == IntMat::identity(datum_->rank()); }
    bool trans_is_zero() const {
        return std::all_of(trans_.begin(), trans_.end(), [](long long x) { return x == 0; });
    }

    /// Image of a weight under the affine map mu -> fin(mu + trans).
    Weight apply_affine(const Weight& mu) const {
        Weight shifted = mu;
        for (std::size_t i = 0; i < trans_.size(); ++i) shifted.c[i] += Rat(trans_[i]);
        return Weight(fin_.apply(shifted.c));
    }

    /// Linear action of the finite part on a weight.
    Weight apply_fin(const Weight& mu) const { return Weight(fin_.apply(mu.c)); }

    std::vector<long long> apply_fin(const std::vector<long long>& v) const {
        return fin_.apply(v);
    }

    WeylElt inverse() const {
        // (f t_l)^-1 = t_{-l} f^-1 = f^-1 t_{-f(l)}
        std::vector<long long> t = fin_.apply(trans_);
        for (auto& x : t) x = -x;
        return WeylElt(datum_, fin_inv_, fin_, std::move(t));
    }

    friend WeylElt multiply(const WeylElt& x, const WeylElt& y) {
        if (x.datum_.get() != y.datum_.get())
            throw datum_mismatch("multiply: elements of different root data");
        // (f1 t_a)(f2 t_b) = f1 f2 t_{f2^-1(a) + b}
        std::vector<long long> t = y.fin_inv_.apply(x.trans_);
        for (std::size_t i = 0; i < t.size(); ++i) t[i] += y.trans_[i];
        return WeylElt(x.datum_, x.fin_ * y.fin_, y.fin_inv_ * x.fin_inv_, std::move(t));
    }

    /// The translation lambda with W_f * this = W_f * t_lambda.
    const std::vector<long long>& coset_translation() const { return trans_; }

    bool operator==(const WeylElt& o) const { return trans_ == o.trans_ && fin_.a == o.fin_.a; }
    bool operator!=(const WeylElt& o) const { return !(*this == o); }

    /// Deterministic order: by length, then translation, then matrix.
    bool operator<(const WeylElt& o) const {
        if (len_ != o.len_) return len_ < o.len_;
        if (trans_ != o.trans_) return trans_ < o.trans_;
        return fin_.a < o.fin_.a;
    }

private:
    WeylElt(RootDatumPtr d, IntMat fin, IntMat fin_inv, std::vector<long long> trans)
        : datum_(std::move(d)), fin_(std::move(fin)), fin_inv_(std::move(fin_inv)),
          trans_(std::move(trans)) {
        len_ = compute_length();
    }

    long long compute_length() const { return affine_length(*datum_, fin_, trans_); }

    RootDatumPtr datum_;
    IntMat fin_, fin_inv_;
    std::vector<long long> trans_;
    long long len_ = 0;
};

inline long long length(const WeylElt& w) { return w.length(); }

/// Coxeter generators of W = W_f |x Z Phi: the simple reflections followed
/// by one affine reflection per irreducible component, named
/// s1..sk, s0a, s0b, ...
struct Generators {
    std::vector<WeylElt> elts;
    std::vector<std::string> names;
    std::size_t n_finite = 0;
};

inline Generators coxeter_generators(const RootDatumPtr& d) {
    Generators g;
    for (std::size_t i = 0; i < d->num_simples(); ++i) {
        g.elts.push_back(WeylElt::reflection(d, d->simple_roots()[i], d->simple_coroots()[i],
                                             std::vector<long long>(d->rank(), 0)));
        g.names.push_back("s" + std::to_string(i + 1));
    }
    g.n_finite = g.elts.size();
    const auto& aff = d->affine_root_indices();
    for (std::size_t c = 0; c < aff.size(); ++c) {
        const auto& pr = d->positive_roots()[aff[c]];
        // reflection in the level-one wall: mu -> s(mu) + root, stored as
        // (s, s(root)) = (s, -root)
        std::vector<long long> tr(pr.root.size());
        for (std::size_t i = 0; i < tr.size(); ++i) tr[i] = -pr.root[i];
        g.elts.push_back(WeylElt::reflection(d, pr.root, pr.coroot, tr));
        g.names.push_back(std::string("s0") + static_cast<char>('a' + c));
    }
    return g;
}

/// Factorization w = u * omega with u in W and l(omega) = 0. `word` lists
/// generator indices with u = g[word[0]] * g[word[1]] * ... (a reduced word).
struct OmegaFactorization {
    WeylElt omega;
    WeylElt coxeter_part;
    std::vector<int> word;
};

inline OmegaFactorization omega_of(const WeylElt& w, const Generators& g) {
    OmegaFactorization f{w, WeylElt::identity(w.datum()), {}};
    while (f.omega.length() > 0) {
        bool reduced = false;
        for (std::size_t i = 0; i < g.elts.size(); ++i) {
            WeylElt cand = multiply(g.elts[i], f.omega);
            if (cand.length() < f.omega.length()) {
                f.word.push_back(static_cast<int>(i));
                f.omega = std::move(cand);
                reduced = true;
                break;
            }
        }
        if (!reduced)
            throw std::logic_error("omega_of: no descent on an element of positive length");
    }
    // w = g_{word[0]} ... g_{word[k-1]} * omega
    for (auto it = f.word.rbegin(); it != f.word.rend(); ++it)
        f.coxeter_part = multiply(g.elts[*it], f.coxeter_part);
    return f;
}

inline OmegaFactorization omega_of(const WeylElt& w) {
    return omega_of(w, coxeter_generators(w.datum()));
}

/// All length-zero elements. Only defined for semisimple data, where
/// Omega ~ X / Z Phi is finite.
inline std::vector<WeylElt> omega_group(const RootDatumPtr& d) {
    Generators g = coxeter_generators(d);
    std::vector<WeylElt> result;
    for (const auto& rep : d->root_lattice_coset_reps())
        result.push_back(omega_of(WeylElt::translation(d, rep), g).omega);
    std::sort(result.begin(), result.end());
    return result;
}

/// Generators of Omega for GL data: one rotation per block together with
/// its inverse, realized as omega_of(t_{e_first}).
inline std::vector<WeylElt> omega_block_generators(const RootDatumPtr& d) {
    Generators g = coxeter_generators(d);
    std::vector<WeylElt> out;
    for (std::size_t b = 0; b < d->gl_blocks().size(); ++b) {
        std::vector<long long> e(d->rank(), 0);
        e[d->gl_block_offsets()[b]] = 1;
        WeylElt om = omega_of(WeylElt::translation(d, e), g).omega;
        if (om.is_identity()) continue;  // GL(1) block
        out.push_back(om);
        out.push_back(om.inverse());
    }
    return out;
}

/// Minimal-length representative of the right coset W_f t_lambda. Left
/// multiplication by W_f keeps the translation component, so the defining
/// lambda of any representative can be read back off trans().
inline WeylElt min_coset_rep(const RootDatumPtr& d, const std::vector<long long>& lambda) {
    WeylElt w = WeylElt::translation(d, lambda);
    bool moved = true;
    while (moved) {
        moved = false;
        for (std::size_t i = 0; i < d->num_simples(); ++i) {
            IntMat cand = d->simple_reflection_matrix(i) * w.fin_matrix();
            if (affine_length(*d, cand, w.trans()) < w.length()) {
                WeylElt s = WeylElt::reflection(d, d->simple_roots()[i], d->simple_coroots()[i],
                                                std::vector<long long>(d->rank(), 0));
                w = multiply(s, w);
                moved = true;
            }
        }
    }
    return w;
}

inline WeylElt min_coset_rep(const RootDatumPtr& d, const Weight& lambda) {
    if (!lambda.is_integral()) throw std::invalid_argument("min_coset_rep: weight not in X");
    return min_coset_rep(d, lambda.as_ints());
}

/// True iff w is the minimal-length element of W_f w, i.e. w = w_lambda.
inline bool in_fw(const WeylElt& w) {
    const auto& d = w.datum();
    for (std::size_t i = 0; i < d->num_simples(); ++i) {
        IntMat cand = d->simple_reflection_matrix(i) * w.fin_matrix();
        if (affine_length(*d, cand, w.trans()) < w.length()) return false;
    }
    return true;
}

/// True iff w = w_lambda with lambda antidominant, i.e. w is the minimal
/// representative of its double coset W_f \ W_ext / W_f.
inline bool in_fwf(const WeylElt& w) {
    if (!in_fw(w)) return false;
    return w.datum()->is_antidominant(Weight::from_ints(w.coset_translation()));
}

/// Dot action with an explicit rho-shift; central shifts of rho must not
/// change the result on GL data (tested).
inline Weight dot_action_with_rho(const WeylElt& w, const Weight& mu, const Config& cfg,
                                  const Weight& rho) {
    if (!mu.is_integral()) throw std::invalid_argument("dot_action: weight not in X");
    Weight arg = mu;
    for (std::size_t i = 0; i < arg.c.size(); ++i)
        arg.c[i] += Rat(cfg.ell) * Rat(w.trans()[i]) + rho.c[i];
    Weight out = w.apply_fin(arg);
    for (std::size_t i = 0; i < out.c.size(); ++i) out.c[i] -= rho.c[i];
    return out;
}

/// The ell-dilated dot action w . mu = fin(mu + ell*trans + rho) - rho.
inline Weight dot_action(const WeylElt& w, const Weight& mu, const Config& cfg) {
    return dot_action_with_rho(w, mu, cfg, w.datum()->rho());
}

/// Integer vector (n_alpha), indexed like positive_roots(), picking out the
/// lower closure n_alpha * ell <= <lambda + rho, alpha^vee> < (n_alpha+1) * ell.
struct AlcoveCoords {
    const RootDatum* datum = nullptr;
    std::vector<long long> n;

    bool operator==(const AlcoveCoords& o) const { return n == o.n; }
    bool operator<(const AlcoveCoords& o) const { return n < o.n; }

    std::string str() const {
        std::ostringstream os;
        os << "[";
        for (std::size_t i = 0; i < n.size(); ++i) os << (i ? "," : "") << n[i];
        os << "]";
        return os.str();
    }
};

inline AlcoveCoords alcove_of(const Weight& lambda, const RootDatumPtr& d, const Config& cfg) {
    cfg.validate(*d);
    if (!lambda.is_integral()) throw std::invalid_argument("alcove_of: weight not in X");
    AlcoveCoords a;
    a.datum = d.get();
    a.n.reserve(d->positive_roots().size());
    for (const auto& pr : d->positive_roots()) {
        Rat p = pairing(lambda, Coweight(pr.coroot)) + pairing(d->rho(), Coweight(pr.coroot));
        a.n.push_back(floordiv(rat_to_int(p), cfg.ell));
    }
    return a;
}

inline AlcoveCoords alcove_of_elt(const WeylElt& w, const Config& cfg) {
    return alcove_of(dot_action(w, Weight::zero(w.datum()->rank()), cfg), w.datum(), cfg);
}

/// All w in W with l(w) <= radius, BFS over the Coxeter generators,
/// returned sorted by (length, translation, matrix).
inline std::vector<WeylElt> ball(const RootDatumPtr& d, int radius) {
    if (radius < 0) throw std::invalid_argument("ball: radius must be >= 0");
    Generators g = coxeter_generators(d);
    std::vector<WeylElt> out{WeylElt::identity(d)};
    std::set<WeylElt> seen(out.begin(), out.end());
    std::deque<WeylElt> frontier(out.begin(), out.end());
    for (int depth = 0; depth < radius && !frontier.empty(); ++depth) {
        std::deque<WeylElt> next;
        for (const auto& w : frontier) {
            for (const auto& s : g.elts) {
                WeylElt cand = multiply(w, s);
                if (cand.length() <= w.length()) continue;
                if (seen.insert(cand).second) {
                    out.push_back(cand);
                    next.push_back(std::move(cand));
                }
            }
        }
        frontier = std::move(next);
    }
    std::sort(out.begin(), out.end());
    return out;
}

// --- element text format ---------------------------------------------------
//
// `t[l1,...,ln]*word` denotes t_lambda * (word product); the word uses the
// generator names s1..sk, s0a, s0b, ... Printing always emits the canonical
// form with a finite word; the parser accepts affine letters as well.

inline std::string format_elt(const WeylElt& w) {
    const auto& d = w.datum();
    std::vector<long long> lambda = w.apply_fin(w.trans());
    bool lambda_zero = std::all_of(lambda.begin(), lambda.end(), [](long long x) { return x == 0; });

    // canonical finite word by greedy right descent on the finite part
    std::vector<std::size_t> word;
    IntMat f = w.fin_matrix();
    IntMat id = IntMat::identity(d->rank());
    while (!(f == id)) {
        bool found = false;
        for (std::size_t i = 0; i < d->num_simples(); ++i) {
            if (!d->is_positive_root(f.apply(d->simple_roots()[i]))) {
                word.push_back(i);
                f = f * d->simple_reflection_matrix(i);
                found = true;
                break;
            }
        }
        if (!found) throw std::logic_error("format_elt: finite part has no descent");
    }
    std::reverse(word.begin(), word.end());

    std::ostringstream os;
    if (lambda_zero && word.empty()) return "e";
    if (!lambda_zero || word.empty()) {
        os << "t[";
        for (std::size_t i = 0; i < lambda.size(); ++i) os << (i ? "," : "") << lambda[i];
        os << "]";
        if (!word.empty()) os << "*";
    }
    for (std::size_t i : word) os << "s" << (i + 1);
    return os.str();
}

inline WeylElt parse_elt(const std::string& text, const RootDatumPtr& d) {
    Generators g = coxeter_generators(d);
    std::size_t pos = 0;
    WeylElt result = WeylElt::identity(d);
    if (text == "e") return result;
    if (pos < text.size() && text[pos] == 't') {
        ++pos;
        if (pos >= text.size() || text[pos] != '[')
            throw std::invalid_argument("parse_elt: expected '[' in '" + text + "'");
        ++pos;
        std::vector<long long> lambda;
        while (true) {
            std::size_t start = pos;
            if (pos < text.size() && text[pos] == '-') ++pos;
            while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
            if (pos == start) throw std::invalid_argument("parse_elt: bad coordinate in '" + text + "'");
            lambda.push_back(std::stoll(text.substr(start, pos - start)));
            if (pos < text.size() && text[pos] == ',') { ++pos; continue; }
            break;
        }
        if (pos >= text.size() || text[pos] != ']')
            throw std::invalid_argument("parse_elt: expected ']' in '" + text + "'");
        ++pos;
        if (lambda.size() != d->rank())
            throw std::invalid_argument("parse_elt: translation rank mismatch in '" + text + "'");
        result = WeylElt::translation(d, lambda);
        if (pos == text.size()) return result;
        if (text[pos] != '*')
            throw std::invalid_argument("parse_elt: expected '*' in '" + text + "'");
        ++pos;
    }
    if (text.compare(pos, 1, "e") == 0 && pos + 1 == text.size()) return result;
    while (pos < text.size()) {
        if (text[pos] != 's')
            throw std::invalid_argument("parse_elt: expected generator in '" + text + "'");
        ++pos;
        if (pos < text.size() && text[pos] == '0') {
            ++pos;
            if (pos >= text.size() || text[pos] < 'a')
                throw std::invalid_argument("parse_elt: bad affine generator in '" + text + "'");
            std::size_t comp = static_cast<std::size_t>(text[pos] - 'a');
            ++pos;
            if (g.n_finite + comp >= g.elts.size())
                throw std::invalid_argument("parse_elt: affine generator out of range in '" + text + "'");
            result = multiply(result, g.elts[g.n_finite + comp]);
        } else {
            std::size_t start = pos;
            while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
            if (pos == start) throw std::invalid_argument("parse_elt: bad generator index in '" + text + "'");
            std::size_t idx = std::stoull(text.substr(start, pos - start));
            if (idx == 0 || idx > g.n_finite)
                throw std::invalid_argument("parse_elt: generator index out of range in '" + text + "'");
            result = multiply(result, g.elts[idx - 1]);
        }
    }
    return result;
}

} // namespace cellulo
