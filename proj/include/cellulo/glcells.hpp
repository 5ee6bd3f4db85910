#pragma once

// Multipartition combinatorics for products of general linear groups:
// nilpotent orbit labels, the multiplicity map driving the centralizer
// recursion, the eventually-trivial chain enumerator, and the weight-level
// arithmetic feeding the scaling/projectivity checks. Small orbit-count
// oracles for the non-GL test types live here too.

#include "cellulo/common.hpp"
#include "cellulo/weyl.hpp"

#include <algorithm>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace cellulo {

struct Partition {
    std::vector<long long> parts;  // weakly decreasing, positive

    Partition() = default;
    explicit Partition(std::vector<long long> p) : parts(std::move(p)) {
        for (std::size_t i = 0; i < parts.size(); ++i) {
            if (parts[i] <= 0) throw std::invalid_argument("partition parts must be positive");
            if (i && parts[i] > parts[i - 1])
                throw std::invalid_argument("partition parts must be weakly decreasing");
        }
    }

    long long sum() const {
        long long s = 0;
        for (long long p : parts) s += p;
        return s;
    }

    /// Multiplicities of the distinct parts, largest part first.
    std::vector<long long> multiplicities() const {
        std::vector<long long> out;
        std::size_t i = 0;
        while (i < parts.size()) {
            std::size_t j = i;
            while (j < parts.size() && parts[j] == parts[i]) ++j;
            out.push_back(static_cast<long long>(j - i));
            i = j;
        }
        return out;
    }

    /// Bracketed exponent form: [3,1], [2^2], [2,1^2].
    std::string str() const {
        std::ostringstream os;
        os << "[";
        std::size_t i = 0;
        bool first = true;
        while (i < parts.size()) {
            std::size_t j = i;
            while (j < parts.size() && parts[j] == parts[i]) ++j;
            if (!first) os << ",";
            os << parts[i];
            if (j - i >= 2) os << "^" << (j - i);
            first = false;
            i = j;
        }
        os << "]";
        return os.str();
    }

    bool operator==(const Partition& o) const { return parts == o.parts; }
    bool operator<(const Partition& o) const { return parts < o.parts; }
};

/// All partitions of n in descending lexicographic order: [n] first,
/// [1^n] last.
inline std::vector<Partition> enumerate_partitions(long long n) {
    std::vector<Partition> out;
    std::vector<long long> cur;
    auto rec = [&](auto&& self, long long rest, long long maxpart) -> void {
        if (rest == 0) {
            out.push_back(Partition(cur));
            return;
        }
        for (long long p = std::min(rest, maxpart); p >= 1; --p) {
            cur.push_back(p);
            self(self, rest - p, p);
            cur.pop_back();
        }
    };
    rec(rec, n, n);
    return out;
}

struct Multipartition {
    std::vector<Partition> parts;  // parts[i] is a partition of a[i]

    Multipartition() = default;
    explicit Multipartition(std::vector<Partition> p) : parts(std::move(p)) {}

    std::vector<long long> shape() const {
        std::vector<long long> a;
        for (const auto& p : parts) a.push_back(p.sum());
        return a;
    }

    bool divides(const std::vector<long long>& a) const { return shape() == a; }

    std::string str() const {
        std::ostringstream os;
        os << "(";
        for (std::size_t i = 0; i < parts.size(); ++i) os << (i ? "," : "") << parts[i].str();
        os << ")";
        return os.str();
    }

    bool operator==(const Multipartition& o) const { return parts == o.parts; }
    bool operator<(const Multipartition& o) const { return parts < o.parts; }
};

/// Concatenated multiplicity lists of the constituent partitions.
inline std::vector<long long> mult(const Multipartition& pi) {
    std::vector<long long> out;
    for (const auto& p : pi.parts) {
        auto m = p.multiplicities();
        out.insert(out.end(), m.begin(), m.end());
    }
    return out;
}

inline long long semisimple_rank(const std::vector<long long>& a) {
    long long r = 0;
    for (long long x : a) r += x - 1;
    return r;
}

inline bool is_all_ones(const std::vector<long long>& a) {
    return std::all_of(a.begin(), a.end(), [](long long x) { return x == 1; });
}

/// Orbit label of the zero nilpotent element: ([1^{a_1}], ..., [1^{a_k}]).
inline Multipartition zero_orbit_label(const std::vector<long long>& a) {
    std::vector<Partition> ps;
    for (long long x : a) ps.push_back(Partition(std::vector<long long>(x, 1)));
    return Multipartition(std::move(ps));
}

/// Orbit label of a regular nilpotent element: ([a_1], ..., [a_k]).
inline Multipartition regular_orbit_label(const std::vector<long long>& a) {
    std::vector<Partition> ps;
    for (long long x : a) ps.push_back(Partition({x}));
    return Multipartition(std::move(ps));
}

/// All multipartitions of a, component-wise, leftmost component slowest,
/// each component in descending lexicographic order.
inline std::vector<Multipartition> enumerate_multipartitions(const std::vector<long long>& a) {
    std::vector<std::vector<Partition>> per;
    for (long long x : a) per.push_back(enumerate_partitions(x));
    std::vector<Multipartition> out;
    std::vector<Partition> cur(a.size());
    auto rec = [&](auto&& self, std::size_t i) -> void {
        if (i == a.size()) {
            out.push_back(Multipartition(cur));
            return;
        }
        for (const auto& p : per[i]) {
            cur[i] = p;
            self(self, i + 1);
        }
    };
    rec(rec, 0);
    return out;
}

/// Eventually trivial chain of multipartitions: the stored sequence is the
/// nontrivial prefix; the terminal bullet of the serialized form is not
/// data. Chaining: seq[0] divides a, seq[j] divides mult(seq[j-1]), and
/// mult(seq.back()) = (1,...,1). The empty chain is the unique label when a
/// itself is (1,...,1).
struct CellLabel {
    std::vector<Multipartition> seq;

    std::string str() const {
        std::ostringstream os;
        os << "(";
        for (const auto& m : seq) os << m.str() << ",";
        os << "•)";
        return os.str();
    }

    bool operator==(const CellLabel& o) const { return seq == o.seq; }
    bool operator<(const CellLabel& o) const { return seq < o.seq; }

    bool valid_for(const std::vector<long long>& a) const {
        std::vector<long long> cur = a;
        for (const auto& m : seq) {
            if (!m.divides(cur)) return false;
            cur = mult(m);
        }
        return is_all_ones(cur);
    }
};

/// All eventually trivial chains over a with nontrivial prefix length at
/// most max_terms, in depth-first order with multipartitions enumerated as
/// in enumerate_multipartitions. Deeper chains are truncated away, not
/// reported partially.
inline std::vector<CellLabel> enumerate_cell_labels(const std::vector<long long>& a,
                                                    int max_terms) {
    if (max_terms < 0) throw std::invalid_argument("enumerate_cell_labels: max_terms must be >= 0");
    std::vector<CellLabel> out;
    std::vector<Multipartition> prefix;
    auto rec = [&](auto&& self, const std::vector<long long>& cur, int depth_left) -> void {
        if (is_all_ones(cur)) {
            CellLabel l;
            l.seq = prefix;
            out.push_back(std::move(l));
            return;
        }
        if (depth_left == 0) return;
        for (const auto& pi : enumerate_multipartitions(cur)) {
            prefix.push_back(pi);
            self(self, mult(pi), depth_left - 1);
            prefix.pop_back();
        }
    };
    rec(rec, a, max_terms);
    for (const auto& l : out)
        if (!l.valid_for(a)) throw std::logic_error("enumerated label fails its chain invariant");
    return out;
}

/// Nilpotent orbit counts for the supported test data. GL products use the
/// multipartition count; the B2 routine enumerates partitions of 5 in which
/// even parts occur with even multiplicity (the odd orthogonal rule for
/// so_5); G2 has the five orbits 0, A1, A1~, G2(a1), G2 of the Bala-Carter
/// classification.
inline long long orbit_count(const RootDatumPtr& d) {
    if (!d->gl_blocks().empty()) {
        long long n = 1;
        for (long long x : d->gl_blocks())
            n *= static_cast<long long>(enumerate_partitions(x).size());
        return n;
    }
    const std::string& name = d->name();
    if (name == "A1") return static_cast<long long>(enumerate_partitions(2).size());
    if (name == "A2") return static_cast<long long>(enumerate_partitions(3).size());
    if (name == "B2") {
        long long n = 0;
        for (const auto& p : enumerate_partitions(5)) {
            bool ok = true;
            for (long long part = 2; part <= 5; part += 2) {
                long long m = std::count(p.parts.begin(), p.parts.end(), part);
                if (m % 2 != 0) ok = false;
            }
            if (ok) ++n;
        }
        return n;
    }
    if (name == "G2") return 5;
    throw std::invalid_argument("orbit_count: unsupported datum " + name);
}

/// Zero-orbit leg of the weight dictionary: mu -> w0 mu - 2 rho, defined on
/// mu in -X+ - 2 rho. Out-of-regime inputs are reported, not computed.
inline std::optional<Weight> zero_orbit_sigma(const Weight& mu, const RootDatumPtr& d) {
    if (!mu.is_integral()) throw std::invalid_argument("zero_orbit_sigma: weight not in X");
    Weight two_rho = 2 * d->rho();
    if (!d->is_antidominant(mu + two_rho)) return std::nullopt;
    return Weight(d->w0_matrix().apply(mu.c)) - two_rho;
}

/// One step of the scaling descent: the weight mu with mu_prev = ell * mu,
/// if mu_prev lies in ell X.
inline std::optional<Weight> scaling_step(const Weight& mu_prev, const Config& cfg) {
    if (!mu_prev.is_integral()) throw std::invalid_argument("scaling_step: weight not in X");
    std::vector<Rat> c;
    c.reserve(mu_prev.c.size());
    for (const auto& x : mu_prev.c) {
        long long xi = rat_to_int(x);
        if (xi % cfg.ell != 0) return std::nullopt;
        c.emplace_back(xi / cfg.ell);
    }
    return Weight(std::move(c));
}

/// Numeric projectivity criterion for the m-th Frobenius kernel:
/// <nu, alpha^vee> >= ell^m - 1 for every simple coroot.
inline bool frobenius_projective_bound(const Weight& nu, int m, const Config& cfg,
                                       const RootDatumPtr& d) {
    if (m < 1) throw std::invalid_argument("frobenius_projective_bound: m must be >= 1");
    if (!d->is_dominant(nu))
        throw std::invalid_argument("frobenius_projective_bound: weight must be dominant");
    Int bound = 1;
    for (int i = 0; i < m; ++i) bound *= cfg.ell;
    bound -= 1;
    for (const auto& cv : d->simple_coroots()) {
        Rat p = pairing(nu, Coweight(cv));
        if (Int(rat_to_int(p)) < bound) return false;
    }
    return true;
}

} // namespace cellulo
