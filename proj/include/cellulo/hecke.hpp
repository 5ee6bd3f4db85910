#pragma once

// The extended affine Hecke algebra on the basis {H_w : w in W_ext} over
// Z[v, v^-1], with the quadratic relation (H_s + v)(H_s - v^-1) = 0, the
// canonical basis at p = 0, and the length-zero extension rules
// uH_{w omega} = uH_w H_omega, uH_{omega w} = H_omega uH_w.
//
// The canonical table is computed for the Coxeter group W only; indices in
// W_ext are reached exclusively through the extension rules.

#include "cellulo/common.hpp"
#include "cellulo/laurent.hpp"
#include "cellulo/weyl.hpp"

#include <limits>
#include <map>
#include <vector>

namespace cellulo {

class HeckeElt {
public:
    HeckeElt() = default;

    static HeckeElt basis(const WeylElt& w) {
        HeckeElt h;
        h.terms_.emplace(w, LaurentPoly(1));
        return h;
    }

    static HeckeElt zero() { return HeckeElt(); }

    bool is_zero() const { return terms_.empty(); }
    const std::map<WeylElt, LaurentPoly>& terms() const { return terms_; }

    LaurentPoly coeff(const WeylElt& w) const {
        auto it = terms_.find(w);
        return it == terms_.end() ? LaurentPoly() : it->second;
    }

    void add(const WeylElt& w, const LaurentPoly& c) {
        if (c.is_zero()) return;
        auto it = terms_.find(w);
        if (it == terms_.end()) {
            terms_.emplace(w, c);
        } else {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    HeckeElt& operator+=(const HeckeElt& o) {
        for (const auto& [w, c] : o.terms_) add(w, c);
        return *this;
    }
    HeckeElt& operator-=(const HeckeElt& o) {
        for (const auto& [w, c] : o.terms_) add(w, -c);
        return *this;
    }
    friend HeckeElt operator+(HeckeElt a, const HeckeElt& b) { return a += b; }
    friend HeckeElt operator-(HeckeElt a, const HeckeElt& b) { return a -= b; }

    friend HeckeElt operator*(const LaurentPoly& c, const HeckeElt& h) {
        HeckeElt r;
        if (c.is_zero()) return r;
        for (const auto& [w, p] : h.terms_) r.terms_.emplace(w, c * p);
        return r;
    }

    bool operator==(const HeckeElt& o) const { return terms_ == o.terms_; }
    bool operator!=(const HeckeElt& o) const { return terms_ != o.terms_; }

    /// Index of maximal length (ties broken by the element order); the
    /// element must be nonzero.
    const WeylElt& top_index() const {
        if (terms_.empty()) throw std::logic_error("top_index of zero element");
        return terms_.rbegin()->first;
    }

private:
    std::map<WeylElt, LaurentPoly> terms_;
};

namespace detail {
inline const LaurentPoly& v_plus() {
    static const LaurentPoly p = LaurentPoly::v_pow(1);
    return p;
}
inline const LaurentPoly& v_minus() {
    static const LaurentPoly p = LaurentPoly::v_pow(-1);
    return p;
}
inline const LaurentPoly& v_inv_minus_v() {
    static const LaurentPoly p = LaurentPoly::v_pow(-1) - LaurentPoly::v_pow(1);
    return p;
}
} // namespace detail

/// h * H_s for a length-one generator s.
inline HeckeElt mul_gen_right(const HeckeElt& h, const WeylElt& s) {
    HeckeElt r;
    for (const auto& [x, c] : h.terms()) {
        WeylElt xs = multiply(x, s);
        r.add(xs, c);
        if (xs.length() < x.length()) r.add(x, c * detail::v_inv_minus_v());
    }
    return r;
}

/// H_s * h.
inline HeckeElt mul_gen_left(const WeylElt& s, const HeckeElt& h) {
    HeckeElt r;
    for (const auto& [x, c] : h.terms()) {
        WeylElt sx = multiply(s, x);
        r.add(sx, c);
        if (sx.length() < x.length()) r.add(x, c * detail::v_inv_minus_v());
    }
    return r;
}

/// h * H_omega for a length-zero element.
inline HeckeElt mul_omega_right(const HeckeElt& h, const WeylElt& omega) {
    HeckeElt r;
    for (const auto& [x, c] : h.terms()) r.add(multiply(x, omega), c);
    return r;
}

inline HeckeElt mul_omega_left(const WeylElt& omega, const HeckeElt& h) {
    HeckeElt r;
    for (const auto& [x, c] : h.terms()) r.add(multiply(omega, x), c);
    return r;
}

/// Product in the standard basis. The right factor is decomposed into
/// generator letters and a length-zero part via omega_of.
inline HeckeElt mul_standard(const HeckeElt& a, const HeckeElt& b) {
    if (a.is_zero() || b.is_zero()) return HeckeElt::zero();
    const auto& d = a.terms().begin()->first.datum();
    if (d.get() != b.terms().begin()->first.datum().get())
        throw datum_mismatch("mul_standard: factors over different root data");
    Generators g = coxeter_generators(d);
    HeckeElt out;
    for (const auto& [y, c] : b.terms()) {
        OmegaFactorization f = omega_of(y, g);
        HeckeElt cur = a;
        for (int idx : f.word) cur = mul_gen_right(cur, g.elts[idx]);
        if (!f.omega.is_identity()) cur = mul_omega_right(cur, f.omega);
        out += c * cur;
    }
    return out;
}

/// Bar involution on the algebra: v -> v^-1, H_w -> (H_{w^-1})^-1,
/// computed through reduced words and memoized on basis elements.
class BarInvolution {
public:
    explicit BarInvolution(RootDatumPtr d)
        : datum_(std::move(d)), gens_(coxeter_generators(datum_)) {}

    const HeckeElt& of_basis(const WeylElt& x) {
        auto it = memo_.find(x);
        if (it != memo_.end()) return it->second;
        HeckeElt val;
        if (x.length() == 0) {
            val = HeckeElt::basis(x);  // H_omega is bar invariant
        } else {
            for (std::size_t i = 0; i < gens_.elts.size(); ++i) {
                WeylElt xs = multiply(x, gens_.elts[i]);
                if (xs.length() < x.length()) {
                    // bar(H_x) = bar(H_{xs}) * (H_s + (v - v^-1))
                    const HeckeElt& prev = of_basis(xs);
                    val = mul_gen_right(prev, gens_.elts[i]);
                    val += (LaurentPoly::v_pow(1) - LaurentPoly::v_pow(-1)) * prev;
                    break;
                }
            }
            if (val.is_zero()) throw std::logic_error("bar: element has no right descent");
        }
        return memo_.emplace(x, std::move(val)).first->second;
    }

    HeckeElt of(const HeckeElt& h) {
        HeckeElt r;
        for (const auto& [x, c] : h.terms()) r += c.bar() * of_basis(x);
        return r;
    }

private:
    RootDatumPtr datum_;
    Generators gens_;
    std::map<WeylElt, HeckeElt> memo_;
};

/// Query surface a canonical-basis provider must offer: expansions of the
/// basis elements in the standard basis and the mu rows. The p = 0 table
/// below is the only implementation here; a p > 0 provider can be swapped
/// in behind this interface without touching the cell machinery.
class CanonicalBasisProvider {
public:
    virtual ~CanonicalBasisProvider() = default;
    virtual const RootDatumPtr& datum() const = 0;
    virtual int radius() const = 0;
    virtual bool covers(const WeylElt& w) const = 0;
    virtual const HeckeElt& element(const WeylElt& w) const = 0;
    /// mu_row(w)[y] = coefficient of v in h_{y,w}, zero entries absent.
    virtual const std::map<WeylElt, long long>& mu_row(const WeylElt& w) const = 0;
};

/// Kazhdan-Lusztig table at p = 0 over a ball in W: for every w with
/// l(w) <= radius the unique bar-invariant uH_w = H_w + sum h_{x,w} H_x
/// with h_{x,w} in v Z[v].
class CanonicalTable final : public CanonicalBasisProvider {
public:
    CanonicalTable(RootDatumPtr d, int radius)
        : datum_(std::move(d)), radius_(radius), gens_(coxeter_generators(datum_)) {
        build();
    }

    const RootDatumPtr& datum() const override { return datum_; }
    int radius() const override { return radius_; }
    const Generators& generators() const { return gens_; }

    bool covers(const WeylElt& w) const override { return entries_.count(w) != 0; }

    const HeckeElt& element(const WeylElt& w) const override {
        auto it = entries_.find(w);
        if (it == entries_.end())
            throw insufficient_radius("canonical table does not cover the requested element");
        return it->second;
    }

    const std::map<WeylElt, long long>& mu_row(const WeylElt& w) const override {
        auto it = mu_.find(w);
        if (it == mu_.end())
            throw insufficient_radius("canonical table does not cover the requested mu row");
        return it->second;
    }

    long long mu(const WeylElt& y, const WeylElt& w) const {
        const auto& row = mu_row(w);
        auto it = row.find(y);
        return it == row.end() ? 0 : it->second;
    }

    const std::map<WeylElt, HeckeElt>& entries() const { return entries_; }

private:
    void build() {
        std::vector<WeylElt> elts = ball(datum_, radius_);
        // stratified by length: within a stratum the recursions are
        // independent and may run in parallel
        std::size_t start = 0;
        while (start < elts.size()) {
            std::size_t end = start;
            while (end < elts.size() && elts[end].length() == elts[start].length()) ++end;
            std::vector<std::pair<HeckeElt, std::map<WeylElt, long long>>> slot(end - start);
            parallel_for(end - start, [&](std::size_t k) {
                slot[k] = compute_one(elts[start + k]);
            });
            for (std::size_t k = 0; k < slot.size(); ++k) {
                entries_.emplace(elts[start + k], std::move(slot[k].first));
                mu_.emplace(elts[start + k], std::move(slot[k].second));
            }
            start = end;
        }
    }

    std::pair<HeckeElt, std::map<WeylElt, long long>> compute_one(const WeylElt& w) const {
        if (w.length() == 0) return {HeckeElt::basis(w), {}};
        std::size_t si = gens_.elts.size();
        for (std::size_t i = 0; i < gens_.elts.size(); ++i)
            if (multiply(w, gens_.elts[i]).length() < w.length()) { si = i; break; }
        if (si == gens_.elts.size())
            throw std::logic_error("canonical table: no right descent");
        const WeylElt& s = gens_.elts[si];
        WeylElt wp = multiply(w, s);

        // uH_w = uH_{w'} uH_s - sum_{y s < y} mu(y, w') uH_y
        const HeckeElt& base = entries_.at(wp);
        HeckeElt prod;
        for (const auto& [x, c] : base.terms()) {
            WeylElt xs = multiply(x, s);
            if (xs.length() > x.length()) {
                prod.add(xs, c);
                prod.add(x, c * detail::v_plus());
            } else {
                prod.add(xs, c);
                prod.add(x, c * detail::v_minus());
            }
        }
        for (const auto& [y, m] : mu_.at(wp)) {
            if (multiply(y, s).length() < y.length())
                prod -= LaurentPoly(m) * entries_.at(y);
        }

        std::map<WeylElt, long long> murow;
        for (const auto& [x, c] : prod.terms()) {
            if (x == w) {
                if (c != LaurentPoly(1))
                    throw std::logic_error("canonical table: diagonal coefficient is not 1");
                continue;
            }
            if (!c.in_v_zv())
                throw std::logic_error("canonical table: off-diagonal entry outside vZ[v]");
            Int muc = c.coeff(1);
            if (muc != 0) {
                if (muc > std::numeric_limits<long long>::max())
                    throw std::overflow_error("mu coefficient out of range");
                murow[x] = static_cast<long long>(muc);
            }
        }
        return {std::move(prod), std::move(murow)};
    }

    RootDatumPtr datum_;
    int radius_;
    Generators gens_;
    std::map<WeylElt, HeckeElt> entries_;
    std::map<WeylElt, std::map<WeylElt, long long>> mu_;
};

inline CanonicalTable canonical_basis(const RootDatumPtr& d, int radius) {
    return CanonicalTable(d, radius);
}

/// uH_{w omega} (side "right") or uH_{omega w} (side "left") from uH_w.
enum class OmegaSide { Left, Right };

inline HeckeElt extend_by_omega(const CanonicalBasisProvider& t, const WeylElt& w,
                                const WeylElt& omega, OmegaSide side) {
    if (omega.length() != 0)
        throw std::invalid_argument("extend_by_omega: extension element must have length 0");
    const HeckeElt& base = t.element(w);
    return side == OmegaSide::Right ? mul_omega_right(base, omega)
                                    : mul_omega_left(omega, base);
}

/// Coefficients c_w with h = sum c_w uH_w, by back substitution from the
/// top length down. Throws insufficient_radius when the support escapes.
inline std::map<WeylElt, LaurentPoly> expand_in_canonical(HeckeElt h,
                                                          const CanonicalBasisProvider& t) {
    std::map<WeylElt, LaurentPoly> out;
    while (!h.is_zero()) {
        const WeylElt& x = h.top_index();
        LaurentPoly c = h.coeff(x);
        out[x] = c;
        h -= c * t.element(x);
    }
    return out;
}

} // namespace cellulo
