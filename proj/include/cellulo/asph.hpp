#pragma once

// The antispherical right module: sgn tensored with the Hecke algebra over
// the finite subalgebra. Basis {N_w : w minimal in W_f w}; a finite simple
// H_s acts by -v on the sign factor. The canonical basis is produced twice,
// by projection from the Hecke table and by the direct recursion, and the
// two constructions are compared; the redundancy is the test oracle.

#include "cellulo/common.hpp"
#include "cellulo/hecke.hpp"

#include <map>
#include <vector>

namespace cellulo {

class AsphElt {
public:
    AsphElt() = default;

    static AsphElt basis(const WeylElt& w) {
        AsphElt m;
        m.add(w, LaurentPoly(1));
        return m;
    }

    static AsphElt zero() { return AsphElt(); }

    bool is_zero() const { return terms_.empty(); }
    const std::map<WeylElt, LaurentPoly>& terms() const { return terms_; }

    LaurentPoly coeff(const WeylElt& w) const {
        auto it = terms_.find(w);
        return it == terms_.end() ? LaurentPoly() : it->second;
    }

    /// Indices outside the minimal-coset-representative set are rejected
    /// here, not silently dropped.
    void add(const WeylElt& w, const LaurentPoly& c) {
        if (c.is_zero()) return;
        auto it = terms_.find(w);
        if (it == terms_.end()) {
            if (!in_fw(w))
                throw std::invalid_argument("AsphElt: index is not a minimal coset representative");
            terms_.emplace(w, c);
        } else {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    AsphElt& operator+=(const AsphElt& o) {
        for (const auto& [w, c] : o.terms_) add(w, c);
        return *this;
    }
    AsphElt& operator-=(const AsphElt& o) {
        for (const auto& [w, c] : o.terms_) add(w, -c);
        return *this;
    }
    friend AsphElt operator+(AsphElt a, const AsphElt& b) { return a += b; }
    friend AsphElt operator-(AsphElt a, const AsphElt& b) { return a -= b; }
    friend AsphElt operator*(const LaurentPoly& c, const AsphElt& m) {
        AsphElt r;
        if (c.is_zero()) return r;
        for (const auto& [w, p] : m.terms_) r.terms_.emplace(w, c * p);
        return r;
    }

    bool operator==(const AsphElt& o) const { return terms_ == o.terms_; }
    bool operator!=(const AsphElt& o) const { return terms_ != o.terms_; }

    const WeylElt& top_index() const {
        if (terms_.empty()) throw std::logic_error("top_index of zero element");
        return terms_.rbegin()->first;
    }

private:
    std::map<WeylElt, LaurentPoly> terms_;
};

/// 1 (x) h. Each H_w is rewritten through the length-additive normal form
/// H_w = H_u H_x with u finite and x minimal, contributing (-v)^l(u) N_x.
inline AsphElt project(const HeckeElt& h) {
    AsphElt out;
    if (h.is_zero()) return out;
    const auto& d = h.terms().begin()->first.datum();
    std::vector<WeylElt> finite_gens;
    for (std::size_t i = 0; i < d->num_simples(); ++i)
        finite_gens.push_back(WeylElt::reflection(d, d->simple_roots()[i], d->simple_coroots()[i],
                                                  std::vector<long long>(d->rank(), 0)));
    for (const auto& [w, c] : h.terms()) {
        WeylElt x = w;
        long long finite_len = 0;
        bool moved = true;
        while (moved) {
            moved = false;
            for (const auto& s : finite_gens) {
                WeylElt cand = multiply(s, x);
                if (cand.length() < x.length()) {
                    x = std::move(cand);
                    ++finite_len;
                    moved = true;
                }
            }
        }
        LaurentPoly sign = LaurentPoly::term(finite_len % 2 == 0 ? 1 : -1, finite_len);
        out.add(x, c * sign);
    }
    return out;
}

/// m * H_s in the standard basis.
inline AsphElt act_gen(const AsphElt& m, const WeylElt& s) {
    AsphElt r;
    for (const auto& [x, c] : m.terms()) {
        WeylElt xs = multiply(x, s);
        if (xs.length() > x.length()) {
            if (in_fw(xs)) {
                r.add(xs, c);
            } else {
                r.add(x, c * (-detail::v_plus()));  // xs = tx with t finite simple
            }
        } else {
            r.add(xs, c);
            r.add(x, c * detail::v_inv_minus_v());
        }
    }
    return r;
}

inline AsphElt act_omega(const AsphElt& m, const WeylElt& omega) {
    AsphElt r;
    for (const auto& [x, c] : m.terms()) r.add(multiply(x, omega), c);
    return r;
}

/// Right action m * h, decomposing h as in mul_standard.
inline AsphElt act(const AsphElt& m, const HeckeElt& h) {
    if (m.is_zero() || h.is_zero()) return AsphElt::zero();
    const auto& d = m.terms().begin()->first.datum();
    if (d.get() != h.terms().begin()->first.datum().get())
        throw datum_mismatch("act: module element and algebra element over different data");
    Generators g = coxeter_generators(d);
    AsphElt out;
    for (const auto& [y, c] : h.terms()) {
        OmegaFactorization f = omega_of(y, g);
        AsphElt cur = m;
        for (int idx : f.word) cur = act_gen(cur, g.elts[idx]);
        if (!f.omega.is_identity()) cur = act_omega(cur, f.omega);
        out += c * cur;
    }
    return out;
}

/// Provider interface for the canonical basis of the antispherical module.
class AsphBasisProvider {
public:
    virtual ~AsphBasisProvider() = default;
    virtual const RootDatumPtr& datum() const = 0;
    virtual int radius() const = 0;
    virtual bool covers(const WeylElt& w) const = 0;
    virtual const AsphElt& element(const WeylElt& w) const = 0;
    virtual const std::map<WeylElt, long long>& mu_row(const WeylElt& w) const = 0;
};

/// Canonical basis over the minimal representatives in a ball, built by
/// projecting the Hecke canonical table and, independently, by the direct
/// recursion. Construction fails if the two disagree anywhere.
class AsphTable final : public AsphBasisProvider {
public:
    AsphTable(const CanonicalBasisProvider& hecke_table, int radius)
        : datum_(hecke_table.datum()), radius_(radius), gens_(coxeter_generators(datum_)) {
        if (hecke_table.radius() < radius)
            throw insufficient_radius("asph table: hecke table radius too small");
        build(hecke_table);
    }

    const RootDatumPtr& datum() const override { return datum_; }
    int radius() const override { return radius_; }
    bool covers(const WeylElt& w) const override { return entries_.count(w) != 0; }

    const AsphElt& element(const WeylElt& w) const override {
        auto it = entries_.find(w);
        if (it == entries_.end())
            throw insufficient_radius("asph table does not cover the requested element");
        return it->second;
    }

    const std::map<WeylElt, long long>& mu_row(const WeylElt& w) const override {
        auto it = mu_.find(w);
        if (it == mu_.end())
            throw insufficient_radius("asph table does not cover the requested mu row");
        return it->second;
    }

    const std::map<WeylElt, AsphElt>& entries() const { return entries_; }

private:
    void build(const CanonicalBasisProvider& ht) {
        std::vector<WeylElt> elts;
        for (const WeylElt& w : ball(datum_, radius_))
            if (in_fw(w)) elts.push_back(w);

        // route one: projection
        std::vector<AsphElt> projected(elts.size());
        parallel_for(elts.size(), [&](std::size_t k) {
            projected[k] = project(ht.element(elts[k]));
        });
        for (std::size_t k = 0; k < elts.size(); ++k)
            entries_.emplace(elts[k], std::move(projected[k]));

        // route two: direct recursion, compared entry by entry
        std::map<WeylElt, AsphElt> rec;
        std::map<WeylElt, std::map<WeylElt, long long>> recmu;
        for (const WeylElt& w : elts) {
            AsphElt val;
            std::map<WeylElt, long long> murow;
            if (w.length() == 0) {
                val = AsphElt::basis(w);
            } else {
                std::size_t si = gens_.elts.size();
                for (std::size_t i = 0; i < gens_.elts.size(); ++i)
                    if (multiply(w, gens_.elts[i]).length() < w.length()) { si = i; break; }
                if (si == gens_.elts.size())
                    throw std::logic_error("asph table: no right descent");
                const WeylElt& s = gens_.elts[si];
                WeylElt wp = multiply(w, s);  // stays minimal
                const AsphElt& base = rec.at(wp);
                val = act_gen(base, s) + detail::v_plus() * base;
                for (const auto& [y, mcoef] : recmu.at(wp))
                    if (multiply(y, s).length() < y.length())
                        val -= LaurentPoly(mcoef) * rec.at(y);
            }
            for (const auto& [x, c] : val.terms()) {
                if (x == w) {
                    if (c != LaurentPoly(1))
                        throw std::logic_error("asph table: diagonal coefficient is not 1");
                    continue;
                }
                if (!c.in_v_zv())
                    throw std::logic_error("asph table: off-diagonal entry outside vZ[v]");
                Int muc = c.coeff(1);
                if (muc != 0) murow[x] = static_cast<long long>(muc);
            }
            rec.emplace(w, std::move(val));
            recmu.emplace(w, std::move(murow));
        }
        for (const auto& [w, val] : rec) {
            if (entries_.at(w) != val)
                throw std::logic_error("asph table: projection and recursion disagree at " +
                                       format_elt(w));
        }
        mu_ = std::move(recmu);
    }

    RootDatumPtr datum_;
    int radius_;
    Generators gens_;
    std::map<WeylElt, AsphElt> entries_;
    std::map<WeylElt, std::map<WeylElt, long long>> mu_;
};

/// Canonical antispherical basis over ball(d, radius); the given Hecke
/// table must cover the ball.
inline AsphTable canonical_asph(const RootDatumPtr& d, int radius,
                                const CanonicalBasisProvider& t) {
    if (t.datum().get() != d.get())
        throw datum_mismatch("canonical_asph: table belongs to a different root datum");
    return AsphTable(t, radius);
}

inline std::map<WeylElt, LaurentPoly> expand_in_canonical_asph(AsphElt m,
                                                               const AsphBasisProvider& t) {
    std::map<WeylElt, LaurentPoly> out;
    while (!m.is_zero()) {
        const WeylElt& x = m.top_index();
        LaurentPoly c = m.coeff(x);
        out[x] = c;
        m -= c * t.element(x);
    }
    return out;
}

} // namespace cellulo
