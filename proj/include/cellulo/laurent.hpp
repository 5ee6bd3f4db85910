#pragma once

// Exact arithmetic in Z[v, v^-1] with the bar involution v -> v^-1.
//
// Values are kept in a canonical sparse form: a map exponent -> coefficient
// with no zero coefficients stored, iterated in ascending exponent order.

#include "cellulo/common.hpp"

#include <map>
#include <sstream>
#include <string>

namespace cellulo {

class LaurentPoly {
public:
    LaurentPoly() = default;

    explicit LaurentPoly(long long constant) {
        if (constant != 0) coeffs_[0] = constant;
    }

    explicit LaurentPoly(const Int& constant) {
        if (constant != 0) coeffs_[0] = constant;
    }

    /// c * v^e
    static LaurentPoly term(const Int& c, long long e) {
        LaurentPoly p;
        if (c != 0) p.coeffs_[e] = c;
        return p;
    }

    static LaurentPoly v_pow(long long e) { return term(1, e); }

    bool is_zero() const { return coeffs_.empty(); }

    Int coeff(long long e) const {
        auto it = coeffs_.find(e);
        return it == coeffs_.end() ? Int(0) : it->second;
    }

    long long min_exp() const { return coeffs_.begin()->first; }   // nonzero only
    long long max_exp() const { return coeffs_.rbegin()->first; }  // nonzero only

    const std::map<long long, Int>& terms() const { return coeffs_; }

    LaurentPoly& operator+=(const LaurentPoly& q) {
        for (const auto& [e, c] : q.coeffs_) add_term(e, c);
        return *this;
    }

    LaurentPoly& operator-=(const LaurentPoly& q) {
        for (const auto& [e, c] : q.coeffs_) add_term(e, -c);
        return *this;
    }

    friend LaurentPoly operator+(LaurentPoly p, const LaurentPoly& q) { return p += q; }
    friend LaurentPoly operator-(LaurentPoly p, const LaurentPoly& q) { return p -= q; }

    friend LaurentPoly operator*(const LaurentPoly& p, const LaurentPoly& q) {
        LaurentPoly r;
        for (const auto& [e1, c1] : p.coeffs_)
            for (const auto& [e2, c2] : q.coeffs_)
                r.add_term(e1 + e2, c1 * c2);
        return r;
    }

    LaurentPoly& operator*=(const LaurentPoly& q) { return *this = *this * q; }

    LaurentPoly operator-() const {
        LaurentPoly r;
        for (const auto& [e, c] : coeffs_) r.coeffs_[e] = -c;
        return r;
    }

    /// The bar involution v -> v^-1.
    LaurentPoly bar() const {
        LaurentPoly r;
        for (const auto& [e, c] : coeffs_) r.coeffs_[-e] = c;
        return r;
    }

    bool operator==(const LaurentPoly& q) const { return coeffs_ == q.coeffs_; }
    bool operator!=(const LaurentPoly& q) const { return coeffs_ != q.coeffs_; }
    bool operator<(const LaurentPoly& q) const { return coeffs_ < q.coeffs_; }

    /// True iff every term has exponent >= 1 (the strictly positive part vZ[v]).
    bool in_v_zv() const { return coeffs_.empty() || min_exp() >= 1; }

    bool nonnegative_coeffs() const {
        for (const auto& [e, c] : coeffs_) {
            (void)e;
            if (c < 0) return false;
        }
        return true;
    }

    /// Terms `c*v^e` joined by " + " in ascending exponent order; "0" if zero.
    std::string str() const {
        if (coeffs_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& [e, c] : coeffs_) {
            if (!first) os << " + ";
            os << c << "*v^" << e;
            first = false;
        }
        return os.str();
    }

    /// Parses the same grammar str() emits. Whitespace around '+' is optional.
    static LaurentPoly parse(const std::string& text) {
        LaurentPoly p;
        std::size_t pos = 0;
        auto skip_ws = [&] { while (pos < text.size() && text[pos] == ' ') ++pos; };
        skip_ws();
        if (pos < text.size() && text.compare(pos, 1, "0") == 0 && pos + 1 == text.size())
            return p;
        while (pos < text.size()) {
            skip_ws();
            std::size_t start = pos;
            if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) ++pos;
            while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
            if (pos == start) throw std::invalid_argument("laurent parse: bad coefficient in '" + text + "'");
            Int c(text.substr(start, pos - start));
            if (text.compare(pos, 3, "*v^") != 0)
                throw std::invalid_argument("laurent parse: expected '*v^' in '" + text + "'");
            pos += 3;
            start = pos;
            if (pos < text.size() && text[pos] == '-') ++pos;
            while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
            if (pos == start) throw std::invalid_argument("laurent parse: bad exponent in '" + text + "'");
            long long e = std::stoll(text.substr(start, pos - start));
            p.add_term(e, c);
            skip_ws();
            if (pos == text.size()) break;
            if (text[pos] != '+') throw std::invalid_argument("laurent parse: expected '+' in '" + text + "'");
            ++pos;
        }
        return p;
    }

private:
    void add_term(long long e, const Int& c) {
        if (c == 0) return;
        auto it = coeffs_.find(e);
        if (it == coeffs_.end()) {
            coeffs_.emplace(e, c);
        } else {
            it->second += c;
            if (it->second == 0) coeffs_.erase(it);
        }
    }

    std::map<long long, Int> coeffs_;
};

inline LaurentPoly bar(const LaurentPoly& p) { return p.bar(); }

} // namespace cellulo
