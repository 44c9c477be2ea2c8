#pragma once

#include "tva/rational.hpp"

#include <map>
#include <string>
#include <vector>

namespace tva {

/// Sparse multivariate polynomial over Rat. Variables are indices 0,1,2,...;
/// exponent vectors are stored with trailing zeros trimmed so the zero-variable
/// monomial is the empty vector.
class Poly {
public:
    using Expo = std::vector<unsigned>;

    Poly() = default;
    explicit Poly(const Rat& c) {
        if (c != 0) terms_[{}] = c;
    }
    static Poly var(int v, unsigned e = 1) {
        Poly p;
        if (e == 0) return Poly(Rat(1));
        Expo x(static_cast<size_t>(v) + 1, 0);
        x[static_cast<size_t>(v)] = e;
        p.terms_[x] = 1;
        return p;
    }

    bool is_zero() const { return terms_.empty(); }
    const std::map<Expo, Rat>& terms() const { return terms_; }

    void add_term(Expo e, const Rat& c) {
        trim(e);
        auto it = terms_.find(e);
        if (it == terms_.end()) {
            if (c != 0) terms_.emplace(std::move(e), c);
        } else {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    Poly& operator+=(const Poly& o) {
        for (const auto& [e, c] : o.terms_) add_term(e, c);
        return *this;
    }
    Poly& operator-=(const Poly& o) {
        for (const auto& [e, c] : o.terms_) add_term(e, -c);
        return *this;
    }
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(const Poly& a, const Poly& b) {
        Poly r;
        for (const auto& [ea, ca] : a.terms_)
            for (const auto& [eb, cb] : b.terms_) {
                Expo e(std::max(ea.size(), eb.size()), 0);
                for (size_t i = 0; i < ea.size(); ++i) e[i] += ea[i];
                for (size_t i = 0; i < eb.size(); ++i) e[i] += eb[i];
                r.add_term(std::move(e), ca * cb);
            }
        return r;
    }
    friend Poly operator*(const Rat& s, const Poly& p) {
        Poly r;
        if (s == 0) return r;
        for (const auto& [e, c] : p.terms_) r.terms_[e] = s * c;
        return r;
    }
    Poly operator-() const { return Rat(-1) * *this; }
    bool operator==(const Poly& o) const = default;

    unsigned degree() const {
        unsigned d = 0;
        for (const auto& [e, c] : terms_) {
            unsigned t = 0;
            for (unsigned x : e) t += x;
            d = std::max(d, t);
        }
        return d;
    }
    unsigned degree_in(int v) const {
        unsigned d = 0;
        for (const auto& [e, c] : terms_)
            if (static_cast<size_t>(v) < e.size()) d = std::max(d, e[static_cast<size_t>(v)]);
        return d;
    }

    Poly derivative(int v) const {
        Poly r;
        for (const auto& [e, c] : terms_) {
            size_t iv = static_cast<size_t>(v);
            if (iv >= e.size() || e[iv] == 0) continue;
            Expo x = e;
            Rat k = x[iv];
            x[iv] -= 1;
            r.add_term(std::move(x), c * k);
        }
        return r;
    }

    /// Substitute variable v by an arbitrary polynomial.
    Poly subst(int v, const Poly& repl) const {
        Poly r;
        size_t iv = static_cast<size_t>(v);
        for (const auto& [e, c] : terms_) {
            unsigned k = iv < e.size() ? e[iv] : 0;
            Expo rest = e;
            if (iv < rest.size()) rest[iv] = 0;
            Poly mono;
            mono.add_term(rest, c);
            for (unsigned i = 0; i < k; ++i) mono = mono * repl;
            r += mono;
        }
        return r;
    }

    Rat eval(const std::vector<Rat>& point) const {
        Rat total = 0;
        for (const auto& [e, c] : terms_) {
            Rat m = c;
            for (size_t i = 0; i < e.size(); ++i)
                if (e[i]) {
                    if (i >= point.size()) throw TvaError("Poly::eval: missing coordinate");
                    m *= rat_pow(point[i], e[i]);
                }
            total += m;
        }
        return total;
    }

    Rat coeff_sum() const {
        Rat s = 0;
        for (const auto& [e, c] : terms_) s += c;
        return s;
    }

    /// Textual form with variable names supplied by the caller.
    std::string str(const std::vector<std::string>& names) const;

private:
    static void trim(Expo& e) {
        while (!e.empty() && e.back() == 0) e.pop_back();
    }
    std::map<Expo, Rat> terms_;
};

} // namespace tva
