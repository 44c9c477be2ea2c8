#pragma once

#include "tva/rational.hpp"

#include <array>
#include <map>
#include <string>

namespace tva::weak {

/// Fixed parameter slots of the calculus. P_T is the free position variable
/// every operator carries; the rest are the scale parameters.
enum Param : int { P_T = 0, P_RHO, P_ALPHA1, P_ALPHA2, P_EPS1, P_EPS2, P_XI, NPARAMS };

const char* param_name(int p);

using Witness = std::array<Rat, NPARAMS>;

/// Rational affine combination of the parameters and integration variables.
struct Affine {
    Rat c;
    std::array<Rat, NPARAMS> p{};
    std::map<int, Rat> vars; // integration variable index -> coefficient

    Affine() : c(0) {}
    explicit Affine(Rat constant) : c(std::move(constant)) {}

    static Affine param(int which) {
        Affine a;
        a.p[static_cast<size_t>(which)] = 1;
        return a;
    }
    static Affine var(int v) {
        Affine a;
        a.vars[v] = 1;
        return a;
    }

    bool has_vars() const {
        for (auto& [v, k] : vars)
            if (k != 0) return true;
        return false;
    }
    bool is_zero() const;

    Affine& operator+=(const Affine& o);
    Affine& operator-=(const Affine& o);
    friend Affine operator+(Affine a, const Affine& b) { return a += b; }
    friend Affine operator-(Affine a, const Affine& b) { return a -= b; }
    Affine operator-() const;
    friend Affine operator*(const Rat& s, const Affine& a);

    Affine subst_var(int v, const Affine& repl) const;
    /// Substitute a parameter (used to place operators: P_T -> P_T + offset).
    Affine subst_param(int which, const Affine& repl) const;

    /// Value at a witness; requires no integration variables.
    Rat eval(const Witness& w) const;
    /// Parameter part evaluated at the witness, variable part kept.
    Rat eval_const(const Witness& w) const;

    void prune();
    std::string str() const;

    int cmp(const Affine& o) const; // total order for canonical forms
    bool operator==(const Affine& o) const { return cmp(o) == 0; }
    bool operator<(const Affine& o) const { return cmp(o) < 0; }
};

} // namespace tva::weak
