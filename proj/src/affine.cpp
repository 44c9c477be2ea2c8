#include "tva/affine.hpp"

#include <sstream>

namespace tva::weak {

const char* param_name(int p) {
    static const char* names[NPARAMS] = {"t", "rho", "alpha1", "alpha2", "eps1", "eps2", "xi"};
    return names[p];
}

bool Affine::is_zero() const {
    if (c != 0) return false;
    for (const auto& x : p)
        if (x != 0) return false;
    for (const auto& [v, k] : vars)
        if (k != 0) return false;
    return true;
}

Affine& Affine::operator+=(const Affine& o) {
    c += o.c;
    for (size_t i = 0; i < p.size(); ++i) p[i] += o.p[i];
    for (const auto& [v, k] : o.vars) vars[v] += k;
    prune();
    return *this;
}

Affine& Affine::operator-=(const Affine& o) {
    c -= o.c;
    for (size_t i = 0; i < p.size(); ++i) p[i] -= o.p[i];
    for (const auto& [v, k] : o.vars) vars[v] -= k;
    prune();
    return *this;
}

Affine Affine::operator-() const {
    Affine r;
    r.c = -c;
    for (size_t i = 0; i < p.size(); ++i) r.p[i] = -p[i];
    for (const auto& [v, k] : vars) r.vars[v] = -k;
    return r;
}

Affine operator*(const Rat& s, const Affine& a) {
    Affine r;
    if (s == 0) return r;
    r.c = s * a.c;
    for (size_t i = 0; i < a.p.size(); ++i) r.p[i] = s * a.p[i];
    for (const auto& [v, k] : a.vars) r.vars[v] = s * k;
    return r;
}

Affine Affine::subst_var(int v, const Affine& repl) const {
    auto it = vars.find(v);
    if (it == vars.end() || it->second == 0) return *this;
    Rat k = it->second;
    Affine r = *this;
    r.vars.erase(v);
    r += k * repl;
    return r;
}

Affine Affine::subst_param(int which, const Affine& repl) const {
    Rat k = p[static_cast<size_t>(which)];
    if (k == 0) return *this;
    Affine r = *this;
    r.p[static_cast<size_t>(which)] = 0;
    r += k * repl;
    return r;
}

Rat Affine::eval(const Witness& w) const {
    if (has_vars()) throw TvaError("Affine::eval: expression still contains variables");
    return eval_const(w);
}

Rat Affine::eval_const(const Witness& w) const {
    Rat r = c;
    for (size_t i = 0; i < p.size(); ++i) r += p[i] * w[i];
    return r;
}

void Affine::prune() {
    for (auto it = vars.begin(); it != vars.end();) {
        if (it->second == 0) it = vars.erase(it);
        else ++it;
    }
}

std::string Affine::str() const {
    std::ostringstream os;
    bool first = true;
    auto emit = [&](const Rat& k, const std::string& sym) {
        if (k == 0) return;
        if (!first) os << (k > 0 ? " + " : " - ");
        else if (k < 0) os << "-";
        Rat a = k > 0 ? k : Rat(-k);
        if (sym.empty()) {
            os << rat_str(a);
        } else {
            if (a != 1) os << rat_str(a) << "*";
            os << sym;
        }
        first = false;
    };
    for (const auto& [v, k] : vars) emit(k, "u" + std::to_string(v));
    for (size_t i = 0; i < p.size(); ++i) emit(p[i], param_name(static_cast<int>(i)));
    emit(c, "");
    if (first) return "0";
    return os.str();
}

int Affine::cmp(const Affine& o) const {
    if (c != o.c) return c < o.c ? -1 : 1;
    for (size_t i = 0; i < p.size(); ++i)
        if (p[i] != o.p[i]) return p[i] < o.p[i] ? -1 : 1;
    auto a = vars.begin();
    auto b = o.vars.begin();
    while (a != vars.end() || b != o.vars.end()) {
        if (a == vars.end()) return -1;
        if (b == o.vars.end()) return 1;
        if (a->first != b->first) return a->first < b->first ? -1 : 1;
        if (a->second != b->second) return a->second < b->second ? -1 : 1;
        ++a;
        ++b;
    }
    return 0;
}

} // namespace tva::weak
