#include "tva/polynomial.hpp"

#include <sstream>

namespace tva {

std::string Poly::str(const std::vector<std::string>& names) const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        if (!first) os << (c > 0 ? " + " : " - ");
        else if (c < 0) os << "-";
        first = false;
        Rat a = c > 0 ? c : Rat(-c);
        bool unit = (a == 1);
        bool any_var = false;
        for (unsigned x : e)
            if (x) any_var = true;
        if (!unit || !any_var) os << rat_str(a);
        bool star = !unit || !any_var;
        for (size_t i = 0; i < e.size(); ++i) {
            if (!e[i]) continue;
            if (star) os << "*";
            star = true;
            os << (i < names.size() ? names[i] : "v" + std::to_string(i));
            if (e[i] > 1) os << "^" << e[i];
        }
    }
    return os.str();
}

} // namespace tva
