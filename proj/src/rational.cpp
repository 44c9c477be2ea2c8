#include "tva/rational.hpp"

namespace tva {

std::optional<Rat> rat_parse(const std::string& text) {
    if (text.empty()) return std::nullopt;
    auto is_int = [](const std::string& s) {
        if (s.empty()) return false;
        size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
        if (i == s.size()) return false;
        for (; i < s.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
        return true;
    };
    auto slash = text.find('/');
    try {
        if (slash == std::string::npos) {
            if (!is_int(text)) return std::nullopt;
            return Rat(Int(text));
        }
        std::string num = text.substr(0, slash);
        std::string den = text.substr(slash + 1);
        if (!is_int(num) || !is_int(den)) return std::nullopt;
        Int d(den);
        if (d == 0) return std::nullopt;
        return Rat(Int(num)) / Rat(d);
    } catch (...) {
        return std::nullopt;
    }
}

} // namespace tva
