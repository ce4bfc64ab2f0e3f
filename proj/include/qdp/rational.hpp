#pragma once

#include <boost/rational.hpp>

#include <optional>
#include <string>

namespace qdp {

// Exact rational arithmetic.  Stability conditions divide by 2 and edge
// lengths are arbitrary positive rationals, so everything numeric in the
// library goes through this type; no floating point anywhere.
using Rat = boost::rational<long long>;

inline long long rat_floor(const Rat& r) {
    long long p = r.numerator(), q = r.denominator();  // q > 0 after normalization
    if (p >= 0) return p / q;
    return -((-p + q - 1) / q);
}

inline long long rat_ceil(const Rat& r) { return -rat_floor(-r); }

// Renders "p" when the denominator is 1, "p/q" otherwise.
inline std::string rat_format(const Rat& r) {
    std::string s = std::to_string(r.numerator());
    if (r.denominator() != 1) s += "/" + std::to_string(r.denominator());
    return s;
}

// Accepts "p" or "p/q" with an optional leading sign; nullopt on anything
// else (including q = 0).
inline std::optional<Rat> rat_parse(const std::string& text) {
    auto parse_int = [](const std::string& s, long long& out) -> bool {
        if (s.empty()) return false;
        std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
        if (i == s.size()) return false;
        long long v = 0;
        for (; i < s.size(); ++i) {
            if (s[i] < '0' || s[i] > '9') return false;
            v = v * 10 + (s[i] - '0');
        }
        out = (s[0] == '-') ? -v : v;
        return true;
    };
    std::size_t slash = text.find('/');
    long long p = 0, q = 1;
    if (slash == std::string::npos) {
        if (!parse_int(text, p)) return std::nullopt;
    } else {
        if (!parse_int(text.substr(0, slash), p)) return std::nullopt;
        if (!parse_int(text.substr(slash + 1), q)) return std::nullopt;
        if (q == 0) return std::nullopt;
    }
    return Rat(p, q);
}

}  // namespace qdp
