#ifndef TAMEKIT_FORMAT_HPP
#define TAMEKIT_FORMAT_HPP

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "tamekit/polynomial.hpp"

namespace tame {

// Variable naming for parsing and printing.  The CLI grammar names
// commutative variables x1..xn, with p1..pn aliasing the second half in
// symplectic contexts.
class VarNames {
  public:
    VarNames() = default;
    explicit VarNames(std::vector<std::string> names) : names_(std::move(names)) {
        for (std::size_t i = 0; i < names_.size(); ++i) index_[names_[i]] = i;
    }

    static VarNames plain(std::size_t n) {
        std::vector<std::string> v;
        for (std::size_t i = 1; i <= n; ++i) v.push_back("x" + std::to_string(i));
        return VarNames(std::move(v));
    }
    // x1..xn, p1..pn for K[x,p]
    static VarNames symplectic(std::size_t n) {
        std::vector<std::string> v;
        for (std::size_t i = 1; i <= n; ++i) v.push_back("x" + std::to_string(i));
        for (std::size_t i = 1; i <= n; ++i) v.push_back("p" + std::to_string(i));
        return VarNames(std::move(v));
    }

    std::size_t size() const { return names_.size(); }
    const std::string& operator[](std::size_t i) const { return names_[i]; }
    std::optional<std::size_t> find(const std::string& s) const {
        auto it = index_.find(s);
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }

  private:
    std::vector<std::string> names_;
    std::unordered_map<std::string, std::size_t> index_;
};

inline std::string monomial_str(const Monomial& m, const VarNames& names) {
    std::string s;
    for (std::size_t i = 0; i < m.nvars(); ++i) {
        if (m.exp(i) == 0) continue;
        if (!s.empty()) s += "*";
        s += names[i];
        if (m.exp(i) > 1) s += "^" + std::to_string(m.exp(i));
    }
    return s;
}

// Canonical printing: graded lex descending, signs folded into the
// separators, unit coefficients omitted before variables.
inline std::string to_string(const Polynomial& f, const VarNames& names) {
    if (f.is_zero()) return "0";
    std::string out;
    for (auto it = f.terms().rbegin(); it != f.terms().rend(); ++it) {
        const auto& [m, c] = *it;
        std::string cs = c.str();
        bool neg = !cs.empty() && cs[0] == '-';
        std::string abs = neg ? cs.substr(1) : cs;
        if (out.empty())
            out += neg ? "-" : "";
        else
            out += neg ? " - " : " + ";
        std::string ms = monomial_str(m, names);
        if (ms.empty())
            out += abs;
        else if (abs == "1")
            out += ms;
        else
            out += abs + "*" + ms;
    }
    return out;
}

} // namespace tame

#endif
