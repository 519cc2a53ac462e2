#ifndef TAMEKIT_FREEPOLY_HPP
#define TAMEKIT_FREEPOLY_HPP

#include <map>
#include <span>
#include <string>
#include <vector>

#include "tamekit/coeff.hpp"
#include "tamekit/format.hpp"
#include "tamekit/parse.hpp"

namespace tame {

// Word in the free monoid on generator indices; empty word is the unit.
using Word = std::vector<std::uint32_t>;

struct WordLess {
    bool operator()(const Word& a, const Word& b) const {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    }
};

// Noncommutative polynomial: finite linear combination of words.
template <class C>
class FreePolyT {
  public:
    using Terms = std::map<Word, C, WordLess>;

    FreePolyT() : gens_(0) {}
    explicit FreePolyT(std::size_t gens) : gens_(gens) {}

    static FreePolyT zero(std::size_t gens) { return FreePolyT(gens); }
    static FreePolyT constant(std::size_t gens, const C& c) {
        FreePolyT f(gens);
        f.add_term({}, c);
        return f;
    }
    static FreePolyT generator(std::size_t i, std::size_t gens, const C& one) {
        FreePolyT f(gens);
        f.add_term({static_cast<std::uint32_t>(i)}, one);
        return f;
    }
    static FreePolyT word(Word w, std::size_t gens, const C& c) {
        FreePolyT f(gens);
        f.add_term(std::move(w), c);
        return f;
    }

    std::size_t gens() const { return gens_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add_term(Word w, const C& c) {
        if (c.is_zero()) return;
        for (auto g : w)
            if (g >= gens_) throw dimension_error("word uses generator outside the algebra");
        auto [it, inserted] = terms_.emplace(std::move(w), c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    int degree() const { return terms_.empty() ? -1 : static_cast<int>(terms_.rbegin()->first.size()); }
    int height() const {
        return terms_.empty() ? kInfHeight : static_cast<int>(terms_.begin()->first.size());
    }

    FreePolyT operator-() const {
        FreePolyT f(gens_);
        for (auto& [w, c] : terms_) f.terms_.emplace(w, -c);
        return f;
    }
    FreePolyT& operator+=(const FreePolyT& o) {
        check(o);
        for (auto& [w, c] : o.terms_) add_term(w, c);
        return *this;
    }
    FreePolyT& operator-=(const FreePolyT& o) {
        check(o);
        for (auto& [w, c] : o.terms_) add_term(w, -c);
        return *this;
    }
    friend FreePolyT operator+(FreePolyT a, const FreePolyT& b) { return a += b; }
    friend FreePolyT operator-(FreePolyT a, const FreePolyT& b) { return a -= b; }

    // Concatenation product, extended bilinearly.
    friend FreePolyT operator*(const FreePolyT& a, const FreePolyT& b) {
        a.check(b);
        FreePolyT r(a.gens_);
        for (auto& [wa, ca] : a.terms_)
            for (auto& [wb, cb] : b.terms_) {
                Word w = wa;
                w.insert(w.end(), wb.begin(), wb.end());
                r.add_term(std::move(w), ca * cb);
            }
        return r;
    }

    FreePolyT scaled(const C& c) const {
        FreePolyT r(gens_);
        if (c.is_zero()) return r;
        for (auto& [w, k] : terms_) r.add_term(w, k * c);
        return r;
    }

    // Unital homomorphism determined by generator images.
    FreePolyT substitute(std::span<const FreePolyT> images) const {
        if (images.size() != gens_)
            throw dimension_error("free substitution: expected " + std::to_string(gens_) +
                                  " images");
        std::size_t m = gens_ ? images[0].gens() : 0;
        for (auto& g : images)
            if (g.gens() != m) throw dimension_error("free substitution: mixed generator counts");
        FreePolyT r(m);
        for (auto& [w, c] : terms_) {
            FreePolyT t = constant(m, c);
            for (auto g : w) t = t * images[g];
            r += t;
        }
        return r;
    }

    template <class F>
    FreePolyT map_coeffs(F&& fn) const {
        FreePolyT r(gens_);
        for (auto& [w, c] : terms_) r.add_term(w, fn(c));
        return r;
    }

    bool operator==(const FreePolyT& o) const { return gens_ == o.gens_ && terms_ == o.terms_; }

  private:
    void check(const FreePolyT& o) const {
        if (gens_ != o.gens_) throw dimension_error("free polynomial generator counts differ");
    }

    std::size_t gens_;
    Terms terms_;
};

using FreePoly = FreePolyT<Coeff>;

template <class C>
FreePolyT<C> commutator(const FreePolyT<C>& a, const FreePolyT<C>& b) {
    return a * b - b * a;
}

inline std::string word_str(const Word& w, const VarNames& names) {
    if (w.empty()) return "1";
    std::string s;
    std::size_t i = 0;
    while (i < w.size()) {
        std::size_t j = i;
        while (j < w.size() && w[j] == w[i]) ++j;
        if (!s.empty()) s += "*";
        s += names[w[i]];
        if (j - i > 1) s += "^" + std::to_string(j - i);
        i = j;
    }
    return s;
}

inline std::string to_string(const FreePoly& f, const VarNames& names) {
    if (f.is_zero()) return "0";
    std::string out;
    for (auto it = f.terms().rbegin(); it != f.terms().rend(); ++it) {
        const auto& [w, c] = *it;
        std::string cs = c.str();
        bool neg = !cs.empty() && cs[0] == '-';
        std::string abs = neg ? cs.substr(1) : cs;
        if (out.empty())
            out += neg ? "-" : "";
        else
            out += neg ? " - " : " + ";
        if (w.empty())
            out += abs;
        else if (abs == "1")
            out += word_str(w, names);
        else
            out += abs + "*" + word_str(w, names);
    }
    return out;
}

namespace detail {

struct FreeAdapter {
    using Value = FreePoly;
    const VarNames& names;
    Field field;

    Value constant(const Rational& q) const {
        return Value::constant(names.size(), Coeff::from_rational(q, field));
    }
    Value negate(const Value& v) const { return -v; }
    Value add(const Value& a, const Value& b) const { return a + b; }
    Value sub(const Value& a, const Value& b) const { return a - b; }
    Value mul(const Value& a, const Value& b) const { return a * b; }
    Value divide(const Value& a, const Value& b) const {
        if (b.terms().size() != 1 || !b.terms().begin()->first.empty())
            throw invalid_input_error("division only by nonzero constants");
        return a.scaled(b.terms().begin()->second.inverse());
    }
    Value power(const Value& v, long e) const {
        Value r = constant(1);
        for (long i = 0; i < e; ++i) r = r * v;
        return r;
    }
    Value atom_pow(const std::string& name, long e, std::size_t pos) const {
        auto idx = names.find(name);
        if (!idx) throw parse_error("unknown generator '" + name + "'", pos);
        if (e < 0) throw parse_error("negative exponent on a generator", pos);
        Word w(static_cast<std::size_t>(e), static_cast<std::uint32_t>(*idx));
        return Value::word(std::move(w), names.size(), Coeff(1, field));
    }
};

} // namespace detail

inline FreePoly parse_free(const std::string& text, const VarNames& names,
                           const Field& field = Field::rationals()) {
    return ExprParser<detail::FreeAdapter>(text, {names, field}).parse();
}

} // namespace tame

#endif
