#pragma once

#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

#include "grassknot/numeric.hpp"

namespace grassknot {

struct VarA {
  static constexpr char name = 'A';
};
struct VarT {
  static constexpr char name = 't';
};

/// Sparse Laurent polynomial with exact coefficients. The variable is a type
/// tag so bracket values (in A) and Jones values (in t) cannot be mixed.
/// Zero coefficients are never stored, so structural equality is equality.
template <typename Coeff, typename Var>
class LaurentPolynomial {
 public:
  using coefficient_type = Coeff;
  using term_map = std::map<int, Coeff>;

  LaurentPolynomial() = default;
  LaurentPolynomial(const Coeff& constant) { add_term(0, constant); }  // NOLINT(implicit)

  static LaurentPolynomial monomial(int exponent, const Coeff& coeff = Coeff(1)) {
    LaurentPolynomial p;
    p.add_term(exponent, coeff);
    return p;
  }

  [[nodiscard]] const term_map& terms() const noexcept { return terms_; }
  [[nodiscard]] bool is_zero() const noexcept { return terms_.empty(); }
  [[nodiscard]] Coeff coefficient(int exponent) const {
    auto it = terms_.find(exponent);
    return it == terms_.end() ? Coeff(0) : it->second;
  }
  [[nodiscard]] int min_exponent() const { return require_nonzero().begin()->first; }
  [[nodiscard]] int max_exponent() const { return require_nonzero().rbegin()->first; }

  void add_term(int exponent, const Coeff& coeff) {
    if (coeff == 0) return;
    auto [it, inserted] = terms_.try_emplace(exponent, coeff);
    if (!inserted) {
      it->second += coeff;
      if (it->second == 0) terms_.erase(it);
    }
  }

  LaurentPolynomial& operator+=(const LaurentPolynomial& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  LaurentPolynomial& operator-=(const LaurentPolynomial& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }
  friend LaurentPolynomial operator+(LaurentPolynomial a, const LaurentPolynomial& b) { return a += b; }
  friend LaurentPolynomial operator-(LaurentPolynomial a, const LaurentPolynomial& b) { return a -= b; }
  friend LaurentPolynomial operator-(const LaurentPolynomial& a) { return LaurentPolynomial{} - a; }

  friend LaurentPolynomial operator*(const LaurentPolynomial& a, const LaurentPolynomial& b) {
    LaurentPolynomial out;
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) out.add_term(ea + eb, ca * cb);
    return out;
  }
  LaurentPolynomial& operator*=(const LaurentPolynomial& o) { return *this = *this * o; }

  /// Multiply by coeff * var^shift.
  [[nodiscard]] LaurentPolynomial scale_monomial(int shift, const Coeff& coeff) const {
    LaurentPolynomial out;
    if (coeff == 0) return out;
    for (const auto& [e, c] : terms_) out.terms_.emplace_hint(out.terms_.end(), e + shift, c * coeff);
    return out;
  }

  [[nodiscard]] LaurentPolynomial pow(unsigned k) const {
    LaurentPolynomial out(Coeff(1));
    for (unsigned i = 0; i < k; ++i) out *= *this;
    return out;
  }

  /// Substitutes var -> var^-1.
  [[nodiscard]] LaurentPolynomial inverted() const {
    LaurentPolynomial out;
    for (const auto& [e, c] : terms_) out.terms_.emplace(-e, c);
    return out;
  }

  /// Value at an integer point; throws if a negative power of zero is needed.
  [[nodiscard]] Rational evaluate(const BigInt& at) const {
    Rational sum = 0;
    for (const auto& [e, c] : terms_) {
      if (at == 0 && e < 0) throw std::domain_error("negative power of zero");
      Rational term = Rational(c);
      BigInt base = at;
      const int k = e < 0 ? -e : e;
      BigInt power = 1;
      for (int i = 0; i < k; ++i) power *= base;
      term = e < 0 ? term / Rational(power) : term * Rational(power);
      sum += term;
    }
    return sum;
  }

  /// Sorted "exponent:coefficient" tokens, e.g. "-4:-1,-3:1,-1:1"; zero is "".
  [[nodiscard]] std::string serialize() const {
    std::ostringstream out;
    bool first = true;
    for (const auto& [e, c] : terms_) {
      if (!first) out << ',';
      first = false;
      out << e << ':' << c;
    }
    return out.str();
  }

  static LaurentPolynomial deserialize(std::string_view text) {
    LaurentPolynomial p;
    std::size_t pos = 0;
    while (pos < text.size()) {
      std::size_t comma = text.find(',', pos);
      if (comma == std::string_view::npos) comma = text.size();
      std::string_view tok = text.substr(pos, comma - pos);
      const auto colon = tok.find(':');
      if (colon == std::string_view::npos) throw std::invalid_argument("bad polynomial token '" + std::string(tok) + "'");
      const int e = std::stoi(std::string(tok.substr(0, colon)));
      const Coeff c(std::string(tok.substr(colon + 1)));
      if (p.terms_.count(e)) throw std::invalid_argument("repeated exponent in '" + std::string(text) + "'");
      p.add_term(e, c);
      pos = comma + 1;
    }
    return p;
  }

  /// Human-readable form, highest power first, e.g. "-t^4 + t^3 + t".
  [[nodiscard]] std::string pretty() const {
    if (terms_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      const auto& [e, c] = *it;
      Coeff mag = c < 0 ? Coeff(-c) : c;
      if (first) {
        if (c < 0) out << '-';
      } else {
        out << (c < 0 ? " - " : " + ");
      }
      first = false;
      if (e == 0 || mag != 1) out << mag;
      if (e != 0) {
        out << Var::name;
        if (e != 1) out << '^' << e;
      }
    }
    return out.str();
  }

  friend bool operator==(const LaurentPolynomial&, const LaurentPolynomial&) = default;

 private:
  const term_map& require_nonzero() const {
    if (terms_.empty()) throw std::domain_error("zero polynomial has no degree");
    return terms_;
  }

  term_map terms_;
};

using BracketPolynomial = LaurentPolynomial<BigInt, VarA>;
using JonesPolynomial = LaurentPolynomial<BigInt, VarT>;

}  // namespace grassknot
