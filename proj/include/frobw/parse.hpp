#pragma once

// Text input: polynomials over F_p and fan descriptions in JSON.
//
// Polynomial grammar (whitespace ignored):
//   poly   := ['+'|'-'] term (('+'|'-') term)*
//   term   := [integer] ['*'] factor (['*'] factor)*  |  integer
//   factor := ident ['^' integer]
//   ident  := [A-Za-z][A-Za-z0-9]*

#include <cctype>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "frobw/error.hpp"
#include "frobw/polynomial.hpp"
#include "frobw/toric.hpp"

namespace frobw {

struct PolySource {
  std::string raw;
  std::vector<std::string> vars; // index -> name
  PolynomialFp poly;
  std::vector<std::string> warnings;
};

namespace detail {

class PolyLexer {
public:
  explicit PolyLexer(const std::string& text) : s_(text) {}

  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  bool done() {
    skip();
    return i_ >= s_.size();
  }
  char peek() {
    skip();
    return i_ < s_.size() ? s_[i_] : '\0';
  }
  std::size_t pos() const { return i_; }
  void advance() { ++i_; }

  std::string integer() {
    skip();
    const std::size_t start = i_;
    while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
    return s_.substr(start, i_ - start);
  }
  std::string ident() {
    skip();
    const std::size_t start = i_;
    while (i_ < s_.size() && std::isalnum(static_cast<unsigned char>(s_[i_]))) ++i_;
    return s_.substr(start, i_ - start);
  }

  [[noreturn]] void fail(const std::string& what) {
    throw ParseError(what + " at position " + std::to_string(i_));
  }

private:
  const std::string& s_;
  std::size_t i_ = 0;
};

} // namespace detail

/// Parses text into a polynomial over F_p. With an explicit variable list,
/// unknown identifiers are errors; otherwise variables are numbered in order
/// of first appearance.
inline PolySource parse_polynomial(const std::string& text, std::uint32_t p,
                                   const std::optional<std::vector<std::string>>& vars = std::nullopt) {
  const PrimeField F(p);
  PolySource out{text, {}, PolynomialFp(F, 0), {}};
  std::map<std::string, std::size_t> index;
  if (vars) {
    for (const auto& name : *vars) {
      if (name.empty() || !std::isalpha(static_cast<unsigned char>(name[0])) ||
          !std::all_of(name.begin(), name.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)); }))
        throw ParseError("invalid variable name '" + name + "'");
      if (!index.emplace(name, index.size()).second) throw ParseError("duplicate variable '" + name + "'");
    }
    out.vars = *vars;
  }

  // Raw terms as (coefficient, exponent map by variable index).
  std::vector<std::pair<Coeff, std::map<std::size_t, std::uint64_t>>> raw;
  detail::PolyLexer lx(text);
  if (lx.done()) throw ParseError("empty input");
  bool first = true;
  while (!lx.done()) {
    bool negative = false;
    char c = lx.peek();
    if (c == '+' || c == '-') {
      negative = c == '-';
      lx.advance();
    } else if (!first) {
      if (c == '(' || c == ')') lx.fail("implicit product parentheses unsupported");
      lx.fail(std::string("unexpected character '") + c + "'");
    }
    first = false;

    Coeff coeff = 1;
    bool have_coeff = false;
    if (std::isdigit(static_cast<unsigned char>(lx.peek()))) {
      coeff = F.from_decimal(lx.integer());
      have_coeff = true;
      if (lx.peek() == '*') lx.advance();
    }
    std::map<std::size_t, std::uint64_t> exps;
    bool have_factor = false;
    while (true) {
      c = lx.peek();
      if (c == '(' || c == ')') lx.fail("implicit product parentheses unsupported");
      if (!std::isalpha(static_cast<unsigned char>(c))) break;
      const std::string name = lx.ident();
      auto it = index.find(name);
      if (it == index.end()) {
        if (vars) lx.fail("unknown variable '" + name + "'");
        it = index.emplace(name, index.size()).first;
        out.vars.push_back(name);
      }
      std::uint64_t e = 1;
      if (lx.peek() == '^') {
        lx.advance();
        const std::string digits = lx.integer();
        if (digits.empty()) lx.fail("expected exponent after '^'");
        if (digits.size() > 9) lx.fail("exponent too large");
        e = std::stoull(digits);
        if (e == 0) out.warnings.push_back("factor " + name + "^0 treated as 1");
      }
      exps[it->second] += e;
      if (exps[it->second] > std::numeric_limits<Exponent>::max()) lx.fail("exponent too large");
      have_factor = true;
      if (lx.peek() == '*') {
        lx.advance();
        if (!std::isalpha(static_cast<unsigned char>(lx.peek()))) {
          if (lx.peek() == '(') lx.fail("implicit product parentheses unsupported");
          lx.fail("expected a variable after '*'");
        }
      }
    }
    if (!have_coeff && !have_factor) {
      if (lx.done()) lx.fail("expected a term");
      c = lx.peek();
      if (c == '(' || c == ')') lx.fail("implicit product parentheses unsupported");
      lx.fail(std::string("unexpected character '") + c + "'");
    }
    if (coeff == 0) out.warnings.push_back("term " + std::to_string(raw.size() + 1) + " has coefficient 0 mod p");
    raw.push_back({negative ? F.neg(coeff) : coeff, std::move(exps)});
  }

  const std::size_t n = out.vars.size();
  std::vector<Term> terms;
  for (auto& [coeff, exps] : raw) {
    std::vector<Exponent> e(n, 0);
    for (auto [i, x] : exps) e[i] = static_cast<Exponent>(x);
    terms.push_back({Monomial(std::move(e)), coeff});
  }
  out.poly = PolynomialFp(F, n, std::move(terms));
  if (out.poly.is_zero()) throw ParseError("zero polynomial");
  return out;
}

/// Text form accepted back by parse_polynomial: terms in descending order,
/// coefficients in 1..p-1.
inline std::string format_polynomial(const PolynomialFp& f, const std::vector<std::string>& names) {
  if (f.is_zero()) return "0";
  std::string out;
  for (const auto& t : f.terms()) {
    if (!out.empty()) out += " + ";
    std::string mono;
    for (std::size_t i = 0; i < f.nvars(); ++i) {
      if (t.mono[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += names.at(i);
      if (t.mono[i] > 1) mono += "^" + std::to_string(t.mono[i]);
    }
    if (mono.empty())
      out += std::to_string(t.coeff);
    else if (t.coeff == 1)
      out += mono;
    else
      out += std::to_string(t.coeff) + "*" + mono;
  }
  return out;
}

/// {"dim": d, "rays": [[...], ...], "cones": [[i, j, ...], ...]}, validated.
inline FanData parse_fan(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("fan JSON: ") + e.what());
  }
  if (!j.is_object()) throw ParseError("fan JSON must be an object");
  for (const char* key : {"dim", "rays", "cones"})
    if (!j.contains(key)) throw ParseError(std::string("fan JSON lacks \"") + key + "\"");
  if (!j["dim"].is_number_integer() || j["dim"].get<std::int64_t>() < 1)
    throw ParseError("\"dim\" must be a positive integer");
  FanData fan;
  fan.dim = static_cast<unsigned>(j["dim"].get<std::int64_t>());
  if (!j["rays"].is_array() || !j["cones"].is_array()) throw ParseError("\"rays\" and \"cones\" must be arrays");
  for (const auto& ray : j["rays"]) {
    if (!ray.is_array()) throw ParseError("each ray must be an array of integers");
    std::vector<std::int64_t> v;
    for (const auto& x : ray) {
      if (!x.is_number_integer()) throw ParseError("ray entries must be integers");
      v.push_back(x.get<std::int64_t>());
    }
    fan.rays.push_back(std::move(v));
  }
  for (const auto& cone : j["cones"]) {
    if (!cone.is_array()) throw ParseError("each cone must be an array of ray indices");
    std::vector<std::size_t> c;
    for (const auto& x : cone) {
      if (!x.is_number_integer() || x.get<std::int64_t>() < 0)
        throw ParseError("cone entries must be nonnegative integers");
      c.push_back(x.get<std::size_t>());
    }
    fan.cones.push_back(std::move(c));
  }
  validate_fan(fan);
  return fan;
}

inline nlohmann::json fan_to_json(const FanData& fan) {
  return {{"dim", fan.dim}, {"rays", fan.rays}, {"cones", fan.cones}};
}

} // namespace frobw
