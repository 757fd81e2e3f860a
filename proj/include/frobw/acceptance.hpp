#pragma once

// The built-in verification suite: twelve numbered checks against known
// values for diagonal cubic surfaces, quadrics, elliptic cones and small
// toric Fano varieties. Shared by `frobw verify` and the acceptance test.

#include <chrono>
#include <functional>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "frobw/fan_corpus.hpp"
#include "frobw/oracle.hpp"
#include "frobw/parse.hpp"
#include "frobw/splitting.hpp"
#include "frobw/toric.hpp"

namespace frobw::acceptance {

// Budgets (seconds) and frozen values.
inline constexpr double membership_budget_s = 5.0;
inline constexpr double quadric_budget_s = 30.0;
inline constexpr double cubic_budget_s = 60.0;
inline constexpr double toric_budget_s = 1.0;
inline constexpr double fedder_budget_s = 1.0;
inline constexpr double oracle_budget_s = 600.0;
inline constexpr std::uint64_t cubic_p5_m2 = 9;
inline constexpr std::uint64_t cubic_p5_a1 = 16;
inline constexpr std::uint64_t cubic_p5_a2 = 1891;
inline constexpr std::uint64_t random_fan_count = 12;
inline constexpr std::uint64_t random_fan_seed = 2024;

inline const Rational& cubic_p5_signature_limit() {
  static const Rational r(15, 124);
  return r;
}

struct CriterionResult {
  int id = 0;
  std::string title;
  bool pass = false;
  bool skipped = false;
  std::string detail;
  double seconds = 0;
};

struct Options {
  bool deep = true;
  unsigned threads = 0;
  std::function<void(const CriterionResult&)> on_result;
};

inline std::string format_line(const CriterionResult& r) {
  std::ostringstream out;
  out << "criterion " << (r.id < 10 ? " " : "") << r.id << " "
      << (r.skipped ? "SKIP" : r.pass ? "PASS" : "FAIL") << "  " << r.title << " (";
  out.setf(std::ios::fixed);
  out.precision(2);
  out << r.seconds << " s)";
  if (!r.detail.empty()) out << ": " << r.detail;
  return out.str();
}

inline GradedHypersurface ring_from(const std::string& text, std::uint32_t p) {
  auto src = parse_polynomial(text, p);
  return GradedHypersurface(src.poly, src.vars);
}

inline std::string cubic_text() { return "x0^3 + x1^3 + x2^3 + x3^3"; }
inline std::string q2_text() { return "x0^2 + x1^2 + x2^2 + x3^2"; }
inline std::string q3_text() { return "x0^2 + x1^2 + x2^2 + x3^2 + x4^2"; }
// Split form of the same quadric over F_p: both forms in five variables are
// nondegenerate with square discriminant, hence projectively equivalent.
inline std::string q3_split_text() { return "x0*x1 + x2*x3 + x4^2"; }

/// A ring together with its profiles for e = 1..levels.
struct Case {
  std::string label;
  std::uint32_t p = 0;
  std::shared_ptr<GradedHypersurface> ring;
  std::vector<SplittingProfile> profiles;
};

class Suite {
public:
  explicit Suite(Options opts) : opts_(std::move(opts)) {}

  std::vector<CriterionResult> run() {
    std::vector<CriterionResult> out;
    const std::vector<std::pair<std::string, std::function<void(CriterionResult&)>>> checks = {
        {"paper memberships in I_1 for the diagonal cubic", [this](auto& r) { c1(r); }},
        {"quadric thresholds m_e = p^e - 1", [this](auto& r) { c2(r); }},
        {"cubic thresholds", [this](auto& r) { c3(r); }},
        {"strict bound alpha_F < 1/2 at p = 5", [this](auto& r) { c4(r); }},
        {"duality palindrome", [this](auto& r) { c5(r); }},
        {"monotonicity of alpha_e + p^-e", [this](auto& r) { c6(r); }},
        {"toric exact values", [this](auto& r) { c7(r); }},
        {"toric invariants on the fan corpus", [this](auto& r) { c8(r); }},
        {"quadric surface versus P1 x P1", [this](auto& r) { c9(r); }},
        {"oracle equivalence", [this](auto& r) { c10(r); }},
        {"F-signature trend for the p = 5 cubic", [this](auto& r) { c11(r); }},
        {"Fedder test on the elliptic cone", [this](auto& r) { c12(r); }},
    };
    for (std::size_t i = 0; i < checks.size(); ++i) {
      CriterionResult r;
      r.id = static_cast<int>(i + 1);
      r.title = checks[i].first;
      r.pass = true;
      const auto t0 = std::chrono::steady_clock::now();
      try {
        checks[i].second(r);
      } catch (const std::exception& e) {
        r.pass = false;
        r.detail += (r.detail.empty() ? "" : "; ") + std::string("error: ") + e.what();
      }
      r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      if (opts_.on_result) opts_.on_result(r);
      out.push_back(std::move(r));
    }
    return out;
  }

private:
  static void expect(CriterionResult& r, bool ok, const std::string& what) {
    if (!ok) {
      r.pass = false;
      r.detail += (r.detail.empty() ? "" : "; ") + std::string("failed: ") + what;
    }
  }
  static void note(CriterionResult& r, const std::string& what) {
    r.detail += (r.detail.empty() ? "" : "; ") + what;
  }
  static double since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  }

  ProfileOptions popts() const {
    ProfileOptions o;
    o.threads = opts_.threads;
    return o;
  }

  Case& get_case(const std::string& label, const std::string& text, std::uint32_t p, unsigned levels) {
    const std::string key = label + "/" + std::to_string(p);
    auto it = cases_.find(key);
    if (it != cases_.end()) return it->second;
    Case c;
    c.label = label;
    c.p = p;
    c.ring = std::make_shared<GradedHypersurface>(ring_from(text, p));
    c.profiles = profiles(*c.ring, 1, levels, popts());
    return cases_.emplace(key, std::move(c)).first->second;
  }

  // Quadrics at levels 1..2. Q3 at p = 5 uses the split form (see q3_split_text).
  Case& quadric(unsigned n, std::uint32_t p) {
    if (n == 2) return get_case("Q2", q2_text(), p, 2);
    if (p == 5) return get_case("Q3 (split form)", q3_split_text(), p, 2);
    return get_case("Q3", q3_text(), p, 2);
  }
  Case& cubic(std::uint32_t p) { return get_case("cubic", cubic_text(), p, p == 5 ? 2 : 1); }

  std::vector<Case*> all_cases() {
    return {&quadric(2, 3), &quadric(2, 5), &quadric(3, 3), &quadric(3, 5), &cubic(5), &cubic(7)};
  }

  void c1(CriterionResult& r) {
    const std::vector<std::pair<std::uint32_t, std::string>> items = {
        {5, "x0^2"},
        {7, "x0*x1*x2"},
        {11, "x0^2*x2^3 - x0^2*x3^3"},
        {31, "x0*x1*x2^12*x3 - 10*x0*x1*x2^9*x3^4 + 15*x0*x1*x2^6*x3^7 - 4*x0*x1*x2^3*x3^10 + 12*x0*x1*x3^13"},
    };
    const std::vector<std::string> vars = {"x0", "x1", "x2", "x3"};
    for (const auto& [p, elem] : items) {
      const auto t0 = std::chrono::steady_clock::now();
      const auto ring = GradedHypersurface(parse_polynomial(cubic_text(), p, vars).poly, vars);
      const auto f = parse_polynomial(elem, p, vars).poly;
      const auto res = membership_check(ring, 1, f);
      const double s = since(t0);
      expect(r, res.member, "p=" + std::to_string(p) + ": element not in I_1");
      expect(r, !res.multiple_of_equation, "p=" + std::to_string(p) + ": element is a multiple of G");
      expect(r, s < membership_budget_s, "p=" + std::to_string(p) + " took " + std::to_string(s) + " s");
    }
    // Control: x0 itself is not in I_1 at p = 5 (m_1 = 1).
    const auto ring = GradedHypersurface(parse_polynomial(cubic_text(), 5, vars).poly, vars);
    expect(r, !membership_check(ring, 1, parse_polynomial("x0", 5, vars).poly).member, "control x0 in I_1 at p=5");
    note(r, "p=5,7,11,31 members; degree-15 element at p=31");
  }

  void c2(CriterionResult& r) {
    const auto t0 = std::chrono::steady_clock::now();
    for (unsigned n : {2u, 3u})
      for (std::uint32_t p : {3u, 5u}) {
        auto& c = quadric(n, p);
        for (const auto& pr : c.profiles) {
          const bool ok = pr.m_e && *pr.m_e == pr.q - 1;
          expect(r, ok, c.label + " p=" + std::to_string(p) + " e=" + std::to_string(pr.e) + ": m_e = " +
                            (pr.m_e ? std::to_string(*pr.m_e) : "none") + ", expected " + std::to_string(pr.q - 1));
        }
      }
    // The split form agrees with the sum of squares wherever both are cheap.
    for (std::uint32_t p : {3u, 5u}) {
      const auto sos = ring_from(q3_text(), p), split = ring_from(q3_split_text(), p);
      const unsigned e = p == 3 ? 2 : 1;
      const auto a = profile(sos, e, popts()), b = profile(split, e, popts());
      bool same = a.slices.size() == b.slices.size();
      for (std::size_t m = 0; same && m < a.slices.size(); ++m) same = a.slices[m].b == b.slices[m].b;
      expect(r, same, "Q3 sum-of-squares and split-form profiles differ at p=" + std::to_string(p));
    }
    const double s = since(t0);
    expect(r, s < quadric_budget_s, "took " + std::to_string(s) + " s");
    note(r, "Q2, Q3 at p=3,5, e=1,2 all give m_e = p^e - 1");
  }

  void c3(CriterionResult& r) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto& c5 = cubic(5);
    const auto& c7 = cubic(7);
    const auto m = [](const SplittingProfile& pr) { return pr.m_e ? std::to_string(*pr.m_e) : std::string("none"); };
    expect(r, c5.profiles[0].m_e == 1u, "p=5 e=1: m_1 = " + m(c5.profiles[0]));
    expect(r, c7.profiles[0].m_e == 2u, "p=7 e=1: m_1 = " + m(c7.profiles[0]));
    const auto m2 = c5.profiles[1].m_e;
    expect(r, m2 && (*m2 == 8 || *m2 == 9), "p=5 e=2: m_2 = " + m(c5.profiles[1]) + " outside {8, 9}");
    expect(r, m2 == cubic_p5_m2, "p=5 e=2: m_2 = " + m(c5.profiles[1]) + " differs from frozen value");
    const double s = since(t0);
    expect(r, s < cubic_budget_s, "took " + std::to_string(s) + " s");
    note(r, "m_1 = 1 (p=5), 2 (p=7); m_2 = " + m(c5.profiles[1]) + " (p=5)");
  }

  void c4(CriterionResult& r) {
    auto& c = cubic(5);
    const auto rep = fano_report(*c.ring, c.profiles);
    const Rational& upper = rep.levels.at(1).alpha_upper;
    expect(r, upper == Rational(BigInt(*c.profiles[1].m_e + 1), BigInt(24)), "normalized bound is not (m_2+1)/24");
    expect(r, upper < Rational(1, 2), "(m_2+1)/24 = " + to_string(upper) + " not < 1/2");
    expect(r, rep.certified_below_half, "report does not certify alpha_F < 1/2");
    note(r, "(m_2+1)/24 = " + to_string(upper) + " < 1/2");
  }

  void c5(CriterionResult& r) {
    std::size_t levels = 0;
    for (auto* c : all_cases())
      for (const auto& pr : c->profiles) {
        ++levels;
        const auto top = static_cast<std::uint64_t>(pr.pivot);
        bool ok = pr.slices.size() == top + 1;
        for (std::uint64_t m = 0; ok && m <= top; ++m) ok = pr.b(m) == pr.b(top - m);
        expect(r, ok && pr.duality_ok,
               c->label + " p=" + std::to_string(c->p) + " e=" + std::to_string(pr.e) + ": " +
                   (pr.notes.empty() ? std::string("palindrome broken") : pr.notes.front()));
      }
    note(r, std::to_string(levels) + " profiles palindromic");
  }

  void c6(CriterionResult& r) {
    std::size_t pairs = 0;
    for (auto* c : all_cases())
      for (std::size_t i = 1; i < c->profiles.size(); ++i) {
        const auto& a = c->profiles[i - 1];
        const auto& b = c->profiles[i];
        const Rational lhs = *a.alpha_e + Rational(BigInt(1), BigInt(a.q));
        const Rational rhs = *b.alpha_e + Rational(BigInt(1), BigInt(b.q));
        ++pairs;
        expect(r, rhs <= lhs && b.monotone_ok.value_or(false),
               c->label + " p=" + std::to_string(c->p) + ": " + to_string(rhs) + " > " + to_string(lhs));
      }
    note(r, std::to_string(pairs) + " consecutive level pairs non-increasing");
  }

  void c7(CriterionResult& r) {
    struct Want {
      const char* name;
      Rational alpha, volume;
    };
    const std::vector<Want> wants = {{"p1xp1", Rational(1, 2), Rational(8)},
                                     {"p2", Rational(1, 3), Rational(9)},
                                     {"p1", Rational(1, 2), Rational(2)}};
    for (const auto& w : wants) {
      const auto t0 = std::chrono::steady_clock::now();
      const auto rep = toric_alpha(named_fan(w.name));
      const double s = since(t0);
      expect(r, rep.alpha == w.alpha, std::string(w.name) + ": alpha = " + to_string(rep.alpha));
      expect(r, rep.volume == w.volume, std::string(w.name) + ": volume = " + to_string(rep.volume));
      expect(r, s < toric_budget_s, std::string(w.name) + " took " + std::to_string(s) + " s");
      if (std::string(w.name) == "p1xp1")
        expect(r, rep.bound == Rational(1, 3), "p1xp1: bound = " + to_string(rep.bound));
    }
    note(r, "alpha 1/2, 1/3, 1/2; volumes 8, 9, 2; P1xP1 bound 1/3");
  }

  const std::vector<FanData>& corpus() {
    if (corpus_.empty()) {
      corpus_ = random_fano_fans(random_fan_count, random_fan_seed);
      for (const auto& nf : named_fans()) corpus_.push_back(nf.fan);
    }
    return corpus_;
  }

  void c8(CriterionResult& r) {
    const auto& fans = corpus();
    std::size_t random = 0;
    for (std::size_t i = 0; i < fans.size(); ++i) {
      const auto& f = fans[i];
      if (i < random_fan_count) {
        ++random;
        expect(r, f.dim <= 3, "random fan of dimension " + std::to_string(f.dim));
      }
      const auto rep = toric_alpha(f);
      expect(r, rep.alpha <= Rational(1, 2), "fan " + std::to_string(i) + ": alpha = " + to_string(rep.alpha));
      expect(r, rep.alpha == rep.alpha_doubled, "fan " + std::to_string(i) + ": alpha(2r) = " + to_string(rep.alpha_doubled));
    }
    expect(r, random >= 10, "only " + std::to_string(random) + " random fans");
    note(r, std::to_string(random) + " random + " + std::to_string(fans.size() - random) + " named fans");
  }

  void c9(CriterionResult& r) {
    const Rational toric = toric_alpha(named_fan("p1xp1")).alpha;
    expect(r, toric == Rational(1, 2), "alpha(P1xP1) = " + to_string(toric));
    for (std::uint32_t p : {3u, 5u}) {
      auto& c = quadric(2, p);
      const auto rep = fano_report(*c.ring, c.profiles);
      for (const auto& lv : rep.levels) {
        const BigInt q(lv.q);
        expect(r, lv.alpha_estimate == Rational(q - 1, 2 * q),
               "p=" + std::to_string(p) + " e=" + std::to_string(lv.e) + ": estimate " + to_string(lv.alpha_estimate));
        expect(r, toric - lv.alpha_estimate == Rational(BigInt(1), 2 * q),
               "p=" + std::to_string(p) + " e=" + std::to_string(lv.e) + ": gap " + to_string(toric - lv.alpha_estimate));
      }
    }
    note(r, "gap 1/(2p^e) at p=3,5, e=1,2");
  }

  void c10(CriterionResult& r) {
    if (!opts_.deep) {
      r.skipped = true;
      note(r, "needs --deep");
      return;
    }
    const auto t0 = std::chrono::steady_clock::now();
    struct Item {
      std::string text;
      std::uint32_t p;
      unsigned e;
    };
    std::size_t compared = 0;
    for (const auto& it : {Item{q2_text(), 3, 1}, Item{cubic_text(), 5, 1}, Item{q2_text(), 3, 2}}) {
      const auto ring = ring_from(it.text, it.p);
      const FrobeniusLevel level(ring, it.e);
      const auto top = static_cast<std::uint64_t>(duality_pivot(ring, level.q()));
      for (std::uint64_t m = 0; m <= top; ++m) {
        const auto main = b_dimension(ring, it.e, m);
        const auto naive = oracle::naive_b_dimension(ring, it.e, m);
        ++compared;
        expect(r, main == naive,
               it.text + " p=" + std::to_string(it.p) + " e=" + std::to_string(it.e) + " m=" + std::to_string(m) +
                   ": " + std::to_string(main) + " vs oracle " + std::to_string(naive));
      }
    }
    std::size_t fans = 0;
    for (const auto& f : corpus()) {
      const auto rep = toric_alpha(f);
      const auto naive = oracle::naive_toric_alpha(f);
      const auto vol = oracle::naive_anticanonical_volume(f);
      ++fans;
      expect(r, rep.alpha == naive, "fan " + std::to_string(fans - 1) + ": alpha " + to_string(rep.alpha) + " vs oracle " + to_string(naive));
      expect(r, rep.volume == vol, "fan " + std::to_string(fans - 1) + ": volume " + to_string(rep.volume) + " vs oracle " + to_string(vol));
    }
    // The sum-of-squares Q3 at p = 5, e = 2 against the split form used above.
    const auto sos = profile(ring_from(q3_text(), 5), 2, popts());
    const auto& split = quadric(3, 5).profiles[1];
    bool same = sos.slices.size() == split.slices.size();
    for (std::size_t m = 0; same && m < sos.slices.size(); ++m) same = sos.slices[m].b == split.slices[m].b;
    expect(r, same, "Q3 p=5 e=2: sum-of-squares profile differs from split form");
    const double s = since(t0);
    expect(r, s < oracle_budget_s, "took " + std::to_string(s) + " s");
    note(r, std::to_string(compared) + " degrees and " + std::to_string(fans) + " fans agree; Q3 p=5 e=2 forms agree");
  }

  void c11(CriterionResult& r) {
    auto& c = cubic(5);
    const auto& a = c.profiles;
    expect(r, a[0].a_e == cubic_p5_a1, "a_1 = " + std::to_string(a[0].a_e.value_or(0)));
    expect(r, a[1].a_e == cubic_p5_a2, "a_2 = " + std::to_string(a[1].a_e.value_or(0)));
    expect(r, a[0].s_raw == Rational(16, 125), "s_raw(1) = " + to_string(a[0].s_raw.value_or(0)));
    expect(r, a[1].s_raw == Rational(1891, 15625), "s_raw(2) = " + to_string(a[1].s_raw.value_or(0)));
    note(r, "a_1 = " + std::to_string(a[0].a_e.value_or(0)) + ", s_raw = " + to_string(a[0].s_raw.value_or(0)) +
                "; a_2 = " + std::to_string(a[1].a_e.value_or(0)) + ", s_raw = " + to_string(a[1].s_raw.value_or(0)) +
                "; reference limit " + to_string(cubic_p5_signature_limit()) + " (not enforced)");
  }

  void c12(CriterionResult& r) {
    const auto t0 = std::chrono::steady_clock::now();
    const bool split5 = fedder_is_fsplit(ring_from("x^3 + y^3 + z^3", 5), 1);
    const bool split7 = fedder_is_fsplit(ring_from("x^3 + y^3 + z^3", 7), 1);
    const double s = since(t0);
    expect(r, !split5, "F-split at p=5");
    expect(r, split7, "not F-split at p=7");
    expect(r, s < fedder_budget_s, "took " + std::to_string(s) + " s");
    note(r, "p=5 not F-split, p=7 F-split");
  }

  Options opts_;
  std::map<std::string, Case> cases_;
  std::vector<FanData> corpus_;
};

inline std::vector<CriterionResult> run(const Options& opts = {}) { return Suite(opts).run(); }

} // namespace frobw::acceptance
