#pragma once

// Machine-readable reports. JSON objects keep their keys sorted and exact
// rationals are strings "num/den", so output is byte-deterministic; every
// exact rational also gets a "<key>_approx" floating-point companion.

#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "frobw/rational.hpp"
#include "frobw/splitting.hpp"
#include "frobw/toric.hpp"

namespace frobw {

inline constexpr const char* version_string = "0.1.0";

using Json = nlohmann::json;

inline void put_rational(Json& obj, const std::string& key, const Rational& r) {
  obj[key] = to_string(r);
  obj[key + "_approx"] = to_double(r);
}

inline void put_rational(Json& obj, const std::string& key, const std::optional<Rational>& r) {
  if (r) {
    put_rational(obj, key, *r);
  } else {
    obj[key] = nullptr;
    obj[key + "_approx"] = nullptr;
  }
}

inline Json envelope(const std::string& kind, Json input, std::optional<std::uint32_t> p) {
  Json j;
  j["kind"] = kind;
  j["input"] = std::move(input);
  j["p"] = p ? Json(*p) : Json(nullptr);
  j["results"] = Json::array();
  j["checks"] = Json::object();
  j["version"] = version_string;
  j["elapsed_ms"] = 0;
  return j;
}

inline Json profile_json(const SplittingProfile& pr) {
  Json j;
  j["e"] = pr.e;
  j["q"] = pr.q;
  j["M_e"] = pr.pivot;
  j["fsplit"] = pr.fsplit;
  j["m_e"] = pr.m_e ? Json(*pr.m_e) : Json(nullptr);
  put_rational(j, "alpha_e", pr.alpha_e);
  put_rational(j, "alpha_upper", pr.alpha_upper);
  j["a_e"] = pr.a_e ? Json(*pr.a_e) : Json(nullptr);
  put_rational(j, "s_raw", pr.s_raw);
  Json degrees = Json::array();
  for (const auto& s : pr.slices)
    degrees.push_back({{"m", s.m}, {"dimRm", s.dim_R}, {"b", s.b}, {"dimIe", s.dim_I()}});
  j["degrees"] = std::move(degrees);
  j["duality_ok"] = pr.duality_ok;
  j["row_counts_ok"] = pr.counts_ok;
  j["threshold_scan_ok"] = pr.scan_monotone_ok;
  j["monotone_ok"] = pr.monotone_ok ? Json(*pr.monotone_ok) : Json(nullptr);
  j["advisory"] = pr.advisory;
  j["notes"] = pr.notes;
  return j;
}

/// Aggregated flags over a list of profiles.
inline Json profile_checks(const std::vector<SplittingProfile>& profs, bool duality_checked) {
  bool duality = true, counts = true, scan = true, monotone = true, any_monotone = false;
  for (const auto& pr : profs) {
    duality = duality && pr.duality_ok;
    counts = counts && pr.counts_ok;
    scan = scan && pr.scan_monotone_ok;
    if (pr.monotone_ok) {
      any_monotone = true;
      monotone = monotone && *pr.monotone_ok;
    }
  }
  Json c;
  c["duality"] = duality_checked ? Json(duality) : Json("skipped");
  c["row_counts"] = counts;
  c["threshold_scan"] = scan;
  c["monotonicity"] = any_monotone ? Json(monotone) : Json("needs two levels");
  return c;
}

inline Json split_report(const Json& input, std::uint32_t p, const std::vector<SplittingProfile>& profs,
                         bool duality_checked) {
  Json j = envelope("split", input, p);
  for (const auto& pr : profs) j["results"].push_back(profile_json(pr));
  j["checks"] = profile_checks(profs, duality_checked);
  return j;
}

inline Json fano_json(const Json& input, std::uint32_t p, const FanoReport& rep, bool duality_checked) {
  Json j = envelope("fano", input, p);
  for (std::size_t i = 0; i < rep.levels.size(); ++i) {
    const auto& lv = rep.levels[i];
    Json r = profile_json(rep.profiles[i]);
    put_rational(r, "alpha_estimate", lv.alpha_estimate);
    put_rational(r, "alpha_upper_normalized", lv.alpha_upper);
    put_rational(r, "alpha_upper_monotone", lv.alpha_upper_monotone);
    put_rational(r, "s_estimate", lv.s_estimate);
    put_rational(r, "s_halved", lv.s_halved);
    r["upper_below_half"] = lv.upper_below_half;
    r["estimate_within_half"] = lv.estimate_within_half;
    r["sandwich_lower_ok"] = lv.sandwich_lower_ok;
    r["sandwich_upper_ok"] = lv.sandwich_upper_ok;
    r["cone_lower_ok"] = lv.cone_lower_ok;
    r["type"] = "level";
    j["results"].push_back(std::move(r));
  }
  Json s;
  s["type"] = "summary";
  s["coindex"] = rep.coindex;
  s["dimension"] = rep.dimension;
  put_rational(s, "volume", rep.volume);
  put_rational(s, "s_bound", rep.s_bound);
  put_rational(s, "best_alpha_upper", rep.best_alpha_upper);
  s["certified_below_half"] = rep.certified_below_half;
  j["results"].push_back(std::move(s));
  j["checks"] = profile_checks(rep.profiles, duality_checked);
  j["checks"]["estimates_within_half"] = rep.estimates_within_half;
  j["checks"]["s_estimates_within_bound"] = rep.s_estimates_within_bound;
  return j;
}

inline Json toric_json(const Json& input, const ToricAlphaReport& rep) {
  Json j = envelope("toric-alpha", input, std::nullopt);
  Json r;
  put_rational(r, "alpha", rep.alpha);
  put_rational(r, "alpha_at_2r", rep.alpha_doubled);
  r["r"] = rep.r.str();
  Json u = Json::array();
  for (const auto& x : rep.witness_u) u.push_back(x.str());
  r["witness_u"] = std::move(u);
  r["witness_ray"] = rep.witness_ray;
  r["witness_is_vertex"] = rep.witness_is_vertex;
  r["lattice_points"] = rep.lattice_points;
  put_rational(r, "volume", rep.volume);
  put_rational(r, "bound", rep.bound);
  j["results"].push_back(std::move(r));
  j["checks"]["alpha_at_most_half"] = rep.alpha <= Rational(1, 2);
  j["checks"]["dilation_stable"] = rep.alpha == rep.alpha_doubled;
  return j;
}

/// One row per (e, m): e,m,dimRm,b,dimIe.
inline std::string profiles_csv(const std::vector<SplittingProfile>& profs) {
  std::ostringstream out;
  out << "e,m,dimRm,b,dimIe\n";
  for (const auto& pr : profs)
    for (const auto& s : pr.slices) out << pr.e << ',' << s.m << ',' << s.dim_R << ',' << s.b << ',' << s.dim_I() << '\n';
  return out.str();
}

inline std::string toric_csv(const ToricAlphaReport& rep) {
  std::ostringstream out;
  out << "alpha,r,witness_ray,volume,bound\n";
  out << to_string(rep.alpha) << ',' << rep.r.str() << ',' << rep.witness_ray << ',' << to_string(rep.volume) << ','
      << to_string(rep.bound) << '\n';
  return out.str();
}

} // namespace frobw
