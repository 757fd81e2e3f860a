// frobw: splitting ideals, Frobenius alpha estimates and toric alpha invariants.

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "frobw/acceptance.hpp"
#include "frobw/parse.hpp"
#include "frobw/report.hpp"
#include "frobw/splitting.hpp"
#include "frobw/toric.hpp"

namespace {

using namespace frobw;

struct RingArgs {
  std::uint32_t p = 0;
  std::string poly;
  std::string poly_file;
  std::string vars;
  std::string levels = "1";
  bool no_duality_check = false;
  unsigned threads = 0;
  std::string format = "json";
  std::string out;
  bool no_timing = false;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::optional<std::vector<std::string>> split_vars(const std::string& text) {
  if (text.empty()) return std::nullopt;
  std::vector<std::string> out;
  std::stringstream s(text);
  for (std::string item; std::getline(s, item, ',');) {
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    out.push_back(item);
  }
  return out;
}

std::pair<unsigned, unsigned> parse_levels(const std::string& text) {
  auto number = [&](const std::string& s) {
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos || s.size() > 3)
      throw UsageError("bad level '" + text + "': expected n or a..b");
    return static_cast<unsigned>(std::stoul(s));
  };
  const auto dots = text.find("..");
  unsigned lo, hi;
  if (dots == std::string::npos) {
    lo = hi = number(text);
  } else {
    lo = number(text.substr(0, dots));
    hi = number(text.substr(dots + 2));
  }
  if (lo < 1 || hi < lo) throw UsageError("level range must satisfy 1 <= a <= b");
  return {lo, hi};
}

PolySource load_poly(const RingArgs& a, const std::string& text_override = {}) {
  std::string text = text_override;
  if (text.empty()) {
    if (a.poly.empty() == a.poly_file.empty()) throw UsageError("give exactly one of --poly and --poly-file");
    text = a.poly.empty() ? read_file(a.poly_file) : a.poly;
  }
  auto src = parse_polynomial(text, a.p, split_vars(a.vars));
  for (const auto& w : src.warnings) std::cerr << "warning: " << w << "\n";
  return src;
}

GradedHypersurface load_ring(const RingArgs& a) {
  auto src = load_poly(a);
  GradedHypersurface ring(src.poly, src.vars);
  for (const auto& w : ring.warnings()) std::cerr << "warning: " << w << "\n";
  return ring;
}

Json ring_input(const RingArgs& a, const GradedHypersurface& ring) {
  Json in;
  in["poly"] = format_polynomial(ring.equation(), ring.names());
  in["vars"] = ring.names();
  in["e"] = a.levels;
  in["duality_check"] = !a.no_duality_check;
  return in;
}

void emit(const std::string& text, const std::string& out) {
  if (out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out, std::ios::binary);
  if (!f) throw UsageError("cannot write " + out);
  f << text;
}

void emit_json(Json j, const RingArgs& a, std::chrono::steady_clock::time_point t0) {
  if (!a.no_timing)
    j["elapsed_ms"] = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();
  emit(j.dump(2) + "\n", a.out);
}

/// Self-checks on a profile: failures here always indicate a bug, unless the
/// ring was flagged degenerate.
void enforce(const std::vector<SplittingProfile>& profs, bool duality) {
  for (const auto& pr : profs) {
    if (!pr.counts_ok) throw InternalCheckFailure("row count mismatch at level " + std::to_string(pr.e));
    if (pr.advisory) continue;
    if (duality && !pr.duality_ok) throw InternalCheckFailure(pr.notes.front());
    if (!pr.scan_monotone_ok) throw InternalCheckFailure(pr.notes.front());
    if (pr.monotone_ok && !*pr.monotone_ok)
      throw InternalCheckFailure("monotonicity fails between levels " + std::to_string(pr.e - 1) + " and " +
                                 std::to_string(pr.e));
  }
}

void add_ring_options(CLI::App* cmd, RingArgs& a, bool with_levels) {
  cmd->add_option("--p", a.p, "characteristic (prime)")->required();
  cmd->add_option("--poly", a.poly, "homogeneous equation G");
  cmd->add_option("--poly-file", a.poly_file, "file holding G");
  cmd->add_option("--vars", a.vars, "comma-separated variable order");
  if (with_levels) {
    cmd->add_option("--e", a.levels, "Frobenius level n or range a..b")->capture_default_str();
    cmd->add_flag("--no-duality-check", a.no_duality_check, "do not enforce the duality palindrome");
    cmd->add_option("--threads", a.threads, "worker threads (default FROBW_THREADS or all cores)");
    cmd->add_option("--format", a.format, "json or csv")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
  }
  cmd->add_option("--out", a.out, "write the report here instead of stdout");
  cmd->add_flag("--no-timing", a.no_timing, "report elapsed_ms as 0 for byte-stable output");
}

int run_split(const RingArgs& a, bool fano) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto [lo, hi] = parse_levels(a.levels);
  const auto ring = load_ring(a);
  if (fano && !ring.is_fano()) throw ValidationError("non-Fano: v−δ = " + std::to_string(ring.fano_coindex()));
  ProfileOptions opts;
  opts.threads = a.threads;
  auto profs = profiles(ring, lo, hi, opts);
  if (a.format == "csv") {
    enforce(profs, !a.no_duality_check);
    emit(profiles_csv(profs), a.out);
    return 0;
  }
  Json report;
  if (fano) {
    auto rep = fano_report(ring, profs);
    report = fano_json(ring_input(a, ring), a.p, rep, !a.no_duality_check);
  } else {
    report = split_report(ring_input(a, ring), a.p, profs, !a.no_duality_check);
  }
  enforce(profs, !a.no_duality_check);
  emit_json(std::move(report), a, t0);
  return 0;
}

int run_membership(const RingArgs& a, unsigned e, const std::string& element) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto ring = load_ring(a);
  RingArgs with_vars = a;
  std::string names;
  for (const auto& n : ring.names()) names += (names.empty() ? "" : ",") + n;
  with_vars.vars = names;
  if (element.empty()) throw UsageError("--element is required");
  const auto f = load_poly(with_vars, element);
  const auto res = membership_check(ring, e, f.poly);
  Json in;
  in["poly"] = format_polynomial(ring.equation(), ring.names());
  in["vars"] = ring.names();
  in["e"] = e;
  in["element"] = format_polynomial(f.poly, ring.names());
  Json j = envelope("membership", in, a.p);
  j["results"].push_back({{"member", res.member},
                          {"multiple_of_equation", res.multiple_of_equation},
                          {"degree", f.poly.leading_term().mono.degree()}});
  emit_json(std::move(j), a, t0);
  return 0;
}

int run_toric(const std::string& fan_path, const std::string& format, const std::string& out, bool no_timing) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto fan = parse_fan(read_file(fan_path));
  const auto rep = toric_alpha(fan);
  if (format == "csv") {
    emit(toric_csv(rep), out);
    return 0;
  }
  Json in;
  in["fan"] = fan_to_json(fan);
  RingArgs a;
  a.out = out;
  a.no_timing = no_timing;
  emit_json(toric_json(in, rep), a, t0);
  return 0;
}

int run_verify(bool deep, unsigned threads) {
  acceptance::Options opts;
  opts.deep = deep;
  opts.threads = threads;
  opts.on_result = [](const acceptance::CriterionResult& r) { std::cout << acceptance::format_line(r) << std::endl; };
  const auto results = acceptance::run(opts);
  std::size_t failed = 0;
  for (const auto& r : results) failed += (!r.pass && !r.skipped);
  std::cout << (failed ? std::to_string(failed) + " criteria failed" : std::string("all criteria passed")) << "\n";
  return failed ? 4 : 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Frobenius splitting ideals and alpha invariants"};
  app.require_subcommand(1);
  app.set_version_flag("--version", frobw::version_string);

  RingArgs split_args, fano_args, member_args;
  auto* split = app.add_subcommand("split", "splitting-ideal profile b_e(m) of S/(G)");
  add_ring_options(split, split_args, true);
  auto* fano = app.add_subcommand("fano", "normalized alpha and F-signature estimates for a Fano hypersurface");
  add_ring_options(fano, fano_args, true);

  auto* member = app.add_subcommand("membership", "test whether an element lies in I_e");
  add_ring_options(member, member_args, false);
  unsigned member_e = 1;
  std::string element;
  member->add_option("--e", member_e, "Frobenius level")->capture_default_str();
  member->add_option("--element", element, "homogeneous element f")->required();

  auto* toric = app.add_subcommand("toric-alpha", "exact alpha invariant of a toric Fano variety");
  std::string fan_path, toric_format = "json", toric_out;
  bool toric_no_timing = false;
  toric->add_option("--fan", fan_path, "fan JSON file")->required();
  toric->add_option("--format", toric_format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  toric->add_option("--out", toric_out, "output file");
  toric->add_flag("--no-timing", toric_no_timing, "report elapsed_ms as 0");

  auto* verify = app.add_subcommand("verify", "run the built-in acceptance suite");
  bool deep = false;
  unsigned verify_threads = 0;
  verify->add_flag("--deep", deep, "add oracle equivalence checks");
  verify->add_option("--threads", verify_threads, "worker threads");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    if (split->parsed()) return run_split(split_args, false);
    if (fano->parsed()) return run_split(fano_args, true);
    if (member->parsed()) return run_membership(member_args, member_e, element);
    if (toric->parsed()) return run_toric(fan_path, toric_format, toric_out, toric_no_timing);
    if (verify->parsed()) return run_verify(deep, verify_threads);
  } catch (const frobw::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.exit_code();
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 4;
  }
  return 1;
}
