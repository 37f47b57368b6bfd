// Copyright 2026 The pdscert Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

//! @file
//! The `pdscert` command line.
//!
//! Exit codes:
//!   0  success (verify passed, certificate NONEXISTENT, search complete)
//!   1  verify: the set is not a PDS with the given parameters
//!   2  usage, parse or I/O error
//!   3  certify: INCONCLUSIVE; search: stopped early (timeout)
//!   4  certify: integrity error in a proof stage

#ifndef PDSCERT_CLI_HPP
#define PDSCERT_CLI_HPP

#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "pdscert/certificate.hpp"
#include "pdscert/design.hpp"
#include "pdscert/diophantine.hpp"
#include "pdscert/errors.hpp"
#include "pdscert/group.hpp"
#include "pdscert/io.hpp"
#include "pdscert/pds.hpp"
#include "pdscert/search.hpp"

namespace pdscert::cli {

enum ExitCode : int {
  kOk = 0,
  kVerifyFailed = 1,
  kUsageError = 2,
  kInconclusive = 3,
  kIntegrityError = 4,
};

namespace detail {

/// Writes `text` to `path`, or to `out` when the path is empty.
inline bool emit(const std::string& text, const std::string& path, std::ostream& out, std::ostream& err) {
  if (path.empty()) {
    out << text;
    return true;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) {
    err << "error: cannot write '" << path << "'\n";
    return false;
  }
  f << text;
  return static_cast<bool>(f);
}

inline std::string yes_no(bool b) { return b ? "yes" : "no"; }

}  // namespace detail

inline int cmd_verify(const std::string& set_path, const std::string& params_text, const std::string& group_text, const std::string& out_path,
                      std::ostream& out, std::ostream& err) {
  CandidateSet set{GroupSpec()};
  PdsParams params;
  try {
    params = PdsParams::parse(params_text);
    set = read_set_file(set_path);
    if (!group_text.empty() && !(GroupSpec::parse(group_text) == set.group())) {
      throw ParseError("group " + group_text + " does not match set file group " + set.group().notation());
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  }

  std::ostringstream report;
  report << "group: " << set.group().notation() << "\n";
  report << "params: " << params.to_string() << "\n";
  const auto r = verify_pds(set, params);
  const bool card_ok = set.group().order() == params.v && static_cast<std::int64_t>(set.size()) == params.k;
  report << "cardinality: " << (card_ok ? "pass" : "FAIL " + r.reason) << "\n";
  if (card_ok) report << "spectrum: " << (r.passed ? "pass" : "FAIL " + r.reason) << "\n";
  report << "regular: " << detail::yes_no(is_regular(set)) << "\n";
  report << "trivial: " << detail::yes_no(is_trivial(set)) << "\n";
  report << "multiplier_closed: " << detail::yes_no(lmt_closed(set)) << "\n";
  report << "result: " << (r.passed ? "PASS" : "FAIL") << "\n";
  if (!detail::emit(report.str(), out_path, out, err)) return kUsageError;
  return r.passed ? kOk : kVerifyFailed;
}

inline int cmd_certify(const std::string& params_text, const CertifyOptions& options, const std::string& out_path, std::ostream& out,
                       std::ostream& err) {
  PdsParams params;
  try {
    params = PdsParams::parse(params_text);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  }
  Certificate cert;
  try {
    cert = certify(params, options);
  } catch (const IntegrityError& e) {
    err << "integrity error in stage '" << e.stage() << "': " << e.what() << "\n";
    return kIntegrityError;
  } catch (const Error& e) {
    err << "integrity error: " << e.what() << "\n";
    return kIntegrityError;
  }
  if (!detail::emit(cert.dump(), out_path, out, err)) return kUsageError;
  err << params.to_string() << ": " << to_string(cert.overall) << "\n";
  return cert.overall == Verdict::kNonexistent ? kOk : kInconclusive;
}

inline int cmd_solve_c(std::int64_t sum, std::int64_t sum_of_squares, int length, const std::string& out_path, std::ostream& out,
                       std::ostream& err) {
  std::vector<CTuple> sols;
  try {
    sols = enumerate_solutions(CSystem(length, sum, sum_of_squares));
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  }
  std::string text;
  for (const auto& t : sols) text += format_tuple(t) + "\n";
  return detail::emit(text, out_path, out, err) ? kOk : kUsageError;
}

inline int cmd_plane(const std::string& group_text, const std::string& out_path, std::ostream& out, std::ostream& err) {
  std::string text;
  try {
    text = build_plane(GroupSpec::parse(group_text)).incidence.export_blocks();
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  }
  return detail::emit(text, out_path, out, err) ? kOk : kUsageError;
}

/// One set-file object per line, each with an extra "trivial" flag.
inline int cmd_search(const std::string& group_text, const std::string& params_text, const SearchOptions& options, const std::string& out_path,
                      std::ostream& out, std::ostream& err) {
  SearchResult result;
  try {
    const GroupSpec group = GroupSpec::parse(group_text);
    const PdsParams params = PdsParams::parse(params_text);
    result = search_pds(group, params, options);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  }
  std::string text;
  for (const auto& f : result.sets) text += format_set(f.set, {{"trivial", f.trivial}}) + "\n";
  if (!detail::emit(text, out_path, out, err)) return kUsageError;
  err << result.sets.size() << " set(s) found" << (result.complete ? "" : " (search incomplete)") << "\n";
  return result.complete ? kOk : kInconclusive;
}

/// Parses `args` (args[0] is the program name) and dispatches.
inline int run(const std::vector<std::string>& args, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Partial difference set verification and nonexistence certificates", "pdscert"};
  app.require_subcommand(1);

  std::string out_path;
  int jobs = 1;
  std::string set_path, params_text, group_text;

  auto* verify = app.add_subcommand("verify", "Check a set file against v,k,lambda,mu");
  verify->add_option("set-file", set_path, "JSON set file")->required();
  verify->add_option("params", params_text, "v,k,lambda,mu")->required();
  verify->add_option("--group", group_text, "Expected group, checked against the file");
  verify->add_option("--out", out_path, "Write the report here instead of stdout");

  bool prune = false;
  auto* cert = app.add_subcommand("certify", "Produce a nonexistence certificate");
  cert->add_option("params", params_text, "v,k,lambda,mu")->required();
  cert->add_option("--out", out_path, "Write the certificate here instead of stdout");
  cert->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);
  cert->add_flag("--prune-automorphisms", prune, "Fix a maximal weight on point 0 in the weight searches");

  std::int64_t sum = 0, sumsq = 0;
  int length = 13;
  auto* solve = app.add_subcommand("solve-c", "Nonincreasing tuples with given sum and sum of squares");
  solve->add_option("sum", sum)->required()->check(CLI::NonNegativeNumber);
  solve->add_option("sumsq", sumsq)->required()->check(CLI::NonNegativeNumber);
  solve->add_option("length", length)->required()->check(CLI::PositiveNumber);
  solve->add_option("--out", out_path, "Write the tuples here instead of stdout");

  auto* plane = app.add_subcommand("plane", "Export the 13-point plane of a group, one block per line");
  plane->add_option("group", group_text, "Group notation, e.g. Z2^3xZ3^3")->required();
  plane->add_option("--out", out_path, "Write the blocks here instead of stdout");

  double timeout = 0;
  auto* search = app.add_subcommand("search", "Find all regular PDS with given parameters");
  search->add_option("group", group_text, "Group notation")->required();
  search->add_option("params", params_text, "v,k,lambda,mu")->required();
  search->add_option("--out", out_path, "Write the sets here instead of stdout");
  search->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);
  search->add_option("--timeout", timeout, "Give up after this many seconds")->check(CLI::PositiveNumber);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  if (!reversed.empty()) reversed.pop_back();  // program name
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  }

  if (*verify) return cmd_verify(set_path, params_text, group_text, out_path, out, err);
  if (*cert) return cmd_certify(params_text, CertifyOptions{jobs, prune}, out_path, out, err);
  if (*solve) return cmd_solve_c(sum, sumsq, length, out_path, out, err);
  if (*plane) return cmd_plane(group_text, out_path, out, err);
  SearchOptions so;
  so.jobs = jobs;
  if (timeout > 0) so.timeout_seconds = timeout;
  return cmd_search(group_text, params_text, so, out_path, out, err);
}

}  // namespace pdscert::cli

#endif  // PDSCERT_CLI_HPP
