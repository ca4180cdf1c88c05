// Copyright 2026 The rsvlc Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace rsvlc {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

struct AcceptanceOptions {
  std::uint64_t seed = 2026;
};

CriterionResult check_frame_structure(const AcceptanceOptions& opt = {});
CriterionResult check_orthogonality(const AcceptanceOptions& opt = {});
CriterionResult check_lambertian(const AcceptanceOptions& opt = {});
CriterionResult check_round_trip(const AcceptanceOptions& opt = {});
CriterionResult check_localization(const AcceptanceOptions& opt = {});
CriterionResult check_regimes(const AcceptanceOptions& opt = {});
CriterionResult check_monotone(const AcceptanceOptions& opt = {});
CriterionResult check_sync(const AcceptanceOptions& opt = {});
CriterionResult check_clock(const AcceptanceOptions& opt = {});
CriterionResult check_determinism(const AcceptanceOptions& opt = {});

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opt = {});

/// "PASS  3  title  (0.01 s)  detail" per result.
void print_results(std::ostream& out, const std::vector<CriterionResult>& results);

}  // namespace rsvlc
