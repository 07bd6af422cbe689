// Copyright 2026 The jackmoment Authors
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

// Acceptance run: one PASS/FAIL line per criterion. Exits non-zero if any
// criterion fails.

#include <cstdio>
#include <cstdlib>

#include "jackmoment/asymptotics.hpp"
#include "jackmoment/verify.hpp"

int main() {
  using namespace jackmoment;
  VerifyOptions vo;
  if (const char* t = std::getenv("JACKMOMENT_THREADS")) vo.threads = std::max(1, std::atoi(t));
  int failed = 0;
  for (const auto& r : verify_suite("all", vo, [](const CheckResult& r) {
         std::printf("%s %-4s %s [%s] (%.2fs)\n", r.passed ? "PASS" : "FAIL", r.id.c_str(), r.title.c_str(),
                     r.detail.c_str(), r.seconds);
         std::fflush(stdout);
       }))
    failed += r.passed ? 0 : 1;

  // Informational: the log case on a smaller-epsilon grid, where N*eps is small.
  try {
    FitOptions opts;
    opts.method = MomentMethod::Toeplitz;
    opts.threads = vo.threads;
    const auto rep = fit_divergence({CircularEnsemble{2.0, 30}, -1.5, 0.0}, log_spaced_grid(1e-3, 1e-4, 10),
                                    circular_exponent(-1.5, 2.0, 30), opts);
    std::printf("INFO C8b  log case on eps in [1e-4, 1e-3]: fitted delta %.4f, log coeff %.4f\n", rep.fitted_delta,
                rep.fitted_log_coeff);
  } catch (const std::exception& e) {
    std::printf("INFO C8b  smaller-epsilon fit failed: %s\n", e.what());
  }
  std::printf("%d criteria failed\n", failed);
  return failed == 0 ? 0 : 1;
}
