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

#ifndef JACKMOMENT_ENSEMBLE_HPP
#define JACKMOMENT_ENSEMBLE_HPP

#include <cmath>
#include <string>
#include <string_view>
#include <variant>

#include "jackmoment/errors.hpp"

namespace jackmoment {

/// Circular beta-ensemble: density prop. to prod |e^{i theta_k} - e^{i theta_j}|^beta.
struct CircularEnsemble {
  double beta = 2.0;
  int n = 1;
};

/// Jacobi beta-ensemble on (0,1): prod x^a (1-x)^b prod |x_k - x_j|^beta.
struct JacobiEnsemble {
  double a = 0.0;
  double b = 0.0;
  double beta = 2.0;
  int n = 1;
};

enum class GroupFamily { Sp, OPlusEven, OMinusEven };

/// Sp(N), O+(2N) or O-(2N) with Haar measure (beta = 2).
struct ClassicalGroup {
  GroupFamily family = GroupFamily::Sp;
  int n = 1;
};

using EnsembleSpec = std::variant<CircularEnsemble, JacobiEnsemble, ClassicalGroup>;

/// Average of prod |point - lambda_l|^{2 mu}. `point` is |z| for circular
/// ensembles, x for Jacobi ensembles and epsilon (z = 1 + epsilon) for groups.
struct MomentQuery {
  EnsembleSpec ensemble;
  double mu = 0.0;
  double point = 0.0;
};

inline void validate(const EnsembleSpec& spec) {
  std::visit(
      [](const auto& e) {
        using E = std::decay_t<decltype(e)>;
        if (e.n < 1) throw InvalidArgument("ensemble size N must be at least 1");
        if constexpr (std::is_same_v<E, CircularEnsemble>) {
          if (!(e.beta > 0) || !std::isfinite(e.beta)) throw InvalidArgument("beta must be positive");
        } else if constexpr (std::is_same_v<E, JacobiEnsemble>) {
          if (!(e.beta > 0) || !std::isfinite(e.beta)) throw InvalidArgument("beta must be positive");
          if (!(e.a > -1) || !(e.b > -1)) throw InvalidArgument("Jacobi weights need a > -1 and b > -1");
        } else {
          if (e.family == GroupFamily::OMinusEven && e.n < 2)
            throw InvalidArgument("O-(2N) needs N >= 2");
        }
      },
      spec);
}

inline GroupFamily parse_group_family(std::string_view s) {
  if (s == "sp") return GroupFamily::Sp;
  if (s == "o+") return GroupFamily::OPlusEven;
  if (s == "o-") return GroupFamily::OMinusEven;
  throw InvalidArgument("unknown group family '" + std::string(s) + "' (expected sp, o+ or o-)");
}

inline std::string to_string(GroupFamily f) {
  switch (f) {
  case GroupFamily::Sp: return "sp";
  case GroupFamily::OPlusEven: return "o+";
  case GroupFamily::OMinusEven: return "o-";
  }
  return "?";
}

/// Jacobi form of a group's eigenangle density in the variable
/// (1 + cos theta)/2: weight exponent a at cos theta = -1, b at cos theta = 1,
/// and the number of free angles.
struct GroupJacobiForm {
  double a;
  double b;
  int dim;
};

inline GroupJacobiForm group_jacobi_form(GroupFamily family, int n) {
  switch (family) {
  case GroupFamily::Sp: return {0.5, 0.5, n};
  case GroupFamily::OPlusEven: return {-0.5, -0.5, n};
  case GroupFamily::OMinusEven: return {0.5, -0.5, n - 1};
  }
  throw InvalidArgument("unknown group family");
}

} // namespace jackmoment

#endif // JACKMOMENT_ENSEMBLE_HPP
