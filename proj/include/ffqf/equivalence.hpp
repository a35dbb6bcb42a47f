/*
   Copyright 2026 The ffqf Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#ifndef FFQF_EQUIVALENCE_HPP
#define FFQF_EQUIVALENCE_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "ffqf/form.hpp"

namespace ffqf {

/// Cap on q^n, the number of candidate columns scanned per basis vector.
inline constexpr std::uint64_t kDefaultColumnBudget = 1'000'000;

/// Calls `visit` for every U in GL_n(F_q) with U^t gram(R) U = gram(R2),
/// stopping early when it returns false. Columns are matched one at a time
/// against the target diagonal and then against the off-diagonal entries.
/// Throws CapabilityError when q^n exceeds `column_budget`.
void for_each_constant_isometry(const Form& R, const Form& R2, const std::function<bool(const PolyMatrix&)>& visit,
                                std::uint64_t column_budget = kDefaultColumnBudget);

/// A witness T in GL_n(A) with Q o T = Q2, or nothing. Both forms must be
/// definite of equal rank.
std::optional<Transformation> equivalent(const Form& Q, const Form& Q2, std::uint64_t column_budget = kDefaultColumnBudget);

/// As equivalent(), restricted to det T = 1.
std::optional<Transformation> properly_equivalent(const Form& Q, const Form& Q2,
                                                  std::uint64_t column_budget = kDefaultColumnBudget);

}  // namespace ffqf

#endif
