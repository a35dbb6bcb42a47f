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

#ifndef FFQF_VERIFY_HPP
#define FFQF_VERIFY_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "ffqf/form.hpp"
#include "json.hpp"

namespace ffqf {

/// Parameters shared by all sweeps. `jobs` never affects results.
struct SweepConfig {
    std::uint32_t q = 5;
    Field::Elem delta = 0;  // 0 keeps the field's default non-square
    int max_disc_degree = 3;  // the ternary check reads this as K
    std::uint64_t samples = 0;  // 0 selects the sweep's default
    std::uint64_t seed = 1;
    int jobs = 1;
    std::uint64_t budget = 100'000'000;  // per repset enumeration
    std::size_t max_listed = 100;        // violations kept verbatim; all are counted
    bool expect_exceptions = false;      // forced on below a theorem's q threshold

    nlohmann::json to_json() const;  // omits jobs
};

struct Violation {
    std::string theorem;
    nlohmann::json witness;  // self-contained: includes q
    std::string observed;
    std::string expected;

    nlohmann::json to_json() const;
};

struct Report {
    std::string theorem;
    SweepConfig config;
    std::string mode = "strict";
    std::uint64_t instances_checked = 0;
    std::uint64_t violation_count = 0;
    std::vector<Violation> violations;
    std::uint64_t exception_count = 0;  // failures recorded in expect-exceptions mode
    std::vector<Violation> exceptions;
    nlohmann::json stats = nlohmann::json::object();

    bool passed() const { return violation_count == 0; }
    void record(Violation v);  // violation or exception depending on mode
    nlohmann::json to_json() const;
    std::string to_tsv() const;
};

Report verify_minima_recovery(const SweepConfig& cfg);
Report verify_disc_recovery(const SweepConfig& cfg);
Report verify_equiv_theorems(const SweepConfig& cfg);

Report smooth_discriminant_identity(const SweepConfig& cfg);

/// The pair of quaternary quadrics
///   u^2 - d v^2 = x^2 - d y^2,
///   a u^2 + 2b uv + c v^2 = a x^2 + 2b' xy + c y^2
/// in P^3, d the field's fixed non-square.
struct QuadricCoeffs {
    Field::Elem a = 0, b = 0, b2 = 0, c = 0;
};

struct QuadricCount {
    std::uint64_t points = 0;
    bool smooth = false;
};

/// Value of d^4 (b-b')^4 (b+b')^4 ((ad+c)^2 - 4d b'^2) ((ad+c)^2 - 4d b^2).
Field::Elem smoothness_obstruction(const Field& F, const QuadricCoeffs& k);
/// Discriminant of det(X M1 + M2) as a quartic in X.
Field::Elem pencil_discriminant(const Field& F, const QuadricCoeffs& k);
bool pencil_has_repeated_factor(const Field& F, const QuadricCoeffs& k);
QuadricCount quadric_curve_count(const Field& F, const QuadricCoeffs& k);
Report quadric_audit(const SweepConfig& cfg);

/// X^2 + t Y^2 - d (t + a^2) Z^2.
Form ternary_family(const Field& F, Field::Elem a);
Report ternary_family_check(const SweepConfig& cfg);
Report cn1_survey(const SweepConfig& cfg);

/// Sweep by name: minima, disc, equiv, smooth, quadric, ternary, cn1.
Report run_sweep(const std::string& name, const SweepConfig& cfg);
const std::vector<std::string>& sweep_names();

/// Recomputes the observed value of a violation from its witness alone.
std::string replay(const Violation& v);

}  // namespace ffqf

#endif
