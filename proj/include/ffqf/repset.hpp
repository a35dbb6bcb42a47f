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

#ifndef FFQF_REPSET_HPP
#define FFQF_REPSET_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "ffqf/form.hpp"

namespace ffqf {

struct RepsetOptions {
    std::uint64_t budget = 100'000'000;  // cap on enumerated coordinate vectors
    int jobs = 1;
};

/// V_k(Q): canonically ordered values of degree <= k, always containing 0.
struct RepSet {
    int k = 0;
    std::vector<Poly> values;
    std::optional<std::map<Poly, std::uint64_t>> counts;

    bool contains(const Poly& f) const;
};

/// Per-coordinate degree bounds deg x_i <= floor((k - mu_i)/2) on a reduced
/// representative with minima mu; -1 pins the coordinate to zero.
std::vector<int> coordinate_bounds(const MinimaSeq& mu, int k);

RepSet repset_upto(const Form& Q, int k, const RepsetOptions& opts = {});
std::map<Poly, std::uint64_t> rep_numbers(const Form& Q, int k, const RepsetOptions& opts = {});

/// Base-q codes of V_k(Q), sorted ascending (this is the canonical order).
std::vector<std::uint64_t> repset_codes(const Form& Q, int k, const RepsetOptions& opts = {});

struct Representation {
    bool represented = false;
    std::vector<Poly> witness;  // Q(witness) = f when represented
};

Representation represents(const Form& Q, const Poly& f, const RepsetOptions& opts = {});

bool sets_equal_upto(const Form& Q, const Form& Q2, int k, const RepsetOptions& opts = {});

/// Smallest polynomial (canonical order) in exactly one of V_k(Q), V_k(Q2).
std::optional<Poly> first_difference(const Form& Q, const Form& Q2, int k, const RepsetOptions& opts = {});

/// Least k <= 3m-2 with V_k(Q) != V_k(Q2), m the larger discriminant degree.
std::optional<int> distinguishing_degree(const Form& Q, const Form& Q2, const RepsetOptions& opts = {});

}  // namespace ffqf

#endif
