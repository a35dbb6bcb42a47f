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

#ifndef FFQF_PICARD_HPP
#define FFQF_PICARD_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "ffqf/poly.hpp"

namespace ffqf {

/// Reduced divisor (u, v) on y^2 = D0: u monic, deg v < deg u, u | v^2 - D0.
struct MumfordDivisor {
    Poly u;
    Poly v;

    static MumfordDivisor identity(const Field& field) { return {Poly::constant(field, 1), Poly(field)}; }
    bool is_identity() const { return u.is_one(); }
    bool operator==(const MumfordDivisor&) const = default;
    auto operator<=>(const MumfordDivisor& o) const {
        if (auto c = u <=> o.u; c != 0) return c;
        return v <=> o.v;
    }
    std::string to_string() const { return "(" + u.to_string() + ", " + v.to_string() + ")"; }
};

/// Throws DomainError unless D0 is square-free of odd degree.
int curve_genus(const Poly& D0);
bool is_valid_divisor(const Poly& D0, const MumfordDivisor& P);

MumfordDivisor cantor_add(const Poly& D0, const MumfordDivisor& P1, const MumfordDivisor& P2);
MumfordDivisor negate(const Poly& D0, const MumfordDivisor& P);
MumfordDivisor multiply(const Poly& D0, const MumfordDivisor& P, std::uint64_t n);
std::uint64_t element_order(const Poly& D0, const MumfordDivisor& P, std::uint64_t group_order);

struct AbelianStructure {
    std::vector<std::uint64_t> invariants;  // d1 | d2 | ..., all > 1
    std::uint64_t order() const;
    std::string to_string() const;
    bool operator==(const AbelianStructure&) const = default;
};

/// Invariant factors from the orders of all elements of a finite abelian group.
AbelianStructure structure_from_orders(const std::vector<std::uint64_t>& orders);

struct PicGroup {
    std::uint64_t order = 0;
    AbelianStructure structure;
    std::vector<MumfordDivisor> elements;  // canonical order
    std::vector<std::uint64_t> orders;     // per element
    MumfordDivisor generator_sample() const;  // first element of maximal order
};

/// Full enumeration of Pic(A[sqrt(D0)]) for square-free odd-degree D0, genus <= 2.
PicGroup pic_group(const Poly& D0);
/// Greedy generators: each step adds an element of maximal order outside the span.
std::vector<MumfordDivisor> generating_set(const Poly& D0, const PicGroup& G);

/// Number of points of the smooth model of y^2 = D0 over F_{q^k}, k in {1, 2}; prime fields.
std::uint64_t curve_point_count(const Poly& D0, int k);

/// |Jac| of the smooth model of y^2 = D0 for genus <= 2, from point counts.
std::uint64_t jacobian_order(const Poly& D0);

/// |Pic| of the maximal order A[sqrt(D0)]: D0 a non-square constant, of odd
/// degree, or of even degree with non-square leading coefficient.
std::uint64_t pic_order_maximal(const Poly& D0);

/// |Pic(A[sqrt(f^2 D0)])| from the conductor exact sequence.
std::uint64_t pic_order_with_conductor(const Poly& D0, const Poly& f);

struct CompSequenceReport {
    Poly D, D0, f;
    std::uint64_t proper_classes = 0;  // |G_D|, primitive forms of discriminant exactly D
    std::uint64_t pic_order = 0;       // |Pic(B)|
    std::uint64_t kernel_order = 0;    // |F^x / N(B^x)|
    bool doubling_holds = false;       // |G_D| == 2 |Pic(B)|
    bool pass = false;                 // |G_D| == kernel_order * |Pic(B)|
};

CompSequenceReport comp_sequence_check(const Poly& D);

}  // namespace ffqf

#endif
