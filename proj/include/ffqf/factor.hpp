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

#ifndef FFQF_FACTOR_HPP
#define FFQF_FACTOR_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "ffqf/poly.hpp"

namespace ffqf {

struct Factorization {
    const Field* field = nullptr;
    Field::Elem unit = 0;
    /// Monic irreducible factors with multiplicities, in canonical order.
    std::vector<std::pair<Poly, int>> factors;

    Poly product() const;
};

/// Square-free split, distinct-degree split, then Cantor-Zassenhaus with a
/// seeded generator. Throws DomainError on the zero polynomial.
Factorization factor(const Poly& f, std::uint64_t seed = 0x5eed);

struct SquarefreeDecomposition {
    Poly squarefree;  // monic, square-free
    Poly square_root;  // monic
    Field::Elem unit = 0;  // f = unit * square_root^2 * squarefree
};
SquarefreeDecomposition squarefree_decompose(const Poly& f);

/// Rabin's test. Constants (including units) are not irreducible.
bool is_irreducible(const Poly& f);

/// Quadratic character of f in A/(p): 0 if p | f, otherwise +1 or -1.
/// Throws DomainError unless p is irreducible.
int residue_char(const Poly& f, const Poly& p);

/// Same as residue_char without the irreducibility check, for callers that
/// already hold a factor of a factorization.
int residue_char_unchecked(const Poly& f, const Poly& p);

/// f^(1 + q + ... + q^(d-1)) mod p as a constant of F_q, d = deg p.
Field::Elem residue_norm(const Poly& f, const Poly& p);

/// Orbit of f under multiplication by nonzero squares; the representative has
/// leading coefficient 1 or the field's fixed non-square.
struct SquareClass {
    Poly representative;

    bool operator==(const SquareClass&) const = default;
    auto operator<=>(const SquareClass& o) const { return representative <=> o.representative; }
};
SquareClass square_class(const Poly& f);

/// Roots of f in F_q, ascending.
std::vector<Field::Elem> roots(const Poly& f);

/// All polynomials of degree <= max_degree (including 0), in code order.
std::vector<Poly> all_polys_upto(const Field& field, int max_degree);
/// Monic polynomials of exactly the given degree, in code order.
std::vector<Poly> monic_polys_of_degree(const Field& field, int degree);

}  // namespace ffqf

#endif
