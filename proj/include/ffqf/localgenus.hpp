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

#ifndef FFQF_LOCALGENUS_HPP
#define FFQF_LOCALGENUS_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ffqf/form.hpp"

namespace ffqf {

/// A place of F_q(t): a monic irreducible polynomial, or infinity (uniformizer 1/t).
class Place {
   public:
    static Place infinity(const Field& field) { return Place(field); }
    static Place finite(const Poly& p);  // throws DomainError unless p is irreducible

    bool is_infinite() const noexcept { return !p_.has_value(); }
    const Poly& poly() const;  // finite places only
    const Field& field() const noexcept { return *field_; }
    int residue_degree() const noexcept { return p_ ? p_->degree() : 1; }
    int valuation(const Poly& f) const;
    /// Residue of the unit part of f (f != 0) as a quadratic character value.
    int unit_char(const Poly& f) const;
    std::string to_string() const { return p_ ? p_->to_string() : "inf"; }

    bool operator==(const Place& o) const { return field_ == o.field_ && p_ == o.p_; }

   private:
    explicit Place(const Field& field) : field_(&field) {}
    Place(const Field& field, Poly p) : field_(&field), p_(std::move(p)) {}
    const Field* field_;
    std::optional<Poly> p_;
};

/// Tame Hilbert symbol (f, g)_v.
int hilbert_symbol(const Poly& f, const Poly& g, const Place& v);

/// Places where (f, g) can be nontrivial: monic irreducible divisors of f*g, then infinity.
std::vector<Place> relevant_places(const Poly& f, const Poly& g);

int hasse_invariant(const Form& Q, const Place& v);

struct JordanBlock {
    int scale = 0;
    int rank = 0;
    int unit_det_char = 1;
    bool operator==(const JordanBlock&) const = default;
};

struct JordanInvariant {
    std::vector<JordanBlock> blocks;  // strictly increasing scales
    bool operator==(const JordanInvariant&) const = default;
    std::string to_string() const;
};

/// p-adic diagonal entries p^{s_i} u_i with the units u_i given mod p.
struct PadicDiagonal {
    std::vector<int> scales;
    std::vector<Poly> units;
};

PadicDiagonal padic_diagonalize(const Form& Q, const Poly& p);
JordanInvariant jordan_invariants(const Form& Q, const Poly& p);

struct InfinityData {
    int disc_degree_parity = 0;
    int disc_lead_char = 1;
    int hasse = 1;
    bool operator==(const InfinityData&) const = default;
};

struct GenusSymbol {
    Poly disc;
    SquareClass disc_class;
    std::map<Poly, JordanInvariant> finite_data;
    InfinityData infinity_data;

    // disc is kept exactly but compared up to squares: a change of variables
    // with det c rescales it by c^2 and leaves every other entry alone.
    bool operator==(const GenusSymbol& o) const {
        return disc_class == o.disc_class && finite_data == o.finite_data && infinity_data == o.infinity_data;
    }
    std::string to_string() const;
};

GenusSymbol genus_symbol(const Form& Q);
bool same_genus(const Form& Q, const Form& Q2);

/// Whether f is represented by Q over the completion A_p.
bool local_represents(const Form& Q, const Poly& f, const Poly& p);

/// Whether f is represented by Q over the field K_v (any place, including infinity).
bool field_represents(const Form& Q, const Poly& f, const Place& v);

}  // namespace ffqf

#endif
