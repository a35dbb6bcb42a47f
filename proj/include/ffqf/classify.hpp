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

#ifndef FFQF_CLASSIFY_HPP
#define FFQF_CLASSIFY_HPP

#include <optional>
#include <utility>
#include <vector>

#include "ffqf/form.hpp"
#include "ffqf/localgenus.hpp"

namespace ffqf {

/// All reduced definite binary forms (a, b, c) with b^2 - ac = D, sorted.
std::vector<Form> enumerate_forms(const Poly& D, bool primitive_only);

/// Definite discriminants of degree <= max_degree, one per class mod F^x2
/// (leading coefficient 1 or delta), in canonical order.
std::vector<Poly> definite_discriminants(const Field& field, int max_degree);

struct ClassTable {
    explicit ClassTable(Poly d) : D(std::move(d)) {}

    Poly D;
    bool primitive_only = false;
    std::vector<Form> forms;
    std::vector<int> proper_class_of;  // per form
    std::vector<int> class_of;         // per form
    std::vector<std::vector<int>> proper_classes;  // form indices
    std::vector<std::vector<int>> classes;         // form indices
    std::vector<int> class_of_proper;              // per proper class
    std::vector<std::vector<int>> genera;          // class indices
    std::vector<int> genus_of_class;
    std::vector<GenusSymbol> genus_symbols;        // per genus

    std::optional<int> index_of(const Form& reduced) const;
    /// Class number h of the genus containing class c.
    int class_number_of_class(int c) const { return static_cast<int>(genera[static_cast<std::size_t>(genus_of_class[static_cast<std::size_t>(c)])].size()); }
    /// Number of proper classes in genus g.
    int proper_count_in_genus(int g) const;
    const Form& representative(int c) const { return forms[static_cast<std::size_t>(classes[static_cast<std::size_t>(c)].front())]; }
};

ClassTable class_table(const Poly& D, bool primitive_only);

/// Number of classes in the genus of Q among forms of discriminant disc(Q)
/// sharing Q's primitivity.
int class_number(const Form& Q);

struct Cn1Result {
    bool applicable = false;  // q > 13
    bool prediction = false;
    int observed_h = 0;
    bool matches() const { return !applicable || prediction == (observed_h == 1); }
};

/// Class-number-one criterion for a primitive definite binary form:
/// deg D <= 1, or deg D = 2 with mu_1 = 1, or deg D = 2, mu_1 = 0 and D reducible.
bool cn1_prediction(const Form& Q);
Cn1Result cn1_classification(const Form& Q);
Cn1Result cn1_classification(const Form& Q, const ClassTable& table);

}  // namespace ffqf

#endif
