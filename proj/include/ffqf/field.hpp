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

#ifndef FFQF_FIELD_HPP
#define FFQF_FIELD_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace ffqf {

/// The finite field F_q, q = p^e with p an odd prime.
///
/// Elements are small integer codes in [0, q). For a prime field the code is
/// the residue itself; for an extension it is the base-p digit string of the
/// reduced representative modulo the defining polynomial (lowest digit first).
/// Multiplication goes through discrete log tables, so q is capped at 2^22.
///
/// Field objects are interned: `prime(p)` and `extension(...)` return
/// references with static lifetime, and two handles compare equal iff they
/// are the same object.
class Field {
   public:
    using Elem = std::uint32_t;

    static const Field& prime(std::uint32_t p);
    /// Same arithmetic with a chosen non-square as the fixed delta.
    static const Field& prime(std::uint32_t p, Elem delta);
    /// F_{p^e} with the first monic irreducible of degree e in code order.
    static const Field& extension(std::uint32_t p, unsigned e);
    /// F_{p^e} with an explicit monic modulus (coefficients low to high).
    static const Field& extension(std::uint32_t p, std::vector<std::uint32_t> modulus);

    Field(const Field&) = delete;
    Field& operator=(const Field&) = delete;

    std::uint32_t p() const noexcept { return p_; }
    unsigned e() const noexcept { return e_; }
    std::uint32_t q() const noexcept { return q_; }
    bool is_prime_field() const noexcept { return e_ == 1; }
    /// Defining polynomial over F_p, monic, low to high. Empty for prime fields.
    std::span<const std::uint32_t> modulus() const noexcept { return modulus_; }

    /// Image of an integer in the prime subfield.
    Elem from_int(std::int64_t v) const noexcept;

    Elem add(Elem a, Elem b) const noexcept {
        if (e_ == 1) {
            Elem s = a + b;
            return s >= p_ ? s - p_ : s;
        }
        return add_slow(a, b);
    }
    Elem neg(Elem a) const noexcept {
        if (e_ == 1) return a == 0 ? 0 : p_ - a;
        return neg_slow(a);
    }
    Elem sub(Elem a, Elem b) const noexcept { return add(a, neg(b)); }
    Elem mul(Elem a, Elem b) const noexcept {
        if (a == 0 || b == 0) return 0;
        if (e_ == 1) return static_cast<Elem>(static_cast<std::uint64_t>(a) * b % p_);
        std::uint32_t s = log_[a] + log_[b];
        if (s >= q_ - 1) s -= q_ - 1;
        return exp_[s];
    }
    /// Throws DomainError on zero.
    Elem inv(Elem a) const;
    Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
    Elem pow(Elem a, std::uint64_t n) const noexcept;

    /// Quadratic character: 0 for zero, +1 for nonzero squares, -1 otherwise.
    int legendre(Elem a) const noexcept {
        if (a == 0) return 0;
        return (log_[a] & 1u) ? -1 : 1;
    }
    /// A square root when one exists.
    bool sqrt(Elem a, Elem& root) const noexcept;
    /// Fixed non-square: the first one in ascending code order.
    Elem delta() const noexcept { return delta_; }
    /// Generator of the multiplicative group used for the log tables.
    Elem generator() const noexcept { return exp_[1 % (q_ - 1)]; }
    std::uint32_t log(Elem a) const noexcept { return log_[a]; }

    std::string to_string(Elem a) const;

   private:
    Field(std::uint32_t p, std::vector<std::uint32_t> modulus, Elem delta_override = 0);

    Elem add_slow(Elem a, Elem b) const noexcept;
    Elem neg_slow(Elem a) const noexcept;
    Elem mul_digits(Elem a, Elem b) const noexcept;

    std::uint32_t p_;
    unsigned e_;
    std::uint32_t q_;
    std::vector<std::uint32_t> modulus_;
    std::vector<std::uint32_t> log_;
    std::vector<Elem> exp_;
    Elem delta_ = 0;
};

/// A field element bundled with its field, for API surfaces that take
/// standalone scalars.
struct FieldElem {
    const Field* field = nullptr;
    Field::Elem value = 0;

    bool operator==(const FieldElem& o) const noexcept { return field == o.field && value == o.value; }
    FieldElem operator+(const FieldElem& o) const { return {field, field->add(value, o.value)}; }
    FieldElem operator-(const FieldElem& o) const { return {field, field->sub(value, o.value)}; }
    FieldElem operator*(const FieldElem& o) const { return {field, field->mul(value, o.value)}; }
    FieldElem operator-() const { return {field, field->neg(value)}; }
};

/// u^((q-1)/2) == 1. Throws DomainError on zero.
bool field_is_square(FieldElem u);
FieldElem choose_delta(const Field& field);

bool is_odd_prime(std::uint64_t n) noexcept;

}  // namespace ffqf

#endif
