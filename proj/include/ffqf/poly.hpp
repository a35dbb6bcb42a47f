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

#ifndef FFQF_POLY_HPP
#define FFQF_POLY_HPP

#include <compare>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <iosfwd>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ffqf/field.hpp"

namespace ffqf {

/// Degree of the zero polynomial. Compares below every real degree and stays
/// far below after a few small additions, so max-of-degree formulas are total.
inline constexpr int kMinusInfinity = std::numeric_limits<int>::min() / 4;

/// Univariate polynomial over F_q, coefficients stored lowest degree first
/// with no trailing zeros.
class Poly {
   public:
    using Elem = Field::Elem;

    explicit Poly(const Field& field) noexcept : field_(&field) {}
    Poly(const Field& field, std::vector<Elem> coeffs);

    static Poly constant(const Field& field, Elem c);
    static Poly monomial(const Field& field, Elem c, unsigned degree);
    static Poly t(const Field& field) { return monomial(field, 1, 1); }
    /// Integer coefficients (low to high) mapped into the prime subfield.
    static Poly from_ints(const Field& field, std::initializer_list<std::int64_t> low_to_high);
    /// Inverse of code(): base-q digits, lowest degree first.
    static Poly from_code(const Field& field, std::uint64_t code);

    const Field& field() const noexcept { return *field_; }
    int degree() const noexcept { return c_.empty() ? kMinusInfinity : static_cast<int>(c_.size()) - 1; }
    bool is_zero() const noexcept { return c_.empty(); }
    bool is_constant() const noexcept { return c_.size() <= 1; }
    bool is_one() const noexcept { return c_.size() == 1 && c_[0] == 1; }
    bool is_monic() const noexcept { return !c_.empty() && c_.back() == 1; }
    /// Throws DomainError for the zero polynomial.
    Elem lead() const;
    Elem coeff(int i) const noexcept { return (i >= 0 && i < static_cast<int>(c_.size())) ? c_[i] : 0; }
    std::span<const Elem> coeffs() const noexcept { return c_; }

    Poly monic() const;
    Poly scaled(Elem c) const;
    /// Multiplication by t^k.
    Poly shifted(unsigned k) const;
    Poly derivative() const;
    Elem eval(Elem x) const noexcept;
    /// Base-q integer code. Throws CapabilityError if it overflows 64 bits.
    std::uint64_t code() const;

    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    Poly& operator*=(const Poly& o) { return *this = *this * o; }
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(const Poly& a, const Poly& b);
    Poly operator-() const;

    bool operator==(const Poly& o) const noexcept { return field_ == o.field_ && c_ == o.c_; }
    /// Degree first, then coefficients from the top down.
    std::strong_ordering operator<=>(const Poly& o) const noexcept;

    std::string to_string() const;
    std::size_t hash() const noexcept;

   private:
    void trim() noexcept {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }
    void check_same_field(const Poly& o) const;

    const Field* field_;
    std::vector<Elem> c_;
};

std::ostream& operator<<(std::ostream& os, const Poly& f);

struct DivMod {
    Poly quotient;
    Poly remainder;
};

/// f = q*g + r with deg r < deg g. Throws DomainError when g = 0.
DivMod divmod(const Poly& f, const Poly& g);
Poly operator%(const Poly& f, const Poly& g);
/// Quotient of an exact division; throws DomainError if g does not divide f.
Poly exact_div(const Poly& f, const Poly& g);
bool divides(const Poly& g, const Poly& f);

/// Monic gcd. Throws DomainError for gcd(0, 0).
Poly gcd(const Poly& f, const Poly& g);

struct ExtendedGcd {
    Poly gcd;  // monic
    Poly s;
    Poly t;  // s*f + t*g = gcd
};
ExtendedGcd xgcd(const Poly& f, const Poly& g);
/// Inverse of f modulo m; throws DomainError when not coprime.
Poly inverse_mod(const Poly& f, const Poly& m);

Poly pow(const Poly& f, unsigned n);
Poly powmod(const Poly& f, std::uint64_t n, const Poly& m);
/// Valuation of f at the irreducible p (f != 0).
int valuation(const Poly& f, const Poly& p);

/// Parses `term (('+'|'-') term)*` with terms `c`, `c*t^k`, `t^k`
/// (prime fields; coefficients are reduced mod p).
Poly parse_poly(const Field& field, std::string_view text);

}  // namespace ffqf

template <>
struct std::hash<ffqf::Poly> {
    std::size_t operator()(const ffqf::Poly& f) const noexcept { return f.hash(); }
};

#endif
