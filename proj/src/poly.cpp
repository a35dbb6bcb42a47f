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

#include "ffqf/poly.hpp"

#include <algorithm>
#include <cctype>
#include <ostream>

#include "ffqf/error.hpp"

namespace ffqf {

Poly::Poly(const Field& field, std::vector<Elem> coeffs) : field_(&field), c_(std::move(coeffs)) {
    for (auto c : c_)
        if (c >= field.q()) throw DomainError("coefficient code out of range");
    trim();
}

Poly Poly::constant(const Field& field, Elem c) {
    Poly f(field);
    if (c != 0) f.c_.push_back(c);
    return f;
}

Poly Poly::monomial(const Field& field, Elem c, unsigned degree) {
    Poly f(field);
    if (c != 0) {
        f.c_.assign(degree + 1, 0);
        f.c_[degree] = c;
    }
    return f;
}

Poly Poly::from_ints(const Field& field, std::initializer_list<std::int64_t> low_to_high) {
    std::vector<Elem> c;
    c.reserve(low_to_high.size());
    for (auto v : low_to_high) c.push_back(field.from_int(v));
    return Poly(field, std::move(c));
}

Poly Poly::from_code(const Field& field, std::uint64_t code) {
    Poly f(field);
    while (code) {
        f.c_.push_back(static_cast<Elem>(code % field.q()));
        code /= field.q();
    }
    return f;
}

void Poly::check_same_field(const Poly& o) const {
    if (field_ != o.field_) throw DomainError("polynomials over different fields");
}

Poly::Elem Poly::lead() const {
    if (c_.empty()) throw DomainError("leading coefficient of the zero polynomial");
    return c_.back();
}

Poly Poly::monic() const {
    if (c_.empty()) throw DomainError("monic scaling of the zero polynomial");
    return scaled(field_->inv(c_.back()));
}

Poly Poly::scaled(Elem c) const {
    Poly r(*field_);
    if (c == 0) return r;
    r.c_.reserve(c_.size());
    for (auto a : c_) r.c_.push_back(field_->mul(a, c));
    return r;
}

Poly Poly::shifted(unsigned k) const {
    Poly r(*field_);
    if (c_.empty()) return r;
    r.c_.assign(k, 0);
    r.c_.insert(r.c_.end(), c_.begin(), c_.end());
    return r;
}

Poly Poly::derivative() const {
    Poly r(*field_);
    if (c_.size() <= 1) return r;
    r.c_.resize(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) r.c_[i - 1] = field_->mul(c_[i], field_->from_int(static_cast<std::int64_t>(i)));
    r.trim();
    return r;
}

Poly::Elem Poly::eval(Elem x) const noexcept {
    Elem acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = field_->add(field_->mul(acc, x), *it);
    return acc;
}

std::uint64_t Poly::code() const {
    std::uint64_t code = 0, scale = 1;
    const std::uint64_t q = field_->q();
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (i > 0) {
            if (scale > std::numeric_limits<std::uint64_t>::max() / q) throw CapabilityError("polynomial code overflow");
            scale *= q;
        }
        code += c_[i] * scale;
    }
    return code;
}

Poly& Poly::operator+=(const Poly& o) {
    check_same_field(o);
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), 0);
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] = field_->add(c_[i], o.c_[i]);
    trim();
    return *this;
}

Poly& Poly::operator-=(const Poly& o) {
    check_same_field(o);
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), 0);
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] = field_->sub(c_[i], o.c_[i]);
    trim();
    return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
    a.check_same_field(b);
    Poly r(*a.field_);
    if (a.c_.empty() || b.c_.empty()) return r;
    const Field& F = *a.field_;
    if (F.is_prime_field()) {
        // Accumulate in 64 bits and reduce once per coefficient.
        const std::uint64_t p = F.p();
        std::vector<std::uint64_t> acc(a.c_.size() + b.c_.size() - 1, 0);
        const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - p * p;
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i] == 0) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j) {
                std::uint64_t& slot = acc[i + j];
                slot += static_cast<std::uint64_t>(a.c_[i]) * b.c_[j];
                if (slot > limit) slot %= p;
            }
        }
        r.c_.resize(acc.size());
        for (std::size_t k = 0; k < acc.size(); ++k) r.c_[k] = static_cast<Poly::Elem>(acc[k] % p);
    } else {
        r.c_.assign(a.c_.size() + b.c_.size() - 1, 0);
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j) r.c_[i + j] = F.add(r.c_[i + j], F.mul(a.c_[i], b.c_[j]));
    }
    r.trim();
    return r;
}

Poly Poly::operator-() const {
    Poly r(*field_);
    r.c_.reserve(c_.size());
    for (auto a : c_) r.c_.push_back(field_->neg(a));
    return r;
}

std::strong_ordering Poly::operator<=>(const Poly& o) const noexcept {
    if (auto c = c_.size() <=> o.c_.size(); c != 0) return c;
    for (std::size_t i = c_.size(); i-- > 0;)
        if (auto c = c_[i] <=> o.c_[i]; c != 0) return c;
    return std::strong_ordering::equal;
}

std::string Poly::to_string() const {
    if (c_.empty()) return "0";
    std::string out;
    for (std::size_t i = c_.size(); i-- > 0;) {
        if (c_[i] == 0) continue;
        if (!out.empty()) out += '+';
        const bool unit = c_[i] == 1;
        if (i == 0) {
            out += field_->to_string(c_[i]);
            continue;
        }
        if (!unit) out += field_->to_string(c_[i]) + "*";
        out += 't';
        if (i > 1) out += "^" + std::to_string(i);
    }
    return out;
}

std::size_t Poly::hash() const noexcept {
    std::uint64_t h = 0x9e3779b97f4a7c15ull ^ c_.size();
    for (auto c : c_) {
        h ^= c + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    return static_cast<std::size_t>(h);
}

std::ostream& operator<<(std::ostream& os, const Poly& f) { return os << f.to_string(); }

DivMod divmod(const Poly& f, const Poly& g) {
    if (g.is_zero()) throw DomainError("division by the zero polynomial");
    if (&f.field() != &g.field()) throw DomainError("polynomials over different fields");
    const Field& F = f.field();
    if (f.degree() < g.degree()) return {Poly(F), f};
    std::vector<Field::Elem> rem(f.coeffs().begin(), f.coeffs().end());
    const int dg = g.degree();
    const auto gc = g.coeffs();
    const Field::Elem inv_lead = F.inv(g.lead());
    std::vector<Field::Elem> quo(f.degree() - dg + 1, 0);
    for (int k = f.degree(); k >= dg; --k) {
        const Field::Elem c = F.mul(rem[k], inv_lead);
        quo[k - dg] = c;
        if (c == 0) continue;
        for (int i = 0; i <= dg; ++i) rem[k - dg + i] = F.sub(rem[k - dg + i], F.mul(c, gc[i]));
    }
    rem.resize(dg);
    return {Poly(F, std::move(quo)), Poly(F, std::move(rem))};
}

Poly operator%(const Poly& f, const Poly& g) { return divmod(f, g).remainder; }

Poly exact_div(const Poly& f, const Poly& g) {
    auto [q, r] = divmod(f, g);
    if (!r.is_zero()) throw DomainError("inexact polynomial division");
    return q;
}

bool divides(const Poly& g, const Poly& f) {
    if (g.is_zero()) return f.is_zero();
    return (f % g).is_zero();
}

Poly gcd(const Poly& f, const Poly& g) {
    if (f.is_zero() && g.is_zero()) throw DomainError("gcd(0, 0) is undefined");
    Poly a = f, b = g;
    while (!b.is_zero()) {
        Poly r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

ExtendedGcd xgcd(const Poly& f, const Poly& g) {
    if (f.is_zero() && g.is_zero()) throw DomainError("gcd(0, 0) is undefined");
    const Field& F = f.field();
    Poly r0 = f, r1 = g;
    Poly s0 = Poly::constant(F, 1), s1(F);
    Poly t0(F), t1 = Poly::constant(F, 1);
    while (!r1.is_zero()) {
        auto [q, r] = divmod(r0, r1);
        r0 = std::move(r1);
        r1 = std::move(r);
        Poly s2 = s0 - q * s1;
        s0 = std::move(s1);
        s1 = std::move(s2);
        Poly t2 = t0 - q * t1;
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    const Field::Elem inv = F.inv(r0.lead());
    return {r0.scaled(inv), s0.scaled(inv), t0.scaled(inv)};
}

Poly inverse_mod(const Poly& f, const Poly& m) {
    auto eg = xgcd(f % m, m);
    if (!eg.gcd.is_one()) throw DomainError("polynomial not invertible modulo " + m.to_string());
    return eg.s % m;
}

Poly pow(const Poly& f, unsigned n) {
    Poly r = Poly::constant(f.field(), 1), b = f;
    while (n) {
        if (n & 1u) r *= b;
        n >>= 1;
        if (n) b *= b;
    }
    return r;
}

Poly powmod(const Poly& f, std::uint64_t n, const Poly& m) {
    Poly r = Poly::constant(f.field(), 1) % m, b = f % m;
    while (n) {
        if (n & 1u) r = (r * b) % m;
        n >>= 1;
        if (n) b = (b * b) % m;
    }
    return r;
}

int valuation(const Poly& f, const Poly& p) {
    if (f.is_zero()) throw DomainError("valuation of the zero polynomial");
    if (p.degree() < 1) throw DomainError("valuation at a constant");
    int v = 0;
    Poly g = f;
    while (true) {
        auto [q, r] = divmod(g, p);
        if (!r.is_zero()) return v;
        g = std::move(q);
        ++v;
    }
}

namespace {

class PolyParser {
   public:
    PolyParser(const Field& field, std::string_view text) : F_(field) {
        for (char ch : text)
            if (!std::isspace(static_cast<unsigned char>(ch))) s_.push_back(ch);
    }

    Poly parse() {
        if (!F_.is_prime_field()) throw ParseError("polynomial literals are only supported over prime fields");
        if (s_.empty()) throw ParseError("empty polynomial literal");
        Poly acc(F_);
        bool negative = false;
        if (peek() == '-' || peek() == '+') negative = get() == '-';
        acc = term();
        if (negative) acc = -acc;
        while (pos_ < s_.size()) {
            const char op = get();
            if (op != '+' && op != '-') fail("expected '+' or '-'");
            Poly t = term();
            acc = op == '+' ? acc + t : acc - t;
        }
        return acc;
    }

   private:
    char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
    char get() { return pos_ < s_.size() ? s_[pos_++] : '\0'; }
    [[noreturn]] void fail(const std::string& what) const {
        throw ParseError("bad polynomial literal '" + s_ + "' at offset " + std::to_string(pos_) + ": " + what);
    }

    // Digits reduced modulo `mod` as they are read.
    std::uint64_t number(std::uint64_t mod) {
        if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected a number");
        std::uint64_t v = 0;
        while (std::isdigit(static_cast<unsigned char>(peek())))
            v = (v * 10 + static_cast<std::uint64_t>(get() - '0')) % mod;
        return v;
    }

    Poly term() {
        Field::Elem coeff = 1;
        if (std::isdigit(static_cast<unsigned char>(peek()))) {
            coeff = static_cast<Field::Elem>(number(F_.p()));
            if (peek() != '*') return Poly::constant(F_, coeff);
            get();
        }
        if (get() != 't') fail("expected 't'");
        unsigned exp = 1;
        if (peek() == '^') {
            get();
            const std::size_t start = pos_;
            const std::uint64_t e = number(std::uint64_t{1} << 32);
            if (pos_ - start > 6 || e > 100000) fail("exponent too large");
            exp = static_cast<unsigned>(e);
        }
        return Poly::monomial(F_, coeff, exp);
    }

    const Field& F_;
    std::string s_;
    std::size_t pos_ = 0;
};

}  // namespace

Poly parse_poly(const Field& field, std::string_view text) { return PolyParser(field, text).parse(); }

}  // namespace ffqf
