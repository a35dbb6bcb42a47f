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

#include "ffqf/field.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <tuple>

#include "ffqf/error.hpp"

namespace ffqf {

namespace {

constexpr std::uint32_t kMaxOrder = 1u << 22;

std::vector<std::uint64_t> prime_divisors(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

struct Registry {
    std::mutex mu;
    std::map<std::tuple<std::uint32_t, std::vector<std::uint32_t>, Field::Elem>, std::unique_ptr<Field>> fields;
    std::map<std::pair<std::uint32_t, unsigned>, const Field*> defaults;
};

Registry& registry() {
    static Registry r;
    return r;
}

}  // namespace

bool is_odd_prime(std::uint64_t n) noexcept {
    if (n < 3 || n % 2 == 0) return false;
    for (std::uint64_t d = 3; d * d <= n; d += 2)
        if (n % d == 0) return false;
    return true;
}

Field::Field(std::uint32_t p, std::vector<std::uint32_t> modulus, Elem delta_override)
    : p_(p), e_(modulus.empty() ? 1 : static_cast<unsigned>(modulus.size() - 1)), q_(p), modulus_(std::move(modulus)) {
    for (unsigned i = 1; i < e_; ++i) q_ *= p_;

    // Find a generator of the unit group with plain digit arithmetic. For a
    // reducible modulus the unit group has fewer than q-1 elements, so no
    // candidate succeeds and the modulus is rejected.
    auto slow_pow = [&](Elem a, std::uint64_t n) {
        Elem r = 1, b = a;
        while (n) {
            if (n & 1) r = mul_digits(r, b);
            b = mul_digits(b, b);
            n >>= 1;
        }
        return r;
    };
    const auto divisors = prime_divisors(q_ - 1);
    std::optional<Elem> gen;
    for (Elem g = 1; g < q_ && !gen; ++g) {
        if (slow_pow(g, q_ - 1) != 1) continue;
        bool ok = true;
        for (auto r : divisors)
            if (slow_pow(g, (q_ - 1) / r) == 1) {
                ok = false;
                break;
            }
        if (ok) gen = g;
    }
    if (!gen) throw DomainError("field modulus is not irreducible");

    log_.assign(q_, 0);
    exp_.assign(q_ - 1, 0);
    Elem x = 1;
    for (std::uint32_t k = 0; k + 1 < q_; ++k) {
        exp_[k] = x;
        log_[x] = k;
        x = mul_digits(x, *gen);
    }
    for (Elem a = 1; a < q_; ++a)
        if (log_[a] & 1u) {
            delta_ = a;
            break;
        }
    if (delta_override) delta_ = delta_override;
}

const Field& Field::prime(std::uint32_t p) {
    if (!is_odd_prime(p)) throw DomainError("characteristic must be an odd prime, got " + std::to_string(p));
    if (p >= kMaxOrder) throw CapabilityError("field order too large for table arithmetic");
    auto& reg = registry();
    std::lock_guard lock(reg.mu);
    auto key = std::make_tuple(p, std::vector<std::uint32_t>{}, Elem{0});
    auto it = reg.fields.find(key);
    if (it == reg.fields.end()) it = reg.fields.emplace(key, std::unique_ptr<Field>(new Field(p, {}))).first;
    return *it->second;
}

const Field& Field::prime(std::uint32_t p, Elem delta) {
    const Field& base = prime(p);
    if (delta >= p || base.legendre(delta) != -1)
        throw DomainError("delta must be a non-square of F_" + std::to_string(p));
    if (delta == base.delta()) return base;
    auto& reg = registry();
    std::lock_guard lock(reg.mu);
    auto key = std::make_tuple(p, std::vector<std::uint32_t>{}, delta);
    auto it = reg.fields.find(key);
    if (it == reg.fields.end()) it = reg.fields.emplace(key, std::unique_ptr<Field>(new Field(p, {}, delta))).first;
    return *it->second;
}

const Field& Field::extension(std::uint32_t p, std::vector<std::uint32_t> modulus) {
    if (!is_odd_prime(p)) throw DomainError("characteristic must be an odd prime, got " + std::to_string(p));
    if (modulus.size() < 2) return prime(p);
    for (auto& c : modulus) c %= p;
    if (modulus.back() != 1) throw DomainError("field modulus must be monic");
    if (modulus.size() == 2) return prime(p);
    std::uint64_t order = 1;
    for (std::size_t i = 1; i < modulus.size(); ++i) {
        order *= p;
        if (order >= kMaxOrder) throw CapabilityError("field order too large for table arithmetic");
    }
    auto& reg = registry();
    std::lock_guard lock(reg.mu);
    auto key = std::make_tuple(p, modulus, Elem{0});
    auto it = reg.fields.find(key);
    if (it == reg.fields.end()) it = reg.fields.emplace(key, std::unique_ptr<Field>(new Field(p, modulus))).first;
    return *it->second;
}

const Field& Field::extension(std::uint32_t p, unsigned e) {
    if (e <= 1) return prime(p);
    {
        auto& reg = registry();
        std::lock_guard lock(reg.mu);
        auto it = reg.defaults.find({p, e});
        if (it != reg.defaults.end()) return *it->second;
    }
    if (!is_odd_prime(p)) throw DomainError("characteristic must be an odd prime, got " + std::to_string(p));
    std::uint64_t count = 1;
    for (unsigned i = 0; i < e; ++i) {
        count *= p;
        if (count >= kMaxOrder) throw CapabilityError("field order too large for table arithmetic");
    }
    for (std::uint64_t code = 0; code < count; ++code) {
        std::vector<std::uint32_t> m(e + 1, 0);
        std::uint64_t c = code;
        for (unsigned i = 0; i < e; ++i, c /= p) m[i] = static_cast<std::uint32_t>(c % p);
        m[e] = 1;
        if (m[0] == 0) continue;
        try {
            const Field& f = extension(p, m);
            auto& reg = registry();
            std::lock_guard lock(reg.mu);
            reg.defaults[{p, e}] = &f;
            return f;
        } catch (const DomainError&) {
        }
    }
    throw DomainError("no irreducible polynomial found");  // unreachable for valid p, e
}

Field::Elem Field::from_int(std::int64_t v) const noexcept {
    std::int64_t r = v % static_cast<std::int64_t>(p_);
    if (r < 0) r += p_;
    return static_cast<Elem>(r);
}

Field::Elem Field::add_slow(Elem a, Elem b) const noexcept {
    Elem out = 0, scale = 1;
    for (unsigned i = 0; i < e_; ++i) {
        Elem d = (a % p_ + b % p_) % p_;
        out += d * scale;
        scale *= p_;
        a /= p_;
        b /= p_;
    }
    return out;
}

Field::Elem Field::neg_slow(Elem a) const noexcept {
    Elem out = 0, scale = 1;
    for (unsigned i = 0; i < e_; ++i) {
        Elem d = a % p_;
        out += (d == 0 ? 0 : p_ - d) * scale;
        scale *= p_;
        a /= p_;
    }
    return out;
}

Field::Elem Field::mul_digits(Elem a, Elem b) const noexcept {
    if (e_ == 1) return static_cast<Elem>(static_cast<std::uint64_t>(a) * b % p_);
    std::vector<std::uint64_t> x(e_), y(e_), prod(2 * e_ - 1, 0);
    for (unsigned i = 0; i < e_; ++i, a /= p_, b /= p_) {
        x[i] = a % p_;
        y[i] = b % p_;
    }
    for (unsigned i = 0; i < e_; ++i)
        for (unsigned j = 0; j < e_; ++j) prod[i + j] = (prod[i + j] + x[i] * y[j]) % p_;
    for (unsigned k = 2 * e_ - 2; k >= e_; --k) {
        const std::uint64_t c = prod[k];
        if (c == 0) continue;
        prod[k] = 0;
        for (unsigned i = 0; i < e_; ++i) prod[k - e_ + i] = (prod[k - e_ + i] + (p_ - c) * modulus_[i]) % p_;
    }
    Elem out = 0, scale = 1;
    for (unsigned i = 0; i < e_; ++i) {
        out += static_cast<Elem>(prod[i]) * scale;
        scale *= p_;
    }
    return out;
}

Field::Elem Field::inv(Elem a) const {
    if (a == 0) throw DomainError("inverse of zero field element");
    return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
}

Field::Elem Field::pow(Elem a, std::uint64_t n) const noexcept {
    if (n == 0) return 1;
    if (a == 0) return 0;
    return exp_[static_cast<std::uint32_t>((static_cast<std::uint64_t>(log_[a]) * (n % (q_ - 1))) % (q_ - 1))];
}

bool Field::sqrt(Elem a, Elem& root) const noexcept {
    if (a == 0) {
        root = 0;
        return true;
    }
    if (log_[a] & 1u) return false;
    root = exp_[log_[a] / 2];
    return true;
}

std::string Field::to_string(Elem a) const {
    if (e_ == 1) return std::to_string(a);
    return "{" + std::to_string(a) + "}";
}

bool field_is_square(FieldElem u) {
    if (u.field == nullptr) throw DomainError("field element without field");
    if (u.value == 0) throw DomainError("field_is_square of zero");
    return u.field->pow(u.value, (u.field->q() - 1) / 2) == 1;
}

FieldElem choose_delta(const Field& field) { return {&field, field.delta()}; }

}  // namespace ffqf
