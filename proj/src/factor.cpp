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

#include "ffqf/factor.hpp"

#include <algorithm>
#include <random>

#include "ffqf/error.hpp"

namespace ffqf {

namespace {

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

// f^(q^k) mod m by repeated q-th powering.
Poly frobenius_power(const Poly& f, unsigned k, const Poly& m) {
    Poly r = f % m;
    for (unsigned i = 0; i < k; ++i) r = powmod(r, m.field().q(), m);
    return r;
}

// p-th root of a polynomial whose derivative vanishes.
Poly pth_root(const Poly& f) {
    const Field& F = f.field();
    const std::uint32_t p = F.p();
    std::uint64_t root_exp = 1;
    for (unsigned i = 1; i < F.e(); ++i) root_exp *= p;
    std::vector<Field::Elem> c;
    const auto fc = f.coeffs();
    for (std::size_t i = 0; i < fc.size(); i += p) c.push_back(F.pow(fc[i], root_exp));
    return Poly(F, std::move(c));
}

// Monic square-free factorization: pairs (g_i, i) with f = prod g_i^i.
void squarefree_split(const Poly& f, int mult, std::vector<std::pair<Poly, int>>& out) {
    const Field& F = f.field();
    if (f.degree() <= 0) return;
    Poly c = gcd(f, f.derivative());
    Poly w = exact_div(f, c);
    int i = 1;
    while (!w.is_one()) {
        Poly y = gcd(w, c);
        Poly z = exact_div(w, y);
        if (!z.is_one()) out.emplace_back(z, i * mult);
        ++i;
        w = y;
        c = exact_div(c, y);
    }
    if (!c.is_one()) squarefree_split(pth_root(c), mult * static_cast<int>(F.p()), out);
}

// Splits square-free monic f into products of irreducibles of equal degree.
std::vector<std::pair<Poly, int>> distinct_degree(const Poly& f) {
    const Field& F = f.field();
    std::vector<std::pair<Poly, int>> out;
    Poly rest = f;
    Poly h = Poly::t(F) % rest;
    const Poly x = Poly::t(F);
    for (int d = 1; 2 * d <= rest.degree(); ++d) {
        h = powmod(h, F.q(), rest);
        Poly g = gcd(h - x, rest);
        if (!g.is_one()) {
            out.emplace_back(g, d);
            rest = exact_div(rest, g);
            h = h % rest;
        }
    }
    if (rest.degree() > 0) out.emplace_back(rest, rest.degree());
    return out;
}

void equal_degree(const Poly& f, int d, std::mt19937_64& rng, std::vector<Poly>& out) {
    const Field& F = f.field();
    if (f.degree() == d) {
        out.push_back(f);
        return;
    }
    const std::uint64_t half = (F.q() - 1) / 2;
    while (true) {
        std::vector<Field::Elem> c(f.degree());
        for (auto& v : c) v = static_cast<Field::Elem>(rng() % F.q());
        Poly a(F, std::move(c));
        if (a.degree() <= 0) continue;
        // a^((q^d - 1)/2) = (a^(1 + q + ... + q^(d-1)))^((q-1)/2)
        Poly s = a % f, acc = s;
        for (int i = 1; i < d; ++i) {
            s = powmod(s, F.q(), f);
            acc = (acc * s) % f;
        }
        Poly b = powmod(acc, half, f) - Poly::constant(F, 1);
        if (b.is_zero()) continue;
        Poly g = gcd(b, f);
        if (g.degree() > 0 && g.degree() < f.degree()) {
            equal_degree(g, d, rng, out);
            equal_degree(exact_div(f, g), d, rng, out);
            return;
        }
    }
}

}  // namespace

Poly Factorization::product() const {
    Poly acc = Poly::constant(*field, unit);
    for (const auto& [g, m] : factors) acc *= pow(g, static_cast<unsigned>(m));
    return acc;
}

Factorization factor(const Poly& f, std::uint64_t seed) {
    if (f.is_zero()) throw DomainError("factor of the zero polynomial");
    Factorization out;
    out.field = &f.field();
    out.unit = f.lead();
    if (f.degree() == 0) return out;
    std::mt19937_64 rng(seed);
    std::vector<std::pair<Poly, int>> sqf;
    squarefree_split(f.monic(), 1, sqf);
    for (const auto& [part, mult] : sqf) {
        for (const auto& [block, d] : distinct_degree(part)) {
            std::vector<Poly> irreducibles;
            equal_degree(block, d, rng, irreducibles);
            for (auto& g : irreducibles) out.factors.emplace_back(std::move(g), mult);
        }
    }
    std::sort(out.factors.begin(), out.factors.end());
    // Merge equal factors reported by different square-free layers.
    std::vector<std::pair<Poly, int>> merged;
    for (auto& fm : out.factors) {
        if (!merged.empty() && merged.back().first == fm.first)
            merged.back().second += fm.second;
        else
            merged.push_back(std::move(fm));
    }
    out.factors = std::move(merged);
    return out;
}

SquarefreeDecomposition squarefree_decompose(const Poly& f) {
    if (f.is_zero()) throw DomainError("squarefree_decompose of the zero polynomial");
    const Field& F = f.field();
    auto fac = factor(f);
    SquarefreeDecomposition out{Poly::constant(F, 1), Poly::constant(F, 1), fac.unit};
    for (const auto& [g, m] : fac.factors) {
        if (m % 2) out.squarefree *= g;
        if (m >= 2) out.square_root *= pow(g, static_cast<unsigned>(m / 2));
    }
    return out;
}

bool is_irreducible(const Poly& f) {
    if (f.is_zero()) throw DomainError("is_irreducible of the zero polynomial");
    const int n = f.degree();
    if (n <= 0) return false;
    if (n == 1) return true;
    const Poly g = f.monic();
    const Poly x = Poly::t(f.field());
    if (!(frobenius_power(x, static_cast<unsigned>(n), g) - x).is_zero()) return false;
    for (auto r : prime_divisors(static_cast<std::uint64_t>(n))) {
        Poly h = frobenius_power(x, static_cast<unsigned>(n / static_cast<int>(r)), g);
        if (!gcd(h - x, g).is_one()) return false;
    }
    return true;
}

Field::Elem residue_norm(const Poly& f, const Poly& p) {
    const Poly r = f % p;
    if (r.is_zero()) return 0;
    Poly s = r, acc = r;
    for (int i = 1; i < p.degree(); ++i) {
        s = powmod(s, f.field().q(), p);
        acc = (acc * s) % p;
    }
    // The norm lies in F_q, so acc is a constant.
    return acc.coeff(0);
}

int residue_char_unchecked(const Poly& f, const Poly& p) {
    return f.field().legendre(residue_norm(f, p));
}

int residue_char(const Poly& f, const Poly& p) {
    if (!is_irreducible(p)) throw DomainError("residue_char: " + p.to_string() + " is not irreducible");
    return residue_char_unchecked(f, p);
}

SquareClass square_class(const Poly& f) {
    if (f.is_zero()) throw DomainError("square class of zero");
    const Field& F = f.field();
    const auto l = f.lead();
    const auto scale = F.legendre(l) == 1 ? F.inv(l) : F.div(F.delta(), l);
    return {f.scaled(scale)};
}

std::vector<Field::Elem> roots(const Poly& f) {
    std::vector<Field::Elem> out;
    if (f.is_zero()) throw DomainError("roots of the zero polynomial");
    for (Field::Elem x = 0; x < f.field().q(); ++x)
        if (f.eval(x) == 0) out.push_back(x);
    return out;
}

std::vector<Poly> all_polys_upto(const Field& field, int max_degree) {
    std::vector<Poly> out;
    if (max_degree < 0) {
        out.emplace_back(field);
        return out;
    }
    std::uint64_t count = 1;
    for (int i = 0; i <= max_degree; ++i) {
        if (count > (std::uint64_t{1} << 32) / field.q()) throw BudgetExceeded("too many polynomials to list");
        count *= field.q();
    }
    out.reserve(count);
    for (std::uint64_t c = 0; c < count; ++c) out.push_back(Poly::from_code(field, c));
    return out;
}

std::vector<Poly> monic_polys_of_degree(const Field& field, int degree) {
    std::vector<Poly> out;
    if (degree < 0) return out;
    std::uint64_t count = 1;
    for (int i = 0; i < degree; ++i) count *= field.q();
    const Poly lead = Poly::monomial(field, 1, static_cast<unsigned>(degree));
    out.reserve(count);
    for (std::uint64_t c = 0; c < count; ++c) out.push_back(Poly::from_code(field, c) + lead);
    return out;
}

}  // namespace ffqf
