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

#include "ffqf/picard.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "ffqf/classify.hpp"
#include "ffqf/error.hpp"
#include "ffqf/factor.hpp"

namespace ffqf {

namespace {

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t p = 2; p * p <= n; ++p)
        if (n % p == 0) {
            out.push_back(p);
            while (n % p == 0) n /= p;
        }
    if (n > 1) out.push_back(n);
    return out;
}

std::uint64_t ipow(std::uint64_t b, int e) {
    std::uint64_t r = 1;
    while (e-- > 0) r *= b;
    return r;
}

bool is_squarefree(const Poly& f) { return f.degree() <= 0 || gcd(f, f.derivative()).is_one(); }

MumfordDivisor reduce_divisor(const Poly& D0, Poly u, Poly v, int g) {
    while (u.degree() > g) {
        u = exact_div(D0 - v * v, u);
        v = (-v) % u;
    }
    const Field& F = D0.field();
    u = u.scaled(F.inv(u.lead()));
    return {u, v % u};
}

}  // namespace

int curve_genus(const Poly& D0) {
    if (D0.degree() < 1 || D0.degree() % 2 == 0) throw DomainError("curve needs odd degree: " + D0.to_string());
    if (!is_squarefree(D0)) throw DomainError("curve needs a square-free polynomial: " + D0.to_string());
    return (D0.degree() - 1) / 2;
}

bool is_valid_divisor(const Poly& D0, const MumfordDivisor& P) {
    const int g = curve_genus(D0);
    return P.u.is_monic() && P.u.degree() <= g && P.v.degree() < P.u.degree() && divides(P.u, P.v * P.v - D0);
}

MumfordDivisor cantor_add(const Poly& D0, const MumfordDivisor& P1, const MumfordDivisor& P2) {
    const int g = curve_genus(D0);
    if (&P1.u.field() != &D0.field() || &P2.u.field() != &D0.field()) throw DomainError("divisors on different curves");
    const auto e = xgcd(P1.u, P2.u);
    const Poly sum = P1.v + P2.v;
    const auto c = sum.is_zero() ? ExtendedGcd{e.gcd, Poly::constant(D0.field(), 1), Poly(D0.field())} : xgcd(e.gcd, sum);
    const Poly& d = c.gcd;
    const Poly s1 = c.s * e.s, s2 = c.s * e.t, s3 = c.t;
    const Poly u = exact_div(P1.u * P2.u, d * d);
    if (u.is_one()) return MumfordDivisor::identity(D0.field());
    const Poly v = exact_div(s1 * P1.u * P2.v + s2 * P2.u * P1.v + s3 * (P1.v * P2.v + D0), d) % u;
    return reduce_divisor(D0, u, v, g);
}

MumfordDivisor negate(const Poly& D0, const MumfordDivisor& P) {
    curve_genus(D0);
    return {P.u, (-P.v) % P.u};
}

MumfordDivisor multiply(const Poly& D0, const MumfordDivisor& P, std::uint64_t n) {
    MumfordDivisor r = MumfordDivisor::identity(D0.field()), b = P;
    while (n) {
        if (n & 1u) r = cantor_add(D0, r, b);
        n >>= 1;
        if (n) b = cantor_add(D0, b, b);
    }
    return r;
}

std::uint64_t element_order(const Poly& D0, const MumfordDivisor& P, std::uint64_t group_order) {
    std::uint64_t ord = group_order;
    for (auto l : prime_factors(group_order))
        while (ord % l == 0 && multiply(D0, P, ord / l).is_identity()) ord /= l;
    return ord;
}

std::uint64_t AbelianStructure::order() const {
    std::uint64_t n = 1;
    for (auto d : invariants) n *= d;
    return n;
}

std::string AbelianStructure::to_string() const {
    std::string s = "(";
    for (std::size_t i = 0; i < invariants.size(); ++i) s += (i ? "," : "") + std::to_string(invariants[i]);
    return s + ")";
}

AbelianStructure structure_from_orders(const std::vector<std::uint64_t>& orders) {
    const std::uint64_t n = orders.size();
    // For each prime l: |G[l^k]| = l^{n_k}; the number of cyclic l-factors of
    // order >= l^k is n_k - n_{k-1}.
    std::vector<std::uint64_t> inv;  // built from the top down
    std::map<std::uint64_t, std::vector<int>> exps;  // l -> exponents of l-primary factors, descending
    for (auto l : prime_factors(n)) {
        int v = 0;
        for (std::uint64_t m = n; m % l == 0; m /= l) ++v;
        std::vector<int> nk{0};
        for (std::uint64_t lk = l; nk.back() < v; lk *= l) {
            std::uint64_t cnt = 0;
            for (auto o : orders)
                if (lk % o == 0) ++cnt;
            int e = 0;
            for (std::uint64_t c = cnt; c > 1; c /= l) ++e;
            if (e == nk.back()) throw DomainError("element orders do not form an abelian group");
            nk.push_back(e);
        }
        std::vector<int> factors;  // exponents
        for (std::size_t k = 1; k < nk.size(); ++k) {
            const int at_least_k = nk[k] - nk[k - 1];
            const int at_least_k1 = k + 1 < nk.size() ? nk[k + 1] - nk[k] : 0;
            for (int j = 0; j < at_least_k - at_least_k1; ++j) factors.push_back(static_cast<int>(k));
        }
        std::sort(factors.rbegin(), factors.rend());
        exps[l] = factors;
    }
    std::size_t width = 0;
    for (const auto& [l, f] : exps) width = std::max(width, f.size());
    AbelianStructure s;
    for (std::size_t i = 0; i < width; ++i) {
        std::uint64_t d = 1;
        for (const auto& [l, f] : exps)
            if (i < f.size()) d *= ipow(l, f[i]);
        s.invariants.push_back(d);
    }
    std::reverse(s.invariants.begin(), s.invariants.end());
    return s;
}

MumfordDivisor PicGroup::generator_sample() const {
    const std::uint64_t exponent = structure.invariants.empty() ? 1 : structure.invariants.back();
    for (std::size_t i = 0; i < elements.size(); ++i)
        if (orders[i] == exponent) return elements[i];
    return elements.front();
}

std::vector<MumfordDivisor> generating_set(const Poly& D0, const PicGroup& G) {
    std::vector<MumfordDivisor> gens;
    std::set<MumfordDivisor> span{MumfordDivisor::identity(D0.field())};
    while (span.size() < G.order) {
        // Largest order outside the current span; ties go to canonical order.
        std::size_t best = G.elements.size();
        for (std::size_t i = 0; i < G.elements.size(); ++i)
            if (!span.count(G.elements[i]) && (best == G.elements.size() || G.orders[i] > G.orders[best])) best = i;
        const MumfordDivisor& g = G.elements[best];
        gens.push_back(g);
        std::vector<MumfordDivisor> frontier(span.begin(), span.end());
        while (!frontier.empty()) {
            std::vector<MumfordDivisor> fresh;
            for (const auto& x : frontier) {
                MumfordDivisor y = cantor_add(D0, x, g);
                if (span.insert(y).second) fresh.push_back(std::move(y));
            }
            frontier = std::move(fresh);
        }
    }
    return gens;
}

PicGroup pic_group(const Poly& D0) {
    const int g = curve_genus(D0);
    if (g > 2) throw BudgetExceeded("pic_group enumerates genus <= 2 only");
    const Field& F = D0.field();
    PicGroup G;
    for (int d = 0; d <= g; ++d)
        for (const auto& u : monic_polys_of_degree(F, d)) {
            const Poly target = D0 % u;
            for (const auto& v : all_polys_upto(F, d - 1))
                if ((v * v) % u == target) G.elements.push_back({u, v});
        }
    std::sort(G.elements.begin(), G.elements.end());
    G.order = G.elements.size();
    for (const auto& P : G.elements) G.orders.push_back(element_order(D0, P, G.order));
    G.structure = structure_from_orders(G.orders);
    return G;
}

std::uint64_t curve_point_count(const Poly& D0, int k) {
    const Field& F = D0.field();
    if (!F.is_prime_field()) throw CapabilityError("point counts are implemented over prime fields");
    if (k != 1 && k != 2) throw DomainError("point counts over F_q and F_{q^2} only");
    const Field& E = k == 1 ? F : Field::extension(F.p(), 2);
    std::uint64_t n = 0;
    for (Field::Elem x = 0; x < E.q(); ++x) {
        Field::Elem y = 0;
        for (int i = D0.degree(); i >= 0; --i) y = E.add(E.mul(y, x), D0.coeff(i));
        n += static_cast<std::uint64_t>(1 + E.legendre(y));
    }
    if (D0.degree() % 2) return n + 1;
    return n + static_cast<std::uint64_t>(1 + E.legendre(D0.lead()));
}

std::uint64_t jacobian_order(const Poly& D0) {
    if (!is_squarefree(D0) || D0.degree() < 1) throw DomainError("jacobian_order needs a square-free nonconstant polynomial");
    const int g = (D0.degree() - 1) / 2;
    const std::uint64_t q = D0.field().q();
    if (g == 0) return 1;
    const std::uint64_t n1 = curve_point_count(D0, 1);
    if (g == 1) return n1;
    if (g == 2) {
        const std::uint64_t n2 = curve_point_count(D0, 2);
        return (n1 * n1 + n2) / 2 - q;
    }
    throw BudgetExceeded("jacobian_order handles genus <= 2");
}

std::uint64_t pic_order_maximal(const Poly& D0) {
    const Field& F = D0.field();
    if (D0.is_zero()) throw DomainError("zero discriminant");
    if (D0.degree() == 0) {
        if (F.legendre(D0.lead()) == 1) throw DomainError("constant D0 must be a non-square");
        return 1;
    }
    if (!is_squarefree(D0)) throw DomainError("D0 must be square-free");
    if (D0.degree() % 2) {
        if (curve_genus(D0) <= 2) return pic_group(D0).order;
        throw BudgetExceeded("genus > 2");
    }
    if (F.legendre(D0.lead()) == 1) throw DomainError("even degree needs a non-square leading coefficient");
    // Infinity is inert: the place above it has degree 2.
    return 2 * jacobian_order(D0);
}

std::uint64_t pic_order_with_conductor(const Poly& D0, const Poly& f) {
    const Field& F = D0.field();
    if (f.is_zero() || !f.is_monic()) throw DomainError("conductor must be monic");
    const std::uint64_t base = pic_order_maximal(D0);
    if (f.is_one()) return base;
    const std::uint64_t q = F.q();
    // |(O/fO)^x| / |(A/fA)^x| over prime powers p^k || f
    std::uint64_t num = 1, den = 1;
    for (const auto& [p, k] : factor(f).factors) {
        const int d = p.degree();
        const std::uint64_t qd = ipow(q, d);
        const int chi = residue_char_unchecked(D0, p);
        std::uint64_t w = chi == 1 ? (qd - 1) * (qd - 1) : chi == -1 ? qd * qd - 1 : qd * (qd - 1);
        num *= ipow(qd * qd, k - 1) * w;
        den *= ipow(qd, k - 1) * (qd - 1);
    }
    const std::uint64_t unit_index = D0.degree() == 0 ? q + 1 : 1;
    const std::uint64_t total = base * num;
    if (total % (den * unit_index)) throw DomainError("internal: conductor formula is not integral");
    return total / (den * unit_index);
}

CompSequenceReport comp_sequence_check(const Poly& D) {
    CompSequenceReport r{D, D, Poly::constant(D.field(), 1)};
    const auto sq = squarefree_decompose(D);
    r.f = sq.square_root;
    r.D0 = sq.squarefree.scaled(sq.unit);
    r.proper_classes = class_table(D, true).proper_classes.size();
    r.pic_order = pic_order_with_conductor(r.D0, r.f);
    // F^x / N(B^x): B^x = F^x except for the maximal order with D0 constant,
    // where B^x = F_{q^2}^x and the norm is onto.
    r.kernel_order = (r.D0.degree() == 0 && r.f.is_one()) ? 1 : 2;
    r.doubling_holds = r.proper_classes == 2 * r.pic_order;
    r.pass = r.proper_classes == r.kernel_order * r.pic_order;
    return r;
}

}  // namespace ffqf
