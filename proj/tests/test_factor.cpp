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
#include <set>

#include "doctest.h"
#include "ffqf/error.hpp"
#include "ffqf/factor.hpp"
#include "test_util.hpp"

using namespace ffqf;
using ffqf::testing::P;

namespace {

// Irreducibility by trial division with every monic polynomial of degree
// at most deg f / 2.
bool irreducible_by_trial_division(const Poly& f) {
    if (f.degree() <= 0) return false;
    for (int d = 1; 2 * d <= f.degree(); ++d)
        for (const auto& g : monic_polys_of_degree(f.field(), d))
            if (divides(g, f)) return false;
    return true;
}

}  // namespace

TEST_SUITE("factor") {
    TEST_CASE("t^3 - t over F_13 splits into three linear factors") {
        const Field& F = Field::prime(13);
        auto fac = factor(P(F, "t^3-t"));
        CHECK(fac.unit == 1);
        REQUIRE(fac.factors.size() == 3);
        std::set<std::string> got;
        for (const auto& [g, m] : fac.factors) {
            CHECK(m == 1);
            got.insert(g.to_string());
        }
        CHECK(got == std::set<std::string>{"t", "t+1", "t+12"});
    }

    TEST_CASE("constants and powers") {
        const Field& F = Field::prime(5);
        auto c = factor(Poly::constant(F, 3));
        CHECK(c.unit == 3);
        CHECK(c.factors.empty());

        auto sq = factor(P(F, "t^2+2*t+1"));
        REQUIRE(sq.factors.size() == 1);
        CHECK(sq.factors[0].first == P(F, "t+1"));
        CHECK(sq.factors[0].second == 2);

        // (t - 1)^5 = t^5 - 1 exercises the p-th root branch.
        auto p5 = factor(P(F, "t^5-1"));
        REQUIRE(p5.factors.size() == 1);
        CHECK(p5.factors[0].first == P(F, "t+4"));
        CHECK(p5.factors[0].second == 5);

        CHECK_THROWS_AS(factor(Poly(F)), DomainError);
    }

    TEST_CASE("product-of-factors identity on random polynomials") {
        std::mt19937_64 rng(2024);
        for (std::uint32_t p : {5u, 7u, 13u, 17u}) {
            const Field& F = Field::prime(p);
            for (int i = 0; i < 1000; ++i) {
                Poly f = testing::random_nonzero_poly(F, 8, rng);
                auto fac = factor(f);
                CHECK(fac.product() == f);
                for (const auto& [g, m] : fac.factors) {
                    CHECK(g.is_monic());
                    CHECK(m >= 1);
                }
                if (i % 10 == 0)
                    for (const auto& [g, m] : fac.factors) CHECK(irreducible_by_trial_division(g));
            }
        }
    }

    TEST_CASE("factorization over an extension field") {
        const Field& F = Field::extension(3, 2);
        std::mt19937_64 rng(5);
        for (int i = 0; i < 100; ++i) {
            Poly f = testing::random_nonzero_poly(F, 6, rng);
            auto fac = factor(f);
            CHECK(fac.product() == f);
            for (const auto& [g, m] : fac.factors) CHECK(is_irreducible(g));
        }
    }

    TEST_CASE("squarefree_decompose") {
        const Field& F = Field::prime(5);
        auto a = squarefree_decompose(P(F, "t^3+t^2"));  // t^2 (t + 1)
        CHECK(a.squarefree == P(F, "t+1"));
        CHECK(a.square_root == P(F, "t"));
        CHECK(a.unit == 1);

        const Poly sf = P(F, "3*t^2+1");
        auto b = squarefree_decompose(sf);
        CHECK(b.squarefree == sf.monic());
        CHECK(b.square_root.is_one());
        CHECK(b.unit == sf.lead());

        const Field::Elem d = F.delta();
        auto c = squarefree_decompose(Poly::monomial(F, d, 4));
        CHECK(c.squarefree.is_one());
        CHECK(c.square_root == P(F, "t^2"));
        CHECK(c.unit == d);

        std::mt19937_64 rng(9);
        for (std::uint32_t p : {5u, 7u, 13u}) {
            const Field& Fp = Field::prime(p);
            for (int i = 0; i < 200; ++i) {
                Poly f = testing::random_nonzero_poly(Fp, 5, rng) * testing::random_nonzero_poly(Fp, 2, rng) *
                         testing::random_nonzero_poly(Fp, 2, rng);
                auto s = squarefree_decompose(f);
                CHECK(Poly::constant(Fp, s.unit) * s.square_root * s.square_root * s.squarefree == f);
                if (s.squarefree.degree() > 0) CHECK(gcd(s.squarefree, s.squarefree.derivative()).degree() == 0);
            }
        }
    }

    TEST_CASE("is_irreducible") {
        const Field& F5 = Field::prime(5);
        // root search for t^2 + 1 over F_5
        std::vector<Field::Elem> r;
        for (Field::Elem x = 0; x < 5; ++x)
            if (P(F5, "t^2+1").eval(x) == 0) r.push_back(x);
        CHECK(r == std::vector<Field::Elem>{2, 3});
        CHECK_FALSE(is_irreducible(P(F5, "t^2+1")));
        CHECK(is_irreducible(P(F5, "t")));
        CHECK(is_irreducible(Poly::t(F5) * Poly::t(F5) - Poly::constant(F5, F5.delta())));
        CHECK_FALSE(is_irreducible(Poly::constant(F5, 3)));

        const Field& F7 = Field::prime(7);
        for (int d = 1; d <= 4; ++d)
            for (const auto& f : monic_polys_of_degree(F7, d)) CHECK(is_irreducible(f) == irreducible_by_trial_division(f));
    }

    TEST_CASE("residue_char") {
        const Field& F5 = Field::prime(5);
        CHECK(residue_char(Poly::constant(F5, 2), P(F5, "t")) == -1);
        CHECK(residue_char(P(F5, "t"), P(F5, "t")) == 0);
        CHECK_THROWS_AS(residue_char(P(F5, "t"), P(F5, "t^2+1")), DomainError);

        std::mt19937_64 rng(17);
        for (std::uint32_t p : {5u, 13u}) {
            const Field& F = Field::prime(p);
            for (int d = 1; d <= 3; ++d) {
                Poly pi = testing::random_nonzero_poly(F, d, rng);
                while (pi.degree() != d || !is_irreducible(pi)) pi = testing::random_nonzero_poly(F, d, rng);
                for (int i = 0; i < 50; ++i) {
                    Poly g = testing::random_nonzero_poly(F, 6, rng);
                    if ((g % pi).is_zero()) continue;
                    CHECK(residue_char(g * g, pi) == 1);
                    Poly f = testing::random_nonzero_poly(F, 6, rng);
                    if ((f % pi).is_zero()) continue;
                    CHECK(residue_char(f * g, pi) == residue_char(f, pi) * residue_char(g, pi));
                }
            }
        }
    }

    TEST_CASE("square classes") {
        const Field& F = Field::prime(13);
        const Poly f = P(F, "5*t^3+t");
        const auto c = square_class(f);
        CHECK((c.representative.lead() == 1 || c.representative.lead() == F.delta()));
        for (Field::Elem s = 1; s < 13; ++s) CHECK(square_class(f.scaled(F.mul(s, s))) == c);
        CHECK_FALSE(square_class(f.scaled(F.delta())) == c);
        CHECK_THROWS_AS(square_class(Poly(F)), DomainError);
    }
}
