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
#include "doctest.h"
#include "ffqf/error.hpp"
#include "ffqf/localgenus.hpp"
#include "ffqf/repset.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace ffqf;
using ffqf::testing::Fm;
using ffqf::testing::P;

namespace {

int reciprocity_product(const Poly& f, const Poly& g) {
    int s = 1;
    for (const auto& v : relevant_places(f, g)) s *= hilbert_symbol(f, g, v);
    return s;
}

Place random_place(const Field& F, std::mt19937_64& rng) {
    if (rng() % 4 == 0) return Place::infinity(F);
    while (true) {
        Poly p = testing::random_poly(F, 1 + static_cast<int>(rng() % 3), rng);
        if (p.degree() >= 1 && is_irreducible(p)) return Place::finite(p);
    }
}

Form random_definite_binary(const Field& F, int max_disc_deg, std::mt19937_64& rng) {
    while (true) {
        Poly a = testing::random_nonzero_poly(F, 2, rng), b = testing::random_poly(F, 2, rng),
             c = testing::random_nonzero_poly(F, 3, rng);
        const Poly d = b * b - a * c;
        if (d.is_zero() || d.degree() > max_disc_deg || !is_definite_discriminant(d)) continue;
        return Form::binary(a, b, c);
    }
}

}  // namespace

TEST_SUITE("localgenus") {
    TEST_CASE("Hilbert symbol examples") {
        const Field& F5 = Field::prime(5);
        const Place t5 = Place::finite(P(F5, "t"));
        CHECK(hilbert_symbol(P(F5, "t"), P(F5, "t"), t5) == 1);
        const Field& F7 = Field::prime(7);
        CHECK(hilbert_symbol(P(F7, "t"), P(F7, "t"), Place::finite(P(F7, "t"))) == -1);
        CHECK(hilbert_symbol(P(F5, "2"), P(F5, "t+1"), t5) == 1);
        CHECK(hilbert_symbol(P(F5, "t^2+t+3"), P(F5, "3*t+1"), t5) == 1);
        // (delta, t)_t is the character of delta.
        CHECK(hilbert_symbol(Poly::constant(F5, F5.delta()), P(F5, "t"), t5) == -1);
        CHECK_THROWS_AS(hilbert_symbol(Poly(F5), P(F5, "t"), t5), DomainError);
        CHECK_THROWS_AS(Place::finite(P(F5, "t^2-1")), DomainError);
    }

    TEST_CASE("reciprocity") {
        std::mt19937_64 rng(2024);
        for (std::uint32_t p : {5u, 13u}) {
            const Field& F = Field::prime(p);
            for (int i = 0; i < 1000; ++i) {
                const Poly f = testing::random_nonzero_poly(F, 4, rng), g = testing::random_nonzero_poly(F, 4, rng);
                REQUIRE_MESSAGE(reciprocity_product(f, g) == 1, f.to_string() << ", " << g.to_string());
            }
        }
        const Field& F9 = Field::extension(3, 2);
        for (int i = 0; i < 100; ++i) {
            const Poly f = testing::random_nonzero_poly(F9, 3, rng), g = testing::random_nonzero_poly(F9, 3, rng);
            CHECK(reciprocity_product(f, g) == 1);
        }
    }

    TEST_CASE("symmetry and bilinearity") {
        std::mt19937_64 rng(7);
        for (std::uint32_t p : {5u, 7u, 13u}) {
            const Field& F = Field::prime(p);
            for (int i = 0; i < 300; ++i) {
                const Place v = random_place(F, rng);
                const Poly f = testing::random_nonzero_poly(F, 4, rng), g = testing::random_nonzero_poly(F, 4, rng),
                           h = testing::random_nonzero_poly(F, 4, rng);
                CHECK(hilbert_symbol(f, g, v) == hilbert_symbol(g, f, v));
                CHECK(hilbert_symbol(f, g * h, v) == hilbert_symbol(f, g, v) * hilbert_symbol(f, h, v));
                CHECK(hilbert_symbol(f, -f, v) == 1);
            }
        }
    }

    TEST_CASE("Hasse invariants") {
        const Field& F = Field::prime(5);
        const Form N = Form::binary(P(F, "1"), Poly(F), Poly::constant(F, F.neg(F.delta())));
        CHECK(hasse_invariant(N, Place::infinity(F)) == 1);
        std::mt19937_64 rng(55);
        for (int i = 0; i < 100; ++i) {
            const Form Q = i % 2 ? random_definite_binary(F, 4, rng) : testing::ternary_family(F, 1 + i % 4);
            const Form QU = Q.transformed(testing::random_gl(F, Q.rank(), 2, rng));
            for (const auto& v : {Place::infinity(F), Place::finite(P(F, "t")), Place::finite(P(F, "t+1")),
                                  Place::finite(P(F, "t^2+2"))})
                CHECK(hasse_invariant(Q, v) == hasse_invariant(QU, v));
        }
    }

    TEST_CASE("Jordan invariants examples") {
        for (std::uint32_t q : {5u, 7u, 13u}) {
            const Field& F = Field::prime(q);
            const Poly md = Poly::constant(F, F.neg(F.delta()));
            const Form N = Form::binary(P(F, "1"), Poly(F), md);
            for (const char* p : {"t", "t+2", "t^2+t+3"}) {
                const Poly pp = P(F, p);
                if (!is_irreducible(pp)) continue;
                const JordanInvariant j = jordan_invariants(N, pp);
                REQUIRE(j.blocks.size() == 1);
                CHECK(j.blocks[0] == JordanBlock{0, 2, residue_char(md, pp)});
            }
            const Poly t = P(F, "t");
            const Form Q = Form::binary(t, Poly(F), -(t + P(F, "1")).scaled(F.delta()));
            const JordanInvariant j = jordan_invariants(Q, t);
            const int chi = F.legendre(F.neg(F.delta()));
            CHECK(j.blocks == std::vector<JordanBlock>{{0, 1, chi}, {1, 1, 1}});
            CHECK(j.to_string() == std::string("[(0, 1, ") + (chi > 0 ? "+1" : "-1") + "), (1, 1, +1)]");
        }
    }

    TEST_CASE("Jordan invariants: scaling and equivalence invariance") {
        std::mt19937_64 rng(500);
        for (std::uint32_t q : {5u, 13u}) {
            const Field& F = Field::prime(q);
            for (int i = 0; i < 500; ++i) {
                const Form Q = random_definite_binary(F, 4, rng);
                const Form QU = Q.transformed(testing::random_gl(F, 2, 2, rng));
                for (const auto& [p, e] : factor(discriminant(Q)).factors) {
                    (void)e;
                    const auto j = jordan_invariants(Q, p);
                    REQUIRE(j == jordan_invariants(QU, p));
                    int total = 0;
                    for (const auto& b : j.blocks) total += b.rank;
                    CHECK(total == 2);
                    if (i % 10 == 0) {
                        auto shifted = j;
                        for (auto& b : shifted.blocks) ++b.scale;
                        CHECK(jordan_invariants(Q.scaled(p), p) == shifted);
                    }
                }
            }
        }
    }

    TEST_CASE("same genus") {
        std::mt19937_64 rng(61);
        const Field& F = Field::prime(13);
        for (int i = 0; i < 50; ++i) {
            const Form Q = random_definite_binary(F, 3, rng);
            CHECK(same_genus(Q, Q));
            CHECK(same_genus(Q, Q.transformed(testing::random_gl(F, 2, 2, rng))));
        }
        CHECK_FALSE(same_genus(Fm(F, "(1, 0, t)"), Fm(F, "(1, 0, 2*t)")));
        const Form R = Fm(F, "(t+8, 4, 12*t^2+8*t+2)");
        CHECK(genus_symbol(R) == genus_symbol(R.transformed(testing::random_gl(F, 2, 1, rng))));
    }

    TEST_CASE("local representability: basic facts") {
        const Field& F = Field::prime(5);
        const Form U3 = Form::diagonal({P(F, "1"), P(F, "2"), P(F, "t+1")});
        for (const char* f : {"1", "2", "t+3", "3*t^2+1"}) CHECK(local_represents(U3, P(F, f), P(F, "t")));
        std::mt19937_64 rng(8);
        for (int i = 0; i < 100; ++i) {
            const Form Q = i % 2 ? random_definite_binary(F, 4, rng) : testing::ternary_family(F, 1 + i % 4);
            std::vector<Poly> x;
            for (int j = 0; j < Q.rank(); ++j) x.push_back(testing::random_poly(F, 2, rng));
            const Poly v = Q.evaluate(x);
            if (v.is_zero()) continue;
            for (const char* p : {"t", "t+1", "t^2+2"}) CHECK(local_represents(Q, v, P(F, p)));
        }
        CHECK_THROWS_AS(local_represents(U3, Poly(F), P(F, "t")), DomainError);
    }

    TEST_CASE("local representability agrees with the Hensel search") {
        std::mt19937_64 rng(13);
        const Field& F = Field::prime(5);
        int checked = 0;
        for (int i = 0; i < 60; ++i) {
            const Form Q = random_definite_binary(F, 3, rng);
            for (const char* ptxt : {"t", "t+3"}) {
                const Poly p = P(F, ptxt);
                if (valuation(discriminant(Q), p) > 2) continue;
                for (int k = 0; k < 4; ++k) {
                    Poly f = testing::random_nonzero_poly(F, 2, rng);
                    if (k % 2) f = f * p;
                    if (valuation(f, p) > 2) continue;
                    CHECK_MESSAGE(local_represents(Q, f, p) == testing::hensel_search(Q, f, p),
                                  Q.to_string() << " f=" << f.to_string() << " p=" << p.to_string());
                    ++checked;
                }
            }
        }
        // Ternary family at t, unit and simple targets.
        for (Field::Elem a = 1; a < 5; ++a) {
            const Form Q = testing::ternary_family(F, a);
            for (const char* f : {"1", "2", "3", "t", "2*t", "t+1", "2*t^2+t"}) {
                CHECK(local_represents(Q, P(F, f), P(F, "t")) == testing::hensel_search(Q, P(F, f), P(F, "t")));
                ++checked;
            }
        }
        MESSAGE("checked " << checked << " cases against the search");
    }

    TEST_CASE("the infinite place is not automatic for the ternary family") {
        const Field& F = Field::prime(5);
        const Form Q1 = testing::ternary_family(F, 1);
        const Poly f = Poly::monomial(F, F.delta(), 2);
        CHECK(local_represents(Q1, f, P(F, "t")));
        CHECK(testing::hensel_search(Q1, f, P(F, "t")));
        CHECK_FALSE(field_represents(Q1, f, Place::infinity(F)));
        CHECK_FALSE(repset_upto(Q1, 2).contains(f));
    }

    TEST_CASE("field representability") {
        const Field& F = Field::prime(5);
        const Form N = Form::binary(P(F, "1"), Poly(F), Poly::constant(F, F.neg(F.delta())));
        const Place inf = Place::infinity(F);
        CHECK(field_represents(N, P(F, "t^2"), inf));
        CHECK_FALSE(field_represents(N, P(F, "t"), inf));
        std::mt19937_64 rng(4);
        for (int i = 0; i < 200; ++i) {
            const Form Q = random_definite_binary(F, 3, rng);
            std::vector<Poly> x{testing::random_poly(F, 3, rng), testing::random_poly(F, 3, rng)};
            const Poly v = Q.evaluate(x);
            if (v.is_zero()) continue;
            CHECK(field_represents(Q, v, inf));
            CHECK(field_represents(Q, v, Place::finite(P(F, "t"))));
            if (valuation(v, P(F, "t")) <= 1) CHECK(field_represents(Q, v, Place::finite(P(F, "t"))) ==
                                                     (local_represents(Q, v * P(F, "t^2"), P(F, "t"))));
        }
    }

    TEST_CASE("ternary family: delta at t") {
        const Field& F = Field::prime(5);
        const Form Q1 = testing::ternary_family(F, 1);
        const Poly d = Poly::constant(F, F.delta());
        const bool local = local_represents(Q1, d, P(F, "t"));
        CHECK(local == testing::hensel_search(Q1, d, P(F, "t")));
        // x^2 + t y^2 - delta (t + 1) z^2 = delta at t = 0 needs x^2 - delta z^2 = delta.
        CHECK(local);
    }

    TEST_CASE("ternary family: global representability is local at t plus the infinite place") {
        const Field& F = Field::prime(5);
        for (Field::Elem a = 1; a < 5; ++a) {
            const Form Q = testing::ternary_family(F, a);
            const RepSet V = repset_upto(Q, 4);
            const Poly other = Poly::t(F) + Poly::constant(F, F.mul(a, a));
            int only_t = 0;
            for (const auto& f : all_polys_upto(F, 4)) {
                if (f.is_zero()) continue;
                const bool global = V.contains(f);
                const bool at_t = local_represents(Q, f, P(F, "t"));
                const bool at_inf = field_represents(Q, f, Place::infinity(F));
                CHECK(local_represents(Q, f, other));
                CHECK(global == (at_t && at_inf));
                if (at_t && !global) {
                    ++only_t;
                    // The infinite place is the only obstruction left: even degree, non-square lead.
                    CHECK(f.degree() % 2 == 0);
                    CHECK(F.legendre(f.lead()) == -1);
                }
            }
            MESSAGE("a=" << a << ": " << only_t << " polynomials of degree <= 4 are represented at t but not over A");
        }
    }
}
