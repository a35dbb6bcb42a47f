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
#include <random>

#include "doctest.h"
#include "ffqf/error.hpp"
#include "ffqf/verify.hpp"
#include "test_util.hpp"

using namespace ffqf;

namespace {

std::int64_t md(std::int64_t a, std::int64_t p) { return ((a % p) + p) % p; }

std::int64_t inv_mod(std::int64_t a, std::int64_t p) {
    std::int64_t r = 1, e = p - 2;
    for (a = md(a, p); e; e >>= 1, a = a * a % p)
        if (e & 1) r = r * a % p;
    return r;
}

// Determinant of a square matrix over F_p by elimination.
std::int64_t det_mod(std::vector<std::vector<std::int64_t>> m, std::int64_t p) {
    const std::size_t n = m.size();
    std::int64_t det = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        while (piv < n && md(m[piv][c], p) == 0) ++piv;
        if (piv == n) return 0;
        if (piv != c) {
            std::swap(m[piv], m[c]);
            det = md(-det, p);
        }
        det = det * md(m[c][c], p) % p;
        const std::int64_t iv = inv_mod(m[c][c], p);
        for (std::size_t r = c + 1; r < n; ++r) {
            const std::int64_t f = md(m[r][c], p) * iv % p;
            for (std::size_t k = c; k < n; ++k) m[r][k] = md(m[r][k] - f * m[c][k], p);
        }
    }
    return det;
}

// Quartic det(X M1 + M2) expanded by hand, low to high.
std::vector<std::int64_t> quartic(std::int64_t p, std::int64_t d, const QuadricCoeffs& k) {
    // g = (X + a)(c - dX) = -d X^2 + (c - a d) X + a c
    const std::vector<std::int64_t> g{md(static_cast<std::int64_t>(k.a) * k.c, p), md(k.c - static_cast<std::int64_t>(k.a) * d, p), md(-d, p)};
    auto shift = [&](std::int64_t s) {
        auto h = g;
        h[0] = md(h[0] - s, p);
        return h;
    };
    const auto f1 = shift(static_cast<std::int64_t>(k.b) * k.b), f2 = shift(static_cast<std::int64_t>(k.b2) * k.b2);
    std::vector<std::int64_t> f(5, 0);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) f[static_cast<std::size_t>(i + j)] = md(f[static_cast<std::size_t>(i + j)] + f1[static_cast<std::size_t>(i)] * f2[static_cast<std::size_t>(j)], p);
    return f;
}

// Discriminant through the 7x7 Sylvester matrix of f and f'.
std::int64_t sylvester_discriminant(std::int64_t p, const std::vector<std::int64_t>& f) {
    std::vector<std::int64_t> df{md(f[1], p), md(2 * f[2], p), md(3 * f[3], p), md(4 * f[4], p)};
    std::vector<std::vector<std::int64_t>> S(7, std::vector<std::int64_t>(7, 0));
    for (int r = 0; r < 3; ++r)
        for (int i = 0; i <= 4; ++i) S[static_cast<std::size_t>(r)][static_cast<std::size_t>(r + i)] = f[static_cast<std::size_t>(4 - i)];
    for (int r = 0; r < 4; ++r)
        for (int i = 0; i <= 3; ++i) S[static_cast<std::size_t>(3 + r)][static_cast<std::size_t>(r + i)] = df[static_cast<std::size_t>(3 - i)];
    // disc = (-1)^{n(n-1)/2} Res(f, f') / lc(f), n = 4
    return det_mod(S, p) * inv_mod(f[4], p) % p;
}

std::uint64_t affine_cone_count(std::int64_t p, std::int64_t d, const QuadricCoeffs& k) {
    std::uint64_t n = 0;
    for (std::int64_t u = 0; u < p; ++u)
        for (std::int64_t v = 0; v < p; ++v)
            for (std::int64_t x = 0; x < p; ++x)
                for (std::int64_t y = 0; y < p; ++y) {
                    if (u == 0 && v == 0 && x == 0 && y == 0) continue;
                    if (md(u * u - d * v * v - x * x + d * y * y, p) != 0) continue;
                    if (md(k.a * u * u + 2 * k.b * u * v + k.c * v * v - k.a * x * x - 2 * k.b2 * x * y - k.c * y * y, p) == 0) ++n;
                }
    return n / static_cast<std::uint64_t>(p - 1);
}

void check_replays(const Report& r) {
    for (const auto& v : r.violations) CHECK(replay(v) == v.observed);
    for (const auto& v : r.exceptions) CHECK(replay(v) == v.observed);
}

}  // namespace

TEST_SUITE("verify") {
    TEST_CASE("quartic discriminant against a Sylvester determinant") {
        for (std::uint32_t q : {5u, 7u}) {
            const Field& F = Field::prime(q);
            const std::int64_t p = q, d = F.delta();
            for (Field::Elem a = 0; a < q; ++a)
                for (Field::Elem b = 0; b < q; ++b)
                    for (Field::Elem b2 = 0; b2 < q; ++b2)
                        for (Field::Elem c = 0; c < q; ++c) {
                            const QuadricCoeffs k{a, b, b2, c};
                            const auto disc = sylvester_discriminant(p, quartic(p, d, k));
                            CHECK(static_cast<std::int64_t>(pencil_discriminant(F, k)) == disc);
                            CHECK((disc == 0) == pencil_has_repeated_factor(F, k));
                            CHECK((disc == 0) == (smoothness_obstruction(F, k) == 0));
                        }
        }
    }

    TEST_CASE("b = b' gives a repeated factor") {
        const Field& F = Field::prime(13);
        for (Field::Elem b = 0; b < 13; ++b) {
            const QuadricCoeffs k{3, b, b, 5};
            CHECK(smoothness_obstruction(F, k) == 0);
            CHECK(pencil_has_repeated_factor(F, k));
        }
    }

    TEST_CASE("smoothness identity sweep") {
        for (std::uint32_t q : {5u, 13u, 17u}) {
            SweepConfig cfg;
            cfg.q = q;
            const Report r = smooth_discriminant_identity(cfg);
            CHECK(r.instances_checked == 1000);
            CHECK(r.passed());
            CHECK(r.stats["proportionality_constants"].size() == 1);
        }
    }

    TEST_CASE("projective point count against the affine cone") {
        std::mt19937_64 rng(5);
        for (std::uint32_t q : {5u, 7u}) {
            const Field& F = Field::prime(q);
            for (int i = 0; i < 30; ++i) {
                const QuadricCoeffs k{static_cast<Field::Elem>(rng() % q), static_cast<Field::Elem>(rng() % q),
                                      static_cast<Field::Elem>(rng() % q), static_cast<Field::Elem>(rng() % q)};
                CHECK(quadric_curve_count(F, k).points == affine_cone_count(q, F.delta(), k));
            }
        }
    }

    TEST_CASE("smooth curves obey the Hasse window") {
        const Field& F = Field::prime(13);
        std::mt19937_64 rng(17);
        int seen = 0;
        while (seen < 20) {
            const QuadricCoeffs k{static_cast<Field::Elem>(rng() % 13), static_cast<Field::Elem>(rng() % 13),
                                  static_cast<Field::Elem>(rng() % 13), static_cast<Field::Elem>(rng() % 13)};
            const auto c = quadric_curve_count(F, k);
            if (!c.smooth) continue;
            ++seen;
            const double N = static_cast<double>(c.points);
            CHECK(N >= 14 - 2 * std::sqrt(13.0));
            CHECK(N <= 14 + 2 * std::sqrt(13.0));
        }
        // coefficients shared by both sides force the diagonal points
        const auto shared = quadric_curve_count(F, {1, 4, 4, 7});
        CHECK_FALSE(shared.smooth);
        CHECK(shared.points >= 28);
    }

    TEST_CASE("quadric audit") {
        for (std::uint32_t q : {5u, 7u, 13u}) {
            SweepConfig cfg;
            cfg.q = q;
            const Report r = quadric_audit(cfg);
            CHECK(r.passed());
            CHECK(r.instances_checked == 400);
        }
    }

    TEST_CASE("binary sweeps at q = 5") {
        SweepConfig cfg;
        cfg.q = 5;
        cfg.max_disc_degree = 3;
        const Report e = verify_equiv_theorems(cfg);
        CHECK(e.passed());
        CHECK(e.mode == "strict");
        CHECK(e.stats["classes"] == 2001);
        CHECK(e.instances_checked == 2001u * 2000u / 2);
        const Report m = verify_minima_recovery(cfg);
        CHECK(m.passed());
        CHECK(m.stats["different_minima_pairs"].get<std::uint64_t>() > 0);
        CHECK(m.stats["different_minima_example"].is_object());
        const Report d = verify_disc_recovery(cfg);
        CHECK(d.passed());
        CHECK(d.instances_checked > 0);
    }

    TEST_CASE("binary sweeps at q = 7") {
        SweepConfig cfg;
        cfg.q = 7;
        cfg.max_disc_degree = 2;
        CHECK(verify_equiv_theorems(cfg).passed());
        CHECK(verify_minima_recovery(cfg).passed());
        CHECK(verify_disc_recovery(cfg).passed());
    }

    TEST_CASE("below the q threshold failures are recorded, not fatal") {
        SweepConfig cfg;
        cfg.q = 3;
        cfg.max_disc_degree = 3;
        const Report r = verify_equiv_theorems(cfg);
        CHECK(r.mode == "expect-exceptions");
        CHECK(r.passed());
        check_replays(r);
    }

    TEST_CASE("reports do not depend on the number of jobs") {
        SweepConfig cfg;
        cfg.q = 5;
        cfg.max_disc_degree = 3;
        const std::string one = verify_equiv_theorems(cfg).to_json().dump();
        cfg.jobs = 3;
        CHECK(verify_equiv_theorems(cfg).to_json().dump() == one);
        SweepConfig c13;
        c13.q = 13;
        c13.max_disc_degree = 2;
        c13.samples = 40;
        const std::string a = cn1_survey(c13).to_tsv();
        c13.jobs = 4;
        CHECK(cn1_survey(c13).to_tsv() == a);
    }

    TEST_CASE("ternary family") {
        SweepConfig cfg;
        cfg.q = 5;
        cfg.max_disc_degree = 6;
        cfg.max_listed = 1000;
        const Report r = ternary_family_check(cfg);
        CHECK(r.stats["mismatches_with_infinite_place"] == 0);
        CHECK(r.stats["automatic_place_failures"] == 0);
        int sets = 0;
        for (const auto& v : r.violations) {
            if (v.theorem == "ternary-equal-sets") ++sets;
            if (v.theorem == "ternary-local-global") {
                // every literal mismatch is a value that fails only over K_inf
                CHECK(v.observed.find("global=false; local at t=true") == 0);
                CHECK(v.observed.find("over K_inf=false") != std::string::npos);
            }
        }
        CHECK(sets == 0);
        CHECK(r.violation_count == r.stats["mismatches_local_at_t"].get<std::uint64_t>());
        CHECK(r.violations.size() == 1000);
        std::vector<Violation> few(r.violations.begin(), r.violations.begin() + 10);
        for (const auto& v : few) CHECK(replay(v) == v.observed);
    }

    TEST_CASE("class number one survey") {
        SweepConfig cfg;
        cfg.q = 17;
        cfg.max_disc_degree = 2;
        cfg.samples = 30;
        const Report r = cn1_survey(cfg);
        CHECK(r.mode == "strict");
        CHECK(r.passed());
        CHECK(r.stats["q13_example"]["h"] == 1);

        cfg.q = 13;
        cfg.samples = 200;
        const Report r13 = cn1_survey(cfg);
        CHECK(r13.mode == "expect-exceptions");
        CHECK(r13.passed());
        CHECK(r13.exception_count > 0);
        for (const auto& v : r13.exceptions) CHECK(v.theorem == "cn1-degree-bound");
        check_replays(r13);
    }

    TEST_CASE("report formats") {
        SweepConfig cfg;
        cfg.q = 5;
        cfg.samples = 10;
        const Report r = run_sweep("smooth", cfg);
        const auto j = r.to_json();
        for (const char* key : {"theorem", "config", "instances_checked", "violations", "stats"}) CHECK(j.contains(key));
        CHECK_FALSE(j["config"].contains("jobs"));
        CHECK(r.to_tsv().rfind("theorem\tq\tmax_degree\tmode\tinstances\tviolations\texceptions\n", 0) == 0);
        CHECK_THROWS_AS(run_sweep("nonsense", cfg), DomainError);
        cfg.q = 9;
        CHECK_THROWS_AS(run_sweep("smooth", cfg), DomainError);
    }
}
